use serde::{Deserialize, Serialize};

use lightchaos::{Budget, Error, Result};

/// Headline expectation of an experiment.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Expected {
    Holds,
    Fails,
    /// The stated claim and the computed verdicts disagree; both are shown.
    Flagged,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentSpec {
    pub name: String,
    pub system: String,
    pub scheme: String,
    pub budget: Budget,
    pub expected: Expected,
    /// The claim under test, in words.
    pub claim: String,
}

fn spec(name: &str, system: &str, scheme: &str, expected: Expected, claim: &str) -> ExperimentSpec {
    ExperimentSpec {
        name: name.into(),
        system: system.into(),
        scheme: scheme.into(),
        budget: Budget::default(),
        expected,
        claim: claim.into(),
    }
}

/// Every registered experiment, in a fixed order.
pub fn registry() -> Vec<ExperimentSpec> {
    use Expected::*;
    vec![
        spec("ex3_4", "negation", "half_lines", Holds,
            "x -> -x sends any half line into its opposite, so it is lightly chaotic for half lines without being transitive"),
        spec("ex3_5", "shift", "cylinders", Holds,
            "the shift on eventually constant sequences plus the orbit of a transitive point is lightly chaotic for cylinders but not periodically dense"),
        spec("ex3_6", "contraction", "basic_intervals", Fails,
            "x -> x/(|x|+1) is not lightly sensitive for any subbase: orbits near 0 stay within |y|/(|y|+1)"),
        spec("ex3_7", "reflected_truncated_tent", "endpoint_intervals", Flagged,
            "the reflected truncated tent is lightly chaotic and lightly sensitive for the sets [0,a) and (b,1], while neither transitive, periodically dense nor sensitive"),
        spec("ex3_8", "glissorotation:1/3", "half_spaces", Flagged,
            "the glissorotation of the double cone is lightly chaotic for open half-spaces but not lightly sensitive"),
        spec("abs_example", "absolute_value", "half_lines", Fails,
            "x -> |x| is neither lightly transitive nor lightly periodically dense for any subbase; its periodic points are [0, +inf)"),
        spec("rem4_1", "golden_rotation", "compact_open", Fails,
            "an irrational rotation has no periodic points, so its envelope is not lightly chaotic for any subbase"),
        spec("thm4_2_forward", "tent", "compact_open", Holds,
            "a chaotic map has a lightly chaotic envelope: constant maps witness transitivity and periodicity for every pair of compact-open sets"),
        spec("thm4_2_converse", "tent", "point_open", Holds,
            "light chaos of the envelope for point-open sets gives back transitivity of the base through g(x0) and h(x0)"),
        spec("thm4_6_i", "contraction", "compact_open", Fails,
            "with countably many periodic points every periodic element is constant, so [{a},U] and [{b},V] hold none"),
        spec("thm4_6_ii", "tent", "compact_open", Fails,
            "a periodically dense interval map has an envelope without dense orbits"),
        spec("thm4_6_iv", "tent", "compact_open", Fails,
            "periodic elements take values in the periodic points, so they are never onto when some point is not periodic"),
        spec("ex4_7", "tent", "compact_open", Holds,
            "the envelope of the tent map is sensitive: a map constant on K_1 separates from g by more than the base constant"),
    ]
}

pub fn lookup(name: &str) -> Result<ExperimentSpec> {
    registry()
        .into_iter()
        .find(|s| s.name == name)
        .ok_or_else(|| Error::Config(format!("no experiment named {name:?}")))
}
