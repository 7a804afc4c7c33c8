use rayon::prelude::*;

use super::{combine, fails, holds, Check};
use crate::config::RunConfig;
use crate::report::Label;
use lightchaos::catalog::CatalogMap;
use lightchaos::detect::{check_periodic_density, check_transitivity, replay_witness};
use lightchaos::envelope::{
    element_family, envelope_periodic_scan, envelope_sensitivity_probe, no_dense_orbit_evidence, onto_ball_probe,
    onto_check, periodic_witness, point_open_pair, pointwise_lift, base_from_envelope, replay_obstruction,
    transitivity_witness, verify_refutation, EnvelopeSystem, FunctionElement, Search, Topology,
};
use lightchaos::pl;
use lightchaos::subbase::{generate_family, Scheme};
use lightchaos::{Certificate, IntervalUnion, PLMap, Rat, Result, SubbasicSet, Witness};

fn resolution(run: &RunConfig, default: u32) -> u32 {
    run.resolution.unwrap_or(default)
}

fn unit() -> IntervalUnion {
    IntervalUnion::closed(Rat::zero(), Rat::one())
}

pub fn rem4_1(run: &RunConfig) -> Result<Vec<Check>> {
    let b = &run.budget;
    let r = resolution(run, 3);
    let rotation = CatalogMap::golden_rotation();
    let env = EnvelopeSystem::compact_open(rotation.clone())?;
    let fam = generate_family(&env.space, &Scheme::CompactOpen, r)?;
    let mut c = Check::new("periodic_witness", fails(), Label::Fails, "");
    let (mut found, mut unknown) = (0, 0);
    for a in fam.sets() {
        match periodic_witness(&env, a, b)? {
            Search::Found { value } => {
                value.replay(&env)?;
                found += 1;
                c = c.witness(&value);
            }
            Search::Refuted { certificate } => {
                verify_refutation(&env, &certificate)?;
                c = c.certificate(&certificate);
            }
            Search::Unknown { .. } => unknown += 1,
        }
    }
    c.computed = if found > 0 { Label::Holds } else { combine(unknown, Label::Fails) };
    c.note = format!("{} co-sets: {found} periodic elements, {} refuted, {unknown} undecided", fam.len(), c.certificates.len());
    let mut checks = vec![c];
    checks.push(Check::verdict("base_periodic_density", fails(), &rotation, &check_periodic_density(&rotation, r, b)?)?);

    // a map whose range sits in [1/2, 1] cannot reach targets below 1/2
    let env = EnvelopeSystem::compact_open(CatalogMap::Pl(pl::reflected_truncated_tent()))?;
    let fam = generate_family(&env.space, &Scheme::CompactOpen, r)?;
    let low = IntervalUnion::closed(Rat::zero(), Rat::new(1, 2)).difference(&IntervalUnion::point(Rat::new(1, 2)));
    let targets: Vec<&SubbasicSet> = fam
        .sets()
        .filter(|t| match t {
            SubbasicSet::CoSet { open, .. } => open.intersect(&unit()).is_subset(&low),
            _ => false,
        })
        .collect();
    let mut c = Check::new("transitivity_below_half", fails(), Label::Fails, "");
    let (mut found, mut unknown, mut other) = (0, 0, 0);
    for a in fam.sets() {
        for t in &targets {
            match transitivity_witness(&env, a, t, b)? {
                Search::Found { value } => {
                    value.replay(&env)?;
                    found += 1;
                }
                Search::Refuted { certificate } => {
                    verify_refutation(&env, &certificate)?;
                    if matches!(certificate, Certificate::RangeBound { .. }) {
                        if !c.certificates.iter().any(|x| x["target"] == super::to_value(t)) {
                            c = c.certificate(&certificate);
                        }
                    } else {
                        other += 1;
                    }
                }
                Search::Unknown { .. } => unknown += 1,
            }
        }
    }
    c.computed = if found > 0 { Label::Holds } else { combine(unknown + other, Label::Fails) };
    c.note = format!(
        "{} sources x {} targets below 1/2: {found} witnessed, {other} refuted otherwise, {unknown} undecided; one range_bound per target",
        fam.len(),
        targets.len()
    );
    checks.push(c);
    Ok(checks)
}

pub fn thm4_2_forward(run: &RunConfig) -> Result<Vec<Check>> {
    let b = &run.budget;
    let env = EnvelopeSystem::compact_open(CatalogMap::tent())?;
    let fam = generate_family(&env.space, &Scheme::CompactOpen, resolution(run, 3))?;
    let sets: Vec<&SubbasicSet> = fam.sets().collect();
    let pairs: Vec<(usize, usize)> = (0..sets.len()).flat_map(|i| (0..sets.len()).map(move |j| (i, j))).collect();
    let outcomes = pairs
        .par_iter()
        .map(|&(i, j)| {
            let s = transitivity_witness(&env, sets[i], sets[j], b)?;
            if let Search::Found { value } = &s {
                value.replay(&env)?;
            }
            Ok(s)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut c = Check::new("transitivity_witness", holds(), Label::Holds, "");
    let (mut refuted, mut unknown, mut k_max) = (0, 0, 0);
    for s in outcomes {
        match s {
            Search::Found { value } => {
                k_max = k_max.max(value.k);
                c = c.witness(&value);
            }
            Search::Refuted { certificate } => {
                refuted += 1;
                c = c.certificate(&certificate);
            }
            Search::Unknown { .. } => unknown += 1,
        }
    }
    c.computed = if refuted > 0 { Label::Fails } else { combine(unknown, Label::Holds) };
    c.note = format!("{} ordered pairs over {} co-sets, largest k {k_max}, {unknown} undecided", pairs.len(), sets.len());
    let mut checks = vec![c];

    let mut c = Check::new("periodic_witness", holds(), Label::Holds, "");
    let (mut refuted, mut unknown, mut p_max) = (0, 0, 0);
    for a in &sets {
        match periodic_witness(&env, a, b)? {
            Search::Found { value } => {
                value.replay(&env)?;
                p_max = p_max.max(value.period);
                c = c.witness(&value);
            }
            Search::Refuted { certificate } => {
                refuted += 1;
                c = c.certificate(&certificate);
            }
            Search::Unknown { .. } => unknown += 1,
        }
    }
    c.computed = if refuted > 0 { Label::Fails } else { combine(unknown, Label::Holds) };
    c.note = format!("{} co-sets, largest period {p_max}", sets.len());
    checks.push(c);
    Ok(checks)
}

pub fn thm4_2_converse(run: &RunConfig) -> Result<Vec<Check>> {
    let b = &run.budget;
    let tent = CatalogMap::tent();
    let r = resolution(run, 3);
    let env = EnvelopeSystem::new(tent.clone(), Topology::PointOpen)?;
    let base = generate_family(&tent.space(), &Scheme::BasicIntervals, r)?;
    let direct = check_transitivity(&tent, r, b)?;
    let anchors = [Rat::zero(), Rat::new(1, 3), Rat::new(1, 2), Rat::one()];
    let mut c = Check::new("recovered_transitivity", holds(), Label::Holds, "");
    let (mut triples, mut unknown, mut mismatched, mut same_k) = (0, 0, 0, 0);
    for (i, (u, v)) in base.sets().flat_map(|u| base.sets().map(move |v| (u, v))).enumerate() {
        let x0 = &anchors[i % anchors.len()];
        let (pu, pv) = point_open_pair(&env, u, v, x0)?;
        let w = match transitivity_witness(&env, &pu, &pv, b)? {
            Search::Found { value } => value,
            Search::Refuted { .. } => {
                mismatched += 1;
                continue;
            }
            Search::Unknown { .. } => {
                unknown += 1;
                continue;
            }
        };
        let lifted = pointwise_lift(&env, &w, x0)?;
        let recovered = base_from_envelope(&env, u, v, x0, &lifted)?;
        replay_witness(&tent, &recovered)?;
        triples += 1;
        let reference = direct.witnesses().iter().find(|d| match d {
            Witness::Transit { source, target, .. } => source == u && target == v,
            _ => false,
        });
        match (reference, &recovered) {
            (Some(Witness::Transit { k: dk, .. }), Witness::Transit { k, .. }) => same_k += usize::from(dk == k),
            _ if direct.holds() => mismatched += 1,
            _ => unknown += 1,
        }
        c = c.witness(&serde_json::json!({ "x0": x0, "envelope": lifted, "base": recovered }));
    }
    c.computed = if mismatched > 0 { Label::Fails } else { combine(unknown, Label::Holds) };
    c.note = format!("{triples} triples recovered and matched by direct witnesses ({same_k} with the same k), {unknown} undecided");
    Ok(vec![c])
}

pub fn thm4_6_i(run: &RunConfig) -> Result<Vec<Check>> {
    let b = &run.budget;
    let env = EnvelopeSystem::compact_open(CatalogMap::Contraction)?;
    let pitch = run.grid_pitch.clone().unwrap_or_else(|| Rat::new(1, 64));
    let family = element_family(&env, &pitch, run.knots.unwrap_or(6), 400, run.seed)?;
    let scan = envelope_periodic_scan(&env, &family, b.p_max, b)?;
    let periodic: Vec<_> = scan.iter().filter(|s| s.period.is_some()).collect();
    let unverified = scan.iter().filter(|s| !s.verified).count();
    let zero = FunctionElement::constant(Rat::zero());
    let only_zero = periodic.len() == 1 && periodic[0].element == zero;
    let mut c = Check::new(
        "periodic_scan",
        holds(),
        if only_zero && unverified == 0 { Label::Holds } else { Label::Fails },
        format!("{} elements, {} periodic, {unverified} cross-check disagreements", scan.len(), periodic.len()),
    );
    for p in &periodic {
        c = c.witness(p);
    }
    let mut checks = vec![c];

    // G = [{-1/2}, (-1, -1/4)] ∩ [{1/2}, (1/4, 1)]
    let half = Rat::new(1, 2);
    let quarter = Rat::new(1, 4);
    let g_sets = vec![
        SubbasicSet::co_set(IntervalUnion::point(-&half), IntervalUnion::open(-Rat::one(), -&quarter)),
        SubbasicSet::co_set(IntervalUnion::point(half.clone()), IntervalUnion::open(quarter.clone(), Rat::one())),
    ];
    let identity = FunctionElement::pl(PLMap::identity(-Rat::one(), Rat::one()));
    let inhabited = env.co_member_all(&identity, &g_sets)?;
    let fixed_zero = (1..=b.p_max).all(|k| env.map.closed_form_fixed_set(k) == Some(IntervalUnion::point(Rat::zero())));
    let mut hits = 0;
    for p in &periodic {
        hits += usize::from(env.co_member_all(&p.element, &g_sets)?);
    }
    let computed = if hits > 0 {
        Label::Holds
    } else if inhabited && fixed_zero {
        Label::Fails
    } else {
        Label::Unknown
    };
    checks.push(
        Check::new(
            "periodic_density",
            fails(),
            computed,
            format!(
                "the identity lies in G; every periodic element maps into Fix = {{0}} and is the constant 0, which G excludes; {hits} scanned periodic elements in G"
            ),
        )
        .certificate(&serde_json::json!({ "open_set": g_sets, "inhabitant": identity, "periodic_points": [Rat::zero()] })),
    );
    Ok(checks)
}

pub fn thm4_6_ii(run: &RunConfig) -> Result<Vec<Check>> {
    let b = &run.budget;
    let env = EnvelopeSystem::compact_open(CatalogMap::tent())?;
    let family = element_family(&env, &Rat::new(1, 49), run.knots.unwrap_or(6), 50, run.seed)?;
    let outcomes = family
        .par_iter()
        .map(|g| {
            let ev = super::settle(no_dense_orbit_evidence(&env, g, 256, b))?;
            if let Ok(ev) = &ev {
                replay_obstruction(&env, ev)?;
            }
            Ok(ev)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut c = Check::new("dense_orbit", fails(), Label::Fails, "");
    let mut unknown = 0;
    for ev in outcomes {
        match ev {
            Ok(ev) => c = c.certificate(&ev),
            Err(_) => unknown += 1,
        }
    }
    c.computed = combine(unknown, Label::Fails);
    c.note = format!("{} elements, {} obstructions replayed over 256 iterates, {unknown} undecided", family.len(), c.certificates.len());
    Ok(vec![c])
}

pub fn thm4_6_iv(run: &RunConfig) -> Result<Vec<Check>> {
    let b = &run.budget;
    let env = EnvelopeSystem::compact_open(CatalogMap::tent())?;
    // k/63 has period dividing 6, the order of 2 mod 63
    let pitch = run.grid_pitch.clone().unwrap_or_else(|| Rat::new(1, 63));
    let family = element_family(&env, &pitch, run.knots.unwrap_or(6), 100, run.seed)?;
    let depth = b.p_max.min(6);
    let scan = envelope_periodic_scan(&env, &family, depth, b)?;
    let periodic: Vec<_> = scan.iter().filter(|s| s.period.is_some()).collect();
    let mut onto = 0;
    for p in &periodic {
        onto += usize::from(onto_check(&env, &p.element)?);
    }
    let unverified = scan.iter().filter(|s| !s.verified).count();
    // 1/2 -> 1 -> 0 -> 0 is never periodic, so P(f) is not all of [0, 1]
    let half = lightchaos::PhasePoint::Real(Rat::new(1, 2));
    let eventually_fixed = env.map.iterate(2, &half)? == env.map.iterate(3, &half)? && env.map.iterate(2, &half)? != half;
    let computed = if onto > 0 || unverified > 0 {
        Label::Fails
    } else if periodic.is_empty() || !eventually_fixed {
        Label::Unknown
    } else {
        Label::Holds
    };
    let mut c = Check::new(
        "periodic_elements_not_onto",
        holds(),
        computed,
        format!("{} elements scanned to period {depth}: {} periodic, {onto} onto; 1/2 is not periodic", scan.len(), periodic.len()),
    );
    for p in &periodic {
        c = c.witness(p);
    }
    let mut checks = vec![c];

    let f = FunctionElement::pl(pl::tent());
    let mut c = Check::new("onto_stability", fails(), Label::Fails, "");
    let mut notes = Vec::new();
    for j in [4, 8, 10] {
        let probe = onto_ball_probe(&env, &f, &Rat::dyadic(j), 200, run.seed)?;
        notes.push(format!("1/{}: {}/{} onto", 1u64 << j, probe.onto, probe.samples));
        if probe.onto == probe.samples {
            c.computed = Label::Unknown;
        }
        c = c.witness(&probe);
    }
    c.note = format!("sampled perturbations of the tent map (evidence only): {}", notes.join(", "));
    checks.push(c);
    Ok(checks)
}

pub fn ex4_7(run: &RunConfig) -> Result<Vec<Check>> {
    let b = &run.budget;
    let env = EnvelopeSystem::compact_open(CatalogMap::tent())?;
    let delta = run.delta.clone().unwrap_or_else(|| Rat::new(1, 4));
    let family = element_family(&env, &Rat::new(1, 8), run.knots.unwrap_or(6), 20, run.seed)?;
    let ks = [IntervalUnion::closed(Rat::zero(), Rat::new(1, 8)), IntervalUnion::closed(Rat::new(1, 2), Rat::one())];
    let margin = Rat::new(1, 16);
    let mut c = Check::new("sensitivity_probe", holds(), Label::Holds, "");
    let (mut unknown, mut bad, mut n_max) = (0, 0, 0);
    for g in &family {
        let mut sets = Vec::new();
        for k in &ks {
            let ends = env.image(g, k)?.endpoints();
            let (lo, hi) = (ends.first().expect("image").clone(), ends.last().expect("image").clone());
            sets.push(SubbasicSet::co_set(k.clone(), IntervalUnion::open(&lo - &margin, &hi + &margin)));
        }
        match envelope_sensitivity_probe(&env, g, &sets, &delta, b)? {
            Search::Found { value } => {
                value.replay(&env, &sets, &delta)?;
                n_max = n_max.max(value.n);
                if value.n > b.k_max || value.distance <= delta {
                    bad += 1;
                }
                c = c.witness(&serde_json::json!({ "neighbourhood": sets, "evidence": value }));
            }
            Search::Refuted { .. } => bad += 1,
            Search::Unknown { .. } => unknown += 1,
        }
    }
    c.computed = if bad > 0 { Label::Fails } else { combine(unknown, Label::Holds) };
    c.note = format!("{} starting elements, delta = {delta}, largest n {n_max}, {unknown} undecided", family.len());
    Ok(vec![c])
}
