use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{EnvelopeSystem, FunctionElement};
use crate::error::{Error, Result};
use crate::pl::PLMap;
use crate::scalar::Rat;

const GRID: i64 = 64;

/// Constants on a grid of spacing `pitch`, followed by `random_count` PL
/// maps with at most `max_knots` knots on the dyadic grid of step 1/64 of
/// the base. The same seed gives the same family.
pub fn element_family(
    env: &EnvelopeSystem,
    pitch: &Rat,
    max_knots: usize,
    random_count: usize,
    seed: u64,
) -> Result<Vec<FunctionElement>> {
    if !pitch.is_positive() || max_knots < 2 {
        return Err(Error::Config("the family needs a positive pitch and at least two knots".into()));
    }
    let (lo, hi) = env.bounds()?;
    let width = &hi - &lo;
    let mut out = Vec::new();
    let mut x = lo.clone();
    while x <= hi {
        out.push(FunctionElement::constant(x.clone()));
        x = &x + pitch;
    }
    let at = |i: i64| &lo + &(&width * &Rat::new(i, GRID));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..random_count {
        let inner = rng.gen_range(0..=max_knots - 2);
        let mut xs: Vec<i64> = (0..inner).map(|_| rng.gen_range(1..GRID)).collect();
        xs.sort_unstable();
        xs.dedup();
        let knots = std::iter::once(0)
            .chain(xs)
            .chain(std::iter::once(GRID))
            .map(|i| (at(i), at(rng.gen_range(0..=GRID))))
            .collect();
        out.push(FunctionElement::pl(PLMap::new(knots)?));
    }
    Ok(out)
}
