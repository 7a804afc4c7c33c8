use super::{combine, fails, holds, Check};
use crate::config::RunConfig;
use crate::report::{Expect, Label};
use lightchaos::catalog::CatalogMap;
use lightchaos::detect::{
    check_light_periodic_density, check_light_sensitivity, check_light_transitivity, check_periodic_density,
    check_sensitivity, check_transitivity, pair_witness_at, replay_witness,
};
use lightchaos::pl;
use lightchaos::subbase::{generate_family, generate_family_pinned, Scheme, SubbasicSet};
use lightchaos::{Rat, Result, Witness};

fn resolution(run: &RunConfig, default: u32) -> u32 {
    run.resolution.unwrap_or(default)
}

fn periods(v: &[Witness]) -> Vec<u32> {
    v.iter()
        .filter_map(|w| match w {
            Witness::Periodic { period, .. } => Some(*period),
            _ => None,
        })
        .collect()
}

fn left(s: &SubbasicSet) -> bool {
    matches!(s, SubbasicSet::HalfLineLeft { .. })
}

pub fn ex3_4(run: &RunConfig) -> Result<Vec<Check>> {
    let map = CatalogMap::Negation;
    let b = &run.budget;
    let r = resolution(run, 3);
    let fam = generate_family(&map.space(), &Scheme::HalfLines, r)?;
    let mut checks = vec![Check::verdict("light_transitivity", holds(), &map, &check_light_transitivity(&map, &fam, b)?)?];

    // same side needs two steps, opposite sides one
    let mut pairs = Check::new("pair_witnesses", holds(), Label::Holds, "");
    let (mut missing, mut over) = (0, 0);
    for u in fam.sets() {
        for v in fam.sets() {
            let k = if left(u) == left(v) { 2 } else { 1 };
            if k > b.k_max {
                over += 1;
                continue;
            }
            match pair_witness_at(&map, u, v, k)? {
                Some(w) => {
                    replay_witness(&map, &w)?;
                    pairs = pairs.witness(&w);
                }
                None => missing += 1,
            }
        }
    }
    pairs.computed = combine(missing + over, Label::Holds);
    pairs.note = format!("{} pairs witnessed at k = 2 (same side) or k = 1, {over} beyond k_max, {missing} missing", pairs.witnesses.len());
    checks.push(pairs);

    let v = check_light_periodic_density(&map, &fam, b)?;
    let mut c = Check::verdict("light_periodic_density", holds(), &map, &v)?;
    let max = periods(v.witnesses()).into_iter().max().unwrap_or(0);
    c.note = format!("{}; largest period {max}", c.note);
    if max > 2 {
        c.computed = Label::Unknown;
    }
    checks.push(c);
    checks.push(Check::verdict("transitivity", fails(), &map, &check_transitivity(&map, r, b)?)?);
    checks.push(Check::verdict("periodic_density", holds(), &map, &check_periodic_density(&map, r, b)?)?);
    Ok(checks)
}

pub fn ex3_5(run: &RunConfig) -> Result<Vec<Check>> {
    let map = CatalogMap::Shift;
    let b = &run.budget;
    let r = resolution(run, 3);
    let fam = generate_family(&map.space(), &Scheme::Cylinders, r)?;
    let mut checks = vec![Check::verdict("light_periodic_density", holds(), &map, &check_light_periodic_density(&map, &fam, b)?)?];
    checks.push(Check::verdict("periodic_density", fails(), &map, &check_periodic_density(&map, r, b)?)?);
    let v = check_light_transitivity(&map, &fam, b)?;
    let mut c = Check::verdict("light_transitivity", holds(), &map, &v)?;
    let k = v
        .witnesses()
        .iter()
        .filter_map(|w| match w {
            Witness::Transit { k, .. } => Some(*k),
            _ => None,
        })
        .max()
        .unwrap_or(0);
    c.note = format!("{}; largest k {k}", c.note);
    if k > 1 << 12 {
        c.computed = Label::Unknown;
    }
    checks.push(c);
    Ok(checks)
}

pub fn ex3_6(run: &RunConfig) -> Result<Vec<Check>> {
    let map = CatalogMap::Contraction;
    let b = &run.budget;
    let fam = generate_family(&map.space(), &Scheme::BasicIntervals, resolution(run, 3))?;
    let deltas = match &run.delta {
        Some(d) => vec![d.clone()],
        None => (1..=4).map(Rat::dyadic).collect(),
    };
    let mut checks = Vec::new();
    for d in deltas {
        let v = check_light_sensitivity(&map, &fam, &d, b)?;
        checks.push(Check::verdict(format!("light_sensitivity:{d}"), fails(), &map, &v)?);
    }

    // |f^k(y)| = |y|/(k|y|+1) <= |y|/(|y|+1) for 100 rationals and k <= 64
    let mut bad = 0;
    for j in 1..=100i64 {
        let y = Rat::new(2 * j - 101, 101);
        let a = y.abs();
        let mut z = y.clone();
        for k in 1..=64i64 {
            z = map.eval_real(&z)?;
            let closed = &a / &(&(&Rat::int(k) * &a) + &Rat::one());
            if z.abs() != closed || closed > &a / &(&a + &Rat::one()) {
                bad += 1;
            }
        }
    }
    let computed = if bad == 0 { Label::Holds } else { Label::Fails };
    checks.push(Check::new("closed_form_orbit", holds(), computed, format!("100 rationals, k <= 64, {bad} violations")));
    Ok(checks)
}

pub fn ex3_7(run: &RunConfig) -> Result<Vec<Check>> {
    let map = CatalogMap::Pl(pl::reflected_truncated_tent());
    let b = &run.budget;
    let r = resolution(run, 3);
    let fam = generate_family(&map.space(), &Scheme::EndpointIntervals, r)?;
    let flagged = Expect::Flagged(Label::Holds);
    let delta = run.delta.clone().unwrap_or_else(|| Rat::dyadic(2));
    let mut checks = Vec::new();
    let v = check_sensitivity(&map, &delta, b)?;
    checks.push(Check::verdict(format!("sensitivity:{delta}"), fails(), &map, &v)?);
    checks.push(Check::verdict("transitivity", fails(), &map, &check_transitivity(&map, r, b)?)?);
    checks.push(Check::verdict("periodic_density", fails(), &map, &check_periodic_density(&map, r, b)?)?);
    checks.push(Check::verdict("light_transitivity", flagged, &map, &check_light_transitivity(&map, &fam, b)?)?);
    checks.push(Check::verdict("light_periodic_density", flagged, &map, &check_light_periodic_density(&map, &fam, b)?)?);
    let v = check_light_sensitivity(&map, &fam, &Rat::dyadic(3), b)?;
    checks.push(Check::verdict("light_sensitivity:1/8", holds(), &map, &v)?);
    Ok(checks)
}

pub fn ex3_8(run: &RunConfig) -> Result<Vec<Check>> {
    let b = &run.budget;
    let mut checks = Vec::new();
    for (p, q) in [(1, 3), (2, 5)] {
        let map = CatalogMap::glissorotation(p, q)?;
        let fam = generate_family(&map.space(), &Scheme::HalfSpaces, resolution(run, 1))?;
        let v = check_light_periodic_density(&map, &fam, b)?;
        let mut c = Check::verdict(format!("light_periodic_density:{p}/{q}"), holds(), &map, &v)?;
        let ps = periods(v.witnesses());
        let stray = ps.iter().filter(|&&k| (2 * q) % k != 0).count();
        c.note = format!("{} over {} half-spaces; {stray} periods not dividing {}", c.note, fam.len(), 2 * q);
        if stray > 0 {
            c.computed = Label::Fails;
        }
        checks.push(c);
        let delta = run.delta.clone().unwrap_or_else(|| Rat::dyadic(1));
        let v = check_light_sensitivity(&map, &fam, &delta, b)?;
        checks.push(Check::verdict(format!("light_sensitivity:{p}/{q}"), fails(), &map, &v)?);
        let v = check_light_transitivity(&map, &fam, b)?;
        checks.push(Check::verdict(format!("light_transitivity:{p}/{q}"), Expect::Flagged(Label::Holds), &map, &v)?);
    }
    Ok(checks)
}

pub fn abs_example(run: &RunConfig) -> Result<Vec<Check>> {
    let map = CatalogMap::AbsoluteValue;
    let b = &run.budget;
    let pinned = vec![SubbasicSet::half_line_left(Rat::int(-1)), SubbasicSet::half_line_right(Rat::one())];
    let fam = generate_family_pinned(&map.space(), &Scheme::HalfLines, resolution(run, 3), pinned)?;
    let mut checks = Vec::new();
    for (name, v) in [
        ("light_transitivity", check_light_transitivity(&map, &fam, b)?),
        ("light_periodic_density", check_light_periodic_density(&map, &fam, b)?),
    ] {
        checks.push(Check::verdict(name, fails(), &map, &v)?);
    }
    Ok(checks)
}
