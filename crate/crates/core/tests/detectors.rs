use lightchaos::catalog::CatalogMap;
use lightchaos::detect::{
    check_light_periodic_density, check_light_sensitivity, check_light_transitivity, check_periodic_density,
    check_transitivity, find_periodic_points, replay_certificate, replay_witness,
};
use lightchaos::interval::IntervalUnion;
use lightchaos::pl;
use lightchaos::scalar::Rat;
use lightchaos::subbase::{generate_family, Scheme};
use lightchaos::{Budget, Verdict};
use proptest::prelude::*;

fn systems() -> Vec<(CatalogMap, Scheme)> {
    vec![
        (CatalogMap::tent(), Scheme::BasicIntervals),
        (CatalogMap::tent(), Scheme::EndpointIntervals),
        (CatalogMap::Pl(pl::reflected_truncated_tent()), Scheme::EndpointIntervals),
        (CatalogMap::Pl(pl::truncated_tent()), Scheme::BasicIntervals),
        (CatalogMap::Contraction, Scheme::BasicIntervals),
        (CatalogMap::Negation, Scheme::HalfLines),
        (CatalogMap::AbsoluteValue, Scheme::HalfLines),
        (CatalogMap::golden_rotation(), Scheme::BasicIntervals),
        (CatalogMap::Shift, Scheme::Cylinders),
    ]
}

fn replay(map: &CatalogMap, v: &Verdict) {
    for w in v.witnesses() {
        replay_witness(map, w).unwrap_or_else(|e| panic!("{map}: {e}"));
    }
    if let Some(c) = v.certificate() {
        if !c.is_evidence_only() {
            replay_certificate(map, c).unwrap_or_else(|e| panic!("{map}: {e}"));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn detector_output_replays(which in 0usize..9, r in 1u32..5, delta in 2u32..5) {
        let (map, scheme) = systems().swap_remove(which);
        let b = Budget::default();
        let fam = generate_family(&map.space(), &scheme, r).unwrap();
        replay(&map, &check_light_transitivity(&map, &fam, &b).unwrap());
        replay(&map, &check_light_periodic_density(&map, &fam, &b).unwrap());
        replay(&map, &check_light_sensitivity(&map, &fam, &Rat::dyadic(delta), &b).unwrap());
    }
}

fn decided(v: &Verdict) -> Option<&'static str> {
    (!matches!(v, Verdict::Unknown { .. })).then(|| v.label())
}

#[test]
fn larger_budgets_only_resolve_unknowns() {
    let limits = [(1, 1), (2, 2), (4, 4), (16, 8), (64, 16)];
    for (map, scheme) in systems() {
        let fam = generate_family(&map.space(), &scheme, 3).unwrap();
        let mut last: [Option<&str>; 2] = [None, None];
        for (k, p) in limits {
            let b = Budget::default().with_k_max(k).with_p_max(p);
            let now = [
                decided(&check_light_transitivity(&map, &fam, &b).unwrap()),
                decided(&check_light_periodic_density(&map, &fam, &b).unwrap()),
            ];
            for i in 0..2 {
                if let Some(prev) = last[i] {
                    assert_eq!(now[i], Some(prev), "{map} {scheme} flipped at k_max = {k}");
                }
                last[i] = now[i].or(last[i]);
            }
        }
    }
}

#[test]
fn full_transitivity_implies_light() {
    let b = Budget::default();
    for map in [CatalogMap::tent(), CatalogMap::golden_rotation(), CatalogMap::Pl(pl::truncated_tent())] {
        for r in [2, 4] {
            if !check_transitivity(&map, r, &b).unwrap().holds() {
                continue;
            }
            for scheme in [Scheme::BasicIntervals, Scheme::EndpointIntervals] {
                let Ok(fam) = generate_family(&map.space(), &scheme, r) else { continue };
                assert!(check_light_transitivity(&map, &fam, &b).unwrap().holds(), "{map} {scheme} r = {r}");
            }
        }
    }
    let tent = CatalogMap::tent();
    assert!(check_transitivity(&tent, 4, &b).unwrap().holds());
    assert!(check_periodic_density(&tent, 4, &b).unwrap().holds());
}

#[test]
fn periodic_points_match_brute_force() {
    let b = Budget::default();
    let unit = IntervalUnion::closed(Rat::zero(), Rat::one());
    let grid: Vec<Rat> = (1..=40i64).flat_map(|d| (0..=d).map(move |n| Rat::new(n, d))).collect();
    for map in [pl::tent(), pl::truncated_tent(), pl::reflected_truncated_tent(), pl::unit_identity()] {
        for k in 1..=4 {
            let found = find_periodic_points(&map, k, &unit, &b).unwrap();
            assert!(found.complete);
            let power = |x: &Rat| (0..k).fold(x.clone(), |y, _| map.eval(&y).unwrap());
            for x in found.points() {
                assert_eq!(power(&x), x, "{map} k = {k}");
            }
            for rec in &found.records {
                let x = rec.point.as_real().unwrap();
                let least = (1..=k).find(|d| (0..*d).fold(x.clone(), |y, _| map.eval(&y).unwrap()) == *x);
                assert_eq!(least, Some(rec.period));
            }
            let points = found.points();
            for x in &grid {
                let fixed = &power(x) == x;
                let listed = points.contains(x) || found.continua.iter().any(|(c, _)| c.contains(x));
                assert_eq!(fixed, listed, "{map} k = {k} at {x}");
            }
        }
    }
}
