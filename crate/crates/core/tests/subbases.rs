use lightchaos::scalar::Rat;
use lightchaos::space::{PhasePoint, PhaseSpace};
use lightchaos::subbase::{generate_family, inhabitant, Scheme};
use proptest::prelude::*;

fn cases() -> Vec<(PhaseSpace, Scheme)> {
    vec![
        (PhaseSpace::RealLine, Scheme::HalfLines),
        (PhaseSpace::RealLine, Scheme::BasicIntervals),
        (PhaseSpace::unit_interval(), Scheme::EndpointIntervals),
        (PhaseSpace::unit_interval(), Scheme::BasicIntervals),
        (PhaseSpace::symmetric_interval(), Scheme::BasicIntervals),
        (PhaseSpace::Circle, Scheme::BasicIntervals),
    ]
}

fn point_of(space: &PhaseSpace, x: Rat) -> PhasePoint {
    match space {
        PhaseSpace::Circle => PhasePoint::Circle(lightchaos::Golden::rational(x.frac())),
        _ => PhasePoint::Real(x),
    }
}

#[test]
fn generation_is_deterministic_and_inhabited() {
    let mut all = cases();
    all.push((PhaseSpace::CantorSequences, Scheme::Cylinders));
    all.push((PhaseSpace::ShiftSubsystem, Scheme::BasicCylinders));
    all.push((PhaseSpace::DoubleCone, Scheme::HalfSpaces));
    all.push((PhaseSpace::unit_interval(), Scheme::CompactOpen));
    all.push((PhaseSpace::unit_interval(), Scheme::PointOpen));
    for (space, scheme) in all {
        for r in 1..=3 {
            let a = generate_family(&space, &scheme, r).unwrap();
            assert_eq!(a, generate_family(&space, &scheme, r).unwrap());
            assert!(!a.is_empty(), "{scheme} on {space:?}");
            for (i, m) in a.members.iter().enumerate() {
                assert!(a.members[..i].iter().all(|o| o.set != m.set));
                if !m.set.is_function_set() {
                    assert!(m.set.contains(&space, &m.witness), "{} misses {}", m.set, m.witness);
                }
                assert_eq!(inhabitant(&space, &m.set).as_ref(), Some(&m.witness));
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn membership_agrees_with_region(which in 0usize..6, r in 1u32..5, xs in prop::collection::vec((-300i64..300, 1i64..97), 1000)) {
        let (space, scheme) = cases().swap_remove(which);
        let fam = generate_family(&space, &scheme, r).unwrap();
        let carrier = space.as_region().unwrap();
        let regions: Vec<_> = fam.sets().map(|s| s.realize(&space).unwrap()).collect();
        for (n, d) in xs {
            let x = Rat::new(n, d * 50);
            let x = if matches!(space, PhaseSpace::Circle) { x.frac() } else { x };
            if !carrier.contains(&x) {
                continue;
            }
            let p = point_of(&space, x.clone());
            for (s, region) in fam.sets().zip(&regions) {
                prop_assert_eq!(s.contains(&space, &p), region.contains(&x), "{} at {}", s, x);
            }
        }
    }

    #[test]
    fn meets_is_symmetric(which in 0usize..6, r in 1u32..4) {
        let (space, scheme) = cases().swap_remove(which);
        let fam = generate_family(&space, &scheme, r).unwrap();
        for s in fam.sets() {
            for t in fam.sets() {
                let (rs, rt) = (s.realize(&space).unwrap(), t.realize(&space).unwrap());
                prop_assert_eq!(s.meets(&space, &rt).unwrap(), t.meets(&space, &rs).unwrap());
                prop_assert_eq!(s.meets(&space, &rt).unwrap(), rs.meets(&rt));
            }
        }
    }
}
