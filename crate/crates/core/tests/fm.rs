use macwt::fm::*;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn q(n: i64) -> Rational {
    rational(n, 1)
}

const NAMES: [&str; 4] = ["w", "x", "y", "z"];

fn system_from(rows: &[(Vec<i64>, i64)]) -> LinearSystem {
    let mut s = LinearSystem::new(NAMES);
    for (c, b) in rows {
        s.push(c.iter().map(|&v| q(v)).collect(), Relation::Le, q(*b)).unwrap();
    }
    s
}

fn small_system() -> impl Strategy<Value = Vec<(Vec<i64>, i64)>> {
    prop::collection::vec((prop::collection::vec(-3i64..=3, 4), -4i64..=6), 1..8)
}

/// Grid of points in `[-2, 2]^3` at step 1/2.
fn grid3() -> Vec<Vec<Rational>> {
    let axis: Vec<Rational> = (-4..=4).map(|i| rational(i, 2)).collect();
    let mut pts = Vec::new();
    for a in &axis {
        for b in &axis {
            for c in &axis {
                pts.push(vec![a.clone(), b.clone(), c.clone()]);
            }
        }
    }
    pts
}

fn with_slot(point: &[Rational], k: usize) -> Vec<Rational> {
    let mut full = point.to_vec();
    full.insert(k, Rational::zero());
    full
}

fn pick(interval: &(Option<Rational>, Option<Rational>)) -> Rational {
    match interval {
        (Some(l), Some(h)) => (l + h) / q(2),
        (Some(l), None) => l + Rational::one(),
        (None, Some(h)) => h - Rational::one(),
        (None, None) => Rational::zero(),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    // A point lies in the shadow exactly when the eliminated coordinate has a
    // nonempty feasible interval there.
    #[test]
    fn elimination_matches_interval_oracle(rows in small_system(), k in 0usize..4) {
        let sys = system_from(&rows);
        let shadow = sys.eliminate(NAMES[k]).unwrap();
        for p in grid3() {
            let oracle = sys.interval_for(k, &with_slot(&p, k)).is_some();
            prop_assert_eq!(shadow.satisfied_by(&p), oracle, "point {:?}", p);
        }
    }

    #[test]
    fn back_substitution_lifts_shadow_points(rows in small_system(), k in 0usize..4) {
        let sys = system_from(&rows);
        let shadow = sys.eliminate(NAMES[k]).unwrap();
        for p in grid3().into_iter().filter(|p| shadow.satisfied_by(p)) {
            let mut full = with_slot(&p, k);
            let interval = sys.interval_for(k, &full).expect("shadow point must lift");
            full[k] = pick(&interval);
            prop_assert!(sys.satisfied_by(&full));
        }
    }

    #[test]
    fn elimination_order_does_not_change_the_projection(rows in small_system()) {
        let sys = system_from(&rows);
        let a = sys.eliminate("w").unwrap().eliminate("x").unwrap();
        let b = sys.eliminate("x").unwrap().eliminate("w").unwrap();
        let c = sys.project_to(&["y", "z"]).unwrap();
        let axis: Vec<Rational> = (-8..=8).map(|i| rational(i, 4)).collect();
        for y in &axis {
            for z in &axis {
                let p = [y.clone(), z.clone()];
                prop_assert_eq!(a.satisfied_by(&p), b.satisfied_by(&p));
                prop_assert_eq!(a.satisfied_by(&p), c.satisfied_by(&p));
            }
        }
    }

    #[test]
    fn normalization_preserves_the_feasible_set(rows in small_system()) {
        let sys = system_from(&rows);
        let n = sys.normalized();
        let axis: Vec<Rational> = (-2..=2).map(q).collect();
        for w in &axis {
            for p in grid3() {
                let mut full = vec![w.clone()];
                full.extend(p);
                prop_assert_eq!(sys.satisfied_by(&full), n.satisfied_by(&full));
            }
        }
    }

    #[test]
    fn hybrid_region_agrees_with_projection(
        nums in prop::collection::vec(0i64..=192, 5),
        dens in prop::collection::vec(1i64..=64, 5),
    ) {
        let v: Vec<Rational> = nums.iter().zip(&dens).map(|(n, d)| rational(*n, *d)).collect();
        let k = RateConstants::new(v[0].clone(), v[1].clone(), v[2].clone(), v[3].clone(), v[4].clone()).unwrap();
        let check = verify_hybrid_region(&k);
        prop_assert!(check.verdict, "{}: {:?} vs {:?}", k, check.projected.vertices(), check.closed_form.vertices());
    }
}

#[test]
fn projection_keeps_only_requested_variables() {
    let k = RateConstants::new(q(1), q(2), q(2), rational(1, 2), rational(1, 3)).unwrap();
    let p = encode_rate_split_system(&k).project_to(&["R1", "R2"]).unwrap();
    assert_eq!(p.variables(), &["R1".to_string(), "R2".to_string()]);
    assert!(!p.is_trivially_infeasible());
}

#[test]
fn zero_leakage_gives_plain_mac_region() {
    for (a, b, c) in [(1, 1, 3), (2, 1, 2), (3, 2, 4)] {
        let k = RateConstants::new(q(a), q(b), q(c), q(0), rational(1, 2)).unwrap();
        let check = verify_hybrid_region(&k);
        assert!(check.verdict);
        assert_eq!(check.projected.max_sum_rate(), q(c.min(a + b)));
        assert_eq!(check.projected.support(&q(1), &q(0)), q(a.min(c)));
    }
}

#[test]
fn leakage_beyond_key_and_rates_is_infeasible() {
    // d - e exceeds a + b, so the dummy rates cannot cover the leakage
    let k = RateConstants::new(q(1), q(1), q(5), q(4), q(1)).unwrap();
    let check = verify_hybrid_region(&k);
    assert!(check.verdict);
    assert!(check.projected.is_degenerate());
}

#[test]
fn rate_split_point_lifts_to_full_system() {
    let k = RateConstants::new(q(2), q(1), rational(5, 2), q(1), rational(1, 2)).unwrap();
    let sys = encode_rate_split_system(&k);
    // R10=1/2, R11=1/4, R1*=1/4, R20=1/2, R21=0, R2*=1/4 -> R1=3/4, R2=1/2
    let point: Vec<Rational> = [(1, 2), (1, 4), (1, 4), (1, 2), (0, 1), (1, 4), (3, 4), (1, 2)]
        .iter()
        .map(|&(n, d)| rational(n, d))
        .collect();
    assert!(sys.satisfied_by(&point));
    let region = verify_hybrid_region(&k).projected;
    assert!(region.contains(&[rational(3, 4), rational(1, 2)]));
}

#[test]
fn display_lists_rows() {
    let mut s = LinearSystem::new(["x", "y"]);
    s.push_terms(&[("x", 1), ("y", -2)], Relation::Le, rational(1, 3)).unwrap();
    let text = s.to_string();
    assert!(text.contains("<= 1/3"), "{text}");
}
