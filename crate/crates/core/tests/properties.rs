use macwt::channels::GaussianMacWt;
use macwt::gaussian::*;
use macwt::info::*;
use macwt::power::*;
use macwt::regions::{mac_shaped_region, Halfspace, RateRegion2D};
use proptest::prelude::*;

fn dist(n: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(0.0f64..1.0, n).prop_filter_map("zero mass", |v| {
        let s: f64 = v.iter().sum();
        (s > 1e-6).then(|| v.into_iter().map(|x| x / s).collect())
    })
}

fn gaussian() -> impl Strategy<Value = GaussianMacWt> {
    (0.0f64..50.0, 0.0f64..50.0, 0.06f64..20.0, 0.06f64..20.0)
        .prop_map(|(p1, p2, s1, s2)| GaussianMacWt::new(p1, p2, s1, s2).unwrap())
}

fn noise() -> impl Strategy<Value = NoiseVariances> {
    (unit_entropy_variance()..20.0, 0.01f64..20.0).prop_map(|(s1, s2)| NoiseVariances::new(s1, s2).unwrap())
}

fn halfspaces() -> impl Strategy<Value = Vec<Halfspace>> {
    prop::collection::vec((0.0f64..2.0, 0.0f64..2.0, -0.5f64..3.0), 0..5).prop_map(|rows| {
        let mut hs: Vec<Halfspace> = rows
            .into_iter()
            .filter(|(a, b, _)| a + b > 1e-3)
            .map(|(a, b, c)| Halfspace::new(a, b, c))
            .collect();
        // keep every system bounded
        hs.push(Halfspace::sum_at_most(4.0));
        hs
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn entropy_is_bounded_by_log_support(p in dist(6)) {
        let h = entropy(&FiniteDist::new(p).unwrap());
        prop_assert!(h >= 0.0 && h <= 6f64.log2() + 1e-12);
    }

    #[test]
    fn entropy_is_concave(p in dist(4), q in dist(4), t in 0.0f64..1.0) {
        let mix: Vec<f64> = p.iter().zip(&q).map(|(a, b)| t * a + (1.0 - t) * b).collect();
        let hp = entropy(&FiniteDist::new(p).unwrap());
        let hq = entropy(&FiniteDist::new(q).unwrap());
        let hm = entropy(&FiniteDist::new(mix).unwrap());
        prop_assert!(hm >= t * hp + (1.0 - t) * hq - 1e-12);
    }

    #[test]
    fn chain_rule_and_mutual_information_identity(m in dist(24)) {
        let j = JointDist::new(vec![2, 3, 4], m).unwrap();
        let hxy = j.entropy_of(&[0, 1]).unwrap();
        let hx = j.entropy_of(&[0]).unwrap();
        let hy = j.entropy_of(&[1]).unwrap();
        let h_y_x = conditional_entropy(&j, &[1], &[0]).unwrap();
        prop_assert!((hxy - (hx + h_y_x)).abs() < 1e-10);
        let i = mutual_information(&j, &[0], &[1], &[]).unwrap();
        prop_assert!((i - (hx + hy - hxy).max(0.0)).abs() < 1e-10);
        prop_assert!(i >= 0.0);
        let i_cond = mutual_information(&j, &[0], &[1], &[2]).unwrap();
        prop_assert!(i_cond >= 0.0);
        prop_assert!(conditional_entropy(&j, &[0], &[1, 2]).unwrap() <= conditional_entropy(&j, &[0], &[1]).unwrap() + 1e-12);
    }

    #[test]
    fn gaussian_entropy_is_monotone(v in 1e-3f64..1e3, f in 1.0f64..10.0) {
        prop_assert!(gaussian_diff_entropy(v * f).unwrap() >= gaussian_diff_entropy(v).unwrap());
    }

    #[test]
    fn region_construction_is_idempotent(hs in halfspaces()) {
        let r = RateRegion2D::from_halfspaces(&hs);
        let again = RateRegion2D::from_halfspaces(r.halfspaces());
        prop_assert!(r.same_vertices(&again));
    }

    #[test]
    fn region_membership_matches_constraints(hs in halfspaces()) {
        let r = RateRegion2D::from_halfspaces(&hs);
        if r.is_degenerate() {
            return Ok(());
        }
        for i in 0..=20 {
            for j in 0..=20 {
                let p = [i as f64 * 0.2 + 0.013, j as f64 * 0.2 + 0.007];
                let direct = hs.iter().all(|h| h.lhs(&p) <= h.bound - 1e-7);
                let loose = hs.iter().all(|h| h.lhs(&p) <= h.bound + 1e-7);
                if direct {
                    prop_assert!(r.contains(&p));
                }
                if !loose {
                    prop_assert!(!r.contains(&p));
                }
            }
        }
    }

    #[test]
    fn mutual_subsets_share_vertices(a in 0.0f64..3.0, b in 0.0f64..3.0, s in 0.0f64..5.0) {
        let r = mac_shaped_region(a, b, s);
        let rebuilt = RateRegion2D::from_halfspaces(r.halfspaces());
        prop_assert!(r.is_subset_of(&rebuilt) && rebuilt.is_subset_of(&r));
        prop_assert!(r.same_vertices(&rebuilt));
    }

    #[test]
    fn boundary_samples_lie_on_the_boundary(a in 0.01f64..3.0, b in 0.01f64..3.0, s in 0.01f64..5.0) {
        let r = mac_shaped_region(a, b, s);
        for p in r.boundary_samples(17) {
            prop_assert!(r.contains(&p));
            prop_assert!(r.halfspaces().iter().any(|h| h.is_tight_at(&p)));
        }
    }

    #[test]
    fn gaussian_bounds_nest(g in gaussian()) {
        let df = gaussian_df_region(&g).unwrap();
        let ty = tekin_yener_region(&g).unwrap();
        let hybrid = gaussian_hybrid_region(&g).unwrap();
        if !hybrid.negative_key_term {
            prop_assert!(df.is_subset_of(&hybrid.region));
            prop_assert!(ty.is_subset_of(&hybrid.region));
        }
        prop_assert!(ty.is_subset_of(&df));
        let s = summarize(&g).unwrap();
        prop_assert!((s.df_sum - s.ty_sum).abs() < 1e-12);
    }

    #[test]
    fn gaussian_bounds_symmetric_in_users(g in gaussian()) {
        let swapped = GaussianMacWt { p1: g.p2, p2: g.p1, ..g };
        let r = gaussian_hybrid_region(&g).unwrap().region;
        let s = gaussian_hybrid_region(&swapped).unwrap().region;
        prop_assert!((r.support(&1.0, &0.0) - s.support(&0.0, &1.0)).abs() < 1e-12);
        prop_assert!((r.max_sum_rate() - s.max_sum_rate()).abs() < 1e-12);
    }

    #[test]
    fn branches_meet_at_breakpoint(n in noise()) {
        let b = n.breakpoint();
        prop_assert!((n.lower_branch(b) - n.upper_branch(b)).abs() < 1e-10);
    }

    #[test]
    fn optimum_is_monotone_in_cap(n in noise(), p in 0.0f64..400.0, dp in 0.0f64..50.0) {
        let lo = optimal_power(p, &n).unwrap();
        let hi = optimal_power(p + dp, &n).unwrap();
        prop_assert!(hi.r_sum_star >= lo.r_sum_star - 1e-12);
        prop_assert!(lo.p1_star <= p && lo.p2_star <= p);
        prop_assert!((sum_rate(lo.p1_star, lo.p2_star, &n).unwrap() - lo.r_sum_star).abs() < 1e-12);
    }

    #[test]
    fn optimum_dominates_random_feasible_powers(n in noise(), p in 0.0f64..400.0, u in 0.0f64..1.0, v in 0.0f64..1.0) {
        let best = optimal_power(p, &n).unwrap();
        prop_assert!(sum_rate(u * p, v * p, &n).unwrap() <= best.r_sum_star + 1e-12);
    }

    #[test]
    fn sum_rate_is_continuous(n in noise(), eps in 1e-9f64..1e-6) {
        let b = n.breakpoint();
        let l = sum_rate(b / 2.0, (b - eps) / 2.0, &n).unwrap();
        let r = sum_rate(b / 2.0, (b + eps) / 2.0, &n).unwrap();
        prop_assert!((l - r).abs() < 1e-6);
    }
}

#[test]
fn figure_parameters_respect_the_outer_bound() {
    for g in [GaussianMacWt::new(1.0, 1.0, 1.0, 10.0).unwrap(), GaussianMacWt::new(10.0, 10.0, 5.0, 2.0).unwrap()] {
        let outer = gaussian_outer_region(&g).unwrap();
        assert!(gaussian_hybrid_region(&g).unwrap().region.is_subset_of(&outer));
        assert!(gaussian_df_region(&g).unwrap().is_subset_of(&outer));
    }
}

// The closed-form outer sum is a differential entropy and is not scale
// invariant. With nearly equal noise variances it goes negative while the
// feedback key keeps the hybrid sum rate near 2 bits.
#[test]
fn closed_form_outer_sum_can_undercut_inner_bounds() {
    let g = GaussianMacWt::new(100.0, 100.0, 1.0, 1.01).unwrap();
    let outer = gaussian_outer_sum(&g).unwrap();
    assert!(outer < -1.0, "{outer}");
    let hybrid = gaussian_hybrid_region(&g).unwrap().region;
    assert!(hybrid.max_sum_rate() > 2.0);
    assert!(!hybrid.is_subset_of(&gaussian_outer_region(&g).unwrap()));
}
