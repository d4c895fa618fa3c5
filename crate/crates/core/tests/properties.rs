mod common;

use cheeger_core::candidates::cylinder_candidate;
use cheeger_core::revolve::{curve_area_volume, weighted_functionals};
use common::*;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn first_integral_is_conserved(c in any_case(), periods in 0.5f64..6.0) {
        prop_assert!(first_integral_max(&c, periods) < 1e-8);
    }

    #[test]
    fn extrema_bounds(c in any_case()) {
        prop_assert!(extrema_bounds_hold(&c), "{c:?}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn ode_matches_graph_quadrature(c in any_case()) {
        let gap = oracle_gap(&c);
        prop_assert!(gap < 1e-6, "{c:?}: {gap}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    // Area and volume scale like λ^{n−1} and λ^n.
    #[test]
    fn cylinder_candidate_scaling(n in 3usize..=6, l in 0.5f64..3.0, lambda in 0.3f64..3.0, f in 0.2f64..0.8) {
        let r = 1.0;
        let lo = 1.0 / r;
        let h = lo + f * 2.0;
        let Ok(a) = cylinder_candidate(n, l, r, h) else { return Ok(()); };
        let Ok(b) = cylinder_candidate(n, lambda * l, lambda * r, h / lambda) else { return Ok(()); };
        let (ap, av) = (a.breakdown.area, a.breakdown.volume);
        let (bp, bv) = (b.breakdown.area, b.breakdown.volume);
        prop_assert!((bp / ap - lambda.powi(n as i32 - 1)).abs() < 1e-7 * lambda.powi(n as i32 - 1));
        prop_assert!((bv / av - lambda.powi(n as i32)).abs() < 1e-7 * lambda.powi(n as i32));
        prop_assert!((b.ratio() * lambda - a.ratio()).abs() < 1e-8 * a.ratio());
    }

    // The stored breakdown agrees with integrating the assembled generatrix,
    // and the weighted functionals are the area and volume without the
    // sphere constants.
    #[test]
    fn cylinder_breakdown_matches_generatrix(n in 3usize..=6, l in 0.5f64..3.0, f in 0.05f64..0.95) {
        let h = 1.0 + f * 2.0;
        let Ok(c) = cylinder_candidate(n, l, 1.0, h) else { return Ok(()); };
        let (area, vol) = curve_area_volume(&c.generatrix).unwrap();
        prop_assert!((area / c.breakdown.area - 1.0).abs() < 1e-9);
        prop_assert!((vol / c.breakdown.volume - 1.0).abs() < 1e-9);
        let (pw, vw) = weighted_functionals(&c.generatrix).unwrap();
        let k = cheeger_core::revolve::unit_ball_volume(n - 1);
        prop_assert!((pw * (n as f64 - 1.0) * k / area - 1.0).abs() < 1e-9);
        prop_assert!((vw * (n as f64 - 1.0) * k / vol - 1.0).abs() < 1e-9);
    }
}
