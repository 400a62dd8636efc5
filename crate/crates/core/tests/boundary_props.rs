use fraclap_core::boundary::*;
use fraclap_core::energies::holder_seminorm_grid;
use fraclap_core::grid::sample;
use fraclap_core::mollifier::mollify;
use fraclap_core::profile::{Gaussian, Profile};
use fraclap_core::solver::solve_frac_dirichlet;
use fraclap_core::{Domain, FracParams, GridFunction};
use proptest::prelude::*;

fn setup(s: f64, eps: f64, n: usize) -> (GridFunction, GridFunction, GridFunction, FracParams) {
    let dom = Domain::unit();
    let p = FracParams::line(s).unwrap().with_eps(eps).unwrap();
    let f = sample(dom, n, |_| 1.0).unwrap();
    let u = solve_frac_dirichlet(&dom, n, &p, &f).unwrap();
    let prof = Gaussian {
        center: 0.2,
        width: 0.8,
        height: 0.5,
    };
    let g = sample(dom, n, |x| prof.value(x)).unwrap();
    (u, g, f, p)
}

#[test]
fn competitor_matches_data_outside_and_smooth_inside() {
    let (u, g, _, p) = setup(0.7, 0.1, 257);
    let r = 0.2;
    let w = build_w(&u, &g, &p, r).unwrap();
    let smooth = mollify(&u, &p).unwrap();
    let dom = *u.domain();
    for (i, x) in u.nodes().into_iter().enumerate() {
        if !dom.in_omega(x) {
            assert_eq!(w.values()[i], g.values()[i]);
        } else if dist_to_complement(&dom, x) >= r {
            assert_eq!(w.values()[i], smooth.values()[i]);
        } else {
            let (a, b) = (g.values()[i], smooth.values()[i]);
            assert!(w.values()[i] >= a.min(b) - 1e-15 && w.values()[i] <= a.max(b) + 1e-15);
        }
    }
}

#[test]
fn strip_geometry() {
    let dom = Domain::unit();
    assert_eq!(dist_to_complement(&dom, 0.25), 0.75);
    assert_eq!(dist_to_complement(&dom, 1.5), 0.0);
    assert_eq!(strip_measure(&dom, 0.1), 0.2);
    assert_eq!(strip_measure(&dom, 5.0), 2.0);
    assert!(StripSpec::new(&dom, 0.0, 0.5).is_err());
    assert!(StripSpec::new(&dom, 0.5, 1.5).is_err());
    let spec = StripSpec::new(&dom, 0.3, 0.5).unwrap();
    assert_eq!((spec.r(), spec.rho()), (0.3, 0.5));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn strip_estimates_hold(s in 0.3f64..0.95, eps in 0.0f64..0.4, r in 0.02f64..0.9) {
        let (u, g, f, p) = setup(s, eps, 129);
        let hu = holder_seminorm_grid(&u, s).unwrap();
        let hg = holder_seminorm_grid(&g, s).unwrap();
        let (l, rhs) = check_strip_closeness(&u, &g, &p, r, hu, hg).unwrap();
        prop_assert!(l <= rhs, "closeness {} > {}", l, rhs);
        let (l, rhs) = check_strip_l2(&u, &g, &p, r, hu, hg).unwrap();
        prop_assert!(l <= rhs, "l2 {} > {}", l, rhs);
        let gap = energy_gap(&u, &g, &f, &p, r).unwrap();
        prop_assert!(gap.is_finite() && gap >= 0.0);
    }
}
