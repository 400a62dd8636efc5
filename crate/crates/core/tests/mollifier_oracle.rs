mod common;

use common::random_bump_grid;
use fraclap_core::energies::holder_seminorm_grid;
use fraclap_core::grid::{make_grid, sample};
use fraclap_core::kernels::psi;
use fraclap_core::mollifier::*;
use fraclap_core::quadrature::{graded_integral, QuadratureRule};
use fraclap_core::{Domain, FracParams, GridFunction, Region};
use proptest::prelude::*;

/// `∫ ψ(|z|) φ(x - z) dz` by quadrature in `t = |z|`, broken at `ε` and at
/// every distance from `x` to a node.
fn brute_convolution(phi: &GridFunction, p: &FracParams, x: f64) -> f64 {
    let gl = QuadratureRule::gauss_legendre(20).unwrap();
    let f = |t: f64| psi(p, t).unwrap() * (phi.eval(x - t) + phi.eval(x + t));
    let mut breaks: Vec<f64> = phi
        .nodes()
        .iter()
        .map(|y| (x - y).abs())
        .chain([p.eps(), 1.0])
        .filter(|t| *t > 1e-14 && *t <= 1.0)
        .collect();
    breaks.sort_by(f64::total_cmp);
    breaks.dedup_by(|a, b| (*a - *b).abs() < 1e-14);
    let first = graded_integral(f, breaks[0], 0.0).unwrap();
    first
        + breaks
            .windows(2)
            .map(|w| gl.integrate(f, w[0], w[1]))
            .sum::<f64>()
}

fn params(s: f64, eps: f64) -> FracParams {
    FracParams::line(s).unwrap().with_eps(eps).unwrap()
}

#[test]
fn weights_have_unit_mass() {
    for &(s, eps) in &[(0.2, 0.0), (0.5, 0.0), (0.8, 0.0), (0.8, 0.2), (0.95, 0.5)] {
        for &h in &[0.1, 1.0 / 64.0, 0.013] {
            let w = mollifier_weights(&params(s, eps), h);
            let mass = w[0] + 2.0 * w[1..].iter().sum::<f64>();
            assert!((mass - 1.0).abs() < 1e-12, "s={s} eps={eps} h={h}: {mass}");
            assert!(w.iter().all(|v| *v >= 0.0));
        }
    }
}

#[test]
fn nodal_values_match_brute_convolution() {
    let mut rng = common::rng(21);
    for &(s, eps) in &[(0.3, 0.0), (0.6, 0.15), (0.9, 0.4)] {
        let p = params(s, eps);
        let phi = random_bump_grid(&mut rng, 65);
        let m = mollify_covered(&phi, &p).unwrap();
        for (i, x) in phi.nodes().into_iter().enumerate() {
            if !m.covered[i] {
                continue;
            }
            let want = brute_convolution(&phi, &p, x);
            let got = m.values.values()[i];
            assert!((got - want).abs() < 1e-9, "s={s} x={x}: {got} vs {want}");
        }
    }
}

#[test]
fn affine_functions_are_fixed_at_covered_nodes() {
    let p = params(0.7, 0.1);
    let phi = sample(Domain::unit(), 129, |x| 2.0 * x - 0.3).unwrap();
    let m = mollify_covered(&phi, &p).unwrap();
    assert!(m.covered.iter().any(|c| *c));
    for (i, c) in m.covered.iter().enumerate() {
        if *c {
            assert!((m.values.values()[i] - phi.values()[i]).abs() < 1e-12);
        }
    }
    let g = mollify_gradient_covered(&phi, &p).unwrap();
    for (i, c) in g.covered.iter().enumerate() {
        if *c {
            assert!(
                (g.values.values()[i] - 2.0).abs() < 1e-10,
                "{}",
                g.values.values()[i]
            );
        }
    }
}

#[test]
fn gradient_matches_differences_of_mollified() {
    let mut rng = common::rng(22);
    for &(s, eps) in &[(0.4, 0.0), (0.7, 0.2)] {
        let p = params(s, eps);
        let phi = random_bump_grid(&mut rng, 2049);
        let m = mollify(&phi, &p).unwrap().values().to_vec();
        let g = mollify_gradient_covered(&phi, &p).unwrap();
        let h = phi.h();
        let scale = g.values.max_abs().max(1e-3);
        for i in (600..1450).step_by(50) {
            let fd = (m[i + 1] - m[i - 1]) / (2.0 * h);
            assert!(
                (fd - g.values.values()[i]).abs() < 2e-3 * scale,
                "s={s} i={i}"
            );
        }
    }
}

#[test]
fn gradient_matches_differences_of_brute_convolution() {
    let mut rng = common::rng(23);
    let p = params(0.6, 0.1);
    let phi = random_bump_grid(&mut rng, 129);
    let g = mollify_gradient(&phi, &p).unwrap();
    let step = 1e-5;
    for i in [50usize, 64, 70, 80] {
        let x = phi.node(i);
        let fd = (brute_convolution(&phi, &p, x + step) - brute_convolution(&phi, &p, x - step))
            / (2.0 * step);
        assert!(
            (fd - g.values()[i]).abs() < 1e-5 * g.max_abs().max(1.0),
            "i={i}"
        );
    }
}

#[test]
fn estimates_hold_on_random_bumps() {
    let mut rng = common::rng(24);
    let tol = |v: f64| 1e-9 * v.abs() + 1e-12;
    for &s in &[0.3, 0.5, 0.7, 0.9] {
        for &eps in &[0.0, 0.1, 0.3] {
            let p = params(s, eps);
            for _ in 0..4 {
                let phi = random_bump_grid(&mut rng, 257);
                let (l, r) = check_identity_l2(&phi, &p).unwrap();
                assert!(l <= r + tol(r), "identity s={s} eps={eps}: {l} > {r}");
                let (l, r) = check_uniform_closeness(&phi, &p, None).unwrap();
                assert!(l <= r + tol(r), "uniform s={s} eps={eps}: {l} > {r}");
                let (l, r) = check_energy_consistency(&phi, &p).unwrap();
                assert!(l <= r + tol(r), "energy s={s} eps={eps}: {l} > {r}");
                let (l, r) = check_lipschitz(&phi, &p, None).unwrap();
                assert!(l <= r + tol(r), "lipschitz s={s} eps={eps}: {l} > {r}");
                for &alpha in &[0.5, 1.0] {
                    let rho = (eps + 0.2).min(1.0);
                    let (l, r) = check_tail_bound(&phi, &p, rho, alpha, None).unwrap();
                    assert!(l <= r + tol(r), "tail s={s} eps={eps} a={alpha}: {l} > {r}");
                }
            }
        }
    }
}

#[test]
fn identity_error_shrinks_with_s() {
    let mut rng = common::rng(25);
    let phi = random_bump_grid(&mut rng, 1025);
    let errs: Vec<f64> = [0.5, 0.7, 0.9, 0.99]
        .iter()
        .map(|&s| {
            let m = mollify(&phi, &params(s, 0.0)).unwrap();
            m.sub(&phi).unwrap().l2_norm(Region::Box)
        })
        .collect();
    assert!(errs.windows(2).all(|w| w[1] < w[0]), "{errs:?}");
}

#[test]
fn tail_radius_outside_range_is_rejected() {
    let phi = make_grid(Domain::unit(), 33).unwrap();
    let p = params(0.5, 0.3);
    assert!(check_tail_bound(&phi, &p, 0.2, 0.5, None).is_err());
    assert!(check_tail_bound(&phi, &p, 1.2, 0.5, None).is_err());
    assert!(check_tail_bound(&phi, &p, 0.5, 0.0, None).is_err());
}

fn grid_with(values: Vec<f64>) -> GridFunction {
    make_grid(Domain::unit(), values.len())
        .unwrap()
        .with_values(values)
        .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    /// Interior values only so the clamped extension is zero and the
    /// discrete convolution acts as on the whole line.
    #[test]
    fn mollifier_is_nonexpansive(
        inner in prop::collection::vec(-1.0f64..1.0, 31),
        s in 0.1f64..0.95,
        eps in 0.0f64..0.5,
    ) {
        let mut v = vec![0.0; 65];
        v[17..48].copy_from_slice(&inner);
        let phi = grid_with(v);
        let p = params(s, eps);
        let m = mollify(&phi, &p).unwrap();
        prop_assert!(m.max_abs() <= phi.max_abs() + 1e-12);
        prop_assert!(m.l2_norm(Region::Box) <= phi.l2_norm(Region::Box) * (1.0 + 1e-12));
        let a = m.integral(Region::Box);
        let b = phi.integral(Region::Box);
        prop_assert!((a - b).abs() < 1e-10 * (1.0 + b.abs()));
    }

    #[test]
    fn mollifier_preserves_holder_seminorm(
        v in prop::collection::vec(-1.0f64..1.0, 33),
        s in 0.1f64..0.95,
        beta in 0.2f64..1.0,
    ) {
        let phi = grid_with(v);
        let m = mollify(&phi, &params(s, 0.0)).unwrap();
        let a = holder_seminorm_grid(&m, beta).unwrap();
        let b = holder_seminorm_grid(&phi, beta).unwrap();
        prop_assert!(a <= b * (1.0 + 1e-12) + 1e-14);
    }

    #[test]
    fn mollifier_is_linear(
        u in prop::collection::vec(-1.0f64..1.0, 33),
        v in prop::collection::vec(-1.0f64..1.0, 33),
        a in -3.0f64..3.0,
    ) {
        let p = params(0.6, 0.1);
        let (pu, pv) = (grid_with(u), grid_with(v));
        let lhs = mollify(&pu.scale(a).add(&pv).unwrap(), &p).unwrap();
        let rhs = mollify(&pu, &p).unwrap().scale(a).add(&mollify(&pv, &p).unwrap()).unwrap();
        prop_assert!(lhs.linf_distance(&rhs, Region::Box).unwrap() < 1e-12);
    }
}
