mod common;

use common::{random_bump_grid, random_interior, rel_err, simpson};
use fraclap_core::energies::*;
use fraclap_core::grid::{make_grid, sample};
use fraclap_core::profile::{Bump, Profile};
use fraclap_core::quadrature::graded_integral;
use fraclap_core::{Domain, FracParams, GridFunction, Region};
use proptest::prelude::*;

fn hat(n: usize, at: usize) -> GridFunction {
    let g = make_grid(Domain::unit(), n).unwrap();
    let mut v = vec![0.0; n];
    v[at] = 1.0;
    g.with_values(v).unwrap()
}

/// `D_s` of a single hat of half-width `h`, from `2C ∫_0^∞ z^{-1-2s} m(z) dz`
/// with `m(z) = ∫ (φ(x+z) - φ(x))² dx` evaluated by Simpson in `x`.
fn brute_hat_energy(s: f64, h: f64) -> f64 {
    let c = (1.0 - s) / 2.0;
    let phi = |x: f64| (1.0 - x.abs() / h).max(0.0);
    let m = |z: f64| {
        let mut breaks = [-h - z, -z, h - z, -h, 0.0, h];
        breaks.sort_by(f64::total_cmp);
        breaks
            .windows(2)
            .map(|w| simpson(|x| (phi(x + z) - phi(x)).powi(2), w[0], w[1], 8))
            .sum::<f64>()
    };
    let near = graded_integral(|z| z.powf(-1.0 - 2.0 * s) * m(z), 2.0 * h, 1.0 - 2.0 * s).unwrap();
    let norm2 = 2.0 * h / 3.0;
    let far = 2.0 * norm2 * (2.0 * h).powf(-2.0 * s) / (2.0 * s);
    2.0 * c * (near + far)
}

#[test]
fn single_hat_matches_brute_force() {
    for &s in &[0.3, 0.5, 0.8] {
        let phi = hat(257, 128);
        let p = FracParams::line(s).unwrap();
        let e = dirichlet_frac(&phi, &p).unwrap();
        let want = brute_hat_energy(s, phi.h());
        assert!(
            rel_err(e.total(), want) < 1e-4,
            "s={s}: {} vs {want}",
            e.total()
        );
    }
}

#[test]
fn split_matches_full_form_and_bounds() {
    let mut rng = common::rng(11);
    for &s in &[0.3, 0.5, 0.7, 0.9] {
        let p = FracParams::line(s).unwrap();
        for _ in 0..6 {
            let phi = random_bump_grid(&mut rng, 257);
            let e = dirichlet_frac(&phi, &p).unwrap();
            let direct = dirichlet_frac_direct(&phi, &p).unwrap();
            assert!(rel_err(e.total(), direct) < 1e-8, "s={s}");
            assert!(e.d1 >= 0.0 && e.d2 >= 0.0);
            let tol = |v: f64| 1e-6 * v.abs() + 1e-10;
            let norm2 = phi.l2_norm(Region::Box).powi(2);
            let bound = 2.0 / s * norm2 * (1.0 - s);
            assert!(e.d2 <= bound + tol(bound));
            let local = dirichlet_local(&phi);
            assert!(e.d1 <= local + tol(local), "s={s}: {} > {local}", e.d1);
        }
    }
}

#[test]
fn upper_consistency_over_random_bumps() {
    let mut rng = common::rng(12);
    let dom = Domain::unit();
    let f = sample(dom, 257, |x| 1.0 + 0.5 * x).unwrap();
    for &s in &[0.3, 0.5, 0.7, 0.9] {
        let p = FracParams::line(s).unwrap();
        for _ in 0..20 {
            let phi = random_bump_grid(&mut rng, 257);
            let js = objective_frac(&phi, &f, &p).unwrap();
            let j = objective_local(&phi, &f).unwrap();
            let extra = 2.0 / s * phi.l2_norm(Region::Box).powi(2) * (1.0 - s);
            let rhs = j + extra;
            assert!(js <= rhs + 1e-6 * rhs.abs() + 1e-10, "s={s}: {js} > {rhs}");
        }
    }
}

#[test]
fn fractional_energy_approaches_local_one() {
    let bump = Bump {
        center: 0.0,
        radius: 0.7,
        height: 1.0,
    };
    let phi = sample(Domain::unit(), 1025, |x| bump.value(x)).unwrap();
    let p = FracParams::line(0.99).unwrap();
    let semi = seminorm_ws2(&phi, &p).unwrap();
    let grad = simpson(|x| bump.d1(x).powi(2), -0.7, 0.7, 20_000).sqrt();
    assert!(rel_err(semi, grad) < 0.1, "{semi} vs {grad}");
    let total = dirichlet_frac(&phi, &p).unwrap().total();
    assert!(rel_err(2.0 * total, semi * semi) < 1e-8);
}

#[test]
fn local_energy_of_clipped_identity() {
    let phi = sample(Domain::unit(), 65, |x| x).unwrap();
    assert!((dirichlet_local(&phi) - 0.5 * 4.0).abs() < 1e-12);
}

#[test]
fn load_matches_simpson() {
    let mut rng = common::rng(13);
    let like = make_grid(Domain::unit(), 65).unwrap();
    let phi = random_interior(&mut rng, &like);
    let f = sample(Domain::unit(), 65, |x| (3.0 * x).cos() + x).unwrap();
    let j = objective_local(&phi, &f).unwrap();
    let nodes: Vec<f64> = like
        .nodes()
        .into_iter()
        .filter(|x| (-1.0..=1.0).contains(x))
        .collect();
    let load: f64 = nodes
        .windows(2)
        .map(|w| simpson(|x| f.eval(x) * phi.eval(x), w[0], w[1], 2))
        .sum();
    assert!(rel_err(j, dirichlet_local(&phi) - load) < 1e-10);
    let zero = make_grid(Domain::unit(), 65).unwrap();
    assert_eq!(objective_local(&zero, &f).unwrap(), 0.0);
    assert_eq!(objective_local(&phi, &zero).unwrap(), dirichlet_local(&phi));
}

#[test]
fn holder_of_square_root() {
    let mut last = 0.0;
    for &n in &[65, 257, 1025] {
        let phi = sample(Domain::unit(), n, |x| x.abs().sqrt()).unwrap();
        let v = holder_seminorm_grid(&phi, 0.5).unwrap();
        assert!(v <= 1.0 + 1e-12 && v >= last);
        last = v;
    }
    assert!(last > 1.0 - 1e-3);
}

/// `2 ∫_0^1 z^{-1-β} ∫ |f(x+z) - f(x)| dx dz` for `f` supported in `[-1, 1]`.
fn brute_w_beta1(f: &dyn Fn(f64) -> f64, beta: f64) -> f64 {
    let m = |z: f64| simpson(|x| (f(x + z) - f(x)).abs(), -1.0 - z, 1.0, 6000);
    2.0 * graded_integral(|z| z.powf(-1.0 - beta) * m(z), 1.0, -beta).unwrap()
}

#[test]
fn w_beta1_matches_brute_force() {
    let bump = Bump {
        center: 0.1,
        radius: 0.6,
        height: 1.0,
    };
    let phi = sample(Domain::unit(), 1025, |x| bump.value(x)).unwrap();
    let got = w_beta1_seminorm_grid(&phi, 0.5).unwrap();
    let want = brute_w_beta1(&|x| bump.value(x), 0.5);
    assert!(rel_err(got, want) < 1e-3, "{got} vs {want}");
    let c = sample(Domain::unit(), 65, |_| 1.0).unwrap();
    assert_eq!(w_beta1_seminorm_grid(&c, 0.5).unwrap(), 0.0);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn energies_are_quadratic(seed in 0u64..1000, a in -3.0f64..3.0, s in 0.2f64..0.95) {
        let mut rng = common::rng(seed);
        let phi = random_bump_grid(&mut rng, 129);
        let p = FracParams::line(s).unwrap();
        let scaled = phi.scale(a);
        let e1 = dirichlet_frac(&phi, &p).unwrap();
        let e2 = dirichlet_frac(&scaled, &p).unwrap();
        prop_assert!((e2.total() - a * a * e1.total()).abs() <= 1e-10 * e1.total().max(1e-12));
        prop_assert!((dirichlet_local(&scaled) - a * a * dirichlet_local(&phi)).abs() <= 1e-10 * dirichlet_local(&phi).max(1e-12));
        let w1 = w_beta1_seminorm_grid(&phi, 0.4).unwrap();
        let w2 = w_beta1_seminorm_grid(&scaled, 0.4).unwrap();
        prop_assert!((w2 - a.abs() * w1).abs() <= 1e-10 * w1.max(1e-12));
    }
}
