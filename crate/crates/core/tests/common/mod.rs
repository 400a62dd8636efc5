#![allow(dead_code)]

use fraclap_core::grid::sample;
use fraclap_core::profile::{Bump, Profile};
use fraclap_core::{Domain, GridFunction};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Sum of one to three bumps supported inside Ω = (-1, 1).
pub fn random_bumps(rng: &mut ChaCha8Rng) -> Vec<Bump> {
    let count = rng.gen_range(1..=3);
    (0..count)
        .map(|_| {
            let radius = rng.gen_range(0.15..0.45);
            let center = rng.gen_range(-1.0 + radius..1.0 - radius);
            Bump {
                center,
                radius,
                height: rng.gen_range(-1.0..1.0),
            }
        })
        .collect()
}

pub fn sample_bumps(dom: Domain, n: usize, bumps: &[Bump]) -> GridFunction {
    sample(dom, n, |x| bumps.iter().map(|b| b.value(x)).sum()).unwrap()
}

pub fn random_bump_grid(rng: &mut ChaCha8Rng, n: usize) -> GridFunction {
    let bumps = random_bumps(rng);
    sample_bumps(Domain::unit(), n, &bumps)
}

/// Random values at the nodes strictly inside Ω, zero elsewhere.
pub fn random_interior(rng: &mut ChaCha8Rng, like: &GridFunction) -> GridFunction {
    let dom = *like.domain();
    let values = like
        .nodes()
        .iter()
        .map(|x| {
            if dom.in_omega(*x) {
                rng.gen_range(-1.0..1.0)
            } else {
                0.0
            }
        })
        .collect();
    like.with_values(values).unwrap()
}

/// Composite Simpson rule with `m` (even) panels.
pub fn simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, m: usize) -> f64 {
    let h = (b - a) / m as f64;
    let mut acc = f(a) + f(b);
    for i in 1..m {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        acc += w * f(a + i as f64 * h);
    }
    acc * h / 3.0
}

pub fn rel_err(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1e-300)
}
