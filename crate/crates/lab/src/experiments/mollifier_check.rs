use fraclap_core::grid::sample;
use fraclap_core::mollifier::{
    check_energy_consistency, check_identity_l2, check_lipschitz, check_tail_bound,
    check_uniform_closeness,
};
use fraclap_core::profile::{Bump, Profile};
use fraclap_core::{Domain, GridFunction};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{params, Experiment};
use crate::config::{ExperimentConfig, ExperimentKind};
use crate::error::{at_s, Result};
use crate::report::{CheckReport, CheckRow, Report};

/// Relative slack on each inequality.
pub const SLACK_REL: f64 = 1e-4;
/// Absolute slack on each inequality.
pub const SLACK_ABS: f64 = 1e-10;

pub const CHECKS: [&str; 6] = [
    "identity_l2",
    "uniform_closeness",
    "energy_consistency",
    "energy_consistency_eps0",
    "lipschitz",
    "tail_bound",
];

pub struct MollifierCheck;

impl Experiment for MollifierCheck {
    fn kind(&self) -> ExperimentKind {
        ExperimentKind::MollifierCheck
    }

    fn run(&self, cfg: &ExperimentConfig) -> Result<Box<dyn Report>> {
        Ok(Box::new(run_mollifier_check(cfg)?))
    }
}

/// Sum of one to three bumps with supports inside Ω.
pub fn random_bump_function(rng: &mut ChaCha8Rng, dom: Domain, n: usize) -> Result<GridFunction> {
    let (lo, hi) = (dom.omega_lo(), dom.omega_hi());
    let len = hi - lo;
    let count = rng.gen_range(1..=3);
    let bumps: Vec<Bump> = (0..count)
        .map(|_| {
            let radius = rng.gen_range(0.075..0.225) * len;
            Bump {
                center: rng.gen_range(lo + radius..hi - radius),
                radius,
                height: rng.gen_range(-1.0..1.0),
            }
        })
        .collect();
    Ok(sample(dom, n, |x| bumps.iter().map(|b| b.value(x)).sum())?)
}

/// `lhs / (rhs (1 + rel) + abs)`; at most one when the inequality holds
/// with slack.
fn ratio(lhs: f64, rhs: f64) -> f64 {
    lhs / (rhs * (1.0 + SLACK_REL) + SLACK_ABS)
}

/// Seeded suite over random bumps and the `(s, ε)` grid. Each row reports
/// the worst slack-adjusted ratio of its inequality.
pub fn run_mollifier_check(cfg: &ExperimentConfig) -> Result<CheckReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let funcs: Vec<GridFunction> = (0..cfg.bumps)
        .map(|_| random_bump_function(&mut rng, cfg.domain, cfg.n))
        .collect::<Result<_>>()?;
    let mut grid = Vec::new();
    for &s in &cfg.s_list {
        for &eps in &cfg.eps_list {
            grid.push((s, eps));
        }
    }
    let per_case = grid
        .par_iter()
        .map(|&(s, eps)| -> Result<[(f64, usize); 6]> {
            let p = params(s, eps)?;
            let p0 = params(s, 0.0)?;
            let rho = 0.5 * (1.0 + eps);
            let mut worst = [(0.0f64, 0usize); 6];
            let mut note = |k: usize, (lhs, rhs): (f64, f64)| {
                worst[k] = (worst[k].0.max(ratio(lhs, rhs)), worst[k].1 + 1);
            };
            for phi in &funcs {
                note(0, check_identity_l2(phi, &p).map_err(at_s(s))?);
                note(1, check_uniform_closeness(phi, &p, None).map_err(at_s(s))?);
                note(2, check_energy_consistency(phi, &p).map_err(at_s(s))?);
                if eps == 0.0 {
                    note(3, check_energy_consistency(phi, &p0).map_err(at_s(s))?);
                }
                note(4, check_lipschitz(phi, &p, None).map_err(at_s(s))?);
                for alpha in [s, 1.0] {
                    note(
                        5,
                        check_tail_bound(phi, &p, rho, alpha, None).map_err(at_s(s))?,
                    );
                }
            }
            Ok(worst)
        })
        .collect::<Result<Vec<_>>>()?;
    let rows = CHECKS
        .iter()
        .enumerate()
        .map(|(k, name)| {
            let (value, cases) = per_case
                .iter()
                .fold((0.0f64, 0usize), |(v, c), w| (v.max(w[k].0), c + w[k].1));
            CheckRow::upper(name, value, 1.0, cases)
        })
        .collect();
    Ok(CheckReport {
        experiment: "mollifier_check",
        rows,
    })
}
