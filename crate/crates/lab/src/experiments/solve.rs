use fraclap_core::energies::objective_frac;
use fraclap_core::grid::sample;
use fraclap_core::solver::{exact_solution_ball, lift_and_solve, solve_frac_dirichlet};
use fraclap_core::Region;
use rayon::prelude::*;

use super::{params, sample_profile, timed, Experiment};
use crate::config::{ExperimentConfig, ExperimentKind};
use crate::error::{at_s, Result};
use crate::profiles::ProfileCatalog;
use crate::report::{Report, SolveReport, SolveRow};

pub struct Solve;

impl Experiment for Solve {
    fn kind(&self) -> ExperimentKind {
        ExperimentKind::Solve
    }

    fn run(&self, cfg: &ExperimentConfig) -> Result<Box<dyn Report>> {
        Ok(Box::new(run_solve(cfg)?))
    }
}

/// Fractional solutions for every `s`; the right-hand side is `f_s_spec`
/// when given and `f_spec` otherwise.
pub fn run_solve(cfg: &ExperimentConfig) -> Result<SolveReport> {
    let catalog = ProfileCatalog::builtin();
    let f_spec = cfg.f_s_spec.as_ref().unwrap_or(&cfg.f_spec);
    let f = catalog.build(f_spec)?;
    let g_spec = cfg.g_or_zero();
    let g = catalog.build(&g_spec)?;
    let f_grid = sample_profile(cfg, f.as_ref())?;
    let dom = cfg.domain;
    let on_unit_ball = dom.omega_lo() == -1.0 && dom.omega_hi() == 1.0;
    let exact_applies = on_unit_ball && f_spec.is_unit_constant() && g_spec.is_zero();

    let mut results = cfg
        .s_list
        .par_iter()
        .map(|&s| {
            let p = params(s, cfg.eps)?;
            let (u, seconds) = timed(cfg.timing, || {
                let u = if g_spec.is_zero() {
                    solve_frac_dirichlet(&dom, cfg.n, &p, &f_grid)
                } else {
                    lift_and_solve(&dom, cfg.n, &p, &f_grid, g.as_ref())
                };
                u.map_err(at_s(s))
            })?;
            let objective = if g_spec.is_zero() {
                objective_frac(&u, &f_grid, &p).map_err(at_s(s))?
            } else {
                f64::NAN
            };
            let linf_vs_exact = if exact_applies {
                let exact = sample(dom, cfg.n, |x| exact_solution_ball(&p, x))?;
                Some(u.linf_distance(&exact, Region::Box)?)
            } else {
                None
            };
            let row = SolveRow {
                s,
                objective,
                l2_norm: u.l2_norm(Region::Box),
                linf_vs_exact,
                seconds,
            };
            Ok((row, u.into_values()))
        })
        .collect::<Result<Vec<_>>>()?;
    results.sort_by(|a, b| a.0.s.total_cmp(&b.0.s));
    let (rows, solutions) = results.into_iter().unzip();
    Ok(SolveReport {
        rows,
        nodes: f_grid.nodes(),
        solutions,
    })
}
