use fraclap_core::solver::frac_laplacian_pointwise;
use rayon::prelude::*;

use super::{params, timed, Experiment};
use crate::config::{ExperimentConfig, ExperimentKind};
use crate::error::{at_s, Result};
use crate::profiles::{ProfileCatalog, ProfileSpec};
use crate::report::{ConsistencyReport, ConsistencyRow, Report};

pub struct Consistency;

impl Experiment for Consistency {
    fn kind(&self) -> ExperimentKind {
        ExperimentKind::Consistency
    }

    fn run(&self, cfg: &ExperimentConfig) -> Result<Box<dyn Report>> {
        Ok(Box::new(run_consistency(cfg)?))
    }
}

/// `max |L_s g(x) + g''(x)|` over equispaced points of the closed Ω.
pub fn run_consistency(cfg: &ExperimentConfig) -> Result<ConsistencyReport> {
    let spec = cfg.g_spec.clone().unwrap_or_else(|| {
        ProfileSpec::new(
            "gaussian",
            &[("center", 0.0), ("width", 1.0), ("height", 1.0)],
        )
    });
    let g = ProfileCatalog::builtin().build(&spec)?;
    let (lo, hi) = (cfg.domain.omega_lo(), cfg.domain.omega_hi());
    let xs: Vec<f64> = (0..cfg.samples)
        .map(|i| lo + (hi - lo) * i as f64 / (cfg.samples - 1) as f64)
        .collect();
    let rows = cfg
        .s_list
        .par_iter()
        .map(|&s| {
            let p = params(s, 0.0)?;
            let ((max_residual, error_bar), seconds) = timed(cfg.timing, || {
                let mut worst = 0.0f64;
                let mut bar = 0.0f64;
                for &x in &xs {
                    let r = frac_laplacian_pointwise(g.as_ref(), &p, x).map_err(at_s(s))?;
                    worst = worst.max((r.value + g.d2(x)).abs());
                    bar = bar.max(r.error_bar);
                }
                Ok((worst, bar))
            })?;
            Ok(ConsistencyRow {
                s,
                max_residual,
                error_bar,
                seconds,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ConsistencyReport::new(rows, cfg.fit_min_s))
}
