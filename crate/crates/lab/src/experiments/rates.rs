use fraclap_core::boundary::{energy_gap, StripSpec};
use fraclap_core::solver::{
    assemble_frac, load_vector, restrict, solve_local_dirichlet, solve_with,
};
use fraclap_core::{Error as CoreError, Region};
use rayon::prelude::*;

use super::{params, sample_profile, timed, Experiment};
use crate::config::{ExperimentConfig, ExperimentKind};
use crate::error::{at_s, LabError, Result};
use crate::profiles::{Perturbed, ProfileCatalog};
use crate::report::{RateReport, RateRow, Report};

/// Relative tolerance of the discrete stability identity checked per point.
const IDENTITY_TOL: f64 = 1e-8;

pub struct Rates;

impl Experiment for Rates {
    fn kind(&self) -> ExperimentKind {
        ExperimentKind::Rates
    }

    fn run(&self, cfg: &ExperimentConfig) -> Result<Box<dyn Report>> {
        Ok(Box::new(run_rates(cfg)?))
    }
}

/// Solves the local and the fractional problem on the same mesh for every
/// `s` and measures `‖u - u_s‖²_{W^{s,2}}` with the stiffness used to solve.
pub fn run_rates(cfg: &ExperimentConfig) -> Result<RateReport> {
    let g_spec = cfg.g_or_zero();
    if !g_spec.is_zero() {
        return Err(LabError::Config(
            "rates needs zero exterior data (g_spec = constant(value=0))".into(),
        ));
    }
    let catalog = ProfileCatalog::builtin();
    let f = catalog.build(&cfg.f_spec)?;
    let fs_fixed = cfg
        .f_s_spec
        .as_ref()
        .map(|s| catalog.build(s))
        .transpose()?;
    let perturb = cfg
        .f_s_perturb
        .as_ref()
        .map(|s| catalog.build(s))
        .transpose()?;
    let g = catalog.build(&g_spec)?;

    let f_grid = sample_profile(cfg, f.as_ref())?;
    let g_grid = sample_profile(cfg, g.as_ref())?;
    let u = solve_local_dirichlet(&cfg.domain, cfg.n, &f_grid)?;

    let rows = cfg
        .s_list
        .par_iter()
        .map(|&s| {
            let p = params(s, cfg.eps)?;
            let f_s_grid = match (&fs_fixed, &perturb) {
                (Some(fs), _) => sample_profile(cfg, fs.as_ref())?,
                (None, Some(extra)) => {
                    let weight = cfg.f_s_scale.eval(s);
                    let fs = Perturbed {
                        base: f.as_ref(),
                        extra: extra.as_ref(),
                        weight,
                    };
                    sample_profile(cfg, &fs)?
                }
                (None, None) => f_grid.clone(),
            };
            let ((u_s, err_seminorm_sq, identity), seconds) = timed(cfg.timing, || {
                let form = assemble_frac(&cfg.domain, cfg.n, &p).map_err(at_s(s))?;
                let u_s = solve_with(&form, &f_s_grid).map_err(at_s(s))?;
                let e = restrict(&form, &u.sub(&u_s)?);
                let semi = form.quad(&e)?;
                let b = load_vector(&form, &f_s_grid)?;
                // J_s(u) - J_s(u_s) = ½ eᵀA(u + u_s) - bᵀe by symmetry of A, which
                // avoids subtracting two O(1) objective values
                let sum = restrict(&form, &u.add(&u_s)?);
                let a_sum = form.apply(&sum)?;
                let gap = e
                    .iter()
                    .zip(&a_sum)
                    .zip(&b)
                    .map(|((e, a), b)| e * (0.5 * a - b))
                    .sum::<f64>();
                Ok((u_s, semi, (gap, 0.5 * semi)))
            })?;
            let (gap, half) = identity;
            if (gap - half).abs() > IDENTITY_TOL * half.abs().max(f64::MIN_POSITIVE) {
                return Err(LabError::AtS {
                    s,
                    source: CoreError::Numerical(format!(
                        "stability identity violated: objective gap {gap} vs half seminorm {half}"
                    )),
                });
            }
            let diff = u.sub(&u_s)?;
            let err_l2 = diff.l2_norm(Region::Box);
            let strip = StripSpec::new(&cfg.domain, cfg.r_rule.eval(s), cfg.rho_rule.eval(s))
                .map_err(at_s(s))?;
            log::debug!(
                "s = {s}: strip widths r = {}, rho = {}",
                strip.r(),
                strip.rho()
            );
            let energy_gap = energy_gap(&u_s, &g_grid, &f_grid, &p, strip.r()).map_err(at_s(s))?;
            let data_gap = l1_norm_omega(&f_grid.sub(&f_s_grid)?);
            Ok(RateRow {
                s,
                err_seminorm_sq,
                err_l2,
                err_ws2_sq: err_seminorm_sq + err_l2 * err_l2,
                energy_gap,
                data_gap,
                seconds,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(RateReport::new(rows, cfg.fit_min_s))
}

/// Trapezoidal `∫_Ω |v|` over the closed Ω nodes.
fn l1_norm_omega(v: &fraclap_core::GridFunction) -> f64 {
    let abs: Vec<f64> = v.values().iter().map(|x| x.abs()).collect();
    let range = v.region_nodes(Region::Omega);
    let h = v.h();
    abs[range.clone()]
        .windows(2)
        .map(|w| 0.5 * h * (w[0] + w[1]))
        .sum()
}
