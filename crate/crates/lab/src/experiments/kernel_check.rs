use fraclap_core::kernels::{
    classical_const, const_ratio, eta_second_moment_quadrature, norm_const, psi_bound_check,
    psi_moment, psi_moment_quadrature,
};
use fraclap_core::FracParams;

use super::Experiment;
use crate::config::{ExperimentConfig, ExperimentKind};
use crate::error::{at_s, Result};
use crate::fit::fit_rate;
use crate::report::{CheckReport, CheckRow, Report};

pub const MOMENT_TOL: f64 = 1e-8;
pub const MASS_TOL: f64 = 1e-10;
pub const SECOND_MOMENT_TOL: f64 = 1e-8;
pub const RATIO_TOL: f64 = 1e-10;
/// Values of `s` for the normalization ratio rows.
pub const RATIO_S: [f64; 3] = [0.9, 0.99, 0.999];

pub struct KernelCheck;

impl Experiment for KernelCheck {
    fn kind(&self) -> ExperimentKind {
        ExperimentKind::KernelCheck
    }

    fn run(&self, cfg: &ExperimentConfig) -> Result<Box<dyn Report>> {
        Ok(Box::new(run_kernel_check(cfg)?))
    }
}

/// Moment, mass, second-moment, pointwise-bound and normalization-ratio
/// identities over `d ∈ {1,2,3}`, `s ∈ s_list`, `ε ∈ eps_list`.
pub fn run_kernel_check(cfg: &ExperimentConfig) -> Result<CheckReport> {
    let mut moment = (0.0f64, 0usize);
    let mut mass = (0.0f64, 0usize);
    let mut second = (0.0f64, 0usize);
    let mut bound = (0.0f64, 0usize);
    for d in 1..=3 {
        for &s in &cfg.s_list {
            let p0 = FracParams::new(s, 0.0, d).map_err(at_s(s))?;
            let q = eta_second_moment_quadrature(&p0).map_err(at_s(s))?;
            second = (second.0.max((q - 0.5).abs()), second.1 + 1);
            for &eps in &cfg.eps_list {
                let p = FracParams::new(s, eps, d).map_err(at_s(s))?;
                for alpha in [0.0, 1.0, 2.0, s] {
                    let closed = psi_moment(&p, alpha).map_err(at_s(s))?;
                    let quad = psi_moment_quadrature(&p, alpha).map_err(at_s(s))?;
                    moment = (
                        moment.0.max((closed - quad).abs() / quad.abs()),
                        moment.1 + 1,
                    );
                }
                let m0 = psi_moment(&p, 0.0).map_err(at_s(s))?;
                mass = (mass.0.max((m0 - 1.0).abs()), mass.1 + 1);
                for k in 1..50 {
                    let t = k as f64 / 50.0;
                    let (lhs, rhs) = psi_bound_check(&p, t).map_err(at_s(s))?;
                    bound = (bound.0.max(lhs / rhs), bound.1 + 1);
                }
            }
        }
    }

    let mut routes = 0.0f64;
    for d in 1..=3 {
        for &s in &RATIO_S {
            let p = FracParams::new(s, 0.0, d).map_err(at_s(s))?;
            let direct = norm_const(&p) / classical_const(&p);
            routes = routes.max((const_ratio(&p) - direct).abs() / direct);
        }
    }
    let gaps: Vec<f64> = RATIO_S
        .iter()
        .map(|&s| FracParams::line(s).map(|p| (1.0 - 1.0 / const_ratio(&p)).abs()))
        .collect::<std::result::Result<_, _>>()?;
    let slope = fit_rate(&RATIO_S, &gaps, 0.0).map_or(f64::NAN, |f| f.slope);
    let decreasing = if gaps.windows(2).all(|w| w[1] < w[0]) {
        1.0
    } else {
        0.0
    };

    Ok(CheckReport {
        experiment: "kernel_check",
        rows: vec![
            CheckRow::upper("psi_moment_vs_quadrature", moment.0, MOMENT_TOL, moment.1),
            CheckRow::upper("psi_unit_mass", mass.0, MASS_TOL, mass.1),
            CheckRow::upper(
                "eta_second_moment_half",
                second.0,
                SECOND_MOMENT_TOL,
                second.1,
            ),
            CheckRow::upper("psi_pointwise_bound", bound.0, 1.0, bound.1),
            CheckRow::upper("ratio_routes_agree", routes, RATIO_TOL, 3 * RATIO_S.len()),
            CheckRow::lower("ratio_gap_decreasing", decreasing, 1.0, RATIO_S.len()),
            CheckRow::lower("ratio_gap_slope", slope, 1.0, RATIO_S.len()),
        ],
    })
}
