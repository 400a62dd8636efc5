//! The fractional kernel, its normalization, and the smoothing kernel built from it.
//!
//! Everything here is valid in any dimension `d ≥ 1`.

use crate::error::{Error, Result};
use crate::quadrature::{graded_integral, QuadratureRule};
use crate::special::{ln_gamma, one_minus_pow, pow_m1_div};
use std::f64::consts::PI;

/// Below this distance from the critical exponent `d + 2s = 2` the
/// logarithmic antiderivative is used.
const LOG_BRANCH: f64 = 1e-9;

/// The triple `(s, ε, d)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FracParams {
    s: f64,
    eps: f64,
    d: usize,
}

impl FracParams {
    pub fn new(s: f64, eps: f64, d: usize) -> Result<Self> {
        if !(s > 0.0 && s < 1.0) {
            return Err(Error::Config(format!("s must lie in (0, 1), got {s}")));
        }
        if !(0.0..1.0).contains(&eps) {
            return Err(Error::Config(format!("eps must lie in [0, 1), got {eps}")));
        }
        if d == 0 {
            return Err(Error::Config("dimension must be at least 1".into()));
        }
        Ok(Self { s, eps, d })
    }

    /// One-dimensional parameters with `ε = 0`.
    pub fn line(s: f64) -> Result<Self> {
        Self::new(s, 0.0, 1)
    }

    pub fn with_eps(self, eps: f64) -> Result<Self> {
        Self::new(self.s, eps, self.d)
    }

    pub fn s(&self) -> f64 {
        self.s
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// `1 - ε^{2-2s}`.
    pub fn eps_gap(&self) -> f64 {
        one_minus_pow(self.eps, 2.0 - 2.0 * self.s)
    }

    /// `M(s, ε) = 2 / (1 - ε^{2-2s})`.
    pub fn m_factor(&self) -> f64 {
        2.0 / self.eps_gap()
    }

    /// Exponent `2 - d - 2s` of `t ↦ t·η_s(t) · t^{d-1}`'s antiderivative.
    pub(crate) fn psi_exponent(&self) -> f64 {
        let e = 2.0 - self.d as f64 - 2.0 * self.s;
        if e.abs() < LOG_BRANCH {
            0.0
        } else {
            e
        }
    }
}

/// Surface measure of the unit sphere in `ℝ^d`; `ω_1 = 2`.
pub fn sphere_measure(d: usize) -> Result<f64> {
    if d == 0 {
        return Err(Error::Config("dimension must be at least 1".into()));
    }
    // ω_{d+2} = 2π ω_d / d
    let mut omega = if d % 2 == 1 { 2.0 } else { 2.0 * PI };
    let mut k = 2 - d % 2;
    while k < d {
        omega *= 2.0 * PI / k as f64;
        k += 2;
    }
    Ok(omega)
}

/// `C_{s,d} = (d / ω_d)(1 - s)`.
pub fn norm_const(p: &FracParams) -> f64 {
    let omega = sphere_measure(p.d).expect("validated dimension");
    p.d as f64 / omega * (1.0 - p.s)
}

/// Constant of the Fourier-normalized fractional Laplacian.
pub fn classical_const(p: &FracParams) -> f64 {
    let s = p.s;
    let half = p.d as f64 / 2.0;
    let ln = (s - 1.0) * 4f64.ln() + ln_gamma(s + half) - half * PI.ln() - ln_gamma(2.0 - s);
    ln.exp() * s * (1.0 - s)
}

/// `C_{s,d} / C̃_{s,d} = Γ(1+d/2) Γ(2-s) / (4^{s-1} Γ(s+d/2) s)` from the Gamma quotient.
pub fn const_ratio(p: &FracParams) -> f64 {
    let s = p.s;
    let half = p.d as f64 / 2.0;
    let ln = ln_gamma(1.0 + half) - ln_gamma(s + half) + ln_gamma(2.0 - s) - (s - 1.0) * 4f64.ln();
    ln.exp() / s
}

/// `η_s(t) = C_{s,d} t^{-d-2s}`.
pub fn eta(p: &FracParams, t: f64) -> Result<f64> {
    if !(t > 0.0) {
        return Err(Error::Domain(format!("eta needs t > 0, got {t}")));
    }
    Ok(norm_const(p) * t.powf(-(p.d as f64) - 2.0 * p.s))
}

/// Smoothing kernel `ψ_s^ε`.
pub fn psi(p: &FracParams, t: f64) -> Result<f64> {
    if !(t >= 0.0) {
        return Err(Error::Domain(format!("psi needs t >= 0, got {t}")));
    }
    if t >= 1.0 {
        return Ok(0.0);
    }
    let a = t.max(p.eps);
    let e = p.psi_exponent();
    let scale = p.m_factor() * norm_const(p);
    if a == 0.0 {
        return Ok(if e > 0.0 { scale / e } else { f64::INFINITY });
    }
    Ok(scale * -pow_m1_div(e, a.ln()))
}

/// `∫_{ℝ^d} ψ_s^ε(|z|) |z|^α dz` in closed form.
pub fn psi_moment(p: &FracParams, alpha: f64) -> Result<f64> {
    if !(alpha >= 0.0) {
        return Err(Error::Domain(format!(
            "moment order must be >= 0, got {alpha}"
        )));
    }
    let d = p.d as f64;
    let s = p.s;
    let radial = d / (d + alpha) * (1.0 - s) / ((1.0 - s) + alpha / 2.0);
    let cut = one_minus_pow(p.eps, 2.0 - 2.0 * s + alpha) / p.eps_gap();
    Ok(radial * cut)
}

/// Both sides of the pointwise upper bound on `ψ` by `t² η` (`d ≥ 2`)
/// or `t^{1+s} η` (`d = 1`).
pub fn psi_bound_check(p: &FracParams, t: f64) -> Result<(f64, f64)> {
    if !(t > 0.0 && t < 1.0) {
        return Err(Error::Domain(format!(
            "bound check needs t in (0, 1), got {t}"
        )));
    }
    let lhs = psi(p, t)?;
    let eta_t = eta(p, t)?;
    let rhs = if p.d == 1 {
        2.0 / p.eps_gap() * t.powf(1.0 + p.s) * eta_t
    } else {
        let d = p.d as f64;
        1.0 / p.eps_gap() * 2.0 / (d + 2.0 * p.s - 2.0) * t * t * eta_t
    };
    Ok((lhs, rhs))
}

/// `dψ/dt`; zero on the plateau and beyond the support.
pub fn psi_derivative(p: &FracParams, t: f64) -> Result<f64> {
    if !(t >= 0.0) {
        return Err(Error::Domain(format!(
            "psi derivative needs t >= 0, got {t}"
        )));
    }
    if t == p.eps || t == 1.0 {
        return Err(Error::Domain(format!(
            "psi is not differentiable at t = {t}"
        )));
    }
    if t < p.eps || t > 1.0 {
        return Ok(0.0);
    }
    Ok(-p.m_factor() * eta(p, t)? * t)
}

/// `ω_d ∫_0^1 ψ(t) t^{d-1+α} dt` by graded Gauss quadrature, as an
/// independent check of [`psi_moment`].
pub fn psi_moment_quadrature(p: &FracParams, alpha: f64) -> Result<f64> {
    if !(alpha >= 0.0) {
        return Err(Error::Domain(format!(
            "moment order must be >= 0, got {alpha}"
        )));
    }
    let omega = sphere_measure(p.d)?;
    let power = p.d as f64 - 1.0 + alpha;
    let f = |t: f64| psi(p, t).unwrap_or(0.0) * t.powf(power);
    let radial = if p.eps > 0.0 {
        let plateau = graded_integral(f, p.eps, power)?;
        let rule = QuadratureRule::gauss_legendre(30)?;
        let panels = 16;
        let breaks: Vec<f64> = (0..=panels)
            .map(|k| p.eps + (1.0 - p.eps) * k as f64 / panels as f64)
            .collect();
        plateau + rule.integrate_composite(f, &breaks)
    } else {
        let leading = p.psi_exponent().min(0.0) + power;
        graded_integral(f, 1.0, leading)?
    };
    Ok(omega * radial)
}

/// `∫_{B_1} η_s(|z|) z_1² dz = (ω_d/d) ∫_0^1 η_s(t) t^{d+1} dt` by graded quadrature.
pub fn eta_second_moment_quadrature(p: &FracParams) -> Result<f64> {
    let omega = sphere_measure(p.d)?;
    let d = p.d as f64;
    let f = |t: f64| eta(p, t).unwrap_or(0.0) * t.powf(d + 1.0);
    Ok(omega / d * graded_integral(f, 1.0, 1.0 - 2.0 * p.s)?)
}
