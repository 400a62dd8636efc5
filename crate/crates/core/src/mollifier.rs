//! The smoothing operator `I_s^ε[φ](x) = ∫ ψ_s^ε(|x-y|) φ(y) dy` on grid
//! functions, its gradient, and executable forms of its approximation,
//! energy, Lipschitz and tail estimates.
//!
//! Both the operator and its gradient are evaluated exactly at the nodes for
//! the piecewise-linear interpolant: the convolution weights of each hat are
//! integrated in closed form from the antiderivatives of `ψ t^p`.

use crate::energies::{dirichlet_frac, dirichlet_local, holder_seminorm_grid};
use crate::error::{Error, Result};
use crate::grid::{GridFunction, Region};
use crate::kernels::{norm_const, psi, FracParams};
use crate::special::pow_m1_div;

/// Values at the nodes plus a flag per node telling whether its unit ball
/// stays inside the box.
#[derive(Debug, Clone, PartialEq)]
pub struct Mollified {
    pub values: GridFunction,
    pub covered: Vec<bool>,
}

/// `∫_a^b ψ(t) t^pow dt` for `0 ≤ a ≤ b`, `pow ∈ {0, 1}`.
fn psi_moment_range(p: &FracParams, a: f64, b: f64, pow: i32) -> f64 {
    let b = b.min(1.0);
    if b <= a {
        return 0.0;
    }
    let q = pow as f64 + 1.0;
    let eps = p.eps();
    let mut acc = 0.0;
    if a < eps {
        let top = b.min(eps);
        let level = psi(p, eps).unwrap_or(0.0);
        acc += level * (top.powf(q) - a.powf(q)) / q;
    }
    let lo = a.max(eps);
    if b > lo {
        let e = p.psi_exponent();
        let scale = p.m_factor() * norm_const(p);
        let anti = |t: f64| {
            if t == 0.0 {
                0.0
            } else {
                t.powf(q) * (1.0 - q * pow_m1_div(e, t.ln())) / (q * (q + e))
            }
        };
        acc += scale * (anti(b) - anti(lo));
    }
    acc
}

/// `∫_a^b ψ(|z|) (c0 + c1 z) dz`.
fn psi_linear_integral(p: &FracParams, a: f64, b: f64, c0: f64, c1: f64) -> f64 {
    let mut acc = 0.0;
    if a < 0.0 {
        // z = -t on the negative part
        let (ta, tb) = (-(b.min(0.0)), -a);
        acc += c0 * psi_moment_range(p, ta, tb, 0) - c1 * psi_moment_range(p, ta, tb, 1);
    }
    if b > 0.0 {
        let (ta, tb) = (a.max(0.0), b);
        acc += c0 * psi_moment_range(p, ta, tb, 0) + c1 * psi_moment_range(p, ta, tb, 1);
    }
    acc
}

fn reach(h: f64) -> usize {
    (1.0 / h + 1.0 - 1e-12).floor() as usize
}

/// `w_k = ∫ ψ(|z|) Λ(z/h - k) dz` for `k = 0..=K`; `w_{-k} = w_k`.
pub fn mollifier_weights(p: &FracParams, h: f64) -> Vec<f64> {
    (0..=reach(h))
        .map(|k| {
            let kf = k as f64;
            let left = psi_linear_integral(p, (kf - 1.0) * h, kf * h, -(kf - 1.0), 1.0 / h);
            let right = psi_linear_integral(p, kf * h, (kf + 1.0) * h, kf + 1.0, -1.0 / h);
            left + right
        })
        .collect()
}

/// `∫_a^b z^q (c0 + c1 z) dz` for `0 ≤ a < b`, skipping a zero `c0` term.
fn power_linear_integral(q: f64, a: f64, b: f64, c0: f64, c1: f64) -> f64 {
    let mono = |r: f64| {
        if a > 0.0 {
            a.powf(r + 1.0) * pow_m1_div(r + 1.0, (b / a).ln())
        } else {
            b.powf(r + 1.0) / (r + 1.0)
        }
    };
    let head = if c0 == 0.0 { 0.0 } else { c0 * mono(q) };
    head + c1 * mono(q + 1.0)
}

/// Gradient weights `v_k = M C ∫_{inner<z<outer} z^{-2s} Λ(z/h - k) dz` for
/// `k = 0..=K`, with `v_0 = 0` and `v_{-k} = -v_k`.
pub fn gradient_weights(p: &FracParams, h: f64, inner: f64, outer: f64) -> Vec<f64> {
    let scale = p.m_factor() * norm_const(p);
    let q = -2.0 * p.s();
    let piece = |a: f64, b: f64, c0: f64, c1: f64| {
        let (a, b) = (a.max(inner), b.min(outer));
        if b > a {
            power_linear_integral(q, a, b, c0, c1)
        } else {
            0.0
        }
    };
    (0..=reach(h))
        .map(|k| {
            if k == 0 {
                return 0.0;
            }
            let kf = k as f64;
            let left = piece((kf - 1.0) * h, kf * h, -(kf - 1.0), 1.0 / h);
            let right = piece(kf * h, (kf + 1.0) * h, kf + 1.0, -1.0 / h);
            scale * (left + right)
        })
        .collect()
}

fn check_line(p: &FracParams) -> Result<()> {
    if p.d() != 1 {
        return Err(Error::Config(
            "mollification on grids is one-dimensional".into(),
        ));
    }
    Ok(())
}

fn coverage(n: usize, k: usize) -> Vec<bool> {
    (0..n).map(|i| i >= k && i + k < n).collect()
}

/// `I_s^ε[φ]` at the nodes, with coverage flags.
pub fn mollify_covered(phi: &GridFunction, p: &FracParams) -> Result<Mollified> {
    check_line(p)?;
    let w = mollifier_weights(p, phi.h());
    let v = phi.values();
    let n = v.len() as isize;
    let at = |j: isize| v[j.clamp(0, n - 1) as usize];
    let values: Vec<f64> = (0..n)
        .map(|i| {
            let mut acc = w[0] * v[i as usize];
            for (k, wk) in w.iter().enumerate().skip(1) {
                let k = k as isize;
                acc += wk * (at(i + k) + at(i - k));
            }
            acc
        })
        .collect();
    Ok(Mollified {
        values: phi.with_values(values)?,
        covered: coverage(v.len(), w.len() - 1),
    })
}

pub fn mollify(phi: &GridFunction, p: &FracParams) -> Result<GridFunction> {
    Ok(mollify_covered(phi, p)?.values)
}

fn apply_gradient(phi: &GridFunction, weights: &[f64]) -> Result<Mollified> {
    let v = phi.values();
    let n = v.len() as isize;
    let at = |j: isize| v[j.clamp(0, n - 1) as usize];
    let values: Vec<f64> = (0..n)
        .map(|i| {
            weights
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, vk)| vk * (at(i + k as isize) - at(i - k as isize)))
                .sum()
        })
        .collect();
    Ok(Mollified {
        values: phi.with_values(values)?,
        covered: coverage(v.len(), weights.len() - 1),
    })
}

/// `∇I_s^ε[φ]` at the nodes; for `ε = 0` a principal value.
pub fn mollify_gradient_covered(phi: &GridFunction, p: &FracParams) -> Result<Mollified> {
    check_line(p)?;
    apply_gradient(phi, &gradient_weights(p, phi.h(), p.eps(), 1.0))
}

pub fn mollify_gradient(phi: &GridFunction, p: &FracParams) -> Result<GridFunction> {
    Ok(mollify_gradient_covered(phi, p)?.values)
}

fn holder_or_grid(phi: &GridFunction, beta: f64, known: Option<f64>) -> Result<f64> {
    match known {
        Some(v) => Ok(v),
        None => holder_seminorm_grid(phi, beta),
    }
}

/// `‖I[φ] - φ‖²_{L²}` against `M² (1-s) D_s¹(φ)`.
pub fn check_identity_l2(phi: &GridFunction, p: &FracParams) -> Result<(f64, f64)> {
    let diff = mollify(phi, p)?.sub(phi)?;
    let lhs = diff.l2_norm(Region::Box).powi(2);
    let d1 = dirichlet_frac(phi, p)?.d1;
    Ok((lhs, p.m_factor().powi(2) * (1.0 - p.s()) * d1))
}

/// `max |I[φ] - φ|` over covered nodes against `2 [φ]_{C^{0,s}} (1-s) / (1-ε^{2-2s})`.
pub fn check_uniform_closeness(
    phi: &GridFunction,
    p: &FracParams,
    holder: Option<f64>,
) -> Result<(f64, f64)> {
    let m = mollify_covered(phi, p)?;
    let lhs = covered_max(&m, |i| (m.values.values()[i] - phi.values()[i]).abs());
    let semi = holder_or_grid(phi, p.s(), holder)?;
    Ok((lhs, 2.0 * semi * (1.0 - p.s()) / p.eps_gap()))
}

/// `D(I[φ])` against `D_s¹(φ) / (1-ε^{2-2s})²`.
pub fn check_energy_consistency(phi: &GridFunction, p: &FracParams) -> Result<(f64, f64)> {
    let lhs = dirichlet_local(&mollify(phi, p)?);
    let d1 = dirichlet_frac(phi, p)?.d1;
    Ok((lhs, d1 / p.eps_gap().powi(2)))
}

/// `max |∇I[φ]|` against `2 [φ]_{C^{0,s}} / (1-ε^{2-2s})`.
pub fn check_lipschitz(
    phi: &GridFunction,
    p: &FracParams,
    holder: Option<f64>,
) -> Result<(f64, f64)> {
    let g = mollify_gradient_covered(phi, p)?;
    let lhs = covered_max(&g, |i| g.values.values()[i].abs());
    let semi = holder_or_grid(phi, p.s(), holder)?;
    Ok((lhs, 2.0 * semi / p.eps_gap()))
}

/// Gradient contribution of the annulus `ρ < |x-y| < 1` against
/// `2 [φ]_{C^{0,α}} (1-s) (1-ρ^{α+1-2s}) / ((α+1-2s)(1-ε^{2-2s}))`.
pub fn check_tail_bound(
    phi: &GridFunction,
    p: &FracParams,
    rho: f64,
    alpha: f64,
    holder: Option<f64>,
) -> Result<(f64, f64)> {
    check_line(p)?;
    if !(rho > p.eps() && rho <= 1.0) {
        return Err(Error::Parameter(format!(
            "tail radius must satisfy eps < rho <= 1, got rho = {rho}, eps = {}",
            p.eps()
        )));
    }
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(Error::Parameter(format!(
            "Hölder exponent must lie in (0, 1], got {alpha}"
        )));
    }
    let g = apply_gradient(phi, &gradient_weights(p, phi.h(), rho, 1.0))?;
    let lhs = covered_max(&g, |i| g.values.values()[i].abs());
    let semi = holder_or_grid(phi, alpha, holder)?;
    Ok((lhs, tail_rhs(p, rho, alpha, semi)))
}

/// Right-hand side of the tail estimate; `(1-ρ^x)/x` is continued to `-ln ρ` at `x = 0`.
pub fn tail_rhs(p: &FracParams, rho: f64, alpha: f64, holder: f64) -> f64 {
    let x = alpha + 1.0 - 2.0 * p.s();
    let ratio = -pow_m1_div(x, rho.ln());
    2.0 * holder * (1.0 - p.s()) * ratio / p.eps_gap()
}

fn covered_max<F: Fn(usize) -> f64>(m: &Mollified, f: F) -> f64 {
    m.covered
        .iter()
        .enumerate()
        .filter(|(_, c)| **c)
        .map(|(i, _)| f(i))
        .fold(0.0, f64::max)
}
