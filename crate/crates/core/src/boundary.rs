//! Boundary strips and the competitor obtained by splicing exterior data onto
//! a mollified fractional solution.

use crate::energies::objective_local;
use crate::error::{Error, Result};
use crate::grid::{Domain, GridFunction, Region};
use crate::kernels::FracParams;
use crate::mollifier::mollify;

/// Constant of the strip `L²` estimate on intervals: the pointwise bound
/// squared, `(a+b)² ≤ 2(a²+b²)`, `(x+y)² ≤ 2(x²+y²)` and `|∂_rΩ| ≤ 2r`.
pub const STRIP_L2_CONSTANT: f64 = 32.0;

/// Inner strip width `r` and outer strip width `ρ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StripSpec {
    r: f64,
    rho: f64,
}

impl StripSpec {
    pub fn new(dom: &Domain, r: f64, rho: f64) -> Result<Self> {
        if !(r > 0.0 && r < dom.omega_len() / 2.0) {
            return Err(Error::Parameter(format!(
                "strip width must lie in (0, {}), got {r}",
                dom.omega_len() / 2.0
            )));
        }
        if !(rho > 0.0 && rho <= 1.0) {
            return Err(Error::Parameter(format!(
                "outer width must lie in (0, 1], got {rho}"
            )));
        }
        Ok(Self { r, rho })
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }
}

/// `dist(x, Ω^c)`; zero outside Ω.
pub fn dist_to_complement(dom: &Domain, x: f64) -> f64 {
    (x - dom.omega_lo()).min(dom.omega_hi() - x).max(0.0)
}

/// `|{x ∈ Ω : dist(x, Ω^c) ≤ r}|`.
pub fn strip_measure(dom: &Domain, r: f64) -> f64 {
    (2.0 * r.max(0.0)).min(dom.omega_len())
}

fn check_r(r: f64) -> Result<()> {
    if !(r > 0.0) {
        return Err(Error::Parameter(format!(
            "strip width must be positive, got {r}"
        )));
    }
    Ok(())
}

/// `w = g` off Ω, a linear blend of `g` and `I[u_s]` on the strip of width
/// `r`, and `I[u_s]` deeper inside.
pub fn build_w(
    u_s: &GridFunction,
    g: &GridFunction,
    p: &FracParams,
    r: f64,
) -> Result<GridFunction> {
    u_s.same_grid(g)?;
    check_r(r)?;
    let smooth = mollify(u_s, p)?;
    splice(&smooth, g, r)
}

fn splice(smooth: &GridFunction, g: &GridFunction, r: f64) -> Result<GridFunction> {
    let dom = *g.domain();
    let values = (0..g.n())
        .map(|i| {
            let x = g.node(i);
            let gi = g.values()[i];
            if !dom.in_omega(x) {
                return gi;
            }
            let t = dist_to_complement(&dom, x) / r;
            if t >= 1.0 {
                smooth.values()[i]
            } else {
                (1.0 - t) * gi + t * smooth.values()[i]
            }
        })
        .collect();
    g.with_values(values)
}

/// `max |I[u_s] - w|` over strip nodes against
/// `2([u_s] + [g])(r^s + (1-s)/(1-ε^{2-2s}))`.
pub fn check_strip_closeness(
    u_s: &GridFunction,
    g: &GridFunction,
    p: &FracParams,
    r: f64,
    hold_us: f64,
    hold_g: f64,
) -> Result<(f64, f64)> {
    u_s.same_grid(g)?;
    check_r(r)?;
    let smooth = mollify(u_s, p)?;
    let w = splice(&smooth, g, r)?;
    let dom = *g.domain();
    let lhs = (0..g.n())
        .filter(|&i| {
            let x = g.node(i);
            dom.in_omega(x) && dist_to_complement(&dom, x) <= r
        })
        .map(|i| (smooth.values()[i] - w.values()[i]).abs())
        .fold(0.0, f64::max);
    let s = p.s();
    let rhs = 2.0 * (hold_us + hold_g) * (r.powf(s) + (1.0 - s) / p.eps_gap());
    Ok((lhs, rhs))
}

/// `‖I[u_s] - w‖²_{L²(Ω)}` against
/// `C_Ω([u_s]² + [g]²)(r^{1+2s} + ((1-s)/(1-ε^{2-2s}))² r)` with `C_Ω = 32`.
pub fn check_strip_l2(
    u_s: &GridFunction,
    g: &GridFunction,
    p: &FracParams,
    r: f64,
    hold_us: f64,
    hold_g: f64,
) -> Result<(f64, f64)> {
    u_s.same_grid(g)?;
    check_r(r)?;
    let smooth = mollify(u_s, p)?;
    let w = splice(&smooth, g, r)?;
    let lhs = smooth.sub(&w)?.l2_norm(Region::Omega).powi(2);
    let s = p.s();
    let t = (1.0 - s) / p.eps_gap();
    let rhs = STRIP_L2_CONSTANT
        * (hold_us * hold_us + hold_g * hold_g)
        * (r.powf(1.0 + 2.0 * s) + t * t * r);
    Ok((lhs, rhs))
}

/// `|J(w) - J(I[u_s])|` for the local objective with load `f`.
pub fn energy_gap(
    u_s: &GridFunction,
    g: &GridFunction,
    f: &GridFunction,
    p: &FracParams,
    r: f64,
) -> Result<f64> {
    u_s.same_grid(g)?;
    u_s.same_grid(f)?;
    check_r(r)?;
    let smooth = mollify(u_s, p)?;
    let w = splice(&smooth, g, r)?;
    Ok((objective_local(&w, f)? - objective_local(&smooth, f)?).abs())
}
