//! Local and nonlocal Dirichlet energies of grid functions, their objectives,
//! and grid estimators for Hölder and `Ẇ^{β,1}` seminorms.

use crate::error::{Error, Result};
use crate::grid::{GridFunction, Region};
use crate::kernels::FracParams;
use crate::quadrature::QuadratureRule;
use crate::stiffness::{far_overlap, frac_coeffs, near_coeffs, toeplitz_quad};
use rayon::prelude::*;

/// Near part, far part and load of the fractional objective.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyBreakdown {
    pub d1: f64,
    pub d2: f64,
    pub load: f64,
}

impl EnergyBreakdown {
    /// `D_s = d1 + d2`.
    pub fn total(&self) -> f64 {
        self.d1 + self.d2
    }

    /// `J_s = D_s - load`.
    pub fn objective(&self) -> f64 {
        self.total() - self.load
    }
}

/// `½ ∫ |φ'|²` of the interpolant.
pub fn dirichlet_local(phi: &GridFunction) -> f64 {
    let h = phi.h();
    0.5 * phi
        .values()
        .windows(2)
        .map(|w| (w[1] - w[0]).powi(2))
        .sum::<f64>()
        / h
}

fn check_support(phi: &GridFunction, p: &FracParams) -> Result<()> {
    if p.d() != 1 {
        return Err(Error::Config("grid energies are one-dimensional".into()));
    }
    let v = phi.values();
    if v[0] != 0.0 || v[v.len() - 1] != 0.0 {
        return Err(Error::Support(format!(
            "boundary samples must vanish, got {} and {}",
            v[0],
            v[v.len() - 1]
        )));
    }
    Ok(())
}

/// `D_s(φ) = ∫∫ η_s(|x-y|) |φ(x)-φ(y)|²` split at `|x - y| = 1`.
///
/// The near part uses the stiffness entries restricted to `|x - y| < 1`;
/// the far part is `(1-s)/s ‖φ‖²` minus the far-field overlap term.
pub fn dirichlet_frac(phi: &GridFunction, p: &FracParams) -> Result<EnergyBreakdown> {
    check_support(phi, p)?;
    let s = p.s();
    let h = phi.h();
    let v = phi.values();
    let d1 = 0.5 * toeplitz_quad(&near_coeffs(s, h, v.len()), v);
    let norm2 = phi.l2_norm(Region::Box).powi(2);
    let cross = (1.0 - s) * h.powf(1.0 - 2.0 * s) * toeplitz_quad(&far_overlap(s, h, v.len()), v);
    Ok(EnergyBreakdown {
        d1,
        d2: norm2 * (1.0 - s) / s - cross,
        load: 0.0,
    })
}

/// `½ φᵀAφ` with the full stiffness entries; equal to `dirichlet_frac(φ).total()`.
pub fn dirichlet_frac_direct(phi: &GridFunction, p: &FracParams) -> Result<f64> {
    check_support(phi, p)?;
    let v = phi.values();
    Ok(0.5 * toeplitz_quad(&frac_coeffs(p.s(), phi.h(), v.len()), v))
}

/// `[φ]_{W^{s,2}} = √(2 D_s(φ))`.
pub fn seminorm_ws2(phi: &GridFunction, p: &FracParams) -> Result<f64> {
    Ok((2.0 * dirichlet_frac_direct(phi, p)?).max(0.0).sqrt())
}

/// `‖φ‖²_{W^{s,2}} = [φ]² + ‖φ‖²_{L²}`.
pub fn norm_ws2_sq(phi: &GridFunction, p: &FracParams) -> Result<f64> {
    Ok(2.0 * dirichlet_frac_direct(phi, p)? + phi.l2_norm(Region::Box).powi(2))
}

/// `J(φ) = D(φ) - ∫_Ω f φ`.
pub fn objective_local(phi: &GridFunction, f: &GridFunction) -> Result<f64> {
    let load = f.inner(phi, Region::Omega)?;
    Ok(dirichlet_local(phi) - load)
}

/// `J_s(φ) = D_s(φ) - ∫_Ω f_s φ`.
pub fn objective_frac(phi: &GridFunction, f_s: &GridFunction, p: &FracParams) -> Result<f64> {
    Ok(energy_breakdown(phi, f_s, p)?.objective())
}

pub fn energy_breakdown(
    phi: &GridFunction,
    f_s: &GridFunction,
    p: &FracParams,
) -> Result<EnergyBreakdown> {
    let load = f_s.inner(phi, Region::Omega)?;
    let mut e = dirichlet_frac(phi, p)?;
    e.load = load;
    Ok(e)
}

/// Largest `|φ_i - φ_j| / |x_i - x_j|^β` over node pairs.
///
/// For a piecewise-linear function the supremum over all point pairs is
/// attained at nodes, so this is the seminorm of the interpolant.
pub fn holder_seminorm_grid(phi: &GridFunction, beta: f64) -> Result<f64> {
    holder_seminorm_nodes(phi, beta, 0..phi.n())
}

/// As [`holder_seminorm_grid`], restricted to pairs inside an index range.
pub fn holder_seminorm_nodes(
    phi: &GridFunction,
    beta: f64,
    range: std::ops::Range<usize>,
) -> Result<f64> {
    if !(beta > 0.0 && beta <= 1.0) {
        return Err(Error::Parameter(format!(
            "Hölder exponent must lie in (0, 1], got {beta}"
        )));
    }
    let v = phi.values();
    let h = phi.h();
    let hb: Vec<f64> = (0..range.len())
        .map(|k| (k as f64 * h).powf(beta))
        .collect();
    let end = range.end;
    Ok(range
        .into_par_iter()
        .map(|i| {
            (i + 1..end)
                .map(|j| (v[j] - v[i]).abs() / hb[j - i])
                .fold(0.0, f64::max)
        })
        .reduce(|| 0.0, f64::max))
}

/// `∫∫_{|x-y|<1} |φ(x)-φ(y)| / |x-y|^{1+β}` for the interpolant.
///
/// Writes the double integral as `2∫_0^1 z^{-1-β} m(z) dz` with
/// `m(z) = ∫ |φ(x+z) - φ(x)| dx`, which is exact for each `z`.
pub fn w_beta1_seminorm_grid(phi: &GridFunction, beta: f64) -> Result<f64> {
    if !(beta > 0.0 && beta <= 1.0) {
        return Err(Error::Parameter(format!(
            "exponent must lie in (0, 1], got {beta}"
        )));
    }
    let h = phi.h();
    let gl = QuadratureRule::gauss_legendre(8)?;
    let gj = QuadratureRule::gauss_jacobi(8, -beta)?;
    let cells = (1.0 / h).ceil() as usize;
    let first = gj.integrate(|z| shift_variation(phi, z) / z, 0.0, h.min(1.0));
    let rest: f64 = (1..cells)
        .into_par_iter()
        .map(|k| {
            let a = k as f64 * h;
            let b = ((k + 1) as f64 * h).min(1.0);
            gl.integrate(|z| shift_variation(phi, z) * z.powf(-1.0 - beta), a, b)
        })
        .sum();
    Ok(2.0 * (first + rest))
}

/// `∫ |φ(x+z) - φ(x)| dx` over `x ∈ [box_lo - z, box_hi]`, outside of which
/// both terms are equal boundary constants.
fn shift_variation(phi: &GridFunction, z: f64) -> f64 {
    let nodes = phi.nodes();
    let lo = nodes[0] - z;
    let hi = nodes[nodes.len() - 1];
    let mut pts: Vec<f64> = nodes
        .iter()
        .copied()
        .chain(nodes.iter().map(|x| x - z))
        .collect();
    pts.push(lo);
    pts.retain(|x| *x >= lo && *x <= hi);
    pts.sort_by(f64::total_cmp);
    let diff = |x: f64| phi.eval(x + z) - phi.eval(x);
    pts.windows(2)
        .filter(|w| w[1] > w[0])
        .map(|w| abs_linear_integral(diff(w[0]), diff(w[1]), w[1] - w[0]))
        .sum()
}

/// `∫_0^len |p + (q - p) t/len| dt`.
fn abs_linear_integral(p: f64, q: f64, len: f64) -> f64 {
    if p * q >= 0.0 {
        0.5 * len * (p.abs() + q.abs())
    } else {
        0.5 * len * (p * p + q * q) / (p.abs() + q.abs())
    }
}
