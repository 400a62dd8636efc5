//! P1 stiffness forms for the local and the fractional Dirichlet energy.
//!
//! On a uniform grid with spacing `h` the fractional form of two hats whose
//! centres are `k` cells apart depends on `k` only:
//!
//! ```text
//! a_k = 2 ∫∫ η_s(|x-y|) (φ_0(x)-φ_0(y)) (φ_k(x)-φ_k(y)) dy dx
//!     = h^{1-2s} · 4C ∫_0^∞ ζ^{-1-2s} [2B(k) - B(k-ζ) - B(k+ζ)] dζ
//! ```
//!
//! where `B` is the autocorrelation of the unit hat (the centred cubic
//! B-spline). Two integrations by parts turn the integral into a fourth
//! difference of `|x|^{3-2s}`, which is what [`frac_coeffs`] uses for small
//! `k`; larger `k` go through the integral directly to avoid cancellation.

use crate::error::{Error, Result};
use crate::kernels::{norm_const, FracParams};
use crate::quadrature::QuadratureRule;
use nalgebra::DMatrix;
use rayon::prelude::*;

/// Autocorrelation of the unit hat, `∫ Λ(x) Λ(x + t) dx`.
pub fn hat_autocorr(t: f64) -> f64 {
    let a = t.abs();
    if a <= 1.0 {
        2.0 / 3.0 - a * a + 0.5 * a * a * a
    } else if a < 2.0 {
        let b = 2.0 - a;
        b * b * b / 6.0
    } else {
        0.0
    }
}

/// `x² (|x|^{1-2s} - 1) / (1 - 2s)`, which is `x² ln|x|` at `s = 1/2`.
fn g_s(s: f64, x: f64) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    let e = 1.0 - 2.0 * s;
    let l = x.abs().ln();
    let f = if e == 0.0 { l } else { (e * l).exp_m1() / e };
    x * x * f
}

fn gauss_order(s: f64) -> usize {
    if s < 0.4 {
        32
    } else {
        16
    }
}

/// `∫` over `[lo, hi]` of `ζ^{-1-2s} w(ζ)`, split at the integers so that
/// piecewise-cubic weights are integrated as smooth functions.
fn integrate_pieces<W: Fn(f64) -> f64>(
    rule: &QuadratureRule,
    s: f64,
    lo: f64,
    hi: f64,
    w: W,
) -> f64 {
    if hi <= lo {
        return 0.0;
    }
    let mut breaks = vec![lo];
    let mut m = lo.floor() + 1.0;
    while m < hi {
        breaks.push(m);
        m += 1.0;
    }
    breaks.push(hi);
    rule.integrate_composite(|z| z.powf(-1.0 - 2.0 * s) * w(z), &breaks)
}

/// Fractional stiffness entries `a_0 … a_{count-1}` for spacing `h`.
pub fn frac_coeffs(s: f64, h: f64, count: usize) -> Vec<f64> {
    let rule = QuadratureRule::gauss_legendre(gauss_order(s)).expect("positive order");
    let scale = h.powf(1.0 - 2.0 * s);
    let closed = 1.0 / (2.0 * s * (3.0 - 2.0 * s));
    let four_c = 2.0 * (1.0 - s);
    (0..count)
        .into_par_iter()
        .map(|k| {
            let kf = k as f64;
            let unit = if k <= 2 {
                let d4 = g_s(s, kf - 2.0) - 4.0 * g_s(s, kf - 1.0) + 6.0 * g_s(s, kf)
                    - 4.0 * g_s(s, kf + 1.0)
                    + g_s(s, kf + 2.0);
                closed * d4
            } else {
                -four_c * integrate_pieces(&rule, s, kf - 2.0, kf + 2.0, |z| hat_autocorr(kf - z))
            };
            scale * unit
        })
        .collect()
}

/// Entries of the same form restricted to pairs with `|x - y| < 1`.
pub fn near_coeffs(s: f64, h: f64, count: usize) -> Vec<f64> {
    let rule = QuadratureRule::gauss_legendre(gauss_order(s)).expect("positive order");
    let cut = 1.0 / h;
    let scale = h.powf(1.0 - 2.0 * s);
    let four_c = 2.0 * (1.0 - s);
    // 2B(k) - B(k-ζ) - B(k+ζ) = c2 ζ² + c3 ζ³ on [0, 1]
    let poly = [(2.0, -1.0), (-1.0, 2.0 / 3.0), (0.0, -1.0 / 6.0)];
    (0..count)
        .into_par_iter()
        .map(|k| {
            let kf = k as f64;
            let unit = if k <= 2 {
                let (c2, c3) = poly[k];
                let b = cut.min(1.0);
                let mut acc = c2 * b.powf(2.0 - 2.0 * s) / (2.0 - 2.0 * s)
                    + c3 * b.powf(3.0 - 2.0 * s) / (3.0 - 2.0 * s);
                let mid_hi = cut.min(kf + 2.0);
                let plateau = 2.0 * hat_autocorr(kf);
                acc += integrate_pieces(&rule, s, 1.0, mid_hi, |z| {
                    plateau - hat_autocorr(kf - z) - hat_autocorr(kf + z)
                });
                if cut > kf + 2.0 {
                    let a = kf + 2.0;
                    acc += plateau * (a.powf(-2.0 * s) - cut.powf(-2.0 * s)) / (2.0 * s);
                }
                acc
            } else {
                -integrate_pieces(&rule, s, kf - 2.0, (kf + 2.0).min(cut), |z| {
                    hat_autocorr(kf - z)
                })
            };
            scale * four_c * unit
        })
        .collect()
}

/// `F_k = ∫_{1/h}^∞ ζ^{-1-2s} (B(ζ-k) + B(ζ+k)) dζ`, the far-field overlap
/// weights in grid units.
pub fn far_overlap(s: f64, h: f64, count: usize) -> Vec<f64> {
    let rule = QuadratureRule::gauss_legendre(gauss_order(s)).expect("positive order");
    let cut = 1.0 / h;
    (0..count)
        .into_par_iter()
        .map(|k| {
            let kf = k as f64;
            let right = integrate_pieces(&rule, s, cut.max(kf - 2.0), kf + 2.0, |z| {
                hat_autocorr(z - kf)
            });
            let left = integrate_pieces(&rule, s, cut.max(-kf - 2.0), 2.0 - kf, |z| {
                hat_autocorr(z + kf)
            });
            right + left
        })
        .collect()
}

/// `vᵀ T v` for the symmetric Toeplitz matrix with first column `coeffs`.
pub fn toeplitz_quad(coeffs: &[f64], v: &[f64]) -> f64 {
    let n = v.len();
    (0..n)
        .into_par_iter()
        .map(|i| {
            let mut row = coeffs[0] * v[i];
            for k in 1..(n - i).min(coeffs.len()) {
                row += 2.0 * coeffs[k] * v[i + k];
            }
            v[i] * row
        })
        .sum()
}

/// `T v` for the symmetric Toeplitz matrix with first column `coeffs`.
pub fn toeplitz_apply(coeffs: &[f64], v: &[f64]) -> Vec<f64> {
    let n = v.len();
    (0..n)
        .into_par_iter()
        .map(|i| {
            (0..n)
                .filter_map(|j| coeffs.get(i.abs_diff(j)).map(|c| c * v[j]))
                .sum()
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
enum Storage {
    /// First column of a symmetric Toeplitz matrix.
    Toeplitz(Vec<f64>),
    /// `(diag, off)` of a symmetric Toeplitz tridiagonal matrix.
    Tridiagonal(f64, f64),
}

/// Symmetric bilinear form on the hats of the grid nodes strictly inside Ω.
#[derive(Debug, Clone, PartialEq)]
pub struct StiffnessForm {
    storage: Storage,
    n_int: usize,
    first: usize,
    h: f64,
    s: Option<f64>,
}

impl StiffnessForm {
    /// Fractional form `a(u, v) = 2∫∫η_s (u(x)-u(y))(v(x)-v(y))`.
    pub fn frac(first: usize, n_int: usize, h: f64, p: &FracParams) -> Result<Self> {
        if p.d() != 1 {
            return Err(Error::Config(
                "stiffness assembly is one-dimensional".into(),
            ));
        }
        if n_int == 0 {
            return Err(Error::Config("Ω contains no interior grid node".into()));
        }
        if p.s() > 0.999 {
            log::warn!(
                "s = {} is close to 1; the fractional form is badly conditioned",
                p.s()
            );
        }
        debug_assert!((norm_const(p) - (1.0 - p.s()) / 2.0).abs() < 1e-15);
        Ok(Self {
            storage: Storage::Toeplitz(frac_coeffs(p.s(), h, n_int)),
            n_int,
            first,
            h,
            s: Some(p.s()),
        })
    }

    /// Local form `a(u, v) = ∫ u' v'`.
    pub fn local(first: usize, n_int: usize, h: f64) -> Result<Self> {
        if n_int == 0 {
            return Err(Error::Config("Ω contains no interior grid node".into()));
        }
        Ok(Self {
            storage: Storage::Tridiagonal(2.0 / h, -1.0 / h),
            n_int,
            first,
            h,
            s: None,
        })
    }

    pub fn n_int(&self) -> usize {
        self.n_int
    }

    /// Grid index of the first interior node.
    pub fn first(&self) -> usize {
        self.first
    }

    pub fn interior(&self) -> std::ops::Range<usize> {
        self.first..self.first + self.n_int
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    /// `Some(s)` for the fractional form.
    pub fn order(&self) -> Option<f64> {
        self.s
    }

    pub fn entry(&self, i: usize, j: usize) -> f64 {
        let k = i.abs_diff(j);
        match &self.storage {
            Storage::Toeplitz(c) => c[k],
            Storage::Tridiagonal(d, o) => match k {
                0 => *d,
                1 => *o,
                _ => 0.0,
            },
        }
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        DMatrix::from_fn(self.n_int, self.n_int, |i, j| self.entry(i, j))
    }

    fn check_len(&self, len: usize) -> Result<()> {
        if len != self.n_int {
            return Err(Error::Shape(format!(
                "vector of length {len} for a form on {} nodes",
                self.n_int
            )));
        }
        Ok(())
    }

    pub fn apply(&self, v: &[f64]) -> Result<Vec<f64>> {
        self.check_len(v.len())?;
        Ok(match &self.storage {
            Storage::Toeplitz(c) => toeplitz_apply(c, v),
            Storage::Tridiagonal(d, o) => (0..v.len())
                .map(|i| {
                    let mut r = d * v[i];
                    if i > 0 {
                        r += o * v[i - 1];
                    }
                    if i + 1 < v.len() {
                        r += o * v[i + 1];
                    }
                    r
                })
                .collect(),
        })
    }

    /// `vᵀ A v`.
    pub fn quad(&self, v: &[f64]) -> Result<f64> {
        self.check_len(v.len())?;
        Ok(match &self.storage {
            Storage::Toeplitz(c) => toeplitz_quad(c, v),
            Storage::Tridiagonal(..) => self.apply(v)?.iter().zip(v).map(|(a, b)| a * b).sum(),
        })
    }

    /// Solves `A u = b`.
    pub fn solve(&self, b: &[f64]) -> Result<Vec<f64>> {
        self.check_len(b.len())?;
        match &self.storage {
            Storage::Toeplitz(_) => {
                let chol = self.to_dense().cholesky().ok_or_else(|| {
                    Error::Numerical("stiffness matrix is not positive definite".into())
                })?;
                let mut x: Vec<f64> = chol
                    .solve(&nalgebra::DVector::from_column_slice(b))
                    .iter()
                    .copied()
                    .collect();
                // one step of refinement brings the residual down to rounding of `A x`
                let ax = self.apply(&x)?;
                let r: Vec<f64> = b.iter().zip(&ax).map(|(b, a)| b - a).collect();
                let dx = chol.solve(&nalgebra::DVector::from_column_slice(&r));
                for (xi, d) in x.iter_mut().zip(dx.iter()) {
                    *xi += d;
                }
                Ok(x)
            }
            Storage::Tridiagonal(d, o) => thomas(*d, *o, b),
        }
    }
}

fn thomas(d: f64, o: f64, b: &[f64]) -> Result<Vec<f64>> {
    let n = b.len();
    let mut c = vec![0.0; n];
    let mut y = vec![0.0; n];
    let mut denom = d;
    c[0] = o / denom;
    y[0] = b[0] / denom;
    for i in 1..n {
        denom = d - o * c[i - 1];
        if denom.abs() < f64::MIN_POSITIVE {
            return Err(Error::Numerical("singular tridiagonal system".into()));
        }
        c[i] = o / denom;
        y[i] = (b[i] - o * y[i - 1]) / denom;
    }
    for i in (0..n - 1).rev() {
        y[i] -= c[i] * y[i + 1];
    }
    Ok(y)
}
