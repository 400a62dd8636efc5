//! Gauss rules on the reference interval and a few composite drivers built on them.

use crate::error::{Error, Result};
use crate::special::ln_gamma;
use nalgebra::{DMatrix, SymmetricEigen};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum QuadratureKind {
    GaussLegendre,
    /// Weight `(1 - t)^exponent` on `(-1, 1)`.
    GaussJacobi {
        exponent: f64,
    },
}

/// Nodes and weights of a Gauss rule on the reference interval `(-1, 1)`.
#[derive(Debug, Clone)]
pub struct QuadratureRule {
    kind: QuadratureKind,
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl QuadratureRule {
    pub fn gauss_legendre(order: usize) -> Result<Self> {
        if order == 0 {
            return Err(Error::Config("quadrature order must be positive".into()));
        }
        let n = order;
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        for i in 0..n.div_ceil(2) {
            // Chebyshev initial guess, then Newton on P_n.
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre_with_derivative(n, x);
            if d != 0.0 {
                dp = d;
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        Ok(Self {
            kind: QuadratureKind::GaussLegendre,
            nodes,
            weights,
        })
    }

    /// Gauss–Jacobi rule for the weight `(1 - t)^exponent`, via Golub–Welsch.
    pub fn gauss_jacobi(order: usize, exponent: f64) -> Result<Self> {
        if order == 0 {
            return Err(Error::Config("quadrature order must be positive".into()));
        }
        if !(exponent > -1.0) || !exponent.is_finite() {
            return Err(Error::Config(format!(
                "Gauss-Jacobi exponent must be finite and > -1, got {exponent}"
            )));
        }
        let a = exponent;
        let n = order;
        let mut jac = DMatrix::<f64>::zeros(n, n);
        for k in 0..n {
            let kf = k as f64;
            let diag = if k == 0 {
                -a / (a + 2.0)
            } else {
                let t = 2.0 * kf + a;
                -(a * a) / (t * (t + 2.0))
            };
            jac[(k, k)] = diag;
            if k + 1 < n {
                let m = kf + 1.0;
                let t = 2.0 * m + a;
                let b2 = 4.0 * m * (m + a) * m * (m + a) / (t * t * (t + 1.0) * (t - 1.0));
                let b = b2.sqrt();
                jac[(k, k + 1)] = b;
                jac[(k + 1, k)] = b;
            }
        }
        let mu0 = ((a + 1.0) * std::f64::consts::LN_2 - (a + 1.0).ln()).exp();
        let eig = SymmetricEigen::new(jac);
        let mut pairs: Vec<(f64, f64)> = (0..n)
            .map(|i| {
                let v0 = eig.eigenvectors[(0, i)];
                (eig.eigenvalues[i], mu0 * v0 * v0)
            })
            .collect();
        pairs.sort_by(|p, q| p.0.total_cmp(&q.0));
        Ok(Self {
            kind: QuadratureKind::GaussJacobi { exponent },
            nodes: pairs.iter().map(|p| p.0).collect(),
            weights: pairs.iter().map(|p| p.1).collect(),
        })
    }

    pub fn kind(&self) -> QuadratureKind {
        self.kind
    }

    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// `∫_a^b f` for Legendre rules. For Jacobi rules the weight is placed at
    /// the left end: the result approximates `∫_a^b (x - a)^γ f(x) dx`.
    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F, a: f64, b: f64) -> f64 {
        let half = 0.5 * (b - a);
        match self.kind {
            QuadratureKind::GaussLegendre => {
                let mid = 0.5 * (a + b);
                let sum: f64 = self
                    .nodes
                    .iter()
                    .zip(&self.weights)
                    .map(|(t, w)| w * f(mid + half * t))
                    .sum();
                sum * half
            }
            QuadratureKind::GaussJacobi { exponent } => {
                let sum: f64 = self
                    .nodes
                    .iter()
                    .zip(&self.weights)
                    .map(|(t, w)| w * f(a + half * (1.0 - t)))
                    .sum();
                sum * half.powf(exponent + 1.0)
            }
        }
    }

    /// Composite rule over consecutive breakpoints (Legendre rules only).
    pub fn integrate_composite<F: Fn(f64) -> f64>(&self, f: F, breaks: &[f64]) -> f64 {
        breaks
            .windows(2)
            .filter(|w| w[1] > w[0])
            .map(|w| self.integrate(&f, w[0], w[1]))
            .sum()
    }
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let p = if n == 0 { 1.0 } else { p1 };
    let d = n as f64 * (x * p - p0) / (x * x - 1.0);
    (p, d)
}

/// `∫_0^b f(t) dt` for integrands behaving like `t^leading` at the origin.
///
/// Geometrically graded Gauss–Legendre panels towards 0, closed by one
/// Gauss–Jacobi panel that carries the `t^leading` weight exactly.
pub fn graded_integral<F: Fn(f64) -> f64>(f: F, b: f64, leading: f64) -> Result<f64> {
    const LEVELS: i32 = 64;
    const ORDER: usize = 20;
    if b <= 0.0 {
        return Ok(0.0);
    }
    let gl = QuadratureRule::gauss_legendre(ORDER)?;
    let gj = QuadratureRule::gauss_jacobi(ORDER, leading)?;
    let mut total = 0.0;
    let mut hi = b;
    for _ in 0..LEVELS {
        let lo = 0.5 * hi;
        total += gl.integrate(&f, lo, hi);
        hi = lo;
    }
    // weight (x - 0)^leading on [0, hi]; pass f / t^leading
    total += gj.integrate(|t| f(t) / t.powf(leading), 0.0, hi);
    Ok(total)
}

/// Log of `∫_{-1}^{1} (1-t)^a (1+t)^b dt`, used by the Jacobi tests.
pub fn ln_jacobi_mass(a: f64, b: f64) -> f64 {
    (a + b + 1.0) * std::f64::consts::LN_2 + ln_gamma(a + 1.0) + ln_gamma(b + 1.0)
        - ln_gamma(a + b + 2.0)
}
