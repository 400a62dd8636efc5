//! P1 Galerkin solvers for the fractional and the local Dirichlet problem with
//! zero exterior data, the pointwise fractional Laplacian, and the closed-form
//! solution on the unit interval.

use crate::error::{Error, Result};
use crate::grid::{make_grid, sample, Domain, GridFunction};
use crate::kernels::{classical_const, norm_const, sphere_measure, FracParams};
use crate::profile::{FarField, Profile};
use crate::quadrature::QuadratureRule;
use crate::special::ln_gamma;
use crate::stiffness::StiffnessForm;
use rayon::prelude::*;

/// Default truncation radius of the far-field integral.
pub const DEFAULT_RADIUS: f64 = 50.0;

/// First grid index and count of the nodes strictly inside Ω.
///
/// The endpoints of Ω must be grid nodes so that every interior hat is
/// supported in the closure of Ω.
pub fn interior_block(dom: &Domain, n: usize) -> Result<(usize, usize)> {
    let grid = make_grid(*dom, n)?;
    let lo = grid.node_index(dom.omega_lo());
    let hi = grid.node_index(dom.omega_hi());
    match (lo, hi) {
        (Some(a), Some(b)) if b > a + 1 => Ok((a + 1, b - a - 1)),
        (Some(_), Some(_)) => Err(Error::Config("Ω contains no interior grid node".into())),
        _ => Err(Error::Config(format!(
            "the endpoints of Ω = ({}, {}) must be grid nodes (box [{}, {}], n = {n})",
            dom.omega_lo(),
            dom.omega_hi(),
            dom.box_lo(),
            dom.box_hi()
        ))),
    }
}

pub fn assemble_frac(dom: &Domain, n: usize, p: &FracParams) -> Result<StiffnessForm> {
    let (first, n_int) = interior_block(dom, n)?;
    let h = dom.box_len() / (n - 1) as f64;
    StiffnessForm::frac(first, n_int, h, p)
}

pub fn assemble_local(dom: &Domain, n: usize) -> Result<StiffnessForm> {
    let (first, n_int) = interior_block(dom, n)?;
    let h = dom.box_len() / (n - 1) as f64;
    StiffnessForm::local(first, n_int, h)
}

/// `b_i = ∫_Ω f φ_i`, exact for the interpolant of `f`.
pub fn load_vector(form: &StiffnessForm, f: &GridFunction) -> Result<Vec<f64>> {
    let v = f.values();
    if form.first() == 0 || form.first() + form.n_int() >= v.len() {
        return Err(Error::Shape(
            "load grid does not contain the form's nodes".into(),
        ));
    }
    let h = f.h();
    Ok(form
        .interior()
        .map(|i| h / 6.0 * (v[i - 1] + 4.0 * v[i] + v[i + 1]))
        .collect())
}

/// Interior coefficients of a grid function.
pub fn restrict(form: &StiffnessForm, phi: &GridFunction) -> Vec<f64> {
    phi.values()[form.interior()].to_vec()
}

/// Zero extension of interior coefficients onto the grid of `like`.
pub fn extend(form: &StiffnessForm, like: &GridFunction, interior: &[f64]) -> Result<GridFunction> {
    let mut values = vec![0.0; like.n()];
    values[form.interior()].copy_from_slice(interior);
    like.with_values(values)
}

fn check_grid(dom: &Domain, n: usize, f: &GridFunction) -> Result<()> {
    if f.n() != n || f.domain() != dom {
        return Err(Error::Shape(format!(
            "right-hand side lives on a different grid (n = {} vs {n})",
            f.n()
        )));
    }
    Ok(())
}

/// Solves `A u = b` for the form and right-hand side `f`, zero outside Ω.
pub fn solve_with(form: &StiffnessForm, f: &GridFunction) -> Result<GridFunction> {
    let b = load_vector(form, f)?;
    let u = form.solve(&b)?;
    extend(form, f, &u)
}

pub fn solve_frac_dirichlet(
    dom: &Domain,
    n: usize,
    p: &FracParams,
    f_s: &GridFunction,
) -> Result<GridFunction> {
    check_grid(dom, n, f_s)?;
    let form = assemble_frac(dom, n, p)?;
    solve_with(&form, f_s)
}

pub fn solve_local_dirichlet(dom: &Domain, n: usize, f: &GridFunction) -> Result<GridFunction> {
    check_grid(dom, n, f)?;
    let form = assemble_local(dom, n)?;
    solve_with(&form, f)
}

/// Solution of the fractional problem on the unit ball with `f ≡ 1` and
/// zero exterior data.
pub fn exact_solution_ball(p: &FracParams, x: f64) -> f64 {
    let q = 1.0 - x * x;
    if q <= 0.0 {
        return 0.0;
    }
    let s = p.s();
    let half = p.d() as f64 / 2.0;
    let ln_c = -s * 4f64.ln() + ln_gamma(half) - ln_gamma(half + s) - ln_gamma(1.0 + s);
    let ratio = classical_const(p) / norm_const(p);
    ratio * ln_c.exp() * q.powf(s)
}

/// The closed-form ball solution as a profile.
#[derive(Debug, Clone, Copy)]
pub struct BallSolution {
    params: FracParams,
    amplitude: f64,
}

impl BallSolution {
    pub fn new(p: &FracParams) -> Self {
        Self {
            params: *p,
            amplitude: exact_solution_ball(p, 0.0),
        }
    }
}

impl Profile for BallSolution {
    fn value(&self, x: f64) -> f64 {
        exact_solution_ball(&self.params, x)
    }

    fn d1(&self, x: f64) -> f64 {
        let q = 1.0 - x * x;
        if q <= 0.0 {
            return 0.0;
        }
        let s = self.params.s();
        -2.0 * s * x * self.amplitude * q.powf(s - 1.0)
    }

    fn d2(&self, x: f64) -> f64 {
        let q = 1.0 - x * x;
        if q <= 0.0 {
            return 0.0;
        }
        let s = self.params.s();
        let a = self.amplitude;
        -2.0 * s * a * q.powf(s - 1.0) + 4.0 * s * (s - 1.0) * x * x * a * q.powf(s - 2.0)
    }

    fn kinks(&self) -> Vec<f64> {
        vec![-1.0, 1.0]
    }

    fn far_field(&self, x: f64, radius: f64) -> FarField {
        if radius >= x.abs() + 1.0 {
            FarField::Exact(0.0)
        } else {
            FarField::Unknown
        }
    }

    fn sup_norm(&self) -> Option<f64> {
        Some(self.amplitude)
    }
}

/// Value of the operator at a point with a bound on the neglected far field.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Pointwise {
    pub value: f64,
    pub error_bar: f64,
}

/// `4C ∫ (g(x) - g(y)) |x-y|^{-1-2s} dy` in the principal-value sense.
pub fn frac_laplacian_pointwise(g: &dyn Profile, p: &FracParams, x: f64) -> Result<Pointwise> {
    frac_laplacian_pointwise_with(g, p, x, DEFAULT_RADIUS)
}

pub fn frac_laplacian_pointwise_with(
    g: &dyn Profile,
    p: &FracParams,
    x: f64,
    radius: f64,
) -> Result<Pointwise> {
    if p.d() != 1 {
        return Err(Error::Config(
            "pointwise operator is one-dimensional".into(),
        ));
    }
    if !(radius > 1.0) {
        return Err(Error::Config(format!(
            "truncation radius must exceed 1, got {radius}"
        )));
    }
    let s = p.s();
    let c = norm_const(p);
    let gx = g.value(x);
    if !gx.is_finite() {
        return Err(Error::Data(format!("profile is not finite at x = {x}")));
    }
    let sym = |z: f64| 2.0 * gx - g.value(x + z) - g.value(x - z);

    let mut breaks: Vec<f64> = g
        .kinks()
        .iter()
        .map(|k| (k - x).abs())
        .filter(|z| *z > 1e-12 && *z < radius)
        .collect();
    let mut m = 1.0;
    while m < radius {
        breaks.push(m);
        m += 1.0;
    }
    breaks.push(radius);
    breaks.sort_by(f64::total_cmp);
    breaks.dedup_by(|a, b| (*a - *b).abs() < 1e-12);

    let order = if s < 0.4 { 40 } else { 20 };
    let gl = QuadratureRule::gauss_legendre(order)?;
    let gj = QuadratureRule::gauss_jacobi(order, 1.0 - 2.0 * s)?;
    let curv = -g.d2(x);
    // first panel: weight z^{1-2s} against the smooth quotient sym(z)/z²
    let first = breaks[0];
    let mut total = gj.integrate(
        |z| {
            if z < 1e-5 {
                curv
            } else {
                sym(z) / (z * z)
            }
        },
        0.0,
        first,
    );
    total += breaks
        .par_windows(2)
        .map(|w| gl.integrate(|z| sym(z) * z.powf(-1.0 - 2.0 * s), w[0], w[1]))
        .sum::<f64>();

    let omega = sphere_measure(1)?;
    let far_bound = |sup: Option<f64>| {
        sup.map_or(f64::INFINITY, |m| {
            8.0 * c * m * omega * radius.powf(-2.0 * s) / (2.0 * s)
        })
    };
    let tail = |mean: f64| 2.0 * (gx - mean) * radius.powf(-2.0 * s) / (2.0 * s);
    let (correction, error_bar) = match g.far_field(x, radius) {
        FarField::Exact(mean) => (tail(mean), 0.0),
        FarField::Mean(mean) => (tail(mean), far_bound(g.sup_norm())),
        FarField::Unknown => (0.0, far_bound(g.sup_norm())),
    };
    let value = 4.0 * c * (total + correction);
    if !value.is_finite() {
        return Err(Error::Data(format!("non-finite operator value at x = {x}")));
    }
    Ok(Pointwise { value, error_bar })
}

/// Solves the problem with exterior data `g` by solving for `u - g`.
pub fn lift_and_solve(
    dom: &Domain,
    n: usize,
    p: &FracParams,
    f_s: &GridFunction,
    g: &dyn Profile,
) -> Result<GridFunction> {
    check_grid(dom, n, f_s)?;
    let form = assemble_frac(dom, n, p)?;
    let lifted = lifted_rhs(&form, p, f_s, g)?;
    let tilde = solve_with(&form, &lifted)?;
    let g_grid = sample(*dom, n, |x| g.value(x))?;
    tilde.add(&g_grid)
}

/// `f_s - L g` at the nodes of the closed Ω, zero elsewhere.
pub fn lifted_rhs(
    form: &StiffnessForm,
    p: &FracParams,
    f_s: &GridFunction,
    g: &dyn Profile,
) -> Result<GridFunction> {
    let lo = form.first() - 1;
    let hi = form.first() + form.n_int();
    let lg: Vec<f64> = (lo..=hi)
        .into_par_iter()
        .map(|i| frac_laplacian_pointwise(g, p, f_s.node(i)).map(|r| r.value))
        .collect::<Result<_>>()?;
    let mut values = vec![0.0; f_s.n()];
    for (k, i) in (lo..=hi).enumerate() {
        values[i] = f_s.values()[i] - lg[k];
    }
    f_s.with_values(values)
}
