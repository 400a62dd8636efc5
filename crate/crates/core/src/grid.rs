//! Uniform grids on a truncation box and their piecewise-linear functions.

use crate::error::{Error, Result};

/// An interval `Ω = (omega_lo, omega_hi)` inside a box `[box_lo, box_hi]`
/// whose margin around `Ω` is at least one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Domain {
    omega_lo: f64,
    omega_hi: f64,
    box_lo: f64,
    box_hi: f64,
}

impl Domain {
    pub fn new(omega_lo: f64, omega_hi: f64, box_lo: f64, box_hi: f64) -> Result<Self> {
        let all = [omega_lo, omega_hi, box_lo, box_hi];
        if all.iter().any(|v| !v.is_finite()) {
            return Err(Error::Config("domain bounds must be finite".into()));
        }
        if omega_lo >= omega_hi {
            return Err(Error::Config(format!(
                "empty interval: omega_lo = {omega_lo} >= omega_hi = {omega_hi}"
            )));
        }
        if box_lo > omega_lo - 1.0 || box_hi < omega_hi + 1.0 {
            return Err(Error::Config(format!(
                "box [{box_lo}, {box_hi}] must extend at least 1 beyond ({omega_lo}, {omega_hi})"
            )));
        }
        Ok(Self {
            omega_lo,
            omega_hi,
            box_lo,
            box_hi,
        })
    }

    /// `Ω = (-1, 1)` inside `[-2, 2]`.
    pub fn unit() -> Self {
        Self {
            omega_lo: -1.0,
            omega_hi: 1.0,
            box_lo: -2.0,
            box_hi: 2.0,
        }
    }

    pub fn omega_lo(&self) -> f64 {
        self.omega_lo
    }

    pub fn omega_hi(&self) -> f64 {
        self.omega_hi
    }

    pub fn box_lo(&self) -> f64 {
        self.box_lo
    }

    pub fn box_hi(&self) -> f64 {
        self.box_hi
    }

    pub fn omega_len(&self) -> f64 {
        self.omega_hi - self.omega_lo
    }

    pub fn box_len(&self) -> f64 {
        self.box_hi - self.box_lo
    }

    pub fn in_omega(&self, x: f64) -> bool {
        x > self.omega_lo && x < self.omega_hi
    }

    pub fn bounds(&self, region: Region) -> (f64, f64) {
        match region {
            Region::Omega => (self.omega_lo, self.omega_hi),
            Region::Box => (self.box_lo, self.box_hi),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Region {
    Omega,
    Box,
}

/// Nodal values on `n` equispaced nodes spanning the box, read as the
/// piecewise-linear interpolant.
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction {
    domain: Domain,
    values: Vec<f64>,
}

/// Zero grid function with `n` nodes.
pub fn make_grid(domain: Domain, n: usize) -> Result<GridFunction> {
    GridFunction::from_values(domain, vec![0.0; check_n(n)?])
}

/// Samples `f` at every node.
pub fn sample<F: Fn(f64) -> f64>(domain: Domain, n: usize, f: F) -> Result<GridFunction> {
    let n = check_n(n)?;
    let mut values = Vec::with_capacity(n);
    for i in 0..n {
        let x = node_coord(&domain, n, i);
        let v = f(x);
        if !v.is_finite() {
            return Err(Error::Data(format!(
                "non-finite sample {v} at node {i} (x = {x})"
            )));
        }
        values.push(v);
    }
    Ok(GridFunction { domain, values })
}

fn check_n(n: usize) -> Result<usize> {
    if n < 3 {
        Err(Error::Config(format!(
            "grid needs at least 3 nodes, got {n}"
        )))
    } else {
        Ok(n)
    }
}

fn node_coord(domain: &Domain, n: usize, i: usize) -> f64 {
    if i + 1 == n {
        domain.box_hi
    } else {
        domain.box_lo + domain.box_len() * (i as f64) / ((n - 1) as f64)
    }
}

impl GridFunction {
    pub fn from_values(domain: Domain, values: Vec<f64>) -> Result<Self> {
        check_n(values.len())?;
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::Data(format!("non-finite value at node {i}")));
        }
        Ok(Self { domain, values })
    }

    /// Same grid, new values.
    pub fn with_values(&self, values: Vec<f64>) -> Result<Self> {
        if values.len() != self.n() {
            return Err(Error::Shape(format!(
                "expected {} values, got {}",
                self.n(),
                values.len()
            )));
        }
        Self::from_values(self.domain, values)
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    pub fn n(&self) -> usize {
        self.values.len()
    }

    pub fn h(&self) -> f64 {
        self.domain.box_len() / ((self.n() - 1) as f64)
    }

    pub fn node(&self, i: usize) -> f64 {
        node_coord(&self.domain, self.n(), i)
    }

    pub fn nodes(&self) -> Vec<f64> {
        (0..self.n()).map(|i| self.node(i)).collect()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    /// Index of the node at `x`, if `x` is a node up to rounding.
    pub fn node_index(&self, x: f64) -> Option<usize> {
        let t = (x - self.domain.box_lo) / self.h();
        let i = t.round();
        if i < 0.0 || i > (self.n() - 1) as f64 || (t - i).abs() > 1e-9 {
            None
        } else {
            Some(i as usize)
        }
    }

    pub fn same_grid(&self, other: &GridFunction) -> Result<()> {
        if self.n() != other.n() || self.domain != other.domain {
            return Err(Error::Shape(format!(
                "grid mismatch: n = {} vs {}, domains {:?} vs {:?}",
                self.n(),
                other.n(),
                self.domain,
                other.domain
            )));
        }
        Ok(())
    }

    /// Piecewise-linear interpolation, constant beyond the box.
    pub fn eval(&self, x: f64) -> f64 {
        let n = self.n();
        if x <= self.domain.box_lo {
            return self.values[0];
        }
        if x >= self.domain.box_hi {
            return self.values[n - 1];
        }
        let t = (x - self.domain.box_lo) / self.h();
        let i = (t.floor() as usize).min(n - 2);
        let a = self.node(i);
        let b = self.node(i + 1);
        let w = (x - a) / (b - a);
        self.values[i] + w * (self.values[i + 1] - self.values[i])
    }

    /// Exact `∫ φ ψ` of the two interpolants over the region.
    pub fn inner(&self, other: &GridFunction, region: Region) -> Result<f64> {
        self.same_grid(other)?;
        let (lo, hi) = self.domain.bounds(region);
        let mut acc = 0.0;
        for i in 0..self.n() - 1 {
            let a = self.node(i).max(lo);
            let b = self.node(i + 1).min(hi);
            if b <= a {
                continue;
            }
            let (p1, p2) = (self.eval_in_cell(i, a), self.eval_in_cell(i, b));
            let (q1, q2) = (other.eval_in_cell(i, a), other.eval_in_cell(i, b));
            acc += (b - a) / 6.0 * (2.0 * p1 * q1 + p1 * q2 + p2 * q1 + 2.0 * p2 * q2);
        }
        Ok(acc)
    }

    fn eval_in_cell(&self, i: usize, x: f64) -> f64 {
        let a = self.node(i);
        let b = self.node(i + 1);
        let w = (x - a) / (b - a);
        self.values[i] + w * (self.values[i + 1] - self.values[i])
    }

    /// Exact `L²` norm of the interpolant over the region.
    pub fn l2_norm(&self, region: Region) -> f64 {
        self.inner(self, region).unwrap_or(0.0).max(0.0).sqrt()
    }

    /// Exact `∫ φ` of the interpolant over the region.
    pub fn integral(&self, region: Region) -> f64 {
        let (lo, hi) = self.domain.bounds(region);
        let mut acc = 0.0;
        for i in 0..self.n() - 1 {
            let a = self.node(i).max(lo);
            let b = self.node(i + 1).min(hi);
            if b > a {
                acc += 0.5 * (b - a) * (self.eval_in_cell(i, a) + self.eval_in_cell(i, b));
            }
        }
        acc
    }

    /// Indices of the nodes lying in the closed region.
    pub fn region_nodes(&self, region: Region) -> std::ops::Range<usize> {
        let (lo, hi) = self.domain.bounds(region);
        let h = self.h();
        let tol = 1e-9 * h;
        let first = ((lo - self.domain.box_lo - tol) / h).ceil().max(0.0) as usize;
        let last = ((hi - self.domain.box_lo + tol) / h).floor() as usize;
        first..(last.min(self.n() - 1) + 1)
    }

    /// Largest nodal deviation over the region.
    pub fn linf_distance(&self, other: &GridFunction, region: Region) -> Result<f64> {
        self.same_grid(other)?;
        Ok(self
            .region_nodes(region)
            .map(|i| (self.values[i] - other.values[i]).abs())
            .fold(0.0, f64::max))
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn scale(&self, a: f64) -> GridFunction {
        GridFunction {
            domain: self.domain,
            values: self.values.iter().map(|v| a * v).collect(),
        }
    }

    pub fn add(&self, other: &GridFunction) -> Result<GridFunction> {
        self.same_grid(other)?;
        Ok(GridFunction {
            domain: self.domain,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &GridFunction) -> Result<GridFunction> {
        self.same_grid(other)?;
        Ok(GridFunction {
            domain: self.domain,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nodes_are_uniform() {
        let dom = Domain::new(-1.0, 1.0, -3.0, 3.0).unwrap();
        let g = make_grid(dom, 7).unwrap();
        assert_eq!(g.nodes(), vec![-3.0, -2.0, -1.0, 0.0, 1.0, 2.0, 3.0]);
        assert!(g.values().iter().all(|v| *v == 0.0));
    }

    #[test]
    fn rejects_invalid_construction() {
        assert!(make_grid(Domain::unit(), 2).is_err());
        assert!(Domain::new(-1.0, 1.0, -1.5, 1.5).is_err());
        assert!(Domain::new(1.0, 1.0, -3.0, 3.0).is_err());
    }

    #[test]
    fn sample_and_eval() {
        let dom = Domain::new(-1.0, 1.0, -2.0, 2.0).unwrap();
        let g = sample(dom, 5, |x| x * x).unwrap();
        assert_eq!(g.values(), &[4.0, 1.0, 0.0, 1.0, 4.0]);
        let id = sample(dom, 9, |x| x).unwrap();
        assert!((id.eval(0.25) - 0.25).abs() < 1e-15);
        assert_eq!(id.eval(10.0), 2.0);
        assert_eq!(id.eval(-10.0), -2.0);
        let err = sample(dom, 5, |x| 1.0 / x).unwrap_err();
        assert!(matches!(err, Error::Data(ref m) if m.contains("node 2")));
    }

    #[test]
    fn indicator_sample_pattern() {
        let dom = Domain::unit();
        let g = sample(dom, 9, |x| if dom.in_omega(x) { 1.0 } else { 0.0 }).unwrap();
        assert_eq!(g.values(), &[0.0, 0.0, 0.0, 1.0, 1.0, 1.0, 0.0, 0.0, 0.0]);
    }

    #[test]
    fn l2_of_constant_on_omega() {
        let g = sample(Domain::unit(), 17, |_| 3.0).unwrap();
        assert!((g.l2_norm(Region::Omega) - 3.0 * 2f64.sqrt()).abs() < 1e-14);
        assert!((g.l2_norm(Region::Box) - 6.0).abs() < 1e-14);
    }

    #[test]
    fn linf_region_and_shape() {
        let dom = Domain::unit();
        let a = make_grid(dom, 9).unwrap();
        let mut v = vec![0.0; 9];
        v[5] = 0.3;
        let b = a.with_values(v).unwrap();
        assert_eq!(a.linf_distance(&b, Region::Omega).unwrap(), 0.3);
        assert_eq!(a.linf_distance(&a, Region::Box).unwrap(), 0.0);
        let c = make_grid(dom, 11).unwrap();
        assert!(matches!(
            a.linf_distance(&c, Region::Box),
            Err(Error::Shape(_))
        ));
    }

    #[test]
    fn region_nodes_include_endpoints() {
        let g = make_grid(Domain::unit(), 17).unwrap();
        assert_eq!(g.region_nodes(Region::Omega), 4..13);
        assert_eq!(g.region_nodes(Region::Box), 0..17);
        assert_eq!(g.node_index(-1.0), Some(4));
        assert_eq!(g.node_index(-0.9), None);
    }
}
