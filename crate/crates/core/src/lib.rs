//! Numerics for the fractional Dirichlet problem on a uniform one-dimensional grid.
//!
//! The kernel and moment formulas in [`kernels`] hold in any dimension; grids,
//! energies, mollification and the Galerkin solvers are one-dimensional.

// NaN inputs must fail parameter validation
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod boundary;
pub mod energies;
pub mod error;
pub mod grid;
pub mod kernels;
pub mod mollifier;
pub mod profile;
pub mod quadrature;
pub mod solver;
pub mod special;
pub mod stiffness;

pub use error::{Error, Result};
pub use grid::{Domain, GridFunction, Region};
pub use kernels::FracParams;
pub use stiffness::StiffnessForm;
