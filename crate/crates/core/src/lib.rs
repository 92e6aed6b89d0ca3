//! Numerical toolkit for two-layer gravity-capillary interfacial solitary waves.
//!
//! The crate computes, at desk scale, everything needed to reproduce the
//! local bifurcation picture of the steady two-layer problem in its spatial
//! dynamics formulation: the characteristic function of the linearized
//! operator and its root structure, the three bifurcation curves in the
//! (beta, alpha)-plane, generalized eigenchains with their symplectic
//! pairings, closed-form normal-form coefficients, the reduced Hamiltonian
//! ODE systems with their homoclinic orbits, and leading-order physical
//! wave profiles.

pub mod curves;
pub mod dispersion;
pub mod error;
pub mod grid;
pub mod normalform;
pub mod numerics;
pub mod odes;
pub mod operator;
pub mod parallel;
pub mod params;

pub use error::{Error, Result};
pub use params::{codim2_point, scalar_invariants, validate_params, BifurcationPoint, PhysicalParams};
