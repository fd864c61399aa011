//! Dirichlet eigenvalues of spherical cones and Brownian pursuit exponents.
//!
//! The number of Brownian predators needed for a finite expected capture
//! time is decided by the first Dirichlet eigenvalue of a spherical domain.
//! This crate evaluates the hypergeometric eigenvalue relations for cones,
//! checks the nodal-domain bound for the spherical triangle `T₂`, estimates
//! `λ₁(T₂)` by sinc collocation and compares the resulting survival exponents
//! with simulation.

pub mod cone_spectra;
pub mod error;
pub mod gauss;
pub mod hyperfun;
pub mod oracles;
pub mod perturbed_domain;
pub mod pursuit_mc;
pub mod sinc_galerkin;

pub use error::{Error, Result};
