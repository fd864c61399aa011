//! Independent references for cross-checking the main solvers.

mod fd;
mod highprec;
mod shooting;

pub use fd::{fd_eigen, fd_richardson, fd_triangle_eigen, FDGrid, FdDomain, FdEstimate};
pub use highprec::{highprec_2f1, highprec_2f1_f64};
pub use shooting::{ode_shooting_eigen, ShootingProblem};
