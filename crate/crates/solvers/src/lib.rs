//! Three global optimization problems over transfer functions and matrix
//! fields: the H-infinity norm, the numerical radius, and the passivity
//! margin. All three reduce to extremal eigenvalue / singular value
//! functions of univariate Hermitian families, whose smoothness at
//! extremizers makes the level-set + local-polish scheme effective.

mod error;
mod hinf;
mod levelset;
mod lti;
mod numrad;
mod passivity;

pub use error::SolverError;
pub use hinf::{
    hinf_norm, hinf_norm_with, omega_from_u, transfer_family, u_from_omega, Method, DEFAULT_TOL,
};
pub use levelset::{grid_maximize, levelset_maximize, LevelSetOptions};
pub use lti::{random_system, random_system_raw, LtiSystem, STABILITY_MARGIN};
pub use numrad::{numerical_radius, numerical_radius_with, rotation_family, RadiusForm};
pub use passivity::{gamma, passivity_margin, PassivityResult, DEFAULT_TOL as DEFAULT_TOL_XI};

pub use eigfamily::{empirical_order, IterationRecord, SolveReport, SolveStatus};
