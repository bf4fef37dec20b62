//! Univariate analytic matrix families and the scalar extremal functions of
//! their spectra: extreme eigenvalues, spectral radii, and singular values.
//! Includes finite-difference smoothness probes at extremizers and a local
//! maximizer refinement that exploits the two-sided C^2 behavior of these
//! functions at local maxima.

mod error;
mod extremal;
mod family;
mod probe;
mod random;
mod refine;
mod report;

pub use error::EigError;
pub use extremal::{
    singular_values_direct, ExtremalFunction, ExtremalKind, Family, SINGULARITY_TOL,
};
pub use family::{HermitianFamily, MatrixFamily, MatrixFn, ScalarCurve};
pub use probe::{
    smoothness_probe, FdRow, ProbeReport, ProbeStatus, CLUSTER_TOL, FD_FLOOR, SIGMA_MIN_GUARD,
};
pub use random::{random_complex_matrix, random_hermitian_family, random_matrix_family};
pub use refine::{local_refine, local_refine_fn};
pub use report::{empirical_order, IterationRecord, SolveReport, SolveStatus};
