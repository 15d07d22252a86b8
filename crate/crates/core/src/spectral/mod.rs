//! Spectral ground truth for the estimators: the quasi-stationary
//! distribution as a principal left eigenvector, the full spectrum, the CLT
//! conditions, and the linearized mean dynamics.

mod clt;
mod field;
mod power;
mod qr;
mod report;

pub use clt::{check_clt, check_clt_ct, check_clt_dt, split_principal, CltVerdict};
pub use field::{bottleneck_matching, jacobian_check, ode_residual, JacobianCheck};
pub use power::{eigen_residual, principal_left_eigenpair};
pub use qr::full_spectrum;
pub use report::SpectralReport;
