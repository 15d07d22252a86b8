//! Transforms that change tour lengths but keep the principal left
//! eigenvector of the transient block.

use super::{AbsorbingChainCT, AbsorbingChainDT};
use crate::error::{domain, Error, Result};
use nalgebra::DMatrix;

/// Scales the transient block by `alpha`, adding `1 - alpha` of absorption
/// mass to every state. Eigenvalues scale by `alpha`.
pub fn doeblinize_dt(chain: &AbsorbingChainDT, alpha: f64) -> Result<AbsorbingChainDT> {
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(domain(format!(
            "DT Doeblin factor must lie in (0, 1], got {alpha}"
        )));
    }
    if alpha == 1.0 {
        return Ok(chain.clone());
    }
    AbsorbingChainDT::new(chain.q() * alpha)
}

/// Adds a killing rate `alpha` to every state (`Q - alpha I`). Eigenvalues
/// shift by `-alpha`.
pub fn doeblinize_ct(chain: &AbsorbingChainCT, alpha: f64) -> Result<AbsorbingChainCT> {
    if !(alpha >= 0.0 && alpha.is_finite()) {
        return Err(domain(format!(
            "CT killing rate must be non-negative, got {alpha}"
        )));
    }
    if alpha == 0.0 {
        return Ok(chain.clone());
    }
    let d = chain.dim();
    AbsorbingChainCT::new(chain.q() - DMatrix::identity(d, d) * alpha)
}

/// Uniformized jump chain `I + Q / nu` with `nu` the largest exit rate.
pub fn uniformize(chain: &AbsorbingChainCT) -> Result<AbsorbingChainDT> {
    let d = chain.dim();
    let nu = (0..d).map(|i| chain.exit_rate(i)).fold(0.0, f64::max);
    if nu <= 0.0 {
        return Err(Error::DegenerateChain("all exit rates are zero".into()));
    }
    AbsorbingChainDT::new(DMatrix::identity(d, d) + chain.q() / nu)
}
