use crate::error::{Error, Result};
use crate::models::{period, ChainKind, ProbabilityVector};
use nalgebra::{DMatrix, DVector};

pub const POWER_TOL: f64 = 1e-12;
pub const MAX_SWEEPS: usize = 1_000_000;

/// Principal eigenvalue and normalized left eigenvector of a transient block.
///
/// Power iteration on a nonnegative matrix with the same left eigenvectors:
/// `Q` itself for aperiodic DT blocks, `(I + Q) / 2` for periodic ones, and
/// `c I + Q` with `c = max(-q_ii) + 1` for rate matrices. The iterate is
/// renormalized onto the simplex every sweep and the eigenvalue is read off
/// as the total mass of `d' Q`.
pub fn principal_left_eigenpair(
    q: &DMatrix<f64>,
    kind: ChainKind,
) -> Result<(f64, ProbabilityVector)> {
    let d = q.nrows();
    if d == 0 || q.ncols() != d {
        return Err(Error::Contract(
            "transient block must be square and non-empty".into(),
        ));
    }
    let identity = DMatrix::<f64>::identity(d, d);
    let iteration = match kind {
        ChainKind::Dt if d > 1 && period(q) > 1 => (&identity + q) * 0.5,
        ChainKind::Dt => q.clone(),
        ChainKind::Ct => {
            let c = (0..d).map(|i| -q[(i, i)]).fold(0.0, f64::max) + 1.0;
            &identity * c + q
        }
    };
    if iteration.iter().any(|&x| x < 0.0) {
        return Err(Error::Contract(
            "iteration matrix has negative entries; not a valid transient block".into(),
        ));
    }
    let x = match power_iterate(&iteration) {
        Ok(x) => x,
        // a zero-pattern cycle that the period test missed; damp it
        Err(_) if kind == ChainKind::Dt => power_iterate(&((&identity + q) * 0.5))?,
        Err(e) => return Err(e),
    };
    let lambda = q.tr_mul(&x).sum();
    Ok((
        lambda,
        ProbabilityVector::from_normalized_unchecked(x.iter().copied().collect()),
    ))
}

fn power_iterate(m: &DMatrix<f64>) -> Result<DVector<f64>> {
    let d = m.nrows();
    let mut x = DVector::from_element(d, 1.0 / d as f64);
    let mut next = DVector::zeros(d);
    for _ in 0..MAX_SWEEPS {
        m.tr_mul_to(&x, &mut next);
        let total = next.sum();
        if !(total > 0.0 && total.is_finite()) {
            return Err(Error::Convergence(
                "power iteration (iterate collapsed to zero)".into(),
            ));
        }
        next /= total;
        let change = (&next - &x).amax();
        std::mem::swap(&mut x, &mut next);
        if change < POWER_TOL {
            return Ok(x);
        }
    }
    Err(Error::Convergence(format!(
        "power iteration after {MAX_SWEEPS} sweeps"
    )))
}

/// `|| d' Q - lambda d' ||_inf`.
pub fn eigen_residual(q: &DMatrix<f64>, lambda: f64, d: &[f64]) -> f64 {
    let v = DVector::from_column_slice(d);
    (q.tr_mul(&v) - v * lambda).amax()
}
