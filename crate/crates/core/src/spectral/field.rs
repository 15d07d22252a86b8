//! The mean ODE field of the recursion and the linearization at its
//! stationary point.

use super::{full_spectrum, principal_left_eigenpair, split_principal};
use crate::error::{check_dim, Error, Result};
use crate::models::{ChainKind, ProbabilityVector};
use nalgebra::{Complex, DMatrix, DVector};

/// `mu' A - (mu' A 1) mu'` with `A = (I - Q)^-1` (DT) or `A = -Q^-1` (CT).
///
/// The field is tangent to the simplex and vanishes exactly at the
/// quasi-stationary distribution.
pub fn ode_residual(q: &DMatrix<f64>, mu: &ProbabilityVector, kind: ChainKind) -> Result<Vec<f64>> {
    let d = q.nrows();
    check_dim(d, mu.dim())?;
    let system = match kind {
        ChainKind::Dt => DMatrix::identity(d, d) - q,
        ChainKind::Ct => -q,
    };
    let rhs = DVector::from_column_slice(mu.as_slice());
    // mu' A is the solution x of system' x = mu
    let x = system
        .transpose()
        .lu()
        .solve(&rhs)
        .ok_or_else(|| Error::Contract("fundamental matrix is singular".into()))?;
    let mass = x.sum();
    Ok(x.iter()
        .zip(mu.as_slice())
        .map(|(xi, mi)| xi - mass * mi)
        .collect())
}

/// Result of comparing the Jacobian spectrum with its prediction from `B`.
#[derive(Debug, Clone)]
pub struct JacobianCheck {
    /// Largest distance between a computed and a predicted eigenvalue of `J`
    /// under the optimal pairing.
    pub max_abs_error: f64,
    /// Smallest modulus among the computed eigenvalues of `J`.
    pub min_modulus: f64,
    /// Principal eigenvalue of `B`, the mean lifetime `1 / (1 - lambda_pv)`.
    pub beta: f64,
    pub jacobian_spectrum: Vec<Complex<f64>>,
}

/// Builds `J = (B - beta I - mu 1' B) / beta` with `B = (I - Q')^-1` at the
/// quasi-stationary distribution `mu` and checks that its spectrum is
/// `{lambda_B / beta - 1 : lambda_B non-principal} ∪ {-1}`.
pub fn jacobian_check(q: &DMatrix<f64>) -> Result<JacobianCheck> {
    let d = q.nrows();
    if d == 0 || d > 64 {
        return Err(Error::Contract(format!(
            "jacobian check supports 1..=64 states, got {d}"
        )));
    }
    let (_, mu) = principal_left_eigenpair(q, ChainKind::Dt)?;
    let b = (DMatrix::identity(d, d) - q.transpose())
        .try_inverse()
        .ok_or_else(|| Error::Contract("I - Q is singular".into()))?;
    let mu = DVector::from_column_slice(mu.as_slice());
    let beta = (&b * &mu).sum();
    let ones_b = DVector::from_element(d, 1.0).transpose() * &b;
    let j = (&b - DMatrix::identity(d, d) * beta - &mu * ones_b) / beta;

    let (_, rest) = split_principal(&full_spectrum(&b)?)?;
    let mut predicted: Vec<Complex<f64>> = rest.into_iter().map(|z| z / beta - 1.0).collect();
    predicted.push(Complex::new(-1.0, 0.0));
    let computed = full_spectrum(&j)?;
    let min_modulus = computed
        .iter()
        .map(|z| z.norm())
        .fold(f64::INFINITY, f64::min);
    Ok(JacobianCheck {
        max_abs_error: bottleneck_matching(&predicted, &computed),
        min_modulus,
        beta,
        jacobian_spectrum: computed,
    })
}

/// Smallest `t` such that a perfect matching exists between `a` and `b` using
/// only pairs at distance at most `t`.
pub fn bottleneck_matching(a: &[Complex<f64>], b: &[Complex<f64>]) -> f64 {
    let n = a.len();
    assert_eq!(n, b.len(), "matched sets must have equal size");
    if n == 0 {
        return 0.0;
    }
    let dist: Vec<Vec<f64>> = a
        .iter()
        .map(|x| b.iter().map(|y| (x - y).norm()).collect())
        .collect();
    let mut candidates: Vec<f64> = dist.iter().flatten().copied().collect();
    candidates.sort_by(f64::total_cmp);
    candidates.dedup();
    let (mut lo, mut hi) = (0, candidates.len() - 1);
    while lo < hi {
        let mid = (lo + hi) / 2;
        if has_perfect_matching(&dist, candidates[mid]) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    candidates[lo]
}

fn has_perfect_matching(dist: &[Vec<f64>], limit: f64) -> bool {
    let n = dist.len();
    let mut owner = vec![usize::MAX; n];
    (0..n).all(|u| {
        let mut seen = vec![false; n];
        augment(u, dist, limit, &mut owner, &mut seen)
    })
}

fn augment(
    u: usize,
    dist: &[Vec<f64>],
    limit: f64,
    owner: &mut [usize],
    seen: &mut [bool],
) -> bool {
    for v in 0..dist.len() {
        if dist[u][v] <= limit && !seen[v] {
            seen[v] = true;
            if owner[v] == usize::MAX || augment(owner[v], dist, limit, owner, seen) {
                owner[v] = u;
                return true;
            }
        }
    }
    false
}
