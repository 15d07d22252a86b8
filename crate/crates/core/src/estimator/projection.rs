use crate::error::{Error, Result};
use crate::models::ProbabilityVector;

/// Euclidean projection onto the probability simplex.
///
/// Sort descending, take the largest `k` with
/// `u_k > (sum_{i<=k} u_i - 1) / k`, and clip `v - theta` at zero with that
/// threshold `theta`. Only the multiset of values enters `theta`, so equal
/// inputs map to equal outputs whatever their positions.
pub fn project_simplex(v: &[f64]) -> Result<ProbabilityVector> {
    if v.is_empty() {
        return Err(Error::Contract("cannot project an empty vector".into()));
    }
    if v.iter().any(|x| !x.is_finite()) {
        return Err(Error::Contract(
            "cannot project a vector with non-finite entries".into(),
        ));
    }
    let mut u = v.to_vec();
    u.sort_by(|a, b| b.total_cmp(a));
    let mut acc = 0.0;
    let mut theta = 0.0;
    for (k, &uk) in u.iter().enumerate() {
        acc += uk;
        let candidate = (acc - 1.0) / (k + 1) as f64;
        if uk > candidate {
            theta = candidate;
        } else {
            break;
        }
    }
    let out: Vec<f64> = v.iter().map(|x| (x - theta).max(0.0)).collect();
    ProbabilityVector::from_weights(out)
}
