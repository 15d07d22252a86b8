//! The three chain families used by the reproduction experiments.

use super::{AbsorbingChainCT, AbsorbingChainDT};
use crate::error::{domain, Result};
use nalgebra::DMatrix;

/// Two transient states that each move to either state with probability
/// `(1 - epsilon) / 2` and absorb with probability `epsilon`.
pub fn make_loopy_chain(epsilon: f64) -> Result<AbsorbingChainDT> {
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(domain(format!(
            "loopy chain needs 0 < epsilon < 1, got {epsilon}"
        )));
    }
    let p = (1.0 - epsilon) / 2.0;
    AbsorbingChainDT::new(DMatrix::from_element(2, 2, p))
}

/// Jump chain of an M/M/1 queue with room for `capacity` customers, absorbed
/// when the queue empties.
///
/// Transient state `i` (0-based) holds `i + 1` customers. Arrivals win with
/// probability `rho / (1 + rho)`; at capacity an arrival is lost and the chain
/// stays put.
pub fn make_mm1k_chain(rho: f64, capacity: usize) -> Result<AbsorbingChainDT> {
    if !(rho > 0.0 && rho.is_finite()) {
        return Err(domain(format!(
            "traffic intensity must be positive, got {rho}"
        )));
    }
    if capacity == 0 {
        return Err(domain("capacity must be at least 1"));
    }
    let up = rho / (1.0 + rho);
    let down = 1.0 / (1.0 + rho);
    let mut q = DMatrix::zeros(capacity, capacity);
    for i in 0..capacity {
        if i + 1 < capacity {
            q[(i, i + 1)] = up;
        } else {
            q[(i, i)] = up;
        }
        if i > 0 {
            q[(i, i - 1)] = down;
        }
    }
    AbsorbingChainDT::new(q)
}

/// Contact process on the complete graph with `n_nodes` vertices, lumped to
/// the number of infected nodes `k = 1..=n_nodes`.
///
/// Infection rate `lambda * k * (n - k) / (n - 1)`, recovery rate `k`.
pub fn make_contact_complete(n_nodes: usize, lambda: f64) -> Result<AbsorbingChainCT> {
    if n_nodes < 2 {
        return Err(domain("contact process needs at least 2 nodes"));
    }
    if !(lambda > 0.0 && lambda.is_finite()) {
        return Err(domain(format!(
            "infection rate must be positive, got {lambda}"
        )));
    }
    let n = n_nodes as f64;
    let mut q = DMatrix::zeros(n_nodes, n_nodes);
    for idx in 0..n_nodes {
        let k = (idx + 1) as f64;
        let birth = lambda * k * (n - k) / (n - 1.0);
        let death = k;
        if idx + 1 < n_nodes {
            q[(idx, idx + 1)] = birth;
        }
        if idx > 0 {
            q[(idx, idx - 1)] = death;
        }
        q[(idx, idx)] = -(birth + death);
    }
    AbsorbingChainCT::new(q)
}
