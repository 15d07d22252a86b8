//! Absorbing Markov chains restricted to their transient states.
//!
//! A chain is stored as its transient block `Q`: a substochastic matrix for
//! discrete time, a rate matrix for continuous time. Absorption is implicit in
//! the missing row mass (DT) or the negative row sums (CT).

mod any;
mod ct;
mod dt;
mod families;
mod implicit;
mod text;
mod transforms;

pub use any::AnyChain;
pub use ct::AbsorbingChainCT;
pub use dt::AbsorbingChainDT;
pub use families::{make_contact_complete, make_loopy_chain, make_mm1k_chain};
pub use implicit::{ImplicitChain, Transition};
pub use text::{parse_chain, write_chain};
pub use transforms::{doeblinize_ct, doeblinize_dt, uniformize};

use crate::error::{domain, Error, Result};
use nalgebra::DMatrix;
use rand::Rng;
use std::collections::VecDeque;
use std::fmt;

/// Slack allowed on row-sum and entry-range checks during construction.
pub const ROW_SUM_SLACK: f64 = 1e-12;

/// Whether a transient block holds transition probabilities or rates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ChainKind {
    Dt,
    Ct,
}

impl fmt::Display for ChainKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ChainKind::Dt => "dt",
            ChainKind::Ct => "ct",
        })
    }
}

/// A point on the probability simplex `{x >= 0, sum x = 1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbabilityVector(Vec<f64>);

impl ProbabilityVector {
    /// Accepts entries that already sum to one (within `1e-9`) and rescales
    /// away the remaining roundoff.
    pub fn new(entries: Vec<f64>) -> Result<Self> {
        if entries.is_empty() {
            return Err(domain("probability vector must be non-empty"));
        }
        if entries.iter().any(|p| !p.is_finite() || *p < 0.0) {
            return Err(domain(
                "probability entries must be finite and non-negative",
            ));
        }
        let total: f64 = entries.iter().sum();
        if (total - 1.0).abs() > 1e-9 {
            return Err(domain(format!("probability entries sum to {total}, not 1")));
        }
        Ok(Self::rescaled(entries, total))
    }

    /// Normalizes non-negative weights with a positive total.
    pub fn from_weights(weights: Vec<f64>) -> Result<Self> {
        if weights.is_empty() {
            return Err(domain("weight vector must be non-empty"));
        }
        if weights.iter().any(|w| !w.is_finite() || *w < 0.0) {
            return Err(domain("weights must be finite and non-negative"));
        }
        let total: f64 = weights.iter().sum();
        if total <= 0.0 {
            return Err(domain("weights must have positive total mass"));
        }
        Ok(Self::rescaled(weights, total))
    }

    pub fn uniform(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(domain("dimension must be at least 1"));
        }
        Ok(Self(vec![1.0 / dim as f64; dim]))
    }

    pub fn point_mass(dim: usize, state: usize) -> Result<Self> {
        if state >= dim {
            return Err(domain(format!(
                "state {state} out of range for dimension {dim}"
            )));
        }
        let mut v = vec![0.0; dim];
        v[state] = 1.0;
        Ok(Self(v))
    }

    fn rescaled(mut entries: Vec<f64>, total: f64) -> Self {
        if total != 1.0 {
            entries.iter_mut().for_each(|p| *p /= total);
        }
        Self(entries)
    }

    /// Wraps entries the caller has already normalized.
    pub(crate) fn from_normalized_unchecked(entries: Vec<f64>) -> Self {
        debug_assert!((entries.iter().sum::<f64>() - 1.0).abs() < 1e-9);
        Self(entries)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// Raw access for in-place updates; callers restore the invariant.
    pub(crate) fn entries_mut(&mut self) -> &mut Vec<f64> {
        &mut self.0
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.0
    }

    /// Inverse-CDF draw of a state index from one uniform variate.
    pub fn sample_index<R: Rng + ?Sized>(&self, rng: &mut R) -> usize {
        let u: f64 = rng.gen();
        let mut acc = 0.0;
        for (i, p) in self.0.iter().enumerate() {
            acc += p;
            if u < acc {
                return i;
            }
        }
        // u landed in the roundoff gap above the last partial sum
        self.0.iter().rposition(|p| *p > 0.0).unwrap_or(0)
    }

    pub fn l1_distance(&self, other: &[f64]) -> f64 {
        self.0.iter().zip(other).map(|(a, b)| (a - b).abs()).sum()
    }

    pub fn l2_sq_distance(&self, other: &[f64]) -> f64 {
        self.0
            .iter()
            .zip(other)
            .map(|(a, b)| (a - b) * (a - b))
            .sum()
    }

    pub fn linf_distance(&self, other: &[f64]) -> f64 {
        self.0
            .iter()
            .zip(other)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

impl AsRef<[f64]> for ProbabilityVector {
    fn as_ref(&self) -> &[f64] {
        &self.0
    }
}

/// Adjacency lists over the nonzero pattern of `q`, skipping the diagonal.
fn adjacency(q: &DMatrix<f64>) -> Vec<Vec<usize>> {
    let d = q.nrows();
    (0..d)
        .map(|i| (0..d).filter(|&j| j != i && q[(i, j)] != 0.0).collect())
        .collect()
}

fn reaches_all(adj: &[Vec<usize>]) -> bool {
    let mut seen = vec![false; adj.len()];
    let mut queue = VecDeque::from([0usize]);
    seen[0] = true;
    while let Some(u) = queue.pop_front() {
        for &v in &adj[u] {
            if !seen[v] {
                seen[v] = true;
                queue.push_back(v);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// Strong connectivity of the off-diagonal nonzero pattern, by forward and
/// backward breadth-first search from state 0.
pub(crate) fn is_irreducible(q: &DMatrix<f64>) -> bool {
    let forward = adjacency(q);
    let mut backward = vec![Vec::new(); forward.len()];
    for (u, outs) in forward.iter().enumerate() {
        for &v in outs {
            backward[v].push(u);
        }
    }
    reaches_all(&forward) && reaches_all(&backward)
}

/// Period of an irreducible nonnegative matrix: the gcd over edges `u -> v` of
/// `level(u) + 1 - level(v)`, with levels from a BFS rooted at state 0.
pub(crate) fn period(q: &DMatrix<f64>) -> usize {
    let d = q.nrows();
    let mut level = vec![usize::MAX; d];
    level[0] = 0;
    let mut queue = VecDeque::from([0usize]);
    let mut g = 0usize;
    while let Some(u) = queue.pop_front() {
        for v in 0..d {
            if q[(u, v)] == 0.0 {
                continue;
            }
            if level[v] == usize::MAX {
                level[v] = level[u] + 1;
                queue.push_back(v);
            } else {
                g = gcd(g, (level[u] + 1).abs_diff(level[v]));
            }
        }
    }
    g
}

fn gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub(crate) fn check_square(q: &DMatrix<f64>) -> Result<usize> {
    if q.nrows() != q.ncols() {
        return Err(Error::InvalidChain(format!(
            "transient block is {}x{}, not square",
            q.nrows(),
            q.ncols()
        )));
    }
    if q.nrows() == 0 {
        return Err(Error::InvalidChain("transient block is empty".into()));
    }
    if q.iter().any(|x| !x.is_finite()) {
        return Err(Error::InvalidChain(
            "transient block has non-finite entries".into(),
        ));
    }
    Ok(q.nrows())
}
