use super::{check_square, is_irreducible, ImplicitChain, Transition, ROW_SUM_SLACK};
use crate::error::{Error, Result};
use nalgebra::DMatrix;
use rand::Rng;

/// Cumulative transition probabilities over the nonzero entries of one row.
/// Absorption takes whatever mass lies above the last cumulative value.
#[derive(Debug, Clone)]
pub(crate) struct CdfRow {
    targets: Vec<usize>,
    cumulative: Vec<f64>,
}

impl CdfRow {
    pub(crate) fn new(weights: impl Iterator<Item = (usize, f64)>) -> Self {
        let mut targets = Vec::new();
        let mut cumulative = Vec::new();
        let mut acc = 0.0;
        for (j, w) in weights {
            if w > 0.0 {
                acc += w;
                targets.push(j);
                cumulative.push(acc);
            }
        }
        Self {
            targets,
            cumulative,
        }
    }

    #[inline]
    pub(crate) fn pick(&self, u: f64) -> Transition {
        match self.cumulative.iter().position(|&c| u < c) {
            Some(k) => Transition::To(self.targets[k]),
            None => Transition::Absorbed,
        }
    }
}

/// Discrete-time absorbing chain given by its substochastic transient block.
#[derive(Debug, Clone)]
pub struct AbsorbingChainDT {
    q: DMatrix<f64>,
    rows: Vec<CdfRow>,
}

impl AbsorbingChainDT {
    /// Validates entries in `[0, 1]`, row sums at most one with at least one
    /// strictly below, and irreducibility of the nonzero pattern.
    pub fn new(q: DMatrix<f64>) -> Result<Self> {
        let d = check_square(&q)?;
        if q.iter()
            .any(|&x| !(-ROW_SUM_SLACK..=1.0 + ROW_SUM_SLACK).contains(&x))
        {
            return Err(Error::InvalidChain(
                "transition probabilities must lie in [0, 1]".into(),
            ));
        }
        let mut q = q;
        q.iter_mut().for_each(|x| *x = x.clamp(0.0, 1.0));
        let sums: Vec<f64> = q.row_iter().map(|r| r.sum()).collect();
        if let Some(i) = sums.iter().position(|&s| s > 1.0 + ROW_SUM_SLACK) {
            return Err(Error::InvalidChain(format!(
                "row {i} sums to {} > 1",
                sums[i]
            )));
        }
        if sums.iter().all(|&s| s >= 1.0 - ROW_SUM_SLACK) {
            return Err(Error::InvalidChain(
                "no row leaks mass to absorption; the block is stochastic".into(),
            ));
        }
        if !is_irreducible(&q) {
            return Err(Error::InvalidChain("transient block is reducible".into()));
        }
        let rows = (0..d)
            .map(|i| CdfRow::new((0..d).map(|j| (j, q[(i, j)]))))
            .collect();
        Ok(Self { q, rows })
    }

    pub fn dim(&self) -> usize {
        self.q.nrows()
    }

    pub fn q(&self) -> &DMatrix<f64> {
        &self.q
    }

    /// `1 - sum_j Q[i, j]`.
    pub fn absorb_prob(&self, state: usize) -> f64 {
        (1.0 - self.q.row(state).sum()).max(0.0)
    }

    /// One transition from `state` using a single uniform draw.
    #[inline]
    pub fn step<R: Rng + ?Sized>(&self, state: usize, rng: &mut R) -> Transition {
        self.rows[state].pick(rng.gen())
    }
}

impl ImplicitChain for AbsorbingChainDT {
    fn dim(&self) -> usize {
        self.dim()
    }

    fn sample_step<R: Rng + ?Sized>(&self, state: usize, rng: &mut R) -> (Transition, f64) {
        (self.step(state, rng), 1.0)
    }
}
