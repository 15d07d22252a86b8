use super::dt::CdfRow;
use super::{check_square, is_irreducible, ImplicitChain, Transition, ROW_SUM_SLACK};
use crate::error::{Error, Result};
use nalgebra::DMatrix;
use rand::Rng;
use rand_distr::{Distribution, Exp1};

/// Continuous-time absorbing chain given by the rate matrix over its
/// transient states.
#[derive(Debug, Clone)]
pub struct AbsorbingChainCT {
    q: DMatrix<f64>,
    exit_rates: Vec<f64>,
    jumps: Vec<CdfRow>,
}

impl AbsorbingChainCT {
    /// Validates non-negative off-diagonal rates, negative diagonal, row sums
    /// at most zero with at least one strictly negative, and irreducibility of
    /// the jump structure.
    pub fn new(q: DMatrix<f64>) -> Result<Self> {
        let d = check_square(&q)?;
        for i in 0..d {
            for j in 0..d {
                if i != j && q[(i, j)] < 0.0 {
                    return Err(Error::InvalidChain(format!(
                        "negative rate q[{i},{j}] = {}",
                        q[(i, j)]
                    )));
                }
            }
            if q[(i, i)] >= 0.0 {
                return Err(Error::InvalidChain(format!(
                    "diagonal rate q[{i},{i}] must be negative"
                )));
            }
        }
        let sums: Vec<f64> = q.row_iter().map(|r| r.sum()).collect();
        let scale = |i: usize| (-q[(i, i)]).max(1.0);
        if let Some(i) = (0..d).find(|&i| sums[i] > ROW_SUM_SLACK * scale(i)) {
            return Err(Error::InvalidChain(format!(
                "row {i} of the rate matrix sums to {} > 0",
                sums[i]
            )));
        }
        if (0..d).all(|i| sums[i] >= -ROW_SUM_SLACK * scale(i)) {
            return Err(Error::InvalidChain(
                "no state has an absorption rate".into(),
            ));
        }
        if !is_irreducible(&q) {
            return Err(Error::InvalidChain("jump structure is reducible".into()));
        }
        let exit_rates: Vec<f64> = (0..d).map(|i| -q[(i, i)]).collect();
        let jumps = (0..d)
            .map(|i| {
                CdfRow::new(
                    (0..d)
                        .filter(|&j| j != i)
                        .map(|j| (j, q[(i, j)] / exit_rates[i])),
                )
            })
            .collect();
        Ok(Self {
            q,
            exit_rates,
            jumps,
        })
    }

    pub fn dim(&self) -> usize {
        self.q.nrows()
    }

    pub fn q(&self) -> &DMatrix<f64> {
        &self.q
    }

    /// Total rate of leaving `state`, `-q_ii`.
    pub fn exit_rate(&self, state: usize) -> f64 {
        self.exit_rates[state]
    }

    /// Rate of jumping from `state` straight to absorption.
    pub fn absorb_rate(&self, state: usize) -> f64 {
        (-self.q.row(state).sum()).max(0.0)
    }

    /// Exponential holding time followed by one jump.
    #[inline]
    pub fn step<R: Rng + ?Sized>(&self, state: usize, rng: &mut R) -> (Transition, f64) {
        let hold: f64 = Exp1.sample(rng);
        let next = self.jumps[state].pick(rng.gen());
        (next, hold / self.exit_rates[state])
    }
}

impl ImplicitChain for AbsorbingChainCT {
    fn dim(&self) -> usize {
        self.dim()
    }

    fn sample_step<R: Rng + ?Sized>(&self, state: usize, rng: &mut R) -> (Transition, f64) {
        self.step(state, rng)
    }
}
