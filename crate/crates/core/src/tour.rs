//! Simulation of single excursions from an initial law to absorption.

use crate::error::{check_dim, Error, Result};
use crate::models::{
    AbsorbingChainCT, AbsorbingChainDT, AnyChain, ChainKind, ImplicitChain, ProbabilityVector,
    Transition,
};
use rand::Rng;
use std::collections::BTreeMap;

/// Default cap on transitions per tour.
pub const DEFAULT_MAX_STEPS: u64 = 100_000_000;

/// One excursion to absorption.
///
/// For discrete-time chains `occupancy[i]` counts visits to `i` and `tau` is
/// the number of steps; for continuous-time chains both are times. In either
/// case `occupancy` sums to `tau`.
#[derive(Debug, Clone, PartialEq)]
pub struct Tour {
    pub occupancy: Vec<f64>,
    pub tau: f64,
    /// Number of transitions simulated, absorption included.
    pub steps: u64,
}

impl Tour {
    pub fn empty(dim: usize) -> Self {
        Self {
            occupancy: vec![0.0; dim],
            tau: 0.0,
            steps: 0,
        }
    }

    fn reset(&mut self, dim: usize) {
        self.occupancy.clear();
        self.occupancy.resize(dim, 0.0);
        self.tau = 0.0;
        self.steps = 0;
    }
}

/// A tour over a possibly huge state space, storing only visited states in
/// increasing state order.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseTour {
    pub occupancy: Vec<(usize, f64)>,
    pub tau: f64,
    pub steps: u64,
}

impl SparseTour {
    pub fn to_dense(&self, dim: usize) -> Tour {
        let mut occupancy = vec![0.0; dim];
        for &(i, t) in &self.occupancy {
            occupancy[i] = t;
        }
        Tour {
            occupancy,
            tau: self.tau,
            steps: self.steps,
        }
    }
}

/// A chain that can produce dense tours from an initial law.
pub trait TourSampler: Sync {
    fn dim(&self) -> usize;

    fn kind(&self) -> ChainKind;

    /// Overwrites `tour` with a fresh excursion started from a state drawn
    /// from `initial`.
    fn sample_into<R: Rng + ?Sized>(
        &self,
        initial: &ProbabilityVector,
        rng: &mut R,
        max_steps: u64,
        tour: &mut Tour,
    ) -> Result<()>;
}

fn walk<C: ImplicitChain, R: Rng + ?Sized>(
    chain: &C,
    start: usize,
    rng: &mut R,
    max_steps: u64,
    mut visit: impl FnMut(usize, f64),
) -> Result<(f64, u64)> {
    let mut state = start;
    let mut tau = 0.0;
    let mut steps = 0u64;
    loop {
        if steps == max_steps {
            return Err(Error::RunawayTour { cap: max_steps });
        }
        let (next, hold) = chain.sample_step(state, rng);
        visit(state, hold);
        tau += hold;
        steps += 1;
        match next {
            Transition::To(j) => state = j,
            Transition::Absorbed => return Ok((tau, steps)),
        }
    }
}

fn dense_tour<C: ImplicitChain, R: Rng + ?Sized>(
    chain: &C,
    initial: &ProbabilityVector,
    rng: &mut R,
    max_steps: u64,
    tour: &mut Tour,
) -> Result<()> {
    check_dim(chain.dim(), initial.dim())?;
    tour.reset(chain.dim());
    let start = initial.sample_index(rng);
    let occupancy = &mut tour.occupancy;
    let (tau, steps) = walk(chain, start, rng, max_steps, |s, h| occupancy[s] += h)?;
    tour.tau = tau;
    tour.steps = steps;
    Ok(())
}

impl TourSampler for AbsorbingChainDT {
    fn dim(&self) -> usize {
        AbsorbingChainDT::dim(self)
    }

    fn kind(&self) -> ChainKind {
        ChainKind::Dt
    }

    fn sample_into<R: Rng + ?Sized>(
        &self,
        initial: &ProbabilityVector,
        rng: &mut R,
        max_steps: u64,
        tour: &mut Tour,
    ) -> Result<()> {
        dense_tour(self, initial, rng, max_steps, tour)
    }
}

impl TourSampler for AbsorbingChainCT {
    fn dim(&self) -> usize {
        AbsorbingChainCT::dim(self)
    }

    fn kind(&self) -> ChainKind {
        ChainKind::Ct
    }

    fn sample_into<R: Rng + ?Sized>(
        &self,
        initial: &ProbabilityVector,
        rng: &mut R,
        max_steps: u64,
        tour: &mut Tour,
    ) -> Result<()> {
        dense_tour(self, initial, rng, max_steps, tour)
    }
}

impl TourSampler for AnyChain {
    fn dim(&self) -> usize {
        AnyChain::dim(self)
    }

    fn kind(&self) -> ChainKind {
        AnyChain::kind(self)
    }

    fn sample_into<R: Rng + ?Sized>(
        &self,
        initial: &ProbabilityVector,
        rng: &mut R,
        max_steps: u64,
        tour: &mut Tour,
    ) -> Result<()> {
        match self {
            AnyChain::Dt(c) => dense_tour(c, initial, rng, max_steps, tour),
            AnyChain::Ct(c) => dense_tour(c, initial, rng, max_steps, tour),
        }
    }
}

/// Visit counts and step count of one discrete-time tour with `X_0 ~ initial`.
pub fn sample_tour_dt<R: Rng + ?Sized>(
    chain: &AbsorbingChainDT,
    initial: &ProbabilityVector,
    rng: &mut R,
) -> Result<Tour> {
    let mut tour = Tour::empty(chain.dim());
    chain.sample_into(initial, rng, DEFAULT_MAX_STEPS, &mut tour)?;
    Ok(tour)
}

/// Occupation times and lifetime of one continuous-time tour with
/// `X_0 ~ initial`.
pub fn sample_tour_ct<R: Rng + ?Sized>(
    chain: &AbsorbingChainCT,
    initial: &ProbabilityVector,
    rng: &mut R,
) -> Result<Tour> {
    let mut tour = Tour::empty(chain.dim());
    chain.sample_into(initial, rng, DEFAULT_MAX_STEPS, &mut tour)?;
    Ok(tour)
}

/// Runs `chain` from `initial_state` until absorption, failing once
/// `max_steps` transitions have been taken.
pub fn sample_tour_implicit<C: ImplicitChain, R: Rng + ?Sized>(
    chain: &C,
    initial_state: usize,
    rng: &mut R,
    max_steps: u64,
) -> Result<SparseTour> {
    if initial_state >= chain.dim() {
        return Err(Error::Contract(format!(
            "initial state {initial_state} outside 0..{}",
            chain.dim()
        )));
    }
    let mut occupancy = BTreeMap::new();
    let (tau, steps) = walk(chain, initial_state, rng, max_steps, |s, h| {
        *occupancy.entry(s).or_insert(0.0) += h;
    })?;
    Ok(SparseTour {
        occupancy: occupancy.into_iter().collect(),
        tau,
        steps,
    })
}
