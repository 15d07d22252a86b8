use rand::Rng;

/// Outcome of one transition out of a transient state.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Transition {
    To(usize),
    Absorbed,
}

/// A chain known only through a one-step sampler, for state spaces too large
/// to hold `Q` in memory.
///
/// Contract: the result is a deterministic function of `state` and the
/// position of `rng`, and absorption is reachable from every state. The
/// holding time is `1.0` for discrete-time chains.
pub trait ImplicitChain {
    fn dim(&self) -> usize;

    fn sample_step<R: Rng + ?Sized>(&self, state: usize, rng: &mut R) -> (Transition, f64);
}
