use super::project_simplex;
use crate::error::{check_dim, domain, Error, Result};
use crate::models::ProbabilityVector;
use crate::tour::Tour;
use std::fmt;
use std::str::FromStr;

/// Largest tolerated `|sum(mu) - 1|` before renormalization.
pub const MAX_SIMPLEX_DRIFT: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variant {
    /// Cumulative empirical occupancy with step `1 / (n + 1)` and the running
    /// lifetime mean in the denominator.
    Vanilla,
    /// `Pi_H[mu + eps_n (occ - tau mu)]` with a [`StepSchedule`](super::StepSchedule).
    Projected,
    /// The projected recursion, reporting the running mean of its iterates.
    ProjectedAvg,
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::Vanilla => "vanilla",
            Variant::Projected => "projected",
            Variant::ProjectedAvg => "projected_avg",
        })
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "vanilla" => Ok(Variant::Vanilla),
            "projected" => Ok(Variant::Projected),
            "projected_avg" | "projected-avg" | "polyak" => Ok(Variant::ProjectedAvg),
            other => Err(Error::Parse(format!("unknown variant `{other}`"))),
        }
    }
}

/// Running mean of the iterates `mu_k` for `k >= start`.
#[derive(Debug, Clone)]
pub struct PolyakAverage {
    start: u64,
    sum: Vec<f64>,
    count: u64,
}

impl PolyakAverage {
    /// `burn_in = 0` averages from the first iterate `mu_1`.
    pub fn new(dim: usize, burn_in: u64) -> Self {
        Self {
            start: burn_in.max(1),
            sum: vec![0.0; dim],
            count: 0,
        }
    }

    pub fn start(&self) -> u64 {
        self.start
    }

    pub fn count(&self) -> u64 {
        self.count
    }

    fn push(&mut self, k: u64, mu: &[f64]) {
        if k >= self.start {
            self.sum.iter_mut().zip(mu).for_each(|(s, m)| *s += m);
            self.count += 1;
        }
    }

    pub fn mean(&self) -> Result<ProbabilityVector> {
        if self.count == 0 {
            return Err(Error::Contract(format!(
                "averaging window (iterates from {}) is still empty",
                self.start
            )));
        }
        ProbabilityVector::from_weights(self.sum.clone())
    }
}

/// State of one stochastic-approximation run: the iterate `mu_n`, the running
/// lifetime mean `T_n`, the tour count `n` and the Polyak accumulator.
#[derive(Debug, Clone)]
pub struct EstimatorState {
    mu: ProbabilityVector,
    t: f64,
    n: u64,
    variant: Variant,
    average: PolyakAverage,
    scratch: Vec<f64>,
}

impl EstimatorState {
    pub fn new(variant: Variant, mu0: ProbabilityVector, t0: f64, burn_in: u64) -> Result<Self> {
        if !(t0 >= 1.0 && t0.is_finite()) {
            return Err(domain(format!(
                "initial lifetime estimate must be at least 1, got {t0}"
            )));
        }
        let d = mu0.dim();
        Ok(Self {
            mu: mu0,
            t: t0,
            n: 0,
            variant,
            average: PolyakAverage::new(d, burn_in),
            scratch: vec![0.0; d],
        })
    }

    pub fn mu(&self) -> &ProbabilityVector {
        &self.mu
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn average(&self) -> &PolyakAverage {
        &self.average
    }

    /// The variant's reported estimate: the Polyak mean for `ProjectedAvg`
    /// once its window has started, the current iterate otherwise.
    pub fn estimate(&self) -> ProbabilityVector {
        match self.variant {
            Variant::ProjectedAvg if self.average.count > 0 => {
                self.average.mean().unwrap_or_else(|_| self.mu.clone())
            }
            _ => self.mu.clone(),
        }
    }

    fn check_tour(&self, tour: &Tour) -> Result<()> {
        check_dim(self.mu.dim(), tour.occupancy.len())?;
        if !(tour.tau > 0.0 && tour.tau.is_finite()) {
            return Err(Error::Contract(format!(
                "tour lifetime must be positive, got {}",
                tour.tau
            )));
        }
        Ok(())
    }

    /// `mu_{n+1} = mu_n + (occ - tau mu_n) / ((n + 1) T_n + tau)`, the
    /// cumulative empirical occupancy with `T_0` acting as the weight of
    /// `mu_0`.
    pub fn step_vanilla(&mut self, tour: &Tour) -> Result<()> {
        if self.variant != Variant::Vanilla {
            return Err(Error::Contract(format!(
                "vanilla step on a {} estimator",
                self.variant
            )));
        }
        self.check_tour(tour)?;
        let weight = 1.0 / ((self.n + 1) as f64 * self.t + tour.tau);
        let keep = (self.n + 1) as f64 * self.t * weight;
        for (m, occ) in self.mu.entries_mut().iter_mut().zip(&tour.occupancy) {
            *m = keep * *m + weight * occ;
        }
        self.finish(tour.tau)
    }

    /// `mu_{n+1} = Pi_H[mu_n (1 - eps tau) + eps occ]`; the projection runs
    /// only when some coordinate went negative.
    pub fn step_projected(&mut self, tour: &Tour, eps: f64) -> Result<()> {
        if self.variant == Variant::Vanilla {
            return Err(Error::Contract(
                "projected step on a vanilla estimator".into(),
            ));
        }
        if !(eps > 0.0 && eps.is_finite()) {
            return Err(domain(format!("step size must be positive, got {eps}")));
        }
        self.check_tour(tour)?;
        let shrink = 1.0 - eps * tour.tau;
        let mut feasible = true;
        for ((s, m), occ) in self
            .scratch
            .iter_mut()
            .zip(self.mu.as_slice())
            .zip(&tour.occupancy)
        {
            *s = shrink * m + eps * occ;
            feasible &= *s >= 0.0;
        }
        if feasible {
            self.mu.entries_mut().copy_from_slice(&self.scratch);
        } else {
            let drift = (self.scratch.iter().sum::<f64>() - 1.0).abs();
            if drift > MAX_SIMPLEX_DRIFT * tour.tau.max(1.0) {
                return Err(Error::SimplexDrift(drift));
            }
            self.mu = project_simplex(&self.scratch)?;
        }
        self.finish(tour.tau)
    }

    /// Update from a continuous-time tour (occupation times and lifetime).
    /// The recursion is the one of the estimator's variant; `eps` is ignored
    /// by the vanilla form.
    pub fn step_ct(&mut self, tour: &Tour, eps: f64) -> Result<()> {
        self.advance(tour, eps)
    }

    /// Applies the variant's recursion to one tour.
    pub fn advance(&mut self, tour: &Tour, eps: f64) -> Result<()> {
        match self.variant {
            Variant::Vanilla => self.step_vanilla(tour),
            Variant::Projected | Variant::ProjectedAvg => self.step_projected(tour, eps),
        }
    }

    fn finish(&mut self, tau: f64) -> Result<()> {
        let entries = self.mu.entries_mut();
        let total: f64 = entries.iter().sum();
        if (total - 1.0).abs() > MAX_SIMPLEX_DRIFT {
            return Err(Error::SimplexDrift((total - 1.0).abs()));
        }
        entries.iter_mut().for_each(|m| *m /= total);
        self.t += (tau - self.t) / (self.n + 2) as f64;
        self.n += 1;
        self.average.push(self.n, self.mu.as_slice());
        Ok(())
    }
}

/// Running mean of the iterates inside the averaging window.
pub fn polyak_average(state: &EstimatorState) -> Result<ProbabilityVector> {
    if state.n == 0 {
        return Err(Error::Contract("no iterates to average yet".into()));
    }
    state.average.mean()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tour(occupancy: Vec<f64>) -> Tour {
        let tau = occupancy.iter().sum();
        Tour {
            occupancy,
            tau,
            steps: tau as u64,
        }
    }

    fn pv(v: &[f64]) -> ProbabilityVector {
        ProbabilityVector::new(v.to_vec()).unwrap()
    }

    #[test]
    fn first_vanilla_step_matches_both_closed_forms() {
        let mut s = EstimatorState::new(Variant::Vanilla, pv(&[1.0, 0.0]), 1.0, 0).unwrap();
        s.step_vanilla(&tour(vec![2.0, 1.0])).unwrap();
        // mu_0 + (occ - tau mu_0) / (T_0 + tau)
        assert!(s.mu().linf_distance(&[0.75, 0.25]) < 1e-15);
        // (T_0 mu_0 + occ) / (T_0 + tau)
        assert!(s.mu().linf_distance(&[(1.0 + 2.0) / 4.0, 1.0 / 4.0]) < 1e-15);
        assert_eq!(s.t(), 2.0);
        assert_eq!(s.n(), 1);
    }

    #[test]
    fn vanilla_is_cumulative_empirical_distribution() {
        let tours = [
            vec![2.0, 1.0, 0.0],
            vec![0.0, 0.0, 4.0],
            vec![1.0, 1.0, 1.0],
            vec![0.0, 5.0, 0.0],
        ];
        let mut s = EstimatorState::new(Variant::Vanilla, pv(&[0.2, 0.3, 0.5]), 1.0, 0).unwrap();
        let mut counts = [0.2, 0.3, 0.5];
        let mut taus = vec![1.0];
        for occ in tours {
            let t = tour(occ);
            counts
                .iter_mut()
                .zip(&t.occupancy)
                .for_each(|(c, o)| *c += o);
            taus.push(t.tau);
            s.step_vanilla(&t).unwrap();
            let total: f64 = counts.iter().sum();
            let expected: Vec<f64> = counts.iter().map(|c| c / total).collect();
            assert!(s.mu().linf_distance(&expected) < 1e-14);
            let mean_tau = taus.iter().sum::<f64>() / taus.len() as f64;
            assert!((s.t() - mean_tau).abs() < 1e-12);
        }
    }

    #[test]
    fn zero_innovation_keeps_mu() {
        let mu = pv(&[0.25, 0.75]);
        for variant in [Variant::Vanilla, Variant::Projected] {
            let mut s = EstimatorState::new(variant, mu.clone(), 1.0, 0).unwrap();
            s.advance(&tour(vec![1.0, 3.0]), 0.1).unwrap();
            assert!(s.mu().linf_distance(mu.as_slice()) < 1e-15);
        }
    }

    #[test]
    fn projected_step_clips_onto_simplex() {
        // pre-point: (0.1, 0.9) (1 - 1.5) + 0.5 (0, 3) = (-0.05, 1.05)
        let mut s = EstimatorState::new(Variant::Projected, pv(&[0.1, 0.9]), 1.0, 0).unwrap();
        s.step_projected(&tour(vec![0.0, 3.0]), 0.5).unwrap();
        assert_eq!(s.mu().as_slice(), &[0.0, 1.0]);
    }

    #[test]
    fn projected_step_short_tour_is_plain_update() {
        let mut s = EstimatorState::new(Variant::Projected, pv(&[0.5, 0.5]), 1.0, 0).unwrap();
        s.step_projected(&tour(vec![2.0, 0.0]), 0.25).unwrap();
        assert!(s.mu().linf_distance(&[0.5 * 0.5 + 0.5, 0.5 * 0.5]) < 1e-15);
    }

    #[test]
    fn single_state_ct_never_moves() {
        let mut s = EstimatorState::new(Variant::Vanilla, pv(&[1.0]), 1.0, 0).unwrap();
        for tau in [0.3, 2.5, 0.01] {
            s.step_ct(
                &Tour {
                    occupancy: vec![tau],
                    tau,
                    steps: 1,
                },
                0.0,
            )
            .unwrap();
            assert_eq!(s.mu().as_slice(), &[1.0]);
        }
        assert!((s.t() - (1.0 + 0.3 + 2.5 + 0.01) / 4.0).abs() < 1e-15);
    }

    #[test]
    fn polyak_window() {
        let mut s = EstimatorState::new(Variant::ProjectedAvg, pv(&[1.0, 0.0]), 1.0, 0).unwrap();
        assert!(polyak_average(&s).is_err());
        s.step_projected(&tour(vec![1.0, 0.0]), 0.5).unwrap();
        // mu_1 = (1, 0); next tour drives mu_2 to (0, 1)
        s.step_projected(&tour(vec![0.0, 1.0]), 1.0).unwrap();
        assert_eq!(s.mu().as_slice(), &[0.0, 1.0]);
        assert_eq!(polyak_average(&s).unwrap().as_slice(), &[0.5, 0.5]);
        assert_eq!(s.estimate().as_slice(), &[0.5, 0.5]);

        let mut late = EstimatorState::new(Variant::ProjectedAvg, pv(&[1.0, 0.0]), 1.0, 5).unwrap();
        late.step_projected(&tour(vec![1.0, 0.0]), 0.5).unwrap();
        assert!(polyak_average(&late).is_err());
        assert_eq!(late.estimate().as_slice(), &[1.0, 0.0]);
    }

    #[test]
    fn contract_errors() {
        assert!(EstimatorState::new(Variant::Vanilla, pv(&[1.0]), 0.5, 0).is_err());
        let mut s = EstimatorState::new(Variant::Vanilla, pv(&[0.5, 0.5]), 1.0, 0).unwrap();
        assert!(matches!(
            s.step_vanilla(&tour(vec![1.0])),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(s.step_projected(&tour(vec![1.0, 0.0]), 0.1).is_err());
        let mut p = EstimatorState::new(Variant::Projected, pv(&[0.5, 0.5]), 1.0, 0).unwrap();
        assert!(p.step_vanilla(&tour(vec![1.0, 0.0])).is_err());
        assert!("bogus".parse::<Variant>().is_err());
        assert_eq!(
            "projected_avg".parse::<Variant>().unwrap(),
            Variant::ProjectedAvg
        );
    }
}
