use super::{EstimatorState, StepSchedule, Variant};
use crate::error::{check_dim, domain, Error, Result};
use crate::models::ProbabilityVector;
use crate::tour::{Tour, TourSampler, DEFAULT_MAX_STEPS};
use rand::Rng;

/// Upper bound on recorded points per run.
pub const MAX_RECORDED_POINTS: usize = 10_000;

/// Which tour counts `n` are reported to the sink.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RecordSchedule {
    /// Rounded powers `10^(j / per_decade)`, deduplicated.
    LogSpaced {
        per_decade: u32,
    },
    Every(u64),
}

impl Default for RecordSchedule {
    fn default() -> Self {
        RecordSchedule::LogSpaced { per_decade: 25 }
    }
}

impl RecordSchedule {
    /// Increasing tour counts in `1..=n_tours`, always ending at `n_tours`.
    pub fn points(&self, n_tours: u64) -> Result<Vec<u64>> {
        if n_tours == 0 {
            return Ok(Vec::new());
        }
        let mut points = Vec::new();
        match *self {
            RecordSchedule::LogSpaced { per_decade } => {
                if per_decade == 0 {
                    return Err(domain(
                        "log-spaced recording needs at least one point per decade",
                    ));
                }
                let mut j = 0u32;
                loop {
                    let n = 10f64.powf(j as f64 / per_decade as f64).round() as u64;
                    if n >= n_tours {
                        break;
                    }
                    if points.last() != Some(&n) {
                        points.push(n);
                    }
                    j += 1;
                }
            }
            RecordSchedule::Every(stride) => {
                if stride == 0 {
                    return Err(domain("record stride must be positive"));
                }
                points.extend((1..).map(|k| k * stride).take_while(|&n| n < n_tours));
            }
        }
        points.push(n_tours);
        if points.len() > MAX_RECORDED_POINTS {
            return Err(Error::Contract(format!(
                "recording schedule yields {} points, more than {MAX_RECORDED_POINTS}",
                points.len()
            )));
        }
        Ok(points)
    }
}

#[derive(Debug, Clone)]
pub struct RunOptions {
    pub variant: Variant,
    /// Steps for the projected variants; the vanilla recursion always uses
    /// `1 / (n + 1)`.
    pub schedule: StepSchedule,
    /// Defaults to the uniform law on the transient states.
    pub mu0: Option<ProbabilityVector>,
    pub t0: f64,
    pub n_tours: u64,
    /// First iterate index entering the Polyak mean. `None` means
    /// `ceil(0.1 * n_tours)`; `Some(0)` averages from the first iterate.
    pub burn_in: Option<u64>,
    pub max_tour_steps: u64,
    pub record: RecordSchedule,
}

impl RunOptions {
    pub fn new(variant: Variant, n_tours: u64) -> Self {
        Self {
            variant,
            schedule: StepSchedule::default(),
            mu0: None,
            t0: 1.0,
            n_tours,
            burn_in: None,
            max_tour_steps: DEFAULT_MAX_STEPS,
            record: RecordSchedule::default(),
        }
    }

    pub fn effective_burn_in(&self) -> u64 {
        self.burn_in
            .unwrap_or_else(|| (self.n_tours as f64 * 0.1).ceil() as u64)
    }
}

/// What the sink sees at each recorded tour count.
#[derive(Debug, Clone)]
pub struct Snapshot<'a> {
    pub n: u64,
    pub mu: &'a ProbabilityVector,
    pub t: f64,
    /// Polyak mean over the window, once non-empty.
    pub nu: Option<ProbabilityVector>,
    pub variant: Variant,
}

impl Snapshot<'_> {
    /// The variant's reported estimate at this point.
    pub fn estimate(&self) -> &ProbabilityVector {
        match (&self.nu, self.variant) {
            (Some(nu), Variant::ProjectedAvg) => nu,
            _ => self.mu,
        }
    }
}

/// Alternates tour sampling (started from the current iterate) and updates
/// for `n_tours` tours, reporting recorded points to `sink`.
pub fn run_estimator<C, R, F>(
    chain: &C,
    opts: &RunOptions,
    rng: &mut R,
    mut sink: F,
) -> Result<EstimatorState>
where
    C: TourSampler + ?Sized,
    R: Rng + ?Sized,
    F: FnMut(&Snapshot<'_>),
{
    let d = chain.dim();
    let mu0 = match &opts.mu0 {
        Some(mu) => {
            check_dim(d, mu.dim())?;
            mu.clone()
        }
        None => ProbabilityVector::uniform(d)?,
    };
    let mut state = EstimatorState::new(opts.variant, mu0, opts.t0, opts.effective_burn_in())?;
    let points = opts.record.points(opts.n_tours)?;
    let mut next = points.iter().copied().peekable();
    let mut tour = Tour::empty(d);
    for _ in 0..opts.n_tours {
        chain.sample_into(state.mu(), rng, opts.max_tour_steps, &mut tour)?;
        let eps = opts.schedule.step(state.n());
        state.advance(&tour, eps)?;
        if next.peek() == Some(&state.n()) {
            next.next();
            let nu = if state.average().count() > 0 {
                state.average().mean().ok()
            } else {
                None
            };
            sink(&Snapshot {
                n: state.n(),
                mu: state.mu(),
                t: state.t(),
                nu,
                variant: opts.variant,
            });
        }
    }
    Ok(state)
}
