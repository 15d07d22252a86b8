use super::{ChainSpec, Family, MseCurve};
use crate::error::{Error, Result};
use crate::estimator::{run_estimator, RecordSchedule, RunOptions, StepSchedule, Variant};
use crate::models::AnyChain;
use crate::spectral::SpectralReport;
use crate::tour::DEFAULT_MAX_STEPS;
use rand::SeedableRng;
use rand_xoshiro::Xoshiro256PlusPlus;
use rayon::prelude::*;
use std::io::{self, Write};

/// Largest dimension for which ground truth is computed.
pub const MAX_ORACLE_DIM: usize = 512;

/// The RNG behind every run. Replicate `i` of a run seeded `s` uses seed
/// `s + i`.
pub type ReplicateRng = Xoshiro256PlusPlus;

pub fn replicate_rng(seed: u64, replicate: u64) -> ReplicateRng {
    Xoshiro256PlusPlus::seed_from_u64(seed.wrapping_add(replicate))
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub chain: ChainSpec,
    pub variant: Variant,
    pub schedule: StepSchedule,
    pub n_tours: u64,
    pub replicates: u64,
    pub seed: u64,
    pub burn_in: Option<u64>,
    pub record: RecordSchedule,
    pub record_mu: bool,
    pub max_tour_steps: u64,
}

impl RunConfig {
    pub fn new(
        chain: ChainSpec,
        variant: Variant,
        n_tours: u64,
        replicates: u64,
        seed: u64,
    ) -> Self {
        Self {
            chain,
            variant,
            schedule: StepSchedule::default(),
            n_tours,
            replicates,
            seed,
            burn_in: None,
            record: RecordSchedule::default(),
            record_mu: false,
            max_tour_steps: DEFAULT_MAX_STEPS,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.replicates == 0 || self.n_tours == 0 {
            return Err(Error::Domain(
                "replicates and tours must both be at least 1".into(),
            ));
        }
        self.record.points(self.n_tours).map(|_| ())
    }

    fn options(&self) -> RunOptions {
        RunOptions {
            variant: self.variant,
            schedule: self.schedule,
            mu0: None,
            t0: 1.0,
            n_tours: self.n_tours,
            burn_in: self.burn_in,
            max_tour_steps: self.max_tour_steps,
            record: self.record,
        }
    }

    /// Step exponent actually in force: 1 for the vanilla recursion.
    pub fn effective_alpha(&self) -> f64 {
        match self.variant {
            Variant::Vanilla => 1.0,
            _ => self.schedule.alpha(),
        }
    }
}

/// One row of the aggregated curve, averaged over replicates.
#[derive(Debug, Clone, PartialEq)]
pub struct CurveRow {
    pub n: u64,
    /// Squared L2 error of the estimate; NaN when no oracle is available.
    pub mse_l2sq: f64,
    pub err_l1: f64,
    pub t_n: f64,
    /// Replicate mean of the estimate.
    pub mu: Vec<f64>,
}

#[derive(Debug, Clone)]
pub struct ExperimentResult {
    pub config: RunConfig,
    pub rows: Vec<CurveRow>,
    pub curve: MseCurve,
    pub oracle: Option<SpectralReport>,
    pub warning: Option<String>,
}

impl ExperimentResult {
    pub fn final_row(&self) -> Option<&CurveRow> {
        self.rows.last()
    }
}

struct Record {
    n: u64,
    estimate: Vec<f64>,
    t: f64,
}

pub fn run_experiment(config: &RunConfig) -> Result<ExperimentResult> {
    let chain = config.chain.build()?;
    run_experiment_on(&chain, config)
}

/// Runs `config.replicates` independent estimator runs on `chain` (in
/// parallel) and averages their errors against the spectral oracle.
pub fn run_experiment_on(chain: &AnyChain, config: &RunConfig) -> Result<ExperimentResult> {
    config.validate()?;
    let (oracle, warning) = if chain.dim() > MAX_ORACLE_DIM {
        (
            None,
            Some(format!(
                "dimension {} exceeds oracle limit {MAX_ORACLE_DIM}; mse disabled",
                chain.dim()
            )),
        )
    } else {
        match SpectralReport::compute(chain) {
            Ok(report) => (Some(report), None),
            Err(e) => (None, Some(format!("oracle failed ({e}); mse disabled"))),
        }
    };
    let opts = config.options();
    let runs: Vec<Vec<Record>> = (0..config.replicates)
        .into_par_iter()
        .map(|i| {
            let mut rng = replicate_rng(config.seed, i);
            let mut records = Vec::new();
            run_estimator(chain, &opts, &mut rng, |snap| {
                records.push(Record {
                    n: snap.n,
                    estimate: snap.estimate().as_slice().to_vec(),
                    t: snap.t,
                });
            })?;
            Ok(records)
        })
        .collect::<Result<_>>()?;

    let reference = oracle
        .as_ref()
        .map(|o| o.principal_left_vector.as_slice().to_vec());
    let reps = runs.len() as f64;
    let d = chain.dim();
    let rows: Vec<CurveRow> = (0..runs[0].len())
        .map(|k| {
            let mut row = CurveRow {
                n: runs[0][k].n,
                mse_l2sq: 0.0,
                err_l1: 0.0,
                t_n: 0.0,
                mu: vec![0.0; d],
            };
            for run in &runs {
                let rec = &run[k];
                debug_assert_eq!(rec.n, row.n);
                row.t_n += rec.t / reps;
                row.mu
                    .iter_mut()
                    .zip(&rec.estimate)
                    .for_each(|(m, e)| *m += e / reps);
                if let Some(r) = &reference {
                    let (l2, l1) = rec
                        .estimate
                        .iter()
                        .zip(r)
                        .fold((0.0, 0.0), |(l2, l1), (e, x)| {
                            (l2 + (e - x) * (e - x), l1 + (e - x).abs())
                        });
                    row.mse_l2sq += l2 / reps;
                    row.err_l1 += l1 / reps;
                }
            }
            if reference.is_none() {
                row.mse_l2sq = f64::NAN;
                row.err_l1 = f64::NAN;
            }
            row
        })
        .collect();
    let curve = if reference.is_some() {
        MseCurve::new(rows.iter().map(|r| (r.n, r.mse_l2sq)).collect())
    } else {
        MseCurve::default()
    };
    Ok(ExperimentResult {
        config: config.clone(),
        rows,
        curve,
        oracle,
        warning,
    })
}

/// CSV with a `#` header line, an optional slope/warning comment and columns
/// `n,mse_l2sq,err_l1,T_n[,mu_0..mu_{d-1}]`.
pub fn write_csv<W: Write + ?Sized>(result: &ExperimentResult, out: &mut W) -> io::Result<()> {
    let c = &result.config;
    writeln!(
        out,
        "# qsdkit v1, seed={}, chain={}, variant={}, alpha={}",
        c.seed,
        c.chain,
        c.variant,
        c.effective_alpha()
    )?;
    match result.curve.slope {
        Some(slope) => writeln!(
            out,
            "# slope={slope:?}, replicates={}, tours={}",
            c.replicates, c.n_tours
        )?,
        None => writeln!(
            out,
            "# slope=NA, replicates={}, tours={}",
            c.replicates, c.n_tours
        )?,
    }
    if let Some(w) = &result.warning {
        writeln!(out, "# warning: {w}")?;
    }
    write!(out, "n,mse_l2sq,err_l1,T_n")?;
    let d = result.rows.first().map_or(0, |r| r.mu.len());
    if c.record_mu {
        for i in 0..d {
            write!(out, ",mu_{i}")?;
        }
    }
    writeln!(out)?;
    for row in &result.rows {
        write!(
            out,
            "{},{:?},{:?},{:?}",
            row.n, row.mse_l2sq, row.err_l1, row.t_n
        )?;
        if c.record_mu {
            for x in &row.mu {
                write!(out, ",{x:?}")?;
            }
        }
        writeln!(out)?;
    }
    Ok(())
}

/// The three reproduction experiments with their pinned chain parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Preset {
    Loopy,
    Mm1,
    Contact,
}

impl Preset {
    pub const ALL: [Preset; 3] = [Preset::Loopy, Preset::Mm1, Preset::Contact];

    pub fn name(&self) -> &'static str {
        match self {
            Preset::Loopy => "loopy",
            Preset::Mm1 => "mm1",
            Preset::Contact => "contact",
        }
    }

    pub fn chain(&self) -> ChainSpec {
        match self {
            Preset::Loopy => ChainSpec::new(Family::Loopy { epsilon: 0.98 }),
            Preset::Mm1 => ChainSpec::new(Family::Mm1 {
                rho: 1.25,
                capacity: 100,
            })
            .with_doeblin(0.95),
            Preset::Contact => ChainSpec::new(Family::Contact {
                nodes: 100,
                lambda: 1.5,
            })
            .with_doeblin(0.5),
        }
    }

    /// Tour budget per replicate.
    pub fn default_tours(&self) -> u64 {
        match self {
            Preset::Loopy => 1_000_000,
            Preset::Mm1 => 100_000,
            Preset::Contact => 100_000,
        }
    }

    pub const DEFAULT_REPLICATES: u64 = 20;

    /// Vanilla and Polyak-averaged configurations on the preset chain.
    pub fn configs(&self, n_tours: u64, replicates: u64, seed: u64) -> [RunConfig; 2] {
        [Variant::Vanilla, Variant::ProjectedAvg]
            .map(|v| RunConfig::new(self.chain(), v, n_tours, replicates, seed))
    }
}

impl std::str::FromStr for Preset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Preset::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| {
                Error::Parse(format!(
                    "unknown preset `{s}` (expected loopy, mm1 or contact)"
                ))
            })
    }
}
