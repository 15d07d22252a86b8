use super::Snapshot;
use std::io::{self, Write};

/// Per-iteration CSV rows: `seed,n,variant,T_n,err_l1[,mu_0..mu_{d-1}]`.
///
/// `err_l1` is left empty when no reference distribution is known.
pub struct TraceWriter<W: Write> {
    out: W,
    seed: u64,
    reference: Option<Vec<f64>>,
    record_mu: bool,
}

impl<W: Write> TraceWriter<W> {
    pub fn new(
        mut out: W,
        seed: u64,
        dim: usize,
        reference: Option<Vec<f64>>,
        record_mu: bool,
    ) -> io::Result<Self> {
        write!(out, "seed,n,variant,T_n,err_l1")?;
        if record_mu {
            for i in 0..dim {
                write!(out, ",mu_{i}")?;
            }
        }
        writeln!(out)?;
        Ok(Self {
            out,
            seed,
            reference,
            record_mu,
        })
    }

    pub fn write(&mut self, snap: &Snapshot<'_>) -> io::Result<()> {
        let est = snap.estimate();
        write!(
            self.out,
            "{},{},{},{:?},",
            self.seed, snap.n, snap.variant, snap.t
        )?;
        if let Some(reference) = &self.reference {
            write!(self.out, "{:?}", est.l1_distance(reference))?;
        }
        if self.record_mu {
            for x in est.as_slice() {
                write!(self.out, ",{x:?}")?;
            }
        }
        writeln!(self.out)
    }

    pub fn into_inner(self) -> W {
        self.out
    }
}
