use super::{check_clt, eigen_residual, full_spectrum, principal_left_eigenpair, CltVerdict};
use crate::error::Result;
use crate::models::{AnyChain, ChainKind, ProbabilityVector};
use nalgebra::Complex;
use std::fmt::{self, Write as _};

/// Ground truth and CLT diagnostics for one transient block.
#[derive(Debug, Clone)]
pub struct SpectralReport {
    pub kind: ChainKind,
    pub principal_value: f64,
    /// The quasi-stationary distribution.
    pub principal_left_vector: ProbabilityVector,
    pub spectrum: Vec<Complex<f64>>,
    pub clt: CltVerdict,
    pub residual: f64,
}

impl SpectralReport {
    pub fn compute(chain: &AnyChain) -> Result<Self> {
        let q = chain.q();
        let kind = chain.kind();
        let (principal_value, vector) = principal_left_eigenpair(q, kind)?;
        let mut spectrum = full_spectrum(q)?;
        spectrum.sort_by(|a, b| b.re.total_cmp(&a.re).then(b.im.total_cmp(&a.im)));
        let clt = check_clt(&spectrum, kind)?;
        let residual = eigen_residual(q, principal_value, vector.as_slice());
        Ok(Self {
            kind,
            principal_value,
            principal_left_vector: vector,
            spectrum,
            clt,
            residual,
        })
    }

    /// Limit of the running mean lifetime: `1 / (1 - lambda)` for DT chains,
    /// `-1 / lambda` for CT chains.
    pub fn mean_lifetime(&self) -> f64 {
        match self.kind {
            ChainKind::Dt => 1.0 / (1.0 - self.principal_value),
            ChainKind::Ct => -1.0 / self.principal_value,
        }
    }

    pub fn clt_line(&self) -> String {
        format!(
            "{} margin={:?}",
            if self.clt.holds { "holds" } else { "fails" },
            self.clt.margin
        )
    }
}

fn join<T>(items: impl Iterator<Item = T>, f: impl Fn(T) -> String) -> String {
    items.map(f).collect::<Vec<_>>().join(",")
}

fn complex(z: &Complex<f64>) -> String {
    if z.im == 0.0 {
        format!("{:?}", z.re)
    } else {
        format!("{:?}{:+?}i", z.re, z.im)
    }
}

/// `key=value` lines.
impl fmt::Display for SpectralReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        let _ = writeln!(s, "kind={}", self.kind);
        let _ = writeln!(s, "dim={}", self.spectrum.len());
        let _ = writeln!(s, "principal_value={:?}", self.principal_value);
        let _ = writeln!(s, "mean_lifetime={:?}", self.mean_lifetime());
        let _ = writeln!(
            s,
            "qsd={}",
            join(self.principal_left_vector.as_slice().iter(), |x| format!(
                "{x:?}"
            ))
        );
        let _ = writeln!(s, "eigen_residual={:e}", self.residual);
        let _ = writeln!(s, "clt_holds={}", self.clt.holds);
        let _ = writeln!(s, "clt_margin={:?}", self.clt.margin);
        let _ = writeln!(
            s,
            "clt_worst={}",
            self.clt
                .worst
                .as_ref()
                .map(complex)
                .unwrap_or_else(|| "none".into())
        );
        let _ = write!(s, "spectrum={}", join(self.spectrum.iter(), complex));
        f.write_str(&s)
    }
}
