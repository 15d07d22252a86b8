use crate::error::{domain, Result};

/// Step sizes `c / (n + 1)^alpha` with `alpha` in `(1/2, 1]`, so that the
/// steps sum to infinity while their squares stay summable.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepSchedule {
    c: f64,
    alpha: f64,
}

impl StepSchedule {
    pub fn new(c: f64, alpha: f64) -> Result<Self> {
        if !(c > 0.0 && c.is_finite()) {
            return Err(domain(format!("step scale must be positive, got {c}")));
        }
        if !(alpha > 0.5 && alpha <= 1.0) {
            return Err(domain(format!(
                "step exponent must lie in (0.5, 1], got {alpha}"
            )));
        }
        Ok(Self { c, alpha })
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// Step used for the update that produces iterate `n + 1`.
    #[inline]
    pub fn step(&self, n: u64) -> f64 {
        self.c / ((n + 1) as f64).powf(self.alpha)
    }
}

impl Default for StepSchedule {
    fn default() -> Self {
        Self { c: 1.0, alpha: 0.7 }
    }
}
