//! Spectral sufficient conditions for a square-root-n central limit theorem of
//! the vanilla recursion.

use crate::error::{Error, Result};
use crate::models::ChainKind;
use nalgebra::Complex;

/// Imaginary parts below this are treated as zero when identifying the
/// principal eigenvalue.
pub const REAL_TOL: f64 = 1e-10;

/// Outcome of a CLT check. `margin` is the signed slack of the inequality
/// (positive when it holds); boundary cases count as failures.
#[derive(Debug, Clone, PartialEq)]
pub struct CltVerdict {
    pub holds: bool,
    pub margin: f64,
    pub principal: f64,
    /// Non-principal eigenvalue that attains the worst case, if any.
    pub worst: Option<Complex<f64>>,
}

/// Splits a spectrum into its principal (maximal real part, necessarily real)
/// eigenvalue and the rest.
pub fn split_principal(spectrum: &[Complex<f64>]) -> Result<(f64, Vec<Complex<f64>>)> {
    let (idx, top) = spectrum
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.re.total_cmp(&b.1.re))
        .ok_or_else(|| Error::Contract("empty spectrum".into()))?;
    if top.im.abs() > REAL_TOL * top.re.abs().max(1.0) {
        return Err(Error::Contract(format!(
            "eigenvalue with largest real part is complex: {top}"
        )));
    }
    let rest = spectrum
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != idx)
        .map(|(_, z)| *z)
        .collect();
    Ok((top.re, rest))
}

fn verdict(
    principal: f64,
    rhs: f64,
    others: impl Iterator<Item = (f64, Complex<f64>)>,
) -> CltVerdict {
    let worst = others.max_by(|a, b| a.0.total_cmp(&b.0).then(a.1.im.total_cmp(&b.1.im)));
    match worst {
        None => CltVerdict {
            holds: true,
            margin: f64::INFINITY,
            principal,
            worst: None,
        },
        Some((lhs, z)) => {
            let margin = rhs - lhs;
            let tol = 1e-12 * rhs.abs().max(lhs.abs()).max(1.0);
            CltVerdict {
                holds: margin > tol,
                margin,
                principal,
                worst: Some(z),
            }
        }
    }
}

/// Discrete time: `max Re(1 / (1 - lambda_npv)) < 1 / (2 (1 - lambda_pv))`.
pub fn check_clt_dt(spectrum: &[Complex<f64>]) -> Result<CltVerdict> {
    let (principal, rest) = split_principal(spectrum)?;
    if principal >= 1.0 {
        return Err(Error::Contract(format!(
            "principal eigenvalue {principal} is not below 1"
        )));
    }
    let one = Complex::new(1.0, 0.0);
    let rhs = 0.5 / (1.0 - principal);
    Ok(verdict(
        principal,
        rhs,
        rest.into_iter().map(|z| ((one / (one - z)).re, z)),
    ))
}

/// Continuous time: `2 lambda_pv > Re(lambda_npv)` for every non-principal
/// eigenvalue.
pub fn check_clt_ct(spectrum: &[Complex<f64>]) -> Result<CltVerdict> {
    let (principal, rest) = split_principal(spectrum)?;
    if principal >= 0.0 {
        return Err(Error::Contract(format!(
            "principal rate eigenvalue {principal} is not negative"
        )));
    }
    Ok(verdict(
        principal,
        2.0 * principal,
        rest.into_iter().map(|z| (z.re, z)),
    ))
}

pub fn check_clt(spectrum: &[Complex<f64>], kind: ChainKind) -> Result<CltVerdict> {
    match kind {
        ChainKind::Dt => check_clt_dt(spectrum),
        ChainKind::Ct => check_clt_ct(spectrum),
    }
}
