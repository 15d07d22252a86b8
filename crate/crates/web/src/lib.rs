//! Browser bindings for the qsdkit demo page.
//!
//! Three operations: the spectral report of a chain, MSE curves of the
//! vanilla and Polyak-averaged estimators, and a CLT-margin sweep over a
//! chain template. Each has a plain Rust form (tested natively) and a
//! `wasm_bindgen` wrapper.

use qsdkit::estimator::Variant;
use qsdkit::harness::{run_experiment_on, ChainSpec, RunConfig};
use qsdkit::spectral::SpectralReport;
use wasm_bindgen::prelude::*;

/// Largest tour budget the page will run per replicate.
pub const MAX_TOURS: u64 = 2_000_000;
pub const MAX_REPLICATES: u64 = 50;

#[wasm_bindgen]
#[derive(Debug, Clone)]
pub struct Oracle {
    kind: String,
    principal_value: f64,
    mean_lifetime: f64,
    qsd: Vec<f64>,
    spectrum_re: Vec<f64>,
    spectrum_im: Vec<f64>,
    clt_holds: bool,
    clt_margin: f64,
    text: String,
}

#[wasm_bindgen]
impl Oracle {
    #[wasm_bindgen(getter)]
    pub fn kind(&self) -> String {
        self.kind.clone()
    }
    #[wasm_bindgen(getter, js_name = principalValue)]
    pub fn principal_value(&self) -> f64 {
        self.principal_value
    }
    #[wasm_bindgen(getter, js_name = meanLifetime)]
    pub fn mean_lifetime(&self) -> f64 {
        self.mean_lifetime
    }
    #[wasm_bindgen(getter)]
    pub fn qsd(&self) -> Vec<f64> {
        self.qsd.clone()
    }
    #[wasm_bindgen(getter, js_name = spectrumRe)]
    pub fn spectrum_re(&self) -> Vec<f64> {
        self.spectrum_re.clone()
    }
    #[wasm_bindgen(getter, js_name = spectrumIm)]
    pub fn spectrum_im(&self) -> Vec<f64> {
        self.spectrum_im.clone()
    }
    #[wasm_bindgen(getter, js_name = cltHolds)]
    pub fn clt_holds(&self) -> bool {
        self.clt_holds
    }
    #[wasm_bindgen(getter, js_name = cltMargin)]
    pub fn clt_margin(&self) -> f64 {
        self.clt_margin
    }
    #[wasm_bindgen(getter)]
    pub fn text(&self) -> String {
        self.text.clone()
    }
}

pub fn oracle_report(chain: &str) -> Result<Oracle, String> {
    let chain = parse(chain)?.build().map_err(|e| e.to_string())?;
    let r = SpectralReport::compute(&chain).map_err(|e| e.to_string())?;
    Ok(Oracle {
        kind: r.kind.to_string(),
        principal_value: r.principal_value,
        mean_lifetime: r.mean_lifetime(),
        qsd: r.principal_left_vector.as_slice().to_vec(),
        spectrum_re: r.spectrum.iter().map(|z| z.re).collect(),
        spectrum_im: r.spectrum.iter().map(|z| z.im).collect(),
        clt_holds: r.clt.holds,
        clt_margin: r.clt.margin,
        text: r.to_string(),
    })
}

#[wasm_bindgen]
#[derive(Debug, Clone)]
pub struct Curves {
    n: Vec<f64>,
    vanilla: Vec<f64>,
    averaged: Vec<f64>,
    slope_vanilla: f64,
    slope_averaged: f64,
}

#[wasm_bindgen]
impl Curves {
    #[wasm_bindgen(getter)]
    pub fn n(&self) -> Vec<f64> {
        self.n.clone()
    }
    #[wasm_bindgen(getter)]
    pub fn vanilla(&self) -> Vec<f64> {
        self.vanilla.clone()
    }
    #[wasm_bindgen(getter)]
    pub fn averaged(&self) -> Vec<f64> {
        self.averaged.clone()
    }
    /// NaN when too few points were recorded for a fit.
    #[wasm_bindgen(getter, js_name = slopeVanilla)]
    pub fn slope_vanilla(&self) -> f64 {
        self.slope_vanilla
    }
    #[wasm_bindgen(getter, js_name = slopeAveraged)]
    pub fn slope_averaged(&self) -> f64 {
        self.slope_averaged
    }
}

pub fn compare_curves(
    chain: &str,
    tours: u64,
    replicates: u64,
    seed: u64,
    alpha: f64,
) -> Result<Curves, String> {
    if tours == 0 || tours > MAX_TOURS {
        return Err(format!("tours must be in 1..={MAX_TOURS}"));
    }
    if replicates == 0 || replicates > MAX_REPLICATES {
        return Err(format!("replicates must be in 1..={MAX_REPLICATES}"));
    }
    let spec = parse(chain)?;
    let built = spec.build().map_err(|e| e.to_string())?;
    let mut curves = Vec::new();
    for variant in [Variant::Vanilla, Variant::ProjectedAvg] {
        let mut cfg = RunConfig::new(spec.clone(), variant, tours, replicates, seed);
        cfg.schedule =
            qsdkit::estimator::StepSchedule::new(1.0, alpha).map_err(|e| e.to_string())?;
        let result = run_experiment_on(&built, &cfg).map_err(|e| e.to_string())?;
        if let Some(w) = result.warning {
            return Err(w);
        }
        curves.push(result);
    }
    let (v, a) = (&curves[0], &curves[1]);
    Ok(Curves {
        n: v.rows.iter().map(|r| r.n as f64).collect(),
        vanilla: v.rows.iter().map(|r| r.mse_l2sq).collect(),
        averaged: a.rows.iter().map(|r| r.mse_l2sq).collect(),
        slope_vanilla: v.curve.slope.unwrap_or(f64::NAN),
        slope_averaged: a.curve.slope.unwrap_or(f64::NAN),
    })
}

/// CLT margin of the chain obtained by substituting each value into the
/// `{}` placeholder of `template`; NaN where the chain is invalid.
pub fn clt_margins(template: &str, values: &[f64]) -> Result<Vec<f64>, String> {
    ChainSpec::from_template(template, "0").map_err(|e| e.to_string())?;
    Ok(values
        .iter()
        .map(|v| {
            ChainSpec::from_template(template, &v.to_string())
                .and_then(|s| s.build())
                .and_then(|c| SpectralReport::compute(&c))
                .map_or(f64::NAN, |r| r.clt.margin)
        })
        .collect())
}

fn parse(chain: &str) -> Result<ChainSpec, String> {
    let spec: ChainSpec = chain
        .trim()
        .parse()
        .map_err(|e: qsdkit::Error| e.to_string())?;
    if matches!(spec.family, qsdkit::harness::Family::File(_)) {
        return Err("chain files are not available in the browser".into());
    }
    Ok(spec)
}

#[wasm_bindgen]
pub fn oracle(chain: &str) -> Result<Oracle, JsError> {
    oracle_report(chain).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn curves(
    chain: &str,
    tours: u32,
    replicates: u32,
    seed: u32,
    alpha: f64,
) -> Result<Curves, JsError> {
    compare_curves(chain, tours.into(), replicates.into(), seed.into(), alpha)
        .map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = cltSweep)]
pub fn clt_sweep(template: &str, values: Vec<f64>) -> Result<Vec<f64>, JsError> {
    clt_margins(template, &values).map_err(|e| JsError::new(&e))
}
