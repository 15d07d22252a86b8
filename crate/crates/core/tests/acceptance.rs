//! End-to-end acceptance checks. Each criterion prints one PASS/FAIL line to
//! stdout (uncaptured) and the test fails if any criterion fails.

mod common;

use common::*;
use nalgebra::Complex;
use qsdkit::estimator::{project_simplex, run_estimator, RecordSchedule, RunOptions, Variant};
use qsdkit::harness::{run_cli, run_experiment, run_experiment_on, ChainSpec, Preset, RunConfig};
use qsdkit::models::{
    doeblinize_ct, doeblinize_dt, make_contact_complete, uniformize, AnyChain, ChainKind,
};
use qsdkit::spectral::{check_clt_ct, jacobian_check, ode_residual, principal_left_eigenpair};
use rand::Rng;
use std::io::Write;
use std::time::{Duration, Instant};

type Outcome = Result<String, String>;
type Criterion = (u32, &'static str, Option<Duration>, fn() -> Outcome);

fn report(
    id: u32,
    name: &str,
    started: Instant,
    limit: Option<Duration>,
    outcome: Outcome,
) -> bool {
    let elapsed = started.elapsed();
    let outcome = match (outcome, limit) {
        (Ok(msg), Some(l)) if elapsed > l => {
            Err(format!("{msg}; runtime {elapsed:.1?} over {l:?}"))
        }
        (o, _) => o,
    };
    let (tag, msg, ok) = match outcome {
        Ok(m) => ("PASS", m, true),
        Err(m) => ("FAIL", m, false),
    };
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "[{tag}] criterion {id} {name}: {msg} ({elapsed:.1?})");
    ok
}

fn ensure(cond: bool, msg: String) -> Outcome {
    if cond {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn final_estimate(chain: &AnyChain, variant: Variant, tours: u64, seed: u64) -> (Vec<f64>, f64) {
    let mut opts = RunOptions::new(variant, tours);
    opts.record = RecordSchedule::Every(tours);
    let state = run_estimator(chain, &opts, &mut rng(seed), |_| {}).unwrap();
    (state.estimate().into_vec(), state.t())
}

fn criterion_1() -> Outcome {
    let mut gen = rng(20_240_001);
    let mut worst: f64 = 0.0;
    for _ in 0..50 {
        let d = gen.gen_range(2..=8);
        let chain = random_dt(&mut gen, d, 0.5, 0.99);
        let oracle = dt_oracle(chain.q());
        let (_, spectral) =
            principal_left_eigenpair(chain.q(), ChainKind::Dt).map_err(|e| e.to_string())?;
        if l1(spectral.as_slice(), &oracle) > 1e-9 {
            return Err("spectral oracle disagrees with squaring oracle".into());
        }
        let chain = AnyChain::from(chain);
        let mean: f64 = (0..10)
            .map(|s| {
                l1(
                    &final_estimate(&chain, Variant::Vanilla, 100_000, s).0,
                    &oracle,
                )
            })
            .sum::<f64>()
            / 10.0;
        worst = worst.max(mean);
    }
    ensure(
        worst < 0.02,
        format!("worst per-chain mean L1 = {worst:.4} (limit 0.02)"),
    )
}

fn contact10() -> AnyChain {
    make_contact_complete(10, 1.5).unwrap().into()
}

fn criterion_2() -> Outcome {
    let chain = contact10();
    let oracle = ct_oracle(chain.q());
    let (est, _) = final_estimate(&chain, Variant::ProjectedAvg, 100_000, 2);
    let err = l1(&est, &oracle);
    ensure(err < 0.02, format!("L1 = {err:.4} (limit 0.02)"))
}

fn criterion_3() -> Outcome {
    let loopy: AnyChain = "loopy:0.2".parse::<ChainSpec>().unwrap().build().unwrap();
    let (_, t_loopy) = final_estimate(&loopy, Variant::Vanilla, 100_000, 3);
    let rel_loopy = (t_loopy - 5.0).abs() / 5.0;
    let chain = contact10();
    let oracle = ct_oracle(chain.q());
    let target = -1.0 / left_eigenvalue(chain.q(), &oracle);
    let (_, t_ct) = final_estimate(&chain, Variant::ProjectedAvg, 100_000, 3);
    let rel_ct = (t_ct - target).abs() / target;
    ensure(
        rel_loopy < 0.02 && rel_ct < 0.05,
        format!("loopy T_n={t_loopy:.4} (rel {rel_loopy:.4}, limit 0.02); contact T_n={t_ct:.4} vs {target:.4} (rel {rel_ct:.4}, limit 0.05)"),
    )
}

fn criterion_4() -> Outcome {
    let mut mismatches = Vec::new();
    for k in 1..=9 {
        let eps = k as f64 / 10.0;
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run_cli(
            ["qsdkit", "check-clt", "--chain", &format!("loopy:{eps}")],
            &mut out,
            &mut err,
        );
        let text = String::from_utf8(out).unwrap();
        let holds = text.starts_with("holds");
        if code != 0 || holds != (eps < 0.5) {
            mismatches.push(format!("eps={eps}: {}", text.trim()));
        }
    }
    let c = |re: f64, im: f64| Complex::new(re, im);
    // (spectrum, 2 lambda_pv > max Re lambda_npv)
    let crafted = [
        (vec![c(-1.0, 0.0), c(-3.0, 0.0), c(-4.0, 0.0)], true), // -2 > -3
        (vec![c(-1.0, 0.0), c(-1.5, 0.0)], false),              // -2 > -1.5 fails
        (vec![c(-0.5, 0.0), c(-2.0, 1.0), c(-2.0, -1.0)], true), // -1 > -2
        (vec![c(-1.0, 0.0), c(-2.0, 3.0), c(-2.0, -3.0)], false), // -2 = -2 is not strict
    ];
    for (spec, expect) in &crafted {
        let verdict = check_clt_ct(spec).map_err(|e| e.to_string())?;
        let hand = 2.0 * spec[0].re
            - spec[1..]
                .iter()
                .map(|z| z.re)
                .fold(f64::NEG_INFINITY, f64::max);
        if verdict.holds != *expect || (verdict.margin - hand).abs() > 1e-12 {
            mismatches.push(format!(
                "ct spectrum {spec:?}: holds={} margin={}",
                verdict.holds, verdict.margin
            ));
        }
    }
    ensure(
        mismatches.is_empty(),
        if mismatches.is_empty() {
            "9 loopy verdicts and 4 CT spectra match".into()
        } else {
            mismatches.join("; ")
        },
    )
}

fn criterion_5() -> Outcome {
    let spec: ChainSpec = "loopy:0.7".parse().unwrap();
    let mut slopes = Vec::new();
    for variant in [Variant::Vanilla, Variant::ProjectedAvg] {
        let mut cfg = RunConfig::new(spec.clone(), variant, 1_000_000, 50, 5);
        cfg.burn_in = Some(0);
        let result = run_experiment(&cfg).map_err(|e| e.to_string())?;
        slopes.push(result.curve.slope.ok_or("no slope")?);
    }
    ensure(
        (-0.8..=-0.4).contains(&slopes[0]) && (-1.2..=-0.8).contains(&slopes[1]),
        format!(
            "vanilla slope {:.3} (in [-0.8,-0.4]); projected_avg slope {:.3} (in [-1.2,-0.8])",
            slopes[0], slopes[1]
        ),
    )
}

fn criterion_6() -> Outcome {
    let mut parts = Vec::new();
    let mut ok = true;
    for preset in Preset::ALL {
        let [vanilla, averaged] =
            preset.configs(preset.default_tours(), Preset::DEFAULT_REPLICATES, 6);
        let chain = vanilla.chain.build().map_err(|e| e.to_string())?;
        let mse = |cfg: &RunConfig| -> Result<f64, String> {
            let r = run_experiment_on(&chain, cfg).map_err(|e| e.to_string())?;
            Ok(r.final_row().ok_or("empty curve")?.mse_l2sq)
        };
        let (v, a) = (mse(&vanilla)?, mse(&averaged)?);
        ok &= a < v / 5.0;
        parts.push(format!(
            "{} vanilla={v:.3e} avg={a:.3e} ratio={:.1}",
            preset.name(),
            v / a
        ));
    }
    ensure(ok, parts.join("; ") + " (ratio limit 5)")
}

fn criterion_7() -> Outcome {
    let ct = make_contact_complete(10, 1.5).unwrap();
    let oracle = ct_oracle(ct.q());
    let dt: AnyChain = uniformize(&ct).map_err(|e| e.to_string())?.into();
    let (est_dt, _) = final_estimate(&dt, Variant::Vanilla, 100_000, 7);
    let (est_ct, _) = final_estimate(&AnyChain::from(ct), Variant::Vanilla, 100_000, 7);
    let (a, b, c) = (
        l1(&est_dt, &est_ct),
        l1(&est_dt, &oracle),
        l1(&est_ct, &oracle),
    );
    ensure(
        a < 0.03 && b < 0.03 && c < 0.03,
        format!("L1(dt,ct)={a:.4} L1(dt,oracle)={b:.4} L1(ct,oracle)={c:.4} (limit 0.03)"),
    )
}

/// Exhaustive search over supports: the minimizer of `|x - v|` on the simplex
/// is `v_S - theta` on some support `S`.
fn brute_force_projection(v: &[f64]) -> Vec<f64> {
    let d = v.len();
    let mut best: Option<(f64, Vec<f64>)> = None;
    for mask in 1u32..(1 << d) {
        let members: Vec<usize> = (0..d).filter(|i| mask & (1 << i) != 0).collect();
        let theta = (members.iter().map(|&i| v[i]).sum::<f64>() - 1.0) / members.len() as f64;
        let mut x = vec![0.0; d];
        for &i in &members {
            x[i] = v[i] - theta;
        }
        if x.iter().any(|&xi| xi < -1e-15) {
            continue;
        }
        let dist: f64 = x.iter().zip(v).map(|(a, b)| (a - b) * (a - b)).sum();
        if best.as_ref().is_none_or(|(b, _)| dist < *b) {
            best = Some((dist, x));
        }
    }
    best.unwrap().1
}

fn criterion_8() -> Outcome {
    let mut gen = rng(8);
    let mut fails = Vec::new();

    // simplex preservation on every iterate
    for variant in [Variant::Vanilla, Variant::Projected, Variant::ProjectedAvg] {
        let chain: AnyChain = random_dt(&mut gen, 5, 0.2, 0.95).into();
        let mut opts = RunOptions::new(variant, 5_000);
        opts.record = RecordSchedule::Every(1);
        let mut bad = 0;
        run_estimator(&chain, &opts, &mut gen, |s| {
            for v in [Some(s.mu), s.nu.as_ref()].into_iter().flatten() {
                let sum: f64 = v.as_slice().iter().sum();
                if (sum - 1.0).abs() > 1e-9 || v.as_slice().iter().any(|x| *x < 0.0) {
                    bad += 1;
                }
            }
        })
        .map_err(|e| e.to_string())?;
        if bad > 0 {
            fails.push(format!("{variant}: {bad} iterates off the simplex"));
        }
    }

    // projection against exhaustive search
    let mut proj_err: f64 = 0.0;
    for _ in 0..10_000 {
        let d = gen.gen_range(1..=4);
        let v: Vec<f64> = (0..d).map(|_| gen.gen_range(-2.0..2.0)).collect();
        let p = project_simplex(&v).map_err(|e| e.to_string())?;
        proj_err = proj_err.max(p.linf_distance(&brute_force_projection(&v)));
    }
    if proj_err > 1e-10 {
        fails.push(format!("projection error {proj_err:e}"));
    }

    // ODE residual, Jacobian, transform invariance
    let (mut resid, mut jac_err, mut min_mod, mut inv): (f64, f64, f64, f64) =
        (0.0, 0.0, f64::INFINITY, 0.0);
    for _ in 0..100 {
        let d = gen.gen_range(2..=16);
        let chain = random_dt(&mut gen, d, 0.1, 0.99);
        let (_, qsd) =
            principal_left_eigenpair(chain.q(), ChainKind::Dt).map_err(|e| e.to_string())?;
        let r = ode_residual(chain.q(), &qsd, ChainKind::Dt).map_err(|e| e.to_string())?;
        resid = resid.max(r.iter().fold(0.0, |m, x| m.max(x.abs())));
        let j = jacobian_check(chain.q()).map_err(|e| e.to_string())?;
        jac_err = jac_err.max(j.max_abs_error);
        min_mod = min_mod.min(j.min_modulus);
        let a = gen.gen_range(0.05..1.0);
        let (_, dq) =
            principal_left_eigenpair(doeblinize_dt(&chain, a).unwrap().q(), ChainKind::Dt).unwrap();
        inv = inv.max(dq.linf_distance(qsd.as_slice()));

        let ct = random_ct(&mut gen, d);
        let (_, cq) = principal_left_eigenpair(ct.q(), ChainKind::Ct).map_err(|e| e.to_string())?;
        let r = ode_residual(ct.q(), &cq, ChainKind::Ct).map_err(|e| e.to_string())?;
        resid = resid.max(r.iter().fold(0.0, |m, x| m.max(x.abs())));
        let shifted = doeblinize_ct(&ct, gen.gen_range(0.0..2.0)).unwrap();
        let (_, sq) = principal_left_eigenpair(shifted.q(), ChainKind::Ct).unwrap();
        let (_, uq) =
            principal_left_eigenpair(uniformize(&ct).unwrap().q(), ChainKind::Dt).unwrap();
        inv = inv
            .max(sq.linf_distance(cq.as_slice()))
            .max(uq.linf_distance(cq.as_slice()));
    }
    if resid >= 1e-9 {
        fails.push(format!("ode residual {resid:e}"));
    }
    if jac_err >= 1e-8 || min_mod <= 0.0 {
        fails.push(format!("jacobian error {jac_err:e}, min |eig| {min_mod:e}"));
    }
    if inv >= 1e-10 {
        fails.push(format!("eigenvector invariance {inv:e}"));
    }
    let summary = format!(
        "projection {proj_err:.1e}, ode residual {resid:.1e}, jacobian {jac_err:.1e} (min |eig| {min_mod:.2e}), invariance {inv:.1e}"
    );
    if fails.is_empty() {
        Ok(summary)
    } else {
        Err(format!("{summary}; {}", fails.join("; ")))
    }
}

#[test]
fn acceptance() {
    let min = |m: u64| Some(Duration::from_secs(60 * m));
    let criteria: [Criterion; 8] = [
        (1, "DT oracle equivalence", min(2), criterion_1),
        (2, "CT oracle equivalence", min(2), criterion_2),
        (3, "T-limit", None, criterion_3),
        (4, "CLT checker exactness", None, criterion_4),
        (5, "slow-rate reproduction", min(10), criterion_5),
        (6, "preset ordering", min(15), criterion_6),
        (7, "uniformization equivalence", None, criterion_7),
        (8, "property suites", None, criterion_8),
    ];
    let _ = writeln!(std::io::stdout().lock());
    let mut passed = 0;
    for (id, name, limit, f) in criteria {
        let started = Instant::now();
        let outcome = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        passed += report(id, name, started, limit, outcome) as usize;
    }
    let _ = writeln!(
        std::io::stdout().lock(),
        "acceptance: {passed}/8 criteria passed"
    );
    assert_eq!(passed, 8);
}
