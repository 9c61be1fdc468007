//! Convergence of scaled coefficients to the motion-group limit.

use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::coefficients::{motion_limit_raw, prepare, scaled_raw, Estimate};
use super::scenario::Sl2Scenario;
use super::{Sl2Error, C64};

/// Largest accepted `e(t_last) / e(t_prev)`.
pub const RATIO_BOUND: f64 = 0.7;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceRow {
    pub t: f64,
    pub e_t: f64,
    pub value_re: f64,
    pub value_im: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NuSweep {
    pub nu: f64,
    pub e_t: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceReport {
    pub scenario: String,
    pub sigma: i32,
    pub nu: f64,
    pub limit_re: f64,
    pub limit_im: f64,
    pub rows: Vec<ConvergenceRow>,
    /// Largest doubled-order change over every integral evaluated.
    pub max_self_consistency: f64,
    pub self_consistent: bool,
    pub strictly_decreasing: bool,
    pub final_ratio: Option<f64>,
    /// `e(t)` at the extra `ν` samples. Reported, not gated.
    pub nu_sweep: Vec<NuSweep>,
    pub pass: bool,
}

impl ConvergenceReport {
    pub fn write_csv(&self, path: &Path) -> Result<(), Sl2Error> {
        let io = |e: std::io::Error| Sl2Error::Invalid(e.to_string());
        let mut w = csv::Writer::from_path(path).map_err(|e| Sl2Error::Invalid(e.to_string()))?;
        for row in &self.rows {
            w.serialize(row).map_err(|e| Sl2Error::Invalid(e.to_string()))?;
        }
        w.flush().map_err(io)
    }

    pub fn write_json(&self, path: &Path) -> Result<(), Sl2Error> {
        let mut f = std::fs::File::create(path).map_err(|e| Sl2Error::Invalid(e.to_string()))?;
        let text = serde_json::to_string_pretty(self).map_err(|e| Sl2Error::Invalid(e.to_string()))?;
        f.write_all(text.as_bytes()).map_err(|e| Sl2Error::Invalid(e.to_string()))
    }
}

fn track(worst: &mut f64, tol: f64, e: &Estimate) -> bool {
    let rel = e.delta / e.value.norm().max(1.0);
    *worst = worst.max(rel);
    rel <= tol
}

/// `e(t) = |⟨φ, π(α_t f_t)ψ⟩ - ⟨φ, π₀(f₀)ψ⟩|` along the scenario's schedule.
pub fn convergence_experiment(s: &Sl2Scenario) -> Result<ConvergenceReport, Sl2Error> {
    s.validate()?;
    let p = prepare(s)?;
    let (o, o2) = (s.orders, s.orders.doubled());
    let run = |nu: f64, t: Option<f64>| -> Estimate {
        let f = |ord| match t {
            Some(t) => scaled_raw(&p, nu, t, ord),
            None => motion_limit_raw(&p, nu, ord),
        };
        let (coarse, value) = (f(o), f(o2));
        Estimate { value, coarse, delta: (value - coarse).norm() }
    };

    let mut worst = 0.0;
    let mut ok = true;
    let limit = run(s.nu, None);
    ok &= track(&mut worst, s.tolerance, &limit);
    let mut rows = Vec::new();
    for &t in &s.t_schedule {
        let est = run(s.nu, Some(t));
        ok &= track(&mut worst, s.tolerance, &est);
        rows.push(ConvergenceRow {
            t,
            e_t: (est.value - limit.value).norm(),
            value_re: est.value.re,
            value_im: est.value.im,
        });
    }

    let nu_sweep = s
        .nu_samples
        .iter()
        .filter(|&&nu| nu != s.nu)
        .map(|&nu| {
            let lim: C64 = motion_limit_raw(&p, nu, o);
            NuSweep { nu, e_t: s.t_schedule.iter().map(|&t| (scaled_raw(&p, nu, t, o) - lim).norm()).collect() }
        })
        .collect();

    let e: Vec<f64> = rows.iter().map(|r| r.e_t).collect();
    let strictly_decreasing = e.windows(2).all(|w| w[1] < w[0]);
    let final_ratio = (e.len() >= 2).then(|| e[e.len() - 1] / e[e.len() - 2]);
    let pass = ok && strictly_decreasing && final_ratio.is_some_and(|r| r <= RATIO_BOUND);
    Ok(ConvergenceReport {
        scenario: s.name.clone(),
        sigma: s.sigma,
        nu: s.nu,
        limit_re: limit.value.re,
        limit_im: limit.value.im,
        rows,
        max_self_consistency: worst,
        self_consistent: ok,
        strictly_decreasing,
        final_ratio,
        nu_sweep,
        pass,
    })
}
