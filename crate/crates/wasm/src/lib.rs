//! Browser bindings: ER closed-form curves, model uniqueness columns and
//! edge-sampling curves, each returned as a JSON string.

use serde::Serialize;
use wasm_bindgen::prelude::*;

use nbunique::analytic::{default_degree_grid, er_curve as closed_form};
use nbunique::anonymize::{default_rates, sampling_report, SamplingMode};
use nbunique::models::{Family, ModelSpec};
use nbunique::sweep::uniqueness_map;

fn family(model: &str, beta: f64) -> Result<Family, String> {
    match model {
        "er" => Ok(Family::Er),
        "ws" => Ok(Family::Ws { beta }),
        "rgg" => Ok(Family::Rgg),
        other => Err(format!("unknown model '{other}'")),
    }
}

fn to_json(value: &impl Serialize) -> String {
    serde_json::to_string(value).expect("serializable")
}

#[derive(Serialize)]
struct Point {
    k: f64,
    mean: f64,
    sem: f64,
}

pub fn er_curve_json(n: usize) -> Result<String, String> {
    let points = closed_form(n, &default_degree_grid(n)).map_err(|e| e.to_string())?;
    Ok(to_json(&points))
}

/// Mean uniqueness for `<k> = 1..=k_max` at fixed `n`; infeasible degrees
/// are left out.
pub fn uniqueness_column_json(
    model: &str,
    beta: f64,
    n: usize,
    k_max: usize,
    reps: usize,
    seed: u32,
) -> Result<String, String> {
    let family = family(model, beta)?;
    let k_grid: Vec<f64> = (1..=k_max.max(1)).map(|k| k as f64).collect();
    let map = uniqueness_map(family, &[n], &k_grid, reps, seed.into()).map_err(|e| e.to_string())?;
    let points: Vec<Point> = map
        .cells
        .iter()
        .filter(|c| c.skipped.is_none())
        .map(|c| Point {
            k: c.avg_degree,
            mean: c.mean,
            sem: c.sem,
        })
        .collect();
    Ok(to_json(&points))
}

/// Sampling report rows for rates `1.0..0.1` on one generated network.
pub fn sampling_curve_json(
    model: &str,
    beta: f64,
    n: usize,
    k: f64,
    trials: usize,
    seed: u32,
) -> Result<String, String> {
    let spec = ModelSpec::new(family(model, beta)?, n, k, seed.into());
    let g = spec.generate().map_err(|e| e.to_string())?;
    let rows = sampling_report(&g, &default_rates(), SamplingMode::Bernoulli, trials, seed.into())
        .map_err(|e| e.to_string())?;
    Ok(to_json(&rows))
}

#[wasm_bindgen]
pub fn er_curve(n: usize) -> Result<String, JsError> {
    er_curve_json(n).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn uniqueness_column(
    model: &str,
    beta: f64,
    n: usize,
    k_max: usize,
    reps: usize,
    seed: u32,
) -> Result<String, JsError> {
    uniqueness_column_json(model, beta, n, k_max, reps, seed).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn sampling_curve(
    model: &str,
    beta: f64,
    n: usize,
    k: f64,
    trials: usize,
    seed: u32,
) -> Result<String, JsError> {
    sampling_curve_json(model, beta, n, k, trials, seed).map_err(|e| JsError::new(&e))
}
