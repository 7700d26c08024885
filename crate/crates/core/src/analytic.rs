//! Closed-form expectations for Erdős–Rényi graphs.
//!
//! With `p = <k> / (n - 1)` the degree of a node is Binomial(n - 1, p) with
//! probabilities `p_k`. The expected fraction of nodes with a degree no other
//! node has is `sum_k p_k (1 - p_k)^(n - 1)`, and the expected fraction of
//! nodes with at least one edge among their neighbors is
//! `sum_k p_k (1 - (1 - p)^(k (k - 1) / 2))`.

use serde::Serialize;
use statrs::function::gamma::ln_gamma;

use crate::error::{invalid, Result};

fn check(n: usize, avg_degree: f64) -> Result<f64> {
    if n < 2 {
        return Err(invalid("closed forms need n >= 2"));
    }
    let max = (n - 1) as f64;
    if !(0.0..=max).contains(&avg_degree) {
        return Err(invalid(format!(
            "average degree {avg_degree} outside [0, {max}]"
        )));
    }
    Ok(avg_degree / max)
}

/// Binomial(n - 1, p) probabilities for degrees `0..n`.
pub fn degree_distribution(n: usize, avg_degree: f64) -> Result<Vec<f64>> {
    let p = check(n, avg_degree)?;
    let trials = n - 1;
    if p == 0.0 || p == 1.0 {
        let mut probs = vec![0.0; n];
        probs[if p == 0.0 { 0 } else { trials }] = 1.0;
        return Ok(probs);
    }
    let (ln_p, ln_q) = (p.ln(), (-p).ln_1p());
    let ln_trials = ln_gamma(trials as f64 + 1.0);
    Ok((0..=trials)
        .map(|k| {
            let ln_choose =
                ln_trials - ln_gamma(k as f64 + 1.0) - ln_gamma((trials - k) as f64 + 1.0);
            (ln_choose + k as f64 * ln_p + (trials - k) as f64 * ln_q).exp()
        })
        .collect())
}

/// Expected degree uniqueness of `G(n, <k>/(n-1))`.
pub fn er_degree_uniqueness(n: usize, avg_degree: f64) -> Result<f64> {
    let others = (n - 1) as f64;
    Ok(degree_distribution(n, avg_degree)?
        .into_iter()
        .map(|pk| pk * (others * (-pk).ln_1p()).exp())
        .sum::<f64>()
        .min(1.0))
}

/// Probability that the neighborhood of a degree-`k` node has at least one
/// edge when each neighbor pair is linked with probability `p`.
pub fn er_nonempty_given_k(p: f64, k: usize) -> f64 {
    if k < 2 || p <= 0.0 {
        return 0.0;
    }
    if p >= 1.0 {
        return 1.0;
    }
    let pairs = (k * (k - 1) / 2) as f64;
    -(pairs * (-p).ln_1p()).exp_m1()
}

/// Expected fraction of nodes whose neighborhood contains an edge.
pub fn er_nonempty_fraction(n: usize, avg_degree: f64) -> Result<f64> {
    let p = check(n, avg_degree)?;
    Ok(degree_distribution(n, avg_degree)?
        .into_iter()
        .enumerate()
        .map(|(k, pk)| pk * er_nonempty_given_k(p, k))
        .sum::<f64>()
        .min(1.0))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ErCurvePoint {
    pub avg_degree: f64,
    pub expected_degree_uniqueness: f64,
    pub expected_nonempty: f64,
}

/// Integer average degrees `0..=min(100, n - 1)`.
pub fn default_degree_grid(n: usize) -> Vec<f64> {
    (0..=n.saturating_sub(1).min(100)).map(|k| k as f64).collect()
}

pub fn er_curve(n: usize, grid: &[f64]) -> Result<Vec<ErCurvePoint>> {
    grid.iter()
        .map(|&k| {
            Ok(ErCurvePoint {
                avg_degree: k,
                expected_degree_uniqueness: er_degree_uniqueness(n, k)?,
                expected_nonempty: er_nonempty_fraction(n, k)?,
            })
        })
        .collect()
}
