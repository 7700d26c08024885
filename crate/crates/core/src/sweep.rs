//! Uniqueness maps over `(n, <k>)` grids, the stochastic binary search for
//! the uniqueness boundary, and log-log line fits of that boundary.

use rayon::prelude::*;
use serde::Serialize;
use statrs::distribution::{ContinuousCDF, Normal};

use crate::error::{invalid, Error, Result};
use crate::metrics::neighborhood_uniqueness;
use crate::models::{Family, ModelSpec};
use crate::rng::derive_seed;

/// Seed of replicate `rep` for a model at a given size and degree. Depends
/// only on the coordinates, never on grid layout or scheduling.
pub fn replicate_seed(master: u64, family: Family, n: usize, avg_degree: f64, rep: u64) -> u64 {
    let beta = family.beta().map_or(0, f64::to_bits);
    derive_seed(
        master,
        &[family.code(), n as u64, avg_degree.to_bits(), beta, rep],
    )
}

/// Mean and standard error of the mean; the error is 0 for a single value.
pub fn mean_sem(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    if values.len() < 2 {
        return (mean, 0.0);
    }
    let var = values.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}

/// Mean uniqueness of neighborhoods and its standard error over `reps`
/// realizations of `spec` (its own seed is ignored).
pub fn uniqueness_at(spec: &ModelSpec, reps: usize, seed: u64) -> Result<(f64, f64)> {
    if reps == 0 {
        return Err(invalid("need at least one replicate"));
    }
    spec.validate()?;
    let values = (0..reps as u64)
        .into_par_iter()
        .map(|rep| {
            let s = replicate_seed(seed, spec.family, spec.n, spec.avg_degree, rep);
            spec.with_seed(s).generate().map(|g| neighborhood_uniqueness(&g))
        })
        .collect::<Result<Vec<f64>>>()?;
    Ok(mean_sem(&values))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MapCell {
    pub n: usize,
    pub avg_degree: f64,
    pub mean: f64,
    pub sem: f64,
    /// Completed replicates; 0 when the cell was skipped.
    pub reps: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub skipped: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct UniquenessMap {
    pub family: Family,
    pub n_grid: Vec<usize>,
    pub k_grid: Vec<f64>,
    pub reps: usize,
    pub seed: u64,
    /// Row-major over `n_grid`, then `k_grid`.
    pub cells: Vec<MapCell>,
}

impl UniquenessMap {
    pub fn cell(&self, n_index: usize, k_index: usize) -> &MapCell {
        &self.cells[n_index * self.k_grid.len() + k_index]
    }
}

pub fn uniqueness_map(
    family: Family,
    n_grid: &[usize],
    k_grid: &[f64],
    reps: usize,
    seed: u64,
) -> Result<UniquenessMap> {
    if n_grid.is_empty() || k_grid.is_empty() {
        return Err(invalid("map grids must be non-empty"));
    }
    if reps == 0 {
        return Err(invalid("need at least one replicate"));
    }
    let coords: Vec<(usize, f64)> = n_grid
        .iter()
        .flat_map(|&n| k_grid.iter().map(move |&k| (n, k)))
        .collect();
    let cells = coords
        .into_par_iter()
        .map(|(n, k)| {
            let spec = ModelSpec::new(family, n, k, 0);
            match uniqueness_at(&spec, reps, seed) {
                Ok((mean, sem)) => MapCell {
                    n,
                    avg_degree: k,
                    mean,
                    sem,
                    reps,
                    skipped: None,
                },
                Err(e) => MapCell {
                    n,
                    avg_degree: k,
                    mean: f64::NAN,
                    sem: f64::NAN,
                    reps: 0,
                    skipped: Some(e.to_string()),
                },
            }
        })
        .collect();
    Ok(UniquenessMap {
        family,
        n_grid: n_grid.to_vec(),
        k_grid: k_grid.to_vec(),
        reps,
        seed,
        cells,
    })
}

/// Parses a grid: `a,b,c` lists values, `a:b` steps by 1, `a:b:h` steps by
/// `h`, and `a:b:logP` places `P` points per decade geometrically, always
/// including both ends.
pub fn parse_grid(text: &str) -> Result<Vec<f64>> {
    let bad = || invalid(format!("bad grid '{text}'"));
    let num = |s: &str| s.trim().parse::<f64>().map_err(|_| bad());
    let parts: Vec<&str> = text.split(':').collect();
    let grid = match parts.as_slice() {
        [single] => single.split(',').map(num).collect::<Result<Vec<_>>>()?,
        [a, b, rest @ ..] if rest.len() <= 1 => {
            let (a, b) = (num(a)?, num(b)?);
            if !(a.is_finite() && b.is_finite()) || b < a {
                return Err(bad());
            }
            match rest.first().map(|s| s.trim()) {
                Some(step) if step.starts_with("log") => {
                    let per_decade = num(&step[3..])?;
                    if a <= 0.0 || per_decade <= 0.0 {
                        return Err(bad());
                    }
                    let count = ((b / a).log10() * per_decade - 1e-9).ceil() as usize;
                    let mut out: Vec<f64> = (0..count)
                        .map(|i| a * 10f64.powf(i as f64 / per_decade))
                        .collect();
                    out.push(b);
                    out
                }
                step => {
                    let h = step.map(num).transpose()?.unwrap_or(1.0);
                    if h <= 0.0 {
                        return Err(bad());
                    }
                    let count = ((b - a) / h + 1e-9).floor() as usize;
                    (0..=count).map(|i| a + i as f64 * h).collect()
                }
            }
        }
        _ => return Err(bad()),
    };
    if grid.is_empty() || grid.iter().any(|x| !x.is_finite()) {
        return Err(bad());
    }
    Ok(grid)
}

/// Network-size grid: values from [`parse_grid`] rounded to integers, with
/// duplicates removed.
pub fn parse_size_grid(text: &str) -> Result<Vec<usize>> {
    let mut out: Vec<usize> = Vec::new();
    for x in parse_grid(text)? {
        if x < 1.0 {
            return Err(invalid(format!("network size {x} in '{text}'")));
        }
        let n = x.round() as usize;
        if out.last() != Some(&n) {
            out.push(n);
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SearchConfig {
    pub target: f64,
    pub confidence: f64,
    pub batch: usize,
    pub max_simulations: usize,
    pub tolerance: f64,
    pub k_lo: f64,
    pub k_hi: f64,
    pub min_width: f64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            target: 0.5,
            confidence: 0.99,
            batch: 5,
            max_simulations: 30,
            tolerance: 0.02,
            k_lo: 1.0,
            k_hi: 100.0,
            min_width: 0.05,
        }
    }
}

impl SearchConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.target > 0.0 && self.target < 1.0) {
            return Err(invalid(format!("target {} outside (0, 1)", self.target)));
        }
        if !(self.confidence > 0.0 && self.confidence < 1.0) {
            return Err(invalid(format!("confidence {} outside (0, 1)", self.confidence)));
        }
        if self.tolerance <= 0.0 {
            return Err(invalid("tolerance must be positive"));
        }
        if self.batch < 2 {
            return Err(invalid("batch size must be at least 2"));
        }
        if self.max_simulations < self.batch {
            return Err(invalid("max simulations must be at least one batch"));
        }
        if self.k_lo.partial_cmp(&self.k_hi) != Some(std::cmp::Ordering::Less) || self.min_width <= 0.0 {
            return Err(invalid(format!(
                "degree interval [{}, {}] with minimum width {}",
                self.k_lo, self.k_hi, self.min_width
            )));
        }
        Ok(())
    }

    fn z(&self) -> f64 {
        Normal::standard().inverse_cdf(0.5 + self.confidence / 2.0)
    }
}

/// A source of independent uniqueness observations at a given degree.
pub trait UniquenessSampler: Sync {
    fn sample(&self, avg_degree: f64, replicate: u64) -> Result<f64>;
}

/// Samples uniqueness of neighborhoods from a model family at fixed size.
#[derive(Debug, Clone, Copy)]
pub struct ModelSampler {
    pub family: Family,
    pub n: usize,
    pub seed: u64,
}

impl UniquenessSampler for ModelSampler {
    fn sample(&self, avg_degree: f64, replicate: u64) -> Result<f64> {
        let seed = replicate_seed(self.seed, self.family, self.n, avg_degree, replicate);
        let g = ModelSpec::new(self.family, self.n, avg_degree, seed).generate()?;
        Ok(neighborhood_uniqueness(&g))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Termination {
    /// The mean estimate is within tolerance of the target.
    WithinTolerance,
    /// The confidence interval still holds the target after the maximum
    /// number of simulations.
    ConfidentHit,
    /// The degree interval became narrower than the minimum width.
    IntervalUnderflow,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Evaluation {
    pub avg_degree: f64,
    pub simulations: usize,
    pub mean: f64,
    pub sem: f64,
    pub ci_lo: f64,
    pub ci_hi: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundaryResult {
    pub k_star: f64,
    pub termination: Termination,
    pub interval: (f64, f64),
    pub evaluations: Vec<Evaluation>,
}

impl BoundaryResult {
    pub fn simulations(&self) -> usize {
        self.evaluations.iter().map(|e| e.simulations).sum()
    }
}

enum Verdict {
    Hit(Termination),
    Above,
    Below,
}

fn evaluate(
    sampler: &impl UniquenessSampler,
    k: f64,
    config: &SearchConfig,
    z: f64,
    full: bool,
) -> Result<(Evaluation, Verdict)> {
    let mut values: Vec<f64> = Vec::with_capacity(config.max_simulations);
    loop {
        let start = values.len() as u64;
        let take = config.batch.min(config.max_simulations - values.len()) as u64;
        let batch = (start..start + take)
            .into_par_iter()
            .map(|rep| sampler.sample(k, rep))
            .collect::<Result<Vec<f64>>>()?;
        values.extend(batch);

        let (mean, sem) = mean_sem(&values);
        let eval = Evaluation {
            avg_degree: k,
            simulations: values.len(),
            mean,
            sem,
            ci_lo: mean - z * sem,
            ci_hi: mean + z * sem,
        };
        let side = if mean > config.target {
            Verdict::Above
        } else {
            Verdict::Below
        };
        if (mean - config.target).abs() <= config.tolerance {
            return Ok((eval, Verdict::Hit(Termination::WithinTolerance)));
        }
        if !full || !(eval.ci_lo..=eval.ci_hi).contains(&config.target) {
            return Ok((eval, side));
        }
        if values.len() >= config.max_simulations {
            return Ok((eval, Verdict::Hit(Termination::ConfidentHit)));
        }
    }
}

/// Stochastic bisection for the degree at which uniqueness crosses the
/// target, assuming uniqueness is nondecreasing in degree on the interval.
pub fn boundary_search(
    sampler: &impl UniquenessSampler,
    config: &SearchConfig,
) -> Result<BoundaryResult> {
    config.validate()?;
    let z = config.z();
    let (mut lo, mut hi) = (config.k_lo, config.k_hi);
    let mut evaluations = Vec::new();
    let done = |k, termination, lo, hi, evaluations| BoundaryResult {
        k_star: k,
        termination,
        interval: (lo, hi),
        evaluations,
    };

    let (at_lo, v_lo) = evaluate(sampler, lo, config, z, false)?;
    let (at_hi, v_hi) = evaluate(sampler, hi, config, z, false)?;
    let (mean_lo, mean_hi) = (at_lo.mean, at_hi.mean);
    evaluations.push(at_lo);
    evaluations.push(at_hi);
    match (v_lo, v_hi) {
        (Verdict::Hit(t), _) => return Ok(done(lo, t, lo, hi, evaluations)),
        (_, Verdict::Hit(t)) => return Ok(done(hi, t, lo, hi, evaluations)),
        (Verdict::Below, Verdict::Above) => {}
        _ => {
            return Err(Error::NotBracketing {
                lo,
                hi,
                target: config.target,
                at_lo: mean_lo,
                at_hi: mean_hi,
            })
        }
    }

    loop {
        let mid = 0.5 * (lo + hi);
        if hi - lo < config.min_width {
            return Ok(done(mid, Termination::IntervalUnderflow, lo, hi, evaluations));
        }
        let (eval, verdict) = evaluate(sampler, mid, config, z, true)?;
        evaluations.push(eval);
        match verdict {
            Verdict::Hit(t) => return Ok(done(mid, t, lo, hi, evaluations)),
            Verdict::Above => hi = mid,
            Verdict::Below => lo = mid,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundaryFit {
    /// Points `(n, k*)` sorted by `n`, then `k*`.
    pub points: Vec<(f64, f64)>,
    pub slope: f64,
    pub intercept: f64,
    pub slope_se: f64,
    pub intercept_se: f64,
    /// `log k* - (slope log n + intercept)` for each point.
    pub residuals: Vec<f64>,
    pub r_squared: f64,
}

/// Least-squares fit of `log k* = slope * log n + intercept` (natural logs).
pub fn fit_boundary_line(points: &[(f64, f64)]) -> Result<BoundaryFit> {
    if points.len() < 3 {
        return Err(Error::TooFewPoints(points.len()));
    }
    if points.iter().any(|&(n, k)| !(n > 0.0 && k > 0.0)) {
        return Err(invalid("boundary points must be positive"));
    }
    let mut points = points.to_vec();
    points.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
    let xs: Vec<f64> = points.iter().map(|p| p.0.ln()).collect();
    let ys: Vec<f64> = points.iter().map(|p| p.1.ln()).collect();
    let count = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / count;
    let my = ys.iter().sum::<f64>() / count;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    if sxx == 0.0 {
        return Err(invalid("boundary points need at least two distinct sizes"));
    }
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let residuals: Vec<f64> = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| y - (slope * x + intercept))
        .collect();
    let sse: f64 = residuals.iter().map(|r| r * r).sum();
    let syy: f64 = ys.iter().map(|y| (y - my).powi(2)).sum();
    let sigma2 = sse / (count - 2.0);
    Ok(BoundaryFit {
        points,
        slope,
        intercept,
        slope_se: (sigma2 / sxx).sqrt(),
        intercept_se: (sigma2 * (1.0 / count + mx * mx / sxx)).sqrt(),
        residuals,
        r_squared: if syy > 0.0 { 1.0 - sse / syy } else { 1.0 },
    })
}
