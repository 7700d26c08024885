//! Uniform edge sampling as a release-time anonymizer, with the estimators
//! that undo its bias on degrees and triangle counts.

use rand::seq::index;
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{invalid, Result};
use crate::graph::Graph;
use crate::metrics::neighborhood_uniqueness;
use crate::rng::{self, derive_seed};
use crate::sweep::mean_sem;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SamplingMode {
    /// Every edge kept independently with probability `s`.
    #[default]
    Bernoulli,
    /// A uniformly random subset of exactly `round(s m)` edges. The triangle
    /// estimator is then biased by O(1/m).
    ExactCount,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SamplingPlan {
    pub rate: f64,
    pub mode: SamplingMode,
    pub seed: u64,
}

fn check_rate(s: f64) -> Result<()> {
    if s > 0.0 && s <= 1.0 {
        Ok(())
    } else {
        Err(invalid(format!("sampling rate {s} outside (0, 1]")))
    }
}

impl SamplingPlan {
    pub fn new(rate: f64, mode: SamplingMode, seed: u64) -> Result<Self> {
        check_rate(rate)?;
        Ok(Self { rate, mode, seed })
    }
}

/// Retains a random subset of the edges of `g`; the node set is unchanged.
pub fn sample_edges(g: &Graph, plan: &SamplingPlan) -> Result<Graph> {
    check_rate(plan.rate)?;
    let mut rng = rng::rng(plan.seed);
    let kept: Vec<(usize, usize)> = match plan.mode {
        SamplingMode::Bernoulli => g
            .edges()
            .filter(|_| rng.random::<f64>() < plan.rate)
            .collect(),
        SamplingMode::ExactCount => {
            let edges: Vec<(usize, usize)> = g.edges().collect();
            let keep = (plan.rate * edges.len() as f64).round() as usize;
            let mut chosen = index::sample(&mut rng, edges.len(), keep).into_vec();
            chosen.sort_unstable();
            chosen.into_iter().map(|i| edges[i]).collect()
        }
    };
    Ok(Graph::from_edges(g.node_count(), kept))
}

/// Degree estimate `k_s / s` from a degree observed after sampling.
pub fn estimate_degree(observed: f64, s: f64) -> Result<f64> {
    check_rate(s)?;
    Ok(observed / s)
}

/// Triangle-count estimate `t_s / s^3` from a count observed after sampling.
pub fn estimate_triangles(observed: f64, s: f64) -> Result<f64> {
    check_rate(s)?;
    Ok(observed / (s * s * s))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SamplingRow {
    pub rate: f64,
    pub avg_degree: f64,
    pub uniqueness: f64,
    /// Standard error of `uniqueness` across trials.
    pub uniqueness_sem: f64,
    /// Mean over nodes of `|k_s / s - k|`, averaged over trials.
    pub degree_error: f64,
    /// `|t_s / s^3 - t|`, averaged over trials.
    pub triangle_error: f64,
}

/// Sampling rates `1.0, 0.9, ..., 0.1`.
pub fn default_rates() -> Vec<f64> {
    (1..=10).rev().map(|i| i as f64 / 10.0).collect()
}

/// For each rate, samples `g` in `trials` independent draws and records the
/// released network's average degree and uniqueness together with the
/// estimation errors. Rows are ordered by decreasing rate.
pub fn sampling_report(
    g: &Graph,
    rates: &[f64],
    mode: SamplingMode,
    trials: usize,
    seed: u64,
) -> Result<Vec<SamplingRow>> {
    if trials == 0 {
        return Err(invalid("need at least one sampling trial"));
    }
    for &s in rates {
        check_rate(s)?;
    }
    let mut rates = rates.to_vec();
    rates.sort_by(|a, b| b.total_cmp(a));
    rates.dedup();

    let degrees = g.degrees();
    let triangles = g.triangle_count() as f64;
    let n = g.node_count().max(1) as f64;

    rates
        .into_par_iter()
        .map(|s| {
            let draws = (0..trials as u64)
                .into_par_iter()
                .map(|t| {
                    let plan = SamplingPlan::new(s, mode, derive_seed(seed, &[s.to_bits(), t]))?;
                    let h = sample_edges(g, &plan)?;
                    let mut degree_error = 0.0;
                    for (v, &k) in degrees.iter().enumerate() {
                        degree_error += (estimate_degree(h.degree(v) as f64, s)? - k as f64).abs();
                    }
                    let triangle_error =
                        (estimate_triangles(h.triangle_count() as f64, s)? - triangles).abs();
                    Ok([
                        h.avg_degree(),
                        neighborhood_uniqueness(&h),
                        degree_error / n,
                        triangle_error,
                    ])
                })
                .collect::<Result<Vec<[f64; 4]>>>()?;
            let column = |i: usize| draws.iter().map(|d| d[i]).collect::<Vec<f64>>();
            let mean = |i: usize| mean_sem(&column(i)).0;
            let (uniqueness, uniqueness_sem) = mean_sem(&column(1));
            Ok(SamplingRow {
                rate: s,
                avg_degree: mean(0),
                uniqueness,
                uniqueness_sem,
                degree_error: mean(2),
                triangle_error: mean(3),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::gen_er;

    fn triangle() -> Graph {
        Graph::from_edges(3, [(0, 1), (1, 2), (0, 2)])
    }

    #[test]
    fn full_rate_is_identity() {
        let g = gen_er(300, 8.0, 1).unwrap();
        for mode in [SamplingMode::Bernoulli, SamplingMode::ExactCount] {
            let h = sample_edges(&g, &SamplingPlan::new(1.0, mode, 5).unwrap()).unwrap();
            assert_eq!(h, g);
        }
    }

    #[test]
    fn exact_count_retains_rounded_share() {
        let h = sample_edges(&triangle(), &SamplingPlan::new(1.0 / 3.0, SamplingMode::ExactCount, 2).unwrap())
            .unwrap();
        assert_eq!((h.node_count(), h.edge_count()), (3, 1));
        let h = sample_edges(&triangle(), &SamplingPlan::new(0.1, SamplingMode::ExactCount, 2).unwrap())
            .unwrap();
        assert_eq!((h.node_count(), h.edge_count()), (3, 0));

        let g = gen_er(500, 10.0, 3).unwrap();
        let m = g.edge_count() as f64;
        for s in [0.05, 0.33, 0.5, 0.77] {
            let h = sample_edges(&g, &SamplingPlan::new(s, SamplingMode::ExactCount, 9).unwrap()).unwrap();
            assert_eq!(h.edge_count(), (s * m).round() as usize);
            assert_eq!(h.node_count(), 500);
            assert!(h.edges().all(|(u, v)| g.has_edge(u, v)));
        }
    }

    #[test]
    fn sampling_is_deterministic() {
        let g = gen_er(400, 6.0, 1).unwrap();
        let plan = SamplingPlan::new(0.4, SamplingMode::Bernoulli, 77).unwrap();
        assert_eq!(sample_edges(&g, &plan).unwrap(), sample_edges(&g, &plan).unwrap());
    }

    #[test]
    fn estimator_arithmetic() {
        assert_eq!(estimate_degree(3.0, 0.5).unwrap(), 6.0);
        assert_eq!(estimate_degree(7.0, 1.0).unwrap(), 7.0);
        assert_eq!(estimate_triangles(2.0, 0.5).unwrap(), 16.0);
        assert_eq!(estimate_triangles(11.0, 1.0).unwrap(), 11.0);
        for s in [0.0, -0.1, 1.5, f64::NAN] {
            assert!(estimate_degree(1.0, s).is_err());
            assert!(estimate_triangles(1.0, s).is_err());
            assert!(SamplingPlan::new(s, SamplingMode::Bernoulli, 0).is_err());
        }
    }

    #[test]
    fn report_at_full_rate_has_no_error() {
        let g = gen_er(300, 8.0, 4).unwrap();
        let rows = sampling_report(&g, &[1.0], SamplingMode::Bernoulli, 3, 1).unwrap();
        assert_eq!(rows[0].uniqueness.to_bits(), neighborhood_uniqueness(&g).to_bits());
        assert_eq!(rows[0].uniqueness_sem, 0.0);
        assert_eq!((rows[0].degree_error, rows[0].triangle_error), (0.0, 0.0));
    }

    #[test]
    fn report_rows_descend_and_end_anonymous_on_triangle() {
        let rows = sampling_report(&triangle(), &[1e-9, 1.0], SamplingMode::ExactCount, 1, 1).unwrap();
        assert_eq!(rows[0].rate, 1.0);
        assert_eq!(rows[1].uniqueness, 0.0);
        assert_eq!(rows[1].avg_degree, 0.0);
        assert!(sampling_report(&triangle(), &[0.0], SamplingMode::Bernoulli, 1, 1).is_err());
        let rates: Vec<f64> = sampling_report(&triangle(), &default_rates(), SamplingMode::Bernoulli, 1, 1)
            .unwrap()
            .iter()
            .map(|r| r.rate)
            .collect();
        assert_eq!(rates, default_rates());
    }
}
