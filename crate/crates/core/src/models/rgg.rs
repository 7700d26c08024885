//! Soft random geometric graph.
//!
//! Points are uniform in the unit square (no wraparound). A pair at distance
//! `d <= r` is joined with probability `exp(-d / (r / 3))`; pairs farther
//! than `r` never are. The radius `r` is chosen by bisection so that the
//! exact expected average degree, including boundary effects, equals the
//! requested one.

use std::f64::consts::{PI, SQRT_2};

use rand::Rng;

use crate::error::{invalid, Result};
use crate::graph::Graph;

/// Kernel decay length as a fraction of the cutoff radius.
const DECAY_FRACTION: f64 = 1.0 / 3.0;
const MAX_RADIUS: f64 = 1.0e4;
const SIMPSON_INTERVALS: usize = 2048;

/// Density of the distance between two independent uniform points in the
/// unit square.
pub fn square_distance_density(d: f64) -> f64 {
    if d <= 0.0 || d >= SQRT_2 {
        0.0
    } else if d <= 1.0 {
        2.0 * d * (PI - 4.0 * d + d * d)
    } else {
        let s = (d * d - 1.0).sqrt();
        2.0 * d * (4.0 * s - (d * d + 2.0 - PI) - 4.0 * (1.0 / d).acos())
    }
}

fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64) -> f64 {
    if b <= a {
        return 0.0;
    }
    let n = SIMPSON_INTERVALS;
    let h = (b - a) / n as f64;
    let mut acc = f(a) + f(b);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        acc += w * f(a + i as f64 * h);
    }
    acc * h / 3.0
}

/// Probability that two random points are joined at cutoff radius `r`.
fn link_probability(r: f64) -> f64 {
    if r <= 0.0 {
        return 0.0;
    }
    let scale = r * DECAY_FRACTION;
    let integrand = |d: f64| square_distance_density(d) * (-d / scale).exp();
    let reach = r.min(SQRT_2);
    simpson(integrand, 0.0, reach.min(1.0)) + simpson(integrand, 1.0, reach)
}

/// Expected average degree of an `n`-node soft RGG with cutoff radius `r`.
pub fn rgg_expected_degree(n: usize, r: f64) -> f64 {
    n.saturating_sub(1) as f64 * link_probability(r)
}

/// Cutoff radius whose expected average degree is `avg_degree`.
pub fn rgg_radius(n: usize, avg_degree: f64) -> Result<f64> {
    if avg_degree <= 0.0 {
        return Ok(0.0);
    }
    if rgg_expected_degree(n, MAX_RADIUS) <= avg_degree {
        return Err(invalid(format!(
            "soft RGG on {n} nodes cannot reach average degree {avg_degree}"
        )));
    }
    // Hard-disk radius ignoring the kernel and the boundary; a lower bound.
    let mut lo = (avg_degree / (PI * (n - 1) as f64)).sqrt().min(SQRT_2) * 0.5;
    while rgg_expected_degree(n, lo) > avg_degree {
        lo *= 0.5;
    }
    let mut hi = MAX_RADIUS;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if rgg_expected_degree(n, mid) < avg_degree {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= 1e-14 * hi {
            break;
        }
    }
    Ok(0.5 * (lo + hi))
}

pub(super) fn generate(n: usize, avg_degree: f64, rng: &mut impl Rng) -> Result<Graph> {
    if n < 2 || avg_degree <= 0.0 {
        return Ok(Graph::empty(n));
    }
    let r = rgg_radius(n, avg_degree)?;
    let points: Vec<(f64, f64)> = (0..n).map(|_| (rng.random(), rng.random())).collect();

    // Bucket points into square cells of side >= r.
    let max_side = 2 * (n as f64).sqrt().ceil() as usize;
    let side = ((1.0 / r).floor() as usize).clamp(1, max_side);
    let cell_of = |x: f64| ((x * side as f64) as usize).min(side - 1);
    let mut cells: Vec<Vec<usize>> = vec![Vec::new(); side * side];
    for (i, &(x, y)) in points.iter().enumerate() {
        cells[cell_of(y) * side + cell_of(x)].push(i);
    }

    let scale = r * DECAY_FRACTION;
    let mut edges = Vec::new();
    let mut candidates: Vec<(usize, f64)> = Vec::new();
    for (i, &(x, y)) in points.iter().enumerate() {
        let (cx, cy) = (cell_of(x), cell_of(y));
        candidates.clear();
        for ny in cy.saturating_sub(1)..=(cy + 1).min(side - 1) {
            for nx in cx.saturating_sub(1)..=(cx + 1).min(side - 1) {
                for &j in &cells[ny * side + nx] {
                    if j <= i {
                        continue;
                    }
                    let (px, py) = points[j];
                    let d = ((px - x).powi(2) + (py - y).powi(2)).sqrt();
                    if d <= r {
                        candidates.push((j, d));
                    }
                }
            }
        }
        candidates.sort_unstable_by_key(|&(j, _)| j);
        for &(j, d) in &candidates {
            if rng.random::<f64>() < (-d / scale).exp() {
                edges.push((i, j));
            }
        }
    }
    Ok(Graph::from_edges(n, edges))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn distance_density_is_normalized() {
        let total = simpson(square_distance_density, 0.0, 1.0)
            + simpson(square_distance_density, 1.0, SQRT_2);
        assert!((total - 1.0).abs() < 1e-6, "{total}");
    }

    #[test]
    fn distance_density_matches_sampling() {
        // Mean distance between random points in the unit square is
        // (2 + sqrt 2 + 5 asinh 1) / 15.
        let exact = (2.0 + SQRT_2 + 5.0 * 1f64.asinh()) / 15.0;
        let by_density = simpson(|d| d * square_distance_density(d), 0.0, 1.0)
            + simpson(|d| d * square_distance_density(d), 1.0, SQRT_2);
        assert!((by_density - exact).abs() < 1e-6);

        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let samples = 200_000;
        let mc: f64 = (0..samples)
            .map(|_| {
                let (a, b, c, d): (f64, f64, f64, f64) =
                    (rng.random(), rng.random(), rng.random(), rng.random());
                ((a - c).powi(2) + (b - d).powi(2)).sqrt()
            })
            .sum::<f64>()
            / samples as f64;
        assert!((mc - exact).abs() < 3e-3, "{mc} vs {exact}");
    }

    #[test]
    fn radius_inverts_expected_degree() {
        for (n, k) in [(100, 5.0), (2000, 10.0), (20000, 100.0), (50, 45.0)] {
            let r = rgg_radius(n, k).unwrap();
            assert!((rgg_expected_degree(n, r) - k).abs() < 1e-9 * k.max(1.0));
        }
    }

    #[test]
    fn expected_degree_is_increasing_in_radius() {
        let mut prev = 0.0;
        for i in 1..200 {
            let e = rgg_expected_degree(1000, i as f64 * 0.01);
            assert!(e > prev);
            prev = e;
        }
    }
}
