use rand::Rng;

use crate::graph::Graph;

/// `G(n, p)` by geometric skipping over the pairs `(v, w)`, `w < v`, so the
/// cost is proportional to the number of edges rather than `n^2`.
pub(super) fn generate(n: usize, avg_degree: f64, rng: &mut impl Rng) -> Graph {
    if n < 2 || avg_degree <= 0.0 {
        return Graph::empty(n);
    }
    let p = avg_degree / (n - 1) as f64;
    if p >= 1.0 {
        return Graph::complete(n);
    }

    let log_q = (-p).ln_1p();
    let mut edges = Vec::with_capacity((p * (n * (n - 1) / 2) as f64 * 1.1) as usize);
    let mut v: usize = 1;
    let mut w: i64 = -1;
    while v < n {
        let r: f64 = rng.random();
        let skip = ((-r).ln_1p() / log_q).floor();
        w += 1 + if skip.is_finite() { skip as i64 } else { i64::MAX / 4 };
        while w >= v as i64 && v < n {
            w -= v as i64;
            v += 1;
        }
        if v < n {
            edges.push((v, w as usize));
        }
    }
    Graph::from_edges(n, edges)
}
