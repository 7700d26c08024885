use rand::Rng;

use crate::error::{invalid, Result};
use crate::graph::Graph;

/// Even lattice degree used for a requested average degree: the nearest
/// even integer, at least 2.
pub fn ws_lattice_degree(avg_degree: f64) -> usize {
    ((avg_degree / 2.0).round() as usize * 2).max(2)
}

/// Classic Watts–Strogatz: each lattice edge `(u, u + j)` is, with
/// probability `beta`, replaced by `(u, w)` for a uniform `w` that is neither
/// `u` nor already adjacent to `u`. The edge count is preserved and the
/// result may be disconnected.
pub(super) fn generate(n: usize, avg_degree: f64, beta: f64, rng: &mut impl Rng) -> Result<Graph> {
    let k = ws_lattice_degree(avg_degree);
    if k >= n {
        return Err(invalid(format!(
            "lattice degree {k} must be smaller than network size {n}"
        )));
    }
    let half = k / 2;
    let mut adj: Vec<Vec<usize>> = vec![Vec::with_capacity(k + 4); n];
    for u in 0..n {
        for j in 1..=half {
            let v = (u + j) % n;
            adj[u].push(v);
            adj[v].push(u);
        }
    }

    if beta > 0.0 {
        for j in 1..=half {
            for u in 0..n {
                if rng.random::<f64>() >= beta {
                    continue;
                }
                if adj[u].len() >= n - 1 {
                    continue;
                }
                let v = (u + j) % n;
                let w = loop {
                    let w = rng.random_range(0..n);
                    if w != u && !adj[u].contains(&w) {
                        break w;
                    }
                };
                remove(&mut adj[u], v);
                remove(&mut adj[v], u);
                adj[u].push(w);
                adj[w].push(u);
            }
        }
    }

    let edges = adj
        .iter()
        .enumerate()
        .flat_map(|(u, list)| list.iter().filter(move |&&v| u < v).map(move |&v| (u, v)));
    Ok(Graph::from_edges(n, edges))
}

fn remove(list: &mut Vec<usize>, x: usize) {
    if let Some(i) = list.iter().position(|&y| y == x) {
        list.swap_remove(i);
    }
}
