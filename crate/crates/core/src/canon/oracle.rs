use crate::error::{Error, Result};
use crate::graph::Graph;

/// Largest graph accepted by [`are_isomorphic_oracle`].
pub const ORACLE_MAX_NODES: usize = 10;

/// Brute-force isomorphism test for test-scale graphs.
///
/// After comparing node counts, edge counts and sorted degree sequences it
/// tries every vertex bijection, assigning vertices one at a time and
/// abandoning an assignment as soon as an edge or non-edge is not preserved.
/// Shares no code with the canonical labeling search.
pub fn are_isomorphic_oracle(g1: &Graph, g2: &Graph) -> Result<bool> {
    for g in [g1, g2] {
        if g.node_count() > ORACLE_MAX_NODES {
            return Err(Error::OracleTooLarge {
                n: g.node_count(),
                cap: ORACLE_MAX_NODES,
            });
        }
    }
    let n = g1.node_count();
    if n != g2.node_count() || g1.edge_count() != g2.edge_count() {
        return Ok(false);
    }
    let mut d1 = g1.degrees();
    let mut d2 = g2.degrees();
    d1.sort_unstable();
    d2.sort_unstable();
    if d1 != d2 {
        return Ok(false);
    }

    let a1 = matrix(g1);
    let a2 = matrix(g2);
    let mut image = vec![usize::MAX; n];
    let mut used = vec![false; n];
    Ok(extend(0, n, &a1, &a2, &mut image, &mut used))
}

fn matrix(g: &Graph) -> Vec<Vec<bool>> {
    let n = g.node_count();
    let mut m = vec![vec![false; n]; n];
    for (u, v) in g.edges() {
        m[u][v] = true;
        m[v][u] = true;
    }
    m
}

fn extend(
    next: usize,
    n: usize,
    a1: &[Vec<bool>],
    a2: &[Vec<bool>],
    image: &mut [usize],
    used: &mut [bool],
) -> bool {
    if next == n {
        return true;
    }
    for cand in 0..n {
        if used[cand] {
            continue;
        }
        let consistent = (0..next).all(|prev| a1[next][prev] == a2[cand][image[prev]]);
        if !consistent {
            continue;
        }
        image[next] = cand;
        used[cand] = true;
        if extend(next + 1, n, a1, a2, image, used) {
            return true;
        }
        used[cand] = false;
    }
    false
}
