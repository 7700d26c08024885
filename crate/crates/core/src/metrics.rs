//! Occurrence frequencies and uniqueness scores.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::canon::{certificate, Certificate};
use crate::graph::Graph;

/// Non-empty neighborhood counts for one observed degree.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DegreeNonempty {
    pub degree: usize,
    pub nodes: usize,
    pub nonempty: usize,
    /// `nonempty / nodes`.
    pub fraction: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct UniquenessReport {
    /// Size of each node's neighborhood-isomorphism class, itself included.
    pub occurrence: Vec<usize>,
    pub neighborhood_uniqueness: f64,
    pub degree_uniqueness: f64,
    pub nonempty_fraction: f64,
    /// Observed degrees only, ascending.
    pub nonempty_by_degree: Vec<DegreeNonempty>,
}

/// Certificates of every node's neighborhood, in node order.
pub fn neighborhood_certificates(g: &Graph) -> Vec<Certificate> {
    (0..g.node_count())
        .into_par_iter()
        .map(|v| certificate(&g.neighborhood(v).expect("node in range")))
        .collect()
}

/// `O(v)`: how many nodes have a neighborhood isomorphic to that of `v`.
///
/// Certificates encode the node count, so only nodes sharing a degree can
/// share a class; nodes with a unique degree are settled without computing
/// a certificate.
pub fn occurrence_frequencies(g: &Graph) -> Vec<usize> {
    let n = g.node_count();
    let degrees = g.degrees();
    let mut per_degree: HashMap<usize, usize> = HashMap::new();
    for &d in &degrees {
        *per_degree.entry(d).or_default() += 1;
    }

    let certs: Vec<Option<Certificate>> = (0..n)
        .into_par_iter()
        .map(|v| {
            (per_degree[&degrees[v]] > 1)
                .then(|| certificate(&g.neighborhood(v).expect("node in range")))
        })
        .collect();

    let mut class_size: HashMap<&Certificate, usize> = HashMap::new();
    for c in certs.iter().flatten() {
        *class_size.entry(c).or_default() += 1;
    }
    certs
        .iter()
        .map(|c| c.as_ref().map_or(1, |c| class_size[c]))
        .collect()
}

fn fraction_of_ones(counts: &[usize]) -> f64 {
    if counts.is_empty() {
        return 0.0;
    }
    counts.iter().filter(|&&c| c == 1).count() as f64 / counts.len() as f64
}

/// Fraction of nodes whose neighborhood is isomorphic to no other node's.
pub fn neighborhood_uniqueness(g: &Graph) -> f64 {
    fraction_of_ones(&occurrence_frequencies(g))
}

/// Fraction of nodes whose degree occurs exactly once.
pub fn degree_uniqueness(g: &Graph) -> f64 {
    let degrees = g.degrees();
    let mut per_degree: HashMap<usize, usize> = HashMap::new();
    for &d in &degrees {
        *per_degree.entry(d).or_default() += 1;
    }
    let counts: Vec<usize> = degrees.iter().map(|d| per_degree[d]).collect();
    fraction_of_ones(&counts)
}

/// Fraction of nodes with at least one edge among their neighbors, overall
/// and per observed degree.
pub fn nonempty_fraction(g: &Graph) -> (f64, Vec<DegreeNonempty>) {
    let n = g.node_count();
    let mut table: std::collections::BTreeMap<usize, (usize, usize)> = Default::default();
    let mut total = 0;
    for v in 0..n {
        let nonempty = g.neighborhood_edge_count(v) > 0;
        let entry = table.entry(g.degree(v)).or_default();
        entry.0 += 1;
        if nonempty {
            entry.1 += 1;
            total += 1;
        }
    }
    let rows = table
        .into_iter()
        .map(|(degree, (nodes, nonempty))| DegreeNonempty {
            degree,
            nodes,
            nonempty,
            fraction: nonempty as f64 / nodes as f64,
        })
        .collect();
    let overall = if n == 0 { 0.0 } else { total as f64 / n as f64 };
    (overall, rows)
}

pub fn uniqueness_report(g: &Graph) -> UniquenessReport {
    let occurrence = occurrence_frequencies(g);
    let (nonempty, by_degree) = nonempty_fraction(g);
    UniquenessReport {
        neighborhood_uniqueness: fraction_of_ones(&occurrence),
        degree_uniqueness: degree_uniqueness(g),
        nonempty_fraction: nonempty,
        nonempty_by_degree: by_degree,
        occurrence,
    }
}
