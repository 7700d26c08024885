//! Seeded random network models parameterized by size and average degree.

mod er;
mod rgg;
mod ws;

use std::fmt;

use serde::Serialize;

use crate::error::{invalid, Result};
use crate::graph::Graph;
use crate::rng;

pub use rgg::{rgg_expected_degree, rgg_radius, square_distance_density};
pub use ws::ws_lattice_degree;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "family", rename_all = "lowercase")]
pub enum Family {
    /// Erdős–Rényi `G(n, p)` with `p = <k> / (n - 1)`.
    Er,
    /// Watts–Strogatz ring lattice with rewiring probability `beta`.
    Ws { beta: f64 },
    /// Soft random geometric graph in the unit square.
    Rgg,
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::Er => "er",
            Family::Ws { .. } => "ws",
            Family::Rgg => "rgg",
        }
    }

    pub fn beta(&self) -> Option<f64> {
        match *self {
            Family::Ws { beta } => Some(beta),
            _ => None,
        }
    }

    /// Stable small integer used when deriving substream seeds.
    pub(crate) fn code(&self) -> u64 {
        match self {
            Family::Er => 1,
            Family::Ws { .. } => 2,
            Family::Rgg => 3,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Ws { beta } => write!(f, "ws(beta={beta})"),
            other => f.write_str(other.name()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ModelSpec {
    #[serde(flatten)]
    pub family: Family,
    pub n: usize,
    pub avg_degree: f64,
    pub seed: u64,
}

impl ModelSpec {
    pub fn new(family: Family, n: usize, avg_degree: f64, seed: u64) -> Self {
        Self {
            family,
            n,
            avg_degree,
            seed,
        }
    }

    pub fn with_seed(self, seed: u64) -> Self {
        Self { seed, ..self }
    }

    pub fn with_avg_degree(self, avg_degree: f64) -> Self {
        Self { avg_degree, ..self }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(invalid("network size must be at least 1"));
        }
        let max = (self.n - 1) as f64;
        if !(0.0..=max).contains(&self.avg_degree) {
            return Err(invalid(format!(
                "average degree {} outside [0, {}]",
                self.avg_degree, max
            )));
        }
        if let Family::Ws { beta } = self.family {
            if !(0.0..=1.0).contains(&beta) {
                return Err(invalid(format!("rewiring probability {beta} outside [0, 1]")));
            }
        }
        Ok(())
    }

    pub fn generate(&self) -> Result<Graph> {
        self.validate()?;
        let mut rng = rng::rng(self.seed);
        match self.family {
            Family::Er => Ok(er::generate(self.n, self.avg_degree, &mut rng)),
            Family::Ws { beta } => ws::generate(self.n, self.avg_degree, beta, &mut rng),
            Family::Rgg => rgg::generate(self.n, self.avg_degree, &mut rng),
        }
    }
}

pub fn gen_er(n: usize, avg_degree: f64, seed: u64) -> Result<Graph> {
    ModelSpec::new(Family::Er, n, avg_degree, seed).generate()
}

pub fn gen_ws(n: usize, avg_degree: f64, beta: f64, seed: u64) -> Result<Graph> {
    ModelSpec::new(Family::Ws { beta }, n, avg_degree, seed).generate()
}

pub fn gen_rgg(n: usize, avg_degree: f64, seed: u64) -> Result<Graph> {
    ModelSpec::new(Family::Rgg, n, avg_degree, seed).generate()
}
