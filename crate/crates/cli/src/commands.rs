use std::collections::hash_map::RandomState;
use std::hash::BuildHasher;
use std::path::PathBuf;
use std::time::{SystemTime, UNIX_EPOCH};

use serde::Serialize;

use nbunique::analytic::{default_degree_grid, er_curve};
use nbunique::anonymize::{default_rates, sample_edges, sampling_report, SamplingMode, SamplingPlan};
use nbunique::metrics::uniqueness_report;
use nbunique::models::{Family, ModelSpec};
use nbunique::sweep::{
    boundary_search, fit_boundary_line, parse_grid, parse_size_grid, uniqueness_map, ModelSampler,
    SearchConfig, Termination,
};
use nbunique::{load_edge_list, Graph, LoadedGraph};

use crate::error::CliError;
use crate::output::{csv, g9, Sink};
use crate::params::Params;

/// Runs one subcommand and returns the seed it used, if it is stochastic.
pub fn dispatch(name: &str, params: &mut Params, sink: &mut Sink) -> Result<Option<u64>, CliError> {
    let seed = match name {
        "analyze" | "er-curve" => None,
        _ => Some(seed(params, sink)?),
    };
    match name {
        "analyze" => analyze(params, sink)?,
        "generate" => generate(params, sink, seed.unwrap())?,
        "er-curve" => curve(params, sink)?,
        "map" => map(params, sink, seed.unwrap())?,
        "boundary" => boundary(params, sink, seed.unwrap())?,
        "sample" => sample(params, sink, seed.unwrap())?,
        "sampling-report" => report(params, sink, seed.unwrap())?,
        other => return Err(CliError::Usage(format!("unknown subcommand '{other}'"))),
    }
    Ok(seed)
}

fn seed(params: &mut Params, sink: &Sink) -> Result<u64, CliError> {
    if let Some(s) = params.get_opt::<u64>("seed")? {
        return Ok(s);
    }
    let nanos = SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map_or(0, |d| d.as_nanos() as u64);
    let drawn = RandomState::new().hash_one(nanos);
    params.set("seed", drawn);
    if !sink.to_dir() {
        eprintln!("nbunique: using seed {drawn}");
    }
    Ok(drawn)
}

fn family(params: &Params) -> Result<Family, CliError> {
    match params.raw("model") {
        Some("er") => Ok(Family::Er),
        Some("ws") => Ok(Family::Ws {
            beta: params.get("beta")?,
        }),
        Some("rgg") => Ok(Family::Rgg),
        other => Err(CliError::Usage(format!("unknown model {other:?}"))),
    }
}

fn mode(params: &Params) -> Result<SamplingMode, CliError> {
    match params.raw("mode") {
        Some("bernoulli") => Ok(SamplingMode::Bernoulli),
        Some("exact-count") => Ok(SamplingMode::ExactCount),
        other => Err(CliError::Usage(format!("unknown sampling mode {other:?}"))),
    }
}

fn load(params: &Params, sink: &mut Sink) -> Result<LoadedGraph, CliError> {
    let path: PathBuf = params.get("input")?;
    let text = sink.read_input(&path)?;
    load_edge_list(&text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn json(value: &impl Serialize) -> String {
    serde_json::to_string_pretty(value).expect("serializable") + "\n"
}

fn edge_list(header: &str, g: &Graph, label: impl Fn(usize) -> String) -> String {
    let mut out = String::from(header);
    for (u, v) in g.edges() {
        out.push_str(&label(u));
        out.push(' ');
        out.push_str(&label(v));
        out.push('\n');
    }
    out
}

#[derive(Serialize)]
struct Analysis {
    n: usize,
    m: usize,
    avg_degree: f64,
    clustering: f64,
    neighborhood_uniqueness: f64,
    degree_uniqueness: f64,
    nonempty_fraction: f64,
    duplicate_edges: usize,
    self_loops: usize,
    nonempty_by_degree: Vec<nbunique::metrics::DegreeNonempty>,
}

fn analyze(params: &Params, sink: &mut Sink) -> Result<(), CliError> {
    let loaded = load(params, sink)?;
    let stats = loaded.graph.summary_stats();
    let report = uniqueness_report(&loaded.graph);
    let analysis = Analysis {
        n: stats.n,
        m: stats.m,
        avg_degree: stats.avg_degree,
        clustering: stats.clustering,
        neighborhood_uniqueness: report.neighborhood_uniqueness,
        degree_uniqueness: report.degree_uniqueness,
        nonempty_fraction: report.nonempty_fraction,
        duplicate_edges: loaded.duplicate_edges,
        self_loops: loaded.self_loops,
        nonempty_by_degree: report.nonempty_by_degree,
    };
    sink.primary("analysis.json", &json(&analysis))
}

fn generate(params: &Params, sink: &mut Sink, seed: u64) -> Result<(), CliError> {
    let family = family(params)?;
    let spec = ModelSpec::new(family, params.get("n")?, params.get("k")?, seed);
    let g = spec.generate()?;
    let header = format!(
        "# {family} n={} k={} seed={seed}\n# realized average degree {}\n# nodes {}\n",
        spec.n,
        spec.avg_degree,
        g9(g.avg_degree()),
        g.node_count()
    );
    sink.primary("graph.txt", &edge_list(&header, &g, |v| v.to_string()))
}

fn curve(params: &Params, sink: &mut Sink) -> Result<(), CliError> {
    let n: usize = params.get("n")?;
    let grid = match params.raw("k-grid") {
        Some(text) => parse_grid(text)?,
        None => default_degree_grid(n),
    };
    let rows = er_curve(n, &grid)?.into_iter().map(|p| {
        vec![
            g9(p.avg_degree),
            g9(p.expected_degree_uniqueness),
            g9(p.expected_nonempty),
        ]
    });
    sink.primary(
        "er_curve.csv",
        &csv(&["avg_k", "expected_degree_uniqueness", "expected_nonempty"], rows),
    )
}

fn map(params: &Params, sink: &mut Sink, seed: u64) -> Result<(), CliError> {
    let family = family(params)?;
    let n_grid = parse_size_grid(&params.get::<String>("n-grid")?)?;
    let k_grid = parse_grid(&params.get::<String>("k-grid")?)?;
    let reps: usize = params.get("reps")?;
    let map = uniqueness_map(family, &n_grid, &k_grid, reps, seed)?;
    for cell in map.cells.iter().filter(|c| c.skipped.is_some()) {
        eprintln!(
            "nbunique: skipped n={} k={}: {}",
            cell.n,
            g9(cell.avg_degree),
            cell.skipped.as_deref().unwrap_or_default()
        );
    }
    let rows = map.cells.iter().map(|c| {
        let (mean, sem) = if c.skipped.is_some() {
            (String::new(), String::new())
        } else {
            (g9(c.mean), g9(c.sem))
        };
        vec![c.n.to_string(), g9(c.avg_degree), mean, sem, c.reps.to_string()]
    });
    sink.primary(
        "map.csv",
        &csv(&["n", "avg_k", "mean_uniqueness", "sem", "reps"], rows),
    )
}

fn termination_name(t: Termination) -> &'static str {
    match t {
        Termination::WithinTolerance => "within_tolerance",
        Termination::ConfidentHit => "confident_hit",
        Termination::IntervalUnderflow => "interval_underflow",
    }
}

#[derive(Serialize)]
struct FitOutput {
    slope: f64,
    intercept: f64,
    slope_se: f64,
    intercept_se: f64,
    r_squared: f64,
    points: Vec<(f64, f64)>,
    residuals: Vec<f64>,
}

fn boundary(params: &Params, sink: &mut Sink, seed: u64) -> Result<(), CliError> {
    let family = family(params)?;
    let n_grid = parse_size_grid(&params.get::<String>("n-grid")?)?;
    let config = SearchConfig {
        target: params.get("target")?,
        confidence: params.get("confidence")?,
        batch: params.get("batch")?,
        max_simulations: params.get("max-sims")?,
        tolerance: params.get("tol")?,
        k_lo: params.get("k-lo")?,
        k_hi: params.get("k-hi")?,
        min_width: params.get("min-width")?,
    };
    config.validate()?;

    let mut rows = Vec::new();
    let mut points = Vec::new();
    for &n in &n_grid {
        let sampler = ModelSampler { family, n, seed };
        match boundary_search(&sampler, &config) {
            Ok(r) => {
                points.push((n as f64, r.k_star));
                rows.push(vec![
                    n.to_string(),
                    g9(r.k_star),
                    r.evaluations.len().to_string(),
                    r.simulations().to_string(),
                    termination_name(r.termination).to_string(),
                ]);
            }
            Err(e @ nbunique::Error::NotBracketing { .. }) => {
                eprintln!("nbunique: n={n}: {e}");
                rows.push(vec![n.to_string(), String::new(), "2".into(), String::new(), "not_bracketing".into()]);
            }
            Err(e) => return Err(e.into()),
        }
    }
    sink.primary(
        "boundary.csv",
        &csv(&["n", "k_star", "evaluations", "simulations", "termination"], rows),
    )?;
    if points.len() >= 3 {
        let fit = fit_boundary_line(&points)?;
        let out = FitOutput {
            slope: fit.slope,
            intercept: fit.intercept,
            slope_se: fit.slope_se,
            intercept_se: fit.intercept_se,
            r_squared: fit.r_squared,
            points: fit.points,
            residuals: fit.residuals,
        };
        sink.secondary("fit.json", &json(&out))?;
    } else {
        eprintln!("nbunique: {} boundary points; a line fit needs 3", points.len());
    }
    Ok(())
}

#[derive(Serialize)]
struct SampleProvenance {
    rate: f64,
    mode: SamplingMode,
    seed: u64,
    nodes: usize,
    original_edges: usize,
    retained_edges: usize,
}

fn sample(params: &Params, sink: &mut Sink, seed: u64) -> Result<(), CliError> {
    let loaded = load(params, sink)?;
    let plan = SamplingPlan::new(params.get("rate")?, mode(params)?, seed)?;
    let h = sample_edges(&loaded.graph, &plan)?;
    let header = format!("# nodes {}\n", h.node_count());
    sink.primary("sampled.txt", &edge_list(&header, &h, |v| loaded.labels[v].clone()))?;
    let provenance = SampleProvenance {
        rate: plan.rate,
        mode: plan.mode,
        seed,
        nodes: h.node_count(),
        original_edges: loaded.graph.edge_count(),
        retained_edges: h.edge_count(),
    };
    sink.secondary("sample.json", &json(&provenance))
}

fn report(params: &Params, sink: &mut Sink, seed: u64) -> Result<(), CliError> {
    let loaded = load(params, sink)?;
    let rates = match params.raw("rates") {
        Some(text) => parse_grid(text)?,
        None => default_rates(),
    };
    let rows = sampling_report(&loaded.graph, &rates, mode(params)?, params.get("trials")?, seed)?;
    let rows = rows.iter().map(|r| {
        vec![
            g9(r.rate),
            g9(r.avg_degree),
            g9(r.uniqueness),
            g9(r.uniqueness_sem),
            g9(r.degree_error),
            g9(r.triangle_error),
        ]
    });
    sink.primary(
        "sampling_report.csv",
        &csv(
            &["rate", "avg_degree", "uniqueness", "uniqueness_sem", "degree_error", "triangle_error"],
            rows,
        ),
    )
}
