//! End-to-end acceptance checks. Runs as a plain binary and prints one
//! PASS/FAIL line per criterion; exits non-zero if any fails.

use std::collections::HashMap;
use std::fs;
use std::panic::{self, AssertUnwindSafe};
use std::path::Path;
use std::process::Command;
use std::time::Instant;

use nbunique::analytic::{er_degree_uniqueness, er_nonempty_fraction};
use nbunique::anonymize::{
    estimate_degree, estimate_triangles, sample_edges, sampling_report, SamplingMode, SamplingPlan,
};
use nbunique::metrics::{degree_uniqueness, neighborhood_uniqueness, nonempty_fraction};
use nbunique::models::{gen_er, gen_rgg, Family, ModelSpec};
use nbunique::rng::derive_seed;
use nbunique::sweep::{
    boundary_search, mean_sem, uniqueness_at, BoundaryResult, ModelSampler, SearchConfig,
    UniquenessSampler,
};
use nbunique::{are_isomorphic_oracle, certificate, Graph};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn er_degree_uniqueness_closed_form() -> Outcome {
    let n = 100;
    let mut worst = (0.0f64, 0.0);
    for k in (5..=95).step_by(5) {
        let k = k as f64;
        let values: Vec<f64> = (0..400)
            .map(|s| degree_uniqueness(&gen_er(n, k, derive_seed(1, &[k.to_bits(), s])).unwrap()))
            .collect();
        let (mean, sem) = mean_sem(&values);
        let z = (mean - er_degree_uniqueness(n, k).unwrap()).abs() / sem;
        if z > worst.0 {
            worst = (z, k);
        }
    }
    check(
        worst.0 <= 3.0,
        format!("largest deviation {:.2} SEM at <k>={}", worst.0, worst.1),
    )
}

fn er_nonempty_closed_form() -> Outcome {
    let n = 1000;
    let mut worst = (0.0f64, 0.0);
    for k in [2.0, 5.0, 10.0, 20.0, 40.0] {
        let values: Vec<f64> = (0..20)
            .map(|s| nonempty_fraction(&gen_er(n, k, derive_seed(2, &[k.to_bits(), s])).unwrap()).0)
            .collect();
        let (mean, sem) = mean_sem(&values);
        // Every seed can land on the same fraction (all neighborhoods
        // non-empty at <k> = 40); one node in n over R draws is then the
        // smallest resolvable standard error.
        let sem = sem.max(1.0 / (n as f64 * (values.len() as f64).sqrt()));
        let z = (mean - er_nonempty_fraction(n, k).unwrap()).abs() / sem;
        if z > worst.0 {
            worst = (z, k);
        }
    }
    check(
        worst.0 <= 3.0,
        format!("largest deviation {:.2} SEM at <k>={}", worst.0, worst.1),
    )
}

fn degree_uniqueness_argmax() -> Outcome {
    let mut found = Vec::new();
    for n in [50usize, 100, 200] {
        let grid: Vec<f64> = (0..=2 * (n - 1)).map(|i| i as f64 * 0.5).collect();
        let best = grid
            .iter()
            .copied()
            .max_by(|&a, &b| {
                er_degree_uniqueness(n, a)
                    .unwrap()
                    .total_cmp(&er_degree_uniqueness(n, b).unwrap())
            })
            .unwrap();
        found.push((n, best));
    }
    check(
        found
            .iter()
            .all(|&(n, k)| (k - (n - 1) as f64 / 2.0).abs() <= 0.5),
        format!("maximizers {found:?}"),
    )
}

fn all_graphs(n: usize) -> Vec<Graph> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    (0u32..1 << pairs.len())
        .map(|mask| {
            let edges = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &e)| e);
            Graph::from_edges(n, edges)
        })
        .collect()
}

fn certificate_exactness() -> Outcome {
    let mut counts = Vec::new();
    for n in 1..=5 {
        let graphs = all_graphs(n);
        let mut reps: Vec<usize> = Vec::new();
        let mut oracle_class = Vec::with_capacity(graphs.len());
        for (i, g) in graphs.iter().enumerate() {
            let class = reps
                .iter()
                .position(|&r| are_isomorphic_oracle(&graphs[r], g).unwrap());
            oracle_class.push(class.unwrap_or_else(|| {
                reps.push(i);
                reps.len() - 1
            }));
        }
        let mut by_cert: HashMap<_, usize> = HashMap::new();
        for (g, &class) in graphs.iter().zip(&oracle_class) {
            let seen = *by_cert.entry(certificate(g)).or_insert(class);
            if seen != class {
                return Err(format!("n={n}: certificate merges two oracle classes"));
            }
        }
        if by_cert.len() != reps.len() {
            return Err(format!("n={n}: {} certificates for {} classes", by_cert.len(), reps.len()));
        }
        counts.push(reps.len());
    }
    check(counts == [1, 2, 4, 11, 34], format!("class counts {counts:?}"))
}

fn neighborhood_dominates_degree() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let sizes = [100, 200, 500, 1000, 2000];
    let mut violations = Vec::new();
    let mut checked = 0;
    for family in [Family::Er, Family::Ws { beta: 0.5 }, Family::Rgg] {
        for _ in 0..200 {
            let n = sizes[rng.random_range(0..sizes.len())];
            let k = rng.random_range(1.0..20.0);
            let g = ModelSpec::new(family, n, k, rng.random()).generate().unwrap();
            checked += 1;
            if neighborhood_uniqueness(&g) < degree_uniqueness(&g) {
                violations.push(format!("{family} n={n} k={k:.2}"));
            }
        }
    }
    check(
        violations.is_empty(),
        format!("{checked} graphs, {} violations {violations:?}", violations.len()),
    )
}

fn rgg_transition() -> Outcome {
    let low = uniqueness_at(&ModelSpec::new(Family::Rgg, 2000, 2.0, 0), 10, 6).unwrap();
    let high = uniqueness_at(&ModelSpec::new(Family::Rgg, 2000, 30.0, 0), 10, 6).unwrap();
    check(
        low.0 < 0.2 && high.0 > 0.9,
        format!("mean U_N {:.3} at <k>=2, {:.3} at <k>=30", low.0, high.0),
    )
}

fn final_width(r: &BoundaryResult) -> f64 {
    r.interval.1 - r.interval.0
}

fn boundary_band_and_ordering() -> Outcome {
    let n = 10_000;
    let search = |family| {
        let sampler = ModelSampler { family, n, seed: 7 };
        boundary_search(&sampler, &SearchConfig::default()).unwrap()
    };
    let rgg = search(Family::Rgg);
    let ws = search(Family::Ws { beta: 0.5 });
    let er = search(Family::Er);
    let band = |r: &BoundaryResult| (4.0..=25.0).contains(&r.k_star);
    let ordered = rgg.k_star <= ws.k_star + final_width(&rgg) + final_width(&ws)
        && ws.k_star <= er.k_star + final_width(&ws) + final_width(&er);
    check(
        band(&rgg) && band(&ws) && ordered,
        format!(
            "k* rgg {:.2}, ws {:.2}, er {:.2}",
            rgg.k_star, ws.k_star, er.k_star
        ),
    )
}

struct NoisyLogistic {
    seed: u64,
}

impl UniquenessSampler for NoisyLogistic {
    fn sample(&self, k: f64, replicate: u64) -> nbunique::Result<f64> {
        let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(self.seed, &[k.to_bits(), replicate]));
        let noise = Normal::new(0.0, 0.02).unwrap().sample(&mut rng);
        Ok(1.0 / (1.0 + (-(k - 10.0)).exp()) + noise)
    }
}

fn search_on_noisy_logistic() -> Outcome {
    let hits = (0..100)
        .filter(|&seed| {
            let r = boundary_search(&NoisyLogistic { seed }, &SearchConfig::default()).unwrap();
            (r.k_star - 10.0).abs() <= 0.5
        })
        .count();
    check(hits >= 95, format!("{hits}/100 trials within 0.5 of the crossing"))
}

fn estimators_unbiased() -> Outcome {
    let g = gen_er(500, 10.0, 9).unwrap();
    let n = g.node_count();
    let truth_k = g.avg_degree();
    let truth_t = g.triangle_count() as f64;
    let resamples = 1000u64;
    let mut notes = Vec::new();
    let mut ok = true;
    for s in [0.3, 0.5, 0.7] {
        let mut per_node = vec![Vec::with_capacity(resamples as usize); n];
        let mut avg = Vec::with_capacity(resamples as usize);
        let mut tri = Vec::with_capacity(resamples as usize);
        for t in 0..resamples {
            let plan = SamplingPlan::new(s, SamplingMode::Bernoulli, derive_seed(10, &[s.to_bits(), t])).unwrap();
            let h = sample_edges(&g, &plan).unwrap();
            let mut total = 0.0;
            for (v, values) in per_node.iter_mut().enumerate() {
                let k = estimate_degree(h.degree(v) as f64, s).unwrap();
                values.push(k);
                total += k;
            }
            avg.push(total / n as f64);
            tri.push(estimate_triangles(h.triangle_count() as f64, s).unwrap());
        }
        let (k_mean, k_sem) = mean_sem(&avg);
        let (t_mean, t_sem) = mean_sem(&tri);
        let inside = per_node
            .iter()
            .enumerate()
            .filter(|(v, values)| {
                let (m, se) = mean_sem(values);
                (m - g.degree(*v) as f64).abs() <= 3.0 * se || se == 0.0
            })
            .count();
        let pass = (k_mean - truth_k).abs() <= 3.0 * k_sem
            && (t_mean - truth_t).abs() <= 3.0 * t_sem
            && inside as f64 >= 0.99 * n as f64;
        ok &= pass;
        notes.push(format!(
            "s={s}: degree {:.2} SEM, triangles {:.2} SEM, {inside}/{n} nodes within 3 SEM",
            (k_mean - truth_k).abs() / k_sem,
            (t_mean - truth_t).abs() / t_sem
        ));
    }
    let full = sampling_report(&g, &[1.0], SamplingMode::Bernoulli, 3, 1).unwrap()[0];
    let exact = full.degree_error == 0.0 && full.triangle_error == 0.0;
    notes.push(format!("s=1 errors {} / {}", full.degree_error, full.triangle_error));
    check(ok && exact, notes.join("; "))
}

fn sampling_report_shape() -> Outcome {
    let g = gen_rgg(2000, 30.0, 11).unwrap();
    let rates: Vec<f64> = (1..=10).rev().map(|i| i as f64 / 10.0).collect();
    let rows = sampling_report(&g, &rates, SamplingMode::Bernoulli, 5, 12).unwrap();
    let nonincreasing = rows.windows(2).all(|w| {
        let slack = 2.0 * (w[0].uniqueness_sem.powi(2) + w[1].uniqueness_sem.powi(2)).sqrt();
        w[1].uniqueness <= w[0].uniqueness + slack
    });
    let (first, last) = (rows[0].uniqueness, rows[rows.len() - 1].uniqueness);
    let column: Vec<String> = rows.iter().map(|r| format!("{:.3}", r.uniqueness)).collect();
    check(
        nonincreasing && first > 0.9 && last < 0.2,
        format!("U_N by rate 1.0..0.1: [{}]", column.join(", ")),
    )
}

fn run_cli(args: &[&str]) {
    let out = Command::new(env!("CARGO_BIN_EXE_nbunique"))
        .args(args)
        .output()
        .expect("binary runs");
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
}

fn artifacts(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut files: Vec<(String, Vec<u8>)> = fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.file_name().unwrap() != "manifest.json")
        .map(|p| (p.file_name().unwrap().to_string_lossy().into_owned(), fs::read(&p).unwrap()))
        .collect();
    files.sort();
    files
}

fn determinism() -> Outcome {
    let tmp = tempfile::tempdir().unwrap();
    let root = tmp.path();
    run_cli(&["generate", "--model", "rgg", "--n", "500", "--k", "10", "--seed", "3", "--out", root.join("g").to_str().unwrap()]);
    let graph = root.join("g/graph.txt");
    let runs: [(&str, Vec<&str>); 3] = [
        ("map", vec!["map", "--model", "ws", "--n-grid", "100:1000:log2", "--k-grid", "2,6,10", "--reps", "4"]),
        ("boundary", vec!["boundary", "--model", "rgg", "--n-grid", "300,600,1200", "--k-hi", "40"]),
        ("sample", vec!["sample", "--input", graph.to_str().unwrap(), "--rate", "0.4"]),
    ];
    let mut compared = Vec::new();
    for (name, args) in runs {
        let first = root.join(format!("{name}-1"));
        run_cli(&[&args[..], &["--out", first.to_str().unwrap()]].concat());
        let manifest = first.join("manifest.json");
        let mut outputs = vec![artifacts(&first)];
        for i in 2..=3 {
            let dir = root.join(format!("{name}-{i}"));
            run_cli(&[name, "--config", manifest.to_str().unwrap(), "--out", dir.to_str().unwrap()]);
            outputs.push(artifacts(&dir));
        }
        if outputs.iter().any(|o| *o != outputs[0]) {
            return Err(format!("{name}: replayed outputs differ"));
        }
        compared.push(format!("{name} ({} files)", outputs[0].len()));
    }
    Ok(format!("identical replays for {}", compared.join(", ")))
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("ER degree uniqueness closed form vs simulation", er_degree_uniqueness_closed_form),
        ("ER non-empty neighborhood fraction vs simulation", er_nonempty_closed_form),
        ("degree uniqueness peaks at half density", degree_uniqueness_argmax),
        ("certificate partitions equal oracle partitions for n <= 5", certificate_exactness),
        ("U_N >= U_k on random model graphs", neighborhood_dominates_degree),
        ("RGG transition at n = 2000", rgg_transition),
        ("boundary band and model ordering at n = 10000", boundary_band_and_ordering),
        ("stochastic search on noisy logistic", search_on_noisy_logistic),
        ("sampling estimators are unbiased", estimators_unbiased),
        ("sampling report falls through the boundary", sampling_report_shape),
        ("replayed manifests give byte-identical outputs", determinism),
    ];
    // An optional criterion number runs just that one.
    let filter = std::env::args().skip(1).find(|a| !a.starts_with('-'));
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let label = format!("criterion {:>2}", i + 1);
        if filter.as_ref().is_some_and(|f| *f != (i + 1).to_string()) {
            continue;
        }
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(run))
            .unwrap_or_else(|_| Err("panicked".to_string()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("{label} PASS  {name}: {detail} [{secs:.1}s]"),
            Err(detail) => {
                failed += 1;
                println!("{label} FAIL  {name}: {detail} [{secs:.1}s]");
            }
        }
    }
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
