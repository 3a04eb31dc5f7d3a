//! Batches of seeded synthetic runs, one CSV row per (instance, algorithm).

use std::collections::BTreeMap;

use mosaic_core::frontier::{hypervolume, reference_point, score};
use mosaic_core::instance::{generate_synthetic, SyntheticConfig};
use mosaic_core::objectives::Objective;
use mosaic_core::preprocess::{assign_clouds, discretize};
use mosaic_core::solver::Budget;
use rayon::prelude::*;
use serde::Serialize;

use crate::args::{Algorithm, BenchArgs};
use crate::commands::run_algorithm;
use crate::io::write_text;
use crate::{CliError, CliResult};

pub const THREADS_ENV: &str = "MOSAIC_SELECT_THREADS";

#[derive(Debug, Serialize)]
struct Row {
    images: usize,
    seed: u64,
    parts: usize,
    algorithm: &'static str,
    status: String,
    points: usize,
    hypervolume: f64,
    score: f64,
    nodes: u64,
    time_ms: u64,
}

fn thread_count() -> CliResult<Option<usize>> {
    match std::env::var(THREADS_ENV) {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(CliError::invalid(format!("{THREADS_ENV} must be a positive integer, got `{v}`"))),
        },
        Err(_) => Ok(None),
    }
}

pub fn run(a: BenchArgs) -> CliResult {
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(n) = thread_count()? {
        pool = pool.num_threads(n);
    }
    let pool = pool.build().map_err(|e| CliError::invalid(e.to_string()))?;

    let jobs: Vec<(usize, u64)> = a
        .images
        .iter()
        .flat_map(|&m| (a.first_seed..a.first_seed + a.seeds).map(move |s| (m, s)))
        .collect();
    let results: Vec<CliResult<Vec<Row>>> = pool.install(|| jobs.par_iter().map(|&(m, seed)| instance_rows(&a, m, seed)).collect());
    let mut rows = Vec::new();
    for r in results {
        rows.extend(r?);
    }
    rows.sort_by(|x, y| (x.images, x.seed, x.algorithm).cmp(&(y.images, y.seed, y.algorithm)));

    let mut w = csv::Writer::from_writer(Vec::new());
    for row in &rows {
        w.serialize(row).map_err(|e| CliError::invalid(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::invalid(e.to_string()))?;
    write_text(&a.output, &String::from_utf8(bytes).expect("csv output is UTF-8"))
}

fn instance_rows(a: &BenchArgs, images: usize, seed: u64) -> CliResult<Vec<Row>> {
    let raw = generate_synthetic(&SyntheticConfig { images, seed, ..Default::default() })?;
    let (inst, _) = discretize(&raw)?;
    let (inst, _) = assign_clouds(&inst, &raw, seed)?;
    let reference = reference_point(&inst);
    let mut rows = Vec::new();
    let mut hvs = BTreeMap::new();
    for &alg in &a.algorithms {
        if alg == Algorithm::Brute && inst.m() > mosaic_core::frontier::BRUTE_FORCE_LIMIT {
            continue;
        }
        let front = run_algorithm(&inst, alg, Objective::Cost, Budget::new(Some(a.budget_ms), None))?;
        let hv = hypervolume(&front.vectors(), reference)?;
        hvs.insert(alg.name().to_string(), hv);
        rows.push(Row {
            images,
            seed,
            parts: inst.n(),
            algorithm: alg.name(),
            status: format!("{:?}", front.status).to_uppercase(),
            points: front.len(),
            hypervolume: hv,
            score: 0.0,
            nodes: front.stats.nodes,
            time_ms: front.stats.time_ms,
        });
    }
    let scores = score(&hvs);
    for row in &mut rows {
        row.score = scores[row.algorithm];
    }
    Ok(rows)
}
