//! `train`: variational optimization over a (family, depth) grid on one
//! graph, reporting per-restart statistics and full objective traces.

use std::path::PathBuf;

use anyhow::Result;
use clap::Args;
use serde::Serialize;

use dcqaoa::{train, AnsatzSpec, DiagonalHamiltonian, ObjectiveKind, TrainConfig};

use crate::inputs::{
    parse_families, parse_usize_spec, resolve_workers, run_cells, FailedCell, GraphSource,
};
use crate::manifest::{f12, mean_and_sample_std, write_json, CsvFile, ExperimentManifest};

#[derive(Debug, Args)]
pub struct TrainArgs {
    #[command(flatten)]
    pub graph: GraphSource,
    /// Comma-separated ansatz families (qaoa, dc-nc, dc-yy, dc-y).
    #[arg(long, visible_alias = "families", value_name = "LIST", default_value = "qaoa")]
    pub family: String,
    /// Layer counts: INT, LO..HI, or a comma list.
    #[arg(long, value_name = "INT|RANGE", default_value = "1")]
    pub p: String,
    /// Objective to maximize: fidelity or ratio.
    #[arg(long, value_name = "NAME", default_value = "fidelity")]
    pub objective: String,
    /// Independent random initializations per cell.
    #[arg(long, value_name = "INT", default_value_t = 8)]
    pub restarts: usize,
    /// Gradient-ascent step budget per restart.
    #[arg(long, value_name = "INT", default_value_t = 500)]
    pub max_iters: usize,
    #[arg(long, value_name = "FLOAT", default_value_t = 0.05)]
    pub learning_rate: f64,
    /// Base seed; restart seeds derive from it.
    #[arg(long, value_name = "INT", default_value_t = 0)]
    pub seed: u64,
    /// Worker threads (default: DCQAOA_WORKERS env var, then all cores).
    #[arg(long, value_name = "INT")]
    pub workers: Option<usize>,
    /// Output directory.
    #[arg(long, value_name = "DIR", default_value = "out")]
    pub out: PathBuf,
}

#[derive(Debug, Serialize)]
struct TrainRow {
    family: String,
    p: usize,
    n_vertices: usize,
    n_edges: usize,
    objective: String,
    best_objective: f64,
    mean_restart_best: f64,
    std_restart_best: f64,
    best_restart: usize,
    iterations_total: usize,
    cnot_total: usize,
    #[serde(skip)]
    traces: Vec<Vec<f64>>,
}

#[derive(Serialize)]
struct TrainSummary<'a> {
    rows: &'a [TrainRow],
    failed: &'a [FailedCell],
}

pub fn run(a: &TrainArgs, argv: &[String]) -> Result<usize> {
    let graph = a.graph.load(false)?;
    let families = parse_families(&a.family)?;
    let depths = parse_usize_spec(&a.p)?;
    let objective: ObjectiveKind =
        a.objective.parse().map_err(|e: dcqaoa::Error| anyhow::anyhow!("{e}"))?;
    let workers = resolve_workers(a.workers)?;

    let cells: Vec<(dcqaoa::AnsatzFamily, usize)> = families
        .iter()
        .flat_map(|&f| depths.iter().map(move |&p| (f, p)))
        .collect();

    let config_base = TrainConfig {
        objective,
        max_iterations: a.max_iters,
        restarts: a.restarts,
        learning_rate: a.learning_rate,
        seed: a.seed,
        ..TrainConfig::default()
    };

    let (rows, failed) = run_cells(
        workers,
        cells,
        |(f, p)| format!("family={f} p={p}"),
        |&(family, p)| -> Result<TrainRow, String> {
            let spec =
                AnsatzSpec::new(family, p, graph.clone()).map_err(|e| e.to_string())?;
            let h = DiagonalHamiltonian::<f64>::maxcut(&graph).map_err(|e| e.to_string())?;
            let result = train(&spec, &h, &config_base).map_err(|e| e.to_string())?;
            let bests: Vec<f64> =
                (0..result.traces.len()).map(|r| result.restart_best(r)).collect();
            let (mean, std) = mean_and_sample_std(&bests);
            Ok(TrainRow {
                family: family.name().to_string(),
                p,
                n_vertices: graph.n_vertices(),
                n_edges: graph.n_edges(),
                objective: objective.to_string(),
                best_objective: result.best_objective,
                mean_restart_best: mean,
                std_restart_best: std,
                best_restart: result.best_restart,
                iterations_total: result.total_iterations(),
                cnot_total: result.gate_counts.cnot_total,
                traces: result.traces,
            })
        },
    )?;

    let manifest = ExperimentManifest::new(
        "train",
        argv,
        a.seed,
        &["train_summary.csv", "train_traces.csv", "train_summary.json"],
    );
    std::fs::create_dir_all(&a.out)?;

    let mut summary = CsvFile::new(
        "train_summary.csv",
        "family,p,n_vertices,n_edges,objective,best_objective,mean_restart_best,\
         std_restart_best,best_restart,iterations_total,cnot_total,seed",
    );
    let mut traces = CsvFile::new("train_traces.csv", "family,p,restart,iteration,objective");
    for row in &rows {
        summary.row(&[
            row.family.clone(),
            row.p.to_string(),
            row.n_vertices.to_string(),
            row.n_edges.to_string(),
            row.objective.clone(),
            f12(row.best_objective),
            f12(row.mean_restart_best),
            f12(row.std_restart_best),
            row.best_restart.to_string(),
            row.iterations_total.to_string(),
            row.cnot_total.to_string(),
            a.seed.to_string(),
        ]);
        for (r, trace) in row.traces.iter().enumerate() {
            for (i, value) in trace.iter().enumerate() {
                traces.row(&[
                    row.family.clone(),
                    row.p.to_string(),
                    r.to_string(),
                    i.to_string(),
                    f12(*value),
                ]);
            }
        }
    }
    summary.write(&a.out, &manifest)?;
    traces.write(&a.out, &manifest)?;
    write_json(
        &a.out,
        "train_summary.json",
        &manifest,
        &TrainSummary { rows: &rows, failed: &failed },
    )?;
    for fail in &failed {
        eprintln!("train cell {} failed: {}", fail.cell, fail.error);
    }
    Ok(failed.len())
}
