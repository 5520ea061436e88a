//! `effdim`: effective dimension of an ansatz — the mean rank of the
//! quantum Fisher information matrix over random parameter draws — swept
//! over depth for each requested family.

use std::path::PathBuf;

use anyhow::Result;
use clap::Args;
use serde::Serialize;

use dcqaoa::{
    derive_seed, effective_dimension, qfi_matrix, AnsatzFamily, AnsatzSpec, ParameterVector,
};

use crate::inputs::{parse_families, parse_usize_spec, resolve_workers, run_cells, FailedCell, GraphSource};
use crate::manifest::{f12, write_json, CsvFile, ExperimentManifest};

#[derive(Debug, Args)]
pub struct EffdimArgs {
    #[command(flatten)]
    pub graph: GraphSource,
    #[arg(long, visible_alias = "families", value_name = "LIST", default_value = "qaoa,dc-nc")]
    pub family: String,
    /// Depths to sweep.
    #[arg(long, value_name = "INT|RANGE", default_value = "1..12")]
    pub p: String,
    /// Random parameter draws per cell.
    #[arg(long, value_name = "INT", default_value_t = 20)]
    pub samples: usize,
    #[arg(long, value_name = "INT", default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_name = "INT")]
    pub workers: Option<usize>,
    #[arg(long, value_name = "DIR", default_value = "out")]
    pub out: PathBuf,
}

#[derive(Debug, Serialize)]
struct EffdimRow {
    family: String,
    p: usize,
    n_params: usize,
    samples: usize,
    mean_rank: f64,
    min_rank: usize,
    max_rank: usize,
    rank_bound: usize,
    /// Spectrum of the information matrix at the first sampled point,
    /// descending.
    first_sample_eigenvalues: Vec<f64>,
}

#[derive(Serialize)]
struct EffdimSummary<'a> {
    n_vertices: usize,
    n_edges: usize,
    rows: &'a [EffdimRow],
    failed: &'a [FailedCell],
}

/// Cell seeds depend only on (base seed, family, depth), so editing the
/// sweep grid never changes the other cells' draws.
fn cell_seed(seed: u64, family: AnsatzFamily, p: usize) -> u64 {
    let tag = AnsatzFamily::ALL.iter().position(|&f| f == family).unwrap() as u64;
    derive_seed(seed, tag * 1_000_000 + p as u64)
}

pub fn run(a: &EffdimArgs, argv: &[String]) -> Result<usize> {
    let graph = a.graph.load(false)?;
    let families = parse_families(&a.family)?;
    let depths = parse_usize_spec(&a.p)?;
    if a.samples == 0 {
        anyhow::bail!("--samples must be at least 1");
    }
    let workers = resolve_workers(a.workers)?;

    let cells: Vec<(AnsatzFamily, usize)> = families
        .iter()
        .flat_map(|&f| depths.iter().map(move |&p| (f, p)))
        .collect();

    let (rows, failed) = run_cells(
        workers,
        cells,
        |(f, p)| format!("family={f} p={p}"),
        |&(family, p)| -> Result<EffdimRow, String> {
            let spec =
                AnsatzSpec::new(family, p, graph.clone()).map_err(|e| e.to_string())?;
            let seed = cell_seed(a.seed, family, p);
            let eff = effective_dimension::<f64>(&spec, a.samples, seed)
                .map_err(|e| e.to_string())?;
            let params0 =
                ParameterVector::<f64>::random_uniform(family, p, derive_seed(seed, 0))
                    .map_err(|e| e.to_string())?;
            let qfi = qfi_matrix(&spec, &params0).map_err(|e| e.to_string())?;
            Ok(EffdimRow {
                family: family.name().to_string(),
                p,
                n_params: eff.n_params,
                samples: a.samples,
                mean_rank: eff.mean_rank,
                min_rank: eff.ranks.iter().copied().min().unwrap_or(0),
                max_rank: eff.ranks.iter().copied().max().unwrap_or(0),
                rank_bound: eff.rank_bound,
                first_sample_eigenvalues: qfi.eigenvalues(),
            })
        },
    )?;

    let manifest = ExperimentManifest::new(
        "effdim",
        argv,
        a.seed,
        &["effdim.csv", "effdim_summary.json"],
    );
    std::fs::create_dir_all(&a.out)?;

    let mut csv = CsvFile::new(
        "effdim.csv",
        "family,p,n_params,samples,mean_rank,min_rank,max_rank,rank_bound",
    );
    for r in &rows {
        csv.row(&[
            r.family.clone(),
            r.p.to_string(),
            r.n_params.to_string(),
            r.samples.to_string(),
            f12(r.mean_rank),
            r.min_rank.to_string(),
            r.max_rank.to_string(),
            r.rank_bound.to_string(),
        ]);
    }
    csv.write(&a.out, &manifest)?;

    write_json(
        &a.out,
        "effdim_summary.json",
        &manifest,
        &EffdimSummary {
            n_vertices: graph.n_vertices(),
            n_edges: graph.n_edges(),
            rows: &rows,
            failed: &failed,
        },
    )?;
    for fail in &failed {
        eprintln!("effdim cell {} failed: {}", fail.cell, fail.error);
    }
    Ok(failed.len())
}
