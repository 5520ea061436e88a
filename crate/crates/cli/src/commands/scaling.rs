//! `scaling`: critical-depth sweeps over graph ensembles at several sizes
//! and edge densities, with a saturation-curve fit per size and a linear
//! fit of the saturation level against size.

use std::path::PathBuf;

use anyhow::Result;
use clap::Args;
use serde::Serialize;

use dcqaoa::{
    critical_depth, derive_seed, fit_linear, fit_logistic, AnsatzFamily, CriticalDepth,
    LinearFit, LogisticFit, TrainConfig,
};

use crate::inputs::{
    generate_graph, parse_f64_grid, parse_families, parse_usize_spec, resolve_workers,
    run_cells, FailedCell,
};
use crate::manifest::{f12, write_json, CsvFile, ExperimentManifest};

#[derive(Debug, Args)]
pub struct ScalingArgs {
    /// Graph sizes to sweep, e.g. 6,8 or 6..10.
    #[arg(long, value_name = "LIST", default_value = "6,8")]
    pub sizes: String,
    /// Edge-density grid, e.g. 0.3,0.5,0.7,0.9 or 0.3..0.9:0.2.
    #[arg(long, value_name = "GRID", default_value = "0.3..0.9:0.2")]
    pub densities: String,
    /// Comma-separated ansatz families.
    #[arg(long, visible_alias = "families", value_name = "LIST", default_value = "qaoa,dc-nc")]
    pub family: String,
    /// Infidelity threshold defining the critical depth.
    #[arg(long, value_name = "FLOAT", default_value_t = 0.05)]
    pub epsilon: f64,
    /// Largest depth tried before a search reports saturation.
    #[arg(long, value_name = "INT", default_value_t = 14)]
    pub p_limit: usize,
    /// Random graphs per (size, density) cell.
    #[arg(long, value_name = "INT", default_value_t = 3)]
    pub graphs: usize,
    #[arg(long, value_name = "INT", default_value_t = 4)]
    pub restarts: usize,
    #[arg(long, value_name = "INT", default_value_t = 250)]
    pub max_iters: usize,
    #[arg(long, value_name = "INT", default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_name = "INT")]
    pub workers: Option<usize>,
    #[arg(long, value_name = "DIR", default_value = "out")]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Serialize)]
struct PointRow {
    family: String,
    n: usize,
    density: f64,
    graph_index: usize,
    graph_seed: u64,
    n_edges: usize,
    p_crit: usize,
    saturated: bool,
}

#[derive(Debug, Serialize)]
struct SizeFitRow {
    family: String,
    n: usize,
    n_points: usize,
    fit: LogisticFit,
}

#[derive(Debug, Serialize)]
struct FamilyScalingRow {
    family: String,
    n_points: usize,
    fit: LinearFit,
}

#[derive(Serialize)]
struct ScalingSummary<'a> {
    points: &'a [PointRow],
    size_fits: &'a [SizeFitRow],
    family_fits: &'a [FamilyScalingRow],
    failed: &'a [FailedCell],
}

/// The graph ensemble is shared across families: the instance seed
/// depends only on (base seed, size, density, index).
fn instance_seed(seed: u64, n: usize, density: f64, index: usize) -> u64 {
    let base = derive_seed(seed, n as u64);
    derive_seed(base, (density * 1000.0).round() as u64 * 1000 + index as u64)
}

pub fn run(a: &ScalingArgs, argv: &[String]) -> Result<usize> {
    let sizes = parse_usize_spec(&a.sizes)?;
    let densities = parse_f64_grid(&a.densities)?;
    let families = parse_families(&a.family)?;
    if a.graphs == 0 {
        anyhow::bail!("--graphs must be at least 1");
    }
    let workers = resolve_workers(a.workers)?;

    let mut cells: Vec<(AnsatzFamily, usize, f64, usize)> = Vec::new();
    for &f in &families {
        for &n in &sizes {
            for &d in &densities {
                for g in 0..a.graphs {
                    cells.push((f, n, d, g));
                }
            }
        }
    }

    let (points, mut failed) = run_cells(
        workers,
        cells,
        |(f, n, d, g)| format!("family={f} n={n} density={d} graph={g}"),
        |&(family, n, density, index)| -> Result<PointRow, String> {
            let gseed = instance_seed(a.seed, n, density, index);
            let graph = generate_graph(n, density, gseed, false).map_err(|e| e.to_string())?;
            let config = TrainConfig {
                restarts: a.restarts,
                max_iterations: a.max_iters,
                seed: gseed,
                ..TrainConfig::default()
            };
            let result =
                critical_depth::<f64>(family, &graph, a.epsilon, a.p_limit, &config)
                    .map_err(|e| e.to_string())?;
            Ok(PointRow {
                family: family.name().to_string(),
                n,
                density,
                graph_index: index,
                graph_seed: gseed,
                n_edges: graph.n_edges(),
                p_crit: result.depth_or_limit(),
                saturated: matches!(result.outcome, CriticalDepth::Saturated),
            })
        },
    )?;

    // Saturation-curve fit per (family, size) over all (density, depth)
    // points, then the saturation level against size per family.
    let mut size_fits = Vec::new();
    let mut family_fits = Vec::new();
    for &family in &families {
        let mut level_points = Vec::new();
        for &n in &sizes {
            let pts: Vec<(f64, f64)> = points
                .iter()
                .filter(|r| r.family == family.name() && r.n == n)
                .map(|r| (r.density, r.p_crit as f64))
                .collect();
            if pts.is_empty() {
                continue;
            }
            match fit_logistic(&pts) {
                Ok(fit) => {
                    level_points.push((n as f64, fit.p_max));
                    size_fits.push(SizeFitRow {
                        family: family.name().to_string(),
                        n,
                        n_points: pts.len(),
                        fit,
                    });
                }
                Err(e) => failed.push(FailedCell {
                    cell: format!("logistic fit family={family} n={n}"),
                    error: e.to_string(),
                }),
            }
        }
        match fit_linear(&level_points) {
            Ok(fit) => family_fits.push(FamilyScalingRow {
                family: family.name().to_string(),
                n_points: level_points.len(),
                fit,
            }),
            Err(e) => failed.push(FailedCell {
                cell: format!("saturation-vs-size fit family={family}"),
                error: e.to_string(),
            }),
        }
    }

    let manifest = ExperimentManifest::new(
        "scaling",
        argv,
        a.seed,
        &["scaling_points.csv", "scaling_fits.csv", "scaling_linear.csv", "scaling_summary.json"],
    );
    std::fs::create_dir_all(&a.out)?;

    let mut points_csv = CsvFile::new(
        "scaling_points.csv",
        "family,n,density,graph_index,graph_seed,n_edges,p_crit,saturated",
    );
    for r in &points {
        points_csv.row(&[
            r.family.clone(),
            r.n.to_string(),
            f12(r.density),
            r.graph_index.to_string(),
            r.graph_seed.to_string(),
            r.n_edges.to_string(),
            r.p_crit.to_string(),
            r.saturated.to_string(),
        ]);
    }
    points_csv.write(&a.out, &manifest)?;

    let mut fits_csv = CsvFile::new(
        "scaling_fits.csv",
        "family,n,n_points,p_max,steepness,alpha_c,residual,flat",
    );
    for r in &size_fits {
        fits_csv.row(&[
            r.family.clone(),
            r.n.to_string(),
            r.n_points.to_string(),
            f12(r.fit.p_max),
            f12(r.fit.steepness),
            f12(r.fit.alpha_c),
            f12(r.fit.residual),
            r.fit.flat.to_string(),
        ]);
    }
    fits_csv.write(&a.out, &manifest)?;

    let mut linear_csv =
        CsvFile::new("scaling_linear.csv", "family,n_points,slope,intercept,residual");
    for r in &family_fits {
        linear_csv.row(&[
            r.family.clone(),
            r.n_points.to_string(),
            f12(r.fit.slope),
            f12(r.fit.intercept),
            f12(r.fit.residual),
        ]);
    }
    linear_csv.write(&a.out, &manifest)?;

    write_json(
        &a.out,
        "scaling_summary.json",
        &manifest,
        &ScalingSummary {
            points: &points,
            size_fits: &size_fits,
            family_fits: &family_fits,
            failed: &failed,
        },
    )?;
    for fail in &failed {
        eprintln!("scaling cell {} failed: {}", fail.cell, fail.error);
    }
    Ok(failed.len())
}
