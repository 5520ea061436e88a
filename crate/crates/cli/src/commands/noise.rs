//! `noise`: matched-CNOT comparison on random spin-glass instances —
//! one-layer dc-nc against three-layer qaoa (equal CNOT budgets), each
//! trained noiselessly, then evaluated exactly and under two-qubit
//! depolarizing noise.

use std::path::PathBuf;

use anyhow::Result;
use clap::Args;
use serde::Serialize;

use dcqaoa::{
    derive_seed, fit_linear, noisy_fidelity, train, AnsatzFamily, AnsatzSpec, LinearFit,
    NoiseConfig, SkInstance, TrainConfig,
};

use crate::inputs::{parse_usize_spec, resolve_workers, run_cells, FailedCell};
use crate::manifest::{f12, write_json, CsvFile, ExperimentManifest};

/// The two matched-budget series: (family, layers). Three qaoa layers
/// spend exactly the CNOTs of one dc-nc layer.
const SERIES: [(AnsatzFamily, usize); 2] = [(AnsatzFamily::DcNc, 1), (AnsatzFamily::Qaoa, 3)];

#[derive(Debug, Args)]
pub struct NoiseArgs {
    /// Instance sizes, e.g. 5..8 or 5,7,9.
    #[arg(long, value_name = "RANGE", default_value = "5..8")]
    pub n: String,
    /// Random instances per size.
    #[arg(long, value_name = "INT", default_value_t = 10)]
    pub instances: usize,
    /// Two-qubit depolarizing probability applied after every CNOT.
    #[arg(long, value_name = "FLOAT", default_value_t = 0.0066)]
    pub p_depol: f64,
    /// Noise trajectories per evaluation.
    #[arg(long, value_name = "INT", default_value_t = 200)]
    pub trajectories: usize,
    #[arg(long, value_name = "INT", default_value_t = 8)]
    pub restarts: usize,
    #[arg(long, value_name = "INT", default_value_t = 300)]
    pub max_iters: usize,
    #[arg(long, value_name = "INT", default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_name = "INT")]
    pub workers: Option<usize>,
    #[arg(long, value_name = "DIR", default_value = "out")]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Serialize)]
struct NoiseRow {
    family: String,
    n: usize,
    p_layers: usize,
    instance: usize,
    instance_seed: u64,
    noiseless_fidelity: f64,
    noisy_mean: f64,
    noisy_std_error: f64,
    n_trajectories: usize,
}

#[derive(Debug, Serialize)]
struct FitRow {
    variant: String,
    series: String,
    n_points: usize,
    fit: LinearFit,
}

#[derive(Serialize)]
struct NoiseSummary<'a> {
    rows: &'a [NoiseRow],
    fits: &'a [FitRow],
    failed: &'a [FailedCell],
}

pub fn run(a: &NoiseArgs, argv: &[String]) -> Result<usize> {
    let sizes = parse_usize_spec(&a.n)?;
    if sizes.iter().any(|&n| n < 2) {
        anyhow::bail!("instance sizes must be at least 2");
    }
    if a.instances == 0 {
        anyhow::bail!("--instances must be at least 1");
    }
    if !(0.0..=1.0).contains(&a.p_depol) {
        anyhow::bail!("--p-depol must lie in [0, 1]");
    }
    let workers = resolve_workers(a.workers)?;

    let cells: Vec<(AnsatzFamily, usize, usize, usize)> = SERIES
        .iter()
        .flat_map(|&(f, p)| {
            sizes
                .iter()
                .flat_map(move |&n| (0..a.instances).map(move |i| (f, p, n, i)))
        })
        .collect();

    let (rows, failed) = run_cells(
        workers,
        cells,
        |(f, p, n, i)| format!("family={f} p={p} n={n} instance={i}"),
        |&(family, layers, n, instance)| -> Result<NoiseRow, String> {
            let instance_seed = derive_seed(derive_seed(a.seed, n as u64), instance as u64);
            let sk = SkInstance::generate(n, instance_seed).map_err(|e| e.to_string())?;
            let graph = sk.to_graph().map_err(|e| e.to_string())?;
            let h = sk.hamiltonian::<f64>().map_err(|e| e.to_string())?;
            let spec =
                AnsatzSpec::new(family, layers, graph).map_err(|e| e.to_string())?;
            let config = TrainConfig {
                restarts: a.restarts,
                max_iterations: a.max_iters,
                seed: instance_seed,
                ..TrainConfig::default()
            };
            let trained = train(&spec, &h, &config).map_err(|e| e.to_string())?;
            let (noisy_mean, noisy_std, used) = if a.p_depol == 0.0 {
                (trained.best_objective, 0.0, 0)
            } else {
                let noise = NoiseConfig {
                    depolarizing_p: a.p_depol,
                    n_trajectories: a.trajectories,
                    seed: derive_seed(instance_seed, u64::from(u32::MAX)),
                };
                let est = noisy_fidelity(&spec, &trained.best_params, &h, &noise)
                    .map_err(|e| e.to_string())?;
                (est.mean, est.std_error, est.n_trajectories)
            };
            Ok(NoiseRow {
                family: family.name().to_string(),
                n,
                p_layers: layers,
                instance,
                instance_seed,
                noiseless_fidelity: trained.best_objective,
                noisy_mean,
                noisy_std_error: noisy_std,
                n_trajectories: used,
            })
        },
    )?;

    let mut failed = failed;
    let fits = build_fits(&rows, &sizes, a.instances, &mut failed);

    let manifest = ExperimentManifest::new(
        "noise",
        argv,
        a.seed,
        &["noise.csv", "noise_fits.csv", "noise_summary.json"],
    );
    std::fs::create_dir_all(&a.out)?;

    // Two rows per cell: the exact (zero-noise) evaluation and the
    // trajectory estimate at the requested noise level.
    let mut csv = CsvFile::new(
        "noise.csv",
        "family,n,p_layers,depolarizing_p,mean_fidelity,std_error,n_trajectories,seed",
    );
    for r in &rows {
        csv.row(&[
            r.family.clone(),
            r.n.to_string(),
            r.p_layers.to_string(),
            f12(0.0),
            f12(r.noiseless_fidelity),
            f12(0.0),
            "0".to_string(),
            r.instance_seed.to_string(),
        ]);
        csv.row(&[
            r.family.clone(),
            r.n.to_string(),
            r.p_layers.to_string(),
            f12(a.p_depol),
            f12(r.noisy_mean),
            f12(r.noisy_std_error),
            r.n_trajectories.to_string(),
            r.instance_seed.to_string(),
        ]);
    }
    csv.write(&a.out, &manifest)?;

    let mut fits_csv =
        CsvFile::new("noise_fits.csv", "variant,series,n_points,slope,intercept,residual");
    for f in &fits {
        fits_csv.row(&[
            f.variant.clone(),
            f.series.clone(),
            f.n_points.to_string(),
            f12(f.fit.slope),
            f12(f.fit.intercept),
            f12(f.fit.residual),
        ]);
    }
    fits_csv.write(&a.out, &manifest)?;

    write_json(
        &a.out,
        "noise_summary.json",
        &manifest,
        &NoiseSummary { rows: &rows, fits: &fits, failed: &failed },
    )?;
    for fail in &failed {
        eprintln!("noise cell {} failed: {}", fail.cell, fail.error);
    }
    Ok(failed.len())
}

/// Log-linear fits of mean fidelity against size for both series, plus the
/// fit of the log improvement ratio dc-nc over qaoa.
fn build_fits(
    rows: &[NoiseRow],
    sizes: &[usize],
    instances: usize,
    failed: &mut Vec<FailedCell>,
) -> Vec<FitRow> {
    let mut fits = Vec::new();
    for (variant, value) in [
        ("noiseless", &(|r: &NoiseRow| r.noiseless_fidelity) as &dyn Fn(&NoiseRow) -> f64),
        ("noisy", &|r: &NoiseRow| r.noisy_mean),
    ] {
        let mut series_points: Vec<Vec<(f64, f64)>> = vec![Vec::new(); SERIES.len()];
        for (s, &(family, layers)) in SERIES.iter().enumerate() {
            for &n in sizes {
                let vals: Vec<f64> = rows
                    .iter()
                    .filter(|r| {
                        r.family == family.name() && r.p_layers == layers && r.n == n
                    })
                    .map(value)
                    .collect();
                if vals.len() < instances {
                    continue; // incomplete cell (failures); skip this size
                }
                let mean = vals.iter().sum::<f64>() / vals.len() as f64;
                if mean > 0.0 {
                    series_points[s].push((n as f64, mean.log10()));
                }
            }
        }
        let mut ratio_points = Vec::new();
        for (&(x_a, y_a), &(x_b, y_b)) in series_points[0].iter().zip(&series_points[1]) {
            if x_a == x_b {
                ratio_points.push((x_a, y_a - y_b));
            }
        }
        let labeled = [
            (format!("{}-p{}", SERIES[0].0.name(), SERIES[0].1), &series_points[0]),
            (format!("{}-p{}", SERIES[1].0.name(), SERIES[1].1), &series_points[1]),
            ("improvement-ratio".to_string(), &ratio_points),
        ];
        for (series, points) in labeled {
            match fit_linear(points) {
                Ok(fit) => fits.push(FitRow {
                    variant: variant.to_string(),
                    series,
                    n_points: points.len(),
                    fit,
                }),
                Err(e) => failed.push(FailedCell {
                    cell: format!("log-linear fit variant={variant} series={series}"),
                    error: e.to_string(),
                }),
            }
        }
    }
    fits
}
