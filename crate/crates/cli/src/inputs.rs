//! Shared flag parsing and instance construction: family lists, integer
//! and float grids, graph sources, and the worker pool for independent
//! experiment cells.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use clap::Args;
use dcqaoa::{derive_seed, AnsatzFamily, Graph};

/// Env var consulted for the default worker count when `--workers` is
/// absent.
pub const WORKERS_ENV: &str = "DCQAOA_WORKERS";

/// Parses a comma-separated family list such as `dc-nc,qaoa`.
pub fn parse_families(list: &str) -> Result<Vec<AnsatzFamily>> {
    let mut out = Vec::new();
    for part in list.split(',') {
        let fam: AnsatzFamily = part
            .trim()
            .parse()
            .map_err(|e: dcqaoa::Error| anyhow!("family list {list:?}: {e}"))?;
        if !out.contains(&fam) {
            out.push(fam);
        }
    }
    if out.is_empty() {
        bail!("family list {list:?} is empty");
    }
    Ok(out)
}

/// Parses `7`, `1..8` (inclusive), or `1,3,8` into an integer list.
pub fn parse_usize_spec(spec: &str) -> Result<Vec<usize>> {
    let spec = spec.trim();
    let parse_one = |s: &str| -> Result<usize> {
        s.trim().parse::<usize>().with_context(|| format!("integer {s:?} in {spec:?}"))
    };
    let values: Vec<usize> = if let Some((a, b)) = spec.split_once("..") {
        let lo = parse_one(a)?;
        let hi = parse_one(b.strip_prefix('=').unwrap_or(b))?;
        if lo > hi {
            bail!("range {spec:?} runs backwards");
        }
        (lo..=hi).collect()
    } else if spec.contains(',') {
        spec.split(',').map(parse_one).collect::<Result<_>>()?
    } else {
        vec![parse_one(spec)?]
    };
    if values.is_empty() {
        bail!("integer list {spec:?} is empty");
    }
    let mut out = Vec::new();
    for v in values {
        if !out.contains(&v) {
            out.push(v);
        }
    }
    Ok(out)
}

/// Parses `0.3,0.5` or `0.3..0.9:0.2` (inclusive with step; step defaults
/// to 0.2) into a float grid.
pub fn parse_f64_grid(spec: &str) -> Result<Vec<f64>> {
    let spec = spec.trim();
    let parse_one = |s: &str| -> Result<f64> {
        let v: f64 = s.trim().parse().with_context(|| format!("number {s:?} in {spec:?}"))?;
        if !v.is_finite() {
            bail!("number {s:?} in {spec:?} is not finite");
        }
        Ok(v)
    };
    let values: Vec<f64> = if let Some((range, step)) = spec.split_once(':') {
        grid_from_range(range, parse_one(step)?, &parse_one)?
    } else if spec.contains("..") {
        grid_from_range(spec, 0.2, &parse_one)?
    } else {
        spec.split(',').map(parse_one).collect::<Result<_>>()?
    };
    if values.is_empty() {
        bail!("float grid {spec:?} is empty");
    }
    Ok(values)
}

fn grid_from_range(
    range: &str,
    step: f64,
    parse_one: &dyn Fn(&str) -> Result<f64>,
) -> Result<Vec<f64>> {
    let (a, b) = range
        .split_once("..")
        .ok_or_else(|| anyhow!("expected lo..hi in {range:?}"))?;
    let lo = parse_one(a)?;
    let hi = parse_one(b)?;
    if !(step > 0.0) {
        bail!("grid step {step} must be positive");
    }
    if lo > hi {
        bail!("range {range:?} runs backwards");
    }
    let mut out = Vec::new();
    let mut k = 0u32;
    loop {
        let x = lo + step * f64::from(k);
        if x > hi + 1e-9 {
            break;
        }
        out.push(x);
        k += 1;
    }
    Ok(out)
}

/// Graph source flags shared by the graph-based subcommands: either a file
/// or a seeded random instance.
#[derive(Debug, Clone, Args)]
pub struct GraphSource {
    /// Graph file (edge-list or JSON format).
    #[arg(long, value_name = "FILE", conflicts_with_all = ["n", "edge_prob", "graph_seed"])]
    pub graph: Option<PathBuf>,
    /// Vertex count for a generated random graph.
    #[arg(long, value_name = "INT")]
    pub n: Option<usize>,
    /// Edge probability for the generated graph.
    #[arg(long, value_name = "FLOAT", default_value_t = 0.5)]
    pub edge_prob: f64,
    /// Seed for the generated graph.
    #[arg(long, value_name = "INT", default_value_t = 0)]
    pub graph_seed: u64,
}

impl GraphSource {
    /// Loads or generates the graph. Generated graphs retry with derived
    /// seeds (deterministically) until they have an edge — and, when
    /// `need_connected` is set, until they are connected; file inputs are
    /// taken as-is and validated.
    pub fn load(&self, need_connected: bool) -> Result<Graph> {
        if let Some(path) = &self.graph {
            let g = read_graph_file(path)?;
            if g.n_edges() == 0 {
                bail!("graph {} has no edges", path.display());
            }
            if need_connected && !g.is_connected() {
                bail!("graph {} is not connected", path.display());
            }
            return Ok(g);
        }
        let n = self.n.ok_or_else(|| anyhow!("need either --graph FILE or --n INT"))?;
        generate_graph(n, self.edge_prob, self.graph_seed, need_connected)
    }
}

/// Seeded random graph with deterministic retries until it has at least
/// one edge (and is connected when requested).
pub fn generate_graph(n: usize, edge_prob: f64, seed: u64, need_connected: bool) -> Result<Graph> {
    for retry in 0..100u64 {
        let s = if retry == 0 { seed } else { derive_seed(seed, retry) };
        let g = Graph::random(n, edge_prob, s)?;
        if g.n_edges() >= 1 && (!need_connected || g.is_connected()) {
            return Ok(g);
        }
    }
    bail!(
        "no usable graph for n={n}, edge-prob={edge_prob}, seed={seed} in 100 draws; \
         raise --edge-prob"
    )
}

/// Reads a graph file, accepting both the JSON and the edge-list format.
pub fn read_graph_file(path: &Path) -> Result<Graph> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let parsed = if text.trim_start().starts_with('{') {
        Graph::from_json(&text)
    } else {
        Graph::from_edge_list(&text)
    };
    parsed.map_err(|e| anyhow!("parsing {}: {e}", path.display()))
}

/// Resolves the worker count: flag, then the env var, then one thread per
/// core.
pub fn resolve_workers(flag: Option<usize>) -> Result<Option<usize>> {
    if let Some(w) = flag {
        if w == 0 {
            bail!("--workers must be at least 1");
        }
        return Ok(Some(w));
    }
    match std::env::var(WORKERS_ENV) {
        Ok(raw) => {
            let w: usize =
                raw.parse().with_context(|| format!("{WORKERS_ENV}={raw:?} is not an integer"))?;
            if w == 0 {
                bail!("{WORKERS_ENV} must be at least 1");
            }
            Ok(Some(w))
        }
        Err(_) => Ok(None),
    }
}

/// One failed experiment cell: a human-readable label plus the error.
#[derive(Debug, Clone, serde::Serialize)]
pub struct FailedCell {
    pub cell: String,
    pub error: String,
}

/// Runs independent cells on a dedicated pool, preserving input order.
/// Failures are collected, not fatal: completed cells still produce
/// output.
pub fn run_cells<I, O, F>(
    workers: Option<usize>,
    cells: Vec<I>,
    label: impl Fn(&I) -> String,
    f: F,
) -> Result<(Vec<O>, Vec<FailedCell>)>
where
    I: Send + Sync,
    O: Send,
    F: Fn(&I) -> Result<O, String> + Sync,
{
    use rayon::prelude::*;
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(w) = workers {
        builder = builder.num_threads(w);
    }
    let pool = builder.build().context("building worker pool")?;
    let labels: Vec<String> = cells.iter().map(&label).collect();
    let results: Vec<Result<O, String>> =
        pool.install(|| cells.par_iter().map(|cell| f(cell)).collect());
    let mut ok = Vec::new();
    let mut failed = Vec::new();
    for (result, cell) in results.into_iter().zip(labels) {
        match result {
            Ok(o) => ok.push(o),
            Err(error) => failed.push(FailedCell { cell, error }),
        }
    }
    Ok((ok, failed))
}
