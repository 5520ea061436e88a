//! `reduce`: the two optimization-problem encodings — CNF formulas to
//! weighted cut instances, and unweighted cut instances to CNF — with
//! optional brute-force certification of the quoted optimum relations.

use std::fs;
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::Args;
use serde::Serialize;

use dcqaoa::{
    certify_maxcut_to_sat, certify_sat_to_maxcut, maxcut_to_sat, sat_to_maxcut, CnfFormula,
    PairConvention,
};

use crate::inputs::read_graph_file;
use crate::manifest::{f12, write_json, CsvFile, ExperimentManifest};

#[derive(Debug, Args)]
pub struct ReduceArgs {
    /// CNF input in DIMACS format: encode it as a weighted cut instance.
    #[arg(long, value_name = "FILE", conflicts_with = "graph")]
    pub dimacs: Option<PathBuf>,
    /// Unweighted graph input: encode it as a CNF formula.
    #[arg(long, value_name = "FILE")]
    pub graph: Option<PathBuf>,
    /// Clause pair per edge for the graph-to-CNF direction:
    /// separating or agreeing.
    #[arg(long, value_name = "NAME", default_value = "separating")]
    pub convention: String,
    /// Also certify the encoding by exact enumeration of both sides.
    #[arg(long)]
    pub certify: bool,
    #[arg(long, value_name = "DIR", default_value = "out")]
    pub out: PathBuf,
}

#[derive(Serialize)]
struct SatToCutPayload {
    n_vars: usize,
    n_clauses: usize,
    clause_width: usize,
    n_vertices: usize,
    n_edges: usize,
    variable_edge_weight: f64,
    certificate: Option<dcqaoa::SatToCutCertificate>,
}

#[derive(Serialize)]
struct CutToSatPayload {
    convention: String,
    n_vertices: usize,
    n_edges: usize,
    n_vars: usize,
    n_clauses: usize,
    certificate: Option<dcqaoa::CutToSatCertificate>,
}

pub fn run(a: &ReduceArgs, argv: &[String]) -> Result<usize> {
    match (&a.dimacs, &a.graph) {
        (Some(path), None) => sat_to_cut(a, argv, path),
        (None, Some(path)) => cut_to_sat(a, argv, path),
        _ => bail!("pass exactly one of --dimacs FILE or --graph FILE"),
    }
}

fn sat_to_cut(a: &ReduceArgs, argv: &[String], path: &PathBuf) -> Result<usize> {
    let text =
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let formula = CnfFormula::from_dimacs(&text)?;
    let map = sat_to_maxcut(&formula)?;
    let certificate =
        if a.certify { Some(certify_sat_to_maxcut(&formula)?) } else { None };

    let manifest = ExperimentManifest::new(
        "reduce",
        argv,
        0,
        &["reduce_graph.json", "reduce.csv", "reduce_summary.json"],
    );
    fs::create_dir_all(&a.out)?;
    fs::write(a.out.join("reduce_graph.json"), map.graph().to_json())?;

    let mut csv = CsvFile::new(
        "reduce.csv",
        "direction,n_vars,n_clauses,n_vertices,n_edges,variable_edge_weight,certified,\
         relation_holds,consistency_holds",
    );
    csv.row(&[
        "sat-to-cut".to_string(),
        map.n_vars().to_string(),
        map.n_clauses().to_string(),
        map.graph().n_vertices().to_string(),
        map.graph().n_edges().to_string(),
        f12(map.variable_edge_weight()),
        a.certify.to_string(),
        certificate.map_or(String::new(), |c| c.relation_holds.to_string()),
        certificate.map_or(String::new(), |c| c.consistency_holds.to_string()),
    ]);
    csv.write(&a.out, &manifest)?;

    write_json(
        &a.out,
        "reduce_summary.json",
        &manifest,
        &SatToCutPayload {
            n_vars: formula.n_vars(),
            n_clauses: formula.n_clauses(),
            clause_width: formula.k(),
            n_vertices: map.graph().n_vertices(),
            n_edges: map.graph().n_edges(),
            variable_edge_weight: map.variable_edge_weight(),
            certificate,
        },
    )?;
    Ok(0)
}

fn cut_to_sat(a: &ReduceArgs, argv: &[String], path: &PathBuf) -> Result<usize> {
    let convention: PairConvention =
        a.convention.parse().map_err(|e: dcqaoa::Error| anyhow::anyhow!("{e}"))?;
    let graph = read_graph_file(path)?;
    let formula = maxcut_to_sat(&graph, convention)?;
    let certificate =
        if a.certify { Some(certify_maxcut_to_sat(&graph, convention)?) } else { None };

    let manifest = ExperimentManifest::new(
        "reduce",
        argv,
        0,
        &["reduce_formula.cnf", "reduce.csv", "reduce_summary.json"],
    );
    fs::create_dir_all(&a.out)?;
    fs::write(a.out.join("reduce_formula.cnf"), formula.to_dimacs())?;

    let mut csv = CsvFile::new(
        "reduce.csv",
        "direction,convention,n_vertices,n_edges,n_vars,n_clauses,certified,relation_holds",
    );
    csv.row(&[
        "cut-to-sat".to_string(),
        convention.to_string(),
        graph.n_vertices().to_string(),
        graph.n_edges().to_string(),
        formula.n_vars().to_string(),
        formula.n_clauses().to_string(),
        a.certify.to_string(),
        certificate.map_or(String::new(), |c| c.relation_holds.to_string()),
    ]);
    csv.write(&a.out, &manifest)?;

    write_json(
        &a.out,
        "reduce_summary.json",
        &manifest,
        &CutToSatPayload {
            convention: convention.to_string(),
            n_vertices: graph.n_vertices(),
            n_edges: graph.n_edges(),
            n_vars: formula.n_vars(),
            n_clauses: formula.n_clauses(),
            certificate,
        },
    )?;
    Ok(0)
}
