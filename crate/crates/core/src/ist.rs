//! Instance-sequential training: optimize on a small connected subgraph
//! first, then transfer the parameters unchanged while the instance grows
//! back to full size, retraining briefly at each step.
//!
//! The growth sequence is built backwards by repeatedly deleting a
//! uniformly chosen vertex whose removal keeps the graph connected.
//! Because parameter count depends only on the family and layer count,
//! the same vector trains across every stage. Splitting a fixed iteration
//! budget over stages executes strictly fewer CNOTs than spending it all
//! on the full instance whenever at least one stage is smaller.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::ansatz::{AnsatzFamily, AnsatzSpec, ParameterVector};
use crate::error::{Error, Result};
use crate::graphs::Graph;
use crate::hamiltonians::DiagonalHamiltonian;
use crate::optimizer::{train, train_from, TrainConfig};
use crate::rng::stream_rng;
use crate::scalar::Scalar;

/// Growth sequence of connected instances ending at the full graph.
#[derive(Debug, Clone, PartialEq)]
pub struct IstSchedule {
    stages: Vec<Graph>,
    seed: u64,
}

impl IstSchedule {
    /// Builds a schedule from `start_vertices` up to the full graph by
    /// reverse vertex deletion. The base graph must be connected, and
    /// every intermediate graph stays connected; deletion step `i` draws
    /// from an RNG stream derived from `(seed, i)` uniformly over the
    /// vertices whose removal preserves connectivity.
    pub fn build(base: &Graph, start_vertices: usize, seed: u64) -> Result<Self> {
        let n = base.n_vertices();
        if !base.is_connected() {
            return Err(Error::InvalidInstance(
                "sequential training needs a connected base graph".into(),
            ));
        }
        if !(2..=n).contains(&start_vertices) {
            return Err(Error::InvalidArgument(format!(
                "start size {start_vertices} outside 2..={n}"
            )));
        }
        let mut stages = Vec::with_capacity(n - start_vertices + 1);
        stages.push(base.clone());
        let mut current = base.clone();
        for step in 0..(n - start_vertices) {
            let candidates: Vec<usize> = (0..current.n_vertices())
                .filter(|&v| {
                    current
                        .remove_vertex(v)
                        .map(|g| g.is_connected())
                        .unwrap_or(false)
                })
                .collect();
            // Every connected graph on >= 2 vertices has a spanning tree,
            // and a tree has >= 2 leaves, so candidates is never empty.
            debug_assert!(!candidates.is_empty());
            let mut rng = stream_rng(seed, step as u64);
            let v = candidates[rng.gen_range(0..candidates.len())];
            current = current.remove_vertex(v)?;
            stages.push(current.clone());
        }
        stages.reverse();
        Ok(Self { stages, seed })
    }

    /// Stage graphs in training order: smallest first, base graph last.
    pub fn stage_graphs(&self) -> &[Graph] {
        &self.stages
    }

    pub fn n_stages(&self) -> usize {
        self.stages.len()
    }

    pub fn base(&self) -> &Graph {
        self.stages.last().expect("schedule has at least one stage")
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }
}

/// Cost of one training stage under the CNOT-execution indicator.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ResourceStage {
    pub n_vertices: usize,
    pub n_edges: usize,
    /// Iteration share assigned to this stage (exact real division).
    pub iterations: f64,
    /// `iterations * cnots-per-circuit`, with
    /// `cnots-per-circuit = family factor * edges * layers`.
    pub cnots: f64,
}

/// CNOT-execution cost of a whole training protocol.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResourceIndicator {
    pub stages: Vec<ResourceStage>,
    pub total_iterations: f64,
    pub total_cnots: f64,
}

fn stage_cost(
    graph: &Graph,
    family: AnsatzFamily,
    layers: usize,
    iterations: f64,
) -> ResourceStage {
    let per_circuit = (family.cnot_factor() * graph.n_edges() * layers) as f64;
    ResourceStage {
        n_vertices: graph.n_vertices(),
        n_edges: graph.n_edges(),
        iterations,
        cnots: iterations * per_circuit,
    }
}

fn check_budget(budget: f64) -> Result<()> {
    if !(budget > 0.0) || !budget.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "iteration budget {budget} must be positive and finite"
        )));
    }
    Ok(())
}

/// Cost of sequential training with a total budget split evenly across
/// stages.
pub fn resource_indicator(
    schedule: &IstSchedule,
    family: AnsatzFamily,
    layers: usize,
    budget: f64,
) -> Result<ResourceIndicator> {
    check_budget(budget)?;
    if layers == 0 {
        return Err(Error::InvalidArgument("layer count must be at least 1".into()));
    }
    let share = budget / schedule.n_stages() as f64;
    let stages: Vec<ResourceStage> = schedule
        .stage_graphs()
        .iter()
        .map(|g| stage_cost(g, family, layers, share))
        .collect();
    Ok(ResourceIndicator {
        total_iterations: stages.iter().map(|s| s.iterations).sum(),
        total_cnots: stages.iter().map(|s| s.cnots).sum(),
        stages,
    })
}

/// Cost of spending the whole budget on the full instance.
pub fn traditional_resource_indicator(
    graph: &Graph,
    family: AnsatzFamily,
    layers: usize,
    budget: f64,
) -> Result<ResourceIndicator> {
    check_budget(budget)?;
    if layers == 0 {
        return Err(Error::InvalidArgument("layer count must be at least 1".into()));
    }
    let stage = stage_cost(graph, family, layers, budget);
    Ok(ResourceIndicator {
        total_iterations: stage.iterations,
        total_cnots: stage.cnots,
        stages: vec![stage],
    })
}

/// Side-by-side cost of sequential versus full-instance training for the
/// same schedule base, family, depth, and budget.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResourceComparison {
    pub sequential: ResourceIndicator,
    pub traditional: ResourceIndicator,
    /// `sequential.total_cnots / traditional.total_cnots`; strictly below
    /// one whenever the schedule starts below full size.
    pub cnot_ratio: f64,
}

pub fn resource_compare(
    schedule: &IstSchedule,
    family: AnsatzFamily,
    layers: usize,
    budget: f64,
) -> Result<ResourceComparison> {
    let sequential = resource_indicator(schedule, family, layers, budget)?;
    let traditional =
        traditional_resource_indicator(schedule.base(), family, layers, budget)?;
    if traditional.total_cnots <= 0.0 {
        return Err(Error::InvalidInstance(
            "cost comparison needs a base circuit with at least one CNOT".into(),
        ));
    }
    let cnot_ratio = sequential.total_cnots / traditional.total_cnots;
    Ok(ResourceComparison { sequential, traditional, cnot_ratio })
}

/// One stage of a sequential run.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StageRecord {
    pub stage_index: usize,
    pub n_vertices: usize,
    pub n_edges: usize,
    /// Objective at the parameters the stage started from (for the first
    /// stage, at the best restart's initial point).
    pub initial_objective: f64,
    pub best_objective: f64,
    /// Adam steps actually taken (summed over restarts for the first
    /// stage).
    pub iterations_used: usize,
    /// `iterations_used * cnots-per-circuit` of this stage.
    pub cnots_executed: f64,
}

/// Outcome of a sequential training run.
#[derive(Debug, Clone, PartialEq)]
pub struct IstRunResult<T: Scalar = f64> {
    pub stages: Vec<StageRecord>,
    pub final_params: ParameterVector<T>,
    /// Best objective on the full instance.
    pub final_objective: T,
}

impl<T: Scalar> IstRunResult<T> {
    pub fn total_cnots_executed(&self) -> f64 {
        self.stages.iter().map(|s| s.cnots_executed).sum()
    }
}

/// Trains through the schedule with `config.max_iterations` as the total
/// budget, split into `ceil(budget / n_stages)` Adam steps per stage. The
/// first stage runs the usual multi-restart search; every later stage is
/// a single run warm-started from the previous stage's best parameters,
/// carried over unchanged. Any `target_objective` in the config is
/// ignored: stages always use their full share. With a schedule starting
/// at full size this reduces exactly to ordinary training.
pub fn ist_train<T: Scalar>(
    schedule: &IstSchedule,
    family: AnsatzFamily,
    layers: usize,
    config: &TrainConfig,
) -> Result<IstRunResult<T>> {
    let n_stages = schedule.n_stages();
    let stage_budget = config.max_iterations.div_ceil(n_stages);
    let stage_config = TrainConfig {
        max_iterations: stage_budget,
        target_objective: None,
        ..config.clone()
    };

    let mut stages = Vec::with_capacity(n_stages);
    let mut carried: Option<ParameterVector<T>> = None;
    let mut final_objective = T::neg_infinity();
    for (index, graph) in schedule.stage_graphs().iter().enumerate() {
        let spec = AnsatzSpec::new(family, layers, graph.clone())?;
        let hamiltonian = DiagonalHamiltonian::<T>::maxcut(graph)?;
        let result = match &carried {
            None => train(&spec, &hamiltonian, &stage_config)?,
            Some(start) => train_from(&spec, &hamiltonian, &stage_config, start)?,
        };
        let initial_objective = result.traces[result.best_restart][0]
            .to_f64()
            .expect("objective to f64");
        let iterations_used = result.total_iterations();
        let per_circuit = (family.cnot_factor() * graph.n_edges() * layers) as f64;
        stages.push(StageRecord {
            stage_index: index,
            n_vertices: graph.n_vertices(),
            n_edges: graph.n_edges(),
            initial_objective,
            best_objective: result.best_objective.to_f64().expect("objective to f64"),
            iterations_used,
            cnots_executed: iterations_used as f64 * per_circuit,
        });
        final_objective = result.best_objective;
        carried = Some(result.best_params);
    }
    Ok(IstRunResult {
        stages,
        final_params: carried.expect("schedule has at least one stage"),
        final_objective,
    })
}
