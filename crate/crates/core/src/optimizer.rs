//! Gradient-ascent training and critical-depth search.
//!
//! Both objectives are affine images of a diagonal expectation, so the
//! exact adjoint gradient from [`crate::circuit`] drives a plain Adam
//! ascent. Runs are pure functions of `(spec, hamiltonian, config)`: every
//! restart draws its initial point from a seed derived from
//! `(config.seed, restart)`.

use serde::{Deserialize, Serialize};

use crate::ansatz::{AnsatzFamily, AnsatzSpec, GateCountReport, ParameterVector};
use crate::error::{Error, Result};
use crate::graphs::Graph;
use crate::hamiltonians::DiagonalHamiltonian;
use crate::rng::derive_seed;
use crate::scalar::{cast, Scalar};
use crate::statevector::Statevector;

/// What the optimizer maximizes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ObjectiveKind {
    /// Probability mass on the ground subspace of the cost Hamiltonian.
    Fidelity,
    /// Expected cut weight over the maximum cut weight.
    Ratio,
}

impl std::fmt::Display for ObjectiveKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ObjectiveKind::Fidelity => write!(f, "fidelity"),
            ObjectiveKind::Ratio => write!(f, "ratio"),
        }
    }
}

impl std::str::FromStr for ObjectiveKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "fidelity" => Ok(ObjectiveKind::Fidelity),
            "ratio" => Ok(ObjectiveKind::Ratio),
            other => Err(Error::Parse(format!(
                "unknown objective {other:?} (expected fidelity or ratio)"
            ))),
        }
    }
}

/// Adam moment decay rates and denominator floor.
const ADAM_BETA1: f64 = 0.9;
const ADAM_BETA2: f64 = 0.999;
const ADAM_EPS: f64 = 1e-8;

/// Training protocol knobs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrainConfig {
    pub objective: ObjectiveKind,
    /// Adam steps per restart.
    pub max_iterations: usize,
    pub restarts: usize,
    pub learning_rate: f64,
    /// A restart stops once the running best improves by less than
    /// `convergence_tol` across this many iterations.
    pub convergence_window: usize,
    pub convergence_tol: f64,
    pub seed: u64,
    /// Optional early exit: once any evaluation reaches this value the
    /// restart stops and remaining restarts are skipped. Meant for
    /// threshold searches where only attainment matters.
    pub target_objective: Option<f64>,
}

impl Default for TrainConfig {
    fn default() -> Self {
        Self {
            objective: ObjectiveKind::Fidelity,
            max_iterations: 500,
            restarts: 8,
            learning_rate: 0.05,
            convergence_window: 20,
            convergence_tol: 1e-6,
            seed: 0,
            target_objective: None,
        }
    }
}

impl TrainConfig {
    fn validate(&self) -> Result<()> {
        if self.max_iterations == 0 || self.restarts == 0 || self.convergence_window == 0 {
            return Err(Error::InvalidArgument(
                "iterations, restarts, and convergence window must be at least 1".into(),
            ));
        }
        if !(self.learning_rate > 0.0) || !(self.convergence_tol >= 0.0) {
            return Err(Error::InvalidArgument(
                "learning rate must be positive and tolerance non-negative".into(),
            ));
        }
        Ok(())
    }
}

/// Outcome of a (possibly multi-restart) training run.
#[derive(Debug, Clone, PartialEq)]
pub struct TrainResult<T: Scalar = f64> {
    pub best_params: ParameterVector<T>,
    pub best_objective: T,
    /// Restart that produced `best_params` (first on ties).
    pub best_restart: usize,
    /// `traces[r][i]` is the objective at iteration `i` of restart `r`;
    /// index 0 is the initial point, so a trace has one more entry than
    /// the Adam steps taken.
    pub traces: Vec<Vec<T>>,
    /// Adam steps taken per restart.
    pub iterations_used: Vec<usize>,
    pub gate_counts: GateCountReport,
}

impl<T: Scalar> TrainResult<T> {
    /// Best objective seen within one restart.
    pub fn restart_best(&self, restart: usize) -> T {
        self.traces[restart]
            .iter()
            .copied()
            .fold(T::neg_infinity(), T::max)
    }

    /// Total Adam steps across restarts.
    pub fn total_iterations(&self) -> usize {
        self.iterations_used.iter().sum()
    }
}

/// Diagonal observable whose expectation is the objective.
pub(crate) fn objective_diagonal<T: Scalar>(
    spec: &AnsatzSpec,
    hamiltonian: &DiagonalHamiltonian<T>,
    kind: ObjectiveKind,
) -> Result<Vec<T>> {
    if hamiltonian.n_qubits() != spec.n_qubits() {
        return Err(Error::ShapeMismatch(format!(
            "Hamiltonian on {} qubits for a {}-qubit ansatz",
            hamiltonian.n_qubits(),
            spec.n_qubits()
        )));
    }
    match kind {
        ObjectiveKind::Fidelity => Ok(hamiltonian.ground_projector_diagonal()),
        ObjectiveKind::Ratio => {
            let max_cut = spec.graph().brute_force_maxcut()?.cut_value;
            if max_cut <= 0.0 {
                return Err(Error::InvalidInstance(format!(
                    "ratio objective undefined for maximum cut {max_cut}"
                )));
            }
            let total = cast::<T>(spec.graph().total_weight());
            let scale = cast::<T>(1.0 / (2.0 * max_cut));
            Ok(hamiltonian
                .diagonal()
                .iter()
                .map(|&e| (total - e) * scale)
                .collect())
        }
    }
}

/// Objective at a parameter point, evaluated through the rotation-product
/// path (identical to what training reports).
pub fn objective_value<T: Scalar>(
    spec: &AnsatzSpec,
    params: &ParameterVector<T>,
    hamiltonian: &DiagonalHamiltonian<T>,
    kind: ObjectiveKind,
) -> Result<T> {
    let diag = objective_diagonal(spec, hamiltonian, kind)?;
    let state = spec.run_rotations(params)?;
    Ok(state
        .amplitudes()
        .iter()
        .zip(&diag)
        .map(|(a, &d)| a.norm_sqr() * d)
        .fold(T::zero(), |acc, x| acc + x))
}

/// Objective and its exact gradient in the `[α | β | γ]` layout.
pub fn objective_gradient<T: Scalar>(
    spec: &AnsatzSpec,
    params: &ParameterVector<T>,
    hamiltonian: &DiagonalHamiltonian<T>,
    kind: ObjectiveKind,
) -> Result<(T, Vec<T>)> {
    let diag = objective_diagonal(spec, hamiltonian, kind)?;
    let circuit = spec.param_circuit::<T>()?;
    let init = Statevector::plus_state(spec.n_qubits())?;
    circuit.expectation_and_gradient(&init, params.values(), &diag)
}

struct Ascent<'a, T: Scalar> {
    circuit: crate::circuit::ParamCircuit<T>,
    init: Statevector<T>,
    diag: &'a [T],
    config: &'a TrainConfig,
}

struct RestartOutcome<T: Scalar> {
    trace: Vec<T>,
    best_value: T,
    best_params: ParameterVector<T>,
    steps: usize,
    hit_target: bool,
}

impl<'a, T: Scalar> Ascent<'a, T> {
    /// One Adam ascent from `start`. The trace records the objective before
    /// each step plus a final evaluation, so `trace.len() == steps + 1`.
    fn run(&self, start: ParameterVector<T>) -> Result<RestartOutcome<T>> {
        let lr = cast::<T>(self.config.learning_rate);
        let tol = cast::<T>(self.config.convergence_tol);
        let b1 = cast::<T>(ADAM_BETA1);
        let b2 = cast::<T>(ADAM_BETA2);
        let eps = cast::<T>(ADAM_EPS);
        let target = self.config.target_objective.map(cast::<T>);
        let window = self.config.convergence_window;

        let n = start.values().len();
        let mut params = start;
        let mut m = vec![T::zero(); n];
        let mut v = vec![T::zero(); n];
        let mut b1_pow = T::one();
        let mut b2_pow = T::one();

        let mut trace: Vec<T> = Vec::with_capacity(self.config.max_iterations + 1);
        let mut envelope: Vec<T> = Vec::with_capacity(self.config.max_iterations + 1);
        let mut best_value = T::neg_infinity();
        let mut best_params = params.clone();
        let mut steps = 0;
        let mut hit_target = false;

        for step in 0..=self.config.max_iterations {
            let (value, grad) = self.circuit.expectation_and_gradient(
                &self.init,
                params.values(),
                self.diag,
            )?;
            trace.push(value);
            if value > best_value {
                best_value = value;
                best_params = params.clone();
            }
            envelope.push(best_value);
            if let Some(t) = target {
                if best_value >= t {
                    hit_target = true;
                    break;
                }
            }
            let i = envelope.len() - 1;
            if i >= window && envelope[i] - envelope[i - window] < tol {
                break;
            }
            if step == self.config.max_iterations {
                break;
            }
            steps += 1;
            b1_pow *= b1;
            b2_pow *= b2;
            let values = params.values_mut();
            for k in 0..n {
                m[k] = b1 * m[k] + (T::one() - b1) * grad[k];
                v[k] = b2 * v[k] + (T::one() - b2) * grad[k] * grad[k];
                let m_hat = m[k] / (T::one() - b1_pow);
                let v_hat = v[k] / (T::one() - b2_pow);
                values[k] += lr * m_hat / (v_hat.sqrt() + eps);
            }
        }
        Ok(RestartOutcome { trace, best_value, best_params, steps, hit_target })
    }
}

/// Multi-restart Adam ascent. Deterministic in
/// `(spec, hamiltonian, config)`; ties between restarts resolve to the
/// lowest restart index.
pub fn train<T: Scalar>(
    spec: &AnsatzSpec,
    hamiltonian: &DiagonalHamiltonian<T>,
    config: &TrainConfig,
) -> Result<TrainResult<T>> {
    config.validate()?;
    let diag = objective_diagonal(spec, hamiltonian, config.objective)?;
    let ascent = Ascent {
        circuit: spec.param_circuit::<T>()?,
        init: Statevector::plus_state(spec.n_qubits())?,
        diag: &diag,
        config,
    };

    let mut traces = Vec::with_capacity(config.restarts);
    let mut iterations_used = Vec::with_capacity(config.restarts);
    let mut best_value = T::neg_infinity();
    let mut best_params: Option<ParameterVector<T>> = None;
    let mut best_restart = 0;
    for restart in 0..config.restarts {
        let start = ParameterVector::random_uniform(
            spec.family(),
            spec.layers(),
            derive_seed(config.seed, restart as u64),
        )?;
        let outcome = ascent.run(start)?;
        if outcome.best_value > best_value {
            best_value = outcome.best_value;
            best_params = Some(outcome.best_params);
            best_restart = restart;
        }
        traces.push(outcome.trace);
        iterations_used.push(outcome.steps);
        if outcome.hit_target {
            break;
        }
    }
    Ok(TrainResult {
        best_params: best_params.expect("at least one restart ran"),
        best_objective: best_value,
        best_restart,
        traces,
        iterations_used,
        gate_counts: spec.count_gates(),
    })
}

/// Single ascent from an explicit starting point (no restarts, no random
/// initialization); the warm-start path for sequential training.
pub fn train_from<T: Scalar>(
    spec: &AnsatzSpec,
    hamiltonian: &DiagonalHamiltonian<T>,
    config: &TrainConfig,
    start: &ParameterVector<T>,
) -> Result<TrainResult<T>> {
    config.validate()?;
    if start.family() != spec.family() || start.layers() != spec.layers() {
        return Err(Error::ShapeMismatch(format!(
            "warm start for {} with {} layers used on {} with {} layers",
            start.family(),
            start.layers(),
            spec.family(),
            spec.layers()
        )));
    }
    let diag = objective_diagonal(spec, hamiltonian, config.objective)?;
    let ascent = Ascent {
        circuit: spec.param_circuit::<T>()?,
        init: Statevector::plus_state(spec.n_qubits())?,
        diag: &diag,
        config,
    };
    let outcome = ascent.run(start.clone())?;
    Ok(TrainResult {
        best_params: outcome.best_params,
        best_objective: outcome.best_value,
        best_restart: 0,
        traces: vec![outcome.trace],
        iterations_used: vec![outcome.steps],
        gate_counts: spec.count_gates(),
    })
}

/// Outcome of a critical-depth search.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum CriticalDepth {
    /// Smallest depth whose trained fidelity reached `1 - epsilon`.
    Reached(usize),
    /// No depth up to the limit reached the threshold.
    Saturated,
}

/// Critical-depth search record: best fidelity per tried depth.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CriticalDepthResult {
    pub family: AnsatzFamily,
    pub epsilon: f64,
    pub depth_limit: usize,
    pub outcome: CriticalDepth,
    /// `(depth, best fidelity)` for every depth tried, ascending.
    pub fidelities: Vec<(usize, f64)>,
}

impl CriticalDepthResult {
    /// The depth to report in sweeps: the reached depth, or the limit when
    /// saturated (a disclosed lower bound).
    pub fn depth_or_limit(&self) -> usize {
        match self.outcome {
            CriticalDepth::Reached(p) => p,
            CriticalDepth::Saturated => self.depth_limit,
        }
    }
}

/// Smallest depth `p` whose trained ground-state fidelity reaches
/// `1 - epsilon`, searching `p = 1..=depth_limit` in ascending order.
///
/// Each depth trains independently with a depth-derived seed; the fidelity
/// objective is forced regardless of `config.objective`, and
/// `config.target_objective` is overridden with the threshold so restarts
/// stop as soon as attainment is decided.
pub fn critical_depth<T: Scalar>(
    family: AnsatzFamily,
    graph: &Graph,
    epsilon: f64,
    depth_limit: usize,
    config: &TrainConfig,
) -> Result<CriticalDepthResult> {
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::InvalidArgument(format!(
            "epsilon {epsilon} outside (0, 1)"
        )));
    }
    if depth_limit == 0 {
        return Err(Error::InvalidArgument("depth limit must be at least 1".into()));
    }
    if graph.n_edges() == 0 {
        return Err(Error::InvalidInstance(
            "critical depth undefined on an edgeless graph".into(),
        ));
    }
    let hamiltonian = DiagonalHamiltonian::<T>::maxcut(graph)?;
    let threshold = 1.0 - epsilon;
    let mut fidelities = Vec::new();
    for p in 1..=depth_limit {
        let spec = AnsatzSpec::new(family, p, graph.clone())?;
        let depth_config = TrainConfig {
            objective: ObjectiveKind::Fidelity,
            seed: derive_seed(config.seed, p as u64),
            target_objective: Some(threshold),
            ..config.clone()
        };
        let result = train(&spec, &hamiltonian, &depth_config)?;
        let best = result.best_objective.to_f64().expect("objective to f64");
        fidelities.push((p, best));
        if best >= threshold {
            return Ok(CriticalDepthResult {
                family,
                epsilon,
                depth_limit,
                outcome: CriticalDepth::Reached(p),
                fidelities,
            });
        }
    }
    Ok(CriticalDepthResult {
        family,
        epsilon,
        depth_limit,
        outcome: CriticalDepth::Saturated,
        fidelities,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::Graph;

    #[test]
    fn k2_single_layer_reaches_high_fidelity_quickly() {
        let g = Graph::complete(2).unwrap();
        let spec = AnsatzSpec::new(AnsatzFamily::Qaoa, 1, g.clone()).unwrap();
        let h = DiagonalHamiltonian::<f64>::maxcut(&g).unwrap();
        let config = TrainConfig {
            max_iterations: 100,
            restarts: 4,
            ..TrainConfig::default()
        };
        let result = train(&spec, &h, &config).unwrap();
        assert!(
            result.best_objective >= 0.999,
            "best fidelity {}",
            result.best_objective
        );
        for trace in &result.traces {
            for &v in trace {
                assert!((0.0..=1.0 + 1e-12).contains(&v));
            }
        }
    }

    #[test]
    fn training_is_deterministic() {
        let g = Graph::random(4, 0.7, 3).unwrap();
        let spec = AnsatzSpec::new(AnsatzFamily::DcYy, 2, g.clone()).unwrap();
        let h = DiagonalHamiltonian::<f64>::maxcut(&g).unwrap();
        let config = TrainConfig { max_iterations: 40, restarts: 2, ..TrainConfig::default() };
        let a = train(&spec, &h, &config).unwrap();
        let b = train(&spec, &h, &config).unwrap();
        assert_eq!(a, b);
        let c = train(&spec, &h, &TrainConfig { seed: 1, ..config }).unwrap();
        assert_ne!(a.best_params, c.best_params);
    }

    #[test]
    fn ratio_objective_matches_direct_evaluation() {
        let g = Graph::random(4, 0.9, 7).unwrap();
        let spec = AnsatzSpec::new(AnsatzFamily::Qaoa, 2, g.clone()).unwrap();
        let h = DiagonalHamiltonian::<f64>::maxcut(&g).unwrap();
        let params = ParameterVector::random_uniform(AnsatzFamily::Qaoa, 2, 5).unwrap();
        let via_objective = objective_value(&spec, &params, &h, ObjectiveKind::Ratio).unwrap();
        let state = spec.run(&params).unwrap();
        let direct = crate::hamiltonians::approximation_ratio(&h, &state, &g).unwrap();
        assert!((via_objective - direct).abs() < 1e-12);
    }

    #[test]
    fn gradient_agrees_with_finite_differences() {
        let g = Graph::random(4, 0.8, 11).unwrap();
        let spec = AnsatzSpec::new(AnsatzFamily::DcNc, 1, g.clone()).unwrap();
        let h = DiagonalHamiltonian::<f64>::maxcut(&g).unwrap();
        let params = ParameterVector::random_uniform(AnsatzFamily::DcNc, 1, 2).unwrap();
        for kind in [ObjectiveKind::Fidelity, ObjectiveKind::Ratio] {
            let (_, grad) = objective_gradient(&spec, &params, &h, kind).unwrap();
            let eps = 1e-6;
            for k in 0..params.values().len() {
                let mut up = params.clone();
                let mut dn = params.clone();
                up.values_mut()[k] += eps;
                dn.values_mut()[k] -= eps;
                let fu = objective_value(&spec, &up, &h, kind).unwrap();
                let fd = objective_value(&spec, &dn, &h, kind).unwrap();
                let est = (fu - fd) / (2.0 * eps);
                assert!((est - grad[k]).abs() < 1e-7, "{kind}: {est} vs {}", grad[k]);
            }
        }
    }

    #[test]
    fn warm_start_trace_begins_at_initial_objective() {
        let g = Graph::random(4, 0.6, 9).unwrap();
        let spec = AnsatzSpec::new(AnsatzFamily::DcY, 2, g.clone()).unwrap();
        let h = DiagonalHamiltonian::<f64>::maxcut(&g).unwrap();
        let start = ParameterVector::random_uniform(AnsatzFamily::DcY, 2, 17).unwrap();
        let init_value = objective_value(&spec, &start, &h, ObjectiveKind::Fidelity).unwrap();
        let config = TrainConfig { max_iterations: 30, ..TrainConfig::default() };
        let result = train_from(&spec, &h, &config, &start).unwrap();
        assert!((result.traces[0][0] - init_value).abs() < 1e-13);
        assert!(result.best_objective >= init_value);
    }

    #[test]
    fn critical_depth_on_k2_is_one() {
        let g = Graph::complete(2).unwrap();
        let config = TrainConfig { max_iterations: 150, restarts: 4, ..TrainConfig::default() };
        let result =
            critical_depth::<f64>(AnsatzFamily::Qaoa, &g, 0.01, 4, &config).unwrap();
        assert_eq!(result.outcome, CriticalDepth::Reached(1));
        assert_eq!(result.depth_or_limit(), 1);
    }

    #[test]
    fn critical_depth_saturates_at_limit() {
        // One-layer cap with a tight tolerance on a nontrivial graph: the
        // search must disclose saturation rather than fabricate a depth.
        let g = Graph::random(6, 0.8, 1).unwrap();
        let config = TrainConfig { max_iterations: 60, restarts: 2, ..TrainConfig::default() };
        let result =
            critical_depth::<f64>(AnsatzFamily::Qaoa, &g, 1e-6, 1, &config).unwrap();
        assert_eq!(result.outcome, CriticalDepth::Saturated);
        assert_eq!(result.depth_or_limit(), 1);
        assert_eq!(result.fidelities.len(), 1);
    }

    #[test]
    fn config_validation() {
        let g = Graph::complete(2).unwrap();
        let spec = AnsatzSpec::new(AnsatzFamily::Qaoa, 1, g.clone()).unwrap();
        let h = DiagonalHamiltonian::<f64>::maxcut(&g).unwrap();
        let bad = TrainConfig { restarts: 0, ..TrainConfig::default() };
        assert!(train(&spec, &h, &bad).is_err());
        let neg_lr = TrainConfig { learning_rate: -1.0, ..TrainConfig::default() };
        assert!(train(&spec, &h, &neg_lr).is_err());
    }
}
