//! Variational quantum optimization workbench for MaxCut on a classical
//! statevector simulator.
//!
//! The crate implements the standard alternating-operator ansatz and
//! three counterdiabatic extensions of it, with exact gate-level circuit
//! construction, adjoint-mode gradients, and the analysis machinery to
//! study them: critical-depth scaling with logistic saturation fits,
//! quantum Fisher information and effective dimension, two-qubit
//! depolarizing noise (sampled trajectories cross-checked against a dense
//! density-matrix oracle), parameter concentration across problem sizes,
//! instance-sequential training on growing subgraphs, and a certified
//! reduction toolchain between Max-k-SAT and MaxCut.
//!
//! Everything is deterministic given explicit seeds: random draws go
//! through per-purpose RNG streams derived from `(seed, stream)`, so
//! results are independent of evaluation order and reproducible across
//! runs.
//!
//! Numeric code is generic over the floating-point scalar through
//! [`Scalar`] (implemented for `f32` and `f64`); every public type
//! defaults its scalar to `f64`, and fixed-precision aliases are exported
//! at the crate root.

pub mod analysis;
pub mod ansatz;
pub mod circuit;
pub mod error;
pub mod graphs;
pub mod hamiltonians;
pub mod ist;
pub mod noise;
pub mod optimizer;
pub mod reductions;
pub mod rng;
pub mod scalar;
pub mod statevector;

pub use analysis::{
    concentration_exponent, crossover_size, effective_dimension, fit_linear, fit_logistic,
    min_cross_distance, parameter_distance, qfi_matrix, qfi_of_circuit, suppression_delta,
    EffectiveDimension, LinearFit, LogisticFit, QfiMatrix, SuppressionDelta,
};
pub use ansatz::{
    format_circuit, matched_cnot_layers, parse_circuit, AnsatzFamily, AnsatzSpec,
    GateCountReport, ParameterVector,
};
pub use circuit::{ParamCircuit, ParamTerm};
pub use error::{Error, Result};
pub use graphs::{CutResult, Graph, MAX_BRUTE_FORCE_VERTICES, MAX_VERTICES};
pub use hamiltonians::{
    approximation_ratio, approximation_ratio_with_max, DiagonalHamiltonian, MixerHamiltonian,
    SkInstance,
};
pub use ist::{
    ist_train, resource_compare, resource_indicator, traditional_resource_indicator,
    IstRunResult, IstSchedule, ResourceComparison, ResourceIndicator, ResourceStage,
    StageRecord,
};
pub use noise::{
    density_matrix_evolution, exact_noisy_objective, noisy_diagonal_mean, noisy_fidelity,
    noisy_objective, run_noisy_trajectory, DensityMatrix, NoiseConfig, NoisyEstimate,
    MAX_DENSITY_QUBITS,
};
pub use optimizer::{
    critical_depth, objective_gradient, objective_value, train, train_from, CriticalDepth,
    CriticalDepthResult, ObjectiveKind, TrainConfig, TrainResult,
};
pub use reductions::{
    brute_force_maxsat, certify_maxcut_to_sat, certify_sat_to_maxcut, maxcut_to_sat,
    sat_to_maxcut, CnfFormula, CutToSatCertificate, PairConvention, SatResult,
    SatToCutCertificate, SatToCutMap, MAX_CERTIFY_VERTICES, MAX_SAT_VARS,
};
pub use rng::{derive_seed, stream_rng};
pub use scalar::Scalar;
pub use statevector::{GateOp, PauliAxis, PauliWord, Statevector, DEFAULT_MAX_QUBITS};

/// Double-precision aliases (identical to the defaults, exported for
/// explicitness).
pub type Statevector64 = statevector::Statevector<f64>;
pub type DensityMatrix64 = noise::DensityMatrix<f64>;
pub type ParamCircuit64 = circuit::ParamCircuit<f64>;
pub type DiagonalHamiltonian64 = hamiltonians::DiagonalHamiltonian<f64>;
pub type ParameterVector64 = ansatz::ParameterVector<f64>;
pub type TrainResult64 = optimizer::TrainResult<f64>;

/// Single-precision aliases for memory-constrained sweeps.
pub type Statevector32 = statevector::Statevector<f32>;
pub type DensityMatrix32 = noise::DensityMatrix<f32>;
pub type ParamCircuit32 = circuit::ParamCircuit<f32>;
pub type DiagonalHamiltonian32 = hamiltonians::DiagonalHamiltonian<f32>;
pub type ParameterVector32 = ansatz::ParameterVector<f32>;
pub type TrainResult32 = optimizer::TrainResult<f32>;
