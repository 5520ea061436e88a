//! Two-qubit depolarizing noise after every CNOT.
//!
//! The channel on a qubit pair is
//! `rho -> (1 - p) rho + (p/4) I_pair (x) tr_pair(rho)`,
//! which unravels into Pauli trajectories: with probability `15p/16` one of
//! the fifteen non-identity two-qubit Paulis (each `p/16`) hits the pair,
//! otherwise nothing happens. Two independent implementations are kept:
//! a sampled statevector unraveling for production sizes, and a dense
//! density-matrix evolution applying the channel exactly, used as the
//! cross-check on small systems.

use num_complex::Complex;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::ansatz::{AnsatzSpec, ParameterVector};
use crate::error::{Error, Result};
use crate::hamiltonians::DiagonalHamiltonian;
use crate::optimizer::{objective_diagonal, ObjectiveKind};
use crate::rng::stream_rng;
use crate::scalar::{cast, Scalar};
use crate::statevector::{GateOp, PauliAxis, PauliWord, Statevector};

/// Largest system the dense density-matrix evolution accepts (the matrix
/// has `4^n` entries and every gate touches all of them).
pub const MAX_DENSITY_QUBITS: usize = 6;

/// Sampling protocol for noisy evaluation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NoiseConfig {
    /// Two-qubit depolarizing probability applied after each CNOT.
    pub depolarizing_p: f64,
    pub n_trajectories: usize,
    pub seed: u64,
}

impl Default for NoiseConfig {
    fn default() -> Self {
        Self { depolarizing_p: 0.0066, n_trajectories: 200, seed: 0 }
    }
}

impl NoiseConfig {
    fn validate(&self) -> Result<()> {
        check_probability(self.depolarizing_p)?;
        if self.n_trajectories == 0 {
            return Err(Error::InvalidArgument("need at least one trajectory".into()));
        }
        Ok(())
    }
}

fn check_probability(p: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidArgument(format!(
            "depolarizing probability {p} outside [0, 1]"
        )));
    }
    Ok(())
}

/// Monte-Carlo mean with its standard error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NoisyEstimate {
    pub mean: f64,
    /// Sample standard deviation over `sqrt(n)`; zero for a single
    /// trajectory.
    pub std_error: f64,
    pub n_trajectories: usize,
}

impl NoisyEstimate {
    fn from_samples(samples: &[f64]) -> Self {
        let n = samples.len();
        let mean = samples.iter().sum::<f64>() / n as f64;
        let std_error = if n > 1 {
            let var =
                samples.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
            (var / n as f64).sqrt()
        } else {
            0.0
        };
        Self { mean, std_error, n_trajectories: n }
    }
}

const AXES: [Option<PauliAxis>; 4] =
    [None, Some(PauliAxis::X), Some(PauliAxis::Y), Some(PauliAxis::Z)];

fn pair_pauli(code: usize, control: usize, target: usize) -> PauliWord {
    debug_assert!((1..16).contains(&code));
    let mut factors = Vec::with_capacity(2);
    if let Some(axis) = AXES[code / 4] {
        factors.push((control, axis));
    }
    if let Some(axis) = AXES[code % 4] {
        factors.push((target, axis));
    }
    PauliWord::new(&factors).expect("non-identity pair Pauli on distinct qubits")
}

/// Runs `gates` from `init` with a depolarizing fault drawn after every
/// CNOT. With `p = 0` the output is bit-identical to noiseless evolution.
pub fn run_noisy_trajectory<T: Scalar>(
    init: &Statevector<T>,
    gates: &[GateOp<T>],
    p: f64,
    rng: &mut impl Rng,
) -> Result<Statevector<T>> {
    check_probability(p)?;
    let mut state = init.clone();
    let fault_prob = 15.0 * p / 16.0;
    for gate in gates {
        state.apply_gate(gate)?;
        if let GateOp::Cnot { control, target } = *gate {
            if rng.gen::<f64>() < fault_prob {
                let code = 1 + rng.gen_range(0..15usize);
                state.apply_pauli_word(&pair_pauli(code, control, target))?;
            }
        }
    }
    Ok(state)
}

/// Mean of a diagonal observable over noisy trajectories of `gates`,
/// starting from `init`. Trajectory `t` draws from an RNG stream derived
/// from `(config.seed, t)`, so the estimate is independent of evaluation
/// order and reproducible.
pub fn noisy_diagonal_mean<T: Scalar>(
    init: &Statevector<T>,
    gates: &[GateOp<T>],
    diag: &[T],
    config: &NoiseConfig,
) -> Result<NoisyEstimate> {
    config.validate()?;
    if diag.len() != init.dim() {
        return Err(Error::ShapeMismatch(format!(
            "diagonal of length {} for dimension {}",
            diag.len(),
            init.dim()
        )));
    }
    let mut samples = Vec::with_capacity(config.n_trajectories);
    for t in 0..config.n_trajectories {
        let mut rng = stream_rng(config.seed, t as u64);
        let state = run_noisy_trajectory(init, gates, config.depolarizing_p, &mut rng)?;
        let value: T = state
            .amplitudes()
            .iter()
            .zip(diag)
            .map(|(a, &d)| a.norm_sqr() * d)
            .fold(T::zero(), |acc, x| acc + x);
        samples.push(value.to_f64().expect("observable to f64"));
    }
    Ok(NoisyEstimate::from_samples(&samples))
}

/// Noisy estimate of a training objective for a trained parameter point:
/// the circuit is built once, then sampled under the depolarizing channel.
pub fn noisy_objective<T: Scalar>(
    spec: &AnsatzSpec,
    params: &ParameterVector<T>,
    hamiltonian: &DiagonalHamiltonian<T>,
    kind: ObjectiveKind,
    config: &NoiseConfig,
) -> Result<NoisyEstimate> {
    let diag = objective_diagonal(spec, hamiltonian, kind)?;
    let gates = spec.build_circuit(params)?;
    let init = Statevector::plus_state(spec.n_qubits())?;
    noisy_diagonal_mean(&init, &gates, &diag, config)
}

/// Noisy ground-state fidelity (the objective used by depth searches).
pub fn noisy_fidelity<T: Scalar>(
    spec: &AnsatzSpec,
    params: &ParameterVector<T>,
    hamiltonian: &DiagonalHamiltonian<T>,
    config: &NoiseConfig,
) -> Result<NoisyEstimate> {
    noisy_objective(spec, params, hamiltonian, ObjectiveKind::Fidelity, config)
}

/// Dense density matrix in the same little-endian basis as
/// [`Statevector`], stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix<T: Scalar = f64> {
    n_qubits: usize,
    dim: usize,
    data: Vec<Complex<T>>,
}

impl<T: Scalar> DensityMatrix<T> {
    pub fn from_statevector(state: &Statevector<T>) -> Result<Self> {
        let n_qubits = state.n_qubits();
        if n_qubits > MAX_DENSITY_QUBITS {
            return Err(Error::TooLarge {
                context: "density-matrix allocation",
                size: n_qubits,
                limit: MAX_DENSITY_QUBITS,
            });
        }
        let dim = state.dim();
        let amps = state.amplitudes();
        let mut data = Vec::with_capacity(dim * dim);
        for r in 0..dim {
            for c in 0..dim {
                data.push(amps[r] * amps[c].conj());
            }
        }
        Ok(Self { n_qubits, dim, data })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex<T> {
        self.data[row * self.dim + col]
    }

    pub fn trace(&self) -> Complex<T> {
        (0..self.dim).map(|i| self.entry(i, i)).fold(Complex::new(T::zero(), T::zero()), |a, b| a + b)
    }

    pub fn max_hermiticity_violation(&self) -> T {
        let mut worst = T::zero();
        for r in 0..self.dim {
            for c in 0..self.dim {
                let delta = (self.entry(r, c) - self.entry(c, r).conj()).norm();
                worst = worst.max(delta);
            }
        }
        worst
    }

    /// `rho -> U rho U^dagger` via two passes of `U` over columns with a
    /// conjugate transpose in between (`U rho U^+ = (U (U rho)^+)^+`).
    pub fn apply_gate(&mut self, gate: &GateOp<T>) -> Result<()> {
        self.apply_to_columns(gate)?;
        self.conjugate_transpose();
        self.apply_to_columns(gate)?;
        self.conjugate_transpose();
        Ok(())
    }

    pub fn apply_circuit(&mut self, gates: &[GateOp<T>]) -> Result<()> {
        for gate in gates {
            self.apply_gate(gate)?;
        }
        Ok(())
    }

    fn apply_to_columns(&mut self, gate: &GateOp<T>) -> Result<()> {
        let mut column = vec![Complex::new(T::zero(), T::zero()); self.dim];
        for c in 0..self.dim {
            for r in 0..self.dim {
                column[r] = self.data[r * self.dim + c];
            }
            let mut state = Statevector::from_amplitudes(self.n_qubits, column)?;
            state.apply_gate(gate)?;
            column = state.into_amplitudes();
            for r in 0..self.dim {
                self.data[r * self.dim + c] = column[r];
            }
        }
        Ok(())
    }

    fn conjugate_transpose(&mut self) {
        for r in 0..self.dim {
            for c in 0..r {
                let (i, j) = (r * self.dim + c, c * self.dim + r);
                let (a, b) = (self.data[i], self.data[j]);
                self.data[i] = b.conj();
                self.data[j] = a.conj();
            }
            let d = r * self.dim + r;
            self.data[d] = self.data[d].conj();
        }
    }

    /// Exact two-qubit depolarizing channel on `(qa, qb)`:
    /// `rho -> (1 - p) rho + (p/4) I_pair (x) tr_pair(rho)`.
    pub fn apply_two_qubit_depolarizing(&mut self, qa: usize, qb: usize, p: f64) -> Result<()> {
        check_probability(p)?;
        if qa >= self.n_qubits || qb >= self.n_qubits || qa == qb {
            return Err(Error::InvalidArgument(format!(
                "depolarizing pair ({qa}, {qb}) on {} qubits",
                self.n_qubits
            )));
        }
        let bit_a = 1usize << qa;
        let bit_b = 1usize << qb;
        let pair_mask = bit_a | bit_b;
        let keep = cast::<T>(1.0 - p);
        let quarter = cast::<T>(p / 4.0);
        let mut out = self.data.clone();
        for r in 0..self.dim {
            for c in 0..self.dim {
                let idx = r * self.dim + c;
                let mut value = self.data[idx].scale(keep);
                if r & pair_mask == c & pair_mask {
                    // Partial trace over the pair at the rest-index block,
                    // summing the four pair-diagonal entries.
                    let r0 = r & !pair_mask;
                    let c0 = c & !pair_mask;
                    let mut traced = Complex::new(T::zero(), T::zero());
                    for k in 0..4usize {
                        let pair_bits =
                            if k & 1 != 0 { bit_a } else { 0 } | if k & 2 != 0 { bit_b } else { 0 };
                        traced += self.data[(r0 | pair_bits) * self.dim + (c0 | pair_bits)];
                    }
                    value += traced.scale(quarter);
                }
                out[idx] = value;
            }
        }
        self.data = out;
        Ok(())
    }

    /// Expectation of a diagonal observable.
    pub fn diagonal_expectation(&self, diag: &[T]) -> Result<T> {
        if diag.len() != self.dim {
            return Err(Error::ShapeMismatch(format!(
                "diagonal of length {} for dimension {}",
                diag.len(),
                self.dim
            )));
        }
        Ok((0..self.dim)
            .map(|i| self.entry(i, i).re * diag[i])
            .fold(T::zero(), |acc, x| acc + x))
    }
}

/// Exact noisy evolution of `gates` from `init`: the depolarizing channel
/// is applied on each CNOT's qubit pair immediately after the gate.
pub fn density_matrix_evolution<T: Scalar>(
    init: &Statevector<T>,
    gates: &[GateOp<T>],
    p: f64,
) -> Result<DensityMatrix<T>> {
    let mut rho = DensityMatrix::from_statevector(init)?;
    for gate in gates {
        rho.apply_gate(gate)?;
        if let GateOp::Cnot { control, target } = *gate {
            rho.apply_two_qubit_depolarizing(control, target, p)?;
        }
    }
    Ok(rho)
}

/// Exact noisy objective via the density-matrix path; the oracle the
/// sampled estimate is validated against on small systems.
pub fn exact_noisy_objective<T: Scalar>(
    spec: &AnsatzSpec,
    params: &ParameterVector<T>,
    hamiltonian: &DiagonalHamiltonian<T>,
    kind: ObjectiveKind,
    p: f64,
) -> Result<f64> {
    let diag = objective_diagonal(spec, hamiltonian, kind)?;
    let gates = spec.build_circuit(params)?;
    let init = Statevector::plus_state(spec.n_qubits())?;
    let rho = density_matrix_evolution(&init, &gates, p)?;
    Ok(rho
        .diagonal_expectation(&diag)?
        .to_f64()
        .expect("observable to f64"))
}
