//! Independent dense-matrix oracle for cross-checking the statevector
//! simulator. Every unitary here is built from first principles —
//! Kronecker products of 2x2 Pauli matrices and a Taylor-series matrix
//! exponential — sharing no code with the simulator's amplitude kernels.
#![allow(dead_code)] // each test binary uses a different subset

use nalgebra::DMatrix;
use num_complex::Complex64;

use dcqaoa::statevector::{GateOp, PauliAxis, PauliWord, Statevector};

pub type CMat = DMatrix<Complex64>;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn identity(dim: usize) -> CMat {
    CMat::identity(dim, dim)
}

pub fn pauli_matrix(axis: PauliAxis) -> CMat {
    match axis {
        PauliAxis::X => CMat::from_row_slice(2, 2, &[c(0., 0.), c(1., 0.), c(1., 0.), c(0., 0.)]),
        PauliAxis::Y => CMat::from_row_slice(2, 2, &[c(0., 0.), c(0., -1.), c(0., 1.), c(0., 0.)]),
        PauliAxis::Z => CMat::from_row_slice(2, 2, &[c(1., 0.), c(0., 0.), c(0., 0.), c(-1., 0.)]),
    }
}

/// Kronecker product; the left factor addresses the high-order index
/// bits.
pub fn kron(a: &CMat, b: &CMat) -> CMat {
    let (ar, ac) = a.shape();
    let (br, bc) = b.shape();
    let mut out = CMat::zeros(ar * br, ac * bc);
    for i in 0..ar {
        for j in 0..ac {
            for k in 0..br {
                for l in 0..bc {
                    out[(i * br + k, j * bc + l)] = a[(i, j)] * b[(k, l)];
                }
            }
        }
    }
    out
}

/// Embeds a Pauli word into the full `2^n` space. Basis indices are
/// little-endian (bit `q` of the index is qubit `q`), so qubit 0 sits in
/// the rightmost Kronecker factor.
pub fn pauli_word_matrix(word: &PauliWord, n_qubits: usize) -> CMat {
    let mut out = identity(1);
    for q in (0..n_qubits).rev() {
        let factor = word
            .factors()
            .iter()
            .find(|&&(wq, _)| wq == q)
            .map(|&(_, axis)| pauli_matrix(axis))
            .unwrap_or_else(|| identity(2));
        out = kron(&out, &factor);
    }
    out
}

/// Matrix exponential by scaling-and-squaring with a Taylor series.
pub fn expm(a: &CMat) -> CMat {
    let norm: f64 = a.iter().map(|z| z.norm()).fold(0.0_f64, f64::max) * a.nrows() as f64;
    let squarings = if norm > 0.5 { (norm / 0.5).log2().ceil() as u32 } else { 0 };
    let scaled = a.map(|z| z / 2f64.powi(squarings as i32));
    let mut result = identity(a.nrows());
    let mut term = identity(a.nrows());
    for k in 1..=24u32 {
        term = &term * &scaled;
        term.apply(|z| *z /= c(k as f64, 0.0));
        result += &term;
    }
    for _ in 0..squarings {
        result = &result * &result;
    }
    result
}

/// `exp(-i angle P)` built entirely from the dense Pauli matrix.
pub fn pauli_rotation_matrix(word: &PauliWord, n_qubits: usize, angle: f64) -> CMat {
    let p = pauli_word_matrix(word, n_qubits);
    expm(&p.map(|z| z * c(0.0, -angle)))
}

/// Dense unitary for one gate, derived from generators (for rotations)
/// or written out elementwise (for the definitional gates), then embedded.
pub fn gate_matrix(gate: &GateOp<f64>, n_qubits: usize) -> CMat {
    match *gate {
        GateOp::Rx { q, angle } => {
            pauli_rotation_matrix(&PauliWord::single(q, PauliAxis::X), n_qubits, angle / 2.0)
        }
        GateOp::Ry { q, angle } => {
            pauli_rotation_matrix(&PauliWord::single(q, PauliAxis::Y), n_qubits, angle / 2.0)
        }
        GateOp::Rz { q, angle } => {
            pauli_rotation_matrix(&PauliWord::single(q, PauliAxis::Z), n_qubits, angle / 2.0)
        }
        GateOp::Rzz { a, b, angle } => pauli_rotation_matrix(
            &PauliWord::two(a, PauliAxis::Z, b, PauliAxis::Z).unwrap(),
            n_qubits,
            angle,
        ),
        GateOp::Ryy { a, b, angle } => pauli_rotation_matrix(
            &PauliWord::two(a, PauliAxis::Y, b, PauliAxis::Y).unwrap(),
            n_qubits,
            angle,
        ),
        GateOp::RyzPair { a, b, angle } => {
            let yz = pauli_word_matrix(&PauliWord::two(a, PauliAxis::Y, b, PauliAxis::Z).unwrap(), n_qubits);
            let zy = pauli_word_matrix(&PauliWord::two(a, PauliAxis::Z, b, PauliAxis::Y).unwrap(), n_qubits);
            expm(&(yz + zy).map(|z| z * c(0.0, -angle)))
        }
        GateOp::H { q } => {
            let s = 1.0 / 2f64.sqrt();
            let h = CMat::from_row_slice(2, 2, &[c(s, 0.), c(s, 0.), c(s, 0.), c(-s, 0.)]);
            embed_single(&h, q, n_qubits)
        }
        GateOp::Hy { q } => {
            // (Y + Z) / sqrt(2), written out elementwise.
            let s = 1.0 / 2f64.sqrt();
            let hy = CMat::from_row_slice(2, 2, &[c(s, 0.), c(0., -s), c(0., s), c(-s, 0.)]);
            embed_single(&hy, q, n_qubits)
        }
        GateOp::Cnot { control, target } => {
            let dim = 1usize << n_qubits;
            let mut out = CMat::zeros(dim, dim);
            for z in 0..dim {
                let dst = if z >> control & 1 == 1 { z ^ (1 << target) } else { z };
                out[(dst, z)] = c(1.0, 0.0);
            }
            out
        }
    }
}

fn embed_single(m: &CMat, q: usize, n_qubits: usize) -> CMat {
    let mut out = identity(1);
    for qubit in (0..n_qubits).rev() {
        let factor = if qubit == q { m.clone() } else { identity(2) };
        out = kron(&out, &factor);
    }
    out
}

/// Product matrix of a whole gate list, applied left to right (gate 0
/// acts first, so it is the rightmost factor).
pub fn circuit_matrix(gates: &[GateOp<f64>], n_qubits: usize) -> CMat {
    let mut out = identity(1usize << n_qubits);
    for gate in gates {
        out = gate_matrix(gate, n_qubits) * out;
    }
    out
}

/// Applies a dense matrix to a statevector's amplitudes.
pub fn apply_matrix(m: &CMat, state: &Statevector<f64>) -> Vec<Complex64> {
    let dim = state.dim();
    let mut out = vec![c(0.0, 0.0); dim];
    for (row, slot) in out.iter_mut().enumerate() {
        for col in 0..dim {
            *slot += m[(row, col)] * state.amplitudes()[col];
        }
    }
    out
}

/// Largest amplitude deviation between a simulator state and an oracle
/// amplitude vector.
pub fn max_amplitude_deviation(state: &Statevector<f64>, oracle: &[Complex64]) -> f64 {
    state
        .amplitudes()
        .iter()
        .zip(oracle)
        .map(|(a, b)| (a - b).norm())
        .fold(0.0_f64, f64::max)
}

/// Deterministic random statevector with unit norm.
pub fn random_state(n_qubits: usize, seed: u64) -> Statevector<f64> {
    use rand::Rng;
    let mut rng = dcqaoa::stream_rng(seed, 0);
    let dim = 1usize << n_qubits;
    let amps: Vec<Complex64> = (0..dim)
        .map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    let norm: f64 = amps.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let amps = amps.into_iter().map(|z| z / norm).collect();
    Statevector::from_amplitudes(n_qubits, amps).unwrap()
}
