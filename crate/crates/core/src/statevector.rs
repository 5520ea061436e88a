//! Dense statevector simulation.
//!
//! Basis indices are little-endian: bit `q` of an index is the value of
//! qubit `q`, so basis state `|z⟩` at index `z` assigns `z_q = (z >> q) & 1`.
//! Rotation conventions follow the gate set used by the ansatz builder:
//! single-qubit rotations take half-angle form `R_a(θ) = exp(-i θ σ_a / 2)`,
//! while named two-qubit rotations and [`Statevector::apply_pauli_rotation`]
//! use the full angle, `exp(-i θ P)`.

use std::fmt;

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{cast, Scalar};

/// Default qubit cap for state allocation (`2^26` amplitudes is 1 GiB of
/// `f64` pairs; anything beyond that needs an explicit opt-in).
pub const DEFAULT_MAX_QUBITS: usize = 26;

/// Single-qubit Pauli axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PauliAxis {
    X,
    Y,
    Z,
}

impl fmt::Display for PauliAxis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PauliAxis::X => write!(f, "X"),
            PauliAxis::Y => write!(f, "Y"),
            PauliAxis::Z => write!(f, "Z"),
        }
    }
}

/// Tensor product of Pauli factors on distinct qubits, e.g. `Y0 Z3`.
///
/// Factors are kept sorted by qubit; identity factors are implicit.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PauliWord {
    factors: Vec<(usize, PauliAxis)>,
}

impl PauliWord {
    /// Builds a word from `(qubit, axis)` factors. The word must be
    /// non-empty and qubits must be distinct.
    pub fn new(factors: &[(usize, PauliAxis)]) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::InvalidInstance("empty Pauli word".into()));
        }
        let mut sorted = factors.to_vec();
        sorted.sort_by_key(|&(q, _)| q);
        for pair in sorted.windows(2) {
            if pair[0].0 == pair[1].0 {
                return Err(Error::InvalidInstance(format!(
                    "Pauli word repeats qubit {}",
                    pair[0].0
                )));
            }
        }
        Ok(Self { factors: sorted })
    }

    pub fn single(qubit: usize, axis: PauliAxis) -> Self {
        Self { factors: vec![(qubit, axis)] }
    }

    pub fn two(q0: usize, a0: PauliAxis, q1: usize, a1: PauliAxis) -> Result<Self> {
        Self::new(&[(q0, a0), (q1, a1)])
    }

    pub fn factors(&self) -> &[(usize, PauliAxis)] {
        &self.factors
    }

    pub fn max_qubit(&self) -> usize {
        self.factors.last().expect("word is non-empty").0
    }

    /// Bit masks driving the kernel: `flip` marks X/Y factors (the word
    /// permutes those bits), `phase` marks Y/Z factors (they contribute
    /// `(-1)^{z_q}`), and the count of Y factors fixes the global `i^k`.
    pub(crate) fn masks(&self) -> (u64, u64, u32) {
        let mut flip = 0u64;
        let mut phase = 0u64;
        let mut n_y = 0u32;
        for &(q, axis) in &self.factors {
            match axis {
                PauliAxis::X => flip |= 1 << q,
                PauliAxis::Y => {
                    flip |= 1 << q;
                    phase |= 1 << q;
                    n_y += 1;
                }
                PauliAxis::Z => phase |= 1 << q,
            }
        }
        (flip, phase, n_y)
    }
}

impl fmt::Display for PauliWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (q, axis)) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{axis}{q}")?;
        }
        Ok(())
    }
}

/// One gate at the level the ansatz builder emits and the noise model
/// consumes. Single-qubit rotations are half-angle; the named two-qubit
/// rotations are full-angle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GateOp<T: Scalar = f64> {
    /// `exp(-i θ X / 2)`.
    Rx { q: usize, angle: T },
    /// `exp(-i θ Y / 2)`.
    Ry { q: usize, angle: T },
    /// `exp(-i θ Z / 2)`.
    Rz { q: usize, angle: T },
    /// Hadamard.
    H { q: usize },
    /// The involution `(Y + Z) / sqrt(2)`; conjugates Z into Y.
    Hy { q: usize },
    Cnot { control: usize, target: usize },
    /// `exp(-i θ Z⊗Z)`.
    Rzz { a: usize, b: usize, angle: T },
    /// `exp(-i θ Y⊗Y)`.
    Ryy { a: usize, b: usize, angle: T },
    /// `exp(-i θ (Y_a Z_b + Z_a Y_b))`; the two words commute, so this is
    /// their product in either order.
    RyzPair { a: usize, b: usize, angle: T },
}

impl<T: Scalar> GateOp<T> {
    /// Qubits the gate acts on (one or two entries).
    pub fn qubits(&self) -> Vec<usize> {
        match *self {
            GateOp::Rx { q, .. } | GateOp::Ry { q, .. } | GateOp::Rz { q, .. }
            | GateOp::H { q } | GateOp::Hy { q } => vec![q],
            GateOp::Cnot { control, target } => vec![control, target],
            GateOp::Rzz { a, b, .. } | GateOp::Ryy { a, b, .. } | GateOp::RyzPair { a, b, .. } => {
                vec![a, b]
            }
        }
    }

    pub fn is_cnot(&self) -> bool {
        matches!(self, GateOp::Cnot { .. })
    }

    /// Inverse gate: rotations negate their angle, H/HY/CNOT are
    /// involutions.
    pub fn inverse(&self) -> Self {
        match *self {
            GateOp::Rx { q, angle } => GateOp::Rx { q, angle: -angle },
            GateOp::Ry { q, angle } => GateOp::Ry { q, angle: -angle },
            GateOp::Rz { q, angle } => GateOp::Rz { q, angle: -angle },
            GateOp::Rzz { a, b, angle } => GateOp::Rzz { a, b, angle: -angle },
            GateOp::Ryy { a, b, angle } => GateOp::Ryy { a, b, angle: -angle },
            GateOp::RyzPair { a, b, angle } => GateOp::RyzPair { a, b, angle: -angle },
            other => other,
        }
    }
}

impl<T: Scalar> fmt::Display for GateOp<T> {
    /// `KIND q0 [q1] [angle]`, one gate per line when joined.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            GateOp::Rx { q, angle } => write!(f, "RX {q} {angle}"),
            GateOp::Ry { q, angle } => write!(f, "RY {q} {angle}"),
            GateOp::Rz { q, angle } => write!(f, "RZ {q} {angle}"),
            GateOp::H { q } => write!(f, "H {q}"),
            GateOp::Hy { q } => write!(f, "HY {q}"),
            GateOp::Cnot { control, target } => write!(f, "CNOT {control} {target}"),
            GateOp::Rzz { a, b, angle } => write!(f, "RZZ {a} {b} {angle}"),
            GateOp::Ryy { a, b, angle } => write!(f, "RYY {a} {b} {angle}"),
            GateOp::RyzPair { a, b, angle } => write!(f, "RYZPAIR {a} {b} {angle}"),
        }
    }
}

/// Dense complex statevector over `n_qubits` qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct Statevector<T: Scalar = f64> {
    n_qubits: usize,
    amps: Vec<Complex<T>>,
}

impl<T: Scalar> Statevector<T> {
    /// Uniform superposition `|+⟩^{⊗n}`, the ground state of the transverse
    /// field mixer and the ansatz input state.
    pub fn plus_state(n_qubits: usize) -> Result<Self> {
        Self::plus_state_limited(n_qubits, DEFAULT_MAX_QUBITS)
    }

    /// [`Statevector::plus_state`] with an explicit allocation cap.
    pub fn plus_state_limited(n_qubits: usize, max_qubits: usize) -> Result<Self> {
        check_qubit_count(n_qubits, max_qubits)?;
        let dim = 1usize << n_qubits;
        let amp = cast::<T>(1.0 / (dim as f64).sqrt());
        Ok(Self {
            n_qubits,
            amps: vec![Complex::new(amp, T::zero()); dim],
        })
    }

    /// Computational basis state `|index⟩`.
    pub fn basis_state(n_qubits: usize, index: usize) -> Result<Self> {
        check_qubit_count(n_qubits, DEFAULT_MAX_QUBITS)?;
        let dim = 1usize << n_qubits;
        if index >= dim {
            return Err(Error::InvalidArgument(format!(
                "basis index {index} outside 0..{dim}"
            )));
        }
        let mut amps = vec![Complex::zero(); dim];
        amps[index] = Complex::one();
        Ok(Self { n_qubits, amps })
    }

    /// Wraps raw amplitudes; the length must be `2^n_qubits`.
    pub fn from_amplitudes(n_qubits: usize, amps: Vec<Complex<T>>) -> Result<Self> {
        check_qubit_count(n_qubits, DEFAULT_MAX_QUBITS)?;
        if amps.len() != 1usize << n_qubits {
            return Err(Error::ShapeMismatch(format!(
                "{} amplitudes for {} qubits",
                amps.len(),
                n_qubits
            )));
        }
        Ok(Self { n_qubits, amps })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn into_amplitudes(self) -> Vec<Complex<T>> {
        self.amps
    }

    pub fn amplitudes(&self) -> &[Complex<T>] {
        &self.amps
    }

    pub(crate) fn amplitudes_mut(&mut self) -> &mut [Complex<T>] {
        &mut self.amps
    }

    pub fn norm(&self) -> T {
        self.amps
            .iter()
            .map(|a| a.norm_sqr())
            .fold(T::zero(), |acc, x| acc + x)
            .sqrt()
    }

    pub fn normalize(&mut self) {
        let n = self.norm();
        if n > T::zero() {
            let inv = T::one() / n;
            for a in &mut self.amps {
                *a = a.scale(inv);
            }
        }
    }

    /// `⟨self|other⟩`.
    pub fn inner_product(&self, other: &Self) -> Result<Complex<T>> {
        if self.n_qubits != other.n_qubits {
            return Err(Error::ShapeMismatch(format!(
                "inner product between {} and {} qubits",
                self.n_qubits, other.n_qubits
            )));
        }
        let mut acc = Complex::zero();
        for (a, b) in self.amps.iter().zip(&other.amps) {
            acc += a.conj() * b;
        }
        Ok(acc)
    }

    /// `|⟨self|other⟩|^2`.
    pub fn fidelity(&self, other: &Self) -> Result<T> {
        Ok(self.inner_product(other)?.norm_sqr())
    }

    /// Probability mass on a set of basis indices. Indices must be in
    /// range and distinct; this is a projector expectation, so the result
    /// lies in `[0, 1]` for normalized states.
    pub fn projector_overlap(&self, basis_indices: &[usize]) -> T {
        basis_indices
            .iter()
            .map(|&i| self.amps[i].norm_sqr())
            .fold(T::zero(), |acc, x| acc + x)
    }

    pub fn probabilities(&self) -> Vec<T> {
        self.amps.iter().map(|a| a.norm_sqr()).collect()
    }

    /// Applies one gate in place.
    pub fn apply_gate(&mut self, gate: &GateOp<T>) -> Result<()> {
        self.check_qubits(&gate.qubits())?;
        let half = cast::<T>(0.5);
        match *gate {
            GateOp::Rx { q, angle } => {
                let (s, c) = (angle * half).sin_cos();
                self.single_qubit(q, [
                    [Complex::new(c, T::zero()), Complex::new(T::zero(), -s)],
                    [Complex::new(T::zero(), -s), Complex::new(c, T::zero())],
                ]);
            }
            GateOp::Ry { q, angle } => {
                let (s, c) = (angle * half).sin_cos();
                self.single_qubit(q, [
                    [Complex::new(c, T::zero()), Complex::new(-s, T::zero())],
                    [Complex::new(s, T::zero()), Complex::new(c, T::zero())],
                ]);
            }
            GateOp::Rz { q, angle } => {
                let (s, c) = (angle * half).sin_cos();
                let e_minus = Complex::new(c, -s);
                let e_plus = Complex::new(c, s);
                let bit = 1usize << q;
                for (z, amp) in self.amps.iter_mut().enumerate() {
                    *amp = *amp * if z & bit == 0 { e_minus } else { e_plus };
                }
            }
            GateOp::H { q } => {
                let r = cast::<T>(std::f64::consts::FRAC_1_SQRT_2);
                let re = Complex::new(r, T::zero());
                self.single_qubit(q, [[re, re], [re, -re]]);
            }
            GateOp::Hy { q } => {
                let r = cast::<T>(std::f64::consts::FRAC_1_SQRT_2);
                let re = Complex::new(r, T::zero());
                let im = Complex::new(T::zero(), r);
                // (Y + Z) / sqrt(2); Hermitian involution with HY Z HY = Y.
                self.single_qubit(q, [[re, -im], [im, -re]]);
            }
            GateOp::Cnot { control, target } => {
                let (cbit, tbit) = (1usize << control, 1usize << target);
                for z in 0..self.amps.len() {
                    if z & cbit != 0 && z & tbit == 0 {
                        self.amps.swap(z, z | tbit);
                    }
                }
            }
            GateOp::Rzz { a, b, angle } => {
                let (s, c) = angle.sin_cos();
                let e_minus = Complex::new(c, -s);
                let e_plus = Complex::new(c, s);
                let (abit, bbit) = (1usize << a, 1usize << b);
                for (z, amp) in self.amps.iter_mut().enumerate() {
                    let aligned = (z & abit == 0) == (z & bbit == 0);
                    *amp = *amp * if aligned { e_minus } else { e_plus };
                }
            }
            GateOp::Ryy { a, b, angle } => {
                let word = PauliWord::two(a, PauliAxis::Y, b, PauliAxis::Y)?;
                self.apply_pauli_rotation(&word, angle)?;
            }
            GateOp::RyzPair { a, b, angle } => {
                let yz = PauliWord::two(a, PauliAxis::Y, b, PauliAxis::Z)?;
                let zy = PauliWord::two(a, PauliAxis::Z, b, PauliAxis::Y)?;
                self.apply_pauli_rotation(&yz, angle)?;
                self.apply_pauli_rotation(&zy, angle)?;
            }
        }
        Ok(())
    }

    /// `exp(-i angle P)` for a Pauli word `P`, computed exactly as
    /// `cos(angle) I - i sin(angle) P` on the state.
    pub fn apply_pauli_rotation(&mut self, word: &PauliWord, angle: T) -> Result<()> {
        if word.max_qubit() >= self.n_qubits {
            return Err(Error::ShapeMismatch(format!(
                "Pauli word {word} on {} qubits",
                self.n_qubits
            )));
        }
        let (flip, phase_mask, n_y) = word.masks();
        let (s, c) = angle.sin_cos();
        // -i * i^{n_y} cycles through {-i, 1, i, -1}; fold it into the
        // off-diagonal coefficient once.
        let minus_i_sin = Complex::new(T::zero(), -s) * i_power::<T>(n_y);
        let cos = Complex::new(c, T::zero());
        if flip == 0 {
            // Pure Z word: diagonal phases exp(-i angle (+/-1)).
            let e_minus = Complex::new(c, -s);
            let e_plus = Complex::new(c, s);
            for (z, amp) in self.amps.iter_mut().enumerate() {
                let neg = (z as u64 & phase_mask).count_ones() & 1 == 1;
                *amp = *amp * if neg { e_plus } else { e_minus };
            }
            return Ok(());
        }
        let pivot = (flip & flip.wrapping_neg()) as usize;
        let flip = flip as usize;
        for z in 0..self.amps.len() {
            if z & pivot != 0 {
                continue;
            }
            let zf = z ^ flip;
            let sign_z = parity_sign::<T>(z as u64 & phase_mask);
            let sign_zf = parity_sign::<T>(zf as u64 & phase_mask);
            let (a_z, a_zf) = (self.amps[z], self.amps[zf]);
            self.amps[z] = cos * a_z + minus_i_sin.scale(sign_zf) * a_zf;
            self.amps[zf] = cos * a_zf + minus_i_sin.scale(sign_z) * a_z;
        }
        Ok(())
    }

    /// Applies a bare Pauli word `P` (a unitary, not a rotation):
    /// `P|z> = i^{n_Y} (-1)^{popcount(z & (ymask|zmask))} |z ^ flipmask>`.
    pub fn apply_pauli_word(&mut self, word: &PauliWord) -> Result<()> {
        if word.max_qubit() >= self.n_qubits {
            return Err(Error::ShapeMismatch(format!(
                "Pauli word {word} on {} qubits",
                self.n_qubits
            )));
        }
        let (flip, phase_mask, n_y) = word.masks();
        let phase = i_power::<T>(n_y);
        if flip == 0 {
            for (z, amp) in self.amps.iter_mut().enumerate() {
                *amp = *amp * phase.scale(parity_sign::<T>(z as u64 & phase_mask));
            }
            return Ok(());
        }
        let pivot = (flip & flip.wrapping_neg()) as usize;
        let flip = flip as usize;
        for z in 0..self.amps.len() {
            if z & pivot != 0 {
                continue;
            }
            let zf = z ^ flip;
            let sign_z = parity_sign::<T>(z as u64 & phase_mask);
            let sign_zf = parity_sign::<T>(zf as u64 & phase_mask);
            let (a_z, a_zf) = (self.amps[z], self.amps[zf]);
            self.amps[z] = phase.scale(sign_zf) * a_zf;
            self.amps[zf] = phase.scale(sign_z) * a_z;
        }
        Ok(())
    }

    /// Applies a gate sequence left to right (index 0 acts first).
    pub fn apply_circuit(&mut self, gates: &[GateOp<T>]) -> Result<()> {
        for gate in gates {
            self.apply_gate(gate)?;
        }
        Ok(())
    }

    fn single_qubit(&mut self, q: usize, m: [[Complex<T>; 2]; 2]) {
        let bit = 1usize << q;
        for z in 0..self.amps.len() {
            if z & bit != 0 {
                continue;
            }
            let (a0, a1) = (self.amps[z], self.amps[z | bit]);
            self.amps[z] = m[0][0] * a0 + m[0][1] * a1;
            self.amps[z | bit] = m[1][0] * a0 + m[1][1] * a1;
        }
    }

    fn check_qubits(&self, qs: &[usize]) -> Result<()> {
        for &q in qs {
            if q >= self.n_qubits {
                return Err(Error::ShapeMismatch(format!(
                    "qubit {q} on a {}-qubit state",
                    self.n_qubits
                )));
            }
        }
        if qs.len() == 2 && qs[0] == qs[1] {
            return Err(Error::InvalidArgument(format!(
                "two-qubit gate with repeated qubit {}",
                qs[0]
            )));
        }
        Ok(())
    }
}

fn check_qubit_count(n_qubits: usize, max_qubits: usize) -> Result<()> {
    if n_qubits == 0 {
        return Err(Error::InvalidArgument("statevector needs at least 1 qubit".into()));
    }
    if n_qubits > max_qubits {
        return Err(Error::TooLarge {
            context: "statevector allocation",
            size: n_qubits,
            limit: max_qubits,
        });
    }
    Ok(())
}

/// `i^k` as a complex scalar.
pub(crate) fn i_power<T: Scalar>(k: u32) -> Complex<T> {
    match k % 4 {
        0 => Complex::new(T::one(), T::zero()),
        1 => Complex::new(T::zero(), T::one()),
        2 => Complex::new(-T::one(), T::zero()),
        _ => Complex::new(T::zero(), -T::one()),
    }
}

/// `(-1)^{popcount(bits)}` as a scalar.
#[inline]
pub(crate) fn parity_sign<T: Scalar>(bits: u64) -> T {
    if bits.count_ones() & 1 == 1 {
        -T::one()
    } else {
        T::one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() < tol
    }

    #[test]
    fn plus_state_amplitudes() {
        let s = Statevector::<f64>::plus_state(2).unwrap();
        for a in s.amplitudes() {
            assert!(close(*a, Complex64::new(0.5, 0.0), 1e-15));
        }
        assert!((s.norm() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn qubit_count_guards() {
        assert!(Statevector::<f64>::plus_state(0).is_err());
        assert!(Statevector::<f64>::plus_state(27).is_err());
        assert!(Statevector::<f64>::plus_state_limited(5, 4).is_err());
        assert!(Statevector::<f64>::plus_state_limited(4, 4).is_ok());
    }

    #[test]
    fn rzz_quarter_pi_on_plus_plus() {
        let mut s = Statevector::<f64>::plus_state(2).unwrap();
        let theta = std::f64::consts::FRAC_PI_4;
        s.apply_gate(&GateOp::Rzz { a: 0, b: 1, angle: theta }).unwrap();
        let e_m = Complex64::from_polar(0.5, -theta);
        let e_p = Complex64::from_polar(0.5, theta);
        let expect = [e_m, e_p, e_p, e_m];
        for (a, e) in s.amplitudes().iter().zip(expect) {
            assert!(close(*a, e, 1e-15));
        }
    }

    #[test]
    fn word_rotation_matches_named_gates() {
        let angles = [0.3, -1.1, 2.7];
        for &t in &angles {
            let mut a = Statevector::<f64>::plus_state(2).unwrap();
            a.apply_gate(&GateOp::Rx { q: 0, angle: 0.4 }).unwrap();
            let mut b = a.clone();

            a.apply_gate(&GateOp::Rzz { a: 0, b: 1, angle: t }).unwrap();
            b.apply_pauli_rotation(&PauliWord::two(0, PauliAxis::Z, 1, PauliAxis::Z).unwrap(), t)
                .unwrap();
            assert!((a.fidelity(&b).unwrap() - 1.0).abs() < 1e-14);
            for (x, y) in a.amplitudes().iter().zip(b.amplitudes()) {
                assert!(close(*x, *y, 1e-14));
            }
        }
    }

    #[test]
    fn x_rotation_on_zero_state() {
        let theta = 0.7f64;
        let mut s = Statevector::<f64>::basis_state(1, 0).unwrap();
        s.apply_pauli_rotation(&PauliWord::single(0, PauliAxis::X), theta).unwrap();
        assert!(close(s.amplitudes()[0], Complex64::new(theta.cos(), 0.0), 1e-15));
        assert!(close(s.amplitudes()[1], Complex64::new(0.0, -theta.sin()), 1e-15));

        // RX uses the half-angle convention, so RX(2θ) matches the word.
        let mut r = Statevector::<f64>::basis_state(1, 0).unwrap();
        r.apply_gate(&GateOp::Rx { q: 0, angle: 2.0 * theta }).unwrap();
        for (x, y) in r.amplitudes().iter().zip(s.amplitudes()) {
            assert!(close(*x, *y, 1e-15));
        }
    }

    #[test]
    fn hy_is_involution_and_maps_z_to_y() {
        let mut s = Statevector::<f64>::plus_state(1).unwrap();
        s.apply_gate(&GateOp::Ry { q: 0, angle: 0.37 }).unwrap();
        let original = s.clone();
        s.apply_gate(&GateOp::Hy { q: 0 }).unwrap();
        s.apply_gate(&GateOp::Hy { q: 0 }).unwrap();
        for (x, y) in s.amplitudes().iter().zip(original.amplitudes()) {
            assert!(close(*x, *y, 1e-15));
        }

        // HY RZ(θ) HY = RY(θ) as operators, with no global phase.
        let mut lhs = original.clone();
        lhs.apply_gate(&GateOp::Hy { q: 0 }).unwrap();
        lhs.apply_gate(&GateOp::Rz { q: 0, angle: 0.9 }).unwrap();
        lhs.apply_gate(&GateOp::Hy { q: 0 }).unwrap();
        let mut rhs = original;
        rhs.apply_gate(&GateOp::Ry { q: 0, angle: 0.9 }).unwrap();
        for (x, y) in lhs.amplitudes().iter().zip(rhs.amplitudes()) {
            assert!(close(*x, *y, 1e-15));
        }
    }

    #[test]
    fn cnot_truth_table() {
        for (input, expect) in [(0b00, 0b00), (0b01, 0b11), (0b10, 0b10), (0b11, 0b01)] {
            // Control is qubit 0 (low bit), target is qubit 1.
            let mut s = Statevector::<f64>::basis_state(2, input).unwrap();
            s.apply_gate(&GateOp::Cnot { control: 0, target: 1 }).unwrap();
            assert!(close(s.amplitudes()[expect], Complex64::new(1.0, 0.0), 1e-15));
        }
    }

    #[test]
    fn projector_overlap_on_plus_state() {
        let s = Statevector::<f64>::plus_state(2).unwrap();
        let p = s.projector_overlap(&[0, 3]);
        assert!((p - 0.5).abs() < 1e-15);
        assert!((s.projector_overlap(&[]) - 0.0).abs() < 1e-15);
    }

    #[test]
    fn rotations_preserve_norm_and_invert() {
        let word = PauliWord::new(&[(0, PauliAxis::Y), (2, PauliAxis::Z), (3, PauliAxis::X)])
            .unwrap();
        let mut s = Statevector::<f64>::plus_state(4).unwrap();
        s.apply_gate(&GateOp::Rz { q: 1, angle: 1.3 }).unwrap();
        let before = s.clone();
        s.apply_pauli_rotation(&word, 0.83).unwrap();
        assert!((s.norm() - 1.0).abs() < 1e-13);
        s.apply_pauli_rotation(&word, -0.83).unwrap();
        for (x, y) in s.amplitudes().iter().zip(before.amplitudes()) {
            assert!(close(*x, *y, 1e-13));
        }
    }

    #[test]
    fn gate_qubit_validation() {
        let mut s = Statevector::<f64>::plus_state(2).unwrap();
        assert!(s.apply_gate(&GateOp::Rx { q: 2, angle: 0.1 }).is_err());
        assert!(s.apply_gate(&GateOp::Cnot { control: 1, target: 1 }).is_err());
        let word = PauliWord::single(5, PauliAxis::Z);
        assert!(s.apply_pauli_rotation(&word, 0.1).is_err());
    }

    #[test]
    fn word_construction_rules() {
        assert!(PauliWord::new(&[]).is_err());
        assert!(PauliWord::new(&[(1, PauliAxis::X), (1, PauliAxis::Z)]).is_err());
        let w = PauliWord::new(&[(3, PauliAxis::Z), (0, PauliAxis::Y)]).unwrap();
        assert_eq!(format!("{w}"), "Y0 Z3");
    }

    #[test]
    fn gate_display_format() {
        assert_eq!(format!("{}", GateOp::<f64>::Cnot { control: 0, target: 1 }), "CNOT 0 1");
        assert_eq!(format!("{}", GateOp::Rz { q: 2, angle: 0.5f64 }), "RZ 2 0.5");
        assert_eq!(format!("{}", GateOp::<f64>::H { q: 3 }), "H 3");
    }
}
