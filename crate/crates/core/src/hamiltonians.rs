//! Problem and mixer Hamiltonians.
//!
//! The cost Hamiltonian is diagonal in the computational basis:
//! `H_f = Σ_{(u,v) in E} w_uv Z_u Z_v`, with spin `s_q = +1` for bit 0 and
//! `-1` for bit 1 of the basis index. For an unweighted graph this ties the
//! spectrum to cut sizes through `E(z) = M - 2 C(z)`.

use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graphs::Graph;
use crate::rng::stream_rng;
use crate::scalar::{cast, Scalar};
use crate::statevector::{Statevector, DEFAULT_MAX_QUBITS};

/// Diagonal cost Hamiltonian with its precomputed ground set.
#[derive(Debug, Clone, PartialEq)]
pub struct DiagonalHamiltonian<T: Scalar = f64> {
    n_qubits: usize,
    diagonal: Vec<T>,
    ground_energy: T,
    ground_indices: Vec<usize>,
}

impl<T: Scalar> DiagonalHamiltonian<T> {
    /// Wraps an explicit diagonal; the ground set is every index attaining
    /// the exact minimum.
    pub fn from_diagonal(n_qubits: usize, diagonal: Vec<T>) -> Result<Self> {
        if n_qubits == 0 || n_qubits > DEFAULT_MAX_QUBITS {
            return Err(Error::InvalidArgument(format!(
                "diagonal Hamiltonian qubit count {n_qubits} outside 1..={DEFAULT_MAX_QUBITS}"
            )));
        }
        if diagonal.len() != 1usize << n_qubits {
            return Err(Error::ShapeMismatch(format!(
                "diagonal length {} for {} qubits",
                diagonal.len(),
                n_qubits
            )));
        }
        if diagonal.iter().any(|d| !d.is_finite()) {
            return Err(Error::InvalidArgument("non-finite diagonal entry".into()));
        }
        let mut ground_energy = diagonal[0];
        for &d in &diagonal[1..] {
            if d < ground_energy {
                ground_energy = d;
            }
        }
        let ground_indices: Vec<usize> = diagonal
            .iter()
            .enumerate()
            .filter(|&(_, &d)| d == ground_energy)
            .map(|(i, _)| i)
            .collect();
        Ok(Self { n_qubits, diagonal, ground_energy, ground_indices })
    }

    /// `Σ w_uv Z_u Z_v` for the given graph.
    pub fn maxcut(graph: &Graph) -> Result<Self> {
        let n = graph.n_vertices();
        if n > DEFAULT_MAX_QUBITS {
            return Err(Error::TooLarge {
                context: "MaxCut Hamiltonian diagonal",
                size: n,
                limit: DEFAULT_MAX_QUBITS,
            });
        }
        let dim = 1usize << n;
        let mut diagonal = vec![T::zero(); dim];
        for &(u, v, w) in graph.edges() {
            let wt = cast::<T>(w);
            for (z, d) in diagonal.iter_mut().enumerate() {
                if (z >> u ^ z >> v) & 1 == 1 {
                    *d -= wt;
                } else {
                    *d += wt;
                }
            }
        }
        Self::from_diagonal(n, diagonal)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn diagonal(&self) -> &[T] {
        &self.diagonal
    }

    pub fn ground_energy(&self) -> T {
        self.ground_energy
    }

    /// Basis indices attaining the ground energy, ascending.
    pub fn ground_indices(&self) -> &[usize] {
        &self.ground_indices
    }

    /// `⟨ψ|H|ψ⟩`.
    pub fn cost_expectation(&self, state: &Statevector<T>) -> Result<T> {
        self.check_state(state)?;
        Ok(state
            .amplitudes()
            .iter()
            .zip(&self.diagonal)
            .map(|(a, &d)| a.norm_sqr() * d)
            .fold(T::zero(), |acc, x| acc + x))
    }

    /// Probability mass on the ground subspace. Degenerate ground spaces
    /// (for MaxCut always at least the global-flip pair) count in full.
    pub fn fidelity_to_ground(&self, state: &Statevector<T>) -> Result<T> {
        self.check_state(state)?;
        Ok(state.projector_overlap(&self.ground_indices))
    }

    /// 0/1 diagonal of the ground-space projector, usable as a training
    /// observable.
    pub fn ground_projector_diagonal(&self) -> Vec<T> {
        let mut diag = vec![T::zero(); self.diagonal.len()];
        for &i in &self.ground_indices {
            diag[i] = T::one();
        }
        diag
    }

    fn check_state(&self, state: &Statevector<T>) -> Result<()> {
        if state.n_qubits() != self.n_qubits {
            return Err(Error::ShapeMismatch(format!(
                "state has {} qubits, Hamiltonian has {}",
                state.n_qubits(),
                self.n_qubits
            )));
        }
        Ok(())
    }
}

/// Expected cut weight divided by the maximum cut weight.
///
/// The expected cut is recovered from the cost expectation through
/// `C = (W_total - E) / 2`. Errors if the maximum cut is not strictly
/// positive (the ratio is then meaningless).
pub fn approximation_ratio<T: Scalar>(
    hamiltonian: &DiagonalHamiltonian<T>,
    state: &Statevector<T>,
    graph: &Graph,
) -> Result<T> {
    let max_cut = graph.brute_force_maxcut()?.cut_value;
    approximation_ratio_with_max(hamiltonian, state, graph.total_weight(), max_cut)
}

/// [`approximation_ratio`] with the exhaustive MaxCut precomputed, for use
/// inside training loops.
pub fn approximation_ratio_with_max<T: Scalar>(
    hamiltonian: &DiagonalHamiltonian<T>,
    state: &Statevector<T>,
    total_weight: f64,
    max_cut: f64,
) -> Result<T> {
    if max_cut <= 0.0 {
        return Err(Error::InvalidInstance(format!(
            "approximation ratio undefined for maximum cut {max_cut}"
        )));
    }
    let energy = hamiltonian.cost_expectation(state)?;
    let expected_cut = (cast::<T>(total_weight) - energy) * cast::<T>(0.5);
    Ok(expected_cut / cast::<T>(max_cut))
}

/// Transverse-field mixer `H_i = Σ_q h_q X_q`.
#[derive(Debug, Clone, PartialEq)]
pub struct MixerHamiltonian<T: Scalar = f64> {
    field_weights: Vec<T>,
}

impl<T: Scalar> MixerHamiltonian<T> {
    /// Uniform fields `h_q = 1`, whose ground state is `|+⟩^{⊗n}`.
    pub fn uniform(n_qubits: usize) -> Self {
        Self { field_weights: vec![T::one(); n_qubits] }
    }

    pub fn new(field_weights: Vec<T>) -> Result<Self> {
        if field_weights.is_empty() {
            return Err(Error::InvalidInstance("mixer needs at least one qubit".into()));
        }
        if field_weights.iter().any(|w| !w.is_finite()) {
            return Err(Error::InvalidArgument("non-finite mixer field".into()));
        }
        Ok(Self { field_weights })
    }

    pub fn n_qubits(&self) -> usize {
        self.field_weights.len()
    }

    pub fn field_weights(&self) -> &[T] {
        &self.field_weights
    }
}

/// Sherrington-Kirkpatrick instance: all-to-all standard normal couplings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SkInstance {
    n: usize,
    /// `(i, j, J_ij)` with `i < j`, lexicographic, one entry per pair.
    couplings: Vec<(usize, usize, f64)>,
}

impl SkInstance {
    /// Draws `J_ij ~ N(0, 1)` for every pair in fixed lexicographic order,
    /// so the instance is a pure function of `(n, seed)`.
    pub fn generate(n: usize, seed: u64) -> Result<Self> {
        if n < 2 || n > DEFAULT_MAX_QUBITS {
            return Err(Error::InvalidArgument(format!(
                "SK size {n} outside 2..={DEFAULT_MAX_QUBITS}"
            )));
        }
        let mut rng = stream_rng(seed, 0);
        let mut couplings = Vec::with_capacity(n * (n - 1) / 2);
        for i in 0..n {
            for j in i + 1..n {
                let j_ij: f64 = rng.sample(StandardNormal);
                couplings.push((i, j, j_ij));
            }
        }
        Ok(Self { n, couplings })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn couplings(&self) -> &[(usize, usize, f64)] {
        &self.couplings
    }

    /// Weighted complete graph carrying the couplings; pairs with an
    /// exactly zero draw (measure zero) are dropped to respect the graph's
    /// nonzero-weight rule.
    pub fn to_graph(&self) -> Result<Graph> {
        let edges: Vec<_> =
            self.couplings.iter().copied().filter(|&(_, _, w)| w != 0.0).collect();
        Graph::new(self.n, &edges)
    }

    /// `H = Σ_{i<j} J_ij Z_i Z_j` over the coupling list.
    pub fn hamiltonian<T: Scalar>(&self) -> Result<DiagonalHamiltonian<T>> {
        let dim = 1usize << self.n;
        let mut diagonal = vec![T::zero(); dim];
        for &(i, j, w) in &self.couplings {
            let wt = cast::<T>(w);
            for (z, d) in diagonal.iter_mut().enumerate() {
                if (z >> i ^ z >> j) & 1 == 1 {
                    *d -= wt;
                } else {
                    *d += wt;
                }
            }
        }
        DiagonalHamiltonian::from_diagonal(self.n, diagonal)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("SK serialization cannot fail")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: SkInstance =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("SK json: {e}")))?;
        if raw.n < 2 {
            return Err(Error::InvalidInstance("SK instance needs at least 2 spins".into()));
        }
        for &(i, j, w) in &raw.couplings {
            if i >= j || j >= raw.n || !w.is_finite() {
                return Err(Error::InvalidInstance(format!(
                    "bad SK coupling ({i}, {j}, {w})"
                )));
            }
        }
        Ok(raw)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k2_spectrum_and_ground() {
        let g = Graph::complete(2).unwrap();
        let h = DiagonalHamiltonian::<f64>::maxcut(&g).unwrap();
        assert_eq!(h.diagonal(), &[1.0, -1.0, -1.0, 1.0]);
        assert_eq!(h.ground_energy(), -1.0);
        assert_eq!(h.ground_indices(), &[1, 2]);
    }

    #[test]
    fn ground_energy_matches_cut_identity() {
        for seed in 0..10 {
            let g = Graph::random(7, 0.6, seed).unwrap();
            let h = DiagonalHamiltonian::<f64>::maxcut(&g).unwrap();
            let cut = g.brute_force_maxcut().unwrap();
            let m = g.n_edges() as f64;
            assert_eq!(h.ground_energy(), m - 2.0 * cut.cut_value);
            // Per-state identity E(z) = M - 2 C(z), exact in integers.
            for z in 0..(1usize << 7) {
                assert_eq!(h.diagonal()[z], m - 2.0 * g.cut_value(z as u64));
            }
        }
    }

    #[test]
    fn plus_state_statistics() {
        let g = Graph::complete(2).unwrap();
        let h = DiagonalHamiltonian::<f64>::maxcut(&g).unwrap();
        let s = Statevector::plus_state(2).unwrap();
        assert!((h.cost_expectation(&s).unwrap()).abs() < 1e-15);
        assert!((h.fidelity_to_ground(&s).unwrap() - 0.5).abs() < 1e-15);
        let r = approximation_ratio(&h, &s, &g).unwrap();
        assert!((r - 0.5).abs() < 1e-15);
    }

    #[test]
    fn ratio_rejects_nonpositive_maxcut() {
        let g = Graph::new(2, &[(0, 1, -1.0)]).unwrap();
        let h = DiagonalHamiltonian::<f64>::maxcut(&g).unwrap();
        let s = Statevector::plus_state(2).unwrap();
        assert!(approximation_ratio(&h, &s, &g).is_err());
    }

    #[test]
    fn sk_instance_is_deterministic_and_flip_symmetric() {
        let a = SkInstance::generate(6, 11).unwrap();
        let b = SkInstance::generate(6, 11).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, SkInstance::generate(6, 12).unwrap());
        assert_eq!(a.couplings().len(), 15);

        let h = a.hamiltonian::<f64>().unwrap();
        let dim = 1usize << 6;
        for z in 0..dim {
            // Global spin flip preserves every J s_i s_j term exactly.
            assert_eq!(h.diagonal()[z], h.diagonal()[!z & (dim - 1)]);
        }
        assert!(h.ground_indices().len() >= 2);
    }

    #[test]
    fn sk_json_round_trip() {
        let a = SkInstance::generate(5, 3).unwrap();
        let b = SkInstance::from_json(&a.to_json()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn degenerate_diagonal_collects_all_minima() {
        let h = DiagonalHamiltonian::from_diagonal(2, vec![0.0, -2.0, -2.0, 1.0]).unwrap();
        assert_eq!(h.ground_indices(), &[1, 2]);
        let diag = h.ground_projector_diagonal();
        assert_eq!(diag, vec![0.0, 1.0, 1.0, 0.0]);
    }

    #[test]
    fn mixer_defaults() {
        let m = MixerHamiltonian::<f64>::uniform(3);
        assert_eq!(m.field_weights(), &[1.0, 1.0, 1.0]);
        assert!(MixerHamiltonian::<f64>::new(vec![]).is_err());
    }
}
