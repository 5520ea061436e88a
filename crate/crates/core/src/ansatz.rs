//! Layered ansatz construction for QAOA and its counterdiabatic variants.
//!
//! One layer applies the cost block `exp(-i α_l H_f)`, then the mixer block
//! `exp(-i β_l H_i)`, then (for the `Dc*` families) a counterdiabatic block
//! `exp(-i γ_l H_cd)`. Parameters are laid out `[α | β | γ]`, each block of
//! length `layers`.
//!
//! Counterdiabatic generators per family, summed over edges `(u, v)` with
//! weight `w` or qubits `q`:
//! - `DcNc`: `Σ w (Y_u Z_v + Z_u Y_v)`, 4 extra CNOTs per edge.
//! - `DcYy`: `Σ w Y_u Y_v`, 2 extra CNOTs per edge.
//! - `DcY`: `Σ Y_q`, no extra CNOTs.
//!
//! Edge weights scale the cost block and both two-qubit cd generators (the
//! commutator of mixer and cost picks up the coupling, so the weighted form
//! reduces to the unweighted one at `w = 1`).

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::circuit::{ParamCircuit, ParamTerm};
use crate::error::{Error, Result};
use crate::graphs::Graph;
use crate::rng::stream_rng;
use crate::scalar::{cast, Scalar};
use crate::statevector::{GateOp, PauliAxis, PauliWord, Statevector};

/// Ansatz family selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AnsatzFamily {
    /// Cost plus mixer blocks only; 2 parameters per layer.
    Qaoa,
    /// Two-spin `YZ + ZY` counterdiabatic block; 3 parameters per layer.
    DcNc,
    /// Two-spin `YY` counterdiabatic block; 3 parameters per layer.
    DcYy,
    /// Single-spin `Y` counterdiabatic block; 3 parameters per layer.
    DcY,
}

impl AnsatzFamily {
    pub const ALL: [AnsatzFamily; 4] =
        [AnsatzFamily::Qaoa, AnsatzFamily::DcNc, AnsatzFamily::DcYy, AnsatzFamily::DcY];

    pub fn name(&self) -> &'static str {
        match self {
            AnsatzFamily::Qaoa => "qaoa",
            AnsatzFamily::DcNc => "dc-nc",
            AnsatzFamily::DcYy => "dc-yy",
            AnsatzFamily::DcY => "dc-y",
        }
    }

    pub fn has_cd_block(&self) -> bool {
        !matches!(self, AnsatzFamily::Qaoa)
    }

    pub fn params_per_layer(&self) -> usize {
        if self.has_cd_block() {
            3
        } else {
            2
        }
    }

    /// CNOTs per layer divided by the edge count: the cost block costs 2
    /// per edge, and the cd block adds 4 (`DcNc`), 2 (`DcYy`), or 0 (`DcY`).
    pub fn cnot_factor(&self) -> usize {
        match self {
            AnsatzFamily::Qaoa | AnsatzFamily::DcY => 2,
            AnsatzFamily::DcNc => 6,
            AnsatzFamily::DcYy => 4,
        }
    }
}

impl fmt::Display for AnsatzFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

impl FromStr for AnsatzFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "qaoa" => Ok(AnsatzFamily::Qaoa),
            "dc-nc" | "nc" => Ok(AnsatzFamily::DcNc),
            "dc-yy" | "yy" => Ok(AnsatzFamily::DcYy),
            "dc-y" | "y" => Ok(AnsatzFamily::DcY),
            other => Err(Error::Parse(format!(
                "unknown ansatz family {other:?} (expected qaoa, dc-nc, dc-yy, dc-y)"
            ))),
        }
    }
}

/// Parameter vector `[α_1..α_p | β_1..β_p | γ_1..γ_p]` tagged with its
/// family and layer count so layout mismatches are detectable.
#[derive(Debug, Clone, PartialEq)]
pub struct ParameterVector<T: Scalar = f64> {
    family: AnsatzFamily,
    layers: usize,
    values: Vec<T>,
}

#[derive(Serialize, Deserialize)]
struct ParameterVectorJson {
    family: AnsatzFamily,
    layers: usize,
    values: Vec<f64>,
}

impl<T: Scalar> ParameterVector<T> {
    pub fn new(family: AnsatzFamily, layers: usize, values: Vec<T>) -> Result<Self> {
        if layers == 0 {
            return Err(Error::InvalidArgument("layer count must be at least 1".into()));
        }
        let expect = family.params_per_layer() * layers;
        if values.len() != expect {
            return Err(Error::ShapeMismatch(format!(
                "{} values for {} with {} layers (expected {})",
                values.len(),
                family,
                layers,
                expect
            )));
        }
        Ok(Self { family, layers, values })
    }

    pub fn zeros(family: AnsatzFamily, layers: usize) -> Result<Self> {
        Self::new(family, layers, vec![T::zero(); family.params_per_layer() * layers])
    }

    /// Every entry drawn uniformly from `[-π, π)`, in index order, from a
    /// derived stream of the given seed.
    pub fn random_uniform(family: AnsatzFamily, layers: usize, seed: u64) -> Result<Self> {
        use rand::Rng;
        let mut rng = stream_rng(seed, 0);
        let n = family.params_per_layer() * layers;
        let values = (0..n)
            .map(|_| cast::<T>(rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI)))
            .collect();
        Self::new(family, layers, values)
    }

    pub fn family(&self) -> AnsatzFamily {
        self.family
    }

    pub fn layers(&self) -> usize {
        self.layers
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [T] {
        &mut self.values
    }

    /// Cost-block angles `α`.
    pub fn alphas(&self) -> &[T] {
        &self.values[..self.layers]
    }

    /// Mixer-block angles `β`.
    pub fn betas(&self) -> &[T] {
        &self.values[self.layers..2 * self.layers]
    }

    /// Counterdiabatic angles `γ`, absent for plain QAOA.
    pub fn gammas(&self) -> Option<&[T]> {
        if self.family.has_cd_block() {
            Some(&self.values[2 * self.layers..])
        } else {
            None
        }
    }

    /// Copy with every `γ` forced to zero; `α` and `β` are untouched.
    pub fn with_zeroed_cd(&self) -> Self {
        let mut out = self.clone();
        if self.family.has_cd_block() {
            for v in &mut out.values[2 * self.layers..] {
                *v = T::zero();
            }
        }
        out
    }

    pub fn to_json(&self) -> String {
        let mirror = ParameterVectorJson {
            family: self.family,
            layers: self.layers,
            values: self.values.iter().map(|v| v.to_f64().expect("scalar to f64")).collect(),
        };
        serde_json::to_string_pretty(&mirror).expect("parameter serialization cannot fail")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let mirror: ParameterVectorJson =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("parameters: {e}")))?;
        Self::new(
            mirror.family,
            mirror.layers,
            mirror.values.into_iter().map(|v| cast::<T>(v)).collect(),
        )
    }
}

/// Gate totals for one ansatz configuration, from closed forms.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GateCountReport {
    pub family: AnsatzFamily,
    pub layers: usize,
    pub n_qubits: usize,
    pub n_edges: usize,
    pub cnot_per_layer: usize,
    pub cnot_total: usize,
    pub single_qubit_per_layer: usize,
    pub single_qubit_total: usize,
}

/// Full ansatz configuration: family, depth, problem graph, mixer fields.
#[derive(Debug, Clone, PartialEq)]
pub struct AnsatzSpec {
    family: AnsatzFamily,
    layers: usize,
    graph: Graph,
    mixer_fields: Vec<f64>,
}

impl AnsatzSpec {
    pub fn new(family: AnsatzFamily, layers: usize, graph: Graph) -> Result<Self> {
        if layers == 0 {
            return Err(Error::InvalidArgument("layer count must be at least 1".into()));
        }
        let mixer_fields = vec![1.0; graph.n_vertices()];
        Ok(Self { family, layers, graph, mixer_fields })
    }

    /// Overrides the uniform mixer fields.
    pub fn with_mixer_fields(mut self, fields: Vec<f64>) -> Result<Self> {
        if fields.len() != self.graph.n_vertices() {
            return Err(Error::ShapeMismatch(format!(
                "{} mixer fields for {} vertices",
                fields.len(),
                self.graph.n_vertices()
            )));
        }
        if fields.iter().any(|f| !f.is_finite()) {
            return Err(Error::InvalidArgument("non-finite mixer field".into()));
        }
        self.mixer_fields = fields;
        Ok(self)
    }

    pub fn family(&self) -> AnsatzFamily {
        self.family
    }

    pub fn layers(&self) -> usize {
        self.layers
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn n_qubits(&self) -> usize {
        self.graph.n_vertices()
    }

    pub fn param_count(&self) -> usize {
        self.family.params_per_layer() * self.layers
    }

    /// CNOT-level gate list implementing the full circuit, with no global
    /// phase relative to the rotation-product form.
    ///
    /// Per layer: each edge compiles to `CNOT, RZ(2αw), CNOT`; the mixer to
    /// `RX(2βh)` per qubit; the cd block to `HY`-conjugated `CNOT, RZ, CNOT`
    /// sandwiches (`DcNc`, `DcYy`) or `RY(2γ)` rotations (`DcY`).
    pub fn build_circuit<T: Scalar>(&self, params: &ParameterVector<T>) -> Result<Vec<GateOp<T>>> {
        self.check_layout(params)?;
        let p = self.layers;
        let values = params.values();
        let two = cast::<T>(2.0);
        let mut gates = Vec::with_capacity(self.count_gates().cnot_total * 2);
        for l in 0..p {
            let alpha = values[l];
            let beta = values[p + l];
            for &(u, v, w) in self.graph.edges() {
                let angle = two * alpha * cast::<T>(w);
                gates.push(GateOp::Cnot { control: u, target: v });
                gates.push(GateOp::Rz { q: v, angle });
                gates.push(GateOp::Cnot { control: u, target: v });
            }
            for (q, &h) in self.mixer_fields.iter().enumerate() {
                gates.push(GateOp::Rx { q, angle: two * beta * cast::<T>(h) });
            }
            if self.family.has_cd_block() {
                let gamma = values[2 * p + l];
                match self.family {
                    AnsatzFamily::DcNc => {
                        for &(u, v, w) in self.graph.edges() {
                            let angle = two * gamma * cast::<T>(w);
                            // exp(-i γw Y_u Z_v) then exp(-i γw Z_u Y_v).
                            gates.push(GateOp::Hy { q: u });
                            gates.push(GateOp::Cnot { control: u, target: v });
                            gates.push(GateOp::Rz { q: v, angle });
                            gates.push(GateOp::Cnot { control: u, target: v });
                            gates.push(GateOp::Hy { q: u });
                            gates.push(GateOp::Hy { q: v });
                            gates.push(GateOp::Cnot { control: u, target: v });
                            gates.push(GateOp::Rz { q: v, angle });
                            gates.push(GateOp::Cnot { control: u, target: v });
                            gates.push(GateOp::Hy { q: v });
                        }
                    }
                    AnsatzFamily::DcYy => {
                        for &(u, v, w) in self.graph.edges() {
                            let angle = two * gamma * cast::<T>(w);
                            gates.push(GateOp::Hy { q: u });
                            gates.push(GateOp::Hy { q: v });
                            gates.push(GateOp::Cnot { control: u, target: v });
                            gates.push(GateOp::Rz { q: v, angle });
                            gates.push(GateOp::Cnot { control: u, target: v });
                            gates.push(GateOp::Hy { q: v });
                            gates.push(GateOp::Hy { q: u });
                        }
                    }
                    AnsatzFamily::DcY => {
                        for q in 0..self.graph.n_vertices() {
                            gates.push(GateOp::Ry { q, angle: two * gamma });
                        }
                    }
                    AnsatzFamily::Qaoa => unreachable!(),
                }
            }
        }
        Ok(gates)
    }

    /// The same circuit as an ordered product of Pauli-word rotations,
    /// suitable for exact gradients and Fisher matrices.
    pub fn param_circuit<T: Scalar>(&self) -> Result<ParamCircuit<T>> {
        let p = self.layers;
        let mut terms = Vec::new();
        for l in 0..p {
            for &(u, v, w) in self.graph.edges() {
                terms.push(ParamTerm {
                    word: PauliWord::two(u, PauliAxis::Z, v, PauliAxis::Z)?,
                    param_index: l,
                    coeff: cast::<T>(w),
                });
            }
            for (q, &h) in self.mixer_fields.iter().enumerate() {
                terms.push(ParamTerm {
                    word: PauliWord::single(q, PauliAxis::X),
                    param_index: p + l,
                    coeff: cast::<T>(h),
                });
            }
            match self.family {
                AnsatzFamily::Qaoa => {}
                AnsatzFamily::DcNc => {
                    for &(u, v, w) in self.graph.edges() {
                        terms.push(ParamTerm {
                            word: PauliWord::two(u, PauliAxis::Y, v, PauliAxis::Z)?,
                            param_index: 2 * p + l,
                            coeff: cast::<T>(w),
                        });
                        terms.push(ParamTerm {
                            word: PauliWord::two(u, PauliAxis::Z, v, PauliAxis::Y)?,
                            param_index: 2 * p + l,
                            coeff: cast::<T>(w),
                        });
                    }
                }
                AnsatzFamily::DcYy => {
                    for &(u, v, w) in self.graph.edges() {
                        terms.push(ParamTerm {
                            word: PauliWord::two(u, PauliAxis::Y, v, PauliAxis::Y)?,
                            param_index: 2 * p + l,
                            coeff: cast::<T>(w),
                        });
                    }
                }
                AnsatzFamily::DcY => {
                    for q in 0..self.graph.n_vertices() {
                        terms.push(ParamTerm {
                            word: PauliWord::single(q, PauliAxis::Y),
                            param_index: 2 * p + l,
                            coeff: T::one(),
                        });
                    }
                }
            }
        }
        ParamCircuit::new(self.graph.n_vertices(), self.param_count(), terms)
    }

    /// Runs the CNOT-level circuit on `|+⟩^{⊗n}`.
    pub fn run<T: Scalar>(&self, params: &ParameterVector<T>) -> Result<Statevector<T>> {
        let gates = self.build_circuit(params)?;
        let mut state = Statevector::plus_state(self.n_qubits())?;
        state.apply_circuit(&gates)?;
        Ok(state)
    }

    /// Runs the rotation-product form on `|+⟩^{⊗n}`; agrees with
    /// [`AnsatzSpec::run`] to floating-point accuracy, including phase.
    pub fn run_rotations<T: Scalar>(&self, params: &ParameterVector<T>) -> Result<Statevector<T>> {
        self.check_layout(params)?;
        let circuit = self.param_circuit::<T>()?;
        let init = Statevector::plus_state(self.n_qubits())?;
        circuit.run_from(&init, params.values())
    }

    /// Closed-form gate totals; matches a literal scan of
    /// [`AnsatzSpec::build_circuit`].
    pub fn count_gates(&self) -> GateCountReport {
        let m = self.graph.n_edges();
        let n = self.graph.n_vertices();
        let cnot_per_layer = self.family.cnot_factor() * m;
        let single_qubit_per_layer = match self.family {
            AnsatzFamily::Qaoa => m + n,
            AnsatzFamily::DcNc => 7 * m + n,
            AnsatzFamily::DcYy => 6 * m + n,
            AnsatzFamily::DcY => m + 2 * n,
        };
        GateCountReport {
            family: self.family,
            layers: self.layers,
            n_qubits: n,
            n_edges: m,
            cnot_per_layer,
            cnot_total: cnot_per_layer * self.layers,
            single_qubit_per_layer,
            single_qubit_total: single_qubit_per_layer * self.layers,
        }
    }

    pub fn check_layout<T: Scalar>(&self, params: &ParameterVector<T>) -> Result<()> {
        // The vector's constructor ties its length to (family, layers), so
        // matching those two fields is a full layout check.
        if params.family() != self.family || params.layers() != self.layers {
            return Err(Error::ShapeMismatch(format!(
                "parameters for {} with {} layers used on {} with {} layers",
                params.family(),
                params.layers(),
                self.family,
                self.layers
            )));
        }
        Ok(())
    }
}

/// Layer count for `target` that spends exactly the same CNOT budget as
/// `layers` of `reference` on the same graph. Errors when the budget does
/// not divide evenly.
pub fn matched_cnot_layers(
    reference: AnsatzFamily,
    layers: usize,
    target: AnsatzFamily,
) -> Result<usize> {
    if layers == 0 {
        return Err(Error::InvalidArgument("layer count must be at least 1".into()));
    }
    let budget = reference.cnot_factor() * layers;
    if budget % target.cnot_factor() != 0 || budget < target.cnot_factor() {
        return Err(Error::InvalidArgument(format!(
            "CNOT budget {budget} from {layers} {reference} layers does not form whole {target} layers"
        )));
    }
    Ok(budget / target.cnot_factor())
}

/// Renders a gate list in the one-gate-per-line `KIND q0 [q1] [angle]`
/// format.
pub fn format_circuit<T: Scalar>(gates: &[GateOp<T>]) -> String {
    let mut out = String::new();
    for g in gates {
        out.push_str(&g.to_string());
        out.push('\n');
    }
    out
}

/// Parses the [`format_circuit`] output.
pub fn parse_circuit<T: Scalar>(text: &str) -> Result<Vec<GateOp<T>>> {
    let mut gates = Vec::new();
    for line in text.lines().map(str::trim) {
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        let qubit = |i: usize| -> Result<usize> {
            toks.get(i)
                .ok_or_else(|| Error::Parse(format!("truncated gate line {line:?}")))?
                .parse()
                .map_err(|e| Error::Parse(format!("gate qubit in {line:?}: {e}")))
        };
        let angle = |i: usize| -> Result<T> {
            let raw: f64 = toks
                .get(i)
                .ok_or_else(|| Error::Parse(format!("truncated gate line {line:?}")))?
                .parse()
                .map_err(|e| Error::Parse(format!("gate angle in {line:?}: {e}")))?;
            Ok(cast::<T>(raw))
        };
        let gate = match toks[0] {
            "RX" => GateOp::Rx { q: qubit(1)?, angle: angle(2)? },
            "RY" => GateOp::Ry { q: qubit(1)?, angle: angle(2)? },
            "RZ" => GateOp::Rz { q: qubit(1)?, angle: angle(2)? },
            "H" => GateOp::H { q: qubit(1)? },
            "HY" => GateOp::Hy { q: qubit(1)? },
            "CNOT" => GateOp::Cnot { control: qubit(1)?, target: qubit(2)? },
            "RZZ" => GateOp::Rzz { a: qubit(1)?, b: qubit(2)?, angle: angle(3)? },
            "RYY" => GateOp::Ryy { a: qubit(1)?, b: qubit(2)?, angle: angle(3)? },
            "RYZPAIR" => GateOp::RyzPair { a: qubit(1)?, b: qubit(2)?, angle: angle(3)? },
            other => return Err(Error::Parse(format!("unknown gate kind {other:?}"))),
        };
        gates.push(gate);
    }
    Ok(gates)
}
