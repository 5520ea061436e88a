//! Trainability and scaling analysis: quantum Fisher information and
//! effective dimension, coherent-error suppression deltas, logistic and
//! linear fits for depth scaling, crossover solving, and parameter
//! concentration measures.

use nalgebra::{DMatrix, Matrix3, Vector3};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::ansatz::{AnsatzSpec, ParameterVector};
use crate::circuit::ParamCircuit;
use crate::error::{Error, Result};
use crate::graphs::Graph;
use crate::hamiltonians::{approximation_ratio_with_max, DiagonalHamiltonian};
use crate::rng::{derive_seed, stream_rng};
use crate::scalar::Scalar;
use crate::statevector::Statevector;

/// Relative eigenvalue threshold below which a QFI direction counts as
/// flat.
const QFI_RANK_TOL: f64 = 1e-10;

/// Quantum Fisher information matrix of a parameterized state, with the
/// convention `F_ij = Re(<d_i psi|d_j psi> - <d_i psi|psi><psi|d_j psi>)`
/// (no extra factor of four).
#[derive(Debug, Clone, PartialEq)]
pub struct QfiMatrix {
    matrix: DMatrix<f64>,
}

impl QfiMatrix {
    pub fn n_params(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn entry(&self, i: usize, j: usize) -> f64 {
        self.matrix[(i, j)]
    }

    /// Eigenvalues in descending order.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let mut eigs: Vec<f64> = self
            .matrix
            .clone()
            .symmetric_eigen()
            .eigenvalues
            .iter()
            .copied()
            .collect();
        eigs.sort_by(|a, b| b.partial_cmp(a).expect("finite eigenvalues"));
        eigs
    }

    /// Number of eigenvalues above `1e-10 * max(1, largest eigenvalue)`:
    /// the count of locally independent directions at this point.
    pub fn effective_rank(&self) -> usize {
        let eigs = self.eigenvalues();
        let largest = eigs.first().copied().unwrap_or(0.0);
        let threshold = QFI_RANK_TOL * largest.max(1.0);
        eigs.iter().filter(|&&e| e > threshold).count()
    }
}

/// QFI of a rotation-product circuit at a parameter point, from an
/// arbitrary initial state.
pub fn qfi_of_circuit<T: Scalar>(
    circuit: &ParamCircuit<T>,
    init: &Statevector<T>,
    params: &[T],
) -> Result<QfiMatrix> {
    let (psi, derivs) = circuit.derivative_states(init, params)?;
    let d = derivs.len();
    let mut matrix = DMatrix::<f64>::zeros(d, d);
    let mut overlaps = Vec::with_capacity(d);
    for deriv in &derivs {
        overlaps.push(deriv.inner_product(&psi)?);
    }
    for i in 0..d {
        for j in i..d {
            let dot = derivs[i].inner_product(&derivs[j])?;
            let correction = overlaps[i] * overlaps[j].conj();
            let value = (dot - correction).re.to_f64().expect("QFI entry to f64");
            matrix[(i, j)] = value;
            matrix[(j, i)] = value;
        }
    }
    Ok(QfiMatrix { matrix })
}

/// QFI of an ansatz at a parameter point, starting from `|+>^n`.
pub fn qfi_matrix<T: Scalar>(
    spec: &AnsatzSpec,
    params: &ParameterVector<T>,
) -> Result<QfiMatrix> {
    spec.check_layout(params)?;
    let circuit = spec.param_circuit::<T>()?;
    let init = Statevector::plus_state(spec.n_qubits())?;
    qfi_of_circuit(&circuit, &init, params.values())
}

/// Monte-Carlo effective dimension: mean QFI rank over parameter points
/// drawn uniformly from `[-pi, pi)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EffectiveDimension {
    pub mean_rank: f64,
    pub ranks: Vec<usize>,
    pub n_params: usize,
    /// `min(n_params, 2^(n+1) - 2)`: parameter count capped by the real
    /// dimension of the pure-state manifold.
    pub rank_bound: usize,
}

pub fn effective_dimension<T: Scalar>(
    spec: &AnsatzSpec,
    n_samples: usize,
    seed: u64,
) -> Result<EffectiveDimension> {
    if n_samples == 0 {
        return Err(Error::InvalidArgument("need at least one sample".into()));
    }
    let circuit = spec.param_circuit::<T>()?;
    let init = Statevector::<T>::plus_state(spec.n_qubits())?;
    let n_params = spec.param_count();
    let mut ranks = Vec::with_capacity(n_samples);
    for sample in 0..n_samples {
        let point = ParameterVector::<T>::random_uniform(
            spec.family(),
            spec.layers(),
            derive_seed(seed, sample as u64),
        )?;
        let qfi = qfi_of_circuit(&circuit, &init, point.values())?;
        ranks.push(qfi.effective_rank());
    }
    let mean_rank = ranks.iter().sum::<usize>() as f64 / n_samples as f64;
    let state_manifold = (1usize << (spec.n_qubits() + 1)) - 2;
    Ok(EffectiveDimension {
        mean_rank,
        ranks,
        n_params,
        rank_bound: n_params.min(state_manifold),
    })
}

/// Approximation-ratio gain attributable to the extra rotation block: the
/// same parameter point evaluated with and without it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SuppressionDelta {
    pub with_extra_block: f64,
    pub without_extra_block: f64,
    /// `with_extra_block - without_extra_block`.
    pub delta: f64,
}

pub fn suppression_delta<T: Scalar>(
    spec: &AnsatzSpec,
    params: &ParameterVector<T>,
    hamiltonian: &DiagonalHamiltonian<T>,
) -> Result<SuppressionDelta> {
    if !spec.family().has_cd_block() {
        return Err(Error::InvalidArgument(format!(
            "{} has no extra rotation block to zero out",
            spec.family()
        )));
    }
    spec.check_layout(params)?;
    let max_cut = spec.graph().brute_force_maxcut()?.cut_value;
    let total = spec.graph().total_weight();
    let ratio = |p: &ParameterVector<T>| -> Result<f64> {
        let state = spec.run(p)?;
        let r = approximation_ratio_with_max(hamiltonian, &state, total, max_cut)?;
        Ok(r.to_f64().expect("ratio to f64"))
    };
    let with_extra_block = ratio(params)?;
    let without_extra_block = ratio(&params.with_zeroed_cd())?;
    Ok(SuppressionDelta {
        with_extra_block,
        without_extra_block,
        delta: with_extra_block - without_extra_block,
    })
}

/// Fitted logistic saturation curve
/// `f(x) = p_max / (1 + exp(k (x - alpha_c)))`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LogisticFit {
    pub p_max: f64,
    pub steepness: f64,
    pub alpha_c: f64,
    /// Sum of squared residuals at the fitted point.
    pub residual: f64,
    /// Set when the data are constant to numerical precision; the fit
    /// then reports the constant as `p_max` with zero steepness.
    pub flat: bool,
}

impl LogisticFit {
    pub fn evaluate(&self, x: f64) -> f64 {
        self.p_max * sigmoid(-(self.steepness * (x - self.alpha_c)))
    }
}

/// Numerically stable `1 / (1 + e^{-u})`.
fn sigmoid(u: f64) -> f64 {
    if u >= 0.0 {
        1.0 / (1.0 + (-u).exp())
    } else {
        let e = u.exp();
        e / (1.0 + e)
    }
}

fn logistic_sse(points: &[(f64, f64)], p_max: f64, k: f64, alpha_c: f64) -> f64 {
    points
        .iter()
        .map(|&(x, y)| {
            let f = p_max * sigmoid(-(k * (x - alpha_c)));
            (y - f).powi(2)
        })
        .sum()
}

/// Multi-start count for the logistic fit.
const LOGISTIC_STARTS: usize = 100;
/// Fixed stream so the fit itself is a pure function of the data.
const LOGISTIC_FIT_SEED: u64 = 0x4c4f_4749_5354_4943;
const LM_MAX_ITERS: usize = 200;

/// Fits the three-parameter logistic saturation curve by multi-start
/// Levenberg-Marquardt on the sum of squared residuals.
///
/// Starts sample `p_max` in `[max(y), 3 max(y)]`, steepness in
/// `[0.1, 100]` (log-uniform), and `alpha_c` in `[0, 1]`. Saturating data
/// can approach the plateau from either side, so each start first picks
/// the steepness sign that matches the data better, and the refinement
/// itself leaves the sign unconstrained.
pub fn fit_logistic(points: &[(f64, f64)]) -> Result<LogisticFit> {
    if points.len() < 3 {
        return Err(Error::Fit(format!(
            "logistic fit needs at least 3 points, got {}",
            points.len()
        )));
    }
    if points.iter().any(|&(x, y)| !x.is_finite() || !y.is_finite()) {
        return Err(Error::Fit("logistic fit given non-finite data".into()));
    }
    let y_max = points.iter().map(|&(_, y)| y).fold(f64::NEG_INFINITY, f64::max);
    let y_min = points.iter().map(|&(_, y)| y).fold(f64::INFINITY, f64::min);
    if y_max <= 0.0 {
        return Err(Error::Fit(
            "logistic saturation fit expects a positive plateau".into(),
        ));
    }
    if y_max - y_min <= 1e-12 * y_max.abs().max(1.0) {
        let constant = points.iter().map(|&(_, y)| y).sum::<f64>() / points.len() as f64;
        let alpha_c = points.iter().map(|&(x, _)| x).sum::<f64>() / points.len() as f64;
        return Ok(LogisticFit {
            p_max: constant,
            steepness: 0.0,
            alpha_c,
            residual: logistic_sse(points, constant, 0.0, alpha_c),
            flat: true,
        });
    }

    let mut rng = stream_rng(LOGISTIC_FIT_SEED, 0);
    let mut best: Option<LogisticFit> = None;
    for _ in 0..LOGISTIC_STARTS {
        let p_max0 = y_max * rng.gen_range(1.0..3.0);
        let k_mag = 10f64.powf(rng.gen_range(-1.0..2.0));
        let alpha0 = rng.gen_range(0.0..1.0);
        let k0 = if logistic_sse(points, p_max0, k_mag, alpha0)
            <= logistic_sse(points, p_max0, -k_mag, alpha0)
        {
            k_mag
        } else {
            -k_mag
        };
        let candidate = refine_logistic(points, p_max0, k0, alpha0);
        if best
            .as_ref()
            .map(|b| candidate.residual < b.residual)
            .unwrap_or(true)
        {
            best = Some(candidate);
        }
    }
    Ok(best.expect("at least one start"))
}

/// Levenberg-Marquardt refinement of one logistic start; returns the best
/// point reached even if the iteration stalls.
fn refine_logistic(points: &[(f64, f64)], p_max0: f64, k0: f64, alpha0: f64) -> LogisticFit {
    let mut p = Vector3::new(p_max0, k0, alpha0);
    let mut sse = logistic_sse(points, p[0], p[1], p[2]);
    let mut lambda = 1e-3;
    for _ in 0..LM_MAX_ITERS {
        // Normal equations J^T J and J^T r for residuals r_i = y_i - f_i.
        let mut jtj = Matrix3::<f64>::zeros();
        let mut jtr = Vector3::<f64>::zeros();
        for &(x, y) in points {
            let u = p[1] * (x - p[2]);
            let s = sigmoid(-u);
            let f = p[0] * s;
            let slope = s * (1.0 - s);
            let jac = Vector3::new(s, -p[0] * slope * (x - p[2]), p[0] * slope * p[1]);
            let r = y - f;
            jtj += jac * jac.transpose();
            jtr += jac * r;
        }
        let mut improved = false;
        for _ in 0..12 {
            let mut damped = jtj;
            for d in 0..3 {
                damped[(d, d)] += lambda * jtj[(d, d)].max(1e-12);
            }
            let Some(step) = damped.lu().solve(&jtr) else {
                lambda *= 10.0;
                continue;
            };
            let trial = p + step;
            let trial_sse = logistic_sse(points, trial[0], trial[1], trial[2]);
            if trial_sse.is_finite() && trial_sse < sse {
                p = trial;
                sse = trial_sse;
                lambda = (lambda * 0.1).max(1e-12);
                improved = true;
                break;
            }
            lambda *= 10.0;
        }
        if !improved || sse < 1e-24 {
            break;
        }
    }
    LogisticFit { p_max: p[0], steepness: p[1], alpha_c: p[2], residual: sse, flat: false }
}

/// Ordinary least-squares line `y = slope x + intercept`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LinearFit {
    pub slope: f64,
    pub intercept: f64,
    /// Sum of squared residuals.
    pub residual: f64,
}

impl LinearFit {
    pub fn evaluate(&self, x: f64) -> f64 {
        self.slope * x + self.intercept
    }
}

pub fn fit_linear(points: &[(f64, f64)]) -> Result<LinearFit> {
    if points.len() < 2 {
        return Err(Error::Fit(format!(
            "linear fit needs at least 2 points, got {}",
            points.len()
        )));
    }
    if points.iter().any(|&(x, y)| !x.is_finite() || !y.is_finite()) {
        return Err(Error::Fit("linear fit given non-finite data".into()));
    }
    let n = points.len() as f64;
    let mean_x = points.iter().map(|&(x, _)| x).sum::<f64>() / n;
    let mean_y = points.iter().map(|&(_, y)| y).sum::<f64>() / n;
    let sxx: f64 = points.iter().map(|&(x, _)| (x - mean_x).powi(2)).sum();
    if sxx <= 0.0 {
        return Err(Error::Fit("linear fit needs at least 2 distinct x values".into()));
    }
    let sxy: f64 = points.iter().map(|&(x, y)| (x - mean_x) * (y - mean_y)).sum();
    let slope = sxy / sxx;
    let intercept = mean_y - slope * mean_x;
    let residual = points
        .iter()
        .map(|&(x, y)| (y - slope * x - intercept).powi(2))
        .sum();
    Ok(LinearFit { slope, intercept, residual })
}

/// Size at which a line with per-layer cost `1` overtakes a line with
/// per-layer cost `layer_cost_ratio`: solves
/// `cheap(N) = layer_cost_ratio * costly(N)`, the equal-total-cost point
/// of two depth-scaling fits.
pub fn crossover_size(
    cheap_layers: &LinearFit,
    costly_layers: &LinearFit,
    layer_cost_ratio: f64,
) -> Result<f64> {
    if !(layer_cost_ratio > 0.0) || !layer_cost_ratio.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "layer cost ratio {layer_cost_ratio} must be positive and finite"
        )));
    }
    let denom = cheap_layers.slope - layer_cost_ratio * costly_layers.slope;
    if denom.abs() < 1e-12 {
        return Err(Error::Fit(
            "depth-scaling lines are parallel at this cost ratio; no crossover".into(),
        ));
    }
    Ok((layer_cost_ratio * costly_layers.intercept - cheap_layers.intercept) / denom)
}

/// Squared Euclidean distance between two parameter vectors of the same
/// layout.
pub fn parameter_distance<T: Scalar>(
    a: &ParameterVector<T>,
    b: &ParameterVector<T>,
) -> Result<f64> {
    if a.family() != b.family() || a.layers() != b.layers() {
        return Err(Error::ShapeMismatch(format!(
            "distance between {} with {} layers and {} with {} layers",
            a.family(),
            a.layers(),
            b.family(),
            b.layers()
        )));
    }
    Ok(a.values()
        .iter()
        .zip(b.values())
        .map(|(&x, &y)| {
            let d = (x - y).to_f64().expect("parameter to f64");
            d * d
        })
        .sum())
}

/// Smallest squared distance between any pair drawn across the two
/// groups: the concentration measure between optima found at neighboring
/// problem sizes.
pub fn min_cross_distance<T: Scalar>(
    group_a: &[ParameterVector<T>],
    group_b: &[ParameterVector<T>],
) -> Result<f64> {
    if group_a.is_empty() || group_b.is_empty() {
        return Err(Error::InvalidArgument(
            "cross-group distance needs non-empty groups".into(),
        ));
    }
    let mut best = f64::INFINITY;
    for a in group_a {
        for b in group_b {
            best = best.min(parameter_distance(a, b)?);
        }
    }
    Ok(best)
}

/// Polynomial decay exponent of distances against size: the negated slope
/// of `log10 d` versus `log10 N`.
pub fn concentration_exponent(points: &[(f64, f64)]) -> Result<f64> {
    if points.len() < 3 {
        return Err(Error::Fit(format!(
            "concentration exponent needs at least 3 sizes, got {}",
            points.len()
        )));
    }
    let logs: Vec<(f64, f64)> = points
        .iter()
        .map(|&(n, d)| {
            if n <= 0.0 || d <= 0.0 {
                Err(Error::Fit(format!(
                    "concentration exponent needs positive sizes and distances, got ({n}, {d})"
                )))
            } else {
                Ok((n.log10(), d.log10()))
            }
        })
        .collect::<Result<_>>()?;
    Ok(-fit_linear(&logs)?.slope)
}

/// Uniform sampling helper reused by analysis callers that need plain
/// random points rather than a derived stream (kept here so sampling
/// conventions stay in one place).
pub fn uniform_angles(n: usize, rng: &mut impl Rng) -> Vec<f64> {
    (0..n)
        .map(|_| rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI))
        .collect()
}

/// Brute-force optimal approximation ratio reference for a graph: the
/// ratio an exact solver attains, always `1`; kept as a sanity anchor for
/// tests of ratio plumbing.
pub fn exact_ratio_reference(graph: &Graph) -> Result<f64> {
    let h = DiagonalHamiltonian::<f64>::maxcut(graph)?;
    let max_cut = graph.brute_force_maxcut()?;
    let best_state =
        Statevector::<f64>::basis_state(graph.n_vertices(), max_cut.assignment as usize)?;
    approximation_ratio_with_max(&h, &best_state, graph.total_weight(), max_cut.cut_value)
}
