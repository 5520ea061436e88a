//! Randomized invariant checks: unitarity, inverses, periodicity,
//! serialization round-trips, cut/energy identities, and seed purity.

mod common;

use common::max_amplitude_deviation;
use proptest::prelude::*;

use dcqaoa::statevector::GateOp;
use dcqaoa::{
    matched_cnot_layers, parse_circuit, stream_rng, AnsatzFamily, AnsatzSpec, CnfFormula,
    DiagonalHamiltonian, Graph, ParameterVector, Statevector,
};
use rand::Rng;

const FAMILIES: [AnsatzFamily; 4] = AnsatzFamily::ALL;

/// A reproducible normalized state that is not a computational basis state.
fn scrambled_state(n: usize, seed: u64) -> Statevector<f64> {
    let mut rng = stream_rng(seed, 0xD15C);
    let mut state = Statevector::plus_state(n).unwrap();
    for _ in 0..3 {
        let q = rng.gen_range(0..n);
        let angle = rng.gen_range(-3.0..3.0);
        state.apply_gate(&GateOp::Rx { q, angle }).unwrap();
        let q = rng.gen_range(0..n);
        let angle = rng.gen_range(-3.0..3.0);
        state.apply_gate(&GateOp::Rz { q, angle }).unwrap();
    }
    state
}

/// Decodes a raw tuple into a valid gate on `n` qubits.
fn decode_gate(n: usize, kind: u8, q_raw: usize, r_raw: usize, angle: f64) -> GateOp<f64> {
    let q = q_raw % n;
    let r = (q + 1 + r_raw % (n - 1)) % n;
    match kind % 9 {
        0 => GateOp::Rx { q, angle },
        1 => GateOp::Ry { q, angle },
        2 => GateOp::Rz { q, angle },
        3 => GateOp::H { q },
        4 => GateOp::Hy { q },
        5 => GateOp::Cnot { control: q, target: r },
        6 => GateOp::Rzz { a: q, b: r, angle },
        7 => GateOp::Ryy { a: q, b: r, angle },
        _ => GateOp::RyzPair { a: q, b: r, angle },
    }
}

fn gate_sequence_strategy() -> impl Strategy<Value = (usize, Vec<(u8, usize, usize, f64)>)> {
    (2usize..=4, prop::collection::vec((any::<u8>(), any::<usize>(), any::<usize>(), -6.0..6.0f64), 1..20))
}

fn graph_strategy() -> impl Strategy<Value = Graph> {
    (2usize..=7, any::<u64>(), prop::collection::vec(0.25..4.0f64, 21))
        .prop_map(|(n, mask, weights)| {
            let mut edges = Vec::new();
            let mut bit = 0;
            for u in 0..n {
                for v in (u + 1)..n {
                    if (mask >> (bit % 64)) & 1 == 1 {
                        edges.push((u, v, weights[bit % weights.len()]));
                    }
                    bit += 1;
                }
            }
            if edges.is_empty() {
                edges.push((0, 1, weights[0]));
            }
            Graph::new(n, &edges).unwrap()
        })
}

fn cnf_strategy() -> impl Strategy<Value = CnfFormula> {
    (1usize..=6, prop::collection::vec((prop::collection::vec((any::<usize>(), any::<bool>()), 1..=3),), 1..=8))
        .prop_map(|(n_vars, raw_clauses)| {
            let clauses: Vec<Vec<i32>> = raw_clauses
                .into_iter()
                .map(|(lits,)| {
                    let mut seen = std::collections::BTreeSet::new();
                    let mut clause = Vec::new();
                    for (var_raw, positive) in lits {
                        let var = (var_raw % n_vars) + 1;
                        if seen.insert(var) {
                            clause.push(if positive { var as i32 } else { -(var as i32) });
                        }
                    }
                    clause
                })
                .collect();
            CnfFormula::new(n_vars, clauses).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn random_gate_sequences_preserve_the_norm(
        (n, raw) in gate_sequence_strategy(),
        seed in any::<u64>(),
    ) {
        let mut state = scrambled_state(n, seed);
        for (kind, q, r, angle) in raw {
            state.apply_gate(&decode_gate(n, kind, q, r, angle)).unwrap();
        }
        prop_assert!((state.norm() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn every_gate_followed_by_its_inverse_is_the_identity(
        (n, raw) in gate_sequence_strategy(),
        seed in any::<u64>(),
    ) {
        let original = scrambled_state(n, seed);
        let mut state = original.clone();
        let gates: Vec<GateOp<f64>> =
            raw.into_iter().map(|(k, q, r, a)| decode_gate(n, k, q, r, a)).collect();
        for gate in &gates {
            state.apply_gate(gate).unwrap();
        }
        for gate in gates.iter().rev() {
            state.apply_gate(&gate.inverse()).unwrap();
        }
        prop_assert!(max_amplitude_deviation(&state, original.amplitudes()) < 1e-9);
    }

    #[test]
    fn rotations_are_periodic(
        n in 2usize..=3,
        q_raw in any::<usize>(),
        r_raw in any::<usize>(),
        angle in -6.0..6.0f64,
        seed in any::<u64>(),
    ) {
        use std::f64::consts::PI;
        let q = q_raw % n;
        let r = (q + 1 + r_raw % (n - 1)) % n;
        // Single-qubit rotations use half angles, so their period is 4*pi;
        // the two-qubit rotations take the full angle and have period 2*pi.
        let pairs: Vec<(GateOp<f64>, GateOp<f64>)> = vec![
            (GateOp::Rx { q, angle }, GateOp::Rx { q, angle: angle + 4.0 * PI }),
            (GateOp::Rzz { a: q, b: r, angle }, GateOp::Rzz { a: q, b: r, angle: angle + 2.0 * PI }),
            (GateOp::Ryy { a: q, b: r, angle }, GateOp::Ryy { a: q, b: r, angle: angle + 2.0 * PI }),
        ];
        let state = scrambled_state(n, seed);
        for (base, shifted) in pairs {
            let mut a = state.clone();
            let mut b = state.clone();
            a.apply_gate(&base).unwrap();
            b.apply_gate(&shifted).unwrap();
            prop_assert!(max_amplitude_deviation(&a, b.amplitudes()) < 1e-12, "gate {base}");
        }
    }

    #[test]
    fn graph_serialization_round_trips(g in graph_strategy()) {
        let from_text = Graph::from_edge_list(&g.to_edge_list()).unwrap();
        prop_assert_eq!(&from_text, &g);
        let from_json = Graph::from_json(&g.to_json()).unwrap();
        prop_assert_eq!(&from_json, &g);
    }

    #[test]
    fn cut_values_are_complement_symmetric(g in graph_strategy(), mask in any::<u64>()) {
        let full = (1u64 << g.n_vertices()) - 1;
        let m = mask & full;
        prop_assert!((g.cut_value(m) - g.cut_value(!m & full)).abs() < 1e-12);
    }

    #[test]
    fn diagonal_energies_mirror_cut_values(g in graph_strategy()) {
        // Each diagonal entry of the cost operator must equal
        // total weight minus twice the cut of that basis assignment.
        let h = DiagonalHamiltonian::<f64>::maxcut(&g).unwrap();
        let w = g.total_weight();
        for z in 0..(1usize << g.n_vertices()) {
            let expected = w - 2.0 * g.cut_value(z as u64);
            prop_assert!((h.diagonal()[z] - expected).abs() < 1e-9);
        }
    }

    #[test]
    fn parameter_vectors_round_trip_through_json(
        family_idx in 0usize..4,
        layers in 1usize..=4,
        seed in any::<u64>(),
    ) {
        let family = FAMILIES[family_idx];
        let params = ParameterVector::<f64>::random_uniform(family, layers, seed).unwrap();
        let back = ParameterVector::<f64>::from_json(&params.to_json()).unwrap();
        prop_assert_eq!(back.family(), params.family());
        prop_assert_eq!(back.layers(), params.layers());
        prop_assert_eq!(back.values(), params.values());
    }

    #[test]
    fn circuit_text_round_trips(
        family_idx in 0usize..4,
        layers in 1usize..=2,
        seed in any::<u64>(),
    ) {
        let family = FAMILIES[family_idx];
        let graph = Graph::random(4, 0.7, seed).unwrap();
        let spec = AnsatzSpec::new(family, layers, graph).unwrap();
        let params = ParameterVector::<f64>::random_uniform(family, layers, seed).unwrap();
        let gates = spec.build_circuit(&params).unwrap();
        let text = dcqaoa::format_circuit(&gates);
        let parsed: Vec<GateOp<f64>> = parse_circuit(&text).unwrap();
        prop_assert_eq!(parsed.len(), gates.len());
        let mut a = Statevector::plus_state(4).unwrap();
        let mut b = Statevector::plus_state(4).unwrap();
        for g in &gates {
            a.apply_gate(g).unwrap();
        }
        for g in &parsed {
            b.apply_gate(g).unwrap();
        }
        prop_assert!(max_amplitude_deviation(&a, b.amplitudes()) < 1e-9);
    }

    #[test]
    fn reported_gate_counts_match_the_emitted_circuit(
        family_idx in 0usize..4,
        layers in 1usize..=3,
        g in graph_strategy(),
    ) {
        let family = FAMILIES[family_idx];
        let spec = AnsatzSpec::new(family, layers, g).unwrap();
        let params =
            ParameterVector::<f64>::random_uniform(family, layers, 11).unwrap();
        let gates = spec.build_circuit(&params).unwrap();
        let report = spec.count_gates();
        let actual_cnots = gates.iter().filter(|g| g.is_cnot()).count();
        prop_assert_eq!(actual_cnots, report.cnot_total);
        prop_assert_eq!(
            report.cnot_per_layer,
            family.cnot_factor() * spec.graph().n_edges()
        );
    }

    #[test]
    fn matched_cnot_budgets_are_exact_when_accepted(
        ref_idx in 0usize..4,
        target_idx in 0usize..4,
        layers in 1usize..=12,
    ) {
        let reference = FAMILIES[ref_idx];
        let target = FAMILIES[target_idx];
        match matched_cnot_layers(reference, layers, target) {
            Ok(t) => prop_assert_eq!(
                t * target.cnot_factor(),
                layers * reference.cnot_factor()
            ),
            Err(_) => prop_assert_ne!(
                (layers * reference.cnot_factor()) % target.cnot_factor(),
                0
            ),
        }
    }

    #[test]
    fn dimacs_round_trips(f in cnf_strategy()) {
        let back = CnfFormula::from_dimacs(&f.to_dimacs()).unwrap();
        prop_assert_eq!(back.n_vars(), f.n_vars());
        prop_assert_eq!(back.clauses(), f.clauses());
    }

    #[test]
    fn identical_seeds_give_identical_streams(seed in any::<u64>(), family_idx in 0usize..4) {
        let family = FAMILIES[family_idx];
        let a = ParameterVector::<f64>::random_uniform(family, 3, seed).unwrap();
        let b = ParameterVector::<f64>::random_uniform(family, 3, seed).unwrap();
        prop_assert_eq!(a.values(), b.values());
        let mut r1 = stream_rng(seed, 5);
        let mut r2 = stream_rng(seed, 5);
        let x1: [u64; 4] = std::array::from_fn(|_| r1.gen());
        let x2: [u64; 4] = std::array::from_fn(|_| r2.gen());
        prop_assert_eq!(x1, x2);
    }
}
