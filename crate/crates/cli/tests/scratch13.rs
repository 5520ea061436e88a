//! Temporary exploration harness; deleted before release.

use dcqaoa::{
    derive_seed, min_cross_distance, stream_rng, train_from, AnsatzFamily, AnsatzSpec,
    DiagonalHamiltonian, Graph, IstSchedule, ObjectiveKind, ParameterVector, TrainConfig,
};
use rand::Rng;

fn connected_graph(n: usize, edge_prob: f64, seed: u64) -> Graph {
    for retry in 0..1000 {
        let g = Graph::random(n, edge_prob, derive_seed(seed, retry)).expect("valid arguments");
        if g.n_edges() >= 1 && g.is_connected() {
            return g;
        }
    }
    panic!("no connected graph");
}

fn any_graph(n: usize, edge_prob: f64, seed: u64) -> Graph {
    for retry in 0..1000 {
        let g = Graph::random(n, edge_prob, derive_seed(seed, retry)).expect("valid arguments");
        if g.n_edges() >= 1 {
            return g;
        }
    }
    panic!("no graph");
}

/// Annealing-style start: the phase angles ramp up across layers, the mixer
/// angles ramp down, extra-rotation angles start near zero; all jittered.
fn ramp_start(
    family: AnsatzFamily,
    layers: usize,
    amplitude: f64,
    jitter: f64,
    rng: &mut impl Rng,
) -> ParameterVector<f64> {
    let p = layers as f64;
    let mut values = Vec::with_capacity(family.params_per_layer() * layers);
    for l in 0..layers {
        let frac = (l as f64 + 0.5) / p;
        values.push(amplitude * frac + rng.gen_range(-jitter..jitter));
    }
    for l in 0..layers {
        let frac = (l as f64 + 0.5) / p;
        values.push(amplitude * (1.0 - frac) + rng.gen_range(-jitter..jitter));
    }
    if family.params_per_layer() == 3 {
        for _ in 0..layers {
            values.push(rng.gen_range(-jitter..jitter));
        }
    }
    ParameterVector::new(family, layers, values).unwrap()
}

#[test]
fn ramp_ordering() {
    // Criterion 6 setting: n=10, p=8, fidelity, 8 ramp-init restarts,
    // two-phase step size (coarse then fine).
    for amplitude in [0.75f64, 1.1] {
        for graph_seed in 0..2u64 {
            let graph = any_graph(10, 0.5, derive_seed(606, graph_seed));
            let h = DiagonalHamiltonian::<f64>::maxcut(&graph).unwrap();
            let mut means = Vec::new();
            for family in [AnsatzFamily::DcNc, AnsatzFamily::DcYy, AnsatzFamily::Qaoa] {
                let spec = AnsatzSpec::new(family, 8, graph.clone()).unwrap();
                let mut bests = Vec::new();
                for restart in 0..8u64 {
                    let mut rng = stream_rng(derive_seed(607, graph_seed), restart);
                    let start = ramp_start(family, 8, amplitude, 0.1, &mut rng);
                    let coarse = TrainConfig {
                        objective: ObjectiveKind::Fidelity,
                        max_iterations: 700,
                        restarts: 1,
                        convergence_tol: 0.0,
                        seed: 0,
                        ..TrainConfig::default()
                    };
                    let mid = train_from(&spec, &h, &coarse, &start).unwrap();
                    let fine = TrainConfig {
                        learning_rate: 0.01,
                        max_iterations: 300,
                        ..coarse.clone()
                    };
                    let finished = train_from(&spec, &h, &fine, &mid.best_params).unwrap();
                    bests.push(finished.best_objective.max(mid.best_objective));
                }
                let mean = bests.iter().sum::<f64>() / 8.0;
                println!("  amp {amplitude} g{graph_seed} {family}: mean best {mean:.4}");
                means.push(mean);
            }
            let ordered = means[0] + 0.005 >= means[1] && means[1] + 0.005 >= means[2];
            println!("amp {amplitude} g{graph_seed} ordered: {ordered}");
        }
    }
}

#[test]
fn ramp_concentration() {
    // Criterion 13 setting: nested sizes 6..10, p=6, ratio, ramp inits.
    let base = connected_graph(10, 0.5, 1301);
    let schedule = IstSchedule::build(&base, 6, 13).expect("schedule builds");
    let layers = 6usize;
    let mut groups: Vec<Vec<Vec<ParameterVector<f64>>>> = Vec::new();
    for (family_index, family) in [AnsatzFamily::DcNc, AnsatzFamily::Qaoa].iter().enumerate() {
        let mut by_size = Vec::new();
        for (stage_index, stage_graph) in schedule.stage_graphs().iter().enumerate() {
            let spec = AnsatzSpec::new(*family, layers, stage_graph.clone()).unwrap();
            let h = DiagonalHamiltonian::<f64>::maxcut(stage_graph).unwrap();
            let mut optima = Vec::new();
            let mut objectives = Vec::new();
            for trial in 0..10u64 {
                let mut rng = stream_rng(
                    derive_seed(1302 + family_index as u64, stage_index as u64),
                    trial,
                );
                let start = ramp_start(*family, layers, 0.75, 0.1, &mut rng);
                let config = TrainConfig {
                    objective: ObjectiveKind::Ratio,
                    max_iterations: 500,
                    restarts: 1,
                    convergence_tol: 0.0,
                    seed: 0,
                    ..TrainConfig::default()
                };
                let result = train_from(&spec, &h, &config, &start).unwrap();
                objectives.push(result.best_objective);
                optima.push(result.best_params);
            }
            let mean: f64 = objectives.iter().sum::<f64>() / objectives.len() as f64;
            println!(
                "  fam {family_index} n={} mean obj {mean:.4}",
                stage_graph.n_vertices()
            );
            by_size.push(optima);
        }
        groups.push(by_size);
    }
    let mut wins = 0;
    for pair in 0..4 {
        let d_dc = min_cross_distance(&groups[0][pair], &groups[0][pair + 1]).unwrap();
        let d_q = min_cross_distance(&groups[1][pair], &groups[1][pair + 1]).unwrap();
        wins += usize::from(d_dc < d_q);
        println!("{}->{}: dc {:.3e} q {:.3e} dc_wins {}", 6 + pair, 7 + pair, d_dc, d_q, d_dc < d_q);
    }
    println!("wins {wins}/4");
}
