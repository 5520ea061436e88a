//! Temporary exploration harness; deleted before release.

use dcqaoa::{
    derive_seed, train, train_from, AnsatzFamily, AnsatzSpec, DiagonalHamiltonian, Graph,
    ObjectiveKind, ParameterVector, TrainConfig,
};

fn any_graph(n: usize, edge_prob: f64, seed: u64) -> Graph {
    for retry in 0..1000 {
        let g = Graph::random(n, edge_prob, derive_seed(seed, retry)).expect("valid arguments");
        if g.n_edges() >= 1 {
            return g;
        }
    }
    panic!("no graph");
}

#[test]
fn embed() {
    let graph = any_graph(10, 0.5, derive_seed(606, 0));
    let h = DiagonalHamiltonian::<f64>::maxcut(&graph).unwrap();
    let p = 8usize;

    let q_spec = AnsatzSpec::new(AnsatzFamily::Qaoa, p, graph.clone()).unwrap();
    let base_config = TrainConfig {
        objective: ObjectiveKind::Fidelity,
        max_iterations: 500,
        restarts: 8,
        convergence_tol: 0.0,
        seed: derive_seed(607, 0),
        ..TrainConfig::default()
    };
    let q = train(&q_spec, &h, &base_config).unwrap();
    println!("qaoa best-of-8: {:.4}", q.best_objective);

    // Embed the trained plain parameters into the pair-word family with the
    // extra-rotation angles zeroed; the objective must carry over exactly.
    let mut values = q.best_params.values().to_vec();
    values.extend(std::iter::repeat(0.0).take(p));
    let dc_spec = AnsatzSpec::new(AnsatzFamily::DcNc, p, graph.clone()).unwrap();
    let start = ParameterVector::new(AnsatzFamily::DcNc, p, values).unwrap();
    let eval_config = TrainConfig { max_iterations: 1, restarts: 1, ..base_config.clone() };
    let embedded = train_from(&dc_spec, &h, &eval_config, &start).unwrap();
    println!(
        "embedded at start: {:.6} (traces[0][0]), qaoa {:.6}, diff {:.2e}",
        embedded.traces[0][0],
        q.best_objective,
        (embedded.traces[0][0] - q.best_objective).abs()
    );

    let continue_config = TrainConfig { max_iterations: 500, restarts: 1, ..base_config.clone() };
    let continued = train_from(&dc_spec, &h, &continue_config, &start).unwrap();
    println!("pair-word continued from embedding: {:.4}", continued.best_objective);

    let fresh = train(&dc_spec, &h, &base_config).unwrap();
    let per_restart: Vec<f64> = (0..8).map(|r| fresh.restart_best(r)).collect();
    let mean = per_restart.iter().sum::<f64>() / 8.0;
    println!(
        "pair-word fresh best-of-8: best {:.4} mean {:.4} per-restart {:?}",
        fresh.best_objective,
        mean,
        per_restart.iter().map(|v| (v * 1000.0).round() / 1000.0).collect::<Vec<_>>()
    );
}
