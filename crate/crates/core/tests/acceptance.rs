//! Acceptance suite: every claim the library ships is re-verified here at
//! its stated tolerance, one test per criterion, each printing a PASS/FAIL
//! line (visible with `cargo test -- --nocapture`).

use lackawalk_core::classical::{
    hitting_time_exact, hitting_time_monte_carlo, interpolated_matrix, walk_matrix, Distribution,
};
use lackawalk_core::coined::{
    dense_apply, dense_step_operator, initial_state_lazy, marked_arc_spread, step, step_l,
    step_lhat, CoinConfig, CoinState, WalkVariant, DENSE_GUARD,
};
use lackawalk_core::graph::{build_graph, GraphFamily, MarkedInstance};
use lackawalk_core::spectral::{cotangent_qht_from_spectrum, discriminant, eigendecompose};
use lackawalk_core::szegedy::{
    busy_projection, cotangent_qht_direct, initial_state_ip, isometry_e, isometry_e_adjoint,
    isometry_t, isometry_t_adjoint, lift_eigenpairs, step_u, to_dense, EdgeSpace, EdgeState,
    WalkParams, DENSE_GUARD_N,
};
use lackawalk_core::verify::{
    check_facts, check_lemma1, check_lemma2, check_theorem1, check_theorem2, default_t_max,
    eigenvalue_map_residual, search_experiment,
};
use num_complex::Complex64;
use std::time::Instant;

/// The fixed instance matrix behind criteria 1, 2, 3, 4, 6 and 8.
fn criterion_instances() -> Vec<(String, MarkedInstance)> {
    let mut specs = vec![
        GraphFamily::Cycle { n: 5 },
        GraphFamily::Cycle { n: 8 },
        GraphFamily::Cycle { n: 16 },
        GraphFamily::Cycle { n: 32 },
        GraphFamily::Torus { rows: 3, cols: 3 },
        GraphFamily::Torus { rows: 4, cols: 4 },
        GraphFamily::Torus { rows: 5, cols: 5 },
        GraphFamily::Complete { n: 4 },
        GraphFamily::Complete { n: 8 },
        GraphFamily::Complete { n: 16 },
        GraphFamily::Hypercube { dim: 2 },
        GraphFamily::Hypercube { dim: 3 },
        GraphFamily::Hypercube { dim: 4 },
    ];
    specs.push(GraphFamily::Johnson { n: 5, k: 2 });
    specs
        .into_iter()
        .map(|spec| {
            let label = spec.label();
            let graph = build_graph(&spec).expect("family instance builds");
            (label, MarkedInstance::new(graph, 0).unwrap())
        })
        .collect()
}

#[test]
fn criterion_1_theorem1_identity() {
    let started = Instant::now();
    let mut worst = 0.0f64;
    let mut worst_label = String::new();
    for (label, inst) in criterion_instances() {
        let params = WalkParams::standard(inst.graph());
        let report = check_theorem1(&inst, params).expect("theorem 1 check runs");
        assert!(report.hypothesis_met, "{label} should be locally arc-transitive");
        if report.residual > worst {
            worst = report.residual;
            worst_label = label.clone();
        }
        assert!(
            report.residual < 1e-9,
            "{label}: |C(L)^2 - ((N+1)/N C(U)^2 + 1/(2N-1))| = {}",
            report.residual
        );
    }
    let elapsed = started.elapsed().as_secs_f64();
    println!(
        "acceptance criterion 1 (hitting-time identity): PASS \
         (worst residual {worst:.3e} on {worst_label}, {elapsed:.1} s)"
    );
    assert!(elapsed < 60.0, "criterion 1 runtime budget");
}

#[test]
fn criterion_2_lemma1_trajectories() {
    let started = Instant::now();
    let mut worst = 0.0f64;
    for (label, inst) in criterion_instances() {
        let params = WalkParams::standard(inst.graph());
        let t_max = default_t_max(&inst).unwrap();
        let report = check_lemma1(&inst, params, t_max).unwrap();
        worst = worst.max(report.residual);
        assert!(
            report.pass,
            "{label}: max_t ||L^t init - L-hat^t init|| = {}",
            report.residual
        );
    }
    let elapsed = started.elapsed().as_secs_f64();
    println!(
        "acceptance criterion 2 (oracle-variant trajectory equality): PASS \
         (worst distance {worst:.3e}, {elapsed:.1} s)"
    );
    assert!(elapsed < 120.0, "criterion 2 runtime budget");
}

#[test]
fn criterion_3_lemma2_conjugation() {
    let started = Instant::now();
    let mut worst = 0.0f64;
    for (label, inst) in criterion_instances() {
        let params = WalkParams::standard(inst.graph());
        let report = check_lemma2(&inst, params, 50, 0xC0FFEE).unwrap();
        worst = worst.max(report.residual);
        assert!(report.pass, "{label}: conjugation residual {}", report.residual);
    }
    println!(
        "acceptance criterion 3 (coin-space conjugation): PASS \
         (worst residual {worst:.3e} over 50 random states per instance, {:.1} s)",
        started.elapsed().as_secs_f64()
    );
}

#[test]
fn criterion_4_lemma3_eigenvalue_map() {
    let started = Instant::now();
    let mut worst = 0.0f64;
    for (label, inst) in criterion_instances() {
        let params = WalkParams::standard(inst.graph());
        let residual = eigenvalue_map_residual(&inst, params).unwrap();
        worst = worst.max(residual);
        assert!(
            residual < 1e-10,
            "{label}: eigenvalue map residual {residual}"
        );
    }
    println!(
        "acceptance criterion 4 (eigenvalue map): PASS \
         (worst residual {worst:.3e}, {:.1} s)",
        started.elapsed().as_secs_f64()
    );
}

#[test]
fn criterion_5_theorem2_decay() {
    let started = Instant::now();
    let instances: Vec<MarkedInstance> = [4usize, 6, 8, 10, 12]
        .iter()
        .map(|&k| {
            let graph = build_graph(&GraphFamily::Torus { rows: k, cols: k }).unwrap();
            MarkedInstance::new(graph, 0).unwrap()
        })
        .collect();
    let report = check_theorem2(&instances, 1.0, -0.20).unwrap();
    let elapsed = started.elapsed().as_secs_f64();
    let status = if report.pass { "PASS" } else { "FAIL" };
    println!(
        "acceptance criterion 5 (trajectory-distance decay): {status} \
         (log-log slope {:.4} <= -0.20, {elapsed:.1} s)",
        report.residual
    );
    for note in &report.notes {
        println!("    {note}");
    }
    assert!(report.pass, "slope {} above -0.20", report.residual);
    assert!(elapsed < 600.0, "criterion 5 runtime budget");
}

#[test]
fn criterion_6_partial_sum_bounds() {
    let started = Instant::now();
    let mut worst = f64::NEG_INFINITY;
    for (label, inst) in criterion_instances() {
        let params = WalkParams::standard(inst.graph());
        let report = check_facts(&inst, params).unwrap();
        worst = worst.max(report.residual);
        assert!(
            report.pass,
            "{label}: a partial-sum bound is violated by {}",
            report.residual
        );
    }
    println!(
        "acceptance criterion 6 (partial-sum bounds): PASS \
         (worst margin {worst:.3e} below bound, {:.1} s)",
        started.elapsed().as_secs_f64()
    );
}

#[test]
fn criterion_7_search_phenomenology() {
    let started = Instant::now();
    let cases: [(GraphFamily, f64, f64); 3] = [
        (GraphFamily::Torus { rows: 10, cols: 10 }, 4.0 / 100.0, 0.5),
        (GraphFamily::Complete { n: 64 }, 63.0 / 64.0, 0.9),
        (GraphFamily::Cycle { n: 64 }, 2.0 / 64.0, 0.3),
    ];
    let mut lines = Vec::new();
    for (spec, ell, threshold) in cases {
        let label = spec.label();
        let graph = build_graph(&spec).unwrap();
        let inst = MarkedInstance::new(graph, 0).unwrap();
        let cfg = CoinConfig::new(inst.graph(), ell).unwrap();
        let t_max = default_t_max(&inst).unwrap();
        let curve = search_experiment(&inst, &cfg, t_max);
        lines.push(format!(
            "{label}: max success {:.4} at t={} (threshold {threshold}, horizon {t_max})",
            curve.max, curve.argmax
        ));
        assert!(
            curve.max >= threshold,
            "{label}: max success probability {} below {threshold}",
            curve.max
        );
    }
    println!(
        "acceptance criterion 7 (search phenomenology): PASS ({:.1} s)",
        started.elapsed().as_secs_f64()
    );
    for line in lines {
        println!("    {line}");
    }
}

#[test]
fn criterion_8_oracle_equivalences() {
    let started = Instant::now();
    // Matrix-free coined steps vs dense operators, coin dimension <= 512.
    let mut coin_worst = 0.0f64;
    for (label, inst) in criterion_instances() {
        let graph = inst.graph();
        if graph.n_vertices() * (graph.degree() + 1) > DENSE_GUARD {
            continue;
        }
        let cfg = CoinConfig::default_for(graph);
        for variant in [WalkVariant::Lackadaisical, WalkVariant::Variant] {
            let dense = dense_step_operator(&inst, &cfg, variant).unwrap();
            let state = CoinState::random(graph, 0xAB);
            let via_dense = dense_apply(&dense, &state);
            let mut via_free = state.clone();
            step(&mut via_free, &inst, &cfg, variant);
            let dist = via_free.distance(&via_dense);
            coin_worst = coin_worst.max(dist);
            assert!(dist < 1e-12, "{label}: coined dense mismatch {dist}");
        }
    }
    // Reduced-support U vs dense N^2 operator, N <= 24.
    let mut edge_worst = 0.0f64;
    for (label, inst) in criterion_instances() {
        let graph = inst.graph();
        let n = graph.n_vertices();
        if n > DENSE_GUARD_N {
            continue;
        }
        let s = 1.0 - 1.0 / n as f64;
        let ps = interpolated_matrix(&walk_matrix(graph), 0, s).unwrap();
        let space = EdgeSpace::new(graph, &ps).unwrap();
        let dense = lackawalk_core::szegedy::dense_step_operator(&ps).unwrap();
        let mut state = EdgeState::random(&space, 0xCD);
        let dense_in = to_dense(&space, graph, &state);
        step_u(&space, &mut state);
        let dense_out = to_dense(&space, graph, &state);
        let dim = n * n;
        for r in 0..dim {
            let mut acc = Complex64::ZERO;
            for c in 0..dim {
                acc += dense[r * dim + c] * dense_in[c];
            }
            let err = (acc - dense_out[r]).norm();
            edge_worst = edge_worst.max(err);
            assert!(err < 1e-12, "{label}: edge dense mismatch {err}");
        }
    }
    // Cotangent QHT: spectral route vs lifted eigenpairs.
    let mut qht_worst = 0.0f64;
    for (label, inst) in criterion_instances() {
        let graph = inst.graph();
        let n = graph.n_vertices();
        let s = 1.0 - 1.0 / n as f64;
        let ps = interpolated_matrix(&walk_matrix(graph), 0, s).unwrap();
        let space = EdgeSpace::new(graph, &ps).unwrap();
        let spectrum = eigendecompose(&discriminant(&ps)).unwrap();
        let pairs = lift_eigenpairs(&space, &spectrum).unwrap();
        let init = initial_state_ip(&space, 0);
        let direct = cotangent_qht_direct(&pairs, &init);
        let spectral =
            cotangent_qht_from_spectrum(&spectrum, &Distribution::pibar(n, 0)).unwrap();
        let diff = (direct - spectral).abs();
        qht_worst = qht_worst.max(diff);
        assert!(diff < 1e-9, "{label}: QHT routes differ by {diff}");
    }
    // Monte Carlo hitting time vs exact solve, 1e5 trials, 3 sigma.
    for spec in [GraphFamily::Complete { n: 8 }, GraphFamily::Cycle { n: 9 }] {
        let label = spec.label();
        let graph = build_graph(&spec).unwrap();
        let p = walk_matrix(&graph);
        let exact = hitting_time_exact(&p, 0, None).unwrap();
        let mc = hitting_time_monte_carlo(&p, 0, None, 100_000, 2024).unwrap();
        assert_eq!(mc.truncated, 0, "{label}: truncated trajectories");
        assert!(
            (mc.mean - exact).abs() <= 3.0 * mc.std_error,
            "{label}: MC {} vs exact {exact}, 3 sigma {}",
            mc.mean,
            3.0 * mc.std_error
        );
    }
    println!(
        "acceptance criterion 8 (oracle equivalences): PASS \
         (coined dense {coin_worst:.3e}, edge dense {edge_worst:.3e}, \
         QHT routes {qht_worst:.3e}, MC within 3 sigma, {:.1} s)",
        started.elapsed().as_secs_f64()
    );
}

#[test]
fn criterion_9_invariant_suite() {
    let started = Instant::now();
    for (label, inst) in criterion_instances() {
        let graph = inst.graph();
        let n = graph.n_vertices();
        let params = WalkParams::standard(graph);
        let cfg = CoinConfig::new(graph, params.ell).unwrap();

        // Involutions on a random state.
        let base = CoinState::random(graph, 0x5EED);
        let involutions: [(&str, Box<dyn Fn(&mut CoinState)>); 4] = [
            ("G", Box::new(|st: &mut CoinState| lackawalk_core::coined::apply_oracle_g(st, &inst))),
            ("Ghat", Box::new(|st: &mut CoinState| lackawalk_core::coined::apply_oracle_ghat(st, &inst))),
            ("C", Box::new(|st: &mut CoinState| lackawalk_core::coined::apply_coin(st, &cfg))),
            ("S", Box::new(|st: &mut CoinState| lackawalk_core::coined::apply_shift(st, graph))),
        ];
        for (name, f) in &involutions {
            let mut st = base.clone();
            f(&mut st);
            f(&mut st);
            let dist = st.distance(&base);
            assert!(dist < 1e-14, "{label}: {name} involution residual {dist}");
        }

        // Unitarity drift along the walk horizon.
        let t_max = default_t_max(&inst).unwrap();
        let mut st = initial_state_lazy(&inst, &cfg);
        for _ in 0..t_max {
            step_l(&mut st, &inst, &cfg);
            assert!((st.norm() - 1.0).abs() < 1e-12, "{label}: norm drift");
        }

        // Isometry contracts on the lazy interpolated walk.
        let lazy = lackawalk_core::classical::lazy_interpolated_matrix(
            graph,
            0,
            params.ell,
            params.s,
        )
        .unwrap();
        let space = EdgeSpace::new(graph, &lazy).unwrap();
        let vertex_vec: Vec<f64> = (0..n).map(|i| ((i * 31 + 7) % 13) as f64 / 13.0 - 0.4).collect();
        let round = isometry_t_adjoint(&space, &isometry_t(&space, &vertex_vec));
        for (have, want) in round.iter().zip(&vertex_vec) {
            assert!((have.re - want).abs() < 1e-12, "{label}: T-dagger T != I");
        }
        let coin = CoinState::random(graph, 0xE);
        let roundtrip = isometry_e(&space, &inst, &isometry_e_adjoint(&space, &inst, &coin));
        assert!(coin.distance(&roundtrip) < 1e-12, "{label}: E E-dagger != I on coin space");
        let edge = isometry_e_adjoint(&space, &inst, &coin);
        let back = isometry_e_adjoint(&space, &inst, &isometry_e(&space, &inst, &edge));
        assert!(edge.distance(&back) < 1e-12, "{label}: E-dagger E != I on edge space");

        // Reflection-subspace projection: idempotent and fixes the evolved state.
        let s = 1.0 - 1.0 / n as f64;
        let ps = interpolated_matrix(&walk_matrix(graph), 0, s).unwrap();
        let pspace = EdgeSpace::new(graph, &ps).unwrap();
        let proj = busy_projection(&pspace);
        let mut evolved = initial_state_ip(&pspace, 0);
        for _ in 0..5 {
            step_u(&pspace, &mut evolved);
        }
        let projected = proj.apply(&evolved);
        assert!(projected.distance(&evolved) < 1e-10, "{label}: projection moved the state");
        let twice = proj.apply(&projected);
        assert!(twice.distance(&projected) < 1e-12, "{label}: projection not idempotent");

        // Marked-arc amplitude equality along the trajectory.
        let mut st = initial_state_lazy(&inst, &cfg);
        for _ in 0..t_max.min(40) {
            step_l(&mut st, &inst, &cfg);
            let spread = marked_arc_spread(&st, &inst);
            assert!(spread < 1e-12, "{label}: marked-arc spread {spread}");
        }
    }

    // Recorded violation profile on the vertex-transitive counterexample.
    let moebius = build_graph(&GraphFamily::MoebiusLadder { n: 8 }).unwrap();
    let inst = MarkedInstance::new(moebius, 0).unwrap();
    let cfg = CoinConfig::default_for(inst.graph());
    let init = initial_state_lazy(&inst, &cfg);
    let mut l_state = init.clone();
    let mut lhat_state = init;
    let mut profile = Vec::new();
    let mut max_divergence = 0.0f64;
    for _ in 0..30 {
        step_l(&mut l_state, &inst, &cfg);
        step_lhat(&mut lhat_state, &inst, &cfg);
        profile.push(marked_arc_spread(&l_state, &inst));
        max_divergence = max_divergence.max(l_state.distance(&lhat_state));
    }
    let max_spread = profile.iter().copied().fold(0.0f64, f64::max);
    assert!(max_spread > 1e-6 && max_spread.is_finite());
    println!(
        "acceptance criterion 9 (invariant suite): PASS \
         (moebius_ladder(8) max arc spread {max_spread:.4}, \
         max L-vs-L-hat divergence {max_divergence:.4}, {:.1} s)",
        started.elapsed().as_secs_f64()
    );
}
