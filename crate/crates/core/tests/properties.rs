//! Property tests for the invariants that hold on every input.

use heatcorr::correlation::{global_correlation, verify_identity};
use heatcorr::graph::{parse_edge_list, random_graph, Graph};
use heatcorr::spectral::{
    eigendecompose, eigendecompose_with, SolverRegistry, SpectralDecomposition,
};
use heatcorr::timescale::{characteristic, solve_time_scale};
use heatcorr::torus::{random_wave, torus_local_correlation, TrigPolynomial};
use heatcorr::Error;
use proptest::prelude::*;

/// Connected `G(n, m)` with `n` in `3..=max_n`.
fn connected_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (3..=max_n, any::<u64>(), 0.0..1.0f64).prop_map(|(n, seed, fill)| {
        let max_m = n * (n - 1) / 2;
        let m = (n - 1) + ((max_m - (n - 1)) as f64 * fill) as usize;
        random_graph(n, m, seed).unwrap()
    })
}

fn decomposition(max_n: usize) -> impl Strategy<Value = SpectralDecomposition> {
    connected_graph(max_n).prop_map(|g| eigendecompose(&g.laplacian()).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn laplacian_annihilates_constants(g in connected_graph(25)) {
        let l = g.laplacian();
        for s in l.row_sums() {
            prop_assert_eq!(s, 0.0);
        }
        let ones = vec![1.0; g.n()];
        prop_assert!(l.mul_vec(&ones).iter().all(|x| *x == 0.0));
        for (u, d) in g.degrees().into_iter().enumerate() {
            prop_assert_eq!(l.get(u, u), d as f64);
        }
    }

    #[test]
    fn edge_list_round_trip(g in connected_graph(30)) {
        let back = parse_edge_list(&g.to_edge_list()).unwrap();
        prop_assert_eq!(back.n(), g.n());
        prop_assert_eq!(back.edges(), g.edges());
    }

    #[test]
    fn random_graph_has_requested_size(n in 2usize..40, fill in 0.0..1.0f64, seed: u64) {
        let max_m = n * (n - 1) / 2;
        let m = (n - 1) + ((max_m - (n - 1)) as f64 * fill) as usize;
        let g = random_graph(n, m, seed).unwrap();
        prop_assert_eq!(g.n(), n);
        prop_assert_eq!(g.edge_count(), m);
        let again = random_graph(n, m, seed).unwrap();
        prop_assert_eq!(again.edges(), g.edges());
        let too_few = random_graph(n, n - 2, seed);
        prop_assert!(matches!(too_few, Err(Error::TooFewEdges { .. })), "n - 2 edges must be rejected");
    }

    #[test]
    fn heat_semigroup(dec in decomposition(16), s in 0.0..2.0f64, t in 0.0..2.0f64) {
        let ks = dec.heat_kernel(s).unwrap();
        let kt = dec.heat_kernel(t).unwrap();
        let kst = dec.heat_kernel(s + t).unwrap();
        prop_assert!(kst.max_abs_diff(&ks.matmul(&kt)) <= 1e-9);
    }

    #[test]
    fn heat_kernel_positive_and_stochastic(dec in decomposition(16)) {
        for t in [1.0 / dec.lambda_max(), 1.0 / dec.eigenvalue(2)] {
            let k = dec.heat_kernel(t).unwrap();
            prop_assert!(k.as_slice().iter().all(|p| *p > -1e-12));
            for s in k.row_sums() {
                prop_assert!((s - 1.0).abs() <= 1e-10);
            }
        }
    }

    #[test]
    fn parseval(dec in decomposition(20), seed: u64) {
        let n = dec.n();
        let f: Vec<f64> = (0..n).map(|u| ((u as u64 ^ seed) % 97) as f64 - 48.0).collect();
        let c = dec.expand(&f).unwrap();
        let lhs: f64 = f.iter().map(|x| x * x).sum();
        let rhs: f64 = c.iter().map(|x| x * x).sum();
        prop_assert!((lhs - rhs).abs() <= 1e-10 * lhs.max(1.0));
        let back = dec.synthesize(&c);
        prop_assert!(back.iter().zip(&f).all(|(a, b)| (a - b).abs() <= 1e-10 * lhs.sqrt().max(1.0)));
    }

    #[test]
    fn identity_holds_for_random_triples(dec in decomposition(14), i in 1usize..14, j in 1usize..14, u in 0.0..1.0f64) {
        let n = dec.n();
        let (i, j) = (1 + i % n, 1 + j % n);
        let t = (1.0 - u) * 10.0 / dec.eigenvalue(2);
        prop_assert!(verify_identity(&dec, i, j, t).unwrap() <= 1e-10);
    }

    #[test]
    fn correlation_is_symmetric(dec in decomposition(14), i in 2usize..14, j in 2usize..14) {
        let n = dec.n();
        let (i, j) = (2 + i % (n - 1), 2 + j % (n - 1));
        match (global_correlation(&dec, i, j), global_correlation(&dec, j, i)) {
            (Ok(a), Ok(b)) => {
                prop_assert_eq!(a.global_normalized.to_bits(), b.global_normalized.to_bits());
                prop_assert!(a.global_normalized <= 1.0 + 1e-12);
            }
            (Err(Error::EmptyProduct(_)), Err(Error::EmptyProduct(_))) => {}
            (a, b) => prop_assert!(false, "asymmetric outcome: {:?} / {:?}", a.err(), b.err()),
        }
    }

    #[test]
    fn solvers_agree_on_spectrum(g in connected_graph(14)) {
        let registry = SolverRegistry::default();
        let l = g.laplacian();
        let spectra: Vec<Vec<f64>> = registry
            .names()
            .map(|name| eigendecompose_with(&l, registry.get(name).unwrap()).unwrap().eigenvalues().to_vec())
            .collect();
        for pair in spectra.windows(2) {
            for (a, b) in pair[0].iter().zip(&pair[1]) {
                prop_assert!((a - b).abs() <= 1e-10 * (1.0 + a.abs()));
            }
        }
    }

    #[test]
    fn decomposition_is_deterministic(g in connected_graph(18)) {
        let a = eigendecompose(&g.laplacian()).unwrap();
        let b = eigendecompose(&g.laplacian()).unwrap();
        prop_assert_eq!(a, b);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn time_scale_is_the_unique_root(log_mu in -2.0..2.0f64, log_ratio in 0.0..6.0f64) {
        let mu = 10f64.powf(log_mu);
        let lambda = mu * 10f64.powf(log_ratio);
        let ts = solve_time_scale(lambda, mu).unwrap();
        prop_assert!(ts.residual <= 1e-12);
        // Strictly decreasing characteristic: sign change exactly at t*.
        prop_assert!(characteristic(lambda, mu, ts.t_star * (1.0 - 1e-9)) > 0.0);
        prop_assert!(characteristic(lambda, mu, ts.t_star * (1.0 + 1e-9)) < 0.0);
        prop_assert_eq!(solve_time_scale(mu, lambda).unwrap().t_star, ts.t_star);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn time_scale_monotone_and_scaling(mu in 0.01..100.0f64, r in 1.0..1e4f64, bump in 1.0001..2.0f64, c in 1e-3..1e3f64) {
        let lambda = mu * r;
        let base = solve_time_scale(lambda, mu).unwrap().t_star;
        prop_assert!(solve_time_scale(lambda * bump, mu).unwrap().t_star < base);
        prop_assert!(solve_time_scale(lambda, mu * bump.min(r)).unwrap().t_star <= base);
        let scaled = solve_time_scale(c * lambda, c * mu).unwrap().t_star * c;
        prop_assert!((scaled - base).abs() <= 1e-10 * base.max(1.0));
    }

    #[test]
    fn torus_operations_preserve_reality(mu_idx in 0usize..5, lambda_idx in 0usize..5, seed: u64, t in 0.0..0.5f64) {
        let mus = [1u64, 2, 5, 25, 65];
        let f = random_wave(mus[mu_idx], seed).unwrap();
        let g = random_wave(mus[lambda_idx], seed.wrapping_add(1)).unwrap();
        let fg = f.product(&g).unwrap();
        prop_assert!(fg.is_real());
        prop_assert!(fg.heat(t).unwrap().is_real());
        prop_assert!(torus_local_correlation(&f, &g, t.max(1e-6)).unwrap().is_real());
        prop_assert!((fg.grid_norm_sq(64) - fg.norm_sq()).abs() <= 1e-9);
    }

    #[test]
    fn torus_product_masses_sum_to_one(a in 1i64..15, b in 1i64..15, c in 0i64..15) {
        let f = TrigPolynomial::sin_mode(2, [a, c]).unwrap();
        let g = TrigPolynomial::cos_mode(2, [c, b]).unwrap();
        let masses = heatcorr::torus_product_spectrum(&f, &g).unwrap();
        prop_assert!((masses.values().sum::<f64>() - 1.0).abs() <= 1e-12);
    }
}
