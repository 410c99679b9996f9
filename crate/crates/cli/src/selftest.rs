//! `heatcorr selftest`: identity suite on the corpus, the scalar inequality
//! grids, time-scale properties and torus exactness.

use heatcorr::correlation::identity_suite;
use heatcorr::spectral::eigendecompose;
use heatcorr::timescale::{solve_time_scale, survey_bracket, verify_proof_inequalities_with};
use heatcorr::torus::{torus_product_spectrum, TrigPolynomial};

use crate::{load_graph, CmdResult, Failure};

/// Graphs covered by the identity suite.
pub const CORPUS: [&str; 9] = [
    "path:10",
    "cycle:12",
    "complete:6",
    "grid:5:5",
    "random:50:100:1",
    "random:50:100:2",
    "random:50:100:3",
    "faulkner-younger-44",
    "thomassen-94",
];

fn verdict(name: &str, pass: bool, detail: String) -> bool {
    println!("{}: {name}: {detail}", if pass { "PASS" } else { "FAIL" });
    pass
}

pub(crate) fn run(samples: usize, seed: u64) -> CmdResult {
    let mut ok = true;

    for (k, source) in CORPUS.iter().enumerate() {
        let graph = load_graph(source)?;
        let dec = eigendecompose(&graph.laplacian())?;
        let suite = identity_suite(&dec, samples, seed.wrapping_add(k as u64))?;
        ok &= verdict(
            &format!("identity {source}"),
            suite.holds(),
            format!(
                "max residual {:.3e} over {} triples",
                suite.max_residual, suite.samples
            ),
        );
    }

    let grid = verify_proof_inequalities_with(100_000, 10_000);
    ok &= verdict(
        "scalar inequalities",
        grid.holds(),
        format!(
            "min margins {:.3e} / {:.3e}",
            grid.lower.min_margin, grid.upper.min_margin
        ),
    );

    let survey = survey_bracket(10_000, seed)?;
    let golden = (1.0 + 5f64.sqrt()) / 2.0;
    let exact = (solve_time_scale(1.0, 1.0)?.t_star - std::f64::consts::LN_2)
        .abs()
        .max((solve_time_scale(2.0, 1.0)?.t_star - golden.ln()).abs());
    ok &= verdict(
        "time scale",
        exact <= 1e-12 && survey.max_residual <= 1e-12 && survey.max_scaling_abs_error <= 1e-10,
        format!(
            "closed forms {exact:.1e}, residual {:.1e}, scaling {:.1e}",
            survey.max_residual, survey.max_scaling_abs_error
        ),
    );
    println!(
        "NOTE: time-scale bracket [0.8, 3] violated below in {}/{} samples (observed ratio range [{:.4}, {:.4}])",
        survey.lower_violations, survey.samples, survey.empirical_lower, survey.empirical_upper
    );

    let mut worst = 0.0f64;
    for n in 1..=20i64 {
        let f = TrigPolynomial::sin_mode(1, [n, 0])?.scale(2.0);
        let g = TrigPolynomial::sin_mode(1, [n + 1, 0])?;
        let masses = torus_product_spectrum(&f, &g)?;
        let k = (2 * n + 1) * (2 * n + 1);
        let err = match (masses.get(&1), masses.get(&k), masses.len()) {
            (Some(a), Some(b), 2) => (a - 0.5).abs().max((b - 0.5).abs()),
            _ => f64::INFINITY,
        };
        worst = worst.max(err);
    }
    ok &= verdict(
        "torus exactness",
        worst <= 1e-12,
        format!("max mass error {worst:.1e}"),
    );

    if ok {
        Ok(())
    } else {
        Err(Failure::CheckFailed("selftest".into()))
    }
}
