//! The characteristic time `t*`: the unique positive root of
//! `exp(-lambda t) + exp(-mu t) = 1`.
//!
//! At `t*` the heat evolution of `phi_mu * phi_lambda` coincides with the
//! local correlation functional. The module also carries the logarithmic
//! bracket `[0.8, 3] * log(e lambda / mu) / lambda` that is usually quoted for
//! `t*`, together with tooling that measures how well it actually holds.
//! The lower constant does not hold: `t*(1, 1) = ln 2 < 0.8`, and the
//! empirical lower constant over `lambda / mu` in `[1, 1e6]` is about 0.59.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::tol::ROOT_TOL;

pub const BRACKET_LOWER: f64 = 0.8;
pub const BRACKET_UPPER: f64 = 3.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TimeScale {
    /// Larger eigenvalue.
    pub lambda: f64,
    /// Smaller eigenvalue.
    pub mu: f64,
    pub t_star: f64,
    /// `|exp(-lambda t*) + exp(-mu t*) - 1|`.
    pub residual: f64,
}

impl TimeScale {
    /// `t* lambda / log(e lambda / mu)`; the bracket claims this lies in
    /// `[0.8, 3]`.
    pub fn bracket_ratio(&self) -> f64 {
        self.t_star * self.lambda / log_ratio(self.lambda, self.mu)
    }

    pub fn within_bracket(&self) -> bool {
        let (lo, hi) = bracket(self.lambda, self.mu);
        (lo..=hi).contains(&self.t_star)
    }
}

fn log_ratio(lambda: f64, mu: f64) -> f64 {
    1.0 + (lambda / mu).ln()
}

fn canonical(a: f64, b: f64) -> Result<(f64, f64)> {
    let (lambda, mu) = if a >= b { (a, b) } else { (b, a) };
    if !(mu > 0.0) || !lambda.is_finite() {
        return Err(Error::NonPositiveEigenvalue { lambda, mu });
    }
    Ok((lambda, mu))
}

/// `exp(-lambda t) + exp(-mu t) - 1`, written with `exp_m1` so it stays
/// accurate when `mu t` is tiny.
pub fn characteristic(lambda: f64, mu: f64, t: f64) -> f64 {
    (-lambda * t).exp() + (-mu * t).exp_m1()
}

/// Solves for `t*` by bisection. The arguments may come in either order.
///
/// `g(t) = exp(-lambda t) + exp(-mu t) - 1` falls strictly from 1 to -1, so
/// the root is unique. The bracket starts at `[0, ln 2 / mu]` and doubles
/// until `g < 0`; bisection stops once `|g| <= ROOT_TOL` and the bracket is
/// down to a few ulps of `t`.
pub fn solve_time_scale(lambda: f64, mu: f64) -> Result<TimeScale> {
    let (lambda, mu) = canonical(lambda, mu)?;
    let g = |t: f64| characteristic(lambda, mu, t);

    let mut lo = 0.0;
    let mut hi = std::f64::consts::LN_2 / mu;
    while g(hi) > 0.0 {
        lo = hi;
        hi *= 2.0;
    }

    let mut t = 0.5 * (lo + hi);
    loop {
        let gt = g(t);
        if gt > 0.0 {
            lo = t;
        } else {
            hi = t;
        }
        let next = 0.5 * (lo + hi);
        let converged = gt.abs() <= ROOT_TOL && hi - lo <= 4.0 * f64::EPSILON * t;
        if converged || next == lo || next == hi || gt == 0.0 {
            break;
        }
        t = next;
    }
    Ok(TimeScale {
        lambda,
        mu,
        t_star: t,
        residual: g(t).abs(),
    })
}

fn bracket(lambda: f64, mu: f64) -> (f64, f64) {
    let base = log_ratio(lambda, mu) / lambda;
    (BRACKET_LOWER * base, BRACKET_UPPER * base)
}

/// `(0.8, 3) * log(e lambda / mu) / lambda`.
pub fn timescale_bounds(lambda: f64, mu: f64) -> Result<(f64, f64)> {
    let (lambda, mu) = canonical(lambda, mu)?;
    Ok(bracket(lambda, mu))
}

/// Result of sampling the bracket over random `(lambda, mu)`.
#[derive(Debug, Clone, Serialize)]
pub struct BracketSurvey {
    pub samples: usize,
    pub max_residual: f64,
    /// Smallest and largest `t* lambda / log(e lambda / mu)` seen.
    pub empirical_lower: f64,
    pub empirical_upper: f64,
    pub lower_violations: usize,
    pub upper_violations: usize,
    /// Worst relative deviation of `c t*(c lambda, c mu)` from `t*(lambda, mu)`
    /// for `c` in `{1e-3, 1e3}`.
    pub max_scaling_error: f64,
    /// Same, as an absolute difference `|c t*(c lambda, c mu) - t*(lambda, mu)|`.
    pub max_scaling_abs_error: f64,
}

/// Samples `mu` log-uniformly in `[1e-2, 1e2]` and `lambda / mu`
/// log-uniformly in `[1, 1e6]`.
pub fn survey_bracket(samples: usize, seed: u64) -> Result<BracketSurvey> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut survey = BracketSurvey {
        samples,
        max_residual: 0.0,
        empirical_lower: f64::INFINITY,
        empirical_upper: 0.0,
        lower_violations: 0,
        upper_violations: 0,
        max_scaling_error: 0.0,
        max_scaling_abs_error: 0.0,
    };
    for _ in 0..samples {
        let mu = 10f64.powf(rng.random_range(-2.0..=2.0));
        let lambda = mu * 10f64.powf(rng.random_range(0.0..=6.0));
        let ts = solve_time_scale(lambda, mu)?;
        survey.max_residual = survey.max_residual.max(ts.residual);
        let ratio = ts.bracket_ratio();
        survey.empirical_lower = survey.empirical_lower.min(ratio);
        survey.empirical_upper = survey.empirical_upper.max(ratio);
        if ratio < BRACKET_LOWER {
            survey.lower_violations += 1;
        }
        if ratio > BRACKET_UPPER {
            survey.upper_violations += 1;
        }
        for c in [1e-3, 1e3] {
            let scaled = solve_time_scale(c * lambda, c * mu)?;
            let abs = (scaled.t_star * c - ts.t_star).abs();
            survey.max_scaling_error = survey.max_scaling_error.max(abs / ts.t_star);
            survey.max_scaling_abs_error = survey.max_scaling_abs_error.max(abs);
        }
    }
    Ok(survey)
}

#[derive(Debug, Clone, Serialize)]
pub struct InequalityCheck {
    pub description: &'static str,
    pub interval: (f64, f64),
    pub samples: usize,
    /// Smallest signed margin; positive means the inequality held everywhere.
    pub min_margin: f64,
    pub argmin: f64,
    pub violations: usize,
}

impl InequalityCheck {
    pub fn holds(&self) -> bool {
        self.violations == 0
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ProofInequalityReport {
    pub lower: InequalityCheck,
    pub upper: InequalityCheck,
}

impl ProofInequalityReport {
    pub fn holds(&self) -> bool {
        self.lower.holds() && self.upper.holds()
    }
}

/// Evaluates `(ex)^0.8 + (ex)^(0.8x) >= 1` on `(0, e)` and
/// `ex + (ex)^x < 1` on `(0, 0.02)`, each on `samples` cell midpoints.
pub fn verify_proof_inequalities(samples: usize) -> ProofInequalityReport {
    verify_proof_inequalities_with(samples, samples)
}

pub fn verify_proof_inequalities_with(
    lower_samples: usize,
    upper_samples: usize,
) -> ProofInequalityReport {
    let e = std::f64::consts::E;
    let lower = check_grid(
        "(ex)^0.8 + (ex)^(0.8x) >= 1",
        (0.0, e),
        lower_samples,
        |x| (e * x).powf(0.8) + (e * x).powf(0.8 * x) - 1.0,
        |m| m >= 0.0,
    );
    let upper = check_grid(
        "ex + (ex)^x < 1",
        (0.0, 0.02),
        upper_samples,
        |x| 1.0 - (e * x + (e * x).powf(x)),
        |m| m > 0.0,
    );
    ProofInequalityReport { lower, upper }
}

fn check_grid(
    description: &'static str,
    interval: (f64, f64),
    samples: usize,
    margin: impl Fn(f64) -> f64,
    ok: impl Fn(f64) -> bool,
) -> InequalityCheck {
    let samples = samples.max(1);
    let width = (interval.1 - interval.0) / samples as f64;
    let mut check = InequalityCheck {
        description,
        interval,
        samples,
        min_margin: f64::INFINITY,
        argmin: interval.0,
        violations: 0,
    };
    for k in 0..samples {
        let x = interval.0 + (k as f64 + 0.5) * width;
        let m = margin(x);
        if m < check.min_margin {
            check.min_margin = m;
            check.argmin = x;
        }
        if !ok(m) {
            check.violations += 1;
        }
    }
    check
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent plain bisection on `exp(-a t) + exp(-b t) - 1` over a
    /// generous fixed bracket, run to exhaustion.
    fn oracle(a: f64, b: f64) -> f64 {
        let (mut lo, mut hi) = (0.0f64, 1e4f64);
        for _ in 0..2000 {
            let mid = 0.5 * (lo + hi);
            if (-a * mid).exp() + (-b * mid).exp() > 1.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }

    #[test]
    fn closed_forms() {
        let ts = solve_time_scale(1.0, 1.0).unwrap();
        assert!((ts.t_star - std::f64::consts::LN_2).abs() <= 1e-12);
        assert!(ts.residual <= ROOT_TOL);

        let golden = (1.0 + 5f64.sqrt()) / 2.0;
        let ts = solve_time_scale(2.0, 1.0).unwrap();
        assert!((ts.t_star - golden.ln()).abs() <= 1e-12);
        assert!((ts.t_star - 0.4812118251).abs() < 1e-10);
    }

    #[test]
    fn fifty_to_one_matches_oracle_and_misses_lower_bracket() {
        let ts = solve_time_scale(50.0, 1.0).unwrap();
        let expected = oracle(50.0, 1.0);
        assert!((ts.t_star - expected).abs() <= 1e-12);
        assert!((ts.t_star - 0.0576).abs() < 5e-4);
        let (lo, hi) = timescale_bounds(50.0, 1.0).unwrap();
        let l = 1.0 + 50f64.ln();
        assert!((lo - 0.8 * l / 50.0).abs() < 1e-15);
        assert!((hi - 3.0 * l / 50.0).abs() < 1e-15);
        // The root lies below the claimed lower bound.
        assert!(ts.t_star < lo);
        assert!(!ts.within_bracket());
    }

    #[test]
    fn symmetric_case_is_below_lower_bracket() {
        assert_eq!(timescale_bounds(1.0, 1.0).unwrap(), (0.8, 3.0));
        let ts = solve_time_scale(1.0, 1.0).unwrap();
        assert!(ts.t_star < 0.8);
        assert!((ts.bracket_ratio() - std::f64::consts::LN_2).abs() < 1e-12);
    }

    #[test]
    fn argument_order_and_errors() {
        let a = solve_time_scale(3.0, 7.0).unwrap();
        let b = solve_time_scale(7.0, 3.0).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.lambda, 7.0);
        assert!(matches!(
            solve_time_scale(2.0, 0.0),
            Err(Error::NonPositiveEigenvalue { .. })
        ));
        assert!(matches!(
            solve_time_scale(-1.0, 2.0),
            Err(Error::NonPositiveEigenvalue { .. })
        ));
        assert!(matches!(
            timescale_bounds(1.0, f64::NAN),
            Err(Error::NonPositiveEigenvalue { .. })
        ));
    }

    #[test]
    fn matches_oracle_on_grid() {
        for &mu in &[0.01, 0.3, 1.0, 17.0] {
            for &ratio in &[1.0, 1.5, 10.0, 50.0, 1e3, 1e6] {
                let ts = solve_time_scale(mu * ratio, mu).unwrap();
                let expected = oracle(mu * ratio, mu);
                assert!(
                    (ts.t_star - expected).abs() <= 1e-11 * expected,
                    "mu {mu} ratio {ratio}"
                );
            }
        }
    }

    #[test]
    fn inequality_spot_values() {
        let e = std::f64::consts::E;
        assert!((e.powf(0.8) * 2.0 - 4.45).abs() < 0.01);
        let x: f64 = 0.01;
        assert!((e * x) + (e * x).powf(x) < 1.0);
        let report = verify_proof_inequalities(1000);
        assert!(report.holds(), "{report:?}");
        // Near zero the lower expression tends to 1 from above.
        assert!(report.lower.min_margin >= 0.0 && report.lower.min_margin < 1e-2);
    }

    #[test]
    fn survey_reports_lower_violations() {
        let s = survey_bracket(200, 1).unwrap();
        assert!(s.max_residual <= ROOT_TOL);
        assert!(s.max_scaling_error <= 1e-10);
        assert!(s.lower_violations > 0);
        assert_eq!(s.upper_violations, 0);
        assert!(s.empirical_lower > 0.5 && s.empirical_upper < 0.8);
    }
}
