//! Local and global correlation of eigenvector pairs.
//!
//! For eigenvectors `phi_i`, `phi_j` and heat kernel `p(t, u, v)` the local
//! correlation at vertex `u` is
//!
//! ```text
//! sum_v p(t,u,v) (phi_j(v) - phi_j(u)) (phi_i(v) - phi_i(u))
//! ```
//!
//! and it satisfies, for every `t >= 0`,
//!
//! ```text
//! exp(-tL)(phi_i phi_j) = (exp(-lambda_i t) + exp(-lambda_j t) - 1) phi_i phi_j + local(t)
//! ```
//!
//! At the characteristic time `t*` the middle coefficient vanishes, so the
//! heat-evolved product *is* the local correlation. The local term here is
//! always evaluated by the direct kernel sum, never through the identity, so
//! [`verify_identity`] compares two independent computations.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::norm;
use crate::spectral::{ClusterMass, SpectralDecomposition};
use crate::timescale::solve_time_scale;
use crate::tol;

/// Local correlation vector at time `t > 0`, by direct heat-kernel sum.
pub fn local_correlation(
    dec: &SpectralDecomposition,
    i: usize,
    j: usize,
    t: f64,
) -> Result<Vec<f64>> {
    dec.check_index(i)?;
    dec.check_index(j)?;
    if !(t > 0.0) {
        return Err(Error::NonPositiveTime(t));
    }
    let kernel = dec.heat_kernel(t)?;
    let a = dec.eigenvector(i);
    let b = dec.eigenvector(j);
    Ok((0..dec.n())
        .map(|u| {
            let (au, bu) = (a[u], b[u]);
            kernel
                .row(u)
                .iter()
                .zip(a.iter().zip(b))
                .map(|(p, (av, bv))| p * (bv - bu) * (av - au))
                .sum()
        })
        .collect())
}

/// `||exp(-tL)(phi_i phi_j) - (exp(-lambda_i t) + exp(-lambda_j t) - 1) phi_i phi_j - local||`.
pub fn verify_identity(dec: &SpectralDecomposition, i: usize, j: usize, t: f64) -> Result<f64> {
    let local = local_correlation(dec, i, j, t)?;
    let product = dec.hadamard(i, j)?;
    let evolved = dec.heat_evolve(&product, t)?;
    let middle = (-dec.eigenvalue(i) * t).exp() + (-dec.eigenvalue(j) * t).exp() - 1.0;
    Ok(residual_norm(&evolved, &product, middle, &local))
}

fn residual_norm(evolved: &[f64], product: &[f64], middle: f64, local: &[f64]) -> f64 {
    evolved
        .iter()
        .zip(product)
        .zip(local)
        .map(|((e, p), l)| (e - middle * p - l).powi(2))
        .sum::<f64>()
        .sqrt()
}

/// Global correlation of one eigenvector pair at its characteristic time.
#[derive(Debug, Clone, Serialize)]
pub struct CorrelationReport {
    /// Canonical order, `i <= j` (so `lambda_i <= lambda_j`).
    pub pair: (usize, usize),
    pub lambda_i: f64,
    pub lambda_j: f64,
    pub t_star: f64,
    pub local: Vec<f64>,
    /// `||local||_2`.
    pub global_raw: f64,
    /// `||local||_2 / ||phi_i phi_j||_2`.
    pub global_normalized: f64,
    pub product_norm: f64,
    pub identity_residual: f64,
    /// `||exp(-t* L)(phi_i phi_j) - local||_2`.
    pub heat_local_gap: f64,
    /// Fraction of product mass on eigenvalues `<= 1 / t*`.
    pub mass_below_cutoff: f64,
}

impl CorrelationReport {
    pub fn identity_holds(&self) -> bool {
        self.identity_residual <= tol::IDENTITY_TOL * (1.0 + self.product_norm)
    }

    pub fn summary(&self) -> PairEntry {
        PairEntry {
            i: self.pair.0,
            j: self.pair.1,
            lambda_i: self.lambda_i,
            lambda_j: self.lambda_j,
            t_star: self.t_star,
            global_normalized: self.global_normalized,
            identity_residual: self.identity_residual,
            mass_below_cutoff: self.mass_below_cutoff,
        }
    }
}

fn admissible_pair(dec: &SpectralDecomposition, i: usize, j: usize) -> Result<(usize, usize)> {
    dec.check_index(i)?;
    dec.check_index(j)?;
    let (i, j) = if i <= j { (i, j) } else { (j, i) };
    if i == 1 {
        return Err(Error::ConstantEigenvectorExcluded { i, j });
    }
    Ok((i, j))
}

/// Computes the global correlation of `(phi_i, phi_j)` at `t*`. Requires
/// `i, j >= 2`; the pair is reordered so that `i <= j`.
pub fn global_correlation(
    dec: &SpectralDecomposition,
    i: usize,
    j: usize,
) -> Result<CorrelationReport> {
    let (i, j) = admissible_pair(dec, i, j)?;
    let spectrum = dec.product_spectrum(i, j)?;
    spectrum.check_nonempty()?;
    let (lambda_i, lambda_j) = (dec.eigenvalue(i), dec.eigenvalue(j));
    let ts = solve_time_scale(lambda_j, lambda_i)?;
    let t = ts.t_star;

    let local = local_correlation(dec, i, j, t)?;
    let product = dec.hadamard(i, j)?;
    let evolved = dec.heat_evolve(&product, t)?;
    let middle = (-lambda_i * t).exp() + (-lambda_j * t).exp() - 1.0;
    let identity_residual = residual_norm(&evolved, &product, middle, &local);
    let heat_local_gap = residual_norm(&evolved, &product, 0.0, &local);

    let product_norm = spectrum.total_mass.sqrt();
    let global_raw = norm(&local);
    Ok(CorrelationReport {
        pair: (i, j),
        lambda_i,
        lambda_j,
        t_star: t,
        global_raw,
        global_normalized: global_raw / product_norm,
        product_norm,
        identity_residual,
        heat_local_gap,
        mass_below_cutoff: spectrum.mass_below(1.0 / t)?,
        local,
    })
}

/// Upper bound on low-frequency mass from a small global correlation.
#[derive(Debug, Clone, Serialize)]
pub struct LowMassUpper {
    pub pair: (usize, usize),
    pub delta: f64,
    /// `1 / t*`.
    pub cutoff: f64,
    /// `delta^2 e^2 ||phi_i phi_j||^2`.
    pub bound: f64,
    /// Absolute product mass on eigenvalues `<= cutoff`.
    pub actual: f64,
}

impl LowMassUpper {
    pub fn holds(&self) -> bool {
        self.actual <= self.bound + tol::IDENTITY_TOL
    }
}

/// `sum_{lambda_k <= 1/t*} c_k^2 <= delta^2 e^2 ||phi_i phi_j||^2`, with
/// `delta` the normalized global correlation.
///
/// Follows from `||exp(-t*L) P||^2 >= exp(-2 t* Lambda) sum_{lambda_k <= Lambda} c_k^2`
/// with `Lambda = 1/t*`.
pub fn corollary_low_mass_upper(
    dec: &SpectralDecomposition,
    i: usize,
    j: usize,
) -> Result<LowMassUpper> {
    let report = global_correlation(dec, i, j)?;
    low_mass_upper(dec, &report)
}

fn low_mass_upper(dec: &SpectralDecomposition, report: &CorrelationReport) -> Result<LowMassUpper> {
    let (i, j) = report.pair;
    let spectrum = dec.product_spectrum(i, j)?;
    let delta = report.global_normalized;
    let cutoff = 1.0 / report.t_star;
    let e2 = std::f64::consts::E.powi(2);
    Ok(LowMassUpper {
        pair: report.pair,
        delta,
        cutoff,
        bound: delta * delta * e2 * spectrum.total_mass,
        actual: spectrum.absolute_mass_below(cutoff)?,
    })
}

/// Lower bound on low-frequency mass from a large global correlation.
#[derive(Debug, Clone, Serialize)]
pub struct LowMassLower {
    pub pair: (usize, usize),
    pub c: f64,
    pub delta: f64,
    /// `c / t*`.
    pub cutoff: f64,
    /// `max(0, (delta^2 e^{2c} - 1) / (e^{2c} - 1))`.
    pub bound: f64,
    /// Fraction of product mass on eigenvalues `<= cutoff`.
    pub actual: f64,
}

impl LowMassLower {
    pub fn holds(&self) -> bool {
        self.actual >= self.bound - tol::IDENTITY_TOL
    }
}

/// Fraction of product mass on `lambda_k <= c / t*` is at least
/// `(delta^2 e^{2c} - 1) / (e^{2c} - 1)`.
pub fn corollary_low_mass_lower(
    dec: &SpectralDecomposition,
    i: usize,
    j: usize,
    c: f64,
) -> Result<LowMassLower> {
    let report = global_correlation(dec, i, j)?;
    low_mass_lower(dec, &report, c)
}

fn low_mass_lower(
    dec: &SpectralDecomposition,
    report: &CorrelationReport,
    c: f64,
) -> Result<LowMassLower> {
    if !(c > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "c must be positive, got {c}"
        )));
    }
    let (i, j) = report.pair;
    let spectrum = dec.product_spectrum(i, j)?;
    let delta = report.global_normalized;
    let cutoff = c / report.t_star;
    Ok(LowMassLower {
        pair: report.pair,
        c,
        delta,
        cutoff,
        bound: lower_bound(delta, c),
        actual: spectrum.mass_below(cutoff)?,
    })
}

/// `max(0, (delta^2 e^{2c} - 1) / (e^{2c} - 1))`, evaluated through
/// `e^{-2c}` so large `c` does not overflow.
pub fn lower_bound(delta: f64, c: f64) -> f64 {
    let decay = (-2.0 * c).exp();
    ((delta * delta - decay) / (1.0 - decay)).max(0.0)
}

/// Both corollaries for one pair, sharing one correlation computation.
#[derive(Debug, Clone, Serialize)]
pub struct CorollaryCheck {
    pub upper: LowMassUpper,
    pub lower: Vec<LowMassLower>,
}

impl CorollaryCheck {
    pub fn holds(&self) -> bool {
        self.upper.holds() && self.lower.iter().all(LowMassLower::holds)
    }
}

pub fn check_corollaries(
    dec: &SpectralDecomposition,
    report: &CorrelationReport,
    cs: &[f64],
) -> Result<CorollaryCheck> {
    Ok(CorollaryCheck {
        upper: low_mass_upper(dec, report)?,
        lower: cs
            .iter()
            .map(|&c| low_mass_lower(dec, report, c))
            .collect::<Result<_>>()?,
    })
}

/// One row of a pair scan.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PairEntry {
    pub i: usize,
    pub j: usize,
    pub lambda_i: f64,
    pub lambda_j: f64,
    pub t_star: f64,
    pub global_normalized: f64,
    pub identity_residual: f64,
    pub mass_below_cutoff: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct Outlier {
    #[serde(flatten)]
    pub entry: PairEntry,
    /// Signed distance from the mean in standard deviations.
    pub sigmas: f64,
    pub total_mass: f64,
    pub cluster_mass: Vec<ClusterMass>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SkippedPair {
    pub i: usize,
    pub j: usize,
    pub reason: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct PairScanReport {
    pub n: usize,
    pub entries: Vec<PairEntry>,
    pub mean: f64,
    /// Population standard deviation of `global_normalized`.
    pub stddev: f64,
    /// Mean over distinct pairs `i < j` only. Diagonal products `phi_i^2`
    /// carry an undamped constant component, which lifts their correlation.
    pub distinct_mean: f64,
    pub distinct_stddev: f64,
    pub max_identity_residual: f64,
    pub outlier_sigmas: f64,
    pub outliers: Vec<Outlier>,
    pub skipped: Vec<SkippedPair>,
}

/// Mean and population standard deviation; zeros for an empty input.
fn mean_stddev(values: impl Iterator<Item = f64> + Clone) -> (f64, f64) {
    let count = values.clone().count().max(1) as f64;
    let mean = values.clone().sum::<f64>() / count;
    let var = values.map(|x| (x - mean).powi(2)).sum::<f64>() / count;
    (mean, var.sqrt())
}

/// All pairs `2 <= i <= j <= n`, in ascending `(i, j)` order.
pub fn scan_pairs(n: usize) -> Vec<(usize, usize)> {
    (2..=n).flat_map(|i| (i..=n).map(move |j| (i, j))).collect()
}

/// Global correlation of every admissible pair, computed in parallel on the
/// current rayon pool. Pairs whose product vanishes are listed in `skipped`.
pub fn pair_scan(dec: &SpectralDecomposition) -> Result<PairScanReport> {
    let n = dec.n();
    if n < 3 {
        return Err(Error::InvalidArgument(format!(
            "pair scan needs n >= 3, got {n}"
        )));
    }
    let results: Vec<_> = scan_pairs(n)
        .into_par_iter()
        .map(|(i, j)| (i, j, global_correlation(dec, i, j).map(|r| r.summary())))
        .collect();

    let mut entries = Vec::with_capacity(results.len());
    let mut skipped = Vec::new();
    for (i, j, result) in results {
        match result {
            Ok(entry) => entries.push(entry),
            Err(e @ Error::EmptyProduct(_)) => skipped.push(SkippedPair {
                i,
                j,
                reason: e.to_string(),
            }),
            Err(e) => return Err(e),
        }
    }

    let (mean, stddev) = mean_stddev(entries.iter().map(|e| e.global_normalized));
    let (distinct_mean, distinct_stddev) = mean_stddev(
        entries
            .iter()
            .filter(|e| e.i != e.j)
            .map(|e| e.global_normalized),
    );
    let max_identity_residual = entries
        .iter()
        .map(|e| e.identity_residual)
        .fold(0.0, f64::max);

    let mut outliers = Vec::new();
    for e in &entries {
        let sigmas = if stddev > 0.0 {
            (e.global_normalized - mean) / stddev
        } else {
            0.0
        };
        if sigmas.abs() > tol::OUTLIER_SIGMAS {
            let spectrum = dec.product_spectrum(e.i, e.j)?;
            outliers.push(Outlier {
                entry: e.clone(),
                sigmas,
                total_mass: spectrum.total_mass,
                cluster_mass: spectrum.cluster_mass,
            });
        }
    }

    Ok(PairScanReport {
        n,
        entries,
        mean,
        stddev,
        distinct_mean,
        distinct_stddev,
        max_identity_residual,
        outlier_sigmas: tol::OUTLIER_SIGMAS,
        outliers,
        skipped,
    })
}

/// Outcome of checking the identity on random `(i, j, t)` triples.
#[derive(Debug, Clone, Serialize)]
pub struct IdentitySuite {
    pub samples: usize,
    pub max_residual: f64,
    /// Largest `residual / (1 + ||phi_i phi_j||)`.
    pub max_scaled_residual: f64,
    pub worst: (usize, usize, f64),
}

impl IdentitySuite {
    pub fn holds(&self) -> bool {
        self.max_scaled_residual <= tol::IDENTITY_TOL
    }
}

/// Draws `i, j` uniformly from `1..=n` and `t` uniformly from
/// `(0, 10 / lambda_2]`.
pub fn identity_suite(
    dec: &SpectralDecomposition,
    samples: usize,
    seed: u64,
) -> Result<IdentitySuite> {
    let n = dec.n();
    if n < 2 {
        return Err(Error::InvalidArgument("identity suite needs n >= 2".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let t_max = 10.0 / dec.eigenvalue(2);
    let triples: Vec<(usize, usize, f64)> = (0..samples)
        .map(|_| {
            let i = rng.random_range(1..=n);
            let j = rng.random_range(1..=n);
            let t = t_max * (1.0 - rng.random::<f64>());
            (i, j, t)
        })
        .collect();

    let residuals: Vec<(f64, f64)> = triples
        .par_iter()
        .map(|&(i, j, t)| {
            let r = verify_identity(dec, i, j, t)?;
            let scale = 1.0 + norm(&dec.hadamard(i, j)?);
            Ok((r, r / scale))
        })
        .collect::<Result<_>>()?;

    let mut suite = IdentitySuite {
        samples,
        max_residual: 0.0,
        max_scaled_residual: 0.0,
        worst: (0, 0, 0.0),
    };
    for (&(i, j, t), &(r, scaled)) in triples.iter().zip(&residuals) {
        suite.max_residual = suite.max_residual.max(r);
        if scaled >= suite.max_scaled_residual {
            suite.max_scaled_residual = scaled;
            suite.worst = (i, j, t);
        }
    }
    Ok(suite)
}
