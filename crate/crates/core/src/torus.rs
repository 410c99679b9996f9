//! Exact trigonometric-polynomial arithmetic on the flat tori `T^1` and `T^2`.
//!
//! Functions live on `[0, 2pi)^d` with the normalized measure. Mode `m` is
//! `exp(i <m, x>)` with Laplacian eigenvalue `|m|^2`, so `sin(n x)` has
//! eigenvalue `n^2` and `||f||^2 = sum |c_m|^2`.
//!
//! Frequencies are stored as `[i64; 2]`; on `T^1` the second component is
//! always zero.

use std::collections::BTreeMap;

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::timescale::solve_time_scale;
use crate::tol::{COEFF_TOL, MASS_TOL};

pub type Frequency = [i64; 2];

/// Real-valued finite Fourier series on `T^dim`, `dim` in `{1, 2}`.
#[derive(Debug, Clone, PartialEq)]
pub struct TrigPolynomial {
    dim: usize,
    coeffs: BTreeMap<Frequency, Complex64>,
}

fn neg(m: Frequency) -> Frequency {
    [-m[0], -m[1]]
}

fn check_dim(dim: usize) -> Result<()> {
    if dim == 1 || dim == 2 {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!(
            "torus dimension must be 1 or 2, got {dim}"
        )))
    }
}

impl TrigPolynomial {
    pub fn zero(dim: usize) -> Result<Self> {
        check_dim(dim)?;
        Ok(Self {
            dim,
            coeffs: BTreeMap::new(),
        })
    }

    pub fn constant(dim: usize, value: f64) -> Result<Self> {
        Self::from_modes(dim, [([0, 0], Complex64::new(value, 0.0))])
    }

    /// Builds from `(frequency, coefficient)` pairs; repeated frequencies are
    /// summed. Fails unless `c_{-m} = conj(c_m)`.
    pub fn from_modes(
        dim: usize,
        modes: impl IntoIterator<Item = (Frequency, Complex64)>,
    ) -> Result<Self> {
        check_dim(dim)?;
        let mut coeffs: BTreeMap<Frequency, Complex64> = BTreeMap::new();
        for (m, c) in modes {
            if dim == 1 && m[1] != 0 {
                return Err(Error::InvalidArgument(format!(
                    "frequency {m:?} on a 1-torus"
                )));
            }
            *coeffs.entry(m).or_default() += c;
        }
        let poly = Self { dim, coeffs }.pruned();
        if !poly.is_real() {
            return Err(Error::InvalidArgument(
                "coefficients are not conjugate-symmetric".into(),
            ));
        }
        Ok(poly)
    }

    /// `cos(<m, x>)`.
    pub fn cos_mode(dim: usize, m: Frequency) -> Result<Self> {
        let half = Complex64::new(0.5, 0.0);
        Self::from_modes(dim, [(m, half), (neg(m), half)])
    }

    /// `sin(<m, x>)`.
    pub fn sin_mode(dim: usize, m: Frequency) -> Result<Self> {
        let c = Complex64::new(0.0, -0.5);
        Self::from_modes(dim, [(m, c), (neg(m), c.conj())])
    }

    fn pruned(mut self) -> Self {
        self.coeffs.retain(|_, c| c.norm() > COEFF_TOL);
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn coeffs(&self) -> &BTreeMap<Frequency, Complex64> {
        &self.coeffs
    }

    pub fn coeff(&self, m: Frequency) -> Complex64 {
        self.coeffs.get(&m).copied().unwrap_or_default()
    }

    pub fn support(&self) -> impl Iterator<Item = Frequency> + '_ {
        self.coeffs.keys().copied()
    }

    /// Conjugate symmetry, checked to `COEFF_TOL`.
    pub fn is_real(&self) -> bool {
        self.coeffs
            .iter()
            .all(|(m, c)| (self.coeff(neg(*m)) - c.conj()).norm() <= COEFF_TOL)
    }

    /// `||f||^2 = sum |c_m|^2`.
    pub fn norm_sq(&self) -> f64 {
        self.coeffs.values().map(|c| c.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    fn check_same_dim(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                actual: other.dim,
            });
        }
        Ok(())
    }

    pub fn scale(&self, s: f64) -> Self {
        Self {
            dim: self.dim,
            coeffs: self.coeffs.iter().map(|(m, c)| (*m, c * s)).collect(),
        }
        .pruned()
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_dim(other)?;
        let mut coeffs = self.coeffs.clone();
        for (m, c) in &other.coeffs {
            *coeffs.entry(*m).or_default() += c;
        }
        Ok(Self {
            dim: self.dim,
            coeffs,
        }
        .pruned())
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(-1.0))
    }

    /// Pointwise product: `(fg)_k = sum_m f_m g_{k-m}`.
    pub fn product(&self, other: &Self) -> Result<Self> {
        self.check_same_dim(other)?;
        let mut coeffs: BTreeMap<Frequency, Complex64> = BTreeMap::new();
        for (m, a) in &self.coeffs {
            for (k, b) in &other.coeffs {
                *coeffs.entry([m[0] + k[0], m[1] + k[1]]).or_default() += a * b;
            }
        }
        Ok(Self {
            dim: self.dim,
            coeffs,
        }
        .pruned())
    }

    /// Heat flow: `c_m -> exp(-|m|^2 t) c_m`.
    pub fn heat(&self, t: f64) -> Result<Self> {
        if !(t >= 0.0) {
            return Err(Error::NegativeTime(t));
        }
        let coeffs = self
            .coeffs
            .iter()
            .map(|(m, c)| (*m, c * (-(freq_sq(*m) as f64) * t).exp()))
            .collect();
        Ok(Self {
            dim: self.dim,
            coeffs,
        }
        .pruned())
    }

    /// Real part of `sum c_m exp(i <m, x>)`.
    pub fn eval(&self, x: [f64; 2]) -> f64 {
        self.coeffs
            .iter()
            .map(|(m, c)| {
                let phase = m[0] as f64 * x[0] + m[1] as f64 * x[1];
                c.re * phase.cos() - c.im * phase.sin()
            })
            .sum()
    }

    /// Mean of `f^2` over a uniform `samples^dim` grid. Equals `norm_sq`
    /// whenever every frequency component is below `samples / 2`.
    pub fn grid_norm_sq(&self, samples: usize) -> f64 {
        let h = std::f64::consts::TAU / samples as f64;
        let rows = if self.dim == 2 { samples } else { 1 };
        let mut acc = 0.0;
        for a in 0..samples {
            for b in 0..rows {
                let v = self.eval([a as f64 * h, b as f64 * h]);
                acc += v * v;
            }
        }
        acc / (samples * rows) as f64
    }

    /// Common `|m|^2` of the support, if there is one. The zero polynomial
    /// has none.
    pub fn eigenvalue(&self) -> Option<i64> {
        let mut it = self.support().map(freq_sq);
        let first = it.next()?;
        it.all(|e| e == first).then_some(first)
    }

    /// Mass `sum |c_m|^2` grouped by `|m|^2`.
    pub fn spectrum(&self) -> BTreeMap<i64, f64> {
        let mut out = BTreeMap::new();
        for (m, c) in &self.coeffs {
            *out.entry(freq_sq(*m)).or_insert(0.0) += c.norm_sqr();
        }
        out
    }
}

pub fn freq_sq(m: Frequency) -> i64 {
    m[0] * m[0] + m[1] * m[1]
}

#[derive(Serialize, Deserialize)]
struct ModeWire {
    m: Vec<i64>,
    re: f64,
    im: f64,
}

#[derive(Serialize, Deserialize)]
struct PolyWire {
    dim: usize,
    modes: Vec<ModeWire>,
}

impl Serialize for TrigPolynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let modes = self
            .coeffs
            .iter()
            .map(|(m, c)| ModeWire {
                m: m[..self.dim].to_vec(),
                re: c.re,
                im: c.im,
            })
            .collect();
        PolyWire {
            dim: self.dim,
            modes,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for TrigPolynomial {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let wire = PolyWire::deserialize(d)?;
        let modes = wire
            .modes
            .into_iter()
            .map(|mode| {
                if mode.m.len() != wire.dim {
                    return Err(D::Error::custom("mode length does not match dim"));
                }
                let m = [mode.m[0], mode.m.get(1).copied().unwrap_or(0)];
                Ok((m, Complex64::new(mode.re, mode.im)))
            })
            .collect::<std::result::Result<Vec<_>, _>>()?;
        TrigPolynomial::from_modes(wire.dim, modes).map_err(D::Error::custom)
    }
}

/// Pointwise product of two polynomials.
pub fn trig_product(f: &TrigPolynomial, g: &TrigPolynomial) -> Result<TrigPolynomial> {
    f.product(g)
}

pub fn trig_heat(f: &TrigPolynomial, t: f64) -> Result<TrigPolynomial> {
    f.heat(t)
}

/// All `m` in `Z^2` with `|m|^2 = mu`, in lexicographic order.
pub fn lattice_points(mu: u64) -> Vec<Frequency> {
    let mu = mu as i64;
    let r = isqrt(mu);
    let mut out = Vec::new();
    for a in -r..=r {
        let rem = mu - a * a;
        let b = isqrt(rem);
        if b * b == rem {
            out.push([a, -b]);
            if b > 0 {
                out.push([a, b]);
            }
        }
    }
    out
}

fn isqrt(x: i64) -> i64 {
    let mut r = (x as f64).sqrt() as i64;
    while r * r > x {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= x {
        r += 1;
    }
    r
}

/// Arithmetic random wave on `T^2`: i.i.d. standard complex Gaussian
/// coefficients on the lattice circle `|m|^2 = mu`, conjugate-symmetrized and
/// scaled to unit norm.
///
/// The generator is ChaCha8 seeded with `seed`; each coefficient consumes two
/// standard normals (real part first), drawn for the lexicographically larger
/// member of every `{m, -m}` pair in [`lattice_points`] order.
pub fn random_wave(mu: u64, seed: u64) -> Result<TrigPolynomial> {
    if mu == 0 {
        return Err(Error::InvalidArgument("random wave needs mu > 0".into()));
    }
    let points = lattice_points(mu);
    if points.is_empty() {
        return Err(Error::EmptyFrequencySet(mu));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut modes = Vec::with_capacity(points.len());
    for &m in &points {
        if m <= neg(m) {
            continue;
        }
        let re: f64 = StandardNormal.sample(&mut rng);
        let im: f64 = StandardNormal.sample(&mut rng);
        let a = Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2;
        modes.push((m, a));
        modes.push((neg(m), a.conj()));
    }
    let wave = TrigPolynomial::from_modes(2, modes)?;
    let norm = wave.norm();
    Ok(wave.scale(1.0 / norm))
}

/// Heat-kernel local correlation on the torus,
/// `int p(t,x,y) (f(y) - f(x)) (g(y) - g(x)) dy`, expanded as
/// `e^{t Delta}(fg) - f e^{t Delta} g - g e^{t Delta} f + fg`.
///
/// Valid for any pair of polynomials, eigenfunctions or not.
pub fn torus_local_correlation(
    f: &TrigPolynomial,
    g: &TrigPolynomial,
    t: f64,
) -> Result<TrigPolynomial> {
    let fg = f.product(g)?;
    let heat_fg = fg.heat(t)?;
    let f_heat_g = f.product(&g.heat(t)?)?;
    let g_heat_f = g.product(&f.heat(t)?)?;
    heat_fg.sub(&f_heat_g)?.sub(&g_heat_f)?.add(&fg)
}

fn check_eigenfunction(f: &TrigPolynomial, eigenvalue: f64) -> Result<()> {
    let target = eigenvalue.round() as i64;
    for m in f.support() {
        let e = freq_sq(m);
        if (e as f64 - eigenvalue).abs() > 1e-9 {
            return Err(Error::NotAnEigenfunction {
                expected: target,
                found: e,
            });
        }
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TorusCorrelation {
    pub mu: f64,
    pub lambda: f64,
    pub t_star: f64,
    /// `||e^{t* Delta}(f g)|| / ||f g||`.
    pub global_normalized: f64,
    /// `1 - exp(-t* mu)`.
    pub predicted: f64,
}

impl TorusCorrelation {
    pub fn ratio(&self) -> f64 {
        self.global_normalized / self.predicted
    }
}

/// Normalized global correlation of two torus eigenfunctions at `t*`.
///
/// At `t*` the local correlation equals the heat-evolved product, so the
/// norm is read off in Fourier space.
pub fn torus_global_correlation(
    f_mu: &TrigPolynomial,
    f_lambda: &TrigPolynomial,
    mu: f64,
    lambda: f64,
) -> Result<TorusCorrelation> {
    check_eigenfunction(f_mu, mu)?;
    check_eigenfunction(f_lambda, lambda)?;
    let ts = solve_time_scale(lambda, mu)?;
    let product = f_mu.product(f_lambda)?;
    let mass = product.norm_sq();
    if mass < MASS_TOL {
        return Err(Error::EmptyProduct(mass));
    }
    let evolved = product.heat(ts.t_star)?;
    Ok(TorusCorrelation {
        mu: ts.mu,
        lambda: ts.lambda,
        t_star: ts.t_star,
        global_normalized: (evolved.norm_sq() / mass).sqrt(),
        predicted: -(-ts.t_star * ts.mu).exp_m1(),
    })
}

/// Mass of `f g` per eigenvalue `|m|^2`, normalized to total 1.
pub fn torus_product_spectrum(
    f: &TrigPolynomial,
    g: &TrigPolynomial,
) -> Result<BTreeMap<i64, f64>> {
    let product = f.product(g)?;
    let total = product.norm_sq();
    if total < MASS_TOL {
        return Err(Error::EmptyProduct(total));
    }
    Ok(product
        .spectrum()
        .into_iter()
        .map(|(e, m)| (e, m / total))
        .collect())
}

#[derive(Debug, Clone, Serialize)]
pub struct WaveSample {
    pub seed_mu: u64,
    pub seed_lambda: u64,
    #[serde(flatten)]
    pub correlation: TorusCorrelation,
    pub ratio: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct WaveEnsemble {
    pub mu: u64,
    pub lambda: u64,
    pub samples: Vec<WaveSample>,
    pub mean_ratio: f64,
}

/// Random-wave ensemble: sample `k` pairs waves seeded `base + 2k` (for
/// `mu`) and `base + 2k + 1` (for `lambda`).
pub fn random_wave_ensemble(
    mu: u64,
    lambda: u64,
    count: usize,
    base_seed: u64,
) -> Result<WaveEnsemble> {
    let samples = (0..count as u64)
        .map(|k| {
            let seed_mu = base_seed.wrapping_add(2 * k);
            let seed_lambda = seed_mu.wrapping_add(1);
            let f = random_wave(mu, seed_mu)?;
            let g = random_wave(lambda, seed_lambda)?;
            let correlation = torus_global_correlation(&f, &g, mu as f64, lambda as f64)?;
            Ok(WaveSample {
                seed_mu,
                seed_lambda,
                ratio: correlation.ratio(),
                correlation,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let mean_ratio = samples.iter().map(|s| s.ratio).sum::<f64>() / samples.len().max(1) as f64;
    Ok(WaveEnsemble {
        mu,
        lambda,
        samples,
        mean_ratio,
    })
}
