//! Input distributions and problem specification.
//!
//! Four univariate families cover the supported inputs: truncated
//! Gaussian (either bound may be infinite), binomial, continuous uniform,
//! and discrete uniform. Each exposes its density/mass, exact raw
//! moments, seeded inverse-CDF sampling, and support metadata. Discrete
//! families live on an integer lattice; everything downstream (basis
//! construction, the integer constraints of the quadrature) relies on
//! that lattice being exact.
//!
//! A [`ParameterSpec`] attaches an affine map to a distribution: the
//! quadrature and the basis always work in the latent (pre-affine)
//! coordinate, and the map is applied only when a model consumes the
//! value. This keeps the lattice of a scaled count (say `Binomial(M,p)/M`)
//! at unit spacing so integrality means integrality.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use rand_chacha::ChaCha12Rng;
use rand_core::{RngCore, SeedableRng};

use crate::fmath;
use crate::linalg::sym_tridiag_eigen;

/// Largest discrete lattice the exact-summation paths accept.
pub const MAX_LATTICE: u64 = 10_000;

/// Parameter validation error; carries the offending field name.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DistError {
    InvalidParameter { field: &'static str },
}

impl core::fmt::Display for DistError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            DistError::InvalidParameter { field } => {
                write!(f, "invalid distribution parameter: {field}")
            }
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for DistError {}

/// A univariate marginal law, continuous or discrete.
#[derive(Debug, Clone, PartialEq)]
pub enum Distribution {
    /// Gaussian restricted to `[lo, hi]`; either bound may be infinite.
    TruncatedGaussian { mu: f64, sigma: f64, lo: f64, hi: f64 },
    /// Counts `0..=n` with success probability `p`.
    Binomial { n: u64, p: f64 },
    /// Continuous uniform on `[lo, hi]`.
    Uniform { lo: f64, hi: f64 },
    /// Integers `lo..=hi`, equally likely.
    DiscreteUniform { lo: i64, hi: i64 },
}

/// Support descriptor: bounds, discreteness, and lattice spacing.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SupportInfo {
    pub lo: f64,
    pub hi: f64,
    pub discrete: bool,
    /// 1.0 on the integer lattice, 0.0 for continuous supports.
    pub lattice_step: f64,
}

impl Distribution {
    pub fn truncated_gaussian(mu: f64, sigma: f64, lo: f64, hi: f64) -> Result<Self, DistError> {
        if !mu.is_finite() {
            return Err(DistError::InvalidParameter { field: "mu" });
        }
        if !(sigma > 0.0) || !sigma.is_finite() {
            return Err(DistError::InvalidParameter { field: "sigma" });
        }
        if lo.is_nan() || hi.is_nan() || !(lo < hi) {
            return Err(DistError::InvalidParameter { field: "lo" });
        }
        Ok(Distribution::TruncatedGaussian { mu, sigma, lo, hi })
    }

    pub fn binomial(n: u64, p: f64) -> Result<Self, DistError> {
        if n > MAX_LATTICE {
            return Err(DistError::InvalidParameter { field: "n" });
        }
        if !(p > 0.0 && p < 1.0) {
            return Err(DistError::InvalidParameter { field: "p" });
        }
        Ok(Distribution::Binomial { n, p })
    }

    pub fn uniform(lo: f64, hi: f64) -> Result<Self, DistError> {
        if !lo.is_finite() || !hi.is_finite() || !(lo < hi) {
            return Err(DistError::InvalidParameter { field: "lo" });
        }
        Ok(Distribution::Uniform { lo, hi })
    }

    pub fn discrete_uniform(lo: i64, hi: i64) -> Result<Self, DistError> {
        if lo > hi {
            return Err(DistError::InvalidParameter { field: "lo" });
        }
        if (hi - lo) as u64 > MAX_LATTICE {
            return Err(DistError::InvalidParameter { field: "hi" });
        }
        Ok(Distribution::DiscreteUniform { lo, hi })
    }

    pub fn is_discrete(&self) -> bool {
        matches!(
            self,
            Distribution::Binomial { .. } | Distribution::DiscreteUniform { .. }
        )
    }

    /// Tight support bounds plus lattice metadata.
    pub fn support_info(&self) -> SupportInfo {
        match *self {
            Distribution::TruncatedGaussian { lo, hi, .. } => SupportInfo {
                lo,
                hi,
                discrete: false,
                lattice_step: 0.0,
            },
            Distribution::Binomial { n, .. } => SupportInfo {
                lo: 0.0,
                hi: n as f64,
                discrete: true,
                lattice_step: 1.0,
            },
            Distribution::Uniform { lo, hi } => SupportInfo {
                lo,
                hi,
                discrete: false,
                lattice_step: 0.0,
            },
            Distribution::DiscreteUniform { lo, hi } => SupportInfo {
                lo: lo as f64,
                hi: hi as f64,
                discrete: true,
                lattice_step: 1.0,
            },
        }
    }

    /// Finite bounds for optimization boxes: the support clipped to
    /// twelve standard deviations around the mean when a truncation
    /// bound is infinite. Points beyond carry no usable probability
    /// mass.
    pub fn clip_bounds(&self) -> (f64, f64) {
        match *self {
            Distribution::TruncatedGaussian { mu, sigma, lo, hi } => {
                (lo.max(mu - 12.0 * sigma), hi.min(mu + 12.0 * sigma))
            }
            _ => {
                let s = self.support_info();
                (s.lo, s.hi)
            }
        }
    }

    /// Probability mass (discrete, at lattice points) or density
    /// (continuous, normalized over the truncation window). Zero outside
    /// the support and off-lattice.
    pub fn mass_or_density(&self, x: f64) -> f64 {
        match *self {
            Distribution::TruncatedGaussian { mu, sigma, lo, hi } => {
                if x < lo || x > hi {
                    return 0.0;
                }
                let z = truncated_mass(mu, sigma, lo, hi);
                fmath::norm_pdf((x - mu) / sigma) / (sigma * z)
            }
            Distribution::Binomial { n, p } => match lattice_index(x, 0.0, n as f64) {
                Some(k) => binomial_pmf(n, p, k),
                None => 0.0,
            },
            Distribution::Uniform { lo, hi } => {
                if x < lo || x > hi {
                    0.0
                } else {
                    1.0 / (hi - lo)
                }
            }
            Distribution::DiscreteUniform { lo, hi } => {
                match lattice_index(x, lo as f64, hi as f64) {
                    Some(_) => 1.0 / (hi - lo + 1) as f64,
                    None => 0.0,
                }
            }
        }
    }

    /// Raw moment `E[X^k]`: exact lattice sums for discrete families,
    /// closed form for the uniform, composite Gauss–Legendre quadrature
    /// for the truncated Gaussian.
    pub fn raw_moment(&self, k: usize) -> f64 {
        if k == 0 {
            return 1.0;
        }
        match *self {
            Distribution::Uniform { lo, hi } => {
                // ∫ x^k / (hi-lo) = (hi^{k+1} - lo^{k+1}) / ((k+1)(hi-lo))
                let kp = (k + 1) as i32;
                (fmath::powi(hi, kp) - fmath::powi(lo, kp)) / (kp as f64 * (hi - lo))
            }
            Distribution::TruncatedGaussian { .. } => {
                let (x, w) = self.integration_grid(k.div_ceil(2));
                x.iter()
                    .zip(&w)
                    .map(|(&xi, &wi)| wi * fmath::powi(xi, k as i32))
                    .sum()
            }
            _ => {
                let (x, w) = self.lattice();
                x.iter()
                    .zip(&w)
                    .map(|(&xi, &wi)| wi * fmath::powi(xi, k as i32))
                    .sum()
            }
        }
    }

    pub fn mean(&self) -> f64 {
        match *self {
            Distribution::Binomial { n, p } => n as f64 * p,
            Distribution::Uniform { lo, hi } => 0.5 * (lo + hi),
            Distribution::DiscreteUniform { lo, hi } => 0.5 * (lo + hi) as f64,
            Distribution::TruncatedGaussian { .. } => self.raw_moment(1),
        }
    }

    pub fn std_dev(&self) -> f64 {
        let var = match *self {
            Distribution::Binomial { n, p } => n as f64 * p * (1.0 - p),
            Distribution::Uniform { lo, hi } => (hi - lo) * (hi - lo) / 12.0,
            Distribution::DiscreteUniform { lo, hi } => {
                let c = (hi - lo + 1) as f64;
                (c * c - 1.0) / 12.0
            }
            Distribution::TruncatedGaussian { .. } => {
                let m1 = self.raw_moment(1);
                self.raw_moment(2) - m1 * m1
            }
        };
        fmath::sqrt(var.max(0.0))
    }

    /// `n` i.i.d. draws, bit-reproducible for a given seed. Discrete
    /// draws are exact lattice values.
    pub fn draw_samples(&self, n: usize, seed: u64) -> Vec<f64> {
        let sampler = self.sampler();
        let mut rng = ChaCha12Rng::seed_from_u64(seed);
        (0..n).map(|_| sampler.draw(unit_open(&mut rng))).collect()
    }

    /// Prepares the per-distribution inverse-CDF tables once so batches
    /// of draws avoid redundant work.
    pub(crate) fn sampler(&self) -> DistSampler {
        match *self {
            Distribution::TruncatedGaussian { mu, sigma, lo, hi } => {
                let a = fmath::norm_cdf(std_score(lo, mu, sigma));
                let b = fmath::norm_cdf(std_score(hi, mu, sigma));
                DistSampler::Gaussian { mu, sigma, cdf_lo: a, cdf_span: b - a }
            }
            Distribution::Binomial { n, p } => {
                let pmf = binomial_pmf_table(n, p);
                let mut cdf = Vec::with_capacity(pmf.len());
                let mut acc = 0.0;
                for q in &pmf {
                    acc += q;
                    cdf.push(acc);
                }
                DistSampler::Lattice { start: 0.0, cdf }
            }
            Distribution::Uniform { lo, hi } => DistSampler::Uniform { lo, span: hi - lo },
            Distribution::DiscreteUniform { lo, hi } => DistSampler::UniformLattice {
                lo: lo as f64,
                count: (hi - lo + 1) as f64,
            },
        }
    }

    /// Lattice points and exact probabilities of a discrete family.
    /// Panics on continuous families; callers gate on `is_discrete`.
    pub(crate) fn lattice(&self) -> (Vec<f64>, Vec<f64>) {
        match *self {
            Distribution::Binomial { n, p } => {
                let probs = binomial_pmf_table(n, p);
                let points = (0..=n).map(|k| k as f64).collect();
                (points, probs)
            }
            Distribution::DiscreteUniform { lo, hi } => {
                let count = (hi - lo + 1) as usize;
                let points = (lo..=hi).map(|k| k as f64).collect();
                (points, vec![1.0 / count as f64; count])
            }
            _ => panic!("lattice() called on a continuous distribution"),
        }
    }

    /// Number of lattice points of a discrete family.
    pub fn lattice_size(&self) -> Option<u64> {
        match *self {
            Distribution::Binomial { n, .. } => Some(n + 1),
            Distribution::DiscreteUniform { lo, hi } => Some((hi - lo) as u64 + 1),
            _ => None,
        }
    }

    /// Quadrature grid `(nodes, weights)` with the density folded into
    /// the weights, accurate for expectations of polynomials up to
    /// degree `2·max_degree + 1` against this measure.
    ///
    /// Discrete families return the exact lattice. The uniform gets a
    /// single Gauss–Legendre panel of `4·max_degree + 8` nodes (exact).
    /// The truncated Gaussian gets that rule per panel on panels of at
    /// most two standard deviations, over a window wide enough that the
    /// neglected tail is below 1e-13 relative for the stated degree.
    pub(crate) fn integration_grid(&self, max_degree: usize) -> (Vec<f64>, Vec<f64>) {
        match *self {
            Distribution::Binomial { .. } | Distribution::DiscreteUniform { .. } => self.lattice(),
            Distribution::Uniform { lo, hi } => {
                let n = 4 * max_degree + 8;
                let (x, w) = gauss_legendre_unit(n);
                let half = 0.5 * (hi - lo);
                let mid = 0.5 * (hi + lo);
                // Weight of the probability measure: jacobian × density = 1/2.
                let nodes: Vec<f64> = x.iter().map(|&t| mid + half * t).collect();
                let wts: Vec<f64> = w.iter().map(|&wi| 0.5 * wi).collect();
                (nodes, wts)
            }
            Distribution::TruncatedGaussian { mu, sigma, lo, hi } => {
                let poly_degree = 2 * max_degree + 1;
                let reach = (12.0 + 0.1 * poly_degree as f64) * sigma;
                let a = lo.max(mu - reach);
                let b = hi.min(mu + reach);
                let panels = fmath::ceil((b - a) / (2.0 * sigma)).clamp(1.0, 64.0) as usize;
                let n = 4 * max_degree + 8;
                let (xu, wu) = gauss_legendre_unit(n);
                let z = truncated_mass(mu, sigma, lo, hi);
                let mut nodes = Vec::with_capacity(panels * n);
                let mut wts = Vec::with_capacity(panels * n);
                let step = (b - a) / panels as f64;
                for p in 0..panels {
                    let pa = a + step * p as f64;
                    let half = 0.5 * step;
                    let mid = pa + half;
                    for (&t, &wi) in xu.iter().zip(&wu) {
                        let x = mid + half * t;
                        let rho = fmath::norm_pdf((x - mu) / sigma) / (sigma * z);
                        nodes.push(x);
                        wts.push(half * wi * rho);
                    }
                }
                (nodes, wts)
            }
        }
    }
}

/// Constructs a validated distribution from a kind tag and parameter
/// list, the form config files use.
///
/// * `"truncated_gaussian"`: `[mu, sigma, lo]` (one-sided, unbounded
///   above) or `[mu, sigma, lo, hi]`
/// * `"binomial"`: `[n, p]`
/// * `"uniform"`: `[lo, hi]`
/// * `"discrete_uniform"`: `[lo, hi]`
pub fn make_distribution(kind: &str, params: &[f64]) -> Result<Distribution, DistError> {
    match kind {
        "truncated_gaussian" => match params {
            [mu, sigma, lo] => Distribution::truncated_gaussian(*mu, *sigma, *lo, f64::INFINITY),
            [mu, sigma, lo, hi] => Distribution::truncated_gaussian(*mu, *sigma, *lo, *hi),
            _ => Err(DistError::InvalidParameter { field: "params" }),
        },
        "binomial" => match params {
            [n, p] => {
                if !n.is_finite() || *n < 0.0 || fmath::fract(*n) != 0.0 {
                    return Err(DistError::InvalidParameter { field: "n" });
                }
                Distribution::binomial(*n as u64, *p)
            }
            _ => Err(DistError::InvalidParameter { field: "params" }),
        },
        "uniform" => match params {
            [lo, hi] => Distribution::uniform(*lo, *hi),
            _ => Err(DistError::InvalidParameter { field: "params" }),
        },
        "discrete_uniform" => match params {
            [lo, hi] => {
                if fmath::fract(*lo) != 0.0 || fmath::fract(*hi) != 0.0 {
                    return Err(DistError::InvalidParameter { field: "lo" });
                }
                Distribution::discrete_uniform(*lo as i64, *hi as i64)
            }
            _ => Err(DistError::InvalidParameter { field: "params" }),
        },
        _ => Err(DistError::InvalidParameter { field: "kind" }),
    }
}

/// Affine map applied when a model consumes a latent value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Affine {
    pub scale: f64,
    pub shift: f64,
}

impl Affine {
    pub fn identity() -> Self {
        Affine { scale: 1.0, shift: 0.0 }
    }

    #[inline]
    pub fn to_physical(&self, latent: f64) -> f64 {
        self.scale * latent + self.shift
    }

    #[inline]
    pub fn to_latent(&self, physical: f64) -> f64 {
        (physical - self.shift) / self.scale
    }
}

/// One named uncertain input: a distribution in latent coordinates plus
/// the affine map the model sees.
#[derive(Debug, Clone, PartialEq)]
pub struct ParameterSpec {
    pub name: String,
    pub dist: Distribution,
    pub affine: Affine,
}

impl ParameterSpec {
    pub fn new(name: impl Into<String>, dist: Distribution) -> Self {
        ParameterSpec {
            name: name.into(),
            dist,
            affine: Affine::identity(),
        }
    }

    pub fn with_affine(mut self, scale: f64, shift: f64) -> Result<Self, DistError> {
        if scale == 0.0 || !scale.is_finite() || !shift.is_finite() {
            return Err(DistError::InvalidParameter { field: "scale" });
        }
        self.affine = Affine { scale, shift };
        Ok(self)
    }
}

/// The full uncertain-input description: an ordered list of parameters
/// and the model's output channel names.
#[derive(Debug, Clone, PartialEq)]
pub struct ProblemSpec {
    pub params: Vec<ParameterSpec>,
    pub outputs: Vec<String>,
}

impl ProblemSpec {
    pub fn new(params: Vec<ParameterSpec>, outputs: Vec<String>) -> Result<Self, DistError> {
        if params.is_empty() {
            return Err(DistError::InvalidParameter { field: "params" });
        }
        if outputs.is_empty() {
            return Err(DistError::InvalidParameter { field: "outputs" });
        }
        Ok(ProblemSpec { params, outputs })
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.params.len()
    }

    /// Index set of the integer-lattice dimensions.
    pub fn integer_dims(&self) -> Vec<usize> {
        self.params
            .iter()
            .enumerate()
            .filter(|(_, p)| p.dist.is_discrete())
            .map(|(i, _)| i)
            .collect()
    }

    /// `n` joint latent samples, one row per sample, deterministic per
    /// seed. Dimensions are drawn in order from a single stream.
    pub fn sample_joint(&self, n: usize, seed: u64) -> Vec<Vec<f64>> {
        let samplers: Vec<DistSampler> = self.params.iter().map(|p| p.dist.sampler()).collect();
        let mut rng = ChaCha12Rng::seed_from_u64(seed);
        (0..n)
            .map(|_| {
                samplers
                    .iter()
                    .map(|s| s.draw(unit_open(&mut rng)))
                    .collect()
            })
            .collect()
    }

    /// Latent row → physical row.
    pub fn to_physical(&self, latent: &[f64]) -> Vec<f64> {
        latent
            .iter()
            .zip(&self.params)
            .map(|(&x, p)| p.affine.to_physical(x))
            .collect()
    }

    /// Physical row → latent row.
    pub fn to_latent(&self, physical: &[f64]) -> Vec<f64> {
        physical
            .iter()
            .zip(&self.params)
            .map(|(&y, p)| p.affine.to_latent(y))
            .collect()
    }

    /// Whether a latent row lies in the support (on-lattice for discrete
    /// dimensions, within bounds everywhere).
    pub fn in_support(&self, latent: &[f64]) -> bool {
        latent.iter().zip(&self.params).all(|(&x, p)| {
            let s = p.dist.support_info();
            if x < s.lo || x > s.hi {
                return false;
            }
            !s.discrete || fmath::abs(x - fmath::round(x)) <= 1e-9
        })
    }
}

// ---------------------------------------------------------------------------
// Sampling internals
// ---------------------------------------------------------------------------

pub(crate) enum DistSampler {
    Gaussian { mu: f64, sigma: f64, cdf_lo: f64, cdf_span: f64 },
    Lattice { start: f64, cdf: Vec<f64> },
    Uniform { lo: f64, span: f64 },
    UniformLattice { lo: f64, count: f64 },
}

impl DistSampler {
    pub(crate) fn draw(&self, u: f64) -> f64 {
        match self {
            DistSampler::Gaussian { mu, sigma, cdf_lo, cdf_span } => {
                let p = (cdf_lo + u * cdf_span).clamp(1e-300, 1.0 - 1e-16);
                mu + sigma * fmath::norm_ppf(p)
            }
            DistSampler::Lattice { start, cdf } => {
                let idx = cdf.partition_point(|&c| c < u);
                start + idx.min(cdf.len() - 1) as f64
            }
            DistSampler::Uniform { lo, span } => lo + u * span,
            DistSampler::UniformLattice { lo, count } => {
                lo + fmath::floor(u * count).min(count - 1.0)
            }
        }
    }
}

/// Uniform in the open interval (0, 1) with 53-bit resolution.
#[inline]
pub(crate) fn unit_open(rng: &mut ChaCha12Rng) -> f64 {
    const SCALE: f64 = 1.0 / (1u64 << 53) as f64;
    ((rng.next_u64() >> 11) as f64 + 0.5) * SCALE
}

// ---------------------------------------------------------------------------
// Scalar helpers
// ---------------------------------------------------------------------------

#[inline]
fn std_score(x: f64, mu: f64, sigma: f64) -> f64 {
    if x == f64::INFINITY {
        f64::INFINITY
    } else if x == f64::NEG_INFINITY {
        f64::NEG_INFINITY
    } else {
        (x - mu) / sigma
    }
}

fn truncated_mass(mu: f64, sigma: f64, lo: f64, hi: f64) -> f64 {
    fmath::norm_cdf(std_score(hi, mu, sigma)) - fmath::norm_cdf(std_score(lo, mu, sigma))
}

/// Accepts `x` as the lattice integer it rounds to (tolerance 1e-9), if
/// within `[lo, hi]`.
fn lattice_index(x: f64, lo: f64, hi: f64) -> Option<u64> {
    let r = fmath::round(x);
    if fmath::abs(x - r) > 1e-9 || r < lo || r > hi {
        None
    } else {
        Some((r - lo) as u64)
    }
}

/// Stirling series error `ln(n!) − ln(√(2πn) (n/e)^n)`.
///
/// Small arguments go through `lgamma` (harmless there); from 16 up the
/// asymptotic series is below machine epsilon, which avoids the
/// catastrophic loss `lgamma` differences suffer at large `n`.
fn stirlerr(n: f64) -> f64 {
    const S0: f64 = 1.0 / 12.0;
    const S1: f64 = 1.0 / 360.0;
    const S2: f64 = 1.0 / 1260.0;
    const S3: f64 = 1.0 / 1680.0;
    const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_7;
    if n < 16.0 {
        fmath::ln_gamma(n + 1.0) - (n + 0.5) * fmath::ln(n) + n - LN_SQRT_2PI
    } else {
        let nn = n * n;
        (S0 - (S1 - (S2 - S3 / nn) / nn) / nn) / n
    }
}

/// Binomial deviance `x·ln(x/np) + np − x`, evaluated by series when
/// `x ≈ np` to avoid cancellation.
fn bd0(x: f64, np: f64) -> f64 {
    if fmath::abs(x - np) < 0.1 * (x + np) {
        let v = (x - np) / (x + np);
        let mut s = (x - np) * v;
        let mut ej = 2.0 * x * v;
        let v2 = v * v;
        let mut j = 1.0;
        loop {
            ej *= v2;
            let s1 = s + ej / (2.0 * j + 1.0);
            if s1 == s {
                return s1;
            }
            s = s1;
            j += 1.0;
        }
    } else {
        x * fmath::ln(x / np) + np - x
    }
}

/// pmf of Binomial(n, p) at lattice index k, by the saddle-point
/// expansion (relative accuracy ~1e-15 across the whole lattice for any
/// supported n).
fn binomial_pmf(n: u64, p: f64, k: u64) -> f64 {
    let (nf, kf) = (n as f64, k as f64);
    let q = 1.0 - p;
    if k == 0 {
        return fmath::exp(nf * libm::log1p(-p));
    }
    if k == n {
        return fmath::exp(nf * fmath::ln(p));
    }
    let lc = stirlerr(nf) - stirlerr(kf) - stirlerr(nf - kf) - bd0(kf, nf * p) - bd0(nf - kf, nf * q);
    let lf = fmath::ln(core::f64::consts::TAU * kf * (nf - kf) / nf);
    fmath::exp(lc - 0.5 * lf)
}

/// Full pmf table 0..=n.
fn binomial_pmf_table(n: u64, p: f64) -> Vec<f64> {
    (0..=n).map(|k| binomial_pmf(n, p, k)).collect()
}

/// Gauss–Legendre nodes/weights on [-1, 1] (weights sum to 2), from the
/// Jacobi matrix of the Legendre recurrence.
pub(crate) fn gauss_legendre_unit(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1);
    let diag = vec![0.0; n];
    let off: Vec<f64> = (1..n)
        .map(|k| {
            let k = k as f64;
            fmath::sqrt(k * k / (4.0 * k * k - 1.0))
        })
        .collect();
    let (nodes, firsts) = sym_tridiag_eigen(&diag, &off);
    let weights = firsts.iter().map(|f| 2.0 * f * f).collect();
    (nodes, weights)
}
