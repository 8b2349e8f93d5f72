//! Closed-form divergences on exponential families.
//!
//! For a density `p(x; θ) = exp(⟨t(x), θ⟩ − F(θ))` the log-normalizer F is
//! convex on the natural parameter space, and the classical divergences
//! between members reduce to convex-analytic quantities of F:
//!
//! * `KL(p_θp : p_θq) = B_F(θq : θp)` — a Bregman divergence with swapped
//!   arguments ([`kl_expfam`]).
//! * `−ln ∫ p^α q^(1−α) = αF(θp) + (1−α)F(θq) − F(αθp + (1−α)θq)` — the
//!   α-Bhattacharyya distance is a Jensen gap of F
//!   ([`bhattacharyya_alpha`]).
//!
//! The second identity means the whole symmetrized skew Jensen family is
//! available in closed form on these families: `sB^(α) = α(1−α) · sJ_F^(α)`
//! on natural parameters ([`sym_bhattacharyya`]).
//!
//! [`quadrature_bhattacharyya`] evaluates `−ln ∫ p^α q^(1−α)` by brute-force
//! numeric integration for the univariate families, as an independent check
//! of the closed forms.

use crate::divergences::Alpha;
use crate::generators::{self, VectorGenerator};
use crate::{Error, Result};

/// The supported exponential families.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExponentialFamily {
    /// Multinomial with `bins` categories (one trial). Natural parameters are
    /// the `bins − 1` log-odds against the last category.
    Multinomial { bins: usize },
    /// Univariate Gaussian. Natural parameters `(μ/σ², −1/(2σ²))`.
    Gaussian1d,
    /// Poisson. Natural parameter `ln λ`.
    Poisson,
}

impl ExponentialFamily {
    pub fn name(&self) -> String {
        match self {
            ExponentialFamily::Multinomial { bins } => format!("multinomial({bins})"),
            ExponentialFamily::Gaussian1d => "gaussian1d".to_string(),
            ExponentialFamily::Poisson => "poisson".to_string(),
        }
    }

    /// Dimension of the natural parameter space.
    pub fn natural_dim(&self) -> usize {
        match self {
            ExponentialFamily::Multinomial { bins } => bins - 1,
            ExponentialFamily::Gaussian1d => 2,
            ExponentialFamily::Poisson => 1,
        }
    }

    /// The log-normalizer of this family as a vector generator.
    pub fn log_normalizer(&self) -> LogNormalizer {
        LogNormalizer { family: *self }
    }

    fn check_theta(&self, theta: &[f64]) -> Result<()> {
        let want = self.natural_dim();
        if theta.len() != want {
            return Err(Error::OutOfNaturalDomain {
                family: self.name(),
                reason: format!("expected {want} coordinates, got {}", theta.len()),
            });
        }
        if let Some(bad) = theta.iter().find(|t| !t.is_finite()) {
            return Err(Error::OutOfNaturalDomain {
                family: self.name(),
                reason: format!("non-finite coordinate {bad}"),
            });
        }
        if let ExponentialFamily::Gaussian1d = self {
            if theta[1] >= 0.0 {
                return Err(Error::OutOfNaturalDomain {
                    family: self.name(),
                    reason: format!(
                        "second coordinate must be negative (it is −1/(2σ²)), got {}",
                        theta[1]
                    ),
                });
            }
        }
        Ok(())
    }
}

/// A validated point of a family's natural parameter space.
#[derive(Debug, Clone, PartialEq)]
pub struct NaturalParam {
    family: ExponentialFamily,
    theta: Vec<f64>,
}

impl NaturalParam {
    pub fn new(family: ExponentialFamily, theta: Vec<f64>) -> Result<Self> {
        if let ExponentialFamily::Multinomial { bins } = family {
            if bins < 2 {
                return Err(Error::InvalidSource {
                    family: family.name(),
                    reason: "need at least 2 bins".to_string(),
                });
            }
        }
        family.check_theta(&theta)?;
        Ok(NaturalParam { family, theta })
    }

    /// θᵢ = ln(pᵢ/p_d) for i < d. The histogram's positivity guarantees the
    /// log-odds exist.
    pub fn from_multinomial(p: &crate::divergences::Histogram) -> Result<Self> {
        let bins = p.bins();
        let last = bins[bins.len() - 1];
        let theta: Vec<f64> = bins[..bins.len() - 1]
            .iter()
            .map(|&b| (b / last).ln())
            .collect();
        NaturalParam::new(ExponentialFamily::Multinomial { bins: bins.len() }, theta)
    }

    /// θ = (μ/σ², −1/(2σ²)) with σ² > 0.
    pub fn from_gaussian(mean: f64, variance: f64) -> Result<Self> {
        if !variance.is_finite() || variance <= 0.0 || !mean.is_finite() {
            return Err(Error::InvalidSource {
                family: ExponentialFamily::Gaussian1d.name(),
                reason: format!("need finite mean and positive variance, got ({mean}, {variance})"),
            });
        }
        NaturalParam::new(
            ExponentialFamily::Gaussian1d,
            vec![mean / variance, -1.0 / (2.0 * variance)],
        )
    }

    /// θ = ln λ with λ > 0.
    pub fn from_poisson(rate: f64) -> Result<Self> {
        if !rate.is_finite() || rate <= 0.0 {
            return Err(Error::InvalidSource {
                family: ExponentialFamily::Poisson.name(),
                reason: format!("need a positive rate, got {rate}"),
            });
        }
        NaturalParam::new(ExponentialFamily::Poisson, vec![rate.ln()])
    }

    pub fn family(&self) -> ExponentialFamily {
        self.family
    }

    pub fn theta(&self) -> &[f64] {
        &self.theta
    }

    /// The mean parameters η = ∇F(θ): bin probabilities of the first d−1
    /// categories, (μ, μ²+σ²), or λ.
    pub fn mean_params(&self) -> Vec<f64> {
        self.family.log_normalizer().grad(&self.theta)
    }

    /// Recovers the source parameterization: the full probability vector,
    /// (μ, σ²), or λ.
    pub fn to_source(&self) -> Vec<f64> {
        let eta = self.mean_params();
        match self.family {
            ExponentialFamily::Multinomial { .. } => {
                let head: f64 = eta.iter().sum();
                let mut p = eta;
                p.push(1.0 - head);
                p
            }
            ExponentialFamily::Gaussian1d => vec![eta[0], eta[1] - eta[0] * eta[0]],
            ExponentialFamily::Poisson => eta,
        }
    }
}

fn check_same_family(p: &NaturalParam, q: &NaturalParam) -> Result<()> {
    if p.family == q.family {
        Ok(())
    } else {
        Err(Error::FamilyMismatch(p.family.name(), q.family.name()))
    }
}

/// The log-normalizer F of an [`ExponentialFamily`], exposed as a
/// [`VectorGenerator`] on the natural parameter space so the skew Jensen
/// machinery (and the centroid solver) applies unchanged.
#[derive(Debug, Clone, Copy)]
pub struct LogNormalizer {
    family: ExponentialFamily,
}

impl LogNormalizer {
    pub fn family(&self) -> ExponentialFamily {
        self.family
    }

    /// Max-shifted ln(1 + Σ exp θᵢ), stable for large positive coordinates.
    /// When every coordinate is non-positive the shift is zero and ln_1p keeps
    /// near-delta values (F ≈ Σ exp θᵢ ≪ 1) from rounding to zero.
    fn multinomial_f(theta: &[f64]) -> f64 {
        let m = theta.iter().fold(0.0f64, |acc, &t| acc.max(t));
        let sum: f64 = theta.iter().map(|&t| (t - m).exp()).sum();
        if m == 0.0 {
            sum.ln_1p()
        } else {
            m + ((-m).exp() + sum).ln()
        }
    }
}

impl VectorGenerator for LogNormalizer {
    fn dim(&self) -> usize {
        self.family.natural_dim()
    }

    fn contains(&self, x: &[f64]) -> bool {
        self.family.check_theta(x).is_ok()
    }

    fn eval(&self, theta: &[f64]) -> f64 {
        match self.family {
            ExponentialFamily::Multinomial { .. } => Self::multinomial_f(theta),
            ExponentialFamily::Gaussian1d => {
                let (t1, t2) = (theta[0], theta[1]);
                -t1 * t1 / (4.0 * t2) + 0.5 * (-std::f64::consts::PI / t2).ln()
            }
            ExponentialFamily::Poisson => theta[0].exp(),
        }
    }

    fn grad(&self, theta: &[f64]) -> Vec<f64> {
        match self.family {
            ExponentialFamily::Multinomial { .. } => {
                let f = Self::multinomial_f(theta);
                theta.iter().map(|&t| (t - f).exp()).collect()
            }
            ExponentialFamily::Gaussian1d => {
                let (t1, t2) = (theta[0], theta[1]);
                vec![-t1 / (2.0 * t2), t1 * t1 / (4.0 * t2 * t2) - 1.0 / (2.0 * t2)]
            }
            ExponentialFamily::Poisson => vec![theta[0].exp()],
        }
    }

    fn grad_inv(&self, eta: &[f64]) -> Result<Vec<f64>> {
        match self.family {
            ExponentialFamily::Multinomial { .. } => {
                let head: f64 = eta.iter().sum();
                let last = 1.0 - head;
                if eta.iter().any(|&e| e <= 0.0) || last <= 0.0 {
                    return Err(Error::OutOfNaturalDomain {
                        family: self.family.name(),
                        reason: format!(
                            "mean parameters must be positive with sum below 1, got {eta:?}"
                        ),
                    });
                }
                Ok(eta.iter().map(|&e| (e / last).ln()).collect())
            }
            ExponentialFamily::Gaussian1d => {
                let variance = eta[1] - eta[0] * eta[0];
                if !(variance > 0.0) {
                    return Err(Error::OutOfNaturalDomain {
                        family: self.family.name(),
                        reason: format!(
                            "mean parameters {eta:?} imply non-positive variance {variance}"
                        ),
                    });
                }
                Ok(vec![eta[0] / variance, -1.0 / (2.0 * variance)])
            }
            ExponentialFamily::Poisson => {
                if !(eta[0] > 0.0) {
                    return Err(Error::OutOfNaturalDomain {
                        family: self.family.name(),
                        reason: format!("mean parameter must be positive, got {}", eta[0]),
                    });
                }
                Ok(vec![eta[0].ln()])
            }
        }
    }

    fn describe(&self) -> String {
        format!("log-normalizer ({})", self.family.name())
    }
}

/// Bregman divergence of the log-normalizer:
/// `B_F(θ_x : θ_y) = F(θ_x) − F(θ_y) − ⟨θ_x − θ_y, ∇F(θ_y)⟩`.
///
/// Note the argument order in the KL identity: `KL(p : q) = B_F(θ_q : θ_p)`;
/// the distribution arguments swap when moving to natural parameters.
pub fn bregman(x: &NaturalParam, y: &NaturalParam) -> Result<f64> {
    check_same_family(x, y)?;
    let f = x.family.log_normalizer();
    Ok(generators::bregman_raw(&f, x.theta(), y.theta()).max(0.0))
}

/// Kullback-Leibler divergence between two members, `KL(p : q)` with p first,
/// computed as the swapped Bregman divergence `B_F(θ_q : θ_p)`.
pub fn kl_expfam(p: &NaturalParam, q: &NaturalParam) -> Result<f64> {
    bregman(q, p)
}

/// Jeffreys divergence `KL(p:q) + KL(q:p) = ⟨θ_p − θ_q, ∇F(θ_p) − ∇F(θ_q)⟩`.
pub fn jeffreys_expfam(p: &NaturalParam, q: &NaturalParam) -> Result<f64> {
    check_same_family(p, q)?;
    let f = p.family.log_normalizer();
    let gp = f.grad(p.theta());
    let gq = f.grad(q.theta());
    let v: f64 = p
        .theta()
        .iter()
        .zip(q.theta())
        .zip(gp.iter().zip(&gq))
        .map(|((&tp, &tq), (&a, &b))| (tp - tq) * (a - b))
        .sum();
    Ok(v.max(0.0))
}

/// α-Bhattacharyya distance
/// `B^(α)(p : q) = −ln ∫ p(x)^α q(x)^(1−α) dx
///              = αF(θ_p) + (1−α)F(θ_q) − F(αθ_p + (1−α)θ_q)`,
/// the Jensen gap of the log-normalizer with weight α on the *first*
/// argument.
///
/// Endpoints are fine: `B^(0) = B^(1) = 0` (the integral of either density is
/// one). α = ½ is the classical Bhattacharyya distance. There is no
/// `1/(α(1−α))` prefactor here; dividing by it recovers the skew Jensen
/// divergence of F on natural parameters.
pub fn bhattacharyya_alpha(p: &NaturalParam, q: &NaturalParam, alpha: Alpha) -> Result<f64> {
    check_same_family(p, q)?;
    let f = p.family.log_normalizer();
    let a = alpha.value();
    Ok(generators::gap(&f, a, p.theta(), q.theta()).max(0.0))
}

/// Symmetrized α-Bhattacharyya distance
/// `sB^(α)(p, q) = ½ (B^(α)(p:q) + B^(α)(q:p)) = α(1−α) · sJ_F^(α)(θ_p, θ_q)`.
pub fn sym_bhattacharyya(p: &NaturalParam, q: &NaturalParam, alpha: Alpha) -> Result<f64> {
    Ok(0.5 * (bhattacharyya_alpha(p, q, alpha)? + bhattacharyya_alpha(q, p, alpha)?))
}

/// Controls for [`quadrature_bhattacharyya`].
#[derive(Debug, Clone, Copy)]
pub struct QuadratureSpec {
    /// Gaussian integration window half-width, in units of the larger
    /// standard deviation, around the span of the two means.
    pub sigma_window: f64,
    /// Gaussian trapezoid step.
    pub step: f64,
    /// Poisson summation stops once a term falls below this fraction of the
    /// running total (past both means).
    pub tail_mass: f64,
    /// Hard cap on Poisson summation terms.
    pub max_terms: usize,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec {
            sigma_window: 12.0,
            step: 1e-3,
            tail_mass: 1e-12,
            max_terms: 100_000,
        }
    }
}

/// Evaluates `−ln ∫ p(x)^α q(x)^(1−α) dx` (or the sum, for Poisson) by
/// direct numeric integration, independently of the log-normalizer identity.
///
/// Supports the univariate families; for the multinomial family use
/// [`bhattacharyya_alpha`] (or the trivial finite sum it equals), this
/// returns [`Error::QuadratureUnsupported`].
///
/// For Gaussians the window must capture both densities: if either one's
/// trapezoid mass deviates from 1 by more than 1e-6 the integration aborts
/// with [`Error::InsufficientCoverage`] instead of returning a biased value.
pub fn quadrature_bhattacharyya(
    p: &NaturalParam,
    q: &NaturalParam,
    alpha: Alpha,
    spec: &QuadratureSpec,
) -> Result<f64> {
    check_same_family(p, q)?;
    let a = alpha.value();
    match p.family {
        ExponentialFamily::Multinomial { .. } => {
            Err(Error::QuadratureUnsupported(p.family.name()))
        }
        ExponentialFamily::Gaussian1d => {
            let sp = p.to_source();
            let sq = q.to_source();
            let (mu1, v1) = (sp[0], sp[1]);
            let (mu2, v2) = (sq[0], sq[1]);
            let (s1, s2) = (v1.sqrt(), v2.sqrt());
            let lo = (mu1 - spec.sigma_window * s1).min(mu2 - spec.sigma_window * s2);
            let hi = (mu1 + spec.sigma_window * s1).max(mu2 + spec.sigma_window * s2);
            let n = (((hi - lo) / spec.step).ceil() as usize).max(2);
            let h = (hi - lo) / n as f64;
            let log_density = |x: f64, mu: f64, v: f64| {
                -0.5 * (2.0 * std::f64::consts::PI * v).ln() - (x - mu) * (x - mu) / (2.0 * v)
            };
            let mut integral = 0.0;
            let mut mass_p = 0.0;
            let mut mass_q = 0.0;
            for i in 0..=n {
                let x = lo + i as f64 * h;
                let w = if i == 0 || i == n { 0.5 } else { 1.0 };
                let lp = log_density(x, mu1, v1);
                let lq = log_density(x, mu2, v2);
                integral += w * (a * lp + (1.0 - a) * lq).exp();
                mass_p += w * lp.exp();
                mass_q += w * lq.exp();
            }
            integral *= h;
            mass_p *= h;
            mass_q *= h;
            let missing = (1.0 - mass_p).abs().max((1.0 - mass_q).abs());
            if missing > 1e-6 {
                return Err(Error::InsufficientCoverage {
                    missing,
                    limit: 1e-6,
                });
            }
            Ok(-integral.ln())
        }
        ExponentialFamily::Poisson => {
            let lam1 = p.to_source()[0];
            let lam2 = q.to_source()[0];
            // Term n of sum_n p1(n)^a p2(n)^(1-a):
            //   exp(-(a lam1 + (1-a) lam2)) * (lam1^a lam2^(1-a))^n / n!
            // accumulated with a running log-factorial.
            let base = -(a * lam1 + (1.0 - a) * lam2);
            let log_rate = a * lam1.ln() + (1.0 - a) * lam2.ln();
            let horizon = lam1.max(lam2);
            let mut total = 0.0;
            let mut log_fact = 0.0;
            for n in 0..spec.max_terms {
                if n > 0 {
                    log_fact += (n as f64).ln();
                }
                let term = (base + n as f64 * log_rate - log_fact).exp();
                total += term;
                if n as f64 > horizon && term < spec.tail_mass * total {
                    return Ok(-total.ln());
                }
            }
            Err(Error::InsufficientCoverage {
                missing: f64::NAN,
                limit: spec.tail_mass,
            })
        }
    }
}
