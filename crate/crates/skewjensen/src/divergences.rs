//! Statistical distances on discrete histograms and positive measures.
//!
//! The classical divergences (Kullback-Leibler, Jeffreys, Jensen-Shannon,
//! K-divergence, φ-divergences) sit alongside the skew Jensen family that ties
//! them together:
//!
//! * [`skew_jensen`] — `J_F^(α)(p:q)`, the α-skew Jensen divergence of a convex
//!   generator F, scaled by `1/(α(1−α))`.
//! * [`sym_skew_jensen`] — `sJ_F^(α)`, the average of the two orientations,
//!   scaled by `1/(2α(1−α))`.
//! * [`skl_alpha`] — `sKL^(α)`, the Shannon instance of `sJ_F^(α)` written in
//!   terms of entropies. It equals `4·js` at α = ½ and tends to `jeffreys/2`
//!   at the endpoints, so one parameter walks from Jensen-Shannon-like to
//!   Jeffreys-like behaviour.
//!
//! Endpoint skew values α ∈ {0, 1} are accepted wherever the analytic limit
//! exists: the skew Jensen forms dispatch to the corresponding Bregman
//! divergence (half the symmetrized one for the symmetric forms). Operations
//! whose formula genuinely requires an interior α return
//! [`Error::EndpointAlpha`] instead.

use std::fmt;
use std::sync::Arc;

use crate::generators::{self, ConvexGenerator, VectorGenerator};
use crate::{Error, Result};

/// Histograms must sum to one within this tolerance.
pub const NORMALIZATION_TOL: f64 = 1e-9;

/// Smallest admissible bin mass. Ingestion clamps bins to ε = 1e-9 and then
/// renormalizes, which can leave bins marginally below ε; the floor allows for
/// that slack.
pub(crate) const MIN_BIN: f64 = 1e-9 - 1e-12;

/// A discrete probability vector with strictly positive bins.
#[derive(Debug, Clone, PartialEq)]
pub struct Histogram {
    bins: Vec<f64>,
}

impl Histogram {
    /// Validates d ≥ 2, bins ≥ the smoothing floor, and Σ bins = 1 within
    /// [`NORMALIZATION_TOL`].
    pub fn new(bins: Vec<f64>) -> Result<Self> {
        if bins.len() < 2 {
            return Err(Error::InvalidHistogram(format!(
                "need at least 2 bins, got {}",
                bins.len()
            )));
        }
        for (i, &b) in bins.iter().enumerate() {
            if !b.is_finite() || b < MIN_BIN {
                return Err(Error::InvalidHistogram(format!(
                    "bin {i} is {b}; bins must be finite and at least the smoothing floor 1e-9"
                )));
            }
        }
        let sum: f64 = bins.iter().sum();
        if (sum - 1.0).abs() > NORMALIZATION_TOL {
            return Err(Error::InvalidHistogram(format!(
                "bins sum to {sum}, expected 1 within {NORMALIZATION_TOL:e}"
            )));
        }
        Ok(Histogram { bins })
    }

    /// Builds a histogram from raw non-negative counts or frequencies:
    /// normalizes to unit mass, clamps every bin to at least `epsilon`, then
    /// renormalizes. The floor applies to the *normalized* bins, so rows of
    /// large raw counts smooth the same way as rows of frequencies.
    ///
    /// Rejects rows with fewer than two entries, negative or non-finite
    /// entries, and all-zero rows.
    pub fn smoothed(raw: &[f64], epsilon: f64) -> Result<Self> {
        if !(epsilon > 0.0) || !epsilon.is_finite() {
            return Err(Error::InvalidConfig(format!(
                "smoothing epsilon must be positive and finite, got {epsilon}"
            )));
        }
        if raw.len() < 2 {
            return Err(Error::InvalidHistogram(format!(
                "need at least 2 bins, got {}",
                raw.len()
            )));
        }
        for (i, &b) in raw.iter().enumerate() {
            if !b.is_finite() || b < 0.0 {
                return Err(Error::InvalidHistogram(format!(
                    "bin {i} is {b}; raw bins must be finite and non-negative"
                )));
            }
        }
        let mass: f64 = raw.iter().sum();
        if mass == 0.0 {
            return Err(Error::InvalidHistogram(
                "all bins are zero; cannot normalize".to_string(),
            ));
        }
        let clamped: Vec<f64> = raw.iter().map(|&b| (b / mass).max(epsilon)).collect();
        let sum: f64 = clamped.iter().sum();
        Histogram::new(clamped.into_iter().map(|b| b / sum).collect())
    }

    pub fn bins(&self) -> &[f64] {
        &self.bins
    }

    pub fn len(&self) -> usize {
        self.bins.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// An unnormalized vector of non-negative masses (at least one positive),
/// the natural domain of the extended Kullback-Leibler divergence.
#[derive(Debug, Clone, PartialEq)]
pub struct PositiveMeasure {
    mass: Vec<f64>,
}

impl PositiveMeasure {
    pub fn new(mass: Vec<f64>) -> Result<Self> {
        if mass.is_empty() {
            return Err(Error::InvalidMeasure("empty mass vector".to_string()));
        }
        for (i, &m) in mass.iter().enumerate() {
            if !m.is_finite() || m < 0.0 {
                return Err(Error::InvalidMeasure(format!(
                    "entry {i} is {m}; masses must be finite and non-negative"
                )));
            }
        }
        if mass.iter().all(|&m| m == 0.0) {
            return Err(Error::InvalidMeasure(
                "all masses are zero; at least one must be positive".to_string(),
            ));
        }
        Ok(PositiveMeasure { mass })
    }

    pub fn mass(&self) -> &[f64] {
        &self.mass
    }

    pub fn len(&self) -> usize {
        self.mass.len()
    }
}

/// A skew parameter α ∈ [0, 1].
///
/// Operations defined by a mixture formula accept the whole closed interval;
/// operations with a `1/(α(1−α))` prefactor dispatch the endpoints to their
/// analytic limits where those exist and error otherwise.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Alpha(f64);

impl Alpha {
    pub fn new(alpha: f64) -> Result<Self> {
        if alpha.is_finite() && (0.0..=1.0).contains(&alpha) {
            Ok(Alpha(alpha))
        } else {
            Err(Error::InvalidAlpha(alpha))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }

    pub fn is_endpoint(self) -> bool {
        self.0 == 0.0 || self.0 == 1.0
    }

    /// The value, or [`Error::EndpointAlpha`] when α ∈ {0, 1}.
    pub fn require_interior(self) -> Result<f64> {
        if self.is_endpoint() {
            Err(Error::EndpointAlpha(self.0))
        } else {
            Ok(self.0)
        }
    }
}

fn check_dims(a: usize, b: usize) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::LengthMismatch(a, b))
    }
}

/// −Σ x ln x with the continuous extension 0·ln 0 = 0.
fn entropy_slice(xs: &[f64]) -> f64 {
    -xs.iter()
        .map(|&x| if x == 0.0 { 0.0 } else { x * x.ln() })
        .sum::<f64>()
}

/// Elementwise `w·p + (1−w)·q`.
fn mix(w: f64, p: &[f64], q: &[f64]) -> Vec<f64> {
    p.iter()
        .zip(q)
        .map(|(&a, &b)| w * a + (1.0 - w) * b)
        .collect()
}

/// Shannon entropy H(p) = −Σ pⁱ ln pⁱ, in nats. Lies in [0, ln d].
pub fn entropy(p: &Histogram) -> f64 {
    entropy_slice(p.bins())
}

/// Cross-entropy H(p:q) = −Σ pⁱ ln qⁱ. Satisfies H(p:q) ≥ H(p) with equality
/// iff p = q.
pub fn cross_entropy(p: &Histogram, q: &Histogram) -> Result<f64> {
    check_dims(p.len(), q.len())?;
    Ok(-p
        .bins()
        .iter()
        .zip(q.bins())
        .map(|(&a, &b)| a * b.ln())
        .sum::<f64>())
}

/// Kullback-Leibler divergence KL(p:q) = Σ pⁱ ln(pⁱ/qⁱ).
pub fn kl(p: &Histogram, q: &Histogram) -> Result<f64> {
    check_dims(p.len(), q.len())?;
    Ok(p.bins()
        .iter()
        .zip(q.bins())
        .map(|(&a, &b)| a * (a / b).ln())
        .sum())
}

/// Extended Kullback-Leibler divergence on unnormalized measures:
/// Σ (pⁱ ln(pⁱ/qⁱ) + qⁱ − pⁱ). Reduces to [`kl`] when both inputs sum to 1.
///
/// Returns +∞ when some qⁱ = 0 < pⁱ; that is the divergence's value there, not
/// an error.
pub fn ekl(p: &PositiveMeasure, q: &PositiveMeasure) -> Result<f64> {
    check_dims(p.len(), q.len())?;
    let mut total = 0.0;
    for (&a, &b) in p.mass().iter().zip(q.mass()) {
        if a == 0.0 {
            total += b;
        } else if b == 0.0 {
            return Ok(f64::INFINITY);
        } else {
            total += a * (a / b).ln() + b - a;
        }
    }
    Ok(total)
}

/// Jeffreys divergence J(p,q) = KL(p:q) + KL(q:p) = Σ (pⁱ−qⁱ) ln(pⁱ/qⁱ).
pub fn jeffreys(p: &Histogram, q: &Histogram) -> Result<f64> {
    check_dims(p.len(), q.len())?;
    Ok(p.bins()
        .iter()
        .zip(q.bins())
        .map(|(&a, &b)| (a - b) * (a / b).ln())
        .sum())
}

/// Jensen-Shannon divergence JS(p,q) = H((p+q)/2) − (H(p)+H(q))/2.
///
/// Symmetric, bounded by ln 2, and √JS is a metric.
pub fn js(p: &Histogram, q: &Histogram) -> Result<f64> {
    check_dims(p.len(), q.len())?;
    let m = mix(0.5, p.bins(), q.bins());
    let v = entropy_slice(&m) - 0.5 * (entropy(p) + entropy(q));
    Ok(v.max(0.0))
}

/// K-divergence K(p:q) = KL(p : (p+q)/2) = Σ pⁱ ln(2pⁱ/(pⁱ+qⁱ)). Asymmetric;
/// its two orientations average to [`js`].
pub fn k_div(p: &Histogram, q: &Histogram) -> Result<f64> {
    check_dims(p.len(), q.len())?;
    let v: f64 = p
        .bins()
        .iter()
        .zip(q.bins())
        .map(|(&a, &b)| a * (2.0 * a / (a + b)).ln())
        .sum();
    Ok(v.max(0.0))
}

/// Skewed K-divergence K_α(p:q) = Σ pⁱ ln(pⁱ/((1−α)pⁱ+αqⁱ)) for α ∈ [0, 1].
///
/// K_0 = 0, K_½ = [`k_div`], K_1 = [`kl`].
pub fn k_alpha(p: &Histogram, q: &Histogram, alpha: Alpha) -> Result<f64> {
    check_dims(p.len(), q.len())?;
    let a = alpha.value();
    let v: f64 = p
        .bins()
        .iter()
        .zip(q.bins())
        .map(|(&x, &y)| x * (x / ((1.0 - a) * x + a * y)).ln())
        .sum();
    Ok(v.max(0.0))
}

/// Skewed Jensen-Shannon divergence JS_α(p,q) = (K_α(p:q) + K_α(q:p))/2.
///
/// JS_½ = [`js`] and JS_1 = [`jeffreys`]/2.
pub fn js_alpha(p: &Histogram, q: &Histogram, alpha: Alpha) -> Result<f64> {
    Ok(0.5 * (k_alpha(p, q, alpha)? + k_alpha(q, p, alpha)?))
}

/// A convex function φ with φ(1) = 0, the generator of a φ-divergence.
#[derive(Clone)]
pub struct PhiGenerator {
    label: String,
    phi: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
}

impl fmt::Debug for PhiGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PhiGenerator")
            .field("label", &self.label)
            .finish()
    }
}

impl PhiGenerator {
    /// Wraps an arbitrary generator, checking φ(1) = 0 within 1e-12 and
    /// midpoint convexity on a sampled grid of (0, 4].
    pub fn new(
        label: impl Into<String>,
        phi: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Result<Self> {
        let label = label.into();
        let at_one = phi(1.0);
        if !(at_one.abs() <= 1e-12) {
            return Err(Error::InvalidPhi {
                label,
                reason: format!("phi(1) = {at_one}, expected 0 within 1e-12"),
            });
        }
        let grid: Vec<f64> = (1..=40).map(|i| i as f64 * 0.1).collect();
        for &u in &grid {
            for &v in &grid {
                let lhs = phi(0.5 * (u + v));
                let rhs = 0.5 * (phi(u) + phi(v));
                if !(lhs <= rhs + 1e-12) {
                    return Err(Error::InvalidPhi {
                        label,
                        reason: format!("midpoint convexity fails at u={u}, v={v}"),
                    });
                }
            }
        }
        Ok(PhiGenerator {
            label,
            phi: Arc::new(phi),
        })
    }

    pub fn eval(&self, u: f64) -> f64 {
        (self.phi)(u)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// φ(u) = −ln u. Generates KL(q:p).
    pub fn neg_log() -> Self {
        PhiGenerator::new("neg-log", |u: f64| -u.ln())
            .expect("negative logarithm is convex with phi(1)=0")
    }

    /// φ(u) = u ln u. Generates KL(p:q).
    pub fn x_log_x() -> Self {
        PhiGenerator::new("x-log-x", |u: f64| u * u.ln())
            .expect("u ln u is convex with phi(1)=0")
    }

    /// φ(u) = (u−1) ln u, the symmetrized form −ln u + u ln u.
    /// Generates the Jeffreys divergence.
    pub fn jeffreys_sym() -> Self {
        PhiGenerator::new("jeffreys", |u: f64| (u - 1.0) * u.ln())
            .expect("(u-1) ln u is convex with phi(1)=0")
    }

    /// φ(u) = (u/2) ln(2u/(1+u)). Generates half the K-divergence.
    pub fn k_half() -> Self {
        PhiGenerator::new("k-half", |u: f64| (u / 2.0) * (2.0 * u / (1.0 + u)).ln())
            .expect("(u/2) ln(2u/(1+u)) is convex with phi(1)=0")
    }

    /// Looks a built-in generator up by CLI name.
    pub fn from_name(name: &str) -> Result<Self> {
        match name {
            "neg-log" => Ok(Self::neg_log()),
            "x-log-x" => Ok(Self::x_log_x()),
            "jeffreys" => Ok(Self::jeffreys_sym()),
            "k-half" => Ok(Self::k_half()),
            other => Err(Error::UnknownPhi(other.to_string())),
        }
    }

    /// φ + φ*, which generates the symmetrized divergence
    /// I_{φ+φ*}(p,q) = I_φ(p:q) + I_φ(q:p).
    pub fn symmetrized(&self) -> PhiGenerator {
        let inner = self.phi.clone();
        PhiGenerator {
            label: format!("{}+{}*", self.label, self.label),
            phi: Arc::new(move |u| inner(u) + u * inner(1.0 / u)),
        }
    }
}

/// The coupled generator φ*(u) = u·φ(1/u).
///
/// Satisfies I_{φ*}(p:q) = I_φ(q:p) and is an involution: (φ*)* = φ pointwise.
/// Coupling preserves convexity and φ(1) = 0, so no revalidation is needed.
pub fn couple_phi(phi: &PhiGenerator) -> PhiGenerator {
    let inner = phi.phi.clone();
    PhiGenerator {
        label: format!("{}*", phi.label),
        phi: Arc::new(move |u| u * inner(1.0 / u)),
    }
}

/// φ-divergence I_φ(p:q) = Σ qⁱ φ(pⁱ/qⁱ).
pub fn phi_divergence(phi: &PhiGenerator, p: &Histogram, q: &Histogram) -> Result<f64> {
    check_dims(p.len(), q.len())?;
    Ok(p.bins()
        .iter()
        .zip(q.bins())
        .map(|(&a, &b)| b * phi.eval(a / b))
        .sum())
}

/// α-skew Jensen divergence
/// `J_F^(α)(p:q) = (1/(α(1−α))) [(1−α)F(p) + αF(q) − F((1−α)p + αq)]`
/// for a vector generator F.
///
/// Satisfies J_F^(α)(q:p) = J_F^(1−α)(p:q). The endpoints dispatch to the
/// analytic limits: α → 0 gives the Bregman divergence B_F(q:p) and α → 1
/// gives B_F(p:q) (for the Shannon generator on histograms these are the
/// oriented Kullback-Leibler divergences).
pub fn skew_jensen<G: VectorGenerator + ?Sized>(
    f: &G,
    p: &[f64],
    q: &[f64],
    alpha: Alpha,
) -> Result<f64> {
    check_dims(p.len(), q.len())?;
    f.check_domain(p)?;
    f.check_domain(q)?;
    let a = alpha.value();
    if alpha.is_endpoint() {
        let v = if a == 0.0 {
            generators::bregman_raw(f, q, p)
        } else {
            generators::bregman_raw(f, p, q)
        };
        return Ok(v.max(0.0));
    }
    let gap = generators::gap(f, 1.0 - a, p, q);
    Ok((gap / (a * (1.0 - a))).max(0.0))
}

/// Symmetrized α-skew Jensen divergence
/// `sJ_F^(α)(p,q) = (1/(2α(1−α))) [F(p) + F(q) − F(αp+(1−α)q) − F((1−α)p+αq)]`.
///
/// Equals `(J_F^(α)(p:q) + J_F^(α)(q:p))/2`, is symmetric in (p, q), and is
/// invariant under α ↔ 1−α. The endpoints dispatch to the common analytic
/// limit `½(B_F(p:q) + B_F(q:p)) = ½⟨p−q, ∇F(p)−∇F(q)⟩`, i.e. half the
/// symmetrized Bregman divergence (half the Jeffreys divergence for the
/// Shannon generator on histograms).
pub fn sym_skew_jensen<G: VectorGenerator + ?Sized>(
    f: &G,
    p: &[f64],
    q: &[f64],
    alpha: Alpha,
) -> Result<f64> {
    check_dims(p.len(), q.len())?;
    f.check_domain(p)?;
    f.check_domain(q)?;
    let a = alpha.value();
    if alpha.is_endpoint() {
        let gp = f.grad(p);
        let gq = f.grad(q);
        let v: f64 = p
            .iter()
            .zip(q)
            .zip(gp.iter().zip(&gq))
            .map(|((&x, &y), (&gx, &gy))| (x - y) * (gx - gy))
            .sum();
        return Ok((0.5 * v).max(0.0));
    }
    let total =
        f.eval(p) + f.eval(q) - f.eval(&mix(a, p, q)) - f.eval(&mix(1.0 - a, p, q));
    Ok((total / (2.0 * a * (1.0 - a))).max(0.0))
}

/// Symmetrized skew Kullback-Leibler divergence
/// `sKL^(α)(p,q) = (1/(2α(1−α))) [H(αp+(1−α)q) + H((1−α)p+αq) − H(p) − H(q)]`.
///
/// This is [`sym_skew_jensen`] with the Shannon generator, written with
/// entropies. One parameter unifies the classical symmetric divergences:
/// `sKL^(½) = 4·js`, and the endpoint limit (α → 0 or 1) is `jeffreys/2`,
/// to which the endpoints dispatch. Note the limit is *half* the Jeffreys
/// divergence; the defining average of two oriented divergences keeps the
/// factor ½ at the endpoints.
pub fn skl_alpha(p: &Histogram, q: &Histogram, alpha: Alpha) -> Result<f64> {
    check_dims(p.len(), q.len())?;
    if alpha.is_endpoint() {
        return Ok(jeffreys(p, q)? / 2.0);
    }
    let a = alpha.value();
    let total = entropy_slice(&mix(a, p.bins(), q.bins()))
        + entropy_slice(&mix(1.0 - a, p.bins(), q.bins()))
        - entropy(p)
        - entropy(q);
    Ok((total / (2.0 * a * (1.0 - a))).max(0.0))
}

/// Skew entropy average `L_α(p:q) = (H((1−α)p+αq) − H(p)) / (α(1−α))`,
/// defined for interior α only.
///
/// The two orientations average back to the symmetric family:
/// `(L_α(p:q) + L_α(q:p))/2 = sKL^(α)(p,q)` exactly.
///
/// A one-sided value can be negative: take p uniform and q anything else,
/// then the mixture has lower entropy than p. Only the symmetrized average is
/// guaranteed non-negative. Likewise `L_½(p:q) = 4·k_div(p,q)` holds only for
/// pairs with Σ(pⁱ−qⁱ) ln((pⁱ+qⁱ)/2) = 0 (for example coordinate swaps of each
/// other); in general the two sides differ.
pub fn l_alpha(p: &Histogram, q: &Histogram, alpha: Alpha) -> Result<f64> {
    check_dims(p.len(), q.len())?;
    let a = alpha.require_interior()?;
    let h_mix = entropy_slice(&mix(1.0 - a, p.bins(), q.bins()));
    Ok((h_mix - entropy(p)) / (a * (1.0 - a)))
}

/// The symmetric family under the reparametrization α′ = 1 − 2α:
/// `S_F^(α′)(p,q) = sJ_F^((1−α′)/2)(p,q)` for α′ ∈ [−1, 1].
///
/// α′ = 0 is the Jensen-Shannon-like midpoint; α′ = ±1 dispatch to the same
/// endpoint limit as [`sym_skew_jensen`].
pub fn s_param<G: VectorGenerator + ?Sized>(
    f: &G,
    p: &[f64],
    q: &[f64],
    alpha_prime: f64,
) -> Result<f64> {
    if !alpha_prime.is_finite() || !(-1.0..=1.0).contains(&alpha_prime) {
        return Err(Error::InvalidAlpha(alpha_prime));
    }
    let alpha = Alpha::new((1.0 - alpha_prime) / 2.0)?;
    sym_skew_jensen(f, p, q, alpha)
}

/// One cell of a scalar divergence profile: `sj = sj_F^(α)(x + t(y−x), y)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProfileCell {
    pub alpha: f64,
    pub t: f64,
    pub sj: f64,
}

/// Evaluates the scalar symmetrized skew Jensen divergence
/// `sj_F^(α)(x_t, y)` with `x_t = x + t(y−x)` over a grid of α and t values,
/// for external plotting.
///
/// α values must lie in (0, ½]; every `x_t` must stay inside the generator
/// domain.
pub fn scalar_profile(
    f: ConvexGenerator,
    x: f64,
    y: f64,
    alpha_grid: &[f64],
    t_grid: &[f64],
) -> Result<Vec<ProfileCell>> {
    if alpha_grid.is_empty() || t_grid.is_empty() {
        return Err(Error::InvalidConfig(
            "profile grids must be non-empty".to_string(),
        ));
    }
    for &a in alpha_grid {
        if !a.is_finite() || !(a > 0.0 && a <= 0.5) {
            return Err(Error::InvalidAlpha(a));
        }
    }
    f.check_domain(x)?;
    f.check_domain(y)?;
    let mut cells = Vec::with_capacity(alpha_grid.len() * t_grid.len());
    for &a in alpha_grid {
        for &t in t_grid {
            let xt = x + t * (y - x);
            f.check_domain(xt)?;
            let total = f.eval(xt) + f.eval(y)
                - f.eval(a * xt + (1.0 - a) * y)
                - f.eval((1.0 - a) * xt + a * y);
            let sj = (total / (2.0 * a * (1.0 - a))).max(0.0);
            cells.push(ProfileCell { alpha: a, t, sj });
        }
    }
    Ok(cells)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::SeparableGenerator;
    use crate::IDENTITY_TOL;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn h(bins: &[f64]) -> Histogram {
        Histogram::new(bins.to_vec()).unwrap()
    }

    fn a(v: f64) -> Alpha {
        Alpha::new(v).unwrap()
    }

    /// Seeded uniform-simplex draws, smoothed like ingested data.
    fn random_histograms(rng: &mut ChaCha8Rng, d: usize, n: usize) -> Vec<Histogram> {
        (0..n)
            .map(|_| {
                let raw: Vec<f64> = (0..d).map(|_| -rng.random::<f64>().ln()).collect();
                let sum: f64 = raw.iter().sum();
                let norm: Vec<f64> = raw.iter().map(|x| x / sum).collect();
                Histogram::smoothed(&norm, 1e-9).unwrap()
            })
            .collect()
    }

    #[test]
    fn histogram_validation() {
        assert!(Histogram::new(vec![0.5, 0.5]).is_ok());
        assert!(matches!(
            Histogram::new(vec![1.0]),
            Err(Error::InvalidHistogram(_))
        ));
        assert!(matches!(
            Histogram::new(vec![0.6, 0.5]),
            Err(Error::InvalidHistogram(_))
        ));
        assert!(matches!(
            Histogram::new(vec![1.0, 0.0]),
            Err(Error::InvalidHistogram(_))
        ));
        assert!(matches!(
            Histogram::new(vec![0.5, -0.5, 1.0]),
            Err(Error::InvalidHistogram(_))
        ));

        let s = Histogram::smoothed(&[1.0, 0.0], 1e-9).unwrap();
        assert!((s.bins()[0] - (1.0 - 1e-9)).abs() < 1e-12);
        assert!((s.bins()[1] - 1e-9).abs() < 1e-12);
        // smoothing is invariant to the raw count scale
        let counts = Histogram::smoothed(&[2_000_000.0, 0.0], 1e-9).unwrap();
        assert_eq!(counts.bins(), s.bins());
        assert!(matches!(
            Histogram::smoothed(&[0.0, 0.0], 1e-9),
            Err(Error::InvalidHistogram(_))
        ));
    }

    #[test]
    fn measure_validation() {
        assert!(PositiveMeasure::new(vec![3.0, 7.0]).is_ok());
        assert!(PositiveMeasure::new(vec![0.0, 7.0]).is_ok());
        assert!(matches!(
            PositiveMeasure::new(vec![0.0, 0.0]),
            Err(Error::InvalidMeasure(_))
        ));
        assert!(matches!(
            PositiveMeasure::new(vec![-1.0, 2.0]),
            Err(Error::InvalidMeasure(_))
        ));
    }

    #[test]
    fn alpha_validation() {
        assert!(Alpha::new(0.0).unwrap().is_endpoint());
        assert!(Alpha::new(1.0).unwrap().is_endpoint());
        assert!(!Alpha::new(0.5).unwrap().is_endpoint());
        assert!(matches!(Alpha::new(1.5), Err(Error::InvalidAlpha(_))));
        assert!(matches!(Alpha::new(-0.1), Err(Error::InvalidAlpha(_))));
        assert!(matches!(
            Alpha::new(0.0).unwrap().require_interior(),
            Err(Error::EndpointAlpha(_))
        ));
    }

    #[test]
    fn entropy_examples() {
        assert!((entropy(&h(&[0.5, 0.5])) - std::f64::consts::LN_2).abs() < 1e-15);
        assert!((entropy(&h(&[0.9, 0.1])) - 0.3250829733914482).abs() < 1e-15);
        let e = 1e-9;
        let nearly_delta = h(&[1.0 - 2.0 * e, e, e]);
        assert!((entropy(&nearly_delta) - 4.3446531726351264e-8).abs() < 1e-15);
    }

    #[test]
    fn entropy_bounds_on_random_histograms() {
        let mut rng = ChaCha8Rng::seed_from_u64(100);
        for d in [2usize, 8, 64] {
            for p in random_histograms(&mut rng, d, 100) {
                let v = entropy(&p);
                assert!(v >= 0.0 && v <= (d as f64).ln() + 1e-12);
            }
        }
    }

    #[test]
    fn cross_entropy_examples() {
        let p = h(&[0.5, 0.5]);
        let q = h(&[0.25, 0.75]);
        assert!((cross_entropy(&p, &p).unwrap() - entropy(&p)).abs() < 1e-15);
        assert!((cross_entropy(&p, &q).unwrap() - 0.8369882167858358).abs() < 1e-15);
        // oriented: H(p:q) != H(q:p)
        assert!(
            (cross_entropy(&p, &q).unwrap() - cross_entropy(&q, &p).unwrap()).abs() > 1e-3
        );
        assert!(cross_entropy(&p, &q).unwrap() >= entropy(&p));
        assert!(matches!(
            cross_entropy(&p, &h(&[0.3, 0.3, 0.4])),
            Err(Error::LengthMismatch(2, 3))
        ));
    }

    #[test]
    fn kl_examples() {
        let p = h(&[0.5, 0.5]);
        let q = h(&[0.25, 0.75]);
        assert_eq!(kl(&p, &p).unwrap(), 0.0);
        assert!((kl(&p, &q).unwrap() - 0.14384103622589042).abs() < 1e-15);
        let v = kl(&h(&[0.9, 0.1]), &h(&[0.1, 0.9])).unwrap();
        assert!((v - 0.8 * 9.0f64.ln()).abs() < 1e-15);
        // KL = cross-entropy minus entropy
        assert!(
            (kl(&p, &q).unwrap() - (cross_entropy(&p, &q).unwrap() - entropy(&p))).abs()
                < IDENTITY_TOL
        );
    }

    #[test]
    fn gibbs_inequality_on_random_pairs() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..1000 {
            let d = [2, 8, 64][rng.random_range(0..3)];
            let pair = random_histograms(&mut rng, d, 2);
            let v = kl(&pair[0], &pair[1]).unwrap();
            let sup = pair[0]
                .bins()
                .iter()
                .zip(pair[1].bins())
                .map(|(a, b)| (a - b).abs())
                .fold(0.0f64, f64::max);
            assert!(v >= 0.0);
            if sup > 1e-12 {
                assert!(v > 1e-12, "kl={v} at sup distance {sup}");
            }
            assert!(kl(&pair[0], &pair[0]).unwrap().abs() <= 1e-12);
        }
    }

    #[test]
    fn ekl_examples() {
        let m = |v: &[f64]| PositiveMeasure::new(v.to_vec()).unwrap();
        assert_eq!(ekl(&m(&[3.0, 7.0]), &m(&[3.0, 7.0])).unwrap(), 0.0);
        let v = ekl(&m(&[1.0, 2.0]), &m(&[2.0, 2.0])).unwrap();
        assert!((v - 0.3068528194400547).abs() < 1e-15);
        // reduces to kl on normalized inputs
        let v = ekl(&m(&[0.5, 0.5]), &m(&[0.25, 0.75])).unwrap();
        assert!((v - 0.14384103622589042).abs() < 1e-12);
        // q has a zero where p has mass: the divergence is infinite
        assert!(ekl(&m(&[1.0, 1.0]), &m(&[2.0, 0.0])).unwrap().is_infinite());
        // p zero where q positive contributes q_i
        let v = ekl(&m(&[0.0, 2.0]), &m(&[3.0, 2.0])).unwrap();
        assert!((v - 3.0).abs() < 1e-15);
    }

    #[test]
    fn jeffreys_examples() {
        let p = h(&[0.5, 0.5]);
        let q = h(&[0.25, 0.75]);
        assert_eq!(jeffreys(&p, &p).unwrap(), 0.0);
        assert!((jeffreys(&p, &q).unwrap() - 0.2746530721670274).abs() < 1e-15);
        let big = jeffreys(&h(&[0.9, 0.1]), &h(&[0.1, 0.9])).unwrap();
        assert!((big - 1.6 * 9.0f64.ln()).abs() < 1e-14);
        // symmetric and equal to the sum of the two oriented KLs
        assert!(
            (jeffreys(&p, &q).unwrap() - (kl(&p, &q).unwrap() + kl(&q, &p).unwrap())).abs()
                < IDENTITY_TOL
        );
        assert!((jeffreys(&p, &q).unwrap() - jeffreys(&q, &p).unwrap()).abs() < IDENTITY_TOL);
    }

    #[test]
    fn js_examples() {
        let p = h(&[0.9, 0.1]);
        let q = h(&[0.1, 0.9]);
        assert_eq!(js(&p, &p).unwrap(), 0.0);
        assert!((js(&p, &q).unwrap() - 0.3680642071684971).abs() < 1e-15);
        // near-disjoint supports saturate the ln 2 bound
        let e = 1e-9;
        let sat = js(&h(&[1.0 - e, e]), &h(&[e, 1.0 - e])).unwrap();
        assert!((sat - std::f64::consts::LN_2).abs() < 1e-7);
        assert!(sat <= std::f64::consts::LN_2);
    }

    #[test]
    fn js_closed_form_matches_average_of_kls() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..200 {
            let d = [2, 8, 64][rng.random_range(0..3)];
            let pair = random_histograms(&mut rng, d, 2);
            let (p, q) = (&pair[0], &pair[1]);
            let m = Histogram::new(mix(0.5, p.bins(), q.bins())).unwrap();
            let avg = 0.5 * (kl(p, &m).unwrap() + kl(q, &m).unwrap());
            assert!((js(p, q).unwrap() - avg).abs() < IDENTITY_TOL);
            assert!(js(p, q).unwrap() <= std::f64::consts::LN_2 + 1e-12);
        }
    }

    #[test]
    fn js_sandwich_between_zero_and_quarter_jeffreys() {
        let mut rng = ChaCha8Rng::seed_from_u64(22);
        for _ in 0..1000 {
            let d = [2, 8, 64][rng.random_range(0..3)];
            let pair = random_histograms(&mut rng, d, 2);
            let jsv = js(&pair[0], &pair[1]).unwrap();
            let jv = jeffreys(&pair[0], &pair[1]).unwrap();
            assert!(jsv >= 0.0);
            assert!(jsv <= 0.25 * jv + 1e-15);
        }
    }

    #[test]
    fn sqrt_js_satisfies_triangle_inequality() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..1000 {
            let d = [2, 8, 64][rng.random_range(0..3)];
            let t = random_histograms(&mut rng, d, 3);
            let ab = js(&t[0], &t[1]).unwrap().sqrt();
            let bc = js(&t[1], &t[2]).unwrap().sqrt();
            let ac = js(&t[0], &t[2]).unwrap().sqrt();
            assert!(ac <= ab + bc + 1e-12);
        }
    }

    #[test]
    fn k_div_examples() {
        let p = h(&[0.9, 0.1]);
        let q = h(&[0.1, 0.9]);
        assert_eq!(k_div(&p, &p).unwrap(), 0.0);
        assert!((k_div(&p, &q).unwrap() - 0.3680642071684971).abs() < 1e-15);
        // equals KL against the midpoint mixture
        let mut rng = ChaCha8Rng::seed_from_u64(24);
        for _ in 0..100 {
            let pair = random_histograms(&mut rng, 8, 2);
            let m = Histogram::new(mix(0.5, pair[0].bins(), pair[1].bins())).unwrap();
            assert!(
                (k_div(&pair[0], &pair[1]).unwrap() - kl(&pair[0], &m).unwrap()).abs()
                    < IDENTITY_TOL
            );
            // js is the average of the two K orientations
            let avg = 0.5
                * (k_div(&pair[0], &pair[1]).unwrap() + k_div(&pair[1], &pair[0]).unwrap());
            assert!((js(&pair[0], &pair[1]).unwrap() - avg).abs() < IDENTITY_TOL);
        }
    }

    #[test]
    fn k_alpha_endpoints_and_midpoint() {
        let p = h(&[0.9, 0.1]);
        let q = h(&[0.1, 0.9]);
        assert_eq!(k_alpha(&p, &q, a(0.0)).unwrap(), 0.0);
        assert!(
            (k_alpha(&p, &q, a(1.0)).unwrap() - kl(&p, &q).unwrap()).abs() < IDENTITY_TOL
        );
        assert!((k_alpha(&p, &q, a(0.5)).unwrap() - 0.3680642071684971).abs() < 1e-15);
    }

    #[test]
    fn js_alpha_endpoints() {
        let p = h(&[0.9, 0.1]);
        let q = h(&[0.1, 0.9]);
        assert!((js_alpha(&p, &q, a(0.5)).unwrap() - js(&p, &q).unwrap()).abs() < 1e-12);
        assert!(
            (js_alpha(&p, &q, a(1.0)).unwrap() - jeffreys(&p, &q).unwrap() / 2.0).abs() < 1e-12
        );
        assert!((js_alpha(&p, &q, a(1.0)).unwrap() - 1.7577796618689758).abs() < 1e-14);
        assert_eq!(js_alpha(&p, &q, a(0.0)).unwrap(), 0.0);
        // symmetric in (p, q)
        let mut rng = ChaCha8Rng::seed_from_u64(25);
        for _ in 0..100 {
            let pair = random_histograms(&mut rng, 8, 2);
            for al in [0.1, 0.3, 0.45, 1.0] {
                let x = js_alpha(&pair[0], &pair[1], a(al)).unwrap();
                let y = js_alpha(&pair[1], &pair[0], a(al)).unwrap();
                assert!((x - y).abs() < IDENTITY_TOL);
            }
        }
    }

    #[test]
    fn phi_divergence_examples() {
        let p = h(&[0.5, 0.5]);
        let q = h(&[0.25, 0.75]);
        for phi in [
            PhiGenerator::neg_log(),
            PhiGenerator::x_log_x(),
            PhiGenerator::jeffreys_sym(),
            PhiGenerator::k_half(),
        ] {
            assert!(phi_divergence(&phi, &p, &p).unwrap().abs() < 1e-12);
        }
        // (u−1) ln u generates Jeffreys
        let v = phi_divergence(&PhiGenerator::jeffreys_sym(), &p, &q).unwrap();
        assert!((v - jeffreys(&p, &q).unwrap()).abs() < IDENTITY_TOL);
        assert!((v - 0.2746530721670274).abs() < 1e-14);
        // (u/2) ln(2u/(1+u)) generates half the K-divergence
        let v = phi_divergence(&PhiGenerator::k_half(), &p, &q).unwrap();
        assert!((v - 0.5 * k_div(&p, &q).unwrap()).abs() < IDENTITY_TOL);
    }

    #[test]
    fn phi_validation_rejects_bad_generators() {
        assert!(matches!(
            PhiGenerator::new("shifted", |u: f64| u),
            Err(Error::InvalidPhi { .. })
        ));
        assert!(matches!(
            PhiGenerator::new("concave", |u: f64| -(u - 1.0) * (u - 1.0)),
            Err(Error::InvalidPhi { .. })
        ));
        assert!(matches!(
            PhiGenerator::from_name("nope"),
            Err(Error::UnknownPhi(_))
        ));
    }

    #[test]
    fn phi_coupling_swaps_arguments() {
        // The printed reference for this worked example is kl(q,p): with
        // phi(u) = u ln u, both I_{phi*}(p:q) and I_phi(q:p) reduce to
        // sum q ln(q/p).
        let p = h(&[0.5, 0.5]);
        let q = h(&[0.25, 0.75]);
        let phi = PhiGenerator::x_log_x();
        let coupled = couple_phi(&phi);
        let lhs = phi_divergence(&coupled, &p, &q).unwrap();
        let rhs = phi_divergence(&phi, &q, &p).unwrap();
        assert!((lhs - rhs).abs() < IDENTITY_TOL);
        assert!((lhs - 0.13081203594113697).abs() < 1e-14);
        assert!((lhs - kl(&q, &p).unwrap()).abs() < IDENTITY_TOL);

        // coupling neg-log yields u ln u pointwise
        let star = couple_phi(&PhiGenerator::neg_log());
        for u in [0.25, 0.5, 1.0, 2.0, 5.0] {
            assert!((star.eval(u) - u * u.ln()).abs() < 1e-12);
        }
    }

    #[test]
    fn phi_coupling_identity_on_random_pairs() {
        let mut rng = ChaCha8Rng::seed_from_u64(26);
        let named = [
            PhiGenerator::neg_log(),
            PhiGenerator::x_log_x(),
            PhiGenerator::jeffreys_sym(),
        ];
        for _ in 0..200 {
            let d = [2, 8][rng.random_range(0..2)];
            let pair = random_histograms(&mut rng, d, 2);
            for phi in &named {
                let coupled = couple_phi(phi);
                let lhs = phi_divergence(&coupled, &pair[0], &pair[1]).unwrap();
                let rhs = phi_divergence(phi, &pair[1], &pair[0]).unwrap();
                assert!((lhs - rhs).abs() < IDENTITY_TOL, "{}", phi.label());
                // phi + phi* generates a symmetric divergence
                let sym = phi.symmetrized();
                let s1 = phi_divergence(&sym, &pair[0], &pair[1]).unwrap();
                let s2 = phi_divergence(&sym, &pair[1], &pair[0]).unwrap();
                assert!((s1 - s2).abs() < IDENTITY_TOL);
            }
        }
    }

    #[test]
    fn phi_coupling_is_an_involution() {
        for phi in [
            PhiGenerator::neg_log(),
            PhiGenerator::x_log_x(),
            PhiGenerator::k_half(),
        ] {
            let back = couple_phi(&couple_phi(&phi));
            for i in 1..=40 {
                let u = i as f64 * 0.1;
                assert!((back.eval(u) - phi.eval(u)).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn skew_jensen_quadratic_is_squared_distance() {
        let f = SeparableGenerator::new(ConvexGenerator::Quadratic, 2);
        let p = [1.0, 2.0];
        let q = [3.0, 5.0];
        for al in [0.1, 0.25, 0.5, 0.9] {
            let v = skew_jensen(&f, &p, &q, a(al)).unwrap();
            assert!((v - 13.0).abs() < 1e-12, "alpha={al}: {v}");
        }
        assert!(skew_jensen(&f, &p, &p, a(0.3)).unwrap().abs() < 1e-12);
    }

    #[test]
    fn skew_jensen_shannon_brute_force_value() {
        // Defining-sum evaluation for F(x) = x ln x at alpha = 0.01; the
        // value also approximates the alpha -> 0 Bregman limit KL(q:p)
        // within 1%.
        let f = SeparableGenerator::new(ConvexGenerator::ShannonXLogX, 2);
        let p = [0.9, 0.1];
        let q = [0.1, 0.9];
        let v = skew_jensen(&f, &p, &q, a(0.01)).unwrap();
        assert!((v - 1.7404386666570466).abs() < 1e-13);
        let klqp = 1.7577796618689758;
        assert!((v - klqp).abs() / klqp < 0.03);
    }

    #[test]
    fn skew_jensen_endpoint_dispatch_is_the_bregman_limit() {
        let f = SeparableGenerator::new(ConvexGenerator::ShannonXLogX, 2);
        let p = [0.9, 0.1];
        let q = [0.1, 0.9];
        // alpha -> 0 tends to B_F(q:p) = KL(q:p) on histograms
        let limit0 = skew_jensen(&f, &p, &q, a(0.0)).unwrap();
        assert!((limit0 - 1.7577796618689758).abs() < 1e-14);
        let limit1 = skew_jensen(&f, &p, &q, a(1.0)).unwrap();
        assert!((limit1 - 0.8 * 9.0f64.ln()).abs() < 1e-14);
        // interior evaluations approach the dispatched endpoint
        let near = skew_jensen(&f, &p, &q, a(1e-6)).unwrap();
        assert!((near - limit0).abs() / limit0 < 1e-4);
    }

    #[test]
    fn skew_jensen_swap_symmetry() {
        let mut rng = ChaCha8Rng::seed_from_u64(27);
        let f8 = SeparableGenerator::new(ConvexGenerator::Shannon, 8);
        for _ in 0..100 {
            let pair = random_histograms(&mut rng, 8, 2);
            let (p, q) = (pair[0].bins(), pair[1].bins());
            // Dyadic alphas have exactly representable complements, so the
            // swap identity holds bitwise.
            for al in [0.25, 0.375, 0.5] {
                let x = skew_jensen(&f8, p, q, a(al)).unwrap();
                let y = skew_jensen(&f8, q, p, a(1.0 - al)).unwrap();
                assert_eq!(x, y, "alpha={al}");
            }
            // Non-dyadic complements round, so compare within a few ulps.
            for al in [0.1, 0.3, 0.45] {
                let x = skew_jensen(&f8, p, q, a(al)).unwrap();
                let y = skew_jensen(&f8, q, p, a(1.0 - al)).unwrap();
                assert!((x - y).abs() <= 1e-13 * x.max(1.0), "alpha={al}: {x} vs {y}");
            }
        }
    }

    #[test]
    fn sym_skew_jensen_identities() {
        let mut rng = ChaCha8Rng::seed_from_u64(28);
        for d in [2usize, 8, 64] {
            let f = SeparableGenerator::new(ConvexGenerator::Shannon, d);
            for _ in 0..50 {
                let pair = random_histograms(&mut rng, d, 2);
                let (p, q) = (pair[0].bins(), pair[1].bins());
                for al in [0.1, 0.3, 0.45, 0.5] {
                    let s = sym_skew_jensen(&f, p, q, a(al)).unwrap();
                    // average of the two orientations
                    let avg = 0.5
                        * (skew_jensen(&f, p, q, a(al)).unwrap()
                            + skew_jensen(&f, q, p, a(al)).unwrap());
                    assert!((s - avg).abs() < IDENTITY_TOL);
                    // symmetry in the pair and in alpha
                    let swapped = sym_skew_jensen(&f, q, p, a(al)).unwrap();
                    assert!((s - swapped).abs() < IDENTITY_TOL);
                    let mirrored = sym_skew_jensen(&f, p, q, a(1.0 - al)).unwrap();
                    assert!((s - mirrored).abs() < IDENTITY_TOL);
                    assert!(s >= 0.0 && s.is_finite());
                }
            }
        }
    }

    #[test]
    fn sym_skew_jensen_quadratic_squared_distance() {
        let f = SeparableGenerator::new(ConvexGenerator::Quadratic, 2);
        let p = [1.0, 2.0];
        let q = [3.0, 5.0];
        for al in [0.1, 0.25, 0.5] {
            let v = sym_skew_jensen(&f, &p, &q, a(al)).unwrap();
            assert!((v - 13.0).abs() < 1e-12);
        }
        assert!(sym_skew_jensen(&f, &p, &p, a(0.25)).unwrap().abs() < 1e-12);
        // the endpoint limit of the quadratic family is the same squared distance
        assert!((sym_skew_jensen(&f, &p, &q, a(0.0)).unwrap() - 13.0).abs() < 1e-12);
    }

    #[test]
    fn skl_alpha_examples() {
        let p = h(&[0.9, 0.1]);
        let q = h(&[0.1, 0.9]);
        let midpoint = skl_alpha(&p, &q, a(0.5)).unwrap();
        assert!((midpoint - 4.0 * js(&p, &q).unwrap()).abs() < IDENTITY_TOL);
        assert!((midpoint - 1.4722568286739883).abs() < 1e-14);
        // defining-formula value at alpha = 0.01, approaching jeffreys/2
        let near = skl_alpha(&p, &q, a(0.01)).unwrap();
        assert!((near - 1.7404386666570466).abs() < 1e-13);
        assert!((near - jeffreys(&p, &q).unwrap() / 2.0).abs() < 0.03);
        for al in [0.1, 0.3, 0.5] {
            assert!(skl_alpha(&p, &p, a(al)).unwrap().abs() < 1e-12);
        }
    }

    #[test]
    fn skl_alpha_endpoint_dispatch() {
        let p = h(&[0.9, 0.1]);
        let q = h(&[0.1, 0.9]);
        let half_jeffreys = jeffreys(&p, &q).unwrap() / 2.0;
        assert!((skl_alpha(&p, &q, a(0.0)).unwrap() - half_jeffreys).abs() < 1e-15);
        assert!((skl_alpha(&p, &q, a(1.0)).unwrap() - half_jeffreys).abs() < 1e-15);
        // the interior formula converges to the dispatched value
        let near = skl_alpha(&p, &q, a(1e-4)).unwrap();
        assert!((near - half_jeffreys).abs() / half_jeffreys < 2e-3);
    }

    #[test]
    fn skl_alpha_matches_generator_formulation() {
        let mut rng = ChaCha8Rng::seed_from_u64(29);
        for d in [2usize, 8, 64] {
            let shannon = SeparableGenerator::new(ConvexGenerator::Shannon, d);
            let xlogx = SeparableGenerator::new(ConvexGenerator::ShannonXLogX, d);
            for _ in 0..50 {
                let pair = random_histograms(&mut rng, d, 2);
                for al in [0.1, 0.25, 0.4, 0.5] {
                    let direct = skl_alpha(&pair[0], &pair[1], a(al)).unwrap();
                    let via_f =
                        sym_skew_jensen(&shannon, pair[0].bins(), pair[1].bins(), a(al))
                            .unwrap();
                    let via_x =
                        sym_skew_jensen(&xlogx, pair[0].bins(), pair[1].bins(), a(al))
                            .unwrap();
                    assert!((direct - via_f).abs() < IDENTITY_TOL);
                    assert!((direct - via_x).abs() < IDENTITY_TOL);
                }
            }
        }
    }

    #[test]
    fn skl_alpha_symmetries() {
        let mut rng = ChaCha8Rng::seed_from_u64(30);
        for _ in 0..200 {
            let pair = random_histograms(&mut rng, 8, 2);
            for al in [0.1, 0.3, 0.45] {
                let x = skl_alpha(&pair[0], &pair[1], a(al)).unwrap();
                let y = skl_alpha(&pair[1], &pair[0], a(al)).unwrap();
                let z = skl_alpha(&pair[0], &pair[1], a(1.0 - al)).unwrap();
                assert!((x - y).abs() < IDENTITY_TOL);
                assert!((x - z).abs() < IDENTITY_TOL);
            }
        }
    }

    #[test]
    fn l_alpha_examples() {
        let p = h(&[0.9, 0.1]);
        let q = h(&[0.1, 0.9]);
        assert!(l_alpha(&p, &p, a(0.3)).unwrap().abs() < 1e-12);
        // For this coordinate-swapped pair the one-sided midpoint identity
        // L_half = 4K holds (the correction term vanishes by symmetry).
        let v = l_alpha(&p, &q, a(0.5)).unwrap();
        assert!((v - 4.0 * k_div(&p, &q).unwrap()).abs() < IDENTITY_TOL);
        assert!((v - 1.4722568286739883).abs() < 1e-14);
        let v = l_alpha(&p, &q, a(0.25)).unwrap();
        assert!((v - 1.524167086205041).abs() < 1e-14);
        assert!(matches!(
            l_alpha(&p, &q, a(0.0)),
            Err(Error::EndpointAlpha(_))
        ));
    }

    #[test]
    fn l_alpha_one_sided_value_can_be_negative() {
        // Mixing the uniform histogram toward anything else lowers entropy,
        // so the oriented value is negative; only the symmetrized average is
        // a divergence.
        let uniform = h(&[0.5, 0.5]);
        let q = h(&[0.9, 0.1]);
        let v = l_alpha(&uniform, &q, a(0.5)).unwrap();
        assert!((v - -0.3291315140202071).abs() < 1e-14);
        assert!(v < 0.0);
    }

    #[test]
    fn l_alpha_orientations_average_to_skl() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..200 {
            let d = [2, 8][rng.random_range(0..2)];
            let pair = random_histograms(&mut rng, d, 2);
            for al in [0.1, 0.25, 0.3, 0.5] {
                let avg = 0.5
                    * (l_alpha(&pair[0], &pair[1], a(al)).unwrap()
                        + l_alpha(&pair[1], &pair[0], a(al)).unwrap());
                let skl = skl_alpha(&pair[0], &pair[1], a(al)).unwrap();
                assert!((avg - skl).abs() < IDENTITY_TOL);
            }
        }
    }

    #[test]
    fn s_param_reparametrization() {
        let mut rng = ChaCha8Rng::seed_from_u64(32);
        let f = SeparableGenerator::new(ConvexGenerator::Shannon, 8);
        for _ in 0..100 {
            let pair = random_histograms(&mut rng, 8, 2);
            let (p, q) = (pair[0].bins(), pair[1].bins());
            // alpha' = 1 - 2 alpha
            for (ap, al) in [(0.0, 0.5), (0.5, 0.25), (-0.5, 0.75), (0.9, 0.05)] {
                let s = s_param(&f, p, q, ap).unwrap();
                let sj = sym_skew_jensen(&f, p, q, a(al)).unwrap();
                assert!((s - sj).abs() < IDENTITY_TOL);
            }
            // |alpha'| = 1 dispatches to the endpoint limit
            let end = s_param(&f, p, q, 1.0).unwrap();
            let sj_end = sym_skew_jensen(&f, p, q, a(0.0)).unwrap();
            assert!((end - sj_end).abs() < IDENTITY_TOL);
        }
        let p = [0.5, 0.5];
        assert!(s_param(&f, &p, &p, 0.3).is_err()); // dimension mismatch vs d=8
        let f2 = SeparableGenerator::new(ConvexGenerator::Shannon, 2);
        assert!(s_param(&f2, &p, &p, 0.3).unwrap().abs() < 1e-12);
        assert!(matches!(
            s_param(&f2, &p, &p, 1.5),
            Err(Error::InvalidAlpha(_))
        ));
    }

    #[test]
    fn scalar_profile_grid() {
        let alphas = [0.1, 0.25, 0.5];
        let ts = [0.0, 0.5, 1.0, 1.5];
        let cells =
            scalar_profile(ConvexGenerator::Shannon, 0.3, 0.7, &alphas, &ts).unwrap();
        assert_eq!(cells.len(), alphas.len() * ts.len());
        let f1 = SeparableGenerator::new(ConvexGenerator::Shannon, 1);
        for c in &cells {
            // t = 1 lands on y exactly
            if c.t == 1.0 {
                assert!(c.sj.abs() < 1e-12);
            }
            // agrees with the vector form on 1-dimensional slices
            let xt = 0.3 + c.t * (0.7 - 0.3);
            let v = sym_skew_jensen(&f1, &[xt], &[0.7], a(c.alpha)).unwrap();
            assert!((c.sj - v).abs() < IDENTITY_TOL);
        }
    }

    #[test]
    fn scalar_profile_quadratic_rows_are_alpha_independent() {
        let alphas = [0.1, 0.3, 0.5];
        let ts = [0.0, 0.25, 0.75, 2.0];
        let cells =
            scalar_profile(ConvexGenerator::Quadratic, -1.0, 2.0, &alphas, &ts).unwrap();
        for t in ts {
            let row: Vec<f64> = cells.iter().filter(|c| c.t == t).map(|c| c.sj).collect();
            assert_eq!(row.len(), alphas.len());
            for v in &row {
                assert!((v - row[0]).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn scalar_profile_assembles_bernoulli_js_at_midpoint_alpha() {
        // Two scalar cells (one for each Bernoulli coordinate) sum to
        // 4 js((x_t, 1-x_t), (y, 1-y)) at alpha = 1/2 by separability.
        let (x, y) = (0.2, 0.6);
        let ts = [0.0, 0.5, 1.5];
        let cells = scalar_profile(ConvexGenerator::Shannon, x, y, &[0.5], &ts).unwrap();
        let co_cells =
            scalar_profile(ConvexGenerator::Shannon, 1.0 - x, 1.0 - y, &[0.5], &ts).unwrap();
        for (c, cc) in cells.iter().zip(&co_cells) {
            let xt = x + c.t * (y - x);
            let p = h(&[xt, 1.0 - xt]);
            let q = h(&[y, 1.0 - y]);
            assert!((c.t - cc.t).abs() < 1e-15);
            let total = c.sj + cc.sj;
            assert!((total - 4.0 * js(&p, &q).unwrap()).abs() < IDENTITY_TOL);
        }
    }

    #[test]
    fn scalar_profile_validation() {
        assert!(matches!(
            scalar_profile(ConvexGenerator::Shannon, 0.3, 0.7, &[], &[0.0]),
            Err(Error::InvalidConfig(_))
        ));
        assert!(matches!(
            scalar_profile(ConvexGenerator::Shannon, 0.3, 0.7, &[0.6], &[0.0]),
            Err(Error::InvalidAlpha(_))
        ));
        // t = 2 pushes x_t = -0.1 out of the Shannon domain
        assert!(matches!(
            scalar_profile(ConvexGenerator::Shannon, 0.3, 0.1, &[0.5], &[2.0]),
            Err(Error::OutOfDomain { .. })
        ));
    }
}
