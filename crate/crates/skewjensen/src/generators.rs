//! Strictly convex generators and their Jensen gaps.
//!
//! A generator is a strictly convex scalar function F with a closed-form
//! gradient and inverse gradient. Everything else in the crate is built from
//! the Jensen gap `λF(x) + (1−λ)F(y) − F(λx + (1−λ)y)` of such functions,
//! evaluated either coordinate-wise ([`SeparableGenerator`]) or on whole
//! vectors (exponential-family log-normalizers, see [`crate::expfam`]).
//!
//! | name            | F(x)          | ∇F(x)     | (∇F)⁻¹(y) | domain  |
//! |-----------------|---------------|-----------|-----------|---------|
//! | `shannon`       | x ln x − x    | ln x      | e^y       | (0, ∞)  |
//! | `shannon-xlogx` | x ln x        | 1 + ln x  | e^(y−1)   | (0, ∞)  |
//! | `burg`          | −ln x         | −1/x      | −1/y      | (0, ∞)  |
//! | `quadratic`     | x²            | 2x        | y/2       | (−∞, ∞) |
//!
//! `shannon` and `shannon-xlogx` differ by the linear term −x, so every Jensen
//! gap and Bregman divergence they induce is identical; both are exposed and
//! the equivalence is tested rather than picking one form silently.

use crate::{Error, Result};

/// Scalar domain of a generator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Domain {
    /// The open half-line (0, ∞).
    PositiveReals,
    /// The whole real line.
    AllReals,
}

impl Domain {
    pub fn contains(self, x: f64) -> bool {
        match self {
            Domain::PositiveReals => x.is_finite() && x > 0.0,
            Domain::AllReals => x.is_finite(),
        }
    }
}

/// A strictly convex scalar function with closed-form gradient and inverse gradient.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConvexGenerator {
    /// Shannon information, F(x) = x ln x − x.
    Shannon,
    /// Shannon variant without the linear term, F(x) = x ln x.
    /// Induces exactly the same divergences as [`ConvexGenerator::Shannon`].
    ShannonXLogX,
    /// Burg information, F(x) = −ln x.
    Burg,
    /// F(x) = x². Analytic oracle: every Jensen gap reduces to λ(1−λ)(x−y)².
    Quadratic,
}

/// Looks a generator up by the name used on the command line.
///
/// Accepted names: `shannon`, `shannon-xlogx` (alias `xlogx`), `burg`,
/// `quadratic`.
pub fn make_generator(name: &str) -> Result<ConvexGenerator> {
    match name {
        "shannon" => Ok(ConvexGenerator::Shannon),
        "shannon-xlogx" | "xlogx" => Ok(ConvexGenerator::ShannonXLogX),
        "burg" => Ok(ConvexGenerator::Burg),
        "quadratic" => Ok(ConvexGenerator::Quadratic),
        other => Err(Error::UnknownGenerator(other.to_string())),
    }
}

impl ConvexGenerator {
    pub fn name(self) -> &'static str {
        match self {
            ConvexGenerator::Shannon => "shannon",
            ConvexGenerator::ShannonXLogX => "shannon-xlogx",
            ConvexGenerator::Burg => "burg",
            ConvexGenerator::Quadratic => "quadratic",
        }
    }

    pub fn domain(self) -> Domain {
        match self {
            ConvexGenerator::Quadratic => Domain::AllReals,
            _ => Domain::PositiveReals,
        }
    }

    /// F(x). The Shannon forms use the continuous extension 0·ln 0 = 0.
    pub fn eval(self, x: f64) -> f64 {
        match self {
            ConvexGenerator::Shannon => {
                if x == 0.0 {
                    0.0
                } else {
                    x * x.ln() - x
                }
            }
            ConvexGenerator::ShannonXLogX => {
                if x == 0.0 {
                    0.0
                } else {
                    x * x.ln()
                }
            }
            ConvexGenerator::Burg => -x.ln(),
            ConvexGenerator::Quadratic => x * x,
        }
    }

    /// ∇F(x).
    pub fn grad(self, x: f64) -> f64 {
        match self {
            ConvexGenerator::Shannon => x.ln(),
            ConvexGenerator::ShannonXLogX => 1.0 + x.ln(),
            ConvexGenerator::Burg => -1.0 / x,
            ConvexGenerator::Quadratic => 2.0 * x,
        }
    }

    /// (∇F)⁻¹(y).
    pub fn grad_inv(self, y: f64) -> f64 {
        match self {
            ConvexGenerator::Shannon => y.exp(),
            ConvexGenerator::ShannonXLogX => (y - 1.0).exp(),
            ConvexGenerator::Burg => -1.0 / y,
            ConvexGenerator::Quadratic => y / 2.0,
        }
    }

    pub(crate) fn check_domain(self, x: f64) -> Result<()> {
        if self.domain().contains(x) {
            Ok(())
        } else {
            Err(Error::OutOfDomain {
                generator: self.name().to_string(),
                value: x,
            })
        }
    }
}

/// Jensen gap `λF(x) + (1−λ)F(y) − F(λx + (1−λ)y)`.
///
/// Strict convexity makes the gap positive for x ≠ y; the tiny negatives that
/// rounding can produce at x ≈ y are clamped to zero.
pub fn jensen_gap(f: ConvexGenerator, x: f64, y: f64, lambda: f64) -> Result<f64> {
    if !(lambda > 0.0 && lambda < 1.0) {
        return Err(Error::InvalidWeight(lambda));
    }
    f.check_domain(x)?;
    f.check_domain(y)?;
    let gap = lambda * f.eval(x) + (1.0 - lambda) * f.eval(y) - f.eval(lambda * x + (1.0 - lambda) * y);
    Ok(gap.max(0.0))
}

/// A strictly convex differentiable function on a vector domain with an
/// invertible gradient.
///
/// Implemented by [`SeparableGenerator`] (coordinate-wise sums of a scalar
/// generator) and by exponential-family log-normalizers, which are convex in
/// the natural parameter but not separable.
pub trait VectorGenerator {
    fn dim(&self) -> usize;
    fn contains(&self, x: &[f64]) -> bool;
    fn eval(&self, x: &[f64]) -> f64;
    fn grad(&self, x: &[f64]) -> Vec<f64>;
    /// Inverse of [`VectorGenerator::grad`]. Convex combinations of gradient
    /// values are always in range; anything else may not be (for instance a
    /// mean-parameter vector implying a non-positive variance) and is
    /// rejected.
    fn grad_inv(&self, y: &[f64]) -> Result<Vec<f64>>;
    /// Short name for error messages.
    fn describe(&self) -> String;

    fn check_domain(&self, x: &[f64]) -> Result<()> {
        if x.len() != self.dim() {
            return Err(Error::LengthMismatch(x.len(), self.dim()));
        }
        if self.contains(x) {
            Ok(())
        } else {
            let bad = x
                .iter()
                .copied()
                .find(|v| !v.is_finite() || *v <= 0.0)
                .unwrap_or(f64::NAN);
            Err(Error::OutOfDomain {
                generator: self.describe(),
                value: bad,
            })
        }
    }
}

/// Coordinate-wise sum of a scalar generator over a fixed dimension:
/// `F(x) = Σ_i f(x_i)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SeparableGenerator {
    base: ConvexGenerator,
    dim: usize,
}

impl SeparableGenerator {
    pub fn new(base: ConvexGenerator, dim: usize) -> Self {
        SeparableGenerator { base, dim }
    }

    pub fn base(&self) -> ConvexGenerator {
        self.base
    }
}

impl VectorGenerator for SeparableGenerator {
    fn dim(&self) -> usize {
        self.dim
    }

    fn contains(&self, x: &[f64]) -> bool {
        x.len() == self.dim && x.iter().all(|&v| self.base.domain().contains(v))
    }

    fn eval(&self, x: &[f64]) -> f64 {
        x.iter().map(|&v| self.base.eval(v)).sum()
    }

    fn grad(&self, x: &[f64]) -> Vec<f64> {
        x.iter().map(|&v| self.base.grad(v)).collect()
    }

    fn grad_inv(&self, y: &[f64]) -> Result<Vec<f64>> {
        Ok(y.iter().map(|&v| self.base.grad_inv(v)).collect())
    }

    fn describe(&self) -> String {
        format!("{} (d={})", self.base.name(), self.dim)
    }
}

/// Raw vector Jensen gap `wF(x) + (1−w)F(y) − F(wx + (1−w)y)`, no validation.
pub(crate) fn gap<G: VectorGenerator + ?Sized>(f: &G, w: f64, x: &[f64], y: &[f64]) -> f64 {
    let mixed: Vec<f64> = x
        .iter()
        .zip(y)
        .map(|(&a, &b)| w * a + (1.0 - w) * b)
        .collect();
    w * f.eval(x) + (1.0 - w) * f.eval(y) - f.eval(&mixed)
}

/// Raw Bregman divergence `B_F(x:y) = F(x) − F(y) − ⟨x−y, ∇F(y)⟩`, no validation.
pub(crate) fn bregman_raw<G: VectorGenerator + ?Sized>(f: &G, x: &[f64], y: &[f64]) -> f64 {
    let gy = f.grad(y);
    let inner: f64 = x
        .iter()
        .zip(y)
        .zip(&gy)
        .map(|((&a, &b), &g)| (a - b) * g)
        .sum();
    f.eval(x) - f.eval(y) - inner
}
