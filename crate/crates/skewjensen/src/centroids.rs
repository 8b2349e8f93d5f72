//! Symmetrized skew Jensen centroids via CCCP fixed-point iteration.
//!
//! Given points p₁…pₙ with weights wᵢ and a skew α, the centroid minimizes
//! the energy
//!
//! ```text
//! E(c) = Σᵢ wᵢ [F(pᵢ) + F(c) − F(αpᵢ + (1−α)c) − F(αc + (1−α)pᵢ)]
//! ```
//!
//! which is `2α(1−α) Σᵢ wᵢ sJ_F^(α)(pᵢ, c)`. Splitting E into a convex part
//! (the `F(c)` term) and a concave part (the mixture terms) yields the CCCP
//! update
//!
//! ```text
//! c ← (∇F)⁻¹( Σᵢ wᵢ [(1−α)∇F(αpᵢ + (1−α)c) + α∇F(αc + (1−α)pᵢ)] )
//! ```
//!
//! whose fixed points are the stationary points of E and which never
//! increases E. The update needs no step size and stays inside the domain:
//! the argument of `(∇F)⁻¹` is a convex combination of gradient values.

use crate::divergences::Alpha;
use crate::expfam::{ExponentialFamily, NaturalParam};
use crate::generators::VectorGenerator;
use crate::{Error, Result};

/// Endpoint skews degenerate the update (at α ∈ {0, 1} the fixed-point
/// equation reduces to `c = c`), so the solver substitutes this interior
/// value and computes the nearby Bregman-limit centroid instead.
pub const ENDPOINT_ALPHA: f64 = 1e-6;

/// Weights must sum to one within this tolerance.
const WEIGHT_SUM_TOL: f64 = 1e-12;

/// A weighted centroid instance: points in the generator's domain, positive
/// normalized weights, and a skew.
#[derive(Debug, Clone)]
pub struct CentroidProblem<G: VectorGenerator> {
    generator: G,
    points: Vec<Vec<f64>>,
    weights: Vec<f64>,
    alpha: Alpha,
}

impl<G: VectorGenerator> CentroidProblem<G> {
    /// Validates at least one point, consistent dimensions, domain
    /// membership, and positive weights summing to one (uniform when `None`).
    pub fn new(
        generator: G,
        points: Vec<Vec<f64>>,
        weights: Option<Vec<f64>>,
        alpha: Alpha,
    ) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidProblem(
                "need at least one point".to_string(),
            ));
        }
        for p in &points {
            generator.check_domain(p)?;
        }
        let n = points.len();
        let weights = match weights {
            None => vec![1.0 / n as f64; n],
            Some(w) => {
                if w.len() != n {
                    return Err(Error::LengthMismatch(w.len(), n));
                }
                for &v in &w {
                    if !v.is_finite() || v <= 0.0 {
                        return Err(Error::InvalidWeight(v));
                    }
                }
                let sum: f64 = w.iter().sum();
                if (sum - 1.0).abs() > WEIGHT_SUM_TOL {
                    return Err(Error::InvalidProblem(format!(
                        "weights sum to {sum}, expected 1 within {WEIGHT_SUM_TOL:e}"
                    )));
                }
                w
            }
        };
        Ok(CentroidProblem {
            generator,
            points,
            weights,
            alpha,
        })
    }

    pub fn generator(&self) -> &G {
        &self.generator
    }

    pub fn points(&self) -> &[Vec<f64>] {
        &self.points
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn alpha(&self) -> Alpha {
        self.alpha
    }

    /// The skew the iteration actually runs at: the given α, or
    /// [`ENDPOINT_ALPHA`] in place of the degenerate endpoints.
    pub fn effective_alpha(&self) -> f64 {
        if self.alpha.is_endpoint() {
            if self.alpha.value() == 0.0 {
                ENDPOINT_ALPHA
            } else {
                1.0 - ENDPOINT_ALPHA
            }
        } else {
            self.alpha.value()
        }
    }
}

/// Starting point for the fixed-point iteration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Init {
    /// Weighted arithmetic mean Σ wᵢ pᵢ. Always in the (convex) domain.
    #[default]
    Arithmetic,
    /// Weighted quasi-arithmetic mean (∇F)⁻¹(Σ wᵢ ∇F(pᵢ)), the exact
    /// centroid of the dual Bregman problem.
    QuasiArithmetic,
}

/// Iteration controls. Convergence is declared when the sup-norm step falls
/// to `tol` or below.
#[derive(Debug, Clone, Copy)]
pub struct SolverOptions {
    pub init: Init,
    pub tol: f64,
    pub max_iter: usize,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions {
            init: Init::Arithmetic,
            tol: 1e-10,
            max_iter: 10_000,
        }
    }
}

/// Outcome of a centroid solve. `energy_trace[0]` is the energy at the
/// initializer, so `energy_trace.len() == iterations + 1`.
#[derive(Debug, Clone)]
pub struct CentroidResult {
    pub center: Vec<f64>,
    pub iterations: usize,
    pub converged: bool,
    pub residual: f64,
    pub energy_trace: Vec<f64>,
}

/// The centroid energy `E(c)` at the problem's effective skew.
pub fn energy<G: VectorGenerator>(problem: &CentroidProblem<G>, c: &[f64]) -> Result<f64> {
    problem.generator.check_domain(c)?;
    let a = problem.effective_alpha();
    let f = &problem.generator;
    let fc = f.eval(c);
    let mut total = 0.0;
    for (p, &w) in problem.points.iter().zip(&problem.weights) {
        let toward_c: Vec<f64> = p
            .iter()
            .zip(c)
            .map(|(&pi, &ci)| a * pi + (1.0 - a) * ci)
            .collect();
        let toward_p: Vec<f64> = p
            .iter()
            .zip(c)
            .map(|(&pi, &ci)| a * ci + (1.0 - a) * pi)
            .collect();
        total += w * (f.eval(p) + fc - f.eval(&toward_c) - f.eval(&toward_p));
    }
    Ok(total)
}

/// Weighted arithmetic mean of the points.
pub fn init_arithmetic<G: VectorGenerator>(problem: &CentroidProblem<G>) -> Vec<f64> {
    let d = problem.generator.dim();
    let mut c = vec![0.0; d];
    for (p, &w) in problem.points.iter().zip(&problem.weights) {
        for (ci, &pi) in c.iter_mut().zip(p) {
            *ci += w * pi;
        }
    }
    c
}

/// Weighted quasi-arithmetic mean (∇F)⁻¹(Σ wᵢ ∇F(pᵢ)).
pub fn init_quasi_arithmetic<G: VectorGenerator>(
    problem: &CentroidProblem<G>,
) -> Result<Vec<f64>> {
    let d = problem.generator.dim();
    let mut g = vec![0.0; d];
    for (p, &w) in problem.points.iter().zip(&problem.weights) {
        let gp = problem.generator.grad(p);
        for (gi, &v) in g.iter_mut().zip(&gp) {
            *gi += w * v;
        }
    }
    let c = problem.generator.grad_inv(&g)?;
    problem.generator.check_domain(&c)?;
    Ok(c)
}

/// One CCCP update from `c`. The result is validated to lie in the domain.
pub fn cccp_step<G: VectorGenerator>(
    problem: &CentroidProblem<G>,
    c: &[f64],
) -> Result<Vec<f64>> {
    problem.generator.check_domain(c)?;
    let a = problem.effective_alpha();
    let f = &problem.generator;
    let d = f.dim();
    let mut g = vec![0.0; d];
    for (p, &w) in problem.points.iter().zip(&problem.weights) {
        let toward_c: Vec<f64> = p
            .iter()
            .zip(c)
            .map(|(&pi, &ci)| a * pi + (1.0 - a) * ci)
            .collect();
        let toward_p: Vec<f64> = p
            .iter()
            .zip(c)
            .map(|(&pi, &ci)| a * ci + (1.0 - a) * pi)
            .collect();
        let g1 = f.grad(&toward_c);
        let g2 = f.grad(&toward_p);
        for i in 0..d {
            g[i] += w * ((1.0 - a) * g1[i] + a * g2[i]);
        }
    }
    let next = f.grad_inv(&g)?;
    f.check_domain(&next)?;
    Ok(next)
}

/// Runs the CCCP iteration to a fixed point.
///
/// The energy trace is checked every step; CCCP guarantees monotone descent,
/// so an increase beyond round-off (1e-12) indicates a broken generator and
/// aborts with [`Error::EnergyIncrease`]. Exhausting `max_iter` is not an
/// error: the best iterate is returned with `converged = false`.
pub fn solve_centroid<G: VectorGenerator>(
    problem: &CentroidProblem<G>,
    options: &SolverOptions,
) -> Result<CentroidResult> {
    if !(options.tol > 0.0) || options.max_iter == 0 {
        return Err(Error::InvalidProblem(format!(
            "solver needs a positive tolerance and at least one iteration, got tol={} max_iter={}",
            options.tol, options.max_iter
        )));
    }
    let mut c = match options.init {
        Init::Arithmetic => init_arithmetic(problem),
        Init::QuasiArithmetic => init_quasi_arithmetic(problem)?,
    };
    problem.generator.check_domain(&c)?;
    let mut energy_trace = vec![energy(problem, &c)?];
    let mut residual = f64::INFINITY;
    let mut converged = false;
    let mut iterations = 0;
    for it in 1..=options.max_iter {
        let next = cccp_step(problem, &c)?;
        residual = c
            .iter()
            .zip(&next)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0f64, f64::max);
        c = next;
        iterations = it;
        let e = energy(problem, &c)?;
        let last = *energy_trace.last().expect("trace starts non-empty");
        if e > last + 1e-12 {
            return Err(Error::EnergyIncrease {
                iteration: it,
                before: last,
                after: e,
            });
        }
        energy_trace.push(e);
        if residual <= options.tol {
            converged = true;
            break;
        }
    }
    Ok(CentroidResult {
        center: c,
        iterations,
        converged,
        residual,
        energy_trace,
    })
}

/// Centroid of exponential-family members in natural coordinates, using the
/// family's log-normalizer as the generator. Returns the center as a
/// validated [`NaturalParam`] alongside the solver diagnostics.
pub fn centroid_expfam(
    family: ExponentialFamily,
    members: &[NaturalParam],
    weights: Option<Vec<f64>>,
    alpha: Alpha,
    options: &SolverOptions,
) -> Result<(NaturalParam, CentroidResult)> {
    for m in members {
        if m.family() != family {
            return Err(Error::FamilyMismatch(family.name(), m.family().name()));
        }
    }
    let points: Vec<Vec<f64>> = members.iter().map(|m| m.theta().to_vec()).collect();
    let problem = CentroidProblem::new(family.log_normalizer(), points, weights, alpha)?;
    let result = solve_centroid(&problem, options)?;
    let center = NaturalParam::new(family, result.center.clone())?;
    Ok((center, result))
}

/// The Shannon-generator CCCP update at α = ½ in closed form: the weighted
/// geometric mean of the midpoints, `cⱼ ← Πᵢ ((cⱼ + pᵢⱼ)/2)^wᵢ`.
pub fn geometric_midpoint_update(points: &[Vec<f64>], weights: &[f64], c: &[f64]) -> Vec<f64> {
    let mut log_next = vec![0.0; c.len()];
    for (p, &w) in points.iter().zip(weights) {
        for (acc, (&pi, &ci)) in log_next.iter_mut().zip(p.iter().zip(c)) {
            *acc += w * (0.5 * (ci + pi)).ln();
        }
    }
    log_next.into_iter().map(f64::exp).collect()
}

/// The Burg-generator CCCP update at α = ½ in closed form: the weighted
/// harmonic mean of the midpoints, `cⱼ ← 1 / Σᵢ wᵢ · 2/(cⱼ + pᵢⱼ)`.
pub fn harmonic_midpoint_update(points: &[Vec<f64>], weights: &[f64], c: &[f64]) -> Vec<f64> {
    let mut inv_next = vec![0.0; c.len()];
    for (p, &w) in points.iter().zip(weights) {
        for (acc, (&pi, &ci)) in inv_next.iter_mut().zip(p.iter().zip(c)) {
            *acc += w * 2.0 / (ci + pi);
        }
    }
    inv_next.into_iter().map(|v| 1.0 / v).collect()
}
