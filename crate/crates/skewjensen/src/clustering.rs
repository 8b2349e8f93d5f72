//! k-means and nearest-centroid classification under the symmetrized skew
//! Jensen divergence, plus the α-sweep harness that tunes the skew on a
//! labeled histogram dataset.
//!
//! The assignment metric is `sym_skew_jensen`, which is symmetric, so there
//! is no orientation choice to make; the update step reuses the CCCP centroid
//! solver. Class centers are positive vectors that need *not* be normalized:
//! the Jensen centroid of histograms generally leaves the simplex, the
//! Shannon generator is defined on the whole positive orthant, and projecting
//! back would change the optimum. [`nn_classify`] therefore evaluates the
//! divergence against the raw center.

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Gamma};

use crate::centroids::{solve_centroid, CentroidProblem, CentroidResult, SolverOptions};
use crate::divergences::{sym_skew_jensen, Alpha, Histogram};
use crate::generators::{ConvexGenerator, SeparableGenerator};
use crate::{Error, Result};

pub type ClassId = u32;

/// Histograms with class labels. Every histogram has the same number of bins
/// and every class present has at least one item by construction.
#[derive(Debug, Clone)]
pub struct LabeledDataset {
    items: Vec<(Histogram, ClassId)>,
}

impl LabeledDataset {
    pub fn new(items: Vec<(Histogram, ClassId)>) -> Result<Self> {
        let dim = match items.first() {
            None => {
                return Err(Error::InvalidDataset(
                    "dataset must contain at least one item".to_string(),
                ))
            }
            Some((h, _)) => h.len(),
        };
        for (h, _) in &items {
            if h.len() != dim {
                return Err(Error::LengthMismatch(h.len(), dim));
            }
        }
        Ok(LabeledDataset { items })
    }

    pub fn items(&self) -> &[(Histogram, ClassId)] {
        &self.items
    }

    pub fn classes(&self) -> BTreeSet<ClassId> {
        self.items.iter().map(|(_, c)| *c).collect()
    }

    pub fn dim(&self) -> usize {
        self.items[0].0.len()
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// Outcome of a [`kmeans`] run. `objective_trace[r]` is the total divergence
/// of all points to their assigned centers after round r's assignment step.
#[derive(Debug, Clone)]
pub struct KmeansResult {
    pub assignments: Vec<usize>,
    pub centers: Vec<Vec<f64>>,
    pub objective_trace: Vec<f64>,
    pub rounds: usize,
    pub converged: bool,
}

fn divergence_to_center(
    f: &SeparableGenerator,
    h: &Histogram,
    center: &[f64],
    alpha: Alpha,
) -> Result<f64> {
    sym_skew_jensen(f, h.bins(), center, alpha)
}

/// Index of the nearest center, ties broken toward the smallest index.
fn nearest(
    f: &SeparableGenerator,
    h: &Histogram,
    centers: &[Vec<f64>],
    alpha: Alpha,
) -> Result<usize> {
    let mut best = (f64::INFINITY, 0usize);
    for (j, c) in centers.iter().enumerate() {
        let d = divergence_to_center(f, h, c, alpha)?;
        if d < best.0 {
            best = (d, j);
        }
    }
    Ok(best.1)
}

/// Lloyd-style k-means with CCCP centroid updates.
///
/// Centers are seeded from `k` distinct points chosen by the seeded RNG.
/// Each round reassigns every point to its nearest center and re-solves each
/// cluster's centroid. If a cluster empties, its center is re-seeded to the
/// point farthest from its own center (among clusters that can spare a
/// point; first index wins ties). Terminates when assignments stabilize or
/// after `max_rounds`.
pub fn kmeans(
    points: &[Histogram],
    k: usize,
    alpha: Alpha,
    generator: ConvexGenerator,
    seed: u64,
    max_rounds: usize,
) -> Result<KmeansResult> {
    if points.is_empty() {
        return Err(Error::InvalidDataset("no points to cluster".to_string()));
    }
    if k == 0 || k > points.len() {
        return Err(Error::InvalidConfig(format!(
            "k must be in 1..={}, got {k}",
            points.len()
        )));
    }
    if max_rounds == 0 {
        return Err(Error::InvalidConfig(
            "max_rounds must be at least 1".to_string(),
        ));
    }
    let d = points[0].len();
    for p in points {
        if p.len() != d {
            return Err(Error::LengthMismatch(p.len(), d));
        }
    }
    let f = SeparableGenerator::new(generator, d);

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut centers: Vec<Vec<f64>> = rand::seq::index::sample(&mut rng, points.len(), k)
        .into_iter()
        .map(|i| points[i].bins().to_vec())
        .collect();

    let mut assignments = vec![0usize; points.len()];
    let mut objective_trace = Vec::new();
    let mut converged = false;
    let mut rounds = 0;

    for round in 1..=max_rounds {
        rounds = round;
        // assignment step
        let mut next: Vec<usize> = Vec::with_capacity(points.len());
        for p in points {
            next.push(nearest(&f, p, &centers, alpha)?);
        }

        // farthest-point re-seed for empty clusters
        let mut sizes = vec![0usize; k];
        for &a in &next {
            sizes[a] += 1;
        }
        for j in 0..k {
            while sizes[j] == 0 {
                let mut far = (f64::NEG_INFINITY, usize::MAX);
                for (i, p) in points.iter().enumerate() {
                    if sizes[next[i]] <= 1 {
                        continue;
                    }
                    let dist = divergence_to_center(&f, p, &centers[next[i]], alpha)?;
                    if dist > far.0 {
                        far = (dist, i);
                    }
                }
                if far.1 == usize::MAX {
                    return Err(Error::InvalidConfig(format!(
                        "cannot fill empty cluster {j}: no cluster can spare a point"
                    )));
                }
                centers[j] = points[far.1].bins().to_vec();
                sizes[next[far.1]] -= 1;
                next[far.1] = j;
                sizes[j] += 1;
            }
        }

        let mut objective = 0.0;
        for (p, &a) in points.iter().zip(&next) {
            objective += divergence_to_center(&f, p, &centers[a], alpha)?;
        }
        objective_trace.push(objective);

        let stable = round > 1 && next == assignments;
        assignments = next;
        if stable {
            converged = true;
            break;
        }

        // update step: one CCCP solve per cluster
        for j in 0..k {
            let members: Vec<Vec<f64>> = points
                .iter()
                .zip(&assignments)
                .filter(|(_, &a)| a == j)
                .map(|(p, _)| p.bins().to_vec())
                .collect();
            let problem = CentroidProblem::new(f.clone(), members, None, alpha)?;
            let result = solve_centroid(&problem, &SolverOptions::default())?;
            centers[j] = result.center;
        }
    }

    Ok(KmeansResult {
        assignments,
        centers,
        objective_trace,
        rounds,
        converged,
    })
}

/// One CCCP centroid per class, uniform weights over the class members.
/// Non-convergence is reported through each [`CentroidResult::converged`]
/// flag, not as an error.
pub fn class_centroids(
    data: &LabeledDataset,
    alpha: Alpha,
    generator: ConvexGenerator,
) -> Result<BTreeMap<ClassId, CentroidResult>> {
    let f = SeparableGenerator::new(generator, data.dim());
    let mut out = BTreeMap::new();
    for class in data.classes() {
        let members: Vec<Vec<f64>> = data
            .items()
            .iter()
            .filter(|(_, c)| *c == class)
            .map(|(h, _)| h.bins().to_vec())
            .collect();
        let problem = CentroidProblem::new(f.clone(), members, None, alpha)?;
        out.insert(class, solve_centroid(&problem, &SolverOptions::default())?);
    }
    Ok(out)
}

/// Nearest-centroid rule: the class whose center minimizes
/// `sym_skew_jensen(query, center)`. Ties go to the smallest class id.
pub fn nn_classify(
    query: &Histogram,
    centers: &BTreeMap<ClassId, Vec<f64>>,
    alpha: Alpha,
    generator: ConvexGenerator,
) -> Result<ClassId> {
    if centers.is_empty() {
        return Err(Error::InvalidConfig(
            "nearest-centroid rule needs at least one center".to_string(),
        ));
    }
    let f = SeparableGenerator::new(generator, query.len());
    let mut best: Option<(f64, ClassId)> = None;
    for (&class, center) in centers {
        let d = sym_skew_jensen(&f, query.bins(), center, alpha)?;
        match best {
            // BTreeMap iterates in ascending class order, so strict
            // improvement keeps the smallest id on ties.
            Some((bd, _)) if d >= bd => {}
            _ => best = Some((d, class)),
        }
    }
    Ok(best.expect("centers non-empty").1)
}

/// The α grid used throughout: {0.01, 0.05, 0.1, ..., 0.5}.
pub fn default_alpha_grid() -> Vec<f64> {
    vec![0.01, 0.05, 0.1, 0.15, 0.2, 0.25, 0.3, 0.35, 0.4, 0.45, 0.5]
}

/// Sweep controls.
#[derive(Debug, Clone)]
pub struct SweepConfig {
    /// Strictly increasing skews in [0, ½].
    pub alphas: Vec<f64>,
    pub generator: ConvexGenerator,
    /// Train fraction of each class, in (0, 1). Ignored when `insample`.
    pub split: f64,
    pub seed: u64,
    /// Fit centroids on all items and score on all items (no split).
    pub insample: bool,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            alphas: default_alpha_grid(),
            generator: ConvexGenerator::Shannon,
            split: 0.5,
            seed: 0,
            insample: false,
        }
    }
}

/// One sweep grid cell: accuracy of the nearest-centroid rule at a given α.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub alpha: f64,
    pub accuracy: f64,
    /// Per-class accuracy, ascending class id.
    pub per_class: Vec<(ClassId, f64)>,
    /// Mean CCCP iteration count across the class centroid solves.
    pub mean_cccp_iters: f64,
}

/// Accuracy-vs-α curve. Alphas are strictly increasing and every accuracy
/// lies in [0, 1].
#[derive(Debug, Clone, PartialEq)]
pub struct SweepReport {
    pub rows: Vec<SweepRow>,
    /// False when any class centroid solve stopped at its iteration cap.
    pub all_converged: bool,
}

impl SweepReport {
    /// CSV with header `alpha,accuracy,acc_class_<id>,...,mean_cccp_iters`.
    /// Floats print through the shortest round-trip formatting, so identical
    /// reports serialize to identical bytes.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("alpha,accuracy");
        if let Some(first) = self.rows.first() {
            for (class, _) in &first.per_class {
                out.push_str(&format!(",acc_class_{class}"));
            }
        }
        out.push_str(",mean_cccp_iters\n");
        for row in &self.rows {
            out.push_str(&format!("{},{}", row.alpha, row.accuracy));
            for (_, acc) in &row.per_class {
                out.push_str(&format!(",{acc}"));
            }
            out.push_str(&format!(",{}\n", row.mean_cccp_iters));
        }
        out
    }
}

/// Per-class stratified split. Returns (train indices, test indices).
fn stratified_split(
    data: &LabeledDataset,
    split: f64,
    rng: &mut ChaCha8Rng,
) -> Result<(Vec<usize>, Vec<usize>)> {
    let mut train = Vec::new();
    let mut test = Vec::new();
    for class in data.classes() {
        let mut idx: Vec<usize> = data
            .items()
            .iter()
            .enumerate()
            .filter(|(_, (_, c))| *c == class)
            .map(|(i, _)| i)
            .collect();
        idx.shuffle(rng);
        let n = idx.len();
        let take = ((split * n as f64).round() as usize).max(1);
        if take >= n {
            return Err(Error::InvalidConfig(format!(
                "class {class} has {n} items; a {split} split leaves no test items"
            )));
        }
        train.extend_from_slice(&idx[..take]);
        test.extend_from_slice(&idx[take..]);
    }
    Ok((train, test))
}

/// Runs the nearest-centroid experiment across the α grid.
///
/// The stratified split is drawn once, before the loop, so every α sees the
/// same train/test partition and the curve isolates the effect of the skew.
/// Deterministic for a fixed seed.
pub fn alpha_sweep(data: &LabeledDataset, config: &SweepConfig) -> Result<SweepReport> {
    if config.alphas.is_empty() {
        return Err(Error::InvalidConfig("empty alpha grid".to_string()));
    }
    for pair in config.alphas.windows(2) {
        if !(pair[1] > pair[0]) {
            return Err(Error::InvalidConfig(format!(
                "alpha grid must be strictly increasing, got {} then {}",
                pair[0], pair[1]
            )));
        }
    }
    for &al in &config.alphas {
        if !al.is_finite() || !(0.0..=0.5).contains(&al) {
            return Err(Error::InvalidAlpha(al));
        }
    }
    if !config.insample && !(config.split > 0.0 && config.split < 1.0) {
        return Err(Error::InvalidConfig(format!(
            "split fraction must be in (0,1), got {}",
            config.split
        )));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let all: Vec<usize> = (0..data.len()).collect();
    let (train_idx, test_idx) = if config.insample {
        (all.clone(), all)
    } else {
        stratified_split(data, config.split, &mut rng)?
    };
    let train = LabeledDataset::new(
        train_idx
            .iter()
            .map(|&i| data.items()[i].clone())
            .collect(),
    )?;

    let mut rows = Vec::with_capacity(config.alphas.len());
    let mut all_converged = true;
    for &al in &config.alphas {
        let alpha = Alpha::new(al)?;
        let solved = class_centroids(&train, alpha, config.generator)?;
        all_converged &= solved.values().all(|r| r.converged);
        let mean_cccp_iters = solved
            .values()
            .map(|r| r.iterations as f64)
            .sum::<f64>()
            / solved.len() as f64;
        let centers: BTreeMap<ClassId, Vec<f64>> = solved
            .into_iter()
            .map(|(c, r)| (c, r.center))
            .collect();

        let mut correct = 0usize;
        let mut class_total: BTreeMap<ClassId, usize> = BTreeMap::new();
        let mut class_correct: BTreeMap<ClassId, usize> = BTreeMap::new();
        for &i in &test_idx {
            let (h, label) = &data.items()[i];
            let predicted = nn_classify(h, &centers, alpha, config.generator)?;
            *class_total.entry(*label).or_insert(0) += 1;
            if predicted == *label {
                correct += 1;
                *class_correct.entry(*label).or_insert(0) += 1;
            }
        }
        let per_class: Vec<(ClassId, f64)> = class_total
            .iter()
            .map(|(&c, &n)| {
                (c, *class_correct.get(&c).unwrap_or(&0) as f64 / n as f64)
            })
            .collect();
        rows.push(SweepRow {
            alpha: al,
            accuracy: correct as f64 / test_idx.len() as f64,
            per_class,
            mean_cccp_iters,
        });
    }
    Ok(SweepReport {
        rows,
        all_converged,
    })
}

/// Samples a labeled dataset of Dirichlet draws around class prototypes.
///
/// Item i of class c is Dirichlet(concentration · prototype_c): the larger
/// the concentration, the tighter the blob. Classes are numbered 1..=k in
/// prototype order, every draw is smoothed with the standard 1e-9 floor, and
/// the result is deterministic for a fixed seed.
pub fn synth_dataset(
    prototypes: &[Histogram],
    concentration: f64,
    n_per_class: usize,
    seed: u64,
) -> Result<LabeledDataset> {
    if prototypes.is_empty() {
        return Err(Error::InvalidDataset("no prototypes given".to_string()));
    }
    if !(concentration > 0.0) || !concentration.is_finite() {
        return Err(Error::InvalidConfig(format!(
            "concentration must be positive and finite, got {concentration}"
        )));
    }
    if n_per_class == 0 {
        return Err(Error::InvalidConfig(
            "need at least one item per class".to_string(),
        ));
    }
    let d = prototypes[0].len();
    for p in prototypes {
        if p.len() != d {
            return Err(Error::LengthMismatch(p.len(), d));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut items = Vec::with_capacity(prototypes.len() * n_per_class);
    for (index, proto) in prototypes.iter().enumerate() {
        let class = (index + 1) as ClassId;
        // Dirichlet via normalized Gamma draws
        let gammas: Vec<Gamma<f64>> = proto
            .bins()
            .iter()
            .map(|&p| {
                Gamma::new(concentration * p, 1.0).map_err(|e| {
                    Error::InvalidConfig(format!("gamma shape {}: {e}", concentration * p))
                })
            })
            .collect::<Result<_>>()?;
        for _ in 0..n_per_class {
            let draw: Vec<f64> = gammas.iter().map(|g| g.sample(&mut rng)).collect();
            items.push((Histogram::smoothed(&draw, 1e-9)?, class));
        }
    }
    LabeledDataset::new(items)
}
