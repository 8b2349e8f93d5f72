//! Does the skew matter? Nearest-centroid classification accuracy as a
//! function of alpha on an overlapping synthetic two-class problem.
//!
//! Run with: cargo run -p skewjensen --example alpha_sweep_classify

use skewjensen::clustering::{alpha_sweep, default_alpha_grid, synth_dataset, SweepConfig};
use skewjensen::{Histogram, Result};

fn main() -> Result<()> {
    // two tilted prototypes over 16 bins; concentration 30 keeps the blobs
    // noisy enough to overlap
    let d = 16;
    let up: Vec<f64> = (0..d)
        .map(|i| 1.0 + 0.4 * (i as f64 / (d - 1) as f64 - 0.5))
        .collect();
    let down: Vec<f64> = up.iter().rev().copied().collect();
    let data = synth_dataset(
        &[
            Histogram::smoothed(&up, 1e-9)?,
            Histogram::smoothed(&down, 1e-9)?,
        ],
        30.0,
        400,
        8,
    )?;

    let config = SweepConfig {
        alphas: default_alpha_grid(),
        seed: 8,
        ..SweepConfig::default()
    };
    let report = alpha_sweep(&data, &config)?;

    println!("{} items, stratified 50/50 split, shannon generator", data.len());
    print!("{}", report.to_csv());

    let best = report
        .rows
        .iter()
        .max_by(|a, b| a.accuracy.total_cmp(&b.accuracy))
        .unwrap();
    let worst = report
        .rows
        .iter()
        .min_by(|a, b| a.accuracy.total_cmp(&b.accuracy))
        .unwrap();
    println!("\nbest alpha = {} (accuracy {:.4}), worst alpha = {} (accuracy {:.4})",
        best.alpha, best.accuracy, worst.alpha, worst.accuracy);

    println!("\nObservations:");
    println!("- accuracy moves only mildly with alpha on this dataset; the skew");
    println!("  family is a knob to tune, not a magic lever.");
    println!("- mean CCCP iterations drop sharply as alpha grows toward 1/2: the");
    println!("  per-step contraction factor 1 - 2 alpha (1 - alpha) is smallest");
    println!("  there, so small skews pay for their asymmetry in solver time.");
    println!("- rerunning with the same seed reproduces this table byte for byte.");
    Ok(())
}
