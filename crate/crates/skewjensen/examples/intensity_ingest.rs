//! From raw pixel triples to comparable intensity histograms: the ingestion
//! pipeline (weighted intensity, binning, smoothing) end to end.
//!
//! Run with: cargo run -p skewjensen --example intensity_ingest

use skewjensen::divergences::{jeffreys, js};
use skewjensen::io::{intensity_histogram, IngestionConfig, INTENSITY_WEIGHTS};
use skewjensen::Result;

/// A synthetic gradient "image": `n` pixels ramping a channel profile.
fn ramp(n: usize, scale: [f64; 3], offset: f64) -> Vec<[f64; 3]> {
    (0..n)
        .map(|i| {
            let t = offset + (255.0 - offset) * i as f64 / (n - 1) as f64;
            [t * scale[0], t * scale[1], t * scale[2]]
        })
        .collect()
}

fn main() -> Result<()> {
    let config = IngestionConfig {
        intensity_bins: 32,
        ..IngestionConfig::default()
    };

    let dark = ramp(4096, [1.0, 0.9, 0.8], 0.0);
    let bright = ramp(4096, [1.0, 0.9, 0.8], 120.0);
    let reddish = ramp(4096, [1.0, 0.2, 0.2], 0.0);

    let h_dark = intensity_histogram(&dark, &config)?;
    let h_bright = intensity_histogram(&bright, &config)?;
    let h_red = intensity_histogram(&reddish, &config)?;

    println!("intensity weights (R,G,B) = {INTENSITY_WEIGHTS:?} (sum {})",
        INTENSITY_WEIGHTS.iter().sum::<f64>());
    println!("32-bin intensity histograms (bins with mass >= 0.01):\n");
    for (label, h) in [("dark ramp", &h_dark), ("bright ramp", &h_bright), ("red ramp", &h_red)] {
        print!("{label:>12}:");
        for (i, &b) in h.bins().iter().enumerate() {
            if b >= 0.01 {
                print!(" {i}:{b:.3}");
            }
        }
        println!();
    }

    println!("\npairwise divergences:");
    println!("{:>24} {:>10} {:>10}", "pair", "js", "jeffreys");
    for (label, a, b) in [
        ("dark vs bright", &h_dark, &h_bright),
        ("dark vs red", &h_dark, &h_red),
        ("bright vs red", &h_bright, &h_red),
    ] {
        println!("{:>24} {:>10.6} {:>10.6}", label, js(a, b)?, jeffreys(a, b)?);
    }

    // saturated pixels exceed intensity 255 because the weights sum to
    // 1.006; the binning clamps them into the top bin
    let white = vec![[255.0, 255.0, 255.0]; 16];
    let h_white = intensity_histogram(&white, &config)?;
    let i_max = 255.0 * INTENSITY_WEIGHTS.iter().sum::<f64>();
    println!("\nsaturated white: intensity = {i_max:.2} > 255, top-bin mass = {:.6}",
        h_white.bins()[config.intensity_bins - 1]);

    println!("\nObservations:");
    println!("- the red ramp compresses intensity into the lower half of the range");
    println!("  while the bright ramp vacates it, so 'bright vs red' barely share");
    println!("  support and their divergences dwarf the two overlapping pairs.");
    println!("- empty bins never reach the divergences: smoothing floors each bin");
    println!("  at 1e-9 and renormalizes, so kl-type quantities stay finite.");
    println!("- the clamp rule is visible on saturated pixels: all of their mass");
    println!("  lands in the last bin instead of overflowing the range.");
    Ok(())
}
