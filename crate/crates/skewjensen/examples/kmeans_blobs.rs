//! Lloyd k-means over histograms with symmetrized skew Jensen assignments
//! and CCCP centroid updates, on a seeded synthetic blob mixture.
//!
//! Run with: cargo run -p skewjensen --example kmeans_blobs

use skewjensen::clustering::{kmeans, synth_dataset};
use skewjensen::{Alpha, ConvexGenerator, Histogram, Result};

fn main() -> Result<()> {
    // three Dirichlet blobs around distinct prototypes at d = 8
    let prototypes = vec![
        Histogram::new(vec![0.4, 0.2, 0.1, 0.1, 0.05, 0.05, 0.05, 0.05])?,
        Histogram::new(vec![0.05, 0.05, 0.4, 0.2, 0.1, 0.1, 0.05, 0.05])?,
        Histogram::new(vec![0.05, 0.05, 0.05, 0.05, 0.1, 0.1, 0.2, 0.4])?,
    ];
    let data = synth_dataset(&prototypes, 150.0, 60, 42)?;
    let points: Vec<Histogram> = data.items().iter().map(|(h, _)| h.clone()).collect();
    let labels: Vec<u32> = data.items().iter().map(|(_, c)| *c).collect();

    let result = kmeans(&points, 3, Alpha::new(0.5)?, ConvexGenerator::Shannon, 7, 100)?;
    println!(
        "k-means on {} points: {} rounds, converged = {}",
        points.len(),
        result.rounds,
        result.converged
    );
    print!("objective trace:");
    for v in &result.objective_trace {
        print!(" {v:.6}");
    }
    println!();

    // contingency table cluster x true class
    let mut table = [[0usize; 3]; 3];
    for (assignment, label) in result.assignments.iter().zip(&labels) {
        table[*assignment][(*label - 1) as usize] += 1;
    }
    println!("\ncluster x class contingency:");
    println!("{:>9} {:>8} {:>8} {:>8}", "", "class 1", "class 2", "class 3");
    for (j, row) in table.iter().enumerate() {
        println!("{:>9} {:>8} {:>8} {:>8}", format!("cluster {j}"), row[0], row[1], row[2]);
    }
    let purity: usize = table.iter().map(|row| *row.iter().max().unwrap()).sum();
    println!("purity = {:.3}", purity as f64 / points.len() as f64);

    println!("\ncluster centers:");
    for (j, c) in result.centers.iter().enumerate() {
        let bins: Vec<String> = c.iter().map(|b| format!("{b:.3}")).collect();
        println!("  cluster {j}: {}", bins.join(" "));
    }

    println!("\nObservations:");
    println!("- the objective falls monotonically round over round and the run");
    println!("  terminates when assignments stop changing.");
    println!("- each true blob dominates one cluster; the centers echo the three");
    println!("  prototype shapes.");
    println!("- the centers are CCCP fixed points, not naive bin averages: under");
    println!("  the shannon generator they mix geometric-mean behavior in.");
    Ok(())
}
