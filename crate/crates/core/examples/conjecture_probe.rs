//! Poles at or below √2 − 1, where no upper bound is established: ratios of
//! the extremal family only.

use lengthdist::experiments::conjecture_probe;
use lengthdist::hyperbolic::P_THRESHOLD;

fn main() -> lengthdist::Result<()> {
    let ps = [0.02, 0.05, 0.1, 0.2, 0.3, P_THRESHOLD];
    let report = conjecture_probe(&ps)?;
    for c in &report.checks {
        println!("{:<40} {:>14.8}", c.name, c.value);
    }
    for note in &report.notes {
        println!("note: {note}");
    }
    Ok(())
}
