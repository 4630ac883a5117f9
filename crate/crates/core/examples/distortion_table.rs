//! The table of min_q M_p(q) next to the lower endpoint (1+p)²π/4p.

use lengthdist::bounds::{bound_row, m_p};
use lengthdist::experiments::reproduce_table1;

fn main() -> lengthdist::Result<()> {
    let table = reproduce_table1()?;
    println!(
        "{:>6} {:>8} {:>14} {:>8} {:>12}",
        "p", "q*", "min M_p", "lower", "published"
    );
    for r in &table.rows {
        println!(
            "{:>6} {:>8.4} {:>14.4} {:>8.4} {:>12}",
            r.row.p, r.row.q_star, r.row.m_star, r.row.lower_bound, r.paper_m_star
        );
    }
    println!("all rows within tolerance: {}", table.report.passed);

    // the profile of M_p around its minimum
    let row = bound_row(0.8)?;
    for scale in [0.5, 0.8, 1.0, 1.25, 2.0] {
        let q = row.q_star * scale;
        println!("M_0.8({q:.4}) = {:.4}", m_p(0.8, q)?);
    }
    Ok(())
}
