//! Rotating a real pole: which angles keep it on the far side of γ₀.

use lengthdist::experiments::corollary_sector;
use lengthdist::hyperbolic::{circle_geodesic_intersection, rotation_sector_max_angle};

fn main() -> lengthdist::Result<()> {
    for p in [0.5, 0.6, 0.75, 0.9] {
        let limit = rotation_sector_max_angle(p)?;
        let [upper, _] = circle_geodesic_intersection(p)?;
        println!("p = {p}: max angle {limit:.10} rad, |z| = p meets gamma_0 at {upper:.10}");
        for theta in [0.5 * limit, limit, 1.5 * limit] {
            let r = corollary_sector(p, theta)?;
            println!(
                "  theta = {theta:.6}: {} ({})",
                r.notes[0],
                if r.passed { "ok" } else { "FAIL" }
            );
        }
    }
    Ok(())
}
