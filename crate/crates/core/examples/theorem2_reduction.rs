//! Moving a pole off the symmetric geodesic through α₁ onto the real axis
//! with the reduction map T = g⁻¹ ∘ g₁.

use lengthdist::conformal_maps::{p0_from_alpha1, p1_prime};
use lengthdist::experiments::{alpha1_from_arg, reduce_point, theorem2_reduction};
use lengthdist::Complex64;

fn main() -> lengthdist::Result<()> {
    for theta in [0.5, std::f64::consts::FRAC_PI_4, 1.5, 2.5] {
        let alpha1 = alpha1_from_arg(theta)?;
        let p0 = p0_from_alpha1(alpha1)?;
        println!("theta = {theta:.6}: p0 = {p0:.10}");
        for p1 in [p0 + 0.25 * (1.0 - p0), p0 + 0.75 * (1.0 - p0)] {
            let image = reduce_point(alpha1, Complex64::new(p1, 0.0))?
                .finite()
                .expect("T is finite on (-1, 1)");
            println!(
                "  p1 = {p1:.6} -> {:.12}{:+.1e}i, closed form {:.12}",
                image.re,
                image.im,
                p1_prime(p1, alpha1)?
            );
        }
        let report = theorem2_reduction(alpha1, p0 + 0.5 * (1.0 - p0))?;
        println!("  checks passed: {}", report.passed);
    }
    Ok(())
}
