//! f₀(z) = exp(i(1+z)/(1−z)): a short image of the upper semicircle, an
//! unbounded image of the diameter.

use lengthdist::conformal_maps::MapDescriptor;
use lengthdist::experiments::{f0_diameter, f0_divergence};
use lengthdist::quadrature::{curve_of_semicircle_upper, truncated_length, DEFAULT_REL_TOL};

fn main() -> lengthdist::Result<()> {
    let (_, upper) = curve_of_semicircle_upper(DEFAULT_REL_TOL)?;
    println!(
        "|f0(upper semicircle)| = {:.12} (± {:.1e})",
        upper.value, upper.error_estimate
    );
    let eps = [1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6];
    for (e, len) in truncated_length(&MapDescriptor::F0, &f0_diameter(), &eps)? {
        println!(
            "eps = {e:e}: length {:.6} vs 2/eps - 1 = {:.6}",
            len.value,
            2.0 / e - 1.0
        );
    }
    let report = f0_divergence()?;
    println!("report passed: {}", report.passed);
    Ok(())
}
