//! Harmonic measure of a boundary segment of the upper half-plane, and its
//! lower bound along the imaginary segment [ia, ib].

use lengthdist::bounds::{harmonic_measure_segment, omega_lower_bound, HalfPlaneSeg};
use lengthdist::Complex64;

fn main() -> lengthdist::Result<()> {
    let (a, b) = (1.0, 4.0);
    let seg = HalfPlaneSeg::new(a, b)?;
    let bound = omega_lower_bound(seg.ratio())?;
    println!("segment [{a}, {b}], lower bound on [ia, ib]: {bound:.8}");
    for k in 0..=6 {
        let y = a + (b - a) * k as f64 / 6.0;
        let w = harmonic_measure_segment(Complex64::new(0.0, y), &seg)?;
        println!("  omega({y:.2}i) = {w:.8}");
    }
    for z in [
        Complex64::new(2.0, 0.01),
        Complex64::new(2.0, 1.0),
        Complex64::new(-3.0, 1.0),
    ] {
        println!("omega({z}) = {:.8}", harmonic_measure_segment(z, &seg)?);
    }
    Ok(())
}
