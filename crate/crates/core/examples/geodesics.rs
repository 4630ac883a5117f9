//! Hyperbolic geodesics and half-planes in the disk and the upper half-plane.

use lengthdist::hyperbolic::{
    alpha_from_p, hyperbolic_distance_disk, sigma_geodesic, symmetric_geodesic_through,
    HalfPlaneRegion,
};
use lengthdist::Complex64;

fn main() -> lengthdist::Result<()> {
    for p in [0.3, 0.5, 0.9] {
        let alpha = alpha_from_p(p)?;
        let gamma = symmetric_geodesic_through(alpha)?;
        let sigma = sigma_geodesic(alpha)?;
        println!("p = {p}: alpha = {alpha:.6}");
        println!("  gamma carrier {:?}", gamma.carrier);
        println!(
            "  sigma endpoints {} and {}",
            sigma.endpoints[0], sigma.endpoints[1]
        );
        let omega = HalfPlaneRegion::omega(alpha)?;
        for z in [
            Complex64::new(0.0, 0.0),
            Complex64::new(p, 0.0),
            Complex64::new(0.99, 0.0),
        ] {
            println!("  {z} is {:?} the origin side", omega.side_of(z)?);
        }
    }
    let d = hyperbolic_distance_disk(Complex64::new(0.0, 0.0), Complex64::new(0.5, 0.0))?;
    println!("d(0, 0.5) = {d:.12}");
    Ok(())
}
