//! Möbius maps on the extended plane: composition, inverses and images of circles.

use lengthdist::{Complex64, ExtendedComplex, GeneralizedCircle, MoebiusMap};

fn main() -> lengthdist::Result<()> {
    let g = MoebiusMap::disk_to_upper_half_plane();
    println!("g = {:?}", g.coefficients());
    for z in [
        Complex64::new(0.0, 0.0),
        Complex64::new(0.0, 0.5),
        Complex64::new(-1.0, 0.0),
    ] {
        println!("g({z}) = {}", g.apply_finite(z));
    }
    println!("g(-i) = {}", g.apply_finite(Complex64::new(0.0, -1.0)));

    let unit = GeneralizedCircle::unit_circle();
    println!("g(unit circle) = {:?}", g.image_circle(&unit));

    let alpha1 = Complex64::from_polar(1.0, 1.0);
    let g1 = MoebiusMap::symmetric_geodesic_to_axis(alpha1)?;
    let t = g.inverse().compose(&g1);
    let z = ExtendedComplex::new(0.3, 0.2);
    let back = t.inverse().apply(t.apply(z));
    println!(
        "T⁻¹(T({z})) = {back}, chordal error {:.1e}",
        back.chordal_distance(&z)
    );
    Ok(())
}
