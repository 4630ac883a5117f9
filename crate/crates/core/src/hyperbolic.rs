//! Hyperbolic geometry of the unit disk and the upper half-plane: the metric,
//! the real-symmetric geodesics, the half-planes they cut out, and the
//! correspondence between a geodesic's real crossing `p` and its boundary
//! abscissa `α`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::SQRT_2;

use crate::error::{domain, Result};
use crate::moebius::{ExtendedComplex, GeneralizedCircle, MoebiusMap};

/// Carrier-equation tolerance for boundary classification.
pub const BOUNDARY_TOL: f64 = 1e-12;

/// `√2 − 1`, the smallest pole position covered by the distortion bound.
pub const P_THRESHOLD: f64 = SQRT_2 - 1.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Model {
    Disk,
    HalfPlane,
}

impl Model {
    fn check(&self, z: Complex64) -> Result<()> {
        let ok = match self {
            Model::Disk => z.norm() < 1.0,
            Model::HalfPlane => z.im > 0.0,
        };
        if ok {
            Ok(())
        } else {
            match self {
                Model::Disk => domain(format!("point {z} is not in the unit disk (|z| < 1)")),
                Model::HalfPlane => domain(format!(
                    "point {z} is not in the upper half-plane (Im z > 0)"
                )),
            }
        }
    }
}

/// A geodesic stored by the generalized circle carrying it and its two ideal endpoints.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Geodesic {
    pub model: Model,
    pub carrier: GeneralizedCircle,
    pub endpoints: [ExtendedComplex; 2],
}

impl Geodesic {
    /// The disk geodesic symmetric about the real axis with ideal endpoints
    /// `ζ` and `conj(ζ)`, for `ζ` on the open upper unit semicircle.
    ///
    /// For `Re ζ = 0` this is the vertical diameter.
    pub fn symmetric_through_boundary(zeta: Complex64) -> Result<Self> {
        if !((zeta.norm() - 1.0).abs() <= 1e-12 && zeta.im > 0.0) {
            return domain("endpoint must lie on the upper unit semicircle");
        }
        let x = zeta.re;
        let carrier = if x == 0.0 {
            GeneralizedCircle::imaginary_axis()
        } else {
            let y = zeta.im;
            GeneralizedCircle::Circle {
                center: Complex64::new(1.0 / x, 0.0),
                radius: y / x.abs(),
            }
        };
        Ok(Geodesic {
            model: Model::Disk,
            carrier,
            endpoints: [zeta.into(), zeta.conj().into()],
        })
    }

    /// The arc of the carrier lying inside the model, from the first ideal
    /// endpoint to the second. `None` when an endpoint is ∞.
    pub fn arc(&self) -> Option<ArcShape> {
        let (e0, e1) = (self.endpoints[0].finite()?, self.endpoints[1].finite()?);
        Some(match self.carrier {
            GeneralizedCircle::Line { .. } => ArcShape::Segment { from: e0, to: e1 },
            GeneralizedCircle::Circle { center, radius } => {
                let chord = e1 - e0;
                let mut sweep;
                match self.model {
                    // orthogonal to the unit circle: the inside arc is the minor one,
                    // subtending 2·atan(1/r) at the center
                    Model::Disk => {
                        sweep = 2.0 * 1.0f64.atan2(radius);
                        if ((e0 - center).conj() * chord).im < 0.0 {
                            sweep = -sweep;
                        }
                    }
                    Model::HalfPlane => {
                        sweep = std::f64::consts::PI;
                        let arc = ArcShape::Circular {
                            from: e0,
                            to: e1,
                            sweep,
                        };
                        if arc.point(0.5).im < 0.0 {
                            sweep = -sweep;
                        }
                    }
                }
                ArcShape::Circular {
                    from: e0,
                    to: e1,
                    sweep,
                }
            }
        })
    }

    /// Point of the arc at `t ∈ [0, 1]`.
    pub fn point_at(&self, t: f64) -> Option<Complex64> {
        Some(self.arc()?.point(t))
    }
}

/// An explicit segment or circular arc, parametrized over `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum ArcShape {
    Segment {
        from: Complex64,
        to: Complex64,
    },
    /// Arc from `from` to `to` turning through `sweep` radians
    /// (positive counterclockwise).
    Circular {
        from: Complex64,
        to: Complex64,
        sweep: f64,
    },
}

impl ArcShape {
    pub fn point(&self, t: f64) -> Complex64 {
        match *self {
            ArcShape::Segment { from, to } => from + (to - from) * t,
            ArcShape::Circular { from, to, sweep } => {
                let h = sweep / 2.0;
                from + (to - from)
                    * ((t * h).sin() / h.sin())
                    * Complex64::from_polar(1.0, -(1.0 - t) * h)
            }
        }
    }

    pub fn tangent(&self, t: f64) -> Complex64 {
        match *self {
            ArcShape::Segment { from, to } => to - from,
            ArcShape::Circular { from, to, sweep } => {
                let h = sweep / 2.0;
                (to - from) * (h / h.sin()) * Complex64::from_polar(1.0, (2.0 * t - 1.0) * h)
            }
        }
    }
}

fn check_unit_open(name: &str, x: f64) -> Result<()> {
    if x > 0.0 && x < 1.0 {
        Ok(())
    } else {
        domain(format!("{name} must lie in (0, 1), got {x}"))
    }
}

/// Distance for the density `|dz| / (1 − |z|²)`: `atanh(|z1 − z2| / |1 − conj(z1) z2|)`.
pub fn hyperbolic_distance_disk(z1: Complex64, z2: Complex64) -> Result<f64> {
    Model::Disk.check(z1)?;
    Model::Disk.check(z2)?;
    let ratio = (z1 - z2).norm() / (Complex64::new(1.0, 0.0) - z1.conj() * z2).norm();
    Ok(ratio.atanh())
}

/// The disk geodesic `x² + y² − (2/α)x + 1 = 0`, with endpoints `α ± i√(1−α²)`.
pub fn symmetric_geodesic_through(alpha: f64) -> Result<Geodesic> {
    check_unit_open("alpha", alpha)?;
    let s = (1.0 - alpha * alpha).sqrt();
    Ok(Geodesic {
        model: Model::Disk,
        carrier: GeneralizedCircle::Circle {
            center: Complex64::new(1.0 / alpha, 0.0),
            radius: s / alpha,
        },
        endpoints: [
            ExtendedComplex::new(alpha, s),
            ExtendedComplex::new(alpha, -s),
        ],
    })
}

/// The half-plane geodesic `x² + y² + (2/α)x + 1 = 0, y > 0`.
pub fn sigma_geodesic(alpha: f64) -> Result<Geodesic> {
    check_unit_open("alpha", alpha)?;
    let s = (1.0 - alpha * alpha).sqrt();
    Ok(Geodesic {
        model: Model::HalfPlane,
        carrier: GeneralizedCircle::Circle {
            center: Complex64::new(-1.0 / alpha, 0.0),
            radius: s / alpha,
        },
        endpoints: [
            ExtendedComplex::real((-1.0 + s) / alpha),
            ExtendedComplex::real((-1.0 - s) / alpha),
        ],
    })
}

/// `α = 2p / (1 + p²)`.
pub fn alpha_from_p(p: f64) -> Result<f64> {
    check_unit_open("p", p)?;
    Ok(2.0 * p / (1.0 + p * p))
}

/// `p = α / (1 + √(1 − α²))`, the real point where the geodesic through
/// `α ± i√(1−α²)` crosses the real diameter.
pub fn p_from_alpha(alpha: f64) -> Result<f64> {
    check_unit_open("alpha", alpha)?;
    Ok(alpha / (1.0 + (1.0 - alpha * alpha).sqrt()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Side {
    Inside,
    Boundary,
    Outside,
}

/// One of the two hyperbolic half-planes bounded by a geodesic, identified by
/// a point known to lie in it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HalfPlaneRegion {
    pub geodesic: Geodesic,
    pub anchor: Complex64,
    orientation: f64,
}

impl HalfPlaneRegion {
    pub fn new(geodesic: Geodesic, anchor: Complex64) -> Result<Self> {
        geodesic.model.check(anchor)?;
        let v = geodesic.carrier.signed_value(anchor);
        if v.abs() < BOUNDARY_TOL {
            return domain("anchor lies on the defining geodesic");
        }
        Ok(Self {
            geodesic,
            anchor,
            orientation: v.signum(),
        })
    }

    /// The side of `γ(α)` containing the origin.
    pub fn omega(alpha: f64) -> Result<Self> {
        Self::new(symmetric_geodesic_through(alpha)?, Complex64::new(0.0, 0.0))
    }

    /// The side of `γ(α)` away from the origin (anchored on the real axis
    /// between the geodesic's crossing and 1).
    pub fn omega_far(alpha: f64) -> Result<Self> {
        let p = p_from_alpha(alpha)?;
        Self::new(
            symmetric_geodesic_through(alpha)?,
            Complex64::new((p + 1.0) / 2.0, 0.0),
        )
    }

    /// The side of `σ(α)` containing `i`.
    pub fn omega1(alpha: f64) -> Result<Self> {
        Self::new(sigma_geodesic(alpha)?, Complex64::new(0.0, 1.0))
    }

    /// The side of `γ₀` (through `√2 − 1`) not containing the origin.
    pub fn omega0() -> Self {
        Self::omega_far(alpha_from_p(P_THRESHOLD).expect("in range")).expect("valid anchor")
    }

    /// Carrier value at `z`, signed so that the anchor's side is positive.
    pub fn oriented_value(&self, z: Complex64) -> Result<f64> {
        self.geodesic.model.check(z)?;
        Ok(self.orientation * self.geodesic.carrier.signed_value(z))
    }

    pub fn side_of(&self, z: Complex64) -> Result<Side> {
        self.side_of_with_tol(z, BOUNDARY_TOL)
    }

    pub fn side_of_with_tol(&self, z: Complex64, tol: f64) -> Result<Side> {
        let v = self.oriented_value(z)?;
        Ok(if v.abs() < tol {
            Side::Boundary
        } else if v > 0.0 {
            Side::Inside
        } else {
            Side::Outside
        })
    }
}

fn check_sector_p(p: f64) -> Result<f64> {
    let radicand = 6.0 * p * p - p.powi(4) - 1.0;
    if !(P_THRESHOLD..1.0).contains(&p) || radicand < -1e-12 {
        return domain(format!("p must lie in (√2−1, 1), got {p}"));
    }
    Ok(radicand.max(0.0))
}

/// `tan⁻¹(√(6p² − p⁴ − 1) / (1 + p²))`: the largest rotation of the real pole
/// position that stays on the far side of `γ₀`.
///
/// Accepts the closed left end `p = √2 − 1`, where the angle is 0.
pub fn rotation_sector_max_angle(p: f64) -> Result<f64> {
    let radicand = check_sector_p(p)?;
    Ok((radicand.sqrt() / (1.0 + p * p)).atan())
}

/// The two points of `{|z| = p} ∩ γ₀`, upper one first.
pub fn circle_geodesic_intersection(p: f64) -> Result<[Complex64; 2]> {
    let radicand = check_sector_p(p)?;
    let x = (1.0 + p * p) / (2.0 * SQRT_2);
    let y = radicand.sqrt() / (2.0 * SQRT_2);
    Ok([Complex64::new(x, y), Complex64::new(x, -y)])
}

/// The Cayley-type map `g` carries `γ(α)` to `σ(α)`; this returns the carrier
/// of the image, for cross-checking against [`sigma_geodesic`].
pub fn image_of_symmetric_geodesic(alpha: f64) -> Result<GeneralizedCircle> {
    let gamma = symmetric_geodesic_through(alpha)?;
    Ok(MoebiusMap::disk_to_upper_half_plane().image_circle(&gamma.carrier))
}
