//! Fractional-linear maps of the extended plane and the generalized circles
//! they permute.
//!
//! Points of the Riemann sphere are [`ExtendedComplex`]. All comparisons of
//! sphere-valued results use the chordal metric, which treats the point at
//! infinity like any other point.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::fmt;

use crate::error::{domain, Result};

/// Radius above which a computed image circle is reported as a line.
pub const LINE_RADIUS_CUTOFF: f64 = 1e8;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// A point of the Riemann sphere.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum ExtendedComplex {
    Finite(Complex64),
    Infinity,
}

impl ExtendedComplex {
    pub const ZERO: ExtendedComplex = ExtendedComplex::Finite(Complex64::new(0.0, 0.0));

    /// A finite point. Non-finite coordinates collapse to the point at infinity.
    pub fn new(re: f64, im: f64) -> Self {
        Complex64::new(re, im).into()
    }

    pub fn real(x: f64) -> Self {
        Self::new(x, 0.0)
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ExtendedComplex::Infinity)
    }

    pub fn finite(&self) -> Option<Complex64> {
        match *self {
            ExtendedComplex::Finite(z) => Some(z),
            ExtendedComplex::Infinity => None,
        }
    }

    /// Chordal distance on the unit-diameter-2 sphere: `2|z-w| / sqrt((1+|z|²)(1+|w|²))`.
    pub fn chordal_distance(&self, other: &ExtendedComplex) -> f64 {
        match (*self, *other) {
            (ExtendedComplex::Infinity, ExtendedComplex::Infinity) => 0.0,
            (ExtendedComplex::Finite(z), ExtendedComplex::Infinity)
            | (ExtendedComplex::Infinity, ExtendedComplex::Finite(z)) => {
                2.0 / (1.0 + z.norm_sqr()).sqrt()
            }
            (ExtendedComplex::Finite(z), ExtendedComplex::Finite(w)) => {
                2.0 * (z - w).norm() / ((1.0 + z.norm_sqr()) * (1.0 + w.norm_sqr())).sqrt()
            }
        }
    }
}

impl From<Complex64> for ExtendedComplex {
    fn from(z: Complex64) -> Self {
        if z.re.is_finite() && z.im.is_finite() {
            ExtendedComplex::Finite(z)
        } else {
            ExtendedComplex::Infinity
        }
    }
}

impl From<f64> for ExtendedComplex {
    fn from(x: f64) -> Self {
        ExtendedComplex::real(x)
    }
}

impl fmt::Display for ExtendedComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtendedComplex::Finite(z) => write!(f, "{}{:+}i", z.re, z.im),
            ExtendedComplex::Infinity => write!(f, "∞"),
        }
    }
}

/// `z ↦ (az+b)/(cz+d)` with `ad − bc ≠ 0`.
///
/// Coefficients are stored scaled so that `ad − bc = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MoebiusMap {
    a: Complex64,
    b: Complex64,
    c: Complex64,
    d: Complex64,
}

impl MoebiusMap {
    pub fn new(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Result<Self> {
        let scale = a.norm().max(b.norm()).max(c.norm()).max(d.norm());
        if !(scale.is_finite() && scale > 0.0) {
            return domain("Möbius coefficients must be finite and not all zero");
        }
        let det = a * d - b * c;
        if !(det.norm() > 1e-14 * scale * scale) {
            return domain("Möbius map is degenerate (ad − bc = 0)");
        }
        Ok(Self { a, b, c, d }.normalized())
    }

    pub fn identity() -> Self {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        Self {
            a: one,
            b: zero,
            c: zero,
            d: one,
        }
    }

    /// `z ↦ (−1 − iz)/(z + i)`, a conformal map of the unit disk onto the upper
    /// half-plane with `0 ↦ i`, the vertical diameter onto the positive imaginary
    /// axis and the left half of the unit circle onto the positive real axis.
    pub fn disk_to_upper_half_plane() -> Self {
        let one = Complex64::new(1.0, 0.0);
        Self::new(-I, -one, one, I).expect("nondegenerate")
    }

    /// `z ↦ (z − α₁)/(α₁z − 1)` for `α₁` on the upper unit semicircle. Maps the
    /// disk onto the upper half-plane, the real-symmetric geodesic through `α₁`
    /// onto the positive imaginary axis and the boundary arc through −1 onto the
    /// positive real axis.
    pub fn symmetric_geodesic_to_axis(alpha1: Complex64) -> Result<Self> {
        if !((alpha1.norm() - 1.0).abs() <= 1e-12 && alpha1.im > 0.0) {
            return domain("α₁ must lie on the upper unit semicircle (|α₁| = 1, Im α₁ > 0)");
        }
        let one = Complex64::new(1.0, 0.0);
        Self::new(one, -alpha1, alpha1, -one)
    }

    pub fn coefficients(&self) -> [Complex64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn determinant(&self) -> Complex64 {
        self.a * self.d - self.b * self.c
    }

    fn normalized(self) -> Self {
        let s = self.determinant().sqrt();
        Self {
            a: self.a / s,
            b: self.b / s,
            c: self.c / s,
            d: self.d / s,
        }
    }

    pub fn apply(&self, z: ExtendedComplex) -> ExtendedComplex {
        match z {
            ExtendedComplex::Infinity => {
                if self.c == Complex64::new(0.0, 0.0) {
                    ExtendedComplex::Infinity
                } else {
                    (self.a / self.c).into()
                }
            }
            ExtendedComplex::Finite(z) => {
                let den = self.c * z + self.d;
                // cz + d vanishes up to rounding of the normalized coefficients
                if den.norm() <= 4.0 * f64::EPSILON * ((self.c * z).norm() + self.d.norm()) {
                    ExtendedComplex::Infinity
                } else {
                    ((self.a * z + self.b) / den).into()
                }
            }
        }
    }

    pub fn apply_finite(&self, z: Complex64) -> ExtendedComplex {
        self.apply(ExtendedComplex::Finite(z))
    }

    /// Derivative `1/(cz+d)²` (the determinant is 1). `None` at the pole.
    pub fn derivative(&self, z: Complex64) -> Option<Complex64> {
        let den = self.c * z + self.d;
        if den == Complex64::new(0.0, 0.0) {
            None
        } else {
            Some(self.determinant() / (den * den))
        }
    }

    /// The preimage of ∞.
    pub fn pole(&self) -> ExtendedComplex {
        if self.c == Complex64::new(0.0, 0.0) {
            ExtendedComplex::Infinity
        } else {
            (-self.d / self.c).into()
        }
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &MoebiusMap) -> MoebiusMap {
        let (a, b, c, d) = (self.a, self.b, self.c, self.d);
        let (e, f, g, h) = (inner.a, inner.b, inner.c, inner.d);
        Self {
            a: a * e + b * g,
            b: a * f + b * h,
            c: c * e + d * g,
            d: c * f + d * h,
        }
        .normalized()
    }

    pub fn inverse(&self) -> MoebiusMap {
        Self {
            a: self.d,
            b: -self.b,
            c: -self.c,
            d: self.a,
        }
        .normalized()
    }

    /// Whether both maps have proportional coefficient vectors, i.e. act identically.
    pub fn projectively_eq(&self, other: &MoebiusMap, tol: f64) -> bool {
        let mine = self.coefficients();
        let theirs = other.coefficients();
        let dot: Complex64 = mine.iter().zip(&theirs).map(|(x, y)| x.conj() * y).sum();
        let norm2: f64 = mine.iter().map(|x| x.norm_sqr()).sum();
        let lambda = dot / norm2;
        let resid: f64 = mine
            .iter()
            .zip(&theirs)
            .map(|(x, y)| (lambda * x - y).norm_sqr())
            .sum::<f64>()
            .sqrt();
        resid <= tol * norm2.sqrt() * lambda.norm().max(1.0)
    }

    /// Image of a generalized circle.
    pub fn image_circle(&self, circle: &GeneralizedCircle) -> GeneralizedCircle {
        let samples = circle.sample_points_avoiding(self.pole());
        let images: Vec<ExtendedComplex> = samples.iter().map(|&z| self.apply(z)).collect();
        GeneralizedCircle::through(images[0], images[1], images[2])
    }
}

/// A circle or a straight line in the plane (a circle through ∞ on the sphere).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum GeneralizedCircle {
    /// The set `Re(conj(normal)·z) = offset`, with `|normal| = 1`.
    Line {
        normal: Complex64,
        offset: f64,
    },
    Circle {
        center: Complex64,
        radius: f64,
    },
}

impl GeneralizedCircle {
    pub fn circle(center: Complex64, radius: f64) -> Result<Self> {
        if !(radius > 0.0 && radius.is_finite())
            || !(center.re.is_finite() && center.im.is_finite())
        {
            return domain("circle radius must be positive and finite");
        }
        Ok(GeneralizedCircle::Circle { center, radius })
    }

    pub fn line(normal: Complex64, offset: f64) -> Result<Self> {
        let n = normal.norm();
        if !(n > 0.0 && n.is_finite() && offset.is_finite()) {
            return domain("line normal must be nonzero and finite");
        }
        Ok(GeneralizedCircle::Line {
            normal: normal / n,
            offset: offset / n,
        })
    }

    pub fn unit_circle() -> Self {
        GeneralizedCircle::Circle {
            center: Complex64::new(0.0, 0.0),
            radius: 1.0,
        }
    }

    pub fn real_axis() -> Self {
        GeneralizedCircle::Line {
            normal: I,
            offset: 0.0,
        }
    }

    pub fn imaginary_axis() -> Self {
        GeneralizedCircle::Line {
            normal: Complex64::new(1.0, 0.0),
            offset: 0.0,
        }
    }

    /// Line through two distinct finite points.
    pub fn line_through(z1: Complex64, z2: Complex64) -> Result<Self> {
        let dir = z2 - z1;
        if !(dir.norm() > 0.0) {
            return domain("line_through needs two distinct points");
        }
        let normal = I * dir / dir.norm();
        Ok(GeneralizedCircle::Line {
            normal,
            offset: (normal.conj() * z1).re,
        })
    }

    /// The generalized circle through three distinct points of the sphere.
    ///
    /// Circles with radius above [`LINE_RADIUS_CUTOFF`] come back as lines fitted
    /// through the finite points.
    pub fn through(z1: ExtendedComplex, z2: ExtendedComplex, z3: ExtendedComplex) -> Self {
        let finite: Vec<Complex64> = [z1, z2, z3].iter().filter_map(|z| z.finite()).collect();
        if finite.len() == 3 {
            let (p1, p2, p3) = (finite[0], finite[1], finite[2]);
            let w = (p3 - p1) / (p2 - p1);
            if w.im != 0.0 && w.im.is_finite() {
                let center = (p2 - p1) * (w - w.norm_sqr()) / (2.0 * I * w.im) + p1;
                let radius = (p1 - center).norm();
                if radius.is_finite() && radius <= LINE_RADIUS_CUTOFF {
                    return GeneralizedCircle::Circle { center, radius };
                }
            }
        }
        Self::fit_line(&finite)
    }

    fn fit_line(points: &[Complex64]) -> Self {
        let mut best = (0, 0, -1.0);
        for i in 0..points.len() {
            for j in i + 1..points.len() {
                let d = (points[i] - points[j]).norm();
                if d > best.2 {
                    best = (i, j, d);
                }
            }
        }
        let dir = points[best.1] - points[best.0];
        let normal = I * dir / dir.norm();
        let offset =
            points.iter().map(|z| (normal.conj() * z).re).sum::<f64>() / points.len() as f64;
        GeneralizedCircle::Line { normal, offset }
    }

    /// Signed defining function: `Re(conj(n)z) − offset` for a line and
    /// `|z − c|² − r²` for a circle. Zero exactly on the set.
    pub fn signed_value(&self, z: Complex64) -> f64 {
        match *self {
            GeneralizedCircle::Line { normal, offset } => (normal.conj() * z).re - offset,
            GeneralizedCircle::Circle { center, radius } => {
                (z - center).norm_sqr() - radius * radius
            }
        }
    }

    /// Euclidean distance from `z` to the set (0 for ∞ on a line).
    pub fn distance(&self, z: ExtendedComplex) -> f64 {
        match (z, *self) {
            (ExtendedComplex::Infinity, GeneralizedCircle::Line { .. }) => 0.0,
            (ExtendedComplex::Infinity, GeneralizedCircle::Circle { .. }) => f64::INFINITY,
            (ExtendedComplex::Finite(z), GeneralizedCircle::Line { .. }) => {
                self.signed_value(z).abs()
            }
            (ExtendedComplex::Finite(z), GeneralizedCircle::Circle { center, radius }) => {
                ((z - center).norm() - radius).abs()
            }
        }
    }

    /// `n` finite points spread evenly along the set.
    pub fn sample_points(&self, n: usize) -> Vec<Complex64> {
        match *self {
            GeneralizedCircle::Circle { center, radius } => (0..n)
                .map(|k| {
                    center + radius * Complex64::from_polar(1.0, 2.0 * PI * k as f64 / n as f64)
                })
                .collect(),
            GeneralizedCircle::Line { normal, offset } => {
                let foot = normal * offset;
                let dir = I * normal;
                // t = tan(θ/2) covers the line like the sphere covers the circle
                (0..n)
                    .map(|k| {
                        let theta = -PI / 2.0 + PI * (k as f64 + 0.5) / n as f64;
                        foot + dir * theta.tan()
                    })
                    .collect()
            }
        }
    }

    fn sample_points_avoiding(&self, pole: ExtendedComplex) -> [ExtendedComplex; 3] {
        match *self {
            GeneralizedCircle::Circle { center, radius } => {
                let phase = match pole.finite() {
                    Some(q) if (q - center).norm() > 0.0 => (q - center).arg() + PI,
                    _ => 0.0,
                };
                let at = |t: f64| {
                    ExtendedComplex::Finite(center + Complex64::from_polar(radius, phase + t))
                };
                [at(0.0), at(2.0 * PI / 3.0), at(-2.0 * PI / 3.0)]
            }
            GeneralizedCircle::Line { normal, offset } => {
                let dir = I * normal;
                let foot = normal * offset;
                let (base, spread) = match pole.finite() {
                    Some(q) => {
                        let along = (dir.conj() * (q - foot)).re;
                        (foot + dir * along, 1.0_f64.max(along.abs()).max(q.norm()))
                    }
                    None => (foot, 1.0_f64.max(offset.abs())),
                };
                [
                    ExtendedComplex::Finite(base + dir * spread),
                    ExtendedComplex::Finite(base - dir * spread),
                    ExtendedComplex::Infinity,
                ]
            }
        }
    }

    /// Equality of point sets up to `tol` (lines compared up to orientation).
    pub fn approx_eq(&self, other: &GeneralizedCircle, tol: f64) -> bool {
        match (*self, *other) {
            (
                GeneralizedCircle::Line {
                    normal: n1,
                    offset: o1,
                },
                GeneralizedCircle::Line {
                    normal: n2,
                    offset: o2,
                },
            ) => {
                ((n1 - n2).norm() <= tol && (o1 - o2).abs() <= tol)
                    || ((n1 + n2).norm() <= tol && (o1 + o2).abs() <= tol)
            }
            (
                GeneralizedCircle::Circle {
                    center: c1,
                    radius: r1,
                },
                GeneralizedCircle::Circle {
                    center: c2,
                    radius: r2,
                },
            ) => (c1 - c2).norm() <= tol && (r1 - r2).abs() <= tol,
            _ => false,
        }
    }
}
