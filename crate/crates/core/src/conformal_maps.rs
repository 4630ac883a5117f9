//! The concrete maps of the length-distortion problem.
//!
//! * `k_p(z) = pz / ((1 − pz)(p − z))`, the extremal map with a simple pole at `p`;
//! * `φ_α(z) = z(1 − αz)/(z − α)`, which maps the origin side `Ω` of `γ(α)` onto the disk;
//! * `f₀(z) = exp(i(1 + z)/(1 − z))`, the analytic counterexample;
//! * Möbius maps and right-to-left compositions of all of the above.
//!
//! Derivatives are exact (chain rule for compositions), never numeric.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::{PI, SQRT_2};

use crate::error::{domain, Error, Result};
use crate::hyperbolic::{HalfPlaneRegion, Side};
use crate::moebius::{ExtendedComplex, MoebiusMap};

const I: Complex64 = Complex64::new(0.0, 1.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const ZERO: Complex64 = Complex64::new(0.0, 0.0);

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum MapDescriptor {
    Kp {
        p: f64,
    },
    PhiAlpha {
        alpha: f64,
    },
    F0,
    Moebius(MoebiusMap),
    /// `[f, g, h]` is `f ∘ g ∘ h`.
    Composition(Vec<MapDescriptor>),
}

fn pole_error(pole: Complex64) -> Error {
    Error::PoleProximity {
        pole: pole.to_string(),
        distance: 0.0,
    }
}

impl MapDescriptor {
    pub fn kp(p: f64) -> Result<Self> {
        if !(p > 0.0 && p < 1.0) {
            return domain(format!("p must lie in (0, 1), got {p}"));
        }
        Ok(MapDescriptor::Kp { p })
    }

    pub fn phi_alpha(alpha: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha < 1.0) {
            return domain(format!("alpha must lie in (0, 1), got {alpha}"));
        }
        Ok(MapDescriptor::PhiAlpha { alpha })
    }

    pub fn compose(maps: Vec<MapDescriptor>) -> Result<Self> {
        if maps.is_empty() {
            return domain("a composition needs at least one map");
        }
        Ok(MapDescriptor::Composition(maps))
    }

    pub fn eval(&self, z: ExtendedComplex) -> ExtendedComplex {
        match self {
            MapDescriptor::Kp { p } => {
                let p = *p;
                match z {
                    ExtendedComplex::Infinity => ExtendedComplex::ZERO,
                    ExtendedComplex::Finite(z) => {
                        let den = (ONE - p * z) * (p - z);
                        if den == ZERO {
                            ExtendedComplex::Infinity
                        } else {
                            (p * z / den).into()
                        }
                    }
                }
            }
            MapDescriptor::PhiAlpha { alpha } => match z {
                ExtendedComplex::Infinity => ExtendedComplex::Infinity,
                ExtendedComplex::Finite(z) => {
                    let den = z - alpha;
                    if den == ZERO {
                        ExtendedComplex::Infinity
                    } else {
                        (z * (ONE - alpha * z) / den).into()
                    }
                }
            },
            MapDescriptor::F0 => match z {
                ExtendedComplex::Infinity => Complex64::from_polar(1.0, -1.0).into(),
                ExtendedComplex::Finite(z) => {
                    if z == ONE {
                        // essential singularity; reported as ∞
                        return ExtendedComplex::Infinity;
                    }
                    let w = (ONE + z) / (ONE - z);
                    // exp(iw) = e^{-Im w} e^{i Re w}
                    Complex64::from_polar((-w.im).exp(), w.re).into()
                }
            },
            MapDescriptor::Moebius(m) => m.apply(z),
            MapDescriptor::Composition(maps) => maps.iter().rev().fold(z, |acc, m| m.eval(acc)),
        }
    }

    pub fn eval_finite(&self, z: Complex64) -> ExtendedComplex {
        self.eval(ExtendedComplex::Finite(z))
    }

    pub fn deriv(&self, z: ExtendedComplex) -> Result<Complex64> {
        let z = z
            .finite()
            .ok_or_else(|| Error::Domain("derivative at ∞ is not defined".into()))?;
        match self {
            MapDescriptor::Kp { p } => {
                let den = (ONE - p * z) * (p - z);
                if den == ZERO {
                    return Err(pole_error(z));
                }
                Ok(p * p * (ONE - z * z) / (den * den))
            }
            MapDescriptor::PhiAlpha { alpha } => {
                let den = z - alpha;
                if den == ZERO {
                    return Err(pole_error(z));
                }
                Ok(-alpha * (ONE - 2.0 * alpha * z + z * z) / (den * den))
            }
            MapDescriptor::F0 => {
                if z == ONE {
                    return Err(pole_error(z));
                }
                let f = self
                    .eval_finite(z)
                    .finite()
                    .ok_or_else(|| Error::Domain(format!("f₀({z}) overflows")))?;
                let u = ONE - z;
                Ok(f * 2.0 * I / (u * u))
            }
            MapDescriptor::Moebius(m) => m.derivative(z).ok_or_else(|| pole_error(z)),
            MapDescriptor::Composition(maps) => {
                let mut point = ExtendedComplex::Finite(z);
                let mut acc = ONE;
                for m in maps.iter().rev() {
                    acc *= m.deriv(point)?;
                    point = m.eval(point);
                }
                Ok(acc)
            }
        }
    }

    /// `|f′(z)|`. For `f₀` this uses `e^{−Im w}·2/|1 − z|²` with `w = (1+z)/(1−z)`,
    /// which stays finite wherever the modulus is representable.
    pub fn deriv_abs(&self, z: Complex64) -> Result<f64> {
        match self {
            MapDescriptor::F0 => {
                if z == ONE {
                    return Err(pole_error(z));
                }
                let u = ONE - z;
                let w = (ONE + z) / u;
                Ok((-w.im).exp() * 2.0 / u.norm_sqr())
            }
            MapDescriptor::Composition(maps) => {
                let mut point = ExtendedComplex::Finite(z);
                let mut acc = 1.0;
                for m in maps.iter().rev() {
                    let zz = point
                        .finite()
                        .ok_or_else(|| Error::Domain("composition passes through ∞".into()))?;
                    acc *= m.deriv_abs(zz)?;
                    point = m.eval(point);
                }
                Ok(acc)
            }
            _ => Ok(self.deriv(ExtendedComplex::Finite(z))?.norm()),
        }
    }

    /// Points of the sphere sent to ∞.
    ///
    /// `f₀` has no poles (its essential singularity at 1 is not listed); finite
    /// poles of outer layers are not pulled back through an inner `f₀`.
    pub fn poles(&self) -> Vec<ExtendedComplex> {
        match self {
            MapDescriptor::Composition(maps) => {
                let mut set = maps[0].poles();
                for m in &maps[1..] {
                    set = set.iter().flat_map(|w| m.preimages(*w)).collect();
                }
                dedup_points(set)
            }
            m => m.preimages(ExtendedComplex::Infinity),
        }
    }

    /// All `z` with `f(z) = w`, for the single-layer maps; compositions are
    /// handled by [`MapDescriptor::poles`].
    fn preimages(&self, w: ExtendedComplex) -> Vec<ExtendedComplex> {
        match (self, w) {
            (MapDescriptor::Kp { p }, ExtendedComplex::Infinity) => {
                vec![ExtendedComplex::real(*p), ExtendedComplex::real(1.0 / p)]
            }
            (MapDescriptor::Kp { p }, ExtendedComplex::Finite(w)) => {
                if w == ZERO {
                    return vec![ExtendedComplex::ZERO, ExtendedComplex::Infinity];
                }
                // w p z² − (w(1+p²) + p) z + w p = 0
                quadratic_roots(w * p, -(w * (1.0 + p * p) + p), w * p)
            }
            (MapDescriptor::PhiAlpha { alpha }, ExtendedComplex::Infinity) => {
                vec![ExtendedComplex::real(*alpha), ExtendedComplex::Infinity]
            }
            (MapDescriptor::PhiAlpha { alpha }, ExtendedComplex::Finite(w)) => {
                // α z² + (w − 1) z − wα = 0
                quadratic_roots(Complex64::new(*alpha, 0.0), w - 1.0, -w * alpha)
            }
            (MapDescriptor::F0, ExtendedComplex::Infinity) => Vec::new(),
            (MapDescriptor::F0, ExtendedComplex::Finite(_)) => Vec::new(),
            (MapDescriptor::Moebius(m), w) => vec![m.inverse().apply(w)],
            (MapDescriptor::Composition(maps), w) => {
                let mut set = vec![w];
                for m in maps {
                    set = set.iter().flat_map(|v| m.preimages(*v)).collect();
                }
                set
            }
        }
    }
}

fn quadratic_roots(a: Complex64, b: Complex64, c: Complex64) -> Vec<ExtendedComplex> {
    let disc = (b * b - 4.0 * a * c).sqrt();
    // avoid cancellation: q = −(b + sign·√disc)/2
    let q = if (b.conj() * disc).re >= 0.0 {
        -(b + disc) / 2.0
    } else {
        -(b - disc) / 2.0
    };
    if q == ZERO {
        return vec![ExtendedComplex::ZERO, ExtendedComplex::ZERO];
    }
    vec![(q / a).into(), (c / q).into()]
}

fn dedup_points(points: Vec<ExtendedComplex>) -> Vec<ExtendedComplex> {
    let mut out: Vec<ExtendedComplex> = Vec::new();
    for z in points {
        if !out.iter().any(|w| w.chordal_distance(&z) < 1e-12) {
            out.push(z);
        }
    }
    out
}

/// A closed real segment `[left, right]` removed from the sphere.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Slit {
    pub left: f64,
    pub right: f64,
}

/// The omitted segment `[−p/(1−p)², −p/(1+p)²]` of `k_p(𝔻)`.
pub fn kp_slit(p: f64) -> Result<Slit> {
    check_p(p)?;
    Ok(Slit {
        left: -p / ((1.0 - p) * (1.0 - p)),
        right: -p / ((1.0 + p) * (1.0 + p)),
    })
}

/// Euclidean distance from `w` to the closed segment.
pub fn slit_distance(w: Complex64, slit: &Slit) -> f64 {
    let x = w.re.clamp(slit.left, slit.right);
    (w - Complex64::new(x, 0.0)).norm()
}

fn check_p(p: f64) -> Result<()> {
    if p > 0.0 && p < 1.0 {
        Ok(())
    } else {
        domain(format!("p must lie in (0, 1), got {p}"))
    }
}

/// Length of `k_p` of the vertical diameter: `pπ/(1 + p²)`.
pub fn kp_length_i(p: f64) -> Result<f64> {
    check_p(p)?;
    Ok(p * PI / (1.0 + p * p))
}

/// Length of `k_p` of the left unit semicircle, counting the doubly covered
/// segment twice: `4p²/((1 + p²)(1 + p)²)`.
pub fn kp_length_cprime(p: f64) -> Result<f64> {
    check_p(p)?;
    Ok(4.0 * p * p / ((1.0 + p * p) * (1.0 + p) * (1.0 + p)))
}

/// `(1 + p)²π/(4p)`.
pub fn kp_ratio(p: f64) -> Result<f64> {
    Ok(kp_length_i(p)? / kp_length_cprime(p)?)
}

/// `4|φ′_α(z)| / (1 − |φ_α(z)|²) · ρ` for `z` on the origin side of `γ(α)`.
pub fn lemma1_rhs(alpha: f64, z: Complex64, rho: f64) -> Result<f64> {
    let region = HalfPlaneRegion::omega(alpha)?;
    if region.side_of(z)? != Side::Inside {
        return domain(format!("z = {z} is not in Ω(α) for α = {alpha}"));
    }
    if !(rho >= 0.0) {
        return domain("rho must be nonnegative");
    }
    let phi = MapDescriptor::PhiAlpha { alpha };
    let dphi = phi.deriv(ExtendedComplex::Finite(z))?.norm();
    let value = phi
        .eval_finite(z)
        .finite()
        .ok_or_else(|| Error::Internal("φ_α has no pole in Ω".into()))?;
    Ok(4.0 * dphi / (1.0 - value.norm_sqr()) * rho)
}

/// Half-plane form: `8|φ′_α(ζ)| / (|z + i|²(1 − |φ_α(ζ)|²)) · ρ` with
/// `ζ = −(iz + 1)/(z + i)`, for `z` on the `i` side of `σ(α)`.
pub fn lemma2_rhs(alpha: f64, z: Complex64, rho: f64) -> Result<f64> {
    let region = HalfPlaneRegion::omega1(alpha)?;
    if region.side_of(z)? != Side::Inside {
        return domain(format!("z = {z} is not in Ω₁(α) for α = {alpha}"));
    }
    if !(rho >= 0.0) {
        return domain("rho must be nonnegative");
    }
    let zeta = -(I * z + 1.0) / (z + I);
    let phi = MapDescriptor::PhiAlpha { alpha };
    let dphi = phi.deriv(ExtendedComplex::Finite(zeta))?.norm();
    let value = phi
        .eval_finite(zeta)
        .finite()
        .ok_or_else(|| Error::Internal("φ_α has no pole in Ω".into()))?;
    Ok(8.0 * dphi / ((z + I).norm_sqr() * (1.0 - value.norm_sqr())) * rho)
}

fn check_alpha1(alpha1: Complex64) -> Result<()> {
    if (alpha1.norm() - 1.0).abs() <= 1e-12 && alpha1.im > 0.0 {
        Ok(())
    } else {
        domain(format!(
            "α₁ = {alpha1} must lie on the upper unit semicircle"
        ))
    }
}

/// `(1 + √2 Re α₁)/(√2 + Re((1 − i)α₁))`: the preimage of `√2 − 1` under the
/// reduction map, i.e. the smallest admissible real pole for the geodesic through `α₁`.
pub fn p0_from_alpha1(alpha1: Complex64) -> Result<f64> {
    check_alpha1(alpha1)?;
    Ok((1.0 + SQRT_2 * alpha1.re) / (SQRT_2 + ((ONE - I) * alpha1).re))
}

/// `g⁻¹ ∘ g₁`, the disk automorphism carrying the geodesic through `α₁`
/// onto the vertical diameter and its boundary arc through −1 onto the left semicircle.
pub fn reduction_map(alpha1: Complex64) -> Result<MoebiusMap> {
    check_alpha1(alpha1)?;
    let g1 = MoebiusMap::symmetric_geodesic_to_axis(alpha1)?;
    Ok(MoebiusMap::disk_to_upper_half_plane()
        .inverse()
        .compose(&g1))
}

/// `(1 − p₁α₁ + i(α₁ − p₁))/(p₁ − α₁ + i(p₁α₁ − 1))`, the image of the pole
/// `p₁` under the reduction map.
pub fn p1_prime(p1: f64, alpha1: Complex64) -> Result<f64> {
    let p0 = p0_from_alpha1(alpha1)?;
    if !(p1 > p0 && p1 < 1.0) {
        return domain(format!("p₁ must lie in (p₀, 1) = ({p0}, 1), got {p1}"));
    }
    let num = ONE - p1 * alpha1 + I * (alpha1 - p1);
    let den = p1 - alpha1 + I * (p1 * alpha1 - 1.0);
    let value = num / den;
    if value.im.abs() > 1e-10 {
        return Err(Error::Internal(format!("p′₁ = {value} is not real")));
    }
    Ok(value.re)
}
