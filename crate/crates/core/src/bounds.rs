//! Scalar bound functions: harmonic measure of positive-axis segments in the
//! upper half-plane, the auxiliary `ψ` and `ξ`, the cot² bound, the constants
//! `B_α(q)` and `M_p(q)`, and the minimization of `M_p` over `q`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::{FRAC_1_SQRT_2, PI};

use crate::error::{domain, Error, Result};
use crate::hyperbolic::P_THRESHOLD;

/// Log-spaced scan used to bracket the minimizer of `M_p`.
pub const SCAN_Q_MIN: f64 = 1.0 + 1e-6;
pub const SCAN_Q_MAX: f64 = 1e4;
pub const SCAN_POINTS: usize = 200;
/// Absolute tolerance on the minimizing `q`.
pub const Q_TOL: f64 = 1e-8;

/// The boundary segment `[a, b]` of the upper half-plane, `0 < a < b`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HalfPlaneSeg {
    a: f64,
    b: f64,
}

impl HalfPlaneSeg {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !(a > 0.0 && b > a && b.is_finite()) {
            return domain(format!("segment needs 0 < a < b, got [{a}, {b}]"));
        }
        Ok(Self { a, b })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn ratio(&self) -> f64 {
        self.b / self.a
    }
}

/// One row of the distortion-constant table.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundRow {
    pub p: f64,
    pub lower_bound: f64,
    pub q_star: f64,
    pub m_star: f64,
}

/// Harmonic measure at `z` of `[a, b]` relative to the upper half-plane: the
/// angle the segment subtends at `z`, divided by π.
pub fn harmonic_measure_segment(z: Complex64, seg: &HalfPlaneSeg) -> Result<f64> {
    if !(z.im > 0.0) {
        return domain(format!("z = {z} must lie in the upper half-plane"));
    }
    let (x, y) = (z.re, z.im);
    Ok((((seg.b - x) / y).atan() - ((seg.a - x) / y).atan()) / PI)
}

fn check_q(q: f64) -> Result<()> {
    if q > 1.0 && q.is_finite() {
        Ok(())
    } else {
        domain(format!("q must exceed 1, got {q}"))
    }
}

/// `(1/π) tan⁻¹((q − 1)/(q + 1))`, a lower bound for the harmonic measure of
/// `[a, b]` along the imaginary segment `[ia, ib]`, with `q = b/a`.
pub fn omega_lower_bound(q: f64) -> Result<f64> {
    check_q(q)?;
    Ok(((q - 1.0) / (q + 1.0)).atan() / PI)
}

fn check_alpha(alpha: f64) -> Result<()> {
    if alpha > 0.0 && alpha < 1.0 {
        Ok(())
    } else {
        domain(format!("alpha must lie in (0, 1), got {alpha}"))
    }
}

/// Domain `[−(1 + √(1−α²))/α, −α/(1 + √(1−α²))]` of `ψ`: the real shadow of `σ(α)`.
pub fn psi_domain(alpha: f64) -> Result<(f64, f64)> {
    check_alpha(alpha)?;
    let s = (1.0 - alpha * alpha).sqrt();
    Ok((-(1.0 + s) / alpha, -alpha / (1.0 + s)))
}

/// `ψ(x) = −√(r² − (x + m)²)/x` with `m = 1/α`, `r = √(1−α²)/α`: the slope of
/// the ray from 0 to the point of `σ(α)` above `x`.
pub fn psi(x: f64, alpha: f64) -> Result<f64> {
    let (lo, hi) = psi_domain(alpha)?;
    let slack = 1e-12 * lo.abs();
    if !(x >= lo - slack && x <= hi + slack) {
        return domain(format!("x = {x} outside the ψ domain [{lo}, {hi}]"));
    }
    let m = 1.0 / alpha;
    let r2 = (1.0 - alpha * alpha) / (alpha * alpha);
    Ok(-(r2 - (x + m) * (x + m)).max(0.0).sqrt() / x)
}

/// `(−α, √(1−α²)/α)`: the maximizer of `ψ` and the maximum.
pub fn psi_argmax(alpha: f64) -> Result<(f64, f64)> {
    check_alpha(alpha)?;
    Ok((-alpha, (1.0 - alpha * alpha).sqrt() / alpha))
}

fn check_alpha_upper(alpha: f64) -> Result<()> {
    if alpha > FRAC_1_SQRT_2 && alpha < 1.0 {
        Ok(())
    } else {
        domain(format!("alpha must lie in (1/√2, 1), got {alpha}"))
    }
}

/// `ξ = tan⁻¹(t) − tan⁻¹(t·√(1−α²)/α)` with `t = (q − 1)/(q + 1)`; lies in `(0, π/4)`.
pub fn xi(alpha: f64, q: f64) -> Result<f64> {
    check_alpha_upper(alpha)?;
    check_q(q)?;
    Ok(xi_unchecked(
        (q - 1.0) / (q + 1.0),
        (1.0 - alpha * alpha).sqrt() / alpha,
    ))
}

fn xi_unchecked(t: f64, shrink: f64) -> f64 {
    debug_assert!(
        t >= 0.0 && shrink >= 0.0,
        "inverse tangent arguments must be nonnegative"
    );
    t.atan() - (t * shrink).atan()
}

/// `d cot²(πu/4)`; `u = 0` gives `+∞`.
pub fn lemma_a_bound(d: f64, u: f64) -> Result<f64> {
    if !(d >= 0.0 && d.is_finite()) {
        return domain(format!("d must be a nonnegative real, got {d}"));
    }
    if !(0.0..=1.0).contains(&u) {
        return domain(format!("u must lie in [0, 1], got {u}"));
    }
    if u == 0.0 {
        return Ok(f64::INFINITY);
    }
    Ok(d * cot2(PI * u / 4.0))
}

fn cot2(x: f64) -> f64 {
    let t = x.tan();
    1.0 / (t * t)
}

/// `B_α(q) = (1/α) cot²(ξ(α, q)/4) log q`.
pub fn b_alpha(alpha: f64, q: f64) -> Result<f64> {
    let xi = xi(alpha, q)?;
    Ok(cot2(xi / 4.0) * q.ln() / alpha)
}

fn check_p_upper(p: f64) -> Result<()> {
    if !(p > P_THRESHOLD) {
        return domain(format!("p must exceed √2−1 ≈ {P_THRESHOLD:.6}, got {p}"));
    }
    if !(p < 1.0) {
        return domain(format!("p must be less than 1, got {p}"));
    }
    Ok(())
}

/// `M_p(q) = ((1 + p²)/2p) cot²(ξ/4) log q` with
/// `ξ = tan⁻¹((q−1)/(q+1)) − tan⁻¹((1−p²)(q−1)/(2p(q+1)))`.
pub fn m_p(p: f64, q: f64) -> Result<f64> {
    check_p_upper(p)?;
    check_q(q)?;
    Ok(m_p_unchecked(p, q))
}

fn m_p_unchecked(p: f64, q: f64) -> f64 {
    let t = (q - 1.0) / (q + 1.0);
    let xi = xi_unchecked(t, (1.0 - p * p) / (2.0 * p));
    (1.0 + p * p) / (2.0 * p) * cot2(xi / 4.0) * q.ln()
}

/// Minimizer of a unimodal-on-bracket `f` over `[lo, hi]` by golden-section
/// search, to an absolute bracket width `tol`.
pub fn golden_section<F>(mut f: F, lo: f64, hi: f64, tol: f64) -> f64
where
    F: FnMut(f64) -> f64,
{
    const INV_PHI: f64 = 0.618_033_988_749_894_8;
    let (mut a, mut b) = (lo, hi);
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    // 200 iterations shrink any finite bracket below f64 resolution
    for _ in 0..200 {
        if b - a <= tol {
            break;
        }
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    if fc <= fd {
        c
    } else {
        d
    }
}

/// Location and value of `min_{q > 1} M_p(q)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Minimum {
    pub q_star: f64,
    pub m_star: f64,
}

/// Scan `M_p` on a log-spaced grid to bracket the minimum, then refine by
/// golden-section search.
pub fn minimize_mp(p: f64) -> Result<Minimum> {
    check_p_upper(p)?;
    let (l0, l1) = (SCAN_Q_MIN.ln(), SCAN_Q_MAX.ln());
    let grid: Vec<f64> = (0..SCAN_POINTS)
        .map(|k| (l0 + (l1 - l0) * k as f64 / (SCAN_POINTS - 1) as f64).exp())
        .collect();
    let values: Vec<f64> = grid.iter().map(|&q| m_p_unchecked(p, q)).collect();
    let (k, _) = values
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1))
        .expect("nonempty grid");
    if k == 0 || k == SCAN_POINTS - 1 {
        return Err(Error::NonConvergence {
            estimate: grid[k],
            error_bound: f64::INFINITY,
            evaluations: SCAN_POINTS,
        });
    }
    let q_star = golden_section(|q| m_p_unchecked(p, q), grid[k - 1], grid[k + 1], Q_TOL);
    let m_star = m_p_unchecked(p, q_star);
    Ok(if values[k] < m_star {
        Minimum {
            q_star: grid[k],
            m_star: values[k],
        }
    } else {
        Minimum { q_star, m_star }
    })
}

/// `(1 + p)²π/(4p)`, the ratio attained by `k_p`. Accepts `p = 1` (value π).
pub fn lower_bound(p: f64) -> Result<f64> {
    if !(p > 0.0 && p <= 1.0) {
        return domain(format!("p must lie in (0, 1), got {p}"));
    }
    Ok((1.0 + p) * (1.0 + p) * PI / (4.0 * p))
}

/// Lower bound, minimizer and minimal `M_p` for one `p`.
pub fn bound_row(p: f64) -> Result<BoundRow> {
    let Minimum { q_star, m_star } = minimize_mp(p)?;
    Ok(BoundRow {
        p,
        lower_bound: lower_bound(p)?,
        q_star,
        m_star,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn harmonic_measure_example() {
        let seg = HalfPlaneSeg::new(1.0, 2.0).unwrap();
        let w = harmonic_measure_segment(Complex64::new(0.0, 1.0), &seg).unwrap();
        assert!((w - (2f64.atan() - PI / 4.0) / PI).abs() < 1e-15);
        assert!((w - 0.102_416_382_349_566_7).abs() < 1e-12);
        assert!(harmonic_measure_segment(Complex64::new(0.0, 0.0), &seg).is_err());
        assert!(HalfPlaneSeg::new(0.0, 1.0).is_err());
        assert!(HalfPlaneSeg::new(2.0, 1.0).is_err());
    }

    #[test]
    fn harmonic_measure_of_half_axis() {
        let seg = HalfPlaneSeg::new(1e-9, 1e9).unwrap();
        let w = harmonic_measure_segment(Complex64::new(0.0, 1.0), &seg).unwrap();
        assert!((w - 0.5).abs() < 1e-8);
    }

    #[test]
    fn harmonic_measure_on_imaginary_axis() {
        let (a, b) = (1.0, 4.0);
        let seg = HalfPlaneSeg::new(a, b).unwrap();
        let y: f64 = (a * b).sqrt();
        let w = harmonic_measure_segment(Complex64::new(0.0, y), &seg).unwrap();
        assert!((w - ((b / y).atan() - (a / y).atan()) / PI).abs() < 1e-15);
        // the bound is attained at the ends of [ia, ib] and exceeded inside
        let bound = omega_lower_bound(b / a).unwrap();
        assert!(w > bound);
        for y in [a, b] {
            let w = harmonic_measure_segment(Complex64::new(0.0, y), &seg).unwrap();
            assert!((w - bound).abs() < 1e-15);
        }
    }

    #[test]
    fn omega_bound_examples() {
        assert!((omega_lower_bound(3.0).unwrap() - 0.147_583_617_650_433_3).abs() < 1e-12);
        assert!((omega_lower_bound(1e15).unwrap() - 0.25).abs() < 1e-12);
        assert!(omega_lower_bound(1.0).is_err());
    }

    #[test]
    fn psi_examples() {
        assert!((psi(-0.8, 0.8).unwrap() - 0.75).abs() < 1e-15);
        let (lo, hi) = psi_domain(0.8).unwrap();
        assert!((lo + 2.0).abs() < 1e-15 && (hi + 0.5).abs() < 1e-15);
        assert_eq!(psi(lo, 0.8).unwrap(), 0.0);
        assert!(psi(-0.4, 0.8).is_err());
        let (x, v) = psi_argmax(0.8).unwrap();
        assert_eq!(x, -0.8);
        assert!((v - 0.75).abs() < 1e-15);
    }

    #[test]
    fn xi_examples() {
        let v = xi(0.8, 3.37).unwrap();
        assert!((v - 0.110_626_379_560_422_9).abs() < 1e-12);
        let q = 3.0;
        let near_one = xi(1.0 - 1e-12, q).unwrap();
        assert!((near_one - 0.5f64.atan()).abs() < 1e-5);
        assert!(xi(FRAC_1_SQRT_2 + 1e-12, q).unwrap() < 1e-10);
        assert!(xi(0.7, q).is_err());
        assert!(xi(0.8, 0.5).is_err());
    }

    #[test]
    fn lemma_a_examples() {
        assert!((lemma_a_bound(1.0, 1.0).unwrap() - 1.0).abs() < 1e-15);
        let v = lemma_a_bound(2.0, 0.5).unwrap();
        let expect = 2.0 * (1.0 + 2f64.sqrt()).powi(2);
        assert!((v - expect).abs() < 1e-12);
        assert!((v - 11.656_854_249_492_38).abs() < 1e-9);
        assert_eq!(lemma_a_bound(1.0, 0.0).unwrap(), f64::INFINITY);
        assert!(lemma_a_bound(-1.0, 0.5).is_err());
        assert!(lemma_a_bound(1.0, 1.5).is_err());
        let mut prev = f64::INFINITY;
        for k in 1..=100 {
            let v = lemma_a_bound(1.0, k as f64 / 100.0).unwrap();
            assert!(v < prev);
            prev = v;
        }
    }

    #[test]
    fn m_p_examples() {
        assert!((m_p(0.999, 5.55).unwrap() - 73.42).abs() < 0.01);
        assert!((m_p(0.5, 3.37).unwrap() - 1984.43).abs() < 0.01);
        let (m, b) = (m_p(0.5, 3.37).unwrap(), b_alpha(0.8, 3.37).unwrap());
        assert!((m - b).abs() <= 1e-12 * m);
        let err = m_p(0.3, 2.0).unwrap_err().to_string();
        assert!(err.contains("p must exceed √2−1"), "{err}");
        assert!(m_p(0.5, 1.0).is_err());
        for q in [1.001, 1.5, 3.0, 10.0, 1e3] {
            assert!(m_p(0.7, q).unwrap() > lower_bound(0.7).unwrap());
        }
    }

    #[test]
    fn m_p_diverges_at_both_ends() {
        let mid = m_p(0.8, 4.78).unwrap();
        assert!(m_p(0.8, 1.0 + 1e-6).unwrap() > 1e3 * mid);
        assert!(m_p(0.8, 1e12).unwrap() > 5.0 * mid);
    }

    #[test]
    fn minimize_examples() {
        let m = minimize_mp(0.9).unwrap();
        assert!((m.q_star - 5.19).abs() < 0.05 && (m.m_star - 95.49).abs() < 0.01);
        let m = minimize_mp(0.45).unwrap();
        assert!((m.q_star - 3.13).abs() < 0.05);
        assert!((m.m_star - 10811.10).abs() / 10811.10 < 5e-3);
        for dq in [-0.01, 0.01] {
            assert!(m_p(0.45, m.q_star + dq).unwrap() >= m.m_star);
        }
        assert!(minimize_mp(0.41).is_err());
    }

    #[test]
    fn lower_bound_examples() {
        assert!((lower_bound(0.5).unwrap() - 1.125 * PI).abs() < 1e-14);
        assert!((lower_bound(0.999).unwrap() - 3.141_593_439_774_141).abs() < 1e-12);
        assert_eq!(
            (lower_bound(0.999).unwrap() * 100.0).trunc() / 100.0,
            314.0 / 100.0
        );
        assert_eq!(lower_bound(1.0).unwrap(), PI);
        assert!(lower_bound(0.0).is_err());
    }

    #[test]
    fn golden_section_quadratic() {
        let x = golden_section(|x| (x - 1.234).powi(2), 0.0, 3.0, 1e-10);
        assert!((x - 1.234).abs() < 1e-7);
    }
}
