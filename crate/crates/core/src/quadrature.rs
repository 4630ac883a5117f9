//! Arc length of image curves, `∫ |f′(γ(t))| |γ′(t)| dt`, by globally adaptive
//! Gauss–Kronrod quadrature.
//!
//! Each subinterval carries a 15-point Kronrod estimate and the difference to
//! the embedded 7-point Gauss rule as its error. The interval with the largest
//! error is halved until the summed error drops below the relative tolerance.
//! Open endpoints are never evaluated; the initial mesh is clustered
//! geometrically (ratio 1/2) towards them.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::cell::Cell;
use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use crate::conformal_maps::MapDescriptor;
use crate::error::{domain, Error, Result};
use crate::hyperbolic::Geodesic;

pub const DEFAULT_REL_TOL: f64 = 1e-10;
pub const MIN_REL_TOL: f64 = 1e-13;
pub const MAX_REL_TOL: f64 = 1e-3;
/// Integrand evaluation budget per integral.
pub const MAX_EVALUATIONS: usize = 1_000_000;
/// Curves passing this close to a pole of the map are rejected.
pub const POLE_GUARD: f64 = 1e-8;

const CLUSTER_LEVELS: u32 = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum EndKind {
    Closed,
    Open,
}

type CurveFn = Arc<dyn Fn(f64) -> Complex64 + Send + Sync>;

/// A parametrized curve `γ : [t0, t1] → ℂ` with its derivative.
#[derive(Clone)]
pub struct ParamCurve {
    t0: f64,
    t1: f64,
    start: EndKind,
    end: EndKind,
    point: CurveFn,
    tangent: CurveFn,
    label: String,
}

impl fmt::Debug for ParamCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ParamCurve")
            .field("label", &self.label)
            .field("domain", &(self.t0, self.t1))
            .field("ends", &(self.start, self.end))
            .finish()
    }
}

impl ParamCurve {
    pub fn new(
        label: impl Into<String>,
        domain_: (f64, f64),
        ends: (EndKind, EndKind),
        point: impl Fn(f64) -> Complex64 + Send + Sync + 'static,
        tangent: impl Fn(f64) -> Complex64 + Send + Sync + 'static,
    ) -> Result<Self> {
        let (t0, t1) = domain_;
        if !(t0.is_finite() && t1.is_finite() && t0 < t1) {
            return domain(format!(
                "curve domain must satisfy t0 < t1, got [{t0}, {t1}]"
            ));
        }
        Ok(Self {
            t0,
            t1,
            start: ends.0,
            end: ends.1,
            point: Arc::new(point),
            tangent: Arc::new(tangent),
            label: label.into(),
        })
    }

    /// The vertical diameter `t ↦ it`, `t ∈ (−1, 1)`.
    pub fn diameter_i() -> Self {
        Self::rotated_diameter(0.0).with_label("I")
    }

    /// The diameter making angle `θ` with the vertical one: `t ↦ i e^{iθ} t`.
    pub fn rotated_diameter(theta: f64) -> Self {
        let dir = Complex64::new(0.0, 1.0) * Complex64::from_polar(1.0, theta);
        Self::new(
            format!("diameter(θ={theta})"),
            (-1.0, 1.0),
            (EndKind::Open, EndKind::Open),
            move |t| dir * t,
            move |_| dir,
        )
        .expect("valid domain")
    }

    /// The left unit semicircle `θ ↦ e^{iθ}`, `θ ∈ [π/2, 3π/2]`.
    pub fn semicircle_cprime() -> Self {
        Self::circle_arc(
            Complex64::new(0.0, 0.0),
            1.0,
            PI / 2.0,
            3.0 * PI / 2.0,
            (EndKind::Closed, EndKind::Closed),
        )
        .expect("valid arc")
        .with_label("C'")
    }

    /// The upper unit semicircle `θ ↦ e^{iθ}`, `θ ∈ (0, π)`.
    pub fn semicircle_upper() -> Self {
        Self::circle_arc(
            Complex64::new(0.0, 0.0),
            1.0,
            0.0,
            PI,
            (EndKind::Open, EndKind::Open),
        )
        .expect("valid arc")
        .with_label("upper")
    }

    /// The segment `[a, b]` of the real axis, `t ↦ t`.
    pub fn real_segment(a: f64, b: f64) -> Result<Self> {
        Self::new(
            format!("[{a}, {b}]"),
            (a, b),
            (EndKind::Closed, EndKind::Closed),
            |t| Complex64::new(t, 0.0),
            |_| Complex64::new(1.0, 0.0),
        )
    }

    /// `θ ↦ center + r e^{iθ}` over `[theta0, theta1]`.
    pub fn circle_arc(
        center: Complex64,
        radius: f64,
        theta0: f64,
        theta1: f64,
        ends: (EndKind, EndKind),
    ) -> Result<Self> {
        if !(radius > 0.0) {
            return domain("arc radius must be positive");
        }
        Self::new(
            format!("arc(c={center}, r={radius}, [{theta0}, {theta1}])"),
            (theta0, theta1),
            ends,
            move |t| center + Complex64::from_polar(radius, t),
            move |t| Complex64::new(0.0, 1.0) * Complex64::from_polar(radius, t),
        )
    }

    /// The part of a geodesic inside its model, `t ∈ (0, 1)`.
    pub fn geodesic_arc(geodesic: &Geodesic) -> Result<Self> {
        let arc = geodesic.arc().ok_or_else(|| {
            Error::Domain("geodesic with an endpoint at ∞ has no finite arc".into())
        })?;
        Self::new(
            "geodesic",
            (0.0, 1.0),
            (EndKind::Open, EndKind::Open),
            move |t| arc.point(t),
            move |t| arc.tangent(t),
        )
    }

    /// The boundary arc through −1 joining `α₁` and `conj(α₁)`.
    pub fn boundary_arc_through_minus_one(alpha1: Complex64) -> Result<Self> {
        if !((alpha1.norm() - 1.0).abs() <= 1e-12 && alpha1.im > 0.0) {
            return domain("α₁ must lie on the upper unit semicircle");
        }
        let a = alpha1.arg();
        Ok(Self::circle_arc(
            Complex64::new(0.0, 0.0),
            1.0,
            a,
            2.0 * PI - a,
            (EndKind::Closed, EndKind::Closed),
        )?
        .with_label("boundary arc through -1"))
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn with_ends(mut self, start: EndKind, end: EndKind) -> Self {
        self.start = start;
        self.end = end;
        self
    }

    /// The same curve traced through `t = φ(s)`, `s ∈ [s0, s1]`, where `φ` is
    /// increasing with `φ(s0) = t0` and `φ(s1) = t1`.
    pub fn reparametrized(
        &self,
        s_domain: (f64, f64),
        phi: impl Fn(f64) -> f64 + Send + Sync + 'static,
        dphi: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Result<Self> {
        let phi = Arc::new(phi);
        let phi2 = Arc::clone(&phi);
        let (point, tangent) = (Arc::clone(&self.point), Arc::clone(&self.tangent));
        Self::new(
            self.label.clone(),
            s_domain,
            (self.start, self.end),
            move |s| point(phi(s)),
            move |s| tangent(phi2(s)) * dphi(s),
        )
    }

    /// The restriction to `[t0, t1]`, with closed ends.
    pub fn restricted(&self, t0: f64, t1: f64) -> Result<Self> {
        if !(t0 >= self.t0 && t1 <= self.t1 && t0 < t1) {
            return domain(format!(
                "[{t0}, {t1}] is not a subinterval of [{}, {}]",
                self.t0, self.t1
            ));
        }
        let mut out = self.clone();
        out.t0 = t0;
        out.t1 = t1;
        if t0 > self.t0 {
            out.start = EndKind::Closed;
        }
        if t1 < self.t1 {
            out.end = EndKind::Closed;
        }
        Ok(out)
    }

    pub fn domain(&self) -> (f64, f64) {
        (self.t0, self.t1)
    }

    pub fn ends(&self) -> (EndKind, EndKind) {
        (self.start, self.end)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn point(&self, t: f64) -> Complex64 {
        (self.point)(t)
    }

    pub fn tangent(&self, t: f64) -> Complex64 {
        (self.tangent)(t)
    }

    /// Distance from `w` to the closure of the curve: a dense scan followed by
    /// a golden-section refinement around the closest sample.
    pub fn distance_to(&self, w: Complex64) -> f64 {
        const SAMPLES: usize = 4096;
        let h = (self.t1 - self.t0) / SAMPLES as f64;
        let dist = |t: f64| (self.point(t) - w).norm();
        let (best_k, _) = (0..=SAMPLES)
            .map(|k| (k, dist(self.t0 + k as f64 * h)))
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .expect("nonempty");
        let lo = self.t0 + (best_k.saturating_sub(1)) as f64 * h;
        let hi = (self.t0 + (best_k + 1) as f64 * h).min(self.t1);
        let t = crate::bounds::golden_section(
            dist,
            lo,
            hi,
            1e-15 * (1.0 + self.t1.abs().max(self.t0.abs())),
        );
        dist(t).min(dist(lo)).min(dist(hi))
    }
}

/// A length together with the quadrature's own error estimate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LengthEstimate {
    pub value: f64,
    pub error_estimate: f64,
    pub evaluations: usize,
}

impl LengthEstimate {
    pub fn relative_error_estimate(&self) -> f64 {
        self.error_estimate / self.value.abs()
    }
}

// Gauss–Kronrod 7/15 nodes and weights on [−1, 1].
const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error
            .total_cmp(&other.error)
            .then_with(|| other.a.total_cmp(&self.a))
    }
}

fn gauss_kronrod<F>(f: &mut F, a: f64, b: f64) -> Result<Panel>
where
    F: FnMut(f64) -> Result<f64>,
{
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center)?;
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    for j in 0..7 {
        let dx = half * XGK[j];
        let sum = f(center - dx)? + f(center + dx)?;
        kronrod += WGK[j] * sum;
        if j % 2 == 1 {
            gauss += WG[j / 2] * sum;
        }
    }
    Ok(Panel {
        a,
        b,
        value: kronrod * half,
        error: ((kronrod - gauss) * half).abs(),
    })
}

/// Initial mesh: four equal panels, subdivided geometrically towards open ends.
fn initial_mesh(a: f64, b: f64, open: (bool, bool)) -> Vec<f64> {
    let len = b - a;
    let mut points = vec![a, a + 0.25 * len, a + 0.5 * len, a + 0.75 * len, b];
    for level in 3..(3 + CLUSTER_LEVELS) {
        let d = len * 0.5f64.powi(level as i32);
        if open.0 {
            points.push(a + d);
        }
        if open.1 {
            points.push(b - d);
        }
    }
    points.sort_by(f64::total_cmp);
    points.dedup();
    points
}

/// Globally adaptive integral of `f` over `[a, b]`; `open` marks ends that are
/// approached but never evaluated.
pub fn integrate<F>(
    mut f: F,
    a: f64,
    b: f64,
    open: (bool, bool),
    rel_tol: f64,
) -> Result<LengthEstimate>
where
    F: FnMut(f64) -> Result<f64>,
{
    let evaluations = Cell::new(0usize);
    let mut counted = |t: f64| -> Result<f64> {
        evaluations.set(evaluations.get() + 1);
        let v = f(t)?;
        if !v.is_finite() {
            return domain(format!("integrand is not finite at t = {t}"));
        }
        Ok(v)
    };

    let mut heap = BinaryHeap::new();
    for w in initial_mesh(a, b, open).windows(2) {
        heap.push(gauss_kronrod(&mut counted, w[0], w[1])?);
    }
    let min_width = 4.0 * f64::EPSILON * a.abs().max(b.abs()).max(b - a);

    loop {
        let (total, error) = summarize(heap.iter());
        if error <= rel_tol * total.abs() || error == 0.0 {
            return Ok(LengthEstimate {
                value: total,
                error_estimate: error,
                evaluations: evaluations.get(),
            });
        }
        let stalled = Error::NonConvergence {
            estimate: total,
            error_bound: error,
            evaluations: evaluations.get(),
        };
        if evaluations.get() + 30 > MAX_EVALUATIONS {
            return Err(stalled);
        }
        let Some(worst) = heap.pop() else {
            return Err(stalled);
        };
        let mid = 0.5 * (worst.a + worst.b);
        if worst.b - worst.a <= min_width || mid <= worst.a || mid >= worst.b {
            // the dominant panel is at the resolution limit
            return Err(stalled);
        }
        heap.push(gauss_kronrod(&mut counted, worst.a, mid)?);
        heap.push(gauss_kronrod(&mut counted, mid, worst.b)?);
    }
}

/// Sum in order of position with Neumaier compensation, so the result does not
/// depend on refinement order.
fn summarize<'a>(panels: impl Iterator<Item = &'a Panel>) -> (f64, f64) {
    let mut sorted: Vec<&Panel> = panels.collect();
    sorted.sort_by(|x, y| x.a.total_cmp(&y.a));
    let (mut sum, mut comp, mut err) = (0.0f64, 0.0f64, 0.0f64);
    for p in sorted {
        let t = sum + p.value;
        if sum.abs() >= p.value.abs() {
            comp += (sum - t) + p.value;
        } else {
            comp += (p.value - t) + sum;
        }
        sum = t;
        err += p.error;
    }
    (sum + comp, err)
}

fn check_rel_tol(rel_tol: f64) -> Result<()> {
    if (MIN_REL_TOL..=MAX_REL_TOL).contains(&rel_tol) {
        Ok(())
    } else {
        domain(format!(
            "rel_tol must lie in [{MIN_REL_TOL:e}, {MAX_REL_TOL:e}], got {rel_tol:e}"
        ))
    }
}

fn check_poles(map: &MapDescriptor, curve: &ParamCurve) -> Result<()> {
    for pole in map.poles() {
        if let Some(q) = pole.finite() {
            let d = curve.distance_to(q);
            if d < POLE_GUARD {
                return Err(Error::PoleProximity {
                    pole: q.to_string(),
                    distance: d,
                });
            }
        }
    }
    Ok(())
}

/// Length of `map(curve)`.
pub fn arc_length(map: &MapDescriptor, curve: &ParamCurve, rel_tol: f64) -> Result<LengthEstimate> {
    check_rel_tol(rel_tol)?;
    check_poles(map, curve)?;
    let (t0, t1) = curve.domain();
    let (start, end) = curve.ends();
    integrate(
        |t| Ok(map.deriv_abs(curve.point(t))? * curve.tangent(t).norm()),
        t0,
        t1,
        (start == EndKind::Open, end == EndKind::Open),
        rel_tol,
    )
}

/// Lengths of `map(curve)` with each open end of the parameter domain cut back
/// by `eps`, for a decreasing list of `eps`.
pub fn truncated_length(
    map: &MapDescriptor,
    curve: &ParamCurve,
    eps_list: &[f64],
) -> Result<Vec<(f64, LengthEstimate)>> {
    let (t0, t1) = curve.domain();
    let (start, end) = curve.ends();
    if start == EndKind::Closed && end == EndKind::Closed {
        return domain("truncated_length needs a curve with an open end to cut back");
    }
    let cuts = usize::from(start == EndKind::Open) + usize::from(end == EndKind::Open);
    let span = t1 - t0;
    for (k, &eps) in eps_list.iter().enumerate() {
        if !(eps > 0.0 && eps * (cuts as f64) < span) {
            return domain(format!(
                "eps = {eps} must lie in (0, {})",
                span / cuts as f64
            ));
        }
        if k > 0 && eps >= eps_list[k - 1] {
            return domain("eps values must be strictly decreasing");
        }
    }
    eps_list
        .iter()
        .map(|&eps| {
            let a = if start == EndKind::Open { t0 + eps } else { t0 };
            let b = if end == EndKind::Open { t1 - eps } else { t1 };
            let piece = curve.restricted(a, b)?;
            Ok((eps, arc_length(map, &piece, DEFAULT_REL_TOL)?))
        })
        .collect()
}

/// The upper unit semicircle and the length of its image under `f₀`.
pub fn curve_of_semicircle_upper(rel_tol: f64) -> Result<(ParamCurve, LengthEstimate)> {
    let curve = ParamCurve::semicircle_upper();
    let len = arc_length(&MapDescriptor::F0, &curve, rel_tol)?;
    Ok((curve, len))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moebius::MoebiusMap;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs()
    }

    #[test]
    fn polynomial_is_exact() {
        let r = integrate(|x| Ok(x * x * x * x), 0.0, 2.0, (false, false), 1e-12).unwrap();
        assert!(rel(r.value, 32.0 / 5.0) < 1e-14);
    }

    #[test]
    fn mild_endpoint_behavior() {
        // ∫₀¹ √x dx = 2/3, derivative unbounded at the open end
        let r = integrate(|x: f64| Ok(x.sqrt()), 0.0, 1.0, (true, false), 1e-10).unwrap();
        assert!(rel(r.value, 2.0 / 3.0) < 1e-10, "{r:?}");
    }

    #[test]
    fn non_convergence_reports_best_estimate() {
        // ∫₀¹ 1/x diverges at the open end
        match integrate(|x: f64| Ok(1.0 / x), 0.0, 1.0, (true, false), 1e-10) {
            Err(Error::NonConvergence {
                estimate,
                error_bound,
                ..
            }) => {
                assert!(estimate > 10.0 && error_bound > 0.0);
            }
            other => panic!("expected non-convergence, got {other:?}"),
        }
    }

    #[test]
    fn kp_lengths_match_closed_forms() {
        let k = MapDescriptor::kp(0.5).unwrap();
        let li = arc_length(&k, &ParamCurve::diameter_i(), 1e-10).unwrap();
        assert!(rel(li.value, 0.4 * PI) < 1e-8, "{li:?}");
        assert!(li.relative_error_estimate() <= 1e-10);
        let lc = arc_length(&k, &ParamCurve::semicircle_cprime(), 1e-10).unwrap();
        assert!(rel(lc.value, 1.0 / 2.8125) < 1e-8, "{lc:?}");
    }

    #[test]
    fn identity_on_unit_segment() {
        let id = MapDescriptor::Moebius(MoebiusMap::identity());
        let l = arc_length(&id, &ParamCurve::real_segment(0.0, 1.0).unwrap(), 1e-10).unwrap();
        assert!((l.value - 1.0).abs() < 1e-14);
    }

    #[test]
    fn pole_guard() {
        let k = MapDescriptor::kp(0.5).unwrap();
        let seg = ParamCurve::real_segment(0.0, 0.9).unwrap();
        assert!(matches!(
            arc_length(&k, &seg, 1e-10),
            Err(Error::PoleProximity { .. })
        ));
        let near = ParamCurve::real_segment(0.0, 0.5 - 1e-9).unwrap();
        assert!(matches!(
            arc_length(&k, &near, 1e-10),
            Err(Error::PoleProximity { .. })
        ));
    }

    #[test]
    fn rel_tol_bounds() {
        let k = MapDescriptor::kp(0.5).unwrap();
        assert!(arc_length(&k, &ParamCurve::diameter_i(), 1e-14).is_err());
        assert!(arc_length(&k, &ParamCurve::diameter_i(), 1e-2).is_err());
    }

    #[test]
    fn f0_lengths() {
        let (_, l) = curve_of_semicircle_upper(1e-10).unwrap();
        assert!((l.value - 1.0).abs() < 1e-8, "{l:?}");
        let f0 = MapDescriptor::F0;
        let left = ParamCurve::circle_arc(
            Complex64::new(0.0, 0.0),
            1.0,
            PI / 2.0,
            PI,
            (EndKind::Closed, EndKind::Open),
        )
        .unwrap();
        let l = arc_length(&f0, &left, 1e-10).unwrap();
        assert!((l.value - (1.0 - (-1.0f64).exp())).abs() < 1e-9);
        let right = ParamCurve::circle_arc(
            Complex64::new(0.0, 0.0),
            1.0,
            0.0,
            PI / 2.0,
            (EndKind::Open, EndKind::Closed),
        )
        .unwrap();
        let l = arc_length(&f0, &right, 1e-10).unwrap();
        assert!((l.value - (-1.0f64).exp()).abs() < 1e-9);
    }

    #[test]
    fn f0_truncated_diameter() {
        let curve = ParamCurve::real_segment(-1.0, 1.0)
            .unwrap()
            .with_ends(EndKind::Closed, EndKind::Open);
        let out = truncated_length(&MapDescriptor::F0, &curve, &[1e-2, 1e-4]).unwrap();
        assert!(rel(out[0].1.value, 199.0) < 1e-6);
        assert!(rel(out[1].1.value, 19999.0) < 1e-6);
        assert!(out[1].1.value > out[0].1.value);
    }

    #[test]
    fn truncated_length_validation() {
        let closed = ParamCurve::real_segment(-1.0, 1.0).unwrap();
        assert!(truncated_length(&MapDescriptor::F0, &closed, &[1e-2]).is_err());
        let open = closed.clone().with_ends(EndKind::Closed, EndKind::Open);
        assert!(truncated_length(&MapDescriptor::F0, &open, &[1e-4, 1e-2]).is_err());
        assert!(truncated_length(&MapDescriptor::F0, &open, &[3.0]).is_err());
    }

    #[test]
    fn distance_to_curve() {
        let c = ParamCurve::semicircle_cprime();
        assert!((c.distance_to(Complex64::new(0.5, 0.0)) - 0.5f64.hypot(1.0)).abs() < 1e-9);
        assert!((c.distance_to(Complex64::new(-2.0, 0.0)) - 1.0).abs() < 1e-12);
        let d = ParamCurve::diameter_i();
        assert!((d.distance_to(Complex64::new(0.3, 0.2)) - 0.3).abs() < 1e-12);
    }
}
