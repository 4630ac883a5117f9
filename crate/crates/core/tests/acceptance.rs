//! Acceptance suite. One PASS/FAIL line per criterion; exits nonzero if any fail.
//!
//! Run with `cargo test -p lengthdist --test acceptance`.

use std::f64::consts::{FRAC_1_SQRT_2, PI, SQRT_2};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use lengthdist::bounds::{
    bound_row, harmonic_measure_segment, omega_lower_bound, psi, psi_argmax, psi_domain,
    HalfPlaneSeg,
};
use lengthdist::conformal_maps::{
    kp_slit, lemma1_rhs, p0_from_alpha1, p1_prime, slit_distance, MapDescriptor,
};
use lengthdist::experiments::{
    corollary_sector, f0_diameter, reproduce_table1, theorem2_reduction, PAPER_TABLE, SECTOR_TOL,
};
use lengthdist::hyperbolic::{
    alpha_from_p, circle_geodesic_intersection, rotation_sector_max_angle, HalfPlaneRegion, Side,
};
use lengthdist::quadrature::{arc_length, truncated_length, ParamCurve, DEFAULT_REL_TOL};
use lengthdist::{Complex64, ExtendedComplex};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 0x5eed_1e57;
const TABLE_RUNTIME: Duration = Duration::from_secs(10);
const M_REL_TOL: f64 = 5e-3;
const Q_ABS_TOL: f64 = 0.05;
const LENGTH_REL_TOL: f64 = 1e-8;
const F0_UPPER_ABS_TOL: f64 = 1e-8;
const F0_TRUNC_REL_TOL: f64 = 1e-6;
const POISSON_ABS_TOL: f64 = 1e-6;
const PSI_VALUE_TOL: f64 = 1e-10;
const REDUCTION_TOL: f64 = 1e-10;
const P1_PRIME_TOL: f64 = 1e-12;
const INTERSECTION_TOL: f64 = 1e-12;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

fn kp_i(p: f64) -> f64 {
    p * PI / (1.0 + p * p)
}

fn kp_cprime(p: f64) -> f64 {
    4.0 * p * p / ((1.0 + p * p) * (1.0 + p) * (1.0 + p))
}

fn lower(p: f64) -> f64 {
    (1.0 + p) * (1.0 + p) * PI / (4.0 * p)
}

fn criterion1() -> Outcome {
    let started = Instant::now();
    let table = reproduce_table1().map_err(|e| e.to_string())?;
    let elapsed = started.elapsed();
    let mut worst_m = 0.0f64;
    let mut worst_q = 0.0f64;
    for (row, &(p, q, m, _)) in table.rows.iter().zip(&PAPER_TABLE) {
        ensure(row.row.p == p, || {
            format!("row order: {} vs {p}", row.row.p)
        })?;
        let rm = rel(row.row.m_star, m);
        let dq = (row.row.q_star - q).abs();
        ensure(rm <= M_REL_TOL, || {
            format!("p={p}: m*={} vs {m}", row.row.m_star)
        })?;
        ensure(dq <= Q_ABS_TOL, || {
            format!("p={p}: q*={} vs {q}", row.row.q_star)
        })?;
        worst_m = worst_m.max(rm);
        worst_q = worst_q.max(dq);
    }
    ensure(elapsed < TABLE_RUNTIME, || format!("runtime {elapsed:?}"))?;
    Ok(format!("max rel err m* {worst_m:.2e} (tol {M_REL_TOL}), max |dq*| {worst_q:.3} (tol {Q_ABS_TOL}), {elapsed:.2?}"))
}

fn criterion2() -> Outcome {
    for &(p, _, _, paper) in &PAPER_TABLE {
        let value = lower(p);
        let truncated = (value * 100.0).trunc() / 100.0;
        ensure((truncated - paper).abs() < 1e-9, || {
            format!("p={p}: {value} truncates to {truncated}, expected {paper}")
        })?;
        let row = bound_row(p).map_err(|e| e.to_string())?;
        ensure(rel(row.lower_bound, value) < 1e-14, || {
            format!("p={p}: library {} vs {value}", row.lower_bound)
        })?;
    }
    Ok("9/9 rows truncate to the published endpoints".into())
}

fn criterion3(rng: &mut ChaCha8Rng) -> Outcome {
    let mut worst = 0.0f64;
    for _ in 0..20 {
        let p = rng.gen_range(0.05..0.999);
        let map = MapDescriptor::kp(p).map_err(|e| e.to_string())?;
        let li = arc_length(&map, &ParamCurve::diameter_i(), DEFAULT_REL_TOL)
            .map_err(|e| e.to_string())?;
        let lc = arc_length(&map, &ParamCurve::semicircle_cprime(), DEFAULT_REL_TOL)
            .map_err(|e| e.to_string())?;
        for (what, got, want) in [
            ("I", li.value, kp_i(p)),
            ("C'", lc.value, kp_cprime(p)),
            ("ratio", li.value / lc.value, lower(p)),
        ] {
            let e = rel(got, want);
            ensure(e <= LENGTH_REL_TOL, || {
                format!("p={p} {what}: {got} vs {want}")
            })?;
            worst = worst.max(e);
        }
    }
    Ok(format!(
        "20 p values, max rel err {worst:.2e} (tol {LENGTH_REL_TOL})"
    ))
}

fn criterion4() -> Outcome {
    let upper = arc_length(
        &MapDescriptor::F0,
        &ParamCurve::semicircle_upper(),
        DEFAULT_REL_TOL,
    )
    .map_err(|e| e.to_string())?;
    ensure((upper.value - 1.0).abs() <= F0_UPPER_ABS_TOL, || {
        format!("upper semicircle length {}", upper.value)
    })?;
    let eps = [1e-2, 1e-4, 1e-6];
    let lengths =
        truncated_length(&MapDescriptor::F0, &f0_diameter(), &eps).map_err(|e| e.to_string())?;
    let mut worst = 0.0f64;
    let mut prev = 0.0;
    for (e, l) in &lengths {
        let want = 2.0 / e - 1.0;
        let r = rel(l.value, want);
        ensure(r <= F0_TRUNC_REL_TOL, || {
            format!("eps={e}: {} vs {want}", l.value)
        })?;
        ensure(l.value > prev, || format!("not monotone at eps={e}"))?;
        prev = l.value;
        worst = worst.max(r);
    }
    Ok(format!(
        "|upper - 1| = {:.1e}, truncated max rel err {worst:.2e}, L(1e-6) = {prev:.6e}",
        (upper.value - 1.0).abs()
    ))
}

fn criterion5(rng: &mut ChaCha8Rng) -> Outcome {
    let lo = SQRT_2 - 1.0 + 0.01;
    let mut worst = 0.0f64;
    let mut min_gap = f64::INFINITY;
    for _ in 0..50 {
        let p = rng.gen_range(lo..0.999);
        let map = MapDescriptor::kp(p).map_err(|e| e.to_string())?;
        let li = arc_length(&map, &ParamCurve::diameter_i(), DEFAULT_REL_TOL)
            .map_err(|e| e.to_string())?;
        let lc = arc_length(&map, &ParamCurve::semicircle_cprime(), DEFAULT_REL_TOL)
            .map_err(|e| e.to_string())?;
        let ratio = li.value / lc.value;
        let row = bound_row(p).map_err(|e| e.to_string())?;
        ensure(ratio <= row.m_star, || {
            format!("p={p}: ratio {ratio} > m* {}", row.m_star)
        })?;
        let e = rel(ratio, lower(p));
        ensure(e <= LENGTH_REL_TOL, || {
            format!("p={p}: ratio {ratio} vs {}", lower(p))
        })?;
        worst = worst.max(e);
        min_gap = min_gap.min(row.m_star / ratio);
    }
    Ok(format!("50 p values, ratio <= min M_p (smallest m*/ratio {min_gap:.2}), max rel err vs lower bound {worst:.2e}"))
}

/// Adaptive Simpson on the Poisson kernel of the upper half-plane.
fn poisson_measure(x: f64, y: f64, a: f64, b: f64) -> f64 {
    fn kernel(x: f64, y: f64, t: f64) -> f64 {
        y / (PI * ((t - x) * (t - x) + y * y))
    }
    fn simpson(a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> f64 {
        (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    }
    #[allow(clippy::too_many_arguments)]
    fn recurse(
        f: &dyn Fn(f64) -> f64,
        a: f64,
        b: f64,
        fa: f64,
        fm: f64,
        fb: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> f64 {
        let m = 0.5 * (a + b);
        let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
        let (flm, frm) = (f(lm), f(rm));
        let left = simpson(a, m, fa, flm, fm);
        let right = simpson(m, b, fm, frm, fb);
        if depth == 0 || (left + right - whole).abs() <= 15.0 * tol {
            return left + right + (left + right - whole) / 15.0;
        }
        recurse(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1)
            + recurse(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1)
    }
    let f = move |t: f64| kernel(x, y, t);
    let (fa, fm, fb) = (f(a), f(0.5 * (a + b)), f(b));
    let whole = simpson(a, b, fa, fm, fb);
    recurse(&f, a, b, fa, fm, fb, whole, 1e-11, 50)
}

fn criterion6(rng: &mut ChaCha8Rng) -> Outcome {
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let a = rng.gen_range(0.01..5.0);
        let b = a + rng.gen_range(0.01..10.0);
        let z = Complex64::new(rng.gen_range(-5.0..10.0), rng.gen_range(0.05..5.0));
        let seg = HalfPlaneSeg::new(a, b).map_err(|e| e.to_string())?;
        let closed = harmonic_measure_segment(z, &seg).map_err(|e| e.to_string())?;
        let numeric = poisson_measure(z.re, z.im, a, b);
        let d = (closed - numeric).abs();
        ensure(d <= POISSON_ABS_TOL, || {
            format!("z={z}, [{a}, {b}]: {closed} vs {numeric}")
        })?;
        worst = worst.max(d);
    }
    let mut min_slack = f64::INFINITY;
    for _ in 0..20 {
        let a = rng.gen_range(0.01..5.0);
        let q = rng.gen_range(1.001..100.0);
        let b = a * q;
        let bound = omega_lower_bound(q).map_err(|e| e.to_string())?;
        for k in 0..=50 {
            let y = a + (b - a) * k as f64 / 50.0;
            let w = poisson_measure(0.0, y, a, b);
            ensure(w >= bound - 1e-12, || {
                format!("iy = {y}i on [{a}, {b}]: {w} < {bound}")
            })?;
            min_slack = min_slack.min(w - bound);
        }
    }
    Ok(format!("100 pairs, max |closed - Poisson| {worst:.2e}; 1020 points on beta', min slack {min_slack:.1e}"))
}

fn criterion7(rng: &mut ChaCha8Rng) -> Outcome {
    const GRID: usize = 200_000;
    let mut worst_value = 0.0f64;
    for _ in 0..20 {
        let alpha = rng.gen_range(FRAC_1_SQRT_2 + 1e-3..0.999);
        let (lo, hi) = psi_domain(alpha).map_err(|e| e.to_string())?;
        let h = (hi - lo) / GRID as f64;
        let (mut best_x, mut best) = (lo, f64::NEG_INFINITY);
        for k in 0..=GRID {
            let x = lo + h * k as f64;
            let v = psi(x, alpha).map_err(|e| e.to_string())?;
            if v > best {
                best = v;
                best_x = x;
            }
        }
        let (xm, vm) = psi_argmax(alpha).map_err(|e| e.to_string())?;
        let closed = (1.0 - alpha * alpha).sqrt() / alpha;
        ensure((best_x + alpha).abs() <= h, || {
            format!("alpha={alpha}: grid argmax {best_x} vs {}", -alpha)
        })?;
        ensure((xm + alpha).abs() <= 1e-15, || {
            format!("alpha={alpha}: argmax {xm}")
        })?;
        let at_max = psi(-alpha, alpha).map_err(|e| e.to_string())?;
        ensure((at_max - closed).abs() <= PSI_VALUE_TOL, || {
            format!("alpha={alpha}: psi(-alpha) {at_max} vs {closed}")
        })?;
        ensure((vm - closed).abs() <= PSI_VALUE_TOL, || {
            format!("alpha={alpha}: max {vm} vs {closed}")
        })?;
        ensure(best <= closed + PSI_VALUE_TOL, || {
            format!("alpha={alpha}: grid exceeds max")
        })?;
        worst_value = worst_value.max((at_max - closed).abs());
    }
    Ok(format!("20 alpha values, grid argmax within one step of -alpha, max |psi(-alpha) - closed| {worst_value:.1e}"))
}

fn criterion8(rng: &mut ChaCha8Rng) -> Outcome {
    let mut min_margin = f64::INFINITY;
    for p in [0.5, 0.7, 0.9] {
        let alpha = alpha_from_p(p).map_err(|e| e.to_string())?;
        let region = HalfPlaneRegion::omega(alpha).map_err(|e| e.to_string())?;
        let map = MapDescriptor::kp(p).map_err(|e| e.to_string())?;
        let slit = kp_slit(p).map_err(|e| e.to_string())?;
        let mut n = 0;
        while n < 500 {
            let z =
                Complex64::from_polar(rng.gen_range(0.0f64..0.999).sqrt(), rng.gen_range(-PI..PI));
            if region.side_of(z).map_err(|e| e.to_string())? != Side::Inside {
                continue;
            }
            n += 1;
            let lhs = map
                .deriv(ExtendedComplex::Finite(z))
                .map_err(|e| e.to_string())?
                .norm();
            let w = map
                .eval_finite(z)
                .finite()
                .ok_or_else(|| format!("k_p({z}) = ∞ in Ω"))?;
            let rhs = lemma1_rhs(alpha, z, slit_distance(w, &slit)).map_err(|e| e.to_string())?;
            ensure(lhs <= rhs * (1.0 + 1e-12), || {
                format!("p={p}, z={z}: {lhs} > {rhs}")
            })?;
            min_margin = min_margin.min(rhs / lhs);
        }
    }
    Ok(format!("1500 points, smallest rhs/lhs {min_margin:.4}"))
}

/// `g(g₁(z))` written out; `g` is an involution so it is its own inverse.
fn reduction_oracle(alpha1: Complex64, z: Complex64) -> Complex64 {
    let i = Complex64::i();
    let w = (z - alpha1) / (alpha1 * z - 1.0);
    (-1.0 - i * w) / (w + i)
}

fn criterion9() -> Outcome {
    let mut cases = 0;
    let mut worst = 0.0f64;
    for k in 1..=9 {
        let theta = PI * k as f64 / 10.0;
        let alpha1 = Complex64::from_polar(1.0, theta);
        let p0 = p0_from_alpha1(alpha1).map_err(|e| e.to_string())?;
        let t0 = reduction_oracle(alpha1, Complex64::new(p0, 0.0));
        ensure((t0 - SQRT_2 + 1.0).norm() <= REDUCTION_TOL, || {
            format!("theta={theta}: T(p0) = {t0}")
        })?;
        for j in 1..=9 {
            let p1 = p0 + (1.0 - p0) * j as f64 / 10.0;
            let report = theorem2_reduction(alpha1, p1).map_err(|e| e.to_string())?;
            ensure(report.passed, || {
                format!(
                    "theta={theta}, p1={p1}: {:?}",
                    report.failures().collect::<Vec<_>>()
                )
            })?;
            let closed = p1_prime(p1, alpha1).map_err(|e| e.to_string())?;
            let t = reduction_oracle(alpha1, Complex64::new(p1, 0.0));
            let d = (t - closed).norm();
            ensure(d <= P1_PRIME_TOL, || {
                format!("theta={theta}, p1={p1}: T(p1) = {t} vs {closed}")
            })?;
            worst = worst.max(d);
            cases += 1;
        }
    }
    Ok(format!("{cases} (p1, alpha1) cases, gamma_1/gamma_2 images within {REDUCTION_TOL:e}, max |T(p1) - p1'| {worst:.1e}"))
}

fn criterion10() -> Outcome {
    let region = HalfPlaneRegion::omega0();
    for p in [0.6, 0.75, 0.9] {
        let [upper, lower_pt] = circle_geodesic_intersection(p).map_err(|e| e.to_string())?;
        for w in [upper, lower_pt] {
            let on_circle = (w.norm_sqr() - p * p).abs();
            // γ₀: |z − √2|² = 1
            let on_geodesic = ((w - SQRT_2).norm_sqr() - 1.0).abs();
            ensure(
                on_circle <= INTERSECTION_TOL && on_geodesic <= INTERSECTION_TOL,
                || format!("p={p}, w={w}: residuals {on_circle:e}, {on_geodesic:e}"),
            )?;
        }
        let limit = rotation_sector_max_angle(p).map_err(|e| e.to_string())?;
        for (theta, want) in [
            (0.9 * limit, Side::Inside),
            (-0.9 * limit, Side::Inside),
            (1.1 * limit, Side::Outside),
            (-1.1 * limit, Side::Outside),
        ] {
            let z = Complex64::from_polar(p, theta);
            let side = region
                .side_of_with_tol(z, SECTOR_TOL)
                .map_err(|e| e.to_string())?;
            ensure(side == want, || {
                format!("p={p}, theta={theta}: {side:?}, expected {want:?}")
            })?;
            let report = corollary_sector(p, theta).map_err(|e| e.to_string())?;
            ensure(report.passed, || {
                format!("p={p}, theta={theta}: report failed")
            })?;
        }
    }
    Ok("3 poles: intersections on both circles within 1e-12, rotations at 0.9/1.1 of the limit classified inside/outside".into())
}

fn main() -> ExitCode {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let results: Vec<(&str, Outcome)> = vec![
        ("1 table reproduction", criterion1()),
        ("2 lower-bound column", criterion2()),
        ("3 quadrature vs closed form", criterion3(&mut rng)),
        ("4 f0 counterexample", criterion4()),
        ("5 ratio below min M_p", criterion5(&mut rng)),
        ("6 harmonic measure oracle", criterion6(&mut rng)),
        ("7 psi maximum", criterion7(&mut rng)),
        ("8 Koebe-type derivative bound", criterion8(&mut rng)),
        ("9 reduction map identities", criterion9()),
        ("10 rotation sector geometry", criterion10()),
    ];
    let mut failed = 0;
    for (name, outcome) in &results {
        match outcome {
            Ok(detail) => println!("PASS  {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL  {name}: {detail}");
            }
        }
    }
    println!(
        "{}/{} criteria passed",
        results.len() - failed,
        results.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
