//! Lengths of k_p(I) and k_p(C′) by quadrature, compared with the closed forms.

use lengthdist::conformal_maps::{kp_length_cprime, kp_length_i, kp_ratio, MapDescriptor};
use lengthdist::quadrature::{arc_length, ParamCurve, DEFAULT_REL_TOL};

fn main() -> lengthdist::Result<()> {
    println!(
        "{:>6} {:>14} {:>14} {:>12} {:>10}",
        "p", "|k_p(I)|", "|k_p(C')|", "ratio", "evals"
    );
    for p in [0.1, 0.3, 0.5, 0.7, 0.9, 0.99] {
        let kp = MapDescriptor::kp(p)?;
        let li = arc_length(&kp, &ParamCurve::diameter_i(), DEFAULT_REL_TOL)?;
        let lc = arc_length(&kp, &ParamCurve::semicircle_cprime(), DEFAULT_REL_TOL)?;
        println!(
            "{p:>6} {:>14.10} {:>14.10} {:>12.8} {:>10}",
            li.value,
            lc.value,
            li.value / lc.value,
            li.evaluations + lc.evaluations
        );
        assert!((li.value - kp_length_i(p)?).abs() < 1e-9 * li.value);
        assert!((lc.value - kp_length_cprime(p)?).abs() < 1e-9 * lc.value);
        assert!((li.value / lc.value - kp_ratio(p)?).abs() < 1e-8 * kp_ratio(p)?);
    }
    Ok(())
}
