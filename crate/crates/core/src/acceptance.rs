//! The acceptance battery: ten checks covering the exact coefficient
//! sequences, the small-`x` limits, the sharp constants, the classifier, the
//! means and the asymptotic table. Shared by the `acceptance` test target and
//! the `report` subcommand.

use std::collections::BTreeMap;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::Result;
use crate::hyp::{d_pq, h_pq};
use crate::lab::{
    self, find_counterexample, find_threshold, ln_abs_difference, verify_asymptote, verify_chain,
    Asymptote, Chain, Family, DEFAULT_TOL,
};
use crate::means::{self, Mean};
use crate::region::{self, Direction};
use crate::scalar::rel_diff;
use crate::series;

/// Seed of every random sample drawn by the battery.
pub const SEED: u64 = 0x5eed_2013;

/// Outcome of one criterion.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CriterionReport {
    pub id: u32,
    pub title: &'static str,
    pub passed: bool,
    pub elapsed_s: f64,
    /// Short human-readable summary of what was measured.
    pub detail: String,
    /// Measured quantities, keyed by name.
    pub metrics: BTreeMap<String, f64>,
}

struct Builder {
    id: u32,
    title: &'static str,
    start: Instant,
    metrics: BTreeMap<String, f64>,
}

impl Builder {
    fn new(id: u32, title: &'static str) -> Self {
        Builder {
            id,
            title,
            start: Instant::now(),
            metrics: BTreeMap::new(),
        }
    }

    fn metric(&mut self, name: impl Into<String>, v: f64) {
        self.metrics.insert(name.into(), v);
    }

    fn elapsed(&self) -> f64 {
        self.start.elapsed().as_secs_f64()
    }

    fn finish(self, passed: bool, detail: String) -> CriterionReport {
        CriterionReport {
            id: self.id,
            title: self.title,
            passed,
            elapsed_s: self.elapsed(),
            detail,
            metrics: self.metrics,
        }
    }
}

/// Runs all ten criteria in order.
pub fn run_battery() -> Result<Vec<CriterionReport>> {
    Ok(vec![
        coefficient_equivalence()?,
        ratio_sequence()?,
        printed_v_closed_form()?,
        small_x_limits()?,
        threshold_recovery()?,
        past_threshold_witnesses()?,
        classifier_corroboration()?,
        mean_identities()?,
        chains()?,
        asymptotic_table()?,
    ])
}

/// Criterion 1: Taylor coefficients of `A`, `B`, `C` from exact series multiplication
/// equal `a_n, b_n, c_n / (4 (2n)!)` for `n = 3..40`, in under 5 s.
pub fn coefficient_equivalence() -> Result<CriterionReport> {
    let mut b = Builder::new(1, "exact coefficient equivalence, n = 3..40");
    let mismatches = series::cross_validate_abc(40)?;
    let t = b.elapsed();
    b.metric("mismatches", mismatches.len() as f64);
    b.metric("seconds", t);
    let passed = mismatches.is_empty() && t < 5.0;
    let detail = format!(
        "{} mismatches in 3 x 38 coefficients, {t:.3} s",
        mismatches.len()
    );
    Ok(b.finish(passed, detail))
}

/// Criterion 2: `u_3/v_3 = 23/17`; `u_n/v_n` decreasing and above 1 for `n = 3..200`;
/// the `w_n` identity for `n = 3..40`; `w_n > 0` for `n = 3..100`.
pub fn ratio_sequence() -> Result<CriterionReport> {
    let mut b = Builder::new(2, "u_n/v_n ratio, w_n identity and positivity");
    let first = series::coeffs(3)?.uv_ratio();
    let first_ok = first == BigRational::new(BigInt::from(23), BigInt::from(17));
    let mut monotone_ok = true;
    let mut prev: Option<BigRational> = None;
    for n in 3..=200 {
        let r = BigRational::new(series::u_n(n), series::v_n(n));
        if r <= BigRational::one() || prev.as_ref().is_some_and(|p| r >= *p) {
            monotone_ok = false;
        }
        prev = Some(r);
    }
    let mut identity_failures = 0;
    for n in 3..=40 {
        if !series::identity_check_w(n)?.holds {
            identity_failures += 1;
        }
    }
    let w_positive = (3..=100).all(|n| series::w_n(n).is_positive());
    let t = b.elapsed();
    b.metric("seconds", t);
    b.metric("identity_failures", identity_failures as f64);
    let passed = first_ok && monotone_ok && identity_failures == 0 && w_positive && t < 5.0;
    let detail = format!(
        "u3/v3 = {first}, ratio decreasing and > 1: {monotone_ok}, identity failures: {identity_failures}, w_n > 0: {w_positive}, {t:.3} s"
    );
    Ok(b.finish(passed, detail))
}

/// Criterion 3: The printed `v_n` expansion disagrees with the determinant at `n = 3`
/// while the corrected one agrees.
pub fn printed_v_closed_form() -> Result<CriterionReport> {
    let b = Builder::new(3, "printed v_n closed form differs, corrected form agrees");
    let det = series::v_n(3);
    let printed = series::v_closed_form_printed(3);
    let corrected = series::v_closed_form_corrected(3);
    let expected = BigInt::from(4_456_448);
    let passed = printed != det && corrected == det && det == expected;
    let detail = format!("determinant {det}, printed {printed}, corrected {corrected}");
    Ok(b.finish(passed, detail))
}

/// Criterion 4: `|D/x^4 - (p - 3q + 8/5)/72| <= 1e-6` at `x = 1e-2` for 50 random
/// `(p, q)` in `[-3, 3]^2`, and `|D/x^6 - (q - 34/35)/270| <= 1e-5` on the
/// line `p = 3q - 8/5`.
pub fn small_x_limits() -> Result<CriterionReport> {
    let mut b = Builder::new(4, "small-x limits at x = 1e-2");
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let x = 1e-2_f64;
    let (mut worst4, mut worst6) = (0f64, 0f64);
    let (mut ok4, mut ok6) = (0, 0);
    for _ in 0..50 {
        let p: f64 = rng.gen_range(-3.0..=3.0);
        let q: f64 = rng.gen_range(-3.0..=3.0);
        let d = d_pq(x, p, q)?.value;
        let e4 = (d / x.powi(4) - (p - 3.0 * q + 1.6) / 72.0).abs();
        worst4 = worst4.max(e4);
        ok4 += usize::from(e4 <= 1e-6);
        let pb = 3.0 * q - 1.6;
        let db = d_pq(x, pb, q)?.value;
        let e6 = (db / x.powi(6) - (q - 34.0 / 35.0) / 270.0).abs();
        worst6 = worst6.max(e6);
        ok6 += usize::from(e6 <= 1e-5);
    }
    b.metric("max_err_x4", worst4);
    b.metric("max_err_x6", worst6);
    b.metric("pass_x4", ok4 as f64);
    b.metric("pass_x6", ok6 as f64);
    let passed = ok4 == 50 && ok6 == 50;
    let detail = format!(
        "x^4 limit: {ok4}/50 within 1e-6 (max error {worst4:.3e}); x^6 limit: {ok6}/50 within 1e-5 (max error {worst6:.3e})"
    );
    Ok(b.finish(passed, detail))
}

fn exact_f64(f: Family) -> f64 {
    let r = f.paper_value().expect("sharp family");
    *r.numer() as f64 / *r.denom() as f64
}

/// Criterion 5: Each sharp constant recovered by bisection to `1e-6`, each in under 1 s.
pub fn threshold_recovery() -> Result<CriterionReport> {
    let mut b = Builder::new(5, "sharp-threshold recovery");
    let mut passed = true;
    let mut parts = Vec::new();
    for fam in Family::SHARP {
        let start = Instant::now();
        let (lo, hi) = fam.default_interval();
        let r = find_threshold(fam, lo, hi, DEFAULT_TOL)?;
        let t = start.elapsed().as_secs_f64();
        let err = r.abs_error.unwrap_or(f64::INFINITY);
        let ok = err <= 1e-6 && t < 1.0;
        passed &= ok;
        b.metric(format!("{}.abs_error", fam.name()), err);
        b.metric(format!("{}.seconds", fam.name()), t);
        parts.push(format!(
            "{} {:.9} (exact {}, {:.3} s){}",
            fam.name(),
            r.threshold,
            r.paper_value.unwrap_or_default(),
            t,
            if ok { "" } else { " FAIL" }
        ));
    }
    Ok(b.finish(passed, parts.join("; ")))
}

/// Criterion 6: Moving each sharp parameter by 0.01 to the failing side gives a witness
/// with `|D| > 1e-10`.
pub fn past_threshold_witnesses() -> Result<CriterionReport> {
    let mut b = Builder::new(6, "counterexamples just past each threshold");
    let mut passed = true;
    let mut parts = Vec::new();
    for fam in Family::SHARP {
        let s = fam.past_threshold(exact_f64(fam), 0.01);
        let (target, relation) = fam.instance(s);
        let witness = find_counterexample(target, relation, 1e-4, 60.0)?;
        let (ok, text) = match witness {
            Some(x) => {
                let ln_abs = ln_abs_difference(target, x)?;
                b.metric(format!("{}.witness_x", fam.name()), x);
                b.metric(
                    format!("{}.log10_abs_d", fam.name()),
                    ln_abs / std::f64::consts::LN_10,
                );
                let ok = ln_abs > 1e-10f64.ln();
                (
                    ok,
                    format!(
                        "{} at x = {x:.6e}, |D| = 10^{:.2}",
                        fam.name(),
                        ln_abs / std::f64::consts::LN_10
                    ),
                )
            }
            None => (false, format!("{} no witness", fam.name())),
        };
        passed &= ok;
        parts.push(text);
    }
    Ok(b.finish(passed, parts.join("; ")))
}

/// Criterion 7: For 200 random `(p, q)` with a verdict, consecutive differences of
/// `H_{p,q}` over 50 log-spaced points of `[1e-3, 30]` have the predicted
/// sign; the two band classifications agree on a 101 x 101 grid of `[-4, 4]^2`.
///
/// A difference within `16 eps |H|` of zero is below the rounding of `H`
/// itself and is not counted against the verdict.
pub fn classifier_corroboration() -> Result<CriterionReport> {
    let mut b = Builder::new(7, "classifier against finite differences of H");
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 7);
    let xs = lab::Grid::log(1e-3, 30.0, 50)?.points();
    let (mut sampled, mut wrong, mut below_rounding, mut drawn) = (0, 0, 0, 0);
    while sampled < 200 {
        drawn += 1;
        let p: f64 = rng.gen_range(-4.0..=4.0);
        let q: f64 = rng.gen_range(-4.0..=4.0);
        let verdict = region::classify(&region::exact(p)?, &region::exact(q)?);
        let sign = match verdict.direction {
            Direction::Increasing => 1.0,
            Direction::Decreasing => -1.0,
            Direction::NotCovered => continue,
        };
        sampled += 1;
        let hs = xs
            .iter()
            .map(|&x| h_pq(x, p, q).map(|v| v.value))
            .collect::<Result<Vec<_>>>()?;
        for w in hs.windows(2) {
            let diff = w[1] - w[0];
            let floor = 16.0 * f64::EPSILON * w[0].abs().max(w[1].abs());
            if sign * diff <= 0.0 {
                if diff.abs() <= floor {
                    below_rounding += 1;
                } else {
                    wrong += 1;
                }
            }
        }
    }
    let mut disagreements = 0;
    for i in 0..=100 {
        for j in 0..=100 {
            let p = region::ratio(-400 + 8 * i, 100);
            let q = region::ratio(-400 + 8 * j, 100);
            if region::classify(&p, &q).direction != region::classify_pmain3(&p, &q).direction {
                disagreements += 1;
            }
        }
    }
    b.metric("pairs", sampled as f64);
    b.metric("pairs_drawn", drawn as f64);
    b.metric("wrong_sign", wrong as f64);
    b.metric("below_rounding", below_rounding as f64);
    b.metric("grid_disagreements", disagreements as f64);
    let passed = wrong == 0 && disagreements == 0;
    let detail = format!(
        "{sampled} pairs x 49 differences: {wrong} wrong sign, {below_rounding} within rounding; {disagreements} disagreements on the 101 x 101 grid"
    );
    Ok(b.finish(passed, detail))
}

fn log_uniform(rng: &mut ChaCha8Rng) -> f64 {
    10f64.powf(rng.gen_range(-3.0..=3.0))
}

/// Criterion 8: Composition identities to `1e-12`, `Sh_{1,0} = SB` to `1e-13`,
/// betweenness and homogeneity to `1e-13`, on 1000 log-uniform pairs.
pub fn mean_identities() -> Result<CriterionReport> {
    let mut b = Builder::new(8, "mean identities, betweenness and homogeneity");
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 8);
    let (mut id_err, mut sh_err, mut between_err, mut homog_err) = (0f64, 0f64, 0f64, 0f64);
    let sh_params = [(1.0, 0.0), (1.0, 1.0), (0.5, 0.25)];
    for _ in 0..1000 {
        let (x, y) = (log_uniform(&mut rng), log_uniform(&mut rng));
        let c = means::classic_means(x, y)?;
        let (ns, v) = means::ns_v_means(x, y)?;
        id_err = id_err
            .max(rel_diff(means::sb(c.a, c.g)?.value, c.l))
            .max(rel_diff(means::sb(c.q, c.a)?.value, ns))
            .max(rel_diff(means::sb(c.q, c.g)?.value, v));
        let (hi, lo) = (x.max(y), x.min(y));
        sh_err = sh_err.max(rel_diff(
            means::sh_mean(1.0, 0.0, hi, lo)?.value,
            means::sb(hi, lo)?.value,
        ));
        for which in Mean::ALL {
            let params: &[(f64, f64)] = if which == Mean::Sh {
                &sh_params
            } else {
                &[(0.0, 0.0)]
            };
            for &pq in params {
                let m = |s: f64| means::mean(which, s * lo, s * hi, Some(pq)).map(|r| r.value);
                let base = m(1.0)?;
                let out = ((lo - base) / lo).max((base - hi) / hi).max(0.0);
                between_err = between_err.max(out);
                for lambda in [1e-3, 1.0, 1e3] {
                    homog_err = homog_err.max(rel_diff(m(lambda)?, lambda * base));
                }
            }
        }
    }
    b.metric("identity_rel_err", id_err);
    b.metric("sh10_rel_err", sh_err);
    b.metric("betweenness_excess", between_err);
    b.metric("homogeneity_rel_err", homog_err);
    let passed = id_err <= 1e-12 && sh_err <= 1e-13 && between_err <= 1e-13 && homog_err <= 1e-13;
    let detail = format!(
        "identities {id_err:.2e}, Sh_(1,0) = SB {sh_err:.2e}, betweenness {between_err:.2e}, homogeneity {homog_err:.2e}"
    );
    Ok(b.finish(passed, detail))
}

/// Criterion 9: The three chains hold strictly at `x` in `{0.1, 0.5, 1, 2, 5, 10, 20}`.
pub fn chains() -> Result<CriterionReport> {
    let mut b = Builder::new(9, "inequality chains");
    let xs = [0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 20.0];
    let mut passed = true;
    let mut parts = Vec::new();
    for c in Chain::ALL {
        let v = verify_chain(c, &xs)?;
        passed &= v.holds;
        b.metric(format!("{}.tightest_gap", c.name()), v.tightest_gap);
        parts.push(format!(
            "{} holds: {}, tightest log gap {:.3e} at x = {} ({} < {})",
            c.name(),
            v.holds,
            v.tightest_gap,
            v.tightest_x,
            v.tightest_pair.0,
            v.tightest_pair.1
        ));
    }
    Ok(b.finish(passed, parts.join("; ")))
}

/// Criterion 10: `e^{-qx} D(50)` within `1e-4` of `-2^{-q}/(3q)` for `(0.5, 1)`,
/// `(0, 2)`, `(1, 1)`; divergence signs for `(1, -1)` and `(-1, 1)`; `D(50)`
/// within `1e-6` of `1/(3q) - 1/p` for `(-1, -2)`.
pub fn asymptotic_table() -> Result<CriterionReport> {
    let mut b = Builder::new(10, "asymptotic table at x = 50");
    let mut passed = true;
    let mut parts = Vec::new();
    for (p, q) in [(0.5, 1.0), (0.0, 2.0), (1.0, 1.0)] {
        let r = verify_asymptote(p, q)?;
        let limit = -(2f64.powf(-q)) / (3.0 * q);
        let err = (r.observed - limit).abs();
        let ok = err <= 1e-4;
        passed &= ok;
        b.metric(format!("({p},{q}).abs_error"), err);
        parts.push(format!(
            "({p}, {q}) e^(-qx)D = {:.6} vs {limit:.6}{}",
            r.observed,
            if ok { "" } else { " FAIL" }
        ));
    }
    for (p, q, want) in [
        (1.0, -1.0, Asymptote::PlusInfinity),
        (-1.0, 1.0, Asymptote::MinusInfinity),
    ] {
        let r = verify_asymptote(p, q)?;
        let ok = r.predicted == want
            && match want {
                Asymptote::PlusInfinity => r.observed > 1e6,
                _ => r.observed < -1e6,
            };
        passed &= ok;
        parts.push(format!(
            "({p}, {q}) D = {:.3e}{}",
            r.observed,
            if ok { "" } else { " FAIL" }
        ));
    }
    let r = verify_asymptote(-1.0, -2.0)?;
    let err = (r.observed - 5.0 / 6.0).abs();
    let ok = err <= 1e-6;
    passed &= ok;
    b.metric("(-1,-2).abs_error", err);
    parts.push(format!(
        "(-1, -2) D = {:.12}{}",
        r.observed,
        if ok { "" } else { " FAIL" }
    ));
    Ok(b.finish(passed, parts.join("; ")))
}
