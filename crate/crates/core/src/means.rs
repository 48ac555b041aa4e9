//! Bivariate means: the classical `G`, `A`, `Q`, `L`, the Schwab-Borchardt
//! mean `SB`, the Neuman-Sándor mean `NS`, the mean `V`, the two-parameter
//! hyperbolic sine mean `Sh_{p,q}` and the bounds of `SB` obtained from
//! `M(t; p, q)` by the substitution `t = b / a`.
//!
//! Arguments whose relative difference `|a - b| / (a + b)` is below
//! [`NEAR_EQUAL`] use truncated series in the difference.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hyp::{in_omega, ln_sinhc, m_bound};
use crate::scalar::Scalar;

/// Relative difference below which the near-equal series are used.
pub const NEAR_EQUAL: f64 = 1e-8;

/// `|p - q|` below which `Sh(p, q, t)` uses the midpoint derivative form.
pub const SH_CLOSE: f64 = 1e-6;

/// A mean value with the branch that produced it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MeanValue<T> {
    pub value: T,
    pub mean: Mean,
    pub branch: &'static str,
}

/// Names of the means exposed by [`mean`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mean {
    G,
    A,
    Q,
    L,
    Sb,
    Ns,
    V,
    Sh,
}

impl Mean {
    pub const ALL: [Mean; 8] = [
        Mean::G,
        Mean::A,
        Mean::Q,
        Mean::L,
        Mean::Sb,
        Mean::Ns,
        Mean::V,
        Mean::Sh,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Mean::G => "g",
            Mean::A => "a",
            Mean::Q => "q",
            Mean::L => "l",
            Mean::Sb => "sb",
            Mean::Ns => "ns",
            Mean::V => "v",
            Mean::Sh => "sh",
        }
    }
}

impl fmt::Display for Mean {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Mean {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Mean::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::UnknownName {
                kind: "mean",
                name: s.to_string(),
                valid: Mean::ALL.iter().map(|m| m.name()).collect(),
            })
    }
}

fn mv<T>(value: T, mean: Mean, branch: &'static str) -> MeanValue<T> {
    MeanValue {
        value,
        mean,
        branch,
    }
}

fn check_positive<T: Scalar>(name: &str, v: T) -> Result<()> {
    if v.is_nan() || v.is_infinite() {
        return Err(Error::input(format!("{name} must be finite, got {v}")));
    }
    if v <= T::zero() {
        return Err(Error::domain(format!("{name} must be positive, got {v}")));
    }
    Ok(())
}

fn check_pair<T: Scalar>(a: T, b: T) -> Result<()> {
    check_positive("a", a)?;
    check_positive("b", b)
}

/// `(a - b) / (a + b)`.
fn rel_gap<T: Scalar>(a: T, b: T) -> T {
    (a - b) / (a + b)
}

fn near_equal<T: Scalar>(z: T) -> bool {
    z.abs() < T::lit(NEAR_EQUAL)
}

/// Geometric mean `sqrt(ab)`.
pub fn g<T: Scalar>(a: T, b: T) -> Result<MeanValue<T>> {
    check_pair(a, b)?;
    Ok(mv(a.sqrt() * b.sqrt(), Mean::G, "direct"))
}

/// Arithmetic mean `(a + b) / 2`.
pub fn a<T: Scalar>(a: T, b: T) -> Result<MeanValue<T>> {
    check_pair(a, b)?;
    Ok(mv(a / T::lit(2.0) + b / T::lit(2.0), Mean::A, "direct"))
}

/// Quadratic mean `sqrt((a^2 + b^2) / 2)`.
pub fn q<T: Scalar>(a: T, b: T) -> Result<MeanValue<T>> {
    check_pair(a, b)?;
    Ok(mv(a.hypot(b) / T::SQRT_2(), Mean::Q, "direct"))
}

/// Logarithmic mean `(a - b) / (ln a - ln b)`, `L(a, a) = a`.
pub fn l<T: Scalar>(a: T, b: T) -> Result<MeanValue<T>> {
    check_pair(a, b)?;
    if a == b {
        return Ok(mv(a, Mean::L, "a=b"));
    }
    let z = rel_gap(a, b);
    if near_equal(z) {
        // ln a - ln b = 2 atanh z, so L = A z / atanh z = A (1 - z^2/3 - ...).
        let am = a / T::lit(2.0) + b / T::lit(2.0);
        return Ok(mv(
            am * (T::one() - z * z / T::lit(3.0)),
            Mean::L,
            "near-equal",
        ));
    }
    let d = (a - b).abs();
    Ok(mv(d / (d / a.min(b)).ln_1p(), Mean::L, "direct"))
}

/// `sinh t / t` as a function of `e = cosh t - 1`, for small `|e|`; with
/// `e < 0` it is `sin s / s` for `cos s = 1 + e`.
fn sinhc_of_cosh_gap<T: Scalar>(e: T) -> T {
    T::one() + e / T::lit(3.0) - e * e / T::lit(45.0) + e * e * e / T::lit(189.0)
}

/// Schwab-Borchardt mean: `sqrt(b^2 - a^2) / arccos(a / b)` for `a < b`, `a`
/// for `a = b`, `sqrt(a^2 - b^2) / arccosh(a / b)` for `a > b`. The first
/// argument may be zero.
pub fn sb<T: Scalar>(a: T, b: T) -> Result<MeanValue<T>> {
    if a.is_nan() || a.is_infinite() {
        return Err(Error::input(format!("a must be finite, got {a}")));
    }
    if a < T::zero() {
        return Err(Error::domain(format!("SB needs a >= 0, got {a}")));
    }
    check_positive("b", b)?;
    if a == b {
        return Ok(mv(a, Mean::Sb, "a=b"));
    }
    if near_equal(rel_gap(a, b)) {
        let e = (a - b) / b;
        return Ok(mv(b * sinhc_of_cosh_gap(e), Mean::Sb, "near-equal"));
    }
    let root = ((a - b).abs() * (a + b)).sqrt();
    if a < b {
        // arccos(a/b) = 2 asin(sqrt((b - a) / (2b)))
        let theta = T::lit(2.0) * ((b - a) / (T::lit(2.0) * b)).sqrt().asin();
        Ok(mv(root / theta, Mean::Sb, "a<b"))
    } else {
        // arccosh(1 + e) = ln(1 + e + sqrt(e (2 + e)))
        let e = (a - b) / b;
        let t = (e + (e * (T::lit(2.0) + e)).sqrt()).ln_1p();
        Ok(mv(root / t, Mean::Sb, "a>b"))
    }
}

/// `z / asinh z`, with its series for small `z`.
fn z_over_asinh<T: Scalar>(z: T) -> T {
    if z == T::zero() {
        T::one()
    } else if near_equal(z) {
        T::one() + z * z / T::lit(6.0)
    } else {
        z / z.asinh()
    }
}

/// Neuman-Sándor mean `(a - b) / (2 asinh((a - b) / (a + b)))`.
pub fn ns<T: Scalar>(a: T, b: T) -> Result<MeanValue<T>> {
    check_pair(a, b)?;
    if a == b {
        return Ok(mv(a, Mean::Ns, "a=b"));
    }
    let z = rel_gap(a, b);
    let am = a / T::lit(2.0) + b / T::lit(2.0);
    let branch = if near_equal(z) {
        "near-equal"
    } else {
        "direct"
    };
    Ok(mv(am * z_over_asinh(z), Mean::Ns, branch))
}

/// `V(a, b) = (a - b) / (sqrt 2 asinh((a - b) / sqrt(2ab)))`.
pub fn v<T: Scalar>(a: T, b: T) -> Result<MeanValue<T>> {
    check_pair(a, b)?;
    if a == b {
        return Ok(mv(a, Mean::V, "a=b"));
    }
    let gm = a.sqrt() * b.sqrt();
    let w = (a - b) / (T::SQRT_2() * gm);
    let branch = if near_equal(rel_gap(a, b)) {
        "near-equal"
    } else {
        "direct"
    };
    Ok(mv(gm * z_over_asinh(w), Mean::V, branch))
}

/// `ln(sinh u / u)` for any real `u`.
fn phi<T: Scalar>(u: T) -> T {
    ln_sinhc(u.abs())
}

/// `coth u - 1/u`, the derivative of [`phi`].
fn dphi<T: Scalar>(u: T) -> T {
    if u.abs() < T::lit(1e-2) {
        let u2 = u * u;
        u * (T::one() / T::lit(3.0) - u2 / T::lit(45.0) + u2 * u2 * T::ratio(2, 945))
    } else {
        T::one() / u.tanh() - T::one() / u
    }
}

/// Third derivative of [`phi`], used by the second-order midpoint correction.
fn d3phi<T: Scalar>(u: T) -> T {
    if u.abs() < T::lit(1e-2) {
        let u2 = u * u;
        u * (T::lit(-2.0) / T::lit(15.0) + u2 * T::ratio(8, 189))
    } else {
        // 2 csch^2 u coth u - 2 / u^3
        let s = u.sinh();
        T::lit(2.0) / (s * s * u.tanh()) - T::lit(2.0) / (u * u * u)
    }
}

/// `ln Sh(p, q, t)` and the branch tag.
fn ln_sh_kernel<T: Scalar>(p: T, q: T, t: T) -> (T, &'static str) {
    let zero = T::zero();
    if p == zero && q == zero {
        return (zero, "p=q=0");
    }
    if p == q {
        // t coth(pt) - 1/p = t phi'(pt)
        return (t * dphi(p * t), "p=q");
    }
    if q == zero {
        return (phi(p * t) / p, "q=0");
    }
    if p == zero {
        return (phi(q * t) / q, "p=0");
    }
    let d = p - q;
    if d.abs() < T::lit(SH_CLOSE) {
        let m = (p + q) / T::lit(2.0);
        let t3 = t * t * t;
        let v = t * dphi(m * t) + t3 * d * d / T::lit(24.0) * d3phi(m * t);
        return (v, "p~q");
    }
    ((phi(p * t) - phi(q * t)) / d, "general")
}

/// `Sh(p, q, t)`.
pub fn sh_kernel<T: Scalar>(p: T, q: T, t: T) -> Result<T> {
    for (name, v) in [("p", p), ("q", q), ("t", t)] {
        if !v.is_finite() {
            return Err(Error::input(format!("{name} must be finite, got {v}")));
        }
    }
    Ok(ln_sh_kernel(p, q, t).0.exp())
}

/// Checks the condition under which `Sh_{p,q}` is a mean: `p + q <= 3` and
/// `L(p, q) <= 1 / ln 2` when `p, q > 0`, otherwise `0 <= p + q <= 3`.
pub fn check_sh_validity<T: Scalar>(p: T, q: T) -> Result<()> {
    let three = T::lit(3.0);
    let s = p + q;
    if p > T::zero() && q > T::zero() {
        if s > three {
            return Err(Error::domain(format!(
                "Sh_{{p,q}} is a mean only if p + q <= 3 for p, q > 0; got p + q = {s}"
            )));
        }
        let lpq = l(p, q)?.value;
        if lpq > T::one() / T::LN_2() {
            return Err(Error::domain(format!(
                "Sh_{{p,q}} is a mean only if L(p, q) <= 1/ln 2 for p, q > 0; got L(p, q) = {lpq}"
            )));
        }
    } else if s < T::zero() || s > three {
        return Err(Error::domain(format!(
            "Sh_{{p,q}} is a mean only if 0 <= p + q <= 3 unless p, q > 0; got p + q = {s}"
        )));
    }
    Ok(())
}

/// `t = arccosh(b / a)` for `b >= a > 0`, accurate when `b` is close to `a`.
fn arccosh_ratio<T: Scalar>(b: T, a: T) -> T {
    let e = (b - a) / a;
    (e + (e * (T::lit(2.0) + e)).sqrt()).ln_1p()
}

fn check_ordered<T: Scalar>(b: T, a: T) -> Result<()> {
    check_pair(a, b)?;
    if b < a {
        return Err(Error::input(format!(
            "expected b >= a, got b = {b}, a = {a}"
        )));
    }
    Ok(())
}

/// Two-parameter hyperbolic sine mean `Sh_{p,q}(b, a) = a Sh(p, q, arccosh(b/a))`
/// for `b >= a > 0`.
pub fn sh_mean<T: Scalar>(p: T, q: T, b: T, a: T) -> Result<MeanValue<T>> {
    for (name, v) in [("p", p), ("q", q)] {
        if !v.is_finite() {
            return Err(Error::input(format!("{name} must be finite, got {v}")));
        }
    }
    check_ordered(b, a)?;
    check_sh_validity(p, q)?;
    if a == b {
        return Ok(mv(a, Mean::Sh, "a=b"));
    }
    let (ln_k, branch) = ln_sh_kernel(p, q, arccosh_ratio(b, a));
    Ok(mv(a * ln_k.exp(), Mean::Sh, branch))
}

/// Evaluates a named mean. `Sh` takes its parameters from `sh` and requires
/// `b >= a`.
pub fn mean<T: Scalar>(which: Mean, a_: T, b_: T, sh: Option<(T, T)>) -> Result<MeanValue<T>> {
    match which {
        Mean::G => g(a_, b_),
        Mean::A => a(a_, b_),
        Mean::Q => q(a_, b_),
        Mean::L => l(a_, b_),
        Mean::Sb => sb(a_, b_),
        Mean::Ns => ns(a_, b_),
        Mean::V => v(a_, b_),
        Mean::Sh => {
            let (p, q_) = sh.ok_or_else(|| Error::input("the sh mean needs parameters p and q"))?;
            sh_mean(p, q_, b_, a_)
        }
    }
}

/// The classical means of a pair.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ClassicMeans<T> {
    pub g: T,
    pub a: T,
    pub q: T,
    pub l: T,
}

pub fn classic_means<T: Scalar>(a_: T, b_: T) -> Result<ClassicMeans<T>> {
    Ok(ClassicMeans {
        g: g(a_, b_)?.value,
        a: a(a_, b_)?.value,
        q: q(a_, b_)?.value,
        l: l(a_, b_)?.value,
    })
}

/// `NS` and `V` of a pair.
pub fn ns_v_means<T: Scalar>(a_: T, b_: T) -> Result<(T, T)> {
    Ok((ns(a_, b_)?.value, v(a_, b_)?.value))
}

/// Parameter sets of the bounds of `SB(b, a)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum BoundFamily<T> {
    /// `M(b/a; p1, q) < SB(b, a) / a < M(b/a; p2, q)` at a fixed `q`.
    FixedQ { q: T, p1: T, p2: T },
    /// `M(b/a; p, q1) < SB(b, a) / a < M(b/a; p, q2)` at a fixed `p`.
    FixedP { p: T, q1: T, q2: T },
    /// One-sided lower bound `M(b/a; kq, q)` for `k` in `[23/17, 3)`.
    KqLower { k: T, q: T },
    /// Two-sided bound with `p = k q_i` for `k` in `[0, 1]`.
    KqDouble { k: T, q1: T, q2: T },
    /// `M(b/a; 3q - 8/5, q)` for `q > 8/15`: a lower bound when `q >= 34/35`,
    /// an upper bound when `q <= 4/5`.
    Boundary { q: T },
}

/// Bounds of `SB(b, a)`; a missing side is not asserted.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MeanBounds<T> {
    pub lower: Option<T>,
    pub upper: Option<T>,
}

/// `((1 - p/(3q)) a^q + p/(3q) b^q)^{1/p} a^{1 - q/p}` with its limits at
/// `p = 0` and `q = 0`.
pub fn power_bound<T: Scalar>(p: T, q: T, b: T, a: T) -> Result<T> {
    for (name, v) in [("p", p), ("q", q)] {
        if !v.is_finite() {
            return Err(Error::input(format!("{name} must be finite, got {v}")));
        }
    }
    check_ordered(b, a)?;
    if !in_omega(p, q) {
        return Err(Error::domain(format!(
            "bound needs p >= 0 or 3q <= p <= 0, got p = {p}, q = {q}"
        )));
    }
    let three = T::lit(3.0);
    let zero = T::zero();
    Ok(if p == zero && q == zero {
        (a * a * b).cbrt()
    } else if p == zero {
        a * (((b / a).powf(q) - T::one()) / (three * q)).exp()
    } else if q == zero {
        a * (T::one() + p / three * (b / a).ln()).powf(T::one() / p)
    } else {
        // Divided through by a^q: a (1 + r ((b/a)^q - 1))^{1/p}.
        let r = p / (three * q);
        a * (ln1p_scaled_power(r, q, (b / a).ln()) / p).exp()
    })
}

/// `ln(1 + r (e^{q l} - 1))` without overflow when `e^{q l}` is huge.
fn ln1p_scaled_power<T: Scalar>(r: T, q: T, l: T) -> T {
    let ql = q * l;
    if ql > T::lit(700.0) && r > T::zero() {
        ql + r.ln() + ((T::one() - r) / r * (-ql).exp()).ln_1p()
    } else {
        (r * ql.exp_m1()).ln_1p()
    }
}

/// `(8/(15q) a^q + (1 - 8/(15q)) b^q)^{5/(15q-8)} a^{(10q-8)/(15q-8)}`.
pub fn boundary_bound<T: Scalar>(q: T, b: T, a: T) -> Result<T> {
    if !q.is_finite() {
        return Err(Error::input(format!("q must be finite, got {q}")));
    }
    check_ordered(b, a)?;
    let eps = T::lit(15.0) * q - T::lit(8.0);
    if eps <= T::zero() {
        return Err(Error::domain(format!(
            "boundary bound needs q > 8/15, got {q}"
        )));
    }
    // The powers of a collect to a^1 once a^q is factored out.
    let r = T::one() - T::lit(8.0) / (T::lit(15.0) * q);
    Ok(a * (T::lit(5.0) / eps * ln1p_scaled_power(r, q, (b / a).ln())).exp())
}

/// Evaluates the bounds of `SB(b, a)` for `b >= a > 0`.
pub fn mean_bounds<T: Scalar>(family: BoundFamily<T>, b: T, a: T) -> Result<MeanBounds<T>> {
    let both = |lo: T, hi: T| MeanBounds {
        lower: Some(lo),
        upper: Some(hi),
    };
    match family {
        BoundFamily::FixedQ { q, p1, p2 } => {
            Ok(both(power_bound(p1, q, b, a)?, power_bound(p2, q, b, a)?))
        }
        BoundFamily::FixedP { p, q1, q2 } => {
            Ok(both(power_bound(p, q1, b, a)?, power_bound(p, q2, b, a)?))
        }
        BoundFamily::KqLower { k, q } => {
            if !(k >= T::ratio(23, 17) && k < T::lit(3.0)) {
                return Err(Error::domain(format!(
                    "one-sided p = kq bound needs 23/17 <= k < 3, got k = {k}"
                )));
            }
            Ok(MeanBounds {
                lower: Some(power_bound(k * q, q, b, a)?),
                upper: None,
            })
        }
        BoundFamily::KqDouble { k, q1, q2 } => {
            if !(k >= T::zero() && k <= T::one()) {
                return Err(Error::domain(format!(
                    "two-sided p = kq bound needs 0 <= k <= 1, got k = {k}"
                )));
            }
            Ok(both(
                power_bound(k * q1, q1, b, a)?,
                power_bound(k * q2, q2, b, a)?,
            ))
        }
        BoundFamily::Boundary { q } => {
            let v = boundary_bound(q, b, a)?;
            if q >= T::ratio(34, 35) {
                Ok(MeanBounds {
                    lower: Some(v),
                    upper: None,
                })
            } else if q <= T::ratio(4, 5) {
                Ok(MeanBounds {
                    lower: None,
                    upper: Some(v),
                })
            } else {
                Err(Error::domain(format!(
                    "p = 3q - 8/5 bounds SB from neither side for 4/5 < q < 34/35, got q = {q}"
                )))
            }
        }
    }
}

/// `a M(b/a; p, q)`, the same bound evaluated through the hyperbolic form.
pub fn transferred_bound<T: Scalar>(p: T, q: T, b: T, a: T) -> Result<T> {
    check_ordered(b, a)?;
    Ok(a * m_bound(b / a, p, q)?.value)
}
