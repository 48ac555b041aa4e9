//! Stable evaluation of the generalized logarithm `U_p`, `sinh x / x`,
//! `Sh_p`, `Ch_q`, their ratio `H_{p,q}` and difference `D_{p,q}`.
//!
//! Both `Sh_p(x)` and `Ch_q(x)` are `O(x^2)` near the origin, and `D_{p,q}` is
//! `O(x^4)` (or `O(x^6)` on the line `p = 3q - 8/5`). Every quantity is
//! therefore built from an accurate logarithm (`ln(sinh x / x)`, `ln cosh x`)
//! followed by `expm1`, and the small-argument paths use exact Maclaurin
//! coefficients generated by [`crate::series`].

mod abc;
mod bound;
mod coeffs;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

pub use abc::{abc_eval, f2_eval, f3_eval, Abc};
pub use bound::{
    in_omega, ln_m_bound, ln_m_boundary_family, m_bound, m_boundary_family, BOUNDARY_Q_MIN,
};
pub(crate) use bound::{ln_boundary_raw, ln_m_raw};

/// Below this `x` the small-argument series are used.
pub const X_SMALL: f64 = 0.125;

/// `|p ln t|` below which `U_p` switches to its Taylor polynomial in `p ln t`.
pub const SMALL_P_THRESHOLD: f64 = 1e-4;

/// Up to this `x` the tails `sinh x - x`, `cosh x - 1`, ... are summed as series.
const TAIL_SERIES_MAX_X: f64 = 3.0;

/// Above this `x` the logarithms use their `e^{-2x}` asymptotic forms.
const LARGE_X: f64 = 20.0;

/// Number of coefficients (powers `y^0..y^10`, `y = x^2`) carried by the series.
const TERMS: usize = 11;

/// The exponent pair `(p, q)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ParamPair<T> {
    pub p: T,
    pub q: T,
}

impl<T: Scalar> ParamPair<T> {
    pub fn new(p: T, q: T) -> Result<Self> {
        check_param("p", p)?;
        check_param("q", q)?;
        Ok(ParamPair { p, q })
    }

    /// `k = p / q`, defined only for `q != 0`.
    pub fn k(&self) -> Option<T> {
        if self.q == T::zero() {
            None
        } else {
            Some(self.p / self.q)
        }
    }

    pub fn branch(&self) -> Branch {
        Branch::of_pair(self.p, self.q)
    }
}

/// An argument `x > 0` together with `t = cosh x`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EvalPoint<T> {
    pub x: T,
    pub t: T,
}

impl<T: Scalar> EvalPoint<T> {
    pub fn new(x: T) -> Result<Self> {
        check_x(x)?;
        Ok(EvalPoint { x, t: x.cosh() })
    }
}

/// Which case of a piecewise definition produced a value, by the exact-zero
/// pattern of its parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    /// No parameter, or every parameter nonzero.
    General,
    PZero,
    QZero,
    PqZero,
}

impl Branch {
    pub fn of_pair<T: Scalar>(p: T, q: T) -> Self {
        match (p == T::zero(), q == T::zero()) {
            (false, false) => Branch::General,
            (true, false) => Branch::PZero,
            (false, true) => Branch::QZero,
            (true, true) => Branch::PqZero,
        }
    }

    pub fn tag(self) -> &'static str {
        match self {
            Branch::General => "general",
            Branch::PZero => "p_zero",
            Branch::QZero => "q_zero",
            Branch::PqZero => "pq_zero",
        }
    }
}

/// Evaluation route actually taken.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Direct,
    SmallXSeries,
    SmallPSeries,
}

impl Method {
    pub fn tag(self) -> &'static str {
        match self {
            Method::Direct => "direct",
            Method::SmallXSeries => "small-x-series",
            Method::SmallPSeries => "small-p-series",
        }
    }
}

/// A function value tagged with the branch and method that produced it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FnValue<T> {
    pub value: T,
    pub branch: Branch,
    pub method: Method,
}

impl<T> FnValue<T> {
    fn new(value: T, branch: Branch, method: Method) -> Self {
        FnValue {
            value,
            branch,
            method,
        }
    }
}

pub(crate) fn check_param<T: Scalar>(name: &str, v: T) -> Result<()> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(Error::input(format!("{name} must be finite, got {v}")))
    }
}

pub(crate) fn check_x<T: Scalar>(x: T) -> Result<()> {
    check_param("x", x)?;
    if x > T::zero() {
        Ok(())
    } else {
        Err(Error::domain(format!("x must be > 0, got {x}")))
    }
}

fn check_finite_result<T: Scalar>(what: &str, v: T) -> Result<T> {
    if v.is_nan() {
        Err(Error::domain(format!(
            "{what} is not representable in floating point at these arguments"
        )))
    } else {
        Ok(v)
    }
}

// ---------------------------------------------------------------------------
// Series tails and accurate logarithms

/// `sum_{k >= k0} x^(2k+1) / (2k+1)!`, for moderate `x`.
pub(crate) fn odd_tail<T: Scalar>(x: T, k0: u32) -> T {
    let mut first = x;
    for j in 2..=2 * k0 + 1 {
        first = first * x / T::from_u32(j).unwrap();
    }
    sum_tail(first, x * x, 2 * k0 + 1)
}

/// `sum_{k >= k0} x^(2k) / (2k)!`, for moderate `x`.
pub(crate) fn even_tail<T: Scalar>(x: T, k0: u32) -> T {
    let mut first = T::one();
    for j in 1..=2 * k0 {
        first = first * x / T::from_u32(j).unwrap();
    }
    sum_tail(first, x * x, 2 * k0)
}

/// Sums `term_0 + term_1 + ...` where `term_{i+1} = term_i x^2 / ((m+1)(m+2))`
/// and `m` starts at `order`.
fn sum_tail<T: Scalar>(first: T, x2: T, order: u32) -> T {
    let mut term = first;
    let mut sum = first;
    let mut m = order;
    for _ in 0..200 {
        term = term * x2 / T::from_u32((m + 1) * (m + 2)).unwrap();
        m += 2;
        sum = sum + term;
        if term.abs() <= T::epsilon() * sum.abs() {
            break;
        }
    }
    sum
}

/// `sinh x - x`.
pub(crate) fn sinh_minus_x<T: Scalar>(x: T) -> T {
    if x <= T::lit(TAIL_SERIES_MAX_X) {
        odd_tail(x, 1)
    } else {
        x.sinh() - x
    }
}

/// `cosh x - 1 = 2 sinh^2(x/2)`.
pub(crate) fn cosh_minus_one<T: Scalar>(x: T) -> T {
    let s = (x / T::lit(2.0)).sinh();
    T::lit(2.0) * s * s
}

/// `x cosh x - sinh x = sum_{k>=1} 2k x^(2k+1) / (2k+1)!`.
pub(crate) fn x_cosh_minus_sinh<T: Scalar>(x: T) -> T {
    if x <= T::lit(TAIL_SERIES_MAX_X) {
        let x2 = x * x;
        // k = 1 term: 2 x^3 / 3!
        let mut base = x * x2 / T::lit(6.0);
        let mut sum = T::lit(2.0) * base;
        let mut k = 1u32;
        for _ in 0..200 {
            base = base * x2 / T::from_u32((2 * k + 2) * (2 * k + 3)).unwrap();
            k += 1;
            let term = T::from_u32(2 * k).unwrap() * base;
            sum = sum + term;
            if term <= T::epsilon() * sum {
                break;
            }
        }
        sum
    } else {
        x * x.cosh() - x.sinh()
    }
}

fn table_y<T: Scalar>(table: &[(u32, i128, i128)]) -> [T; TERMS] {
    let mut out = [T::zero(); TERMS];
    for &(power, num, den) in table {
        let k = (power / 2) as usize;
        if k < TERMS {
            out[k] = T::ratio(num, den);
        }
    }
    out
}

fn horner<T: Scalar>(c: &[T], y: T) -> T {
    c.iter().rev().fold(T::zero(), |acc, &a| acc * y + a)
}

/// Truncated product of two polynomials in `y`.
fn poly_mul<T: Scalar>(a: &[T; TERMS], b: &[T; TERMS]) -> [T; TERMS] {
    let mut out = [T::zero(); TERMS];
    for i in 0..TERMS {
        if a[i] == T::zero() {
            continue;
        }
        for j in 0..TERMS - i {
            out[i + j] = out[i + j] + a[i] * b[j];
        }
    }
    out
}

/// Coefficients in `y = x^2` of `(exp(p L) - 1) / p` for a series `L` with
/// `L(0) = 0`, evaluated as `L (1 + pL/2 (1 + pL/3 (1 + ...)))`.
fn compose_u<T: Scalar>(l: &[T; TERMS], p: T) -> [T; TERMS] {
    let mut acc = [T::zero(); TERMS];
    acc[0] = T::one();
    for j in (2..TERMS).rev() {
        let mut next = poly_mul(l, &acc);
        let w = p / T::from_usize(j).unwrap();
        for c in next.iter_mut() {
            *c = *c * w;
        }
        next[0] = next[0] + T::one();
        acc = next;
    }
    poly_mul(l, &acc)
}

/// `ln(sinh x / x)` for `x > 0`.
pub fn ln_sinhc<T: Scalar>(x: T) -> T {
    if x < T::lit(X_SMALL) {
        let c = table_y::<T>(&coeffs::LN_SINHC);
        horner(&c, x * x)
    } else if x <= T::lit(LARGE_X) {
        (sinh_minus_x(x) / x).ln_1p()
    } else {
        x - T::LN_2() - x.ln() + (-(T::lit(-2.0) * x).exp()).ln_1p()
    }
}

/// `ln cosh x` for `x > 0`.
pub fn ln_cosh<T: Scalar>(x: T) -> T {
    if x < T::lit(X_SMALL) {
        let c = table_y::<T>(&coeffs::LN_COSH);
        horner(&c, x * x)
    } else if x <= T::lit(LARGE_X) {
        cosh_minus_one(x).ln_1p()
    } else {
        x - T::LN_2() + (T::lit(-2.0) * x).exp().ln_1p()
    }
}

/// `U_p(e^L) = (e^{pL} - 1) / p`, with `U_0 = L`; the method reports whether
/// the small-`p` polynomial was used.
pub(crate) fn u_from_log<T: Scalar>(l: T, p: T) -> (T, Method) {
    if p == T::zero() {
        return (l, Method::Direct);
    }
    let z = p * l;
    if z.abs() < T::lit(SMALL_P_THRESHOLD) {
        let poly = T::one() + z * (T::lit(0.5) + z * (T::one() / T::lit(6.0) + z / T::lit(24.0)));
        (l * poly, Method::SmallPSeries)
    } else {
        (z.exp_m1() / p, Method::Direct)
    }
}

/// Whether `D`, `H` use the composed small-`x` series at `(x, p, q)`.
///
/// Besides `x < X_SMALL`, the composed series converges like `(p x^2 / 6)^j / j!`,
/// so large exponents shrink the window.
pub(crate) fn small_x_window<T: Scalar>(x: T, p: T, q: T) -> bool {
    let scale = T::one().max(p.abs()).max(q.abs());
    x < T::lit(X_SMALL) && x * x * scale < T::lit(X_SMALL * X_SMALL)
}

/// Coefficients in `y = x^2` of `Sh_p` and `Ch_q`.
fn sh_ch_series<T: Scalar>(p: T, q: T) -> ([T; TERMS], [T; TERMS]) {
    let ls = table_y::<T>(&coeffs::LN_SINHC);
    let lc = table_y::<T>(&coeffs::LN_COSH);
    (compose_u(&ls, p), compose_u(&lc, q))
}

/// Coefficients in `y = x^2` of `D_{p,q}`; the `y^0`, `y^1` terms vanish
/// identically and are set to zero.
pub fn d_series_coefficients<T: Scalar>(p: T, q: T) -> Vec<T> {
    let (s, c) = sh_ch_series(p, q);
    let third = T::one() / T::lit(3.0);
    let mut d: Vec<T> = s
        .iter()
        .zip(c.iter())
        .map(|(&a, &b)| a - b * third)
        .collect();
    d[0] = T::zero();
    d[1] = T::zero();
    d
}

/// `D_{p,q}` coefficients together with a rounding scale per coefficient,
/// `|sh_k| + |ch_k| / 3`: the size of the terms whose difference forms `d_k`.
pub(crate) fn d_series_with_scale<T: Scalar>(p: T, q: T) -> (Vec<T>, Vec<T>) {
    let (s, c) = sh_ch_series(p, q);
    let third = T::one() / T::lit(3.0);
    let d = d_series_coefficients(p, q);
    let scale = (0..TERMS)
        .map(|k| {
            if k < 2 {
                T::zero()
            } else {
                s[k].abs() + c[k].abs() * third
            }
        })
        .collect();
    (d, scale)
}

/// Coefficients in `y = x^2` of `ln(sinh x / x)` and `ln cosh x`.
pub(crate) fn log_series_coefficients<T: Scalar>() -> (Vec<T>, Vec<T>) {
    (
        table_y::<T>(&coeffs::LN_SINHC).to_vec(),
        table_y::<T>(&coeffs::LN_COSH).to_vec(),
    )
}

pub(crate) fn eval_poly<T: Scalar>(c: &[T], y: T) -> T {
    horner(c, y)
}

/// `ln U_p(e^L)` for `L > 0`, without overflow for large `p L`.
pub(crate) fn ln_u_from_log<T: Scalar>(l: T, p: T) -> T {
    if p == T::zero() {
        l.ln()
    } else if p > T::zero() && p * l > T::lit(30.0) {
        p * l - p.ln() + (-(-p * l).exp()).ln_1p()
    } else {
        u_from_log(l, p).0.ln()
    }
}

fn method_for(x_series: bool, p_method: Method) -> Method {
    if x_series {
        Method::SmallXSeries
    } else {
        p_method
    }
}

fn combine(a: Method, b: Method) -> Method {
    if a == Method::SmallPSeries || b == Method::SmallPSeries {
        Method::SmallPSeries
    } else {
        Method::Direct
    }
}

// ---------------------------------------------------------------------------
// Public evaluators

/// `U_p(t) = (t^p - 1) / p`, `U_0(t) = ln t`.
pub fn u_p<T: Scalar>(t: T, p: T) -> Result<FnValue<T>> {
    check_param("t", t)?;
    check_param("p", p)?;
    if t <= T::zero() {
        return Err(Error::domain(format!("U_p needs t > 0, got {t}")));
    }
    let l = t.ln();
    let (v, method) = if (p * l).abs() > T::one() {
        // Away from t^p = 1 the subtraction is harmless and powf is exact on
        // exactly representable powers.
        ((t.powf(p) - T::one()) / p, Method::Direct)
    } else {
        u_from_log(l, p)
    };
    let branch = if p == T::zero() {
        Branch::PZero
    } else {
        Branch::General
    };
    Ok(FnValue::new(v, branch, method))
}

/// `sinh x / x` for `x > 0`.
pub fn sinhc<T: Scalar>(x: T) -> Result<FnValue<T>> {
    check_x(x)?;
    Ok(sinhc_tagged(x))
}

fn sinhc_tagged<T: Scalar>(x: T) -> FnValue<T> {
    if x < T::lit(X_SMALL) {
        let mut c = table_y::<T>(&[]);
        // 1 + x^2/3! + x^4/5! + ...
        let mut f = T::one();
        for (k, slot) in c.iter_mut().enumerate() {
            if k > 0 {
                f = f * T::from_usize((2 * k) * (2 * k + 1)).unwrap();
            }
            *slot = T::one() / f;
        }
        FnValue::new(horner(&c, x * x), Branch::General, Method::SmallXSeries)
    } else if x <= T::lit(700.0) {
        FnValue::new(x.sinh() / x, Branch::General, Method::Direct)
    } else {
        FnValue::new(ln_sinhc(x).exp(), Branch::General, Method::Direct)
    }
}

/// `Sh_p(x) = U_p(sinh x / x)`.
pub fn sh_p<T: Scalar>(x: T, p: T) -> Result<FnValue<T>> {
    check_x(x)?;
    check_param("p", p)?;
    let (v, m) = u_from_log(ln_sinhc(x), p);
    let branch = if p == T::zero() {
        Branch::PZero
    } else {
        Branch::General
    };
    Ok(FnValue::new(v, branch, method_for(x < T::lit(X_SMALL), m)))
}

/// `Ch_q(x) = U_q(cosh x)`.
pub fn ch_q<T: Scalar>(x: T, q: T) -> Result<FnValue<T>> {
    check_x(x)?;
    check_param("q", q)?;
    let (v, m) = u_from_log(ln_cosh(x), q);
    let branch = if q == T::zero() {
        Branch::QZero
    } else {
        Branch::General
    };
    Ok(FnValue::new(v, branch, method_for(x < T::lit(X_SMALL), m)))
}

/// `H_{p,q}(x) = Sh_p(x) / Ch_q(x)`.
pub fn h_pq<T: Scalar>(x: T, p: T, q: T) -> Result<FnValue<T>> {
    check_x(x)?;
    check_param("p", p)?;
    check_param("q", q)?;
    let (v, method) = h_raw(x, p, q);
    Ok(FnValue::new(
        check_finite_result("H", v)?,
        Branch::of_pair(p, q),
        method,
    ))
}

pub(crate) fn h_raw<T: Scalar>(x: T, p: T, q: T) -> (T, Method) {
    if small_x_window(x, p, q) {
        // Both series start at y^1; divide it out before taking the ratio.
        let (s, c) = sh_ch_series(p, q);
        let y = x * x;
        let v = horner(&s[1..], y) / horner(&c[1..], y);
        (v, Method::SmallXSeries)
    } else {
        let (s, ms) = u_from_log(ln_sinhc(x), p);
        let (c, mc) = u_from_log(ln_cosh(x), q);
        (s / c, combine(ms, mc))
    }
}

/// `D_{p,q}(x) = Sh_p(x) - Ch_q(x) / 3`.
pub fn d_pq<T: Scalar>(x: T, p: T, q: T) -> Result<FnValue<T>> {
    check_x(x)?;
    check_param("p", p)?;
    check_param("q", q)?;
    let (v, method) = d_raw(x, p, q);
    Ok(FnValue::new(
        check_finite_result("D", v)?,
        Branch::of_pair(p, q),
        method,
    ))
}

pub(crate) fn d_raw<T: Scalar>(x: T, p: T, q: T) -> (T, Method) {
    if small_x_window(x, p, q) {
        let d = d_series_coefficients(p, q);
        (horner(&d, x * x), Method::SmallXSeries)
    } else {
        let (s, ms) = u_from_log(ln_sinhc(x), p);
        let (c, mc) = u_from_log(ln_cosh(x), q);
        (s - c / T::lit(3.0), combine(ms, mc))
    }
}

/// `Sh_p(x)` and `Ch_q(x)/3` on the direct path, for callers that need the
/// magnitudes being compared.
#[cfg(test)]
pub(crate) fn d_parts<T: Scalar>(x: T, p: T, q: T) -> (T, T) {
    let (s, _) = u_from_log(ln_sinhc(x), p);
    let (c, _) = u_from_log(ln_cosh(x), q);
    (s, c / T::lit(3.0))
}

/// `(p - 3q + 8/5) / 72`, the limit of `D_{p,q}(x) / x^4` at `0+`.
pub fn d_limit_x4<T: Scalar>(p: T, q: T) -> T {
    (p - T::lit(3.0) * q + T::lit(1.6)) / T::lit(72.0)
}

/// `(q - 34/35) / 270`, the limit of `D_{3q-8/5,q}(x) / x^6` at `0+`.
pub fn d_limit_x6_boundary<T: Scalar>(q: T) -> T {
    (q - T::ratio(34, 35)) / T::lit(270.0)
}

#[cfg(test)]
#[allow(clippy::excessive_precision)]
mod tests {
    use super::*;
    use crate::scalar::rel_diff;
    use proptest::prelude::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        rel_diff(a, b) <= tol
    }

    #[test]
    fn u_p_examples() {
        assert_eq!(u_p(3.0, 2.0).unwrap().value, 4.0);
        assert!(close(
            u_p(std::f64::consts::E, 0.0).unwrap().value,
            1.0,
            1e-16
        ));
        let v = u_p(2.0, 1e-12).unwrap();
        assert_eq!(v.method, Method::SmallPSeries);
        assert!(close(v.value, 0.693_147_180_560_185_5, 1e-15));
        assert!(close(
            u_p(1.5, -3.7).unwrap().value,
            0.209_978_141_583_884_93,
            1e-14
        ));
    }

    #[test]
    fn u_p_errors() {
        assert!(u_p(0.0, 1.0).unwrap_err().is_domain());
        assert!(u_p(-1.0, 1.0).unwrap_err().is_domain());
        assert!(!u_p(f64::NAN, 1.0).unwrap_err().is_domain());
        assert!(!u_p(2.0, f64::INFINITY).unwrap_err().is_domain());
    }

    #[test]
    fn u_p_threshold_agrees_on_both_sides() {
        for t in [1e-6, 0.3, 2.0, 1e6] {
            let l: f64 = f64::ln(t);
            let z = SMALL_P_THRESHOLD;
            let p_in = 0.999 * z / l.abs();
            let p_out = 1.001 * z / l.abs();
            let (a, ma) = u_from_log(l, p_in);
            let (b, mb) = u_from_log(l, p_out);
            assert_eq!(ma, Method::SmallPSeries);
            assert_eq!(mb, Method::Direct);
            assert!(close(a, b, 1e-5));
            let exact_in = (p_in * l).exp_m1() / p_in;
            assert!(close(a, exact_in, 1e-14), "t = {t}");
        }
    }

    #[test]
    fn sinhc_values() {
        assert!(close(
            sinhc(1.0).unwrap().value,
            1.175_201_193_643_801_4,
            1e-15
        ));
        let s = sinhc(1e-3).unwrap();
        assert_eq!(s.method, Method::SmallXSeries);
        assert!(close(s.value, 1.000_000_166_666_675, 1e-15));
        assert!(close(sinhc(1e-300).unwrap().value, 1.0, 1e-16));
        assert!(sinhc(1.0).unwrap().value > 1.0);
        assert!(sinhc(0.0).unwrap_err().is_domain());
        assert!(sinhc(800.0f64).unwrap().value.is_infinite());
    }

    #[test]
    fn sh_and_ch_examples() {
        assert!(close(
            sh_p(1.0, 1.0).unwrap().value,
            0.175_201_193_643_801_46,
            1e-14
        ));
        let c = ch_q(1.0, 0.0).unwrap();
        assert_eq!(c.branch, Branch::QZero);
        assert!(close(c.value, 0.433_780_830_483_027_2, 1e-15));
    }

    #[test]
    fn logs_at_large_argument() {
        assert!(close(ln_sinhc(30.0), 25.905_655_437_777_9, 1e-15));
        assert!(close(ln_cosh(30.0), 29.306_852_819_440_055, 1e-15));
        assert!(ln_sinhc(1e6_f64).is_finite());
    }

    #[test]
    fn h_examples() {
        let h = h_pq(1.0, 0.0, 0.0).unwrap();
        assert_eq!(h.branch, Branch::PqZero);
        assert!(close(h.value, 0.372_168_040_232_272_03, 1e-14));
        assert!(close(
            h_pq(0.05, 2.0, 0.5).unwrap().value,
            0.333_479_174_219_494_5,
            1e-14
        ));
        assert!(close(
            h_pq(5.0, -1.0, 2.0).unwrap().value,
            3.387_568_997_544_611e-4,
            1e-13
        ));
        assert!(h_pq(2.0, 3.0, 1.0).unwrap().value > h_pq(1.0, 3.0, 1.0).unwrap().value);
        for (p, q) in [(0.0, 0.0), (3.0, 1.0), (-2.0, 1.5), (1.0, -1.0)] {
            assert!(close(h_pq(1e-200, p, q).unwrap().value, 1.0 / 3.0, 1e-15));
        }
    }

    #[test]
    fn d_examples() {
        assert!(close(
            d_pq(1.0, 3.0, 1.0).unwrap().value,
            0.026_662_400_601_460_2,
            1e-13
        ));
        assert!(close(
            d_pq(1.0, 1.0, 1.0).unwrap().value,
            -0.005_825_684_627_946_469,
            1e-13
        ));
        let small = d_pq(1e-3, 1.0, 1.0).unwrap();
        assert_eq!(small.method, Method::SmallXSeries);
        assert!(close(small.value, -5.555_555_820_105_826e-15, 1e-12));
        assert!(close(
            d_pq(0.1, 2.0, 0.5).unwrap().value,
            2.916_061_359_873_821e-6,
            1e-11
        ));
        let on_line = d_pq(0.01, 3.0 - 1.6, 1.0).unwrap().value;
        assert!(close(on_line, 1.058_207_231_053_284e-16, 1e-6));
        assert!(close(d_limit_x4(1.0, 1.0), -1.0 / 180.0, 1e-15));
    }

    #[test]
    fn d_series_leading_coefficients() {
        for (p, q) in [(1.0f64, 1.0f64), (2.5, -0.5), (-3.0, 2.0)] {
            let d = d_series_coefficients(p, q);
            let c4 = (5.0 * p - 15.0 * q + 8.0) / 360.0;
            let c6 = (35.0 * p * p - 42.0 * p - 315.0 * q * q + 630.0 * q - 320.0) / 45360.0;
            assert!((d[2] - c4).abs() < 1e-16);
            assert!((d[3] - c6).abs() < 1e-16);
        }
    }

    #[test]
    fn branch_consistency_at_crossover() {
        let x = X_SMALL;
        let below = x * (1.0 - 1e-15);
        let direct_sinhc = x.sinh() / x;
        assert!(close(sinhc_tagged(below).value, direct_sinhc, 1e-12));
        for (p, q) in [(1.0, 1.0), (3.0, 1.0), (0.0, 0.0), (-2.0, 0.5), (0.7, -1.0)] {
            let (ds, _) = d_raw(below, p, q);
            let (s, c) = d_parts(x, p, q);
            assert!(close(ds, s - c, 1e-12), "D at ({p}, {q})");
            let (hs, _) = h_raw(below, p, q);
            assert!(close(hs, s / (3.0 * c), 1e-12), "H at ({p}, {q})");
        }
    }

    #[test]
    fn wilker_type_positivity() {
        for i in 1..400 {
            let x = 0.05 * i as f64;
            let s = sinhc(x).unwrap().value;
            let w = s * s + x.tanh() / x - 2.0;
            assert!(w > 0.0, "x = {x}");
        }
    }

    #[test]
    fn generic_over_f32() {
        let v: f32 = d_pq(1.0f32, 3.0, 1.0).unwrap().value;
        assert!((v - 0.026_662_4).abs() < 1e-5);
        let h: f32 = h_pq(0.01f32, 1.0, 1.0).unwrap().value;
        assert!((h - 1.0 / 3.0).abs() < 1e-5);
    }

    #[test]
    fn eval_point_and_pair() {
        let e = EvalPoint::new(1.0).unwrap();
        assert!(close(e.t, 1.0f64.cosh(), 1e-16));
        assert!(EvalPoint::new(-1.0).unwrap_err().is_domain());
        let pq = ParamPair::new(2.0, 0.0).unwrap();
        assert_eq!(pq.k(), None);
        assert_eq!(ParamPair::new(3.0, 1.5).unwrap().k(), Some(2.0));
        assert!(ParamPair::new(f64::NAN, 1.0).is_err());
    }

    proptest! {
        #[test]
        fn u_increasing_in_p(
            t in prop::sample::select(vec![1.001, 1.5, 10.0]),
            p1 in -5.0f64..5.0,
            dp in 1e-3f64..3.0,
        ) {
            let a = u_p(t, p1).unwrap().value;
            let b = u_p(t, p1 + dp).unwrap().value;
            prop_assert!(a < b);
        }

        #[test]
        fn sh_ch_positive(x in 1e-4f64..60.0, p in -5.0f64..5.0) {
            prop_assert!(sh_p(x, p).unwrap().value > 0.0);
            prop_assert!(ch_q(x, p).unwrap().value > 0.0);
        }

        #[test]
        fn small_x_sign_of_d_follows_x4_coefficient(p in -3.0f64..3.0, q in -3.0f64..3.0) {
            let c = p - 3.0 * q + 1.6;
            prop_assume!(c.abs() > 0.01);
            let d = d_pq(1e-3, p, q).unwrap().value;
            prop_assert_eq!(d > 0.0, c > 0.0);
        }

        #[test]
        fn h_near_zero_is_one_third(p in -4.0f64..4.0, q in -4.0f64..4.0) {
            let h = h_pq(1e-6, p, q).unwrap().value;
            prop_assert!((h - 1.0 / 3.0).abs() < 1e-12);
        }
    }
}
