//! The bound family `M(t; p, q)`: `sinh x / x` compared with `M(cosh x; p, q)`
//! is equivalent to the sign of `D_{p,q}(x)`.

use super::{check_param, u_from_log, Branch, FnValue, Method};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Smallest `q` for which `M(t; 3q - 8/5, q)` is real.
pub const BOUNDARY_Q_MIN: f64 = 8.0 / 15.0;

/// Past this `q ln t` the bounds switch to a logarithmic form to avoid overflow.
const LOG_FORM_EXPONENT: f64 = 500.0;

/// `p >= 0 or 3q <= p <= 0`.
pub fn in_omega<T: Scalar>(p: T, q: T) -> bool {
    p >= T::zero() || (T::lit(3.0) * q <= p && p <= T::zero())
}

fn check_t<T: Scalar>(t: T) -> Result<T> {
    check_param("t", t)?;
    if t < T::one() {
        return Err(Error::domain(format!("M needs t >= 1, got {t}")));
    }
    Ok(t.ln())
}

fn check_omega<T: Scalar>(p: T, q: T) -> Result<()> {
    if in_omega(p, q) {
        Ok(())
    } else {
        Err(Error::domain(format!(
            "(p, q) = ({p}, {q}) is outside the region `p >= 0 or 3q <= p <= 0`: \
             p < 0 requires 3q <= p, but 3q = {}",
            T::lit(3.0) * q
        )))
    }
}

/// `ln M(t; p, q)` together with the method used for `U_q`.
pub(crate) fn ln_m_raw<T: Scalar>(l: T, p: T, q: T) -> (T, Method) {
    if p == T::zero() {
        let (u, m) = u_from_log(l, q);
        return (u / T::lit(3.0), m);
    }
    if p > T::zero() && q > T::zero() && q * l > T::lit(LOG_FORM_EXPONENT) {
        // ln(1 + r (e^{qL} - 1)) = qL + ln r + ln(1 + (1/r - 1) e^{-qL}), r = p / (3q)
        let r = p / (T::lit(3.0) * q);
        let tail = ((T::one() / r - T::one()) * (-q * l).exp()).ln_1p();
        return ((q * l + r.ln() + tail) / p, Method::Direct);
    }
    let (u, m) = u_from_log(l, q);
    let w = p * u / T::lit(3.0);
    debug_assert!(
        w > -T::one(),
        "weighted mean base must stay positive on the region"
    );
    (w.ln_1p() / p, m)
}

/// `ln M(t; p, q)`.
pub fn ln_m_bound<T: Scalar>(t: T, p: T, q: T) -> Result<T> {
    check_param("p", p)?;
    check_param("q", q)?;
    let l = check_t(t)?;
    check_omega(p, q)?;
    Ok(ln_m_raw(l, p, q).0)
}

/// `M(t; p, q)`:
/// `(1 - p/(3q) + p/(3q) t^q)^(1/p)`, `exp((t^q - 1)/(3q))` for `p = 0`,
/// `(p ln t / 3 + 1)^(1/p)` for `q = 0`, and `t^(1/3)` for `p = q = 0`.
pub fn m_bound<T: Scalar>(t: T, p: T, q: T) -> Result<FnValue<T>> {
    check_param("p", p)?;
    check_param("q", q)?;
    let l = check_t(t)?;
    check_omega(p, q)?;
    let branch = Branch::of_pair(p, q);
    if branch == Branch::PqZero {
        return Ok(FnValue::new(t.cbrt(), branch, Method::Direct));
    }
    let (v, method) = ln_m_raw(l, p, q);
    Ok(FnValue::new(v.exp(), branch, method))
}

fn check_boundary_q<T: Scalar>(q: T) -> Result<()> {
    check_param("q", q)?;
    if q < T::ratio(8, 15) {
        Err(Error::domain(format!(
            "the family p = 3q - 8/5 needs q >= 8/15, got q = {q}"
        )))
    } else {
        Ok(())
    }
}

/// `ln M(t; 3q - 8/5, q)`.
pub fn ln_m_boundary_family<T: Scalar>(t: T, q: T) -> Result<T> {
    check_boundary_q(q)?;
    let l = check_t(t)?;
    Ok(ln_boundary_raw(l, q))
}

pub(crate) fn ln_boundary_raw<T: Scalar>(l: T, q: T) -> T {
    let eps = (T::lit(15.0) * q - T::lit(8.0)).max(T::zero());
    let five = T::lit(5.0);
    if eps == T::zero() {
        return five * (T::ratio(8, 15) * l).exp_m1() / T::lit(8.0);
    }
    // ln(8/(15q) + (1 - 8/(15q)) t^q) = ln(1 + r (t^q - 1)), r = eps / (15q)
    let r = eps / (T::lit(15.0) * q);
    let ql = q * l;
    let inner = if ql > T::lit(LOG_FORM_EXPONENT) {
        ql + r.ln() + ((T::one() / r - T::one()) * (-ql).exp()).ln_1p()
    } else {
        (r * ql.exp_m1()).ln_1p()
    };
    five * inner / eps
}

/// `M(t; 3q - 8/5, q) = (8/(15q) + (1 - 8/(15q)) t^q)^(5/(15q - 8))`, and
/// `exp(5 (t^(8/15) - 1) / 8)` at `q = 8/15`.
pub fn m_boundary_family<T: Scalar>(t: T, q: T) -> Result<FnValue<T>> {
    let v = ln_m_boundary_family(t, q)?;
    Ok(FnValue::new(v.exp(), Branch::General, Method::Direct))
}
