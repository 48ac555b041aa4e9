//! The auxiliary functions `A`, `B`, `C` and the ratio
//! `f3 = (pA - qB) / C + 1` whose monotonicity decides that of `H_{p,q}`.
//!
//! All three functions start at `x^6`. The direct path is rewritten so that
//! no leading terms cancel: with `sm = sinh x - x`, `cm = cosh x - 1` and the
//! next-order tails `sm2 = sm - x^3/6`, `cm2 = cm - x^2/2`,
//!
//! ```text
//! A = (x cosh x - sinh x)^2 cosh x
//! B = x (x cosh x - sinh x) sinh^2 x
//! C = 3x sm2 - x^2 cm2 + sm^2 + 2x sm cm + cm sm^2
//! ```

use serde::Serialize;

use super::{
    check_param, check_x, coeffs, cosh_minus_one, even_tail, horner, odd_tail, sinh_minus_x,
    table_y, x_cosh_minus_sinh, Branch, FnValue, Method, LARGE_X, TAIL_SERIES_MAX_X, X_SMALL,
};
use crate::error::Result;
use crate::scalar::Scalar;

/// Values of `A(x)`, `B(x)`, `C(x)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Abc<T> {
    pub a: T,
    pub b: T,
    pub c: T,
    pub method: Method,
}

pub fn abc_eval<T: Scalar>(x: T) -> Result<Abc<T>> {
    check_x(x)?;
    Ok(abc_raw(x))
}

fn abc_raw<T: Scalar>(x: T) -> Abc<T> {
    if x < T::lit(X_SMALL) {
        let y = x * x;
        let a = horner(&table_y::<T>(&coeffs::A_SERIES), y);
        let b = horner(&table_y::<T>(&coeffs::B_SERIES), y);
        let c = horner(&table_y::<T>(&coeffs::C_SERIES), y);
        return Abc {
            a,
            b,
            c,
            method: Method::SmallXSeries,
        };
    }
    let e = x_cosh_minus_sinh(x);
    let (sh, ch) = (x.sinh(), x.cosh());
    let a = e * e * ch;
    let b = x * e * sh * sh;
    let c = if x <= T::lit(TAIL_SERIES_MAX_X) {
        let sm = sinh_minus_x(x);
        let cm = cosh_minus_one(x);
        let sm2 = odd_tail(x, 2);
        let cm2 = even_tail(x, 2);
        T::lit(3.0) * x * sm2 - x * x * cm2 + sm * sm + T::lit(2.0) * x * sm * cm + cm * sm * sm
    } else {
        ch * sh * sh + x * sh - T::lit(2.0) * x * x * ch
    };
    Abc {
        a,
        b,
        c,
        method: Method::Direct,
    }
}

/// `A`, `B`, `C` multiplied by `e^{-3x}`, for large `x`.
fn abc_scaled<T: Scalar>(x: T) -> (T, T, T) {
    let e2 = (T::lit(-2.0) * x).exp();
    let half = T::lit(0.5);
    let s = half * (T::one() - e2);
    let c = half * (T::one() + e2);
    let e = x * c - s;
    let a = e * e * c;
    let b = x * e * s * s;
    let cc = c * s * s + (x * s - T::lit(2.0) * x * x * c) * e2;
    (a, b, cc)
}

/// `f3(x) = (p A(x) - q B(x)) / C(x) + 1`.
pub fn f3_eval<T: Scalar>(x: T, p: T, q: T) -> Result<FnValue<T>> {
    check_x(x)?;
    check_param("p", p)?;
    check_param("q", q)?;
    let (v, method) = f3_raw(x, p, q);
    Ok(FnValue {
        value: v,
        branch: Branch::of_pair(p, q),
        method,
    })
}

fn f3_raw<T: Scalar>(x: T, p: T, q: T) -> (T, Method) {
    if x < T::lit(X_SMALL) {
        // Divide the common factor x^6 out of numerator and denominator.
        let y = x * x;
        let a = horner(&table_y::<T>(&coeffs::A_SERIES)[3..], y);
        let b = horner(&table_y::<T>(&coeffs::B_SERIES)[3..], y);
        let c = horner(&table_y::<T>(&coeffs::C_SERIES)[3..], y);
        ((p * a - q * b) / c + T::one(), Method::SmallXSeries)
    } else if x > T::lit(LARGE_X) {
        let (a, b, c) = abc_scaled(x);
        ((p * a - q * b) / c + T::one(), Method::Direct)
    } else {
        let v = abc_raw(x);
        ((p * v.a - q * v.b) / v.c + T::one(), Method::Direct)
    }
}

/// `f2(x) = p A(x) - q B(x) + C(x) = C(x) f3(x)`.
pub fn f2_eval<T: Scalar>(x: T, p: T, q: T) -> Result<FnValue<T>> {
    let f3 = f3_eval(x, p, q)?;
    let c = abc_raw(x).c;
    Ok(FnValue {
        value: c * f3.value,
        ..f3
    })
}

#[cfg(test)]
#[allow(clippy::excessive_precision)]
mod tests {
    use super::*;
    use crate::scalar::rel_diff;

    #[test]
    fn values_at_one() {
        let v = abc_eval(1.0).unwrap();
        assert!(rel_diff(v.a, 0.208_833_254_769_653_13) < 1e-14);
        assert!(rel_diff(v.b, 0.508_077_503_621_006_1) < 1e-14);
        assert!(rel_diff(v.c, 0.220_185_264_253_944_42) < 1e-14);
    }

    #[test]
    fn small_argument_values() {
        let v = abc_eval(0.05).unwrap();
        assert_eq!(v.method, Method::SmallXSeries);
        assert!(rel_diff(v.a, 1.739_151_029_268_484_3e-9) < 1e-14);
        assert!(rel_diff(v.c, 2.779_266_265_775_269e-9) < 1e-14);
        assert!(rel_diff(abc_eval(0.5).unwrap().c, 2.930_582_652_899_923_3e-3) < 1e-13);
    }

    #[test]
    fn leading_term_of_c() {
        let x = 1e-3f64;
        let c = abc_eval(x).unwrap().c;
        assert!(rel_diff(c / x.powi(6), 512.0 / 2880.0) < 1e-5);
    }

    #[test]
    fn positive_on_grid() {
        for x in [0.1, 1.0, 10.0, 1e-4, 3.0, 3.5, 50.0] {
            let v = abc_eval(x).unwrap();
            assert!(v.a > 0.0 && v.b > 0.0 && v.c > 0.0, "x = {x}");
        }
    }

    #[test]
    fn crossover_agreement() {
        let below = abc_raw(X_SMALL * (1.0 - 1e-15));
        let above = abc_raw(X_SMALL);
        assert_eq!(above.method, Method::Direct);
        for (s, d) in [(below.a, above.a), (below.b, above.b), (below.c, above.c)] {
            assert!(rel_diff(s, d) < 1e-12);
        }
        let tail_below = abc_raw(3.0);
        let tail_above = abc_raw(3.0 + 1e-12);
        assert!(rel_diff(tail_below.c, tail_above.c) < 1e-10);
    }

    #[test]
    fn f3_examples() {
        assert!(
            rel_diff(
                f3_eval(2.0, 2.0, 1.0).unwrap().value,
                1.441_515_956_229_771_6
            ) < 1e-13
        );
        assert!(f3_eval(2.0, 2.0, 1.0).unwrap().value > 0.375);
        for x in [1e-3, 0.5, 7.0, 40.0] {
            assert_eq!(f3_eval(x, 0.0, 0.0).unwrap().value, 1.0);
        }
        let lim: f64 = f3_eval(1e-4, 1.2, -0.7).unwrap().value;
        assert!((lim - (5.0 * 1.2 / 8.0 + 15.0 * 0.7 / 8.0 + 1.0)).abs() < 1e-7);
        assert!(rel_diff(f3_eval(30.0, 1.0, 1.0).unwrap().value, -28.0) < 1e-10);
        let at_20 = f3_eval(20.0, 1.0, 1.0).unwrap().value;
        let past_20 = f3_eval(20.0 + 1e-9, 1.0, 1.0).unwrap().value;
        assert!(rel_diff(at_20, past_20) < 1e-8);
    }

    #[test]
    fn f2_is_c_times_f3() {
        let (x, p, q) = (1.5, 0.3, 0.9);
        let v = abc_eval(x).unwrap();
        let f2 = f2_eval(x, p, q).unwrap().value;
        assert!(rel_diff(f2, p * v.a - q * v.b + v.c) < 1e-13);
    }
}
