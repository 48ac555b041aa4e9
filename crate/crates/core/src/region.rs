//! Parameter regions and the monotonicity classification of `H_{p,q}`.
//!
//! Every comparison is done in an ordered field chosen by the caller. With
//! [`BigRational`] (see [`exact`]) the band edges `34/35`, `23q/17`,
//! `3q - 8/5`, ... are compared exactly, so the two restatements of the
//! classification agree even on the edges of a grid.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, ToPrimitive};
use serde::Serialize;

use crate::error::{Error, Result};

/// Ordered field the region logic is evaluated in.
pub trait OrderedField: Clone + PartialOrd + Num + FromPrimitive + ToPrimitive + Debug {}

impl<F: Clone + PartialOrd + Num + FromPrimitive + ToPrimitive + Debug> OrderedField for F {}

fn c<F: OrderedField>(num: i64, den: i64) -> F {
    F::from_i64(num).expect("small integer") / F::from_i64(den).expect("small integer")
}

/// The exact rational value of a finite `f64`.
pub fn exact(v: f64) -> Result<BigRational> {
    BigRational::from_float(v).ok_or_else(|| Error::input(format!("{v} is not finite")))
}

/// Parses `n/d`, an integer or a decimal such as `0.8` or `-1.25e-3` into the
/// rational it denotes, so that `0.8` is exactly `4/5`.
pub fn parse_exact(s: &str) -> Result<BigRational> {
    let bad = || Error::input(format!("`{s}` is not a rational number"));
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d == BigInt::from(0) {
            return Err(bad());
        }
        return Ok(BigRational::new(n, d));
    }
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (int, frac) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    let digits = format!("{int}{frac}");
    if digits.is_empty()
        || digits == "-"
        || digits == "+"
        || !frac.chars().all(|c| c.is_ascii_digit())
    {
        return Err(bad());
    }
    let n: BigInt = digits.parse().map_err(|_| bad())?;
    let scale = exp - frac.len() as i32;
    let ten = BigInt::from(10);
    let p = ten.pow(scale.unsigned_abs());
    Ok(if scale >= 0 {
        BigRational::from_integer(n * p)
    } else {
        BigRational::new(n, p)
    })
}

/// Nearest `f64` to an exact rational.
pub fn approx(v: &BigRational) -> f64 {
    v.to_f64().unwrap_or(f64::NAN)
}

/// `n / d` as an exact rational.
pub fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Direction {
    Increasing,
    Decreasing,
    NotCovered,
}

/// Classification result, naming the clause that fired.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MonotonicityVerdict {
    pub direction: Direction,
    /// Clause identifier such as `Pmain2.i.increasing`; `none` when not covered.
    pub clause: String,
    /// True when the point sits exactly on an edge of the fired clause or of its band.
    pub boundary_note: bool,
}

impl MonotonicityVerdict {
    fn fired(direction: Direction, clause: String, boundary_note: bool) -> Self {
        MonotonicityVerdict {
            direction,
            clause,
            boundary_note,
        }
    }

    fn not_covered(boundary_note: bool) -> Self {
        MonotonicityVerdict {
            direction: Direction::NotCovered,
            clause: "none".to_string(),
            boundary_note,
        }
    }
}

/// Membership of `(p, q)` in `I1`, `I2` and `Omega`, with the slack
/// `5p/8 - 15q/8 + 1` (the limit of `f3` at `0+`).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RegionMembership<F> {
    pub in_i1: bool,
    pub in_i2: bool,
    pub in_omega: bool,
    pub slack: F,
}

/// `5p/8 - 15q/8 + 1`.
pub fn slack<F: OrderedField>(p: &F, q: &F) -> F {
    c::<F>(5, 8) * p.clone() - c::<F>(15, 8) * q.clone() + F::one()
}

/// `{q=0, p>0} ∪ {q>0, p/q >= 23/17} ∪ {q<0, p/q <= 1}`.
pub fn in_i1<F: OrderedField>(p: &F, q: &F) -> bool {
    let zero = F::zero();
    if *q == zero {
        *p > zero
    } else if *q > zero {
        *p >= c::<F>(23, 17) * q.clone()
    } else {
        *p >= *q
    }
}

/// `{q=0, p<0} ∪ {q>0, p/q <= 1} ∪ {q<0, p/q >= 23/17}`.
pub fn in_i2<F: OrderedField>(p: &F, q: &F) -> bool {
    let zero = F::zero();
    if *q == zero {
        *p < zero
    } else if *q > zero {
        *p <= *q
    } else {
        *p <= c::<F>(23, 17) * q.clone()
    }
}

/// `p >= 0 or 3q <= p <= 0`.
pub fn in_omega<F: OrderedField>(p: &F, q: &F) -> bool {
    let zero = F::zero();
    *p >= zero || (c::<F>(3, 1) * q.clone() <= *p && *p <= zero)
}

pub fn membership<F: OrderedField>(p: &F, q: &F) -> RegionMembership<F> {
    RegionMembership {
        in_i1: in_i1(p, q),
        in_i2: in_i2(p, q),
        in_omega: in_omega(p, q),
        slack: slack(p, q),
    }
}

/// The defining classification: increasing on `(I1 ∪ {(0,0)}) ∩ {slack >= 0}`,
/// decreasing on `I2 ∩ {slack <= 0}`.
pub fn classify_pmain1<F: OrderedField>(p: &F, q: &F) -> MonotonicityVerdict {
    let zero = F::zero();
    let s = slack(p, q);
    let origin = *p == zero && *q == zero;
    if (in_i1(p, q) || origin) && s >= zero {
        MonotonicityVerdict::fired(Direction::Increasing, "Pmain1.i".into(), s == zero)
    } else if in_i2(p, q) && s <= zero {
        MonotonicityVerdict::fired(Direction::Decreasing, "Pmain1.ii".into(), s == zero)
    } else {
        MonotonicityVerdict::not_covered(false)
    }
}

/// One band of a restated classification: the band edge test and the two
/// thresholds `increasing if x >= inc` / `decreasing if x <= dec` (or the
/// reverse orientation for the `q`-restatement).
struct Band<F> {
    roman: &'static str,
    on_edge: bool,
    inc: F,
    dec: F,
}

fn verdict_in_band<F: OrderedField>(
    prefix: &str,
    band: Band<F>,
    v: &F,
    upward: bool,
) -> MonotonicityVerdict {
    // upward: increasing when v >= inc and decreasing when v <= dec;
    // otherwise increasing when v <= inc and decreasing when v >= dec.
    let (inc_ok, dec_ok) = if upward {
        (*v >= band.inc, *v <= band.dec)
    } else {
        (*v <= band.inc, *v >= band.dec)
    };
    if inc_ok {
        let note = band.on_edge || *v == band.inc;
        MonotonicityVerdict::fired(
            Direction::Increasing,
            format!("{prefix}.{}.increasing", band.roman),
            note,
        )
    } else if dec_ok {
        let note = band.on_edge || *v == band.dec;
        MonotonicityVerdict::fired(
            Direction::Decreasing,
            format!("{prefix}.{}.decreasing", band.roman),
            note,
        )
    } else {
        MonotonicityVerdict::not_covered(band.on_edge)
    }
}

/// Classification by the four `q`-bands:
///
/// * `q >= 34/35`: increasing for `p >= 3q - 8/5`, decreasing for `p <= q`;
/// * `4/5 <= q < 34/35`: increasing for `p >= 23q/17`, decreasing for `p <= q`;
/// * `0 < q < 4/5`: increasing for `p >= 23q/17`, decreasing for `p <= 3q - 8/5`;
/// * `q <= 0`: increasing for `p >= q`, decreasing for `p <= 3q - 8/5`.
pub fn classify<F: OrderedField>(p: &F, q: &F) -> MonotonicityVerdict {
    let zero = F::zero();
    let hi = c::<F>(34, 35);
    let mid = c::<F>(4, 5);
    let line = c::<F>(3, 1) * q.clone() - c::<F>(8, 5);
    let r2317 = c::<F>(23, 17) * q.clone();
    let band = if *q >= hi {
        Band {
            roman: "i",
            on_edge: *q == hi,
            inc: line,
            dec: q.clone(),
        }
    } else if *q >= mid {
        Band {
            roman: "ii",
            on_edge: *q == mid,
            inc: r2317,
            dec: q.clone(),
        }
    } else if *q > zero {
        Band {
            roman: "iii",
            on_edge: false,
            inc: r2317,
            dec: line,
        }
    } else {
        Band {
            roman: "iv",
            on_edge: *q == zero,
            inc: q.clone(),
            dec: line,
        }
    };
    verdict_in_band("Pmain2", band, p, true)
}

/// Classification by the four `p`-bands:
///
/// * `p >= 46/35`: increasing for `q <= p/3 + 8/15`, decreasing for `q >= p`;
/// * `4/5 <= p < 46/35`: increasing for `q <= 17p/23`, decreasing for `q >= p`;
/// * `0 < p < 4/5`: increasing for `q <= 17p/23`, decreasing for `q >= p/3 + 8/15`;
/// * `p <= 0`: increasing for `q <= p`, decreasing for `q >= p/3 + 8/15`.
pub fn classify_pmain3<F: OrderedField>(p: &F, q: &F) -> MonotonicityVerdict {
    let zero = F::zero();
    let hi = c::<F>(46, 35);
    let mid = c::<F>(4, 5);
    let line = p.clone() / c::<F>(3, 1) + c::<F>(8, 15);
    let r1723 = c::<F>(17, 23) * p.clone();
    let band = if *p >= hi {
        Band {
            roman: "i",
            on_edge: *p == hi,
            inc: line,
            dec: p.clone(),
        }
    } else if *p >= mid {
        Band {
            roman: "ii",
            on_edge: *p == mid,
            inc: r1723,
            dec: p.clone(),
        }
    } else if *p > zero {
        Band {
            roman: "iii",
            on_edge: false,
            inc: r1723,
            dec: line,
        }
    } else {
        Band {
            roman: "iv",
            on_edge: *p == zero,
            inc: p.clone(),
            dec: line,
        }
    };
    verdict_in_band("Pmain3", band, q, false)
}

/// Classification of `H_{kq,q}` by the five `k`-bands.
///
/// For `k = 3` only `q >= 0` is reported increasing: with `q < 0` the pair
/// `(3q, q)` lies outside `I1` and `H_{3q,q}` is not monotone there (it
/// returns to `1/3` at infinity after an interior maximum).
pub fn classify_kq<F: OrderedField>(k: &F, q: &F) -> MonotonicityVerdict {
    let zero = F::zero();
    let three = c::<F>(3, 1);
    let one = F::one();
    let r2317 = c::<F>(23, 17);
    let inc = |roman: &str, note: bool| {
        MonotonicityVerdict::fired(
            Direction::Increasing,
            format!("Corkq.{roman}.increasing"),
            note,
        )
    };
    let dec = |roman: &str, note: bool| {
        MonotonicityVerdict::fired(
            Direction::Decreasing,
            format!("Corkq.{roman}.decreasing"),
            note,
        )
    };
    // 8 / (5 (3 - k)), defined for k != 3.
    let qstar = || c::<F>(8, 5) / (three.clone() - k.clone());
    if *k > three {
        let qs = qstar();
        if *q >= zero {
            inc("i", *q == zero)
        } else if *q <= qs {
            dec("i", *q == qs)
        } else {
            MonotonicityVerdict::not_covered(false)
        }
    } else if *k == three {
        if *q >= zero {
            inc("ii", true)
        } else {
            MonotonicityVerdict::not_covered(true)
        }
    } else if *k >= r2317 {
        let qs = qstar();
        if *q >= zero && *q <= qs {
            inc("iii", *q == zero || *q == qs || *k == r2317)
        } else {
            MonotonicityVerdict::not_covered(*k == r2317)
        }
    } else if *k > one {
        if *q == zero {
            inc("iv", true)
        } else {
            MonotonicityVerdict::not_covered(false)
        }
    } else {
        let qs = qstar();
        if *q <= zero {
            inc("v", *q == zero || *k == one)
        } else if *q >= qs {
            dec("v", *q == qs || *k == one)
        } else {
            MonotonicityVerdict::not_covered(*k == one)
        }
    }
}

/// Classification on the line `p = 3q - 8/5`: increasing for `q >= 34/35`,
/// decreasing for `q <= 4/5`.
pub fn classify_boundary<F: OrderedField>(q: &F) -> MonotonicityVerdict {
    let hi = c::<F>(34, 35);
    let lo = c::<F>(4, 5);
    if *q >= hi {
        MonotonicityVerdict::fired(
            Direction::Increasing,
            "Corboundary.increasing".into(),
            *q == hi,
        )
    } else if *q <= lo {
        MonotonicityVerdict::fired(
            Direction::Decreasing,
            "Corboundary.decreasing".into(),
            *q == lo,
        )
    } else {
        MonotonicityVerdict::not_covered(false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hyp::h_pq;
    use proptest::prelude::*;

    fn r(v: f64) -> BigRational {
        exact(v).unwrap()
    }

    #[test]
    fn membership_examples() {
        let m = membership(&r(2.0), &r(1.0));
        assert!(m.in_i1 && !m.in_i2);
        assert_eq!(m.slack, ratio(3, 8));
        assert!(membership(&r(1.0), &r(1.0)).in_i2);
        assert!(membership(&r(-1.0), &r(0.0)).in_i2);
        assert!(!membership(&r(-1.0), &r(0.0)).in_omega);
        assert!(membership(&r(-1.0), &r(-0.5)).in_omega);
    }

    #[test]
    fn classify_examples() {
        let v = classify(&r(3.0), &r(1.0));
        assert_eq!(v.direction, Direction::Increasing);
        assert_eq!(v.clause, "Pmain2.i.increasing");
        let v = classify(&r(1.0), &r(1.0));
        assert_eq!(v.direction, Direction::Decreasing);
        assert_eq!(v.clause, "Pmain2.i.decreasing");
        assert!(v.boundary_note);
        assert_eq!(
            classify(&ratio(6, 5), &r(1.0)).direction,
            Direction::NotCovered
        );
    }

    #[test]
    fn gap_wedge_is_not_covered() {
        // q < p < 23q/17 for 0 < q < 34/35 is left open.
        for (p, q) in [(ratio(11, 20), ratio(1, 2)), (ratio(9, 10), ratio(7, 10))] {
            assert_eq!(classify(&p, &q).direction, Direction::NotCovered);
        }
    }

    #[test]
    fn kq_examples() {
        assert_eq!(
            classify_kq(&r(2.0), &r(1.0)).direction,
            Direction::Increasing
        );
        assert_eq!(
            classify_kq(&r(0.5), &r(1.0)).direction,
            Direction::Decreasing
        );
        assert_eq!(
            classify_kq(&r(3.0), &r(2.0)).direction,
            Direction::Increasing
        );
        assert_eq!(
            classify_kq(&r(5.0), &r(-1.0)).direction,
            Direction::Decreasing
        );
        assert_eq!(
            classify_kq(&r(1.2), &r(0.0)).direction,
            Direction::Increasing
        );
        assert_eq!(
            classify_kq(&r(1.2), &r(0.5)).direction,
            Direction::NotCovered
        );
    }

    #[test]
    fn k_equal_three_with_negative_q_is_not_monotone() {
        assert_eq!(
            classify_kq(&r(3.0), &r(-7.0)).direction,
            Direction::NotCovered
        );
        for q in [-0.5, -1.0, -7.0] {
            let xs: Vec<f64> = (0..200).map(|i| 1e-2 * 1.05f64.powi(i)).collect();
            let hs: Vec<f64> = xs
                .iter()
                .map(|&x| h_pq(x, 3.0 * q, q).unwrap().value)
                .collect();
            let rises = hs.windows(2).any(|w| w[1] > w[0]);
            let falls = hs.windows(2).any(|w| w[1] < w[0]);
            assert!(rises && falls, "q = {q}");
        }
    }

    #[test]
    fn boundary_examples() {
        assert_eq!(classify_boundary(&r(1.0)).direction, Direction::Increasing);
        assert_eq!(classify_boundary(&r(0.5)).direction, Direction::Decreasing);
        assert_eq!(classify_boundary(&r(0.9)).direction, Direction::NotCovered);
        assert!(classify_boundary(&ratio(34, 35)).boundary_note);
    }

    #[test]
    fn restatements_agree_on_exact_grid() {
        for i in 0..=100 {
            for j in 0..=100 {
                let p = ratio(-400 + 8 * i, 100);
                let q = ratio(-400 + 8 * j, 100);
                let a = classify(&p, &q).direction;
                assert_eq!(a, classify_pmain3(&p, &q).direction, "({p}, {q})");
                assert_eq!(a, classify_pmain1(&p, &q).direction, "({p}, {q})");
            }
        }
    }

    #[test]
    fn band_edges_agree() {
        for (p, q) in [
            (ratio(46, 35), ratio(34, 35)),
            (ratio(4, 5), ratio(4, 5)),
            (ratio(0, 1), ratio(8, 15)),
            (ratio(0, 1), ratio(0, 1)),
            (ratio(-8, 5), ratio(0, 1)),
            (ratio(92, 85), ratio(4, 5)),
        ] {
            assert_eq!(
                classify(&p, &q).direction,
                classify_pmain3(&p, &q).direction
            );
            assert_eq!(
                classify(&p, &q).direction,
                classify_pmain1(&p, &q).direction
            );
        }
    }

    proptest! {
        #[test]
        fn i1_i2_disjoint(p in -10.0f64..10.0, q in -10.0f64..10.0) {
            let m = membership(&r(p), &r(q));
            prop_assert!(!(m.in_i1 && m.in_i2));
        }

        #[test]
        fn specialization_consistent(k in -2.0f64..4.0, q in -3.0f64..3.0) {
            let (kr, qr) = (r(k), r(q));
            let a = classify_kq(&kr, &qr).direction;
            let b = classify(&(kr * qr.clone()), &qr).direction;
            if a != Direction::NotCovered && b != Direction::NotCovered {
                prop_assert_eq!(a, b);
            }
        }

        #[test]
        fn verdict_matches_slack_sign(p in -4.0f64..4.0, q in -4.0f64..4.0) {
            let (pr, qr) = (r(p), r(q));
            let m = membership(&pr, &qr);
            let zero = BigRational::from_integer(0.into());
            match classify(&pr, &qr).direction {
                Direction::Increasing => {
                    prop_assert!(m.in_i1 || (p == 0.0 && q == 0.0));
                    prop_assert!(m.slack >= zero);
                }
                Direction::Decreasing => {
                    prop_assert!(m.in_i2);
                    prop_assert!(m.slack <= zero);
                }
                Direction::NotCovered => {}
            }
        }

        #[test]
        fn boundary_line_matches_general(q in -3.0f64..3.0) {
            let qr = r(q);
            let p = qr.clone() * ratio(3, 1) - ratio(8, 5);
            let a = classify_boundary(&qr).direction;
            let b = classify(&p, &qr).direction;
            prop_assert_eq!(a, b);
        }
    }

    #[test]
    fn parses_exact_decimals() {
        assert_eq!(parse_exact("0.8").unwrap(), ratio(4, 5));
        assert_eq!(parse_exact("-34/35").unwrap(), ratio(-34, 35));
        assert_eq!(parse_exact("2").unwrap(), ratio(2, 1));
        assert_eq!(parse_exact("1.25e-1").unwrap(), ratio(1, 8));
        assert_eq!(parse_exact("-.5").unwrap(), ratio(-1, 2));
        assert_eq!(parse_exact("3e2").unwrap(), ratio(300, 1));
        for bad in ["", "x", "1/0", "1.2.3", "--1", "1e"] {
            assert!(parse_exact(bad).is_err(), "{bad}");
        }
    }
}
