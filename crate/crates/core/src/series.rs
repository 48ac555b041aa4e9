//! Exact integer and rational oracle for the coefficient sequences behind the
//! monotonicity argument.
//!
//! Everything here is computed in `BigInt`/`BigRational`. The closed forms for
//! `a_n`, `b_n`, `c_n`, `w_n` are cross-checked against an independent route:
//! dense power-series multiplication of the defining products
//! `A = (sinh x - x cosh x)^2 cosh x`, `B = x (x cosh x - sinh x) sinh^2 x`,
//! `C = -2x^2 cosh x + x sinh x + cosh x sinh^2 x`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

/// First index at which the expansions of `A`, `B`, `C` start.
pub const FIRST_INDEX: u32 = 3;

fn int(v: i64) -> BigInt {
    BigInt::from(v)
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(int(n), int(d))
}

fn pow9(e: u32) -> BigInt {
    num_traits::pow(int(9), e as usize)
}

/// `a_n = (4n^2 - 14n + 9) 9^(n-1) + 12n^2 - 10n - 1`.
pub fn a_n(n: u32) -> BigInt {
    let m = int(n as i64);
    (int(4) * &m * &m - int(14) * &m + 9) * pow9(n - 1) + int(12) * &m * &m - int(10) * &m - 1
}

/// `b_n = 4n(n - 2) 9^(n-1) - 4n(n - 2)`.
pub fn b_n(n: u32) -> BigInt {
    let m = int(n as i64);
    let k = int(4) * &m * (&m - 2);
    &k * pow9(n - 1) - k
}

/// `c_n = 9^n - 32n^2 + 24n - 1`.
pub fn c_n(n: u32) -> BigInt {
    let m = int(n as i64);
    pow9(n) - int(32) * &m * &m + int(24) * &m - 1
}

/// `u_n = b_(n+1) c_n - b_n c_(n+1)`.
pub fn u_n(n: u32) -> BigInt {
    b_n(n + 1) * c_n(n) - b_n(n) * c_n(n + 1)
}

/// `v_n = a_(n+1) c_n - a_n c_(n+1)`.
pub fn v_n(n: u32) -> BigInt {
    a_n(n + 1) * c_n(n) - a_n(n) * c_n(n + 1)
}

/// `w_n = 9^(3n+2) - P(n) 9^(2n) + Q(n) 9^n - 81`.
pub fn w_n(n: u32) -> BigInt {
    let m = int(n as i64);
    let m2 = &m * &m;
    let m3 = &m2 * &m;
    let m4 = &m3 * &m;
    let lo = int(1024) * &m4 - int(2560) * &m3 + int(2752) * &m2 + 243;
    let hi = int(1024) * &m4 + int(2560) * &m3 + int(2752) * &m2 + 243;
    pow9(3 * n + 2) - lo * pow9(2 * n) + hi * pow9(n) - 81
}

/// Expanded closed form for `u_n`; agrees with the determinant definition.
pub fn u_closed_form(n: u32) -> BigInt {
    let m = int(n as i64);
    let m2 = &m * &m;
    let poly = int(512) * &m2 * &m2 - int(384) * &m2 * &m - int(560) * &m2 + int(792) * &m - 36;
    int(2) * pow9(n - 1) * ((int(36) * &m - 18) * pow9(n) - poly)
        + int(4) * (int(42) * &m + int(40) * &m2 - 1)
}

/// Expanded closed form for `v_n` with the leading power written as `9^(e n)`.
///
/// The printed form uses `e = 2`; only `e = 1` reproduces the determinant
/// definition (see [`v_closed_form_printed`] and [`v_closed_form_corrected`]).
fn v_closed_form_with(n: u32, e: u32) -> BigInt {
    let m = int(n as i64);
    let m2 = &m * &m;
    let poly = int(512) * &m2 * &m2 - int(1152) * &m2 * &m + int(1072) * &m2;
    let head = int(2) * pow9(n - 1) * ((int(36) * &m - 45) * pow9(e * n) - poly);
    let tail =
        int(2) * (int(2) * (int(28) * &m + 5) * pow9(n) - (int(16) * &m2 + int(60) * &m + 5));
    head + tail
}

/// The expanded `v_n` exactly as printed, with `(36n - 45) 9^(2n)`.
pub fn v_closed_form_printed(n: u32) -> BigInt {
    v_closed_form_with(n, 2)
}

/// The expanded `v_n` with `(36n - 45) 9^n`, which matches the determinant.
pub fn v_closed_form_corrected(n: u32) -> BigInt {
    v_closed_form_with(n, 1)
}

/// Exact integers of one index of the coefficient sequences.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SeriesRecord {
    pub n: u32,
    #[serde(serialize_with = "ser_bigint")]
    pub a: BigInt,
    #[serde(serialize_with = "ser_bigint")]
    pub b: BigInt,
    #[serde(serialize_with = "ser_bigint")]
    pub c: BigInt,
    #[serde(serialize_with = "ser_bigint")]
    pub u: BigInt,
    #[serde(serialize_with = "ser_bigint")]
    pub v: BigInt,
    #[serde(serialize_with = "ser_bigint")]
    pub w: BigInt,
}

fn ser_bigint<S: serde::Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

impl SeriesRecord {
    /// `u_n / v_n` reduced.
    pub fn uv_ratio(&self) -> BigRational {
        BigRational::new(self.u.clone(), self.v.clone())
    }
}

/// All six integers at index `n`; `u`, `v` come from the determinant definitions.
pub fn coeffs(n: u32) -> Result<SeriesRecord> {
    check_index(n)?;
    Ok(SeriesRecord {
        n,
        a: a_n(n),
        b: b_n(n),
        c: c_n(n),
        u: u_n(n),
        v: v_n(n),
        w: w_n(n),
    })
}

fn check_index(n: u32) -> Result<()> {
    if n < FIRST_INDEX {
        Err(Error::domain(format!(
            "series index n = {n} must be >= {FIRST_INDEX}"
        )))
    } else {
        Ok(())
    }
}

/// Both sides of `(u_n v_(n+1) - u_(n+1) v_n) / c_(n+1) = (16/3) w_n`.
#[derive(Debug, Clone, PartialEq)]
pub struct WIdentity {
    pub n: u32,
    pub lhs: BigRational,
    pub rhs: BigRational,
    pub holds: bool,
}

pub fn identity_check_w(n: u32) -> Result<WIdentity> {
    check_index(n)?;
    let num = u_n(n) * v_n(n + 1) - u_n(n + 1) * v_n(n);
    let lhs = BigRational::new(num, c_n(n + 1));
    let rhs = rat(16, 3) * BigRational::from_integer(w_n(n));
    let holds = lhs == rhs;
    Ok(WIdentity { n, lhs, rhs, holds })
}

/// Lazily extended table of exact factorials.
#[derive(Debug, Clone)]
pub struct Factorials {
    table: Vec<BigInt>,
}

impl Default for Factorials {
    fn default() -> Self {
        Self::new()
    }
}

impl Factorials {
    pub fn new() -> Self {
        Factorials {
            table: vec![BigInt::one()],
        }
    }

    pub fn get(&mut self, n: usize) -> &BigInt {
        while self.table.len() <= n {
            let k = self.table.len();
            let next = &self.table[k - 1] * BigInt::from(k);
            self.table.push(next);
        }
        &self.table[n]
    }
}

/// Dense truncated power series in `x` with exact rational coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct PowerSeries {
    coeffs: Vec<BigRational>,
}

impl PowerSeries {
    /// Zero series holding powers `0..=degree`.
    pub fn zero(degree: usize) -> Self {
        PowerSeries {
            coeffs: vec![BigRational::zero(); degree + 1],
        }
    }

    pub fn constant(c: BigRational, degree: usize) -> Self {
        let mut s = Self::zero(degree);
        s.coeffs[0] = c;
        s
    }

    /// The monomial `x^k`.
    pub fn monomial(k: usize, degree: usize) -> Self {
        let mut s = Self::zero(degree);
        if k <= degree {
            s.coeffs[k] = BigRational::one();
        }
        s
    }

    pub fn sinh(degree: usize, fact: &mut Factorials) -> Self {
        let mut s = Self::zero(degree);
        for k in (1..=degree).step_by(2) {
            s.coeffs[k] = BigRational::new(BigInt::one(), fact.get(k).clone());
        }
        s
    }

    pub fn cosh(degree: usize, fact: &mut Factorials) -> Self {
        let mut s = Self::zero(degree);
        for k in (0..=degree).step_by(2) {
            s.coeffs[k] = BigRational::new(BigInt::one(), fact.get(k).clone());
        }
        s
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> BigRational {
        self.coeffs
            .get(k)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn coefficients(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn add(&self, other: &Self) -> Self {
        let degree = self.degree().min(other.degree());
        let coeffs = (0..=degree)
            .map(|k| &self.coeffs[k] + &other.coeffs[k])
            .collect();
        PowerSeries { coeffs }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let degree = self.degree().min(other.degree());
        let coeffs = (0..=degree)
            .map(|k| &self.coeffs[k] - &other.coeffs[k])
            .collect();
        PowerSeries { coeffs }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        PowerSeries {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Product truncated to the smaller of the two degrees.
    pub fn mul(&self, other: &Self) -> Self {
        let degree = self.degree().min(other.degree());
        let mut out = Self::zero(degree);
        for (i, a) in self.coeffs.iter().enumerate().take(degree + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(degree + 1 - i) {
                if b.is_zero() {
                    continue;
                }
                out.coeffs[i + j] += a * b;
            }
        }
        out
    }

    /// `ln(s)` for a series with constant term 1.
    pub fn ln(&self) -> Result<Self> {
        if !self.coeffs[0].is_one() {
            return Err(Error::input(
                "logarithm needs a series with constant term 1",
            ));
        }
        let degree = self.degree();
        let mut u = self.clone();
        u.coeffs[0] = BigRational::zero();
        let mut out = Self::zero(degree);
        let mut power = u.clone();
        for k in 1..=degree {
            if power.coeffs.iter().all(Zero::is_zero) {
                break;
            }
            let sign = if k % 2 == 1 { 1 } else { -1 };
            out = out.add(&power.scale(&rat(sign, k as i64)));
            power = power.mul(&u);
        }
        Ok(out)
    }

    /// `(exp(p L) - 1) / p` for a series `L` without constant term; `L` itself at `p = 0`.
    pub fn generalized_log_of_exp(&self, p: &BigRational) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::input(
                "composition needs a series without constant term",
            ));
        }
        let degree = self.degree();
        let mut out = Self::zero(degree);
        let mut power = self.clone();
        let mut weight = BigRational::one();
        for j in 1..=degree {
            if power.coeffs.iter().all(Zero::is_zero) {
                break;
            }
            out = out.add(&power.scale(&weight));
            weight = weight * p / BigRational::from_integer(BigInt::from(j + 1));
            power = power.mul(self);
        }
        Ok(out)
    }
}

/// Function whose Maclaurin coefficients a [`TaylorTable`] holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum SeriesFn {
    A,
    B,
    C,
    D,
    LnSinhc,
    LnCosh,
}

impl SeriesFn {
    pub fn tag(self) -> &'static str {
        match self {
            SeriesFn::A => "A",
            SeriesFn::B => "B",
            SeriesFn::C => "C",
            SeriesFn::D => "D",
            SeriesFn::LnSinhc => "ln_sinhc",
            SeriesFn::LnCosh => "ln_cosh",
        }
    }
}

impl fmt::Display for SeriesFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for SeriesFn {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "A" => SeriesFn::A,
            "B" => SeriesFn::B,
            "C" => SeriesFn::C,
            "D" => SeriesFn::D,
            "ln_sinhc" => SeriesFn::LnSinhc,
            "ln_cosh" => SeriesFn::LnCosh,
            other => {
                return Err(Error::UnknownName {
                    kind: "series function",
                    name: other.to_string(),
                    valid: vec!["A", "B", "C", "D", "ln_sinhc", "ln_cosh"],
                })
            }
        })
    }
}

/// Exact Maclaurin coefficients, indexed by the power of `x`.
#[derive(Debug, Clone, PartialEq)]
pub struct TaylorTable {
    pub function: SeriesFn,
    pub coefficients: Vec<BigRational>,
}

impl TaylorTable {
    pub fn coeff(&self, power: usize) -> BigRational {
        self.coefficients
            .get(power)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }
}

/// Maclaurin coefficients of `A`, `B`, `C` up to `x^(2 max_n)` by series
/// multiplication of their defining products.
pub fn taylor_abc(max_n: u32) -> Result<(TaylorTable, TaylorTable, TaylorTable)> {
    check_index(max_n)?;
    let degree = 2 * max_n as usize;
    let mut fact = Factorials::new();
    let x = PowerSeries::monomial(1, degree);
    let x2 = PowerSeries::monomial(2, degree);
    let sh = PowerSeries::sinh(degree, &mut fact);
    let ch = PowerSeries::cosh(degree, &mut fact);

    let x_ch = x.mul(&ch);
    let odd = sh.sub(&x_ch);
    let sh2 = sh.mul(&sh);

    let a = odd.mul(&odd).mul(&ch);
    let b = x.mul(&x_ch.sub(&sh)).mul(&sh2);
    let c = x2
        .mul(&ch)
        .scale(&rat(-2, 1))
        .add(&x.mul(&sh))
        .add(&ch.mul(&sh2));

    let table = |function, s: PowerSeries| TaylorTable {
        function,
        coefficients: s.coeffs,
    };
    Ok((
        table(SeriesFn::A, a),
        table(SeriesFn::B, b),
        table(SeriesFn::C, c),
    ))
}

/// `seq_n / (4 (2n)!)`, the closed-form coefficient of `x^(2n)`.
pub fn closed_form_coefficient(seq: &BigInt, n: u32, fact: &mut Factorials) -> BigRational {
    let den = int(4) * fact.get(2 * n as usize);
    BigRational::new(seq.clone(), den)
}

/// One disagreement between the multiplied-out series and a closed form.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientMismatch {
    pub function: SeriesFn,
    pub power: usize,
    pub product: BigRational,
    pub closed_form: BigRational,
}

/// Compares every coefficient of `A`, `B`, `C` up to `x^(2 max_n)` against the
/// closed forms, including the vanishing of all powers below `x^6` and of odd
/// powers. Returns the list of disagreements (empty when all agree).
pub fn cross_validate_abc(max_n: u32) -> Result<Vec<CoefficientMismatch>> {
    let (ta, tb, tc) = taylor_abc(max_n)?;
    let mut fact = Factorials::new();
    let mut bad = Vec::new();
    for (table, seq) in [(&ta, a_n as fn(u32) -> BigInt), (&tb, b_n), (&tc, c_n)] {
        for power in 0..=2 * max_n as usize {
            let expected = if power % 2 == 0 && power >= 2 * FIRST_INDEX as usize {
                let n = (power / 2) as u32;
                closed_form_coefficient(&seq(n), n, &mut fact)
            } else {
                BigRational::zero()
            };
            let got = table.coeff(power);
            if got != expected {
                bad.push(CoefficientMismatch {
                    function: table.function,
                    power,
                    product: got,
                    closed_form: expected,
                });
            }
        }
    }
    Ok(bad)
}

/// `ln(sinh x / x)` through `x^max_power`.
pub fn ln_sinhc_series(max_power: usize) -> PowerSeries {
    let mut fact = Factorials::new();
    let mut s = PowerSeries::zero(max_power);
    for k in (0..=max_power).step_by(2) {
        s.coeffs[k] = BigRational::new(BigInt::one(), fact.get(k + 1).clone());
    }
    s.ln().expect("constant term is 1")
}

/// `ln(cosh x)` through `x^max_power`.
pub fn ln_cosh_series(max_power: usize) -> PowerSeries {
    let mut fact = Factorials::new();
    PowerSeries::cosh(max_power, &mut fact)
        .ln()
        .expect("constant term is 1")
}

/// Maclaurin coefficients of `D_(p,q)(x) = Sh_p(x) - Ch_q(x)/3` through
/// `x^max_power`, for exact rational `p`, `q`.
pub fn taylor_d_to(p: &BigRational, q: &BigRational, max_power: usize) -> TaylorTable {
    let sh = ln_sinhc_series(max_power)
        .generalized_log_of_exp(p)
        .expect("no constant term");
    let ch = ln_cosh_series(max_power)
        .generalized_log_of_exp(q)
        .expect("no constant term");
    let d = sh.sub(&ch.scale(&rat(1, 3)));
    TaylorTable {
        function: SeriesFn::D,
        coefficients: d.coeffs,
    }
}

/// Coefficients of `D_(p,q)` through `x^6`.
pub fn taylor_d(p: &BigRational, q: &BigRational) -> TaylorTable {
    taylor_d_to(p, q, 6)
}

/// `(5p - 15q + 8) / 360`, the printed `x^4` coefficient of `D_(p,q)`.
pub fn d_x4_closed_form(p: &BigRational, q: &BigRational) -> BigRational {
    (p * rat(5, 1) - q * rat(15, 1) + rat(8, 1)) / rat(360, 1)
}

/// `(35p^2 - 42p - 315q^2 + 630q - 320) / 45360`, the printed `x^6` coefficient.
pub fn d_x6_closed_form(p: &BigRational, q: &BigRational) -> BigRational {
    (p * p * rat(35, 1) - p * rat(42, 1) - q * q * rat(315, 1) + q * rat(630, 1) - rat(320, 1))
        / rat(45360, 1)
}

/// `(35q - 34) / 9450`, the `x^6` coefficient on the line `p = 3q - 8/5`.
pub fn d_x6_on_boundary(q: &BigRational) -> BigRational {
    (q * rat(35, 1) - rat(34, 1)) / rat(9450, 1)
}

/// One line of the generated constants file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstantRow {
    pub function: SeriesFn,
    pub power: u32,
    pub numerator: BigInt,
    pub denominator: BigInt,
}

impl ConstantRow {
    fn from_rational(function: SeriesFn, power: u32, v: &BigRational) -> Self {
        ConstantRow {
            function,
            power,
            numerator: v.numer().clone(),
            denominator: v.denom().clone(),
        }
    }

    pub fn value(&self) -> BigRational {
        BigRational::new(self.numerator.clone(), self.denominator.clone())
    }
}

/// Highest even power carried by the small-argument series of the evaluators.
pub const SMALL_X_MAX_POWER: u32 = 20;

/// Nonzero even-power coefficients of `ln_sinhc`, `ln_cosh`, `A`, `B`, `C`
/// through `x^max_power`.
pub fn constant_rows(max_power: u32) -> Result<Vec<ConstantRow>> {
    if max_power < 2 * FIRST_INDEX {
        return Err(Error::domain(format!(
            "constants need max power >= {}",
            2 * FIRST_INDEX
        )));
    }
    let mp = max_power as usize;
    let mut rows = Vec::new();
    for (function, s) in [
        (SeriesFn::LnSinhc, ln_sinhc_series(mp)),
        (SeriesFn::LnCosh, ln_cosh_series(mp)),
    ] {
        for (power, c) in s.coefficients().iter().enumerate() {
            if !c.is_zero() {
                rows.push(ConstantRow::from_rational(function, power as u32, c));
            }
        }
    }
    let mut fact = Factorials::new();
    for (function, seq) in [
        (SeriesFn::A, a_n as fn(u32) -> BigInt),
        (SeriesFn::B, b_n),
        (SeriesFn::C, c_n),
    ] {
        for n in FIRST_INDEX..=max_power / 2 {
            let c = closed_form_coefficient(&seq(n), n, &mut fact);
            rows.push(ConstantRow::from_rational(function, 2 * n, &c));
        }
    }
    Ok(rows)
}

/// Renders rows as `function,power,numerator,denominator` lines.
pub fn render_constants_csv(rows: &[ConstantRow]) -> String {
    let mut out = String::new();
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{}\n",
            r.function, r.power, r.numerator, r.denominator
        ));
    }
    out
}

pub fn parse_constants_csv(text: &str) -> Result<Vec<ConstantRow>> {
    let mut rows = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 4 {
            return Err(Error::input(format!(
                "line {}: expected 4 fields, found {}",
                lineno + 1,
                fields.len()
            )));
        }
        let bad = |what: &str| Error::input(format!("line {}: bad {what}", lineno + 1));
        let function: SeriesFn = fields[0].parse()?;
        let power: u32 = fields[1].parse().map_err(|_| bad("power"))?;
        let numerator: BigInt = fields[2].parse().map_err(|_| bad("numerator"))?;
        let denominator: BigInt = fields[3].parse().map_err(|_| bad("denominator"))?;
        if !denominator.is_positive() {
            return Err(bad("denominator"));
        }
        rows.push(ConstantRow {
            function,
            power,
            numerator,
            denominator,
        });
    }
    Ok(rows)
}

/// Rust source of the coefficient tables consumed by the float evaluators.
///
/// Each table holds `(power_of_x, numerator, denominator)`.
pub fn render_rust_constants(rows: &[ConstantRow]) -> String {
    let mut out = String::from(
        "// @generated by `hypineq::series::render_rust_constants`; do not edit.\n\
         // Exact Maclaurin coefficients as (power of x, numerator, denominator).\n",
    );
    for (function, name) in [
        (SeriesFn::LnSinhc, "LN_SINHC"),
        (SeriesFn::LnCosh, "LN_COSH"),
        (SeriesFn::A, "A_SERIES"),
        (SeriesFn::B, "B_SERIES"),
        (SeriesFn::C, "C_SERIES"),
    ] {
        let selected: Vec<&ConstantRow> = rows.iter().filter(|r| r.function == function).collect();
        out.push_str(&format!(
            "\npub(crate) const {name}: [(u32, i128, i128); {}] = [\n",
            selected.len()
        ));
        for r in selected {
            out.push_str(&format!(
                "    ({}, {}, {}),\n",
                r.power, r.numerator, r.denominator
            ));
        }
        out.push_str("];\n");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn first_record() {
        let r = coeffs(3).unwrap();
        assert_eq!(r.a, big(320));
        assert_eq!(r.b, big(960));
        assert_eq!(r.c, big(512));
        assert_eq!(r.u, big(6_029_312));
        assert_eq!(r.v, big(4_456_448));
        assert_eq!(r.uv_ratio(), rat(23, 17));
        assert_eq!(r.w, big(10_871_635_968));
    }

    #[test]
    fn index_below_three_is_domain_error() {
        assert!(coeffs(2).unwrap_err().is_domain());
        assert!(identity_check_w(0).unwrap_err().is_domain());
        assert!(taylor_abc(2).is_err());
    }

    #[test]
    fn b4_value() {
        assert_eq!(b_n(4), big(23_296));
    }

    #[test]
    fn printed_v_closed_form_is_off_at_n3() {
        // The printed expansion carries 9^(2n) where the determinant needs 9^n.
        assert_eq!(v_closed_form_printed(3), big(5_420_903_120));
        assert_ne!(v_closed_form_printed(3), v_n(3));
        assert_eq!(v_closed_form_corrected(3), big(4_456_448));
        assert_eq!(v_closed_form_corrected(3), v_n(3));
    }

    #[test]
    fn corrected_closed_forms_match_determinants() {
        for n in 3..=60 {
            assert_eq!(v_closed_form_corrected(n), v_n(n), "v at n = {n}");
            assert_eq!(u_closed_form(n), u_n(n), "u at n = {n}");
        }
    }

    #[test]
    fn w_identity_first_indices() {
        let id = identity_check_w(3).unwrap();
        assert!(id.holds);
        assert_eq!(id.lhs, BigRational::from_integer(big(57_982_058_496)));
        for n in 3..=40 {
            assert!(identity_check_w(n).unwrap().holds, "n = {n}");
        }
    }

    #[test]
    fn c_table_examples() {
        let (ta, tb, tc) = taylor_abc(4).unwrap();
        assert_eq!(tc.coeff(6), rat(8, 45));
        assert_eq!(tb.coeff(8), rat(23_296, 161_280));
        for t in [&ta, &tb, &tc] {
            for power in 0..6 {
                assert!(t.coeff(power).is_zero(), "{} x^{power}", t.function);
            }
        }
    }

    #[test]
    fn cross_validation_small_range() {
        assert!(cross_validate_abc(12).unwrap().is_empty());
    }

    #[test]
    fn log_series_known_values() {
        let ls = ln_sinhc_series(12);
        assert_eq!(ls.coeff(2), rat(1, 6));
        assert_eq!(ls.coeff(4), rat(-1, 180));
        assert_eq!(ls.coeff(6), rat(1, 2835));
        assert_eq!(ls.coeff(12), rat(-691, 3_831_077_250));
        let lc = ln_cosh_series(12);
        assert_eq!(lc.coeff(2), rat(1, 2));
        assert_eq!(lc.coeff(4), rat(-1, 12));
        assert_eq!(lc.coeff(8), rat(-17, 2520));
        assert_eq!(lc.coeff(12), rat(-691, 935_550));
    }

    #[test]
    fn d_coefficients_at_cusa_point() {
        let one = rat(1, 1);
        let t = taylor_d(&one, &one);
        assert_eq!(t.coeff(4), rat(-1, 180));
        assert!(t.coeff(2).is_zero());
        assert_eq!(t.coeff(6), d_x6_closed_form(&one, &one));
    }

    #[test]
    fn d_coefficients_on_boundary_line() {
        for (qn, qd) in [(1, 1), (34, 35), (2, 3), (7, 5), (-3, 2)] {
            let q = rat(qn, qd);
            let p = &q * rat(3, 1) - rat(8, 5);
            let t = taylor_d(&p, &q);
            assert!(t.coeff(4).is_zero());
            assert_eq!(t.coeff(6), d_x6_on_boundary(&q));
        }
        assert!(d_x6_on_boundary(&rat(34, 35)).is_zero());
    }

    #[test]
    fn constants_csv_parses_back() {
        let rows = constant_rows(12).unwrap();
        let text = render_constants_csv(&rows);
        assert!(text.starts_with("ln_sinhc,2,1,6\n"));
        assert_eq!(parse_constants_csv(&text).unwrap(), rows);
        assert!(parse_constants_csv("A,6,1").is_err());
        assert!(parse_constants_csv("Z,6,1,2").is_err());
        assert!(parse_constants_csv("A,6,1,0").is_err());
    }

    #[test]
    fn factorial_cache() {
        let mut f = Factorials::new();
        assert_eq!(f.get(10), &big(3_628_800));
        assert_eq!(f.get(0), &big(1));
    }

    #[test]
    fn generated_tables_are_current() {
        let rows = constant_rows(SMALL_X_MAX_POWER).unwrap();
        let expected = render_rust_constants(&rows);
        let actual = include_str!("hyp/coeffs.rs");
        assert!(
            actual == expected,
            "src/hyp/coeffs.rs is stale; regenerate it with `cargo run --example regen_coeffs`:\n{expected}"
        );
    }
}
