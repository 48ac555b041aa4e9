//! Grid verification of the inequalities `Sh_p(x) >< Ch_q(x) / 3`, witness
//! search and bisection of the sharp constants.
//!
//! A grid value counts as a violation only when it is wrong by more than
//! [`MARGIN_ULPS`] units of the magnitudes being compared; smaller values are
//! counted as inconclusive. At an exact sharp constant the difference touches
//! zero as `x -> 0+`, and that must not produce a false witness.
//!
//! Some constants are sharp because of behaviour at large `x`: just past them
//! the first violation sits near `ln(1/d) / d` for a parameter offset `d`. The
//! reference grid is therefore followed by a geometric tail scan evaluated in
//! the log domain.

use std::fmt;
use std::str::FromStr;

use num_rational::Rational64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hyp::{
    self, d_series_with_scale, eval_poly, ln_boundary_raw, ln_cosh, ln_m_raw, ln_sinhc,
    ln_u_from_log, log_series_coefficients, small_x_window, u_from_log, X_SMALL,
};

/// Width of the inconclusive band, in units of `f64::EPSILON` times the
/// magnitude of the compared quantities.
pub const MARGIN_ULPS: f64 = 64.0;

/// Default bisection tolerance in parameter space.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Maximum number of bisection steps.
pub const MAX_ITERATIONS: u32 = 60;

const TAIL_START: f64 = 60.0;
const TAIL_RATIO: f64 = 1.1;
const TAIL_END: f64 = 1e12;

/// Direction of the comparison between `Sh_p` and `Ch_q / 3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Relation {
    /// `Sh_p(x) > Ch_q(x) / 3`, that is `D_{p,q}(x) > 0`.
    ShGreater,
    /// `Sh_p(x) < Ch_q(x) / 3`, that is `D_{p,q}(x) < 0`.
    ShLess,
}

impl Relation {
    fn sign(self) -> f64 {
        match self {
            Relation::ShGreater => 1.0,
            Relation::ShLess => -1.0,
        }
    }

    pub fn tag(self) -> &'static str {
        match self {
            Relation::ShGreater => "gt",
            Relation::ShLess => "lt",
        }
    }
}

impl FromStr for Relation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "gt" => Ok(Relation::ShGreater),
            "lt" => Ok(Relation::ShLess),
            other => Err(Error::UnknownName {
                kind: "direction",
                name: other.to_string(),
                valid: vec!["gt", "lt"],
            }),
        }
    }
}

/// The difference whose sign is tested.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Target {
    /// `D_{p,q}(x) = Sh_p(x) - Ch_q(x) / 3`.
    Shp { p: f64, q: f64 },
    /// `ln(sinh x / x) - ln(cosh x) / q`, positive exactly when
    /// `(sinh x / x)^q > cosh x` for `q > 0`.
    Lazarevic { q: f64 },
}

impl Target {
    fn validate(&self) -> Result<()> {
        match *self {
            Target::Shp { p, q } => {
                hyp::ParamPair::new(p, q)?;
            }
            Target::Lazarevic { q } => {
                if !(q.is_finite() && q > 0.0) {
                    return Err(Error::domain(format!(
                        "the exponent form needs q > 0, got {q}"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Log-spaced `x` grid, optionally followed by the geometric tail scan.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Grid {
    pub lo: f64,
    pub hi: f64,
    pub n: usize,
    pub tail: bool,
}

impl Grid {
    /// 2000 log-spaced points on `[1e-4, 60]` plus the tail scan.
    pub fn reference() -> Self {
        Grid {
            lo: 1e-4,
            hi: 60.0,
            n: 2000,
            tail: true,
        }
    }

    pub fn log(lo: f64, hi: f64, n: usize) -> Result<Self> {
        let g = Grid {
            lo,
            hi,
            n,
            tail: false,
        };
        g.validate()?;
        Ok(g)
    }

    pub fn with_tail(mut self, tail: bool) -> Self {
        self.tail = tail;
        self
    }

    /// The same range with `factor` times as many points.
    pub fn densified(self, factor: usize) -> Self {
        Grid {
            n: self.n * factor,
            ..self
        }
    }

    fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::input("grid has no points"));
        }
        if !(self.lo.is_finite() && self.hi.is_finite() && self.lo > 0.0 && self.hi >= self.lo) {
            return Err(Error::input(format!(
                "grid needs 0 < lo <= hi, got lo = {}, hi = {}",
                self.lo, self.hi
            )));
        }
        Ok(())
    }

    pub fn points(&self) -> Vec<f64> {
        log_space(self.lo, self.hi, self.n)
    }

    pub fn spec(&self) -> String {
        let base = format!("log:{}:{}:{}", self.lo, self.hi, self.n);
        if self.tail {
            format!("{base}+tail:{TAIL_START}*{TAIL_RATIO}^k..{TAIL_END:e}")
        } else {
            base
        }
    }
}

impl FromStr for Grid {
    type Err = Error;

    /// Parses `log:LO:HI:N`.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let bad = || Error::input(format!("grid `{s}` is not of the form log:LO:HI:N"));
        if parts.len() != 4 || parts[0] != "log" {
            return Err(bad());
        }
        let lo: f64 = parts[1].parse().map_err(|_| bad())?;
        let hi: f64 = parts[2].parse().map_err(|_| bad())?;
        let n: usize = parts[3].parse().map_err(|_| bad())?;
        Grid::log(lo, hi, n)
    }
}

fn log_space(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![lo];
    }
    let (a, b) = (lo.ln(), hi.ln());
    (0..n)
        .map(|i| {
            if i == 0 {
                lo
            } else if i == n - 1 {
                hi
            } else {
                (a + (b - a) * i as f64 / (n - 1) as f64).exp()
            }
        })
        .collect()
}

fn tail_points() -> Vec<f64> {
    let mut out = Vec::new();
    let mut x = TAIL_START * TAIL_RATIO;
    while x <= TAIL_END {
        out.push(x);
        x *= TAIL_RATIO;
    }
    out
}

/// One signed evaluation: `g > 0` means the inequality holds at `x`, and
/// `tol` is the half-width of the inconclusive band.
#[derive(Debug, Clone, Copy, PartialEq)]
struct Sample {
    g: f64,
    tol: f64,
    /// `g` is a difference of logarithms rather than of the values.
    log_domain: bool,
}

impl Sample {
    fn violates(&self) -> bool {
        self.g < -self.tol
    }

    fn inconclusive(&self) -> bool {
        self.g.abs() <= self.tol
    }
}

/// Evaluates a target with its small-`x` coefficients computed once.
struct Evaluator {
    target: Target,
    sign: f64,
    series: Vec<f64>,
    series_scale: Vec<f64>,
}

impl Evaluator {
    fn new(target: Target, relation: Relation) -> Self {
        let (series, series_scale) = match target {
            Target::Shp { p, q } => d_series_with_scale(p, q),
            Target::Lazarevic { q } => {
                let (ls, lc) = log_series_coefficients::<f64>();
                let d = ls.iter().zip(&lc).map(|(a, b)| a - b / q).collect();
                let s = ls
                    .iter()
                    .zip(&lc)
                    .map(|(a, b)| a.abs() + (b / q).abs())
                    .collect();
                (d, s)
            }
        };
        Evaluator {
            target,
            sign: relation.sign(),
            series,
            series_scale,
        }
    }

    fn band(scale: f64) -> f64 {
        MARGIN_ULPS * f64::EPSILON * scale
    }

    fn sample(&self, x: f64) -> Sample {
        match self.target {
            Target::Shp { p, q } => {
                if small_x_window(x, p, q) {
                    let y = x * x;
                    return Sample {
                        g: self.sign * eval_poly(&self.series, y),
                        tol: Self::band(eval_poly(&self.series_scale, y)),
                        log_domain: false,
                    };
                }
                let (ls, lc) = (ln_sinhc(x), ln_cosh(x));
                let ln_s = ln_u_from_log(ls, p);
                let ln_c3 = ln_u_from_log(lc, q) - 3f64.ln();
                if ln_s.max(ln_c3) < 700.0 {
                    let s = u_from_log(ls, p).0;
                    let c3 = u_from_log(lc, q).0 / 3.0;
                    Sample {
                        g: self.sign * (s - c3),
                        tol: Self::band(s.abs().max(c3.abs())),
                        log_domain: false,
                    }
                } else {
                    Sample {
                        g: self.sign * (ln_s - ln_c3),
                        tol: Self::band(ln_s.abs().max(ln_c3.abs()).max(1.0)),
                        log_domain: true,
                    }
                }
            }
            Target::Lazarevic { q } => {
                if x < X_SMALL {
                    let y = x * x;
                    Sample {
                        g: self.sign * eval_poly(&self.series, y),
                        tol: Self::band(eval_poly(&self.series_scale, y)),
                        log_domain: false,
                    }
                } else {
                    let (ls, lc) = (ln_sinhc(x), ln_cosh(x) / q);
                    Sample {
                        g: self.sign * (ls - lc),
                        tol: Self::band(ls.abs().max(lc.abs())),
                        log_domain: false,
                    }
                }
            }
        }
    }

    /// `D` at `x` (or the Lazarevic difference) and the log gap
    /// `ln Sh - ln(Ch/3)`, for reporting.
    fn report_values(&self, x: f64) -> (Option<f64>, Option<f64>) {
        match self.target {
            Target::Shp { p, q } => {
                let d = hyp::d_pq(x, p, q)
                    .ok()
                    .map(|v| v.value)
                    .filter(|v| v.is_finite());
                let gap = ln_u_from_log(ln_sinhc(x), p) - ln_u_from_log(ln_cosh(x), q) + 3f64.ln();
                (d, Some(gap).filter(|v| v.is_finite()))
            }
            Target::Lazarevic { q } => (Some(ln_sinhc(x) - ln_cosh(x) / q), None),
        }
    }
}

/// Result of checking an inequality over a grid.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InequalityVerdict {
    pub holds: bool,
    /// A point where the inequality fails by more than the inconclusive band.
    pub witness_x: Option<f64>,
    /// The defining difference at the witness (`D_{p,q}` for `Shp` targets),
    /// when representable.
    pub witness_difference: Option<f64>,
    /// `ln Sh_p - ln(Ch_q / 3)` at the witness.
    pub witness_log_gap: Option<f64>,
    /// Signed minimum of the difference (oriented so that positive means the
    /// inequality holds) over the grid points evaluated without logarithms.
    pub margin: f64,
    pub margin_x: f64,
    /// Number of grid points inside the inconclusive band.
    pub inconclusive: usize,
    pub grid_spec: String,
}

/// Checks `target` in direction `relation` over `grid`.
pub fn verify(target: Target, relation: Relation, grid: &Grid) -> Result<InequalityVerdict> {
    target.validate()?;
    grid.validate()?;
    let ev = Evaluator::new(target, relation);
    let xs = grid.points();
    let mut margin = f64::INFINITY;
    let mut margin_x = xs[0];
    let mut inconclusive = 0;
    let mut worst: Option<(usize, f64)> = None;
    let samples: Vec<Sample> = xs.iter().map(|&x| ev.sample(x)).collect();
    for (i, s) in samples.iter().enumerate() {
        if s.inconclusive() {
            inconclusive += 1;
        }
        if !s.log_domain && s.g < margin {
            margin = s.g;
            margin_x = xs[i];
        }
        if s.violates() && !s.log_domain && worst.is_none_or(|(_, g)| s.g < g) {
            worst = Some((i, s.g));
        }
    }
    let mut witness = worst.map(|(i, _)| refine_witness(&ev, &xs, i));
    if witness.is_none() {
        // A violation only visible in the log domain, inside the grid.
        witness = samples
            .iter()
            .zip(&xs)
            .find(|(s, _)| s.violates())
            .map(|(_, &x)| x);
    }
    if witness.is_none() && grid.tail {
        for x in tail_points() {
            let s = ev.sample(x);
            if s.inconclusive() {
                inconclusive += 1;
            }
            if s.violates() {
                witness = Some(x);
                break;
            }
        }
    }
    if margin == f64::INFINITY {
        margin = f64::NAN;
    }
    let (witness_difference, witness_log_gap) = match witness {
        Some(x) => ev.report_values(x),
        None => (None, None),
    };
    Ok(InequalityVerdict {
        holds: witness.is_none(),
        witness_x: witness,
        witness_difference,
        witness_log_gap,
        margin,
        margin_x,
        inconclusive,
        grid_spec: grid.spec(),
    })
}

/// Golden-section search for the most negative `g` between the neighbours of
/// grid point `i`; returns a point that still violates.
fn refine_witness(ev: &Evaluator, xs: &[f64], i: usize) -> f64 {
    let lo = xs[i.saturating_sub(1)];
    let hi = xs[(i + 1).min(xs.len() - 1)];
    let g = |u: f64| ev.sample(u.exp()).g;
    let u = golden_section_min(g, lo.ln(), hi.ln(), 1e-10, 100);
    let best = u.exp();
    let s = ev.sample(best);
    if s.violates() && s.g <= ev.sample(xs[i]).g {
        best
    } else {
        xs[i]
    }
}

/// Minimizer of a unimodal `f` on `[a, b]` by golden-section search.
pub fn golden_section_min(
    f: impl Fn(f64) -> f64,
    mut a: f64,
    mut b: f64,
    tol: f64,
    max_iter: usize,
) -> f64 {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..max_iter {
        if (b - a).abs() <= tol * (1.0 + a.abs().max(b.abs())) {
            break;
        }
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    if fc < fd {
        c
    } else {
        d
    }
}

/// Coarse-to-fine search for a violation over `[lo, hi]`: log grids of 200,
/// 800 and 3200 points, each refined by golden-section around the worst point.
/// When `hi` reaches the start of the tail scan, the last pass includes it.
pub fn find_counterexample(
    target: Target,
    relation: Relation,
    lo: f64,
    hi: f64,
) -> Result<Option<f64>> {
    for n in [200, 800, 3200] {
        let grid = Grid::log(lo, hi, n)?.with_tail(n == 3200 && hi >= TAIL_START);
        let v = verify(target, relation, &grid)?;
        if let Some(x) = v.witness_x {
            return Ok(Some(x));
        }
    }
    Ok(None)
}

/// `ln |difference|` of the target at `x`, computed from logarithms so that it
/// stays finite where `Sh_p` or `Ch_q` overflow.
pub fn ln_abs_difference(target: Target, x: f64) -> Result<f64> {
    target.validate()?;
    hyp::EvalPoint::new(x)?;
    Ok(match target {
        Target::Shp { p, q } => {
            if small_x_window(x, p, q) {
                let (d, _) = d_series_with_scale(p, q);
                eval_poly(&d, x * x).abs().ln()
            } else {
                let ln_s = ln_u_from_log(ln_sinhc(x), p);
                let ln_c3 = ln_u_from_log(ln_cosh(x), q) - 3f64.ln();
                ln_s.max(ln_c3) + (-(-(ln_s - ln_c3).abs()).exp_m1()).ln()
            }
        }
        Target::Lazarevic { q } => (ln_sinhc(x) - ln_cosh(x) / q).abs().ln(),
    })
}

/// Limit at infinity predicted for `D_{p,q}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum Asymptote {
    /// `e^{-qx} D` (for `p, q >= 0`) or `D` tends to `+inf`.
    PlusInfinity,
    MinusInfinity,
    Finite(f64),
}

/// Observed value at `x = 50` against the predicted limit.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AsymptoteReport {
    /// `scaled` when the observed quantity is `e^{-qx} D(x)`, `plain` for `D(x)`.
    pub quantity: &'static str,
    pub x: f64,
    pub observed: f64,
    pub predicted: Asymptote,
}

/// Evaluation point of the asymptotic checks.
pub const ASYMPTOTE_X: f64 = 50.0;

/// `e^{-qx} D_{p,q}(x)` at `x = 50` when `p, q >= 0`, otherwise `D_{p,q}(50)`,
/// together with the limit predicted for `x -> inf`.
pub fn verify_asymptote(p: f64, q: f64) -> Result<AsymptoteReport> {
    hyp::ParamPair::new(p, q)?;
    let x = ASYMPTOTE_X;
    let d = hyp::d_pq(x, p, q)?.value;
    if p >= 0.0 && q >= 0.0 {
        let predicted = if p > q || q == 0.0 {
            Asymptote::PlusInfinity
        } else {
            Asymptote::Finite(-(2f64.powf(-q)) / (3.0 * q))
        };
        Ok(AsymptoteReport {
            quantity: "scaled",
            x,
            observed: (-q * x).exp() * d,
            predicted,
        })
    } else {
        let predicted = if p >= 0.0 {
            Asymptote::PlusInfinity
        } else if q >= 0.0 {
            Asymptote::MinusInfinity
        } else {
            Asymptote::Finite(1.0 / (3.0 * q) - 1.0 / p)
        };
        Ok(AsymptoteReport {
            quantity: "plain",
            x,
            observed: d,
            predicted,
        })
    }
}

/// Named inequality chains.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Chain {
    /// `cosh^{1/3} x < (1/3 + 2/3 cosh x)^{1/2} < ... < sinh x / x < 2/3 + 1/3 cosh x`.
    Mi2a,
    /// `1/3 ln cosh x + 1 < 2 cosh^{1/6} x - 1 < ... < sinh x / x < 2/3 + 1/3 cosh x`.
    Mi3b,
    /// The family `p = 3q - 8/5` from `q = inf` down to `q = 8/15`.
    Mt5,
}

impl Chain {
    pub const ALL: [Chain; 3] = [Chain::Mi2a, Chain::Mi3b, Chain::Mt5];

    pub fn name(self) -> &'static str {
        match self {
            Chain::Mi2a => "mi2a-chain",
            Chain::Mi3b => "mi3b-chain",
            Chain::Mt5 => "mt5-chain",
        }
    }

    /// Member labels in increasing order.
    pub fn members(self) -> Vec<String> {
        self.member_fns().into_iter().map(|(n, _)| n).collect()
    }

    #[allow(clippy::type_complexity)]
    fn member_fns(self) -> Vec<(String, Box<dyn Fn(f64) -> f64>)> {
        let sinhc: (String, Box<dyn Fn(f64) -> f64>) =
            ("sinh(x)/x".to_string(), Box::new(ln_sinhc::<f64>));
        let m = |p: f64, q: f64, label: &str| -> (String, Box<dyn Fn(f64) -> f64>) {
            (
                label.to_string(),
                Box::new(move |x: f64| ln_m_raw(ln_cosh(x), p, q).0),
            )
        };
        let b = |q: f64, label: &str| -> (String, Box<dyn Fn(f64) -> f64>) {
            (
                label.to_string(),
                Box::new(move |x: f64| ln_boundary_raw(ln_cosh(x), q)),
            )
        };
        match self {
            Chain::Mi2a => vec![
                m(3.0, 1.0, "M(t;3,1)"),
                m(2.0, 1.0, "M(t;2,1)"),
                m(1.5, 1.0, "M(t;3/2,1)"),
                m(1.4, 1.0, "M(t;7/5,1)"),
                sinhc,
                m(1.0, 1.0, "M(t;1,1)"),
            ],
            Chain::Mi3b => vec![
                m(1.0, 0.0, "M(t;1,0)"),
                m(1.0, 1.0 / 6.0, "M(t;1,1/6)"),
                m(1.0, 1.0 / 3.0, "M(t;1,1/3)"),
                m(1.0, 0.5, "M(t;1,1/2)"),
                m(1.0, 2.0 / 3.0, "M(t;1,2/3)"),
                m(1.0, 17.0 / 23.0, "M(t;1,17/23)"),
                sinhc,
                m(1.0, 1.0, "M(t;1,1)"),
            ],
            Chain::Mt5 => vec![
                ("t^(1/3)".to_string(), Box::new(|x: f64| ln_cosh(x) / 3.0)),
                b(2.0, "B(t;2)"),
                b(1.6, "B(t;8/5)"),
                b(1.2, "B(t;6/5)"),
                b(16.0 / 15.0, "B(t;16/15)"),
                b(1.0, "B(t;1)"),
                b(34.0 / 35.0, "B(t;34/35)"),
                sinhc,
                b(0.8, "B(t;4/5)"),
                b(0.7, "B(t;7/10)"),
                b(2.0 / 3.0, "B(t;2/3)"),
                b(0.6, "B(t;3/5)"),
                b(8.0 / 15.0, "B(t;8/15)"),
            ],
        }
    }
}

impl FromStr for Chain {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Chain::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::UnknownName {
                kind: "chain",
                name: s.to_string(),
                valid: Chain::ALL.iter().map(|c| c.name()).collect(),
            })
    }
}

/// Result of checking a chain of strict inequalities.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChainVerdict {
    pub chain: &'static str,
    pub holds: bool,
    /// First `x` with a non-positive adjacent gap.
    pub witness_x: Option<f64>,
    /// Smallest adjacent gap, measured as a difference of logarithms.
    pub tightest_gap: f64,
    pub tightest_x: f64,
    /// Labels of the two members forming the tightest gap.
    pub tightest_pair: (String, String),
    pub members: Vec<String>,
}

/// Checks that every adjacent pair of the chain is strictly ordered at every
/// grid point. Members are compared through their logarithms, which keeps
/// members such as `exp(5 (t^{8/15} - 1) / 8)` finite at large `x`.
pub fn verify_chain(chain: Chain, xs: &[f64]) -> Result<ChainVerdict> {
    if xs.is_empty() {
        return Err(Error::input("chain grid has no points"));
    }
    for &x in xs {
        hyp::EvalPoint::new(x)?;
    }
    let members = chain.member_fns();
    let mut tightest = (f64::INFINITY, xs[0], 0usize);
    let mut witness = None;
    for &x in xs {
        let vals: Vec<f64> = members.iter().map(|(_, f)| f(x)).collect();
        for (j, w) in vals.windows(2).enumerate() {
            let gap = w[1] - w[0];
            if gap < tightest.0 {
                tightest = (gap, x, j);
            }
            // A NaN gap counts as a failure.
            if gap.partial_cmp(&0.0) != Some(std::cmp::Ordering::Greater) && witness.is_none() {
                witness = Some(x);
            }
        }
    }
    let names: Vec<String> = members.iter().map(|(n, _)| n.clone()).collect();
    Ok(ChainVerdict {
        chain: chain.name(),
        holds: witness.is_none(),
        witness_x: witness,
        tightest_gap: tightest.0,
        tightest_x: tightest.1,
        tightest_pair: (names[tightest.2].clone(), names[tightest.2 + 1].clone()),
        members: names,
    })
}

/// Threshold families recovered by bisection.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "family", content = "q", rename_all = "kebab-case")]
pub enum Family {
    /// `D_{p,1} > 0` iff `p >= 7/5`.
    Q1Lower,
    /// `D_{0,q} < 0` iff `q >= 8/15`.
    P0Upper,
    /// `D_{1,q} < 0` iff `q >= 1`.
    P1Upper,
    /// `D_{q,q} < 0` iff `q >= 4/5`.
    KqUpperK1,
    /// `D_{3q/2,q} > 0` iff `q <= 16/15`.
    KqLowerK15,
    /// `D_{2q,q} > 0` iff `q <= 8/5`.
    KqLowerK2,
    /// `D_{3q-8/5,q} > 0` iff `q >= 34/35`.
    BoundaryLower,
    /// `D_{3q-8/5,q} < 0` iff `q <= 4/5`.
    BoundaryUpper,
    /// `(sinh x / x)^q > cosh x` iff `q >= 3`.
    LazarevicExponent,
    /// Smallest `p` with `D_{p,q} > 0` at a fixed `q`; only
    /// sufficiency of `p >= 23q/17` is proved here, so the frontier is empirical.
    Mt2LowerEmpirical(f64),
}

impl Family {
    /// The families with a proved sharp constant.
    pub const SHARP: [Family; 9] = [
        Family::KqUpperK1,
        Family::KqLowerK15,
        Family::KqLowerK2,
        Family::BoundaryLower,
        Family::BoundaryUpper,
        Family::Q1Lower,
        Family::P0Upper,
        Family::P1Upper,
        Family::LazarevicExponent,
    ];

    pub const NAMES: [&'static str; 10] = [
        "q1-lower",
        "p0-upper",
        "p1-upper",
        "kq-upper-k1",
        "kq-lower-k1.5",
        "kq-lower-k2",
        "boundary-lower",
        "boundary-upper",
        "lazarevic-exponent",
        "mt2-lower-empirical",
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Q1Lower => "q1-lower",
            Family::P0Upper => "p0-upper",
            Family::P1Upper => "p1-upper",
            Family::KqUpperK1 => "kq-upper-k1",
            Family::KqLowerK15 => "kq-lower-k1.5",
            Family::KqLowerK2 => "kq-lower-k2",
            Family::BoundaryLower => "boundary-lower",
            Family::BoundaryUpper => "boundary-upper",
            Family::LazarevicExponent => "lazarevic-exponent",
            Family::Mt2LowerEmpirical(_) => "mt2-lower-empirical",
        }
    }

    /// Parses a family name; `mt2-lower-empirical` takes its `q` from `q`.
    pub fn parse(name: &str, q: Option<f64>) -> Result<Self> {
        Ok(match name {
            "q1-lower" => Family::Q1Lower,
            "p0-upper" => Family::P0Upper,
            "p1-upper" => Family::P1Upper,
            "kq-upper-k1" => Family::KqUpperK1,
            "kq-lower-k1.5" => Family::KqLowerK15,
            "kq-lower-k2" => Family::KqLowerK2,
            "boundary-lower" => Family::BoundaryLower,
            "boundary-upper" => Family::BoundaryUpper,
            "lazarevic-exponent" => Family::LazarevicExponent,
            "mt2-lower-empirical" => {
                let q = q.ok_or_else(|| Error::input("mt2-lower-empirical needs a value for q"))?;
                if !(q.is_finite() && q > 0.0 && q < 34.0 / 35.0) {
                    return Err(Error::domain(format!(
                        "mt2-lower-empirical is defined for 0 < q < 34/35, got {q}"
                    )));
                }
                Family::Mt2LowerEmpirical(q)
            }
            other => {
                return Err(Error::UnknownName {
                    kind: "family",
                    name: other.to_string(),
                    valid: Family::NAMES.to_vec(),
                })
            }
        })
    }

    /// Exact proved value, if the constant is sharp.
    pub fn paper_value(self) -> Option<Rational64> {
        let r = Rational64::new;
        match self {
            Family::Q1Lower => Some(r(7, 5)),
            Family::P0Upper => Some(r(8, 15)),
            Family::P1Upper => Some(r(1, 1)),
            Family::KqUpperK1 => Some(r(4, 5)),
            Family::KqLowerK15 => Some(r(16, 15)),
            Family::KqLowerK2 => Some(r(8, 5)),
            Family::BoundaryLower => Some(r(34, 35)),
            Family::BoundaryUpper => Some(r(4, 5)),
            Family::LazarevicExponent => Some(r(3, 1)),
            Family::Mt2LowerEmpirical(_) => None,
        }
    }

    /// A search interval around the threshold on which the predicate is monotone.
    pub fn default_interval(self) -> (f64, f64) {
        match self {
            Family::Q1Lower => (1.0, 2.0),
            Family::P0Upper => (0.3, 1.0),
            Family::P1Upper => (0.8, 1.5),
            Family::KqUpperK1 => (0.3, 2.0),
            Family::KqLowerK15 => (0.5, 2.0),
            Family::KqLowerK2 => (1.0, 2.5),
            Family::BoundaryLower => (0.9, 1.1),
            Family::BoundaryUpper => (0.6, 0.9),
            Family::LazarevicExponent => (2.0, 4.0),
            Family::Mt2LowerEmpirical(q) => (q, 3.0 * q + 1.0),
        }
    }

    /// Whether the inequality holds above (rather than below) the threshold.
    pub fn holds_above(self) -> bool {
        !matches!(
            self,
            Family::KqLowerK15 | Family::KqLowerK2 | Family::BoundaryUpper
        )
    }

    /// The inequality tested at parameter value `s`.
    pub fn instance(self, s: f64) -> (Target, Relation) {
        use Relation::{ShGreater, ShLess};
        match self {
            Family::Q1Lower => (Target::Shp { p: s, q: 1.0 }, ShGreater),
            Family::P0Upper => (Target::Shp { p: 0.0, q: s }, ShLess),
            Family::P1Upper => (Target::Shp { p: 1.0, q: s }, ShLess),
            Family::KqUpperK1 => (Target::Shp { p: s, q: s }, ShLess),
            Family::KqLowerK15 => (Target::Shp { p: 1.5 * s, q: s }, ShGreater),
            Family::KqLowerK2 => (Target::Shp { p: 2.0 * s, q: s }, ShGreater),
            Family::BoundaryLower => (
                Target::Shp {
                    p: 3.0 * s - 1.6,
                    q: s,
                },
                ShGreater,
            ),
            Family::BoundaryUpper => (
                Target::Shp {
                    p: 3.0 * s - 1.6,
                    q: s,
                },
                ShLess,
            ),
            Family::LazarevicExponent => (Target::Lazarevic { q: s }, ShGreater),
            Family::Mt2LowerEmpirical(q) => (Target::Shp { p: s, q }, ShGreater),
        }
    }

    /// The parameter moved by `delta` from `threshold` to the side where the
    /// inequality fails.
    pub fn past_threshold(self, threshold: f64, delta: f64) -> f64 {
        if self.holds_above() {
            threshold - delta
        } else {
            threshold + delta
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Outcome of a threshold bisection.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SharpnessResult {
    pub family: String,
    pub threshold: f64,
    /// Exact proved constant as `n/d`, absent for empirical families.
    pub paper_value: Option<String>,
    pub abs_error: Option<f64>,
    pub iterations: u32,
    /// `paper-sharp` when the paper proves the constant best possible,
    /// `empirical` otherwise.
    pub label: &'static str,
    pub interval: (f64, f64),
    pub tol: f64,
}

/// Whether the family's inequality holds at parameter `s` on the reference grid.
pub fn family_holds(family: Family, s: f64) -> Result<bool> {
    let (target, relation) = family.instance(s);
    Ok(verify(target, relation, &Grid::reference())?.holds)
}

/// Bisects the reference-grid predicate of `family` on `[lo, hi]`.
pub fn find_threshold(family: Family, lo: f64, hi: f64, tol: f64) -> Result<SharpnessResult> {
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(Error::input(format!(
            "search interval needs lo < hi, got [{lo}, {hi}]"
        )));
    }
    if !(tol.is_finite() && tol > 0.0) {
        return Err(Error::input(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    let lo_holds = family_holds(family, lo)?;
    let hi_holds = family_holds(family, hi)?;
    if lo_holds == hi_holds {
        return Err(Error::NotMonotone {
            lo,
            hi,
            lo_holds,
            hi_holds,
        });
    }
    let (mut a, mut b) = (lo, hi);
    let mut iterations = 0;
    while b - a > tol && iterations < MAX_ITERATIONS {
        let mid = 0.5 * (a + b);
        if family_holds(family, mid)? == lo_holds {
            a = mid;
        } else {
            b = mid;
        }
        iterations += 1;
    }
    let threshold = 0.5 * (a + b);
    let exact = family.paper_value();
    Ok(SharpnessResult {
        family: family.name().to_string(),
        threshold,
        paper_value: exact.map(|r| format!("{}/{}", r.numer(), r.denom())),
        abs_error: exact.map(|r| (threshold - *r.numer() as f64 / *r.denom() as f64).abs()),
        iterations,
        label: if exact.is_some() {
            "paper-sharp"
        } else {
            "empirical"
        },
        interval: (lo, hi),
        tol,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn shp(p: f64, q: f64) -> Target {
        Target::Shp { p, q }
    }

    #[test]
    fn classical_inequalities_hold() {
        let g = Grid::reference();
        assert!(
            verify(shp(3.0, 1.0), Relation::ShGreater, &g)
                .unwrap()
                .holds
        );
        assert!(verify(shp(1.0, 1.0), Relation::ShLess, &g).unwrap().holds);
        assert!(
            verify(shp(0.0, 0.0), Relation::ShGreater, &g)
                .unwrap()
                .holds
        );
        assert!(
            verify(Target::Lazarevic { q: 3.0 }, Relation::ShGreater, &g)
                .unwrap()
                .holds
        );
    }

    #[test]
    fn failing_verdict_has_violating_witness() {
        let v = verify(shp(1.0, 1.0), Relation::ShGreater, &Grid::reference()).unwrap();
        assert!(!v.holds);
        let x = v.witness_x.unwrap();
        assert!(hyp::d_pq(x, 1.0, 1.0).unwrap().value < 0.0);
        assert!(v.margin < 0.0);
    }

    #[test]
    fn empty_grid_is_input_error() {
        assert!("log:1:2:0".parse::<Grid>().is_err());
        assert!("lin:1:2:3".parse::<Grid>().is_err());
        assert!(verify_chain(Chain::Mi2a, &[]).is_err());
        let g: Grid = "log:0.001:30:50".parse().unwrap();
        assert_eq!(g.points().len(), 50);
        assert_eq!(g.spec(), "log:0.001:30:50");
    }

    #[test]
    fn exact_threshold_is_not_a_false_witness() {
        for fam in Family::SHARP {
            let t = fam.paper_value().unwrap();
            let s = *t.numer() as f64 / *t.denom() as f64;
            assert!(family_holds(fam, s).unwrap(), "{fam}");
        }
    }

    #[test]
    fn counterexample_near_zero_and_none_for_lazarevic() {
        let q = 0.79;
        let w = find_counterexample(shp(q, q), Relation::ShLess, 1e-4, 60.0).unwrap();
        assert!(w.is_some());
        assert!(
            find_counterexample(shp(3.0, 1.0), Relation::ShGreater, 1e-4, 60.0)
                .unwrap()
                .is_none()
        );
        let q = 34.0 / 35.0 - 0.01;
        let w = find_counterexample(shp(3.0 * q - 1.6, q), Relation::ShGreater, 1e-4, 60.0)
            .unwrap()
            .unwrap();
        assert!(w < 5.0);
    }

    #[test]
    fn bisection_recovers_kq_upper() {
        let r = find_threshold(Family::KqUpperK1, 0.3, 2.0, DEFAULT_TOL).unwrap();
        assert!(r.abs_error.unwrap() <= 1e-6, "{r:?}");
        assert_eq!(r.label, "paper-sharp");
    }

    #[test]
    fn bisection_rejects_non_monotone_interval() {
        let e = find_threshold(Family::KqUpperK1, 1.0, 2.0, DEFAULT_TOL).unwrap_err();
        assert!(matches!(
            e,
            Error::NotMonotone {
                lo_holds: true,
                hi_holds: true,
                ..
            }
        ));
    }

    #[test]
    fn asymptotes() {
        let r = verify_asymptote(0.5, 1.0).unwrap();
        assert!((r.observed + 1.0 / 6.0).abs() < 1e-4);
        let r = verify_asymptote(-1.0, -2.0).unwrap();
        assert_eq!(r.predicted, Asymptote::Finite(5.0 / 6.0));
        assert!((r.observed - 5.0 / 6.0).abs() < 1e-6);
        let r = verify_asymptote(1.0, -1.0).unwrap();
        assert!(r.observed > 1e6);
        assert_eq!(
            verify_asymptote(-1.0, 1.0).unwrap().predicted,
            Asymptote::MinusInfinity
        );
    }

    #[test]
    fn chains_hold() {
        let xs = [0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 20.0];
        for c in Chain::ALL {
            let v = verify_chain(c, &xs).unwrap();
            assert!(v.holds, "{:?}", v);
            assert!(v.tightest_gap > 0.0);
        }
        let tiny = verify_chain(Chain::Mi2a, &[1e-3]).unwrap();
        assert!(tiny.tightest_gap < 1e-9);
    }

    #[test]
    fn golden_section_finds_minimum() {
        let x = golden_section_min(|u| (u - 0.3).powi(2), -1.0, 2.0, 1e-12, 200);
        assert!((x - 0.3).abs() < 1e-6);
    }

    #[test]
    fn family_names_round_trip() {
        for name in Family::NAMES {
            let f = Family::parse(name, Some(0.5)).unwrap();
            assert_eq!(f.name(), name);
        }
        assert!(matches!(
            Family::parse("nope", None),
            Err(Error::UnknownName { .. })
        ));
        assert!(Family::parse("mt2-lower-empirical", None).is_err());
    }
}
