//! `hypineq`: evaluate, classify, verify and reproduce the sharp constants
//! from the command line. Every subcommand prints one JSON report on stdout.
//!
//! Exit codes: 0 success, 1 usage or input error, 2 domain error,
//! 3 acceptance failure.

mod report;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hypineq::lab::{self, Family, Grid, Relation, Target};
use hypineq::means::{self, Mean};
use hypineq::region::{self, MonotonicityVerdict};
use hypineq::{acceptance, hyp, series, Error, Rational};
use serde_json::{json, Value};

use report::{number, to_value, Report};

#[derive(Parser)]
#[command(
    name = "hypineq",
    version,
    about = "Workbench for inequalities between sinh(x)/x and cosh(x)"
)]
struct Cli {
    /// Print a human-readable rendering instead of JSON.
    #[arg(long, global = true)]
    pretty: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one function.
    Eval(EvalArgs),
    /// Classify the monotonicity of H_{p,q}.
    Classify(ClassifyArgs),
    /// Check Sh_p(x) > Ch_q(x)/3 (gt) or < (lt) over a grid.
    Verify(VerifyArgs),
    /// Recover a sharp constant by bisection.
    Sharp(SharpArgs),
    /// Exact coefficient sequences a_n, b_n, c_n, u_n, v_n, w_n.
    Series(SeriesArgs),
    /// Bivariate means of a pair.
    Means(MeansArgs),
    /// Run a test suite.
    Report(ReportArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Func {
    U,
    Sinhc,
    Sh,
    Ch,
    H,
    D,
    F2,
    F3,
    Abc,
    M,
    Mboundary,
}

impl Func {
    fn name(self) -> &'static str {
        match self {
            Func::U => "u",
            Func::Sinhc => "sinhc",
            Func::Sh => "sh",
            Func::Ch => "ch",
            Func::H => "h",
            Func::D => "d",
            Func::F2 => "f2",
            Func::F3 => "f3",
            Func::Abc => "abc",
            Func::M => "m",
            Func::Mboundary => "mboundary",
        }
    }
}

#[derive(Args)]
struct EvalArgs {
    #[arg(long = "fn", value_enum)]
    func: Func,
    #[arg(long, allow_negative_numbers = true)]
    p: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    q: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    x: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    t: Option<f64>,
}

#[derive(Args)]
struct ClassifyArgs {
    /// Exact value such as 0.8, 4/5 or -1e-3.
    #[arg(long, allow_hyphen_values = true)]
    p: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    q: String,
    /// Classify the pair (kq, q) by the bands in k.
    #[arg(long, allow_hyphen_values = true)]
    kq: Option<String>,
    /// Classify the pair (3q - 8/5, q).
    #[arg(long)]
    boundary: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Dir {
    Gt,
    Lt,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, allow_negative_numbers = true)]
    p: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    q: f64,
    #[arg(long, value_enum)]
    dir: Dir,
    /// log:LO:HI:N; defaults to the reference grid with the tail scan.
    #[arg(long)]
    grid: Option<String>,
    /// Append the geometric tail scan up to x = 1e12.
    #[arg(long)]
    tail: bool,
    /// Test (sinh x / x)^q > cosh x instead; --p is not used.
    #[arg(long)]
    lazarevic: bool,
}

#[derive(Args)]
struct SharpArgs {
    #[arg(long)]
    family: String,
    #[arg(long, allow_negative_numbers = true)]
    lo: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    hi: Option<f64>,
    #[arg(long, default_value_t = lab::DEFAULT_TOL)]
    tol: f64,
    /// Fixed q of the empirical family.
    #[arg(long)]
    q: Option<f64>,
}

#[derive(Args)]
struct SeriesArgs {
    #[arg(long, default_value_t = 3)]
    from: u32,
    #[arg(long, default_value_t = 40)]
    to: u32,
    /// Write the constants file (function,power,numerator,denominator) through x^(2 to).
    #[arg(long)]
    emit: Option<PathBuf>,
}

#[derive(Args)]
struct MeansArgs {
    #[arg(long, allow_negative_numbers = true)]
    a: f64,
    #[arg(long, allow_negative_numbers = true)]
    b: f64,
    /// One of g, a, q, l, sb, ns, v, sh; all when omitted.
    #[arg(long)]
    mean: Option<String>,
    #[arg(long, allow_negative_numbers = true, requires = "shq")]
    shp: Option<f64>,
    #[arg(long, allow_negative_numbers = true, requires = "shp")]
    shq: Option<f64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Acceptance,
}

#[derive(Args)]
struct ReportArgs {
    #[arg(long, value_enum)]
    suite: Suite,
}

/// Why a run did not succeed.
enum Failure {
    Usage(String),
    Domain(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Domain(_) | Error::NotMonotone { .. } => Failure::Domain(e.to_string()),
            Error::Input(_) | Error::UnknownName { .. } => Failure::Usage(e.to_string()),
        }
    }
}

type Outcome = Result<(Report, bool), Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let outcome = match cli.command {
        Command::Eval(a) => eval(a),
        Command::Classify(a) => classify(a),
        Command::Verify(a) => verify(a),
        Command::Sharp(a) => sharp(a),
        Command::Series(a) => series_cmd(a),
        Command::Means(a) => means_cmd(a),
        Command::Report(a) => report_cmd(a),
    };
    match outcome {
        Ok((report, ok)) => {
            println!("{}", report.render(cli.pretty).trim_end());
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(3)
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn need(v: Option<f64>, flag: &str, func: Func) -> Result<f64, Failure> {
    v.ok_or_else(|| Failure::Usage(format!("eval --fn {} needs --{flag}", func.name())))
}

fn eval(a: EvalArgs) -> Outcome {
    let mut r = Report::new("eval");
    r.input("fn", a.func.name());
    r.input_opt("p", a.p);
    r.input_opt("q", a.q);
    r.input_opt("x", a.x);
    r.input_opt("t", a.t);
    let f = a.func;
    let (uses_p, uses_q, uses_x, uses_t) = match f {
        Func::U => (true, false, false, true),
        Func::Sinhc | Func::Abc => (false, false, true, false),
        Func::Sh => (true, false, true, false),
        Func::Ch => (false, true, true, false),
        Func::H | Func::D | Func::F2 | Func::F3 => (true, true, true, false),
        Func::M => (true, true, false, true),
        Func::Mboundary => (false, true, false, true),
    };
    for (used, given, flag) in [
        (uses_p, a.p.is_some(), "p"),
        (uses_q, a.q.is_some(), "q"),
        (uses_x, a.x.is_some(), "x"),
        (uses_t, a.t.is_some(), "t"),
    ] {
        if given && !used {
            r.note(format!("--{flag} is not used by --fn {}", f.name()));
        }
    }
    let value = match f {
        Func::U => hyp::u_p(need(a.t, "t", f)?, need(a.p, "p", f)?)?,
        Func::Sinhc => hyp::sinhc(need(a.x, "x", f)?)?,
        Func::Sh => hyp::sh_p(need(a.x, "x", f)?, need(a.p, "p", f)?)?,
        Func::Ch => hyp::ch_q(need(a.x, "x", f)?, need(a.q, "q", f)?)?,
        Func::H => hyp::h_pq(need(a.x, "x", f)?, need(a.p, "p", f)?, need(a.q, "q", f)?)?,
        Func::D => hyp::d_pq(need(a.x, "x", f)?, need(a.p, "p", f)?, need(a.q, "q", f)?)?,
        Func::F2 => hyp::f2_eval(need(a.x, "x", f)?, need(a.p, "p", f)?, need(a.q, "q", f)?)?,
        Func::F3 => hyp::f3_eval(need(a.x, "x", f)?, need(a.p, "p", f)?, need(a.q, "q", f)?)?,
        Func::M => hyp::m_bound(need(a.t, "t", f)?, need(a.p, "p", f)?, need(a.q, "q", f)?)?,
        Func::Mboundary => hyp::m_boundary_family(need(a.t, "t", f)?, need(a.q, "q", f)?)?,
        Func::Abc => {
            r.results = to_value(hyp::abc_eval(need(a.x, "x", f)?)?);
            return Ok((r, true));
        }
    };
    r.results = to_value(value);
    Ok((r, true))
}

fn verdict_json(v: &MonotonicityVerdict) -> Value {
    to_value(v)
}

fn rational_json(v: &Rational) -> Value {
    json!({
        "exact": format!("{}/{}", v.numer(), v.denom()),
        "value": number(region::approx(v)),
    })
}

fn classify(a: ClassifyArgs) -> Outcome {
    let mut r = Report::new("classify");
    r.input_opt("p", a.p.as_deref());
    r.input("q", &a.q);
    r.input_opt("kq", a.kq.as_deref());
    r.input("boundary", a.boundary);
    if a.kq.is_some() && a.boundary {
        return Err(Failure::Usage(
            "--kq and --boundary are mutually exclusive".into(),
        ));
    }
    let q = region::parse_exact(&a.q)?;
    let k = a.kq.as_deref().map(region::parse_exact).transpose()?;
    let derived = if let Some(k) = &k {
        Some(k * &q)
    } else if a.boundary {
        Some(Rational::from_integer(3.into()) * &q - region::ratio(8, 5))
    } else {
        None
    };
    let p = match (&derived, a.p.as_deref()) {
        (Some(d), given) => {
            if given.is_some() {
                r.note("--p is replaced by the value implied by --kq or --boundary");
            }
            d.clone()
        }
        (None, Some(s)) => region::parse_exact(s)?,
        (None, None) => {
            return Err(Failure::Usage(
                "classify needs --p unless --kq or --boundary is given".into(),
            ))
        }
    };
    let m = region::membership(&p, &q);
    let mut results = json!({
        "p": rational_json(&p),
        "q": rational_json(&q),
        "pmain2": verdict_json(&region::classify(&p, &q)),
        "pmain3": verdict_json(&region::classify_pmain3(&p, &q)),
        "pmain1": verdict_json(&region::classify_pmain1(&p, &q)),
        "membership": {
            "in_i1": m.in_i1,
            "in_i2": m.in_i2,
            "in_omega": m.in_omega,
            "slack": rational_json(&m.slack),
        },
    });
    if let Some(k) = &k {
        results["kq"] = verdict_json(&region::classify_kq(k, &q));
    }
    if a.boundary {
        results["boundary"] = verdict_json(&region::classify_boundary(&q));
    }
    r.results = results;
    Ok((r, true))
}

fn verify(a: VerifyArgs) -> Outcome {
    let mut r = Report::new("verify");
    let grid = match &a.grid {
        Some(spec) => spec.parse::<Grid>()?.with_tail(a.tail),
        None => Grid::reference(),
    };
    let target = if a.lazarevic {
        if a.p.is_some() {
            r.note("--p is not used with --lazarevic");
        }
        Target::Lazarevic { q: a.q }
    } else {
        let p = a
            .p
            .ok_or_else(|| Failure::Usage("verify needs --p unless --lazarevic is given".into()))?;
        Target::Shp { p, q: a.q }
    };
    let relation = match a.dir {
        Dir::Gt => Relation::ShGreater,
        Dir::Lt => Relation::ShLess,
    };
    r.input_opt("p", a.p);
    r.input("q", a.q);
    r.input("dir", relation.tag());
    r.input("grid", format!("log:{}:{}:{}", grid.lo, grid.hi, grid.n));
    r.input("tail", grid.tail);
    r.input("lazarevic", a.lazarevic);
    let v = lab::verify(target, relation, &grid)?;
    if v.inconclusive > 0 {
        r.note(format!(
            "{} grid points lie within the inconclusive band of {} ulps",
            v.inconclusive,
            lab::MARGIN_ULPS
        ));
    }
    r.results = to_value(&v);
    Ok((r, true))
}

fn sharp(a: SharpArgs) -> Outcome {
    let mut r = Report::new("sharp");
    let fam = Family::parse(&a.family, a.q)?;
    let (dlo, dhi) = fam.default_interval();
    let (lo, hi) = (a.lo.unwrap_or(dlo), a.hi.unwrap_or(dhi));
    r.input("family", fam.name());
    r.input("lo", lo);
    r.input("hi", hi);
    r.input("tol", a.tol);
    r.input_opt("q", a.q);
    if a.q.is_some() && !matches!(fam, Family::Mt2LowerEmpirical(_)) {
        r.note(format!("--q is not used by {}", fam.name()));
    }
    let s = lab::find_threshold(fam, lo, hi, a.tol)?;
    if s.paper_value.is_none() {
        r.note("only a sufficient condition is proved here; the threshold is empirical");
    }
    r.results = to_value(&s);
    Ok((r, true))
}

fn series_cmd(a: SeriesArgs) -> Outcome {
    let mut r = Report::new("series");
    r.input("from", a.from);
    r.input("to", a.to);
    r.input_opt("emit", a.emit.as_ref().map(|p| p.display().to_string()));
    if a.from > a.to {
        return Err(Failure::Usage(format!(
            "--from {} exceeds --to {}",
            a.from, a.to
        )));
    }
    let mut rows = Vec::new();
    for n in a.from..=a.to {
        let rec = series::coeffs(n)?;
        let ratio = rec.uv_ratio();
        let mut v = to_value(&rec);
        v["u_over_v"] = json!(format!("{}/{}", ratio.numer(), ratio.denom()));
        rows.push(v);
    }
    let mut results = json!({ "records": rows });
    if let Some(path) = &a.emit {
        let consts = series::constant_rows(2 * a.to)?;
        fs::write(path, series::render_constants_csv(&consts))
            .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))?;
        results["emitted"] = json!({ "path": path.display().to_string(), "rows": consts.len(), "max_power": 2 * a.to });
    }
    r.results = results;
    Ok((r, true))
}

fn means_cmd(a: MeansArgs) -> Outcome {
    let mut r = Report::new("means");
    r.input("a", a.a);
    r.input("b", a.b);
    r.input_opt("mean", a.mean.as_deref());
    r.input_opt("shp", a.shp);
    r.input_opt("shq", a.shq);
    let sh = a.shp.zip(a.shq);
    let which: Vec<Mean> = match &a.mean {
        Some(name) => vec![name.parse()?],
        None => Mean::ALL
            .into_iter()
            .filter(|m| *m != Mean::Sh || sh.is_some())
            .collect(),
    };
    if sh.is_some() && !which.contains(&Mean::Sh) {
        r.note("--shp and --shq are only used by the sh mean");
    }
    let mut out = Vec::new();
    for m in which {
        out.push(to_value(means::mean(m, a.a, a.b, sh)?));
    }
    r.results = json!({ "means": out });
    Ok((r, true))
}

fn report_cmd(a: ReportArgs) -> Outcome {
    let mut r = Report::new("report");
    r.input(
        "suite",
        match a.suite {
            Suite::Acceptance => "acceptance",
        },
    );
    let reports = acceptance::run_battery()?;
    let failed: Vec<u32> = reports.iter().filter(|c| !c.passed).map(|c| c.id).collect();
    for id in &failed {
        r.note(format!("criterion {id} failed"));
    }
    r.results = json!({
        "passed": reports.len() - failed.len(),
        "total": reports.len(),
        "criteria": to_value(&reports),
    });
    Ok((r, failed.is_empty()))
}
