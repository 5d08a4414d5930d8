//! `qpoisson`: evaluate q-series, polynomials and Poisson kernels, and run identity checks.

mod config;
mod output;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, ValueEnum};
use qpoisson::kernels::{self, KernelParams, Truncation};
use qpoisson::polys::{self, Angle, MuParams, ParamSet};
use qpoisson::qcore::{self, QBase};
use qpoisson::qseries::{self, PhiSpec};
use qpoisson::report::CheckReport;
use qpoisson::verify::{self, SuiteConfig};
use qpoisson::{standard, Complex64, SeriesValue, TruncationPolicy};
use rayon::prelude::*;
use serde_json::{json, Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Command {
    Eval,
    Kernel,
    Check,
    Suite,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Parser, Debug)]
#[command(
    name = "qpoisson",
    version,
    args_override_self = true,
    about = "q-series, Askey-Wilson polynomials, Poisson kernels and identity checks"
)]
struct Args {
    /// eval | kernel | check | suite
    #[arg(value_enum)]
    cmd: Option<Command>,
    /// Eval target, kernel id or identity id
    name: Option<String>,
    #[arg(long = "command", value_enum)]
    command: Option<Command>,
    /// Same as the positional name
    #[arg(long)]
    target: Option<String>,
    /// key = value file pre-binding any flag; flags on the command line win
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    q: Option<f64>,
    /// a,b,c,d (fewer for degenerate families)
    #[arg(long, allow_hyphen_values = true)]
    lambda: Option<String>,
    /// alpha,beta,gamma,delta
    #[arg(long, allow_hyphen_values = true)]
    mu: Option<String>,
    /// re[,im]
    #[arg(long, allow_hyphen_values = true)]
    t: Option<String>,
    /// Angle or comma list of angles in radians; wins over --x
    #[arg(long, allow_hyphen_values = true)]
    theta: Option<String>,
    /// Angle or comma list of angles in radians; wins over --y
    #[arg(long, allow_hyphen_values = true)]
    phi: Option<String>,
    /// Abscissa cos(theta), or a comma list
    #[arg(long, allow_hyphen_values = true)]
    x: Option<String>,
    /// Abscissa cos(phi), or a comma list
    #[arg(long, allow_hyphen_values = true)]
    y: Option<String>,
    /// Degree, or number of terms for truncated kernel sums
    #[arg(long)]
    n: Option<usize>,
    /// Second degree, for aw_inner
    #[arg(long)]
    m: Option<usize>,
    /// Complex argument re[,im] of qpoch_inf, qpoch_n, h and W
    #[arg(long, allow_hyphen_values = true)]
    a: Option<String>,
    /// Complex argument re[,im] of phi and W
    #[arg(long, allow_hyphen_values = true)]
    z: Option<String>,
    /// Comma list of complex numerator parameters, e.g. 0.3,0.1+0.2i
    #[arg(long, allow_hyphen_values = true)]
    num: Option<String>,
    /// Comma list of complex denominator parameters
    #[arg(long, allow_hyphen_values = true)]
    den: Option<String>,
    /// Kernel variant: unity (dual_qhahn, asc), norm (asc, bigqh), norm_alt (asc)
    #[arg(long)]
    variant: Option<String>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Comma list of identity families; "none" or "" selects nothing
    #[arg(long, allow_hyphen_values = true)]
    only: Option<String>,
    /// id=value tolerance override, repeatable
    #[arg(long)]
    tol: Vec<String>,
}

enum Failure {
    Usage(String),
    Lib(qpoisson::Error),
}

impl From<qpoisson::Error> for Failure {
    fn from(e: qpoisson::Error) -> Self {
        Failure::Lib(e)
    }
}

impl Failure {
    fn line(&self) -> String {
        match self {
            Failure::Usage(msg) => format!("ERROR Usage {msg}"),
            Failure::Lib(e) => {
                let invariant = match e {
                    qpoisson::Error::ConstraintViolated { invariant } => invariant.clone(),
                    qpoisson::Error::InvalidParameter { name, invariant } => format!("{name}: {invariant}"),
                    other => other.to_string(),
                };
                format!("ERROR {} {invariant}", e.code())
            }
        }
    }
}

type Res<T> = Result<T, Failure>;

type PointFn = Box<dyn FnMut(&Angle, &Angle) -> Res<Point>>;

fn usage<T>(msg: impl Into<String>) -> Res<T> {
    Err(Failure::Usage(msg.into()))
}

struct Outcome {
    text: String,
    passed: bool,
}

fn reals(s: &str, flag: &str) -> Res<Vec<f64>> {
    s.split(',').map(|v| v.trim().parse::<f64>().or_else(|_| usage(format!("--{flag}: cannot parse {v:?} as a number")))).collect()
}

/// `re` or `re,im`.
fn complex(s: &str, flag: &str) -> Res<Complex64> {
    match reals(s, flag)?.as_slice() {
        [re] => Ok(Complex64::new(*re, 0.0)),
        [re, im] => Ok(Complex64::new(*re, *im)),
        _ => usage(format!("--{flag}: expected re[,im]")),
    }
}

fn complex_list(s: &str, flag: &str) -> Res<Vec<Complex64>> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|v| Complex64::from_str(v.trim()).or_else(|_| usage(format!("--{flag}: cannot parse {v:?} as a complex number"))))
        .collect()
}

fn real_t(t: Complex64) -> Res<f64> {
    if t.im != 0.0 {
        return usage("--t: this kernel takes a real t");
    }
    Ok(t.re)
}

fn need<'a>(v: &'a Option<String>, flag: &str) -> Res<&'a str> {
    v.as_deref().map_or_else(|| usage(format!("missing --{flag}")), Ok)
}

impl Args {
    fn q(&self) -> Res<QBase> {
        Ok(QBase::new(self.q.unwrap_or(standard::Q))?)
    }

    fn params(&self, v: &Option<String>, flag: &str, default: &[f64]) -> Res<Vec<f64>> {
        v.as_deref().map_or_else(|| Ok(default.to_vec()), |s| reals(s, flag))
    }

    fn lambda(&self, default: &[f64]) -> Res<ParamSet> {
        Ok(ParamSet::new(&self.params(&self.lambda, "lambda", default)?, self.q()?)?)
    }

    fn mu(&self, default: &[f64]) -> Res<ParamSet> {
        Ok(ParamSet::new(&self.params(&self.mu, "mu", default)?, self.q()?)?)
    }

    fn t(&self) -> Res<Complex64> {
        complex(need(&self.t, "t")?, "t")
    }

    fn n(&self) -> Res<usize> {
        self.n.map_or_else(|| usage("missing --n"), Ok)
    }

    /// Angles from the θ-type flag, or else from the abscissa flag.
    fn angles(&self, first: bool) -> Res<Vec<Angle>> {
        let (th, x, th_flag, x_flag) = if first { (&self.theta, &self.x, "theta", "x") } else { (&self.phi, &self.y, "phi", "y") };
        if let Some(s) = th {
            reals(s, th_flag)?.into_iter().map(|v| Ok(Angle::from_theta(v)?)).collect()
        } else if let Some(s) = x {
            reals(s, x_flag)?.into_iter().map(|v| Ok(Angle::from_x(v)?)).collect()
        } else {
            usage(format!("missing --{th_flag} or --{x_flag}"))
        }
    }

    fn angle(&self) -> Res<Angle> {
        match self.angles(true)?.as_slice() {
            [a] => Ok(*a),
            _ => usage("expected a single angle"),
        }
    }
}

fn series(target: &str, v: SeriesValue) -> Value {
    json!({ "target": target, "value": output::complex(v.value), "terms_used": v.terms_used, "tail_estimate": v.tail_estimate })
}

fn exact(target: &str, value: Complex64, terms_used: Option<usize>) -> Value {
    let tail = terms_used.map(|_| 0.0);
    json!({ "target": target, "value": output::complex(value), "terms_used": terms_used, "tail_estimate": tail })
}

fn eval(args: &Args, target: &str) -> Res<Value> {
    let policy = TruncationPolicy::default();
    let re = |x: f64| Complex64::new(x, 0.0);
    Ok(match target {
        "aw_poly" => {
            let (n, lam, at) = (args.n()?, args.lambda(&standard::LAMBDA)?, args.angle()?);
            exact(target, polys::aw_poly_at(n, &at, &lam)?, Some(n + 1))
        }
        "aw_weight" => exact(target, re(polys::aw_weight(args.angle()?.x(), &args.lambda(&standard::LAMBDA)?)?), None),
        "aw_inner" => {
            let (m, n, lam) = (args.m.map_or_else(|| usage("missing --m"), Ok)?, args.n()?, args.lambda(&standard::LAMBDA)?);
            let f = |x: f64| -> qpoisson::Result<Complex64> { Ok(polys::aw_poly(m, x, &lam)? * polys::aw_poly(n, x, &lam)?) };
            let w = verify::Weight::AskeyWilson(lam.clone());
            exact(target, verify::integrate_weighted(f, &w, &verify::QuadratureConfig::default())?, None)
        }
        "aw_norm" => exact(target, re(polys::aw_norm(args.n()?, &args.lambda(&standard::LAMBDA)?)?), None),
        "cont_qhermite" => {
            let n = args.n()?;
            exact(target, re(polys::cont_qhermite(n, args.angle()?.x(), args.q()?)?), Some(n + 1))
        }
        "qpoch_inf" => series(target, qcore::qpoch_inf(complex(need(&args.a, "a")?, "a")?, args.q()?, &policy)?),
        "qpoch_n" => {
            let n = args.n()?;
            let a = complex(need(&args.a, "a")?, "a")?;
            let a = if a.is_finite() { a } else { return Err(qpoisson::Error::NonFinite("a").into()) };
            exact(target, qcore::qpoch_n(a, args.q()?, n), Some(n))
        }
        "h" => series(target, qcore::h_factor(args.angle()?.x(), complex(need(&args.a, "a")?, "a")?, args.q()?, &policy)?),
        "phi" => {
            let num = complex_list(args.num.as_deref().unwrap_or(""), "num")?;
            let den = complex_list(args.den.as_deref().unwrap_or(""), "den")?;
            let z = complex(need(&args.z, "z")?, "z")?;
            series(target, qseries::eval_phi(&PhiSpec::new(num, den, z, args.q()?), &policy)?)
        }
        "W" => {
            let a = complex(need(&args.a, "a")?, "a")?;
            let bs = complex_list(need(&args.num, "num")?, "num")?;
            let z = complex(need(&args.z, "z")?, "z")?;
            series(target, qseries::eval_w(a, &bs, z, args.q()?, &policy)?)
        }
        other => {
            return usage(format!(
            "unknown eval target {other:?}; expected aw_poly, aw_weight, aw_inner, aw_norm, cont_qhermite, qpoch_inf, qpoch_n, h, phi or W"
        ))
        }
    })
}

fn eval_csv(v: &Value) -> String {
    let cell = |v: &Value| match v {
        Value::Number(n) => n.as_u64().map_or_else(|| output::number(n.as_f64().unwrap_or(f64::NAN)), |u| u.to_string()),
        Value::Null => String::new(),
        other => other.to_string(),
    };
    let row = vec![cell(&v["value"]["re"]), cell(&v["value"]["im"]), cell(&v["terms_used"]), cell(&v["tail_estimate"])];
    output::csv(&["re", "im", "terms_used", "tail_estimate"], [row])
}

struct Point {
    a: f64,
    b: f64,
    value: Complex64,
    extra: Map<String, Value>,
}

impl Point {
    fn new(a: f64, b: f64, value: Complex64) -> Self {
        Point { a, b, value, extra: Map::new() }
    }
}

fn variant<'a>(args: &'a Args, allowed: &[&str]) -> Res<&'a str> {
    let v = args.variant.as_deref().unwrap_or("plain");
    if allowed.contains(&v) {
        Ok(v)
    } else {
        usage(format!("--variant: expected one of {}", allowed.join(", ")))
    }
}

fn kernel(args: &Args, id: &str) -> Res<(Vec<Point>, [&'static str; 2])> {
    const ANGLES: [&str; 2] = ["theta", "phi"];
    if id == "mehler" {
        let t = real_t(args.t()?)?;
        let xs = reals(need(&args.x, "x")?, "x")?;
        let ys = reals(need(&args.y, "y")?, "y")?;
        let mut out = Vec::new();
        for &x in &xs {
            for &y in &ys {
                let v = match args.n {
                    Some(n) => kernels::mehler_series(x, y, t, n)?,
                    None => kernels::mehler_kernel(x, y, t)?,
                };
                out.push(Point::new(x, y, Complex64::new(v, 0.0)));
            }
        }
        return Ok((out, ["x", "y"]));
    }
    let q = args.q()?;
    let (xs, ys) = (args.angles(true)?, args.angles(false)?);
    let trunc = args.n.map_or(Truncation::Auto(TruncationPolicy::default()), Truncation::Terms);
    let mut eval_at: PointFn = match id {
        "direct" | "explicit" => {
            let lam = args.lambda(&standard::LAMBDA)?;
            let mu = MuParams::new(&args.params(&args.mu, "mu", &standard::MU)?, &lam)?;
            let kp = KernelParams::new(lam, mu, args.t()?)?;
            if id == "direct" {
                Box::new(move |x, y| {
                    let v = kernels::kernel_direct_with(x, y, &kp, &trunc)?;
                    let mut p = Point::new(x.theta(), y.theta(), v.value);
                    p.extra.insert("terms_used".into(), json!(v.terms_used));
                    p.extra.insert("tail_estimate".into(), json!(v.tail_estimate));
                    Ok(p)
                })
            } else {
                Box::new(move |x, y| {
                    let v = kernels::kernel_explicit(x, y, &kp)?;
                    let mut p = Point::new(x.theta(), y.theta(), v.value);
                    if let Some(parts) = v.parts {
                        p.extra.insert("parts".into(), Value::Array(parts.iter().map(|&z| output::complex(z)).collect()));
                    }
                    p.extra.insert("terms".into(), json!(v.terms));
                    Ok(p)
                })
            }
        }
        "unity" => {
            let lam = args.lambda(&standard::LAMBDA)?;
            let mu = MuParams::for_unity(&args.params(&args.mu, "mu", &standard::MU_UNITY)?, &lam)?;
            Box::new(move |x, y| Ok(Point::new(x.theta(), y.theta(), kernels::kernel_unity(x, y, &lam, &mu)?)))
        }
        "qhermite" => {
            let r = real_t(args.t()?)?;
            let n = args.n;
            Box::new(move |x, y| {
                let v = match n {
                    Some(n) => kernels::qhermite_poisson_series(x, y, r, q, n)?,
                    None => kernels::qhermite_poisson(x, y, r, q)?,
                };
                Ok(Point::new(x.theta(), y.theta(), Complex64::new(v, 0.0)))
            })
        }
        "dual_qhahn" => {
            let unity = variant(args, &["plain", "unity"])? == "unity";
            let lam = args.lambda(&[0.4, 0.3, 0.2])?;
            let mu = args.mu(if unity { &[0.32, 0.24, 0.25] } else { &[0.32, 0.2, 0.25] })?;
            let t = if unity { Complex64::new(1.0, 0.0) } else { args.t()? };
            Box::new(move |x, y| {
                let v = if unity {
                    kernels::dual_qhahn_kernel_unity(x, y, &lam, &mu)?
                } else {
                    kernels::dual_qhahn_kernel(x, y, &lam, &mu, t)?
                };
                Ok(Point::new(x.theta(), y.theta(), v))
            })
        }
        "asc" => {
            let which = variant(args, &["plain", "norm", "norm_alt", "unity"])?;
            let (lam, mu) = (args.lambda(&[0.4, 0.3])?, args.mu(&[0.24, 0.5])?);
            let t = if which == "unity" { Complex64::new(1.0, 0.0) } else { args.t()? };
            let which = which.to_string();
            Box::new(move |x, y| {
                let v = match which.as_str() {
                    "norm" => kernels::asc_kernel_norm(x, y, &lam, &mu, t)?,
                    "norm_alt" => kernels::asc_kernel_norm_alt(x, y, &lam, &mu, t)?,
                    "unity" => kernels::asc_kernel_unity(x, y, &lam, &mu)?,
                    _ => kernels::asc_kernel(x, y, &lam, &mu, t)?,
                };
                Ok(Point::new(x.theta(), y.theta(), v))
            })
        }
        "bigqh" => {
            let norm = variant(args, &["plain", "norm"])? == "norm";
            let (lam, mu) = (args.lambda(&[0.4])?, args.mu(&[0.3])?);
            let (a, alpha, t) = (lam.get(0), mu.get(0), args.t()?);
            Box::new(move |x, y| {
                let v = if norm { kernels::bigqh_kernel_norm(x, y, a, alpha, q, t)? } else { kernels::bigqh_kernel(x, y, a, alpha, q, t)? };
                Ok(Point::new(x.theta(), y.theta(), v))
            })
        }
        "qbessel" => {
            let alpha = args.mu(&[0.3])?.get(0);
            let t = args.t()?;
            Box::new(move |x, y| Ok(Point::new(x.theta(), y.theta(), kernels::qhermite_qbessel_kernel(x, y, alpha, q, t)?)))
        }
        other => {
            return usage(format!(
                "unknown kernel {other:?}; expected direct, explicit, unity, mehler, qhermite, dual_qhahn, asc, bigqh or qbessel"
            ))
        }
    };
    let mut out = Vec::new();
    for x in &xs {
        for y in &ys {
            out.push(eval_at(x, y)?);
        }
    }
    Ok((out, ANGLES))
}

fn kernel_output(id: &str, points: &[Point], axes: [&str; 2], format: Format) -> String {
    match format {
        Format::Csv => output::csv(
            &[axes[0], axes[1], "re", "im"],
            points.iter().map(|p| vec![output::number(p.a), output::number(p.b), output::number(p.value.re), output::number(p.value.im)]),
        ),
        Format::Json => {
            let obj = |p: &Point| {
                let mut m = Map::new();
                m.insert("kernel".into(), json!(id));
                m.insert(axes[0].into(), json!(p.a));
                m.insert(axes[1].into(), json!(p.b));
                m.insert("value".into(), output::complex(p.value));
                m.extend(p.extra.clone());
                Value::Object(m)
            };
            let v = match points {
                [p] => obj(p),
                many => Value::Array(many.iter().map(obj).collect()),
            };
            output::to_json(&v) + "\n"
        }
    }
}

fn suite_config(args: &Args, only: Option<Vec<String>>) -> Res<SuiteConfig> {
    let mut tolerances = Vec::new();
    for entry in &args.tol {
        let Some((id, v)) = entry.rsplit_once('=') else {
            return usage(format!("--tol: expected id=value, got {entry:?}"));
        };
        let v = v.trim().parse::<f64>().or_else(|_| usage(format!("--tol: cannot parse {v:?} as a number")))?;
        tolerances.push((id.trim().to_string(), v));
    }
    Ok(SuiteConfig { seed: args.seed, only, tolerances, ..SuiteConfig::default() })
}

fn run_cases(cfg: &SuiteConfig) -> Res<Vec<CheckReport>> {
    let cases = verify::cases(cfg)?;
    let reports = cases.par_iter().map(verify::run_case).collect();
    Ok(verify::finalize(cfg, reports))
}

fn reports_output(reports: &[CheckReport], format: Format) -> Outcome {
    let text = match format {
        Format::Json => output::to_json(&Value::Array(reports.iter().map(output::report).collect())) + "\n",
        Format::Csv => output::csv(&output::REPORT_HEADER, reports.iter().map(output::report_row)),
    };
    Outcome { text, passed: reports.iter().all(|r| r.passed) }
}

fn run(args: &Args) -> Res<Outcome> {
    let Some(cmd) = args.cmd.or(args.command) else {
        return usage("missing command: eval, kernel, check or suite");
    };
    let name = args.name.as_deref().or(args.target.as_deref());
    match cmd {
        Command::Eval => {
            let v = eval(args, name.map_or_else(|| usage("missing eval target"), Ok)?)?;
            let text = match args.format {
                Format::Json => output::to_json(&v) + "\n",
                Format::Csv => eval_csv(&v),
            };
            Ok(Outcome { text, passed: true })
        }
        Command::Kernel => {
            let id = name.map_or_else(|| usage("missing kernel id"), Ok)?;
            let (points, axes) = kernel(args, id)?;
            Ok(Outcome { text: kernel_output(id, &points, axes, args.format), passed: true })
        }
        Command::Check => {
            let id = name.map_or_else(|| usage("missing identity id"), Ok)?;
            let fam = id.split('/').next().unwrap_or(id);
            let cfg = suite_config(args, Some(vec![fam.to_string()]))?;
            let mut reports = run_cases(&cfg)?;
            if fam != id {
                reports.retain(|r| r.identity_id == id);
                if reports.is_empty() {
                    return usage(format!("no identity {id:?} at seed {}", args.seed));
                }
            }
            Ok(reports_output(&reports, args.format))
        }
        Command::Suite => {
            let only = args.only.as_deref().map(|s| match s.trim() {
                "" | "none" => Vec::new(),
                list => list.split(',').map(|f| f.trim().to_string()).collect(),
            });
            let cfg = suite_config(args, only)?;
            Ok(reports_output(&run_cases(&cfg)?, args.format))
        }
    }
}

fn parse_args() -> Result<Args, clap::Error> {
    let argv: Vec<String> = std::env::args().collect();
    let args = Args::try_parse_from(&argv)?;
    let Some(path) = &args.config else {
        return Ok(args);
    };
    let pre = config::load(path).map_err(|e| clap::Error::raw(clap::error::ErrorKind::Io, e))?;
    let mut merged = vec![argv[0].clone()];
    merged.extend(pre);
    merged.extend(argv[1..].iter().cloned());
    Args::try_parse_from(merged)
}

fn main() -> ExitCode {
    let args = match parse_args() {
        Ok(a) => a,
        Err(e) if matches!(e.kind(), clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion) => e.exit(),
        Err(e) => {
            let msg = e.to_string();
            let first = msg.lines().next().unwrap_or("").trim_start_matches("error: ");
            eprintln!("ERROR Usage {first}");
            return ExitCode::from(2);
        }
    };
    match run(&args) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            if let Err(e) = stdout.write_all(out.text.as_bytes()).and_then(|_| stdout.flush()) {
                if e.kind() != std::io::ErrorKind::BrokenPipe {
                    eprintln!("ERROR Io {e}");
                    return ExitCode::from(2);
                }
            }
            if out.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(f) => {
            eprintln!("{}", f.line());
            ExitCode::from(2)
        }
    }
}
