use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use cotype_core::averages::{gaussian_average, rademacher_average, McOptions, Moment};
use cotype_core::descriptor::{parse_descriptor, parse_vector, Descriptor};
use cotype_core::estimate::Estimate;
use cotype_core::growth::{g_q, tilde_g, validate_growth};
use cotype_core::matrix::{parse_matrix, Matrix};
use cotype_core::optimal::{convexified_gauge, opt_gauge, GaugeKind};
use cotype_core::pipeline::{run_pipeline, PipelineConstants};
use cotype_core::seq::SymmetricSpace;
use cotype_core::snumbers::{approximation_numbers, eigenvalue_sequence_real, weyl_numbers, SNumberSequence};
use cotype_core::summing::{cotype_q_constant, d_constant, pi_pq_n, Variables};
use cotype_core::verify::{run_suite, VerifyOptions};
use cotype_core::weak::unit_vectors;
use cotype_core::{Budget, Error, GrowthSequence, LinearMap, NormedSpace, SuiteReport};

#[derive(Parser)]
#[command(name = "cotype", version, about = "Cotype, summing norms and s-numbers of finite-dimensional spaces")]
struct Cli {
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// `starts` or `starts,polish`.
    #[arg(long, global = true)]
    budget: Option<String>,
    #[arg(long, global = true)]
    tol: Option<f64>,
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Summing,
    Cotype,
}

#[derive(Clone, Copy, ValueEnum)]
enum SKind {
    Approx,
    Weyl,
}

#[derive(Clone, Copy, ValueEnum)]
enum Weights {
    Rademacher,
    Gaussian,
}

#[derive(Subcommand)]
enum Command {
    /// Norm of a vector in a sequence space.
    Norm {
        space: String,
        #[arg(long)]
        vec: String,
    },
    /// Growth constants of `gweak:` sequences, `g̃` and `g_q`.
    Growth {
        space: String,
        /// Comma list of `S`, `S3`, `S4`, `L:<t>`, `M:<r>`.
        #[arg(long, default_value = "S")]
        check: String,
        /// `r:n`
        #[arg(long)]
        tilde: Option<String>,
        /// `q:n`
        #[arg(long)]
        gq: Option<String>,
    },
    /// Approximation or Weyl numbers of a matrix.
    Snum {
        /// Matrix file, or rows inline as `1,2;3,4`.
        matrix: String,
        #[arg(long, default_value = "lp:2")]
        domain: String,
        #[arg(long, default_value = "lp:2")]
        codomain: String,
        #[arg(long, value_enum, default_value_t = SKind::Approx)]
        kind: SKind,
    },
    /// Eigenvalues by non-increasing modulus.
    Eig { matrix: String },
    /// Rademacher or gaussian average of a configuration (rows are vectors).
    Avg {
        space: String,
        #[arg(long)]
        config: String,
        #[arg(long, value_enum, default_value_t = Weights::Rademacher)]
        weights: Weights,
        #[arg(long, default_value_t = 1)]
        moment: u32,
        #[arg(long, default_value_t = 100_000)]
        samples: usize,
    },
    /// Lower bound of the (p,q)-summing norm of the identity on `n` vectors.
    Summing {
        space: String,
        #[arg(long, default_value_t = 1.0)]
        p: f64,
        #[arg(long, default_value_t = 1.0)]
        q: f64,
        #[arg(long)]
        n: usize,
    },
    /// Lower bound of the cotype-q constant on `n` vectors.
    Cotype {
        space: String,
        #[arg(long, default_value_t = 2.0)]
        q: f64,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Weights::Rademacher)]
        weights: Weights,
        #[arg(long, default_value_t = 20_000)]
        samples: usize,
    },
    /// Optimal summing or cotype gauge of a coefficient sequence.
    Gauge {
        space: String,
        #[arg(long)]
        tau: String,
        #[arg(long, value_enum, default_value_t = Kind::Summing)]
        kind: Kind,
        #[arg(long)]
        convexify: bool,
    },
    /// Block selection and regrouping on a configuration of the identity.
    Pipeline {
        space: String,
        /// Configuration file; the unit vectors scaled by `--scale` otherwise.
        #[arg(long)]
        config: Option<String>,
        #[arg(long, default_value_t = 1.0)]
        scale: f64,
        /// Growth `pow:<a>` or `file:<path>`.
        #[arg(long, default_value = "pow:0.5")]
        g: String,
        #[arg(long, default_value_t = 2)]
        r: usize,
        /// Defaults to the constant built from `S_2`.
        #[arg(long)]
        d: Option<f64>,
        #[arg(long, default_value_t = 20_000)]
        samples: usize,
    },
    /// Runs a named verification suite, or `all`.
    Verify {
        suite: String,
        #[arg(long, default_value_t = 100_000)]
        samples: usize,
        /// cap on the weak-cotype constant (default 1/(8e))
        #[arg(long)]
        c2_cap: Option<f64>,
    },
}

/// Usage errors exit with status 2, failed checks with 1.
enum Failure {
    Usage(String),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Descriptor { .. } | Error::InvalidParameter { .. } | Error::Parse { .. } | Error::DimensionMismatch { .. } | Error::Io(_) => {
                Failure::Usage(e.to_string())
            }
            other => Failure::Check(other.to_string()),
        }
    }
}

type Outcome<T> = std::result::Result<T, Failure>;

/// `%g` with six significant digits.
fn fmt_g(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return if x.is_nan() { "nan".into() } else if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let sci = format!("{x:.5e}");
    let (mantissa, e) = sci.split_once('e').expect("scientific");
    let e: i32 = e.parse().expect("exponent");
    let trim = |s: &str| if s.contains('.') { s.trim_end_matches('0').trim_end_matches('.').to_string() } else { s.to_string() };
    if !(-4..6).contains(&e) {
        let sign = if e < 0 { '-' } else { '+' };
        format!("{}e{sign}{:02}", trim(mantissa), e.abs())
    } else {
        trim(&format!("{x:.*}", (5 - e).max(0) as usize))
    }
}

/// Named rows of numbers plus text annotations.
#[derive(Default)]
struct Rows {
    rows: Vec<(String, Vec<f64>)>,
    notes: Vec<(String, String)>,
}

impl Rows {
    fn value(v: f64) -> Self {
        Self { rows: vec![("value".into(), vec![v])], notes: vec![] }
    }

    fn push(&mut self, name: impl Into<String>, values: Vec<f64>) {
        self.rows.push((name.into(), values));
    }

    fn note(&mut self, name: &str, text: impl Into<String>) {
        self.notes.push((name.into(), text.into()));
    }

    fn estimate(e: &Estimate<f64>) -> Self {
        let mut r = Self::value(e.value);
        if let Some(c) = e.companion {
            r.push("companion", vec![c]);
        }
        r.note("direction", format!("{:?}", e.direction).to_lowercase());
        r.note("method", e.method.clone());
        r
    }

    fn render(&self, format: Format) -> String {
        match format {
            Format::Text => {
                if self.rows.len() == 1 && self.rows[0].0 == "value" && self.notes.is_empty() {
                    return format!("{}\n", fmt_g(self.rows[0].1[0]));
                }
                let mut s = String::new();
                for (k, v) in &self.rows {
                    let vals: Vec<String> = v.iter().map(|&x| fmt_g(x)).collect();
                    s.push_str(&format!("{k} {}\n", vals.join(" ")));
                }
                for (k, v) in &self.notes {
                    s.push_str(&format!("{k} {v}\n"));
                }
                s
            }
            Format::Json => {
                let mut m = serde_json::Map::new();
                for (k, v) in &self.rows {
                    let val = if v.len() == 1 { serde_json::json!(v[0]) } else { serde_json::json!(v) };
                    m.insert(k.clone(), val);
                }
                for (k, v) in &self.notes {
                    m.insert(k.clone(), serde_json::json!(v));
                }
                format!("{}\n", serde_json::to_string_pretty(&m).expect("serializable"))
            }
            Format::Csv => {
                let mut s = String::from("name,value\n");
                for (k, v) in &self.rows {
                    let vals: Vec<String> = v.iter().map(|x| x.to_string()).collect();
                    s.push_str(&format!("{k},{}\n", vals.join(" ")));
                }
                for (k, v) in &self.notes {
                    s.push_str(&format!("{k},{v}\n"));
                }
                s
            }
        }
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn parse_budget(text: Option<&str>) -> Outcome<Budget> {
    let Some(text) = text else { return Ok(Budget::default()) };
    let parts: Vec<&str> = text.split(',').collect();
    let num = |s: &str| s.trim().parse::<usize>().map_err(|_| usage(format!("malformed budget token `{s}`")));
    match parts.as_slice() {
        [s] => Ok(Budget { starts: num(s)?, ..Budget::default() }),
        [s, p] => Ok(Budget::new(num(s)?, num(p)?)),
        _ => Err(usage(format!("malformed budget `{text}`, expected `starts[,polish]`"))),
    }
}

fn descriptor(text: &str) -> Outcome<Descriptor<f64>> {
    Ok(parse_descriptor(text)?)
}

fn space(text: &str, default_dim: Option<usize>) -> Outcome<NormedSpace> {
    Ok(descriptor(text)?.space(default_dim)?)
}

/// A matrix from a file, or inline rows separated by `;`.
fn read_matrix(arg: &str) -> Outcome<Matrix<f64>> {
    let text = if Path::new(arg).is_file() { fs::read_to_string(arg).map_err(Error::from)? } else { arg.replace(';', "\n") };
    Ok(parse_matrix(&text)?)
}

fn read_config(arg: &str) -> Outcome<Vec<Vec<f64>>> {
    Ok(read_matrix(arg)?.rows_vec())
}

trait RowsVec {
    fn rows_vec(&self) -> Vec<Vec<f64>>;
}

impl RowsVec for Matrix<f64> {
    fn rows_vec(&self) -> Vec<Vec<f64>> {
        (0..self.rows()).map(|i| self.row(i).to_vec()).collect()
    }
}

fn growth_arg(text: &str) -> Outcome<GrowthSequence> {
    if let Some(a) = text.strip_prefix("pow:") {
        let a: f64 = a.parse().map_err(|_| usage(format!("malformed descriptor token `{a}`: expected a number")))?;
        return Ok(GrowthSequence::power(a));
    }
    if let Some(p) = text.strip_prefix("file:") {
        return Ok(GrowthSequence::from_file(p)?);
    }
    Err(usage(format!("malformed descriptor token `{text}`: expected `pow:<a>` or `file:<path>`")))
}

fn pair<A: std::str::FromStr, B: std::str::FromStr>(text: &str) -> Outcome<(A, B)> {
    let bad = || usage(format!("malformed descriptor token `{text}`: expected `<a>:<b>`"));
    let (a, b) = text.split_once(':').ok_or_else(bad)?;
    Ok((a.parse().map_err(|_| bad())?, b.parse().map_err(|_| bad())?))
}

fn snum_rows(s: &SNumberSequence<f64>) -> Rows {
    let mut r = Rows::default();
    r.push("values", s.values.clone());
    r.push("lower", s.lower_bounds());
    r.note("directions", s.directions.iter().map(|d| format!("{d:?}").to_lowercase()).collect::<Vec<_>>().join(","));
    r
}

enum Output {
    Rows(Rows),
    Report(SuiteReport),
}

fn run(cli: &Cli) -> Outcome<(Output, bool)> {
    let budget = parse_budget(cli.budget.as_deref())?;
    let seed = cli.seed;
    let ok = |r: Rows| Ok((Output::Rows(r), true));
    match &cli.command {
        Command::Norm { space: s, vec } => {
            let v = parse_vector::<f64>(vec)?;
            let x = space(s, Some(v.len()))?;
            ok(Rows::value(x.norm(&v)?))
        }
        Command::Growth { space: s, check, tilde, gq } => {
            let d = descriptor(s)?;
            let SymmetricSpace::Gweak { g } = &d.family else {
                return Err(usage(format!("malformed descriptor token `{s}`: growth needs a gweak: descriptor")));
            };
            let n_max = d.dim.unwrap_or(64);
            let mut rows = Rows::default();
            for tok in check.split(',').map(str::trim).filter(|t| !t.is_empty()) {
                let (t, r) = match tok.split_once(':') {
                    Some(("L", t)) => (t.parse::<f64>().map_err(|_| usage(format!("malformed check token `{tok}`")))?, 2),
                    Some(("M", r)) => (2.0, r.parse::<usize>().map_err(|_| usage(format!("malformed check token `{tok}`")))?),
                    None if matches!(tok, "S" | "S2" | "S3" | "S4") => (2.0, 2),
                    _ => return Err(usage(format!("malformed check token `{tok}`"))),
                };
                let rep = validate_growth(g, n_max, t, r)?;
                match tok {
                    "S" | "S2" => rows.push("S2", vec![rep.s2]),
                    "S3" => rows.push("S3", vec![rep.s3]),
                    "S4" => rows.push("S4", vec![rep.s4]),
                    _ if tok.starts_with('L') => rows.push(format!("L{t}"), vec![rep.l_t]),
                    _ => rows.push(format!("M{r}"), vec![rep.m_r]),
                }
                for w in &rep.warnings {
                    rows.note("warning", format!("{} grows: {:?}", w.constant, w.samples));
                }
            }
            if let Some(t) = tilde {
                let (r, n): (usize, usize) = pair(t)?;
                rows.push("tilde_g", vec![tilde_g(g, r, n)?]);
            }
            if let Some(t) = gq {
                let (q, n): (f64, usize) = pair(t)?;
                rows.push("g_q", vec![g_q(g, q, n)?]);
            }
            ok(rows)
        }
        Command::Snum { matrix, domain, codomain, kind } => {
            let m = read_matrix(matrix)?;
            let t = LinearMap::new(m.clone(), space(domain, Some(m.cols()))?, space(codomain, Some(m.rows()))?)?;
            let s = match kind {
                SKind::Approx => approximation_numbers(&t, budget, seed),
                SKind::Weyl => weyl_numbers(&t, budget, seed),
            };
            ok(snum_rows(&s))
        }
        Command::Eig { matrix } => {
            let e = eigenvalue_sequence_real(&read_matrix(matrix)?)?;
            let mut r = Rows::default();
            r.push("re", e.values.iter().map(|z| z.re).collect());
            r.push("im", e.values.iter().map(|z| z.im).collect());
            r.push("modulus", e.moduli());
            ok(r)
        }
        Command::Avg { space: s, config, weights, moment, samples } => {
            let c = read_config(config)?;
            let x = space(s, c.first().map(Vec::len))?;
            let m = Moment::from_index(*moment)?;
            let opts = McOptions::new(*samples, seed);
            let a = match weights {
                Weights::Rademacher => rademacher_average(&x, &c, m, opts)?,
                Weights::Gaussian => gaussian_average(&x, &c, m, opts)?,
            };
            let mut r = Rows::value(a.value);
            r.push("std_error", vec![a.std_error]);
            r.note("method", format!("{:?}", a.method).to_lowercase());
            ok(r)
        }
        Command::Summing { space: s, p, q, n } => {
            let id = LinearMap::identity(space(s, None)?);
            ok(Rows::estimate(&pi_pq_n(&id, *p, *q, *n, budget, seed)?))
        }
        Command::Cotype { space: s, q, n, weights, samples } => {
            let v = match weights {
                Weights::Rademacher => Variables::Rademacher,
                Weights::Gaussian => Variables::Gaussian,
            };
            let e = cotype_q_constant(&space(s, None)?, *q, *n, v, budget, seed, McOptions::new(*samples, seed))?;
            ok(Rows::estimate(&e))
        }
        Command::Gauge { space: s, tau, kind, convexify } => {
            let tau = parse_vector::<f64>(tau)?;
            let x = space(s, None)?;
            let k = match kind {
                Kind::Summing => GaugeKind::Summing,
                Kind::Cotype => GaugeKind::Cotype,
            };
            let e = if *convexify { convexified_gauge(&tau, &x, k, budget, seed)? } else { opt_gauge(&tau, &x, k, budget, seed)? };
            ok(Rows::estimate(&e))
        }
        Command::Pipeline { space: s, config, scale, g, r, d, samples } => {
            let g = growth_arg(g)?;
            let c = match config {
                Some(path) => read_config(path)?,
                None => {
                    let n = descriptor(s)?.dim.ok_or_else(|| usage(format!("malformed descriptor token `{s}`: no dimension given")))?;
                    unit_vectors::<f64>(n).into_iter().map(|v| v.into_iter().map(|x| x * scale).collect()).collect()
                }
            };
            let x = space(s, c.first().map(Vec::len))?;
            let d = match d {
                Some(d) => *d,
                None => d_constant(validate_growth(&g, c.len().max(2), 2.0, (*r).max(1))?.s2),
            };
            let constants = PipelineConstants { d, ..PipelineConstants::ones() };
            let cert = run_pipeline(&LinearMap::identity(x), &c, &g, *r, constants, budget, seed, McOptions::new(*samples, seed))?;
            let mut rows = Rows::default();
            rows.push("level_measured", cert.levels.iter().map(|l| l.measured).collect());
            rows.push("level_formula", cert.levels.iter().map(|l| l.formula).collect());
            rows.push("final_measured", vec![cert.final_measured.value]);
            rows.push("final_formula", vec![cert.final_formula]);
            rows.note("verdict", if cert.verdict { "pass" } else { "fail" });
            Ok((Output::Rows(rows), cert.verdict))
        }
        Command::Verify { suite, samples, c2_cap } => {
            let mut o = VerifyOptions { seed, budget, samples: *samples, ..VerifyOptions::default() };
            if let Some(c) = *c2_cap {
                if !(c > 0.0) {
                    return Err(Error::InvalidParameter { name: "c2-cap", reason: format!("must be positive, got {c}") }.into());
                }
                o.c2_cap = c;
            }
            if let Some(t) = cli.tol {
                o.tol = t;
            }
            let rep = run_suite(suite, &o)?;
            let passed = rep.passed();
            Ok((Output::Report(rep), passed))
        }
    }
}

fn render_report(rep: &SuiteReport, format: Format) -> Outcome<String> {
    Ok(match format {
        Format::Json => format!("{}\n", rep.to_json()?),
        Format::Csv => {
            let mut buf = Vec::new();
            rep.write_csv(&mut buf)?;
            String::from_utf8(buf).expect("utf-8")
        }
        Format::Text => {
            let mut s = String::new();
            for c in &rep.checks {
                let tag = match (c.tier, c.verdict) {
                    (cotype_core::report::Tier::Assert, true) => "PASS",
                    (cotype_core::report::Tier::Assert, false) => "FAIL",
                    (cotype_core::report::Tier::Observe, _) => "OBSERVE",
                };
                let vals: Vec<String> = c.measured.iter().map(|(k, v)| format!("{k}={}", fmt_g(*v))).collect();
                s.push_str(&format!("{tag} {} {}\n", c.name, vals.join(" ")));
            }
            s.push_str(&format!("{} {}\n", rep.suite, if rep.passed() { "passed" } else { "failed" }));
            s
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(&cli).and_then(|(out, passed)| {
        let text = match &out {
            Output::Rows(r) => r.render(cli.format),
            Output::Report(rep) => render_report(rep, cli.format)?,
        };
        match &cli.out {
            Some(p) => fs::write(p, text).map_err(|e| usage(format!("cannot write `{}`: {e}", p.display())))?,
            None => {
                let _ = std::io::stdout().write_all(text.as_bytes());
            }
        }
        Ok(passed)
    });
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Check(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
    }
}
