//! Command line surface and dispatch.

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde_json::{json, Value as Json};

use qsuspend_core::fockrep::{char_trace, represent};
use qsuspend_core::ktheory::{build_e, build_g, matrix_trace, pair_charge, pair_epsilon, NCMatrix};
use qsuspend_core::ncalg::{Algebra, NCPoly, Preset};
use qsuspend_core::poisson::{
    determinant, pfaffian_recursive, structure_matrix, ClassicalPoly, PoissonStructure, Var,
};
use qsuspend_core::scalars::{parse_rational, rational_to_f64, LaurentQ, Rational};
use qsuspend_core::semiclassical::{classical_structure, semiclassical_bracket};
use qsuspend_core::Error as CoreError;

use crate::parser::{parse_expression, ParseError, Target, Value};
use crate::report::{envelope, Status, VerificationReport};
use crate::suites::{self, SuiteConfig};

#[derive(Parser, Debug)]
#[command(name = "qsuspend", version, about = "Algebra and verification for quantum even spheres")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// podles, podles-power, even-sphere, odd-plane, podles-standard, product-podles, coinduced, chart
    #[arg(long, global = true, default_value = "even-sphere")]
    pub preset: String,
    #[arg(long, global = true, default_value_t = 1)]
    pub n: usize,
    /// Deformation parameter, rational (`1/2`) or decimal (`0.5`).
    #[arg(long, global = true)]
    pub q: Option<String>,
    #[arg(long, global = true)]
    pub trunc: Option<usize>,
    #[arg(long, global = true, default_value_t = 4)]
    pub margin: usize,
    #[arg(long, global = true, default_value_t = 7)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print the normal form of an expression.
    Normalize {
        #[arg(long)]
        expr: String,
    },
    /// `fg - gf` in a quantum preset.
    Commutator {
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
    },
    /// Poisson bracket, or the chart structure matrix at a point.
    Bracket {
        #[arg(long)]
        f: Option<String>,
        #[arg(long)]
        g: Option<String>,
        /// JSON list of `[re, im]` pairs, one per chart coordinate.
        #[arg(long)]
        point: Option<String>,
    },
    /// Sparse matrix of an element in the truncated Fock representation.
    Rep {
        #[arg(long)]
        expr: String,
    },
    /// Character trace with its tail bound.
    Trace {
        #[arg(long)]
        expr: String,
    },
    /// Entries of the projector `G` or of an intermediate `e_k`.
    Projector {
        #[arg(long)]
        k: Option<usize>,
    },
    /// Counit and character pairings with the projector.
    Pair,
    /// Run a verification suite.
    Verify {
        /// Suite name or `all`.
        suite: String,
    },
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),
    #[error("parse error at {0}")]
    Parse(ParseError),
    #[error("{0}")]
    Core(CoreError),
    #[error("verification failed")]
    Verification(Box<VerificationReport>),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 1,
            CliError::Parse(e) => match e.core_error() {
                Some(c) if suites::is_internal(c) => 3,
                _ => 1,
            },
            CliError::Core(e) if suites::is_internal(e) => 3,
            CliError::Core(_) => 1,
            CliError::Verification(r) if r.has_internal_error() => 3,
            CliError::Verification(_) => 2,
        }
    }
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        CliError::Parse(e)
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        CliError::Core(e)
    }
}

/// A finished command: the JSON document and its human rendering.
#[derive(Debug)]
pub struct Output {
    pub json: Json,
    pub text: String,
}

/// The parameter `q` as given on the command line.
#[derive(Clone, Debug)]
pub struct QValue {
    pub value: f64,
    pub exact: Option<Rational>,
}

impl QValue {
    pub fn parse(s: &str) -> Result<Self, CliError> {
        let s = s.trim();
        let bad = || CliError::Config(format!("cannot read q = `{s}`"));
        let q = if s.contains(['.', 'e', 'E']) {
            QValue { value: s.parse().map_err(|_| bad())?, exact: None }
        } else {
            let r = parse_rational(s).map_err(|_| bad())?;
            QValue { value: rational_to_f64(&r), exact: Some(r) }
        };
        if !(q.value > 0.0 && q.value < 1.0) {
            return Err(CliError::Config(format!("q must lie in (0, 1), got {s}")));
        }
        Ok(q)
    }
}

pub fn target(slug: &str, n: usize) -> Result<Target, CliError> {
    if n == 0 {
        return Err(CliError::Config("n must be at least 1".into()));
    }
    Ok(match slug {
        "podles" => Target::quantum(Preset::PodlesSphere),
        "podles-power" => Target::quantum(Preset::PodlesProductPower(n)),
        "even-sphere" => Target::quantum(Preset::EvenSphere(n)),
        "odd-plane" => Target::quantum(Preset::OddPlane(n)),
        "podles-standard" => Target::Classical(PoissonStructure::PodlesStandard),
        "product-podles" => Target::Classical(PoissonStructure::ProductPodles(n)),
        "coinduced" => Target::Classical(PoissonStructure::EvenSphereCoinduced(n)),
        "chart" => Target::Classical(PoissonStructure::ChartPlane(n)),
        other => return Err(CliError::Config(format!("unknown preset `{other}`"))),
    })
}

fn quantum(t: &Target, what: &str) -> Result<Algebra, CliError> {
    match t {
        Target::Quantum(a) => Ok(a.clone()),
        Target::Classical(p) => {
            Err(CliError::Config(format!("{what} needs a quantum preset, {p} is classical")))
        }
    }
}

fn q_or_half(q: &Option<QValue>) -> f64 {
    q.as_ref().map_or(0.5, |q| q.value)
}

fn parse_point(s: &str, n: usize) -> Result<Vec<Complex64>, CliError> {
    let bad = |m: &str| CliError::Config(format!("--point: {m}"));
    let raw: Vec<[f64; 2]> = serde_json::from_str(s).map_err(|e| bad(&e.to_string()))?;
    if raw.len() != n {
        return Err(bad(&format!("expected {n} coordinates, got {}", raw.len())));
    }
    Ok(raw.into_iter().map(|[re, im]| Complex64::new(re, im)).collect())
}

fn complex_json(z: Complex64) -> Json {
    json!([z.re, z.im])
}

fn matrix_json(m: &NCMatrix) -> Json {
    let rows: Vec<Vec<String>> =
        (0..m.size()).map(|i| (0..m.size()).map(|j| m.get(i, j).to_text()).collect()).collect();
    json!(rows)
}

fn eval_at_chart_point(f: &ClassicalPoly, z: &[Complex64]) -> Complex64 {
    f.eval(|v| match v {
        Var::Z(i) => z[i as usize - 1],
        Var::ZBar(i) => z[i as usize - 1].conj(),
        _ => Complex64::new(0.0, 0.0),
    })
}

fn with_q(p: &NCPoly, q: &Rational) -> Result<String, CliError> {
    let err = std::cell::RefCell::new(None);
    let at = p.map_coeffs(|c| match c.eval_rational(q) {
        Ok(r) => LaurentQ::constant(r),
        Err(e) => {
            *err.borrow_mut() = Some(e);
            LaurentQ::zero()
        }
    });
    match err.into_inner() {
        Some(e) => Err(e.into()),
        None => Ok(at.to_text()),
    }
}

pub fn run(cli: &Cli) -> Result<Output, CliError> {
    let n = cli.n;
    let tgt = target(&cli.preset, n)?;
    let q = cli.q.as_deref().map(QValue::parse).transpose()?;
    match &cli.command {
        Command::Normalize { expr } => {
            let v = parse_expression(expr, &tgt)?;
            let text = v.to_text();
            let mut body = json!({ "preset": cli.preset, "result": text });
            if let (Value::Quantum(p), Some(QValue { exact: Some(r), .. })) = (&v, &q) {
                body["at_q"] = json!(with_q(p, r)?);
            }
            Ok(Output { json: envelope("normalize", body), text })
        }
        Command::Commutator { f, g } => {
            let alg = quantum(&tgt, "commutator")?;
            let fv = parse_expression(f, &tgt)?.into_quantum().expect("quantum target");
            let gv = parse_expression(g, &tgt)?.into_quantum().expect("quantum target");
            let c = alg.commutator(&fv, &gv)?.to_text();
            Ok(Output { json: envelope("commutator", json!({ "preset": cli.preset, "result": c })), text: c })
        }
        Command::Bracket { f, g, point } => bracket(cli, &tgt, f.as_deref(), g.as_deref(), point.as_deref()),
        Command::Rep { expr } => {
            quantum(&tgt, "rep")?;
            let f = parse_expression(expr, &tgt)?.into_quantum().expect("quantum target");
            let levels = cli.trunc.unwrap_or(8);
            let op = represent(&f, q_or_half(&q), levels)?;
            let entries: Vec<Json> =
                op.entries().map(|((r, c), v)| json!({ "row": r, "col": c, "value": v })).collect();
            let text = op.entries().map(|((r, c), v)| format!("{r} {c} {v:e}\n")).collect();
            let body =
                json!({ "dim": op.space.dim(), "levels": levels, "nnz": op.nnz(), "entries": entries });
            Ok(Output { json: envelope("rep", body), text })
        }
        Command::Trace { expr } => {
            quantum(&tgt, "trace")?;
            let f = parse_expression(expr, &tgt)?.into_quantum().expect("quantum target");
            let levels = cli.trunc.unwrap_or(40);
            let tb = char_trace(&f, q_or_half(&q), levels)?;
            let body = json!({ "value": tb.value, "tail_bound": tb.bound, "levels": levels });
            Ok(Output { json: envelope("trace", body), text: format!("{} +/- {:e}\n", tb.value, tb.bound) })
        }
        Command::Projector { k } => {
            let (m, kind) = match k {
                Some(k) => (build_e(n, *k)?, format!("e_{k}")),
                None => (build_g(n)?, "G".to_string()),
            };
            let tr = matrix_trace(&m)?.to_text();
            let body =
                json!({ "n": n, "kind": kind, "size": m.size(), "entries": matrix_json(&m), "trace": tr });
            let mut text = String::new();
            for i in 0..m.size() {
                for j in 0..m.size() {
                    text.push_str(&format!("[{i},{j}] {}\n", m.get(i, j)));
                }
            }
            text.push_str(&format!("trace {tr}\n"));
            Ok(Output { json: envelope("projector", body), text })
        }
        Command::Pair => {
            let q0 = q_or_half(&q);
            let levels = cli.trunc.unwrap_or(if q0 > 0.7 { 80 } else { 60 });
            let eps = pair_epsilon(n)?;
            let tb = pair_charge(n, q0, levels)?;
            let body = json!({
                "n": n, "q": q0, "levels": levels,
                "epsilon_pairing": eps, "charge_pairing": tb.value, "tail_bound": tb.bound,
            });
            let text = format!("epsilon pairing {eps}\ncharge pairing {} +/- {:e}\n", tb.value, tb.bound);
            Ok(Output { json: envelope("pair", body), text })
        }
        Command::Verify { suite } => {
            let cfg =
                SuiteConfig { n, q0: q_or_half(&q), trunc: cli.trunc, margin: cli.margin, seed: cli.seed };
            let report = suites::run(suite, cfg).ok_or_else(|| {
                let known: Vec<&str> = suites::ALL.iter().chain(suites::EXTRA).copied().collect();
                CliError::Config(format!("unknown suite `{suite}` (known: all, {})", known.join(", ")))
            })?;
            if report.status() == Status::Fail {
                return Err(CliError::Verification(Box::new(report)));
            }
            Ok(Output { json: report.to_json(), text: report.to_text() })
        }
    }
}

fn bracket(
    cli: &Cli,
    tgt: &Target,
    f: Option<&str>,
    g: Option<&str>,
    point: Option<&str>,
) -> Result<Output, CliError> {
    let mut body = json!({ "preset": cli.preset });
    let mut text = String::new();
    let value = match (f, g) {
        (Some(f), Some(g)) => {
            let b = match tgt {
                Target::Classical(p) => {
                    let fv = parse_expression(f, tgt)?.into_classical().expect("classical target");
                    let gv = parse_expression(g, tgt)?.into_classical().expect("classical target");
                    p.bracket(&fv, &gv)?
                }
                Target::Quantum(alg) => {
                    if classical_structure(alg.preset()).is_none() {
                        return Err(CliError::Config(format!(
                            "{} has no classical limit here",
                            alg.preset()
                        )));
                    }
                    let fv = parse_expression(f, tgt)?.into_quantum().expect("quantum target");
                    let gv = parse_expression(g, tgt)?.into_quantum().expect("quantum target");
                    semiclassical_bracket(alg, &fv, &gv)?
                }
            };
            body["bracket"] = json!(b.to_string());
            text.push_str(&format!("{b}\n"));
            Some(b)
        }
        (None, None) => None,
        _ => return Err(CliError::Config("--f and --g go together".into())),
    };
    if let Some(point) = point {
        let Target::Classical(PoissonStructure::ChartPlane(n)) = tgt else {
            return Err(CliError::Config("--point needs the chart preset".into()));
        };
        let z = parse_point(point, *n)?;
        let s = structure_matrix(*n, &z)?;
        let det = determinant(&s.matrix);
        let pf = pfaffian_recursive(*n, &z)?;
        let rows: Vec<Vec<Json>> =
            s.matrix.iter().map(|r| r.iter().map(|&x| complex_json(x)).collect()).collect();
        body["structure_matrix"] = json!(rows);
        body["determinant"] = complex_json(det);
        body["pfaffian"] = json!(pf);
        text.push_str(&format!("det {} {}\npfaffian {pf}\n", det.re, det.im));
        if let Some(b) = &value {
            let at = eval_at_chart_point(b, &z);
            body["bracket_at_point"] = complex_json(at);
        }
    } else if value.is_none() {
        return Err(CliError::Config("bracket needs --f and --g, or --point".into()));
    }
    Ok(Output { json: envelope("bracket", body), text })
}
