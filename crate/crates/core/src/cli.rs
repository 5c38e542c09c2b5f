//! The `markov` command-line tool.

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::cf::{count_approximations, lagrange_number};
use crate::error::{Error, Result};
use crate::exactnum::{parse_rational, QuadExt, Rational};
use crate::forms::{BinaryQuadraticForm, FormKind};
use crate::markov::{self, enumerate_triples, MarkovTriple, TreePath};
use crate::moebius::ProjPoint;
use crate::render::{render_svg, RenderSpec};
use crate::teich::TorusTriangulation;
use crate::verify::{self, truncated_decimal};

/// Environment variable holding the binary precision of decimal columns.
pub const PRECISION_ENV: &str = "MARKOV_PRECISION_BITS";
const DEFAULT_BITS: u32 = 53;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "markov", version, about = "Markov triples, the Lagrange spectrum below 3 and the hyperbolic geometry behind them")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Sorted Markov triples up to a bound with their numbers and forms
    Tree(TreeArgs),
    /// Lagrange numbers of the Markov irrationals up to a bound
    Spectrum(TreeArgs),
    /// Fractions p/q with |x - p/q| < 1/(lambda q^2)
    Approx(ApproxArgs),
    /// Quadratic form computations
    Forms {
        #[command(subcommand)]
        command: FormsCommand,
    },
    /// Torus triangulations
    Teich {
        #[command(subcommand)]
        command: TeichCommand,
    },
    /// SVG of Ford circles, Farey tessellation and geodesics
    Render(RenderArgs),
    /// Run acceptance checks
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
pub struct TreeArgs {
    /// Largest Markov number to include
    #[arg(long)]
    pub cmax: String,
    #[arg(long, conflicts_with = "csv")]
    pub json: bool,
    #[arg(long)]
    pub csv: bool,
}

#[derive(Args, Debug)]
pub struct ApproxArgs {
    /// Markov triple a,b,c whose number x is approximated
    #[arg(long, conflicts_with = "x", required_unless_present = "x")]
    pub triple: Option<String>,
    /// Quadratic irrational such as "1/2 + 1/2*sqrt(5)"
    #[arg(long)]
    pub x: Option<String>,
    #[arg(long)]
    pub lambda: String,
    #[arg(long)]
    pub qmax: u64,
    #[arg(long)]
    pub json: bool,
}

#[derive(Subcommand, Debug)]
pub enum FormsCommand {
    /// Minimum of |f| over nonzero lattice points
    Min {
        /// Coefficients "A,2B,C" of A p^2 + 2B pq + C q^2
        #[arg(long, allow_hyphen_values = true)]
        form: String,
        #[arg(long, default_value_t = 1000)]
        bound: u64,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Subcommand, Debug)]
pub enum TeichCommand {
    /// Replay a sequence of edge flips
    Flip {
        #[arg(long, default_value = "1,1,1")]
        start: String,
        #[arg(long, allow_hyphen_values = true)]
        moves: String,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args, Debug)]
pub struct RenderArgs {
    #[arg(long, default_value_t = 8)]
    pub qmax: u64,
    /// x_min,x_max
    #[arg(long, default_value = "0,1", allow_hyphen_values = true)]
    pub window: String,
    /// Geodesic endpoints "e1,e2"; "inf" for infinity. Repeatable.
    #[arg(long = "geodesic", allow_hyphen_values = true)]
    pub geodesics: Vec<String>,
    /// Draw the geodesic of the Markov triple a,b,c. Repeatable.
    #[arg(long = "triple")]
    pub triples: Vec<String>,
    /// Pixels per unit
    #[arg(long, default_value_t = 400.0)]
    pub scale: f64,
    /// Output file; stdout if absent
    #[arg(long)]
    pub svg: Option<std::path::PathBuf>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// tables, flips, hurwitz, equivariance, crossing, geodesics, uniqueness, definite or all
    #[arg(long, default_value = "all")]
    pub suite: String,
}

/// One row of `tree` and `spectrum`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TripleRow {
    pub a: String,
    pub b: String,
    pub c: String,
    pub p1: String,
    pub p2: String,
    pub x: String,
    pub x_decimal: String,
    pub lambda: String,
    pub lambda_decimal: String,
    #[serde(rename = "L")]
    pub lagrange: String,
    #[serde(rename = "M")]
    pub m: String,
    #[serde(rename = "M_decimal")]
    pub m_decimal: String,
    pub form: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ApproxReport {
    pub x: String,
    pub lambda: String,
    pub qmax: u64,
    pub count: usize,
    pub fractions: Vec<(String, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormMinReport {
    pub form: String,
    pub kind: String,
    pub det: String,
    pub bound: u64,
    pub min: String,
    pub witness: (String, String),
    #[serde(rename = "M")]
    pub m: String,
    #[serde(rename = "M_decimal")]
    pub m_decimal: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlipStep {
    pub edge: Option<u8>,
    pub weights: [String; 3],
    pub labels: [u32; 3],
}

fn usage(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}

/// Decimal digits shown for `bits` of binary precision.
pub fn decimal_digits(bits: u32) -> u32 {
    ((bits as f64) * std::f64::consts::LOG10_2).floor().max(1.0) as u32
}

pub fn precision_bits() -> Result<u32> {
    match std::env::var(PRECISION_ENV) {
        Err(_) => Ok(DEFAULT_BITS),
        Ok(v) => v
            .trim()
            .parse::<u32>()
            .ok()
            .filter(|&b| (2..=1 << 16).contains(&b))
            .ok_or_else(|| usage(format!("{PRECISION_ENV}={v:?} is not a bit count"))),
    }
}

fn parse_bigint(s: &str) -> Result<BigInt> {
    s.trim().parse().map_err(|_| Error::Parse(format!("not an integer: {s:?}")))
}

pub fn parse_triple(s: &str) -> Result<MarkovTriple> {
    let v: Vec<BigInt> = s.split(',').map(parse_bigint).collect::<Result<_>>()?;
    if v.len() != 3 {
        return Err(Error::Parse(format!("expected a,b,c, got {s:?}")));
    }
    MarkovTriple::new(v[0].clone(), v[1].clone(), v[2].clone())
}

fn parse_pair(s: &str) -> Result<(String, String)> {
    let mut it = s.splitn(2, ',');
    match (it.next(), it.next()) {
        (Some(a), Some(b)) => Ok((a.trim().to_string(), b.trim().to_string())),
        _ => Err(Error::Parse(format!("expected two comma-separated values, got {s:?}"))),
    }
}

pub fn triple_row(t: &MarkovTriple, digits: u32) -> Result<TripleRow> {
    let (p1, p2) = markov::solve_p1p2(t);
    let x = markov::markov_x(t);
    let lambda = markov::markov_lambda(t);
    let l = lagrange_number(&x)?;
    let m = markov::markov_r(t).inv()?;
    Ok(TripleRow {
        a: t.a.to_string(),
        b: t.b.to_string(),
        c: t.c.to_string(),
        p1: p1.to_string(),
        p2: p2.to_string(),
        x: x.to_string(),
        x_decimal: truncated_decimal(&x, digits),
        lambda: lambda.to_string(),
        lambda_decimal: truncated_decimal(&lambda, digits),
        lagrange: l.to_string(),
        m: m.to_string(),
        m_decimal: truncated_decimal(&m, digits),
        form: markov::markov_form(t).to_integer_string(),
    })
}

fn sorted_triples(cmax: &str) -> Result<Vec<MarkovTriple>> {
    let c = parse_bigint(cmax)?;
    if c < BigInt::from(1) {
        return Err(usage("--cmax must be at least 1"));
    }
    let mut v = enumerate_triples(&c);
    v.sort_by(|x, y| (&x.c, &x.b, &x.a).cmp(&(&y.c, &y.b, &y.a)));
    Ok(v)
}

fn csv_field(s: &str) -> String {
    if s.contains(',') || s.contains('"') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn cmd_tree(args: &TreeArgs, out: &mut dyn Write) -> Result<()> {
    let digits = decimal_digits(precision_bits()?);
    let rows: Vec<TripleRow> = sorted_triples(&args.cmax)?.iter().map(|t| triple_row(t, digits)).collect::<Result<_>>()?;
    if args.json {
        writeln!(out, "{}", serde_json::to_string_pretty(&rows).expect("serializable")).ok();
    } else if args.csv {
        writeln!(out, "a,b,c,p1,p2,x,x_decimal,lambda,lambda_decimal,L,M,M_decimal,form").ok();
        for r in &rows {
            let f = [&r.a, &r.b, &r.c, &r.p1, &r.p2, &r.x, &r.x_decimal, &r.lambda, &r.lambda_decimal, &r.lagrange, &r.m, &r.m_decimal, &r.form];
            writeln!(out, "{}", f.iter().map(|s| csv_field(s)).collect::<Vec<_>>().join(",")).ok();
        }
    } else {
        for r in &rows {
            writeln!(
                out,
                "({}, {}, {})  p1={} p2={}  x = {} = {}...  lambda = {} = {}...  M = {} = {}...  f = {}",
                r.a, r.b, r.c, r.p1, r.p2, r.x, r.x_decimal, r.lambda, r.lambda_decimal, r.m, r.m_decimal, r.form
            )
            .ok();
        }
    }
    Ok(())
}

fn cmd_spectrum(args: &TreeArgs, out: &mut dyn Write) -> Result<()> {
    let digits = decimal_digits(precision_bits()?);
    let rows: Vec<TripleRow> = sorted_triples(&args.cmax)?.iter().map(|t| triple_row(t, digits)).collect::<Result<_>>()?;
    if args.json {
        writeln!(out, "{}", serde_json::to_string_pretty(&rows).expect("serializable")).ok();
        return Ok(());
    }
    if args.csv {
        writeln!(out, "rank,x,L,L_decimal,a,b,c,p1,p2").ok();
    }
    for (i, r) in rows.iter().enumerate() {
        let l = r.lagrange.parse::<QuadExt>()?;
        let dec = truncated_decimal(&l, digits);
        if args.csv {
            let f = [(i + 1).to_string(), r.x.clone(), r.lagrange.clone(), dec, r.a.clone(), r.b.clone(), r.c.clone(), r.p1.clone(), r.p2.clone()];
            writeln!(out, "{}", f.iter().map(|s| csv_field(s)).collect::<Vec<_>>().join(",")).ok();
        } else {
            writeln!(out, "{:>3}  x = {}  L = {} = {}...  ({}, {}, {})  p1={} p2={}", i + 1, r.x, r.lagrange, dec, r.a, r.b, r.c, r.p1, r.p2).ok();
        }
    }
    Ok(())
}

fn cmd_approx(args: &ApproxArgs, out: &mut dyn Write) -> Result<()> {
    let x = match (&args.triple, &args.x) {
        (Some(t), _) => markov::markov_x(&parse_triple(t)?),
        (None, Some(x)) => x.parse()?,
        (None, None) => return Err(usage("--triple or --x is required")),
    };
    let lambda: QuadExt = args.lambda.parse()?;
    if args.qmax == 0 {
        return Err(usage("--qmax must be at least 1"));
    }
    let fr = count_approximations(&x, &lambda, args.qmax)?;
    let rep = ApproxReport {
        x: x.to_string(),
        lambda: lambda.to_string(),
        qmax: args.qmax,
        count: fr.len(),
        fractions: fr.iter().map(|(p, q)| (p.to_string(), q.to_string())).collect(),
    };
    if args.json {
        writeln!(out, "{}", serde_json::to_string_pretty(&rep).expect("serializable")).ok();
    } else {
        writeln!(out, "x = {}  lambda = {}  qmax = {}", rep.x, rep.lambda, rep.qmax).ok();
        for (p, q) in &rep.fractions {
            writeln!(out, "{p}/{q}").ok();
        }
        writeln!(out, "count = {}", rep.count).ok();
    }
    Ok(())
}

fn cmd_forms_min(form: &str, bound: u64, json: bool, out: &mut dyn Write) -> Result<()> {
    let f: BinaryQuadraticForm = form.parse()?;
    let digits = decimal_digits(precision_bits()?);
    let kind = f.kind();
    let lm = match kind {
        FormKind::Degenerate => return Err(Error::DegenerateForm),
        _ => f.lattice_min(bound)?,
    };
    let rep = FormMinReport {
        form: f.to_string(),
        kind: format!("{kind:?}").to_lowercase(),
        det: f.det().to_string(),
        bound,
        min: lm.min.to_string(),
        witness: (lm.witness.0.to_string(), lm.witness.1.to_string()),
        m: lm.normalized.to_string(),
        m_decimal: truncated_decimal(&lm.normalized, digits),
    };
    if json {
        writeln!(out, "{}", serde_json::to_string_pretty(&rep).expect("serializable")).ok();
    } else {
        writeln!(out, "f = {}  ({}, det = {})", rep.form, rep.kind, rep.det).ok();
        writeln!(out, "min |f| = {} at ({}, {})  [|p|, |q| <= {}]", rep.min, rep.witness.0, rep.witness.1, bound).ok();
        writeln!(out, "M(f) = {} = {}...", rep.m, rep.m_decimal).ok();
    }
    Ok(())
}

fn cmd_teich_flip(start: &str, moves: &str, json: bool, out: &mut dyn Write) -> Result<()> {
    let start = parse_triple(start)?;
    let mv: Vec<u8> = if moves.trim().is_empty() {
        Vec::new()
    } else {
        moves
            .split(',')
            .map(|m| m.trim().parse::<u8>().map_err(|_| Error::Parse(format!("bad move {m:?}"))))
            .collect::<Result<_>>()?
    };
    let path = TreePath::new(start.clone(), mv)?;
    let mut t = TorusTriangulation::from_triple(&start);
    let show = |t: &TorusTriangulation, edge| FlipStep { edge, weights: [0, 1, 2].map(|i| t.weights[i].to_string()), labels: t.labels };
    let mut steps = vec![show(&t, None)];
    for (&k, want) in path.moves.iter().zip(path.replay().iter().skip(1)) {
        t = t.flip(k)?;
        debug_assert_eq!(t.to_triple().as_ref(), Some(want));
        steps.push(show(&t, Some(k)));
    }
    if json {
        writeln!(out, "{}", serde_json::to_string_pretty(&steps).expect("serializable")).ok();
    } else {
        for s in &steps {
            let e = s.edge.map_or("start ".to_string(), |k| format!("flip {k}"));
            writeln!(out, "{e}  ({}, {}, {})  labels {:?}", s.weights[0], s.weights[1], s.weights[2], s.labels).ok();
        }
    }
    Ok(())
}

fn cmd_render(args: &RenderArgs, out: &mut dyn Write) -> Result<()> {
    let (lo, hi) = parse_pair(&args.window)?;
    let window: (Rational, Rational) = (parse_rational(&lo)?, parse_rational(&hi)?);
    let mut spec = RenderSpec::new(window, args.qmax);
    spec.scale = args.scale;
    for g in &args.geodesics {
        let (a, b) = parse_pair(g)?;
        let (a, b): (ProjPoint, ProjPoint) = (a.parse()?, b.parse()?);
        if a == b {
            return Err(Error::DegenerateGeodesic);
        }
        spec.geodesics.push((a, b));
    }
    for t in &args.triples {
        let t = parse_triple(t)?;
        let x0 = markov::markov_x0(&t);
        let r = markov::markov_r(&t);
        spec.geodesics.push((ProjPoint::Finite((-&r).add_rational(&x0)), ProjPoint::Finite(r.add_rational(&x0))));
    }
    let svg = render_svg(&spec)?;
    match &args.svg {
        Some(path) => std::fs::write(path, svg).map_err(|e| usage(format!("cannot write {}: {e}", path.display())))?,
        None => {
            out.write_all(svg.as_bytes()).ok();
        }
    }
    Ok(())
}

fn cmd_verify(args: &VerifyArgs, out: &mut dyn Write) -> Result<bool> {
    let reports = verify::run_suite(&args.suite).ok_or_else(|| {
        let names: Vec<&str> = verify::SUITES.iter().map(|(n, _)| *n).collect();
        usage(format!("unknown suite {:?}; one of {}", args.suite, names.join(", ")))
    })?;
    let mut ok = true;
    for r in &reports {
        writeln!(out, "{r}").ok();
        ok &= r.passed;
    }
    Ok(ok)
}

/// Runs a parsed command, writing to `out`. Returns the exit code.
pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let res = match &cli.command {
        Command::Tree(a) => cmd_tree(a, out).map(|_| true),
        Command::Spectrum(a) => cmd_spectrum(a, out).map(|_| true),
        Command::Approx(a) => cmd_approx(a, out).map(|_| true),
        Command::Forms { command: FormsCommand::Min { form, bound, json } } => cmd_forms_min(form, *bound, *json, out).map(|_| true),
        Command::Teich { command: TeichCommand::Flip { start, moves, json } } => cmd_teich_flip(start, moves, *json, out).map(|_| true),
        Command::Render(a) => cmd_render(a, out).map(|_| true),
        Command::Verify(a) => cmd_verify(a, out),
    };
    match res {
        Ok(true) => EXIT_OK,
        Ok(false) => EXIT_FAILURE,
        Err(e) => {
            writeln!(err, "error: {e}").ok();
            EXIT_USAGE
        }
    }
}

/// Parses `args` (program name first) and runs.
pub fn main_with_args<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli, out, err),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            if e.use_stderr() {
                write!(err, "{}", e.render()).ok();
            } else {
                write!(out, "{}", e.render()).ok();
            }
            code
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = main_with_args(std::iter::once("markov").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn spectrum_rows() {
        let (code, out, _) = run_str(&["spectrum", "--cmax", "29"]);
        assert_eq!(code, 0);
        let lines: Vec<&str> = out.lines().collect();
        assert_eq!(lines.len(), 5);
        for (l, d) in lines.iter().zip(["2.2", "2.8", "2.97", "2.996", "2.9992"]) {
            assert!(l.contains(&format!("= {d}")), "{l}");
        }
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(run_str(&["tree"]).0, 2);
        assert_eq!(run_str(&["tree", "--cmax", "0"]).0, 2);
        assert_eq!(run_str(&["approx", "--triple", "1,1,3", "--lambda", "2", "--qmax", "10"]).0, 2);
        assert_eq!(run_str(&["verify", "--suite", "nope"]).0, 2);
        assert_eq!(run_str(&["forms", "min", "--form", "1,2,1"]).0, 2);
    }

    #[test]
    fn forms_min_golden() {
        let (code, out, _) = run_str(&["forms", "min", "--form", "1,-1,-1", "--bound", "20"]);
        assert_eq!(code, 0);
        assert!(out.contains("min |f| = 1 at (1, 0)"), "{out}");
        assert!(out.contains("M(f) = 2/5*sqrt(5) = 0.89"), "{out}");
    }

    #[test]
    fn teich_flip_trajectory() {
        let (code, out, _) = run_str(&["teich", "flip", "--start", "1,1,1", "--moves", "1,2,1,3"]);
        assert_eq!(code, 0);
        let w: Vec<&str> = out.lines().map(|l| &l[l.find('(').unwrap()..=l.find(')').unwrap()]).collect();
        assert_eq!(w, ["(1, 1, 1)", "(2, 1, 1)", "(2, 5, 1)", "(13, 5, 1)", "(13, 5, 194)"]);
    }

    #[test]
    fn json_round_trips() {
        let (_, out, _) = run_str(&["tree", "--cmax", "100", "--json"]);
        let rows: Vec<TripleRow> = serde_json::from_str(&out).unwrap();
        assert_eq!(rows.len(), 7);
        assert_eq!(serde_json::to_string_pretty(&rows).unwrap() + "\n", out);
        let (_, out, _) = run_str(&["approx", "--triple", "1,1,1", "--lambda", "2", "--qmax", "50", "--json"]);
        let rep: ApproxReport = serde_json::from_str(&out).unwrap();
        assert_eq!(rep.count, rep.fractions.len());
    }
}
