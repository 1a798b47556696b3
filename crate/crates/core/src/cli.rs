//! The `lip` command line. [`run`] parses an argument vector, performs one
//! computation and renders it as text or as a JSON report; the binary only
//! prints the result and exits with its code.
//!
//! Exit codes: 0 when the computation finished (whatever the verdict), 1 for
//! usage and parse errors, 2 for precondition and domain errors.

use std::fmt::Write as _;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::continuation::{admissible_extension, branch_coefficients, build_example3, BranchSetup, ExtensionClass};
use crate::error::{LipError, Result};
use crate::exactpoly::{interpolate_points, Sample};
use crate::gluing::{glue_check_with, Agreement, GlueOptions, GluingFamily, GluingReport, Precondition};
use crate::lipcore::{
    catalog_eval_capped, example1_bound, factorial_threshold, find_circuit, lip_check, newton_decompose, Decomposition,
    Enumeration, FunctionSpec, LipVerdict, DEFAULT_CAP_TERMS,
};
use crate::numeric::{serde_str, Integer, Rational};
use crate::sets::{
    ap_intersect, density, is_cofinite, kirch_basic_check, meets_infinitely_bounded, normalize_with, parse,
    MeetVerdict, NormalSet, NormalizeOptions, Progression, SetExpr, DEFAULT_MAX_MODULUS, DEFAULT_PRIMES_BOUND,
};

pub const MAX_MODULUS_ENV: &str = "LIP_MAX_MODULUS";

#[derive(Debug, Parser)]
#[command(name = "lip", about = "Exact computations with locally integer-polynomial functions")]
struct Cli {
    /// Emit a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Leave run-dependent diagnostics out of the JSON report.
    #[arg(long, global = true)]
    stable: bool,
    /// Hard cap on series terms when evaluating catalog functions.
    #[arg(long, global = true, default_value_t = DEFAULT_CAP_TERMS)]
    cap_terms: usize,
    /// Search bound for primes in progressions.
    #[arg(long, global = true, default_value_t = DEFAULT_PRIMES_BOUND)]
    primes_bound: u64,
    /// Largest modulus allowed in a set normal form.
    #[arg(long, global = true)]
    max_modulus: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct SampleArgs {
    /// Points as "(x,y),(x,y),...".
    #[arg(long, allow_hyphen_values = true, conflicts_with = "function")]
    points: Option<String>,
    /// Function spec as inline JSON or a path to a JSON file.
    #[arg(long = "fn")]
    function: Option<String>,
    /// Set expression restricting the window (default Z).
    #[arg(long, allow_hyphen_values = true)]
    set: Option<String>,
    /// Inclusive window "lo..hi".
    #[arg(long, allow_hyphen_values = true)]
    window: Option<String>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Interpolate a finite sample and report integrality.
    Interp {
        #[arg(long, allow_hyphen_values = true)]
        points: String,
    },
    /// Decide consistency of a sample, with a witness or a circuit.
    Check(SampleArgs),
    /// Extract a circuit from an inconsistent sample.
    Circuit(SampleArgs),
    /// Newton-series coefficients along an enumeration.
    Series {
        /// Points in enumeration order.
        #[arg(long, allow_hyphen_values = true, conflicts_with = "function")]
        points: Option<String>,
        #[arg(long = "fn")]
        function: Option<String>,
        /// "standard", "naturals" or a comma-separated list.
        #[arg(long, allow_hyphen_values = true, default_value = "standard")]
        sigma: String,
        /// Number of terms when using --fn with a named enumeration.
        #[arg(long, default_value_t = 8)]
        len: usize,
    },
    /// Admissible values at a new point for two conflicting branches.
    Extend {
        /// Points on X ∪ {a, b}.
        #[arg(long, allow_hyphen_values = true)]
        points: String,
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
    },
    /// The function on 2Z ∪ {-1, 1} that is consistent off either odd point.
    Example3 {
        #[arg(long, allow_hyphen_values = true)]
        n: String,
    },
    /// Set algebra.
    Sets {
        #[command(subcommand)]
        op: SetsOp,
    },
    /// Check a gluing family given as inline JSON or a JSON file.
    Glue {
        #[arg(long)]
        family: String,
        /// Stop after the first failed stage.
        #[arg(long)]
        fail_fast: bool,
    },
    /// Tabulate a function over a window.
    Catalog {
        #[arg(long = "fn")]
        function: String,
        #[arg(long, allow_hyphen_values = true)]
        window: String,
    },
    /// Compare values with the factorial threshold and the (2|x|-1)! bound.
    ReportGrowth {
        #[arg(long = "fn")]
        function: String,
        #[arg(long, allow_hyphen_values = true)]
        window: String,
    },
}

#[derive(Debug, Subcommand)]
enum SetsOp {
    /// Intersect two progressions.
    Intersect {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
    },
    Normalize {
        #[arg(long, allow_hyphen_values = true)]
        set: String,
    },
    /// Does the set contain infinitely many terms of the target progression?
    Meets {
        #[arg(long, allow_hyphen_values = true)]
        set: String,
        #[arg(long, allow_hyphen_values = true)]
        target: String,
    },
    Density {
        #[arg(long, allow_hyphen_values = true)]
        set: String,
    },
    /// Is a + dZ_{>=0} a basic open of the Kirch topology?
    Kirch {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        d: String,
    },
}

/// What a single invocation produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub args: Vec<String>,
    pub inputs_sha256: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub result: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub error: Option<ErrorInfo>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub diagnostics: Option<Value>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorInfo {
    pub exit_code: i32,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InterpResult {
    pub polynomial: String,
    #[serde(with = "serde_str::rational_vec")]
    pub coeffs: Vec<Rational>,
    pub integer: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtendResult {
    #[serde(with = "serde_str::integer")]
    pub alpha: Integer,
    #[serde(with = "serde_str::integer")]
    pub beta: Integer,
    pub class: ExtensionClass,
    #[serde(with = "serde_str::integer")]
    pub chosen: Integer,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Example3Result {
    pub sample: Sample,
    pub without_minus_one: LipVerdict,
    pub without_one: LipVerdict,
    pub full: LipVerdict,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GrowthRow {
    #[serde(with = "serde_str::integer")]
    pub x: Integer,
    #[serde(with = "serde_str::integer")]
    pub value: Integer,
    /// `(2|x|-1)!/2^(2|x|-1)`; absent at `x = 0`.
    #[serde(with = "opt_rational")]
    pub threshold: Option<Rational>,
    #[serde(with = "serde_str::integer")]
    pub example1_bound: Integer,
    pub exceeds_threshold: Option<bool>,
    pub within_example1_bound: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GrowthReport {
    pub rows: Vec<GrowthRow>,
    pub threshold_exceedances: usize,
    pub example1_bound_violations: usize,
    pub polynomial: bool,
}

mod opt_rational {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &Option<Rational>, s: S) -> std::result::Result<S::Ok, S::Error> {
        match v {
            Some(r) => s.serialize_some(&r.to_string()),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Option<Rational>, D::Error> {
        Option::<String>::deserialize(d)?
            .map(|t| {
                serde_str::parse_rational(&t).ok_or_else(|| serde::de::Error::custom(format!("bad rational {t:?}")))
            })
            .transpose()
    }
}

/// Parses `"(x,y),(x,y),..."`, keeping the given order.
pub fn parse_points(text: &str) -> Result<Vec<(Integer, Integer)>> {
    let bad = || LipError::Input(format!("points must look like \"(x,y),(x,y)\", got {text:?}"));
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let body = compact.strip_prefix('(').and_then(|t| t.strip_suffix(')')).ok_or_else(bad)?;
    body.split("),(")
        .map(|pair| {
            let (x, y) = pair.split_once(',').ok_or_else(bad)?;
            let x = serde_str::parse_integer(x).ok_or_else(bad)?;
            let y = serde_str::parse_integer(y).ok_or_else(bad)?;
            Ok((x, y))
        })
        .collect()
}

/// Parses an inclusive window `"lo..hi"`.
pub fn parse_window(text: &str) -> Result<(Integer, Integer)> {
    let bad = || LipError::Input(format!("window must look like \"lo..hi\", got {text:?}"));
    let (lo, hi) = text.split_once("..").ok_or_else(bad)?;
    let lo = serde_str::parse_integer(lo).ok_or_else(bad)?;
    let hi = serde_str::parse_integer(hi).ok_or_else(bad)?;
    if lo > hi {
        return Err(LipError::Input(format!("empty window {text:?}")));
    }
    Ok((lo, hi))
}

fn parse_int(text: &str, what: &str) -> Result<Integer> {
    serde_str::parse_integer(text).ok_or_else(|| LipError::Input(format!("{what} must be an integer, got {text:?}")))
}

fn parse_progression(text: &str) -> Result<Progression> {
    match parse(text)? {
        SetExpr::Prog(p) => Ok(p),
        other => Err(LipError::Input(format!("expected ap(a,d) or apz(a,d), got {other}"))),
    }
}

struct Context {
    stable: bool,
    cap_terms: usize,
    primes_bound: u64,
    max_modulus: u64,
    /// Contents of files read, folded into the inputs digest.
    files: Vec<String>,
}

impl Context {
    /// Inline JSON if it starts with `{`, otherwise a file path.
    fn json_input(&mut self, text: &str) -> Result<String> {
        if text.trim_start().starts_with('{') {
            return Ok(text.to_string());
        }
        let body = std::fs::read_to_string(text).map_err(|e| LipError::Input(format!("cannot read {text:?}: {e}")))?;
        self.files.push(body.clone());
        Ok(body)
    }

    fn function(&mut self, text: &str) -> Result<FunctionSpec> {
        let body = self.json_input(text)?;
        serde_json::from_str(&body).map_err(|e| LipError::Input(format!("bad function spec: {e}")))
    }

    fn normalize_opts(&self) -> NormalizeOptions {
        NormalizeOptions { max_modulus: self.max_modulus }
    }

    fn sample(&mut self, args: &SampleArgs) -> Result<Sample> {
        if let Some(points) = &args.points {
            return Sample::new(parse_points(points)?);
        }
        let Some(function) = &args.function else {
            return Err(LipError::Input("give --points or --fn".into()));
        };
        let spec = self.function(function)?;
        let window = args.window.as_deref().ok_or_else(|| LipError::Input("--fn needs --window lo..hi".into()))?;
        let (lo, hi) = parse_window(window)?;
        let set = parse(args.set.as_deref().unwrap_or("Z"))?;
        let n = normalize_with(&set, &self.normalize_opts())?;
        let pts = n
            .members_in(&lo, &hi)
            .into_iter()
            .map(|x| catalog_eval_capped(&spec, &x, self.cap_terms).map(|y| (x, y)))
            .collect::<Result<Vec<_>>>()?;
        Sample::new(pts).map_err(|_| LipError::Precondition(format!("{set} has no points in {window}")))
    }
}

/// Text and JSON renderings of one result.
struct Rendered {
    text: String,
    value: Value,
}

fn rendered<T: Serialize>(text: String, payload: &T) -> Result<Rendered> {
    let value = serde_json::to_value(payload).map_err(|e| LipError::Input(e.to_string()))?;
    Ok(Rendered { text, value })
}

fn verdict_text(v: &LipVerdict) -> String {
    match v {
        LipVerdict::Consistent { witness } => format!("Consistent: {witness}"),
        LipVerdict::Inconsistent { circuit } => format!(
            "Inconsistent: circuit {{{}}}, leading coefficient {}, d = {}",
            join(&circuit.elements),
            circuit.leading_coeff,
            circuit.denominator
        ),
    }
}

fn meet_text(v: &MeetVerdict) -> String {
    match v {
        MeetVerdict::InfinitelyMany { witness, primes } if primes.is_empty() => {
            format!("InfinitelyMany: {witness}")
        }
        MeetVerdict::InfinitelyMany { witness, primes } => {
            format!("InfinitelyMany: {witness} (primes {})", join(primes))
        }
        MeetVerdict::FinitelyMany => "FinitelyMany".into(),
        MeetVerdict::Unknown { search_bound } => format!("Unknown: no two primes below {search_bound}"),
    }
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

fn dispatch(cmd: &Command, ctx: &mut Context) -> Result<Rendered> {
    match cmd {
        Command::Interp { points } => {
            let pts = parse_points(points)?;
            Sample::new(pts.clone())?;
            let p = interpolate_points(&pts);
            let integer = p.is_integer();
            let text = format!("{p}, {}", if integer { "integer" } else { "NOT integer" });
            let payload = InterpResult { polynomial: p.to_string(), coeffs: p.coeffs().to_vec(), integer };
            rendered(text, &payload)
        }
        Command::Check(args) => {
            let v = lip_check(&ctx.sample(args)?);
            rendered(verdict_text(&v), &v)
        }
        Command::Circuit(args) => {
            let c = find_circuit(&ctx.sample(args)?)?;
            let text = format!(
                "circuit {{{}}}, leading coefficient {}, d = {}",
                join(&c.elements),
                c.leading_coeff,
                c.denominator
            );
            rendered(text, &c)
        }
        Command::Series { points, function, sigma, len } => {
            let (enumeration, values) = match (points, function) {
                (Some(p), _) => {
                    let pts = parse_points(p)?;
                    let (xs, ys): (Vec<Integer>, Vec<Integer>) = pts.into_iter().unzip();
                    (Enumeration::new(xs)?, ys)
                }
                (None, Some(f)) => {
                    let spec = ctx.function(f)?;
                    let e = match sigma.as_str() {
                        "standard" => Enumeration::standard_integers(*len),
                        "naturals" => Enumeration::naturals(*len),
                        list => Enumeration::new(
                            list.split(',').map(|t| parse_int(t, "sigma entry")).collect::<Result<_>>()?,
                        )?,
                    };
                    let ys = e
                        .prefix()
                        .iter()
                        .map(|x| catalog_eval_capped(&spec, x, ctx.cap_terms))
                        .collect::<Result<Vec<_>>>()?;
                    (e, ys)
                }
                (None, None) => return Err(LipError::Input("give --points or --fn".into())),
            };
            let d = newton_decompose(&enumeration, &values)?;
            let text = match &d {
                Decomposition::Integral { series: ns } => format!("coefficients {}", join(&ns.coeffs)),
                Decomposition::NonIntegral { index, coefficient } => {
                    format!("not integral: a_{index} = {coefficient}")
                }
            };
            rendered(text, &d)
        }
        Command::Extend { points, a, b, x } => {
            let s = Sample::new(parse_points(points)?)?;
            let setup = BranchSetup::from_sample(&s, &parse_int(a, "a")?, &parse_int(b, "b")?)?;
            let (alpha, beta) = branch_coefficients(&setup)?;
            let class = admissible_extension(&setup, &parse_int(x, "x")?)?;
            let chosen = class.min_abs();
            let text = format!("alpha = {alpha}, beta = {beta}; admissible values {class}; smallest {chosen}");
            rendered(text, &ExtendResult { alpha, beta, class, chosen })
        }
        Command::Example3 { n } => {
            let s = build_example3(&parse_int(n, "n")?)?;
            let minus = Integer::from(-1);
            let plus = Integer::from(1);
            let payload = Example3Result {
                without_minus_one: lip_check(&s.without(&minus).expect("several points")),
                without_one: lip_check(&s.without(&plus).expect("several points")),
                full: lip_check(&s),
                sample: s,
            };
            let text = format!(
                "{}\nwithout -1: {}\nwithout 1: {}\nfull: {}",
                payload.sample,
                verdict_text(&payload.without_minus_one),
                verdict_text(&payload.without_one),
                verdict_text(&payload.full)
            );
            rendered(text, &payload)
        }
        Command::Sets { op } => sets(op, ctx),
        Command::Glue { family, fail_fast } => {
            let body = ctx.json_input(family)?;
            let fam: GluingFamily =
                serde_json::from_str(&body).map_err(|e| LipError::Input(format!("bad gluing family: {e}")))?;
            let opts = GlueOptions {
                fail_fast: *fail_fast,
                primes_bound: ctx.primes_bound,
                max_modulus: ctx.max_modulus,
                cap_terms: ctx.cap_terms,
            };
            let r = glue_check_with(&fam, &opts)?;
            rendered(glue_text(&r), &r)
        }
        Command::Catalog { function, window } => {
            let spec = ctx.function(function)?;
            let (lo, hi) = parse_window(window)?;
            let mut pts = Vec::new();
            let mut x = lo;
            while x <= hi {
                let y = catalog_eval_capped(&spec, &x, ctx.cap_terms)?;
                pts.push((x.clone(), y));
                x += 1;
            }
            let s = Sample::new(pts)?;
            let text = s.points().iter().map(|(x, y)| format!("{x}\t{y}")).collect::<Vec<_>>().join("\n");
            rendered(text, &s)
        }
        Command::ReportGrowth { function, window } => {
            let spec = ctx.function(function)?;
            let (lo, hi) = parse_window(window)?;
            let g = report_growth(&spec, &lo, &hi, ctx.cap_terms)?;
            rendered(growth_text(&g), &g)
        }
    }
}

fn sets(op: &SetsOp, ctx: &mut Context) -> Result<Rendered> {
    let nopts = ctx.normalize_opts();
    match op {
        SetsOp::Intersect { a, b } => {
            let r = ap_intersect(&parse_progression(a)?, &parse_progression(b)?);
            let text = r.as_ref().map_or("empty".to_string(), ToString::to_string);
            rendered(text, &json!({ "intersection": r }))
        }
        SetsOp::Normalize { set } => {
            let n = normalize_with(&parse(set)?, &nopts)?;
            rendered(n.to_string(), &n)
        }
        SetsOp::Meets { set, target } => {
            let n = normalize_with(&parse(set)?, &nopts)?;
            let v = meets_infinitely_bounded(&n, &parse_progression(target)?, ctx.primes_bound);
            rendered(meet_text(&v), &v)
        }
        SetsOp::Density { set } => {
            let n: NormalSet = normalize_with(&parse(set)?, &nopts)?;
            let d = density(&n)?;
            let cofinite = is_cofinite(&n);
            let text = format!("{d}{}", if cofinite { " (cofinite)" } else { "" });
            rendered(
                text,
                &json!({ "density": d.to_string(), "density_one": d == Rational::from_integer(1.into()), "cofinite": cofinite }),
            )
        }
        SetsOp::Kirch { a, d } => {
            let ok = kirch_basic_check(&parse_int(a, "a")?, &parse_int(d, "d")?)?;
            rendered(ok.to_string(), &json!({ "basic": ok }))
        }
    }
}

fn glue_text(r: &GluingReport) -> String {
    let mut out = String::new();
    match &r.precondition {
        Precondition::Ok => out.push_str("precondition: OK"),
        Precondition::Violation { piece1, piece2, a1, a2, verdict } => {
            let _ = write!(
                out,
                "precondition: Violation between pieces {piece1} and {piece2} at ({a1}, {a2}): {}",
                meet_text(verdict)
            );
        }
    }
    match &r.agreement {
        Some(Agreement::Ok) => out.push_str("\nagreement: OK"),
        Some(Agreement::Mismatch { x, piece1, piece2, y1, y2 }) => {
            let _ = write!(out, "\nagreement: Mismatch at {x}: piece {piece1} gives {y1}, piece {piece2} gives {y2}");
        }
        None => {}
    }
    if let Some(pieces) = &r.pieces {
        for (i, v) in pieces.iter().enumerate() {
            let _ = write!(out, "\npiece {i}: {}", verdict_text(v));
        }
    }
    if let Some(v) = &r.verdict {
        let _ = write!(out, "\nunion: {}", verdict_text(v));
    }
    out
}

/// Per-point comparison of `|f(x)|` with the factorial threshold and with
/// `(2|x|-1)!`.
pub fn report_growth(spec: &FunctionSpec, lo: &Integer, hi: &Integer, cap_terms: usize) -> Result<GrowthReport> {
    let mut rows = Vec::new();
    let mut x = lo.clone();
    while &x <= hi {
        let value = catalog_eval_capped(spec, &x, cap_terms)?;
        let size = Rational::from_integer(num_traits::Signed::abs(&value));
        let threshold = if num_traits::Zero::is_zero(&x) { None } else { Some(factorial_threshold(&x)?) };
        let bound = example1_bound(&x)?;
        rows.push(GrowthRow {
            exceeds_threshold: threshold.as_ref().map(|t| &size > t),
            within_example1_bound: size <= Rational::from_integer(bound.clone()),
            x: x.clone(),
            value,
            threshold,
            example1_bound: bound,
        });
        x += 1;
    }
    Ok(GrowthReport {
        threshold_exceedances: rows.iter().filter(|r| r.exceeds_threshold == Some(true)).count(),
        example1_bound_violations: rows.iter().filter(|r| !r.within_example1_bound).count(),
        polynomial: spec.is_polynomial(),
        rows,
    })
}

fn growth_text(g: &GrowthReport) -> String {
    let mut out = String::from("x\tf(x)\tthreshold\t(2|x|-1)!\tabove threshold\twithin bound");
    for r in &g.rows {
        let t = r.threshold.as_ref().map_or("n/a".to_string(), ToString::to_string);
        let above = r.exceeds_threshold.map_or("n/a".to_string(), |b| b.to_string());
        let _ = write!(out, "\n{}\t{}\t{t}\t{}\t{above}\t{}", r.x, r.value, r.example1_bound, r.within_example1_bound);
    }
    let _ = write!(
        out,
        "\n{} threshold exceedances, {} bound violations over {} points",
        g.threshold_exceedances,
        g.example1_bound_violations,
        g.rows.len()
    );
    if g.polynomial {
        out.push_str("; polynomial, so exceedances are confined to small |x|");
    }
    out
}

fn command_name(cmd: &Command) -> String {
    match cmd {
        Command::Interp { .. } => "interp".into(),
        Command::Check(_) => "check".into(),
        Command::Circuit(_) => "circuit".into(),
        Command::Series { .. } => "series".into(),
        Command::Extend { .. } => "extend".into(),
        Command::Example3 { .. } => "example3".into(),
        Command::Sets { op } => format!(
            "sets {}",
            match op {
                SetsOp::Intersect { .. } => "intersect",
                SetsOp::Normalize { .. } => "normalize",
                SetsOp::Meets { .. } => "meets",
                SetsOp::Density { .. } => "density",
                SetsOp::Kirch { .. } => "kirch",
            }
        ),
        Command::Glue { .. } => "glue".into(),
        Command::Catalog { .. } => "catalog".into(),
        Command::ReportGrowth { .. } => "report-growth".into(),
    }
}

/// Runs one invocation, reading the modulus cap override from the
/// environment.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<String>,
{
    run_with_env(argv, std::env::var(MAX_MODULUS_ENV).ok())
}

/// As [`run`], with the `LIP_MAX_MODULUS` value passed explicitly. An
/// explicit `--max-modulus` flag wins over it.
pub fn run_with_env<I, T>(argv: I, env_max_modulus: Option<String>) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<String>,
{
    let argv: Vec<String> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { stdout: text, stderr: String::new(), code }
            } else {
                Outcome { stdout: String::new(), stderr: text, code }
            };
        }
    };
    let started = Instant::now();
    let env_cap = match env_max_modulus.as_deref().map(str::parse::<u64>) {
        Some(Ok(v)) => Some(v),
        Some(Err(_)) => {
            return Outcome {
                stdout: String::new(),
                stderr: format!("error: {MAX_MODULUS_ENV} must be a positive integer\n"),
                code: 1,
            }
        }
        None => None,
    };
    let mut ctx = Context {
        stable: cli.stable,
        cap_terms: cli.cap_terms,
        primes_bound: cli.primes_bound,
        max_modulus: cli.max_modulus.or(env_cap).unwrap_or(DEFAULT_MAX_MODULUS),
        files: Vec::new(),
    };
    let outcome = dispatch(&cli.command, &mut ctx);

    let args: Vec<String> = argv.iter().skip(1).cloned().collect();
    let mut hasher = Sha256::new();
    for piece in args.iter().chain(&ctx.files) {
        hasher.update(piece.as_bytes());
        hasher.update([0u8]);
    }
    let inputs_sha256 = format!("{:x}", hasher.finalize());
    let diagnostics = (!ctx.stable).then(|| {
        json!({
            "elapsed_us": started.elapsed().as_micros() as u64,
            "cap_terms": ctx.cap_terms,
            "primes_bound": ctx.primes_bound,
            "max_modulus": ctx.max_modulus,
        })
    });
    let mut report =
        Report { command: command_name(&cli.command), args, inputs_sha256, result: None, error: None, diagnostics };
    let (text, stderr, code) = match outcome {
        Ok(r) => {
            report.result = Some(r.value);
            (r.text, String::new(), 0)
        }
        Err(e) => {
            let code = if e.is_usage() { 1 } else { 2 };
            let message = e.to_string();
            report.error = Some(ErrorInfo { exit_code: code, message: message.clone() });
            (String::new(), format!("error: {message}\n"), code)
        }
    };
    let stdout = if cli.json {
        let mut s = serde_json::to_string_pretty(&report).expect("report serializes");
        s.push('\n');
        s
    } else if text.is_empty() {
        text
    } else {
        format!("{text}\n")
    };
    Outcome { stdout, stderr, code }
}
