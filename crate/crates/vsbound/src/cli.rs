//! Command-line front end. Exit codes: 0 all checks pass, 1 a mathematical
//! check failed, 2 input error, 3 budget exceeded.

use crate::fields::{factor_prime_power, make_field, make_tower, FieldError, FieldSpec};
use crate::padic::{compute_u_traced, UTraceRecord};
use crate::poly::{default_varnames, parse_poly, parse_vector};
use crate::polytope::{newton_polytope, newton_polytope_of};
use crate::rational::ExtRat;
use crate::svg::{render, PolytopePanel};
use crate::valueset::{
    is_budget_error, reports_to_csv, run_sweep, value_set_size, variety_ord_check, verify_bounds,
    SweepConfig, SweepFamily, VerifyOptions, VsError,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return 2;
        }
    };
    match dispatch(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            err.exit_code()
        }
    }
}

#[derive(Debug)]
enum CliError {
    Input(String),
    Budget(String),
    Io(std::io::Error),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(m) | CliError::Budget(m) => write!(f, "{m}"),
            CliError::Io(e) => write!(f, "{e}"),
        }
    }
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) | CliError::Io(_) => 2,
            CliError::Budget(_) => 3,
        }
    }
}

impl From<VsError> for CliError {
    fn from(e: VsError) -> Self {
        if is_budget_error(&e) {
            CliError::Budget(e.to_string())
        } else {
            CliError::Input(e.to_string())
        }
    }
}

impl From<FieldError> for CliError {
    fn from(e: FieldError) -> Self {
        match e {
            FieldError::BudgetExceeded { .. } => CliError::Budget(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<crate::poly::ParseError> for CliError {
    fn from(e: crate::poly::ParseError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<crate::padic::PadicError> for CliError {
    fn from(e: crate::padic::PadicError) -> Self {
        CliError::from(VsError::Padic(e))
    }
}

impl From<crate::polytope::PolytopeError> for CliError {
    fn from(e: crate::polytope::PolytopeError) -> Self {
        CliError::from(VsError::Polytope(e))
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

/// `p=<prime>,e=<degree>`; `e` defaults to 1.
#[derive(Debug, Clone)]
struct FieldParam {
    p: u64,
    e: usize,
}

impl FromStr for FieldParam {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let mut p = None;
        let mut e = 1usize;
        for part in s.split(',') {
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| format!("expected key=value, got {part:?}"))?;
            match key.trim() {
                "p" => {
                    p = Some(
                        value
                            .trim()
                            .parse()
                            .map_err(|_| format!("bad prime {value:?}"))?,
                    )
                }
                "e" => {
                    e = value
                        .trim()
                        .parse()
                        .map_err(|_| format!("bad degree {value:?}"))?
                }
                other => return Err(format!("unknown field parameter {other:?}")),
            }
        }
        Ok(FieldParam {
            p: p.ok_or("missing p=<prime>")?,
            e,
        })
    }
}

/// Inclusive range `lo..hi`, or a single value.
#[derive(Debug, Clone)]
struct RangeParam {
    lo: u64,
    hi: u64,
}

impl FromStr for RangeParam {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let (lo, hi) = match s.split_once("..") {
            Some((a, b)) => (
                a.trim()
                    .parse()
                    .map_err(|_| format!("bad range start {a:?}"))?,
                b.trim()
                    .parse()
                    .map_err(|_| format!("bad range end {b:?}"))?,
            ),
            None => {
                let v = s.trim().parse().map_err(|_| format!("bad range {s:?}"))?;
                (v, v)
            }
        };
        if lo > hi {
            return Err(format!("empty range {s:?}"));
        }
        Ok(RangeParam { lo, hi })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutFormat {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FamilyArg {
    Random,
    PolytopeSharp,
}

#[derive(Parser, Debug)]
#[command(
    name = "vsbound",
    version,
    about = "Value-set bounds for polynomial maps over finite fields: Newton-polytope dilation invariants, Teichmueller power sums, and exhaustive verification"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Exact dilation invariant of a polynomial's Newton polytope
    Mu(MuCmd),
    /// Full bounds report for a self-map of F_q^n
    Verify(MapCmd),
    /// Power-sum invariant U of the tower encoding of a map
    UInvariant(UCmd),
    /// Brute-force value-set cardinality
    Valueset(MapCmd),
    /// Seeded sweeps over random maps or the sharp family
    Sweep(SweepCmd),
    /// Polytope figure with dilation overlay (2 variables only)
    PolytopeSvg(SvgCmd),
    /// Valuation check for the rational-point count of a variety
    VarietyCheck(VarietyCmd),
}

#[derive(Args, Debug)]
struct MuCmd {
    /// Field as `p=<prime>,e=<degree>`
    #[arg(long)]
    field: FieldParam,
    /// Comma-separated variable names
    #[arg(long, value_delimiter = ',')]
    vars: Vec<String>,
    /// Polynomial text
    poly: String,
    #[arg(long)]
    out: Option<PathBuf>,
    /// `json` for the invariant, `csv` for the generator table
    #[arg(long, value_enum, default_value_t = OutFormat::Json)]
    format: OutFormat,
}

#[derive(Args, Debug)]
struct MapCmd {
    /// Field as `p=<prime>,e=<degree>`
    #[arg(long)]
    field: FieldParam,
    /// Variable names; defaults to x1,...,xm for m components
    #[arg(long, value_delimiter = ',')]
    vars: Option<Vec<String>>,
    /// Map text: components separated by `;`
    #[arg(long)]
    map: String,
    #[arg(long, default_value_t = 1 << 20)]
    budget_domain: u64,
    #[arg(long, default_value_t = 512)]
    budget_u: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct UCmd {
    #[command(flatten)]
    map: MapCmd,
    /// Write a JSON-lines record per scanned k
    #[arg(long)]
    trace: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct SweepCmd {
    /// Inclusive field-order range `lo..hi`; non-prime-powers are skipped
    #[arg(long, default_value = "2..5")]
    q: RangeParam,
    /// Number of variables (and components)
    #[arg(long, default_value_t = 2)]
    n: usize,
    #[arg(long, default_value_t = 4)]
    deg_max: u32,
    #[arg(long, default_value_t = 100)]
    samples: u64,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = FamilyArg::Random)]
    family: FamilyArg,
    /// Exponent range for the polytope-sharp family
    #[arg(long, default_value = "1..3")]
    a: RangeParam,
    #[arg(long, default_value_t = 1 << 20)]
    budget_domain: u64,
    #[arg(long, default_value_t = 512)]
    budget_u: u64,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = OutFormat::Json)]
    format: OutFormat,
}

#[derive(Args, Debug)]
struct SvgCmd {
    /// Field as `p=<prime>,e=<degree>`
    #[arg(long)]
    field: FieldParam,
    /// Variable names; defaults to x1,...,xm for m components
    #[arg(long, value_delimiter = ',')]
    vars: Option<Vec<String>>,
    /// Map text; one panel is drawn per component
    #[arg(long)]
    map: String,
    /// Dilation override such as `2/4` (defaults to each panel's invariant)
    #[arg(long)]
    dilation: Option<String>,
    /// Draw the joint polytope of the whole map in a single panel
    #[arg(long)]
    joint: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct VarietyCmd {
    /// Field as `p=<prime>,e=<degree>`
    #[arg(long)]
    field: FieldParam,
    /// Variable names (required: the component count need not match)
    #[arg(long, value_delimiter = ',')]
    vars: Vec<String>,
    /// Components of the variety, separated by `;`
    #[arg(long)]
    map: String,
    #[arg(long, default_value_t = 1 << 20)]
    budget_domain: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn dispatch(cli: Cli) -> Result<i32, CliError> {
    match cli.command {
        Command::Mu(cmd) => cmd_mu(cmd),
        Command::Verify(cmd) => cmd_verify(cmd),
        Command::UInvariant(cmd) => cmd_u(cmd),
        Command::Valueset(cmd) => cmd_valueset(cmd),
        Command::Sweep(cmd) => cmd_sweep(cmd),
        Command::PolytopeSvg(cmd) => cmd_svg(cmd),
        Command::VarietyCheck(cmd) => cmd_variety(cmd),
    }
}

fn field_of(param: &FieldParam) -> Result<FieldSpec, CliError> {
    Ok(make_field(param.p, param.e)?)
}

/// Default variable names when none are given: one per `;`-component.
fn vars_for_map(vars: Option<Vec<String>>, map_text: &str) -> Vec<String> {
    vars.unwrap_or_else(|| {
        let components = map_text.matches(';').count() + 1;
        default_varnames(components)
    })
}

fn write_output(path: Option<&Path>, content: &str) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, content)?,
        None => print!("{content}"),
    }
    Ok(())
}

#[derive(Serialize)]
struct MuOutput {
    mu: ExtRat,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<Vec<u32>>,
    generators: Vec<Vec<u32>>,
    degenerate: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    warning: Option<String>,
}

fn cmd_mu(cmd: MuCmd) -> Result<i32, CliError> {
    if cmd.vars.is_empty() {
        return Err(CliError::Input("--vars is required for mu".into()));
    }
    let spec = field_of(&cmd.field)?;
    let poly = parse_poly(&cmd.poly, &spec, &cmd.vars)?;
    let polytope = newton_polytope_of(&poly)?;
    let result = polytope.mu();
    let content = match cmd.format {
        OutFormat::Csv => polytope.to_csv(),
        OutFormat::Json => {
            let degenerate = result.mu.is_infinite();
            let out = MuOutput {
                mu: result.mu,
                witness: result.witness,
                generators: polytope.generators().to_vec(),
                degenerate,
                warning: degenerate.then(|| {
                    "no dilation contains a strictly positive lattice point; \
                     some variable is absent from the polynomial"
                        .to_string()
                }),
            };
            let mut s = serde_json::to_string(&out).expect("report serialization");
            s.push('\n');
            s
        }
    };
    write_output(cmd.out.as_deref(), &content)?;
    Ok(0)
}

fn cmd_verify(cmd: MapCmd) -> Result<i32, CliError> {
    let spec = field_of(&cmd.field)?;
    let vars = vars_for_map(cmd.vars.clone(), &cmd.map);
    let f = parse_vector(&cmd.map, &spec, &vars)?;
    let options = VerifyOptions {
        budget_domain: cmd.budget_domain,
        budget_u: cmd.budget_u,
    };
    let report = verify_bounds(&f, &spec, &vars, &options)?;
    let mut s = serde_json::to_string_pretty(&report).expect("report serialization");
    s.push('\n');
    write_output(cmd.out.as_deref(), &s)?;
    Ok(if report.all_checks_hold() { 0 } else { 1 })
}

#[derive(Serialize)]
struct UOutput {
    u: u64,
    witness_k: u64,
    precision: u32,
    s_value: Vec<Vec<u64>>,
}

fn cmd_u(cmd: UCmd) -> Result<i32, CliError> {
    let spec = field_of(&cmd.map.field)?;
    let vars = vars_for_map(cmd.map.vars.clone(), &cmd.map.map);
    let f = parse_vector(&cmd.map.map, &spec, &vars)?;
    let tower = make_tower(&spec, f.len())?;
    let mut trace: Vec<UTraceRecord> = Vec::new();
    let result = compute_u_traced(
        &f,
        &tower,
        cmd.map.budget_u,
        cmd.trace.is_some().then_some(&mut trace),
    )?;
    if let Some(path) = &cmd.trace {
        let mut lines = String::new();
        for record in &trace {
            lines.push_str(&serde_json::to_string(record).expect("trace serialization"));
            lines.push('\n');
        }
        std::fs::write(path, lines)?;
    }
    let out = UOutput {
        u: result.u,
        witness_k: result.witness_k,
        precision: result.precision,
        s_value: result.s_value.coeffs().to_vec(),
    };
    let mut s = serde_json::to_string(&out).expect("report serialization");
    s.push('\n');
    write_output(cmd.map.out.as_deref(), &s)?;
    Ok(0)
}

#[derive(Serialize)]
struct ValuesetOutput {
    vf_size: u64,
    domain_size: u64,
    permutation: bool,
}

fn cmd_valueset(cmd: MapCmd) -> Result<i32, CliError> {
    let spec = field_of(&cmd.field)?;
    let vars = vars_for_map(cmd.vars.clone(), &cmd.map);
    let f = parse_vector(&cmd.map, &spec, &vars)?;
    let domain = spec
        .q()
        .checked_pow(f.nvars() as u32)
        .ok_or_else(|| CliError::Budget("domain size overflows".into()))?;
    let vf = value_set_size(&f, &spec, cmd.budget_domain)?;
    let out = ValuesetOutput {
        vf_size: vf,
        domain_size: domain,
        permutation: vf == domain,
    };
    let mut s = serde_json::to_string(&out).expect("report serialization");
    s.push('\n');
    write_output(cmd.out.as_deref(), &s)?;
    Ok(0)
}

fn cmd_sweep(cmd: SweepCmd) -> Result<i32, CliError> {
    let mut q_values = Vec::new();
    for q in cmd.q.lo..=cmd.q.hi {
        if factor_prime_power(q).is_some() {
            q_values.push(q);
        } else {
            eprintln!("note: skipping q = {q} (not a prime power)");
        }
    }
    if q_values.is_empty() {
        return Err(CliError::Input("q range contains no prime powers".into()));
    }
    let family = match cmd.family {
        FamilyArg::Random => SweepFamily::Random,
        FamilyArg::PolytopeSharp => SweepFamily::PolytopeSharp {
            a_min: cmd.a.lo as u32,
            a_max: cmd.a.hi as u32,
        },
    };
    let cfg = SweepConfig {
        q_values,
        nvars: cmd.n,
        deg_max: cmd.deg_max,
        samples: cmd.samples,
        seed: cmd.seed,
        family,
        options: VerifyOptions {
            budget_domain: cmd.budget_domain,
            budget_u: cmd.budget_u,
        },
    };
    let output = run_sweep(&cfg)?;
    let content = match cmd.format {
        OutFormat::Json => {
            let mut s = serde_json::to_string_pretty(&output).expect("report serialization");
            s.push('\n');
            s
        }
        OutFormat::Csv => reports_to_csv(&output.reports),
    };
    write_output(cmd.out.as_deref(), &content)?;
    Ok(if output.summary.violations.total() == 0 {
        0
    } else {
        1
    })
}

fn cmd_svg(cmd: SvgCmd) -> Result<i32, CliError> {
    let spec = field_of(&cmd.field)?;
    let vars = vars_for_map(cmd.vars.clone(), &cmd.map);
    let f = parse_vector(&cmd.map, &spec, &vars)?;
    if f.nvars() != 2 {
        return Err(CliError::Input(format!(
            "polytope-svg draws 2-variable polytopes only, got {} variables",
            f.nvars()
        )));
    }
    let override_dilation = cmd
        .dilation
        .as_deref()
        .map(|s| {
            ExtRat::parse(s)
                .ok()
                .and_then(|r| r.as_finite().cloned())
                .ok_or_else(|| CliError::Input(format!("bad dilation {s:?}")))
        })
        .transpose()?;

    let mut panels = Vec::new();
    let mut push_panel = |title: String, poly: crate::polytope::LatticePolytope| {
        let mu = poly.mu();
        let (dilation, label) = match (&override_dilation, &mu.mu) {
            (Some(k), _) => (
                Some(k.clone()),
                Some(format!("dilation {}/{}", k.numer(), k.denom())),
            ),
            (None, ExtRat::Finite(m)) => (
                Some(m.clone()),
                Some(format!("mu = {}/{}", m.numer(), m.denom())),
            ),
            (None, ExtRat::Infinity) => (None, Some("mu = inf".to_string())),
        };
        panels.push(PolytopePanel {
            title,
            polytope: poly,
            dilation,
            dilation_label: label,
            witness: mu.witness,
        });
    };

    if cmd.joint {
        push_panel("joint polytope".to_string(), newton_polytope(&f)?);
    } else {
        for (i, comp) in f.components().iter().enumerate() {
            let title = crate::poly::format_poly(comp, &spec, &vars);
            let poly = newton_polytope_of::<crate::fields::FFElement>(comp)
                .map_err(|e| CliError::Input(format!("component {}: {e}", i + 1)))?;
            push_panel(title, poly);
        }
    }
    let svg = render(&panels).map_err(|e| CliError::Input(e.to_string()))?;
    write_output(cmd.out.as_deref(), &svg)?;
    Ok(0)
}

fn cmd_variety(cmd: VarietyCmd) -> Result<i32, CliError> {
    if cmd.vars.is_empty() {
        return Err(CliError::Input(
            "--vars is required for variety-check".into(),
        ));
    }
    let spec = field_of(&cmd.field)?;
    let f = parse_vector(&cmd.map, &spec, &cmd.vars)?;
    let check = variety_ord_check(&f, &spec, &cmd.vars, cmd.budget_domain)?;
    let mut s = serde_json::to_string_pretty(&check).expect("report serialization");
    s.push('\n');
    write_output(cmd.out.as_deref(), &s)?;
    Ok(if check.holds { 0 } else { 1 })
}
