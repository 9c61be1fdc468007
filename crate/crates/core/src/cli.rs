//! Command-line front end. Every command prints one JSON [`Report`] and
//! exits with 0 (ok), 2 (bad input), 3 (a check failed) or 4 (a cap was hit).

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::analytic_sl2::coefficients::PROBE_TOL;
use crate::analytic_sl2::experiment::RATIO_BOUND;
use crate::analytic_sl2::quadrature::{schur_residual, Su2Quadrature};
use crate::analytic_sl2::su2::{euler, exp_a, exp_n};
use crate::analytic_sl2::{
    convergence_experiment, iwasawa, key_property_probe, motion_limit_coeff, motion_rep_coeff, Sl2Error,
    Sl2Scenario, C64,
};
use crate::duals::{normalize_motion, normalize_tempered, DualsError};
use crate::mackey::{
    closed_truncation, decompose_pi_alpha, mackey_mu, mackey_mu_inverse, uniqueness_search, uniqueness_search_on,
    MackeyError, DEFAULT_SEARCH_CAP,
};
use crate::root_datum::{RootDatum, RootDatumError, RootDatumSpec, DEFAULT_WEYL_ORDER_CAP};
use crate::weight::{parse_nu_list, parse_weight_list, NuVector, WeightVec};

pub const SCHEMA_VERSION: u32 = 1;

pub const EXIT_PARSE: i32 = 2;
pub const EXIT_VERIFY: i32 = 3;
pub const EXIT_CAP: i32 = 4;

#[derive(Debug)]
pub enum CliError {
    Parse(String),
    Verify(String),
    Cap(String),
}

impl CliError {
    pub fn code(&self) -> i32 {
        match self {
            CliError::Parse(_) => EXIT_PARSE,
            CliError::Verify(_) => EXIT_VERIFY,
            CliError::Cap(_) => EXIT_CAP,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Parse(m) | CliError::Verify(m) | CliError::Cap(m) => m,
        }
    }
}

impl From<RootDatumError> for CliError {
    fn from(e: RootDatumError) -> Self {
        match e {
            RootDatumError::OrderCapExceeded { .. } => CliError::Cap(e.to_string()),
            _ => CliError::Parse(e.to_string()),
        }
    }
}

impl From<DualsError> for CliError {
    fn from(e: DualsError) -> Self {
        match e {
            DualsError::Datum(d) => d.into(),
            _ => CliError::Parse(e.to_string()),
        }
    }
}

impl From<MackeyError> for CliError {
    fn from(e: MackeyError) -> Self {
        match e {
            MackeyError::SearchCapExceeded { .. } => CliError::Cap(e.to_string()),
            MackeyError::Datum(d) => d.into(),
            MackeyError::Duals(d) => d.into(),
            _ => CliError::Parse(e.to_string()),
        }
    }
}

impl From<Sl2Error> for CliError {
    fn from(e: Sl2Error) -> Self {
        match e {
            Sl2Error::QuadratureUnconverged { .. } => CliError::Verify(e.to_string()),
            _ => CliError::Parse(e.to_string()),
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "mackey-field", version, about = "Principal series, motion-group duals and their contraction")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Directory for report.json and any CSV output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Validate a root datum JSON file.
    RootsValidate {
        path: PathBuf,
        #[arg(long, default_value_t = DEFAULT_WEYL_ORDER_CAP)]
        cap: usize,
    },
    /// Canonical representative of a parameter.
    DualNormalize {
        #[command(flatten)]
        param: ParamArgs,
        #[arg(long, value_enum, default_value_t = Kind::Tempered)]
        kind: Kind,
    },
    /// Apply the Mackey bijection or its inverse.
    MackeyMap {
        #[command(flatten)]
        param: ParamArgs,
        #[arg(long, value_enum, default_value_t = Direction::Forward)]
        direction: Direction,
    },
    /// Truncated restriction of a principal series to the motion group.
    Decompose {
        #[command(flatten)]
        param: ParamArgs,
        #[arg(long)]
        radius: i64,
    },
    /// Exhaustive search for order-respecting bijections on a truncation.
    Uniqueness {
        #[arg(long)]
        datum: String,
        #[arg(long, allow_hyphen_values = true)]
        nu: String,
        #[arg(long)]
        radius: i64,
        #[arg(long, default_value_t = DEFAULT_SEARCH_CAP)]
        cap: u64,
        /// Search the largest downward-closed part of the box instead.
        #[arg(long)]
        closed: bool,
    },
    /// SL(2,C) experiments on a scenario file.
    Sl2 {
        #[arg(value_enum)]
        which: Sl2Command,
        scenario: PathBuf,
        #[arg(long)]
        tol: Option<f64>,
    },
}

#[derive(clap::Args, Debug)]
pub struct ParamArgs {
    /// Datum name (`A2`, `C2+T1`, ...) or a JSON file.
    #[arg(long)]
    pub datum: String,
    /// Comma-separated integers.
    #[arg(long, allow_hyphen_values = true)]
    pub sigma: String,
    /// Comma-separated rationals `p/q`.
    #[arg(long, allow_hyphen_values = true)]
    pub nu: String,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Kind {
    Tempered,
    Motion,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Direction {
    Forward,
    Inverse,
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Sl2Command {
    Limit,
    Keyprop,
    Motionrep,
    Iwasawa,
}

/// What every command prints.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub command: Vec<String>,
    /// Seconds since the Unix epoch; not part of the digest.
    pub timestamp: u64,
    /// SHA-256 of the command line and every input file.
    pub inputs_digest: String,
    pub payload: Value,
    pub pass: BTreeMap<String, bool>,
}

impl Report {
    pub fn all_pass(&self) -> bool {
        self.pass.values().all(|&b| b)
    }
}

struct Outcome {
    payload: Value,
    pass: BTreeMap<String, bool>,
    files: Vec<(String, Vec<u8>)>,
}

impl Outcome {
    fn new(payload: Value) -> Self {
        Outcome { payload, pass: BTreeMap::new(), files: Vec::new() }
    }

    fn flag(mut self, name: &str, ok: bool) -> Self {
        self.pass.insert(name.to_string(), ok);
        self
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}

fn load_datum(arg: &str, cap: usize, inputs: &mut Vec<u8>) -> Result<RootDatum, CliError> {
    if Path::new(arg).is_file() {
        let text = read(Path::new(arg))?;
        inputs.extend_from_slice(text.as_bytes());
        let spec: RootDatumSpec = serde_json::from_str(&text).map_err(|e| CliError::Parse(e.to_string()))?;
        Ok(RootDatum::from_spec(&spec, cap)?)
    } else {
        Ok(RootDatum::named(arg)?)
    }
}

fn parse_param(p: &ParamArgs, inputs: &mut Vec<u8>) -> Result<(RootDatum, WeightVec, NuVector), CliError> {
    let datum = load_datum(&p.datum, DEFAULT_WEYL_ORDER_CAP, inputs)?;
    let sigma = parse_weight_list(&p.sigma).map_err(CliError::Parse)?;
    let nu = parse_nu_list(&p.nu).map_err(CliError::Parse)?;
    datum.check_dim(&sigma)?;
    datum.check_dim(&nu)?;
    Ok((datum, sigma, nu))
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report payloads serialize")
}

fn c64(v: C64) -> Value {
    json!([v.re, v.im])
}

fn load_scenario(path: &Path, tol: Option<f64>, inputs: &mut Vec<u8>) -> Result<Sl2Scenario, CliError> {
    let text = read(path)?;
    inputs.extend_from_slice(text.as_bytes());
    let mut s = Sl2Scenario::from_json(&text)?;
    if let Some(t) = tol {
        if !(t > 0.0) {
            return Err(CliError::Parse("--tol must be positive".into()));
        }
        s.tolerance = t;
    }
    Ok(s)
}

/// Reconstruction error of the Iwasawa decomposition on `n` deterministic
/// low-discrepancy samples.
pub fn iwasawa_sweep(n: usize) -> f64 {
    let golden = [0.618_033_988_749_895, 0.754_877_666_246_693, 0.569_840_290_998_053, 0.855_189_304_765_974];
    let frac = |k: usize, g: f64| (0.5 + k as f64 * g).fract();
    (0..n)
        .map(|k| {
            let tau = std::f64::consts::TAU;
            let g = euler(tau * frac(k, golden[0]), std::f64::consts::PI * frac(k, golden[1]), tau * frac(k, golden[2]))
                .mul(&exp_a(4.0 * frac(k, golden[3]) - 2.0))
                .mul(&exp_n(C64::new(6.0 * frac(k, golden[1] * golden[2]) - 3.0, 6.0 * frac(k, golden[0] * golden[3]) - 3.0)));
            let f = iwasawa(&g).expect("sample is unimodular");
            f.reconstruct().sub(&g).frobenius()
        })
        .fold(0.0, f64::max)
}

fn execute(cmd: &Command, inputs: &mut Vec<u8>) -> Result<Outcome, CliError> {
    match cmd {
        Command::RootsValidate { path, cap } => {
            let text = read(path)?;
            inputs.extend_from_slice(text.as_bytes());
            let spec: RootDatumSpec = serde_json::from_str(&text).map_err(|e| CliError::Parse(e.to_string()))?;
            let d = RootDatum::from_spec(&spec, *cap)?;
            let roots: Vec<&Vec<i64>> = d.positive_roots().iter().map(|r| &r.simple_coords).collect();
            Ok(Outcome::new(json!({
                "rank": d.rank(),
                "rank_central": d.rank_central(),
                "weyl_order": d.weyl_order(),
                "rho": to_value(d.rho()),
                "positive_roots": roots,
            }))
            .flag("valid", true))
        }
        Command::DualNormalize { param, kind } => {
            let (d, sigma, nu) = parse_param(param, inputs)?;
            let json = match kind {
                Kind::Tempered => normalize_tempered(&d, &sigma, &nu)?.to_json(),
                Kind::Motion => normalize_motion(&d, &sigma, &nu)?.to_json(),
            };
            Ok(Outcome::new(to_value(&json)))
        }
        Command::MackeyMap { param, direction } => {
            let (d, sigma, nu) = parse_param(param, inputs)?;
            let json = match direction {
                Direction::Forward => mackey_mu(&normalize_tempered(&d, &sigma, &nu)?).to_json(),
                Direction::Inverse => mackey_mu_inverse(&normalize_motion(&d, &sigma, &nu)?).to_json(),
            };
            Ok(Outcome::new(to_value(&json)))
        }
        Command::Decompose { param, radius } => {
            let (d, sigma, nu) = parse_param(param, inputs)?;
            let table = decompose_pi_alpha(&d, &sigma, &nu, *radius)?;
            let ok = table.multiplicity_of(&table.sigma) == 1;
            let mut o = Outcome::new(json!({ "table": to_value(&table), "text": table.to_text() }));
            o.files.push(("decomposition.txt".into(), table.to_text().into_bytes()));
            Ok(o.flag("multiplicity_one", ok))
        }
        Command::Uniqueness { datum, nu, radius, cap, closed } => {
            let d = load_datum(datum, DEFAULT_WEYL_ORDER_CAP, inputs)?;
            let nu = parse_nu_list(nu).map_err(CliError::Parse)?;
            d.check_dim(&nu)?;
            let cert = if *closed {
                let classes = closed_truncation(&d, &nu, *radius)?;
                uniqueness_search_on(&d, &nu, *radius, classes, *cap)?
            } else {
                uniqueness_search(&d, &nu, *radius, *cap)?
            };
            let ok = cert.identity_only();
            Ok(Outcome::new(to_value(&cert)).flag("identity_only", ok))
        }
        Command::Sl2 { which, scenario, tol } => {
            let s = load_scenario(scenario, *tol, inputs)?;
            match which {
                Sl2Command::Limit => {
                    let r = convergence_experiment(&s)?;
                    let mut csv = csv::Writer::from_writer(Vec::new());
                    for row in &r.rows {
                        csv.serialize(row).map_err(|e| CliError::Parse(e.to_string()))?;
                    }
                    let csv = csv.into_inner().map_err(|e| CliError::Parse(e.to_string()))?;
                    let mut o = Outcome::new(to_value(&r))
                        .flag("self_consistent", r.self_consistent)
                        .flag("strictly_decreasing", r.strictly_decreasing)
                        .flag("ratio", r.final_ratio.is_some_and(|q| q <= RATIO_BOUND));
                    o.files.push(("convergence.csv".into(), csv));
                    Ok(o)
                }
                Sl2Command::Keyprop => {
                    let tol = tol.unwrap_or(PROBE_TOL);
                    let mut rows = Vec::new();
                    let mut ok = true;
                    for t in [1.0, 0.5, 0.25] {
                        let p = key_property_probe(&s, t)?;
                        ok &= p.agrees(tol);
                        rows.push(json!({ "t": t, "reduced": c64(p.reduced), "direct": c64(p.direct), "rel": p.rel }));
                    }
                    Ok(Outcome::new(json!({ "tol": tol, "probes": rows })).flag("paths_agree", ok))
                }
                Sl2Command::Motionrep => {
                    let tol = tol.unwrap_or(PROBE_TOL);
                    let rep = motion_rep_coeff(&s)?;
                    let lim = motion_limit_coeff(&s)?;
                    let rel = (rep.value - lim.value).norm() / lim.value.norm().max(rep.value.norm()).max(f64::MIN_POSITIVE);
                    Ok(Outcome::new(json!({
                        "motion_rep": c64(rep.value),
                        "motion_limit": c64(lim.value),
                        "rel": rel,
                        "tol": tol,
                    }))
                    .flag("agree", rel <= tol))
                }
                Sl2Command::Iwasawa => {
                    let q = Su2Quadrature::new(s.orders.k_angle, s.orders.k_polar);
                    let top = (s.orders.k_angle.saturating_sub(1) / 2).min(s.orders.k_polar.saturating_sub(1)) as u32;
                    let schur = schur_residual(&q, top);
                    let recon = iwasawa_sweep(10_000);
                    Ok(Outcome::new(json!({ "schur_max_two_j": top, "schur_residual": schur, "reconstruction": recon }))
                        .flag("schur", schur <= 1e-10)
                        .flag("reconstruction", recon <= 1e-12))
                }
            }
        }
    }
}

fn digest(command: &[String], inputs: &[u8]) -> String {
    let mut h = Sha256::new();
    for a in command {
        h.update(a.as_bytes());
        h.update([0]);
    }
    h.update(inputs);
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

/// Parses `args` (program name first), runs the command and returns the
/// report together with the exit code.
pub fn run_report<I, T>(args: I) -> (Option<Report>, i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { 0 };
            return (None, code, e.to_string());
        }
    };
    let command: Vec<String> = args.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect();
    run_cli(&cli, command)
}

fn run_cli(cli: &Cli, command: Vec<String>) -> (Option<Report>, i32, String) {
    let mut inputs = Vec::new();
    let outcome = match execute(&cli.command, &mut inputs) {
        Ok(o) => o,
        Err(e) => return (None, e.code(), e.message().to_string()),
    };
    let report = Report {
        schema_version: SCHEMA_VERSION,
        inputs_digest: digest(&command, &inputs),
        command,
        timestamp: std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0),
        payload: outcome.payload,
        pass: outcome.pass,
    };
    if let Some(dir) = &cli.out {
        let write = |name: &str, bytes: &[u8]| {
            std::fs::create_dir_all(dir).and_then(|_| std::fs::write(dir.join(name), bytes))
        };
        let text = serde_json::to_string_pretty(&report).expect("report serializes");
        let written = write("report.json", text.as_bytes())
            .and_then(|_| outcome.files.iter().try_for_each(|(n, b)| write(n, b)));
        if let Err(e) = written {
            return (Some(report), EXIT_PARSE, format!("cannot write to {}: {e}", dir.display()));
        }
    }
    let code = if report.all_pass() { 0 } else { EXIT_VERIFY };
    (Some(report), code, String::new())
}

/// Entry point used by the binary: prints the report and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let (report, code, msg) = run_report(args);
    if let Some(r) = report {
        println!("{}", serde_json::to_string_pretty(&r).expect("report serializes"));
    }
    if !msg.is_empty() {
        if code == 0 {
            println!("{msg}");
        } else {
            eprintln!("error: {msg}");
        }
    }
    code
}
