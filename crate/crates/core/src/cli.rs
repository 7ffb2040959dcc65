//! The `bruck` command line: argument parsing, dispatch and NDJSON output.
//!
//! Records go to stdout one JSON object per line; a human-readable summary
//! goes to stderr. Exit codes: 0 when every check passes, 1 when a check
//! fails, 2 for usage and parse errors.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use crate::bicyclic::{binv, C0Elem};
use crate::bruck_reilly::{
    brinv, brmul, eta, hclass, hclass_by_criterion, idempotents_window, nat_order, nat_order_oracle,
    simplicity_witness, zero_divisor_scan, BrElement, BrSystem, MAX_WINDOW,
};
use crate::config::{load_system, ConfigError, SystemConfig};
use crate::syntax::{parse_br, Element};
use crate::topology::{
    classify_descriptor, compact_remainder, continuity_cert_zero, preimage_basic, pushforward_basic,
    pushforward_descriptor, BasicZeroNbhd, Side, ZeroNbhdDescriptor, NONZERO_POINTS_ISOLATED,
};
use crate::verify::{self, VerifyParams};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "bruck",
    version,
    about = "Bruck-Reilly extensions of finite chains of groups"
)]
pub struct Cli {
    /// System configuration file (JSON).
    #[arg(long, global = true)]
    pub system: Option<PathBuf>,
    /// Exhaustive window: indices i, j < N.
    #[arg(long, global = true, default_value_t = verify::DEFAULT_WINDOW,
          value_parser = clap::value_parser!(u64).range(1..=MAX_WINDOW))]
    pub window: u64,
    /// Seed for the randomized suites.
    #[arg(long, global = true, default_value_t = verify::DEFAULT_SEED)]
    pub seed: u64,
    /// Probe bound for predicates quantifying over ω.
    #[arg(long = "probe-bound", global = true, default_value_t = verify::DEFAULT_PROBE_BOUND)]
    pub probe_bound: u64,
    /// Append a summary record to stdout.
    #[arg(long, global = true)]
    pub json: bool,
    /// Suppress the stderr summary.
    #[arg(long, global = true)]
    pub quiet: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Load and validate the system.
    Validate,
    /// Multiply two elements: `(i, level:elem, j)`, `0`, or bicyclic `(k,l)`.
    Mul { x: String, y: String },
    /// Inverse of an element.
    Inv { x: String },
    /// Image of an element under η.
    Eta { x: String },
    /// Natural partial order x ≼ y, closed form checked against brute force.
    Order { x: String, y: String },
    /// Idempotents (i, 1_α, i) with i < N, greatest first.
    Idempotents {
        #[arg(long)]
        n: Option<u64>,
    },
    /// H-class of an element.
    Hclass { x: String },
    /// Elements x, y with x·a·y = b.
    Witness { a: String, b: String },
    /// Search the window for zero divisors in BR⁰.
    Zeroscan,
    /// Continuity certificate at zero for multiplication by `a`.
    Continuity {
        a: String,
        /// Excluded boxes of the target neighborhood, e.g. `[[1,5],[0,0]]`.
        #[arg(long, default_value = "[]")]
        exclude: String,
        #[arg(long, default_value = "left")]
        side: Side,
    },
    /// Classify a zero-neighborhood descriptor.
    Classify {
        /// `{"kind": "isolated"}` or `{"kind": "excluded_boxes"}`, inline or a file path.
        descriptor: String,
        /// Basic neighborhood `{"excluded": [[i,j],...]}` whose remainder to list.
        #[arg(long)]
        nbhd: Option<String>,
    },
    /// Push a descriptor (and optionally a basic neighborhood) forward along η.
    Pushforward {
        descriptor: String,
        #[arg(long)]
        nbhd: Option<String>,
    },
    /// Run the property suites.
    Verify {
        /// Run every suite.
        #[arg(long)]
        all: bool,
        /// Run only the named suite (repeatable).
        #[arg(long)]
        suite: Vec<String>,
    },
}

/// One NDJSON output line.
#[derive(Clone, Debug, Serialize)]
pub struct Record {
    pub op: String,
    pub inputs: Value,
    pub result: Value,
    pub window: Option<u64>,
    pub ok: bool,
}

impl Record {
    fn new(op: &str, inputs: Value, result: Value, window: Option<u64>, ok: bool) -> Self {
        Self {
            op: op.into(),
            inputs,
            result,
            window,
            ok,
        }
    }
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    /// A system that failed to load because it is invalid; the record carries
    /// the violation report.
    Invalid(Record),
}

impl From<crate::syntax::SyntaxError> for Failure {
    fn from(e: crate::syntax::SyntaxError) -> Self {
        Failure::Usage(e.to_string())
    }
}

struct Context<'a> {
    cli: &'a Cli,
}

impl Context<'_> {
    fn system(&self) -> Result<(String, BrSystem), Failure> {
        let path = self
            .cli
            .system
            .as_deref()
            .ok_or_else(|| Failure::Usage("this command needs --system <path>".into()))?;
        load(path)
    }
}

fn system_name(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}

fn load(path: &Path) -> Result<(String, BrSystem), Failure> {
    let fallback = system_name(path);
    match load_system(path) {
        Ok(b) => {
            let name = std::fs::read_to_string(path)
                .ok()
                .and_then(|t| SystemConfig::from_json(&t).ok())
                .map(|c| c.name)
                .filter(|n| !n.is_empty())
                .unwrap_or(fallback);
            Ok((name, b))
        }
        Err(ConfigError::ValidationFailed(report)) => {
            let violations: Vec<String> = report.violations().iter().map(ToString::to_string).collect();
            Err(Failure::Invalid(Record::new(
                "load",
                json!({ "system": fallback }),
                json!({ "violations": violations }),
                None,
                false,
            )))
        }
        Err(e) => Err(Failure::Usage(e.to_string())),
    }
}

fn json_arg(text: &str) -> Result<Value, Failure> {
    serde_json::from_str(text).or_else(|_| {
        let body = std::fs::read_to_string(text)
            .map_err(|_| Failure::Usage(format!("{text:?} is neither JSON nor a readable file")))?;
        serde_json::from_str(&body).map_err(|e| Failure::Usage(format!("{text}: {e}")))
    })
}

fn basic_arg(text: &str) -> Result<BasicZeroNbhd, Failure> {
    serde_json::from_value(json_arg(text)?).map_err(|e| Failure::Usage(format!("bad neighborhood {text:?}: {e}")))
}

fn descriptor_arg(text: &str) -> Result<Result<ZeroNbhdDescriptor, String>, Failure> {
    let value = json_arg(text)?;
    Ok(ZeroNbhdDescriptor::parse(&value).map_err(|e| e.to_string()))
}

fn render_list(xs: &[BrElement]) -> Vec<String> {
    xs.iter().map(ToString::to_string).collect()
}

fn algebra<T>(r: Result<T, crate::bruck_reilly::BrError>) -> Result<T, Failure> {
    r.map_err(|e| Failure::Usage(e.to_string()))
}

fn dispatch(cx: &Context<'_>) -> Result<Vec<Record>, Failure> {
    let cli = cx.cli;
    let window = cli.window;
    Ok(match &cli.command {
        Command::Validate => {
            let (name, b) = cx.system()?;
            let sys = b.system();
            vec![Record::new(
                "validate",
                json!({ "system": name }),
                json!({
                    "levels": sys.levels(),
                    "orders": sys.groups().iter().map(|g| g.order()).collect::<Vec<_>>(),
                    "with_zero": b.with_zero(),
                    "violations": Vec::<String>::new(),
                }),
                None,
                true,
            )]
        }
        Command::Mul { x, y } => {
            let (ex, ey): (Element, Element) = (x.parse()?, y.parse()?);
            if let (Element::Bicyclic(p), Element::Bicyclic(q)) = (ex, ey) {
                let r = p
                    .checked_mul(q)
                    .ok_or_else(|| Failure::Usage(format!("index overflow in {p}·{q}")))?;
                vec![Record::new(
                    "mul",
                    json!({ "x": x, "y": y }),
                    json!(r.to_string()),
                    None,
                    true,
                )]
            } else {
                let (name, b) = cx.system()?;
                let r = algebra(brmul(&b, ex.into_br()?, ey.into_br()?))?;
                vec![Record::new(
                    "mul",
                    json!({ "system": name, "x": x, "y": y }),
                    json!(r.to_string()),
                    None,
                    true,
                )]
            }
        }
        Command::Inv { x } => match x.parse()? {
            Element::Bicyclic(p) => {
                vec![Record::new(
                    "inv",
                    json!({ "x": x }),
                    json!(binv(p).to_string()),
                    None,
                    true,
                )]
            }
            e => {
                let (name, b) = cx.system()?;
                let xe = e.into_br()?;
                let inv = algebra(brinv(&b, xe))?;
                let back = algebra(brmul(&b, algebra(brmul(&b, xe, inv))?, xe))?;
                vec![Record::new(
                    "inv",
                    json!({ "system": name, "x": x }),
                    json!(inv.to_string()),
                    None,
                    back == xe,
                )]
            }
        },
        Command::Eta { x } => {
            let xe = parse_br(x)?;
            if let Some(path) = &cli.system {
                let (_, b) = load(path)?;
                algebra(b.check(xe))?;
            }
            let image = match eta(xe) {
                C0Elem::Zero => "0".to_string(),
                C0Elem::Elem(p) => p.to_string(),
            };
            vec![Record::new("eta", json!({ "x": x }), json!(image), None, true)]
        }
        Command::Order { x, y } => {
            let (name, b) = cx.system()?;
            let (xe, ye) = (parse_br(x)?, parse_br(y)?);
            let closed = algebra(nat_order(&b, xe, ye))?;
            let oracle = algebra(nat_order_oracle(&b, xe, ye))?;
            vec![Record::new(
                "order",
                json!({ "system": name, "x": x, "y": y }),
                json!({ "below": closed, "oracle": oracle }),
                None,
                closed == oracle,
            )]
        }
        Command::Idempotents { n } => {
            let (name, b) = cx.system()?;
            let n = n.unwrap_or(window);
            let list = algebra(idempotents_window(&b, n))?;
            vec![Record::new(
                "idempotents",
                json!({ "system": name }),
                json!(render_list(&list)),
                Some(n),
                true,
            )]
        }
        Command::Hclass { x } => {
            let (name, b) = cx.system()?;
            let xe = parse_br(x)?;
            let h = algebra(hclass(&b, xe))?;
            // Cross-check against the idempotent criterion over a window that
            // contains x's box.
            let ok = match xe.index_box() {
                Some(bx) if bx.i.max(bx.j) < MAX_WINDOW => {
                    let w = algebra(b.window(bx.i.max(bx.j) + 1))?;
                    algebra(hclass_by_criterion(&b, xe, &w))? == h
                }
                _ => true,
            };
            vec![Record::new(
                "hclass",
                json!({ "system": name, "x": x }),
                json!(render_list(&h)),
                None,
                ok,
            )]
        }
        Command::Witness { a, b: target } => {
            let (name, b) = cx.system()?;
            let (ae, be) = (parse_br(a)?, parse_br(target)?);
            match simplicity_witness(&b, ae, be) {
                Ok((x, y)) => vec![Record::new(
                    "witness",
                    json!({ "system": name, "a": a, "b": target }),
                    json!({ "x": x.to_string(), "y": y.to_string(), "check": format!("{x}·{ae}·{y} = {be}") }),
                    None,
                    true,
                )],
                Err(e @ crate::bruck_reilly::BrError::WitnessVerificationFailed(_)) => vec![Record::new(
                    "witness",
                    json!({ "system": name, "a": a, "b": target }),
                    json!({ "error": e.to_string() }),
                    None,
                    false,
                )],
                Err(e) => return Err(Failure::Usage(e.to_string())),
            }
        }
        Command::Zeroscan => {
            let (name, b) = cx.system()?;
            let report = algebra(zero_divisor_scan(&b.adjoin_zero(), window))?;
            let found: Vec<String> = report.violations().iter().map(|v| v.detail.clone()).collect();
            vec![Record::new(
                "zeroscan",
                json!({ "system": name }),
                json!({ "zero_divisors": found }),
                Some(window),
                report.is_empty(),
            )]
        }
        Command::Continuity { a, exclude, side } => {
            let (name, b) = cx.system()?;
            let b = b.adjoin_zero();
            let ae = parse_br(a)?;
            let w = basic_arg(&format!("{{\"excluded\": {exclude}}}"))?;
            let cert = continuity_cert_zero(&b, ae, &w, *side).map_err(|e| Failure::Usage(e.to_string()))?;
            let check = cert.verify(&b).map_err(|e| Failure::Usage(e.to_string()))?;
            vec![Record::new(
                "continuity",
                json!({ "system": name, "a": a, "exclude": w.excluded, "side": side }),
                json!({ "certificate": cert, "verification": check, "note": NONZERO_POINTS_ISOLATED }),
                Some(check.window),
                check.ok(),
            )]
        }
        Command::Classify { descriptor, nbhd } => {
            let inputs = json!({ "descriptor": json_arg(descriptor)? });
            match descriptor_arg(descriptor)? {
                Ok(d) => {
                    let class = classify_descriptor(d);
                    let mut result = json!({ "classification": class });
                    if let Some(nbhd) = nbhd {
                        let u = basic_arg(nbhd)?;
                        let (_, b) = cx.system()?;
                        result["remainder"] = json!(render_list(&compact_remainder(&b.adjoin_zero(), &u)));
                    }
                    vec![Record::new("classify", inputs, result, None, true)]
                }
                Err(e) => vec![Record::new("classify", inputs, json!({ "error": e }), None, false)],
            }
        }
        Command::Pushforward { descriptor, nbhd } => {
            let inputs =
                json!({ "descriptor": json_arg(descriptor)?, "nbhd": nbhd.as_deref().map(json_arg).transpose()? });
            match descriptor_arg(descriptor)? {
                Ok(d) => {
                    let image = pushforward_descriptor(d);
                    let mut result = json!({ "descriptor": image });
                    let mut ok = true;
                    if let Some(nbhd) = nbhd {
                        let u = basic_arg(nbhd)?;
                        let v = pushforward_basic(&u);
                        ok = preimage_basic(&v) == u;
                        let points: Vec<String> = v.excluded.iter().map(|p| p.to_string()).collect();
                        result["excluded_points"] = json!(points);
                        result["round_trip"] = json!(ok);
                    }
                    vec![Record::new("pushforward", inputs, result, None, ok)]
                }
                Err(e) => vec![Record::new("pushforward", inputs, json!({ "error": e }), None, false)],
            }
        }
        Command::Verify { all, suite } => {
            if !all && suite.is_empty() {
                return Err(Failure::Usage("verify needs --all or --suite <name>".into()));
            }
            let (name, b) = cx.system()?;
            let params = VerifyParams {
                window,
                seed: cli.seed,
                probe_bound: cli.probe_bound,
            };
            let names: Vec<&str> = if *all {
                verify::suite_names().collect()
            } else {
                suite.iter().map(String::as_str).collect()
            };
            let mut records = Vec::with_capacity(names.len());
            for s in names {
                let outcome =
                    verify::run_suite(s, &b, &params).ok_or_else(|| Failure::Usage(format!("unknown suite {s:?}")))?;
                records.push(Record::new(
                    "verify",
                    json!({ "system": name, "suite": s, "seed": cli.seed, "probe_bound": cli.probe_bound }),
                    json!(outcome),
                    Some(outcome.window),
                    outcome.ok(),
                ));
            }
            records
        }
    })
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Validate => "validate",
        Command::Mul { .. } => "mul",
        Command::Inv { .. } => "inv",
        Command::Eta { .. } => "eta",
        Command::Order { .. } => "order",
        Command::Idempotents { .. } => "idempotents",
        Command::Hclass { .. } => "hclass",
        Command::Witness { .. } => "witness",
        Command::Zeroscan => "zeroscan",
        Command::Continuity { .. } => "continuity",
        Command::Classify { .. } => "classify",
        Command::Pushforward { .. } => "pushforward",
        Command::Verify { .. } => "verify",
    }
}

fn emit(out: &mut dyn Write, record: &impl Serialize) -> std::io::Result<()> {
    serde_json::to_writer(&mut *out, record)?;
    writeln!(out)
}

/// Runs the CLI on `args` (including the program name) and returns the exit
/// code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let _ = write!(err, "{e}");
            return code;
        }
    };
    let started = Instant::now();
    let name = command_name(&cli.command);
    let records = match dispatch(&Context { cli: &cli }) {
        Ok(records) => records,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            return EXIT_USAGE;
        }
        Err(Failure::Invalid(record)) => vec![record],
    };
    let failed = records.iter().filter(|r| !r.ok).count();
    for r in &records {
        if emit(out, r).is_err() {
            return EXIT_USAGE;
        }
    }
    if cli.json {
        let summary = json!({
            "op": "summary",
            "command": name,
            "records": records.len(),
            "failed": failed,
            "window": cli.window,
            "seed": cli.seed,
        });
        if emit(out, &summary).is_err() {
            return EXIT_USAGE;
        }
    }
    if !cli.quiet {
        let _ = writeln!(
            err,
            "{name}: {} record(s), {} passed, {failed} failed (window {}, seed {}) in {:.3}s",
            records.len(),
            records.len() - failed,
            cli.window,
            cli.seed,
            started.elapsed().as_secs_f64()
        );
        for r in records.iter().filter(|r| !r.ok) {
            let _ = writeln!(err, "  FAILED {} {}", r.op, r.inputs);
        }
    }
    if failed == 0 {
        EXIT_PASS
    } else {
        EXIT_CHECK_FAILED
    }
}
