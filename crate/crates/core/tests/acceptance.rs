//! Acceptance gate: one PASS/FAIL line per criterion, non-zero exit if any
//! criterion fails. Runs without the libtest harness so the lines always
//! reach the terminal.

use std::path::Path;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use bruck_core::bicyclic::{bmul, oracle_mul, BicyclicElem};
use bruck_core::bruck_reilly::zero_divisor_scan;
use bruck_core::topology::{classify_descriptor, Classification, ZeroNbhdDescriptor};
use bruck_core::verify::{run_suite, SuiteOutcome, VerifyParams};
use bruck_core::{load_system, BrSystem, ConfigError};

fn manifest_dir() -> &'static Path {
    Path::new(env!("CARGO_MANIFEST_DIR"))
}

fn shipped() -> Vec<(&'static str, BrSystem)> {
    ["c2c2", "trivial"]
        .into_iter()
        .map(|name| {
            let path = manifest_dir().join(format!("fixtures/systems/{name}.json"));
            (name, load_system(&path).unwrap_or_else(|e| panic!("{name}: {e}")))
        })
        .collect()
}

/// Fault configs and the axiom each must be rejected under.
const FAULTS: &[(&str, &str, &str)] = &[
    ("no_inverse", "inverse", "inverse axiom violated for element 1"),
    ("non_associative", "associativity", "associativity violated at (1,1,2)"),
    ("bad_identity", "identity", "identity axiom violated"),
    ("bond_not_hom", "bond homomorphism", "φ_{0,1} not a homomorphism"),
    ("composition", "bond composition", "φ_{0,1}φ_{1,2} ≠ φ_{0,2}"),
    ("theta_not_hom", "theta homomorphism", "θ not a homomorphism"),
    ("missing_bond", "structure", "missing bonding map φ_{0,1}"),
];

struct Gate {
    failed: usize,
}

impl Gate {
    fn report(&mut self, n: u32, ok: bool, limit: Option<Duration>, elapsed: Duration, detail: String) {
        let in_time = limit.is_none_or(|l| elapsed < l);
        let pass = ok && in_time;
        if !pass {
            self.failed += 1;
        }
        let budget = limit.map_or(String::new(), |l| format!(" / limit {:.0}s", l.as_secs_f64()));
        println!(
            "criterion {n}: {} — {detail} [{:.3}s{budget}]",
            if pass { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64()
        );
    }
}

fn suites(names: &[&str], systems: &[(&str, BrSystem)], params: &VerifyParams) -> (bool, Vec<String>) {
    let mut ok = true;
    let mut notes = Vec::new();
    for (sys, b) in systems {
        for name in names {
            let o: SuiteOutcome = run_suite(name, b, params).expect("known suite");
            if !o.ok() {
                ok = false;
                notes.push(format!("{sys}/{name}: {:?}", o.violations));
            } else {
                notes.push(format!("{sys}/{name} {}", o.checked));
            }
        }
    }
    (ok, notes)
}

fn structural(gate: &mut Gate, systems: &[(&str, BrSystem)]) {
    let t = Instant::now();
    let (mut ok, mut notes) = suites(&["structure", "clifford"], systems, &VerifyParams::default());
    for (name, axiom, needle) in FAULTS {
        let path = manifest_dir().join(format!("fixtures/faults/{name}.json"));
        let named = match load_system(&path) {
            Err(ConfigError::ValidationFailed(report)) => report
                .violations()
                .iter()
                .any(|v| v.axiom == *axiom && v.detail.contains(needle)),
            _ => false,
        };
        if !named {
            notes.push(format!("{name} not rejected under [{axiom}]"));
        }
        ok &= named;
    }
    notes.push(format!("{} fault configs rejected", FAULTS.len()));
    gate.report(1, ok, Some(Duration::from_secs(1)), t.elapsed(), notes.join(", "));
}

fn main() -> ExitCode {
    let systems = shipped();
    let mut gate = Gate { failed: 0 };
    let defaults = VerifyParams::default();

    structural(&mut gate, &systems);

    // Window 4 covers 64 nonzero elements of the two-level system, a superset
    // of the i, j < 3 window.
    let t = Instant::now();
    let (ok, notes) = suites(
        &["associativity", "inverse"],
        &systems,
        &VerifyParams { window: 4, ..defaults },
    );
    gate.report(2, ok, Some(Duration::from_secs(10)), t.elapsed(), notes.join(", "));

    let t = Instant::now();
    let (mut ok, mut notes) = suites(&["eta", "bicyclic"], &systems, &defaults);
    let mut pairs = 0;
    for k in 0..=12 {
        for l in 0..=12 {
            for m in 0..=12 {
                for n in 0..=12 {
                    let (x, y) = (BicyclicElem::new(k, l), BicyclicElem::new(m, n));
                    ok &= bmul(x, y) == oracle_mul(x, y);
                    pairs += 1;
                }
            }
        }
    }
    notes.push(format!("bmul vs partial shifts {pairs}"));
    gate.report(3, ok, None, t.elapsed(), notes.join(", "));

    let t = Instant::now();
    let (ok, notes) = suites(&["omega_chain"], &systems, &defaults);
    gate.report(4, ok, None, t.elapsed(), notes.join(", "));

    let t = Instant::now();
    let (mut ok, mut notes) = suites(&["witness"], &systems, &defaults);
    for (name, b) in &systems {
        let b0 = b.adjoin_zero();
        let empty = zero_divisor_scan(&b0, 4).map(|r| r.is_empty()).unwrap_or(false);
        notes.push(format!("{name} zero divisors (N=4) none={empty}"));
        ok &= empty;
    }
    gate.report(5, ok, Some(Duration::from_secs(5)), t.elapsed(), notes.join(", "));

    let t = Instant::now();
    let (ok, notes) = suites(&["hclass"], &systems, &defaults);
    gate.report(6, ok, None, t.elapsed(), notes.join(", "));

    let t = Instant::now();
    let (mut ok, mut notes) = suites(&["box_solve", "continuity", "descriptors"], &systems, &defaults);
    let isolated = classify_descriptor(ZeroNbhdDescriptor::IsolatedZero) == Classification::IsolatedZero;
    let compact = matches!(
        classify_descriptor(ZeroNbhdDescriptor::ExcludedBoxes),
        Classification::Compact { .. }
    );
    notes.push(format!(
        "isolated→IsolatedZero {isolated}, excluded_boxes→Compact {compact}"
    ));
    ok &= isolated && compact;
    gate.report(7, ok, Some(Duration::from_secs(5)), t.elapsed(), notes.join(", "));

    let t = Instant::now();
    let trivial: Vec<_> = systems.iter().filter(|(n, _)| *n == "trivial").cloned().collect();
    let (ok, notes) = suites(&["trivial_iso"], &trivial, &VerifyParams { window: 8, ..defaults });
    gate.report(8, ok, None, t.elapsed(), notes.join(", "));

    let t = Instant::now();
    let (ok, notes) = cli_contract();
    gate.report(9, ok, None, t.elapsed(), notes.join(", "));

    if gate.failed == 0 {
        println!("acceptance: all criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {} criterion/criteria failed", gate.failed);
        ExitCode::FAILURE
    }
}

fn cli_contract() -> (bool, Vec<String>) {
    let run = |system: &str, json: bool| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_bruck"));
        cmd.current_dir(manifest_dir()).args(["--system", system, "--quiet"]);
        if json {
            cmd.arg("--json");
        }
        cmd.args(["verify", "--all"]).output().expect("binary runs")
    };
    let mut ok = true;
    let mut notes = Vec::new();
    for name in ["c2c2", "trivial"] {
        let out = run(&format!("fixtures/systems/{name}.json"), true);
        let golden = std::fs::read(manifest_dir().join(format!("fixtures/expected/{name}_verify_all.ndjson")))
            .unwrap_or_default();
        let pass = out.status.code() == Some(0) && out.stdout == golden;
        notes.push(format!(
            "{name} exit {:?} golden {}",
            out.status.code(),
            out.stdout == golden
        ));
        ok &= pass;
    }
    for (name, _, _) in FAULTS {
        let out = run(&format!("fixtures/faults/{name}.json"), false);
        ok &= out.status.code() == Some(1);
        if out.status.code() != Some(1) {
            notes.push(format!("{name} exit {:?}", out.status.code()));
        }
    }
    notes.push(format!("{} faults exit 1", FAULTS.len()));
    (ok, notes)
}
