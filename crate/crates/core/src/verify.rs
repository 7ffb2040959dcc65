//! Property suites run by `bruck verify` and by the acceptance tests.
//!
//! Every suite is exhaustive over an explicit window or driven by an explicit
//! seed, and records which one it used.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bicyclic::{binv, bmul, oracle_mul, BicyclicElem, C0Elem};
use crate::bruck_reilly::{
    eta, hclass, hclass_by_criterion, idempotents_window, inv_valid, mul_valid, nat_order, nat_order_oracle,
    simplicity_witness, zero_divisor_scan, BrElement, BrError, BrSystem, IndexBox,
};
use crate::clifford::{
    cinv_unchecked, cmul_unchecked, idempotents, idempotents_by_scan, nat_order_idem, theta_pow_unchecked,
    validate_system,
};
use crate::topology::{
    box_solve, box_solve_brute, classify_descriptor, cofinite_boxes_check, cofinite_row_check, continuity_cert_zero,
    preimage_basic, pushforward_basic, pushforward_descriptor, BasicZeroNbhd, C0Descriptor, Classification, Side,
    ZeroNbhdDescriptor, ZeroNbhdFamily,
};

pub const DEFAULT_WINDOW: u64 = 3;
pub const DEFAULT_SEED: u64 = 0;
pub const DEFAULT_PROBE_BOUND: u64 = 64;

/// Violations beyond this many are counted but not listed.
const MAX_LISTED: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyParams {
    pub window: u64,
    pub seed: u64,
    pub probe_bound: u64,
}

impl Default for VerifyParams {
    fn default() -> Self {
        Self {
            window: DEFAULT_WINDOW,
            seed: DEFAULT_SEED,
            probe_bound: DEFAULT_PROBE_BOUND,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteOutcome {
    pub suite: &'static str,
    pub window: u64,
    pub checked: u64,
    pub violation_count: u64,
    pub violations: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl SuiteOutcome {
    fn new(suite: &'static str, window: u64) -> Self {
        Self {
            suite,
            window,
            checked: 0,
            violation_count: 0,
            violations: Vec::new(),
            note: None,
        }
    }

    pub fn ok(&self) -> bool {
        self.violation_count == 0
    }

    fn check(&mut self, holds: bool, describe: impl FnOnce() -> String) {
        self.checked += 1;
        if !holds {
            self.fail(describe());
        }
    }

    fn fail(&mut self, message: String) {
        self.violation_count += 1;
        if self.violations.len() < MAX_LISTED {
            self.violations.push(message);
        }
    }

    fn error(&mut self, e: BrError) {
        self.fail(format!("error: {e}"));
    }
}

type Suite = fn(&BrSystem, &VerifyParams) -> SuiteOutcome;

/// Suite names in the order `verify --all` runs them.
pub const SUITES: &[(&str, Suite)] = &[
    ("structure", structure),
    ("clifford", clifford),
    ("associativity", associativity),
    ("inverse", inverse),
    ("eta", eta_suite),
    ("bicyclic", bicyclic),
    ("omega_chain", omega_chain),
    ("nat_order", nat_order_suite),
    ("hclass", hclass_suite),
    ("witness", witness),
    ("zeroscan", zeroscan),
    ("box_solve", box_solve_suite),
    ("continuity", continuity),
    ("descriptors", descriptors),
    ("trivial_iso", trivial_iso),
];

pub fn suite_names() -> impl Iterator<Item = &'static str> {
    SUITES.iter().map(|(name, _)| *name)
}

pub fn run_suite(name: &str, b: &BrSystem, params: &VerifyParams) -> Option<SuiteOutcome> {
    SUITES
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, suite)| suite(b, params))
}

pub fn run_all(b: &BrSystem, params: &VerifyParams) -> Vec<SuiteOutcome> {
    SUITES.iter().map(|(_, suite)| suite(b, params)).collect()
}

pub fn structure(b: &BrSystem, _: &VerifyParams) -> SuiteOutcome {
    let mut out = SuiteOutcome::new("structure", 0);
    let report = validate_system(b.system());
    out.checked = 1;
    for v in report.violations() {
        out.fail(v.to_string());
    }
    out
}

/// Laws of the chain of groups itself: idempotents, centrality,
/// associativity and the eventual periodicity of θ-powers.
pub fn clifford(b: &BrSystem, _: &VerifyParams) -> SuiteOutcome {
    let sys = b.system();
    let mut out = SuiteOutcome::new("clifford", 0);
    let es = idempotents(sys);
    out.check(idempotents_by_scan(sys) == es, || "idempotent scan disagrees".into());
    out.check(es.len() == sys.levels(), || "one idempotent per level expected".into());
    for (p, &e) in es.iter().enumerate() {
        for (q, &f) in es.iter().enumerate() {
            let below = nat_order_idem(sys, e, f).unwrap_or(false);
            out.check(below == (p >= q), || format!("{e} ≼ {f} should be {}", p >= q));
        }
    }
    let elements: Vec<_> = sys.elements().collect();
    for &e in &es {
        for &x in &elements {
            out.check(cmul_unchecked(sys, e, x) == cmul_unchecked(sys, x, e), || {
                format!("idempotent {e} does not commute with {x}")
            });
        }
    }
    for &x in &elements {
        let xi = cinv_unchecked(sys, x);
        out.check(cmul_unchecked(sys, cmul_unchecked(sys, x, xi), x) == x, || {
            format!("{x}·{xi}·{x} ≠ {x}")
        });
        for &y in &elements {
            let xy = cmul_unchecked(sys, x, y);
            for &z in &elements {
                out.check(
                    cmul_unchecked(sys, xy, z) == cmul_unchecked(sys, x, cmul_unchecked(sys, y, z)),
                    || format!("T not associative at ({x},{y},{z})"),
                );
            }
        }
    }
    // θ-powers enter a cycle within |G_0| steps, and the cycle is the orbit
    // of θ_0 computed directly.
    let g0 = sys.group(0).order() as u64;
    for &x in &elements {
        let orbit: Vec<_> = (0..=2 * g0 + 1).map(|n| theta_pow_unchecked(sys, x, n)).collect();
        let start = 1 + g0 as usize;
        let period = (1..=g0 as usize).find(|&p| orbit[start] == orbit[start + p]);
        out.check(period.is_some(), || format!("θ-powers of {x} are not periodic"));
        if let Some(p) = period {
            for n in start..orbit.len() - p {
                out.check(orbit[n] == orbit[n + p], || {
                    format!("θ-orbit of {x} breaks period {p} at {n}")
                });
            }
        }
    }
    out
}

pub fn associativity(b: &BrSystem, params: &VerifyParams) -> SuiteOutcome {
    let mut out = SuiteOutcome::new("associativity", params.window);
    let w = match b.window(params.window) {
        Ok(w) => w,
        Err(e) => {
            out.error(e);
            return out;
        }
    };
    for &x in &w {
        for &y in &w {
            let xy = match mul_valid(b, x, y) {
                Ok(v) => v,
                Err(e) => {
                    out.error(e);
                    continue;
                }
            };
            for &z in &w {
                let lhs = mul_valid(b, xy, z);
                let rhs = mul_valid(b, y, z).and_then(|yz| mul_valid(b, x, yz));
                out.check(lhs.is_ok() && lhs == rhs, || format!("({x}·{y})·{z} ≠ {x}·({y}·{z})"));
            }
        }
    }
    out
}

pub fn inverse(b: &BrSystem, params: &VerifyParams) -> SuiteOutcome {
    let mut out = SuiteOutcome::new("inverse", params.window);
    let w = match b.window(params.window) {
        Ok(w) => w,
        Err(e) => {
            out.error(e);
            return out;
        }
    };
    let m = |x, y| mul_valid(b, x, y).expect("window products stay in range");
    for &x in &w {
        let xi = inv_valid(b, x);
        out.check(m(m(x, xi), x) == x, || format!("{x}·{xi}·{x} ≠ {x}"));
        out.check(m(m(xi, x), xi) == xi, || format!("{xi}·{x}·{xi} ≠ {xi}"));
        // The inverse of a window element lies in the window (indices swap),
        // so a brute-force search over the window finds every candidate.
        let found: Vec<_> = w
            .iter()
            .copied()
            .filter(|&y| m(m(x, y), x) == x && m(m(y, x), y) == y)
            .collect();
        out.check(found == vec![xi], || {
            format!("inverses of {x} found by search: {found:?}")
        });
    }
    out
}

pub fn eta_suite(b: &BrSystem, params: &VerifyParams) -> SuiteOutcome {
    let mut out = SuiteOutcome::new("eta", params.window);
    let w = match b.window(params.window) {
        Ok(w) => w,
        Err(e) => {
            out.error(e);
            return out;
        }
    };
    let mul0 = |x: C0Elem, y: C0Elem| match (x, y) {
        (C0Elem::Elem(a), C0Elem::Elem(c)) => C0Elem::Elem(bmul(a, c)),
        _ => C0Elem::Zero,
    };
    // η is a homomorphism on every pair.
    for &x in &w {
        for &y in &w {
            let xy = mul_valid(b, x, y).expect("window products stay in range");
            out.check(eta(xy) == mul0(eta(x), eta(y)), || {
                format!("η({x}·{y}) ≠ η({x})·η({y})")
            });
        }
    }
    // η♮ is a congruence: products of related pairs are related. Grouping by
    // class covers all quadruples (x ~ x', y ~ y').
    let mut classes: Vec<Vec<BrElement>> = Vec::new();
    for &x in &w {
        match classes.iter_mut().find(|c| c[0].index_box() == x.index_box()) {
            Some(c) => c.push(x),
            None => classes.push(vec![x]),
        }
    }
    for cx in &classes {
        for cy in &classes {
            let first = mul_valid(b, cx[0], cy[0]).expect("in range").index_box();
            for &x in cx {
                for &y in cy {
                    let p = mul_valid(b, x, y).expect("in range").index_box();
                    out.check(p == first, || {
                        format!("η♮ not a congruence: {x}·{y} leaves the class of {}·{}", cx[0], cy[0])
                    });
                }
            }
        }
    }
    out
}

pub fn bicyclic(_: &BrSystem, _: &VerifyParams) -> SuiteOutcome {
    const BOUND: u64 = 12;
    let mut out = SuiteOutcome::new("bicyclic", BOUND);
    let window: Vec<_> = (0..=BOUND)
        .flat_map(|k| (0..=BOUND).map(move |l| BicyclicElem::new(k, l)))
        .collect();
    for &x in &window {
        for &y in &window {
            out.check(bmul(x, y) == oracle_mul(x, y), || {
                format!("{x}·{y}: formula ≠ partial-shift oracle")
            });
        }
    }
    let idem: Vec<_> = window.iter().copied().filter(|&x| bmul(x, x) == x).collect();
    out.check(idem.iter().all(|e| e.k == e.l), || {
        "an idempotent off the diagonal".into()
    });
    out.check(idem.len() as u64 == BOUND + 1, || {
        "diagonal elements missing from idempotents".into()
    });
    for &e in &idem {
        for &f in &idem {
            out.check(bmul(e, f) == bmul(f, e), || format!("{e}, {f} do not commute"));
            let below = bmul(e, f) == e;
            out.check(below == (e.k >= f.k), || format!("order of {e}, {f} is not (ω,≥)"));
        }
    }
    let small: Vec<_> = window.iter().copied().filter(|x| x.k <= 6 && x.l <= 6).collect();
    for &x in &small {
        let xi = binv(x);
        out.check(bmul(bmul(x, xi), x) == x && bmul(bmul(xi, x), xi) == xi, || {
            format!("{x}: inverse laws fail")
        });
        let count = small
            .iter()
            .filter(|&&y| bmul(bmul(x, y), x) == x && bmul(bmul(y, x), y) == y)
            .count();
        out.check(count == 1, || format!("{x} has {count} inverses"));
    }
    out
}

pub fn omega_chain(b: &BrSystem, _: &VerifyParams) -> SuiteOutcome {
    const MAX_N: u64 = 8;
    let mut out = SuiteOutcome::new("omega_chain", MAX_N);
    let levels = b.system().levels() as u64;
    for n in 1..=MAX_N {
        match idempotents_window(b, n) {
            Ok(list) => {
                out.check(list.len() as u64 == n * levels, || {
                    format!("N={n}: {} idempotents, expected {}", list.len(), n * levels)
                });
                // Position p ↦ p ∈ ω must be an order isomorphism onto an
                // initial segment of (ω, ≥).
                for (p, &e) in list.iter().enumerate() {
                    for (q, &f) in list.iter().enumerate() {
                        let below = mul_valid(b, e, f).ok() == Some(e) && mul_valid(b, f, e).ok() == Some(e);
                        out.check(below == (p >= q), || {
                            format!("N={n}: {e} ≼ {f} disagrees with position")
                        });
                    }
                }
            }
            Err(e) => out.error(e),
        }
    }
    out
}

pub fn nat_order_suite(b: &BrSystem, params: &VerifyParams) -> SuiteOutcome {
    let mut out = SuiteOutcome::new("nat_order", params.window);
    let w = match b.window(params.window) {
        Ok(w) => w,
        Err(e) => {
            out.error(e);
            return out;
        }
    };
    for &x in &w {
        for &y in &w {
            match (nat_order(b, x, y), nat_order_oracle(b, x, y)) {
                (Ok(c), Ok(o)) => out.check(c == o, || format!("{x} ≼ {y}: closed form {c}, oracle {o}")),
                (Err(e), _) | (_, Err(e)) => out.error(e),
            }
        }
        out.check(nat_order(b, x, x).unwrap_or(false), || format!("{x} ≼ {x} fails"));
    }
    out
}

pub fn hclass_suite(b: &BrSystem, params: &VerifyParams) -> SuiteOutcome {
    let mut out = SuiteOutcome::new("hclass", params.window);
    let w = match b.window(params.window) {
        Ok(w) => w,
        Err(e) => {
            out.error(e);
            return out;
        }
    };
    let mut covered = BTreeSet::new();
    for &x in &w {
        match (hclass(b, x), hclass_by_criterion(b, x, &w)) {
            (Ok(h), Ok(c)) => {
                out.check(h == c, || format!("H-class of {x}: {h:?} vs criterion {c:?}"));
                if let BrElement::Triple { s, .. } = x {
                    let order = b.system().group(s.level).order();
                    out.check(h.len() == order, || format!("|H({x})| = {} ≠ |G_{}|", h.len(), s.level));
                }
                covered.extend(h);
            }
            (Err(e), _) | (_, Err(e)) => out.error(e),
        }
    }
    out.check(covered.len() == w.len(), || "H-classes do not cover the window".into());
    out
}

pub const WITNESS_PAIRS: usize = 1000;
pub const WITNESS_MAX_INDEX: u64 = 50;

pub fn witness(b: &BrSystem, params: &VerifyParams) -> SuiteOutcome {
    let mut out = SuiteOutcome::new("witness", WITNESS_MAX_INDEX);
    out.note = Some(format!("{WITNESS_PAIRS} pairs, seed {}", params.seed));
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let elements: Vec<_> = b.system().elements().collect();
    let draw = |rng: &mut ChaCha8Rng| {
        BrElement::new(
            rng.gen_range(0..=WITNESS_MAX_INDEX),
            elements[rng.gen_range(0..elements.len())],
            rng.gen_range(0..=WITNESS_MAX_INDEX),
        )
    };
    for _ in 0..WITNESS_PAIRS {
        let a = draw(&mut rng);
        let target = draw(&mut rng);
        match simplicity_witness(b, a, target) {
            Ok((x, y)) => {
                let got = mul_valid(b, a, y).and_then(|ay| mul_valid(b, x, ay));
                out.check(got == Ok(target), || format!("{x}·{a}·{y} ≠ {target}"));
            }
            Err(e) => out.error(e),
        }
    }
    out
}

pub fn zeroscan(b: &BrSystem, params: &VerifyParams) -> SuiteOutcome {
    let mut out = SuiteOutcome::new("zeroscan", params.window);
    let b0 = b.adjoin_zero();
    match zero_divisor_scan(&b0, params.window) {
        Ok(report) => {
            let n = (params.window * params.window) * b.system().size() as u64;
            out.checked = n * n;
            for v in report.violations() {
                out.fail(v.to_string());
            }
        }
        Err(e) => out.error(e),
    }
    out
}

pub fn box_solve_suite(_: &BrSystem, _: &VerifyParams) -> SuiteOutcome {
    const MAX: u64 = 6;
    const BRUTE: u64 = 20;
    let mut out = SuiteOutcome::new("box_solve", MAX);
    for ai in 0..=MAX {
        for aj in 0..=MAX {
            for ti in 0..=MAX {
                for tj in 0..=MAX {
                    for side in [Side::Left, Side::Right] {
                        let (a, t) = (IndexBox::new(ai, aj), IndexBox::new(ti, tj));
                        let fast = box_solve(a, t, side);
                        let slow = box_solve_brute(a, t, side, BRUTE);
                        out.check(fast == slow, || format!("{side} {a}·x = {t}: {fast:?} vs {slow:?}"));
                    }
                }
            }
        }
    }
    out
}

pub const CERTIFICATE_TARGETS: usize = 100;

fn random_basic(rng: &mut ChaCha8Rng) -> BasicZeroNbhd {
    let k = rng.gen_range(0..=3);
    BasicZeroNbhd::excluding((0..k).map(|_| IndexBox::new(rng.gen_range(0..=10), rng.gen_range(0..=10))))
}

pub fn continuity(b: &BrSystem, params: &VerifyParams) -> SuiteOutcome {
    const MULTIPLIER_WINDOW: u64 = 3;
    let mut out = SuiteOutcome::new("continuity", MULTIPLIER_WINDOW);
    out.note = Some(format!("{CERTIFICATE_TARGETS} targets, seed {}", params.seed));
    let b0 = b.adjoin_zero();
    let multipliers: Vec<_> = b0
        .window(MULTIPLIER_WINDOW)
        .expect("small window")
        .into_iter()
        .filter(|x| !x.is_zero())
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    for _ in 0..CERTIFICATE_TARGETS {
        let w = random_basic(&mut rng);
        for &a in &multipliers {
            for side in [Side::Left, Side::Right] {
                let cert = match continuity_cert_zero(&b0, a, &w, side) {
                    Ok(c) => c,
                    Err(e) => {
                        out.fail(format!("no certificate for {a}: {e}"));
                        continue;
                    }
                };
                match cert.verify(&b0) {
                    Ok(check) => {
                        out.checked += check.products_checked;
                        for f in check.failures {
                            out.fail(format!("{side} {a}, W={:?}: {f}", w.excluded));
                        }
                    }
                    Err(e) => out.fail(e.to_string()),
                }
            }
        }
    }
    out
}

pub fn descriptors(_: &BrSystem, params: &VerifyParams) -> SuiteOutcome {
    let mut out = SuiteOutcome::new("descriptors", params.probe_bound);
    out.check(
        classify_descriptor(ZeroNbhdDescriptor::IsolatedZero) == Classification::IsolatedZero,
        || "isolated-zero descriptor misclassified".into(),
    );
    out.check(
        matches!(
            classify_descriptor(ZeroNbhdDescriptor::ExcludedBoxes),
            Classification::Compact { .. }
        ),
        || "excluded-boxes descriptor misclassified".into(),
    );
    out.check(
        pushforward_descriptor(ZeroNbhdDescriptor::ExcludedBoxes) == C0Descriptor::CofinitePoints,
        || "excluded boxes should push forward to cofinite points".into(),
    );
    out.check(
        pushforward_descriptor(ZeroNbhdDescriptor::IsolatedZero) == C0Descriptor::Discrete,
        || "isolated zero should push forward to the discrete topology".into(),
    );
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    for _ in 0..CERTIFICATE_TARGETS {
        let u = random_basic(&mut rng);
        out.check(preimage_basic(&pushforward_basic(&u)) == u, || {
            format!("round trip fails for {:?}", u.excluded)
        });
        let family = ZeroNbhdFamily::Basic(u.clone());
        out.check(cofinite_boxes_check(&family, params.probe_bound).holds(), || {
            format!("{:?} misses infinitely many boxes", u.excluded)
        });
        for i0 in 0..=10 {
            out.check(cofinite_row_check(&family, i0, params.probe_bound).holds(), || {
                format!("{:?} row {i0} has infinitely many exceptions", u.excluded)
            });
        }
    }
    if params.probe_bound > 0 {
        out.check(
            !cofinite_boxes_check(&ZeroNbhdFamily::RowOnly { row_only: 0 }, params.probe_bound).holds(),
            || "the single-row family was not refuted".into(),
        );
        out.check(
            !cofinite_row_check(&ZeroNbhdFamily::ExcludeRow { exclude_row: 0 }, 0, params.probe_bound).holds(),
            || "the row-excluding family was not refuted".into(),
        );
    }
    out
}

/// For the one-element `T`, `(i,·,j) ↦ (i,j)` is an isomorphism onto the
/// bicyclic monoid. Skipped (with a note) for other systems.
pub fn trivial_iso(b: &BrSystem, params: &VerifyParams) -> SuiteOutcome {
    let mut out = SuiteOutcome::new("trivial_iso", params.window);
    if !b.system().is_trivial() {
        out.note = Some("skipped: T is not trivial".into());
        return out;
    }
    let w: Vec<_> = match b.window(params.window) {
        Ok(w) => w.into_iter().filter(|x| !x.is_zero()).collect(),
        Err(e) => {
            out.error(e);
            return out;
        }
    };
    let image = |x: BrElement| match eta(x) {
        C0Elem::Elem(p) => p,
        C0Elem::Zero => unreachable!("nonzero elements map to nonzero pairs"),
    };
    let images: BTreeSet<_> = w.iter().map(|&x| image(x)).collect();
    out.check(images.len() == w.len(), || "η is not injective on the window".into());
    let n = params.window;
    let expected: BTreeSet<_> = (0..n)
        .flat_map(|k| (0..n).map(move |l| BicyclicElem::new(k, l)))
        .collect();
    out.check(images == expected, || "η is not onto the bicyclic window".into());
    for &x in &w {
        for &y in &w {
            let xy = mul_valid(b, x, y).expect("in range");
            out.check(image(xy) == bmul(image(x), image(y)), || {
                format!("η({x}·{y}) ≠ η({x})·η({y})")
            });
        }
    }
    out
}
