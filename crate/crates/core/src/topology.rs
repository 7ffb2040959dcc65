//! Zero-neighborhood bases for `BR⁰(T,θ)` over a finite `T`, and exact checks
//! of their properties.
//!
//! With `T` finite every nonzero point is isolated, so a topology of the kind
//! modelled here is determined by its neighborhoods of zero. Two bases are
//! representable: zero isolated, or the complements of finitely many boxes
//! (the one-point compactification of the disjoint sum of the boxes). This is
//! a descriptor model, not a general topology engine.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::bicyclic::{bmul, BicyclicElem};
use crate::bruck_reilly::{mul_valid, BrElement, BrError, BrSystem, IndexBox};

pub const NONZERO_POINTS_ISOLATED: &str =
    "T is finite, so every nonzero point is isolated; only neighborhoods of zero are modelled";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TopologyError {
    #[error("malformed descriptor: {0}")]
    MalformedDescriptor(String),
    #[error("continuity certificates need a nonzero multiplier")]
    ZeroMultiplier,
    #[error(transparent)]
    Algebra(#[from] BrError),
}

/// Which base of zero-neighborhoods a topology on `BR⁰(T,θ)` uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ZeroNbhdDescriptor {
    /// Zero is an isolated point (the sum-direct topology with zero adjoined
    /// as an isolated point).
    #[serde(rename = "isolated")]
    IsolatedZero,
    /// Zero's basic neighborhoods are `BR⁰ ∖ (T_{i₁,j₁} ∪ … ∪ T_{i_k,j_k})`.
    ExcludedBoxes,
}

impl ZeroNbhdDescriptor {
    /// Parses `{"kind": "isolated"}` or `{"kind": "excluded_boxes"}`. Any other
    /// kind or any additional field is rejected.
    pub fn parse(value: &Value) -> Result<Self, TopologyError> {
        let malformed = |why: &str| TopologyError::MalformedDescriptor(format!("{value}: {why}"));
        let obj = value.as_object().ok_or_else(|| malformed("expected an object"))?;
        if let Some(extra) = obj.keys().find(|k| *k != "kind") {
            return Err(malformed(&format!("unexpected field {extra:?}")));
        }
        match obj.get("kind").and_then(Value::as_str) {
            Some("isolated") => Ok(ZeroNbhdDescriptor::IsolatedZero),
            Some("excluded_boxes") => Ok(ZeroNbhdDescriptor::ExcludedBoxes),
            Some(other) => Err(malformed(&format!("unknown kind {other:?}"))),
            None => Err(malformed("missing string field \"kind\"")),
        }
    }
}

impl fmt::Display for ZeroNbhdDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ZeroNbhdDescriptor::IsolatedZero => "isolated",
            ZeroNbhdDescriptor::ExcludedBoxes => "excluded_boxes",
        })
    }
}

/// A basic neighborhood of zero: everything except finitely many boxes.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BasicZeroNbhd {
    pub excluded: BTreeSet<IndexBox>,
}

impl BasicZeroNbhd {
    pub fn whole_space() -> Self {
        Self::default()
    }

    pub fn excluding(boxes: impl IntoIterator<Item = IndexBox>) -> Self {
        Self {
            excluded: boxes.into_iter().collect(),
        }
    }

    pub fn contains_box(&self, b: IndexBox) -> bool {
        !self.excluded.contains(&b)
    }

    pub fn contains(&self, x: BrElement) -> bool {
        x.index_box().is_none_or(|b| self.contains_box(b))
    }

    /// Largest index appearing among the excluded boxes.
    pub fn max_index(&self) -> u64 {
        self.excluded.iter().map(|b| b.i.max(b.j)).max().unwrap_or(0)
    }
}

/// A candidate zero-neighborhood given by a rule on boxes. Besides the
/// finitely-excluding basics this admits a few infinite families, which is
/// what the bounded refutations in [`cofinite_boxes_check`] and [`cofinite_row_check`]
/// are for.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged, deny_unknown_fields)]
pub enum ZeroNbhdFamily {
    Basic(BasicZeroNbhd),
    /// `{0} ∪ ⋃_j T_{row,j}`.
    RowOnly {
        row_only: u64,
    },
    /// Everything except the boxes `T_{row,j}`, `j ∈ ω`.
    ExcludeRow {
        exclude_row: u64,
    },
    /// Everything except the boxes `T_{i,column}`, `i ∈ ω`.
    ExcludeColumn {
        exclude_column: u64,
    },
}

impl ZeroNbhdFamily {
    pub fn contains_box(&self, b: IndexBox) -> bool {
        match self {
            ZeroNbhdFamily::Basic(u) => u.contains_box(b),
            ZeroNbhdFamily::RowOnly { row_only } => b.i == *row_only,
            ZeroNbhdFamily::ExcludeRow { exclude_row } => b.i != *exclude_row,
            ZeroNbhdFamily::ExcludeColumn { exclude_column } => b.j != *exclude_column,
        }
    }
}

impl From<BasicZeroNbhd> for ZeroNbhdFamily {
    fn from(u: BasicZeroNbhd) -> Self {
        ZeroNbhdFamily::Basic(u)
    }
}

/// Outcome of a predicate that quantifies over ω.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum BoundedVerdict {
    /// Holds, with the complete finite list of exceptions.
    Holds { exceptions: Vec<IndexBox> },
    /// Exceptions keep appearing up to the probe bound; the statement is
    /// refuted only as far as the probe reaches.
    RefutedWithinBound { bound: u64, witnesses: Vec<IndexBox> },
}

impl BoundedVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, BoundedVerdict::Holds { .. })
    }
}

impl fmt::Display for BoundedVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundedVerdict::Holds { exceptions } => {
                write!(f, "holds ({} exceptions)", exceptions.len())
            }
            BoundedVerdict::RefutedWithinBound { bound, .. } => {
                write!(f, "refuted within probe bound {bound}")
            }
        }
    }
}

const MAX_WITNESSES: usize = 8;

fn probe_verdict(misses: Vec<IndexBox>, reaches_bound: bool, bound: u64) -> BoundedVerdict {
    if reaches_bound {
        BoundedVerdict::RefutedWithinBound {
            bound,
            witnesses: misses.into_iter().take(MAX_WITNESSES).collect(),
        }
    } else {
        BoundedVerdict::Holds { exceptions: misses }
    }
}

/// Does `U` meet all but finitely many boxes? Exact for basics; for the
/// infinite families the boxes `i, j < probe_bound` are scanned and the
/// statement is refuted if missed boxes reach the edge of the probe.
pub fn cofinite_boxes_check(u: &ZeroNbhdFamily, probe_bound: u64) -> BoundedVerdict {
    if let ZeroNbhdFamily::Basic(basic) = u {
        return BoundedVerdict::Holds {
            exceptions: basic.excluded.iter().copied().collect(),
        };
    }
    let mut misses = Vec::new();
    let mut reaches = false;
    for i in 0..probe_bound {
        for j in 0..probe_bound {
            let b = IndexBox::new(i, j);
            if !u.contains_box(b) {
                reaches |= i + 1 == probe_bound || j + 1 == probe_bound;
                misses.push(b);
            }
        }
    }
    probe_verdict(misses, reaches, probe_bound)
}

/// Is `{j : T_{i0,j} ⊄ U}` finite? Exact for basics, probed for families.
pub fn cofinite_row_check(u: &ZeroNbhdFamily, i0: u64, probe_bound: u64) -> BoundedVerdict {
    if let ZeroNbhdFamily::Basic(basic) = u {
        return BoundedVerdict::Holds {
            exceptions: basic.excluded.iter().copied().filter(|b| b.i == i0).collect(),
        };
    }
    let misses: Vec<_> = (0..probe_bound)
        .map(|j| IndexBox::new(i0, j))
        .filter(|&b| !u.contains_box(b))
        .collect();
    let reaches = misses.last().is_some_and(|b| b.j + 1 == probe_bound);
    probe_verdict(misses, reaches, probe_bound)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    /// The multiplier acts on the left: `a·x`.
    Left,
    /// The multiplier acts on the right: `x·a`.
    Right,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Left => "left",
            Side::Right => "right",
        })
    }
}

impl std::str::FromStr for Side {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "left" => Ok(Side::Left),
            "right" => Ok(Side::Right),
            other => Err(format!("unknown side {other:?}, expected left or right")),
        }
    }
}

/// All boxes `x` with `a·x = target` (left) or `x·a = target` (right) in the
/// bicyclic index monoid. The solution set is finite and returned sorted.
///
/// For `a = (k,l)` on the left, `a·(i,j)` is `(k, l+j−i)` when `i ≤ l` and
/// `(k+i−l, j)` otherwise; the right side is the mirror image.
pub fn box_solve(a: IndexBox, target: IndexBox, side: Side) -> Vec<IndexBox> {
    match side {
        Side::Left => solve_left(a.i, a.j, target.i, target.j)
            .into_iter()
            .map(|(i, j)| IndexBox::new(i, j))
            .collect(),
        // x·a = t  ⟺  a⁻¹·x⁻¹ = t⁻¹ under the anti-automorphism (k,l) ↦ (l,k).
        Side::Right => {
            let mut out: Vec<_> = solve_left(a.j, a.i, target.j, target.i)
                .into_iter()
                .map(|(j, i)| IndexBox::new(i, j))
                .collect();
            out.sort();
            out
        }
    }
}

fn solve_left(k: u64, l: u64, p: u64, r: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    if p == k {
        // i ≤ l: l + j − i = r, so j = r − l + i ≥ 0.
        for i in l.saturating_sub(r)..=l {
            out.push((i, r + i - l));
        }
    } else if p > k {
        // i > l: k + i − l = p.
        out.push((p - k + l, r));
    }
    out
}

/// Brute-force solutions with both indices at most `bound`.
pub fn box_solve_brute(a: IndexBox, target: IndexBox, side: Side, bound: u64) -> Vec<IndexBox> {
    let (a, t) = (a.as_bicyclic(), target.as_bicyclic());
    let mut out = Vec::new();
    for i in 0..=bound {
        for j in 0..=bound {
            let x = BicyclicElem::new(i, j);
            let product = match side {
                Side::Left => bmul(a, x),
                Side::Right => bmul(x, a),
            };
            if product == t {
                out.push(IndexBox::new(i, j));
            }
        }
    }
    out
}

/// One solved box equation in a certificate's derivation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoxEquation {
    pub target: IndexBox,
    pub solutions: Vec<IndexBox>,
}

/// Witness that multiplication by a fixed element is continuous at zero for
/// a given basic target: `a·U ⊆ W` (or `U·a ⊆ W`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ContinuityCertificate {
    pub multiplier: String,
    #[serde(skip)]
    pub a: BrElement,
    pub side: Side,
    pub target: BasicZeroNbhd,
    pub found: BasicZeroNbhd,
    pub trace: Vec<BoxEquation>,
}

/// Result of re-checking a certificate element by element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CertificateCheck {
    pub products_checked: u64,
    pub window: u64,
    pub failures: Vec<String>,
}

impl CertificateCheck {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Builds `U` with `a·U ⊆ W` (left) or `U·a ⊆ W` (right): `U` excludes every
/// box that the box equations send into one of `W`'s excluded boxes.
pub fn continuity_cert_zero(
    b: &BrSystem,
    a: BrElement,
    w: &BasicZeroNbhd,
    side: Side,
) -> Result<ContinuityCertificate, TopologyError> {
    b.check(a)?;
    let a_box = a.index_box().ok_or(TopologyError::ZeroMultiplier)?;
    let mut found = BasicZeroNbhd::whole_space();
    let mut trace = Vec::with_capacity(w.excluded.len());
    for &target in &w.excluded {
        let solutions = box_solve(a_box, target, side);
        found.excluded.extend(solutions.iter().copied());
        trace.push(BoxEquation { target, solutions });
    }
    Ok(ContinuityCertificate {
        multiplier: a.to_string(),
        a,
        side,
        target: w.clone(),
        found,
        trace,
    })
}

impl ContinuityCertificate {
    /// Side length of the square of boxes re-checked by [`verify`]. Every
    /// solution of a box equation has indices bounded by the target's plus
    /// the multiplier's, so the window covers all of them with room to spare.
    ///
    /// [`verify`]: ContinuityCertificate::verify
    pub fn verification_window(&self) -> u64 {
        let (ai, aj) = match self.a {
            BrElement::Triple { i, j, .. } => (i, j),
            BrElement::Zero => (0, 0),
        };
        self.target.max_index().max(self.found.max_index()) + ai + aj + 2
    }

    /// Multiplies `a` with every element of every box in the verification
    /// window (and with zero) and checks that each product lying in `U`
    /// lands in `W`. Also checks that every excluded box of `U` really maps
    /// outside `W`, so nothing was excluded without cause.
    pub fn verify(&self, b: &BrSystem) -> Result<CertificateCheck, TopologyError> {
        let window = self.verification_window();
        let mut check = CertificateCheck {
            products_checked: 0,
            window,
            failures: Vec::new(),
        };
        let mul = |x: BrElement| match self.side {
            Side::Left => mul_valid(b, self.a, x),
            Side::Right => mul_valid(b, x, self.a),
        };
        if b.with_zero() {
            check.products_checked += 1;
            if !self.target.contains(mul(BrElement::Zero)?) {
                check.failures.push("zero maps outside W".into());
            }
        }
        let elements: Vec<_> = b.system().elements().collect();
        for i in 0..window {
            for j in 0..window {
                let bx = IndexBox::new(i, j);
                let in_u = self.found.contains_box(bx);
                for &s in &elements {
                    let x = BrElement::new(i, s, j);
                    let y = mul(x)?;
                    check.products_checked += 1;
                    match (in_u, self.target.contains(y)) {
                        (true, false) => check.failures.push(format!("{x} ∈ U but its product {y} ∉ W")),
                        (false, true) => check
                            .failures
                            .push(format!("{x} excluded from U but its product {y} ∈ W")),
                        _ => {}
                    }
                }
            }
        }
        Ok(check)
    }
}

/// Explicit statement of compactness for an excluded-boxes descriptor.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CompactnessCertificate {
    pub schema: &'static str,
    pub statement: &'static str,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "class", rename_all = "snake_case")]
pub enum Classification {
    Compact { certificate: CompactnessCertificate },
    IsolatedZero,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Classification::Compact { .. } => "compact",
            Classification::IsolatedZero => "isolated_zero",
        })
    }
}

/// Sorts a descriptor into the compact or isolated-zero case. This reads the
/// descriptor; it does not decide anything about arbitrary topologies.
pub fn classify_descriptor(d: ZeroNbhdDescriptor) -> Classification {
    match d {
        ZeroNbhdDescriptor::IsolatedZero => Classification::IsolatedZero,
        ZeroNbhdDescriptor::ExcludedBoxes => Classification::Compact {
            certificate: CompactnessCertificate {
                schema: "finite-remainder",
                statement: "any cover by open sets contains a basic neighborhood of zero, which \
                            omits finitely many boxes of |T| points each, so a finite subcover exists",
            },
        },
    }
}

/// Parses and classifies a raw JSON descriptor.
pub fn classify_json(value: &Value) -> Result<Classification, TopologyError> {
    ZeroNbhdDescriptor::parse(value).map(classify_descriptor)
}

/// The finitely many points left over once a basic neighborhood of zero has
/// been taken from a cover: all elements of the excluded boxes.
pub fn compact_remainder(b: &BrSystem, u: &BasicZeroNbhd) -> Vec<BrElement> {
    u.excluded
        .iter()
        .flat_map(|bx| b.system().elements().map(move |s| BrElement::new(bx.i, s, bx.j)))
        .collect()
}

/// Zero-neighborhood bases on `C⁰`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum C0Descriptor {
    Discrete,
    /// Complements of finitely many bicyclic points.
    CofinitePoints,
}

/// Image of a descriptor under `η`.
pub fn pushforward_descriptor(d: ZeroNbhdDescriptor) -> C0Descriptor {
    match d {
        ZeroNbhdDescriptor::IsolatedZero => C0Descriptor::Discrete,
        ZeroNbhdDescriptor::ExcludedBoxes => C0Descriptor::CofinitePoints,
    }
}

/// A basic neighborhood of zero in `C⁰`: all but finitely many points.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct C0BasicNbhd {
    pub excluded: BTreeSet<BicyclicElem>,
}

/// `η(U)`: each excluded box collapses to a single excluded point.
pub fn pushforward_basic(u: &BasicZeroNbhd) -> C0BasicNbhd {
    C0BasicNbhd {
        excluded: u.excluded.iter().map(|b| b.as_bicyclic()).collect(),
    }
}

/// `η⁻¹(V)`.
pub fn preimage_basic(v: &C0BasicNbhd) -> BasicZeroNbhd {
    BasicZeroNbhd {
        excluded: v.excluded.iter().map(|&x| IndexBox::from(x)).collect(),
    }
}
