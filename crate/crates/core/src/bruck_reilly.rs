//! Bruck–Reilly extensions `BR(T,θ) = ω × T × ω` of a finite chain of
//! groups, optionally with an adjoined zero.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bicyclic::{BicyclicElem, C0Elem};
use crate::clifford::{
    cinv_unchecked, cmul_unchecked, idempotents, theta_pow_unchecked, CliffordElement, CliffordError, CliffordSystem,
};
use crate::report::ValidationReport;

/// Largest window accepted by the exhaustive operations.
pub const MAX_WINDOW: u64 = 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BrError {
    #[error("zero used in a Bruck-Reilly extension without an adjoined zero")]
    ZeroNotAdjoined,
    #[error("{0} does not accept the zero element")]
    ZeroArgument(&'static str),
    #[error(transparent)]
    InvalidElement(#[from] CliffordError),
    #[error("index overflow computing {0}")]
    IndexOverflow(String),
    #[error("window {0} exceeds the maximum of {MAX_WINDOW}")]
    WindowTooLarge(u64),
    #[error("simplicity witness failed to verify: {0}")]
    WitnessVerificationFailed(String),
    #[error("idempotents are not totally ordered: {0}")]
    OrderNotTotal(String),
}

/// An element of `BR(T,θ)` or `BR⁰(T,θ)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BrElement {
    Zero,
    Triple { i: u64, s: CliffordElement, j: u64 },
}

impl BrElement {
    pub const fn new(i: u64, s: CliffordElement, j: u64) -> Self {
        BrElement::Triple { i, s, j }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, BrElement::Zero)
    }

    /// The box `T_{i,j}` containing this element.
    pub fn index_box(&self) -> Option<IndexBox> {
        match *self {
            BrElement::Zero => None,
            BrElement::Triple { i, j, .. } => Some(IndexBox::new(i, j)),
        }
    }
}

impl fmt::Display for BrElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BrElement::Zero => f.write_str("0"),
            BrElement::Triple { i, s, j } => write!(f, "({i},{s},{j})"),
        }
    }
}

/// The subset `T_{i,j} = {(i,s,j) : s ∈ T}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(from = "[u64; 2]", into = "[u64; 2]")]
pub struct IndexBox {
    pub i: u64,
    pub j: u64,
}

impl IndexBox {
    pub const fn new(i: u64, j: u64) -> Self {
        Self { i, j }
    }

    pub fn as_bicyclic(self) -> BicyclicElem {
        BicyclicElem::new(self.i, self.j)
    }
}

impl From<[u64; 2]> for IndexBox {
    fn from([i, j]: [u64; 2]) -> Self {
        Self { i, j }
    }
}

impl From<IndexBox> for [u64; 2] {
    fn from(b: IndexBox) -> Self {
        [b.i, b.j]
    }
}

impl From<BicyclicElem> for IndexBox {
    fn from(x: BicyclicElem) -> Self {
        Self { i: x.k, j: x.l }
    }
}

impl fmt::Display for IndexBox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "T_{{{},{}}}", self.i, self.j)
    }
}

/// A Bruck–Reilly extension over a system that passed
/// [`validate_system`](crate::clifford::validate_system).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BrSystem {
    sys: CliffordSystem,
    with_zero: bool,
}

impl BrSystem {
    /// Wraps an already validated system.
    pub fn new(sys: CliffordSystem, with_zero: bool) -> Self {
        Self { sys, with_zero }
    }

    pub fn system(&self) -> &CliffordSystem {
        &self.sys
    }

    pub fn with_zero(&self) -> bool {
        self.with_zero
    }

    /// The same extension with the zero adjoined.
    pub fn adjoin_zero(&self) -> Self {
        Self {
            sys: self.sys.clone(),
            with_zero: true,
        }
    }

    pub fn check(&self, x: BrElement) -> Result<(), BrError> {
        match x {
            BrElement::Zero if !self.with_zero => Err(BrError::ZeroNotAdjoined),
            BrElement::Zero => Ok(()),
            BrElement::Triple { s, .. } => Ok(self.sys.check(s)?),
        }
    }

    /// Every element with `i, j < n`, box by box in row-major order, then
    /// the zero when adjoined.
    pub fn window(&self, n: u64) -> Result<Vec<BrElement>, BrError> {
        check_window(n)?;
        let mut out = Vec::with_capacity((n * n) as usize * self.sys.size() + 1);
        for i in 0..n {
            for j in 0..n {
                out.extend(self.sys.elements().map(|s| BrElement::new(i, s, j)));
            }
        }
        if self.with_zero {
            out.push(BrElement::Zero);
        }
        Ok(out)
    }

    pub fn unit(&self) -> BrElement {
        BrElement::new(0, self.sys.unit(), 0)
    }
}

pub fn check_window(n: u64) -> Result<(), BrError> {
    if n > MAX_WINDOW {
        Err(BrError::WindowTooLarge(n))
    } else {
        Ok(())
    }
}

/// The product on valid nonzero triples; `None` only on index overflow.
#[inline]
pub(crate) fn triple_mul(
    sys: &CliffordSystem,
    (i, s, j): (u64, CliffordElement, u64),
    (k, t, l): (u64, CliffordElement, u64),
) -> Option<BrElement> {
    let m = j.min(k);
    let left = theta_pow_unchecked(sys, s, k - m);
    let right = theta_pow_unchecked(sys, t, j - m);
    Some(BrElement::new(
        i.checked_add(k - m)?,
        cmul_unchecked(sys, left, right),
        l.checked_add(j - m)?,
    ))
}

/// `(i,s,j)·(k,t,l) = (i+k−m, θ^{k−m}(s)·θ^{j−m}(t), j+l−m)` with
/// `m = min(j,k)`; the zero absorbs.
pub fn brmul(b: &BrSystem, x: BrElement, y: BrElement) -> Result<BrElement, BrError> {
    b.check(x)?;
    b.check(y)?;
    mul_valid(b, x, y)
}

/// Product of two elements already known to be valid in `b`.
#[inline]
pub(crate) fn mul_valid(b: &BrSystem, x: BrElement, y: BrElement) -> Result<BrElement, BrError> {
    match (x, y) {
        (BrElement::Triple { i, s, j }, BrElement::Triple { i: k, s: t, j: l }) => {
            triple_mul(&b.sys, (i, s, j), (k, t, l)).ok_or_else(|| BrError::IndexOverflow(format!("{x}·{y}")))
        }
        _ => Ok(BrElement::Zero),
    }
}

/// `(i,s,j) ↦ (j,s⁻¹,i)`; the zero is its own inverse.
pub fn brinv(b: &BrSystem, x: BrElement) -> Result<BrElement, BrError> {
    b.check(x)?;
    Ok(inv_valid(b, x))
}

#[inline]
pub(crate) fn inv_valid(b: &BrSystem, x: BrElement) -> BrElement {
    match x {
        BrElement::Zero => BrElement::Zero,
        BrElement::Triple { i, s, j } => BrElement::new(j, cinv_unchecked(&b.sys, s), i),
    }
}

/// `η(i,s,j) = q^i p^j`, extended by `η(0) = 0`.
pub fn eta(x: BrElement) -> C0Elem {
    match x {
        BrElement::Zero => C0Elem::Zero,
        BrElement::Triple { i, j, .. } => C0Elem::Elem(BicyclicElem::new(i, j)),
    }
}

/// `x η♮ y` iff both lie in the same box (or both are zero).
pub fn eta_congruent(x: BrElement, y: BrElement) -> bool {
    x.index_box() == y.index_box()
}

pub fn is_idempotent(b: &BrSystem, x: BrElement) -> Result<bool, BrError> {
    b.check(x)?;
    Ok(mul_valid(b, x, x)? == x)
}

/// Natural partial order, decided in closed form: writing `x = (i,s,j)` and
/// `y = (m,t,n)`, `x ≼ y` iff `d = i−m = j−n ≥ 0` and `s = θ^d(t)·e` for an
/// idempotent `e` of `T`.
pub fn nat_order(b: &BrSystem, x: BrElement, y: BrElement) -> Result<bool, BrError> {
    b.check(x)?;
    b.check(y)?;
    let (i, s, j, m, t, n) = match (x, y) {
        (BrElement::Zero, _) => return Ok(true),
        (_, BrElement::Zero) => return Ok(false),
        (BrElement::Triple { i, s, j }, BrElement::Triple { i: m, s: t, j: n }) => (i, s, j, m, t, n),
    };
    if i < m || j < n || i - m != j - n {
        return Ok(false);
    }
    let base = theta_pow_unchecked(&b.sys, t, i - m);
    // base·1_β = φ_{base.level, β}(base) for β at or below base.level.
    Ok(s.level >= base.level && s.elem == b.sys.bond(base.level, s.level, base.elem))
}

/// Brute-force natural order: searches for an idempotent `e = (k,f,k)` with
/// `x = y·e`. Any witness can be taken to be `x⁻¹x`, whose index is `j`, so
/// `k` ranges up to `max(i, j)`.
pub fn nat_order_oracle(b: &BrSystem, x: BrElement, y: BrElement) -> Result<bool, BrError> {
    b.check(x)?;
    b.check(y)?;
    let (i, j) = match x {
        BrElement::Zero => return Ok(true),
        BrElement::Triple { i, j, .. } => (i, j),
    };
    if y.is_zero() {
        return Ok(false);
    }
    for k in 0..=i.max(j) {
        for f in idempotents(&b.sys) {
            if mul_valid(b, y, BrElement::new(k, f, k))? == x {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// The idempotents `(i, 1_α, i)` with `i < n`, greatest first. The order is
/// confirmed to be total and to agree with the list order before returning.
pub fn idempotents_window(b: &BrSystem, n: u64) -> Result<Vec<BrElement>, BrError> {
    check_window(n)?;
    let list: Vec<BrElement> = (0..n)
        .flat_map(|i| idempotents(&b.sys).into_iter().map(move |e| BrElement::new(i, e, i)))
        .collect();
    for (p, &e) in list.iter().enumerate() {
        if !is_idempotent(b, e)? {
            return Err(BrError::OrderNotTotal(format!("{e} is not idempotent")));
        }
        for (q, &f) in list.iter().enumerate() {
            let below = mul_valid(b, e, f)? == e && mul_valid(b, f, e)? == e;
            if below != (p >= q) {
                return Err(BrError::OrderNotTotal(format!(
                    "{e} ≼ {f} is {below}, list position says {}",
                    p >= q
                )));
            }
        }
    }
    Ok(list)
}

/// The H-class of `x`: the whole group `(G_α)_{i,j}` for `s ∈ G_α`, or
/// `{0}` for the zero.
pub fn hclass(b: &BrSystem, x: BrElement) -> Result<Vec<BrElement>, BrError> {
    b.check(x)?;
    Ok(match x {
        BrElement::Zero => vec![BrElement::Zero],
        BrElement::Triple { i, s, j } => (0..b.sys.group(s.level).order())
            .map(|u| BrElement::new(i, CliffordElement::new(s.level, u), j))
            .collect(),
    })
}

/// H-class of `x` among `candidates` by the criterion `yy⁻¹ = xx⁻¹` and
/// `y⁻¹y = x⁻¹x`.
pub fn hclass_by_criterion(b: &BrSystem, x: BrElement, candidates: &[BrElement]) -> Result<Vec<BrElement>, BrError> {
    b.check(x)?;
    let xi = inv_valid(b, x);
    let (r, l) = (mul_valid(b, x, xi)?, mul_valid(b, xi, x)?);
    let mut out = Vec::new();
    for &y in candidates {
        b.check(y)?;
        let yi = inv_valid(b, y);
        if mul_valid(b, y, yi)? == r && mul_valid(b, yi, y)? == l {
            out.push(y);
        }
    }
    out.sort();
    Ok(out)
}

/// Returns `(x, y)` with `x·a·y = b`, showing that `b` lies in the ideal
/// generated by `a`. With `a = (i_a,s,j_a)` and `b = (i_b,t,j_b)` the pair is
/// `y = (j_a+1, 1_T, j_b)` and `x = (i_b, t·θ(s)⁻¹, i_a+1)`; it is checked by
/// multiplication before being returned.
pub fn simplicity_witness(br: &BrSystem, a: BrElement, b: BrElement) -> Result<(BrElement, BrElement), BrError> {
    br.check(a)?;
    br.check(b)?;
    let (BrElement::Triple { i: ia, s, j: ja }, BrElement::Triple { i: ib, s: t, j: jb }) = (a, b) else {
        return Err(BrError::ZeroArgument("simplicity_witness"));
    };
    let sys = &br.sys;
    let overflow = || BrError::IndexOverflow(format!("witness for {a}, {b}"));
    let y = BrElement::new(ja.checked_add(1).ok_or_else(overflow)?, sys.unit(), jb);
    let lifted = cinv_unchecked(sys, theta_pow_unchecked(sys, s, 1));
    let x = BrElement::new(
        ib,
        cmul_unchecked(sys, t, lifted),
        ia.checked_add(1).ok_or_else(overflow)?,
    );
    let got = mul_valid(br, x, mul_valid(br, a, y)?)?;
    if got != b {
        return Err(BrError::WitnessVerificationFailed(format!(
            "{x}·{a}·{y} = {got}, expected {b}"
        )));
    }
    Ok((x, y))
}

/// Lists every pair of nonzero window elements whose product is zero, using
/// the given multiplication.
pub fn zero_divisor_scan_with<F>(elements: &[BrElement], mut mul: F) -> ValidationReport
where
    F: FnMut(BrElement, BrElement) -> BrElement,
{
    let mut report = ValidationReport::new();
    let nonzero: Vec<_> = elements.iter().copied().filter(|x| !x.is_zero()).collect();
    for &x in &nonzero {
        for &y in &nonzero {
            if mul(x, y).is_zero() {
                report.push("zero divisor", format!("{x}·{y} = 0"));
            }
        }
    }
    report
}

/// Certifies on the window `i, j < n` that no two nonzero elements of
/// `BR⁰(T,θ)` multiply to zero.
pub fn zero_divisor_scan(b: &BrSystem, n: u64) -> Result<ValidationReport, BrError> {
    if !b.with_zero {
        return Err(BrError::ZeroNotAdjoined);
    }
    let window = b.window(n)?;
    let mut failure = None;
    let report = zero_divisor_scan_with(&window, |x, y| match mul_valid(b, x, y) {
        Ok(z) => z,
        Err(e) => {
            failure.get_or_insert(e);
            BrElement::Zero
        }
    });
    match failure {
        Some(e) => Err(e),
        None => Ok(report),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bicyclic::bmul;
    use crate::clifford::fixtures::*;
    use crate::clifford::CliffordSystem;

    fn br_t2() -> BrSystem {
        BrSystem::new(t2(), true)
    }

    fn br_trivial() -> BrSystem {
        BrSystem::new(CliffordSystem::trivial(), true)
    }

    const E: CliffordElement = CliffordElement::new(0, 0);

    /// Product evaluated from the literal formula, with θ powers taken by
    /// repeated application of the per-level maps and the T₂ product read
    /// from an explicit 4×4 table.
    fn t2_oracle(x: (u64, CliffordElement, u64), y: (u64, CliffordElement, u64)) -> BrElement {
        let table =
            |a: CliffordElement, b: CliffordElement| CliffordElement::new(a.level.max(b.level), (a.elem + b.elem) % 2);
        let theta = |a: CliffordElement, n: u64| {
            let mut cur = a;
            for _ in 0..n {
                // θ_0 = id, θ_1 = the isomorphism up: elem index unchanged.
                cur = CliffordElement::new(0, cur.elem);
            }
            cur
        };
        let (i, s, j) = x;
        let (k, t, l) = y;
        let m = j.min(k);
        BrElement::new(i + k - m, table(theta(s, k - m), theta(t, j - m)), j + l - m)
    }

    #[test]
    fn product_example() {
        let b = br_t2();
        let x = BrElement::new(0, G, 1);
        let y = BrElement::new(2, H, 0);
        assert_eq!(brmul(&b, x, y).unwrap(), BrElement::new(1, ONE_B, 0));
        assert_eq!(t2_oracle((0, G, 1), (2, H, 0)), BrElement::new(1, ONE_B, 0));
    }

    #[test]
    fn product_matches_oracle_on_window() {
        let b = br_t2();
        let elems: Vec<_> = b.window(4).unwrap().into_iter().filter(|x| !x.is_zero()).collect();
        for &x in &elems {
            for &y in &elems {
                let (BrElement::Triple { i, s, j }, BrElement::Triple { i: k, s: t, j: l }) = (x, y) else {
                    unreachable!()
                };
                assert_eq!(brmul(&b, x, y).unwrap(), t2_oracle((i, s, j), (k, t, l)));
            }
        }
    }

    #[test]
    fn idempotent_row_unit() {
        let b = br_t2();
        for x in b.window(3).unwrap() {
            if let BrElement::Triple { i, .. } = x {
                assert_eq!(brmul(&b, BrElement::new(i, E, i), x).unwrap(), x);
            }
        }
    }

    #[test]
    fn zero_handling() {
        let b = br_t2();
        let x = BrElement::new(1, H, 2);
        assert_eq!(brmul(&b, BrElement::Zero, x).unwrap(), BrElement::Zero);
        assert_eq!(brmul(&b, x, BrElement::Zero).unwrap(), BrElement::Zero);
        let plain = BrSystem::new(t2(), false);
        assert_eq!(brmul(&plain, BrElement::Zero, x), Err(BrError::ZeroNotAdjoined));
        assert!(brmul(&b, BrElement::new(0, CliffordElement::new(5, 0), 0), x).is_err());
    }

    #[test]
    fn trivial_system_is_bicyclic() {
        let b = br_trivial();
        for i in 0..5 {
            for j in 0..5 {
                for k in 0..5 {
                    for l in 0..5 {
                        let p = brmul(&b, BrElement::new(i, E, j), BrElement::new(k, E, l)).unwrap();
                        let q = bmul(BicyclicElem::new(i, j), BicyclicElem::new(k, l));
                        assert_eq!(p, BrElement::new(q.k, E, q.l));
                    }
                }
            }
        }
    }

    #[test]
    fn inverse_examples() {
        let b = br_t2();
        let x = BrElement::new(0, G, 1);
        let xi = brinv(&b, x).unwrap();
        assert_eq!(xi, BrElement::new(1, G, 0));
        assert_eq!(brmul(&b, brmul(&b, x, xi).unwrap(), x).unwrap(), x);
        let e = BrElement::new(2, ONE_A, 2);
        assert_eq!(brinv(&b, e).unwrap(), e);
        assert_eq!(brinv(&b, BrElement::Zero).unwrap(), BrElement::Zero);
    }

    #[test]
    fn eta_examples() {
        assert_eq!(eta(BrElement::new(2, H, 5)), C0Elem::Elem(BicyclicElem::new(2, 5)));
        assert_eq!(eta(BrElement::new(0, E, 0)), C0Elem::Elem(BicyclicElem::IDENTITY));
        assert_eq!(eta(BrElement::Zero), C0Elem::Zero);
        assert!(eta_congruent(BrElement::new(2, G, 5), BrElement::new(2, H, 5)));
        assert!(eta_congruent(BrElement::new(2, G, 5), BrElement::new(2, G, 5)));
        assert!(!eta_congruent(BrElement::new(2, G, 5), BrElement::new(3, G, 5)));
        assert!(!eta_congruent(BrElement::Zero, BrElement::new(3, G, 5)));
    }

    #[test]
    fn idempotent_window_examples() {
        let b = br_t2();
        assert_eq!(
            idempotents_window(&b, 2).unwrap(),
            vec![
                BrElement::new(0, ONE_A, 0),
                BrElement::new(0, ONE_B, 0),
                BrElement::new(1, ONE_A, 1),
                BrElement::new(1, ONE_B, 1),
            ]
        );
        let t = br_trivial();
        assert_eq!(
            idempotents_window(&t, 3).unwrap(),
            (0..3).map(|i| BrElement::new(i, E, i)).collect::<Vec<_>>()
        );
        assert_eq!(idempotents_window(&b, 8).unwrap().len(), 16);
        assert_eq!(idempotents_window(&b, 17), Err(BrError::WindowTooLarge(17)));
    }

    #[test]
    fn idempotents_are_exactly_the_listed_ones() {
        let b = br_t2();
        let listed = idempotents_window(&b, 3).unwrap();
        let scanned: Vec<_> = b
            .window(3)
            .unwrap()
            .into_iter()
            .filter(|&x| !x.is_zero() && is_idempotent(&b, x).unwrap())
            .collect();
        let mut sorted = listed.clone();
        sorted.sort();
        assert_eq!(scanned, sorted);
    }

    #[test]
    fn natural_order_examples() {
        let b = br_t2();
        let x = BrElement::new(1, H, 1);
        let y = BrElement::new(0, G, 0);
        assert!(nat_order(&b, x, y).unwrap());
        assert!(nat_order_oracle(&b, x, y).unwrap());
        assert!(nat_order(&b, x, x).unwrap());
        let p = BrElement::new(0, G, 1);
        let q = BrElement::new(0, G, 2);
        assert!(!nat_order(&b, p, q).unwrap());
        assert!(!nat_order_oracle(&b, p, q).unwrap());
        // The witness (5,1_β,5) has index beyond i = 0.
        let low = BrElement::new(0, H, 5);
        let high = BrElement::new(0, G, 5);
        assert!(nat_order(&b, low, high).unwrap());
        assert!(nat_order_oracle(&b, low, high).unwrap());
    }

    #[test]
    fn natural_order_closed_form_matches_oracle() {
        for b in [br_t2(), br_trivial()] {
            let w = b.window(3).unwrap();
            for &x in &w {
                for &y in &w {
                    assert_eq!(
                        nat_order(&b, x, y).unwrap(),
                        nat_order_oracle(&b, x, y).unwrap(),
                        "{x} ≼ {y}"
                    );
                }
            }
        }
    }

    #[test]
    fn hclass_examples() {
        let b = br_t2();
        let x = BrElement::new(2, H, 0);
        let h = hclass(&b, x).unwrap();
        assert_eq!(h, vec![BrElement::new(2, ONE_B, 0), BrElement::new(2, H, 0)]);
        assert_eq!(h, hclass_by_criterion(&b, x, &b.window(4).unwrap()).unwrap());
        assert_eq!(hclass(&b, BrElement::Zero).unwrap(), vec![BrElement::Zero]);
    }

    #[test]
    fn witness_examples() {
        let b = br_t2();
        let a = BrElement::new(0, G, 1);
        let target = BrElement::new(3, H, 2);
        let (x, y) = simplicity_witness(&b, a, target).unwrap();
        assert_eq!(x, BrElement::new(3, ONE_B, 1));
        assert_eq!(y, BrElement::new(2, ONE_A, 2));
        let (x, y) = simplicity_witness(&b, a, a).unwrap();
        assert_eq!(brmul(&b, x, brmul(&b, a, y).unwrap()).unwrap(), a);
        assert_eq!(
            simplicity_witness(&b, BrElement::Zero, a),
            Err(BrError::ZeroArgument("simplicity_witness"))
        );
    }

    #[test]
    fn trivial_witness_is_bicyclic_divisibility() {
        let b = br_trivial();
        let a = BrElement::new(4, E, 1);
        let target = BrElement::new(0, E, 7);
        let (x, y) = simplicity_witness(&b, a, target).unwrap();
        assert_eq!(x, BrElement::new(0, E, 5));
        assert_eq!(y, BrElement::new(2, E, 7));
        let q = bmul(
            bmul(BicyclicElem::new(0, 5), BicyclicElem::new(4, 1)),
            BicyclicElem::new(2, 7),
        );
        assert_eq!(q, BicyclicElem::new(0, 7));
    }

    #[test]
    fn zero_divisor_scans() {
        assert!(zero_divisor_scan(&br_t2(), 4).unwrap().is_empty());
        assert!(zero_divisor_scan(&br_trivial(), 6).unwrap().is_empty());
        assert_eq!(
            zero_divisor_scan(&BrSystem::new(t2(), false), 4),
            Err(BrError::ZeroNotAdjoined)
        );

        let b = br_t2();
        let w = b.window(2).unwrap();
        let corrupted = zero_divisor_scan_with(&w, |x, y| {
            if x.index_box() == Some(IndexBox::new(1, 1)) && y.index_box() == Some(IndexBox::new(0, 0)) {
                BrElement::Zero
            } else {
                mul_valid(&b, x, y).unwrap()
            }
        });
        assert_eq!(corrupted.len(), 16);
    }

    #[test]
    fn large_indices() {
        let b = br_t2();
        let big = u64::MAX - 1;
        let x = BrElement::new(big, G, 3);
        let y = BrElement::new(3, H, 0);
        assert_eq!(brmul(&b, x, y).unwrap(), BrElement::new(big, ONE_B, 0));
        let z = BrElement::new(0, G, big);
        assert!(brmul(&b, y, z).is_ok());
        assert!(matches!(
            brmul(&b, BrElement::new(big, G, 0), BrElement::new(5, G, 0)),
            Err(BrError::IndexOverflow(_))
        ));
    }
}
