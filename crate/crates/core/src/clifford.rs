//! Finite chains of groups `[E; G_α, φ_{α,β}]` together with an endomorphism
//! θ into the unit group `G_0`.
//!
//! Levels are indexed `0..k` with level 0 the top of the chain, so the meet
//! of two levels is the larger index. Bonding maps run downward: `φ_{α,β}`
//! is stored for `α < β` and sends `G_α` into `G_β`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::group::{check_map_shape, validate_group, validate_hom, Elem, GroupError, GroupHom, GroupTable};
use crate::report::ValidationReport;

/// Index into the chain; 0 is the greatest element.
pub type Level = usize;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CliffordError {
    #[error("the chain must have at least one level")]
    EmptyChain,
    #[error("chain has {chain} levels but {given} {what} were given")]
    CountMismatch {
        chain: usize,
        given: usize,
        what: &'static str,
    },
    #[error("missing bonding map φ_{{{0},{1}}}")]
    MissingBond(Level, Level),
    #[error("bonding map φ_{{{0},{1}}} does not run down the chain")]
    BondOutOfChain(Level, Level),
    #[error("in {map}: {source}")]
    Map {
        map: String,
        #[source]
        source: GroupError,
    },
    #[error("{0} is not an element of the system")]
    InvalidElement(CliffordElement),
    #[error("{0} is not idempotent")]
    NotIdempotent(CliffordElement),
}

/// A finite chain `0 > 1 > … > k-1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ChainSemilattice {
    size: usize,
}

impl ChainSemilattice {
    pub fn new(size: usize) -> Result<Self, CliffordError> {
        if size == 0 {
            return Err(CliffordError::EmptyChain);
        }
        Ok(Self { size })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn meet(&self, a: Level, b: Level) -> Level {
        a.max(b)
    }

    /// `a ≼ b` in the semilattice order, i.e. `a` lies at or below `b`.
    pub fn below(&self, a: Level, b: Level) -> bool {
        a >= b
    }

    /// Exhaustive semilattice laws for the meet table; always empty for a
    /// chain, kept as an executable statement of the invariant.
    pub fn check_laws(&self) -> ValidationReport {
        let mut report = ValidationReport::new();
        let n = self.size;
        for a in 0..n {
            if self.meet(a, a) != a {
                report.push("semilattice", format!("meet not idempotent at {a}"));
            }
            for b in 0..n {
                if self.meet(a, b) != self.meet(b, a) {
                    report.push("semilattice", format!("meet not commutative at ({a},{b})"));
                }
                if !(self.below(a, b) || self.below(b, a)) {
                    report.push("semilattice", format!("levels {a} and {b} are incomparable"));
                }
                for c in 0..n {
                    if self.meet(self.meet(a, b), c) != self.meet(a, self.meet(b, c)) {
                        report.push("semilattice", format!("meet not associative at ({a},{b},{c})"));
                    }
                }
            }
        }
        report
    }
}

/// An element `elem ∈ G_level`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CliffordElement {
    pub level: Level,
    pub elem: Elem,
}

impl CliffordElement {
    pub const fn new(level: Level, elem: Elem) -> Self {
        Self { level, elem }
    }
}

impl fmt::Display for CliffordElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.level, self.elem)
    }
}

/// A strong semilattice of groups over a chain, with θ stored per level as
/// `θ_α: G_α → G_0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliffordSystem {
    chain: ChainSemilattice,
    groups: Vec<GroupTable>,
    bonds: BTreeMap<(Level, Level), Vec<Elem>>,
    theta: Vec<Vec<Elem>>,
}

impl CliffordSystem {
    /// Assembles a system, checking shapes and that every bond `φ_{α,β}`
    /// with `α < β` is present. Algebraic laws are left to
    /// [`validate_system`]. A supplied `φ_{α,α}` is kept so that validation
    /// can confirm it is the identity.
    pub fn from_parts(
        groups: Vec<GroupTable>,
        bonds: BTreeMap<(Level, Level), Vec<Elem>>,
        theta: Vec<Vec<Elem>>,
    ) -> Result<Self, CliffordError> {
        let chain = ChainSemilattice::new(groups.len())?;
        let k = chain.size();
        if theta.len() != k {
            return Err(CliffordError::CountMismatch {
                chain: k,
                given: theta.len(),
                what: "theta maps",
            });
        }
        for (&(a, b), map) in &bonds {
            if a > b || b >= k {
                return Err(CliffordError::BondOutOfChain(a, b));
            }
            check_map_shape(&groups[a], &groups[b], map).map_err(|source| CliffordError::Map {
                map: format!("φ_{{{a},{b}}}"),
                source,
            })?;
        }
        for a in 0..k {
            for b in a + 1..k {
                if !bonds.contains_key(&(a, b)) {
                    return Err(CliffordError::MissingBond(a, b));
                }
            }
        }
        for (a, map) in theta.iter().enumerate() {
            check_map_shape(&groups[a], &groups[0], map).map_err(|source| CliffordError::Map {
                map: format!("θ_{a}"),
                source,
            })?;
        }
        Ok(Self {
            chain,
            groups,
            bonds,
            theta,
        })
    }

    /// A single group with θ given as an endomorphism of it.
    pub fn single(group: GroupTable, theta: Vec<Elem>) -> Result<Self, CliffordError> {
        Self::from_parts(vec![group], BTreeMap::new(), vec![theta])
    }

    /// The one-element system; its Bruck–Reilly extension is the bicyclic
    /// monoid.
    pub fn trivial() -> Self {
        Self::single(GroupTable::trivial(), vec![0]).expect("trivial system is well formed")
    }

    pub fn chain(&self) -> ChainSemilattice {
        self.chain
    }

    pub fn levels(&self) -> usize {
        self.chain.size()
    }

    pub fn group(&self, level: Level) -> &GroupTable {
        &self.groups[level]
    }

    pub fn groups(&self) -> &[GroupTable] {
        &self.groups
    }

    pub fn bonds(&self) -> &BTreeMap<(Level, Level), Vec<Elem>> {
        &self.bonds
    }

    pub fn theta_maps(&self) -> &[Vec<Elem>] {
        &self.theta
    }

    /// Total number of elements, `Σ |G_α|`.
    pub fn size(&self) -> usize {
        self.groups.iter().map(GroupTable::order).sum()
    }

    pub fn is_trivial(&self) -> bool {
        self.size() == 1
    }

    /// The monoid identity `1_{G_0}`.
    pub fn unit(&self) -> CliffordElement {
        CliffordElement::new(0, self.groups[0].identity())
    }

    pub fn identity_at(&self, level: Level) -> CliffordElement {
        CliffordElement::new(level, self.groups[level].identity())
    }

    pub fn contains(&self, a: CliffordElement) -> bool {
        a.level < self.levels() && self.groups[a.level].contains(a.elem)
    }

    pub fn check(&self, a: CliffordElement) -> Result<(), CliffordError> {
        if self.contains(a) {
            Ok(())
        } else {
            Err(CliffordError::InvalidElement(a))
        }
    }

    /// All elements, level by level from the top.
    pub fn elements(&self) -> impl Iterator<Item = CliffordElement> + '_ {
        self.groups
            .iter()
            .enumerate()
            .flat_map(|(level, g)| (0..g.order()).map(move |e| CliffordElement::new(level, e)))
    }

    /// Applies `φ_{from,to}` to `x ∈ G_from`; `from ≤ to` is required.
    #[inline]
    pub fn bond(&self, from: Level, to: Level, x: Elem) -> Elem {
        if from == to {
            x
        } else {
            self.bonds[&(from, to)][x]
        }
    }

    pub fn label(&self, a: CliffordElement) -> String {
        match self.groups[a.level].labels() {
            Some(_) => self.groups[a.level].label(a.elem),
            None => a.to_string(),
        }
    }

    /// `θ_0^n(x)` for `x ∈ G_0`, following the eventually periodic orbit so
    /// that astronomically large `n` costs at most `|G_0|` steps.
    pub fn theta0_iterate(&self, x: Elem, n: u64) -> Elem {
        let t0 = &self.theta[0];
        let order = self.groups[0].order();
        let mut seen = vec![u64::MAX; order];
        let mut orbit = Vec::with_capacity(order);
        let mut cur = x;
        let mut step = 0u64;
        while step < n {
            if seen[cur] != u64::MAX {
                let start = seen[cur];
                let period = step - start;
                let offset = (n - start) % period;
                return orbit[(start + offset) as usize];
            }
            seen[cur] = step;
            orbit.push(cur);
            cur = t0[cur];
            step += 1;
        }
        cur
    }
}

/// Checks the group axioms of every level, that the bonds are
/// homomorphisms with `φ_{α,α} = id` and `φ_{α,β}φ_{β,γ} = φ_{α,γ}`, and
/// that θ is a homomorphism of the whole semigroup into `G_0`.
pub fn validate_system(sys: &CliffordSystem) -> ValidationReport {
    let mut report = sys.chain.check_laws();
    let k = sys.levels();

    let mut groups_ok = true;
    for (level, g) in sys.groups.iter().enumerate() {
        match validate_group(g) {
            Ok(r) => {
                for v in r.violations() {
                    groups_ok = false;
                    report.push(v.axiom, format!("G_{level}: {}", v.detail));
                }
            }
            Err(e) => {
                groups_ok = false;
                report.push("group", format!("G_{level}: {e}"));
            }
        }
    }
    if !groups_ok {
        return report;
    }

    for (&(a, b), map) in &sys.bonds {
        if a == b {
            if let Some(x) = (0..map.len()).find(|&x| map[x] != x) {
                report.push(
                    "bond identity",
                    format!("φ_{{{a},{a}}} is not the identity map (moves {x})"),
                );
            }
            continue;
        }
        let hom = GroupHom::new(&sys.groups[a], &sys.groups[b], map);
        match validate_hom(&hom) {
            Ok(r) => {
                for v in r.violations() {
                    report.push("bond homomorphism", format!("φ_{{{a},{b}}} {}", v.detail));
                }
            }
            Err(e) => report.push("bond homomorphism", format!("φ_{{{a},{b}}}: {e}")),
        }
    }

    for a in 0..k {
        for b in a + 1..k {
            for c in b + 1..k {
                for x in 0..sys.groups[a].order() {
                    let via = sys.bond(b, c, sys.bond(a, b, x));
                    let direct = sys.bond(a, c, x);
                    if via != direct {
                        report.push(
                            "bond composition",
                            format!("φ_{{{a},{b}}}φ_{{{b},{c}}} ≠ φ_{{{a},{c}}} at {x}: {via} vs {direct}"),
                        );
                    }
                }
            }
        }
    }

    let g0 = &sys.groups[0];
    for x in sys.elements() {
        for y in sys.elements() {
            let lhs = sys.theta[cmul_unchecked(sys, x, y).level][cmul_unchecked(sys, x, y).elem];
            let rhs = g0.mul_unchecked(sys.theta[x.level][x.elem], sys.theta[y.level][y.elem]);
            if lhs != rhs {
                report.push("theta homomorphism", format!("θ not a homomorphism at ({x}, {y})"));
            }
        }
    }
    report
}

#[inline]
pub(crate) fn cmul_unchecked(sys: &CliffordSystem, a: CliffordElement, b: CliffordElement) -> CliffordElement {
    let level = sys.chain.meet(a.level, b.level);
    let x = sys.bond(a.level, level, a.elem);
    let y = sys.bond(b.level, level, b.elem);
    CliffordElement::new(level, sys.groups[level].mul_unchecked(x, y))
}

/// `a * b = (a)φ_{α,αβ} · (b)φ_{β,αβ}` in `G_{αβ}`.
pub fn cmul(sys: &CliffordSystem, a: CliffordElement, b: CliffordElement) -> Result<CliffordElement, CliffordError> {
    sys.check(a)?;
    sys.check(b)?;
    Ok(cmul_unchecked(sys, a, b))
}

#[inline]
pub(crate) fn cinv_unchecked(sys: &CliffordSystem, a: CliffordElement) -> CliffordElement {
    CliffordElement::new(a.level, sys.groups[a.level].inv_unchecked(a.elem))
}

pub fn cinv(sys: &CliffordSystem, a: CliffordElement) -> Result<CliffordElement, CliffordError> {
    sys.check(a)?;
    Ok(cinv_unchecked(sys, a))
}

#[inline]
pub(crate) fn theta_pow_unchecked(sys: &CliffordSystem, a: CliffordElement, n: u64) -> CliffordElement {
    if n == 0 {
        return a;
    }
    let first = sys.theta[a.level][a.elem];
    CliffordElement::new(0, sys.theta0_iterate(first, n - 1))
}

/// `θ^n(a)`; `θ^0` is the identity and every positive power lands in `G_0`.
pub fn theta_pow(sys: &CliffordSystem, a: CliffordElement, n: u64) -> Result<CliffordElement, CliffordError> {
    sys.check(a)?;
    Ok(theta_pow_unchecked(sys, a, n))
}

/// The identities of the groups, top level first.
pub fn idempotents(sys: &CliffordSystem) -> Vec<CliffordElement> {
    (0..sys.levels()).map(|l| sys.identity_at(l)).collect()
}

/// Idempotents found by scanning every element for `x·x = x`.
pub fn idempotents_by_scan(sys: &CliffordSystem) -> Vec<CliffordElement> {
    sys.elements().filter(|&x| cmul_unchecked(sys, x, x) == x).collect()
}

pub fn is_idempotent(sys: &CliffordSystem, e: CliffordElement) -> bool {
    sys.contains(e) && cmul_unchecked(sys, e, e) == e
}

/// `e ≼ f` iff `ef = fe = e`.
pub fn nat_order_idem(sys: &CliffordSystem, e: CliffordElement, f: CliffordElement) -> Result<bool, CliffordError> {
    for x in [e, f] {
        sys.check(x)?;
        if !is_idempotent(sys, x) {
            return Err(CliffordError::NotIdempotent(x));
        }
    }
    Ok(cmul_unchecked(sys, e, f) == e && cmul_unchecked(sys, f, e) == e)
}


#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    /// Product table of T₂ written out from the group tables directly.
    fn t2_product_oracle(a: CliffordElement, b: CliffordElement) -> CliffordElement {
        let level = a.level.max(b.level);
        // φ_{0,1} is the identity on indices, so only the level moves.
        CliffordElement::new(level, (a.elem + b.elem) % 2)
    }

    #[test]
    fn validation_examples() {
        assert!(validate_system(&CliffordSystem::trivial()).is_empty());
        let single = CliffordSystem::single(GroupTable::cyclic(2), vec![0, 1]).unwrap();
        assert!(validate_system(&single).is_empty());
        assert!(validate_system(&t2()).is_empty());
        // θ_1 constant while θ_0 = id breaks θ(g·1_β) = θ(g)·θ(1_β); the
        // annihilating θ (constant on both levels) is fine.
        let report = validate_system(&t2_with(vec![0, 1], vec![0, 0]));
        assert!(report.mentions("θ not a homomorphism at (0:1, 1:0)"), "{report}");
        let mut bonds = BTreeMap::new();
        bonds.insert((0, 1), vec![0, 1]);
        let annihilating = CliffordSystem::from_parts(
            vec![GroupTable::cyclic(2), GroupTable::cyclic(2)],
            bonds,
            vec![vec![0, 0], vec![0, 0]],
        )
        .unwrap();
        assert!(validate_system(&annihilating).is_empty());

        let report = validate_system(&t2_with(vec![1, 0], vec![0, 1]));
        assert!(report.mentions("φ_{0,1} not a homomorphism"), "{report}");
    }

    #[test]
    fn missing_bond_is_an_error() {
        let groups = vec![GroupTable::cyclic(2); 3];
        let mut bonds = BTreeMap::new();
        bonds.insert((0, 1), vec![0, 1]);
        bonds.insert((1, 2), vec![0, 1]);
        let theta = vec![vec![0, 1]; 3];
        assert_eq!(
            CliffordSystem::from_parts(groups, bonds, theta),
            Err(CliffordError::MissingBond(0, 2))
        );
    }

    #[test]
    fn composition_violation_is_reported() {
        let z2 = GroupTable::cyclic(2);
        let mut bonds = BTreeMap::new();
        bonds.insert((0, 1), vec![0, 1]);
        bonds.insert((1, 2), vec![0, 1]);
        bonds.insert((0, 2), vec![0, 0]);
        let sys = CliffordSystem::from_parts(vec![z2; 3], bonds, vec![vec![0, 0]; 3]).unwrap();
        let report = validate_system(&sys);
        assert!(report.mentions("φ_{0,1}φ_{1,2} ≠ φ_{0,2}"), "{report}");
    }

    #[test]
    fn theta_violation_is_reported() {
        // θ_1 sends everything to g, which is not even idempotent.
        let sys = t2_with(vec![0, 1], vec![1, 1]);
        assert!(validate_system(&sys).mentions("θ not a homomorphism"));
    }

    #[test]
    fn products_match_oracle_table() {
        let sys = t2();
        for a in sys.elements() {
            for b in sys.elements() {
                assert_eq!(cmul(&sys, a, b).unwrap(), t2_product_oracle(a, b));
            }
        }
        assert_eq!(cmul(&sys, G, ONE_B).unwrap(), H);
        assert_eq!(cmul(&sys, H, H).unwrap(), ONE_B);
        for x in sys.elements() {
            assert_eq!(cmul(&sys, sys.unit(), x).unwrap(), x);
        }
        assert!(cmul(&sys, CliffordElement::new(2, 0), G).is_err());
    }

    #[test]
    fn inverses() {
        let sys = t2();
        assert_eq!(cinv(&sys, H).unwrap(), H);
        assert_eq!(cinv(&sys, ONE_A).unwrap(), ONE_A);
        let z4 = CliffordSystem::single(GroupTable::cyclic(4), vec![0, 1, 2, 3]).unwrap();
        assert_eq!(
            cinv(&z4, CliffordElement::new(0, 3)).unwrap(),
            CliffordElement::new(0, 1)
        );
        for x in sys.elements() {
            let inv = cinv(&sys, x).unwrap();
            assert_eq!(cmul_unchecked(&sys, cmul_unchecked(&sys, x, inv), x), x);
        }
    }

    #[test]
    fn theta_powers() {
        let sys = t2();
        for x in sys.elements() {
            assert_eq!(theta_pow(&sys, x, 0).unwrap(), x);
        }
        assert_eq!(theta_pow(&sys, H, 1).unwrap(), G);
        assert_eq!(theta_pow(&sys, H, 2).unwrap(), G);
        assert_eq!(theta_pow(&sys, H, u64::MAX).unwrap(), G);
    }

    #[test]
    fn theta0_orbit_matches_naive_iteration() {
        // θ on Z_6 by x ↦ 2x: orbit of 1 is 1,2,4,2,4,...
        let sys = CliffordSystem::single(GroupTable::cyclic(6), (0..6).map(|x| 2 * x % 6).collect()).unwrap();
        assert!(validate_system(&sys).is_empty());
        for x in 0..6 {
            let mut cur = x;
            for n in 0..40u64 {
                assert_eq!(sys.theta0_iterate(x, n), cur, "x={x} n={n}");
                cur = 2 * cur % 6;
            }
        }
        assert_eq!(sys.theta0_iterate(1, 1_000_000_000_001), 2);
    }

    #[test]
    fn idempotent_examples() {
        let sys = t2();
        assert_eq!(idempotents(&sys), vec![ONE_A, ONE_B]);
        assert_eq!(idempotents_by_scan(&sys), idempotents(&sys));
        let single = CliffordSystem::single(GroupTable::cyclic(2), vec![0, 1]).unwrap();
        assert_eq!(idempotents(&single), vec![CliffordElement::new(0, 0)]);

        assert!(nat_order_idem(&sys, ONE_B, ONE_A).unwrap());
        assert!(nat_order_idem(&sys, ONE_A, ONE_A).unwrap());
        assert!(!nat_order_idem(&sys, ONE_A, ONE_B).unwrap());
        assert_eq!(nat_order_idem(&sys, G, ONE_A), Err(CliffordError::NotIdempotent(G)));
    }

    #[test]
    fn idempotents_are_central_and_chain_ordered() {
        let sys = t2();
        let es = idempotents(&sys);
        for (n, &e) in es.iter().enumerate() {
            for (m, &f) in es.iter().enumerate() {
                assert_eq!(nat_order_idem(&sys, e, f).unwrap(), n >= m);
            }
            for x in sys.elements() {
                assert_eq!(cmul_unchecked(&sys, e, x), cmul_unchecked(&sys, x, e));
            }
        }
        for a in sys.elements() {
            for b in sys.elements() {
                for c in sys.elements() {
                    let l = cmul_unchecked(&sys, cmul_unchecked(&sys, a, b), c);
                    let r = cmul_unchecked(&sys, a, cmul_unchecked(&sys, b, c));
                    assert_eq!(l, r);
                }
            }
        }
    }
}
