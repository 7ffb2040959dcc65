//! Finite groups stored as Cayley tables, and homomorphisms between them.
//!
//! Elements are positional indices `0..order`. Labels are cosmetic and never
//! take part in any comparison.

use thiserror::Error;

use crate::report::ValidationReport;

/// Element of a finite group, by position in its Cayley table.
pub type Elem = usize;

/// Largest order accepted by [`validate_group`]; associativity is checked on
/// all `order³` triples.
pub const MAX_GROUP_ORDER: usize = 512;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("group order {0} exceeds the supported maximum of {MAX_GROUP_ORDER}")]
    OrderTooLarge(usize),
    #[error("malformed table: {0}")]
    MalformedTable(String),
    #[error("element {index} out of range for a group of order {order}")]
    IndexOutOfRange { index: Elem, order: usize },
    #[error("element {0} has no inverse")]
    NoInverse(Elem),
    #[error("malformed map: {0}")]
    MalformedMap(String),
}

/// A finite group given by its full multiplication table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupTable {
    order: usize,
    table: Vec<Elem>,
    identity: Elem,
    inverse: Vec<Option<Elem>>,
    labels: Option<Vec<String>>,
}

impl GroupTable {
    /// Builds a table without checking the group axioms. Only shape errors
    /// are reported here; run [`validate_group`] before using the result.
    ///
    /// Inverses are derived from the table: `b` is recorded as the inverse
    /// of `a` when `a·b = b·a = identity`.
    pub fn new(rows: Vec<Vec<Elem>>, identity: Elem, labels: Option<Vec<String>>) -> Result<Self, GroupError> {
        let order = rows.len();
        if order == 0 {
            return Err(GroupError::MalformedTable("table is empty".into()));
        }
        if order > MAX_GROUP_ORDER {
            return Err(GroupError::OrderTooLarge(order));
        }
        if let Some((r, row)) = rows.iter().enumerate().find(|(_, row)| row.len() != order) {
            return Err(GroupError::MalformedTable(format!(
                "row {r} has {} entries, expected {order}",
                row.len()
            )));
        }
        if identity >= order {
            return Err(GroupError::MalformedTable(format!(
                "identity {identity} is not an element of a group of order {order}"
            )));
        }
        if let Some(labels) = &labels {
            if labels.len() != order {
                return Err(GroupError::MalformedTable(format!(
                    "{} labels given for {order} elements",
                    labels.len()
                )));
            }
        }
        let table: Vec<Elem> = rows.into_iter().flatten().collect();
        let at = |a: Elem, b: Elem| table[a * order + b];
        let inverse = (0..order)
            .map(|a| (0..order).find(|&b| at(a, b) == identity && at(b, a) == identity))
            .collect();
        Ok(Self {
            order,
            table,
            identity,
            inverse,
            labels,
        })
    }

    /// Builds a table and rejects it unless [`validate_group`] is clean.
    pub fn validated(rows: Vec<Vec<Elem>>, identity: Elem, labels: Option<Vec<String>>) -> Result<Self, InvalidGroup> {
        let group = Self::new(rows, identity, labels).map_err(InvalidGroup::Shape)?;
        let report = validate_group(&group).map_err(InvalidGroup::Shape)?;
        if report.is_empty() {
            Ok(group)
        } else {
            Err(InvalidGroup::Axioms(report))
        }
    }

    /// The cyclic group of order `n`, elements `0..n` under addition mod `n`.
    pub fn cyclic(n: usize) -> Self {
        let rows = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Self::new(rows, 0, None).expect("cyclic table is well formed")
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> Elem {
        self.identity
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, a: Elem) -> String {
        match &self.labels {
            Some(labels) if a < labels.len() => labels[a].clone(),
            _ => a.to_string(),
        }
    }

    pub fn contains(&self, a: Elem) -> bool {
        a < self.order
    }

    /// Table lookup with no bounds check beyond the slice's own.
    #[inline]
    pub(crate) fn mul_unchecked(&self, a: Elem, b: Elem) -> Elem {
        self.table[a * self.order + b]
    }

    #[inline]
    pub(crate) fn inv_unchecked(&self, a: Elem) -> Elem {
        self.inverse[a].expect("validated group has inverses")
    }

    pub fn rows(&self) -> Vec<Vec<Elem>> {
        self.table.chunks(self.order).map(<[Elem]>::to_vec).collect()
    }

    fn check(&self, a: Elem) -> Result<(), GroupError> {
        if a < self.order {
            Ok(())
        } else {
            Err(GroupError::IndexOutOfRange {
                index: a,
                order: self.order,
            })
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InvalidGroup {
    #[error(transparent)]
    Shape(GroupError),
    #[error("group axioms violated:\n{0}")]
    Axioms(ValidationReport),
}

/// Checks closure, identity, inverses and associativity, listing every
/// failure found.
pub fn validate_group(t: &GroupTable) -> Result<ValidationReport, GroupError> {
    if t.order > MAX_GROUP_ORDER {
        return Err(GroupError::OrderTooLarge(t.order));
    }
    if t.table.len() != t.order * t.order || t.identity >= t.order {
        return Err(GroupError::MalformedTable(
            "table dimensions disagree with the order".into(),
        ));
    }
    let n = t.order;
    let mut report = ValidationReport::new();

    let mut closed = true;
    for a in 0..n {
        for b in 0..n {
            let c = t.mul_unchecked(a, b);
            if c >= n {
                closed = false;
                report.push("closure", format!("closure violated: {a}·{b} = {c} is not an element"));
            }
        }
    }
    // The remaining axioms index the table with products, so they only make
    // sense on a closed table.
    if !closed {
        return Ok(report);
    }

    let e = t.identity;
    for a in 0..n {
        if t.mul_unchecked(e, a) != a || t.mul_unchecked(a, e) != a {
            report.push("identity", format!("identity axiom violated for element {a}"));
        }
    }
    for a in 0..n {
        if t.inverse[a].is_none() {
            report.push("inverse", format!("inverse axiom violated for element {a}"));
        }
    }
    for a in 0..n {
        for b in 0..n {
            let ab = t.mul_unchecked(a, b);
            for c in 0..n {
                let bc = t.mul_unchecked(b, c);
                if t.mul_unchecked(ab, c) != t.mul_unchecked(a, bc) {
                    report.push("associativity", format!("associativity violated at ({a},{b},{c})"));
                }
            }
        }
    }
    Ok(report)
}

pub fn gmul(t: &GroupTable, a: Elem, b: Elem) -> Result<Elem, GroupError> {
    t.check(a)?;
    t.check(b)?;
    Ok(t.mul_unchecked(a, b))
}

pub fn ginv(t: &GroupTable, a: Elem) -> Result<Elem, GroupError> {
    t.check(a)?;
    t.inverse[a].ok_or(GroupError::NoInverse(a))
}

/// A map between two groups, checked by [`validate_hom`].
#[derive(Clone, Copy, Debug)]
pub struct GroupHom<'g> {
    pub domain: &'g GroupTable,
    pub codomain: &'g GroupTable,
    pub map: &'g [Elem],
}

impl<'g> GroupHom<'g> {
    pub fn new(domain: &'g GroupTable, codomain: &'g GroupTable, map: &'g [Elem]) -> Self {
        Self { domain, codomain, map }
    }

    pub fn apply(&self, a: Elem) -> Elem {
        self.map[a]
    }
}

/// Checks `map[a·b] = map[a]·map[b]` on every pair and that the identity is
/// preserved.
pub fn validate_hom(h: &GroupHom<'_>) -> Result<ValidationReport, GroupError> {
    check_map_shape(h.domain, h.codomain, h.map)?;
    let mut report = ValidationReport::new();
    let (dom, cod) = (h.domain, h.codomain);
    for a in 0..dom.order {
        for b in 0..dom.order {
            let lhs = h.map[dom.mul_unchecked(a, b)];
            let rhs = cod.mul_unchecked(h.map[a], h.map[b]);
            if lhs != rhs {
                report.push("homomorphism", format!("not a homomorphism at ({a},{b})"));
            }
        }
    }
    if h.map[dom.identity] != cod.identity {
        report.push(
            "homomorphism",
            format!(
                "identity {} maps to {}, not to the identity {}",
                dom.identity, h.map[dom.identity], cod.identity
            ),
        );
    }
    Ok(report)
}

pub(crate) fn check_map_shape(domain: &GroupTable, codomain: &GroupTable, map: &[Elem]) -> Result<(), GroupError> {
    if map.len() != domain.order {
        return Err(GroupError::MalformedMap(format!(
            "map has {} entries, domain has order {}",
            map.len(),
            domain.order
        )));
    }
    if let Some((a, &b)) = map.iter().enumerate().find(|(_, &b)| b >= codomain.order) {
        return Err(GroupError::MalformedMap(format!(
            "{a} maps to {b}, outside a codomain of order {}",
            codomain.order
        )));
    }
    Ok(())
}
