//! The bicyclic monoid `C(p,q)` and its zero extension `C⁰`.
//!
//! `BicyclicElem { k, l }` stands for `q^k p^l`. Indices are `u64`; a product
//! whose index would leave `u64` panics instead of wrapping.

use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct BicyclicElem {
    pub k: u64,
    pub l: u64,
}

impl BicyclicElem {
    pub const IDENTITY: Self = Self { k: 0, l: 0 };

    pub const fn new(k: u64, l: u64) -> Self {
        Self { k, l }
    }

    pub fn is_idempotent(self) -> bool {
        self.k == self.l
    }

    /// `q^k p^l · q^m p^n = q^{k+m-min(l,m)} p^{l+n-min(l,m)}`, or `None` on
    /// index overflow.
    pub fn checked_mul(self, other: Self) -> Option<Self> {
        let m = self.l.min(other.k);
        Some(Self {
            k: self.k.checked_add(other.k - m)?,
            l: other.l.checked_add(self.l - m)?,
        })
    }

    pub fn inverse(self) -> Self {
        Self { k: self.l, l: self.k }
    }
}

impl fmt::Display for BicyclicElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.k, self.l)
    }
}

/// An element of `C⁰ = C(p,q) ⊔ {0}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum C0Elem {
    Zero,
    Elem(BicyclicElem),
}

impl fmt::Display for C0Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            C0Elem::Zero => f.write_str("0"),
            C0Elem::Elem(x) => x.fmt(f),
        }
    }
}

impl From<BicyclicElem> for C0Elem {
    fn from(x: BicyclicElem) -> Self {
        C0Elem::Elem(x)
    }
}

/// Product in `C(p,q)`.
///
/// # Panics
///
/// If a resulting index exceeds `u64::MAX`.
pub fn bmul(x: BicyclicElem, y: BicyclicElem) -> BicyclicElem {
    x.checked_mul(y)
        .unwrap_or_else(|| panic!("bicyclic index overflow in {x}·{y}"))
}

/// Product in `C⁰`; zero absorbs.
pub fn bmul0(x: C0Elem, y: C0Elem) -> C0Elem {
    match (x, y) {
        (C0Elem::Elem(a), C0Elem::Elem(b)) => C0Elem::Elem(bmul(a, b)),
        _ => C0Elem::Zero,
    }
}

/// `(k,l) ↦ (l,k)`.
pub fn binv(x: BicyclicElem) -> BicyclicElem {
    x.inverse()
}

/// Inverse in `C⁰`; zero is its own inverse.
pub fn binv0(x: C0Elem) -> C0Elem {
    match x {
        C0Elem::Zero => C0Elem::Zero,
        C0Elem::Elem(a) => C0Elem::Elem(a.inverse()),
    }
}

/// `e ≼ f` for idempotents of `C(p,q)`: `(k,k) ≼ (m,m)` iff `k ≥ m`.
pub fn nat_order_idem(e: BicyclicElem, f: BicyclicElem) -> bool {
    bmul(e, f) == e && bmul(f, e) == e
}

/// The partial bijection of ω induced by `q^k p^l`: defined on `x ≥ l`,
/// sending `x` to `x - l + k`.
fn partial_shift(e: BicyclicElem, x: u64) -> Option<u64> {
    (x >= e.l).then(|| x - e.l + e.k)
}

/// Product computed by composing the partial shifts of ω (apply `y`, then
/// `x`) and reading the pair back from the composite: `l` is the least point
/// of its domain and `k` that point's image. Independent of [`bmul`].
pub fn oracle_mul(x: BicyclicElem, y: BicyclicElem) -> BicyclicElem {
    let composite = |n: u64| partial_shift(y, n).and_then(|m| partial_shift(x, m));
    // The composite's domain starts at most at y.l + x.l.
    let bound = y.l + x.l;
    let start = (0..=bound)
        .find(|&n| composite(n).is_some())
        .expect("composite of partial shifts has a nonempty domain");
    let image = composite(start).expect("start lies in the domain");
    let result = BicyclicElem::new(image, start);
    // The composite must be the shift with that offset on its whole domain.
    debug_assert!((start..start + 4).all(|n| composite(n) == partial_shift(result, n)));
    result
}
