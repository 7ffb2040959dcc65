//! Bruck–Reilly extensions `BR(T,θ)` and `BR⁰(T,θ)` of finite chains of
//! groups, built from explicit Cayley tables and checked by exhaustive
//! finite computation.
//!
//! The layers, bottom up:
//!
//! - [`group`]: finite groups as Cayley tables, homomorphisms.
//! - [`clifford`]: chains of groups with bonding maps and θ.
//! - [`bicyclic`]: the bicyclic monoid and its zero extension.
//! - [`bruck_reilly`]: products, inverses, η, natural order, H-classes and
//!   simplicity witnesses in `BR(T,θ)`.
//! - [`topology`]: zero-neighborhood descriptors, box equations and
//!   continuity certificates.
//! - [`config`], [`syntax`], [`verify`], [`cli`]: file formats, element
//!   grammar, property suites and the command line.

pub mod bicyclic;
pub mod bruck_reilly;
pub mod cli;
pub mod clifford;
pub mod config;
pub mod group;
pub mod report;
pub mod syntax;
pub mod topology;
pub mod verify;

pub use bicyclic::{binv, bmul, oracle_mul, BicyclicElem, C0Elem};
pub use bruck_reilly::{brinv, brmul, eta, eta_congruent, BrElement, BrError, BrSystem, IndexBox};
pub use clifford::{CliffordElement, CliffordError, CliffordSystem};
pub use config::{load_system, ConfigError, SystemConfig};
pub use group::{Elem, GroupError, GroupTable};
pub use report::ValidationReport;
