//! JSON system configuration files.
//!
//! ```json
//! {
//!   "format_version": "1",
//!   "name": "c2c2",
//!   "with_zero": true,
//!   "chain": 2,
//!   "groups": [{"order": 2, "table": [[0,1],[1,0]], "identity": 0, "labels": ["e","g"]}, ...],
//!   "bonds": {"0->1": [0, 1]},
//!   "theta": [[0, 1], [0, 1]]
//! }
//! ```
//!
//! Group inverses are derived from the tables and never read from the file.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bruck_reilly::BrSystem;
use crate::clifford::{validate_system, CliffordSystem, Level};
use crate::group::{Elem, GroupTable};
use crate::report::ValidationReport;

pub const FORMAT_VERSION: &str = "1";

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("system failed validation:\n{0}")]
    ValidationFailed(ValidationReport),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupConfig {
    pub order: usize,
    pub table: Vec<Vec<Elem>>,
    pub identity: Elem,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemConfig {
    pub format_version: String,
    #[serde(default)]
    pub name: String,
    #[serde(default)]
    pub with_zero: bool,
    pub chain: usize,
    pub groups: Vec<GroupConfig>,
    #[serde(default)]
    pub bonds: BTreeMap<String, Vec<Elem>>,
    pub theta: Vec<Vec<Elem>>,
}

fn parse_bond_key(key: &str) -> Result<(Level, Level), ConfigError> {
    let bad = || ConfigError::Parse(format!("bond key {key:?} is not of the form \"a->b\""));
    let (a, b) = key.split_once("->").ok_or_else(bad)?;
    let a = a.trim().parse().map_err(|_| bad())?;
    let b = b.trim().parse().map_err(|_| bad())?;
    Ok((a, b))
}

fn failed(detail: impl Into<String>) -> ConfigError {
    let mut report = ValidationReport::new();
    report.push("structure", detail);
    ConfigError::ValidationFailed(report)
}

impl SystemConfig {
    pub fn from_json(text: &str) -> Result<Self, ConfigError> {
        serde_json::from_str(text).map_err(|e| ConfigError::Parse(e.to_string()))
    }

    /// Builds the system and runs every structural and algebraic check.
    pub fn build(&self) -> Result<BrSystem, ConfigError> {
        if self.format_version != FORMAT_VERSION {
            return Err(ConfigError::Parse(format!(
                "unsupported format_version {:?}, expected {FORMAT_VERSION:?}",
                self.format_version
            )));
        }
        if self.chain != self.groups.len() {
            return Err(failed(format!(
                "chain has {} levels but {} groups were given",
                self.chain,
                self.groups.len()
            )));
        }
        let mut groups = Vec::with_capacity(self.groups.len());
        for (level, g) in self.groups.iter().enumerate() {
            if g.order != g.table.len() {
                return Err(failed(format!(
                    "G_{level}: order {} but the table has {} rows",
                    g.order,
                    g.table.len()
                )));
            }
            let table = GroupTable::new(g.table.clone(), g.identity, g.labels.clone())
                .map_err(|e| failed(format!("G_{level}: {e}")))?;
            groups.push(table);
        }
        let mut bonds = BTreeMap::new();
        for (key, map) in &self.bonds {
            bonds.insert(parse_bond_key(key)?, map.clone());
        }
        let sys = CliffordSystem::from_parts(groups, bonds, self.theta.clone()).map_err(|e| failed(e.to_string()))?;
        let report = validate_system(&sys);
        if !report.is_empty() {
            return Err(ConfigError::ValidationFailed(report));
        }
        Ok(BrSystem::new(sys, self.with_zero))
    }

    /// The configuration describing an existing system.
    pub fn describe(name: &str, b: &BrSystem) -> Self {
        let sys = b.system();
        Self {
            format_version: FORMAT_VERSION.into(),
            name: name.into(),
            with_zero: b.with_zero(),
            chain: sys.levels(),
            groups: sys
                .groups()
                .iter()
                .map(|g| GroupConfig {
                    order: g.order(),
                    table: g.rows(),
                    identity: g.identity(),
                    labels: g.labels().map(<[String]>::to_vec),
                })
                .collect(),
            bonds: sys
                .bonds()
                .iter()
                .map(|(&(a, b), map)| (format!("{a}->{b}"), map.clone()))
                .collect(),
            theta: sys.theta_maps().to_vec(),
        }
    }
}

/// Reads, parses and validates a system file.
pub fn load_system(path: impl AsRef<Path>) -> Result<BrSystem, ConfigError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
        path: path.display().to_string(),
        source,
    })?;
    SystemConfig::from_json(&text)?.build()
}
