//! System description files (TOML):
//!
//! ```toml
//! algebra = "heisenberg"            # bundled name; or algebra_file = "alg.txt"
//! u = ["sqrt(2)", "sqrt(3)", "0"]   # translation, second-kind coordinates
//! derivation = ["1 2 1", "3 2 1/2"] # "row col p/q", 1-based: B(X_col) has X_row coefficient p/q
//! start = ["0", "0", "0"]           # optional start point, second-kind coordinates
//! ```
//!
//! Numbers are rationals (`p/q`, integers, finite decimals) or the symbols
//! `sqrt(k)`, `golden`, `pi` (optionally negated), converted with one
//! rounding each.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::lie::{library, Derivation, LieAlgebra};
use crate::scalar::{int, parse_rational, Number};
use crate::{Error, Result};

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemDescription {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub algebra: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub algebra_file: Option<PathBuf>,
    #[serde(default)]
    pub u: Vec<String>,
    #[serde(default)]
    pub derivation: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub start: Option<Vec<String>>,
}

impl SystemDescription {
    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let mut d = Self::parse(&std::fs::read_to_string(path)?)?;
        if let (Some(f), Some(dir)) = (&d.algebra_file, path.parent()) {
            if f.is_relative() {
                d.algebra_file = Some(dir.join(f));
            }
        }
        Ok(d)
    }

    pub fn algebra(&self) -> Result<LieAlgebra> {
        match (&self.algebra, &self.algebra_file) {
            (Some(name), None) => library::by_name(name)
                .ok_or_else(|| Error::Parse(format!("unknown algebra {name:?}; known: {:?}", library::NAMES))),
            (None, Some(path)) => LieAlgebra::parse(&std::fs::read_to_string(path)?),
            _ => Err(Error::Parse("exactly one of `algebra` and `algebra_file` is required".into())),
        }
    }

    /// Translation element `u` in second-kind coordinates (identity when empty).
    pub fn translation(&self, dim: usize) -> Result<Vec<Number>> {
        numbers(&self.u, dim, "u")
    }

    pub fn start_point(&self, dim: usize) -> Result<Vec<Number>> {
        match &self.start {
            Some(s) => numbers(s, dim, "start"),
            None => Ok(vec![Number::Exact(int(0)); dim]),
        }
    }

    pub fn derivation_matrix(&self, dim: usize) -> Result<Derivation> {
        let mut entries = Vec::new();
        for raw in &self.derivation {
            let toks: Vec<&str> = raw.split_whitespace().collect();
            let bad = || Error::Parse(format!("derivation entry {raw:?} is not `row col p/q`"));
            let [r, c, v] = toks.as_slice() else {
                return Err(bad());
            };
            let idx = |s: &str| s.parse::<usize>().ok().and_then(|i| i.checked_sub(1)).ok_or_else(bad);
            entries.push((idx(r)?, idx(c)?, parse_rational(v)?));
        }
        Derivation::sparse(dim, &entries)
    }
}

fn numbers(tokens: &[String], dim: usize, what: &str) -> Result<Vec<Number>> {
    if tokens.is_empty() {
        return Ok(vec![Number::Exact(int(0)); dim]);
    }
    if tokens.len() != dim {
        return Err(Error::Parse(format!("`{what}` has {} entries, algebra has dimension {dim}", tokens.len())));
    }
    tokens.iter().map(|t| Number::parse(t)).collect()
}
