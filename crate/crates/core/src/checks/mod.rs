//! Named, machine-checkable encodings of the inequality chains and
//! identities relating the entropy and divergence families, plus a
//! deterministic randomized campaign runner.
//!
//! Each check evaluates to a [`BoundChain`]: an ordered list of labeled
//! terms with a claimed direction. A chain passes at tolerance `tol` when
//! every consecutive pair respects the direction with slack no worse than
//! `-tol * scale`, `scale = max(1, max |term|)`. Identities are encoded as
//! palindromic chains `[lhs, rhs, lhs]`, whose minimum slack is exactly
//! `-|lhs - rhs|`.

mod campaign;
mod catalog;

pub use campaign::{
    run_campaign, CampaignConfig, CampaignReport, CheckReport, RangeF,
};
pub use catalog::{
    catalog, expand_check_selection, list_checks, run_check, CheckDef, CheckInfo, CheckOutcome,
    IndexDomain, ParamSpec, ScalarInfo, XDomain,
};

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use thiserror::Error;

use crate::deformed::MathError;
use crate::simplex::SimplexError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CheckError {
    #[error("unknown check `{0}`")]
    UnknownCheck(String),
    #[error("parameter out of domain for `{check}`: {reason}")]
    ParameterOutOfDomain { check: String, reason: String },
    #[error("empty check set")]
    EmptyCheckSet,
    #[error("bad campaign config: {0}")]
    BadConfig(String),
    #[error(transparent)]
    Math(#[from] MathError),
    #[error(transparent)]
    Simplex(#[from] SimplexError),
}

/// Claimed ordering of consecutive chain terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Direction {
    #[serde(rename = "non-decreasing")]
    NonDecreasing,
    #[serde(rename = "non-increasing")]
    NonIncreasing,
}

/// An ordered sequence of labeled terms with a claimed direction.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BoundChain {
    pub labels: Vec<String>,
    pub values: Vec<f64>,
    pub direction: Direction,
}

/// Result of verifying a chain at a tolerance.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ChainVerdict {
    pub min_slack: f64,
    pub scale: f64,
    pub pass: bool,
}

impl BoundChain {
    pub fn new(direction: Direction, terms: Vec<(String, f64)>) -> Self {
        let (labels, values) = terms.into_iter().unzip();
        Self { labels, values, direction }
    }

    /// Scale for relative slack: max(1, max finite |term|).
    pub fn scale(&self) -> f64 {
        self.values
            .iter()
            .copied()
            .filter(|v| v.is_finite())
            .map(f64::abs)
            .fold(1.0, f64::max)
    }

    /// Minimum signed slack over consecutive pairs. Two same-signed
    /// infinities tie at slack 0 (the ordering of two overflowed terms of a
    /// proven chain cannot be resolved in f64); any NaN term yields -inf.
    pub fn min_slack(&self) -> f64 {
        let mut min = f64::INFINITY;
        for w in self.values.windows(2) {
            let (a, b) = (w[0], w[1]);
            let s = if a.is_nan() || b.is_nan() {
                f64::NEG_INFINITY
            } else if a.is_infinite() && b.is_infinite() && a == b {
                0.0
            } else {
                match self.direction {
                    Direction::NonDecreasing => b - a,
                    Direction::NonIncreasing => a - b,
                }
            };
            min = min.min(s);
        }
        min
    }

    pub fn verify(&self, tol: f64) -> ChainVerdict {
        let min_slack = self.min_slack();
        let scale = self.scale();
        ChainVerdict { min_slack, scale, pass: min_slack >= -tol * scale }
    }
}

/// One concrete evaluation of a check: the check id, the distributions it
/// consumes, and its scalar parameters. Serializes losslessly, so a recorded
/// worst case reproduces the exact evaluation through [`run_check`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckInstance {
    pub check_id: String,
    #[serde(default)]
    pub distributions: Vec<Vec<f64>>,
    #[serde(default)]
    pub scalars: BTreeMap<String, f64>,
}

impl CheckInstance {
    pub fn new(check_id: impl Into<String>) -> Self {
        Self {
            check_id: check_id.into(),
            distributions: Vec::new(),
            scalars: BTreeMap::new(),
        }
    }

    pub fn with_distribution(mut self, weights: &[f64]) -> Self {
        self.distributions.push(weights.to_vec());
        self
    }

    pub fn with_scalar(mut self, name: &str, value: f64) -> Self {
        self.scalars.insert(name.to_string(), value);
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain(dir: Direction, values: &[f64]) -> BoundChain {
        BoundChain {
            labels: values.iter().map(|v| format!("t{v}")).collect(),
            values: values.to_vec(),
            direction: dir,
        }
    }

    #[test]
    fn verify_ordering_and_slack() {
        let c = chain(Direction::NonDecreasing, &[1.0, 2.0, 2.5]);
        let v = c.verify(1e-9);
        assert!(v.pass);
        assert!((v.min_slack - 0.5).abs() < 1e-15);
        assert!((v.scale - 2.5).abs() < 1e-15);

        let c = chain(Direction::NonIncreasing, &[1.0, 2.0]);
        assert!(!c.verify(1e-9).pass);
    }

    #[test]
    fn verify_tolerance_is_relative_to_scale() {
        // slack -1e-8 against scale 100: passes at tol 1e-9 since
        // -1e-8 >= -1e-9 * 100
        let c = chain(Direction::NonDecreasing, &[100.0, 100.0 - 1e-8]);
        assert!(c.verify(1e-9).pass);
        let c = chain(Direction::NonDecreasing, &[1.0, 1.0 - 1e-8]);
        assert!(!c.verify(1e-9).pass);
    }

    #[test]
    fn verify_handles_infinities() {
        let c = chain(Direction::NonDecreasing, &[1.0, f64::INFINITY]);
        assert!(c.verify(1e-9).pass);
        let c = chain(Direction::NonDecreasing, &[f64::INFINITY, f64::INFINITY]);
        let v = c.verify(1e-9);
        assert!(v.pass);
        assert_eq!(v.min_slack, 0.0);
        let c = chain(Direction::NonDecreasing, &[f64::INFINITY, 0.0]);
        assert!(!c.verify(1e-9).pass);
        let c = chain(Direction::NonDecreasing, &[0.0, f64::NAN]);
        assert!(!c.verify(1e-9).pass);
    }
}
