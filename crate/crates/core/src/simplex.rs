//! Validated probability distributions on the open simplex, seeded sampling
//! for verification campaigns, and the derived distributions used by the
//! occupancy entropies and mixture inequalities.
//!
//! Validation is strict and nothing is ever silently renormalized: results of
//! a verification run must not depend on hidden mutation of user data.

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Per-weight contribution to the normalization tolerance: a distribution of
/// length n must satisfy |Σw - 1| <= 1e-12·n.
pub const SUM_TOL_PER_WEIGHT: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SimplexError {
    #[error("weight at index {index} must be strictly positive, got {value}")]
    NonPositiveWeight { index: usize, value: f64 },
    #[error("weights sum to {0}, not 1")]
    NotNormalized(f64),
    #[error("a distribution needs at least 2 outcomes, got {0}")]
    TooShort(usize),
    #[error("floor must lie in (0, 1/n): got {floor} with n = {n}")]
    BadFloor { floor: f64, n: usize },
    #[error("mixture parameter must lie in (0, 1], got {0}")]
    BadParameter(f64),
    #[error("weight {value} at index {index} leaves no complementary mass")]
    DegenerateWeight { index: usize, value: f64 },
    #[error("distributions differ in length: {0} vs {1}")]
    LengthMismatch(usize, usize),
}

/// A point on the open probability simplex: every weight strictly positive,
/// the sum within tolerance of 1, at least two outcomes. Immutable after
/// construction.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "WeightsRepr", into = "WeightsRepr")]
pub struct ProbabilityDistribution {
    weights: Vec<f64>,
}

/// JSON wire form: `{"weights": [w_1, ..., w_n]}`.
#[derive(Serialize, Deserialize)]
struct WeightsRepr {
    weights: Vec<f64>,
}

impl TryFrom<WeightsRepr> for ProbabilityDistribution {
    type Error = SimplexError;

    fn try_from(repr: WeightsRepr) -> Result<Self, SimplexError> {
        Self::new(repr.weights)
    }
}

impl From<ProbabilityDistribution> for WeightsRepr {
    fn from(p: ProbabilityDistribution) -> Self {
        Self { weights: p.weights }
    }
}

impl ProbabilityDistribution {
    /// Validate a raw weight vector. Never renormalizes.
    pub fn new(weights: Vec<f64>) -> Result<Self, SimplexError> {
        if weights.len() < 2 {
            return Err(SimplexError::TooShort(weights.len()));
        }
        for (index, &value) in weights.iter().enumerate() {
            let ok = value.is_finite() && value > 0.0;
            if !ok {
                return Err(SimplexError::NonPositiveWeight { index, value });
            }
        }
        let sum: f64 = weights.iter().sum();
        if (sum - 1.0).abs() > SUM_TOL_PER_WEIGHT * weights.len() as f64 {
            return Err(SimplexError::NotNormalized(sum));
        }
        Ok(Self { weights })
    }

    /// Construct from weights already known to satisfy the invariants
    /// (outputs of the arithmetic below).
    pub(crate) fn from_trusted(weights: Vec<f64>) -> Self {
        debug_assert!(Self::new(weights.clone()).is_ok());
        Self { weights }
    }

    pub fn uniform(n: usize) -> Result<Self, SimplexError> {
        if n < 2 {
            return Err(SimplexError::TooShort(n));
        }
        Ok(Self::from_trusted(vec![1.0 / n as f64; n]))
    }

    /// Uniform draw from the simplex (normalized standard-exponential
    /// variates, i.e. a flat Dirichlet), mixed with the uniform distribution
    /// so every weight is at least `floor`. Deterministic in (n, seed, floor).
    pub fn sample(n: usize, seed: u64, floor: f64) -> Result<Self, SimplexError> {
        if n < 2 {
            return Err(SimplexError::TooShort(n));
        }
        let floor_ok = floor > 0.0 && floor < 1.0 / n as f64;
        if !floor_ok {
            return Err(SimplexError::BadFloor { floor, n });
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut draws = Vec::with_capacity(n);
        let mut sum = 0.0;
        for _ in 0..n {
            let u = unit_f64(rng.next_u64());
            let e = -f64::ln_1p(-u);
            draws.push(e);
            sum += e;
        }
        if sum == 0.0 {
            return Self::uniform(n);
        }
        let lambda = floor * n as f64;
        let weights = draws
            .into_iter()
            .map(|e| (1.0 - lambda) * (e / sum) + floor)
            .collect();
        Ok(Self::from_trusted(weights))
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// The complementary-occupancy distribution p'_j = (1 - p_j)/(n - 1).
    pub fn fd_complement(&self) -> Result<Self, SimplexError> {
        let n = self.len() as f64;
        let mut out = Vec::with_capacity(self.len());
        for (index, &value) in self.weights.iter().enumerate() {
            if value >= 1.0 {
                return Err(SimplexError::DegenerateWeight { index, value });
            }
            out.push((1.0 - value) / (n - 1.0));
        }
        Ok(Self::from_trusted(out))
    }

    /// The augmented-occupancy distribution p''_j = (1 + p_j)/(n + 1).
    pub fn be_complement(&self) -> Self {
        let n = self.len() as f64;
        let out = self.weights.iter().map(|&w| (1.0 + w) / (n + 1.0)).collect();
        Self::from_trusted(out)
    }
}

/// Map a u64 to the unit interval [0, 1) with 53 random bits.
fn unit_f64(bits: u64) -> f64 {
    (bits >> 11) as f64 * (1.0 / 9007199254740992.0)
}

/// Validate a raw weight slice into a distribution.
pub fn validate(raw: &[f64]) -> Result<ProbabilityDistribution, SimplexError> {
    ProbabilityDistribution::new(raw.to_vec())
}

/// Two equal-length distributions, the (p, r) arguments of every divergence.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DivergencePair {
    p: ProbabilityDistribution,
    r: ProbabilityDistribution,
}

impl DivergencePair {
    pub fn new(
        p: ProbabilityDistribution,
        r: ProbabilityDistribution,
    ) -> Result<Self, SimplexError> {
        if p.len() != r.len() {
            return Err(SimplexError::LengthMismatch(p.len(), r.len()));
        }
        Ok(Self { p, r })
    }

    pub fn p(&self) -> &ProbabilityDistribution {
        &self.p
    }

    pub fn r(&self) -> &ProbabilityDistribution {
        &self.r
    }

    pub fn len(&self) -> usize {
        self.p.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// The pair with the roles of p and r exchanged.
    pub fn swapped(&self) -> Self {
        Self { p: self.r.clone(), r: self.p.clone() }
    }

    /// Componentwise (1-v)p + vr for v in (0, 1].
    pub fn mixture(&self, v: f64) -> Result<ProbabilityDistribution, SimplexError> {
        let v_ok = v > 0.0 && v <= 1.0;
        if !v_ok {
            return Err(SimplexError::BadParameter(v));
        }
        let out = self
            .p
            .weights()
            .iter()
            .zip(self.r.weights())
            .map(|(&a, &b)| (1.0 - v) * a + v * b)
            .collect();
        Ok(ProbabilityDistribution::from_trusted(out))
    }
}
