//! The closed catalog of quasilinear-mean generators ψ and the weighted
//! quasilinear (Kolmogorov–Nagumo) mean M_ψ(x) = ψ⁻¹(Σ p_j ψ(x_j)).
//!
//! The catalog is closed on purpose: the four families below are the only
//! generators the entropy/divergence constructions instantiate, and each has
//! an analytic inverse, so the mean never needs a root solve.

use crate::deformed::{
    biparam_exp, biparam_log, q_exp, q_log, MathError, QIndex,
};
use crate::simplex::ProbabilityDistribution;

/// A quasilinear-mean generator with analytic evaluation and inverse.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PsiKernel {
    /// ψ(x) = log x
    Log,
    /// ψ(x) = x^e, e ≠ 0
    Power { exponent: f64 },
    /// ψ(x) = ln_q x
    QLog(QIndex),
    /// ψ(x) = ln_{r,q} x
    BiLog { r: QIndex, q: QIndex },
}

impl PsiKernel {
    /// Power kernel constructor; rejects the non-invertible exponent 0.
    pub fn power(exponent: f64) -> Result<Self, MathError> {
        if exponent == 0.0 || !exponent.is_finite() {
            return Err(MathError::ZeroExponent);
        }
        Ok(Self::Power { exponent })
    }

    pub fn eval(&self, x: f64) -> Result<f64, MathError> {
        if x.is_nan() || x <= 0.0 {
            return Err(MathError::NonPositiveArgument(x));
        }
        match *self {
            Self::Log => Ok(x.ln()),
            Self::Power { exponent } => Ok(f64::exp(exponent * x.ln())),
            Self::QLog(q) => q_log(x, q),
            Self::BiLog { r, q } => biparam_log(x, r, q),
        }
    }

    /// Analytic inverse; values outside the kernel's range are a
    /// [`MathError::DomainError`].
    pub fn inverse(&self, y: f64) -> Result<f64, MathError> {
        match *self {
            Self::Log => Ok(y.exp()),
            Self::Power { exponent } => {
                if y.is_nan() || y <= 0.0 {
                    return Err(MathError::DomainError(y));
                }
                Ok(f64::exp(y.ln() / exponent))
            }
            Self::QLog(q) => q_exp(y, q).map_err(|_| MathError::DomainError(y)),
            Self::BiLog { r, q } => biparam_exp(y, r, q).map_err(|_| MathError::DomainError(y)),
        }
    }

    /// Strictly increasing on (0, ∞)? Power kernels with negative exponent
    /// are the only decreasing members of the catalog.
    pub fn is_increasing(&self) -> bool {
        match *self {
            Self::Power { exponent } => exponent > 0.0,
            _ => true,
        }
    }

    /// Concave increasing or convex decreasing — the shape condition under
    /// which the quasilinear divergence is nonnegative. Log and ln_q always
    /// qualify; x^e qualifies for e < 0 (convex decreasing) and 0 < e ≤ 1
    /// (concave increasing); ln_{r,q} is globally concave only for q ≥ 1.
    pub fn is_bending(&self) -> bool {
        match *self {
            Self::Log | Self::QLog(_) => true,
            Self::Power { exponent } => exponent <= 1.0,
            Self::BiLog { q, .. } => q.value() >= 1.0,
        }
    }

    pub fn label(&self) -> String {
        match *self {
            Self::Log => "log".into(),
            Self::Power { exponent } => format!("power({exponent})"),
            Self::QLog(q) => format!("qlog({})", q.value()),
            Self::BiLog { r, q } => format!("bilog({},{})", r.value(), q.value()),
        }
    }
}

/// Compact kernel spec: `log`, `power:<e>`, `qlog:<q>`, `bilog:<r>:<q>`.
impl std::str::FromStr for PsiKernel {
    type Err = String;

    fn from_str(spec: &str) -> Result<Self, String> {
        let mut parts = spec.split(':');
        let head = parts.next().unwrap_or_default();
        let args: Vec<&str> = parts.collect();
        let num = |s: &str| {
            s.parse::<f64>()
                .map_err(|_| format!("bad number `{s}` in kernel spec `{spec}`"))
        };
        match (head, args.as_slice()) {
            ("log", []) => Ok(Self::Log),
            ("power", [e]) => Self::power(num(e)?).map_err(|e| e.to_string()),
            ("qlog", [q]) => Ok(Self::QLog(QIndex::new(num(q)?).map_err(|e| e.to_string())?)),
            ("bilog", [r, q]) => Ok(Self::BiLog {
                r: QIndex::new(num(r)?).map_err(|e| e.to_string())?,
                q: QIndex::new(num(q)?).map_err(|e| e.to_string())?,
            }),
            _ => Err(format!(
                "bad kernel spec `{spec}`: expected log, power:<e>, qlog:<q>, or bilog:<r>:<q>"
            )),
        }
    }
}

/// The weighted quasilinear mean ψ⁻¹(Σ p_j ψ(x_j)).
///
/// `Log` yields the weighted geometric mean, `Power { exponent: 1 }` the
/// weighted arithmetic mean.
pub fn quasilinear_mean(
    kernel: &PsiKernel,
    values: &[f64],
    weights: &ProbabilityDistribution,
) -> Result<f64, MathError> {
    if values.len() != weights.len() {
        return Err(MathError::LengthMismatch(values.len(), weights.len()));
    }
    let mut acc = 0.0;
    for (&x, &w) in values.iter().zip(weights.weights()) {
        acc += w * kernel.eval(x)?;
    }
    kernel.inverse(acc)
}
