//! The entropy family: Shannon, Tsallis, Rényi, quasi-entropy, quasilinear
//! entropies over a ψ kernel, the two biparametric extensions, the Arimoto
//! entropy, and the Fermi–Dirac / Bose–Einstein occupancy entropies.
//!
//! Every deformed kernel routes through [`q_log`]/[`biparam_log`] so the
//! q → 1 limit policy lives in exactly one place.

use crate::deformed::{q_log_of_exp, MathError, QIndex};
use crate::psi::{quasilinear_mean, PsiKernel};
use crate::simplex::ProbabilityDistribution;

/// Which outer deformation wraps the quasilinear mean.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum QuasilinearMode {
    /// log M_ψ(1/p)
    Plain,
    /// ln_q M_ψ(1/p)
    Tsallis(QIndex),
    /// ln_{r,q} M_ψ(1/p)
    Biparam { r: QIndex, q: QIndex },
}

/// Compact mode spec: `plain`, `tsallis:<q>`, `biparam:<r>:<q>`.
impl std::str::FromStr for QuasilinearMode {
    type Err = String;

    fn from_str(spec: &str) -> Result<Self, String> {
        let mut parts = spec.split(':');
        let head = parts.next().unwrap_or_default();
        let args: Vec<&str> = parts.collect();
        let num = |s: &str| {
            s.parse::<f64>()
                .map_err(|_| format!("bad number `{s}` in mode spec `{spec}`"))
        };
        match (head, args.as_slice()) {
            ("plain", []) => Ok(Self::Plain),
            ("tsallis", [q]) => Ok(Self::Tsallis(
                QIndex::new(num(q)?).map_err(|e| e.to_string())?,
            )),
            ("biparam", [r, q]) => Ok(Self::Biparam {
                r: QIndex::new(num(r)?).map_err(|e| e.to_string())?,
                q: QIndex::new(num(q)?).map_err(|e| e.to_string())?,
            }),
            _ => Err(format!(
                "bad mode spec `{spec}`: expected plain, tsallis:<q>, or biparam:<r>:<q>"
            )),
        }
    }
}

/// Shannon entropy −Σ p_j log p_j, in nats.
pub fn shannon(p: &ProbabilityDistribution) -> f64 {
    -p.weights().iter().map(|&w| w * w.ln()).sum::<f64>()
}

/// Tsallis entropy Σ p_j ln_q(1/p_j); equals [`shannon`] in the limit band.
pub fn tsallis(p: &ProbabilityDistribution, q: QIndex) -> f64 {
    p.weights()
        .iter()
        .map(|&w| w * q_log_of_exp(-w.ln(), q))
        .sum()
}

/// Rényi entropy (1/(1-q)) log Σ p_j^q; the caller must use [`shannon`]
/// inside the limit band.
pub fn renyi(p: &ProbabilityDistribution, q: QIndex) -> Result<f64, MathError> {
    if q.is_limit() {
        return Err(MathError::LimitIndex(q.value()));
    }
    Ok(power_sum(p, q.value()).ln() / (1.0 - q.value()))
}

/// Σ p_j^q, evaluated in log space.
pub fn power_sum(p: &ProbabilityDistribution, q: f64) -> f64 {
    p.weights().iter().map(|&w| f64::exp(q * w.ln())).sum()
}

/// Quasi-entropy G_q = −Σ p_j^q log p_j.
pub fn quasi_entropy(p: &ProbabilityDistribution, q: QIndex) -> f64 {
    -p.weights()
        .iter()
        .map(|&w| f64::exp(q.value() * w.ln()) * w.ln())
        .sum::<f64>()
}

/// Quasilinear entropy: outer(ψ⁻¹(Σ p_j ψ(1/p_j))) with outer the log,
/// q-log, or (r,q)-log per `mode`.
pub fn quasilinear_entropy(
    p: &ProbabilityDistribution,
    kernel: &PsiKernel,
    mode: QuasilinearMode,
) -> Result<f64, MathError> {
    let values: Vec<f64> = p.weights().iter().map(|&w| 1.0 / w).collect();
    let mean = quasilinear_mean(kernel, &values, p)?;
    let lm = mean.ln();
    Ok(match mode {
        QuasilinearMode::Plain => lm,
        QuasilinearMode::Tsallis(q) => q_log_of_exp(lm, q),
        QuasilinearMode::Biparam { r, q } => q_log_of_exp(q_log_of_exp(lm, r), q),
    })
}

/// The biparametric extension Σ (p_j^q − p_j^r)/(r − q), symmetric in (r, q).
///
/// Evaluated per term as −p^q·expm1((r−q)·log p)/(r−q), which stays exact as
/// r → q where it tends to the quasi-entropy G_q.
pub fn wada_suyari(
    p: &ProbabilityDistribution,
    r: QIndex,
    q: QIndex,
) -> Result<f64, MathError> {
    if r.value() == q.value() {
        return Err(MathError::EqualIndices(q.value()));
    }
    let d = r.value() - q.value();
    Ok(p
        .weights()
        .iter()
        .map(|&w| {
            let lw = w.ln();
            -f64::exp(q.value() * lw) * f64::exp_m1(d * lw) / d
        })
        .sum())
}

/// The (r,q)-deformed entropy Σ p_j ln_{r,q}(1/p_j).
pub fn biparam_entropy(p: &ProbabilityDistribution, r: QIndex, q: QIndex) -> f64 {
    p.weights()
        .iter()
        .map(|&w| w * crate::deformed::biparam_log_of_exp(-w.ln(), r, q))
        .sum()
}

/// Arimoto entropy ln_q exp((r/(1−r))((Σ p_j^r)^{1/r} − 1)), r ≠ 1.
pub fn arimoto_entropy(
    p: &ProbabilityDistribution,
    r: QIndex,
    q: QIndex,
) -> Result<f64, MathError> {
    if r.is_limit() {
        return Err(MathError::LimitIndex(r.value()));
    }
    let a = power_sum(p, r.value()).ln();
    let y = r.value() / (1.0 - r.value()) * f64::exp_m1(a / r.value());
    Ok(q_log_of_exp(y, q))
}

/// Fermi–Dirac occupancy entropy Σ p_j ln_r(1/p_j) + Σ (1−p_j) ln_r(1/(1−p_j)).
pub fn fermi_dirac(p: &ProbabilityDistribution, r: QIndex) -> f64 {
    p.weights()
        .iter()
        .map(|&w| {
            w * q_log_of_exp(-w.ln(), r) + (1.0 - w) * q_log_of_exp(-(1.0 - w).ln(), r)
        })
        .sum()
}

/// Bose–Einstein occupancy entropy Σ p_j ln_r(1/p_j) − Σ (1+p_j) ln_r(1/(1+p_j)).
pub fn bose_einstein(p: &ProbabilityDistribution, r: QIndex) -> f64 {
    p.weights()
        .iter()
        .map(|&w| {
            w * q_log_of_exp(-w.ln(), r) - (1.0 + w) * q_log_of_exp(-f64::ln_1p(w), r)
        })
        .sum()
}

/// An entropy measure with its parameters, the CLI- and bindings-facing
/// dispatch surface.
#[derive(Debug, Clone, PartialEq)]
pub enum EntropyMeasure {
    Shannon,
    Tsallis(QIndex),
    Renyi(QIndex),
    QuasiEntropy(QIndex),
    Quasilinear { kernel: PsiKernel, mode: QuasilinearMode },
    WadaSuyari { r: QIndex, q: QIndex },
    Biparam { r: QIndex, q: QIndex },
    Arimoto { r: QIndex, q: QIndex },
    FermiDirac(QIndex),
    BoseEinstein(QIndex),
}

impl EntropyMeasure {
    pub fn evaluate(&self, p: &ProbabilityDistribution) -> Result<f64, MathError> {
        match self {
            Self::Shannon => Ok(shannon(p)),
            Self::Tsallis(q) => Ok(tsallis(p, *q)),
            Self::Renyi(q) => renyi(p, *q),
            Self::QuasiEntropy(q) => Ok(quasi_entropy(p, *q)),
            Self::Quasilinear { kernel, mode } => quasilinear_entropy(p, kernel, *mode),
            Self::WadaSuyari { r, q } => wada_suyari(p, *r, *q),
            Self::Biparam { r, q } => Ok(biparam_entropy(p, *r, *q)),
            Self::Arimoto { r, q } => arimoto_entropy(p, *r, *q),
            Self::FermiDirac(r) => Ok(fermi_dirac(p, *r)),
            Self::BoseEinstein(r) => Ok(bose_einstein(p, *r)),
        }
    }
}
