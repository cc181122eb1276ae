//! The divergence family: Kullback–Leibler, Tsallis, Rényi, α-divergence,
//! quasilinear divergences over a ψ kernel, the two biparametric extensions,
//! the Arimoto-type divergence, and the symmetric §-measures Jeffreys,
//! Jensen–Shannon and Lin.
//!
//! Mixed powers p^a r^b are evaluated as exp(a·log p + b·log r) so extreme
//! weight ratios neither overflow nor lose the leading digits.

use crate::deformed::{biparam_log_of_exp, q_log_of_exp, MathError, QIndex, EPS_Q};
use crate::psi::{quasilinear_mean, PsiKernel};
use crate::simplex::DivergencePair;

pub use crate::entropy::QuasilinearMode;

/// Kullback–Leibler divergence −Σ p_j log(r_j/p_j), in nats.
pub fn kl(pair: &DivergencePair) -> f64 {
    // + 0.0 keeps identical pairs from reporting -0.0
    -zipped(pair).map(|(p, r)| p * (r.ln() - p.ln())).sum::<f64>() + 0.0
}

/// Tsallis divergence −Σ p_j ln_q(r_j/p_j); KL in the limit band.
pub fn tsallis_div(pair: &DivergencePair, q: QIndex) -> f64 {
    -zipped(pair)
        .map(|(p, r)| p * q_log_of_exp(r.ln() - p.ln(), q))
        .sum::<f64>()
        + 0.0
}

/// Rényi divergence (1/(q−1)) log Σ p_j^q r_j^{1−q}.
pub fn renyi_div(pair: &DivergencePair, q: QIndex) -> Result<f64, MathError> {
    if q.is_limit() {
        return Err(MathError::LimitIndex(q.value()));
    }
    Ok(mixed_power_sum(pair, q.value()).ln() / (q.value() - 1.0))
}

/// Σ p_j^q r_j^{1−q}.
pub fn mixed_power_sum(pair: &DivergencePair, q: f64) -> f64 {
    zipped(pair)
        .map(|(p, r)| f64::exp(q * p.ln() + (1.0 - q) * r.ln()))
        .sum()
}

/// α-divergence (4/(1−α²))(1 − Σ p_j^{(1−α)/2} r_j^{(1+α)/2}), α ≠ ±1.
///
/// Deliberately computed from its own displayed formula rather than through
/// the Tsallis route, so the α ↔ q correspondence check compares two
/// genuinely independent implementations.
pub fn alpha_div(pair: &DivergencePair, alpha: f64) -> Result<f64, MathError> {
    if !alpha.is_finite() || (alpha - 1.0).abs() <= EPS_Q || (alpha + 1.0).abs() <= EPS_Q {
        return Err(MathError::BadAlpha(alpha));
    }
    let a = 0.5 * (1.0 - alpha);
    let b = 0.5 * (1.0 + alpha);
    let s: f64 = zipped(pair)
        .map(|(p, r)| f64::exp(a * p.ln() + b * r.ln()))
        .sum();
    Ok(4.0 / (1.0 - alpha * alpha) * (1.0 - s))
}

/// Quasilinear divergence −outer(ψ⁻¹(Σ p_j ψ(r_j/p_j))).
pub fn quasilinear_div(
    pair: &DivergencePair,
    kernel: &PsiKernel,
    mode: QuasilinearMode,
) -> Result<f64, MathError> {
    let values: Vec<f64> = zipped(pair).map(|(p, r)| r / p).collect();
    let mean = quasilinear_mean(kernel, &values, pair.p())?;
    let lm = mean.ln();
    Ok(match mode {
        QuasilinearMode::Plain => -lm,
        QuasilinearMode::Tsallis(q) => -q_log_of_exp(lm, q),
        QuasilinearMode::Biparam { r, q } => -biparam_log_of_exp(lm, r, q),
    } + 0.0)
}

/// The biparametric extension Σ (p_j^r r_j^{1−r} − p_j^q r_j^{1−q})/(r − q).
///
/// Per-term form p^q r^{1−q}·expm1((r−q)(log p − log r))/(r−q), exact as
/// r → q; symmetric in (q, r), and D̂_{q,1} is the Tsallis divergence.
/// Nonnegative on the axiomatic index domain where q and r straddle 1 (there
/// it is a true convex combination of Tsallis divergences); with both
/// indices on the same side of 1 the value can be negative.
pub fn hat_div(pair: &DivergencePair, q: QIndex, r: QIndex) -> Result<f64, MathError> {
    if r.value() == q.value() {
        return Err(MathError::EqualIndices(q.value()));
    }
    let d = r.value() - q.value();
    Ok(zipped(pair)
        .map(|(p, rr)| {
            let lp = p.ln();
            let lr = rr.ln();
            f64::exp(q.value() * lp + (1.0 - q.value()) * lr) * f64::exp_m1(d * (lp - lr)) / d
        })
        .sum())
}

/// Quasi-divergence Σ p_j^q r_j^{1−q} log(r_j/p_j), as displayed.
///
/// Note the sign: at q = 1 this is −KL, so the ordering chains that relate
/// it to the Tsallis divergence are stated over the raw sums
/// Σ p ln_q(r/p) = −D_q^T (see the check catalog).
pub fn quasi_div(pair: &DivergencePair, q: QIndex) -> f64 {
    zipped(pair)
        .map(|(p, r)| {
            let lp = p.ln();
            let lr = r.ln();
            f64::exp(q.value() * lp + (1.0 - q.value()) * lr) * (lr - lp)
        })
        .sum()
}

/// The (r,q)-deformed divergence −Σ p_j ln_{r,q}(r_j/p_j).
pub fn biparam_div(pair: &DivergencePair, r: QIndex, q: QIndex) -> f64 {
    -zipped(pair)
        .map(|(p, rr)| p * biparam_log_of_exp(rr.ln() - p.ln(), r, q))
        .sum::<f64>()
        + 0.0
}

/// Arimoto-type divergence −ln_q exp((r/(1−r))((Σ p_j^r r_j^{1−r})^{1/r} − 1)).
pub fn arimoto_div(pair: &DivergencePair, r: QIndex, q: QIndex) -> Result<f64, MathError> {
    if r.is_limit() {
        return Err(MathError::LimitIndex(r.value()));
    }
    let a = mixed_power_sum(pair, r.value()).ln();
    let y = r.value() / (1.0 - r.value()) * f64::exp_m1(a / r.value());
    Ok(-q_log_of_exp(y, q) + 0.0)
}

/// Jeffreys divergence J = KL(p‖r) + KL(r‖p).
pub fn jeffreys(pair: &DivergencePair) -> f64 {
    kl(pair) + kl(&pair.swapped())
}

/// Jensen–Shannon divergence ½KL(p‖m) + ½KL(r‖m) with m the equal mixture.
pub fn jensen_shannon(pair: &DivergencePair) -> f64 {
    let m = pair.mixture(0.5).expect("0.5 is a valid mixture weight");
    let pm = DivergencePair::new(pair.p().clone(), m.clone()).expect("equal lengths");
    let rm = DivergencePair::new(pair.r().clone(), m).expect("equal lengths");
    0.5 * kl(&pm) + 0.5 * kl(&rm)
}

/// Lin's divergence Σ p_j log(2p_j/(p_j+r_j)) = KL(p ‖ (p+r)/2).
pub fn lin(pair: &DivergencePair) -> f64 {
    let m = pair.mixture(0.5).expect("0.5 is a valid mixture weight");
    let pm = DivergencePair::new(pair.p().clone(), m).expect("equal lengths");
    kl(&pm)
}

fn zipped<'a>(pair: &'a DivergencePair) -> impl Iterator<Item = (f64, f64)> + 'a {
    pair.p()
        .weights()
        .iter()
        .zip(pair.r().weights())
        .map(|(&p, &r)| (p, r))
}

/// A divergence measure with its parameters, the CLI- and bindings-facing
/// dispatch surface.
#[derive(Debug, Clone, PartialEq)]
pub enum DivergenceMeasure {
    Kl,
    Tsallis(QIndex),
    Renyi(QIndex),
    Alpha(f64),
    Quasilinear { kernel: PsiKernel, mode: QuasilinearMode },
    Hat { q: QIndex, r: QIndex },
    Quasi(QIndex),
    Biparam { r: QIndex, q: QIndex },
    Arimoto { r: QIndex, q: QIndex },
    Jeffreys,
    JensenShannon,
    Lin,
}

impl DivergenceMeasure {
    pub fn evaluate(&self, pair: &DivergencePair) -> Result<f64, MathError> {
        match self {
            Self::Kl => Ok(kl(pair)),
            Self::Tsallis(q) => Ok(tsallis_div(pair, *q)),
            Self::Renyi(q) => renyi_div(pair, *q),
            Self::Alpha(a) => alpha_div(pair, *a),
            Self::Quasilinear { kernel, mode } => quasilinear_div(pair, kernel, *mode),
            Self::Hat { q, r } => hat_div(pair, *q, *r),
            Self::Quasi(q) => Ok(quasi_div(pair, *q)),
            Self::Biparam { r, q } => Ok(biparam_div(pair, *r, *q)),
            Self::Arimoto { r, q } => arimoto_div(pair, *r, *q),
            Self::Jeffreys => Ok(jeffreys(pair)),
            Self::JensenShannon => Ok(jensen_shannon(pair)),
            Self::Lin => Ok(lin(pair)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::deformed::q_exp;
    use crate::entropy::QuasilinearMode as Mode;
    use crate::simplex::{validate, ProbabilityDistribution};
    use proptest::prelude::*;

    fn qi(v: f64) -> QIndex {
        QIndex::new(v).unwrap()
    }

    fn pair_91_u2() -> DivergencePair {
        DivergencePair::new(
            validate(&[0.9, 0.1]).unwrap(),
            ProbabilityDistribution::uniform(2).unwrap(),
        )
        .unwrap()
    }

    fn sampled_pair(n: usize, seed: u64) -> DivergencePair {
        DivergencePair::new(
            ProbabilityDistribution::sample(n, seed, 1e-9).unwrap(),
            ProbabilityDistribution::sample(n, seed ^ 0xdead_beef, 1e-9).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn frozen_values() {
        let pair = pair_91_u2();
        assert!((kl(&pair) - 0.3680642071684971).abs() < 1e-15);
        assert!((tsallis_div(&pair, qi(2.0)) - 0.64).abs() < 1e-14);
        assert!((renyi_div(&pair, qi(2.0)).unwrap() - 0.49469624183610705).abs() < 1e-15);
        assert!((alpha_div(&pair, 0.0).unwrap() - 0.4222912360003365).abs() < 1e-15);
        assert!((quasi_div(&pair, qi(2.0)) - (-0.9200256388927508)).abs() < 1e-14);
        assert!((arimoto_div(&pair, qi(2.0), qi(1.0)).unwrap() - 0.5612496949731395).abs() < 1e-15);
        assert!((jeffreys(&pair) - 0.8788898309344878).abs() < 1e-14);
        assert!((jensen_shannon(&pair) - 0.10174922507919669).abs() < 1e-15);
        assert!((lin(&pair) - 0.1163217565860045).abs() < 1e-15);
        assert!((biparam_div(&pair, qi(2.0), qi(3.0)) - 1.7389594168775344).abs() < 1e-14);
        assert!((hat_div(&pair, qi(2.0), qi(0.5)).unwrap() - 0.4970485393333894).abs() < 1e-14);
    }

    #[test]
    fn zero_on_identical_pairs() {
        let p = validate(&[0.5, 0.3, 0.2]).unwrap();
        let pair = DivergencePair::new(p.clone(), p).unwrap();
        let q = qi(2.3);
        let r = qi(0.4);
        assert!(kl(&pair).abs() < 1e-12);
        assert!(tsallis_div(&pair, q).abs() < 1e-12);
        assert!(renyi_div(&pair, q).unwrap().abs() < 1e-12);
        assert!(alpha_div(&pair, 0.3).unwrap().abs() < 1e-12);
        assert!(quasi_div(&pair, q).abs() < 1e-12);
        assert!(hat_div(&pair, q, r).unwrap().abs() < 1e-12);
        assert!(biparam_div(&pair, r, q).abs() < 1e-12);
        assert!(arimoto_div(&pair, r, q).unwrap().abs() < 1e-12);
        assert!(jeffreys(&pair).abs() < 1e-12);
        assert!(jensen_shannon(&pair).abs() < 1e-12);
        assert!(lin(&pair).abs() < 1e-12);
        let k = PsiKernel::QLog(q);
        assert!(quasilinear_div(&pair, &k, Mode::Tsallis(q)).unwrap().abs() < 1e-12);
    }

    #[test]
    fn quasilinear_specializations() {
        let pair = sampled_pair(4, 11);
        let v = quasilinear_div(&pair, &PsiKernel::Log, Mode::Plain).unwrap();
        assert!((v - kl(&pair)).abs() < 1e-12);
        for q in [0.4, 1.7] {
            let k = PsiKernel::power(1.0 - q).unwrap();
            let v = quasilinear_div(&pair, &k, Mode::Tsallis(qi(q))).unwrap();
            assert!((v - tsallis_div(&pair, qi(q))).abs() <= 1e-11 * v.abs().max(1.0));
            let v = quasilinear_div(&pair, &PsiKernel::QLog(qi(q)), Mode::Tsallis(qi(q))).unwrap();
            assert!((v - tsallis_div(&pair, qi(q))).abs() <= 1e-11 * v.abs().max(1.0));
            let v = quasilinear_div(&pair, &k, Mode::Plain).unwrap();
            assert!((v - renyi_div(&pair, qi(q)).unwrap()).abs() <= 1e-11 * v.abs().max(1.0));
        }
    }

    #[test]
    fn hat_div_reduces_to_tsallis_at_r_one() {
        let pair = pair_91_u2();
        let v = hat_div(&pair, qi(2.0), qi(1.0)).unwrap();
        assert!((v - tsallis_div(&pair, qi(2.0))).abs() < 1e-14);
        assert!(matches!(
            hat_div(&pair, qi(2.0), qi(2.0)),
            Err(MathError::EqualIndices(_))
        ));
    }

    #[test]
    fn alpha_div_rejects_unit_alpha() {
        let pair = pair_91_u2();
        assert!(matches!(alpha_div(&pair, 1.0), Err(MathError::BadAlpha(_))));
        assert!(matches!(alpha_div(&pair, -1.0), Err(MathError::BadAlpha(_))));
    }

    #[test]
    fn biparam_div_limit_collapses() {
        let pair = pair_91_u2();
        let v = biparam_div(&pair, qi(1.0), qi(2.0));
        assert!((v - tsallis_div(&pair, qi(2.0))).abs() < 1e-14);
    }

    proptest! {
        #[test]
        fn prop_bridge_and_ordering(n in 2usize..10, seed in 0u64..2000, q in 0.05f64..5.0) {
            prop_assume!((q - 1.0).abs() > 1e-3);
            let pair = sampled_pair(n, seed);
            let qq = qi(q);
            let dt = tsallis_div(&pair, qq);
            let dr = renyi_div(&pair, qq).unwrap();
            // bridge identity
            let bridge = f64::ln_1p((q - 1.0) * dt) / (q - 1.0);
            prop_assert!((dr - bridge).abs() <= 1e-10 * dr.abs().max(1.0));
            // ordering: sub-unit q puts Renyi above, super-unit below
            if q < 1.0 {
                prop_assert!(dr >= dt - 1e-10 * dt.abs().max(1.0));
            } else {
                prop_assert!(dr <= dt + 1e-10 * dt.abs().max(1.0));
            }
            // exp D_q^R = exp_{2-q} D_q^T (index must stay positive)
            if q < 2.0 {
                let lhs = dr.exp();
                let rhs = q_exp(dt, qi(2.0 - q)).unwrap();
                prop_assert!((lhs - rhs).abs() <= 1e-10 * lhs.abs().max(1.0));
            }
        }

        #[test]
        fn prop_alpha_map(n in 2usize..10, seed in 0u64..2000, q in 0.05f64..5.0) {
            prop_assume!((q - 1.0).abs() > 1e-3);
            let pair = sampled_pair(n, seed);
            let lhs = alpha_div(&pair, 1.0 - 2.0 * q).unwrap();
            let rhs = tsallis_div(&pair, qi(q)) / q;
            prop_assert!((lhs - rhs).abs() <= 1e-10 * lhs.abs().max(1.0));
        }

        #[test]
        fn prop_hat_div_convex_combination(n in 2usize..10, seed in 0u64..2000, q in 0.05f64..5.0, r in 0.05f64..5.0) {
            prop_assume!((q - 1.0).abs() > 1e-3 && (r - 1.0).abs() > 1e-3);
            prop_assume!((q - r).abs() > 1e-3);
            let pair = sampled_pair(n, seed);
            let direct = hat_div(&pair, qi(q), qi(r)).unwrap();
            let combo = (q - 1.0) / (q - r) * tsallis_div(&pair, qi(q))
                + (1.0 - r) / (q - r) * tsallis_div(&pair, qi(r));
            // the combination's coefficients grow like 1/|q-r|, so its
            // rounding floor sits near 5e-13 relative at the band edge
            prop_assert!((direct - combo).abs() <= 1e-10 * direct.abs().max(1.0));
            // nonnegative on the axiomatic index domain (q and r straddling 1);
            // same-side indices make one combination coefficient negative and
            // the value can dip below zero
            if (q - 1.0) * (r - 1.0) <= 0.0 {
                prop_assert!(direct >= -1e-12 * direct.abs().max(1.0));
            }
        }

        #[test]
        fn prop_nonnegativity(n in 2usize..10, seed in 0u64..2000, q in 0.05f64..5.0, r in 0.05f64..5.0) {
            prop_assume!((r - 1.0).abs() > 1e-6);
            let pair = sampled_pair(n, seed);
            prop_assert!(kl(&pair) >= 0.0);
            prop_assert!(tsallis_div(&pair, qi(q)) >= -1e-12);
            prop_assert!(arimoto_div(&pair, qi(r), qi(q)).unwrap() >= -1e-12);
            // biparametric divergence is nonnegative for q >= 1 (and r > 0)
            if q >= 1.0 {
                prop_assert!(biparam_div(&pair, qi(r), qi(q)) >= -1e-12);
            }
            let k = PsiKernel::QLog(qi(q));
            if (q - 1.0).abs() > 1e-6 {
                prop_assert!(quasilinear_div(&pair, &k, Mode::Tsallis(qi(q))).unwrap() >= -1e-11);
            }
        }

        #[test]
        fn prop_section4_inequalities(n in 2usize..10, seed in 0u64..2000) {
            let pair = sampled_pair(n, seed);
            // JS <= J/4
            prop_assert!(jensen_shannon(&pair) <= 0.25 * jeffreys(&pair) + 1e-12);
            // Lin difference bounded by KL
            prop_assert!(lin(&pair) - lin(&pair.swapped()) <= kl(&pair) + 1e-12);
            // Lin halving
            prop_assert!(lin(&pair) <= 0.5 * kl(&pair) + 1e-12);
        }

        #[test]
        fn prop_hypodivergence(n in 2usize..10, seed in 0u64..2000, q in 0.05f64..5.0) {
            prop_assume!((q - 1.0).abs() > 1e-3);
            let pair = sampled_pair(n, seed);
            let m = pair.mixture(0.5).unwrap();
            let pm = DivergencePair::new(pair.p().clone(), m).unwrap();
            let lhs = tsallis_div(&pm, qi(q));
            let rhs = 0.5 * tsallis_div(&pair, qi(0.5 * (1.0 + q)));
            prop_assert!(lhs <= rhs + 1e-10 * rhs.abs().max(1.0));
        }
    }
}
