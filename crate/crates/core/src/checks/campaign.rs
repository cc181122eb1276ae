//! Deterministic randomized verification campaigns.
//!
//! Per-trial randomness is counter-based: every trial derives its own
//! ChaCha8 stream from (campaign seed, check id, trial index), so reports
//! are pure functions of (config, seed) regardless of scheduling, and
//! trials parallelize freely.

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::time::{Duration, Instant};

use super::catalog::{CheckDef, IndexDomain, XDomain};
use super::{expand_check_selection, run_check, CheckError, CheckInstance};
use crate::deformed::EPS_Q;
use crate::simplex::ProbabilityDistribution;

/// Closed interval of reals.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RangeF {
    pub lo: f64,
    pub hi: f64,
}

impl RangeF {
    pub fn new(lo: f64, hi: f64) -> Self {
        Self { lo, hi }
    }
}

/// Everything a campaign depends on. Reports are pure functions of this
/// struct (the seed included).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CampaignConfig {
    /// Check ids, family names, or "all".
    pub checks: Vec<String>,
    pub trials: u64,
    pub seed: u64,
    pub n_range: (usize, usize),
    pub q_range: RangeF,
    pub r_range: RangeF,
    /// Half-width of the excluded band around q = 1 for sampled indices.
    pub band: f64,
    pub v_range: RangeF,
    pub x_range: RangeF,
    pub tol: f64,
    pub floor: f64,
}

impl Default for CampaignConfig {
    fn default() -> Self {
        Self {
            checks: vec!["all".into()],
            trials: 1000,
            seed: 0,
            n_range: (2, 16),
            q_range: RangeF::new(0.05, 5.0),
            r_range: RangeF::new(0.05, 5.0),
            band: 1e-3,
            v_range: RangeF::new(1e-3, 1.0 - 1e-6),
            x_range: RangeF::new(1e-3, 1e3),
            tol: 1e-9,
            floor: 1e-9,
        }
    }
}

/// Per-check aggregate over all trials.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CheckReport {
    pub id: String,
    pub trials: u64,
    pub violations: u64,
    /// Minimum scale-normalized slack over all trials; violations == 0 iff
    /// this is >= -tol.
    pub min_slack: f64,
    /// The instance attaining the minimum slack; re-runnable via run_check.
    pub worst_instance: CheckInstance,
    /// Wall time, excluded from serialization so report bodies stay a pure
    /// function of (config, seed).
    #[serde(skip, default)]
    pub runtime: Duration,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CampaignReport {
    pub config: CampaignConfig,
    pub checks: Vec<CheckReport>,
    pub pass: bool,
    pub seed: u64,
}

impl CampaignReport {
    pub fn total_violations(&self) -> u64 {
        self.checks.iter().map(|c| c.violations).sum()
    }
}

fn validate_config(cfg: &CampaignConfig) -> Result<(), CheckError> {
    let bad = |msg: String| Err(CheckError::BadConfig(msg));
    if cfg.trials == 0 {
        return bad("trials must be >= 1".into());
    }
    if cfg.n_range.0 < 2 || cfg.n_range.1 < cfg.n_range.0 {
        return bad(format!("invalid n range {:?}", cfg.n_range));
    }
    for (name, r, positive) in [
        ("q-range", cfg.q_range, true),
        ("r-range", cfg.r_range, true),
        ("x-range", cfg.x_range, true),
        ("v-range", cfg.v_range, true),
    ] {
        if !(r.lo.is_finite() && r.hi.is_finite() && r.lo <= r.hi) {
            return bad(format!("invalid {name} [{}, {}]", r.lo, r.hi));
        }
        if positive && r.lo <= 0.0 {
            return bad(format!("{name} must be strictly positive, got lo = {}", r.lo));
        }
    }
    if cfg.v_range.hi >= 1.0 {
        return bad(format!("v-range must stay below 1, got hi = {}", cfg.v_range.hi));
    }
    let band_ok = cfg.band >= EPS_Q;
    if !band_ok {
        return bad(format!("band must be >= {EPS_Q}, got {}", cfg.band));
    }
    let tol_ok = cfg.tol > 0.0;
    if !tol_ok {
        return bad(format!("tol must be > 0, got {}", cfg.tol));
    }
    let floor_ok = cfg.floor > 0.0 && cfg.floor < 1.0 / cfg.n_range.1 as f64;
    if !floor_ok {
        return bad(format!(
            "floor must lie in (0, 1/n_max = {}), got {}",
            1.0 / cfg.n_range.1 as f64,
            cfg.floor
        ));
    }
    Ok(())
}

/// Counter-based per-trial seed: splitmix64 expansion of
/// (campaign seed, FNV-1a of the check id, trial index).
fn trial_seed(seed: u64, check_id: &str, trial: u64) -> [u8; 32] {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for &b in check_id.as_bytes() {
        h = (h ^ b as u64).wrapping_mul(0x0000_0100_0000_01b3);
    }
    let mut state = splitmix(seed ^ h);
    state = splitmix(state ^ trial);
    let mut out = [0u8; 32];
    for chunk in out.chunks_exact_mut(8) {
        state = state.wrapping_add(0x9e37_79b9_7f4a_7c15);
        chunk.copy_from_slice(&splitmix(state).to_le_bytes());
    }
    out
}

fn splitmix(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

fn draw_unit(rng: &mut ChaCha8Rng) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / 9007199254740992.0)
}

fn draw_in(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    lo + draw_unit(rng) * (hi - lo)
}

/// Sub-intervals of `range` admitted by an index domain with the campaign
/// band excluded around 1.
fn index_intervals(dom: IndexDomain, range: RangeF, band: f64) -> Vec<(f64, f64)> {
    let below = (range.lo, range.hi.min(1.0 - band));
    let above = (range.lo.max(1.0 + band), range.hi);
    let raw = match dom {
        IndexDomain::Sub => vec![below],
        IndexDomain::Super => vec![above],
        IndexDomain::Off => vec![below, above],
        IndexDomain::Window { lo, hi } => vec![
            (below.0.max(lo), below.1.min(hi)),
            (above.0.max(lo), above.1.min(hi)),
        ],
    };
    raw.into_iter().filter(|(a, b)| a < b).collect()
}

fn draw_from_intervals(rng: &mut ChaCha8Rng, intervals: &[(f64, f64)]) -> f64 {
    let total: f64 = intervals.iter().map(|(a, b)| b - a).sum();
    let mut pos = draw_unit(rng) * total;
    for &(a, b) in intervals {
        let len = b - a;
        if pos <= len {
            return (a + pos).min(b);
        }
        pos -= len;
    }
    intervals.last().map(|&(_, b)| b).unwrap_or(f64::NAN)
}

/// Precomputed sampling plan for one check under one config.
struct Plan {
    x: Option<(f64, f64)>,
    q: Option<Vec<(f64, f64)>>,
    r: Option<Vec<(f64, f64)>>,
}

fn build_plan(def: &CheckDef, cfg: &CampaignConfig) -> Result<Plan, CheckError> {
    let bad = |what: &str| {
        Err(CheckError::BadConfig(format!(
            "check `{}` cannot sample {what} from the configured ranges",
            def.id
        )))
    };
    let x = match def.spec.x {
        None => None,
        Some(XDomain::Unit) => {
            let (a, b) = (cfg.x_range.lo, cfg.x_range.hi.min(1.0));
            if a > b {
                return bad("x");
            }
            Some((a, b))
        }
        Some(XDomain::Tail) => {
            let (a, b) = (cfg.x_range.lo.max(1.0), cfg.x_range.hi);
            if a > b {
                return bad("x");
            }
            Some((a, b))
        }
    };
    let q = match def.spec.q {
        None => None,
        Some(dom) => {
            let iv = index_intervals(dom, cfg.q_range, cfg.band);
            if iv.is_empty() {
                return bad("q");
            }
            Some(iv)
        }
    };
    let r = match def.spec.r {
        None => None,
        Some(dom) => {
            let iv = index_intervals(dom, cfg.r_range, cfg.band);
            if iv.is_empty() {
                return bad("r");
            }
            Some(iv)
        }
    };
    Ok(Plan { x, q, r })
}

/// Draw one instance for `def`. Order of draws is part of the determinism
/// contract: n, distribution seeds, x, q, r, v.
fn sample_instance(
    def: &CheckDef,
    plan: &Plan,
    cfg: &CampaignConfig,
    rng: &mut ChaCha8Rng,
) -> Result<CheckInstance, CheckError> {
    let mut inst = CheckInstance::new(def.id);
    if def.spec.dists > 0 {
        let span = (cfg.n_range.1 - cfg.n_range.0 + 1) as f64;
        let n = cfg.n_range.0 + (draw_unit(rng) * span) as usize;
        let n = n.min(cfg.n_range.1);
        for _ in 0..def.spec.dists {
            let seed = rng.next_u64();
            let p = ProbabilityDistribution::sample(n, seed, cfg.floor)?;
            inst.distributions.push(p.weights().to_vec());
        }
    }
    if let Some((a, b)) = plan.x {
        inst.scalars.insert("x".into(), draw_in(rng, a, b));
    }
    if let Some(iv) = &plan.q {
        inst.scalars.insert("q".into(), draw_from_intervals(rng, iv));
    }
    if let Some(iv) = &plan.r {
        let q = inst.scalars.get("q").copied();
        let mut r = draw_from_intervals(rng, iv);
        if def.spec.distinct_qr {
            if let Some(q) = q {
                while (r - q).abs() < cfg.band {
                    r = draw_from_intervals(rng, iv);
                }
            }
        }
        inst.scalars.insert("r".into(), r);
    }
    if def.spec.v {
        let hi = cfg.v_range.hi.min(1.0 - 1e-6);
        inst.scalars.insert("v".into(), draw_in(rng, cfg.v_range.lo, hi));
    }
    Ok(inst)
}

struct TrialOutcome {
    violations: u64,
    min_norm_slack: f64,
    at_trial: u64,
    worst: Option<CheckInstance>,
}

impl TrialOutcome {
    fn identity() -> Self {
        Self {
            violations: 0,
            min_norm_slack: f64::INFINITY,
            at_trial: u64::MAX,
            worst: None,
        }
    }

    fn merge(a: Self, b: Self) -> Self {
        let (lo, hi) = if (a.min_norm_slack, a.at_trial) <= (b.min_norm_slack, b.at_trial) {
            (a, b)
        } else {
            (b, a)
        };
        Self {
            violations: lo.violations + hi.violations,
            min_norm_slack: lo.min_norm_slack,
            at_trial: lo.at_trial,
            worst: lo.worst,
        }
    }
}

fn clamp_slack(s: f64) -> f64 {
    if s.is_nan() {
        -1e308
    } else {
        s.clamp(-1e308, 1e308)
    }
}

/// Run a campaign: for every selected check, draw `trials` instances and
/// aggregate slack statistics. Deterministic in (config, seed); trials are
/// evaluated in parallel with an order-independent reduction.
pub fn run_campaign(cfg: &CampaignConfig) -> Result<CampaignReport, CheckError> {
    validate_config(cfg)?;
    if cfg.checks.is_empty() {
        return Err(CheckError::EmptyCheckSet);
    }
    let defs = expand_check_selection(&cfg.checks)?;
    if defs.is_empty() {
        return Err(CheckError::EmptyCheckSet);
    }

    let mut reports = Vec::with_capacity(defs.len());
    for def in &defs {
        let plan = build_plan(def, cfg)?;
        let started = Instant::now();
        let outcome = (0..cfg.trials)
            .into_par_iter()
            .map(|trial| -> Result<TrialOutcome, CheckError> {
                let mut rng = ChaCha8Rng::from_seed(trial_seed(cfg.seed, def.id, trial));
                let inst = sample_instance(def, &plan, cfg, &mut rng)?;
                let out = run_check(&inst, cfg.tol)?;
                let norm = clamp_slack(out.slack / out.scale);
                Ok(TrialOutcome {
                    violations: u64::from(!out.pass),
                    min_norm_slack: norm,
                    at_trial: trial,
                    worst: Some(inst),
                })
            })
            .try_reduce(TrialOutcome::identity, |a, b| Ok(TrialOutcome::merge(a, b)))?;
        reports.push(CheckReport {
            id: def.id.to_string(),
            trials: cfg.trials,
            violations: outcome.violations,
            min_slack: clamp_slack(outcome.min_norm_slack),
            worst_instance: outcome.worst.expect("at least one trial ran"),
            runtime: started.elapsed(),
        });
    }

    let pass = reports.iter().all(|r| r.violations == 0);
    let mut config_echo = cfg.clone();
    config_echo.checks = defs.iter().map(|d| d.id.to_string()).collect();
    Ok(CampaignReport { config: config_echo, checks: reports, pass, seed: cfg.seed })
}
