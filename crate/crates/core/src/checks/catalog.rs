//! The check catalog: every inequality chain and identity, with parameter
//! domains, descriptions, and evaluation code.
//!
//! Checks whose source statement splits on the regime of q are registered as
//! separate `_sub` (0 < q < 1) and `_super` (q > 1) ids with disjoint
//! domains; a family name (the common prefix) selects all of them in
//! campaigns and dispatches on the supplied scalars in [`run_check`].

use once_cell::sync::Lazy;
use serde::Serialize;

use super::{BoundChain, CheckError, CheckInstance, Direction};
use crate::deformed::{q_log_of_exp, QIndex, EPS_Q};
use crate::divergence as dv;
use crate::entropy as en;
use crate::psi::{quasilinear_mean, PsiKernel};
use crate::simplex::{DivergencePair, ProbabilityDistribution};

/// Domain of the scalar argument x.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum XDomain {
    /// (0, 1]
    Unit,
    /// [1, ∞)
    Tail,
}

/// Domain of a deformation index.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum IndexDomain {
    /// 0 < q < 1, outside the limit band
    Sub,
    /// q > 1, outside the limit band
    Super,
    /// any positive q outside the limit band
    Off,
    /// off the limit band and inside the open window (lo, hi)
    Window { lo: f64, hi: f64 },
}

impl IndexDomain {
    fn admits(&self, value: f64) -> bool {
        let Ok(idx) = QIndex::new(value) else {
            return false;
        };
        if idx.is_limit() {
            return false;
        }
        match *self {
            IndexDomain::Sub => value < 1.0,
            IndexDomain::Super => value > 1.0,
            IndexDomain::Off => true,
            IndexDomain::Window { lo, hi } => value > lo && value < hi,
        }
    }

    fn describe(&self) -> String {
        match *self {
            IndexDomain::Sub => "(0, 1), off the limit band".into(),
            IndexDomain::Super => "(1, inf), off the limit band".into(),
            IndexDomain::Off => "(0, inf), off the limit band".into(),
            IndexDomain::Window { lo, hi } => {
                format!("({lo}, {hi}), off the limit band")
            }
        }
    }
}

/// What a check consumes: how many distributions and which scalars, with
/// their domains.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParamSpec {
    pub dists: u8,
    pub x: Option<XDomain>,
    pub q: Option<IndexDomain>,
    pub r: Option<IndexDomain>,
    pub v: bool,
    /// require |q - r| above the band (convex-combination coefficients
    /// diverge as q -> r)
    pub distinct_qr: bool,
}

impl ParamSpec {
    const fn dists(n: u8) -> Self {
        Self { dists: n, x: None, q: None, r: None, v: false, distinct_qr: false }
    }

    const fn with_x(mut self, x: XDomain) -> Self {
        self.x = Some(x);
        self
    }

    const fn with_q(mut self, q: IndexDomain) -> Self {
        self.q = Some(q);
        self
    }

    const fn with_r(mut self, r: IndexDomain) -> Self {
        self.r = Some(r);
        self
    }

    const fn with_v(mut self) -> Self {
        self.v = true;
        self
    }

    const fn distinct(mut self) -> Self {
        self.distinct_qr = true;
        self
    }

    pub fn scalar_names(&self) -> Vec<&'static str> {
        let mut names = Vec::new();
        if self.x.is_some() {
            names.push("x");
        }
        if self.q.is_some() {
            names.push("q");
        }
        if self.r.is_some() {
            names.push("r");
        }
        if self.v {
            names.push("v");
        }
        names
    }
}

/// Resolved, validated inputs for one evaluation.
pub(crate) struct EvalCtx {
    pub p: Option<ProbabilityDistribution>,
    pub pair: Option<DivergencePair>,
    pub x: f64,
    pub q: f64,
    pub r: f64,
    pub v: f64,
}

impl EvalCtx {
    fn qi(&self) -> QIndex {
        QIndex::new(self.q).expect("validated")
    }

    fn ri(&self) -> QIndex {
        QIndex::new(self.r).expect("validated")
    }

    fn p(&self) -> &ProbabilityDistribution {
        self.p.as_ref().expect("validated")
    }

    fn pair(&self) -> &DivergencePair {
        self.pair.as_ref().expect("validated")
    }
}

type EvalFn = Box<dyn Fn(&EvalCtx) -> Result<BoundChain, CheckError> + Send + Sync>;

pub struct CheckDef {
    pub id: &'static str,
    pub family: &'static str,
    pub description: String,
    pub spec: ParamSpec,
    pub hidden: bool,
    pub(crate) eval: EvalFn,
}

/// Catalog entry in listing form.
#[derive(Debug, Clone, Serialize)]
pub struct CheckInfo {
    pub id: String,
    pub family: String,
    pub description: String,
    pub distributions: u8,
    pub scalars: Vec<ScalarInfo>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ScalarInfo {
    pub name: String,
    pub domain: String,
}

/// Outcome of a single check evaluation.
#[derive(Debug, Clone, Serialize)]
pub struct CheckOutcome {
    pub chain: BoundChain,
    pub pass: bool,
    /// Raw minimum slack between consecutive terms.
    pub slack: f64,
    /// Chain scale, max(1, max finite |term|).
    pub scale: f64,
}

// ---------------------------------------------------------------------------
// shared chain builders
// ---------------------------------------------------------------------------

/// The four recurring factors of the sandwich chains, all functions of the
/// log-space argument u and the index q:
/// full = e^{(1-q)u}·u, half_avg = ((e^{(1-q)u}+1)/2)·u,
/// sqrt = e^{((1-q)/2)u}·u, base = u.
struct HhTerms {
    full: f64,
    half_avg: f64,
    sqrt: f64,
    base: f64,
}

fn hh_terms(u: f64, q: f64) -> HhTerms {
    let c = 1.0 - q;
    let ef = f64::exp(c * u);
    let es = f64::exp(0.5 * c * u);
    HhTerms { full: ef * u, half_avg: 0.5 * (ef + 1.0) * u, sqrt: es * u, base: u }
}

enum Regime {
    Sub,
    Super,
}

/// Sandwich chain for log-space argument u with mid-term `mid`, in the
/// canonical non-decreasing presentation. `unit` selects the 0 < e^u <= 1
/// case orders, otherwise the e^u >= 1 orders.
fn sandwich_chain(
    u: f64,
    q: f64,
    mid: f64,
    unit: bool,
    regime: Regime,
    labels: &[&str; 5],
) -> BoundChain {
    let t = hh_terms(u, q);
    // label indices: 0 full, 1 half_avg, 2 mid, 3 sqrt, 4 base
    let order: [(usize, f64); 5] = match (unit, regime) {
        (true, Regime::Sub) => [(4, t.base), (1, t.half_avg), (2, mid), (3, t.sqrt), (0, t.full)],
        (true, Regime::Super) => [(0, t.full), (1, t.half_avg), (2, mid), (3, t.sqrt), (4, t.base)],
        (false, Regime::Sub) => [(4, t.base), (3, t.sqrt), (2, mid), (1, t.half_avg), (0, t.full)],
        (false, Regime::Super) => [(0, t.full), (3, t.sqrt), (2, mid), (1, t.half_avg), (4, t.base)],
    };
    BoundChain::new(
        Direction::NonDecreasing,
        order.iter().map(|&(i, v)| (labels[i].to_string(), v)).collect(),
    )
}

/// Identity encoded as the palindromic chain [lhs, rhs, lhs]; its minimum
/// slack is exactly -|lhs - rhs|.
fn identity_chain(lhs_label: &str, lhs: f64, rhs_label: &str, rhs: f64) -> BoundChain {
    BoundChain::new(
        Direction::NonDecreasing,
        vec![
            (lhs_label.to_string(), lhs),
            (rhs_label.to_string(), rhs),
            (lhs_label.to_string(), lhs),
        ],
    )
}

fn chain(direction: Direction, terms: Vec<(&str, f64)>) -> BoundChain {
    BoundChain::new(direction, terms.into_iter().map(|(l, v)| (l.to_string(), v)).collect())
}

/// Which ψ kernel a quasilinear check instantiates; indices are taken from
/// the instance's (r, q) scalars.
#[derive(Clone, Copy)]
enum KernelKind {
    Log,
    Power,
    QLog,
    BiLog,
}

impl KernelKind {
    fn build(self, r: f64, q: f64) -> Result<PsiKernel, CheckError> {
        Ok(match self {
            KernelKind::Log => PsiKernel::Log,
            KernelKind::Power => PsiKernel::power(1.0 - r)?,
            KernelKind::QLog => PsiKernel::QLog(QIndex::new(r)?),
            KernelKind::BiLog => PsiKernel::BiLog { r: QIndex::new(r)?, q: QIndex::new(q)? },
        })
    }
}

fn reciprocal_mean(p: &ProbabilityDistribution, kernel: &PsiKernel) -> Result<f64, CheckError> {
    let values: Vec<f64> = p.weights().iter().map(|&w| 1.0 / w).collect();
    Ok(quasilinear_mean(kernel, &values, p)?)
}

fn ratio_mean(pair: &DivergencePair, kernel: &PsiKernel) -> Result<f64, CheckError> {
    let values: Vec<f64> = pair
        .p()
        .weights()
        .iter()
        .zip(pair.r().weights())
        .map(|(&p, &r)| r / p)
        .collect();
    Ok(quasilinear_mean(kernel, &values, pair.p())?)
}

fn pair_of(p: &ProbabilityDistribution, r: ProbabilityDistribution) -> DivergencePair {
    DivergencePair::new(p.clone(), r).expect("equal lengths by construction")
}

// ---------------------------------------------------------------------------
// catalog
// ---------------------------------------------------------------------------

const SCALAR_SANDWICH_LABELS: [&str; 5] = [
    "x^(1-q)*log(x)",
    "avg(x^(1-q),1)*log(x)",
    "ln_q(x)",
    "x^((1-q)/2)*log(x)",
    "log(x)",
];

const BIPARAM_SANDWICH_LABELS: [&str; 5] = [
    "exp((1-q)u)*u",
    "avg(exp((1-q)u),1)*u",
    "ln_(r,q)(x)",
    "exp((1-q)u/2)*u",
    "u=ln_r(x)",
];

const ENTROPY_MEAN_LABELS: [&str; 5] = [
    "M^(1-q)*I_1",
    "avg(M^(1-q),1)*I_1",
    "I_q",
    "M^((1-q)/2)*I_1",
    "I_1",
];

const BIPARAM_MEAN_LABELS: [&str; 5] = [
    "exp((1-q)I_r)*I_r",
    "avg(exp((1-q)I_r),1)*I_r",
    "I_(r,q)",
    "exp((1-q)I_r/2)*I_r",
    "I_r",
];

fn def(
    id: &'static str,
    family: &'static str,
    description: impl Into<String>,
    spec: ParamSpec,
    eval: impl Fn(&EvalCtx) -> Result<BoundChain, CheckError> + Send + Sync + 'static,
) -> CheckDef {
    CheckDef { id, family, description: description.into(), spec, hidden: false, eval: Box::new(eval) }
}

fn push_lemma_scalar_checks(defs: &mut Vec<CheckDef>) {
    // five-term sandwich for ln_q x against log x, four (x, q) cases
    let cases = [
        ("lemma_2_1_I_i", XDomain::Unit, IndexDomain::Sub, true, Regime::Sub as u8),
        ("lemma_2_1_I_ii", XDomain::Unit, IndexDomain::Super, true, Regime::Super as u8),
        ("lemma_2_1_II_i", XDomain::Tail, IndexDomain::Sub, false, Regime::Sub as u8),
        ("lemma_2_1_II_ii", XDomain::Tail, IndexDomain::Super, false, Regime::Super as u8),
    ];
    for (id, x, qd, unit, regime) in cases {
        let desc = format!(
            "ln_q(x) sandwiched between power-weighted multiples of log(x) for {} and {}",
            if unit { "0 < x <= 1" } else { "x >= 1" },
            if regime == 0 { "0 < q < 1" } else { "q > 1" },
        );
        defs.push(def(
            id,
            "lemma_2_1",
            desc,
            ParamSpec::dists(0).with_x(x).with_q(qd),
            move |ctx| {
                let u = ctx.x.ln();
                let mid = q_log_of_exp(u, ctx.qi());
                let regime = if regime == 0 { Regime::Sub } else { Regime::Super };
                Ok(sandwich_chain(u, ctx.q, mid, unit, regime, &SCALAR_SANDWICH_LABELS))
            },
        ));
    }

    let cases = [
        ("lemma_3_3_I_i", XDomain::Unit, IndexDomain::Sub, true, 0u8),
        ("lemma_3_3_I_ii", XDomain::Unit, IndexDomain::Super, true, 1),
        ("lemma_3_3_II_i", XDomain::Tail, IndexDomain::Sub, false, 0),
        ("lemma_3_3_II_ii", XDomain::Tail, IndexDomain::Super, false, 1),
    ];
    for (id, x, qd, unit, regime) in cases {
        let desc = format!(
            "ln_(r,q)(x) sandwiched between exp((1-q)ln_r x)-weighted multiples of ln_r(x) for {} and {}",
            if unit { "0 < x <= 1" } else { "x >= 1" },
            if regime == 0 { "0 < q < 1" } else { "q > 1" },
        );
        defs.push(def(
            id,
            "lemma_3_3",
            desc,
            ParamSpec::dists(0).with_x(x).with_q(qd).with_r(IndexDomain::Off),
            move |ctx| {
                let u = q_log_of_exp(ctx.x.ln(), ctx.ri());
                let mid = q_log_of_exp(u, ctx.qi());
                let regime = if regime == 0 { Regime::Sub } else { Regime::Super };
                Ok(sandwich_chain(u, ctx.q, mid, unit, regime, &BIPARAM_SANDWICH_LABELS))
            },
        ));
    }
}

fn push_entropy_chain_checks(defs: &mut Vec<CheckDef>) {
    // quasi-entropy chains around the Tsallis entropy
    defs.push(def(
        "prop_2_2_sub",
        "prop_2_2",
        "for 0 < q < 1: G_q >= (H+G_q)/2 >= H_q >= G_((q+1)/2) >= H",
        ParamSpec::dists(1).with_q(IndexDomain::Sub),
        |ctx| {
            let (p, q) = (ctx.p(), ctx.qi());
            let h = en::shannon(p);
            let gq = en::quasi_entropy(p, q);
            Ok(chain(
                Direction::NonIncreasing,
                vec![
                    ("G_q", gq),
                    ("avg(H,G_q)", 0.5 * (h + gq)),
                    ("H_q", en::tsallis(p, q)),
                    ("G_((q+1)/2)", en::quasi_entropy(p, QIndex::new(0.5 * (ctx.q + 1.0))?)),
                    ("H", h),
                ],
            ))
        },
    ));
    defs.push(def(
        "prop_2_2_super",
        "prop_2_2",
        "for q > 1: H >= (H+G_q)/2 >= H_q >= G_((q+1)/2) >= G_q",
        ParamSpec::dists(1).with_q(IndexDomain::Super),
        |ctx| {
            let (p, q) = (ctx.p(), ctx.qi());
            let h = en::shannon(p);
            let gq = en::quasi_entropy(p, q);
            Ok(chain(
                Direction::NonIncreasing,
                vec![
                    ("H", h),
                    ("avg(H,G_q)", 0.5 * (h + gq)),
                    ("H_q", en::tsallis(p, q)),
                    ("G_((q+1)/2)", en::quasi_entropy(p, QIndex::new(0.5 * (ctx.q + 1.0))?)),
                    ("G_q", gq),
                ],
            ))
        },
    ));

    // quasilinear entropy chains, one check per catalog kernel and regime
    let kernels = [
        ("log", KernelKind::Log, false),
        ("power", KernelKind::Power, true),
        ("qlog", KernelKind::QLog, true),
        ("bilog", KernelKind::BiLog, true),
    ];
    for (kname, kind, needs_r) in kernels {
        for (regime_name, qd, sub) in
            [("sub", IndexDomain::Sub, true), ("super", IndexDomain::Super, false)]
        {
            let id: &'static str = Box::leak(format!("thm_2_3_{regime_name}_{kname}").into_boxed_str());
            let desc = format!(
                "quasilinear entropy chain: I_q bracketed by powers of M_psi(1/p) times I_1, psi = {kname} kernel{}",
                if needs_r { " with index r (bilog also uses q)" } else { "" },
            );
            let mut spec = ParamSpec::dists(1).with_q(qd);
            if needs_r {
                spec = spec.with_r(IndexDomain::Off);
            }
            defs.push(def(id, "thm_2_3", desc, spec, move |ctx| {
                let kernel = kind.build(ctx.r, ctx.q)?;
                let m = reciprocal_mean(ctx.p(), &kernel)?;
                let u = m.ln();
                let mid = q_log_of_exp(u, ctx.qi());
                let t = hh_terms(u, ctx.q);
                let l = &ENTROPY_MEAN_LABELS;
                Ok(if sub {
                    chain(
                        Direction::NonIncreasing,
                        vec![(l[0], t.full), (l[1], t.half_avg), (l[2], mid), (l[3], t.sqrt), (l[4], t.base)],
                    )
                } else {
                    chain(
                        Direction::NonDecreasing,
                        vec![(l[0], t.full), (l[3], t.sqrt), (l[2], mid), (l[1], t.half_avg), (l[4], t.base)],
                    )
                })
            }));
        }
    }

    // log-kernel specialization written through exp((1-q)H) factors
    for (id, qd, sub) in [
        ("cor_2_4_sub", IndexDomain::Sub, true),
        ("cor_2_4_super", IndexDomain::Super, false),
    ] {
        defs.push(def(
            id,
            "cor_2_4",
            "Shannon specialization: ln_q(exp H) bracketed by exp((1-q)H)-weighted multiples of H",
            ParamSpec::dists(1).with_q(qd),
            move |ctx| {
                let u = en::shannon(ctx.p());
                let mid = q_log_of_exp(u, ctx.qi());
                let t = hh_terms(u, ctx.q);
                let labels = [
                    "exp((1-q)H)*H",
                    "avg(exp((1-q)H),1)*H",
                    "ln_q(exp(H))",
                    "exp((1-q)H/2)*H",
                    "H",
                ];
                Ok(if sub {
                    chain(
                        Direction::NonIncreasing,
                        vec![
                            (labels[0], t.full),
                            (labels[1], t.half_avg),
                            (labels[2], mid),
                            (labels[3], t.sqrt),
                            (labels[4], t.base),
                        ],
                    )
                } else {
                    chain(
                        Direction::NonDecreasing,
                        vec![
                            (labels[0], t.full),
                            (labels[3], t.sqrt),
                            (labels[2], mid),
                            (labels[1], t.half_avg),
                            (labels[4], t.base),
                        ],
                    )
                })
            },
        ));
    }

    // power-kernel specialization linking the Renyi and Tsallis entropies;
    // the mid term H_q is computed independently of R_q
    for (id, qd, sub) in [
        ("cor_2_5_sub", IndexDomain::Sub, true),
        ("cor_2_5_super", IndexDomain::Super, false),
    ] {
        defs.push(def(
            id,
            "cor_2_5",
            "Renyi specialization: H_q bracketed by exp((1-q)R_q)-weighted multiples of R_q",
            ParamSpec::dists(1).with_q(qd),
            move |ctx| {
                let q = ctx.qi();
                let u = en::renyi(ctx.p(), q)?;
                let mid = en::tsallis(ctx.p(), q);
                let t = hh_terms(u, ctx.q);
                let labels = [
                    "exp((1-q)R_q)*R_q",
                    "avg(exp((1-q)R_q),1)*R_q",
                    "H_q",
                    "exp((1-q)R_q/2)*R_q",
                    "R_q",
                ];
                Ok(if sub {
                    chain(
                        Direction::NonIncreasing,
                        vec![
                            (labels[0], t.full),
                            (labels[1], t.half_avg),
                            (labels[2], mid),
                            (labels[3], t.sqrt),
                            (labels[4], t.base),
                        ],
                    )
                } else {
                    chain(
                        Direction::NonDecreasing,
                        vec![
                            (labels[0], t.full),
                            (labels[3], t.sqrt),
                            (labels[2], mid),
                            (labels[1], t.half_avg),
                            (labels[4], t.base),
                        ],
                    )
                })
            },
        ));
    }

    // two-sided bounds for the biparametric entropy via its convex
    // combination in Tsallis entropies
    defs.push(def(
        "prop_3_1_a",
        "prop_3_1",
        "for q > 1, 0 < r < 1: mixed H/G_r upper bound >= S_(r,q) >= mixed G_q/G_((r+1)/2) lower bound",
        ParamSpec::dists(1).with_q(IndexDomain::Super).with_r(IndexDomain::Sub),
        |ctx| {
            let (p, q, r) = (ctx.p(), ctx.q, ctx.r);
            let h = en::shannon(p);
            let upper = (2.0 * q - r - 1.0) / (2.0 * (q - r)) * h
                + (1.0 - r) / (2.0 * (q - r)) * en::quasi_entropy(p, ctx.ri());
            let s = en::wada_suyari(p, ctx.ri(), ctx.qi())?;
            let lower = (q - 1.0) / (q - r) * en::quasi_entropy(p, ctx.qi())
                + (1.0 - r) / (q - r) * en::quasi_entropy(p, QIndex::new(0.5 * (r + 1.0))?);
            Ok(chain(
                Direction::NonIncreasing,
                vec![("upper_mix(H,G_r)", upper), ("S_(r,q)", s), ("lower_mix(G_q,G_((r+1)/2))", lower)],
            ))
        },
    ));
    defs.push(def(
        "prop_3_1_b",
        "prop_3_1",
        "for 0 < q < 1, r > 1: mixed H/G_q upper bound >= S_(r,q) >= mixed G_r/G_((q+1)/2) lower bound",
        ParamSpec::dists(1).with_q(IndexDomain::Sub).with_r(IndexDomain::Super),
        |ctx| {
            let (p, q, r) = (ctx.p(), ctx.q, ctx.r);
            let h = en::shannon(p);
            let upper = (2.0 * r - q - 1.0) / (2.0 * (r - q)) * h
                + (1.0 - q) / (2.0 * (r - q)) * en::quasi_entropy(p, ctx.qi());
            let s = en::wada_suyari(p, ctx.ri(), ctx.qi())?;
            let lower = (r - 1.0) / (r - q) * en::quasi_entropy(p, ctx.ri())
                + (1.0 - q) / (r - q) * en::quasi_entropy(p, QIndex::new(0.5 * (q + 1.0))?);
            Ok(chain(
                Direction::NonIncreasing,
                vec![("upper_mix(H,G_q)", upper), ("S_(r,q)", s), ("lower_mix(G_r,G_((q+1)/2))", lower)],
            ))
        },
    ));

    // biparametric quasilinear entropy chains
    let kernels = [
        ("log", KernelKind::Log),
        ("power", KernelKind::Power),
        ("qlog", KernelKind::QLog),
        ("bilog", KernelKind::BiLog),
    ];
    for (kname, kind) in kernels {
        for (regime_name, qd, sub) in
            [("sub", IndexDomain::Sub, true), ("super", IndexDomain::Super, false)]
        {
            let id: &'static str = Box::leak(format!("thm_3_4_{regime_name}_{kname}").into_boxed_str());
            let desc = format!(
                "biparametric quasilinear entropy chain: I_(r,q) bracketed by exp((1-q)I_r)-weighted multiples of I_r, psi = {kname} kernel",
            );
            defs.push(def(
                id,
                "thm_3_4",
                desc,
                ParamSpec::dists(1).with_q(qd).with_r(IndexDomain::Off),
                move |ctx| {
                    let kernel = kind.build(ctx.r, ctx.q)?;
                    let m = reciprocal_mean(ctx.p(), &kernel)?;
                    let u = q_log_of_exp(m.ln(), ctx.ri());
                    let mid = q_log_of_exp(u, ctx.qi());
                    let regime = if sub { Regime::Sub } else { Regime::Super };
                    Ok(sandwich_chain(u, ctx.q, mid, false, regime, &BIPARAM_MEAN_LABELS))
                },
            ));
        }
    }

    // ordering of the biparametric entropy against the Tsallis entropy
    defs.push(def(
        "rem_3_6_entropy_sub",
        "rem_3_6",
        "for 0 < q < 1: H_(r,q) >= H_r",
        ParamSpec::dists(1).with_q(IndexDomain::Sub).with_r(IndexDomain::Off),
        |ctx| {
            Ok(chain(
                Direction::NonIncreasing,
                vec![
                    ("H_(r,q)", en::biparam_entropy(ctx.p(), ctx.ri(), ctx.qi())),
                    ("H_r", en::tsallis(ctx.p(), ctx.ri())),
                ],
            ))
        },
    ));
    defs.push(def(
        "rem_3_6_entropy_super",
        "rem_3_6",
        "for q > 1: H_r >= H_(r,q)",
        ParamSpec::dists(1).with_q(IndexDomain::Super).with_r(IndexDomain::Off),
        |ctx| {
            Ok(chain(
                Direction::NonIncreasing,
                vec![
                    ("H_r", en::tsallis(ctx.p(), ctx.ri())),
                    ("H_(r,q)", en::biparam_entropy(ctx.p(), ctx.ri(), ctx.qi())),
                ],
            ))
        },
    ));

    // occupancy entropies
    defs.push(def(
        "thm_5_1",
        "thm_5_1",
        "Fermi-Dirac entropy <= Bose-Einstein entropy (undeformed)",
        ParamSpec::dists(1),
        |ctx| {
            let one = QIndex::one();
            Ok(chain(
                Direction::NonIncreasing,
                vec![
                    ("l_BE", en::bose_einstein(ctx.p(), one)),
                    ("l_FD", en::fermi_dirac(ctx.p(), one)),
                ],
            ))
        },
    ));
    defs.push(def(
        "thm_5_2",
        "thm_5_2",
        "Fermi-Dirac entropy <= Bose-Einstein entropy at deformation index r",
        ParamSpec::dists(1).with_r(IndexDomain::Off),
        |ctx| {
            Ok(chain(
                Direction::NonIncreasing,
                vec![
                    ("l_BE_r", en::bose_einstein(ctx.p(), ctx.ri())),
                    ("l_FD_r", en::fermi_dirac(ctx.p(), ctx.ri())),
                ],
            ))
        },
    ));
}

fn push_identity_checks(defs: &mut Vec<CheckDef>) {
    defs.push(def(
        "id_eq17",
        "id_eq17",
        "identity exp(R_q) = exp_q(H_q), two independent routes",
        ParamSpec::dists(1).with_q(IndexDomain::Off),
        |ctx| {
            let q = ctx.qi();
            let lhs = en::renyi(ctx.p(), q)?.exp();
            let rhs = crate::deformed::q_exp(en::tsallis(ctx.p(), q), q)?;
            Ok(identity_chain("exp(R_q)", lhs, "exp_q(H_q)", rhs))
        },
    ));
    defs.push(def(
        "id_eq18",
        "id_eq18",
        "identity 1 + (1-q)H_q = sum p^q, which is strictly positive",
        ParamSpec::dists(1).with_q(IndexDomain::Off),
        |ctx| {
            let lhs = 1.0 + (1.0 - ctx.q) * en::tsallis(ctx.p(), ctx.qi());
            let rhs = en::power_sum(ctx.p(), ctx.q);
            Ok(identity_chain("1+(1-q)H_q", lhs, "sum(p^q)", rhs))
        },
    ));
    defs.push(def(
        "id_S_convex",
        "id_S_convex",
        "identity S_(r,q) = ((q-1)/(q-r))H_q + ((1-r)/(q-r))H_r",
        ParamSpec::dists(1).with_q(IndexDomain::Off).with_r(IndexDomain::Off).distinct(),
        |ctx| {
            let lhs = en::wada_suyari(ctx.p(), ctx.ri(), ctx.qi())?;
            let rhs = (ctx.q - 1.0) / (ctx.q - ctx.r) * en::tsallis(ctx.p(), ctx.qi())
                + (1.0 - ctx.r) / (ctx.q - ctx.r) * en::tsallis(ctx.p(), ctx.ri());
            Ok(identity_chain("S_(r,q)", lhs, "convex_combination(H_q,H_r)", rhs))
        },
    ));
    defs.push(def(
        "id_fd_decomp_fd",
        "id_fd_decomp",
        "identity l_FD = H(p) + (n-1)H(p') - (n-1)log(n-1) with p'_j = (1-p_j)/(n-1)",
        ParamSpec::dists(1),
        |ctx| {
            let p = ctx.p();
            let n = p.len() as f64;
            let lhs = en::fermi_dirac(p, QIndex::one());
            let rhs = en::shannon(p) + (n - 1.0) * en::shannon(&p.fd_complement()?)
                - (n - 1.0) * (n - 1.0).ln();
            Ok(identity_chain("l_FD", lhs, "decomposition(H,H(p'))", rhs))
        },
    ));
    defs.push(def(
        "id_fd_decomp_be",
        "id_fd_decomp",
        "identity l_BE = H(p) - (n+1)H(p'') + (n+1)log(n+1) with p''_j = (1+p_j)/(n+1); \
         constant sign verified numerically against the printed difference formula",
        ParamSpec::dists(1),
        |ctx| {
            let p = ctx.p();
            let n = p.len() as f64;
            let lhs = en::bose_einstein(p, QIndex::one());
            let rhs = en::shannon(p) - (n + 1.0) * en::shannon(&p.be_complement())
                + (n + 1.0) * (n + 1.0).ln();
            Ok(identity_chain("l_BE", lhs, "decomposition(H,H(p''))", rhs))
        },
    ));
    defs.push(def(
        "id_eq21",
        "id_eq21",
        "identity exp(D_q^R) = exp_(2-q)(D_q^T); q in (0,2) so the companion index stays positive",
        ParamSpec::dists(2).with_q(IndexDomain::Window { lo: 0.0, hi: 2.0 }),
        |ctx| {
            let q = ctx.qi();
            let lhs = dv::renyi_div(ctx.pair(), q)?.exp();
            let rhs = crate::deformed::q_exp(dv::tsallis_div(ctx.pair(), q), QIndex::new(2.0 - ctx.q)?)?;
            Ok(identity_chain("exp(D_R)", lhs, "exp_(2-q)(D_T)", rhs))
        },
    ));
    defs.push(def(
        "id_eq12",
        "id_eq12",
        "identity D^(alpha) = D_q^T / q under alpha = 1-2q, both sides from independent formulas",
        ParamSpec::dists(2).with_q(IndexDomain::Off),
        |ctx| {
            let lhs = dv::alpha_div(ctx.pair(), 1.0 - 2.0 * ctx.q)?;
            let rhs = dv::tsallis_div(ctx.pair(), ctx.qi()) / ctx.q;
            Ok(identity_chain("alpha_div(1-2q)", lhs, "tsallis_div/q", rhs))
        },
    ));
    defs.push(def(
        "id_eq13",
        "id_eq13",
        "identity D_q^R = log(1+(q-1)D_q^T)/(q-1)",
        ParamSpec::dists(2).with_q(IndexDomain::Off),
        |ctx| {
            let lhs = dv::renyi_div(ctx.pair(), ctx.qi())?;
            let rhs = f64::ln_1p((ctx.q - 1.0) * dv::tsallis_div(ctx.pair(), ctx.qi())) / (ctx.q - 1.0);
            Ok(identity_chain("D_R", lhs, "bridge(D_T)", rhs))
        },
    ));
    defs.push(def(
        "id_hat_convex",
        "id_hat_convex",
        "identity D^hat_(q,r) = ((q-1)/(q-r))D_q^T + ((1-r)/(q-r))D_r^T",
        ParamSpec::dists(2).with_q(IndexDomain::Off).with_r(IndexDomain::Off).distinct(),
        |ctx| {
            let lhs = dv::hat_div(ctx.pair(), ctx.qi(), ctx.ri())?;
            let rhs = (ctx.q - 1.0) / (ctx.q - ctx.r) * dv::tsallis_div(ctx.pair(), ctx.qi())
                + (1.0 - ctx.r) / (ctx.q - ctx.r) * dv::tsallis_div(ctx.pair(), ctx.ri());
            Ok(identity_chain("hat_div", lhs, "convex_combination(D_T)", rhs))
        },
    ));

    // limit approach: the two-sided deviation at q = 1 ± 10^{-k} must decay
    // monotonically in k. The max over the two signs is what decays robustly:
    // a single-sided |C·δ + C₂·δ²| can dip near an accidental root of the
    // first-order coefficient, while max over ±δ always picks the branch
    // where the orders add.
    for (id, entropy_side) in [
        ("id_limits_sec6_entropy", true),
        ("id_limits_sec6_div", false),
    ] {
        let spec = if entropy_side {
            ParamSpec::dists(1).with_r(IndexDomain::Off)
        } else {
            ParamSpec::dists(2).with_r(IndexDomain::Off)
        };
        let desc = format!(
            "max over signs of |{}| at q = 1 ± 10^-k decays monotonically for k = 3..6",
            if entropy_side { "H_(r,q) - S_(r,q)" } else { "D^hat_(q,r) - D_(r,q)" },
        );
        defs.push(def(id, "id_limits_sec6", desc, spec, move |ctx| {
            let r = ctx.ri();
            let mut terms = Vec::with_capacity(4);
            for k in 3..=6 {
                let mut dev = 0.0f64;
                for sign in [1.0, -1.0] {
                    let qv = QIndex::new(1.0 + sign * 10f64.powi(-k))?;
                    let d = if entropy_side {
                        (en::biparam_entropy(ctx.p(), r, qv) - en::wada_suyari(ctx.p(), r, qv)?)
                            .abs()
                    } else {
                        (dv::hat_div(ctx.pair(), qv, r)? - dv::biparam_div(ctx.pair(), r, qv))
                            .abs()
                    };
                    dev = dev.max(d);
                }
                terms.push((format!("dev(k={k})"), dev));
            }
            Ok(BoundChain::new(Direction::NonIncreasing, terms))
        }));
    }
}

fn push_divergence_chain_checks(defs: &mut Vec<CheckDef>) {
    // quasilinear divergence chains, bending kernels only
    for (kname, kind) in [("qlog", KernelKind::QLog), ("power", KernelKind::Power)] {
        for (regime_name, qd, sub) in
            [("sub", IndexDomain::Sub, true), ("super", IndexDomain::Super, false)]
        {
            let id: &'static str = Box::leak(format!("thm_2_6_{regime_name}_{kname}").into_boxed_str());
            let desc = format!(
                "quasilinear divergence chain: D_q bracketed by powers of M_psi(r/p) times D_1, psi = {kname} kernel (concave increasing or convex decreasing)",
            );
            defs.push(def(
                id,
                "thm_2_6",
                desc,
                ParamSpec::dists(2).with_q(qd).with_r(IndexDomain::Off),
                move |ctx| {
                    let kernel = kind.build(ctx.r, ctx.q)?;
                    let m = ratio_mean(ctx.pair(), &kernel)?;
                    let u = m.ln();
                    let t = hh_terms(u, ctx.q);
                    let mid = -q_log_of_exp(u, ctx.qi());
                    let labels = [
                        "M^(1-q)*D_1",
                        "avg(M^(1-q),1)*D_1",
                        "D_q",
                        "M^((1-q)/2)*D_1",
                        "D_1",
                    ];
                    Ok(if sub {
                        chain(
                            Direction::NonDecreasing,
                            vec![
                                (labels[0], -t.full),
                                (labels[3], -t.sqrt),
                                (labels[2], mid),
                                (labels[1], -t.half_avg),
                                (labels[4], -t.base),
                            ],
                        )
                    } else {
                        chain(
                            Direction::NonIncreasing,
                            vec![
                                (labels[0], -t.full),
                                (labels[1], -t.half_avg),
                                (labels[2], mid),
                                (labels[3], -t.sqrt),
                                (labels[4], -t.base),
                            ],
                        )
                    })
                },
            ));
        }
    }

    // biparametric quasilinear divergence chains
    for (kname, kind) in [("qlog", KernelKind::QLog), ("power", KernelKind::Power)] {
        for (regime_name, qd, sub) in
            [("sub", IndexDomain::Sub, true), ("super", IndexDomain::Super, false)]
        {
            let id: &'static str = Box::leak(format!("thm_3_5_{regime_name}_{kname}").into_boxed_str());
            let desc = format!(
                "biparametric quasilinear divergence chain: D_(r,q) bracketed by exp((q-1)D_r)-weighted multiples of D_r, psi = {kname} kernel; directions follow the sandwich applied at M_psi(r/p) <= 1",
            );
            defs.push(def(
                id,
                "thm_3_5",
                desc,
                ParamSpec::dists(2).with_q(qd).with_r(IndexDomain::Off),
                move |ctx| {
                    let kernel = kind.build(ctx.r, ctx.q)?;
                    let m = ratio_mean(ctx.pair(), &kernel)?;
                    let u = q_log_of_exp(m.ln(), ctx.ri());
                    let t = hh_terms(u, ctx.q);
                    let mid = -q_log_of_exp(u, ctx.qi());
                    let labels = [
                        "exp((q-1)D_r)*D_r",
                        "avg(exp((q-1)D_r),1)*D_r",
                        "D_(r,q)",
                        "exp((q-1)D_r/2)*D_r",
                        "D_r",
                    ];
                    Ok(if sub {
                        chain(
                            Direction::NonIncreasing,
                            vec![
                                (labels[4], -t.base),
                                (labels[1], -t.half_avg),
                                (labels[2], mid),
                                (labels[3], -t.sqrt),
                                (labels[0], -t.full),
                            ],
                        )
                    } else {
                        chain(
                            Direction::NonIncreasing,
                            vec![
                                (labels[0], -t.full),
                                (labels[1], -t.half_avg),
                                (labels[2], mid),
                                (labels[3], -t.sqrt),
                                (labels[4], -t.base),
                            ],
                        )
                    })
                },
            ));
        }
    }

    defs.push(def(
        "rem_3_6_div_sub",
        "rem_3_6",
        "for 0 < q < 1: D_(r,q) <= D_r",
        ParamSpec::dists(2).with_q(IndexDomain::Sub).with_r(IndexDomain::Off),
        |ctx| {
            Ok(chain(
                Direction::NonIncreasing,
                vec![
                    ("D_r", dv::tsallis_div(ctx.pair(), ctx.ri())),
                    ("D_(r,q)", dv::biparam_div(ctx.pair(), ctx.ri(), ctx.qi())),
                ],
            ))
        },
    ));
    defs.push(def(
        "rem_3_6_div_super",
        "rem_3_6",
        "for q > 1: D_(r,q) >= D_r",
        ParamSpec::dists(2).with_q(IndexDomain::Super).with_r(IndexDomain::Off),
        |ctx| {
            Ok(chain(
                Direction::NonIncreasing,
                vec![
                    ("D_(r,q)", dv::biparam_div(ctx.pair(), ctx.ri(), ctx.qi())),
                    ("D_r", dv::tsallis_div(ctx.pair(), ctx.ri())),
                ],
            ))
        },
    ));

    // quasi-divergence ordering, stated over the raw sums so the q = 1 limit
    // of each term is consistent (sum p log(r/p) = -KL)
    defs.push(def(
        "lemma_D_ordering_sub",
        "lemma_D_ordering",
        "for 0 < q < 1: sum p log(r/p) <= sum p ln_q(r/p) <= sum p^q r^(1-q) log(r/p)",
        ParamSpec::dists(2).with_q(IndexDomain::Sub),
        |ctx| {
            Ok(chain(
                Direction::NonDecreasing,
                vec![
                    ("sum p*log(r/p)", -dv::kl(ctx.pair())),
                    ("sum p*ln_q(r/p)", -dv::tsallis_div(ctx.pair(), ctx.qi())),
                    ("sum p^q r^(1-q)*log(r/p)", dv::quasi_div(ctx.pair(), ctx.qi())),
                ],
            ))
        },
    ));
    defs.push(def(
        "lemma_D_ordering_super",
        "lemma_D_ordering",
        "for q > 1: sum p^q r^(1-q) log(r/p) <= sum p ln_q(r/p) <= sum p log(r/p)",
        ParamSpec::dists(2).with_q(IndexDomain::Super),
        |ctx| {
            Ok(chain(
                Direction::NonDecreasing,
                vec![
                    ("sum p^q r^(1-q)*log(r/p)", dv::quasi_div(ctx.pair(), ctx.qi())),
                    ("sum p*ln_q(r/p)", -dv::tsallis_div(ctx.pair(), ctx.qi())),
                    ("sum p*log(r/p)", -dv::kl(ctx.pair())),
                ],
            ))
        },
    ));

    // two-sided bounds for the biparametric divergence; sign-resolved so the
    // quasi-divergence terms enter as -quasi_div (which equals KL at q = 1)
    defs.push(def(
        "prop_3_4_a",
        "prop_3_4",
        "for r > 1, 0 < q < 1: a*(-D_(q)) + b*D_1 <= D^hat_(q,r) <= a*D_1 + b*(-D_(r)), a = (1-q)/(r-q), b = (r-1)/(r-q)",
        ParamSpec::dists(2).with_q(IndexDomain::Sub).with_r(IndexDomain::Super),
        |ctx| {
            let a = (1.0 - ctx.q) / (ctx.r - ctx.q);
            let b = (ctx.r - 1.0) / (ctx.r - ctx.q);
            let d1 = dv::kl(ctx.pair());
            let nq = -dv::quasi_div(ctx.pair(), ctx.qi());
            let nr = -dv::quasi_div(ctx.pair(), ctx.ri());
            Ok(chain(
                Direction::NonDecreasing,
                vec![
                    ("lower_mix(-quasi_q,D_1)", a * nq + b * d1),
                    ("hat_div", dv::hat_div(ctx.pair(), ctx.qi(), ctx.ri())?),
                    ("upper_mix(D_1,-quasi_r)", a * d1 + b * nr),
                ],
            ))
        },
    ));
    defs.push(def(
        "prop_3_4_b",
        "prop_3_4",
        "for 0 < r < 1, q > 1: a*D_1 + b*(-D_(r)) <= D^hat_(q,r) <= a*(-D_(q)) + b*D_1, a = (q-1)/(q-r), b = (1-r)/(q-r)",
        ParamSpec::dists(2).with_q(IndexDomain::Super).with_r(IndexDomain::Sub),
        |ctx| {
            let a = (ctx.q - 1.0) / (ctx.q - ctx.r);
            let b = (1.0 - ctx.r) / (ctx.q - ctx.r);
            let d1 = dv::kl(ctx.pair());
            let nq = -dv::quasi_div(ctx.pair(), ctx.qi());
            let nr = -dv::quasi_div(ctx.pair(), ctx.ri());
            Ok(chain(
                Direction::NonDecreasing,
                vec![
                    ("lower_mix(D_1,-quasi_r)", a * d1 + b * nr),
                    ("hat_div", dv::hat_div(ctx.pair(), ctx.qi(), ctx.ri())?),
                    ("upper_mix(-quasi_q,D_1)", a * nq + b * d1),
                ],
            ))
        },
    ));

    // Renyi vs Tsallis divergence ordering
    defs.push(def(
        "ineq_14_15_sub",
        "ineq_14_15",
        "for 0 < q < 1: D_q^R >= D_q^T",
        ParamSpec::dists(2).with_q(IndexDomain::Sub),
        |ctx| {
            Ok(chain(
                Direction::NonIncreasing,
                vec![
                    ("D_R", dv::renyi_div(ctx.pair(), ctx.qi())?),
                    ("D_T", dv::tsallis_div(ctx.pair(), ctx.qi())),
                ],
            ))
        },
    ));
    defs.push(def(
        "ineq_14_15_super",
        "ineq_14_15",
        "for q > 1: D_q^T >= D_q^R",
        ParamSpec::dists(2).with_q(IndexDomain::Super),
        |ctx| {
            Ok(chain(
                Direction::NonIncreasing,
                vec![
                    ("D_T", dv::tsallis_div(ctx.pair(), ctx.qi())),
                    ("D_R", dv::renyi_div(ctx.pair(), ctx.qi())?),
                ],
            ))
        },
    ));

    defs.push(def(
        "hypodiv",
        "hypodiv",
        "D_q^T(p || (p+r)/2) <= D_((1+q)/2)^T(p || r) / 2",
        ParamSpec::dists(2).with_q(IndexDomain::Off),
        |ctx| {
            let m = ctx.pair().mixture(0.5)?;
            let pm = pair_of(ctx.pair().p(), m);
            Ok(chain(
                Direction::NonIncreasing,
                vec![
                    ("half*D_T_((1+q)/2)(p||r)", 0.5 * dv::tsallis_div(ctx.pair(), QIndex::new(0.5 * (1.0 + ctx.q))?)),
                    ("D_T_q(p||mix_half)", dv::tsallis_div(&pm, ctx.qi())),
                ],
            ))
        },
    ));

    // mixture-parameter chain; the forward direction holds in both regimes
    // (the proof's mean inequalities are regime-independent), registered as
    // two ids per the case-split convention
    for (id, qd) in [
        ("thm_4_1_sub", IndexDomain::Sub),
        ("thm_4_1_super", IndexDomain::Super),
    ] {
        defs.push(def(
            id,
            "thm_4_1",
            "D_q^T(p||(1-v)p+vr) <= v*D_(1-(1-q)v)^T(p||r) <= D_q^T(vp+(1-v)r||r)/v + ((1-v)/v)ln_q(1/(1-v))",
            ParamSpec::dists(2).with_q(qd).with_v(),
            |ctx| {
                let v = ctx.v;
                let q = ctx.qi();
                let mix_v = ctx.pair().mixture(v)?;
                let t1 = dv::tsallis_div(&pair_of(ctx.pair().p(), mix_v), q);
                let qprime = QIndex::new(1.0 - (1.0 - ctx.q) * v)?;
                let t2 = v * dv::tsallis_div(ctx.pair(), qprime);
                let mix_1mv = ctx.pair().mixture(1.0 - v)?;
                let tail = crate::deformed::q_log(1.0 / (1.0 - v), q)?;
                let t3 = dv::tsallis_div(
                    &DivergencePair::new(mix_1mv, ctx.pair().r().clone())?,
                    q,
                ) / v
                    + (1.0 - v) / v * tail;
                Ok(chain(
                    Direction::NonDecreasing,
                    vec![
                        ("D_T_q(p||mix_v)", t1),
                        ("v*D_T_q'(p||r)", t2),
                        ("D_T_q(mix'||r)/v + tail", t3),
                    ],
                ))
            },
        ));
    }

    defs.push(def(
        "lin_half",
        "lin_half",
        "Lin divergence D_1(p||(p+r)/2) <= D_1(p||r)/2",
        ParamSpec::dists(2),
        |ctx| {
            Ok(chain(
                Direction::NonIncreasing,
                vec![("half*KL", 0.5 * dv::kl(ctx.pair())), ("lin", dv::lin(ctx.pair()))],
            ))
        },
    ));
    defs.push(def(
        "js_quarter",
        "js_quarter",
        "Jensen-Shannon <= Jeffreys / 4",
        ParamSpec::dists(2),
        |ctx| {
            Ok(chain(
                Direction::NonIncreasing,
                vec![
                    ("quarter*jeffreys", 0.25 * dv::jeffreys(ctx.pair())),
                    ("jensen_shannon", dv::jensen_shannon(ctx.pair())),
                ],
            ))
        },
    ));
    defs.push(def(
        "prop_4_2",
        "prop_4_2",
        "D_1(p||m) - D_1(r||m) <= D_1(p||r) with m the equal mixture",
        ParamSpec::dists(2),
        |ctx| {
            let diff = dv::lin(ctx.pair()) - dv::lin(&ctx.pair().swapped());
            Ok(chain(
                Direction::NonIncreasing,
                vec![("KL", dv::kl(ctx.pair())), ("lin(p,r)-lin(r,p)", diff)],
            ))
        },
    ));
}

static CATALOG: Lazy<Vec<CheckDef>> = Lazy::new(|| {
    let mut defs = Vec::new();
    push_lemma_scalar_checks(&mut defs);
    push_entropy_chain_checks(&mut defs);
    push_identity_checks(&mut defs);
    push_divergence_chain_checks(&mut defs);
    #[cfg(feature = "selftest")]
    defs.push(CheckDef {
        id: "selftest_broken",
        family: "selftest",
        description: "deliberately violated chain for exercising the failure exit path".into(),
        spec: ParamSpec::dists(0),
        hidden: true,
        eval: Box::new(|_ctx| {
            Ok(chain(Direction::NonIncreasing, vec![("lo", 0.0), ("hi", 1.0)]))
        }),
    });
    defs
});

/// The full check catalog in registration order.
pub fn catalog() -> &'static [CheckDef] {
    &CATALOG
}

/// Stable catalog listing with parameter domains.
pub fn list_checks() -> Vec<CheckInfo> {
    catalog()
        .iter()
        .filter(|d| !d.hidden)
        .map(|d| {
            let mut scalars = Vec::new();
            if let Some(x) = d.spec.x {
                scalars.push(ScalarInfo {
                    name: "x".into(),
                    domain: match x {
                        XDomain::Unit => "(0, 1]".into(),
                        XDomain::Tail => "[1, inf)".into(),
                    },
                });
            }
            if let Some(q) = d.spec.q {
                scalars.push(ScalarInfo { name: "q".into(), domain: q.describe() });
            }
            if let Some(r) = d.spec.r {
                let mut domain = r.describe();
                if d.spec.distinct_qr {
                    domain.push_str(", distinct from q");
                }
                scalars.push(ScalarInfo { name: "r".into(), domain });
            }
            if d.spec.v {
                scalars.push(ScalarInfo { name: "v".into(), domain: "(0, 1)".into() });
            }
            CheckInfo {
                id: d.id.into(),
                family: d.family.into(),
                description: d.description.clone(),
                distributions: d.spec.dists,
                scalars,
            }
        })
        .collect()
}

/// Expand a selection of check ids / family names / "all" into catalog
/// entries, preserving registration order and deduplicating.
pub fn expand_check_selection(names: &[String]) -> Result<Vec<&'static CheckDef>, CheckError> {
    let cat = catalog();
    if names.iter().any(|n| n == "all") {
        return Ok(cat.iter().filter(|d| !d.hidden).collect());
    }
    let mut picked = vec![false; cat.len()];
    for name in names {
        let mut hit = false;
        for (i, d) in cat.iter().enumerate() {
            if d.id == name || (!d.hidden && d.family == name) {
                picked[i] = true;
                hit = true;
            }
        }
        if !hit {
            return Err(CheckError::UnknownCheck(name.clone()));
        }
    }
    Ok(cat.iter().zip(picked).filter_map(|(d, p)| p.then_some(d)).collect())
}

fn validate_instance(def: &CheckDef, inst: &CheckInstance) -> Result<EvalCtx, CheckError> {
    let oops = |reason: String| CheckError::ParameterOutOfDomain {
        check: def.id.to_string(),
        reason,
    };

    if inst.distributions.len() != def.spec.dists as usize {
        return Err(oops(format!(
            "expected {} distribution(s), got {}",
            def.spec.dists,
            inst.distributions.len()
        )));
    }
    let expected = def.spec.scalar_names();
    for key in inst.scalars.keys() {
        if !expected.contains(&key.as_str()) {
            return Err(oops(format!("unexpected parameter `{key}`")));
        }
    }
    for name in &expected {
        if !inst.scalars.contains_key(*name) {
            return Err(oops(format!("missing parameter `{name}`")));
        }
    }

    let get = |name: &str| inst.scalars.get(name).copied().unwrap_or(f64::NAN);
    let (x, q, r, v) = (get("x"), get("q"), get("r"), get("v"));

    if let Some(xd) = def.spec.x {
        let ok = x.is_finite()
            && x > 0.0
            && match xd {
                XDomain::Unit => x <= 1.0,
                XDomain::Tail => x >= 1.0,
            };
        if !ok {
            return Err(oops(format!("x = {x} outside {xd:?} domain")));
        }
    }
    if let Some(qd) = def.spec.q {
        if !qd.admits(q) {
            return Err(oops(format!("q = {q} outside domain {}", qd.describe())));
        }
    }
    if let Some(rd) = def.spec.r {
        if !rd.admits(r) {
            return Err(oops(format!("r = {r} outside domain {}", rd.describe())));
        }
    }
    if def.spec.distinct_qr && (q - r).abs() <= EPS_Q {
        return Err(oops(format!("q = {q} and r = {r} must differ")));
    }
    if def.spec.v && !(v > 0.0 && v < 1.0) {
        return Err(oops(format!("v = {v} outside (0, 1)")));
    }

    let mut dists = Vec::with_capacity(inst.distributions.len());
    for raw in &inst.distributions {
        dists.push(ProbabilityDistribution::new(raw.clone())?);
    }
    let (p, pair) = match def.spec.dists {
        0 => (None, None),
        1 => (Some(dists.remove(0)), None),
        2 => {
            let a = dists.remove(0);
            let b = dists.remove(0);
            (None, Some(DivergencePair::new(a, b)?))
        }
        _ => unreachable!("catalog uses at most two distributions"),
    };

    Ok(EvalCtx { p, pair, x, q, r, v })
}

fn resolve<'a>(inst: &CheckInstance) -> Result<(&'a CheckDef, EvalCtx), CheckError> {
    let cat = catalog();
    if let Some(d) = cat.iter().find(|d| d.id == inst.check_id) {
        let ctx = validate_instance(d, inst)?;
        return Ok((d, ctx));
    }
    let family: Vec<&CheckDef> = cat.iter().filter(|d| d.family == inst.check_id).collect();
    if family.is_empty() {
        return Err(CheckError::UnknownCheck(inst.check_id.clone()));
    }
    let mut last_err = None;
    for d in family {
        match validate_instance(d, inst) {
            Ok(ctx) => return Ok((d, ctx)),
            Err(e) => last_err = Some(e),
        }
    }
    match last_err.expect("family is nonempty") {
        CheckError::ParameterOutOfDomain { reason, .. } => Err(CheckError::ParameterOutOfDomain {
            check: inst.check_id.clone(),
            reason: format!("no member of the family accepts the parameters ({reason})"),
        }),
        e => Err(e),
    }
}

/// Evaluate one check instance at tolerance `tol`.
///
/// `inst.check_id` may be an exact catalog id or a family name, in which
/// case the member whose parameter domains admit the given scalars runs.
pub fn run_check(inst: &CheckInstance, tol: f64) -> Result<CheckOutcome, CheckError> {
    let tol_ok = tol > 0.0;
    if !tol_ok {
        return Err(CheckError::BadConfig(format!("tol must be > 0, got {tol}")));
    }
    let (def, ctx) = resolve(inst)?;
    let chain = (def.eval)(&ctx)?;
    let verdict = chain.verify(tol);
    Ok(CheckOutcome {
        chain,
        pass: verdict.pass,
        slack: verdict.min_slack,
        scale: verdict.scale,
    })
}
