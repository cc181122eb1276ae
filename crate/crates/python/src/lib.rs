//! Python bindings for the deformed-logarithm entropy/divergence library
//! and its verification engine.
//!
//! Distributions are plain Python lists of floats, validated on every call
//! (strictly positive weights summing to 1). Quasilinear kernels and modes
//! use the same compact specs as the CLI: `log`, `power:<e>`, `qlog:<q>`,
//! `bilog:<r>:<q>` and `plain`, `tsallis:<q>`, `biparam:<r>:<q>`.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};

use qent::checks::{self, CampaignConfig, CheckInstance, RangeF};
use qent::deformed;
use qent::divergence as dv;
use qent::entropy as en;
use qent::simplex::{DivergencePair, ProbabilityDistribution};
use qent::{PsiKernel, QIndex};

fn err<E: std::fmt::Display>(e: E) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn qi(v: f64) -> PyResult<QIndex> {
    QIndex::new(v).map_err(err)
}

fn dist(weights: Vec<f64>) -> PyResult<ProbabilityDistribution> {
    ProbabilityDistribution::new(weights).map_err(err)
}

fn pair(p: Vec<f64>, r: Vec<f64>) -> PyResult<DivergencePair> {
    DivergencePair::new(dist(p)?, dist(r)?).map_err(err)
}

fn kernel(spec: &str) -> PyResult<PsiKernel> {
    spec.parse().map_err(err::<String>)
}

fn mode(spec: &str) -> PyResult<en::QuasilinearMode> {
    spec.parse().map_err(err::<String>)
}

// -- scalar deformation calculus --------------------------------------------

#[pyfunction]
fn q_log(x: f64, q: f64) -> PyResult<f64> {
    deformed::q_log(x, qi(q)?).map_err(err)
}

#[pyfunction]
fn q_exp(x: f64, q: f64) -> PyResult<f64> {
    deformed::q_exp(x, qi(q)?).map_err(err)
}

#[pyfunction]
fn biparam_log(x: f64, r: f64, q: f64) -> PyResult<f64> {
    deformed::biparam_log(x, qi(r)?, qi(q)?).map_err(err)
}

#[pyfunction]
fn biparam_exp(x: f64, r: f64, q: f64) -> PyResult<f64> {
    deformed::biparam_exp(x, qi(r)?, qi(q)?).map_err(err)
}

#[pyfunction]
fn hh_ratio_bounds(x: f64, q: f64) -> PyResult<(f64, f64)> {
    deformed::hh_ratio_bounds(x, qi(q)?).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (x, q, nodes = 64))]
fn qlog_quadrature_oracle(x: f64, q: f64, nodes: usize) -> PyResult<f64> {
    deformed::qlog_quadrature_oracle(x, qi(q)?, nodes).map_err(err)
}

// -- simplex -----------------------------------------------------------------

#[pyfunction]
fn validate(weights: Vec<f64>) -> PyResult<Vec<f64>> {
    Ok(dist(weights)?.weights().to_vec())
}

#[pyfunction]
fn uniform(n: usize) -> PyResult<Vec<f64>> {
    Ok(ProbabilityDistribution::uniform(n).map_err(err)?.weights().to_vec())
}

#[pyfunction]
#[pyo3(signature = (n, seed, floor = 1e-9))]
fn sample(n: usize, seed: u64, floor: f64) -> PyResult<Vec<f64>> {
    Ok(ProbabilityDistribution::sample(n, seed, floor)
        .map_err(err)?
        .weights()
        .to_vec())
}

#[pyfunction]
fn fd_complement(weights: Vec<f64>) -> PyResult<Vec<f64>> {
    Ok(dist(weights)?.fd_complement().map_err(err)?.weights().to_vec())
}

#[pyfunction]
fn be_complement(weights: Vec<f64>) -> PyResult<Vec<f64>> {
    Ok(dist(weights)?.be_complement().weights().to_vec())
}

#[pyfunction]
fn mixture(p: Vec<f64>, r: Vec<f64>, v: f64) -> PyResult<Vec<f64>> {
    Ok(pair(p, r)?.mixture(v).map_err(err)?.weights().to_vec())
}

// -- entropies ----------------------------------------------------------------

#[pyfunction]
fn shannon(p: Vec<f64>) -> PyResult<f64> {
    Ok(en::shannon(&dist(p)?))
}

#[pyfunction]
fn tsallis(p: Vec<f64>, q: f64) -> PyResult<f64> {
    Ok(en::tsallis(&dist(p)?, qi(q)?))
}

#[pyfunction]
fn renyi(p: Vec<f64>, q: f64) -> PyResult<f64> {
    en::renyi(&dist(p)?, qi(q)?).map_err(err)
}

#[pyfunction]
fn quasi_entropy(p: Vec<f64>, q: f64) -> PyResult<f64> {
    Ok(en::quasi_entropy(&dist(p)?, qi(q)?))
}

#[pyfunction]
fn wada_suyari(p: Vec<f64>, r: f64, q: f64) -> PyResult<f64> {
    en::wada_suyari(&dist(p)?, qi(r)?, qi(q)?).map_err(err)
}

#[pyfunction]
fn biparam_entropy(p: Vec<f64>, r: f64, q: f64) -> PyResult<f64> {
    Ok(en::biparam_entropy(&dist(p)?, qi(r)?, qi(q)?))
}

#[pyfunction]
fn arimoto_entropy(p: Vec<f64>, r: f64, q: f64) -> PyResult<f64> {
    en::arimoto_entropy(&dist(p)?, qi(r)?, qi(q)?).map_err(err)
}

#[pyfunction]
fn fermi_dirac(p: Vec<f64>, r: f64) -> PyResult<f64> {
    Ok(en::fermi_dirac(&dist(p)?, qi(r)?))
}

#[pyfunction]
fn bose_einstein(p: Vec<f64>, r: f64) -> PyResult<f64> {
    Ok(en::bose_einstein(&dist(p)?, qi(r)?))
}

#[pyfunction]
fn quasilinear_entropy(p: Vec<f64>, psi: &str, mode_spec: &str) -> PyResult<f64> {
    en::quasilinear_entropy(&dist(p)?, &kernel(psi)?, mode(mode_spec)?).map_err(err)
}

// -- divergences ---------------------------------------------------------------

#[pyfunction]
fn kl(p: Vec<f64>, r: Vec<f64>) -> PyResult<f64> {
    Ok(dv::kl(&pair(p, r)?))
}

#[pyfunction]
fn tsallis_divergence(p: Vec<f64>, r: Vec<f64>, q: f64) -> PyResult<f64> {
    Ok(dv::tsallis_div(&pair(p, r)?, qi(q)?))
}

#[pyfunction]
fn renyi_divergence(p: Vec<f64>, r: Vec<f64>, q: f64) -> PyResult<f64> {
    dv::renyi_div(&pair(p, r)?, qi(q)?).map_err(err)
}

#[pyfunction]
fn alpha_divergence(p: Vec<f64>, r: Vec<f64>, alpha: f64) -> PyResult<f64> {
    dv::alpha_div(&pair(p, r)?, alpha).map_err(err)
}

#[pyfunction]
fn hat_divergence(p: Vec<f64>, r: Vec<f64>, q: f64, s: f64) -> PyResult<f64> {
    dv::hat_div(&pair(p, r)?, qi(q)?, qi(s)?).map_err(err)
}

#[pyfunction]
fn quasi_divergence(p: Vec<f64>, r: Vec<f64>, q: f64) -> PyResult<f64> {
    Ok(dv::quasi_div(&pair(p, r)?, qi(q)?))
}

#[pyfunction]
fn biparam_divergence(p: Vec<f64>, r: Vec<f64>, s: f64, q: f64) -> PyResult<f64> {
    Ok(dv::biparam_div(&pair(p, r)?, qi(s)?, qi(q)?))
}

#[pyfunction]
fn arimoto_divergence(p: Vec<f64>, r: Vec<f64>, s: f64, q: f64) -> PyResult<f64> {
    dv::arimoto_div(&pair(p, r)?, qi(s)?, qi(q)?).map_err(err)
}

#[pyfunction]
fn jeffreys(p: Vec<f64>, r: Vec<f64>) -> PyResult<f64> {
    Ok(dv::jeffreys(&pair(p, r)?))
}

#[pyfunction]
fn jensen_shannon(p: Vec<f64>, r: Vec<f64>) -> PyResult<f64> {
    Ok(dv::jensen_shannon(&pair(p, r)?))
}

#[pyfunction]
fn lin(p: Vec<f64>, r: Vec<f64>) -> PyResult<f64> {
    Ok(dv::lin(&pair(p, r)?))
}

#[pyfunction]
fn quasilinear_divergence(p: Vec<f64>, r: Vec<f64>, psi: &str, mode_spec: &str) -> PyResult<f64> {
    dv::quasilinear_div(&pair(p, r)?, &kernel(psi)?, mode(mode_spec)?).map_err(err)
}

// -- checks ---------------------------------------------------------------------

#[pyfunction]
fn list_checks(py: Python<'_>) -> PyResult<Py<PyList>> {
    let out = PyList::empty(py);
    for info in checks::list_checks() {
        let d = PyDict::new(py);
        d.set_item("id", info.id)?;
        d.set_item("family", info.family)?;
        d.set_item("description", info.description)?;
        d.set_item("distributions", info.distributions)?;
        let scalars = PyList::empty(py);
        for s in info.scalars {
            let sd = PyDict::new(py);
            sd.set_item("name", s.name)?;
            sd.set_item("domain", s.domain)?;
            scalars.append(sd)?;
        }
        d.set_item("scalars", scalars)?;
        out.append(d)?;
    }
    Ok(out.into())
}

#[pyfunction]
#[pyo3(signature = (check_id, tol = 1e-9, p = None, r = None, x = None, q = None, s = None, v = None))]
#[allow(clippy::too_many_arguments)]
fn run_check(
    py: Python<'_>,
    check_id: &str,
    tol: f64,
    p: Option<Vec<f64>>,
    r: Option<Vec<f64>>,
    x: Option<f64>,
    q: Option<f64>,
    s: Option<f64>,
    v: Option<f64>,
) -> PyResult<Py<PyDict>> {
    let mut inst = CheckInstance::new(check_id);
    if let Some(p) = p {
        inst.distributions.push(p);
    }
    if let Some(r) = r {
        inst.distributions.push(r);
    }
    for (name, value) in [("x", x), ("q", q), ("r", s), ("v", v)] {
        if let Some(value) = value {
            inst.scalars.insert(name.into(), value);
        }
    }
    let out = checks::run_check(&inst, tol).map_err(err)?;
    let d = PyDict::new(py);
    d.set_item("labels", out.chain.labels)?;
    d.set_item("values", out.chain.values)?;
    d.set_item(
        "direction",
        match out.chain.direction {
            checks::Direction::NonDecreasing => "non-decreasing",
            checks::Direction::NonIncreasing => "non-increasing",
        },
    )?;
    d.set_item("pass", out.pass)?;
    d.set_item("slack", out.slack)?;
    d.set_item("scale", out.scale)?;
    Ok(d.into())
}

/// Run a verification campaign; returns (pass, report-json) where the JSON
/// string carries exactly the bytes the CLI writes.
#[pyfunction]
#[pyo3(signature = (
    checks = vec!["all".to_string()], trials = 1000, seed = 0,
    n = (2, 16), q_range = (0.05, 5.0), r_range = (0.05, 5.0), band = 1e-3,
    v_range = (1e-3, 1.0 - 1e-6), x_range = (1e-3, 1e3), tol = 1e-9, floor = 1e-9
))]
#[allow(clippy::too_many_arguments)]
fn run_campaign(
    checks: Vec<String>,
    trials: u64,
    seed: u64,
    n: (usize, usize),
    q_range: (f64, f64),
    r_range: (f64, f64),
    band: f64,
    v_range: (f64, f64),
    x_range: (f64, f64),
    tol: f64,
    floor: f64,
) -> PyResult<(bool, String)> {
    let cfg = CampaignConfig {
        checks,
        trials,
        seed,
        n_range: n,
        q_range: RangeF::new(q_range.0, q_range.1),
        r_range: RangeF::new(r_range.0, r_range.1),
        band,
        v_range: RangeF::new(v_range.0, v_range.1),
        x_range: RangeF::new(x_range.0, x_range.1),
        tol,
        floor,
    };
    let report = checks::run_campaign(&cfg).map_err(err)?;
    let body = serde_json::to_string_pretty(&report).map_err(err)?;
    Ok((report.pass, format!("{body}\n")))
}

#[pymodule]
fn qent_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(q_log, m)?)?;
    m.add_function(wrap_pyfunction!(q_exp, m)?)?;
    m.add_function(wrap_pyfunction!(biparam_log, m)?)?;
    m.add_function(wrap_pyfunction!(biparam_exp, m)?)?;
    m.add_function(wrap_pyfunction!(hh_ratio_bounds, m)?)?;
    m.add_function(wrap_pyfunction!(qlog_quadrature_oracle, m)?)?;
    m.add_function(wrap_pyfunction!(validate, m)?)?;
    m.add_function(wrap_pyfunction!(uniform, m)?)?;
    m.add_function(wrap_pyfunction!(sample, m)?)?;
    m.add_function(wrap_pyfunction!(fd_complement, m)?)?;
    m.add_function(wrap_pyfunction!(be_complement, m)?)?;
    m.add_function(wrap_pyfunction!(mixture, m)?)?;
    m.add_function(wrap_pyfunction!(shannon, m)?)?;
    m.add_function(wrap_pyfunction!(tsallis, m)?)?;
    m.add_function(wrap_pyfunction!(renyi, m)?)?;
    m.add_function(wrap_pyfunction!(quasi_entropy, m)?)?;
    m.add_function(wrap_pyfunction!(wada_suyari, m)?)?;
    m.add_function(wrap_pyfunction!(biparam_entropy, m)?)?;
    m.add_function(wrap_pyfunction!(arimoto_entropy, m)?)?;
    m.add_function(wrap_pyfunction!(fermi_dirac, m)?)?;
    m.add_function(wrap_pyfunction!(bose_einstein, m)?)?;
    m.add_function(wrap_pyfunction!(quasilinear_entropy, m)?)?;
    m.add_function(wrap_pyfunction!(kl, m)?)?;
    m.add_function(wrap_pyfunction!(tsallis_divergence, m)?)?;
    m.add_function(wrap_pyfunction!(renyi_divergence, m)?)?;
    m.add_function(wrap_pyfunction!(alpha_divergence, m)?)?;
    m.add_function(wrap_pyfunction!(hat_divergence, m)?)?;
    m.add_function(wrap_pyfunction!(quasi_divergence, m)?)?;
    m.add_function(wrap_pyfunction!(biparam_divergence, m)?)?;
    m.add_function(wrap_pyfunction!(arimoto_divergence, m)?)?;
    m.add_function(wrap_pyfunction!(jeffreys, m)?)?;
    m.add_function(wrap_pyfunction!(jensen_shannon, m)?)?;
    m.add_function(wrap_pyfunction!(lin, m)?)?;
    m.add_function(wrap_pyfunction!(quasilinear_divergence, m)?)?;
    m.add_function(wrap_pyfunction!(list_checks, m)?)?;
    m.add_function(wrap_pyfunction!(run_check, m)?)?;
    m.add_function(wrap_pyfunction!(run_campaign, m)?)?;
    Ok(())
}
