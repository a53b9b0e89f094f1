//! Python bindings for the symmetry breaking operator engine.
//!
//! Exact rationals cross the boundary as "p/q" strings so nothing is ever
//! rounded; floating-point values appear only where the underlying operation
//! is itself numerical (quadrature).

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use sbo_core::cocycle::{self, ArrowKey};
use sbo_core::gegenbauer;
use sbo_core::harmonics::{self, PolyN};
use sbo_core::quad;
use sbo_core::rat::{pochhammer as poch, Rat};
use sbo_core::sbo::{self, Family};

fn err(e: sbo_core::Error) -> PyErr {
    match e {
        sbo_core::Error::ParseRational(_) | sbo_core::Error::InvalidParams(_) => {
            PyValueError::new_err(e.to_string())
        }
        other => PyRuntimeError::new_err(other.to_string()),
    }
}

fn rat(s: &str) -> PyResult<Rat> {
    s.parse().map_err(err)
}

fn family_seq(
    p: &sbo_core::Params,
    family: &str,
    cutoff: u32,
) -> PyResult<sbo::ScalarSeq> {
    let family: Family = family.parse().map_err(err)?;
    match family {
        Family::A => sbo::seq_a(p, cutoff),
        Family::A1 => sbo::seq_a1(p, cutoff),
        Family::A2 => sbo::seq_a2(p, cutoff),
        Family::B => sbo::seq_b(p, cutoff),
        Family::C => sbo::seq_c(p, cutoff),
        Family::Custom(_) => return Err(PyValueError::new_err("no closed form")),
    }
    .map_err(err)
}

/// A parameter point (n, lambda1, lambda2, nu1, nu2) with rational entries.
#[pyclass(frozen, name = "Params")]
struct PyParams {
    inner: sbo_core::Params,
}

#[pymethods]
impl PyParams {
    #[new]
    fn new(n: u32, lambda1: &str, lambda2: &str, nu1: &str, nu2: &str) -> PyResult<Self> {
        let inner = sbo_core::Params::from_strs(n, lambda1, lambda2, nu1, nu2).map_err(err)?;
        Ok(PyParams { inner })
    }

    fn __repr__(&self) -> String {
        let p = &self.inner;
        format!(
            "Params(n={}, lambda1={}, lambda2={}, nu1={}, nu2={})",
            p.n, p.lambda1, p.lambda2, p.nu1, p.nu2
        )
    }

    /// Multiplicity, basis labels and case tag as a JSON string.
    fn classify(&self) -> String {
        sbo::classify(&self.inner).to_json().to_string()
    }

    /// Derived constants as (name, "p/q") pairs.
    fn derived(&self) -> Vec<(String, String)> {
        let d = self.inner.derive();
        vec![
            ("rho1".into(), d.rho1.to_string()),
            ("rho1p".into(), d.rho1p.to_string()),
            ("lambda_ss".into(), d.lambda_ss.to_string()),
            ("lambda_z".into(), d.lambda_z.to_string()),
            ("nu_ss".into(), d.nu_ss.to_string()),
            ("nu_z".into(), d.nu_z.to_string()),
            ("omega".into(), d.omega.to_string()),
        ]
    }

    /// Exact scalar sequence of a closed-form family as
    /// (alpha, alphap, "p/q") triples.
    fn scalars(&self, family: &str, cutoff: u32) -> PyResult<Vec<(u32, u32, String)>> {
        let seq = family_seq(&self.inner, family, cutoff)?;
        let mut out = Vec::new();
        for alpha in 0..=cutoff {
            for alphap in 0..=alpha {
                out.push((alpha, alphap, seq.value(alpha, alphap).to_string()));
            }
        }
        Ok(out)
    }

    /// Number of exact relation violations of one family at this point.
    fn verify(&self, family: &str, cutoff: u32) -> PyResult<usize> {
        let seq = family_seq(&self.inner, family, cutoff)?;
        Ok(sbo::verify_relations(&seq).len())
    }

    /// Dimension of the exact nullspace of the recurrence system.
    fn solve_dim(&self, cutoff: u32) -> PyResult<usize> {
        Ok(sbo::solve_relations(&self.inner, cutoff).map_err(err)?.len())
    }

    /// Basis of the nullspace as one list of (alpha, alphap, "p/q") per element.
    fn solve(&self, cutoff: u32) -> PyResult<Vec<Vec<(u32, u32, String)>>> {
        let basis = sbo::solve_relations(&self.inner, cutoff).map_err(err)?;
        Ok(basis
            .iter()
            .map(|s| {
                (0..=s.cutoff)
                    .flat_map(|a| (0..=a).map(move |ap| (a, ap)))
                    .map(|(a, ap)| (a, ap, s.value(a, ap).to_string()))
                    .collect()
            })
            .collect())
    }

    /// Residue identities applicable here, as (identity, exact ratio) pairs.
    fn residues(&self, cutoff: u32) -> PyResult<Vec<(String, String)>> {
        let reps = sbo::residue_check(&self.inner, cutoff).map_err(err)?;
        Ok(reps
            .iter()
            .map(|r| (format!("{:?}", r.identity), r.ratio.to_string()))
            .collect())
    }

    /// Relative error of the A-operator quadrature against the exact spectral
    /// prediction on the type (alpha, alphap).
    fn quad_rel_error_a(&self, alpha: u32, alphap: u32) -> PyResult<f64> {
        let p = &self.inner;
        let n = p.n as usize;
        let seq = sbo::seq_a(p, alpha).map_err(err)?;
        let phi = harmonics::harmonic_basis(n, 2 * alphap as usize).remove(0);
        let phit = harmonics::embed(&phi, alpha).map_err(err)?;
        let y: Vec<Rat> = (0..n).map(|i| Rat::ratio(i as i64 + 1, 3)).collect();
        let measured = quad::apply_a(p, &phit, &y).map_err(err)?;
        let yf: Vec<f64> = y.iter().map(Rat::to_f64).collect();
        let norm = yf.iter().map(|t| t * t).sum::<f64>().sqrt();
        let mut point: Vec<f64> = yf.into_iter().map(|t| t / norm).collect();
        point.push(0.0);
        let predicted = quad::prefactor_f64(&seq.prefactor)
            * seq.value(alpha, alphap).to_f64()
            * phit.eval_f64(&point);
        let scale = predicted.abs().max(measured.abs()).max(1e-30);
        Ok((measured - predicted).abs() / scale)
    }
}

/// Coefficients of the Gegenbauer polynomial C_N^lambda, constant term first.
#[pyfunction]
fn gegenbauer_coeffs(n: u32, lam: &str) -> PyResult<Vec<String>> {
    let lam = rat(lam)?;
    Ok(gegenbauer::gegenbauer(n, &lam)
        .coeffs()
        .iter()
        .map(Rat::to_string)
        .collect())
}

/// C_{2k}^lambda(0) as an exact rational string.
#[pyfunction]
fn gegenbauer_at_zero(k: u32, lam: &str) -> PyResult<String> {
    Ok(gegenbauer::gegenbauer_at_zero(k, &rat(lam)?).to_string())
}

/// Rising factorial (z)_m.
#[pyfunction]
fn pochhammer(z: &str, m: u32) -> PyResult<String> {
    Ok(poch(&rat(z)?, m).to_string())
}

/// Proportionality constant lambda_{alpha,alphap}^{beta,betap} at rank n.
#[pyfunction]
fn prop_const(n: u32, alpha: u32, alphap: u32, beta: u32, betap: u32) -> String {
    cocycle::prop_const(&ArrowKey::new(alpha, alphap, beta, betap, n)).to_string()
}

/// Dimension of the space of harmonic polynomials of degree d in m variables.
#[pyfunction]
fn harmonic_dim(m: usize, d: usize) -> usize {
    harmonics::harmonic_dim(m, d)
}

/// Canonical text form of one harmonic basis element.
#[pyfunction]
fn harmonic_basis_element(m: usize, d: usize, index: usize) -> PyResult<String> {
    let basis = harmonics::harmonic_basis(m, d);
    basis
        .get(index)
        .map(PolyN::to_string)
        .ok_or_else(|| PyValueError::new_err(format!("index {index} out of {}", basis.len())))
}

/// Sphere integral of the monomial x^a over S^{len(a)-1} as
/// (rational, power of sqrt(pi)).
#[pyfunction]
fn sphere_monomial_integral(a: Vec<u32>) -> (String, i32) {
    let v = harmonics::sphere_monomial_integral(&a);
    (v.rat.to_string(), v.pi_half_power)
}

#[pymodule]
fn sbo_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyParams>()?;
    m.add_function(wrap_pyfunction!(gegenbauer_coeffs, m)?)?;
    m.add_function(wrap_pyfunction!(gegenbauer_at_zero, m)?)?;
    m.add_function(wrap_pyfunction!(pochhammer, m)?)?;
    m.add_function(wrap_pyfunction!(prop_const, m)?)?;
    m.add_function(wrap_pyfunction!(harmonic_dim, m)?)?;
    m.add_function(wrap_pyfunction!(harmonic_basis_element, m)?)?;
    m.add_function(wrap_pyfunction!(sphere_monomial_integral, m)?)?;
    Ok(())
}
