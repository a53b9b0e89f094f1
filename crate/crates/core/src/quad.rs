//! Floating-point application of the compact-picture integral operators and
//! numerical intertwining checks.
//!
//! The algebraic endpoint/interior singularities |r|^gamma (1-r^2)^beta are
//! absorbed into the quadrature weight exactly, so for polynomial inputs the
//! residual integrand is a polynomial and the rules are exact up to rounding.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::harmonics::{sphere_monomial_integral, PolyN};
use crate::params::Params;
use crate::rat::Rat;
use crate::sbo::{PrefactorToken, ScalarSeq};

/// Lanczos approximation (g = 7, 9 terms), relative error well below 1e-13 on
/// the real axis away from the poles; reflection handles negative arguments.
pub fn gamma_fn(x: f64) -> f64 {
    const G: [f64; 9] = [
        0.999_999_999_999_809_9,
        676.520_368_121_885_1,
        -1_259.139_216_722_402_8,
        771.323_428_777_653_1,
        -176.615_029_162_140_6,
        12.507_343_278_686_905,
        -0.138_571_095_265_720_12,
        9.984_369_578_019_572e-6,
        1.505_632_735_149_311_6e-7,
    ];
    if x < 0.5 {
        std::f64::consts::PI / ((std::f64::consts::PI * x).sin() * gamma_fn(1.0 - x))
    } else {
        let x = x - 1.0;
        let mut a = G[0];
        let t = x + 7.5;
        for (i, &g) in G.iter().enumerate().skip(1) {
            a += g / (x + i as f64);
        }
        (2.0 * std::f64::consts::PI).sqrt() * t.powf(x + 0.5) * (-t).exp() * a
    }
}

/// Evaluate a prefactor token numerically.
pub fn prefactor_f64(t: &PrefactorToken) -> f64 {
    let mut v = t.rational.to_f64() * std::f64::consts::PI.powf(t.pi_half_power as f64 / 2.0);
    for (arg, pow) in &t.gamma_args {
        v *= gamma_fn(arg.to_f64()).powi(*pow);
    }
    v
}

/// Quadrature rule for `int_{-1}^{1} |r|^gamma (1-r^2)^beta f(r) dr`,
/// symmetric about zero.
#[derive(Clone, Debug)]
pub struct QuadRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub gamma_exp: f64,
    pub beta_exp: f64,
}

impl QuadRule {
    pub fn integrate(&self, mut f: impl FnMut(f64) -> f64) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(&x, &w)| w * f(x)).sum()
    }
}

/// Gauss nodes and weights for the Jacobi weight (1-x)^a (1+x)^b on (-1,1),
/// via the Golub-Welsch symmetric tridiagonal eigenproblem.
fn gauss_jacobi(m: usize, a: f64, b: f64) -> (Vec<f64>, Vec<f64>) {
    assert!(m >= 1);
    let mut mat = DMatrix::<f64>::zeros(m, m);
    let mut diag = (b - a) / (2.0 + a + b);
    for k in 0..m - 1 {
        let k1 = (k + 1) as f64;
        let denom = 2.0 * k1 + a + b;
        let off = 2.0 / denom
            * (k1 * (k1 + a) * (k1 + b) * (k1 + a + b) / ((denom + 1.0) * (denom - 1.0))).sqrt();
        mat[(k, k)] = diag;
        mat[(k, k + 1)] = off;
        mat[(k + 1, k)] = off;
        diag = (b * b - a * a) / (denom * (denom + 2.0));
    }
    mat[(m - 1, m - 1)] = diag;
    let eig = mat.symmetric_eigen();
    // mu0 = int (1-x)^a (1+x)^b dx = 2^{a+b+1} B(a+1, b+1)
    let mu0 = 2f64.powf(a + b + 1.0) * gamma_fn(a + 1.0) * gamma_fn(b + 1.0)
        / gamma_fn(a + b + 2.0);
    let mut pairs: Vec<(f64, f64)> = (0..m)
        .map(|i| (eig.eigenvalues[i], mu0 * eig.eigenvectors[(0, i)].powi(2)))
        .collect();
    pairs.sort_by(|x, y| x.0.total_cmp(&y.0));
    pairs.into_iter().unzip()
}

/// m-point (per half-line) rule for the even weight |r|^gamma (1-r^2)^beta on
/// (-1,1), built by substituting s = r^2 which turns the weight into the
/// Jacobi weight s^{(gamma-1)/2} (1-s)^beta on (0,1).
pub fn jacobi_rule(gamma: f64, beta: f64, m: usize) -> Result<QuadRule> {
    if gamma <= -1.0 || beta <= -1.0 || !gamma.is_finite() || !beta.is_finite() {
        return Err(Error::NonIntegrable(format!(
            "weight exponents gamma = {gamma}, beta = {beta} must both exceed -1"
        )));
    }
    let a_exp = (gamma - 1.0) / 2.0; // s-exponent
    let (x, w) = gauss_jacobi(m, beta, a_exp);
    let mut nodes = Vec::with_capacity(2 * m);
    let mut weights = Vec::with_capacity(2 * m);
    // s = (1+x)/2; ds-weight carries 2^{-(a+b+1)}
    let scale = 2f64.powf(-(a_exp + beta + 1.0));
    for (xi, wi) in x.into_iter().zip(w) {
        let s = (1.0 + xi) / 2.0;
        let r = s.sqrt();
        let half = 0.5 * wi * scale;
        nodes.push(-r);
        weights.push(half);
        nodes.push(r);
        weights.push(half);
    }
    Ok(QuadRule { nodes, weights, gamma_exp: gamma, beta_exp: beta })
}

fn normalize(y: &[Rat]) -> Vec<f64> {
    let v: Vec<f64> = y.iter().map(Rat::to_f64).collect();
    let norm = v.iter().map(|t| t * t).sum::<f64>().sqrt();
    assert!(norm > 0.0, "zero vector cannot represent a sphere point");
    v.into_iter().map(|t| t / norm).collect()
}

/// Evaluate a smooth projective function given by an even-degree homogeneous
/// polynomial at a (not necessarily unit) representative.
fn projective_eval(phitilde: &PolyN, v: &[f64]) -> f64 {
    let norm2: f64 = v.iter().map(|t| t * t).sum();
    let deg = phitilde.degree() as i32;
    debug_assert!(deg % 2 == 0);
    phitilde.eval_f64(v) / norm2.powi(deg / 2)
}

struct OperatorData {
    n: usize,
    lambda1: f64,
    nu1: f64,
    rho1: f64,
    rho1p: f64,
}

fn op_data(p: &Params) -> OperatorData {
    let d = p.derive();
    OperatorData {
        n: p.n as usize,
        lambda1: p.lambda1.to_f64(),
        nu1: p.nu1.to_f64(),
        rho1: d.rho1.to_f64(),
        rho1p: d.rho1p.to_f64(),
    }
}

/// A-family integral applied to a smooth function on the projective n-sphere,
/// evaluated at the class of `y_hat` (unit vector in R^n). `m` quadrature
/// points per half-line.
fn apply_a_fn(
    p: &Params,
    f: &mut dyn FnMut(&[f64]) -> f64,
    y_hat: &[f64],
    m: usize,
) -> Result<f64> {
    let d = op_data(p);
    let nu_sum = d.nu1 + d.rho1p;
    let cross = d.lambda1 + d.rho1 - d.nu1 - d.rho1p;
    if nu_sum <= 0.0 || cross <= 0.0 {
        return Err(Error::NonIntegrable(format!(
            "A needs nu1+rho1' > 0 and lambda1+rho1-nu1-rho1' > 0 (got {nu_sum}, {cross})"
        )));
    }
    let rule = jacobi_rule(cross - 1.0, nu_sum / 2.0 - 1.0, m)?;
    let mut point = vec![0.0; d.n + 1];
    let integral = rule.integrate(|r| {
        let s = (1.0 - r * r).max(0.0).sqrt();
        for (t, &yi) in point.iter_mut().zip(y_hat) {
            *t = s * yi;
        }
        point[d.n] = r;
        f(&point)
    });
    Ok(integral / (gamma_fn(nu_sum / 2.0) * gamma_fn(cross / 2.0)))
}

/// A-family operator applied to a polynomial type at a sphere point given by
/// a rational representative. Node count defaults to degree + 8.
pub fn apply_a(p: &Params, phitilde: &PolyN, y: &[Rat]) -> Result<f64> {
    apply_a_m(p, phitilde, y, phitilde.degree() + 8)
}

pub fn apply_a_m(p: &Params, phitilde: &PolyN, y: &[Rat], m: usize) -> Result<f64> {
    assert_eq!(phitilde.n_vars(), p.n as usize + 1);
    assert_eq!(y.len(), p.n as usize);
    let y_hat = normalize(y);
    let mut f = |v: &[f64]| projective_eval(phitilde, v);
    apply_a_fn(p, &mut f, &y_hat, m)
}

/// B-family integral of a polynomial type: the n-sphere integral factors into
/// exact equatorial monomial integrals times one Jacobi-weighted r-integral.
pub fn apply_b(p: &Params, phitilde: &PolyN) -> Result<f64> {
    apply_b_m(p, phitilde, phitilde.degree() + 8)
}

pub fn apply_b_m(p: &Params, phitilde: &PolyN, m: usize) -> Result<f64> {
    let d = op_data(p);
    assert_eq!(phitilde.n_vars(), d.n + 1);
    if d.lambda1 - d.rho1 <= -1.0 {
        return Err(Error::NonIntegrable(format!(
            "B needs lambda1 - rho1 > -1, got {}",
            d.lambda1 - d.rho1
        )));
    }
    let gamma = d.lambda1 - d.rho1;
    let beta = (d.n as f64 - 2.0) / 2.0;
    let rule = jacobi_rule(gamma, beta, m)?;
    let mut acc = 0.0;
    for (e, c) in phitilde.terms() {
        let e_last = e[d.n] as i32;
        if e_last % 2 == 1 {
            continue;
        }
        let sphere: Vec<u32> = e[..d.n].iter().map(|&t| t as u32).collect();
        let surf = sphere_monomial_integral(&sphere);
        if surf.rat.is_zero() {
            continue;
        }
        let abs_a: u32 = sphere.iter().sum();
        // (1 - r^2)^{|a|/2} r^{e_last} folds into the polynomial part
        let r_int = rule.integrate(|r| (1.0 - r * r).powi(abs_a as i32 / 2) * r.powi(e_last));
        acc += c.to_f64() * surf.to_f64() * r_int;
    }
    Ok(acc / (2.0 * gamma_fn((d.lambda1 - d.rho1 + 1.0) / 2.0)))
}

/// C-family integral (n = 2 only) of a smooth projective function, via
/// nested one-dimensional weighted quadratures.
fn apply_c_fn(
    p: &Params,
    f: &mut dyn FnMut(&[f64]) -> f64,
    y_hat: &[f64],
    m: usize,
) -> Result<f64> {
    let d = op_data(p);
    if p.n != 2 {
        return Err(Error::LocusMismatch("C exists only for n = 2".into()));
    }
    let g_exp = -d.nu1 - d.rho1p;
    let r_exp = d.lambda1 + d.rho1 + d.nu1 - d.rho1p;
    if g_exp <= -1.0 || r_exp <= 0.0 {
        return Err(Error::NonIntegrable(format!(
            "C needs -nu1-rho1' > -1 and lambda1+rho1+nu1-rho1' > 0 (got {g_exp}, {r_exp})"
        )));
    }
    let outer = jacobi_rule(r_exp - 1.0, -(d.nu1 + d.rho1p) / 2.0, m)?;
    // the circle integral against |tau_2|^g picks up (1-u^2)^{-1/2} from the
    // arc length; both live in the inner weight
    let inner = jacobi_rule(g_exp, -0.5, m)?;
    // rotation taking e1 to y_hat
    let (c, s) = (y_hat[0], y_hat[1]);
    let integral = outer.integrate(|r| {
        let rad = (1.0 - r * r).max(0.0).sqrt();
        let f = &mut *f;
        inner.integrate(move |u| {
            let q = (1.0 - u * u).max(0.0).sqrt();
            // tau = (+-q, u), rotated back: sigma = R tau
            let mut acc = 0.0;
            for t1 in [q, -q] {
                let sigma = [c * t1 - s * u, s * t1 + c * u];
                let point = [rad * sigma[0], rad * sigma[1], r];
                acc += f(&point);
            }
            acc
        })
    });
    Ok(integral
        / (2.0 * gamma_fn((-d.nu1 - d.rho1p + 1.0) / 2.0)
            * gamma_fn((d.lambda1 + d.rho1 + d.nu1 - d.rho1p) / 2.0)))
}

pub fn apply_c(p: &Params, phitilde: &PolyN, y: &[Rat]) -> Result<f64> {
    apply_c_m(p, phitilde, y, phitilde.degree() + 8)
}

pub fn apply_c_m(p: &Params, phitilde: &PolyN, y: &[Rat], m: usize) -> Result<f64> {
    assert_eq!(phitilde.n_vars(), 3);
    let y_hat = normalize(y);
    let mut f = |v: &[f64]| projective_eval(phitilde, v);
    apply_c_fn(p, &mut f, &y_hat, m)
}

/// Predicted value of the A operator on an embedded type at a point:
/// prefactor * t_{alpha,alpha'} * (restriction of phitilde)(y).
pub fn predicted_value(seq: &ScalarSeq, alpha: u32, alphap: u32, phitilde: &PolyN, y_hat: &[f64]) -> f64 {
    let pref = prefactor_f64(&seq.prefactor);
    let mut point = y_hat.to_vec();
    point.push(0.0);
    pref * seq.value(alpha, alphap).to_f64() * phitilde.eval_f64(&point)
}

/// Maximum relative intertwining error of the family operator at `p` over the
/// sample points: compares Op(pi_lambda(g) phi) with tau_nu(g) (Op phi).
pub fn intertwine_check(
    p: &Params,
    family: &crate::sbo::Family,
    g: &[Vec<Rat>],
    phitilde: &PolyN,
    samples: &[Vec<Rat>],
    m: usize,
) -> Result<f64> {
    use crate::sbo::Family;
    let n = p.n as usize;
    assert_eq!(g.len(), n);
    assert!(g.iter().all(|row| row.len() == n));
    let gf: Vec<Vec<f64>> = g.iter().map(|r| r.iter().map(Rat::to_f64).collect()).collect();
    let g_inv = invert(&gf)?;
    let det: f64 = det_f64(&gf);
    let d = op_data(p);
    let lambda2 = p.lambda2.to_f64();
    let nu2 = p.nu2.to_f64();
    let rho2 = -0.5;
    let deg = phitilde.degree() as f64;

    // pi_lambda(g) phi as a smooth function on S^n; the subgroup fixes the
    // last coordinate.
    let pi_g_phi = |v: &[f64]| -> f64 {
        let mut w = vec![0.0; n + 1];
        for (i, wi) in w.iter_mut().enumerate().take(n) {
            *wi = (0..n).map(|k| g_inv[i][k] * v[k]).sum();
        }
        w[n] = v[n];
        let norm = w.iter().map(|t| t * t).sum::<f64>().sqrt();
        let vnorm = v.iter().map(|t| t * t).sum::<f64>().sqrt();
        (norm / vnorm).powf(-(d.lambda1 + d.rho1))
            * det.abs().powf(lambda2 + rho2)
            * phitilde.eval_f64(&w)
            / norm.powf(deg)
    };

    let apply = |f: &mut dyn FnMut(&[f64]) -> f64, y_hat: &[f64]| -> Result<f64> {
        match family {
            Family::A => apply_a_fn(p, f, y_hat, m),
            Family::C => apply_c_fn(p, f, y_hat, m),
            Family::B => {
                // constant in y; integrate over the full n-sphere by the
                // product rule with equatorial quadrature
                apply_b_fn_smooth(p, f, m)
            }
            _ => Err(Error::InvalidParams(
                "intertwining checks cover the integral families A, B, C".into(),
            )),
        }
    };

    let mut pairs = Vec::with_capacity(samples.len());
    for y in samples {
        let y_hat = normalize(y);
        // left side: Op(pi(g) phi)([y])
        let mut fg = pi_g_phi;
        let lhs = apply(&mut fg, &y_hat)?;
        // right side: tau(g)(Op phi)([y]) = |g^{-1}y|^{-nu1-rho1'} |det g|^{nu2+rho2'}
        //             (Op phi)([g^{-1} y])
        let gy: Vec<f64> = (0..n)
            .map(|i| (0..n).map(|k| g_inv[i][k] * y_hat[k]).sum())
            .collect();
        let gy_norm = gy.iter().map(|t| t * t).sum::<f64>().sqrt();
        let gy_hat: Vec<f64> = gy.iter().map(|t| t / gy_norm).collect();
        let mut f0 = |v: &[f64]| projective_eval(phitilde, v);
        let at_gy = apply(&mut f0, &gy_hat)?;
        let rhs = gy_norm.powf(-(d.nu1 + d.rho1p)) * det.abs().powf(nu2 + rho2) * at_gy;
        pairs.push((lhs, rhs));
    }
    // relative to the batch scale: a sample may sit on a zero of the type
    let scale = pairs
        .iter()
        .map(|(a, b)| a.abs().max(b.abs()))
        .fold(1e-30f64, f64::max);
    Ok(pairs.into_iter().map(|(a, b)| (a - b).abs() / scale).fold(0.0, f64::max))
}

/// Product quadrature grid for the unit sphere S^{dim-1}: points and weights
/// with `sum w_i f(x_i) ~ int_{S^{dim-1}} f`.
fn sphere_grid(dim: usize, m: usize) -> Vec<(Vec<f64>, f64)> {
    if dim == 1 {
        return vec![(vec![1.0], 1.0), (vec![-1.0], 1.0)];
    }
    let rule = jacobi_rule(0.0, (dim as f64 - 3.0) / 2.0, m).expect("valid weight for dim >= 2");
    let sub = sphere_grid(dim - 1, m);
    let mut out = Vec::with_capacity(rule.nodes.len() * sub.len());
    for (&u, &w) in rule.nodes.iter().zip(&rule.weights) {
        let rad = (1.0 - u * u).max(0.0).sqrt();
        for (tau, wt) in &sub {
            let mut point: Vec<f64> = tau.iter().map(|t| t * rad).collect();
            point.push(u);
            out.push((point, w * wt));
        }
    }
    out
}

/// B applied to a smooth (not necessarily polynomial) function on S^n, via
/// the factorization into the weighted r-integral and an equatorial grid.
fn apply_b_fn_smooth(p: &Params, f: &mut dyn FnMut(&[f64]) -> f64, m: usize) -> Result<f64> {
    let d = op_data(p);
    if d.lambda1 - d.rho1 <= -1.0 {
        return Err(Error::NonIntegrable("B needs lambda1 - rho1 > -1".into()));
    }
    let rule = jacobi_rule(d.lambda1 - d.rho1, (d.n as f64 - 2.0) / 2.0, m)?;
    let grid = sphere_grid(d.n, m);
    let mut acc = 0.0;
    for (&r, &w) in rule.nodes.iter().zip(&rule.weights) {
        let rad = (1.0 - r * r).max(0.0).sqrt();
        let mut slice = 0.0;
        for (sigma, wt) in &grid {
            let mut point: Vec<f64> = sigma.iter().map(|t| rad * t).collect();
            point.push(r);
            slice += wt * f(&point);
        }
        acc += w * slice;
    }
    Ok(acc / (2.0 * gamma_fn((d.lambda1 - d.rho1 + 1.0) / 2.0)))
}

fn invert(g: &[Vec<f64>]) -> Result<Vec<Vec<f64>>> {
    let n = g.len();
    let mut a: Vec<Vec<f64>> = g
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|k| if k == i { 1.0 } else { 0.0 }));
            r
        })
        .collect();
    for c in 0..n {
        let piv = (c..n)
            .max_by(|&i, &j| a[i][c].abs().total_cmp(&a[j][c].abs()))
            .unwrap();
        if a[piv][c].abs() < 1e-14 {
            return Err(Error::InvalidParams("group element is singular".into()));
        }
        a.swap(c, piv);
        let inv = 1.0 / a[c][c];
        for x in &mut a[c] {
            *x *= inv;
        }
        for i in 0..n {
            if i != c {
                let f = a[i][c];
                #[allow(clippy::needless_range_loop)]
                for k in 0..2 * n {
                    a[i][k] -= f * a[c][k];
                }
            }
        }
    }
    Ok(a.into_iter().map(|row| row[n..].to_vec()).collect())
}

fn det_f64(g: &[Vec<f64>]) -> f64 {
    let n = g.len();
    let mut a: Vec<Vec<f64>> = g.to_vec();
    let mut det = 1.0;
    for c in 0..n {
        let piv = (c..n)
            .max_by(|&i, &j| a[i][c].abs().total_cmp(&a[j][c].abs()))
            .unwrap();
        if piv != c {
            a.swap(c, piv);
            det = -det;
        }
        if a[c][c] == 0.0 {
            return 0.0;
        }
        det *= a[c][c];
        for i in c + 1..n {
            let f = a[i][c] / a[c][c];
            #[allow(clippy::needless_range_loop)]
            for k in c..n {
                a[i][k] -= f * a[c][k];
            }
        }
    }
    det
}
