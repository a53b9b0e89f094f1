//! Exact multivariate polynomial algebra on spheres: harmonic bases, the
//! |x|^2-graded decomposition, embeddings of O(n)-spherical harmonics into
//! O(n+1)-harmonics, restriction, the x_i x_j product decomposition, and
//! exact sphere integrals of monomials.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::gegenbauer::gegenbauer;
use crate::linalg;
use crate::rat::{factorial, Rat};

/// Homogeneous multivariate polynomial with exact coefficients.
///
/// Terms are keyed by dense exponent vectors of length `n_vars`, kept in
/// lexicographic order; zero coefficients are never stored, and every stored
/// exponent vector sums to `degree`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolyN {
    n_vars: usize,
    degree: usize,
    terms: BTreeMap<Vec<u16>, Rat>,
}

impl PolyN {
    pub fn zero(n_vars: usize, degree: usize) -> Self {
        PolyN { n_vars, degree, terms: BTreeMap::new() }
    }

    pub fn constant(n_vars: usize, c: Rat) -> Self {
        let mut p = PolyN::zero(n_vars, 0);
        p.add_term(vec![0; n_vars], c);
        p
    }

    pub fn monomial(n_vars: usize, expts: Vec<u16>, c: Rat) -> Self {
        assert_eq!(expts.len(), n_vars);
        let degree = expts.iter().map(|&e| e as usize).sum();
        let mut p = PolyN::zero(n_vars, degree);
        p.add_term(expts, c);
        p
    }

    pub fn variable(n_vars: usize, i: usize) -> Self {
        let mut e = vec![0; n_vars];
        e[i] = 1;
        PolyN::monomial(n_vars, e, Rat::one())
    }

    /// Sum of squares of all variables.
    pub fn norm2(n_vars: usize) -> Self {
        let mut p = PolyN::zero(n_vars, 2);
        for i in 0..n_vars {
            let mut e = vec![0; n_vars];
            e[i] = 2;
            p.add_term(e, Rat::one());
        }
        p
    }

    fn add_term(&mut self, expts: Vec<u16>, c: Rat) {
        if c.is_zero() {
            return;
        }
        debug_assert_eq!(expts.iter().map(|&e| e as usize).sum::<usize>(), self.degree);
        match self.terms.entry(expts) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u16>, &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, expts: &[u16]) -> Rat {
        self.terms.get(expts).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn add(&self, other: &PolyN) -> PolyN {
        assert_eq!(self.n_vars, other.n_vars);
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        assert_eq!(self.degree, other.degree, "sum of inhomogeneous degrees");
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &PolyN) -> PolyN {
        self.add(&other.scale(&Rat::from_int(-1)))
    }

    pub fn scale(&self, c: &Rat) -> PolyN {
        if c.is_zero() {
            return PolyN::zero(self.n_vars, self.degree);
        }
        let terms = self.terms.iter().map(|(e, a)| (e.clone(), a * c)).collect();
        PolyN { n_vars: self.n_vars, degree: self.degree, terms }
    }

    pub fn mul(&self, other: &PolyN) -> PolyN {
        assert_eq!(self.n_vars, other.n_vars);
        let mut out = PolyN::zero(self.n_vars, self.degree + other.degree);
        if self.is_zero() || other.is_zero() {
            return out;
        }
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Vec<u16> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }

    pub fn partial(&self, i: usize) -> PolyN {
        let mut out = PolyN::zero(self.n_vars, self.degree.saturating_sub(1));
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[i] -= 1;
            out.add_term(e2, Rat::from_int(e[i] as i64) * c);
        }
        out
    }

    /// View the same polynomial in a larger variable set.
    pub fn extend_vars(&self, n_vars: usize) -> PolyN {
        assert!(n_vars >= self.n_vars);
        let mut out = PolyN::zero(n_vars, self.degree);
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            e2.resize(n_vars, 0);
            out.add_term(e2, c.clone());
        }
        out
    }

    /// Substitute x_{n_vars} = 0 and drop that variable.
    pub fn subst_last_zero(&self) -> PolyN {
        let mut out = PolyN::zero(self.n_vars - 1, self.degree);
        for (e, c) in &self.terms {
            if e[self.n_vars - 1] == 0 {
                out.add_term(e[..self.n_vars - 1].to_vec(), c.clone());
            }
        }
        out
    }

    pub fn eval_f64(&self, x: &[f64]) -> f64 {
        assert_eq!(x.len(), self.n_vars);
        let mut acc = 0.0;
        for (e, c) in &self.terms {
            let mut t = c.to_f64();
            for (i, &p) in e.iter().enumerate() {
                t *= x[i].powi(p as i32);
            }
            acc += t;
        }
        acc
    }

    pub fn eval(&self, x: &[Rat]) -> Rat {
        assert_eq!(x.len(), self.n_vars);
        let mut acc = Rat::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (i, &p) in e.iter().enumerate() {
                t = t * x[i].pow(p as i32);
            }
            acc = acc + t;
        }
        acc
    }
}

/// The flat Laplacian; drops the degree by 2.
pub fn laplacian(p: &PolyN) -> PolyN {
    let mut out = PolyN::zero(p.n_vars(), p.degree().saturating_sub(2));
    for (e, c) in p.terms() {
        for i in 0..p.n_vars() {
            if e[i] >= 2 {
                let mut e2 = e.clone();
                e2[i] -= 2;
                let f = Rat::from_int(e[i] as i64 * (e[i] as i64 - 1));
                out.add_term(e2, f * c);
            }
        }
    }
    out
}

impl fmt::Display for PolyN {
    /// Canonical text form `c * x1^a1 ... xm^am + ...` in lexicographic
    /// term order; zero exponents are omitted.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{c}")?;
            for (i, &p) in e.iter().enumerate() {
                match p {
                    0 => {}
                    1 => write!(f, " * x{}", i + 1)?,
                    _ => write!(f, " * x{}^{}", i + 1, p)?,
                }
            }
        }
        Ok(())
    }
}

/// All exponent vectors of length `m` summing to `d`, lexicographically.
pub fn monomials(m: usize, d: usize) -> Vec<Vec<u16>> {
    fn rec(m: usize, d: usize, acc: &mut Vec<u16>, out: &mut Vec<Vec<u16>>) {
        if m == 1 {
            let mut v = acc.clone();
            v.push(d as u16);
            out.push(v);
            return;
        }
        for e in 0..=d {
            acc.push(e as u16);
            rec(m - 1, d - e, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    rec(m, d, &mut Vec::new(), &mut out);
    out.sort();
    out
}

fn binom(n: i64, k: i64) -> i64 {
    if k < 0 || k > n {
        return 0;
    }
    let mut acc = 1i64;
    for t in 0..k {
        acc = acc * (n - t) / (t + 1);
    }
    acc
}

/// Dimension of the space of harmonic homogeneous polynomials of degree `d`
/// in `m` variables.
pub fn harmonic_dim(m: usize, d: usize) -> usize {
    let (m, d) = (m as i64, d as i64);
    (binom(m + d - 1, d) - binom(m + d - 3, d - 2)) as usize
}

/// Exact basis of the harmonic polynomials of degree `d` in `m` variables,
/// computed as the nullspace of the Laplacian on the monomial basis. Results
/// are memoized behind a process-wide lock; callers observe value semantics.
pub fn harmonic_basis(m: usize, d: usize) -> Vec<PolyN> {
    use std::sync::Mutex;
    static CACHE: Mutex<BTreeMap<(usize, usize), Vec<PolyN>>> = Mutex::new(BTreeMap::new());
    if let Some(hit) = CACHE.lock().unwrap().get(&(m, d)) {
        return hit.clone();
    }
    let basis = harmonic_basis_uncached(m, d);
    CACHE.lock().unwrap().insert((m, d), basis.clone());
    basis
}

fn harmonic_basis_uncached(m: usize, d: usize) -> Vec<PolyN> {
    assert!(m >= 1);
    if d == 0 {
        return vec![PolyN::constant(m, Rat::one())];
    }
    if d == 1 {
        return (0..m).map(|i| PolyN::variable(m, i)).collect();
    }
    let monos = monomials(m, d);
    let target = monomials(m, d - 2);
    let index: BTreeMap<&Vec<u16>, usize> = target.iter().zip(0..).collect();
    let mut rows = vec![vec![Rat::zero(); monos.len()]; target.len()];
    for (col, e) in monos.iter().enumerate() {
        let p = PolyN::monomial(m, e.clone(), Rat::one());
        for (e2, c) in laplacian(&p).terms() {
            rows[index[e2]][col] = c.clone();
        }
    }
    let ns = linalg::nullspace(rows, monos.len());
    let basis: Vec<PolyN> = ns
        .into_iter()
        .map(|v| {
            let mut p = PolyN::zero(m, d);
            for (e, c) in monos.iter().zip(v) {
                p.add_term(e.clone(), c);
            }
            p
        })
        .collect();
    debug_assert_eq!(basis.len(), harmonic_dim(m, d));
    basis
}

/// Write a homogeneous `p` of degree d as sum_k |x|^{2k} h_{d-2k} with every
/// h harmonic. Returns the nonzero pieces as (k, h). The decomposition is
/// unique; it is solved top down through repeated Laplacians.
pub fn harmonic_decompose(p: &PolyN) -> Vec<(usize, PolyN)> {
    let m = p.n_vars();
    let d = p.degree();
    if p.is_zero() {
        return Vec::new();
    }
    let kmax = d / 2;
    // c(k, j) with Delta^j (|x|^{2k} h_{d-2k}) = c(k,j) |x|^{2(k-j)} h_{d-2k}
    let coef = |k: usize, j: usize| -> Rat {
        let mut acc = Rat::one();
        for t in 0..j {
            let f = 2 * (k - t) as i64;
            let g = (2 * (d - 2 * k) + m + 2 * (k - t) - 2) as i64;
            acc = acc * Rat::from_int(f * g);
        }
        acc
    };
    let mut lap = Vec::with_capacity(kmax + 1);
    lap.push(p.clone());
    for _ in 0..kmax {
        let next = laplacian(lap.last().unwrap());
        lap.push(next);
    }
    let r2 = PolyN::norm2(m);
    let mut pieces: Vec<Option<PolyN>> = vec![None; kmax + 1];
    for j in (0..=kmax).rev() {
        let mut rhs = lap[j].clone();
        #[allow(clippy::needless_range_loop)]
        for k in (j + 1)..=kmax {
            if let Some(h) = &pieces[k] {
                if h.is_zero() {
                    continue;
                }
                let mut term = h.clone();
                for _ in 0..(k - j) {
                    term = term.mul(&r2);
                }
                rhs = rhs.sub(&term.scale(&coef(k, j)));
            }
        }
        pieces[j] = Some(rhs.scale(&coef(j, j).recip()));
    }
    pieces
        .into_iter()
        .enumerate()
        .filter_map(|(k, h)| h.filter(|h| !h.is_zero()).map(|h| (k, h)))
        .collect()
}

/// Embedding of an O(n)-harmonic of degree 2a' into the O(n+1)-harmonics of
/// degree 2a: phi |-> sum_j c_j x_{n+1}^{N-2j} |x|^{2j} phi(x') where the c_j
/// are the coefficients of C_N^{(n-1)/2+2a'} and N = 2(a-a').
pub fn embed(phi: &PolyN, alpha: u32) -> Result<PolyN> {
    let n = phi.n_vars();
    assert_eq!(phi.degree() % 2, 0, "even degree required");
    let alphap = (phi.degree() / 2) as u32;
    if alphap > alpha {
        return Err(Error::InvalidParams(format!(
            "cannot embed degree {} into harmonic degree {}",
            phi.degree(),
            2 * alpha
        )));
    }
    let nn = (n + 1) as i64;
    let big_n = 2 * (alpha - alphap);
    let lam = Rat::ratio(nn - 2, 2) + Rat::from_int(2 * alphap as i64);
    let c = gegenbauer(big_n, &lam);
    let phi_ext = phi.extend_vars(n + 1);
    let r2 = PolyN::norm2(n + 1);
    let mut out = PolyN::zero(n + 1, 2 * alpha as usize);
    for e in (0..=big_n).step_by(2) {
        // coefficient of z^e pairs with |x|^{2j}, j = (N - e)/2
        let ce = c.coeff(e as usize);
        if ce.is_zero() {
            continue;
        }
        let j = (big_n - e) / 2;
        let mut term = PolyN::monomial(n + 1, {
            let mut v = vec![0u16; n + 1];
            v[n] = e as u16;
            v
        }, ce);
        for _ in 0..j {
            term = term.mul(&r2);
        }
        out = out.add(&term.mul(&phi_ext));
    }
    debug_assert!(laplacian(&out).is_zero(), "embedding must be harmonic");
    Ok(out)
}

/// Restriction to the equatorial sphere: substitute x_{n+1} = 0, then reduce
/// modulo |x'|^2 = 1 by summing the harmonic components. The result must be a
/// single O(n)-type.
pub fn restrict(phitilde: &PolyN) -> Result<PolyN> {
    let cut = phitilde.subst_last_zero();
    if cut.is_zero() {
        return Ok(PolyN::zero(phitilde.n_vars() - 1, 0));
    }
    let pieces = harmonic_decompose(&cut);
    match pieces.len() {
        0 => Ok(PolyN::zero(phitilde.n_vars() - 1, 0)),
        1 => Ok(pieces.into_iter().next().unwrap().1),
        _ => Err(Error::InvalidParams(
            "restriction does not reduce to a single O(n)-type".into(),
        )),
    }
}

/// The three pieces of x_i x_j phi = plus + |x|^2 zero + |x|^4 minus for a
/// harmonic phi. For degree >= 2 the closed formulas are used; degree 0 falls
/// back to the generic decomposition.
pub fn xixj_components(phi: &PolyN, i: usize, j: usize) -> (PolyN, PolyN, PolyN) {
    let m = phi.n_vars() as i64;
    debug_assert!(laplacian(phi).is_zero());
    let d = phi.degree();
    let alpha = (d / 2) as i64;
    let xi = PolyN::variable(phi.n_vars(), i);
    let xj = PolyN::variable(phi.n_vars(), j);
    let prod = xi.mul(&xj).mul(phi);
    let r2 = PolyN::norm2(phi.n_vars());
    if alpha == 0 {
        let pieces = harmonic_decompose(&prod);
        let mut plus = PolyN::zero(phi.n_vars(), d + 2);
        let mut zero = PolyN::zero(phi.n_vars(), d);
        let mut minus = PolyN::zero(phi.n_vars(), d.saturating_sub(2));
        for (k, h) in pieces {
            match k {
                0 => plus = h,
                1 => zero = h,
                2 => minus = h,
                _ => unreachable!("x_i x_j phi has at most three pieces"),
            }
        }
        return (plus, zero, minus);
    }
    let dij = phi.partial(i).partial(j);
    let minus = dij.scale(&Rat::ratio(1, (m + 4 * alpha - 4) * (m + 4 * alpha - 2)));
    let mut zero = xj.mul(&phi.partial(i)).add(&xi.mul(&phi.partial(j)));
    zero = zero.sub(&r2.mul(&dij).scale(&Rat::ratio(2, m + 4 * alpha - 4)));
    if i == j {
        zero = zero.add(phi);
    }
    zero = zero.scale(&Rat::ratio(1, m + 4 * alpha));
    let plus = prod.sub(&r2.mul(&zero)).sub(&r2.mul(&r2).mul(&minus));
    (plus, zero, minus)
}

/// Exact value of a sphere integral of a monomial: `rat * pi^{pi_half_power/2}`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SurfVal {
    pub rat: Rat,
    pub pi_half_power: i32,
}

impl SurfVal {
    pub fn zero() -> Self {
        SurfVal { rat: Rat::zero(), pi_half_power: 0 }
    }

    pub fn to_f64(&self) -> f64 {
        self.rat.to_f64() * std::f64::consts::PI.powf(self.pi_half_power as f64 / 2.0)
    }
}

/// Gamma(t/2) for a positive integer t, as rat * pi^{p/2} with p in {0, 1}.
fn gamma_half(t: u32) -> (Rat, i32) {
    assert!(t >= 1);
    if t.is_multiple_of(2) {
        (factorial(t / 2 - 1), 0)
    } else {
        // Gamma(k + 1/2) = (2k)!/(4^k k!) sqrt(pi), k = (t-1)/2
        let k = (t - 1) / 2;
        let v = factorial(2 * k) / (Rat::from_int(4).pow(k as i32) * factorial(k));
        (v, 1)
    }
}

/// Integral of x^a over the unit sphere S^{m-1} (surface measure), m = a.len().
/// Zero when any exponent is odd; otherwise
/// 2 prod_i Gamma((a_i+1)/2) / Gamma((|a|+m)/2).
pub fn sphere_monomial_integral(a: &[u32]) -> SurfVal {
    let m = a.len() as u32;
    assert!(m >= 1);
    if a.iter().any(|&e| e % 2 == 1) {
        return SurfVal::zero();
    }
    let mut rat = Rat::from_int(2);
    let mut pi_pow = 0i32;
    for &e in a {
        let (v, p) = gamma_half(e + 1);
        rat = rat * v;
        pi_pow += p;
    }
    let total: u32 = a.iter().sum();
    let (v, p) = gamma_half(total + m);
    SurfVal { rat: rat / v, pi_half_power: pi_pow - p }
}
