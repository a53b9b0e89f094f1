//! Exact univariate polynomials and Gegenbauer polynomials C_N^lambda.
//!
//! The seven contiguous identities relating neighboring Gegenbauer polynomials
//! are asserted coefficient-wise in the test suite; everything here is exact.

use std::fmt;

use crate::rat::{factorial, pochhammer, Rat};

/// Dense univariate polynomial over [`Rat`], coefficients indexed by degree.
/// Trailing zero coefficients are trimmed.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Poly1 {
    coeffs: Vec<Rat>,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Parity {
    Even,
    Odd,
    Mixed,
}

impl Poly1 {
    pub fn zero() -> Self {
        Poly1 { coeffs: Vec::new() }
    }

    pub fn constant(c: Rat) -> Self {
        Poly1::from_coeffs(vec![c])
    }

    pub fn from_coeffs(coeffs: Vec<Rat>) -> Self {
        let mut p = Poly1 { coeffs };
        p.trim();
        p
    }

    /// The monomial c * z^k.
    pub fn monomial(c: Rat, k: usize) -> Self {
        let mut coeffs = vec![Rat::zero(); k + 1];
        coeffs[k] = c;
        Poly1::from_coeffs(coeffs)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Rat::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> Rat {
        self.coeffs.get(k).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn parity(&self) -> Parity {
        let even = self.coeffs.iter().enumerate().all(|(k, c)| k % 2 == 0 || c.is_zero());
        let odd = self.coeffs.iter().enumerate().all(|(k, c)| k % 2 == 1 || c.is_zero());
        match (even, odd) {
            (true, _) => Parity::Even,
            (_, true) => Parity::Odd,
            _ => Parity::Mixed,
        }
    }

    pub fn add(&self, other: &Poly1) -> Poly1 {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k) + other.coeff(k)).collect();
        Poly1::from_coeffs(coeffs)
    }

    pub fn sub(&self, other: &Poly1) -> Poly1 {
        self.add(&other.scale(&Rat::from_int(-1)))
    }

    pub fn scale(&self, c: &Rat) -> Poly1 {
        Poly1::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn mul(&self, other: &Poly1) -> Poly1 {
        if self.is_zero() || other.is_zero() {
            return Poly1::zero();
        }
        let mut coeffs = vec![Rat::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        Poly1::from_coeffs(coeffs)
    }

    pub fn derivative(&self) -> Poly1 {
        if self.coeffs.len() <= 1 {
            return Poly1::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| Rat::from_int(k as i64) * c)
            .collect();
        Poly1::from_coeffs(coeffs)
    }

    pub fn eval(&self, z: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * z + c;
        }
        acc
    }

    pub fn eval_f64(&self, z: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * z + c.to_f64();
        }
        acc
    }

    /// Multiplicity of `r` as a root (0 if not a root or if self is zero).
    pub fn root_multiplicity(&self, r: &Rat) -> usize {
        if self.is_zero() {
            return 0;
        }
        let mut m = 0;
        let mut p = self.clone();
        while !p.is_zero() && p.eval(r).is_zero() {
            p = p.div_linear(r);
            m += 1;
        }
        m
    }

    /// Exact synthetic division by (z - r); requires r to be a root.
    pub fn div_linear(&self, r: &Rat) -> Poly1 {
        debug_assert!(self.eval(r).is_zero(), "not a root");
        let n = self.coeffs.len();
        if n <= 1 {
            return Poly1::zero();
        }
        let mut out = vec![Rat::zero(); n - 1];
        let mut carry = Rat::zero();
        for k in (1..n).rev() {
            carry = &self.coeffs[k] + &(&carry * r);
            out[k - 1] = carry.clone();
        }
        Poly1::from_coeffs(out)
    }
}

impl fmt::Display for Poly1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*z")?,
                _ => write!(f, "{c}*z^{k}")?,
            }
        }
        Ok(())
    }
}

/// Gegenbauer polynomial C_N^lambda(z); the coefficient of z^{N-2j} is
/// (-1)^j (lambda)_{N-j} 2^{N-2j} / (j! (N-2j)!).
pub fn gegenbauer(deg: u32, lam: &Rat) -> Poly1 {
    let n = deg as usize;
    let mut coeffs = vec![Rat::zero(); n + 1];
    for j in 0..=(n / 2) {
        let sign = if j % 2 == 0 { Rat::one() } else { Rat::from_int(-1) };
        let pow2 = Rat::from_int(2).pow((n - 2 * j) as i32);
        let num = sign * pochhammer(lam, (n - j) as u32) * pow2;
        let den = factorial(j as u32) * factorial((n - 2 * j) as u32);
        coeffs[n - 2 * j] = num / den;
    }
    Poly1::from_coeffs(coeffs)
}

/// C_{2k}^lambda(0) = (-1)^k (lambda)_k / k!.
pub fn gegenbauer_at_zero(k: u32, lam: &Rat) -> Rat {
    let sign = if k.is_multiple_of(2) { Rat::one() } else { Rat::from_int(-1) };
    sign * pochhammer(lam, k) / factorial(k)
}
