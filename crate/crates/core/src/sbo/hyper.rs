//! Terminating generalized hypergeometric sums with the second lower
//! parameter fixed at 1/2, plus the rational-function limit machinery used to
//! evaluate the residue families on their loci.

use crate::error::{Error, Result};
use crate::gegenbauer::Poly1;
use crate::rat::Rat;

/// 3F2(a1, a2, a3; b1, 1/2; 1) with a1 a nonpositive integer, evaluated as
/// the terminating sum over k = 0..-a1. Errors when a denominator Pochhammer
/// vanishes inside the summation range.
pub fn hyp3f2_terminating(a1: i64, a2: &Rat, a3: &Rat, b1: &Rat) -> Result<Rat> {
    assert!(a1 <= 0, "first upper parameter must be a nonpositive integer");
    let kmax = (-a1) as u32;
    let mut acc = Rat::one();
    let mut term = Rat::one();
    let half = Rat::ratio(1, 2);
    for k in 0..kmax {
        let kk = Rat::from_int(k as i64);
        let den1 = b1 + &kk;
        let den2 = &half + &kk;
        if den1.is_zero() || den2.is_zero() {
            return Err(Error::SingularParameter(format!(
                "3F2 lower Pochhammer vanishes at k = {}",
                k + 1
            )));
        }
        let num = Rat::from_int(a1 + k as i64) * (a2 + &kk) * (a3 + &kk);
        term = term * num / (den1 * den2 * Rat::from_int(k as i64 + 1));
        acc = acc + &term;
    }
    Ok(acc)
}

/// Pochhammer polynomial (u + c)_m as a polynomial in u.
pub(crate) fn poch_poly(c: &Rat, m: u32) -> Poly1 {
    let mut p = Poly1::constant(Rat::one());
    for t in 0..m {
        let lin = Poly1::from_coeffs(vec![c + &Rat::from_int(t as i64), Rat::one()]);
        p = p.mul(&lin);
    }
    p
}

/// Value of num/den at `at`, with common (u - at)-factors cancelled exactly.
/// Errors when a genuine pole remains.
pub(crate) fn rational_limit(num: &Poly1, den: &Poly1, at: &Rat) -> Result<Rat> {
    let mut n = num.clone();
    let mut d = den.clone();
    loop {
        if d.is_zero() {
            return Err(Error::SingularParameter("zero denominator".into()));
        }
        if !d.eval(at).is_zero() {
            return Ok(n.eval(at) / d.eval(at));
        }
        if n.is_zero() {
            return Ok(Rat::zero());
        }
        if !n.eval(at).is_zero() {
            return Err(Error::SingularParameter(format!("pole at {at}")));
        }
        n = n.div_linear(at);
        d = d.div_linear(at);
    }
}
