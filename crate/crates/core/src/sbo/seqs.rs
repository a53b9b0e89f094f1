//! Closed-form scalar sequences for the five operator families.
//!
//! The A, B, C families are generic-only: a vanishing Pochhammer denominator
//! raises `SingularParameter` and callers fall back to the recurrence solver.
//! The residue families A1 and A2 are evaluated on their whole loci through
//! exact rational-function limits, so they stay valid on the exceptional set.

use crate::error::{Error, Result};
use crate::params::Params;
use crate::rat::{factorial, pochhammer, Rat};

use super::hyper::{hyp3f2_terminating, poch_poly, rational_limit};
use super::{Family, PrefactorToken, ScalarSeq};

fn half_sum(p: &Params) -> (Rat, Rat) {
    let d = p.derive();
    let u = (&p.lambda1 + &d.rho1) * Rat::ratio(1, 2);
    let v = (&p.nu1 + &d.rho1p) * Rat::ratio(1, 2);
    (u, v)
}

/// t^A_{alpha,alpha'} = (v)_{a'}/(u)_{a'} 3F2(a'-a, u-v, (n-1)/2+a+a'; u+a', 1/2; 1)
/// with u = (lambda1+rho1)/2, v = (nu1+rho1')/2; prefactor 1/Gamma(u).
pub fn seq_a(p: &Params, cutoff: u32) -> Result<ScalarSeq> {
    let (u, v) = half_sum(p);
    let prefactor = PrefactorToken {
        rational: Rat::one(),
        pi_half_power: 0,
        gamma_args: vec![(u.clone(), -1)],
    };
    let mut seq = ScalarSeq::new(Family::A, p.clone(), cutoff, prefactor);
    let n = p.n as i64;
    for alpha in 0..=cutoff {
        for alphap in 0..=alpha {
            let den = pochhammer(&u, alphap);
            if den.is_zero() {
                return Err(Error::SingularParameter(format!(
                    "(lambda1+rho1)/2 = {u} has vanishing Pochhammer at alpha' = {alphap}"
                )));
            }
            let front = pochhammer(&v, alphap) / den;
            let a2 = &u - &v;
            let a3 = Rat::ratio(n - 1, 2) + Rat::from_int((alpha + alphap) as i64);
            let b1 = &u + &Rat::from_int(alphap as i64);
            let f = hyp3f2_terminating(alphap as i64 - alpha as i64, &a2, &a3, &b1)?;
            seq.set(alpha, alphap, front * f);
        }
    }
    Ok(seq)
}

/// t^B_{alpha,0} = (rho1-u)_a (n/2)_a / ((1/2)_a (u)_a), zero for alpha' > 0;
/// prefactor pi^{n/2}/Gamma(u). Requires nu1 = -rho1'.
pub fn seq_b(p: &Params, cutoff: u32) -> Result<ScalarSeq> {
    let d = p.derive();
    if p.nu1 != -&d.rho1p {
        return Err(Error::LocusMismatch(format!(
            "family B needs nu1 = -rho1' = {}, got {}",
            -&d.rho1p,
            p.nu1
        )));
    }
    let (u, _) = half_sum(p);
    let prefactor = PrefactorToken {
        rational: Rat::one(),
        pi_half_power: p.n as i32,
        gamma_args: vec![(u.clone(), -1)],
    };
    let mut seq = ScalarSeq::new(Family::B, p.clone(), cutoff, prefactor);
    let n = p.n as i64;
    for alpha in 0..=cutoff {
        let den = pochhammer(&u, alpha);
        if den.is_zero() {
            return Err(Error::SingularParameter(format!(
                "(lambda1+rho1)/2 = {u} has vanishing Pochhammer at alpha = {alpha}"
            )));
        }
        let num = pochhammer(&(&d.rho1 - &u), alpha) * pochhammer(&Rat::ratio(n, 2), alpha);
        let v = num / (pochhammer(&Rat::ratio(1, 2), alpha) * den);
        seq.set(alpha, 0, v);
    }
    Ok(seq)
}

/// n = 2 only: t^C with middle upper parameter u+v-1 and third 1/2+a+a';
/// prefactor sqrt(pi)/Gamma(u).
pub fn seq_c(p: &Params, cutoff: u32) -> Result<ScalarSeq> {
    if p.n != 2 {
        return Err(Error::LocusMismatch("family C exists only for n = 2".into()));
    }
    let (u, v) = half_sum(p);
    let prefactor = PrefactorToken {
        rational: Rat::one(),
        pi_half_power: 1,
        gamma_args: vec![(u.clone(), -1)],
    };
    let mut seq = ScalarSeq::new(Family::C, p.clone(), cutoff, prefactor);
    for alpha in 0..=cutoff {
        for alphap in 0..=alpha {
            let den = pochhammer(&u, alphap);
            if den.is_zero() {
                return Err(Error::SingularParameter(format!(
                    "(lambda1+rho1)/2 = {u} has vanishing Pochhammer at alpha' = {alphap}"
                )));
            }
            let front = pochhammer(&v, alphap) / den;
            // (lambda1+rho1+nu1-rho1')/2 = u + v - rho1' and rho1' = 1 here
            let a2 = &u + &v - &Rat::one();
            let a3 = Rat::ratio(1, 2) + Rat::from_int((alpha + alphap) as i64);
            let b1 = &u + &Rat::from_int(alphap as i64);
            let f = hyp3f2_terminating(alphap as i64 - alpha as i64, &a2, &a3, &b1)?;
            seq.set(alpha, alphap, front * f);
        }
    }
    Ok(seq)
}

/// Residue index of the A1 locus: nu1 = -rho1' - 2j.
fn a1_locus_index(p: &Params) -> Result<u32> {
    let d = p.derive();
    let twoj = -(&p.nu1 + &d.rho1p);
    match twoj.to_nonneg_integer() {
        Some(t) if t % 2 == 0 => Ok((t / 2) as u32),
        _ => Err(Error::LocusMismatch(format!(
            "family A1 needs nu1 = -rho1' - 2j, got nu1 = {}",
            p.nu1
        ))),
    }
}

/// Residue index of the A2 locus: lambda1 + rho1 - nu1 - rho1' = -2N.
fn a2_locus_index(p: &Params) -> Result<u32> {
    let d = p.derive();
    let twon = -(&p.lambda1 + &d.rho1 - &p.nu1 - &d.rho1p);
    match twon.to_nonneg_integer() {
        Some(t) if t % 2 == 0 => Ok((t / 2) as u32),
        _ => Err(Error::LocusMismatch(format!(
            "family A2 needs lambda1+rho1-nu1-rho1' = -2N, got {}",
            -twon
        ))),
    }
}

/// The A1 residue family on nu1 = -rho1' - 2j. The rational part folds the
/// residue Gamma-ratio into a Pochhammer:
/// t^{A1} = (-1)^j (2j)!/j! (u)_j (-j)_{a'}/(u)_{a'} 3F2(a'-a, u+j, ...; u+a', 1/2; 1),
/// evaluated as an exact limit in u so the exceptional set needs no special
/// casing. Prefactor 1.
pub fn seq_a1(p: &Params, cutoff: u32) -> Result<ScalarSeq> {
    let j = a1_locus_index(p)?;
    let (u0, _) = half_sum(p);
    let n = p.n as i64;
    let mut seq = ScalarSeq::new(Family::A1, p.clone(), cutoff, PrefactorToken::one());
    let sign = if j % 2 == 0 { Rat::one() } else { Rat::from_int(-1) };
    let pre0 = sign * factorial(2 * j) / factorial(j);
    for alpha in 0..=cutoff {
        for alphap in 0..=alpha {
            let front = pochhammer(&Rat::from_int(-(j as i64)), alphap);
            if front.is_zero() {
                continue;
            }
            let kmax = alpha - alphap;
            // numerator N(u) = sum_k A_k (u+j)_k (u)_j (u+a'+k)_{K-k}; denominator (u)_{a'+K}
            let mut num = crate::gegenbauer::Poly1::zero();
            for k in 0..=kmax {
                let ak = pochhammer(&Rat::from_int(alphap as i64 - alpha as i64), k)
                    * pochhammer(
                        &(Rat::ratio(n - 1, 2) + Rat::from_int((alpha + alphap) as i64)),
                        k,
                    )
                    / (pochhammer(&Rat::ratio(1, 2), k) * factorial(k));
                if ak.is_zero() {
                    continue;
                }
                let term = poch_poly(&Rat::from_int(j as i64), k)
                    .mul(&poch_poly(&Rat::zero(), j))
                    .mul(&poch_poly(&Rat::from_int((alphap + k) as i64), kmax - k))
                    .scale(&ak);
                num = num.add(&term);
            }
            let den = poch_poly(&Rat::zero(), alphap + kmax);
            let lim = rational_limit(&num, &den, &u0)?;
            seq.set(alpha, alphap, &pre0 * &front * lim);
        }
    }
    Ok(seq)
}

/// The A2 residue family on lambda1 + rho1 - nu1 - rho1' = -2N, evaluated as
/// an exact limit in s = (nu1+rho1')/2:
/// t^{A2} = (-1)^N (2N)!/N! (s-N)_N (s)_{a'}/(s-N)_{a'} 3F2(a'-a, -N, ...; s-N+a', 1/2; 1).
/// Prefactor 1. At N = 0 this is the restriction operator, identically 1.
pub fn seq_a2(p: &Params, cutoff: u32) -> Result<ScalarSeq> {
    let big_n = a2_locus_index(p)?;
    let d = p.derive();
    let s0 = (&p.nu1 + &d.rho1p) * Rat::ratio(1, 2);
    let n = p.n as i64;
    let nn = big_n as i64;
    let mut seq = ScalarSeq::new(Family::A2, p.clone(), cutoff, PrefactorToken::one());
    let sign = if big_n % 2 == 0 { Rat::one() } else { Rat::from_int(-1) };
    let pre0 = sign * factorial(2 * big_n) / factorial(big_n);
    for alpha in 0..=cutoff {
        for alphap in 0..=alpha {
            let kcap = (alpha - alphap).min(big_n);
            let mut num = crate::gegenbauer::Poly1::zero();
            for k in 0..=kcap {
                let ak = pochhammer(&Rat::from_int(alphap as i64 - alpha as i64), k)
                    * pochhammer(&Rat::from_int(-nn), k)
                    * pochhammer(
                        &(Rat::ratio(n - 1, 2) + Rat::from_int((alpha + alphap) as i64)),
                        k,
                    )
                    / (pochhammer(&Rat::ratio(1, 2), k) * factorial(k));
                if ak.is_zero() {
                    continue;
                }
                // (s-N)_N (s)_{a'} (s-N+a'+k)_{(a-a')-k}
                let term = poch_poly(&Rat::from_int(-nn), big_n)
                    .mul(&poch_poly(&Rat::zero(), alphap))
                    .mul(&poch_poly(
                        &Rat::from_int(-nn + (alphap + k) as i64),
                        alpha - alphap - k,
                    ))
                    .scale(&ak);
                num = num.add(&term);
            }
            let den = poch_poly(&Rat::from_int(-nn), alpha);
            let lim = rational_limit(&num, &den, &s0)?;
            seq.set(alpha, alphap, &pre0 * &lim);
        }
    }
    Ok(seq)
}
