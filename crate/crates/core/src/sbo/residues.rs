//! Residue identities relating the operator families along special loci.
//!
//! The exact content checked here: the pointwise ratio of the rational parts
//! of two families is constant over the index triangle. The transcendental
//! part of each identity (a Gamma-quotient) is checked numerically in the
//! quadrature module.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::params::Params;
use crate::rat::Rat;

use super::seqs::{seq_a, seq_a1, seq_a2, seq_b, seq_c};
use super::ScalarSeq;

/// Which residue identity a report refers to.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum ResidueIdentity {
    /// A = (-1)^j j!/((2j)! Gamma((lambda1+rho1-nu1-rho1')/2)) A1 on nu1 = -rho1'-2j.
    AViaA1 { j: u32 },
    /// A = (-1)^N N!/((2N)! Gamma((nu1+rho1')/2)) A2 on lambda1+rho1-nu1-rho1' = -2N.
    AViaA2 { n_res: u32 },
    /// n=2, nu1+rho1' = 1: the rational parts of A and C coincide.
    AEqualsC,
    /// n=2, nu1+rho1' = 0: the rational parts of B and C coincide.
    BEqualsC,
}

/// Exact outcome of one identity check.
#[derive(Clone, Debug)]
pub struct ResidueReport {
    pub identity: ResidueIdentity,
    /// The constant ratio (numerator family / denominator family) of the
    /// rational parts.
    pub ratio: Rat,
}

fn constant_ratio(num: &ScalarSeq, den: &ScalarSeq) -> Result<Rat> {
    let cutoff = num.cutoff.min(den.cutoff);
    let mut ratio: Option<Rat> = None;
    for alpha in 0..=cutoff {
        for alphap in 0..=alpha {
            let a = num.value(alpha, alphap);
            let b = den.value(alpha, alphap);
            if b.is_zero() {
                if !a.is_zero() {
                    return Err(Error::InconsistentSystem(format!(
                        "ratio not constant: {} vanishes at ({alpha},{alphap}) but {} does not",
                        den.family, num.family
                    )));
                }
                continue;
            }
            let r = a / b;
            match &ratio {
                None => ratio = Some(r),
                Some(r0) => {
                    if *r0 != r {
                        return Err(Error::InconsistentSystem(format!(
                            "ratio jumps at ({alpha},{alphap}): {r0} vs {r}"
                        )));
                    }
                }
            }
        }
    }
    ratio.ok_or_else(|| Error::InconsistentSystem("denominator family is zero".into()))
}

/// Check every residue identity applicable at `p`. Errors with LocusMismatch
/// when no identity applies there.
pub fn residue_check(p: &Params, cutoff: u32) -> Result<Vec<ResidueReport>> {
    let d = p.derive();
    let flags = p.flags();
    let mut out = Vec::new();

    // nu1 = -rho1' - 2j (off L: on L the A family vanishes identically)
    let a1_j = (-(&p.nu1 + &d.rho1p))
        .to_nonneg_integer()
        .filter(|t| t % 2 == 0)
        .map(|t| (t / 2) as u32);
    if let Some(j) = a1_j {
        if flags.in_l.is_none() {
            if let (Ok(a), Ok(a1)) = (seq_a(p, cutoff), seq_a1(p, cutoff)) {
                out.push(ResidueReport { identity: ResidueIdentity::AViaA1 { j }, ratio: constant_ratio(&a, &a1)? });
            }
        }
    }

    // lambda1 + rho1 - nu1 - rho1' = -2N
    let a2_n = (-(&p.lambda1 + &d.rho1 - &p.nu1 - &d.rho1p))
        .to_nonneg_integer()
        .filter(|t| t % 2 == 0)
        .map(|t| (t / 2) as u32);
    if let Some(n_res) = a2_n {
        if flags.in_l.is_none() {
            if let (Ok(a), Ok(a2)) = (seq_a(p, cutoff), seq_a2(p, cutoff)) {
                out.push(ResidueReport {
                    identity: ResidueIdentity::AViaA2 { n_res },
                    ratio: constant_ratio(&a, &a2)?,
                });
            }
        }
    }

    if p.n == 2 {
        let nu_sum = &p.nu1 + &d.rho1p;
        if nu_sum == Rat::one() {
            let a = seq_a(p, cutoff)?;
            let c = seq_c(p, cutoff)?;
            out.push(ResidueReport { identity: ResidueIdentity::AEqualsC, ratio: constant_ratio(&a, &c)? });
        }
        if nu_sum.is_zero() {
            let b = seq_b(p, cutoff)?;
            let c = seq_c(p, cutoff)?;
            out.push(ResidueReport { identity: ResidueIdentity::BEqualsC, ratio: constant_ratio(&b, &c)? });
        }
    }

    if out.is_empty() {
        return Err(Error::LocusMismatch(
            "no residue identity applies at these parameters".into(),
        ));
    }
    Ok(out)
}
