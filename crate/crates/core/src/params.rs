//! Parameter bookkeeping for the pair GL(n+1,R) / GL(n,R).
//!
//! A parameter point is the tuple (n, lambda1, lambda2, nu1, nu2). Everything
//! downstream is driven by a handful of derived constants (the rho's, the
//! split-vs-central coordinates lambda_ss/lambda_z and nu_ss/nu_z, and the
//! pairing constant Omega) plus the case predicates in [`CaseFlags`].

use serde::Serialize;

use crate::error::{Error, Result};
use crate::rat::Rat;

/// Input parameters. `n >= 2`; the lambda/nu entries are rational reals.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Params {
    pub n: u32,
    pub lambda1: Rat,
    pub lambda2: Rat,
    pub nu1: Rat,
    pub nu2: Rat,
}

impl Params {
    pub fn new(n: u32, lambda1: Rat, lambda2: Rat, nu1: Rat, nu2: Rat) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidParams(format!("n must be >= 2, got {n}")));
        }
        Ok(Params { n, lambda1, lambda2, nu1, nu2 })
    }

    pub fn from_strs(n: u32, lambda1: &str, lambda2: &str, nu1: &str, nu2: &str) -> Result<Self> {
        Params::new(n, lambda1.parse()?, lambda2.parse()?, nu1.parse()?, nu2.parse()?)
    }

    pub fn derive(&self) -> DerivedParams {
        DerivedParams::from_params(self)
    }

    pub fn flags(&self) -> CaseFlags {
        CaseFlags::from_params(self)
    }
}

/// All derived constants of a parameter point.
///
/// Conventions: lambda1 = (n+1)/n * lambda_ss, lambda2 = lambda_z - lambda_ss/n,
/// nu1 = n/(n-1) * nu_ss, nu2 = nu_z - nu_ss/(n-1); the nu-side split mirrors
/// the lambda-side one and round-trips exactly.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DerivedParams {
    pub rho1: Rat,
    pub rho2: Rat,
    pub rho1p: Rat,
    pub rho2p: Rat,
    pub lambda_ss: Rat,
    pub lambda_z: Rat,
    pub nu_ss: Rat,
    pub nu_z: Rat,
    /// Omega = B(H', H) = (n^2 - 1)/n^2.
    pub omega: Rat,
    /// rho(H) = n/2.
    pub rho_h: Rat,
    /// rho'(H') = (n-1)/2.
    pub rho_hp: Rat,
}

impl DerivedParams {
    pub fn from_params(p: &Params) -> Self {
        let n = p.n as i64;
        DerivedParams {
            rho1: Rat::ratio(n + 1, 2),
            rho2: Rat::ratio(-1, 2),
            rho1p: Rat::ratio(n, 2),
            rho2p: Rat::ratio(-1, 2),
            lambda_ss: Rat::ratio(n, n + 1) * &p.lambda1,
            lambda_z: &p.lambda2 + &(Rat::ratio(1, n + 1) * &p.lambda1),
            nu_ss: Rat::ratio(n - 1, n) * &p.nu1,
            nu_z: &p.nu2 + &(Rat::ratio(1, n) * &p.nu1),
            omega: Rat::ratio(n * n - 1, n * n),
            rho_h: Rat::ratio(n, 2),
            rho_hp: Rat::ratio(n - 1, 2),
        }
    }

    /// Recover (lambda1, lambda2, nu1, nu2) from the split coordinates.
    pub fn recover(&self, n: u32) -> (Rat, Rat, Rat, Rat) {
        let n = n as i64;
        let l1 = Rat::ratio(n + 1, n) * &self.lambda_ss;
        let l2 = &self.lambda_z - &(Rat::ratio(1, n) * &self.lambda_ss);
        let n1 = Rat::ratio(n, n - 1) * &self.nu_ss;
        let n2 = &self.nu_z - &(Rat::ratio(1, n - 1) * &self.nu_ss);
        (l1, l2, n1, n2)
    }
}

/// Sign of a reducibility point lambda1 = +/-(rho1 + 2i).
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum Sign {
    Plus,
    Minus,
}

/// The case predicates of the classification.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CaseFlags {
    /// lambda2 + rho2 = nu2 + rho2', i.e. lambda2 = nu2.
    pub cond_a: bool,
    /// lambda2 - rho2 - nu2 - rho2' = nu1 + rho1'.
    pub cond_bc: bool,
    /// (lambda1, nu1) = (-rho1 - 2i, -rho1' - 2j) with 0 <= j <= i.
    pub in_l: Option<(u32, u32)>,
    /// lambda1 = +/-(rho1 + 2i).
    pub lambda_red: Option<(Sign, u32)>,
    /// nu1 = +/-(rho1' + 2j).
    pub nu_red: Option<(Sign, u32)>,
}

/// If `v = sign*(base + 2k)` for a nonnegative integer k, return (sign, k).
fn red_index(v: &Rat, base: &Rat) -> Option<(Sign, u32)> {
    for sign in [Sign::Plus, Sign::Minus] {
        let signed = match sign {
            Sign::Plus => v.clone(),
            Sign::Minus => -v,
        };
        let k2 = signed - base;
        if let Some(k2) = k2.to_nonneg_integer() {
            if k2 % 2 == 0 {
                return Some((sign, (k2 / 2) as u32));
            }
        }
    }
    None
}

impl CaseFlags {
    pub fn from_params(p: &Params) -> Self {
        let d = p.derive();
        let cond_a = p.lambda2 == p.nu2;
        // lambda2 - rho2 - nu2 - rho2' = lambda2 - nu2 + 1
        let bc_lhs = &p.lambda2 - &p.nu2 + Rat::one();
        let cond_bc = bc_lhs == &p.nu1 + &d.rho1p;
        let lambda_red = red_index(&p.lambda1, &d.rho1);
        let nu_red = red_index(&p.nu1, &d.rho1p);
        let in_l = match (lambda_red, nu_red) {
            (Some((Sign::Minus, i)), Some((Sign::Minus, j))) if j <= i => Some((i, j)),
            _ => None,
        };
        CaseFlags { cond_a, cond_bc, in_l, lambda_red, nu_red }
    }
}
