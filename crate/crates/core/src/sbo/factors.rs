//! Composition factors at reducibility points, their type supports, the
//! operator tables between them, and kernel-support lookup.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::params::{Params, Sign};
use crate::rat::Rat;

use super::Family;

/// Which group the factor belongs to.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum Side {
    /// GL(n+1,R) side.
    G,
    /// GL(n,R) side.
    Gp,
}

/// F-factors have finitely many types (alpha <= i), T-factors the rest.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum FactorKind {
    F,
    T,
}

/// A composition factor label; only defined at reducibility points
/// lambda1 = +/-(rho1 + 2i) resp. nu1 = +/-(rho1' + 2j).
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct FactorLabel {
    pub side: Side,
    pub kind: FactorKind,
    pub sign: Sign,
    pub index: u32,
}

impl fmt::Display for FactorLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = match self.kind {
            FactorKind::F => "F",
            FactorKind::T => "T",
        };
        let s = match self.sign {
            Sign::Plus => "+",
            Sign::Minus => "-",
        };
        let p = match self.side {
            Side::G => "",
            Side::Gp => "'",
        };
        write!(f, "{k}{p}{s}({})", self.index)
    }
}

/// Predicate on types: F(i) covers alpha <= i, T(i) covers alpha > i.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct FactorSupport {
    pub kind: FactorKind,
    pub index: u32,
}

impl FactorSupport {
    pub fn contains(&self, alpha: u32) -> bool {
        match self.kind {
            FactorKind::F => alpha <= self.index,
            FactorKind::T => alpha > self.index,
        }
    }
}

/// The type support of a factor, provided the parameters realize it.
pub fn factor_support(f: &FactorLabel, p: &Params) -> Result<FactorSupport> {
    let flags = p.flags();
    let found = match f.side {
        Side::G => flags.lambda_red,
        Side::Gp => flags.nu_red,
    };
    match found {
        Some((sign, index)) if sign == f.sign && index == f.index => {
            Ok(FactorSupport { kind: f.kind, index: f.index })
        }
        _ => Err(Error::LocusMismatch(format!(
            "factor {f} is not realized at these parameters"
        ))),
    }
}

/// Entry of the composition-factor operator tables.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub enum OperatorLabel {
    A,
    A1,
    /// A1 - (2j)!/(2i-2j)! A2.
    A1MinusA2 { i: u32, j: u32 },
    Zero,
}

impl fmt::Display for OperatorLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OperatorLabel::A => write!(f, "A"),
            OperatorLabel::A1 => write!(f, "A1"),
            OperatorLabel::A1MinusA2 { i, j } => {
                write!(f, "A1 - (2*{j})!/(2*{i}-2*{j})! A2")
            }
            OperatorLabel::Zero => write!(f, "0"),
        }
    }
}

/// Operator table between composition factors at a joint reducibility point
/// with lambda2 = nu2. Labels not realizable at `p` are answered through the
/// factor isomorphisms where those exist (sign flip on the G'-side for n = 2,
/// or for index 0 at any n); everything else is a locus mismatch.
pub fn classify_factor_sbo(u: &FactorLabel, up: &FactorLabel, p: &Params) -> Result<OperatorLabel> {
    if u.side != Side::G || up.side != Side::Gp {
        return Err(Error::InvalidParams(
            "expected a G-side factor and a G'-side factor".into(),
        ));
    }
    let flags = p.flags();
    if !flags.cond_a {
        return Err(Error::LocusMismatch(
            "the factor tables require lambda2 = nu2".into(),
        ));
    }
    let Some((sl, i)) = flags.lambda_red else {
        return Err(Error::LocusMismatch("lambda1 is not at a reducibility point".into()));
    };
    let Some((sn, j)) = flags.nu_red else {
        return Err(Error::LocusMismatch("nu1 is not at a reducibility point".into()));
    };
    if u.sign != sl || u.index != i {
        return Err(Error::LocusMismatch(format!(
            "factor {u} is not realized at these parameters"
        )));
    }
    if up.index != j {
        return Err(Error::LocusMismatch(format!(
            "factor {up} is not realized at these parameters"
        )));
    }
    let up_sign = if up.sign == sn {
        up.sign
    } else if p.n == 2 || j == 0 {
        // reachable through the isomorphism at the same central parameter
        sn
    } else {
        return Err(Error::LocusMismatch(format!(
            "factor {up} is not realized and no isomorphism applies"
        )));
    };
    use FactorKind::{F, T};
    use Sign::{Minus, Plus};
    let entry = if j <= i {
        match ((u.kind, u.sign), (up.kind, up_sign)) {
            ((F, Plus), (F, Plus)) => OperatorLabel::A,
            ((F, Minus), (F, Minus)) => OperatorLabel::A1,
            ((T, Plus), (F, Minus)) => OperatorLabel::A1,
            ((T, Plus), (T, Plus)) => OperatorLabel::A,
            ((T, Minus), (F, Plus)) => OperatorLabel::A,
            ((T, Minus), (T, Minus)) => OperatorLabel::A1MinusA2 { i, j },
            _ => OperatorLabel::Zero,
        }
    } else {
        match ((u.kind, u.sign), (up.kind, up_sign)) {
            ((T, Plus), (F, Plus)) => OperatorLabel::A,
            ((T, Plus), (F, Minus)) => OperatorLabel::A1,
            ((T, Minus), (F, Plus)) => OperatorLabel::A,
            ((T, Minus), (F, Minus)) => OperatorLabel::A1,
            _ => OperatorLabel::Zero,
        }
    };
    Ok(entry)
}

/// Closure labels for the distribution-kernel supports.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum OrbitLabel {
    /// Closure of the one-dimensional orbit O3.
    O3Closure,
    O2,
    O1,
    /// The zero distribution.
    ZeroSet,
    /// The whole flag variety (regular operator).
    FullSpace,
    /// Closure of O4.
    O4Closure,
}

impl fmt::Display for OrbitLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrbitLabel::O3Closure => write!(f, "O3-closure"),
            OrbitLabel::O2 => write!(f, "O2"),
            OrbitLabel::O1 => write!(f, "O1"),
            OrbitLabel::ZeroSet => write!(f, "{{0}}"),
            OrbitLabel::FullSpace => write!(f, "G/P"),
            OrbitLabel::O4Closure => write!(f, "O4-closure"),
        }
    }
}

/// v in base + 2 Z_{>=0}?
fn in_arith(v: &Rat, base: &Rat) -> bool {
    (v - base).to_nonneg_integer().is_some_and(|t| t % 2 == 0)
}

/// Support of the distribution kernel of the given family at `p`.
pub fn kernel_support(family: &Family, p: &Params) -> Result<OrbitLabel> {
    let d = p.derive();
    let flags = p.flags();
    // nu1 in -rho1' - 2 Z>=0
    let nu1_lattice = in_arith(&-&p.nu1, &d.rho1p);
    // lambda1 + rho1 - nu1 - rho1' in -2 Z>=0
    let cross = &p.lambda1 + &d.rho1 - &p.nu1 - &d.rho1p;
    let cross_lattice = in_arith(&-&cross, &Rat::zero());
    match family {
        Family::A => Ok(if flags.in_l.is_some() {
            OrbitLabel::ZeroSet
        } else if cross_lattice {
            OrbitLabel::O2
        } else if nu1_lattice {
            OrbitLabel::O1
        } else {
            OrbitLabel::O3Closure
        }),
        Family::A1 => {
            if !nu1_lattice {
                return Err(Error::LocusMismatch("A1 needs nu1 = -rho1' - 2j".into()));
            }
            Ok(OrbitLabel::O1)
        }
        Family::A2 => {
            if !cross_lattice {
                return Err(Error::LocusMismatch(
                    "A2 needs lambda1+rho1-nu1-rho1' = -2N".into(),
                ));
            }
            Ok(OrbitLabel::O2)
        }
        Family::B => {
            if p.nu1 != -&d.rho1p {
                return Err(Error::LocusMismatch("B needs nu1 = -rho1'".into()));
            }
            // lambda1 in rho1 - 1 - 2 Z>=0?
            let on = in_arith(&(&d.rho1 - &Rat::one() - &p.lambda1), &Rat::zero());
            Ok(if on { OrbitLabel::O4Closure } else { OrbitLabel::FullSpace })
        }
        Family::C => {
            if p.n != 2 {
                return Err(Error::LocusMismatch("C exists only for n = 2".into()));
            }
            // -nu1 - rho1' + 1 in -2 Z>=0 and lambda1+rho1+nu1-rho1' in -2 Z>=0
            let c1 = in_arith(&(&p.nu1 + &d.rho1p - &Rat::one()), &Rat::zero());
            let c2v = &p.lambda1 + &d.rho1 + &p.nu1 - &d.rho1p;
            let c2 = in_arith(&-&c2v, &Rat::zero());
            Ok(match (c1, c2) {
                (false, false) => OrbitLabel::FullSpace,
                (false, true) => OrbitLabel::O4Closure,
                (true, false) => OrbitLabel::O3Closure,
                (true, true) => OrbitLabel::O1,
            })
        }
        Family::Custom(_) => Err(Error::InvalidParams(
            "kernel support is defined for the named families only".into(),
        )),
    }
}
