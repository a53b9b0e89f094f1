//! The engine: classification of multiplicity spaces, exact scalar sequences
//! for the five operator families, the recurrence system with an exact
//! nullspace solver, residue and zero-pattern checks, and the
//! composition-factor tables.

mod factors;
mod hyper;
mod relations;
mod residues;
mod seqs;
mod zeros;

pub use factors::{
    classify_factor_sbo, factor_support, kernel_support, FactorKind, FactorLabel, FactorSupport,
    OperatorLabel, OrbitLabel, Side,
};
pub use hyper::hyp3f2_terminating;
pub use relations::{
    solve_relations, solve_relations_in_factors, verify_relations, RelationKind, Violation,
};
pub use residues::{residue_check, ResidueIdentity, ResidueReport};
pub use seqs::{seq_a, seq_a1, seq_a2, seq_b, seq_c};
pub use zeros::{diagonal_pattern_ok, zero_pattern_check, ZeroItem, ZeroPatternReport};

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::params::Params;
use crate::rat::Rat;

/// Operator family labels.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub enum Family {
    A,
    A1,
    A2,
    B,
    C,
    Custom(String),
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::A => write!(f, "A"),
            Family::A1 => write!(f, "A1"),
            Family::A2 => write!(f, "A2"),
            Family::B => write!(f, "B"),
            Family::C => write!(f, "C"),
            Family::Custom(s) => write!(f, "{s}"),
        }
    }
}

impl std::str::FromStr for Family {
    type Err = crate::error::Error;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "A" | "a" => Ok(Family::A),
            "A1" | "a1" => Ok(Family::A1),
            "A2" | "a2" => Ok(Family::A2),
            "B" | "b" => Ok(Family::B),
            "C" | "c" => Ok(Family::C),
            other => Err(crate::error::Error::InvalidParams(format!(
                "unknown family {other:?} (expected A, A1, A2, B or C)"
            ))),
        }
    }
}

/// Symbolic transcendental prefactor: `rational * pi^{pi_half_power/2} *
/// prod Gamma(arg)^{power}`. Compared only by construction, or numerically in
/// the quadrature module; never simplified symbolically.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PrefactorToken {
    pub rational: Rat,
    pub pi_half_power: i32,
    pub gamma_args: Vec<(Rat, i32)>,
}

impl PrefactorToken {
    pub fn one() -> Self {
        PrefactorToken { rational: Rat::one(), pi_half_power: 0, gamma_args: Vec::new() }
    }

    pub fn is_one(&self) -> bool {
        self.rational == Rat::one() && self.pi_half_power == 0 && self.gamma_args.is_empty()
    }
}

impl fmt::Display for PrefactorToken {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.rational)?;
        if self.pi_half_power != 0 {
            write!(f, " * pi^({}/2)", self.pi_half_power)?;
        }
        for (arg, pow) in &self.gamma_args {
            if *pow == 1 {
                write!(f, " * Gamma({arg})")?;
            } else {
                write!(f, " * Gamma({arg})^{pow}")?;
            }
        }
        Ok(())
    }
}

/// A family label, a transcendental prefactor, and an exact map
/// (alpha, alpha') -> Rat on the triangle alpha' <= alpha <= cutoff.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ScalarSeq {
    pub family: Family,
    pub params: Params,
    pub cutoff: u32,
    pub values: BTreeMap<(u32, u32), Rat>,
    pub prefactor: PrefactorToken,
}

impl ScalarSeq {
    pub fn new(family: Family, params: Params, cutoff: u32, prefactor: PrefactorToken) -> Self {
        ScalarSeq { family, params, cutoff, values: BTreeMap::new(), prefactor }
    }

    pub fn value(&self, alpha: u32, alphap: u32) -> Rat {
        self.values.get(&(alpha, alphap)).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn set(&mut self, alpha: u32, alphap: u32, v: Rat) {
        if v.is_zero() {
            self.values.remove(&(alpha, alphap));
        } else {
            self.values.insert((alpha, alphap), v);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    pub fn scale(&self, c: &Rat) -> ScalarSeq {
        let mut out = self.clone();
        out.values = self
            .values
            .iter()
            .filter_map(|(k, v)| {
                let w = v * c;
                (!w.is_zero()).then_some((*k, w))
            })
            .collect();
        out
    }

    /// self - c * other, entrywise on the common triangle.
    pub fn sub_scaled(&self, other: &ScalarSeq, c: &Rat) -> ScalarSeq {
        let cutoff = self.cutoff.min(other.cutoff);
        let mut out = ScalarSeq::new(
            Family::Custom(format!("{} - {} {}", self.family, c, other.family)),
            self.params.clone(),
            cutoff,
            PrefactorToken::one(),
        );
        for alpha in 0..=cutoff {
            for alphap in 0..=alpha {
                let v = self.value(alpha, alphap) - other.value(alpha, alphap) * c;
                out.set(alpha, alphap, v);
            }
        }
        out
    }

    /// CSV lines `alpha,alphap,value` with rationals printed as p/q.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("alpha,alphap,value\n");
        for alpha in 0..=self.cutoff {
            for alphap in 0..=alpha {
                s.push_str(&format!("{alpha},{alphap},{}\n", self.value(alpha, alphap)));
            }
        }
        s
    }

    pub fn to_json(&self) -> serde_json::Value {
        let vals: Vec<serde_json::Value> = (0..=self.cutoff)
            .flat_map(|alpha| (0..=alpha).map(move |alphap| (alpha, alphap)))
            .map(|(alpha, alphap)| {
                serde_json::json!({
                    "alpha": alpha,
                    "alphap": alphap,
                    "value": self.value(alpha, alphap).to_string(),
                })
            })
            .collect();
        serde_json::json!({
            "family": self.family.to_string(),
            "params": {
                "n": self.params.n,
                "lambda1": self.params.lambda1.to_string(),
                "lambda2": self.params.lambda2.to_string(),
                "nu1": self.params.nu1.to_string(),
                "nu2": self.params.nu2.to_string(),
            },
            "cutoff": self.cutoff,
            "prefactor": self.prefactor.to_string(),
            "values": vals,
        })
    }
}

/// Which branch of the multiplicity classification a parameter point falls in.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub enum CaseTag {
    AGeneric,
    AExceptional(u32, u32),
    B,
    C,
    AcOverlap,
    Zero,
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CaseTag::AGeneric => write!(f, "A-generic"),
            CaseTag::AExceptional(i, j) => write!(f, "A-exceptional(L:i={i},j={j})"),
            CaseTag::B => write!(f, "B"),
            CaseTag::C => write!(f, "C"),
            CaseTag::AcOverlap => write!(f, "AC-overlap"),
            CaseTag::Zero => write!(f, "zero"),
        }
    }
}

/// Dimension and basis labels of the multiplicity space at one point.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Classification {
    pub dim: usize,
    pub basis: Vec<Family>,
    pub case_tag: CaseTag,
}

impl Classification {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "dim": self.dim,
            "basis": self.basis.iter().map(|f| f.to_string()).collect::<Vec<_>>(),
            "case": self.case_tag.to_string(),
        })
    }
}

/// Multiplicity dispatch.
pub fn classify(p: &Params) -> Classification {
    let f = p.flags();
    if f.cond_a {
        if let Some((i, j)) = f.in_l {
            return Classification {
                dim: 2,
                basis: vec![Family::A1, Family::A2],
                case_tag: CaseTag::AExceptional(i, j),
            };
        }
        if p.n == 2 && f.cond_bc {
            // only possible with nu1 + rho1' = 1, where A and C are proportional
            return Classification { dim: 1, basis: vec![Family::A], case_tag: CaseTag::AcOverlap };
        }
        return Classification { dim: 1, basis: vec![Family::A], case_tag: CaseTag::AGeneric };
    }
    if f.cond_bc {
        if p.n == 2 {
            return Classification { dim: 1, basis: vec![Family::C], case_tag: CaseTag::C };
        }
        let d = p.derive();
        if p.nu1 == -&d.rho1p {
            return Classification { dim: 1, basis: vec![Family::B], case_tag: CaseTag::B };
        }
    }
    Classification { dim: 0, basis: Vec::new(), case_tag: CaseTag::Zero }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(n: u32, l1: &str, l2: &str, n1: &str, n2: &str) -> Params {
        Params::from_strs(n, l1, l2, n1, n2).unwrap()
    }

    #[test]
    fn classify_examples() {
        let c = classify(&params(3, "0", "0", "0", "0"));
        assert_eq!((c.dim, c.basis), (1, vec![Family::A]));

        let c = classify(&params(2, "-7/2", "0", "-1", "0"));
        assert_eq!(c.dim, 2);
        assert_eq!(c.case_tag, CaseTag::AExceptional(1, 0));

        let c = classify(&params(3, "5", "0", "-3/2", "1"));
        assert_eq!((c.dim, c.basis), (1, vec![Family::B]));

        // n = 2, condBC without condA
        let c = classify(&params(2, "1/3", "2/7", "1/5", "3/35"));
        assert_eq!((c.dim, c.basis.clone()), (1, vec![Family::C]));
        assert_eq!(c.case_tag, CaseTag::C);

        // AC overlap: n = 2, condA and condBC, nu1 + rho1' = 1
        let c = classify(&params(2, "1/3", "2/7", "0", "2/7"));
        assert_eq!(c.case_tag, CaseTag::AcOverlap);
        assert_eq!((c.dim, c.basis), (1, vec![Family::A]));

        // neither condition
        let c = classify(&params(3, "0", "0", "0", "5"));
        assert_eq!(c.dim, 0);
        assert_eq!(c.case_tag, CaseTag::Zero);

        // condBC for n >= 3 with nu1 != -rho1' gives zero
        let c = classify(&params(3, "0", "0", "1/2", "-1"));
        assert!(c.case_tag == CaseTag::Zero && c.dim == 0);
    }
}
