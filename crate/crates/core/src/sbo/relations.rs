//! The recurrence system tying the scalars of an intertwiner together, the
//! exact violation checker, and the nullspace solver.
//!
//! Each relation instance at a base type (alpha, alpha') constrains the
//! scalars on one neighboring column beta' in {alpha'-1, alpha', alpha'+1}
//! (the traceless part) or the central direction. Coefficients come from the
//! proportionality-constant table; the central relation uses the ungated
//! middle column and right side 2(n+1)(nu_z - lambda_z).

use std::collections::BTreeMap;
use std::fmt;

use crate::cocycle::{lambda_z_const, prop_const, ArrowKey};
use crate::error::{Error, Result};
use crate::linalg;
use crate::params::Params;
use crate::rat::Rat;

use super::factors::{factor_support, FactorLabel, FactorSupport, Side};
use super::{Family, PrefactorToken, ScalarSeq};

/// The four relation kinds.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum RelationKind {
    R1,
    R2,
    R3,
    RZ,
}

impl fmt::Display for RelationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RelationKind::R1 => write!(f, "R1"),
            RelationKind::R2 => write!(f, "R2"),
            RelationKind::R3 => write!(f, "R3"),
            RelationKind::RZ => write!(f, "RZ"),
        }
    }
}

/// One fully-instantiated relation: sum of terms minus rhs * t_{base} = 0.
pub(crate) struct Instance {
    pub base: (u32, u32),
    /// (index, coefficient) pairs; indices are valid type pairs.
    pub terms: Vec<((u32, u32), Rat)>,
    /// Coefficient on t_{base} on the right-hand side.
    pub rhs: Rat,
}

pub(crate) struct RelationContext {
    n: u32,
    lambda1: Rat,
    nu1: Rat,
    omega: Rat,
    /// 2(n+1)(nu_z - lambda_z), the central right side.
    rhs_z: Rat,
}

impl RelationContext {
    pub fn new(p: &Params) -> Self {
        let d = p.derive();
        let n = p.n as i64;
        let rhs_z = Rat::from_int(2 * (n + 1)) * (&d.nu_z - &d.lambda_z);
        RelationContext {
            n: p.n,
            lambda1: p.lambda1.clone(),
            nu1: p.nu1.clone(),
            omega: d.omega,
            rhs_z,
        }
    }

    fn coeff_step(&self, alpha: u32, beta: u32) -> Rat {
        let n = self.n as i64;
        let a = alpha as i64;
        let two_l1 = Rat::from_int(2) * &self.lambda1;
        match beta as i64 - a {
            1 => Rat::from_int(n + 4 * a + 1) + two_l1,
            0 => two_l1,
            -1 => two_l1 - Rat::from_int(n + 4 * a - 3),
            _ => unreachable!(),
        }
    }

    /// Build one relation instance, or None when the kind does not apply at
    /// this base type.
    pub fn instance(&self, kind: RelationKind, alpha: u32, alphap: u32) -> Option<Instance> {
        debug_assert!(alphap <= alpha);
        let n = self.n as i64;
        let betap: i64 = match kind {
            RelationKind::R1 => {
                if alphap == 0 {
                    return None;
                }
                alphap as i64 - 1
            }
            RelationKind::R2 => {
                if self.n == 2 || alphap == 0 {
                    return None;
                }
                alphap as i64
            }
            RelationKind::R3 => alphap as i64 + 1,
            RelationKind::RZ => alphap as i64,
        };
        let mut terms = Vec::new();
        for beta in alpha.saturating_sub(1)..=alpha + 1 {
            if betap > beta as i64 {
                continue; // type absent, its scalar is zero
            }
            let bp = betap as u32;
            let lam = match kind {
                RelationKind::RZ => lambda_z_const(alpha, alphap, beta, self.n),
                _ => prop_const(&ArrowKey::new(alpha, alphap, beta, bp, self.n)),
            };
            if lam.is_zero() {
                continue;
            }
            let c = lam * self.coeff_step(alpha, beta);
            if !c.is_zero() {
                terms.push(((beta, bp), c));
            }
        }
        let ap = alphap as i64;
        let rhs = match kind {
            RelationKind::R1 => {
                &self.omega
                    * &(Rat::from_int(2) * &self.nu1 + Rat::from_int(-n - 4 * ap + 4))
            }
            RelationKind::R2 => Rat::from_int(2) * &self.omega * &self.nu1,
            RelationKind::R3 => {
                &self.omega * &(Rat::from_int(n + 4 * ap) + Rat::from_int(2) * &self.nu1)
            }
            RelationKind::RZ => self.rhs_z.clone(),
        };
        Some(Instance { base: (alpha, alphap), terms, rhs })
    }

    pub fn all_kinds() -> [RelationKind; 4] {
        [RelationKind::R1, RelationKind::R2, RelationKind::R3, RelationKind::RZ]
    }
}

/// An exact relation violation found by [`verify_relations`].
#[derive(Clone, Debug)]
pub struct Violation {
    pub kind: RelationKind,
    pub alpha: u32,
    pub alphap: u32,
    pub residual: Rat,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} at ({},{}): residual {}",
            self.kind, self.alpha, self.alphap, self.residual
        )
    }
}

/// Check every relation instance whose referenced indices lie inside the
/// sequence's cutoff triangle; instances that would reach past the boundary
/// are excluded. Violations are data, not errors.
pub fn verify_relations(seq: &ScalarSeq) -> Vec<Violation> {
    let ctx = RelationContext::new(&seq.params);
    let mut out = Vec::new();
    for alpha in 0..=seq.cutoff {
        for alphap in 0..=alpha {
            for kind in RelationContext::all_kinds() {
                let Some(inst) = ctx.instance(kind, alpha, alphap) else {
                    continue;
                };
                if inst.terms.iter().any(|((b, _), _)| *b > seq.cutoff) {
                    continue;
                }
                let mut acc = Rat::zero();
                for ((b, bp), c) in &inst.terms {
                    acc = acc + c * &seq.value(*b, *bp);
                }
                let residual = acc - &inst.rhs * &seq.value(alpha, alphap);
                if !residual.is_zero() {
                    out.push(Violation { kind, alpha, alphap, residual });
                }
            }
        }
    }
    out
}

fn triangle_index(cutoff: u32) -> BTreeMap<(u32, u32), usize> {
    let mut idx = BTreeMap::new();
    for alpha in 0..=cutoff {
        for alphap in 0..=alpha {
            let k = idx.len();
            idx.insert((alpha, alphap), k);
        }
    }
    idx
}

/// Exact nullspace of the relation system on the triangle alpha' <= alpha <=
/// cutoff, reported on the inner triangle alpha <= cutoff - 2 to suppress
/// truncation artifacts. The basis is canonical (reduced row echelon over the
/// inner triangle in lexicographic index order).
pub fn solve_relations(p: &Params, cutoff: u32) -> Result<Vec<ScalarSeq>> {
    if cutoff < 4 {
        return Err(Error::InvalidParams("solver cutoff must be at least 4".into()));
    }
    let idx = triangle_index(cutoff);
    let ctx = RelationContext::new(p);
    let mut rows = Vec::new();
    for &(alpha, alphap) in idx.keys() {
        for kind in RelationContext::all_kinds() {
            let Some(inst) = ctx.instance(kind, alpha, alphap) else {
                continue;
            };
            if inst.terms.iter().any(|((b, _), _)| *b > cutoff) {
                continue;
            }
            let mut row = vec![Rat::zero(); idx.len()];
            for ((b, bp), c) in &inst.terms {
                row[idx[&(*b, *bp)]] = &row[idx[&(*b, *bp)]] + c;
            }
            let base = idx[&inst.base];
            row[base] = &row[base] - &inst.rhs;
            if row.iter().any(|x| !x.is_zero()) {
                rows.push(row);
            }
        }
    }
    let ns = linalg::nullspace(rows, idx.len());
    Ok(project_basis(ns, &idx, cutoff - 2, p))
}

/// Project nullspace vectors to the inner triangle and re-canonicalize.
fn project_basis(
    ns: Vec<Vec<Rat>>,
    idx: &BTreeMap<(u32, u32), usize>,
    inner: u32,
    p: &Params,
) -> Vec<ScalarSeq> {
    let inner_keys: Vec<(u32, u32)> =
        idx.keys().copied().filter(|&(a, _)| a <= inner).collect();
    let mut proj: Vec<Vec<Rat>> = ns
        .into_iter()
        .map(|v| inner_keys.iter().map(|k| v[idx[k]].clone()).collect())
        .collect();
    linalg::rref(&mut proj);
    proj.retain(|row| row.iter().any(|x| !x.is_zero()));
    proj.into_iter()
        .enumerate()
        .map(|(i, row)| {
            let mut seq = ScalarSeq::new(
                Family::Custom(format!("solution{i}")),
                p.clone(),
                inner,
                PrefactorToken::one(),
            );
            for (k, v) in inner_keys.iter().zip(row) {
                seq.set(k.0, k.1, v);
            }
            seq
        })
        .collect()
}

/// Nullspace of the relation system restricted to a pair of composition
/// factors: scalars supported on supp(U) x supp(U'), relations only for base
/// types inside U and target columns inside supp(U').
pub fn solve_relations_in_factors(
    p: &Params,
    u: &FactorLabel,
    up: &FactorLabel,
    cutoff: u32,
) -> Result<Vec<ScalarSeq>> {
    if u.side != Side::G || up.side != Side::Gp {
        return Err(Error::InvalidParams(
            "factor pair must be (G-side, G'-side)".into(),
        ));
    }
    let su = factor_support(u, p)?;
    let sup = factor_support(up, p)?;
    let idx = triangle_index(cutoff);
    let member = |key: &(u32, u32), su: &FactorSupport, sup: &FactorSupport| {
        su.contains(key.0) && sup.contains(key.1)
    };
    let ctx = RelationContext::new(p);
    let mut rows = Vec::new();
    for &(alpha, alphap) in idx.keys() {
        if !su.contains(alpha) {
            continue;
        }
        for kind in RelationContext::all_kinds() {
            let Some(inst) = ctx.instance(kind, alpha, alphap) else {
                continue;
            };
            // the target column must live in U' (R1 implies alphap >= 1 here)
            let bp = match kind {
                RelationKind::R1 => alphap - 1,
                RelationKind::R3 => alphap + 1,
                _ => alphap,
            };
            if !sup.contains(bp) {
                continue;
            }
            // scalars outside the factor pair are identically zero
            let terms: Vec<((u32, u32), Rat)> = inst
                .terms
                .iter()
                .filter(|(k, _)| member(k, &su, &sup))
                .cloned()
                .collect();
            if terms.iter().any(|((b, _), _)| *b > cutoff) {
                continue;
            }
            let mut row = vec![Rat::zero(); idx.len()];
            for ((b, bpp), c) in &terms {
                row[idx[&(*b, *bpp)]] = &row[idx[&(*b, *bpp)]] + c;
            }
            if member(&inst.base, &su, &sup) {
                let base = idx[&inst.base];
                row[base] = &row[base] - &inst.rhs;
            }
            if row.iter().any(|x| !x.is_zero()) {
                rows.push(row);
            }
        }
    }
    // force scalars outside the pair to zero
    for (key, &col) in &idx {
        if !member(key, &su, &sup) {
            let mut row = vec![Rat::zero(); idx.len()];
            row[col] = Rat::one();
            rows.push(row);
        }
    }
    let ns = linalg::nullspace(rows, idx.len());
    Ok(project_basis(ns, &idx, cutoff - 2, p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sbo::{seq_a, seq_b, seq_c};

    fn params(n: u32, l1: &str, l2: &str, n1: &str, n2: &str) -> Params {
        Params::from_strs(n, l1, l2, n1, n2).unwrap()
    }

    #[test]
    fn closed_forms_satisfy_relations() {
        // generic condA points
        for p in [
            params(3, "1/2", "1/3", "1/5", "1/3"),
            params(2, "1/3", "2/7", "1/7", "2/7"),
            params(4, "-1/2", "0", "2/3", "0"),
        ] {
            let s = seq_a(&p, 8).unwrap();
            assert!(verify_relations(&s).is_empty(), "A at n={}", p.n);
        }
        // B locus
        let p = params(3, "1/2", "1/3", "-3/2", "4/3");
        let s = seq_b(&p, 8).unwrap();
        assert!(verify_relations(&s).is_empty());
        // C locus, n = 2
        let p = params(2, "1/3", "2/7", "1/5", "3/35");
        let s = seq_c(&p, 8).unwrap();
        assert!(verify_relations(&s).is_empty());
    }

    #[test]
    fn wrong_sequence_fails() {
        // all-ones fails off the restriction locus
        let p = params(3, "0", "0", "0", "5");
        let mut s = ScalarSeq::new(Family::Custom("ones".into()), p, 6, PrefactorToken::one());
        for a in 0..=6u32 {
            for ap in 0..=a {
                s.set(a, ap, Rat::one());
            }
        }
        assert!(!verify_relations(&s).is_empty());
    }

    #[test]
    fn restriction_locus_all_ones_passes() {
        // condA and nu1 = lambda1 + 1/2: the restriction operator
        let p = params(3, "1/4", "1/3", "3/4", "1/3");
        let mut s = ScalarSeq::new(Family::A2, p, 8, PrefactorToken::one());
        for a in 0..=8u32 {
            for ap in 0..=a {
                s.set(a, ap, Rat::one());
            }
        }
        assert!(verify_relations(&s).is_empty());
    }

    #[test]
    fn solver_dimension_matches_classification() {
        use crate::sbo::classify;
        let pts = [
            params(3, "1/2", "1/3", "1/5", "1/3"),  // dim 1, A
            params(3, "-4", "1/3", "-3/2", "1/3"),  // dim 2, L = (1, 0)
            params(3, "1/2", "1/3", "-3/2", "4/3"), // dim 1, B
            params(2, "1/3", "2/7", "1/5", "3/35"), // dim 1, C
            params(3, "1/2", "1/3", "1/5", "17/5"), // dim 0
            params(3, "-4", "1/3", "1/5", "1/3"),   // dim 1, condA at reducible lambda1
        ];
        for p in pts {
            let want = classify(&p).dim;
            let basis = solve_relations(&p, 6).unwrap();
            assert_eq!(basis.len(), want, "dim at {p:?}");
        }
    }

    #[test]
    fn solver_solution_proportional_to_closed_form() {
        let p = params(3, "1/2", "1/3", "1/5", "1/3");
        let basis = solve_relations(&p, 8).unwrap();
        assert_eq!(basis.len(), 1);
        let s = seq_a(&p, 6).unwrap();
        let sol = &basis[0];
        // both nonzero at (0,0); compare after matching scale
        let scale = s.value(0, 0) / sol.value(0, 0);
        for a in 0..=6u32 {
            for ap in 0..=a {
                assert_eq!(&sol.value(a, ap) * &scale, s.value(a, ap), "({a},{ap})");
            }
        }
    }
}
