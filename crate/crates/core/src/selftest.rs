//! The invariant suite behind the `selftest` subcommand: a condensed version
//! of the library test batteries, runnable from the CLI at n in {2, 3} and
//! cutoff 6. Each check reports one pass/fail line.

use crate::cocycle::{
    arrow_exists, lambda_z_const, oracle_lambda_z_const, oracle_prop_const, prop_const, sigma,
    sigma_prime, ArrowKey,
};
use crate::gegenbauer::{gegenbauer, gegenbauer_at_zero, Poly1};
use crate::harmonics::{embed, harmonic_basis, harmonic_decompose, laplacian, PolyN};
use crate::params::Params;
use crate::rat::Rat;
use crate::sbo::{classify, seq_a, seq_b, seq_c, solve_relations, verify_relations};

pub struct CheckResult {
    pub name: String,
    pub passed: bool,
}

fn check(out: &mut Vec<CheckResult>, name: &str, passed: bool) {
    out.push(CheckResult { name: name.to_string(), passed });
}

/// Run the whole suite; deterministic order and content.
pub fn run() -> Vec<CheckResult> {
    let mut out = Vec::new();

    // Gegenbauer: derivative identity and value at zero, N <= 12
    let lams = [Rat::ratio(1, 2), Rat::one(), Rat::ratio(3, 2), Rat::from_int(2), Rat::ratio(7, 3)];
    let mut ok = true;
    for lam in &lams {
        let lam1 = lam + &Rat::one();
        for n in 0..=12u32 {
            let d = gegenbauer(n, lam).derivative();
            let rhs = if n == 0 {
                Poly1::zero()
            } else {
                gegenbauer(n - 1, &lam1).scale(&(Rat::from_int(2) * lam))
            };
            ok &= d == rhs;
            if n % 2 == 0 {
                ok &= gegenbauer(n, lam).coeff(0) == gegenbauer_at_zero(n / 2, lam);
            }
        }
    }
    check(&mut out, "gegenbauer: derivative identity and value at zero", ok);

    // Harmonics: embed is harmonic and restriction reproduces the scalar
    let mut ok = true;
    for n in 2..=3usize {
        for alphap in 0..=2u32 {
            for alpha in alphap..=3 {
                for phi in harmonic_basis(n, 2 * alphap as usize) {
                    let e = match embed(&phi, alpha) {
                        Ok(e) => e,
                        Err(_) => {
                            ok = false;
                            continue;
                        }
                    };
                    ok &= laplacian(&e).is_zero();
                    let r = crate::harmonics::restrict(&e).unwrap();
                    let lam = Rat::ratio(n as i64 - 1, 2) + Rat::from_int(2 * alphap as i64);
                    ok &= r == phi.scale(&gegenbauer_at_zero(alpha - alphap, &lam));
                }
            }
        }
    }
    check(&mut out, "harmonics: embeddings harmonic, restriction scalar", ok);

    // Harmonics: decomposition reconstructs exactly
    let mut ok = true;
    for m in 2..=4usize {
        let r2 = PolyN::norm2(m);
        for d in [4usize, 6] {
            let mut p = PolyN::zero(m, d);
            for (t, e) in crate::harmonics::monomials(m, d).into_iter().enumerate() {
                p = p.add(&PolyN::monomial(m, e, Rat::from_int(t as i64 % 5 - 2)));
            }
            let mut rec = PolyN::zero(m, d);
            for (k, h) in harmonic_decompose(&p) {
                ok &= laplacian(&h).is_zero();
                let mut t = h;
                for _ in 0..k {
                    t = t.mul(&r2);
                }
                rec = rec.add(&t);
            }
            ok &= rec == p;
        }
    }
    check(&mut out, "harmonics: graded decomposition reconstructs", ok);

    // Cocycle: table vs oracle on a small sweep, and the sum rules
    let mut ok = true;
    for n in [2u32, 3] {
        for alpha in 0..=2u32 {
            for alphap in 0..=alpha {
                for beta in alpha.saturating_sub(1)..=alpha + 1 {
                    for betap in alphap.saturating_sub(1)..=alphap + 1 {
                        let k = ArrowKey::new(alpha, alphap, beta, betap, n);
                        ok &= oracle_prop_const(&k).map(|o| o == prop_const(&k)).unwrap_or(false);
                    }
                    ok &= oracle_lambda_z_const(alpha, alphap, beta, n)
                        .map(|o| o == lambda_z_const(alpha, alphap, beta, n))
                        .unwrap_or(false);
                }
            }
        }
    }
    check(&mut out, "cocycle: constants match the polynomial oracle", ok);

    let mut ok = true;
    for n in [2u32, 3] {
        let omega = Rat::ratio((n * n) as i64 - 1, (n * n) as i64);
        for alpha in 3..=5u32 {
            for alphap in 1..alpha - 1 {
                for betap in alphap - 1..=alphap + 1 {
                    if n == 2 && betap == alphap {
                        continue;
                    }
                    let mut s = Rat::zero();
                    let mut w = Rat::zero();
                    for beta in alpha - 1..=alpha + 1 {
                        let v = prop_const(&ArrowKey::new(alpha, alphap, beta, betap, n));
                        w = w + (&sigma(beta, n) - &sigma(alpha, n)) * &v;
                        s = s + v;
                    }
                    ok &= s == omega;
                    let want = &sigma_prime(betap, n) - &sigma_prime(alphap, n)
                        + &Rat::ratio(n as i64 - 1, n as i64);
                    ok &= w == want;
                }
                let mut sz = Rat::zero();
                let mut wz = Rat::zero();
                for beta in alpha - 1..=alpha + 1 {
                    let v = lambda_z_const(alpha, alphap, beta, n);
                    wz = wz + (&sigma(beta, n) - &sigma(alpha, n)) * &v;
                    sz = sz + v;
                }
                ok &= sz == Rat::ratio(1, n as i64) && wz == Rat::one();
            }
        }
        ok &= arrow_exists(&ArrowKey::new(1, 1, 2, 2, n));
        ok &= !arrow_exists(&ArrowKey::new(1, 0, 0, 0, n));
    }
    check(&mut out, "cocycle: slice and central sum rules", ok);

    // Engine: closed forms pass the relations; solver dimensions match
    let pts3 = [
        ("1/2", "1/3", "1/5", "1/3", 1usize),
        ("-4", "1/3", "-3/2", "1/3", 2),
        ("1/2", "1/3", "-3/2", "4/3", 1),
        ("1/2", "1/3", "1/5", "17/5", 0),
    ];
    let mut ok = true;
    for (l1, l2, n1, n2, dim) in pts3 {
        let p = Params::from_strs(3, l1, l2, n1, n2).unwrap();
        ok &= classify(&p).dim == dim;
        ok &= solve_relations(&p, 6).map(|b| b.len() == dim).unwrap_or(false);
    }
    let p = Params::from_strs(3, "1/2", "1/3", "1/5", "1/3").unwrap();
    ok &= seq_a(&p, 6).map(|s| verify_relations(&s).is_empty()).unwrap_or(false);
    let p = Params::from_strs(3, "1/2", "1/3", "-3/2", "4/3").unwrap();
    ok &= seq_b(&p, 6).map(|s| verify_relations(&s).is_empty()).unwrap_or(false);
    let p = Params::from_strs(2, "1/3", "2/7", "1/5", "3/35").unwrap();
    ok &= seq_c(&p, 6).map(|s| verify_relations(&s).is_empty()).unwrap_or(false);
    ok &= classify(&p).dim == 1;
    ok &= solve_relations(&p, 6).map(|b| b.len() == 1).unwrap_or(false);
    check(&mut out, "engine: closed forms solve the relations, dims match", ok);

    out
}
