//! Property-based invariants over randomized rational inputs.

use proptest::prelude::*;

use sbo_core::gegenbauer::{gegenbauer, Parity};
use sbo_core::harmonics::{harmonic_decompose, laplacian, monomials, PolyN};
use sbo_core::rat::{pochhammer, Rat};

fn arb_rat() -> impl Strategy<Value = Rat> {
    (-40i64..=40, 1i64..=12).prop_map(|(p, q)| Rat::ratio(p, q))
}

proptest! {
    #[test]
    fn rational_literals_round_trip(p in -10_000i64..=10_000, q in 1i64..=9_999) {
        let r = Rat::ratio(p, q);
        let back: Rat = r.to_string().parse().unwrap();
        prop_assert_eq!(back, r);
    }

    #[test]
    fn pochhammer_splits(z in arb_rat(), a in 0u32..=12, b in 0u32..=12) {
        let lhs = pochhammer(&z, a + b);
        let shifted = &z + &Rat::from_int(a as i64);
        prop_assert_eq!(lhs, pochhammer(&z, a) * pochhammer(&shifted, b));
    }

    #[test]
    fn gegenbauer_parity_matches_degree(n in 0u32..=10, z in arb_rat()) {
        // nonpositive integer weights make whole polynomials vanish
        prop_assume!(!z.is_negative() && !z.is_zero());
        let p = gegenbauer(n, &z);
        let want = if n % 2 == 0 { Parity::Even } else { Parity::Odd };
        prop_assert_eq!(p.parity(), want);
    }

    #[test]
    fn decomposition_reconstructs_random_polynomials(
        m in 2usize..=4,
        d in 1usize..=6,
        seed in proptest::collection::vec(-9i64..=9, 64),
    ) {
        let monos = monomials(m, d);
        let mut p = PolyN::zero(m, d);
        for (k, e) in monos.into_iter().enumerate() {
            let c = seed[k % seed.len()];
            p = p.add(&PolyN::monomial(m, e, Rat::from_int(c)));
        }
        let pieces = harmonic_decompose(&p);
        let r2 = PolyN::norm2(m);
        let mut rec = PolyN::zero(m, d);
        for (k, h) in pieces {
            prop_assert!(laplacian(&h).is_zero());
            let mut t = h;
            for _ in 0..k {
                t = t.mul(&r2);
            }
            rec = rec.add(&t);
        }
        prop_assert_eq!(rec, p);
    }
}
