//! Exact arithmetic: arbitrary-precision rationals, the cyclotomic field
//! Q(ζ₂₄), and dense exact linear algebra over it.
//!
//! Every value is immutable after construction and every operation is pure,
//! so the whole module is safe for unsynchronized concurrent use.

mod cyclotomic;
mod matrix;
mod rational;

pub use cyclotomic::{sqrt_rational, sqrt_real, CycNum, ExactError, FIELD_DEGREE};
pub use matrix::{gram_schmidt_real, in_span, nullspace, rank, rref, same_span, solve, CycMatrix};
pub use rational::{ParseRationalError, Rational};

#[cfg(test)]
mod proptests {
    use super::*;
    use proptest::prelude::*;

    fn arb_rational() -> impl Strategy<Value = Rational> {
        (-20i64..=20, 1i64..=12).prop_map(|(n, d)| Rational::new(n, d))
    }

    fn arb_cyc() -> impl Strategy<Value = CycNum> {
        proptest::collection::vec(arb_rational(), 8).prop_map(|cs| {
            let mut acc = CycNum::zero();
            for (j, c) in cs.into_iter().enumerate() {
                acc += &CycNum::zeta(j as i64).scale_rational(&c);
            }
            acc
        })
    }

    proptest! {
        #[test]
        fn ring_axioms(x in arb_cyc(), y in arb_cyc(), z in arb_cyc()) {
            prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
            prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
            prop_assert_eq!(&x * &y, &y * &x);
        }

        #[test]
        fn inverse_is_exact(x in arb_cyc()) {
            if !x.is_zero() {
                let inv = x.inverse().unwrap();
                prop_assert_eq!(&x * &inv, CycNum::one());
            }
        }

        #[test]
        fn conjugation_is_an_automorphism(x in arb_cyc(), y in arb_cyc()) {
            prop_assert_eq!((&x * &y).conj(), &x.conj() * &y.conj());
            let norm = &x * &x.conj();
            prop_assert!(norm.im().is_zero());
        }

        #[test]
        fn display_parse_roundtrip(x in arb_cyc()) {
            let s = x.to_string();
            let back = crate::parse::parse_cyc(&s).unwrap();
            prop_assert_eq!(back, x);
        }
    }
}
