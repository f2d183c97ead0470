//! Property tests for the algebraic foundations: free-group word laws,
//! cyclotomic stripping as an exact factorization, and Sturm counts against
//! polynomials with known roots.

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use pretzel::cyclotomic::{cyclotomic, strip_cyclotomic};
use pretzel::poly::IntPoly;
use pretzel::sturm::count_real_roots_in;
use pretzel::word::{parse_word, Gen, Word};

fn word_strategy() -> impl Strategy<Value = Word> {
    prop::collection::vec((0..3usize, (-4i64..=4).prop_filter("nonzero", |e| *e != 0)), 0..8)
        .prop_map(|runs| {
            let gens = [Gen::C, Gen::L, Gen::K];
            Word::from_runs(runs.into_iter().map(|(g, e)| (gens[g], e)).collect())
        })
}

proptest! {
    #[test]
    fn display_parse_roundtrip(w in word_strategy()) {
        prop_assert_eq!(parse_word(&w.to_string()).unwrap(), w);
    }

    #[test]
    fn inverse_involution(w in word_strategy()) {
        prop_assert_eq!(w.inverse().inverse(), w.clone());
        prop_assert_eq!(w.concat(&w.inverse()), Word::identity());
        prop_assert_eq!(w.inverse().concat(&w), Word::identity());
    }

    #[test]
    fn concat_inverse_law(u in word_strategy(), v in word_strategy()) {
        prop_assert_eq!(u.concat(&v).inverse(), v.inverse().concat(&u.inverse()));
    }

    #[test]
    fn pow_additivity(w in word_strategy(), a in -3i64..=3, b in -3i64..=3) {
        prop_assert_eq!(w.pow(a).concat(&w.pow(b)), w.pow(a + b));
    }

    #[test]
    fn conjugation_composes(w in word_strategy(), a in word_strategy(), b in word_strategy()) {
        // (a b) w (a b)^-1 = a (b w b^-1) a^-1
        prop_assert_eq!(
            w.conjugate(&a.concat(&b)),
            w.conjugate(&b).conjugate(&a)
        );
        prop_assert_eq!(w.conjugate(&Word::identity()), w.clone());
    }

    #[test]
    fn cyclotomic_strip_is_exact(
        indices in prop::collection::vec(1u64..=12, 0..4),
        rem_coeffs in prop::collection::vec(-3i64..=3, 1..6),
    ) {
        let rem = IntPoly::from_i64(&rem_coeffs);
        prop_assume!(!rem.is_zero());
        let f = indices
            .iter()
            .fold(rem, |acc, &n| &acc * &cyclotomic(n));
        let (factors, stripped) = strip_cyclotomic(&f).unwrap();
        let rebuilt = factors.iter().fold(stripped, |acc, &(n, mult)| {
            (0..mult).fold(acc, |a, _| &a * &cyclotomic(n))
        });
        prop_assert_eq!(rebuilt, f);
    }

    #[test]
    fn sturm_counts_constructed_roots(
        roots in prop::collection::btree_set(-6i64..=6, 1..6),
        a2 in -15i64..=15,
        width2 in 1i64..=20,
    ) {
        // polynomial with exactly the chosen simple integer roots; interval
        // endpoints at half-integers so no root sits on the boundary
        let f = roots.iter().fold(IntPoly::one(), |acc, &r| {
            &acc * &IntPoly::from_i64(&[-r, 1])
        });
        let half = |n: i64| BigRational::new(BigInt::from(n), BigInt::from(2));
        let (a, b) = (half(2 * a2 + 1), half(2 * (a2 + width2) + 1));
        let expected = roots
            .iter()
            .filter(|&&r| half(2 * r) > a && half(2 * r) < b)
            .count();
        prop_assert_eq!(count_real_roots_in(&f, &a, &b), expected);
    }
}
