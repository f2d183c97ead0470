//! Knot-group and surgery presentations for the (-2,3,2s+1)-pretzel knots,
//! with abelianization bookkeeping.
//!
//! The knot group is `< c, l | c l c l^-1 c^-1 l^-s c^-1 l^-1 c l c l^(s-1) >`,
//! the meridian is `c`, and the longitude is
//! `c^-(2s-2) l c l^s c l^s c l c^-(2s+9)`. Surgery with slope p/q adds the
//! relator `M^p L^q`.

use serde::Serialize;

use crate::error::GroupError;
use crate::word::{Gen, Word};

/// The surgery triple (s, p, q): parameter s >= 3 and coprime positive slope p/q.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SurgeryContext {
    pub s: i64,
    pub p: i64,
    pub q: i64,
}

impl SurgeryContext {
    pub fn new(s: i64, p: i64, q: i64) -> Result<Self, GroupError> {
        check_s(s)?;
        if p < 1 || q < 1 || num_integer::gcd(p, q) != 1 {
            return Err(GroupError::BadSlope { p, q });
        }
        Ok(SurgeryContext { s, p, q })
    }
}

/// A group presentation: generator names plus freely reduced relators.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Presentation {
    pub generators: Vec<char>,
    pub relators: Vec<Word>,
}

fn check_s(s: i64) -> Result<(), GroupError> {
    if s < 3 {
        return Err(GroupError::SmallS(s));
    }
    Ok(())
}

/// The knot-group relator `c l c l^-1 c^-1 l^-s c^-1 l^-1 c l c l^(s-1)`.
pub fn relator(s: i64) -> Result<Word, GroupError> {
    check_s(s)?;
    Ok(Word::from_runs(vec![
        (Gen::C, 1),
        (Gen::L, 1),
        (Gen::C, 1),
        (Gen::L, -1),
        (Gen::C, -1),
        (Gen::L, -s),
        (Gen::C, -1),
        (Gen::L, -1),
        (Gen::C, 1),
        (Gen::L, 1),
        (Gen::C, 1),
        (Gen::L, s - 1),
    ]))
}

/// The meridian.
pub fn meridian() -> Word {
    Word::gen(Gen::C)
}

/// The longitude `c^-(2s-2) l c l^s c l^s c l c^-(2s+9)`.
pub fn longitude(s: i64) -> Result<Word, GroupError> {
    check_s(s)?;
    Ok(Word::from_runs(vec![
        (Gen::C, -(2 * s - 2)),
        (Gen::L, 1),
        (Gen::C, 1),
        (Gen::L, s),
        (Gen::C, 1),
        (Gen::L, s),
        (Gen::C, 1),
        (Gen::L, 1),
        (Gen::C, -(2 * s + 9)),
    ]))
}

/// Image of a {c,l}-word in H_1 of the knot exterior, with [c] -> 1.
///
/// Abelianizing the relator gives 2[c] - [l] = 0, so [l] -> 2 and the class
/// of a word is e_c + 2 e_l.
pub fn homology_class(w: &Word) -> Result<i64, GroupError> {
    let (e_c, e_l) = w.exponent_sums()?;
    Ok(e_c + 2 * e_l)
}

/// The two-relator presentation of the surgered manifold's fundamental group:
/// the knot relator together with `M^p L^q`.
pub fn surgery_presentation(ctx: &SurgeryContext) -> Presentation {
    let r = relator(ctx.s).expect("context is validated");
    let surgery = meridian()
        .pow(ctx.p)
        .concat(&longitude(ctx.s).expect("context is validated").pow(ctx.q));
    Presentation {
        generators: vec!['c', 'l'],
        relators: vec![r, surgery],
    }
}

/// Order of H_1 of the surgered manifold from the abelianized presentation:
/// `|det [[2, -1], [p - (4s+4) q, (2s+2) q]]|`, which works out to p.
pub fn h1_order(ctx: &SurgeryContext) -> i64 {
    let s = ctx.s;
    let row2_c = ctx.p - (4 * s + 4) * ctx.q;
    let row2_l = (2 * s + 2) * ctx.q;
    (2 * row2_l - -row2_c).abs()
}

/// Insert a cyclic conjugate of the relator (or its inverse) at a letter
/// position of `w` and freely reduce. The result represents the same element
/// of the knot group by construction.
pub fn rewrite_with_relator(
    w: &Word,
    s: i64,
    position: usize,
    cyclic_shift: usize,
    inverse: bool,
) -> Result<Word, GroupError> {
    let r = relator(s)?.cyclic_shift(cyclic_shift)?;
    let r = if inverse { r.inverse() } else { r };
    let (prefix, suffix) = w.split_at_letter(position)?;
    Ok(prefix.concat(&r).concat(&suffix))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::parse_word;

    #[test]
    fn relator_shape() {
        let r3 = relator(3).unwrap();
        assert_eq!(r3.letter_len(), 15); // 2s + 9
        assert_eq!(r3.exponent_sums().unwrap(), (2, -1));
        assert_eq!(relator(5).unwrap().letter_len(), 19);
        assert!(relator(2).is_err());
        for s in 3..=50 {
            assert_eq!(homology_class(&relator(s).unwrap()).unwrap(), 0);
        }
    }

    #[test]
    fn longitude_shape() {
        let l3 = longitude(3).unwrap();
        assert_eq!(l3.letter_len(), 30); // 6s + 12
        assert_eq!(l3.exponent_sums().unwrap(), (-16, 8)); // (-(4s+4), 2s+2)
        assert_eq!(longitude(4).unwrap().letter_len(), 36);
        for s in 3..=50 {
            let l = longitude(s).unwrap();
            assert_eq!(l.exponent_sums().unwrap(), (-(4 * s + 4), 2 * s + 2));
            assert_eq!(homology_class(&l).unwrap(), 0);
        }
    }

    #[test]
    fn homology_classes() {
        assert_eq!(homology_class(&meridian()).unwrap(), 1);
        assert_eq!(homology_class(&parse_word("l").unwrap()).unwrap(), 2);
    }

    #[test]
    fn surgery_relators() {
        let ctx = SurgeryContext::new(3, 9, 1).unwrap();
        let pres = surgery_presentation(&ctx);
        assert_eq!(pres.relators[0].letter_len(), 15);
        // c^9 concatenated with the longitude: the leading c^-4 block cancels
        // 4 of the 9 meridian letters
        let expected = meridian().pow(9).concat(&longitude(3).unwrap());
        assert_eq!(pres.relators[1], expected);
        assert_eq!(pres.relators[1].letter_len(), 31);
        // both relators die in homology
        for r in &pres.relators {
            assert_eq!(homology_class(r).unwrap() % h1_order(&ctx), 0);
        }

        let ctx11 = SurgeryContext::new(3, 1, 1).unwrap();
        let pres11 = surgery_presentation(&ctx11);
        assert_eq!(pres11.relators[1], meridian().concat(&longitude(3).unwrap()));
    }

    #[test]
    fn h1_is_p() {
        assert_eq!(h1_order(&SurgeryContext::new(3, 9, 1).unwrap()), 9);
        assert_eq!(h1_order(&SurgeryContext::new(5, 13, 2).unwrap()), 13);
        assert_eq!(h1_order(&SurgeryContext::new(4, 1, 1).unwrap()), 1);
    }

    #[test]
    fn context_validation() {
        assert!(SurgeryContext::new(2, 9, 1).is_err());
        assert!(SurgeryContext::new(3, 4, 2).is_err());
        assert!(SurgeryContext::new(3, 0, 1).is_err());
    }

    #[test]
    fn relator_insertion() {
        let r = relator(3).unwrap();
        // inserting the relator into the identity gives the relator
        assert_eq!(
            rewrite_with_relator(&Word::identity(), 3, 0, 0, false).unwrap(),
            r
        );
        // inserting R then R^-1 at the same spot restores the word
        let w = parse_word("c l^2 c^-1").unwrap();
        let w2 = rewrite_with_relator(&w, 3, 2, 0, false).unwrap();
        let w3 = rewrite_with_relator(&w2, 3, 2 + r.letter_len(), 0, true).unwrap();
        assert_eq!(w3, w);
        // invalid arguments
        assert!(rewrite_with_relator(&w, 3, 99, 0, false).is_err());
        assert!(rewrite_with_relator(&w, 3, 0, 99, false).is_err());
    }

    #[test]
    fn lemma_clc_rewrite() {
        // the displayed rewrite: clc (l c l^s c l)^-1 c (l c l^s c l) = l c l
        // via one relator insertion
        let s = 3;
        let w0 = parse_word("l c l^3 c l").unwrap(); // l c l^s c l
        let lhs = parse_word("c l c")
            .unwrap()
            .concat(&w0.inverse())
            .concat(&Word::gen(Gen::C))
            .concat(&w0);
        // u^-1 R v with u = clc, v = lcl reduces to the same word
        let target = parse_word("l c l").unwrap();
        let inserted = rewrite_with_relator(&target, s, 0, 0, false).unwrap();
        // R (l c l) = (c l c) (w0^-1 c w0)
        assert_eq!(inserted, lhs);
    }
}
