//! Freely reduced words over the generators {c, l, k}.
//!
//! Words are stored run-length as (generator, exponent) pairs: relator powers
//! like l^s dominate and the order-prover manipulates whole blocks.

use serde::{Deserialize, Serialize};
use std::fmt;

use crate::error::GroupError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Gen {
    C,
    L,
    K,
}

impl Gen {
    pub fn name(self) -> char {
        match self {
            Gen::C => 'c',
            Gen::L => 'l',
            Gen::K => 'k',
        }
    }
}

/// A freely reduced word: adjacent runs have distinct generators and nonzero
/// exponents; the empty sequence is the identity.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct Word {
    runs: Vec<(Gen, i64)>,
}

impl Word {
    pub fn identity() -> Self {
        Word { runs: vec![] }
    }

    pub fn gen(g: Gen) -> Self {
        Word::from_runs(vec![(g, 1)])
    }

    pub fn gen_pow(g: Gen, e: i64) -> Self {
        Word::from_runs(vec![(g, e)])
    }

    /// Build a word from raw runs, freely reducing.
    pub fn from_runs(runs: Vec<(Gen, i64)>) -> Self {
        let mut out: Vec<(Gen, i64)> = Vec::with_capacity(runs.len());
        for (g, e) in runs {
            if e == 0 {
                continue;
            }
            out.push((g, e));
            // merge and cancel at the top of the stack
            while out.len() >= 2 {
                let n = out.len();
                if out[n - 2].0 == out[n - 1].0 {
                    let (_, e1) = out.pop().unwrap();
                    out[n - 2].1 += e1;
                    if out[n - 2].1 == 0 {
                        out.pop();
                    }
                } else {
                    break;
                }
            }
        }
        Word { runs: out }
    }

    pub fn runs(&self) -> &[(Gen, i64)] {
        &self.runs
    }

    pub fn is_identity(&self) -> bool {
        self.runs.is_empty()
    }

    /// Total letter count, exponents counted with multiplicity.
    pub fn letter_len(&self) -> usize {
        self.runs.iter().map(|(_, e)| e.unsigned_abs() as usize).sum()
    }

    pub fn inverse(&self) -> Word {
        Word {
            runs: self.runs.iter().rev().map(|&(g, e)| (g, -e)).collect(),
        }
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut runs = self.runs.clone();
        runs.extend(other.runs.iter().cloned());
        Word::from_runs(runs)
    }

    pub fn pow(&self, n: i64) -> Word {
        if n == 0 {
            return Word::identity();
        }
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut out = Word::identity();
        for _ in 0..n.unsigned_abs() {
            out = out.concat(&base);
        }
        out
    }

    pub fn conjugate(&self, by: &Word) -> Word {
        by.concat(self).concat(&by.inverse())
    }

    /// Total exponent of each generator, in the order (c, l, k).
    pub fn exponent_sums_all(&self) -> (i64, i64, i64) {
        let mut sums = (0, 0, 0);
        for &(g, e) in &self.runs {
            match g {
                Gen::C => sums.0 += e,
                Gen::L => sums.1 += e,
                Gen::K => sums.2 += e,
            }
        }
        sums
    }

    /// Exponent sums (e_c, e_l) for a word over {c, l}; rejects k-letters.
    pub fn exponent_sums(&self) -> Result<(i64, i64), GroupError> {
        let (c, l, k) = self.exponent_sums_all();
        if k != 0 || self.runs.iter().any(|&(g, _)| g == Gen::K) {
            return Err(GroupError::UnexpectedK);
        }
        Ok((c, l))
    }

    /// Expand to single letters: (generator, +-1) with multiplicity.
    pub fn letters(&self) -> Vec<(Gen, i64)> {
        let mut out = Vec::with_capacity(self.letter_len());
        for &(g, e) in &self.runs {
            let sign = e.signum();
            for _ in 0..e.unsigned_abs() {
                out.push((g, sign));
            }
        }
        out
    }

    /// Split at a letter position in 0..=letter_len, returning (prefix, suffix).
    pub fn split_at_letter(&self, pos: usize) -> Result<(Word, Word), GroupError> {
        let len = self.letter_len();
        if pos > len {
            return Err(GroupError::BadPosition { pos, len });
        }
        let letters = self.letters();
        let prefix = Word::from_runs(letters[..pos].to_vec());
        let suffix = Word::from_runs(letters[pos..].to_vec());
        Ok((prefix, suffix))
    }

    /// Cyclic left rotation by `shift` letters.
    pub fn cyclic_shift(&self, shift: usize) -> Result<Word, GroupError> {
        let len = self.letter_len();
        if len == 0 {
            return Ok(Word::identity());
        }
        if shift >= len {
            return Err(GroupError::BadShift { shift, len });
        }
        let (head, tail) = self.split_at_letter(shift)?;
        Ok(tail.concat(&head))
    }

    /// Shortlex order key: (letter length, letter sequence).
    pub fn shortlex_key(&self) -> (usize, Vec<(Gen, i64)>) {
        (self.letter_len(), self.letters())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.runs.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        for &(g, e) in &self.runs {
            if !first {
                write!(f, " ")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{}", g.name())?;
            } else {
                write!(f, "{}^{}", g.name(), e)?;
            }
        }
        Ok(())
    }
}

impl Serialize for Word {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        parse_word(&text).map_err(serde::de::Error::custom)
    }
}

/// Parse a word literal: tokens `c`, `l`, `k` with optional `^<int>`,
/// whitespace separated, with `( ... )` groups that may also carry `^<int>`;
/// `1` denotes the identity.
pub fn parse_word(text: &str) -> Result<Word, GroupError> {
    let bytes = text.as_bytes();
    let mut pos = 0;
    let w = parse_seq(bytes, &mut pos, 0)?;
    skip_ws(bytes, &mut pos);
    if pos != bytes.len() {
        return Err(GroupError::WordSyntax {
            at: pos,
            msg: "unexpected trailing input".into(),
        });
    }
    Ok(w)
}

fn skip_ws(bytes: &[u8], pos: &mut usize) {
    while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
        *pos += 1;
    }
}

fn parse_int(bytes: &[u8], pos: &mut usize) -> Result<i64, GroupError> {
    let start = *pos;
    if *pos < bytes.len() && (bytes[*pos] == b'-' || bytes[*pos] == b'+') {
        *pos += 1;
    }
    while *pos < bytes.len() && bytes[*pos].is_ascii_digit() {
        *pos += 1;
    }
    std::str::from_utf8(&bytes[start..*pos])
        .ok()
        .and_then(|s| s.parse().ok())
        .ok_or(GroupError::WordSyntax {
            at: start,
            msg: "expected an integer exponent".into(),
        })
}

fn parse_seq(bytes: &[u8], pos: &mut usize, depth: u32) -> Result<Word, GroupError> {
    let mut word = Word::identity();
    loop {
        skip_ws(bytes, pos);
        if *pos >= bytes.len() {
            return Ok(word);
        }
        let atom = match bytes[*pos] {
            b'c' | b'l' | b'k' => {
                let g = match bytes[*pos] {
                    b'c' => Gen::C,
                    b'l' => Gen::L,
                    _ => Gen::K,
                };
                *pos += 1;
                Word::gen(g)
            }
            b'1' => {
                *pos += 1;
                Word::identity()
            }
            b'(' => {
                *pos += 1;
                let inner = parse_seq(bytes, pos, depth + 1)?;
                skip_ws(bytes, pos);
                if *pos >= bytes.len() || bytes[*pos] != b')' {
                    return Err(GroupError::WordSyntax {
                        at: *pos,
                        msg: "expected ')'".into(),
                    });
                }
                *pos += 1;
                inner
            }
            b')' if depth > 0 => return Ok(word),
            other => {
                return Err(GroupError::WordSyntax {
                    at: *pos,
                    msg: format!("unexpected character '{}'", other as char),
                })
            }
        };
        let exp = if *pos < bytes.len() && bytes[*pos] == b'^' {
            *pos += 1;
            parse_int(bytes, pos)?
        } else {
            1
        };
        word = word.concat(&atom.pow(exp));
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(text: &str) -> Word {
        parse_word(text).unwrap()
    }

    #[test]
    fn free_reduction() {
        assert_eq!(w("c c^-1"), Word::identity());
        assert_eq!(w("l c c^-1 l"), Word::gen_pow(Gen::L, 2));
        assert_eq!(w("c l^-3 (l c l)^-1"), w("c l^-4 c^-1 l^-1"));
    }

    #[test]
    fn invert_and_concat() {
        assert_eq!(w("c l").inverse(), w("l^-1 c^-1"));
        let u = w("c l^2 k^-1");
        assert_eq!(u.concat(&u.inverse()), Word::identity());
        assert_eq!(u.inverse().inverse(), u);
    }

    #[test]
    fn reduction_cascades_across_runs() {
        // l c (c^-1 l) -> l l -> l^2, merging through the cancelled run
        let u = Word::from_runs(vec![(Gen::L, 1), (Gen::C, 1), (Gen::C, -1), (Gen::L, 1)]);
        assert_eq!(u, Word::gen_pow(Gen::L, 2));
    }

    #[test]
    fn exponent_sums() {
        assert_eq!(Word::identity().exponent_sums().unwrap(), (0, 0));
        assert_eq!(w("c").exponent_sums().unwrap(), (1, 0));
        assert_eq!(w("c l^-2 c^3").exponent_sums().unwrap(), (4, -2));
        assert!(w("c k").exponent_sums().is_err());
    }

    #[test]
    fn split_and_shift() {
        let u = w("c l^3 c^-1");
        let (a, b) = u.split_at_letter(2).unwrap();
        assert_eq!(a, w("c l"));
        assert_eq!(b, w("l^2 c^-1"));
        assert!(u.split_at_letter(6).is_err());
        assert_eq!(w("c l c").cyclic_shift(1).unwrap(), w("l c c"));
    }

    #[test]
    fn parse_errors() {
        assert!(parse_word("c x").is_err());
        assert!(parse_word("(c l").is_err());
        assert!(parse_word("c^").is_err());
    }

    #[test]
    fn display_roundtrip() {
        let u = w("c^2 l^-3 k c^-1");
        assert_eq!(parse_word(&u.to_string()).unwrap(), u);
    }
}
