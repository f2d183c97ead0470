//! Exact integer polynomial arithmetic.
//!
//! Everything here is exact: coefficients are arbitrary-precision integers,
//! rational intermediates are exact rationals, and no floating point appears
//! in any result-bearing path.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::{SeqAccess, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::PolyError;

/// Univariate polynomial with integer coefficients, lowest degree first.
///
/// The zero polynomial is the empty coefficient vector; otherwise the
/// leading (last) coefficient is nonzero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `c * x^n`.
    pub fn monomial(c: BigInt, n: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); n + 1];
        coeffs[n] = c;
        Self::new(coeffs)
    }

    pub fn x() -> Self {
        Self::monomial(BigInt::one(), 1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Degree of a nonzero polynomial; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn leading_coeff(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_rat(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from_integer(c.clone());
        }
        acc
    }

    pub fn derivative(&self) -> IntPoly {
        if self.coeffs.len() <= 1 {
            return IntPoly::zero();
        }
        IntPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    /// `x^deg * f(1/x)`: the coefficient sequence reversed.
    pub fn reverse(&self) -> IntPoly {
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        IntPoly::new(coeffs)
    }

    pub fn scale(&self, c: &BigInt) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Substitute `-x` for `x`.
    pub fn compose_neg_x(&self) -> IntPoly {
        IntPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }

    /// GCD of all coefficients; zero for the zero polynomial.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = num_integer::gcd(g, c.abs());
        }
        g
    }

    pub fn primitive_part(&self) -> IntPoly {
        let c = self.content();
        if c.is_zero() || c.is_one() {
            return self.clone();
        }
        IntPoly::new(self.coeffs.iter().map(|a| a / &c).collect())
    }

    /// Exact division; `None` if `self` is not a polynomial multiple of `d`.
    pub fn div_exact(&self, d: &IntPoly) -> Option<IntPoly> {
        assert!(!d.is_zero(), "division by the zero polynomial");
        if self.is_zero() {
            return Some(IntPoly::zero());
        }
        if self.degree() < d.degree() {
            return None;
        }
        let mut rem = self.coeffs.clone();
        let n = d.coeffs.len();
        let lead = d.coeffs.last().unwrap();
        let qlen = rem.len() - n + 1;
        let mut q = vec![BigInt::zero(); qlen];
        for i in (0..qlen).rev() {
            let top = rem[i + n - 1].clone();
            if top.is_zero() {
                continue;
            }
            let (quot, r) = num_integer::div_rem(top, lead.clone());
            if !r.is_zero() {
                return None;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                let t = dc * &quot;
                rem[i + j] -= t;
            }
            q[i] = quot;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(IntPoly::new(q))
    }

    /// Primitive gcd via a primitive polynomial remainder sequence.
    pub fn gcd(&self, other: &IntPoly) -> IntPoly {
        let mut a = self.primitive_part();
        let mut b = other.primitive_part();
        if a.is_zero() {
            return b;
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b).primitive_part();
            a = b;
            b = r;
        }
        // normalize sign
        if a.leading_coeff().is_negative() {
            a = -&a;
        }
        a
    }

    /// Pseudo-remainder of `self` by `d` (multiplies through by a power of
    /// the leading coefficient of `d` so the division stays integral).
    fn pseudo_rem(&self, d: &IntPoly) -> IntPoly {
        let mut r = self.clone();
        let dd = d.degree();
        let lead = d.leading_coeff();
        while !r.is_zero() && r.degree() >= dd {
            let shift = r.degree() - dd;
            let rl = r.leading_coeff();
            r = &r.scale(&lead) - &d.scale(&rl).shift(shift);
        }
        r
    }

    /// Multiply by `x^n`.
    pub fn shift(&self, n: usize) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); n];
        coeffs.extend(self.coeffs.iter().cloned());
        IntPoly::new(coeffs)
    }

    /// Lowest-degree nonzero coefficient and its index.
    pub fn trailing(&self) -> Option<(usize, &BigInt)> {
        self.coeffs.iter().enumerate().find(|(_, c)| !c.is_zero())
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) + rhs.coeff(i));
        }
        IntPoly::new(out)
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) - rhs.coeff(i));
        }
        IntPoly::new(out)
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly{:?}", self.coeffs)
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let a = c.abs();
            if i == 0 {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "x")?;
                if i > 1 {
                    write!(f, "^{i}")?;
                }
            } else {
                write!(f, "{a}*x")?;
                if i > 1 {
                    write!(f, "^{i}")?;
                }
            }
        }
        Ok(())
    }
}

// Wire format: JSON array of decimal integer strings, lowest degree first.
impl Serialize for IntPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.coeffs.iter().map(|c| c.to_string()))
    }
}

impl<'de> Deserialize<'de> for IntPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = IntPoly;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                write!(f, "an array of decimal integer strings")
            }
            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> Result<IntPoly, A::Error> {
                let mut coeffs = Vec::new();
                while let Some(s) = seq.next_element::<String>()? {
                    let c: BigInt = s
                        .parse()
                        .map_err(|_| serde::de::Error::custom(format!("bad integer: {s}")))?;
                    coeffs.push(c);
                }
                Ok(IntPoly::new(coeffs))
            }
        }
        deserializer.deserialize_seq(V)
    }
}

/// `[n] = 1 + x + ... + x^(n-1)`.
pub fn bracket(n: i64) -> Result<IntPoly, PolyError> {
    if n < 1 {
        return Err(PolyError::NonPositiveBracket(n));
    }
    Ok(IntPoly::new(vec![BigInt::one(); n as usize]))
}

fn validate_pretzel(p_list: &[i64]) -> Result<(), PolyError> {
    if p_list.len().is_multiple_of(2) {
        return Err(PolyError::EvenArity(p_list.len()));
    }
    if let Some(&p) = p_list.iter().find(|&&p| p < 1) {
        return Err(PolyError::NonPositiveBracket(p));
    }
    Ok(())
}

/// The polynomial `Q_{p_1,...,p_k}(x) = [p_1]...[p_k] (x - k + 1) + sum_j prod_{i != j} [p_i]`.
///
/// The `1/[p_i]` terms of the defining formula are cleared against the full
/// product, so the result is an honest integer polynomial.
pub fn pretzel_q(p_list: &[i64]) -> Result<IntPoly, PolyError> {
    validate_pretzel(p_list)?;
    let k = p_list.len();
    let brackets: Vec<IntPoly> = p_list
        .iter()
        .map(|&p| bracket(p))
        .collect::<Result<_, _>>()?;
    let full: IntPoly = brackets
        .iter()
        .fold(IntPoly::one(), |acc, b| &acc * b);
    let linear = &IntPoly::x() - &IntPoly::constant(BigInt::from(k as i64 - 1));
    let mut result = &full * &linear;
    for j in 0..k {
        let partial = brackets
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != j)
            .fold(IntPoly::one(), |acc, (_, b)| &acc * b);
        result = &result + &partial;
    }
    Ok(result)
}

/// Alexander polynomial of the `(-2, p_2, ..., p_k)`-pretzel knot, as
/// `Q_{2,p_2,...,p_k}(-t)` normalized so the lowest coefficient is positive
/// and no power of `t` divides it.
pub fn alexander_minus2_pretzel(p_rest: &[i64]) -> Result<IntPoly, PolyError> {
    let mut p_list = vec![2];
    p_list.extend_from_slice(p_rest);
    let q = pretzel_q(&p_list)?;
    let mut a = q.compose_neg_x();
    if let Some((low, c)) = a.trailing().map(|(i, c)| (i, c.is_negative())) {
        if low > 0 {
            a = IntPoly::new(a.coeffs[low..].to_vec());
        }
        if c {
            a = -&a;
        }
    }
    Ok(a)
}

/// True iff `x^deg * f(1/x) = f(x)`.
pub fn is_reciprocal(f: &IntPoly) -> bool {
    !f.is_zero() && f.reverse() == *f
}

/// True iff `gcd(f, f')` is constant, i.e. all roots are simple.
pub fn simple_roots(f: &IntPoly) -> bool {
    assert!(!f.is_zero());
    if f.is_constant() {
        return true;
    }
    f.gcd(&f.derivative()).is_constant()
}

/// Exact comparison `sum 1/p_i < k - 2` for an odd-length positive list.
pub fn hyperbolicity_condition(p_list: &[i64]) -> Result<bool, PolyError> {
    validate_pretzel(p_list)?;
    let k = p_list.len() as i64;
    let sum: BigRational = p_list
        .iter()
        .map(|&p| BigRational::new(BigInt::one(), BigInt::from(p)))
        .sum();
    Ok(sum < BigRational::from_integer(BigInt::from(k - 2)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(coeffs: &[i64]) -> IntPoly {
        IntPoly::from_i64(coeffs)
    }

    #[test]
    fn bracket_small() {
        assert_eq!(bracket(1).unwrap(), p(&[1]));
        assert_eq!(bracket(2).unwrap(), p(&[1, 1]));
        assert_eq!(bracket(4).unwrap(), p(&[1, 1, 1, 1]));
        assert!(bracket(0).is_err());
        assert!(bracket(-3).is_err());
    }

    #[test]
    fn bracket_eval_at_one() {
        for n in 1..=100i64 {
            let b = bracket(n).unwrap();
            assert_eq!(b.eval(&BigInt::one()), BigInt::from(n));
        }
    }

    #[test]
    fn pretzel_q_111() {
        // hand expansion: [1] = 1, Q = (x - 2) + 3 = x + 1
        assert_eq!(pretzel_q(&[1, 1, 1]).unwrap(), p(&[1, 1]));
    }

    #[test]
    fn pretzel_q_237_matches_expansion_oracle() {
        // frozen from an independent symbolic expansion of the product formula
        let expected = p(&[1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1]);
        assert_eq!(pretzel_q(&[2, 3, 7]).unwrap(), expected);
    }

    #[test]
    fn pretzel_q_degree_bookkeeping() {
        for s in 3..=12i64 {
            let q = pretzel_q(&[2, 3, 2 * s + 1]).unwrap();
            assert_eq!(q.degree() as i64, 2 * s + 4);
        }
    }

    #[test]
    fn pretzel_q_rejects_bad_input() {
        assert!(pretzel_q(&[2, 3]).is_err());
        assert!(pretzel_q(&[2, 0, 3]).is_err());
    }

    #[test]
    fn alexander_237() {
        let expected = p(&[1, -1, 0, 1, -1, 1, -1, 1, 0, -1, 1]);
        assert_eq!(alexander_minus2_pretzel(&[3, 7]).unwrap(), expected);
    }

    #[test]
    fn alexander_degree_and_det() {
        for s in 3..=12i64 {
            let a = alexander_minus2_pretzel(&[3, 2 * s + 1]).unwrap();
            assert_eq!(a.degree() as i64, 2 * s + 4);
            // |Delta(1)| = 1 for a knot
            assert_eq!(a.eval(&BigInt::one()).abs(), BigInt::one());
        }
    }

    #[test]
    fn reciprocal_checks() {
        assert!(is_reciprocal(&pretzel_q(&[2, 3, 7]).unwrap()));
        assert!(!is_reciprocal(&p(&[0, 1, 1]))); // x^2 + x
        assert!(is_reciprocal(&p(&[1])));
    }

    #[test]
    fn simple_roots_checks() {
        assert!(!simple_roots(&p(&[1, -2, 1]))); // (x-1)^2
        assert!(simple_roots(&p(&[-1, 0, 1]))); // x^2 - 1
        assert!(simple_roots(&pretzel_q(&[2, 3, 7]).unwrap()));
    }

    #[test]
    fn hyperbolicity() {
        assert!(hyperbolicity_condition(&[2, 3, 7]).unwrap()); // 41/42 < 1
        assert!(!hyperbolicity_condition(&[2, 3, 5]).unwrap()); // 31/30 >= 1
        for s in 3..=50i64 {
            assert!(hyperbolicity_condition(&[2, 3, 2 * s + 1]).unwrap());
        }
    }

    #[test]
    fn gcd_and_div_exact() {
        let a = &p(&[-1, 0, 1]) * &p(&[1, 1, 1]); // (x^2-1)(x^2+x+1)
        assert_eq!(a.div_exact(&p(&[1, 1, 1])).unwrap(), p(&[-1, 0, 1]));
        assert!(p(&[1, 1, 1]).div_exact(&p(&[1, 1])).is_none());
        let g = (&p(&[-1, 1]) * &p(&[1, 1])).gcd(&(&p(&[-1, 1]) * &p(&[2, 1])));
        assert_eq!(g, p(&[-1, 1]));
    }

    #[test]
    fn serde_roundtrip() {
        let q = pretzel_q(&[2, 3, 7]).unwrap();
        let s = serde_json::to_string(&q).unwrap();
        assert_eq!(s, r#"["1","1","0","-1","-1","-1","-1","-1","0","1","1"]"#);
        let back: IntPoly = serde_json::from_str(&s).unwrap();
        assert_eq!(back, q);
    }
}
