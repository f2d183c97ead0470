//! Cyclotomic polynomials and cyclotomic trial division.

use num_bigint::BigInt;
use num_traits::One;
use std::collections::HashMap;

use crate::error::PolyError;
use crate::poly::IntPoly;

/// Euler's totient.
pub fn euler_phi(n: u64) -> u64 {
    let mut n = n;
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// The n-th cyclotomic polynomial, by dividing `x^n - 1` through the
/// cyclotomic polynomials of the proper divisors of n.
pub fn cyclotomic(n: u64) -> IntPoly {
    fn go(n: u64, memo: &mut HashMap<u64, IntPoly>) -> IntPoly {
        if let Some(p) = memo.get(&n) {
            return p.clone();
        }
        let mut num = IntPoly::monomial(BigInt::one(), n as usize);
        num = &num - &IntPoly::one(); // x^n - 1
        let mut quot = num;
        for d in 1..n {
            if n.is_multiple_of(d) {
                let phi_d = go(d, memo);
                quot = quot.div_exact(&phi_d).expect("cyclotomic division is exact");
            }
        }
        memo.insert(n, quot.clone());
        quot
    }
    assert!(n >= 1);
    let mut memo = HashMap::new();
    go(n, &mut memo)
}

/// Divide out every cyclotomic factor of `f`.
///
/// Returns the list of `(index n, multiplicity)` pairs and the cyclotomic-free
/// remainder, with `f = remainder * prod Phi_n^mult` exactly. Trial division
/// runs over all n with `phi(n) <= deg f`; the enumeration bound
/// `n <= 2 (deg f)^2 + 6` safely covers those indices.
pub fn strip_cyclotomic(f: &IntPoly) -> Result<(Vec<(u64, usize)>, IntPoly), PolyError> {
    if f.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    let mut remainder = f.clone();
    let mut factors = Vec::new();
    let deg = f.degree() as u64;
    let bound = 2 * deg * deg + 6;
    for n in 1..=bound {
        if remainder.is_constant() {
            break;
        }
        if euler_phi(n) > remainder.degree() as u64 {
            continue;
        }
        let phi_n = cyclotomic(n);
        let mut mult = 0;
        while let Some(q) = remainder.div_exact(&phi_n) {
            remainder = q;
            mult += 1;
        }
        if mult > 0 {
            factors.push((n, mult));
        }
    }
    Ok((factors, remainder))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::pretzel_q;

    fn p(coeffs: &[i64]) -> IntPoly {
        IntPoly::from_i64(coeffs)
    }

    #[test]
    fn small_cyclotomics() {
        assert_eq!(cyclotomic(1), p(&[-1, 1]));
        assert_eq!(cyclotomic(2), p(&[1, 1]));
        assert_eq!(cyclotomic(3), p(&[1, 1, 1]));
        assert_eq!(cyclotomic(4), p(&[1, 0, 1]));
        assert_eq!(cyclotomic(6), p(&[1, -1, 1]));
        assert_eq!(cyclotomic(12), p(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn phi_values() {
        assert_eq!(euler_phi(1), 1);
        assert_eq!(euler_phi(12), 4);
        assert_eq!(euler_phi(31), 30);
        for n in 1..=200 {
            assert_eq!(euler_phi(n), cyclotomic(n).degree() as u64);
        }
    }

    #[test]
    fn strip_simple() {
        let (f, r) = strip_cyclotomic(&p(&[1, -1, 1])).unwrap();
        assert_eq!(f, vec![(6, 1)]);
        assert_eq!(r, IntPoly::one());
        let (f, r) = strip_cyclotomic(&p(&[-1, 1])).unwrap();
        assert_eq!(f, vec![(1, 1)]);
        assert_eq!(r, IntPoly::one());
    }

    #[test]
    fn strip_mixed_product() {
        let q = pretzel_q(&[2, 3, 7]).unwrap();
        let prod = &p(&[1, -1, 1]) * &q;
        let (f, r) = strip_cyclotomic(&prod).unwrap();
        assert_eq!(f, vec![(6, 1)]);
        assert_eq!(r, q);
    }

    #[test]
    fn strip_roundtrip() {
        for s in 3..=12i64 {
            let q = pretzel_q(&[2, 3, 2 * s + 1]).unwrap();
            let (factors, rem) = strip_cyclotomic(&q).unwrap();
            let mut rebuilt = rem.clone();
            for (n, mult) in &factors {
                for _ in 0..*mult {
                    rebuilt = &rebuilt * &cyclotomic(*n);
                }
            }
            assert_eq!(rebuilt, q, "s = {s}");
        }
    }
}
