//! Exact real-root counting by Sturm sequences over the rationals, and
//! unit-circle root counting for reciprocal polynomials via the
//! `y = x + 1/x` substitution.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::cyclotomic::strip_cyclotomic;
use crate::error::PolyError;
use crate::poly::{is_reciprocal, simple_roots, IntPoly};

/// Polynomial over exact rationals, lowest degree first. Internal to the
/// Sturm machinery.
#[derive(Clone, Debug)]
struct RatPoly {
    coeffs: Vec<BigRational>,
}

impl RatPoly {
    fn from_int(f: &IntPoly) -> Self {
        RatPoly {
            coeffs: f
                .coeffs()
                .iter()
                .map(|c| BigRational::from_integer(c.clone()))
                .collect(),
        }
    }

    fn normalize(mut self) -> Self {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        self
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    fn derivative(&self) -> RatPoly {
        if self.coeffs.len() <= 1 {
            return RatPoly { coeffs: vec![] };
        }
        RatPoly {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
                .collect(),
        }
    }

    fn rem(&self, d: &RatPoly) -> RatPoly {
        let mut r = self.coeffs.clone();
        let n = d.coeffs.len();
        let lead = d.coeffs.last().unwrap();
        while r.len() >= n {
            let top = r.last().unwrap().clone();
            if top.is_zero() {
                r.pop();
                continue;
            }
            let q = top / lead;
            let off = r.len() - n;
            for (j, dc) in d.coeffs.iter().enumerate() {
                let t = dc * &q;
                r[off + j] -= t;
            }
            // leading term cancels exactly
            r.pop();
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
        }
        RatPoly { coeffs: r }.normalize()
    }
}

/// Sturm chain of `f`.
struct SturmChain {
    chain: Vec<RatPoly>,
}

impl SturmChain {
    fn new(f: &IntPoly) -> Self {
        let p0 = RatPoly::from_int(f).normalize();
        let p1 = p0.derivative();
        let mut chain = vec![p0];
        if !p1.is_zero() {
            chain.push(p1);
            loop {
                let n = chain.len();
                let r = chain[n - 2].rem(&chain[n - 1]);
                if r.is_zero() {
                    break;
                }
                chain.push(RatPoly {
                    coeffs: r.coeffs.iter().map(|c| -c).collect(),
                });
            }
        }
        SturmChain { chain }
    }

    /// Number of sign variations of the chain at `x`.
    fn variations_at(&self, x: &BigRational) -> usize {
        let signs: Vec<i8> = self
            .chain
            .iter()
            .map(|p| {
                let v = p.eval(x);
                if v.is_zero() {
                    0
                } else if v.is_positive() {
                    1
                } else {
                    -1
                }
            })
            .filter(|&s| s != 0)
            .collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    }

    /// Sign variations at +infinity / -infinity from leading coefficients.
    fn variations_at_inf(&self, positive: bool) -> usize {
        let signs: Vec<i8> = self
            .chain
            .iter()
            .map(|p| {
                let lead = p.coeffs.last().unwrap();
                let s = if lead.is_positive() { 1i8 } else { -1 };
                if positive || p.degree() % 2 == 0 {
                    s
                } else {
                    -s
                }
            })
            .collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    }
}

/// Number of distinct real roots of `f` in the half-open interval `(a, b]`.
pub fn count_real_roots_in(f: &IntPoly, a: &BigRational, b: &BigRational) -> usize {
    assert!(!f.is_zero());
    assert!(a < b);
    let chain = SturmChain::new(f);
    chain.variations_at(a) - chain.variations_at(b)
}

/// Number of distinct real roots of `f` in `(a, +inf)`.
pub fn count_real_roots_above(f: &IntPoly, a: &BigRational) -> usize {
    assert!(!f.is_zero());
    let chain = SturmChain::new(f);
    chain.variations_at(a) - chain.variations_at_inf(true)
}

/// Number of distinct real roots of `f` on the whole line.
pub fn count_real_roots(f: &IntPoly) -> usize {
    assert!(!f.is_zero());
    if f.is_constant() {
        return 0;
    }
    let chain = SturmChain::new(f);
    chain.variations_at_inf(false) - chain.variations_at_inf(true)
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Divide out all roots at `x = r` (r = 1 or -1), returning (multiplicity, quotient).
fn strip_root_at(f: &IntPoly, r: i64) -> (usize, IntPoly) {
    let linear = IntPoly::from_i64(&[-r, 1]);
    let mut mult = 0;
    let mut g = f.clone();
    while !g.is_zero() && g.eval(&BigInt::from(r)).is_zero() {
        g = g.div_exact(&linear).expect("root divides exactly");
        mult += 1;
    }
    (mult, g)
}

/// Chebyshev-like transform: for an even-degree reciprocal `f` of degree 2m
/// with no roots at +-1, returns `g` of degree m with `f(x) = x^m g(x + 1/x)`.
/// Each root of `g` in the open interval (-2, 2) corresponds to a conjugate
/// pair of roots of `f` on the unit circle.
fn half_trace_transform(f: &IntPoly) -> IntPoly {
    debug_assert!(is_reciprocal(f));
    debug_assert!(f.degree().is_multiple_of(2));
    let m = f.degree() / 2;
    // P_j(y) with x^j + x^{-j} = P_j(x + 1/x): P_0 = 2, P_1 = y, P_{j+1} = y P_j - P_{j-1}
    let y = IntPoly::x();
    let mut p_prev = IntPoly::constant(BigInt::from(2)); // P_0
    let mut p_cur = y.clone(); // P_1
    let mut g = IntPoly::constant(f.coeff(m));
    for j in 1..=m {
        g = &g + &p_cur.scale(&f.coeff(m + j));
        let next = &(&y * &p_cur) - &p_prev;
        p_prev = std::mem::replace(&mut p_cur, next);
    }
    g
}

/// Exact count of roots of `f` on the unit circle (with multiplicity at +-1;
/// elsewhere the count is of distinct roots, which coincides with the full
/// count for the simple-root inputs this is used on).
///
/// A reciprocal `f` is counted by the `x + 1/x` substitution directly. For a
/// general `f` the reciprocal part `gcd(f, x^deg f(1/x))` carries every
/// unit-circle root, so the count is taken there.
pub fn count_unit_circle_roots(f: &IntPoly) -> Result<usize, PolyError> {
    if f.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    let target = if is_reciprocal(f) {
        f.clone()
    } else {
        f.gcd(&f.reverse())
    };
    if target.is_constant() {
        return Ok(0);
    }
    let (m1, g) = strip_root_at(&target, 1);
    let (m2, g) = strip_root_at(&g, -1);
    if g.is_constant() {
        return Ok(m1 + m2);
    }
    // what is left is an even-degree reciprocal factor with no roots at +-1
    debug_assert!(is_reciprocal(&g) && g.degree() % 2 == 0);
    let h = half_trace_transform(&g);
    let interior = count_real_roots_in(&h, &rat(-2), &rat(2));
    Ok(m1 + m2 + 2 * interior)
}

/// Exact root-location profile of a polynomial.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RootProfile {
    pub n_unit_circle: usize,
    pub n_real_gt1: usize,
    pub n_real_in_01: usize,
    pub n_other: usize,
    pub all_simple: bool,
}

impl RootProfile {
    /// The Salem shape: one real root beyond 1, its reciprocal partner in
    /// (0, 1), and everything else simple on the unit circle.
    pub fn is_salem(&self) -> bool {
        self.n_real_gt1 == 1 && self.n_real_in_01 == 1 && self.n_other == 0 && self.all_simple
    }
}

/// Root profile of a cyclotomic-free polynomial, computed by exact Sturm
/// counts. Rejects input that still has a cyclotomic factor.
pub fn salem_profile(f: &IntPoly) -> Result<RootProfile, PolyError> {
    if f.is_zero() || f.is_constant() {
        return Err(PolyError::ZeroPolynomial);
    }
    let (factors, _) = strip_cyclotomic(f)?;
    if let Some(&(n, _)) = factors.first() {
        return Err(PolyError::CyclotomicFactor(n));
    }
    let n_unit_circle = count_unit_circle_roots(f)?;
    let n_real_gt1 = count_real_roots_above(f, &rat(1));
    let n_real_in_01 = {
        // no cyclotomic factor means f(1) != 0 and f(0) != 0, so the open
        // interval (0,1) and half-open (0,1] counts agree
        count_real_roots_in(f, &rat(0), &rat(1))
    };
    let counted = n_unit_circle + n_real_gt1 + n_real_in_01;
    let n_other = f.degree().saturating_sub(counted);
    Ok(RootProfile {
        n_unit_circle,
        n_real_gt1,
        n_real_in_01,
        n_other,
        all_simple: simple_roots(f),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::pretzel_q;

    fn p(coeffs: &[i64]) -> IntPoly {
        IntPoly::from_i64(coeffs)
    }

    #[test]
    fn real_root_counts() {
        // x^2 - 1: roots -1, 1
        assert_eq!(count_real_roots(&p(&[-1, 0, 1])), 2);
        // x^2 + 1
        assert_eq!(count_real_roots(&p(&[1, 0, 1])), 0);
        // x^2 - 3x + 1: roots (3 +- sqrt5)/2 ~ 0.38, 2.62
        assert_eq!(count_real_roots_above(&p(&[1, -3, 1]), &rat(1)), 1);
        assert_eq!(count_real_roots_in(&p(&[1, -3, 1]), &rat(0), &rat(1)), 1);
    }

    #[test]
    fn unit_circle_trivial_cases() {
        assert_eq!(count_unit_circle_roots(&p(&[1, 0, 1])).unwrap(), 2); // +-i
        assert_eq!(count_unit_circle_roots(&p(&[-4, 0, 1])).unwrap(), 0); // +-2
        assert_eq!(count_unit_circle_roots(&p(&[-1, 0, 1])).unwrap(), 2); // +-1
        assert_eq!(count_unit_circle_roots(&p(&[1, 1])).unwrap(), 1); // -1
    }

    #[test]
    fn unit_circle_pretzel_counts() {
        for s in 3..=12i64 {
            let q = pretzel_q(&[2, 3, 2 * s + 1]).unwrap();
            assert_eq!(
                count_unit_circle_roots(&q).unwrap() as i64,
                2 * s + 2,
                "s = {s}"
            );
        }
    }

    #[test]
    fn salem_profile_lehmer() {
        let q = pretzel_q(&[2, 3, 7]).unwrap();
        let prof = salem_profile(&q).unwrap();
        assert_eq!(
            prof,
            RootProfile {
                n_unit_circle: 8,
                n_real_gt1: 1,
                n_real_in_01: 1,
                n_other: 0,
                all_simple: true,
            }
        );
        assert!(prof.is_salem());
    }

    #[test]
    fn salem_profile_quadratics() {
        // x^2 - 3x + 1: roots (3 +- sqrt5)/2, a degenerate Salem shape
        let prof = salem_profile(&p(&[1, -3, 1])).unwrap();
        assert_eq!((prof.n_real_gt1, prof.n_real_in_01, prof.n_unit_circle), (1, 1, 0));
        // x^2 + 1 = Phi_4 is cyclotomic, rejected
        assert_eq!(
            salem_profile(&p(&[1, 0, 1])).unwrap_err(),
            PolyError::CyclotomicFactor(4)
        );
    }
}
