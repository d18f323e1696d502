//! Exact scalars: rationals, Laurent polynomials in `q`, rational functions in `q`,
//! and the quantum integers and Gaussian binomials built from them.

mod laurent;
mod ratfn;

pub use laurent::{laurent_gcd, LaurentPoly};
pub use ratfn::RatFn;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

/// Arbitrary-precision rational number in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QFieldError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("specialization point {0} is not allowed (must avoid 0, 1, -1)")]
    ForbiddenPoint(Rational),
}

/// `[n] = (q^n - q^-n)/(q - q^-1) = q^(n-1) + q^(n-3) + ... + q^(1-n)`.
pub fn quantum_integer(n: u32) -> LaurentPoly {
    let n = n as i64;
    LaurentPoly::from_terms((0..n).map(|k| (n - 1 - 2 * k, 1)))
}

/// `[n]! = [n][n-1]...[1]`, with `[0]! = 1`.
pub fn quantum_factorial(n: u32) -> LaurentPoly {
    (1..=n).fold(LaurentPoly::one(), |acc, k| &acc * &quantum_integer(k))
}

/// The Gaussian binomial `[z; t] = prod_{s=1}^t (q^(z-s+1) - q^(-z+s-1)) / (q^s - q^-s)`.
///
/// Numerator and denominator products are formed separately and divided
/// exactly; the quotient is always a Laurent polynomial.
pub fn gaussian_binomial(z: i64, t: u32) -> LaurentPoly {
    let mut num = LaurentPoly::one();
    let mut den = LaurentPoly::one();
    for s in 1..=t as i64 {
        let a = z - s + 1;
        num = &num * &(&LaurentPoly::q_pow(a) - &LaurentPoly::q_pow(-a));
        den = &den * &(&LaurentPoly::q_pow(s) - &LaurentPoly::q_pow(-s));
    }
    num.div_exact(&den)
        .expect("Gaussian binomial numerator is divisible by its denominator")
}

/// `q -> q^-1` when `odd`, identity otherwise. This is how `q_a` is realized for odd indices.
pub fn parity_twist(p: &LaurentPoly, odd: bool) -> LaurentPoly {
    if odd {
        p.bar()
    } else {
        p.clone()
    }
}

/// [`parity_twist`] lifted to rational functions.
pub fn parity_twist_ratfn(r: &RatFn, odd: bool) -> RatFn {
    if odd {
        r.bar()
    } else {
        r.clone()
    }
}

/// Exact evaluation of a rational function at `q = q0`.
pub fn specialize(p: &RatFn, q0: &Rational) -> Result<Rational, QFieldError> {
    if q0.is_zero() || q0.is_one() || *q0 == -Rational::one() {
        return Err(QFieldError::ForbiddenPoint(q0.clone()));
    }
    let den = p.den().eval(q0);
    if den.is_zero() {
        return Err(QFieldError::DivisionByZero);
    }
    Ok(p.num().eval(q0) / den)
}

/// Ordinary binomial coefficient `C(n, k)` for integer `n` (generalized, so negative `n` is allowed).
pub fn binomial(n: i64, k: u32) -> BigInt {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k as i64 {
        num *= BigInt::from(n - i);
        den *= BigInt::from(i + 1);
    }
    num / den
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(terms: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms.iter().copied())
    }

    fn rat(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn quantum_integer_values() {
        assert!(quantum_integer(0).is_zero());
        assert!(quantum_integer(1).is_one());
        assert_eq!(quantum_integer(2), p(&[(1, 1), (-1, 1)]));
        assert_eq!(quantum_integer(3), p(&[(2, 1), (0, 1), (-2, 1)]));
    }

    #[test]
    fn quantum_factorial_values() {
        assert!(quantum_factorial(0).is_one());
        assert_eq!(quantum_factorial(2), p(&[(1, 1), (-1, 1)]));
        // (q + q^-1)(q^2 + 1 + q^-2) multiplied out by hand
        let expected = p(&[(3, 1), (1, 2), (-1, 2), (-3, 1)]);
        assert_eq!(quantum_factorial(3), expected);
    }

    #[test]
    fn gaussian_binomial_values() {
        for z in -3..4 {
            assert!(gaussian_binomial(z, 0).is_one());
        }
        assert_eq!(gaussian_binomial(2, 1), p(&[(1, 1), (-1, 1)]));
        assert_eq!(gaussian_binomial(3, 2), p(&[(2, 1), (0, 1), (-2, 1)]));
        // [z; t] vanishes for 0 <= z < t
        assert!(gaussian_binomial(1, 2).is_zero());
        // [-1; 1] = [-1] = -1
        assert_eq!(gaussian_binomial(-1, 1), p(&[(0, -1)]));
    }

    #[test]
    fn twist_examples() {
        assert_eq!(parity_twist(&LaurentPoly::q_pow(2), true), LaurentPoly::q_pow(-2));
        let sym = p(&[(1, 1), (-1, 1)]);
        assert_eq!(parity_twist(&sym, true), sym);
        assert!(parity_twist(&LaurentPoly::one(), false).is_one());
    }

    #[test]
    fn specialize_examples() {
        let two = rat(2, 1);
        let q2 = RatFn::from_poly(quantum_integer(2));
        assert_eq!(specialize(&q2, &two).unwrap(), rat(5, 2));
        assert_eq!(specialize(&(&q2 * &q2), &two).unwrap(), rat(25, 4));
        let d = RatFn::from_poly(p(&[(1, 1), (-1, -1)])).inv().unwrap();
        assert!(matches!(specialize(&d, &rat(1, 1)), Err(QFieldError::ForbiddenPoint(_))));
        assert!(specialize(&d, &rat(0, 1)).is_err());
        assert!(specialize(&d, &rat(-1, 1)).is_err());
        assert_eq!(specialize(&d, &rat(1, 2)).unwrap(), rat(-2, 3));
    }

    #[test]
    fn generalized_binomial() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(2, 3), BigInt::from(0));
        assert_eq!(binomial(-1, 2), BigInt::from(1));
        assert_eq!(binomial(7, 0), BigInt::from(1));
    }
}
