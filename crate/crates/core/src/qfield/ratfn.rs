use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::laurent::{laurent_gcd, LaurentPoly};
use super::{QFieldError, Rational};

/// An element of `Q(q)` kept in canonical form.
///
/// Canonical form: the denominator is nonzero, has lowest exponent 0 and a
/// positive leading coefficient, and shares no non-unit factor with the
/// numerator. Zero is `0 / 1`. Equality is therefore structural.
#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
pub struct RatFn {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl RatFn {
    pub fn zero() -> Self {
        Self {
            num: LaurentPoly::zero(),
            den: LaurentPoly::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_poly(LaurentPoly::one())
    }

    pub fn q_pow(k: i64) -> Self {
        Self::from_poly(LaurentPoly::q_pow(k))
    }

    pub fn from_int<C: Into<BigInt>>(c: C) -> Self {
        Self::from_poly(LaurentPoly::constant(c))
    }

    pub fn from_rational(r: &Rational) -> Self {
        Self::new(
            LaurentPoly::constant(r.numer().clone()),
            LaurentPoly::constant(r.denom().clone()),
        )
        .expect("rational denominators are nonzero")
    }

    /// A Laurent polynomial viewed as a rational function; already canonical.
    pub fn from_poly(p: LaurentPoly) -> Self {
        Self {
            num: p,
            den: LaurentPoly::one(),
        }
    }

    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self, QFieldError> {
        if den.is_zero() {
            return Err(QFieldError::DivisionByZero);
        }
        Ok(Self::normalize(num, den))
    }

    fn normalize(num: LaurentPoly, den: LaurentPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        // units c*q^k in the denominator are absorbed directly
        if let Some((e, c)) = den.as_monomial() {
            let c = c.clone();
            let num = num.shift(-e);
            let g = num.content().gcd(&c);
            let mut n = num.div_scalar_exact(&g).expect("content divides");
            let mut d = &c / &g;
            if d.is_negative() {
                n = -n;
                d = -d;
            }
            return Self {
                num: n,
                den: LaurentPoly::constant(d),
            };
        }
        if let Some(q) = num.div_exact(&den) {
            return Self::from_poly(q);
        }
        let g = laurent_gcd(&num, &den);
        let mut n = num.div_exact(&g).expect("gcd divides numerator");
        let mut d = den.div_exact(&g).expect("gcd divides denominator");
        let lo = d.min_exp().unwrap_or(0);
        n = n.shift(-lo);
        d = d.shift(-lo);
        if d.leading_coeff().is_some_and(|c| c.is_negative()) {
            n = -n;
            d = -d;
        }
        Self { num: n, den: d }
    }

    pub fn num(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn den(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// The Laurent polynomial this equals, if the denominator is 1.
    pub fn as_poly(&self) -> Option<&LaurentPoly> {
        self.den.is_one().then_some(&self.num)
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Self::normalize(self.den.clone(), self.num.clone()))
        }
    }

    /// `q -> q^-1` applied to numerator and denominator.
    pub fn bar(&self) -> Self {
        Self::normalize(self.num.bar(), self.den.bar())
    }

    pub fn pow(&self, k: i32) -> Self {
        let base = if k < 0 {
            self.inv().expect("negative power of zero")
        } else {
            self.clone()
        };
        let mut out = Self::one();
        for _ in 0..k.unsigned_abs() {
            out = &out * &base;
        }
        out
    }

    pub fn scale_int(&self, c: &BigInt) -> Self {
        Self::normalize(self.num.scale(c), self.den.clone())
    }
}

impl Add for &RatFn {
    type Output = RatFn;
    fn add(self, rhs: &RatFn) -> RatFn {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return RatFn::normalize(&self.num + &rhs.num, self.den.clone());
        }
        RatFn::normalize(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Sub for &RatFn {
    type Output = RatFn;
    fn sub(self, rhs: &RatFn) -> RatFn {
        self + &(-rhs)
    }
}

impl Mul for &RatFn {
    type Output = RatFn;
    fn mul(self, rhs: &RatFn) -> RatFn {
        if self.is_zero() || rhs.is_zero() {
            return RatFn::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RatFn::from_poly(&self.num * &rhs.num);
        }
        RatFn::normalize(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Div for &RatFn {
    type Output = RatFn;
    fn div(self, rhs: &RatFn) -> RatFn {
        self * &rhs.inv().expect("division by zero rational function")
    }
}

impl Neg for &RatFn {
    type Output = RatFn;
    fn neg(self) -> RatFn {
        RatFn {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for RatFn {
            type Output = RatFn;
            fn $m(self, rhs: RatFn) -> RatFn {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for RatFn {
    type Output = RatFn;
    fn neg(self) -> RatFn {
        -&self
    }
}

impl From<LaurentPoly> for RatFn {
    fn from(p: LaurentPoly) -> Self {
        Self::from_poly(p)
    }
}

impl fmt::Display for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFn({self})")
    }
}

#[derive(Deserialize)]
struct RatFnWire {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl<'de> Deserialize<'de> for RatFn {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let w = RatFnWire::deserialize(d)?;
        RatFn::new(w.num, w.den).map_err(serde::de::Error::custom)
    }
}

impl Zero for RatFn {
    fn zero() -> Self {
        RatFn::zero()
    }
    fn is_zero(&self) -> bool {
        RatFn::is_zero(self)
    }
}

impl One for RatFn {
    fn one() -> Self {
        RatFn::one()
    }
}
