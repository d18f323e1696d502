use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::Rational;

/// An element of `Z[q, q^-1]`, stored sparsely as exponent -> coefficient.
///
/// Zero coefficients are never stored, so the empty map is the zero polynomial
/// and derived equality is equality of polynomials.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    /// The indeterminate `q`.
    pub fn q() -> Self {
        Self::monomial(1, 1)
    }

    /// `q^exp`.
    pub fn q_pow(exp: i64) -> Self {
        Self::monomial(1, exp)
    }

    pub fn constant<C: Into<BigInt>>(c: C) -> Self {
        Self::monomial(c, 0)
    }

    pub fn monomial<C: Into<BigInt>>(coeff: C, exp: i64) -> Self {
        let coeff = coeff.into();
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exp, coeff);
        }
        Self { terms }
    }

    /// Builds from arbitrary `(exponent, coefficient)` pairs, summing repeats.
    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        let mut out = Self::zero();
        for (e, c) in terms {
            out.add_term(e, c.into());
        }
        out
    }

    fn add_term(&mut self, exp: i64, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(exp).or_insert_with(BigInt::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    /// Iterates `(exponent, coefficient)` in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        self.terms.get(&exp).cloned().unwrap_or_default()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.terms.values().next_back()
    }

    /// A single term `c q^k`.
    pub fn as_monomial(&self) -> Option<(i64, &BigInt)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(e, c)| (*e, c))
        } else {
            None
        }
    }

    /// Constant polynomial value, if this is a constant.
    pub fn as_constant(&self) -> Option<BigInt> {
        match self.terms.len() {
            0 => Some(BigInt::zero()),
            1 => self.terms.get(&0).cloned(),
            _ => None,
        }
    }

    /// Multiplies by `q^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, v)| (*e, v * c)).collect(),
        }
    }

    /// The substitution `q -> q^-1`.
    pub fn bar(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// gcd of all coefficients (nonnegative; zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        self.terms
            .values()
            .fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    /// Exact division of every coefficient by `c`; `None` if some coefficient is not divisible.
    pub fn div_scalar_exact(&self, c: &BigInt) -> Option<Self> {
        if c.is_zero() {
            return None;
        }
        let mut terms = BTreeMap::new();
        for (e, v) in &self.terms {
            let (quo, rem) = v.div_rem(c);
            if !rem.is_zero() {
                return None;
            }
            terms.insert(*e, quo);
        }
        Some(Self { terms })
    }

    /// Exact division in `Z[q, q^-1]`. Returns `None` when `divisor` is zero or
    /// does not divide `self`.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        if let Some((e, c)) = divisor.as_monomial() {
            return self.div_scalar_exact(c).map(|p| p.shift(-e));
        }
        let (a_low, a) = self.to_dense();
        let (b_low, b) = divisor.to_dense();
        let quotient = dense_div_exact(&a, &b)?;
        Some(Self::from_dense(a_low - b_low, &quotient))
    }

    /// Shifts so the lowest exponent is zero; returns `(lowest exponent, dense coefficients)`.
    pub(crate) fn to_dense(&self) -> (i64, Vec<BigInt>) {
        let (Some(lo), Some(hi)) = (self.min_exp(), self.max_exp()) else {
            return (0, Vec::new());
        };
        let mut v = vec![BigInt::zero(); (hi - lo + 1) as usize];
        for (e, c) in &self.terms {
            v[(e - lo) as usize] = c.clone();
        }
        (lo, v)
    }

    pub(crate) fn from_dense(low: i64, coeffs: &[BigInt]) -> Self {
        Self::from_terms(
            coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| (low + i as i64, c.clone())),
        )
    }

    /// Exact evaluation at a nonzero rational point.
    pub fn eval(&self, q0: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let base = if *e >= 0 {
                q0.clone()
            } else {
                q0.recip()
            };
            acc += Rational::from_integer(c.clone()) * num_traits::pow(base, e.unsigned_abs() as usize);
        }
        acc
    }

    /// Value at `q = 1`.
    pub fn eval_at_one(&self) -> BigInt {
        self.terms.values().sum()
    }
}

/// Long division of dense polynomials (low -> high) over `Z`; `None` unless exact.
fn dense_div_exact(a: &[BigInt], b: &[BigInt]) -> Option<Vec<BigInt>> {
    let db = b.len() - 1;
    if a.len() < b.len() {
        return None;
    }
    let lead = &b[db];
    let mut rem: Vec<BigInt> = a.to_vec();
    let mut quo = vec![BigInt::zero(); a.len() - db];
    for k in (0..quo.len()).rev() {
        let top = &rem[k + db];
        if top.is_zero() {
            continue;
        }
        let (c, r) = top.div_rem(lead);
        if !r.is_zero() {
            return None;
        }
        for (i, bi) in b.iter().enumerate() {
            rem[k + i] -= &c * bi;
        }
        quo[k] = c;
    }
    if rem.iter().all(|c| c.is_zero()) {
        Some(quo)
    } else {
        None
    }
}

/// Pseudo-remainder of dense polynomials.
fn dense_prem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = b.len() - 1;
    let lead = b[db].clone();
    let mut rem: Vec<BigInt> = a.to_vec();
    while rem.len() > db && !rem.is_empty() {
        let top = rem.last().cloned().unwrap_or_default();
        let shift = rem.len() - 1 - db;
        for c in rem.iter_mut() {
            *c *= &lead;
        }
        for (i, bi) in b.iter().enumerate() {
            rem[shift + i] -= &top * bi;
        }
        rem.pop();
        trim(&mut rem);
    }
    trim(&mut rem);
    rem
}

fn trim(v: &mut Vec<BigInt>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

fn dense_content(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c))
}

fn dense_primitive(v: &[BigInt]) -> Vec<BigInt> {
    let c = dense_content(v);
    if c.is_zero() {
        return Vec::new();
    }
    v.iter().map(|x| x / &c).collect()
}

/// gcd in `Z[q, q^-1]`, normalized to lowest exponent 0 and positive leading coefficient.
///
/// Uses the primitive polynomial remainder sequence on the shifted polynomials.
pub fn laurent_gcd(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    if a.is_zero() {
        return normalize_unit(b);
    }
    if b.is_zero() {
        return normalize_unit(a);
    }
    let (_, mut x) = a.to_dense();
    let (_, mut y) = b.to_dense();
    let cont = dense_content(&x).gcd(&dense_content(&y));
    x = dense_primitive(&x);
    y = dense_primitive(&y);
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_empty() {
        if y.len() == 1 {
            // nonzero constant: primitive gcd is 1
            x = vec![BigInt::one()];
            break;
        }
        let r = dense_prem(&x, &y);
        x = y;
        y = dense_primitive(&r);
    }
    let g = LaurentPoly::from_dense(0, &dense_primitive(&x)).scale(&cont);
    normalize_unit(&g)
}

/// Rescales by a unit `±q^k` so that the lowest exponent is 0 and the leading coefficient is positive.
fn normalize_unit(p: &LaurentPoly) -> LaurentPoly {
    let Some(lo) = p.min_exp() else {
        return LaurentPoly::zero();
    };
    let shifted = p.shift(-lo);
    if shifted.leading_coeff().is_some_and(|c| c.is_negative()) {
        -shifted
    } else {
        shifted
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c);
        }
        out
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let show_coeff = !abs.is_one() || *e == 0;
            if show_coeff {
                write!(f, "{abs}")?;
            }
            match *e {
                0 => {}
                1 => write!(f, "{}q", if show_coeff { "*" } else { "" })?,
                _ => write!(f, "{}q^{}", if show_coeff { "*" } else { "" }, e)?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

#[derive(Serialize, Deserialize)]
struct LaurentWire {
    terms: Vec<(i64, String)>,
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        LaurentWire {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (*e, c.to_string()))
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let wire = LaurentWire::deserialize(d)?;
        let mut out = LaurentPoly::zero();
        for (e, c) in wire.terms {
            let c: BigInt = c.parse().map_err(D::Error::custom)?;
            out.add_term(e, c);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(terms: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms.iter().copied())
    }

    #[test]
    fn zero_coefficients_are_dropped() {
        let a = p(&[(1, 1), (-1, 1)]);
        let b = p(&[(1, -1)]);
        let s = &a + &b;
        assert_eq!(s, LaurentPoly::q_pow(-1));
        assert_eq!(s.num_terms(), 1);
        assert!((&a - &a).is_zero());
    }

    #[test]
    fn exact_division() {
        // (q^2 - q^-2) / (q - q^-1) = q + q^-1
        let num = p(&[(2, 1), (-2, -1)]);
        let den = p(&[(1, 1), (-1, -1)]);
        assert_eq!(num.div_exact(&den), Some(p(&[(1, 1), (-1, 1)])));
        assert_eq!(den.div_exact(&num), None);
        assert_eq!(p(&[(0, 3)]).div_exact(&p(&[(0, 2)])), None);
        assert_eq!(p(&[(3, 4)]).div_exact(&p(&[(1, 2)])), Some(p(&[(2, 2)])));
    }

    #[test]
    fn gcd_is_normalized() {
        // (q+1)(q-1) and (q+1)^2 q^-3 share q+1
        let a = p(&[(2, 1), (0, -1)]);
        let b = p(&[(-1, 1), (-2, 2), (-3, 1)]);
        assert_eq!(laurent_gcd(&a, &b), p(&[(1, 1), (0, 1)]));
        // contents: 6(q+1), 4(q+1) -> 2(q+1)
        let a = p(&[(1, 6), (0, 6)]);
        let b = p(&[(5, -4), (4, -4)]);
        assert_eq!(laurent_gcd(&a, &b), p(&[(1, 2), (0, 2)]));
        assert_eq!(laurent_gcd(&p(&[(1, 1), (0, 1)]), &p(&[(1, 1), (0, -1)])), LaurentPoly::one());
    }

    #[test]
    fn display_and_eval() {
        let a = p(&[(1, 1), (-1, 1)]);
        assert_eq!(a.to_string(), "q + q^-1");
        assert_eq!(p(&[(2, -3), (0, 1)]).to_string(), "-3*q^2 + 1");
        let v = a.eval(&Rational::from_integer(2.into()));
        assert_eq!(v, Rational::new(5.into(), 2.into()));
    }

    #[test]
    fn json_shape() {
        let a = p(&[(1, 1), (-1, 12345678901234567890i128 as i64)]);
        let s = serde_json::to_string(&a).unwrap();
        assert!(s.starts_with("{\"terms\":[[-1,"));
        let back: LaurentPoly = serde_json::from_str(&s).unwrap();
        assert_eq!(back, a);
        let big: LaurentPoly =
            serde_json::from_str(r#"{"terms":[[0,"123456789012345678901234567890"]]}"#).unwrap();
        assert_eq!(big.coeff(0).to_string(), "123456789012345678901234567890");
    }
}
