//! Words and linear combinations in the generators of `U_q(gl(m|n))`, root
//! vectors, the antiautomorphism, and the catalogue of commutation identities.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::kostant::{enumerate_basis_y, BasisElement};
use crate::qfield::{gaussian_binomial, parity_twist, quantum_factorial, LaurentPoly, RatFn};
use crate::superroot::{positive_roots, Dims, RootError, Weight};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QAlgebraError {
    #[error(transparent)]
    Root(#[from] RootError),
    #[error("{c} is not strictly between {a} and {b}")]
    BadVia { a: usize, b: usize, c: usize },
    #[error("cannot parse letter `{0}`")]
    BadLetter(String),
}

/// `q_a^k`, that is `q^k` twisted by the parity of `a`.
pub fn qa_pow(dims: &Dims, a: usize, k: i64) -> LaurentPoly {
    parity_twist(&LaurentPoly::q_pow(k), dims.is_odd(a))
}

fn qa(dims: &Dims, a: usize, k: i64) -> RatFn {
    RatFn::from_poly(qa_pow(dims, a, k))
}

/// A generator of `U_q(gl(m|n))`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    E(usize),
    F(usize),
    K(usize),
    KInv(usize),
}

impl Letter {
    pub fn parity(&self, dims: &Dims) -> u8 {
        match *self {
            Letter::E(a) | Letter::F(a) => dims.simple_root_parity(a),
            _ => 0,
        }
    }

    /// `E_a ↔ F_a`, `K_a ↔ K_a^{-1}`.
    pub fn tau(&self) -> Letter {
        match *self {
            Letter::E(a) => Letter::F(a),
            Letter::F(a) => Letter::E(a),
            Letter::K(a) => Letter::KInv(a),
            Letter::KInv(a) => Letter::K(a),
        }
    }

    pub fn validate(&self, dims: &Dims) -> Result<(), QAlgebraError> {
        let r = dims.rank();
        let ok = match *self {
            Letter::E(a) | Letter::F(a) => a >= 1 && a < r,
            Letter::K(a) | Letter::KInv(a) => a >= 1 && a <= r,
        };
        ok.then_some(()).ok_or_else(|| QAlgebraError::BadLetter(self.to_string()))
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Letter::E(a) => write!(f, "E{a}"),
            Letter::F(a) => write!(f, "F{a}"),
            Letter::K(a) => write!(f, "K{a}"),
            Letter::KInv(a) => write!(f, "K{a}^-1"),
        }
    }
}

impl FromStr for Letter {
    type Err = QAlgebraError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || QAlgebraError::BadLetter(s.to_string());
        let (body, inverse) = match s.strip_suffix("^-1") {
            Some(b) => (b, true),
            None => (s, false),
        };
        let split = body.find(|c: char| c.is_ascii_digit()).ok_or_else(bad)?;
        let (head, idx) = body.split_at(split);
        let a: usize = idx.parse().map_err(|_| bad())?;
        match (head, inverse) {
            ("E", false) => Ok(Letter::E(a)),
            ("F", false) => Ok(Letter::F(a)),
            ("K", false) => Ok(Letter::K(a)),
            ("K", true) | ("Kinv", false) => Ok(Letter::KInv(a)),
            _ => Err(bad()),
        }
    }
}

/// A word in the generators.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct QWord(pub Vec<Letter>);

impl QWord {
    pub fn grading(&self, dims: &Dims) -> u8 {
        self.0.iter().map(|l| l.parity(dims)).sum::<u8>() % 2
    }

    pub fn tau(&self) -> QWord {
        QWord(self.0.iter().rev().map(Letter::tau).collect())
    }
}

impl fmt::Display for QWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.0.iter().map(Letter::to_string).collect();
        write!(f, "{}", parts.join("·"))
    }
}

/// A finite `Q(q)`-linear combination of words, with no zero coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct QExpr {
    terms: BTreeMap<QWord, RatFn>,
}

impl QExpr {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::scalar(RatFn::one())
    }

    pub fn scalar(c: RatFn) -> Self {
        Self::word(QWord::default(), c)
    }

    pub fn letter(l: Letter) -> Self {
        Self::word(QWord(vec![l]), RatFn::one())
    }

    pub fn word(w: QWord, c: RatFn) -> Self {
        let mut e = Self::zero();
        e.add_term(w, c);
        e
    }

    pub fn terms(&self) -> impl Iterator<Item = (&QWord, &RatFn)> + '_ {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, w: QWord, c: RatFn) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(x) => {
                let s = &*x + &c;
                if s.is_zero() {
                    self.terms.remove(&w);
                } else {
                    *x = s;
                }
            }
            None => {
                self.terms.insert(w, c);
            }
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.scale(&-RatFn::one()))
    }

    pub fn scale(&self, c: &RatFn) -> Self {
        let mut out = Self::zero();
        for (w, x) in &self.terms {
            out.add_term(w.clone(), x * c);
        }
        out
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = Self::zero();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &rhs.terms {
                let mut w = w1.0.clone();
                w.extend_from_slice(&w2.0);
                out.add_term(QWord(w), c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(), |acc, _| acc.mul(self))
    }

    /// The common grading of all words; `None` if the expression is not homogeneous.
    pub fn grading(&self, dims: &Dims) -> Option<u8> {
        let mut g = self.terms.keys().map(|w| w.grading(dims));
        let first = g.next().unwrap_or(0);
        g.all(|x| x == first).then_some(first)
    }

    /// The antiautomorphism: words reversed with `E_a ↔ F_a`, `K_a ↔ K_a^{-1}`,
    /// and coefficients under `q ↦ q^{-1}`.
    pub fn antiautomorphism(&self) -> Self {
        let mut out = Self::zero();
        for (w, c) in &self.terms {
            out.add_term(w.tau(), c.bar());
        }
        out
    }

    /// `[(word, coefficient)]` with words rendered as strings.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.terms
                .iter()
                .map(|(w, c)| serde_json::json!([w.to_string(), c]))
                .collect(),
        )
    }
}

impl fmt::Display for QExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(w, c)| format!("({c})·{w}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// The smallest index strictly between `a` and `b`.
pub fn default_via(a: usize, b: usize) -> Option<usize> {
    (a.abs_diff(b) > 1).then(|| a.min(b) + 1)
}

/// `E_{a,b}` expanded over generator words.
///
/// `E_{a,a+1} = E_a`, `E_{a+1,a} = F_a`; otherwise
/// `E_{a,b} = E_{a,c} E_{c,b} - q_c^{∓1} E_{c,b} E_{a,c}` (upper sign for `a < b`),
/// with `c = via` or the default intermediate index. Inner root vectors use their default.
pub fn expand_root_vector(dims: &Dims, a: usize, b: usize, via: Option<usize>) -> Result<QExpr, QAlgebraError> {
    dims.check_index(a)?;
    dims.check_index(b)?;
    if a == b {
        return Err(RootError::DegenerateRoot(a).into());
    }
    if b == a + 1 {
        return Ok(QExpr::letter(Letter::E(a)));
    }
    if a == b + 1 {
        return Ok(QExpr::letter(Letter::F(b)));
    }
    let c = via.or_else(|| default_via(a, b)).expect("indices differ by more than one");
    if c <= a.min(b) || c >= a.max(b) {
        return Err(QAlgebraError::BadVia { a, b, c });
    }
    let left = expand_root_vector(dims, a, c, None)?;
    let right = expand_root_vector(dims, c, b, None)?;
    let k = if a < b { -1 } else { 1 };
    Ok(left.mul(&right).sub(&right.mul(&left).scale(&qa(dims, c, k))))
}

/// A structured factor of an element of `U_q`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum QAtom {
    /// `E_{a,b}^{(M)}`.
    Root { a: usize, b: usize, power: u32 },
    /// `K_a^exp`.
    K { a: usize, exp: i64 },
    /// `K_{a,b}^exp = (K_a K_b^{-1})^exp`.
    KPair { a: usize, b: usize, exp: i64 },
    /// `[K_a; c over t]`.
    KBinom { a: usize, c: i64, t: u32 },
    /// `[K_{a,b}; c over t]`, built with `q_a`.
    KPairBinom { a: usize, b: usize, c: i64, t: u32 },
    /// The weight idempotent `1_λ = Π_a [K_a; 0 over λ_a]`.
    Idem(Weight),
}

impl QAtom {
    pub fn root(a: usize, b: usize, power: u32) -> Self {
        QAtom::Root { a, b, power }
    }

    pub fn grading(&self, dims: &Dims) -> u8 {
        match *self {
            QAtom::Root { a, b, power } => ((power as u8) & 1) * ((dims.parity(a) + dims.parity(b)) % 2),
            _ => 0,
        }
    }

    /// An odd root vector to a power at least two.
    pub fn vanishes(&self, dims: &Dims) -> bool {
        matches!(*self, QAtom::Root { a, b, power } if power >= 2 && dims.parity(a) != dims.parity(b))
    }

    pub fn tau(&self) -> QAtom {
        match self {
            QAtom::Root { a, b, power } => QAtom::Root { a: *b, b: *a, power: *power },
            QAtom::K { a, exp } => QAtom::K { a: *a, exp: -exp },
            QAtom::KPair { a, b, exp } => QAtom::KPair { a: *a, b: *b, exp: -exp },
            other => other.clone(),
        }
    }

    /// The atom expanded over generator words.
    pub fn expand(&self, dims: &Dims) -> QExpr {
        match self {
            QAtom::Root { a, b, power } => {
                if self.vanishes(dims) {
                    return QExpr::zero();
                }
                let x = expand_root_vector(dims, *a, *b, None).expect("valid root");
                let f = RatFn::from_poly(quantum_factorial(*power));
                x.pow(*power).scale(&f.inv().expect("[M]! is nonzero"))
            }
            QAtom::K { a, exp } => k_power(&[(*a, 1)], *exp),
            QAtom::KPair { a, b, exp } => k_power(&[(*a, 1), (*b, -1)], *exp),
            QAtom::KBinom { a, c, t } => k_binom_expr(dims, *a, &[(*a, 1)], *c, *t),
            QAtom::KPairBinom { a, b, c, t } => k_binom_expr(dims, *a, &[(*a, 1), (*b, -1)], *c, *t),
            QAtom::Idem(l) => (1..=l.0.len()).fold(QExpr::one(), |acc, a| {
                acc.mul(&k_binom_expr(dims, a, &[(a, 1)], 0, l.at(a) as u32))
            }),
        }
    }
}

/// The word `(Π K_i^{s_i})^exp`.
fn k_power(parts: &[(usize, i64)], exp: i64) -> QExpr {
    let mut w = Vec::new();
    for _ in 0..exp.unsigned_abs() {
        for &(i, s) in parts {
            w.push(if s * exp.signum() > 0 { Letter::K(i) } else { Letter::KInv(i) });
        }
    }
    QExpr::word(QWord(w), RatFn::one())
}

/// `Π_{s=1}^t (X q_a^{c-s+1} - X^{-1} q_a^{-c+s-1}) / (q_a^s - q_a^{-s})` with `X = Π K_i^{s_i}`.
fn k_binom_expr(dims: &Dims, a: usize, parts: &[(usize, i64)], c: i64, t: u32) -> QExpr {
    let x = k_power(parts, 1);
    let xi = k_power(parts, -1);
    (1..=t as i64).fold(QExpr::one(), |acc, s| {
        let den = (&qa(dims, a, s) - &qa(dims, a, -s)).inv().expect("q_a^s != q_a^-s");
        let factor = x.scale(&qa(dims, a, c - s + 1)).sub(&xi.scale(&qa(dims, a, -c + s - 1)));
        acc.mul(&factor.scale(&den))
    })
}

impl fmt::Display for QAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QAtom::Root { a, b, power } => write!(f, "E({a},{b})^({power})"),
            QAtom::K { a, exp } => write!(f, "K{a}^{exp}"),
            QAtom::KPair { a, b, exp } => write!(f, "K({a},{b})^{exp}"),
            QAtom::KBinom { a, c, t } => write!(f, "[K{a};{c} over {t}]"),
            QAtom::KPairBinom { a, b, c, t } => write!(f, "[K({a},{b});{c} over {t}]"),
            QAtom::Idem(l) => write!(f, "1_{l}"),
        }
    }
}

/// A coefficient times an ordered product of atoms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QTerm {
    pub coeff: RatFn,
    pub atoms: Vec<QAtom>,
}

impl QTerm {
    pub fn new(coeff: RatFn, atoms: Vec<QAtom>) -> Self {
        Self { coeff, atoms }
    }

    pub fn is_zero(&self, dims: &Dims) -> bool {
        self.coeff.is_zero() || self.atoms.iter().any(|a| a.vanishes(dims))
    }

    pub fn grading(&self, dims: &Dims) -> u8 {
        self.atoms.iter().map(|a| a.grading(dims)).sum::<u8>() % 2
    }

    pub fn tau(&self) -> QTerm {
        QTerm {
            coeff: self.coeff.bar(),
            atoms: self.atoms.iter().rev().map(QAtom::tau).collect(),
        }
    }

    pub fn expand(&self, dims: &Dims) -> QExpr {
        self.atoms
            .iter()
            .fold(QExpr::scalar(self.coeff.clone()), |acc, a| acc.mul(&a.expand(dims)))
    }
}

impl fmt::Display for QTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.coeff)?;
        for a in &self.atoms {
            write!(f, "·{a}")?;
        }
        Ok(())
    }
}

/// A sum of [`QTerm`]s.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct QPoly {
    pub terms: Vec<QTerm>,
}

impl QPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn term(coeff: RatFn, atoms: Vec<QAtom>) -> Self {
        Self {
            terms: vec![QTerm::new(coeff, atoms)],
        }
    }

    pub fn atoms(atoms: Vec<QAtom>) -> Self {
        Self::term(RatFn::one(), atoms)
    }

    pub fn plus(mut self, coeff: RatFn, atoms: Vec<QAtom>) -> Self {
        self.terms.push(QTerm::new(coeff, atoms));
        self
    }

    /// Grading of the nonvanishing terms; `None` if they disagree.
    pub fn grading(&self, dims: &Dims) -> Option<u8> {
        let mut g = self.terms.iter().filter(|t| !t.is_zero(dims)).map(|t| t.grading(dims));
        let first = g.next().unwrap_or(0);
        g.all(|x| x == first).then_some(first)
    }

    pub fn is_zero(&self, dims: &Dims) -> bool {
        self.terms.iter().all(|t| t.is_zero(dims))
    }

    pub fn tau(&self) -> QPoly {
        QPoly {
            terms: self.terms.iter().map(QTerm::tau).collect(),
        }
    }

    pub fn expand(&self, dims: &Dims) -> QExpr {
        self.terms.iter().fold(QExpr::zero(), |acc, t| acc.add(&t.expand(dims)))
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(QTerm::to_string).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// One instance of an identity family, `lhs = rhs`.
#[derive(Debug, Clone)]
pub struct IdentityInstance {
    pub name: String,
    pub params: Vec<(&'static str, i64)>,
    pub lhs: QPoly,
    pub rhs: QPoly,
    pub citation: String,
    /// Index of the rhs term that mirrors the lhs with the two factors swapped, if any.
    lead: Option<usize>,
}

impl IdentityInstance {
    pub fn describe(&self) -> String {
        let p: Vec<String> = self.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        format!("{} ({})", self.name, p.join(" "))
    }

    /// The same identity under the antiautomorphism.
    pub fn tau(&self) -> IdentityInstance {
        IdentityInstance {
            name: format!("{}-anti", self.name),
            params: self.params.clone(),
            lhs: self.lhs.tau(),
            rhs: self.rhs.tau(),
            citation: format!("antiautomorphism image of: {}", self.citation),
            lead: self.lead,
        }
    }

    /// Rearranged to express the leading rhs term through the lhs and the remaining terms.
    pub fn solved(&self) -> Option<IdentityInstance> {
        let k = self.lead?;
        let lead = &self.rhs.terms[k];
        let inv = lead.coeff.inv()?;
        let mut rhs = QPoly::zero();
        for t in &self.lhs.terms {
            rhs.terms.push(QTerm::new(&t.coeff * &inv, t.atoms.clone()));
        }
        for (i, t) in self.rhs.terms.iter().enumerate() {
            if i != k {
                rhs.terms.push(QTerm::new(-(&t.coeff * &inv), t.atoms.clone()));
            }
        }
        Some(IdentityInstance {
            name: format!("{}-solved", self.name),
            params: self.params.clone(),
            lhs: QPoly::atoms(lead.atoms.clone()),
            rhs,
            citation: format!("rearrangement of: {}", self.citation),
            lead: None,
        })
    }

    pub fn to_json(&self, dims: &Dims) -> serde_json::Value {
        serde_json::json!({
            "name": self.name,
            "params": self.params.iter().map(|(k, v)| (k.to_string(), *v)).collect::<BTreeMap<_, _>>(),
            "citation": self.citation,
            "lhs": self.lhs.expand(dims).to_json(),
            "rhs": self.rhs.expand(dims).to_json(),
        })
    }
}

fn sign(p: u8) -> RatFn {
    RatFn::from_int(if p == 1 { -1 } else { 1 })
}

fn qdiff(dims: &Dims, b: usize) -> RatFn {
    &qa(dims, b, 1) - &qa(dims, b, -1)
}

fn qint_fact(t: u32) -> RatFn {
    RatFn::from_poly(quantum_factorial(t))
}

struct Builder<'a> {
    dims: &'a Dims,
    out: Vec<IdentityInstance>,
}

impl Builder<'_> {
    fn push(&mut self, name: &str, params: Vec<(&'static str, i64)>, lhs: QPoly, rhs: QPoly, citation: &str, lead: Option<usize>) {
        self.out.push(IdentityInstance {
            name: name.to_string(),
            params,
            lhs,
            rhs,
            citation: citation.to_string(),
            lead,
        });
    }

    fn root_parity(&self, a: usize, b: usize) -> u8 {
        (self.dims.parity(a) + self.dims.parity(b)) % 2
    }

    fn max_power(&self, a: usize, b: usize, max_power: u32) -> u32 {
        if self.root_parity(a, b) == 1 {
            1
        } else {
            max_power
        }
    }
}

/// All instances of the positive-positive and positive-negative commutation
/// families (single and divided powers up to `max_power`), their rearranged
/// forms, their antiautomorphism images, and the K-binomial identities.
pub fn identity_catalogue(dims: &Dims, max_power: u32) -> Vec<IdentityInstance> {
    let mut b = Builder { dims, out: Vec::new() };
    let roots: Vec<(usize, usize)> = positive_roots(dims).iter().map(|r| (r.i, r.j)).collect();
    let e = |a: usize, b: usize, m: u32| QAtom::root(a, b, m);
    let q = |x: usize, k: i64| qa(dims, x, k);

    for &(a, bb) in &roots {
        for &(c, d) in &roots {
            let p = b.root_parity(a, bb) * b.root_parity(c, d);
            let params = vec![("a", a as i64), ("b", bb as i64), ("c", c as i64), ("d", d as i64)];
            let lhs = QPoly::atoms(vec![e(a, bb, 1), e(c, d, 1)]);
            let swapped = vec![e(c, d, 1), e(a, bb, 1)];
            let cit = "E_{a,b} E_{c,d} for positive roots: (-1)^{p p'} E_{c,d} E_{a,b} [q_b | q_a | ...] or E_{a,d} + q_c^{-1} E_{c,d} E_{a,b} or + (q_b - q_b^{-1}) E_{a,d} E_{c,b}";
            let rhs = if bb < c || (c < a && bb < d) {
                Some(QPoly::term(sign(p), swapped))
            } else if a < c && c < bb && bb == d {
                Some(QPoly::term(&sign(p) * &q(bb, 1), swapped))
            } else if a == c && bb < d {
                Some(QPoly::term(&sign(p) * &q(a, 1), swapped))
            } else if bb == c {
                Some(QPoly::term(q(c, -1), swapped).plus(RatFn::one(), vec![e(a, d, 1)]))
            } else if a < c && c < bb && bb < d {
                Some(QPoly::term(sign(p), swapped).plus(qdiff(dims, bb), vec![e(a, d, 1), e(c, bb, 1)]))
            } else {
                None
            };
            if let Some(rhs) = rhs {
                b.push("positive-pair", params.clone(), lhs, rhs, cit, Some(0));
            }

            let both_odd = p == 1;
            for m in 1..=b.max_power(a, bb, max_power) {
                for n in 1..=b.max_power(c, d, max_power) {
                    if both_odd && m == 1 && n == 1 {
                        continue;
                    }
                    let mut params = params.clone();
                    params.push(("M", m as i64));
                    params.push(("N", n as i64));
                    let lhs = QPoly::atoms(vec![e(a, bb, m), e(c, d, n)]);
                    let lo = m.min(n);
                    let rhs = if bb < c || (c < a && bb < d) {
                        Some(QPoly::atoms(vec![e(c, d, n), e(a, bb, m)]))
                    } else if (a == c && bb < d) || (a < c && c < bb && bb == d) {
                        Some(QPoly::term(q(bb, (m * n) as i64), vec![e(c, d, n), e(a, bb, m)]))
                    } else if bb == c {
                        let mut r = QPoly::zero();
                        for t in 0..=lo {
                            let k = -((n - t) as i64) * ((m - t) as i64);
                            r = r.plus(q(bb, k), vec![e(c, d, n - t), e(a, d, t), e(a, bb, m - t)]);
                        }
                        Some(r)
                    } else if a < c && c < bb && bb < d {
                        let mut r = QPoly::zero();
                        for t in 0..=lo {
                            let ti = t as i64;
                            let coeff = &(&q(bb, ti * (ti - 1) / 2) * &qdiff(dims, bb).pow(t as i32)) * &qint_fact(t);
                            r = r.plus(coeff, vec![e(c, bb, t), e(c, d, n - t), e(a, bb, m - t), e(a, d, t)]);
                        }
                        Some(r)
                    } else {
                        None
                    };
                    if let Some(rhs) = rhs {
                        b.push(
                            "positive-divided",
                            params,
                            lhs,
                            rhs,
                            "E_{a,b}^(M) E_{c,d}^(N): commute | q_b^{MN} | Σ_t q_b^{-(N-t)(M-t)} E_{c,d}^(N-t) E_{a,d}^(t) E_{a,b}^(M-t) | Σ_t q_b^{t(t-1)/2} (q_b - q_b^{-1})^t [t]! E_{c,b}^(t) E_{c,d}^(N-t) E_{a,b}^(M-t) E_{a,d}^(t)",
                            Some(0),
                        );
                    }
                }
            }
        }
    }

    // positive root (a,b) followed by negative root (d,c), with a < b and c < d
    for &(a, bb) in &roots {
        for &(c, d) in &roots {
            let p = b.root_parity(a, bb) * b.root_parity(c, d);
            let params = vec![("a", a as i64), ("b", bb as i64), ("c", c as i64), ("d", d as i64)];
            let lhs = QPoly::atoms(vec![e(a, bb, 1), e(d, c, 1)]);
            let swapped = vec![e(d, c, 1), e(a, bb, 1)];
            let kp = |x: usize, y: usize, exp: i64| QAtom::KPair { a: x, b: y, exp };
            let rhs = if bb <= c || (c < a && bb < d) {
                Some(QPoly::term(sign(p), swapped))
            } else if a < c && c < bb && bb == d {
                Some(QPoly::term(sign(p), swapped).plus(RatFn::one(), vec![kp(c, bb, 1), e(a, c, 1)]))
            } else if a == c && bb < d {
                Some(QPoly::term(sign(p), swapped).plus(-sign(p), vec![kp(a, bb, 1), e(d, bb, 1)]))
            } else if a == c && bb == d {
                let inv = qdiff(dims, a).inv().expect("q_a - q_a^{-1} is nonzero");
                Some(
                    QPoly::term(sign(p), swapped)
                        .plus(inv.clone(), vec![kp(a, bb, 1)])
                        .plus(-inv, vec![kp(a, bb, -1)]),
                )
            } else if a < c && c < bb && bb < d {
                Some(QPoly::term(sign(p), swapped).plus(-qdiff(dims, bb), vec![kp(c, bb, 1), e(a, c, 1), e(d, bb, 1)]))
            } else {
                None
            };
            if let Some(rhs) = rhs {
                b.push(
                    "mixed-pair",
                    params.clone(),
                    lhs,
                    rhs,
                    "E_{a,b} E_{d,c}: (-1)^{p p'} E_{d,c} E_{a,b} + [0 | K_{c,b} E_{a,c} | -(-1)^{p p'} K_{a,b} E_{d,b} | (q_a - q_a^{-1})^{-1} (K_{a,b} - K_{a,b}^{-1}) | -(q_b - q_b^{-1}) K_{c,b} E_{a,c} E_{d,b}]",
                    Some(0),
                );
            }

            let both_odd = p == 1;
            for m in 1..=b.max_power(a, bb, max_power) {
                for n in 1..=b.max_power(c, d, max_power) {
                    if both_odd && m == 1 && n == 1 {
                        continue;
                    }
                    let mut params = params.clone();
                    params.push(("M", m as i64));
                    params.push(("N", n as i64));
                    let lhs = QPoly::atoms(vec![e(a, bb, m), e(d, c, n)]);
                    let lo = m.min(n) as i64;
                    let (mi, ni) = (m as i64, n as i64);
                    let rhs = if bb <= c || (c < a && bb < d) {
                        Some(QPoly::atoms(vec![e(d, c, n), e(a, bb, m)]))
                    } else if a < c && c < bb && bb == d {
                        let mut r = QPoly::zero();
                        for t in 0..=lo {
                            let tu = t as u32;
                            r = r.plus(
                                q(bb, -t * (ni - t)),
                                vec![e(d, c, n - tu), kp(c, d, t), e(a, bb, m - tu), e(a, c, tu)],
                            );
                        }
                        Some(r)
                    } else if a == c && bb < d {
                        let mut r = QPoly::zero();
                        for t in 0..=lo {
                            let tu = t as u32;
                            let coeff = &sign((t % 2) as u8) * &q(bb, -t * (mi - 1 - t));
                            r = r.plus(coeff, vec![e(d, bb, tu), e(d, c, n - tu), kp(a, bb, t), e(a, bb, m - tu)]);
                        }
                        Some(r)
                    } else if a == c && bb == d {
                        let mut r = QPoly::zero();
                        for t in 0..=lo {
                            let tu = t as u32;
                            r = r.plus(
                                RatFn::one(),
                                vec![
                                    e(bb, a, n - tu),
                                    QAtom::KPairBinom { a, b: bb, c: 2 * t - mi - ni, t: tu },
                                    e(a, bb, m - tu),
                                ],
                            );
                        }
                        Some(r)
                    } else if a < c && c < bb && bb < d {
                        let mut r = QPoly::zero();
                        for t in 0..=lo {
                            let tu = t as u32;
                            let coeff = &(&(&sign((t % 2) as u8) * &q(bb, -t * (2 * ni - 3 * t - 1) / 2))
                                * &qdiff(dims, bb).pow(t as i32))
                                * &qint_fact(tu);
                            r = r.plus(
                                coeff,
                                vec![e(d, c, n - tu), e(d, bb, tu), kp(c, bb, t), e(a, bb, m - tu), e(a, c, tu)],
                            );
                        }
                        Some(r)
                    } else {
                        None
                    };
                    if let Some(rhs) = rhs {
                        b.push(
                            "mixed-divided",
                            params,
                            lhs,
                            rhs,
                            "E_{a,b}^(M) E_{d,c}^(N): commute | Σ_t q_b^{-t(N-t)} E_{d,c}^(N-t) K_{c,d}^t E_{a,b}^(M-t) E_{a,c}^(t) | Σ_t (-1)^t q_b^{-t(M-1-t)} E_{d,b}^(t) E_{d,c}^(N-t) K_{a,b}^t E_{a,b}^(M-t) | Σ_t E_{b,a}^(N-t) [K_{a,b}; 2t-M-N over t] E_{a,b}^(M-t) | Σ_t (-1)^t q_b^{-t(2N-3t-1)/2} (q_b - q_b^{-1})^t [t]! E_{d,c}^(N-t) E_{d,b}^(t) K_{c,b}^t E_{a,b}^(M-t) E_{a,c}^(t)",
                            Some(0),
                        );
                    }
                }
            }
        }
    }

    let primary = std::mem::take(&mut b.out);
    let solved: Vec<IdentityInstance> = primary.iter().filter_map(IdentityInstance::solved).collect();
    let anti: Vec<IdentityInstance> = primary.iter().chain(&solved).map(IdentityInstance::tau).collect();
    b.out = primary;
    b.out.extend(solved);
    b.out.extend(anti);

    for a in 1..=dims.rank() {
        for l in 0..=dims.d() as i64 {
            let lu = l as u32;
            b.push(
                "k-binom-product",
                vec![("a", a as i64), ("lambda_a", l)],
                QPoly::atoms(vec![QAtom::KBinom { a, c: 0, t: 1 }, QAtom::KBinom { a, c: -1, t: lu }]),
                QPoly::term(RatFn::from_poly(gaussian_binomial(l + 1, 1)), vec![QAtom::KBinom { a, c: 0, t: lu + 1 }]),
                "[K_a;0 over 1] [K_a;-1 over λ_a] = [λ_a+1 over 1] [K_a;0 over λ_a+1]",
                None,
            );
            if l >= 1 {
                b.push(
                    "k-binom-shift",
                    vec![("a", a as i64), ("lambda_a", l)],
                    QPoly::atoms(vec![QAtom::KBinom { a, c: 1, t: lu }]),
                    QPoly::term(q(a, l), vec![QAtom::KBinom { a, c: 0, t: lu }]).plus(
                        q(a, l - 1),
                        vec![QAtom::K { a, exp: -1 }, QAtom::KBinom { a, c: 0, t: lu - 1 }],
                    ),
                    "[K_a;1 over λ_a] = q_a^{λ_a} [K_a over λ_a] + q_a^{λ_a-1} K_a^{-1} [K_a over λ_a-1]",
                    None,
                );
            }
        }
    }
    b.out
}

/// An element `E_A 1_λ F_C` of `Y_q`; the index set is the same as for `Y`.
pub type QBasisElement = BasisElement;

/// The basis `Y_q`, in the same order as the classical `Y`.
pub fn enumerate_basis_yq(dims: &Dims) -> Vec<QBasisElement> {
    enumerate_basis_y(dims)
}

/// `E_A 1_λ F_C` as a product of atoms in the fixed positive-root order.
pub fn basis_term(dims: &Dims, y: &QBasisElement) -> QTerm {
    let roots = positive_roots(dims);
    let mut atoms: Vec<QAtom> = roots
        .iter()
        .zip(&y.a.0)
        .filter(|(_, r)| **r > 0)
        .map(|(root, r)| QAtom::root(root.i, root.j, *r))
        .collect();
    atoms.push(QAtom::Idem(y.lambda.clone()));
    atoms.extend(
        roots
            .iter()
            .zip(&y.c.0)
            .filter(|(_, r)| **r > 0)
            .map(|(root, r)| QAtom::root(root.j, root.i, *r)),
    );
    QTerm::new(RatFn::one(), atoms)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dims(m: usize, n: usize) -> Dims {
        Dims::new(m, n, 1).unwrap()
    }

    fn w(letters: &[Letter]) -> QWord {
        QWord(letters.to_vec())
    }

    #[test]
    fn root_vector_examples() {
        let g = dims(2, 1);
        assert_eq!(expand_root_vector(&g, 1, 2, None).unwrap(), QExpr::letter(Letter::E(1)));
        let e13 = expand_root_vector(&g, 1, 3, Some(2)).unwrap();
        let expected = QExpr::word(w(&[Letter::E(1), Letter::E(2)]), RatFn::one())
            .sub(&QExpr::word(w(&[Letter::E(2), Letter::E(1)]), RatFn::q_pow(-1)));
        assert_eq!(e13, expected);
        let e31 = expand_root_vector(&g, 3, 1, Some(2)).unwrap();
        let expected = QExpr::word(w(&[Letter::F(2), Letter::F(1)]), RatFn::one())
            .sub(&QExpr::word(w(&[Letter::F(1), Letter::F(2)]), RatFn::q_pow(1)));
        assert_eq!(e31, expected);
        assert!(expand_root_vector(&g, 1, 3, Some(1)).is_err());
        assert!(expand_root_vector(&g, 1, 1, None).is_err());
        assert_eq!(e13.grading(&g), Some(1));
    }

    #[test]
    fn antiautomorphism_examples() {
        let g = dims(2, 1);
        let x = QExpr::word(w(&[Letter::E(1), Letter::E(2)]), RatFn::one());
        assert_eq!(x.antiautomorphism(), QExpr::word(w(&[Letter::F(2), Letter::F(1)]), RatFn::one()));
        assert_eq!(QExpr::letter(Letter::K(1)).antiautomorphism(), QExpr::letter(Letter::KInv(1)));
        let e13 = expand_root_vector(&g, 1, 3, None).unwrap();
        assert_eq!(e13.antiautomorphism().antiautomorphism(), e13);
        // the antiautomorphism sends E_{a,b} to E_{b,a} word for word
        let g = dims(2, 2);
        for (a, b) in [(1, 3), (1, 4), (2, 4)] {
            let x = expand_root_vector(&g, a, b, None).unwrap();
            assert_eq!(x.antiautomorphism(), expand_root_vector(&g, b, a, None).unwrap());
        }
    }

    #[test]
    fn letters_parse_and_print() {
        for s in ["E1", "F3", "K2", "K2^-1"] {
            assert_eq!(s.parse::<Letter>().unwrap().to_string(), s);
        }
        assert!("X1".parse::<Letter>().is_err());
    }

    #[test]
    fn catalogue_is_grading_consistent() {
        for g in [dims(1, 1), dims(2, 1), dims(2, 2)] {
            let cat = identity_catalogue(&g, 2);
            assert!(!cat.is_empty());
            for inst in &cat {
                let l = inst.lhs.grading(&g);
                let r = inst.rhs.grading(&g);
                assert!(l.is_some() && r.is_some(), "{}", inst.describe());
                if !inst.lhs.is_zero(&g) && !inst.rhs.is_zero(&g) {
                    assert_eq!(l, r, "{}", inst.describe());
                }
            }
        }
    }

    #[test]
    fn catalogue_dispatch_examples() {
        let g = dims(2, 1);
        let cat = identity_catalogue(&g, 1);
        let find = |name: &str, a: i64, b: i64, c: i64, d: i64| {
            cat.iter()
                .find(|i| i.name == name && i.params[..4] == [("a", a), ("b", b), ("c", c), ("d", d)])
                .cloned()
        };
        let inst = find("positive-divided", 1, 2, 1, 3).expect("a=c<b<d instance");
        assert_eq!(inst.rhs.terms.len(), 1);
        assert_eq!(inst.rhs.terms[0].coeff, RatFn::q_pow(1));
        let g11 = dims(1, 1);
        let cat = identity_catalogue(&g11, 1);
        let inst = cat
            .iter()
            .find(|i| i.name == "mixed-pair" && i.params[..4] == [("a", 1), ("b", 2), ("c", 1), ("d", 2)])
            .unwrap();
        assert_eq!(inst.rhs.terms[0].coeff, RatFn::from_int(-1));
        assert_eq!(inst.rhs.terms.len(), 3);
    }

    #[test]
    fn basis_yq_matches_y() {
        let g = Dims::new(1, 1, 2).unwrap();
        assert_eq!(enumerate_basis_yq(&g).len(), 8);
        let t = basis_term(&g, &enumerate_basis_yq(&g)[2]);
        assert!(t.atoms.iter().any(|a| matches!(a, QAtom::Idem(_))));
    }
}
