//! Kostant monomials, content functions, the index sets `P(m|n)` and `P`,
//! the basis `Y`, its cardinality, and the bijection between `P` and `Y`.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::superroot::{enumerate_weights, positive_roots, weight_leq, Dims, Root, RootError, Weight};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KostantError {
    #[error(transparent)]
    Root(#[from] RootError),
    #[error("odd root {0} has exponent {1}; only 0 or 1 is allowed")]
    OddExponent(Root, u32),
    #[error("exponent table has {got} entries, expected {expected}")]
    TableLength { got: usize, expected: usize },
    #[error("(A, B, C) violates |A|+|B|+|C| <= d or B_1 = 0")]
    NotInP,
    #[error("(A, λ, C) violates χ(e_A f_C) ⪯ λ or λ ∉ Λ(m|n,d)")]
    NotInY,
    #[error("({0}, {1}) is not a positive root")]
    NotPositive(usize, usize),
}

/// A single factor of a Kostant monomial.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum KostantFactor {
    /// `x_α^{(r)}` classically, `E_{i,j}^{(r)}` in the quantum case.
    RootPower { root: Root, r: u32 },
    /// `binom(H_i, s)` classically, `[K_i; 0 over s]` in the quantum case.
    CartanBinom { i: usize, s: u32 },
    /// `K_i^{±1}` (quantum only).
    KUnit { i: usize, exp: i8 },
    /// The weight idempotent `1_λ`.
    Idem(Weight),
}

impl KostantFactor {
    pub fn parity(&self) -> u8 {
        match self {
            KostantFactor::RootPower { root, r } => ((*r as u8) & 1) * root.parity,
            _ => 0,
        }
    }
}

/// Which content function to apply.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ContentFlavor {
    /// `χ(x_α^{(r)}) = r ε_{max(i,j)}`.
    Chi,
    /// `χ_L(x_α^{(r)}) = r ε_i`.
    Left,
    /// `χ_R(x_α^{(r)}) = r ε_j`.
    Right,
}

/// The value of a content function, read as a weight.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ContentVec(pub Vec<i64>);

impl ContentVec {
    pub fn zero(len: usize) -> Self {
        Self(vec![0; len])
    }

    pub fn add(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn to_weight(&self) -> Weight {
        Weight(self.0.clone())
    }
}

/// An ordered product of [`KostantFactor`]s.
///
/// An odd root vector raised to a divided power `r >= 2` is zero; pushing
/// such a factor turns the whole monomial into the zero monomial.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct KostantMonomial {
    factors: Vec<KostantFactor>,
    grading: u8,
    zero: bool,
}

impl KostantMonomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn from_factors<I: IntoIterator<Item = KostantFactor>>(factors: I) -> Self {
        let mut m = Self::one();
        for f in factors {
            m.push(f);
        }
        m
    }

    pub fn push(&mut self, f: KostantFactor) {
        if self.zero {
            return;
        }
        match &f {
            KostantFactor::RootPower { root, r } if root.is_odd() && *r >= 2 => {
                self.zero = true;
                self.factors.clear();
                self.grading = 0;
                return;
            }
            KostantFactor::RootPower { r: 0, .. } | KostantFactor::CartanBinom { s: 0, .. } => return,
            _ => {}
        }
        self.grading ^= f.parity();
        self.factors.push(f);
    }

    /// Concatenation `self * other`.
    pub fn concat(&self, other: &Self) -> Self {
        if self.zero || other.zero {
            return Self::zero_monomial();
        }
        let mut m = self.clone();
        for f in &other.factors {
            m.push(f.clone());
        }
        m
    }

    pub fn zero_monomial() -> Self {
        Self {
            factors: Vec::new(),
            grading: 0,
            zero: true,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.zero
    }

    pub fn factors(&self) -> &[KostantFactor] {
        &self.factors
    }

    pub fn grading(&self) -> u8 {
        self.grading
    }
}

/// Content of a monomial; Cartan, `K` and idempotent factors contribute nothing.
pub fn content(mono: &KostantMonomial, flavor: ContentFlavor, rank: usize) -> ContentVec {
    let mut c = ContentVec::zero(rank);
    for f in mono.factors() {
        if let KostantFactor::RootPower { root, r } = f {
            let idx = match flavor {
                ContentFlavor::Chi => root.i.max(root.j),
                ContentFlavor::Left => root.i,
                ContentFlavor::Right => root.j,
            };
            c.0[idx - 1] += *r as i64;
        }
    }
    c
}

/// An element of `P(m|n)`: a nonnegative exponent for every positive root, in
/// the fixed positive-root order, with odd roots restricted to `{0, 1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExponentTable(pub Vec<u32>);

impl ExponentTable {
    pub fn zero(dims: &Dims) -> Self {
        Self(vec![0; positive_roots(dims).len()])
    }

    pub fn new(dims: &Dims, entries: Vec<u32>) -> Result<Self, KostantError> {
        let roots = positive_roots(dims);
        if entries.len() != roots.len() {
            return Err(KostantError::TableLength {
                got: entries.len(),
                expected: roots.len(),
            });
        }
        for (root, &r) in roots.iter().zip(&entries) {
            if root.is_odd() && r > 1 {
                return Err(KostantError::OddExponent(*root, r));
            }
        }
        Ok(Self(entries))
    }

    /// Builds from sparse `(i, j, r)` triples over positive roots.
    pub fn from_triples(dims: &Dims, triples: &[(usize, usize, u32)]) -> Result<Self, KostantError> {
        let roots = positive_roots(dims);
        let mut entries = vec![0; roots.len()];
        for &(i, j, r) in triples {
            let k = roots
                .iter()
                .position(|a| a.i == i && a.j == j)
                .ok_or(KostantError::NotPositive(i, j))?;
            entries[k] += r;
        }
        Self::new(dims, entries)
    }

    /// Nonzero entries as `(i, j, r)`.
    pub fn triples(&self, dims: &Dims) -> Vec<(usize, usize, u32)> {
        positive_roots(dims)
            .iter()
            .zip(&self.0)
            .filter(|(_, r)| **r > 0)
            .map(|(a, r)| (a.i, a.j, *r))
            .collect()
    }

    /// `|A| = Σ A(α)`.
    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    /// `e_A`: product of `x_α^{(A(α))}` over positive roots in the fixed order.
    pub fn e_monomial(&self, dims: &Dims) -> KostantMonomial {
        KostantMonomial::from_factors(
            positive_roots(dims)
                .into_iter()
                .zip(&self.0)
                .map(|(root, &r)| KostantFactor::RootPower { root, r }),
        )
    }

    /// `f_A`: product of `x_{-α}^{(A(α))}` over positive roots in the fixed order.
    pub fn f_monomial(&self, dims: &Dims) -> KostantMonomial {
        KostantMonomial::from_factors(
            positive_roots(dims)
                .into_iter()
                .zip(&self.0)
                .map(|(root, &r)| KostantFactor::RootPower { root: root.negate(), r }),
        )
    }

    /// `Σ A(α) α`.
    pub fn root_sum(&self, dims: &Dims) -> Weight {
        let rank = dims.rank();
        positive_roots(dims)
            .iter()
            .zip(&self.0)
            .fold(Weight::zero(rank), |acc, (a, &r)| acc.add(&a.as_weight(rank).scaled(r as i64)))
    }
}

/// `χ(e_A f_C)`: each exponent on `ε_i - ε_j` (or its negative) contributes to `ε_j`.
pub fn chi_of_pair(dims: &Dims, a: &ExponentTable, c: &ExponentTable) -> Weight {
    let mono = a.e_monomial(dims).concat(&c.f_monomial(dims));
    content(&mono, ContentFlavor::Chi, dims.rank()).to_weight()
}

/// An element `e_A 1_λ f_C` of the basis `Y` (classical) or `Y_q` (quantum).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasisElement {
    pub a: ExponentTable,
    pub lambda: Weight,
    pub c: ExponentTable,
}

impl BasisElement {
    /// The monomial `e_A 1_λ f_C`.
    pub fn monomial(&self, dims: &Dims) -> KostantMonomial {
        let mut m = self.a.e_monomial(dims);
        m.push(KostantFactor::Idem(self.lambda.clone()));
        m.concat(&self.c.f_monomial(dims))
    }

    pub fn is_member(&self, dims: &Dims) -> bool {
        self.lambda.in_lambda(dims)
            && weight_leq(&chi_of_pair(dims, &self.a, &self.c), &self.lambda).unwrap_or(false)
    }

    /// `λ' = λ + Σ A(α) α`.
    pub fn lambda_left(&self, dims: &Dims) -> Weight {
        self.lambda.add(&self.a.root_sum(dims))
    }

    /// `λ'' = λ + Σ C(α) α`.
    pub fn lambda_right(&self, dims: &Dims) -> Weight {
        self.lambda.add(&self.c.root_sum(dims))
    }

    pub fn to_json(&self, dims: &Dims) -> BasisElementJson {
        BasisElementJson {
            a: self.a.triples(dims),
            lambda: self.lambda.0.clone(),
            c: self.c.triples(dims),
        }
    }

    pub fn from_json(dims: &Dims, j: &BasisElementJson) -> Result<Self, KostantError> {
        Ok(Self {
            a: ExponentTable::from_triples(dims, &j.a)?,
            lambda: Weight(j.lambda.clone()),
            c: ExponentTable::from_triples(dims, &j.c)?,
        })
    }
}

impl fmt::Display for BasisElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{:?}·1_{}·f{:?}", self.a.0, self.lambda, self.c.0)
    }
}

/// Wire format `{"A": [[i,j,r],...], "lambda": [...], "C": [[i,j,r],...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisElementJson {
    #[serde(rename = "A")]
    pub a: Vec<(usize, usize, u32)>,
    pub lambda: Vec<i64>,
    #[serde(rename = "C")]
    pub c: Vec<(usize, usize, u32)>,
}

/// An element `e_A H_B f_C` of the counting set `P`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PElement {
    pub a: ExponentTable,
    pub b: Weight,
    pub c: ExponentTable,
}

impl PElement {
    pub fn is_valid(&self, dims: &Dims) -> bool {
        self.b.len() == dims.rank()
            && self.b.at(1) == 0
            && self.b.is_nonnegative()
            && (self.a.size() + self.c.size()) as i64 + self.b.size() <= dims.d() as i64
    }
}

/// Binomial coefficient for counting.
fn choose(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// Number of degree-`d` monomials in a free supercommutative algebra with
/// `m²+n²` even and `2mn` odd generators:
/// `Σ_{k=0}^{min(d,2mn)} C(2mn, k) C(m²+n²+d-k-1, d-k)`.
pub fn dimension_count(dims: &Dims) -> u128 {
    let (m, n, d) = (dims.m() as u64, dims.n() as u64, dims.d() as u64);
    let even = m * m + n * n;
    let odd = 2 * m * n;
    (0..=d.min(odd))
        .map(|k| choose(odd, k) * choose(even + d - k - 1, d - k))
        .sum()
}

/// Enumerates exponent tables `A` in ascending lexicographic order subject to
/// `χ(e_A) ⪯ bound`, calling `f` with each table and its content.
fn for_each_table(dims: &Dims, bound: &Weight, f: &mut dyn FnMut(&ExponentTable, &Weight)) {
    let roots = positive_roots(dims);
    let rank = dims.rank();
    fn rec(
        roots: &[Root],
        k: usize,
        entries: &mut Vec<u32>,
        used: &mut Weight,
        bound: &Weight,
        f: &mut dyn FnMut(&ExponentTable, &Weight),
    ) {
        if k == roots.len() {
            f(&ExponentTable(entries.clone()), used);
            return;
        }
        let root = roots[k];
        // χ(x_α^{(r)}) = r ε_j for α = ε_i - ε_j, i < j
        let room = (bound.at(root.j) - used.at(root.j)).max(0) as u32;
        let cap = if root.is_odd() { room.min(1) } else { room };
        for r in 0..=cap {
            entries.push(r);
            used.0[root.j - 1] += r as i64;
            rec(roots, k + 1, entries, used, bound, f);
            used.0[root.j - 1] -= r as i64;
            entries.pop();
        }
    }
    rec(&roots, 0, &mut Vec::new(), &mut Weight::zero(rank), bound, f);
}

/// The basis `Y`: all `(A, λ, C)` with `λ ∈ Λ(m|n,d)` and `χ(e_A f_C) ⪯ λ`.
///
/// Ordered by `λ` (descending lexicographic), then `A`, then `C` (ascending lexicographic).
pub fn enumerate_basis_y(dims: &Dims) -> Vec<BasisElement> {
    let mut out = Vec::new();
    for lambda in enumerate_weights(dims) {
        for_each_table(dims, &lambda, &mut |a, used_a| {
            let rest = lambda.sub(used_a);
            for_each_table(dims, &rest, &mut |c, _| {
                out.push(BasisElement {
                    a: a.clone(),
                    lambda: lambda.clone(),
                    c: c.clone(),
                });
            });
        });
    }
    out
}

/// The counting set `P = {e_A H_B f_C : B_1 = 0, |A|+|B|+|C| <= d}`.
pub fn enumerate_p(dims: &Dims) -> Vec<PElement> {
    let d = dims.d() as i64;
    let rank = dims.rank();
    // any exponent is bounded by d
    let bound = Weight(vec![d; rank]);
    let mut tables = Vec::new();
    for_each_table(dims, &bound, &mut |a, _| {
        if a.size() as i64 <= d {
            tables.push(a.clone());
        }
    });
    let mut out = Vec::new();
    for a in &tables {
        for c in &tables {
            let budget = d - (a.size() + c.size()) as i64;
            if budget < 0 {
                continue;
            }
            // B with B_1 = 0 and |B| <= budget
            for total in 0..=budget {
                let sub = Dims::new(1, 1, total as usize).expect("valid");
                let parts = if rank == 1 {
                    vec![]
                } else {
                    compositions(rank - 1, total as usize)
                };
                let _ = sub;
                for p in parts {
                    let mut b = vec![0];
                    b.extend(p);
                    out.push(PElement {
                        a: a.clone(),
                        b: Weight(b),
                        c: c.clone(),
                    });
                }
            }
        }
    }
    out
}

fn compositions(parts: usize, total: usize) -> Vec<Vec<i64>> {
    if parts == 1 {
        return vec![vec![total as i64]];
    }
    let mut out = Vec::new();
    for first in (0..=total).rev() {
        for mut rest in compositions(parts - 1, total - first) {
            rest.insert(0, first as i64);
            out.push(rest);
        }
    }
    out
}

/// `e_A H_B f_C ↦ e_A 1_λ f_C` with `λ = (d - |A| - |B| - |C|) ε_1 + B + χ(e_A f_C)`.
pub fn p_to_y(p: &PElement, dims: &Dims) -> Result<BasisElement, KostantError> {
    if !p.is_valid(dims) {
        return Err(KostantError::NotInP);
    }
    let spare = dims.d() as i64 - (p.a.size() + p.c.size()) as i64 - p.b.size();
    let lambda = Weight::epsilon(dims.rank(), 1)
        .scaled(spare)
        .add(&p.b)
        .add(&chi_of_pair(dims, &p.a, &p.c));
    Ok(BasisElement {
        a: p.a.clone(),
        lambda,
        c: p.c.clone(),
    })
}

/// `e_A 1_λ f_C ↦ e_A H_B f_C` with `B = λ - χ(e_A f_C) - λ_1 ε_1`.
pub fn y_to_p(y: &BasisElement, dims: &Dims) -> Result<PElement, KostantError> {
    if !y.is_member(dims) {
        return Err(KostantError::NotInY);
    }
    let b = y
        .lambda
        .sub(&chi_of_pair(dims, &y.a, &y.c))
        .sub(&Weight::epsilon(dims.rank(), 1).scaled(y.lambda.at(1)));
    Ok(PElement {
        a: y.a.clone(),
        b,
        c: y.c.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dims(m: usize, n: usize, d: usize) -> Dims {
        Dims::new(m, n, d).unwrap()
    }

    #[test]
    fn content_examples() {
        let g = dims(2, 1, 0);
        let root = Root::new(&g, 1, 3).unwrap();
        // odd root clamps, so use the even (1,2) root for a power 2 check too
        let x = KostantMonomial::from_factors([KostantFactor::RootPower { root, r: 1 }]);
        assert_eq!(content(&x, ContentFlavor::Chi, 3).0, vec![0, 0, 1]);
        let g2 = dims(3, 1, 0);
        let even = Root::new(&g2, 1, 3).unwrap();
        let x2 = KostantMonomial::from_factors([KostantFactor::RootPower { root: even, r: 2 }]);
        assert_eq!(content(&x2, ContentFlavor::Chi, 4).0, vec![0, 0, 2, 0]);
        assert_eq!(content(&x2, ContentFlavor::Left, 4).0, vec![2, 0, 0, 0]);
        assert_eq!(content(&x2, ContentFlavor::Right, 4).0, vec![0, 0, 2, 0]);
        let h = KostantMonomial::from_factors([KostantFactor::CartanBinom { i: 2, s: 5 }]);
        assert_eq!(content(&h, ContentFlavor::Chi, 4).0, vec![0; 4]);
    }

    #[test]
    fn odd_square_is_zero_monomial() {
        let g = dims(1, 1, 0);
        let root = Root::new(&g, 1, 2).unwrap();
        let m = KostantMonomial::from_factors([KostantFactor::RootPower { root, r: 2 }]);
        assert!(m.is_zero());
        assert!(ExponentTable::new(&g, vec![2]).is_err());
        let one = KostantMonomial::from_factors([KostantFactor::RootPower { root, r: 1 }]);
        assert_eq!(one.grading(), 1);
        assert_eq!(one.concat(&one).grading(), 0);
    }

    #[test]
    fn dimension_counts() {
        assert_eq!(dimension_count(&dims(1, 1, 1)), 4);
        assert_eq!(dimension_count(&dims(1, 1, 2)), 8);
        assert_eq!(dimension_count(&dims(2, 1, 2)), 41);
        assert_eq!(dimension_count(&dims(1, 1, 0)), 1);
    }

    #[test]
    fn basis_examples() {
        let g = dims(1, 1, 1);
        let y = enumerate_basis_y(&g);
        let summary: Vec<(Vec<u32>, Vec<i64>, Vec<u32>)> =
            y.iter().map(|b| (b.a.0.clone(), b.lambda.0.clone(), b.c.0.clone())).collect();
        assert_eq!(
            summary,
            vec![
                (vec![0], vec![1, 0], vec![0]),
                (vec![0], vec![0, 1], vec![0]),
                (vec![0], vec![0, 1], vec![1]),
                (vec![1], vec![0, 1], vec![0]),
            ]
        );
        assert_eq!(enumerate_basis_y(&dims(1, 1, 2)).len(), 8);
        let zero = enumerate_basis_y(&dims(2, 2, 0));
        assert_eq!(zero.len(), 1);
        assert_eq!(zero[0].lambda, Weight::zero(4));
    }

    #[test]
    fn bijection_examples() {
        let g = dims(1, 1, 2);
        let p0 = PElement {
            a: ExponentTable::zero(&g),
            b: Weight::zero(2),
            c: ExponentTable::zero(&g),
        };
        let y0 = p_to_y(&p0, &g).unwrap();
        assert_eq!(y0.lambda.0, vec![2, 0]);
        assert_eq!(y_to_p(&y0, &g).unwrap(), p0);
        let p1 = PElement {
            a: ExponentTable(vec![1]),
            b: Weight::zero(2),
            c: ExponentTable(vec![1]),
        };
        let y1 = p_to_y(&p1, &g).unwrap();
        assert_eq!(y1.lambda.0, vec![0, 2]);
        assert_eq!(y_to_p(&y1, &g).unwrap().b, Weight::zero(2));
        let bad = PElement {
            a: ExponentTable(vec![1]),
            b: Weight(vec![0, 2]),
            c: ExponentTable(vec![0]),
        };
        assert_eq!(p_to_y(&bad, &g), Err(KostantError::NotInP));
        let not_y = BasisElement {
            a: ExponentTable(vec![1]),
            lambda: Weight(vec![2, 0]),
            c: ExponentTable(vec![0]),
        };
        assert_eq!(y_to_p(&not_y, &g), Err(KostantError::NotInY));
    }

    #[test]
    fn json_wire_format() {
        let g = dims(2, 1, 2);
        let y = BasisElement {
            a: ExponentTable::from_triples(&g, &[(1, 2, 1)]).unwrap(),
            lambda: Weight(vec![0, 1, 1]),
            c: ExponentTable::from_triples(&g, &[(2, 3, 1)]).unwrap(),
        };
        let s = serde_json::to_string(&y.to_json(&g)).unwrap();
        assert_eq!(s, r#"{"A":[[1,2,1]],"lambda":[0,1,1],"C":[[2,3,1]]}"#);
        let back: BasisElementJson = serde_json::from_str(&s).unwrap();
        assert_eq!(BasisElement::from_json(&g, &back).unwrap(), y);
        assert!(ExponentTable::from_triples(&g, &[(2, 1, 1)]).is_err());
    }
}
