//! Combinatorics of `gl(m|n)`: index parities, the bilinear form on weights,
//! roots, the compositions `Λ(m|n, d)` and the componentwise order on weights.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RootError {
    #[error("m and n must be positive (got m={m}, n={n})")]
    BadDims { m: usize, n: usize },
    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("a root needs two distinct indices (got {0}, {0})")]
    DegenerateRoot(usize),
    #[error("weight has length {got}, expected {expected}")]
    LengthMismatch { got: usize, expected: usize },
}

/// Superdimension `(m|n)` together with the tensor degree `d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Dims {
    m: usize,
    n: usize,
    d: usize,
}

impl Dims {
    pub fn new(m: usize, n: usize, d: usize) -> Result<Self, RootError> {
        if m == 0 || n == 0 {
            return Err(RootError::BadDims { m, n });
        }
        Ok(Self { m, n, d })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// `m + n`, the dimension of the natural module.
    pub fn rank(&self) -> usize {
        self.m + self.n
    }

    /// `(m + n)^d`, the dimension of tensor space.
    pub fn tensor_dim(&self) -> usize {
        self.rank().pow(self.d as u32)
    }

    pub fn with_degree(&self, d: usize) -> Self {
        Self { d, ..*self }
    }

    pub fn check_index(&self, i: usize) -> Result<(), RootError> {
        if (1..=self.rank()).contains(&i) {
            Ok(())
        } else {
            Err(RootError::IndexOutOfRange {
                index: i,
                max: self.rank(),
            })
        }
    }

    /// Parity of the index `i`: 0 for `i <= m`, 1 otherwise. Assumes `i` is in range.
    pub fn parity(&self, i: usize) -> u8 {
        debug_assert!(self.check_index(i).is_ok());
        u8::from(i > self.m)
    }

    pub fn is_odd(&self, i: usize) -> bool {
        self.parity(i) == 1
    }

    /// Parity of the simple root `α_i = ε_i - ε_{i+1}`; odd exactly when `i = m`.
    pub fn simple_root_parity(&self, i: usize) -> u8 {
        u8::from(i == self.m)
    }
}

impl fmt::Display for Dims {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "gl({}|{}), d={}", self.m, self.n, self.d)
    }
}

pub fn parity_of_index(dims: &Dims, i: usize) -> Result<u8, RootError> {
    dims.check_index(i)?;
    Ok(dims.parity(i))
}

/// `(ε_i, ε_j) = (-1)^{parity(i)} δ_ij`.
pub fn bilinear_form(dims: &Dims, i: usize, j: usize) -> Result<i64, RootError> {
    dims.check_index(i)?;
    dims.check_index(j)?;
    Ok(if i != j {
        0
    } else if dims.is_odd(i) {
        -1
    } else {
        1
    })
}

/// An integral weight `Σ λ_i ε_i`, stored as its coordinate tuple.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    pub fn zero(len: usize) -> Self {
        Self(vec![0; len])
    }

    /// The basis weight `ε_i` (1-based).
    pub fn epsilon(len: usize, i: usize) -> Self {
        let mut w = Self::zero(len);
        w.0[i - 1] = 1;
        w
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Coordinate `λ_i` (1-based).
    pub fn at(&self, i: usize) -> i64 {
        self.0[i - 1]
    }

    /// `|λ|`.
    pub fn size(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|&x| x >= 0)
    }

    /// Membership in `Λ(m|n, d)`.
    pub fn in_lambda(&self, dims: &Dims) -> bool {
        self.len() == dims.rank() && self.is_nonnegative() && self.size() == dims.d() as i64
    }

    pub fn add(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scaled(&self, k: i64) -> Self {
        Self(self.0.iter().map(|a| a * k).collect())
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, x) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// All compositions of `d` into `m+n` nonnegative parts, in descending lexicographic order.
pub fn enumerate_weights(dims: &Dims) -> Vec<Weight> {
    fn rec(parts: usize, remaining: usize, prefix: &mut Vec<i64>, out: &mut Vec<Weight>) {
        if parts == 1 {
            prefix.push(remaining as i64);
            out.push(Weight(prefix.clone()));
            prefix.pop();
            return;
        }
        for first in (0..=remaining).rev() {
            prefix.push(first as i64);
            rec(parts - 1, remaining - first, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(dims.rank(), dims.d(), &mut Vec::new(), &mut out);
    out
}

/// `λ ⪯ μ` iff `λ_i <= μ_i` for all `i`.
pub fn weight_leq(a: &Weight, b: &Weight) -> Result<bool, RootError> {
    if a.len() != b.len() {
        return Err(RootError::LengthMismatch {
            got: a.len(),
            expected: b.len(),
        });
    }
    Ok(a.0.iter().zip(&b.0).all(|(x, y)| x <= y))
}

/// The root `ε_i - ε_j`, `i != j`, with its parity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Root {
    pub i: usize,
    pub j: usize,
    pub parity: u8,
}

impl Root {
    pub fn new(dims: &Dims, i: usize, j: usize) -> Result<Self, RootError> {
        dims.check_index(i)?;
        dims.check_index(j)?;
        if i == j {
            return Err(RootError::DegenerateRoot(i));
        }
        Ok(Self {
            i,
            j,
            parity: (dims.parity(i) + dims.parity(j)) % 2,
        })
    }

    pub fn is_positive(&self) -> bool {
        self.i < self.j
    }

    pub fn is_odd(&self) -> bool {
        self.parity == 1
    }

    pub fn negate(&self) -> Self {
        Self {
            i: self.j,
            j: self.i,
            parity: self.parity,
        }
    }

    /// `α + β` if it is again a root.
    pub fn try_add(&self, other: &Self) -> Option<Self> {
        let (i, j) = if self.j == other.i {
            (self.i, other.j)
        } else if self.i == other.j {
            (other.i, self.j)
        } else {
            return None;
        };
        (i != j).then_some(Self {
            i,
            j,
            parity: (self.parity + other.parity) % 2,
        })
    }

    /// Whether `α + β = 0`.
    pub fn is_opposite(&self, other: &Self) -> bool {
        self.i == other.j && self.j == other.i
    }

    /// The structure constant `c_{α,β}` in `[x_α, x_β] = c_{α,β} x_{α+β}`,
    /// defined when `α + β` is a root.
    pub fn structure_constant(&self, other: &Self) -> Option<i64> {
        self.try_add(other)?;
        if self.j == other.i {
            Some(1)
        } else {
            // i = l case: -(-1)^{parity(α) parity(β)}
            Some(if self.parity * other.parity == 1 { 1 } else { -1 })
        }
    }

    /// `H_α = H_i - (-1)^{parity(α)} H_j` as a coefficient vector on `H_1, ..., H_{m+n}`.
    pub fn coroot(&self, rank: usize) -> Vec<i64> {
        let mut c = vec![0; rank];
        c[self.i - 1] += 1;
        c[self.j - 1] -= if self.is_odd() { -1 } else { 1 };
        c
    }

    pub fn as_weight(&self, rank: usize) -> Weight {
        let mut w = Weight::zero(rank);
        w.0[self.i - 1] += 1;
        w.0[self.j - 1] -= 1;
        w
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ε{}-ε{}", self.i, self.j)
    }
}

/// Positive roots `ε_i - ε_j`, `i < j`, in row-major lexicographic order of `(i, j)`.
///
/// This is the fixed order used for every ordered product over positive roots.
pub fn positive_roots(dims: &Dims) -> Vec<Root> {
    let r = dims.rank();
    (1..=r)
        .flat_map(|i| (i + 1..=r).map(move |j| (i, j)))
        .map(|(i, j)| Root::new(dims, i, j).expect("indices in range"))
        .collect()
}

/// All roots `ε_i - ε_j`, `i != j`, row-major.
pub fn all_roots(dims: &Dims) -> Vec<Root> {
    let r = dims.rank();
    (1..=r)
        .flat_map(|i| (1..=r).filter(move |&j| j != i).map(move |j| (i, j)))
        .map(|(i, j)| Root::new(dims, i, j).expect("indices in range"))
        .collect()
}

/// The simple root `α_i` as a weight.
pub fn simple_root(dims: &Dims, i: usize) -> Weight {
    Root::new(dims, i, i + 1)
        .expect("simple root index in range")
        .as_weight(dims.rank())
}

/// `(α, β)` for weights, using the bilinear form.
pub fn pair_weights(dims: &Dims, a: &Weight, b: &Weight) -> i64 {
    (1..=dims.rank())
        .map(|i| a.at(i) * b.at(i) * if dims.is_odd(i) { -1 } else { 1 })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dims(m: usize, n: usize, d: usize) -> Dims {
        Dims::new(m, n, d).unwrap()
    }

    #[test]
    fn parity_examples() {
        assert_eq!(parity_of_index(&dims(2, 1, 0), 1), Ok(0));
        assert_eq!(parity_of_index(&dims(2, 1, 0), 3), Ok(1));
        assert_eq!(parity_of_index(&dims(1, 1, 0), 1), Ok(0));
        assert!(parity_of_index(&dims(1, 1, 0), 3).is_err());
        assert!(parity_of_index(&dims(1, 1, 0), 0).is_err());
        assert!(Dims::new(0, 1, 1).is_err());
    }

    #[test]
    fn bilinear_examples() {
        let g = dims(2, 1, 0);
        assert_eq!(bilinear_form(&g, 1, 1), Ok(1));
        assert_eq!(bilinear_form(&g, 3, 3), Ok(-1));
        assert_eq!(bilinear_form(&g, 1, 2), Ok(0));
        assert_eq!(bilinear_form(&dims(1, 1, 0), 1, 2), Ok(0));
    }

    #[test]
    fn weight_enumeration_examples() {
        let w: Vec<Vec<i64>> = enumerate_weights(&dims(1, 1, 2)).into_iter().map(|w| w.0).collect();
        assert_eq!(w, vec![vec![2, 0], vec![1, 1], vec![0, 2]]);
        let w: Vec<Vec<i64>> = enumerate_weights(&dims(1, 1, 1)).into_iter().map(|w| w.0).collect();
        assert_eq!(w, vec![vec![1, 0], vec![0, 1]]);
        let w: Vec<Vec<i64>> = enumerate_weights(&dims(2, 1, 1)).into_iter().map(|w| w.0).collect();
        assert_eq!(w, vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
        assert_eq!(enumerate_weights(&dims(2, 2, 0)), vec![Weight::zero(4)]);
    }

    #[test]
    fn order_examples() {
        assert_eq!(weight_leq(&Weight(vec![0, 1]), &Weight(vec![0, 2])), Ok(true));
        assert_eq!(weight_leq(&Weight(vec![1, 0]), &Weight(vec![0, 2])), Ok(false));
        assert_eq!(weight_leq(&Weight(vec![3, 1]), &Weight(vec![3, 1])), Ok(true));
        assert!(weight_leq(&Weight(vec![1]), &Weight(vec![0, 2])).is_err());
    }

    #[test]
    fn positive_root_examples() {
        let r = positive_roots(&dims(2, 1, 0));
        let summary: Vec<(usize, usize, u8)> = r.iter().map(|a| (a.i, a.j, a.parity)).collect();
        assert_eq!(summary, vec![(1, 2, 0), (1, 3, 1), (2, 3, 1)]);
        let r = positive_roots(&dims(1, 1, 0));
        assert_eq!(r.len(), 1);
        assert!(r[0].is_odd());
        let r = positive_roots(&dims(2, 2, 0));
        assert_eq!(r.len(), 6);
        assert_eq!(r.iter().filter(|a| a.is_odd()).count(), 4);
    }

    #[test]
    fn structure_constants() {
        let g = dims(2, 1, 0);
        let a = Root::new(&g, 1, 2).unwrap();
        let b = Root::new(&g, 2, 3).unwrap();
        assert_eq!(a.structure_constant(&b), Some(1));
        // β + α with i = l: -(-1)^{0*1} = -1
        assert_eq!(b.structure_constant(&a), Some(-1));
        let c = Root::new(&g, 3, 1).unwrap();
        let e = Root::new(&g, 1, 3).unwrap();
        assert_eq!(c.try_add(&e), None);
        assert!(c.is_opposite(&e));
        // odd + odd with i = l
        let x = Root::new(&g, 3, 2).unwrap();
        let y = Root::new(&g, 1, 3).unwrap();
        assert_eq!(x.structure_constant(&y), Some(1));
        assert_eq!(e.coroot(3), vec![1, 0, 1]);
        assert_eq!(a.coroot(3), vec![1, -1, 0]);
    }
}
