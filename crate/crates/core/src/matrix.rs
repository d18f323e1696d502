//! Sparse exact matrices.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::scalar::Scalar;

/// Row-major sparse matrix. Zero entries are never stored, so structural
/// equality coincides with matrix equality.
#[derive(Clone, PartialEq, Debug)]
pub struct SparseMatrix<T> {
    n_rows: usize,
    n_cols: usize,
    rows: Vec<BTreeMap<usize, T>>,
}

/// A position where two matrices disagree.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EntryMismatch {
    pub row: usize,
    pub col: usize,
    pub left: String,
    pub right: String,
}

impl<T: Scalar> SparseMatrix<T> {
    pub fn zeros(n_rows: usize, n_cols: usize) -> Self {
        Self {
            n_rows,
            n_cols,
            rows: vec![BTreeMap::new(); n_rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, T::one())
    }

    pub fn scalar(n: usize, c: T) -> Self {
        Self::from_diagonal((0..n).map(|_| c.clone()))
    }

    pub fn from_diagonal<I: IntoIterator<Item = T>>(diag: I) -> Self {
        let diag: Vec<T> = diag.into_iter().collect();
        let n = diag.len();
        let mut m = Self::zeros(n, n);
        for (i, c) in diag.into_iter().enumerate() {
            m.set(i, i, c);
        }
        m
    }

    pub fn from_entries<I>(n_rows: usize, n_cols: usize, entries: I) -> Self
    where
        I: IntoIterator<Item = (usize, usize, T)>,
    {
        let mut m = Self::zeros(n_rows, n_cols);
        for (r, c, v) in entries {
            m.add_to(r, c, &v);
        }
        m
    }

    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    pub fn is_square(&self) -> bool {
        self.n_rows == self.n_cols
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(BTreeMap::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(BTreeMap::is_empty)
    }

    pub fn get(&self, r: usize, c: usize) -> T {
        self.rows[r].get(&c).cloned().unwrap_or_else(T::zero)
    }

    pub fn row(&self, r: usize) -> impl Iterator<Item = (usize, &T)> + '_ {
        self.rows[r].iter().map(|(c, v)| (*c, v))
    }

    pub fn set(&mut self, r: usize, c: usize, v: T) {
        assert!(r < self.n_rows && c < self.n_cols, "index out of bounds");
        if v.is_zero() {
            self.rows[r].remove(&c);
        } else {
            self.rows[r].insert(c, v);
        }
    }

    pub fn add_to(&mut self, r: usize, c: usize, v: &T) {
        if v.is_zero() {
            return;
        }
        let row = &mut self.rows[r];
        match row.get_mut(&c) {
            Some(x) => {
                let s = x.add(v);
                if s.is_zero() {
                    row.remove(&c);
                } else {
                    *x = s;
                }
            }
            None => {
                row.insert(c, v.clone());
            }
        }
    }

    /// Nonzero entries in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &T)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().map(move |(c, v)| (r, *c, v)))
    }

    /// The diagonal, if every off-diagonal entry is zero.
    pub fn diagonal(&self) -> Option<Vec<T>> {
        if !self.is_square() {
            return None;
        }
        let mut d = Vec::with_capacity(self.n_rows);
        for (r, row) in self.rows.iter().enumerate() {
            if row.keys().any(|c| *c != r) {
                return None;
            }
            d.push(row.get(&r).cloned().unwrap_or_else(T::zero));
        }
        Some(d)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        self.assert_same_shape(rhs);
        let mut out = self.clone();
        for (r, c, v) in rhs.entries() {
            out.add_to(r, c, v);
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.assert_same_shape(rhs);
        let mut out = self.clone();
        for (r, c, v) in rhs.entries() {
            out.add_to(r, c, &v.neg());
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.map(|v| v.neg())
    }

    pub fn scale(&self, c: &T) -> Self {
        if c.is_zero() {
            return Self::zeros(self.n_rows, self.n_cols);
        }
        if c.is_one() {
            return self.clone();
        }
        self.map(|v| v.mul(c))
    }

    /// `self + c * I`.
    pub fn add_scalar(&self, c: &T) -> Self {
        assert!(self.is_square());
        let mut out = self.clone();
        for i in 0..self.n_rows {
            out.add_to(i, i, c);
        }
        out
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.n_cols, rhs.n_rows, "dimension mismatch in product");
        let mut out = Self::zeros(self.n_rows, rhs.n_cols);
        for (r, row) in self.rows.iter().enumerate() {
            let acc = &mut out.rows[r];
            for (k, a) in row {
                for (c, b) in &rhs.rows[*k] {
                    let p = a.mul(b);
                    match acc.get_mut(c) {
                        Some(x) => *x = x.add(&p),
                        None => {
                            acc.insert(*c, p);
                        }
                    }
                }
            }
            acc.retain(|_, v| !v.is_zero());
        }
        out
    }

    /// Left-to-right product of a sequence of square matrices of size `n`.
    pub fn product<'a, I>(n: usize, factors: I) -> Self
    where
        I: IntoIterator<Item = &'a Self>,
    {
        let mut it = factors.into_iter();
        match it.next() {
            None => Self::identity(n),
            Some(first) => it.fold(first.clone(), |acc, m| acc.mul(m)),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::identity(self.n_rows);
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.n_cols, self.n_rows);
        for (r, c, v) in self.entries() {
            out.rows[c].insert(r, v.clone());
        }
        out
    }

    /// Elementwise map; results that are zero are dropped.
    pub fn map<U: Scalar, F: Fn(&T) -> U>(&self, f: F) -> SparseMatrix<U> {
        let mut out = SparseMatrix::zeros(self.n_rows, self.n_cols);
        for (r, c, v) in self.entries() {
            out.set(r, c, f(v));
        }
        out
    }

    pub fn try_map<U: Scalar, E, F: Fn(&T) -> Result<U, E>>(&self, f: F) -> Result<SparseMatrix<U>, E> {
        let mut out = SparseMatrix::zeros(self.n_rows, self.n_cols);
        for (r, c, v) in self.entries() {
            out.set(r, c, f(v)?);
        }
        Ok(out)
    }

    /// Row-major flattening as `(r * n_cols + c, value)` pairs.
    pub fn flatten(&self) -> Vec<(usize, T)> {
        self.entries()
            .map(|(r, c, v)| (r * self.n_cols + c, v.clone()))
            .collect()
    }

    /// First entry (row-major) where `self` and `other` differ.
    pub fn first_mismatch(&self, other: &Self) -> Option<EntryMismatch> {
        self.assert_same_shape(other);
        for r in 0..self.n_rows {
            let a = &self.rows[r];
            let b = &other.rows[r];
            if a == b {
                continue;
            }
            let mut cols: Vec<usize> = a.keys().chain(b.keys()).copied().collect();
            cols.sort_unstable();
            cols.dedup();
            for c in cols {
                let x = self.get(r, c);
                let y = other.get(r, c);
                if x != y {
                    return Some(EntryMismatch {
                        row: r,
                        col: c,
                        left: x.to_string(),
                        right: y.to_string(),
                    });
                }
            }
        }
        None
    }

    fn assert_same_shape(&self, rhs: &Self) {
        assert_eq!(
            (self.n_rows, self.n_cols),
            (rhs.n_rows, rhs.n_cols),
            "matrix shapes differ"
        );
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qfield::Rational;

    fn r(v: i64) -> Rational {
        Rational::from_integer(v.into())
    }

    #[test]
    fn product_and_cancellation() {
        let a = SparseMatrix::from_entries(2, 2, [(0, 1, r(1))]);
        let b = SparseMatrix::from_entries(2, 2, [(1, 0, r(1))]);
        let ab = a.mul(&b);
        assert_eq!(ab, SparseMatrix::from_entries(2, 2, [(0, 0, r(1))]));
        assert!(a.mul(&a).is_zero());
        let s = ab.add(&b.mul(&a));
        assert_eq!(s, SparseMatrix::identity(2));
        assert!(s.sub(&SparseMatrix::identity(2)).is_zero());
        assert_eq!(s.nnz(), 2);
    }

    #[test]
    fn mismatch_reports_first_position() {
        let a = SparseMatrix::from_diagonal([r(1), r(2), r(3)]);
        let b = SparseMatrix::from_diagonal([r(1), r(5), r(7)]);
        let w = a.first_mismatch(&b).unwrap();
        assert_eq!((w.row, w.col), (1, 1));
        assert_eq!(w.left, "2");
        assert!(a.first_mismatch(&a).is_none());
        assert_eq!(a.diagonal().unwrap()[2], r(3));
    }
}
