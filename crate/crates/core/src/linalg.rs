//! Exact rank and linear solves.

use std::collections::BTreeMap;

use crate::scalar::{ExactDomain, Scalar};

/// Rank of a dense matrix by fraction-free (Bareiss) elimination.
///
/// Every intermediate entry is a minor of the input, so each division by the
/// previous pivot is exact in the domain.
pub fn bareiss_rank<T: ExactDomain>(mut rows: Vec<Vec<T>>) -> usize {
    let n_rows = rows.len();
    if n_rows == 0 {
        return 0;
    }
    let n_cols = rows[0].len();
    let mut prev = T::one();
    let mut rank = 0;
    for col in 0..n_cols {
        if rank == n_rows {
            break;
        }
        let Some(p) = (rank..n_rows).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let (top, rest) = rows.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        let pivot = pivot_row[col].clone();
        for row in rest.iter_mut() {
            let factor = row[col].clone();
            for j in col + 1..n_cols {
                let t = pivot.mul(&row[j]).sub(&factor.mul(&pivot_row[j]));
                row[j] = if t.is_zero() { t } else { t.div_exact(&prev) };
            }
            row[col] = T::zero();
        }
        prev = pivot;
        rank += 1;
    }
    rank
}

/// Densifies sparse vectors (given as `(index, value)` lists) over the union of
/// their supports, dropping coordinates that are zero in every vector.
pub fn densify<T: ExactDomain>(vectors: &[Vec<(usize, T)>]) -> Vec<Vec<T>> {
    let mut support: Vec<usize> = vectors.iter().flat_map(|v| v.iter().map(|(i, _)| *i)).collect();
    support.sort_unstable();
    support.dedup();
    let pos: BTreeMap<usize, usize> = support.iter().enumerate().map(|(k, i)| (*i, k)).collect();
    vectors
        .iter()
        .map(|v| {
            let mut row = vec![T::zero(); support.len()];
            for (i, x) in v {
                row[pos[i]] = x.clone();
            }
            row
        })
        .collect()
}

/// Incremental row echelon form over a field, with sparse rows.
///
/// Rows are kept fully reduced against each other's pivots (reduced echelon form),
/// with pivot entries normalized to one.
#[derive(Clone, Debug)]
pub struct SparseEchelon<F> {
    pivots: BTreeMap<usize, BTreeMap<usize, F>>,
}

impl<F: Scalar> Default for SparseEchelon<F> {
    fn default() -> Self {
        Self { pivots: BTreeMap::new() }
    }
}

impl<F: Scalar> SparseEchelon<F> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduces `row` against the current pivots.
    pub fn reduce(&self, mut row: BTreeMap<usize, F>) -> BTreeMap<usize, F> {
        loop {
            let target = row
                .iter()
                .find(|(c, _)| self.pivots.contains_key(c))
                .map(|(c, v)| (*c, v.clone()));
            let Some((c, factor)) = target else {
                return row;
            };
            for (j, v) in &self.pivots[&c] {
                let updated = row.get(j).cloned().unwrap_or_else(F::zero).sub(&factor.mul(v));
                if updated.is_zero() {
                    row.remove(j);
                } else {
                    row.insert(*j, updated);
                }
            }
        }
    }

    /// Inserts a row; returns `true` if it was independent of the existing rows.
    pub fn insert(&mut self, row: BTreeMap<usize, F>) -> bool {
        let mut row = self.reduce(row);
        let Some((&pc, pv)) = row.iter().next() else {
            return false;
        };
        let inv = pv.inv().expect("nonzero pivot is invertible");
        for v in row.values_mut() {
            *v = v.mul(&inv);
        }
        // keep reduced form: eliminate the new pivot column from older rows
        for other in self.pivots.values_mut() {
            if let Some(f) = other.get(&pc).cloned() {
                for (j, v) in &row {
                    let updated = other.get(j).cloned().unwrap_or_else(F::zero).sub(&f.mul(v));
                    if updated.is_zero() {
                        other.remove(j);
                    } else {
                        other.insert(*j, updated);
                    }
                }
            }
        }
        self.pivots.insert(pc, row);
        true
    }

    pub fn pivot_rows(&self) -> impl Iterator<Item = (usize, &BTreeMap<usize, F>)> + '_ {
        self.pivots.iter().map(|(c, r)| (*c, r))
    }
}

/// Rank of a set of sparse vectors over a field.
pub fn sparse_rank<F: Scalar>(vectors: impl IntoIterator<Item = BTreeMap<usize, F>>) -> usize {
    let mut ech = SparseEchelon::new();
    for v in vectors {
        ech.insert(v);
    }
    ech.rank()
}

/// Solves `sum_k x_k * columns[k] = target` over a field.
///
/// Returns `None` if the system is inconsistent. Free variables are set to zero,
/// so the answer is the unique solution whenever the columns are independent.
pub fn solve_in_span<F: Scalar>(columns: &[Vec<(usize, F)>], target: &[(usize, F)]) -> Option<Vec<F>> {
    let k = columns.len();
    // equations indexed by coordinate; unknowns 0..k, right-hand side at column k
    let mut eqs: BTreeMap<usize, BTreeMap<usize, F>> = BTreeMap::new();
    for (j, col) in columns.iter().enumerate() {
        for (i, v) in col {
            eqs.entry(*i).or_default().insert(j, v.clone());
        }
    }
    for (i, v) in target {
        eqs.entry(*i).or_default().insert(k, v.clone());
    }
    let mut ech = SparseEchelon::new();
    for (_, row) in eqs {
        ech.insert(row);
    }
    if ech.pivot_rows().any(|(c, _)| c == k) {
        return None;
    }
    let mut x = vec![F::zero(); k];
    for (c, row) in ech.pivot_rows() {
        x[c] = row.get(&k).cloned().unwrap_or_else(F::zero);
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qfield::{LaurentPoly, Rational};
    use num_bigint::BigInt;

    fn bi(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|x| BigInt::from(*x)).collect()
    }

    fn rat(v: i64) -> Rational {
        Rational::from_integer(v.into())
    }

    #[test]
    fn bareiss_integer_ranks() {
        assert_eq!(bareiss_rank(vec![bi(&[1, 2, 3]), bi(&[2, 4, 6]), bi(&[1, 0, 1])]), 2);
        assert_eq!(bareiss_rank(vec![bi(&[0, 0]), bi(&[0, 0])]), 0);
        assert_eq!(bareiss_rank(vec![bi(&[0, 2, 1]), bi(&[3, 1, 0]), bi(&[1, 1, 1])]), 3);
        // needs a skipped column
        assert_eq!(bareiss_rank(vec![bi(&[0, 1, 2]), bi(&[0, 2, 5]), bi(&[0, 3, 7])]), 2);
    }

    #[test]
    fn bareiss_over_laurent_polynomials() {
        let q = LaurentPoly::q();
        let one = LaurentPoly::one();
        let qq = &q * &q;
        // [[1, q], [q, q^2]] is singular; [[1, q], [q, 1]] is not
        assert_eq!(bareiss_rank(vec![vec![one.clone(), q.clone()], vec![q.clone(), qq.clone()]]), 1);
        assert_eq!(bareiss_rank(vec![vec![one.clone(), q.clone()], vec![q.clone(), one.clone()]]), 2);
    }

    #[test]
    fn echelon_and_solve() {
        let v = |e: &[(usize, i64)]| -> BTreeMap<usize, Rational> { e.iter().map(|(i, x)| (*i, rat(*x))).collect() };
        assert_eq!(sparse_rank([v(&[(0, 1), (1, 1)]), v(&[(1, 1), (2, 1)]), v(&[(0, 1), (2, -1)])]), 2);
        let cols = vec![vec![(0, rat(1)), (1, rat(1))], vec![(1, rat(1)), (2, rat(1))]];
        let x = solve_in_span(&cols, &[(0, rat(2)), (1, rat(5)), (2, rat(3))]).unwrap();
        assert_eq!(x, vec![rat(2), rat(3)]);
        assert!(solve_in_span(&cols, &[(0, rat(1))]).is_none());
    }
}
