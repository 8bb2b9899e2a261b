//! Smith normal form over the integers.
//!
//! Elimination runs on arbitrary-precision entries, so intermediate growth
//! never wraps. Narrowing back to `i64` happens only at the public boundary
//! and is checked.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Dense row-major matrix of big integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct BigMat {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<BigInt>,
}

impl BigMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        BigMat {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_i64(rows: usize, cols: usize, entries: &[Vec<i64>]) -> Self {
        let mut m = Self::zeros(rows, cols);
        for (i, row) in entries.iter().enumerate() {
            debug_assert_eq!(row.len(), cols);
            for (j, &v) in row.iter().enumerate() {
                m.data[i * cols + j] = BigInt::from(v);
            }
        }
        m
    }

    /// Builds a matrix whose columns are the given vectors (all of length `rows`).
    pub fn from_columns(rows: usize, columns: &[Vec<BigInt>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            for (i, v) in col.iter().enumerate() {
                m.data[i * m.cols + j] = v.clone();
            }
        }
        m
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    #[cfg(test)]
    pub fn mul(&self, other: &BigMat) -> BigMat {
        assert_eq!(self.cols, other.rows);
        let mut out = BigMat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = BigInt::zero();
                for (k, x) in v.iter().enumerate() {
                    if !x.is_zero() {
                        acc += self.get(i, k) * x;
                    }
                }
                acc
            })
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += q * row[src]
    fn add_row(&mut self, dst: usize, src: usize, q: &BigInt) {
        for j in 0..self.cols {
            let s = self.data[src * self.cols + j].clone();
            if !s.is_zero() {
                self.data[dst * self.cols + j] += q * s;
            }
        }
    }

    /// col[dst] += q * col[src]
    fn add_col(&mut self, dst: usize, src: usize, q: &BigInt) {
        for i in 0..self.rows {
            let s = self.data[i * self.cols + src].clone();
            if !s.is_zero() {
                self.data[i * self.cols + dst] += q * s;
            }
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = std::mem::take(&mut self.data[i * self.cols + j]);
            self.data[i * self.cols + j] = -v;
        }
    }

    fn negate_col(&mut self, j: usize) {
        for i in 0..self.rows {
            let v = std::mem::take(&mut self.data[i * self.cols + j]);
            self.data[i * self.cols + j] = -v;
        }
    }

    pub fn to_i64_rows(&self) -> Result<Vec<Vec<i64>>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| big_to_i64(self.get(i, j))).collect())
            .collect()
    }
}

pub(crate) fn big_to_i64(v: &BigInt) -> Result<i64> {
    v.to_i64()
        .ok_or_else(|| Error::Overflow(format!("value {v} does not fit in 64 bits")))
}

/// Smith form with the transforms and their inverses: `left * A * right = D`.
#[derive(Clone, Debug)]
pub(crate) struct BigSmith {
    pub diagonal: Vec<BigInt>,
    pub rank: usize,
    pub left: BigMat,
    pub left_inv: BigMat,
    pub right: BigMat,
}

struct Work {
    a: BigMat,
    left: BigMat,
    left_inv: BigMat,
    right: BigMat,
}

impl Work {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        self.left.swap_rows(i, j);
        self.left_inv.swap_cols(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        self.right.swap_cols(i, j);
    }

    fn add_row(&mut self, dst: usize, src: usize, q: &BigInt) {
        self.a.add_row(dst, src, q);
        self.left.add_row(dst, src, q);
        self.left_inv.add_col(src, dst, &-q);
    }

    fn add_col(&mut self, dst: usize, src: usize, q: &BigInt) {
        self.a.add_col(dst, src, q);
        self.right.add_col(dst, src, q);
    }

    fn negate_row(&mut self, i: usize) {
        self.a.negate_row(i);
        self.left.negate_row(i);
        self.left_inv.negate_col(i);
    }
}

/// Smallest nonzero |a_ij| with i, j >= t; ties go to the leftmost column,
/// then the topmost row.
fn find_pivot(a: &BigMat, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for j in t..a.cols {
        for i in t..a.rows {
            let v = a.get(i, j);
            if v.is_zero() {
                continue;
            }
            match best {
                Some((bi, bj)) if a.get(bi, bj).abs() <= v.abs() => {}
                _ => best = Some((i, j)),
            }
        }
    }
    best
}

/// Smallest nonzero entry in row t / column t beyond the corner, same tie-break.
fn find_cross_pivot(a: &BigMat, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    let consider = |i: usize, j: usize, best: &mut Option<(usize, usize)>| {
        let v = a.get(i, j);
        if v.is_zero() {
            return;
        }
        match *best {
            Some((bi, bj)) if a.get(bi, bj).abs() <= v.abs() => {}
            _ => *best = Some((i, j)),
        }
    };
    for i in t..a.rows {
        consider(i, t, &mut best);
    }
    for j in t + 1..a.cols {
        consider(t, j, &mut best);
    }
    best
}

pub(crate) fn smith(a: &BigMat) -> BigSmith {
    let (m, n) = (a.rows, a.cols);
    let mut w = Work {
        a: a.clone(),
        left: BigMat::identity(m),
        left_inv: BigMat::identity(m),
        right: BigMat::identity(n),
    };
    let size = m.min(n);
    let mut t = 0;
    while t < size {
        let Some((pi, pj)) = find_pivot(&w.a, t) else {
            break;
        };
        w.swap_rows(t, pi);
        w.swap_cols(t, pj);
        loop {
            let p = w.a.get(t, t).clone();
            for i in t + 1..m {
                if !w.a.get(i, t).is_zero() {
                    let q = w.a.get(i, t) / &p;
                    if !q.is_zero() {
                        w.add_row(i, t, &-q);
                    }
                }
            }
            for j in t + 1..n {
                if !w.a.get(t, j).is_zero() {
                    let q = w.a.get(t, j) / &p;
                    if !q.is_zero() {
                        w.add_col(j, t, &-q);
                    }
                }
            }
            let cross_clear = (t + 1..m).all(|i| w.a.get(i, t).is_zero())
                && (t + 1..n).all(|j| w.a.get(t, j).is_zero());
            if !cross_clear {
                let (ci, cj) = find_cross_pivot(&w.a, t).expect("nonzero cross entry");
                w.swap_rows(t, ci);
                w.swap_cols(t, cj);
                continue;
            }
            // Divisibility: the corner must divide everything below-right of it.
            let p = w.a.get(t, t).clone();
            let offender =
                (t + 1..m).find(|&i| (t + 1..n).any(|j| !(w.a.get(i, j) % &p).is_zero()));
            match offender {
                Some(i) => w.add_row(t, i, &BigInt::one()),
                None => break,
            }
        }
        if w.a.get(t, t).is_negative() {
            w.negate_row(t);
        }
        t += 1;
    }
    let diagonal: Vec<BigInt> = (0..size).map(|k| w.a.get(k, k).clone()).collect();
    let rank = diagonal.iter().filter(|d| !d.is_zero()).count();
    BigSmith {
        diagonal,
        rank,
        left: w.left,
        left_inv: w.left_inv,
        right: w.right,
    }
}

/// Smith normal form of an integer matrix: `left * matrix * right` is diagonal
/// with entries `d_1 | d_2 | ...`, all non-negative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub diagonal: Vec<i64>,
    pub left: Vec<Vec<i64>>,
    pub right: Vec<Vec<i64>>,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.diagonal.iter().filter(|&&d| d != 0).count()
    }
}

/// Computes the Smith normal form of `matrix` (given as rows, `cols` columns).
///
/// Entries of the result that do not fit in `i64` are reported as
/// [`Error::Overflow`].
pub fn snf(matrix: &[Vec<i64>], cols: usize) -> Result<SmithForm> {
    if let Some(bad) = matrix.iter().position(|r| r.len() != cols) {
        return Err(Error::MalformedHom(format!(
            "row {bad} has {} entries, expected {cols}",
            matrix[bad].len()
        )));
    }
    let a = BigMat::from_i64(matrix.len(), cols, matrix);
    let s = smith(&a);
    Ok(SmithForm {
        diagonal: s.diagonal.iter().map(big_to_i64).collect::<Result<_>>()?,
        left: s.left.to_i64_rows()?,
        right: s.right.to_i64_rows()?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(m: &[Vec<i64>], cols: usize) -> SmithForm {
        let s = snf(m, cols).unwrap();
        let a = BigMat::from_i64(m.len(), cols, m);
        let l = BigMat::from_i64(m.len(), m.len(), &s.left);
        let r = BigMat::from_i64(cols, cols, &s.right);
        let d = l.mul(&a).mul(&r);
        for i in 0..d.rows {
            for j in 0..d.cols {
                let want = if i == j {
                    BigInt::from(s.diagonal[i])
                } else {
                    BigInt::zero()
                };
                assert_eq!(d.get(i, j), &want, "entry ({i},{j})");
            }
        }
        s
    }

    #[test]
    fn identity_is_fixed() {
        let id = vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]];
        let s = check(&id, 3);
        assert_eq!(s.diagonal, vec![1, 1, 1]);
        assert_eq!(s.left, id);
        assert_eq!(s.right, id);
    }

    #[test]
    fn coprime_diagonal_merges() {
        let s = check(&[vec![2, 0], vec![0, 3]], 2);
        assert_eq!(s.diagonal, vec![1, 6]);
    }

    #[test]
    fn two_by_two() {
        let s = check(&[vec![2, 4], vec![6, 8]], 2);
        assert_eq!(s.diagonal, vec![2, 4]);
    }

    #[test]
    fn rectangular_and_degenerate() {
        assert_eq!(
            check(&[vec![0, 0, 0], vec![0, 0, 0]], 3).diagonal,
            vec![0, 0]
        );
        assert_eq!(check(&[vec![4, 6, 10]], 3).diagonal, vec![2]);
        assert_eq!(check(&[vec![4], vec![6]], 1).diagonal, vec![2]);
        assert!(snf(&[], 0).unwrap().diagonal.is_empty());
        let empty_rows = snf(&[], 4).unwrap();
        assert!(empty_rows.diagonal.is_empty());
        assert_eq!(empty_rows.right.len(), 4);
    }

    #[test]
    fn negative_entries_give_nonnegative_diagonal() {
        let s = check(&[vec![-3, 0], vec![0, -5]], 2);
        assert_eq!(s.diagonal, vec![1, 15]);
    }

    #[test]
    fn ragged_rows_rejected() {
        assert!(matches!(
            snf(&[vec![1, 2], vec![3]], 2),
            Err(Error::MalformedHom(_))
        ));
    }

    #[test]
    fn overflow_is_reported_not_wrapped() {
        // diag(p, q) for coprime p, q near 2^62 has d_2 = p*q, which overflows i64.
        let p = (1i64 << 62) - 57;
        let q = (1i64 << 62) - 87;
        let err = snf(&[vec![p, 0], vec![0, q]], 2).unwrap_err();
        assert!(matches!(err, Error::Overflow(_)));
    }
}
