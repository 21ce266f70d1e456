//! Dense matrices over a [`Field`] with fraction-preserving Gaussian elimination.
//!
//! Pivoting always takes the first nonzero entry in row-major order of the
//! remaining submatrix, so every result is deterministic.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::field::{Field, Scalar};

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Matrix {
        Matrix { field, rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_i64(field: Field, rows: usize, cols: usize, entries: &[i64]) -> Matrix {
        assert_eq!(entries.len(), rows * cols, "entry count does not match shape");
        Matrix { field, rows, cols, data: entries.iter().map(|&v| field.from_i64(v)).collect() }
    }

    pub fn from_rows(field: Field, rows: &[Vec<i64>]) -> Matrix {
        let cols = rows.first().map_or(0, Vec::len);
        let flat: Vec<i64> = rows.iter().flat_map(|r| r.iter().copied()).collect();
        Matrix::from_i64(field, rows.len(), cols, &flat)
    }

    /// Matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(field: Field, rows: usize, columns: &[Vec<Scalar>]) -> Matrix {
        let mut m = Matrix::zeros(field, rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (i, v) in col.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Scalar>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn scaled(&self, s: &Scalar) -> Matrix {
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|v| v * s).collect(),
        }
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        let mut out = Matrix::zeros(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let v = out.get(i, j) + &(a * b);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len(), "shape mismatch in matrix-vector product");
        (0..self.rows)
            .map(|i| {
                let mut acc = self.field.zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    /// Submatrix picking the given rows and columns, in the given order.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(self.field, rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                out.set(a, b, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows);
        let mut out = Matrix::zeros(self.field, self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).clone());
            }
            for j in 0..other.cols {
                out.set(i, self.cols + j, other.get(i, j).clone());
            }
        }
        out
    }

    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix { field: self.field, rows: self.rows + other.rows, cols: self.cols, data }
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        (m, pivots)
    }

    fn rref_in_place(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self.get(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..self.cols {
                    self.data.swap(p * self.cols + j, r * self.cols + j);
                }
            }
            let inv = self.get(r, c).inv();
            if !inv.is_one() {
                for j in c..self.cols {
                    let v = self.get(r, j) * &inv;
                    self.set(r, j, v);
                }
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let f = self.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..self.cols {
                    let rv = self.get(r, j);
                    if rv.is_zero() {
                        continue;
                    }
                    let v = self.get(i, j) - &(&f * rv);
                    self.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    /// Rank by forward elimination only.
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, r * m.cols + j);
                }
            }
            let inv = m.get(r, c).inv();
            for i in (r + 1)..m.rows {
                let f = m.get(i, c) * &inv;
                if f.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let rv = m.get(r, j);
                    if rv.is_zero() {
                        continue;
                    }
                    let v = m.get(i, j) - &(&f * rv);
                    m.set(i, j, v);
                }
            }
            r += 1;
        }
        r
    }

    pub fn nullity(&self) -> usize {
        self.cols - self.rank()
    }

    /// Columns spanning the kernel; `self * K == 0` and `K` has
    /// `cols - rank` columns.
    pub fn kernel_basis(&self) -> Matrix {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut k = Matrix::zeros(self.field, self.cols, free.len());
        for (idx, &f) in free.iter().enumerate() {
            k.set(f, idx, self.field.one());
            for (row, &p) in pivots.iter().enumerate() {
                let v = r.get(row, f);
                if !v.is_zero() {
                    k.set(p, idx, -v);
                }
            }
        }
        k
    }

    /// The pivot columns of `self`, which form a basis of the column space.
    pub fn image_basis(&self) -> Matrix {
        let (_, pivots) = self.rref();
        let rows: Vec<usize> = (0..self.rows).collect();
        self.select(&rows, &pivots)
    }

    /// Some `x` with `self * x == b`, or `None` if the system is inconsistent.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(b.len(), self.rows);
        let bm = Matrix::from_columns(self.field, self.rows, &[b.to_vec()]);
        let (r, pivots) = self.hstack(&bm).rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![self.field.zero(); self.cols];
        for (row, &p) in pivots.iter().enumerate() {
            x[p] = r.get(row, self.cols).clone();
        }
        Some(x)
    }

    /// Dimension of the cokernel, `rows - rank`.
    pub fn cokernel_dim(&self) -> usize {
        self.rows - self.rank()
    }

    /// Indices of columns of `extra` that extend the column space of `base`
    /// greedily, left to right.
    pub fn extending_columns(base: &Matrix, extra: &Matrix) -> Vec<usize> {
        let (_, pivots) = base.hstack(extra).rref();
        pivots.into_iter().filter(|&p| p >= base.cols).map(|p| p - base.cols).collect()
    }
}

/// Rank of a family of sparse vectors, each a list of `(coordinate, value)`
/// pairs. Meant for boundary matrices that are mostly zero.
pub fn sparse_rank(vectors: Vec<Vec<(usize, Scalar)>>) -> usize {
    let mut pivots: HashMap<usize, BTreeMap<usize, Scalar>> = HashMap::new();
    for v in vectors {
        let mut row: BTreeMap<usize, Scalar> = BTreeMap::new();
        for (c, x) in v {
            if x.is_zero() {
                continue;
            }
            match row.remove(&c) {
                Some(y) => {
                    let z = &y + &x;
                    if !z.is_zero() {
                        row.insert(c, z);
                    }
                }
                None => {
                    row.insert(c, x);
                }
            }
        }
        let mut from = 0;
        // elimination by a pivot row only creates entries right of its lead
        while let Some(c) = row.range(from..).map(|(&c, _)| c).find(|c| pivots.contains_key(c)) {
            let f = row.remove(&c).expect("present");
            for (&k, pv) in pivots[&c].range(c + 1..) {
                let cur = row.remove(&k);
                let z = match cur {
                    Some(y) => &y - &(&f * pv),
                    None => -(&f * pv),
                };
                if !z.is_zero() {
                    row.insert(k, z);
                }
            }
            from = c + 1;
        }
        if let Some((&lead, lv)) = row.iter().next() {
            let inv = lv.inv();
            let normalized = row.into_iter().map(|(k, x)| (k, &x * &inv)).collect();
            pivots.insert(lead, normalized);
        }
    }
    pivots.len()
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {}", self.rows, self.cols, self.field)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|v| v.to_string()).collect();
            writeln!(f, "  [{}]", row.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: Field = Field::Rational;

    fn square_boundary() -> Matrix {
        // edges 12, 23, 34, 14 -> vertices 1..4, columns are edges
        Matrix::from_rows(
            Q,
            &[vec![-1, 0, 0, -1], vec![1, -1, 0, 0], vec![0, 1, -1, 0], vec![0, 0, 1, 1]],
        )
    }

    #[test]
    fn sparse_rank_agrees_with_dense() {
        let sparse = |m: &Matrix| -> Vec<Vec<(usize, Scalar)>> {
            m.columns().into_iter().map(|c| c.into_iter().enumerate().collect()).collect()
        };
        let b = square_boundary();
        assert_eq!(sparse_rank(sparse(&b)), 3);
        let m = Matrix::from_rows(Field::Prime(3), &[vec![1, 2, 0], vec![2, 1, 0], vec![0, 0, 3]]);
        assert_eq!(sparse_rank(sparse(&m)), m.rank());
        assert_eq!(sparse_rank(vec![vec![(0, Q.one()), (0, Q.from_i64(-1))]]), 0);
    }

    #[test]
    fn rank_basics() {
        assert_eq!(Matrix::zeros(Q, 3, 3).rank(), 0);
        assert_eq!(Matrix::identity(Q, 4).rank(), 4);
        assert_eq!(square_boundary().rank(), 3);
    }

    #[test]
    fn kernel_basics() {
        assert_eq!(Matrix::identity(Q, 3).kernel_basis().cols(), 0);
        let k = Matrix::from_rows(Q, &[vec![1, 1]]).kernel_basis();
        assert_eq!(k.cols(), 1);
        assert_eq!(k.column(0), vec![Q.from_i64(-1), Q.from_i64(1)]);
        let k = square_boundary().kernel_basis();
        assert_eq!(k.cols(), 1);
        assert!(k.column(0).iter().all(Scalar::is_unit_sign));
        assert!(square_boundary().mul(&k).is_zero());
    }

    #[test]
    fn image_and_solve() {
        // hand row reduction: third column = first + second
        let m = Matrix::from_rows(Q, &[vec![1, 0, 1], vec![0, 1, 1], vec![1, 1, 2]]);
        let im = m.image_basis();
        assert_eq!(im.cols(), 2);
        assert_eq!(im.column(0), m.column(0));
        assert_eq!(im.column(1), m.column(1));
        let b = vec![Q.from_i64(2), Q.from_i64(3), Q.from_i64(5)];
        let x = m.solve(&b).unwrap();
        assert_eq!(m.mul_vec(&x), b);
        assert!(m.solve(&[Q.from_i64(1), Q.from_i64(0), Q.from_i64(0)]).is_none());
        assert_eq!(Matrix::zeros(Q, 3, 3).image_basis().cols(), 0);
        assert_eq!(Matrix::identity(Q, 3).solve(&b).unwrap(), b);
        assert_eq!(m.cokernel_dim(), 1);
        assert_eq!(Matrix::identity(Q, 3).cokernel_dim(), 0);
        assert_eq!(Matrix::zeros(Q, 3, 2).cokernel_dim(), 3);
    }

    #[test]
    fn characteristic_matters() {
        // determinant 2: full rank over Q, rank 1 over GF(2)
        let rows = [vec![1, 1], vec![1, -1]];
        assert_eq!(Matrix::from_rows(Q, &rows).rank(), 2);
        assert_eq!(Matrix::from_rows(Field::Prime(2), &rows).rank(), 1);
    }

    #[test]
    fn extending_columns_skips_span() {
        let base = Matrix::from_rows(Q, &[vec![1], vec![0]]);
        let extra = Matrix::from_rows(Q, &[vec![2, 0], vec![0, 3]]);
        assert_eq!(Matrix::extending_columns(&base, &extra), vec![1]);
    }
}
