//! Dense exact linear algebra over the [`Scalar`] field: rank, nullspace,
//! column space, inverses and linear solving. Everything is deterministic
//! (first-nonzero pivoting) and allocation-heavy but exact.

use crate::error::Error;
use crate::scalars::Scalar;
use crate::Result;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Mat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![Scalar::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zero(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::ShapeMismatch("ragged rows".into()));
        }
        Ok(Mat { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut m = Mat::zero(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    /// Rank-1 matrix e⊗x (column e times row x).
    pub fn outer(e: &[Scalar], x: &[Scalar]) -> Self {
        Mat::from_fn(e.len(), x.len(), |i, j| e[i].mul(&x[j]))
    }

    pub fn unit(n: usize, i: usize, j: usize) -> Self {
        let mut m = Mat::zero(n, n);
        m.set(i, j, Scalar::one());
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
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

    pub fn col(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn rows_vec(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Mat::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a.add(b)).collect();
        Mat { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a.sub(b)).collect();
        Mat { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a.mul(c)).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch in matrix product");
        let mut out = Mat::zero(self.rows, other.cols);
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
                    let v = out.get(i, j).add(&a.mul(b));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = Scalar::zero();
                for j in 0..self.cols {
                    let a = self.get(i, j);
                    if !a.is_zero() && !v[j].is_zero() {
                        acc = acc.add(&a.mul(&v[j]));
                    }
                }
                acc
            })
            .collect()
    }

    pub fn trace(&self) -> Scalar {
        let mut acc = Scalar::zero();
        for i in 0..self.rows.min(self.cols) {
            acc = acc.add(self.get(i, i));
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|c| c.is_zero())
    }

    /// Row-reduce in place; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let pivot_row = (r..self.rows).find(|&i| !self.get(i, c).is_zero());
            let Some(p) = pivot_row else { continue };
            if p != r {
                for j in 0..self.cols {
                    self.data.swap(p * self.cols + j, r * self.cols + j);
                }
            }
            let inv = self.get(r, c).inv().expect("pivot nonzero");
            for j in c..self.cols {
                let v = self.get(r, j).mul(&inv);
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                if i == r || self.get(i, c).is_zero() {
                    continue;
                }
                let f = self.get(i, c).clone();
                for j in c..self.cols {
                    let v = self.get(i, j).sub(&f.mul(self.get(r, j)));
                    self.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }

    /// Basis of the right nullspace, one vector per free column.
    pub fn nullspace(&self) -> Vec<Vec<Scalar>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_set.contains(&free) {
                continue;
            }
            let mut v = vec![Scalar::zero(); self.cols];
            v[free] = Scalar::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = m.get(r, free).neg();
            }
            basis.push(v);
        }
        basis
    }

    pub fn nullity(&self) -> usize {
        self.cols - self.rank()
    }

    /// Indices of a maximal independent set of columns.
    pub fn pivot_columns(&self) -> Vec<usize> {
        let mut m = self.clone();
        m.rref()
    }

    /// A matrix whose columns are a basis of the column space.
    pub fn col_space_basis(&self) -> Mat {
        let pivots = self.pivot_columns();
        Mat::from_fn(self.rows, pivots.len(), |i, j| self.get(i, pivots[j]).clone())
    }

    pub fn inverse(&self) -> Result<Mat> {
        if self.rows != self.cols {
            return Err(Error::NonSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        let mut aug = Mat::zero(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, Scalar::one());
        }
        let pivots = aug.rref();
        if pivots.len() < n || pivots.iter().enumerate().any(|(k, &c)| c != k) {
            return Err(Error::SingularMatrix);
        }
        Ok(Mat::from_fn(n, n, |i, j| aug.get(i, n + j).clone()))
    }

    /// One exact solution of `self · x = b`, if the system is consistent.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(self.rows, b.len());
        let mut aug = Mat::zero(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, b[i].clone());
        }
        let pivots = aug.rref();
        if pivots.contains(&self.cols) {
            return None;
        }
        let mut x = vec![Scalar::zero(); self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = aug.get(r, self.cols).clone();
        }
        Some(x)
    }

    /// Express each column of `m` in the column basis `self` (full column
    /// rank assumed): returns `c` with `self · c = m`.
    pub fn express_in_basis(&self, m: &Mat) -> Result<Mat> {
        let mut out = Mat::zero(self.cols, m.ncols());
        for j in 0..m.ncols() {
            let col = m.col(j);
            let sol = self
                .solve(&col)
                .ok_or_else(|| Error::ShapeMismatch("vector not in column span".into()))?;
            for i in 0..self.cols {
                out.set(i, j, sol[i].clone());
            }
        }
        Ok(out)
    }

    pub fn conj(&self) -> Mat {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(|c| c.conj()).collect() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> Mat {
        Mat::from_rows(rows.iter().map(|r| r.iter().map(|&v| Scalar::from_i64(v)).collect()).collect()).unwrap()
    }

    #[test]
    fn rank_and_nullspace() {
        let a = m(&[&[1, 1, 1], &[1, 1, 1], &[1, 1, 1]]);
        assert_eq!(a.rank(), 1);
        let ns = a.nullspace();
        assert_eq!(ns.len(), 2);
        for v in ns {
            assert!(a.mul_vec(&v).iter().all(|c| c.is_zero()));
        }
    }

    #[test]
    fn inverse_roundtrip() {
        let a = m(&[&[2, 1], &[7, 4]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), Mat::identity(2));
        let sing = m(&[&[1, 2], &[2, 4]]);
        assert!(sing.inverse().is_err());
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let a = m(&[&[1, 2], &[2, 4]]);
        assert!(a.solve(&[Scalar::from_i64(1), Scalar::from_i64(2)]).is_some());
        assert!(a.solve(&[Scalar::from_i64(1), Scalar::from_i64(3)]).is_none());
    }

    #[test]
    fn column_space() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[0, 0, 1]]);
        let basis = a.col_space_basis();
        assert_eq!(basis.ncols(), 2);
        let c = basis.express_in_basis(&a).unwrap();
        assert_eq!(basis.mul(&c), a);
    }
}
