use std::fmt;

use serde::{Deserialize, Serialize};

use super::scalar::Scalar;
use super::sparse::SparseVector;
use super::subspace::Subspace;

/// Small dense matrix with exact entries, row-major.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
        }
        write!(f, "]")
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix rows");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| Scalar::from(x)).collect()).collect())
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

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix shapes do not compose");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j) + &(a * b);
                        out.set(i, j, v);
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn scaled(&self, c: &Scalar) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * c).collect(),
        }
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// Image of a subspace of the source coordinates.
    pub fn image_of(&self, s: &Subspace<usize>) -> Subspace<usize> {
        let mut out = Subspace::new();
        for b in s.basis() {
            out.insert(self.apply_sparse(b));
        }
        out
    }

    pub fn apply_sparse(&self, v: &SparseVector<usize>) -> SparseVector<usize> {
        let mut out = SparseVector::zero();
        for (&j, c) in v.iter() {
            for i in 0..self.rows {
                out.add_term(i, self.get(i, j) * c);
            }
        }
        out
    }

    pub fn column_space(&self) -> Subspace<usize> {
        let mut s = Subspace::new();
        for j in 0..self.cols {
            s.insert(dense_to_sparse(&self.column(j)));
        }
        s
    }

    pub fn rank(&self) -> usize {
        self.column_space().dim()
    }

    /// Block copy of `block` with its top-left corner at `(r, c)`.
    pub fn put_block(&mut self, r: usize, c: usize, block: &Matrix) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.set(r + i, c + j, block.get(i, j).clone());
            }
        }
    }

    pub fn block(&self, r: usize, c: usize, rows: usize, cols: usize) -> Matrix {
        let mut out = Matrix::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                out.set(i, j, self.get(r + i, c + j).clone());
            }
        }
        out
    }
}

pub fn dense_to_sparse(v: &[Scalar]) -> SparseVector<usize> {
    SparseVector::from_terms(v.iter().cloned().enumerate())
}

pub fn sparse_to_dense(v: &SparseVector<usize>, n: usize) -> Vec<Scalar> {
    (0..n).map(|i| v.get(&i)).collect()
}

/// Splits a 2×2 matrix into two summands of rank at most one.
///
/// Rule: a matrix of rank ≤ 1 is returned as `(M, 0)`; otherwise the first
/// column becomes `M₁` and the second column becomes `M₂`.
pub fn rank1_decompose_2x2(m: &Matrix) -> (Matrix, Matrix) {
    assert_eq!((m.nrows(), m.ncols()), (2, 2), "expected a 2x2 matrix");
    if m.rank() <= 1 {
        return (m.clone(), Matrix::zeros(2, 2));
    }
    let mut m1 = Matrix::zeros(2, 2);
    let mut m2 = Matrix::zeros(2, 2);
    for i in 0..2 {
        m1.set(i, 0, m.get(i, 0).clone());
        m2.set(i, 1, m.get(i, 1).clone());
    }
    (m1, m2)
}

/// Writes a matrix of rank ≤ 1 as `u vᵀ`. Returns `None` for rank ≥ 2.
pub fn outer_factor(m: &Matrix) -> Option<(Vec<Scalar>, Vec<Scalar>)> {
    match m.rank() {
        0 => Some((vec![Scalar::zero(); m.nrows()], vec![Scalar::zero(); m.ncols()])),
        1 => {
            let (pi, pj) = (0..m.nrows())
                .flat_map(|i| (0..m.ncols()).map(move |j| (i, j)))
                .find(|&(i, j)| !m.get(i, j).is_zero())?;
            let pivot = m.get(pi, pj).clone();
            let u: Vec<Scalar> = m.column(pj);
            let v: Vec<Scalar> = m.row(pi).iter().map(|x| x / &pivot).collect();
            Some((u, v))
        }
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multiply_and_rank() {
        let a = Matrix::from_i64(&[&[1, 2], &[3, 4]]);
        let b = Matrix::identity(2);
        assert_eq!(a.mul(&b), a);
        assert_eq!(a.rank(), 2);
        assert_eq!(Matrix::from_i64(&[&[1, 2], &[2, 4]]).rank(), 1);
        assert_eq!(a.transpose().get(0, 1), &Scalar::from(3));
    }

    #[test]
    fn rank_one_split() {
        let z = Matrix::zeros(2, 2);
        assert_eq!(rank1_decompose_2x2(&z), (z.clone(), z.clone()));
        let r1 = Matrix::from_i64(&[&[1, 2], &[2, 4]]);
        assert_eq!(rank1_decompose_2x2(&r1), (r1.clone(), z.clone()));
        let id = Matrix::identity(2);
        let (m1, m2) = rank1_decompose_2x2(&id);
        assert_eq!(m1.rank(), 1);
        assert_eq!(m2.rank(), 1);
        assert_eq!(m1.add(&m2), id);
    }

    #[test]
    fn outer_factoring() {
        let r1 = Matrix::from_i64(&[&[0, 2], &[0, 6]]);
        let (u, v) = outer_factor(&r1).unwrap();
        for (i, ui) in u.iter().enumerate() {
            for (j, vj) in v.iter().enumerate() {
                assert_eq!(&(ui * vj), r1.get(i, j));
            }
        }
        assert!(outer_factor(&Matrix::identity(2)).is_none());
    }
}
