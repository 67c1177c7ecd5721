//! Dense exact matrices over Q(ζ₂₄): elimination, nullspaces, and
//! Gram–Schmidt over the real subfield.
//!
//! Pivoting is deterministic (first nonzero entry in column order); exact
//! arithmetic needs no numerical pivoting, so results are reproducible
//! bit for bit.

use super::cyclotomic::{sqrt_real, CycNum, ExactError};
use std::fmt;
use std::ops::{Index, IndexMut};

#[derive(Clone, PartialEq, Eq)]
pub struct CycMatrix {
    rows: usize,
    cols: usize,
    data: Vec<CycNum>,
}

impl CycMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        CycMatrix {
            rows,
            cols,
            data: vec![CycNum::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = CycNum::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> CycNum) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<CycNum>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        CycMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[CycNum] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul(&self, rhs: &CycMatrix) -> CycMatrix {
        assert_eq!(self.cols, rhs.rows, "matrix product dimension mismatch");
        let mut out = CycMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = &self[(i, l)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(l, j)];
                    if b.is_zero() {
                        continue;
                    }
                    let t = a * b;
                    out[(i, j)] += &t;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[CycNum]) -> Vec<CycNum> {
        assert_eq!(self.cols, v.len(), "matrix-vector dimension mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = CycNum::zero();
                for (j, x) in v.iter().enumerate() {
                    if x.is_zero() {
                        continue;
                    }
                    let a = &self[(i, j)];
                    if a.is_zero() {
                        continue;
                    }
                    acc += &(a * x);
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, rhs: &CycMatrix) -> CycMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(rhs.data.iter()) {
            *a += b;
        }
        out
    }

    pub fn sub(&self, rhs: &CycMatrix) -> CycMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(rhs.data.iter()) {
            *a -= b;
        }
        out
    }

    pub fn neg(&self) -> CycMatrix {
        let mut out = self.clone();
        for a in out.data.iter_mut() {
            *a = -a.clone();
        }
        out
    }

    pub fn scale(&self, s: &CycNum) -> CycMatrix {
        let mut out = self.clone();
        for a in out.data.iter_mut() {
            *a = &*a * s;
        }
        out
    }

    pub fn transpose(&self) -> CycMatrix {
        CycMatrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    /// Conjugate transpose; an involution, with (AB)* = B*A*.
    pub fn conj_transpose(&self) -> CycMatrix {
        CycMatrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn trace(&self) -> CycNum {
        assert_eq!(self.rows, self.cols, "trace of a non-square matrix");
        let mut t = CycNum::zero();
        for i in 0..self.rows {
            t += &self[(i, i)];
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(CycNum::is_zero)
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self[(i, j)].is_zero()))
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols && *self == self.transpose()
    }

    pub fn entries_real(&self) -> bool {
        self.data.iter().all(CycNum::is_real)
    }

    /// Determinant of a 2×2 matrix.
    pub fn det2(&self) -> CycNum {
        assert_eq!((self.rows, self.cols), (2, 2));
        &(&self[(0, 0)] * &self[(1, 1)]) - &(&self[(0, 1)] * &self[(1, 0)])
    }

    pub fn stack_vertical(blocks: &[&CycMatrix]) -> CycMatrix {
        assert!(!blocks.is_empty());
        let cols = blocks[0].cols;
        assert!(blocks.iter().all(|b| b.cols == cols), "column mismatch");
        let rows = blocks.iter().map(|b| b.rows).sum();
        let mut data = Vec::with_capacity(rows * cols);
        for b in blocks {
            data.extend(b.data.iter().cloned());
        }
        CycMatrix { rows, cols, data }
    }
}

impl Index<(usize, usize)> for CycMatrix {
    type Output = CycNum;
    fn index(&self, (i, j): (usize, usize)) -> &CycNum {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for CycMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut CycNum {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for CycMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "CycMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                write!(
                    f,
                    "{}{}",
                    self[(i, j)],
                    if j + 1 < self.cols { ", " } else { "" }
                )?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// Reduced row echelon form; returns the reduced matrix and the pivot columns.
pub fn rref(m: &CycMatrix) -> (CycMatrix, Vec<usize>) {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..a.cols() {
        if row >= a.rows() {
            break;
        }
        let pivot_row = match (row..a.rows()).find(|&r| !a[(r, col)].is_zero()) {
            Some(r) => r,
            None => continue,
        };
        if pivot_row != row {
            for j in 0..a.cols() {
                let tmp = a[(pivot_row, j)].clone();
                a[(pivot_row, j)] = a[(row, j)].clone();
                a[(row, j)] = tmp;
            }
        }
        let inv = a[(row, col)].inverse().expect("pivot is nonzero");
        for j in col..a.cols() {
            a[(row, j)] = &a[(row, j)] * &inv;
        }
        for r in 0..a.rows() {
            if r == row || a[(r, col)].is_zero() {
                continue;
            }
            let f = a[(r, col)].clone();
            for j in col..a.cols() {
                let t = &a[(row, j)] * &f;
                a[(r, j)] -= &t;
            }
        }
        pivots.push(col);
        row += 1;
    }
    (a, pivots)
}

pub fn rank(m: &CycMatrix) -> usize {
    rref(m).1.len()
}

/// Exact basis of {v : Mv = 0}; empty for a trivial kernel. The basis is the
/// canonical one read off the reduced echelon form (one vector per free
/// column), so it is deterministic.
pub fn nullspace(m: &CycMatrix) -> Vec<Vec<CycNum>> {
    let (r, pivots) = rref(m);
    let n = m.cols();
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![CycNum::zero(); n];
            v[fc] = CycNum::one();
            for (prow, &pcol) in pivots.iter().enumerate() {
                v[pcol] = -r[(prow, fc)].clone();
            }
            v
        })
        .collect()
}

/// Solves Ax = b for square nonsingular A.
pub fn solve(a: &CycMatrix, b: &[CycNum]) -> Result<Vec<CycNum>, ExactError> {
    if a.rows() != a.cols() || a.rows() != b.len() {
        return Err(ExactError::DimensionMismatch(format!(
            "{}x{} system with rhs of length {}",
            a.rows(),
            a.cols(),
            b.len()
        )));
    }
    let n = a.rows();
    let mut aug = CycMatrix::from_fn(n, n + 1, |i, j| {
        if j < n {
            a[(i, j)].clone()
        } else {
            b[i].clone()
        }
    });
    let (r, pivots) = {
        let (r, p) = rref(&aug);
        aug = r;
        (aug, p)
    };
    if pivots.len() != n || pivots.iter().any(|&c| c >= n) {
        return Err(ExactError::SingularSystem);
    }
    Ok((0..n).map(|i| r[(i, n)].clone()).collect())
}

/// True if `v` lies in the span of `basis` (exact rank test).
pub fn in_span(basis: &[Vec<CycNum>], v: &[CycNum]) -> bool {
    if basis.is_empty() {
        return v.iter().all(CycNum::is_zero);
    }
    let m = CycMatrix::from_rows(basis.to_vec());
    let mut rows = basis.to_vec();
    rows.push(v.to_vec());
    let augmented = CycMatrix::from_rows(rows);
    rank(&m) == rank(&augmented)
}

pub fn same_span(a: &[Vec<CycNum>], b: &[Vec<CycNum>]) -> bool {
    a.iter().all(|v| in_span(b, v)) && b.iter().all(|v| in_span(a, v))
}

/// Gram–Schmidt over the real subfield. Inner products must land in the real
/// subfield and the form must be positive definite on the span; every norm
/// encountered must have its square root in Q(ζ₂₄) (see [`sqrt_real`]), which
/// holds for all the values this computation produces (9/8, 3/8, 8/3, ...).
pub fn gram_schmidt_real<F>(vectors: &[Vec<CycNum>], ip: F) -> Result<Vec<Vec<CycNum>>, ExactError>
where
    F: Fn(&[CycNum], &[CycNum]) -> CycNum,
{
    let mut ortho: Vec<Vec<CycNum>> = Vec::with_capacity(vectors.len());
    for v in vectors {
        let mut w = v.clone();
        for e in &ortho {
            let c = ip(&w, e);
            if !c.is_real() {
                return Err(ExactError::NonRealInnerProduct(c.to_string()));
            }
            for (wi, ei) in w.iter_mut().zip(e.iter()) {
                *wi -= &(&c * ei);
            }
        }
        let norm_sq = ip(&w, &w);
        if !norm_sq.is_real() {
            return Err(ExactError::NonRealInnerProduct(norm_sq.to_string()));
        }
        if norm_sq.is_zero() {
            return Err(ExactError::DependentVectors);
        }
        let norm = sqrt_real(&norm_sq)?;
        let inv_norm = norm.inverse()?;
        let unit: Vec<CycNum> = w.iter().map(|wi| wi * &inv_norm).collect();
        ortho.push(unit);
    }
    Ok(ortho)
}
