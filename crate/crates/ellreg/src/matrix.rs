//! Exact dense linear algebra over [`Rational`].
//!
//! Matrices here are tiny (component counts are capped at 16), so the
//! implementations favor predictability over asymptotics: cofactor expansion
//! up to 4x4, fraction-free Bareiss elimination above that, and a plain exact
//! Gaussian solve whose result is verified by multiplying back before it is
//! returned.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MatrixError {
    NonSquare { rows: usize, cols: usize },
    SingularMatrix,
    DimensionMismatch,
}

impl fmt::Display for MatrixError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MatrixError::NonSquare { rows, cols } => {
                write!(f, "matrix is not square ({rows}x{cols})")
            }
            MatrixError::SingularMatrix => write!(f, "singular matrix"),
            MatrixError::DimensionMismatch => write!(f, "dimension mismatch"),
        }
    }
}

impl std::error::Error for MatrixError {}

impl RMatrix {
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        RMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        RMatrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = Rational::one();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &Rational {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &self.data[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut Rational {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &mut self.data[i * self.cols + j]
    }

    pub fn mul(&self, rhs: &RMatrix) -> RMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        let mut out = RMatrix::zero(self.rows, rhs.cols);
        for i in 0..self.rows {
            for j in 0..rhs.cols {
                let mut acc = Rational::zero();
                for k in 0..self.cols {
                    acc += &(self.at(i, k) * rhs.at(k, j));
                }
                *out.at_mut(i, j) = acc;
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(self.cols, v.len(), "dimension mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = Rational::zero();
                for j in 0..self.cols {
                    acc += &(self.at(i, j) * &v[j]);
                }
                acc
            })
            .collect()
    }

    /// Copy with column `j` replaced by `v`.
    pub fn with_column(&self, j: usize, v: &[Rational]) -> RMatrix {
        assert_eq!(v.len(), self.rows);
        let mut out = self.clone();
        for i in 0..self.rows {
            *out.at_mut(i, j) = v[i].clone();
        }
        out
    }

    /// Principal submatrix on the given (strictly increasing) index set.
    pub fn principal_submatrix(&self, idx: &[usize]) -> RMatrix {
        let mut out = RMatrix::zero(idx.len(), idx.len());
        for (a, &i) in idx.iter().enumerate() {
            for (b, &j) in idx.iter().enumerate() {
                *out.at_mut(a, b) = self.at(i, j).clone();
            }
        }
        out
    }

    /// Exact determinant. Cofactor expansion for n <= 4, fraction-free
    /// Bareiss elimination on a denominator-cleared integer copy otherwise.
    pub fn det(&self) -> Result<Rational, MatrixError> {
        if !self.is_square() {
            return Err(MatrixError::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(Rational::one());
        }
        if n <= 4 {
            return Ok(self.det_cofactor());
        }
        Ok(self.det_bareiss())
    }

    fn det_cofactor(&self) -> Rational {
        let n = self.rows;
        if n == 1 {
            return self.at(0, 0).clone();
        }
        let mut acc = Rational::zero();
        for j in 0..n {
            let a = self.at(0, j);
            if a.is_zero() {
                continue;
            }
            let minor = self.minor_matrix(0, j).det_cofactor();
            let term = a * &minor;
            if j % 2 == 0 {
                acc += &term;
            } else {
                acc -= &term;
            }
        }
        acc
    }

    fn minor_matrix(&self, skip_row: usize, skip_col: usize) -> RMatrix {
        let n = self.rows;
        let mut out = RMatrix::zero(n - 1, n - 1);
        let mut a = 0;
        for i in 0..n {
            if i == skip_row {
                continue;
            }
            let mut b = 0;
            for j in 0..n {
                if j == skip_col {
                    continue;
                }
                *out.at_mut(a, b) = self.at(i, j).clone();
                b += 1;
            }
            a += 1;
        }
        out
    }

    fn det_bareiss(&self) -> Rational {
        let n = self.rows;
        // clear denominators row by row; det scales by the product of the factors
        let mut m: Vec<Vec<BigInt>> = Vec::with_capacity(n);
        let mut scale = BigInt::one();
        for i in 0..n {
            let mut lcm = BigInt::one();
            for j in 0..n {
                lcm = num_integer::lcm(lcm, self.at(i, j).denom().clone());
            }
            scale *= &lcm;
            m.push(
                (0..n)
                    .map(|j| {
                        let q = self.at(i, j);
                        q.numer() * (&lcm / q.denom())
                    })
                    .collect(),
            );
        }
        let mut sign = 1i32;
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                    Some(p) => {
                        m.swap(k, p);
                        sign = -sign;
                    }
                    None => return Rational::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                    // Bareiss: division by the previous pivot is exact
                    m[i][j] = num / &prev;
                }
                m[i][k] = BigInt::zero();
            }
            prev = m[k][k].clone();
        }
        let det_int = if sign < 0 {
            -m[n - 1][n - 1].clone()
        } else {
            m[n - 1][n - 1].clone()
        };
        Rational::from_big(det_int, scale).expect("nonzero scale")
    }

    /// Exact solve of `self * x = b`. The result is verified by multiplying
    /// back before it is returned.
    pub fn solve(&self, b: &[Rational]) -> Result<Vec<Rational>, MatrixError> {
        if !self.is_square() {
            return Err(MatrixError::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        if b.len() != self.rows {
            return Err(MatrixError::DimensionMismatch);
        }
        let n = self.rows;
        let mut m = self.clone();
        let mut rhs = b.to_vec();
        for k in 0..n {
            let pivot_row = (k..n)
                .find(|&i| !m.at(i, k).is_zero())
                .ok_or(MatrixError::SingularMatrix)?;
            if pivot_row != k {
                for j in 0..n {
                    let tmp = m.at(pivot_row, j).clone();
                    *m.at_mut(pivot_row, j) = m.at(k, j).clone();
                    *m.at_mut(k, j) = tmp;
                }
                rhs.swap(pivot_row, k);
            }
            let pivot = m.at(k, k).clone();
            for i in k + 1..n {
                let factor = m.at(i, k) / &pivot;
                if factor.is_zero() {
                    continue;
                }
                for j in k..n {
                    let v = m.at(i, j) - &(&factor * m.at(k, j));
                    *m.at_mut(i, j) = v;
                }
                let v = &rhs[i] - &(&factor * &rhs[k]);
                rhs[i] = v;
            }
        }
        let mut x = vec![Rational::zero(); n];
        for k in (0..n).rev() {
            let mut acc = rhs[k].clone();
            for j in k + 1..n {
                acc -= &(m.at(k, j) * &x[j]);
            }
            x[k] = &acc / m.at(k, k);
        }
        // exact back-substitution check
        let check = self.mul_vec(&x);
        assert_eq!(check, b, "exact solve failed verification");
        Ok(x)
    }
}
