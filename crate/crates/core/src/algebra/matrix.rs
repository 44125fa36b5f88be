use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::AlgebraError;

/// Dense matrix of exact rationals, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

impl RationalMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<BigRational>) -> Result<Self, AlgebraError> {
        if data.len() != rows * cols {
            return Err(AlgebraError::DimensionMismatch);
        }
        Ok(RationalMatrix { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<BigRational>>) -> Result<Self, AlgebraError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(AlgebraError::DimensionMismatch);
        }
        Self::new(r, c, rows.into_iter().flatten().collect())
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix { rows, cols, data: alloc::vec![BigRational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigRational::one());
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

    pub fn get(&self, r: usize, c: usize) -> &BigRational {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigRational) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[BigRational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<BigRational>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (i + 1..self.cols).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, rhs: &RationalMatrix) -> Result<Self, AlgebraError> {
        if self.cols != rhs.rows {
            return Err(AlgebraError::DimensionMismatch);
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for j in 0..rhs.cols {
                let mut acc = BigRational::zero();
                for k in 0..self.cols {
                    acc += self.get(i, k) * rhs.get(k, j);
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    /// Submatrix with rows and columns in the given order (0-based).
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Result<Self, AlgebraError> {
        for &r in rows {
            if r >= self.rows {
                return Err(AlgebraError::IndexOutOfRange { index: r, bound: self.rows });
            }
        }
        for &c in cols {
            if c >= self.cols {
                return Err(AlgebraError::IndexOutOfRange { index: c, bound: self.cols });
            }
        }
        let data = rows
            .iter()
            .flat_map(|&r| cols.iter().map(move |&c| self.get(r, c).clone()))
            .collect();
        Ok(RationalMatrix { rows: rows.len(), cols: cols.len(), data })
    }

    /// Rows scaled to integers; returns the integer matrix and the product
    /// of the scaling factors.
    fn integer_rows(&self) -> (Vec<Vec<BigInt>>, BigInt) {
        let mut scale = BigInt::one();
        let m = (0..self.rows)
            .map(|r| {
                let row = self.row(r);
                let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
                scale *= &l;
                row.iter().map(|x| x.numer() * (&l / x.denom())).collect()
            })
            .collect();
        (m, scale)
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> Result<BigRational, AlgebraError> {
        if !self.is_square() {
            return Err(AlgebraError::NotSquare { rows: self.rows, cols: self.cols });
        }
        let (mut m, scale) = self.integer_rows();
        let det = bareiss_determinant(&mut m);
        Ok(BigRational::new(det, scale))
    }

    /// Determinant by cofactor expansion along the first row. Exponential;
    /// intended for small matrices and as a cross-check of `determinant`.
    pub fn determinant_cofactor(&self) -> Result<BigRational, AlgebraError> {
        if !self.is_square() {
            return Err(AlgebraError::NotSquare { rows: self.rows, cols: self.cols });
        }
        let idx: Vec<usize> = (0..self.cols).collect();
        Ok(self.cofactor(0, &idx))
    }

    fn cofactor(&self, row: usize, cols: &[usize]) -> BigRational {
        if cols.is_empty() {
            return BigRational::one();
        }
        let mut acc = BigRational::zero();
        for (k, &c) in cols.iter().enumerate() {
            let x = self.get(row, c);
            if x.is_zero() {
                continue;
            }
            let rest: Vec<usize> = cols.iter().copied().filter(|&d| d != c).collect();
            let t = x * self.cofactor(row + 1, &rest);
            if k % 2 == 0 {
                acc += t;
            } else {
                acc -= t;
            }
        }
        acc
    }

    /// Rank by fraction-free row echelon reduction.
    pub fn rank(&self) -> usize {
        let (mut m, _) = self.integer_rows();
        bareiss_rank(&mut m, self.cols)
    }

    /// Determinant of the submatrix on the given (0-based, ordered) rows and
    /// columns.
    pub fn minor(&self, rows: &[usize], cols: &[usize]) -> Result<BigRational, AlgebraError> {
        if rows.len() != cols.len() {
            return Err(AlgebraError::NotSquare { rows: rows.len(), cols: cols.len() });
        }
        self.submatrix(rows, cols)?.determinant()
    }

    /// Inverse by Gauss-Jordan elimination over the rationals.
    pub fn inverse(&self) -> Result<Self, AlgebraError> {
        if !self.is_square() {
            return Err(AlgebraError::NotSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        let mut a = self.to_rows();
        let mut inv = Self::identity(n).to_rows();
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a[r][col].is_zero()).ok_or(AlgebraError::Singular)?;
            a.swap(col, pivot);
            inv.swap(col, pivot);
            let p = a[col][col].clone();
            for j in 0..n {
                a[col][j] /= &p;
                inv[col][j] /= &p;
            }
            for r in 0..n {
                if r == col || a[r][col].is_zero() {
                    continue;
                }
                let f = a[r][col].clone();
                for j in 0..n {
                    let x = &f * &a[col][j];
                    a[r][j] -= x;
                    let y = &f * &inv[col][j];
                    inv[r][j] -= y;
                }
            }
        }
        Self::from_rows(inv)
    }

    /// Solves `self · x = b` for square nonsingular `self`.
    pub fn solve(&self, b: &[BigRational]) -> Result<Vec<BigRational>, AlgebraError> {
        if b.len() != self.rows {
            return Err(AlgebraError::DimensionMismatch);
        }
        let inv = self.inverse()?;
        Ok((0..self.rows)
            .map(|i| (0..self.cols).map(|k| inv.get(i, k) * &b[k]).sum())
            .collect())
    }

    /// Exact positive-definiteness test: symmetric with every leading
    /// principal minor positive.
    pub fn is_positive_definite(&self) -> bool {
        if !self.is_symmetric() {
            return false;
        }
        (1..=self.rows).all(|k| {
            let idx: Vec<usize> = (0..k).collect();
            self.minor(&idx, &idx).is_ok_and(|d| d.is_positive())
        })
    }
}

fn bareiss_determinant(m: &mut [Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&r| !m[r][k].is_zero()) else {
            return BigInt::zero();
        };
        if p != k {
            m.swap(p, k);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[k][k] * &m[i][j] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

fn bareiss_rank(m: &mut [Vec<BigInt>], cols: usize) -> usize {
    let rows = m.len();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(p, r);
        for i in r + 1..rows {
            for j in c + 1..cols {
                let v = (&m[r][c] * &m[i][j] - &m[i][c] * &m[r][j]) / &prev;
                m[i][j] = v;
            }
            m[i][c] = BigInt::zero();
        }
        prev = m[r][c].clone();
        r += 1;
    }
    r
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for r in 0..self.rows {
            if r > 0 {
                f.write_str(", ")?;
            }
            f.write_str("[")?;
            for (k, x) in self.row(r).iter().enumerate() {
                if k > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{x}")?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}
