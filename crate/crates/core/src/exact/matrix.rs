//! Dense square matrices over exact rationals.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::poly::Poly;
use super::poly_matrix::PolyMatrix;
use super::scalar::{format_scalar, parse_scalar, Scalar};
use crate::error::{Error, Result};

/// Square matrix stored row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    n: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(n: usize) -> Self {
        Matrix {
            n,
            data: vec![Scalar::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, Scalar::one())
    }

    pub fn scalar(n: usize, c: Scalar) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.data[i * n + i] = c.clone();
        }
        m
    }

    pub fn diag(entries: &[Scalar]) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n);
        for (i, e) in entries.iter().enumerate() {
            m.data[i * n + i] = e.clone();
        }
        m
    }

    /// Builds a matrix from rows; all rows must have the row count as length.
    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch(format!(
                "expected {n} entries in every row of a {n}x{n} matrix"
            )));
        }
        Ok(Matrix {
            n,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Panicking variant of [`Matrix::from_rows`] for literal tables.
    pub fn square(rows: Vec<Vec<Scalar>>) -> Self {
        Self::from_rows(rows).expect("rows must form a square matrix")
    }

    /// `[[a, b], [c, d]]` assembled from four equal-sized square blocks.
    pub fn from_blocks(a: &Matrix, b: &Matrix, c: &Matrix, d: &Matrix) -> Self {
        let k = a.n;
        assert!(b.n == k && c.n == k && d.n == k, "block sizes differ");
        let mut m = Self::zeros(2 * k);
        for i in 0..k {
            for j in 0..k {
                m.set(i, j, a.get(i, j).clone());
                m.set(i, j + k, b.get(i, j).clone());
                m.set(i + k, j, c.get(i, j).clone());
                m.set(i + k, j + k, d.get(i, j).clone());
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Scalar) {
        self.data[i * self.n + j] = value;
    }

    pub fn row(&self, i: usize) -> Vec<Scalar> {
        self.data[i * self.n..(i + 1) * self.n].to_vec()
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.n).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.n).map(|i| self.row(i)).collect()
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    /// Square block of size `size` starting at `(row, col)`.
    pub fn block(&self, row: usize, col: usize, size: usize) -> Matrix {
        let mut m = Self::zeros(size);
        for i in 0..size {
            for j in 0..size {
                m.set(i, j, self.get(row + i, col + j).clone());
            }
        }
        m
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| i == j || self.get(i, j).is_zero()))
    }

    pub fn transpose(&self) -> Matrix {
        let mut m = Self::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                m.set(j, i, self.get(i, j).clone());
            }
        }
        m
    }

    pub fn trace(&self) -> Scalar {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        Matrix {
            n: self.n,
            data: self.data.iter().map(|x| x * c).collect(),
        }
    }

    pub fn checked_mul(&self, rhs: &Matrix) -> Result<Matrix> {
        if self.n != rhs.n {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {0}x{0} by {1}x{1}",
                self.n, rhs.n
            )));
        }
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * rhs.get(k, j);
                }
            }
        }
        Ok(out)
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.n);
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j) * &v[j]).sum())
            .collect()
    }

    /// Row vector times matrix.
    pub fn apply_left(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.n);
        (0..self.n)
            .map(|j| (0..self.n).map(|i| &v[i] * self.get(i, j)).sum())
            .collect()
    }

    /// Determinant by Gaussian elimination.
    pub fn det(&self) -> Scalar {
        let n = self.n;
        let mut a = self.data.clone();
        let mut det = Scalar::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !a[r * n + col].is_zero()) else {
                return Scalar::zero();
            };
            if p != col {
                for j in 0..n {
                    a.swap(p * n + j, col * n + j);
                }
                det = -det;
            }
            let pivot = a[col * n + col].clone();
            det *= &pivot;
            for r in col + 1..n {
                let f = &a[r * n + col] / &pivot;
                if f.is_zero() {
                    continue;
                }
                for j in col..n {
                    let t = &f * &a[col * n + j];
                    a[r * n + j] -= t;
                }
            }
        }
        det
    }

    /// Inverse by Gauss-Jordan elimination.
    pub fn inverse(&self) -> Result<Matrix> {
        let n = self.n;
        let mut a = self.data.clone();
        let mut inv = Self::identity(n).data;
        for col in 0..n {
            let p = (col..n)
                .find(|&r| !a[r * n + col].is_zero())
                .ok_or(Error::Singular)?;
            if p != col {
                for j in 0..n {
                    a.swap(p * n + j, col * n + j);
                    inv.swap(p * n + j, col * n + j);
                }
            }
            let pivot = a[col * n + col].clone();
            for j in 0..n {
                a[col * n + j] /= &pivot;
                inv[col * n + j] /= &pivot;
            }
            for r in 0..n {
                if r == col || a[r * n + col].is_zero() {
                    continue;
                }
                let f = a[r * n + col].clone();
                for j in 0..n {
                    let t = &f * &a[col * n + j];
                    a[r * n + j] -= t;
                    let t = &f * &inv[col * n + j];
                    inv[r * n + j] -= t;
                }
            }
        }
        Ok(Matrix { n, data: inv })
    }

    /// `P^{-1} self P`
    pub fn conjugate_by(&self, p: &Matrix) -> Result<Matrix> {
        Ok(&(&p.inverse()? * self) * p)
    }

    /// Monic characteristic polynomial `det(t I - self)`.
    pub fn charpoly(&self) -> Poly {
        PolyMatrix::z_minus(self).det()
    }

    /// Basis of the right null space, by fraction-free row reduction.
    /// Each basis vector has first nonzero entry equal to one.
    pub fn null_space(&self) -> Vec<Vec<Scalar>> {
        let n = self.n;
        let mut rows: Vec<Vec<BigInt>> = (0..n).map(|i| integer_row(&self.row(i))).collect();
        let mut pivots: Vec<(usize, usize)> = Vec::new();
        let mut next = 0;
        for col in 0..n {
            let Some(p) = (next..n).find(|&r| !rows[r][col].is_zero()) else {
                continue;
            };
            rows.swap(p, next);
            let pivot_row = rows[next].clone();
            let pv = pivot_row[col].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r == next || row[col].is_zero() {
                    continue;
                }
                let f = row[col].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x = &pv * &*x - &f * y;
                }
                reduce_by_content(row);
            }
            pivots.push((next, col));
            next += 1;
        }
        let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
        let mut basis = Vec::new();
        for free in (0..n).filter(|c| !pivot_cols.contains(c)) {
            let mut v = vec![Scalar::zero(); n];
            v[free] = Scalar::one();
            for &(r, c) in &pivots {
                v[c] = -Scalar::new(rows[r][free].clone(), rows[r][c].clone());
            }
            normalize_leading(&mut v);
            basis.push(v);
        }
        basis
    }

    /// Basis of the left eigenspace `{v : v A = xi v}`.
    pub fn left_eigenvectors(&self, eigenvalue: &Scalar) -> Result<Vec<Vec<Scalar>>> {
        let shifted = self - &Matrix::scalar(self.n, eigenvalue.clone());
        let basis = shifted.transpose().null_space();
        if basis.is_empty() {
            return Err(Error::NotEigenvalue(format_scalar(eigenvalue)));
        }
        Ok(basis)
    }

    pub fn to_f64(&self) -> Vec<Vec<f64>> {
        self.rows()
            .iter()
            .map(|r| r.iter().map(super::scalar::to_f64).collect())
            .collect()
    }

    /// Rows of canonical scalar strings.
    pub fn to_strings(&self) -> Vec<Vec<String>> {
        self.rows()
            .iter()
            .map(|r| r.iter().map(format_scalar).collect())
            .collect()
    }

    pub fn from_strings(rows: &[Vec<String>]) -> Result<Self> {
        let parsed = rows
            .iter()
            .map(|r| r.iter().map(|s| parse_scalar(s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(parsed)
    }
}

/// Exact product, rejecting mismatched dimensions.
pub fn mat_mul(lhs: &Matrix, rhs: &Matrix) -> Result<Matrix> {
    lhs.checked_mul(rhs)
}

fn integer_row(row: &[Scalar]) -> Vec<BigInt> {
    let lcm = row
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    row.iter()
        .map(|x| x.numer() * (&lcm / x.denom()))
        .collect()
}

fn reduce_by_content(row: &mut [BigInt]) {
    let g = row.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in row.iter_mut() {
            *x = &*x / &g;
        }
    }
}

fn normalize_leading(v: &mut [Scalar]) {
    if let Some(lead) = v.iter().find(|x| !x.is_zero()).cloned() {
        for x in v.iter_mut() {
            *x = &*x / &lead;
        }
    }
}

impl Add<&Matrix> for &Matrix {
    type Output = Matrix;
    fn add(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        Matrix {
            n: self.n,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub<&Matrix> for &Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        Matrix {
            n: self.n,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

/// Panics on dimension mismatch; see [`mat_mul`] for the checked form.
impl Mul<&Matrix> for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        self.checked_mul(rhs).expect("dimension mismatch")
    }
}

impl Neg for &Matrix {
    type Output = Matrix;
    fn neg(self) -> Matrix {
        Matrix {
            n: self.n,
            data: self.data.iter().map(|x| -x).collect(),
        }
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells = self.to_strings();
        let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
        for row in cells {
            let line: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
            writeln!(f, "[{}]", line.join("  "))?;
        }
        Ok(())
    }
}

impl Serialize for Matrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_strings().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Matrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<String>>::deserialize(d)?;
        Matrix::from_strings(&rows).map_err(serde::de::Error::custom)
    }
}

/// `diag(1, -1)`
pub fn j2() -> Matrix {
    Matrix::diag(&[Scalar::one(), -Scalar::one()])
}

/// Sign-normalized magnitude helper used in error messages.
pub fn describe_entry(m: &Matrix, i: usize, j: usize) -> String {
    let x = m.get(i, j);
    format!(
        "({},{}) = {}{}",
        i + 1,
        j + 1,
        if x.is_negative() { "-" } else { "" },
        format_scalar(&x.abs())
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::scalar::{int, rat};

    fn m(rows: &[&[i64]]) -> Matrix {
        Matrix::square(rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect())
    }

    #[test]
    fn j_is_an_involution() {
        assert_eq!(&j2() * &j2(), Matrix::identity(2));
    }

    #[test]
    fn mismatched_product_is_an_error() {
        assert!(matches!(
            mat_mul(&Matrix::identity(2), &Matrix::identity(3)),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn inverse_and_det() {
        let a = m(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        assert_eq!(a.det(), int(18));
        assert_eq!(&a * &a.inverse().unwrap(), Matrix::identity(3));
        assert!(matches!(m(&[&[1, 2], &[2, 4]]).inverse(), Err(Error::Singular)));
    }

    #[test]
    fn left_eigenvectors_of_j() {
        assert_eq!(j2().left_eigenvectors(&int(1)).unwrap(), vec![vec![int(1), int(0)]]);
        assert_eq!(j2().left_eigenvectors(&int(-1)).unwrap(), vec![vec![int(0), int(1)]]);
    }

    #[test]
    fn non_eigenvalue_is_rejected() {
        let err = Matrix::identity(2).left_eigenvectors(&int(2)).unwrap_err();
        assert!(err.to_string().contains("not an eigenvalue"));
    }

    #[test]
    fn null_space_normalization() {
        // rank one: null space spanned by (1,-1/2,0) and (0,0,1) directions
        let a = m(&[&[2, 4, 0], &[1, 2, 0], &[0, 0, 0]]);
        let basis = a.null_space();
        assert_eq!(basis.len(), 2);
        for v in &basis {
            assert!(a.apply(v).iter().all(Zero::is_zero));
            assert!(v.iter().find(|x| !x.is_zero()).unwrap().is_one());
        }
        assert_eq!(basis[0], [int(-2), int(1), int(0)].iter().map(|x| x / int(-2)).collect::<Vec<_>>());
    }

    #[test]
    fn charpoly_of_companion() {
        // companion of t^3 - 2t + 5
        let c = m(&[&[0, 0, -5], &[1, 0, 2], &[0, 1, 0]]);
        assert_eq!(c.charpoly(), Poly::new(vec![int(5), int(-2), int(0), int(1)]));
    }

    #[test]
    fn serde_roundtrip() {
        let a = Matrix::square(vec![vec![rat(1, 3), rat(-2, 1)], vec![rat(0, 1), rat(7, 5)]]);
        let text = serde_json::to_string(&a).unwrap();
        assert_eq!(text, r#"[["1/3","-2"],["0","7/5"]]"#);
        let back: Matrix = serde_json::from_str(&text).unwrap();
        assert_eq!(back, a);
    }
}
