//! The coefficient fields used by the recurrences: exact rationals and `f64`.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::exact::{scalar, Matrix, Scalar};

pub trait Field:
    Clone
    + Debug
    + PartialEq
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Zero
    + One
{
    fn from_scalar(x: &Scalar) -> Self;
    /// Pivoting weight; zero exactly when the element is zero.
    fn magnitude(&self) -> f64;
    fn to_f64(&self) -> f64;

    fn from_i64(n: i64) -> Self {
        Self::from_scalar(&Scalar::from_integer(n.into()))
    }
}

impl Field for Scalar {
    fn from_scalar(x: &Scalar) -> Self {
        x.clone()
    }

    fn magnitude(&self) -> f64 {
        if Zero::is_zero(self) {
            0.0
        } else {
            scalar::to_f64(&self.abs()).max(f64::MIN_POSITIVE)
        }
    }

    fn to_f64(&self) -> f64 {
        scalar::to_f64(self)
    }
}

impl Field for f64 {
    fn from_scalar(x: &Scalar) -> Self {
        scalar::to_f64(x)
    }

    fn magnitude(&self) -> f64 {
        self.abs()
    }

    fn to_f64(&self) -> f64 {
        *self
    }
}

/// Dense square matrix over a [`Field`].
pub type FMatrix<F> = Vec<Vec<F>>;

pub fn convert<F: Field>(m: &Matrix) -> FMatrix<F> {
    m.rows().iter().map(|row| row.iter().map(F::from_scalar).collect()).collect()
}

pub fn apply<F: Field>(m: &FMatrix<F>, v: &[F]) -> Vec<F> {
    m.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .fold(F::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
        })
        .collect()
}

/// Solves `m x = rhs` by partial pivoting; `None` when singular.
pub fn solve<F: Field>(m: &FMatrix<F>, rhs: &[F]) -> Option<Vec<F>> {
    let n = rhs.len();
    let mut a: Vec<Vec<F>> = m
        .iter()
        .zip(rhs)
        .map(|(row, r)| {
            let mut row = row.clone();
            row.push(r.clone());
            row
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).max_by(|&i, &j| a[i][col].magnitude().total_cmp(&a[j][col].magnitude()))?;
        if a[pivot][col].is_zero() {
            return None;
        }
        a.swap(col, pivot);
        for i in col + 1..n {
            if a[i][col].is_zero() {
                continue;
            }
            let factor = a[i][col].clone() / a[col][col].clone();
            let (top, bottom) = a.split_at_mut(i);
            for (dst, src) in bottom[0][col..].iter_mut().zip(&top[col][col..]) {
                *dst = dst.clone() - factor.clone() * src.clone();
            }
        }
    }
    let mut x = vec![F::zero(); n];
    for i in (0..n).rev() {
        let mut acc = a[i][n].clone();
        for j in i + 1..n {
            acc = acc - a[i][j].clone() * x[j].clone();
        }
        x[i] = acc / a[i][i].clone();
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn exact_and_float_solve_agree() {
        let m = Matrix::square(vec![vec![rat(0, 1), rat(2, 3)], vec![rat(5, 7), rat(1, 1)]]);
        let rhs = vec![rat(1, 2), rat(-3, 4)];
        let exact = solve(&convert::<Scalar>(&m), &rhs).unwrap();
        assert_eq!(m.apply(&exact), rhs);
        let float = solve(&convert::<f64>(&m), &[0.5, -0.75]).unwrap();
        for (e, f) in exact.iter().zip(&float) {
            assert!((scalar::to_f64(e) - f).abs() < 1e-15);
        }
        let singular = Matrix::square(vec![vec![rat(1, 1), rat(2, 1)], vec![rat(2, 1), rat(4, 1)]]);
        assert!(solve(&convert::<Scalar>(&singular), &rhs).is_none());
    }
}
