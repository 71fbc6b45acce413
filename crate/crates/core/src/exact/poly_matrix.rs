//! Square matrices whose entries are polynomials in `z`.

use std::ops::{Add, Mul, Neg, Sub};

use super::matrix::Matrix;
use super::poly::Poly;
use super::scalar::Scalar;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyMatrix {
    n: usize,
    data: Vec<Poly>,
}

impl PolyMatrix {
    pub fn zeros(n: usize) -> Self {
        PolyMatrix {
            n,
            data: vec![Poly::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar_poly(n, &Poly::one())
    }

    /// `p(z) I`
    pub fn scalar_poly(n: usize, p: &Poly) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.data[i * n + i] = p.clone();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Poly>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch("polynomial matrix is not square".into()));
        }
        Ok(PolyMatrix {
            n,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn constant(m: &Matrix) -> Self {
        PolyMatrix {
            n: m.dim(),
            data: m.entries().iter().cloned().map(Poly::constant).collect(),
        }
    }

    /// `z I - m`
    pub fn z_minus(m: &Matrix) -> Self {
        &Self::scalar_poly(m.dim(), &Poly::z()) - &Self::constant(m)
    }

    /// `sum_k z^k coeffs[k]`
    pub fn from_coefficients(coeffs: &[Matrix]) -> Self {
        let n = coeffs.first().map_or(0, Matrix::dim);
        let mut out = Self::zeros(n);
        for (k, c) in coeffs.iter().enumerate() {
            let zk = Poly::monomial(Scalar::from_integer(1.into()), k);
            out = &out + &Self::constant(c).scale_poly(&zk);
        }
        out
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Poly {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Poly) {
        self.data[i * self.n + j] = p;
    }

    pub fn entries(&self) -> &[Poly] {
        &self.data
    }

    pub fn block(&self, row: usize, col: usize, size: usize) -> PolyMatrix {
        let mut m = Self::zeros(size);
        for i in 0..size {
            for j in 0..size {
                m.set(i, j, self.get(row + i, col + j).clone());
            }
        }
        m
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Poly::is_zero)
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.data.iter().filter_map(Poly::degree).max()
    }

    /// Matrix of `z^k` coefficients.
    pub fn coefficient(&self, k: usize) -> Matrix {
        let mut m = Matrix::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                m.set(i, j, self.get(i, j).coeff(k));
            }
        }
        m
    }

    pub fn eval(&self, z: &Scalar) -> Matrix {
        let mut m = Matrix::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                m.set(i, j, self.get(i, j).eval(z));
            }
        }
        m
    }

    pub fn scale_poly(&self, p: &Poly) -> PolyMatrix {
        PolyMatrix {
            n: self.n,
            data: self.data.iter().map(|x| x * p).collect(),
        }
    }

    /// Entrywise `p(-z)`.
    pub fn reflect(&self) -> PolyMatrix {
        PolyMatrix {
            n: self.n,
            data: self.data.iter().map(Poly::reflect).collect(),
        }
    }

    /// Entrywise exact division by a scalar polynomial.
    pub fn exact_div(&self, p: &Poly) -> Option<PolyMatrix> {
        let data = self
            .data
            .iter()
            .map(|x| x.exact_div(p))
            .collect::<Option<Vec<_>>>()?;
        Some(PolyMatrix { n: self.n, data })
    }

    fn minor(&self, skip_row: usize, skip_col: usize) -> PolyMatrix {
        let n = self.n;
        let data = (0..n)
            .filter(|&i| i != skip_row)
            .flat_map(|i| {
                (0..n)
                    .filter(move |&j| j != skip_col)
                    .map(move |j| self.get(i, j).clone())
            })
            .collect();
        PolyMatrix { n: n - 1, data }
    }

    /// Determinant by cofactor expansion; intended for the small sizes used here.
    pub fn det(&self) -> Poly {
        match self.n {
            0 => Poly::one(),
            1 => self.data[0].clone(),
            2 => self.get(0, 0) * self.get(1, 1) - self.get(0, 1) * self.get(1, 0),
            n => (0..n).fold(Poly::zero(), |acc, j| {
                let entry = self.get(0, j);
                if entry.is_zero() {
                    return acc;
                }
                let term = entry * self.minor(0, j).det();
                if j % 2 == 0 {
                    acc + term
                } else {
                    acc - term
                }
            }),
        }
    }

    /// Classical adjugate (transposed cofactor matrix).
    pub fn adjugate(&self) -> PolyMatrix {
        let n = self.n;
        if n == 1 {
            return Self::identity(1);
        }
        let mut adj = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                let c = self.minor(i, j).det();
                adj.set(j, i, if (i + j) % 2 == 0 { c } else { -c });
            }
        }
        adj
    }
}

/// `(adj M, det M)` with `M adj M = det M I`.
pub fn poly_adjugate(m: &PolyMatrix) -> (PolyMatrix, Poly) {
    (m.adjugate(), m.det())
}

impl Add<&PolyMatrix> for &PolyMatrix {
    type Output = PolyMatrix;
    fn add(self, rhs: &PolyMatrix) -> PolyMatrix {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        PolyMatrix {
            n: self.n,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub<&PolyMatrix> for &PolyMatrix {
    type Output = PolyMatrix;
    fn sub(self, rhs: &PolyMatrix) -> PolyMatrix {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        PolyMatrix {
            n: self.n,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul<&PolyMatrix> for &PolyMatrix {
    type Output = PolyMatrix;
    fn mul(self, rhs: &PolyMatrix) -> PolyMatrix {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        let n = self.n;
        let mut out = PolyMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                let s = (0..n).fold(Poly::zero(), |acc, k| acc + self.get(i, k) * rhs.get(k, j));
                out.set(i, j, s);
            }
        }
        out
    }
}

impl Neg for &PolyMatrix {
    type Output = PolyMatrix;
    fn neg(self) -> PolyMatrix {
        PolyMatrix {
            n: self.n,
            data: self.data.iter().map(|p| -p).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::scalar::{int, rat};
    use proptest::prelude::*;

    #[test]
    fn adjugate_of_jordan_block() {
        let z = Poly::z();
        let m = PolyMatrix::from_rows(vec![vec![z.clone(), Poly::one()], vec![Poly::zero(), z.clone()]])
            .unwrap();
        let (adj, det) = poly_adjugate(&m);
        let expected = PolyMatrix::from_rows(vec![
            vec![z.clone(), -Poly::one()],
            vec![Poly::zero(), z.clone()],
        ])
        .unwrap();
        assert_eq!(adj, expected);
        assert_eq!(det, &z * &z);
    }

    #[test]
    fn adjugate_of_identity() {
        let (adj, det) = poly_adjugate(&PolyMatrix::identity(2));
        assert_eq!(adj, PolyMatrix::identity(2));
        assert_eq!(det, Poly::one());
    }

    fn arb_matrix(n: usize) -> impl Strategy<Value = Matrix> {
        prop::collection::vec((-9i64..10, 1i64..6), n * n).prop_map(move |v| {
            let rows = v.chunks(n).map(|r| r.iter().map(|&(a, b)| rat(a, b)).collect()).collect();
            Matrix::square(rows)
        })
    }

    fn arb_poly_matrix(n: usize) -> impl Strategy<Value = PolyMatrix> {
        prop::collection::vec(arb_matrix(n), 1..4).prop_map(|cs| PolyMatrix::from_coefficients(&cs))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]
        #[test]
        fn adjugate_identity_holds(m in (1usize..=4).prop_flat_map(arb_matrix)) {
            let n = m.dim();
            let pm = PolyMatrix::constant(&m);
            let (adj, det) = poly_adjugate(&pm);
            prop_assert_eq!(&pm * &adj, PolyMatrix::scalar_poly(n, &det));
            prop_assert_eq!(det.coeff(0), m.det());
        }

        #[test]
        fn evaluation_commutes_with_product(
            pair in (2usize..=4).prop_flat_map(|n| (arb_poly_matrix(n), arb_poly_matrix(n))),
            pts in prop::collection::vec((-20i64..20, 1i64..9), 5),
        ) {
            let (a, b) = pair;
            let prod = &a * &b;
            for (p, q) in pts {
                let z0 = rat(p, q);
                prop_assert_eq!(prod.eval(&z0), &a.eval(&z0) * &b.eval(&z0));
            }
        }

        #[test]
        fn det_is_multiplicative(pair in (2usize..=4).prop_flat_map(|n| (arb_matrix(n), arb_matrix(n)))) {
            let (a, b) = pair;
            prop_assert_eq!((&a * &b).det(), a.det() * b.det());
        }
    }

    #[test]
    fn z_minus_matches_charpoly_at_points() {
        let a = Matrix::square(vec![vec![int(1), int(2)], vec![int(3), int(4)]]);
        let cp = PolyMatrix::z_minus(&a).det();
        assert_eq!(cp, Poly::new(vec![int(-2), int(-5), int(1)]));
    }
}
