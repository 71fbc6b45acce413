//! Cubic blocks of `adj(zI - A1)`, the reduced 2x2 difference systems and
//! the "substantially the same" test.

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{format_scalar, int, j2, rat, Matrix, Poly, PolyMatrix, Scalar};

use super::chart::{epsilon_delta, AccessoryChart, EpsilonDelta};

/// `A11(z) = z^3 I + z^2 Q11 + z R11 + S11` and
/// `adj A11(z) = z^3 I + z^2 Qt11 + z Rt11 + St11`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CubicBlockDecomposition {
    pub q11: Matrix,
    pub r11: Matrix,
    pub s11: Matrix,
    pub qt11: Matrix,
    pub rt11: Matrix,
    pub st11: Matrix,
}

fn cubic(q: &Matrix, r: &Matrix, s: &Matrix) -> PolyMatrix {
    PolyMatrix::from_coefficients(&[s.clone(), r.clone(), q.clone(), Matrix::identity(2)])
}

impl CubicBlockDecomposition {
    pub fn a11(&self) -> PolyMatrix {
        cubic(&self.q11, &self.r11, &self.s11)
    }

    pub fn a11_adjugate(&self) -> PolyMatrix {
        cubic(&self.qt11, &self.rt11, &self.st11)
    }
}

fn antidiag(r1: &Scalar, r2: &Scalar) -> Matrix {
    Matrix::square(vec![vec![int(0), r2.clone()], vec![r1.clone(), int(0)]])
}

fn delta_pattern(a: &Scalar, c: &Scalar) -> Matrix {
    Matrix::square(vec![vec![c.clone(), a + c], vec![a - c, -c]])
}

/// Closed form of `A'12 A'21`, valid under the d-condition.
pub fn a12_a21_closed_form(chart: &AccessoryChart) -> Result<Matrix> {
    let ed = epsilon_delta(chart)?;
    let (a, b, c, d) = (&chart.a, &chart.b, &chart.c, &chart.d);
    let diag = (c * c + d * d - a * a - b * b) * rat(1, 2);
    Ok(&(&Matrix::scalar(2, diag) + &antidiag(&chart.r[0], &chart.r[1]).scale(&ed.epsilon_prime))
        - &delta_pattern(a, c).scale(&(b * &ed.delta_prime)))
}

/// The closed-form block decomposition.
pub fn cubic_blocks(chart: &AccessoryChart) -> Result<CubicBlockDecomposition> {
    chart.validate()?;
    let ed = epsilon_delta(chart)?;
    let (a, b, c, d) = (&chart.a, &chart.b, &chart.c, &chart.d);
    let a12 = chart.a12_prime()?;
    let a21 = chart.a21_prime()?;
    let j = j2();
    let half = (a * a - b * b - c * c - d * d) * rat(1, 2);
    let anti = antidiag(&chart.r[0], &chart.r[1]).scale(&ed.epsilon_prime);
    let pattern = delta_pattern(a, c).scale(&(b * &ed.delta_prime));
    let base = Matrix::scalar(2, half);
    let bajb = (&(&a12 * &j) * &a21).scale(b);
    let ab2j = j.scale(&(a * b * b));
    let abc = Matrix::scalar(2, int(2) * a * b * c * &ed.delta_prime);
    Ok(CubicBlockDecomposition {
        q11: j.scale(a),
        r11: &(&base + &anti) - &pattern,
        s11: &(&bajb - &ab2j) - &abc,
        qt11: j.scale(&-a),
        rt11: &(&base - &anti) + &pattern,
        st11: &ab2j - &bajb,
    })
}

/// `adj(zI - A1)` for any 4x4 `A1`.
pub fn resolvent_adjugate(a1: &Matrix) -> PolyMatrix {
    PolyMatrix::z_minus(a1).adjugate()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PointPair {
    OneAndInf,
    ZeroAndInf,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Direction {
    ForwardInZ,
    BackwardInZ,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SystemLabel {
    GAt1,
    HAtInf,
    GAt0,
    HAtInfDual,
}

/// `f(z + 1) = numerator(z) / scalar_denominator(z) f(z)` with
/// `numerator = prefactor * cubic` and `cubic` monic of degree 3.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DifferenceSystem2 {
    pub numerator: PolyMatrix,
    pub scalar_denominator: Poly,
    pub direction: Direction,
    pub label: SystemLabel,
    pub cubic: PolyMatrix,
    pub prefactor: Poly,
}

impl DifferenceSystem2 {
    fn new(label: SystemLabel, cubic: PolyMatrix, prefactor: Poly, scalar_denominator: Poly) -> Self {
        DifferenceSystem2 {
            numerator: cubic.scale_poly(&prefactor),
            scalar_denominator,
            direction: Direction::ForwardInZ,
            label,
            cubic,
            prefactor,
        }
    }

    /// `f(z0 + 1)` from `f(z0)`; `None` at a pole.
    pub fn step(&self, z0: &Scalar, f: &[Scalar]) -> Option<Vec<Scalar>> {
        let den = self.scalar_denominator.eval(z0);
        if den.is_zero() {
            return None;
        }
        Some(self.numerator.eval(z0).apply(f).into_iter().map(|x| x / &den).collect())
    }
}

fn z_plus(k: i64) -> Poly {
    Poly::new(vec![int(k), int(1)])
}

/// The g/h pair for the requested singular points.
pub fn difference_systems(
    chart: &AccessoryChart,
    pair: PointPair,
) -> Result<(DifferenceSystem2, DifferenceSystem2)> {
    chart.validate()?;
    let adj = resolvent_adjugate(&chart.a1_matrix()?);
    let cd = Poly::difference_of_squares(&chart.c) * Poly::difference_of_squares(&chart.d);
    let (block, e, g_label, h_label, g_pref, h_pref) = match pair {
        PointPair::OneAndInf => (
            adj.block(0, 0, 2),
            &chart.b,
            SystemLabel::GAt1,
            SystemLabel::HAtInf,
            Poly::constant(int(-1)),
            -z_plus(-1),
        ),
        PointPair::ZeroAndInf => (
            adj.block(2, 2, 2),
            &chart.a,
            SystemLabel::GAt0,
            SystemLabel::HAtInfDual,
            Poly::one(),
            z_plus(-1),
        ),
    };
    let g_cubic = block.adjugate();
    let h_cubic = -&block.reflect();
    let g = DifferenceSystem2::new(g_label, g_cubic, g_pref, z_plus(1) * Poly::difference_of_squares(e));
    let h = DifferenceSystem2::new(h_label, h_cubic, h_pref, cd);
    Ok((g, h))
}

/// `c_jk b_lm - b_jk c_lm` for one pair of entry positions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossProduct {
    pub first: (usize, usize),
    pub second: (usize, usize),
    pub poly: Poly,
}

const POSITIONS: [(usize, usize); 4] = [(0, 0), (0, 1), (1, 0), (1, 1)];

/// All six cross products of the two cubic matrices.
pub fn cross_products(b: &PolyMatrix, c: &PolyMatrix) -> Vec<CrossProduct> {
    let mut out = Vec::with_capacity(6);
    for (i, &(j, k)) in POSITIONS.iter().enumerate() {
        for &(l, m) in &POSITIONS[i + 1..] {
            let poly = c.get(j, k) * b.get(l, m) - b.get(j, k) * c.get(l, m);
            out.push(CrossProduct {
                first: (j, k),
                second: (l, m),
                poly,
            });
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SameVerdict {
    pub verdict: bool,
    pub epsilon_delta: EpsilonDelta,
    pub cross_products: Vec<CrossProduct>,
}

impl SameVerdict {
    pub fn nonzero_cross_products(&self) -> Vec<&CrossProduct> {
        self.cross_products.iter().filter(|c| !c.poly.is_zero()).collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let minors: Vec<_> = self
            .nonzero_cross_products()
            .into_iter()
            .map(|c| {
                serde_json::json!({
                    "first": [c.first.0 + 1, c.first.1 + 1],
                    "second": [c.second.0 + 1, c.second.1 + 1],
                    "coefficients": c.poly.coeffs().iter().map(format_scalar).collect::<Vec<_>>(),
                })
            })
            .collect();
        serde_json::json!({
            "verdict": self.verdict,
            "epsilon": format_scalar(&self.epsilon_delta.epsilon),
            "delta": format_scalar(&self.epsilon_delta.delta),
            "nonzero_minors": minors,
        })
    }
}

fn same_for(chart: &AccessoryChart, pair: PointPair) -> Result<SameVerdict> {
    let (g, h) = difference_systems(chart, pair)?;
    let ed = epsilon_delta(chart)?;
    let cross = cross_products(&g.cubic, &h.cubic);
    let by_cross = cross.iter().all(|c| c.poly.is_zero());
    if by_cross != ed.both_zero() {
        return Err(Error::InternalDisagreement(format!(
            "cross products say {by_cross} but (epsilon, delta) = ({}, {})",
            format_scalar(&ed.epsilon),
            format_scalar(&ed.delta)
        )));
    }
    Ok(SameVerdict {
        verdict: by_cross,
        epsilon_delta: ed,
        cross_products: cross,
    })
}

/// Compares the g-system at `x = 1` with the h-system at infinity.
pub fn substantially_same(chart: &AccessoryChart) -> Result<SameVerdict> {
    same_for(chart, PointPair::OneAndInf)
}

/// Compares the g-system at `x = 0` with the h-system at infinity.
pub fn substantially_same_dual(chart: &AccessoryChart) -> Result<SameVerdict> {
    same_for(chart, PointPair::ZeroAndInf)
}

/// `z^4` coefficients of `c11 b22 - b11 c22`, `c12 b22 - b12 c22` and
/// `c21 b22 - b21 c22`, computed from the cubics.
pub fn leading_cross_coefficients(chart: &AccessoryChart) -> Result<[Scalar; 3]> {
    let (g, h) = difference_systems(chart, PointPair::OneAndInf)?;
    let (b, c) = (&g.cubic, &h.cubic);
    let cross = |j: usize, k: usize| (c.get(j, k) * b.get(1, 1) - b.get(j, k) * c.get(1, 1)).coeff(4);
    Ok([cross(0, 0), cross(0, 1), cross(1, 0)])
}

/// The same three coefficients in closed form.
pub fn leading_cross_closed_form(chart: &AccessoryChart) -> Result<[Scalar; 3]> {
    let ed = epsilon_delta(chart)?;
    let (a, b, c) = (&chart.a, &chart.b, &chart.c);
    let (ep, dp) = (&ed.epsilon_prime, &ed.delta_prime);
    Ok([
        int(-4) * b * c * dp,
        int(2) * (&chart.r[1] * ep - (a + c) * b * dp),
        int(2) * (&chart.r[0] * ep - (a - c) * b * dp),
    ])
}
