//! Frobenius series of `(xI - T) y' = A y` at `x = 0`, `1` and infinity.
//!
//! At `x = 1` the step matrix `T - I` is singular: rows 1-2 of the
//! recurrence give the top block of the next coefficient and rows 3-4
//! become the constraint `((r+rho) I - A22) g34(r) = A21 g12(r)`, which
//! fixes the bottom block. At `x = 0` the roles of the blocks swap.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{int, scalar::to_f64, Matrix, Scalar};
use crate::hg::OkuboSystem;

use super::field::{apply, convert, solve, FMatrix, Field};
use super::vectors::{capply, cmat, norm, sub, CVec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum BasePoint {
    #[serde(rename = "0")]
    Zero,
    #[serde(rename = "1")]
    One,
    #[serde(rename = "inf")]
    Infinity,
}

impl FromStr for BasePoint {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "0" => Ok(BasePoint::Zero),
            "1" => Ok(BasePoint::One),
            "inf" | "infinity" => Ok(BasePoint::Infinity),
            other => Err(Error::Parse(format!("base point must be 0, 1 or inf, got {other:?}"))),
        }
    }
}

impl fmt::Display for BasePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BasePoint::Zero => "0",
            BasePoint::One => "1",
            BasePoint::Infinity => "inf",
        })
    }
}

/// Expansion variable of a series.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Variable {
    X,
    XMinus1,
    InverseXMinus1,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Exact,
    Float,
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(Mode::Exact),
            "float" => Ok(Mode::Float),
            other => Err(Error::Parse(format!("mode must be exact or float, got {other:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Coefficients {
    Exact(Vec<Vec<Scalar>>),
    Float(Vec<Vec<f64>>),
}

impl Coefficients {
    pub fn len(&self) -> usize {
        match self {
            Coefficients::Exact(c) => c.len(),
            Coefficients::Float(c) => c.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn to_f64(&self) -> Vec<Vec<f64>> {
        match self {
            Coefficients::Exact(c) => c.iter().map(|v| v.iter().map(to_f64).collect()).collect(),
            Coefficients::Float(c) => c.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SeriesSolution {
    pub base_point: BasePoint,
    pub exponent: Scalar,
    pub coeffs: Coefficients,
    pub variable: Variable,
}

/// Exponents at a base point, in index order: `0, +e, -e` at `0` and `1`
/// (`e = a` resp. `b`) and `c, -c, d, -d` at infinity.
pub fn exponents_at(system: &OkuboSystem, base: BasePoint) -> Vec<Scalar> {
    let e = system.exponents();
    match base {
        BasePoint::Zero => vec![int(0), e.a.clone(), -&e.a],
        BasePoint::One => vec![int(0), e.b.clone(), -&e.b],
        BasePoint::Infinity => vec![e.c.clone(), -&e.c, e.d.clone(), -&e.d],
    }
}

/// Initial vectors: the exact kernel of the indicial constraints.
fn initial_vectors(a: &Matrix, base: BasePoint, rho: &Scalar) -> Result<Vec<Vec<Scalar>>> {
    let shifted = &Matrix::scalar(4, rho.clone()) - a;
    let (kernel, expected) = match base {
        BasePoint::Infinity => ((&Matrix::scalar(4, rho.clone()) + a).null_space(), 1),
        BasePoint::One | BasePoint::Zero => {
            // free block: rows 1-2 at x = 1, rows 3-4 at x = 0
            let free = if base == BasePoint::One { 0 } else { 2 };
            let mut m = shifted.clone();
            for i in free..free + 2 {
                for j in 0..4 {
                    m.set(i, j, if i == j { rho.clone() } else { Scalar::zero() });
                }
            }
            (m.null_space(), if rho.is_zero() { 2 } else { 1 })
        }
    };
    if kernel.len() != expected {
        return Err(Error::InconsistentConstraint(format!(
            "initial constraint at {base} with exponent {rho} has a {}-dimensional solution space, expected {expected}",
            kernel.len()
        )));
    }
    Ok(kernel)
}

fn sub_block<F: Field>(m: &FMatrix<F>, r: usize, c: usize) -> FMatrix<F> {
    (r..r + 2).map(|i| m[i][c..c + 2].to_vec()).collect()
}

fn shifted_identity<F: Field>(m: &FMatrix<F>, s: &F, sign: F) -> FMatrix<F> {
    m.iter()
        .enumerate()
        .map(|(i, row)| {
            row.iter()
                .enumerate()
                .map(|(j, x)| {
                    let v = sign.clone() * x.clone();
                    if i == j {
                        s.clone() + v
                    } else {
                        v
                    }
                })
                .collect()
        })
        .collect()
}

fn singular_step(base: BasePoint, index: usize) -> Error {
    Error::InconsistentConstraint(format!("singular step matrix at {base}, index {index}"))
}

/// Coefficients `g(0..terms)` (or `h`) from one initial vector.
pub fn recurrence<F: Field>(a: &Matrix, base: BasePoint, rho: &Scalar, g0: &[Scalar], terms: usize) -> Result<Vec<Vec<F>>> {
    let am: FMatrix<F> = convert(a);
    let rho_f = F::from_scalar(rho);
    let mut out: Vec<Vec<F>> = Vec::with_capacity(terms);
    if terms == 0 {
        return Ok(out);
    }
    out.push(g0.iter().map(F::from_scalar).collect());
    for r in 0..terms.saturating_sub(1) {
        let cur = &out[r];
        let z = F::from_i64(r as i64) + rho_f.clone();
        let z1 = z.clone() + F::one();
        let next = match base {
            BasePoint::One | BasePoint::Zero => {
                // v = (z I - A) g(r)
                let v = apply(&shifted_identity(&am, &z, -F::one()), cur);
                let (step, other) = if base == BasePoint::One { (0, 2) } else { (2, 0) };
                let mut next = vec![F::zero(); 4];
                for i in step..step + 2 {
                    next[i] = if base == BasePoint::One {
                        -v[i].clone() / z1.clone()
                    } else {
                        v[i].clone() / z1.clone()
                    };
                }
                // ((z+1) I - A_oo) g_o(r+1) = A_os g_s(r+1)
                let lhs = shifted_identity(&sub_block(&am, other, other), &z1, -F::one());
                let rhs = apply(&sub_block(&am, other, step), &next[step..step + 2]);
                let solved = solve(&lhs, &rhs).ok_or_else(|| singular_step(base, r + 1))?;
                next[other] = solved[0].clone();
                next[other + 1] = solved[1].clone();
                next
            }
            BasePoint::Infinity => {
                let lhs = shifted_identity(&am, &z1, F::one());
                let rhs: Vec<F> = (0..4)
                    .map(|i| if i < 2 { -(z.clone() * cur[i].clone()) } else { F::zero() })
                    .collect();
                solve(&lhs, &rhs).ok_or_else(|| singular_step(base, r + 1))?
            }
        };
        out.push(next);
    }
    Ok(out)
}

fn variable_for(base: BasePoint) -> Variable {
    match base {
        BasePoint::Zero => Variable::X,
        BasePoint::One => Variable::XMinus1,
        BasePoint::Infinity => Variable::InverseXMinus1,
    }
}

/// All series with the given exponent; two of them at the double exponent 0.
pub fn local_series(
    system: &OkuboSystem,
    base: BasePoint,
    exponent_index: usize,
    terms: usize,
    mode: Mode,
) -> Result<Vec<SeriesSolution>> {
    let exps = exponents_at(system, base);
    let rho = exps.get(exponent_index).cloned().ok_or(Error::ExponentIndex {
        index: exponent_index,
        count: exps.len(),
    })?;
    let a = system.coefficient();
    initial_vectors(a, base, &rho)?
        .iter()
        .map(|g0| {
            let coeffs = match mode {
                Mode::Exact => Coefficients::Exact(recurrence::<Scalar>(a, base, &rho, g0, terms)?),
                Mode::Float => Coefficients::Float(recurrence::<f64>(a, base, &rho, g0, terms)?),
            };
            Ok(SeriesSolution {
                base_point: base,
                exponent: rho.clone(),
                coeffs,
                variable: variable_for(base),
            })
        })
        .collect()
}

/// Defect of the defining relations (initial condition included), by index.
fn defects<F: Field>(a: &Matrix, base: BasePoint, rho: &Scalar, g: &[Vec<F>]) -> Vec<Vec<F>> {
    let am: FMatrix<F> = convert(a);
    let rho_f = F::from_scalar(rho);
    let t_diag: [F; 4] = [F::zero(), F::zero(), F::one(), F::one()];
    let mut out = Vec::with_capacity(g.len());
    // initial relation
    out.push(match base {
        BasePoint::One => (0..4).map(|i| rho_f.clone() * (t_diag[i].clone() - F::one()) * g[0][i].clone()).collect(),
        BasePoint::Zero => (0..4).map(|i| rho_f.clone() * t_diag[i].clone() * g[0][i].clone()).collect(),
        BasePoint::Infinity => apply(&shifted_identity(&am, &rho_f, F::one()), &g[0]),
    });
    for r in 0..g.len() {
        let z = F::from_i64(r as i64) + rho_f.clone();
        let z1 = z.clone() + F::one();
        let row: Vec<F> = match base {
            BasePoint::One | BasePoint::Zero => {
                let rhs = apply(&shifted_identity(&am, &z, -F::one()), &g[r]);
                (0..4)
                    .map(|i| {
                        let step = if base == BasePoint::One {
                            t_diag[i].clone() - F::one()
                        } else {
                            t_diag[i].clone()
                        };
                        let lhs = match g.get(r + 1) {
                            Some(next) => z1.clone() * step * next[i].clone(),
                            // the last index only carries the block constraint
                            None if step.is_zero() => F::zero(),
                            None => rhs[i].clone(),
                        };
                        lhs - rhs[i].clone()
                    })
                    .collect()
            }
            BasePoint::Infinity => match g.get(r + 1) {
                Some(next) => {
                    let lhs = apply(&shifted_identity(&am, &z1, F::one()), next);
                    (0..4)
                        .map(|i| lhs[i].clone() - z.clone() * (t_diag[i].clone() - F::one()) * g[r][i].clone())
                        .collect()
                }
                None => vec![F::zero(); 4],
            },
        };
        out.push(row);
    }
    out
}

/// Whether every relation holds with zero error (exact coefficients only).
pub fn recurrence_holds_exactly(system: &OkuboSystem, sol: &SeriesSolution) -> Result<bool> {
    match &sol.coeffs {
        Coefficients::Exact(g) => Ok(defects::<Scalar>(system.coefficient(), sol.base_point, &sol.exponent, g)
            .iter()
            .all(|row| row.iter().all(Zero::is_zero))),
        Coefficients::Float(_) => Err(Error::InvalidInput("exact check requested on float coefficients".into())),
    }
}

/// Largest relation defect relative to the size of the coefficients involved.
pub fn recurrence_defect(system: &OkuboSystem, sol: &SeriesSolution) -> f64 {
    let g = sol.coeffs.to_f64();
    let scale = |r: usize| {
        let n = |v: &Vec<f64>| v.iter().map(|x| x * x).sum::<f64>().sqrt();
        let here = g.get(r).map(n).unwrap_or(0.0);
        let next = g.get(r + 1).map(n).unwrap_or(0.0);
        (here.max(next) * (r as f64 + 2.0)).max(f64::MIN_POSITIVE)
    };
    defects::<f64>(system.coefficient(), sol.base_point, &sol.exponent, &g)
        .iter()
        .enumerate()
        .map(|(k, row)| {
            let r = k.saturating_sub(1);
            row.iter().map(|x| x.abs()).fold(0.0, f64::max) / scale(r)
        })
        .fold(0.0, f64::max)
}

/// Declared summation region of each base point.
pub fn check_disc(base: BasePoint, x: Complex64) -> Result<()> {
    // slack absorbs rounding of points placed exactly on a boundary circle
    const SLACK: f64 = 1e-12;
    let (ok, what) = match base {
        BasePoint::Zero => (x.norm() <= 0.6 + SLACK && x.norm() > 0.0, "0 < |x| <= 0.6"),
        BasePoint::One => {
            let t = (x - 1.0).norm();
            (t <= 0.6 + SLACK && t > 0.0, "0 < |x - 1| <= 0.6")
        }
        BasePoint::Infinity => ((x - 1.0).norm() >= 1.7 - SLACK, "|x - 1| >= 1.7"),
    };
    if ok {
        Ok(())
    } else {
        Err(Error::OutsideDisc(format!("x = {x} violates {what}")))
    }
}

/// `(y, y')` at `x`, principal branch for the leading power.
pub fn evaluate(sol: &SeriesSolution, x: Complex64) -> Result<(CVec, CVec)> {
    check_disc(sol.base_point, x)?;
    let g = sol.coeffs.to_f64();
    let rho = to_f64(&sol.exponent);
    let t = match sol.base_point {
        BasePoint::Zero => x,
        _ => x - 1.0,
    };
    let mut y = vec![Complex64::zero(); 4];
    let mut dy = vec![Complex64::zero(); 4];
    match sol.base_point {
        BasePoint::Zero | BasePoint::One => {
            let mut p = Complex64::new(1.0, 0.0);
            for (r, gr) in g.iter().enumerate() {
                let k = r as f64 + rho;
                for i in 0..4 {
                    y[i] += gr[i] * p;
                    dy[i] += k * gr[i] * p;
                }
                p *= t;
            }
            let lead = t.powf(rho);
            for i in 0..4 {
                y[i] *= lead;
                dy[i] *= lead / t;
            }
        }
        BasePoint::Infinity => {
            let inv = 1.0 / t;
            let mut p = Complex64::new(1.0, 0.0);
            for (s, hs) in g.iter().enumerate() {
                let k = s as f64 + rho;
                for i in 0..4 {
                    y[i] += hs[i] * p;
                    dy[i] -= k * hs[i] * p;
                }
                p *= inv;
            }
            let lead = t.powf(-rho);
            for i in 0..4 {
                y[i] *= lead;
                dy[i] *= lead * inv;
            }
        }
    }
    Ok((y, dy))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EvalReport {
    #[serde(skip)]
    pub sample_points: Vec<Complex64>,
    pub max_residual: f64,
    pub terms_used: usize,
}

/// `|(xI - T) y' - A y|` for an arbitrary solution candidate.
pub fn system_residual(a: &Matrix, x: Complex64, y: &[Complex64], dy: &[Complex64]) -> f64 {
    let lhs: CVec = dy
        .iter()
        .enumerate()
        .map(|(i, z)| if i < 2 { x * z } else { (x - 1.0) * z })
        .collect();
    norm(&sub(&lhs, &capply(&cmat(a), y)))
}

pub fn residual_report(system: &OkuboSystem, sol: &SeriesSolution, samples: &[Complex64]) -> Result<EvalReport> {
    let mut max_residual = 0.0f64;
    for &x in samples {
        let (y, dy) = evaluate(sol, x)?;
        max_residual = max_residual.max(system_residual(system.coefficient(), x, &y, &dy));
    }
    Ok(EvalReport {
        sample_points: samples.to_vec(),
        max_residual,
        terms_used: sol.coeffs.len(),
    })
}

/// Sample points on a circle around the base point (radius `|x - 1|` at
/// infinity).
pub fn circle_samples(base: BasePoint, radius: f64, count: usize) -> Vec<Complex64> {
    let center = match base {
        BasePoint::Zero => Complex64::zero(),
        _ => Complex64::new(1.0, 0.0),
    };
    (0..count)
        .map(|k| {
            // offset keeps samples off the negative real axis of the local variable
            let theta = std::f64::consts::TAU * (k as f64 + 0.5) / count as f64;
            center + Complex64::from_polar(radius, theta)
        })
        .collect()
}
