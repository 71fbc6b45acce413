//! The size-three system `dz/dx = (C0/x + C1/(x-1)) z`, obtained from the
//! system for `v` by an Euler transformation of order `lambda(--++)` and
//! reduction to the last three components.

pub mod integral;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{format_scalar, int, matrix::describe_entry, parse_scalar, rat, Matrix, Poly, Scalar};
use crate::hg::{build_okubo_zero, build_r, poly_with_roots, HGParams};

pub use integral::{df_integral_solution, integrand_parameters, DFIntegralReport, EulerTransformSpec};

/// Parameters `(a, b, c, g)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DFParams {
    pub a: Scalar,
    pub b: Scalar,
    pub c: Scalar,
    pub g: Scalar,
}

impl DFParams {
    pub fn new(a: Scalar, b: Scalar, c: Scalar, g: Scalar) -> Self {
        DFParams { a, b, c, g }
    }

    /// `alpha1 = a, alpha2 = c, beta1 = -b, beta2 = a + b + c + g`, okubo-constrained.
    pub fn to_hg(&self) -> HGParams {
        HGParams::okubo(
            self.a.clone(),
            -&self.b,
            self.c.clone(),
            &self.a + &self.b + &self.c + &self.g,
        )
    }

    /// Inverse of [`DFParams::to_hg`].
    pub fn from_hg(p: &HGParams) -> Self {
        let b = -&p.beta1;
        DFParams {
            g: &p.beta2 - &p.alpha1 - &b - &p.alpha2,
            a: p.alpha1.clone(),
            c: p.alpha2.clone(),
            b,
        }
    }

    pub fn to_file(&self) -> DFFile {
        DFFile {
            a: format_scalar(&self.a),
            b: format_scalar(&self.b),
            c: format_scalar(&self.c),
            g: format_scalar(&self.g),
            x: None,
            nodes: None,
        }
    }

    pub fn to_f64(&self) -> [f64; 4] {
        use crate::exact::scalar::to_f64;
        [to_f64(&self.a), to_f64(&self.b), to_f64(&self.c), to_f64(&self.g)]
    }
}

/// On-disk form; `x` and `nodes` only matter to the integral solution.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DFFile {
    pub a: String,
    pub b: String,
    pub c: String,
    pub g: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nodes: Option<usize>,
}

impl DFFile {
    pub fn to_params(&self) -> Result<DFParams> {
        Ok(DFParams::new(
            parse_scalar(&self.a)?,
            parse_scalar(&self.b)?,
            parse_scalar(&self.c)?,
            parse_scalar(&self.g)?,
        ))
    }
}

pub fn build_df(p: &DFParams) -> (Matrix, Matrix) {
    let (a, b, c, g) = (&p.a, &p.b, &p.c, &p.g);
    let two = int(2);
    let z = Scalar::zero;
    let c0 = Matrix::square(vec![
        vec![&two * a + &two * c + g, z(), b.clone()],
        vec![z(), z(), z()],
        vec![z(), &two * b + g, a + c],
    ]);
    let c1 = Matrix::square(vec![
        vec![z(), z(), z()],
        vec![z(), &two * b + &two * c + g, a.clone()],
        vec![&two * a + g, z(), b + c],
    ]);
    (c0, c1)
}

/// Characteristic polynomials of `C0 - (a+c)`, `C1 - (b+c)` and
/// `C0 + C1 - (a+b+2c)` against their stated spectra.
pub fn df_similarity_checks(p: &DFParams) -> [bool; 3] {
    let (a, b, c, g) = (&p.a, &p.b, &p.c, &p.g);
    let (c0, c1) = build_df(p);
    let shifted = |m: &Matrix, s: Scalar| m - &Matrix::scalar(3, s);
    [
        shifted(&c0, a + c).charpoly() == poly_with_roots(&[a + c + g, -(a + c), int(0)]),
        shifted(&c1, b + c).charpoly() == poly_with_roots(&[b + c + g, -(b + c), int(0)]),
        shifted(&(&c0 + &c1), a + b + int(2) * c).charpoly()
            == poly_with_roots(&[g.clone(), a + b + g, -(a + b)]),
    ]
}

/// `(K0, K1)` with the full 4x4 products they are cut from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EulerReduction {
    pub mu: Scalar,
    pub e0: Matrix,
    pub e1: Matrix,
    pub k0: Matrix,
    pub k1: Matrix,
}

fn lower_right3(m: &Matrix) -> Matrix {
    Matrix::square((1..4).map(|i| (1..4).map(|j| m.get(i, j).clone()).collect()).collect())
}

pub fn euler_reduce(p: &HGParams) -> Result<EulerReduction> {
    let (_, a0) = build_okubo_zero(p)?;
    let r = build_r(p)?;
    let rinv = r.inverse()?;
    let mu = p.lam("--++");
    let shifted = a0.coefficient() + &Matrix::scalar(4, mu.clone());
    let e0 = &(&(&r * &Matrix::diag(&[int(1), int(1), int(0), int(0)])) * &shifted) * &rinv;
    let e1 = &(&(&r * &Matrix::diag(&[int(0), int(0), int(1), int(1)])) * &shifted) * &rinv;
    for (name, m) in [("E0", &e0), ("E1", &e1)] {
        if m.column(0).iter().any(|x| !x.is_zero()) {
            return Err(Error::InternalDisagreement(format!("first column of {name} is not zero")));
        }
    }
    Ok(EulerReduction {
        k0: lower_right3(&e0),
        k1: lower_right3(&e1),
        mu,
        e0,
        e1,
    })
}

/// Spectral checks on `K0`, `K1` and the diagonal form of `K0 + K1`.
pub fn euler_reduction_checks(p: &HGParams, red: &EulerReduction) -> [bool; 3] {
    let (a1, a2, b1, b2) = (&p.alpha1, &p.alpha2, &p.beta1, &p.beta2);
    let sum = Matrix::diag(&[int(2) * p.lam("--++"), int(2) * p.lam("0-0+"), int(2) * p.lam("-0+0")]);
    let sum_alt = Matrix::diag(&[-a1 - a2 + b1 + b2, b2 - a2, b1 - a1]);
    [
        red.k0.charpoly() == poly_with_roots(&[b1 + b2, -a1 - a2, int(0)]),
        red.k1.charpoly() == poly_with_roots(&[b2 - a1, b1 - a2, int(0)]),
        &red.k0 + &red.k1 == sum && sum == sum_alt,
    ]
}

/// Right-eigenvector matrix `Q` with scale `p`.
pub fn build_q(params: &DFParams, p: &Scalar) -> Result<Matrix> {
    let (a, b, g) = (&params.a, &params.b, &params.g);
    let two = int(2);
    let d1 = &two * a + &two * b + g;
    let d2 = &two * a + g;
    if d1.is_zero() {
        return Err(Error::VanishingFactor("2a+2b+g".into()));
    }
    if d2.is_zero() {
        return Err(Error::VanishingFactor("2a+g".into()));
    }
    if p.is_zero() {
        return Err(Error::VanishingFactor("p".into()));
    }
    let q = -(a * (a + b + g)) / &d1 * p;
    let r = (a + b) / (&d2 * &d1) * p;
    let bb = &two * b + g;
    Ok(Matrix::square(vec![
        vec![-(b * p), q.clone(), -(b * &bb * &r)],
        vec![a * p, q.clone(), -(a * &d2 * &r)],
        vec![(a - b) * p, &two * &q, &d2 * &bb * &r],
    ]))
}

/// `Q` with `p = 1` written through lambda values of the associated parameters.
pub fn q_tilde_lambda_form(p: &HGParams) -> Result<Matrix> {
    let l = |s: &str| p.lam(s);
    let d = l("+--+");
    let d2 = l("+-++");
    if d.is_zero() {
        return Err(Error::VanishingFactor("lambda(+--+)".into()));
    }
    if d2.is_zero() {
        return Err(Error::VanishingFactor("lambda(+-++)".into()));
    }
    let two = int(2);
    let m = &two * l("+000") * l("0+0-") / &d;
    Ok(Matrix::square(vec![
        vec![&two * l("00+0"), m.clone(), -(&two * l("00+0") * l("+0-0") * l("+++-")) / (&d * &d2)],
        vec![&two * l("+000"), m.clone(), -(&two * l("+000") * l("+0-0")) / &d],
        vec![&two * l("+0+0"), &two * &m, -(&two * l("+0-0") * l("+++-")) / &d],
    ]))
}

/// The matrix multiplying the integrals in the integral solution.
pub fn integral_matrix(params: &DFParams) -> Result<Matrix> {
    build_q(params, &int(1))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DFVerdict {
    pub verdict: bool,
    pub mismatch: Option<String>,
    pub k0: Matrix,
    pub k1: Matrix,
    pub q_tilde: Matrix,
}

/// `Q K0 Q^{-1} + (a+c) I = C0` and `Q K1 Q^{-1} + (b+c) I = C1`.
pub fn df_transform_check(params: &DFParams) -> Result<DFVerdict> {
    let hg = params.to_hg();
    let red = euler_reduce(&hg)?;
    let q = build_q(params, &int(1))?;
    let qinv = q.inverse()?;
    let (c0, c1) = build_df(params);
    let (a, b, c) = (&params.a, &params.b, &params.c);
    let lhs0 = &(&(&q * &red.k0) * &qinv) + &Matrix::scalar(3, a + c);
    let lhs1 = &(&(&q * &red.k1) * &qinv) + &Matrix::scalar(3, b + c);
    let mut mismatch = None;
    for (name, lhs, rhs) in [("C0", &lhs0, &c0), ("C1", &lhs1, &c1)] {
        if mismatch.is_some() {
            break;
        }
        for i in 0..3 {
            for j in 0..3 {
                if lhs.get(i, j) != rhs.get(i, j) && mismatch.is_none() {
                    mismatch = Some(format!("{name}: {}", describe_entry(lhs, i, j)));
                }
            }
        }
    }
    Ok(DFVerdict {
        verdict: mismatch.is_none(),
        mismatch,
        k0: red.k0,
        k1: red.k1,
        q_tilde: q,
    })
}

/// Exact identities of the setting: `2 lambda(++00) = a + c`,
/// `2 lambda(0+-0) = b + c`, `gamma = a + c + g/2 + 1`, `lambda(--++) = g/2 = -lambda(++--)`.
pub fn setting_identities(params: &DFParams) -> [bool; 4] {
    let hg = params.to_hg();
    let (a, b, c, g) = (&params.a, &params.b, &params.c, &params.g);
    let half_g = g * rat(1, 2);
    [
        int(2) * hg.lam("++00") == a + c,
        int(2) * hg.lam("0+-0") == b + c,
        hg.gamma1 == a + c + &half_g + int(1),
        hg.lam("--++") == half_g && -hg.lam("++--") == half_g,
    ]
}

/// Characteristic polynomial helper for reports.
pub fn charpoly3(m: &Matrix) -> Poly {
    m.charpoly()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> DFParams {
        DFParams::new(rat(1, 3), rat(1, 5), rat(1, 7), rat(1, 11))
    }

    #[test]
    fn printed_entries() {
        let p = sample();
        let (c0, c1) = build_df(&p);
        assert_eq!(c0.get(0, 0), &(int(2) * &p.a + int(2) * &p.c + &p.g));
        assert!(c1.row(0).iter().all(Zero::is_zero));
        let q = build_q(&p, &int(1)).unwrap();
        assert_eq!(q.column(0), vec![-&p.b, p.a.clone(), &p.a - &p.b]);
        assert_eq!(integral_matrix(&p).unwrap().get(1, 0), &p.a);
    }

    #[test]
    fn round_trip_setting() {
        let p = sample();
        assert_eq!(DFParams::from_hg(&p.to_hg()), p);
        let text = r#"{"a":"1/3","b":"1/5","c":"1/7","g":"1/2","x":0.4,"nodes":256}"#;
        let f: DFFile = serde_json::from_str(text).unwrap();
        assert_eq!(f.nodes, Some(256));
        assert_eq!(f.to_params().unwrap().g, rat(1, 2));
        assert_eq!(p.to_file().to_params().unwrap(), p);
    }

    #[test]
    fn sample_checks() {
        let p = sample();
        assert_eq!(df_similarity_checks(&p), [true; 3]);
        let red = euler_reduce(&p.to_hg()).unwrap();
        assert_eq!(euler_reduction_checks(&p.to_hg(), &red), [true; 3]);
        let v = df_transform_check(&p).unwrap();
        assert!(v.verdict, "{:?}", v.mismatch);
        assert_eq!(q_tilde_lambda_form(&p.to_hg()).unwrap(), build_q(&p, &int(1)).unwrap());
        assert_eq!(setting_identities(&p), [true; 4]);
        let q = build_q(&p, &rat(3, 2)).unwrap();
        let (c0, c1) = build_df(&p);
        let shifted = &(&c0 + &c1) - &Matrix::scalar(3, &p.a + &p.b + int(2) * &p.c);
        let diag = Matrix::diag(&[p.g.clone(), &p.a + &p.b + &p.g, -(&p.a + &p.b)]);
        assert_eq!(shifted.conjugate_by(&q).unwrap(), diag);
    }
}
