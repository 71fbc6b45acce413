//! The product vector `w = (f1 f2, x f1' f2, x f1 f2', x^2 f1' f2')`, its
//! image `v = x^{gamma1 - 1} R P^{-1} w` and the gauge-transformed `u`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::exact::{scalar::to_f64, Matrix};
use crate::hg::{build_okubo_zero, build_p, build_product_system, build_r, spectral_form, HGParams};

use super::hyp::{hyp2f1, hyp2f1_full, Hyp2f1};

pub type CVec = Vec<Complex64>;

pub(crate) fn cmat(m: &Matrix) -> Vec<Vec<Complex64>> {
    m.rows()
        .iter()
        .map(|row| row.iter().map(|x| Complex64::new(to_f64(x), 0.0)).collect())
        .collect()
}

pub(crate) fn capply(m: &[Vec<Complex64>], v: &[Complex64]) -> CVec {
    m.iter().map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
}

pub(crate) fn norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

pub(crate) fn sub(a: &[Complex64], b: &[Complex64]) -> CVec {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn scale(v: &[Complex64], k: Complex64) -> CVec {
    v.iter().map(|x| x * k).collect()
}

fn pair(p: &HGParams, x: Complex64, terms: usize) -> Result<(Hyp2f1, Hyp2f1)> {
    let [a1, b1, a2, b2, g1, g2] = p.to_f64();
    Ok((
        hyp2f1_full(a1, b1, g1, x, terms)?,
        hyp2f1_full(a2, b2, g2, x, terms)?,
    ))
}

/// `w` and `dw/dx` at `x`.
#[derive(Clone, Debug, PartialEq)]
pub struct ProductVector {
    pub w: CVec,
    pub dw: CVec,
}

pub fn product_vector_w(p: &HGParams, x: Complex64, terms: usize) -> Result<ProductVector> {
    let (h1, h2) = pair(p, x, terms)?;
    let (f1, d1, s1) = (h1.value, h1.derivative, h1.second_derivative);
    let (f2, d2, s2) = (h2.value, h2.derivative, h2.second_derivative);
    let w = vec![f1 * f2, x * d1 * f2, x * f1 * d2, x * x * d1 * d2];
    let dw = vec![
        d1 * f2 + f1 * d2,
        d1 * f2 + x * (s1 * f2 + d1 * d2),
        f1 * d2 + x * (d1 * d2 + f1 * s2),
        2.0 * x * d1 * d2 + x * x * (s1 * d2 + d1 * s2),
    ];
    Ok(ProductVector { w, dw })
}

/// `|dw/dx - (H0/x + H1/(x-1)) w|`
pub fn w_residual(p: &HGParams, x: Complex64, terms: usize) -> Result<f64> {
    let pv = product_vector_w(p, x, terms)?;
    let sys = build_product_system(p);
    let h0 = capply(&cmat(&sys.residue_at_0), &pv.w);
    let h1 = capply(&cmat(&sys.residue_at_1), &pv.w);
    let rhs: CVec = h0.iter().zip(&h1).map(|(a, b)| a / x + b / (x - 1.0)).collect();
    Ok(norm(&sub(&pv.dw, &rhs)))
}

fn require_cut_free(x: Complex64) -> Result<()> {
    if x.im == 0.0 && x.re <= 0.0 {
        return Err(Error::OutsideDisc(format!("x = {x} lies on the branch cut (-inf, 0]")));
    }
    Ok(())
}

/// `v` computed as `x^{gamma1 - 1} R P^{-1} w`.
pub fn v_from_w(p: &HGParams, x: Complex64, terms: usize) -> Result<(CVec, CVec)> {
    require_cut_free(x)?;
    let pv = product_vector_w(p, x, terms)?;
    let rp = cmat(&(&build_r(p)? * &build_p(p).inverse()?));
    let e = to_f64(&p.gamma1) - 1.0;
    let xe = x.powf(e);
    let v = scale(&capply(&rp, &pv.w), xe);
    let dv: CVec = capply(&rp, &pv.w)
        .iter()
        .zip(capply(&rp, &pv.dw))
        .map(|(a, b)| e * xe / x * a + xe * b)
        .collect();
    Ok((v, dv))
}

/// `v` from the four products of parameter-shifted Gauss functions.
pub fn v_from_shifted(p: &HGParams, x: Complex64, terms: usize) -> Result<CVec> {
    require_cut_free(x)?;
    let [a1, b1, a2, b2, g1, g2] = p.to_f64();
    let f = |a, b, g| hyp2f1(a, b, g, x, terms);
    let a1s = f(a1 + 1.0, b1, g1)?;
    let b1s = f(a1, b1 + 1.0, g1)?;
    let a2s = f(a2 + 1.0, b2, g2)?;
    let b2s = f(a2, b2 + 1.0, g2)?;
    let xe = x.powf(g1 - 1.0);
    Ok(vec![xe * a1s * a2s, xe * b1s * b2s, xe * a1s * b2s, xe * b1s * a2s])
}

#[derive(Clone, Debug, PartialEq)]
pub struct VReport {
    pub via_w: CVec,
    pub via_shifted: CVec,
    pub relative_difference: f64,
    pub residual: f64,
}

/// Both computations of `v` and the residual of `v` in its system.
pub fn v_vector(p: &HGParams, x: Complex64, terms: usize) -> Result<VReport> {
    p.require_okubo()?;
    let (v, dv) = v_from_w(p, x, terms)?;
    let other = v_from_shifted(p, x, terms)?;
    let r = build_r(p)?;
    let rinv = r.inverse()?;
    let lam = spectral_form(p);
    let rc = cmat(&r);
    let inner = capply(&cmat(&rinv), &capply(&cmat(&lam), &v));
    let scaled: CVec = inner
        .iter()
        .enumerate()
        .map(|(i, z)| if i < 2 { z / x } else { z / (x - 1.0) })
        .collect();
    let rhs = capply(&rc, &scaled);
    Ok(VReport {
        relative_difference: norm(&sub(&v, &other)) / norm(&other),
        residual: norm(&sub(&dv, &rhs)),
        via_w: v,
        via_shifted: other,
    })
}

/// `|(xI - T) u' - A0 u|` for `u = P^{-1} x^{-lambda(----)} w`.
pub fn u_chain_residual(p: &HGParams, x: Complex64, terms: usize) -> Result<f64> {
    require_cut_free(x)?;
    let (pm, a0) = build_okubo_zero(p)?;
    let pinv = cmat(&pm.inverse()?);
    let lam = to_f64(&p.lam("----"));
    let pv = product_vector_w(p, x, terms)?;
    let xl = x.powf(-lam);
    let u = scale(&capply(&pinv, &pv.w), xl);
    let du: CVec = capply(&pinv, &pv.w)
        .iter()
        .zip(capply(&pinv, &pv.dw))
        .map(|(a, b)| -lam * xl / x * a + xl * b)
        .collect();
    let lhs: CVec = du
        .iter()
        .enumerate()
        .map(|(i, z)| if i < 2 { x * z } else { (x - 1.0) * z })
        .collect();
    let rhs = capply(&cmat(a0.coefficient()), &u);
    Ok(norm(&sub(&lhs, &rhs)))
}
