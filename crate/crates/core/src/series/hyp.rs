//! Truncated Gauss series with term-wise derivatives.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// `F`, `F'`, `F''` at one point and the size of the last term kept.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Hyp2f1 {
    pub value: Complex64,
    pub derivative: Complex64,
    pub second_derivative: Complex64,
    pub tail_estimate: f64,
}

fn check_gamma(gamma: f64) -> Result<()> {
    if gamma <= 0.0 && gamma.fract() == 0.0 {
        Err(Error::InvalidGamma(gamma))
    } else {
        Ok(())
    }
}

/// First `terms` terms of `2F1(alpha, beta; gamma; x)` and its derivatives.
pub fn hyp2f1_full(alpha: f64, beta: f64, gamma: f64, x: Complex64, terms: usize) -> Result<Hyp2f1> {
    check_gamma(gamma)?;
    if x.norm() >= 1.0 {
        return Err(Error::OutsideDisc(format!("|x| = {} >= 1", x.norm())));
    }
    let mut out = Hyp2f1 {
        value: Complex64::new(0.0, 0.0),
        derivative: Complex64::new(0.0, 0.0),
        second_derivative: Complex64::new(0.0, 0.0),
        tail_estimate: 0.0,
    };
    // c_k x^k, with x^{k-1} and x^{k-2} tracked separately so x = 0 is safe
    let mut coeff = 1.0f64;
    let mut pow = [Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)];
    for k in 0..terms {
        let kf = k as f64;
        out.value += coeff * pow[2];
        out.derivative += coeff * kf * pow[1];
        out.second_derivative += coeff * kf * (kf - 1.0) * pow[0];
        out.tail_estimate = (coeff * pow[2]).norm();
        coeff *= (alpha + kf) * (beta + kf) / ((gamma + kf) * (kf + 1.0));
        pow = [pow[1], pow[2], pow[2] * x];
    }
    Ok(out)
}

pub fn hyp2f1(alpha: f64, beta: f64, gamma: f64, x: Complex64, terms: usize) -> Result<Complex64> {
    hyp2f1_full(alpha, beta, gamma, x, terms).map(|h| h.value)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn at_origin() {
        let h = hyp2f1_full(0.3, 0.7, 1.1, c(0.0), 10).unwrap();
        assert_eq!(h.value, c(1.0));
        assert!((h.derivative - c(0.3 * 0.7 / 1.1)).norm() < 1e-16);
    }

    #[test]
    fn logarithm() {
        let v = hyp2f1(1.0, 1.0, 2.0, c(0.5), 200).unwrap();
        assert!((v.re - 2.0 * std::f64::consts::LN_2).abs() < 1e-14);
    }

    #[test]
    fn contiguous_relation() {
        let (a, b, g, x) = (1.0 / 3.0, 1.0 / 5.0, 1.2, c(0.25));
        let h = hyp2f1_full(a, b, g, x, 80).unwrap();
        let shifted = hyp2f1(a + 1.0, b, g, x, 80).unwrap();
        assert!((h.value + x / a * h.derivative - shifted).norm() < 1e-12);
    }

    #[test]
    fn errors() {
        assert!(matches!(hyp2f1(1.0, 1.0, -2.0, c(0.1), 5), Err(Error::InvalidGamma(_))));
        assert!(matches!(hyp2f1(1.0, 1.0, 2.0, c(1.0), 5), Err(Error::OutsideDisc(_))));
    }
}
