use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{format_scalar, int, parse_scalar, rat, Scalar};

use super::lambda::{lambda, LambdaIndex};

/// Parameters of `f_j = 2F1(alpha_j, beta_j, gamma_j; x)`, `j = 1, 2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HGParams {
    pub alpha1: Scalar,
    pub beta1: Scalar,
    pub alpha2: Scalar,
    pub beta2: Scalar,
    pub gamma1: Scalar,
    pub gamma2: Scalar,
}

impl HGParams {
    pub fn generic(
        alpha1: Scalar,
        beta1: Scalar,
        alpha2: Scalar,
        beta2: Scalar,
        gamma1: Scalar,
        gamma2: Scalar,
    ) -> Self {
        HGParams {
            alpha1,
            beta1,
            alpha2,
            beta2,
            gamma1,
            gamma2,
        }
    }

    /// Sets `gamma1 = gamma2 = (alpha1 + alpha2 + beta1 + beta2)/2 + 1`, the
    /// case in which the product system reduces to Okubo normal form.
    pub fn okubo(alpha1: Scalar, beta1: Scalar, alpha2: Scalar, beta2: Scalar) -> Self {
        let gamma = okubo_gamma(&alpha1, &beta1, &alpha2, &beta2);
        HGParams {
            alpha1,
            beta1,
            alpha2,
            beta2,
            gamma1: gamma.clone(),
            gamma2: gamma,
        }
    }

    pub fn is_okubo_constrained(&self) -> bool {
        let g = okubo_gamma(&self.alpha1, &self.beta1, &self.alpha2, &self.beta2);
        self.gamma1 == g && self.gamma2 == g
    }

    pub fn require_okubo(&self) -> Result<()> {
        if self.is_okubo_constrained() {
            Ok(())
        } else {
            Err(Error::NotOkuboConstrained)
        }
    }

    pub fn lambda(&self, idx: LambdaIndex) -> Scalar {
        lambda(idx, self)
    }

    /// Shorthand for `lambda` with a literal sign string such as `"+-0+"`.
    /// Panics on a malformed literal.
    pub fn lam(&self, signs: &str) -> Scalar {
        lambda(signs.parse().expect("valid lambda index literal"), self)
    }

    pub fn to_f64(&self) -> [f64; 6] {
        use crate::exact::scalar::to_f64;
        [
            to_f64(&self.alpha1),
            to_f64(&self.beta1),
            to_f64(&self.alpha2),
            to_f64(&self.beta2),
            to_f64(&self.gamma1),
            to_f64(&self.gamma2),
        ]
    }
}

pub fn okubo_gamma(alpha1: &Scalar, beta1: &Scalar, alpha2: &Scalar, beta2: &Scalar) -> Scalar {
    (alpha1 + alpha2 + beta1 + beta2) * rat(1, 2) + int(1)
}

/// `"okubo"` or an explicit pair of gammas.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GammaMode {
    Named(String),
    Explicit([String; 2]),
}

/// On-disk parameter file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamFile {
    pub alpha1: String,
    pub beta1: String,
    pub alpha2: String,
    pub beta2: String,
    pub gamma_mode: GammaMode,
}

impl ParamFile {
    pub fn to_params(&self) -> Result<HGParams> {
        let a1 = parse_scalar(&self.alpha1)?;
        let b1 = parse_scalar(&self.beta1)?;
        let a2 = parse_scalar(&self.alpha2)?;
        let b2 = parse_scalar(&self.beta2)?;
        match &self.gamma_mode {
            GammaMode::Named(name) if name == "okubo" => Ok(HGParams::okubo(a1, b1, a2, b2)),
            GammaMode::Named(other) => Err(Error::Parse(format!(
                "gamma_mode must be \"okubo\" or a pair of rationals, got {other:?}"
            ))),
            GammaMode::Explicit([g1, g2]) => Ok(HGParams::generic(
                a1,
                b1,
                a2,
                b2,
                parse_scalar(g1)?,
                parse_scalar(g2)?,
            )),
        }
    }

    pub fn from_params(p: &HGParams) -> Self {
        let gamma_mode = if p.is_okubo_constrained() {
            GammaMode::Named("okubo".into())
        } else {
            GammaMode::Explicit([format_scalar(&p.gamma1), format_scalar(&p.gamma2)])
        };
        ParamFile {
            alpha1: format_scalar(&p.alpha1),
            beta1: format_scalar(&p.beta1),
            alpha2: format_scalar(&p.alpha2),
            beta2: format_scalar(&p.beta2),
            gamma_mode,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn okubo_gamma_value() {
        let p = HGParams::okubo(rat(1, 3), rat(1, 5), rat(1, 7), rat(1, 11));
        let g = (rat(1, 3) + rat(1, 5) + rat(1, 7) + rat(1, 11)) / int(2) + int(1);
        assert_eq!(p.gamma1, g);
        assert!(p.is_okubo_constrained());
        let q = HGParams { gamma2: int(3), ..p };
        assert!(!q.is_okubo_constrained());
    }

    #[test]
    fn param_file_modes() {
        let text = r#"{"alpha1":"1/3","beta1":"1/5","alpha2":"1/7","beta2":"1/11","gamma_mode":"okubo"}"#;
        let f: ParamFile = serde_json::from_str(text).unwrap();
        let p = f.to_params().unwrap();
        assert!(p.is_okubo_constrained());
        assert_eq!(ParamFile::from_params(&p), f);

        let text = r#"{"alpha1":"1/3","beta1":"1/5","alpha2":"1/7","beta2":"1/11","gamma_mode":["2/3","5/4"]}"#;
        let p = serde_json::from_str::<ParamFile>(text).unwrap().to_params().unwrap();
        assert_eq!(p.gamma2, rat(5, 4));

        let text = r#"{"alpha1":"1/3","beta1":"1/5","alpha2":"1/7","beta2":"1/11","gamma_mode":["abc","1"]}"#;
        assert!(serde_json::from_str::<ParamFile>(text).unwrap().to_params().is_err());
        let text = r#"{"alpha1":"1/3","beta1":"1/5","alpha2":"1/7","beta2":"1/11","gamma_mode":"other"}"#;
        assert!(serde_json::from_str::<ParamFile>(text).unwrap().to_params().is_err());
    }
}
