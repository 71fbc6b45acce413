//! Charts `(a, b, c, d; r1 : r2 : r3 : r4)` on the space of Okubo systems
//! with exponents `(0, 0, +-a)`, `(0, 0, +-b)`, `(+-c, +-d)`.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{format_scalar, int, is_integer, j2, parse_scalar, Matrix, Scalar};
use crate::hg::{Exponents, OkuboSystem};

/// Fails on the first of `a, b, c, d, 2a, .., c +- d` that is an integer.
pub fn check_admissible(a: &Scalar, b: &Scalar, c: &Scalar, d: &Scalar) -> Result<()> {
    let two = int(2);
    let named = [
        ("a", a.clone()),
        ("b", b.clone()),
        ("c", c.clone()),
        ("d", d.clone()),
        ("2a", &two * a),
        ("2b", &two * b),
        ("2c", &two * c),
        ("2d", &two * d),
        ("a+b", a + b),
        ("a-b", a - b),
        ("a+c", a + c),
        ("a-c", a - c),
        ("a+d", a + d),
        ("a-d", a - d),
        ("b+c", b + c),
        ("b-c", b - c),
        ("b+d", b + d),
        ("b-d", b - d),
        ("c+d", c + d),
        ("c-d", c - d),
    ];
    for (name, value) in named {
        if is_integer(&value) {
            return Err(Error::Admissibility(format!(
                "{name} = {} is an integer",
                format_scalar(&value)
            )));
        }
    }
    Ok(())
}

pub fn is_admissible(a: &Scalar, b: &Scalar, c: &Scalar, d: &Scalar) -> bool {
    check_admissible(a, b, c, d).is_ok()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "ChartFile", into = "ChartFile")]
pub struct AccessoryChart {
    pub a: Scalar,
    pub b: Scalar,
    pub c: Scalar,
    pub d: Scalar,
    /// Projective coordinates; only their ratios matter.
    pub r: [Scalar; 4],
}

/// String form used on disk.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChartFile {
    pub a: String,
    pub b: String,
    pub c: String,
    pub d: String,
    pub r: [String; 4],
}

impl TryFrom<ChartFile> for AccessoryChart {
    type Error = Error;

    fn try_from(f: ChartFile) -> Result<Self> {
        let [r1, r2, r3, r4] = &f.r;
        Ok(AccessoryChart {
            a: parse_scalar(&f.a)?,
            b: parse_scalar(&f.b)?,
            c: parse_scalar(&f.c)?,
            d: parse_scalar(&f.d)?,
            r: [
                parse_scalar(r1)?,
                parse_scalar(r2)?,
                parse_scalar(r3)?,
                parse_scalar(r4)?,
            ],
        })
    }
}

impl From<AccessoryChart> for ChartFile {
    fn from(c: AccessoryChart) -> Self {
        ChartFile {
            a: format_scalar(&c.a),
            b: format_scalar(&c.b),
            c: format_scalar(&c.c),
            d: format_scalar(&c.d),
            r: c.r.map(|x| format_scalar(&x)),
        }
    }
}

fn sq(x: &Scalar) -> Scalar {
    x * x
}

impl AccessoryChart {
    pub fn new(a: Scalar, b: Scalar, c: Scalar, d: Scalar, r: [Scalar; 4]) -> Self {
        AccessoryChart { a, b, c, d, r }
    }

    /// Chart with `r4` solved from the d-condition, which is linear in `r4`.
    pub fn complete_r4(a: Scalar, b: Scalar, c: Scalar, d: Scalar, r123: [Scalar; 3]) -> Result<Self> {
        let [r1, r2, r3] = &r123;
        let ab4 = int(4) * &a * &b;
        let d2 = sq(&d);
        let coeff = -sq(&(&a - &b + &c)) * r1 + sq(&(&a + &b - &c)) * r2 - &ab4 * r3 + &d2 * (r1 - r2);
        let constant = sq(&(&a + &b + &c)) * r1 * r3 - sq(&(&a - &b - &c)) * r2 * r3 - &ab4 * r1 * r2
            - &d2 * (r1 - r2) * r3;
        if coeff.is_zero() {
            return Err(Error::DegenerateChart(
                "d-condition does not determine r4 (its r4-coefficient vanishes)".into(),
            ));
        }
        let r4 = -constant / coeff;
        let [r1, r2, r3] = r123;
        let chart = AccessoryChart::new(a, b, c, d, [r1, r2, r3, r4]);
        chart.validate()?;
        Ok(chart)
    }

    pub fn exponents(&self) -> Exponents {
        Exponents {
            a: self.a.clone(),
            b: self.b.clone(),
            c: self.c.clone(),
            d: self.d.clone(),
        }
    }

    pub fn check_admissible(&self) -> Result<()> {
        check_admissible(&self.a, &self.b, &self.c, &self.d)
    }

    /// `r1 r2 r3 r4 != 0`, `r1 != r2`, `r3 != r4`.
    pub fn check_r_condition(&self) -> Result<()> {
        let [r1, r2, r3, r4] = &self.r;
        for (k, rk) in self.r.iter().enumerate() {
            if rk.is_zero() {
                return Err(Error::DegenerateChart(format!("r{} = 0", k + 1)));
            }
        }
        if r1 == r2 {
            return Err(Error::DegenerateChart("r1 = r2".into()));
        }
        if r3 == r4 {
            return Err(Error::DegenerateChart("r3 = r4".into()));
        }
        Ok(())
    }

    /// Left side of the d-condition; `None` when `r1 = r2` or `r3 = r4`.
    pub fn d_condition_value(&self) -> Option<Scalar> {
        let (a, b, c) = (&self.a, &self.b, &self.c);
        let [r1, r2, r3, r4] = &self.r;
        let den = (r1 - r2) * (r3 - r4);
        if den.is_zero() {
            return None;
        }
        let ab4 = int(4) * a * b;
        let num = sq(&(a + b + c)) * r1 * r3 - sq(&(a - b + c)) * r1 * r4 - sq(&(a - b - c)) * r2 * r3
            + sq(&(a + b - c)) * r2 * r4
            - &ab4 * r1 * r2
            - &ab4 * r3 * r4;
        Some(num / den)
    }

    pub fn check_d_condition(&self) -> Result<()> {
        let value = self
            .d_condition_value()
            .ok_or_else(|| Error::DegenerateChart("(r1 - r2)(r3 - r4) = 0".into()))?;
        let expected = sq(&self.d);
        if value != expected {
            return Err(Error::DConditionFails {
                value: format_scalar(&value),
                expected: format_scalar(&expected),
            });
        }
        Ok(())
    }

    /// The r-condition followed by the d-condition.
    pub fn validate(&self) -> Result<()> {
        self.check_r_condition()?;
        self.check_d_condition()
    }

    pub fn scaled(&self, k: &Scalar) -> AccessoryChart {
        AccessoryChart {
            r: self.r.clone().map(|x| x * k),
            ..self.clone()
        }
    }

    /// Same exponents and proportional `r`.
    pub fn projectively_equal(&self, other: &AccessoryChart) -> bool {
        if (&self.a, &self.b, &self.c, &self.d) != (&other.a, &other.b, &other.c, &other.d) {
            return false;
        }
        (0..4).all(|i| (i + 1..4).all(|j| &self.r[i] * &other.r[j] == &self.r[j] * &other.r[i]))
            && self.r.iter().any(|x| !x.is_zero()) == other.r.iter().any(|x| !x.is_zero())
    }

    /// `(r1/r4, r2/r4)`; `None` when `r4 = 0`.
    pub fn accessory_coordinates(&self) -> Option<(Scalar, Scalar)> {
        let [r1, r2, _, r4] = &self.r;
        if r4.is_zero() {
            None
        } else {
            Some((r1 / r4, r2 / r4))
        }
    }

    /// Upper-right block of `A1`.
    pub fn a12_prime(&self) -> Result<Matrix> {
        self.check_r_condition()?;
        let (b, c) = (&self.b, &self.c);
        let [r1, r2, r3, r4] = &self.r;
        let d12 = r1 - r2;
        let d21 = r2 - r1;
        Ok(Matrix::square(vec![
            vec![
                ((b - c) * r2 - (b + c) * r3) / &d12,
                ((b + c) * r2 - (b - c) * r4) / &d21,
            ],
            vec![
                ((b - c) * r1 - (b + c) * r3) / &d21,
                ((b + c) * r1 - (b - c) * r4) / &d12,
            ],
        ]))
    }

    /// Lower-left block of `A1`.
    pub fn a21_prime(&self) -> Result<Matrix> {
        self.check_r_condition()?;
        let (a, c) = (&self.a, &self.c);
        let [r1, r2, r3, r4] = &self.r;
        let d34 = r3 - r4;
        let d43 = r4 - r3;
        Ok(Matrix::square(vec![
            vec![
                ((a + c) * r1 - (a - c) * r4) / &d43,
                ((a - c) * r2 - (a + c) * r4) / &d34,
            ],
            vec![
                ((a + c) * r1 - (a - c) * r3) / &d34,
                ((a - c) * r2 - (a + c) * r3) / &d43,
            ],
        ]))
    }

    /// `A1` without checking the d-condition.
    pub fn a1_matrix(&self) -> Result<Matrix> {
        Ok(Matrix::from_blocks(
            &j2().scale(&self.a),
            &self.a12_prime()?,
            &self.a21_prime()?,
            &j2().scale(&self.b),
        ))
    }
}

/// `A1` for a chart satisfying the r- and d-conditions.
pub fn parametrize_a1(chart: &AccessoryChart) -> Result<OkuboSystem> {
    chart.validate()?;
    Ok(OkuboSystem::new(chart.a1_matrix()?, chart.exponents()))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EpsilonDelta {
    pub epsilon: Scalar,
    pub delta: Scalar,
    pub epsilon_prime: Scalar,
    pub delta_prime: Scalar,
}

impl EpsilonDelta {
    pub fn both_zero(&self) -> bool {
        self.epsilon.is_zero() && self.delta.is_zero()
    }
}

pub fn epsilon_delta(chart: &AccessoryChart) -> Result<EpsilonDelta> {
    chart.check_r_condition()?;
    let (a, b, c) = (&chart.a, &chart.b, &chart.c);
    let [r1, r2, r3, r4] = &chart.r;
    let epsilon = b * (a + c) * r1 + b * (a - c) * r2 - a * (b + c) * r3 - a * (b - c) * r4;
    let delta = r1 * r2 - r3 * r4;
    let k = int(2) / ((r1 - r2) * (r3 - r4));
    Ok(EpsilonDelta {
        epsilon_prime: &k * &epsilon,
        delta_prime: &k * &delta,
        epsilon,
        delta,
    })
}

/// Eigenvector-based chart extraction: returns `D = diag(v_c)` and the chart
/// with `r_k = v_{-c}^k / v_c^k`, so that `D A D^{-1} = A1(chart)`.
pub fn recover_chart(
    a_mat: &Matrix,
    a: &Scalar,
    b: &Scalar,
    c: &Scalar,
    d: &Scalar,
) -> Result<(Matrix, AccessoryChart)> {
    crate::hg::check_block_form(a_mat, a, b)?;
    let single = |xi: Scalar, name: &str| -> Result<Vec<Scalar>> {
        let mut basis = a_mat.left_eigenvectors(&xi)?;
        if basis.len() != 1 {
            return Err(Error::EigenvectorDegeneracy(format!(
                "left eigenspace for {name} has dimension {}",
                basis.len()
            )));
        }
        Ok(basis.remove(0))
    };
    let v_c = single(c.clone(), "c")?;
    let v_mc = single(-c, "-c")?;
    for k in 0..4 {
        if v_c[k].is_zero() {
            return Err(Error::EigenvectorDegeneracy(format!("v_c component {} vanishes", k + 1)));
        }
        if v_mc[k].is_zero() {
            return Err(Error::EigenvectorDegeneracy(format!("v_-c component {} vanishes", k + 1)));
        }
    }
    for l in [0, 2] {
        if &v_mc[l] * &v_c[l + 1] - &v_mc[l + 1] * &v_c[l] == Scalar::zero() {
            return Err(Error::EigenvectorDegeneracy(format!(
                "determinant condition l = {} fails",
                l + 1
            )));
        }
    }
    let dmat = Matrix::diag(&v_c);
    let r = [0, 1, 2, 3].map(|k| &v_mc[k] / &v_c[k]);
    let chart = AccessoryChart::new(a.clone(), b.clone(), c.clone(), d.clone(), r);
    let conj = &(&dmat * a_mat) * &dmat.inverse()?;
    let expected = parametrize_a1(&chart)?;
    if &conj != expected.coefficient() {
        return Err(Error::InternalDisagreement(
            "D A D^-1 differs from the parametrized matrix".into(),
        ));
    }
    Ok((dmat, chart))
}

/// `r` rescaled so that its last nonzero coordinate is 1.
pub fn normalize_projective(r: &[Scalar; 4]) -> [Scalar; 4] {
    match r.iter().rev().find(|x| !x.is_zero()) {
        Some(pivot) if !pivot.is_one() => {
            let pivot = pivot.clone();
            r.clone().map(|x| x / &pivot)
        }
        _ => r.clone(),
    }
}
