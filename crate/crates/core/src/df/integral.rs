//! Numerical integral solution on the segment `[0, x]` by tanh-sinh quadrature.
//!
//! The real branch is used throughout: `(x - t)^(g/2 - 1)` and `(1 - x)^(b + c)`
//! replace their complex counterparts, which differ by constant phases only.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use num_complex::Complex64;

use crate::series::hyp2f1;

use super::{build_df, integral_matrix, DFParams};

const CONVERGENCE: f64 = 1e-8;
const TARGET: f64 = 1e-14;
/// Tail cut: weights below `exp(-TAIL)` of the peak are dropped.
const TAIL: f64 = 45.0;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EulerTransformSpec {
    /// Upper bound on nodes per refinement level.
    pub nodes: usize,
    /// Reparametrizes the segment as `t = x s^contour_scale`; the result must not depend on it.
    pub contour_scale: f64,
    /// Series terms for each hypergeometric factor.
    pub terms: usize,
}

impl Default for EulerTransformSpec {
    fn default() -> Self {
        EulerTransformSpec {
            nodes: 4096,
            contour_scale: 1.0,
            terms: 200,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DFIntegralReport {
    pub x: f64,
    pub integrals: [f64; 3],
    pub z: [f64; 3],
    /// `|z' - (C0/x + C1/(x-1)) z| / |z|` with `z'` by central differences.
    pub relative_residual: f64,
    pub nodes_used: usize,
    pub step: f64,
}

/// Hypergeometric parameter triples of the three integrands, each a product
/// of two factors, together with the exponent of `t`.
pub fn integrand_parameters(p: [f64; 4]) -> ([[[f64; 3]; 2]; 3], f64) {
    let [a, b, c, g] = p;
    let gamma = a + c + g / 2.0 + 1.0;
    let s = a + b + c + g;
    (
        [
            [[a, 1.0 - b, gamma], [c, s + 1.0, gamma]],
            [[a + 1.0, -b, gamma], [c, s + 1.0, gamma]],
            [[a, 1.0 - b, gamma], [c + 1.0, s, gamma]],
        ],
        gamma - 1.0,
    )
}

fn softplus(y: f64) -> f64 {
    y.max(0.0) + (-y.abs()).exp().ln_1p()
}

/// Nodes `u_k = k h` for the segment map `s = 1/(1 + exp(-pi sinh u))`,
/// each paired with `ln s` and `ln(1 - s)`.
struct Rule {
    h: f64,
    nodes: Vec<(f64, f64, f64, f64)>,
}

impl Rule {
    fn new(h: f64, u_max: f64) -> Rule {
        let n = (u_max / h).ceil() as i64;
        let nodes = (-n..=n)
            .map(|k| {
                let u = k as f64 * h;
                let y = PI * u.sinh();
                let ln_s = -softplus(-y);
                let ln_1ms = -softplus(y);
                (ln_s.exp(), ln_s, ln_1ms, (PI * u.cosh()).ln())
            })
            .collect();
        Rule { h, nodes }
    }
}

struct Integrand {
    factors: [[[f64; 3]; 2]; 3],
    t_exp: f64,
    mu: f64,
    kappa: f64,
    terms: usize,
}

impl Integrand {
    /// `x^(mu + t_exp) * int_0^1 (1 - s^k)^(mu - 1) s^(k t_exp) F F (x s^k) k s^(k-1) ds`
    fn integrate(&self, rule: &Rule, x: f64) -> Result<[f64; 3]> {
        let k = self.kappa;
        let mut acc = [0.0; 3];
        for &(s, ln_s, ln_1ms, ln_jac) in &rule.nodes {
            let ln_sk = k * ln_s;
            let ln_1msk = if k == 1.0 { ln_1ms } else { (-ln_sk.exp_m1()).ln() };
            let ln_w = (self.mu - 1.0) * ln_1msk
                + (k * self.t_exp + k - 1.0) * ln_s
                + k.ln()
                + ln_jac
                + ln_s
                + ln_1ms;
            let w = ln_w.exp();
            if w == 0.0 || !w.is_finite() {
                continue;
            }
            let t = x * if k == 1.0 { s } else { ln_sk.exp() };
            for (slot, pair) in acc.iter_mut().zip(&self.factors) {
                let f = |q: &[f64; 3]| -> Result<f64> {
                    Ok(hyp2f1(q[0], q[1], q[2], Complex64::new(t, 0.0), self.terms)?.re)
                };
                *slot += w * f(&pair[0])? * f(&pair[1])?;
            }
        }
        let scale = x.powf(self.mu + self.t_exp) * rule.h;
        Ok(acc.map(|v| v * scale))
    }
}

fn norm(v: &[f64; 3]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

fn sub(a: &[f64; 3], b: &[f64; 3]) -> [f64; 3] {
    std::array::from_fn(|i| a[i] - b[i])
}

fn rel_diff(a: &[f64; 3], b: &[f64; 3]) -> f64 {
    let n = norm(a);
    let d = norm(&sub(a, b));
    if n == 0.0 {
        d
    } else {
        d / n
    }
}

fn mat_apply(m: &[Vec<f64>], v: &[f64; 3]) -> [f64; 3] {
    std::array::from_fn(|i| (0..3).map(|j| m[i][j] * v[j]).sum())
}

/// Evaluates `z(x) = x^(a+c) (1-x)^(b+c) M I(x)` and the relative residual of
/// the three-dimensional system at `x`.
// Negated comparisons so that NaN inputs are rejected.
#[allow(clippy::neg_cmp_op_on_partial_ord)]
pub fn df_integral_solution(p: &DFParams, x: f64, spec: &EulerTransformSpec) -> Result<DFIntegralReport> {
    let [a, b, c, g] = p.to_f64();
    let mu = g / 2.0;
    let (factors, t_exp) = integrand_parameters([a, b, c, g]);
    if !(mu > 0.0) {
        return Err(Error::IntegrabilityConditions(format!("g/2 = {mu} must be positive")));
    }
    if !(t_exp + 1.0 > 0.0) {
        return Err(Error::IntegrabilityConditions(format!(
            "a + c + g/2 + 1 = {} must be positive",
            t_exp + 1.0
        )));
    }
    if !(x > 0.0 && x < 1.0) {
        return Err(Error::OutsideDisc(format!("x = {x} must lie in (0, 1)")));
    }
    if !(spec.contour_scale > 0.0 && spec.contour_scale.is_finite()) {
        return Err(Error::InvalidInput(format!(
            "contour_scale = {} must be positive",
            spec.contour_scale
        )));
    }
    let integrand = Integrand {
        factors,
        t_exp,
        mu,
        kappa: spec.contour_scale,
        terms: spec.terms,
    };
    // Both ends decay like exp(-e pi sinh u) with e the smaller endpoint exponent.
    let decay = mu.min(spec.contour_scale * (t_exp + 1.0)).min(1.0);
    let u_max = (TAIL / (PI * decay)).asinh() + 0.5;

    let mut h = 0.5;
    let mut rule = Rule::new(h, u_max);
    let mut prev = integrand.integrate(&rule, x)?;
    let mut diff = f64::INFINITY;
    loop {
        let next_rule = Rule::new(h / 2.0, u_max);
        if next_rule.nodes.len() > spec.nodes {
            break;
        }
        h /= 2.0;
        rule = next_rule;
        let cur = integrand.integrate(&rule, x)?;
        diff = rel_diff(&cur, &prev);
        prev = cur;
        if diff <= TARGET {
            break;
        }
    }
    if !(diff <= CONVERGENCE) {
        return Err(Error::QuadratureNonConvergence { estimate: diff });
    }

    let m = integral_matrix(p)?.to_f64();
    let (c0, c1) = build_df(p);
    let (c0, c1) = (c0.to_f64(), c1.to_f64());
    let z_at = |xx: f64| -> Result<([f64; 3], [f64; 3])> {
        let ints = integrand.integrate(&rule, xx)?;
        let pre = xx.powf(a + c) * (1.0 - xx).powf(b + c);
        Ok((ints, mat_apply(&m, &ints).map(|v| v * pre)))
    };
    let (integrals, z) = z_at(x)?;
    let step = 1e-4 * x * (1.0 - x);
    let mut stencil = [[0.0; 3]; 4];
    for (slot, k) in stencil.iter_mut().zip([-2.0, -1.0, 1.0, 2.0]) {
        *slot = z_at(x + k * step)?.1;
    }
    let dz: [f64; 3] = std::array::from_fn(|i| {
        (stencil[0][i] - 8.0 * stencil[1][i] + 8.0 * stencil[2][i] - stencil[3][i]) / (12.0 * step)
    });
    let rhs: [f64; 3] = std::array::from_fn(|i| {
        (0..3)
            .map(|j| (c0[i][j] / x + c1[i][j] / (x - 1.0)) * z[j])
            .sum()
    });
    let relative_residual = norm(&sub(&dz, &rhs)) / norm(&z);
    Ok(DFIntegralReport {
        x,
        integrals,
        z,
        relative_residual,
        nodes_used: rule.nodes.len(),
        step: rule.h,
    })
}
