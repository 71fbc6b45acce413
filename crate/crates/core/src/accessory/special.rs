//! Special accessory values, their closed-form matrix and the realization
//! by the hypergeometric-product system.

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{int, j2, Matrix, MultiPoly, Scalar};
use crate::hg::{build_okubo_zero, HGParams, OkuboSystem};

use super::chart::{check_admissible, epsilon_delta, parametrize_a1, AccessoryChart};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Branch {
    ViaR4,
    ViaR3,
    Auto,
}

impl FromStr for Branch {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "via-r4" => Ok(Branch::ViaR4),
            "via-r3" => Ok(Branch::ViaR3),
            "auto" => Ok(Branch::Auto),
            other => Err(Error::Parse(format!(
                "branch must be via-r4, via-r3 or auto, got {other:?}"
            ))),
        }
    }
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Branch::ViaR4 => "via-r4",
            Branch::ViaR3 => "via-r3",
            Branch::Auto => "auto",
        })
    }
}

/// `x^2 - d^2`
fn dd(x: Scalar, d: &Scalar) -> Scalar {
    &x * &x - d * d
}

/// The four factors `(a +- b +- c)^2 - d^2`, keyed `[++, +-, -+, --]` on the
/// signs of `b` and `c`.
pub fn branch_factors(a: &Scalar, b: &Scalar, c: &Scalar, d: &Scalar) -> [Scalar; 4] {
    [
        dd(a + b + c, d),
        dd(a + b - c, d),
        dd(a - b + c, d),
        dd(a - b - c, d),
    ]
}

/// `r` along the requested branch, normalized by `scale`.
pub fn branch_r(a: &Scalar, b: &Scalar, c: &Scalar, d: &Scalar, branch: Branch, scale: &Scalar) -> Result<[Scalar; 4]> {
    let [pp, pm, mp, mm] = branch_factors(a, b, c, d);
    match branch {
        Branch::ViaR4 => {
            if (&pp * &mm).is_zero() {
                return Err(Error::VanishingFactor(
                    "((a+b+c)^2-d^2)((a-b-c)^2-d^2)".into(),
                ));
            }
            Ok([
                &pm / &pp * scale,
                &mp / &mm * scale,
                &pm * &mp / (&pp * &mm) * scale,
                scale.clone(),
            ])
        }
        Branch::ViaR3 => {
            if (&pm * &mp).is_zero() {
                return Err(Error::VanishingFactor(
                    "((a+b-c)^2-d^2)((a-b+c)^2-d^2)".into(),
                ));
            }
            Ok([
                &mm / &mp * scale,
                &pp / &pm * scale,
                scale.clone(),
                &pp * &mm / (&pm * &mp) * scale,
            ])
        }
        Branch::Auto => Err(Error::InvalidInput("auto is resolved by solve_accessory".into())),
    }
}

/// The closed-form matrix without accessory parameters.
pub fn special_matrix(a: &Scalar, b: &Scalar, c: &Scalar, d: &Scalar) -> Result<Matrix> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::VanishingFactor(if a.is_zero() { "a" } else { "b" }.into()));
    }
    let [pp, pm, mp, mm] = branch_factors(a, b, c, d);
    let a4 = int(4) * a;
    let b4 = int(4) * b;
    let upper = Matrix::square(vec![
        vec![&mp / &a4, &pp / &a4],
        vec![-&pm / &a4, -&mm / &a4],
    ]);
    let lower = Matrix::square(vec![vec![&mm / &b4, &pp / &b4], vec![-&pm / &b4, -&mp / &b4]]);
    Ok(Matrix::from_blocks(&j2().scale(a), &upper, &lower, &j2().scale(b)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub branch: Branch,
    pub chart: AccessoryChart,
    pub system: OkuboSystem,
}

fn solve_branch(a: &Scalar, b: &Scalar, c: &Scalar, d: &Scalar, branch: Branch, scale: &Scalar) -> Result<Solution> {
    let r = branch_r(a, b, c, d, branch, scale)?;
    let chart = AccessoryChart::new(a.clone(), b.clone(), c.clone(), d.clone(), r);
    let system = parametrize_a1(&chart)?;
    if !epsilon_delta(&chart)?.both_zero() {
        return Err(Error::InternalDisagreement("branch chart has nonzero (epsilon, delta)".into()));
    }
    if system.coefficient() != &special_matrix(a, b, c, d)? {
        return Err(Error::InternalDisagreement("branch chart does not reproduce the closed form".into()));
    }
    Ok(Solution { branch, chart, system })
}

/// Chart with `epsilon = delta = 0` on the requested branch; `auto` tries
/// `via-r4` first.
pub fn solve_accessory(a: &Scalar, b: &Scalar, c: &Scalar, d: &Scalar, branch: Branch, scale: &Scalar) -> Result<Solution> {
    check_admissible(a, b, c, d)?;
    if scale.is_zero() {
        return Err(Error::InvalidInput("scale must be nonzero".into()));
    }
    match branch {
        Branch::Auto => solve_branch(a, b, c, d, Branch::ViaR4, scale).or_else(|first| {
            solve_branch(a, b, c, d, Branch::ViaR3, scale).map_err(|second| match (&first, &second) {
                (Error::VanishingFactor(_), Error::VanishingFactor(_)) => Error::Admissibility(
                    "both branch denominators vanish".into(),
                ),
                _ => second,
            })
        }),
        _ => solve_branch(a, b, c, d, branch, scale),
    }
}

/// Whether the chart is one of the branch solutions up to a common factor.
pub fn on_special_locus(chart: &AccessoryChart) -> bool {
    [Branch::ViaR4, Branch::ViaR3].into_iter().any(|br| {
        branch_r(&chart.a, &chart.b, &chart.c, &chart.d, br, &int(1))
            .map(|r| {
                let cand = AccessoryChart::new(chart.a.clone(), chart.b.clone(), chart.c.clone(), chart.d.clone(), r);
                cand.projectively_equal(chart)
            })
            .unwrap_or(false)
    })
}

/// Exponents attached to hypergeometric parameters.
pub fn realized_exponents(p: &HGParams) -> [Scalar; 4] {
    [p.lam("++++"), p.lam("-+-+"), p.lam("++--"), p.lam("+--+")]
}

/// `diag(1, l(-+++)l(+-++)/(4 l(+000)l(0+00)), l(+-++)/(2 l(+000)), l(-+++)/(2 l(0+00)))`
pub fn build_d1(p: &HGParams) -> Result<Matrix> {
    let l = |s: &str| p.lam(s);
    for s in ["+000", "0+00"] {
        if l(s).is_zero() {
            return Err(Error::VanishingFactor(format!("lambda({s})")));
        }
    }
    Ok(Matrix::diag(&[
        int(1),
        l("-+++") * l("+-++") / (int(4) * l("+000") * l("0+00")),
        l("+-++") / (int(2) * l("+000")),
        l("-+++") / (int(2) * l("0+00")),
    ]))
}

/// The closed-form matrix rewritten in lambda notation.
pub fn realized_a1_lambda_form(p: &HGParams) -> Result<Matrix> {
    let l = |s: &str| p.lam(s);
    let q = |n: Scalar, s: &str| -> Result<Scalar> {
        let d = l(s);
        if d.is_zero() {
            Err(Error::VanishingFactor(format!("lambda({s})")))
        } else {
            Ok(int(2) * n / d)
        }
    };
    let upper = Matrix::square(vec![
        vec![q(l("+000") * l("+++-"), "++++")?, q(l("0+00") * l("++-+"), "++++")?],
        vec![q(l("000+") * l("-+++"), "----")?, q(l("00+0") * l("+-++"), "----")?],
    ]);
    let lower = Matrix::square(vec![
        vec![q(l("00+0") * l("+-++"), "-+-+")?, q(l("0+00") * l("++-+"), "-+-+")?],
        vec![q(l("000+") * l("-+++"), "+-+-")?, q(l("+000") * l("+++-"), "+-+-")?],
    ]);
    Ok(Matrix::from_blocks(
        &j2().scale(&l("++++")),
        &upper,
        &lower,
        &j2().scale(&l("-+-+")),
    ))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Realization {
    pub d1: Matrix,
    pub a1: Matrix,
    pub a0: Matrix,
    pub verdict: bool,
}

/// `D1^{-1} A1 D1` against `A0` for the exponents taken from `p`.
pub fn realize(p: &HGParams) -> Result<Realization> {
    p.require_okubo()?;
    let [a, b, c, d] = realized_exponents(p);
    check_admissible(&a, &b, &c, &d)?;
    let l = |s: &str| p.lam(s);
    for s in ["0+00", "00+0", "+-++", "++-+", "+000", "000+", "-+++", "+++-"] {
        if l(s).is_zero() {
            return Err(Error::VanishingFactor(format!("lambda({s})")));
        }
    }
    let a1 = special_matrix(&a, &b, &c, &d)?;
    let d1 = build_d1(p)?;
    let (_, a0) = build_okubo_zero(p)?;
    let conj = a1.conjugate_by(&d1)?;
    Ok(Realization {
        verdict: &conj == a0.coefficient(),
        d1,
        a1,
        a0: a0.coefficient().clone(),
    })
}

/// Products of branch factors in lambda form:
/// `64 l(0+00) l(00+0) l(+-++) l(++-+)` and `64 l(+000) l(000+) l(-+++) l(+++-)`.
pub fn branch_products_lambda_form(p: &HGParams) -> [Scalar; 2] {
    let l = |s: &str| p.lam(s);
    [
        int(64) * l("0+00") * l("00+0") * l("+-++") * l("++-+"),
        int(64) * l("+000") * l("000+") * l("-+++") * l("+++-"),
    ]
}

/// For signs `(i1, i2)`, `((a+i1 b-i2 c)^2-d^2)((a-i1 b+i2 c)^2-d^2) -
/// i1 i2 16bc(a+i1 b)(a+i2 c)` after `d^2 -> (a+i1 b+i2 c)^2`, as a
/// polynomial in `(a, b, c)`.
pub fn conditional_identity_residual(i1: i64, i2: i64) -> MultiPoly {
    let v = |k| MultiPoly::var(3, k);
    let k = |x: i64| MultiPoly::constant(3, int(x));
    let (a, b, c) = (v(0), v(1), v(2));
    let s1 = &k(i1) * &b;
    let s2 = &k(i2) * &c;
    let d2 = (&(&a + &s1) + &s2).pow(2);
    let f1 = &(&(&a + &s1) - &s2).pow(2) - &d2;
    let f2 = &(&(&a - &s1) + &s2).pow(2) - &d2;
    let rhs = &(&(&k(16 * i1 * i2) * &b) * &c) * &(&(&a + &s1) * &(&a + &s2));
    &(&f1 * &f2) - &rhs
}

/// `16 b^2 (a^2 - c^2)` times the difference between `delta` with `r1, r2`
/// eliminated through `epsilon = 0` and the factored form, as a polynomial in
/// `(a, b, c, d, r3, r4)`.
pub fn delta_factorization_residual() -> MultiPoly {
    let v = |k| MultiPoly::var(6, k);
    let k = |x: i64| MultiPoly::constant(6, int(x));
    let (a, b, c, d, r3, r4) = (v(0), v(1), v(2), v(3), v(4), v(5));
    let d2 = d.pow(2);
    let f = |sb: i64, sc: i64| &(&(&a + &(&k(sb) * &b)) + &(&k(sc) * &c)).pow(2) - &d2;
    let (pp, pm, mp, mm) = (f(1, 1), f(1, -1), f(-1, 1), f(-1, -1));
    // r1 = -n1 / (4b(a+c)), r2 = n2 / (4b(a-c))
    let n1 = &(&mm * &r3) - &(&pm * &r4);
    let n2 = &(&pp * &r3) - &(&mp * &r4);
    let scaled_delta = &(&k(-1) * &(&n1 * &n2)) - &(&(&(&k(16) * &b.pow(2)) * &(&a.pow(2) - &c.pow(2))) * &(&r3 * &r4));
    let factored = &k(-1) * &(&(&(&(&pp * &mm) * &r3) - &(&(&pm * &mp) * &r4)) * &(&r3 - &r4));
    &scaled_delta - &factored
}

/// `(r1 - r2)(r3 - r4)(d-condition - d^2)` rewritten through `epsilon` and
/// `delta`, both printed forms; each returned polynomial must vanish.
/// Variables `(a, b, c, d, r1, r2, r3, r4)`.
pub fn d_condition_rewrite_residuals() -> [MultiPoly; 2] {
    let v = |k| MultiPoly::var(8, k);
    let k = |x: i64| MultiPoly::constant(8, int(x));
    let (a, b, c, r1, r2, r3, r4) = (v(0), v(1), v(2), v(4), v(5), v(6), v(7));
    let sq = |sb: i64, sc: i64| (&(&a + &(&k(sb) * &b)) + &(&k(sc) * &c)).pow(2);
    let ab4 = &(&k(4) * &a) * &b;
    let num = &(&(&(&(&(&sq(1, 1) * &(&r1 * &r3)) - &(&sq(-1, 1) * &(&r1 * &r4))) - &(&sq(-1, -1) * &(&r2 * &r3)))
        + &(&sq(1, -1) * &(&r2 * &r4)))
        - &(&ab4 * &(&r1 * &r2)))
        - &(&ab4 * &(&r3 * &r4));
    let eps = &(&(&(&b * &(&a + &c)) * &r1) + &(&(&b * &(&a - &c)) * &r2))
        - &(&(&(&a * &(&b + &c)) * &r3) + &(&(&a * &(&b - &c)) * &r4));
    let delta = &(&r1 * &r2) - &(&r3 * &r4);
    let four_b = &k(4) * &b;
    let first = &(&(&(&(&four_b * &(&a + &c)) * &r1) + &(&sq(-1, -1) * &r3)) - &(&sq(1, -1) * &r4)) * &(&r1 - &r2);
    let first = &(&first - &(&(&k(4) * &r1) * &eps)) + &(&ab4 * &delta);
    let second = &(&(&(&k(-1) * &(&(&four_b * &(&a - &c)) * &r2)) + &(&sq(1, 1) * &r3)) - &(&sq(-1, 1) * &r4)) * &(&r1 - &r2);
    let second = &(&second - &(&(&k(4) * &r2) * &eps)) + &(&ab4 * &delta);
    [&num - &first, &num - &second]
}
