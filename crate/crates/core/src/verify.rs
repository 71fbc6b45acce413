//! The identity and residual suites behind `verify-all`.
//!
//! Every suite draws from its own seeded substream, so reports depend only on
//! the seed and tolerance. Reports carry no timings.

use num_complex::Complex64;
use num_traits::Zero;
use serde::Serialize;

use crate::accessory::{
    a12_a21_closed_form, branch_factors, branch_products_lambda_form, conditional_identity_residual,
    cubic_blocks, d_condition_rewrite_residuals, delta_factorization_residual, epsilon_delta,
    on_special_locus, parametrize_a1, realize, realized_exponents, resolvent_adjugate, solve_accessory,
    special_matrix, substantially_same, substantially_same_dual, AccessoryChart, Branch,
};
use crate::df::{
    build_q, df_integral_solution, df_similarity_checks, df_transform_check, euler_reduce,
    euler_reduction_checks, q_tilde_lambda_form, setting_identities, DFParams, EulerTransformSpec,
};
use crate::error::{Error, Result};
use crate::exact::{int, j2, rat, Matrix, Poly};
use crate::hg::{
    a0_closed_form, build_okubo_zero, build_product_system, build_r, det_p_closed_form,
    det_r_closed_form, infinity_charpoly_closed_form, p_inverse_closed_form, rp_inverse_closed_form,
    sample_params, spectral_form, HGParams,
};
use crate::sampling::Sampler;
use crate::series::{
    circle_samples, exponents_at, local_series, residual_report, v_vector, w_residual, BasePoint, Mode,
};

/// Default float comparison tolerance.
pub const DEFAULT_PRECISION: f64 = 1e-10;
/// Listed failures per suite; the count is always complete.
const MAX_LISTED: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SuiteId {
    #[serde(rename = "1a")]
    InfinityFactorization,
    #[serde(rename = "1b")]
    GaugeMatrices,
    #[serde(rename = "1c")]
    CubicBlocks,
    #[serde(rename = "1d")]
    CrossProductCriterion,
    #[serde(rename = "1e")]
    SpecialValues,
    #[serde(rename = "1f")]
    Realization,
    #[serde(rename = "1g")]
    DualVerdict,
    #[serde(rename = "1h")]
    ThreeDimensionalSystem,
    #[serde(rename = "2a")]
    ProductResidual,
    #[serde(rename = "2b")]
    TwoWayV,
    #[serde(rename = "2c")]
    LocalSeries,
    #[serde(rename = "2d")]
    IntegralSolution,
}

impl SuiteId {
    pub const ALL: [SuiteId; 12] = [
        SuiteId::InfinityFactorization,
        SuiteId::GaugeMatrices,
        SuiteId::CubicBlocks,
        SuiteId::CrossProductCriterion,
        SuiteId::SpecialValues,
        SuiteId::Realization,
        SuiteId::DualVerdict,
        SuiteId::ThreeDimensionalSystem,
        SuiteId::ProductResidual,
        SuiteId::TwoWayV,
        SuiteId::LocalSeries,
        SuiteId::IntegralSolution,
    ];

    pub fn code(self) -> &'static str {
        match self {
            SuiteId::InfinityFactorization => "1a",
            SuiteId::GaugeMatrices => "1b",
            SuiteId::CubicBlocks => "1c",
            SuiteId::CrossProductCriterion => "1d",
            SuiteId::SpecialValues => "1e",
            SuiteId::Realization => "1f",
            SuiteId::DualVerdict => "1g",
            SuiteId::ThreeDimensionalSystem => "1h",
            SuiteId::ProductResidual => "2a",
            SuiteId::TwoWayV => "2b",
            SuiteId::LocalSeries => "2c",
            SuiteId::IntegralSolution => "2d",
        }
    }

    pub fn title(self) -> &'static str {
        match self {
            SuiteId::InfinityFactorization => "characteristic polynomial at infinity factors over the exponents",
            SuiteId::GaugeMatrices => "determinants, inverses and diagonalization of P and R",
            SuiteId::CubicBlocks => "cubic blocks of the resolvent adjugate",
            SuiteId::CrossProductCriterion => "cross products vanish exactly when epsilon and delta do",
            SuiteId::SpecialValues => "both branches give the special matrix",
            SuiteId::Realization => "the special matrix is conjugate to A0",
            SuiteId::DualVerdict => "dual verdict agrees with the primary verdict",
            SuiteId::ThreeDimensionalSystem => "Euler reduction conjugates onto the three-dimensional system",
            SuiteId::ProductResidual => "product vector residual",
            SuiteId::TwoWayV => "two computations of v agree",
            SuiteId::LocalSeries => "local series residuals at 0, 1 and infinity",
            SuiteId::IntegralSolution => "integral solution residual",
        }
    }

    pub fn from_code(code: &str) -> Option<SuiteId> {
        SuiteId::ALL.into_iter().find(|s| s.code() == code)
    }

    fn stream(self) -> u64 {
        SuiteId::ALL.iter().position(|s| *s == self).unwrap() as u64 + 1
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteReport {
    pub id: SuiteId,
    pub title: &'static str,
    pub cases: usize,
    pub failed: usize,
    pub passed: bool,
    /// Largest measured error for float suites.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_error: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    pub failures: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifyReport {
    pub seed: u64,
    pub precision: f64,
    pub passed: bool,
    pub suites: Vec<SuiteReport>,
}

struct Tally {
    cases: usize,
    failures: Vec<String>,
    failed: usize,
    max_error: Option<f64>,
    tolerance: Option<f64>,
}

impl Tally {
    fn new() -> Self {
        Tally {
            cases: 0,
            failures: Vec::new(),
            failed: 0,
            max_error: None,
            tolerance: None,
        }
    }

    fn float(tolerance: f64) -> Self {
        Tally {
            max_error: Some(0.0),
            tolerance: Some(tolerance),
            ..Tally::new()
        }
    }

    fn fail(&mut self, msg: String) {
        self.failed += 1;
        if self.failures.len() < MAX_LISTED {
            self.failures.push(msg);
        }
    }

    /// Records one case: `Ok(None)` passes, `Ok(Some(m))` or `Err` fails.
    fn case(&mut self, label: impl FnOnce() -> String, outcome: Result<Option<String>>) {
        self.cases += 1;
        match outcome {
            Ok(None) => {}
            Ok(Some(msg)) => self.fail(format!("{}: {msg}", label())),
            Err(e) => self.fail(format!("{}: {e}", label())),
        }
    }

    fn measure(&mut self, label: impl FnOnce() -> String, value: Result<f64>) {
        let tol = self.tolerance.expect("float tally");
        self.cases += 1;
        match value {
            Ok(v) if v <= tol => {
                let m = self.max_error.get_or_insert(0.0);
                *m = m.max(v);
            }
            Ok(v) => {
                let m = self.max_error.get_or_insert(0.0);
                *m = if v.is_nan() { f64::NAN } else { m.max(v) };
                self.fail(format!("{}: {v:e} > {tol:e}", label()));
            }
            Err(e) => self.fail(format!("{}: {e}", label())),
        }
    }

    fn into_report(self, id: SuiteId) -> SuiteReport {
        SuiteReport {
            id,
            title: id.title(),
            cases: self.cases,
            passed: self.failed == 0 && self.cases > 0,
            failed: self.failed,
            max_error: self.max_error,
            tolerance: self.tolerance,
            failures: self.failures,
        }
    }
}

fn check(ok: bool, what: &str) -> Option<String> {
    if ok {
        None
    } else {
        Some(what.to_string())
    }
}

fn first_failure(checks: &[(bool, &str)]) -> Option<String> {
    checks.iter().find(|(ok, _)| !ok).map(|(_, w)| w.to_string())
}

fn describe_params(p: &HGParams) -> String {
    use crate::exact::format_scalar as f;
    format!(
        "({}, {}, {}, {}; {}, {})",
        f(&p.alpha1),
        f(&p.beta1),
        f(&p.alpha2),
        f(&p.beta2),
        f(&p.gamma1),
        f(&p.gamma2)
    )
}

fn describe_chart(c: &AccessoryChart) -> String {
    use crate::exact::format_scalar as f;
    format!(
        "({}, {}, {}, {}; {}:{}:{}:{})",
        f(&c.a),
        f(&c.b),
        f(&c.c),
        f(&c.d),
        f(&c.r[0]),
        f(&c.r[1]),
        f(&c.r[2]),
        f(&c.r[3])
    )
}

fn describe_df(p: &DFParams) -> String {
    use crate::exact::format_scalar as f;
    format!("({}, {}, {}, {})", f(&p.a), f(&p.b), f(&p.c), f(&p.g))
}

fn suite_1a(s: &mut Sampler) -> Tally {
    let mut t = Tally::new();
    for _ in 0..50 {
        let p = s.generic_params();
        let sys = build_product_system(&p);
        let ok = sys.residue_at_infinity().charpoly() == infinity_charpoly_closed_form(&p);
        t.case(|| describe_params(&p), Ok(check(ok, "factorization differs")));
    }
    t
}

fn gauge_checks(p: &HGParams) -> Result<Option<String>> {
    let (pm, a0) = build_okubo_zero(p)?;
    let pinv = pm.inverse()?;
    let r = build_r(p)?;
    let rinv = r.inverse()?;
    Ok(first_failure(&[
        (pm.det() == det_p_closed_form(p), "det P"),
        (&pm * &pinv == Matrix::identity(4), "P P^-1"),
        (pinv == p_inverse_closed_form(p)?, "P^-1 closed form"),
        (a0.coefficient() == &a0_closed_form(p)?, "A0 closed form"),
        (r.det() == det_r_closed_form(p)?, "det R"),
        (&(&r * a0.coefficient()) * &rinv == spectral_form(p), "R A0 R^-1"),
        (&r * &pinv == rp_inverse_closed_form(p)?, "R P^-1"),
    ]))
}

/// Okubo parameters on which `P` and `R` are both defined.
fn gauge_params(s: &mut Sampler) -> Result<HGParams> {
    s.until("okubo parameters", |s| {
        let p = s.okubo_params();
        build_okubo_zero(&p)?;
        build_r(&p)?;
        det_r_closed_form(&p)?;
        rp_inverse_closed_form(&p)?;
        Ok(p)
    })
}

fn suite_1b(s: &mut Sampler) -> Tally {
    let mut t = Tally::new();
    for _ in 0..50 {
        match gauge_params(s) {
            Ok(p) => t.case(|| describe_params(&p), gauge_checks(&p)),
            Err(e) => t.case(|| "draw".into(), Err(e)),
        }
    }
    t
}

fn cubic_checks(chart: &AccessoryChart) -> Result<Option<String>> {
    let blocks = cubic_blocks(chart)?;
    let a1 = chart.a1_matrix()?;
    let adj = resolvent_adjugate(&a1);
    let a11 = adj.block(0, 0, 2);
    let (a, b, c, d) = (&chart.a, &chart.b, &chart.c, &chart.d);
    let det = Poly::difference_of_squares(b) * Poly::difference_of_squares(c) * Poly::difference_of_squares(d);
    let ed = epsilon_delta(chart)?;
    Ok(first_failure(&[
        (a11.det() == det, "det A11"),
        (blocks.a11() == a11, "A11 blocks"),
        (blocks.a11_adjugate() == a11.adjugate(), "tilded blocks"),
        (blocks.q11 == j2().scale(a), "Q11"),
        (blocks.s11.trace() == int(-2) * a * b * c * &ed.delta_prime, "tr S11"),
        (&chart.a12_prime()? * &chart.a21_prime()? == a12_a21_closed_form(chart)?, "A12' A21'"),
    ]))
}

fn suite_1c(s: &mut Sampler) -> Tally {
    let mut t = Tally::new();
    for _ in 0..100 {
        match s.chart() {
            Ok(chart) => t.case(|| describe_chart(&chart), cubic_checks(&chart)),
            Err(e) => t.case(|| "draw".into(), Err(e)),
        }
    }
    t
}

fn special_chart(s: &mut Sampler) -> Result<AccessoryChart> {
    s.until("special chart", |s| {
        let [a, b, c, d] = s.admissible_exponents()?;
        Ok(solve_accessory(&a, &b, &c, &d, Branch::Auto, &int(1))?.chart)
    })
}

/// Moves `r1` off the special value and re-solves `r4`.
fn perturbed_chart(s: &mut Sampler) -> Result<AccessoryChart> {
    s.until("perturbed chart", |s| {
        let base = special_chart(s)?;
        let shift = s.nonzero_rational();
        let r1 = &base.r[0] + shift;
        let chart = AccessoryChart::complete_r4(
            base.a.clone(),
            base.b.clone(),
            base.c.clone(),
            base.d.clone(),
            [r1, base.r[1].clone(), base.r[2].clone()],
        )?;
        chart.validate()?;
        if on_special_locus(&chart) {
            return Err(Error::InvalidInput("landed on the special locus".into()));
        }
        Ok(chart)
    })
}

fn suite_1d(s: &mut Sampler) -> Tally {
    let mut t = Tally::new();
    for expect in [true, false] {
        for _ in 0..50 {
            let chart = if expect { special_chart(s) } else { perturbed_chart(s) };
            let chart = match chart {
                Ok(c) => c,
                Err(e) => {
                    t.case(|| "draw".into(), Err(e));
                    continue;
                }
            };
            let outcome = substantially_same(&chart).map(|v| {
                first_failure(&[
                    (v.verdict == expect, if expect { "expected verdict true" } else { "expected verdict false" }),
                    (v.verdict == v.epsilon_delta.both_zero(), "verdict disagrees with epsilon, delta"),
                ])
            });
            t.case(|| describe_chart(&chart), outcome);
        }
    }
    t
}

fn branch_checks(a: &crate::exact::Scalar, b: &crate::exact::Scalar, c: &crate::exact::Scalar, d: &crate::exact::Scalar) -> Result<Option<String>> {
    let m = special_matrix(a, b, c, d)?;
    let s4 = solve_accessory(a, b, c, d, Branch::ViaR4, &int(1))?;
    let s3 = solve_accessory(a, b, c, d, Branch::ViaR3, &int(1))?;
    let mut checks = vec![
        (s4.system.coefficient() == &m, "via-r4 matrix"),
        (s3.system.coefficient() == &m, "via-r3 matrix"),
    ];
    for sol in [&s4, &s3] {
        checks.push((epsilon_delta(&sol.chart)?.both_zero(), "epsilon, delta"));
        checks.push((sol.chart.check_d_condition().is_ok(), "determinant condition"));
    }
    Ok(first_failure(&checks))
}

fn suite_1e(s: &mut Sampler) -> Tally {
    let mut t = Tally::new();
    for _ in 0..50 {
        let drawn = s.until("exponents with nonzero branch factors", |s| {
            let e = s.admissible_exponents()?;
            if branch_factors(&e[0], &e[1], &e[2], &e[3]).iter().any(Zero::is_zero) {
                return Err(Error::InvalidInput(String::new()));
            }
            Ok(e)
        });
        match drawn {
            Ok([a, b, c, d]) => {
                let label = || {
                    use crate::exact::format_scalar as f;
                    format!("({}, {}, {}, {})", f(&a), f(&b), f(&c), f(&d))
                };
                t.case(label, branch_checks(&a, &b, &c, &d));
            }
            Err(e) => t.case(|| "draw".into(), Err(e)),
        }
    }
    for (i1, i2) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
        let ok = conditional_identity_residual(i1, i2).is_zero();
        t.case(|| format!("conditional identity ({i1}, {i2})"), Ok(check(ok, "nonzero residual")));
    }
    t.case(
        || "delta factorization".into(),
        Ok(check(delta_factorization_residual().is_zero(), "nonzero residual")),
    );
    for (k, r) in d_condition_rewrite_residuals().iter().enumerate() {
        t.case(|| format!("determinant condition rewrite {}", k + 1), Ok(check(r.is_zero(), "nonzero residual")));
    }
    t
}

fn realization_checks(p: &HGParams) -> Result<Option<String>> {
    let real = realize(p)?;
    let [a, b, c, d] = realized_exponents(p);
    let f = branch_factors(&a, &b, &c, &d);
    let [x, y] = branch_products_lambda_form(p);
    Ok(first_failure(&[
        (real.verdict, "D1^-1 A1 D1 differs from A0"),
        (&f[0] * &f[3] == x, "64 l(0+00) l(00+0) l(+-++) l(++-+)"),
        (&f[1] * &f[2] == y, "64 l(+000) l(000+) l(-+++) l(+++-)"),
    ]))
}

fn suite_1f(s: &mut Sampler) -> Tally {
    let mut t = Tally::new();
    for _ in 0..30 {
        let drawn = s.until("realizable parameters", |s| {
            let p = s.okubo_params();
            realize(&p)?;
            Ok(p)
        });
        match drawn {
            Ok(p) => t.case(|| describe_params(&p), realization_checks(&p)),
            Err(e) => t.case(|| "draw".into(), Err(e)),
        }
    }
    t
}

fn suite_1g(s: &mut Sampler) -> Tally {
    let mut t = Tally::new();
    for k in 0..50 {
        let chart = if k % 2 == 0 { special_chart(s) } else { s.chart() };
        match chart {
            Ok(chart) => {
                let outcome = substantially_same(&chart).and_then(|v| {
                    let dual = substantially_same_dual(&chart)?;
                    Ok(check(v.verdict == dual.verdict, "dual verdict differs"))
                });
                t.case(|| describe_chart(&chart), outcome);
            }
            Err(e) => t.case(|| "draw".into(), Err(e)),
        }
    }
    t
}

fn df_checks(p: &DFParams) -> Result<Option<String>> {
    let hg = p.to_hg();
    let red = euler_reduce(&hg)?;
    let verdict = df_transform_check(p)?;
    let mismatch = verdict.mismatch.clone().unwrap_or_default();
    Ok(first_failure(&[
        (setting_identities(p) == [true; 4], "scalar identities"),
        (df_similarity_checks(p) == [true; 3], "C0, C1 spectra"),
        (euler_reduction_checks(&hg, &red) == [true; 3], "K0, K1 spectra"),
        (verdict.verdict, &mismatch),
        (q_tilde_lambda_form(&hg)? == build_q(p, &int(1))?, "lambda form of Q"),
    ]))
}

fn suite_1h(s: &mut Sampler) -> Tally {
    let mut t = Tally::new();
    for _ in 0..30 {
        let drawn = s.until("three-dimensional parameters", |s| {
            let p = s.df_params();
            euler_reduce(&p.to_hg())?;
            df_transform_check(&p)?;
            q_tilde_lambda_form(&p.to_hg())?;
            Ok(p)
        });
        match drawn {
            Ok(p) => t.case(|| describe_df(&p), df_checks(&p)),
            Err(e) => t.case(|| "draw".into(), Err(e)),
        }
    }
    t
}

/// Points with `0.05 <= |x| <= radius`, away from the negative real axis.
fn disc_points(s: &mut Sampler, radius: f64, count: usize) -> Vec<Complex64> {
    (0..count)
        .map(|_| {
            let r = 0.05 + (radius - 0.05) * s.unit_f64();
            let theta = std::f64::consts::PI * 0.9 * (2.0 * s.unit_f64() - 1.0);
            Complex64::from_polar(r, theta)
        })
        .collect()
}

fn numeric_generic_params() -> HGParams {
    HGParams::generic(rat(1, 3), rat(1, 5), rat(1, 7), rat(1, 11), rat(2, 3), rat(5, 4))
}

fn suite_2a(s: &mut Sampler, precision: f64) -> Tally {
    let mut t = Tally::float(precision);
    let params = [numeric_generic_params(), sample_params()];
    for x in disc_points(s, 0.4, 20) {
        for p in &params {
            t.measure(|| format!("{} at {x}", describe_params(p)), w_residual(p, x, 60));
        }
    }
    t
}

fn suite_2b(s: &mut Sampler) -> Tally {
    let mut t = Tally::float(1e-9);
    let p = sample_params();
    for x in disc_points(s, 0.4, 20) {
        t.measure(|| format!("x = {x}"), v_vector(&p, x, 60).map(|r| r.relative_difference));
    }
    t
}

fn series_systems() -> Result<Vec<(String, crate::hg::OkuboSystem)>> {
    let p = sample_params();
    let a0 = build_okubo_zero(&p)?.1;
    let chart = AccessoryChart::complete_r4(rat(1, 3), rat(1, 5), rat(1, 7), rat(1, 11), [int(1), int(2), int(3)])?;
    Ok(vec![
        (format!("A0 of {}", describe_params(&p)), a0),
        (format!("chart {}", describe_chart(&chart)), parametrize_a1(&chart)?),
    ])
}

fn suite_2c(s: &mut Sampler) -> Tally {
    let mut t = Tally::float(1e-9);
    let systems = match series_systems() {
        Ok(v) => v,
        Err(e) => {
            t.measure(|| "systems".into(), Err(e));
            return t;
        }
    };
    for (name, sys) in &systems {
        for (base, radius) in [(BasePoint::Zero, 0.6), (BasePoint::One, 0.6), (BasePoint::Infinity, 1.7)] {
            let mut samples = circle_samples(base, radius, 8);
            // interior points, scaled into the declared disc
            for _ in 0..4 {
                let theta = std::f64::consts::TAU * s.unit_f64();
                let r = match base {
                    BasePoint::Infinity => radius * (1.0 + s.unit_f64()),
                    _ => radius * (0.1 + 0.9 * s.unit_f64()),
                };
                let centre = if base == BasePoint::Zero { 0.0 } else { 1.0 };
                samples.push(Complex64::new(centre, 0.0) + Complex64::from_polar(r, theta));
            }
            for idx in 0..exponents_at(sys, base).len() {
                match local_series(sys, base, idx, 80, Mode::Float) {
                    Ok(sols) => {
                        for (k, sol) in sols.iter().enumerate() {
                            t.measure(
                                || format!("{name}, base {base}, exponent {idx}, solution {k}"),
                                residual_report(sys, sol, &samples).map(|r| r.max_residual),
                            );
                        }
                    }
                    Err(e) => t.measure(|| format!("{name}, base {base}, exponent {idx}"), Err(e)),
                }
            }
        }
    }
    t
}

fn suite_2d() -> Tally {
    let mut t = Tally::float(1e-6);
    let p = DFParams::new(rat(1, 3), rat(1, 5), rat(1, 7), rat(1, 2));
    for x in [0.3, 0.4, 0.5] {
        t.measure(
            || format!("{} at x = {x}", describe_df(&p)),
            df_integral_solution(&p, x, &EulerTransformSpec::default()).map(|r| r.relative_residual),
        );
    }
    t
}

/// Runs one suite on its own substream of `seed`.
pub fn run_suite(id: SuiteId, seed: u64, precision: f64) -> SuiteReport {
    let mut s = Sampler::substream(seed, id.stream());
    let tally = match id {
        SuiteId::InfinityFactorization => suite_1a(&mut s),
        SuiteId::GaugeMatrices => suite_1b(&mut s),
        SuiteId::CubicBlocks => suite_1c(&mut s),
        SuiteId::CrossProductCriterion => suite_1d(&mut s),
        SuiteId::SpecialValues => suite_1e(&mut s),
        SuiteId::Realization => suite_1f(&mut s),
        SuiteId::DualVerdict => suite_1g(&mut s),
        SuiteId::ThreeDimensionalSystem => suite_1h(&mut s),
        SuiteId::ProductResidual => suite_2a(&mut s, precision),
        SuiteId::TwoWayV => suite_2b(&mut s),
        SuiteId::LocalSeries => suite_2c(&mut s),
        SuiteId::IntegralSolution => suite_2d(),
    };
    tally.into_report(id)
}

/// All suites, run concurrently and assembled in fixed order.
pub fn verify_all(seed: u64, precision: f64) -> VerifyReport {
    let suites: Vec<SuiteReport> = std::thread::scope(|scope| {
        let handles: Vec<_> = SuiteId::ALL
            .into_iter()
            .map(|id| scope.spawn(move || run_suite(id, seed, precision)))
            .collect();
        handles.into_iter().map(|h| h.join().expect("suite thread")).collect()
    });
    VerifyReport {
        seed,
        precision,
        passed: suites.iter().all(|s| s.passed),
        suites,
    }
}
