use std::fs;
use std::path::Path;

use num_complex::Complex64;
use okubo_core::accessory::{
    parametrize_a1, realize, recover_chart, solve_accessory, substantially_same, substantially_same_dual,
    AccessoryChart,
};
use okubo_core::df::{
    build_df, build_q, df_integral_solution, df_similarity_checks, df_transform_check, euler_reduce,
    euler_reduction_checks, setting_identities, DFFile, DFParams, EulerTransformSpec,
};
use okubo_core::exact::{format_scalar, parse_scalar, Matrix, Scalar};
use okubo_core::hg::{
    build_okubo_zero, build_product_system, build_r, det_p_closed_form, det_r_closed_form,
    infinity_charpoly_closed_form, rp_inverse_closed_form, riemann_scheme, spectral_form, HGParams,
    OkuboSystem, ParamFile,
};
use okubo_core::series::{
    circle_samples, exponents_at, local_series, residual_report, v_vector, BasePoint, Coefficients,
    SeriesSolution,
};
use okubo_core::verify::verify_all;
use okubo_core::Error;
use serde::de::DeserializeOwned;
use serde_json::{json, Value};

use crate::args::{Command, DFArgs, SeriesArgs, SystemSource};
use crate::failure::{Failure, Outcome};

/// Default tolerance of the integral solution residual.
const DF_TOLERANCE: f64 = 1e-6;

fn read_json<T: DeserializeOwned>(path: &Path, flag: &str) -> Result<T, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::new("io", format!("cannot read {}: {e}", path.display())).with("flag", flag))?;
    serde_json::from_str(&text).map_err(|e| {
        Failure::new("parse", format!("{}: {e}", path.display()))
            .with("flag", flag)
            .with("file", path.display().to_string())
    })
}

fn load_params(path: &Path) -> Result<HGParams, Failure> {
    let file: ParamFile = read_json(path, "--params")?;
    file.to_params()
        .map_err(|e| Failure::from(e).with("file", path.display().to_string()))
}

fn load_chart(path: &Path) -> Result<AccessoryChart, Failure> {
    read_json(path, "--chart")
}

fn load_df(args: &DFArgs) -> Result<(DFParams, Option<DFFile>), Failure> {
    if let Some(path) = &args.params {
        let file: DFFile = read_json(path, "--params")?;
        let p = file.to_params().map_err(|e| Failure::from(e).with("file", path.display().to_string()))?;
        return Ok((p, Some(file)));
    }
    match (&args.a, &args.b, &args.c, &args.g) {
        (Some(a), Some(b), Some(c), Some(g)) => Ok((DFParams::new(a.clone(), b.clone(), c.clone(), g.clone()), None)),
        _ => Err(Failure::new("invalid_input", "give --params FILE or all of --a --b --c --g")),
    }
}

fn s(x: &Scalar) -> Value {
    json!(format_scalar(x))
}

fn m(x: &Matrix) -> Value {
    serde_json::to_value(x).expect("matrix serializes")
}

fn params_json(p: &HGParams) -> Value {
    serde_json::to_value(ParamFile::from_params(p)).expect("params serialize")
}

fn system_json(sys: &OkuboSystem) -> Value {
    let e = sys.exponents();
    json!({
        "T": m(sys.t()),
        "A": m(sys.coefficient()),
        "exponents": {"a": s(&e.a), "b": s(&e.b), "c": s(&e.c), "d": s(&e.d)},
    })
}

fn checks_json(items: &[(&str, bool)]) -> (Value, bool) {
    let map: serde_json::Map<String, Value> = items.iter().map(|(k, v)| (k.to_string(), json!(v))).collect();
    (Value::Object(map), items.iter().all(|(_, v)| *v))
}

fn build_product(params: &Path) -> Result<Outcome, Failure> {
    let p = load_params(params)?;
    let sys = build_product_system(&p);
    let scheme = riemann_scheme(&p);
    let factored = sys.residue_at_infinity().charpoly() == infinity_charpoly_closed_form(&p);
    let scheme_json: Vec<Vec<Value>> = scheme.iter().map(|row| row.iter().map(s).collect()).collect();
    Ok(Outcome::verdict(
        json!({
            "params": params_json(&p),
            "H0": m(&sys.residue_at_0),
            "H1": m(&sys.residue_at_1),
            "H_inf": m(&sys.residue_at_infinity()),
            "riemann_scheme": {"0": scheme_json[0], "1": scheme_json[1], "inf": scheme_json[2]},
            "infinity_factorization": factored,
        }),
        factored,
    ))
}

fn build_okubo(params: &Path) -> Result<Outcome, Failure> {
    let p = load_params(params)?;
    let (pm, a0) = build_okubo_zero(&p)?;
    let r = build_r(&p)?;
    let pinv = pm.inverse()?;
    let rinv = r.inverse()?;
    let (checks, ok) = checks_json(&[
        ("det_p", pm.det() == det_p_closed_form(&p)),
        ("det_r", r.det() == det_r_closed_form(&p)?),
        ("r_diagonalizes", &(&r * a0.coefficient()) * &rinv == spectral_form(&p)),
        ("rp_inverse", &r * &pinv == rp_inverse_closed_form(&p)?),
        ("spectrum", a0.has_expected_spectrum()),
    ]);
    Ok(Outcome::verdict(
        json!({
            "params": params_json(&p),
            "P": m(&pm),
            "R": m(&r),
            "system": system_json(&a0),
            "checks": checks,
        }),
        ok,
    ))
}

#[derive(serde::Deserialize)]
struct MatrixFile {
    matrix: Matrix,
    a: String,
    b: String,
    c: String,
    d: String,
}

fn recover(params: Option<&Path>, matrix: Option<&Path>) -> Result<Outcome, Failure> {
    let (a, e) = match (params, matrix) {
        (Some(path), _) => {
            let (_, a0) = build_okubo_zero(&load_params(path)?)?;
            let e = a0.exponents().clone();
            (a0.coefficient().clone(), [e.a, e.b, e.c, e.d])
        }
        (None, Some(path)) => {
            let f: MatrixFile = read_json(path, "--matrix")?;
            let e = [parse_scalar(&f.a)?, parse_scalar(&f.b)?, parse_scalar(&f.c)?, parse_scalar(&f.d)?];
            (f.matrix, e)
        }
        (None, None) => return Err(Failure::new("invalid_input", "give --params or --matrix")),
    };
    let (dmat, chart) = recover_chart(&a, &e[0], &e[1], &e[2], &e[3])?;
    Ok(Outcome::ok(json!({"D": m(&dmat), "chart": chart})))
}

fn solve(e: &crate::args::ExponentArgs, branch: okubo_core::accessory::Branch) -> Result<Outcome, Failure> {
    let sol = solve_accessory(&e.a, &e.b, &e.c, &e.d, branch, &Scalar::from_integer(1.into()))?;
    Ok(Outcome::ok(json!({
        "branch": sol.branch,
        "chart": sol.chart,
        "matrix": m(sol.system.coefficient()),
    })))
}

fn check_same(chart: &Path, dual: bool) -> Result<Outcome, Failure> {
    let chart = load_chart(chart)?;
    let v = if dual { substantially_same_dual(&chart)? } else { substantially_same(&chart)? };
    let mut body = v.to_json();
    body["pair"] = json!(if dual { "0-inf" } else { "1-inf" });
    Ok(Outcome::verdict(body, v.verdict))
}

fn verify_realize(params: &Path) -> Result<Outcome, Failure> {
    let p = load_params(params)?;
    let real = realize(&p)?;
    Ok(Outcome::verdict(
        json!({"D1": m(&real.d1), "A1": m(&real.a1), "A0": m(&real.a0), "verdict": real.verdict}),
        real.verdict,
    ))
}

fn load_system(src: &SystemSource) -> Result<OkuboSystem, Failure> {
    match (&src.params, &src.chart) {
        (Some(p), _) => Ok(build_okubo_zero(&load_params(p)?)?.1),
        (None, Some(c)) => Ok(parametrize_a1(&load_chart(c)?)?),
        (None, None) => Err(Failure::new("invalid_input", "give --params or --chart")),
    }
}

fn coefficients_json(c: &Coefficients) -> Value {
    match c {
        Coefficients::Exact(rows) => json!(rows
            .iter()
            .map(|r| r.iter().map(format_scalar).collect::<Vec<_>>())
            .collect::<Vec<_>>()),
        Coefficients::Float(rows) => json!(rows),
    }
}

fn solution_json(sol: &SeriesSolution) -> Value {
    json!({
        "base_point": sol.base_point,
        "exponent": s(&sol.exponent),
        "variable": sol.variable,
        "coefficients": coefficients_json(&sol.coeffs),
    })
}

fn series_for(args: &SeriesArgs) -> Result<(OkuboSystem, Vec<SeriesSolution>), Failure> {
    let sys = load_system(&args.source)?;
    let sols = local_series(&sys, args.base, args.exponent, args.terms, args.mode)?;
    Ok((sys, sols))
}

fn series(args: &SeriesArgs) -> Result<Outcome, Failure> {
    let (sys, sols) = series_for(args)?;
    let exps: Vec<Value> = exponents_at(&sys, args.base).iter().map(s).collect();
    Ok(Outcome::ok(json!({
        "exponents": exps,
        "solutions": sols.iter().map(solution_json).collect::<Vec<_>>(),
    })))
}

fn declared_radius(base: BasePoint) -> f64 {
    match base {
        BasePoint::Infinity => 1.7,
        _ => 0.6,
    }
}

fn residual(args: &SeriesArgs, x: Option<f64>, tol: f64) -> Result<Outcome, Failure> {
    let (sys, sols) = series_for(args)?;
    let samples = match x {
        Some(x) => vec![Complex64::new(x, 0.0)],
        None => circle_samples(args.base, declared_radius(args.base), 8),
    };
    let mut worst = 0.0f64;
    let mut reports = Vec::new();
    for sol in &sols {
        let rep = residual_report(&sys, sol, &samples)?;
        worst = worst.max(rep.max_residual);
        reports.push(rep);
    }
    let ok = worst <= tol;
    Ok(Outcome::verdict(
        json!({"reports": reports, "max_residual": worst, "tolerance": tol, "passed": ok}),
        ok,
    ))
}

fn v_vec(params: &Path, x: f64, terms: usize, tol: f64) -> Result<Outcome, Failure> {
    let p = load_params(params)?;
    let rep = v_vector(&p, Complex64::new(x, 0.0), terms)?;
    let re_im = |v: &[Complex64]| v.iter().map(|z| json!([z.re, z.im])).collect::<Vec<_>>();
    let ok = rep.relative_difference <= tol;
    Ok(Outcome::verdict(
        json!({
            "x": x,
            "via_w": re_im(&rep.via_w),
            "via_shifted": re_im(&rep.via_shifted),
            "relative_difference": rep.relative_difference,
            "residual": rep.residual,
            "tolerance": tol,
            "passed": ok,
        }),
        ok,
    ))
}

fn df_build(args: &DFArgs) -> Result<Outcome, Failure> {
    let (p, _) = load_df(args)?;
    let (c0, c1) = build_df(&p);
    let [s0, s1, s01] = df_similarity_checks(&p);
    let (checks, ok) = checks_json(&[("c0_shift", s0), ("c1_shift", s1), ("sum_shift", s01)]);
    Ok(Outcome::verdict(json!({"params": p.to_file(), "C0": m(&c0), "C1": m(&c1), "checks": checks}), ok))
}

fn df_reduce(args: &DFArgs) -> Result<Outcome, Failure> {
    let (p, _) = load_df(args)?;
    let hg = p.to_hg();
    let red = euler_reduce(&hg)?;
    let [k0, k1, sum] = euler_reduction_checks(&hg, &red);
    let (checks, ok) = checks_json(&[("k0_spectrum", k0), ("k1_spectrum", k1), ("sum_diagonal", sum)]);
    Ok(Outcome::verdict(
        json!({
            "params": p.to_file(),
            "hypergeometric": params_json(&hg),
            "mu": s(&red.mu),
            "E0": m(&red.e0),
            "E1": m(&red.e1),
            "K0": m(&red.k0),
            "K1": m(&red.k1),
            "checks": checks,
        }),
        ok,
    ))
}

fn df_verify(args: &DFArgs) -> Result<Outcome, Failure> {
    let (p, _) = load_df(args)?;
    let v = df_transform_check(&p)?;
    let ids = setting_identities(&p);
    let ok = v.verdict && ids == [true; 4];
    Ok(Outcome::verdict(
        json!({
            "params": p.to_file(),
            "verdict": v.verdict,
            "mismatch": v.mismatch,
            "Q": m(&build_q(&p, &Scalar::from_integer(1.into()))?),
            "K0": m(&v.k0),
            "K1": m(&v.k1),
            "scalar_identities": ids,
        }),
        ok,
    ))
}

fn df_solve(args: &DFArgs, x: Option<f64>, nodes: Option<usize>, tol: f64) -> Result<Outcome, Failure> {
    let (p, file) = load_df(args)?;
    let x = x
        .or(file.as_ref().and_then(|f| f.x))
        .ok_or_else(|| Failure::new("invalid_input", "give --x or an x field in the parameter file"))?;
    let mut spec = EulerTransformSpec::default();
    if let Some(n) = nodes.or(file.as_ref().and_then(|f| f.nodes)) {
        spec.nodes = n;
    }
    let rep = df_integral_solution(&p, x, &spec)?;
    let ok = rep.relative_residual <= tol;
    let mut body = serde_json::to_value(&rep).expect("report serializes");
    body["tolerance"] = json!(tol);
    body["passed"] = json!(ok);
    Ok(Outcome::verdict(body, ok))
}

pub fn run(cmd: &Command, precision: f64, tol_override: Option<f64>) -> Result<Outcome, Failure> {
    let tol = |default: f64| tol_override.unwrap_or(default);
    match cmd {
        Command::BuildProduct(a) => build_product(&a.params),
        Command::BuildOkubo(a) => build_okubo(&a.params),
        Command::RecoverChart { params, matrix } => recover(params.as_deref(), matrix.as_deref()),
        Command::SolveAccessory { exponents, branch } => solve(exponents, *branch),
        Command::CheckSame { chart, dual } => check_same(chart, *dual),
        Command::VerifyRealize(a) => verify_realize(&a.params),
        Command::Series(a) => series(a),
        Command::Residual { series, x } => residual(series, *x, tol(precision)),
        Command::VVector { params, x, terms } => v_vec(params, *x, *terms, tol(precision)),
        Command::DfBuild(a) => df_build(a),
        Command::DfReduce(a) => df_reduce(a),
        Command::DfVerify(a) => df_verify(a),
        Command::DfSolve { df, x, nodes } => df_solve(df, *x, *nodes, tol(DF_TOLERANCE)),
        Command::VerifyAll { seed } => {
            let report = verify_all(*seed, precision);
            let ok = report.passed;
            Ok(Outcome::verdict(serde_json::to_value(report).expect("report serializes"), ok))
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::new(e.code(), e.to_string())
    }
}
