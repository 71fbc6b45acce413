use okubo_core::df::{
    build_df, build_q, df_integral_solution, df_similarity_checks, df_transform_check, euler_reduce,
    euler_reduction_checks, integrand_parameters, q_tilde_lambda_form, setting_identities, DFParams,
    EulerTransformSpec,
};
use okubo_core::exact::{int, rat, Matrix};
use okubo_core::Error;
use proptest::prelude::*;

fn sample() -> DFParams {
    DFParams::new(rat(1, 3), rat(1, 5), rat(1, 7), rat(1, 2))
}

/// Taylor coefficients of `2F1(a, b; c; t)`.
fn taylor(q: [f64; 3], n: usize) -> Vec<f64> {
    let mut out = vec![1.0];
    for k in 0..n - 1 {
        let k = k as f64;
        let last = *out.last().unwrap();
        out.push(last * (q[0] + k) * (q[1] + k) / ((q[2] + k) * (k + 1.0)));
    }
    out
}

/// `int_0^x (x-t)^(mu-1) t^e P(t) dt` summed term by term with Beta integrals.
fn beta_series(mu: f64, e: f64, coeffs: &[f64], x: f64) -> f64 {
    let mut beta = libm::tgamma(mu) * libm::tgamma(e + 1.0) / libm::tgamma(mu + e + 1.0);
    let mut total = 0.0;
    for (n, c) in coeffs.iter().enumerate() {
        total += c * beta * x.powf(mu + e + n as f64);
        let m = e + n as f64 + 1.0;
        beta *= m / (mu + m);
    }
    total
}

fn cauchy(a: &[f64], b: &[f64]) -> Vec<f64> {
    (0..a.len()).map(|n| (0..=n).map(|k| a[k] * b[n - k]).sum()).collect()
}

#[test]
fn integrals_match_beta_series() {
    let p = sample();
    let [a, b, c, g] = p.to_f64();
    let (factors, e) = integrand_parameters([a, b, c, g]);
    for x in [0.3, 0.4, 0.5] {
        let report = df_integral_solution(&p, x, &EulerTransformSpec::default()).unwrap();
        for (k, pair) in factors.iter().enumerate() {
            let coeffs = cauchy(&taylor(pair[0], 120), &taylor(pair[1], 120));
            let oracle = beta_series(g / 2.0, e, &coeffs, x);
            let rel = (report.integrals[k] - oracle).abs() / oracle.abs();
            assert!(rel < 1e-11, "x={x} k={k} rel={rel}");
        }
    }
}

#[test]
fn residual_is_small_on_sample_points() {
    let p = sample();
    for x in [0.3, 0.4, 0.5] {
        let r = df_integral_solution(&p, x, &EulerTransformSpec::default()).unwrap();
        assert!(r.relative_residual <= 1e-6, "x={x} residual={}", r.relative_residual);
    }
}

#[test]
fn contour_scale_does_not_change_z() {
    let p = sample();
    let base = df_integral_solution(&p, 0.4, &EulerTransformSpec::default()).unwrap();
    for kappa in [0.5, 2.0, 3.0] {
        let spec = EulerTransformSpec { contour_scale: kappa, ..Default::default() };
        let r = df_integral_solution(&p, 0.4, &spec).unwrap();
        for i in 0..3 {
            assert!((r.z[i] - base.z[i]).abs() <= 1e-10 * base.z[i].abs().max(1e-300), "{kappa}");
        }
    }
}

#[test]
fn integral_errors() {
    let spec = EulerTransformSpec::default();
    let bad_g = DFParams::new(rat(1, 3), rat(1, 5), rat(1, 7), rat(-1, 2));
    assert!(matches!(df_integral_solution(&bad_g, 0.4, &spec), Err(Error::IntegrabilityConditions(_))));
    let bad_gamma = DFParams::new(int(-3), rat(1, 5), rat(1, 7), rat(1, 2));
    assert!(matches!(df_integral_solution(&bad_gamma, 0.4, &spec), Err(Error::IntegrabilityConditions(_))));
    assert!(matches!(df_integral_solution(&sample(), 1.2, &spec), Err(Error::OutsideDisc(_))));
    let starved = EulerTransformSpec { nodes: 8, ..Default::default() };
    assert!(matches!(
        df_integral_solution(&sample(), 0.4, &starved),
        Err(Error::QuadratureNonConvergence { .. })
    ));
}

#[test]
fn transform_identity_on_sample() {
    let p = sample();
    let v = df_transform_check(&p).unwrap();
    assert!(v.verdict, "{:?}", v.mismatch);
    assert_eq!(q_tilde_lambda_form(&p.to_hg()).unwrap(), v.q_tilde);
    // Q diagonalizes the shifted sum with the stated eigenvalues.
    let (c0, c1) = build_df(&p);
    let shifted = &(&c0 + &c1) - &Matrix::scalar(3, &p.a + &p.b + int(2) * &p.c);
    let expected = Matrix::diag(&[p.g.clone(), &p.a + &p.b + &p.g, -(&p.a + &p.b)]);
    assert_eq!(shifted.conjugate_by(&v.q_tilde).unwrap(), expected);
}

fn small_rational() -> impl Strategy<Value = okubo_core::exact::Scalar> {
    (-40i64..=40, 1i64..=40).prop_map(|(n, d)| rat(n, d))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn transform_identity_random(a in small_rational(), b in small_rational(), c in small_rational(), g in small_rational()) {
        let p = DFParams::new(a, b, c, g);
        prop_assert_eq!(setting_identities(&p), [true; 4]);
        prop_assert_eq!(df_similarity_checks(&p), [true; 3]);
        // Skip the measure-zero set where R or Q degenerates.
        if let Ok(red) = euler_reduce(&p.to_hg()) {
            prop_assert_eq!(euler_reduction_checks(&p.to_hg(), &red), [true; 3]);
            if let Ok(v) = df_transform_check(&p) {
                prop_assert!(v.verdict, "{:?}", v.mismatch);
                prop_assert_eq!(q_tilde_lambda_form(&p.to_hg()).unwrap(), build_q(&p, &int(1)).unwrap());
            }
        }
    }

    #[test]
    fn q_scale_is_irrelevant(num in 1i64..20, den in 1i64..20) {
        let p = sample();
        let q1 = build_q(&p, &int(1)).unwrap();
        let qs = build_q(&p, &rat(num, den)).unwrap();
        let (c0, _) = build_df(&p);
        prop_assert_eq!(c0.conjugate_by(&q1).unwrap(), c0.conjugate_by(&qs).unwrap());
    }
}
