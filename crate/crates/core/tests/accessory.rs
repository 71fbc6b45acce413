use num_traits::Zero;
use okubo_core::accessory::*;
use okubo_core::exact::{int, j2, rat, Matrix, Poly, PolyMatrix, Scalar};
use okubo_core::hg::{build_okubo_zero, HGParams};
use okubo_core::Error;

fn abcd() -> (Scalar, Scalar, Scalar, Scalar) {
    (rat(1, 3), rat(1, 5), rat(1, 7), rat(1, 11))
}

fn special_chart() -> AccessoryChart {
    let (a, b, c, d) = abcd();
    solve_accessory(&a, &b, &c, &d, Branch::ViaR4, &int(1)).unwrap().chart
}

fn generic_chart() -> AccessoryChart {
    let (a, b, c, d) = abcd();
    AccessoryChart::complete_r4(a, b, c, d, [int(1), int(2), int(3)]).unwrap()
}

#[test]
fn via_r4_sample_values() {
    let chart = special_chart();
    assert_eq!(chart.r[0], rat(24047, 74867));
    let expected = (rat(41, 105) * rat(41, 105) - rat(1, 121)) / (rat(71, 105) * rat(71, 105) - rat(1, 121));
    assert_eq!(chart.r[0], expected);
    assert_eq!(chart.r[1], rat(-11342, 1363));
    assert_eq!(chart.r[2], rat(-272741074, 102043721));
    assert_eq!(chart.r[3], int(1));
}

#[test]
fn via_r3_sample_values() {
    let (a, b, c, d) = abcd();
    let s = solve_accessory(&a, &b, &c, &d, Branch::ViaR3, &int(1)).unwrap();
    assert_eq!(s.chart.r, [rat(-1363, 11342), rat(74867, 24047), int(1), rat(-102043721, 272741074)]);
    assert!(s.chart.projectively_equal(&special_chart()));
}

#[test]
fn a1_entries_and_spectrum() {
    let chart = generic_chart();
    let sys = parametrize_a1(&chart).unwrap();
    let a1 = sys.coefficient();
    let [r1, r2, r3, _] = &chart.r;
    assert_eq!(a1.get(0, 0), &chart.a);
    let (b, c) = (&chart.b, &chart.c);
    assert_eq!(a1.get(0, 2), &(((b - c) * r2 - (b + c) * r3) / (r1 - r2)));
    assert!(sys.has_expected_spectrum());
    assert!(sys.check_block_form().is_ok());
    assert!(parametrize_a1(&special_chart()).unwrap().has_expected_spectrum());
}

#[test]
fn chart_errors() {
    let (a, b, c, d) = abcd();
    let bad = AccessoryChart::new(a.clone(), b.clone(), c.clone(), d.clone(), [int(1), int(1), int(2), int(3)]);
    assert!(matches!(parametrize_a1(&bad), Err(Error::DegenerateChart(_))));
    let bad = AccessoryChart::new(a, b, c, d, [int(1), int(2), int(3), int(4)]);
    assert!(matches!(parametrize_a1(&bad), Err(Error::DConditionFails { .. })));
}

#[test]
fn chart_json_round_trip() {
    let chart = special_chart();
    let text = serde_json::to_string(&chart).unwrap();
    assert!(text.contains("\"r\":[\"24047/74867\""));
    let back: AccessoryChart = serde_json::from_str(&text).unwrap();
    assert_eq!(back, chart);
    assert!(serde_json::from_str::<AccessoryChart>(r#"{"a":"x","b":"1","c":"1","d":"1","r":["1","1","1","1"]}"#).is_err());
}

#[test]
fn epsilon_delta_cases() {
    assert!(epsilon_delta(&special_chart()).unwrap().both_zero());
    let (a, b, c, d) = abcd();
    let sym = AccessoryChart::new(a, b, c, d, [int(2), int(5), int(2), int(5)]);
    assert!(epsilon_delta(&sym).unwrap().delta.is_zero());
    let ed = epsilon_delta(&generic_chart()).unwrap();
    assert!(!ed.both_zero());
    let chart = generic_chart();
    let k = int(2) / ((&chart.r[0] - &chart.r[1]) * (&chart.r[2] - &chart.r[3]));
    assert_eq!(ed.epsilon_prime, &k * &ed.epsilon);
    assert_eq!(ed.delta_prime, &k * &ed.delta);
}

fn check_cubic_blocks(chart: &AccessoryChart) {
    let blocks = cubic_blocks(chart).unwrap();
    let a1 = chart.a1_matrix().unwrap();
    let adj = resolvent_adjugate(&a1);
    let a11 = adj.block(0, 0, 2);
    assert_eq!(blocks.a11(), a11);
    assert_eq!(blocks.a11_adjugate(), a11.adjugate());
    let (a, b, c, d) = (&chart.a, &chart.b, &chart.c, &chart.d);
    let expected = Poly::difference_of_squares(b) * Poly::difference_of_squares(c) * Poly::difference_of_squares(d);
    assert_eq!(a11.det(), expected);
    assert_eq!(blocks.q11, j2().scale(a));
    let ed = epsilon_delta(chart).unwrap();
    assert_eq!(blocks.s11.trace(), int(-2) * a * b * c * &ed.delta_prime);
    let prod = &chart.a12_prime().unwrap() * &chart.a21_prime().unwrap();
    assert_eq!(prod, a12_a21_closed_form(chart).unwrap());
    let _ = d;
}

#[test]
fn cubic_blocks_generic_and_special() {
    check_cubic_blocks(&generic_chart());
    check_cubic_blocks(&special_chart());
}

#[test]
fn difference_system_shapes() {
    let chart = generic_chart();
    let (g, h) = difference_systems(&chart, PointPair::OneAndInf).unwrap();
    assert_eq!(g.numerator.coefficient(3), Matrix::identity(2).scale(&int(-1)));
    assert_eq!(g.cubic.coefficient(2), j2().scale(&-&chart.a));
    assert_eq!(h.cubic.coefficient(2), j2().scale(&-&chart.a));
    assert_eq!(g.label, SystemLabel::GAt1);
    assert_eq!(h.direction, Direction::ForwardInZ);
}

/// The g-step against the 4x4 resolvent: `g1(z) = -(z+1)/phi(z) A11(z) g1(z+1)`.
#[test]
fn g_step_matches_full_resolvent() {
    let chart = generic_chart();
    let (g, _) = difference_systems(&chart, PointPair::OneAndInf).unwrap();
    let a1 = chart.a1_matrix().unwrap();
    let z0 = rat(7, 2);
    let f = vec![rat(2, 3), rat(-5, 7)];
    let next = g.step(&z0, &f).unwrap();
    let inv = (&Matrix::identity(4).scale(&z0) - &a1).inverse().unwrap();
    let back = inv.block(0, 0, 2).scale(&-(&z0 + int(1))).apply(&next);
    assert_eq!(back, f);
}

/// Stepping h1 by the reduced system and recovering h2 through the second
/// block row reproduces the 4x4 recurrence.
#[test]
fn h_step_matches_full_recurrence() {
    let chart = generic_chart();
    let (_, h) = difference_systems(&chart, PointPair::OneAndInf).unwrap();
    let a1 = chart.a1_matrix().unwrap();
    let z0 = rat(9, 4);
    let h1 = vec![rat(1, 2), rat(3, 5)];
    let next1 = h.step(&z0, &h1).unwrap();
    let adj = resolvent_adjugate(&a1);
    let phi = (Poly::difference_of_squares(&chart.c) * Poly::difference_of_squares(&chart.d)).eval(&z0);
    let k = (&z0 - int(1)) / phi;
    let next2 = adj.block(2, 0, 2).reflect().eval(&z0).scale(&k).apply(&h1);
    let full_next: Vec<Scalar> = next1.iter().chain(next2.iter()).cloned().collect();
    let t_minus_i = Matrix::diag(&[int(-1), int(-1), int(0), int(0)]);
    let lhs = (&Matrix::identity(4).scale(&z0) + &a1).apply(&full_next);
    let cur: Vec<Scalar> = h1.iter().cloned().chain([rat(7, 3), rat(-1, 9)]).collect();
    let rhs: Vec<Scalar> = t_minus_i.apply(&cur).into_iter().map(|x| x * (&z0 - int(1))).collect();
    assert_eq!(lhs, rhs);
}

#[test]
fn substantially_same_verdicts() {
    let yes = substantially_same(&special_chart()).unwrap();
    assert!(yes.verdict);
    assert!(yes.cross_products.iter().all(|c| c.poly.is_zero()));
    assert_eq!(yes.cross_products.len(), 6);
    let no = substantially_same(&generic_chart()).unwrap();
    assert!(!no.verdict);
    assert!(!no.nonzero_cross_products().is_empty());
    assert!(substantially_same_dual(&special_chart()).unwrap().verdict);
    assert!(!substantially_same_dual(&generic_chart()).unwrap().verdict);
    let json = yes.to_json();
    assert_eq!(json["epsilon"], "0");
    assert_eq!(json["verdict"], true);
}

#[test]
fn leading_cross_coefficients_match() {
    for chart in [generic_chart(), special_chart()] {
        assert_eq!(leading_cross_coefficients(&chart).unwrap(), leading_cross_closed_form(&chart).unwrap());
    }
}

#[test]
fn special_matrix_entry_and_branch_agreement() {
    let (a, b, c, d) = abcd();
    let m = special_matrix(&a, &b, &c, &d).unwrap();
    let expected = ((&a - &b + &c) * (&a - &b + &c) - &d * &d) / (int(4) * &a);
    assert_eq!(m.get(0, 2), &expected);
    let s4 = solve_accessory(&a, &b, &c, &d, Branch::ViaR4, &int(1)).unwrap();
    let s3 = solve_accessory(&a, &b, &c, &d, Branch::ViaR3, &rat(3, 2)).unwrap();
    assert_eq!(s4.system.coefficient(), s3.system.coefficient());
    let auto = solve_accessory(&a, &b, &c, &d, Branch::Auto, &int(1)).unwrap();
    assert_eq!(auto.branch, Branch::ViaR4);
    assert!(on_special_locus(&s3.chart));
    assert!(!on_special_locus(&generic_chart()));
}

/// A vanishing branch factor puts a zero into `r` on both branches.
#[test]
fn vanishing_branch_factor_leaves_the_chart() {
    let (a, b, c) = (rat(1, 3), rat(1, 5), rat(1, 7));
    let d = &a + &b + &c;
    assert!(matches!(
        solve_accessory(&a, &b, &c, &d, Branch::ViaR4, &int(1)),
        Err(Error::VanishingFactor(_))
    ));
    assert!(matches!(
        solve_accessory(&a, &b, &c, &d, Branch::Auto, &int(1)),
        Err(Error::DegenerateChart(_))
    ));
}

#[test]
fn inadmissible_exponents_rejected() {
    assert!(matches!(
        solve_accessory(&rat(1, 2), &rat(1, 2), &rat(1, 7), &rat(1, 11), Branch::Auto, &int(1)),
        Err(Error::Admissibility(_))
    ));
}

#[test]
fn symbolic_identities() {
    for (i1, i2) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
        assert!(conditional_identity_residual(i1, i2).is_zero(), "sign pair {i1} {i2}");
    }
    assert!(delta_factorization_residual().is_zero());
    for r in d_condition_rewrite_residuals() {
        assert!(r.is_zero());
    }
}

fn sample_params() -> HGParams {
    HGParams::okubo(rat(1, 3), rat(1, 5), rat(1, 7), rat(1, 11))
}

#[test]
fn realization_sample() {
    let p = sample_params();
    let real = realize(&p).unwrap();
    assert!(real.verdict);
    let [a, b, c, d] = realized_exponents(&p);
    let f = branch_factors(&a, &b, &c, &d);
    let [x, y] = branch_products_lambda_form(&p);
    assert_eq!(&f[0] * &f[3], x);
    assert_eq!(&f[1] * &f[2], y);
    let lam = realized_a1_lambda_form(&p).unwrap();
    assert_eq!(lam, real.a1);
    assert_eq!(lam.get(0, 2), &(int(2) * p.lam("+000") * p.lam("+++-") / p.lam("++++")));
    let r = okubo_core::hg::build_r(&p).unwrap();
    assert_eq!(Matrix::diag(&r.row(0)), real.d1);
}

#[test]
fn recover_chart_round_trip() {
    let p = HGParams::okubo(rat(1, 3), rat(1, 5), rat(1, 7), rat(1, 11));
    let (_, a0) = build_okubo_zero(&p).unwrap();
    let e = a0.exponents();
    let (dmat, chart) = recover_chart(a0.coefficient(), &e.a, &e.b, &e.c, &e.d).unwrap();
    chart.validate().unwrap();
    let conj = &(&dmat * a0.coefficient()) * &dmat.inverse().unwrap();
    assert_eq!(&conj, parametrize_a1(&chart).unwrap().coefficient());
    // A0 is realized by the special matrix, so its chart is special
    assert!(substantially_same(&chart).unwrap().verdict);
}

#[test]
fn recover_chart_fixed_point() {
    let chart = generic_chart();
    let a1 = chart.a1_matrix().unwrap();
    let (dmat, rec) = recover_chart(&a1, &chart.a, &chart.b, &chart.c, &chart.d).unwrap();
    assert_eq!(dmat, Matrix::identity(4));
    assert!(rec.projectively_equal(&chart));
}

#[test]
fn recover_chart_rejects_broken_blocks() {
    let (a, b, c, d) = abcd();
    let m = Matrix::diag(&[c.clone(), -&c, d.clone(), -&d]);
    assert!(matches!(recover_chart(&m, &a, &b, &c, &d), Err(Error::BlockStructure(_))));
}

#[test]
fn dual_determinant() {
    let chart = generic_chart();
    let adj = resolvent_adjugate(&chart.a1_matrix().unwrap());
    let a22: PolyMatrix = adj.block(2, 2, 2);
    let expected = Poly::difference_of_squares(&chart.a)
        * Poly::difference_of_squares(&chart.c)
        * Poly::difference_of_squares(&chart.d);
    assert_eq!(a22.det(), expected);
}
