use okubo_core::exact::{rat, Matrix, Scalar};
use okubo_core::hg::*;
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Scalar> {
    (-50i64..=50, 1i64..=50).prop_map(|(n, d)| rat(n, d))
}

fn generic() -> impl Strategy<Value = HGParams> {
    (rational(), rational(), rational(), rational(), rational(), rational())
        .prop_map(|(a1, b1, a2, b2, g1, g2)| HGParams::generic(a1, b1, a2, b2, g1, g2))
}

fn okubo() -> impl Strategy<Value = HGParams> {
    (rational(), rational(), rational(), rational()).prop_map(|(a1, b1, a2, b2)| HGParams::okubo(a1, b1, a2, b2))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn residues_carry_the_riemann_scheme(p in generic()) {
        let sys = build_product_system(&p);
        let [e0, e1, einf] = riemann_scheme(&p);
        prop_assert_eq!(sys.residue_at_0.charpoly(), poly_with_roots(&e0));
        prop_assert_eq!(sys.residue_at_1.charpoly(), poly_with_roots(&e1));
        prop_assert_eq!(sys.residue_at_infinity().charpoly(), poly_with_roots(&einf));
    }

    #[test]
    fn a0_has_the_expected_spectrum(p in okubo()) {
        if let Ok((pm, a0)) = build_okubo_zero(&p) {
            prop_assert!(a0.has_expected_spectrum());
            prop_assert!(a0.check_block_form().is_ok());
            prop_assert_eq!(pm.det(), det_p_closed_form(&p));
            prop_assert_eq!(a0.coefficient().charpoly(), spectral_form(&p).charpoly());
            if let Ok(r) = build_r(&p) {
                let rinv = r.inverse().unwrap();
                prop_assert_eq!(&(&r * a0.coefficient()) * &rinv, spectral_form(&p));
            }
        }
    }

    #[test]
    fn param_file_round_trip(p in generic()) {
        let file = ParamFile::from_params(&p);
        let text = serde_json::to_string(&file).unwrap();
        let back: ParamFile = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back.to_params().unwrap(), p);
    }

    #[test]
    fn matrices_round_trip_through_json(p in okubo()) {
        let sys = build_product_system(&p);
        let text = serde_json::to_string(&sys.residue_at_1).unwrap();
        let back: Matrix = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back, sys.residue_at_1);
    }
}
