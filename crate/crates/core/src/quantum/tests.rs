use proptest::prelude::*;

use super::*;
use crate::rational::rat;

fn x(lambda: ExactRational) -> QuantumAlgebra {
    QuantumAlgebra::new(ManifoldPreset::sphere_product(lambda).unwrap()).unwrap()
}

fn y(n: i64, d: i64) -> QuantumAlgebra {
    QuantumAlgebra::new(ManifoldPreset::blow_up(rat(n, d)).unwrap()).unwrap()
}

fn ev(alg: &QuantumAlgebra, s: &str) -> QuantumClass {
    parse_expression(alg, s).unwrap()
}

#[test]
fn sphere_product_table() {
    let alg = x(int(2));
    assert_eq!(alg.render(&ev(&alg, "A*B")), "P");
    assert_eq!(ev(&alg, "A*A"), alg.named(BasisClass::M, "-B").unwrap());
    assert_eq!(ev(&alg, "B*B"), alg.named(BasisClass::M, "-A").unwrap());
    let p = alg.preset();
    // rebased: A^2 = M x^-1 y^-1, B^2 = M y^-1
    assert_eq!(p.parse_exponent("-B").unwrap(), LatticeVector::ints(-1, -1));
    assert_eq!(p.parse_exponent("-A").unwrap(), LatticeVector::ints(0, -1));
}

#[test]
fn blow_up_table() {
    for (n, d) in [(1, 4), (1, 2), (2, 3)] {
        let alg = y(n, d);
        assert_eq!(alg.render(&ev(&alg, "E*F")), "P - E ⊗ q^{-E}");
        assert_eq!(alg.render(&ev(&alg, "F*F")), "E ⊗ q^{-E}");
        assert_eq!(alg.render(&ev(&alg, "E*P")), "F ⊗ q^{-F}");
        assert_eq!(alg.render(&ev(&alg, "P*F")), "M ⊗ q^{-E - F}");
        assert_eq!(ev(&alg, "P*P"), ev(&alg, "(E+F)*q^{-E-F}"));
        assert_eq!(ev(&alg, "E*E"), ev(&alg, "-P + E*q^{-E} + q^{-F}"));
        let kappa = alg.preset().kappa().unwrap();
        assert_eq!(alg.preset().parse_exponent("-E-F").unwrap(), LatticeVector::ints(kappa, -3));
    }
}

#[test]
fn unit_and_cycle_example() {
    let alg = y(1, 2);
    let g = ev(&alg, "E*q^{E} - 3*P + 1/2*F*q^{-F}");
    assert_eq!(alg.product(&alg.unit(), &g).unwrap(), g);
    let sq = ev(&alg, "(P*q^{1/2*E + 3/4*F})^2");
    assert_eq!(sq, ev(&alg, "(E+F)*q^{1/2*F}"));
}

#[test]
fn valuation_examples() {
    let alg = x(int(2));
    assert_eq!(alg.val(&alg.unit()).unwrap(), Valuation::Finite(int(0)));
    assert_eq!(alg.val(&ev(&alg, "q^{-B}")).unwrap(), Valuation::Finite(int(-2)));
    assert_eq!(alg.val(&QuantumClass::zero()).unwrap(), Valuation::NegInfinity);
    for n in 1..=5u64 {
        let p = alg.power(&ev(&alg, "A-B"), 2 * n).unwrap();
        assert_eq!(alg.val(&p).unwrap(), Valuation::Finite(int(1 - n as i64)), "n = {n}");
    }
    let t = alg.truncate(&ev(&alg, "q^{-B}"), &int(0));
    assert_eq!(alg.val(&t), Err(Error::ValBelowFloor));
}

#[test]
fn pairing_examples() {
    let alg = x(int(2));
    let m = alg.unit();
    let p = QuantumClass::basis(BasisClass::P);
    assert_eq!(alg.pairing_pi(&m, &p).unwrap(), int(1));
    assert_eq!(alg.pairing_pi(&m, &m).unwrap(), int(0));
    let a = QuantumClass::monomial(int(1), BasisClass::A, LatticeVector::e1());
    let b = QuantumClass::monomial(int(1), BasisClass::B, -&LatticeVector::e1());
    assert_eq!(alg.pairing_pi(&a, &b).unwrap(), int(1));
    assert_eq!(alg.pairing_delta(&m, &p).unwrap(), LaurentScalar::one());
    let shifted = alg.add(&p, &QuantumClass::monomial(int(1), BasisClass::P, LatticeVector::e1()));
    assert_eq!(alg.pairing_delta(&m, &shifted).unwrap(), &LaurentScalar::one() + &LaurentScalar::x());
    assert!(alg.pairing_delta(&p, &p).unwrap().is_zero());
}

#[test]
fn pairing_rejects_unsound_truncation() {
    let alg = x(int(2));
    let a = alg.truncate(&ev(&alg, "M + P*q^{-A}"), &int(-1));
    let b = QuantumClass::monomial(int(1), BasisClass::P, LatticeVector::ints(0, 3));
    assert_eq!(alg.pairing_pi(&a, &b), Err(Error::TruncationUnsound));
    let c = QuantumClass::basis(BasisClass::P);
    assert_eq!(alg.pairing_pi(&a, &c).unwrap(), int(1));
}

#[test]
fn degree_examples() {
    let alg = x(int(2));
    assert_eq!(alg.degree(&ev(&alg, "P*q^{A}")), Degree::Pure(int(4)));
    assert_eq!(alg.degree(&alg.unit()), Degree::Pure(int(4)));
    assert_eq!(alg.degree(&ev(&alg, "M + P")), Degree::Mixed);
}

#[test]
fn truncated_product_floor() {
    let alg = x(int(2));
    let a = alg.truncate(&ev(&alg, "A + B*q^{-e1}"), &int(-1));
    let b = ev(&alg, "M*q^{-A}");
    let prod = alg.product(&a, &b).unwrap();
    // floor_a + val(b) = -1 + -1
    assert_eq!(prod.energy_floor, Some(int(-2)));
}

#[test]
fn perturbed_table_is_rejected() {
    for preset in [ManifoldPreset::sphere_product(int(2)).unwrap(), ManifoldPreset::blow_up(rat(1, 2)).unwrap()] {
        let alg = QuantumAlgebra::with_table_unchecked(preset.clone(), ProductTable::perturbed(&preset));
        assert!(matches!(alg.validate(), Err(Error::TableInconsistent(_))));
    }
}

#[test]
fn text_and_json_roundtrip() {
    let alg = y(1, 4);
    let g = ev(&alg, "3/2*E*q^{-E} - P + M*q^{1/2*e1}");
    let js = alg.to_json(&g);
    assert_eq!(alg.from_json(&js).unwrap(), g);
    let t = alg.truncate(&g, &rat(-1, 8));
    assert_eq!(alg.from_json(&alg.to_json(&t)).unwrap(), t);
    let text = serde_json::to_string(&alg.to_json(&ev(&alg, "F*F"))).unwrap();
    assert_eq!(text, r#"{"energy_floor":null,"terms":[{"class":"E","coeff":"1","exp":{"e1":"0","e2":"-1"}}]}"#);
}

#[test]
fn parser_errors() {
    let alg = x(int(2));
    assert!(matches!(parse_expression(&alg, "E*A"), Err(Error::PresetMismatch(_))));
    assert!(matches!(parse_expression(&alg, "A*"), Err(Error::Parse { .. })));
    assert!(matches!(parse_expression(&alg, "A + (B"), Err(Error::Parse { .. })));
    assert!(matches!(parse_expression(&alg, "A $ B"), Err(Error::Parse { pos: 2, .. })));
    assert_eq!(alg.render(&ev(&alg, "M*M")), "M");
}

fn algebras() -> Vec<QuantumAlgebra> {
    vec![x(rat(3, 2)), x(int(2)), x(int(5)), y(1, 4), y(1, 2), y(2, 3)]
}

fn class_strategy(alg: &QuantumAlgebra) -> impl Strategy<Value = QuantumClass> + Clone {
    let basis = alg.basis();
    prop::collection::vec((0usize..4, -3i64..=3, -2i64..=2, -5i64..=5), 0..5).prop_map(move |terms| {
        QuantumClass::from_terms(
            terms.into_iter().map(|(c, a1, a2, k)| (int(k), basis[c], LatticeVector::ints(a1, a2))),
            None,
        )
    })
}

fn homogeneous_strategy(alg: &QuantumAlgebra) -> impl Strategy<Value = QuantumClass> + Clone {
    let basis = alg.basis();
    let cw = alg.preset().chern_e2.clone();
    // degree 4 + 2*c1(e2)*s, each class with the matching e2 exponent
    (-1i64..=1, prop::collection::vec((0usize..4, -3i64..=3, 1i64..=4), 1..4)).prop_map(move |(s, terms)| {
        let d = int(4) + &cw * int(2 * s);
        QuantumClass::from_terms(
            terms.into_iter().map(|(c, a1, k)| {
                let a2 = (&d - int(basis[c].degree())) / (&cw * int(2));
                (int(k), basis[c], LatticeVector::new(int(a1), a2))
            }),
            None,
        )
    })
}

fn triple() -> impl Strategy<Value = (usize, QuantumClass, QuantumClass, QuantumClass)> {
    (0usize..6).prop_flat_map(|i| {
        let st = class_strategy(&algebras()[i]);
        (Just(i), st.clone(), st.clone(), st)
    })
}

fn homogeneous_pair() -> impl Strategy<Value = (usize, QuantumClass, QuantumClass)> {
    (0usize..6).prop_flat_map(|i| {
        let st = homogeneous_strategy(&algebras()[i]);
        (Just(i), st.clone(), st)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn ring_axioms((i, a, b, c) in triple()) {
        let alg = &algebras()[i];
        let ab = alg.product(&a, &b).unwrap();
        prop_assert_eq!(&ab, &alg.product(&b, &a).unwrap());
        prop_assert_eq!(alg.product(&ab, &c).unwrap(), alg.product(&a, &alg.product(&b, &c).unwrap()).unwrap());
        prop_assert_eq!(&alg.product(&alg.unit(), &a).unwrap(), &a);
        let bound = match (alg.val(&a).unwrap(), alg.val(&b).unwrap()) {
            (Valuation::Finite(x), Valuation::Finite(y)) => Valuation::Finite(x + y),
            _ => Valuation::NegInfinity,
        };
        prop_assert!(alg.val(&ab).unwrap() <= bound);
        prop_assert_eq!(alg.pairing_pi(&a, &b).unwrap(), alg.pairing_pi(&ab, &alg.unit()).unwrap());
        prop_assert_eq!(alg.pairing_delta(&a, &b).unwrap(), alg.pairing_delta(&ab, &alg.unit()).unwrap());
    }

    #[test]
    fn degree_additivity((i, a, b) in homogeneous_pair()) {
        let alg = &algebras()[i];
        let ab = alg.product(&a, &b).unwrap();
        if let (Degree::Pure(da), Degree::Pure(db)) = (alg.degree(&a), alg.degree(&b)) {
            if !ab.is_zero() {
                prop_assert_eq!(alg.degree(&ab), Degree::Pure(da + db - int(4)));
            }
        }
    }

    #[test]
    fn truncation_never_changes_reported_terms((i, a, b, _c) in triple(), f in -6i64..0) {
        let alg = &algebras()[i];
        let ta = alg.truncate(&a, &int(f));
        if ta.is_zero() || b.is_zero() {
            return Ok(());
        }
        let exact = alg.product(&a, &b).unwrap();
        let approx = alg.product(&ta, &b).unwrap();
        let floor = approx.energy_floor.clone().unwrap();
        prop_assert_eq!(approx.terms, alg.truncate(&exact, &floor).terms);
    }
}
