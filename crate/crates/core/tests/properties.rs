use proptest::prelude::*;

use qhcalc::battery::agree_to;
use qhcalc::factor::{factor_polynomial, SeriesPoly, Splitting, Verdict};
use qhcalc::poly::LaurentPoly;
use qhcalc::quantum::BasisClass;
use qhcalc::rational::{int, rat};
use qhcalc::seidel::{seidel_inverse, spectral_number, SeidelElement};
use qhcalc::{LaurentScalar, LatticeVector, ManifoldPreset, QuantumAlgebra, QuantumClass};

fn lp(terms: &[(i64, i64)]) -> LaurentScalar {
    let mut p = LaurentPoly::zero();
    for &(k, c) in terms {
        p.add_term(k, int(c));
    }
    LaurentScalar::from_laurent_poly(&p)
}

fn presets() -> Vec<ManifoldPreset> {
    vec![ManifoldPreset::sphere_product(int(2)).unwrap(), ManifoldPreset::blow_up(rat(1, 2)).unwrap()]
}

fn monomial(alg: &QuantumAlgebra, i: usize, a: i64, b: i64) -> QuantumClass {
    QuantumClass::monomial(int(1), alg.basis()[i % 4], LatticeVector::ints(a, b))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    // (β - a - c x⁻¹)(β - b - d x⁻¹) with a ≠ b splits into two lifted
    // factors whose product is the input.
    #[test]
    fn two_linear_factors_are_recovered(a in -4i64..4, gap in 1i64..4, c in -3i64..3, d in -3i64..3) {
        let b = a + gap;
        let f = SeriesPoly::new(vec![lp(&[(0, -a), (-1, -c)]), LaurentScalar::one()]);
        let g = SeriesPoly::new(vec![lp(&[(0, -b), (-1, -d)]), LaurentScalar::one()]);
        let p = f.mul(&g);
        let cert = factor_polynomial(&p, -20).unwrap();
        prop_assert_eq!(&cert.verdict, &Verdict::SemisimpleSplit(2));
        prop_assert!(agree_to(&cert.product(), &p, -20));
    }

    #[test]
    fn spectral_numbers_are_subadditive(
        which in 0usize..2, i in 0usize..4, j in 0usize..4, k in 0i64..5, l in 0i64..5,
        a1 in -1i64..2, a2 in -1i64..2,
    ) {
        let p = &presets()[which];
        let alg = QuantumAlgebra::new(p.clone()).unwrap();
        let s = seidel_inverse(p, &-SeidelElement::default_depth(p));
        let x = monomial(&alg, i, a1, a2);
        let y = monomial(&alg, j, 0, 0);
        let xy = alg.product(&x, &y).unwrap();
        prop_assume!(!xy.is_zero());
        let lhs = spectral_number(&alg, &xy, &s, k + l).unwrap();
        let rhs = spectral_number(&alg, &x, &s, k).unwrap() + spectral_number(&alg, &y, &s, l).unwrap();
        prop_assert!(lhs <= rhs);
    }

    #[test]
    fn novikov_shift_moves_spectral_numbers_by_area(
        which in 0usize..2, i in 0usize..4, k in 0i64..6, a1 in -2i64..3, a2 in -2i64..3,
    ) {
        let p = &presets()[which];
        let alg = QuantumAlgebra::new(p.clone()).unwrap();
        let s = seidel_inverse(p, &-SeidelElement::default_depth(p));
        let x = monomial(&alg, i, 0, 0);
        let v = LatticeVector::ints(a1, a2);
        let shifted = spectral_number(&alg, &x.shift(p, &v), &s, k).unwrap();
        prop_assert_eq!(shifted, spectral_number(&alg, &x, &s, k).unwrap() + p.omega_of(&v));
    }

    #[test]
    fn inverses_in_the_sphere_product_field(c0 in -3i64..4, c1 in -3i64..4, e0 in -2i64..2, e1 in -2i64..2) {
        prop_assume!(c0 != 0 || c1 != 0);
        let sp = Splitting::new(&ManifoldPreset::sphere_product(int(2)).unwrap(), -30).unwrap();
        let st = &sp.structure;
        let g = st.element(&SeriesPoly::new(vec![lp(&[(e0, c0)]), lp(&[(e1, c1)])]));
        let inv = sp.invert(&g).unwrap();
        prop_assert!(agree_to(st.mul(&g, &inv).poly(), st.one().poly(), -20));
        prop_assert!(sp.inversion_defect(&g).unwrap() >= int(0));
    }
}

#[test]
fn unit_has_spectral_number_zero_at_the_identity() {
    for p in presets() {
        let alg = QuantumAlgebra::new(p.clone()).unwrap();
        let s = seidel_inverse(&p, &-SeidelElement::default_depth(&p));
        assert_eq!(spectral_number(&alg, &alg.unit(), &s, 0).unwrap(), int(0));
        let pt = QuantumClass::basis(BasisClass::P);
        assert_eq!(spectral_number(&alg, &pt, &s, 0).unwrap(), int(0));
    }
}
