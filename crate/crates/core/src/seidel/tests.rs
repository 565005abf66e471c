use super::*;
use crate::quantum::parse_expression;

fn x(l: ExactRational) -> (ManifoldPreset, QuantumAlgebra) {
    let p = ManifoldPreset::sphere_product(l).unwrap();
    (p.clone(), QuantumAlgebra::new(p).unwrap())
}

fn y(n: i64, d: i64) -> (ManifoldPreset, QuantumAlgebra) {
    let p = ManifoldPreset::blow_up(rat(n, d)).unwrap();
    (p.clone(), QuantumAlgebra::new(p).unwrap())
}

fn default_seidel(p: &ManifoldPreset) -> SeidelElement {
    seidel_inverse(p, &-SeidelElement::default_depth(p))
}

#[test]
fn exponent_data() {
    assert_eq!(sphere_product_exponents(&int(2)), (rat(-1, 12), rat(1, 3)));
    assert_eq!(blow_up_delta(&rat(1, 2)), rat(-1, 36));
    let (p, _) = y(1, 2);
    let s = default_seidel(&p);
    // ω(E/2 + 3F/4) - δ ω(F - 2E) = 1/4 + 3/8 - 1/72
    assert_eq!(s.leading_energy(), rat(1, 4) + rat(3, 8) - rat(1, 72));
    let (p, _) = x(int(2));
    assert_eq!(default_seidel(&p).leading_energy(), rat(7, 12));
}

#[test]
fn sphere_product_even_powers() {
    for l in [rat(3, 2), int(2), int(5)] {
        let (p, alg) = x(l.clone());
        let s = default_seidel(&p);
        for n in 1..=4i64 {
            let c = spectral_number(&alg, &alg.unit(), &s, 2 * n).unwrap();
            assert_eq!(c, int(1) + int(n) / (int(3) * &l), "λ = {l}, n = {n}");
        }
    }
}

#[test]
fn first_spectral_number_and_shift() {
    let (p, alg) = x(int(2));
    let s = default_seidel(&p);
    assert_eq!(spectral_number(&alg, &alg.unit(), &s, 1).unwrap(), rat(7, 12));
    assert_eq!(spectral_number(&alg, &alg.unit(), &s, 0).unwrap(), int(0));
    let a = p.named_class("A").unwrap();
    let shifted = alg.unit().shift(&p, &a);
    assert_eq!(spectral_number(&alg, &shifted, &s, 3).unwrap(), spectral_number(&alg, &alg.unit(), &s, 3).unwrap() + int(1));
}

#[test]
fn powers_of_both_signs_cancel() {
    for (p, alg) in [x(int(2)), y(1, 2), y(1, 4)] {
        let s = default_seidel(&p);
        let neg = seidel_power(&alg, &s, 3, &int(-30)).unwrap();
        let pos = seidel_power(&alg, &s, -3, &int(-30)).unwrap();
        let prod = alg.product(&neg, &pos).unwrap();
        match &prod.energy_floor {
            None => assert_eq!(prod, alg.unit()),
            Some(f) => {
                assert!(f < &int(-1), "floor {f}");
                assert_eq!(prod.terms, alg.truncate(&alg.unit(), f).terms);
            }
        }
    }
}

#[test]
fn factors_of_the_even_power() {
    // α_k = A^k B^{2n-k}: consecutive values two apart differ by 1 - λ
    for l in [rat(3, 2), int(2), int(5)] {
        let (_, alg) = x(l.clone());
        for n in 1..=4u64 {
            let vals: Vec<ExactRational> = (0..=2 * n)
                .map(|k| {
                    let t = format!("A^{k}*B^{}", 2 * n - k);
                    match alg.val(&parse_expression(&alg, &t).unwrap()).unwrap() {
                        Valuation::Finite(v) => v,
                        Valuation::NegInfinity => unreachable!(),
                    }
                })
                .collect();
            for k in 0..vals.len() - 2 {
                assert_eq!(&vals[k + 2] - &vals[k], int(1) - &l);
            }
            let ab = alg.power(&parse_expression(&alg, "A-B").unwrap(), 2 * n).unwrap();
            assert_eq!(alg.val(&ab).unwrap(), Valuation::Finite(int(1 - n as i64)));
        }
    }
}

#[test]
fn sphere_product_slope() {
    let (p, alg) = x(int(2));
    let s = default_seidel(&p);
    let seq = val_sequence(&alg, &s, &alg.unit(), 40, 10).unwrap();
    assert_eq!(seq.stabilized_slope, Some(rat(1, 12)));
    assert_eq!(seq.period, Some(2));
    assert!(seq.eventually_periodic());
}

#[test]
fn blow_up_slopes() {
    for ((n, d), expect) in [((1, 2), rat(-1, 72)), ((2, 3), rat(-1, 180))] {
        let (p, alg) = y(n, d);
        let s = default_seidel(&p);
        let seq = val_sequence(&alg, &s, &alg.unit(), 40, 10).unwrap();
        assert_eq!(seq.stabilized_slope, Some(expect));
        assert!(seq.eventually_periodic());
    }
}

#[test]
fn report_below_threshold() {
    let (p, _) = y(1, 4);
    let r = quasimorphism_restriction(&p, 40, 10).unwrap();
    assert_eq!(r.component_slopes, vec![rat(-1, 10), rat(-1, 60)]);
    assert_eq!(r.slope, rat(-1, 10));
    assert_eq!(r.unit_slope, rat(-1, 60));
    assert_eq!(r.comparisons.len(), 2);
    assert!(r.comparisons.iter().all(|c| !c.matches && !c.matches_unit_slope));
    assert_eq!(r.sign, 1);
}

#[test]
fn report_sphere_product() {
    let (p, _) = x(int(2));
    let r = quasimorphism_restriction(&p, 40, 10).unwrap();
    assert_eq!(r.slope, rat(1, 12));
    assert!(r.comparisons[0].matches);
    assert_eq!(r.closed_form_r_tilde, Some(rat(-1, 4)));
    assert_eq!(r.required_volume, Some(int(3)));
    assert_eq!(r.matching_convention, None);
    assert_eq!(r.r_tilde[0], (VolumeConvention::OmegaN, rat(-1, 3)));
    assert_eq!(r.sign, -1);
    assert_eq!(quasimorphism_restriction(&p, 5, 10), Err(Error::SlopeNotStabilized(5)));
}

#[test]
fn blow_up_cycles() {
    let (p, alg) = y(1, 2);
    let q = parse_expression(&alg, "P*q^{1/2*E + 3/4*F}").unwrap();
    let chains = [
        ["P*q^{1/2*E + 3/4*F}", "E*q^{1/2*F}", "F*q^{1/2*E + 1/4*F}", "M", "P*q^{1/2*E + 3/4*F}"].as_slice(),
        ["P*q^{1/2*E + 3/4*F}", "F*q^{1/2*F}", "M*q^{1/4*F - 1/2*E}", "P*q^{F}"].as_slice(),
    ];
    for chain in chains {
        for w in chain.windows(2) {
            let from = parse_expression(&alg, w[0]).unwrap();
            let to = parse_expression(&alg, w[1]).unwrap();
            let (&(class, ref v), _) = to.terms.iter().next().unwrap();
            assert_eq!(alg.product(&q, &from).unwrap().coefficient(class, v), int(1), "{} -> {}", w[0], w[1]);
        }
    }
    let _ = p;
}

#[test]
fn duality_on_the_unit() {
    for (p, alg) in [x(int(2)), y(1, 2)] {
        let s = default_seidel(&p);
        let m = alg.unit();
        let pt = QuantumClass::basis(BasisClass::P);
        for k in 0..4 {
            assert!(duality_defect(&alg, &s, &m, &pt, k).unwrap() >= int(0));
        }
        assert_eq!(duality_defect(&alg, &s, &m, &m, 1), Err(Error::PairingVanishes));
    }
}
