//! Valuations of Seidel powers and the slope of the spectral numbers.

use qhcalc::rational::{int, rat};
use qhcalc::seidel::{seidel_inverse, spectral_number, val_sequence, SeidelElement};
use qhcalc::{ManifoldPreset, QuantumAlgebra};

fn main() {
    for p in [ManifoldPreset::sphere_product(int(2)).unwrap(), ManifoldPreset::blow_up(rat(1, 2)).unwrap()] {
        let alg = QuantumAlgebra::new(p.clone()).unwrap();
        let s = seidel_inverse(&p, &-SeidelElement::default_depth(&p));
        println!("{}: leading energy {}", p.name(), s.leading_energy());
        let firsts: Vec<String> =
            (-2..=4).map(|k| format!("{k}: {}", spectral_number(&alg, &alg.unit(), &s, k).unwrap())).collect();
        println!("  c(M, k) for {}", firsts.join(", "));
        let seq = val_sequence(&alg, &s, &alg.unit(), 30, 10).unwrap();
        let res: Vec<String> = seq.residuals().unwrap().iter().take(8).map(|r| r.to_string()).collect();
        println!(
            "  slope {} period {}, residuals {} ...",
            seq.stabilized_slope.unwrap(),
            seq.period.unwrap(),
            res.join(" ")
        );
    }
}
