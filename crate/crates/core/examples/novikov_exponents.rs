//! Exponent lattice of both manifolds: named classes, area and degree of a
//! Novikov monomial.

use qhcalc::rational::rat;
use qhcalc::ManifoldPreset;

fn main() {
    let presets = [ManifoldPreset::sphere_product(rat(3, 2)).unwrap(), ManifoldPreset::blow_up(rat(1, 4)).unwrap()];
    let inputs = [["-A", "-B", "A-B", "2*A + 1/2*B"], ["-E", "-F", "-E-F", "1/2*E + 3/4*F"]];
    for (p, exps) in presets.iter().zip(inputs) {
        println!("{}", p.name());
        for text in exps {
            let v = p.parse_exponent(text).unwrap();
            println!(
                "  q^{{{text}}} = {v}  area {}  degree {}  written {}",
                p.omega_of(&v),
                p.degree_of(&v),
                p.named_text(&v)
            );
        }
    }
}
