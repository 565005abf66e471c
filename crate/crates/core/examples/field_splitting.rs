//! Newton polygons and the certified splitting of the even subalgebra.

use qhcalc::factor::{newton_polygon, split_fields, structure_polynomial};
use qhcalc::rational::{int, rat};
use qhcalc::ManifoldPreset;

fn main() {
    let presets = [
        ManifoldPreset::sphere_product(int(2)).unwrap(),
        ManifoldPreset::blow_up(rat(1, 2)).unwrap(),
        ManifoldPreset::blow_up(rat(1, 4)).unwrap(),
    ];
    for p in &presets {
        let s = structure_polynomial(p);
        let segs: Vec<String> = newton_polygon(s.poly()).unwrap().iter().map(|s| s.to_string()).collect();
        let cert = split_fields(p, -24).unwrap();
        println!("{}: {} in {}", p.name(), s.poly(), s.generator_name());
        println!("  newton polygon {}", segs.join(", "));
        println!("  verdict {}", cert.verdict);
        for f in &cert.factors {
            println!("  factor of degree {} ({})", f.poly.degree().unwrap(), f.reason);
        }
    }
}
