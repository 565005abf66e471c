//! The full report: slopes, closed-form comparisons and volume conventions.

use qhcalc::rational::rat;
use qhcalc::seidel::{quasimorphism_restriction, VolumeConvention};
use qhcalc::ManifoldPreset;

fn main() {
    let conventions = [VolumeConvention::OmegaN, VolumeConvention::OmegaNFactorial];
    for p in [ManifoldPreset::sphere_product(rat(3, 2)).unwrap(), ManifoldPreset::blow_up(rat(1, 4)).unwrap()] {
        let r = quasimorphism_restriction(&p, 40, 10).unwrap();
        print!("{}", r.to_text(&conventions));
        println!();
    }
}
