//! Lifting a residue factorization to a factorization over the series field.

use qhcalc::battery::agree_to;
use qhcalc::factor::{hensel_lift, rescale, residue, structure_polynomial};
use qhcalc::poly::Poly;
use qhcalc::rational::{int, rat};
use qhcalc::ManifoldPreset;

fn main() {
    // below 1/3 the blow-up polynomial has residue z⁴ + z³ = z³ (z + 1)
    let p = ManifoldPreset::blow_up(rat(1, 4)).unwrap();
    let poly = structure_polynomial(&p).poly().clone();
    let q = rescale(&poly, 0);
    let h = residue(&q).unwrap();
    println!("residue {h}");
    let f0 = Poly::from_coeffs(vec![int(1), int(1)]);
    let g0 = Poly::monomial(int(1), 3);
    let (f, g) = hensel_lift(&q, &f0, &g0, -30).unwrap();
    println!("linear factor to x^-6  {}", f.truncate(-6));
    println!("cubic factor to x^-6   {}", g.truncate(-6));
    println!("product agrees to x^-30: {}", agree_to(&f.mul(&g), &q, -30));
}
