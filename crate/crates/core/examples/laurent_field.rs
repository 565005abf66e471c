//! Exact arithmetic in the Laurent series field: rational functions, their
//! expansions, valuations and inverses.

use qhcalc::poly::Poly;
use qhcalc::rational::int;
use qhcalc::LaurentScalar;

fn main() {
    // 1/(x - 1) is exact; its expansion in x⁻¹ is x⁻¹ + x⁻² + ...
    let den = Poly::from_coeffs(vec![int(-1), int(1)]);
    let f = LaurentScalar::rational_function(Poly::one(), den).unwrap();
    println!("f = {f}, sigma(f) = {}", f.sigma());
    println!("expanded to x^-6: {}", f.expand(-6));

    let x = LaurentScalar::x();
    let g = &(&x * &x) + &LaurentScalar::one();
    println!("g = {g}, sigma(g) = {}", g.sigma());
    println!("f * g = {}", &f * &g);
    println!("sigma(f + g) = {} <= max = {}", (&f + &g).sigma(), f.sigma().max(g.sigma()));

    // a truncated series inverts to a truncated series
    let s = g.expand(-8);
    let inv = s.invert(-8).unwrap();
    println!("1/g to x^-8: {inv}");
}
