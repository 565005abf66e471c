//! Basis multiplication tables and a few composite products.

use qhcalc::quantum::parse_expression;
use qhcalc::rational::{int, rat};
use qhcalc::{ManifoldPreset, QuantumAlgebra, QuantumClass};

fn table(alg: &QuantumAlgebra) {
    println!("{}", alg.preset().name());
    let basis = alg.basis();
    for (i, a) in basis.iter().enumerate() {
        for b in &basis[i..] {
            let c = alg.product(&QuantumClass::basis(*a), &QuantumClass::basis(*b)).unwrap();
            println!("  {a} * {b} = {}", alg.render(&c));
        }
    }
}

fn main() {
    let x = QuantumAlgebra::new(ManifoldPreset::sphere_product(int(2)).unwrap()).unwrap();
    let y = QuantumAlgebra::new(ManifoldPreset::blow_up(rat(1, 2)).unwrap()).unwrap();
    table(&x);
    table(&y);
    for expr in ["(A-B)*(A-B)", "A*A*B*B"] {
        let c = parse_expression(&x, expr).unwrap();
        println!("{expr} = {}  val {}", x.render(&c), x.val(&c).unwrap());
    }
    let c = parse_expression(&y, "P*q^{1/2*E + 3/4*F} * E*q^{1/2*F}").unwrap();
    println!("{}", serde_json::to_string(&y.to_json(&c)).unwrap());
}
