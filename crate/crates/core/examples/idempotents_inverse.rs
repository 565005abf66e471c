//! Field idempotents of the split blow-up and inverses inside one field.

use qhcalc::factor::{unit_idempotents, Splitting};
use qhcalc::rational::{int, rat};
use qhcalc::{ManifoldPreset, QuantumAlgebra};

fn main() {
    let p = ManifoldPreset::blow_up(rat(1, 4)).unwrap();
    let sp = Splitting::new(&p, -32).unwrap();
    let st = &sp.structure;
    for (j, e) in sp.idempotents.iter().enumerate() {
        let g = st.add(&st.one(), &st.generator());
        let inv = sp.invert_in_subalgebra(&g, j).unwrap();
        println!("component {j}: val(e) = {}, val((1+b) e)^-1 = {}", st.val(e).unwrap(), st.val(&inv).unwrap());
    }
    let alg = QuantumAlgebra::new(p.clone()).unwrap();
    let es = unit_idempotents(&p, -2).unwrap();
    println!("e_1 as a class: {}", alg.render(&es[0]));

    let x = Splitting::new(&ManifoldPreset::sphere_product(int(2)).unwrap(), -32).unwrap();
    let b = x.structure.generator();
    println!("defect of P y on X_2: {}", x.inversion_defect(&b).unwrap());
}
