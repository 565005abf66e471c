//! Single-generator presentations of the degree-4 quantum cohomology.
//!
//! On the sphere product the generator is `β = P ⊗ y` with `β² = x^{-1}`;
//! on the blow-up it is `β = F ⊗ y` with `β⁴ + β³ = x^κ`, and the other
//! basis classes are `E ⊗ y = β²` and `P ⊗ y² = β³ + β²`. Here `x = q^{e1}`
//! and `y = q^{e2}`.

use std::fmt;

use num_traits::ToPrimitive;

use super::spoly::SeriesPoly;
use crate::error::{Error, Result};
use crate::laurent::{LaurentScalar, Sigma};
use crate::lattice::{LatticeVector, ManifoldPreset};
use crate::poly::LaurentPoly;
use crate::quantum::{BasisClass, QuantumAlgebra, QuantumClass, Valuation};
use crate::rational::{ceil_i64, int, ExactRational};

/// The defining polynomial of the degree-4 part together with the
/// identification of its quotient ring with quantum classes.
#[derive(Clone, Debug, PartialEq)]
pub struct StructurePolynomial {
    preset: ManifoldPreset,
    poly: SeriesPoly,
}

/// Residue class modulo the structure polynomial, kept reduced.
#[derive(Clone, Debug, PartialEq)]
pub struct SubalgebraElement {
    poly: SeriesPoly,
}

impl SubalgebraElement {
    pub fn poly(&self) -> &SeriesPoly {
        &self.poly
    }

    pub fn is_zero(&self) -> bool {
        self.poly.coeffs().iter().all(LaurentScalar::is_zero)
    }
}

impl fmt::Display for SubalgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.poly)
    }
}

fn x_pow(k: i64) -> LaurentScalar {
    LaurentScalar::monomial(int(1), k)
}

/// The structure polynomial of a preset.
pub fn structure_polynomial(preset: &ManifoldPreset) -> StructurePolynomial {
    let poly = match preset.kappa() {
        None => SeriesPoly::new(vec![-&x_pow(-1), LaurentScalar::zero(), LaurentScalar::one()]),
        Some(k) => SeriesPoly::new(vec![
            -&x_pow(k),
            LaurentScalar::zero(),
            LaurentScalar::zero(),
            LaurentScalar::one(),
            LaurentScalar::one(),
        ]),
    };
    StructurePolynomial { preset: preset.clone(), poly }
}

impl StructurePolynomial {
    pub fn preset(&self) -> &ManifoldPreset {
        &self.preset
    }

    pub fn poly(&self) -> &SeriesPoly {
        &self.poly
    }

    pub fn coefficients(&self) -> &[LaurentScalar] {
        self.poly.coeffs()
    }

    pub fn generator_name(&self) -> &'static str {
        if self.preset.is_sphere_product() {
            "β = P⊗y"
        } else {
            "β = F⊗y"
        }
    }

    pub fn degree(&self) -> usize {
        self.poly.degree().unwrap()
    }

    pub fn element(&self, p: &SeriesPoly) -> SubalgebraElement {
        SubalgebraElement { poly: p.rem_monic(&self.poly) }
    }

    pub fn one(&self) -> SubalgebraElement {
        self.element(&SeriesPoly::one())
    }

    pub fn generator(&self) -> SubalgebraElement {
        self.element(&SeriesPoly::generator())
    }

    pub fn add(&self, a: &SubalgebraElement, b: &SubalgebraElement) -> SubalgebraElement {
        SubalgebraElement { poly: a.poly.add(&b.poly) }
    }

    pub fn sub(&self, a: &SubalgebraElement, b: &SubalgebraElement) -> SubalgebraElement {
        SubalgebraElement { poly: a.poly.sub(&b.poly) }
    }

    pub fn mul(&self, a: &SubalgebraElement, b: &SubalgebraElement) -> SubalgebraElement {
        self.element(&a.poly.mul(&b.poly))
    }

    /// `(class, e2 offset, coefficient)` for each basis class of the
    /// degree-4 part, in the order of the presentation.
    pub fn class_coefficients(&self, e: &SubalgebraElement) -> Vec<(BasisClass, i64, LaurentScalar)> {
        let c = |i| e.poly.coeff(i);
        if self.preset.is_sphere_product() {
            vec![(BasisClass::M, 0, c(0)), (BasisClass::P, 1, c(1))]
        } else {
            vec![
                (BasisClass::M, 0, c(0)),
                (BasisClass::F, 1, c(1)),
                (BasisClass::E, 1, &c(2) - &c(3)),
                (BasisClass::P, 2, c(3)),
            ]
        }
    }

    /// Smallest `x` exponent whose term with the given `e2` offset reaches `energy`.
    fn x_floor(&self, energy: &ExactRational, off: i64) -> i64 {
        ceil_i64(&((energy - &self.preset.omega_e2 * int(off)) / &self.preset.omega_e1))
    }

    fn energy_at(&self, k: i64, off: i64) -> ExactRational {
        &self.preset.omega_e1 * int(k) + &self.preset.omega_e2 * int(off)
    }

    /// The quantum class of `e`. Coefficients that are not Laurent
    /// polynomials are expanded down to `energy_floor`; series coefficients
    /// raise the floor to what they actually determine.
    pub fn to_class(&self, e: &SubalgebraElement, energy_floor: &ExactRational) -> QuantumClass {
        let mut out = QuantumClass::zero();
        let mut floor: Option<ExactRational> = None;
        for (class, off, c) in self.class_coefficients(e) {
            let c = match c.to_laurent_poly() {
                Some(p) => {
                    for (k, v) in p.terms() {
                        out.add_term(class, LatticeVector::ints(*k, off), v.clone());
                    }
                    continue;
                }
                None => c,
            };
            let target = self.x_floor(energy_floor, off);
            let series = c.expand(target);
            let f = series.floor().unwrap_or(target).max(target);
            let g = self.energy_at(f, off);
            let g = if &g < energy_floor { energy_floor.clone() } else { g };
            if floor.as_ref().is_none_or(|cur| &g > cur) {
                floor = Some(g);
            }
            if let LaurentScalar::Series(s) = series {
                for (k, v) in s.coeffs() {
                    out.add_term(class, LatticeVector::ints(*k, off), v.clone());
                }
            }
        }
        out.energy_floor = floor;
        out
    }

    /// Inverse of [`Self::to_class`] on the degree-4 part.
    pub fn from_class(&self, alg: &QuantumAlgebra, a: &QuantumClass) -> Result<SubalgebraElement> {
        if alg.preset() != &self.preset {
            return Err(Error::PresetMismatch("algebra and presentation use different presets".into()));
        }
        let offset = |c: BasisClass| -> Option<i64> {
            match (self.preset.is_sphere_product(), c) {
                (_, BasisClass::M) => Some(0),
                (true, BasisClass::P) => Some(1),
                (false, BasisClass::E | BasisClass::F) => Some(1),
                (false, BasisClass::P) => Some(2),
                _ => None,
            }
        };
        let order: Vec<BasisClass> = if self.preset.is_sphere_product() {
            vec![BasisClass::M, BasisClass::P]
        } else {
            vec![BasisClass::M, BasisClass::E, BasisClass::F, BasisClass::P]
        };
        let mut polys = vec![LaurentPoly::zero(); order.len()];
        for ((class, v), coeff) in &a.terms {
            let off = offset(*class)
                .ok_or_else(|| Error::PresetMismatch(format!("class {} is not in the subalgebra", class.name())))?;
            if v.a2 != int(off) || !v.a1.is_integer() {
                return Err(Error::FractionalExponent(format!(
                    "term {} ⊗ {v} is not of degree 4 with an integral x exponent",
                    class.name()
                )));
            }
            let k = v.a1.to_integer().to_i64().ok_or_else(|| Error::FractionalExponent("exponent range".into()))?;
            let slot = order.iter().position(|c| c == class).unwrap();
            polys[slot].add_term(k, coeff.clone());
        }
        let coeffs: Vec<LaurentScalar> = order
            .iter()
            .zip(&polys)
            .map(|(class, p)| {
                let exact = LaurentScalar::from_laurent_poly(p);
                match &a.energy_floor {
                    None => exact,
                    Some(f) => exact.expand(self.x_floor(f, offset(*class).unwrap())),
                }
            })
            .collect();
        let poly = if self.preset.is_sphere_product() {
            SeriesPoly::new(coeffs)
        } else {
            // M a + E y b + F y c + P y² d  ↦  a + c β + (b + d) β² + d β³
            let (a0, b, c, d) = (&coeffs[0], &coeffs[1], &coeffs[2], &coeffs[3]);
            SeriesPoly::new(vec![a0.clone(), c.clone(), b + d, d.clone()])
        };
        Ok(self.element(&poly))
    }

    /// `val` of the corresponding quantum class, read off the coefficients.
    pub fn val(&self, e: &SubalgebraElement) -> Result<Valuation> {
        let mut best: Option<ExactRational> = None;
        let mut unknown: Option<ExactRational> = None;
        for (_, off, c) in self.class_coefficients(e) {
            match c.sigma() {
                Sigma::Finite(s) => {
                    let v = self.energy_at(s, off);
                    if best.as_ref().is_none_or(|b| &v > b) {
                        best = Some(v);
                    }
                }
                Sigma::NegInfinity => {
                    if let Some(f) = c.floor() {
                        // every unknown term lies strictly below this energy
                        let bound = self.energy_at(f, off);
                        if unknown.as_ref().is_none_or(|u| &bound > u) {
                            unknown = Some(bound);
                        }
                    }
                }
            }
        }
        match (best, unknown) {
            (Some(b), Some(u)) if b < u => Err(Error::ValBelowFloor),
            (Some(b), _) => Ok(Valuation::Finite(b)),
            (None, Some(_)) => Err(Error::ValBelowFloor),
            (None, None) => Ok(Valuation::NegInfinity),
        }
    }
}

/// The six relations among `β1 = E⊗y`, `β2 = F⊗y`, `β3 = P⊗y²` on the
/// blow-up, each evaluated with the quantum product. Returns the name of
/// each relation with whether it holds.
pub fn relation_check(alg: &QuantumAlgebra) -> Result<Vec<(String, bool)>> {
    let kappa = alg
        .preset()
        .kappa()
        .ok_or_else(|| Error::PresetMismatch("relations are stated for the blow-up".into()))?;
    let y = |class, k: i64| QuantumClass::monomial(int(1), class, LatticeVector::ints(0, k));
    let b1 = y(BasisClass::E, 1);
    let b2 = y(BasisClass::F, 1);
    let b3 = y(BasisClass::P, 2);
    let xk = QuantumClass::monomial(int(1), BasisClass::M, LatticeVector::ints(kappa, 0));
    let xkc = |c: &QuantumClass| c.shift(alg.preset(), &LatticeVector::ints(kappa, 0));
    let p = |a: &QuantumClass, b: &QuantumClass| alg.product(a, b);
    let rels = vec![
        ("β1² = -β3 + β1 + x^κ", p(&b1, &b1)?, alg.add(&alg.sub(&b1, &b3), &xk)),
        ("β2² = β1", p(&b2, &b2)?, b1.clone()),
        ("β3² = x^κ(β1 + β2)", p(&b3, &b3)?, xkc(&alg.add(&b1, &b2))),
        ("β1β2 = β3 - β1", p(&b1, &b2)?, alg.sub(&b3, &b1)),
        ("β2β3 = x^κ", p(&b2, &b3)?, xk.clone()),
        ("β1β3 = x^κ β2", p(&b1, &b3)?, xkc(&b2)),
    ];
    Ok(rels.into_iter().map(|(name, lhs, rhs)| (name.to_string(), lhs == rhs)).collect())
}

/// Monic gcd over the Laurent series field.
pub fn poly_gcd(f: &SeriesPoly, g: &SeriesPoly, floor: i64) -> Result<SeriesPoly> {
    f.gcd(g, floor)
}

/// Whether the polynomial shares no root with its derivative.
pub fn is_squarefree(p: &SeriesPoly, floor: i64) -> Result<bool> {
    Ok(poly_gcd(p, &p.derivative(), floor)?.degree() == Some(0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn presets() -> Vec<ManifoldPreset> {
        vec![
            ManifoldPreset::sphere_product(int(2)).unwrap(),
            ManifoldPreset::sphere_product(rat(3, 2)).unwrap(),
            ManifoldPreset::blow_up(rat(1, 2)).unwrap(),
            ManifoldPreset::blow_up(rat(1, 4)).unwrap(),
        ]
    }

    #[test]
    fn polynomial_text() {
        assert_eq!(structure_polynomial(&presets()[0]).poly().to_string(), "β^2 - x^-1");
        assert_eq!(structure_polynomial(&presets()[2]).poly().to_string(), "β^4 + β^3 - x");
        assert_eq!(structure_polynomial(&presets()[3]).poly().to_string(), "β^4 + β^3 - x^-1");
    }

    #[test]
    fn relations_hold() {
        for mu in [rat(1, 4), rat(1, 5), rat(1, 2), rat(2, 3)] {
            let alg = QuantumAlgebra::new(ManifoldPreset::blow_up(mu).unwrap()).unwrap();
            for (name, ok) in relation_check(&alg).unwrap() {
                assert!(ok, "{name}");
            }
        }
    }

    #[test]
    fn generator_powers_match_quantum_products() {
        for preset in presets() {
            let alg = QuantumAlgebra::new(preset.clone()).unwrap();
            let sp = structure_polynomial(&preset);
            let b = sp.generator();
            let bc = sp.to_class(&b, &int(-10));
            let mut e = sp.one();
            let mut c = alg.unit();
            for _ in 0..6 {
                e = sp.mul(&e, &b);
                c = alg.product(&c, &bc).unwrap();
                assert_eq!(sp.to_class(&e, &int(-10)), c);
                assert_eq!(sp.from_class(&alg, &c).unwrap(), e);
            }
        }
    }

    #[test]
    fn squarefree_examples() {
        for preset in presets() {
            assert!(is_squarefree(structure_polynomial(&preset).poly(), -20).unwrap());
        }
        let one = LaurentScalar::one();
        let sq = SeriesPoly::new(vec![one.clone(), -&(&one + &one), one.clone()]);
        assert!(!is_squarefree(&sq, -20).unwrap());
    }

    #[test]
    fn gcd_with_derivative_is_one() {
        let sp = structure_polynomial(&presets()[2]);
        let g = poly_gcd(sp.poly(), &sp.poly().derivative(), -20).unwrap();
        assert_eq!(g, SeriesPoly::one());
    }

    #[test]
    fn val_through_presentation() {
        let preset = ManifoldPreset::sphere_product(int(2)).unwrap();
        let sp = structure_polynomial(&preset);
        assert_eq!(sp.val(&sp.one()).unwrap(), Valuation::Finite(int(0)));
        assert_eq!(sp.val(&sp.generator()).unwrap(), Valuation::Finite(int(1)));
        let alg = QuantumAlgebra::new(preset).unwrap();
        let e = sp.add(&sp.one(), &sp.generator());
        assert_eq!(sp.val(&e).unwrap(), alg.val(&sp.to_class(&e, &int(-5))).unwrap());
    }
}
