//! Inversion of homogeneous units.
//!
//! A homogeneous class of degree `d` is a vector over the field of Laurent
//! series in `t = x^{1/D}`, one coordinate per basis class, where `D` clears
//! the denominators of the `e1` exponents. Multiplication by it is a 4×4
//! matrix from the degree `8 - d` slice to the degree 4 slice; the inverse is
//! the solution of that system for the unit, found by Cramer's rule.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::{BasisClass, Degree, QuantumAlgebra, QuantumClass};
use crate::error::{Error, Result};
use crate::laurent::{LaurentScalar, Sigma};
use crate::lattice::LatticeVector;
use crate::poly::LaurentPoly;
use crate::rational::{ceil_i64, common_denominator, int, ExactRational};

fn det(m: &[Vec<LaurentScalar>]) -> LaurentScalar {
    let n = m.len();
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = LaurentScalar::zero();
    for (j, entry) in m[0].iter().enumerate() {
        if entry.is_zero() && entry.is_exact() {
            continue;
        }
        let minor: Vec<Vec<LaurentScalar>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, v)| v.clone()).collect())
            .collect();
        let term = entry * &det(&minor);
        acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}

impl QuantumAlgebra {
    /// `e2` coordinate shared by every term of `class` in the degree-`d` slice.
    fn slice_offset(&self, class: BasisClass, d: &ExactRational) -> ExactRational {
        (d - int(class.degree())) / (&self.preset.chern_e2 * int(2))
    }

    /// Smallest `k` with `ω(k/D e1 + off e2) >= energy`.
    fn t_floor(&self, energy: &ExactRational, off: &ExactRational, dd: &BigInt) -> i64 {
        let k = (energy - off * &self.preset.omega_e2) * ExactRational::from_integer(dd.clone())
            / &self.preset.omega_e1;
        ceil_i64(&k)
    }

    fn t_energy(&self, k: i64, off: &ExactRational, dd: &BigInt) -> ExactRational {
        ExactRational::new(BigInt::from(k), dd.clone()) * &self.preset.omega_e1 + off * &self.preset.omega_e2
    }

    /// Inverse of a homogeneous unit, with every term of energy at least
    /// `energy_floor` exact. Exact Laurent-polynomial inverses come back
    /// untruncated.
    pub fn invert_unit(&self, a: &QuantumClass, energy_floor: &ExactRational) -> Result<QuantumClass> {
        self.check(a)?;
        let d = match self.degree(a) {
            Degree::Pure(d) => d,
            Degree::Mixed if a.is_zero() => return Err(Error::NotAUnit("zero class".into())),
            Degree::Mixed => return Err(Error::NotAUnit("class is not homogeneous".into())),
        };
        let dd = common_denominator(a.terms.keys().map(|(_, v)| &v.a1));
        let basis = self.basis();
        let scale = ExactRational::from_integer(dd.clone());
        let t_exp = |q: &ExactRational| -> i64 { (q * &scale).to_integer().to_i64().expect("exponent range") };

        // coordinates of a over Laurent series in t
        let coords: Vec<LaurentScalar> = basis
            .iter()
            .map(|&c| {
                let off = self.slice_offset(c, &d);
                let mut p = LaurentPoly::zero();
                for ((cls, v), x) in &a.terms {
                    if *cls == c {
                        debug_assert_eq!(v.a2, off);
                        p.add_term(t_exp(&v.a1), x.clone());
                    }
                }
                let exact = LaurentScalar::from_laurent_poly(&p);
                match &a.energy_floor {
                    None => exact,
                    Some(f) => exact.expand(self.t_floor(f, &off, &dd)),
                }
            })
            .collect();

        let d_in = int(8) - &d;
        let col_off: Vec<ExactRational> = basis.iter().map(|&c| self.slice_offset(c, &d_in)).collect();
        let mut m = vec![vec![LaurentScalar::zero(); 4]; 4];
        for (j, &cj) in basis.iter().enumerate() {
            for (i, &ci) in basis.iter().enumerate() {
                if coords[i].is_zero() && coords[i].is_exact() {
                    continue;
                }
                for t in self.table.get(ci, cj) {
                    let row = basis.iter().position(|&c| c == t.class).unwrap();
                    let shift = LaurentScalar::monomial(t.coeff.clone(), t_exp(&t.exp.a1));
                    let add = &coords[i] * &shift;
                    m[row][j] = &m[row][j] + &add;
                }
            }
        }

        let det_m = det(&m);
        if det_m.is_zero() {
            return Err(Error::NotAUnit("multiplication map is singular".into()));
        }
        let unit_row = basis.iter().position(|&c| c == BasisClass::M).unwrap();
        let mut out = QuantumClass::zero();
        let mut finite = true;
        let mut floor = energy_floor.clone();
        let mut solved = Vec::new();
        for j in 0..4 {
            let mut mj = m.clone();
            for (i, row) in mj.iter_mut().enumerate() {
                row[j] = if i == unit_row { LaurentScalar::one() } else { LaurentScalar::zero() };
            }
            let num = det(&mj);
            let target = self.t_floor(energy_floor, &col_off[j], &dd);
            let y = if num.is_zero() && num.is_exact() {
                LaurentScalar::zero()
            } else {
                let sn = match num.sigma() {
                    Sigma::Finite(s) => s,
                    Sigma::NegInfinity => num.floor().unwrap_or(target),
                };
                let inv = det_m.invert(target - sn)?;
                &num * &inv
            };
            let y = match &y {
                LaurentScalar::Exact(rf) => {
                    let den = rf.den();
                    let monomial_den = den.coeffs().iter().filter(|c| !c.is_zero()).count() == 1;
                    if monomial_den {
                        y.expand(target.min(-(den.degree().unwrap() as i64)))
                    } else {
                        finite = false;
                        y.expand(target)
                    }
                }
                LaurentScalar::Series(s) => {
                    finite = false;
                    let g = self.t_energy(s.floor(), &col_off[j], &dd);
                    if g > floor {
                        floor = g;
                    }
                    y.clone()
                }
            };
            solved.push(y);
        }
        for (j, y) in solved.iter().enumerate() {
            if let LaurentScalar::Series(s) = y {
                for (k, c) in s.coeffs() {
                    let v = LatticeVector::new(ExactRational::new(BigInt::from(*k), dd.clone()), col_off[j].clone());
                    out.add_term(basis[j], v, c.clone());
                }
            }
        }
        if finite {
            return Ok(out);
        }
        let out = self.truncate(&out, &floor);
        if out.is_zero() {
            return Err(Error::FloorTooShallow(format!(
                "no coefficient of the inverse is determined above energy {floor}"
            )));
        }
        Ok(out)
    }
}
