//! The rank-two group `Γ` of Novikov exponents, the functionals `ω` and `c₁`
//! on it, and the two manifold presets: `X_λ = S²×S²` with areas `(1, λ)` and
//! `Y_μ`, the one-point blow-up of `CP²` with exceptional area `μ`.
//!
//! Vectors are stored in the preset basis `{e1, e2}` with rational entries.
//! For `X_λ`: `e1 = B - A`, `e2 = A`. For `Y_μ`: `e2 = E` and
//! `e1 = F - 2E` (`μ < 1/3`) or `e1 = 2E - F` (`μ > 1/3`).

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{int, parse_rational, rat, ExactRational};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct LatticeVector {
    pub a1: ExactRational,
    pub a2: ExactRational,
}

impl LatticeVector {
    pub fn new(a1: ExactRational, a2: ExactRational) -> Self {
        Self { a1, a2 }
    }

    pub fn ints(a1: i64, a2: i64) -> Self {
        Self::new(int(a1), int(a2))
    }

    pub fn zero() -> Self {
        Self::ints(0, 0)
    }

    pub fn e1() -> Self {
        Self::ints(1, 0)
    }

    pub fn e2() -> Self {
        Self::ints(0, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.a1.is_zero() && self.a2.is_zero()
    }

    pub fn is_integral(&self) -> bool {
        self.a1.is_integer() && self.a2.is_integer()
    }

    pub fn scale(&self, c: &ExactRational) -> Self {
        Self::new(&self.a1 * c, &self.a2 * c)
    }
}

impl Add for &LatticeVector {
    type Output = LatticeVector;
    fn add(self, rhs: &LatticeVector) -> LatticeVector {
        LatticeVector::new(&self.a1 + &rhs.a1, &self.a2 + &rhs.a2)
    }
}

impl Sub for &LatticeVector {
    type Output = LatticeVector;
    fn sub(self, rhs: &LatticeVector) -> LatticeVector {
        LatticeVector::new(&self.a1 - &rhs.a1, &self.a2 - &rhs.a2)
    }
}

impl Neg for &LatticeVector {
    type Output = LatticeVector;
    fn neg(self) -> LatticeVector {
        LatticeVector::new(-&self.a1, -&self.a2)
    }
}

fn write_combination(f: &mut fmt::Formatter<'_>, parts: &[(&ExactRational, &str)]) -> fmt::Result {
    let mut first = true;
    for (c, name) in parts {
        if c.is_zero() {
            continue;
        }
        let mag = c.abs();
        if first {
            if c.is_negative() {
                write!(f, "-")?;
            }
        } else {
            write!(f, "{}", if c.is_negative() { " - " } else { " + " })?;
        }
        first = false;
        if mag.is_one() {
            write!(f, "{name}")?;
        } else {
            write!(f, "{mag}*{name}")?;
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

/// Text form `q^{a1*e1 + a2*e2}`.
impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "q^{{")?;
        write_combination(f, &[(&self.a1, "e1"), (&self.a2, "e2")])?;
        write!(f, "}}")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ManifoldKind {
    SphereProduct { lambda: ExactRational },
    BlowUp { mu: ExactRational },
}

/// A manifold together with its chosen basis of `Γ` and the values of `ω`
/// and `c₁` on that basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ManifoldPreset {
    pub kind: ManifoldKind,
    pub omega_e1: ExactRational,
    pub omega_e2: ExactRational,
    pub chern_e1: ExactRational,
    pub chern_e2: ExactRational,
    /// Minimal Chern number.
    pub n_m: i64,
}

impl ManifoldPreset {
    pub fn sphere_product(lambda: ExactRational) -> Result<Self> {
        if lambda <= int(1) {
            return Err(Error::InvalidPreset(format!("lambda must exceed 1, got {lambda}")));
        }
        Ok(Self {
            omega_e1: &lambda - int(1),
            omega_e2: int(1),
            chern_e1: int(0),
            chern_e2: int(2),
            n_m: 2,
            kind: ManifoldKind::SphereProduct { lambda },
        })
    }

    pub fn blow_up(mu: ExactRational) -> Result<Self> {
        if mu <= int(0) || mu >= int(1) || mu == rat(1, 3) {
            return Err(Error::InvalidPreset(format!("mu must lie in (0,1) minus 1/3, got {mu}")));
        }
        Ok(Self {
            omega_e1: (&mu * int(3) - int(1)).abs(),
            omega_e2: mu.clone(),
            chern_e1: int(0),
            chern_e2: int(1),
            n_m: 1,
            kind: ManifoldKind::BlowUp { mu },
        })
    }

    pub fn is_sphere_product(&self) -> bool {
        matches!(self.kind, ManifoldKind::SphereProduct { .. })
    }

    pub fn lambda(&self) -> Option<&ExactRational> {
        match &self.kind {
            ManifoldKind::SphereProduct { lambda } => Some(lambda),
            ManifoldKind::BlowUp { .. } => None,
        }
    }

    pub fn mu(&self) -> Option<&ExactRational> {
        match &self.kind {
            ManifoldKind::BlowUp { mu } => Some(mu),
            ManifoldKind::SphereProduct { .. } => None,
        }
    }

    /// Sign of `3μ - 1` for the blow-up, `None` for the sphere product.
    pub fn kappa(&self) -> Option<i64> {
        self.mu().map(|mu| if *mu > rat(1, 3) { 1 } else { -1 })
    }

    pub fn name(&self) -> String {
        match &self.kind {
            ManifoldKind::SphereProduct { lambda } => format!("X_lambda(lambda={lambda})"),
            ManifoldKind::BlowUp { mu } => format!("Y_mu(mu={mu})"),
        }
    }

    pub fn omega_of(&self, v: &LatticeVector) -> ExactRational {
        &v.a1 * &self.omega_e1 + &v.a2 * &self.omega_e2
    }

    pub fn chern_of(&self, v: &LatticeVector) -> ExactRational {
        &v.a1 * &self.chern_e1 + &v.a2 * &self.chern_e2
    }

    /// Degree `2 c₁(v)` of `q^v`.
    pub fn degree_of(&self, v: &LatticeVector) -> ExactRational {
        self.chern_of(v) * int(2)
    }

    /// Coordinates of a named sphere class (`A`, `B` for `X_λ`; `E`, `F`,
    /// `L` for `Y_μ`).
    pub fn named_class(&self, name: &str) -> Result<LatticeVector> {
        let v = match (&self.kind, name) {
            (ManifoldKind::SphereProduct { .. }, "A") => LatticeVector::ints(0, 1),
            (ManifoldKind::SphereProduct { .. }, "B") => LatticeVector::ints(1, 1),
            (ManifoldKind::BlowUp { .. }, "E") => LatticeVector::ints(0, 1),
            (ManifoldKind::BlowUp { .. }, "F") => {
                if self.kappa() == Some(1) {
                    LatticeVector::ints(-1, 2)
                } else {
                    LatticeVector::ints(1, 2)
                }
            }
            (ManifoldKind::BlowUp { .. }, "L") => {
                let f = self.named_class("F")?;
                &f + &LatticeVector::e2()
            }
            (_, "e1") => LatticeVector::e1(),
            (_, "e2") => LatticeVector::e2(),
            _ => return Err(Error::PresetMismatch(name.to_string())),
        };
        Ok(v)
    }

    /// Expresses `v` in the named classes (`(A, B)` or `(E, F)` coefficients).
    pub fn to_named(&self, v: &LatticeVector) -> [(ExactRational, &'static str); 2] {
        match self.kind {
            // a1 (B - A) + a2 A = (a2 - a1) A + a1 B
            ManifoldKind::SphereProduct { .. } => [(&v.a2 - &v.a1, "A"), (v.a1.clone(), "B")],
            ManifoldKind::BlowUp { .. } => {
                if self.kappa() == Some(1) {
                    // a1 (2E - F) + a2 E
                    [(&v.a1 * int(2) + &v.a2, "E"), (-&v.a1, "F")]
                } else {
                    // a1 (F - 2E) + a2 E
                    [(&v.a2 - &v.a1 * int(2), "E"), (v.a1.clone(), "F")]
                }
            }
        }
    }

    /// Renders `v` in named classes, e.g. `q^{-E - F}`.
    pub fn named_text(&self, v: &LatticeVector) -> String {
        struct Named<'a>(&'a [(ExactRational, &'static str); 2]);
        impl fmt::Display for Named<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write_combination(f, &[(&self.0[0].0, self.0[0].1), (&self.0[1].0, self.0[1].1)])
            }
        }
        let parts = self.to_named(v);
        format!("q^{{{}}}", Named(&parts))
    }

    /// Parses a linear combination such as `-E-F`, `1/2*e1 + e2`, `A - 3B`.
    pub fn parse_exponent(&self, text: &str) -> Result<LatticeVector> {
        let mut acc = LatticeVector::zero();
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if s == "0" {
            return Ok(acc);
        }
        let bytes: Vec<char> = s.chars().collect();
        let mut i = 0;
        let perr = |pos: usize, msg: &str| Error::Parse { pos, msg: msg.to_string() };
        if bytes.is_empty() {
            return Err(perr(0, "empty exponent"));
        }
        while i < bytes.len() {
            let mut sign = int(1);
            while i < bytes.len() && (bytes[i] == '+' || bytes[i] == '-') {
                if bytes[i] == '-' {
                    sign = -sign;
                }
                i += 1;
            }
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_digit() || bytes[i] == '/' || bytes[i] == '.') {
                i += 1;
            }
            let coef = if i > start {
                let c: String = bytes[start..i].iter().collect();
                parse_rational(&c).map_err(|_| perr(start, "bad coefficient"))?
            } else {
                int(1)
            };
            if i < bytes.len() && (bytes[i] == '*' || bytes[i] == '·') {
                i += 1;
            }
            let name_start = i;
            while i < bytes.len() && bytes[i].is_ascii_alphanumeric() {
                i += 1;
            }
            if name_start == i {
                return Err(perr(name_start, "expected class name"));
            }
            let name: String = bytes[name_start..i].iter().collect();
            let v = self.named_class(&name)?;
            acc = &acc + &v.scale(&(sign * coef));
            if i < bytes.len() && bytes[i] != '+' && bytes[i] != '-' {
                return Err(perr(i, "unexpected character"));
            }
        }
        Ok(acc)
    }

    /// True iff every exponent has degree `k` (vacuous for an empty list).
    pub fn lambda_component_check(&self, terms: &[GradedMonomial], k: i64) -> bool {
        terms.iter().all(|m| self.degree_of(&m.exponent) == int(k))
    }

    pub fn monomial_degree(&self, m: &GradedMonomial) -> ExactRational {
        self.degree_of(&m.exponent)
    }

    pub fn monomial_energy(&self, m: &GradedMonomial) -> ExactRational {
        self.omega_of(&m.exponent)
    }
}

/// `coefficient * q^exponent`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GradedMonomial {
    pub exponent: LatticeVector,
    pub coefficient: ExactRational,
}

impl GradedMonomial {
    pub fn new(coefficient: ExactRational, exponent: LatticeVector) -> Self {
        Self { exponent, coefficient }
    }
}

pub fn monomial_mul(m1: &GradedMonomial, m2: &GradedMonomial) -> GradedMonomial {
    GradedMonomial {
        exponent: &m1.exponent + &m2.exponent,
        coefficient: &m1.coefficient * &m2.coefficient,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn x2() -> ManifoldPreset {
        ManifoldPreset::sphere_product(int(2)).unwrap()
    }

    fn y(n: i64, d: i64) -> ManifoldPreset {
        ManifoldPreset::blow_up(rat(n, d)).unwrap()
    }

    #[test]
    fn functional_examples() {
        assert_eq!(x2().omega_of(&LatticeVector::e1()), int(1));
        assert_eq!(y(1, 2).omega_of(&LatticeVector::e1()), rat(1, 2));
        assert_eq!(x2().omega_of(&LatticeVector::zero()), int(0));
        assert_eq!(x2().chern_of(&LatticeVector::e2()), int(2));
        assert_eq!(y(1, 2).chern_of(&LatticeVector::e2()), int(1));
    }

    #[test]
    fn named_classes_have_expected_area_and_chern() {
        for p in [y(1, 2), y(1, 4), y(5, 6)] {
            let mu = p.mu().unwrap().clone();
            let e = p.named_class("E").unwrap();
            let f = p.named_class("F").unwrap();
            let l = p.named_class("L").unwrap();
            assert_eq!(p.omega_of(&e), mu);
            assert_eq!(p.omega_of(&f), int(1) - &mu);
            assert_eq!(p.omega_of(&l), int(1));
            assert_eq!(p.chern_of(&f), int(2));
            assert_eq!(p.chern_of(&l), int(3));
        }
        let p = x2();
        assert_eq!(p.omega_of(&p.named_class("B").unwrap()), int(2));
        assert_eq!(p.chern_of(&p.named_class("B").unwrap()), int(2));
        assert!(p.named_class("E").is_err());
    }

    #[test]
    fn monomial_examples() {
        let a = GradedMonomial::new(int(1), LatticeVector::e1());
        let b = GradedMonomial::new(int(1), -&LatticeVector::e1());
        assert_eq!(monomial_mul(&a, &b), GradedMonomial::new(int(1), LatticeVector::zero()));
        let c = GradedMonomial::new(int(2), LatticeVector::e2());
        let d = GradedMonomial::new(int(3), LatticeVector::e2());
        assert_eq!(monomial_mul(&c, &d), GradedMonomial::new(int(6), LatticeVector::ints(0, 2)));
        let e = GradedMonomial::new(int(1), LatticeVector::e2());
        assert_eq!(x2().monomial_energy(&monomial_mul(&a, &e)), int(2));
    }

    #[test]
    fn component_check_examples() {
        let m = |v| GradedMonomial::new(int(1), v);
        assert!(x2().lambda_component_check(&[m(LatticeVector::e2())], 4));
        assert!(y(1, 2).lambda_component_check(&[m(LatticeVector::e1())], 0));
        assert!(x2().lambda_component_check(&[], 7));
        assert!(!x2().lambda_component_check(&[m(LatticeVector::e2())], 2));
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(ManifoldPreset::sphere_product(int(1)).is_err());
        assert!(ManifoldPreset::sphere_product(rat(1, 2)).is_err());
        assert!(ManifoldPreset::blow_up(rat(1, 3)).is_err());
        assert!(ManifoldPreset::blow_up(int(0)).is_err());
        assert!(ManifoldPreset::blow_up(int(1)).is_err());
    }

    #[test]
    fn exponent_text_roundtrip() {
        let p = y(1, 2);
        let v = p.parse_exponent("-E-F").unwrap();
        assert_eq!(p.named_text(&v), "q^{-E - F}");
        assert_eq!(p.parse_exponent("1/2*e1 + e2").unwrap(), LatticeVector::new(rat(1, 2), int(1)));
        assert_eq!(LatticeVector::new(rat(1, 2), int(-1)).to_string(), "q^{1/2*e1 - e2}");
        assert_eq!(x2().parse_exponent("A-3B").unwrap(), LatticeVector::ints(-3, -2));
        assert!(p.parse_exponent("A").is_err());
        assert!(p.parse_exponent("E+").is_err());
    }

    fn vec_strategy() -> impl Strategy<Value = LatticeVector> {
        (-50i64..50, 1i64..6, -50i64..50, 1i64..6)
            .prop_map(|(a, b, c, d)| LatticeVector::new(rat(a, b), rat(c, d)))
    }

    fn preset_strategy() -> impl Strategy<Value = ManifoldPreset> {
        prop_oneof![
            (2i64..40, 1i64..20).prop_filter_map("lambda>1", |(n, d)| ManifoldPreset::sphere_product(rat(n, d)).ok()),
            (1i64..40, 2i64..41).prop_filter_map("mu ok", |(n, d)| ManifoldPreset::blow_up(rat(n, d)).ok()),
        ]
    }

    proptest! {
        #[test]
        fn functionals_are_linear(p in preset_strategy(), u in vec_strategy(), v in vec_strategy(), c in -9i64..9) {
            let c = int(c);
            let w = &u.scale(&c) + &v;
            prop_assert_eq!(p.omega_of(&w), p.omega_of(&u) * &c + p.omega_of(&v));
            prop_assert_eq!(p.chern_of(&w), p.chern_of(&u) * &c + p.chern_of(&v));
            prop_assert!(p.omega_e1 > int(0) && p.omega_e2 > int(0));
        }

        #[test]
        fn sphere_degrees_divisible_by_four(a in -100i64..100, b in -100i64..100) {
            let d = x2().degree_of(&LatticeVector::ints(a, b));
            prop_assert!(d.is_integer() && (d.to_integer() % 4u32) == 0.into());
        }

        #[test]
        fn named_text_parses_back(p in preset_strategy(), a in -9i64..9, b in -9i64..9) {
            let v = LatticeVector::ints(a, b);
            let text = p.named_text(&v);
            let inner = &text[3..text.len() - 1];
            prop_assert_eq!(p.parse_exponent(inner).unwrap(), v);
        }
    }
}
