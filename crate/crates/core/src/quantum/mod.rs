//! Quantum homology `QH_*(M) = H_*(M) ⊗ Λ` for the two presets.
//!
//! The product is table driven: each pair of homology basis classes maps to a
//! finite list of `class ⊗ q^w` terms, extended bilinearly over the Novikov
//! ring. Classes may be truncated at an energy floor; every coefficient that
//! is reported is then exact and all omitted terms have energy below the floor.

mod invert;
mod text;

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::laurent::LaurentScalar;
use crate::lattice::{LatticeVector, ManifoldPreset};
use crate::poly::LaurentPoly;
use crate::rational::{int, to_i64, ExactRational};

pub use text::parse_expression;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BasisClass {
    P,
    A,
    B,
    E,
    F,
    M,
}

impl BasisClass {
    pub fn degree(self) -> i64 {
        match self {
            BasisClass::P => 0,
            BasisClass::M => 4,
            _ => 2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            BasisClass::P => "P",
            BasisClass::A => "A",
            BasisClass::B => "B",
            BasisClass::E => "E",
            BasisClass::F => "F",
            BasisClass::M => "M",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Some(match name {
            "P" => BasisClass::P,
            "A" => BasisClass::A,
            "B" => BasisClass::B,
            "E" => BasisClass::E,
            "F" => BasisClass::F,
            "M" => BasisClass::M,
            _ => return None,
        })
    }

    /// The four basis classes of the preset, ordered by class.
    pub fn basis(preset: &ManifoldPreset) -> [BasisClass; 4] {
        if preset.is_sphere_product() {
            [BasisClass::P, BasisClass::A, BasisClass::B, BasisClass::M]
        } else {
            [BasisClass::P, BasisClass::E, BasisClass::F, BasisClass::M]
        }
    }
}

impl fmt::Display for BasisClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One output term `coeff * class ⊗ q^exp` of a basis product.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableTerm {
    pub class: BasisClass,
    pub exp: LatticeVector,
    pub coeff: ExactRational,
}

/// Quantum products of basis classes, stored for both argument orders.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductTable {
    entries: BTreeMap<(BasisClass, BasisClass), Vec<TableTerm>>,
}

impl ProductTable {
    fn build(preset: &ManifoldPreset, rows: &[(&str, &str, &[(i64, &str, &str)])]) -> Result<Self> {
        let mut entries = BTreeMap::new();
        for c in BasisClass::basis(preset) {
            let unit = vec![TableTerm { class: c, exp: LatticeVector::zero(), coeff: int(1) }];
            entries.insert((BasisClass::M, c), unit.clone());
            entries.insert((c, BasisClass::M), unit);
        }
        for (l, r, terms) in rows {
            let l = BasisClass::from_name(l).unwrap();
            let r = BasisClass::from_name(r).unwrap();
            let mut out = Vec::new();
            for (coeff, class, exp) in terms.iter() {
                out.push(TableTerm {
                    class: BasisClass::from_name(class).unwrap(),
                    exp: preset.parse_exponent(exp)?,
                    coeff: int(*coeff),
                });
            }
            entries.insert((l, r), out.clone());
            entries.insert((r, l), out);
        }
        Ok(Self { entries })
    }

    /// Products of the homology basis as computed from Gromov-Witten data.
    pub fn standard(preset: &ManifoldPreset) -> Self {
        let rows: &[(&str, &str, &[(i64, &str, &str)])] = if preset.is_sphere_product() {
            &[
                ("A", "B", &[(1, "P", "0")]),
                ("A", "A", &[(1, "M", "-B")]),
                ("B", "B", &[(1, "M", "-A")]),
                ("P", "A", &[(1, "B", "-B")]),
                ("P", "B", &[(1, "A", "-A")]),
                ("P", "P", &[(1, "M", "-A-B")]),
            ]
        } else {
            &[
                ("P", "P", &[(1, "E", "-E-F"), (1, "F", "-E-F")]),
                ("E", "P", &[(1, "F", "-F")]),
                ("P", "F", &[(1, "M", "-E-F")]),
                ("E", "E", &[(-1, "P", "0"), (1, "E", "-E"), (1, "M", "-F")]),
                ("E", "F", &[(1, "P", "0"), (-1, "E", "-E")]),
                ("F", "F", &[(1, "E", "-E")]),
            ]
        };
        Self::build(preset, rows).expect("standard table uses valid class names")
    }

    /// A deliberately wrong table used as a negative control: the coefficient
    /// of `M ⊗ q^{-F}` in `E*E` (or of `M ⊗ q^{-B}` in `A*A`) is doubled.
    pub fn perturbed(preset: &ManifoldPreset) -> Self {
        let mut t = Self::standard(preset);
        let key = if preset.is_sphere_product() {
            (BasisClass::A, BasisClass::A)
        } else {
            (BasisClass::E, BasisClass::E)
        };
        for term in t.entries.get_mut(&key).unwrap() {
            if term.class == BasisClass::M {
                term.coeff = int(2);
            }
        }
        t
    }

    pub fn get(&self, a: BasisClass, b: BasisClass) -> &[TableTerm] {
        self.entries.get(&(a, b)).map_or(&[], Vec::as_slice)
    }
}

/// Classical intersection numbers in complementary degrees.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionForm {
    entries: BTreeMap<(BasisClass, BasisClass), ExactRational>,
}

impl IntersectionForm {
    pub fn standard(preset: &ManifoldPreset) -> Self {
        let pairs: &[(BasisClass, BasisClass, i64)] = if preset.is_sphere_product() {
            &[(BasisClass::M, BasisClass::P, 1), (BasisClass::A, BasisClass::B, 1)]
        } else {
            &[
                (BasisClass::M, BasisClass::P, 1),
                (BasisClass::E, BasisClass::E, -1),
                (BasisClass::E, BasisClass::F, 1),
            ]
        };
        let mut entries = BTreeMap::new();
        for &(a, b, v) in pairs {
            entries.insert((a, b), int(v));
            entries.insert((b, a), int(v));
        }
        Self { entries }
    }

    pub fn get(&self, a: BasisClass, b: BasisClass) -> ExactRational {
        self.entries.get(&(a, b)).cloned().unwrap_or_else(ExactRational::zero)
    }
}

/// `Σ coeff · class ⊗ q^exp`, optionally truncated at an energy floor.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct QuantumClass {
    pub terms: BTreeMap<(BasisClass, LatticeVector), ExactRational>,
    /// `None` means the sum is finite and complete.
    pub energy_floor: Option<ExactRational>,
}

impl QuantumClass {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(class: BasisClass) -> Self {
        Self::monomial(int(1), class, LatticeVector::zero())
    }

    pub fn monomial(coeff: ExactRational, class: BasisClass, exp: LatticeVector) -> Self {
        let mut c = Self::zero();
        c.add_term(class, exp, coeff);
        c
    }

    pub fn from_terms(
        terms: impl IntoIterator<Item = (ExactRational, BasisClass, LatticeVector)>,
        energy_floor: Option<ExactRational>,
    ) -> Self {
        let mut c = Self { terms: BTreeMap::new(), energy_floor };
        for (coeff, class, exp) in terms {
            c.add_term(class, exp, coeff);
        }
        c
    }

    pub fn add_term(&mut self, class: BasisClass, exp: LatticeVector, coeff: ExactRational) {
        if coeff.is_zero() {
            return;
        }
        let key = (class, exp);
        let e = self.terms.entry(key.clone()).or_insert_with(ExactRational::zero);
        *e += coeff;
        if e.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, class: BasisClass, exp: &LatticeVector) -> ExactRational {
        self.terms.get(&(class, exp.clone())).cloned().unwrap_or_else(ExactRational::zero)
    }

    pub fn scale(&self, c: &ExactRational) -> Self {
        if c.is_zero() {
            return Self { terms: BTreeMap::new(), energy_floor: self.energy_floor.clone() };
        }
        Self {
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
            energy_floor: self.energy_floor.clone(),
        }
    }

    /// Multiplies by the monomial `q^v`.
    pub fn shift(&self, preset: &ManifoldPreset, v: &LatticeVector) -> Self {
        Self {
            terms: self.terms.iter().map(|((c, u), x)| ((*c, u + v), x.clone())).collect(),
            energy_floor: self.energy_floor.as_ref().map(|f| f + preset.omega_of(v)),
        }
    }
}

fn max_floor(a: &Option<ExactRational>, b: &Option<ExactRational>) -> Option<ExactRational> {
    match (a, b) {
        (None, None) => None,
        (Some(x), None) | (None, Some(x)) => Some(x.clone()),
        (Some(x), Some(y)) => Some(if x > y { x.clone() } else { y.clone() }),
    }
}

/// Result of `val`: the top energy, or `-∞` for zero.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valuation {
    NegInfinity,
    Finite(ExactRational),
}

impl Valuation {
    pub fn finite(&self) -> Option<&ExactRational> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::NegInfinity => None,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::NegInfinity => write!(f, "-inf"),
            Valuation::Finite(v) => write!(f, "{v}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Degree {
    Pure(ExactRational),
    Mixed,
}

/// A preset with its product table and intersection form.
#[derive(Clone, Debug)]
pub struct QuantumAlgebra {
    preset: ManifoldPreset,
    table: ProductTable,
    form: IntersectionForm,
}

impl QuantumAlgebra {
    /// The algebra with the standard table, checked for consistency.
    pub fn new(preset: ManifoldPreset) -> Result<Self> {
        let table = ProductTable::standard(&preset);
        let alg = Self::with_table_unchecked(preset, table);
        alg.validate()?;
        Ok(alg)
    }

    /// Skips validation; used to run the battery against a broken table.
    pub fn with_table_unchecked(preset: ManifoldPreset, table: ProductTable) -> Self {
        let form = IntersectionForm::standard(&preset);
        Self { preset, table, form }
    }

    pub fn preset(&self) -> &ManifoldPreset {
        &self.preset
    }

    pub fn table(&self) -> &ProductTable {
        &self.table
    }

    pub fn form(&self) -> &IntersectionForm {
        &self.form
    }

    pub fn basis(&self) -> [BasisClass; 4] {
        BasisClass::basis(&self.preset)
    }

    pub fn unit(&self) -> QuantumClass {
        QuantumClass::basis(BasisClass::M)
    }

    /// Basis class with exponent given in named classes, e.g. `("E", "-E")`.
    pub fn named(&self, class: BasisClass, exp: &str) -> Result<QuantumClass> {
        let v = self.preset.parse_exponent(exp)?;
        let c = QuantumClass::monomial(int(1), class, v);
        self.check(&c)?;
        Ok(c)
    }

    /// Commutativity, associativity, unit law and the Frobenius identity on
    /// all basis triples, plus nondegeneracy of the intersection form.
    pub fn validate(&self) -> Result<()> {
        let basis = self.basis();
        let fail = |msg: String| Err(Error::TableInconsistent(msg));
        for &a in &basis {
            let ca = QuantumClass::basis(a);
            if self.product(&self.unit(), &ca)? != ca {
                return fail(format!("M is not a unit on {a}"));
            }
            for &b in &basis {
                let cb = QuantumClass::basis(b);
                let ab = self.product(&ca, &cb)?;
                if ab != self.product(&cb, &ca)? {
                    return fail(format!("{a}*{b} is not commutative"));
                }
                if self.full_pairing(&ab, &self.unit()) != self.full_pairing(&ca, &cb) {
                    return fail(format!("Frobenius fails for ({a}, {b})"));
                }
                for &c in &basis {
                    let cc = QuantumClass::basis(c);
                    let left = self.product(&ab, &cc)?;
                    let right = self.product(&ca, &self.product(&cb, &cc)?)?;
                    if left != right {
                        return fail(format!("({a}*{b})*{c} != {a}*({b}*{c})"));
                    }
                }
            }
        }
        let det = {
            let m: Vec<Vec<ExactRational>> =
                basis.iter().map(|&a| basis.iter().map(|&b| self.form.get(a, b)).collect()).collect();
            rational_det(m)
        };
        if det.is_zero() {
            return fail("intersection form is degenerate".into());
        }
        Ok(())
    }

    fn check(&self, a: &QuantumClass) -> Result<()> {
        let basis = self.basis();
        for (c, _) in a.terms.keys() {
            if !basis.contains(c) {
                return Err(Error::PresetMismatch(c.name().to_string()));
            }
        }
        Ok(())
    }

    pub fn energy(&self, v: &LatticeVector) -> ExactRational {
        self.preset.omega_of(v)
    }

    pub fn val(&self, a: &QuantumClass) -> Result<Valuation> {
        let top = a.terms.keys().map(|(_, v)| self.energy(v)).max();
        match (top, &a.energy_floor) {
            (Some(v), _) => Ok(Valuation::Finite(v)),
            (None, None) => Ok(Valuation::NegInfinity),
            (None, Some(_)) => Err(Error::ValBelowFloor),
        }
    }

    /// Raises the energy floor, dropping terms below it.
    pub fn truncate(&self, a: &QuantumClass, floor: &ExactRational) -> QuantumClass {
        let floor = max_floor(&a.energy_floor, &Some(floor.clone())).unwrap();
        QuantumClass {
            terms: a
                .terms
                .iter()
                .filter(|((_, v), _)| self.energy(v) >= floor)
                .map(|(k, c)| (k.clone(), c.clone()))
                .collect(),
            energy_floor: Some(floor),
        }
    }

    pub fn add(&self, a: &QuantumClass, b: &QuantumClass) -> QuantumClass {
        self.combine(a, b, &int(1))
    }

    pub fn sub(&self, a: &QuantumClass, b: &QuantumClass) -> QuantumClass {
        self.combine(a, b, &int(-1))
    }

    fn combine(&self, a: &QuantumClass, b: &QuantumClass, sb: &ExactRational) -> QuantumClass {
        let floor = max_floor(&a.energy_floor, &b.energy_floor);
        let mut out = QuantumClass { terms: a.terms.clone(), energy_floor: None };
        for ((c, v), x) in &b.terms {
            out.add_term(*c, v.clone(), x * sb);
        }
        match floor {
            None => out,
            Some(f) => self.truncate(&out, &f),
        }
    }

    pub fn product(&self, a: &QuantumClass, b: &QuantumClass) -> Result<QuantumClass> {
        self.check(a)?;
        self.check(b)?;
        let floor = if a.energy_floor.is_none() && b.energy_floor.is_none() {
            None
        } else {
            let va = self.val(a)?;
            let vb = self.val(b)?;
            let (Valuation::Finite(va), Valuation::Finite(vb)) = (va, vb) else {
                return Ok(QuantumClass::zero());
            };
            let mut f: Option<ExactRational> = None;
            if let Some(fa) = &a.energy_floor {
                f = max_floor(&f, &Some(fa + &vb));
            }
            if let Some(fb) = &b.energy_floor {
                f = max_floor(&f, &Some(fb + &va));
            }
            f
        };
        let mut ta: Vec<_> = a.terms.iter().map(|(k, c)| (self.energy(&k.1), k, c)).collect();
        let mut tb: Vec<_> = b.terms.iter().map(|(k, c)| (self.energy(&k.1), k, c)).collect();
        ta.sort_by(|x, y| y.0.cmp(&x.0));
        tb.sort_by(|x, y| y.0.cmp(&x.0));
        let mut out: BTreeMap<(BasisClass, LatticeVector), ExactRational> = BTreeMap::new();
        for (ea, (ca, va), xa) in &ta {
            for (eb, (cb, vb), xb) in &tb {
                // table shifts never raise energy
                if let Some(f) = &floor {
                    if &(ea + eb) < f {
                        break;
                    }
                }
                let uv = va + vb;
                let coeff = *xa * *xb;
                for t in self.table.get(*ca, *cb) {
                    let e = out.entry((t.class, &uv + &t.exp)).or_insert_with(ExactRational::zero);
                    *e += &coeff * &t.coeff;
                }
            }
        }
        let mut res = QuantumClass { terms: BTreeMap::new(), energy_floor: floor.clone() };
        for (k, c) in out {
            if c.is_zero() {
                continue;
            }
            if let Some(f) = &floor {
                if &self.energy(&k.1) < f {
                    continue;
                }
            }
            res.terms.insert(k, c);
        }
        Ok(res)
    }

    /// `a^n` for `n >= 0` by repeated squaring.
    pub fn power(&self, a: &QuantumClass, n: u64) -> Result<QuantumClass> {
        let mut result = self.unit();
        let mut base = a.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = self.product(&result, &base)?;
            }
            n >>= 1;
            if n > 0 {
                base = self.product(&base, &base)?;
            }
        }
        Ok(result)
    }

    pub fn degree(&self, a: &QuantumClass) -> Degree {
        let mut degs = a
            .terms
            .keys()
            .map(|(c, v)| int(c.degree()) + self.preset.degree_of(v));
        let Some(first) = degs.next() else {
            return Degree::Mixed;
        };
        if degs.all(|d| d == first) {
            Degree::Pure(first)
        } else {
            Degree::Mixed
        }
    }

    /// `Σ_{u,w} a_u ∘ b_w q^{u+w}` as a map on exponents, finite classes only.
    fn full_pairing(&self, a: &QuantumClass, b: &QuantumClass) -> BTreeMap<LatticeVector, ExactRational> {
        let mut out = BTreeMap::new();
        for ((ca, u), x) in &a.terms {
            for ((cb, w), y) in &b.terms {
                let f = self.form.get(*ca, *cb);
                if f.is_zero() {
                    continue;
                }
                *out.entry(u + w).or_insert_with(ExactRational::zero) += x * y * f;
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    /// Energy bound below which truncation may corrupt pairing terms, i.e.
    /// coefficients of `q^s` are exact whenever `ω(s) >= bound`.
    fn pairing_bound(&self, a: &QuantumClass, b: &QuantumClass) -> Result<Option<ExactRational>> {
        let mut bound = None;
        if let Some(fa) = &a.energy_floor {
            let vb = match self.val(b)? {
                Valuation::Finite(v) => v,
                Valuation::NegInfinity => return Ok(None),
            };
            bound = max_floor(&bound, &Some(fa + vb));
        }
        if let Some(fb) = &b.energy_floor {
            let va = match self.val(a)? {
                Valuation::Finite(v) => v,
                Valuation::NegInfinity => return Ok(None),
            };
            bound = max_floor(&bound, &Some(fb + va));
        }
        Ok(bound)
    }

    /// `Π(a, b)`: the `q^0` coefficient of the pairing.
    pub fn pairing_pi(&self, a: &QuantumClass, b: &QuantumClass) -> Result<ExactRational> {
        self.check(a)?;
        self.check(b)?;
        if let Some(bound) = self.pairing_bound(a, b)? {
            if bound > ExactRational::zero() {
                return Err(Error::TruncationUnsound);
            }
        }
        Ok(self.full_pairing(a, b).remove(&LatticeVector::zero()).unwrap_or_else(ExactRational::zero))
    }

    /// `Δ(a, b)`: the degree-zero part of the pairing as a Laurent series in
    /// `x = q^{e1}`; a series with an explicit floor when either input is
    /// truncated.
    pub fn pairing_delta(&self, a: &QuantumClass, b: &QuantumClass) -> Result<LaurentScalar> {
        self.check(a)?;
        self.check(b)?;
        let bound = self.pairing_bound(a, b)?;
        let mut p = LaurentPoly::zero();
        for (v, c) in self.full_pairing(a, b) {
            if !v.a2.is_zero() {
                continue;
            }
            let n = to_i64(&v.a1).ok_or_else(|| Error::FractionalExponent(v.to_string()))?;
            p.add_term(n, c);
        }
        let exact = LaurentScalar::from_laurent_poly(&p);
        Ok(match bound {
            None => exact,
            Some(bound) => {
                let floor = crate::rational::ceil_i64(&(bound / &self.preset.omega_e1));
                exact.expand(floor)
            }
        })
    }
}

/// Determinant over ℚ by fraction-free elimination.
pub(crate) fn rational_det(mut m: Vec<Vec<ExactRational>>) -> ExactRational {
    let n = m.len();
    let mut det = ExactRational::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return ExactRational::zero();
        };
        if piv != col {
            m.swap(piv, col);
            det = -det;
        }
        let p = m[col][col].clone();
        det *= &p;
        for r in col + 1..n {
            let factor = &m[r][col] / &p;
            if factor.is_zero() {
                continue;
            }
            for c in col..n {
                let sub = &factor * &m[col][c];
                m[r][c] -= sub;
            }
        }
    }
    det
}

#[cfg(test)]
mod tests;
