//! Certified splitting of a structure polynomial into irreducible factors,
//! the matching idempotents, and inversion inside one field component.

use std::fmt;

use num_traits::ToPrimitive;
use serde_json::{json, Value};

use super::hensel::hensel_lift_many;
use super::newton::{newton_polygon, rescale, residue, split_over_rationals, unscale, Segment};
use super::presentation::{is_squarefree, structure_polynomial, StructurePolynomial, SubalgebraElement};
use super::spoly::{solve_linear, SeriesPoly};
use crate::error::{Error, Result};
use crate::laurent::LaurentScalar;
use crate::lattice::ManifoldPreset;
use crate::poly::Poly;
use crate::quantum::{QuantumClass, Valuation};
use crate::rational::{int, ExactRational};

pub const DEFAULT_TARGET_FLOOR: i64 = -64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IrreducibilityReason {
    /// A single Newton segment whose slope has this denominator, equal to the degree.
    NewtonSlopeDenominator(usize),
    /// Integral slope and an irreducible residual polynomial over ℚ.
    ResidueIrreducible,
    Linear,
}

impl fmt::Display for IrreducibilityReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::NewtonSlopeDenominator(d) => write!(f, "NewtonSlopeDenominator({d})"),
            Self::ResidueIrreducible => write!(f, "ResidueIrreducible"),
            Self::Linear => write!(f, "Linear"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CertifiedFactor {
    pub poly: SeriesPoly,
    pub multiplicity: usize,
    pub reason: IrreducibilityReason,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Field,
    SemisimpleSplit(usize),
    NotSemisimple,
    Undecided,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Field => write!(f, "FIELD"),
            Self::SemisimpleSplit(n) => write!(f, "SEMISIMPLE_SPLIT({n})"),
            Self::NotSemisimple => write!(f, "NOT_SEMISIMPLE"),
            Self::Undecided => write!(f, "UNDECIDED"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FactorizationCertificate {
    pub factors: Vec<CertifiedFactor>,
    /// Every factor coefficient is exact at degrees `>= precision_floor`.
    pub precision_floor: i64,
    pub squarefree: bool,
    pub segments: Vec<Segment>,
    pub verdict: Verdict,
    /// Why the verdict is undecided, when it is.
    pub note: Option<String>,
}

impl FactorizationCertificate {
    /// Product of the factors with multiplicity.
    pub fn product(&self) -> SeriesPoly {
        self.factors
            .iter()
            .flat_map(|f| std::iter::repeat_n(&f.poly, f.multiplicity))
            .fold(SeriesPoly::one(), |acc, f| acc.mul(f))
    }

    pub fn to_json(&self) -> Value {
        let factors: Vec<Value> = self
            .factors
            .iter()
            .map(|f| {
                json!({
                    "coefficients": f.poly.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                    "multiplicity": f.multiplicity,
                    "reason": f.reason.to_string(),
                })
            })
            .collect();
        json!({
            "factors": factors,
            "precision_floor": self.precision_floor,
            "squarefree": self.squarefree,
            "newton_polygon": self.segments.iter().map(|s| json!({"slope": s.slope.to_string(), "length": s.length})).collect::<Vec<_>>(),
            "verdict": self.verdict.to_string(),
        })
    }
}

fn undecided(msg: impl Into<String>) -> Error {
    Error::Undecided(msg.into())
}

fn slope_int(s: &Segment) -> Option<i64> {
    s.slope.is_integer().then(|| s.slope.to_integer().to_i64()).flatten()
}

/// `β^d F(1/β)` made monic.
fn reverse(p: &SeriesPoly, floor: i64) -> Result<SeriesPoly> {
    let mut c = p.coeffs().to_vec();
    c.reverse();
    SeriesPoly::new(c).monic(floor)
}

fn with_reason(p: SeriesPoly, reason: IrreducibilityReason) -> CertifiedFactor {
    CertifiedFactor { poly: p, multiplicity: 1, reason }
}

/// Lifts the residue factorization of `rescale(p, r)` and maps the factors
/// back. `parts` multiply to the residue.
fn lift_rescaled(p: &SeriesPoly, r: i64, parts: &[Poly], floor: i64) -> Result<Vec<SeriesPoly>> {
    let n = p.degree().unwrap() as i64;
    let q = rescale(p, r);
    let mut lift_floor = floor - r.abs() * n;
    if let Some(f) = q.precision_floor() {
        lift_floor = lift_floor.max(f);
    }
    Ok(hensel_lift_many(&q, parts, lift_floor)?.iter().map(|f| unscale(f, r)).collect())
}

/// Certified irreducible factors of a monic squarefree polynomial.
fn certify(p: &SeriesPoly, floor: i64) -> Result<Vec<CertifiedFactor>> {
    let n = p.degree().ok_or(Error::ZeroPolynomial)?;
    if n == 1 {
        return Ok(vec![with_reason(p.clone(), IrreducibilityReason::Linear)]);
    }
    if p.coeff(0).is_zero() {
        // β divides p
        let rest = SeriesPoly::new(p.coeffs()[1..].to_vec());
        let mut out = vec![with_reason(SeriesPoly::generator(), IrreducibilityReason::Linear)];
        out.extend(certify(&rest, floor)?);
        return Ok(out);
    }
    let segs = newton_polygon(p)?;
    if let [seg] = segs.as_slice() {
        let d = seg.slope.denom().to_usize().unwrap_or(0);
        if d == n {
            return Ok(vec![with_reason(p.clone(), IrreducibilityReason::NewtonSlopeDenominator(d))]);
        }
        let Some(r) = slope_int(seg) else {
            return Err(undecided(format!("slope {} with denominator below the degree {n}", seg.slope)));
        };
        let h = residue(&rescale(p, r))?;
        if h.gcd(&h.derivative()).degree() != Some(0) {
            return Err(undecided("residual polynomial has repeated factors"));
        }
        let (linear, rest) = split_over_rationals(&h).ok_or_else(|| undecided("residual coefficients too large"))?;
        match (linear.is_empty(), &rest) {
            (true, Some((_, true))) => return Ok(vec![with_reason(p.clone(), IrreducibilityReason::ResidueIrreducible)]),
            (true, _) => return Err(undecided(format!("residual polynomial {h:?} of degree {n} not certified"))),
            _ => {}
        }
        let mut parts = linear.clone();
        if let Some((c, _)) = &rest {
            parts.push(c.clone());
        }
        let lifted = lift_rescaled(p, r, &parts, floor)?;
        let mut out = Vec::new();
        for (i, f) in lifted.into_iter().enumerate() {
            if i < linear.len() {
                out.push(with_reason(f, IrreducibilityReason::Linear));
            } else if rest.as_ref().is_some_and(|(_, irr)| *irr) {
                out.push(with_reason(f, IrreducibilityReason::ResidueIrreducible));
            } else {
                return Err(undecided("residual cofactor of degree above three"));
            }
        }
        return Ok(out);
    }
    let last = segs.last().unwrap();
    if let Some(r) = slope_int(last) {
        // residue of the rescaled polynomial is z^start · h with h(0) ≠ 0
        let h = residue(&rescale(p, r))?;
        let low = Poly::from_coeffs(h.coeffs()[last.start..].to_vec());
        let parts = [Poly::monomial(int(1), last.start), low];
        let lifted = lift_rescaled(p, r, &parts, floor)?;
        let mut out = certify(&lifted[0], floor)?;
        out.extend(certify(&lifted[1], floor)?);
        return Ok(out);
    }
    if slope_int(&segs[0]).is_some() {
        let rev = reverse(p, floor)?;
        let mut out = Vec::new();
        for f in certify(&rev, floor)? {
            out.push(CertifiedFactor { poly: reverse(&f.poly, floor)?, ..f });
        }
        return Ok(out);
    }
    Err(undecided("no outer Newton segment has an integral slope"))
}

/// Factors a monic polynomial into certified irreducible pieces, ordered by
/// degree. Inputs outside the certificate classes get an undecided verdict.
pub fn factor_polynomial(p: &SeriesPoly, target_floor: i64) -> Result<FactorizationCertificate> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let p = p.monic(target_floor)?;
    let segments = newton_polygon(&p)?;
    let squarefree = is_squarefree(&p, target_floor)?;
    let mut cert = FactorizationCertificate {
        factors: Vec::new(),
        precision_floor: target_floor,
        squarefree,
        segments,
        verdict: Verdict::Undecided,
        note: None,
    };
    let base = if squarefree {
        p.clone()
    } else {
        let g = p.gcd(&p.derivative(), target_floor)?;
        p.div_rem(&g, target_floor)?.0
    };
    let factors = match certify(&base, target_floor) {
        Ok(f) => f,
        Err(Error::Undecided(msg)) => {
            cert.note = Some(msg);
            return Ok(cert);
        }
        Err(e) => return Err(e),
    };
    let mut factors = factors;
    if !squarefree {
        for f in &mut factors {
            let mut rest = p.clone();
            let mut m = 0;
            loop {
                let (q, r) = rest.div_rem(&f.poly, target_floor)?;
                if !r.coeffs().iter().all(|c| c.is_zero() && c.is_exact()) {
                    break;
                }
                m += 1;
                rest = q;
            }
            if m == 0 {
                cert.note = Some("multiplicity of a series factor is not decidable".into());
                return Ok(cert);
            }
            f.multiplicity = m;
        }
    }
    factors.sort_by_key(|f| f.poly.degree());
    cert.precision_floor = factors.iter().filter_map(|f| f.poly.precision_floor()).max().unwrap_or(target_floor).max(target_floor);
    cert.verdict = match (squarefree, factors.len()) {
        (false, _) => Verdict::NotSemisimple,
        (true, 1) => Verdict::Field,
        (true, k) => Verdict::SemisimpleSplit(k),
    };
    cert.factors = factors;
    Ok(cert)
}

/// Certified splitting of the preset's degree-4 algebra into fields.
pub fn split_fields(preset: &ManifoldPreset, target_floor: i64) -> Result<FactorizationCertificate> {
    factor_polynomial(structure_polynomial(preset).poly(), target_floor)
}

/// Matrix of multiplication by `g` on `R[β]/(f)` in the monomial basis.
fn mul_matrix(g: &SeriesPoly, f: &SeriesPoly) -> Vec<Vec<LaurentScalar>> {
    let d = f.degree().unwrap();
    let mut m = vec![vec![LaurentScalar::zero(); d]; d];
    let mut col = g.rem_monic(f);
    for k in 0..d {
        for (row, entry) in m.iter_mut().enumerate() {
            entry[k] = col.coeff(row);
        }
        col = SeriesPoly::generator().mul(&col).rem_monic(f);
    }
    m
}

/// Inverse of `g` modulo an irreducible monic `f`; `None` when `g ≡ 0`.
fn inverse_mod(g: &SeriesPoly, f: &SeriesPoly, floor: i64) -> Result<Option<SeriesPoly>> {
    let r = g.rem_monic(f);
    if r.coeffs().iter().all(|c| c.is_zero()) {
        return Ok(None);
    }
    let d = f.degree().unwrap();
    let mut rhs = vec![LaurentScalar::zero(); d];
    rhs[0] = LaurentScalar::one();
    Ok(solve_linear(mul_matrix(&r, f), rhs, floor)?.map(SeriesPoly::new))
}

/// Field decomposition of a preset with its idempotents.
#[derive(Clone, Debug)]
pub struct Splitting {
    pub structure: StructurePolynomial,
    pub certificate: FactorizationCertificate,
    pub idempotents: Vec<SubalgebraElement>,
    pub target_floor: i64,
}

impl Splitting {
    pub fn new(preset: &ManifoldPreset, target_floor: i64) -> Result<Self> {
        let structure = structure_polynomial(preset);
        let certificate = split_fields(preset, target_floor)?;
        match certificate.verdict {
            Verdict::Field | Verdict::SemisimpleSplit(_) => {}
            _ => return Err(undecided(format!("splitting verdict is {}", certificate.verdict))),
        }
        let factors: Vec<&SeriesPoly> = certificate.factors.iter().map(|f| &f.poly).collect();
        let mut idempotents = Vec::new();
        if factors.len() == 1 {
            idempotents.push(structure.one());
        } else {
            for (j, fj) in factors.iter().enumerate() {
                let others = factors
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| *i != j)
                    .fold(SeriesPoly::one(), |acc, (_, f)| acc.mul(f));
                let u = inverse_mod(&others, fj, target_floor)?
                    .ok_or(Error::NotCoprime)?;
                idempotents.push(structure.element(&others.mul(&u)));
            }
        }
        Ok(Self { structure, certificate, idempotents, target_floor })
    }

    pub fn components(&self) -> usize {
        self.idempotents.len()
    }

    /// Idempotents as quantum classes, expanded down to energy `floor`.
    pub fn idempotent_classes(&self, floor: &ExactRational) -> Vec<QuantumClass> {
        self.idempotents.iter().map(|e| self.structure.to_class(e, floor)).collect()
    }

    /// `η` with `γ η = e_component`, supported in that component.
    pub fn invert_in_subalgebra(&self, gamma: &SubalgebraElement, component: usize) -> Result<SubalgebraElement> {
        let f = &self
            .certificate
            .factors
            .get(component)
            .ok_or_else(|| Error::InvalidPreset(format!("no component {component}")))?
            .poly;
        let w = inverse_mod(gamma.poly(), f, self.target_floor)?.ok_or(Error::ZeroInComponent(component))?;
        let eta = self.structure.mul(&self.idempotents[component], &self.structure.element(&w));
        if eta.is_zero() {
            return Err(Error::FloorTooShallow("inverse vanishes above the floor".into()));
        }
        Ok(eta)
    }

    /// The inverse in the whole algebra, summing the component inverses.
    pub fn invert(&self, gamma: &SubalgebraElement) -> Result<SubalgebraElement> {
        let mut out = self.structure.element(&SeriesPoly::zero());
        for j in 0..self.components() {
            out = self.structure.add(&out, &self.invert_in_subalgebra(gamma, j)?);
        }
        Ok(out)
    }

    /// `val(γ) + val(γ^{-1})`.
    pub fn inversion_defect(&self, gamma: &SubalgebraElement) -> Result<ExactRational> {
        let inv = self.invert(gamma)?;
        match (self.structure.val(gamma)?, self.structure.val(&inv)?) {
            (Valuation::Finite(a), Valuation::Finite(b)) => Ok(a + b),
            _ => Err(Error::NotAUnit("zero element".into())),
        }
    }
}

/// Convenience wrappers over [`Splitting`].
pub fn unit_idempotents(preset: &ManifoldPreset, target_floor: i64) -> Result<Vec<QuantumClass>> {
    let s = Splitting::new(preset, target_floor)?;
    Ok(s.idempotent_classes(&(int(target_floor) * &preset.omega_e1)))
}
