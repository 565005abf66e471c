//! The verification battery behind `verify-paper`: ten numbered checks,
//! each run to completion and reported as pass or fail.
//!
//! Every check records whether it reads the quantum product table, so a run
//! with a deliberately wrong table can show that only those checks fail.

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};

use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::factor::{
    is_squarefree, poly_gcd, relation_check, split_fields, structure_polynomial, SeriesPoly, Splitting,
    SubalgebraElement, Verdict,
};
use crate::laurent::LaurentScalar;
use crate::lattice::{LatticeVector, ManifoldPreset};
use crate::poly::LaurentPoly;
use crate::quantum::{parse_expression, BasisClass, Degree, ProductTable, QuantumAlgebra, QuantumClass, Valuation};
use crate::rational::{int, rat, ExactRational};
use crate::seidel::{
    blow_up_delta, duality_defect, quasimorphism_report, seidel_inverse, val_sequence, QuasimorphismOptions,
    QuasimorphismReport, SeidelElement,
};

#[derive(Clone, Debug, PartialEq)]
pub struct CriterionResult {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    /// Whether the check reads the quantum product table.
    pub table_dependent: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BatteryConfig {
    /// Replace the product table by the perturbed one.
    pub perturbed_table: bool,
    pub seeds: (u64, u64),
    pub defect_samples: usize,
    pub property_cases: usize,
    pub k_max: usize,
    pub window: usize,
}

impl Default for BatteryConfig {
    fn default() -> Self {
        Self { perturbed_table: false, seeds: (7, 11), defect_samples: 500, property_cases: 200, k_max: 40, window: 10 }
    }
}

pub fn sphere_lambdas() -> Vec<ExactRational> {
    vec![rat(3, 2), int(2), int(5)]
}

fn sphere(l: &ExactRational) -> ManifoldPreset {
    ManifoldPreset::sphere_product(l.clone()).expect("valid λ")
}

fn blow(m: &ExactRational) -> ManifoldPreset {
    ManifoldPreset::blow_up(m.clone()).expect("valid μ")
}

fn algebra(preset: &ManifoldPreset, perturbed: bool) -> QuantumAlgebra {
    if perturbed {
        QuantumAlgebra::with_table_unchecked(preset.clone(), ProductTable::perturbed(preset))
    } else {
        QuantumAlgebra::new(preset.clone()).expect("standard table validates")
    }
}

/// Runs a check, turning errors and panics into a failed result.
fn guarded(f: impl FnOnce() -> Result<(bool, String)>) -> (bool, String) {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(r)) => r,
        Ok(Err(e)) => (false, format!("error: {e}")),
        Err(_) => (false, "internal panic".into()),
    }
}

fn expect_class(preset: &ManifoldPreset, terms: &[(BasisClass, &str, i64)]) -> Result<QuantumClass> {
    let mut out = QuantumClass::zero();
    for &(c, exp, k) in terms {
        out.add_term(c, preset.parse_exponent(exp)?, int(k));
    }
    Ok(out)
}

/// `a * b` and its expected terms.
type Case<'a> = (BasisClass, BasisClass, &'a [(BasisClass, &'a str, i64)]);

fn table_fidelity(cfg: &BatteryConfig) -> Result<(bool, String)> {
    use BasisClass::*;
    let mut bad = Vec::new();
    let mut checked = 0;
    for l in sphere_lambdas() {
        let p = sphere(&l);
        let alg = algebra(&p, cfg.perturbed_table);
        let cases: [Case; 3] =
            [(A, B, &[(P, "0", 1)]), (A, A, &[(M, "-B", 1)]), (B, B, &[(M, "-A", 1)])];
        for (a, b, want) in cases {
            checked += 1;
            let got = alg.product(&QuantumClass::basis(a), &QuantumClass::basis(b))?;
            if got != expect_class(&p, want)? {
                bad.push(format!("{} {}*{} = {}", p.name(), a.name(), b.name(), alg.render(&got)));
            }
        }
        for (text, v) in [("-B", LatticeVector::ints(-1, -1)), ("-A", LatticeVector::ints(0, -1))] {
            checked += 1;
            if p.parse_exponent(text)? != v {
                bad.push(format!("{} rebased {text}", p.name()));
            }
        }
    }
    for m in [rat(1, 4), rat(1, 2), rat(2, 3)] {
        let p = blow(&m);
        let k = p.kappa().unwrap();
        let alg = algebra(&p, cfg.perturbed_table);
        let cases: [Case; 6] = [
            (P, P, &[(E, "-E-F", 1), (F, "-E-F", 1)]),
            (E, P, &[(F, "-F", 1)]),
            (P, F, &[(M, "-E-F", 1)]),
            (E, E, &[(P, "0", -1), (E, "-E", 1), (M, "-F", 1)]),
            (E, F, &[(P, "0", 1), (E, "-E", -1)]),
            (F, F, &[(E, "-E", 1)]),
        ];
        for (a, b, want) in cases {
            checked += 1;
            let got = alg.product(&QuantumClass::basis(a), &QuantumClass::basis(b))?;
            if got != expect_class(&p, want)? {
                bad.push(format!("{} {}*{} = {}", p.name(), a.name(), b.name(), alg.render(&got)));
            }
        }
        for (text, v) in [
            ("-E", LatticeVector::ints(0, -1)),
            ("-F", LatticeVector::ints(k, -2)),
            ("-E-F", LatticeVector::ints(k, -3)),
        ] {
            checked += 1;
            if p.parse_exponent(text)? != v {
                bad.push(format!("{} rebased {text}", p.name()));
            }
        }
    }
    Ok(if bad.is_empty() {
        (true, format!("{checked} products and rebasings match"))
    } else {
        (false, format!("mismatches: {}", bad.join("; ")))
    })
}

/// All coefficients of `a - b` vanish at every degree in `floor..=8`.
pub fn agree_to(a: &SeriesPoly, b: &SeriesPoly, floor: i64) -> bool {
    a.sub(b).coeffs().iter().all(|c| (floor..=8).all(|j| c.coefficient(j) == Some(int(0))))
}

fn verdicts(_cfg: &BatteryConfig) -> Result<(bool, String)> {
    let mut notes = Vec::new();
    let mut ok = true;
    let mut check = |preset: ManifoldPreset, want: Verdict| -> Result<()> {
        let c = split_fields(&preset, -40)?;
        if c.verdict != want {
            ok = false;
        }
        notes.push(format!("{}: {}", preset.name(), c.verdict));
        Ok(())
    };
    for l in sphere_lambdas() {
        check(sphere(&l), Verdict::Field)?;
    }
    for m in [rat(1, 2), rat(2, 3), rat(5, 6)] {
        check(blow(&m), Verdict::Field)?;
    }
    for m in [rat(1, 4), rat(1, 5)] {
        check(blow(&m), Verdict::SemisimpleSplit(2))?;
    }
    for m in [rat(1, 2), rat(1, 4)] {
        let p = structure_polynomial(&blow(&m));
        let g = poly_gcd(p.poly(), &p.poly().derivative(), -40)?;
        if g != SeriesPoly::one() || !is_squarefree(p.poly(), -40)? {
            ok = false;
            notes.push(format!("gcd with derivative for mu={m} is {g}"));
        }
    }
    let p = blow(&rat(1, 4));
    let c = split_fields(&p, -40)?;
    let matches = agree_to(&c.product(), structure_polynomial(&p).poly(), -40);
    ok &= matches;
    notes.push(format!("lifted product matches to floor -40: {matches}"));
    Ok((ok, notes.join("; ")))
}

fn relations(cfg: &BatteryConfig) -> Result<(bool, String)> {
    let mut ok = true;
    let mut notes = Vec::new();
    for m in [rat(1, 4), rat(1, 2)] {
        let p = blow(&m);
        let alg = algebra(&p, cfg.perturbed_table);
        let rels = relation_check(&alg)?;
        let failed: Vec<_> = rels.iter().filter(|(_, good)| !good).map(|(n, _)| n.clone()).collect();
        // β⁴ + β³ = x^κ for β = F ⊗ y
        let b = QuantumClass::monomial(int(1), BasisClass::F, LatticeVector::ints(0, 1));
        let lhs = alg.add(&alg.power(&b, 4)?, &alg.power(&b, 3)?);
        let rhs = QuantumClass::monomial(int(1), BasisClass::M, LatticeVector::ints(p.kappa().unwrap(), 0));
        let reduced = lhs == rhs;
        ok &= failed.is_empty() && reduced;
        notes.push(format!(
            "mu={m}: {}/6 relations hold, single-generator relation {}",
            6 - failed.len(),
            if reduced { "holds" } else { "fails" }
        ));
    }
    Ok((ok, notes.join("; ")))
}

fn finite(v: Valuation) -> Result<ExactRational> {
    match v {
        Valuation::Finite(x) => Ok(x),
        Valuation::NegInfinity => Err(Error::ValBelowFloor),
    }
}

fn even_powers(cfg: &BatteryConfig) -> Result<(bool, String)> {
    let mut ok = true;
    let mut notes = Vec::new();
    for l in sphere_lambdas() {
        let p = sphere(&l);
        let alg = algebra(&p, cfg.perturbed_table);
        let s = seidel_inverse(&p, &-SeidelElement::default_depth(&p));
        let seq = val_sequence(&alg, &s, &alg.unit(), 24, cfg.window)?;
        let bad_psi = (1..=12i64)
            .filter(|&n| seq.entries[(2 * n - 1) as usize].1 != int(1) + int(n) / (int(3) * &l))
            .count();
        let ab = parse_expression(&alg, "A-B")?;
        let mut bad_ab = 0;
        for n in 1..=6u64 {
            if finite(alg.val(&alg.power(&ab, 2 * n)?)?)? != int(1 - n as i64) {
                bad_ab += 1;
            }
        }
        ok &= bad_psi == 0 && bad_ab == 0;
        notes.push(format!("lambda={l}: {}/12 even powers, {}/6 (A-B) powers", 12 - bad_psi, 6 - bad_ab));
    }
    Ok((ok, notes.join("; ")))
}

type Reports = BTreeMap<String, std::result::Result<QuasimorphismReport, String>>;

fn report_presets() -> Vec<ManifoldPreset> {
    let mut v: Vec<_> = sphere_lambdas().iter().map(sphere).collect();
    for m in [rat(1, 2), rat(2, 3), rat(5, 6), rat(1, 4), rat(1, 5)] {
        v.push(blow(&m));
    }
    v
}

fn reports(cfg: &BatteryConfig) -> Reports {
    report_presets()
        .into_iter()
        .map(|p| {
            let opts = QuasimorphismOptions { k_max: cfg.k_max, window: cfg.window, ..Default::default() };
            let r = catch_unwind(AssertUnwindSafe(|| quasimorphism_report(&algebra(&p, cfg.perturbed_table), &opts)));
            let r = match r {
                Ok(Ok(r)) => Ok(r),
                Ok(Err(e)) => Err(e.to_string()),
                Err(_) => Err("internal panic".to_string()),
            };
            (p.name(), r)
        })
        .collect()
}

fn get<'a>(reports: &'a Reports, p: &ManifoldPreset) -> Result<&'a QuasimorphismReport> {
    match reports.get(&p.name()) {
        Some(Ok(r)) => Ok(r),
        Some(Err(e)) => Err(Error::Undecided(format!("{}: {e}", p.name()))),
        None => Err(Error::Undecided(format!("{}: no report", p.name()))),
    }
}

fn sphere_slope(reports: &Reports) -> Result<(bool, String)> {
    let mut ok = true;
    let mut notes = Vec::new();
    for l in sphere_lambdas() {
        let r = get(reports, &sphere(&l))?;
        let want = int(1) / (int(6) * &l);
        let vol_ok = r.required_volume == Some(int(1) + &l);
        ok &= r.slope == want && vol_ok && r.comparisons.iter().all(|c| c.matches);
        let conv = r.matching_convention.map_or("none", |c| c.name());
        notes.push(format!(
            "lambda={l}: slope {} (expected {want}); closed-form constant needs volume {}; standard convention reproducing it: {conv}",
            r.slope,
            r.required_volume.as_ref().map_or("-".into(), |v| v.to_string())
        ));
    }
    Ok((ok, notes.join("; ")))
}

fn blow_up_above(reports: &Reports) -> Result<(bool, String)> {
    let mut ok = true;
    let mut notes = Vec::new();
    for m in [rat(1, 2), rat(2, 3), rat(5, 6)] {
        let r = get(reports, &blow(&m))?;
        let want = -(blow_up_delta(&m) * (int(1) - int(3) * &m));
        ok &= r.slope == want && r.slope.is_negative();
        notes.push(format!("mu={m}: slope {} (expected {want})", r.slope));
    }
    Ok((ok, notes.join("; ")))
}

fn blow_up_below(reports: &Reports) -> Result<(bool, String)> {
    let mut ok = true;
    let mut notes = Vec::new();
    for m in [rat(1, 4), rat(1, 5)] {
        let r = get(reports, &blow(&m))?;
        ok &= r.comparisons.len() == 2;
        let verdicts: Vec<String> = r
            .comparisons
            .iter()
            .map(|c| format!("{} {} -> {}", c.source, c.value, if c.matches { "match" } else { "mismatch" }))
            .collect();
        let comps: Vec<String> = r.component_slopes.iter().map(|s| s.to_string()).collect();
        notes.push(format!(
            "mu={m}: slope {} (components {}), unit slope {}; {}",
            r.slope,
            comps.join(", "),
            r.unit_slope,
            verdicts.join(", ")
        ));
    }
    Ok((ok, notes.join("; ")))
}

fn homomorphism(reports: &Reports) -> Result<(bool, String)> {
    let mut ok = true;
    let mut notes = Vec::new();
    for p in report_presets() {
        let r = get(reports, &p)?;
        let constant = r.sequence.eventually_constant();
        ok &= constant && !r.slope.is_zero();
        notes.push(format!(
            "{}: slope {}, residual {} (period {})",
            p.name(),
            r.slope,
            if constant { "eventually constant" } else { "not constant" },
            r.period
        ));
    }
    Ok((ok, notes.join("; ")))
}

fn random_scalar(rng: &mut ChaCha8Rng, fraction: bool) -> LaurentScalar {
    let poly = |rng: &mut ChaCha8Rng| {
        let mut p = LaurentPoly::zero();
        for _ in 0..rng.gen_range(1..=3) {
            p.add_term(rng.gen_range(-3..=3), int(rng.gen_range(-4..=4)));
        }
        p
    };
    let num = LaurentScalar::from_laurent_poly(&poly(rng));
    if !fraction {
        return num;
    }
    let mut den = poly(rng);
    if den.is_zero() {
        den.add_term(0, int(1));
    }
    let den = LaurentScalar::from_laurent_poly(&den);
    num.div(&den, -40).expect("nonzero denominator")
}

fn random_class(rng: &mut ChaCha8Rng, basis: [BasisClass; 4]) -> QuantumClass {
    let mut c = QuantumClass::zero();
    for _ in 0..rng.gen_range(1..=3) {
        let v = LatticeVector::ints(rng.gen_range(-2..=2), rng.gen_range(-2..=2));
        c.add_term(basis[rng.gen_range(0..4)], v, int(rng.gen_range(-3..=3)));
    }
    c
}

fn leading_monomial(a: &QuantumClass) -> QuantumClass {
    match a.terms.iter().next() {
        Some(((c, v), k)) => QuantumClass::monomial(k.clone(), *c, v.clone()),
        None => QuantumClass::zero(),
    }
}

fn random_element(rng: &mut ChaCha8Rng, split: &Splitting) -> SubalgebraElement {
    let d = split.structure.degree();
    let coeffs = (0..d).map(|_| random_scalar(rng, false)).collect();
    split.structure.element(&SeriesPoly::new(coeffs))
}

fn properties(cfg: &BatteryConfig) -> Result<(bool, String)> {
    let n = cfg.property_cases;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seeds.0);
    let mut failures: BTreeMap<&str, usize> = BTreeMap::new();
    let mut fail = |k: &'static str, bad: bool| {
        *failures.entry(k).or_default() += bad as usize;
    };

    for _ in 0..n {
        let (a, b, c) = (random_scalar(&mut rng, true), random_scalar(&mut rng, true), random_scalar(&mut rng, false));
        fail("field axioms", &(&a + &b) + &c != &a + &(&b + &c) || &a * &b != &b * &a || &a * &(&b + &c) != &(&a * &b) + &(&a * &c));
        if !a.is_zero() {
            fail("field axioms", &a * &a.invert(-40)? != LaurentScalar::one());
        }
        let sum = (&a + &b).sigma();
        fail("non-archimedean inequality", sum > a.sigma().max(b.sigma()));
        fail("sigma multiplicativity", (&a * &b).sigma() != a.sigma() + b.sigma());
    }

    let presets = [sphere(&int(2)), blow(&rat(1, 2)), blow(&rat(1, 4))];
    for i in 0..n {
        let p = &presets[i % presets.len()];
        let alg = algebra(p, cfg.perturbed_table);
        let basis = alg.basis();
        let (a, b, c) = (random_class(&mut rng, basis), random_class(&mut rng, basis), random_class(&mut rng, basis));
        let ab = alg.product(&a, &b)?;
        fail("commutativity", ab != alg.product(&b, &a)?);
        fail("associativity", alg.product(&ab, &c)? != alg.product(&a, &alg.product(&b, &c)?)?);
        fail("unit", alg.product(&alg.unit(), &a)? != a);
        let bound = match (alg.val(&a)?, alg.val(&b)?) {
            (Valuation::Finite(x), Valuation::Finite(y)) => Valuation::Finite(x + y),
            _ => Valuation::NegInfinity,
        };
        fail("val submultiplicativity", alg.val(&ab)? > bound);
        fail("frobenius", alg.pairing_pi(&a, &b)? != alg.pairing_pi(&ab, &alg.unit())?);
        // monomials are homogeneous, so degree additivity is checked on them
        let (ma, mb) = (leading_monomial(&a), leading_monomial(&b));
        let mab = alg.product(&ma, &mb)?;
        if let (Degree::Pure(x), Degree::Pure(y), false) = (alg.degree(&ma), alg.degree(&mb), mab.is_zero()) {
            fail("degree additivity", alg.degree(&mab) != Degree::Pure(x + y - int(4)));
        }
    }

    // worked to -48 and checked to -40
    let splittings = [Splitting::new(&blow(&rat(1, 4)), -48)?, Splitting::new(&sphere(&int(2)), -48)?];
    for (i, sp) in splittings.iter().enumerate() {
        let st = &sp.structure;
        let zero = st.element(&SeriesPoly::zero());
        let sum = sp.idempotents.iter().fold(zero.clone(), |acc, e| st.add(&acc, e));
        fail("idempotent laws", !agree_to(sum.poly(), st.one().poly(), -40));
        for (a, ea) in sp.idempotents.iter().enumerate() {
            for (b, eb) in sp.idempotents.iter().enumerate() {
                let want = if a == b { ea } else { &zero };
                fail("idempotent laws", !agree_to(st.mul(ea, eb).poly(), want.poly(), -40));
            }
        }
        let cases = if i == 0 { n } else { n / 4 };
        for _ in 0..cases {
            let g = random_element(&mut rng, sp);
            for j in 0..sp.components() {
                match sp.invert_in_subalgebra(&g, j) {
                    Ok(eta) => fail("inversion", !agree_to(st.mul(&g, &eta).poly(), sp.idempotents[j].poly(), -40)),
                    Err(Error::ZeroInComponent(_)) => {}
                    Err(e) => return Err(e),
                }
            }
        }
    }

    let duality_presets = [sphere(&int(2)), blow(&rat(1, 2))];
    for i in 0..n {
        let p = &duality_presets[i % 2];
        let alg = algebra(p, cfg.perturbed_table);
        let s = seidel_inverse(p, &-SeidelElement::default_depth(p));
        let basis = alg.basis();
        let k = rng.gen_range(0..=10);
        let (g, d) = loop {
            let (g, d) = (random_class(&mut rng, basis), random_class(&mut rng, basis));
            if !alg.pairing_pi(&d, &g)?.is_zero() {
                break (g, d);
            }
        };
        fail("duality", duality_defect(&alg, &s, &g, &d, k)? < int(0));
    }

    let total: usize = failures.values().sum();
    let detail = failures.iter().map(|(k, v)| format!("{k}: {v} failures")).collect::<Vec<_>>().join("; ");
    Ok((total == 0, format!("{n} cases per suite; {detail}")))
}

/// Supremum of `val(γ) + val(γ⁻¹)` over random invertible `γ` in the
/// sphere-product field at `λ = 2`.
pub fn defect_supremum(seed: u64, samples: usize) -> Result<ExactRational> {
    let sp = Splitting::new(&sphere(&int(2)), -64)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sup: Option<ExactRational> = None;
    let mut taken = 0;
    while taken < samples {
        let g = random_element(&mut rng, &sp);
        if g.is_zero() {
            continue;
        }
        taken += 1;
        let d = sp.inversion_defect(&g)?;
        if sup.as_ref().is_none_or(|s| &d > s) {
            sup = Some(d);
        }
    }
    sup.ok_or(Error::ZeroPolynomial)
}

fn defect(cfg: &BatteryConfig) -> Result<(bool, String)> {
    let a = defect_supremum(cfg.seeds.0, cfg.defect_samples)?;
    let b = defect_supremum(cfg.seeds.1, cfg.defect_samples)?;
    Ok((
        a == b,
        format!("supremum {a} (seed {}) and {b} (seed {}) over {} samples each", cfg.seeds.0, cfg.seeds.1, cfg.defect_samples),
    ))
}

pub const CRITERIA: [(u8, &str, bool); 10] = [
    (1, "table fidelity", true),
    (2, "semisimplicity verdicts", false),
    (3, "relation system", true),
    (4, "even Seidel powers", true),
    (5, "sphere product slope", true),
    (6, "blow-up slope above 1/3", true),
    (7, "blow-up slope below 1/3", true),
    (8, "linearity along the loop", true),
    (9, "property suites", true),
    (10, "inversion defect stability", false),
];

/// Runs every check; none aborts the others.
pub fn run_battery(cfg: &BatteryConfig) -> Vec<CriterionResult> {
    let reports = reports(cfg);
    CRITERIA
        .iter()
        .map(|&(id, name, table_dependent)| {
            let (passed, detail) = guarded(|| match id {
                1 => table_fidelity(cfg),
                2 => verdicts(cfg),
                3 => relations(cfg),
                4 => even_powers(cfg),
                5 => sphere_slope(&reports),
                6 => blow_up_above(&reports),
                7 => blow_up_below(&reports),
                8 => homomorphism(&reports),
                9 => properties(cfg),
                _ => defect(cfg),
            });
            CriterionResult { id, name, passed, table_dependent, detail }
        })
        .collect()
}

pub fn battery_json(cfg: &BatteryConfig, results: &[CriterionResult]) -> Value {
    json!({
        "perturbed_table": cfg.perturbed_table,
        "all_passed": results.iter().all(|r| r.passed),
        "criteria": results.iter().map(|r| json!({
            "id": r.id,
            "name": r.name,
            "passed": r.passed,
            "table_dependent": r.table_dependent,
            "detail": r.detail,
        })).collect::<Vec<_>>(),
    })
}

pub fn battery_text(results: &[CriterionResult]) -> String {
    let mut out = String::new();
    for r in results {
        out.push_str(&format!(
            "criterion {:>2} {:<28} {}  {}\n",
            r.id,
            r.name,
            if r.passed { "PASS" } else { "FAIL" },
            r.detail
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defect_supremum_is_three() {
        assert_eq!(defect_supremum(1, 60).unwrap(), int(3));
    }

    #[test]
    fn perturbed_table_breaks_fidelity_only_where_read() {
        let cfg = BatteryConfig { perturbed_table: true, ..Default::default() };
        let (ok, detail) = guarded(|| table_fidelity(&cfg));
        assert!(!ok, "{detail}");
        assert!(guarded(|| verdicts(&cfg)).0);
    }
}
