//! Seidel elements of the circle actions on both presets, their powers,
//! spectral numbers, and the homogenized slope of `k ↦ c(e, φ^k)`.

use num_traits::{Signed, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::factor::Splitting;
use crate::lattice::{LatticeVector, ManifoldPreset};
use crate::quantum::{BasisClass, QuantumAlgebra, QuantumClass, Valuation};
use crate::rational::{int, rat, ExactRational};

/// Exponent data that defines a Seidel element.
#[derive(Clone, Debug, PartialEq)]
pub enum Provenance {
    /// `Ψ⁻¹ = (A - B) ⊗ q^{αA + βB} Σ_j q^{j(A-B)}`.
    SphereProduct { alpha: ExactRational, beta: ExactRational },
    /// `Ψ⁻¹ = P ⊗ q^{v}`, `v = E/2 + 3F/4 - δ(F - 2E)`.
    BlowUp { delta: ExactRational, exponent: LatticeVector },
}

/// A representative of `Ψ([φ])⁻¹`, truncated below `base.energy_floor` when
/// it is an infinite series.
#[derive(Clone, Debug, PartialEq)]
pub struct SeidelElement {
    pub base: QuantumClass,
    pub preset: ManifoldPreset,
    pub provenance: Provenance,
}

pub fn blow_up_delta(mu: &ExactRational) -> ExactRational {
    let one = int(1);
    (&one - mu) * (&one - mu) / (int(12) * (&one + mu) * (&one - int(3) * mu))
}

/// `α, β` with `2c₁(αA + βB) = 1` and `ω(αA + βB) = 1/2 + 1/(6λ)`.
pub fn sphere_product_exponents(lambda: &ExactRational) -> (ExactRational, ExactRational) {
    let beta = (rat(1, 4) + int(1) / (int(6) * lambda)) / (lambda - int(1));
    (rat(1, 4) - &beta, beta)
}

fn energy(preset: &ManifoldPreset, v: &LatticeVector) -> ExactRational {
    preset.omega_of(v)
}

/// `Ψ([φ])⁻¹` for the preset. The sphere-product series keeps every term of
/// energy at least `energy_floor`.
pub fn seidel_inverse(preset: &ManifoldPreset, energy_floor: &ExactRational) -> SeidelElement {
    match preset.lambda() {
        Some(lambda) => {
            let (alpha, beta) = sphere_product_exponents(lambda);
            let a = preset.named_class("A").unwrap();
            let b = preset.named_class("B").unwrap();
            let v = &a.scale(&alpha) + &b.scale(&beta);
            let step = &a - &b;
            let mut terms = Vec::new();
            let mut w = v;
            while &energy(preset, &w) >= energy_floor {
                terms.push((int(1), BasisClass::A, w.clone()));
                terms.push((int(-1), BasisClass::B, w.clone()));
                w = &w + &step;
            }
            let base = QuantumClass::from_terms(terms, Some(energy_floor.clone()));
            SeidelElement { base, preset: preset.clone(), provenance: Provenance::SphereProduct { alpha, beta } }
        }
        None => {
            let mu = preset.mu().unwrap();
            let delta = blow_up_delta(mu);
            let e = preset.named_class("E").unwrap();
            let f = preset.named_class("F").unwrap();
            let v = &(&e.scale(&rat(1, 2)) + &f.scale(&rat(3, 4))) - &(&f - &e.scale(&int(2))).scale(&delta);
            let base = QuantumClass::monomial(int(1), BasisClass::P, v.clone());
            SeidelElement { base, preset: preset.clone(), provenance: Provenance::BlowUp { delta, exponent: v } }
        }
    }
}

impl SeidelElement {
    /// Energy of the leading term.
    pub fn leading_energy(&self) -> ExactRational {
        match &self.provenance {
            Provenance::SphereProduct { alpha, beta } => {
                let a = self.preset.named_class("A").unwrap();
                let b = self.preset.named_class("B").unwrap();
                energy(&self.preset, &(&a.scale(alpha) + &b.scale(beta)))
            }
            Provenance::BlowUp { exponent, .. } => energy(&self.preset, exponent),
        }
    }

    /// The same element with its series kept down to `depth` below the leading energy.
    pub fn with_depth(&self, depth: &ExactRational) -> SeidelElement {
        seidel_inverse(&self.preset, &(self.leading_energy() - depth))
    }

    /// Default truncation depth: `40·min(ω(e1), ω(e2))`.
    pub fn default_depth(preset: &ManifoldPreset) -> ExactRational {
        int(40) * preset.omega_e1.clone().min(preset.omega_e2.clone())
    }
}

/// `Ψ^{-k}` for `k > 0`, `Ψ^{|k|}` for `k < 0` and the unit for `k = 0`.
/// Negative powers invert the base down to `inverse_floor`.
pub fn seidel_power(
    alg: &QuantumAlgebra,
    s: &SeidelElement,
    k: i64,
    inverse_floor: &ExactRational,
) -> Result<QuantumClass> {
    let base = if k >= 0 { s.base.clone() } else { alg.invert_unit(&s.base, inverse_floor)? };
    let p = alg.power(&base, k.unsigned_abs())?;
    if p.is_zero() && p.energy_floor.is_some() {
        return Err(Error::FloorTooShallow(format!("Ψ power {k} vanishes above its floor")));
    }
    Ok(p)
}

fn finite(v: Valuation) -> Result<ExactRational> {
    match v {
        Valuation::Finite(x) => Ok(x),
        Valuation::NegInfinity => Err(Error::ValBelowFloor),
    }
}

/// `c(a, φ^k) = val(a * Ψ^{-k})`, deepening the truncation until the top
/// term is certified.
pub fn spectral_number(alg: &QuantumAlgebra, a: &QuantumClass, s: &SeidelElement, k: i64) -> Result<ExactRational> {
    let mut depth = SeidelElement::default_depth(alg.preset());
    for _ in 0..6 {
        let s2 = s.with_depth(&depth);
        let inv_floor = -(&depth) - s2.leading_energy();
        let attempt = seidel_power(alg, &s2, k, &inv_floor).and_then(|p| alg.product(a, &p)).and_then(|c| alg.val(&c));
        match attempt {
            Ok(v) => return finite(v),
            Err(Error::ValBelowFloor | Error::FloorTooShallow(_)) => depth = depth * int(2),
            Err(e) => return Err(e),
        }
    }
    Err(Error::FloorTooShallow(format!("spectral number at k = {k} not certified")))
}

/// Exact values `c(unit, φ^k)`, `k = 1..=k_max`, with the detected slope.
#[derive(Clone, Debug, PartialEq)]
pub struct ValSequence {
    pub entries: Vec<(usize, ExactRational)>,
    pub stabilized_slope: Option<ExactRational>,
    /// Smallest `p` such that `entries[k] - entries[k - p]` is constant over the window.
    pub period: Option<usize>,
    pub window: usize,
}

impl ValSequence {
    /// Finds the smallest period `p <= 8` for which the last `window`
    /// differences `e[k] - e[k-p]` agree; the slope is that difference over `p`.
    pub fn detect(entries: Vec<(usize, ExactRational)>, window: usize) -> Self {
        let vals: Vec<&ExactRational> = entries.iter().map(|(_, v)| v).collect();
        let mut found = None;
        for p in 1..=8usize {
            if vals.len() < window + p || window == 0 {
                break;
            }
            let n = vals.len();
            let diffs: Vec<ExactRational> = (n - window..n).map(|i| vals[i] - vals[i - p]).collect();
            if diffs.iter().all(|d| d == &diffs[0]) {
                found = Some((p, &diffs[0] / int(p as i64)));
                break;
            }
        }
        ValSequence {
            entries,
            stabilized_slope: found.as_ref().map(|(_, s)| s.clone()),
            period: found.map(|(p, _)| p),
            window,
        }
    }

    /// `entries[k] - k·slope` for every entry.
    pub fn residuals(&self) -> Option<Vec<ExactRational>> {
        let s = self.stabilized_slope.as_ref()?;
        Some(self.entries.iter().map(|(k, v)| v - s * int(*k as i64)).collect())
    }

    /// Whether `entries[k] - k·slope` takes one value over the last window.
    pub fn eventually_constant(&self) -> bool {
        let Some(r) = self.residuals() else {
            return false;
        };
        let n = r.len();
        n > self.window && (n - self.window..n).all(|i| r[i] == r[n - 1])
    }

    /// Whether the residuals repeat with the detected period from some point on.
    pub fn eventually_periodic(&self) -> bool {
        let (Some(r), Some(p)) = (self.residuals(), self.period) else {
            return false;
        };
        let n = r.len();
        n > p + self.window && (n - self.window..n).all(|i| r[i] == r[i - p])
    }
}

/// Computes `c(unit, φ^k)` for `k = 1..=k_max` by successive multiplication.
pub fn val_sequence(
    alg: &QuantumAlgebra,
    s: &SeidelElement,
    unit: &QuantumClass,
    k_max: usize,
    window: usize,
) -> Result<ValSequence> {
    let mut depth = SeidelElement::default_depth(alg.preset());
    'deepen: for _ in 0..6 {
        let s2 = s.with_depth(&depth);
        let mut p = alg.unit();
        let mut entries = Vec::with_capacity(k_max);
        for k in 1..=k_max {
            p = alg.product(&p, &s2.base)?;
            match alg.product(unit, &p).and_then(|c| alg.val(&c)) {
                Ok(v) => entries.push((k, finite(v)?)),
                Err(Error::ValBelowFloor) => {
                    depth = depth * int(2);
                    continue 'deepen;
                }
                Err(e) => return Err(e),
            }
        }
        return Ok(ValSequence::detect(entries, window));
    }
    Err(Error::FloorTooShallow("valuation sequence not certified".into()))
}

/// A closed form compared against the computed slopes.
#[derive(Clone, Debug, PartialEq)]
pub struct FormulaMatch {
    pub source: &'static str,
    pub value: ExactRational,
    /// Agreement with the slope of `c(e, φ^k)` for the chosen field unit `e`.
    pub matches: bool,
    /// Agreement with the slope of `val(Ψ^{-k})`.
    pub matches_unit_slope: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VolumeConvention {
    /// `∫ωⁿ`.
    OmegaN,
    /// `∫ωⁿ/n!`.
    OmegaNFactorial,
}

impl VolumeConvention {
    pub fn name(self) -> &'static str {
        match self {
            Self::OmegaN => "omega_n",
            Self::OmegaNFactorial => "omega_n_factorial",
        }
    }

    pub fn volume(self, preset: &ManifoldPreset) -> ExactRational {
        let top = match (preset.lambda(), preset.mu()) {
            (Some(l), _) => int(2) * l,
            (_, Some(m)) => int(1) - m * m,
            _ => unreachable!(),
        };
        match self {
            Self::OmegaN => top,
            Self::OmegaNFactorial => top / int(2),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct QuasimorphismReport {
    pub preset: ManifoldPreset,
    /// `c(e₁, φ^k)` for `k = 1..=k_max`.
    pub sequence: ValSequence,
    pub k_max: usize,
    /// Slope of `c(e₁, φ^k)`.
    pub slope: ExactRational,
    pub period: usize,
    /// Slope of `val(Ψ^{-k})`, i.e. with the unit `M`.
    pub unit_slope: ExactRational,
    /// Slopes of `c(e_j, φ^k)` for every field component.
    pub component_slopes: Vec<ExactRational>,
    pub comparisons: Vec<FormulaMatch>,
    pub r_tilde: Vec<(VolumeConvention, ExactRational)>,
    /// Closed-form value of `r̃` with the volume that reproduces it.
    pub closed_form_r_tilde: Option<ExactRational>,
    pub required_volume: Option<ExactRational>,
    /// Convention whose volume reproduces the closed-form value, if any.
    pub matching_convention: Option<VolumeConvention>,
    /// Sign of `r̃`; independent of the convention since volumes are positive.
    pub sign: i32,
}

fn sign_name(s: i32) -> &'static str {
    match s {
        1 => "positive",
        -1 => "negative",
        _ => "zero",
    }
}

impl QuasimorphismReport {
    pub fn to_json(&self, conventions: &[VolumeConvention]) -> Value {
        let param = match (self.preset.lambda(), self.preset.mu()) {
            (Some(l), _) => json!({"manifold": "s2xs2", "lambda": l.to_string()}),
            (_, Some(m)) => json!({"manifold": "blowup", "mu": m.to_string()}),
            _ => unreachable!(),
        };
        json!({
            "preset": param,
            "k_max": self.k_max,
            "slope": self.slope.to_string(),
            "period": self.period,
            "residuals_eventually_constant": self.sequence.eventually_constant(),
            "unit_slope": self.unit_slope.to_string(),
            "component_slopes": self.component_slopes.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
            "slope_formula_matches": self.comparisons.iter().map(|c| json!({
                "source": c.source,
                "value": c.value.to_string(),
                "match": c.matches,
                "match_unit_slope": c.matches_unit_slope,
            })).collect::<Vec<_>>(),
            "r_tilde_by_convention": self.r_tilde.iter().filter(|(c, _)| conventions.contains(c)).map(|(c, r)| json!({
                "convention": c.name(),
                "volume": c.volume(&self.preset).to_string(),
                "r_tilde": r.to_string(),
            })).collect::<Vec<_>>(),
            "closed_form_r_tilde": self.closed_form_r_tilde.as_ref().map(|r| r.to_string()),
            "required_volume": self.required_volume.as_ref().map(|r| r.to_string()),
            "matching_convention": self.matching_convention.map(|c| c.name()),
            "sign": sign_name(self.sign),
        })
    }

    pub fn to_text(&self, conventions: &[VolumeConvention]) -> String {
        let mut out = format!("preset: {}\nslope: {} (period {})\n", self.preset.name(), self.slope, self.period);
        out.push_str(&format!("unit slope: {}\n", self.unit_slope));
        if self.component_slopes.len() > 1 {
            let s: Vec<String> = self.component_slopes.iter().map(|s| s.to_string()).collect();
            out.push_str(&format!("component slopes: {}\n", s.join(", ")));
        }
        for c in &self.comparisons {
            out.push_str(&format!(
                "formula {}: {} -> {}\n",
                c.source,
                c.value,
                if c.matches { "match" } else { "mismatch" }
            ));
        }
        for (c, r) in self.r_tilde.iter().filter(|(c, _)| conventions.contains(c)) {
            out.push_str(&format!("r_tilde[{}] = {}\n", c.name(), r));
        }
        if let (Some(p), Some(v)) = (&self.closed_form_r_tilde, &self.required_volume) {
            let m = self.matching_convention.map_or("none", |c| c.name());
            out.push_str(&format!("closed-form r_tilde {p} needs volume {v}; matching convention: {m}\n"));
        }
        out.push_str(&format!("sign: {}\n", sign_name(self.sign)));
        out
    }
}

fn slope_of(seq: &ValSequence) -> Result<(ExactRational, usize)> {
    match (&seq.stabilized_slope, seq.period) {
        (Some(s), Some(p)) => Ok((s.clone(), p)),
        _ => Err(Error::SlopeNotStabilized(seq.entries.len())),
    }
}

/// Slope of the spectral numbers of the field units along the Seidel loop,
/// with every cross-check of the closed forms.
/// Tunables of [`quasimorphism_report`].
#[derive(Clone, Debug, PartialEq)]
pub struct QuasimorphismOptions {
    pub k_max: usize,
    pub window: usize,
    /// Energy floor of the Seidel element's series; deepened automatically
    /// when a spectral number is not certified.
    pub energy_floor: Option<ExactRational>,
    /// Precision floor of the field splitting.
    pub series_floor: i64,
}

impl Default for QuasimorphismOptions {
    fn default() -> Self {
        Self { k_max: 40, window: 10, energy_floor: None, series_floor: crate::factor::DEFAULT_TARGET_FLOOR }
    }
}

pub fn quasimorphism_restriction(preset: &ManifoldPreset, k_max: usize, window: usize) -> Result<QuasimorphismReport> {
    let alg = QuantumAlgebra::new(preset.clone())?;
    quasimorphism_report(&alg, &QuasimorphismOptions { k_max, window, ..Default::default() })
}

/// Slope of the spectral numbers of the field units along the Seidel loop,
/// with every cross-check of the closed forms.
pub fn quasimorphism_report(alg: &QuantumAlgebra, opts: &QuasimorphismOptions) -> Result<QuasimorphismReport> {
    let (k_max, window) = (opts.k_max, opts.window);
    if k_max < window + 2 {
        return Err(Error::SlopeNotStabilized(k_max));
    }
    let preset = alg.preset();
    let floor = opts.energy_floor.clone().unwrap_or_else(|| int(0) - SeidelElement::default_depth(preset));
    let s = seidel_inverse(preset, &floor);
    let unit_seq = val_sequence(alg, &s, &alg.unit(), k_max, window)?;
    let (unit_slope, _) = slope_of(&unit_seq)?;

    let splitting = Splitting::new(preset, opts.series_floor)?;
    let (component_slopes, sequence) = if splitting.components() == 1 {
        (vec![unit_slope.clone()], unit_seq)
    } else {
        let floor = int(opts.series_floor) * &preset.omega_e1;
        let mut slopes = Vec::new();
        let mut first = None;
        for e in splitting.idempotent_classes(&floor) {
            let seq = val_sequence(alg, &s, &e, k_max, window)?;
            slopes.push(slope_of(&seq)?.0);
            first.get_or_insert(seq);
        }
        (slopes, first.unwrap())
    };
    let period = sequence.period.unwrap();
    let slope = component_slopes[0].clone();

    let mut comparisons = Vec::new();
    let cmp = |source, value: ExactRational| FormulaMatch {
        source,
        matches: value == slope,
        matches_unit_slope: value == unit_slope,
        value,
    };
    let mut closed_form = None;
    match (preset.lambda(), preset.mu()) {
        (Some(l), _) => {
            comparisons.push(cmp("sphere_product_rate", int(1) / (int(6) * l)));
            closed_form = Some(-(int(1) + l) / (int(6) * l));
        }
        (_, Some(m)) => {
            let delta = blow_up_delta(m);
            let w = int(1) - int(3) * m; // ω(F - 2E)
            if preset.kappa() == Some(1) {
                comparisons.push(cmp("blow_up_stated_limit", -(&delta * &w)));
                comparisons.push(cmp("blow_up_proof_rate", -(&delta * &w)));
            } else {
                comparisons.push(cmp("blow_up_stated_limit", (int(12) - &delta) / int(12) * &w));
                comparisons.push(cmp("blow_up_proof_rate", &w / int(12)));
            }
        }
        _ => unreachable!(),
    }
    let conventions = [VolumeConvention::OmegaN, VolumeConvention::OmegaNFactorial];
    let r_tilde: Vec<_> = conventions.iter().map(|&c| (c, -(c.volume(preset) * &slope))).collect();
    let required_volume = match &closed_form {
        Some(p) if !slope.is_zero() => Some(-(p / &slope)),
        _ => None,
    };
    let matching_convention = required_volume
        .as_ref()
        .and_then(|v| conventions.iter().copied().find(|c| &c.volume(preset) == v));
    let sign = if slope.is_zero() {
        0
    } else if slope.is_positive() {
        -1
    } else {
        1
    };
    Ok(QuasimorphismReport {
        preset: preset.clone(),
        sequence,
        k_max,
        slope,
        period,
        unit_slope,
        component_slopes,
        comparisons,
        r_tilde,
        closed_form_r_tilde: closed_form,
        required_volume,
        matching_convention,
        sign,
    })
}

/// `c(γ, φ^k) + c(δ, φ^{-k})`, which duality forces to be non-negative
/// whenever `Π(δ, γ) ≠ 0`.
pub fn duality_defect(
    alg: &QuantumAlgebra,
    s: &SeidelElement,
    gamma: &QuantumClass,
    delta: &QuantumClass,
    k: i64,
) -> Result<ExactRational> {
    if alg.pairing_pi(delta, gamma)?.is_zero() {
        return Err(Error::PairingVanishes);
    }
    Ok(spectral_number(alg, gamma, s, k)? + spectral_number(alg, delta, s, -k)?)
}

#[cfg(test)]
mod tests;
