//! Text and JSON forms of quantum classes, and the expression parser.
//!
//! Grammar (whitespace ignored):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '⊗') unary)*
//! unary  := '-' unary | atom ('^' integer)?
//! atom   := rational | class | 'q^{' exponent '}' | '(' expr ')'
//! ```
//!
//! A rational `c` stands for `c·M` and `q^{v}` for `M ⊗ q^v`, so `*` is the
//! quantum product throughout.

use serde_json::{json, Value};

use super::{BasisClass, QuantumAlgebra, QuantumClass};
use crate::error::{Error, Result};
use crate::lattice::LatticeVector;
use crate::rational::{parse_rational, ExactRational};

use num_traits::{One, Signed};

impl QuantumAlgebra {
    /// Terms ordered by energy (highest first), then class, then exponent.
    pub fn sorted_terms(&self, a: &QuantumClass) -> Vec<(BasisClass, LatticeVector, ExactRational)> {
        let mut terms: Vec<_> = a
            .terms
            .iter()
            .map(|((c, v), x)| (self.energy(v), *c, v.clone(), x.clone()))
            .collect();
        terms.sort_by(|x, y| y.0.cmp(&x.0).then(x.1.cmp(&y.1)).then(x.2.cmp(&y.2)));
        terms.into_iter().map(|(_, c, v, x)| (c, v, x)).collect()
    }

    /// Human-readable form such as `P - E ⊗ q^{-E}`.
    pub fn render(&self, a: &QuantumClass) -> String {
        let mut s = String::new();
        for (i, (c, v, x)) in self.sorted_terms(a).into_iter().enumerate() {
            let neg = x.is_negative();
            let mag = x.abs();
            match (i, neg) {
                (0, true) => s.push('-'),
                (0, false) => {}
                (_, true) => s.push_str(" - "),
                (_, false) => s.push_str(" + "),
            }
            if !mag.is_one() {
                s.push_str(&format!("{mag}*"));
            }
            s.push_str(c.name());
            if !v.is_zero() {
                s.push_str(" ⊗ ");
                s.push_str(&self.preset.named_text(&v));
            }
        }
        if s.is_empty() {
            s.push('0');
        }
        if let Some(f) = &a.energy_floor {
            s.push_str(&format!(" ; energy_floor={f}"));
        }
        s
    }

    pub fn to_json(&self, a: &QuantumClass) -> Value {
        let terms: Vec<Value> = self
            .sorted_terms(a)
            .into_iter()
            .map(|(c, v, x)| {
                json!({
                    "class": c.name(),
                    "exp": {"e1": v.a1.to_string(), "e2": v.a2.to_string()},
                    "coeff": x.to_string(),
                })
            })
            .collect();
        json!({
            "terms": terms,
            "energy_floor": a.energy_floor.as_ref().map(|f| f.to_string()),
        })
    }

    pub fn from_json(&self, value: &Value) -> Result<QuantumClass> {
        let bad = |msg: &str| Error::Parse { pos: 0, msg: msg.to_string() };
        let field = |v: &Value, k: &str| -> Result<ExactRational> {
            let s = v.get(k).and_then(Value::as_str).ok_or_else(|| bad(&format!("missing string field {k}")))?;
            parse_rational(s)
        };
        let terms = value.get("terms").and_then(Value::as_array).ok_or_else(|| bad("missing terms"))?;
        let floor = match value.get("energy_floor") {
            None | Some(Value::Null) => None,
            Some(Value::String(s)) => Some(parse_rational(s)?),
            Some(_) => return Err(bad("energy_floor must be a string or null")),
        };
        let mut out = QuantumClass { terms: Default::default(), energy_floor: floor };
        for t in terms {
            let name = t.get("class").and_then(Value::as_str).ok_or_else(|| bad("missing class"))?;
            let class = BasisClass::from_name(name).ok_or_else(|| bad(&format!("unknown class {name}")))?;
            let exp = t.get("exp").ok_or_else(|| bad("missing exp"))?;
            let v = LatticeVector::new(field(exp, "e1")?, field(exp, "e2")?);
            out.add_term(class, v, field(t, "coeff")?);
        }
        self.check(&out)?;
        Ok(out)
    }
}

struct Parser<'a> {
    alg: &'a QuantumAlgebra,
    chars: Vec<char>,
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse { pos: self.pos, msg: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<QuantumClass> {
        let mut acc = self.term()?;
        while let Some(c) = self.peek() {
            match c {
                '+' => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = self.alg.add(&acc, &t);
                }
                '-' => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = self.alg.sub(&acc, &t);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<QuantumClass> {
        let mut acc = self.unary()?;
        while let Some(c) = self.peek() {
            if c == '*' || c == '⊗' {
                self.pos += 1;
                let u = self.unary()?;
                acc = self.alg.product(&acc, &u)?;
            } else {
                break;
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<QuantumClass> {
        if self.peek() == Some('-') {
            self.pos += 1;
            let u = self.unary()?;
            return Ok(u.scale(&-ExactRational::one()));
        }
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            if start == self.pos {
                return Err(self.err("expected a non-negative integer exponent"));
            }
            let n: u64 = self.chars[start..self.pos].iter().collect::<String>().parse().map_err(|_| self.err("exponent too large"))?;
            return self.alg.power(&base, n);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<QuantumClass> {
        let Some(c) = self.peek() else {
            return Err(self.err("unexpected end of input"));
        };
        if c == '(' {
            self.pos += 1;
            let e = self.expr()?;
            if self.peek() != Some(')') {
                return Err(self.err("expected ')'"));
            }
            self.pos += 1;
            return Ok(e);
        }
        if c.is_ascii_digit() {
            let start = self.pos;
            while self.pos < self.chars.len()
                && (self.chars[self.pos].is_ascii_digit() || self.chars[self.pos] == '/' || self.chars[self.pos] == '.')
            {
                self.pos += 1;
            }
            let text: String = self.chars[start..self.pos].iter().collect();
            let q = parse_rational(&text).map_err(|_| Error::Parse { pos: start, msg: format!("bad rational {text:?}") })?;
            return Ok(QuantumClass::monomial(q, BasisClass::M, LatticeVector::zero()));
        }
        if c == 'q' {
            let start = self.pos;
            self.pos += 1;
            if self.peek() != Some('^') {
                return Err(self.err("expected '^' after q"));
            }
            self.pos += 1;
            if self.peek() != Some('{') {
                return Err(self.err("expected '{' after q^"));
            }
            self.pos += 1;
            let inner_start = self.pos;
            while self.pos < self.chars.len() && self.chars[self.pos] != '}' {
                self.pos += 1;
            }
            if self.pos >= self.chars.len() {
                return Err(Error::Parse { pos: start, msg: "unterminated q^{".into() });
            }
            let inner: String = self.chars[inner_start..self.pos].iter().collect();
            self.pos += 1;
            let v = self.alg.preset.parse_exponent(&inner).map_err(|e| match e {
                Error::Parse { pos, msg } => Error::Parse { pos: inner_start + pos, msg },
                other => other,
            })?;
            return Ok(QuantumClass::monomial(ExactRational::one(), BasisClass::M, v));
        }
        if c.is_ascii_uppercase() {
            let start = self.pos;
            self.pos += 1;
            let class = BasisClass::from_name(&c.to_string())
                .ok_or_else(|| Error::Parse { pos: start, msg: format!("unknown class {c}") })?;
            let cls = QuantumClass::basis(class);
            self.alg.check(&cls)?;
            return Ok(cls);
        }
        Err(self.err(&format!("unexpected character {c:?}")))
    }
}

/// Parses and evaluates an expression such as `E*F - P` or
/// `(P ⊗ q^{E/2})^2` over the algebra.
pub fn parse_expression(alg: &QuantumAlgebra, text: &str) -> Result<QuantumClass> {
    let mut p = Parser { alg, chars: text.chars().collect(), pos: 0 };
    let e = p.expr()?;
    if p.peek().is_some() {
        return Err(p.err("trailing input"));
    }
    Ok(e)
}
