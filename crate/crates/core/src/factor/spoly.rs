//! Polynomials in one generator with coefficients in the Laurent series field.

use std::fmt;

use crate::error::{Error, Result};
use crate::laurent::{LaurentScalar, Sigma};
use crate::poly::Poly;
use crate::rational::{int, ExactRational};

/// Dense ascending coefficients; trailing zeros are trimmed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesPoly {
    coeffs: Vec<LaurentScalar>,
}

impl SeriesPoly {
    pub fn new(mut coeffs: Vec<LaurentScalar>) -> Self {
        while coeffs.last().is_some_and(LaurentScalar::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(LaurentScalar::one())
    }

    pub fn constant(c: LaurentScalar) -> Self {
        Self::new(vec![c])
    }

    /// `c * β^k`.
    pub fn monomial(c: LaurentScalar, k: usize) -> Self {
        let mut v = vec![LaurentScalar::zero(); k];
        v.push(c);
        Self::new(v)
    }

    /// The generator `β`.
    pub fn generator() -> Self {
        Self::monomial(LaurentScalar::one(), 1)
    }

    /// Embeds a polynomial with rational coefficients.
    pub fn from_poly(p: &Poly) -> Self {
        Self::new(p.coeffs().iter().map(|c| LaurentScalar::constant(c.clone())).collect())
    }

    pub fn coeffs(&self) -> &[LaurentScalar] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> LaurentScalar {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&LaurentScalar> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.lead().is_some_and(LaurentScalar::is_one)
    }

    /// Smallest precision floor among series coefficients.
    pub fn precision_floor(&self) -> Option<i64> {
        self.coeffs.iter().filter_map(LaurentScalar::floor).max()
    }

    pub fn is_exact(&self) -> bool {
        self.coeffs.iter().all(LaurentScalar::is_exact)
    }

    pub fn add(&self, o: &SeriesPoly) -> SeriesPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new((0..n).map(|i| &self.coeff(i) + &o.coeff(i)).collect())
    }

    pub fn sub(&self, o: &SeriesPoly) -> SeriesPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new((0..n).map(|i| &self.coeff(i) - &o.coeff(i)).collect())
    }

    pub fn neg(&self) -> SeriesPoly {
        Self::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn mul(&self, o: &SeriesPoly) -> SeriesPoly {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut out = vec![LaurentScalar::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() && a.is_exact() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if b.is_zero() && b.is_exact() {
                    continue;
                }
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, c: &LaurentScalar) -> SeriesPoly {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn derivative(&self) -> SeriesPoly {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * &LaurentScalar::constant(int(i as i64)))
                .collect(),
        )
    }

    /// Applies `f` to every coefficient.
    pub fn map(&self, f: impl Fn(&LaurentScalar) -> LaurentScalar) -> SeriesPoly {
        Self::new(self.coeffs.iter().map(f).collect())
    }

    /// Division by a divisor whose leading coefficient is inverted to
    /// `floor`; exact when everything is exact.
    pub fn div_rem(&self, d: &SeriesPoly, floor: i64) -> Result<(SeriesPoly, SeriesPoly)> {
        let dd = d.degree().ok_or(Error::DivisionByZero)?;
        let lead = d.lead().unwrap();
        let inv = if lead.is_one() { LaurentScalar::one() } else { lead.invert(floor)? };
        let mut rem = self.coeffs.clone();
        let Some(n) = self.degree() else {
            return Ok((Self::zero(), Self::zero()));
        };
        if n < dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quot = vec![LaurentScalar::zero(); n - dd + 1];
        for k in (0..=n - dd).rev() {
            let c = &rem[k + dd] * &inv;
            if c.is_zero() && c.is_exact() {
                continue;
            }
            for (j, dj) in d.coeffs.iter().enumerate() {
                rem[k + j] = &rem[k + j] - &(&c * dj);
            }
            // the leading slot is zero by construction
            rem[k + dd] = LaurentScalar::zero();
            quot[k] = c;
        }
        rem.truncate(dd);
        Ok((Self::new(quot), Self::new(rem)))
    }

    /// Remainder modulo a monic polynomial.
    pub fn rem_monic(&self, m: &SeriesPoly) -> SeriesPoly {
        debug_assert!(m.is_monic());
        self.div_rem(m, 0).expect("monic divisor").1
    }

    pub fn monic(&self, floor: i64) -> Result<SeriesPoly> {
        let lead = self.lead().ok_or(Error::ZeroPolynomial)?;
        if lead.is_one() {
            return Ok(self.clone());
        }
        let inv = lead.invert(floor)?;
        let mut m = self.scale(&inv);
        let last = m.coeffs.len() - 1;
        m.coeffs[last] = LaurentScalar::one();
        Ok(m)
    }

    /// Monic gcd by Euclid's algorithm; exact for exact inputs.
    pub fn gcd(&self, o: &SeriesPoly, floor: i64) -> Result<SeriesPoly> {
        let (mut a, mut b) = (self.clone(), o.clone());
        if a.is_zero() && b.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        while !b.is_zero() {
            let r = a.div_rem(&b, floor)?.1;
            a = b;
            b = r;
        }
        a.monic(floor)
    }

    /// Keeps only coefficient information at or above `floor`.
    pub fn truncate(&self, floor: i64) -> SeriesPoly {
        self.map(|c| c.truncate(floor))
    }

    /// Value at a field element by Horner's rule.
    pub fn eval(&self, z: &LaurentScalar) -> LaurentScalar {
        let mut acc = LaurentScalar::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * z) + c;
        }
        acc
    }
}

impl fmt::Display for SeriesPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() && c.is_exact() {
                continue;
            }
            let mono = match k {
                0 => String::new(),
                1 => "β".to_string(),
                _ => format!("β^{k}"),
            };
            let (neg, body) = match c.to_laurent_poly() {
                Some(p) if p.terms().len() == 1 => {
                    let (e, v) = p.terms().iter().next().unwrap();
                    let neg = v < &ExactRational::from_integer(0.into());
                    let mag = if neg { -v.clone() } else { v.clone() };
                    let mut t = crate::poly::LaurentPoly::zero();
                    t.add_term(*e, mag.clone());
                    let text = t.to_string();
                    let body = if mono.is_empty() {
                        text
                    } else if *e == 0 && mag == int(1) {
                        mono.clone()
                    } else {
                        format!("{text}*{mono}")
                    };
                    (neg, body)
                }
                Some(p) => (false, if mono.is_empty() { format!("({p})") } else { format!("({p})*{mono}") }),
                None => (false, if mono.is_empty() { format!("[{c}]") } else { format!("[{c}]*{mono}") }),
            };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            write!(f, "{body}")?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Solves `m y = rhs` by elimination, pivoting on the entry of largest `σ`.
/// `None` when a pivot column is entirely zero.
pub fn solve_linear(
    mut m: Vec<Vec<LaurentScalar>>,
    mut rhs: Vec<LaurentScalar>,
    floor: i64,
) -> Result<Option<Vec<LaurentScalar>>> {
    let n = m.len();
    for col in 0..n {
        let piv = (col..n)
            .filter(|&r| !m[r][col].is_zero())
            .max_by(|&r1, &r2| m[r1][col].sigma().cmp(&m[r2][col].sigma()).then(r2.cmp(&r1)));
        let Some(piv) = piv else {
            return Ok(None);
        };
        m.swap(piv, col);
        rhs.swap(piv, col);
        let inv = m[col][col].invert(floor)?;
        for r in 0..n {
            if r == col || (m[r][col].is_zero() && m[r][col].is_exact()) {
                continue;
            }
            let factor = &m[r][col] * &inv;
            for c in col..n {
                let sub = &factor * &m[col][c];
                m[r][c] = &m[r][c] - &sub;
            }
            let sub = &factor * &rhs[col];
            rhs[r] = &rhs[r] - &sub;
        }
    }
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        out.push(&rhs[i] * &m[i][i].invert(floor)?);
    }
    Ok(Some(out))
}

/// `σ` of the largest coefficient.
pub fn max_sigma(p: &SeriesPoly) -> Sigma {
    p.coeffs().iter().map(LaurentScalar::sigma).max().unwrap_or(Sigma::NegInfinity)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::LaurentPoly;

    pub(crate) fn lp(terms: &[(i64, i64)]) -> LaurentScalar {
        let mut p = LaurentPoly::zero();
        for &(k, c) in terms {
            p.add_term(k, int(c));
        }
        LaurentScalar::from_laurent_poly(&p)
    }

    fn sp(cs: Vec<LaurentScalar>) -> SeriesPoly {
        SeriesPoly::new(cs)
    }

    #[test]
    fn gcd_examples() {
        let x = LaurentScalar::x();
        let f = sp(vec![-&x, lp(&[]), lp(&[]), int(1).into(), int(1).into()]);
        let fp = f.derivative();
        assert_eq!(f.gcd(&fp, -20).unwrap(), SeriesPoly::one());
        assert_eq!(f.gcd(&SeriesPoly::zero(), -20).unwrap(), f);
        let lin = sp(vec![-&x, int(1).into()]);
        let sq = lin.mul(&lin);
        assert_eq!(sq.gcd(&lin, -20).unwrap(), lin);
    }

    #[test]
    fn display_examples() {
        let p = sp(vec![lp(&[(-1, -1)]), lp(&[]), int(1).into()]);
        assert_eq!(p.to_string(), "β^2 - x^-1");
        let q = sp(vec![lp(&[(1, -1)]), lp(&[]), lp(&[]), int(1).into(), int(1).into()]);
        assert_eq!(q.to_string(), "β^4 + β^3 - x");
    }

    #[test]
    fn division_identity() {
        let a = sp(vec![lp(&[(0, 1), (-1, 2)]), lp(&[(2, 1)]), lp(&[(0, 3)]), lp(&[(-3, 1)])]);
        let d = sp(vec![lp(&[(1, 1)]), lp(&[(0, 2), (-1, 1)])]);
        let (q, r) = a.div_rem(&d, -30).unwrap();
        assert_eq!(q.mul(&d).add(&r), a);
        assert!(r.degree().unwrap_or(0) < 1);
    }

    #[test]
    fn solve_small_system() {
        let m = vec![vec![lp(&[(1, 1)]), lp(&[(0, 1)])], vec![lp(&[(0, 1)]), lp(&[(-1, 2)])]];
        let rhs = vec![lp(&[(0, 1)]), lp(&[])];
        let y = solve_linear(m.clone(), rhs.clone(), -20).unwrap().unwrap();
        for (i, row) in m.iter().enumerate() {
            let mut acc = LaurentScalar::zero();
            for (a, b) in row.iter().zip(&y) {
                acc = &acc + &(a * b);
            }
            assert_eq!(acc, rhs[i]);
        }
    }
}
