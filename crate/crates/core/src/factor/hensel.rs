//! Quadratic Hensel lifting over `ℚ[[s]]`, `s = x^{-1}`.
//!
//! Polynomials in `z` whose coefficients are power series in `s`, all taken
//! modulo `s^N`. A coprime factorization of the residue (`s = 0`) lifts to a
//! factorization modulo `s^N`; each Newton step doubles the precision.

use num_traits::Zero;

use super::spoly::SeriesPoly;
use crate::error::{Error, Result};
use crate::laurent::{LaurentScalar, Sigma};
use crate::poly::Poly;
use crate::rational::ExactRational;

type Ps = Vec<ExactRational>;

/// Polynomial in `z` over `ℚ[s]/(s^n)`.
#[derive(Clone, Debug, PartialEq)]
struct ZPoly {
    c: Vec<Ps>,
    n: usize,
}

impl ZPoly {
    fn zero(n: usize) -> Self {
        Self { c: Vec::new(), n }
    }

    fn from_poly(p: &Poly, n: usize) -> Self {
        let c = p
            .coeffs()
            .iter()
            .map(|a| {
                let mut v = vec![ExactRational::zero(); n];
                v[0] = a.clone();
                v
            })
            .collect();
        Self { c, n }.trim()
    }

    fn trim(mut self) -> Self {
        while self.c.last().is_some_and(|s| s.iter().all(Zero::is_zero)) {
            self.c.pop();
        }
        self
    }

    fn deg(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    fn coeff(&self, i: usize) -> Ps {
        self.c.get(i).cloned().unwrap_or_else(|| vec![ExactRational::zero(); self.n])
    }

    fn add(&self, o: &ZPoly) -> ZPoly {
        let len = self.c.len().max(o.c.len());
        let c = (0..len)
            .map(|i| self.coeff(i).iter().zip(o.coeff(i)).map(|(a, b)| a + b).collect())
            .collect();
        ZPoly { c, n: self.n }.trim()
    }

    fn sub(&self, o: &ZPoly) -> ZPoly {
        let len = self.c.len().max(o.c.len());
        let c = (0..len)
            .map(|i| self.coeff(i).iter().zip(o.coeff(i)).map(|(a, b)| a - b).collect())
            .collect();
        ZPoly { c, n: self.n }.trim()
    }

    fn ps_mul(a: &Ps, b: &Ps, n: usize) -> Ps {
        let mut out = vec![ExactRational::zero(); n];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate().take(n - i) {
                if !y.is_zero() {
                    out[i + j] += x * y;
                }
            }
        }
        out
    }

    fn mul(&self, o: &ZPoly) -> ZPoly {
        if self.c.is_empty() || o.c.is_empty() {
            return ZPoly::zero(self.n);
        }
        let mut c = vec![vec![ExactRational::zero(); self.n]; self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            for (j, b) in o.c.iter().enumerate() {
                let p = Self::ps_mul(a, b, self.n);
                for (t, v) in c[i + j].iter_mut().zip(p) {
                    *t += v;
                }
            }
        }
        ZPoly { c, n: self.n }.trim()
    }

    /// Division by a polynomial whose leading coefficient is `1`.
    fn div_rem_monic(&self, d: &ZPoly) -> (ZPoly, ZPoly) {
        let dd = d.deg();
        if self.c.len() <= dd {
            return (ZPoly::zero(self.n), self.clone());
        }
        let mut rem = self.c.clone();
        let mut q = vec![vec![ExactRational::zero(); self.n]; rem.len() - dd];
        for k in (0..rem.len() - dd).rev() {
            let c = rem[k + dd].clone();
            if c.iter().all(Zero::is_zero) {
                continue;
            }
            for (j, dj) in d.c.iter().enumerate() {
                let p = Self::ps_mul(&c, dj, self.n);
                for (t, v) in rem[k + j].iter_mut().zip(p) {
                    *t -= v;
                }
            }
            q[k] = c;
        }
        rem.truncate(dd);
        (ZPoly { c: q, n: self.n }.trim(), ZPoly { c: rem, n: self.n }.trim())
    }

    /// Series coefficients; a leading `1` stays exact so the result is monic.
    fn to_series_poly(&self) -> SeriesPoly {
        let floor = -(self.n as i64 - 1);
        let top = self.c.len().saturating_sub(1);
        SeriesPoly::new(
            self.c
                .iter()
                .enumerate()
                .map(|(i, ps)| {
                    if i == top && ps[0] == ExactRational::from_integer(1.into()) && ps[1..].iter().all(Zero::is_zero) {
                        return LaurentScalar::one();
                    }
                    let coeffs = ps.iter().enumerate().map(|(j, v)| (-(j as i64), v.clone())).collect();
                    LaurentScalar::series(coeffs, floor)
                })
                .collect(),
        )
    }

    fn from_series_poly(p: &SeriesPoly, n: usize) -> Result<ZPoly> {
        let floor = -(n as i64 - 1);
        let mut c = Vec::new();
        for a in p.coeffs() {
            if let Sigma::Finite(s) = a.sigma() {
                if s > 0 {
                    return Err(Error::NotIntegral);
                }
            }
            if a.floor().is_some_and(|f| f > floor) {
                return Err(Error::PrecisionExhausted(format!(
                    "coefficient known only to floor {}, need {floor}",
                    a.floor().unwrap()
                )));
            }
            let ex = a.expand(floor);
            c.push((0..n).map(|j| ex.coefficient(-(j as i64)).unwrap()).collect());
        }
        Ok(ZPoly { c, n }.trim())
    }

    /// Reduction modulo `s^m`.
    fn modulo(&self, m: usize) -> ZPoly {
        let c = self
            .c
            .iter()
            .map(|ps| {
                let mut v: Ps = ps.iter().take(m).cloned().collect();
                v.resize(m, ExactRational::zero());
                v
            })
            .collect();
        ZPoly { c, n: m }.trim()
    }

    fn residue(&self) -> Poly {
        Poly::from_coeffs(self.c.iter().map(|s| s[0].clone()).collect())
    }
}

/// Lifts `p ≡ f0·g0 (mod s)` to `p ≡ f·g` with every coefficient correct for
/// degrees `>= target_floor`. `p` must be monic with coefficients of `σ <= 0`
/// and `f0`, `g0` monic and coprime over ℚ. Exactly factorizable inputs come
/// back exact.
pub fn hensel_lift(
    p: &SeriesPoly,
    f0: &Poly,
    g0: &Poly,
    target_floor: i64,
) -> Result<(SeriesPoly, SeriesPoly)> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !p.is_monic() {
        return Err(Error::NotIntegral);
    }
    let n = (1 - target_floor.min(0)) as usize;
    let big = ZPoly::from_series_poly(p, n)?;
    let (f0, g0) = (f0.monic(), g0.monic());
    if &f0 * &g0 != big.residue() {
        return Err(Error::Undecided("residue factors do not multiply to the residue".into()));
    }
    let (g, s0, t0) = f0.ext_gcd(&g0);
    if g.degree() != Some(0) {
        return Err(Error::NotCoprime);
    }
    // s0 f0 + t0 g0 = g (a nonzero constant); normalize to 1
    let ginv = g.coeff(0).recip();
    let (s0, t0) = (s0.scale(&ginv), t0.scale(&ginv));

    // von zur Gathen's step with g = f-part (monic), h = g-part (monic)
    let mut gg = ZPoly::from_poly(&f0, n);
    let mut hh = ZPoly::from_poly(&g0, n);
    let mut ss = ZPoly::from_poly(&s0, n);
    let mut tt = ZPoly::from_poly(&t0, n);
    let one = ZPoly::from_poly(&Poly::one(), n);
    let mut prec = 1usize;
    while prec < n {
        // each step doubles the precision, so work modulo s^{2 prec}
        let m = (2 * prec).min(n);
        let (f, g, h) = (big.modulo(m), gg.modulo(m), hh.modulo(m));
        let (s, t, one) = (ss.modulo(m), tt.modulo(m), one.modulo(m));
        let e = f.sub(&g.mul(&h));
        let (q, r) = s.mul(&e).div_rem_monic(&h);
        let g_new = g.add(&t.mul(&e)).add(&q.mul(&g));
        let h_new = h.add(&r);
        let b = s.mul(&g_new).add(&t.mul(&h_new)).sub(&one);
        let (c, d) = s.mul(&b).div_rem_monic(&h_new);
        ss = s.sub(&d);
        tt = t.sub(&t.mul(&b)).sub(&c.mul(&g_new));
        gg = g_new;
        hh = h_new;
        prec *= 2;
    }
    let (gg, hh) = (gg.modulo(n), hh.modulo(n));
    let (f, g) = (gg.to_series_poly(), hh.to_series_poly());
    // a lift that stops well short of the precision may be an exact factorization
    let short = |z: &ZPoly| z.c.iter().all(|ps| ps[n / 2..].iter().all(Zero::is_zero));
    if p.is_exact() && short(&gg) && short(&hh) {
        let exact = |q: &SeriesPoly| q.map(|c| c.exact_part());
        let (fe, ge) = (exact(&f), exact(&g));
        if fe.mul(&ge) == *p {
            return Ok((fe, ge));
        }
    }
    Ok((f, g))
}

/// Lifts a residue factorization into several pairwise coprime pieces by
/// splitting off one factor at a time.
pub fn hensel_lift_many(p: &SeriesPoly, parts: &[Poly], target_floor: i64) -> Result<Vec<SeriesPoly>> {
    match parts {
        [] => Err(Error::ZeroPolynomial),
        [_] => Ok(vec![p.clone()]),
        [first, rest @ ..] => {
            let rest_prod = rest.iter().fold(Poly::one(), |acc, r| &acc * r);
            let (f, g) = hensel_lift(p, first, &rest_prod, target_floor)?;
            let mut out = vec![f];
            out.extend(hensel_lift_many(&g, rest, target_floor)?);
            Ok(out)
        }
    }
}
