//! Newton polygons and small rational-coefficient factorizations.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::spoly::SeriesPoly;
use crate::error::{Error, Result};
use crate::laurent::{LaurentScalar, Sigma};
use crate::poly::Poly;
use crate::rational::{int, ExactRational};

/// One edge of the lower hull of `(i, -σ(c_i))`. Its slope is the common
/// `σ` of the roots it accounts for, and `length` is their number.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Segment {
    pub start: usize,
    pub length: usize,
    pub slope: ExactRational,
}

impl fmt::Display for Segment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}..{}] slope {}", self.start, self.start + self.length, self.slope)
    }
}

/// Lower convex hull of the Newton points. Coefficients whose `σ` is not
/// determined by the available precision make the polygon undecidable.
pub fn newton_polygon(p: &SeriesPoly) -> Result<Vec<Segment>> {
    let mut pts: Vec<(i64, i64)> = Vec::new();
    for (i, c) in p.coeffs().iter().enumerate() {
        match c.sigma() {
            Sigma::Finite(s) => pts.push((i as i64, -s)),
            Sigma::NegInfinity if c.is_exact() => {}
            Sigma::NegInfinity => {
                return Err(Error::PrecisionExhausted(format!("coefficient of β^{i} is below the series floor")));
            }
        }
    }
    if pts.is_empty() {
        return Err(Error::ZeroPolynomial);
    }
    let mut hull: Vec<(i64, i64)> = Vec::new();
    for pt in pts {
        while hull.len() >= 2 {
            let (a, b) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            // drop b unless it lies strictly below the chord a..pt
            let cross = (b.0 - a.0) * (pt.1 - a.1) - (b.1 - a.1) * (pt.0 - a.0);
            if cross <= 0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(pt);
    }
    Ok(hull
        .windows(2)
        .map(|w| Segment {
            start: w[0].0 as usize,
            length: (w[1].0 - w[0].0) as usize,
            slope: ExactRational::new(BigInt::from(w[1].1 - w[0].1), BigInt::from(w[1].0 - w[0].0)),
        })
        .collect())
}

/// `x^{-r n} p(x^r z)`: the roots of slope `r` move to slope `0`.
pub fn rescale(p: &SeriesPoly, r: i64) -> SeriesPoly {
    let n = p.degree().unwrap_or(0) as i64;
    SeriesPoly::new(
        p.coeffs()
            .iter()
            .enumerate()
            .map(|(i, c)| c * &LaurentScalar::monomial(int(1), r * (i as i64 - n)))
            .collect(),
    )
}

/// Inverse of [`rescale`] for a monic factor: `x^{r d} F(β / x^r)`.
pub fn unscale(f: &SeriesPoly, r: i64) -> SeriesPoly {
    let d = f.degree().unwrap_or(0) as i64;
    SeriesPoly::new(
        f.coeffs()
            .iter()
            .enumerate()
            .map(|(i, c)| c * &LaurentScalar::monomial(int(1), r * (d - i as i64)))
            .collect(),
    )
}

/// Degree-zero coefficients of a polynomial whose coefficients have `σ <= 0`.
pub fn residue(p: &SeriesPoly) -> Result<Poly> {
    let mut out = Vec::new();
    for c in p.coeffs() {
        if let Sigma::Finite(s) = c.sigma() {
            if s > 0 {
                return Err(Error::NotIntegral);
            }
        }
        out.push(c.coefficient(0).ok_or_else(|| Error::PrecisionExhausted("residue below the series floor".into()))?);
    }
    Ok(Poly::from_coeffs(out))
}

fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.abs().to_u64()?;
    if n > 1_000_000_000_000 {
        return None;
    }
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(BigInt::from(d));
            if d * d != n {
                out.push(BigInt::from(n / d));
            }
        }
        d += 1;
    }
    Some(out)
}

/// Rational roots by the rational root test, each listed once. `None` when
/// the coefficients are too large to enumerate divisors.
pub fn rational_roots(p: &Poly) -> Option<Vec<ExactRational>> {
    let deg = p.degree()?;
    let lcm = p.coeffs().iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = p.coeffs().iter().map(|c| (c * ExactRational::from_integer(lcm.clone())).to_integer()).collect();
    let mut roots = Vec::new();
    let low = ints.iter().position(|c| !c.is_zero())?;
    if low > 0 {
        roots.push(ExactRational::zero());
    }
    if low == deg {
        return Some(roots);
    }
    for num in divisors(&ints[low])? {
        for den in divisors(&ints[deg])? {
            for s in [1, -1] {
                let r = ExactRational::new(&num * s, den.clone());
                if !roots.contains(&r) && p.eval(&r).is_zero() {
                    roots.push(r);
                }
            }
        }
    }
    roots.sort();
    Some(roots)
}

/// Splits a squarefree polynomial over ℚ into monic linear factors for its
/// rational roots plus, when nonconstant, one cofactor. The flag reports
/// whether the cofactor is known to be irreducible (degree at most three).
pub fn split_over_rationals(p: &Poly) -> Option<(Vec<Poly>, Option<(Poly, bool)>)> {
    let roots = rational_roots(p)?;
    let mut rest = p.monic();
    let mut linear = Vec::new();
    for r in roots {
        let l = Poly::from_coeffs(vec![-r, int(1)]);
        rest = rest.div_rem(&l).0;
        linear.push(l);
    }
    let cofactor = match rest.degree() {
        Some(0) | None => None,
        Some(d) => Some((rest, d <= 3)),
    };
    Some((linear, cofactor))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::LaurentPoly;
    use crate::rational::rat;

    fn lp(v: &[(i64, i64)]) -> LaurentScalar {
        let mut p = LaurentPoly::zero();
        for &(k, c) in v {
            p.add_term(k, int(c));
        }
        LaurentScalar::from_laurent_poly(&p)
    }

    fn sp(v: &[&[(i64, i64)]]) -> SeriesPoly {
        SeriesPoly::new(v.iter().map(|t| lp(t)).collect())
    }

    #[test]
    fn sphere_product_polygon() {
        let p = sp(&[&[(-1, -1)], &[], &[(0, 1)]]);
        let segs = newton_polygon(&p).unwrap();
        assert_eq!(segs, vec![Segment { start: 0, length: 2, slope: rat(-1, 2) }]);
    }

    #[test]
    fn blow_up_polygons() {
        let plus = sp(&[&[(1, -1)], &[], &[], &[(0, 1)], &[(0, 1)]]);
        assert_eq!(newton_polygon(&plus).unwrap(), vec![Segment { start: 0, length: 4, slope: rat(1, 4) }]);
        let minus = sp(&[&[(-1, -1)], &[], &[], &[(0, 1)], &[(0, 1)]]);
        assert_eq!(
            newton_polygon(&minus).unwrap(),
            vec![
                Segment { start: 0, length: 3, slope: rat(-1, 3) },
                Segment { start: 3, length: 1, slope: int(0) }
            ]
        );
    }

    #[test]
    fn rescale_roundtrip() {
        let p = sp(&[&[(3, 2)], &[(1, 1)], &[(0, 1)]]);
        let q = rescale(&p, 2);
        assert_eq!(unscale(&q, 2), p);
        assert_eq!(q.coeff(0), lp(&[(-1, 2)]));
    }

    #[test]
    fn rational_root_splitting() {
        // (z - 1/2)(z + 3)(z^2 + 1)
        let p = &(&Poly::from_coeffs(vec![rat(-1, 2), int(1)]) * &Poly::from_coeffs(vec![int(3), int(1)]))
            * &Poly::from_coeffs(vec![int(1), int(0), int(1)]);
        assert_eq!(rational_roots(&p).unwrap(), vec![int(-3), rat(1, 2)]);
        let (lin, rest) = split_over_rationals(&p).unwrap();
        assert_eq!(lin.len(), 2);
        assert_eq!(rest, Some((Poly::from_coeffs(vec![int(1), int(0), int(1)]), true)));
        let quartic = Poly::from_coeffs(vec![int(4), int(0), int(0), int(0), int(1)]);
        assert!(!split_over_rationals(&quartic).unwrap().1.unwrap().1);
    }
}
