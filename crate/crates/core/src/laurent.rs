//! The coefficient field: Laurent series in `x` that are bounded above,
//! `Σ_{j ≤ j0} α_j x^j` with rational `α_j`.
//!
//! Elements carry one of two representations. Closed-form inputs stay exact
//! rational functions `num/den`; once an operation forces an infinite
//! expansion (inverting a series, Hensel lifting) the value becomes a
//! truncated series with an explicit precision floor. Every coefficient a
//! truncated series reports is exact; degrees below the floor are unknown.
//!
//! The degree map `σ` sends a nonzero element to its largest exponent and
//! zero to `-∞`; `exp σ` is a complete non-Archimedean absolute value.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::{write_monomials, LaurentPoly, Poly};
use crate::rational::{common_denominator, ExactRational};

/// How many degrees below the top a series expansion keeps when the caller
/// does not ask for a specific floor.
pub const DEFAULT_SERIES_DEPTH: i64 = 64;

/// Value of the degree map `σ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sigma {
    NegInfinity,
    Finite(i64),
}

impl Sigma {
    pub fn finite(self) -> Option<i64> {
        match self {
            Sigma::Finite(v) => Some(v),
            Sigma::NegInfinity => None,
        }
    }
}

impl Add for Sigma {
    type Output = Sigma;
    fn add(self, rhs: Sigma) -> Sigma {
        match (self, rhs) {
            (Sigma::Finite(a), Sigma::Finite(b)) => Sigma::Finite(a + b),
            _ => Sigma::NegInfinity,
        }
    }
}

impl fmt::Display for Sigma {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sigma::NegInfinity => write!(f, "-inf"),
            Sigma::Finite(v) => write!(f, "{v}"),
        }
    }
}

/// `num/den` with `den` monic and `gcd(num, den) = 1`; zero is `0/1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: Poly,
    den: Poly,
}

impl RationalFunction {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self { num, den: Poly::one() });
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.degree() == Some(0) {
            (num, den)
        } else {
            (num.div_rem(&g).0, den.div_rem(&g).0)
        };
        let lead = den.lead().unwrap().clone();
        if !lead.is_one() {
            let inv = lead.recip();
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        Ok(Self { num, den })
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn sigma(&self) -> Sigma {
        match self.num.degree() {
            None => Sigma::NegInfinity,
            Some(n) => Sigma::Finite(n as i64 - self.den.degree().unwrap() as i64),
        }
    }

    /// Descending expansion, coefficients for every degree `>= floor`.
    pub fn expand(&self, floor: i64) -> BTreeMap<i64, ExactRational> {
        let mut out = BTreeMap::new();
        let Sigma::Finite(top) = self.sigma() else {
            return out;
        };
        let d = self.den.degree().unwrap() as i64;
        let b = self.den.coeffs();
        // den * S = num, den monic: s_j = a_{d+j} - Σ_{i<d} b_i s_{j+d-i}
        let mut dense: Vec<ExactRational> = Vec::new(); // dense[k] = s_{top-k}
        let mut j = top;
        while j >= floor {
            let idx = d + j;
            let mut s = if idx >= 0 { self.num.coeff(idx as usize) } else { ExactRational::zero() };
            for (i, bi) in b.iter().enumerate().take(d as usize) {
                if bi.is_zero() {
                    continue;
                }
                let deg = j + d - i as i64;
                if deg <= top {
                    s -= bi * &dense[(top - deg) as usize];
                }
            }
            if !s.is_zero() {
                out.insert(j, s.clone());
            }
            dense.push(s);
            j -= 1;
        }
        out
    }
}

/// Known coefficients for degrees `>= floor`; nothing is known below it.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TruncatedSeries {
    coeffs: BTreeMap<i64, ExactRational>,
    floor: i64,
}

impl TruncatedSeries {
    pub fn new(coeffs: BTreeMap<i64, ExactRational>, floor: i64) -> Self {
        let coeffs = coeffs
            .into_iter()
            .filter(|(k, c)| *k >= floor && !c.is_zero())
            .collect();
        Self { coeffs, floor }
    }

    pub fn coeffs(&self) -> &BTreeMap<i64, ExactRational> {
        &self.coeffs
    }

    pub fn floor(&self) -> i64 {
        self.floor
    }

    pub fn top(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    /// Upper bound for the true `σ` usable in precision bookkeeping.
    fn sigma_bound(&self) -> i64 {
        self.top().unwrap_or(self.floor - 1)
    }
}

/// An element of the Laurent series field in one of its two representations.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum LaurentScalar {
    Exact(RationalFunction),
    Series(TruncatedSeries),
}

impl Default for LaurentScalar {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<ExactRational> for LaurentScalar {
    fn from(c: ExactRational) -> Self {
        Self::constant(c)
    }
}

impl LaurentScalar {
    pub fn zero() -> Self {
        LaurentScalar::Exact(RationalFunction { num: Poly::zero(), den: Poly::one() })
    }

    pub fn one() -> Self {
        Self::constant(ExactRational::one())
    }

    pub fn constant(c: ExactRational) -> Self {
        LaurentScalar::Exact(RationalFunction { num: Poly::constant(c), den: Poly::one() })
    }

    /// `c * x^k` for any integer `k`.
    pub fn monomial(c: ExactRational, k: i64) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let rf = if k >= 0 {
            RationalFunction { num: Poly::monomial(c, k as usize), den: Poly::one() }
        } else {
            RationalFunction {
                num: Poly::constant(c),
                den: Poly::monomial(ExactRational::one(), (-k) as usize),
            }
        };
        LaurentScalar::Exact(rf)
    }

    pub fn x() -> Self {
        Self::monomial(ExactRational::one(), 1)
    }

    pub fn rational_function(num: Poly, den: Poly) -> Result<Self> {
        RationalFunction::new(num, den).map(LaurentScalar::Exact)
    }

    /// Exact element from a finite Laurent polynomial.
    pub fn from_laurent_poly(p: &LaurentPoly) -> Self {
        let (poly, shift) = p.to_poly_shift();
        if poly.is_zero() {
            return Self::zero();
        }
        // poly(0) != 0, so poly and x^k are coprime already
        let rf = if shift >= 0 {
            RationalFunction { num: poly.shift(shift as usize), den: Poly::one() }
        } else {
            let den = Poly::monomial(ExactRational::one(), (-shift) as usize);
            RationalFunction { num: poly, den }
        };
        LaurentScalar::Exact(rf)
    }

    pub fn series(coeffs: BTreeMap<i64, ExactRational>, floor: i64) -> Self {
        LaurentScalar::Series(TruncatedSeries::new(coeffs, floor))
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, LaurentScalar::Exact(_))
    }

    /// True for exact zero and for a series with no known nonzero coefficient.
    pub fn is_zero(&self) -> bool {
        match self {
            LaurentScalar::Exact(rf) => rf.num.is_zero(),
            LaurentScalar::Series(s) => s.coeffs.is_empty(),
        }
    }

    pub fn is_one(&self) -> bool {
        matches!(self, LaurentScalar::Exact(rf) if rf.num.is_one_poly() && rf.den.is_one_poly())
    }

    /// Precision floor; `None` for exact elements.
    pub fn floor(&self) -> Option<i64> {
        match self {
            LaurentScalar::Exact(_) => None,
            LaurentScalar::Series(s) => Some(s.floor),
        }
    }

    pub fn sigma(&self) -> Sigma {
        match self {
            LaurentScalar::Exact(rf) => rf.sigma(),
            LaurentScalar::Series(s) => s.top().map_or(Sigma::NegInfinity, Sigma::Finite),
        }
    }

    pub fn leading_coefficient(&self) -> Option<ExactRational> {
        match self {
            LaurentScalar::Exact(rf) => {
                let n = rf.num.lead()?;
                Some(n.clone())
            }
            LaurentScalar::Series(s) => s.coeffs.values().next_back().cloned(),
        }
    }

    /// Coefficient of `x^j`, `None` if `j` lies below the precision floor.
    pub fn coefficient(&self, j: i64) -> Option<ExactRational> {
        match self {
            LaurentScalar::Exact(rf) => {
                let map = rf.expand(j);
                Some(map.get(&j).cloned().unwrap_or_else(ExactRational::zero))
            }
            LaurentScalar::Series(s) => {
                if j < s.floor {
                    None
                } else {
                    Some(s.coeffs.get(&j).cloned().unwrap_or_else(ExactRational::zero))
                }
            }
        }
    }

    /// Series form agreeing with `self` on every degree `>= target_floor`.
    /// A series input cannot be deepened past its own floor.
    pub fn expand(&self, target_floor: i64) -> LaurentScalar {
        match self {
            LaurentScalar::Exact(rf) => LaurentScalar::series(rf.expand(target_floor), target_floor),
            LaurentScalar::Series(s) => {
                let floor = s.floor.max(target_floor);
                LaurentScalar::series(s.coeffs.clone(), floor)
            }
        }
    }

    /// Drops information below `floor` (no-op if already coarser).
    pub fn truncate(&self, floor: i64) -> LaurentScalar {
        match self {
            LaurentScalar::Exact(_) => self.expand(floor),
            LaurentScalar::Series(s) if s.floor >= floor => self.clone(),
            LaurentScalar::Series(s) => LaurentScalar::series(s.coeffs.clone(), floor),
        }
    }

    fn series_parts(&self, floor: i64) -> (BTreeMap<i64, ExactRational>, i64) {
        match self.expand(floor) {
            LaurentScalar::Series(s) => (s.coeffs, s.floor),
            LaurentScalar::Exact(_) => unreachable!(),
        }
    }

    /// Multiplicative inverse. Exact inputs give the exact reciprocal; series
    /// inputs give a series with `σ = -σ(a)` correct down to
    /// `max(target_floor, floor(a) - 2σ(a))`.
    pub fn invert(&self, target_floor: i64) -> Result<LaurentScalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        match self {
            LaurentScalar::Exact(rf) => {
                RationalFunction::new(rf.den.clone(), rf.num.clone()).map(LaurentScalar::Exact)
            }
            LaurentScalar::Series(s) => {
                let top = s.top().unwrap();
                let floor = target_floor.max(s.floor - 2 * top);
                // with a = A/d and L = A_top, B_k = b_k L^{k+1} obeys an
                // integer recurrence: B_0 = d, B_k = -Σ_{i=1..k} A_{top-i} B_{k-i} L^{i-1}
                let (ia, d) = integral_parts(&s.coeffs);
                let a: BTreeMap<i64, BigInt> = ia.into_iter().collect();
                let lead = a[&top].clone();
                let n = (-top - floor + 1).max(1) as usize;
                let mut lpow = vec![BigInt::one()];
                for i in 1..=n {
                    lpow.push(&lpow[i - 1] * &lead);
                }
                let mut b: Vec<BigInt> = vec![d];
                for k in 1..n {
                    let mut acc = BigInt::zero();
                    for (deg, x) in a.range(top - k as i64..top) {
                        let i = (top - deg) as usize;
                        acc += x * &b[k - i] * &lpow[i - 1];
                    }
                    b.push(-acc);
                }
                let coeffs = b
                    .into_iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(k, c)| (-top - k as i64, ExactRational::new(c, lpow[k + 1].clone())))
                    .collect();
                Ok(LaurentScalar::series(coeffs, floor))
            }
        }
    }

    pub fn div(&self, other: &LaurentScalar, target_floor: i64) -> Result<LaurentScalar> {
        let inv = other.invert(target_floor)?;
        Ok(self * &inv)
    }

    pub fn pow(&self, k: u32) -> LaurentScalar {
        let mut acc = LaurentScalar::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Non-Archimedean comparison used for pivoting: larger `σ` first.
    pub fn cmp_size(&self, other: &LaurentScalar) -> Ordering {
        self.sigma().cmp(&other.sigma())
    }

    /// The finite Laurent polynomial this element equals, if it is one.
    /// The known terms as an exact Laurent polynomial; exact values pass through.
    pub fn exact_part(&self) -> LaurentScalar {
        match self {
            LaurentScalar::Exact(_) => self.clone(),
            LaurentScalar::Series(s) => {
                let mut p = LaurentPoly::zero();
                for (k, c) in s.coeffs() {
                    p.add_term(*k, c.clone());
                }
                LaurentScalar::from_laurent_poly(&p)
            }
        }
    }

    pub fn to_laurent_poly(&self) -> Option<LaurentPoly> {
        let LaurentScalar::Exact(rf) = self else {
            return None;
        };
        let den = rf.den.degree().unwrap();
        if rf.den.coeffs()[..den].iter().any(|c| !c.is_zero()) {
            return None;
        }
        let mut p = LaurentPoly::zero();
        for (i, c) in rf.num.coeffs().iter().enumerate() {
            p.add_term(i as i64 - den as i64, c.clone());
        }
        Some(p)
    }
}

impl Poly {
    fn is_one_poly(&self) -> bool {
        self.degree() == Some(0) && self.coeffs()[0].is_one()
    }
}

fn add_maps(
    a: &BTreeMap<i64, ExactRational>,
    b: &BTreeMap<i64, ExactRational>,
    negate_b: bool,
) -> BTreeMap<i64, ExactRational> {
    let mut out = a.clone();
    for (k, c) in b {
        let e = out.entry(*k).or_insert_with(ExactRational::zero);
        if negate_b {
            *e -= c;
        } else {
            *e += c;
        }
    }
    out
}

fn combine(a: &LaurentScalar, b: &LaurentScalar, negate_b: bool) -> LaurentScalar {
    match (a, b) {
        (LaurentScalar::Exact(x), LaurentScalar::Exact(y)) => {
            let yn = if negate_b { -&y.num } else { y.num.clone() };
            if x.den == y.den {
                return LaurentScalar::Exact(RationalFunction::new(&x.num + &yn, x.den.clone()).unwrap());
            }
            let num = &(&x.num * &y.den) + &(&yn * &x.den);
            LaurentScalar::Exact(RationalFunction::new(num, &x.den * &y.den).unwrap())
        }
        _ => {
            let floor = a.floor().into_iter().chain(b.floor()).max().unwrap();
            let (ma, _) = a.series_parts(floor);
            let (mb, _) = b.series_parts(floor);
            LaurentScalar::series(add_maps(&ma, &mb, negate_b), floor)
        }
    }
}

/// Integer numerators over one common denominator.
fn integral_parts(m: &BTreeMap<i64, ExactRational>) -> (Vec<(i64, BigInt)>, BigInt) {
    let d = common_denominator(m.values());
    let v = m.iter().map(|(k, c)| (*k, c.numer() * (&d / c.denom()))).collect();
    (v, d)
}

// Coefficients are multiplied as integers and reduced once per output degree;
// reducing every partial product dominated the running time.
fn series_mul(
    a: &BTreeMap<i64, ExactRational>,
    b: &BTreeMap<i64, ExactRational>,
    floor: i64,
) -> BTreeMap<i64, ExactRational> {
    let Some(&b_top) = b.keys().next_back() else {
        return BTreeMap::new();
    };
    let (ia, da) = integral_parts(a);
    let (ib, db) = integral_parts(b);
    let b_low = ib.first().map_or(0, |t| t.0);
    let mut acc: BTreeMap<i64, BigInt> = BTreeMap::new();
    for (i, x) in ia.iter().rev() {
        if i + b_top < floor {
            break;
        }
        let start = (floor - i).max(b_low);
        let from = ib.partition_point(|t| t.0 < start);
        for (j, y) in &ib[from..] {
            *acc.entry(i + j).or_insert_with(BigInt::zero) += x * y;
        }
    }
    let den = da * db;
    acc.into_iter()
        .filter(|(_, n)| !n.is_zero())
        .map(|(k, n)| (k, ExactRational::new(n, den.clone())))
        .collect()
}

impl Add for &LaurentScalar {
    type Output = LaurentScalar;
    fn add(self, rhs: &LaurentScalar) -> LaurentScalar {
        combine(self, rhs, false)
    }
}

impl Sub for &LaurentScalar {
    type Output = LaurentScalar;
    fn sub(self, rhs: &LaurentScalar) -> LaurentScalar {
        combine(self, rhs, true)
    }
}

impl Neg for &LaurentScalar {
    type Output = LaurentScalar;
    fn neg(self) -> LaurentScalar {
        match self {
            LaurentScalar::Exact(rf) => {
                LaurentScalar::Exact(RationalFunction { num: -&rf.num, den: rf.den.clone() })
            }
            LaurentScalar::Series(s) => LaurentScalar::Series(TruncatedSeries {
                coeffs: s.coeffs.iter().map(|(k, c)| (*k, -c)).collect(),
                floor: s.floor,
            }),
        }
    }
}

impl Mul for &LaurentScalar {
    type Output = LaurentScalar;
    fn mul(self, rhs: &LaurentScalar) -> LaurentScalar {
        if let (LaurentScalar::Exact(x), _) | (_, LaurentScalar::Exact(x)) = (self, rhs) {
            if x.num.is_zero() {
                return LaurentScalar::zero();
            }
        }
        match (self, rhs) {
            (LaurentScalar::Exact(x), LaurentScalar::Exact(y)) => {
                if x.den.degree() == Some(0) && y.den.degree() == Some(0) {
                    return LaurentScalar::Exact(RationalFunction { num: &x.num * &y.num, den: Poly::one() });
                }
                let g1 = x.num.gcd(&y.den);
                let g2 = y.num.gcd(&x.den);
                let num = &x.num.div_rem(&g1).0 * &y.num.div_rem(&g2).0;
                let den = &x.den.div_rem(&g2).0 * &y.den.div_rem(&g1).0;
                LaurentScalar::Exact(RationalFunction::new(num, den).unwrap())
            }
            (LaurentScalar::Exact(x), LaurentScalar::Series(s))
            | (LaurentScalar::Series(s), LaurentScalar::Exact(x)) => {
                let sx = x.sigma().finite().unwrap();
                let floor = s.floor + sx;
                let s_bound = s.sigma_bound();
                let ex = x.expand(floor - s_bound);
                LaurentScalar::series(series_mul(&ex, &s.coeffs, floor), floor)
            }
            (LaurentScalar::Series(a), LaurentScalar::Series(b)) => {
                let floor = (a.floor + b.sigma_bound()).max(b.floor + a.sigma_bound());
                LaurentScalar::series(series_mul(&a.coeffs, &b.coeffs, floor), floor)
            }
        }
    }
}

impl fmt::Display for LaurentScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LaurentScalar::Exact(rf) => write!(f, "({})/({})", rf.num, rf.den),
            LaurentScalar::Series(s) => {
                write_monomials(f, "x", s.coeffs.iter().rev().map(|(k, c)| (*k, c)))?;
                write!(f, " ; floor={}", s.floor)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn lp(terms: &[(i64, i64)]) -> LaurentScalar {
        let mut p = LaurentPoly::zero();
        for &(k, c) in terms {
            p.add_term(k, int(c));
        }
        LaurentScalar::from_laurent_poly(&p)
    }

    fn series(terms: &[(i64, i64)], floor: i64) -> LaurentScalar {
        LaurentScalar::series(terms.iter().map(|&(k, c)| (k, int(c))).collect(), floor)
    }

    #[test]
    fn add_cancels_and_identity() {
        let a = lp(&[(1, 1), (0, 1)]);
        let b = lp(&[(1, -1)]);
        assert_eq!(&a + &b, LaurentScalar::one());
        assert_eq!(&LaurentScalar::zero() + &a, a);
    }

    #[test]
    fn add_series_coefficientwise() {
        let a = series(&[(0, 1), (-1, 1), (-2, 1)], -2);
        let b = series(&[(-2, 1)], -2);
        assert_eq!(&a + &b, series(&[(0, 1), (-1, 1), (-2, 2)], -2));
    }

    #[test]
    fn mul_inverse_pair_and_zero() {
        let x = LaurentScalar::x();
        let xinv = LaurentScalar::monomial(int(1), -1);
        assert_eq!(&x * &xinv, LaurentScalar::one());
        assert!((&LaurentScalar::zero() * &series(&[(3, 1)], 0)).is_zero());
    }

    #[test]
    fn geometric_series_product() {
        // (1 - x^-1)(1 + x^-1 + ... + x^-10) = 1 up to the floor
        let a = lp(&[(0, 1), (-1, -1)]);
        let geo = series(&(0..=10).map(|k| (-k, 1)).collect::<Vec<_>>(), -10);
        let prod = &a * &geo;
        assert_eq!(prod.floor(), Some(-10));
        assert_eq!(prod, series(&[(0, 1)], -10));
    }

    #[test]
    fn invert_examples() {
        assert_eq!(LaurentScalar::x().invert(-10).unwrap(), LaurentScalar::monomial(int(1), -1));
        assert_eq!(
            LaurentScalar::constant(rat(3, 4)).invert(0).unwrap(),
            LaurentScalar::constant(rat(4, 3))
        );
        // Neumann series of a series input
        let a = series(&[(0, 1), (-1, -1)], -30);
        let inv = a.invert(-5).unwrap();
        assert_eq!(inv, series(&(0..=5).map(|k| (-k, 1)).collect::<Vec<_>>(), -5));
        assert_eq!(LaurentScalar::zero().invert(0), Err(Error::DivisionByZero));
    }

    #[test]
    fn invert_series_precision_rule() {
        // σ = 2, floor -3: relative precision 5, inverse floor -2 - 5 = -7
        let a = series(&[(2, 2), (0, 1)], -3);
        let inv = a.invert(-100).unwrap();
        assert_eq!(inv.floor(), Some(-7));
        assert_eq!(inv.sigma(), Sigma::Finite(-2));
        let prod = &a * &inv;
        assert_eq!(prod.coefficient(0), Some(int(1)));
        for j in prod.floor().unwrap()..0 {
            assert_eq!(prod.coefficient(j), Some(int(0)), "degree {j}");
        }
    }

    #[test]
    fn sigma_examples() {
        assert_eq!(lp(&[(3, 1), (0, 1)]).sigma(), Sigma::Finite(3));
        let f = LaurentScalar::rational_function(
            Poly::from_coeffs(vec![int(1), int(1)]),
            Poly::monomial(int(1), 2),
        )
        .unwrap();
        assert_eq!(f.sigma(), Sigma::Finite(-1));
        assert_eq!(LaurentScalar::zero().sigma(), Sigma::NegInfinity);
    }

    #[test]
    fn expand_examples() {
        // 1/(1 - x^-1) = x/(x - 1)
        let f = LaurentScalar::rational_function(
            Poly::from_coeffs(vec![int(0), int(1)]),
            Poly::from_coeffs(vec![int(-1), int(1)]),
        )
        .unwrap();
        assert_eq!(f.expand(-3), series(&[(0, 1), (-1, 1), (-2, 1), (-3, 1)], -3));
        assert_eq!(lp(&[(2, 1)]).expand(-1), series(&[(2, 1)], -1));
        assert_eq!(LaurentScalar::zero().expand(-9), series(&[], -9));
    }

    #[test]
    fn canonical_text() {
        let f = lp(&[(0, 1), (-1, 1)]);
        assert_eq!(f.to_string(), "(x + 1)/(x)");
        assert_eq!(series(&[(0, 1), (-1, 1), (-2, 2)], -2).to_string(), "1 + x^-1 + 2*x^-2 ; floor=-2");
    }

    #[test]
    fn deeper_floor_never_changes_reported_coefficients() {
        let f = LaurentScalar::rational_function(
            Poly::from_coeffs(vec![int(2), int(0), int(1)]),
            Poly::from_coeffs(vec![int(3), int(-1), int(0), int(1)]),
        )
        .unwrap();
        let shallow = f.expand(-5);
        let deep = f.expand(-20);
        for j in -5..=0 {
            assert_eq!(shallow.coefficient(j), deep.coefficient(j));
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn small_lp() -> impl Strategy<Value = LaurentScalar> {
            prop::collection::vec((-3i64..=3, -4i64..=4), 0..4).prop_map(|terms| lp(&terms))
        }

        fn small_rf() -> impl Strategy<Value = LaurentScalar> {
            (small_lp(), small_lp()).prop_filter_map("nonzero den", |(a, b)| {
                if b.is_zero() {
                    None
                } else {
                    Some(a.div(&b, 0).unwrap())
                }
            })
        }

        proptest! {
            #[test]
            fn exact_field_axioms(a in small_rf(), b in small_rf(), c in small_rf()) {
                prop_assert_eq!(&a + &b, &b + &a);
                prop_assert_eq!(&a * &b, &b * &a);
                prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
                prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
                if !a.is_zero() {
                    prop_assert!((&a * &a.invert(0).unwrap()).is_one());
                }
            }

            #[test]
            fn sigma_is_a_valuation(a in small_rf(), b in small_rf()) {
                prop_assert_eq!((&a * &b).sigma(), a.sigma() + b.sigma());
                prop_assert!((&a + &b).sigma() <= a.sigma().max(b.sigma()));
            }

            #[test]
            fn series_ops_agree_with_exact(a in small_rf(), b in small_rf()) {
                let floor = -12;
                let sa = a.expand(floor);
                let sb = b.expand(floor);
                let prod = &sa * &sb;
                let exact = (&a * &b).expand(prod.floor().unwrap());
                prop_assert_eq!(prod, exact);
                let sum = &sa + &b;
                prop_assert_eq!(sum, (&a + &b).expand(floor));
                if !b.is_zero() {
                    let inv = sb.invert(-40).unwrap();
                    let exact_inv = b.invert(0).unwrap().expand(inv.floor().unwrap());
                    prop_assert_eq!(inv, exact_inv);
                }
            }
        }
    }
}
