//! Exact scalars: arbitrary-precision rationals and dense polynomials over
//! them in a single indeterminate `q`.
//!
//! Values of the two variants compare equal when the rational equals the
//! constant polynomial. Mixed arithmetic promotes the rational operand to a
//! degree-0 polynomial.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Which variant a value (or a whole series) lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RingKind {
    Rational,
    Poly,
}

impl RingKind {
    pub fn name(self) -> &'static str {
        match self {
            RingKind::Rational => "rational",
            RingKind::Poly => "polynomial",
        }
    }

    /// The kind able to hold values of both `self` and `other`.
    pub fn join(self, other: RingKind) -> RingKind {
        if self == RingKind::Poly || other == RingKind::Poly {
            RingKind::Poly
        } else {
            RingKind::Rational
        }
    }
}

/// Dense polynomial in `q` with rational coefficients, ascending degree and
/// no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| Rational::from_integer(c.into())).collect())
    }

    pub fn constant(c: Rational) -> Self {
        Poly::new(vec![c])
    }

    /// The indeterminate `q`.
    pub fn q() -> Self {
        Poly::from_ints(&[0, 1])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn as_constant(&self) -> Option<Rational> {
        match self.coeffs.len() {
            0 => Some(Rational::zero()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        Poly::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn eval(&self, at: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * at + c)
    }

    fn add_ref(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }

    fn mul_ref(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::default();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }

    fn neg_ref(&self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

/// An element of the coefficient ring.
#[derive(Debug, Clone)]
pub enum RingElem {
    Rational(Rational),
    Poly(Poly),
}

impl RingElem {
    pub fn zero() -> Self {
        RingElem::Rational(Rational::zero())
    }

    pub fn one() -> Self {
        RingElem::Rational(Rational::one())
    }

    pub fn int(n: i64) -> Self {
        RingElem::Rational(Rational::from_integer(n.into()))
    }

    pub fn big(n: BigInt) -> Self {
        RingElem::Rational(Rational::from_integer(n))
    }

    pub fn frac(num: i64, den: i64) -> Self {
        RingElem::Rational(Rational::new(num.into(), den.into()))
    }

    pub fn q() -> Self {
        RingElem::Poly(Poly::q())
    }

    pub fn poly(coeffs: &[i64]) -> Self {
        RingElem::Poly(Poly::from_ints(coeffs))
    }

    /// Additive identity of the given kind.
    pub fn zero_of(kind: RingKind) -> Self {
        RingElem::zero().into_kind(kind)
    }

    pub fn one_of(kind: RingKind) -> Self {
        RingElem::one().into_kind(kind)
    }

    pub fn kind(&self) -> RingKind {
        match self {
            RingElem::Rational(_) => RingKind::Rational,
            RingElem::Poly(_) => RingKind::Poly,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            RingElem::Rational(r) => r.is_zero(),
            RingElem::Poly(p) => p.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        self.as_rational().is_some_and(|r| r.is_one())
    }

    /// The value as a rational, if it is a constant.
    pub fn as_rational(&self) -> Option<Rational> {
        match self {
            RingElem::Rational(r) => Some(r.clone()),
            RingElem::Poly(p) => p.as_constant(),
        }
    }

    pub fn to_poly(&self) -> Poly {
        match self {
            RingElem::Rational(r) => Poly::constant(r.clone()),
            RingElem::Poly(p) => p.clone(),
        }
    }

    /// Converts to `kind`. Demoting a non-constant polynomial keeps it a
    /// polynomial.
    pub fn into_kind(self, kind: RingKind) -> Self {
        match (self, kind) {
            (RingElem::Rational(r), RingKind::Poly) => RingElem::Poly(Poly::constant(r)),
            (RingElem::Poly(p), RingKind::Rational) => match p.as_constant() {
                Some(c) => RingElem::Rational(c),
                None => RingElem::Poly(p),
            },
            (x, _) => x,
        }
    }

    pub fn pow(&self, mut exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = RingElem::one_of(self.kind());
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn scale(&self, c: &Rational) -> Self {
        match self {
            RingElem::Rational(r) => RingElem::Rational(r * c),
            RingElem::Poly(p) => RingElem::Poly(p.scale(c)),
        }
    }

    /// Multiplicative inverse; only nonzero constants are units.
    pub fn inverse(&self) -> Result<Self> {
        let c = self
            .as_rational()
            .ok_or_else(|| Error::NotInvertible(self.to_string()))?;
        if c.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(RingElem::Rational(c.recip()).into_kind(self.kind()))
    }

    pub fn checked_div(&self, other: &RingElem) -> Result<Self> {
        let inv = other.inverse()?;
        Ok((self * &inv).into_kind(self.kind().join(other.kind())))
    }

    /// Evaluates the polynomial variant at `q = at`.
    pub fn eval(&self, at: &Rational) -> Rational {
        match self {
            RingElem::Rational(r) => r.clone(),
            RingElem::Poly(p) => p.eval(at),
        }
    }

    fn binary(
        &self,
        other: &RingElem,
        rat: impl Fn(&Rational, &Rational) -> Rational,
        poly: impl Fn(&Poly, &Poly) -> Poly,
    ) -> RingElem {
        match (self, other) {
            (RingElem::Rational(a), RingElem::Rational(b)) => RingElem::Rational(rat(a, b)),
            (a, b) => RingElem::Poly(poly(&a.to_poly(), &b.to_poly())),
        }
    }
}

impl Default for RingElem {
    fn default() -> Self {
        RingElem::zero()
    }
}

impl PartialEq for RingElem {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (RingElem::Rational(a), RingElem::Rational(b)) => a == b,
            (RingElem::Poly(a), RingElem::Poly(b)) => a == b,
            (a, b) => a.to_poly() == b.to_poly(),
        }
    }
}

impl Eq for RingElem {}

impl From<i64> for RingElem {
    fn from(n: i64) -> Self {
        RingElem::int(n)
    }
}

impl From<Rational> for RingElem {
    fn from(r: Rational) -> Self {
        RingElem::Rational(r)
    }
}

impl From<Poly> for RingElem {
    fn from(p: Poly) -> Self {
        RingElem::Poly(p)
    }
}

impl<'a> Add<&'a RingElem> for &'a RingElem {
    type Output = RingElem;
    fn add(self, rhs: &'a RingElem) -> RingElem {
        self.binary(rhs, |a, b| a + b, Poly::add_ref)
    }
}

impl<'a> Sub<&'a RingElem> for &'a RingElem {
    type Output = RingElem;
    fn sub(self, rhs: &'a RingElem) -> RingElem {
        self.binary(rhs, |a, b| a - b, |a, b| a.add_ref(&b.neg_ref()))
    }
}

impl<'a> Mul<&'a RingElem> for &'a RingElem {
    type Output = RingElem;
    fn mul(self, rhs: &'a RingElem) -> RingElem {
        self.binary(rhs, |a, b| a * b, Poly::mul_ref)
    }
}

impl Neg for &RingElem {
    type Output = RingElem;
    fn neg(self) -> RingElem {
        match self {
            RingElem::Rational(r) => RingElem::Rational(-r),
            RingElem::Poly(p) => RingElem::Poly(p.neg_ref()),
        }
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident $atr:ident $am:ident),*) => {$(
        impl $tr for RingElem {
            type Output = RingElem;
            fn $m(self, rhs: RingElem) -> RingElem { (&self).$m(&rhs) }
        }
        impl<'a> $tr<&'a RingElem> for RingElem {
            type Output = RingElem;
            fn $m(self, rhs: &'a RingElem) -> RingElem { (&self).$m(rhs) }
        }
        impl $atr<&RingElem> for RingElem {
            fn $am(&mut self, rhs: &RingElem) { *self = (&*self).$m(rhs); }
        }
        impl $atr for RingElem {
            fn $am(&mut self, rhs: RingElem) { *self = (&*self).$m(&rhs); }
        }
    )*};
}

owned_ops!(Add add AddAssign add_assign, Sub sub SubAssign sub_assign, Mul mul MulAssign mul_assign);

impl Neg for RingElem {
    type Output = RingElem;
    fn neg(self) -> RingElem {
        -&self
    }
}

impl std::iter::Sum for RingElem {
    fn sum<I: Iterator<Item = RingElem>>(iter: I) -> RingElem {
        iter.fold(RingElem::zero(), |a, b| a + b)
    }
}

impl std::iter::Product for RingElem {
    fn product<I: Iterator<Item = RingElem>>(iter: I) -> RingElem {
        iter.fold(RingElem::one(), |a, b| a * b)
    }
}

pub(crate) fn fmt_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| match k {
                0 => fmt_rational(c),
                1 => format!("{}*q", fmt_rational(c)),
                _ => format!("{}*q^{}", fmt_rational(c), k),
            })
            .collect();
        f.write_str(&terms.join(" + "))
    }
}

/// Rationals print as `p/q` (denominator omitted when 1); polynomials as
/// `c0 + c1*q + c2*q^2` listing nonzero terms only.
impl fmt::Display for RingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingElem::Rational(r) => f.write_str(&fmt_rational(r)),
            RingElem::Poly(p) => write!(f, "{p}"),
        }
    }
}

fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::Malformed(format!("bad rational `{s}`"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(Rational::new(num, den))
}

fn parse_term(term: &str) -> Result<(usize, Rational)> {
    let bad = || Error::Malformed(format!("bad term `{term}`"));
    let Some(qpos) = term.find('q') else {
        return Ok((0, parse_rational(term)?));
    };
    let (coef, rest) = term.split_at(qpos);
    let coef = coef.strip_suffix('*').unwrap_or(coef);
    let coef = match coef {
        "" | "+" => Rational::one(),
        "-" => -Rational::one(),
        c => parse_rational(c)?,
    };
    let exp = match &rest[1..] {
        "" => 1,
        e => e
            .strip_prefix('^')
            .and_then(|e| e.parse().ok())
            .ok_or_else(bad)?,
    };
    Ok((exp, coef))
}

/// Accepts the display format plus loose forms such as `1 - q`, `2q^3`.
/// A value mentioning `q` parses as a polynomial, otherwise as a rational.
impl FromStr for RingElem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Malformed("empty ring element".into()));
        }
        let mut terms = Vec::new();
        let mut start = 0;
        let bytes = compact.as_bytes();
        for i in 1..bytes.len() {
            let c = bytes[i];
            let prev = bytes[i - 1];
            if (c == b'+' || c == b'-') && !matches!(prev, b'+' | b'-' | b'*' | b'^' | b'/') {
                terms.push(&compact[start..i]);
                start = i;
            }
        }
        terms.push(&compact[start..]);
        let is_poly = compact.contains('q');
        let mut coeffs: Vec<Rational> = Vec::new();
        for term in terms {
            let term = term.strip_prefix('+').unwrap_or(term);
            let (k, c) = parse_term(term)?;
            if coeffs.len() <= k {
                coeffs.resize(k + 1, Rational::zero());
            }
            coeffs[k] += c;
        }
        let p = Poly::new(coeffs);
        Ok(if is_poly {
            RingElem::Poly(p)
        } else {
            RingElem::Rational(p.coeff(0))
        })
    }
}

/// `n!` as a big integer.
pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// Binomial coefficient as a big integer.
pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    (0..k).fold(BigInt::one(), |acc, i| acc * BigInt::from(n - i) / BigInt::from(i + 1))
}

/// Catalan number `C_n`.
pub fn catalan(n: usize) -> BigInt {
    binomial(2 * n, n) / BigInt::from(n + 1)
}

/// Small-integer view, handy in tests and diagnostics.
pub fn as_i64(x: &RingElem) -> Option<i64> {
    let r = x.as_rational()?;
    if r.is_integer() {
        r.numer().to_i64()
    } else {
        None
    }
}
