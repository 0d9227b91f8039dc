//! Truncated formal power series in `t` with exact coefficients, and the
//! branch-series to tree-series transform `T(t) = B(t / (1 - t T(t)))`.
//!
//! A series of order `N` stores the coefficients of `t^0 .. t^{N-1}`; every
//! binary operation works to the smaller of the two orders.

use std::fmt;
use std::str::FromStr;

use num_traits::One;

use crate::error::{Error, Result};
use crate::ring::{Rational, RingElem, RingKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LogExp {
    Log,
    Exp,
}

#[derive(Debug, Clone)]
pub struct FormalPowerSeries {
    kind: RingKind,
    coeffs: Vec<RingElem>,
}

impl PartialEq for FormalPowerSeries {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}

impl Eq for FormalPowerSeries {}

impl FormalPowerSeries {
    /// Builds a series whose order is `coeffs.len()`. The ring kind is the
    /// join of the coefficient kinds; constants are promoted.
    pub fn new(coeffs: Vec<RingElem>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::Precondition("series order must be positive".into()));
        }
        let kind = coeffs
            .iter()
            .fold(RingKind::Rational, |k, c| k.join(c.kind()));
        Ok(Self::with_kind(kind, coeffs))
    }

    fn with_kind(kind: RingKind, coeffs: Vec<RingElem>) -> Self {
        let coeffs = coeffs.into_iter().map(|c| c.into_kind(kind)).collect();
        FormalPowerSeries { kind, coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| RingElem::int(c)).collect())
    }

    /// Coefficient `n` is `f(n)` for `n < order`.
    pub fn from_fn(order: usize, f: impl Fn(usize) -> RingElem) -> Result<Self> {
        Self::new((0..order).map(f).collect())
    }

    pub fn zero(order: usize, kind: RingKind) -> Self {
        Self::with_kind(kind, vec![RingElem::zero(); order.max(1)])
    }

    pub fn one(order: usize, kind: RingKind) -> Self {
        let mut s = Self::zero(order, kind);
        s.coeffs[0] = RingElem::one_of(kind);
        s
    }

    /// The formal variable `t`.
    pub fn variable(order: usize, kind: RingKind) -> Self {
        let mut s = Self::zero(order, kind);
        if order > 1 {
            s.coeffs[1] = RingElem::one_of(kind);
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn kind(&self) -> RingKind {
        self.kind
    }

    pub fn coeffs(&self) -> &[RingElem] {
        &self.coeffs
    }

    /// Coefficient of `t^n`; zero past the truncation order.
    pub fn coeff(&self, n: usize) -> RingElem {
        self.coeffs
            .get(n)
            .cloned()
            .unwrap_or_else(|| RingElem::zero_of(self.kind))
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::with_kind(self.kind, self.coeffs[..order.clamp(1, self.order())].to_vec())
    }

    pub fn promote(&self, kind: RingKind) -> Self {
        Self::with_kind(self.kind.join(kind), self.coeffs.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(RingElem::is_zero)
    }

    fn check_kind(&self, other: &Self) -> Result<()> {
        if self.kind != other.kind {
            return Err(Error::RingMismatch(self.kind.name(), other.kind.name()));
        }
        Ok(())
    }

    pub fn scale(&self, c: &RingElem) -> Self {
        Self::with_kind(
            self.kind.join(c.kind()),
            self.coeffs.iter().map(|x| x * c).collect(),
        )
    }

    /// Multiplies by `t^k`, keeping the order.
    pub fn shift(&self, k: usize) -> Self {
        let n = self.order();
        let coeffs = (0..n)
            .map(|i| if i < k { RingElem::zero() } else { self.coeffs[i - k].clone() })
            .collect();
        Self::with_kind(self.kind, coeffs)
    }

    pub fn neg(&self) -> Self {
        Self::with_kind(self.kind, self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_kind(other)?;
        let n = self.order().min(other.order());
        Ok(Self::with_kind(
            self.kind,
            (0..n).map(|i| &self.coeffs[i] + &other.coeffs[i]).collect(),
        ))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_kind(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        let mut out = vec![RingElem::zero_of(self.kind); n];
        for (i, a) in self.coeffs.iter().take(n).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().take(n - i).enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::with_kind(self.kind, out)
    }

    /// Multiplicative inverse; the constant term must be a unit.
    pub fn inverse(&self) -> Result<Self> {
        let c0 = self.coeffs[0].inverse().map_err(|_| {
            Error::NotInvertible(format!("constant term {} is not a unit", self.coeffs[0]))
        })?;
        let n = self.order();
        let mut out: Vec<RingElem> = Vec::with_capacity(n);
        out.push(c0.clone());
        for k in 1..n {
            let acc: RingElem = (1..=k).map(|j| &self.coeffs[j] * &out[k - j]).sum();
            out.push(-(acc * &c0));
        }
        Ok(Self::with_kind(self.kind, out))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        self.check_kind(other)?;
        Ok(self.mul_unchecked(&other.inverse()?))
    }

    pub fn arith(&self, other: &Self, op: ArithOp) -> Result<Self> {
        match op {
            ArithOp::Add => self.add(other),
            ArithOp::Sub => self.sub(other),
            ArithOp::Mul => self.mul(other),
            ArithOp::Div => self.div(other),
        }
    }

    /// `self(inner(t))`; `inner` must have zero constant term.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        self.check_kind(inner)?;
        if !inner.coeffs[0].is_zero() {
            return Err(Error::Precondition(
                "inner series of a composition must have zero constant term".into(),
            ));
        }
        let n = self.order().min(inner.order());
        let inner = inner.truncate(n);
        // Horner: a_0 + x (a_1 + x (a_2 + ...)).
        let mut acc = Self::zero(n, self.kind);
        for k in (0..n).rev() {
            acc = acc.mul_unchecked(&inner);
            acc.coeffs[0] += &self.coeffs[k];
        }
        Ok(acc)
    }

    /// Compositional inverse `v` with `w(v(t)) = v(w(t)) = t`.
    pub fn comp_inverse(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::Precondition(
                "compositional inverse needs zero constant term".into(),
            ));
        }
        let n = self.order();
        if n < 2 {
            return Ok(self.clone());
        }
        let lin_inv = self.coeffs[1].inverse().map_err(|_| {
            Error::NotInvertible(format!("linear coefficient {} is not a unit", self.coeffs[1]))
        })?;
        let t = Self::variable(n, self.kind);
        // v <- v + (t - w(v)) / w_1 gains one correct coefficient per step.
        let mut v = t.scale(&lin_inv);
        for _ in 2..n {
            let err = t.sub(&self.compose(&v)?)?;
            v = v.add(&err.scale(&lin_inv))?;
        }
        Ok(v)
    }

    pub fn log(&self) -> Result<Self> {
        if !self.coeffs[0].is_one() {
            return Err(Error::Precondition("log needs constant term 1".into()));
        }
        // log f = integral of f'/f.
        let n = self.order();
        let quotient = self.derivative().mul_unchecked(&self.inverse()?);
        Ok(quotient.integral(n))
    }

    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::Precondition("exp needs constant term 0".into()));
        }
        // g' = f' g  =>  n g_n = sum_{k=1}^{n} k f_k g_{n-k}.
        let n = self.order();
        let mut g: Vec<RingElem> = vec![RingElem::one_of(self.kind)];
        for m in 1..n {
            let acc: RingElem = (1..=m)
                .map(|k| self.coeffs[k].scale(&Rational::from_integer(k.into())) * &g[m - k])
                .sum();
            g.push(acc.scale(&Rational::new(One::one(), m.into())));
        }
        Ok(Self::with_kind(self.kind, g))
    }

    pub fn log_exp(&self, op: LogExp) -> Result<Self> {
        match op {
            LogExp::Log => self.log(),
            LogExp::Exp => self.exp(),
        }
    }

    /// Formal derivative; the order drops by one (never below 1).
    pub fn derivative(&self) -> Self {
        let n = self.order();
        let coeffs: Vec<RingElem> = (1..n.max(2))
            .map(|k| self.coeff(k).scale(&Rational::from_integer(k.into())))
            .collect();
        Self::with_kind(self.kind, coeffs)
    }

    /// Antiderivative with zero constant term, truncated to `order`.
    fn integral(&self, order: usize) -> Self {
        let coeffs = (0..order)
            .map(|k| {
                if k == 0 {
                    RingElem::zero()
                } else {
                    self.coeff(k - 1).scale(&Rational::new(One::one(), k.into()))
                }
            })
            .collect();
        Self::with_kind(self.kind, coeffs)
    }

    /// Reinterprets exponential-generating coefficients `a_n / n!` as
    /// ordinary ones, i.e. multiplies coefficient `n` by `n!`.
    pub fn egf_to_sequence(&self) -> Vec<RingElem> {
        let mut fact = Rational::one();
        self.coeffs
            .iter()
            .enumerate()
            .map(|(n, c)| {
                if n > 0 {
                    fact *= Rational::from_integer(n.into());
                }
                c.scale(&fact)
            })
            .collect()
    }

    /// Inverse of [`egf_to_sequence`](Self::egf_to_sequence).
    pub fn from_egf_sequence(seq: &[RingElem]) -> Result<Self> {
        let mut fact = Rational::one();
        let coeffs = seq
            .iter()
            .enumerate()
            .map(|(n, c)| {
                if n > 0 {
                    fact *= Rational::from_integer(n.into());
                }
                c.scale(&fact.recip())
            })
            .collect();
        Self::new(coeffs)
    }
}

fn require_zero_constant(s: &FormalPowerSeries, what: &str) -> Result<()> {
    if s.coeffs[0].is_zero() {
        Ok(())
    } else {
        Err(Error::Precondition(format!("{what} must have zero constant term")))
    }
}

/// Solves `T(t) = B(t / (1 - t T(t)))` for the tree series `T` given the
/// branch series `B`.
///
/// `t T(t)` only involves coefficients of `T` below the one being fixed, so
/// each pass of the loop pins one more coefficient and the solution is
/// unique.
pub fn troupe_transform(branch: &FormalPowerSeries) -> Result<FormalPowerSeries> {
    require_zero_constant(branch, "branch series")?;
    let n = branch.order();
    let kind = branch.kind();
    let one = FormalPowerSeries::one(n, kind);
    let t = FormalPowerSeries::variable(n, kind);
    let mut tree = FormalPowerSeries::zero(n, kind);
    for _ in 1..n {
        let denom = one.sub(&tree.shift(1))?;
        let arg = t.div(&denom)?;
        tree = branch.compose(&arg)?;
    }
    Ok(tree)
}

/// Recovers the branch series: with `W = t / (1 - t T)`, `B = T ∘ W^{<-1>}`.
pub fn inverse_troupe_transform(tree: &FormalPowerSeries) -> Result<FormalPowerSeries> {
    require_zero_constant(tree, "tree series")?;
    let n = tree.order();
    let kind = tree.kind();
    let one = FormalPowerSeries::one(n, kind);
    let t = FormalPowerSeries::variable(n, kind);
    let w = t.div(&one.sub(&tree.shift(1))?)?;
    tree.compose(&w.comp_inverse()?)
}

/// Checks `1 - B(t / (1 + R(t))) = 1 / (1 + R(t))` for the ordinary
/// generating functions of Boolean (`B`) and free (`R`) cumulants.
pub fn boolean_free_series_check(boolean: &FormalPowerSeries, free: &FormalPowerSeries) -> bool {
    let check = || -> Result<bool> {
        require_zero_constant(boolean, "boolean cumulant series")?;
        require_zero_constant(free, "free cumulant series")?;
        let kind = boolean.kind().join(free.kind());
        let b = boolean.promote(kind);
        let r = free.promote(kind);
        let n = b.order().min(r.order());
        let one = FormalPowerSeries::one(n, kind);
        let t = FormalPowerSeries::variable(n, kind);
        let one_plus_r = one.add(&r)?;
        let lhs = one.sub(&b.compose(&t.div(&one_plus_r)?)?)?;
        let rhs = one.div(&one_plus_r)?;
        Ok(lhs == rhs)
    };
    check().unwrap_or(false)
}

/// `order N` followed by one `n: <coeff>` line per coefficient.
impl fmt::Display for FormalPowerSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "order {}", self.order())?;
        for (n, c) in self.coeffs.iter().enumerate() {
            writeln!(f, "{n}: {c}")?;
        }
        Ok(())
    }
}

impl FromStr for FormalPowerSeries {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut lines = s
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (ln, header) = lines.next().ok_or(Error::Parse {
            line: 1,
            msg: "missing `order N` header".into(),
        })?;
        let order: usize = header
            .strip_prefix("order")
            .and_then(|r| r.trim().parse().ok())
            .filter(|&n| n > 0)
            .ok_or_else(|| Error::Parse { line: ln, msg: format!("expected `order N`, got `{header}`") })?;
        let mut coeffs = vec![RingElem::zero(); order];
        for (ln, line) in lines {
            let parse_err = |msg: String| Error::Parse { line: ln, msg };
            let (idx, val) = line
                .split_once(':')
                .ok_or_else(|| parse_err(format!("expected `n: <coeff>`, got `{line}`")))?;
            let idx: usize = idx
                .trim()
                .parse()
                .map_err(|_| parse_err(format!("bad index `{}`", idx.trim())))?;
            if idx >= order {
                return Err(parse_err(format!("index {idx} beyond order {order}")));
            }
            coeffs[idx] = val.trim().parse().map_err(|e: Error| parse_err(e.to_string()))?;
        }
        FormalPowerSeries::new(coeffs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Poly;

    fn ints(c: &[i64]) -> FormalPowerSeries {
        FormalPowerSeries::from_ints(c).unwrap()
    }

    fn geometric(n: usize) -> FormalPowerSeries {
        FormalPowerSeries::from_fn(n, |_| RingElem::one()).unwrap()
    }

    #[test]
    fn difference_of_squares() {
        let a = ints(&[1, 1, 0, 0]);
        let b = ints(&[1, -1, 0, 0]);
        assert_eq!(a.mul(&b).unwrap(), ints(&[1, 0, -1, 0]));
    }

    #[test]
    fn geometric_division() {
        let one = FormalPowerSeries::one(6, RingKind::Rational);
        let d = ints(&[1, -1, 0, 0, 0, 0]);
        assert_eq!(one.div(&d).unwrap(), geometric(6));
    }

    #[test]
    fn poly_ring_division() {
        // (1 - q t) / (1 - t) = 1 + (1-q) t + (1-q) t^2 + ...
        let num = FormalPowerSeries::new(vec![RingElem::one(), -RingElem::q(), RingElem::zero()]).unwrap();
        let den = ints(&[1, -1, 0]).promote(RingKind::Poly);
        let got = num.div(&den).unwrap();
        let one_minus_q = RingElem::poly(&[1, -1]);
        assert_eq!(got.coeffs(), &[RingElem::one(), one_minus_q.clone(), one_minus_q]);
    }

    #[test]
    fn arith_errors() {
        let a = ints(&[1, 2]);
        let p = a.promote(RingKind::Poly);
        assert!(matches!(a.add(&p), Err(Error::RingMismatch(..))));
        assert!(matches!(a.div(&ints(&[0, 1])), Err(Error::NotInvertible(_))));
        let qconst = FormalPowerSeries::new(vec![RingElem::q(), RingElem::one()]).unwrap();
        assert!(p.div(&qconst).is_err());
        assert_eq!(a.add(&ints(&[1, 1, 1])).unwrap().order(), 2);
    }

    #[test]
    fn compose_examples() {
        let n = 6;
        let t = FormalPowerSeries::variable(n, RingKind::Rational);
        let t_over = t.div(&ints(&[1, -1, 0, 0, 0, 0])).unwrap();
        assert_eq!(t_over.compose(&t).unwrap(), t_over);

        let sq = ints(&[0, 0, 1, 0, 0, 0]);
        let inner = ints(&[0, 1, 1, 0, 0, 0]);
        assert_eq!(sq.compose(&inner).unwrap(), ints(&[0, 0, 1, 2, 1, 0]));

        // 1 / (1 - t/(1-t)) = (1-t)/(1-2t) = 1 + t + 2t^2 + 4t^3 + 8t^4
        let got = geometric(5).compose(&t_over.truncate(5)).unwrap();
        assert_eq!(got, ints(&[1, 1, 2, 4, 8]));

        assert!(sq.compose(&ints(&[1, 1, 0, 0, 0, 0])).is_err());
    }

    #[test]
    fn comp_inverse_examples() {
        let t = FormalPowerSeries::variable(6, RingKind::Rational);
        assert_eq!(t.comp_inverse().unwrap(), t);
        let w = t.div(&ints(&[1, -1, 0, 0, 0, 0])).unwrap();
        let v = w.comp_inverse().unwrap();
        assert_eq!(v, t.div(&ints(&[1, 1, 0, 0, 0, 0])).unwrap());
        assert_eq!(w.compose(&v).unwrap(), t);
        let cat = ints(&[0, 1, -1, 0, 0, 0]).comp_inverse().unwrap();
        assert_eq!(cat, ints(&[0, 1, 1, 2, 5, 14]));
        assert!(ints(&[0, 0, 1]).comp_inverse().is_err());
        assert!(ints(&[1, 1, 1]).comp_inverse().is_err());
    }

    #[test]
    fn log_exp_examples() {
        let n = 8;
        let g = geometric(n);
        let mercator = FormalPowerSeries::from_fn(n, |k| {
            if k == 0 { RingElem::zero() } else { RingElem::frac(1, k as i64) }
        })
        .unwrap();
        assert_eq!(g.log().unwrap(), mercator);

        let t = FormalPowerSeries::variable(n, RingKind::Rational);
        let et = t.exp().unwrap();
        let expected: Vec<RingElem> = (0..n)
            .map(|k| RingElem::Rational(Rational::new(1.into(), crate::ring::factorial(k))))
            .collect();
        assert_eq!(et.coeffs(), &expected[..]);

        // log((1-t) e^t) = -sum_{k>=2} t^k / k
        let f = ints(&[1, -1, 0, 0, 0, 0, 0, 0]).mul(&et).unwrap();
        let expected = FormalPowerSeries::from_fn(n, |k| {
            if k < 2 { RingElem::zero() } else { RingElem::frac(-1, k as i64) }
        })
        .unwrap();
        assert_eq!(f.log().unwrap(), expected);
        assert_eq!(f.log().unwrap().exp().unwrap(), f);

        assert!(t.log().is_err());
        assert!(g.exp().is_err());
    }

    #[test]
    fn transform_of_powers_of_two_is_catalan() {
        let order = 12;
        let b = FormalPowerSeries::from_fn(order, |n| {
            if n == 0 { RingElem::zero() } else { RingElem::int(1 << (n - 1)) }
        })
        .unwrap();
        let t = troupe_transform(&b).unwrap();
        let cat = FormalPowerSeries::from_fn(order, |n| {
            if n == 0 { RingElem::zero() } else { RingElem::big(crate::ring::catalan(n)) }
        })
        .unwrap();
        assert_eq!(t, cat);
        assert_eq!(inverse_troupe_transform(&t).unwrap(), b);
    }

    #[test]
    fn transform_of_single_vertex_branches() {
        let b = FormalPowerSeries::variable(10, RingKind::Rational);
        let t = troupe_transform(&b).unwrap();
        assert_eq!(t, ints(&[0, 1, 0, 1, 0, 2, 0, 5, 0, 14]));
        assert_eq!(inverse_troupe_transform(&t).unwrap(), b);
    }

    #[test]
    fn transform_rejects_constant_term() {
        assert!(troupe_transform(&ints(&[1, 1])).is_err());
        assert!(inverse_troupe_transform(&ints(&[1, 1])).is_err());
    }

    #[test]
    fn boolean_free_identity() {
        let n = 12;
        let zero = FormalPowerSeries::zero(n, RingKind::Rational);
        assert!(boolean_free_series_check(&zero, &zero));
        let b = FormalPowerSeries::from_fn(n, |k| {
            if k < 2 { RingElem::zero() } else { RingElem::int(-(1 << (k - 2))) }
        })
        .unwrap();
        let r = FormalPowerSeries::from_fn(n, |k| {
            if k < 2 { RingElem::zero() } else { -RingElem::big(crate::ring::catalan(k - 1)) }
        })
        .unwrap();
        assert!(boolean_free_series_check(&b, &r));
        let t = FormalPowerSeries::variable(n, RingKind::Rational);
        assert!(!boolean_free_series_check(&t, &zero));
    }

    #[test]
    fn serialization_roundtrip() {
        let s = FormalPowerSeries::new(vec![
            RingElem::zero(),
            RingElem::frac(3, 4),
            RingElem::Poly(Poly::from_ints(&[1, -2, 0, 5])),
        ])
        .unwrap();
        let text = s.to_string();
        assert_eq!(text, "order 3\n0: 0\n1: 3/4\n2: 1 + -2*q + 5*q^3\n");
        let back: FormalPowerSeries = text.parse().unwrap();
        assert_eq!(back, s);
        assert_eq!(back.kind(), RingKind::Poly);
        let err = "order 2\n0: 1\nfoo\n".parse::<FormalPowerSeries>().unwrap_err();
        assert_eq!(err, Error::Parse { line: 3, msg: "expected `n: <coeff>`, got `foo`".into() });
    }
}
