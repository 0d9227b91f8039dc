//! Worked univariate families: moment sequences whose cumulants are tree
//! sums, and brute-force Eulerian, Narayana and alternating counts.

use std::fmt;

use itertools::Itertools;

use crate::cumulants::classical_via_egf;
use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::ring::{catalan, factorial, RingElem};
use crate::series::FormalPowerSeries;
use crate::trees::bpt_shapes;

/// `A_n(q) = Σ_{σ ∈ S_n} q^des(σ)`; `A_0 = 1`.
pub fn eulerian_polynomial(n: usize) -> RingElem {
    let mut counts = vec![0i64; n.max(1)];
    for s in Permutation::all(n) {
        counts[s.des()] += 1;
    }
    if n == 0 {
        counts[0] = 1;
    }
    RingElem::poly(&counts)
}

/// `N_n(q) = Σ_{T ∈ BPT_n} q^right(T)`; `N_0 = 1`.
pub fn narayana_polynomial(n: usize) -> RingElem {
    let mut counts = vec![0i64; n.max(1)];
    for t in bpt_shapes(n) {
        counts[t.right_edges()] += 1;
    }
    if n == 0 {
        counts[0] = 1;
    }
    RingElem::poly(&counts)
}

/// Number of `σ ∈ S_n` with `σ(1) > σ(2) < σ(3) > ⋯`, counted by
/// extending alternating prefixes one letter at a time.
pub fn alternating_count(n: usize) -> RingElem {
    fn extend(n: usize, last: usize, down: bool, used: &mut [bool], depth: usize) -> i64 {
        if depth == n {
            return 1;
        }
        let mut total = 0;
        for x in 1..=n {
            if !used[x] && (if down { x < last } else { x > last }) {
                used[x] = true;
                total += extend(n, x, !down, used, depth + 1);
                used[x] = false;
            }
        }
        total
    }
    let mut used = vec![false; n + 1];
    let mut total = 0;
    for first in 1..=n {
        used[first] = true;
        total += extend(n, first, true, &mut used, 1);
        used[first] = false;
    }
    RingElem::int(total.max(i64::from(n == 0)))
}

/// `p(x)` for a polynomial in `q` and any ring element `x`.
fn substitute(p: &RingElem, x: &RingElem) -> RingElem {
    let coeffs = p.to_poly().coeffs().to_vec();
    coeffs
        .iter()
        .rev()
        .fold(RingElem::zero(), |acc, c| &(&acc * x) + &RingElem::from(c.clone()))
}

/// A moment sequence `m_0 = 1, …, m_N` with the cumulants it is meant to
/// have. Free and Boolean cumulants are recorded for the families whose
/// classical cumulants are negated tree sums.
#[derive(Debug, Clone, PartialEq)]
pub struct NamedSequence {
    pub name: String,
    pub moments: Vec<RingElem>,
    /// `K_1, …, K_N`.
    pub classical: Vec<RingElem>,
    pub free: Option<Vec<RingElem>>,
    pub boolean: Option<Vec<RingElem>>,
}

pub const NAMES: [&str; 5] = ["gamma_minus_one", "shifted_exponential", "two_atom", "geometric_like", "secant"];

/// `[0, f(2), …, f(N)]`.
fn from_two(order: usize, f: impl Fn(usize) -> RingElem) -> Vec<RingElem> {
    (1..=order).map(|n| if n == 1 { RingElem::zero() } else { f(n) }).collect()
}

fn moments_from_cumulants(k: &[RingElem]) -> Result<Vec<RingElem>> {
    let egf = FormalPowerSeries::from_egf_sequence(&std::iter::once(RingElem::zero()).chain(k.iter().cloned()).collect_vec())?;
    Ok(egf.exp()?.egf_to_sequence())
}

/// Moments up to `m_order` of a named family. `two_atom` and
/// `geometric_like` take the parameter `q` after a colon and default to the
/// indeterminate.
///
/// * `gamma_minus_one`: `m_n = 1 - n`, `K_n = -(n-1)!` for `n > 1`.
/// * `shifted_exponential`: `K_n = (n-1)!` for `n > 1`.
/// * `two_atom`: `m_n = (qⁿ - q)/(1 - q)`, `K_n = -q A_{n-1}(q)`.
/// * `geometric_like`: `K_n = q A_{n-1}(q)`.
/// * `secant`: moments of `sec t`; `K_n = a_{n-1}` for even `n`, else 0.
pub fn named_sequence(name: &str, order: usize) -> Result<NamedSequence> {
    if order == 0 {
        return Err(Error::Precondition("order must be positive".into()));
    }
    let (head, param) = match name.split_once(':') {
        Some((h, p)) => (h, Some(p.parse::<RingElem>()?)),
        None => (name, None),
    };
    let q = param.clone().unwrap_or_else(RingElem::q);
    let fact = |n: usize| RingElem::big(factorial(n));
    let q_eulerian = |n: usize| &q * &substitute(&eulerian_polynomial(n - 1), &q);
    let seq = match (head, &param) {
        ("gamma_minus_one", None) => NamedSequence {
            name: head.into(),
            moments: (0..=order).map(|n| RingElem::int(1 - n as i64)).collect(),
            classical: from_two(order, |n| -fact(n - 1)),
            free: Some(from_two(order, |n| -RingElem::big(catalan(n - 1)))),
            boolean: Some(from_two(order, |n| -RingElem::int(1i64 << (n - 2)))),
        },
        ("shifted_exponential", None) => {
            let classical = from_two(order, |n| fact(n - 1));
            NamedSequence {
                name: head.into(),
                moments: moments_from_cumulants(&classical)?,
                classical,
                free: None,
                boolean: None,
            }
        }
        ("two_atom", _) => {
            // (qⁿ - q)/(1 - q) = -(q + q² + ⋯ + q^{n-1})
            let moments = (0..=order)
                .map(|n| match n {
                    0 => RingElem::one(),
                    _ => -(1..n).map(|k| q.pow(k as u32)).sum::<RingElem>(),
                })
                .collect();
            NamedSequence {
                name: head.into(),
                moments,
                classical: from_two(order, |n| -q_eulerian(n)),
                free: Some(from_two(order, |n| -(&q * &substitute(&narayana_polynomial(n - 1), &q)))),
                boolean: Some(from_two(order, |n| -(&q * &(&RingElem::one() + &q).pow(n as u32 - 2)))),
            }
        }
        ("geometric_like", _) => {
            let classical = from_two(order, q_eulerian);
            NamedSequence {
                name: head.into(),
                moments: moments_from_cumulants(&classical)?,
                classical,
                free: None,
                boolean: None,
            }
        }
        ("secant", None) => {
            let cos = FormalPowerSeries::from_egf_sequence(
                &(0..=order)
                    .map(|n| match n % 4 {
                        0 => RingElem::one(),
                        2 => -RingElem::one(),
                        _ => RingElem::zero(),
                    })
                    .collect_vec(),
            )?;
            NamedSequence {
                name: head.into(),
                moments: cos.inverse()?.egf_to_sequence(),
                classical: (1..=order)
                    .map(|n| if n % 2 == 0 { alternating_count(n - 1) } else { RingElem::zero() })
                    .collect(),
                free: None,
                boolean: None,
            }
        }
        _ => return Err(Error::UnknownName(name.to_string())),
    };
    Ok(seq)
}

impl NamedSequence {
    /// Classical cumulants of the moments through the logarithm of their EGF.
    pub fn computed_classical(&self) -> Result<Vec<RingElem>> {
        classical_via_egf(&self.moments)
    }
}

impl fmt::Display for NamedSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.name)?;
        let rows: [(&str, Option<&Vec<RingElem>>); 3] = [
            ("classical", Some(&self.classical)),
            ("free", self.free.as_ref()),
            ("boolean", self.boolean.as_ref()),
        ];
        for (n, m) in self.moments.iter().enumerate() {
            write!(f, "n={n} moment={m}")?;
            if n > 0 {
                for (label, col) in rows {
                    if let Some(col) = col {
                        write!(f, " {label}={}", col[n - 1])?;
                    }
                }
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Moments of `f ∗ g`: the product of the moment EGFs.
pub fn convolution_moments(f: &[RingElem], g: &[RingElem]) -> Result<Vec<RingElem>> {
    let n = f.len().min(g.len());
    let mf = FormalPowerSeries::from_egf_sequence(&f[..n])?;
    let mg = FormalPowerSeries::from_egf_sequence(&g[..n])?;
    Ok(mf.mul(&mg)?.egf_to_sequence())
}

/// Whether the classical cumulants of `f ∗ g` are the sums of those of `f` and `g`.
pub fn convolution_additivity_check(f: &NamedSequence, g: &NamedSequence) -> Result<bool> {
    let kf = classical_via_egf(&f.moments)?;
    let kg = classical_via_egf(&g.moments)?;
    let kfg = classical_via_egf(&convolution_moments(&f.moments, &g.moments)?)?;
    Ok(kfg.iter().zip(kf.iter().zip(&kg)).all(|(s, (a, b))| *s == a + b))
}
