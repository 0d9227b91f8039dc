//! Independent oracles for the integration tests: recurrences and closed
//! formulas that share no code with the library.

#![allow(dead_code)]

use cumulant_trees::RingElem;

pub fn factorial(n: usize) -> i128 {
    (1..=n as i128).product()
}

pub fn binomial(n: usize, k: usize) -> i128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1i128, |acc, i| acc * (n - i) as i128 / (i as i128 + 1))
}

/// `C_n = binom(2n, n) / (n + 1)`.
pub fn catalan(n: usize) -> i128 {
    binomial(2 * n, n) / (n as i128 + 1)
}

/// `M_0 = 1`, `M_n = M_{n-1} + Σ_{k=0}^{n-2} M_k M_{n-2-k}`.
pub fn motzkin(n: usize) -> i128 {
    let mut m = vec![1i128];
    for j in 1..=n {
        let mut x = m[j - 1];
        for k in 0..j.saturating_sub(1) {
            x += m[k] * m[j - 2 - k];
        }
        m.push(x);
    }
    m[n]
}

/// Eulerian numbers from `A(n,k) = (k+1)A(n-1,k) + (n-k)A(n-1,k-1)`,
/// as the coefficients of `A_n(q)`; `A_0 = 1`.
pub fn eulerian(n: usize) -> Vec<i128> {
    let mut row = vec![1i128];
    for m in 1..=n {
        let mut next = vec![0i128; m];
        for k in 0..m {
            let keep = if k < row.len() { (k as i128 + 1) * row[k] } else { 0 };
            let bump = if k >= 1 && k - 1 < row.len() { (m - k) as i128 * row[k - 1] } else { 0 };
            next[k] = keep + bump;
        }
        row = next;
    }
    row
}

/// Narayana numbers `binom(n,k) binom(n,k+1) / n` for `k = 0..n-1`; `N_0 = 1`.
pub fn narayana(n: usize) -> Vec<i128> {
    if n == 0 {
        return vec![1];
    }
    (0..n).map(|k| binomial(n, k) * binomial(n, k + 1) / n as i128).collect()
}

/// Euler zigzag numbers `a_0, …, a_n` by the boustrophedon (Seidel) triangle.
pub fn zigzag(n: usize) -> Vec<i128> {
    let mut out = vec![1i128];
    let mut row = vec![1i128];
    for m in 1..=n {
        let mut next = vec![0i128];
        for k in 0..m {
            let x = next[k] + row[m - 1 - k];
            next.push(x);
        }
        out.push(next[m]);
        row = next;
    }
    out
}

pub fn int(x: i128) -> RingElem {
    RingElem::big(x.into())
}

/// The polynomial `Σ c_k q^k`.
pub fn poly(coeffs: &[i128]) -> RingElem {
    coeffs
        .iter()
        .enumerate()
        .fold(RingElem::zero(), |acc, (k, &c)| &acc + &(&int(c) * &RingElem::q().pow(k as u32)))
}

/// `q · p(q)` for a coefficient list.
pub fn times_q(coeffs: &[i128]) -> RingElem {
    let mut c = vec![0];
    c.extend_from_slice(coeffs);
    poly(&c)
}
