use std::fmt;
use std::str::FromStr;

use itertools::Itertools;

use crate::error::{Error, Result};

/// A permutation of `[n]` in one-line notation, `images[k - 1] = σ(k)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n + 1];
        for &v in &images {
            if v == 0 || v > n || seen[v] {
                return Err(Error::InvalidPermutation(format!(
                    "{images:?} is not a permutation of 1..={n}"
                )));
            }
            seen[v] = true;
        }
        Ok(Permutation(images))
    }

    pub fn identity(n: usize) -> Self {
        Permutation((1..=n).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    /// `σ(k)` for `1 <= k <= n`.
    pub fn at(&self, k: usize) -> usize {
        self.0[k - 1]
    }

    /// Positions `i` (1-based) with `σ(i) > σ(i+1)`.
    pub fn descents(&self) -> Vec<usize> {
        (1..self.len()).filter(|&i| self.at(i) > self.at(i + 1)).collect()
    }

    pub fn des(&self) -> usize {
        self.descents().len()
    }

    /// All of `S_n` in lexicographic order.
    pub fn all(n: usize) -> impl Iterator<Item = Permutation> {
        (1..=n).permutations(n).map(Permutation)
    }
}

/// Single digits are concatenated (`854791632`); larger permutations are
/// space separated.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sep = if self.len() <= 9 { "" } else { " " };
        f.write_str(&self.0.iter().map(ToString::to_string).join(sep))
    }
}

impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::InvalidPermutation(format!("cannot parse `{s}`"));
        let images: Vec<usize> = if s.contains(|c: char| c == ',' || c.is_whitespace()) {
            s.split(|c: char| c == ',' || c.is_whitespace())
                .filter(|x| !x.is_empty())
                .map(|x| x.parse().map_err(|_| bad()))
                .collect::<Result<_>>()?
        } else {
            s.chars()
                .map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(bad))
                .collect::<Result<_>>()?
        };
        Permutation::new(images)
    }
}
