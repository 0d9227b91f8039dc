//! Set partitions of `[n]`: all, interval, noncrossing and irreducible
//! noncrossing ones, plus descending-run partitions of permutations.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;

use crate::error::{Error, Result};
pub use crate::perm::Permutation;

/// A partition of `{1..n}`; blocks are sorted and listed by minimum.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SetPartition {
    n: usize,
    blocks: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Flags {
    pub interval: bool,
    pub noncrossing: bool,
    /// Noncrossing with `1` and `n` in one block.
    pub irreducible: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PartitionClass {
    All,
    Interval,
    Noncrossing,
    NcIrreducible,
    /// Irreducible noncrossing with every block of size at least 2.
    NcIrreducibleMin2,
}

impl SetPartition {
    pub fn new(n: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = vec![false; n + 1];
        let mut blocks: Vec<Vec<usize>> = blocks
            .into_iter()
            .map(|mut b| {
                b.sort_unstable();
                b
            })
            .collect();
        for b in &blocks {
            if b.is_empty() {
                return Err(Error::InvalidPartition("empty block".into()));
            }
            for &x in b {
                if x == 0 || x > n || seen[x] {
                    return Err(Error::InvalidPartition(format!(
                        "element {x} is repeated or outside 1..={n}"
                    )));
                }
                seen[x] = true;
            }
        }
        if let Some(missing) = (1..=n).find(|&x| !seen[x]) {
            return Err(Error::InvalidPartition(format!("element {missing} is not covered")));
        }
        blocks.sort_unstable_by_key(|b| b[0]);
        Ok(SetPartition { n, blocks })
    }

    /// From a restricted growth string: `rgs[i]` is the block of `i + 1`.
    fn from_rgs(rgs: &[usize]) -> Self {
        let count = rgs.iter().max().map_or(0, |m| m + 1);
        let mut blocks = vec![Vec::new(); count];
        for (i, &b) in rgs.iter().enumerate() {
            blocks[b].push(i + 1);
        }
        SetPartition { n: rgs.len(), blocks }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    /// `block_index()[x]` is the index of the block holding `x` (index 0 unused).
    pub fn block_index(&self) -> Vec<usize> {
        let mut idx = vec![usize::MAX; self.n + 1];
        for (k, b) in self.blocks.iter().enumerate() {
            for &x in b {
                idx[x] = k;
            }
        }
        idx
    }

    pub fn is_interval(&self) -> bool {
        self.blocks.iter().all(|b| b[b.len() - 1] - b[0] + 1 == b.len())
    }

    /// No `i < j < k < l` with `i ~ k`, `j ~ l` and `i ≁ j`.
    ///
    /// Scans left to right keeping open blocks on a stack; an element of an
    /// open block that is not on top closes over a later-opened block, which
    /// is exactly a crossing.
    pub fn is_noncrossing(&self) -> bool {
        let idx = self.block_index();
        let last: Vec<usize> = self.blocks.iter().map(|b| b[b.len() - 1]).collect();
        let first: Vec<usize> = self.blocks.iter().map(|b| b[0]).collect();
        let mut stack: Vec<usize> = Vec::new();
        for x in 1..=self.n {
            let b = idx[x];
            if x != first[b] && stack.last() != Some(&b) {
                return false;
            }
            if x == first[b] && x != last[b] {
                stack.push(b);
            } else if x == last[b] && x != first[b] {
                stack.pop();
            }
        }
        true
    }

    pub fn classify(&self) -> Flags {
        let noncrossing = self.is_noncrossing();
        let idx = self.block_index();
        Flags {
            interval: self.is_interval(),
            noncrossing,
            irreducible: noncrossing && self.n > 0 && idx[1] == idx[self.n],
        }
    }

    pub fn is_in(&self, class: PartitionClass) -> bool {
        let f = self.classify();
        match class {
            PartitionClass::All => true,
            PartitionClass::Interval => f.interval,
            PartitionClass::Noncrossing => f.noncrossing,
            PartitionClass::NcIrreducible => f.irreducible,
            PartitionClass::NcIrreducibleMin2 => {
                f.irreducible && self.blocks.iter().all(|b| b.len() >= 2)
            }
        }
    }
}

/// Depth-first search over restricted growth strings, pruned so that only
/// partitions of the requested shape are generated. Blocks that may still
/// receive elements sit on a stack; joining a block closes every block
/// opened after it.
fn grow(
    n: usize,
    class: PartitionClass,
    rgs: &mut Vec<usize>,
    open: &mut Vec<usize>,
    blocks: usize,
    out: &mut Vec<SetPartition>,
) {
    if rgs.len() == n {
        let p = SetPartition::from_rgs(rgs);
        if p.is_in(class) {
            out.push(p);
        }
        return;
    }
    let candidates: Vec<usize> = match class {
        PartitionClass::All => (0..blocks).collect(),
        PartitionClass::Interval => rgs.last().copied().into_iter().collect(),
        _ => open.clone(),
    };
    for b in candidates.into_iter().chain(std::iter::once(blocks)) {
        let saved = open.clone();
        if b == blocks {
            open.push(b);
        } else if let Some(pos) = open.iter().position(|&x| x == b) {
            open.truncate(pos + 1);
        }
        rgs.push(b);
        grow(n, class, rgs, open, blocks.max(b + 1), out);
        rgs.pop();
        *open = saved;
    }
}

/// Every partition of `[n]` in `class`, in lexicographic order of restricted
/// growth strings.
pub fn enumerate_partitions(n: usize, class: PartitionClass) -> Vec<SetPartition> {
    let mut out = Vec::new();
    if n > 0 {
        grow(n, class, &mut Vec::with_capacity(n), &mut Vec::new(), 0, &mut out);
    }
    out
}

/// Values of the maximal decreasing consecutive runs of `sigma`.
pub fn druns(sigma: &Permutation) -> SetPartition {
    let w = sigma.images();
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for (i, &x) in w.iter().enumerate() {
        if i == 0 || w[i - 1] < x {
            blocks.push(Vec::new());
        }
        blocks.last_mut().expect("pushed").push(x);
    }
    SetPartition::new(w.len(), blocks).expect("runs cover [n]")
}

/// `σ ∈ S_n` with `σ(1) = n` whose descending runs all have size at least 2,
/// in lexicographic order.
pub fn enumerate_d(n: usize) -> Vec<Permutation> {
    if n == 0 {
        return Vec::new();
    }
    (1..n)
        .permutations(n - 1)
        .map(|rest| {
            let mut images = Vec::with_capacity(n);
            images.push(n);
            images.extend(rest);
            Permutation::new(images).expect("permutation")
        })
        .filter(|s| druns(s).blocks().iter().all(|b| b.len() >= 2))
        .collect()
}

/// `{{a,b},{c}}` with blocks by minimum and elements ascending.
impl fmt::Display for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let inner = self
            .blocks
            .iter()
            .map(|b| format!("{{{}}}", b.iter().join(",")))
            .join(",");
        write!(f, "{{{inner}}}")
    }
}

impl FromStr for SetPartition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || Error::InvalidPartition(format!("cannot parse `{s}`"));
        let inner = compact
            .strip_prefix('{')
            .and_then(|x| x.strip_suffix('}'))
            .ok_or_else(bad)?;
        let mut blocks = Vec::new();
        for chunk in inner.split("},").filter(|c| !c.is_empty()) {
            let chunk = chunk.strip_prefix('{').ok_or_else(bad)?;
            let chunk = chunk.strip_suffix('}').unwrap_or(chunk);
            let block: Vec<usize> = chunk
                .split(',')
                .map(|x| x.parse().map_err(|_| bad()))
                .collect::<Result<_>>()?;
            blocks.push(block);
        }
        let n = blocks.iter().map(Vec::len).sum();
        SetPartition::new(n, blocks)
    }
}
