//! Weighted troupes, described by their values on branches and extended to
//! every tree multiplicatively over insertion factors.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::RwLock;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::ring::RingElem;
use crate::trees::{
    branch_shapes, enumerate, insertion_factors, Color, ColoredTree, TreeFamily,
};

/// Which branches an indicator-style troupe keeps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Support {
    All,
    /// Full trees; the only branches are single vertices.
    Full,
    /// Motzkin trees; branches without right edges.
    Motzkin,
    /// Every vertex with a left child and `⊟` are colored from the set.
    ColorSet(BTreeSet<Color>),
}

impl Support {
    /// Membership of a branch.
    pub fn contains_branch(&self, b: &ColoredTree) -> bool {
        match self {
            Support::All => true,
            Support::Full => b.len() == 1,
            Support::Motzkin => b.right_edges() == 0,
            Support::ColorSet(_) => self.contains_tree(b),
        }
    }

    /// Membership of an arbitrary nonempty tree, straight from the definition.
    pub fn contains_tree(&self, t: &ColoredTree) -> bool {
        if t.is_empty() {
            return false;
        }
        let nodes = t.nodes();
        match self {
            Support::All => true,
            Support::Full => nodes.iter().all(|n| n.child_count() != 1),
            Support::Motzkin => nodes.iter().all(|n| n.right.is_none() || n.left.is_some()),
            Support::ColorSet(j) => {
                j.contains(&t.box_color())
                    && nodes.iter().all(|n| n.left.is_none() || j.contains(&n.color))
            }
        }
    }
}

/// A rule assigning a weight to every branch.
#[derive(Debug, Clone, PartialEq)]
pub enum BranchRule {
    Indicator(Support),
    /// `q1^(right + 1) * q2` on supported branches.
    RightTwoMonomial { support: Support, q1: RingElem, q2: RingElem },
    /// `t^k` on supported branches, `k` counting vertices and `⊟` colored in `colors`.
    ColorCount { support: Support, colors: BTreeSet<Color>, t: RingElem },
    /// Explicit weights keyed by branch encoding.
    Table { entries: HashMap<String, RingElem>, default: RingElem },
}

impl BranchRule {
    fn weight(&self, b: &ColoredTree) -> RingElem {
        let gate = |s: &Support, w: RingElem| {
            if s.contains_branch(b) {
                w
            } else {
                RingElem::zero()
            }
        };
        match self {
            BranchRule::Indicator(s) => gate(s, RingElem::one()),
            BranchRule::RightTwoMonomial { support, q1, q2 } => {
                gate(support, &q1.pow(b.right_edges() as u32 + 1) * q2)
            }
            BranchRule::ColorCount { support, colors, t } => {
                gate(support, t.pow(color_count(b, colors) as u32))
            }
            BranchRule::Table { entries, default } => {
                entries.get(&b.encode()).cloned().unwrap_or_else(|| default.clone())
            }
        }
    }
}

/// Vertices plus `⊟` whose color lies in `j`.
pub fn color_count(t: &ColoredTree, j: &BTreeSet<Color>) -> usize {
    t.nodes().iter().filter(|n| j.contains(&n.color)).count() + usize::from(j.contains(&t.box_color()))
}

/// A weighted troupe with a shared memo of branch weights.
pub struct WeightedTroupe {
    rule: BranchRule,
    cache: RwLock<HashMap<String, RingElem>>,
}

impl WeightedTroupe {
    pub fn new(rule: BranchRule) -> Self {
        WeightedTroupe { rule, cache: RwLock::new(HashMap::new()) }
    }

    pub fn rule(&self) -> &BranchRule {
        &self.rule
    }

    pub fn all() -> Self {
        Self::new(BranchRule::Indicator(Support::All))
    }

    pub fn full() -> Self {
        Self::new(BranchRule::Indicator(Support::Full))
    }

    pub fn motzkin() -> Self {
        Self::new(BranchRule::Indicator(Support::Motzkin))
    }

    pub fn color_constrained(j: impl IntoIterator<Item = Color>) -> Self {
        Self::new(BranchRule::Indicator(Support::ColorSet(j.into_iter().collect())))
    }

    /// `q1^(right(T)+1) q2^(two(T)+1)` on every nonempty tree.
    pub fn right_two_monomial(q1: RingElem, q2: RingElem) -> Self {
        Self::new(BranchRule::RightTwoMonomial { support: Support::All, q1, q2 })
    }

    /// `t^|χ⁻¹(J)|` on every nonempty tree.
    pub fn color_count(j: impl IntoIterator<Item = Color>, t: RingElem) -> Self {
        Self::new(BranchRule::ColorCount {
            support: Support::All,
            colors: j.into_iter().collect(),
            t,
        })
    }

    pub fn table(entries: HashMap<String, RingElem>, default: RingElem) -> Self {
        Self::new(BranchRule::Table { entries, default })
    }

    /// Random small rationals on every branch of size at most `max_size`
    /// colored from `palette`; larger branches get `default`.
    pub fn random_table(seed: u64, palette: &[Color], max_size: usize, default: RingElem) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut entries = HashMap::new();
        for n in 1..=max_size {
            for shape in branch_shapes(n) {
                for word in color_words(palette, n + 1) {
                    let mut b = shape.clone();
                    b.color_by_postorder(&word).expect("sizes match");
                    let w = RingElem::frac(rng.gen_range(-4..=4), rng.gen_range(1..=3));
                    entries.insert(b.encode(), w);
                }
            }
        }
        Self::table(entries, default)
    }

    /// Looks a built-in up by its command-line name: `all`, `full`,
    /// `motzkin`, `colorset:J`, `rightmono:q1,q2` or `colorcount:J`, where
    /// `J` is a comma separated list of colors. `colorcount` uses `t = q`.
    pub fn builtin(name: &str) -> Result<Self> {
        let (head, arg) = match name.split_once(':') {
            Some((h, a)) => (h.trim(), Some(a)),
            None => (name.trim(), None),
        };
        let colors = |a: Option<&str>| -> Result<BTreeSet<Color>> {
            let a = a.ok_or_else(|| Error::UnknownName(format!("{name}: missing color set")))?;
            a.split(',')
                .filter(|s| !s.trim().is_empty())
                .map(|s| {
                    s.trim()
                        .parse::<u32>()
                        .map(Color)
                        .map_err(|_| Error::UnknownName(format!("{name}: bad color `{s}`")))
                })
                .collect()
        };
        match (head, arg) {
            ("all", None) => Ok(Self::all()),
            ("full", None) => Ok(Self::full()),
            ("motzkin", None) => Ok(Self::motzkin()),
            ("colorset", a) => Ok(Self::color_constrained(colors(a)?)),
            ("colorcount", a) => Ok(Self::color_count(colors(a)?, RingElem::q())),
            ("rightmono", Some(a)) => {
                let parts: Vec<&str> = a.split(',').collect();
                let [q1, q2] = parts.as_slice() else {
                    return Err(Error::UnknownName(format!("{name}: expected two parameters")));
                };
                let parse = |s: &str| {
                    s.parse::<RingElem>()
                        .map_err(|_| Error::UnknownName(format!("{name}: bad parameter `{s}`")))
                };
                Ok(Self::right_two_monomial(parse(q1)?, parse(q2)?))
            }
            _ => Err(Error::UnknownName(name.to_string())),
        }
    }

    pub fn branch_weight(&self, b: &ColoredTree) -> RingElem {
        let key = b.encode();
        if let Some(w) = self.cache.read().expect("cache lock").get(&key) {
            return w.clone();
        }
        let w = self.rule.weight(b);
        self.cache.write().expect("cache lock").insert(key, w.clone());
        w
    }

    /// `τ(∅) = 0`, otherwise the product of the weights of the insertion factors.
    pub fn evaluate(&self, t: &ColoredTree) -> RingElem {
        if t.is_empty() {
            return RingElem::zero();
        }
        insertion_factors(t)
            .expect("nonempty tree")
            .iter()
            .map(|b| self.branch_weight(b))
            .product()
    }

    /// Sum of `τ` over the trees of `family` colored by `word`.
    pub fn weighted_sum(&self, family: TreeFamily, word: &[Color]) -> Result<RingElem> {
        Ok(enumerate(family, word)?.iter().map(|t| self.evaluate(t.tree())).sum())
    }
}

impl Clone for WeightedTroupe {
    fn clone(&self) -> Self {
        Self::new(self.rule.clone())
    }
}

impl fmt::Debug for WeightedTroupe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("WeightedTroupe").field("rule", &self.rule).finish_non_exhaustive()
    }
}

/// All words of length `len` over `palette`, lexicographic.
pub fn color_words(palette: &[Color], len: usize) -> Vec<Vec<Color>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|w| {
                palette.iter().map(move |&c| {
                    let mut w = w.clone();
                    w.push(c);
                    w
                })
            })
            .collect();
    }
    out
}
