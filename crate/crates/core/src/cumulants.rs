//! Multivariate classical, free and Boolean cumulants of a moment functional,
//! the Boolean-to-free and Boolean-to-classical expansions, and the check
//! that cumulants of tree-defined moments are weighted tree sums.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::partitions::{druns, enumerate_partitions, PartitionClass, SetPartition};
use crate::perm::Permutation;
use crate::ring::RingElem;
use crate::series::FormalPowerSeries;
use crate::trees::{Color, TreeFamily};
use crate::troupes::{color_words, WeightedTroupe};

pub type Word = Vec<Color>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CumulantKind {
    Classical,
    Free,
    Boolean,
}

impl CumulantKind {
    pub const ALL: [CumulantKind; 3] = [CumulantKind::Classical, CumulantKind::Free, CumulantKind::Boolean];

    /// The partitions the moment expansion runs over.
    pub fn class(self) -> PartitionClass {
        match self {
            CumulantKind::Classical => PartitionClass::All,
            CumulantKind::Free => PartitionClass::Noncrossing,
            CumulantKind::Boolean => PartitionClass::Interval,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            CumulantKind::Classical => "classical",
            CumulantKind::Free => "free",
            CumulantKind::Boolean => "boolean",
        }
    }
}

/// A value for every nonempty word of length at most `max_len` over `alphabet`.
#[derive(Debug, Clone, PartialEq)]
pub struct WordTable {
    alphabet: Vec<Color>,
    max_len: usize,
    values: BTreeMap<Word, RingElem>,
}

/// Nonempty words of length at most `max_len`, shortest first.
pub fn words_up_to(alphabet: &[Color], max_len: usize) -> Vec<Word> {
    (1..=max_len).flat_map(|n| color_words(alphabet, n)).collect()
}

impl WordTable {
    pub fn from_fn(alphabet: &[Color], max_len: usize, f: impl Fn(&[Color]) -> RingElem) -> Self {
        let alphabet: Vec<Color> = alphabet.iter().copied().sorted().dedup().collect();
        let values = words_up_to(&alphabet, max_len)
            .into_iter()
            .map(|w| {
                let v = f(&w);
                (w, v)
            })
            .collect();
        WordTable { alphabet, max_len, values }
    }

    /// Fails unless every word over `alphabet` up to `max_len` has a value.
    pub fn from_map(alphabet: &[Color], max_len: usize, values: BTreeMap<Word, RingElem>) -> Result<Self> {
        let alphabet: Vec<Color> = alphabet.iter().copied().sorted().dedup().collect();
        for w in words_up_to(&alphabet, max_len) {
            if !values.contains_key(&w) {
                return Err(Error::Malformed(format!("missing table entry for word {}", fmt_word(&w))));
            }
        }
        if let Some(w) = values.keys().find(|w| w.is_empty() || w.len() > max_len) {
            return Err(Error::Malformed(format!("unexpected word `{}`", fmt_word(w))));
        }
        Ok(WordTable { alphabet, max_len, values })
    }

    pub fn alphabet(&self) -> &[Color] {
        &self.alphabet
    }

    pub fn max_len(&self) -> usize {
        self.max_len
    }

    pub fn get(&self, word: &[Color]) -> Result<&RingElem> {
        self.values
            .get(word)
            .ok_or_else(|| Error::Malformed(format!("missing table entry for word {}", fmt_word(word))))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Word, &RingElem)> {
        self.values.iter()
    }

    /// Values on the words `0^n`, `n = 1..=max_len`, for a one-letter alphabet.
    pub fn sequence(&self) -> Result<Vec<RingElem>> {
        let [c] = self.alphabet[..] else {
            return Err(Error::Precondition("sequence view needs a one-letter alphabet".into()));
        };
        (1..=self.max_len).map(|n| self.get(&vec![c; n]).cloned()).collect()
    }

    /// `∏_{U ∈ π} value(w|_U)`.
    fn block_product(&self, word: &[Color], pi: &SetPartition) -> Result<RingElem> {
        pi.blocks()
            .iter()
            .map(|b| self.get(&restrict(word, b)).cloned())
            .product()
    }
}

/// Letters of `word` at the 1-based positions in `block`, in order.
pub fn restrict(word: &[Color], block: &[usize]) -> Word {
    block.iter().map(|&i| word[i - 1]).collect()
}

pub fn fmt_word(w: &[Color]) -> String {
    w.iter().join(",")
}

/// One `word i1,i2,... = value` line per entry, shortest words first.
impl fmt::Display for WordTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for w in words_up_to(&self.alphabet, self.max_len) {
            writeln!(f, "word {} = {}", fmt_word(&w), self.values[&w])?;
        }
        Ok(())
    }
}

/// Reads the line format back; the alphabet and maximal length are taken
/// from the words present and the table must be dense.
impl FromStr for WordTable {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut values = BTreeMap::new();
        for (i, line) in s.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |msg: String| Error::Parse { line: i + 1, msg };
            let rest = line
                .strip_prefix("word")
                .ok_or_else(|| err(format!("expected `word i1,i2,... = value`, got `{line}`")))?;
            let (w, v) = rest.split_once('=').ok_or_else(|| err("missing `=`".into()))?;
            let word: Word = w
                .split(',')
                .map(|x| x.trim().parse::<u32>().map(Color).map_err(|_| err(format!("bad letter `{}`", x.trim()))))
                .collect::<Result<_>>()?;
            let value: RingElem = v.trim().parse().map_err(|e: Error| err(e.to_string()))?;
            if values.insert(word, value).is_some() {
                return Err(err(format!("duplicate word `{}`", w.trim())));
            }
        }
        let alphabet: Vec<Color> = values.keys().flatten().copied().sorted().dedup().collect();
        let max_len = values.keys().map(Vec::len).max().unwrap_or(0);
        if max_len == 0 {
            return Err(Error::Parse { line: 1, msg: "empty table".into() });
        }
        WordTable::from_map(&alphabet, max_len, values)
    }
}

/// A unital functional given by its values on words; the empty word is 1.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentFunctional {
    table: WordTable,
}

impl MomentFunctional {
    pub fn new(table: WordTable) -> Self {
        MomentFunctional { table }
    }

    pub fn from_fn(alphabet: &[Color], max_len: usize, f: impl Fn(&[Color]) -> RingElem) -> Self {
        Self::new(WordTable::from_fn(alphabet, max_len, f))
    }

    /// One variable with moments `m_0 = 1, m_1, …, m_N`.
    pub fn univariate(moments: &[RingElem]) -> Result<Self> {
        if moments.len() < 2 || !moments[0].is_one() {
            return Err(Error::Precondition("moments must start with m0 = 1 and have length >= 2".into()));
        }
        Ok(Self::from_fn(&[Color(0)], moments.len() - 1, |w| moments[w.len()].clone()))
    }

    pub fn table(&self) -> &WordTable {
        &self.table
    }

    pub fn get(&self, word: &[Color]) -> Result<RingElem> {
        if word.is_empty() {
            Ok(RingElem::one())
        } else {
            self.table.get(word).cloned()
        }
    }

    pub fn max_len(&self) -> usize {
        self.table.max_len
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CumulantTable {
    kind: CumulantKind,
    table: WordTable,
}

impl CumulantTable {
    pub fn new(kind: CumulantKind, table: WordTable) -> Self {
        CumulantTable { kind, table }
    }

    pub fn kind(&self) -> CumulantKind {
        self.kind
    }

    pub fn table(&self) -> &WordTable {
        &self.table
    }

    pub fn get(&self, word: &[Color]) -> Result<RingElem> {
        self.table.get(word).cloned()
    }

    pub fn sequence(&self) -> Result<Vec<RingElem>> {
        self.table.sequence()
    }
}

/// Partitions of `[n]` in the class, `n = 0..=max_len`.
fn partitions_by_size(class: PartitionClass, max_len: usize) -> Vec<Vec<SetPartition>> {
    (0..=max_len).map(|n| enumerate_partitions(n, class)).collect()
}

/// Solves the moment expansion for the cumulants, shortest words first:
/// `c(w) = φ(w) - Σ_π ∏_{U∈π} c(w|_U)` over the non-maximal partitions
/// of the class.
pub fn moments_to_cumulants(phi: &MomentFunctional, kind: CumulantKind) -> Result<CumulantTable> {
    let t = phi.table();
    let parts = partitions_by_size(kind.class(), t.max_len);
    let mut out = WordTable { alphabet: t.alphabet.clone(), max_len: t.max_len, values: BTreeMap::new() };
    for w in words_up_to(&t.alphabet, t.max_len) {
        let mut c = phi.get(&w)?;
        for pi in parts[w.len()].iter().filter(|p| p.blocks().len() > 1) {
            c = &c - &out.block_product(&w, pi)?;
        }
        out.values.insert(w, c);
    }
    Ok(CumulantTable { kind, table: out })
}

/// `φ(w) = Σ_π ∏_{U∈π} c(w|_U)` over the class.
pub fn cumulants_to_moments(c: &CumulantTable) -> Result<MomentFunctional> {
    let t = c.table();
    let parts = partitions_by_size(c.kind.class(), t.max_len);
    let mut values = BTreeMap::new();
    for w in words_up_to(&t.alphabet, t.max_len) {
        let m = parts[w.len()]
            .iter()
            .map(|pi| t.block_product(&w, pi))
            .sum::<Result<RingElem>>()?;
        values.insert(w, m);
    }
    Ok(MomentFunctional::new(WordTable { alphabet: t.alphabet.clone(), max_len: t.max_len, values }))
}

fn require_boolean(b: &CumulantTable) -> Result<()> {
    if b.kind == CumulantKind::Boolean {
        Ok(())
    } else {
        Err(Error::Precondition(format!("expected boolean cumulants, got {}", b.kind.name())))
    }
}

/// `∏_{U∈π} (-B_U)`.
fn negated_product(b: &WordTable, word: &[Color], pi: &SetPartition) -> Result<RingElem> {
    let p = b.block_product(word, pi)?;
    Ok(if pi.blocks().len() % 2 == 1 { -p } else { p })
}

/// `-R(w) = Σ_{π ∈ NC_irr(n)} ∏_{U∈π} (-B(w|_U))`.
pub fn boolean_to_free(b: &CumulantTable) -> Result<CumulantTable> {
    require_boolean(b)?;
    let t = b.table();
    let parts = partitions_by_size(PartitionClass::NcIrreducible, t.max_len);
    let mut values = BTreeMap::new();
    for w in words_up_to(&t.alphabet, t.max_len) {
        let s = parts[w.len()]
            .iter()
            .map(|pi| negated_product(t, &w, pi))
            .sum::<Result<RingElem>>()?;
        values.insert(w, -s);
    }
    Ok(CumulantTable::new(
        CumulantKind::Free,
        WordTable { alphabet: t.alphabet.clone(), max_len: t.max_len, values },
    ))
}

/// Permutations of `[n]` starting with `n`, lexicographic.
fn starting_with_max(n: usize) -> Vec<Permutation> {
    (1..n)
        .permutations(n - 1)
        .map(|rest| Permutation::new(std::iter::once(n).chain(rest).collect()).expect("permutation"))
        .collect()
}

/// `-K(w) = Σ_{σ(1) = n} ∏_{U ∈ druns(σ)} (-B(w|_U))`.
pub fn boolean_to_classical(b: &CumulantTable) -> Result<CumulantTable> {
    require_boolean(b)?;
    let t = b.table();
    let runs: Vec<Vec<SetPartition>> = (0..=t.max_len)
        .map(|n| if n == 0 { Vec::new() } else { starting_with_max(n).iter().map(druns).collect() })
        .collect();
    let mut values = BTreeMap::new();
    for w in words_up_to(&t.alphabet, t.max_len) {
        let s = runs[w.len()]
            .iter()
            .map(|pi| negated_product(t, &w, pi))
            .sum::<Result<RingElem>>()?;
        values.insert(w, -s);
    }
    Ok(CumulantTable::new(
        CumulantKind::Classical,
        WordTable { alphabet: t.alphabet.clone(), max_len: t.max_len, values },
    ))
}

/// `K_1, …, K_N` from `m_0 = 1, m_1, …, m_N` through `Σ K_n tⁿ/n! = log Σ m_n tⁿ/n!`.
pub fn classical_via_egf(moments: &[RingElem]) -> Result<Vec<RingElem>> {
    if moments.first().map_or(true, |m| !m.is_one()) {
        return Err(Error::Precondition("moment sequence must start with m0 = 1".into()));
    }
    let m = FormalPowerSeries::from_egf_sequence(moments)?;
    let mut k = m.log()?.egf_to_sequence();
    k.remove(0);
    Ok(k)
}

/// One of the three conditions at a single word.
#[derive(Debug, Clone, PartialEq)]
pub struct ConditionCheck {
    /// The negated cumulant computed from the moments.
    pub from_moments: RingElem,
    /// The negated cumulant expanded from Boolean cumulants, where applicable.
    pub from_boolean: Option<RingElem>,
    /// The weighted sum over the matching tree family.
    pub tree_sum: RingElem,
}

impl ConditionCheck {
    pub fn holds(&self) -> bool {
        self.from_moments == self.tree_sum
            && self.from_boolean.as_ref().map_or(true, |b| *b == self.tree_sum)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TreeCumulantReport {
    pub word: Word,
    pub classical: ConditionCheck,
    pub free: ConditionCheck,
    pub boolean: ConditionCheck,
    pub all_equal: bool,
}

impl fmt::Display for TreeCumulantReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "word {}", fmt_word(&self.word))?;
        let rows = [
            ("classical", "DBPT", &self.classical),
            ("free", "BPT", &self.free),
            ("boolean", "Branch", &self.boolean),
        ];
        for (name, family, c) in rows {
            write!(f, "  {name:<9} -cumulant = {} | {family} sum = {}", c.from_moments, c.tree_sum)?;
            if let Some(b) = &c.from_boolean {
                write!(f, " | from boolean = {b}")?;
            }
            writeln!(f, " | {}", if c.holds() { "ok" } else { "MISMATCH" })?;
        }
        write!(f, "  {}", if self.all_equal { "pass" } else { "FAIL" })
    }
}

/// Moments built so that `-B(w)` is the branch sum of `tau` for every word,
/// together with all three cumulant tables.
pub struct TreeMoments {
    pub moments: MomentFunctional,
    pub boolean: CumulantTable,
    pub free: CumulantTable,
    pub classical: CumulantTable,
}

impl TreeMoments {
    pub fn new(tau: &WeightedTroupe, alphabet: &[Color], max_len: usize) -> Result<Self> {
        let mut values = BTreeMap::new();
        for w in words_up_to(alphabet, max_len) {
            let s = tau.weighted_sum(TreeFamily::Branch, &w)?;
            values.insert(w, -s);
        }
        let boolean = CumulantTable::new(CumulantKind::Boolean, WordTable::from_map(alphabet, max_len, values)?);
        let moments = cumulants_to_moments(&boolean)?;
        let free = moments_to_cumulants(&moments, CumulantKind::Free)?;
        let classical = moments_to_cumulants(&moments, CumulantKind::Classical)?;
        Ok(TreeMoments { moments, boolean, free, classical })
    }

    /// The Boolean cumulants recomputed from the moments, and the free and
    /// classical cumulants expanded from the Boolean ones.
    fn bridges(&self) -> Result<Bridges> {
        Ok(Bridges {
            boolean: moments_to_cumulants(&self.moments, CumulantKind::Boolean)?,
            free: boolean_to_free(&self.boolean)?,
            classical: boolean_to_classical(&self.boolean)?,
        })
    }

    /// Compares all three conditions at `word` against tree enumeration.
    pub fn check(&self, tau: &WeightedTroupe, word: &[Color]) -> Result<TreeCumulantReport> {
        self.check_with(tau, word, &self.bridges()?)
    }

    fn check_with(&self, tau: &WeightedTroupe, word: &[Color], br: &Bridges) -> Result<TreeCumulantReport> {
        let classical = ConditionCheck {
            from_moments: -self.classical.get(word)?,
            from_boolean: Some(-br.classical.get(word)?),
            tree_sum: tau.weighted_sum(TreeFamily::Dbpt, word)?,
        };
        let free = ConditionCheck {
            from_moments: -self.free.get(word)?,
            from_boolean: Some(-br.free.get(word)?),
            tree_sum: tau.weighted_sum(TreeFamily::Bpt, word)?,
        };
        let boolean = ConditionCheck {
            from_moments: -br.boolean.get(word)?,
            from_boolean: None,
            tree_sum: tau.weighted_sum(TreeFamily::Branch, word)?,
        };
        let all_equal = classical.holds() && free.holds() && boolean.holds();
        Ok(TreeCumulantReport { word: word.to_vec(), classical, free, boolean, all_equal })
    }

    /// Checks every word of the table.
    pub fn check_all(&self, tau: &WeightedTroupe) -> Result<Vec<TreeCumulantReport>> {
        let br = self.bridges()?;
        let t = self.boolean.table();
        words_up_to(&t.alphabet, t.max_len)
            .iter()
            .map(|w| self.check_with(tau, w, &br))
            .collect()
    }
}

struct Bridges {
    boolean: CumulantTable,
    free: CumulantTable,
    classical: CumulantTable,
}

/// Synthesizes moments from the branch sums of `tau` and compares each
/// negated cumulant at `word` with the weighted sum over its tree family.
pub fn verify_tree_cumulants(tau: &WeightedTroupe, word: &[Color]) -> Result<TreeCumulantReport> {
    if word.is_empty() {
        return Err(Error::Precondition("color word must have length at least 1".into()));
    }
    let alphabet: Vec<Color> = word.iter().copied().sorted().dedup().collect();
    TreeMoments::new(tau, &alphabet, word.len())?.check(tau, word)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{catalan, factorial};
    use crate::trees::singleton_word;
    use CumulantKind::*;

    fn ints(xs: &[i64]) -> Vec<RingElem> {
        xs.iter().map(|&x| RingElem::int(x)).collect()
    }

    #[test]
    fn first_cumulants_equal_the_mean() {
        let phi = MomentFunctional::from_fn(&[Color(0), Color(1)], 3, |w| RingElem::int(w.len() as i64 + w[0].0 as i64));
        for kind in CumulantKind::ALL {
            let c = moments_to_cumulants(&phi, kind).unwrap();
            for a in [Color(0), Color(1)] {
                assert_eq!(c.get(&[a]).unwrap(), phi.get(&[a]).unwrap());
            }
        }
    }

    #[test]
    fn fourth_cumulants_of_a_centered_variable() {
        // m1 = 0, m2 = 1, m3 = 0, m4 = 7
        let phi = MomentFunctional::univariate(&ints(&[1, 0, 1, 0, 7])).unwrap();
        let k4 = |kind| moments_to_cumulants(&phi, kind).unwrap().sequence().unwrap()[3].clone();
        assert_eq!(k4(Classical), RingElem::int(7 - 3));
        assert_eq!(k4(Free), RingElem::int(7 - 2));
        assert_eq!(k4(Boolean), RingElem::int(7 - 1));
    }

    #[test]
    fn constant_variable() {
        let phi = MomentFunctional::univariate(&ints(&[1; 7])).unwrap();
        let k = moments_to_cumulants(&phi, Classical).unwrap().sequence().unwrap();
        assert_eq!(k, ints(&[1, 0, 0, 0, 0, 0]));
    }

    #[test]
    fn boolean_pairings() {
        let b = CumulantTable::new(
            Boolean,
            WordTable::from_fn(&[Color(0)], 7, |w| RingElem::int((w.len() == 2) as i64)),
        );
        let m = cumulants_to_moments(&b).unwrap();
        assert_eq!(m.table().sequence().unwrap(), ints(&[0, 1, 0, 1, 0, 1, 0]));
        let zero = CumulantTable::new(Free, WordTable::from_fn(&[Color(0)], 4, |_| RingElem::zero()));
        assert!(cumulants_to_moments(&zero).unwrap().table().iter().all(|(_, v)| v.is_zero()));
    }

    #[test]
    fn bridges_on_small_words() {
        // B1 = 0, B2 = 3, B3 = 5
        let b = CumulantTable::new(Boolean, WordTable::from_fn(&[Color(0)], 3, |w| ints(&[0, 3, 5])[w.len() - 1].clone()));
        let r = boolean_to_free(&b).unwrap().sequence().unwrap();
        let k = boolean_to_classical(&b).unwrap().sequence().unwrap();
        assert_eq!(r, ints(&[0, 3, 5]));
        assert_eq!(k, ints(&[0, 3, 5]));
        assert!(boolean_to_free(&CumulantTable::new(Free, b.table().clone())).is_err());
    }

    #[test]
    fn bridges_agree_with_direct_conversion() {
        let phi = MomentFunctional::from_fn(&[Color(0), Color(1)], 5, |w| {
            RingElem::frac(w.iter().map(|c| c.0 as i64 + 1).product::<i64>() - w.len() as i64, 1 + w[0].0 as i64)
        });
        let b = moments_to_cumulants(&phi, Boolean).unwrap();
        assert_eq!(boolean_to_free(&b).unwrap(), moments_to_cumulants(&phi, Free).unwrap());
        assert_eq!(boolean_to_classical(&b).unwrap(), moments_to_cumulants(&phi, Classical).unwrap());
    }

    #[test]
    fn egf_route() {
        // m_n = 1 - n: log M = t + log(1 - t)
        let m: Vec<RingElem> = (0..=8).map(|n| RingElem::int(1 - n)).collect();
        let k = classical_via_egf(&m).unwrap();
        assert_eq!(k[0], RingElem::zero());
        for n in 2..=8 {
            assert_eq!(k[n - 1], -RingElem::big(factorial(n - 1)));
        }
        let direct = moments_to_cumulants(&MomentFunctional::univariate(&m).unwrap(), Classical).unwrap();
        assert_eq!(direct.sequence().unwrap(), k);
        assert!(classical_via_egf(&ints(&[2, 1])).is_err());
    }

    #[test]
    fn all_troupe_singleton() {
        let tau = WeightedTroupe::all();
        for len in 2..=7 {
            let r = verify_tree_cumulants(&tau, &singleton_word(len - 1)).unwrap();
            assert!(r.all_equal, "{r}");
            assert_eq!(r.classical.tree_sum, RingElem::big(factorial(len - 1)));
            assert_eq!(r.free.tree_sum, RingElem::big(catalan(len - 1)));
            assert_eq!(r.boolean.tree_sum, RingElem::int(1 << (len - 2)));
        }
    }

    #[test]
    fn two_letter_random_troupe() {
        let tau = WeightedTroupe::random_table(11, &[Color(0), Color(1)], 4, RingElem::zero());
        let tm = TreeMoments::new(&tau, &[Color(0), Color(1)], 5).unwrap();
        for r in tm.check_all(&tau).unwrap() {
            assert!(r.all_equal, "{r}");
        }
    }

    #[test]
    fn table_text_round_trip() {
        let phi = MomentFunctional::from_fn(&[Color(0), Color(2)], 3, |w| {
            &RingElem::q().pow(w.len() as u32) + &RingElem::frac(w[0].0 as i64, 3)
        });
        let text = phi.table().to_string();
        assert!(text.starts_with("word 0 = 1*q\n"));
        let back: WordTable = text.parse().unwrap();
        assert_eq!(back, *phi.table());
        let missing: Result<WordTable> = "word 0 = 1\nword 0,0 = 2\nword 1 = 3\n".parse();
        assert!(matches!(missing, Err(Error::Malformed(_))));
        let bad: Result<WordTable> = "word 0 = 1\nword 0,x = 2\n".parse();
        assert!(matches!(bad, Err(Error::Parse { line: 2, .. })));
    }
}
