//! The bijections `Ψ: P(word) → BPT(word)` and `Φ: Q(word) → DBPT(word)`
//! that match partitions or permutations decorated with branches against
//! trees, carrying the branches to the insertion factors.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;

use crate::cumulants::{fmt_word, restrict};
use crate::error::{Error, Result};
use crate::partitions::{druns, enumerate_d, enumerate_partitions, PartitionClass, SetPartition};
use crate::perm::Permutation;
use crate::trees::{
    alpha, alpha_inverse, enumerate_branch, factor_decomposition, insert_with_map, Color,
    ColoredTree, LabeledTree, Node, NodeId, Side,
};

/// Vertices of a branch from the root down, with the side of each edge.
fn branch_path(b: &ColoredTree) -> Result<(Vec<NodeId>, Vec<Side>)> {
    if !b.is_branch() {
        return Err(Error::Malformed(format!("`{b}` is not a branch")));
    }
    let mut path = Vec::with_capacity(b.len());
    let mut sides = Vec::with_capacity(b.len().saturating_sub(1));
    let mut cur = b.root();
    while let Some(v) = cur {
        path.push(v);
        cur = b.node(v).only_child().map(|(side, c)| {
            sides.push(side);
            c
        });
    }
    Ok((path, sides))
}

/// Checks that `branch` is a branch colored by `word|_U` and returns its
/// vertices top-down paired with the labels `U \ {max U}` in decreasing order.
fn attach_labels(word: &[Color], block: &[usize], branch: &ColoredTree) -> Result<Vec<(NodeId, usize)>> {
    let (path, _) = branch_path(branch)?;
    if path.len() + 1 != block.len() {
        return Err(Error::Malformed(format!(
            "branch `{branch}` has {} vertices but its block has {} elements",
            path.len(),
            block.len()
        )));
    }
    let mut read = branch.postorder_colors();
    read.push(branch.box_color());
    if read != restrict(word, block) {
        return Err(Error::Malformed(format!(
            "branch `{branch}` is not colored by the letters at positions {block:?}"
        )));
    }
    let labels = block[..block.len() - 1].iter().rev().copied();
    Ok(path.into_iter().zip(labels).collect())
}

fn same_branches(a: &[ColoredTree], b: &[ColoredTree]) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x.encode() == y.encode())
}

fn fmt_block(b: &[usize]) -> String {
    format!("{{{}}}", b.iter().join(","))
}

/// An element of `P(word)`: an irreducible noncrossing partition with all
/// blocks of size at least 2, and a branch per block (in block order).
#[derive(Debug, Clone)]
pub struct PsiInput {
    pub word: Vec<Color>,
    pub partition: SetPartition,
    pub branches: Vec<ColoredTree>,
}

impl PartialEq for PsiInput {
    fn eq(&self, other: &Self) -> bool {
        self.word == other.word
            && self.partition == other.partition
            && same_branches(&self.branches, &other.branches)
    }
}

impl Eq for PsiInput {}

impl PsiInput {
    pub fn validate(&self) -> Result<()> {
        let n = self.word.len();
        if self.partition.n() != n {
            return Err(Error::Malformed(format!("partition of [{}] for a word of length {n}", self.partition.n())));
        }
        if !self.partition.is_in(PartitionClass::NcIrreducibleMin2) {
            return Err(Error::Malformed(format!(
                "{} is not irreducible noncrossing with blocks of size at least 2",
                self.partition
            )));
        }
        if self.branches.len() != self.partition.blocks().len() {
            return Err(Error::Malformed("one branch per block is required".into()));
        }
        for (b, t) in self.partition.blocks().iter().zip(&self.branches) {
            attach_labels(&self.word, b, t)?;
        }
        Ok(())
    }
}

/// The tree on vertices `1..n-1` read off block by block: block minima are
/// leaves, inner elements `j` have the single child `j - 1` on the side the
/// branch dictates, and block maxima `j < n` have right child `j - 1` and
/// left child `min U - 1`. Node ids are `label - 1`, which is postorder.
pub fn psi(x: &PsiInput) -> Result<ColoredTree> {
    x.validate()?;
    let n = x.word.len();
    let mut nodes: Vec<Node> = (1..n)
        .map(|j| Node { color: x.word[j - 1], left: None, right: None })
        .collect();
    for (block, branch) in x.partition.blocks().iter().zip(&x.branches) {
        let (_, sides) = branch_path(branch)?;
        // sides[i] is below the (i+1)-th largest label of U \ {max U}
        let inner = &block[..block.len() - 1];
        for (k, &j) in inner.iter().enumerate().skip(1) {
            let side = sides[inner.len() - 1 - k];
            let node = &mut nodes[j - 1];
            match side {
                Side::Left => node.left = Some(j - 2),
                Side::Right => node.right = Some(j - 2),
            }
        }
        let max = block[block.len() - 1];
        if max < n {
            let node = &mut nodes[max - 1];
            node.right = Some(max - 2);
            node.left = Some(block[0] - 2);
        }
    }
    let root = (n > 1).then_some(n - 2);
    ColoredTree::from_parts(nodes, root, x.word[n - 1])
}

/// The same map built by inserting the branches one block at a time,
/// blocks ordered by minimum, at vertex `min U - 1`. Returns the tree and
/// the label of every node.
pub fn psi_by_insertion(x: &PsiInput) -> Result<(ColoredTree, Vec<usize>)> {
    x.validate()?;
    let blocks = x.partition.blocks();
    let first = attach_labels(&x.word, &blocks[0], &x.branches[0])?;
    let mut tree = x.branches[0].clone();
    let mut labels = vec![0; tree.len()];
    for (v, l) in first {
        labels[v] = l;
    }
    for (block, branch) in blocks.iter().zip(&x.branches).skip(1) {
        let host = block[0] - 1;
        let v = labels
            .iter()
            .position(|&l| l == host)
            .ok_or_else(|| Error::Malformed(format!("vertex {host} is not placed before block {}", fmt_block(block))))?;
        let ins = insert_with_map(&tree, v, branch)?;
        labels.push(block[block.len() - 1]);
        labels.resize(ins.offset + branch.len(), 0);
        for (u, l) in attach_labels(&x.word, block, branch)? {
            labels[ins.offset + u] = l;
        }
        tree = ins.tree;
    }
    Ok((tree, labels))
}

/// Postorder labels with `⊟` as `n`; the blocks are the insertion factors.
pub fn psi_inverse(t: &ColoredTree) -> Result<PsiInput> {
    let factors = factor_decomposition(t)?;
    let n = t.len() + 1;
    let mut label = vec![0; t.len()];
    for (k, v) in t.postorder().into_iter().enumerate() {
        label[v] = k + 1;
    }
    let mut word = t.postorder_colors();
    word.push(t.box_color());
    let mut pairs: Vec<(Vec<usize>, ColoredTree)> = factors
        .into_iter()
        .map(|f| {
            let mut block: Vec<usize> = f.members.iter().map(|&u| label[u]).collect();
            block.push(f.anchor.map_or(n, |a| label[a]));
            block.sort_unstable();
            (block, f.branch)
        })
        .collect();
    pairs.sort_by_key(|(b, _)| b[0]);
    let (blocks, branches): (Vec<_>, Vec<_>) = pairs.into_iter().unzip();
    Ok(PsiInput { word, partition: SetPartition::new(n, blocks)?, branches })
}

/// Every block paired with every branch colored by its letters.
fn decorate(word: &[Color], blocks: &[Vec<usize>]) -> Result<Vec<Vec<ColoredTree>>> {
    let choices: Vec<Vec<ColoredTree>> = blocks
        .iter()
        .map(|b| enumerate_branch(&restrict(word, b)))
        .collect::<Result<_>>()?;
    Ok(choices.into_iter().multi_cartesian_product().collect())
}

/// All of `P(word)`.
pub fn enumerate_p(word: &[Color]) -> Result<Vec<PsiInput>> {
    let mut out = Vec::new();
    for pi in enumerate_partitions(word.len(), PartitionClass::NcIrreducibleMin2) {
        for branches in decorate(word, pi.blocks())? {
            out.push(PsiInput { word: word.to_vec(), partition: pi.clone(), branches });
        }
    }
    Ok(out)
}

/// An element of `Q(word)`: `σ ∈ 𝔇_n` and a branch per block of `druns(σ)`
/// (in block order).
#[derive(Debug, Clone)]
pub struct PhiInput {
    pub word: Vec<Color>,
    pub sigma: Permutation,
    pub branches: Vec<ColoredTree>,
}

impl PartialEq for PhiInput {
    fn eq(&self, other: &Self) -> bool {
        self.word == other.word && self.sigma == other.sigma && same_branches(&self.branches, &other.branches)
    }
}

impl Eq for PhiInput {}

impl PhiInput {
    pub fn validate(&self) -> Result<()> {
        let n = self.word.len();
        if self.sigma.len() != n || n < 2 || self.sigma.at(1) != n {
            return Err(Error::Malformed(format!("{} must have length {n} and start with {n}", self.sigma)));
        }
        let runs = druns(&self.sigma);
        if runs.blocks().iter().any(|b| b.len() < 2) {
            return Err(Error::Malformed(format!("{} has a descending run of length 1", self.sigma)));
        }
        if self.branches.len() != runs.blocks().len() {
            return Err(Error::Malformed("one branch per descending run is required".into()));
        }
        for (b, t) in runs.blocks().iter().zip(&self.branches) {
            attach_labels(&self.word, b, t)?;
        }
        Ok(())
    }
}

/// `α⁻¹` of `σ` without its first entry, colored by labels.
pub fn phi_tilde(x: &PhiInput) -> Result<LabeledTree> {
    x.validate()?;
    let star = Permutation::new(x.sigma.images()[1..].to_vec())?;
    let mut t = alpha_inverse(&star)?;
    t.color_by_labels(&x.word)?;
    Ok(t)
}

/// [`phi_tilde`] swung at every label whose branch vertex has a left child.
pub fn phi(x: &PhiInput) -> Result<LabeledTree> {
    let mut t = phi_tilde(x)?;
    let runs = druns(&x.sigma);
    let node_of = t.nodes_by_label();
    for (block, branch) in runs.blocks().iter().zip(&x.branches) {
        let (_, sides) = branch_path(branch)?;
        let inner = &block[..block.len() - 1];
        for (i, side) in sides.into_iter().enumerate() {
            if side == Side::Left {
                t = t.swing(node_of[inner[inner.len() - 1 - i]])?;
            }
        }
    }
    Ok(t)
}

/// Every vertex with a left child but no right child swung to the right.
pub fn reverse_motzkin_form(t: &LabeledTree) -> Result<LabeledTree> {
    let mut out = t.clone();
    for (v, node) in t.tree().nodes().iter().enumerate() {
        if node.left.is_some() && node.right.is_none() {
            out = out.swing(v)?;
        }
    }
    Ok(out)
}

/// Every vertex with a left child has a right child.
pub fn is_reverse_motzkin(t: &ColoredTree) -> bool {
    t.nodes().iter().all(|n| n.left.is_none() || n.right.is_some())
}

pub fn phi_inverse(t: &LabeledTree) -> Result<PhiInput> {
    let m = t.len();
    if m == 0 {
        return Err(Error::Precondition("the empty tree has no preimage".into()));
    }
    let n = m + 1;
    let node_of = t.nodes_by_label();
    let mut word: Vec<Color> = (1..=m).map(|k| t.tree().node(node_of[k]).color).collect();
    word.push(t.tree().box_color());
    let tilde = reverse_motzkin_form(t)?;
    let sigma = Permutation::new(std::iter::once(n).chain(alpha(&tilde).images().iter().copied()).collect())?;
    let branches = druns(&sigma)
        .blocks()
        .iter()
        .map(|block| {
            let inner: Vec<usize> = block[..block.len() - 1].iter().rev().copied().collect();
            let colors: Vec<Color> = inner.iter().map(|&k| word[k - 1]).collect();
            let sides: Vec<Side> = inner[..inner.len() - 1]
                .iter()
                .map(|&k| {
                    t.tree()
                        .node(node_of[k])
                        .only_child()
                        .map(|(s, _)| s)
                        .ok_or_else(|| Error::Malformed(format!("vertex {k} should have exactly one child")))
                })
                .collect::<Result<_>>()?;
            ColoredTree::branch(&colors, &sides, word[block[block.len() - 1] - 1])
        })
        .collect::<Result<_>>()?;
    Ok(PhiInput { word, sigma, branches })
}

/// All of `Q(word)`.
pub fn enumerate_q(word: &[Color]) -> Result<Vec<PhiInput>> {
    let mut out = Vec::new();
    for sigma in enumerate_d(word.len()) {
        let runs = druns(&sigma);
        for branches in decorate(word, runs.blocks())? {
            out.push(PhiInput { word: word.to_vec(), sigma: sigma.clone(), branches });
        }
    }
    Ok(out)
}

/// `word i1,...`, then `partition {...}` and one `U -> tree` line per block.
impl fmt::Display for PsiInput {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "word {}", fmt_word(&self.word))?;
        writeln!(f, "partition {}", self.partition)?;
        for (b, t) in self.partition.blocks().iter().zip(&self.branches) {
            writeln!(f, "{} -> {}", fmt_block(b), t)?;
        }
        Ok(())
    }
}

/// `word i1,...`, then `sigma ...` and one `U -> tree` line per run.
impl fmt::Display for PhiInput {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "word {}", fmt_word(&self.word))?;
        writeln!(f, "sigma {}", self.sigma.images().iter().join(" "))?;
        for (b, t) in druns(&self.sigma).blocks().iter().zip(&self.branches) {
            writeln!(f, "{} -> {}", fmt_block(b), t)?;
        }
        Ok(())
    }
}

struct Decorated {
    word: Vec<Color>,
    head: String,
    branches: Vec<(Vec<usize>, ColoredTree)>,
}

fn parse_decorated(s: &str, key: &str) -> Result<Decorated> {
    let mut lines = s
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let mut field = |name: &str| -> Result<(usize, String)> {
        let (ln, l) = lines.next().ok_or(Error::Parse { line: 1, msg: format!("missing `{name}` line") })?;
        let rest = l
            .strip_prefix(name)
            .ok_or_else(|| Error::Parse { line: ln, msg: format!("expected `{name} ...`, got `{l}`") })?;
        Ok((ln, rest.trim().to_string()))
    };
    let (ln, w) = field("word")?;
    let word = w
        .split(',')
        .map(|x| x.trim().parse::<u32>().map(Color))
        .collect::<std::result::Result<Vec<_>, _>>()
        .map_err(|_| Error::Parse { line: ln, msg: format!("bad color word `{w}`") })?;
    let (_, head) = field(key)?;
    let branches = lines
        .map(|(ln, l)| {
            let err = |msg: String| Error::Parse { line: ln, msg };
            let (b, t) = l.split_once("->").ok_or_else(|| err(format!("expected `U -> tree`, got `{l}`")))?;
            let block = b
                .trim()
                .trim_start_matches('{')
                .trim_end_matches('}')
                .split(',')
                .map(|x| x.trim().parse::<usize>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|_| err(format!("bad block `{}`", b.trim())))?;
            let tree: ColoredTree = t.trim().parse().map_err(|e: Error| err(e.to_string()))?;
            Ok((block, tree))
        })
        .collect::<Result<_>>()?;
    Ok(Decorated { word, head, branches })
}

/// Branches listed against `blocks`, in block order.
fn match_blocks(blocks: &[Vec<usize>], given: Vec<(Vec<usize>, ColoredTree)>) -> Result<Vec<ColoredTree>> {
    if given.len() != blocks.len() {
        return Err(Error::Malformed(format!("{} branches for {} blocks", given.len(), blocks.len())));
    }
    blocks
        .iter()
        .map(|b| {
            given
                .iter()
                .find(|(u, _)| u == b)
                .map(|(_, t)| t.clone())
                .ok_or_else(|| Error::Malformed(format!("no branch given for block {}", fmt_block(b))))
        })
        .collect()
}

impl FromStr for PsiInput {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let d = parse_decorated(s, "partition")?;
        let partition: SetPartition = d.head.parse()?;
        let branches = match_blocks(partition.blocks(), d.branches)?;
        let x = PsiInput { word: d.word, partition, branches };
        x.validate()?;
        Ok(x)
    }
}

impl FromStr for PhiInput {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let d = parse_decorated(s, "sigma")?;
        let sigma: Permutation = d.head.parse()?;
        let branches = match_blocks(druns(&sigma).blocks(), d.branches)?;
        let x = PhiInput { word: d.word, sigma, branches };
        x.validate()?;
        Ok(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{catalan, factorial};
    use crate::trees::{
        colors, enumerate_bpt, enumerate_dbpt, factor_multiset, postorder_labeled, singleton_word,
    };
    use num_bigint::BigInt;

    fn sorted_encodings(ts: &[ColoredTree]) -> Vec<String> {
        ts.iter().map(ColoredTree::encode).sorted().collect()
    }

    #[test]
    fn single_block() {
        let word = singleton_word(2);
        for (enc, expect) in [("0:(0 (0 . .) .)", "0:(0 (0 . .) .)"), ("0:(0 . (0 . .))", "0:(0 . (0 . .))")] {
            let x = PsiInput {
                word: word.clone(),
                partition: "{{1,2,3}}".parse().unwrap(),
                branches: vec![enc.parse().unwrap()],
            };
            assert_eq!(psi(&x).unwrap().encode(), expect);
            assert_eq!(psi_inverse(&psi(&x).unwrap()).unwrap(), x);
        }
    }

    #[test]
    fn worked_psi_instance() {
        let word = colors(&[0, 1, 2, 0, 1, 2, 0, 1, 2, 0, 1, 2, 0, 1]);
        let partition: SetPartition = "{{1,11,14},{2,3,8,9,10},{4,5,6,7},{12,13}}".parse().unwrap();
        let sides = [
            vec![Side::Left],
            vec![Side::Right, Side::Left, Side::Right],
            vec![Side::Left, Side::Left],
            vec![],
        ];
        let branches: Vec<ColoredTree> = partition
            .blocks()
            .iter()
            .zip(&sides)
            .map(|(b, s)| {
                let inner: Vec<Color> = b[..b.len() - 1].iter().rev().map(|&k| word[k - 1]).collect();
                ColoredTree::branch(&inner, s, word[b[b.len() - 1] - 1]).unwrap()
            })
            .collect();
        let x = PsiInput { word: word.clone(), partition, branches: branches.clone() };
        let t = psi(&x).unwrap();
        assert_eq!(t.len(), 13);
        // block maxima below n are exactly the two-child vertices
        let two: Vec<usize> = (0..13).filter(|&v| t.node(v).child_count() == 2).map(|v| v + 1).collect();
        assert_eq!(two, vec![7, 10, 13]);
        for (max, min) in [(7, 4), (10, 2), (13, 12)] {
            assert_eq!(t.node(max - 1).right, Some(max - 2));
            assert_eq!(t.node(max - 1).left, Some(min - 2));
        }
        assert_eq!(t.postorder(), (0..13).collect::<Vec<_>>());
        assert_eq!(factor_multiset(&t).unwrap(), sorted_encodings(&branches));
        let (u, labels) = psi_by_insertion(&x).unwrap();
        assert_eq!(u.encode(), t.encode());
        assert_eq!(postorder_labeled(&u).labels(), labels.as_slice());
        assert_eq!(psi_inverse(&t).unwrap(), x);
    }

    #[test]
    fn worked_phi_instance() {
        let word = colors(&[0, 1, 2, 0, 1, 2, 0, 1, 2, 0, 1, 2, 0, 1]);
        let sigma: Permutation = "14 6 5 9 1 13 12 10 4 2 11 8 7 3".parse().unwrap();
        let runs = druns(&sigma);
        assert_eq!(runs, "{{5,6,14},{1,9},{2,4,10,12,13},{3,7,8,11}}".parse().unwrap());
        let branches: Vec<ColoredTree> = runs
            .blocks()
            .iter()
            .map(|b| {
                let inner: Vec<Color> = b[..b.len() - 1].iter().rev().map(|&k| word[k - 1]).collect();
                let sides: Vec<Side> = (1..inner.len()).map(|i| if i % 2 == 1 { Side::Left } else { Side::Right }).collect();
                ColoredTree::branch(&inner, &sides, word[b[b.len() - 1] - 1]).unwrap()
            })
            .collect();
        let x = PhiInput { word, sigma, branches: branches.clone() };
        let tilde = phi_tilde(&x).unwrap();
        assert!(is_reverse_motzkin(tilde.tree()));
        let one_child = tilde.tree().nodes().iter().filter(|n| n.child_count() == 1).count();
        assert_eq!(one_child, 1 + 0 + 3 + 2);
        let t = phi(&x).unwrap();
        assert_eq!(t.tree().two_child_count(), 3);
        assert_eq!(factor_multiset(t.tree()).unwrap(), sorted_encodings(&branches));
        assert_eq!(phi_inverse(&t).unwrap(), x);
    }

    #[test]
    fn smallest_phi() {
        let leaf = LabeledTree::new("0:(0 . .)".parse().unwrap(), vec![1]).unwrap();
        let x = phi_inverse(&leaf).unwrap();
        assert_eq!(x.sigma.to_string(), "21");
        assert_eq!(x.branches[0].encode(), "0:(0 . .)");
        let q3 = enumerate_q(&singleton_word(2)).unwrap();
        assert_eq!(q3.len(), 2);
        let images: Vec<String> = q3.iter().map(|x| phi(x).unwrap().encode()).sorted().collect();
        let dbpt: Vec<String> = enumerate_dbpt(&singleton_word(2)).unwrap().iter().map(|t| t.encode()).sorted().collect();
        assert_eq!(images, dbpt);
    }

    #[test]
    fn psi_is_a_bijection() {
        for n in 2..=7 {
            let word = singleton_word(n - 1);
            let p = enumerate_p(&word).unwrap();
            assert_eq!(BigInt::from(p.len()), catalan(n - 1));
            let mut images = Vec::new();
            for x in &p {
                let t = psi(x).unwrap();
                assert_eq!(psi_by_insertion(x).unwrap().0.encode(), t.encode());
                assert_eq!(&psi_inverse(&t).unwrap(), x);
                assert_eq!(factor_multiset(&t).unwrap(), sorted_encodings(&x.branches));
                images.push(t.encode());
            }
            let bpt: Vec<String> = enumerate_bpt(&word).unwrap().iter().map(|t| t.encode()).sorted().collect();
            images.sort();
            assert_eq!(images, bpt);
        }
    }

    #[test]
    fn phi_is_a_bijection() {
        for n in 2..=6 {
            let word = singleton_word(n - 1);
            let q = enumerate_q(&word).unwrap();
            assert_eq!(BigInt::from(q.len()), factorial(n - 1));
            let mut images = Vec::new();
            for x in &q {
                assert!(is_reverse_motzkin(phi_tilde(x).unwrap().tree()));
                let t = phi(x).unwrap();
                assert_eq!(&phi_inverse(&t).unwrap(), x);
                assert_eq!(factor_multiset(t.tree()).unwrap(), sorted_encodings(&x.branches));
                images.push(t.encode());
            }
            let dbpt: Vec<String> = enumerate_dbpt(&word).unwrap().iter().map(|t| t.encode()).sorted().collect();
            images.sort();
            assert_eq!(images, dbpt);
        }
    }

    #[test]
    fn text_round_trip() {
        let word = colors(&[0, 1, 1, 0, 1]);
        for x in enumerate_p(&word).unwrap() {
            assert_eq!(x.to_string().parse::<PsiInput>().unwrap(), x);
        }
        for x in enumerate_q(&word).unwrap() {
            assert_eq!(x.to_string().parse::<PhiInput>().unwrap(), x);
        }
        let bad = "word 0,0,0\npartition {{1,3},{2}}\n{1,3} -> 0:(0 . .)\n{2} -> 0:(0 . .)\n";
        assert!(bad.parse::<PsiInput>().is_err());
    }
}
