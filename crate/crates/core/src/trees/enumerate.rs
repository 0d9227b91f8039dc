//! Exhaustive, deterministically ordered enumerators.
//!
//! Shapes of size `n` are listed left-subtree-size-major: for `k = 0..n` all
//! trees whose left subtree has `k` vertices, ordered by left subtree and
//! then right subtree recursively. Branches inherit that order. Decreasing
//! trees follow the lexicographic order of their inorder readings.

use crate::error::{Error, Result};
use crate::perm::Permutation;

use super::{alpha_inverse, postorder_labeled, Color, ColoredTree, LabeledTree};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TreeFamily {
    Bpt,
    Branch,
    Dbpt,
}

/// All binary plane trees of size `n`, uncolored; `C_n` of them.
pub fn bpt_shapes(n: usize) -> Vec<ColoredTree> {
    let zero = Color(0);
    let mut by_size: Vec<Vec<ColoredTree>> = vec![vec![ColoredTree::empty(zero)]];
    for size in 1..=n {
        let mut level = Vec::new();
        for k in 0..size {
            for l in &by_size[k] {
                for r in &by_size[size - 1 - k] {
                    let opt = |t: &ColoredTree| (!t.is_empty()).then_some(t.clone());
                    let (l, r) = (opt(l), opt(r));
                    level.push(ColoredTree::join(zero, l.as_ref(), r.as_ref(), zero));
                }
            }
        }
        by_size.push(level);
    }
    by_size.swap_remove(n)
}

/// All branches of size `n`, uncolored; `2^{n-1}` of them, none for `n = 0`.
pub fn branch_shapes(n: usize) -> Vec<ColoredTree> {
    let zero = Color(0);
    match n {
        0 => Vec::new(),
        1 => vec![ColoredTree::leaf(zero, zero)],
        _ => {
            let smaller = branch_shapes(n - 1);
            let rights = smaller.iter().map(|b| ColoredTree::join(zero, None, Some(b), zero));
            let lefts = smaller.iter().map(|b| ColoredTree::join(zero, Some(b), None, zero));
            rights.chain(lefts).collect()
        }
    }
}

fn require_word(word: &[Color]) -> Result<()> {
    if word.is_empty() {
        Err(Error::Precondition("color word must have length at least 1".into()))
    } else {
        Ok(())
    }
}

fn colored(shapes: Vec<ColoredTree>, word: &[Color]) -> Vec<ColoredTree> {
    shapes
        .into_iter()
        .map(|mut t| {
            t.color_by_postorder(word).expect("sizes match");
            t
        })
        .collect()
}

/// `BPT(i₁,…,iₙ)`: trees of size `n - 1` whose vertices read `i₁…i_{n-1}`
/// in postorder, with `⊟` colored `iₙ`.
pub fn enumerate_bpt(word: &[Color]) -> Result<Vec<ColoredTree>> {
    require_word(word)?;
    Ok(colored(bpt_shapes(word.len() - 1), word))
}

/// `Branch(i₁,…,iₙ)`, the branches inside `BPT(i₁,…,iₙ)`.
pub fn enumerate_branch(word: &[Color]) -> Result<Vec<ColoredTree>> {
    require_word(word)?;
    Ok(colored(branch_shapes(word.len() - 1), word))
}

/// `DBPT(i₁,…,iₙ)`: decreasing trees of size `n - 1` where the vertex with
/// label `k` has color `i_k` and `⊟` has color `iₙ`.
pub fn enumerate_dbpt(word: &[Color]) -> Result<Vec<LabeledTree>> {
    require_word(word)?;
    let m = word.len() - 1;
    if m == 0 {
        let t = LabeledTree::new(ColoredTree::empty(word[0]), Vec::new())?;
        return Ok(vec![t]);
    }
    Permutation::all(m)
        .map(|sigma| {
            let mut t = alpha_inverse(&sigma)?;
            t.color_by_labels(word)?;
            Ok(t)
        })
        .collect()
}

/// Any of the three families, each tree carrying a decreasing labeling
/// (postorder for `Bpt` and `Branch`).
pub fn enumerate(family: TreeFamily, word: &[Color]) -> Result<Vec<LabeledTree>> {
    match family {
        TreeFamily::Bpt => Ok(enumerate_bpt(word)?.iter().map(postorder_labeled).collect()),
        TreeFamily::Branch => Ok(enumerate_branch(word)?.iter().map(postorder_labeled).collect()),
        TreeFamily::Dbpt => enumerate_dbpt(word),
    }
}

/// The all-zero word for trees of size `size` over a one-color index set.
pub fn singleton_word(size: usize) -> Vec<Color> {
    vec![Color(0); size + 1]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trees::colors;

    #[test]
    fn counts() {
        let catalan = [1, 1, 2, 5, 14, 42, 132];
        for (n, &c) in catalan.iter().enumerate() {
            assert_eq!(bpt_shapes(n).len(), c);
        }
        assert_eq!(bpt_shapes(3).len(), 5);
        assert_eq!(branch_shapes(4).len(), 8);
        assert_eq!(enumerate_dbpt(&singleton_word(4)).unwrap().len(), 24);
        assert_eq!(enumerate_dbpt(&singleton_word(0)).unwrap().len(), 1);
        assert!(enumerate_branch(&singleton_word(0)).unwrap().is_empty());
        assert!(enumerate_bpt(&[]).is_err());
    }

    #[test]
    fn documented_order() {
        let enc: Vec<String> = bpt_shapes(2).iter().map(|t| t.encode()).collect();
        assert_eq!(enc, ["0:(0 . (0 . .))", "0:(0 (0 . .) .)"]);
    }

    #[test]
    fn branches_follow_tree_order() {
        for n in 1..=6 {
            let filtered: Vec<String> = bpt_shapes(n)
                .into_iter()
                .filter(ColoredTree::is_branch)
                .map(|t| t.encode())
                .collect();
            let direct: Vec<String> = branch_shapes(n).iter().map(|t| t.encode()).collect();
            assert_eq!(filtered, direct);
        }
    }

    #[test]
    fn shapes_are_distinct() {
        for n in 0..=7 {
            let mut enc: Vec<String> = bpt_shapes(n).iter().map(|t| t.encode()).collect();
            let total = enc.len();
            enc.sort();
            enc.dedup();
            assert_eq!(enc.len(), total);
        }
    }

    #[test]
    fn colored_word_keeps_shape_count() {
        // Each shape admits exactly one coloring with a prescribed postorder word.
        let catalan = [1usize, 1, 2, 5, 14, 42];
        for n in 1..=6 {
            for bits in 0u32..(1 << n) {
                let word: Vec<u32> = (0..n).map(|k| (bits >> k) & 1).collect();
                let trees = enumerate_bpt(&colors(&word)).unwrap();
                assert_eq!(trees.len(), catalan[n - 1]);
                for t in &trees {
                    let mut read = t.postorder_colors();
                    read.push(t.box_color());
                    assert_eq!(read, colors(&word));
                }
            }
        }
    }
}
