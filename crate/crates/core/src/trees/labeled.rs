use crate::error::{Error, Result};
use crate::perm::Permutation;

use super::{swing, Color, ColoredTree, Node, NodeId};

/// A colored tree with a standard decreasing labeling: labels are `1..=n`,
/// each used once, and every vertex outranks its children.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledTree {
    tree: ColoredTree,
    labels: Vec<usize>,
}

impl LabeledTree {
    pub fn new(tree: ColoredTree, labels: Vec<usize>) -> Result<Self> {
        let n = tree.len();
        if labels.len() != n {
            return Err(Error::InvalidTree(format!("{} labels for {n} vertices", labels.len())));
        }
        let mut seen = vec![false; n + 1];
        for &l in &labels {
            if l == 0 || l > n || seen[l] {
                return Err(Error::InvalidTree(format!("labeling {labels:?} is not standard")));
            }
            seen[l] = true;
        }
        for (v, node) in tree.nodes().iter().enumerate() {
            for c in [node.left, node.right].into_iter().flatten() {
                if labels[c] > labels[v] {
                    return Err(Error::InvalidTree(format!(
                        "label {} below label {} is not decreasing",
                        labels[c], labels[v]
                    )));
                }
            }
        }
        Ok(LabeledTree { tree, labels })
    }

    pub fn tree(&self) -> &ColoredTree {
        &self.tree
    }

    pub fn into_tree(self) -> ColoredTree {
        self.tree
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn label(&self, v: NodeId) -> usize {
        self.labels[v]
    }

    pub fn len(&self) -> usize {
        self.tree.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tree.is_empty()
    }

    /// `node_of[label]` for labels `1..=n`; index 0 is unused.
    pub fn nodes_by_label(&self) -> Vec<NodeId> {
        let mut out = vec![usize::MAX; self.len() + 1];
        for (v, &l) in self.labels.iter().enumerate() {
            out[l] = v;
        }
        out
    }

    /// Colors vertex `v` by `word[label(v) - 1]` and `⊟` by the last letter.
    pub fn color_by_labels(&mut self, word: &[Color]) -> Result<()> {
        if word.len() != self.len() + 1 {
            return Err(Error::Precondition(format!(
                "color word of length {} for a tree of size {}",
                word.len(),
                self.len()
            )));
        }
        for v in 0..self.len() {
            self.tree.set_color(v, word[self.labels[v] - 1]);
        }
        self.tree.set_box_color(word[self.len()]);
        Ok(())
    }

    /// Swings at `v`; labels are untouched, so the result stays decreasing.
    pub fn swing(&self, v: NodeId) -> Result<Self> {
        LabeledTree::new(swing(&self.tree, v)?, self.labels.clone())
    }

    /// Labels and colors together, independent of node ids.
    pub fn encode(&self) -> String {
        use std::fmt::Write;
        fn go(t: &LabeledTree, v: Option<NodeId>, out: &mut String) {
            match v {
                None => out.push('.'),
                Some(v) => {
                    let _ = write!(out, "({}#{} ", t.labels[v], t.tree.node(v).color);
                    go(t, t.tree.node(v).left, out);
                    out.push(' ');
                    go(t, t.tree.node(v).right, out);
                    out.push(')');
                }
            }
        }
        let mut out = format!("{}:", self.tree.box_color());
        go(self, self.tree.root(), &mut out);
        out
    }
}

/// Reads back [`LabeledTree::encode`].
impl std::str::FromStr for LabeledTree {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (tree, labels) = super::decode(s)?;
        let labels = labels
            .into_iter()
            .collect::<Option<Vec<usize>>>()
            .ok_or_else(|| Error::Malformed(format!("`{s}` has an unlabeled vertex")))?;
        LabeledTree::new(tree, labels)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Traversal {
    Inorder,
    Postorder,
}

/// Labels `1..=n` assigned in the requested traversal order, indexed by node.
pub fn traversal_labeling(t: &ColoredTree, kind: Traversal) -> Result<Vec<usize>> {
    if t.is_empty() {
        return Err(Error::Precondition("traversal labeling of the empty tree".into()));
    }
    let order = match kind {
        Traversal::Inorder => t.inorder(),
        Traversal::Postorder => t.postorder(),
    };
    let mut labels = vec![0; t.len()];
    for (k, v) in order.into_iter().enumerate() {
        labels[v] = k + 1;
    }
    Ok(labels)
}

/// The injection `BPT -> DBPT` equipping a tree with its postorder labeling.
pub fn postorder_labeled(t: &ColoredTree) -> LabeledTree {
    let mut labels = vec![0; t.len()];
    for (k, v) in t.postorder().into_iter().enumerate() {
        labels[v] = k + 1;
    }
    LabeledTree { tree: t.clone(), labels }
}

/// Labels read in inorder.
pub fn alpha(t: &LabeledTree) -> Permutation {
    Permutation::new(t.tree.inorder().into_iter().map(|v| t.labels[v]).collect())
        .expect("standard labeling")
}

/// Labels read in postorder.
pub fn beta(t: &LabeledTree) -> Permutation {
    Permutation::new(t.tree.postorder().into_iter().map(|v| t.labels[v]).collect())
        .expect("standard labeling")
}

/// The decreasing tree whose inorder reading is `sigma`: the maximum is the
/// root, the prefix before it the left subtree, the suffix the right one.
/// Vertices are colored 0 and node ids follow postorder.
pub fn alpha_inverse(sigma: &Permutation) -> Result<LabeledTree> {
    if sigma.is_empty() {
        return Err(Error::InvalidPermutation("alpha inverse of the empty permutation".into()));
    }
    fn build(w: &[usize], nodes: &mut Vec<Node>, labels: &mut Vec<usize>) -> Option<NodeId> {
        let (m, &max) = w.iter().enumerate().max_by_key(|(_, &x)| x)?;
        let left = build(&w[..m], nodes, labels);
        let right = build(&w[m + 1..], nodes, labels);
        nodes.push(Node { color: Color(0), left, right });
        labels.push(max);
        Some(nodes.len() - 1)
    }
    let mut nodes = Vec::with_capacity(sigma.len());
    let mut labels = Vec::with_capacity(sigma.len());
    let root = build(sigma.images(), &mut nodes, &mut labels);
    let tree = ColoredTree::from_parts(nodes, root, Color(0))?;
    Ok(LabeledTree { tree, labels })
}

/// West's stack-sorting map, the postorder reading of `alpha_inverse(sigma)`.
pub fn stack_sort(sigma: &Permutation) -> Permutation {
    if sigma.is_empty() {
        return sigma.clone();
    }
    beta(&alpha_inverse(sigma).expect("nonempty"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trees::Traversal::{Inorder, Postorder};

    fn perm(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn encode_parses_back() {
        for p in Permutation::all(5) {
            let t = alpha_inverse(&p).unwrap();
            let back: LabeledTree = t.encode().parse().unwrap();
            assert_eq!(back.encode(), t.encode());
            assert_eq!(alpha(&back), p);
        }
        assert!("0:(2#0 . .)".parse::<LabeledTree>().is_err());
        assert!("0:(1#0 . (0 . .))".parse::<LabeledTree>().is_err());
        assert!("0:(1#0 . .)".parse::<ColoredTree>().is_err());
    }

    fn tree(s: &str) -> ColoredTree {
        s.parse().unwrap()
    }

    #[test]
    fn labelings_of_small_trees() {
        let single = tree("0:(0 . .)");
        assert_eq!(traversal_labeling(&single, Inorder).unwrap(), vec![1]);
        assert_eq!(traversal_labeling(&single, Postorder).unwrap(), vec![1]);

        // ids: child=0, root=1
        let left = tree("0:(0 (0 . .) .)");
        assert_eq!(traversal_labeling(&left, Inorder).unwrap(), vec![1, 2]);
        assert_eq!(traversal_labeling(&left, Postorder).unwrap(), vec![1, 2]);

        // ids: left=0, right=1, root=2
        let cherry = tree("0:(0 (0 . .) (0 . .))");
        assert_eq!(traversal_labeling(&cherry, Inorder).unwrap(), vec![1, 3, 2]);
        assert_eq!(traversal_labeling(&cherry, Postorder).unwrap(), vec![1, 2, 3]);

        assert!(traversal_labeling(&ColoredTree::empty(Color(0)), Inorder).is_err());
    }

    #[test]
    fn alpha_examples() {
        let single = LabeledTree::new(tree("0:(0 . .)"), vec![1]).unwrap();
        assert_eq!(alpha(&single), perm("1"));
        // root 2 with right child 1: ids child=0, root=1
        let t = LabeledTree::new(tree("0:(0 . (0 . .))"), vec![1, 2]).unwrap();
        assert_eq!(alpha(&t), perm("21"));
        // root 3 over 2 over 1, all left
        let t = LabeledTree::new(tree("0:(0 (0 (0 . .) .) .)"), vec![1, 2, 3]).unwrap();
        assert_eq!(alpha(&t), perm("123"));
    }

    #[test]
    fn alpha_inverse_examples() {
        assert_eq!(alpha_inverse(&perm("1")).unwrap().tree().encode(), "0:(0 . .)");
        let t = alpha_inverse(&perm("231")).unwrap();
        assert_eq!(t.tree().encode(), "0:(0 (0 . .) (0 . .))");
        let root = t.tree().root().unwrap();
        assert_eq!(t.label(root), 3);
        assert_eq!(t.label(t.tree().node(root).left.unwrap()), 2);
        assert_eq!(t.label(t.tree().node(root).right.unwrap()), 1);
        assert_eq!(alpha_inverse(&perm("123")).unwrap().tree().encode(), "0:(0 (0 (0 . .) .) .)");
        assert!(alpha_inverse(&Permutation::identity(0)).is_err());
    }

    #[test]
    fn stack_sort_examples() {
        assert_eq!(stack_sort(&perm("123")), perm("123"));
        assert_eq!(stack_sort(&perm("231")), perm("213"));
        assert_eq!(stack_sort(&perm("321")), perm("123"));
    }

    #[test]
    fn rejects_bad_labelings() {
        let t = tree("0:(0 (0 . .) .)");
        assert!(LabeledTree::new(t.clone(), vec![2, 1]).is_err());
        assert!(LabeledTree::new(t.clone(), vec![1, 1]).is_err());
        assert!(LabeledTree::new(t, vec![1]).is_err());
    }
}
