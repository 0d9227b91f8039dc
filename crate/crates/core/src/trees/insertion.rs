//! Insertion `∇_v(T₁, T₂)`, the inverse decomposition of a tree into its
//! insertion factors, and swinging.

use crate::error::{Error, Result};

use super::{ColoredTree, LabeledTree, Node, NodeId, Side};

/// Result of [`insert_with_map`]: vertex `k` of `T₁` keeps id `k`, the new
/// vertex `v*` gets id `|T₁|`, and vertex `k` of `T₂` becomes `offset + k`.
#[derive(Debug, Clone)]
pub struct Inserted {
    pub tree: ColoredTree,
    pub star: NodeId,
    pub offset: usize,
}

/// Grafts `t2` onto `t1` at `v`: a new vertex `v*` takes the place of `v`,
/// `v` hangs below it as a left child and `t2` becomes its right subtree.
/// `v*` gets the `⊟` color of `t2`; the result keeps the `⊟` color of `t1`.
pub fn insert_with_map(t1: &ColoredTree, v: NodeId, t2: &ColoredTree) -> Result<Inserted> {
    if t1.is_empty() || t2.is_empty() {
        return Err(Error::Precondition("insertion needs two nonempty trees".into()));
    }
    if !t1.contains(v) {
        return Err(Error::Precondition(format!("vertex {v} is not in the host tree")));
    }
    let star = t1.len();
    let offset = star + 1;
    let mut nodes: Vec<Node> = t1.nodes().to_vec();
    for n in &mut nodes {
        if n.left == Some(v) {
            n.left = Some(star);
        }
        if n.right == Some(v) {
            n.right = Some(star);
        }
    }
    nodes.push(Node {
        color: t2.box_color(),
        left: Some(v),
        right: t2.root().map(|r| r + offset),
    });
    nodes.extend(t2.nodes().iter().map(|n| Node {
        color: n.color,
        left: n.left.map(|c| c + offset),
        right: n.right.map(|c| c + offset),
    }));
    let root = if t1.root() == Some(v) { Some(star) } else { t1.root() };
    let tree = ColoredTree::from_parts(nodes, root, t1.box_color())?;
    Ok(Inserted { tree, star, offset })
}

pub fn insert(t1: &ColoredTree, v: NodeId, t2: &ColoredTree) -> Result<ColoredTree> {
    insert_with_map(t1, v, t2).map(|i| i.tree)
}

/// Moves the only child of `v` to the other side.
pub fn swing(t: &ColoredTree, v: NodeId) -> Result<ColoredTree> {
    if !t.contains(v) {
        return Err(Error::Precondition(format!("vertex {v} is not in the tree")));
    }
    let node = t.node(v);
    if node.child_count() != 1 {
        return Err(Error::Precondition(format!(
            "swing needs exactly one child, vertex {v} has {}",
            node.child_count()
        )));
    }
    let mut nodes = t.nodes().to_vec();
    let n = &mut nodes[v];
    std::mem::swap(&mut n.left, &mut n.right);
    ColoredTree::from_parts(nodes, t.root(), t.box_color())
}

/// One insertion factor: the block `γ⁻¹(anchor)` minus the anchor itself.
#[derive(Debug, Clone)]
pub struct Factor {
    /// Two-child vertex owning the block, `None` for `⊟`.
    pub anchor: Option<NodeId>,
    /// Vertices of the block from the top of the branch down.
    pub members: Vec<NodeId>,
    /// The factor as a branch whose vertex `i` is `members[i]`.
    pub branch: ColoredTree,
}

/// Splits a nonempty tree into its insertion factors. The `⊟` factor comes
/// first, followed by one factor per two-child vertex in postorder.
///
/// A vertex belongs to the lowest two-child vertex whose right subtree
/// contains it, or to `⊟` when there is none.
pub fn factor_decomposition(t: &ColoredTree) -> Result<Vec<Factor>> {
    let root = t
        .root()
        .ok_or_else(|| Error::Precondition("insertion factors of the empty tree".into()))?;
    let mut owner: Vec<Option<NodeId>> = vec![None; t.len()];
    let mut discovered: Vec<NodeId> = Vec::with_capacity(t.len());
    let mut stack = vec![(root, None::<NodeId>)];
    while let Some((u, own)) = stack.pop() {
        let n = t.node(u);
        if n.child_count() == 2 {
            stack.push((n.right.expect("two children"), Some(u)));
            stack.push((n.left.expect("two children"), own));
        } else {
            owner[u] = own;
            discovered.push(u);
            stack.extend(n.left.or(n.right).map(|c| (c, own)));
        }
    }

    let anchors = std::iter::once(None).chain(
        t.postorder()
            .into_iter()
            .filter(|&v| t.node(v).child_count() == 2)
            .map(Some),
    );
    anchors
        .map(|anchor| {
            let members: Vec<NodeId> = discovered
                .iter()
                .copied()
                .filter(|&u| owner[u] == anchor)
                .collect();
            let colors: Vec<_> = members.iter().map(|&u| t.node(u).color).collect();
            let sides: Vec<Side> = members[..members.len() - 1]
                .iter()
                .map(|&u| t.node(u).only_child().expect("inner branch vertex").0)
                .collect();
            let box_color = anchor.map_or(t.box_color(), |a| t.node(a).color);
            let branch = ColoredTree::branch(&colors, &sides, box_color)?;
            Ok(Factor { anchor, members, branch })
        })
        .collect()
}

/// The multiset `IF(T)` of insertion factors.
pub fn insertion_factors(t: &ColoredTree) -> Result<Vec<ColoredTree>> {
    Ok(factor_decomposition(t)?.into_iter().map(|f| f.branch).collect())
}

/// Sorted canonical encodings of `IF(T)`; equal vectors mean equal multisets.
pub fn factor_multiset(t: &ColoredTree) -> Result<Vec<String>> {
    let mut enc: Vec<String> = insertion_factors(t)?.iter().map(ColoredTree::encode).collect();
    enc.sort();
    Ok(enc)
}

/// An insertion factor of a decreasing tree, keeping the restricted labels.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LabeledFactor {
    /// Label of the owning two-child vertex, `None` for `⊟`.
    pub anchor: Option<usize>,
    /// Labels from the top of the branch down (hence decreasing).
    pub labels: Vec<usize>,
    /// `sides[i]` is the side of the edge below `labels[i]`.
    pub sides: Vec<Side>,
}

pub fn labeled_insertion_factors(t: &LabeledTree) -> Result<Vec<LabeledFactor>> {
    Ok(factor_decomposition(t.tree())?
        .into_iter()
        .map(|f| LabeledFactor {
            anchor: f.anchor.map(|a| t.label(a)),
            labels: f.members.iter().map(|&u| t.label(u)).collect(),
            sides: f.members[..f.members.len() - 1]
                .iter()
                .map(|&u| t.tree().node(u).only_child().expect("inner").0)
                .collect(),
        })
        .collect())
}
