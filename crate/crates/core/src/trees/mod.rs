//! Colored binary plane trees.
//!
//! Vertices live in a node list and are addressed by position. Every tree,
//! including the empty one, carries the color of the extra symbol `⊟`
//! (`box_color`). Isomorphism is decided by [`ColoredTree::encode`].

mod enumerate;
mod insertion;
mod labeled;

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

pub use enumerate::{
    branch_shapes, bpt_shapes, enumerate, enumerate_branch, enumerate_bpt, enumerate_dbpt,
    singleton_word, TreeFamily,
};
pub use insertion::{
    factor_decomposition, factor_multiset, insert, insert_with_map, insertion_factors,
    labeled_insertion_factors, swing, Factor, Inserted, LabeledFactor,
};
pub use labeled::{
    alpha, alpha_inverse, beta, postorder_labeled, stack_sort, traversal_labeling, LabeledTree,
    Traversal,
};

pub type NodeId = usize;

/// A color from the index set `I`, taken to be the nonnegative integers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Color(pub u32);

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl From<u32> for Color {
    fn from(c: u32) -> Self {
        Color(c)
    }
}

/// Shorthand for a color word.
pub fn colors(word: &[u32]) -> Vec<Color> {
    word.iter().copied().map(Color).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn flip(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Node {
    pub color: Color,
    pub left: Option<NodeId>,
    pub right: Option<NodeId>,
}

impl Node {
    pub fn child(&self, side: Side) -> Option<NodeId> {
        match side {
            Side::Left => self.left,
            Side::Right => self.right,
        }
    }

    pub fn child_count(&self) -> usize {
        self.left.is_some() as usize + self.right.is_some() as usize
    }

    /// The side of the only child, if there is exactly one.
    pub fn only_child(&self) -> Option<(Side, NodeId)> {
        match (self.left, self.right) {
            (Some(l), None) => Some((Side::Left, l)),
            (None, Some(r)) => Some((Side::Right, r)),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoredTree {
    nodes: Vec<Node>,
    root: Option<NodeId>,
    box_color: Color,
}

impl ColoredTree {
    /// Validates that the links form a single rooted binary tree.
    pub fn from_parts(nodes: Vec<Node>, root: Option<NodeId>, box_color: Color) -> Result<Self> {
        let n = nodes.len();
        match root {
            None if n == 0 => {}
            None => return Err(Error::InvalidTree("nonempty node list without a root".into())),
            Some(r) if r >= n => return Err(Error::InvalidTree(format!("root {r} out of range"))),
            Some(_) => {}
        }
        let mut parents = vec![0usize; n];
        for (id, node) in nodes.iter().enumerate() {
            for c in [node.left, node.right].into_iter().flatten() {
                if c >= n {
                    return Err(Error::InvalidTree(format!("child {c} of {id} out of range")));
                }
                parents[c] += 1;
            }
            if node.left.is_some() && node.left == node.right {
                return Err(Error::InvalidTree(format!("node {id} has the same left and right child")));
            }
        }
        if let Some(r) = root {
            if parents[r] != 0 {
                return Err(Error::InvalidTree("root has a parent".into()));
            }
            if let Some(bad) = (0..n).find(|&v| v != r && parents[v] != 1) {
                return Err(Error::InvalidTree(format!("node {bad} does not have exactly one parent")));
            }
        }
        let tree = ColoredTree { nodes, root, box_color };
        // One parent each plus a parentless root still admits disjoint cycles.
        if tree.postorder().len() != n {
            return Err(Error::InvalidTree("nodes unreachable from the root".into()));
        }
        Ok(tree)
    }

    pub fn empty(box_color: Color) -> Self {
        ColoredTree { nodes: Vec::new(), root: None, box_color }
    }

    pub fn leaf(color: Color, box_color: Color) -> Self {
        ColoredTree {
            nodes: vec![Node { color, left: None, right: None }],
            root: Some(0),
            box_color,
        }
    }

    /// A new root with the given subtrees. Node ids follow postorder when the
    /// parts do: left nodes, then right nodes, then the root.
    pub fn join(color: Color, left: Option<&ColoredTree>, right: Option<&ColoredTree>, box_color: Color) -> Self {
        let mut nodes = Vec::new();
        let graft = |sub: Option<&ColoredTree>, nodes: &mut Vec<Node>| {
            sub.and_then(|s| {
                let offset = nodes.len();
                nodes.extend(s.nodes.iter().map(|n| Node {
                    color: n.color,
                    left: n.left.map(|c| c + offset),
                    right: n.right.map(|c| c + offset),
                }));
                s.root.map(|r| r + offset)
            })
        };
        let l = graft(left, &mut nodes);
        let r = graft(right, &mut nodes);
        nodes.push(Node { color, left: l, right: r });
        let root = Some(nodes.len() - 1);
        ColoredTree { nodes, root, box_color }
    }

    /// A branch given by its colors from the root down and the side of each
    /// edge (`sides.len() == colors.len() - 1`).
    pub fn branch(colors: &[Color], sides: &[Side], box_color: Color) -> Result<Self> {
        if colors.is_empty() || sides.len() + 1 != colors.len() {
            return Err(Error::InvalidTree(format!(
                "branch with {} vertices needs {} sides, got {}",
                colors.len(),
                colors.len().saturating_sub(1),
                sides.len()
            )));
        }
        let nodes = colors
            .iter()
            .enumerate()
            .map(|(i, &color)| {
                let mut node = Node { color, left: None, right: None };
                match sides.get(i) {
                    Some(Side::Left) => node.left = Some(i + 1),
                    Some(Side::Right) => node.right = Some(i + 1),
                    None => {}
                }
                node
            })
            .collect();
        Ok(ColoredTree { nodes, root: Some(0), box_color })
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn root(&self) -> Option<NodeId> {
        self.root
    }

    pub fn box_color(&self) -> Color {
        self.box_color
    }

    pub fn set_box_color(&mut self, c: Color) {
        self.box_color = c;
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn node(&self, id: NodeId) -> &Node {
        &self.nodes[id]
    }

    pub fn set_color(&mut self, id: NodeId, c: Color) {
        self.nodes[id].color = c;
    }

    pub fn contains(&self, id: NodeId) -> bool {
        id < self.nodes.len()
    }

    pub fn parents(&self) -> Vec<Option<NodeId>> {
        let mut p = vec![None; self.len()];
        for (id, n) in self.nodes.iter().enumerate() {
            for c in [n.left, n.right].into_iter().flatten() {
                p[c] = Some(id);
            }
        }
        p
    }

    pub fn postorder(&self) -> Vec<NodeId> {
        let mut out = Vec::with_capacity(self.len());
        let mut stack: Vec<(NodeId, bool)> = self.root.map(|r| (r, false)).into_iter().collect();
        while let Some((v, expanded)) = stack.pop() {
            if expanded {
                out.push(v);
                continue;
            }
            stack.push((v, true));
            let n = &self.nodes[v];
            stack.extend(n.right.map(|c| (c, false)));
            stack.extend(n.left.map(|c| (c, false)));
        }
        out
    }

    pub fn inorder(&self) -> Vec<NodeId> {
        let mut out = Vec::with_capacity(self.len());
        let mut stack = Vec::new();
        let mut cur = self.root;
        while cur.is_some() || !stack.is_empty() {
            while let Some(v) = cur {
                stack.push(v);
                cur = self.nodes[v].left;
            }
            let v = stack.pop().expect("nonempty");
            out.push(v);
            cur = self.nodes[v].right;
        }
        out
    }

    /// Vertex colors read in postorder.
    pub fn postorder_colors(&self) -> Vec<Color> {
        self.postorder().into_iter().map(|v| self.nodes[v].color).collect()
    }

    /// Recolors vertices by `word[k]` for the `k`th vertex in postorder and
    /// `⊟` by the last letter; `word.len()` must be `len() + 1`.
    pub fn color_by_postorder(&mut self, word: &[Color]) -> Result<()> {
        if word.len() != self.len() + 1 {
            return Err(Error::Precondition(format!(
                "color word of length {} for a tree of size {}",
                word.len(),
                self.len()
            )));
        }
        for (k, v) in self.postorder().into_iter().enumerate() {
            self.nodes[v].color = word[k];
        }
        self.box_color = word[self.len()];
        Ok(())
    }

    pub fn is_branch(&self) -> bool {
        !self.is_empty() && self.nodes.iter().all(|n| n.child_count() <= 1)
    }

    pub fn right_edges(&self) -> usize {
        self.nodes.iter().filter(|n| n.right.is_some()).count()
    }

    pub fn left_edges(&self) -> usize {
        self.nodes.iter().filter(|n| n.left.is_some()).count()
    }

    /// Number of vertices with two children.
    pub fn two_child_count(&self) -> usize {
        self.nodes.iter().filter(|n| n.child_count() == 2).count()
    }

    /// Canonical encoding `box:(color L R)` with `.` for an absent subtree.
    /// Two trees encode identically iff they are isomorphic as colored trees.
    pub fn encode(&self) -> String {
        let mut out = format!("{}:", self.box_color);
        self.encode_into(self.root, &mut out);
        out
    }

    fn encode_into(&self, v: Option<NodeId>, out: &mut String) {
        use std::fmt::Write;
        match v {
            None => out.push('.'),
            Some(v) => {
                let n = &self.nodes[v];
                let _ = write!(out, "({} ", n.color);
                self.encode_into(n.left, out);
                out.push(' ');
                self.encode_into(n.right, out);
                out.push(')');
            }
        }
    }
}

/// Returns the shape with every vertex and `⊟` colored 0.
pub fn uncolored(t: &ColoredTree) -> ColoredTree {
    let mut t = t.clone();
    for n in &mut t.nodes {
        n.color = Color(0);
    }
    t.box_color = Color(0);
    t
}

impl fmt::Display for ColoredTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.encode())
    }
}

struct Decoder<'a> {
    src: &'a [u8],
    pos: usize,
    nodes: Vec<Node>,
    labels: Vec<Option<usize>>,
}

impl Decoder<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Malformed(format!("tree encoding at byte {}: {msg}", self.pos))
    }

    fn expect(&mut self, b: u8) -> Result<()> {
        if self.src.get(self.pos) == Some(&b) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(&format!("expected `{}`", b as char)))
        }
    }

    fn number(&mut self) -> Result<u32> {
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| self.err("expected a color"))
    }

    fn subtree(&mut self) -> Result<Option<NodeId>> {
        match self.src.get(self.pos) {
            Some(b'.') => {
                self.pos += 1;
                Ok(None)
            }
            Some(b'(') => {
                self.pos += 1;
                let mut color = self.number()?;
                let mut label = None;
                if self.src.get(self.pos) == Some(&b'#') {
                    self.pos += 1;
                    label = Some(color as usize);
                    color = self.number()?;
                }
                let color = Color(color);
                self.expect(b' ')?;
                let left = self.subtree()?;
                self.expect(b' ')?;
                let right = self.subtree()?;
                self.expect(b')')?;
                self.nodes.push(Node { color, left, right });
                self.labels.push(label);
                Ok(Some(self.nodes.len() - 1))
            }
            _ => Err(self.err("expected `(` or `.`")),
        }
    }
}

/// Parses `box:(color L R)`, where a vertex may be written `label#color`.
/// Node ids come out in postorder.
pub(crate) fn decode(s: &str) -> Result<(ColoredTree, Vec<Option<usize>>)> {
    let mut d = Decoder { src: s.as_bytes(), pos: 0, nodes: Vec::new(), labels: Vec::new() };
    let box_color = Color(d.number()?);
    d.expect(b':')?;
    let root = d.subtree()?;
    if d.pos != s.len() {
        return Err(d.err("trailing input"));
    }
    Ok((ColoredTree::from_parts(d.nodes, root, box_color)?, d.labels))
}

impl FromStr for ColoredTree {
    type Err = Error;

    /// Parses the canonical encoding exactly; node ids come out in postorder.
    fn from_str(s: &str) -> Result<Self> {
        let (t, labels) = decode(s)?;
        if labels.iter().any(Option::is_some) {
            return Err(Error::Malformed(format!("`{s}` carries labels")));
        }
        Ok(t)
    }
}
