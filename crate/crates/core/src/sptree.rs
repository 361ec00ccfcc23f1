//! Two-terminal series-parallel decomposition trees.
//!
//! Trees are stored in an arena in post-order: every child index is smaller
//! than its parent's, so a single forward pass folds the tree bottom-up.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::{norm, Edge, Graph, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SpKind {
    Leaf,
    Series,
    Parallel,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SpNode {
    pub kind: SpKind,
    /// Ordered terminal pair `(x_t, y_t)`.
    pub terminals: (Vertex, Vertex),
    /// For a series node the first child has terminals `(x_t, z)` and the
    /// second `(z, y_t)`; for a parallel node both have `(x_t, y_t)`.
    pub children: Option<(usize, usize)>,
    /// |V_t|, the number of vertices spanned by the subtree.
    pub vertex_count: usize,
}

impl SpNode {
    /// Shared middle vertex of a series node.
    pub fn middle(&self, tree: &SpTree) -> Option<Vertex> {
        match (self.kind, self.children) {
            (SpKind::Series, Some((a, _))) => Some(tree.nodes[a].terminals.1),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpTree {
    nodes: Vec<SpNode>,
    root: usize,
}

/// The two-terminal multigraph a tree denotes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Realized {
    /// Sorted vertex set.
    pub vertices: Vec<Vertex>,
    /// One normalized edge per leaf, sorted; may contain repeats.
    pub edges: Vec<Edge>,
    pub terminals: (Vertex, Vertex),
}

impl SpTree {
    pub fn nodes(&self) -> &[SpNode] {
        &self.nodes
    }

    pub fn node(&self, t: usize) -> &SpNode {
        &self.nodes[t]
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn terminals(&self) -> (Vertex, Vertex) {
        self.nodes[self.root].terminals
    }

    /// Leaf edges below `t`, in left-to-right order.
    pub fn leaf_edges(&self, t: usize) -> Vec<(Vertex, Vertex)> {
        let mut out = Vec::new();
        let mut stack = vec![t];
        while let Some(u) = stack.pop() {
            let node = &self.nodes[u];
            match node.children {
                None => out.push(node.terminals),
                Some((a, b)) => {
                    stack.push(b);
                    stack.push(a);
                }
            }
        }
        out
    }

    /// Sorted vertex set V_t.
    pub fn span(&self, t: usize) -> Vec<Vertex> {
        let mut vs: Vec<Vertex> = self
            .leaf_edges(t)
            .into_iter()
            .flat_map(|(u, v)| [u, v])
            .collect();
        vs.sort_unstable();
        vs.dedup();
        vs
    }

    /// The two-terminal multigraph denoted by the tree. Fails when children
    /// of some composition overlap beyond their shared terminals.
    pub fn realize_edges(&self) -> Result<Realized> {
        let vertices = self.span(self.root);
        if vertices.len() != self.nodes[self.root].vertex_count {
            return Err(Error::MalformedTree(
                "children overlap outside their shared terminals",
            ));
        }
        let mut edges: Vec<Edge> = self
            .leaf_edges(self.root)
            .into_iter()
            .map(|(u, v)| norm(u, v))
            .collect();
        edges.sort_unstable();
        Ok(Realized {
            vertices,
            edges,
            terminals: self.terminals(),
        })
    }

    /// The simple two-terminal graph the tree denotes, as sorted edges.
    pub fn realize(&self) -> Result<Realized> {
        let r = self.realize_edges()?;
        if r.edges.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::MalformedTree("parallel leaves denote a multigraph"));
        }
        Ok(r)
    }
}

/// Incremental construction of SP-trees from compositions.
#[derive(Debug, Clone, Default)]
pub struct SpTreeBuilder {
    nodes: Vec<SpNode>,
    used: Vec<bool>,
}

impl SpTreeBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    fn push(&mut self, node: SpNode) -> usize {
        if let Some((a, b)) = node.children {
            self.used[a] = true;
            self.used[b] = true;
        }
        self.nodes.push(node);
        self.used.push(false);
        self.nodes.len() - 1
    }

    fn fresh(&self, t: usize) -> Result<&SpNode> {
        match self.nodes.get(t) {
            Some(n) if !self.used[t] => Ok(n),
            Some(_) => Err(Error::MalformedTree("node used twice")),
            None => Err(Error::MalformedTree("unknown node")),
        }
    }

    pub fn leaf(&mut self, x: Vertex, y: Vertex) -> Result<usize> {
        if x == y {
            return Err(Error::InvalidTerminals);
        }
        Ok(self.push(SpNode {
            kind: SpKind::Leaf,
            terminals: (x, y),
            children: None,
            vertex_count: 2,
        }))
    }

    /// `a ⊗ b`: identifies the second terminal of `a` with the first of `b`.
    pub fn series(&mut self, a: usize, b: usize) -> Result<usize> {
        let (na, nb) = (*self.fresh(a)?, *self.fresh(b)?);
        if a == b || na.terminals.1 != nb.terminals.0 || na.terminals.0 == nb.terminals.1 {
            return Err(Error::TerminalMismatch);
        }
        Ok(self.push(SpNode {
            kind: SpKind::Series,
            terminals: (na.terminals.0, nb.terminals.1),
            children: Some((a, b)),
            vertex_count: na.vertex_count + nb.vertex_count - 1,
        }))
    }

    /// `a ⊕ b`: both children must carry the same terminal pair.
    pub fn parallel(&mut self, a: usize, b: usize) -> Result<usize> {
        let (na, nb) = (*self.fresh(a)?, *self.fresh(b)?);
        if a == b || na.terminals != nb.terminals {
            return Err(Error::TerminalMismatch);
        }
        Ok(self.push(SpNode {
            kind: SpKind::Parallel,
            terminals: na.terminals,
            children: Some((a, b)),
            vertex_count: na.vertex_count + nb.vertex_count - 2,
        }))
    }

    pub fn terminals(&self, t: usize) -> (Vertex, Vertex) {
        self.nodes[t].terminals
    }

    /// Extracts the subtree rooted at `root`, renumbered in post-order.
    pub fn finish(&self, root: usize) -> Result<SpTree> {
        if self.fresh(root).is_err() {
            return Err(Error::MalformedTree("root is not a free node"));
        }
        let mut remap = vec![usize::MAX; self.nodes.len()];
        let mut nodes = Vec::new();
        let mut stack = vec![(root, false)];
        while let Some((t, done)) = stack.pop() {
            let node = self.nodes[t];
            match (node.children, done) {
                (Some((a, b)), false) => {
                    stack.push((t, true));
                    stack.push((b, false));
                    stack.push((a, false));
                }
                _ => {
                    let children = node.children.map(|(a, b)| (remap[a], remap[b]));
                    remap[t] = nodes.len();
                    nodes.push(SpNode { children, ..node });
                }
            }
        }
        let root = nodes.len() - 1;
        Ok(SpTree { nodes, root })
    }
}

#[derive(Clone, Copy)]
struct RawNode {
    kind: SpKind,
    a: Vertex,
    b: Vertex,
    /// Children with a flag telling whether the child's stored orientation
    /// must be reversed to fit this node.
    children: [(usize, bool); 2],
}

/// Series/parallel reduction of `g` (minus `skip`) towards the single edge
/// `xy`. Returns the raw arena and the oriented root.
fn reduce(
    g: &Graph,
    x: Vertex,
    y: Vertex,
    skip: Option<Edge>,
) -> Result<(Vec<RawNode>, usize, bool)> {
    let n = g.n();
    let mut raw: Vec<RawNode> = Vec::with_capacity(2 * g.m());
    let mut adj: Vec<BTreeMap<Vertex, usize>> = vec![BTreeMap::new(); n];
    for &(u, v) in g.edges() {
        if Some((u, v)) == skip {
            continue;
        }
        let id = raw.len();
        raw.push(RawNode {
            kind: SpKind::Leaf,
            a: u,
            b: v,
            children: [(0, false); 2],
        });
        adj[u].insert(v, id);
        adj[v].insert(u, id);
    }
    if raw.is_empty() {
        return Err(Error::NotSeriesParallel);
    }
    let terminal = |v: Vertex| v == x || v == y;
    let mut queue: Vec<Vertex> = (0..n)
        .rev()
        .filter(|&v| !terminal(v) && adj[v].len() == 2)
        .collect();
    let mut remaining = (0..n)
        .filter(|&v| !adj[v].is_empty() || terminal(v))
        .count();
    while let Some(v) = queue.pop() {
        if adj[v].len() != 2 {
            continue;
        }
        let mut it = adj[v].iter();
        let (&u, &p) = it.next().expect("degree 2");
        let (&w, &q) = it.next().expect("degree 2");
        adj[v].clear();
        adj[u].remove(&v);
        adj[w].remove(&v);
        remaining -= 1;
        let s = raw.len();
        raw.push(RawNode {
            kind: SpKind::Series,
            a: u,
            b: w,
            children: [(p, raw[p].a != u), (q, raw[q].a != v)],
        });
        if let Some(&r) = adj[u].get(&w) {
            let par = raw.len();
            raw.push(RawNode {
                kind: SpKind::Parallel,
                a: u,
                b: w,
                children: [(s, false), (r, raw[r].a != u)],
            });
            adj[u].insert(w, par);
            adj[w].insert(u, par);
            for z in [u, w] {
                if !terminal(z) && adj[z].len() == 2 {
                    queue.push(z);
                }
            }
        } else {
            adj[u].insert(w, s);
            adj[w].insert(u, s);
        }
    }
    if remaining != 2 || adj[x].len() != 1 || adj[y].len() != 1 {
        return Err(Error::NotSeriesParallel);
    }
    let root = *adj[x].get(&y).ok_or(Error::NotSeriesParallel)?;
    let flip = raw[root].a != x;
    Ok((raw, root, flip))
}

/// Turns the raw arena into a clean post-order tree with every node in the
/// orientation its parent expects.
fn materialize(raw: &[RawNode], root: usize, flip: bool, builder: &mut SpTreeBuilder) -> usize {
    let mut stack = vec![(root, flip, false)];
    let mut done: Vec<usize> = Vec::new();
    while let Some((r, f, visited)) = stack.pop() {
        let node = raw[r];
        if node.kind == SpKind::Leaf {
            let (a, b) = if f {
                (node.b, node.a)
            } else {
                (node.a, node.b)
            };
            done.push(builder.leaf(a, b).expect("edge endpoints differ"));
            continue;
        }
        let [(c1, f1), (c2, f2)] = node.children;
        if !visited {
            stack.push((r, f, true));
            let order = match (node.kind, f) {
                (SpKind::Series, true) => [(c2, !f2), (c1, !f1)],
                _ => [(c1, f1 ^ f), (c2, f2 ^ f)],
            };
            stack.push((order[1].0, order[1].1, false));
            stack.push((order[0].0, order[0].1, false));
            continue;
        }
        let second = done.pop().expect("child built");
        let first = done.pop().expect("child built");
        let id = match node.kind {
            SpKind::Series => builder.series(first, second),
            _ => builder.parallel(first, second),
        };
        done.push(id.expect("reduction yields consistent terminals"));
    }
    done.pop().expect("root built")
}

/// Recognizes `(g, (x, y))` as a two-terminal series-parallel graph.
pub fn recognize_sp(g: &Graph, x: Vertex, y: Vertex) -> Result<SpTree> {
    if x == y || x >= g.n() || y >= g.n() {
        return Err(Error::InvalidTerminals);
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let (raw, root, flip) = reduce(g, x, y, None)?;
    let mut builder = SpTreeBuilder::new();
    let r = materialize(&raw, root, flip, &mut builder);
    builder.finish(r)
}

/// SP-tree of a biconnected series-parallel graph whose root is the
/// parallel composition of the leaf `xy` with the tree of `g - xy`.
pub fn sp_tree_for_edge(g: &Graph, x: Vertex, y: Vertex) -> Result<SpTree> {
    if !g.has_edge(x, y) {
        return Err(Error::UnknownVertex(format!("{}-{}", x, y)));
    }
    let mut builder = SpTreeBuilder::new();
    let leaf = builder.leaf(x, y)?;
    if g.m() == 1 {
        return builder.finish(leaf);
    }
    let (raw, root, flip) = reduce(g, x, y, Some(norm(x, y)))?;
    let rest = materialize(&raw, root, flip, &mut builder);
    let top = builder.parallel(leaf, rest)?;
    builder.finish(top)
}
