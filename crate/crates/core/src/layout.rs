//! Layouts, extended rooted graphs and supporting sets.

use crate::error::{Error, Result};
use crate::graph::{norm, Edge, Graph, Vertex};

/// A total order of the vertices of a graph.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Layout {
    order: Vec<Vertex>,
    pos: Vec<usize>,
}

impl Layout {
    /// Validates that `order` is a permutation of `0..n`.
    pub fn new(order: Vec<Vertex>, n: usize) -> Result<Self> {
        if order.len() != n {
            return Err(Error::LayoutMismatch);
        }
        let mut pos = vec![usize::MAX; n];
        for (i, &v) in order.iter().enumerate() {
            if v >= n || pos[v] != usize::MAX {
                return Err(Error::LayoutMismatch);
            }
            pos[v] = i;
        }
        Ok(Self { order, pos })
    }

    /// Builds a layout from vertex labels of `g`.
    pub fn from_labels<S: AsRef<str>>(g: &Graph, labels: &[S]) -> Result<Self> {
        let order = labels
            .iter()
            .map(|l| g.vertex(l.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(order, g.n())
    }

    pub fn order(&self) -> &[Vertex] {
        &self.order
    }

    /// Zero-based position of `v`.
    pub fn position(&self, v: Vertex) -> usize {
        self.pos[v]
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn labels<'g>(&self, g: &'g Graph) -> Vec<&'g str> {
        self.order.iter().map(|&v| g.label(v)).collect()
    }
}

/// A solid graph together with fictive edges, roots and optional terminals.
///
/// Fictive edges take part in supporting sets but never in connectivity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtendedRootedGraph {
    solid: Graph,
    fictive: Vec<Edge>,
    fictive_adj: Vec<Vec<Vertex>>,
    roots: Vec<Vertex>,
    terminals: Option<(Vertex, Vertex)>,
}

impl ExtendedRootedGraph {
    pub fn new(
        solid: Graph,
        fictive: Vec<Edge>,
        roots: Vec<Vertex>,
        terminals: Option<(Vertex, Vertex)>,
    ) -> Result<Self> {
        let n = solid.n();
        let mut fictive: Vec<Edge> = fictive.into_iter().map(|(u, v)| norm(u, v)).collect();
        fictive.sort_unstable();
        fictive.dedup();
        let mut fictive_adj = vec![Vec::new(); n];
        for &(u, v) in &fictive {
            if v >= n {
                return Err(Error::UnknownVertex(v.to_string()));
            }
            if u == v || solid.has_edge(u, v) {
                return Err(Error::InvalidFictiveEdge(
                    solid.label(u).into(),
                    solid.label(v).into(),
                ));
            }
            fictive_adj[u].push(v);
            fictive_adj[v].push(u);
        }
        let mut seen = vec![false; n];
        for &r in &roots {
            if r >= n {
                return Err(Error::UnknownVertex(r.to_string()));
            }
            if std::mem::replace(&mut seen[r], true) {
                return Err(Error::DuplicateRoot(solid.label(r).into()));
            }
        }
        if let Some((x, y)) = terminals {
            if x == y || x >= n || y >= n {
                return Err(Error::InvalidTerminals);
            }
        }
        Ok(Self {
            solid,
            fictive,
            fictive_adj,
            roots,
            terminals,
        })
    }

    /// A plain graph: no fictive edges, no roots.
    pub fn plain(solid: Graph) -> Self {
        let n = solid.n();
        Self {
            solid,
            fictive: Vec::new(),
            fictive_adj: vec![Vec::new(); n],
            roots: Vec::new(),
            terminals: None,
        }
    }

    pub fn rooted(solid: Graph, roots: Vec<Vertex>) -> Result<Self> {
        Self::new(solid, Vec::new(), roots, None)
    }

    /// Builds an instance from labels.
    pub fn from_labels<S: AsRef<str>>(
        vertices: &[S],
        solid_edges: &[(S, S)],
        fictive_edges: &[(S, S)],
        roots: &[S],
    ) -> Result<Self> {
        let solid = Graph::new(vertices, solid_edges)?;
        let fictive = fictive_edges
            .iter()
            .map(|(a, b)| Ok((lookup(&solid, a.as_ref())?, lookup(&solid, b.as_ref())?)))
            .collect::<Result<Vec<_>>>()?;
        let roots = roots
            .iter()
            .map(|r| solid.vertex(r.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(solid, fictive, roots, None)
    }

    pub fn solid(&self) -> &Graph {
        &self.solid
    }

    pub fn fictive(&self) -> &[Edge] {
        &self.fictive
    }

    pub fn roots(&self) -> &[Vertex] {
        &self.roots
    }

    pub fn terminals(&self) -> Option<(Vertex, Vertex)> {
        self.terminals
    }

    pub fn n(&self) -> usize {
        self.solid.n()
    }

    pub(crate) fn fictive_neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.fictive_adj[v]
    }

    /// Whether a connected rooted layout exists: every solid component holds
    /// a root (or, without roots, the solid graph is connected).
    pub fn admits_connected_layout(&self) -> bool {
        if self.roots.is_empty() {
            return self.solid.is_connected();
        }
        let comp = self.solid.components();
        let count = comp.iter().copied().max().map_or(0, |c| c + 1);
        let mut covered = vec![false; count];
        for &r in &self.roots {
            covered[comp[r]] = true;
        }
        covered.into_iter().all(|c| c)
    }
}

fn lookup(g: &Graph, label: &str) -> Result<Vertex> {
    g.index_of(label)
        .ok_or_else(|| Error::UnknownEndpoint(label.to_string()))
}

/// Checks that σ places the roots first and keeps every solid component of
/// every longer prefix attached to a root. Without roots the first vertex
/// acts as the root.
pub fn is_connected_rooted_layout(g: &ExtendedRootedGraph, sigma: &Layout) -> Result<bool> {
    if sigma.len() != g.n() {
        return Err(Error::LayoutMismatch);
    }
    let roots = g.roots();
    let r = roots.len();
    if sigma.order()[..r.min(sigma.len())]
        .iter()
        .any(|v| !roots.contains(v))
    {
        return Ok(false);
    }
    let start = r.max(1);
    let adj = g.solid().adjacency();
    for i in start..sigma.len() {
        let v = sigma.order()[i];
        if !adj[v].iter().any(|&w| sigma.position(w) < i) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether σ is a connected layout of the plain graph `g`.
pub fn is_connected_layout(g: &Graph, sigma: &Layout) -> Result<bool> {
    if sigma.len() != g.n() {
        return Err(Error::LayoutMismatch);
    }
    let adj = g.adjacency();
    Ok((1..sigma.len()).all(|i| adj[sigma.order()[i]].iter().any(|&w| sigma.position(w) < i)))
}

/// Reusable BFS scratch space for supporting-set queries.
struct Scratch {
    stamp: Vec<u32>,
    round: u32,
    queue: Vec<Vertex>,
}

impl Scratch {
    fn new(n: usize) -> Self {
        Self {
            stamp: vec![0; n],
            round: 0,
            queue: Vec::new(),
        }
    }

    fn next_round(&mut self) -> u32 {
        self.round += 1;
        self.round
    }
}

/// Vertices earlier than `v` that reach `v` through vertices placed after
/// `v`: explore from `v` over later vertices, collect earlier neighbours.
fn support_into(
    g: &ExtendedRootedGraph,
    sigma: &Layout,
    v: Vertex,
    use_fictive: bool,
    scratch: &mut Scratch,
    out: &mut Vec<Vertex>,
) {
    out.clear();
    let p = sigma.position(v);
    let later = scratch.next_round();
    let earlier = scratch.next_round();
    scratch.stamp[v] = later;
    scratch.queue.clear();
    scratch.queue.push(v);
    let mut head = 0;
    while head < scratch.queue.len() {
        let u = scratch.queue[head];
        head += 1;
        let solid = g.solid().neighbors(u).iter();
        let fictive = if use_fictive {
            g.fictive_neighbors(u)
        } else {
            &[]
        };
        for &w in solid.chain(fictive.iter()) {
            if scratch.stamp[w] == later || scratch.stamp[w] == earlier {
                continue;
            }
            if sigma.position(w) > p {
                scratch.stamp[w] = later;
                scratch.queue.push(w);
            } else {
                scratch.stamp[w] = earlier;
                out.push(w);
            }
        }
    }
    out.sort_unstable();
}

/// Supporting set of `v` under σ; fictive edges count when `use_fictive`.
pub fn supporting_set(
    g: &ExtendedRootedGraph,
    sigma: &Layout,
    v: Vertex,
    use_fictive: bool,
) -> Result<Vec<Vertex>> {
    if sigma.len() != g.n() {
        return Err(Error::LayoutMismatch);
    }
    if v >= g.n() {
        return Err(Error::UnknownVertex(v.to_string()));
    }
    let mut out = Vec::new();
    support_into(g, sigma, v, use_fictive, &mut Scratch::new(g.n()), &mut out);
    Ok(out)
}

/// Largest supporting set over all vertices, roots included.
pub fn layout_cost(g: &ExtendedRootedGraph, sigma: &Layout, use_fictive: bool) -> Result<u32> {
    if sigma.len() != g.n() {
        return Err(Error::LayoutMismatch);
    }
    let mut scratch = Scratch::new(g.n());
    let mut out = Vec::new();
    let mut best = 0;
    for &v in sigma.order() {
        support_into(g, sigma, v, use_fictive, &mut scratch, &mut out);
        best = best.max(out.len());
    }
    Ok(best as u32)
}

/// Cost of σ on a plain graph.
pub fn graph_layout_cost(g: &Graph, sigma: &Layout) -> Result<u32> {
    layout_cost(&ExtendedRootedGraph::plain(g.clone()), sigma, false)
}
