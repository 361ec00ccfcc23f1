//! Simple undirected graphs over opaque vertex labels.
//!
//! Vertices are stored as dense indices `0..n` in the order they were
//! declared; labels are kept only for input and output.

use std::collections::{HashMap, HashSet};

use crate::error::{Error, Result};

/// Dense vertex index.
pub type Vertex = usize;

/// Normalized undirected edge, smaller endpoint first.
pub type Edge = (Vertex, Vertex);

#[inline]
pub(crate) fn norm(u: Vertex, v: Vertex) -> Edge {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

/// A simple undirected graph with stable vertex identifiers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    labels: Vec<String>,
    index: HashMap<String, Vertex>,
    adj: Vec<Vec<Vertex>>,
    edges: Vec<Edge>,
}

impl Graph {
    /// Builds a validated graph from labelled vertices and edges.
    pub fn new<V: AsRef<str>, E: AsRef<str>>(vertices: &[V], edges: &[(E, E)]) -> Result<Self> {
        let labels: Vec<String> = vertices.iter().map(|v| v.as_ref().to_string()).collect();
        let mut index = HashMap::with_capacity(labels.len());
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), i).is_some() {
                return Err(Error::DuplicateVertex(l.clone()));
            }
        }
        let mut pairs = Vec::with_capacity(edges.len());
        for (a, b) in edges {
            let (a, b) = (a.as_ref(), b.as_ref());
            let u = *index
                .get(a)
                .ok_or_else(|| Error::UnknownEndpoint(a.to_string()))?;
            let v = *index
                .get(b)
                .ok_or_else(|| Error::UnknownEndpoint(b.to_string()))?;
            pairs.push((u, v));
        }
        Self::build(labels, index, &pairs)
    }

    /// Builds a graph on `0..n` whose labels are the decimal indices.
    pub fn from_edges(n: usize, edges: &[Edge]) -> Result<Self> {
        Self::with_labels((0..n).map(|i| i.to_string()).collect(), edges)
    }

    /// Builds a graph from explicit labels and index-based edges.
    pub fn with_labels(labels: Vec<String>, edges: &[Edge]) -> Result<Self> {
        let mut index = HashMap::with_capacity(labels.len());
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), i).is_some() {
                return Err(Error::DuplicateVertex(l.clone()));
            }
        }
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= labels.len() {
                    return Err(Error::UnknownEndpoint(w.to_string()));
                }
            }
        }
        Self::build(labels, index, edges)
    }

    fn build(labels: Vec<String>, index: HashMap<String, Vertex>, pairs: &[Edge]) -> Result<Self> {
        let n = labels.len();
        let mut seen = HashSet::with_capacity(pairs.len());
        let mut adj = vec![Vec::new(); n];
        let mut edges = Vec::with_capacity(pairs.len());
        for &(u, v) in pairs {
            if u == v {
                return Err(Error::SelfLoop(labels[u].clone()));
            }
            let e = norm(u, v);
            if !seen.insert(e) {
                return Err(Error::DuplicateEdge(
                    labels[e.0].clone(),
                    labels[e.1].clone(),
                ));
            }
            adj[u].push(v);
            adj[v].push(u);
            edges.push(e);
        }
        for a in &mut adj {
            a.sort_unstable();
        }
        edges.sort_unstable();
        Ok(Self {
            labels,
            index,
            adj,
            edges,
        })
    }

    /// Collapses parallel edges and drops self-loops. Endpoints that are not
    /// listed among `vertices` are appended in order of first appearance.
    pub fn simplify_multigraph<V: AsRef<str>, E: AsRef<str>>(
        vertices: &[V],
        edges: &[(E, E)],
    ) -> Self {
        let mut labels: Vec<String> = Vec::new();
        let mut index: HashMap<String, Vertex> = HashMap::new();
        let mut intern = |s: &str, labels: &mut Vec<String>| -> Vertex {
            if let Some(&i) = index.get(s) {
                return i;
            }
            index.insert(s.to_string(), labels.len());
            labels.push(s.to_string());
            labels.len() - 1
        };
        for v in vertices {
            intern(v.as_ref(), &mut labels);
        }
        let mut set = HashSet::new();
        let mut pairs = Vec::new();
        for (a, b) in edges {
            let u = intern(a.as_ref(), &mut labels);
            let v = intern(b.as_ref(), &mut labels);
            if u != v && set.insert(norm(u, v)) {
                pairs.push((u, v));
            }
        }
        Self::with_labels(labels, &pairs).expect("simplified edge set is simple")
    }

    /// Index-based variant of [`Graph::simplify_multigraph`] on `0..n`.
    pub fn simplify_index_multigraph(n: usize, edges: &[Edge]) -> Self {
        let mut set = HashSet::new();
        let pairs: Vec<Edge> = edges
            .iter()
            .filter(|&&(u, v)| u != v && set.insert(norm(u, v)))
            .copied()
            .collect();
        Self::from_edges(n, &pairs).expect("simplified edge set is simple")
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn label(&self, v: Vertex) -> &str {
        &self.labels[v]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<Vertex> {
        self.index.get(label).copied()
    }

    pub(crate) fn vertex(&self, label: &str) -> Result<Vertex> {
        self.index_of(label)
            .ok_or_else(|| Error::UnknownVertex(label.to_string()))
    }

    /// Edges in sorted order, each with its smaller endpoint first.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Sorted neighbour list.
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    pub(crate) fn adjacency(&self) -> &[Vec<Vertex>] {
        &self.adj
    }

    pub fn is_connected(&self) -> bool {
        self.n() == 0 || self.component_count() == 1
    }

    /// Whether the subgraph induced by `subset` is connected. The empty set
    /// counts as connected.
    pub fn is_connected_subset(&self, subset: &[Vertex]) -> Result<bool> {
        let mut inside = vec![false; self.n()];
        for &v in subset {
            if v >= self.n() {
                return Err(Error::UnknownVertex(v.to_string()));
            }
            inside[v] = true;
        }
        let Some(&start) = subset.first() else {
            return Ok(true);
        };
        let target = inside.iter().filter(|&&b| b).count();
        let mut seen = vec![false; self.n()];
        seen[start] = true;
        let mut stack = vec![start];
        let mut count = 1;
        while let Some(u) = stack.pop() {
            for &w in &self.adj[u] {
                if inside[w] && !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        Ok(count == target)
    }

    /// Component id per vertex, numbered in order of smallest member.
    pub fn components(&self) -> Vec<usize> {
        let mut comp = vec![usize::MAX; self.n()];
        let mut next = 0;
        for s in 0..self.n() {
            if comp[s] != usize::MAX {
                continue;
            }
            comp[s] = next;
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                for &w in &self.adj[u] {
                    if comp[w] == usize::MAX {
                        comp[w] = next;
                        stack.push(w);
                    }
                }
            }
            next += 1;
        }
        comp
    }

    pub fn component_count(&self) -> usize {
        self.components().into_iter().max().map_or(0, |c| c + 1)
    }

    /// Subgraph induced by `vertices`, with the map from new to old indices.
    /// Labels are preserved.
    pub fn induced(&self, vertices: &[Vertex]) -> (Graph, Vec<Vertex>) {
        let mut local = vec![usize::MAX; self.n()];
        for (i, &v) in vertices.iter().enumerate() {
            local[v] = i;
        }
        let labels = vertices.iter().map(|&v| self.labels[v].clone()).collect();
        let edges: Vec<Edge> = vertices
            .iter()
            .flat_map(|&v| {
                let local = &local;
                self.adj[v]
                    .iter()
                    .filter(move |&&w| local[w] != usize::MAX && v < w)
                    .map(move |&w| (local[v], local[w]))
            })
            .collect();
        (
            Graph::with_labels(labels, &edges).expect("induced subgraph is simple"),
            vertices.to_vec(),
        )
    }

    /// Copy of the graph with edge `uv` removed (no-op if absent).
    pub fn without_edge(&self, u: Vertex, v: Vertex) -> Graph {
        let e = norm(u, v);
        let edges: Vec<Edge> = self.edges.iter().copied().filter(|&f| f != e).collect();
        Graph::with_labels(self.labels.clone(), &edges).expect("subgraph is simple")
    }

    /// The graph plus one vertex adjacent to every existing vertex. The new
    /// vertex is labelled `apex` (suffixed with `'` until unique) and gets
    /// index `n`.
    pub fn with_apex(&self) -> Graph {
        let mut label = String::from("apex");
        while self.index.contains_key(&label) {
            label.push('\'');
        }
        let n = self.n();
        let mut labels = self.labels.clone();
        labels.push(label);
        let mut edges = self.edges.clone();
        edges.extend((0..n).map(|v| (v, n)));
        Graph::with_labels(labels, &edges).expect("apex extension is simple")
    }

    /// Same graph with vertex indices permuted: old vertex `v` becomes `perm[v]`.
    pub fn relabeled(&self, perm: &[Vertex]) -> Graph {
        let mut labels = vec![String::new(); self.n()];
        for (v, &p) in perm.iter().enumerate() {
            labels[p] = self.labels[v].clone();
        }
        let edges: Vec<Edge> = self
            .edges
            .iter()
            .map(|&(u, v)| (perm[u], perm[v]))
            .collect();
        Graph::with_labels(labels, &edges).expect("relabeling preserves simplicity")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builds_k2_and_triangle() {
        let k2 = Graph::new(&["x", "y"], &[("x", "y")]).unwrap();
        assert_eq!((k2.n(), k2.m()), (2, 1));
        let tri = Graph::new(&["a", "b", "c"], &[("a", "b"), ("b", "c"), ("a", "c")]).unwrap();
        assert_eq!(tri.m(), 3);
        assert!(tri.has_edge(0, 2) && tri.has_edge(2, 0));
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(
            Graph::new(&["a"], &[("a", "a")]),
            Err(Error::SelfLoop("a".into()))
        );
        assert!(matches!(
            Graph::new(&["a", "b"], &[("a", "b"), ("b", "a")]),
            Err(Error::DuplicateEdge(..))
        ));
        assert_eq!(
            Graph::new(&["a"], &[("a", "q")]),
            Err(Error::UnknownEndpoint("q".into()))
        );
    }

    #[test]
    fn simplify_collapses_parallels_and_loops() {
        let g = Graph::simplify_multigraph(&["x", "y"], &[("x", "y"), ("x", "y"), ("x", "y")]);
        assert_eq!(g.edges(), &[(0, 1)]);
        let g = Graph::simplify_multigraph(&["x", "y"], &[("x", "y")]);
        assert_eq!(g.m(), 1);
        let g = Graph::simplify_multigraph(
            &["x", "y", "z"],
            &[("x", "y"), ("y", "z"), ("x", "y"), ("z", "z")],
        );
        assert_eq!(g.edges(), &[(0, 1), (1, 2)]);
    }

    #[test]
    fn connectivity_of_subsets() {
        let tri = Graph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert!(tri.is_connected_subset(&[0, 1]).unwrap());
        let path = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(!path.is_connected_subset(&[0, 2]).unwrap());
        assert!(path.is_connected_subset(&[]).unwrap());
        assert_eq!(
            path.is_connected_subset(&[7]),
            Err(Error::UnknownVertex("7".into()))
        );
    }

    #[test]
    fn apex_of_k2_is_triangle() {
        let g = Graph::from_edges(2, &[(0, 1)]).unwrap().with_apex();
        assert_eq!(g.m(), 3);
        assert_eq!(g.label(2), "apex");
    }
}
