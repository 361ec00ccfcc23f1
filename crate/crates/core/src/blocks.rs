//! Biconnected components and the block-cut tree.

use crate::error::{Error, Result};
use crate::graph::{norm, Edge, Graph, Vertex};

/// Biconnected decomposition of a connected graph. Bridges form two-vertex
/// blocks; an edgeless single-vertex graph is one block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockCutTree {
    blocks: Vec<Vec<Vertex>>,
    block_edges: Vec<Vec<Edge>>,
    cut_vertices: Vec<Vertex>,
    /// Blocks containing each vertex.
    membership: Vec<Vec<usize>>,
}

impl BlockCutTree {
    pub fn new(g: &Graph) -> Result<Self> {
        if !g.is_connected() {
            return Err(Error::Disconnected);
        }
        let n = g.n();
        let mut block_edges: Vec<Vec<Edge>> = Vec::new();
        if n == 1 {
            return Ok(Self {
                blocks: vec![vec![0]],
                block_edges: vec![Vec::new()],
                cut_vertices: Vec::new(),
                membership: vec![vec![0]],
            });
        }
        const UNSEEN: usize = usize::MAX;
        let mut disc = vec![UNSEEN; n];
        let mut low = vec![0; n];
        let mut time = 0;
        // (vertex, parent, next neighbour index)
        let mut stack: Vec<(Vertex, Vertex, usize)> = Vec::new();
        let mut edge_stack: Vec<Edge> = Vec::new();
        if n > 0 {
            disc[0] = 0;
            low[0] = 0;
            time = 1;
            stack.push((0, UNSEEN, 0));
        }
        while let Some(frame) = stack.last_mut() {
            let (v, parent, i) = *frame;
            if i < g.degree(v) {
                frame.2 += 1;
                let w = g.neighbors(v)[i];
                if disc[w] == UNSEEN {
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    edge_stack.push((v, w));
                    stack.push((w, v, 0));
                } else if w != parent && disc[w] < disc[v] {
                    edge_stack.push((v, w));
                    low[v] = low[v].min(disc[w]);
                }
                continue;
            }
            stack.pop();
            if parent == UNSEEN {
                continue;
            }
            low[parent] = low[parent].min(low[v]);
            if low[v] >= disc[parent] {
                let mut edges = Vec::new();
                while let Some(e) = edge_stack.pop() {
                    edges.push(norm(e.0, e.1));
                    if e == (parent, v) {
                        break;
                    }
                }
                edges.sort_unstable();
                block_edges.push(edges);
            }
        }
        // deterministic block order: by smallest edge
        block_edges.sort();
        let mut membership = vec![Vec::new(); n];
        let blocks: Vec<Vec<Vertex>> = block_edges
            .iter()
            .enumerate()
            .map(|(b, edges)| {
                let mut vs: Vec<Vertex> = edges.iter().flat_map(|&(u, v)| [u, v]).collect();
                vs.sort_unstable();
                vs.dedup();
                for &v in &vs {
                    membership[v].push(b);
                }
                vs
            })
            .collect();
        let cut_vertices = (0..n).filter(|&v| membership[v].len() > 1).collect();
        Ok(Self {
            blocks,
            block_edges,
            cut_vertices,
            membership,
        })
    }

    pub fn blocks(&self) -> &[Vec<Vertex>] {
        &self.blocks
    }

    pub fn block_edges(&self, b: usize) -> &[Edge] {
        &self.block_edges[b]
    }

    pub fn cut_vertices(&self) -> &[Vertex] {
        &self.cut_vertices
    }

    pub fn is_cut_vertex(&self, v: Vertex) -> bool {
        self.membership[v].len() > 1
    }

    /// Blocks that contain `v`.
    pub fn blocks_of(&self, v: Vertex) -> &[usize] {
        &self.membership[v]
    }

    /// Block–cut-vertex incidences, as `(block, cut vertex)` pairs.
    pub fn incidence(&self) -> Vec<(usize, Vertex)> {
        self.cut_vertices
            .iter()
            .flat_map(|&c| self.membership[c].iter().map(move |&b| (b, c)))
            .collect()
    }

    /// Blocks in breadth-first order from `start`, each paired with the cut
    /// vertex through which it is entered (`None` for `start`).
    pub fn traversal_from(&self, start: usize) -> Vec<(usize, Option<Vertex>)> {
        let mut seen = vec![false; self.blocks.len()];
        let mut cut_seen = vec![false; self.membership.len()];
        let mut order = vec![(start, None)];
        seen[start] = true;
        let mut head = 0;
        while head < order.len() {
            let (b, _) = order[head];
            head += 1;
            for &v in &self.blocks[b] {
                if self.membership[v].len() < 2 || std::mem::replace(&mut cut_seen[v], true) {
                    continue;
                }
                for &nb in &self.membership[v] {
                    if !std::mem::replace(&mut seen[nb], true) {
                        order.push((nb, Some(v)));
                    }
                }
            }
        }
        order
    }
}
