//! Witness layouts for table entries.
//!
//! Each composition rule builds its layout as "first child's layout, then
//! the second child's layout without the vertices already placed", with the
//! child entries chosen by the winning branch. Unfolding that recursively
//! turns a witness into a depth-first walk over the leaves that keeps the
//! first occurrence of every vertex.

use std::collections::HashMap;

use crate::dp::{Entry, Side, TreeTables, Width};
use crate::error::{Error, Result};
use crate::graph::{norm, Edge, Graph, Vertex};
use crate::layout::{ExtendedRootedGraph, Layout};
use crate::sptree::{SpKind, SpTree};

/// A position in an entry witness: a real vertex or the placeholder root
/// `r_i` (1-based) of a star entry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Slot {
    Vertex(Vertex),
    Placeholder(usize),
}

/// Composition rule that produced an entry's value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rule {
    Leaf,
    /// `τ₁ ⊙ τ₂[V₂ ∖ {x,y}]`.
    ParallelRooted,
    /// Closed star of child `0` or `1`, then the other child's rooted layout.
    ParallelStar {
        via: usize,
    },
    /// Star on the `via` child with the far terminal as its single extra
    /// root, then the other child's rooted layout.
    SeriesRooted {
        via: usize,
    },
    /// Anchor-side child's star, then the far child's star anchored at `z`.
    SeriesStar,
    /// Anchor-side child's closed star, then the far child's star with one
    /// extra root standing in for the anchor.
    SeriesClosedStar,
}

/// A child entry to lay out, under a placeholder renaming.
#[derive(Debug, Clone)]
pub struct Step {
    pub node: usize,
    pub entry: Entry,
    /// `rename[i - 1]` is what the child's placeholder `r_i` stands for.
    pub rename: Vec<Slot>,
}

/// Picks the rule behind `entry` at `node` and the child entries it uses.
pub fn plan(
    tree: &SpTree,
    tables: &TreeTables,
    node: usize,
    entry: Entry,
    rename: &[Slot],
) -> (Rule, Vec<Step>) {
    let nd = tree.node(node);
    let (x, y) = nd.terminals;
    let value = tables.get(node, entry);
    let Some((c1, c2)) = nd.children else {
        return (Rule::Leaf, Vec::new());
    };
    let step = |node, entry, rename: Vec<Slot>| Step {
        node,
        entry,
        rename,
    };
    let inherit = |k: usize| rename[..k].to_vec();
    match (nd.kind, entry) {
        (SpKind::Parallel, Entry::Rooted) => (
            Rule::ParallelRooted,
            vec![
                step(c1, Entry::Rooted, vec![]),
                step(c2, Entry::Rooted, vec![]),
            ],
        ),
        (SpKind::Parallel, Entry::Star { k, anchor, .. }) => {
            let closed = Entry::closed_star(k, anchor);
            let first = tables.get(c1, closed).max(tables.get(c2, Entry::Rooted));
            let (via, a, b) = if first == value {
                (0, c1, c2)
            } else {
                (1, c2, c1)
            };
            (
                Rule::ParallelStar { via },
                vec![step(a, closed, inherit(k)), step(b, Entry::Rooted, vec![])],
            )
        }
        (SpKind::Series, Entry::Rooted) => {
            let first = tables
                .get(c1, Entry::star(1, Side::First))
                .max(tables.get(c2, Entry::Rooted));
            if first == value {
                let steps = vec![
                    step(c1, Entry::star(1, Side::First), vec![Slot::Vertex(y)]),
                    step(c2, Entry::Rooted, vec![]),
                ];
                (Rule::SeriesRooted { via: 0 }, steps)
            } else {
                let steps = vec![
                    step(c2, Entry::star(1, Side::Second), vec![Slot::Vertex(x)]),
                    step(c1, Entry::Rooted, vec![]),
                ];
                (Rule::SeriesRooted { via: 1 }, steps)
            }
        }
        (SpKind::Series, Entry::Star { k, anchor, closed }) => {
            let (near, far, anchor_vertex) = match anchor {
                Side::First => (c1, c2, x),
                Side::Second => (c2, c1, y),
            };
            // z sits on the same side of `far` as the anchor sits on this node
            let far_side = anchor;
            if closed {
                let mut extra = inherit(k);
                extra.push(Slot::Vertex(anchor_vertex));
                let steps = vec![
                    step(near, Entry::closed_star(k, anchor), inherit(k)),
                    step(far, Entry::star(k + 1, far_side), extra),
                ];
                (Rule::SeriesClosedStar, steps)
            } else {
                let steps = vec![
                    step(near, Entry::star(k, anchor), inherit(k)),
                    step(far, Entry::star(k, far_side), inherit(k)),
                ];
                (Rule::SeriesStar, steps)
            }
        }
        (SpKind::Leaf, _) => unreachable!("leaves have no children"),
    }
}

fn leaf_slots(terminals: (Vertex, Vertex), entry: Entry, rename: &[Slot], out: &mut Vec<Slot>) {
    match entry {
        Entry::Rooted => {
            out.push(Slot::Vertex(terminals.0));
            out.push(Slot::Vertex(terminals.1));
        }
        Entry::Star { k, anchor, .. } => {
            out.extend_from_slice(&rename[..k]);
            out.push(Slot::Vertex(anchor.of(terminals)));
            out.push(Slot::Vertex(anchor.flip().of(terminals)));
        }
    }
}

/// Witness layout of one table entry, roots first. Placeholders appear as
/// [`Slot::Placeholder`].
pub fn entry_witness(tree: &SpTree, tables: &TreeTables, node: usize, entry: Entry) -> Vec<Slot> {
    let k = match entry {
        Entry::Rooted => 0,
        Entry::Star { k, .. } => k,
    };
    let max_vertex = tree
        .nodes()
        .iter()
        .map(|n| n.terminals.0.max(n.terminals.1))
        .max()
        .unwrap_or(0);
    let mut seen_vertex = vec![false; max_vertex + 1];
    let mut seen_placeholder = vec![false; k + 1];
    let mut out = Vec::with_capacity(tree.node(node).vertex_count + k);
    let mut emitted = Vec::with_capacity(4);
    let mut stack = vec![Step {
        node,
        entry,
        rename: (1..=k).map(Slot::Placeholder).collect(),
    }];
    while let Some(s) = stack.pop() {
        let nd = tree.node(s.node);
        if nd.kind == SpKind::Leaf {
            emitted.clear();
            leaf_slots(nd.terminals, s.entry, &s.rename, &mut emitted);
            for &slot in &emitted {
                let seen = match slot {
                    Slot::Vertex(v) => &mut seen_vertex[v],
                    Slot::Placeholder(i) => &mut seen_placeholder[i],
                };
                if !std::mem::replace(seen, true) {
                    out.push(slot);
                }
            }
            continue;
        }
        let (_, steps) = plan(tree, tables, s.node, s.entry, &s.rename);
        stack.extend(steps.into_iter().rev());
    }
    out
}

/// The extended rooted instance a table entry stands for, on the vertex set
/// `V_t` followed by the placeholders `r_1..r_k`.
#[derive(Debug, Clone)]
pub struct EntryInstance {
    pub graph: ExtendedRootedGraph,
    local: HashMap<Vertex, usize>,
    span: usize,
}

impl EntryInstance {
    pub fn new(tree: &SpTree, node: usize, entry: Entry) -> Result<Self> {
        let span = tree.span(node);
        let local: HashMap<Vertex, usize> = span.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let (x, y) = tree.node(node).terminals;
        let mut solid: Vec<Edge> = tree
            .leaf_edges(node)
            .into_iter()
            .map(|(u, v)| norm(local[&u], local[&v]))
            .collect();
        solid.sort_unstable();
        solid.dedup();
        let k = match entry {
            Entry::Rooted => 0,
            Entry::Star { k, .. } => k,
        };
        let mut labels: Vec<String> = span.iter().map(|v| v.to_string()).collect();
        labels.extend((1..=k).map(|i| format!("r{}", i)));
        let graph = Graph::with_labels(labels, &solid)?;
        let n0 = span.len();
        let (roots, fictive) = match entry {
            Entry::Rooted => (vec![local[&x], local[&y]], Vec::new()),
            Entry::Star { k, anchor, closed } => {
                let a = local[&anchor.of((x, y))];
                let far = local[&anchor.flip().of((x, y))];
                let mut roots = vec![a];
                roots.extend(n0..n0 + k);
                let mut fictive: Vec<Edge> = (n0..n0 + k).map(|r| (far, r)).collect();
                if closed && !graph.has_edge(a, far) {
                    fictive.push((a, far));
                }
                (roots, fictive)
            }
        };
        let graph = ExtendedRootedGraph::new(graph, fictive, roots, Some((local[&x], local[&y])))?;
        Ok(Self {
            graph,
            local,
            span: n0,
        })
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    /// Translates witness slots into a layout of this instance.
    pub fn layout(&self, slots: &[Slot]) -> Result<Layout> {
        let order = slots
            .iter()
            .map(|s| match *s {
                Slot::Vertex(v) => self
                    .local
                    .get(&v)
                    .copied()
                    .ok_or(Error::UnknownVertex(v.to_string())),
                Slot::Placeholder(i) => Ok(self.span + i - 1),
            })
            .collect::<Result<Vec<_>>>()?;
        Layout::new(order, self.n())
    }
}

/// Checks a witness against its claimed value on the given instance.
pub(crate) fn check_witness(g: &ExtendedRootedGraph, layout: &Layout, value: Width) -> Result<()> {
    let connected = crate::layout::is_connected_rooted_layout(g, layout)?;
    let cost = crate::layout::layout_cost(g, layout, true)?;
    if !connected || cost != value {
        return Err(Error::WitnessCostMismatch {
            expected: value,
            actual: if connected { cost } else { Width::MAX },
        });
    }
    Ok(())
}
