//! Dynamic-programming tables over SP-trees.
//!
//! Every node `t` with terminals `(x_t, y_t)` stores:
//!
//! * the *rooted* value: ectvs of `G_t` with roots `{x_t, y_t}`;
//! * for `k = 1..=cap` and each anchor terminal `a`, the *star* value: `G_t`
//!   plus `k` isolated roots `r_1..r_k`, roots `{a, r_1..r_k}`, and fictive
//!   edges from the terminal opposite `a` to every `r_i`;
//! * the *closed star* value: the star instance plus the fictive edge
//!   `x_t y_t`.
//!
//! Requests for `k > cap` answer [`SATURATED`]. Star instances cost at least
//! `k + 1`, and every combination is a min/max expression, so any value the
//! tables report at or below `cap` is exact.

use crate::error::{Error, Result};
use crate::graph::Vertex;
use crate::sptree::{SpKind, SpTree};

/// Width values stored in the tables.
pub type Width = u32;

/// Saturated entry: exceeds the table cap and cannot be optimal.
pub const SATURATED: Width = Width::MAX;

/// Which terminal of a node anchors a star entry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    First,
    Second,
}

impl Side {
    pub fn of(self, terminals: (Vertex, Vertex)) -> Vertex {
        match self {
            Side::First => terminals.0,
            Side::Second => terminals.1,
        }
    }

    pub fn flip(self) -> Side {
        match self {
            Side::First => Side::Second,
            Side::Second => Side::First,
        }
    }
}

/// Address of one table value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Entry {
    Rooted,
    Star {
        k: usize,
        anchor: Side,
        closed: bool,
    },
}

impl Entry {
    pub fn star(k: usize, anchor: Side) -> Self {
        Entry::Star {
            k,
            anchor,
            closed: false,
        }
    }

    pub fn closed_star(k: usize, anchor: Side) -> Self {
        Entry::Star {
            k,
            anchor,
            closed: true,
        }
    }

    /// Every entry of a table with the given cap.
    pub fn all(cap: usize) -> impl Iterator<Item = Entry> {
        std::iter::once(Entry::Rooted).chain((1..=cap).flat_map(|k| {
            [
                Entry::star(k, Side::First),
                Entry::star(k, Side::Second),
                Entry::closed_star(k, Side::First),
                Entry::closed_star(k, Side::Second),
            ]
        }))
    }
}

/// `⌈2·(log₂ n + 1)⌉`, the connected treewidth bound for treewidth-2
/// graphs on `n` vertices.
pub fn cap_for(n: usize) -> usize {
    (2.0 * ((n.max(1) as f64).log2() + 1.0)).ceil() as usize
}

/// Which series recurrence to use for the entries anchored at `y_t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SeriesRule {
    /// Mirror image of the `x_t` rules: the `y_t`-anchored values come from
    /// the second child, the far side from the first child's `z` entries.
    #[default]
    Mirrored,
    /// Positional transcription of the index-drifted recurrence, reading the
    /// first child's `y_t` slot as its second terminal. Kept for auditing:
    /// it is unsound.
    Literal,
}

#[inline]
fn stride(cap: usize) -> usize {
    1 + 4 * cap
}

#[inline]
fn slot(cap: usize, k: usize, anchor: Side, closed: bool) -> usize {
    1 + (closed as usize) * 2 * cap + (anchor as usize) * cap + (k - 1)
}

#[inline]
fn read(t: &[Width], cap: usize, e: Entry) -> Width {
    match e {
        Entry::Rooted => t[0],
        Entry::Star { k, anchor, closed } => {
            debug_assert!(k >= 1);
            if k > cap {
                SATURATED
            } else {
                t[slot(cap, k, anchor, closed)]
            }
        }
    }
}

fn leaf_into(out: &mut [Width], cap: usize) {
    out[0] = 1;
    for closed in [false, true] {
        for anchor in [Side::First, Side::Second] {
            for k in 1..=cap {
                out[slot(cap, k, anchor, closed)] = k as Width + 1;
            }
        }
    }
}

fn parallel_into(t1: &[Width], t2: &[Width], out: &mut [Width], cap: usize) {
    out[0] = t1[0].max(t2[0]);
    for anchor in [Side::First, Side::Second] {
        for k in 1..=cap {
            let b = Entry::closed_star(k, anchor);
            let v = read(t1, cap, b).max(t2[0]).min(read(t2, cap, b).max(t1[0]));
            out[slot(cap, k, anchor, false)] = v;
            out[slot(cap, k, anchor, true)] = v;
        }
    }
}

fn series_into(t1: &[Width], t2: &[Width], out: &mut [Width], cap: usize, rule: SeriesRule) {
    use Side::{First, Second};
    // t1 = (x, z), t2 = (z, y)
    out[0] = read(t1, cap, Entry::star(1, First))
        .max(t2[0])
        .min(read(t2, cap, Entry::star(1, Second)).max(t1[0]));
    for k in 1..=cap {
        out[slot(cap, k, First, false)] =
            read(t1, cap, Entry::star(k, First)).max(read(t2, cap, Entry::star(k, First)));
        out[slot(cap, k, First, true)] = read(t1, cap, Entry::closed_star(k, First)).max(read(
            t2,
            cap,
            Entry::star(k + 1, First),
        ));
        let (a_y, b_y) = match rule {
            SeriesRule::Mirrored => (
                read(t2, cap, Entry::star(k, Second)).max(read(t1, cap, Entry::star(k, Second))),
                read(t2, cap, Entry::closed_star(k, Second)).max(read(
                    t1,
                    cap,
                    Entry::star(k + 1, Second),
                )),
            ),
            SeriesRule::Literal => (
                read(t1, cap, Entry::star(k, Second)).max(read(t2, cap, Entry::star(k, First))),
                read(t1, cap, Entry::closed_star(k, Second)).max(read(
                    t2,
                    cap,
                    Entry::star(k + 1, First),
                )),
            ),
        };
        out[slot(cap, k, Second, false)] = a_y;
        out[slot(cap, k, Second, true)] = b_y;
    }
}

/// One node's table, owning its values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DpTable {
    terminals: (Vertex, Vertex),
    cap: usize,
    data: Vec<Width>,
}

impl DpTable {
    /// Table of the single edge `xy`: rooted value 1, every star value `k + 1`.
    pub fn leaf(x: Vertex, y: Vertex, cap: usize) -> Self {
        let mut data = vec![0; stride(cap)];
        leaf_into(&mut data, cap);
        Self {
            terminals: (x, y),
            cap,
            data,
        }
    }

    pub fn terminals(&self) -> (Vertex, Vertex) {
        self.terminals
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn get(&self, e: Entry) -> Width {
        read(&self.data, self.cap, e)
    }

    pub fn rooted(&self) -> Width {
        self.data[0]
    }

    /// Star value addressed by the anchor vertex itself.
    pub fn star_at(&self, k: usize, anchor: Vertex, closed: bool) -> Result<Width> {
        let side = if anchor == self.terminals.0 {
            Side::First
        } else if anchor == self.terminals.1 {
            Side::Second
        } else {
            return Err(Error::NotATerminal(anchor));
        };
        Ok(self.get(Entry::Star {
            k,
            anchor: side,
            closed,
        }))
    }
}

/// Parallel composition of two tables over the same terminal pair.
pub fn combine_parallel(t1: &DpTable, t2: &DpTable) -> Result<DpTable> {
    if t1.terminals != t2.terminals || t1.cap != t2.cap {
        return Err(Error::TerminalMismatch);
    }
    let mut data = vec![0; stride(t1.cap)];
    parallel_into(&t1.data, &t2.data, &mut data, t1.cap);
    Ok(DpTable {
        terminals: t1.terminals,
        cap: t1.cap,
        data,
    })
}

/// Series composition of `(x, z)` with `(z, y)`.
pub fn combine_series(t1: &DpTable, t2: &DpTable) -> Result<DpTable> {
    combine_series_with(t1, t2, SeriesRule::Mirrored)
}

pub fn combine_series_with(t1: &DpTable, t2: &DpTable, rule: SeriesRule) -> Result<DpTable> {
    let ((x, z1), (z2, y)) = (t1.terminals, t2.terminals);
    if z1 != z2 || x == y || t1.cap != t2.cap {
        return Err(Error::TerminalMismatch);
    }
    let mut data = vec![0; stride(t1.cap)];
    series_into(&t1.data, &t2.data, &mut data, t1.cap, rule);
    Ok(DpTable {
        terminals: (x, y),
        cap: t1.cap,
        data,
    })
}

/// The `y`-anchored series values written exactly as the drifted recurrence
/// indexes them, with anchors given as vertices. The first child's table has
/// no `y` entry, so this is rejected with [`Error::NotATerminal`].
pub fn series_y_entries_by_vertex(t1: &DpTable, t2: &DpTable, k: usize) -> Result<(Width, Width)> {
    let ((_, z), (_, y)) = (t1.terminals, t2.terminals);
    let star = t1.star_at(k, y, false)?.max(t2.star_at(k, z, false)?);
    let closed = t1.star_at(k, y, true)?.max(t2.star_at(k + 1, z, false)?);
    Ok((star, closed))
}

/// Tables for every node of one SP-tree, stored contiguously.
#[derive(Debug, Clone)]
pub struct TreeTables {
    cap: usize,
    data: Vec<Width>,
}

impl TreeTables {
    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn get(&self, t: usize, e: Entry) -> Width {
        read(self.slice(t), self.cap, e)
    }

    pub(crate) fn slice(&self, t: usize) -> &[Width] {
        let s = stride(self.cap);
        &self.data[t * s..(t + 1) * s]
    }

    pub fn table(&self, tree: &SpTree, t: usize) -> DpTable {
        DpTable {
            terminals: tree.node(t).terminals,
            cap: self.cap,
            data: self.slice(t).to_vec(),
        }
    }
}

/// Fills the tables of every node bottom-up.
pub fn fold(tree: &SpTree, cap: usize, rule: SeriesRule) -> TreeTables {
    let s = stride(cap);
    let mut data = vec![0; s * tree.len()];
    for (t, node) in tree.nodes().iter().enumerate() {
        let (done, rest) = data.split_at_mut(t * s);
        let out = &mut rest[..s];
        match (node.kind, node.children) {
            (SpKind::Leaf, _) => leaf_into(out, cap),
            (kind, Some((a, b))) => {
                let (ta, tb) = (&done[a * s..(a + 1) * s], &done[b * s..(b + 1) * s]);
                match kind {
                    SpKind::Series => series_into(ta, tb, out, cap, rule),
                    _ => parallel_into(ta, tb, out, cap),
                }
            }
            _ => unreachable!("internal nodes have two children"),
        }
    }
    TreeTables { cap, data }
}

/// Rooted value of the tree's root. Post-order makes the pending child
/// tables a stack, so only O(depth) tables are live at once.
pub fn fold_root_value(tree: &SpTree, cap: usize, rule: SeriesRule) -> Width {
    let s = stride(cap);
    let mut stack: Vec<Width> = Vec::with_capacity(s * 64);
    let mut scratch = vec![0; s];
    for node in tree.nodes() {
        match node.kind {
            SpKind::Leaf => {
                let top = stack.len();
                stack.resize(top + s, 0);
                leaf_into(&mut stack[top..], cap);
            }
            kind => {
                let top = stack.len();
                let (ta, tb) = stack[top - 2 * s..].split_at(s);
                match kind {
                    SpKind::Series => series_into(ta, tb, &mut scratch, cap, rule),
                    _ => parallel_into(ta, tb, &mut scratch, cap),
                }
                stack.truncate(top - 2 * s);
                stack.extend_from_slice(&scratch);
            }
        }
    }
    debug_assert_eq!(stack.len(), s);
    stack[0]
}
