//! Connected treewidth of biconnected series-parallel graphs and of graphs
//! of treewidth at most two.

use rayon::prelude::*;

use crate::blocks::BlockCutTree;
use crate::dp::{cap_for, fold, fold_root_value, Entry, SeriesRule, Width};
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, Vertex};
use crate::layout::{graph_layout_cost, is_connected_layout, ExtendedRootedGraph, Layout};
use crate::sptree::sp_tree_for_edge;
use crate::witness::{check_witness, entry_witness, Slot};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolveOptions {
    /// Added to the table cap; values never change with it.
    pub cap_slack: usize,
    /// Reconstruct and validate a witness layout.
    pub witness: bool,
    pub series_rule: SeriesRule,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self {
            cap_slack: 0,
            witness: true,
            series_rule: SeriesRule::Mirrored,
        }
    }
}

/// Per-block outcome of a solve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockReport {
    /// Block vertices in the input graph, sorted.
    pub vertices: Vec<Vertex>,
    /// Connected treewidth of the block on its own.
    pub ctw: Width,
    /// Cut vertex through which the block is entered from the starting
    /// block, with the block's value when rooted there.
    pub entry: Option<(Vertex, Width)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Provenance {
    /// Block the witness layout starts in.
    pub start_block: usize,
    /// Root edge of the starting block's optimal rooted-edge instance.
    pub start_edge: Option<Edge>,
    pub blocks: Vec<BlockReport>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveResult {
    pub value: Width,
    /// A connected layout of cost `value`; `None` when witnesses are off.
    pub witness: Option<Layout>,
    pub provenance: Provenance,
}

/// Value of the rooted-edge instance at a fixed cap; exact when `<= cap`.
fn edge_value(g: &Graph, x: Vertex, y: Vertex, cap: usize, rule: SeriesRule) -> Result<Width> {
    if g.m() == 1 {
        return Ok(1);
    }
    let tree = sp_tree_for_edge(g, x, y)?;
    Ok(fold_root_value(&tree, cap, rule))
}

/// Witness for the rooted-edge instance, starting `x, y`.
fn edge_witness(
    g: &Graph,
    x: Vertex,
    y: Vertex,
    cap: usize,
    rule: SeriesRule,
) -> Result<(Width, Layout)> {
    let tree = sp_tree_for_edge(g, x, y)?;
    let tables = fold(&tree, cap, rule);
    let value = tables.get(tree.root(), Entry::Rooted);
    let order: Vec<Vertex> = entry_witness(&tree, &tables, tree.root(), Entry::Rooted)
        .into_iter()
        .map(|s| match s {
            Slot::Vertex(v) => v,
            Slot::Placeholder(_) => unreachable!("rooted entries have no placeholders"),
        })
        .collect();
    let layout = Layout::new(order, g.n()).map_err(|_| Error::WitnessCostMismatch {
        expected: value,
        actual: Width::MAX,
    })?;
    let instance = ExtendedRootedGraph::rooted(g.clone(), vec![x, y])?;
    check_witness(&instance, &layout, value)?;
    Ok((value, layout))
}

fn initial_cap(n: usize, opts: &SolveOptions) -> usize {
    cap_for(n) + opts.cap_slack
}

/// ectvs of `g` rooted at the edge `xy`, with a witness whose first two
/// vertices are `x, y`.
pub fn ectvs_rooted_edge(
    g: &Graph,
    x: Vertex,
    y: Vertex,
    opts: &SolveOptions,
) -> Result<(Width, Layout)> {
    let mut cap = initial_cap(g.n(), opts);
    loop {
        let value = edge_value(g, x, y, cap, opts.series_rule)?;
        if value as usize <= cap {
            return edge_witness(g, x, y, cap, opts.series_rule);
        }
        cap *= 2;
    }
}

/// Rooted-edge values of every edge of one block, at a cap large enough for
/// the block's unrooted value and its value rooted at every `required` vertex.
struct BlockValues {
    edges: Vec<Edge>,
    values: Vec<Width>,
    cap: usize,
}

impl BlockValues {
    fn compute(g: &Graph, required: &[Vertex], opts: &SolveOptions) -> Result<Self> {
        let edges = g.edges().to_vec();
        let mut cap = initial_cap(g.n(), opts);
        loop {
            let values = edges
                .par_iter()
                .map(|&(u, v)| edge_value(g, u, v, cap, opts.series_rule))
                .collect::<Result<Vec<_>>>()?;
            let this = Self {
                edges: edges.clone(),
                values,
                cap,
            };
            let ok = this.best(None).is_none_or(|(_, w)| w as usize <= cap)
                && required
                    .iter()
                    .all(|&r| this.best(Some(r)).is_none_or(|(_, w)| w as usize <= cap));
            if ok {
                return Ok(this);
            }
            cap *= 2;
        }
    }

    /// First minimum over all edges, or over the edges at `at`.
    fn best(&self, at: Option<Vertex>) -> Option<(usize, Width)> {
        let mut best: Option<(usize, Width)> = None;
        for (i, (&(u, v), &w)) in self.edges.iter().zip(&self.values).enumerate() {
            if at.is_none_or(|r| r == u || r == v) && best.is_none_or(|(_, b)| w < b) {
                best = Some((i, w));
            }
        }
        best
    }
}

fn require_biconnected(g: &Graph) -> Result<()> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    if g.n() > 2 && BlockCutTree::new(g)?.blocks().len() != 1 {
        return Err(Error::NotBiconnected);
    }
    Ok(())
}

fn trivial(g: &Graph) -> Option<SolveResult> {
    let value = match g.n() {
        0 | 1 => 0,
        2 if g.m() == 1 => 1,
        _ => return None,
    };
    let witness = Layout::new((0..g.n()).collect(), g.n()).expect("identity layout");
    let blocks = vec![BlockReport {
        vertices: (0..g.n()).collect(),
        ctw: value,
        entry: None,
    }];
    let start_edge = g.edges().first().copied();
    Some(SolveResult {
        value,
        witness: Some(witness),
        provenance: Provenance {
            start_block: 0,
            start_edge,
            blocks,
        },
    })
}

/// Connected treewidth of a biconnected series-parallel graph (or `K2`).
pub fn ctw_biconnected(g: &Graph, opts: &SolveOptions) -> Result<SolveResult> {
    require_biconnected(g)?;
    if let Some(r) = trivial(g) {
        return Ok(r);
    }
    let values = BlockValues::compute(g, &[], opts)?;
    let (i, value) = values.best(None).expect("biconnected graphs have edges");
    let (x, y) = values.edges[i];
    let witness = if opts.witness {
        let (w, layout) = edge_witness(g, x, y, values.cap, opts.series_rule)?;
        debug_assert_eq!(w, value);
        Some(layout)
    } else {
        None
    };
    let blocks = vec![BlockReport {
        vertices: (0..g.n()).collect(),
        ctw: value,
        entry: None,
    }];
    Ok(SolveResult {
        value,
        witness,
        provenance: Provenance {
            start_block: 0,
            start_edge: Some((x, y)),
            blocks,
        },
    })
}

/// Connected tree vertex separation of a biconnected SP graph when every
/// layout must start at `r`.
pub fn ctvs_block_rooted(g: &Graph, r: Vertex, opts: &SolveOptions) -> Result<(Width, Layout)> {
    require_biconnected(g)?;
    if r >= g.n() {
        return Err(Error::UnknownVertex(r.to_string()));
    }
    if g.n() <= 2 {
        let mut order: Vec<Vertex> = (0..g.n()).collect();
        order.swap(0, r);
        return Ok((g.m() as Width, Layout::new(order, g.n())?));
    }
    let values = BlockValues::compute(g, &[r], opts)?;
    let (i, value) = values.best(Some(r)).expect("r has an incident edge");
    let (u, v) = values.edges[i];
    let other = if u == r { v } else { u };
    let (_, layout) = edge_witness(g, r, other, values.cap, opts.series_rule)?;
    Ok((value, layout))
}

/// Connected treewidth of a connected graph of treewidth at most two.
pub fn ctw(g: &Graph, opts: &SolveOptions) -> Result<SolveResult> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    if let Some(r) = trivial(g) {
        return Ok(r);
    }
    let bct = BlockCutTree::new(g)?;
    let nb = bct.blocks().len();
    let locals: Vec<(Graph, Vec<Vertex>)> = bct.blocks().iter().map(|b| g.induced(b)).collect();
    let evaluated = locals
        .iter()
        .map(|(local, map)| {
            let required: Vec<Vertex> = (0..local.n())
                .filter(|&v| bct.is_cut_vertex(map[v]))
                .collect();
            BlockValues::compute(local, &required, opts).map_err(|e| match e {
                Error::NotSeriesParallel => Error::NotTreewidth2 {
                    block: map.iter().map(|&v| g.label(v).to_string()).collect(),
                },
                e => e,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let local_index =
        |b: usize, v: Vertex| bct.blocks()[b].binary_search(&v).expect("vertex in block");
    let unrooted: Vec<Width> = evaluated
        .iter()
        .map(|e| e.best(None).expect("blocks have edges").1)
        .collect();
    let rooted = |b: usize, c: Vertex| {
        evaluated[b]
            .best(Some(local_index(b, c)))
            .expect("cut vertex has an edge")
    };

    let mut best: Option<(usize, Width)> = None;
    for (start, &own) in unrooted.iter().enumerate() {
        let mut value = own;
        for (b, entry) in bct.traversal_from(start).into_iter().skip(1) {
            value = value.max(rooted(b, entry.expect("entered through a cut vertex")).1);
        }
        if best.is_none_or(|(_, v)| value < v) {
            best = Some((start, value));
        }
    }
    let (start, value) = best.expect("at least one block");
    let order = bct.traversal_from(start);

    let mut blocks: Vec<BlockReport> = (0..nb)
        .map(|b| BlockReport {
            vertices: bct.blocks()[b].clone(),
            ctw: unrooted[b],
            entry: None,
        })
        .collect();
    for &(b, entry) in &order[1..] {
        let c = entry.expect("entered through a cut vertex");
        blocks[b].entry = Some((c, rooted(b, c).1));
    }
    let (si, _) = evaluated[start].best(None).expect("blocks have edges");
    let start_edge = {
        let (u, v) = evaluated[start].edges[si];
        let map = &locals[start].1;
        Some((map[u], map[v]))
    };

    let witness = if opts.witness {
        let mut placed = vec![false; g.n()];
        let mut sequence = Vec::with_capacity(g.n());
        for &(b, entry) in &order {
            let (local, map) = &locals[b];
            let values = &evaluated[b];
            let (i, root) = match entry {
                None => (si, None),
                Some(c) => {
                    let (i, _) = rooted(b, c);
                    (i, Some(local_index(b, c)))
                }
            };
            let (u, v) = values.edges[i];
            let (x, y) = match root {
                Some(r) if r == v => (v, u),
                _ => (u, v),
            };
            let (_, layout) = if local.m() == 1 {
                (1, Layout::new(vec![x, y], 2)?)
            } else {
                edge_witness(local, x, y, values.cap, opts.series_rule)?
            };
            for &w in layout.order() {
                let gv = map[w];
                if !std::mem::replace(&mut placed[gv], true) {
                    sequence.push(gv);
                }
            }
        }
        let layout = Layout::new(sequence, g.n())?;
        let cost = graph_layout_cost(g, &layout)?;
        if !is_connected_layout(g, &layout)? || cost != value {
            return Err(Error::WitnessCostMismatch {
                expected: value,
                actual: cost,
            });
        }
        Some(layout)
    } else {
        None
    };
    Ok(SolveResult {
        value,
        witness,
        provenance: Provenance {
            start_block: start,
            start_edge,
            blocks,
        },
    })
}

/// Value only; same as `ctw(g).value` without witness reconstruction.
pub fn ctw_value(g: &Graph) -> Result<Width> {
    ctw(
        g,
        &SolveOptions {
            witness: false,
            ..SolveOptions::default()
        },
    )
    .map(|r| r.value)
}
