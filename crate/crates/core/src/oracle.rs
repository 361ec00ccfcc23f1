//! Exhaustive layout search: the ground truth for the dynamic program.
//!
//! A vertex's supporting set depends only on which vertices precede it, so
//! it is fixed the moment the vertex is placed. The search extends prefixes
//! one vertex at a time and, when pruning, abandons a prefix as soon as its
//! running cost reaches the incumbent or a prefix with the same vertex set
//! was already explored at no higher cost.

use std::collections::HashMap;

use crate::dp::Width;
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::layout::{ExtendedRootedGraph, Layout};

pub const DEFAULT_LIMIT: usize = 11;
pub const DEFAULT_TW_LIMIT: usize = 9;
const MASK_BITS: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleOptions {
    pub limit: usize,
    pub prune: bool,
}

impl Default for OracleOptions {
    fn default() -> Self {
        Self {
            limit: DEFAULT_LIMIT,
            prune: true,
        }
    }
}

impl OracleOptions {
    pub fn with_limit(limit: usize) -> Self {
        Self {
            limit,
            ..Self::default()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleResult {
    pub value: Width,
    /// An optimal layout.
    pub layout: Layout,
}

struct Search {
    all: u64,
    solid: Vec<u64>,
    extended: Vec<u64>,
    roots: u64,
    connected: bool,
    prune: bool,
    best: Width,
    best_order: Vec<Vertex>,
    order: Vec<Vertex>,
    memo: HashMap<u64, Width>,
}

#[inline]
fn bits(mut m: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            return None;
        }
        let i = m.trailing_zeros() as usize;
        m &= m - 1;
        Some(i)
    })
}

impl Search {
    fn new(g: &ExtendedRootedGraph, connected: bool, prune: bool) -> Self {
        let n = g.n();
        let mut solid = vec![0u64; n];
        for &(u, v) in g.solid().edges() {
            solid[u] |= 1 << v;
            solid[v] |= 1 << u;
        }
        let mut extended = solid.clone();
        for &(u, v) in g.fictive() {
            extended[u] |= 1 << v;
            extended[v] |= 1 << u;
        }
        let roots = g.roots().iter().fold(0u64, |m, &r| m | 1 << r);
        let all = if n == MASK_BITS {
            u64::MAX
        } else {
            (1u64 << n) - 1
        };
        Self {
            all,
            solid,
            extended,
            roots,
            connected,
            prune,
            best: Width::MAX,
            best_order: Vec::new(),
            order: Vec::with_capacity(n),
            memo: HashMap::new(),
        }
    }

    /// |S(v)| when `v` is placed right after the set `placed`.
    fn support(&self, placed: u64, v: Vertex) -> Width {
        let later = self.all & !placed & !(1 << v);
        let mut comp = 1u64 << v;
        let mut frontier = comp;
        let mut reach = 0u64;
        while frontier != 0 {
            let mut next = 0;
            for u in bits(frontier) {
                next |= self.extended[u];
            }
            reach |= next;
            let fresh = next & later & !comp;
            comp |= fresh;
            frontier = fresh;
        }
        (reach & placed).count_ones()
    }

    fn candidates(&self, placed: u64) -> u64 {
        let open = self.all & !placed;
        if self.roots & !placed != 0 {
            return self.roots & !placed;
        }
        if !self.connected || placed == 0 {
            return open;
        }
        bits(open)
            .filter(|&v| self.solid[v] & placed != 0)
            .fold(0, |m, v| m | 1 << v)
    }

    fn run(&mut self, placed: u64, cost: Width) {
        if placed == self.all {
            if cost < self.best {
                self.best = cost;
                self.best_order = self.order.clone();
            }
            return;
        }
        if self.prune {
            if cost >= self.best {
                return;
            }
            match self.memo.get(&placed) {
                Some(&seen) if seen <= cost => return,
                _ => {
                    self.memo.insert(placed, cost);
                }
            }
        }
        for v in bits(self.candidates(placed)) {
            let next = cost.max(self.support(placed, v));
            if self.prune && next >= self.best {
                continue;
            }
            self.order.push(v);
            self.run(placed | 1 << v, next);
            self.order.pop();
        }
    }
}

fn search(g: &ExtendedRootedGraph, connected: bool, opts: &OracleOptions) -> Result<OracleResult> {
    let n = g.n();
    if n > opts.limit.min(MASK_BITS) {
        return Err(Error::TooLarge {
            n,
            limit: opts.limit.min(MASK_BITS),
        });
    }
    if connected && !g.admits_connected_layout() {
        return Err(Error::NoConnectedLayout);
    }
    if n == 0 {
        return Ok(OracleResult {
            value: 0,
            layout: Layout::new(Vec::new(), 0)?,
        });
    }
    let mut s = Search::new(g, connected, opts.prune);
    s.run(0, 0);
    if s.best == Width::MAX {
        return Err(Error::NoConnectedLayout);
    }
    Ok(OracleResult {
        value: s.best,
        layout: Layout::new(s.best_order, n)?,
    })
}

/// Minimum extended cost over connected rooted layouts.
pub fn brute_ectvs(g: &ExtendedRootedGraph, opts: &OracleOptions) -> Result<OracleResult> {
    search(g, true, opts)
}

/// Connected treewidth by exhaustive search over connected layouts.
pub fn brute_ctw(g: &Graph, opts: &OracleOptions) -> Result<OracleResult> {
    if g.n() > opts.limit {
        return Err(Error::TooLarge {
            n: g.n(),
            limit: opts.limit,
        });
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    search(&ExtendedRootedGraph::plain(g.clone()), true, opts)
}

/// Treewidth as the vertex separation number over all layouts.
pub fn brute_tw(g: &Graph, opts: &OracleOptions) -> Result<OracleResult> {
    search(&ExtendedRootedGraph::plain(g.clone()), false, opts)
}

/// `G⁺`: the graph plus a vertex adjacent to all others.
pub fn apex_construction(g: &Graph) -> Graph {
    g.with_apex()
}
