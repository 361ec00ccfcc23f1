//! Seeded instance generators and a catalogue of named graphs.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, Vertex};

/// A graph together with the terminals of the composition that built it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoTerminal {
    pub graph: Graph,
    pub terminals: (Vertex, Vertex),
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Binary tree with `leaves` leaves, uniform over shapes (Rémy's algorithm).
/// Node 0 is a leaf iff it has no children; `children[v]` is `None` exactly
/// for leaves.
struct Shape {
    children: Vec<Option<(usize, usize)>>,
    parent: Vec<Option<usize>>,
    root: usize,
}

impl Shape {
    fn sample(leaves: usize, rng: &mut ChaCha8Rng) -> Self {
        let mut s = Shape {
            children: Vec::with_capacity(2 * leaves),
            parent: Vec::with_capacity(2 * leaves),
            root: 0,
        };
        s.children.push(None);
        s.parent.push(None);
        for _ in 1..leaves {
            let target = rng.gen_range(0..s.children.len());
            let leaf = s.children.len();
            s.children.push(None);
            s.parent.push(None);
            let inner = s.children.len();
            let pair = if rng.gen_bool(0.5) {
                (target, leaf)
            } else {
                (leaf, target)
            };
            s.children.push(Some(pair));
            s.parent.push(s.parent[target]);
            match s.parent[target] {
                None => s.root = inner,
                Some(p) => {
                    let (a, b) = s.children[p].expect("parent is internal");
                    s.children[p] = Some(if a == target { (inner, b) } else { (a, inner) });
                }
            }
            s.parent[target] = Some(inner);
            s.parent[leaf] = Some(inner);
        }
        s
    }
}

/// Realizes a random composition tree with `target_edges` leaves. Series or
/// parallel is a fair coin per internal node; duplicate edges produced by
/// parallel composition are merged, so the result may have fewer edges.
pub fn gen_random_sp(target_edges: usize, seed: u64) -> TwoTerminal {
    let mut rng = rng(seed);
    let leaves = target_edges.max(1);
    let shape = Shape::sample(leaves, &mut rng);
    let series: Vec<bool> = (0..shape.children.len())
        .map(|_| rng.gen_bool(0.5))
        .collect();
    let mut n = 2;
    let mut edges: Vec<Edge> = Vec::with_capacity(leaves);
    let mut stack = vec![(shape.root, 0, 1)];
    while let Some((t, x, y)) = stack.pop() {
        match shape.children[t] {
            None => edges.push((x, y)),
            Some((a, b)) if series[t] => {
                let z = n;
                n += 1;
                stack.push((b, z, y));
                stack.push((a, x, z));
            }
            Some((a, b)) => {
                stack.push((b, x, y));
                stack.push((a, x, y));
            }
        }
    }
    TwoTerminal {
        graph: Graph::simplify_index_multigraph(n, &edges),
        terminals: (0, 1),
    }
}

/// Random biconnected series-parallel graph on exactly `n` vertices, grown
/// from a triangle by subdividing edges or adding ears of length two.
/// Returns K1 or K2 for `n < 3`.
pub fn gen_biconnected_sp(n: usize, seed: u64) -> Graph {
    match n {
        0 | 1 => return Graph::from_edges(n, &[]).expect("empty graph"),
        2 => return Graph::from_edges(2, &[(0, 1)]).expect("K2"),
        _ => {}
    }
    let mut rng = rng(seed);
    let mut edges: Vec<Edge> = vec![(0, 1), (1, 2), (0, 2)];
    for w in 3..n {
        let i = rng.gen_range(0..edges.len());
        let (u, v) = edges[i];
        if rng.gen_bool(0.5) {
            edges[i] = (u, w);
        } else {
            edges.push((u, w));
        }
        edges.push((w, v));
    }
    Graph::from_edges(n, &edges).expect("generated edges are simple")
}

/// Connected treewidth-2 graph made of `blocks` random biconnected blocks
/// with `block_size` vertices each, every new block glued at one vertex to
/// a randomly chosen vertex already present.
pub fn gen_tw2(blocks: usize, block_size: usize, seed: u64) -> Graph {
    let mut rng = rng(seed);
    let size = block_size.max(2);
    let mut n = 0usize;
    let mut edges: Vec<Edge> = Vec::new();
    for b in 0..blocks.max(1) {
        let block = gen_biconnected_sp(size, rng.gen());
        let glue_local = rng.gen_range(0..size);
        let mut map = vec![0; size];
        if b == 0 {
            for (i, m) in map.iter_mut().enumerate() {
                *m = i;
            }
            n = size;
        } else {
            let host = rng.gen_range(0..n);
            for (i, m) in map.iter_mut().enumerate() {
                if i == glue_local {
                    *m = host;
                } else {
                    *m = n;
                    n += 1;
                }
            }
        }
        edges.extend(block.edges().iter().map(|&(u, v)| (map[u], map[v])));
    }
    Graph::from_edges(n, &edges).expect("glued blocks are simple")
}

/// Complete binary tree of height `k` in heap order plus an apex
/// (index `2^(k+1) - 1`) adjacent to every leaf.
pub fn gen_apex_binary_tree(k: u32) -> Graph {
    let tree = (1usize << (k + 1)) - 1;
    let first_leaf = (1usize << k) - 1;
    let apex = tree;
    let mut edges: Vec<Edge> = (1..tree).map(|v| ((v - 1) / 2, v)).collect();
    edges.extend((first_leaf..tree).map(|l| (l, apex)));
    Graph::from_edges(tree + 1, &edges).expect("apex binary tree is simple")
}

fn param(name: &str, prefix: &str) -> Option<usize> {
    name.strip_prefix(prefix)?.parse().ok()
}

fn path_edges(n: usize) -> Vec<Edge> {
    (1..n).map(|i| (i - 1, i)).collect()
}

/// Named small graphs. Parameterized names: `path-N`, `cycle-N` (N ≥ 3),
/// `star-N` (N leaves), `complete-N`, `wheel-N` (N rim vertices, N ≥ 3),
/// `fan-N` (path on N vertices plus an apex) and `apex-binary-tree-K`.
/// Fixed names: `K2`, `triangle`, `diamond`, `K4`, `two-triangles`.
pub fn gen_named(name: &str) -> Result<Graph> {
    let unknown = || Error::UnknownName(name.to_string());
    let g = match name {
        "K2" => Graph::from_edges(2, &[(0, 1)]),
        "triangle" => Graph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]),
        "diamond" => Graph::from_edges(4, &[(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)]),
        "K4" => Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]),
        "two-triangles" => Graph::from_edges(5, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)]),
        _ => {
            if let Some(k) = param(name, "apex-binary-tree-") {
                if k == 0 || k > 20 {
                    return Err(unknown());
                }
                return Ok(gen_apex_binary_tree(k as u32));
            }
            if let Some(n) = param(name, "path-") {
                if n == 0 {
                    return Err(unknown());
                }
                Graph::from_edges(n, &path_edges(n))
            } else if let Some(n) = param(name, "cycle-") {
                if n < 3 {
                    return Err(unknown());
                }
                let mut e = path_edges(n);
                e.push((n - 1, 0));
                Graph::from_edges(n, &e)
            } else if let Some(n) = param(name, "star-") {
                Graph::from_edges(n + 1, &(1..=n).map(|v| (0, v)).collect::<Vec<_>>())
            } else if let Some(n) = param(name, "complete-") {
                if n == 0 {
                    return Err(unknown());
                }
                let e: Vec<Edge> = (0..n)
                    .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                    .collect();
                Graph::from_edges(n, &e)
            } else if let Some(n) = param(name, "wheel-") {
                if n < 3 {
                    return Err(unknown());
                }
                let mut e = path_edges(n);
                e.push((n - 1, 0));
                e.extend((0..n).map(|v| (v, n)));
                Graph::from_edges(n + 1, &e)
            } else if let Some(n) = param(name, "fan-") {
                if n == 0 {
                    return Err(unknown());
                }
                let mut e = path_edges(n);
                e.extend((0..n).map(|v| (v, n)));
                Graph::from_edges(n + 1, &e)
            } else {
                return Err(unknown());
            }
        }
    };
    Ok(g.expect("catalogue graphs are simple"))
}
