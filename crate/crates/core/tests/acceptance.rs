//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fails.

use std::time::{Duration, Instant};

use ctw_core::dp::fold;
use ctw_core::generators::{gen_apex_binary_tree, gen_biconnected_sp, gen_random_sp, gen_tw2};
use ctw_core::layout::{graph_layout_cost, is_connected_layout};
use ctw_core::oracle::DEFAULT_TW_LIMIT;
use ctw_core::scaling::{loglog_slope, time_min};
use ctw_core::sptree::{recognize_sp, sp_tree_for_edge, SpTree};
use ctw_core::witness::{entry_witness, EntryInstance};
use ctw_core::{
    apex_construction, brute_ctw, brute_ectvs, brute_tw, cap_for, ctw, is_connected_rooted_layout,
    layout_cost, DpTable, Edge, Entry, Error, Graph, OracleOptions, SeriesRule, SolveOptions,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SP_INSTANCES: usize = 500;
const TW2_INSTANCES: usize = 200;
const MAX_N_RANDOM: usize = 8;
const EXHAUSTIVE_N: usize = 6;
const TABLE_INSTANCES: usize = 100;
const TABLE_MAX_VERTICES: usize = 9;
/// Cap for table-level checks. Every checked instance has at most nine
/// vertices, so its value is at most eight and never saturates.
const TABLE_CAP: usize = 10;
const APEX_CORPUS: usize = 100;
const APEX_MAX_N: usize = 7;
const SEPARATION_K: u32 = 5;
const SEPARATION_ORACLE_K: u32 = 3;
const SCALING_SIZES: [usize; 5] = [200, 400, 800, 1600, 3200];
const SCALING_BLOCKS: usize = 8;
const SCALING_REPS: usize = 3;
const SLOPE_BICONNECTED: f64 = 2.4;
const SLOPE_MULTI_BLOCK: f64 = 3.4;
const SCALING_BUDGET: Duration = Duration::from_secs(600);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

/// Shared evidence gathered while running criteria 1 and 2.
#[derive(Default)]
struct Ledger {
    witness_checks: usize,
    witness_failures: Vec<String>,
    sp_solved: Vec<(usize, u32)>,
}

impl Ledger {
    fn check_graph_witness(&mut self, g: &Graph, value: u32, layout: &ctw_core::Layout, tag: &str) {
        self.witness_checks += 1;
        let ok = is_connected_layout(g, layout).unwrap_or(false)
            && graph_layout_cost(g, layout) == Ok(value);
        if !ok {
            self.witness_failures
                .push(format!("{} {:?}", tag, g.edges()));
        }
    }
}

fn all_connected_graphs(n: usize) -> Vec<Graph> {
    let pairs: Vec<Edge> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    (0u64..1 << pairs.len())
        .filter_map(|mask| {
            let edges: Vec<Edge> = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &e)| e)
                .collect();
            let g = Graph::from_edges(n, &edges).unwrap();
            g.is_connected().then_some(g)
        })
        .collect()
}

fn tw_opts() -> OracleOptions {
    OracleOptions::with_limit(DEFAULT_TW_LIMIT)
}

/// DP against the oracle on one graph; `Err` describes a mismatch.
fn compare_graph(g: &Graph, ledger: &mut Ledger, sp: bool) -> Result<(), String> {
    let oracle =
        brute_ctw(g, &OracleOptions::default()).map_err(|e| format!("oracle error {:?}", e))?;
    let solved = ctw(g, &SolveOptions::default())
        .map_err(|e| format!("solver error {:?} on {:?}", e, g.edges()))?;
    if solved.value != oracle.value {
        return Err(format!(
            "dp {} oracle {} on n={} {:?}",
            solved.value,
            oracle.value,
            g.n(),
            g.edges()
        ));
    }
    ledger.check_graph_witness(
        g,
        solved.value,
        solved.witness.as_ref().expect("witness requested"),
        "solve",
    );
    if sp {
        ledger.sp_solved.push((g.n(), solved.value));
    }
    Ok(())
}

fn criterion_1(ledger: &mut Ledger) -> Outcome {
    let mut mismatches = Vec::new();
    let mut exhaustive = 0;
    let mut rejected = 0;
    for n in 1..=EXHAUSTIVE_N {
        for g in all_connected_graphs(n) {
            let tw = brute_tw(&g, &tw_opts()).unwrap().value;
            if tw > 2 {
                match ctw(&g, &SolveOptions::default()) {
                    Err(Error::NotTreewidth2 { .. }) => rejected += 1,
                    other => mismatches.push(format!(
                        "tw {} graph not rejected: {:?}",
                        tw,
                        other.map(|r| r.value)
                    )),
                }
                continue;
            }
            exhaustive += 1;
            if let Err(m) = compare_graph(&g, ledger, false) {
                mismatches.push(m);
            }
        }
    }
    let mut sp = 0;
    let mut seed = 0u64;
    while sp < SP_INSTANCES {
        let t = gen_random_sp(1 + (seed as usize % 14), seed);
        seed += 1;
        if t.graph.n() > MAX_N_RANDOM {
            continue;
        }
        sp += 1;
        if let Err(m) = compare_graph(&t.graph, ledger, true) {
            mismatches.push(m);
        }
    }
    let mut tw2 = 0;
    let mut seed = 0u64;
    while tw2 < TW2_INSTANCES {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = gen_tw2(rng.gen_range(1..=4), rng.gen_range(2..=5), seed);
        seed += 1;
        if g.n() > MAX_N_RANDOM {
            continue;
        }
        tw2 += 1;
        if let Err(m) = compare_graph(&g, ledger, false) {
            mismatches.push(m);
        }
    }
    outcome(
        mismatches.is_empty(),
        format!(
            "{} exhaustive graphs n<={} (+{} tw>2 rejected), {} random SP, {} glued tw2; {} mismatches{}",
            exhaustive,
            EXHAUSTIVE_N,
            rejected,
            sp,
            tw2,
            mismatches.len(),
            mismatches.first().map(|m| format!(", first: {}", m)).unwrap_or_default()
        ),
    )
}

/// SP-trees for the table-level checks: composition trees of random SP
/// graphs and edge-rooted trees of random biconnected ones.
fn table_trees() -> Vec<SpTree> {
    let mut trees = Vec::new();
    let mut seed = 0u64;
    while trees.len() < TABLE_INSTANCES {
        let t = gen_random_sp(2 + (seed as usize % 12), seed);
        if let Ok(tree) = recognize_sp(&t.graph, t.terminals.0, t.terminals.1) {
            trees.push(tree);
        }
        let g = gen_biconnected_sp(3 + (seed as usize % 8), seed);
        let (x, y) = g.edges()[seed as usize % g.m()];
        trees.push(sp_tree_for_edge(&g, x, y).unwrap());
        seed += 1;
    }
    trees
}

struct TableStats {
    instances: usize,
    entries: usize,
    mismatches: Vec<String>,
}

fn table_check(trees: &[SpTree], rule: SeriesRule, ledger: Option<&mut Ledger>) -> TableStats {
    let mut stats = TableStats {
        instances: trees.len(),
        entries: 0,
        mismatches: Vec::new(),
    };
    let mut ledger = ledger;
    for tree in trees {
        let tables = fold(tree, TABLE_CAP, rule);
        for t in 0..tree.len() {
            let size = tree.node(t).vertex_count;
            for entry in Entry::all(TABLE_CAP) {
                let k = match entry {
                    Entry::Rooted => 0,
                    Entry::Star { k, .. } => k,
                };
                if size + k > TABLE_MAX_VERTICES {
                    continue;
                }
                let inst = EntryInstance::new(tree, t, entry).unwrap();
                let oracle = brute_ectvs(&inst.graph, &OracleOptions::default())
                    .unwrap()
                    .value;
                let dp = tables.get(t, entry);
                stats.entries += 1;
                if dp != oracle {
                    if stats.mismatches.is_empty() {
                        let node = tree.node(t);
                        stats.mismatches.push(format!(
                            "{:?} at node with terminals {:?}, edges {:?}: dp {} oracle {}",
                            entry,
                            node.terminals,
                            tree.leaf_edges(t),
                            dp,
                            oracle
                        ));
                    } else {
                        stats.mismatches.push(String::new());
                    }
                    continue;
                }
                if let Some(ledger) = ledger.as_deref_mut() {
                    ledger.witness_checks += 1;
                    let slots = entry_witness(tree, &tables, t, entry);
                    let ok = inst.layout(&slots).ok().is_some_and(|l| {
                        is_connected_rooted_layout(&inst.graph, &l).unwrap_or(false)
                            && layout_cost(&inst.graph, &l, true) == Ok(dp)
                    });
                    if !ok {
                        ledger.witness_failures.push(format!(
                            "{:?} on {:?}",
                            entry,
                            tree.leaf_edges(t)
                        ));
                    }
                }
            }
        }
    }
    stats
}

fn criterion_2(trees: &[SpTree], ledger: &mut Ledger) -> Outcome {
    let s = table_check(trees, SeriesRule::Mirrored, Some(ledger));
    outcome(
        s.mismatches.is_empty() && s.instances >= TABLE_INSTANCES,
        format!(
            "{} SP-trees, {} entries with <= {} vertices, {} mismatches{}",
            s.instances,
            s.entries,
            TABLE_MAX_VERTICES,
            s.mismatches.len(),
            s.mismatches
                .first()
                .map(|m| format!(", first: {}", m))
                .unwrap_or_default()
        ),
    )
}

fn criterion_3() -> Outcome {
    let mut bad = Vec::new();
    for cap in 1..=16 {
        let t = DpTable::leaf(0, 1, cap);
        if t.rooted() != 1 {
            bad.push(format!("E0 = {} at cap {}", t.rooted(), cap));
        }
        for e in Entry::all(cap).skip(1) {
            let Entry::Star { k, .. } = e else {
                unreachable!()
            };
            if t.get(e) != k as u32 + 1 {
                bad.push(format!("{:?} = {} at cap {}", e, t.get(e), cap));
            }
        }
    }
    let k2 = Graph::from_edges(2, &[(0, 1)]).unwrap();
    let leaf = sp_tree_for_edge(&k2, 0, 1).unwrap();
    let mut oracle_checked = 0;
    for e in Entry::all(TABLE_MAX_VERTICES - 2) {
        let inst = EntryInstance::new(&leaf, leaf.root(), e).unwrap();
        let expected = match e {
            Entry::Rooted => 1,
            Entry::Star { k, .. } => k as u32 + 1,
        };
        let got = brute_ectvs(&inst.graph, &OracleOptions::default())
            .unwrap()
            .value;
        oracle_checked += 1;
        if got != expected {
            bad.push(format!("oracle {:?} = {}", e, got));
        }
    }
    outcome(
        bad.is_empty(),
        format!(
            "caps 1..=16 tabulated, {} leaf instances confirmed by oracle{}",
            oracle_checked,
            first(&bad)
        ),
    )
}

fn first(v: &[String]) -> String {
    v.first()
        .map(|m| format!(", first failure: {}", m))
        .unwrap_or_default()
}

fn criterion_4(ledger: &Ledger) -> Outcome {
    outcome(
        ledger.witness_failures.is_empty() && ledger.witness_checks > 0,
        format!(
            "{} witnesses validated, {} failures{}",
            ledger.witness_checks,
            ledger.witness_failures.len(),
            first(&ledger.witness_failures)
        ),
    )
}

fn criterion_5(ledger: &Ledger) -> Outcome {
    let mut solved: Vec<(usize, u32, bool)> = ledger
        .sp_solved
        .iter()
        .map(|&(n, v)| (n, v, false))
        .collect();
    let opts = SolveOptions {
        witness: false,
        ..SolveOptions::default()
    };
    for seed in 0..60u64 {
        let n = 3 + (seed as usize * 37) % 600;
        let g = gen_biconnected_sp(n, seed);
        solved.push((n, ctw(&g, &opts).unwrap().value, true));
        let t = gen_random_sp(10 + (seed as usize * 53) % 800, seed);
        solved.push((t.graph.n(), ctw(&t.graph, &opts).unwrap().value, false));
    }
    for k in 1..=8 {
        let g = gen_apex_binary_tree(k);
        solved.push((g.n(), ctw(&g, &opts).unwrap().value, true));
    }
    let over: Vec<String> = solved
        .iter()
        .filter(|&&(n, v, _)| v as usize > cap_for(n))
        .map(|&(n, v, _)| format!("n={} ctw={} bound={}", n, v, cap_for(n)))
        .collect();
    let low: Vec<String> = solved
        .iter()
        .filter(|&&(n, v, bic)| bic && n >= 3 && v < 2)
        .map(|&(n, v, _)| format!("biconnected n={} ctw={}", n, v))
        .collect();
    let tightest = solved
        .iter()
        .map(|&(n, v, _)| cap_for(n) as i64 - v as i64)
        .min()
        .unwrap_or(0);
    outcome(
        over.is_empty() && low.is_empty(),
        format!(
            "{} SP instances, max n {}, minimum slack to bound {}{}{}",
            solved.len(),
            solved.iter().map(|s| s.0).max().unwrap_or(0),
            tightest,
            first(&over),
            first(&low)
        ),
    )
}

fn random_connected(rng: &mut ChaCha8Rng) -> Graph {
    loop {
        let n = rng.gen_range(1..=APEX_MAX_N);
        let p: f64 = rng.gen_range(0.2..0.8);
        let edges: Vec<Edge> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .filter(|_| rng.gen_bool(p))
            .collect();
        let g = Graph::from_edges(n, &edges).unwrap();
        if g.is_connected() {
            return g;
        }
    }
}

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut bad = Vec::new();
    let mut histogram = [0usize; APEX_MAX_N + 1];
    for _ in 0..APEX_CORPUS {
        let g = random_connected(&mut rng);
        let tw = brute_tw(&g, &tw_opts()).unwrap().value;
        let plus = brute_ctw(&apex_construction(&g), &OracleOptions::default())
            .unwrap()
            .value;
        histogram[tw as usize] += 1;
        if plus != tw + 1 {
            bad.push(format!(
                "tw {} ctw(G+) {} on n={} {:?}",
                tw,
                plus,
                g.n(),
                g.edges()
            ));
        }
    }
    let spread: Vec<String> = histogram
        .iter()
        .enumerate()
        .filter(|(_, &c)| c > 0)
        .map(|(t, c)| format!("tw{}:{}", t, c))
        .collect();
    outcome(
        bad.is_empty(),
        format!(
            "{} connected graphs n<={} ({}), {} violations{}",
            APEX_CORPUS,
            APEX_MAX_N,
            spread.join(" "),
            bad.len(),
            first(&bad)
        ),
    )
}

fn criterion_7() -> Outcome {
    let mut values = Vec::new();
    let mut bad = Vec::new();
    for k in 1..=SEPARATION_K {
        let g = gen_apex_binary_tree(k);
        let (x, y) = g.edges()[0];
        if sp_tree_for_edge(&g, x, y).is_err() {
            bad.push(format!("k={} not SP", k));
        }
        let v = ctw(&g, &SolveOptions::default()).unwrap().value;
        if k <= SEPARATION_ORACLE_K {
            let limit = OracleOptions::with_limit(g.n());
            let tw = brute_tw(&g, &limit).unwrap().value;
            let oracle = brute_ctw(&g, &limit).unwrap().value;
            if tw != 2 {
                bad.push(format!("k={} tw {}", k, tw));
            }
            if oracle != v {
                bad.push(format!("k={} dp {} oracle {}", k, v, oracle));
            }
        }
        values.push(v);
    }
    let monotone = values.windows(2).all(|w| w[0] <= w[1]);
    if !monotone {
        bad.push(format!("not monotone: {:?}", values));
    }
    outcome(
        bad.is_empty(),
        format!(
            "ctw for k=1..={}: {:?}{}",
            SEPARATION_K,
            values,
            first(&bad)
        ),
    )
}

fn criterion_8() -> Outcome {
    let started = Instant::now();
    let opts = SolveOptions::default();
    let mut bic = Vec::new();
    let mut multi = Vec::new();
    let mut errors = Vec::new();
    for &n in &SCALING_SIZES {
        let g = gen_biconnected_sp(n, n as u64);
        bic.push((
            n,
            time_min(SCALING_REPS, || ctw(&g, &opts).map(|r| r.value)),
        ));
        let h = gen_tw2(SCALING_BLOCKS, n / SCALING_BLOCKS + 1, n as u64);
        if let Err(e) = ctw(&h, &opts) {
            errors.push(format!("{:?}", e));
        }
        multi.push((
            h.n(),
            time_min(SCALING_REPS, || ctw(&h, &opts).map(|r| r.value)),
        ));
    }
    let elapsed = started.elapsed();
    let s1 = loglog_slope(&bic).unwrap_or(f64::INFINITY);
    let s2 = loglog_slope(&multi).unwrap_or(f64::INFINITY);
    let fmt = |v: &[(usize, Duration)]| {
        v.iter()
            .map(|(n, t)| format!("{}:{:.1}ms", n, t.as_secs_f64() * 1e3))
            .collect::<Vec<_>>()
            .join(" ")
    };
    outcome(
        s1 <= SLOPE_BICONNECTED
            && s2 <= SLOPE_MULTI_BLOCK
            && elapsed <= SCALING_BUDGET
            && errors.is_empty(),
        format!(
            "biconnected slope {:.2} (<= {}) [{}]; {}-block slope {:.2} (<= {}) [{}]; {:.1}s total",
            s1,
            SLOPE_BICONNECTED,
            fmt(&bic),
            SCALING_BLOCKS,
            s2,
            SLOPE_MULTI_BLOCK,
            fmt(&multi),
            elapsed.as_secs_f64()
        ),
    )
}

fn criterion_9(trees: &[SpTree]) -> Outcome {
    let (xz, zy) = (DpTable::leaf(0, 2, 4), DpTable::leaf(2, 1, 4));
    let rejected = matches!(
        ctw_core::dp::series_y_entries_by_vertex(&xz, &zy, 1),
        Err(Error::NotATerminal(1))
    );
    let mirrored = table_check(trees, SeriesRule::Mirrored, None);
    let literal = table_check(trees, SeriesRule::Literal, None);
    let pass = rejected && mirrored.mismatches.is_empty() && !literal.mismatches.is_empty();
    outcome(
        pass,
        format!(
            "vertex-typed literal rejected: {}; mirrored mismatches {}; literal positional mismatches {} of {} entries{}",
            rejected,
            mirrored.mismatches.len(),
            literal.mismatches.len(),
            literal.entries,
            literal.mismatches.first().map(|m| format!(", counterexample: {}", m)).unwrap_or_default()
        ),
    )
}

fn main() {
    let mut ledger = Ledger::default();
    let trees = table_trees();
    let results = vec![
        ("oracle equivalence", criterion_1(&mut ledger)),
        ("table-level equivalence", criterion_2(&trees, &mut ledger)),
        ("leaf values", criterion_3()),
        ("witness soundness", criterion_4(&ledger)),
        ("upper bound", criterion_5(&ledger)),
        ("apex identity", criterion_6()),
        ("separation family", criterion_7()),
        ("scaling", criterion_8()),
        ("series index audit", criterion_9(&trees)),
    ];
    let mut failed = 0;
    for (i, (name, o)) in results.iter().enumerate() {
        println!(
            "criterion {} {}: {} ({})",
            i + 1,
            name,
            if o.pass { "PASS" } else { "FAIL" },
            o.detail
        );
        failed += usize::from(!o.pass);
    }
    println!(
        "acceptance: {} of {} criteria passed",
        results.len() - failed,
        results.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
