use std::path::Path;
use std::time::Instant;

use ctw_core::generators::{
    gen_apex_binary_tree, gen_biconnected_sp, gen_named, gen_random_sp, gen_tw2,
};
use ctw_core::layout::graph_layout_cost;
use ctw_core::oracle::DEFAULT_TW_LIMIT;
use ctw_core::scaling::loglog_slope;
use ctw_core::{
    brute_ctw, brute_ectvs, brute_tw, cap_for, ctw, is_connected_rooted_layout, layout_cost, Error,
    Graph, Layout, OracleOptions, SolveOptions, SolveResult, Width,
};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::CliError;
use crate::input::{parse_instance, read_source, to_edge_list, to_json_doc, Instance};

fn labels(g: &Graph, layout: &Layout) -> Vec<String> {
    layout.labels(g).into_iter().map(str::to_string).collect()
}

fn ms(start: Instant) -> f64 {
    start.elapsed().as_secs_f64() * 1e3
}

#[derive(Debug, Serialize)]
pub struct EntryReport {
    pub vertex: String,
    pub value: Width,
}

#[derive(Debug, Serialize)]
pub struct BlockOut {
    pub vertices: Vec<String>,
    pub ctw: Width,
    pub entry: Option<EntryReport>,
}

#[derive(Debug, Serialize)]
pub struct SolveReport {
    pub n: usize,
    pub m: usize,
    pub ctw: Width,
    pub bound: usize,
    pub witness: Option<Vec<String>>,
    pub start_block: usize,
    pub start_edge: Option<(String, String)>,
    pub blocks: Vec<BlockOut>,
    pub elapsed_ms: f64,
}

impl SolveReport {
    pub fn summary(&self) -> String {
        let mut s = format!(
            "ctw = {} (n = {}, m = {}, {} block{}, bound {}) in {:.2} ms",
            self.ctw,
            self.n,
            self.m,
            self.blocks.len(),
            if self.blocks.len() == 1 { "" } else { "s" },
            self.bound,
            self.elapsed_ms
        );
        if let Some(w) = &self.witness {
            s.push_str(&format!("\nwitness: {}", w.join(" ")));
        }
        for (i, b) in self.blocks.iter().enumerate() {
            s.push_str(&format!(
                "\nblock {}: ctw {} on {{{}}}",
                i,
                b.ctw,
                b.vertices.join(",")
            ));
            if let Some(e) = &b.entry {
                s.push_str(&format!(
                    ", entered at {} with rooted value {}",
                    e.vertex, e.value
                ));
            }
        }
        s
    }
}

fn solve_report(g: &Graph, r: &SolveResult, elapsed_ms: f64) -> SolveReport {
    let name = |v: usize| g.label(v).to_string();
    SolveReport {
        n: g.n(),
        m: g.m(),
        ctw: r.value,
        bound: cap_for(g.n()),
        witness: r.witness.as_ref().map(|w| labels(g, w)),
        start_block: r.provenance.start_block,
        start_edge: r.provenance.start_edge.map(|(u, v)| (name(u), name(v))),
        blocks: r
            .provenance
            .blocks
            .iter()
            .map(|b| BlockOut {
                vertices: b.vertices.iter().map(|&v| name(v)).collect(),
                ctw: b.ctw,
                entry: b.entry.map(|(v, value)| EntryReport {
                    vertex: name(v),
                    value,
                }),
            })
            .collect(),
        elapsed_ms,
    }
}

fn load(path: &str) -> Result<Instance, CliError> {
    parse_instance(&read_source(path)?)
}

fn load_plain(path: &str, what: &str) -> Result<Graph, CliError> {
    let inst = load(path)?;
    if !inst.is_plain() {
        return Err(CliError::Usage(format!(
            "{} takes a plain graph; rooted or extended instances go to `ctw oracle`",
            what
        )));
    }
    Ok(inst.graph)
}

/// Solves and re-validates the witness against the input graph.
pub fn solve_graph(g: &Graph, opts: &SolveOptions) -> Result<SolveReport, CliError> {
    let start = Instant::now();
    let r = ctw(g, opts)?;
    let elapsed = ms(start);
    if let Some(w) = &r.witness {
        let connected = ctw_core::layout::is_connected_layout(g, w)?;
        let cost = graph_layout_cost(g, w)?;
        if !connected || cost != r.value {
            return Err(CliError::Core(Error::WitnessCostMismatch {
                expected: r.value,
                actual: cost,
            }));
        }
    }
    Ok(solve_report(g, &r, elapsed))
}

pub fn solve(path: &str, opts: &SolveOptions) -> Result<SolveReport, CliError> {
    solve_graph(&load_plain(path, "solve")?, opts)
}

#[derive(Debug, Serialize)]
pub struct OracleReport {
    pub n: usize,
    pub measure: &'static str,
    pub value: Width,
    pub layout: Vec<String>,
    pub elapsed_ms: f64,
}

impl OracleReport {
    pub fn summary(&self) -> String {
        format!(
            "{} = {} (n = {}) in {:.2} ms\nlayout: {}",
            self.measure,
            self.value,
            self.n,
            self.elapsed_ms,
            self.layout.join(" ")
        )
    }
}

pub fn oracle(path: &str, limit: usize, treewidth: bool) -> Result<OracleReport, CliError> {
    let inst = load(path)?;
    let opts = OracleOptions::with_limit(limit);
    let start = Instant::now();
    let (measure, r) = if treewidth {
        if !inst.is_plain() {
            return Err(CliError::Usage("--tw takes a plain graph".into()));
        }
        ("tw", brute_tw(&inst.graph, &opts)?)
    } else if inst.is_plain() {
        ("ctw", brute_ectvs(&inst.extended, &opts)?)
    } else {
        ("ectvs", brute_ectvs(&inst.extended, &opts)?)
    };
    Ok(OracleReport {
        n: inst.graph.n(),
        measure,
        value: r.value,
        layout: labels(&inst.graph, &r.layout),
        elapsed_ms: ms(start),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    /// Random compositions (`gen sp`).
    Sp,
    /// Random biconnected series-parallel graphs.
    Biconnected,
    /// Glued blocks.
    Tw2,
    /// Complete binary tree plus an apex over its leaves, k = 1, 2, ...
    ApexTree,
}

#[derive(Debug, Clone, Copy)]
pub struct CompareParams {
    pub family: Family,
    pub trials: usize,
    pub seed: u64,
    pub max_n: usize,
    pub oracle_limit: usize,
    pub cap_slack: usize,
}

#[derive(Debug, Serialize)]
pub struct Mismatch {
    pub instance: String,
    pub dp: Option<Width>,
    pub oracle: Option<Width>,
    pub detail: String,
}

#[derive(Debug, Serialize)]
pub struct CompareReport {
    pub source: String,
    pub instances: usize,
    pub compared: usize,
    /// Instances with treewidth above 2 that the solver correctly rejected.
    pub rejected: usize,
    /// Instances beyond the oracle limit.
    pub skipped: usize,
    pub mismatches: Vec<Mismatch>,
}

impl CompareReport {
    pub fn summary(&self) -> String {
        let mut s = format!(
            "{}: {} instances, {} compared, {} rejected as treewidth > 2, {} skipped, {} mismatches",
            self.source,
            self.instances,
            self.compared,
            self.rejected,
            self.skipped,
            self.mismatches.len()
        );
        for m in &self.mismatches {
            s.push_str(&format!(
                "\nmismatch: dp {:?} oracle {:?} ({}) on {}",
                m.dp,
                m.oracle,
                m.detail,
                m.instance.trim_end().replace('\n', "; ")
            ));
        }
        s
    }
}

/// Seed of the `i`-th generated instance.
fn instance_seed(seed: u64, i: u64) -> u64 {
    seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(i)
}

fn generate_family(p: &CompareParams) -> Vec<Graph> {
    let max_n = p.max_n.max(2);
    let mut out = Vec::with_capacity(p.trials);
    let mut i = 0u64;
    let attempts = 1000 * p.trials.max(1) as u64;
    while out.len() < p.trials && i < attempts {
        let s = instance_seed(p.seed, i);
        i += 1;
        let g = match p.family {
            Family::Sp => gen_random_sp(1 + (s % (2 * max_n as u64)) as usize, s).graph,
            Family::Biconnected => gen_biconnected_sp(2 + (s % (max_n as u64 - 1)) as usize, s),
            Family::Tw2 => gen_tw2(1 + (s % 4) as usize, 2 + ((s / 4) % 4) as usize, s),
            Family::ApexTree => {
                if i > 20 {
                    break;
                }
                gen_apex_binary_tree(i as u32)
            }
        };
        if p.family == Family::ApexTree || g.n() <= max_n {
            out.push(g);
        }
    }
    out
}

enum Verdict {
    Agree,
    Rejected,
    Skipped,
    Mismatch(Mismatch),
}

fn compare_one(g: &Graph, p: &CompareParams) -> Verdict {
    let describe = || to_edge_list(g);
    if g.n() > p.oracle_limit {
        return Verdict::Skipped;
    }
    let opts = SolveOptions {
        cap_slack: p.cap_slack,
        ..SolveOptions::default()
    };
    let dp = ctw(g, &opts);
    let oracle = brute_ctw(g, &OracleOptions::with_limit(p.oracle_limit));
    match (dp, oracle) {
        (Ok(d), Ok(o)) if d.value == o.value => Verdict::Agree,
        (Ok(d), Ok(o)) => Verdict::Mismatch(Mismatch {
            instance: describe(),
            dp: Some(d.value),
            oracle: Some(o.value),
            detail: "values differ".into(),
        }),
        (Err(Error::NotTreewidth2 { .. }), Ok(o)) => {
            let tw = brute_tw(
                g,
                &OracleOptions::with_limit(p.oracle_limit.min(DEFAULT_TW_LIMIT.max(g.n()))),
            );
            match tw {
                Ok(t) if t.value > 2 => Verdict::Rejected,
                other => Verdict::Mismatch(Mismatch {
                    instance: describe(),
                    dp: None,
                    oracle: Some(o.value),
                    detail: format!(
                        "solver rejected a graph of treewidth {:?}",
                        other.map(|t| t.value)
                    ),
                }),
            }
        }
        (d, o) => Verdict::Mismatch(Mismatch {
            instance: describe(),
            dp: d.as_ref().ok().map(|r| r.value),
            oracle: o.as_ref().ok().map(|r| r.value),
            detail: format!("dp {:?}, oracle {:?}", d.err(), o.err()),
        }),
    }
}

fn compare_graphs(source: String, graphs: &[Graph], p: &CompareParams) -> CompareReport {
    let verdicts: Vec<Verdict> = graphs.par_iter().map(|g| compare_one(g, p)).collect();
    let mut report = CompareReport {
        source,
        instances: graphs.len(),
        compared: 0,
        rejected: 0,
        skipped: 0,
        mismatches: Vec::new(),
    };
    for v in verdicts {
        match v {
            Verdict::Agree => report.compared += 1,
            Verdict::Rejected => {
                report.compared += 1;
                report.rejected += 1;
            }
            Verdict::Skipped => report.skipped += 1,
            Verdict::Mismatch(m) => {
                report.compared += 1;
                report.mismatches.push(m);
            }
        }
    }
    report
}

pub fn compare_generated(p: &CompareParams) -> CompareReport {
    let graphs = generate_family(p);
    let name = serde_json::to_value(p.family)
        .ok()
        .and_then(|v| v.as_str().map(str::to_string))
        .unwrap_or_default();
    compare_graphs(format!("{} seed {}", name, p.seed), &graphs, p)
}

pub fn compare_corpus(dir: &Path, p: &CompareParams) -> Result<CompareReport, CliError> {
    let mut files: Vec<_> = std::fs::read_dir(dir)
        .map_err(|e| CliError::Io(format!("{}: {}", dir.display(), e)))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file())
        .collect();
    files.sort();
    let mut graphs = Vec::with_capacity(files.len());
    for f in &files {
        let text = std::fs::read_to_string(f)
            .map_err(|e| CliError::Io(format!("{}: {}", f.display(), e)))?;
        let inst =
            parse_instance(&text).map_err(|e| CliError::Io(format!("{}: {}", f.display(), e)))?;
        graphs.push(inst.graph);
    }
    Ok(compare_graphs(dir.display().to_string(), &graphs, p))
}

#[derive(Debug, Clone)]
pub enum GenSpec {
    Sp { edges: usize },
    Biconnected { n: usize },
    Tw2 { blocks: usize, block_size: usize },
    ApexTree { k: u32 },
    Named(String),
}

pub fn generate(spec: &GenSpec, seed: u64) -> Result<Graph, CliError> {
    Ok(match spec {
        GenSpec::Sp { edges } => gen_random_sp(*edges, seed).graph,
        GenSpec::Biconnected { n } => gen_biconnected_sp(*n, seed),
        GenSpec::Tw2 { blocks, block_size } => gen_tw2(*blocks, *block_size, seed),
        GenSpec::ApexTree { k } => {
            if *k == 0 || *k > 20 {
                return Err(CliError::Usage("k must be between 1 and 20".into()));
            }
            gen_apex_binary_tree(*k)
        }
        GenSpec::Named(name) => gen_named(name)?,
    })
}

pub fn render_graph(g: &Graph, json: bool) -> String {
    if json {
        serde_json::to_string(&to_json_doc(g)).expect("instance documents serialize") + "\n"
    } else {
        to_edge_list(g)
    }
}

#[derive(Debug, Serialize)]
pub struct BenchRow {
    pub n: usize,
    pub m: usize,
    pub ctw: Width,
    pub ms: f64,
}

#[derive(Debug, Serialize)]
pub struct BenchReport {
    pub family: Family,
    pub seed: u64,
    pub rows: Vec<BenchRow>,
    pub slope: Option<f64>,
}

impl BenchReport {
    pub fn csv(&self) -> String {
        let mut s = String::from("n,m,ctw,ms\n");
        for r in &self.rows {
            s.push_str(&format!("{},{},{},{:.3}\n", r.n, r.m, r.ctw, r.ms));
        }
        match self.slope {
            Some(x) => s.push_str(&format!("# log-log slope {:.3}\n", x)),
            None => s.push_str("# log-log slope n/a\n"),
        }
        s
    }
}

pub fn bench(
    family: Family,
    sizes: &[usize],
    blocks: usize,
    seed: u64,
    reps: usize,
) -> Result<BenchReport, CliError> {
    let mut rows = Vec::with_capacity(sizes.len());
    for &size in sizes {
        let g = match family {
            Family::Sp => gen_random_sp(size, seed).graph,
            Family::Biconnected => gen_biconnected_sp(size, seed),
            Family::Tw2 => gen_tw2(blocks.max(1), size / blocks.max(1) + 1, seed),
            Family::ApexTree => gen_apex_binary_tree(size.clamp(1, 20) as u32),
        };
        let mut best = f64::INFINITY;
        let mut value = 0;
        for _ in 0..reps.max(1) {
            let r = solve_graph(&g, &SolveOptions::default())?;
            best = best.min(r.elapsed_ms);
            value = r.ctw;
        }
        rows.push(BenchRow {
            n: g.n(),
            m: g.m(),
            ctw: value,
            ms: best,
        });
    }
    let samples: Vec<_> = rows
        .iter()
        .map(|r| (r.n, std::time::Duration::from_secs_f64(r.ms / 1e3)))
        .collect();
    Ok(BenchReport {
        family,
        seed,
        slope: loglog_slope(&samples),
        rows,
    })
}

#[derive(Debug, Serialize)]
pub struct VerifyReport {
    pub n: usize,
    pub connected: bool,
    pub cost: u32,
    pub expected: Option<u32>,
    pub ok: bool,
}

impl VerifyReport {
    pub fn summary(&self) -> String {
        format!(
            "layout is {}connected, cost {}{}: {}",
            if self.connected { "" } else { "not " },
            self.cost,
            self.expected
                .map(|e| format!(" (expected {})", e))
                .unwrap_or_default(),
            if self.ok { "ok" } else { "FAILED" }
        )
    }
}

/// Checks a layout, given by labels, against an instance. Fictive edges
/// count towards the cost and roots must come first.
pub fn verify(
    path: &str,
    order: &[String],
    expected: Option<u32>,
) -> Result<VerifyReport, CliError> {
    let inst = load(path)?;
    let layout = Layout::from_labels(&inst.graph, order)?;
    let connected = is_connected_rooted_layout(&inst.extended, &layout)?;
    let cost = layout_cost(&inst.extended, &layout, true)?;
    let ok = connected && expected.is_none_or(|e| e == cost);
    Ok(VerifyReport {
        n: inst.graph.n(),
        connected,
        cost,
        expected,
        ok,
    })
}
