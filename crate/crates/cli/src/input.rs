//! Graph input: plain edge lists and the JSON instance document.

use std::collections::HashSet;
use std::fmt;

use ctw_core::{ExtendedRootedGraph, Graph};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

/// A vertex token in JSON: strings and integers are both accepted.
#[derive(Debug, Clone, PartialEq, Eq, Deserialize, Serialize)]
#[serde(untagged)]
pub enum Token {
    Str(String),
    Int(i64),
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Token::Str(s) => f.write_str(s),
            Token::Int(i) => write!(f, "{}", i),
        }
    }
}

/// `{vertices, solid_edges, fictive_edges, roots}`. Only `solid_edges` is
/// required; endpoints missing from `vertices` are appended in order of
/// first appearance.
#[derive(Debug, Clone, Default, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceDoc {
    #[serde(default)]
    pub vertices: Vec<Token>,
    pub solid_edges: Vec<(Token, Token)>,
    #[serde(default)]
    pub fictive_edges: Vec<(Token, Token)>,
    #[serde(default)]
    pub roots: Vec<Token>,
}

/// A parsed input, possibly carrying fictive edges and roots.
#[derive(Debug, Clone)]
pub struct Instance {
    pub graph: Graph,
    pub extended: ExtendedRootedGraph,
}

impl Instance {
    pub fn is_plain(&self) -> bool {
        self.extended.fictive().is_empty() && self.extended.roots().is_empty()
    }
}

fn parse_err(line: usize, msg: impl Into<String>) -> CliError {
    CliError::Parse {
        line,
        msg: msg.into(),
    }
}

fn collect_vertices<'a>(
    declared: impl Iterator<Item = &'a str>,
    edges: &'a [(String, String)],
) -> Vec<String> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for v in declared.chain(edges.iter().flat_map(|(a, b)| [a.as_str(), b.as_str()])) {
        if seen.insert(v.to_string()) {
            out.push(v.to_string());
        }
    }
    out
}

/// Edge list: one `u v` pair per line, `#` starts a comment, a single token
/// declares an isolated vertex. A first line `n m` of two integers is a
/// header when exactly `m` edge lines follow; a line `p <kind> n m` also
/// works. With integer labels the header declares the vertices `1..=n`, or
/// `0..n` when the edges mention `0`; other labels must number exactly `n`.
pub fn parse_edge_list(text: &str) -> Result<Graph, CliError> {
    let lines: Vec<(usize, Vec<&str>)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| {
            (
                i + 1,
                l.split('#')
                    .next()
                    .unwrap_or("")
                    .split_whitespace()
                    .collect::<Vec<_>>(),
            )
        })
        .filter(|(_, t)| !t.is_empty())
        .collect();
    let mut declared_n: Option<usize> = None;
    let mut body = &lines[..];
    if let Some((_, first)) = lines.first() {
        let header = match first.as_slice() {
            ["p", _, n, m] => Some((n, m, true)),
            [n, m] => Some((n, m, false)),
            _ => None,
        };
        if let Some((n, m, explicit)) = header {
            match (n.parse::<usize>(), m.parse::<usize>()) {
                (Ok(n), Ok(m))
                    if explicit || lines[1..].iter().filter(|(_, t)| t.len() == 2).count() == m =>
                {
                    declared_n = Some(n);
                    body = &lines[1..];
                }
                _ if explicit => return Err(parse_err(lines[0].0, "malformed problem line")),
                _ => {}
            }
        }
    }
    let mut isolated = Vec::new();
    let mut edges = Vec::new();
    for (line, toks) in body {
        match toks.as_slice() {
            [v] => isolated.push(v.to_string()),
            [u, v] => edges.push((u.to_string(), v.to_string())),
            _ => {
                return Err(parse_err(
                    *line,
                    format!("expected `u v`, found {} tokens", toks.len()),
                ))
            }
        }
    }
    let mut vertices = collect_vertices(isolated.iter().map(String::as_str), &edges);
    if let Some(n) = declared_n {
        let zero_based = vertices.iter().any(|v| v == "0");
        let range: Vec<String> = if zero_based {
            (0..n).map(|i| i.to_string()).collect()
        } else {
            (1..=n).map(|i| i.to_string()).collect()
        };
        let known: HashSet<&String> = range.iter().collect();
        if vertices.iter().all(|v| v.parse::<u64>().is_ok()) {
            if let Some(bad) = vertices.iter().find(|v| !known.contains(v)) {
                return Err(parse_err(
                    0,
                    format!(
                        "vertex {} outside the declared range of {} vertices",
                        bad, n
                    ),
                ));
            }
            vertices = range;
        } else if vertices.len() != n {
            return Err(parse_err(
                0,
                format!("header declares {} vertices, found {}", n, vertices.len()),
            ));
        }
    }
    Graph::new(&vertices, &edges).map_err(|e| parse_err(0, e.to_string()))
}

pub fn parse_json(text: &str) -> Result<Instance, CliError> {
    let doc: InstanceDoc = serde_json::from_str(text)
        .map_err(|e| parse_err(e.line(), format!("invalid instance document: {}", e)))?;
    let str_pairs = |es: &[(Token, Token)]| -> Vec<(String, String)> {
        es.iter()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect()
    };
    let solid = str_pairs(&doc.solid_edges);
    let fictive = str_pairs(&doc.fictive_edges);
    let declared: Vec<String> = doc.vertices.iter().map(Token::to_string).collect();
    let mut vertices = collect_vertices(declared.iter().map(String::as_str), &solid);
    for v in collect_vertices(std::iter::empty(), &fictive) {
        if !vertices.contains(&v) {
            vertices.push(v);
        }
    }
    let roots: Vec<String> = doc.roots.iter().map(Token::to_string).collect();
    let extended = ExtendedRootedGraph::from_labels(&vertices, &solid, &fictive, &roots)
        .map_err(|e| parse_err(0, e.to_string()))?;
    Ok(Instance {
        graph: extended.solid().clone(),
        extended,
    })
}

/// Dispatches on content: a document starting with `{` is JSON.
pub fn parse_instance(text: &str) -> Result<Instance, CliError> {
    if text.trim_start().starts_with('{') {
        parse_json(text)
    } else {
        let graph = parse_edge_list(text)?;
        Ok(Instance {
            extended: ExtendedRootedGraph::plain(graph.clone()),
            graph,
        })
    }
}

pub fn read_source(path: &str) -> Result<String, CliError> {
    if path == "-" {
        let mut s = String::new();
        std::io::Read::read_to_string(&mut std::io::stdin(), &mut s)?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {}", path, e)))
    }
}

/// Edge-list form of a graph, with an `n m` header and isolated vertices
/// on lines of their own.
pub fn to_edge_list(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.m());
    for v in (0..g.n()).filter(|&v| g.degree(v) == 0) {
        out.push_str(g.label(v));
        out.push('\n');
    }
    for &(u, v) in g.edges() {
        out.push_str(&format!("{} {}\n", g.label(u), g.label(v)));
    }
    out
}

pub fn to_json_doc(g: &Graph) -> InstanceDoc {
    InstanceDoc {
        vertices: g.labels().iter().cloned().map(Token::Str).collect(),
        solid_edges: g
            .edges()
            .iter()
            .map(|&(u, v)| {
                (
                    Token::Str(g.label(u).to_string()),
                    Token::Str(g.label(v).to_string()),
                )
            })
            .collect(),
        ..InstanceDoc::default()
    }
}
