//! On-disk formats: DIMACS edge lists for graphs, JSON for decompositions
//! and generated-instance metadata.
//!
//! DIMACS files are 1-based (`p edge <n> <m>` header, `e <u> <v>` lines,
//! `c` comments); everything else in this crate, including the JSON
//! formats, uses 0-based vertex ids.

use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::fs;
use std::path::Path;
use thiserror::Error;

use crate::decomposition::{validate_td, SemiCliqueBag, SemiCliqueTreeDecomposition, TdNode};
use crate::graph::{Graph, VertexSet};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("validation failed: {0}")]
    Validation(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

fn parse_err(line: usize, msg: impl Into<String>) -> IoError {
    IoError::Parse {
        line,
        msg: msg.into(),
    }
}

/// Parses a DIMACS edge-format graph. Requires a single `p edge <n> <m>`
/// header before any edge line, exactly `m` edge lines with 1-based
/// endpoints in range, and rejects self-loops and duplicate edges
/// (regardless of orientation). `c` lines and blank lines are ignored.
pub fn parse_graph(text: &str) -> Result<Graph, IoError> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut seen: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut last_line = 0;
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        last_line = lineno;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        match fields[0] {
            "p" => {
                if header.is_some() {
                    return Err(parse_err(lineno, "repeated problem line"));
                }
                if fields.len() != 4 || fields[1] != "edge" {
                    return Err(parse_err(lineno, "problem line must be `p edge <n> <m>`"));
                }
                let n: usize = fields[2]
                    .parse()
                    .map_err(|_| parse_err(lineno, format!("bad vertex count {:?}", fields[2])))?;
                let m: usize = fields[3]
                    .parse()
                    .map_err(|_| parse_err(lineno, format!("bad edge count {:?}", fields[3])))?;
                header = Some((n, m));
            }
            "e" => {
                let (n, m) = header
                    .ok_or_else(|| parse_err(lineno, "edge line before the problem line"))?;
                if edges.len() == m {
                    return Err(parse_err(
                        lineno,
                        format!("more than the declared {m} edge lines"),
                    ));
                }
                if fields.len() != 3 {
                    return Err(parse_err(lineno, "edge line must be `e <u> <v>`"));
                }
                let mut ends = [0usize; 2];
                for (i, f) in fields[1..].iter().enumerate() {
                    let v: usize = f
                        .parse()
                        .map_err(|_| parse_err(lineno, format!("bad vertex {f:?}")))?;
                    if v == 0 || v > n {
                        return Err(parse_err(
                            lineno,
                            format!("vertex {v} out of range 1..={n}"),
                        ));
                    }
                    ends[i] = v - 1;
                }
                let (u, v) = (ends[0], ends[1]);
                if u == v {
                    return Err(parse_err(lineno, format!("self-loop at vertex {}", u + 1)));
                }
                if !seen.insert((u.min(v), u.max(v))) {
                    return Err(parse_err(
                        lineno,
                        format!("duplicate edge {} {}", u.min(v) + 1, v.max(u) + 1),
                    ));
                }
                edges.push((u, v));
            }
            other => {
                return Err(parse_err(lineno, format!("unknown line kind {other:?}")));
            }
        }
    }
    let (n, m) = header.ok_or_else(|| parse_err(last_line.max(1), "missing problem line"))?;
    if edges.len() != m {
        return Err(parse_err(
            last_line.max(1),
            format!("declared {m} edges but found {}", edges.len()),
        ));
    }
    Graph::from_edges(n, &edges).map_err(|e| parse_err(last_line.max(1), e.to_string()))
}

/// Renders a graph in DIMACS edge format with edges sorted ascending,
/// so equal graphs always produce identical bytes.
pub fn format_graph(g: &Graph) -> String {
    let mut out = format!("p edge {} {}\n", g.n(), g.m());
    for (u, v) in g.edges() {
        out.push_str(&format!("e {} {}\n", u + 1, v + 1));
    }
    out
}

pub fn read_graph(path: impl AsRef<Path>) -> Result<Graph, IoError> {
    parse_graph(&fs::read_to_string(path)?)
}

pub fn write_graph(path: impl AsRef<Path>, g: &Graph) -> Result<(), IoError> {
    Ok(fs::write(path, format_graph(g))?)
}

#[derive(Serialize, Deserialize)]
struct TdNodeDto {
    id: usize,
    parent: Option<usize>,
    #[serde(rename = "C1")]
    c1: Vec<usize>,
    #[serde(rename = "C2")]
    c2: Vec<usize>,
    #[serde(rename = "C3")]
    c3: Vec<usize>,
    #[serde(rename = "C4")]
    c4: Vec<usize>,
    #[serde(rename = "N")]
    n: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct TdFileDto {
    nodes: Vec<TdNodeDto>,
    k: usize,
    budget: [usize; 2],
}

/// Renders a decomposition as JSON: a node list with explicit ids and
/// parent links plus the `(clique, remainder)` budget pair. Vertex ids
/// are 0-based.
pub fn format_decomposition(td: &SemiCliqueTreeDecomposition) -> String {
    let nodes = td
        .nodes
        .iter()
        .enumerate()
        .map(|(id, node)| TdNodeDto {
            id,
            parent: node.parent,
            c1: node.bag.cliques[0].to_vec(),
            c2: node.bag.cliques[1].to_vec(),
            c3: node.bag.cliques[2].to_vec(),
            c4: node.bag.cliques[3].to_vec(),
            n: node.bag.remainder.to_vec(),
        })
        .collect();
    let dto = TdFileDto {
        nodes,
        k: td.k,
        budget: [td.clique_budget, td.remainder_budget],
    };
    serde_json::to_string_pretty(&dto).expect("decomposition serializes")
}

/// Parses a JSON decomposition and checks its structure: contiguous ids,
/// a single root with sound parent links, per-node slot disjointness and
/// budget compliance. When a graph is supplied, additionally runs the
/// full decomposition validator against it.
pub fn parse_decomposition(
    text: &str,
    g: Option<&Graph>,
) -> Result<SemiCliqueTreeDecomposition, IoError> {
    let dto: TdFileDto = serde_json::from_str(text).map_err(|e| IoError::Parse {
        line: e.line(),
        msg: e.to_string(),
    })?;
    if dto.nodes.is_empty() {
        return Err(IoError::Validation("decomposition has no nodes".into()));
    }
    let len = dto.nodes.len();
    let mut nodes: Vec<TdNode> = Vec::with_capacity(len);
    let mut root: Option<usize> = None;
    for (idx, nd) in dto.nodes.iter().enumerate() {
        if nd.id != idx {
            return Err(IoError::Validation(format!(
                "node at position {idx} has id {}; ids must be 0..{len} in order",
                nd.id
            )));
        }
        match nd.parent {
            None => {
                if root.replace(idx).is_some() {
                    return Err(IoError::Validation(format!(
                        "node {idx} is a second root"
                    )));
                }
            }
            Some(p) => {
                if p >= len || p == idx {
                    return Err(IoError::Validation(format!(
                        "node {idx} has invalid parent {p}"
                    )));
                }
            }
        }
        let slots: [&Vec<usize>; 5] = [&nd.c1, &nd.c2, &nd.c3, &nd.c4, &nd.n];
        let mut placed: BTreeSet<usize> = BTreeSet::new();
        for slot in slots {
            for &v in slot {
                if !placed.insert(v) {
                    return Err(IoError::Validation(format!(
                        "node {idx} assigns vertex {v} to two slots"
                    )));
                }
            }
        }
        let bag = SemiCliqueBag {
            cliques: [
                nd.c1.iter().copied().collect(),
                nd.c2.iter().copied().collect(),
                nd.c3.iter().copied().collect(),
                nd.c4.iter().copied().collect(),
            ],
            remainder: nd.n.iter().copied().collect(),
        };
        if bag.nonempty_cliques() > dto.budget[0] {
            return Err(IoError::Validation(format!(
                "node {idx} has {} nonempty clique slots, budget allows {}",
                bag.nonempty_cliques(),
                dto.budget[0]
            )));
        }
        if bag.remainder.len() > dto.budget[1] {
            return Err(IoError::Validation(format!(
                "node {idx} has a remainder of size {}, budget allows {}",
                bag.remainder.len(),
                dto.budget[1]
            )));
        }
        nodes.push(TdNode {
            parent: nd.parent,
            children: Vec::new(),
            bag,
        });
    }
    let root = root.ok_or_else(|| IoError::Validation("no root node".into()))?;
    for idx in 0..len {
        if let Some(p) = nodes[idx].parent {
            nodes[p].children.push(idx);
        }
    }
    // Reachability from the root rules out parent cycles.
    let mut reached = vec![false; len];
    let mut stack = vec![root];
    let mut count = 0;
    while let Some(t) = stack.pop() {
        if std::mem::replace(&mut reached[t], true) {
            continue;
        }
        count += 1;
        stack.extend(nodes[t].children.iter().copied());
    }
    if count != len {
        return Err(IoError::Validation(
            "parent links do not form a single tree".into(),
        ));
    }
    let td = SemiCliqueTreeDecomposition {
        nodes,
        root,
        k: dto.k,
        clique_budget: dto.budget[0],
        remainder_budget: dto.budget[1],
    };
    if let Some(g) = g {
        for (idx, node) in td.nodes.iter().enumerate() {
            if let Some(v) = node.bag.vertices().iter().find(|&v| v >= g.n()) {
                return Err(IoError::Validation(format!(
                    "node {idx} mentions vertex {v}, but the graph has {} vertices",
                    g.n()
                )));
            }
        }
        let report = validate_td(g, &td);
        if !report.is_clean() {
            return Err(IoError::Validation(report.to_string()));
        }
    }
    Ok(td)
}

pub fn read_decomposition(
    path: impl AsRef<Path>,
    g: Option<&Graph>,
) -> Result<SemiCliqueTreeDecomposition, IoError> {
    parse_decomposition(&fs::read_to_string(path)?, g)
}

pub fn write_decomposition(
    path: impl AsRef<Path>,
    td: &SemiCliqueTreeDecomposition,
) -> Result<(), IoError> {
    Ok(fs::write(path, format_decomposition(td))?)
}

/// Sidecar metadata written next to generated instances. The modulator
/// uses 0-based vertex ids like every other JSON format here.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceMeta {
    pub n: usize,
    pub k: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub modulator: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vc_offset: Option<usize>,
}

impl InstanceMeta {
    pub fn modulator_set(&self) -> VertexSet {
        self.modulator.iter().copied().collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("metadata serializes")
    }

    pub fn from_json(text: &str) -> Result<InstanceMeta, IoError> {
        serde_json::from_str(text).map_err(|e| IoError::Parse {
            line: e.line(),
            msg: e.to_string(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomposition::{decompose, DecomposeOutcome};
    use crate::instances::gen_planted;

    fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    fn built(g: &Graph, k: usize) -> SemiCliqueTreeDecomposition {
        match decompose(g, k) {
            DecomposeOutcome::Built(td) => td,
            DecomposeOutcome::NoCvd => panic!("expected a decomposition"),
        }
    }

    #[test]
    fn graph_round_trip_is_identity() {
        let g = cycle(6);
        assert_eq!(parse_graph(&format_graph(&g)).unwrap(), g);
        let planted = gen_planted(20, 2, 0.4, 7).unwrap().graph;
        assert_eq!(parse_graph(&format_graph(&planted)).unwrap(), planted);
    }

    #[test]
    fn comments_blanks_and_whitespace_are_tolerated() {
        let text = "c a triangle\n\np edge 3 3\n  e 1 2\ne 2 3\nc middle\ne 1 3\n";
        let g = parse_graph(text).unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.m(), 3);
    }

    #[test]
    fn edgeless_and_empty_graphs_parse() {
        assert_eq!(parse_graph("p edge 0 0\n").unwrap().n(), 0);
        assert_eq!(parse_graph("p edge 4 0\n").unwrap().n(), 4);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let cases: &[(&str, usize)] = &[
            ("e 1 2\n", 1),
            ("p edge 2 1\ne 1 3\n", 2),
            ("p edge 2 1\ne 1 1\n", 2),
            ("p edge 3 2\ne 1 2\ne 2 1\n", 3),
            ("p edge 3 2\ne 1 2\nx 2 3\n", 3),
            ("p edge 3 1\ne 1 2\ne 2 3\n", 3),
            ("p edge 2 1\np edge 2 1\n", 2),
            ("p edge 2 2\ne 1 2\n", 2),
        ];
        for (text, want) in cases {
            match parse_graph(text) {
                Err(IoError::Parse { line, .. }) => assert_eq!(line, *want, "input {text:?}"),
                other => panic!("input {text:?}: expected parse error, got {other:?}"),
            }
        }
    }

    #[test]
    fn decomposition_round_trip_is_identity() {
        let g = cycle(4);
        let td = built(&g, 1);
        let json = format_decomposition(&td);
        assert_eq!(parse_decomposition(&json, None).unwrap(), td);
        assert_eq!(parse_decomposition(&json, Some(&g)).unwrap(), td);
    }

    #[test]
    fn planted_decomposition_survives_the_files() {
        let g = gen_planted(18, 1, 0.35, 11).unwrap().graph;
        let td = built(&g, 1);
        let back = parse_decomposition(&format_decomposition(&td), Some(&g)).unwrap();
        assert_eq!(back, td);
    }

    #[test]
    fn corrupted_budget_is_rejected() {
        let g = cycle(4);
        let td = built(&g, 1);
        let mut v: serde_json::Value = serde_json::from_str(&format_decomposition(&td)).unwrap();
        v["budget"][1] = serde_json::json!(0);
        let err = parse_decomposition(&v.to_string(), None).unwrap_err();
        assert!(matches!(err, IoError::Validation(_)), "{err}");
    }

    #[test]
    fn broken_tree_shapes_are_rejected() {
        let node = |id: usize, parent: Option<usize>| {
            serde_json::json!({
                "id": id, "parent": parent,
                "C1": [], "C2": [], "C3": [], "C4": [], "N": []
            })
        };
        let file = |nodes: Vec<serde_json::Value>| {
            serde_json::json!({ "nodes": nodes, "k": 0, "budget": [4, 5] }).to_string()
        };
        for bad in [
            file(vec![node(0, None), node(1, None)]),
            file(vec![node(0, Some(1)), node(1, Some(0))]),
            file(vec![node(0, None), node(1, Some(5))]),
            file(vec![node(1, None)]),
            file(vec![]),
        ] {
            assert!(matches!(
                parse_decomposition(&bad, None),
                Err(IoError::Validation(_))
            ));
        }
    }

    #[test]
    fn mismatched_graph_is_rejected() {
        let g = cycle(4);
        let td = built(&g, 1);
        let json = format_decomposition(&td);
        let other = Graph::from_edges(2, &[(0, 1)]).unwrap();
        assert!(matches!(
            parse_decomposition(&json, Some(&other)),
            Err(IoError::Validation(_))
        ));
    }

    #[test]
    fn malformed_json_reports_a_line() {
        match parse_decomposition("{\n  \"nodes\": [,\n}", None) {
            Err(IoError::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn files_round_trip_through_disk() {
        let dir = tempfile::tempdir().unwrap();
        let g = gen_planted(12, 1, 0.5, 3).unwrap().graph;
        let gp = dir.path().join("g.col");
        write_graph(&gp, &g).unwrap();
        assert_eq!(read_graph(&gp).unwrap(), g);
        let td = built(&g, 1);
        let tp = dir.path().join("g.td.json");
        write_decomposition(&tp, &td).unwrap();
        assert_eq!(read_decomposition(&tp, Some(&g)).unwrap(), td);
    }

    #[test]
    fn metadata_round_trips() {
        let meta = InstanceMeta {
            n: 10,
            k: 2,
            seed: Some(99),
            modulator: vec![8, 9],
            vc_offset: None,
        };
        let back = InstanceMeta::from_json(&meta.to_json()).unwrap();
        assert_eq!(back, meta);
        assert_eq!(back.modulator_set(), VertexSet::from([8, 9]));
    }
}
