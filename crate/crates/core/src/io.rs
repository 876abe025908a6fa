//! `packgraph` v1 text format and the override side files.
//!
//! ```text
//! packgraph 1 n=4 class=metric denom=2   # optional denom, default 1
//! 3 4 5      # w(0,1) w(0,2) w(0,3)
//! 3 4        # w(1,2) w(1,3)
//! 3          # w(2,3)
//! ```
//!
//! Entries are the strict upper triangle, row by row; line breaks inside the
//! table carry no meaning. `#` starts a comment anywhere.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::{Matching, WeightClass, WeightedCompleteGraph};

/// Integer-weighted graph as stored on disk.
pub type IntGraph = WeightedCompleteGraph<i64>;

/// A parsed instance plus any non-fatal diagnostics.
#[derive(Clone, Debug)]
pub struct LoadedInstance {
    pub graph: IntGraph,
    /// Class declared in the header, before validation.
    pub declared_class: WeightClass,
    pub warnings: Vec<String>,
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

/// Parses a `packgraph 1` document.
///
/// A declared class that the weights do not satisfy is downgraded to
/// `unknown` and reported in [`LoadedInstance::warnings`].
pub fn load_instance(text: &str) -> Result<LoadedInstance> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, strip_comment(l).trim()));
    let (header_line, header) = lines
        .by_ref()
        .find(|(_, l)| !l.is_empty())
        .ok_or_else(|| parse_err(1, "empty document"))?;

    let mut tokens = header.split_whitespace();
    if tokens.next() != Some("packgraph") {
        return Err(parse_err(header_line, "header must start with 'packgraph'"));
    }
    if tokens.next() != Some("1") {
        return Err(parse_err(header_line, "unsupported format version (expected 1)"));
    }
    let mut n = None;
    let mut class = None;
    let mut denom = 1i64;
    for tok in tokens {
        let (key, value) = tok
            .split_once('=')
            .ok_or_else(|| parse_err(header_line, format!("expected key=value, got '{tok}'")))?;
        match key {
            "n" => {
                n = Some(value.parse::<usize>().map_err(|_| {
                    parse_err(header_line, format!("bad vertex count '{value}'"))
                })?)
            }
            "class" => class = Some(value.parse::<WeightClass>().map_err(|e| parse_err(header_line, e.to_string()))?),
            "denom" => {
                denom = value
                    .parse::<i64>()
                    .ok()
                    .filter(|d| *d > 0)
                    .ok_or_else(|| parse_err(header_line, format!("bad denominator '{value}'")))?
            }
            other => return Err(parse_err(header_line, format!("unknown header key '{other}'"))),
        }
    }
    let n = n.ok_or_else(|| parse_err(header_line, "missing n="))?;
    let declared_class = class.ok_or_else(|| parse_err(header_line, "missing class="))?;

    let mut weights = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for (line_no, line) in lines {
        for tok in line.split_whitespace() {
            let w: i64 = tok
                .parse()
                .map_err(|_| parse_err(line_no, format!("bad weight '{tok}'")))?;
            weights.push(w);
        }
    }
    let graph = IntGraph::from_upper_triangle(n, &weights)?.with_denom(denom);

    let mut warnings = Vec::new();
    let graph = match graph.check_class(declared_class) {
        Ok(()) => graph.with_class_unchecked(declared_class),
        Err(e) => {
            let msg = format!("declared class '{declared_class}' rejected ({e}); using 'unknown'");
            log::warn!("{msg}");
            warnings.push(msg);
            graph.with_class_unchecked(WeightClass::Unknown)
        }
    };
    Ok(LoadedInstance { graph, declared_class, warnings })
}

/// Serialises a graph; `load_instance(&save_instance(g))` reproduces `n`,
/// the weight table, the denominator and the class tag.
pub fn save_instance(g: &IntGraph) -> String {
    let n = g.n();
    let mut out = format!("packgraph 1 n={n} class={}", g.class_tag());
    if g.denom() != 1 {
        let _ = write!(out, " denom={}", g.denom());
    }
    out.push('\n');
    for u in 0..n.saturating_sub(1) {
        let row: Vec<String> = (u + 1..n).map(|v| g.w(u, v).to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

fn parse_usize_list(line_no: usize, text: &str) -> Result<Vec<usize>> {
    text.split_whitespace()
        .map(|t| t.parse().map_err(|_| parse_err(line_no, format!("bad vertex id '{t}'"))))
        .collect()
}

/// Parses a matching file: one edge `u v` per line.
pub fn parse_matching(text: &str, n: usize) -> Result<Matching> {
    let mut edges = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = strip_comment(line).trim();
        if line.is_empty() {
            continue;
        }
        match parse_usize_list(i + 1, line)?.as_slice() {
            [a, b] => edges.push((*a, *b)),
            _ => return Err(parse_err(i + 1, "expected exactly two vertex ids")),
        }
    }
    Matching::new(n, edges)
}

pub fn format_matching(m: &Matching) -> String {
    m.edges().iter().map(|(a, b)| format!("{a} {b}\n")).collect()
}

/// One line of a plan file: the group's edges in order plus its isolated
/// vertices (one for cycles, two for paths).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlanLine {
    pub edges: Vec<(usize, usize)>,
    pub isolated: Vec<usize>,
}

/// Parses a plan file. Each line lists the group's edges as vertex pairs,
/// then `;`, then the isolated vertex ids:
///
/// ```text
/// 0 1 7 8 ; 14      # edges (0,1),(7,8), isolated vertex 14
/// ```
pub fn parse_plan(text: &str) -> Result<Vec<PlanLine>> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = strip_comment(line).trim();
        if line.is_empty() {
            continue;
        }
        let (edges, isolated) = line
            .split_once(';')
            .ok_or_else(|| parse_err(i + 1, "expected '<edge vertex pairs> ; <isolated ids>'"))?;
        let ids = parse_usize_list(i + 1, edges)?;
        if ids.len() % 2 != 0 {
            return Err(parse_err(i + 1, "edge list has an odd number of vertex ids"));
        }
        out.push(PlanLine {
            edges: ids.chunks(2).map(|c| (c[0], c[1])).collect(),
            isolated: parse_usize_list(i + 1, isolated)?,
        });
    }
    Ok(out)
}

pub fn format_plan(lines: &[PlanLine]) -> String {
    let mut out = String::new();
    for l in lines {
        let edges: Vec<String> = l.edges.iter().map(|(a, b)| format!("{a} {b}")).collect();
        let iso: Vec<String> = l.isolated.iter().map(|v| v.to_string()).collect();
        let _ = writeln!(out, "{} ; {}", edges.join(" "), iso.join(" "));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn loads_three_vertex_general() {
        let inst = load_instance("packgraph 1 n=3 class=general\n1 2 3\n").unwrap();
        let g = inst.graph;
        assert_eq!(g.n(), 3);
        assert_eq!((g.w(0, 1), g.w(0, 2), g.w(1, 2)), (1, 2, 3));
        assert_eq!(g.class_tag(), WeightClass::General);
        assert!(inst.warnings.is_empty());
    }

    #[test]
    fn downgrades_false_metric_claim() {
        let inst = load_instance("packgraph 1 n=3 class=metric\n1 1\n3\n").unwrap();
        assert_eq!(inst.graph.class_tag(), WeightClass::Unknown);
        assert_eq!(inst.declared_class, WeightClass::Metric);
        assert_eq!(inst.warnings.len(), 1);
        assert!(inst.warnings[0].contains("not metric"));
    }

    #[test]
    fn comments_and_denominator() {
        let doc = "# leading comment\npackgraph 1 n=3 class=general denom=4 # trailing\n1 # w01\n2 3\n";
        let g = load_instance(doc).unwrap().graph;
        assert_eq!(g.denom(), 4);
        assert_eq!(g.upper_triangle(), vec![1, 2, 3]);
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(load_instance(""), Err(Error::Parse { .. })));
        assert!(matches!(load_instance("graph 1 n=3 class=general\n1 2 3"), Err(Error::Parse { .. })));
        assert!(matches!(load_instance("packgraph 2 n=3 class=general\n1 2 3"), Err(Error::Parse { .. })));
        assert!(matches!(load_instance("packgraph 1 class=general\n1 2 3"), Err(Error::Parse { .. })));
        assert!(matches!(load_instance("packgraph 1 n=3 class=weird\n1 2 3"), Err(Error::Parse { .. })));
        assert!(matches!(load_instance("packgraph 1 n=3 class=general\n1 x 3"), Err(Error::Parse { line: 2, .. })));
        assert_eq!(
            load_instance("packgraph 1 n=3 class=general\n1 2").unwrap_err(),
            Error::EntryCount { expected: 3, found: 2 }
        );
        assert_eq!(
            load_instance("packgraph 1 n=3 class=general\n1 -2 3").unwrap_err(),
            Error::NegativeWeight(0, 2)
        );
    }

    #[test]
    fn save_then_load_round_trips() {
        let g = IntGraph::from_fn(5, |u, v| (u * 7 + v * 3) as i64 % 5)
            .unwrap()
            .with_denom(3)
            .with_class_unchecked(WeightClass::General);
        let back = load_instance(&save_instance(&g)).unwrap().graph;
        assert_eq!(back, g);
    }

    #[test]
    fn matching_and_plan_files() {
        let m = parse_matching("0 1\n# skip\n3 2\n", 4).unwrap();
        assert_eq!(m.edges(), &[(0, 1), (2, 3)]);
        assert_eq!(parse_matching(&format_matching(&m), 4).unwrap(), m);
        assert!(parse_matching("0 1 2\n", 4).is_err());
        assert!(parse_matching("0 1\n1 2\n", 4).is_err());

        let plan = parse_plan("0 1 7 8 ; 14\n2 3 ; 5 6\n").unwrap();
        assert_eq!(plan[0].edges, vec![(0, 1), (7, 8)]);
        assert_eq!(plan[0].isolated, vec![14]);
        assert_eq!(plan[1].isolated, vec![5, 6]);
        assert_eq!(parse_plan(&format_plan(&plan)).unwrap(), plan);
        assert!(parse_plan("0 1 2 ; 3").is_err());
        assert!(parse_plan("0 1 2 3").is_err());
    }
}
