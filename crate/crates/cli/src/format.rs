//! Text formats: MagFile, graph file, bitstrings, companion tuples, edges.

use std::fmt::Write as _;

use magc_core::{validate_mag, BitString, ClassicalGraph, CompanionTuple, CompositeVertex, Mag};

use crate::CliError;

pub const MAG_TAG: &str = "magv1";
pub const GRAPH_TAG: &str = "graphv1";

/// Content lines with `#` comments and surrounding whitespace removed.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let line = line.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}

fn parse_err(kind: &str, line: usize, msg: impl std::fmt::Display) -> CliError {
    CliError::Format(format!("{kind} line {line}: {msg}"))
}

pub fn parse_tau(s: &str) -> Result<CompanionTuple, String> {
    let sizes = s
        .split(',')
        .map(|part| part.trim().parse::<u64>().map_err(|e| format!("bad size {part:?}: {e}")))
        .collect::<Result<Vec<_>, _>>()?;
    CompanionTuple::new(sizes).map_err(|e| e.to_string())
}

pub fn parse_vertex(s: &str) -> Result<CompositeVertex, String> {
    let inner = s
        .trim()
        .strip_prefix('(')
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(|| format!("vertex {s:?} is not of the form (a1,...,ap)"))?;
    let coords = inner
        .split(',')
        .map(|c| c.trim().parse::<u64>().map_err(|e| format!("bad coordinate {c:?}: {e}")))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(CompositeVertex::new(coords))
}

pub fn parse_edge(s: &str) -> Result<(CompositeVertex, CompositeVertex), String> {
    let (a, b) = s
        .split_once(")-(")
        .ok_or_else(|| format!("edge {s:?} is not of the form (a1,...)-(b1,...)"))?;
    Ok((parse_vertex(&format!("{a})"))?, parse_vertex(&format!("({b}"))?))
}

pub fn parse_bits(s: &str) -> Result<BitString, String> {
    s.parse::<BitString>().map_err(|e| e.to_string())
}

pub fn tau_text(tau: &CompanionTuple) -> String {
    tau.sizes().iter().map(u64::to_string).collect::<Vec<_>>().join(",")
}

pub fn parse_mag_file(text: &str) -> Result<Mag, CliError> {
    const KIND: &str = "MagFile";
    let mut lines = content_lines(text);
    match lines.next() {
        Some((_, MAG_TAG)) => {}
        Some((n, other)) => return Err(parse_err(KIND, n, format!("expected {MAG_TAG}, found {other:?}"))),
        None => return Err(CliError::Format(format!("{KIND}: empty file"))),
    }
    let tau = match lines.next() {
        Some((n, line)) => {
            let value = line
                .strip_prefix("tau=")
                .ok_or_else(|| parse_err(KIND, n, "expected tau=<n1>,...,<np>"))?;
            parse_tau(value).map_err(|e| parse_err(KIND, n, e))?
        }
        None => return Err(CliError::Format(format!("{KIND}: missing tau line"))),
    };
    let edges = lines
        .map(|(n, line)| {
            let value = line
                .strip_prefix("edge=")
                .ok_or_else(|| parse_err(KIND, n, "expected edge=(..)-(..)"))?;
            parse_edge(value).map_err(|e| parse_err(KIND, n, e))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(validate_mag(tau, edges)?)
}

/// Canonical form: edges in per-MAG index order.
pub fn mag_file(g: &Mag) -> String {
    let mut out = format!("{MAG_TAG}\ntau={}\n", tau_text(g.tau()));
    for e in g.edges() {
        writeln!(out, "edge={e}").expect("writing to a String");
    }
    out
}

pub fn parse_graph_file(text: &str) -> Result<ClassicalGraph, CliError> {
    const KIND: &str = "graph file";
    let mut lines = content_lines(text);
    match lines.next() {
        Some((_, GRAPH_TAG)) => {}
        Some((n, other)) => return Err(parse_err(KIND, n, format!("expected {GRAPH_TAG}, found {other:?}"))),
        None => return Err(CliError::Format(format!("{KIND}: empty file"))),
    }
    let n = match lines.next() {
        Some((k, line)) => line
            .strip_prefix("n=")
            .and_then(|v| v.trim().parse::<u64>().ok())
            .ok_or_else(|| parse_err(KIND, k, "expected n=<N>"))?,
        None => return Err(CliError::Format(format!("{KIND}: missing n line"))),
    };
    let edges = lines
        .map(|(k, line)| {
            line.strip_prefix("edge=")
                .and_then(|v| v.split_once('-'))
                .and_then(|(a, b)| Some((a.trim().parse().ok()?, b.trim().parse().ok()?)))
                .ok_or_else(|| parse_err(KIND, k, "expected edge=<u>-<v>"))
        })
        .collect::<Result<Vec<(u64, u64)>, _>>()?;
    Ok(ClassicalGraph::new(n, edges)?)
}

pub fn graph_file(g: &ClassicalGraph) -> String {
    let mut out = format!("{GRAPH_TAG}\nn={}\n", g.n());
    for (u, v) in g.edges() {
        writeln!(out, "edge={u}-{v}").expect("writing to a String");
    }
    out
}

/// `key=value` lines sorted by key.
pub fn report(mut entries: Vec<(String, String)>) -> String {
    entries.sort();
    entries.into_iter().map(|(k, v)| format!("{k}={v}\n")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mag_file_round_trip() {
        let text = "# sample\nmagv1\n\ntau=2,2\nedge=(2,1)-(1,2)\nedge=(1,1)-(1,2) # first\n";
        let g = parse_mag_file(text).unwrap();
        let canonical = mag_file(&g);
        assert_eq!(canonical, "magv1\ntau=2,2\nedge=(1,1)-(1,2)\nedge=(1,2)-(2,1)\n");
        assert_eq!(mag_file(&parse_mag_file(&canonical).unwrap()), canonical);
    }

    #[test]
    fn mag_file_errors() {
        assert!(parse_mag_file("").is_err());
        assert!(parse_mag_file("magv2\ntau=2\n").is_err());
        assert!(parse_mag_file("magv1\ntau=2\nedge=(1)-(1)\n").is_err());
        assert!(parse_mag_file("magv1\ntau=2\nedge=(1)-(3)\n").is_err());
        assert!(parse_mag_file("magv1\ntau=2\nvertex=(1)\n").is_err());
    }

    #[test]
    fn graph_file_round_trip() {
        let g = parse_graph_file("graphv1\nn=4\nedge=3-1\nedge=2-4\n").unwrap();
        assert_eq!(graph_file(&g), "graphv1\nn=4\nedge=1-3\nedge=2-4\n");
        assert!(parse_graph_file("graphv1\nn=2\nedge=1-1\n").is_err());
    }

    #[test]
    fn edge_text() {
        let (a, b) = parse_edge("(1,2)-(2,1)").unwrap();
        assert_eq!(a.coords(), [1, 2]);
        assert_eq!(b.coords(), [2, 1]);
        assert!(parse_edge("(1,2)(2,1)").is_err());
        assert!(parse_tau("2,0").is_err());
        assert!(parse_tau("2,x").is_err());
    }
}
