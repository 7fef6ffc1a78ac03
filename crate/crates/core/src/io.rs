//! Plain-text graph and fault-list formats, plus DOT rendering.
//!
//! The edge-list format is a `n=<dimension>` header followed by one `u v`
//! line per edge. Reading rebuilds the recursive construction by splitting
//! the vertex range in half and checking that the cross edges form a perfect
//! matching, so only genuine members of the family round-trip.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::edge::{Edge, EdgeSet};
use crate::error::{Error, Result};
use crate::network::{HLNetwork, MAX_DIMENSION};

/// Serializes a network as an edge list with a dimension header.
pub fn write_edge_list(g: &HLNetwork) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "n={}", g.dimension());
    for e in g.edges() {
        let _ = writeln!(out, "{} {}", e.lo(), e.hi());
    }
    out
}

/// Parses an edge list and rebuilds the recursive construction. Fails when
/// the edges do not describe a member of the family.
pub fn read_edge_list(text: &str) -> Result<HLNetwork> {
    let mut lines = significant_lines(text);
    let header = lines
        .next()
        .ok_or_else(|| Error::Parse("empty input".into()))?;
    let dimension: usize = header
        .strip_prefix("n=")
        .ok_or_else(|| Error::Parse(format!("expected `n=<dimension>` header, got `{header}`")))?
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("bad dimension in header `{header}`")))?;
    if dimension > MAX_DIMENSION {
        return Err(Error::DimensionTooLarge {
            requested: dimension,
            max: MAX_DIMENSION,
        });
    }
    let vertex_count = 1u64 << dimension;

    let mut edges = Vec::new();
    for line in lines {
        let mut parts = line.split_whitespace();
        let (u, v) = match (parts.next(), parts.next(), parts.next()) {
            (Some(u), Some(v), None) => (u, v),
            _ => return Err(Error::Parse(format!("expected `u v`, got `{line}`"))),
        };
        let u: u64 = u
            .parse()
            .map_err(|_| Error::Parse(format!("bad vertex id `{u}`")))?;
        let v: u64 = v
            .parse()
            .map_err(|_| Error::Parse(format!("bad vertex id `{v}`")))?;
        if u == v {
            return Err(Error::Parse(format!("self-loop at vertex {u}")));
        }
        if u >= vertex_count || v >= vertex_count {
            return Err(Error::Parse(format!(
                "vertex {} out of range for dimension {dimension}",
                u.max(v)
            )));
        }
        edges.push(Edge::new(u as u32, v as u32));
    }
    edges.sort();
    if edges.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::Parse("duplicate edge".into()));
    }
    let expected = dimension as u64 * (vertex_count / 2);
    if edges.len() as u64 != expected {
        return Err(Error::InvalidMatching(format!(
            "{} edges, but a dimension-{dimension} member has {expected}",
            edges.len()
        )));
    }
    rebuild(dimension, &edges)
}

/// Recursively reassembles a block (edges localized to `0..2^dimension`)
/// from its halves, validating that the cross edges form a perfect matching.
fn rebuild(dimension: usize, edges: &[Edge]) -> Result<HLNetwork> {
    if dimension == 0 {
        return Ok(HLNetwork::single_vertex());
    }
    let half = 1u32 << (dimension - 1);
    let mut left = Vec::new();
    let mut right = Vec::new();
    let mut matching = vec![u32::MAX; half as usize];
    let mut matched_right = vec![false; half as usize];
    for e in edges {
        let (u, v) = e.endpoints();
        match (u < half, v < half) {
            (true, true) => left.push(*e),
            (false, false) => right.push(Edge::new(u - half, v - half)),
            (true, false) => {
                let (l, r) = (u as usize, (v - half) as usize);
                if matching[l] != u32::MAX || matched_right[r] {
                    return Err(Error::InvalidMatching(format!(
                        "cross edges of a dimension-{dimension} block do not form a perfect matching"
                    )));
                }
                matching[l] = v - half;
                matched_right[r] = true;
            }
            (false, true) => unreachable!("edges store endpoints in order"),
        }
    }
    if matching.contains(&u32::MAX) {
        return Err(Error::InvalidMatching(format!(
            "a dimension-{dimension} block is missing cross edges"
        )));
    }
    let left_net = rebuild(dimension - 1, &left)?;
    let right_net = rebuild(dimension - 1, &right)?;
    HLNetwork::compose(&left_net, &right_net, &matching)
}

pub fn read_edge_list_file(path: impl AsRef<Path>) -> Result<HLNetwork> {
    read_edge_list(&fs::read_to_string(path)?)
}

pub fn write_edge_list_file(path: impl AsRef<Path>, g: &HLNetwork) -> Result<()> {
    Ok(fs::write(path, write_edge_list(g))?)
}

/// Builds a network from a compact spec: `qn:<n>` for the hypercube, `cq3`
/// for the small crossed cube, `random:<n>:<seed>` for a random member, and
/// anything else is read as an edge-list file path.
pub fn parse_graph_spec(spec: &str) -> Result<HLNetwork> {
    let spec = spec.trim();
    if let Some(rest) = spec.strip_prefix("qn:") {
        let n: usize = rest
            .parse()
            .map_err(|_| Error::Parse(format!("bad dimension in `{spec}`")))?;
        return HLNetwork::hypercube(n);
    }
    if spec == "cq3" {
        return Ok(HLNetwork::crossed_cube_3());
    }
    if let Some(rest) = spec.strip_prefix("random:") {
        let (n, seed) = rest.split_once(':').ok_or_else(|| {
            Error::Parse(format!("expected random:<dimension>:<seed>, got `{spec}`"))
        })?;
        let n: usize = n
            .parse()
            .map_err(|_| Error::Parse(format!("bad dimension in `{spec}`")))?;
        let seed: u64 = seed
            .parse()
            .map_err(|_| Error::Parse(format!("bad seed in `{spec}`")))?;
        return HLNetwork::random(n, seed);
    }
    read_edge_list_file(spec)
}

/// Serializes a fault list as one `u v` line per edge.
pub fn write_fault_list(faults: &EdgeSet) -> String {
    let mut out = String::new();
    for e in faults.iter() {
        let _ = writeln!(out, "{} {}", e.lo(), e.hi());
    }
    out
}

/// Parses a fault list against a host graph; every line must name one of
/// its edges.
pub fn read_fault_list(text: &str, g: &HLNetwork) -> Result<EdgeSet> {
    let mut faults = EdgeSet::new();
    for line in significant_lines(text) {
        let mut parts = line.split_whitespace();
        let (u, v) = match (parts.next(), parts.next(), parts.next()) {
            (Some(u), Some(v), None) => (u, v),
            _ => return Err(Error::Parse(format!("expected `u v`, got `{line}`"))),
        };
        let u: u32 = u
            .parse()
            .map_err(|_| Error::Parse(format!("bad vertex id `{u}`")))?;
        let v: u32 = v
            .parse()
            .map_err(|_| Error::Parse(format!("bad vertex id `{v}`")))?;
        if u == v {
            return Err(Error::Parse(format!("self-loop at vertex {u}")));
        }
        let e = Edge::new(u, v);
        if !g.contains_edge(u, v) {
            return Err(Error::UnknownEdge(e));
        }
        faults.insert(e);
    }
    Ok(faults)
}

/// Renders the graph in DOT format, highlighting fault edges (red, dashed)
/// and marked vertices (filled).
pub fn write_dot(g: &HLNetwork, faults: Option<&EdgeSet>, marked: &[u32]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "graph g {{");
    let _ = writeln!(out, "  node [shape=circle];");
    for &v in marked {
        let _ = writeln!(out, "  {v} [style=filled, fillcolor=gold];");
    }
    for e in g.edges() {
        if faults.is_some_and(|f| f.contains(e)) {
            let _ = writeln!(out, "  {} -- {} [color=red, style=dashed];", e.lo(), e.hi());
        } else {
            let _ = writeln!(out, "  {} -- {};", e.lo(), e.hi());
        }
    }
    let _ = writeln!(out, "}}");
    out
}

fn significant_lines(text: &str) -> impl Iterator<Item = &str> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hypercube_round_trips() {
        let q4 = HLNetwork::hypercube(4).unwrap();
        let text = write_edge_list(&q4);
        let back = read_edge_list(&text).unwrap();
        assert_eq!(back, q4);
        assert_eq!(write_edge_list(&back), text);
    }

    #[test]
    fn random_members_round_trip() {
        for seed in [0, 9, 41] {
            let g = HLNetwork::random(5, seed).unwrap();
            let back = read_edge_list(&write_edge_list(&g)).unwrap();
            assert_eq!(back, g);
        }
    }

    #[test]
    fn crossed_cube_round_trips() {
        let cq3 = HLNetwork::crossed_cube_3();
        let back = read_edge_list(&write_edge_list(&cq3)).unwrap();
        assert_eq!(back, cq3);
    }

    #[test]
    fn comments_and_blank_lines_are_ignored() {
        let q2 = HLNetwork::hypercube(2).unwrap();
        let text = format!("# a square\n\n{}\n# trailing", write_edge_list(&q2));
        assert_eq!(read_edge_list(&text).unwrap(), q2);
    }

    #[test]
    fn the_eight_cycle_is_rejected() {
        // Right vertex count and an even degree sequence, but the halves
        // are joined by only two cross edges instead of a matching of four.
        let mut text = String::from("n=3\n");
        for i in 0..8 {
            let j = (i + 1) % 8;
            text.push_str(&format!("{} {}\n", i.min(j), i.max(j)));
        }
        text.push_str("0 2\n0 5\n1 3\n4 6\n");
        assert!(matches!(
            read_edge_list(&text),
            Err(Error::InvalidMatching(_))
        ));
    }

    #[test]
    fn malformed_inputs_are_rejected() {
        assert!(read_edge_list("").is_err());
        assert!(read_edge_list("n=3\n0 0\n").is_err());
        assert!(read_edge_list("n=3\n0 9\n").is_err());
        assert!(read_edge_list("n=3\n0 1 2\n").is_err());
        assert!(read_edge_list("m=3\n0 1\n").is_err());
        assert!(read_edge_list("n=99\n").is_err());
        // Wrong edge count for the claimed dimension.
        assert!(matches!(
            read_edge_list("n=1\n"),
            Err(Error::InvalidMatching(_))
        ));
        // Duplicate edge.
        let dup = "n=1\n0 1\n0 1\n";
        assert!(matches!(read_edge_list(dup), Err(Error::Parse(_))));
    }

    #[test]
    fn graph_specs_parse() {
        let q3 = HLNetwork::hypercube(3).unwrap();
        assert_eq!(parse_graph_spec("qn:3").unwrap(), q3);
        assert!(parse_graph_spec("qn:x").is_err());
        assert_eq!(parse_graph_spec("cq3").unwrap(), HLNetwork::crossed_cube_3());
        assert_eq!(
            parse_graph_spec("random:4:7").unwrap(),
            HLNetwork::random(4, 7).unwrap()
        );
        assert!(parse_graph_spec("random:4").is_err());
        assert!(parse_graph_spec("/nonexistent/g.edges").is_err());

        let path = std::env::temp_dir().join("hlnet-io-spec-test.edges");
        write_edge_list_file(&path, &q3).unwrap();
        assert_eq!(parse_graph_spec(path.to_str().unwrap()).unwrap(), q3);
        let _ = fs::remove_file(&path);
    }

    #[test]
    fn fault_lists_round_trip_and_validate() {
        let q3 = HLNetwork::hypercube(3).unwrap();
        let faults: EdgeSet = [Edge::new(1, 3), Edge::new(1, 5)].into_iter().collect();
        let text = write_fault_list(&faults);
        assert_eq!(read_fault_list(&text, &q3).unwrap(), faults);
        assert!(matches!(
            read_fault_list("0 7\n", &q3),
            Err(Error::UnknownEdge(_))
        ));
        assert!(read_fault_list("0 0\n", &q3).is_err());
    }

    #[test]
    fn dot_output_marks_faults_and_vertices() {
        let q2 = HLNetwork::hypercube(2).unwrap();
        let faults: EdgeSet = [Edge::new(0, 1)].into_iter().collect();
        let dot = write_dot(&q2, Some(&faults), &[0, 3]);
        assert!(dot.starts_with("graph g {"));
        assert!(dot.contains("0 -- 1 [color=red, style=dashed];"));
        assert!(dot.contains("0 -- 2;"));
        assert!(dot.contains("0 [style=filled, fillcolor=gold];"));
        assert!(dot.contains("3 [style=filled, fillcolor=gold];"));
        assert!(dot.trim_end().ends_with('}'));
    }
}
