use std::collections::BTreeSet;
use std::fmt;

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

/// Undirected edge, stored with the smaller endpoint first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    u: u32,
    v: u32,
}

impl Edge {
    /// Builds the edge `{a, b}`. Panics on a self-loop, which no HL-network
    /// contains and no caller should ever construct.
    pub fn new(a: u32, b: u32) -> Self {
        assert!(a != b, "self-loop at vertex {a}");
        Edge {
            u: a.min(b),
            v: a.max(b),
        }
    }

    /// The smaller endpoint. (Named to dodge `Ord::min`, which would
    /// otherwise shadow an accessor called `min` on this `Ord` type.)
    pub fn lo(&self) -> u32 {
        self.u
    }

    /// The larger endpoint.
    pub fn hi(&self) -> u32 {
        self.v
    }

    pub fn endpoints(&self) -> (u32, u32) {
        (self.u, self.v)
    }

    pub fn touches(&self, vertex: u32) -> bool {
        self.u == vertex || self.v == vertex
    }

    /// The endpoint that is not `vertex`. Panics if the edge misses `vertex`.
    pub fn other(&self, vertex: u32) -> u32 {
        if vertex == self.u {
            self.v
        } else {
            assert!(vertex == self.v, "edge {self} does not touch {vertex}");
            self.u
        }
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.u, self.v)
    }
}

impl Serialize for Edge {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(2))?;
        seq.serialize_element(&self.u)?;
        seq.serialize_element(&self.v)?;
        seq.end()
    }
}

/// Set of undirected edges with deterministic (lexicographic) iteration.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct EdgeSet {
    edges: BTreeSet<Edge>,
}

impl EdgeSet {
    pub fn new() -> Self {
        EdgeSet::default()
    }

    pub fn insert(&mut self, edge: Edge) -> bool {
        self.edges.insert(edge)
    }

    pub fn remove(&mut self, edge: &Edge) -> bool {
        self.edges.remove(edge)
    }

    pub fn contains(&self, edge: &Edge) -> bool {
        self.edges.contains(edge)
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Edge> {
        self.edges.iter()
    }

    /// Set difference `self \ other`.
    pub fn difference(&self, other: &EdgeSet) -> EdgeSet {
        EdgeSet {
            edges: self.edges.difference(&other.edges).copied().collect(),
        }
    }
}

impl FromIterator<Edge> for EdgeSet {
    fn from_iter<I: IntoIterator<Item = Edge>>(iter: I) -> Self {
        EdgeSet {
            edges: iter.into_iter().collect(),
        }
    }
}

impl<'a> IntoIterator for &'a EdgeSet {
    type Item = &'a Edge;
    type IntoIter = std::collections::btree_set::Iter<'a, Edge>;

    fn into_iter(self) -> Self::IntoIter {
        self.edges.iter()
    }
}

impl IntoIterator for EdgeSet {
    type Item = Edge;
    type IntoIter = std::collections::btree_set::IntoIter<Edge>;

    fn into_iter(self) -> Self::IntoIter {
        self.edges.into_iter()
    }
}

impl fmt::Display for EdgeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.edges.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

impl Serialize for EdgeSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.edges.len()))?;
        for e in &self.edges {
            seq.serialize_element(e)?;
        }
        seq.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edge_normalizes_endpoint_order() {
        assert_eq!(Edge::new(5, 2), Edge::new(2, 5));
        assert_eq!(Edge::new(5, 2).endpoints(), (2, 5));
    }

    #[test]
    #[should_panic(expected = "self-loop")]
    fn edge_rejects_self_loop() {
        let _ = Edge::new(3, 3);
    }

    #[test]
    fn edge_set_orders_lexicographically() {
        let set: EdgeSet = [Edge::new(2, 3), Edge::new(0, 7), Edge::new(0, 1)]
            .into_iter()
            .collect();
        let listed: Vec<_> = set.iter().copied().collect();
        assert_eq!(
            listed,
            vec![Edge::new(0, 1), Edge::new(0, 7), Edge::new(2, 3)]
        );
    }

    #[test]
    fn edge_serializes_as_pair() {
        let json = serde_json::to_string(&Edge::new(4, 1)).unwrap();
        assert_eq!(json, "[1,4]");
    }
}
