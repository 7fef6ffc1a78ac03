use std::sync::Arc;
use std::sync::OnceLock;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::edge::{Edge, EdgeSet};
use crate::error::{Error, Result};
use crate::iso::are_isomorphic;
use crate::view::GraphView;

/// Largest supported dimension. 2^20 vertices and ~10^7 edges keep every
/// structure comfortably in memory; anything bigger is outside the toolkit's
/// intended range.
pub const MAX_DIMENSION: usize = 20;

/// How a network was assembled from the two halves one dimension down.
///
/// `matching[i] = j` records the matching edge between vertex `i` of the left
/// half and local vertex `j` of the right half. Global ids place the left
/// half first, so that edge joins `i` and `half + j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConstructionTree {
    Leaf,
    Node {
        left: Arc<ConstructionTree>,
        right: Arc<ConstructionTree>,
        matching: Vec<u32>,
    },
}

impl ConstructionTree {
    pub fn dimension(&self) -> usize {
        let mut depth = 0;
        let mut node = self;
        while let ConstructionTree::Node { left, .. } = node {
            depth += 1;
            node = left;
        }
        depth
    }
}

/// A member of the hypercube-like family: an `n`-regular graph on `2^n`
/// vertices together with the construction tree that produced it.
///
/// Vertex ids are dense in `0..2^n`, assigned left half first at every level
/// of the construction. Edges are kept both as a sorted list (indexable, lex
/// order on `(min, max)`) and as a CSR adjacency structure for traversal.
#[derive(Debug, Clone)]
pub struct HLNetwork {
    dimension: usize,
    edges: Vec<Edge>,
    adj_off: Vec<u32>,
    adj_to: Vec<u32>,
    adj_eid: Vec<u32>,
    construction: Arc<ConstructionTree>,
}

impl PartialEq for HLNetwork {
    /// Graphs are compared by labeled edge set. Under the fixed id convention
    /// the construction tree is implied by the edges, so this is full
    /// structural equality.
    fn eq(&self, other: &Self) -> bool {
        self.dimension == other.dimension && self.edges == other.edges
    }
}

impl Eq for HLNetwork {}

impl HLNetwork {
    /// The single vertex, the only dimension-0 member of the family.
    pub fn single_vertex() -> Self {
        HLNetwork {
            dimension: 0,
            edges: Vec::new(),
            adj_off: vec![0, 0],
            adj_to: Vec::new(),
            adj_eid: Vec::new(),
            construction: Arc::new(ConstructionTree::Leaf),
        }
    }

    fn from_parts(
        dimension: usize,
        mut edges: Vec<Edge>,
        construction: Arc<ConstructionTree>,
    ) -> Self {
        let n_vertices = 1usize << dimension;
        edges.sort_unstable();
        edges.dedup();

        let mut degree = vec![0u32; n_vertices];
        for e in &edges {
            degree[e.lo() as usize] += 1;
            degree[e.hi() as usize] += 1;
        }
        let mut adj_off = Vec::with_capacity(n_vertices + 1);
        let mut acc = 0u32;
        adj_off.push(0);
        for d in &degree {
            acc += d;
            adj_off.push(acc);
        }
        let mut cursor: Vec<u32> = adj_off[..n_vertices].to_vec();
        let mut adj_to = vec![0u32; edges.len() * 2];
        let mut adj_eid = vec![0u32; edges.len() * 2];
        for (idx, e) in edges.iter().enumerate() {
            let (a, b) = e.endpoints();
            adj_to[cursor[a as usize] as usize] = b;
            adj_eid[cursor[a as usize] as usize] = idx as u32;
            cursor[a as usize] += 1;
            adj_to[cursor[b as usize] as usize] = a;
            adj_eid[cursor[b as usize] as usize] = idx as u32;
            cursor[b as usize] += 1;
        }
        // Edges are sorted lexicographically, so each vertex's slice is
        // already ordered by neighbor id for a < b arcs; arcs pointing back
        // to smaller ids arrive in edge order, which is also sorted. A merge
        // of two sorted runs is not automatic though, so sort per vertex.
        for v in 0..n_vertices {
            let lo = adj_off[v] as usize;
            let hi = adj_off[v + 1] as usize;
            let mut pairs: Vec<(u32, u32)> = adj_to[lo..hi]
                .iter()
                .copied()
                .zip(adj_eid[lo..hi].iter().copied())
                .collect();
            pairs.sort_unstable();
            for (k, (to, eid)) in pairs.into_iter().enumerate() {
                adj_to[lo + k] = to;
                adj_eid[lo + k] = eid;
            }
        }

        HLNetwork {
            dimension,
            edges,
            adj_off,
            adj_to,
            adj_eid,
            construction,
        }
    }

    /// Joins two networks of equal dimension with a perfect matching.
    ///
    /// `matching[i] = j` adds the edge between left vertex `i` and right
    /// vertex `j` (right ids are offset by `2^n` in the result). The matching
    /// must be a bijection.
    pub fn compose(left: &HLNetwork, right: &HLNetwork, matching: &[u32]) -> Result<HLNetwork> {
        if left.dimension != right.dimension {
            return Err(Error::DimensionMismatch {
                left: left.dimension,
                right: right.dimension,
            });
        }
        let n = left.dimension;
        if n + 1 > MAX_DIMENSION {
            return Err(Error::DimensionTooLarge {
                requested: n + 1,
                max: MAX_DIMENSION,
            });
        }
        let half = 1u32 << n;
        if matching.len() != half as usize {
            return Err(Error::InvalidMatching(format!(
                "expected {} entries, got {}",
                half,
                matching.len()
            )));
        }
        let mut seen = vec![false; half as usize];
        for &j in matching {
            if j >= half {
                return Err(Error::InvalidMatching(format!(
                    "target {j} out of range 0..{half}"
                )));
            }
            if seen[j as usize] {
                return Err(Error::InvalidMatching(format!("target {j} used twice")));
            }
            seen[j as usize] = true;
        }

        let mut edges = Vec::with_capacity(left.edges.len() + right.edges.len() + half as usize);
        edges.extend_from_slice(&left.edges);
        for e in &right.edges {
            edges.push(Edge::new(e.lo() + half, e.hi() + half));
        }
        for (i, &j) in matching.iter().enumerate() {
            edges.push(Edge::new(i as u32, half + j));
        }
        let construction = Arc::new(ConstructionTree::Node {
            left: Arc::clone(&left.construction),
            right: Arc::clone(&right.construction),
            matching: matching.to_vec(),
        });
        Ok(HLNetwork::from_parts(n + 1, edges, construction))
    }

    /// The hypercube `Q_n`: identity matchings all the way down, so vertices
    /// are adjacent exactly when their ids differ in one bit.
    pub fn hypercube(n: usize) -> Result<HLNetwork> {
        if n > MAX_DIMENSION {
            return Err(Error::DimensionTooLarge {
                requested: n,
                max: MAX_DIMENSION,
            });
        }
        let mut cube = HLNetwork::single_vertex();
        for k in 0..n {
            let identity: Vec<u32> = (0..1u32 << k).collect();
            cube = HLNetwork::compose(&cube, &cube, &identity)?;
        }
        Ok(cube)
    }

    /// The dimension-3 member that is not the hypercube.
    ///
    /// Exactly two isomorphism classes arise from joining two 4-cycles with a
    /// perfect matching. This returns a fixed representative of the class not
    /// isomorphic to `Q_3`: the one produced by the lexicographically
    /// smallest of the 24 matchings that leaves the hypercube class.
    pub fn crossed_cube_3() -> HLNetwork {
        static REP: OnceLock<HLNetwork> = OnceLock::new();
        REP.get_or_init(|| {
            let c4 = HLNetwork::hypercube(2).expect("Q_2 fits any budget");
            let q3 = HLNetwork::hypercube(3).expect("Q_3 fits any budget");
            for matching in permutations_of_four() {
                let candidate = HLNetwork::compose(&c4, &c4, &matching)
                    .expect("4-element perfect matching");
                let iso = are_isomorphic(&candidate, &q3)
                    .expect("8-vertex graphs are within the isomorphism size limit");
                if !iso {
                    return candidate;
                }
            }
            unreachable!("some matching of two 4-cycles leaves the hypercube class")
        })
        .clone()
    }

    /// Uniformly random member of the dimension-`n` family: both halves are
    /// generated independently and joined by a uniformly random matching.
    /// The same seed always yields the same graph.
    pub fn random(n: usize, seed: u64) -> Result<HLNetwork> {
        if n > MAX_DIMENSION {
            return Err(Error::DimensionTooLarge {
                requested: n,
                max: MAX_DIMENSION,
            });
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        fn build(n: usize, rng: &mut ChaCha8Rng) -> Result<HLNetwork> {
            if n == 0 {
                return Ok(HLNetwork::single_vertex());
            }
            let left = build(n - 1, rng)?;
            let right = build(n - 1, rng)?;
            let mut matching: Vec<u32> = (0..1u32 << (n - 1)).collect();
            matching.shuffle(rng);
            HLNetwork::compose(&left, &right, &matching)
        }
        build(n, &mut rng)
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn vertex_count(&self) -> usize {
        1usize << self.dimension
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// All edges, sorted lexicographically by `(min, max)`. The position of
    /// an edge in this slice is its stable index.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_at(&self, index: usize) -> Edge {
        self.edges[index]
    }

    /// Index of `{u, v}` in the sorted edge list, if present.
    pub fn edge_index(&self, u: u32, v: u32) -> Option<usize> {
        if u == v || u.max(v) >= self.vertex_count() as u32 {
            return None;
        }
        self.edges.binary_search(&Edge::new(u, v)).ok()
    }

    pub fn contains_edge(&self, u: u32, v: u32) -> bool {
        self.edge_index(u, v).is_some()
    }

    pub fn degree(&self, v: u32) -> Result<usize> {
        self.check_vertex(v)?;
        let v = v as usize;
        Ok((self.adj_off[v + 1] - self.adj_off[v]) as usize)
    }

    /// Neighbor ids of `v` in ascending order.
    pub fn neighbors(&self, v: u32) -> Result<&[u32]> {
        self.check_vertex(v)?;
        let v = v as usize;
        Ok(&self.adj_to[self.adj_off[v] as usize..self.adj_off[v + 1] as usize])
    }

    /// Adjacency of `v` as `(neighbor, edge index)` pairs.
    pub(crate) fn incident(&self, v: u32) -> impl Iterator<Item = (u32, u32)> + '_ {
        let v = v as usize;
        let lo = self.adj_off[v] as usize;
        let hi = self.adj_off[v + 1] as usize;
        self.adj_to[lo..hi]
            .iter()
            .copied()
            .zip(self.adj_eid[lo..hi].iter().copied())
    }

    pub fn construction(&self) -> &ConstructionTree {
        &self.construction
    }

    pub(crate) fn check_vertex(&self, v: u32) -> Result<()> {
        if (v as usize) < self.vertex_count() {
            Ok(())
        } else {
            Err(Error::UnknownVertex(v))
        }
    }

    /// Handle on the dimension-`r` sub-network reached by always descending
    /// into the left half. Its vertex set is exactly `0..2^r`.
    pub fn subcube(&self, r: usize) -> Result<SubcubeHandle<'_>> {
        if r > self.dimension {
            return Err(Error::InvalidArgument(format!(
                "no dimension-{r} subcube in a dimension-{} network",
                self.dimension
            )));
        }
        let mut subtree: &ConstructionTree = &self.construction;
        for _ in 0..self.dimension - r {
            match subtree {
                ConstructionTree::Node { left, .. } => subtree = left,
                ConstructionTree::Leaf => unreachable!("tree depth equals dimension"),
            }
        }
        Ok(SubcubeHandle {
            host: self,
            level: r,
            subtree,
        })
    }

    /// Edges with exactly one endpoint in `xs`.
    pub fn edge_boundary(&self, xs: &[u32]) -> Result<EdgeSet> {
        let mut inside = vec![false; self.vertex_count()];
        for &x in xs {
            self.check_vertex(x)?;
            inside[x as usize] = true;
        }
        Ok(self
            .edges
            .iter()
            .copied()
            .filter(|e| inside[e.lo() as usize] != inside[e.hi() as usize])
            .collect())
    }

    /// Masked view with every edge alive.
    pub fn view(&self) -> GraphView<'_> {
        GraphView::full(self)
    }

    /// Masked view with the edges in `faults` removed. The faults must all be
    /// present in the graph; the view shares the host's storage.
    pub fn delete_edges(&self, faults: &EdgeSet) -> Result<GraphView<'_>> {
        let mut view = GraphView::full(self);
        for e in faults {
            let idx = self
                .edge_index(e.lo(), e.hi())
                .ok_or(Error::UnknownEdge(*e))?;
            view.remove_edge_index(idx);
        }
        Ok(view)
    }

    pub fn min_degree(&self) -> usize {
        self.view().min_degree()
    }

    /// Connected component sizes in ascending order.
    pub fn component_sizes(&self) -> Vec<usize> {
        self.view().component_sizes()
    }

    pub fn largest_component_size(&self) -> usize {
        self.view().largest_component_size()
    }
}

/// Lightweight handle on a left-descent sub-network.
#[derive(Clone, Copy)]
pub struct SubcubeHandle<'a> {
    host: &'a HLNetwork,
    level: usize,
    subtree: &'a ConstructionTree,
}

impl<'a> SubcubeHandle<'a> {
    pub fn level(&self) -> usize {
        self.level
    }

    pub fn host(&self) -> &'a HLNetwork {
        self.host
    }

    pub fn subtree(&self) -> &'a ConstructionTree {
        self.subtree
    }

    pub fn vertex_count(&self) -> usize {
        1usize << self.level
    }

    pub fn vertices(&self) -> impl Iterator<Item = u32> {
        0..self.vertex_count() as u32
    }

    pub fn contains(&self, v: u32) -> bool {
        (v as usize) < self.vertex_count()
    }

    /// Edges of the host leaving the subcube.
    pub fn boundary(&self) -> EdgeSet {
        let verts: Vec<u32> = self.vertices().collect();
        self.host
            .edge_boundary(&verts)
            .expect("subcube vertices are host vertices")
    }
}

/// The 24 permutations of `{0, 1, 2, 3}` in lexicographic order.
pub(crate) fn permutations_of_four() -> Vec<Vec<u32>> {
    fn rec(chosen: &mut Vec<u32>, used: &mut [bool; 4], out: &mut Vec<Vec<u32>>) {
        if chosen.len() == 4 {
            out.push(chosen.clone());
            return;
        }
        for i in 0..4u32 {
            if !used[i as usize] {
                used[i as usize] = true;
                chosen.push(i);
                rec(chosen, used, out);
                chosen.pop();
                used[i as usize] = false;
            }
        }
    }
    let mut out = Vec::with_capacity(24);
    rec(&mut Vec::new(), &mut [false; 4], &mut out);
    out
}
