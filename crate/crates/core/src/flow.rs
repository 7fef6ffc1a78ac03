//! Edge-disjoint paths, minimum edge cuts, and the strong Menger property.
//!
//! Everything is exact: flows are integral unit-capacity flows found by BFS
//! augmentation, every result carries both the path family and the cut that
//! certifies optimality, and the strong Menger check compares each pair's
//! flow value against the smaller endpoint degree.

use serde::Serialize;

use crate::edge::EdgeSet;
use crate::error::{Error, Result};
use crate::view::GraphView;

/// Max-flow answer for one vertex pair, with certificates for both sides of
/// the duality: `paths` shows the flow value is attainable, `cut` shows it
/// cannot be exceeded.
#[derive(Debug, Clone, Serialize)]
pub struct FlowResult {
    pub source: u32,
    pub sink: u32,
    pub value: u32,
    /// `value` pairwise edge-disjoint source-sink paths, each a vertex
    /// sequence over surviving edges.
    pub paths: Vec<Vec<u32>>,
    /// A source-sink edge cut of size `value`.
    pub cut: EdgeSet,
}

impl FlowResult {
    /// Re-checks every claim this result makes against the graph it was
    /// computed on. Used by tests and by the witness certification path.
    pub fn certify(&self, view: &GraphView) -> Result<()> {
        let fail = |msg: String| Err(Error::FlowCertification(msg));
        if self.paths.len() != self.value as usize {
            return fail(format!(
                "{} paths for flow value {}",
                self.paths.len(),
                self.value
            ));
        }
        if self.cut.len() != self.value as usize {
            return fail(format!(
                "cut size {} for flow value {}",
                self.cut.len(),
                self.value
            ));
        }
        let host = view.host();
        let mut used = vec![false; host.edge_count()];
        for path in &self.paths {
            if path.first() != Some(&self.source) || path.last() != Some(&self.sink) {
                return fail(format!("path {path:?} does not join the endpoints"));
            }
            for pair in path.windows(2) {
                let idx = match host.edge_index(pair[0], pair[1]) {
                    Some(idx) if view.is_alive(idx) => idx,
                    _ => {
                        return fail(format!(
                            "path step {}-{} is not a surviving edge",
                            pair[0], pair[1]
                        ))
                    }
                };
                if used[idx] {
                    return fail(format!("edge {}-{} used twice", pair[0], pair[1]));
                }
                used[idx] = true;
            }
        }
        let degree_cap = view.degree(self.source).min(view.degree(self.sink));
        if (self.value as usize) > degree_cap {
            return fail(format!(
                "flow {} exceeds the endpoint degree cap {degree_cap}",
                self.value
            ));
        }
        // The cut really separates: mask it and look for a residual path.
        let mut masked = view.clone();
        for e in &self.cut {
            match host.edge_index(e.lo(), e.hi()) {
                Some(idx) if view.is_alive(idx) => masked.remove_edge_index(idx),
                _ => return fail(format!("cut edge {e} is not a surviving edge")),
            }
        }
        let dist = masked.bfs_distances(self.source);
        if dist[self.sink as usize] != u32::MAX {
            return fail("cut does not separate the endpoints".into());
        }
        Ok(())
    }
}

/// Verdict of the strong Menger check: does every vertex pair admit as many
/// edge-disjoint paths as the smaller of its two degrees?
#[derive(Debug, Clone, Serialize)]
pub struct SmLambdaReport {
    pub verdict: bool,
    /// First violating pair met in the deterministic search order, or the
    /// smallest cross-component pair when the graph is disconnected.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<PairCounterexample>,
    pub pairs_checked: u64,
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct PairCounterexample {
    pub u: u32,
    pub v: u32,
    pub flow: u32,
    pub required: u32,
}

/// Reusable flow workspace. Loading a view builds a doubled-arc residual
/// structure; each pair query then only resets capacities, so sweeping many
/// pairs or many fault sets does not reallocate.
pub(crate) struct FlowScratch {
    vcount: usize,
    packed_ends: Vec<(u32, u32)>,
    arc_cap: Vec<u8>,
    head: Vec<u32>,
    arc_ids: Vec<u32>,
    parent_arc: Vec<u32>,
    queue: Vec<u32>,
    consumed: Vec<bool>,
    path_pos: Vec<u32>,
}

const NO_ARC: u32 = u32::MAX;
/// Parent marker for the BFS source.
const ROOT_ARC: u32 = u32::MAX - 1;

impl FlowScratch {
    pub(crate) fn new() -> Self {
        FlowScratch {
            vcount: 0,
            packed_ends: Vec::new(),
            arc_cap: Vec::new(),
            head: Vec::new(),
            arc_ids: Vec::new(),
            parent_arc: Vec::new(),
            queue: Vec::new(),
            consumed: Vec::new(),
            path_pos: Vec::new(),
        }
    }

    /// Rebuilds the arc structure for the surviving edges of `view`.
    pub(crate) fn load(&mut self, view: &GraphView) {
        self.vcount = view.vertex_count();
        self.packed_ends.clear();
        let host = view.host();
        for (idx, e) in host.edges().iter().enumerate() {
            if view.is_alive(idx) {
                self.packed_ends.push((e.lo(), e.hi()));
            }
        }
        let arcs = self.packed_ends.len() * 2;
        self.arc_cap.clear();
        self.arc_cap.resize(arcs, 1);

        self.head.clear();
        self.head.resize(self.vcount + 1, 0);
        for &(a, b) in &self.packed_ends {
            self.head[a as usize + 1] += 1;
            self.head[b as usize + 1] += 1;
        }
        for v in 0..self.vcount {
            self.head[v + 1] += self.head[v];
        }
        self.arc_ids.clear();
        self.arc_ids.resize(arcs, 0);
        let mut cursor: Vec<u32> = self.head[..self.vcount].to_vec();
        for (p, &(a, b)) in self.packed_ends.iter().enumerate() {
            // Arc 2p runs a -> b, arc 2p+1 runs b -> a.
            self.arc_ids[cursor[a as usize] as usize] = (2 * p) as u32;
            cursor[a as usize] += 1;
            self.arc_ids[cursor[b as usize] as usize] = (2 * p + 1) as u32;
            cursor[b as usize] += 1;
        }
        self.parent_arc.resize(self.vcount, NO_ARC);
        self.consumed.resize(arcs, false);
        self.path_pos.resize(self.vcount, u32::MAX);
    }

    fn arc_target(&self, arc: u32) -> u32 {
        let (a, b) = self.packed_ends[(arc / 2) as usize];
        if arc.is_multiple_of(2) {
            b
        } else {
            a
        }
    }

    fn reset_caps(&mut self) {
        self.arc_cap.fill(1);
    }

    /// One BFS over positive-capacity arcs. Returns true when `t` was
    /// reached; `parent_arc` then encodes an augmenting path.
    fn bfs(&mut self, s: u32, t: u32) -> bool {
        self.parent_arc.fill(NO_ARC);
        self.parent_arc[s as usize] = ROOT_ARC;
        self.queue.clear();
        self.queue.push(s);
        let mut at = 0;
        while at < self.queue.len() {
            let v = self.queue[at];
            at += 1;
            let lo = self.head[v as usize] as usize;
            let hi = self.head[v as usize + 1] as usize;
            for &arc in &self.arc_ids[lo..hi] {
                if self.arc_cap[arc as usize] == 0 {
                    continue;
                }
                let w = self.arc_target(arc);
                if self.parent_arc[w as usize] == NO_ARC {
                    self.parent_arc[w as usize] = arc;
                    if w == t {
                        return true;
                    }
                    self.queue.push(w);
                }
            }
        }
        false
    }

    /// Augments unit paths until none remain or `limit` is reached. Assumes
    /// fresh or reset capacities. When the return value is below `limit` it
    /// is the exact max flow, and `parent_arc` holds the final (failed) BFS,
    /// i.e. the residual reachability that certifies the cut.
    pub(crate) fn max_flow(&mut self, s: u32, t: u32, limit: u32) -> u32 {
        let mut value = 0;
        while value < limit && self.bfs(s, t) {
            let mut w = t;
            while w != s {
                let arc = self.parent_arc[w as usize];
                self.arc_cap[arc as usize] -= 1;
                self.arc_cap[(arc ^ 1) as usize] += 1;
                w = self.arc_target(arc ^ 1);
            }
            value += 1;
        }
        value
    }

    /// Surviving edges with exactly one endpoint residually reachable from
    /// the source of the last (failed) BFS.
    fn cut_from_reachability(&self) -> EdgeSet {
        self.packed_ends
            .iter()
            .filter(|&&(a, b)| {
                (self.parent_arc[a as usize] != NO_ARC) != (self.parent_arc[b as usize] != NO_ARC)
            })
            .map(|&(a, b)| crate::edge::Edge::new(a, b))
            .collect()
    }

    /// Decomposes the current flow into `value` edge-disjoint simple paths.
    fn extract_paths(&mut self, s: u32, t: u32, value: u32) -> Vec<Vec<u32>> {
        self.consumed.fill(false);
        self.path_pos.fill(u32::MAX);
        let mut paths = Vec::with_capacity(value as usize);
        for _ in 0..value {
            let mut path = vec![s];
            self.path_pos[s as usize] = 0;
            let mut x = s;
            while x != t {
                let lo = self.head[x as usize] as usize;
                let hi = self.head[x as usize + 1] as usize;
                let arc = self.arc_ids[lo..hi]
                    .iter()
                    .copied()
                    .find(|&a| self.arc_cap[a as usize] == 0 && !self.consumed[a as usize])
                    .expect("flow conservation leaves an outgoing used arc");
                self.consumed[arc as usize] = true;
                let y = self.arc_target(arc);
                if self.path_pos[y as usize] != u32::MAX {
                    // Walked into a flow cycle; drop the loop portion.
                    let keep = self.path_pos[y as usize] as usize + 1;
                    for dropped in path.drain(keep..) {
                        self.path_pos[dropped as usize] = u32::MAX;
                    }
                } else {
                    self.path_pos[y as usize] = path.len() as u32;
                    path.push(y);
                }
                x = y;
            }
            for &v in &path {
                self.path_pos[v as usize] = u32::MAX;
            }
            paths.push(path);
        }
        paths
    }

    fn full_result(&mut self, view: &GraphView, s: u32, t: u32) -> FlowResult {
        self.load(view);
        let value = self.max_flow(s, t, u32::MAX);
        let cut = self.cut_from_reachability();
        debug_assert_eq!(cut.len(), value as usize, "max-flow/min-cut duality");
        let paths = self.extract_paths(s, t, value);
        FlowResult {
            source: s,
            sink: t,
            value,
            paths,
            cut,
        }
    }
}

fn check_pair(view: &GraphView, u: u32, v: u32) -> Result<()> {
    view.host().check_vertex(u)?;
    view.host().check_vertex(v)?;
    if u == v {
        return Err(Error::InvalidArgument(format!(
            "source and sink must differ, both are {u}"
        )));
    }
    Ok(())
}

/// Maximum family of pairwise edge-disjoint `u`-`v` paths, with the matching
/// minimum cut. Exact for any surviving subgraph.
pub fn max_edge_disjoint_paths(view: &GraphView, u: u32, v: u32) -> Result<FlowResult> {
    check_pair(view, u, v)?;
    let mut scratch = FlowScratch::new();
    Ok(scratch.full_result(view, u, v))
}

/// The certified minimum `u`-`v` edge cut. Empty exactly when `u` and `v`
/// are already disconnected.
pub fn min_edge_cut(view: &GraphView, u: u32, v: u32) -> Result<EdgeSet> {
    Ok(max_edge_disjoint_paths(view, u, v)?.cut)
}

/// Edge connectivity of the surviving graph: the smallest number of edge
/// removals that disconnect it. Requires at least two vertices; 0 for a
/// graph that is already disconnected.
pub fn edge_connectivity(view: &GraphView) -> Result<u32> {
    if view.vertex_count() < 2 {
        return Err(Error::InvalidArgument(
            "edge connectivity needs at least two vertices".into(),
        ));
    }
    if !view.is_connected() {
        return Ok(0);
    }
    // The minimum over all pairs is attained with any fixed first endpoint.
    let mut scratch = FlowScratch::new();
    scratch.load(view);
    let mut best = view.degree(0) as u32;
    for v in 1..view.vertex_count() as u32 {
        if best == 0 {
            break;
        }
        scratch.reset_caps();
        let flow = scratch.max_flow(0, v, best);
        best = best.min(flow);
    }
    Ok(best)
}

/// Strong Menger edge connectivity: every pair `u, v` must admit
/// `min(deg(u), deg(v))` edge-disjoint paths.
///
/// A cheap refutation pass checks each vertex against its farthest surviving
/// vertex first; the exhaustive all-pairs pass follows. The heuristic can
/// only change which counterexample is found first, never the verdict, and
/// the search order is fixed, so the outcome is deterministic.
pub fn is_sm_lambda(view: &GraphView) -> SmLambdaReport {
    let mut scratch = FlowScratch::new();
    check_sm_lambda(view, &mut scratch)
}

pub(crate) fn check_sm_lambda(view: &GraphView, scratch: &mut FlowScratch) -> SmLambdaReport {
    let n = view.vertex_count() as u32;
    if n <= 1 {
        return SmLambdaReport {
            verdict: true,
            counterexample: None,
            pairs_checked: 0,
        };
    }
    // Disconnected graphs fail outright; report the smallest cross-component
    // pair.
    let dist = view.bfs_distances(0);
    if let Some(v) = dist.iter().position(|&d| d == u32::MAX) {
        let v = v as u32;
        return SmLambdaReport {
            verdict: false,
            counterexample: Some(PairCounterexample {
                u: 0,
                v,
                flow: 0,
                required: view.degree(0).min(view.degree(v)) as u32,
            }),
            pairs_checked: 0,
        };
    }

    scratch.load(view);
    let mut pairs_checked = 0u64;
    let run_pair = |scratch: &mut FlowScratch, a: u32, b: u32| -> Option<PairCounterexample> {
        let required = view.degree(a).min(view.degree(b)) as u32;
        scratch.reset_caps();
        let flow = scratch.max_flow(a, b, required);
        if flow < required {
            Some(PairCounterexample {
                u: a.min(b),
                v: a.max(b),
                flow,
                required,
            })
        } else {
            None
        }
    };

    // Refutation heuristic: the farthest vertex is the likeliest partner to
    // be starved of paths.
    for u in 0..n {
        let far = view.farthest_from(u);
        if far == u {
            continue;
        }
        pairs_checked += 1;
        if let Some(ce) = run_pair(scratch, u, far) {
            return SmLambdaReport {
                verdict: false,
                counterexample: Some(ce),
                pairs_checked,
            };
        }
    }
    for u in 0..n {
        for v in u + 1..n {
            pairs_checked += 1;
            if let Some(ce) = run_pair(scratch, u, v) {
                return SmLambdaReport {
                    verdict: false,
                    counterexample: Some(ce),
                    pairs_checked,
                };
            }
        }
    }
    SmLambdaReport {
        verdict: true,
        counterexample: None,
        pairs_checked,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::edge::{Edge, EdgeSet};
    use crate::network::HLNetwork;

    /// Brute-force oracle: the largest number of pairwise edge-disjoint
    /// simple `s`-`t` paths, found by enumerating all simple paths and then
    /// packing them by backtracking. Exponential, fine for 8 vertices.
    fn brute_force_disjoint_paths(view: &GraphView, s: u32, t: u32) -> usize {
        fn all_simple_paths(
            view: &GraphView,
            at: u32,
            t: u32,
            seen: &mut Vec<bool>,
            edges: &mut Vec<usize>,
            out: &mut Vec<Vec<usize>>,
        ) {
            if at == t {
                out.push(edges.clone());
                return;
            }
            let pairs: Vec<(u32, u32)> = view.incident(at).collect();
            for (w, eid) in pairs {
                if !seen[w as usize] {
                    seen[w as usize] = true;
                    edges.push(eid as usize);
                    all_simple_paths(view, w, t, seen, edges, out);
                    edges.pop();
                    seen[w as usize] = false;
                }
            }
        }
        let mut paths = Vec::new();
        let mut seen = vec![false; view.vertex_count()];
        seen[s as usize] = true;
        all_simple_paths(view, s, t, &mut seen, &mut Vec::new(), &mut paths);

        fn pack(
            paths: &[Vec<usize>],
            from: usize,
            used: &mut Vec<bool>,
            chosen: usize,
            best: &mut usize,
        ) {
            *best = (*best).max(chosen);
            for i in from..paths.len() {
                if paths[i].iter().all(|&e| !used[e]) {
                    for &e in &paths[i] {
                        used[e] = true;
                    }
                    pack(paths, i + 1, used, chosen + 1, best);
                    for &e in &paths[i] {
                        used[e] = false;
                    }
                }
            }
        }
        let mut best = 0;
        let n_edges = view.host().edge_count();
        pack(&paths, 0, &mut vec![false; n_edges], 0, &mut best);
        best
    }

    #[test]
    fn antipodal_flow_in_q3_matches_oracle() {
        let q3 = HLNetwork::hypercube(3).unwrap();
        let view = q3.view();
        assert_eq!(brute_force_disjoint_paths(&view, 0, 7), 3);
        let result = max_edge_disjoint_paths(&view, 0, 7).unwrap();
        assert_eq!(result.value, 3);
        result.certify(&view).unwrap();
    }

    #[test]
    fn flow_after_cutting_one_edge_matches_oracle() {
        let q3 = HLNetwork::hypercube(3).unwrap();
        let faults: EdgeSet = [Edge::new(0, 1)].into_iter().collect();
        let view = q3.delete_edges(&faults).unwrap();
        assert_eq!(brute_force_disjoint_paths(&view, 0, 1), 2);
        let result = max_edge_disjoint_paths(&view, 0, 1).unwrap();
        assert_eq!(result.value, 2);
        result.certify(&view).unwrap();
    }

    #[test]
    fn flow_agrees_with_oracle_on_random_members() {
        // Sweep every pair of a few dimension-3 members, with and without
        // faults, against the path-packing oracle.
        for seed in [3u64, 4, 5] {
            let g = HLNetwork::random(3, seed).unwrap();
            let mut view = g.view();
            view.remove_edge_index(seed as usize % g.edge_count());
            for u in 0..8u32 {
                for v in u + 1..8 {
                    let expected = brute_force_disjoint_paths(&view, u, v);
                    let got = max_edge_disjoint_paths(&view, u, v).unwrap();
                    assert_eq!(got.value as usize, expected, "pair {u}-{v}, seed {seed}");
                    got.certify(&view).unwrap();
                }
            }
        }
    }

    #[test]
    fn disconnected_pair_has_empty_cut_and_no_paths() {
        let q3 = HLNetwork::hypercube(3).unwrap();
        let mut view = q3.view();
        for eid in q3.view().incident(0).map(|(_, e)| e).collect::<Vec<_>>() {
            view.remove_edge_index(eid as usize);
        }
        let result = max_edge_disjoint_paths(&view, 0, 7).unwrap();
        assert_eq!(result.value, 0);
        assert!(result.paths.is_empty());
        assert!(result.cut.is_empty());
        result.certify(&view).unwrap();
        assert!(min_edge_cut(&view, 0, 7).unwrap().is_empty());
    }

    #[test]
    fn flow_rejects_bad_endpoints() {
        let q2 = HLNetwork::hypercube(2).unwrap();
        let view = q2.view();
        assert!(max_edge_disjoint_paths(&view, 0, 0).is_err());
        assert!(max_edge_disjoint_paths(&view, 0, 9).is_err());
    }

    #[test]
    fn hypercube_edge_connectivity_equals_dimension() {
        for n in 1..=5 {
            let q = HLNetwork::hypercube(n).unwrap();
            assert_eq!(edge_connectivity(&q.view()).unwrap(), n as u32);
        }
        let cq3 = HLNetwork::crossed_cube_3();
        assert_eq!(edge_connectivity(&cq3.view()).unwrap(), 3);
    }

    #[test]
    fn edge_connectivity_edge_cases() {
        let k1 = HLNetwork::single_vertex();
        assert!(edge_connectivity(&k1.view()).is_err());
        let q2 = HLNetwork::hypercube(2).unwrap();
        let mut view = q2.view();
        view.remove_edge_index(0);
        view.remove_edge_index(1);
        assert_eq!(edge_connectivity(&view).unwrap(), 0);
    }

    #[test]
    fn intact_members_are_strongly_menger_connected() {
        for n in 1..=4 {
            let q = HLNetwork::hypercube(n).unwrap();
            let report = is_sm_lambda(&q.view());
            assert!(report.verdict, "Q_{n}");
            assert!(report.counterexample.is_none());
        }
        assert!(is_sm_lambda(&HLNetwork::crossed_cube_3().view()).verdict);
        assert!(is_sm_lambda(&HLNetwork::single_vertex().view()).verdict);
    }

    #[test]
    fn starved_corner_breaks_the_property() {
        // Drop two of vertex 1's edges in Q_3. Only two edges then leave the
        // set {0, 1}, so the degree-3 pair (0, 7) is capped at two paths.
        let q3 = HLNetwork::hypercube(3).unwrap();
        let faults: EdgeSet = [Edge::new(1, 3), Edge::new(1, 5)].into_iter().collect();
        let view = q3.delete_edges(&faults).unwrap();
        let report = is_sm_lambda(&view);
        assert!(!report.verdict);
        let ce = report.counterexample.unwrap();
        assert_eq!((ce.u, ce.v), (0, 7));
        assert_eq!(ce.flow, 2);
        assert_eq!(ce.required, 3);
        // The reported pair really is deficient.
        let direct = max_edge_disjoint_paths(&view, ce.u, ce.v).unwrap();
        assert_eq!(direct.value, 2);
        direct.certify(&view).unwrap();
    }

    #[test]
    fn disconnected_graph_fails_with_cross_component_pair() {
        let q3 = HLNetwork::hypercube(3).unwrap();
        let mut view = q3.view();
        for eid in q3.view().incident(5).map(|(_, e)| e).collect::<Vec<_>>() {
            view.remove_edge_index(eid as usize);
        }
        let report = is_sm_lambda(&view);
        assert!(!report.verdict);
        let ce = report.counterexample.unwrap();
        assert_eq!((ce.u, ce.v), (0, 5));
        assert_eq!(ce.flow, 0);
    }

    #[test]
    fn flow_is_symmetric() {
        let g = HLNetwork::random(4, 11).unwrap();
        let mut view = g.view();
        view.remove_edge_index(3);
        view.remove_edge_index(17);
        for u in 0..16u32 {
            for v in u + 1..16 {
                let forward = max_edge_disjoint_paths(&view, u, v).unwrap().value;
                let backward = max_edge_disjoint_paths(&view, v, u).unwrap().value;
                assert_eq!(forward, backward, "pair {u}-{v}");
            }
        }
    }
}
