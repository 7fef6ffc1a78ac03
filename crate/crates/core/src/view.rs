use crate::edge::{Edge, EdgeSet};
use crate::network::HLNetwork;

/// Masked view of a host network with some edges marked removed.
///
/// The view borrows the host's storage; masking and unmasking an edge is O(1)
/// and keeps per-vertex residual degrees up to date, which makes views cheap
/// to mutate inside fault-set enumeration loops and cheap to clone when
/// handing work to parallel workers.
#[derive(Debug, Clone)]
pub struct GraphView<'a> {
    host: &'a HLNetwork,
    removed: Vec<bool>,
    removed_count: usize,
    degrees: Vec<u32>,
}

impl<'a> GraphView<'a> {
    pub(crate) fn full(host: &'a HLNetwork) -> Self {
        let degrees = (0..host.vertex_count() as u32)
            .map(|v| host.degree(v).expect("vertex in range") as u32)
            .collect();
        GraphView {
            host,
            removed: vec![false; host.edge_count()],
            removed_count: 0,
            degrees,
        }
    }

    pub fn host(&self) -> &'a HLNetwork {
        self.host
    }

    pub fn vertex_count(&self) -> usize {
        self.host.vertex_count()
    }

    /// Surviving edge count.
    pub fn edge_count(&self) -> usize {
        self.host.edge_count() - self.removed_count
    }

    pub fn removed_count(&self) -> usize {
        self.removed_count
    }

    pub fn is_alive(&self, edge_index: usize) -> bool {
        !self.removed[edge_index]
    }

    /// Masks the edge with the given index. Masking twice is a no-op.
    pub fn remove_edge_index(&mut self, edge_index: usize) {
        if !self.removed[edge_index] {
            self.removed[edge_index] = true;
            self.removed_count += 1;
            let e = self.host.edge_at(edge_index);
            self.degrees[e.lo() as usize] -= 1;
            self.degrees[e.hi() as usize] -= 1;
        }
    }

    /// Unmasks the edge with the given index.
    pub fn restore_edge_index(&mut self, edge_index: usize) {
        if self.removed[edge_index] {
            self.removed[edge_index] = false;
            self.removed_count -= 1;
            let e = self.host.edge_at(edge_index);
            self.degrees[e.lo() as usize] += 1;
            self.degrees[e.hi() as usize] += 1;
        }
    }

    pub fn degree(&self, v: u32) -> usize {
        self.degrees[v as usize] as usize
    }

    pub fn min_degree(&self) -> usize {
        self.degrees.iter().copied().min().unwrap_or(0) as usize
    }

    /// Surviving neighbors of `v` in ascending order.
    pub fn neighbors(&self, v: u32) -> impl Iterator<Item = u32> + '_ {
        self.host
            .incident(v)
            .filter(|&(_, eid)| !self.removed[eid as usize])
            .map(|(to, _)| to)
    }

    /// Surviving incident `(neighbor, edge index)` pairs of `v`.
    pub fn incident(&self, v: u32) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.host
            .incident(v)
            .filter(|&(_, eid)| !self.removed[eid as usize])
    }

    pub fn has_edge(&self, u: u32, v: u32) -> bool {
        match self.host.edge_index(u, v) {
            Some(idx) => !self.removed[idx],
            None => false,
        }
    }

    /// Surviving edges in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.host
            .edges()
            .iter()
            .enumerate()
            .filter(|(i, _)| !self.removed[*i])
            .map(|(_, e)| *e)
    }

    /// The masked edges as a set.
    pub fn removed_edges(&self) -> EdgeSet {
        self.host
            .edges()
            .iter()
            .enumerate()
            .filter(|(i, _)| self.removed[*i])
            .map(|(_, e)| *e)
            .collect()
    }

    /// Sizes of the connected components, ascending.
    pub fn component_sizes(&self) -> Vec<usize> {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut queue: Vec<u32> = Vec::new();
        let mut sizes = Vec::new();
        for start in 0..n as u32 {
            if seen[start as usize] {
                continue;
            }
            seen[start as usize] = true;
            queue.clear();
            queue.push(start);
            let mut size = 0usize;
            let mut head = 0;
            while head < queue.len() {
                let v = queue[head];
                head += 1;
                size += 1;
                for w in self.neighbors(v) {
                    if !seen[w as usize] {
                        seen[w as usize] = true;
                        queue.push(w);
                    }
                }
            }
            sizes.push(size);
        }
        sizes.sort_unstable();
        sizes
    }

    pub fn largest_component_size(&self) -> usize {
        self.component_sizes().last().copied().unwrap_or(0)
    }

    pub fn is_connected(&self) -> bool {
        self.largest_component_size() == self.vertex_count()
    }

    /// BFS distances from `start`; unreachable vertices get `u32::MAX`.
    pub(crate) fn bfs_distances(&self, start: u32) -> Vec<u32> {
        let mut dist = vec![u32::MAX; self.vertex_count()];
        dist[start as usize] = 0;
        let mut queue = vec![start];
        let mut head = 0;
        while head < queue.len() {
            let v = queue[head];
            head += 1;
            let d = dist[v as usize];
            for w in self.neighbors(v) {
                if dist[w as usize] == u32::MAX {
                    dist[w as usize] = d + 1;
                    queue.push(w);
                }
            }
        }
        dist
    }

    /// Smallest vertex at maximum BFS distance from `start` among reachable
    /// vertices, or `start` itself when it is isolated.
    pub(crate) fn farthest_from(&self, start: u32) -> u32 {
        let dist = self.bfs_distances(start);
        let mut best = start;
        let mut best_d = 0;
        for (v, &d) in dist.iter().enumerate() {
            if d != u32::MAX && d > best_d {
                best_d = d;
                best = v as u32;
            }
        }
        best
    }
}

#[cfg(test)]
mod tests {
    use crate::network::HLNetwork;

    #[test]
    fn full_view_matches_host() {
        let q = HLNetwork::hypercube(3).unwrap();
        let view = q.view();
        assert_eq!(view.edge_count(), 12);
        assert_eq!(view.min_degree(), 3);
        assert!(view.is_connected());
        assert_eq!(view.edges().count(), 12);
        assert!(view.removed_edges().is_empty());
    }

    #[test]
    fn mask_and_restore_round_trip() {
        let q = HLNetwork::hypercube(3).unwrap();
        let mut view = q.view();
        let idx = q.edge_index(0, 1).unwrap();
        view.remove_edge_index(idx);
        assert_eq!(view.edge_count(), 11);
        assert_eq!(view.degree(0), 2);
        assert_eq!(view.degree(1), 2);
        assert!(!view.has_edge(0, 1));
        assert!(!view.neighbors(0).any(|w| w == 1));
        // Masking again changes nothing.
        view.remove_edge_index(idx);
        assert_eq!(view.edge_count(), 11);
        view.restore_edge_index(idx);
        assert_eq!(view.edge_count(), 12);
        assert_eq!(view.degree(0), 3);
        assert!(view.has_edge(0, 1));
    }

    #[test]
    fn components_after_cutting_a_vertex_free() {
        let q = HLNetwork::hypercube(3).unwrap();
        // Cut vertex 0 loose entirely.
        let mut view = q.view();
        for (_, eid) in q.view().incident(0).collect::<Vec<_>>() {
            view.remove_edge_index(eid as usize);
        }
        assert_eq!(view.min_degree(), 0);
        assert_eq!(view.component_sizes(), vec![1, 7]);
        assert_eq!(view.largest_component_size(), 7);
        assert!(!view.is_connected());
    }

    #[test]
    fn removing_matching_edges_splits_into_the_two_halves() {
        // The cross matching is what holds the two halves together.
        for n in 1..=5usize {
            let g = HLNetwork::random(n, 99).unwrap();
            let mut view = g.view();
            let half = 1u32 << (n - 1);
            for (i, e) in g.edges().iter().enumerate() {
                if (e.lo() < half) != (e.hi() < half) {
                    view.remove_edge_index(i);
                }
            }
            let sizes = view.component_sizes();
            if n == 1 {
                assert_eq!(sizes, vec![1, 1]);
            } else {
                assert_eq!(sizes, vec![half as usize, half as usize]);
            }
        }
    }

    #[test]
    fn farthest_vertex_in_hypercube_is_the_antipode() {
        let q = HLNetwork::hypercube(4).unwrap();
        let view = q.view();
        assert_eq!(view.farthest_from(0), 15);
        assert_eq!(view.farthest_from(15), 0);
        let dist = view.bfs_distances(0);
        for v in 0..16u32 {
            assert_eq!(dist[v as usize], v.count_ones());
        }
    }
}
