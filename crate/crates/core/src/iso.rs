use crate::error::{Error, Result};
use crate::network::HLNetwork;

const MAX_VERTICES: usize = 10;

/// Exact isomorphism test for small graphs (at most 10 vertices each).
///
/// Degree-multiset prefilter followed by backtracking over degree-compatible
/// vertex assignments, with adjacency kept as bitmasks. Ten vertices keeps
/// the worst case far below a millisecond, which is all the classification
/// of dimension-3 members needs.
pub fn are_isomorphic(a: &HLNetwork, b: &HLNetwork) -> Result<bool> {
    let n = a.vertex_count();
    if n > MAX_VERTICES || b.vertex_count() > MAX_VERTICES {
        return Err(Error::IsomorphismTooLarge {
            got: n.max(b.vertex_count()),
            max: MAX_VERTICES,
        });
    }
    if n != b.vertex_count() || a.edge_count() != b.edge_count() {
        return Ok(false);
    }

    let deg_a: Vec<usize> = (0..n as u32).map(|v| a.degree(v).unwrap()).collect();
    let deg_b: Vec<usize> = (0..n as u32).map(|v| b.degree(v).unwrap()).collect();
    let mut sorted_a = deg_a.clone();
    let mut sorted_b = deg_b.clone();
    sorted_a.sort_unstable();
    sorted_b.sort_unstable();
    if sorted_a != sorted_b {
        return Ok(false);
    }

    let adj_a = bitmask_adjacency(a);
    let adj_b = bitmask_adjacency(b);

    // Map vertices of `a` in order of descending degree so the most
    // constrained choices come first.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(deg_a[v]));

    let mut assigned = vec![usize::MAX; n];
    let mut used = vec![false; n];

    #[allow(clippy::too_many_arguments)]
    fn extend(
        pos: usize,
        order: &[usize],
        adj_a: &[u16],
        adj_b: &[u16],
        deg_a: &[usize],
        deg_b: &[usize],
        assigned: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        if pos == order.len() {
            return true;
        }
        let v = order[pos];
        for w in 0..adj_b.len() {
            if used[w] || deg_a[v] != deg_b[w] {
                continue;
            }
            // Every already-assigned neighbor of v must map to a neighbor of
            // w, and every assigned non-neighbor to a non-neighbor.
            let ok = order[..pos].iter().all(|&p| {
                let edge_a = adj_a[v] >> p & 1;
                let edge_b = adj_b[w] >> assigned[p] & 1;
                edge_a == edge_b
            });
            if !ok {
                continue;
            }
            assigned[v] = w;
            used[w] = true;
            if extend(pos + 1, order, adj_a, adj_b, deg_a, deg_b, assigned, used) {
                return true;
            }
            assigned[v] = usize::MAX;
            used[w] = false;
        }
        false
    }

    Ok(extend(
        0, &order, &adj_a, &adj_b, &deg_a, &deg_b, &mut assigned, &mut used,
    ))
}

fn bitmask_adjacency(g: &HLNetwork) -> Vec<u16> {
    let mut adj = vec![0u16; g.vertex_count()];
    for e in g.edges() {
        adj[e.lo() as usize] |= 1 << e.hi();
        adj[e.hi() as usize] |= 1 << e.lo();
    }
    adj
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::HLNetwork;

    #[test]
    fn graph_is_isomorphic_to_itself() {
        for n in 0..=3 {
            let q = HLNetwork::hypercube(n).unwrap();
            assert!(are_isomorphic(&q, &q).unwrap());
        }
    }

    #[test]
    fn relabeled_cycle_is_isomorphic() {
        // Two 4-cycles with different labelings: 0-1-3-2 and 0-2-3-1.
        let k1 = HLNetwork::single_vertex();
        let k2 = HLNetwork::compose(&k1, &k1, &[0]).unwrap();
        let c4a = HLNetwork::compose(&k2, &k2, &[0, 1]).unwrap();
        let c4b = HLNetwork::compose(&k2, &k2, &[1, 0]).unwrap();
        assert!(are_isomorphic(&c4a, &c4b).unwrap());
    }

    #[test]
    fn different_dimensions_are_not_isomorphic() {
        let q2 = HLNetwork::hypercube(2).unwrap();
        let q3 = HLNetwork::hypercube(3).unwrap();
        assert!(!are_isomorphic(&q2, &q3).unwrap());
    }

    #[test]
    fn size_limit_is_enforced() {
        let q4 = HLNetwork::hypercube(4).unwrap();
        assert!(matches!(
            are_isomorphic(&q4, &q4),
            Err(Error::IsomorphismTooLarge { .. })
        ));
    }
}
