//! Exact arithmetic for induced-edge maxima and edge-boundary lower bounds.
//!
//! For a set of `g` vertices inside a dimension-`n` member of the HL family,
//! the induced subgraph has at most `max_induced_edges(g)` edges, a quantity
//! that depends only on `g`. Consequently at least
//! `boundary_bound(n, g) = n*g - 2*max_induced_edges(g)` edges join the set
//! to the rest of the graph. The closed form is checked against a brute-force
//! oracle on concrete graphs, and the range sweeps confirm the inequalities
//! the fault-tolerance analysis rests on.

use serde::Serialize;

use crate::budget::{binomial_capped, Budget};
use crate::error::{Error, Result};
use crate::network::HLNetwork;

/// Binary decomposition `g = sum 2^(t_i)` with strictly decreasing exponents.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BinaryDecomposition {
    pub value: u64,
    /// Exponents of the set bits, descending.
    pub exponents: Vec<u32>,
}

pub fn decompose(g: u64) -> Result<BinaryDecomposition> {
    if g == 0 {
        return Err(Error::InvalidArgument(
            "binary decomposition needs g >= 1".into(),
        ));
    }
    let mut exponents = Vec::with_capacity(g.count_ones() as usize);
    for t in (0..u64::BITS).rev() {
        if g >> t & 1 == 1 {
            exponents.push(t);
        }
    }
    Ok(BinaryDecomposition {
        value: g,
        exponents,
    })
}

/// Maximum number of edges induced by any `g` vertices of a dimension-`n`
/// HL-network with `g <= 2^n`.
///
/// With `g = sum_i 2^(t_i)` (exponents descending), the maximum is
/// `sum_i t_i * 2^(t_i - 1) + sum_i i * 2^(t_i)`, attained by packing
/// subcubes of the given sizes next to each other; the `t_i = 0` term of the
/// first sum contributes 0. The value does not depend on `n` or on which
/// family member hosts the vertices.
pub fn max_induced_edges(g: u64) -> u64 {
    if g == 0 {
        return 0;
    }
    let decomposition = decompose(g).expect("g >= 1");
    let mut total: u64 = 0;
    for (i, &t) in decomposition.exponents.iter().enumerate() {
        if t > 0 {
            total += (t as u64) << (t - 1);
        }
        total += (i as u64) << t;
    }
    total
}

/// Lower bound on the number of edges leaving any `g`-vertex set in a
/// dimension-`n` member: `n*g - 2*max_induced_edges(g)`.
///
/// Panics when `g` is outside `1..=2^n`; callers validate user input first.
pub fn boundary_bound(n: u32, g: u64) -> i64 {
    assert!(g >= 1, "boundary bound needs g >= 1");
    assert!(g <= 1 << n, "boundary bound needs g <= 2^n (g={g}, n={n})");
    n as i64 * g as i64 - 2 * max_induced_edges(g) as i64
}

/// Exhaustive maximum of induced edge counts over all `k`-vertex subsets of
/// `g`. Independent of the closed form: plain subset enumeration with an
/// admissible pruning bound (current edges plus a cap on what the remaining
/// picks could add), so it can only be faster, never different.
pub fn brute_force_max_induced_edges(g: &HLNetwork, k: usize, budget: &Budget) -> Result<u64> {
    let n_vertices = g.vertex_count();
    if k == 0 || k > n_vertices {
        return Err(Error::InvalidArgument(format!(
            "subset size {k} out of range 1..={n_vertices}"
        )));
    }
    let count = binomial_capped(n_vertices as u64, k as u64, u64::MAX - 1);
    budget.admit(count, "brute-force induced-edge maximum")?;
    let mut meter = budget.start();

    let max_degree = (0..n_vertices as u32)
        .map(|v| g.degree(v).unwrap())
        .max()
        .unwrap_or(0);
    // cap[c] = most edges the picks after the c-th can still add.
    let mut cap = vec![0u64; k + 1];
    for c in (0..k).rev() {
        cap[c] = cap[c + 1] + max_degree.min(c) as u64;
    }

    struct Search<'g> {
        g: &'g HLNetwork,
        k: usize,
        in_set: Vec<bool>,
        cap: Vec<u64>,
        best: u64,
        visited: u64,
    }

    impl Search<'_> {
        fn recurse(&mut self, next: u32, chosen: usize, edges: u64) {
            if chosen == self.k {
                self.visited += 1;
                if edges > self.best {
                    self.best = edges;
                }
                return;
            }
            let remaining = self.k - chosen;
            let last_start = self.g.vertex_count() as u32 - remaining as u32;
            for v in next..=last_start {
                if edges + self.cap[chosen] <= self.best && self.best > 0 {
                    // No completion of this prefix can beat the incumbent.
                    return;
                }
                let gained = self
                    .g
                    .neighbors(v)
                    .unwrap()
                    .iter()
                    .filter(|&&w| self.in_set[w as usize])
                    .count() as u64;
                self.in_set[v as usize] = true;
                self.recurse(v + 1, chosen + 1, edges + gained);
                self.in_set[v as usize] = false;
            }
        }
    }

    let mut search = Search {
        g,
        k,
        in_set: vec![false; n_vertices],
        cap,
        best: 0,
        visited: 0,
    };
    search.recurse(0, 0, 0);
    meter.charge(search.visited.max(1))?;
    Ok(search.best)
}

/// One row of the bounds table.
#[derive(Debug, Clone, Serialize)]
pub struct BoundReport {
    pub n: u32,
    pub g: u64,
    pub max_edges: u64,
    pub boundary_bound: i64,
    /// Brute-force value when one was computed.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle_max_edges: Option<u64>,
    pub pass: bool,
}

pub fn bound_report(n: u32, g: u64, oracle_max_edges: Option<u64>) -> BoundReport {
    let max_edges = max_induced_edges(g);
    BoundReport {
        n,
        g,
        max_edges,
        boundary_bound: boundary_bound(n, g),
        oracle_max_edges,
        pass: oracle_max_edges.is_none_or(|o| o == max_edges),
    }
}

/// Verdict of a range sweep; `violations` lists every parameter where the
/// inequality failed.
#[derive(Debug, Clone, Serialize)]
pub struct SweepVerdict {
    pub n: u32,
    pub pass: bool,
    pub violations: Vec<SweepViolation>,
    /// Minimum of the swept quantity and where it was attained.
    pub min_value: i64,
    pub min_at: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepViolation {
    pub g: u64,
    /// Threshold exponent for the threshold sweep, 0 elsewhere.
    pub r: u32,
    pub value: i64,
    pub required: i64,
}

/// Checks `boundary_bound(n, g) >= n` for every `1 <= g <= 2^n - 1`.
pub fn sweep_min_boundary(n: u32) -> SweepVerdict {
    assert!(n >= 1 && n as usize <= crate::network::MAX_DIMENSION);
    let mut verdict = SweepVerdict {
        n,
        pass: true,
        violations: Vec::new(),
        min_value: i64::MAX,
        min_at: Vec::new(),
    };
    for g in 1..(1u64 << n) {
        let f = boundary_bound(n, g);
        if f < verdict.min_value {
            verdict.min_value = f;
            verdict.min_at.clear();
        }
        if f == verdict.min_value {
            verdict.min_at.push(g);
        }
        if f < n as i64 {
            verdict.pass = false;
            verdict.violations.push(SweepViolation {
                g,
                r: 0,
                value: f,
                required: n as i64,
            });
        }
    }
    verdict
}

/// Checks `(n-2)*g - 2*max_induced_edges(g) >= 0` for every
/// `1 <= g <= 2^(n-2)`.
pub fn sweep_sparsity(n: u32) -> SweepVerdict {
    assert!(n >= 2 && n as usize <= crate::network::MAX_DIMENSION);
    let mut verdict = SweepVerdict {
        n,
        pass: true,
        violations: Vec::new(),
        min_value: i64::MAX,
        min_at: Vec::new(),
    };
    for g in 1..=(1u64 << (n - 2)) {
        let value = (n as i64 - 2) * g as i64 - 2 * max_induced_edges(g) as i64;
        if value < verdict.min_value {
            verdict.min_value = value;
            verdict.min_at.clear();
        }
        if value == verdict.min_value {
            verdict.min_at.push(g);
        }
        if value < 0 {
            verdict.pass = false;
            verdict.violations.push(SweepViolation {
                g,
                r: 0,
                value,
                required: 0,
            });
        }
    }
    verdict
}

/// Checks `boundary_bound(n, g) >= boundary_bound(n, 2^r)` for every
/// `0 <= r <= n-1` and `2^r <= g <= 2^(n-1)`: over each dyadic tail the bound
/// is minimized at the power of two itself.
pub fn sweep_threshold(n: u32) -> SweepVerdict {
    assert!(n >= 1 && n as usize <= crate::network::MAX_DIMENSION);
    let mut verdict = SweepVerdict {
        n,
        pass: true,
        violations: Vec::new(),
        min_value: i64::MAX,
        min_at: Vec::new(),
    };
    for r in 0..n {
        let threshold = boundary_bound(n, 1 << r);
        for g in (1u64 << r)..=(1u64 << (n - 1)) {
            let f = boundary_bound(n, g);
            let slack = f - threshold;
            if slack < verdict.min_value {
                verdict.min_value = slack;
                verdict.min_at.clear();
            }
            if slack == verdict.min_value {
                verdict.min_at.push(g);
            }
            if f < threshold {
                verdict.pass = false;
                verdict.violations.push(SweepViolation {
                    g,
                    r,
                    value: f,
                    required: threshold,
                });
            }
        }
    }
    verdict.min_at.sort_unstable();
    verdict.min_at.dedup();
    verdict
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn decompose_examples() {
        assert_eq!(decompose(13).unwrap().exponents, vec![3, 2, 0]);
        assert_eq!(decompose(1).unwrap().exponents, vec![0]);
        assert_eq!(decompose(1 << 20).unwrap().exponents, vec![20]);
        assert!(decompose(0).is_err());
    }

    // Frozen values; the small ones are easy to confirm by hand on Q_3/Q_4
    // and the brute-force comparison below re-derives them from graphs.
    #[test]
    fn max_induced_edges_small_values() {
        let expected = [
            (1u64, 0u64),
            (2, 1),
            (3, 2),
            (4, 4),
            (5, 5),
            (6, 7),
            (7, 9),
            (8, 12),
            (13, 22),
            (16, 32),
        ];
        for (g, e) in expected {
            assert_eq!(max_induced_edges(g), e, "g = {g}");
        }
    }

    #[test]
    fn max_induced_edges_of_powers_of_two() {
        for k in 0..=20u64 {
            let expected = if k == 0 { 0 } else { k << (k - 1) };
            assert_eq!(max_induced_edges(1 << k), expected, "k = {k}");
        }
    }

    #[test]
    fn boundary_bound_examples() {
        assert_eq!(boundary_bound(3, 1), 3);
        assert_eq!(boundary_bound(3, 7), 3);
        assert_eq!(boundary_bound(4, 4), 8);
        for n in 1..=20u32 {
            for r in 0..=n {
                assert_eq!(
                    boundary_bound(n, 1 << r),
                    ((n - r) as i64) << r,
                    "n = {n}, r = {r}"
                );
            }
        }
    }

    #[test]
    fn increment_of_max_induced_edges_is_bounded_by_bit_length() {
        for g in 1..(1u64 << 16) {
            let step = max_induced_edges(g + 1) - max_induced_edges(g);
            let bit_length = 64 - g.leading_zeros() as u64;
            assert!(step <= bit_length, "g = {g}: step {step} > {bit_length}");
        }
    }

    #[test]
    fn brute_force_agrees_with_closed_form_on_q3() {
        let q3 = HLNetwork::hypercube(3).unwrap();
        let budget = Budget::default();
        for k in 1..=8usize {
            assert_eq!(
                brute_force_max_induced_edges(&q3, k, &budget).unwrap(),
                max_induced_edges(k as u64),
                "k = {k}"
            );
        }
    }

    #[test]
    fn brute_force_spot_checks() {
        let budget = Budget::default();
        let q4 = HLNetwork::hypercube(4).unwrap();
        assert_eq!(brute_force_max_induced_edges(&q4, 8, &budget).unwrap(), 12);
        assert_eq!(brute_force_max_induced_edges(&q4, 5, &budget).unwrap(), 5);
        let cq3 = HLNetwork::crossed_cube_3();
        assert_eq!(brute_force_max_induced_edges(&cq3, 4, &budget).unwrap(), 4);
    }

    #[test]
    fn brute_force_respects_budget_and_input_checks() {
        let q4 = HLNetwork::hypercube(4).unwrap();
        let tight = Budget::default().with_max_subsets(10);
        assert!(matches!(
            brute_force_max_induced_edges(&q4, 8, &tight),
            Err(Error::BudgetExceeded(_))
        ));
        let budget = Budget::default();
        assert!(brute_force_max_induced_edges(&q4, 0, &budget).is_err());
        assert!(brute_force_max_induced_edges(&q4, 17, &budget).is_err());
    }

    #[test]
    fn min_boundary_sweep_minimum_sits_at_the_ends() {
        let verdict = sweep_min_boundary(3);
        assert!(verdict.pass);
        assert!(verdict.violations.is_empty());
        assert_eq!(verdict.min_value, 3);
        assert_eq!(verdict.min_at, vec![1, 7]);
    }

    #[test]
    fn sweeps_pass_for_all_supported_dimensions() {
        for n in 3..=20u32 {
            assert!(sweep_min_boundary(n).pass, "min boundary sweep, n = {n}");
            assert!(sweep_sparsity(n).pass, "sparsity sweep, n = {n}");
            assert!(sweep_threshold(n).pass, "threshold sweep, n = {n}");
        }
    }

    #[test]
    fn threshold_sweep_minimum_is_zero_at_the_powers() {
        // The bound equals its threshold value exactly at g = 2^r.
        let verdict = sweep_threshold(5);
        assert!(verdict.pass);
        assert_eq!(verdict.min_value, 0);
        assert!(verdict.min_at.contains(&16));
    }

    #[test]
    fn dyadic_chain_identity() {
        // Stepping from 2^j to 2^(j+1) raises the bound by 2^j * (n - j - 2),
        // the closed-form recurrence behind the threshold sweep.
        for n in 1..=20u32 {
            for j in 0..n - 1 {
                let lhs = boundary_bound(n, 1 << (j + 1));
                let rhs = boundary_bound(n, 1 << j) + ((n as i64 - j as i64 - 2) << j);
                assert_eq!(lhs, rhs, "n = {n}, j = {j}");
            }
        }
    }

    proptest! {
        #[test]
        fn decompose_inverts(g in 1u64..(1 << 40)) {
            let d = decompose(g).unwrap();
            let sum: u64 = d.exponents.iter().map(|&t| 1u64 << t).sum();
            prop_assert_eq!(sum, g);
            for w in d.exponents.windows(2) {
                prop_assert!(w[0] > w[1]);
            }
        }

        #[test]
        fn max_induced_edges_is_monotone(g in 1u64..(1 << 20)) {
            prop_assert!(max_induced_edges(g) <= max_induced_edges(g + 1));
        }

        #[test]
        fn induced_edges_never_exceed_half_degree_sum(g in 1u64..(1 << 20)) {
            // g vertices of degree <= 20 carry at most 10g edges.
            prop_assert!(max_induced_edges(g) <= 10 * g);
        }
    }
}
