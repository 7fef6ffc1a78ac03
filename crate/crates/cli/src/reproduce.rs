//! The reproduction matrix: every headline claim of the toolkit, checked
//! end to end. Each criterion is a standalone function returning a pass or
//! fail verdict with a one-line summary, so the `reproduce` subcommand and
//! the acceptance test suite share the exact same checks.
//!
//! All randomness is seeded; the matrix is deterministic across runs and
//! worker counts.

use hlnet_core::bounds::{
    brute_force_max_induced_edges, max_induced_edges, sweep_min_boundary, sweep_sparsity,
    sweep_threshold,
};
use hlnet_core::fault::{
    admissible, exact_fault_tolerance, extremal_witness, giant_component_check, SearchMode,
};
use hlnet_core::flow::max_edge_disjoint_paths;
use hlnet_core::{are_isomorphic, Budget, HLNetwork};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub struct CriterionOutcome {
    pub name: &'static str,
    pub pass: bool,
    pub details: String,
}

impl CriterionOutcome {
    fn pass(name: &'static str, details: String) -> Self {
        CriterionOutcome {
            name,
            pass: true,
            details,
        }
    }

    fn fail(name: &'static str, details: String) -> Self {
        CriterionOutcome {
            name,
            pass: false,
            details,
        }
    }
}

/// Runs the whole matrix in order.
pub fn run_all(budget: &Budget) -> Vec<CriterionOutcome> {
    vec![
        exact_tolerance_dimension_3(budget),
        exact_tolerance_dimension_4(budget),
        witness_sweep(),
        induced_edge_oracle(budget),
        arithmetic_sweeps(),
        giant_component(budget),
        flow_duality(),
        dimension_3_classification(),
    ]
}

/// Exhaustively computed tolerance at dimension 3: both members give 1.
pub fn exact_tolerance_dimension_3(budget: &Budget) -> CriterionOutcome {
    let name = "exact tolerance, dimension 3 (threshold 1)";
    let graphs = [
        ("qn:3", HLNetwork::hypercube(3)),
        ("cq3", Ok(HLNetwork::crossed_cube_3())),
    ];
    let mut parts = Vec::new();
    for (label, g) in graphs {
        let g = match g {
            Ok(g) => g,
            Err(e) => return CriterionOutcome::fail(name, format!("{label}: {e}")),
        };
        match exact_fault_tolerance(&g, 1, budget) {
            Ok(report) if report.value == 1 => parts.push(format!("{label} -> 1")),
            Ok(report) => {
                return CriterionOutcome::fail(
                    name,
                    format!("{label}: tolerance {} != expected 1", report.value),
                )
            }
            Err(e) => return CriterionOutcome::fail(name, format!("{label}: {e}")),
        }
    }
    CriterionOutcome::pass(name, parts.join(", "))
}

/// Exhaustively computed tolerance at dimension 4: thresholds 1 and 2 give
/// 2 and 4 on the hypercube and a seeded random member.
pub fn exact_tolerance_dimension_4(budget: &Budget) -> CriterionOutcome {
    let name = "exact tolerance, dimension 4 (thresholds 1 and 2)";
    let graphs = [
        ("qn:4", HLNetwork::hypercube(4)),
        ("random:4:1", HLNetwork::random(4, 1)),
    ];
    let mut parts = Vec::new();
    for (label, g) in graphs {
        let g = match g {
            Ok(g) => g,
            Err(e) => return CriterionOutcome::fail(name, format!("{label}: {e}")),
        };
        for (r, expected) in [(1u32, 2u64), (2, 4)] {
            match exact_fault_tolerance(&g, r, budget) {
                Ok(report) if report.value == expected => {
                    parts.push(format!("{label} r={r} -> {}", report.value))
                }
                Ok(report) => {
                    return CriterionOutcome::fail(
                        name,
                        format!(
                            "{label} r={r}: tolerance {} != expected {expected}",
                            report.value
                        ),
                    )
                }
                Err(e) => return CriterionOutcome::fail(name, format!("{label} r={r}: {e}")),
            }
        }
    }
    CriterionOutcome::pass(name, parts.join(", "))
}

/// Witness construction certifies across dimensions 3..=10 and every legal
/// threshold, on hypercubes and seeded random members: exact fault count,
/// admissibility, and exactly n-1 surviving edge-disjoint paths.
pub fn witness_sweep() -> CriterionOutcome {
    let name = "extremal witness sweep (n = 3..10, all thresholds)";
    let mut count = 0usize;
    for n in 3..=10usize {
        let graphs = [
            (format!("qn:{n}"), HLNetwork::hypercube(n)),
            (format!("random:{n}:1"), HLNetwork::random(n, 1)),
        ];
        for (label, g) in graphs {
            let g = match g {
                Ok(g) => g,
                Err(e) => return CriterionOutcome::fail(name, format!("{label}: {e}")),
            };
            for r in 1..=n - 2 {
                let w = match extremal_witness(&g, r) {
                    Ok(w) => w,
                    Err(e) => {
                        return CriterionOutcome::fail(name, format!("{label} r={r}: {e}"))
                    }
                };
                let expected = (1u64 << r) * (n - r) as u64 - n as u64 + 1;
                if w.fault_count != expected {
                    return CriterionOutcome::fail(
                        name,
                        format!("{label} r={r}: |F| = {} != {expected}", w.fault_count),
                    );
                }
                if w.flow_value as usize != n - 1 {
                    return CriterionOutcome::fail(
                        name,
                        format!("{label} r={r}: flow {} != {}", w.flow_value, n - 1),
                    );
                }
                match admissible(&g, &w.fault_set, r as u32) {
                    Ok(true) => {}
                    Ok(false) => {
                        return CriterionOutcome::fail(
                            name,
                            format!("{label} r={r}: witness faults violate the degree model"),
                        )
                    }
                    Err(e) => return CriterionOutcome::fail(name, format!("{label} r={r}: {e}")),
                }
                count += 1;
            }
        }
    }
    CriterionOutcome::pass(name, format!("{count} witnesses certified"))
}

/// The closed-form induced-edge maximum equals brute force for every subset
/// size on all four small test graphs.
pub fn induced_edge_oracle(budget: &Budget) -> CriterionOutcome {
    let name = "induced-edge maxima vs brute force (all n <= 4 graphs)";
    let graphs = [
        ("qn:3", HLNetwork::hypercube(3)),
        ("cq3", Ok(HLNetwork::crossed_cube_3())),
        ("qn:4", HLNetwork::hypercube(4)),
        ("random:4:1", HLNetwork::random(4, 1)),
    ];
    let mut checked = 0usize;
    for (label, g) in graphs {
        let g = match g {
            Ok(g) => g,
            Err(e) => return CriterionOutcome::fail(name, format!("{label}: {e}")),
        };
        for k in 1..=g.vertex_count() {
            let formula = max_induced_edges(k as u64);
            match brute_force_max_induced_edges(&g, k, budget) {
                Ok(brute) if brute == formula => checked += 1,
                Ok(brute) => {
                    return CriterionOutcome::fail(
                        name,
                        format!("{label} k={k}: brute force {brute} != formula {formula}"),
                    )
                }
                Err(e) => return CriterionOutcome::fail(name, format!("{label} k={k}: {e}")),
            }
        }
    }
    CriterionOutcome::pass(name, format!("{checked} subset sizes agree"))
}

/// The three arithmetic range sweeps hold for every dimension 3..=20.
pub fn arithmetic_sweeps() -> CriterionOutcome {
    let name = "boundary-bound sweeps (n = 3..20)";
    for n in 3..=20u32 {
        for (what, verdict) in [
            ("minimum", sweep_min_boundary(n)),
            ("sparsity", sweep_sparsity(n)),
            ("threshold", sweep_threshold(n)),
        ] {
            if !verdict.pass {
                return CriterionOutcome::fail(
                    name,
                    format!(
                        "{what} sweep fails at n={n}: {} violations",
                        verdict.violations.len()
                    ),
                );
            }
        }
    }
    CriterionOutcome::pass(name, "minimum, sparsity, threshold sweeps all hold".into())
}

/// Bounded fault sets leave a giant component: exhaustive at dimensions 3
/// and 4, sampled with 10^4 seeded draws at dimension 5.
pub fn giant_component(budget: &Budget) -> CriterionOutcome {
    let name = "giant-component guarantee";
    let mut parts = Vec::new();
    let sampled = SearchMode::Sampled {
        samples: 10_000,
        seed: 1,
    };
    let cases: Vec<(String, hlnet_core::Result<HLNetwork>, Vec<u32>, SearchMode)> = vec![
        ("qn:3".into(), HLNetwork::hypercube(3), vec![0, 1], SearchMode::Exhaustive),
        ("random:3:1".into(), HLNetwork::random(3, 1), vec![0, 1], SearchMode::Exhaustive),
        ("qn:4".into(), HLNetwork::hypercube(4), vec![0, 1], SearchMode::Exhaustive),
        ("random:4:1".into(), HLNetwork::random(4, 1), vec![0, 1], SearchMode::Exhaustive),
        ("qn:5".into(), HLNetwork::hypercube(5), vec![1, 2, 3], sampled),
        ("random:5:1".into(), HLNetwork::random(5, 1), vec![1, 2, 3], sampled),
    ];
    for (label, g, thresholds, mode) in cases {
        let g = match g {
            Ok(g) => g,
            Err(e) => return CriterionOutcome::fail(name, format!("{label}: {e}")),
        };
        for r in thresholds {
            match giant_component_check(&g, r, mode, budget) {
                Ok(report) if report.pass => {
                    parts.push(format!("{label} r={r} ({} sets)", report.sets_examined))
                }
                Ok(report) => {
                    return CriterionOutcome::fail(
                        name,
                        format!(
                            "{label} r={r}: component {} below required {}",
                            report
                                .violation
                                .map(|v| v.largest_component.to_string())
                                .unwrap_or_default(),
                            report.required_component
                        ),
                    )
                }
                Err(e) => return CriterionOutcome::fail(name, format!("{label} r={r}: {e}")),
            }
        }
    }
    CriterionOutcome::pass(name, parts.join(", "))
}

/// Flow results certify on random instances: as many paths as cut edges,
/// pairwise edge-disjoint, value at most the smaller endpoint degree, and
/// symmetric under swapping the endpoints.
pub fn flow_duality() -> CriterionOutcome {
    let name = "flow duality on 200 random instances";
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for i in 0..200u32 {
        let n = rng.random_range(2..=5usize);
        let g = match HLNetwork::random(n, rng.random::<u64>()) {
            Ok(g) => g,
            Err(e) => return CriterionOutcome::fail(name, format!("instance {i}: {e}")),
        };
        let fault_count = rng.random_range(0..=g.edge_count() / 4);
        let mut view = g.view();
        for idx in rand::seq::index::sample(&mut rng, g.edge_count(), fault_count) {
            view.remove_edge_index(idx);
        }
        let u = rng.random_range(0..g.vertex_count() as u32);
        let v = loop {
            let v = rng.random_range(0..g.vertex_count() as u32);
            if v != u {
                break v;
            }
        };
        let fail = |msg: String| {
            CriterionOutcome::fail(name, format!("instance {i} (n={n}, u={u}, v={v}): {msg}"))
        };
        let result = match max_edge_disjoint_paths(&view, u, v) {
            Ok(r) => r,
            Err(e) => return fail(e.to_string()),
        };
        if result.paths.len() != result.cut.len() {
            return fail(format!(
                "{} paths vs {} cut edges",
                result.paths.len(),
                result.cut.len()
            ));
        }
        if let Err(e) = result.certify(&view) {
            return fail(e.to_string());
        }
        if result.value as usize > view.degree(u).min(view.degree(v)) {
            return fail(format!("value {} exceeds the smaller degree", result.value));
        }
        match max_edge_disjoint_paths(&view, v, u) {
            Ok(reverse) if reverse.value == result.value => {}
            Ok(reverse) => {
                return fail(format!("asymmetric: {} vs {}", result.value, reverse.value))
            }
            Err(e) => return fail(e.to_string()),
        }
    }
    CriterionOutcome::pass(name, "all instances certified".into())
}

/// Composing two squares over all 24 matchings yields exactly two
/// isomorphism classes, one of them the dimension-3 hypercube.
pub fn dimension_3_classification() -> CriterionOutcome {
    let name = "dimension-3 classification (24 matchings, 2 classes)";
    let c4 = match HLNetwork::hypercube(2) {
        Ok(g) => g,
        Err(e) => return CriterionOutcome::fail(name, e.to_string()),
    };
    let q3 = match HLNetwork::hypercube(3) {
        Ok(g) => g,
        Err(e) => return CriterionOutcome::fail(name, e.to_string()),
    };
    let mut representatives: Vec<HLNetwork> = Vec::new();
    let mut class_sizes: Vec<usize> = Vec::new();
    for matching in permutations_of_four() {
        let g = match HLNetwork::compose(&c4, &c4, &matching) {
            Ok(g) => g,
            Err(e) => return CriterionOutcome::fail(name, e.to_string()),
        };
        let mut found = false;
        for (rep, size) in representatives.iter().zip(class_sizes.iter_mut()) {
            match are_isomorphic(rep, &g) {
                Ok(true) => {
                    *size += 1;
                    found = true;
                    break;
                }
                Ok(false) => {}
                Err(e) => return CriterionOutcome::fail(name, e.to_string()),
            }
        }
        if !found {
            representatives.push(g);
            class_sizes.push(1);
        }
    }
    if representatives.len() != 2 {
        return CriterionOutcome::fail(
            name,
            format!("{} isomorphism classes, expected 2", representatives.len()),
        );
    }
    let hypercube_classes = representatives
        .iter()
        .filter(|rep| are_isomorphic(rep, &q3).unwrap_or(false))
        .count();
    if hypercube_classes != 1 {
        return CriterionOutcome::fail(
            name,
            format!("{hypercube_classes} classes isomorphic to the hypercube, expected 1"),
        );
    }
    CriterionOutcome::pass(
        name,
        format!(
            "class sizes {} and {}",
            class_sizes[0], class_sizes[1]
        ),
    )
}

fn permutations_of_four() -> Vec<Vec<u32>> {
    let mut out = Vec::with_capacity(24);
    let mut pool: Vec<u32> = (0..4).collect();
    let mut cur = Vec::with_capacity(4);
    fn go(pool: &mut Vec<u32>, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if pool.is_empty() {
            out.push(cur.clone());
            return;
        }
        for i in 0..pool.len() {
            let x = pool.remove(i);
            cur.push(x);
            go(pool, cur, out);
            cur.pop();
            pool.insert(i, x);
        }
    }
    go(&mut pool, &mut cur, &mut out);
    out
}
