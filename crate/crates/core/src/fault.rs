//! Conditional edge-fault models and fault-set searches.
//!
//! A fault set `F` is admissible for threshold `r` when the surviving graph
//! keeps minimum degree at least `r`. The searches here answer, exhaustively
//! or by sampling, whether every admissible fault set up to a given size
//! preserves strong Menger edge connectivity, construct the extremal fault
//! sets that break it with one fault more, and compute the exact tolerance
//! for small networks by climbing fault-set sizes.
//!
//! Exhaustive scans enumerate `k`-subsets of edge indices in lexicographic
//! order with incremental residual-degree pruning. Work is split across
//! workers by first edge index; results merge by taking the smallest range
//! with a hit and counting only examined sets from ranges up to it, so the
//! outcome (including the examined count) does not depend on worker count or
//! scheduling.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::budget::{binomial_capped, binomial_sum_capped, Budget};
use crate::edge::{Edge, EdgeSet};
use crate::error::{Error, Result};
use crate::flow::{self, FlowScratch, PairCounterexample};
use crate::network::HLNetwork;
use crate::view::GraphView;

/// Fault model: at most `max_faults` edge faults, every vertex keeping at
/// least `min_residual_degree` surviving edges.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ConditionalFaultModel {
    pub min_residual_degree: u32,
    pub max_faults: u64,
}

/// How a search covers the space of admissible fault sets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum SearchMode {
    Exhaustive,
    Sampled { samples: u64, seed: u64 },
}

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum SearchVerdict {
    /// Every examined admissible fault set preserved the property.
    Holds,
    /// A fault set that breaks the property, together with the starved pair.
    Refuted {
        fault_set: EdgeSet,
        counterexample: PairCounterexample,
    },
    /// A breaking-set search exhausted its scope without finding one.
    NotFound,
}

impl SearchVerdict {
    pub fn is_refuted(&self) -> bool {
        matches!(self, SearchVerdict::Refuted { .. })
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SearchResult {
    pub model: ConditionalFaultModel,
    pub mode: SearchMode,
    pub verdict: SearchVerdict,
    /// Admissible fault sets actually tested.
    pub sets_examined: u64,
    /// Sampled mode only: the rejection cap was hit before the requested
    /// number of admissible samples was drawn.
    pub starved: bool,
}

/// Is the surviving graph's minimum degree at least `r` after removing
/// `faults`? Every fault must be an edge of the graph.
pub fn admissible(g: &HLNetwork, faults: &EdgeSet, r: u32) -> Result<bool> {
    let view = g.delete_edges(faults)?;
    Ok(view.min_degree() >= r as usize)
}

/// Expected fault tolerance for the conditional model, where one is known.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Expected {
    /// `2^r * (n - r) - n`, exact for `n >= 3` and `1 <= r <= n - 2`.
    Exact { value: u64 },
    /// Published reference value, not verified by this toolkit: `n - 2` for
    /// the unconditional model (`r = 0`) at `n >= 4`.
    Reference { value: u64 },
    /// No established value (the unconditional model at `n = 3`).
    Unknown,
}

/// The expected conditional edge-fault tolerance of a dimension-`n` member.
///
/// Thresholds `r >= n - 1` are outside every supported model and rejected.
pub fn expected_tolerance(n: u32, r: u32) -> Result<Expected> {
    if n < 2 || r > n - 2 {
        return Err(Error::InvalidArgument(format!(
            "fault model threshold r = {r} is out of range 0..={} for dimension {n}",
            n.saturating_sub(2)
        )));
    }
    if r == 0 {
        return Ok(if n >= 4 {
            Expected::Reference {
                value: (n - 2) as u64,
            }
        } else {
            Expected::Unknown
        });
    }
    Ok(Expected::Exact {
        value: (1u64 << r) * (n - r) as u64 - n as u64,
    })
}

fn validate_model(g: &HLNetwork, r: u32) -> Result<()> {
    let n = g.dimension() as u32;
    if n < 2 || r > n - 2 {
        return Err(Error::InvalidArgument(format!(
            "fault model threshold r = {r} is out of range 0..={} for dimension {n}",
            n.saturating_sub(2)
        )));
    }
    Ok(())
}

fn check_deadline(deadline: Option<Instant>) -> Result<()> {
    if let Some(d) = deadline {
        if Instant::now() > d {
            return Err(Error::BudgetExceeded(
                "wall-clock guard hit during fault-set search".into(),
            ));
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Exhaustive enumeration core
// ---------------------------------------------------------------------------

struct ScanHit<V> {
    combo: Vec<u32>,
    violation: V,
}

struct RangeOut<V> {
    examined: u64,
    hit: Option<ScanHit<V>>,
    /// A smaller range reported a hit, so this range stopped early; its
    /// partial count is discarded by the merge.
    aborted: bool,
}

struct ScanOutcome<V> {
    hit: Option<ScanHit<V>>,
    examined: u64,
}

/// Depth-first lexicographic extension of the current prefix. The view
/// already has the prefix masked; `stack` holds the chosen edge indices.
#[allow(clippy::too_many_arguments)]
fn extend_prefix<V, S, FC>(
    view: &mut GraphView,
    scratch: &mut S,
    stack: &mut Vec<u32>,
    next: usize,
    k: usize,
    min_residual: Option<u32>,
    check: &FC,
    deadline: Option<Instant>,
    abort: Option<(&AtomicUsize, usize)>,
    out: &mut RangeOut<V>,
) -> Result<()>
where
    FC: Fn(&mut GraphView, &mut S) -> Option<V>,
{
    if stack.len() == k {
        out.examined += 1;
        if out.examined & 0x3ff == 0 {
            check_deadline(deadline)?;
            if let Some((best, first)) = abort {
                if best.load(Ordering::Relaxed) < first {
                    out.aborted = true;
                    return Ok(());
                }
            }
        }
        if let Some(v) = check(view, scratch) {
            out.hit = Some(ScanHit {
                combo: stack.clone(),
                violation: v,
            });
        }
        return Ok(());
    }
    let e_count = view.host().edge_count();
    let remaining = k - stack.len();
    for idx in next..=e_count - remaining {
        let ok = match min_residual {
            // Masking drops both endpoint degrees by one; a prefix that
            // already pins an endpoint at the threshold cannot be extended
            // through it, and no superset recovers.
            Some(r) => {
                let e = view.host().edge_at(idx);
                view.degree(e.lo()) > r as usize && view.degree(e.hi()) > r as usize
            }
            None => true,
        };
        if ok {
            view.remove_edge_index(idx);
            stack.push(idx as u32);
            let res = extend_prefix(
                view,
                scratch,
                stack,
                idx + 1,
                k,
                min_residual,
                check,
                deadline,
                abort,
                out,
            );
            stack.pop();
            view.restore_edge_index(idx);
            res?;
            if out.hit.is_some() || out.aborted {
                return Ok(());
            }
        }
    }
    Ok(())
}

/// Scans every admissible `k`-subset of edges, in lexicographic order,
/// returning the first hit (lexicographically smallest) and the number of
/// admissible sets examined up to and including it.
fn scan_size<V, S, FS, FC>(
    g: &HLNetwork,
    k: usize,
    min_residual: Option<u32>,
    deadline: Option<Instant>,
    make_scratch: &FS,
    check: &FC,
) -> Result<ScanOutcome<V>>
where
    V: Send,
    FS: Fn() -> S + Sync,
    FC: Fn(&mut GraphView, &mut S) -> Option<V> + Sync,
{
    let e_count = g.edge_count();
    if k > e_count {
        return Ok(ScanOutcome {
            hit: None,
            examined: 0,
        });
    }
    if k == 0 {
        let mut view = g.view();
        if min_residual.is_none_or(|r| view.min_degree() >= r as usize) {
            let mut scratch = make_scratch();
            let hit = check(&mut view, &mut scratch).map(|violation| ScanHit {
                combo: Vec::new(),
                violation,
            });
            return Ok(ScanOutcome { hit, examined: 1 });
        }
        return Ok(ScanOutcome {
            hit: None,
            examined: 0,
        });
    }

    let best_range = AtomicUsize::new(usize::MAX);
    let ranges: Vec<Result<RangeOut<V>>> = (0..=e_count - k)
        .into_par_iter()
        .map(|first| {
            let mut out = RangeOut {
                examined: 0,
                hit: None,
                aborted: false,
            };
            if best_range.load(Ordering::Relaxed) < first {
                out.aborted = true;
                return Ok(out);
            }
            let mut view = g.view();
            if let Some(r) = min_residual {
                let e = g.edge_at(first);
                if view.degree(e.lo()) <= r as usize || view.degree(e.hi()) <= r as usize {
                    return Ok(out);
                }
            }
            let mut scratch = make_scratch();
            view.remove_edge_index(first);
            let mut stack = vec![first as u32];
            extend_prefix(
                &mut view,
                &mut scratch,
                &mut stack,
                first + 1,
                k,
                min_residual,
                check,
                deadline,
                Some((&best_range, first)),
                &mut out,
            )?;
            if out.hit.is_some() {
                best_range.fetch_min(first, Ordering::Relaxed);
            }
            Ok(out)
        })
        .collect();

    // Only ranges up to the winning one count. A range below the winner can
    // never abort (aborting needs a hit in a still smaller range, which
    // would itself be the winner), so those always run to completion and
    // the totals are reproducible at any worker count.
    let mut examined = 0u64;
    let mut hit = None;
    for range in ranges {
        let range = range?;
        examined += range.examined;
        if range.hit.is_some() {
            hit = range.hit;
            break;
        }
    }
    Ok(ScanOutcome { hit, examined })
}

fn combo_to_edge_set(g: &HLNetwork, combo: &[u32]) -> EdgeSet {
    combo.iter().map(|&i| g.edge_at(i as usize)).collect()
}

fn sm_lambda_check(view: &mut GraphView, scratch: &mut FlowScratch) -> Option<PairCounterexample> {
    let report = flow::check_sm_lambda(view, scratch);
    report.counterexample.filter(|_| !report.verdict)
}

// ---------------------------------------------------------------------------
// Sampling core
// ---------------------------------------------------------------------------

/// Cumulative weights proportional to `C(e, k)` for `k` in `0..=m`, so a
/// size drawn from them makes subsets of size at most `m` uniform.
fn size_weights(e_count: usize, m: u64) -> Vec<f64> {
    let mut ln_c = Vec::with_capacity(m as usize + 1);
    let mut acc = 0.0f64;
    ln_c.push(0.0);
    for k in 1..=m.min(e_count as u64) {
        // ln C(e, k) = ln C(e, k-1) + ln(e - k + 1) - ln k
        acc += ((e_count as u64 - k + 1) as f64).ln() - (k as f64).ln();
        ln_c.push(acc);
    }
    let peak = ln_c.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let mut cumulative = Vec::with_capacity(ln_c.len());
    let mut total = 0.0;
    for lc in ln_c {
        total += (lc - peak).exp();
        cumulative.push(total);
    }
    cumulative
}

fn draw_size(rng: &mut ChaCha8Rng, cumulative: &[f64]) -> usize {
    use rand::Rng;
    let x = rng.random::<f64>() * cumulative.last().copied().unwrap_or(1.0);
    cumulative.iter().position(|&c| x <= c).unwrap_or(cumulative.len() - 1)
}

fn draw_combo(rng: &mut ChaCha8Rng, e_count: usize, k: usize) -> Vec<u32> {
    let mut combo: Vec<u32> = rand::seq::index::sample(rng, e_count, k)
        .into_iter()
        .map(|i| i as u32)
        .collect();
    combo.sort_unstable();
    combo
}

// ---------------------------------------------------------------------------
// Searches
// ---------------------------------------------------------------------------

/// Verifies that every admissible fault set of size at most `m` keeps the
/// graph strongly Menger edge connected, exhaustively or on a uniform sample.
pub fn verify_lower_bound(
    g: &HLNetwork,
    r: u32,
    m: u64,
    mode: SearchMode,
    budget: &Budget,
) -> Result<SearchResult> {
    validate_model(g, r)?;
    let model = ConditionalFaultModel {
        min_residual_degree: r,
        max_faults: m,
    };
    let deadline = budget.max_wall.map(|d| Instant::now() + d);
    let make_scratch = FlowScratch::new;

    match mode {
        SearchMode::Exhaustive => {
            let total = binomial_sum_capped(g.edge_count() as u64, m, budget.max_subsets);
            budget.admit(total, "exhaustive lower-bound verification")?;
            let mut examined = 0u64;
            for k in 0..=m.min(g.edge_count() as u64) {
                let outcome = scan_size(
                    g,
                    k as usize,
                    Some(r),
                    deadline,
                    &make_scratch,
                    &sm_lambda_check,
                )?;
                examined += outcome.examined;
                if let Some(hit) = outcome.hit {
                    return Ok(SearchResult {
                        model,
                        mode,
                        verdict: SearchVerdict::Refuted {
                            fault_set: combo_to_edge_set(g, &hit.combo),
                            counterexample: hit.violation,
                        },
                        sets_examined: examined,
                        starved: false,
                    });
                }
            }
            Ok(SearchResult {
                model,
                mode,
                verdict: SearchVerdict::Holds,
                sets_examined: examined,
                starved: false,
            })
        }
        SearchMode::Sampled { samples, seed } => {
            budget.admit(samples, "sampled lower-bound verification")?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let cumulative = size_weights(g.edge_count(), m);
            let mut scratch = FlowScratch::new();
            let mut drawn = 0u64;
            let mut attempts = 0u64;
            let cap = samples.saturating_mul(100);
            while drawn < samples && attempts < cap {
                attempts += 1;
                if attempts & 0xff == 0 {
                    check_deadline(deadline)?;
                }
                let k = draw_size(&mut rng, &cumulative);
                let combo = draw_combo(&mut rng, g.edge_count(), k);
                let mut view = g.view();
                for &idx in &combo {
                    view.remove_edge_index(idx as usize);
                }
                if view.min_degree() < r as usize {
                    continue;
                }
                drawn += 1;
                if let Some(ce) = sm_lambda_check(&mut view, &mut scratch) {
                    return Ok(SearchResult {
                        model,
                        mode,
                        verdict: SearchVerdict::Refuted {
                            fault_set: combo_to_edge_set(g, &combo),
                            counterexample: ce,
                        },
                        sets_examined: drawn,
                        starved: false,
                    });
                }
            }
            Ok(SearchResult {
                model,
                mode,
                verdict: SearchVerdict::Holds,
                sets_examined: drawn,
                starved: drawn < samples,
            })
        }
    }
}

/// Searches for an admissible fault set of size at most `m` that breaks the
/// strong Menger property. Tries the extremal construction first; when that
/// does not apply (or does not fit `m`) falls back to exhaustive scanning in
/// lexicographic order.
///
/// `m` defaults to one more than the exact expected tolerance, which is only
/// defined for `1 <= r <= n - 2`; other thresholds need an explicit `m`.
pub fn find_breaking_fault_set(
    g: &HLNetwork,
    r: u32,
    m: Option<u64>,
    budget: &Budget,
) -> Result<SearchResult> {
    validate_model(g, r)?;
    let m = match (m, expected_tolerance(g.dimension() as u32, r)?) {
        (Some(m), _) => m,
        (None, Expected::Exact { value }) => value + 1,
        (None, _) => {
            return Err(Error::InvalidArgument(format!(
                "no default fault budget for r = {r}; pass m explicitly"
            )))
        }
    };
    let model = ConditionalFaultModel {
        min_residual_degree: r,
        max_faults: m,
    };

    if r >= 1 {
        if let Ok(witness) = extremal_witness(g, r as usize) {
            if witness.fault_set.len() as u64 <= m {
                let n = g.dimension() as u32;
                return Ok(SearchResult {
                    model,
                    mode: SearchMode::Exhaustive,
                    verdict: SearchVerdict::Refuted {
                        counterexample: PairCounterexample {
                            u: witness.u.min(witness.v),
                            v: witness.u.max(witness.v),
                            flow: witness.flow_value,
                            required: n,
                        },
                        fault_set: witness.fault_set,
                    },
                    sets_examined: 1,
                    starved: false,
                });
            }
        }
    }

    let total = binomial_sum_capped(g.edge_count() as u64, m, budget.max_subsets);
    budget.admit(total, "breaking fault-set search")?;
    let deadline = budget.max_wall.map(|d| Instant::now() + d);
    let make_scratch = FlowScratch::new;
    let mut examined = 0u64;
    for k in 0..=m.min(g.edge_count() as u64) {
        let outcome = scan_size(
            g,
            k as usize,
            Some(r),
            deadline,
            &make_scratch,
            &sm_lambda_check,
        )?;
        examined += outcome.examined;
        if let Some(hit) = outcome.hit {
            return Ok(SearchResult {
                model,
                mode: SearchMode::Exhaustive,
                verdict: SearchVerdict::Refuted {
                    fault_set: combo_to_edge_set(g, &hit.combo),
                    counterexample: hit.violation,
                },
                sets_examined: examined,
                starved: false,
            });
        }
    }
    Ok(SearchResult {
        model,
        mode: SearchMode::Exhaustive,
        verdict: SearchVerdict::NotFound,
        sets_examined: examined,
        starved: false,
    })
}

/// Exact conditional edge-fault tolerance of a small network: the largest
/// `m` such that every admissible fault set of size at most `m` preserves
/// strong Menger edge connectivity, computed by climbing fault-set sizes
/// until the first breaking set appears.
pub fn exact_fault_tolerance(g: &HLNetwork, r: u32, budget: &Budget) -> Result<ToleranceReport> {
    validate_model(g, r)?;
    let deadline = budget.max_wall.map(|d| Instant::now() + d);
    let make_scratch = FlowScratch::new;
    let e_count = g.edge_count() as u64;
    let mut cumulative = 0u64;
    let mut examined = 0u64;
    for k in 0..=e_count {
        cumulative = cumulative.saturating_add(binomial_capped(
            e_count,
            k,
            budget.max_subsets,
        ));
        budget.admit(cumulative, "exact tolerance climb")?;
        let outcome = scan_size(
            g,
            k as usize,
            Some(r),
            deadline,
            &make_scratch,
            &sm_lambda_check,
        )?;
        examined += outcome.examined;
        if let Some(hit) = outcome.hit {
            if k == 0 {
                return Err(Error::InvalidArgument(
                    "graph is not strongly Menger edge connected even without faults".into(),
                ));
            }
            return Ok(ToleranceReport {
                r,
                value: k - 1,
                breaking_fault_set: Some(combo_to_edge_set(g, &hit.combo)),
                counterexample: Some(hit.violation),
                sets_examined: examined,
            });
        }
    }
    Ok(ToleranceReport {
        r,
        value: e_count,
        breaking_fault_set: None,
        counterexample: None,
        sets_examined: examined,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct ToleranceReport {
    pub r: u32,
    /// Largest fault count below which every admissible set is safe.
    pub value: u64,
    /// The lexicographically smallest breaking set of size `value + 1`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub breaking_fault_set: Option<EdgeSet>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<PairCounterexample>,
    pub sets_examined: u64,
}

// ---------------------------------------------------------------------------
// Extremal witness
// ---------------------------------------------------------------------------

/// The extremal fault set showing the exact tolerance is tight: one fault
/// beyond the bound, arranged around a dimension-`r` subcube, starves a
/// full-degree vertex pair down to `n - 1` edge-disjoint paths.
///
/// Construction: take the subcube on `0..2^r`, keep every outside edge of
/// `u = 0`, keep the smallest outside edge of each of the first `r - 1`
/// subcube neighbors of `u`, and cut every other edge leaving the subcube.
/// `v` is the smallest vertex with no neighbor in the subcube.
#[derive(Debug, Clone, Serialize)]
pub struct ExtremalWitness {
    pub subcube_level: u32,
    pub u: u32,
    pub v: u32,
    /// The preserved outside edges of the first `r - 1` subcube neighbors.
    pub kept_edges: Vec<Edge>,
    pub fault_set: EdgeSet,
    pub fault_count: u64,
    /// Edge-disjoint `u`-`v` paths surviving the faults: exactly `n - 1`.
    pub flow_value: u32,
}

pub fn extremal_witness(g: &HLNetwork, r: usize) -> Result<ExtremalWitness> {
    let n = g.dimension();
    if n < 3 {
        return Err(Error::InvalidArgument(format!(
            "extremal construction needs dimension >= 3, got {n}"
        )));
    }
    if r < 1 || r > n - 2 {
        return Err(Error::InvalidArgument(format!(
            "extremal construction needs 1 <= r <= {}, got {r}",
            n - 2
        )));
    }
    let sub = g.subcube(r)?;
    let u: u32 = 0;

    let inside_neighbors: Vec<u32> = g
        .neighbors(u)?
        .iter()
        .copied()
        .filter(|&w| sub.contains(w))
        .collect();
    if inside_neighbors.len() != r {
        return Err(Error::WitnessInvariant(format!(
            "vertex {u} has {} subcube neighbors, expected {r}",
            inside_neighbors.len()
        )));
    }

    // Preserve the smallest outside edge of each of the first r-1 subcube
    // neighbors (ascending ids; neighbors lists are sorted).
    let mut kept_edges = Vec::with_capacity(r - 1);
    for &ui in inside_neighbors.iter().take(r - 1) {
        let outside = g
            .neighbors(ui)?
            .iter()
            .copied()
            .find(|&w| !sub.contains(w))
            .ok_or_else(|| {
                Error::WitnessInvariant(format!("vertex {ui} has no edge leaving the subcube"))
            })?;
        kept_edges.push(Edge::new(ui, outside));
    }

    let mut fault_set = EdgeSet::new();
    for x in sub.vertices().skip(1) {
        for &w in g.neighbors(x)? {
            if !sub.contains(w) {
                fault_set.insert(Edge::new(x, w));
            }
        }
    }
    for e in &kept_edges {
        fault_set.remove(e);
    }

    let v = (0..g.vertex_count() as u32)
        .find(|&cand| {
            !sub.contains(cand)
                && g.neighbors(cand)
                    .map(|ns| ns.iter().all(|&w| !sub.contains(w)))
                    .unwrap_or(false)
        })
        .ok_or_else(|| {
            Error::WitnessInvariant("no vertex outside the subcube's neighborhood".into())
        })?;

    let view = g.delete_edges(&fault_set)?;
    let flow = flow::max_edge_disjoint_paths(&view, u, v)?;
    flow.certify(&view)?;

    let witness = ExtremalWitness {
        subcube_level: r as u32,
        u,
        v,
        kept_edges,
        fault_count: fault_set.len() as u64,
        fault_set,
        flow_value: flow.value,
    };
    certify_witness(g, &witness)?;
    Ok(witness)
}

/// Re-derives every structural claim of the witness from scratch.
fn certify_witness(g: &HLNetwork, w: &ExtremalWitness) -> Result<()> {
    let n = g.dimension();
    let r = w.subcube_level as usize;
    let fail = |msg: String| Err(Error::WitnessInvariant(msg));

    let expected = (1u64 << r) * (n - r) as u64 - n as u64 + 1;
    let expected_alt = ((1u64 << r) - 1) * (n - r) as u64 - (r as u64 - 1);
    if expected != expected_alt {
        return fail(format!(
            "fault-count identities disagree: {expected} vs {expected_alt}"
        ));
    }
    if w.fault_count != expected || w.fault_set.len() as u64 != expected {
        return fail(format!(
            "fault set has {} edges, expected {expected}",
            w.fault_set.len()
        ));
    }
    if w.kept_edges.len() != r - 1 {
        return fail(format!(
            "{} kept edges, expected {}",
            w.kept_edges.len(),
            r - 1
        ));
    }

    let sub = g.subcube(r)?;
    let view = g.delete_edges(&w.fault_set)?;
    if view.min_degree() < r {
        return fail(format!(
            "surviving minimum degree {} is below the threshold {r}",
            view.min_degree()
        ));
    }
    if view.degree(w.u) != n || view.degree(w.v) != n {
        return fail(format!(
            "endpoint degrees {} and {} should both be {n}",
            view.degree(w.u),
            view.degree(w.v)
        ));
    }
    if g.neighbors(w.v)?.iter().any(|&x| sub.contains(x)) {
        return fail(format!("vertex {} touches the subcube", w.v));
    }

    // Exact residual degrees inside the subcube: u keeps everything, the
    // first r-1 neighbors keep one outside edge, the rest keep only their
    // r subcube edges.
    let kept_inside: Vec<u32> = w.kept_edges.iter().map(|e| e.lo()).collect();
    for x in sub.vertices() {
        let expected_degree = if x == w.u {
            n
        } else if kept_inside.contains(&x) {
            r + 1
        } else {
            r
        };
        if view.degree(x) != expected_degree {
            return fail(format!(
                "subcube vertex {x} has residual degree {}, expected {expected_degree}",
                view.degree(x)
            ));
        }
    }

    if w.flow_value as usize != n - 1 {
        return fail(format!(
            "{} edge-disjoint paths between {} and {}, expected {}",
            w.flow_value,
            w.u,
            w.v,
            n - 1
        ));
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Giant component check
// ---------------------------------------------------------------------------

/// After removing fewer than `2^r * (n - r)` edges (no admissibility
/// condition), one component must still hold all but at most `2^r - 1`
/// vertices.
#[derive(Debug, Clone, Serialize)]
pub struct GiantComponentReport {
    pub n: u32,
    pub r: u32,
    /// Largest fault-set size covered: `2^r * (n - r) - 1`.
    pub max_faults: u64,
    /// Minimum size the largest component must keep: `2^n - 2^r + 1`.
    pub required_component: u64,
    pub mode: SearchMode,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub violation: Option<ComponentViolation>,
    pub sets_examined: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct ComponentViolation {
    pub fault_set: EdgeSet,
    pub largest_component: u64,
}

pub fn giant_component_check(
    g: &HLNetwork,
    r: u32,
    mode: SearchMode,
    budget: &Budget,
) -> Result<GiantComponentReport> {
    validate_model(g, r)?;
    let n = g.dimension() as u32;
    let max_faults = (1u64 << r) * (n - r) as u64 - 1;
    let required = (1u64 << n) - (1u64 << r) + 1;
    let deadline = budget.max_wall.map(|d| Instant::now() + d);

    let check = |view: &mut GraphView, _: &mut ()| -> Option<u64> {
        let largest = view.largest_component_size() as u64;
        (largest < required).then_some(largest)
    };
    let make_scratch = || ();

    match mode {
        SearchMode::Exhaustive => {
            let total = binomial_sum_capped(g.edge_count() as u64, max_faults, budget.max_subsets);
            budget.admit(total, "exhaustive giant-component check")?;
            let mut examined = 0u64;
            for k in 0..=max_faults.min(g.edge_count() as u64) {
                let outcome = scan_size(g, k as usize, None, deadline, &make_scratch, &check)?;
                examined += outcome.examined;
                if let Some(hit) = outcome.hit {
                    return Ok(GiantComponentReport {
                        n,
                        r,
                        max_faults,
                        required_component: required,
                        mode,
                        pass: false,
                        violation: Some(ComponentViolation {
                            fault_set: combo_to_edge_set(g, &hit.combo),
                            largest_component: hit.violation,
                        }),
                        sets_examined: examined,
                    });
                }
            }
            Ok(GiantComponentReport {
                n,
                r,
                max_faults,
                required_component: required,
                mode,
                pass: true,
                violation: None,
                sets_examined: examined,
            })
        }
        SearchMode::Sampled { samples, seed } => {
            budget.admit(samples, "sampled giant-component check")?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let cumulative = size_weights(g.edge_count(), max_faults);
            let mut examined = 0u64;
            for _ in 0..samples {
                if examined & 0xff == 0 {
                    check_deadline(deadline)?;
                }
                let k = draw_size(&mut rng, &cumulative);
                let combo = draw_combo(&mut rng, g.edge_count(), k);
                let mut view = g.view();
                for &idx in &combo {
                    view.remove_edge_index(idx as usize);
                }
                examined += 1;
                if let Some(largest) = check(&mut view, &mut ()) {
                    return Ok(GiantComponentReport {
                        n,
                        r,
                        max_faults,
                        required_component: required,
                        mode,
                        pass: false,
                        violation: Some(ComponentViolation {
                            fault_set: combo_to_edge_set(g, &combo),
                            largest_component: largest,
                        }),
                        sets_examined: examined,
                    });
                }
            }
            Ok(GiantComponentReport {
                n,
                r,
                max_faults,
                required_component: required,
                mode,
                pass: true,
                violation: None,
                sets_examined: examined,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flow::is_sm_lambda;

    #[test]
    fn expected_tolerance_table() {
        assert_eq!(expected_tolerance(3, 1).unwrap(), Expected::Exact { value: 1 });
        assert_eq!(expected_tolerance(4, 1).unwrap(), Expected::Exact { value: 2 });
        assert_eq!(expected_tolerance(4, 2).unwrap(), Expected::Exact { value: 4 });
        assert_eq!(
            expected_tolerance(10, 8).unwrap(),
            Expected::Exact { value: 502 }
        );
        assert_eq!(
            expected_tolerance(4, 0).unwrap(),
            Expected::Reference { value: 2 }
        );
        assert_eq!(expected_tolerance(3, 0).unwrap(), Expected::Unknown);
        assert!(expected_tolerance(3, 2).is_err());
        assert!(expected_tolerance(5, 4).is_err());
    }

    #[test]
    fn admissibility_is_a_degree_check() {
        let q3 = HLNetwork::hypercube(3).unwrap();
        let faults: EdgeSet = [Edge::new(0, 1), Edge::new(0, 2)].into_iter().collect();
        assert!(admissible(&q3, &faults, 1).unwrap());
        assert!(!admissible(&q3, &faults, 2).unwrap());
        let missing: EdgeSet = [Edge::new(0, 7)].into_iter().collect();
        assert!(admissible(&q3, &missing, 1).is_err());
    }

    #[test]
    fn witness_for_q3_matches_hand_construction() {
        let q3 = HLNetwork::hypercube(3).unwrap();
        let w = extremal_witness(&q3, 1).unwrap();
        assert_eq!(w.u, 0);
        assert_eq!(w.v, 6);
        assert_eq!(w.fault_count, 2);
        assert!(w.kept_edges.is_empty());
        let expected: EdgeSet = [Edge::new(1, 3), Edge::new(1, 5)].into_iter().collect();
        assert_eq!(w.fault_set, expected);
        assert_eq!(w.flow_value, 2);
    }

    #[test]
    fn witness_for_q4_matches_hand_construction() {
        let q4 = HLNetwork::hypercube(4).unwrap();
        let w = extremal_witness(&q4, 2).unwrap();
        assert_eq!(w.u, 0);
        assert_eq!(w.v, 12);
        assert_eq!(w.fault_count, 5);
        assert_eq!(w.kept_edges, vec![Edge::new(1, 5)]);
        let expected: EdgeSet = [
            Edge::new(1, 9),
            Edge::new(2, 6),
            Edge::new(2, 10),
            Edge::new(3, 7),
            Edge::new(3, 11),
        ]
        .into_iter()
        .collect();
        assert_eq!(w.fault_set, expected);
        assert_eq!(w.flow_value, 3);
    }

    #[test]
    fn witness_breaks_the_property_and_respects_the_model() {
        let q4 = HLNetwork::hypercube(4).unwrap();
        for r in 1..=2usize {
            let w = extremal_witness(&q4, r).unwrap();
            assert!(admissible(&q4, &w.fault_set, r as u32).unwrap());
            let view = q4.delete_edges(&w.fault_set).unwrap();
            let report = is_sm_lambda(&view);
            assert!(!report.verdict, "r = {r}");
        }
    }

    #[test]
    fn witness_rejects_out_of_range_thresholds() {
        let q4 = HLNetwork::hypercube(4).unwrap();
        assert!(extremal_witness(&q4, 0).is_err());
        assert!(extremal_witness(&q4, 3).is_err());
        let q2 = HLNetwork::hypercube(2).unwrap();
        assert!(extremal_witness(&q2, 1).is_err());
    }

    #[test]
    fn tolerance_of_q3_is_one() {
        let q3 = HLNetwork::hypercube(3).unwrap();
        let report = exact_fault_tolerance(&q3, 1, &Budget::default()).unwrap();
        assert_eq!(report.value, 1);
        // Lexicographically smallest breaking pair of faults: stripping
        // vertex 0 down to the single edge 0-4 leaves only two usable
        // entries into vertex 4, so the full-degree pair (3, 4) is starved.
        let expected: EdgeSet = [Edge::new(0, 1), Edge::new(0, 2)].into_iter().collect();
        assert_eq!(report.breaking_fault_set.unwrap(), expected);
        let ce = report.counterexample.unwrap();
        assert_eq!((ce.u, ce.v, ce.flow, ce.required), (3, 4, 2, 3));
        assert_eq!(report.sets_examined, 14);
    }

    #[test]
    fn lower_bound_verification_and_refutation() {
        let q3 = HLNetwork::hypercube(3).unwrap();
        let holds =
            verify_lower_bound(&q3, 1, 1, SearchMode::Exhaustive, &Budget::default()).unwrap();
        assert!(matches!(holds.verdict, SearchVerdict::Holds));
        assert_eq!(holds.sets_examined, 13);

        let refuted =
            verify_lower_bound(&q3, 1, 2, SearchMode::Exhaustive, &Budget::default()).unwrap();
        match refuted.verdict {
            SearchVerdict::Refuted { fault_set, .. } => {
                let expected: EdgeSet = [Edge::new(0, 1), Edge::new(0, 2)].into_iter().collect();
                assert_eq!(fault_set, expected);
            }
            other => panic!("expected refutation, got {other:?}"),
        }
    }

    #[test]
    fn sampled_verification_is_deterministic() {
        let q4 = HLNetwork::hypercube(4).unwrap();
        let mode = SearchMode::Sampled {
            samples: 200,
            seed: 7,
        };
        let a = verify_lower_bound(&q4, 1, 2, mode, &Budget::default()).unwrap();
        let b = verify_lower_bound(&q4, 1, 2, mode, &Budget::default()).unwrap();
        assert!(matches!(a.verdict, SearchVerdict::Holds));
        assert!(!a.starved);
        assert_eq!(a.sets_examined, b.sets_examined);
        assert_eq!(a.sets_examined, 200);
    }

    #[test]
    fn sampling_reports_starvation_when_admissible_sets_are_rare() {
        // With the full edge set as the fault budget, draws cluster around
        // half the edges; at threshold 4 every vertex may shed at most two
        // of its six, so nearly every draw is rejected and the retry cap
        // trips.
        let q6 = HLNetwork::hypercube(6).unwrap();
        let mode = SearchMode::Sampled {
            samples: 50,
            seed: 3,
        };
        let m = q6.edge_count() as u64;
        let result = verify_lower_bound(&q6, 4, m, mode, &Budget::default()).unwrap();
        assert!(result.starved);
        assert!(result.sets_examined < 50);
    }

    #[test]
    fn breaking_set_search_uses_the_witness() {
        let q3 = HLNetwork::hypercube(3).unwrap();
        let result = find_breaking_fault_set(&q3, 1, None, &Budget::default()).unwrap();
        assert_eq!(result.model.max_faults, 2);
        assert_eq!(result.sets_examined, 1);
        match result.verdict {
            SearchVerdict::Refuted {
                fault_set,
                counterexample,
            } => {
                let expected: EdgeSet = [Edge::new(1, 3), Edge::new(1, 5)].into_iter().collect();
                assert_eq!(fault_set, expected);
                assert_eq!((counterexample.u, counterexample.v), (0, 6));
                assert_eq!(counterexample.flow, 2);
                assert_eq!(counterexample.required, 3);
            }
            other => panic!("expected refutation, got {other:?}"),
        }
    }

    #[test]
    fn breaking_set_search_below_the_bound_finds_nothing() {
        let q3 = HLNetwork::hypercube(3).unwrap();
        let result = find_breaking_fault_set(&q3, 1, Some(1), &Budget::default()).unwrap();
        assert!(matches!(result.verdict, SearchVerdict::NotFound));
        assert_eq!(result.sets_examined, 13);
        // Explicit budget needed outside the exact-formula range.
        assert!(find_breaking_fault_set(&q3, 0, None, &Budget::default()).is_err());
    }

    #[test]
    fn giant_component_exhaustive_at_dimension_three() {
        let q3 = HLNetwork::hypercube(3).unwrap();
        let report =
            giant_component_check(&q3, 1, SearchMode::Exhaustive, &Budget::default()).unwrap();
        assert!(report.pass);
        assert_eq!(report.max_faults, 3);
        assert_eq!(report.required_component, 7);
        assert_eq!(report.sets_examined, 299);

        let r0 = giant_component_check(&q3, 0, SearchMode::Exhaustive, &Budget::default()).unwrap();
        assert!(r0.pass);
        assert_eq!(r0.max_faults, 2);
        assert_eq!(r0.required_component, 8);
        assert_eq!(r0.sets_examined, 79);
    }

    #[test]
    fn giant_component_sampled_mode_is_deterministic() {
        let g = HLNetwork::random(5, 1).unwrap();
        let mode = SearchMode::Sampled {
            samples: 500,
            seed: 11,
        };
        let a = giant_component_check(&g, 2, mode, &Budget::default()).unwrap();
        let b = giant_component_check(&g, 2, mode, &Budget::default()).unwrap();
        assert!(a.pass);
        assert_eq!(a.sets_examined, 500);
        assert_eq!(b.sets_examined, 500);
    }

    #[test]
    fn budget_guards_trip() {
        let q4 = HLNetwork::hypercube(4).unwrap();
        let tiny = Budget::default().with_max_subsets(100);
        assert!(matches!(
            verify_lower_bound(&q4, 1, 3, SearchMode::Exhaustive, &tiny),
            Err(Error::BudgetExceeded(_))
        ));
        assert!(matches!(
            exact_fault_tolerance(&q4, 2, &tiny),
            Err(Error::BudgetExceeded(_))
        ));
    }

    #[test]
    fn model_validation_rejects_bad_thresholds() {
        let q3 = HLNetwork::hypercube(3).unwrap();
        assert!(verify_lower_bound(&q3, 2, 1, SearchMode::Exhaustive, &Budget::default()).is_err());
        assert!(exact_fault_tolerance(&q3, 9, &Budget::default()).is_err());
        assert!(giant_component_check(&q3, 2, SearchMode::Exhaustive, &Budget::default()).is_err());
    }
}
