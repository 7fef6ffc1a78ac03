//! Python bindings for the hlnet toolkit: build hypercube-like networks,
//! count edge-disjoint paths, and run the fault-tolerance checks.

use hlnet_core::fault::{
    self, expected_tolerance as core_expected_tolerance, Expected, SearchMode, SearchVerdict,
};
use hlnet_core::flow::{is_sm_lambda, max_edge_disjoint_paths, PairCounterexample};
use hlnet_core::{bounds, io, Budget, Edge, EdgeSet, Error, HLNetwork};
use pyo3::exceptions::{PyIOError, PyValueError};
use pyo3::prelude::*;

fn pyerr(e: Error) -> PyErr {
    match e {
        Error::Io(inner) => PyIOError::new_err(inner.to_string()),
        other => PyValueError::new_err(other.to_string()),
    }
}

fn edge_set_from(pairs: &[(u32, u32)], g: &HLNetwork) -> PyResult<EdgeSet> {
    let mut set = EdgeSet::new();
    for &(u, v) in pairs {
        if !g.contains_edge(u, v) {
            return Err(PyValueError::new_err(format!(
                "edge {u}-{v} is not present in the graph"
            )));
        }
        set.insert(Edge::new(u, v));
    }
    Ok(set)
}

fn pairs_of(set: &EdgeSet) -> Vec<(u32, u32)> {
    set.iter().map(|e| (e.lo(), e.hi())).collect()
}

fn ce_tuple(ce: &PairCounterexample) -> (u32, u32, u32, u32) {
    (ce.u, ce.v, ce.flow, ce.required)
}

fn budget_from(max_subsets: Option<u64>) -> Budget {
    match max_subsets {
        Some(m) => Budget::default().with_max_subsets(m),
        None => Budget::default(),
    }
}

fn mode_from(samples: Option<u64>, seed: Option<u64>) -> PyResult<SearchMode> {
    match (samples, seed) {
        (None, None) => Ok(SearchMode::Exhaustive),
        (Some(samples), Some(seed)) => Ok(SearchMode::Sampled { samples, seed }),
        _ => Err(PyValueError::new_err(
            "sampled mode needs both samples and seed; exhaustive mode needs neither",
        )),
    }
}

// ============================================================================
// Result classes
// ============================================================================

/// Edge-disjoint paths between one vertex pair, with the matching cut.
#[pyclass(frozen, get_all)]
struct Flow {
    source: u32,
    sink: u32,
    value: u32,
    paths: Vec<Vec<u32>>,
    cut: Vec<(u32, u32)>,
}

#[pymethods]
impl Flow {
    fn __repr__(&self) -> String {
        format!(
            "Flow(source={}, sink={}, value={}, cut_size={})",
            self.source,
            self.sink,
            self.value,
            self.cut.len()
        )
    }
}

/// Verdict of the strong Menger check over every vertex pair.
#[pyclass(frozen, get_all)]
struct MengerReport {
    holds: bool,
    /// `(u, v, flow, required)` for the first failing pair, if any.
    counterexample: Option<(u32, u32, u32, u32)>,
    pairs_checked: u64,
}

#[pymethods]
impl MengerReport {
    fn __bool__(&self) -> bool {
        self.holds
    }
    fn __repr__(&self) -> String {
        format!(
            "MengerReport(holds={}, pairs_checked={})",
            self.holds, self.pairs_checked
        )
    }
}

/// Outcome of searching fault sets up to a size bound.
#[pyclass(frozen, get_all)]
struct SearchOutcome {
    /// Every admissible fault set examined kept the property.
    holds: bool,
    /// A breaking fault set was found (its edges are in `fault_set`).
    refuted: bool,
    fault_set: Option<Vec<(u32, u32)>>,
    counterexample: Option<(u32, u32, u32, u32)>,
    sets_examined: u64,
    /// Sampled mode gave up before drawing the requested admissible sets.
    starved: bool,
}

#[pymethods]
impl SearchOutcome {
    fn __repr__(&self) -> String {
        format!(
            "SearchOutcome(holds={}, refuted={}, sets_examined={})",
            self.holds, self.refuted, self.sets_examined
        )
    }
}

/// Exact conditional fault tolerance with the first breaking set beyond it.
#[pyclass(frozen, get_all)]
struct Tolerance {
    value: u64,
    breaking_fault_set: Option<Vec<(u32, u32)>>,
    counterexample: Option<(u32, u32, u32, u32)>,
    sets_examined: u64,
}

#[pymethods]
impl Tolerance {
    fn __int__(&self) -> u64 {
        self.value
    }
    fn __repr__(&self) -> String {
        format!("Tolerance(value={})", self.value)
    }
}

/// Certified extremal fault set: one vertex keeps full degree yet reaches
/// a distant full-degree vertex through only `n - 1` disjoint paths.
#[pyclass(frozen, get_all)]
struct Witness {
    subcube_level: u32,
    u: u32,
    v: u32,
    kept_edges: Vec<(u32, u32)>,
    fault_set: Vec<(u32, u32)>,
    fault_count: u64,
    flow_value: u32,
}

#[pymethods]
impl Witness {
    fn __repr__(&self) -> String {
        format!(
            "Witness(u={}, v={}, fault_count={}, flow_value={})",
            self.u, self.v, self.fault_count, self.flow_value
        )
    }
}

/// Verdict of the giant-component guarantee over bounded fault sets.
#[pyclass(frozen, get_all)]
struct ComponentReport {
    passed: bool,
    max_faults: u64,
    required_component: u64,
    /// `(fault_set, largest_component)` for a violating set, if any.
    violation: Option<(Vec<(u32, u32)>, u64)>,
    sets_examined: u64,
}

#[pymethods]
impl ComponentReport {
    fn __bool__(&self) -> bool {
        self.passed
    }
    fn __repr__(&self) -> String {
        format!(
            "ComponentReport(passed={}, sets_examined={})",
            self.passed, self.sets_examined
        )
    }
}

// ============================================================================
// The network class
// ============================================================================

/// An n-dimensional hypercube-like network with dense vertex ids.
#[pyclass(frozen)]
struct Network {
    inner: HLNetwork,
}

#[pymethods]
impl Network {
    /// Parse a graph spec: "qn:<n>", "cq3", "random:<n>:<seed>", or an
    /// edge-list file path.
    #[new]
    fn new(spec: &str) -> PyResult<Self> {
        Ok(Network {
            inner: io::parse_graph_spec(spec).map_err(pyerr)?,
        })
    }

    #[staticmethod]
    fn hypercube(n: usize) -> PyResult<Self> {
        Ok(Network {
            inner: HLNetwork::hypercube(n).map_err(pyerr)?,
        })
    }

    #[staticmethod]
    fn crossed_cube_3() -> Self {
        Network {
            inner: HLNetwork::crossed_cube_3(),
        }
    }

    /// Seeded random member: identical seeds give identical graphs.
    #[staticmethod]
    fn random(n: usize, seed: u64) -> PyResult<Self> {
        Ok(Network {
            inner: HLNetwork::random(n, seed).map_err(pyerr)?,
        })
    }

    /// Join two members of equal dimension along a perfect matching;
    /// `matching[i]` is the right-half partner of left vertex `i`.
    #[staticmethod]
    fn compose(left: &Network, right: &Network, matching: Vec<u32>) -> PyResult<Self> {
        Ok(Network {
            inner: HLNetwork::compose(&left.inner, &right.inner, &matching).map_err(pyerr)?,
        })
    }

    /// Parse the edge-list format produced by `to_edge_list`.
    #[staticmethod]
    fn from_edge_list(text: &str) -> PyResult<Self> {
        Ok(Network {
            inner: io::read_edge_list(text).map_err(pyerr)?,
        })
    }

    #[getter]
    fn dimension(&self) -> usize {
        self.inner.dimension()
    }

    #[getter]
    fn vertex_count(&self) -> usize {
        self.inner.vertex_count()
    }

    #[getter]
    fn edge_count(&self) -> usize {
        self.inner.edge_count()
    }

    fn edges(&self) -> Vec<(u32, u32)> {
        self.inner
            .edges()
            .iter()
            .map(|e| (e.lo(), e.hi()))
            .collect()
    }

    fn neighbors(&self, v: u32) -> PyResult<Vec<u32>> {
        Ok(self.inner.neighbors(v).map_err(pyerr)?.to_vec())
    }

    fn contains_edge(&self, u: u32, v: u32) -> bool {
        self.inner.contains_edge(u, v)
    }

    /// Vertices of the level-`r` subcube used by the witness construction.
    fn subcube(&self, r: usize) -> PyResult<Vec<u32>> {
        Ok(self.inner.subcube(r).map_err(pyerr)?.vertices().collect())
    }

    fn to_edge_list(&self) -> String {
        io::write_edge_list(&self.inner)
    }

    /// DOT drawing; fault edges come out dashed red, marked vertices filled.
    #[pyo3(signature = (faults=None, marked=vec![]))]
    fn to_dot(&self, faults: Option<Vec<(u32, u32)>>, marked: Vec<u32>) -> PyResult<String> {
        let fault_set = match &faults {
            Some(pairs) => Some(edge_set_from(pairs, &self.inner)?),
            None => None,
        };
        Ok(io::write_dot(&self.inner, fault_set.as_ref(), &marked))
    }

    /// Maximum number of edge-disjoint `u`-`v` paths after removing the
    /// fault edges, certified against a matching edge cut.
    #[pyo3(signature = (u, v, faults=None))]
    fn max_disjoint_paths(&self, u: u32, v: u32, faults: Option<Vec<(u32, u32)>>) -> PyResult<Flow> {
        let fault_set = edge_set_from(faults.as_deref().unwrap_or(&[]), &self.inner)?;
        let view = self.inner.delete_edges(&fault_set).map_err(pyerr)?;
        let result = max_edge_disjoint_paths(&view, u, v).map_err(pyerr)?;
        result.certify(&view).map_err(pyerr)?;
        Ok(Flow {
            source: result.source,
            sink: result.sink,
            value: result.value,
            paths: result.paths,
            cut: pairs_of(&result.cut),
        })
    }

    /// Does every vertex pair still get min(deg(u), deg(v)) edge-disjoint
    /// paths after removing the fault edges?
    #[pyo3(signature = (faults=None))]
    fn is_strongly_menger(&self, faults: Option<Vec<(u32, u32)>>) -> PyResult<MengerReport> {
        let fault_set = edge_set_from(faults.as_deref().unwrap_or(&[]), &self.inner)?;
        let view = self.inner.delete_edges(&fault_set).map_err(pyerr)?;
        let report = is_sm_lambda(&view);
        Ok(MengerReport {
            holds: report.verdict,
            counterexample: report.counterexample.as_ref().map(ce_tuple),
            pairs_checked: report.pairs_checked,
        })
    }

    /// Check that every fault set of at most `m` edges keeping minimum
    /// degree >= `r` preserves the strong Menger property. Exhaustive by
    /// default; pass `samples` and `seed` together for sampled mode.
    #[pyo3(signature = (r, m, samples=None, seed=None, max_subsets=None))]
    fn verify_lower_bound(
        &self,
        r: u32,
        m: u64,
        samples: Option<u64>,
        seed: Option<u64>,
        max_subsets: Option<u64>,
    ) -> PyResult<SearchOutcome> {
        let mode = mode_from(samples, seed)?;
        let budget = budget_from(max_subsets);
        let result = fault::verify_lower_bound(&self.inner, r, m, mode, &budget).map_err(pyerr)?;
        let (fault_set, counterexample) = match &result.verdict {
            SearchVerdict::Refuted {
                fault_set,
                counterexample,
            } => (
                Some(pairs_of(fault_set)),
                Some(ce_tuple(counterexample)),
            ),
            _ => (None, None),
        };
        Ok(SearchOutcome {
            holds: matches!(result.verdict, SearchVerdict::Holds),
            refuted: result.verdict.is_refuted(),
            fault_set,
            counterexample,
            sets_examined: result.sets_examined,
            starved: result.starved,
        })
    }

    /// Largest `m` such that every fault set of at most `m` edges keeping
    /// minimum degree >= `r` preserves the strong Menger property, found by
    /// exhaustive climb.
    #[pyo3(signature = (r, max_subsets=None))]
    fn exact_fault_tolerance(&self, r: u32, max_subsets: Option<u64>) -> PyResult<Tolerance> {
        let budget = budget_from(max_subsets);
        let report = fault::exact_fault_tolerance(&self.inner, r, &budget).map_err(pyerr)?;
        Ok(Tolerance {
            value: report.value,
            breaking_fault_set: report.breaking_fault_set.as_ref().map(pairs_of),
            counterexample: report.counterexample.as_ref().map(ce_tuple),
            sets_examined: report.sets_examined,
        })
    }

    /// Build and certify the extremal fault set around the level-`r`
    /// subcube: the smallest set beyond the tolerance that breaks the
    /// property while keeping minimum degree `r`.
    fn extremal_witness(&self, r: usize) -> PyResult<Witness> {
        let w = fault::extremal_witness(&self.inner, r).map_err(pyerr)?;
        Ok(Witness {
            subcube_level: w.subcube_level,
            u: w.u,
            v: w.v,
            kept_edges: w.kept_edges.iter().map(|e| (e.lo(), e.hi())).collect(),
            fault_set: pairs_of(&w.fault_set),
            fault_count: w.fault_count,
            flow_value: w.flow_value,
        })
    }

    /// Check that every fault set of fewer than `2^r * (n - r)` edges
    /// leaves a connected component of at least `2^n - 2^r + 1` vertices.
    #[pyo3(signature = (r, samples=None, seed=None, max_subsets=None))]
    fn giant_component_check(
        &self,
        r: u32,
        samples: Option<u64>,
        seed: Option<u64>,
        max_subsets: Option<u64>,
    ) -> PyResult<ComponentReport> {
        let mode = mode_from(samples, seed)?;
        let budget = budget_from(max_subsets);
        let report =
            fault::giant_component_check(&self.inner, r, mode, &budget).map_err(pyerr)?;
        Ok(ComponentReport {
            passed: report.pass,
            max_faults: report.max_faults,
            required_component: report.required_component,
            violation: report
                .violation
                .as_ref()
                .map(|v| (pairs_of(&v.fault_set), v.largest_component)),
            sets_examined: report.sets_examined,
        })
    }

    fn __repr__(&self) -> String {
        format!(
            "Network(dimension={}, vertices={}, edges={})",
            self.inner.dimension(),
            self.inner.vertex_count(),
            self.inner.edge_count()
        )
    }
}

// ============================================================================
// Module functions
// ============================================================================

/// Maximum edge count of a `g`-vertex induced subgraph of any member.
#[pyfunction]
fn max_induced_edges(g: u64) -> u64 {
    bounds::max_induced_edges(g)
}

/// Lower bound `n*g - 2*e(g)` on the edge boundary of a `g`-vertex set.
#[pyfunction]
fn boundary_bound(n: u32, g: u64) -> i64 {
    bounds::boundary_bound(n, g)
}

/// Established fault tolerance for dimension `n` at threshold `r`, as a
/// `(kind, value)` pair: kind is "exact", "reference", or "unknown".
#[pyfunction]
fn expected_tolerance(n: u32, r: u32) -> PyResult<(String, Option<u64>)> {
    Ok(match core_expected_tolerance(n, r).map_err(pyerr)? {
        Expected::Exact { value } => ("exact".into(), Some(value)),
        Expected::Reference { value } => ("reference".into(), Some(value)),
        Expected::Unknown => ("unknown".into(), None),
    })
}

/// Degree-refined graph isomorphism check for small networks.
#[pyfunction]
fn are_isomorphic(a: &Network, b: &Network) -> PyResult<bool> {
    hlnet_core::are_isomorphic(&a.inner, &b.inner).map_err(pyerr)
}

#[pymodule]
fn hlnet(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Network>()?;
    m.add_class::<Flow>()?;
    m.add_class::<MengerReport>()?;
    m.add_class::<SearchOutcome>()?;
    m.add_class::<Tolerance>()?;
    m.add_class::<Witness>()?;
    m.add_class::<ComponentReport>()?;
    m.add_function(wrap_pyfunction!(max_induced_edges, m)?)?;
    m.add_function(wrap_pyfunction!(boundary_bound, m)?)?;
    m.add_function(wrap_pyfunction!(expected_tolerance, m)?)?;
    m.add_function(wrap_pyfunction!(are_isomorphic, m)?)?;
    Ok(())
}
