//! Construction and verification toolkit for hypercube-like (HL) networks.
//!
//! An HL-network of dimension `n` is built recursively: the single vertex is
//! the only member at dimension 0, and every dimension-`n` member is obtained
//! by joining two dimension-`n-1` members with a perfect matching. The family
//! contains the hypercube `Q_n`, crossed cubes, Möbius cubes and relatives.
//!
//! The crate provides:
//!
//! * [`HLNetwork`]: graphs with their construction trees, plus masked views
//!   for fault injection ([`GraphView`]).
//! * [`bounds`]: exact arithmetic for the maximum edge count of small vertex
//!   subsets and the resulting edge-boundary lower bounds, with a brute-force
//!   oracle and range sweeps.
//! * [`flow`]: unit-capacity max-flow giving edge-disjoint path families with
//!   certified minimum cuts, and the strong Menger edge-connectivity check.
//! * [`fault`]: conditional fault models, exhaustive and sampled fault-set
//!   searches, extremal fault-set construction, and exact edge-fault-tolerance
//!   computation for small networks.
//! * [`io`]: edge-list and DOT serialization, and the graph spec grammar used
//!   by the command-line front end.

pub mod bounds;
mod budget;
mod edge;
mod error;
pub mod fault;
pub mod flow;
pub mod io;
mod iso;
mod network;
mod view;

pub use budget::Budget;
pub use edge::{Edge, EdgeSet};
pub use error::{Error, Result};
pub use iso::are_isomorphic;
pub use network::{ConstructionTree, HLNetwork, SubcubeHandle, MAX_DIMENSION};
pub use view::GraphView;
