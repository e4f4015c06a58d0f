//! Computational topology of locally finite rooted graphs.
//!
//! The crate treats a rooted graph as a point in an ultrametric space:
//! two graphs are close when large balls around their roots agree. On top
//! of that metric it computes end-structure invariants (component trees
//! over growing windows, cycle-rank lower bounds, sphere connectivity),
//! realizes closed subsets of the binary sequence space as trees and as
//! 3-regular or k-regular graphs, decides proper-homotopy equivalence of
//! standard forms through finite coded structures, and runs genericity
//! experiments on random regular graphs.
//!
//! Graphs come in two flavors, unified by [`GraphInput`]: finite edge
//! lists ([`FiniteMultigraph`]) and procedural infinite graphs implementing
//! [`GraphOracle`]. Everything downstream — balls, distances, windows,
//! invariants — works uniformly through the oracle interface.

pub mod ball;
pub mod closed_set;
pub mod ends;
pub mod error;
pub mod genericity;
pub mod iso;
pub mod metric;
pub mod multigraph;
pub mod oracle;
pub mod phe;
pub mod reductions;
pub mod specfile;
pub mod stone;
pub mod surfaces;
pub mod surgery;

pub use ball::{Ball, Radius};
pub use closed_set::{ClosedSetPresentation, Dfa, SpaceKind};
pub use ends::{component_tree, rank_lower_bound, sphere_connected, ComponentTree, VnStatus};
pub use error::{Error, Result};
pub use genericity::{
    delta_u, delta_v, in_un, in_vn, run_experiment, sample_configuration, trial_seed, DeltaVReport,
    ExperimentParams, ExperimentReport, TrialRecord,
};
pub use metric::{distance, in_basic_open, DyadicDistance};
pub use multigraph::{EdgeId, FiniteMultigraph, VertexId};
pub use oracle::{GraphInput, GraphOracle, OracleEdge};
pub use phe::{
    phe_compare, phe_distinguish, phe_equivalent, realize, CantorLoops, EndPairDescriptor,
    PheVerdict, Rank, RealizationFamily, StandardGraphDescriptor,
};
pub use reductions::{cubic_realization, regular_realization, tree_realization};
pub use specfile::{
    builtin_graph, parse_graph, parse_spec, resolve_closed_set_spec, resolve_graph_spec, SpecFile,
    BUILTIN_NAMES,
};
pub use surfaces::{enumerate_pants_complexes, surfaces_homeomorphic, PantsComplex, SurfaceClass};
