//! Pareto-optimal route skylines in directed multi-cost graphs.
//!
//! A query `(s, t)` returns every `s -> t` path whose cost vector is not
//! dominated by another path's. Queries run in two phases: a lower-bound
//! phase (see [`bounds`]) and a label-correcting search pruned by those
//! bounds (see [`search`]). [`oracle`] holds brute-force references.

pub mod bounds;
pub mod dominance;
pub mod graph;
pub mod oracle;
pub mod search;

pub use bounds::{BoundMethod, BoundsError, LowerBoundResult};
pub use dominance::{Skyline, SortedSkyline2D};
pub use graph::{CostVector, EdgeId, GraphError, MultiCostGraph, NodeId, Path};
pub use search::{
    answer_query, answer_query_with, label_correcting_search, Method, QueryResult, SearchError,
    SearchOptions,
};
