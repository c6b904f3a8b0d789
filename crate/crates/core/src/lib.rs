//! Set-betweenness centrality on unweighted undirected graphs.
//!
//! The central quantity is the exactly-one count of a vertex set `A`: the
//! number of shortest paths, over ordered endpoint pairs outside `A`, that
//! pass through precisely one member of `A`. Alongside it live plain
//! betweenness, the at-least-one (group) count, and the all-members
//! (co-betweenness) count.
//!
//! Layers, bottom up:
//!
//! * [`graph`]: graph type, edge-list loading, validation.
//! * [`spd`]: per-source BFS structure: distances, path counts,
//!   predecessor DAGs, path sampling and enumeration.
//! * [`exact`]: the exact measures, each computed two independent ways.
//! * [`oracle`]: brute-force path enumeration that everything is tested
//!   against.
//! * [`sampling`]: unbiased Monte Carlo estimators of the exactly-one
//!   count.
//! * [`analysis`]: correlation and timing studies over set families, with
//!   CSV output.
//! * [`corpus`]: small bundled graphs used by tests and examples.
//!
//! Counts use the ordered-pair convention throughout: `(s, t)` and
//! `(t, s)` both count, so every value on an undirected graph is even.
//! Rendering may halve them for unordered presentation. All counting
//! arithmetic is checked `u64`; overflow is an error, never a wrap.

pub mod analysis;
pub mod corpus;
pub mod error;
pub mod exact;
pub mod graph;
pub mod oracle;
pub mod sampling;
pub mod spd;

pub use error::{Error, Result};
pub use graph::{Graph, VertexSet};
