//! Spanning p-caterpillars: certificates, an exact oracle, structural
//! analysis of dense graphs, and the absorbing-method constructions.

pub mod analysis;
pub mod caterpillar;
pub mod graph;
pub mod harness;
pub mod matching;
pub mod oracle;
pub mod par;
pub mod rational;
pub mod rng;
pub mod solver;

pub use caterpillar::{is_spanning, link, validate, Caterpillar, Violation};
pub use graph::{Graph, GraphError, VertexSet};
pub use oracle::{count_spanning, exact_solve, OutcomeKind, SolveOutcome};
pub use par::Execution;
pub use rational::{parse_rational, Rational};
