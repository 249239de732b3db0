//! Constructive route to spanning caterpillars: connectors, the reservoir,
//! absorbers, the extension loop, the two extremal-case solvers, and the
//! dispatcher tying them to the exact oracle.

mod absorber;
mod bipartite;
mod connect;
mod dense;
mod dispatch;
mod extend;
mod grow;
mod reservoir;
mod skeleton;
mod sparse_set;
mod trace;
mod two_cliques;

pub use absorber::{absorbing_set_order, build_absorber, build_absorbing_set, Absorber, AbsorbingSet, FamilyMember};
pub use bipartite::{bipartite_spanning, hamilton_path_from};
pub use connect::connect3;
pub use dense::{dense_spanning, extension_xi_ok};
pub use dispatch::{default_block_size, solve, solve_traced, strict_parameters_ok, Route, SolveReport, SolverConfig};
pub use extend::{extend_loop, BlockDecomposition, ExtendParams, ExtendReport, IterationCase, IterationRecord};
pub use grow::dense_caterpillar_in;
pub use reservoir::{glue, sample_reservoir, sample_reservoir_relaxed, Reservoir, ReservoirReport};
pub use sparse_set::solve_sparse_set;
pub use trace::{Trace, TraceEvent};
pub use two_cliques::solve_two_cliques;

use thiserror::Error;

use crate::caterpillar::CaterpillarError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolverError {
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("no connecting caterpillar between {0} and {1}")]
    NoConnector(usize, usize),
    #[error("no reservoir passed verification in {0} attempts")]
    AttemptsExhausted(usize),
    #[error("no reservoir bridge between the caterpillar ends")]
    NoBridge,
    #[error("absorber family is empty although coverage was requested")]
    InsufficientFamily,
    #[error("extension made no progress at {size} covered vertices")]
    StalledProgress { size: usize },
    #[error("{leftover} vertices left over, absorber capacity {capacity}")]
    AbsorptionOverflow { leftover: usize, capacity: usize },
    #[error("construction failed: {0}")]
    ConstructionFailed(String),
}

impl From<CaterpillarError> for SolverError {
    fn from(e: CaterpillarError) -> Self {
        SolverError::ConstructionFailed(e.to_string())
    }
}

pub(crate) fn failed(msg: impl Into<String>) -> SolverError {
    SolverError::ConstructionFailed(msg.into())
}

pub(crate) fn precondition(msg: impl Into<String>) -> SolverError {
    SolverError::Precondition(msg.into())
}
