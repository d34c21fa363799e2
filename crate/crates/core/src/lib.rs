//! Minimax load balancing of subadditive set-function costs.
//!
//! Ground-set elements are 0-based bit positions inside [`Subset`]; every
//! file format and display form uses 1-based elements.

pub mod audit;
pub mod balance;
pub mod error;
pub mod experiment;
pub mod facility;
pub mod interp;
pub mod metric;
pub mod mlb;
pub mod mrr;
pub mod partition;
pub mod setfn;
pub mod simplex;
pub mod subset;

pub use error::{Error, Result};
pub use partition::Partition;
pub use setfn::{Flags, FnOracle, ModularFn, SetFunction, TOL};
pub use subset::{GroundSet, Subset};
