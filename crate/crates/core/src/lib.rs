pub mod ci;
pub mod enumerate;
pub mod error;
pub mod export;
pub mod gaussian_graph;
pub mod param;
pub mod perm;
pub mod rank_array;
pub mod schubert;

pub use ci::CIStatement;
pub use error::{Error, Result};
pub use gaussian_graph::MixedGraph;
pub use param::RationalMatrix;
pub use perm::Permutation;
pub use rank_array::{DecompositionResult, RankArray, Regime};
pub use schubert::{Flavor, IdealSpec, MinorSpec};
