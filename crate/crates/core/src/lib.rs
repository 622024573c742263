//! Zero-sum computations over finite groups with a cyclic subgroup of index 2.

pub mod additive;
pub mod error;
pub mod group;
pub mod index2;
pub mod search;
pub mod sequence;
pub mod setpartition;
pub mod witness;

pub use error::{Error, Result};
pub use group::{Element, ElementSet, FiniteGroup, Subgroup};
pub use index2::{build_group, Index2Group, Index2Params, PresentationType, TwoGroupKind};
pub use sequence::{OrderedSequence, Sequence};
