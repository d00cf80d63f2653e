//! Concrete category instances plugged into the finite-category kernel.

pub mod cyclic;
pub mod delta;
pub mod graph;
pub mod pointed;
pub mod set;
pub mod submodule;
pub mod zmod;

pub use cyclic::{CyclicGroups, CyclicMap, CyclicObject};
pub use delta::{AugmentedSimplex, MonotoneMap, Ordinal};
pub use graph::{DirectedGraph, GraphBundleCategory, GraphChainBundle, Path, PathCategory};
pub use pointed::{PointedMap, PointedSet, PointedSets};
pub use set::{FinSet, FinSets, SetMap};
pub use submodule::{SubmoduleMap, SubmoduleObject, Submodules};
pub use zmod::{FreeAbelian, FreeAbelianMap, FreeAbelianObject};
