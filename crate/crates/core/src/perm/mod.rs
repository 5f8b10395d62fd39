//! Permutation-group engine.

pub mod chain;
mod group;
mod hom;
pub mod io;
mod permutation;

pub use chain::{Chain, ChainElement, FaithfulSink, KernelSink};
pub use group::{CosetAction, PermGroup};
pub use hom::GroupHom;
pub use permutation::Permutation;
