//! Workbench for Goedel coding, fuel-bounded arithmetic truth, iterated truth
//! predicates along ordinal notations, Kleene-Brouwer orderings and
//! satisfaction systems of formula schemes.

pub mod cli;
pub mod coding;
pub mod eval;
pub mod hierarchy;
pub mod ordinals;
pub mod satsys;
pub mod structures;
pub mod syntax;
pub mod trees;
