//! Exact realization cones of transitive permutation actions.
//!
//! Permutation groups, cyclotomic arithmetic and character tables feed the
//! `realization` pipeline; `psl`, `h4` and `wreath` build the concrete
//! families on top of it.

pub mod chartable;
pub mod cyclotomic;
pub mod groups;
pub mod h4;
pub mod perm;
pub mod psl;
pub mod realization;
pub mod stringc;
pub mod suite;
pub mod wreath;
