//! Exact computation with small finite permutation groups.
//!
//! The crate is organised bottom-up:
//!
//! * [`permgroup`] builds groups from generators or named families and forms
//!   quotients by coset action.
//! * [`lattice`] enumerates every subgroup and answers inclusion, join, meet,
//!   core and chain-length queries.
//! * [`structure`] works on sections `T/N` of the lattice (Sylow subgroups,
//!   chief factors, supersolubility and friends).
//! * [`classes`] provides group-class oracles, residuals and the various
//!   subnormality notions.
//! * [`submodular`] implements modular and submodular subgroups, n-modular
//!   embedding, k-submodularity, k-LM groups and the class predicates built
//!   on them.

pub mod arith;
pub mod classes;
mod error;
pub mod lattice;
pub mod permgroup;
pub mod structure;
pub mod submodular;

pub use error::{GroupError, Result};
pub use lattice::{SubgroupId, SubgroupLattice};
pub use permgroup::{FiniteGroup, GroupSpec, Permutation};
pub use structure::Section;
