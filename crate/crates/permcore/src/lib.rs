//! Exact permutation-group engine: stabilizer chains, orbits, conjugacy
//! classes of prime-order elements, coset actions and small-group subgroup
//! lattices. Points are 0-based internally and 1-based in cycle notation.

pub mod chain;
pub mod classes;
pub mod coset;
pub mod error;
pub mod group;
pub mod lattice;
pub mod named;
pub mod perm;

pub use chain::StabChain;
pub use classes::{ClassData, PrimeOrderClass};
pub use coset::CosetAction;
pub use error::PermError;
pub use group::PermGroup;
pub use lattice::{SmallGroup, SubgroupClass};
pub use named::GroupFile;
pub use perm::{CycleShape, Permutation};
