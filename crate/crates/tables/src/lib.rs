//! Machine-readable edition of the classification tables, the named-group
//! workshop that builds each constructible row, the condition evaluators,
//! the query API, and the cross-check harness tying table rows to direct
//! computation.

pub mod affine_check;
pub mod build;
pub mod classify;
pub mod conditions;
pub mod crosscheck;
pub mod data;
pub mod error;
pub mod groups;

pub use error::TableError;
