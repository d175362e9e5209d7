//! Finite-field linear algebra for the affine analysis: GF(p^k) arithmetic,
//! matrices, Jordan shapes of unipotent elements, the exact derangement
//! criterion for affine maps, restriction of scalars, semilinear elements,
//! the two-transitive candidate constructors, and a brute-force census of
//! V:H as an independent oracle.

pub mod bridge;
pub mod census;
pub mod derange;
pub mod error;
pub mod files;
pub mod gf;
pub mod hering;
pub mod jordan;
pub mod matrix;
pub mod scalars;

pub use bridge::{matrix_from_vector_perm, matrix_to_vector_perm, ProjectiveSpace, VectorSpace};
pub use census::{brute_force_affine_census, AffineCensus, AffineClass};
pub use derange::{
    almost_elusive_affine, derangement_exists_for, is_derangement_affine, AffineVerdict,
};
pub use error::AffineError;
pub use files::MatrixGroupFile;
pub use gf::Field;
pub use jordan::{jordan_shape_unipotent, JordanShape};
pub use matrix::GfMatrix;
pub use scalars::{restrict_scalars, semilinear_to_matrix, SemilinearMap};
