//! Exact linear algebra over the four base rings: integers, integers mod n,
//! rationals, and rational polynomials. Everything downstream (Hopf
//! structure constants, Mittag-Leffler images, pro-algebra quotients) reduces
//! to the canonical forms and solvers in this module.

pub mod matrix;
pub mod normal_form;
pub mod ring;
pub mod scalar;

pub use matrix::{perm_legs, tensor_swap, SparseMatrix};
pub use normal_form::{
    canonical_row_form, canonical_row_form_with_transform, image_subset, invert, is_surjective,
    kernel_basis, row_basis_size, solve_right,
};
pub use ring::{is_prime, BaseRing};
pub use scalar::Scalar;
