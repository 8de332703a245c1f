//! cartier-kit: exact computer algebra for Cartier duality at finite rank.
//!
//! The crate manipulates affine commutative group schemes through the
//! structure constants of their coordinate Hopf algebras, works with
//! ind/pro-systems of finite free modules through explicit transition
//! matrices, and keeps every answer exact: no floats, no probabilistic
//! shortcuts, every verdict a matrix identity over Z, Z/n, Q, or Q[t].
//!
//! Start with the runnable examples (`cargo run --example <name>`):
//!
//! * `verify_hopf_axioms` - catalog objects and the axiom checklist
//! * `dualize_hopf` - transpose duality, functions on Z/n, double duals
//! * `cartier_pairing` - the unit element and its four defining equations
//! * `points_bijection` - algebra points vs grouplikes of the dual
//! * `ml_window` - Mittag-Leffler verdicts inside a finite window
//! * `linear_duality_unit` - Hom(M, L) against elements of the dual system
//! * `weyl_relation` - the smash product that produces y x = x y + 1
//! * `smash_swap` - the explicit isomorphism A # B -> B # A
//! * `pro_algebra_quotients` - stage quotients A_alpha and factorization
//!
//! The same capabilities are scriptable through the thin `cartier-kit`
//! binary (`check-hopf`, `dual`, `smash`, `points`, `ml-check`, `proalg`).

pub mod cartier;
pub mod catalog;
pub mod cli;
pub mod error;
pub mod exactlin;
pub mod hopf;
pub mod io;
pub mod modsys;
pub mod motive;
pub mod proalg;

pub use error::{Error, Result};
