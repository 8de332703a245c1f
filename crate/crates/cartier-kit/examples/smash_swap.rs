//! The two sides of a smash product are exchangeable: an explicit algebra
//! isomorphism A # B -> B # A built from the pairing and the antipode.
//! Composed with the plain tensor flip it gives an involution, and the
//! plain flip alone is an anti-isomorphism.
//!
//! ```text
//! cargo run --example smash_swap
//! ```

use cartier_kit::catalog;
use cartier_kit::exactlin::{tensor_swap, SparseMatrix};
use cartier_kit::motive::{mirror, smash, smash_swap_iso, verify_algebra_iso};

fn main() -> cartier_kit::Result<()> {
    let pairing = catalog::exp_pairing(3)?;
    let ring = pairing.a.ring;
    let (na, nb) = (pairing.a.rank, pairing.b.rank);

    let phi = smash_swap_iso(&pairing)?;
    println!("swap isomorphism found, {} x {}", phi.rows(), phi.cols());

    // smash_swap_iso verified this already; do it once more in the open.
    let forward = smash(&pairing)?;
    let backward = smash(&mirror(&pairing)?)?;
    assert!(verify_algebra_iso(&phi, &forward, &backward)?);
    println!("phi intertwines the two smash products and is invertible");

    // psi_2 = phi composed with the flip is an involution of B # A.
    let psi2 = phi.mat_mul(&tensor_swap(ring, nb, na))?;
    let square = psi2.mat_mul(&psi2)?;
    assert_eq!(square, SparseMatrix::identity(ring, na * nb));
    println!("psi_2 squares to the identity on all {} basis vectors", na * nb);

    // psi_1 = the flip itself reverses the order of multiplication.
    let psi1 = tensor_swap(ring, na, nb);
    let n = forward.rank;
    for v in 0..n {
        for w in 0..n {
            let col = |m: &SparseMatrix, a: usize, b: usize| {
                m.mat_mul(&SparseMatrix::basis_col(ring, n * n, a * n + b)).unwrap()
            };
            let lhs = psi1.mat_mul(&col(&forward.mul, v, w))?;
            let ev = psi1.mat_mul(&SparseMatrix::basis_col(ring, n, v))?;
            let ew = psi1.mat_mul(&SparseMatrix::basis_col(ring, n, w))?;
            let rhs = backward.mul.mat_mul(&ew.kron(&ev)?)?;
            assert_eq!(lhs, rhs);
        }
    }
    println!("psi_1 is an anti-isomorphism on all basis pairs");
    Ok(())
}
