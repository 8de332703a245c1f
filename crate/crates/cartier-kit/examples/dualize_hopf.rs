//! Linear duality on Hopf data: transpose all five structure maps.
//! Dualizing twice gives back the original matrices, and the dual of a
//! group algebra is the corresponding function algebra on the nose.
//!
//! ```text
//! cargo run --example dualize_hopf
//! ```

use cartier_kit::catalog;
use cartier_kit::exactlin::{BaseRing, SparseMatrix};
use cartier_kit::hopf::{dual_hopf, hopf_iso_check};

fn main() -> cartier_kit::Result<()> {
    let z6 = BaseRing::IntegersMod(6);
    let h = catalog::mu_n(z6, 4);
    let dual = dual_hopf(&h)?;
    println!("mu_4 over Z/6 dualizes to rank {}", dual.rank);
    println!("dual basis labels: {:?}", dual.basis_labels);

    let double = dual_hopf(&dual)?;
    assert_eq!(double, h);
    println!("double dual == original: true (labels and matrices)");

    // The dual of mu_n is the algebra of functions on Z/n; in the delta
    // basis the canonical isomorphism is the identity matrix.
    for n in 1..=6 {
        let q = BaseRing::Rationals;
        let dual = dual_hopf(&catalog::mu_n(q, n))?;
        let functions = catalog::constant_group(q, &[n]);
        let id = SparseMatrix::identity(q, n);
        assert!(hopf_iso_check(&dual, &functions, &id)?);
    }
    println!("dual(mu_n) = functions on Z/n for n = 1..6 over Q");
    Ok(())
}
