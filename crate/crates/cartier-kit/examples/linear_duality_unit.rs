//! The unit of linear duality at window scale.  For an ind-system M the
//! vectorized identities of the colimit legs form a compatible family
//! (the "unit components"), and pairing against them identifies
//! Hom(M, L) with the evaluation side.  `hom_ev_compare` checks that
//! identification by brute force over elementary homomorphisms.
//!
//! ```text
//! cargo run --example linear_duality_unit
//! ```

use cartier_kit::exactlin::{BaseRing, SparseMatrix};
use cartier_kit::modsys::{hom_ev_compare, unit_components, IndSystem};

fn main() -> cartier_kit::Result<()> {
    let z = BaseRing::Integers;
    // Z -2-> Z -3-> Z: a rank-1 ind-system with injective transitions.
    let double = SparseMatrix::from_i64_rows(z, &[&[2]]);
    let triple = SparseMatrix::from_i64_rows(z, &[&[3]]);
    let s = IndSystem::new(z, vec![1, 1, 1], vec![double, triple])?;

    let units = unit_components(&s);
    for (beta, u) in units.iter().enumerate() {
        println!("unit component at stage {}: {:?}", beta, u.to_dense());
    }
    // Stage compatibility: u_beta = (t_beta^T (x) 1) u_{beta+1}.
    for beta in 0..units.len() - 1 {
        let t = &s.transitions()[beta];
        let lift = t
            .transpose()
            .kron(&SparseMatrix::identity(z, s.ranks()[s.ranks().len() - 1]))?
            .mat_mul(&units[beta + 1])?;
        assert_eq!(units[beta], lift);
    }
    println!("unit components are transition-compatible");

    for l in 0..=3 {
        let ok = hom_ev_compare(&s, l)?;
        println!("Hom(M, R^{}) == ev(M^dual (x) R^{}): {}", l, l, ok);
        assert!(ok);
    }

    // A two-dimensional example over Q with a non-injective transition.
    let q = BaseRing::Rationals;
    let collapse = SparseMatrix::from_i64_rows(q, &[&[1, 1]]);
    let widen = SparseMatrix::from_i64_rows(q, &[&[1], &[0]]);
    let s = IndSystem::new(q, vec![2, 1, 2], vec![collapse, widen])?;
    assert!(hom_ev_compare(&s, 2)?);
    println!("rank-mixing system over Q compares equal as well");
    Ok(())
}
