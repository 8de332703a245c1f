//! Run the axiom checker across some catalog objects, then corrupt a
//! coproduct and watch the checker reject it.
//!
//! ```text
//! cargo run --example verify_hopf_axioms
//! ```

use cartier_kit::catalog;
use cartier_kit::exactlin::{BaseRing, Scalar, SparseMatrix};
use cartier_kit::hopf::verify_hopf;

fn main() -> cartier_kit::Result<()> {
    for ring in [
        BaseRing::Integers,
        BaseRing::IntegersMod(4),
        BaseRing::IntegersMod(3),
        BaseRing::Rationals,
    ] {
        for n in 1..=4 {
            let h = catalog::mu_n(ring, n);
            let report = verify_hopf(&h)?;
            println!(
                "mu_{} over {:<4}  axioms {}  commutative {}",
                n,
                ring.token(),
                report.axioms_hold(),
                report.commutative
            );
            assert!(report.axioms_hold());
        }
    }

    let alpha9 = catalog::alpha(3, 2)?;
    assert!(verify_hopf(&alpha9)?.axioms_hold());
    println!("alpha(3,2) of rank {} passes as well", alpha9.rank);

    // Now break mu_2 by declaring Delta x := x (x) 1 and keep everything
    // else. The product still respects the counit on 1, but x loses it.
    let f3 = BaseRing::IntegersMod(3);
    let mut broken = catalog::mu_n(f3, 2);
    broken.comul = SparseMatrix::from_entries(
        f3,
        4,
        2,
        vec![(0, 0, Scalar::one(f3)), (2, 1, Scalar::one(f3))],
    )?;
    let report = verify_hopf(&broken)?;
    println!(
        "corrupted mu_2: counit law {}, antipode law {}, verdict {}",
        report.counit_law,
        report.antipode_law,
        report.axioms_hold()
    );
    assert!(!report.counit_law && !report.antipode_law && !report.axioms_hold());
    Ok(())
}
