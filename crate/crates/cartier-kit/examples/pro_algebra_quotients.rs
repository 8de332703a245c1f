//! Stage quotients of a pro-algebra window.  Transitions that are algebra
//! maps leave every stage untouched; quotienting the bottom stage by a
//! non-ideal line forces a proper relation subspace, and the induced
//! multiplication still closes up into an honest algebra.
//!
//! ```text
//! cargo run --example pro_algebra_quotients
//! ```

use cartier_kit::exactlin::BaseRing;
use cartier_kit::proalg::{
    killed_line_tower, stage_quotient_at, stage_quotients, truncation_tower, verify_factorization,
};

fn main() -> cartier_kit::Result<()> {
    let q = BaseRing::Rationals;

    let plain = truncation_tower(q, &[1, 2, 3, 4])?;
    for sq in stage_quotients(&plain)? {
        println!(
            "truncation tower, stage {}: rank {} -> quotient rank {}",
            sq.stage,
            plain.ranks()[sq.stage],
            sq.quotient_rank
        );
        assert_eq!(sq.quotient_rank, plain.ranks()[sq.stage]);
    }

    // Q[x]/x^3 with the line Q.x killed at the bottom: the products that
    // pass through the kernel sweep out the image of x^2, so the stage-0
    // algebra collapses to Q.
    let killed = killed_line_tower(q, 3)?;
    let quotients = stage_quotients(&killed)?;
    let sq = &quotients[0];
    println!(
        "killed-line tower, stage 0: rank {} -> quotient rank {} ({} relations)",
        killed.ranks()[0],
        sq.quotient_rank,
        sq.relations.rows()
    );
    assert_eq!(sq.quotient_rank, 1);

    // The relation subspace does not depend on how deep we probe.
    let near = stage_quotient_at(&killed, 0, 2)?;
    let far = stage_quotient_at(&killed, 0, 3)?;
    assert_eq!(near.relations, far.relations);
    println!("probing through stage 2 or stage 3 gives the same relations");

    assert!(verify_factorization(&killed)?);
    println!("transitions descend to the quotient tower");
    Ok(())
}
