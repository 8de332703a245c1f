//! Window-relative Mittag-Leffler verdicts.  The inverse system
//!
//! ```text
//! Q[t] <-t- Q[t] <-t- Q[t] <- ...
//! ```
//!
//! (multiplication by t forever, declared through a tail matrix) never
//! stabilizes: each deeper stage shrinks the image to a higher power of t.
//! A system with surjective transitions stabilizes immediately.
//!
//! ```text
//! cargo run --example ml_window
//! ```

use cartier_kit::exactlin::{BaseRing, Scalar, SparseMatrix};
use cartier_kit::modsys::{ml_verdict, MlStatus, ProSystem};

fn main() -> cartier_kit::Result<()> {
    let qt = BaseRing::RationalPolynomials;
    let t = SparseMatrix::from_entries(qt, 1, 1, vec![(0, 0, Scalar::t())])?;
    let tail = ProSystem::new(qt, vec![1, 1], vec![t.clone()], Some(t))?;

    for window in [2, 4, 8, 16] {
        let verdict = ml_verdict(&tail, window)?;
        let stabilized = verdict
            .records
            .iter()
            .filter(|r| matches!(r.status, MlStatus::StabilizedAt(_)))
            .count();
        println!(
            "t-tail, window {:>2}: {} of {} stages stabilized",
            window,
            stabilized,
            verdict.records.len()
        );
        assert_eq!(stabilized, 0);
    }

    // Surjective transitions: image chains are constant, every stage
    // stabilizes one step in.
    let q = BaseRing::Rationals;
    let proj = SparseMatrix::from_i64_rows(q, &[&[1, 0], &[0, 1]]);
    let drop = SparseMatrix::from_i64_rows(q, &[&[1, 0, 0], &[0, 1, 0]]);
    let surj = ProSystem::new(q, vec![2, 2, 3], vec![proj, drop], None)?;
    let verdict = ml_verdict(&surj, 2)?;
    for r in &verdict.records {
        println!("surjective system, stage {}: {:?}", r.stage, r.status);
        assert_eq!(r.status, MlStatus::StabilizedAt(r.stage + 1));
    }
    Ok(())
}
