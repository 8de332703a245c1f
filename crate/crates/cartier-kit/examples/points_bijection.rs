//! Enumerate the B-points of a group scheme and match them, one for one,
//! with the grouplikes of the dual Hopf algebra tensored with B.  The two
//! sides are enumerated independently and compared as sets.
//!
//! ```text
//! cargo run --example points_bijection
//! ```

use cartier_kit::cartier::{duality_bijection, points};
use cartier_kit::catalog;
use cartier_kit::exactlin::BaseRing;

fn main() -> cartier_kit::Result<()> {
    let f5 = BaseRing::IntegersMod(5);
    let h = catalog::mu_n(f5, 4);

    for (name, algebra) in [
        ("F_5 itself", catalog::scalar_algebra(f5)),
        ("dual numbers", catalog::dual_numbers(f5)),
        ("functions on 2 points", catalog::split_pair(f5)),
    ] {
        let report = duality_bijection(&h, &algebra)?;
        println!(
            "mu_4(F_5) points in {:<22} {:>2} points, {:>2} grouplikes, bijection {}",
            name, report.points_count, report.grouplikes_count, report.bijection_verified
        );
        assert!(report.bijection_verified);
    }

    // mu_4 over F_5: the solutions of t^4 = 1 are all of F_5^*, so there
    // are four scalar points; each one is a 1x4 evaluation row.
    let pts = points(&h, &catalog::scalar_algebra(f5))?;
    assert_eq!(pts.len(), 4);
    for p in &pts {
        let row: Vec<u64> = (0..4).map(|j| p.get(0, j).residue().unwrap()).collect();
        println!("point row (values on 1, x, x2, x3): {:?}", row);
    }
    Ok(())
}
