//! Build the canonical pairing unit of a Hopf algebra with its dual and
//! verify the four equations that make it grouplike in each tensor factor.
//! Tampering with a stored dual map flips exactly the matching equation.
//!
//! ```text
//! cargo run --example cartier_pairing
//! ```

use cartier_kit::cartier::{cartier_unit, verify_cartier_equations};
use cartier_kit::catalog;
use cartier_kit::exactlin::{BaseRing, Scalar};

fn main() -> cartier_kit::Result<()> {
    for ring in [BaseRing::IntegersMod(4), BaseRing::Rationals, BaseRing::Integers] {
        for n in 1..=5 {
            let pairing = cartier_unit(&catalog::mu_n(ring, n))?;
            let eqs = verify_cartier_equations(&pairing)?;
            assert!(eqs.all());
            println!("mu_{} over {:<4}  all four equations hold", n, ring.token());
        }
    }

    let alpha = catalog::alpha(5, 1)?;
    let pairing = cartier_unit(&alpha)?;
    assert!(verify_cartier_equations(&pairing)?.all());
    println!("alpha(5,1)       all four equations hold");

    // Scale the stored dual multiplication: the unit element is no longer
    // grouplike for the comultiplication of the source factor, and only
    // that equation reacts.
    let mut tampered = cartier_unit(&catalog::mu_n(BaseRing::Rationals, 3))?;
    tampered.dual.mul = tampered
        .dual
        .mul
        .scale(&Scalar::from_i64(BaseRing::Rationals, 2))?;
    let eqs = verify_cartier_equations(&tampered)?;
    println!(
        "tampered dual mul: comul_eq {}, unit_eq {}, mul_eq {}, counit_eq {}",
        eqs.comul_eq, eqs.unit_eq, eqs.mul_eq, eqs.counit_eq
    );
    assert!(!eqs.comul_eq && eqs.unit_eq && eqs.mul_eq && eqs.counit_eq);
    Ok(())
}
