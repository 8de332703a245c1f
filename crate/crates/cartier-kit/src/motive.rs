//! Hopf pairings and smash products.
//!
//! A [`HopfPairing`] is a bilinear form `u: A (x) B -> R` between two Hopf
//! algebras, stored as a single row vector on the flat tensor basis.  When
//! the four pairing diagrams hold ([`verify_hopf_pairing`]) the form twists
//! the tensor product algebra into the smash product `A # B` ([`smash`]),
//! whose product is
//!
//! ```text
//! (a # b)(a' # b') = sum u(a'_(1) (x) b_(1)) . (a a'_(2)) # (b_(2) b')
//! ```
//!
//! [`smash_swap_iso`] builds the explicit algebra isomorphism
//! `A # B -> B # A`, `phi(a # b) = sum u(a_(1) (x) iota b_(1)) .
//! iota(b_(2)) # a_(2)`, where the mirrored smash product on the right uses
//! the form `u . tau`.  The isomorphism is verified, not assumed.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactlin::{invert, perm_legs, tensor_swap, SparseMatrix};
use crate::hopf::{verify_hopf, AssocAlgebraData, HopfAlgebraData};

/// Two Hopf algebras and a bilinear form `u` on their tensor product.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HopfPairing {
    pub a: HopfAlgebraData,
    pub b: HopfAlgebraData,
    /// Row vector of shape `1 x (rank_a * rank_b)` on flat indices.
    pub u: SparseMatrix,
}

impl HopfPairing {
    /// Bundles a pairing after checking that both sides are genuine Hopf
    /// algebras over a common ring and that `u` has the right shape.
    pub fn new(a: HopfAlgebraData, b: HopfAlgebraData, u: SparseMatrix) -> Result<Self> {
        if a.ring != b.ring || u.ring() != a.ring {
            return Err(Error::RingMismatch);
        }
        for h in [&a, &b] {
            let report = verify_hopf(h)?;
            if !report.axioms_hold() {
                return Err(Error::NotAHopfAlgebra(format!("{:?}", report)));
            }
        }
        let p = HopfPairing { a, b, u };
        p.check_shapes()?;
        Ok(p)
    }

    pub fn check_shapes(&self) -> Result<()> {
        self.a.check_shapes()?;
        self.b.check_shapes()?;
        if self.u.ring() != self.a.ring || self.a.ring != self.b.ring {
            return Err(Error::RingMismatch);
        }
        if self.u.rows() != 1 || self.u.cols() != self.a.rank * self.b.rank {
            return Err(Error::ShapeError(format!(
                "pairing form has shape {}x{}, expected 1x{}",
                self.u.rows(),
                self.u.cols(),
                self.a.rank * self.b.rank
            )));
        }
        Ok(())
    }
}

/// Truth of the four Hopf pairing diagrams.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PairingReport {
    /// `u (mul_A (x) 1) = (u (x) u)(1 (x) tau (x) 1)(1 (x) 1 (x) comul_B)`.
    pub mul_a_vs_comul_b: bool,
    /// `u (1 (x) mul_B) = (u (x) u)(1 (x) tau (x) 1)(comul_A (x) 1 (x) 1)`.
    pub mul_b_vs_comul_a: bool,
    /// `u (unit_A (x) 1) = counit_B`.
    pub unit_a_vs_counit_b: bool,
    /// `u (1 (x) unit_B) = counit_A`.
    pub unit_b_vs_counit_a: bool,
}

impl PairingReport {
    pub fn all(&self) -> bool {
        self.mul_a_vs_comul_b
            && self.mul_b_vs_comul_a
            && self.unit_a_vs_counit_b
            && self.unit_b_vs_counit_a
    }
}

/// Evaluates the four pairing diagrams as exact matrix identities.
pub fn verify_hopf_pairing(p: &HopfPairing) -> Result<PairingReport> {
    p.check_shapes()?;
    let ring = p.a.ring;
    let (na, nb) = (p.a.rank, p.b.rank);
    let id_a = SparseMatrix::identity(ring, na);
    let id_b = SparseMatrix::identity(ring, nb);
    let uu = p.u.kron(&p.u)?;
    let middle = perm_legs(ring, &[na, na, nb, nb], &[0, 2, 1, 3]);

    // On a (x) a' (x) c: u(a a' (x) c) = sum u(a (x) c_(1)) u(a' (x) c_(2)).
    let lhs1 = p.u.mat_mul(&p.a.mul.kron(&id_b)?)?;
    let rhs1 = uu
        .mat_mul(&middle)?
        .mat_mul(&SparseMatrix::identity(ring, na * na).kron(&p.b.comul)?)?;
    // On a (x) c (x) c': u(a (x) c c') = sum u(a_(1) (x) c) u(a_(2) (x) c').
    let lhs2 = p.u.mat_mul(&id_a.kron(&p.b.mul)?)?;
    let rhs2 = uu
        .mat_mul(&middle)?
        .mat_mul(&p.a.comul.kron(&SparseMatrix::identity(ring, nb * nb))?)?;

    Ok(PairingReport {
        mul_a_vs_comul_b: lhs1 == rhs1,
        mul_b_vs_comul_a: lhs2 == rhs2,
        unit_a_vs_counit_b: p.u.mat_mul(&p.a.unit.kron(&id_b)?)? == p.b.counit,
        unit_b_vs_counit_a: p.u.mat_mul(&id_a.kron(&p.b.unit)?)? == p.a.counit,
    })
}

/// The pairing with the two sides exchanged: the form becomes `u . tau`.
pub fn mirror(p: &HopfPairing) -> Result<HopfPairing> {
    let swap = tensor_swap(p.a.ring, p.b.rank, p.a.rank);
    Ok(HopfPairing {
        a: p.b.clone(),
        b: p.a.clone(),
        u: p.u.mat_mul(&swap)?,
    })
}

fn smash_labels(p: &HopfPairing) -> Vec<String> {
    let mut labels = Vec::with_capacity(p.a.rank * p.b.rank);
    for la in &p.a.basis_labels {
        for lb in &p.b.basis_labels {
            labels.push(format!("{}#{}", la, lb));
        }
    }
    labels
}

/// Smash product algebra `A # B` of a verified Hopf pairing.
///
/// The structure constants are assembled in one pass: comultiply the inner
/// factors, route `a'_(1) (x) b_(1)` into the form and the remaining legs
/// into the two products, then contract.  Associativity and the unit law
/// are re-verified on the result before it is returned.
pub fn smash(p: &HopfPairing) -> Result<AssocAlgebraData> {
    let report = verify_hopf_pairing(p)?;
    if !report.all() {
        return Err(Error::NotAHopfPairing(format!("{:?}", report)));
    }
    let ring = p.a.ring;
    let (na, nb) = (p.a.rank, p.b.rank);
    let id_a = SparseMatrix::identity(ring, na);
    let id_b = SparseMatrix::identity(ring, nb);

    // Legs after the inner comultiplications: [a, b1, b2, a'1, a'2, b'].
    let spread = id_a
        .kron(&p.b.comul)?
        .kron(&p.a.comul)?
        .kron(&id_b)?;
    // Reorder to [a'1, b1, a, a'2, b2, b'] so that u, mul_A, mul_B contract
    // adjacent pairs.
    let route = perm_legs(ring, &[na, nb, nb, na, na, nb], &[3, 1, 0, 4, 2, 5]);
    let contract = p.u.kron(&p.a.mul)?.kron(&p.b.mul)?;
    let mul = contract.mat_mul(&route)?.mat_mul(&spread)?;
    let unit = p.a.unit.kron(&p.b.unit)?;

    AssocAlgebraData::new(ring, smash_labels(p), mul, unit)
}

/// Tests whether `f` is an isomorphism of associative algebras.
pub fn verify_algebra_iso(
    f: &SparseMatrix,
    a1: &AssocAlgebraData,
    a2: &AssocAlgebraData,
) -> Result<bool> {
    if a1.ring != a2.ring || f.ring() != a1.ring {
        return Err(Error::RingMismatch);
    }
    if a1.rank != a2.rank || f.rows() != a2.rank || f.cols() != a1.rank {
        return Err(Error::ShapeError(format!(
            "map of shape {}x{} cannot compare algebras of ranks {} and {}",
            f.rows(),
            f.cols(),
            a1.rank,
            a2.rank
        )));
    }
    if invert(f).is_err() {
        return Ok(false);
    }
    Ok(f.mat_mul(&a1.mul)? == a2.mul.mat_mul(&f.kron(f)?)?
        && f.mat_mul(&a1.unit)? == a2.unit)
}

/// The matrix of `phi: A # B -> B # A`,
/// `phi(a # b) = sum u(a_(1) (x) iota b_(1)) . iota(b_(2)) # a_(2)`,
/// verified to be an algebra isomorphism onto the mirrored smash product
/// before it is returned.
pub fn smash_swap_iso(p: &HopfPairing) -> Result<SparseMatrix> {
    let report = verify_hopf_pairing(p)?;
    if !report.all() {
        return Err(Error::NotAHopfPairing(format!("{:?}", report)));
    }
    let ring = p.a.ring;
    let (na, nb) = (p.a.rank, p.b.rank);

    // Legs after comultiplying both inputs: [a1, a2, b1, b2]; apply the
    // antipode to both halves of b, route [a1, ib1, ib2, a2], contract the
    // first pair through u.
    let spread = p.a.comul.kron(&p.b.comul)?;
    let twist = SparseMatrix::identity(ring, na * na)
        .kron(&p.b.antipode.kron(&p.b.antipode)?)?;
    let route = perm_legs(ring, &[na, na, nb, nb], &[0, 2, 3, 1]);
    let phi = p
        .u
        .kron(&SparseMatrix::identity(ring, nb * na))?
        .mat_mul(&route)?
        .mat_mul(&twist)?
        .mat_mul(&spread)?;

    let forward = smash(p)?;
    let backward = smash(&mirror(p)?)?;
    if !verify_algebra_iso(&phi, &forward, &backward)? {
        return Err(Error::IsoVerificationFailure(
            "smash swap candidate fails the intertwining identities".into(),
        ));
    }
    Ok(phi)
}
