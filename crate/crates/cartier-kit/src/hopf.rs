//! Finite free Hopf algebras as explicit structure-constant data.
//!
//! A Hopf algebra of rank `n` is stored as five matrices over the base
//! ring: multiplication `n x n^2`, unit `n x 1`, comultiplication
//! `n^2 x n`, counit `1 x n` and antipode `n x n`, with tensor legs
//! flattened by the global row-major convention.  Every axiom is then a
//! finite matrix identity, checked exactly by [`verify_hopf`], and linear
//! duality is literally transposition ([`dual_hopf`]).

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactlin::{invert, perm_legs, tensor_swap, BaseRing, Scalar, SparseMatrix};

/// Structure-constant presentation of a finite free Hopf algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HopfAlgebraData {
    pub ring: BaseRing,
    pub rank: usize,
    pub basis_labels: Vec<String>,
    /// Product, shape `rank x rank^2`.
    pub mul: SparseMatrix,
    /// Unit, shape `rank x 1`.
    pub unit: SparseMatrix,
    /// Coproduct, shape `rank^2 x rank`.
    pub comul: SparseMatrix,
    /// Counit, shape `1 x rank`.
    pub counit: SparseMatrix,
    /// Antipode, shape `rank x rank`.
    pub antipode: SparseMatrix,
}

/// An associative unital algebra given by structure constants; the target
/// of point functors and the carrier of smash products.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AssocAlgebraData {
    pub ring: BaseRing,
    pub rank: usize,
    pub basis_labels: Vec<String>,
    pub mul: SparseMatrix,
    pub unit: SparseMatrix,
}

fn expect_shape(name: &str, m: &SparseMatrix, ring: BaseRing, rows: usize, cols: usize) -> Result<()> {
    if m.ring() != ring {
        return Err(Error::RingMismatch);
    }
    if m.rows() != rows || m.cols() != cols {
        return Err(Error::ShapeError(format!(
            "{} has shape {}x{}, expected {}x{}",
            name,
            m.rows(),
            m.cols(),
            rows,
            cols
        )));
    }
    Ok(())
}

impl HopfAlgebraData {
    pub fn new(
        ring: BaseRing,
        basis_labels: Vec<String>,
        mul: SparseMatrix,
        unit: SparseMatrix,
        comul: SparseMatrix,
        counit: SparseMatrix,
        antipode: SparseMatrix,
    ) -> Result<Self> {
        let h = HopfAlgebraData {
            ring,
            rank: basis_labels.len(),
            basis_labels,
            mul,
            unit,
            comul,
            counit,
            antipode,
        };
        h.check_shapes()?;
        Ok(h)
    }

    pub fn check_shapes(&self) -> Result<()> {
        let n = self.rank;
        if self.basis_labels.len() != n {
            return Err(Error::ShapeError(format!(
                "{} basis labels for rank {}",
                self.basis_labels.len(),
                n
            )));
        }
        expect_shape("mul", &self.mul, self.ring, n, n * n)?;
        expect_shape("unit", &self.unit, self.ring, n, 1)?;
        expect_shape("comul", &self.comul, self.ring, n * n, n)?;
        expect_shape("counit", &self.counit, self.ring, 1, n)?;
        expect_shape("antipode", &self.antipode, self.ring, n, n)?;
        Ok(())
    }

    /// The underlying associative algebra (product and unit only).
    pub fn algebra(&self) -> AssocAlgebraData {
        AssocAlgebraData {
            ring: self.ring,
            rank: self.rank,
            basis_labels: self.basis_labels.clone(),
            mul: self.mul.clone(),
            unit: self.unit.clone(),
        }
    }
}

impl AssocAlgebraData {
    /// Builds an algebra and verifies associativity and the two-sided unit
    /// law on the spot.
    pub fn new(
        ring: BaseRing,
        basis_labels: Vec<String>,
        mul: SparseMatrix,
        unit: SparseMatrix,
    ) -> Result<Self> {
        let n = basis_labels.len();
        expect_shape("mul", &mul, ring, n, n * n)?;
        expect_shape("unit", &unit, ring, n, 1)?;
        let a = AssocAlgebraData { ring, rank: n, basis_labels, mul, unit };
        a.check_laws()?;
        Ok(a)
    }

    pub fn check_laws(&self) -> Result<()> {
        let id = SparseMatrix::identity(self.ring, self.rank);
        let left = self.mul.mat_mul(&self.mul.kron(&id)?)?;
        let right = self.mul.mat_mul(&id.kron(&self.mul)?)?;
        if left != right {
            return Err(Error::AssociativityFailure(
                "product is not associative".into(),
            ));
        }
        if self.mul.mat_mul(&self.unit.kron(&id)?)? != id
            || self.mul.mat_mul(&id.kron(&self.unit)?)? != id
        {
            return Err(Error::AssociativityFailure(
                "unit law fails for the declared unit".into(),
            ));
        }
        Ok(())
    }
}

/// Truth value of each Hopf axiom, plus the two descriptive symmetry flags.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct HopfReport {
    pub assoc: bool,
    pub unit_law: bool,
    pub coassoc: bool,
    pub counit_law: bool,
    pub bialgebra_compat: bool,
    pub antipode_law: bool,
    pub commutative: bool,
    pub cocommutative: bool,
}

impl HopfReport {
    /// True when the six axioms hold.  Commutativity and cocommutativity
    /// are reported but not required.
    pub fn axioms_hold(&self) -> bool {
        self.assoc
            && self.unit_law
            && self.coassoc
            && self.counit_law
            && self.bialgebra_compat
            && self.antipode_law
    }
}

/// Evaluates every Hopf axiom as an exact matrix identity.
pub fn verify_hopf(h: &HopfAlgebraData) -> Result<HopfReport> {
    h.check_shapes()?;
    let n = h.rank;
    let ring = h.ring;
    let id = SparseMatrix::identity(ring, n);
    let swap = tensor_swap(ring, n, n);

    let assoc = h.mul.mat_mul(&h.mul.kron(&id)?)? == h.mul.mat_mul(&id.kron(&h.mul)?)?;
    let unit_law = h.mul.mat_mul(&h.unit.kron(&id)?)? == id
        && h.mul.mat_mul(&id.kron(&h.unit)?)? == id;
    let coassoc =
        h.comul.kron(&id)?.mat_mul(&h.comul)? == id.kron(&h.comul)?.mat_mul(&h.comul)?;
    let counit_law = h.counit.kron(&id)?.mat_mul(&h.comul)? == id
        && id.kron(&h.counit)?.mat_mul(&h.comul)? == id;

    // Delta . mul = (mul (x) mul) . (1 (x) tau (x) 1) . (Delta (x) Delta),
    // together with the counit/unit halves of bialgebra compatibility.
    let middle_swap = perm_legs(ring, &[n, n, n, n], &[0, 2, 1, 3]);
    let lhs = h.comul.mat_mul(&h.mul)?;
    let rhs = h
        .mul
        .kron(&h.mul)?
        .mat_mul(&middle_swap)?
        .mat_mul(&h.comul.kron(&h.comul)?)?;
    let bialgebra_compat = lhs == rhs
        && h.counit.mat_mul(&h.mul)? == h.counit.kron(&h.counit)?
        && h.comul.mat_mul(&h.unit)? == h.unit.kron(&h.unit)?
        && h.counit.mat_mul(&h.unit)? == SparseMatrix::identity(ring, 1);

    let eta_eps = h.unit.mat_mul(&h.counit)?;
    let antipode_law = h
        .mul
        .mat_mul(&h.antipode.kron(&id)?)?
        .mat_mul(&h.comul)?
        == eta_eps
        && h.mul.mat_mul(&id.kron(&h.antipode)?)?.mat_mul(&h.comul)? == eta_eps;

    let commutative = h.mul.mat_mul(&swap)? == h.mul;
    let cocommutative = swap.mat_mul(&h.comul)? == h.comul;

    Ok(HopfReport {
        assoc,
        unit_law,
        coassoc,
        counit_law,
        bialgebra_compat,
        antipode_law,
        commutative,
        cocommutative,
    })
}

/// Involution on basis labels: `x` gains a trailing caret, `x^` loses it,
/// so the double dual recovers the original labels byte for byte.
fn dual_label(label: &str) -> String {
    match label.strip_suffix('^') {
        Some(base) => base.to_string(),
        None => format!("{}^", label),
    }
}

/// Linear dual Hopf algebra: every structure map is transposed and the
/// roles of product/coproduct and unit/counit exchange.
pub fn dual_hopf(h: &HopfAlgebraData) -> Result<HopfAlgebraData> {
    let report = verify_hopf(h)?;
    if !report.axioms_hold() {
        return Err(Error::NotAHopfAlgebra(format!(
            "cannot dualize: {:?}",
            report
        )));
    }
    Ok(HopfAlgebraData {
        ring: h.ring,
        rank: h.rank,
        basis_labels: h.basis_labels.iter().map(|l| dual_label(l)).collect(),
        mul: h.comul.transpose(),
        unit: h.counit.transpose(),
        comul: h.mul.transpose(),
        counit: h.unit.transpose(),
        antipode: h.antipode.transpose(),
    })
}

/// Decides whether the column vector `g` is grouplike: `Delta g = g (x) g`
/// and `eps g = 1`, both exactly.
pub fn is_grouplike(h: &HopfAlgebraData, g: &SparseMatrix) -> bool {
    assert_eq!(g.ring(), h.ring, "grouplike candidate over the wrong ring");
    assert_eq!((g.rows(), g.cols()), (h.rank, 1), "grouplike candidate shape");
    let square = g.kron(g).expect("same ring");
    h.comul.mat_mul(g).expect("shapes checked") == square
        && h.counit.mat_mul(g).expect("shapes checked") == SparseMatrix::identity(h.ring, 1)
}

/// Exhaustively lists the grouplike elements of a Hopf algebra over a
/// finite ring, in lexicographic order of coordinate vectors.
pub fn grouplikes(h: &HopfAlgebraData) -> Result<Vec<SparseMatrix>> {
    let modulus = match h.ring {
        BaseRing::IntegersMod(m) => m,
        _ => return Err(Error::InfiniteRing),
    };
    let mut found = Vec::new();
    let mut digits = vec![0u64; h.rank];
    loop {
        let entries: Vec<_> = digits
            .iter()
            .enumerate()
            .filter(|(_, d)| **d != 0)
            .map(|(i, d)| (i, 0, Scalar::from_i64(h.ring, *d as i64)))
            .collect();
        let g = SparseMatrix::from_entries(h.ring, h.rank, 1, entries)?;
        if is_grouplike(h, &g) {
            found.push(g);
        }
        let mut pos = h.rank;
        loop {
            if pos == 0 {
                return Ok(found);
            }
            pos -= 1;
            digits[pos] += 1;
            if digits[pos] < modulus {
                break;
            }
            digits[pos] = 0;
        }
    }
}

/// Tests whether `f` is an isomorphism of Hopf algebras from `h1` to `h2`:
/// invertible and intertwining all five structure maps.
pub fn hopf_iso_check(
    h1: &HopfAlgebraData,
    h2: &HopfAlgebraData,
    f: &SparseMatrix,
) -> Result<bool> {
    if h1.ring != h2.ring || f.ring() != h1.ring {
        return Err(Error::RingMismatch);
    }
    h1.check_shapes()?;
    h2.check_shapes()?;
    if h1.rank != h2.rank {
        return Err(Error::ShapeError(format!(
            "ranks {} and {} differ",
            h1.rank, h2.rank
        )));
    }
    if f.rows() != h1.rank || f.cols() != h1.rank {
        return Err(Error::ShapeError(format!(
            "map has shape {}x{}, expected {}x{}",
            f.rows(),
            f.cols(),
            h1.rank,
            h1.rank
        )));
    }
    if invert(f).is_err() {
        return Ok(false);
    }
    let ff = f.kron(f)?;
    Ok(f.mat_mul(&h1.mul)? == h2.mul.mat_mul(&ff)?
        && f.mat_mul(&h1.unit)? == h2.unit
        && ff.mat_mul(&h1.comul)? == h2.comul.mat_mul(f)?
        && h2.counit.mat_mul(f)? == h1.counit
        && f.mat_mul(&h1.antipode)? == h2.antipode.mat_mul(f)?)
}
