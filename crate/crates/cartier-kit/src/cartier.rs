//! The Cartier duality pairing at finite rank.
//!
//! A [`CartierPairing`] bundles a Hopf algebra with its linear dual and the
//! canonical unit element, the vectorized identity matrix sitting inside
//! `A^dual (x) A`.  The four grouplike equations of the pairing are exact
//! vector identities ([`verify_cartier_equations`]); they hold precisely
//! when the stored dual maps really are the transposes of the source maps,
//! so tampering with the dual is detected.
//!
//! Over a finite ring the duality theorem becomes finite combinatorics:
//! [`points`] enumerates algebra homomorphisms into a test algebra by a
//! pruned exhaustive search, and [`duality_bijection`] enumerates the
//! grouplike elements of `A^dual (x) B` by an independent search and checks
//! that `f |-> (1 (x) f) . unit` matches the two sets up exactly.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactlin::{perm_legs, BaseRing, Scalar, SparseMatrix};
use crate::hopf::{dual_hopf, AssocAlgebraData, HopfAlgebraData};

/// A Hopf algebra, its dual, and the canonical unit element between them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CartierPairing {
    pub source: HopfAlgebraData,
    pub dual: HopfAlgebraData,
    /// Element of `A^dual (x) A` on flat indices: the vectorized identity.
    pub unit_vec: SparseMatrix,
}

/// Builds the Cartier pairing of a verified Hopf algebra.
pub fn cartier_unit(h: &HopfAlgebraData) -> Result<CartierPairing> {
    let dual = dual_hopf(h)?;
    Ok(CartierPairing {
        source: h.clone(),
        dual,
        unit_vec: SparseMatrix::identity(h.ring, h.rank).vectorize(),
    })
}

/// Truth of the four grouplike equations of the pairing, in the order
/// coproduct, unit, product, counit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CartierEquations {
    pub comul_eq: bool,
    pub unit_eq: bool,
    pub mul_eq: bool,
    pub counit_eq: bool,
}

impl CartierEquations {
    pub fn all(&self) -> bool {
        self.comul_eq && self.unit_eq && self.mul_eq && self.counit_eq
    }
}

/// Checks that the unit element is grouplike with respect to each tensor
/// factor, phrased against the *stored* dual maps:
///
/// 1. `(1 (x) Delta) unit_A = (Delta^dual (x) 1) unit_{A(x)A}`
/// 2. `(1 (x) eta) unit_R = (eta^dual (x) 1) unit_A`
/// 3. `(1 (x) mul) unit_{A(x)A} = (mul^dual (x) 1) unit_A`
/// 4. `(1 (x) eps) unit_A = (eps^dual (x) 1) unit_R`
///
/// Each equation pins one stored dual map to the transpose of the matching
/// source map, so the report is all-true exactly when the pairing is
/// untampered (the antipode is not constrained by these four).
pub fn verify_cartier_equations(p: &CartierPairing) -> Result<CartierEquations> {
    p.source.check_shapes()?;
    p.dual.check_shapes()?;
    if p.source.ring != p.dual.ring || p.unit_vec.ring() != p.source.ring {
        return Err(Error::RingMismatch);
    }
    let n = p.source.rank;
    if p.dual.rank != n {
        return Err(Error::ShapeError(format!(
            "dual rank {} differs from source rank {}",
            p.dual.rank, n
        )));
    }
    if p.unit_vec.rows() != n * n || p.unit_vec.cols() != 1 {
        return Err(Error::ShapeError(format!(
            "unit vector has shape {}x{}, expected {}x1",
            p.unit_vec.rows(),
            p.unit_vec.cols(),
            n * n
        )));
    }
    let ring = p.source.ring;
    let id_n = SparseMatrix::identity(ring, n);
    let id_nn = SparseMatrix::identity(ring, n * n);
    let unit_a = &p.unit_vec;
    let unit_aa = id_nn.vectorize();
    let unit_r = SparseMatrix::identity(ring, 1);

    let comul_eq = id_n.kron(&p.source.comul)?.mat_mul(unit_a)?
        == p.dual.mul.kron(&id_nn)?.mat_mul(&unit_aa)?;
    let unit_eq =
        p.source.unit == p.dual.counit.kron(&id_n)?.mat_mul(unit_a)?;
    let mul_eq = id_nn.kron(&p.source.mul)?.mat_mul(&unit_aa)?
        == p.dual.comul.kron(&id_n)?.mat_mul(unit_a)?;
    let counit_eq = id_n.kron(&p.source.counit)?.mat_mul(unit_a)?
        == p.dual.unit.mat_mul(&unit_r)?;

    Ok(CartierEquations { comul_eq, unit_eq, mul_eq, counit_eq })
}

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// A system of homomorphism constraints over Z/m: `chunks` unknown vectors
/// `X_0, ..., X_{chunks-1}` of length `dim`, subject to
/// `sum_k c_k X_k = mul_B (X_i (x) X_j)` for every pair `(i, j)` (with the
/// coefficients `c_k` taken from `pair_support[i*chunks + j]`) and to
/// `sum_k u_k X_k = unit_B`.
///
/// Columns of an algebra hom out of a Hopf algebra satisfy exactly this,
/// and so do the stage components of a grouplike element of the dualized
/// algebra tensored with B; the two call sites extract their coefficients
/// from different matrices.
struct HomSystem {
    modulus: u64,
    chunks: usize,
    dim: usize,
    pair_support: Vec<Vec<(usize, u64)>>,
    unit_support: Vec<(usize, u64)>,
    b_mul: Vec<Vec<u64>>,
    b_unit: Vec<u64>,
}

impl HomSystem {
    fn residues(m: &SparseMatrix) -> Result<BTreeMap<(usize, usize), u64>> {
        m.iter()
            .map(|(i, j, s)| {
                s.residue()
                    .map(|r| ((i, j), r))
                    .ok_or(Error::InfiniteRing)
            })
            .collect()
    }

    fn new(
        modulus: u64,
        chunks: usize,
        pair_support: Vec<Vec<(usize, u64)>>,
        unit_support: Vec<(usize, u64)>,
        b: &AssocAlgebraData,
    ) -> Result<HomSystem> {
        let dim = b.rank;
        let mut b_mul = vec![vec![0u64; dim * dim]; dim];
        for ((i, j), r) in Self::residues(&b.mul)? {
            b_mul[i][j] = r;
        }
        let mut b_unit = vec![0u64; dim];
        for ((i, _), r) in Self::residues(&b.unit)? {
            b_unit[i] = r;
        }
        Ok(HomSystem { modulus, chunks, dim, pair_support, unit_support, b_mul, b_unit })
    }

    /// Constraints for the columns of an algebra homomorphism `h -> b`.
    fn for_points(h: &HopfAlgebraData, b: &AssocAlgebraData, modulus: u64) -> Result<HomSystem> {
        let n = h.rank;
        let mut pair_support = vec![Vec::new(); n * n];
        for ((k, ij), r) in Self::residues(&h.mul)? {
            pair_support[ij].push((k, r));
        }
        let unit_support = Self::residues(&h.unit)?
            .into_iter()
            .map(|((k, _), r)| (k, r))
            .collect();
        Self::new(modulus, n, pair_support, unit_support, b)
    }

    /// Constraints for the components of a grouplike element of
    /// `dual (x) b`, read off the dual's coproduct and counit.
    fn for_grouplikes(
        dual: &HopfAlgebraData,
        b: &AssocAlgebraData,
        modulus: u64,
    ) -> Result<HomSystem> {
        let n = dual.rank;
        let mut pair_support = vec![Vec::new(); n * n];
        for ((ij, k), r) in Self::residues(&dual.comul)? {
            pair_support[ij].push((k, r));
        }
        let unit_support = Self::residues(&dual.counit)?
            .into_iter()
            .map(|((_, k), r)| (k, r))
            .collect();
        Self::new(modulus, n, pair_support, unit_support, b)
    }

    /// Depth (number of assigned chunks) at which a constraint can first be
    /// evaluated.
    fn ready_at(&self, constraint: usize) -> usize {
        if constraint == self.chunks * self.chunks {
            return self
                .unit_support
                .iter()
                .map(|(k, _)| k + 1)
                .max()
                .unwrap_or(0);
        }
        let (i, j) = (constraint / self.chunks, constraint % self.chunks);
        let deepest = self.pair_support[constraint]
            .iter()
            .map(|(k, _)| *k)
            .max()
            .unwrap_or(0);
        i.max(j).max(deepest) + 1
    }

    fn holds(&self, constraint: usize, cols: &[Vec<u64>]) -> bool {
        let m = self.modulus;
        if constraint == self.chunks * self.chunks {
            for d in 0..self.dim {
                let mut lhs = 0u64;
                for &(k, c) in &self.unit_support {
                    lhs = (lhs + mulmod(c, cols[k][d], m)) % m;
                }
                if lhs != self.b_unit[d] {
                    return false;
                }
            }
            return true;
        }
        let (i, j) = (constraint / self.chunks, constraint % self.chunks);
        let mut kron = vec![0u64; self.dim * self.dim];
        for a in 0..self.dim {
            for bb in 0..self.dim {
                kron[a * self.dim + bb] = mulmod(cols[i][a], cols[j][bb], m);
            }
        }
        for d in 0..self.dim {
            let mut lhs = 0u64;
            for &(k, c) in &self.pair_support[constraint] {
                lhs = (lhs + mulmod(c, cols[k][d], m)) % m;
            }
            let mut rhs = 0u64;
            for (ab, v) in kron.iter().enumerate() {
                rhs = (rhs + mulmod(self.b_mul[d][ab], *v, m)) % m;
            }
            if lhs != rhs {
                return false;
            }
        }
        true
    }

    /// Exhaustive backtracking search: assigns chunk vectors in order,
    /// evaluating every constraint as soon as all the chunks it mentions
    /// exist.  Pruning never drops solutions because constraints only ever
    /// involve already-assigned chunks when checked.
    fn solve(&self) -> Vec<Vec<Vec<u64>>> {
        let mut ready = vec![Vec::new(); self.chunks + 1];
        for c in 0..=self.chunks * self.chunks {
            ready[self.ready_at(c)].push(c);
        }
        let mut cols: Vec<Vec<u64>> = Vec::new();
        let mut out = Vec::new();
        self.dfs(&ready, &mut cols, &mut out);
        out
    }

    fn dfs(&self, ready: &[Vec<usize>], cols: &mut Vec<Vec<u64>>, out: &mut Vec<Vec<Vec<u64>>>) {
        let depth = cols.len();
        for &c in &ready[depth] {
            if !self.holds(c, cols) {
                return;
            }
        }
        if depth == self.chunks {
            out.push(cols.clone());
            return;
        }
        let mut cand = vec![0u64; self.dim];
        loop {
            cols.push(cand.clone());
            self.dfs(ready, cols, out);
            cols.pop();
            let mut pos = self.dim;
            loop {
                if pos == 0 {
                    return;
                }
                pos -= 1;
                cand[pos] += 1;
                if cand[pos] < self.modulus {
                    break;
                }
                cand[pos] = 0;
            }
        }
    }
}

fn finite_modulus(ring: BaseRing) -> Result<u64> {
    match ring {
        BaseRing::IntegersMod(m) => Ok(m),
        _ => Err(Error::InfiniteRing),
    }
}

fn vector_sort_key(m: &SparseMatrix) -> Vec<u64> {
    let mut key = vec![0u64; m.rows() * m.cols()];
    for (i, j, s) in m.iter() {
        key[i * m.cols() + j] = s.residue().expect("finite ring");
    }
    key
}

/// All algebra homomorphisms from the underlying algebra of `h` into `b`,
/// as `b.rank x h.rank` matrices in lexicographic order of their row-major
/// vectorizations.  Exhaustive search, finite rings only.
pub fn points(h: &HopfAlgebraData, b: &AssocAlgebraData) -> Result<Vec<SparseMatrix>> {
    if h.ring != b.ring {
        return Err(Error::RingMismatch);
    }
    let modulus = finite_modulus(h.ring)?;
    h.check_shapes()?;
    let system = HomSystem::for_points(h, b, modulus)?;
    let mut out = Vec::new();
    for cols in system.solve() {
        let mut entries = Vec::new();
        for (i, col) in cols.iter().enumerate() {
            for (a, v) in col.iter().enumerate() {
                if *v != 0 {
                    entries.push((a, i, Scalar::from_i64(h.ring, *v as i64)));
                }
            }
        }
        out.push(SparseMatrix::from_entries(h.ring, b.rank, h.rank, entries)?);
    }
    out.sort_by(|x, y| vector_sort_key(x).cmp(&vector_sort_key(y)));
    Ok(out)
}

/// Matrix-level grouplike test in `dual (x) b`: the coproduct of the dual,
/// extended b-bilinearly, must send `g` to `g (x)_b g`, and the extended
/// counit must send it to the unit of `b`.
fn tensor_grouplike_holds(
    dual: &HopfAlgebraData,
    b: &AssocAlgebraData,
    g: &SparseMatrix,
) -> Result<bool> {
    let ring = dual.ring;
    let n = dual.rank;
    let nb = b.rank;
    let id_b = SparseMatrix::identity(ring, nb);
    let lhs = dual.comul.kron(&id_b)?.mat_mul(g)?;
    let regroup = perm_legs(ring, &[n, nb, n, nb], &[0, 2, 1, 3]);
    let rhs = SparseMatrix::identity(ring, n * n)
        .kron(&b.mul)?
        .mat_mul(&regroup)?
        .mat_mul(&g.kron(g)?)?;
    let counit_side = dual.counit.kron(&id_b)?.mat_mul(g)?;
    Ok(lhs == rhs && counit_side == b.unit)
}

/// Outcome of the duality comparison between points and grouplikes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DualityReport {
    pub points_count: usize,
    pub grouplikes_count: usize,
    pub bijection_verified: bool,
}

/// Enumerates `points(h, b)` and, independently, the grouplike elements of
/// `dual_hopf(h) (x) b`, then verifies that `f |-> (1 (x) f) . unit` is a
/// bijection between the two sets.
pub fn duality_bijection(h: &HopfAlgebraData, b: &AssocAlgebraData) -> Result<DualityReport> {
    if h.ring != b.ring {
        return Err(Error::RingMismatch);
    }
    let modulus = finite_modulus(h.ring)?;
    let pairing = cartier_unit(h)?;
    let homs = points(h, b)?;

    let system = HomSystem::for_grouplikes(&pairing.dual, b, modulus)?;
    let mut grouplike_vecs = Vec::new();
    for chunks in system.solve() {
        let mut entries = Vec::new();
        for (i, chunk) in chunks.iter().enumerate() {
            for (a, v) in chunk.iter().enumerate() {
                if *v != 0 {
                    entries.push((i * b.rank + a, 0, Scalar::from_i64(h.ring, *v as i64)));
                }
            }
        }
        let g = SparseMatrix::from_entries(h.ring, h.rank * b.rank, 1, entries)?;
        if !tensor_grouplike_holds(&pairing.dual, b, &g)? {
            return Err(Error::Invalid(
                "enumerated grouplike fails the matrix-level identity".into(),
            ));
        }
        grouplike_vecs.push(g);
    }
    grouplike_vecs.sort_by(|x, y| vector_sort_key(x).cmp(&vector_sort_key(y)));

    let id_n = SparseMatrix::identity(h.ring, h.rank);
    let mut images = Vec::new();
    for f in &homs {
        images.push(id_n.kron(f)?.mat_mul(&pairing.unit_vec)?);
    }
    images.sort_by(|x, y| vector_sort_key(x).cmp(&vector_sort_key(y)));
    let injective = images.windows(2).all(|w| w[0] != w[1]);
    let bijection_verified = injective && images == grouplike_vecs;

    Ok(DualityReport {
        points_count: homs.len(),
        grouplikes_count: grouplike_vecs.len(),
        bijection_verified,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(ring: BaseRing, v: i64) -> Scalar {
        Scalar::from_i64(ring, v)
    }

    fn mu(ring: BaseRing, n: usize) -> HopfAlgebraData {
        let mut mul = Vec::new();
        let mut comul = Vec::new();
        let mut counit = Vec::new();
        let mut antipode = Vec::new();
        for i in 0..n {
            for j in 0..n {
                mul.push(((i + j) % n, i * n + j, s(ring, 1)));
            }
            comul.push((i * n + i, i, s(ring, 1)));
            counit.push((0, i, s(ring, 1)));
            antipode.push(((n - i) % n, i, s(ring, 1)));
        }
        let labels = (0..n)
            .map(|i| if i == 0 { "1".to_string() } else { format!("x{}", i) })
            .collect();
        HopfAlgebraData::new(
            ring,
            labels,
            SparseMatrix::from_entries(ring, n, n * n, mul).unwrap(),
            SparseMatrix::basis_col(ring, n, 0),
            SparseMatrix::from_entries(ring, n * n, n, comul).unwrap(),
            SparseMatrix::from_entries(ring, 1, n, counit).unwrap(),
            SparseMatrix::from_entries(ring, n, n, antipode).unwrap(),
        )
        .unwrap()
    }

    fn trivial(ring: BaseRing) -> HopfAlgebraData {
        let one = SparseMatrix::identity(ring, 1);
        HopfAlgebraData::new(
            ring,
            vec!["1".into()],
            one.clone(),
            one.clone(),
            one.clone(),
            one.clone(),
            one,
        )
        .unwrap()
    }

    fn base_algebra(ring: BaseRing) -> AssocAlgebraData {
        AssocAlgebraData::new(
            ring,
            vec!["1".into()],
            SparseMatrix::identity(ring, 1),
            SparseMatrix::identity(ring, 1),
        )
        .unwrap()
    }

    #[test]
    fn unit_vector_is_the_vectorized_identity() {
        let q = BaseRing::Rationals;
        let p = cartier_unit(&trivial(q)).unwrap();
        assert_eq!(p.unit_vec, SparseMatrix::identity(q, 1));

        let p2 = cartier_unit(&mu(BaseRing::Integers, 2)).unwrap();
        assert_eq!(p2.unit_vec.get(0, 0), s(BaseRing::Integers, 1));
        assert_eq!(p2.unit_vec.get(3, 0), s(BaseRing::Integers, 1));
        assert_eq!(p2.unit_vec.nnz(), 2);

        let p3 = cartier_unit(&mu(q, 3)).unwrap();
        assert_eq!(p3.unit_vec.nnz(), 3);
        assert!(p3.unit_vec.iter().all(|(_, _, v)| v.is_one()));
    }

    #[test]
    fn cartier_equations_hold_and_detect_tampering() {
        for h in [trivial(BaseRing::Rationals), mu(BaseRing::Integers, 2), mu(BaseRing::IntegersMod(4), 3)] {
            let p = cartier_unit(&h).unwrap();
            let eqs = verify_cartier_equations(&p).unwrap();
            assert!(eqs.all(), "{:?}", eqs);
        }

        let mut tampered = cartier_unit(&mu(BaseRing::Integers, 2)).unwrap();
        tampered.dual.comul = SparseMatrix::zero(BaseRing::Integers, 4, 2);
        let eqs = verify_cartier_equations(&tampered).unwrap();
        assert!(!eqs.all());
        assert!(!eqs.mul_eq);
        assert!(eqs.comul_eq && eqs.unit_eq && eqs.counit_eq);
    }

    #[test]
    fn points_of_mu_are_roots_of_unity() {
        let f3 = BaseRing::IntegersMod(3);
        let homs = points(&mu(f3, 2), &base_algebra(f3)).unwrap();
        assert_eq!(homs.len(), 2);
        // Sorted by vectorization: (1,1) before (1,2).
        assert_eq!(homs[0], SparseMatrix::from_i64_rows(f3, &[&[1, 1]]));
        assert_eq!(homs[1], SparseMatrix::from_i64_rows(f3, &[&[1, 2]]));

        let f2 = BaseRing::IntegersMod(2);
        assert_eq!(points(&mu(f2, 3), &base_algebra(f2)).unwrap().len(), 1);
        assert_eq!(points(&trivial(f2), &base_algebra(f2)).unwrap().len(), 1);
    }

    #[test]
    fn points_require_a_finite_shared_ring() {
        let q = BaseRing::Rationals;
        assert!(matches!(
            points(&mu(q, 2), &base_algebra(q)),
            Err(Error::InfiniteRing)
        ));
        assert!(matches!(
            points(&mu(BaseRing::IntegersMod(3), 2), &base_algebra(BaseRing::IntegersMod(5))),
            Err(Error::RingMismatch)
        ));
    }

    #[test]
    fn duality_bijection_on_small_examples() {
        let f3 = BaseRing::IntegersMod(3);
        let report = duality_bijection(&mu(f3, 2), &base_algebra(f3)).unwrap();
        assert_eq!(report.points_count, 2);
        assert_eq!(report.grouplikes_count, 2);
        assert!(report.bijection_verified);

        let f2 = BaseRing::IntegersMod(2);
        let report = duality_bijection(&trivial(f2), &base_algebra(f2)).unwrap();
        assert_eq!((report.points_count, report.grouplikes_count), (1, 1));
        assert!(report.bijection_verified);

        // Functions on Z/2 = the dual of mu_2: its points are the two group
        // elements.
        let funcs = dual_hopf(&mu(f3, 2)).unwrap();
        let report = duality_bijection(&funcs, &base_algebra(f3)).unwrap();
        assert_eq!((report.points_count, report.grouplikes_count), (2, 2));
        assert!(report.bijection_verified);
    }

    #[test]
    fn grouplikes_of_the_tensor_side_match_plain_grouplikes() {
        // With b the base ring itself, grouplikes of dual (x) b are just the
        // grouplikes of the dual Hopf algebra.
        let f5 = BaseRing::IntegersMod(5);
        let h = mu(f5, 4);
        let report = duality_bijection(&h, &base_algebra(f5)).unwrap();
        let direct = crate::hopf::grouplikes(&dual_hopf(&h).unwrap()).unwrap();
        assert_eq!(report.grouplikes_count, direct.len());
        assert!(report.bijection_verified);
    }
}
