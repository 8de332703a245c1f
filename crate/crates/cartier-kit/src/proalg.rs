//! Pro-algebra presentations and their stage quotients.
//!
//! A [`ProAlgebraPresentation`] is a finite window onto a pro-algebra over a
//! field: finite stages `M_0 <- M_1 <- ... <- M_k` with surjective
//! transitions, stagewise multiplications `mu_i: M_{i+1} (x) M_{i+1} -> M_i`
//! compatible with the transitions, and a compatible family of units.
//!
//! The point of the window is that each stage carries an honest algebra
//! quotient.  Writing `phi_{ab}` for composite transitions and `mu_{ab}` for
//! the induced two-stage products, the subspace
//!
//! ```text
//! W_a = mu3(M_b (x) ker(phi_{ab}) (x) M_b),    b = a + 2,
//! ```
//!
//! is independent of the choice of `b` (given the headroom), and
//! `A_a = M_a / W_a` inherits an associative unital multiplication from
//! `mu_{ab}`.  [`stage_quotients`] computes these quotients with explicit
//! projections; [`verify_factorization`] confirms that the transitions
//! descend, so the `A_a` again form a tower.

use crate::error::{Error, Result};
use crate::exactlin::{
    canonical_row_form, is_prime, kernel_basis, image_subset, is_surjective, solve_right,
    BaseRing, Scalar, SparseMatrix,
};

/// A finite window of a pro-algebra over a field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProAlgebraPresentation {
    ring: BaseRing,
    ranks: Vec<usize>,
    transitions: Vec<SparseMatrix>,
    mults: Vec<SparseMatrix>,
    units: Vec<SparseMatrix>,
}

impl ProAlgebraPresentation {
    /// Validates the window: field coefficients, surjective transitions,
    /// multiplication/transition compatibility and the stagewise unit laws.
    pub fn new(
        ring: BaseRing,
        ranks: Vec<usize>,
        transitions: Vec<SparseMatrix>,
        mults: Vec<SparseMatrix>,
        units: Vec<SparseMatrix>,
    ) -> Result<Self> {
        let field = matches!(ring, BaseRing::Rationals)
            || matches!(ring, BaseRing::IntegersMod(p) if is_prime(p));
        if !field {
            return Err(Error::NotAField);
        }
        if ranks.is_empty() {
            return Err(Error::Invalid("a presentation needs at least one stage".into()));
        }
        let k = ranks.len() - 1;
        if transitions.len() != k || mults.len() != k || units.len() != ranks.len() {
            return Err(Error::ShapeError(format!(
                "{} stages want {} transitions, {} mults and {} units; got {}, {}, {}",
                ranks.len(),
                k,
                k,
                ranks.len(),
                transitions.len(),
                mults.len(),
                units.len()
            )));
        }
        let expect = |m: &SparseMatrix, rows: usize, cols: usize, what: &str| -> Result<()> {
            if m.ring() != ring {
                return Err(Error::RingMismatch);
            }
            if m.rows() != rows || m.cols() != cols {
                return Err(Error::ShapeError(format!(
                    "{} has shape {}x{}, expected {}x{}",
                    what,
                    m.rows(),
                    m.cols(),
                    rows,
                    cols
                )));
            }
            Ok(())
        };
        for i in 0..k {
            expect(&transitions[i], ranks[i], ranks[i + 1], &format!("transition {}", i))?;
            expect(
                &mults[i],
                ranks[i],
                ranks[i + 1] * ranks[i + 1],
                &format!("mult {}", i),
            )?;
        }
        for (i, u) in units.iter().enumerate() {
            expect(u, ranks[i], 1, &format!("unit {}", i))?;
        }
        let p = ProAlgebraPresentation {
            ring,
            ranks,
            transitions,
            mults,
            units,
        };
        for i in 0..k {
            if !is_surjective(&p.transitions[i]) {
                return Err(Error::Invalid(format!("transition {} is not surjective", i)));
            }
            let r_next = p.ranks[i + 1];
            let id = SparseMatrix::identity(ring, r_next);
            let left = p.mults[i].mat_mul(&p.units[i + 1].kron(&id)?)?;
            let right = p.mults[i].mat_mul(&id.kron(&p.units[i + 1])?)?;
            if left != p.transitions[i] || right != p.transitions[i] {
                return Err(Error::Invalid(format!("unit law fails at stage {}", i)));
            }
            if p.transitions[i].mat_mul(&p.units[i + 1])? != p.units[i] {
                return Err(Error::Invalid(format!(
                    "units are not transition-compatible at stage {}",
                    i
                )));
            }
        }
        for i in 0..k.saturating_sub(1) {
            let lhs = p.transitions[i].mat_mul(&p.mults[i + 1])?;
            let rhs = p.mults[i].mat_mul(&p.transitions[i + 1].kron(&p.transitions[i + 1])?)?;
            if lhs != rhs {
                return Err(Error::Invalid(format!(
                    "multiplication is not transition-compatible at stage {}",
                    i
                )));
            }
        }
        Ok(p)
    }

    pub fn ring(&self) -> BaseRing {
        self.ring
    }

    /// Number of stages in the window.
    pub fn stages(&self) -> usize {
        self.ranks.len()
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn transition(&self, i: usize) -> &SparseMatrix {
        &self.transitions[i]
    }

    pub fn mult(&self, i: usize) -> &SparseMatrix {
        &self.mults[i]
    }

    pub fn unit(&self, i: usize) -> &SparseMatrix {
        &self.units[i]
    }

    /// Composite transition `phi_{ab}: M_b -> M_a` for `a <= b`.
    pub fn composite_transition(&self, a: usize, b: usize) -> Result<SparseMatrix> {
        if a > b || b >= self.stages() {
            return Err(Error::Invalid(format!(
                "no transition from stage {} to stage {} in a {}-stage window",
                b,
                a,
                self.stages()
            )));
        }
        let mut acc = SparseMatrix::identity(self.ring, self.ranks[a]);
        for i in a..b {
            acc = acc.mat_mul(&self.transitions[i])?;
        }
        Ok(acc)
    }

    /// Composite multiplication `mu_{ab}: M_b (x) M_b -> M_a` for `a < b`,
    /// well-defined by the compatibility invariant.
    pub fn composite_mult(&self, a: usize, b: usize) -> Result<SparseMatrix> {
        if a >= b || b >= self.stages() {
            return Err(Error::Invalid(format!(
                "no product M_{} (x) M_{} -> M_{} in a {}-stage window",
                b,
                b,
                a,
                self.stages()
            )));
        }
        let down = self.composite_transition(a + 1, b)?;
        self.mults[a].mat_mul(&down.kron(&down)?)
    }
}

/// Three-fold product `mu3: M_b (x) M_b (x) M_b -> M_a`, assembled as
/// `mu_{a,a+1} . (mu_{a+1,b} (x) phi_{a+1,b})` and cross-checked against the
/// other bracketing.
pub fn mu3(p: &ProAlgebraPresentation, a: usize, b: usize) -> Result<SparseMatrix> {
    if b < a + 2 || b >= p.stages() {
        return Err(Error::InsufficientHeadroom);
    }
    let mid = a + 1;
    let inner = p.composite_mult(mid, b)?;
    let down = p.composite_transition(mid, b)?;
    let left = p.mults[a].mat_mul(&inner.kron(&down)?)?;
    let right = p.mults[a].mat_mul(&down.kron(&inner)?)?;
    if left != right {
        return Err(Error::BracketingMismatch);
    }
    Ok(left)
}

/// The algebra quotient carried by one stage of the window.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StageQuotient {
    /// The stage `a` being quotiented.
    pub stage: usize,
    /// Rank of `A_a = M_a / W_a`.
    pub quotient_rank: usize,
    /// Surjection `M_a -> A_a` in coordinates (rows `quotient_rank`).
    pub projection: SparseMatrix,
    /// Induced multiplication `A_a (x) A_a -> A_a`.
    pub induced_mul: SparseMatrix,
    /// Induced unit of `A_a`.
    pub induced_unit: SparseMatrix,
    /// Canonical row basis of the relation subspace `W_a` inside `M_a`.
    pub relations: SparseMatrix,
}

/// Projection onto the quotient by the span of `relations` (canonical rows
/// over a field): coordinates are the non-pivot entries after reduction.
fn quotient_projection(ring: BaseRing, rank: usize, relations: &SparseMatrix) -> SparseMatrix {
    let mut pivot_of_col = vec![None; rank];
    for t in 0..relations.rows() {
        if let Some((_, c, _)) = relations.iter().find(|(r, _, _)| *r == t) {
            pivot_of_col[c] = Some(t);
        }
    }
    let free: Vec<usize> = (0..rank).filter(|j| pivot_of_col[*j].is_none()).collect();
    let coord_of: std::collections::BTreeMap<usize, usize> =
        free.iter().enumerate().map(|(t, &j)| (j, t)).collect();
    let mut entries = Vec::new();
    for j in 0..rank {
        match pivot_of_col[j] {
            None => entries.push((coord_of[&j], j, Scalar::one(ring))),
            Some(t) => {
                // e_j = row_t - (non-pivot tail), so e_j reduces to minus
                // the tail of its pivot row.
                for (r, c, v) in relations.iter() {
                    if r == t && c != j {
                        entries.push((coord_of[&c], j, v.neg()));
                    }
                }
            }
        }
    }
    SparseMatrix::from_entries(ring, free.len(), rank, entries).unwrap()
}

/// Stage quotient of `M_a` computed through stage `b >= a + 2`.  The choice
/// of `b` does not change the relation subspace; `stage_quotients` uses the
/// minimal headroom and tests pin the independence.
pub fn stage_quotient_at(
    p: &ProAlgebraPresentation,
    a: usize,
    b: usize,
) -> Result<StageQuotient> {
    let ring = p.ring;
    let triple = mu3(p, a, b)?;
    let phi = p.composite_transition(a, b)?;
    let rank_a = p.ranks[a];
    let rank_b = p.ranks[b];
    let id_b = SparseMatrix::identity(ring, rank_b);

    let kernel = kernel_basis(&phi)?;
    let relations = if kernel.cols() == 0 {
        SparseMatrix::zero(ring, 0, rank_a)
    } else {
        let spans = triple.mat_mul(&id_b.kron(&kernel)?.kron(&id_b)?)?;
        canonical_row_form(&spans.transpose())
    };

    let projection = quotient_projection(ring, rank_a, &relations);
    let quotient_rank = projection.rows();

    // The two-stage product descends along q = projection . phi; check that
    // it kills ker(q) on either side, then compute through a lift.
    let q = projection.mat_mul(&phi)?;
    let mu_ab = p.composite_mult(a, b)?;
    let descended = projection.mat_mul(&mu_ab)?;
    let ker_q = kernel_basis(&q)?;
    if ker_q.cols() > 0 {
        let left = descended.mat_mul(&ker_q.kron(&id_b)?)?;
        let right = descended.mat_mul(&id_b.kron(&ker_q)?)?;
        if !left.is_zero_matrix() || !right.is_zero_matrix() {
            return Err(Error::Invalid(format!(
                "two-stage product does not descend to the stage-{} quotient",
                a
            )));
        }
    }
    let section = solve_right(&q, &SparseMatrix::identity(ring, quotient_rank))?
        .ok_or_else(|| Error::Invalid(format!("stage-{} quotient map has no section", a)))?;
    let induced_mul = descended.mat_mul(&section.kron(&section)?)?;
    if ker_q.cols() > 0 {
        // Lift independence, rechecked with a visibly different section.
        let shift = ker_q.mat_mul(&SparseMatrix::from_dense(
            ring,
            vec![vec![Scalar::one(ring); quotient_rank]; ker_q.cols()],
        ))?;
        let other = section.add(&shift)?;
        if descended.mat_mul(&other.kron(&other)?)? != induced_mul {
            return Err(Error::Invalid(format!(
                "induced multiplication at stage {} depends on the lift",
                a
            )));
        }
    }

    let induced_unit = projection.mat_mul(&p.units[a])?;
    let id_q = SparseMatrix::identity(ring, quotient_rank);
    if induced_mul.mat_mul(&induced_unit.kron(&id_q)?)? != id_q
        || induced_mul.mat_mul(&id_q.kron(&induced_unit)?)? != id_q
    {
        return Err(Error::Invalid(format!(
            "induced unit law fails at stage {}",
            a
        )));
    }
    if induced_mul.mat_mul(&induced_mul.kron(&id_q)?)?
        != induced_mul.mat_mul(&id_q.kron(&induced_mul)?)?
    {
        return Err(Error::AssociativityFailure(format!(
            "induced multiplication at stage {} is not associative",
            a
        )));
    }

    Ok(StageQuotient {
        stage: a,
        quotient_rank,
        projection,
        induced_mul,
        induced_unit,
        relations,
    })
}

/// Quotients for every stage with two stages of headroom above it.
pub fn stage_quotients(p: &ProAlgebraPresentation) -> Result<Vec<StageQuotient>> {
    if p.stages() < 3 {
        return Err(Error::InsufficientHeadroom);
    }
    (0..=p.stages() - 3)
        .map(|a| stage_quotient_at(p, a, a + 2))
        .collect()
}

/// True when every transition descends to the stage quotients: for each pair
/// of quotiented stages `a < b` within reach, `phi_{ab}` carries the
/// relation subspace `W_b` into `W_a`, so `M_b -> M_a -> A_a` factors
/// through `A_b`.  This holds for every presentation passing the
/// construction invariants; a false answer flags an invariant bug.
pub fn verify_factorization(p: &ProAlgebraPresentation) -> Result<bool> {
    let quotients = stage_quotients(p)?;
    for a in 0..quotients.len() {
        for b in (a + 1..quotients.len()).take(2) {
            let phi = p.composite_transition(a, b)?;
            let moved = phi.mat_mul(&quotients[b].relations.transpose())?;
            if !image_subset(&moved, &quotients[a].relations.transpose())? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn truncated_poly_mult(ring: BaseRing, target: usize, source: usize) -> SparseMatrix {
    let mut entries = Vec::new();
    for i in 0..source {
        for j in 0..source {
            if i + j < target {
                entries.push((i + j, i * source + j, Scalar::one(ring)));
            }
        }
    }
    SparseMatrix::from_entries(ring, target, source * source, entries).unwrap()
}

fn truncation_map(ring: BaseRing, target: usize, source: usize) -> SparseMatrix {
    let entries: Vec<_> = (0..target.min(source))
        .map(|i| (i, i, Scalar::one(ring)))
        .collect();
    SparseMatrix::from_entries(ring, target, source, entries).unwrap()
}

/// Tower of truncated polynomial algebras `R[x]/x^(m_i)` for a
/// nondecreasing list of ranks, with truncation transitions.
pub fn truncation_tower(ring: BaseRing, ranks: &[usize]) -> Result<ProAlgebraPresentation> {
    if ranks.windows(2).any(|w| w[0] > w[1]) || ranks.iter().any(|&m| m == 0) {
        return Err(Error::Invalid("ranks must be nondecreasing and positive".into()));
    }
    let transitions = ranks
        .windows(2)
        .map(|w| truncation_map(ring, w[0], w[1]))
        .collect();
    let mults = ranks
        .windows(2)
        .map(|w| truncated_poly_mult(ring, w[0], w[1]))
        .collect();
    let units = ranks
        .iter()
        .map(|&m| SparseMatrix::basis_col(ring, m, 0))
        .collect();
    ProAlgebraPresentation::new(ring, ranks.to_vec(), transitions, mults, units)
}

/// Four-stage tower that is constant at `R[x]/x^b` except that the bottom
/// stage quotients away the line spanned by `x` (a module quotient along a
/// non-ideal, so the stage-0 quotient is proper: `W_0` is the image of the
/// higher powers of `x` and `A_0` has rank 1).
pub fn killed_line_tower(ring: BaseRing, b: usize) -> Result<ProAlgebraPresentation> {
    if b < 3 {
        return Err(Error::Invalid("killed_line_tower needs rank at least 3".into()));
    }
    let mut proj_entries = vec![(0, 0, Scalar::one(ring))];
    for i in 1..b - 1 {
        proj_entries.push((i, i + 1, Scalar::one(ring)));
    }
    let proj = SparseMatrix::from_entries(ring, b - 1, b, proj_entries)?;
    let full_mult = truncated_poly_mult(ring, b, b);
    let id = SparseMatrix::identity(ring, b);
    let unit = SparseMatrix::basis_col(ring, b, 0);
    ProAlgebraPresentation::new(
        ring,
        vec![b - 1, b, b, b],
        vec![proj.clone(), id.clone(), id],
        vec![proj.mat_mul(&full_mult)?, full_mult.clone(), full_mult],
        vec![
            proj.mat_mul(&unit)?,
            unit.clone(),
            unit.clone(),
            unit,
        ],
    )
}

/// Tower of split algebras `R^(m_i)` with coordinate-forgetting transitions
/// and componentwise product.
pub fn split_tower(ring: BaseRing, ranks: &[usize]) -> Result<ProAlgebraPresentation> {
    if ranks.windows(2).any(|w| w[0] > w[1]) || ranks.iter().any(|&m| m == 0) {
        return Err(Error::Invalid("ranks must be nondecreasing and positive".into()));
    }
    let transitions = ranks
        .windows(2)
        .map(|w| truncation_map(ring, w[0], w[1]))
        .collect();
    let mults = ranks
        .windows(2)
        .map(|w| {
            let entries: Vec<_> = (0..w[0]).map(|t| (t, t * w[1] + t, Scalar::one(ring))).collect();
            SparseMatrix::from_entries(ring, w[0], w[1] * w[1], entries).unwrap()
        })
        .collect();
    let units = ranks
        .iter()
        .map(|&m| {
            let entries: Vec<_> = (0..m).map(|t| (t, 0, Scalar::one(ring))).collect();
            SparseMatrix::from_entries(ring, m, 1, entries).unwrap()
        })
        .collect();
    ProAlgebraPresentation::new(ring, ranks.to_vec(), transitions, mults, units)
}

/// Tower of group algebras `R <- R[Z/2] <- R[Z/4] <- R[Z/4]` along the
/// group surjections.
pub fn group_tower(ring: BaseRing) -> Result<ProAlgebraPresentation> {
    let one = || Scalar::one(ring);
    let group_mult = |order: usize, target: usize| {
        let mut es = Vec::new();
        for i in 0..order {
            for j in 0..order {
                es.push((((i + j) % order) % target, i * order + j, one()));
            }
        }
        SparseMatrix::from_entries(ring, target, order * order, es).unwrap()
    };
    let group_map = |source: usize, target: usize| {
        let entries: Vec<_> = (0..source).map(|i| (i % target, i, one())).collect();
        SparseMatrix::from_entries(ring, target, source, entries).unwrap()
    };
    let unit_of = |order: usize| SparseMatrix::basis_col(ring, order, 0);
    ProAlgebraPresentation::new(
        ring,
        vec![1, 2, 4, 4],
        vec![group_map(2, 1), group_map(4, 2), group_map(4, 4)],
        vec![group_mult(2, 1), group_mult(4, 2), group_mult(4, 4)],
        vec![unit_of(1), unit_of(2), unit_of(4), unit_of(4)],
    )
}
