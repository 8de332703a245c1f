use crate::error::{Error, Result};
use crate::exactlin::matrix::SparseMatrix;
use crate::exactlin::ring::BaseRing;
use crate::exactlin::scalar::Scalar;

/// Canonical row form of a matrix: the unique reduced row echelon form for
/// the row span. Over Z and Q[t] this is the reduced Hermite normal form
/// (positive respectively monic pivots, entries above a pivot reduced to the
/// canonical remainder); over Q it degenerates to reduced row echelon form;
/// over Z/n it is the Howell normal form, which is canonical even though Z/n
/// has zero divisors. Zero rows are dropped, so the zero matrix has an empty
/// canonical form.
///
/// Two matrices with the same column count have equal canonical row forms
/// exactly when they generate the same row module.
pub fn canonical_row_form(m: &SparseMatrix) -> SparseMatrix {
    reduce(m, false).basis
}

/// Same reduction, but also returns T with `basis = T * m`. Every row of the
/// canonical form is certified as an explicit combination of input rows.
pub fn canonical_row_form_with_transform(m: &SparseMatrix) -> (SparseMatrix, SparseMatrix) {
    let r = reduce(m, true);
    (r.basis, r.transform.expect("transform was requested"))
}

struct Reduction {
    basis: SparseMatrix,
    transform: Option<SparseMatrix>,
}

struct Work {
    ring: BaseRing,
    cols: usize,
    rows: Vec<Vec<Scalar>>,
    trans: Option<Vec<Vec<Scalar>>>,
}

impl Work {
    fn new(m: &SparseMatrix, track: bool) -> Work {
        let trans = track.then(|| {
            (0..m.rows())
                .map(|i| {
                    (0..m.rows())
                        .map(|j| {
                            if i == j {
                                Scalar::one(m.ring())
                            } else {
                                Scalar::zero(m.ring())
                            }
                        })
                        .collect()
                })
                .collect()
        });
        Work {
            ring: m.ring(),
            cols: m.cols(),
            rows: m.to_dense(),
            trans,
        }
    }

    fn swap(&mut self, a: usize, b: usize) {
        self.rows.swap(a, b);
        if let Some(t) = &mut self.trans {
            t.swap(a, b);
        }
    }

    /// row[dst] -= q * row[src]
    fn subtract(&mut self, dst: usize, src: usize, q: &Scalar) {
        if q.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let delta = q.mul(&self.rows[src][j]).expect("same ring");
            self.rows[dst][j] = self.rows[dst][j].sub(&delta).expect("same ring");
        }
        if let Some(t) = &mut self.trans {
            let width = t[src].len();
            for j in 0..width {
                let delta = q.mul(&t[src][j]).expect("same ring");
                t[dst][j] = t[dst][j].sub(&delta).expect("same ring");
            }
        }
    }

    fn scale(&mut self, row: usize, u: &Scalar) {
        for j in 0..self.cols {
            self.rows[row][j] = self.rows[row][j].mul(u).expect("same ring");
        }
        if let Some(t) = &mut self.trans {
            for cell in &mut t[row] {
                *cell = cell.mul(u).expect("same ring");
            }
        }
    }

    fn push(&mut self, row: Vec<Scalar>, trow: Option<Vec<Scalar>>) {
        self.rows.push(row);
        if let Some(t) = &mut self.trans {
            t.push(trow.expect("transform row accompanies data row"));
        }
    }

    fn is_zero_row(&self, r: usize) -> bool {
        self.rows[r].iter().all(Scalar::is_zero)
    }

    /// Gauss/Euclid echelon pass. Returns pivot (row, col) pairs in order.
    fn echelon(&mut self) -> Vec<(usize, usize)> {
        let mut pivots = Vec::new();
        let mut pivot_row = 0usize;
        for col in 0..self.cols {
            if pivot_row >= self.rows.len() {
                break;
            }
            loop {
                let mut live: Vec<usize> = (pivot_row..self.rows.len())
                    .filter(|&r| !self.rows[r][col].is_zero())
                    .collect();
                if live.is_empty() {
                    break;
                }
                live.sort_by(|&a, &b| {
                    self.rows[a][col]
                        .euclidean_size()
                        .cmp(&self.rows[b][col].euclidean_size())
                });
                let best = live[0];
                self.swap(pivot_row, best);
                if live.len() == 1 {
                    pivots.push((pivot_row, col));
                    pivot_row += 1;
                    break;
                }
                for r in pivot_row + 1..self.rows.len() {
                    if self.rows[r][col].is_zero() {
                        continue;
                    }
                    let (q, _) = self.rows[r][col]
                        .div_rem(&self.rows[pivot_row][col])
                        .expect("pivot is nonzero");
                    self.subtract(r, pivot_row, &q);
                }
            }
        }
        pivots
    }

    /// Normalizes pivots to canonical associates and reduces the entries
    /// above each pivot to canonical remainders.
    fn normalize(&mut self, pivots: &[(usize, usize)]) {
        for &(prow, pcol) in pivots {
            let u = self.rows[prow][pcol].canonicalizing_unit();
            if !u.is_one() {
                self.scale(prow, &u);
            }
            for r in 0..prow {
                if self.rows[r][pcol].is_zero() {
                    continue;
                }
                let (q, _) = self.rows[r][pcol]
                    .div_rem(&self.rows[prow][pcol])
                    .expect("pivot is nonzero");
                self.subtract(r, prow, &q);
            }
        }
    }

    fn finish(mut self, pivots: &[(usize, usize)]) -> Reduction {
        let keep = pivots.len();
        debug_assert!((keep..self.rows.len()).all(|r| self.is_zero_row(r)));
        let n_orig = self.trans.as_ref().and_then(|t| t.first().map(Vec::len));
        self.rows.truncate(keep);
        let basis = dense_to_sparse(self.ring, self.rows, self.cols);
        let transform = self.trans.map(|mut t| {
            t.truncate(keep);
            dense_to_sparse(self.ring, t, n_orig.unwrap_or(0))
        });
        Reduction { basis, transform }
    }
}

fn reduce(m: &SparseMatrix, track: bool) -> Reduction {
    let mut w = Work::new(m, track);
    match m.ring() {
        BaseRing::IntegersMod(n) => {
            // Howell closure: for each pivot p, (n / gcd(p, n)) * row lies in
            // the span with its leading entry annihilated; folding these rows
            // in until stable gives the Howell property, which makes the
            // greedy membership test below complete over Z/n.
            let mut pivots = w.echelon();
            let bound = m.cols() + m.rows() + 4;
            for _ in 0..=bound {
                let mut grew = false;
                for &(prow, pcol) in &pivots {
                    let res = w.rows[prow][pcol].residue().expect("modular scalar");
                    let g = gcd_u64(res, n);
                    let ann = n / g;
                    if ann == 1 || ann == n {
                        continue;
                    }
                    let multiplier = Scalar::from_i64(w.ring, ann as i64);
                    let extra: Vec<Scalar> = w.rows[prow]
                        .iter()
                        .map(|v| v.mul(&multiplier).expect("same ring"))
                        .collect();
                    if extra.iter().all(Scalar::is_zero) {
                        continue;
                    }
                    let textra = w.trans.as_ref().map(|t| {
                        t[prow]
                            .iter()
                            .map(|v| v.mul(&multiplier).expect("same ring"))
                            .collect()
                    });
                    // Only add the extra row if it escapes the current span.
                    if reduce_against(&w, &pivots, &extra).is_none() {
                        w.push(extra, textra);
                        grew = true;
                    }
                }
                if !grew {
                    break;
                }
                pivots = w.echelon();
            }
            w.normalize(&pivots);
            w.finish(&pivots)
        }
        _ => {
            let pivots = w.echelon();
            w.normalize(&pivots);
            w.finish(&pivots)
        }
    }
}

/// Greedy left-to-right reduction of `target` against echelon rows. Returns
/// the combination coefficients when the target lies in the span.
fn reduce_against(w: &Work, pivots: &[(usize, usize)], target: &[Scalar]) -> Option<Vec<Scalar>> {
    let mut residual = target.to_vec();
    let mut coeffs = vec![Scalar::zero(w.ring); w.rows.len()];
    for &(prow, pcol) in pivots {
        if residual[pcol].is_zero() {
            continue;
        }
        let (q, r) = residual[pcol]
            .div_rem(&w.rows[prow][pcol])
            .expect("pivot is nonzero");
        if !r.is_zero() {
            return None;
        }
        for j in 0..w.cols {
            let delta = q.mul(&w.rows[prow][j]).expect("same ring");
            residual[j] = residual[j].sub(&delta).expect("same ring");
        }
        coeffs[prow] = q;
    }
    residual.iter().all(Scalar::is_zero).then_some(coeffs)
}

fn gcd_u64(a: u64, b: u64) -> u64 {
    if a == 0 {
        b
    } else {
        gcd_u64(b % a, a)
    }
}

/// Dense rows to sparse with an explicit column count, so empty row lists
/// still carry their width.
fn dense_to_sparse(ring: BaseRing, rows: Vec<Vec<Scalar>>, cols: usize) -> SparseMatrix {
    let height = rows.len();
    let entries = rows.into_iter().enumerate().flat_map(|(i, row)| {
        row.into_iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(move |(j, v)| (i, j, v))
    });
    SparseMatrix::from_entries(ring, height, cols, entries.collect::<Vec<_>>())
        .expect("reduction rows stay in bounds")
}

/// True when the column space of `a` is contained in the column space of
/// `b`. Both must describe submodules of the same free module R^rows.
pub fn image_subset(a: &SparseMatrix, b: &SparseMatrix) -> Result<bool> {
    if a.ring() != b.ring() {
        return Err(Error::RingMismatch);
    }
    if a.rows() != b.rows() {
        return Err(Error::DimensionMismatch(format!(
            "column spaces in R^{} and R^{} are not comparable",
            a.rows(),
            b.rows()
        )));
    }
    let bt = b.transpose();
    let stacked = a.transpose().vstack(&bt)?;
    Ok(canonical_row_form(&stacked) == canonical_row_form(&bt))
}

/// Solves A * X = B exactly. Returns None when no solution exists.
pub fn solve_right(a: &SparseMatrix, b: &SparseMatrix) -> Result<Option<SparseMatrix>> {
    if a.ring() != b.ring() {
        return Err(Error::RingMismatch);
    }
    if a.rows() != b.rows() {
        return Err(Error::DimensionMismatch(format!(
            "solve with {} equation rows against {} target rows",
            a.rows(),
            b.rows()
        )));
    }
    let at = a.transpose();
    let mut w = Work::new(&at, true);
    let pivots = match a.ring() {
        BaseRing::IntegersMod(_) => {
            // Reuse the full Howell reduction so membership is complete.
            let (basis, transform) = canonical_row_form_with_transform(&at);
            let mut wk = Work::new(&basis, false);
            wk.trans = Some(transform.to_dense());
            w = wk;
            (0..w.rows.len())
                .map(|r| {
                    let pcol = (0..w.cols)
                        .find(|&c| !w.rows[r][c].is_zero())
                        .expect("canonical rows are nonzero");
                    (r, pcol)
                })
                .collect::<Vec<_>>()
        }
        _ => {
            let p = w.echelon();
            w.normalize(&p);
            p
        }
    };
    let bt = b.transpose().to_dense();
    let mut xt_rows = Vec::with_capacity(bt.len());
    for target in bt {
        let coeffs = match reduce_against(&w, &pivots, &target) {
            Some(c) => c,
            None => return Ok(None),
        };
        // combination row = coeffs * transform, expressed over original rows of a^T
        let t = w.trans.as_ref().expect("transform tracked");
        let width = a.cols();
        let mut combo = vec![Scalar::zero(a.ring()); width];
        for (r, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for j in 0..width {
                let delta = c.mul(&t[r][j])?;
                combo[j] = combo[j].add(&delta)?;
            }
        }
        xt_rows.push(combo);
    }
    let xt = SparseMatrix::from_dense(a.ring(), xt_rows);
    let x = xt.transpose();
    debug_assert_eq!(a.mat_mul(&x)?, b.clone());
    Ok(Some(x))
}

/// Exact two-sided inverse; `NotInvertible` when none exists over the ring.
pub fn invert(m: &SparseMatrix) -> Result<SparseMatrix> {
    if m.rows() != m.cols() {
        return Err(Error::NotInvertible);
    }
    let id = SparseMatrix::identity(m.ring(), m.rows());
    let x = solve_right(m, &id)?.ok_or(Error::NotInvertible)?;
    if m.mat_mul(&x)? != id || x.mat_mul(m)? != id {
        return Err(Error::NotInvertible);
    }
    Ok(x)
}

/// True when the columns of m generate all of R^rows.
pub fn is_surjective(m: &SparseMatrix) -> bool {
    canonical_row_form(&m.transpose()) == SparseMatrix::identity(m.ring(), m.rows())
}

/// Basis of ker(m) as columns, over a field. The basis is the standard one
/// read off the reduced row echelon form, so it is deterministic.
pub fn kernel_basis(m: &SparseMatrix) -> Result<SparseMatrix> {
    if !m.ring().is_field() {
        return Err(Error::NotAField);
    }
    let mut w = Work::new(m, false);
    let pivots = w.echelon();
    w.normalize(&pivots);
    let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
    let free_cols: Vec<usize> = (0..m.cols()).filter(|c| !pivot_cols.contains(c)).collect();
    let mut cols: Vec<Vec<Scalar>> = Vec::new();
    for &fc in &free_cols {
        let mut v = vec![Scalar::zero(m.ring()); m.cols()];
        v[fc] = Scalar::one(m.ring());
        for &(prow, pcol) in &pivots {
            // Pivot row reads: x[pcol] + sum of row[j] * x[j] over free j = 0.
            v[pcol] = w.rows[prow][fc].neg();
        }
        cols.push(v);
    }
    let mut dense = vec![vec![Scalar::zero(m.ring()); cols.len()]; m.cols()];
    for (k, col) in cols.iter().enumerate() {
        for (i, val) in col.iter().enumerate() {
            dense[i][k] = val.clone();
        }
    }
    let out = SparseMatrix::from_dense(m.ring(), dense);
    debug_assert!(m
        .mat_mul(&out)
        .expect("shapes agree")
        .is_zero_matrix());
    Ok(out)
}

/// Rank of the row span; over Z/n this counts Howell basis rows rather than
/// a free rank.
pub fn row_basis_size(m: &SparseMatrix) -> usize {
    canonical_row_form(m).rows()
}
