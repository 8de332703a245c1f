use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::exactlin::ring::BaseRing;
use crate::exactlin::scalar::Scalar;

/// An immutable sparse matrix over one of the base rings. Entries are kept
/// in a BTreeMap in row-major key order so every iteration, serialization,
/// and comparison is deterministic. Explicit zeros are never stored.
///
/// Tensor legs use one global flattening convention throughout the crate:
/// e_i (x) e_j of ranks (m, n) sits at flat index i * n + j.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseMatrix {
    ring: BaseRing,
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), Scalar>,
}

impl SparseMatrix {
    pub fn zero(ring: BaseRing, rows: usize, cols: usize) -> SparseMatrix {
        SparseMatrix {
            ring,
            rows,
            cols,
            entries: BTreeMap::new(),
        }
    }

    pub fn identity(ring: BaseRing, n: usize) -> SparseMatrix {
        let mut entries = BTreeMap::new();
        for i in 0..n {
            entries.insert((i, i), Scalar::one(ring));
        }
        SparseMatrix {
            ring,
            rows: n,
            cols: n,
            entries,
        }
    }

    /// Standard basis column vector e_i as an n x 1 matrix.
    pub fn basis_col(ring: BaseRing, n: usize, i: usize) -> SparseMatrix {
        let mut m = SparseMatrix::zero(ring, n, 1);
        m.entries.insert((i, 0), Scalar::one(ring));
        m
    }

    pub fn from_entries(
        ring: BaseRing,
        rows: usize,
        cols: usize,
        entries: impl IntoIterator<Item = (usize, usize, Scalar)>,
    ) -> Result<SparseMatrix> {
        let mut map = BTreeMap::new();
        for (i, j, v) in entries {
            if i >= rows || j >= cols {
                return Err(Error::ShapeError(format!(
                    "entry ({i}, {j}) outside a {rows} x {cols} matrix"
                )));
            }
            if v.ring() != ring {
                return Err(Error::RingMismatch);
            }
            if v.is_zero() {
                continue;
            }
            if map.insert((i, j), v).is_some() {
                return Err(Error::Invalid(format!("duplicate entry at ({i}, {j})")));
            }
        }
        Ok(SparseMatrix {
            ring,
            rows,
            cols,
            entries: map,
        })
    }

    /// Dense construction from integer literals, mostly for tests and the
    /// catalog builders.
    pub fn from_i64_rows(ring: BaseRing, rows: &[&[i64]]) -> SparseMatrix {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut entries = BTreeMap::new();
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged row in matrix literal");
            for (j, &v) in row.iter().enumerate() {
                let s = Scalar::from_i64(ring, v);
                if !s.is_zero() {
                    entries.insert((i, j), s);
                }
            }
        }
        SparseMatrix {
            ring,
            rows: r,
            cols: c,
            entries,
        }
    }

    pub fn ring(&self) -> BaseRing {
        self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, i: usize, j: usize) -> Scalar {
        assert!(i < self.rows && j < self.cols, "index out of range");
        self.entries
            .get(&(i, j))
            .cloned()
            .unwrap_or_else(|| Scalar::zero(self.ring))
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &Scalar)> {
        self.entries.iter().map(|(&(i, j), v)| (i, j, v))
    }

    pub fn is_zero_matrix(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && self.entries.len() == self.rows
            && self
                .entries
                .iter()
                .all(|(&(i, j), v)| i == j && v.is_one())
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut entries = BTreeMap::new();
        for (&(i, j), v) in &self.entries {
            entries.insert((j, i), v.clone());
        }
        SparseMatrix {
            ring: self.ring,
            rows: self.cols,
            cols: self.rows,
            entries,
        }
    }

    pub fn add(&self, other: &SparseMatrix) -> Result<SparseMatrix> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "add of {} x {} and {} x {}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut entries = self.entries.clone();
        for (&k, v) in &other.entries {
            match entries.remove(&k) {
                Some(old) => {
                    let sum = old.add(v)?;
                    if !sum.is_zero() {
                        entries.insert(k, sum);
                    }
                }
                None => {
                    entries.insert(k, v.clone());
                }
            }
        }
        Ok(SparseMatrix {
            ring: self.ring,
            rows: self.rows,
            cols: self.cols,
            entries,
        })
    }

    pub fn sub(&self, other: &SparseMatrix) -> Result<SparseMatrix> {
        self.add(&other.scale(&Scalar::from_i64(other.ring, -1))?)
    }

    pub fn scale(&self, c: &Scalar) -> Result<SparseMatrix> {
        if c.ring() != self.ring {
            return Err(Error::RingMismatch);
        }
        let mut entries = BTreeMap::new();
        for (&k, v) in &self.entries {
            let p = v.mul(c)?;
            if !p.is_zero() {
                entries.insert(k, p);
            }
        }
        Ok(SparseMatrix {
            ring: self.ring,
            rows: self.rows,
            cols: self.cols,
            entries,
        })
    }

    /// Exact matrix product.
    pub fn mat_mul(&self, other: &SparseMatrix) -> Result<SparseMatrix> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "product of {} x {} and {} x {}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut acc: BTreeMap<(usize, usize), Scalar> = BTreeMap::new();
        for (&(i, k), va) in &self.entries {
            for (&(_, j), vb) in other.entries.range((k, 0)..(k + 1, 0)) {
                let prod = va.mul(vb)?;
                if prod.is_zero() {
                    continue;
                }
                match acc.remove(&(i, j)) {
                    Some(old) => {
                        let sum = old.add(&prod)?;
                        if !sum.is_zero() {
                            acc.insert((i, j), sum);
                        }
                    }
                    None => {
                        acc.insert((i, j), prod);
                    }
                }
            }
        }
        Ok(SparseMatrix {
            ring: self.ring,
            rows: self.rows,
            cols: other.cols,
            entries: acc,
        })
    }

    /// Kronecker product under the global flat-index convention:
    /// kron(a, b)[(ia * b.rows + ib), (ja * b.cols + jb)] = a[ia, ja] * b[ib, jb].
    pub fn kron(&self, other: &SparseMatrix) -> Result<SparseMatrix> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        let mut entries = BTreeMap::new();
        for (&(ia, ja), va) in &self.entries {
            for (&(ib, jb), vb) in &other.entries {
                let prod = va.mul(vb)?;
                if !prod.is_zero() {
                    entries.insert((ia * other.rows + ib, ja * other.cols + jb), prod);
                }
            }
        }
        Ok(SparseMatrix {
            ring: self.ring,
            rows: self.rows * other.rows,
            cols: self.cols * other.cols,
            entries,
        })
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &SparseMatrix) -> Result<SparseMatrix> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "vstack of {} cols and {} cols",
                self.cols, other.cols
            )));
        }
        let mut entries = self.entries.clone();
        for (&(i, j), v) in &other.entries {
            entries.insert((self.rows + i, j), v.clone());
        }
        Ok(SparseMatrix {
            ring: self.ring,
            rows: self.rows + other.rows,
            cols: self.cols,
            entries,
        })
    }

    /// Row-major vectorization as a (rows * cols) x 1 column:
    /// flat index i * cols + j holds m[i, j].
    pub fn vectorize(&self) -> SparseMatrix {
        let mut entries = BTreeMap::new();
        for (&(i, j), v) in &self.entries {
            entries.insert((i * self.cols + j, 0), v.clone());
        }
        SparseMatrix {
            ring: self.ring,
            rows: self.rows * self.cols,
            cols: 1,
            entries,
        }
    }

    /// Dense rows; only sensible for small matrices (normal forms, reports).
    pub fn to_dense(&self) -> Vec<Vec<Scalar>> {
        let mut out = vec![vec![Scalar::zero(self.ring); self.cols]; self.rows];
        for (&(i, j), v) in &self.entries {
            out[i][j] = v.clone();
        }
        out
    }

    pub fn from_dense(ring: BaseRing, rows: Vec<Vec<Scalar>>) -> SparseMatrix {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut entries = BTreeMap::new();
        for (i, row) in rows.into_iter().enumerate() {
            assert_eq!(row.len(), c, "ragged dense rows");
            for (j, v) in row.into_iter().enumerate() {
                debug_assert_eq!(v.ring(), ring);
                if !v.is_zero() {
                    entries.insert((i, j), v);
                }
            }
        }
        SparseMatrix {
            ring,
            rows: r,
            cols: c,
            entries,
        }
    }
}

/// Permutation matrix that reorders tensor legs. `dims` are the input leg
/// dimensions in order; output leg p is input leg `perm[p]`. The result P
/// satisfies P * (v_0 (x) ... (x) v_{m-1}) = v_{perm[0]} (x) ... (x) v_{perm[m-1]}.
pub fn perm_legs(ring: BaseRing, dims: &[usize], perm: &[usize]) -> SparseMatrix {
    assert_eq!(dims.len(), perm.len(), "permutation arity mismatch");
    let mut seen = vec![false; dims.len()];
    for &p in perm {
        assert!(!seen[p], "perm_legs requires a permutation");
        seen[p] = true;
    }
    let total: usize = dims.iter().product();
    let out_dims: Vec<usize> = perm.iter().map(|&p| dims[p]).collect();
    let mut entries = BTreeMap::new();
    let mut index = vec![0usize; dims.len()];
    for flat_in in 0..total {
        let mut rem = flat_in;
        for (k, &d) in dims.iter().enumerate().rev() {
            index[k] = rem % d;
            rem /= d;
        }
        let mut flat_out = 0usize;
        for (p, &src) in perm.iter().enumerate() {
            flat_out = flat_out * out_dims[p] + index[src];
        }
        entries.insert((flat_out, flat_in), Scalar::one(ring));
    }
    SparseMatrix {
        ring,
        rows: total,
        cols: total,
        entries,
    }
}

/// The swap M (x) N -> N (x) M on ranks (m, n).
pub fn tensor_swap(ring: BaseRing, m: usize, n: usize) -> SparseMatrix {
    perm_legs(ring, &[m, n], &[1, 0])
}

impl fmt::Display for SparseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} x {} over {}", self.rows, self.cols, self.ring.token())?;
        for row in self.to_dense() {
            let cells: Vec<String> = row.iter().map(|s| s.to_string()).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}
