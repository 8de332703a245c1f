//! Built-in group schemes, pairings and test algebras.
//!
//! Everything here is constructed over an arbitrary supported ring (except
//! `alpha`, which lives in its natural characteristic) and doubles as the
//! test corpus.  Basis conventions are fixed so serialized files are
//! stable:
//!
//! * monomial algebras use labels `1, x, x2, x3, ...` in degree order;
//! * `constant_group` indexes the delta basis by the mixed-radix encoding
//!   of group elements, first listed order most significant, labels
//!   `d0, d1, ...`;
//! * tensor products pair labels as `left*right`, ordered with the left
//!   factor most significant (the flat-index convention).

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::exactlin::{is_prime, perm_legs, BaseRing, Scalar, SparseMatrix};
use crate::hopf::{AssocAlgebraData, HopfAlgebraData};
use crate::motive::HopfPairing;

fn one(ring: BaseRing) -> Scalar {
    Scalar::one(ring)
}

fn monomial_labels(n: usize) -> Vec<String> {
    (0..n)
        .map(|i| match i {
            0 => "1".to_string(),
            1 => "x".to_string(),
            _ => format!("x{}", i),
        })
        .collect()
}

/// Group algebra of the n-th roots of unity: `R[x]/(x^n - 1)` with
/// `Delta x = x (x) x`, `eps x = 1`, `iota x = x^(n-1)`.
pub fn mu_n(ring: BaseRing, n: usize) -> HopfAlgebraData {
    assert!(n >= 1, "mu_n needs n >= 1");
    let mut mul = Vec::new();
    let mut comul = Vec::new();
    let mut counit = Vec::new();
    let mut antipode = Vec::new();
    for i in 0..n {
        for j in 0..n {
            mul.push(((i + j) % n, i * n + j, one(ring)));
        }
        comul.push((i * n + i, i, one(ring)));
        counit.push((0, i, one(ring)));
        antipode.push(((n - i) % n, i, one(ring)));
    }
    HopfAlgebraData::new(
        ring,
        monomial_labels(n),
        SparseMatrix::from_entries(ring, n, n * n, mul).unwrap(),
        SparseMatrix::basis_col(ring, n, 0),
        SparseMatrix::from_entries(ring, n * n, n, comul).unwrap(),
        SparseMatrix::from_entries(ring, 1, n, counit).unwrap(),
        SparseMatrix::from_entries(ring, n, n, antipode).unwrap(),
    )
    .expect("mu_n structure is well-shaped")
}

/// The rank-1 trivial Hopf algebra, also available as `mu_n(ring, 1)`.
pub fn trivial(ring: BaseRing) -> HopfAlgebraData {
    mu_n(ring, 1)
}

fn mixed_radix_add(orders: &[usize], a: usize, b: usize, negate_b: bool) -> usize {
    let mut a = a;
    let mut b = b;
    let mut digits = vec![0usize; orders.len()];
    for (pos, &m) in orders.iter().enumerate().rev() {
        let da = a % m;
        let db = b % m;
        let db = if negate_b { (m - db) % m } else { db };
        digits[pos] = (da + db) % m;
        a /= m;
        b /= m;
    }
    let mut idx = 0;
    for (pos, &m) in orders.iter().enumerate() {
        idx = idx * m + digits[pos];
    }
    idx
}

/// Functions on the finite abelian group `Z/n_1 x ... x Z/n_m`: pointwise
/// product on the delta basis, convolution coproduct, antipode pulling back
/// along negation.
pub fn constant_group(ring: BaseRing, orders: &[usize]) -> HopfAlgebraData {
    assert!(!orders.is_empty(), "constant_group needs at least one order");
    assert!(orders.iter().all(|&m| m >= 1), "orders must be >= 1");
    let n: usize = orders.iter().product();
    let mut mul = Vec::new();
    let mut unit = Vec::new();
    let mut comul = Vec::new();
    let mut antipode = Vec::new();
    for g in 0..n {
        mul.push((g, g * n + g, one(ring)));
        unit.push((g, 0, one(ring)));
        antipode.push((mixed_radix_add(orders, 0, g, true), g, one(ring)));
        for h in 0..n {
            let sum = mixed_radix_add(orders, g, h, false);
            comul.push((g * n + h, sum, one(ring)));
        }
    }
    let labels = (0..n).map(|g| format!("d{}", g)).collect();
    HopfAlgebraData::new(
        ring,
        labels,
        SparseMatrix::from_entries(ring, n, n * n, mul).unwrap(),
        SparseMatrix::from_entries(ring, n, 1, unit).unwrap(),
        SparseMatrix::from_entries(ring, n * n, n, comul).unwrap(),
        SparseMatrix::from_entries(ring, 1, n, vec![(0, 0, one(ring))]).unwrap(),
        SparseMatrix::from_entries(ring, n, n, antipode).unwrap(),
    )
    .expect("constant_group structure is well-shaped")
}

fn binomial_scalar(ring: BaseRing, m: usize, j: usize) -> Scalar {
    let b = num_integer::binomial(BigInt::from(m), BigInt::from(j));
    Scalar::from_bigint(ring, b)
}

/// The infinitesimal group scheme `alpha_{p^k}` over `F_p`:
/// `F_p[x]/(x^(p^k))` with the additive coproduct
/// `Delta(x^m) = sum C(m, j) x^j (x) x^(m-j)` and `iota(x^m) = (-1)^m x^m`.
pub fn alpha(p: u64, k: u32) -> Result<HopfAlgebraData> {
    if !is_prime(p) {
        return Err(Error::NotPrime);
    }
    if k == 0 {
        return Err(Error::Invalid("alpha needs k >= 1".into()));
    }
    let rank = p
        .checked_pow(k)
        .and_then(|r| usize::try_from(r).ok())
        .filter(|&r| r <= 1 << 20)
        .ok_or_else(|| Error::Invalid("alpha rank does not fit in memory".into()))?;
    let ring = BaseRing::IntegersMod(p);
    let mut mul = Vec::new();
    let mut comul = Vec::new();
    let mut antipode = Vec::new();
    for i in 0..rank {
        for j in 0..rank {
            if i + j < rank {
                mul.push((i + j, i * rank + j, one(ring)));
            }
        }
        for j in 0..=i {
            let c = binomial_scalar(ring, i, j);
            if !c.is_zero() {
                comul.push((j * rank + (i - j), i, c));
            }
        }
        let sign = Scalar::from_i64(ring, if i % 2 == 0 { 1 } else { -1 });
        antipode.push((i, i, sign));
    }
    HopfAlgebraData::new(
        ring,
        monomial_labels(rank),
        SparseMatrix::from_entries(ring, rank, rank * rank, mul)?,
        SparseMatrix::basis_col(ring, rank, 0),
        SparseMatrix::from_entries(ring, rank * rank, rank, comul)?,
        SparseMatrix::from_entries(ring, 1, rank, vec![(0, 0, one(ring))])?,
        SparseMatrix::from_entries(ring, rank, rank, antipode)?,
    )
}

/// The truncated exponential pairing on `alpha_p (x) alpha_p`:
/// `u(x^i (x) x^j) = (i == j) . i!`, reduced mod p.
pub fn exp_pairing(p: u64) -> Result<HopfPairing> {
    let a = alpha(p, 1)?;
    let b = alpha(p, 1)?;
    let ring = a.ring;
    let rank = a.rank;
    let mut entries = Vec::new();
    let mut factorial = BigInt::from(1);
    for i in 0..rank {
        if i > 0 {
            factorial *= BigInt::from(i);
        }
        let v = Scalar::from_bigint(ring, factorial.clone());
        if !v.is_zero() {
            entries.push((0, i * rank + i, v));
        }
    }
    let u = SparseMatrix::from_entries(ring, 1, rank * rank, entries)?;
    HopfPairing::new(a, b, u)
}

/// Tensor product Hopf algebra on the Kronecker-assembled structure maps.
pub fn tensor_hopf(h1: &HopfAlgebraData, h2: &HopfAlgebraData) -> Result<HopfAlgebraData> {
    if h1.ring != h2.ring {
        return Err(Error::RingMismatch);
    }
    let ring = h1.ring;
    let (n1, n2) = (h1.rank, h2.rank);
    let regroup_in = perm_legs(ring, &[n1, n2, n1, n2], &[0, 2, 1, 3]);
    let regroup_out = perm_legs(ring, &[n1, n1, n2, n2], &[0, 2, 1, 3]);
    let mut labels = Vec::with_capacity(n1 * n2);
    for a in &h1.basis_labels {
        for b in &h2.basis_labels {
            labels.push(format!("{}*{}", a, b));
        }
    }
    HopfAlgebraData::new(
        ring,
        labels,
        h1.mul.kron(&h2.mul)?.mat_mul(&regroup_in)?,
        h1.unit.kron(&h2.unit)?,
        regroup_out.mat_mul(&h1.comul.kron(&h2.comul)?)?,
        h1.counit.kron(&h2.counit)?,
        h1.antipode.kron(&h2.antipode)?,
    )
}

/// The base ring viewed as the rank-1 test algebra.
pub fn scalar_algebra(ring: BaseRing) -> AssocAlgebraData {
    AssocAlgebraData::new(
        ring,
        vec!["1".into()],
        SparseMatrix::identity(ring, 1),
        SparseMatrix::identity(ring, 1),
    )
    .unwrap()
}

/// Dual numbers `R[e]/(e^2)`, the tangent-vector test algebra.
pub fn dual_numbers(ring: BaseRing) -> AssocAlgebraData {
    let mul = SparseMatrix::from_entries(
        ring,
        2,
        4,
        vec![(0, 0, one(ring)), (1, 1, one(ring)), (1, 2, one(ring))],
    )
    .unwrap();
    AssocAlgebraData::new(
        ring,
        vec!["1".into(), "e".into()],
        mul,
        SparseMatrix::basis_col(ring, 2, 0),
    )
    .unwrap()
}

/// Functions on a two-element set, `R x R` with componentwise product.
pub fn split_pair(ring: BaseRing) -> AssocAlgebraData {
    let mul = SparseMatrix::from_entries(
        ring,
        2,
        4,
        vec![(0, 0, one(ring)), (1, 3, one(ring))],
    )
    .unwrap();
    let unit = SparseMatrix::from_entries(
        ring,
        2,
        1,
        vec![(0, 0, one(ring)), (1, 0, one(ring))],
    )
    .unwrap();
    AssocAlgebraData::new(ring, vec!["p".into(), "q".into()], mul, unit).unwrap()
}
