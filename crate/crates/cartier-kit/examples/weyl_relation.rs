//! The truncated Weyl algebra from the exponential pairing.  Smashing
//! alpha_p against itself along u(x^i (x) y^j) = [i == j] i! twists the
//! tensor algebra so that y x = x y + 1: differential operators on a
//! characteristic-p infinitesimal line.
//!
//! ```text
//! cargo run --example weyl_relation
//! ```

use cartier_kit::catalog;
use cartier_kit::exactlin::SparseMatrix;
use cartier_kit::motive::smash;

fn main() -> cartier_kit::Result<()> {
    for p in [3usize, 5] {
        let pairing = catalog::exp_pairing(p as u64)?;
        let n = pairing.a.rank;
        let ring = pairing.a.ring;
        let w = smash(&pairing)?;
        let big = n * n;

        // Basis vector a^i # b^j sits at flat index i*n + j; the column of
        // the product (v, w) at v*big + w.
        let x_gen = 1 * n; // x # 1
        let y_gen = 1; // 1 # y
        let yx = w.mul.mat_mul(&SparseMatrix::basis_col(ring, big * big, y_gen * big + x_gen))?;
        let xy = w.mul.mat_mul(&SparseMatrix::basis_col(ring, big * big, x_gen * big + y_gen))?;
        let expected = xy.add(&w.unit)?;
        assert_eq!(yx, expected);
        println!("p = {}: (1#y)(x#1) == (x#1)(1#y) + 1#1 in rank {}", p, w.rank);

        // The relation propagates: y x^2 = x^2 y + 2x.
        let x2 = 2 * n;
        let yx2 = w.mul.mat_mul(&SparseMatrix::basis_col(ring, big * big, y_gen * big + x2))?;
        let x2y = w.mul.mat_mul(&SparseMatrix::basis_col(ring, big * big, x2 * big + y_gen))?;
        let two_x = SparseMatrix::basis_col(ring, big, x_gen)
            .scale(&cartier_kit::exactlin::Scalar::from_i64(ring, 2))?;
        assert_eq!(yx2, x2y.add(&two_x)?);
        println!("p = {}: (1#y)(x2#1) == (x2#1)(1#y) + 2(x#1)", p);
    }
    Ok(())
}
