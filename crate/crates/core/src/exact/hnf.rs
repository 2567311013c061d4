//! Column-style Hermite normal form and sublattice indices.
//!
//! The canonical shape is lower triangular: `H = A*U` with `U` unimodular,
//! `H[i][j] = 0` for `j > i`, positive pivots, and every entry left of a pivot
//! reduced into `[0, pivot)`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::{IntMatrix, RatMatrix};
use super::rat::{denom_lcm, Rat};
use crate::error::{Error, Result};

fn swap_cols(a: &mut IntMatrix, x: usize, y: usize) {
    if x == y {
        return;
    }
    for i in 0..a.rows() {
        let tmp = a[(i, x)].clone();
        a[(i, x)] = a[(i, y)].clone();
        a[(i, y)] = tmp;
    }
}

/// `col[dst] -= f * col[src]`
fn sub_col(a: &mut IntMatrix, dst: usize, src: usize, f: &BigInt) {
    if f.is_zero() {
        return;
    }
    for i in 0..a.rows() {
        let v = &a[(i, dst)] - f * &a[(i, src)];
        a[(i, dst)] = v;
    }
}

fn negate_col(a: &mut IntMatrix, c: usize) {
    for i in 0..a.rows() {
        a[(i, c)] = -a[(i, c)].clone();
    }
}

/// Column echelon form of an integer matrix; returns the reduced matrix and the pivot rows.
///
/// Columns `0..pivots.len()` carry the lattice basis, the rest are zero.
pub fn column_echelon(a: &IntMatrix) -> (IntMatrix, Vec<usize>) {
    let mut h = a.clone();
    let mut pivots = Vec::new();
    let mut pc = 0;
    for i in 0..h.rows() {
        if pc == h.cols() {
            break;
        }
        loop {
            // smallest nonzero entry of row i in columns pc..
            let best = (pc..h.cols())
                .filter(|&c| !h[(i, c)].is_zero())
                .min_by(|&x, &y| h[(i, x)].abs().cmp(&h[(i, y)].abs()));
            let Some(b) = best else { break };
            swap_cols(&mut h, pc, b);
            let mut done = true;
            for c in pc + 1..h.cols() {
                if h[(i, c)].is_zero() {
                    continue;
                }
                let q = h[(i, c)].div_floor(&h[(i, pc)]);
                sub_col(&mut h, c, pc, &q);
                if !h[(i, c)].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h[(i, pc)].is_zero() {
            continue;
        }
        if h[(i, pc)].is_negative() {
            negate_col(&mut h, pc);
        }
        let piv = h[(i, pc)].clone();
        for c in 0..pc {
            let q = h[(i, c)].div_floor(&piv);
            sub_col(&mut h, c, pc, &q);
        }
        pivots.push(i);
        pc += 1;
    }
    (h, pivots)
}

/// Hermite normal form of a nonsingular square integer matrix.
pub fn integer_hnf(a: &IntMatrix) -> Result<IntMatrix> {
    if !a.is_square() {
        return Err(Error::Dimension("HNF of a non-square matrix".into()));
    }
    let (h, pivots) = column_echelon(a);
    if pivots.len() < a.rows() {
        return Err(Error::Rank(format!("rank {} < {}", pivots.len(), a.rows())));
    }
    Ok(h)
}

/// Hermite normal form of a nonsingular rational matrix: clear the common
/// denominator, reduce over the integers, divide back.
///
/// Two nonsingular matrices give the same output iff their columns span the same lattice.
pub fn column_hnf(m: &RatMatrix) -> Result<RatMatrix> {
    let d = denom_lcm(m.entries());
    let scaled = m.map(|x| (x * Rat::from_integer(d.clone())).to_integer());
    let h = integer_hnf(&scaled)?;
    let d = Rat::from_integer(d);
    Ok(h.map(|x| Rat::from_integer(x.clone()) / &d))
}

/// Index of a sublattice of `Z^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LatticeIndex {
    Finite(BigInt),
    Infinite,
}

/// Index in `Z^n` of the lattice spanned by `vectors` (the product of the
/// elementary divisors), or `Infinite` when they span a proper subspace.
pub fn span_index(n: usize, vectors: &[Vec<BigInt>]) -> Result<LatticeIndex> {
    if n == 0 {
        return Ok(LatticeIndex::Finite(BigInt::one()));
    }
    if vectors.is_empty() {
        return Ok(LatticeIndex::Infinite);
    }
    if vectors.iter().any(|v| v.len() != n) {
        return Err(Error::Dimension(format!("expected vectors of length {n}")));
    }
    let a = IntMatrix::from_columns(vectors)?;
    let (h, pivots) = column_echelon(&a);
    if pivots.len() < n {
        return Ok(LatticeIndex::Infinite);
    }
    let idx = (0..n).fold(BigInt::one(), |acc, i| acc * &h[(i, i)]);
    Ok(LatticeIndex::Finite(idx))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn im(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect())
            .unwrap()
    }

    fn bi(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn identity_is_fixed() {
        let id = RatMatrix::identity(4);
        assert_eq!(column_hnf(&id).unwrap(), id);
    }

    #[test]
    fn reduces_added_column() {
        // diag(2,1,1,1) with twice the second column added to the first
        let m = im(&[&[2, 0, 0, 0], &[2, 1, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1]]);
        let h = integer_hnf(&m).unwrap();
        assert_eq!(h, im(&[&[2, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1]]));
    }

    #[test]
    fn singular_is_rank_error() {
        let m = RatMatrix::from_i64(&[&[1, 2], &[2, 4]]).unwrap();
        assert!(matches!(column_hnf(&m), Err(Error::Rank(_))));
    }

    #[test]
    fn span_index_examples() {
        let e: Vec<Vec<BigInt>> = (0..4)
            .map(|i| (0..4).map(|j| BigInt::from((i == j) as i64)).collect())
            .collect();
        assert_eq!(span_index(4, &e).unwrap(), LatticeIndex::Finite(BigInt::one()));
        assert_eq!(
            span_index(2, &[bi(&[2, 0]), bi(&[0, 1])]).unwrap(),
            LatticeIndex::Finite(BigInt::from(2))
        );
        assert_eq!(span_index(2, &[bi(&[2, 4]), bi(&[1, 2])]).unwrap(), LatticeIndex::Infinite);
        assert_eq!(span_index(3, &[]).unwrap(), LatticeIndex::Infinite);
        // redundant generators: (2,0), (0,2), (1,1) span index 2
        assert_eq!(
            span_index(2, &[bi(&[2, 0]), bi(&[0, 2]), bi(&[1, 1])]).unwrap(),
            LatticeIndex::Finite(BigInt::from(2))
        );
    }

    fn random_unimodular(ops: &[(usize, usize, i64)]) -> IntMatrix {
        let mut u = IntMatrix::identity(4);
        for &(x, y, f) in ops {
            if x != y {
                sub_col(&mut u, x, y, &BigInt::from(f));
            } else {
                swap_cols(&mut u, x, (x + 1) % 4);
            }
        }
        u
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]
        #[test]
        fn hnf_invariant_under_right_unimodular(
            entries in prop::collection::vec(-6i64..7, 16),
            den in 1i64..7,
            ops in prop::collection::vec((0usize..4, 0usize..4, -3i64..4), 0..12),
        ) {
            let m = RatMatrix::new(4, 4, entries.iter().map(|&x| Rat::new(x.into(), den.into())).collect()).unwrap();
            prop_assume!(!m.det().unwrap().is_zero());
            let u = random_unimodular(&ops).to_rational();
            prop_assert!(u.det().unwrap().abs().is_one());
            let h1 = column_hnf(&m).unwrap();
            let h2 = column_hnf(&m.matmul(&u).unwrap()).unwrap();
            prop_assert_eq!(&h1, &h2);
            prop_assert_eq!(&column_hnf(&h1).unwrap(), &h1);
            // same lattice: h1^{-1} m is integral unimodular
            let t = h1.inverse().unwrap().matmul(&m).unwrap();
            prop_assert!(t.is_integral());
            prop_assert!(t.det().unwrap().abs().is_one());
        }

        #[test]
        fn span_index_is_abs_det(entries in prop::collection::vec(-8i64..9, 9)) {
            let cols: Vec<Vec<BigInt>> = entries.chunks(3).map(bi).collect();
            let det = IntMatrix::from_columns(&cols).unwrap().to_rational().det().unwrap();
            let idx = span_index(3, &cols).unwrap();
            if det.is_zero() {
                prop_assert_eq!(idx, LatticeIndex::Infinite);
            } else {
                prop_assert_eq!(idx, LatticeIndex::Finite(det.abs().to_integer()));
            }
        }
    }
}
