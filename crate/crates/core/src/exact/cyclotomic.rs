//! Cyclotomic polynomials and trial-division factorization into them.

use num_integer::Integer;

use super::poly::IntPoly;
use crate::error::{Error, Result};

/// Every `n` with `phi(n) <= 4`, i.e. all cyclotomic factors a degree-4 polynomial can have.
pub const SEARCH_SET: [u64; 9] = [1, 2, 3, 4, 5, 6, 8, 10, 12];

pub fn totient(n: u64) -> u64 {
    (1..=n).filter(|k| k.gcd(&n) == 1).count() as u64
}

/// The `n`-th cyclotomic polynomial, `(x^n - 1) / prod_{d | n, d < n} Phi_d`.
pub fn cyclotomic(n: u64) -> Result<IntPoly> {
    if n == 0 {
        return Err(Error::Domain("cyclotomic index must be positive".into()));
    }
    let mut coeffs = vec![0i64; n as usize + 1];
    coeffs[0] = -1;
    coeffs[n as usize] = 1;
    let mut p = IntPoly::from_i64(&coeffs);
    for d in (1..n).filter(|d| n % d == 0) {
        let (q, r) = p.div_rem_monic(&cyclotomic(d)?)?;
        debug_assert!(r.is_zero());
        p = q;
    }
    Ok(p)
}

/// Writes `p` as a product of cyclotomic polynomials `Phi_n`, `n` in [`SEARCH_SET`].
///
/// Returns the sorted multiset of indices, or `None` when `p` has any other factor.
pub fn cyclotomic_factorization(p: &IntPoly) -> Result<Option<Vec<u64>>> {
    if !p.is_monic() {
        return Err(Error::Domain(format!("{p} is not monic")));
    }
    let mut rest = p.clone();
    let mut found = Vec::new();
    for &n in &SEARCH_SET {
        let phi = cyclotomic(n)?;
        loop {
            if rest.degree() < phi.degree() {
                break;
            }
            let (q, r) = rest.div_rem_monic(&phi)?;
            if !r.is_zero() {
                break;
            }
            found.push(n);
            rest = q;
        }
    }
    Ok((rest.degree() == Some(0)).then_some(found))
}

/// Numerators `k` in `1..=n` coprime to `n`: the exponents `k/n` of the primitive `n`-th roots.
pub fn primitive_residues(n: u64) -> Vec<u64> {
    (1..=n).filter(|k| k.gcd(&n) == 1).collect()
}
