//! Monodromy weight filtration of a maximal unipotent `T0`.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact::{Rat, RatMatrix};

/// `W0 ⊂ W2 ⊂ W4 ⊂ W6` with `W_{2i} = Ker N0^{i+1}`, each as a list of basis vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightFiltration {
    spaces: [Vec<Vec<Rat>>; 4],
}

impl WeightFiltration {
    /// Basis of `W_{2i}`.
    pub fn w(&self, i: usize) -> &[Vec<Rat>] {
        &self.spaces[i]
    }

    /// A basis `p1..p4` (as columns) with `p_{4-i}, ..., p4` spanning `W_{2i}`.
    pub fn adapted_frame(&self) -> Result<RatMatrix> {
        let mut chosen: Vec<Vec<Rat>> = Vec::new();
        for space in &self.spaces {
            let next = space
                .iter()
                .find(|v| {
                    let mut trial = chosen.clone();
                    trial.push((*v).clone());
                    RatMatrix::from_columns(&trial).map(|m| m.rank()).unwrap_or(0) == trial.len()
                })
                .ok_or_else(|| Error::Internal("weight filtration is not strictly increasing".into()))?;
            chosen.push(next.clone());
        }
        chosen.reverse();
        RatMatrix::from_columns(&chosen)
    }
}

fn span_contains(basis: &[Vec<Rat>], v: &[Rat]) -> bool {
    if v.iter().all(Zero::is_zero) {
        return true;
    }
    let mut cols = basis.to_vec();
    let before = RatMatrix::from_columns(&cols).map(|m| m.rank()).unwrap_or(0);
    cols.push(v.to_vec());
    RatMatrix::from_columns(&cols).map(|m| m.rank()).unwrap_or(0) == before
}

/// Kernels of the powers of a nilpotent `N0` with `N0^3 != 0`, `N0^4 = 0`.
pub fn weight_filtration(n0: &RatMatrix) -> Result<WeightFiltration> {
    if !n0.is_square() || n0.rows() != 4 {
        return Err(Error::Dimension("expected a 4x4 matrix".into()));
    }
    if !n0.pow(4)?.is_zero() || n0.pow(3)?.is_zero() {
        return Err(Error::Precondition("N0 is not maximally nilpotent".into()));
    }
    let mut spaces: [Vec<Vec<Rat>>; 4] = Default::default();
    for (i, space) in spaces.iter_mut().enumerate() {
        *space = n0.pow(i as u32 + 1)?.kernel();
        if space.len() != i + 1 {
            return Err(Error::Internal(format!("dim Ker N0^{} = {}", i + 1, space.len())));
        }
    }
    Ok(WeightFiltration { spaces })
}

/// `N0(W_{2i}) ⊆ W_{2i-2}` for every `i`.
pub fn is_lowered_by(filtration: &WeightFiltration, n0: &RatMatrix) -> Result<bool> {
    for i in 0..4 {
        for v in filtration.w(i) {
            let image = n0.apply(v)?;
            let ok = if i == 0 { image.iter().all(Zero::is_zero) } else { span_contains(filtration.w(i - 1), &image) };
            if !ok {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat::int;
    use crate::monodromy::{build_pair, RepInvariants};

    fn e(i: usize) -> Vec<Rat> {
        (0..4).map(|j| int((i == j) as i64)).collect()
    }

    #[test]
    fn flag_is_standard() {
        for m in [5, 1, -3] {
            let (t0, _) = build_pair(&RepInvariants::new(m, 2)).unwrap();
            let n0 = t0.minus_identity().unwrap();
            let w = weight_filtration(&n0).unwrap();
            for i in 0..4 {
                assert_eq!(w.w(i).len(), i + 1);
                for k in 0..4 {
                    assert_eq!(span_contains(w.w(i), &e(k)), k >= 3 - i, "m={m} W{} e{}", 2 * i, k + 1);
                }
            }
            assert!(is_lowered_by(&w, &n0).unwrap());
            let p = w.adapted_frame().unwrap();
            assert_eq!(p.rank(), 4);
        }
    }

    #[test]
    fn rejects_non_maximal() {
        let n = RatMatrix::from_i64(&[&[0, 0, 0, 0], &[1, 0, 0, 0], &[0, 0, 0, 0], &[0, 0, 1, 0]]).unwrap();
        assert!(matches!(weight_filtration(&n), Err(Error::Precondition(_))));
        assert!(matches!(weight_filtration(&RatMatrix::identity(4)), Err(Error::Precondition(_))));
    }
}
