//! Real monodromy classes: the pair `(T0, T1)` attached to invariants `(m, a, b)`,
//! their symplectic form, and the fourteen quasi-unipotent classes.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact::cyclotomic::{cyclotomic, primitive_residues, SEARCH_SET, totient};
use crate::exact::poly::{char_poly, IntPoly};
use crate::exact::rat::{fmt_rat, int, Rat};
use crate::exact::RatMatrix;

/// Conjugacy invariants of an irreducible pair with `T0` maximal unipotent and `T1` a rank-one unipotent.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RepInvariants {
    pub m: i64,
    pub a: i64,
    pub b: Rat,
}

impl RepInvariants {
    /// Symplectic invariants (`b = 1`).
    pub fn new(m: i64, a: i64) -> Self {
        Self { m, a, b: Rat::one() }
    }

    pub fn with_b(m: i64, a: i64, b: Rat) -> Self {
        Self { m, a, b }
    }
}

impl fmt::Display for RepInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(m={}, a={}, b={})", self.m, self.a, fmt_rat(&self.b))
    }
}

/// `T0 = I + N0` with `N0 e1 = e2`, `N0 e2 = m e3`, `N0 e3 = e4`, and `T1` with first row `(1, -a, -b, -1)`.
pub fn build_pair(inv: &RepInvariants) -> Result<(RatMatrix, RatMatrix)> {
    if inv.m == 0 {
        return Err(Error::Reducible);
    }
    let t0 = RatMatrix::from_i64(&[&[1, 0, 0, 0], &[1, 1, 0, 0], &[0, inv.m, 1, 0], &[0, 0, 1, 1]])?;
    let mut t1 = RatMatrix::from_i64(&[&[1, -inv.a, 0, -1], &[0, 1, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1]])?;
    t1[(0, 2)] = -inv.b.clone();
    Ok((t0, t1))
}

/// The invariant symplectic form on the standard basis, with the `+` overall sign.
pub fn symplectic_form(inv: &RepInvariants) -> Result<RatMatrix> {
    if inv.m == 0 {
        return Err(Error::Reducible);
    }
    if !inv.b.is_one() {
        return Err(Error::NoSymplecticForm(fmt_rat(&inv.b)));
    }
    let a = inv.a;
    RatMatrix::from_i64(&[&[0, -a, -1, -1], &[a, 0, 1, 0], &[1, -1, 0, 0], &[1, 0, 0, 0]])
}

/// Characteristic polynomial of `T_inf^{-1} = T0 T1` from the invariants alone.
pub fn char_poly_t_inf(inv: &RepInvariants) -> crate::exact::RatPoly {
    let (m, a, b) = (int(inv.m), int(inv.a), inv.b.clone());
    let c2 = int(6) - int(2) * &a + &b * &m;
    let c1 = &a - int(4) + &m - &b * &m;
    crate::exact::RatPoly::new(vec![Rat::one(), c1, c2, a - int(4), Rat::one()])
}

/// `rank(T - I)` if `T` is unipotent, `None` otherwise.
pub fn unipotent_rank(t: &RatMatrix) -> Result<Option<usize>> {
    let n = t.minus_identity()?;
    if !n.pow(t.rows() as u32)?.is_zero() {
        return Ok(None);
    }
    Ok(Some(n.rank()))
}

fn require_maximal_unipotent(t0: &RatMatrix) -> Result<RatMatrix> {
    if t0.rows() != 4 || !t0.is_square() {
        return Err(Error::Dimension("expected a 4x4 matrix".into()));
    }
    match unipotent_rank(t0)? {
        Some(3) => t0.minus_identity(),
        _ => Err(Error::Precondition("T0 is not maximal unipotent".into())),
    }
}

fn require_rank_one(t1: &RatMatrix) -> Result<RatMatrix> {
    if t1.rows() != 4 || !t1.is_square() {
        return Err(Error::Dimension("expected a 4x4 matrix".into()));
    }
    match unipotent_rank(t1)? {
        Some(1) => t1.minus_identity(),
        _ => Err(Error::Precondition("T1 is not a rank-one unipotent".into())),
    }
}

/// The scalar `m` with `N0^3 N1 v = -m v` for a vector `v` in the kernel of `N0`.
pub fn m_from_kernel_vector(t0: &RatMatrix, t1: &RatMatrix, v: &[Rat]) -> Result<Rat> {
    let n0 = require_maximal_unipotent(t0)?;
    let n1 = require_rank_one(t1)?;
    if !n0.apply(v)?.iter().all(Zero::is_zero) || v.iter().all(Zero::is_zero) {
        return Err(Error::Precondition("v is not a nonzero kernel vector of N0".into()));
    }
    let w = n0.pow(3)?.apply(&n1.apply(v)?)?;
    let i = v.iter().position(|x| !x.is_zero()).expect("v is nonzero");
    let m = -(&w[i] / &v[i]);
    if w.iter().zip(v).any(|(wi, vi)| *wi != -(&m * vi)) {
        return Err(Error::Internal("N0^3 N1 does not act by a scalar on Ker N0".into()));
    }
    Ok(m)
}

fn to_i64(x: &Rat, what: &str) -> Result<i64> {
    if !x.is_integer() {
        return Err(Error::Domain(format!("{what} = {} is not an integer", fmt_rat(x))));
    }
    x.to_integer()
        .to_i64()
        .ok_or_else(|| Error::Domain(format!("{what} does not fit in 64 bits")))
}

/// Recovers `(m, a, b)` from a pair: `m` from the kernel of `N0`, `a` and `b` from the characteristic polynomial of `T0 T1`.
pub fn recover_invariants(t0: &RatMatrix, t1: &RatMatrix) -> Result<RepInvariants> {
    let n0 = require_maximal_unipotent(t0)?;
    require_rank_one(t1)?;
    let v = n0.kernel().into_iter().next().ok_or_else(|| Error::Internal("N0 has trivial kernel".into()))?;
    let m = m_from_kernel_vector(t0, t1, &v)?;
    if m.is_zero() {
        return Err(Error::Reducible);
    }
    let cp = char_poly(&t0.matmul(t1)?)?;
    let a = cp.coeff(3) + int(4);
    let b = (cp.coeff(2) - int(6) + int(2) * &a) / &m;
    Ok(RepInvariants { m: to_i64(&m, "m")?, a: to_i64(&a, "a")?, b })
}

/// A real conjugacy class with `b = 1` and its derived data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonodromyClass {
    pub invariants: RepInvariants,
    pub t0: RatMatrix,
    pub t1: RatMatrix,
    pub tinf_inverse: RatMatrix,
    pub gram: RatMatrix,
    pub char_poly: IntPoly,
    pub cyclotomic_indices: Option<Vec<u64>>,
}

impl MonodromyClass {
    pub fn new(inv: RepInvariants) -> Result<Self> {
        let (t0, t1) = build_pair(&inv)?;
        let gram = symplectic_form(&inv)?;
        let tinf_inverse = t0.matmul(&t1)?;
        let char_poly = char_poly(&tinf_inverse)?
            .to_integer()
            .ok_or_else(|| Error::Internal("integer matrix with non-integer characteristic polynomial".into()))?;
        let cyclotomic_indices = crate::exact::cyclotomic::cyclotomic_factorization(&char_poly)?;
        Ok(Self { invariants: inv, t0, t1, tinf_inverse, gram, char_poly, cyclotomic_indices })
    }

    pub fn m(&self) -> i64 {
        self.invariants.m
    }

    pub fn a(&self) -> i64 {
        self.invariants.a
    }

    pub fn n0(&self) -> RatMatrix {
        self.t0.minus_identity().expect("square")
    }

    pub fn n1(&self) -> RatMatrix {
        self.t1.minus_identity().expect("square")
    }

    pub fn is_quasi_unipotent(&self) -> bool {
        self.cyclotomic_indices.is_some()
    }

    /// Local exponents at infinity, ascending, in `(0, 1]`.
    pub fn exponents(&self) -> Result<Vec<Rat>> {
        exponents(self)
    }
}

/// Exponents `k/n` over primitive residues `k` of each cyclotomic factor `Phi_n`; eigenvalue 1 gives exponent 1.
pub fn exponents(cls: &MonodromyClass) -> Result<Vec<Rat>> {
    let indices = cls
        .cyclotomic_indices
        .as_ref()
        .ok_or_else(|| Error::Domain(format!("class {} is not quasi-unipotent", cls.invariants)))?;
    let mut out: Vec<Rat> = indices
        .iter()
        .flat_map(|&n| primitive_residues(n).into_iter().map(move |k| Rat::new(BigInt::from(k), BigInt::from(n))))
        .collect();
    out.sort();
    Ok(out)
}

fn multisets(start: usize, degree: u64, acc: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
    if degree == 0 {
        out.push(acc.clone());
        return;
    }
    for (i, &n) in SEARCH_SET.iter().enumerate().skip(start) {
        let d = totient(n);
        if d <= degree {
            acc.push(n);
            multisets(i, degree - d, acc, out);
            acc.pop();
        }
    }
}

/// All degree-4 products of cyclotomic polynomials, as sorted index multisets.
pub fn cyclotomic_products() -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    multisets(0, 4, &mut Vec::new(), &mut out);
    out
}

/// Solves for `(m, a)` with `b = 1` from a degree-4 polynomial; `None` unless it is palindromic with constant term 1.
pub fn invariants_from_char_poly(p: &IntPoly) -> Option<(i64, i64)> {
    if p.degree() != Some(4) || !p.coeff(0).is_one() || p.coeff(1) != p.coeff(3) {
        return None;
    }
    let c3 = p.coeff(3).to_i64()?;
    let c2 = p.coeff(2).to_i64()?;
    let a = c3 + 4;
    Some((c2 - 6 + 2 * a, a))
}

/// The real classes with quasi-unipotent monodromy at infinity, sorted by (exponents, m, a).
pub fn enumerate_real_classes() -> Result<Vec<MonodromyClass>> {
    let mut classes = Vec::new();
    for indices in cyclotomic_products() {
        let mut p = IntPoly::from_i64(&[1]);
        for &n in &indices {
            p = p.mul(&cyclotomic(n)?);
        }
        let Some((m, a)) = invariants_from_char_poly(&p) else { continue };
        if m == 0 {
            continue;
        }
        let cls = MonodromyClass::new(RepInvariants::new(m, a))?;
        if cls.char_poly != p || cls.cyclotomic_indices.as_deref() != Some(&indices[..]) {
            return Err(Error::Internal(format!("class {} does not reproduce {p}", cls.invariants)));
        }
        classes.push(cls);
    }
    let mut keyed: Vec<(Vec<Rat>, i64, i64, MonodromyClass)> = classes
        .into_iter()
        .map(|c| Ok((c.exponents()?, c.m(), c.a(), c)))
        .collect::<Result<_>>()?;
    keyed.sort_by(|x, y| (&x.0, x.1, x.2).cmp(&(&y.0, y.1, y.2)));
    Ok(keyed.into_iter().map(|k| k.3).collect())
}

/// Looks up a class by `(m, a)` among the real classes.
pub fn find_class(m: i64, a: i64) -> Result<MonodromyClass> {
    enumerate_real_classes()?
        .into_iter()
        .find(|c| c.m() == m && c.a() == a)
        .ok_or_else(|| Error::Domain(format!("(m, a) = ({m}, {a}) is not one of the real classes")))
}

/// `T^T G T == G`.
pub fn preserves_form(t: &RatMatrix, gram: &RatMatrix) -> Result<bool> {
    Ok(t.transpose().matmul(gram)?.matmul(t)? == *gram)
}
