//! Dense univariate polynomials, constant term first.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::matrix::{Matrix, RatMatrix, Ring};
use super::rat::Rat;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly<T> {
    coeffs: Vec<T>,
}

pub type IntPoly = Poly<BigInt>;
pub type RatPoly = Poly<Rat>;

impl<T: Ring> Poly<T> {
    /// Trailing zero coefficients are dropped, so the leading coefficient is nonzero.
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn x_minus(c: T) -> Self {
        Self::new(vec![-c, T::one()])
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> T {
        self.coeffs.get(i).cloned().unwrap_or_else(T::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&T> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(One::is_one)
    }

    /// Coefficient sequence reads the same in both directions.
    pub fn is_palindromic(&self) -> bool {
        self.coeffs.iter().eq(self.coeffs.iter().rev())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Self::new(out)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }

    /// Division with remainder by a monic divisor; exact over any ring.
    pub fn div_rem_monic(&self, divisor: &Self) -> Result<(Self, Self)> {
        if !divisor.is_monic() {
            return Err(Error::Domain("divisor must be monic".into()));
        }
        let dd = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quot = vec![T::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = rem[k + dd].clone();
            if c.is_zero() {
                continue;
            }
            for (i, d) in divisor.coeffs.iter().enumerate() {
                rem[k + i] = rem[k + i].clone() - c.clone() * d.clone();
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Ok((Self::new(quot), Self::new(rem)))
    }

    /// Evaluates at a square matrix by Horner's rule.
    pub fn eval_matrix(&self, m: &Matrix<T>) -> Result<Matrix<T>> {
        if !m.is_square() {
            return Err(Error::Dimension("polynomial evaluated at a non-square matrix".into()));
        }
        let id = Matrix::<T>::identity(m.rows());
        let mut acc = Matrix::<T>::zeros(m.rows(), m.rows());
        for c in self.coeffs.iter().rev() {
            acc = acc.matmul(m)?.try_add(&id.scale(c))?;
        }
        Ok(acc)
    }
}

impl IntPoly {
    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn to_rational(&self) -> RatPoly {
        Poly::new(self.coeffs.iter().cloned().map(Rat::from_integer).collect())
    }
}

impl RatPoly {
    pub fn to_integer(&self) -> Option<IntPoly> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect::<Option<Vec<_>>>()
            .map(Poly::new)
    }
}

/// Characteristic polynomial `det(xI - M)` by the Faddeev-LeVerrier recursion.
pub fn char_poly(m: &RatMatrix) -> Result<RatPoly> {
    if !m.is_square() {
        return Err(Error::Dimension(format!(
            "characteristic polynomial of a {}x{} matrix",
            m.rows(),
            m.cols()
        )));
    }
    let n = m.rows();
    let id = RatMatrix::identity(n);
    let mut coeffs = vec![Rat::zero(); n + 1];
    coeffs[n] = Rat::one();
    let mut aux = RatMatrix::zeros(n, n);
    for k in 1..=n {
        aux = m.matmul(&aux)?.try_add(&id.scale(&coeffs[n - k + 1]))?;
        let tr = m.matmul(&aux)?.trace();
        coeffs[n - k] = -tr / Rat::from_integer(BigInt::from(k));
    }
    Ok(Poly::new(coeffs))
}

fn fmt_terms<T: fmt::Display + Signed + One + Zero + Clone>(
    coeffs: &[T],
    f: &mut fmt::Formatter<'_>,
) -> fmt::Result {
    if coeffs.is_empty() {
        return write!(f, "0");
    }
    let mut first = true;
    for (i, c) in coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let mag = c.abs();
        if first {
            if neg {
                write!(f, "-")?;
            }
        } else {
            write!(f, " {} ", if neg { '-' } else { '+' })?;
        }
        first = false;
        let unit = mag.is_one() && i > 0;
        if !unit {
            write!(f, "{mag}")?;
        }
        match i {
            0 => {}
            1 => write!(f, "x")?,
            _ => write!(f, "x^{i}")?,
        }
    }
    Ok(())
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_terms(&self.coeffs, f)
    }
}

impl fmt::Display for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_terms(&self.coeffs, f)
    }
}
