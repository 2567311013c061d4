//! Elements `p + q*sqrt(t)` of the quadratic field Q(sqrt t).
//!
//! A value with zero radical part is an ordinary rational and mixes freely with
//! any radicand. Two values whose radical parts are both nonzero must share the
//! same radicand; anything else is a hard error (`Error::MixedRadicand`) from the
//! checked operations, and a panic from the operator impls.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Roots;
use num_traits::{One, Zero};

use super::rat::{fmt_rat, Rat};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadElem {
    rational: Rat,
    radical: Rat,
    radicand: u64,
}

fn exact_sqrt(t: u64) -> Option<u64> {
    let r = t.sqrt();
    (r * r == t).then_some(r)
}

impl QuadElem {
    /// Builds `rational + radical*sqrt(radicand)`; `radicand` must be positive.
    pub fn new(rational: Rat, radical: Rat, radicand: u64) -> Result<Self> {
        if radicand == 0 {
            return Err(Error::Domain("radicand must be positive".into()));
        }
        Ok(Self::normalized(rational, radical, radicand))
    }

    fn normalized(rational: Rat, radical: Rat, radicand: u64) -> Self {
        if radical.is_zero() {
            return Self { rational, radical, radicand: 1 };
        }
        if let Some(root) = exact_sqrt(radicand) {
            let rational = rational + radical * Rat::from_integer(BigInt::from(root));
            return Self { rational, radical: Rat::zero(), radicand: 1 };
        }
        Self { rational, radical, radicand }
    }

    pub fn from_rat(x: Rat) -> Self {
        Self { rational: x, radical: Rat::zero(), radicand: 1 }
    }

    /// `sqrt(t)` itself.
    pub fn sqrt(t: u64) -> Result<Self> {
        Self::new(Rat::zero(), Rat::one(), t)
    }

    /// `x * sqrt(t)`.
    pub fn times_sqrt(x: Rat, t: u64) -> Result<Self> {
        Self::new(Rat::zero(), x, t)
    }

    pub fn rational_part(&self) -> &Rat {
        &self.rational
    }

    pub fn radical_part(&self) -> &Rat {
        &self.radical
    }

    /// The radicand; 1 whenever the radical part vanishes.
    pub fn radicand(&self) -> u64 {
        self.radicand
    }

    pub fn is_rational(&self) -> bool {
        self.radical.is_zero()
    }

    pub fn to_rat(&self) -> Option<Rat> {
        self.is_rational().then(|| self.rational.clone())
    }

    fn common_radicand(&self, other: &Self) -> Result<u64> {
        match (self.is_rational(), other.is_rational()) {
            (true, _) => Ok(other.radicand),
            (_, true) => Ok(self.radicand),
            _ if self.radicand == other.radicand => Ok(self.radicand),
            _ => Err(Error::MixedRadicand(self.radicand, other.radicand)),
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        let t = self.common_radicand(other)?;
        Ok(Self::normalized(
            &self.rational + &other.rational,
            &self.radical + &other.radical,
            t,
        ))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&-other.clone())
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        let t = self.common_radicand(other)?;
        let tt = Rat::from_integer(BigInt::from(t));
        let rational = &self.rational * &other.rational + &self.radical * &other.radical * tt;
        let radical = &self.rational * &other.radical + &self.radical * &other.rational;
        Ok(Self::normalized(rational, radical, t))
    }

    /// Field inverse, `(p - q sqrt t) / (p^2 - q^2 t)`.
    pub fn checked_inv(&self) -> Result<Self> {
        let tt = Rat::from_integer(BigInt::from(self.radicand));
        let norm = &self.rational * &self.rational - &self.radical * &self.radical * tt;
        if norm.is_zero() {
            return Err(Error::Domain("division by zero in Q(sqrt t)".into()));
        }
        Ok(Self::normalized(
            &self.rational / &norm,
            -&self.radical / &norm,
            self.radicand,
        ))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        self.checked_mul(&other.checked_inv()?)
    }
}

impl From<Rat> for QuadElem {
    fn from(x: Rat) -> Self {
        Self::from_rat(x)
    }
}

impl From<i64> for QuadElem {
    fn from(n: i64) -> Self {
        Self::from_rat(Rat::from_integer(BigInt::from(n)))
    }
}

impl fmt::Display for QuadElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            write!(f, "{}", fmt_rat(&self.rational))
        } else if self.rational.is_zero() {
            write!(f, "{}*sqrt({})", fmt_rat(&self.radical), self.radicand)
        } else {
            write!(
                f,
                "{} + {}*sqrt({})",
                fmt_rat(&self.rational),
                fmt_rat(&self.radical),
                self.radicand
            )
        }
    }
}

impl Neg for QuadElem {
    type Output = Self;
    fn neg(self) -> Self {
        Self { rational: -self.rational, radical: -self.radical, radicand: self.radicand }
    }
}

macro_rules! forward_op {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr for QuadElem {
            type Output = QuadElem;
            fn $method(self, rhs: Self) -> Self {
                self.$checked(&rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl<'a> $tr<&'a QuadElem> for &'a QuadElem {
            type Output = QuadElem;
            fn $method(self, rhs: &'a QuadElem) -> QuadElem {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
    };
}

forward_op!(Add, add, checked_add);
forward_op!(Sub, sub, checked_sub);
forward_op!(Mul, mul, checked_mul);
forward_op!(Div, div, checked_div);

impl Zero for QuadElem {
    fn zero() -> Self {
        Self::from_rat(Rat::zero())
    }
    fn is_zero(&self) -> bool {
        self.rational.is_zero() && self.radical.is_zero()
    }
}

impl One for QuadElem {
    fn one() -> Self {
        Self::from_rat(Rat::one())
    }
}
