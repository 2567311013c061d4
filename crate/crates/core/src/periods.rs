//! Truncated period series with exact rational coefficients.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::rat::{fmt_rat, int};
use crate::exact::Rat;

/// `sum_{n <= N} c_n z^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalSeries {
    coeffs: Vec<Rat>,
}

impl RationalSeries {
    /// A series of order `coeffs.len() - 1`; empty input is the zero series of order 0.
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        if coeffs.is_empty() {
            coeffs.push(Rat::zero());
        }
        Self { coeffs }
    }

    pub fn constant(c: Rat, order: usize) -> Self {
        let mut coeffs = vec![Rat::zero(); order + 1];
        coeffs[0] = c;
        Self { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> Rat {
        self.coeffs.get(n).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::new(self.coeffs.iter().take(order + 1).cloned().collect())
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.order().min(rhs.order());
        Self::new((0..=n).map(|i| &self.coeffs[i] + &rhs.coeffs[i]).collect())
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let n = self.order().min(rhs.order());
        Self::new((0..=n).map(|i| &self.coeffs[i] - &rhs.coeffs[i]).collect())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let n = self.order().min(rhs.order());
        Self::new(
            (0..=n)
                .map(|k| (0..=k).fold(Rat::zero(), |acc, i| acc + &self.coeffs[i] * &rhs.coeffs[k - i]))
                .collect(),
        )
    }

    /// `z^k` times the series, keeping the order.
    fn shift(&self, k: usize) -> Self {
        let n = self.order();
        Self::new((0..=n).map(|i| if i < k { Rat::zero() } else { self.coeffs[i - k].clone() }).collect())
    }

    /// `Θ + c` with `Θ = z d/dz`.
    fn theta_plus(&self, c: &Rat) -> Self {
        Self::new(self.coeffs.iter().enumerate().map(|(n, x)| x * (int(n as i64) + c)).collect())
    }
}

impl fmt::Display for RationalSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (n, c) in self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            let (sign, abs) = if c.is_negative() { ("-", -c.clone()) } else { ("+", c.clone()) };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            match n {
                0 => write!(f, "{}", fmt_rat(&abs))?,
                1 => write!(f, "{} z", fmt_rat(&abs))?,
                _ => write!(f, "{} z^{n}", fmt_rat(&abs))?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(z^{})", self.order() + 1)
    }
}

/// Coefficients `c_{k,m}` with `k + m <= N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiSeries {
    order: usize,
    coeffs: BTreeMap<(usize, usize), Rat>,
}

impl BiSeries {
    pub fn from_fn(order: usize, mut f: impl FnMut(usize, usize) -> Rat) -> Self {
        let mut coeffs = BTreeMap::new();
        for k in 0..=order {
            for m in 0..=order - k {
                coeffs.insert((k, m), f(k, m));
            }
        }
        Self { order, coeffs }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeff(&self, k: usize, m: usize) -> Rat {
        self.coeffs.get(&(k, m)).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn coeffs(&self) -> &BTreeMap<(usize, usize), Rat> {
        &self.coeffs
    }

    /// The slice `z1 = 0`, as a series in `z2`.
    pub fn restrict_first_to_zero(&self) -> RationalSeries {
        RationalSeries::new((0..=self.order).map(|m| self.coeff(0, m)).collect())
    }
}

/// The series with `c_0 = 1` and `n^4 c_n = prod_j (n - 1 + a_j) c_{n-1}`.
pub fn hypergeom_series(exponents: &[Rat; 4], order: usize) -> RationalSeries {
    let mut coeffs = Vec::with_capacity(order + 1);
    coeffs.push(Rat::one());
    for n in 1..=order {
        let prev = int(n as i64 - 1);
        let num = exponents.iter().fold(Rat::one(), |acc, a| acc * (&prev + a));
        let n4 = int((n as i64).pow(4));
        let c = &coeffs[n - 1] * num / n4;
        coeffs.push(c);
    }
    RationalSeries::new(coeffs)
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// `sum (5n)!/(n!)^5 (z/5^5)^n`.
pub fn quintic_series(order: usize) -> RationalSeries {
    let five_five = BigInt::from(3125);
    RationalSeries::new(
        (0..=order as u64)
            .map(|n| {
                let num = factorial(5 * n);
                let den = factorial(n).pow(5) * five_five.pow(n as u32);
                Rat::new(num, den)
            })
            .collect(),
    )
}

/// `[Θ^4 - z prod_j (Θ + a_j)] s`, to order `N - 1`.
pub fn pf_residual(exponents: &[Rat; 4], s: &RationalSeries) -> Result<RationalSeries> {
    if s.order() == 0 {
        return Err(Error::Domain("residual needs a series of order at least 1".into()));
    }
    let zero = Rat::zero();
    let theta4 = (0..4).fold(s.clone(), |acc, _| acc.theta_plus(&zero));
    let rhs = exponents.iter().fold(s.clone(), |acc, a| acc.theta_plus(a)).shift(1);
    Ok(theta4.sub(&rhs).truncate(s.order() - 1))
}

/// `(2m)! (6k+12m)! / ((3k+6m)! (m!)^4 k! (2k+4m)!)`.
pub fn two_param_coeff(k: u64, m: u64) -> Rat {
    let num = factorial(2 * m) * factorial(6 * k + 12 * m);
    let den = factorial(3 * k + 6 * m) * factorial(m).pow(4) * factorial(k) * factorial(2 * k + 4 * m);
    Rat::new(num, den)
}

pub fn two_param_series(order: usize) -> BiSeries {
    BiSeries::from_fn(order, |k, m| two_param_coeff(k as u64, m as u64))
}

/// The exponents `1/12, 5/12, 7/12, 11/12`.
pub fn twelfth_exponents() -> [Rat; 4] {
    [1, 5, 7, 11].map(|k| Rat::new(BigInt::from(k), BigInt::from(12)))
}

/// Whether `slice` equals `h(κ z)` for `h` the hypergeometric series of `exponents`, with `κ = c_1 / h_1`.
pub fn matches_rescaled(slice: &RationalSeries, exponents: &[Rat; 4]) -> Result<(bool, Rat)> {
    let n = slice.order();
    let h = hypergeom_series(exponents, n.max(1));
    let (c1, h1) = (slice.coeff(1), h.coeff(1));
    if c1.is_zero() || h1.is_zero() {
        return Err(Error::Domain("first-order coefficient vanishes; no rescaling".into()));
    }
    let kappa = c1 / h1;
    let mut power = Rat::one();
    let mut ok = true;
    for m in 0..=n {
        if slice.coeff(m) != h.coeff(m) * &power {
            ok = false;
            break;
        }
        power *= &kappa;
    }
    Ok((ok, kappa))
}

/// Restricts the two-parameter series to `z1 = 0` and compares it with the rescaled `1/12, 5/12, 7/12, 11/12` series.
pub fn restriction_matches(order: usize) -> Result<(bool, Rat)> {
    let slice = RationalSeries::new((0..=order as u64).map(|m| two_param_coeff(0, m)).collect());
    matches_rescaled(&slice, &twelfth_exponents())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat::rat;

    fn ex(v: [i64; 4], d: i64) -> [Rat; 4] {
        v.map(|k| rat(k, d))
    }

    #[test]
    fn hypergeom_examples() {
        let s = hypergeom_series(&ex([1, 1, 1, 1], 1), 2);
        assert_eq!(s.coeffs(), &[int(1), int(1), int(1)]);
        assert_eq!(hypergeom_series(&ex([1, 2, 3, 4], 5), 1).coeff(1), rat(24, 625));
        assert_eq!(hypergeom_series(&ex([1, 1, 1, 1], 2), 1).coeff(1), rat(1, 16));
    }

    #[test]
    fn quintic_examples() {
        let q = quintic_series(2);
        assert_eq!(q.coeff(0), int(1));
        assert_eq!(q.coeff(1), rat(24, 625));
        assert_eq!(q.coeff(2), Rat::new(113400.into(), 9765625.into()));
    }

    #[test]
    fn residual_examples() {
        let e = ex([1, 2, 3, 4], 5);
        assert!(pf_residual(&e, &quintic_series(10)).unwrap().is_zero());
        let half = ex([1, 1, 1, 1], 2);
        let r = pf_residual(&half, &RationalSeries::constant(int(1), 3)).unwrap();
        assert_eq!(r.order(), 2);
        assert_eq!(r.coeffs(), &[int(0), rat(-1, 16), int(0)]);
        assert!(pf_residual(&half, &RationalSeries::constant(int(1), 0)).is_err());
    }

    #[test]
    fn two_param_examples() {
        assert_eq!(two_param_coeff(0, 0), int(1));
        assert_eq!(two_param_coeff(0, 1), int(55440));
        assert_eq!(two_param_coeff(1, 0), int(60));
        let s = two_param_series(3);
        assert_eq!(s.coeffs().len(), 10);
        assert_eq!(s.restrict_first_to_zero().coeff(1), int(55440));
    }

    #[test]
    fn restriction_examples() {
        assert_eq!(restriction_matches(8).unwrap(), (true, int(2985984)));
        assert_eq!(restriction_matches(1).unwrap(), (true, int(2985984)));
        let mut tampered: Vec<Rat> = (0..=6).map(|m| two_param_coeff(0, m)).collect();
        tampered[4] += int(1);
        let (ok, kappa) = matches_rescaled(&RationalSeries::new(tampered), &twelfth_exponents()).unwrap();
        assert!(!ok);
        assert_eq!(kappa, int(12).pow(6));
        let degenerate = RationalSeries::new(vec![int(1), int(0), int(3)]);
        assert!(matches!(matches_rescaled(&degenerate, &twelfth_exponents()), Err(Error::Domain(_))));
    }

    #[test]
    fn series_display() {
        assert_eq!(hypergeom_series(&ex([1, 1, 1, 1], 2), 1).to_string(), "1 + 1/16 z + O(z^2)");
        assert_eq!(RationalSeries::new(vec![int(0), int(-2), int(3)]).to_string(), "-2 z + 3 z^2 + O(z^3)");
    }
}
