//! Power series in `h` truncated at a fixed order.

use std::fmt;

use super::{Coefficient, Monomial, MultiLaurent, Rational, Var};
use crate::error::{Error, Result};

/// `c_0 + c_1 h + … + c_N h^N`, coefficients in the remaining variables.
#[derive(Clone, PartialEq)]
pub struct TruncatedSeries<C> {
    order: usize,
    coeffs: Vec<MultiLaurent<C>>,
}

impl<C: Coefficient> TruncatedSeries<C> {
    pub fn zero(order: usize) -> Self {
        TruncatedSeries { order, coeffs: vec![MultiLaurent::zero(); order + 1] }
    }

    pub fn constant(order: usize, c: MultiLaurent<C>) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    pub fn one(order: usize) -> Self {
        Self::constant(order, MultiLaurent::one())
    }

    /// The series `h`.
    pub fn h(order: usize) -> Self {
        let mut s = Self::zero(order);
        if order >= 1 {
            s.coeffs[1] = MultiLaurent::one();
        }
        s
    }

    pub fn from_coeffs(order: usize, coeffs: Vec<MultiLaurent<C>>) -> Self {
        let mut s = Self::zero(order);
        for (j, c) in coeffs.into_iter().enumerate().take(order + 1) {
            s.coeffs[j] = c;
        }
        s
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeff(&self, j: usize) -> &MultiLaurent<C> {
        &self.coeffs[j]
    }

    pub fn coeffs(&self) -> &[MultiLaurent<C>] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(MultiLaurent::is_zero)
    }

    /// Index of the first nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    fn check(&self, other: &Self) {
        assert_eq!(self.order, other.order, "series of different truncation order");
    }

    pub fn plus(&self, other: &Self) -> Self {
        self.check(other);
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.plus(b)).collect();
        TruncatedSeries { order: self.order, coeffs }
    }

    pub fn minus(&self, other: &Self) -> Self {
        self.plus(&other.negated())
    }

    pub fn negated(&self) -> Self {
        TruncatedSeries { order: self.order, coeffs: self.coeffs.iter().map(|c| c.negated()).collect() }
    }

    pub fn times(&self, other: &Self) -> Self {
        self.check(other);
        let mut out = Self::zero(self.order);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(self.order + 1 - i) {
                out.coeffs[i + j] = out.coeffs[i + j].plus(&a.times(b));
            }
        }
        out
    }

    pub fn scaled_poly(&self, p: &MultiLaurent<C>) -> Self {
        TruncatedSeries { order: self.order, coeffs: self.coeffs.iter().map(|c| c.times(p)).collect() }
    }

    pub fn scaled_rational(&self, r: &Rational) -> Self {
        TruncatedSeries { order: self.order, coeffs: self.coeffs.iter().map(|c| c.scaled_rational(r)).collect() }
    }

    pub fn pow(&self, exp: u32) -> Self {
        (0..exp).fold(Self::one(self.order), |acc, _| acc.times(self))
    }

    /// `(1 + self)^alpha` by the binomial series; needs a vanishing
    /// constant term.
    pub fn one_plus_pow(&self, alpha: &Rational) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::SeriesBranch);
        }
        let mut out = Self::one(self.order);
        let mut power = Self::one(self.order);
        let mut binom = Rational::one();
        for j in 1..=self.order {
            power = power.times(self);
            binom = &binom * &(&(alpha - &Rational::from_integer(j as i64 - 1)) / &Rational::from_integer(j as i64));
            out = out.plus(&power.scaled_rational(&binom));
        }
        Ok(out)
    }
}

/// Substitutes `q = e^h` and expands to order `order`:
/// `q^k ↦ Σ_{j ≤ N} (k h)^j / j!`.
pub fn series_exp_substitution<C: Coefficient>(p: &MultiLaurent<C>, order: usize) -> TruncatedSeries<C> {
    let mut out = TruncatedSeries::zero(order);
    for (k, rest) in p.collect_in(Var::Q) {
        let mut factor = Rational::one();
        for j in 0..=order {
            if j > 0 {
                factor = &factor * &Rational::new(k as i64, j as i64);
            }
            if factor.is_zero() {
                break;
            }
            out.coeffs[j] = out.coeffs[j].plus(&rest.scaled_rational(&factor));
        }
    }
    out
}

impl<C: Coefficient> fmt::Display for TruncatedSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match j {
                0 => write!(f, "({c})")?,
                _ => write!(f, "({c})*{}", Monomial::var(Var::H, j as i32))?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(h^{})", self.order + 1)
    }
}

impl<C: Coefficient> fmt::Debug for TruncatedSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
