//! Exact coefficient tower: rationals, cyclotomic numbers, multivariate
//! Laurent polynomials, factored invariant values and truncated series.

mod cyclotomic;
mod factored;
mod laurent;
mod rational;
mod series;

use std::fmt::Debug;

pub use cyclotomic::{cyclotomic_polynomial, totient, Cyclotomic};
pub use factored::{FactoredValue, LambdaForm};
pub use laurent::{Monomial, MultiLaurent, Var};
pub use rational::Rational;
pub use series::{series_exp_substitution, TruncatedSeries};

/// Ring operations shared by the coefficient domains of [`MultiLaurent`].
pub trait Coefficient: Clone + PartialEq + Debug + Send + Sync + 'static {
    fn from_rational(r: Rational) -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negated(&self) -> Self;
    fn scaled(&self, r: &Rational) -> Self;
    fn as_rational(&self) -> Option<Rational>;
    /// Canonical text of the coefficient.
    fn render(&self) -> String;

    fn minus(&self, other: &Self) -> Self {
        self.plus(&other.negated())
    }

    fn is_one(&self) -> bool {
        self.as_rational().is_some_and(|r| r.is_one())
    }
}

impl Coefficient for Rational {
    fn from_rational(r: Rational) -> Self {
        r
    }
    fn is_zero(&self) -> bool {
        Rational::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negated(&self) -> Self {
        -self
    }
    fn scaled(&self, r: &Rational) -> Self {
        self * r
    }
    fn as_rational(&self) -> Option<Rational> {
        Some(self.clone())
    }
    fn render(&self) -> String {
        self.to_string()
    }
}

impl Coefficient for Cyclotomic {
    fn from_rational(r: Rational) -> Self {
        Cyclotomic::from_rational(r)
    }
    fn is_zero(&self) -> bool {
        Cyclotomic::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self.add(other)
    }
    fn times(&self, other: &Self) -> Self {
        self.mul(other)
    }
    fn negated(&self) -> Self {
        self.neg()
    }
    fn scaled(&self, r: &Rational) -> Self {
        self.scale(r)
    }
    fn as_rational(&self) -> Option<Rational> {
        Cyclotomic::as_rational(self)
    }
    fn render(&self) -> String {
        self.to_string()
    }
}
