use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use smallvec::SmallVec;

use super::{Coefficient, Rational};
use crate::error::{Error, Result};

/// Polynomial variables, declared in serialization order.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Var {
    Q,
    Z,
    Lambda,
    /// Framing parameter x_k, 1 ≤ k ≤ d − 1.
    X(u16),
    H,
}

impl Var {
    pub fn allows_negative(self) -> bool {
        matches!(self, Var::Q | Var::Z | Var::Lambda)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::Q => write!(f, "q"),
            Var::Z => write!(f, "z"),
            Var::Lambda => write!(f, "lambda"),
            Var::X(k) => write!(f, "x{k}"),
            Var::H => write!(f, "h"),
        }
    }
}

/// Sparse exponent vector; entries sorted by variable, zero exponents absent.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(SmallVec<[(Var, i32); 4]>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(SmallVec::new())
    }

    pub fn var(v: Var, exp: i32) -> Self {
        let mut m = Monomial::one();
        if exp != 0 {
            m.0.push((v, exp));
        }
        m
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (Var, i32)>) -> Self {
        pairs.into_iter().fold(Monomial::one(), |acc, (v, e)| acc.mul(&Monomial::var(v, e)))
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exponent(&self, v: Var) -> i32 {
        self.0.iter().find(|(w, _)| *w == v).map_or(0, |&(_, e)| e)
    }

    pub fn total_degree(&self) -> i64 {
        self.0.iter().map(|&(_, e)| e as i64).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Var, i32)> + '_ {
        self.0.iter().copied()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = SmallVec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    let e = a[i].1 + b[j].1;
                    if e != 0 {
                        out.push((a[i].0, e));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    pub fn inverse(&self) -> Monomial {
        Monomial(self.0.iter().map(|&(v, e)| (v, -e)).collect())
    }

    pub fn with(&self, v: Var, exp: i32) -> Monomial {
        self.without(v).mul(&Monomial::var(v, exp))
    }

    pub fn without(&self, v: Var) -> Monomial {
        Monomial(self.0.iter().copied().filter(|&(w, _)| w != v).collect())
    }
}

// Graded lexicographic: total degree first, then exponents in variable order.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        let by_degree = self.total_degree().cmp(&other.total_degree());
        if by_degree != Ordering::Equal {
            return by_degree;
        }
        let (a, b) = (&self.0, &other.0);
        let (mut i, mut j) = (0, 0);
        loop {
            let next = match (a.get(i), b.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(&(v, ea)), Some(&(w, eb))) => match v.cmp(&w) {
                    Ordering::Less => (ea.cmp(&0), 1, 0),
                    Ordering::Greater => (0.cmp(&eb), 0, 1),
                    Ordering::Equal => (ea.cmp(&eb), 1, 1),
                },
                (Some(&(_, ea)), None) => (ea.cmp(&0), 1, 0),
                (None, Some(&(_, eb))) => (0.cmp(&eb), 0, 1),
            };
            if next.0 != Ordering::Equal {
                return next.0;
            }
            i += next.1;
            j += next.2;
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        for (i, &(v, e)) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            if e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Multivariate Laurent polynomial over an exact coefficient domain.
#[derive(Clone, PartialEq)]
pub struct MultiLaurent<C> {
    terms: BTreeMap<Monomial, C>,
}

impl<C: Coefficient> Default for MultiLaurent<C> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<C: Coefficient> MultiLaurent<C> {
    pub fn zero() -> Self {
        MultiLaurent { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(C::from_rational(Rational::one()))
    }

    pub fn constant(c: C) -> Self {
        Self::term(Monomial::one(), c)
    }

    pub fn rational(r: Rational) -> Self {
        Self::constant(C::from_rational(r))
    }

    pub fn integer(n: i64) -> Self {
        Self::rational(Rational::from_integer(n))
    }

    pub fn var(v: Var) -> Self {
        Self::var_pow(v, 1)
    }

    pub fn var_pow(v: Var, exp: i32) -> Self {
        Self::term(Monomial::var(v, exp), C::from_rational(Rational::one()))
    }

    pub fn term(m: Monomial, c: C) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MultiLaurent { terms }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, C)>) -> Self {
        let mut p = Self::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().plus(&c);
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.iter().next().is_some_and(|(m, c)| m.is_one() && c.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending graded-lexicographic order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Option<&C> {
        self.terms.get(m)
    }

    pub fn constant_term(&self) -> Option<&C> {
        self.terms.get(&Monomial::one())
    }

    /// The constant value if the polynomial has no variables.
    pub fn as_constant(&self) -> Option<C> {
        match self.terms.len() {
            0 => Some(C::from_rational(Rational::zero())),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    pub fn variables(&self) -> Vec<Var> {
        let mut vs: Vec<Var> = self.terms.keys().flat_map(|m| m.iter().map(|(v, _)| v)).collect();
        vs.sort();
        vs.dedup();
        vs
    }

    pub fn min_degree(&self, v: Var) -> Option<i32> {
        self.terms.keys().map(|m| m.exponent(v)).min()
    }

    pub fn max_degree(&self, v: Var) -> Option<i32> {
        self.terms.keys().map(|m| m.exponent(v)).max()
    }

    pub fn plus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn minus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.negated());
        }
        out
    }

    pub fn negated(&self) -> Self {
        MultiLaurent { terms: self.terms.iter().map(|(m, c)| (m.clone(), c.negated())).collect() }
    }

    pub fn times(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca.times(cb));
            }
        }
        out
    }

    pub fn scaled(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        MultiLaurent { terms: self.terms.iter().map(|(m, a)| (m.clone(), a.times(c))).collect() }
    }

    pub fn scaled_rational(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        MultiLaurent { terms: self.terms.iter().map(|(m, a)| (m.clone(), a.scaled(r))).collect() }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        MultiLaurent { terms: self.terms.iter().map(|(k, a)| (k.mul(m), a.clone())).collect() }
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.times(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.times(&base);
            }
        }
        acc
    }

    pub fn map_coeffs<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> MultiLaurent<D> {
        MultiLaurent::from_terms(self.terms.iter().map(|(m, c)| (m.clone(), f(c))))
    }

    /// Rewrites every exponent of `v` to its negative, i.e. v ↦ v^{-1}.
    pub fn invert_var(&self, v: Var) -> Self {
        Self::from_terms(self.terms.iter().map(|(m, c)| {
            let e = m.exponent(v);
            (m.with(v, -e), c.clone())
        }))
    }

    /// Splits into a polynomial in `v` whose coefficients are free of `v`.
    pub fn collect_in(&self, v: Var) -> BTreeMap<i32, Self> {
        let mut out: BTreeMap<i32, Self> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.exponent(v)).or_default().add_term(m.without(v), c.clone());
        }
        out
    }

    /// Substitutes `v ↦ value`. Negative powers of `v` need an invertible
    /// (single-term, rational-coefficient) replacement.
    pub fn substitute(&self, v: Var, value: &Self) -> Result<Self> {
        let inverse = value.monomial_inverse();
        let mut cache: BTreeMap<i32, Self> = BTreeMap::new();
        let mut out = Self::zero();
        for (e, rest) in self.collect_in(v) {
            let power = if let Some(p) = cache.get(&e) {
                p.clone()
            } else {
                let p = if e >= 0 {
                    value.pow(e as u32)
                } else {
                    inverse.as_ref().ok_or_else(|| Error::Substitution(format!("{v}^{e}")))?.pow((-e) as u32)
                };
                cache.insert(e, p.clone());
                p
            };
            out = out.plus(&rest.times(&power));
        }
        Ok(out)
    }

    pub fn evaluate(&self, v: Var, value: &Rational) -> Result<Self> {
        self.substitute(v, &Self::rational(value.clone()))
    }

    fn monomial_inverse(&self) -> Option<Self> {
        if self.terms.len() != 1 {
            return None;
        }
        let (m, c) = self.terms.iter().next()?;
        let r = c.as_rational()?;
        if r.is_zero() {
            return None;
        }
        Some(Self::term(m.inverse(), C::from_rational(r.recip())))
    }

    /// Exact division by `divisor`, which must have a constant leading
    /// coefficient and a non-vanishing trailing coefficient as a polynomial
    /// in `v`. Returns `None` when the division leaves a remainder.
    pub fn div_exact(&self, v: Var, divisor: &Self) -> Option<Self> {
        if self.is_zero() {
            return Some(Self::zero());
        }
        let dlo = divisor.min_degree(v)?;
        let dnorm = divisor.mul_monomial(&Monomial::var(v, -dlo));
        let dcoeffs = dnorm.collect_in(v);
        let ddeg = *dcoeffs.keys().next_back()?;
        let lead = dcoeffs[&ddeg].as_constant()?.as_rational()?;
        assert!(!lead.is_zero());
        let lead_inv = lead.recip();

        let plo = self.min_degree(v)?;
        let mut rem = self.mul_monomial(&Monomial::var(v, -plo));
        let mut quot = Self::zero();
        while !rem.is_zero() {
            let top = rem.max_degree(v)?;
            if top < ddeg {
                return None;
            }
            let lead_rem = rem.collect_in(v).remove(&top)?.scaled_rational(&lead_inv);
            let step = lead_rem.mul_monomial(&Monomial::var(v, top - ddeg));
            rem = rem.minus(&step.times(&dnorm));
            quot = quot.plus(&step);
        }
        Some(quot.mul_monomial(&Monomial::var(v, plo - dlo)))
    }
}

impl<C: Coefficient> fmt::Display for MultiLaurent<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let text = render_term(m, c);
            if i == 0 {
                write!(f, "{text}")?;
            } else if let Some(rest) = text.strip_prefix('-') {
                write!(f, " - {rest}")?;
            } else {
                write!(f, " + {text}")?;
            }
        }
        Ok(())
    }
}

fn render_term<C: Coefficient>(m: &Monomial, c: &C) -> String {
    if m.is_one() {
        return c.render();
    }
    match c.as_rational() {
        Some(r) if r.is_one() => m.to_string(),
        Some(r) if (-&r).is_one() => format!("-{m}"),
        _ => format!("{}*{m}", c.render()),
    }
}

impl<C: Coefficient> fmt::Debug for MultiLaurent<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<C: Coefficient> Add for &MultiLaurent<C> {
    type Output = MultiLaurent<C>;
    fn add(self, rhs: Self) -> MultiLaurent<C> {
        self.plus(rhs)
    }
}

impl<C: Coefficient> Sub for &MultiLaurent<C> {
    type Output = MultiLaurent<C>;
    fn sub(self, rhs: Self) -> MultiLaurent<C> {
        self.minus(rhs)
    }
}

impl<C: Coefficient> Mul for &MultiLaurent<C> {
    type Output = MultiLaurent<C>;
    fn mul(self, rhs: Self) -> MultiLaurent<C> {
        self.times(rhs)
    }
}

impl<C: Coefficient> Neg for &MultiLaurent<C> {
    type Output = MultiLaurent<C>;
    fn neg(self) -> MultiLaurent<C> {
        self.negated()
    }
}
