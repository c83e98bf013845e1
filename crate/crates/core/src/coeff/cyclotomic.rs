//! Exact arithmetic in the cyclotomic field Q(ζ_d).
//!
//! Elements are stored as coordinates in the power basis 1, ζ, …, ζ^{φ(d)−1}
//! and kept reduced modulo the cyclotomic polynomial Φ_d, so two elements
//! of the same field are equal exactly when their coordinates are.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use super::Rational;

/// Integer coefficients of Φ_d, lowest degree first.
///
/// Computed by exact division of x^d − 1 by Φ_e for every proper divisor e
/// of d.
pub fn cyclotomic_polynomial(d: u32) -> Vec<i64> {
    assert!(d >= 1, "cyclotomic polynomial needs d >= 1");
    modulus(d).to_vec()
}

fn modulus(d: u32) -> Arc<[i64]> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<[i64]>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(m) = cache.lock().unwrap().get(&d) {
        return m.clone();
    }
    // x^d - 1
    let mut poly = vec![0i64; d as usize + 1];
    poly[0] = -1;
    poly[d as usize] = 1;
    for e in (1..d).filter(|e| d.is_multiple_of(*e)) {
        poly = divide_monic(&poly, &modulus(e));
    }
    let m: Arc<[i64]> = poly.into();
    cache.lock().unwrap().insert(d, m.clone());
    m
}

fn divide_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let mut quot = vec![0i64; rem.len() - dd];
    for k in (0..quot.len()).rev() {
        let c = rem[k + dd];
        quot[k] = c;
        for (j, &b) in den.iter().enumerate() {
            rem[k + j] -= c * b;
        }
    }
    debug_assert!(rem.iter().all(|&c| c == 0), "inexact cyclotomic division");
    quot
}

/// Euler's totient, the degree of Φ_d.
pub fn totient(d: u32) -> usize {
    modulus(d).len() - 1
}

#[derive(Clone)]
pub struct Cyclotomic {
    conductor: u32,
    coords: Vec<Rational>,
}

impl Cyclotomic {
    pub fn from_rational(r: Rational) -> Self {
        Cyclotomic { conductor: 1, coords: vec![r] }
    }

    pub fn zero(conductor: u32) -> Self {
        Cyclotomic { conductor, coords: vec![Rational::zero(); totient(conductor)] }
    }

    pub fn one(conductor: u32) -> Self {
        let mut c = Self::zero(conductor);
        c.coords[0] = Rational::one();
        c
    }

    /// Builds an element from power-basis coordinates of any length,
    /// reducing modulo Φ_d.
    pub fn from_power_coeffs(conductor: u32, coeffs: Vec<Rational>) -> Self {
        Self::reduce(conductor, coeffs)
    }

    /// ζ_d^k in canonical form.
    pub fn zeta_power(conductor: u32, k: i64) -> Self {
        assert!(conductor >= 1);
        let e = k.rem_euclid(conductor as i64) as usize;
        let mut coeffs = vec![Rational::zero(); e + 1];
        coeffs[e] = Rational::one();
        Self::reduce(conductor, coeffs)
    }

    fn reduce(conductor: u32, mut coeffs: Vec<Rational>) -> Self {
        let m = modulus(conductor);
        let deg = m.len() - 1;
        for top in (deg..coeffs.len()).rev() {
            let c = std::mem::take(&mut coeffs[top]);
            if c.is_zero() {
                continue;
            }
            for (j, &b) in m.iter().enumerate().take(deg) {
                if b != 0 {
                    let idx = top - deg + j;
                    coeffs[idx] = &coeffs[idx] - &(&c * &Rational::from_integer(b));
                }
            }
        }
        coeffs.resize(deg, Rational::zero());
        Cyclotomic { conductor, coords: coeffs }
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Rational::is_zero)
    }

    pub fn as_rational(&self) -> Option<Rational> {
        if self.coords[1..].iter().all(Rational::is_zero) {
            Some(self.coords[0].clone())
        } else {
            None
        }
    }

    fn lift_to(&self, conductor: u32) -> Cyclotomic {
        if self.conductor == conductor {
            return self.clone();
        }
        let r =
            self.as_rational().unwrap_or_else(|| panic!("cannot mix Q(ζ{}) with Q(ζ{})", self.conductor, conductor));
        let mut out = Self::zero(conductor);
        out.coords[0] = r;
        out
    }

    fn common(&self, other: &Cyclotomic) -> (Cyclotomic, Cyclotomic) {
        if self.conductor == other.conductor {
            (self.clone(), other.clone())
        } else if self.as_rational().is_some() {
            (self.lift_to(other.conductor), other.clone())
        } else {
            (self.clone(), other.lift_to(self.conductor))
        }
    }

    pub fn add(&self, other: &Cyclotomic) -> Cyclotomic {
        let (a, b) = self.common(other);
        let coords = a.coords.iter().zip(&b.coords).map(|(x, y)| x + y).collect();
        Cyclotomic { conductor: a.conductor, coords }
    }

    pub fn sub(&self, other: &Cyclotomic) -> Cyclotomic {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Cyclotomic {
        Cyclotomic { conductor: self.conductor, coords: self.coords.iter().map(|c| -c).collect() }
    }

    pub fn scale(&self, r: &Rational) -> Cyclotomic {
        Cyclotomic { conductor: self.conductor, coords: self.coords.iter().map(|c| c * r).collect() }
    }

    pub fn mul(&self, other: &Cyclotomic) -> Cyclotomic {
        if let Some(r) = other.as_rational() {
            return self.scale(&r);
        }
        if let Some(r) = self.as_rational() {
            return other.scale(&r);
        }
        let (a, b) = self.common(other);
        let mut prod = vec![Rational::zero(); a.coords.len() + b.coords.len() - 1];
        for (i, x) in a.coords.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coords.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] = &prod[i + j] + &(x * y);
                }
            }
        }
        Self::reduce(a.conductor, prod)
    }

    pub fn pow(&self, exp: u32) -> Cyclotomic {
        let mut acc = Cyclotomic::one(self.conductor);
        for _ in 0..exp {
            acc = acc.mul(self);
        }
        acc
    }
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        match (self.as_rational(), other.as_rational()) {
            (Some(a), Some(b)) => a == b,
            (None, None) => self.conductor == other.conductor && self.coords == other.coords,
            _ => false,
        }
    }
}

impl Eq for Cyclotomic {}

// Rational-valued elements print as plain rationals regardless of conductor.
impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(r) = self.as_rational() {
            return write!(f, "{r}");
        }
        write!(f, "[")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]ζ{}", self.conductor)
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
