//! Solutions of the E-system `E^{(m)} = x_m E`.

use std::fmt;

use crate::coeff::{Cyclotomic, Rational};
use crate::error::{Error, Result};

/// A verified solution `x_1, …, x_{d−1}` indexed by a nonempty `D ⊆ Z/d`.
#[derive(Clone, PartialEq, Debug)]
pub struct ESolution {
    d: u32,
    subset: Vec<u32>,
    values: Vec<Cyclotomic>,
    e: Rational,
}

impl ESolution {
    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn subset(&self) -> &[u32] {
        &self.subset
    }

    /// `x_k` for `0 ≤ k`, indices read mod d, `x_0 = 1`.
    pub fn x(&self, k: u32) -> Cyclotomic {
        let k = k % self.d;
        if k == 0 {
            Cyclotomic::one(self.d)
        } else {
            self.values[k as usize - 1].clone()
        }
    }

    pub fn values(&self) -> &[Cyclotomic] {
        &self.values
    }

    /// `E_D = 1/|D|`.
    pub fn e(&self) -> &Rational {
        &self.e
    }

    pub fn subset_label(&self) -> String {
        self.subset.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
    }
}

impl fmt::Display for ESolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "d={} D={{{}}} E={}", self.d, self.subset_label(), self.e)?;
        for (k, v) in self.values.iter().enumerate() {
            write!(f, " x{}={}", k + 1, v)?;
        }
        Ok(())
    }
}

/// Outcome of checking candidate values against the E-system.
#[derive(Clone, PartialEq, Debug)]
pub enum Verification {
    Pass {
        e: Cyclotomic,
    },
    /// The first failing equation; `m = 0` means `E = 0`.
    Fail {
        m: u32,
    },
}

impl Verification {
    pub fn passed(&self) -> bool {
        matches!(self, Verification::Pass { .. })
    }
}

fn x_at(values: &[Cyclotomic], d: u32, k: u32) -> Cyclotomic {
    match k % d {
        0 => Cyclotomic::one(d),
        k => values[k as usize - 1].clone(),
    }
}

/// `E^{(m)} = (1/d) Σ_s x_{m+s} x_{d−s}`; `m = 0` gives `E`.
fn e_m(values: &[Cyclotomic], d: u32, m: u32) -> Cyclotomic {
    (0..d)
        .map(|s| x_at(values, d, m + s).mul(&x_at(values, d, d - s)))
        .fold(Cyclotomic::zero(d), |a, b| a.add(&b))
        .scale(&Rational::new(1, d as i64))
}

/// Exact check of `E^{(m)} = x_m E` for `1 ≤ m ≤ d − 1` and `E ≠ 0`.
pub fn verify(d: u32, values: &[Cyclotomic]) -> Verification {
    assert_eq!(values.len(), d.saturating_sub(1) as usize, "need x_1..x_(d-1)");
    let e = e_m(values, d, 0);
    if e.is_zero() {
        return Verification::Fail { m: 0 };
    }
    for m in 1..d {
        if e_m(values, d, m) != x_at(values, d, m).mul(&e) {
            return Verification::Fail { m };
        }
    }
    Verification::Pass { e }
}

fn normalize_subset(d: u32, subset: &[u32]) -> Result<Vec<u32>> {
    if d == 0 {
        return Err(Error::ZeroConductor);
    }
    if subset.is_empty() {
        return Err(Error::EmptySubset);
    }
    let mut s = subset.to_vec();
    for &m in &s {
        if m >= d {
            return Err(Error::ResidueOutOfRange { residue: m, d });
        }
    }
    s.sort_unstable();
    s.dedup();
    Ok(s)
}

/// `x_k = (1/|D|) Σ_{m∈D} ζ_d^{mk}`, gated by [`verify`].
pub fn solve(d: u32, subset: &[u32]) -> Result<ESolution> {
    let subset = normalize_subset(d, subset)?;
    let size = Rational::new(1, subset.len() as i64);
    let values: Vec<Cyclotomic> = (1..d)
        .map(|k| {
            subset
                .iter()
                .map(|&m| Cyclotomic::zeta_power(d, m as i64 * k as i64))
                .fold(Cyclotomic::zero(d), |a, b| a.add(&b))
                .scale(&size)
        })
        .collect();
    let e = match verify(d, &values) {
        Verification::Pass { e } => e,
        Verification::Fail { m } => return Err(Error::ESystemVerification { d, m }),
    };
    let e = e.as_rational().filter(|e| *e == size).ok_or(Error::ESystemVerification { d, m: 0 })?;
    Ok(ESolution { d, subset, values, e })
}

/// Solutions for all `2^d − 1` nonempty subsets, ordered by bitmask.
pub fn all_solutions(d: u32) -> Result<Vec<ESolution>> {
    all_subsets(d).iter().map(|s| solve(d, s)).collect()
}

pub fn all_subsets(d: u32) -> Vec<Vec<u32>> {
    (1u64..(1u64 << d)).map(|mask| (0..d).filter(|m| mask >> m & 1 == 1).collect()).collect()
}
