//! Invariant values in factored form.
//!
//! A [`FactoredValue`] represents `core · z^a · μ^b · s^p` where
//! `μ = z − (q − q⁻¹)E`, `s² = λ = μ / z` and `p ∈ {0, 1}`. The core is a
//! Laurent polynomial in `q, z` divisible by neither `z` nor `μ`, which makes
//! the representation unique for a fixed `E`.

use std::fmt;

use super::{Coefficient, Cyclotomic, Monomial, MultiLaurent, Rational, Var};
use crate::error::{Error, Result};

type Poly = MultiLaurent<Cyclotomic>;

fn q_minus_q_inv() -> Poly {
    &Poly::var(Var::Q) - &Poly::var_pow(Var::Q, -1)
}

/// `μ = z − (q − q⁻¹)E`.
pub fn mu(e: &Rational) -> Poly {
    &Poly::var(Var::Z) - &q_minus_q_inv().scaled_rational(e)
}

fn one_minus_lambda() -> Poly {
    &Poly::one() - &Poly::var(Var::Lambda)
}

fn int_pow(p: &Poly, exp: i32) -> Poly {
    assert!(exp >= 0);
    p.pow(exp as u32)
}

#[derive(Clone, PartialEq)]
pub struct FactoredValue {
    core: Poly,
    z_exp: i32,
    mu_exp: i32,
    s_parity: u8,
    e_d: Rational,
}

impl FactoredValue {
    /// Canonicalizes `raw · z^z_shift · μ^mu_shift · s^s_power`.
    ///
    /// Any integer power of `s` is accepted and folded as `s² = μ / z`.
    pub fn new(raw: Poly, z_shift: i32, mu_shift: i32, s_power: i32, e_d: Rational) -> Self {
        let parity = s_power.rem_euclid(2);
        let half = (s_power - parity) / 2;
        let mut z_exp = z_shift - half;
        let mut mu_exp = mu_shift + half;
        if raw.is_zero() {
            return FactoredValue { core: raw, z_exp: 0, mu_exp: 0, s_parity: parity as u8, e_d };
        }
        let zmin = raw.min_degree(Var::Z).unwrap_or(0);
        let mut core = raw.mul_monomial(&Monomial::var(Var::Z, -zmin));
        z_exp += zmin;
        let m = mu(&e_d);
        while let Some(quot) = core.div_exact(Var::Z, &m) {
            core = quot;
            mu_exp += 1;
        }
        FactoredValue { core, z_exp, mu_exp, s_parity: parity as u8, e_d }
    }

    pub fn one(e_d: Rational) -> Self {
        Self::new(Poly::one(), 0, 0, 0, e_d)
    }

    pub fn zero(e_d: Rational) -> Self {
        Self::new(Poly::zero(), 0, 0, 0, e_d)
    }

    /// `Λ = 1 / (z √λ)`.
    pub fn capital_lambda(e_d: Rational) -> Self {
        Self::new(Poly::one(), -1, 0, -1, e_d)
    }

    /// `λ = μ / z`.
    pub fn lambda(e_d: Rational) -> Self {
        Self::new(Poly::one(), -1, 1, 0, e_d)
    }

    pub fn core(&self) -> &Poly {
        &self.core
    }
    pub fn z_exp(&self) -> i32 {
        self.z_exp
    }
    pub fn mu_exp(&self) -> i32 {
        self.mu_exp
    }
    pub fn s_parity(&self) -> u8 {
        self.s_parity
    }
    pub fn e_d(&self) -> &Rational {
        &self.e_d
    }

    pub fn is_zero(&self) -> bool {
        self.core.is_zero()
    }

    fn check_params(&self, other: &Self) -> Result<()> {
        if self.e_d != other.e_d {
            return Err(Error::ParamMismatch);
        }
        Ok(())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_params(other)?;
        Ok(Self::new(
            self.core.times(&other.core),
            self.z_exp + other.z_exp,
            self.mu_exp + other.mu_exp,
            self.s_parity as i32 + other.s_parity as i32,
            self.e_d.clone(),
        ))
    }

    pub fn mul_poly(&self, p: &Poly) -> Self {
        Self::new(self.core.times(p), self.z_exp, self.mu_exp, self.s_parity as i32, self.e_d.clone())
    }

    pub fn mul_s_power(&self, k: i32) -> Self {
        Self::new(self.core.clone(), self.z_exp, self.mu_exp, self.s_parity as i32 + k, self.e_d.clone())
    }

    pub fn pow(&self, exp: u32) -> Self {
        (0..exp).fold(Self::one(self.e_d.clone()), |acc, _| acc.mul(self).expect("same params"))
    }

    pub fn neg(&self) -> Self {
        FactoredValue { core: self.core.negated(), ..self.clone() }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_params(other)?;
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.s_parity != other.s_parity {
            return Err(Error::ParityMismatch);
        }
        let z0 = self.z_exp.min(other.z_exp);
        let m0 = self.mu_exp.min(other.mu_exp);
        let m = mu(&self.e_d);
        let lift =
            |v: &Self| v.core.mul_monomial(&Monomial::var(Var::Z, v.z_exp - z0)).times(&int_pow(&m, v.mu_exp - m0));
        let raw = lift(self).plus(&lift(other));
        Ok(Self::new(raw, z0, m0, self.s_parity as i32, self.e_d.clone()))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    /// Substitutes `z ↦ z / t` with `t = e_new / E`, which turns a value
    /// written with `E` into one written with `e_new`: `μ_E(z/t) = μ_new / t`
    /// so `λ_E(z/t) = λ_new`.
    pub fn rescale_z(&self, e_new: &Rational) -> Result<Self> {
        let t = e_new / &self.e_d;
        let t_inv = t.recip();
        let mut raw = Poly::zero();
        for (m, c) in self.core.terms() {
            let j = m.exponent(Var::Z);
            raw.add_term(m.clone(), c.scaled(&t_inv.pow(j)));
        }
        let factor = t_inv.pow(self.z_exp + self.mu_exp);
        Ok(Self::new(raw.scaled_rational(&factor), self.z_exp, self.mu_exp, self.s_parity as i32, e_new.clone()))
    }

    /// Rewrites the value in the variables `(q, λ)` via
    /// `z = (q − q⁻¹)E / (1 − λ)`.
    pub fn to_lambda_form(&self) -> LambdaForm {
        let e = &self.e_d;
        if self.is_zero() {
            return LambdaForm::new(Poly::zero(), 0, 0, self.s_parity, e.clone());
        }
        let k = self.core.max_degree(Var::Z).unwrap_or(0);
        let c_e = q_minus_q_inv().scaled_rational(e);
        let oml = one_minus_lambda();
        let mut numer = Poly::zero();
        for (j, pj) in self.core.collect_in(Var::Z) {
            numer = numer.plus(&pj.times(&int_pow(&c_e, j)).times(&int_pow(&oml, k - j)));
        }
        let ab = self.z_exp + self.mu_exp;
        let numer = numer.mul_monomial(&Monomial::var(Var::Lambda, self.mu_exp)).scaled_rational(&e.pow(ab));
        LambdaForm::new(numer, ab, -k - ab, self.s_parity, e.clone())
    }

    /// Canonical text: `(core)*z^a*mu^b*s^p`.
    pub fn render(&self) -> String {
        format!("({})*z^{}*mu^{}*s^{}", self.core, self.z_exp, self.mu_exp, self.s_parity)
    }
}

impl fmt::Display for FactoredValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Debug for FactoredValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [E={}]", self.render(), self.e_d)
    }
}

/// The value `numer(q, λ) · (q − q⁻¹)^w · (1 − λ)^v · s^p`, with `numer`
/// divisible by neither `q − q⁻¹` nor `1 − λ`.
#[derive(Clone, PartialEq)]
pub struct LambdaForm {
    numer: Poly,
    qq_exp: i32,
    oml_exp: i32,
    s_parity: u8,
    e_d: Rational,
}

impl LambdaForm {
    pub fn new(numer: Poly, qq_exp: i32, oml_exp: i32, s_parity: u8, e_d: Rational) -> Self {
        let (mut numer, mut qq_exp, mut oml_exp) = (numer, qq_exp, oml_exp);
        if numer.is_zero() {
            return LambdaForm { numer, qq_exp: 0, oml_exp: 0, s_parity, e_d };
        }
        let qq = q_minus_q_inv();
        while let Some(quot) = numer.div_exact(Var::Q, &qq) {
            numer = quot;
            qq_exp += 1;
        }
        let oml = one_minus_lambda();
        while let Some(quot) = numer.div_exact(Var::Lambda, &oml) {
            numer = quot;
            oml_exp += 1;
        }
        LambdaForm { numer, qq_exp, oml_exp, s_parity, e_d }
    }

    pub fn numer(&self) -> &Poly {
        &self.numer
    }
    pub fn qq_exp(&self) -> i32 {
        self.qq_exp
    }
    pub fn oml_exp(&self) -> i32 {
        self.oml_exp
    }
    pub fn s_parity(&self) -> u8 {
        self.s_parity
    }
    pub fn e_d(&self) -> &Rational {
        &self.e_d
    }

    /// Equality of the expressions in `(q, λ)`, ignoring which `E` they
    /// were derived with.
    pub fn same_expression(&self, other: &Self) -> bool {
        self.numer == other.numer
            && self.qq_exp == other.qq_exp
            && self.oml_exp == other.oml_exp
            && self.s_parity == other.s_parity
    }

    /// Substitutes `z = (q − q⁻¹)E / (1 − λ)` back, i.e. `λ = μ / z`.
    pub fn to_factored(&self) -> Result<FactoredValue> {
        let e = &self.e_d;
        if self.numer.is_zero() {
            return Ok(FactoredValue::zero(e.clone()));
        }
        let m = mu(e);
        let by_lambda = self.numer.collect_in(Var::Lambda);
        let jmin = *by_lambda.keys().next().unwrap();
        let jmax = *by_lambda.keys().next_back().unwrap();
        let mut g = Poly::zero();
        for (j, nj) in by_lambda {
            g = g.plus(&nj.times(&int_pow(&m, j - jmin)).mul_monomial(&Monomial::var(Var::Z, jmax - j)));
        }
        let qq = q_minus_q_inv();
        let cexp = self.qq_exp + self.oml_exp;
        if cexp >= 0 {
            g = g.times(&int_pow(&qq, cexp));
        } else {
            for _ in 0..-cexp {
                g = g.div_exact(Var::Q, &qq).ok_or_else(|| {
                    Error::PropertyViolation("(q, λ) form does not map back to a Laurent polynomial".into())
                })?;
            }
        }
        let g = g.scaled_rational(&e.pow(self.oml_exp));
        Ok(FactoredValue::new(g, -self.oml_exp - jmax, jmin, self.s_parity as i32, e.clone()))
    }

    /// The substitution `q ↦ q⁻¹, λ ↦ λ⁻¹` (and hence `s ↦ s⁻¹`).
    pub fn invert_q_lambda(&self) -> LambdaForm {
        let flipped = self.numer.invert_var(Var::Q).invert_var(Var::Lambda);
        let sign = if (self.qq_exp + self.oml_exp).rem_euclid(2) == 0 { 1 } else { -1 };
        let shift = -self.oml_exp - self.s_parity as i32;
        let numer =
            flipped.mul_monomial(&Monomial::var(Var::Lambda, shift)).scaled_rational(&Rational::from_integer(sign));
        LambdaForm::new(numer, self.qq_exp, self.oml_exp, self.s_parity, self.e_d.clone())
    }

    pub fn render(&self) -> String {
        format!("({})*(q-q^-1)^{}*(1-lambda)^{}*s^{}", self.numer, self.qq_exp, self.oml_exp, self.s_parity)
    }
}

impl fmt::Display for LambdaForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Debug for LambdaForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [E={}]", self.render(), self.e_d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn half() -> Rational {
        Rational::new(1, 2)
    }

    fn z() -> Poly {
        Poly::var(Var::Z)
    }

    #[test]
    fn extracts_mu_and_z() {
        let e = half();
        let m = mu(&e);
        let v = FactoredValue::new(m.times(&z()), 0, 0, 0, e.clone());
        assert!(v.core().is_one());
        assert_eq!((v.z_exp(), v.mu_exp()), (1, 1));

        let v = FactoredValue::new(z().pow(2), -1, 0, 0, e.clone());
        assert!(v.core().is_one());
        assert_eq!(v.z_exp(), 1);

        // μ² + μz = μ(μ + z); μ + z is itself μ-free.
        let raw = m.pow(2).plus(&m.times(&z()));
        let v = FactoredValue::new(raw, 0, 0, 0, e.clone());
        assert_eq!(v.mu_exp(), 1);
        assert_eq!(v.core(), &m.plus(&z()));
    }

    #[test]
    fn negative_s_powers_fold_into_lambda() {
        let e = half();
        let v = FactoredValue::new(Poly::one(), 0, 0, -1, e.clone());
        // s^-1 = s · λ^-1 = s · z / μ
        assert_eq!((v.z_exp(), v.mu_exp(), v.s_parity()), (1, -1, 1));
        let sq = v.mul(&v).unwrap();
        assert_eq!(sq, FactoredValue::new(Poly::one(), 1, -1, 0, e));
    }

    #[test]
    fn lambda_forms_of_basic_values() {
        let e = half();
        let lam = FactoredValue::lambda(e.clone()).to_lambda_form();
        assert!(lam.numer().mul_monomial(&Monomial::var(Var::Lambda, -1)).is_one());
        assert_eq!((lam.qq_exp(), lam.oml_exp()), (0, 0));

        let one = FactoredValue::one(e.clone()).to_lambda_form();
        assert!(one.numer().is_one());

        // Λ = 1/(z s) = (1 − λ) / ((q − q⁻¹) E s), and 1/s = s/λ.
        let cap = FactoredValue::capital_lambda(e.clone()).to_lambda_form();
        assert_eq!(cap.qq_exp(), -1);
        assert_eq!(cap.oml_exp(), 1);
        assert_eq!(cap.s_parity(), 1);
        let expect = Poly::var_pow(Var::Lambda, -1).scaled_rational(&e.recip());
        assert_eq!(cap.numer(), &expect);
    }

    #[test]
    fn lambda_round_trip_basic() {
        let e = Rational::new(1, 3);
        for v in [
            FactoredValue::one(e.clone()),
            FactoredValue::lambda(e.clone()),
            FactoredValue::capital_lambda(e.clone()),
            FactoredValue::new(&z() + &Poly::var(Var::Q), 2, -1, 1, e.clone()),
        ] {
            assert_eq!(v.to_lambda_form().to_factored().unwrap(), v);
        }
    }

    #[test]
    fn addition_aligns_exponents() {
        let e = half();
        let a = FactoredValue::lambda(e.clone());
        let b = FactoredValue::one(e.clone());
        // λ − 1 = (μ − z)/z = −(q − q⁻¹)E / z
        let diff = a.sub(&b).unwrap();
        let expect = FactoredValue::new(q_minus_q_inv().scaled_rational(&-half()), -1, 0, 0, e.clone());
        assert_eq!(diff, expect);
        let odd = FactoredValue::new(Poly::one(), 0, 0, 1, e);
        assert_eq!(odd.add(&b).unwrap_err(), Error::ParityMismatch);
    }

    #[test]
    fn rescale_maps_lambda_to_lambda() {
        let lam_h = FactoredValue::lambda(Rational::one());
        let rescaled = lam_h.rescale_z(&half()).unwrap();
        assert_eq!(rescaled, FactoredValue::lambda(half()));
    }

    #[test]
    fn mirror_of_lambda_form_is_involution() {
        let v = FactoredValue::new(&z().pow(2) + &Poly::var_pow(Var::Q, 3), -1, 2, 1, half());
        let lf = v.to_lambda_form();
        assert_eq!(lf.invert_q_lambda().invert_q_lambda(), lf);
        let back = lf.invert_q_lambda().to_factored().unwrap();
        assert_eq!(back.to_lambda_form(), lf.invert_q_lambda());
    }
}
