use super::{q_minus_q_inv, QCoeff};
use crate::coeff::{Monomial, Rational, Var};

/// `Σ_{j=0}^{m−1} (−1)^j q^{m−1−2j}`, i.e. `(q^m − (−q)^{−m}) / (q + q⁻¹)`.
pub fn qfrac(m: i64) -> QCoeff {
    QCoeff::from_terms((0..m).map(|j| {
        let sign = if j % 2 == 0 { 1 } else { -1 };
        (Monomial::var(Var::Q, (m - 1 - 2 * j) as i32), Rational::from_integer(sign))
    }))
}

/// `g^r = a·1 + b·g + c·e + d·e g` for a single generator.
#[derive(Clone, PartialEq, Debug)]
pub struct PowerForm {
    pub a: QCoeff,
    pub b: QCoeff,
    pub c: QCoeff,
    pub d: QCoeff,
}

fn positive_form(r: i64) -> PowerForm {
    let one = QCoeff::one();
    if r == 0 {
        return PowerForm { a: one, b: QCoeff::zero(), c: QCoeff::zero(), d: QCoeff::zero() };
    }
    if r % 2 == 1 {
        PowerForm { a: QCoeff::zero(), b: one.clone(), c: qfrac(r - 1), d: &qfrac(r) - &one }
    } else {
        PowerForm { a: one.clone(), b: QCoeff::zero(), c: &qfrac(r - 1) - &one, d: qfrac(r) }
    }
}

/// Closed form of `g^r` for any integer `r`.
///
/// Negative powers come from the positive ones for `ǧ = g⁻¹`, which obeys
/// the quadratic relation with `q` replaced by `q⁻¹`, after substituting
/// `ǧ = g − (q − q⁻¹)e`.
pub fn power_form(r: i64) -> PowerForm {
    if r >= 0 {
        return positive_form(r);
    }
    let f = positive_form(-r);
    let inv = |p: &QCoeff| p.invert_var(Var::Q);
    let (a, b, c, d) = (inv(&f.a), inv(&f.b), inv(&f.c), inv(&f.d));
    let c = &c - &(&b + &d).times(&q_minus_q_inv());
    PowerForm { a, b, c, d }
}
