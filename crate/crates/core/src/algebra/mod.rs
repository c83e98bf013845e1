//! The Yokonuma–Hecke algebra Y_{d,n}(q).
//!
//! Elements are kept in the basis `t_1^{k_1}…t_n^{k_n} g_w`, `w ∈ S_n`,
//! `k_j ∈ Z/d`. Multiplication works by right-multiplying with the
//! generators: `t_j` is transported through `g_w` (`g_w t_j = t_{w(j)} g_w`),
//! `g_s` extends `w` when the length grows and otherwise fires the quadratic
//! relation once. Powers `g_s^r` use the closed form
//! `A + B g_s + C e_s + D e_s g_s`.

mod power;

use std::collections::BTreeMap;
use std::fmt;

use smallvec::SmallVec;

use crate::braid::{BraidWord, FramedBraidWord, Permutation, SingularBraidWord, SingularLetter};
use crate::coeff::{MultiLaurent, Rational, Var};
use crate::error::{Error, Result};

pub use power::{power_form, qfrac, PowerForm};

/// Laurent polynomials in `q` over the rationals.
pub type QCoeff = MultiLaurent<Rational>;

pub fn q_minus_q_inv() -> QCoeff {
    &QCoeff::var(Var::Q) - &QCoeff::var_pow(Var::Q, -1)
}

/// Upper bound accepted by [`enumerate_basis`].
pub const BASIS_LIMIT: u64 = 1_000_000;

/// How powers of `g_i` are multiplied in.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum PowerMode {
    /// One generator at a time, inverses through `g^{-1} = g − (q − q⁻¹)e`.
    Naive,
    /// The closed form of `g^r`.
    ClosedForm,
}

/// Counts of rewriting steps.
#[derive(Clone, Copy, Default, PartialEq, Eq, Debug)]
pub struct RuleStats {
    /// Quadratic relations fired.
    pub quadratic: u64,
    /// Closed-form power substitutions.
    pub power: u64,
    /// Framing transports through a braid part.
    pub transport: u64,
    /// Idempotent expansions.
    pub idempotent: u64,
}

impl RuleStats {
    pub fn total(&self) -> u64 {
        self.quadratic + self.power + self.transport + self.idempotent
    }

    pub fn absorb(&mut self, other: &RuleStats) {
        self.quadratic += other.quadratic;
        self.power += other.power;
        self.transport += other.transport;
        self.idempotent += other.idempotent;
    }
}

/// A basis element `t^K g_w`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct YMonomial {
    framings: SmallVec<[u8; 8]>,
    perm: SmallVec<[u8; 8]>,
}

impl YMonomial {
    pub fn identity(n: usize) -> Self {
        YMonomial { framings: SmallVec::from_elem(0, n), perm: (0..n as u8).collect() }
    }

    /// Panics if `perm` is not a permutation or a framing is not `< d`.
    pub fn new(framings: &[u32], perm: &Permutation) -> Self {
        assert_eq!(framings.len(), perm.len());
        YMonomial {
            framings: framings.iter().map(|&k| u8::try_from(k).expect("framing residue fits u8")).collect(),
            perm: perm.images().iter().map(|&j| j as u8).collect(),
        }
    }

    pub fn strands(&self) -> usize {
        self.perm.len()
    }

    pub fn framings(&self) -> Vec<u32> {
        self.framings.iter().map(|&k| k as u32).collect()
    }

    pub fn framing(&self, j: usize) -> u32 {
        self.framings[j] as u32
    }

    pub fn permutation(&self) -> Permutation {
        Permutation::from_images(self.perm.iter().map(|&j| j as usize).collect())
    }

    pub(crate) fn perm_at(&self, j: usize) -> usize {
        self.perm[j] as usize
    }

    pub(crate) fn raw_parts(&self) -> (&[u8], &[u8]) {
        (&self.framings, &self.perm)
    }

    pub(crate) fn from_raw(framings: &[u8], perm: &[u8]) -> Self {
        YMonomial { framings: framings.into(), perm: perm.into() }
    }

    fn swapped(&self, a: usize) -> Self {
        let mut m = self.clone();
        m.perm.swap(a, a + 1);
        m
    }

    fn shift_framing(&mut self, j: usize, by: i64, d: u32) {
        let v = (self.framings[j] as i64 + by).rem_euclid(d as i64);
        self.framings[j] = v as u8;
    }

    /// Reduced word of `w` in the inductive normal form, 1-based indices.
    pub fn braid_word(&self) -> Vec<usize> {
        reduced_word(&self.perm)
    }
}

impl fmt::Display for YMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (j, &k) in self.framings.iter().enumerate() {
            match k {
                0 => {}
                1 => parts.push(format!("t{}", j + 1)),
                _ => parts.push(format!("t{}^{}", j + 1, k)),
            }
        }
        parts.extend(self.braid_word().into_iter().map(|i| format!("g{i}")));
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("*"))
        }
    }
}

impl fmt::Debug for YMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A reduced word for the permutation with the given images, built as
/// `w = w' · s_{m−1} ⋯ s_p` with `w'` fixing the top point `m`.
pub fn reduced_word(images: &[u8]) -> Vec<usize> {
    let mut perm: Vec<u8> = images.to_vec();
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for m in (0..perm.len()).rev() {
        let p = perm.iter().position(|&v| v as usize == m).unwrap();
        // c = g_m g_{m-1} … g_{p+1} in 1-based generators
        blocks.push((p + 1..=m).rev().collect());
        perm.remove(p);
    }
    blocks.into_iter().rev().flatten().collect()
}

/// A linear combination of basis monomials with coefficients in `Z[q^{±1}]`
/// localized at `d`.
#[derive(Clone, PartialEq)]
pub struct YElement {
    d: u32,
    n: usize,
    terms: BTreeMap<YMonomial, QCoeff>,
}

fn check_generator(i: usize, n: usize) -> Result<()> {
    if i == 0 || i >= n {
        return Err(Error::IndexOutOfRange { index: i as i64, strands: n });
    }
    Ok(())
}

impl YElement {
    pub fn zero(d: u32, n: usize) -> Self {
        assert!(d >= 1, "d must be positive");
        YElement { d, n, terms: BTreeMap::new() }
    }

    pub fn one(d: u32, n: usize) -> Self {
        Self::from_monomial(d, YMonomial::identity(n), QCoeff::one())
    }

    pub fn from_monomial(d: u32, m: YMonomial, c: QCoeff) -> Self {
        let mut e = Self::zero(d, m.strands());
        e.add_term(m, c);
        e
    }

    /// `t_1^{k_1}…t_n^{k_n}` with framings read mod d.
    pub fn framing(d: u32, framings: &[i64]) -> Self {
        let ks: Vec<u32> = framings.iter().map(|k| k.rem_euclid(d as i64) as u32).collect();
        Self::from_monomial(d, YMonomial::new(&ks, &Permutation::identity(framings.len())), QCoeff::one())
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn strands(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&YMonomial, &QCoeff)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &YMonomial) -> Option<&QCoeff> {
        self.terms.get(m)
    }

    pub fn add_term(&mut self, m: YMonomial, c: QCoeff) {
        debug_assert_eq!(m.strands(), self.n);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().plus(&c);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn plus(&self, other: &YElement) -> YElement {
        assert_eq!((self.d, self.n), (other.d, other.n), "elements of different algebras");
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn minus(&self, other: &YElement) -> YElement {
        self.plus(&other.scaled(&QCoeff::integer(-1)))
    }

    pub fn scaled(&self, c: &QCoeff) -> YElement {
        let mut out = Self::zero(self.d, self.n);
        for (m, a) in &self.terms {
            out.add_term(m.clone(), a.times(c));
        }
        out
    }

    /// Views the element in Y_{d,n'} for `n' ≥ n`.
    pub fn widened(&self, n: usize) -> YElement {
        assert!(n >= self.n);
        let mut out = Self::zero(self.d, n);
        for (m, c) in &self.terms {
            let mut f = m.framings.clone();
            let mut p = m.perm.clone();
            for j in self.n..n {
                f.push(0);
                p.push(j as u8);
            }
            out.add_term(YMonomial { framings: f, perm: p }, c.clone());
        }
        out
    }

    /// Right multiplication by `t_j^k` (1-based `j`).
    pub fn mul_t(&self, j: usize, k: i64, stats: &mut RuleStats) -> YElement {
        assert!(j >= 1 && j <= self.n);
        let mut out = Self::zero(self.d, self.n);
        for (m, c) in &self.terms {
            let mut m2 = m.clone();
            let dest = m.perm_at(j - 1);
            if dest != j - 1 {
                stats.transport += 1;
            }
            m2.shift_framing(dest, k, self.d);
            out.add_term(m2, c.clone());
        }
        out
    }

    /// Right multiplication by `t_1^{k_1}…t_n^{k_n}`.
    pub fn mul_framing(&self, framings: &[i64], stats: &mut RuleStats) -> YElement {
        let mut out = self.clone();
        for (j, &k) in framings.iter().enumerate() {
            if k.rem_euclid(self.d as i64) != 0 {
                out = out.mul_t(j + 1, k, stats);
            }
        }
        out
    }

    /// Right multiplication by `e_i`.
    pub fn mul_e(&self, i: usize, stats: &mut RuleStats) -> YElement {
        let mut out = Self::zero(self.d, self.n);
        let inv_d = QCoeff::rational(Rational::new(1, self.d as i64));
        for (m, c) in &self.terms {
            let cd = c.times(&inv_d);
            push_times_e(&mut out, m, &cd, i - 1, stats);
        }
        out
    }

    /// Right multiplication by a single `g_i`.
    pub fn mul_g(&self, i: usize, stats: &mut RuleStats) -> YElement {
        let mut out = Self::zero(self.d, self.n);
        for (m, c) in &self.terms {
            push_times_g(&mut out, m, c, i - 1, stats);
        }
        out
    }

    /// Right multiplication by `g_i^r`.
    pub fn mul_g_power(&self, i: usize, r: i64, mode: PowerMode, stats: &mut RuleStats) -> YElement {
        match mode {
            PowerMode::Naive => {
                let mut out = self.clone();
                for _ in 0..r.unsigned_abs() {
                    out = if r > 0 {
                        out.mul_g(i, stats)
                    } else {
                        // g^{-1} = g − (q − q⁻¹) e
                        let g = out.mul_g(i, stats);
                        let e = out.mul_e(i, stats).scaled(&q_minus_q_inv());
                        g.minus(&e)
                    };
                }
                out
            }
            PowerMode::ClosedForm => {
                let mut out = Self::zero(self.d, self.n);
                for (m, c) in &self.terms {
                    push_times_power(&mut out, m, c, i - 1, r, stats);
                }
                out
            }
        }
    }

    /// Right multiplication by the basis monomial `t^L g_u`.
    pub fn mul_monomial(&self, m: &YMonomial, stats: &mut RuleStats) -> YElement {
        let framings: Vec<i64> = m.framings.iter().map(|&k| k as i64).collect();
        let mut out = self.mul_framing(&framings, stats);
        for i in m.braid_word() {
            out = out.mul_g(i, stats);
        }
        out
    }

    /// The normal form of `self · other`.
    pub fn multiply(&self, other: &YElement) -> YElement {
        self.multiply_with_stats(other, &mut RuleStats::default())
    }

    pub fn multiply_with_stats(&self, other: &YElement, stats: &mut RuleStats) -> YElement {
        assert_eq!((self.d, self.n), (other.d, other.n), "elements of different algebras");
        let mut out = Self::zero(self.d, self.n);
        for (m, c) in &other.terms {
            let part = self.mul_monomial(m, stats);
            for (pm, pc) in part.terms {
                out.add_term(pm, pc.times(c));
            }
        }
        out
    }
}

fn push_times_e(out: &mut YElement, m: &YMonomial, c: &QCoeff, a: usize, stats: &mut RuleStats) {
    let d = out.d;
    let (wa, wb) = (m.perm_at(a), m.perm_at(a + 1));
    stats.idempotent += 1;
    for x in 0..d as i64 {
        let mut m2 = m.clone();
        m2.shift_framing(wa, x, d);
        m2.shift_framing(wb, -x, d);
        out.add_term(m2, c.clone());
    }
}

fn push_times_g(out: &mut YElement, m: &YMonomial, c: &QCoeff, a: usize, stats: &mut RuleStats) {
    if m.perm_at(a) < m.perm_at(a + 1) {
        out.add_term(m.swapped(a), c.clone());
        return;
    }
    // t^K g_{w'} g_s g_s = t^K g_{w'} + (q − q⁻¹) t^K g_{w'} e_s g_s, and
    // g_{w'} e_s g_s = (1/d) Σ_x t_{w'(a)}^x t_{w'(a+1)}^{−x} g_w
    stats.quadratic += 1;
    let d = out.d;
    let shorter = m.swapped(a);
    let cd = c.times(&q_minus_q_inv()).scaled_rational(&Rational::new(1, d as i64));
    let (wa, wb) = (shorter.perm_at(a), shorter.perm_at(a + 1));
    for x in 0..d as i64 {
        let mut m2 = m.clone();
        m2.shift_framing(wa, x, d);
        m2.shift_framing(wb, -x, d);
        out.add_term(m2, cd.clone());
    }
    out.add_term(shorter, c.clone());
}

fn push_times_power(out: &mut YElement, m: &YMonomial, c: &QCoeff, a: usize, r: i64, stats: &mut RuleStats) {
    // Absorb a trailing g_s of m so the remaining multiplications only ever
    // lengthen the braid part.
    let (base, r) = if m.perm_at(a) > m.perm_at(a + 1) { (m.swapped(a), r + 1) } else { (m.clone(), r) };
    stats.power += 1;
    let form = power_form(r);
    let d = out.d;
    let inv_d = Rational::new(1, d as i64);
    if !form.a.is_zero() {
        out.add_term(base.clone(), c.times(&form.a));
    }
    if !form.b.is_zero() {
        out.add_term(base.swapped(a), c.times(&form.b));
    }
    if form.c.is_zero() && form.d.is_zero() {
        return;
    }
    stats.idempotent += 1;
    let cc = c.times(&form.c).scaled_rational(&inv_d);
    let cd = c.times(&form.d).scaled_rational(&inv_d);
    let (wa, wb) = (base.perm_at(a), base.perm_at(a + 1));
    for x in 0..d as i64 {
        let mut m2 = base.clone();
        m2.shift_framing(wa, x, d);
        m2.shift_framing(wb, -x, d);
        if !cd.is_zero() {
            out.add_term(m2.swapped(a), cd.clone());
        }
        if !cc.is_zero() {
            out.add_term(m2, cc.clone());
        }
    }
}

impl fmt::Display for YElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(m, c)| format!("({c})*{m}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for YElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Y[{},{}]: {}", self.d, self.n, self)
    }
}

/// `g_i^r` in the basis.
pub fn gen_g(d: u32, n: usize, i: usize, r: i64) -> Result<YElement> {
    check_generator(i, n)?;
    Ok(YElement::one(d, n).mul_g_power(i, r, PowerMode::ClosedForm, &mut RuleStats::default()))
}

/// `e_i = (1/d) Σ_s t_i^s t_{i+1}^{−s}`.
pub fn idempotent_e(d: u32, n: usize, i: usize) -> Result<YElement> {
    check_generator(i, n)?;
    Ok(YElement::one(d, n).mul_e(i, &mut RuleStats::default()))
}

/// `t_j^k`.
pub fn gen_t(d: u32, n: usize, j: usize, k: i64) -> Result<YElement> {
    if j == 0 || j > n {
        return Err(Error::IndexOutOfRange { index: j as i64, strands: n });
    }
    let mut f = vec![0i64; n];
    f[j - 1] = k;
    Ok(YElement::framing(d, &f))
}

/// γ: `t_j ↦ t_j`, `σ_i ↦ g_i`.
pub fn embed_framed(d: u32, w: &FramedBraidWord, mode: PowerMode, stats: &mut RuleStats) -> YElement {
    let mut e = YElement::framing(d, w.framings());
    for l in w.word().letters() {
        e = e.mul_g_power(l.index, l.exponent, mode, stats);
    }
    e
}

/// δ, the restriction of γ to classical braids.
pub fn embed_classical(d: u32, w: &BraidWord, mode: PowerMode, stats: &mut RuleStats) -> YElement {
    let mut e = YElement::one(d, w.strands());
    for l in w.letters() {
        e = e.mul_g_power(l.index, l.exponent, mode, stats);
    }
    e
}

/// η: `σ_i ↦ g_i`, `τ_i ↦ e_i`.
pub fn embed_singular(d: u32, w: &SingularBraidWord, mode: PowerMode, stats: &mut RuleStats) -> YElement {
    let mut e = YElement::one(d, w.strands());
    for l in w.letters() {
        e = match *l {
            SingularLetter::Braiding { index, exponent } => e.mul_g_power(index, exponent, mode, stats),
            // e_i is idempotent, so τ_i^k ↦ e_i
            SingularLetter::Singular { index, .. } => e.mul_e(index, stats),
        };
    }
    e
}

/// All `n!·d^n` basis monomials of Y_{d,n}.
pub fn enumerate_basis(d: u32, n: usize) -> Result<Vec<YMonomial>> {
    let mut size: u64 = 1;
    for k in 1..=n as u64 {
        size = size.saturating_mul(k).saturating_mul(d as u64);
    }
    if size > BASIS_LIMIT {
        return Err(Error::BasisTooLarge { d, n, limit: BASIS_LIMIT });
    }
    let mut perms: Vec<Vec<u8>> = vec![Vec::new()];
    for k in 0..n {
        let mut next = Vec::new();
        for p in &perms {
            for pos in 0..=k {
                let mut q = p.clone();
                q.insert(pos, k as u8);
                next.push(q);
            }
        }
        perms = next;
    }
    let mut out = Vec::with_capacity(size as usize);
    for p in &perms {
        for code in 0..(d as u64).pow(n as u32) {
            let mut c = code;
            let f: SmallVec<[u8; 8]> = (0..n)
                .map(|_| {
                    let v = (c % d as u64) as u8;
                    c /= d as u64;
                    v
                })
                .collect();
            out.push(YMonomial { framings: f, perm: p.iter().copied().collect() });
        }
    }
    Ok(out)
}
