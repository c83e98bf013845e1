//! The link invariants built on the specialized and generic traces.
//!
//! With `ε` the exponent sum and `n` the strand count of the source word,
//! Φ, Θ, P and Ψ are `Λ^{n−1} s^ε · tr_{d,D}` of the embedded word and are
//! stored as [`FactoredValue`]s; `M_d` is `z^{−(n−1)} tr_d` of the
//! transverse framed word and stays a Laurent polynomial in `q, z, x_k`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::braid::{BraidWord, FramedBraidWord, Letter, SingularBraidWord, SingularLetter};
use crate::coeff::{
    series_exp_substitution, Cyclotomic, FactoredValue, Monomial, MultiLaurent, Rational, TruncatedSeries, Var,
};
use crate::error::{Error, Result};
use crate::esystem::solve;
use crate::trace::{Generic, GenericEngine, Specialized, SpecializedEngine, Strategy, TraceEngine};

type Poly = MultiLaurent<Cyclotomic>;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Kind {
    Phi,
    Theta,
    Homflypt,
    Psi,
    Transverse,
}

impl Kind {
    pub fn name(self) -> &'static str {
        match self {
            Kind::Phi => "phi",
            Kind::Theta => "theta",
            Kind::Homflypt => "homflypt",
            Kind::Psi => "psi",
            Kind::Transverse => "m",
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Kind {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "phi" => Ok(Kind::Phi),
            "theta" => Ok(Kind::Theta),
            "homflypt" | "p" => Ok(Kind::Homflypt),
            "psi" => Ok(Kind::Psi),
            "m" | "transverse" => Ok(Kind::Transverse),
            _ => Err(format!("unknown invariant kind {s:?}")),
        }
    }
}

/// Output variables for rendering.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum Vars {
    #[default]
    QZ,
    QLambda,
}

impl FromStr for Vars {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "qz" => Ok(Vars::QZ),
            "qlambda" => Ok(Vars::QLambda),
            _ => Err(format!("unknown variable set {s:?}")),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Params {
    Specialized { d: u32, subset: Vec<u32> },
    Generic { d: u32 },
}

impl Params {
    pub fn d(&self) -> u32 {
        match self {
            Params::Specialized { d, .. } | Params::Generic { d } => *d,
        }
    }

    pub fn subset(&self) -> Option<&[u32]> {
        match self {
            Params::Specialized { subset, .. } => Some(subset),
            Params::Generic { .. } => None,
        }
    }
}

#[derive(Clone, PartialEq, Debug)]
pub enum Value {
    Factored(FactoredValue),
    Polynomial(MultiLaurent<Rational>),
}

#[derive(Clone, PartialEq, Debug)]
pub struct InvariantValue {
    pub kind: Kind,
    pub params: Params,
    pub value: Value,
    pub epsilon: i64,
    pub strands: usize,
    pub components: usize,
}

impl InvariantValue {
    pub fn factored(&self) -> Option<&FactoredValue> {
        match &self.value {
            Value::Factored(v) => Some(v),
            Value::Polynomial(_) => None,
        }
    }

    pub fn polynomial(&self) -> Option<&MultiLaurent<Rational>> {
        match &self.value {
            Value::Polynomial(p) => Some(p),
            Value::Factored(_) => None,
        }
    }

    pub fn parity(&self) -> Option<u8> {
        self.factored().map(FactoredValue::s_parity)
    }

    /// Canonical text of the value. `M_d` has no `(q, λ)` form.
    pub fn render(&self, vars: Vars) -> Result<String> {
        match (&self.value, vars) {
            (Value::Factored(v), Vars::QZ) => Ok(v.render()),
            (Value::Factored(v), Vars::QLambda) => Ok(v.to_lambda_form().render()),
            (Value::Polynomial(p), Vars::QZ) => Ok(p.to_string()),
            (Value::Polynomial(_), Vars::QLambda) => Err(Error::UnsupportedKind(self.kind.to_string())),
        }
    }

    /// Equality of values only.
    pub fn same_value(&self, other: &InvariantValue) -> bool {
        self.value == other.value
    }
}

/// Outcome of comparing Θ_{d,D}(q, z) with P(q, z/E_D).
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Comparison {
    KnotMatch,
    KnotMismatch,
    /// Links are reported, not asserted.
    Link {
        components: usize,
        equal: bool,
    },
}

impl Comparison {
    pub fn equal(&self) -> bool {
        matches!(self, Comparison::KnotMatch | Comparison::Link { equal: true, .. })
    }
}

/// Engines keyed by their parameters, so repeated evaluations share caches.
pub struct Evaluator {
    strategy: Strategy,
    specialized: HashMap<(u32, Vec<u32>), SpecializedEngine>,
    generic: HashMap<u32, GenericEngine>,
}

impl Default for Evaluator {
    fn default() -> Self {
        Evaluator::new(Strategy::Memo)
    }
}

fn prefactor(trace: Poly, strands: usize, epsilon: i64, e: &Rational) -> FactoredValue {
    let n1 = strands as i32 - 1;
    FactoredValue::new(trace, -n1, 0, epsilon as i32 - n1, e.clone())
}

fn q_minus_q_inv() -> Poly {
    &Poly::var(Var::Q) - &Poly::var_pow(Var::Q, -1)
}

fn check_index(i: usize, strands: usize) -> Result<()> {
    if i == 0 || i >= strands {
        return Err(Error::IndexOutOfRange { index: i as i64, strands });
    }
    Ok(())
}

impl Evaluator {
    pub fn new(strategy: Strategy) -> Self {
        Evaluator { strategy, specialized: HashMap::new(), generic: HashMap::new() }
    }

    pub fn strategy(&self) -> Strategy {
        self.strategy
    }

    pub fn specialized_engine(&mut self, d: u32, subset: &[u32]) -> Result<&mut SpecializedEngine> {
        let sol = solve(d, subset)?;
        let key = (d, sol.subset().to_vec());
        let strategy = self.strategy;
        Ok(self.specialized.entry(key).or_insert_with(|| TraceEngine::new(Specialized::new(sol), strategy)))
    }

    pub fn generic_engine(&mut self, d: u32) -> Result<&mut GenericEngine> {
        if d == 0 {
            return Err(Error::ZeroConductor);
        }
        let strategy = self.strategy;
        Ok(self.generic.entry(d).or_insert_with(|| TraceEngine::new(Generic::new(d), strategy)))
    }

    fn make(
        kind: Kind,
        d: u32,
        subset: &[u32],
        value: FactoredValue,
        eps: i64,
        strands: usize,
        comps: usize,
    ) -> InvariantValue {
        let mut subset = subset.to_vec();
        subset.sort_unstable();
        subset.dedup();
        InvariantValue {
            kind,
            params: Params::Specialized { d, subset },
            value: Value::Factored(value),
            epsilon: eps,
            strands,
            components: comps,
        }
    }

    pub fn phi(&mut self, d: u32, subset: &[u32], w: &FramedBraidWord) -> Result<InvariantValue> {
        let eng = self.specialized_engine(d, subset)?;
        let e = eng.target().solution().e().clone();
        let tr = eng.trace_framed(w);
        let eps = w.exponent_sum();
        let v = prefactor(tr, w.strands(), eps, &e);
        Ok(Self::make(Kind::Phi, d, subset, v, eps, w.strands(), w.word().closure_components().count))
    }

    pub fn theta(&mut self, d: u32, subset: &[u32], w: &BraidWord) -> Result<InvariantValue> {
        let eng = self.specialized_engine(d, subset)?;
        let e = eng.target().solution().e().clone();
        let tr = eng.trace_classical(w);
        let eps = w.exponent_sum();
        let v = prefactor(tr, w.strands(), eps, &e);
        Ok(Self::make(Kind::Theta, d, subset, v, eps, w.strands(), w.closure_components().count))
    }

    /// `P := Θ_{1,{0}}`.
    pub fn homflypt(&mut self, w: &BraidWord) -> Result<InvariantValue> {
        let mut v = self.theta(1, &[0], w)?;
        v.kind = Kind::Homflypt;
        Ok(v)
    }

    pub fn psi(&mut self, d: u32, subset: &[u32], w: &SingularBraidWord) -> Result<InvariantValue> {
        let eng = self.specialized_engine(d, subset)?;
        let e = eng.target().solution().e().clone();
        let tr = eng.trace_singular(w);
        let eps = w.exponent_sum();
        let v = prefactor(tr, w.strands(), eps, &e);
        Ok(Self::make(Kind::Psi, d, subset, v, eps, w.strands(), w.closure_components().count))
    }

    /// `M_d = z^{−(n−1)} tr_d(α′)` with generic `x_k`.
    pub fn transverse_m(&mut self, d: u32, w: &BraidWord) -> Result<InvariantValue> {
        let framed = w.to_transverse_framed();
        let eng = self.generic_engine(d)?;
        let tr = eng.trace_framed(&framed);
        let value = tr.mul_monomial(&Monomial::var(Var::Z, -(w.strands() as i32 - 1)));
        Ok(InvariantValue {
            kind: Kind::Transverse,
            params: Params::Generic { d },
            value: Value::Polynomial(value),
            epsilon: w.exponent_sum(),
            strands: w.strands(),
            components: w.closure_components().count,
        })
    }

    /// `(1/s)Φ(βσ_i) − sΦ(βσ_i⁻¹) − ((q−q⁻¹)/d) Σ_s Φ(β t_i^s t_{i+1}^{d−s})`.
    pub fn skein_residual_framed(
        &mut self,
        d: u32,
        subset: &[u32],
        beta: &FramedBraidWord,
        i: usize,
    ) -> Result<FactoredValue> {
        check_index(i, beta.strands())?;
        let with = |e: i64| {
            let word = beta.word().concat(&BraidWord::from_pairs(beta.strands(), &[(i, e)]));
            FramedBraidWord::new(beta.framings().to_vec(), word).expect("same strands")
        };
        let plus = self.phi(d, subset, &with(1))?;
        let minus = self.phi(d, subset, &with(-1))?;
        let lhs = plus.factored().unwrap().mul_s_power(-1).sub(&minus.factored().unwrap().mul_s_power(1))?;
        let e = lhs.e_d().clone();
        let mut rhs = FactoredValue::zero(e.clone());
        for s in 0..d as i64 {
            let mut f = vec![0i64; beta.strands()];
            f[i - 1] = s;
            f[i] = d as i64 - s;
            let v = self.phi(d, subset, &beta.then_framing(&f))?;
            rhs = rhs.add(v.factored().unwrap())?;
        }
        let coeff = q_minus_q_inv().scaled_rational(&Rational::new(1, d as i64));
        lhs.sub(&rhs.mul_poly(&coeff))
    }

    /// `(1/s)Ψ(βσ_i) − sΨ(βσ_i⁻¹) − ((q−q⁻¹)/s) Ψ(βτ_i)`.
    pub fn skein_residual_singular(
        &mut self,
        d: u32,
        subset: &[u32],
        beta: &SingularBraidWord,
        i: usize,
    ) -> Result<FactoredValue> {
        check_index(i, beta.strands())?;
        let n = beta.strands();
        let with = |l: SingularLetter| beta.concat(&SingularBraidWord::new(n, [l]).expect("valid index"));
        let plus = self.psi(d, subset, &with(SingularLetter::Braiding { index: i, exponent: 1 }))?;
        let minus = self.psi(d, subset, &with(SingularLetter::Braiding { index: i, exponent: -1 }))?;
        let cross = self.psi(d, subset, &with(SingularLetter::Singular { index: i, exponent: 1 }))?;
        let lhs = plus.factored().unwrap().mul_s_power(-1).sub(&minus.factored().unwrap().mul_s_power(1))?;
        let rhs = cross.factored().unwrap().mul_s_power(-1).mul_poly(&q_minus_q_inv());
        lhs.sub(&rhs)
    }

    /// Compares Θ_{d,D}(q, z) with P(q, z/E_D), both via the rescaled
    /// `(q, z)` form and via the `(q, λ)` forms; the two paths must agree.
    pub fn compare_theta_homflypt(&mut self, w: &BraidWord, d: u32, subset: &[u32]) -> Result<Comparison> {
        let theta = self.theta(d, subset, w)?;
        let p = self.homflypt(w)?;
        let (t, pv) = (theta.factored().unwrap(), p.factored().unwrap());
        let by_z = *t == pv.rescale_z(t.e_d())?;
        let by_lambda = t.to_lambda_form().same_expression(&pv.to_lambda_form());
        if by_z != by_lambda {
            return Err(Error::PropertyViolation(format!("(q, z) and (q, lambda) comparisons disagree on {w}")));
        }
        Ok(match theta.components {
            1 if by_z => Comparison::KnotMatch,
            1 => Comparison::KnotMismatch,
            c => Comparison::Link { components: c, equal: by_z },
        })
    }

    /// Checks `Φ(L) = Λ^{m−1} Φ(L_1)⋯Φ(L_m)` where `blocks` lists the strand
    /// counts of the split pieces from the bottom up.
    pub fn split_product_check(
        &mut self,
        d: u32,
        subset: &[u32],
        w: &FramedBraidWord,
        blocks: &[usize],
    ) -> Result<bool> {
        let pieces = split_pieces(w, blocks)?;
        let whole = self.phi(d, subset, w)?;
        let whole = whole.factored().unwrap();
        let e = whole.e_d().clone();
        let mut prod = FactoredValue::capital_lambda(e.clone()).pow(pieces.len() as u32 - 1);
        for p in &pieces {
            prod = prod.mul(self.phi(d, subset, p)?.factored().unwrap())?;
        }
        Ok(prod == *whole)
    }

    /// The `h`-expansion under `q = e^h` of the Vassiliev extension of Θ_{d,D}:
    /// each double point is resolved as `v(L_×) = v(L_+) − v(L_−)`.
    pub fn vassiliev_coefficients(
        &mut self,
        d: u32,
        subset: &[u32],
        w: &SingularBraidWord,
        order: usize,
    ) -> Result<TruncatedSeries<Cyclotomic>> {
        let mut total: Option<FactoredValue> = None;
        for (sign, word) in resolutions(w) {
            let v = self.theta(d, subset, &word)?;
            let v = v.factored().unwrap();
            let v = if sign < 0 { v.neg() } else { v.clone() };
            total = Some(match total {
                None => v,
                Some(t) => t.add(&v)?,
            });
        }
        factored_series(&total.expect("at least one resolution"), order)
    }
}

/// Θ, P: `q ↦ q⁻¹, λ ↦ λ⁻¹` in the `(q, λ)` form.
pub fn mirror_transform(v: &InvariantValue) -> Result<InvariantValue> {
    match (v.kind, &v.value) {
        (Kind::Theta | Kind::Homflypt, Value::Factored(f)) => {
            let mirrored = f.to_lambda_form().invert_q_lambda().to_factored()?;
            Ok(InvariantValue { value: Value::Factored(mirrored), epsilon: -v.epsilon, ..v.clone() })
        }
        _ => Err(Error::UnsupportedKind(v.kind.to_string())),
    }
}

/// Splits `w` along strand blocks; no letter may cross a block boundary.
pub fn split_pieces(w: &FramedBraidWord, blocks: &[usize]) -> Result<Vec<FramedBraidWord>> {
    if blocks.is_empty() || blocks.contains(&0) {
        return Err(Error::MalformedSplit("blocks must be non-empty".into()));
    }
    if blocks.iter().sum::<usize>() != w.strands() {
        return Err(Error::MalformedSplit(format!(
            "block sizes sum to {}, word has {} strands",
            blocks.iter().sum::<usize>(),
            w.strands()
        )));
    }
    let mut starts = Vec::with_capacity(blocks.len());
    let mut acc = 0;
    for &b in blocks {
        starts.push(acc);
        acc += b;
    }
    let block_of = |strand: usize| starts.iter().rposition(|&s| s <= strand).unwrap();
    let mut letters: Vec<Vec<Letter>> = vec![Vec::new(); blocks.len()];
    for l in w.word().letters() {
        let (lo, hi) = (block_of(l.index - 1), block_of(l.index));
        if lo != hi {
            return Err(Error::MalformedSplit(format!("s{} joins blocks {} and {}", l.index, lo + 1, hi + 1)));
        }
        letters[lo].push(Letter::new(l.index - starts[lo], l.exponent));
    }
    letters
        .into_iter()
        .enumerate()
        .map(|(b, ls)| {
            let word = BraidWord::new(blocks[b], ls)?;
            let f = w.framings()[starts[b]..starts[b] + blocks[b]].to_vec();
            FramedBraidWord::new(f, word)
        })
        .collect()
}

/// All `2^k` classical resolutions of the double points, with signs.
pub fn resolutions(w: &SingularBraidWord) -> Vec<(i64, BraidWord)> {
    let mut out: Vec<(i64, Vec<Letter>)> = vec![(1, Vec::new())];
    for l in w.letters() {
        match *l {
            SingularLetter::Braiding { index, exponent } => {
                for (_, ls) in out.iter_mut() {
                    ls.push(Letter::new(index, exponent));
                }
            }
            SingularLetter::Singular { index, exponent } => {
                for _ in 0..exponent {
                    out = out
                        .into_iter()
                        .flat_map(|(sign, ls)| {
                            let mut plus = ls.clone();
                            plus.push(Letter::new(index, 1));
                            let mut minus = ls;
                            minus.push(Letter::new(index, -1));
                            [(sign, plus), (-sign, minus)]
                        })
                        .collect();
                }
            }
        }
    }
    out.into_iter().map(|(sign, ls)| (sign, BraidWord::new(w.strands(), ls).expect("indices checked"))).collect()
}

/// Expands `core · z^a · μ^b · s^p` at `q = e^h`, writing
/// `μ^b s^p = z^b (1 + u)^{b + p/2}` with `u = −(q − q⁻¹)E/z`, and taking
/// the branch of the square root equal to 1 at `h = 0`.
pub fn factored_series(v: &FactoredValue, order: usize) -> Result<TruncatedSeries<Cyclotomic>> {
    let front = v.core().mul_monomial(&Monomial::var(Var::Z, v.z_exp() + v.mu_exp()));
    let base = series_exp_substitution(&front, order);
    let u = q_minus_q_inv().scaled_rational(&-v.e_d().clone()).mul_monomial(&Monomial::var(Var::Z, -1));
    let alpha = Rational::new(2 * v.mu_exp() as i64 + v.s_parity() as i64, 2);
    let tail = series_exp_substitution(&u, order).one_plus_pow(&alpha)?;
    Ok(base.times(&tail))
}

pub fn phi(d: u32, subset: &[u32], w: &FramedBraidWord) -> Result<InvariantValue> {
    Evaluator::default().phi(d, subset, w)
}

pub fn theta(d: u32, subset: &[u32], w: &BraidWord) -> Result<InvariantValue> {
    Evaluator::default().theta(d, subset, w)
}

pub fn homflypt(w: &BraidWord) -> Result<InvariantValue> {
    Evaluator::default().homflypt(w)
}

pub fn psi(d: u32, subset: &[u32], w: &SingularBraidWord) -> Result<InvariantValue> {
    Evaluator::default().psi(d, subset, w)
}

pub fn transverse_m(d: u32, w: &BraidWord) -> Result<InvariantValue> {
    Evaluator::default().transverse_m(d, w)
}
