//! The Markov trace `tr_d` and its specializations `tr_{d,D}`.
//!
//! A basis monomial `t^K g_w` is traced by peeling its top strand. With
//! `T` the top strand after dropping unbraided, unframed strands:
//!
//! * `w(T) = T`, framing `k ≠ 0` on `T`: `tr = x_k · tr(rest)`;
//! * otherwise `g_w = g_{w'} g_{T−1} R` with `R = g_{T−2} ⋯ g_{p+1}` and
//!   `w'` fixing `T`, and conjugation gives
//!   `tr(t^K g_w) = z · tr(t_{T−1}^{k_T} R t^{K'} g_{w'})`, an element of
//!   Y_{d,T−1} which is reduced again and traced term by term.

use std::collections::HashMap;
use std::time::{Duration, Instant};

use crate::algebra::{
    embed_classical, embed_framed, embed_singular, PowerMode, QCoeff, RuleStats, YElement, YMonomial,
};
use crate::braid::{BraidWord, FramedBraidWord, SingularBraidWord};
use crate::coeff::{Coefficient, Cyclotomic, MultiLaurent, Rational, Var};
use crate::error::Result;
use crate::esystem::{solve, ESolution};

/// Where the framing parameters `x_k` live.
pub trait TraceTarget: Clone + Send + Sync {
    type C: Coefficient;

    fn d(&self) -> u32;

    /// `x_k` for `1 ≤ k ≤ d − 1`.
    fn x(&self, k: u32) -> MultiLaurent<Self::C>;

    fn lift(&self, c: &QCoeff) -> MultiLaurent<Self::C>;

    /// Parameter label used in cache keys.
    fn label(&self) -> String;
}

/// `x_1, …, x_{d−1}` kept as indeterminates.
#[derive(Clone, Debug)]
pub struct Generic {
    d: u32,
}

impl Generic {
    pub fn new(d: u32) -> Self {
        assert!(d >= 1);
        Generic { d }
    }
}

impl TraceTarget for Generic {
    type C = Rational;

    fn d(&self) -> u32 {
        self.d
    }

    fn x(&self, k: u32) -> MultiLaurent<Rational> {
        MultiLaurent::var(Var::X(k as u16))
    }

    fn lift(&self, c: &QCoeff) -> MultiLaurent<Rational> {
        c.clone()
    }

    fn label(&self) -> String {
        format!("d={}", self.d)
    }
}

/// `x_k` set to an E-system solution.
#[derive(Clone, Debug)]
pub struct Specialized {
    solution: ESolution,
}

impl Specialized {
    pub fn new(solution: ESolution) -> Self {
        Specialized { solution }
    }

    pub fn solve(d: u32, subset: &[u32]) -> Result<Self> {
        Ok(Specialized { solution: solve(d, subset)? })
    }

    pub fn solution(&self) -> &ESolution {
        &self.solution
    }
}

impl TraceTarget for Specialized {
    type C = Cyclotomic;

    fn d(&self) -> u32 {
        self.solution.d()
    }

    fn x(&self, k: u32) -> MultiLaurent<Cyclotomic> {
        MultiLaurent::constant(self.solution.x(k))
    }

    fn lift(&self, c: &QCoeff) -> MultiLaurent<Cyclotomic> {
        c.map_coeffs(|r| Cyclotomic::from_rational(r.clone()))
    }

    fn label(&self) -> String {
        format!("d={};D={}", self.solution.d(), self.solution.subset_label())
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Strategy {
    /// Letter-by-letter rewriting, no caching.
    Naive,
    /// Closed-form powers, no caching.
    Power,
    /// Closed-form powers with basis-monomial and word caches.
    Memo,
}

impl Strategy {
    fn power_mode(self) -> PowerMode {
        match self {
            Strategy::Naive => PowerMode::Naive,
            Strategy::Power | Strategy::Memo => PowerMode::ClosedForm,
        }
    }
}

impl std::str::FromStr for Strategy {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "naive" => Ok(Strategy::Naive),
            "power" | "power_formula" => Ok(Strategy::Power),
            "memo" | "memoized" => Ok(Strategy::Memo),
            _ => Err(format!("unknown strategy {s:?}")),
        }
    }
}

#[derive(Clone, Copy, Default, Debug)]
pub struct TraceStats {
    pub rules: RuleStats,
    /// Top-strand peeling steps.
    pub peels: u64,
    pub cache_hits: u64,
    pub cache_misses: u64,
    pub wall: Duration,
}

impl TraceStats {
    /// Rewriting rules plus trace-rule applications.
    pub fn rule_applications(&self) -> u64 {
        self.rules.total() + self.peels
    }
}

/// A trace evaluator. Not shared between threads: its caches are owned and
/// mutated through `&mut self`.
pub struct TraceEngine<T: TraceTarget> {
    target: T,
    strategy: Strategy,
    basis_cache: HashMap<YMonomial, MultiLaurent<T::C>>,
    word_cache: HashMap<String, MultiLaurent<T::C>>,
    stats: TraceStats,
}

pub type GenericEngine = TraceEngine<Generic>;
pub type SpecializedEngine = TraceEngine<Specialized>;

impl<T: TraceTarget> TraceEngine<T> {
    pub fn new(target: T, strategy: Strategy) -> Self {
        TraceEngine {
            target,
            strategy,
            basis_cache: HashMap::new(),
            word_cache: HashMap::new(),
            stats: TraceStats::default(),
        }
    }

    pub fn target(&self) -> &T {
        &self.target
    }

    pub fn d(&self) -> u32 {
        self.target.d()
    }

    pub fn strategy(&self) -> Strategy {
        self.strategy
    }

    pub fn stats(&self) -> TraceStats {
        self.stats
    }

    pub fn reset_stats(&mut self) {
        self.stats = TraceStats::default();
    }

    pub fn clear_cache(&mut self) {
        self.basis_cache.clear();
        self.word_cache.clear();
    }

    /// The image of a word under γ, δ or η with this engine's power mode.
    pub fn embed_framed(&mut self, w: &FramedBraidWord) -> YElement {
        embed_framed(self.d(), w, self.strategy.power_mode(), &mut self.stats.rules)
    }

    pub fn embed_classical(&mut self, w: &BraidWord) -> YElement {
        embed_classical(self.d(), w, self.strategy.power_mode(), &mut self.stats.rules)
    }

    pub fn embed_singular(&mut self, w: &SingularBraidWord) -> YElement {
        embed_singular(self.d(), w, self.strategy.power_mode(), &mut self.stats.rules)
    }

    fn cached_word(&mut self, key: String, build: impl FnOnce(&mut Self) -> YElement) -> MultiLaurent<T::C> {
        let start = Instant::now();
        let key = format!("{}|{key}", self.target.label());
        if self.strategy == Strategy::Memo {
            if let Some(v) = self.word_cache.get(&key) {
                self.stats.cache_hits += 1;
                self.stats.wall += start.elapsed();
                return v.clone();
            }
            self.stats.cache_misses += 1;
        }
        let el = build(self);
        let v = self.trace_inner(&el);
        if self.strategy == Strategy::Memo {
            self.word_cache.insert(key, v.clone());
        }
        self.stats.wall += start.elapsed();
        v
    }

    pub fn trace_framed(&mut self, w: &FramedBraidWord) -> MultiLaurent<T::C> {
        let mut w = w.clone();
        let d = self.d() as i64;
        let reduced: Vec<i64> = w.framings().iter().map(|k| k.rem_euclid(d)).collect();
        w = FramedBraidWord::new(reduced, w.word().clone()).expect("same length");
        self.cached_word(format!("F:{w}"), |s| s.embed_framed(&w))
    }

    pub fn trace_classical(&mut self, w: &BraidWord) -> MultiLaurent<T::C> {
        self.cached_word(format!("C:{w}"), |s| s.embed_classical(w))
    }

    pub fn trace_singular(&mut self, w: &SingularBraidWord) -> MultiLaurent<T::C> {
        self.cached_word(format!("S:{w}"), |s| s.embed_singular(w))
    }

    /// Linear extension to arbitrary elements.
    pub fn trace_element(&mut self, e: &YElement) -> MultiLaurent<T::C> {
        assert_eq!(e.d(), self.d(), "element of a different algebra");
        let start = Instant::now();
        let v = self.trace_inner(e);
        self.stats.wall += start.elapsed();
        v
    }

    fn trace_inner(&mut self, e: &YElement) -> MultiLaurent<T::C> {
        let mut total = MultiLaurent::zero();
        for (m, c) in e.terms() {
            let t = self.trace_monomial(m);
            total = total.plus(&t.times(&self.target.lift(c)));
        }
        total
    }

    fn trace_monomial(&mut self, m: &YMonomial) -> MultiLaurent<T::C> {
        let (framings, perm) = m.raw_parts();
        let mut top = perm.len();
        while top > 0 && perm[top - 1] as usize == top - 1 && framings[top - 1] == 0 {
            top -= 1;
        }
        if top == 0 {
            return MultiLaurent::one();
        }
        let key = YMonomial::from_raw(&framings[..top], &perm[..top]);
        if self.strategy == Strategy::Memo {
            if let Some(v) = self.basis_cache.get(&key) {
                self.stats.cache_hits += 1;
                return v.clone();
            }
            self.stats.cache_misses += 1;
        }
        let v = self.peel(&key);
        if self.strategy == Strategy::Memo {
            self.basis_cache.insert(key, v.clone());
        }
        v
    }

    /// One peeling step on a monomial whose top strand is braided or framed.
    fn peel(&mut self, m: &YMonomial) -> MultiLaurent<T::C> {
        self.stats.peels += 1;
        let (framings, perm) = m.raw_parts();
        let t = perm.len() - 1;
        let k_top = framings[t] as u32;
        if perm[t] as usize == t {
            // top strand unbraided: rule (4)
            let rest = YMonomial::from_raw(&framings[..t], &perm[..t]);
            return self.target.x(k_top).times(&self.trace_monomial(&rest));
        }
        let d = self.d();
        let p = perm.iter().position(|&v| v as usize == t).unwrap();
        // w' = w with the entry at p moved to the end; it fixes the top strand
        let mut w_prime: Vec<u8> = perm.to_vec();
        let v = w_prime.remove(p);
        w_prime.push(v);
        debug_assert_eq!(w_prime[t] as usize, t, "top generator must occur exactly once");
        let sub = YMonomial::from_raw(&vec![0u8; t], &w_prime[..t]);

        let mut start = vec![0i64; t];
        start[t - 1] = k_top as i64;
        let mut el = YElement::framing(d, &start);
        let rules = &mut self.stats.rules;
        // R = g_{T−2} ⋯ g_{p+1}; with t = T − 1 these are g_{t−1} down to g_{p+1}
        for gen in (p + 1..t).rev() {
            el = el.mul_g(gen, rules);
        }
        let rest_framings: Vec<i64> = framings[..t].iter().map(|&k| k as i64).collect();
        el = el.mul_framing(&rest_framings, rules);
        el = el.mul_monomial(&sub, rules);
        let z = MultiLaurent::var(Var::Z);
        z.times(&self.trace_inner(&el))
    }
}

/// `tr_d` of a framed braid with indeterminate `x_k`.
pub fn trace_generic(d: u32, w: &FramedBraidWord) -> MultiLaurent<Rational> {
    TraceEngine::new(Generic::new(d), Strategy::Memo).trace_framed(w)
}

/// `tr_{d,D}` of a framed braid.
pub fn trace_specialized(d: u32, subset: &[u32], w: &FramedBraidWord) -> Result<MultiLaurent<Cyclotomic>> {
    Ok(TraceEngine::new(Specialized::solve(d, subset)?, Strategy::Memo).trace_framed(w))
}

/// Substitutes an E-system solution into a generic trace value.
pub fn specialize(p: &MultiLaurent<Rational>, sol: &ESolution) -> Result<MultiLaurent<Cyclotomic>> {
    let mut out = p.map_coeffs(|r| Cyclotomic::from_rational(r.clone()));
    for k in 1..sol.d() {
        out = out.substitute(Var::X(k as u16), &MultiLaurent::constant(sol.x(k)))?;
    }
    Ok(out)
}

/// Applies `q ↦ q⁻¹`, `z ↦ z − (q − q⁻¹)E` to a specialized value.
pub fn mirror_substitution(p: &MultiLaurent<Cyclotomic>, e: &Rational) -> Result<MultiLaurent<Cyclotomic>> {
    let qq = &MultiLaurent::<Cyclotomic>::var(Var::Q) - &MultiLaurent::var_pow(Var::Q, -1);
    let shifted_z = &MultiLaurent::var(Var::Z) - &qq.scaled_rational(e);
    // invert q first so the shift is written in the new q
    p.invert_var(Var::Q).substitute(Var::Z, &shifted_z)
}
