//! Property suites run by `ykh verify`.

use std::fmt;
use std::str::FromStr;

use anyhow::Result;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use ykh_core::braid::random;
use ykh_core::catalog::{builtin_catalog, Source};
use ykh_core::esystem::{all_subsets, solve, verify};
use ykh_core::{BraidWord, Comparison, Evaluator, FramedBraidWord, SingularBraidWord};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Suite {
    Skein,
    Markov,
    Mirror,
    Esystem,
    Homflypt,
    Transverse,
    Catalog,
    All,
}

impl FromStr for Suite {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Ok(match s {
            "skein" => Suite::Skein,
            "markov" => Suite::Markov,
            "mirror" => Suite::Mirror,
            "esystem" => Suite::Esystem,
            "homflypt" => Suite::Homflypt,
            "transverse" => Suite::Transverse,
            "catalog" => Suite::Catalog,
            "all" => Suite::All,
            _ => return Err(format!("unknown suite {s:?}")),
        })
    }
}

impl Suite {
    const EACH: [Suite; 7] = [
        Suite::Skein,
        Suite::Markov,
        Suite::Mirror,
        Suite::Esystem,
        Suite::Homflypt,
        Suite::Transverse,
        Suite::Catalog,
    ];
}

pub struct Settings {
    pub d: u32,
    pub subsets: Vec<Vec<u32>>,
    pub count: usize,
    pub seed: u64,
}

#[derive(Default)]
pub struct Check {
    pub name: String,
    pub cases: usize,
    pub failures: Vec<String>,
}

impl Check {
    fn new(name: impl Into<String>) -> Self {
        Check { name: name.into(), ..Default::default() }
    }

    fn expect(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures.push(what());
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.failures.is_empty() {
            write!(f, "ok   {} ({} cases)", self.name, self.cases)
        } else {
            write!(f, "FAIL {} ({}/{} failed)", self.name, self.failures.len(), self.cases)?;
            for msg in self.failures.iter().take(5) {
                write!(f, "\n       {msg}")?;
            }
            Ok(())
        }
    }
}

pub fn run(suite: Suite, s: &Settings, ev: &mut Evaluator) -> Result<Vec<Check>> {
    if suite == Suite::All {
        let mut out = Vec::new();
        for each in Suite::EACH {
            out.extend(run(each, s, ev)?);
        }
        return Ok(out);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(s.seed);
    match suite {
        Suite::Skein => skein(s, ev, &mut rng),
        Suite::Markov => markov(s, ev, &mut rng),
        Suite::Mirror => mirror(s, ev, &mut rng),
        Suite::Esystem => esystem(s),
        Suite::Homflypt => homflypt(s, ev),
        Suite::Transverse => transverse(s, ev),
        Suite::Catalog => Ok(vec![catalog()]),
        Suite::All => unreachable!(),
    }
}

fn label(d: u32, subset: &[u32]) -> String {
    format!("d={d} D={subset:?}")
}

fn skein(s: &Settings, ev: &mut Evaluator, rng: &mut ChaCha8Rng) -> Result<Vec<Check>> {
    let mut framed = Check::new(format!("framed skein residual, d={}", s.d));
    let mut singular = Check::new(format!("singular skein residual, d={}", s.d));
    for subset in &s.subsets {
        for _ in 0..s.count {
            let n = rng.gen_range(2..=3);
            let i = rng.gen_range(1..n);
            let beta = random::framed_word(rng, n, 6, s.d);
            let r = ev.skein_residual_framed(s.d, subset, &beta, i)?;
            framed.expect(r.is_zero(), || format!("{} beta={beta} i={i}", label(s.d, subset)));
            let k = rng.gen_range(0..=1);
            let beta = random::singular_word(rng, n, 6, k);
            let r = ev.skein_residual_singular(s.d, subset, &beta, i)?;
            singular.expect(r.is_zero(), || format!("{} beta={beta} i={i}", label(s.d, subset)));
        }
    }
    Ok(vec![framed, singular])
}

fn framed_inverse(u: &FramedBraidWord) -> FramedBraidWord {
    let neg: Vec<i64> = u.framings().iter().map(|k| -k).collect();
    FramedBraidWord::unframed(u.word().inverse()).then_framing(&neg)
}

fn markov(s: &Settings, ev: &mut Evaluator, rng: &mut ChaCha8Rng) -> Result<Vec<Check>> {
    let d = s.d;
    let mut theta = Check::new(format!("theta conjugation and stabilization, d={d}"));
    let mut phi = Check::new(format!("phi conjugation and stabilization, d={d}"));
    let mut psi = Check::new(format!("psi conjugation and stabilization, d={d}"));
    let mut m = Check::new(format!("m conjugation and positive stabilization, d={d}"));
    for subset in &s.subsets {
        for _ in 0..s.count {
            let n = rng.gen_range(1..=3usize);
            let w = random::braid_word(rng, n, 8);
            let u = random::braid_word(rng, n, 3);
            let conj = u.concat(&w).concat(&u.inverse());
            let base = ev.theta(d, subset, &w)?;
            for other in [&conj, &w.stabilize(1), &w.stabilize(-1)] {
                let v = ev.theta(d, subset, other)?;
                theta.expect(v.same_value(&base), || format!("{} {w} vs {other}", label(d, subset)));
            }
            let base = ev.transverse_m(d, &w)?;
            for other in [&conj, &w.stabilize(1)] {
                let v = ev.transverse_m(d, other)?;
                m.expect(v.same_value(&base), || format!("d={d} {w} vs {other}"));
            }

            let w = random::framed_word(rng, n, 8, d);
            let u = random::framed_word(rng, n, 3, d);
            let stab =
                |e: i64| w.widened(n + 1).concat(&FramedBraidWord::unframed(BraidWord::from_pairs(n + 1, &[(n, e)])));
            let base = ev.phi(d, subset, &w)?;
            for other in [u.concat(&w).concat(&framed_inverse(&u)), stab(1), stab(-1)] {
                let v = ev.phi(d, subset, &other)?;
                phi.expect(v.same_value(&base), || format!("{} {w} vs {other}", label(d, subset)));
            }

            let n = n.max(2);
            let w = random::singular_word(rng, n, 6, 1);
            let u = random::braid_word(rng, n, 3);
            let conj = SingularBraidWord::from_classical(&u)
                .concat(&w)
                .concat(&SingularBraidWord::from_classical(&u.inverse()));
            let base = ev.psi(d, subset, &w)?;
            for other in [&conj, &w.stabilize(1), &w.stabilize(-1)] {
                let v = ev.psi(d, subset, other)?;
                psi.expect(v.same_value(&base), || format!("{} {w} vs {other}", label(d, subset)));
            }
        }
    }
    Ok(vec![theta, phi, psi, m])
}

fn mirror(s: &Settings, ev: &mut Evaluator, rng: &mut ChaCha8Rng) -> Result<Vec<Check>> {
    let mut c = Check::new(format!("theta mirror law, d={}", s.d));
    for subset in &s.subsets {
        for _ in 0..s.count {
            let n = rng.gen_range(1..=3);
            let w = random::braid_word(rng, n, 7);
            let v = ykh_core::mirror_transform(&ev.theta(s.d, subset, &w)?)?;
            let m = ev.theta(s.d, subset, &w.mirror())?;
            c.expect(v.same_value(&m), || format!("{} {w}", label(s.d, subset)));
        }
    }
    Ok(vec![c])
}

fn esystem(s: &Settings) -> Result<Vec<Check>> {
    let mut c = Check::new(format!("E-system solutions, d={}", s.d));
    let mut seen: Vec<Vec<_>> = Vec::new();
    for subset in all_subsets(s.d) {
        let sol = solve(s.d, &subset)?;
        c.expect(verify(s.d, sol.values()).passed(), || format!("{sol} fails the system"));
        c.expect(!seen.iter().any(|v| v.as_slice() == sol.values()), || format!("{sol} repeats an earlier solution"));
        seen.push(sol.values().to_vec());
    }
    let expected = (1usize << s.d) - 1;
    c.expect(seen.len() == expected, || format!("{} solutions, expected {expected}", seen.len()));
    Ok(vec![c])
}

fn homflypt(s: &Settings, ev: &mut Evaluator) -> Result<Vec<Check>> {
    let mut c = Check::new(format!("theta of knots equals rescaled homflypt, d={}", s.d));
    for e in builtin_catalog() {
        let Some(w) = e.classical() else { continue };
        if w.strands() > 3 || w.closure_components().count != 1 {
            continue;
        }
        for subset in &s.subsets {
            let r = ev.compare_theta_homflypt(w, s.d, subset)?;
            c.expect(r == Comparison::KnotMatch, || format!("{} {}: {r:?}", e.name, label(s.d, subset)));
        }
    }
    Ok(vec![c])
}

fn transverse(s: &Settings, ev: &mut Evaluator) -> Result<Vec<Check>> {
    let mut c = Check::new(format!("m equal on transverse pairs, d={}", s.d));
    let entries: Vec<_> = builtin_catalog().into_iter().filter(|e| e.source == Source::Builtin("transverse")).collect();
    for pair in entries.chunks(2) {
        let (Some(x), Some(y)) = (pair[0].classical(), pair[1].classical()) else { continue };
        let same = ev.transverse_m(s.d, x)?.same_value(&ev.transverse_m(s.d, y)?);
        c.expect(same, || format!("{} vs {}", pair[0].name, pair[1].name));
    }
    Ok(vec![c])
}

fn catalog() -> Check {
    let mut c = Check::new("catalog component counts and topology");
    for e in builtin_catalog() {
        let r = e.check();
        c.expect(r.is_ok(), || r.unwrap_err().to_string());
    }
    c
}
