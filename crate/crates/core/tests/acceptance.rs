//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. All comparisons are exact equality of canonical forms; time
//! budgets are upper bounds on wall time.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ykh_core::algebra::{PowerMode, RuleStats};
use ykh_core::braid::random;
use ykh_core::catalog::{birman_menasco, khandhawit_ng, ng_pairs};
use ykh_core::esystem::{all_solutions, all_subsets};
use ykh_core::invariants::{Comparison, Evaluator};
use ykh_core::trace::{mirror_substitution, specialize, Generic, Specialized, Strategy, TraceEngine};
use ykh_core::{
    enumerate_basis, gen_g, idempotent_e, parse_classical, verify, BraidWord, FramedBraidWord, MultiLaurent, Rational,
    SingularBraidWord, Var, YElement,
};

type Outcome = Result<String, String>;
type SP = MultiLaurent<ykh_core::Cyclotomic>;
type QP = MultiLaurent<Rational>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// `(q^a + sign·q^{−a}) / (q + q⁻¹)` by long division.
fn quotient<C: ykh_core::coeff::Coefficient>(a: i32, sign: i64) -> MultiLaurent<C> {
    let num = MultiLaurent::<C>::var_pow(Var::Q, a)
        .plus(&MultiLaurent::var_pow(Var::Q, -a).scaled_rational(&Rational::from_integer(sign)));
    let den = MultiLaurent::<C>::var(Var::Q).plus(&MultiLaurent::var_pow(Var::Q, -1));
    num.div_exact(Var::Q, &den).expect("exact quotient")
}

fn c1_closed_trace() -> Outcome {
    let mut checked = 0;
    for d in 2..=3 {
        for subset in all_subsets(d) {
            let target = Specialized::solve(d, &subset).map_err(|e| e.to_string())?;
            let e = SP::rational(target.solution().e().clone());
            let mut eng = TraceEngine::new(target, Strategy::Memo);
            for k in 1..=5i32 {
                let w = BraidWord::from_pairs(2, &[(1, 2 * k as i64)]);
                let expect = SP::one()
                    .minus(&e)
                    .plus(&quotient::<ykh_core::Cyclotomic>(2 * k, -1).times(&SP::var(Var::Z)))
                    .plus(&quotient::<ykh_core::Cyclotomic>(2 * k - 1, 1).times(&e));
                let got = eng.trace_classical(&w);
                ensure(got == expect, || format!("d={d} D={subset:?} k={k}: {got} != {expect}"))?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} traces"))
}

fn c2_power_lemma() -> Outcome {
    let mut checked = 0;
    for d in 1..=3 {
        for n in 2..=3 {
            for i in 1..n {
                let g = gen_g(d, n, i, 1).unwrap();
                let e = idempotent_e(d, n, i).unwrap();
                let eg = e.multiply(&g);
                let one = YElement::one(d, n);
                let mut acc = one.clone();
                for r in 1..=8i64 {
                    acc = acc.multiply(&g);
                    let closed = gen_g(d, n, i, r).unwrap();
                    ensure(closed == acc, || format!("d={d} n={n} i={i} r={r}: closed form differs from product"))?;
                    let naive = one.mul_g_power(i, r, PowerMode::Naive, &mut RuleStats::default());
                    ensure(naive == acc, || format!("d={d} n={n} i={i} r={r}: naive power differs"))?;
                    let r32 = r as i32;
                    let lemma = if r % 2 == 1 {
                        g.minus(&eg).plus(&eg.scaled(&quotient(r32, 1))).plus(&e.scaled(&quotient(r32 - 1, -1)))
                    } else {
                        one.minus(&e).plus(&eg.scaled(&quotient(r32, -1))).plus(&e.scaled(&quotient(r32 - 1, 1)))
                    };
                    ensure(lemma == acc, || format!("d={d} n={n} i={i} r={r}: lemma expression differs"))?;
                    checked += 1;
                }
            }
        }
    }
    Ok(format!("{checked} powers"))
}

fn c3_basis() -> Outcome {
    for d in 1..=3u32 {
        for n in 1..=4usize {
            let got = enumerate_basis(d, n).map_err(|e| e.to_string())?;
            let fact: usize = (1..=n).product();
            let expect = fact * (d as usize).pow(n as u32);
            let distinct: std::collections::BTreeSet<_> = got.iter().collect();
            ensure(got.len() == expect && distinct.len() == expect, || {
                format!("d={d} n={n}: {} elements, expected {expect}", got.len())
            })?;
        }
    }
    Ok("12 dimensions".into())
}

fn c4_esystem() -> Outcome {
    let mut total = 0;
    for d in 1..=6u32 {
        let sols = all_solutions(d).map_err(|e| e.to_string())?;
        ensure(sols.len() == (1 << d) - 1, || format!("d={d}: {} solutions", sols.len()))?;
        for s in &sols {
            ensure(verify(d, s.values()).passed(), || format!("d={d} D={:?} fails", s.subset()))?;
            ensure(*s.e() == Rational::new(1, s.subset().len() as i64), || format!("d={d} D={:?}: E", s.subset()))?;
        }
        for (i, a) in sols.iter().enumerate() {
            for b in &sols[i + 1..] {
                ensure(a.values() != b.values(), || format!("d={d}: {:?} and {:?} coincide", a.subset(), b.subset()))?;
            }
        }
        total += sols.len();
    }
    Ok(format!("{total} solutions"))
}

fn x_param(d: u32, s: i64) -> QP {
    match s.rem_euclid(d as i64) {
        0 => QP::one(),
        k => QP::var(Var::X(k as u16)),
    }
}

fn c5_trace_properties() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0005);
    let mut generic: Vec<_> = (1..=3).map(|d| TraceEngine::new(Generic::new(d), Strategy::Memo)).collect();
    for round in 0..100 {
        let d = rng.gen_range(1..=3u32);
        let n = rng.gen_range(1..=4usize);
        let eng = &mut generic[d as usize - 1];
        let w = random::framed_word(&mut rng, n, 10, d);
        let tr = eng.trace_framed(&w);
        let ctx = |what: &str| format!("round {round} d={d} {what} on {w}");

        // conjugation
        let cut = rng.gen_range(0..=w.word().letters().len());
        let (a, b) = split_framed(&w, cut);
        ensure(eng.trace_framed(&a.concat(&b)) == eng.trace_framed(&b.concat(&a)), || ctx("tr(ab) = tr(ba)"))?;
        // Markov
        let up = w.widened(n + 1).concat(&FramedBraidWord::unframed(BraidWord::from_pairs(n + 1, &[(n, 1)])));
        ensure(eng.trace_framed(&up) == tr.times(&QP::var(Var::Z)), || ctx("tr(a g_n) = z tr(a)"))?;
        let s = rng.gen_range(0..d as i64);
        let mut f = vec![0; n + 1];
        f[n] = s;
        let framed_up = w.widened(n + 1).then_framing(&f);
        ensure(eng.trace_framed(&framed_up) == tr.times(&x_param(d, s)), || ctx("tr(a t^s) = x_s tr(a)"))?;
        // inversion
        ensure(eng.trace_framed(&w.reverse()) == tr, || ctx("inversion"))?;
        // split
        let m = rng.gen_range(1..=2);
        let other = random::framed_word(&mut rng, m, 4, d);
        ensure(eng.trace_framed(&w.disjoint_union(&other)) == tr.times(&eng.trace_framed(&other)), || ctx("split"))?;
        // specialized: mirror and classical connected sum
        let subsets = all_subsets(d);
        let subset = &subsets[rng.gen_range(0..subsets.len())];
        let target = Specialized::solve(d, subset).unwrap();
        let sol = target.solution().clone();
        let mut spec = TraceEngine::new(target, Strategy::Memo);
        ensure(spec.trace_framed(&w) == specialize(&tr, &sol).unwrap(), || ctx("specialization"))?;
        let cw = w.word().clone();
        let mirrored = spec.trace_classical(&cw.mirror());
        ensure(mirrored == mirror_substitution(&spec.trace_classical(&cw), sol.e()).unwrap(), || ctx("mirror"))?;
        let m = rng.gen_range(1..=3);
        let other = random::braid_word(&mut rng, m, 5);
        let sum = spec.trace_classical(&cw.connected_sum(&other));
        ensure(sum == spec.trace_classical(&cw).times(&spec.trace_classical(&other)), || ctx("connected sum"))?;
    }
    // framed connected sum on t_1^k # t_1^l, d = 3
    let d = 3;
    for subset in all_subsets(d) {
        let mut spec = TraceEngine::new(Specialized::solve(d, &subset).unwrap(), Strategy::Memo);
        let mut all_equal = true;
        for k in 0..d as i64 {
            for l in 0..d as i64 {
                let a = FramedBraidWord::new(vec![k], BraidWord::trivial(1)).unwrap();
                let b = FramedBraidWord::new(vec![l], BraidWord::trivial(1)).unwrap();
                let lhs = spec.trace_framed(&a.connected_sum(&b));
                let rhs = spec.trace_framed(&a).times(&spec.trace_framed(&b));
                all_equal &= lhs == rhs;
            }
        }
        ensure(all_equal == (subset.len() == 1), || {
            format!("framed connected sum: D={subset:?} equality={all_equal}")
        })?;
    }
    Ok("100 words; framed connected sum iff |D| = 1 for all 7 subsets of Z/3".into())
}

fn split_framed(w: &FramedBraidWord, cut: usize) -> (FramedBraidWord, FramedBraidWord) {
    let n = w.strands();
    let letters = w.word().letters();
    let left = BraidWord::new(n, letters[..cut].iter().copied()).unwrap();
    let right = BraidWord::new(n, letters[cut..].iter().copied()).unwrap();
    (FramedBraidWord::new(w.framings().to_vec(), left).unwrap(), FramedBraidWord::unframed(right))
}

fn c6_skein() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0006);
    let mut ev = Evaluator::default();
    for round in 0..20 {
        let d = rng.gen_range(1..=3u32);
        let subsets = all_subsets(d);
        let subset = &subsets[rng.gen_range(0..subsets.len())];
        let n = rng.gen_range(2..=3usize);
        let beta = random::framed_word(&mut rng, n, 6, d);
        let i = rng.gen_range(1..n);
        let r = ev.skein_residual_framed(d, subset, &beta, i).map_err(|e| e.to_string())?;
        ensure(r.is_zero(), || format!("framed round {round}: d={d} D={subset:?} {beta} i={i}: {r}"))?;
    }
    for round in 0..20 {
        let d = rng.gen_range(1..=3u32);
        let subsets = all_subsets(d);
        let subset = &subsets[rng.gen_range(0..subsets.len())];
        let n = rng.gen_range(2..=3usize);
        let k = rng.gen_range(0..=2);
        let beta = random::singular_word(&mut rng, n, 6, k);
        let i = rng.gen_range(1..n);
        let r = ev.skein_residual_singular(d, subset, &beta, i).map_err(|e| e.to_string())?;
        ensure(r.is_zero(), || format!("singular round {round}: d={d} D={subset:?} {beta} i={i}: {r}"))?;
    }
    Ok("40 residuals".into())
}

fn framed_inverse(u: &FramedBraidWord) -> FramedBraidWord {
    let neg: Vec<i64> = u.framings().iter().map(|k| -k).collect();
    FramedBraidWord::unframed(u.word().inverse()).then_framing(&neg)
}

fn c7_markov() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0007);
    let mut ev = Evaluator::default();
    let pick = |rng: &mut ChaCha8Rng| {
        let d = rng.gen_range(1..=3u32);
        let subsets = all_subsets(d);
        (d, subsets[rng.gen_range(0..subsets.len())].clone())
    };
    let mut negative_differs = 0;
    for round in 0..50 {
        let (d, subset) = pick(&mut rng);
        let n = rng.gen_range(1..=4usize);
        let w = random::braid_word(&mut rng, n, 8);
        let u = random::braid_word(&mut rng, n, 3);
        let conj = u.concat(&w).concat(&u.inverse());
        let th = ev.theta(d, &subset, &w).unwrap();
        for (what, other) in [("conj", conj.clone()), ("+stab", w.stabilize(1)), ("-stab", w.stabilize(-1))] {
            let v = ev.theta(d, &subset, &other).unwrap();
            ensure(v.same_value(&th), || format!("theta {what} round {round}: d={d} D={subset:?} {w}"))?;
        }
        let m = ev.transverse_m(d, &w).unwrap();
        for (what, other) in [("conj", conj), ("+stab", w.stabilize(1))] {
            let v = ev.transverse_m(d, &other).unwrap();
            ensure(v.same_value(&m), || format!("M {what} round {round}: d={d} {w}"))?;
        }
        if !ev.transverse_m(d, &w.stabilize(-1)).unwrap().same_value(&m) {
            negative_differs += 1;
        }
    }
    for round in 0..50 {
        let (d, subset) = pick(&mut rng);
        let n = rng.gen_range(1..=4usize);
        let w = random::framed_word(&mut rng, n, 8, d);
        let u = random::framed_word(&mut rng, n, 3, d);
        let conj = u.concat(&w).concat(&framed_inverse(&u));
        let stab =
            |s: i64| w.widened(n + 1).concat(&FramedBraidWord::unframed(BraidWord::from_pairs(n + 1, &[(n, s)])));
        let ph = ev.phi(d, &subset, &w).unwrap();
        for (what, other) in [("conj", conj), ("+stab", stab(1)), ("-stab", stab(-1))] {
            let v = ev.phi(d, &subset, &other).unwrap();
            ensure(v.same_value(&ph), || format!("phi {what} round {round}: d={d} D={subset:?} {w}"))?;
        }
    }
    for round in 0..50 {
        let (d, subset) = pick(&mut rng);
        let n = rng.gen_range(2..=4usize);
        let k = rng.gen_range(0..=2);
        let w = random::singular_word(&mut rng, n, 8, k);
        let u = SingularBraidWord::from_classical(&random::braid_word(&mut rng, n, 3));
        let u_inv = SingularBraidWord::from_classical(&u.as_classical().unwrap().inverse());
        let conj = u.concat(&w).concat(&u_inv);
        let ps = ev.psi(d, &subset, &w).unwrap();
        for (what, other) in [("conj", conj), ("+stab", w.stabilize(1)), ("-stab", w.stabilize(-1))] {
            let v = ev.psi(d, &subset, &other).unwrap();
            ensure(v.same_value(&ps), || format!("psi {what} round {round}: d={d} D={subset:?} {w}"))?;
        }
    }
    Ok(format!("150 words; M changed under negative stabilization on {negative_differs}/50 (reported)"))
}

fn c8_theta_vs_homflypt() -> Outcome {
    let mut words: Vec<(String, BraidWord)> =
        ["s1^3", "s1^5", "s1 s2^-1 s1 s2^-1", "s1^3 s2^-1 s1 s2^-1", "s1^5 s2^-1 s1 s2^-1"]
            .iter()
            .map(|t| (t.to_string(), parse_classical(t).unwrap()))
            .collect();
    let (_, x, y, _) = ng_pairs().into_iter().next().unwrap();
    words.push(("m(9_45)/a".into(), x));
    words.push(("m(9_45)/b".into(), y));
    let mut ev = Evaluator::new(Strategy::Memo);
    let mut n = 0;
    for (name, w) in &words {
        for d in 2..=3 {
            for subset in all_subsets(d) {
                let c = ev.compare_theta_homflypt(w, d, &subset).map_err(|e| e.to_string())?;
                ensure(c == Comparison::KnotMatch, || format!("{name} d={d} D={subset:?}: {c:?}"))?;
                n += 1;
            }
        }
    }
    Ok(format!("{n} comparisons"))
}

fn c9_link_counterexample() -> Outcome {
    let mut ev = Evaluator::default();
    for k in 1..=2 {
        let w = BraidWord::from_pairs(2, &[(1, 2 * k)]);
        let c = ev.compare_theta_homflypt(&w, 2, &[0, 1]).map_err(|e| e.to_string())?;
        ensure(c == Comparison::Link { components: 2, equal: false }, || format!("k={k}: {c:?}"))?;
    }
    Ok("inequality for k = 1, 2".into())
}

fn c10_transverse_pairs() -> Outcome {
    let mut ev = Evaluator::new(Strategy::Power);
    let mut report = Vec::new();
    for (name, (x, y)) in [("bm(2,2,3)", birman_menasco(2, 2, 3).unwrap()), ("kn(0,0)", khandhawit_ng(0, 0).unwrap())] {
        let start = Instant::now();
        let mx = ev.transverse_m(2, &x).unwrap();
        let my = ev.transverse_m(2, &y).unwrap();
        ensure(mx.same_value(&my), || format!("{name}: M_2 differs"))?;
        report.push(format!("{name} {:.1}s", start.elapsed().as_secs_f64()));
    }
    Ok(report.join(", "))
}

fn c11_vassiliev() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0011);
    let mut ev = Evaluator::default();
    let mut n = 0;
    for k in 1..=2usize {
        for _ in 0..4 {
            let d = rng.gen_range(1..=3u32);
            let subsets = all_subsets(d);
            let subset = &subsets[rng.gen_range(0..subsets.len())];
            let strands = rng.gen_range(2..=3);
            let w = random::singular_word(&mut rng, strands, 5, k);
            if w.singular_count() as usize != k {
                continue;
            }
            let s = ev.vassiliev_coefficients(d, subset, &w, 4).map_err(|e| e.to_string())?;
            for j in 0..k {
                ensure(s.coeff(j).is_zero(), || format!("{w} d={d} D={subset:?}: c_{j} = {}", s.coeff(j)))?;
            }
            n += 1;
        }
    }
    ensure(n >= 4, || "too few singular words sampled".into())?;
    Ok(format!("{n} singular words, order 4"))
}

fn c12_strategies() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0012);
    let words: Vec<_> = (0..50)
        .map(|_| {
            let n = rng.gen_range(2..=4);
            random::framed_word(&mut rng, n, 8, 2)
        })
        .collect();
    let mut values = Vec::new();
    let mut times = Vec::new();
    for s in [Strategy::Naive, Strategy::Power, Strategy::Memo] {
        let mut eng = TraceEngine::new(Generic::new(2), s);
        let start = Instant::now();
        let mut vals = Vec::new();
        for _ in 0..3 {
            vals = words.iter().map(|w| eng.trace_framed(w)).collect();
        }
        times.push(start.elapsed());
        values.push(vals);
    }
    ensure(values[0] == values[1] && values[1] == values[2], || "strategies disagree".into())?;
    Ok(format!(
        "50 words x 3 runs: naive {:.3}s, power {:.3}s, memo {:.3}s",
        times[0].as_secs_f64(),
        times[1].as_secs_f64(),
        times[2].as_secs_f64()
    ))
}

/// Id, name, time budget in seconds, check.
type Criterion = (u32, &'static str, Option<u64>, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        (1, "closed trace formula for even powers", Some(5), c1_closed_trace),
        (2, "power lemma against repeated products", Some(10), c2_power_lemma),
        (3, "basis dimension n!*d^n", None, c3_basis),
        (4, "E-system solutions", Some(10), c4_esystem),
        (5, "trace rules, inversion, split, mirror, connected sum", Some(120), c5_trace_properties),
        (6, "skein residuals", Some(120), c6_skein),
        (7, "Markov and transverse isotopy contracts", Some(120), c7_markov),
        (8, "Theta equals rescaled Homflypt on knots", Some(300), c8_theta_vs_homflypt),
        (9, "link counterexample s1^2k", None, c9_link_counterexample),
        (10, "M_2 on transverse pairs", Some(600), c10_transverse_pairs),
        (11, "Vassiliev vanishing orders", None, c11_vassiliev),
        (12, "strategy equivalence", None, c12_strategies),
    ];
    let mut failed = 0;
    for (id, name, budget, f) in criteria {
        let start = Instant::now();
        let out = f();
        let took = start.elapsed();
        let over = budget.is_some_and(|b| took > Duration::from_secs(b));
        let budget_text = budget.map(|b| format!(" budget {b}s")).unwrap_or_default();
        let (status, detail) = match (&out, over) {
            (Ok(d), false) => ("PASS", d.clone()),
            (Ok(d), true) => ("FAIL", format!("{d}; over time")),
            (Err(e), _) => ("FAIL", e.clone()),
        };
        if status == "FAIL" {
            failed += 1;
        }
        println!("criterion {id:>2} {status} {name} [{:.2}s{budget_text}] {detail}", took.as_secs_f64());
    }
    println!("acceptance: {} passed, {failed} failed", 12 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
