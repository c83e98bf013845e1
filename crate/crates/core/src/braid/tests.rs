use proptest::prelude::*;

use super::*;
use crate::error::Error;

fn w(n: usize, pairs: &[(usize, i64)]) -> BraidWord {
    BraidWord::from_pairs(n, pairs)
}

// Brute-force oracle: compose transpositions as explicit maps, right to left.
fn compose_by_hand(n: usize, word: &BraidWord) -> Vec<usize> {
    let mut map: Vec<usize> = (0..n).collect();
    for l in word.letters().iter().rev() {
        for _ in 0..l.exponent.unsigned_abs() {
            map = map
                .iter()
                .map(|&j| {
                    if j == l.index - 1 {
                        j + 1
                    } else if j == l.index {
                        j - 1
                    } else {
                        j
                    }
                })
                .collect();
        }
    }
    map
}

#[test]
fn parse_examples() {
    assert_eq!(parse_classical("s1^3").unwrap(), w(2, &[(1, 3)]));
    let f = parse_framed("t1^2 t2^-1 ; s1 s2^-1").unwrap();
    assert_eq!(f.framings(), &[2, -1, 0]);
    assert_eq!(f.word(), &w(3, &[(1, 1), (2, -1)]));
    let s = parse_singular("s1 tau2 s1^-1").unwrap();
    assert_eq!(s.strands(), 3);
    assert_eq!(
        s.letters(),
        &[
            SingularLetter::Braiding { index: 1, exponent: 1 },
            SingularLetter::Singular { index: 2, exponent: 1 },
            SingularLetter::Braiding { index: 1, exponent: -1 },
        ]
    );
}

#[test]
fn parse_header_and_errors() {
    assert_eq!(parse_classical("n=4; s1").unwrap().strands(), 4);
    assert_eq!(parse_classical("").unwrap(), BraidWord::trivial(1));
    assert_eq!(parse_framed("t1").unwrap().framings(), &[1]);
    assert!(matches!(parse_classical("n=2; s2"), Err(Error::IndexOutOfRange { index: 2, strands: 2 })));
    assert!(matches!(parse_classical("s0"), Err(Error::IndexOutOfRange { .. })));
    assert!(matches!(parse_classical("s1^x"), Err(Error::Syntax { position: 3, .. })));
    assert!(matches!(parse_classical("s1 q2"), Err(Error::Syntax { position: 3, .. })));
    assert!(matches!(parse_singular("tau1^-1"), Err(Error::NegativeSingularExponent { index: 1, .. })));
    assert!(matches!(parse_classical("tau1"), Err(Error::Syntax { .. })));
    assert!(matches!(parse_classical("t1 ; s1"), Err(Error::Syntax { .. })));
}

#[test]
fn canonical_merging() {
    assert_eq!(parse_classical("s1 s1^2 s2 s2^-1 s1^-3").unwrap(), BraidWord::trivial(3));
    // n=3 is inferred from s2 even though it cancels
    assert_eq!(parse_classical("s2 s2^-1").unwrap().strands(), 3);
    let s = parse_singular("tau1 tau1 s1").unwrap();
    assert_eq!(s.letters()[0], SingularLetter::Singular { index: 1, exponent: 2 });
}

#[test]
fn permutation_examples() {
    assert_eq!(w(2, &[(1, 1)]).permutation().to_string(), "(1 2)");
    assert_eq!(w(2, &[(1, 3)]).permutation().to_string(), "(1 2)");
    let fig8 = w(3, &[(1, 1), (2, -1), (1, 1), (2, -1)]);
    assert_eq!(fig8.permutation().images(), compose_by_hand(3, &fig8).as_slice());
    assert_eq!(fig8.permutation().to_string(), "(1 3 2)");
}

#[test]
fn component_examples() {
    assert_eq!(w(2, &[(1, 3)]).closure_components().count, 1);
    assert_eq!(w(2, &[(1, 2)]).closure_components().count, 2);
    assert_eq!(BraidWord::trivial(2).closure_components().count, 2);
}

#[test]
fn exponent_sums() {
    assert_eq!(w(2, &[(1, 3)]).exponent_sum(), 3);
    assert_eq!(w(3, &[(1, 1), (2, -1), (1, 1), (2, -1)]).exponent_sum(), 0);
    assert_eq!(parse_singular("s1 tau2 s1^-1").unwrap().exponent_sum(), 1);
}

#[test]
fn self_linking_examples() {
    assert_eq!(w(2, &[(1, 3)]).self_linking().total, 1);
    let m945 = parse_classical("s3^-1 s2 s1 s3 s2^-1 s3 s1 s2^2").unwrap();
    assert_eq!(m945.self_linking().total, 1);
    let k10_160 = parse_classical("s2^-1 s3 s2^-1 s1^-1 s3 s2 s3 s2 s3 s1^2").unwrap();
    assert_eq!(k10_160.self_linking().total, 1);
    // ε = 9 on 4 strands; the published table lists 6 for this knot.
    let k10_128 = parse_classical("s1 s2 s1 s2 s1 s2 s1 s3^2 s2 s3^-1").unwrap();
    assert_eq!(k10_128.exponent_sum(), 9);
    assert_eq!(k10_128.self_linking().total, 5);
}

#[test]
fn transverse_framings() {
    let t = w(2, &[(1, 3)]).to_transverse_framed();
    assert_eq!(t.framings(), &[1, 0]);
    assert_eq!(t.word(), &w(2, &[(1, 3)]));
    assert_eq!(BraidWord::trivial(1).to_transverse_framed().framings(), &[-1]);
    // Hopf link: each component is an unknotted strand with sl = −1, the
    // two crossings are inter-component.
    let hopf = w(2, &[(1, 2)]);
    assert_eq!(hopf.to_transverse_framed().framings(), &[-1, -1]);
    let comps = hopf.closure_components();
    assert_eq!(comps.inter_component_exponent, 2);
    assert_eq!(comps.linking_number(0, 1), 1);
}

#[test]
fn reverse_examples() {
    assert_eq!(w(3, &[(1, 1), (2, 1)]).reverse(), w(3, &[(2, 1), (1, 1)]));
    let palin = w(3, &[(1, 1), (2, 1), (1, 1)]);
    assert_eq!(palin.reverse(), palin);
    // ←(t1^2 t2 σ1 σ2^-1) = σ2^-1 σ1 t2 t1^2; split by hand:
    // σ2^-1 σ1 t2 = σ2^-1 t1 σ1 = t1 σ2^-1 σ1, σ2^-1 σ1 t1 = σ2^-1 t2 σ1 = t3 σ2^-1 σ1.
    let f = parse_framed("t1^2 t2 ; s1 s2^-1").unwrap();
    let r = f.reverse();
    assert_eq!(r.word(), &w(3, &[(2, -1), (1, 1)]));
    assert_eq!(r.framings(), &[1, 0, 2]);
}

#[test]
fn mirror_examples() {
    assert_eq!(w(2, &[(1, 3)]).mirror(), w(2, &[(1, -3)]));
}

#[test]
fn connected_sum_examples() {
    let tre = w(2, &[(1, 3)]);
    assert_eq!(tre.connected_sum(&tre), w(3, &[(1, 3), (2, 3)]));
    assert_eq!(tre.connected_sum(&BraidWord::trivial(1)), tre);
    let t1 = parse_framed("t1").unwrap();
    let sum = t1.connected_sum(&t1);
    assert_eq!(sum.framings(), &[2]);
    assert_eq!(sum.strands(), 1);
    // framings of the second summand pass through the first braid
    let a = parse_framed("s1").unwrap();
    let b = parse_framed("t1^3 t2 ; s1").unwrap();
    let ab = a.connected_sum(&b);
    assert_eq!(ab.framings(), &[3, 0, 1]);
}

#[test]
fn stabilize_examples() {
    assert_eq!(w(2, &[(1, 3)]).stabilize(1), w(3, &[(1, 3), (2, 1)]));
    assert_eq!(BraidWord::trivial(1).stabilize(1), w(2, &[(1, 1)]));
}

fn arb_word() -> impl Strategy<Value = BraidWord> {
    (1usize..=5, prop::collection::vec((1usize..5, -3i64..=3), 0..12)).prop_map(|(n, raw)| {
        let letters: Vec<Letter> =
            raw.into_iter().filter(|_| n > 1).map(|(i, e)| Letter::new(1 + (i - 1) % (n - 1), e)).collect();
        BraidWord::new(n, letters).unwrap()
    })
}

fn arb_framed() -> impl Strategy<Value = FramedBraidWord> {
    arb_word().prop_flat_map(|w| {
        let n = w.strands();
        prop::collection::vec(-4i64..=4, n).prop_map(move |f| FramedBraidWord::new(f, w.clone()).unwrap())
    })
}

proptest! {
    #[test]
    fn print_parse_round_trip(word in arb_word()) {
        prop_assert_eq!(parse_classical(&word.to_string()).unwrap(), word);
    }

    #[test]
    fn framed_round_trip(word in arb_framed()) {
        prop_assert_eq!(parse_framed(&word.to_string()).unwrap(), word);
    }

    #[test]
    fn reverse_inverts_permutation(word in arb_word()) {
        prop_assert_eq!(word.reverse().permutation(), word.permutation().inverse());
        let c = word.closure_components().count;
        prop_assert_eq!(word.reverse().closure_components().count, c);
        prop_assert_eq!(word.mirror().closure_components().count, c);
    }

    #[test]
    fn permutation_matches_brute_force(word in arb_word()) {
        let expect = compose_by_hand(word.strands(), &word);
        prop_assert_eq!(word.permutation().images().to_vec(), expect);
    }

    #[test]
    fn mirror_is_involution(word in arb_word()) {
        prop_assert_eq!(word.mirror().mirror(), word.clone());
        prop_assert_eq!(word.mirror().exponent_sum(), -word.exponent_sum());
    }

    #[test]
    fn connected_sum_adds(a in arb_word(), b in arb_word()) {
        let s = a.connected_sum(&b);
        prop_assert_eq!(s.exponent_sum(), a.exponent_sum() + b.exponent_sum());
        prop_assert_eq!(s.strands(), a.strands() + b.strands() - 1);
    }

    #[test]
    fn parity_law(word in arb_word()) {
        let c = word.closure_components().count as i64;
        prop_assert_eq!((word.exponent_sum() + word.strands() as i64 - c).rem_euclid(2), 0);
    }

    #[test]
    fn stabilization_keeps_self_linking(word in arb_word()) {
        let s = word.stabilize(1);
        prop_assert_eq!(s.self_linking().total, word.self_linking().total);
        let mut a = s.self_linking().per_component;
        let mut b = word.self_linking().per_component;
        a.sort();
        b.sort();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn component_bookkeeping(word in arb_word()) {
        let cs = word.closure_components();
        let own: i64 = cs.per_component_exponent.iter().sum();
        prop_assert_eq!(own, word.exponent_sum() - cs.inter_component_exponent);
        let mut lk2 = 0;
        for a in 0..cs.count {
            for b in a + 1..cs.count {
                lk2 += 2 * cs.linking_number(a, b);
            }
        }
        prop_assert_eq!(own, word.exponent_sum() - lk2);
        let sl = word.self_linking();
        prop_assert_eq!(sl.per_component.iter().sum::<i64>(), sl.total - cs.inter_component_exponent);
        if cs.count == 1 {
            prop_assert_eq!(sl.per_component[0], sl.total);
        }
    }

    #[test]
    fn framed_reverse_is_involution(word in arb_framed()) {
        prop_assert_eq!(word.reverse().reverse(), word);
    }
}
