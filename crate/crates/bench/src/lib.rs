//! Fixed workloads shared by the benchmarks.

use ykh_core::catalog::{birman_menasco, khandhawit_ng};
use ykh_core::{parse_classical, parse_framed, BraidWord, FramedBraidWord};

/// Framed words of increasing length on three and four strands.
pub fn framed_words() -> Vec<(&'static str, FramedBraidWord)> {
    [
        ("short", "n=3; t1 t3^-1 ; s1^3 s2^-1"),
        ("medium", "n=3; t2 ; s1^4 s2^-3 s1 s2^2 s1^-1"),
        ("long", "n=4; t1 t4 ; s1^3 s2^-2 s3 s1^-1 s2^3 s3^-2 s1^2"),
    ]
    .into_iter()
    .map(|(name, text)| (name, parse_framed(text).expect("valid word")))
    .collect()
}

/// Knot words used for the Θ and Homflypt comparison.
pub fn knot_words() -> Vec<(&'static str, BraidWord)> {
    [("trefoil", "s1^3"), ("figure-eight", "n=3; s1 s2^-1 s1 s2^-1"), ("5_2", "n=3; s1^3 s2^-1 s1 s2^-1")]
        .into_iter()
        .map(|(name, text)| (name, parse_classical(text).expect("valid word")))
        .collect()
}

/// The smallest transverse pairs of each family.
pub fn transverse_pairs() -> Vec<(&'static str, (BraidWord, BraidWord))> {
    vec![
        ("bm(2,2,3)", birman_menasco(2, 2, 3).expect("valid parameters")),
        ("kn(0,0)", khandhawit_ng(0, 0).expect("valid parameters")),
    ]
}
