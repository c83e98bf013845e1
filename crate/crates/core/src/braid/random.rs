//! Seeded random words for property suites.

use rand::Rng;

use super::{BraidWord, FramedBraidWord, Letter, SingularBraidWord, SingularLetter};

/// Letters drawn uniformly from σ_i^{±1}, σ_i^{±2}.
pub fn braid_word<R: Rng>(rng: &mut R, strands: usize, max_letters: usize) -> BraidWord {
    let len = rng.gen_range(0..=max_letters);
    let letters = (0..len).filter(|_| strands > 1).map(|_| {
        let i = rng.gen_range(1..strands);
        let e = [-2, -1, 1, 2][rng.gen_range(0..4)];
        Letter::new(i, e)
    });
    BraidWord::new(strands, letters.collect::<Vec<_>>()).expect("indices in range")
}

pub fn framed_word<R: Rng>(rng: &mut R, strands: usize, max_letters: usize, d: u32) -> FramedBraidWord {
    let word = braid_word(rng, strands, max_letters);
    let framings = (0..strands).map(|_| rng.gen_range(0..d.max(1) as i64 * 2) - d as i64).collect();
    FramedBraidWord::new(framings, word).expect("matching length")
}

/// A random word with exactly `singular` letters τ_i placed among braiding
/// letters.
pub fn singular_word<R: Rng>(rng: &mut R, strands: usize, max_letters: usize, singular: usize) -> SingularBraidWord {
    let base = braid_word(rng, strands, max_letters);
    let mut letters: Vec<SingularLetter> =
        base.letters().iter().map(|l| SingularLetter::Braiding { index: l.index, exponent: l.exponent }).collect();
    for _ in 0..singular {
        let pos = rng.gen_range(0..=letters.len());
        let i = rng.gen_range(1..strands.max(2));
        letters.insert(pos, SingularLetter::Singular { index: i, exponent: 1 });
    }
    SingularBraidWord::new(strands.max(2), letters).expect("indices in range")
}
