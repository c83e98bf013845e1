//! Braid words: classical, framed and singular, with their parsing and
//! the combinatorial operations the invariants consume.

mod parse;
mod perm;
pub mod random;
mod word;

pub use parse::{parse_classical, parse_framed, parse_singular, parse_word, AnyWord, WordKind};
pub use perm::Permutation;
pub use word::{
    BraidWord, ComponentStructure, FramedBraidWord, Letter, SelfLinking, SingularBraidWord, SingularLetter,
};

#[cfg(test)]
mod tests;
