use std::fmt;

use super::Permutation;
use crate::error::{Error, Result};

/// σ_index^exponent with a 1-based generator index.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Letter {
    pub index: usize,
    pub exponent: i64,
}

impl Letter {
    pub fn new(index: usize, exponent: i64) -> Self {
        Letter { index, exponent }
    }
}

fn check_index(index: usize, strands: usize) -> Result<()> {
    if index == 0 || index >= strands {
        return Err(Error::IndexOutOfRange { index: index as i64, strands });
    }
    Ok(())
}

fn merge_letters(letters: impl IntoIterator<Item = Letter>) -> Vec<Letter> {
    let mut out: Vec<Letter> = Vec::new();
    for l in letters {
        if l.exponent == 0 {
            continue;
        }
        match out.last_mut() {
            Some(top) if top.index == l.index => {
                top.exponent += l.exponent;
                if top.exponent == 0 {
                    out.pop();
                }
            }
            _ => out.push(l),
        }
    }
    out
}

/// A classical braid word in canonical form.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<Letter>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: impl IntoIterator<Item = Letter>) -> Result<Self> {
        let strands = strands.max(1);
        let letters: Vec<Letter> = letters.into_iter().collect();
        for l in &letters {
            check_index(l.index, strands)?;
        }
        Ok(BraidWord { strands, letters: merge_letters(letters) })
    }

    /// Builds a word from `(index, exponent)` pairs; panics on bad indices.
    pub fn from_pairs(strands: usize, pairs: &[(usize, i64)]) -> Self {
        Self::new(strands, pairs.iter().map(|&(i, e)| Letter::new(i, e))).expect("valid braid word")
    }

    pub fn trivial(strands: usize) -> Self {
        BraidWord { strands: strands.max(1), letters: Vec::new() }
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// ε, the algebraic sum of the exponents.
    pub fn exponent_sum(&self) -> i64 {
        self.letters.iter().map(|l| l.exponent).sum()
    }

    /// s_{i_1} ∘ … ∘ s_{i_r} over letters with odd exponent.
    pub fn permutation(&self) -> Permutation {
        let mut p = Permutation::identity(self.strands);
        for l in &self.letters {
            if l.exponent.rem_euclid(2) == 1 {
                p.mul_adjacent(l.index - 1);
            }
        }
        p
    }

    pub fn closure_components(&self) -> ComponentStructure {
        ComponentStructure::of_letters(self.strands, self.letters.iter().copied())
    }

    /// Bennequin's sl = ε − n for the whole closure, together with the
    /// per-component values.
    pub fn self_linking(&self) -> SelfLinking {
        let comps = self.closure_components();
        let per_component =
            (0..comps.count).map(|c| comps.per_component_exponent[c] - comps.strands_of(c).len() as i64).collect();
        SelfLinking { total: self.exponent_sum() - self.strands as i64, per_component }
    }

    /// The framed braid `t^r α` with each component's self-linking placed on
    /// its lowest strand.
    pub fn to_transverse_framed(&self) -> FramedBraidWord {
        let comps = self.closure_components();
        let sl = self.self_linking();
        let mut framings = vec![0i64; self.strands];
        for c in 0..comps.count {
            framings[comps.strands_of(c)[0]] = sl.per_component[c];
        }
        FramedBraidWord { framings, word: self.clone() }
    }

    pub fn reverse(&self) -> BraidWord {
        BraidWord { strands: self.strands, letters: merge_letters(self.letters.iter().rev().copied()) }
    }

    pub fn mirror(&self) -> BraidWord {
        BraidWord {
            strands: self.strands,
            letters: self.letters.iter().map(|l| Letter::new(l.index, -l.exponent)).collect(),
        }
    }

    /// `w · σ_n^{sign}` on `n + 1` strands.
    pub fn stabilize(&self, sign: i64) -> BraidWord {
        assert!(sign == 1 || sign == -1, "stabilization sign must be ±1");
        let mut letters = self.letters.clone();
        letters.push(Letter::new(self.strands, sign));
        BraidWord { strands: self.strands + 1, letters: merge_letters(letters) }
    }

    pub fn inverse(&self) -> BraidWord {
        BraidWord {
            strands: self.strands,
            letters: self.letters.iter().rev().map(|l| Letter::new(l.index, -l.exponent)).collect(),
        }
    }

    /// Concatenation; the result lives on the larger strand count.
    pub fn concat(&self, other: &BraidWord) -> BraidWord {
        let strands = self.strands.max(other.strands);
        BraidWord { strands, letters: merge_letters(self.letters.iter().chain(&other.letters).copied()) }
    }

    /// Shifts every index by `offset` and widens to `strands`.
    pub fn shifted(&self, offset: usize, strands: usize) -> BraidWord {
        assert!(strands >= self.strands + offset);
        BraidWord { strands, letters: self.letters.iter().map(|l| Letter::new(l.index + offset, l.exponent)).collect() }
    }

    pub fn widened(&self, strands: usize) -> BraidWord {
        self.shifted(0, strands)
    }

    /// `a^{[0]} b^{[n−1]}` on `n + m − 1` strands.
    pub fn connected_sum(&self, other: &BraidWord) -> BraidWord {
        let strands = self.strands + other.strands - 1;
        self.widened(strands).concat(&other.shifted(self.strands - 1, strands))
    }

    /// Split union: `other` placed to the right of `self` without interaction.
    pub fn disjoint_union(&self, other: &BraidWord) -> BraidWord {
        let strands = self.strands + other.strands;
        self.widened(strands).concat(&other.shifted(self.strands, strands))
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={};", self.strands)?;
        for l in &self.letters {
            write!(f, " {}", render_token("s", l.index, l.exponent))?;
        }
        Ok(())
    }
}

fn render_token(name: &str, index: usize, exponent: i64) -> String {
    if exponent == 1 {
        format!("{name}{index}")
    } else {
        format!("{name}{index}^{exponent}")
    }
}

/// Per-closure self-linking: `total = ε − n`, `per_component[c]` as
/// described on [`ComponentStructure`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SelfLinking {
    pub total: i64,
    pub per_component: Vec<i64>,
}

/// A framed braid `t_1^{k_1}…t_n^{k_n} σ` in split form.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FramedBraidWord {
    framings: Vec<i64>,
    word: BraidWord,
}

impl FramedBraidWord {
    pub fn new(framings: Vec<i64>, word: BraidWord) -> Result<Self> {
        if framings.len() != word.strands() {
            return Err(Error::FramingLength { expected: word.strands(), got: framings.len() });
        }
        Ok(FramedBraidWord { framings, word })
    }

    pub fn unframed(word: BraidWord) -> Self {
        FramedBraidWord { framings: vec![0; word.strands()], word }
    }

    pub fn framings(&self) -> &[i64] {
        &self.framings
    }

    pub fn word(&self) -> &BraidWord {
        &self.word
    }

    pub fn strands(&self) -> usize {
        self.word.strands()
    }

    pub fn exponent_sum(&self) -> i64 {
        self.word.exponent_sum()
    }

    /// Framings reduced into `0..d`.
    pub fn framings_mod(&self, d: u32) -> Vec<u32> {
        self.framings.iter().map(|k| k.rem_euclid(d as i64) as u32).collect()
    }

    /// Reads the word right to left, `σ_rev · t^K`, then moves the framings
    /// back to the left with `σ t_j = t_{w(j)} σ`.
    pub fn reverse(&self) -> FramedBraidWord {
        let rev = self.word.reverse();
        let p = rev.permutation();
        let mut framings = vec![0; self.strands()];
        for (j, &k) in self.framings.iter().enumerate() {
            framings[p.apply(j)] += k;
        }
        FramedBraidWord { framings, word: rev }
    }

    /// `α^{[0]} β^{[n−1]}`, re-split: framings of `β` pass through `α`'s braid.
    pub fn connected_sum(&self, other: &FramedBraidWord) -> FramedBraidWord {
        let n = self.strands();
        let word = self.word.connected_sum(&other.word);
        let mut framings = vec![0i64; word.strands()];
        framings[..n].copy_from_slice(&self.framings);
        let pa = self.word.permutation();
        for (j, &k) in other.framings.iter().enumerate() {
            let p = j + n - 1;
            let dest = if p < n { pa.apply(p) } else { p };
            framings[dest] += k;
        }
        FramedBraidWord { framings, word }
    }

    /// Right multiplication by `t^{framings}`, re-split.
    pub fn then_framing(&self, framings: &[i64]) -> FramedBraidWord {
        let p = self.word.permutation();
        let mut out = self.framings.clone();
        for (j, &k) in framings.iter().enumerate() {
            out[p.apply(j)] += k;
        }
        FramedBraidWord { framings: out, word: self.word.clone() }
    }

    /// Concatenation `self · other`, re-split.
    pub fn concat(&self, other: &FramedBraidWord) -> FramedBraidWord {
        let strands = self.strands().max(other.strands());
        let mut left = self.framings.clone();
        left.resize(strands, 0);
        let a = FramedBraidWord { framings: left, word: self.word.widened(strands) };
        let mut right = other.framings.clone();
        right.resize(strands, 0);
        let moved = a.then_framing(&right);
        FramedBraidWord { framings: moved.framings, word: a.word.concat(&other.word) }
    }

    pub fn widened(&self, strands: usize) -> FramedBraidWord {
        let mut framings = self.framings.clone();
        framings.resize(strands, 0);
        FramedBraidWord { framings, word: self.word.widened(strands) }
    }

    pub fn disjoint_union(&self, other: &FramedBraidWord) -> FramedBraidWord {
        let word = self.word.disjoint_union(&other.word);
        let framings = self.framings.iter().chain(&other.framings).copied().collect();
        FramedBraidWord { framings, word }
    }
}

impl fmt::Display for FramedBraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={};", self.strands())?;
        let mut any = false;
        for (j, &k) in self.framings.iter().enumerate() {
            if k != 0 {
                write!(f, " {}", render_token("t", j + 1, k))?;
                any = true;
            }
        }
        if any {
            write!(f, " ;")?;
        }
        for l in self.word.letters() {
            write!(f, " {}", render_token("s", l.index, l.exponent))?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum SingularLetter {
    Braiding { index: usize, exponent: i64 },
    Singular { index: usize, exponent: u32 },
}

impl SingularLetter {
    pub fn index(&self) -> usize {
        match *self {
            SingularLetter::Braiding { index, .. } | SingularLetter::Singular { index, .. } => index,
        }
    }

    pub fn exponent(&self) -> i64 {
        match *self {
            SingularLetter::Braiding { exponent, .. } => exponent,
            SingularLetter::Singular { exponent, .. } => exponent as i64,
        }
    }

    pub fn is_singular(&self) -> bool {
        matches!(self, SingularLetter::Singular { .. })
    }
}

/// A word in σ_i^{±1} and the non-invertible τ_i.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SingularBraidWord {
    strands: usize,
    letters: Vec<SingularLetter>,
}

impl SingularBraidWord {
    pub fn new(strands: usize, letters: impl IntoIterator<Item = SingularLetter>) -> Result<Self> {
        let strands = strands.max(1);
        let mut out: Vec<SingularLetter> = Vec::new();
        for l in letters {
            check_index(l.index(), strands)?;
            if let SingularLetter::Singular { index, exponent } = l {
                if exponent == 0 {
                    return Err(Error::NegativeSingularExponent { index, exponent: 0 });
                }
            }
            if l.exponent() == 0 {
                continue;
            }
            match (out.last_mut(), l) {
                (
                    Some(SingularLetter::Braiding { index: i, exponent: e }),
                    SingularLetter::Braiding { index, exponent },
                ) if *i == index => {
                    *e += exponent;
                    if *e == 0 {
                        out.pop();
                    }
                }
                (
                    Some(SingularLetter::Singular { index: i, exponent: e }),
                    SingularLetter::Singular { index, exponent },
                ) if *i == index => *e += exponent,
                _ => out.push(l),
            }
        }
        Ok(SingularBraidWord { strands, letters: out })
    }

    pub fn from_classical(w: &BraidWord) -> Self {
        SingularBraidWord {
            strands: w.strands(),
            letters: w
                .letters()
                .iter()
                .map(|l| SingularLetter::Braiding { index: l.index, exponent: l.exponent })
                .collect(),
        }
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[SingularLetter] {
        &self.letters
    }

    /// Sum of the exponents of both σ_i and τ_i.
    pub fn exponent_sum(&self) -> i64 {
        self.letters.iter().map(SingularLetter::exponent).sum()
    }

    pub fn singular_count(&self) -> u32 {
        self.letters
            .iter()
            .map(|l| match l {
                SingularLetter::Singular { exponent, .. } => *exponent,
                _ => 0,
            })
            .sum()
    }

    /// The classical word when no singular letter is present.
    pub fn as_classical(&self) -> Option<BraidWord> {
        let letters: Option<Vec<Letter>> = self
            .letters
            .iter()
            .map(|l| match *l {
                SingularLetter::Braiding { index, exponent } => Some(Letter::new(index, exponent)),
                SingularLetter::Singular { .. } => None,
            })
            .collect();
        Some(BraidWord { strands: self.strands, letters: letters? })
    }

    /// Permutation with τ_i acting as the transposition s_i.
    pub fn permutation(&self) -> Permutation {
        let mut p = Permutation::identity(self.strands);
        for l in &self.letters {
            if l.exponent().rem_euclid(2) == 1 {
                p.mul_adjacent(l.index() - 1);
            }
        }
        p
    }

    pub fn closure_components(&self) -> ComponentStructure {
        ComponentStructure::of_letters(self.strands, self.letters.iter().map(|l| Letter::new(l.index(), l.exponent())))
    }

    pub fn reverse(&self) -> SingularBraidWord {
        SingularBraidWord::new(self.strands, self.letters.iter().rev().copied()).expect("same indices")
    }

    pub fn concat(&self, other: &SingularBraidWord) -> SingularBraidWord {
        let strands = self.strands.max(other.strands);
        SingularBraidWord::new(strands, self.letters.iter().chain(&other.letters).copied()).expect("same indices")
    }

    pub fn widened(&self, strands: usize) -> SingularBraidWord {
        assert!(strands >= self.strands);
        SingularBraidWord { strands, letters: self.letters.clone() }
    }

    pub fn stabilize(&self, sign: i64) -> SingularBraidWord {
        let mut letters = self.letters.clone();
        letters.push(SingularLetter::Braiding { index: self.strands, exponent: sign });
        SingularBraidWord::new(self.strands + 1, letters).expect("valid stabilization")
    }
}

impl fmt::Display for SingularBraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={};", self.strands)?;
        for l in &self.letters {
            let tok = match *l {
                SingularLetter::Braiding { index, exponent } => render_token("s", index, exponent),
                SingularLetter::Singular { index, exponent } => render_token("tau", index, exponent as i64),
            };
            write!(f, " {tok}")?;
        }
        Ok(())
    }
}

/// Closure components of a braid.
///
/// `per_component_exponent[c]` sums the exponents of letters whose two
/// strands both belong to component `c`; letters joining two different
/// components are tallied in `inter_component_exponent`, so that
/// `Σ_c per_component_exponent[c] = ε − inter_component_exponent`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ComponentStructure {
    pub count: usize,
    /// Component id of every strand position (0-based), ids ordered by
    /// lowest strand.
    pub strand_to_component: Vec<usize>,
    pub per_component_exponent: Vec<i64>,
    pub inter_component_exponent: i64,
    /// Signed crossing count between each pair `(c, c')`, `c < c'`.
    pub pair_crossings: Vec<((usize, usize), i64)>,
}

impl ComponentStructure {
    fn of_letters(strands: usize, letters: impl Iterator<Item = Letter> + Clone) -> Self {
        let mut perm = Permutation::identity(strands);
        for l in letters.clone() {
            if l.exponent.rem_euclid(2) == 1 {
                perm.mul_adjacent(l.index - 1);
            }
        }
        let cycles = perm.cycles();
        let mut strand_to_component = vec![0; strands];
        for (c, cyc) in cycles.iter().enumerate() {
            for &j in cyc {
                strand_to_component[j] = c;
            }
        }
        let count = cycles.len();
        let mut per = vec![0i64; count];
        let mut inter = 0i64;
        let mut pairs = std::collections::BTreeMap::new();
        // at[p]: start position of the strand currently at position p
        let mut at: Vec<usize> = (0..strands).collect();
        for l in letters {
            let (a, b) = (at[l.index - 1], at[l.index]);
            let (ca, cb) = (strand_to_component[a], strand_to_component[b]);
            if ca == cb {
                per[ca] += l.exponent;
            } else {
                inter += l.exponent;
                *pairs.entry((ca.min(cb), ca.max(cb))).or_insert(0i64) += l.exponent;
            }
            if l.exponent.rem_euclid(2) == 1 {
                at.swap(l.index - 1, l.index);
            }
        }
        ComponentStructure {
            count,
            strand_to_component,
            per_component_exponent: per,
            inter_component_exponent: inter,
            pair_crossings: pairs.into_iter().collect(),
        }
    }

    /// Strand positions of component `c`, ascending.
    pub fn strands_of(&self, c: usize) -> Vec<usize> {
        (0..self.strand_to_component.len()).filter(|&j| self.strand_to_component[j] == c).collect()
    }

    /// Linking number of components `c` and `c'`: half their signed
    /// crossing count.
    pub fn linking_number(&self, c: usize, c2: usize) -> i64 {
        let key = (c.min(c2), c.max(c2));
        let total = self.pair_crossings.iter().find(|(k, _)| *k == key).map_or(0, |&(_, v)| v);
        debug_assert!(total % 2 == 0);
        total / 2
    }
}
