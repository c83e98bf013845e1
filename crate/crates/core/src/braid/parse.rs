//! Text grammar for braid words.
//!
//! ```text
//! word    := [ "n=" int ";" ] [ frame+ [ ";" ] ] letter*
//! frame   := "t" int [ "^" int ]
//! letter  := "s" int [ "^" int ] | "tau" int [ "^" posint ]
//! ```
//!
//! Tokens are separated by whitespace; an omitted exponent means 1.

use super::{BraidWord, FramedBraidWord, Letter, SingularBraidWord, SingularLetter};
use crate::error::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum WordKind {
    Classical,
    Framed,
    Singular,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum AnyWord {
    Classical(BraidWord),
    Framed(FramedBraidWord),
    Singular(SingularBraidWord),
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Tok {
    Header(usize),
    Semi,
    T(usize, i64),
    S(usize, i64),
    Tau(usize, i64),
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn err(&self, at: usize, message: impl Into<String>) -> Error {
        Error::Syntax { position: at, message: message.into() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn eat(&mut self, s: &str) -> bool {
        if self.src[self.pos..].starts_with(s.as_bytes()) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    fn int(&mut self, signed: bool) -> Result<i64> {
        let start = self.pos;
        if signed && self.pos < self.src.len() && matches!(self.src[self.pos], b'-' | b'+') {
            self.pos += 1;
        }
        let digits = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == digits {
            return Err(self.err(start, "expected an integer"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| self.err(start, "integer out of range"))
    }

    fn exponent(&mut self) -> Result<i64> {
        if self.eat("^") {
            self.int(true)
        } else {
            Ok(1)
        }
    }

    fn index(&mut self) -> Result<usize> {
        let at = self.pos;
        let v = self.int(false)?;
        usize::try_from(v).map_err(|_| self.err(at, "index out of range"))
    }

    fn next(&mut self) -> Result<Option<(usize, Tok)>> {
        self.skip_ws();
        if self.pos >= self.src.len() {
            return Ok(None);
        }
        let at = self.pos;
        let tok = if self.eat(";") {
            Tok::Semi
        } else if self.eat("n=") {
            Tok::Header(self.index()?)
        } else if self.eat("tau") {
            let i = self.index()?;
            Tok::Tau(i, self.exponent()?)
        } else if self.eat("t") {
            let i = self.index()?;
            Tok::T(i, self.exponent()?)
        } else if self.eat("s") {
            let i = self.index()?;
            Tok::S(i, self.exponent()?)
        } else {
            return Err(self.err(at, format!("unexpected character {:?}", self.src[at] as char)));
        };
        if self.pos < self.src.len() && !self.src[self.pos].is_ascii_whitespace() && self.src[self.pos] != b';' {
            return Err(self.err(self.pos, "expected whitespace between tokens"));
        }
        Ok(Some((at, tok)))
    }
}

pub fn parse_word(text: &str, kind: WordKind) -> Result<AnyWord> {
    let mut lex = Lexer { src: text.as_bytes(), pos: 0 };
    let mut toks = Vec::new();
    while let Some(t) = lex.next()? {
        toks.push(t);
    }
    let mut it = toks.into_iter().peekable();

    let mut declared = None;
    if let Some(&(_, Tok::Header(n))) = it.peek() {
        it.next();
        match it.next() {
            Some((_, Tok::Semi)) => {}
            other => return Err(lex.err(other.map_or(text.len(), |t| t.0), "expected ';' after strand header")),
        }
        if n == 0 {
            return Err(lex.err(0, "strand count must be positive"));
        }
        declared = Some(n);
    }

    let mut frames = Vec::new();
    while let Some(&(at, Tok::T(j, k))) = it.peek() {
        if kind != WordKind::Framed {
            return Err(lex.err(at, "framing token in an unframed word"));
        }
        if j == 0 {
            return Err(Error::IndexOutOfRange { index: 0, strands: declared.unwrap_or(0) });
        }
        frames.push((j, k));
        it.next();
    }
    if !frames.is_empty() {
        if let Some(&(_, Tok::Semi)) = it.peek() {
            it.next();
        }
    }

    let mut letters = Vec::new();
    for (at, tok) in it {
        match tok {
            Tok::S(i, k) => letters.push(SingularLetter::Braiding { index: i, exponent: k }),
            Tok::Tau(i, k) => {
                if kind != WordKind::Singular {
                    return Err(lex.err(at, "singular generator in a non-singular word"));
                }
                if k <= 0 {
                    return Err(Error::NegativeSingularExponent { index: i, exponent: k });
                }
                letters.push(SingularLetter::Singular { index: i, exponent: k as u32 });
            }
            Tok::T(..) => return Err(lex.err(at, "framing tokens must precede the braid letters")),
            Tok::Semi => return Err(lex.err(at, "unexpected ';'")),
            Tok::Header(_) => return Err(lex.err(at, "strand header must come first")),
        }
    }

    let from_letters = letters.iter().map(|l| l.index() + 1).max().unwrap_or(1);
    let from_frames = frames.iter().map(|&(j, _)| j).max().unwrap_or(1);
    let strands = declared.unwrap_or(from_letters.max(from_frames));
    for &(j, _) in &frames {
        if j > strands {
            return Err(Error::IndexOutOfRange { index: j as i64, strands });
        }
    }

    Ok(match kind {
        WordKind::Singular => AnyWord::Singular(SingularBraidWord::new(strands, letters)?),
        WordKind::Classical | WordKind::Framed => {
            let word = BraidWord::new(strands, letters.iter().map(|l| Letter::new(l.index(), l.exponent())))?;
            if kind == WordKind::Classical {
                AnyWord::Classical(word)
            } else {
                let mut framings = vec![0i64; strands];
                for (j, k) in frames {
                    framings[j - 1] += k;
                }
                AnyWord::Framed(FramedBraidWord::new(framings, word)?)
            }
        }
    })
}

pub fn parse_classical(text: &str) -> Result<BraidWord> {
    match parse_word(text, WordKind::Classical)? {
        AnyWord::Classical(w) => Ok(w),
        _ => unreachable!(),
    }
}

pub fn parse_framed(text: &str) -> Result<FramedBraidWord> {
    match parse_word(text, WordKind::Framed)? {
        AnyWord::Framed(w) => Ok(w),
        _ => unreachable!(),
    }
}

pub fn parse_singular(text: &str) -> Result<SingularBraidWord> {
    match parse_word(text, WordKind::Singular)? {
        AnyWord::Singular(w) => Ok(w),
        _ => unreachable!(),
    }
}

impl std::fmt::Display for AnyWord {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            AnyWord::Classical(w) => w.fmt(f),
            AnyWord::Framed(w) => w.fmt(f),
            AnyWord::Singular(w) => w.fmt(f),
        }
    }
}

impl AnyWord {
    pub fn strands(&self) -> usize {
        match self {
            AnyWord::Classical(w) => w.strands(),
            AnyWord::Framed(w) => w.strands(),
            AnyWord::Singular(w) => w.strands(),
        }
    }

    pub fn exponent_sum(&self) -> i64 {
        match self {
            AnyWord::Classical(w) => w.exponent_sum(),
            AnyWord::Framed(w) => w.exponent_sum(),
            AnyWord::Singular(w) => w.exponent_sum(),
        }
    }

    pub fn component_count(&self) -> usize {
        match self {
            AnyWord::Classical(w) => w.closure_components().count,
            AnyWord::Framed(w) => w.word().closure_components().count,
            AnyWord::Singular(w) => w.closure_components().count,
        }
    }
}
