//! Built-in braid words and the `name<TAB>word` list format.

use std::collections::HashSet;
use std::path::Path;

use crate::braid::{parse_word, AnyWord, BraidWord, WordKind};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Source {
    /// A built-in group such as `transverse` or `families`.
    Builtin(&'static str),
    External(String),
}

/// Knot/link column of the families table.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Topology {
    Knot,
    Link,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub word: AnyWord,
    pub source: Source,
    pub expected_components: Option<usize>,
    pub topology: Option<Topology>,
    /// Self-linking number as printed alongside the presentation.
    pub reported_sl: Option<i64>,
}

impl CatalogEntry {
    fn builtin(name: String, word: BraidWord, group: &'static str) -> Self {
        CatalogEntry {
            name,
            word: AnyWord::Classical(word),
            source: Source::Builtin(group),
            expected_components: None,
            topology: None,
            reported_sl: None,
        }
    }

    pub fn classical(&self) -> Option<&BraidWord> {
        match &self.word {
            AnyWord::Classical(w) => Some(w),
            _ => None,
        }
    }

    /// Checks the stated component count and topology against the word.
    pub fn check(&self) -> Result<()> {
        let c = self.word.component_count();
        if let Some(e) = self.expected_components {
            if e != c {
                return Err(Error::PropertyViolation(format!("{}: {c} components, expected {e}", self.name)));
            }
        }
        match self.topology {
            Some(Topology::Knot) if c != 1 => {
                Err(Error::PropertyViolation(format!("{}: listed as a knot, has {c} components", self.name)))
            }
            Some(Topology::Link) if c < 2 => {
                Err(Error::PropertyViolation(format!("{}: listed as a link, is a knot", self.name)))
            }
            _ => Ok(()),
        }
    }
}

fn word(strands: usize, pairs: &[(usize, i64)]) -> BraidWord {
    BraidWord::from_pairs(strands, pairs)
}

/// `σ_1^{2a+1}σ_2^{2b}σ_1^{2c}σ_2^{−1}` and `σ_1^{2a+1}σ_2^{−1}σ_1^{2c}σ_2^{2b}`,
/// for `a, b, c > 1` and `a + 1 ≠ b ≠ c`.
pub fn birman_menasco(a: i64, b: i64, c: i64) -> Result<(BraidWord, BraidWord)> {
    if a <= 1 || b <= 1 || c <= 1 || a + 1 == b || b == c {
        return Err(Error::InvalidParameter(format!(
            "Birman-Menasco needs a,b,c > 1 and a+1 != b != c, got ({a},{b},{c})"
        )));
    }
    Ok((
        word(3, &[(1, 2 * a + 1), (2, 2 * b), (1, 2 * c), (2, -1)]),
        word(3, &[(1, 2 * a + 1), (2, -1), (1, 2 * c), (2, 2 * b)]),
    ))
}

/// The Khandhawit–Ng pair for `a, b ≥ 0`, as printed. These words close to
/// three-component links: their odd letters multiply to the transposition
/// of strands 2 and 4.
pub fn khandhawit_ng(a: i64, b: i64) -> Result<(BraidWord, BraidWord)> {
    if a < 0 || b < 0 {
        return Err(Error::InvalidParameter(format!("Khandhawit-Ng needs a,b >= 0, got ({a},{b})")));
    }
    let head = [(3, 1), (2, -2), (3, 2 * a + 2), (2, 1), (3, -1)];
    let mut x = head.to_vec();
    x.extend([(1, -1), (2, 2), (1, 2 * b + 1)]);
    let mut y = head.to_vec();
    y.extend([(1, 2 * b + 1), (2, 2), (1, -1)]);
    Ok((word(4, &x), word(4, &y)))
}

/// Ng's presentations of `m(9_45)`, `10_128` and `10_160` with their
/// reported self-linking numbers.
pub fn ng_pairs() -> Vec<(&'static str, BraidWord, BraidWord, i64)> {
    vec![
        (
            "m(9_45)",
            word(4, &[(3, -1), (2, 1), (1, 1), (3, 1), (2, -1), (3, 1), (1, 1), (2, 2)]),
            word(4, &[(2, 2), (1, 1), (3, 1), (2, -1), (3, 1), (1, 1), (2, 1), (3, -1)]),
            1,
        ),
        (
            "10_128",
            word(4, &[(1, 1), (2, 1), (1, 1), (2, 1), (1, 1), (2, 1), (1, 1), (3, 2), (2, 1), (3, -1)]),
            word(4, &[(3, -1), (2, 1), (3, 2), (1, 1), (2, 1), (1, 1), (2, 1), (1, 1), (2, 1), (1, 1)]),
            6,
        ),
        (
            "10_160",
            word(4, &[(2, -1), (3, 1), (2, -1), (1, -1), (3, 1), (2, 1), (3, 1), (2, 1), (3, 1), (1, 2)]),
            word(4, &[(1, 2), (3, 1), (2, 1), (3, 1), (2, 1), (3, 1), (1, -1), (2, -1), (3, 1), (2, -1)]),
            1,
        ),
    ]
}

/// The rows of the families table.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Family {
    /// `σ_1^p`
    Torus,
    /// `σ_1^p σ_2^{−1} σ_1^{−1} σ_2^{−1}`
    TwistNeg,
    /// `σ_1^p σ_2^{−1} σ_1 σ_2^{−1}`
    TwistAlt,
    /// `(σ_1 σ_2^{−1})^{3p}`
    AltPower,
    /// `(σ_1³ σ_2^{−1})(σ_1 σ_2^{−1})^{3p−1}`
    AltCubed,
    /// `σ_1^{2p} σ_2 σ_1^{−1} σ_2`
    EvenNeg,
    /// `σ_1^{2p} σ_2 σ_1² σ_2`
    EvenSquare,
    /// `(σ_1³ σ_2^{−1})² σ_1 σ_2^{−1}`, a single link
    Single,
}

impl Family {
    pub const ALL: [Family; 8] = [
        Family::Torus,
        Family::TwistNeg,
        Family::TwistAlt,
        Family::AltPower,
        Family::AltCubed,
        Family::EvenNeg,
        Family::EvenSquare,
        Family::Single,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Family::Torus => "s1^p",
            Family::TwistNeg => "s1^p s2^-1 s1^-1 s2^-1",
            Family::TwistAlt => "s1^p s2^-1 s1 s2^-1",
            Family::AltPower => "(s1 s2^-1)^3p",
            Family::AltCubed => "(s1^3 s2^-1)(s1 s2^-1)^(3p-1)",
            Family::EvenNeg => "s1^2p s2 s1^-1 s2",
            Family::EvenSquare => "s1^2p s2 s1^2 s2",
            Family::Single => "(s1^3 s2^-1)^2 s1 s2^-1",
        }
    }

    pub fn word(self, p: i64) -> Result<BraidWord> {
        let alt = |k: i64| (0..k).flat_map(|_| [(1, 1), (2, -1)]).collect::<Vec<_>>();
        let pairs: Vec<(usize, i64)> = match self {
            Family::Torus => vec![(1, p)],
            Family::TwistNeg => vec![(1, p), (2, -1), (1, -1), (2, -1)],
            Family::TwistAlt => vec![(1, p), (2, -1), (1, 1), (2, -1)],
            Family::AltPower => {
                if p < 1 {
                    return Err(Error::InvalidParameter(format!("p must be positive, got {p}")));
                }
                alt(3 * p)
            }
            Family::AltCubed => {
                if p < 1 {
                    return Err(Error::InvalidParameter(format!("p must be positive, got {p}")));
                }
                let mut v = vec![(1, 3), (2, -1)];
                v.extend(alt(3 * p - 1));
                v
            }
            Family::EvenNeg => vec![(1, 2 * p), (2, 1), (1, -1), (2, 1)],
            Family::EvenSquare => vec![(1, 2 * p), (2, 1), (1, 2), (2, 1)],
            Family::Single => vec![(1, 3), (2, -1), (1, 3), (2, -1), (1, 1), (2, -1)],
        };
        let strands = if self == Family::Torus { 2 } else { 3 };
        Ok(word(strands, &pairs))
    }

    /// Knot or link as listed for parameter `p`.
    pub fn topology(self, p: i64) -> Topology {
        match self {
            Family::Torus | Family::TwistNeg | Family::TwistAlt if p.rem_euclid(2) == 1 => Topology::Knot,
            _ => Topology::Link,
        }
    }
}

/// Every built-in entry: the transverse pairs at small parameters, Ng's
/// presentations and the families for `p = 1..=4`.
pub fn builtin_catalog() -> Vec<CatalogEntry> {
    let mut out = Vec::new();
    let push_pair = |out: &mut Vec<CatalogEntry>, name: String, (x, y): (BraidWord, BraidWord), sl: Option<i64>| {
        for (tag, w) in [("a", x), ("b", y)] {
            let c = w.closure_components().count;
            let mut e = CatalogEntry::builtin(format!("{name}/{tag}"), w, "transverse");
            e.expected_components = Some(c);
            e.reported_sl = sl;
            out.push(e);
        }
    };
    for (a, b, c) in [(2, 2, 3), (2, 4, 3), (3, 2, 3)] {
        let pair = birman_menasco(a, b, c).expect("valid parameters");
        push_pair(&mut out, format!("bm({a},{b},{c})"), pair, None);
    }
    for (a, b) in [(0, 0), (1, 0), (0, 1)] {
        push_pair(&mut out, format!("kn({a},{b})"), khandhawit_ng(a, b).expect("valid parameters"), None);
    }
    for (name, x, y, sl) in ng_pairs() {
        push_pair(&mut out, format!("ng/{name}"), (x, y), Some(sl));
    }
    for f in Family::ALL {
        let range = if f == Family::Single { 1..=1 } else { 1..=4 };
        for p in range {
            let mut e = CatalogEntry::builtin(format!("family[{}]/p={p}", f.label()), f.word(p).unwrap(), "families");
            e.topology = Some(f.topology(p));
            out.push(e);
        }
    }
    out
}

/// Looks up an entry by its exact name.
pub fn find<'a>(entries: &'a [CatalogEntry], name: &str) -> Option<&'a CatalogEntry> {
    entries.iter().find(|e| e.name == name)
}

/// Parses a word, choosing the kind from its tokens: `tau` makes it
/// singular, a framing token `t<j>` makes it framed.
pub fn parse_any(text: &str) -> Result<AnyWord> {
    let kind = if text.contains("tau") {
        WordKind::Singular
    } else if text.split(|c: char| c.is_whitespace() || c == ';').any(|t| t.starts_with('t')) {
        WordKind::Framed
    } else {
        WordKind::Classical
    };
    parse_word(text, kind)
}

/// Parses the list format: one `name<TAB>word` per line, `#` comments and
/// blank lines ignored, duplicate names rejected.
pub fn parse_list(text: &str, origin: &str) -> Result<Vec<CatalogEntry>> {
    let mut out = Vec::new();
    let mut seen = HashSet::new();
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let content = raw.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        let (name, text) =
            content.split_once('\t').ok_or_else(|| Error::Ingest { line, message: "expected name<TAB>word".into() })?;
        let name = name.trim();
        if name.is_empty() {
            return Err(Error::Ingest { line, message: "empty name".into() });
        }
        if !seen.insert(name.to_string()) {
            return Err(Error::Ingest { line, message: format!("duplicate name {name:?}") });
        }
        let word = parse_any(text.trim()).map_err(|e| Error::Ingest { line, message: e.to_string() })?;
        out.push(CatalogEntry {
            name: name.to_string(),
            word,
            source: Source::External(origin.to_string()),
            expected_components: None,
            topology: None,
            reported_sl: None,
        });
    }
    Ok(out)
}

pub fn ingest(path: &Path) -> Result<Vec<CatalogEntry>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Ingest { line: 0, message: format!("{}: {e}", path.display()) })?;
    parse_list(&text, &path.display().to_string())
}
