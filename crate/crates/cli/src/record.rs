//! Evaluation jobs and their serialized records.

use std::fmt;

use anyhow::{anyhow, bail, Result};
use serde::{Deserialize, Serialize};
use ykh_core::{AnyWord, BraidWord, Evaluator, FramedBraidWord, Kind, SingularBraidWord, Vars};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Quantity {
    Trace,
    Invariant(Kind),
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Quantity::Trace => f.write_str("trace"),
            Quantity::Invariant(k) => f.write_str(k.name()),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Job {
    pub name: String,
    pub word: AnyWord,
    pub quantity: Quantity,
    pub d: u32,
    /// `None` selects the generic target.
    pub subset: Option<Vec<u32>>,
    pub vars: Vars,
}

/// Everything in a record except the user-facing name; this is what the cache stores.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Body {
    pub kind: String,
    pub d: u32,
    #[serde(rename = "D")]
    pub subset: Option<Vec<u32>>,
    pub components: usize,
    pub epsilon: i64,
    pub strands: usize,
    pub value: String,
    pub parity: Option<u8>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Record {
    pub name: String,
    #[serde(flatten)]
    pub body: Body,
}

pub fn subset_label(subset: Option<&[u32]>) -> String {
    match subset {
        Some(s) => format!("{{{}}}", s.iter().map(u32::to_string).collect::<Vec<_>>().join(",")),
        None => "-".into(),
    }
}

impl Record {
    pub fn text(&self) -> String {
        let b = &self.body;
        let parity = b.parity.map_or("-".to_string(), |p| p.to_string());
        format!(
            "{}\t{} d={} D={} components={} epsilon={} strands={} parity={}\n  {}",
            self.name,
            b.kind,
            b.d,
            subset_label(b.subset.as_deref()),
            b.components,
            b.epsilon,
            b.strands,
            parity,
            b.value
        )
    }
}

impl Job {
    pub fn cache_key(&self) -> String {
        let vars = match self.vars {
            Vars::QZ => "qz",
            Vars::QLambda => "qlambda",
        };
        format!("{}|{}|d={}|D={}|vars={}", self.word, self.quantity, self.d, subset_label(self.subset.as_deref()), vars)
    }
}

fn classical(word: &AnyWord, kind: &str) -> Result<BraidWord> {
    match word {
        AnyWord::Classical(w) => Ok(w.clone()),
        AnyWord::Framed(f) if f.framings().iter().all(|&k| k == 0) => Ok(f.word().clone()),
        AnyWord::Singular(s) => s.as_classical().ok_or_else(|| anyhow!("{kind} needs a word without double points")),
        AnyWord::Framed(_) => bail!("{kind} needs an unframed word"),
    }
}

fn framed(word: &AnyWord) -> Result<FramedBraidWord> {
    match word {
        AnyWord::Framed(f) => Ok(f.clone()),
        other => Ok(FramedBraidWord::unframed(classical(other, "phi")?)),
    }
}

fn singular(word: &AnyWord) -> Result<SingularBraidWord> {
    match word {
        AnyWord::Singular(s) => Ok(s.clone()),
        other => Ok(SingularBraidWord::from_classical(&classical(other, "psi")?)),
    }
}

pub fn evaluate(ev: &mut Evaluator, job: &Job) -> Result<Body> {
    let w = &job.word;
    match job.quantity {
        Quantity::Trace => {
            let value = match (&job.subset, w) {
                (None, AnyWord::Singular(s)) => ev.generic_engine(job.d)?.trace_singular(s).to_string(),
                (None, _) => ev.generic_engine(job.d)?.trace_framed(&framed(w)?).to_string(),
                (Some(sub), AnyWord::Singular(s)) => ev.specialized_engine(job.d, sub)?.trace_singular(s).to_string(),
                (Some(sub), _) => ev.specialized_engine(job.d, sub)?.trace_framed(&framed(w)?).to_string(),
            };
            Ok(Body {
                kind: "trace".into(),
                d: job.d,
                subset: job.subset.clone(),
                components: w.component_count(),
                epsilon: w.exponent_sum(),
                strands: w.strands(),
                value,
                parity: None,
            })
        }
        Quantity::Invariant(kind) => {
            let sub = job.subset.as_deref().unwrap_or(&[0]);
            let iv = match kind {
                Kind::Phi => ev.phi(job.d, sub, &framed(w)?)?,
                Kind::Theta => ev.theta(job.d, sub, &classical(w, "theta")?)?,
                Kind::Homflypt => ev.homflypt(&classical(w, "homflypt")?)?,
                Kind::Psi => ev.psi(job.d, sub, &singular(w)?)?,
                Kind::Transverse => ev.transverse_m(job.d, &classical(w, "m")?)?,
            };
            Ok(Body {
                kind: iv.kind.name().into(),
                d: iv.params.d(),
                subset: iv.params.subset().map(<[u32]>::to_vec),
                components: iv.components,
                epsilon: iv.epsilon,
                strands: iv.strands,
                value: iv.render(job.vars)?,
                parity: iv.parity(),
            })
        }
    }
}
