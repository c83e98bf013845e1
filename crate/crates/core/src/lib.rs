//! Exact computation of Markov traces on Yokonuma–Hecke algebras and the
//! framed, classical, singular and transverse link invariants built on them.

pub mod algebra;
pub mod braid;
pub mod catalog;
pub mod coeff;
pub mod error;
pub mod esystem;
pub mod invariants;
pub mod trace;

pub use algebra::{enumerate_basis, gen_g, gen_t, idempotent_e, YElement, YMonomial};
pub use braid::{
    parse_classical, parse_framed, parse_singular, parse_word, AnyWord, BraidWord, FramedBraidWord, Permutation,
    SingularBraidWord, WordKind,
};
pub use catalog::{builtin_catalog, ingest, CatalogEntry};
pub use coeff::{Cyclotomic, FactoredValue, LambdaForm, MultiLaurent, Rational, TruncatedSeries, Var};
pub use error::{Error, Result};
pub use esystem::{solve, verify, ESolution, Verification};
pub use invariants::{mirror_transform, Comparison, Evaluator, InvariantValue, Kind, Params, Value, Vars};
pub use trace::{Generic, Specialized, Strategy, TraceEngine, TraceStats};

/// Stamp written into cached records; bump when serialized output changes.
pub const ENGINE_VERSION: &str = concat!("ykh-core ", env!("CARGO_PKG_VERSION"), " fmt1");
