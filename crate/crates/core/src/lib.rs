//! Exact evaluation of the operation τ_{T,L} on step distance distribution
//! functions, law checking and counterexample mining, and the classifier that
//! decides whether a (T, L) pair yields a triangle function.

pub mod classifier;
pub mod ddf;
pub mod germ;
pub mod lawcheck;
pub mod numeric;
pub mod record;
pub mod sampling;
pub mod tau;
pub mod tconorms;
pub mod tnorms;
pub mod verdict;

pub use classifier::{classify, Classification, ClassifierError, Condition, TriangleVerdict};
pub use ddf::{canonicalize, parse_ddf, Ddf, DdfParseError, Jump, JumpListRaw};
pub use lawcheck::{
    check_law, mine_counterexample, Law, LawReport, LawVerdict, LawWitness, RandomDdfConfig,
};
pub use numeric::{ext_add, ext_cmp, format_ext, parse_ext, ExtRat, NumericError, UnitRat};
pub use tau::{tau, tau_d_closed_form, tau_raw_at, TauError};
pub use tconorms::{catalog_tconorm, parse_tconorm, TConormDesc, TConormKind};
pub use tnorms::{catalog_tnorm, TNormDesc, TNormKind};
pub use verdict::Verdict;
