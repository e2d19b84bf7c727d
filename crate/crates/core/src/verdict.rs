use std::fmt;

/// Outcome of a randomized property check.
///
/// `Pass` only means no counterexample turned up in `cases` probes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict<W> {
    Pass { cases: u64 },
    Fail(W),
}

impl<W> Verdict<W> {
    pub fn passed(&self) -> bool {
        matches!(self, Verdict::Pass { .. })
    }

    pub fn witness(&self) -> Option<&W> {
        match self {
            Verdict::Pass { .. } => None,
            Verdict::Fail(w) => Some(w),
        }
    }
}

impl<W: fmt::Display> fmt::Display for Verdict<W> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Pass { cases } => write!(f, "pass ({cases} cases)"),
            Verdict::Fail(w) => write!(f, "fail: {w}"),
        }
    }
}
