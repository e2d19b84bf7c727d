//! Decides whether `τ_{T,L}` is a triangle function.
//!
//! Conditions: (a) `L` is a continuous t-conorm with (LCS), (b) `T` is a
//! t-norm, (c) `T` is weakly left-continuous, and left-continuous whenever `L`
//! is not Archimedean. Each condition holds when the descriptor declares it
//! and the attached checker verdict agrees.

use std::fmt;

use thiserror::Error;

use crate::record::Record;
use crate::tconorms::TConormDesc;
use crate::tnorms::TNormDesc;
use crate::verdict::Verdict;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Condition {
    AContinuity,
    ATConorm,
    ALcs,
    BTNorm,
    CWeakLeft,
    CLeftWhenNonArchimedean,
}

impl Condition {
    pub const ALL: [Condition; 6] = [
        Condition::AContinuity,
        Condition::ATConorm,
        Condition::ALcs,
        Condition::BTNorm,
        Condition::CWeakLeft,
        Condition::CLeftWhenNonArchimedean,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Condition::AContinuity => "a_continuity",
            Condition::ATConorm => "a_tconorm",
            Condition::ALcs => "a_LCS",
            Condition::BTNorm => "b_tnorm",
            Condition::CWeakLeft => "c_weak_left",
            Condition::CLeftWhenNonArchimedean => "c_left_when_nonarchimedean",
        }
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TriangleVerdict {
    Triangle,
    NotTriangle,
}

impl fmt::Display for TriangleVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TriangleVerdict::Triangle => "Triangle",
            TriangleVerdict::NotTriangle => "NotTriangle",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionResult {
    pub condition: Condition,
    pub satisfied: bool,
    /// Only `c_left_when_nonarchimedean` can hold vacuously.
    pub vacuous: bool,
    pub declared: bool,
    /// Checker verdict, rendered.
    pub checker: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub tnorm: String,
    pub tconorm: String,
    pub verdict: TriangleVerdict,
    /// The failed conditions, or all six for a triangle function.
    pub governing: Vec<Condition>,
    pub evidence: Vec<ConditionResult>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifierError {
    #[error("`{0}` carries no verified metadata; run checks first (`.verified(budget, seed)`)")]
    Unverified(String),
}

fn result<W: fmt::Display>(
    condition: Condition,
    declared: bool,
    v: &Verdict<W>,
) -> ConditionResult {
    ConditionResult {
        condition,
        satisfied: declared && v.passed(),
        vacuous: false,
        declared,
        checker: v.to_string(),
    }
}

pub fn classify(t: &TNormDesc, l: &TConormDesc) -> Result<Classification, ClassifierError> {
    let te = t
        .evidence()
        .ok_or_else(|| ClassifierError::Unverified(t.name.clone()))?;
    let le = l
        .evidence()
        .ok_or_else(|| ClassifierError::Unverified(l.name.clone()))?;
    let (td, ld) = (&t.declared, &l.declared);

    let archimedean = ld.is_archimedean && le.archimedean.passed();
    let left = if archimedean {
        ConditionResult {
            condition: Condition::CLeftWhenNonArchimedean,
            satisfied: true,
            vacuous: true,
            declared: td.is_left_continuous,
            checker: format!("vacuous: L Archimedean ({})", le.archimedean),
        }
    } else {
        result(
            Condition::CLeftWhenNonArchimedean,
            td.is_left_continuous,
            &te.left,
        )
    };
    let evidence = vec![
        result(Condition::AContinuity, ld.is_continuous, &le.continuity),
        result(Condition::ATConorm, ld.is_tconorm, &le.axioms),
        result(Condition::ALcs, ld.satisfies_lcs, &le.lcs),
        result(Condition::BTNorm, td.is_tnorm(), &te.axioms),
        result(
            Condition::CWeakLeft,
            td.is_weakly_left_continuous,
            &te.weak_left,
        ),
        left,
    ];
    let failed: Vec<Condition> = evidence
        .iter()
        .filter(|r| !r.satisfied)
        .map(|r| r.condition)
        .collect();
    let (verdict, governing) = if failed.is_empty() {
        (TriangleVerdict::Triangle, Condition::ALL.to_vec())
    } else {
        (TriangleVerdict::NotTriangle, failed)
    };
    Ok(Classification {
        tnorm: t.name.clone(),
        tconorm: l.name.clone(),
        verdict,
        governing,
        evidence,
    })
}

impl Classification {
    pub fn to_record(&self) -> Record {
        let tags: Vec<&str> = self.governing.iter().map(|c| c.tag()).collect();
        let mut r = Record::new()
            .with("tnorm", &self.tnorm)
            .with("tconorm", &self.tconorm)
            .with("verdict", self.verdict)
            .with("governing", tags.join(","));
        for e in &self.evidence {
            let state = match (e.satisfied, e.vacuous) {
                (true, true) => "vacuous",
                (true, false) => "yes",
                (false, _) => "no",
            };
            r.push(e.condition.tag(), state);
        }
        r
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tags: Vec<&str> = self.governing.iter().map(|c| c.tag()).collect();
        writeln!(
            f,
            "{} with {}: {} [{}]",
            self.tnorm,
            self.tconorm,
            self.verdict,
            tags.join(", ")
        )?;
        for (section, conds) in [
            ("(a) L continuous t-conorm with (LCS)", &self.evidence[0..3]),
            ("(b) T t-norm", &self.evidence[3..4]),
            ("(c) T (weakly) left continuous", &self.evidence[4..6]),
        ] {
            writeln!(f, "{section}")?;
            for e in conds {
                let mark = match (e.satisfied, e.vacuous) {
                    (true, true) => "vacuous",
                    (true, false) => "ok",
                    (false, _) => "FAILED",
                };
                writeln!(
                    f,
                    "  {:<28} {:<8} declared={} checker: {}",
                    e.condition.tag(),
                    mark,
                    e.declared,
                    e.checker
                )?;
            }
        }
        Ok(())
    }
}
