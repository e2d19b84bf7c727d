//! Binary operations on `[0,∞]`: the t-conorm catalog, axiom and continuity
//! checks, the strict-monotonicity conditions (LS) and (LCS), idempotent
//! analysis and the Archimedean test.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use num::{BigRational, One, Signed, Zero};
use thiserror::Error;

use crate::numeric::{ext_add, ExtRat, UnitRat};
use crate::sampling;
use crate::tnorms::{axiom_violation, AxiomWitness, REFINEMENT_DEPTH};
use crate::verdict::Verdict;

pub const TCONORM_NAMES: [&str; 6] = [
    "max",
    "plus",
    "nilpotent_rat",
    "drastic",
    "osum_trunc:<p>",
    "osum_strict:<p>",
];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TConormError {
    #[error("unknown t-conorm `{0}`; expected one of max, plus, nilpotent_rat, drastic, osum_trunc:<p>, osum_strict:<p>")]
    Unknown(String),
    #[error("`{0}` needs a parameter, e.g. `{0}:2`")]
    MissingParameter(String),
    #[error("`{0}` takes no parameter")]
    UnexpectedParameter(String),
    #[error("ordinal-sum parameter must be a finite positive rational, got `{0}`")]
    BadParameter(String),
}

/// Order isomorphism `[0,∞] → [0,1]`, `t ↦ t/(1+t)`.
pub fn compress(t: &ExtRat) -> UnitRat {
    match t {
        ExtRat::Infinity => UnitRat::one(),
        ExtRat::Finite(r) => UnitRat::from_rational_unchecked(r / (BigRational::one() + r)),
    }
}

/// Inverse of [`compress`], `s ↦ s/(1-s)`.
pub fn expand(s: &UnitRat) -> ExtRat {
    if s.is_one() {
        return ExtRat::Infinity;
    }
    let s = s.value();
    ExtRat::from_rational_unchecked(s / (BigRational::one() - s))
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum TConormKind {
    Max,
    Plus,
    /// Truncated addition carried to `[0,∞]` through [`compress`].
    NilpotentRat,
    Drastic,
    /// Truncated addition on `[0,p]`, maximum above.
    OsumTrunc(BigRational),
    /// A copy of addition on `[0,p]` via `t ↦ t/(p-t)`, maximum above.
    OsumStrict(BigRational),
}

impl TConormKind {
    pub fn name(&self) -> String {
        match self {
            TConormKind::Max => "max".into(),
            TConormKind::Plus => "plus".into(),
            TConormKind::NilpotentRat => "nilpotent_rat".into(),
            TConormKind::Drastic => "drastic".into(),
            TConormKind::OsumTrunc(p) => format!("osum_trunc:{}", ExtRat::Finite(p.clone())),
            TConormKind::OsumStrict(p) => format!("osum_strict:{}", ExtRat::Finite(p.clone())),
        }
    }

    pub fn apply(&self, u: &ExtRat, v: &ExtRat) -> ExtRat {
        match self {
            TConormKind::Max => std::cmp::max(u, v).clone(),
            TConormKind::Plus => ext_add(u, v),
            TConormKind::NilpotentRat => {
                let s = compress(u).into_inner() + compress(v).into_inner();
                if s >= BigRational::one() {
                    ExtRat::Infinity
                } else {
                    expand(&UnitRat::from_rational_unchecked(s))
                }
            }
            TConormKind::Drastic => {
                if u.is_zero() || v.is_zero() {
                    std::cmp::max(u, v).clone()
                } else {
                    ExtRat::Infinity
                }
            }
            TConormKind::OsumTrunc(p) => {
                let cap = ExtRat::Finite(p.clone());
                if u <= &cap && v <= &cap {
                    std::cmp::min(ext_add(u, v), cap)
                } else {
                    std::cmp::max(u, v).clone()
                }
            }
            TConormKind::OsumStrict(p) => {
                let cap = ExtRat::Finite(p.clone());
                if u > &cap || v > &cap {
                    return std::cmp::max(u, v).clone();
                }
                // Both finite and <= p here.
                let (a, b) = (u.as_finite().unwrap(), v.as_finite().unwrap());
                if a == p || b == p {
                    return cap;
                }
                let s = a / (p - a) + b / (p - b);
                ExtRat::from_rational_unchecked(p * &s / (BigRational::one() + &s))
            }
        }
    }

    /// Whether `L(a+δ, b+δ) = L(a,b)` for some `δ > 0`, i.e. whether the
    /// infimum of `L` over the cell `]a,·] × ]b,·]` is attained.
    pub fn plateau_at(&self, a: &ExtRat, b: &ExtRat) -> bool {
        if a.is_infinite() || b.is_infinite() {
            return true;
        }
        match self {
            TConormKind::Max | TConormKind::Plus | TConormKind::OsumStrict(_) => false,
            TConormKind::NilpotentRat => self.apply(a, b).is_infinite(),
            TConormKind::Drastic => !a.is_zero() || !b.is_zero(),
            TConormKind::OsumTrunc(p) => {
                let (a, b) = (a.as_finite().unwrap(), b.as_finite().unwrap());
                a < p && b < p && &(a + b) >= p
            }
        }
    }

    /// The `v` with `L(u, v) = x`, for the Archimedean entries that admit one.
    pub fn solve_second(&self, u: &ExtRat, x: &ExtRat) -> Option<ExtRat> {
        if u > x {
            return None;
        }
        match (self, u, x) {
            (_, _, ExtRat::Infinity) => Some(ExtRat::Infinity),
            (TConormKind::Plus, ExtRat::Finite(a), ExtRat::Finite(b)) => {
                Some(ExtRat::from_rational_unchecked(b - a))
            }
            (TConormKind::NilpotentRat, ExtRat::Finite(_), ExtRat::Finite(_)) => {
                let s = compress(x).into_inner() - compress(u).into_inner();
                Some(expand(&UnitRat::from_rational_unchecked(s)))
            }
            _ => None,
        }
    }

    fn declared(&self) -> TConormFlags {
        let full = TConormFlags {
            is_tconorm: true,
            is_continuous: true,
            satisfies_ls: true,
            satisfies_lcs: true,
            is_archimedean: false,
            in_class_l: true,
        };
        match self {
            TConormKind::Max | TConormKind::OsumStrict(_) => full,
            TConormKind::Plus => TConormFlags {
                is_archimedean: true,
                ..full
            },
            TConormKind::NilpotentRat => TConormFlags {
                satisfies_ls: false,
                is_archimedean: true,
                ..full
            },
            TConormKind::Drastic => TConormFlags {
                is_continuous: false,
                satisfies_ls: false,
                is_archimedean: true,
                in_class_l: false,
                ..full
            },
            TConormKind::OsumTrunc(_) => TConormFlags {
                satisfies_ls: false,
                satisfies_lcs: false,
                ..full
            },
        }
    }

    fn hints(&self) -> Vec<ExtRat> {
        match self {
            TConormKind::OsumTrunc(p) | TConormKind::OsumStrict(p) => {
                vec![ExtRat::Finite(p.clone())]
            }
            _ => Vec::new(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TConormFlags {
    pub is_tconorm: bool,
    pub is_continuous: bool,
    pub satisfies_ls: bool,
    pub satisfies_lcs: bool,
    pub is_archimedean: bool,
    /// Onto, monotone, 0-identity and continuous off `(0,∞)`, `(∞,0)`.
    pub in_class_l: bool,
}

pub type TConormFn = dyn Fn(&ExtRat, &ExtRat) -> ExtRat + Send + Sync;

#[derive(Clone)]
pub enum TConormEval {
    Catalog(TConormKind),
    Custom(Arc<TConormFn>),
}

#[derive(Clone)]
pub struct TConormDesc {
    pub name: String,
    pub eval: TConormEval,
    pub declared: TConormFlags,
    pub idempotent_hints: Vec<ExtRat>,
    evidence: Option<Arc<TConormEvidence>>,
}

impl fmt::Debug for TConormDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TConormDesc")
            .field("name", &self.name)
            .field("declared", &self.declared)
            .field("verified", &self.evidence.is_some())
            .finish()
    }
}

/// Looks up a catalog entry; `param` is required exactly for the ordinal sums.
pub fn catalog_tconorm(name: &str, param: Option<&ExtRat>) -> Result<TConormDesc, TConormError> {
    let needs_param = matches!(name, "osum_trunc" | "osum_strict");
    let kind = match (name, param) {
        ("max", None) => TConormKind::Max,
        ("plus", None) => TConormKind::Plus,
        ("nilpotent_rat", None) => TConormKind::NilpotentRat,
        ("drastic", None) => TConormKind::Drastic,
        (_, Some(_)) if !needs_param && TCONORM_NAMES.contains(&name) => {
            return Err(TConormError::UnexpectedParameter(name.into()))
        }
        (_, None) if needs_param => return Err(TConormError::MissingParameter(name.into())),
        (_, Some(p)) if needs_param => {
            let p = match p {
                ExtRat::Finite(p) if !p.is_zero() => p.clone(),
                other => return Err(TConormError::BadParameter(other.to_string())),
            };
            if name == "osum_trunc" {
                TConormKind::OsumTrunc(p)
            } else {
                TConormKind::OsumStrict(p)
            }
        }
        _ => return Err(TConormError::Unknown(name.into())),
    };
    Ok(TConormDesc::from_kind(kind))
}

/// Parses the command-line form `name` or `name:<p>`.
pub fn parse_tconorm(text: &str) -> Result<TConormDesc, TConormError> {
    match text.split_once(':') {
        None => catalog_tconorm(text, None),
        Some((name, p)) => {
            let p: ExtRat = p
                .parse()
                .map_err(|_| TConormError::BadParameter(p.to_string()))?;
            catalog_tconorm(name, Some(&p))
        }
    }
}

/// One entry per family; ordinal sums use `p = 2`.
pub fn full_tconorm_catalog() -> Vec<TConormDesc> {
    let two = BigRational::from_integer(2.into());
    [
        TConormKind::Max,
        TConormKind::Plus,
        TConormKind::NilpotentRat,
        TConormKind::Drastic,
        TConormKind::OsumTrunc(two.clone()),
        TConormKind::OsumStrict(two),
    ]
    .into_iter()
    .map(TConormDesc::from_kind)
    .collect()
}

impl TConormDesc {
    pub fn from_kind(kind: TConormKind) -> Self {
        TConormDesc {
            name: kind.name(),
            declared: kind.declared(),
            idempotent_hints: kind.hints(),
            eval: TConormEval::Catalog(kind),
            evidence: None,
        }
    }

    pub fn custom<F>(name: &str, declared: TConormFlags, f: F) -> Self
    where
        F: Fn(&ExtRat, &ExtRat) -> ExtRat + Send + Sync + 'static,
    {
        TConormDesc {
            name: name.to_string(),
            eval: TConormEval::Custom(Arc::new(f)),
            declared,
            idempotent_hints: Vec::new(),
            evidence: None,
        }
    }

    pub fn kind(&self) -> Option<&TConormKind> {
        match &self.eval {
            TConormEval::Catalog(k) => Some(k),
            TConormEval::Custom(_) => None,
        }
    }

    pub fn eval(&self, u: &ExtRat, v: &ExtRat) -> ExtRat {
        match &self.eval {
            TConormEval::Catalog(kind) => kind.apply(u, v),
            TConormEval::Custom(f) => f(u, v),
        }
    }

    pub fn verified(mut self, budget: u64, seed: u64) -> Self {
        let evidence = TConormEvidence {
            axioms: check_tconorm_axioms(&self, budget, seed),
            continuity: check_tconorm_continuity(&self, budget, seed),
            lcs: check_lcs(&self, budget, seed),
            ls: check_ls(&self, budget, seed),
            archimedean: is_archimedean(&self, budget, seed),
            budget,
            seed,
        };
        self.evidence = Some(Arc::new(evidence));
        self
    }

    pub fn evidence(&self) -> Option<&TConormEvidence> {
        self.evidence.as_deref()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TConormEvidence {
    pub axioms: Verdict<AxiomWitness<ExtRat>>,
    pub continuity: Verdict<ConormPointWitness>,
    pub lcs: Verdict<LcsWitness>,
    pub ls: Verdict<LcsWitness>,
    pub archimedean: Verdict<ArchimedeanWitness>,
    pub budget: u64,
    pub seed: u64,
}

/// `u < u'`, `v < v'` but `L(u,v) = L(u',v')`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LcsWitness {
    pub u: ExtRat,
    pub v: ExtRat,
    pub u_prime: ExtRat,
    pub v_prime: ExtRat,
    pub low: ExtRat,
    pub high: ExtRat,
}

impl fmt::Display for LcsWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "L({}, {}) = {} and L({}, {}) = {}",
            self.u, self.v, self.low, self.u_prime, self.v_prime, self.high
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConormPointWitness {
    pub u: ExtRat,
    pub v: ExtRat,
    pub detail: String,
}

impl fmt::Display for ConormPointWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at ({}, {}): {}", self.u, self.v, self.detail)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArchimedeanWitness {
    pub x: ExtRat,
    pub detail: String,
}

impl fmt::Display for ArchimedeanWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x = {}: {}", self.x, self.detail)
    }
}

fn base_pool() -> Vec<ExtRat> {
    let mut pool: Vec<ExtRat> = (0..=16).map(|k| ExtRat::frac(k, 4)).collect();
    pool.push(ExtRat::Infinity);
    pool
}

/// Points clustered around each idempotent hint.
fn hint_pool(desc: &TConormDesc) -> Vec<ExtRat> {
    let mut pool = Vec::new();
    for h in desc.idempotent_hints.iter().filter_map(ExtRat::as_finite) {
        for (n, d) in [(1, 2), (3, 4), (9, 10), (19, 20), (1, 1), (21, 20), (3, 2)] {
            pool.push(ExtRat::Finite(h * BigRational::new(n.into(), d.into())));
        }
    }
    pool.sort();
    pool.dedup();
    pool
}

pub fn check_tconorm_axioms(
    l: &TConormDesc,
    budget: u64,
    seed: u64,
) -> Verdict<AxiomWitness<ExtRat>> {
    let zero = ExtRat::zero();
    let op = |a: &ExtRat, b: &ExtRat| l.eval(a, b);
    let mut pool = base_pool();
    pool.extend(hint_pool(l));
    pool.sort();
    pool.dedup();
    let mut cases = 0u64;
    for x in &pool {
        for y in &pool {
            for z in &pool {
                cases += 1;
                if let Some(w) = axiom_violation(x, y, z, &zero, op) {
                    return Verdict::Fail(w);
                }
            }
        }
    }
    let mut rng = sampling::rng_for(seed, 0xC001);
    for _ in 0..budget {
        let x = sampling::extended(&mut rng, 16, 8);
        let y = sampling::extended(&mut rng, 16, 8);
        let z = sampling::extended(&mut rng, 16, 8);
        cases += 1;
        if let Some(w) = axiom_violation(&x, &y, &z, &zero, op) {
            return Verdict::Fail(w);
        }
    }
    Verdict::Pass { cases }
}

/// Checks continuity by `2^-k` perturbations measured in the compressed
/// metric `|t/(1+t) - s/(1+s)|`, probing the axes and hints first.
pub fn check_tconorm_continuity(
    l: &TConormDesc,
    budget: u64,
    seed: u64,
) -> Verdict<ConormPointWitness> {
    let threshold = BigRational::new(1.into(), num::BigInt::from(2u8).pow(REFINEMENT_DEPTH));
    let small: Vec<ExtRat> = [(1, 2), (1, 1), (3, 2), (2, 1), (5, 1)]
        .into_iter()
        .map(|(n, d)| ExtRat::frac(n, d))
        .collect();
    let mut points: Vec<(ExtRat, ExtRat)> = Vec::new();
    for t in small.iter().chain(l.idempotent_hints.iter()) {
        points.push((ExtRat::zero(), t.clone()));
        points.push((t.clone(), ExtRat::zero()));
        points.push((t.clone(), t.clone()));
    }
    for h in hint_pool(l) {
        for t in &small {
            points.push((h.clone(), t.clone()));
        }
    }
    let mut rng = sampling::rng_for(seed, 0xC002);
    for _ in 0..budget {
        points.push((
            ExtRat::Finite(sampling::finite(&mut rng, 16, 8)),
            ExtRat::Finite(sampling::finite(&mut rng, 16, 8)),
        ));
    }

    let mut cases = 0u64;
    for (u, v) in points {
        cases += 1;
        let centre = compress(&l.eval(&u, &v));
        let (a, b) = (u.as_finite().unwrap(), v.as_finite().unwrap());
        let delta = BigRational::new(1.into(), num::BigInt::from(2u8).pow(REFINEMENT_DEPTH));
        let mut neighbours = vec![(a + &delta, b.clone()), (a.clone(), b + &delta)];
        if a >= &delta {
            neighbours.push((a - &delta, b.clone()));
        }
        if b >= &delta {
            neighbours.push((a.clone(), b - &delta));
        }
        for (x, y) in neighbours {
            let near = compress(&l.eval(&ExtRat::Finite(x), &ExtRat::Finite(y)));
            let gap = (near.value() - centre.value()).abs();
            if gap > threshold {
                return Verdict::Fail(ConormPointWitness {
                    detail: format!(
                        "L = {} but a 2^-{REFINEMENT_DEPTH} perturbation gives {}",
                        expand(&centre),
                        expand(&near)
                    ),
                    u,
                    v,
                });
            }
        }
    }
    Verdict::Pass { cases }
}

fn strictness_check(
    l: &TConormDesc,
    budget: u64,
    seed: u64,
    require_finite: bool,
) -> Verdict<LcsWitness> {
    let violation = |u: &ExtRat, v: &ExtRat, u2: &ExtRat, v2: &ExtRat| -> Option<LcsWitness> {
        if !(u < u2 && v < v2) {
            return None;
        }
        let high = l.eval(u2, v2);
        if require_finite && high.is_infinite() {
            return None;
        }
        let low = l.eval(u, v);
        (low >= high).then(|| LcsWitness {
            u: u.clone(),
            v: v.clone(),
            u_prime: u2.clone(),
            v_prime: v2.clone(),
            low,
            high,
        })
    };
    let mut pool = hint_pool(l);
    pool.extend(
        [(0, 1), (1, 2), (1, 1), (3, 2), (2, 1), (3, 1)]
            .into_iter()
            .map(|(n, d)| ExtRat::frac(n, d)),
    );
    pool.push(ExtRat::Infinity);
    let mut cases = 0u64;
    for u in &pool {
        for v in &pool {
            for u2 in pool.iter().filter(|x| *x > u) {
                for v2 in pool.iter().filter(|x| *x > v) {
                    cases += 1;
                    if let Some(w) = violation(u, v, u2, v2) {
                        return Verdict::Fail(w);
                    }
                }
            }
        }
    }
    let mut rng = sampling::rng_for(seed, if require_finite { 0xC003 } else { 0xC004 });
    for _ in 0..budget {
        let mut pair = || {
            let a = sampling::extended(&mut rng, 16, 8);
            let b = sampling::extended(&mut rng, 16, 8);
            if a <= b {
                (a, b)
            } else {
                (b, a)
            }
        };
        let (u, u2) = pair();
        let (v, v2) = pair();
        cases += 1;
        if let Some(w) = violation(&u, &v, &u2, &v2) {
            return Verdict::Fail(w);
        }
    }
    Verdict::Pass { cases }
}

/// (LCS): `u < u'`, `v < v'`, `L(u',v') < ∞` imply `L(u,v) < L(u',v')`.
pub fn check_lcs(l: &TConormDesc, budget: u64, seed: u64) -> Verdict<LcsWitness> {
    strictness_check(l, budget, seed, true)
}

/// (LS): `u < u'`, `v < v'` imply `L(u,v) < L(u',v')`.
pub fn check_ls(l: &TConormDesc, budget: u64, seed: u64) -> Verdict<LcsWitness> {
    strictness_check(l, budget, seed, false)
}

/// Idempotents among `grid` and the descriptor's hints, plus `0` and `∞`.
pub fn idempotents(l: &TConormDesc, grid: &[ExtRat]) -> BTreeSet<ExtRat> {
    let mut out: BTreeSet<ExtRat> = [ExtRat::zero(), ExtRat::Infinity].into();
    out.extend(
        grid.iter()
            .chain(l.idempotent_hints.iter())
            .filter(|x| &l.eval(x, x) == *x)
            .cloned(),
    );
    out
}

/// Fails on a nontrivial idempotent, or on a power sequence `y, y², …` that
/// stays below some `x > y`.
pub fn is_archimedean(l: &TConormDesc, budget: u64, seed: u64) -> Verdict<ArchimedeanWitness> {
    let mut candidates: Vec<ExtRat> = l.idempotent_hints.clone();
    candidates.extend(
        [(1, 1), (1, 2), (2, 1), (1, 4), (4, 1), (3, 2)]
            .into_iter()
            .map(|(n, d)| ExtRat::frac(n, d)),
    );
    let mut rng = sampling::rng_for(seed, 0xC005);
    for _ in 0..budget {
        let x = sampling::finite(&mut rng, 16, 8);
        if !x.is_zero() {
            candidates.push(ExtRat::Finite(x));
        }
    }
    let mut cases = 0u64;
    for x in &candidates {
        cases += 1;
        if &l.eval(x, x) == x {
            return Verdict::Fail(ArchimedeanWitness {
                x: x.clone(),
                detail: "nontrivial idempotent".into(),
            });
        }
    }

    let max_steps = budget.max(1024);
    for _ in 0..budget.min(256) {
        let a = sampling::finite(&mut rng, 8, 8);
        let b = sampling::finite(&mut rng, 8, 8);
        if a.is_zero() || b.is_zero() || a == b {
            continue;
        }
        let (y, x) = if a < b { (a, b) } else { (b, a) };
        let (y, x) = (ExtRat::Finite(y), ExtRat::Finite(x));
        cases += 1;
        let mut power = y.clone();
        let mut steps = 1u64;
        while power <= x && steps < max_steps {
            power = l.eval(&power, &y);
            steps += 1;
        }
        if power <= x {
            return Verdict::Fail(ArchimedeanWitness {
                detail: format!(
                    "powers of {y} stay at or below x after {steps} steps (reached {power})"
                ),
                x,
            });
        }
    }
    Verdict::Pass { cases }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(s: &str) -> ExtRat {
        s.parse().unwrap()
    }

    fn l(name: &str) -> TConormDesc {
        parse_tconorm(name).unwrap()
    }

    #[test]
    fn evaluation_examples() {
        assert_eq!(
            l("plus").eval(&e("3/2"), &ExtRat::Infinity),
            ExtRat::Infinity
        );
        assert_eq!(l("drastic").eval(&e("1/2"), &e("1/2")), ExtRat::Infinity);
        assert_eq!(l("drastic").eval(&e("0"), &e("1/2")), e("1/2"));
        let trunc = l("osum_trunc:2");
        assert_eq!(trunc.eval(&e("3/2"), &e("9/5")), e("2"));
        assert_eq!(trunc.eval(&e("1/2"), &e("1")), e("3/2"));
        assert_eq!(trunc.eval(&e("5/2"), &e("1")), e("5/2"));
        // compress(1) + compress(1) = 1, the cap.
        assert_eq!(l("nilpotent_rat").eval(&e("1"), &e("1")), ExtRat::Infinity);
        // 1/3 + 1/3 = 2/3 -> 2.
        assert_eq!(l("nilpotent_rat").eval(&e("1/2"), &e("1/2")), e("2"));
        // g(1) = 1, so 1 ⊕ 1 = g^-1(2) = 4/3 on [0,2].
        let strict = l("osum_strict:2");
        assert_eq!(strict.eval(&e("1"), &e("1")), e("4/3"));
        assert_eq!(strict.eval(&e("2"), &e("1")), e("2"));
        assert_eq!(strict.eval(&e("3"), &e("1")), e("3"));
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(
            parse_tconorm("sum"),
            Err(TConormError::Unknown(_))
        ));
        assert!(matches!(
            parse_tconorm("osum_trunc"),
            Err(TConormError::MissingParameter(_))
        ));
        assert!(matches!(
            parse_tconorm("osum_trunc:0"),
            Err(TConormError::BadParameter(_))
        ));
        assert!(matches!(
            parse_tconorm("osum_strict:inf"),
            Err(TConormError::BadParameter(_))
        ));
        assert!(matches!(
            parse_tconorm("plus:2"),
            Err(TConormError::UnexpectedParameter(_))
        ));
        assert_eq!(l("osum_trunc:4/2").name, "osum_trunc:2");
    }

    #[test]
    fn axioms_hold_for_catalog() {
        for desc in full_tconorm_catalog() {
            let v = check_tconorm_axioms(&desc, 200, 4);
            assert!(v.passed(), "{}: {v}", desc.name);
        }
    }

    #[test]
    fn nilpotent_rat_axioms_by_brute_force() {
        let desc = l("nilpotent_rat");
        let mut grid: Vec<ExtRat> = (0..=16).map(|k| ExtRat::frac(k, 4)).collect();
        grid.push(ExtRat::Infinity);
        for a in &grid {
            assert_eq!(&desc.eval(a, &ExtRat::zero()), a);
            for b in &grid {
                let ab = desc.eval(a, b);
                assert_eq!(ab, desc.eval(b, a));
                for c in &grid {
                    assert_eq!(desc.eval(&ab, c), desc.eval(a, &desc.eval(b, c)));
                }
            }
        }
    }

    #[test]
    fn strictness_examples() {
        assert!(check_lcs(&l("max"), 500, 1).passed());
        assert!(check_ls(&l("max"), 500, 1).passed());
        assert!(check_lcs(&l("plus"), 500, 1).passed());
        assert!(check_ls(&l("plus"), 500, 1).passed());
        assert!(check_lcs(&l("nilpotent_rat"), 500, 1).passed());
        let Verdict::Fail(w) = check_ls(&l("nilpotent_rat"), 500, 1) else {
            panic!("nilpotent_rat satisfied (LS)");
        };
        assert!(w.low.is_infinite() && w.high.is_infinite());
        let Verdict::Fail(w) = check_lcs(&l("osum_trunc:2"), 500, 1) else {
            panic!("osum_trunc satisfied (LCS)");
        };
        assert!(w.high.is_finite() && w.low == w.high);
    }

    #[test]
    fn osum_trunc_quoted_violation() {
        let trunc = l("osum_trunc:2");
        let low = trunc.eval(&e("3/2"), &e("9/5"));
        let high = trunc.eval(&e("19/10"), &e("19/10"));
        assert_eq!(low, e("2"));
        assert_eq!(high, e("2"));
    }

    #[test]
    fn idempotent_examples() {
        let grid = [e("1/2"), e("1"), e("2")];
        let plus = idempotents(&l("plus"), &grid);
        assert_eq!(plus, [e("0"), ExtRat::Infinity].into());
        let max = idempotents(&l("max"), &grid);
        assert_eq!(
            max,
            [e("0"), e("1/2"), e("1"), e("2"), ExtRat::Infinity].into()
        );
        let trunc = idempotents(&l("osum_trunc:2"), &[e("1"), e("2"), e("3")]);
        assert_eq!(trunc, [e("0"), e("2"), e("3"), ExtRat::Infinity].into());
    }

    #[test]
    fn archimedean_examples() {
        assert!(is_archimedean(&l("plus"), 200, 2).passed());
        assert!(is_archimedean(&l("nilpotent_rat"), 200, 2).passed());
        let Verdict::Fail(w) = is_archimedean(&l("max"), 200, 2) else {
            panic!("max reported Archimedean");
        };
        assert_eq!(w.x, e("1"));
        let Verdict::Fail(w) = is_archimedean(&l("osum_strict:2"), 200, 2) else {
            panic!("osum_strict reported Archimedean");
        };
        assert_eq!(w.x, e("2"));
    }

    #[test]
    fn continuity_examples() {
        for desc in full_tconorm_catalog() {
            let v = check_tconorm_continuity(&desc, 200, 5);
            assert_eq!(
                v.passed(),
                desc.declared.is_continuous,
                "{}: {v}",
                desc.name
            );
        }
        // eval(1/k, 1) = ∞ for every k while eval(0, 1) = 1.
        let d = l("drastic");
        assert_eq!(d.eval(&e("0"), &e("1")), e("1"));
        for k in 1..50u64 {
            assert_eq!(d.eval(&ExtRat::frac(1, k), &e("1")), ExtRat::Infinity);
        }
    }

    #[test]
    fn nilpotent_rat_is_truncated_addition_after_compression() {
        let desc = l("nilpotent_rat");
        let mut rng = sampling::rng_for(11, 0);
        for _ in 0..500 {
            let u = sampling::extended(&mut rng, 12, 6);
            let v = sampling::extended(&mut rng, 12, 6);
            let lhs = compress(&desc.eval(&u, &v));
            let s = compress(&u).into_inner() + compress(&v).into_inner();
            let rhs = std::cmp::min(s, BigRational::one());
            assert_eq!(lhs.value(), &rhs);
        }
    }

    #[test]
    fn osum_strict_blocks() {
        let desc = l("osum_strict:2");
        let p = e("2");
        let mut rng = sampling::rng_for(12, 0);
        for _ in 0..300 {
            let a = ExtRat::Finite(sampling::finite(&mut rng, 12, 2));
            let b = ExtRat::Finite(sampling::finite(&mut rng, 12, 2));
            let c = ExtRat::Finite(sampling::finite(&mut rng, 12, 2));
            if a < b && b < p && c < p {
                assert!(desc.eval(&a, &c) < desc.eval(&b, &c));
            }
            let big = ExtRat::Finite(
                sampling::finite(&mut rng, 12, 8) + BigRational::from_integer(3.into()),
            );
            assert_eq!(desc.eval(&big, &a), std::cmp::max(big.clone(), a.clone()));
        }
    }

    #[test]
    fn bounds_between_max_and_drastic() {
        let max = l("max");
        let drastic = l("drastic");
        let mut rng = sampling::rng_for(13, 0);
        for desc in full_tconorm_catalog() {
            for _ in 0..200 {
                let u = sampling::extended(&mut rng, 8, 6);
                let v = sampling::extended(&mut rng, 8, 6);
                let val = desc.eval(&u, &v);
                assert!(
                    max.eval(&u, &v) <= val && val <= drastic.eval(&u, &v),
                    "{}",
                    desc.name
                );
            }
        }
    }

    #[test]
    fn ls_implies_lcs_over_catalog() {
        for desc in full_tconorm_catalog() {
            if check_ls(&desc, 300, 6).passed() {
                assert!(check_lcs(&desc, 300, 6).passed(), "{}", desc.name);
            }
        }
    }

    #[test]
    fn plateau_detection() {
        let trunc = TConormKind::OsumTrunc(BigRational::from_integer(2.into()));
        assert!(trunc.plateau_at(&e("3/2"), &e("9/5")));
        assert!(!trunc.plateau_at(&e("1/2"), &e("1")));
        assert!(!trunc.plateau_at(&e("2"), &e("1")));
        assert!(TConormKind::NilpotentRat.plateau_at(&e("1"), &e("1")));
        assert!(!TConormKind::NilpotentRat.plateau_at(&e("1/2"), &e("1")));
        assert!(!TConormKind::Plus.plateau_at(&e("1"), &e("1")));
    }

    #[test]
    fn solve_second_inverts() {
        for kind in [TConormKind::Plus, TConormKind::NilpotentRat] {
            for (u, x) in [("1/2", "3"), ("0", "1"), ("2", "2"), ("1/3", "7/5")] {
                let (u, x) = (e(u), e(x));
                let v = kind.solve_second(&u, &x).unwrap();
                assert_eq!(kind.apply(&u, &v), x, "{kind:?}");
            }
        }
        assert_eq!(TConormKind::Max.solve_second(&e("1"), &e("2")), None);
    }
}
