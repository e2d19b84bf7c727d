//! Binary operations on `[0,1]`: the t-norm catalog and its falsification
//! suite (t-norm axioms, weak left continuity, left continuity).

use std::fmt;
use std::sync::Arc;

use num::BigRational;
use thiserror::Error;

use crate::germ::{Germ, Scalar};
use crate::numeric::UnitRat;
use crate::sampling;
use crate::verdict::Verdict;

pub const TNORM_NAMES: [&str; 6] = ["M", "Pi", "W", "nM", "D", "nM_hat"];

/// Refinement depth for sampled continuity checks: probes step back by
/// `2^-k` for `k <= REFINEMENT_DEPTH`, and a gap must exceed
/// `2^-REFINEMENT_DEPTH` to count as a discontinuity.
pub const REFINEMENT_DEPTH: u32 = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown t-norm `{0}`; expected one of M, Pi, W, nM, D, nM_hat")]
pub struct UnknownTNorm(pub String);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TNormKind {
    Minimum,
    Product,
    Lukasiewicz,
    NilpotentMinimum,
    Drastic,
    NilpotentMinimumHat,
}

impl TNormKind {
    pub const ALL: [TNormKind; 6] = [
        TNormKind::Minimum,
        TNormKind::Product,
        TNormKind::Lukasiewicz,
        TNormKind::NilpotentMinimum,
        TNormKind::Drastic,
        TNormKind::NilpotentMinimumHat,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TNormKind::Minimum => "M",
            TNormKind::Product => "Pi",
            TNormKind::Lukasiewicz => "W",
            TNormKind::NilpotentMinimum => "nM",
            TNormKind::Drastic => "D",
            TNormKind::NilpotentMinimumHat => "nM_hat",
        }
    }

    /// The defining formula over any ordered ring; used both for exact
    /// evaluation and for one-sided limits via [`Germ`].
    pub fn apply<S: Scalar>(self, x: &S, y: &S) -> S {
        let min = || std::cmp::min(x, y).clone();
        let sum = || x.plus(y);
        match self {
            TNormKind::Minimum => min(),
            TNormKind::Product => x.times(y),
            TNormKind::Lukasiewicz => std::cmp::max(sum().minus(&S::one()), S::zero()),
            TNormKind::NilpotentMinimum => {
                if sum() > S::one() {
                    min()
                } else {
                    S::zero()
                }
            }
            TNormKind::Drastic => {
                if *x == S::one() || *y == S::one() {
                    min()
                } else {
                    S::zero()
                }
            }
            TNormKind::NilpotentMinimumHat => {
                if sum() >= S::one() {
                    min()
                } else {
                    S::zero()
                }
            }
        }
    }

    fn declared(self) -> TNormFlags {
        let base = TNormFlags::continuous_tnorm();
        match self {
            TNormKind::Minimum | TNormKind::Product | TNormKind::Lukasiewicz => base,
            TNormKind::NilpotentMinimum => TNormFlags {
                is_continuous: false,
                ..base
            },
            TNormKind::Drastic => TNormFlags {
                is_continuous: false,
                is_left_continuous: false,
                ..base
            },
            TNormKind::NilpotentMinimumHat => TNormFlags {
                is_continuous: false,
                is_left_continuous: false,
                is_weakly_left_continuous: false,
                ..base
            },
        }
    }

    fn boundaries(self) -> Vec<Boundary> {
        match self {
            TNormKind::NilpotentMinimum | TNormKind::NilpotentMinimumHat => {
                vec![Boundary::AntiDiagonal]
            }
            TNormKind::Drastic => vec![Boundary::XEqualsOne, Boundary::YEqualsOne],
            _ => Vec::new(),
        }
    }
}

/// Curves where a piecewise catalog entry switches formula.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Boundary {
    /// `x + y = 1`
    AntiDiagonal,
    XEqualsOne,
    YEqualsOne,
}

impl Boundary {
    /// Points on the curve, coarse denominators first, followed by points
    /// just off it.
    pub fn probe_points(self) -> Vec<(UnitRat, UnitRat)> {
        let mut on = Vec::new();
        for n in 2..=8u64 {
            for k in 1..n {
                let t = UnitRat::frac(k, n);
                let p = match self {
                    Boundary::AntiDiagonal => (t.clone(), UnitRat::frac(n - k, n)),
                    Boundary::XEqualsOne => (UnitRat::one(), t),
                    Boundary::YEqualsOne => (t, UnitRat::one()),
                };
                if !on.contains(&p) {
                    on.push(p);
                }
            }
        }
        if self != Boundary::AntiDiagonal {
            on.push((UnitRat::one(), UnitRat::one()));
        }
        let step = BigRational::new(1.into(), 64.into());
        let mut off = Vec::new();
        for (x, y) in &on {
            for (dx, dy) in [(1i8, 0i8), (0, 1), (-1, 0), (0, -1)] {
                let shift = |v: &UnitRat, d: i8| match d {
                    1 => UnitRat::new(v.value() + &step).ok(),
                    -1 => UnitRat::new(v.value() - &step)
                        .ok()
                        .filter(|u| !u.is_zero()),
                    _ => Some(v.clone()),
                };
                if let (Some(a), Some(b)) = (shift(x, dx), shift(y, dy)) {
                    off.push((a, b));
                }
            }
        }
        on.extend(off);
        on
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TNormFlags {
    pub is_commutative: bool,
    pub is_associative: bool,
    pub has_one_identity: bool,
    pub is_monotone: bool,
    pub is_left_continuous: bool,
    pub is_weakly_left_continuous: bool,
    pub is_continuous: bool,
}

impl TNormFlags {
    pub fn continuous_tnorm() -> Self {
        TNormFlags {
            is_commutative: true,
            is_associative: true,
            has_one_identity: true,
            is_monotone: true,
            is_left_continuous: true,
            is_weakly_left_continuous: true,
            is_continuous: true,
        }
    }

    pub fn is_tnorm(&self) -> bool {
        self.is_commutative && self.is_associative && self.has_one_identity && self.is_monotone
    }
}

pub type TNormFn = dyn Fn(&UnitRat, &UnitRat) -> UnitRat + Send + Sync;

#[derive(Clone)]
pub enum TNormEval {
    Catalog(TNormKind),
    Custom(Arc<TNormFn>),
}

/// Which approach region a one-sided limit is taken over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Approach {
    /// `(x, y - η)`
    BelowY,
    /// `(x - η, y)`
    BelowX,
    /// `(x - η, y - η)`
    Diagonal,
}

#[derive(Clone)]
pub struct TNormDesc {
    pub name: String,
    pub eval: TNormEval,
    pub declared: TNormFlags,
    pub boundaries: Vec<Boundary>,
    evidence: Option<Arc<TNormEvidence>>,
}

impl fmt::Debug for TNormDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TNormDesc")
            .field("name", &self.name)
            .field("declared", &self.declared)
            .field("verified", &self.evidence.is_some())
            .finish()
    }
}

pub fn catalog_tnorm(name: &str) -> Result<TNormDesc, UnknownTNorm> {
    TNormKind::ALL
        .into_iter()
        .find(|k| k.name() == name)
        .map(TNormDesc::from_kind)
        .ok_or_else(|| UnknownTNorm(name.to_string()))
}

pub fn full_tnorm_catalog() -> Vec<TNormDesc> {
    TNormKind::ALL
        .into_iter()
        .map(TNormDesc::from_kind)
        .collect()
}

impl TNormDesc {
    pub fn from_kind(kind: TNormKind) -> Self {
        TNormDesc {
            name: kind.name().to_string(),
            eval: TNormEval::Catalog(kind),
            declared: kind.declared(),
            boundaries: kind.boundaries(),
            evidence: None,
        }
    }

    /// An uncataloged operation. Limits are unavailable, so continuity
    /// checks fall back to sampling only.
    pub fn custom<F>(name: &str, declared: TNormFlags, f: F) -> Self
    where
        F: Fn(&UnitRat, &UnitRat) -> UnitRat + Send + Sync + 'static,
    {
        TNormDesc {
            name: name.to_string(),
            eval: TNormEval::Custom(Arc::new(f)),
            declared,
            boundaries: Vec::new(),
            evidence: None,
        }
    }

    pub fn kind(&self) -> Option<TNormKind> {
        match self.eval {
            TNormEval::Catalog(k) => Some(k),
            TNormEval::Custom(_) => None,
        }
    }

    pub fn eval(&self, x: &UnitRat, y: &UnitRat) -> UnitRat {
        match &self.eval {
            TNormEval::Catalog(kind) => {
                UnitRat::from_rational_unchecked(kind.apply(x.value(), y.value()))
            }
            TNormEval::Custom(f) => f(x, y),
        }
    }

    /// Exact one-sided limit at `(x, y)`, available for catalog entries.
    pub fn limit(&self, x: &UnitRat, y: &UnitRat, approach: Approach) -> Option<UnitRat> {
        let kind = self.kind()?;
        let (gx, gy) = match approach {
            Approach::BelowY => (
                Germ::exact(x.value().clone()),
                Germ::just_below(y.value().clone()),
            ),
            Approach::BelowX => (
                Germ::just_below(x.value().clone()),
                Germ::exact(y.value().clone()),
            ),
            Approach::Diagonal => (
                Germ::just_below(x.value().clone()),
                Germ::just_below(y.value().clone()),
            ),
        };
        let value = kind.apply(&gx, &gy).standard_part().clone();
        Some(UnitRat::from_rational_unchecked(value))
    }

    /// `sup{T(u,v) : u <= x, v < y or u < x, v <= y}` for a catalog entry.
    pub fn sup_weak_left(&self, x: &UnitRat, y: &UnitRat) -> Option<UnitRat> {
        let below_y = self.limit(x, y, Approach::BelowY)?;
        let below_x = self.limit(x, y, Approach::BelowX)?;
        Some(std::cmp::max(below_y, below_x))
    }

    /// `sup{T(u,v) : u < x, v < y}` for a catalog entry.
    pub fn sup_left(&self, x: &UnitRat, y: &UnitRat) -> Option<UnitRat> {
        self.limit(x, y, Approach::Diagonal)
    }

    /// Runs the full falsification suite and attaches the verdicts.
    pub fn verified(mut self, budget: u64, seed: u64) -> Self {
        let evidence = TNormEvidence {
            axioms: check_tnorm_axioms(&self, budget, seed),
            weak_left: check_weak_left_continuity(&self, budget, seed),
            left: check_left_continuity(&self, budget, seed),
            budget,
            seed,
        };
        self.evidence = Some(Arc::new(evidence));
        self
    }

    pub fn evidence(&self) -> Option<&TNormEvidence> {
        self.evidence.as_deref()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TNormEvidence {
    pub axioms: Verdict<AxiomWitness<UnitRat>>,
    pub weak_left: Verdict<Witness2D>,
    pub left: Verdict<Witness2D>,
    pub budget: u64,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness2D {
    pub point: (UnitRat, UnitRat),
    pub detail: String,
}

impl fmt::Display for Witness2D {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "at ({}, {}): {}",
            self.point.0, self.point.1, self.detail
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axiom {
    Commutativity,
    Associativity,
    Monotonicity,
    Identity,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axiom::Commutativity => "commutativity",
            Axiom::Associativity => "associativity",
            Axiom::Monotonicity => "monotonicity",
            Axiom::Identity => "identity",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomWitness<A> {
    pub axiom: Axiom,
    pub args: Vec<A>,
    pub detail: String,
}

impl<A: fmt::Display> fmt::Display for AxiomWitness<A> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let args: Vec<String> = self.args.iter().map(ToString::to_string).collect();
        write!(
            f,
            "{} at ({}): {}",
            self.axiom,
            args.join(", "),
            self.detail
        )
    }
}

/// Checks the four t-norm axioms on one triple, returning the first
/// violation found.
pub(crate) fn axiom_violation<A, F>(
    x: &A,
    y: &A,
    z: &A,
    identity: &A,
    op: F,
) -> Option<AxiomWitness<A>>
where
    A: Clone + Ord + fmt::Display,
    F: Fn(&A, &A) -> A,
{
    let fail = |axiom, args: &[&A], detail: String| {
        Some(AxiomWitness {
            axiom,
            args: args.iter().map(|a| (*a).clone()).collect(),
            detail,
        })
    };
    let xe = op(x, identity);
    let ex = op(identity, x);
    if &xe != x || &ex != x {
        return fail(
            Axiom::Identity,
            &[x],
            format!("op({x}, {identity}) = {xe}, op({identity}, {x}) = {ex}"),
        );
    }
    let (xy, yx) = (op(x, y), op(y, x));
    if xy != yx {
        return fail(
            Axiom::Commutativity,
            &[x, y],
            format!("op({x}, {y}) = {xy} but op({y}, {x}) = {yx}"),
        );
    }
    let left = op(&xy, z);
    let right = op(x, &op(y, z));
    if left != right {
        return fail(
            Axiom::Associativity,
            &[x, y, z],
            format!("op(op(x, y), z) = {left} but op(x, op(y, z)) = {right}"),
        );
    }
    let (lo, hi) = if x <= y { (x, y) } else { (y, x) };
    let (a, b) = (op(lo, z), op(hi, z));
    if a > b {
        return fail(
            Axiom::Monotonicity,
            &[lo, hi, z],
            format!("op({lo}, {z}) = {a} exceeds op({hi}, {z}) = {b}"),
        );
    }
    None
}

fn special_units() -> Vec<UnitRat> {
    [(1, 2), (1, 3), (2, 3), (1, 4), (3, 4), (0, 1), (1, 1)]
        .into_iter()
        .map(|(n, d)| UnitRat::frac(n, d))
        .collect()
}

pub fn check_tnorm_axioms(t: &TNormDesc, budget: u64, seed: u64) -> Verdict<AxiomWitness<UnitRat>> {
    let one = UnitRat::one();
    let op = |a: &UnitRat, b: &UnitRat| t.eval(a, b);
    let specials = special_units();
    let mut cases = 0u64;
    for x in &specials {
        for y in &specials {
            for z in &specials {
                cases += 1;
                if let Some(w) = axiom_violation(x, y, z, &one, op) {
                    return Verdict::Fail(w);
                }
            }
        }
    }
    let mut rng = sampling::rng_for(seed, 0x7A01);
    for _ in 0..budget {
        let x = sampling::unit(&mut rng, 32);
        let y = sampling::unit(&mut rng, 32);
        let z = sampling::unit(&mut rng, 32);
        cases += 1;
        if let Some(w) = axiom_violation(&x, &y, &z, &one, op) {
            return Verdict::Fail(w);
        }
    }
    Verdict::Pass { cases }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Region {
    /// `{u <= x, v < y} ∪ {u < x, v <= y}`
    LShaped,
    /// `{u < x, v < y}`
    Quadrant,
}

impl Region {
    fn label(self) -> &'static str {
        match self {
            Region::LShaped => "L-shaped",
            Region::Quadrant => "open-quadrant",
        }
    }
}

fn step_back(v: &UnitRat, k: u32) -> Option<UnitRat> {
    let delta = BigRational::new(1.into(), num::BigInt::from(2u8).pow(k));
    UnitRat::new(v.value() - delta).ok()
}

fn grid_fraction(v: &UnitRat, j: u64) -> UnitRat {
    UnitRat::from_rational_unchecked(v.value() * BigRational::new(j.into(), 8.into()))
}

/// The largest value found in the approach region by `2^-k` refinement and
/// a coarse grid. A lower bound for the true supremum.
fn sampled_sup(t: &TNormDesc, x: &UnitRat, y: &UnitRat, region: Region) -> UnitRat {
    let mut best = UnitRat::zero();
    let mut consider = |a: &UnitRat, b: &UnitRat| {
        let v = t.eval(a, b);
        if v > best {
            best = v;
        }
    };
    for k in 1..=REFINEMENT_DEPTH {
        match region {
            Region::LShaped => {
                if let Some(yb) = step_back(y, k) {
                    consider(x, &yb);
                }
                if let Some(xb) = step_back(x, k) {
                    consider(&xb, y);
                }
            }
            Region::Quadrant => {
                if let (Some(xb), Some(yb)) = (step_back(x, k), step_back(y, k)) {
                    consider(&xb, &yb);
                }
            }
        }
    }
    for j in 0..8 {
        match region {
            Region::LShaped => {
                consider(x, &grid_fraction(y, j));
                consider(&grid_fraction(x, j), y);
            }
            Region::Quadrant => {
                for i in 0..8 {
                    consider(&grid_fraction(x, i), &grid_fraction(y, j));
                }
            }
        }
    }
    best
}

fn continuity_check(t: &TNormDesc, budget: u64, seed: u64, region: Region) -> Verdict<Witness2D> {
    let mut cases = 0u64;
    // Exact probes on the declared switching curves.
    for boundary in &t.boundaries {
        for (x, y) in boundary.probe_points() {
            let sup = match region {
                Region::LShaped => t.sup_weak_left(&x, &y),
                Region::Quadrant => t.sup_left(&x, &y),
            };
            let Some(sup) = sup else { continue };
            cases += 1;
            let value = t.eval(&x, &y);
            if sup < value {
                return Verdict::Fail(Witness2D {
                    detail: format!("T = {value} but the {} supremum is {sup}", region.label()),
                    point: (x, y),
                });
            }
        }
    }
    // Past the largest move of a 1-Lipschitz (per argument) function over the
    // finest probe step: one coordinate for the L-shaped region, two for the
    // quadrant.
    let moved = match region {
        Region::LShaped => 1u8,
        Region::Quadrant => 2,
    };
    let threshold = BigRational::new(moved.into(), num::BigInt::from(2u8).pow(REFINEMENT_DEPTH));
    let mut rng = sampling::rng_for(seed, 0x7A02);
    for i in 0..budget {
        let (x, y) = if i % 8 == 0 {
            (UnitRat::one(), sampling::unit_positive(&mut rng, 64))
        } else {
            (
                sampling::unit_positive(&mut rng, 64),
                sampling::unit_positive(&mut rng, 64),
            )
        };
        cases += 1;
        let value = t.eval(&x, &y);
        let sup = sampled_sup(t, &x, &y, region);
        if value.value() - sup.value() > threshold {
            return Verdict::Fail(Witness2D {
                detail: format!(
                    "T = {value} but the {} probes reach only {sup}",
                    region.label()
                ),
                point: (x, y),
            });
        }
    }
    Verdict::Pass { cases }
}

pub fn check_weak_left_continuity(t: &TNormDesc, budget: u64, seed: u64) -> Verdict<Witness2D> {
    continuity_check(t, budget, seed, Region::LShaped)
}

pub fn check_left_continuity(t: &TNormDesc, budget: u64, seed: u64) -> Verdict<Witness2D> {
    continuity_check(t, budget, seed, Region::Quadrant)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u(s: &str) -> UnitRat {
        s.parse().unwrap()
    }

    fn t(name: &str) -> TNormDesc {
        catalog_tnorm(name).unwrap()
    }

    #[test]
    fn evaluation_examples() {
        assert_eq!(t("W").eval(&u("7/10"), &u("1/2")), u("1/5"));
        assert_eq!(t("nM_hat").eval(&u("1/2"), &u("1/2")), u("1/2"));
        assert_eq!(t("nM").eval(&u("1/2"), &u("1/2")), u("0"));
        assert_eq!(t("D").eval(&u("9/10"), &u("9/10")), u("0"));
        assert_eq!(t("D").eval(&u("1"), &u("9/10")), u("9/10"));
        assert_eq!(t("Pi").eval(&u("2/3"), &u("3/4")), u("1/2"));
        assert_eq!(t("M").eval(&u("2/3"), &u("3/4")), u("2/3"));
    }

    #[test]
    fn unknown_name_lists_valid_ones() {
        let err = catalog_tnorm("Q").unwrap_err();
        assert!(err.to_string().contains("nM_hat"));
    }

    #[test]
    fn axioms_hold_for_catalog() {
        for desc in full_tnorm_catalog() {
            let v = check_tnorm_axioms(&desc, 300, 1);
            assert!(v.passed(), "{}: {v}", desc.name);
        }
    }

    #[test]
    fn max_is_rejected_as_tnorm() {
        let fake = TNormDesc::custom("max", TNormFlags::continuous_tnorm(), |a, b| {
            std::cmp::max(a, b).clone()
        });
        let Verdict::Fail(w) = check_tnorm_axioms(&fake, 100, 0) else {
            panic!("max passed as a t-norm");
        };
        assert_eq!(w.axiom, Axiom::Identity);
        assert_eq!(w.args, vec![u("1/2")]);
    }

    #[test]
    fn nilpotent_min_hat_fails_weak_left_at_half_half() {
        let Verdict::Fail(w) = check_weak_left_continuity(&t("nM_hat"), 200, 3) else {
            panic!("nM_hat passed");
        };
        assert_eq!(w.point, (u("1/2"), u("1/2")));
    }

    #[test]
    fn drastic_fails_left_on_the_line_x_one() {
        let Verdict::Fail(w) = check_left_continuity(&t("D"), 200, 3) else {
            panic!("D passed");
        };
        assert!(w.point.0.is_one());
        assert!(!w.point.1.is_one() && !w.point.1.is_zero());
        assert!(check_weak_left_continuity(&t("D"), 200, 3).passed());
    }

    #[test]
    fn continuity_verdicts_match_declarations() {
        for desc in full_tnorm_catalog() {
            let weak = check_weak_left_continuity(&desc, 300, 9);
            let left = check_left_continuity(&desc, 300, 9);
            assert_eq!(
                weak.passed(),
                desc.declared.is_weakly_left_continuous,
                "{}",
                desc.name
            );
            assert_eq!(
                left.passed(),
                desc.declared.is_left_continuous,
                "{}",
                desc.name
            );
            if left.passed() {
                assert!(weak.passed(), "{}", desc.name);
            }
        }
    }

    #[test]
    fn sampled_check_catches_custom_discontinuity() {
        // Jumps from 0 to min above the line x + y = 3/2; not left continuous
        // there, and no boundary metadata is available.
        let flags = TNormFlags::continuous_tnorm();
        let odd = TNormDesc::custom("odd", flags, |a, b| {
            if a.value() + b.value() >= BigRational::new(3.into(), 2.into())
                || a.is_one()
                || b.is_one()
            {
                std::cmp::min(a, b).clone()
            } else {
                UnitRat::zero()
            }
        });
        assert!(!check_weak_left_continuity(&odd, 2000, 5).passed());
    }

    #[test]
    fn limits_on_the_anti_diagonal() {
        let nm = t("nM");
        let hat = t("nM_hat");
        let half = u("1/2");
        assert_eq!(nm.sup_left(&half, &half), Some(u("0")));
        assert_eq!(hat.sup_weak_left(&half, &half), Some(u("0")));
        assert_eq!(hat.sup_left(&u("3/4"), &u("1/2")), Some(u("1/2")));
        assert_eq!(t("Pi").sup_left(&half, &half), Some(u("1/4")));
    }

    #[test]
    fn drastic_product_bounds() {
        // D <= T <= M for every catalog entry on a grid.
        let d = t("D");
        let m = t("M");
        let grid: Vec<UnitRat> = (0..=12).map(|k| UnitRat::frac(k, 12)).collect();
        for desc in full_tnorm_catalog() {
            for x in &grid {
                for y in &grid {
                    let v = desc.eval(x, y);
                    assert!(d.eval(x, y) <= v && v <= m.eval(x, y), "{}", desc.name);
                }
            }
        }
    }
}
