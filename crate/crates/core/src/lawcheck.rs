//! Randomized law suites and the counterexample miner.
//!
//! Every case is built from its index alone (structured seeds first, then
//! draws from a ChaCha stream keyed by `(seed, law, index)`), so parallel
//! evaluation followed by "first failing index" is replay-deterministic.
//!
//! Closure has two kinds of witness. On step inputs it compares
//! [`tau_raw_at`](crate::tau::tau_raw_at) with the regularized `τ` at corner
//! abscissae. That only exposes plateaus of `L`: for step functions the raw
//! sup is always left-continuous away from them. Discontinuities of `T` are
//! reached with a ramp pair `f(u) = x0·min(u,a)/a`, `g(v) = y0·min(v,a)/a`,
//! for which both sides at `z0 = L(a,a)` are bounded exactly (see
//! [`RampPair`]).

use std::fmt;
use std::str::FromStr;

use num::{BigRational, One, Zero};
use rand::seq::index::sample;
use rand::Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::classifier::{classify, TriangleVerdict};
use crate::ddf::{parse_ddf, Ddf, Jump};
use crate::numeric::{ExtRat, UnitRat};
use crate::record::{Record, RecordError};
use crate::sampling::{self, rng_for};
use crate::tau::{corner_abscissae, tau, tau_raw_profile, TauError};
use crate::tconorms::{parse_tconorm, TConormDesc};
use crate::tnorms::{catalog_tnorm, TNormDesc};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RandomDdfConfig {
    pub max_jumps: usize,
    /// Largest denominator of a breakpoint. Breakpoints lie in `[0, 4]`.
    pub abscissa_pool: u64,
    /// Largest denominator of a jump value.
    pub value_pool: u64,
}

impl Default for RandomDdfConfig {
    fn default() -> Self {
        RandomDdfConfig {
            max_jumps: 4,
            abscissa_pool: 4,
            value_pool: 8,
        }
    }
}

const ABSCISSA_RANGE: u64 = 4;

fn abscissa_pool(den: u64) -> Vec<BigRational> {
    let mut out: Vec<BigRational> = (1..=den.max(1))
        .flat_map(|d| (0..=ABSCISSA_RANGE * d).map(move |n| BigRational::new(n.into(), d.into())))
        .collect();
    out.sort();
    out.dedup();
    out
}

fn value_pool(den: u64) -> Vec<UnitRat> {
    let mut out: Vec<UnitRat> = (1..=den.max(1))
        .flat_map(|d| (1..=d).map(move |n| UnitRat::frac(n, d)))
        .collect();
    out.sort();
    out.dedup();
    out
}

/// A canonical random DDF, deterministic in `seed`.
pub fn random_ddf(cfg: &RandomDdfConfig, seed: u64) -> Ddf {
    random_ddf_from(cfg, &mut rng_for(seed, 0))
}

pub fn random_ddf_from<R: Rng>(cfg: &RandomDdfConfig, rng: &mut R) -> Ddf {
    let xs = abscissa_pool(cfg.abscissa_pool);
    let ps = value_pool(cfg.value_pool);
    let k = rng.gen_range(0..=cfg.max_jumps).min(xs.len()).min(ps.len());
    let mut xi = sample(rng, xs.len(), k).into_vec();
    let mut pi = sample(rng, ps.len(), k).into_vec();
    xi.sort_unstable();
    pi.sort_unstable();
    let jumps = xi
        .into_iter()
        .zip(pi)
        .map(|(i, j)| Jump {
            at: xs[i].clone(),
            level: ps[j].clone(),
        })
        .collect();
    Ddf::from_jumps(jumps).expect("sorted distinct draws are canonical")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Law {
    Closure,
    Commutativity,
    Associativity,
    Identity,
    Monotonicity,
    EmbeddingEps,
    EmbeddingV,
}

impl Law {
    pub const ALL: [Law; 7] = [
        Law::Closure,
        Law::Commutativity,
        Law::Associativity,
        Law::Identity,
        Law::Monotonicity,
        Law::EmbeddingEps,
        Law::EmbeddingV,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Law::Closure => "closure",
            Law::Commutativity => "commutativity",
            Law::Associativity => "associativity",
            Law::Identity => "identity",
            Law::Monotonicity => "monotonicity",
            Law::EmbeddingEps => "embedding_eps",
            Law::EmbeddingV => "embedding_V",
        }
    }

    fn index(self) -> u64 {
        Law::ALL.iter().position(|l| *l == self).unwrap() as u64
    }
}

impl fmt::Display for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown law `{0}`")]
pub struct UnknownLaw(pub String);

impl FromStr for Law {
    type Err = UnknownLaw;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Law::ALL
            .into_iter()
            .find(|l| l.name() == s)
            .ok_or_else(|| UnknownLaw(s.to_string()))
    }
}

/// Ramps `f(u) = f_level·min(u,knee)/knee` and likewise `g`.
///
/// With `z0 = L(knee, knee)` finite, `τ_raw(z0) >= T(f_level, g_level)`. For
/// `L(u,v) < z0` monotonicity of `L` forces `u < knee` or `v < knee`, where the
/// ramp is strictly below its level, so the regularized value at `z0` is at
/// most `max(T(x0, y0-), T(x0-, y0))`. If `knee` is idempotent then
/// `max(u,v) <= L(u,v) < knee` puts both below, and the bound tightens to
/// `T(x0-, y0-)`. A raw lower bound above the regularized upper bound means
/// `τ(f,g)` is not left-continuous at `z0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RampPair {
    pub knee: BigRational,
    pub f_level: UnitRat,
    pub g_level: UnitRat,
}

/// Exact bounds `(z0, raw lower, regularized upper)`, if `T` has limits.
fn ramp_bounds(t: &TNormDesc, l: &TConormDesc, r: &RampPair) -> Option<(ExtRat, UnitRat, UnitRat)> {
    if r.knee <= BigRational::zero() || r.f_level.is_zero() || r.g_level.is_zero() {
        return None;
    }
    let a = ExtRat::Finite(r.knee.clone());
    let z0 = l.eval(&a, &a);
    if !z0.is_finite() || z0.is_zero() {
        return None;
    }
    let lower = t.eval(&r.f_level, &r.g_level);
    let upper = if z0 == a {
        t.sup_left(&r.f_level, &r.g_level)?
    } else {
        t.sup_weak_left(&r.f_level, &r.g_level)?
    };
    Some((z0, lower, upper))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LawWitness {
    /// Raw and regularized `τ(f,g)` differ at `x`.
    Closure {
        f: Ddf,
        g: Ddf,
        x: ExtRat,
        raw: UnitRat,
        regularized: UnitRat,
    },
    RampClosure {
        ramps: RampPair,
        x: ExtRat,
        raw_lower: UnitRat,
        regularized_upper: UnitRat,
    },
    /// The two sides of the law evaluated at `x` (for monotonicity the left
    /// side exceeds the right).
    Sides {
        inputs: Vec<Ddf>,
        x: ExtRat,
        lhs: UnitRat,
        rhs: UnitRat,
    },
}

fn two() -> BigRational {
    BigRational::from_integer(2.into())
}

/// Left and right sides of an equational law (or the two ends of the
/// monotonicity inequality) for the given inputs.
fn sides(law: Law, t: &TNormDesc, l: &TConormDesc, inputs: &[Ddf]) -> Result<(Ddf, Ddf), TauError> {
    let tau = |f: &Ddf, g: &Ddf| tau(t, l, f, g);
    Ok(match (law, inputs) {
        (Law::Commutativity, [f, g]) => (tau(f, g)?, tau(g, f)?),
        (Law::Associativity, [f, g, h]) => (tau(&tau(f, g)?, h)?, tau(f, &tau(g, h)?)?),
        (Law::Identity, [f]) => (tau(f, &Ddf::eps_zero())?, f.clone()),
        (Law::Monotonicity, [f, f2, g, g2]) => (tau(f, g)?, tau(f2, g2)?),
        (Law::EmbeddingEps, [eu, ev]) => {
            let joined = l.eval(&eu.last_jump_to_one(), &ev.last_jump_to_one());
            (tau(eu, ev)?, Ddf::epsilon(&joined))
        }
        (Law::EmbeddingV, [vp, vq]) => {
            let one = ExtRat::int(1);
            let met = t.eval(&vp.eval(&one), &vq.eval(&one));
            (tau(vp, vq)?, Ddf::v(&met))
        }
        _ => unreachable!("{law} with {} inputs", inputs.len()),
    })
}

/// First abscissa where `a` and `b` differ (`strict`: where `a > b`). Both are
/// constant on `]b_i, b_{i+1}]` for consecutive merged breakpoints, so the
/// right ends of those intervals and one point past the last are enough.
fn separating_abscissa(a: &Ddf, b: &Ddf, strict: bool) -> Option<ExtRat> {
    let mut pts: Vec<BigRational> = a.breakpoints().chain(b.breakpoints()).cloned().collect();
    pts.sort();
    pts.dedup();
    if let Some(last) = pts.last() {
        pts.push(last + BigRational::one());
    }
    pts.into_iter().map(ExtRat::Finite).find(|x| {
        let (va, vb) = (a.eval(x), b.eval(x));
        if strict {
            va > vb
        } else {
            va != vb
        }
    })
}

impl LawWitness {
    /// Recomputes the witness from its inputs alone.
    pub fn verify(&self, law: Law, t: &TNormDesc, l: &TConormDesc) -> bool {
        match self {
            LawWitness::Closure {
                f,
                g,
                x,
                raw,
                regularized,
            } => {
                if law != Law::Closure {
                    return false;
                }
                let (Ok(reg), Ok(r)) = (
                    tau(t, l, f, g),
                    tau_raw_profile(t, l, f, g, std::slice::from_ref(x)),
                ) else {
                    return false;
                };
                &r[0] == raw && &reg.eval(x) == regularized && raw != regularized
            }
            LawWitness::RampClosure {
                ramps,
                x,
                raw_lower,
                regularized_upper,
            } => {
                law == Law::Closure
                    && ramp_bounds(t, l, ramps).is_some_and(|(z0, lo, hi)| {
                        &z0 == x && &lo == raw_lower && &hi == regularized_upper && lo > hi
                    })
            }
            LawWitness::Sides {
                inputs,
                x,
                lhs,
                rhs,
            } => {
                if law == Law::Closure {
                    return false;
                }
                if law == Law::Monotonicity
                    && !(inputs.len() == 4
                        && inputs[0].leq(&inputs[1])
                        && inputs[2].leq(&inputs[3]))
                {
                    return false;
                }
                let arity = match law {
                    Law::Identity => 1,
                    Law::Associativity => 3,
                    Law::Monotonicity => 4,
                    _ => 2,
                };
                if inputs.len() != arity {
                    return false;
                }
                let Ok((a, b)) = sides(law, t, l, inputs) else {
                    return false;
                };
                let (va, vb) = (a.eval(x), b.eval(x));
                &va == lhs
                    && &vb == rhs
                    && if law == Law::Monotonicity {
                        va > vb
                    } else {
                        va != vb
                    }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Candidate {
    Steps(Vec<Ddf>),
    Ramp(RampPair),
}

fn run_case(
    law: Law,
    t: &TNormDesc,
    l: &TConormDesc,
    cand: &Candidate,
) -> Result<Option<LawWitness>, TauError> {
    match cand {
        Candidate::Ramp(r) => Ok(ramp_bounds(t, l, r).and_then(|(z0, lo, hi)| {
            (lo > hi).then(|| LawWitness::RampClosure {
                ramps: r.clone(),
                x: z0,
                raw_lower: lo,
                regularized_upper: hi,
            })
        })),
        Candidate::Steps(inputs) if law == Law::Closure => {
            let (f, g) = (&inputs[0], &inputs[1]);
            let reg = tau(t, l, f, g)?;
            let xs = corner_abscissae(l, f, g);
            let raws = tau_raw_profile(t, l, f, g, &xs)?;
            Ok(xs.into_iter().zip(raws).find_map(|(x, raw)| {
                let regularized = reg.eval(&x);
                (raw != regularized).then(|| LawWitness::Closure {
                    f: f.clone(),
                    g: g.clone(),
                    x,
                    raw,
                    regularized,
                })
            }))
        }
        Candidate::Steps(inputs) => {
            let (a, b) = sides(law, t, l, inputs)?;
            let strict = law == Law::Monotonicity;
            Ok(
                separating_abscissa(&a, &b, strict).map(|x| LawWitness::Sides {
                    inputs: inputs.clone(),
                    lhs: a.eval(&x),
                    rhs: b.eval(&x),
                    x,
                }),
            )
        }
    }
}

/// Abscissae worth trying: small integers and halves, `L`'s idempotent hints
/// and points clustered just around them.
fn abscissa_seeds(l: &TConormDesc) -> Vec<ExtRat> {
    let mut out: Vec<ExtRat> = ["1/2", "1", "3/2", "2"]
        .iter()
        .map(|s| s.parse().unwrap())
        .collect();
    for h in &l.idempotent_hints {
        if let ExtRat::Finite(p) = h {
            for (n, d) in [(1u8, 2u8), (9, 10), (19, 20), (1, 1), (21, 20)] {
                out.push(ExtRat::Finite(p * BigRational::new(n.into(), d.into())));
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Points on and next to `T`'s discontinuity curves, plus a few generic ones.
fn value_seeds(t: &TNormDesc) -> Vec<(UnitRat, UnitRat)> {
    let mut out: Vec<(UnitRat, UnitRat)> = Vec::new();
    for b in &t.boundaries {
        out.extend(b.probe_points().into_iter().take(6));
    }
    for (x, y) in [("1/2", "1/2"), ("1", "1/2"), ("1/2", "1"), ("1", "1")] {
        out.push((x.parse().unwrap(), y.parse().unwrap()));
    }
    let mut seen = Vec::new();
    out.retain(|p| {
        let fresh = !seen.contains(p);
        seen.push(p.clone());
        fresh
    });
    out
}

fn step(at: &BigRational, level: &UnitRat) -> Jump {
    Jump {
        at: at.clone(),
        level: level.clone(),
    }
}

/// A small family of step functions: point masses, `V_p`, and two-step
/// functions whose first level sits on a discontinuity curve of `T`.
fn ddf_family(t: &TNormDesc, l: &TConormDesc) -> Vec<Ddf> {
    let mut out: Vec<Ddf> = abscissa_seeds(l).iter().map(Ddf::epsilon).collect();
    for (p, _) in value_seeds(t).iter().take(6) {
        out.push(Ddf::v(p));
    }
    let half = BigRational::new(1.into(), 2.into());
    for (p, _) in value_seeds(t).iter().take(4) {
        if p.is_one() {
            continue;
        }
        for a in [half.clone(), BigRational::one()] {
            let jumps = vec![
                step(&a, p),
                step(&(&a + BigRational::one()), &UnitRat::one()),
            ];
            out.push(Ddf::from_jumps(jumps).unwrap());
        }
    }
    out.dedup();
    out
}

fn structured(law: Law, t: &TNormDesc, l: &TConormDesc) -> Vec<Candidate> {
    let fam = ddf_family(t, l);
    let n = fam.len();
    let steps = |v: Vec<Ddf>| Candidate::Steps(v);
    match law {
        Law::Closure => {
            let mut out = Vec::new();
            if t.kind().is_some() && l.kind().is_some() {
                let mut knees: Vec<BigRational> = l
                    .idempotent_hints
                    .iter()
                    .filter_map(|h| h.as_finite().cloned())
                    .collect();
                knees.extend([
                    BigRational::one(),
                    BigRational::new(1.into(), 2.into()),
                    two(),
                ]);
                knees.dedup();
                for a in &knees {
                    for (x0, y0) in value_seeds(t) {
                        out.push(Candidate::Ramp(RampPair {
                            knee: a.clone(),
                            f_level: x0,
                            g_level: y0,
                        }));
                    }
                }
            }
            let eps: Vec<Ddf> = abscissa_seeds(l).iter().map(Ddf::epsilon).collect();
            for f in &eps {
                for g in &eps {
                    out.push(steps(vec![f.clone(), g.clone()]));
                }
            }
            for i in 0..n {
                out.push(steps(vec![fam[i].clone(), fam[(i + 1) % n].clone()]));
            }
            out
        }
        Law::Commutativity => (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .take(64)
            .map(|(i, j)| steps(vec![fam[i].clone(), fam[j].clone()]))
            .collect(),
        Law::Associativity => (0..n)
            .map(|i| {
                steps(vec![
                    fam[i].clone(),
                    fam[(i + 1) % n].clone(),
                    fam[(i + 3) % n].clone(),
                ])
            })
            .collect(),
        Law::Identity => fam.into_iter().map(|f| steps(vec![f])).collect(),
        Law::Monotonicity => (0..n)
            .map(|i| {
                let (f, g) = (&fam[i], &fam[(i + 2) % n]);
                steps(vec![
                    f.clone(),
                    f.pointwise_max(&fam[(i + 1) % n]),
                    g.clone(),
                    g.pointwise_max(&fam[(i + 3) % n]),
                ])
            })
            .collect(),
        Law::EmbeddingEps => {
            let mut pts = abscissa_seeds(l);
            pts.extend([ExtRat::zero(), ExtRat::Infinity]);
            pts.iter()
                .flat_map(|u| pts.iter().map(move |v| (u, v)))
                .map(|(u, v)| steps(vec![Ddf::epsilon(u), Ddf::epsilon(v)]))
                .collect()
        }
        Law::EmbeddingV => value_seeds(t)
            .into_iter()
            .chain([(UnitRat::zero(), UnitRat::one())])
            .map(|(p, q)| steps(vec![Ddf::v(&p), Ddf::v(&q)]))
            .collect(),
    }
}

fn random_candidate(law: Law, cfg: &RandomDdfConfig, seed: u64, index: u64) -> Candidate {
    let mut rng = rng_for(seed, (law.index() << 48) | index);
    let mut draw =
        |n: usize| -> Vec<Ddf> { (0..n).map(|_| random_ddf_from(cfg, &mut rng)).collect() };
    match law {
        Law::Closure | Law::Commutativity => Candidate::Steps(draw(2)),
        Law::Associativity => Candidate::Steps(draw(3)),
        Law::Identity => Candidate::Steps(draw(1)),
        Law::Monotonicity => {
            let v = draw(4);
            Candidate::Steps(vec![
                v[0].clone(),
                v[0].pointwise_max(&v[2]),
                v[1].clone(),
                v[1].pointwise_max(&v[3]),
            ])
        }
        Law::EmbeddingEps => {
            let u = sampling::extended(&mut rng, cfg.abscissa_pool, ABSCISSA_RANGE);
            let v = sampling::extended(&mut rng, cfg.abscissa_pool, ABSCISSA_RANGE);
            Candidate::Steps(vec![Ddf::epsilon(&u), Ddf::epsilon(&v)])
        }
        Law::EmbeddingV => {
            let p = sampling::unit(&mut rng, cfg.value_pool);
            let q = sampling::unit(&mut rng, cfg.value_pool);
            Candidate::Steps(vec![Ddf::v(&p), Ddf::v(&q)])
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[allow(clippy::large_enum_variant)]
pub enum LawVerdict {
    Pass {
        cases: u64,
    },
    Fail {
        case: u64,
        witness: LawWitness,
    },
    /// The miner exhausted its budget on a pair not known to be a triangle
    /// function.
    Inconclusive {
        cases: u64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportKind {
    Check,
    Mine,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LawReport {
    pub kind: ReportKind,
    pub tnorm: String,
    pub tconorm: String,
    /// The law checked, or for a mining report the law that failed.
    pub law: Option<Law>,
    pub verdict: LawVerdict,
    pub seed: u64,
    pub budget: u64,
    pub cfg: RandomDdfConfig,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LawError {
    #[error(transparent)]
    Tau(#[from] TauError),
}

/// Runs the structured seeds for `law` and then `budget` random cases.
pub fn check_law(
    t: &TNormDesc,
    l: &TConormDesc,
    law: Law,
    cfg: &RandomDdfConfig,
    budget: u64,
    seed: u64,
) -> Result<LawReport, LawError> {
    let seeds = structured(law, t, l);
    let total = seeds.len() as u64 + budget;
    let found = (0..total)
        .into_par_iter()
        .map(|i| {
            let cand = match seeds.get(i as usize) {
                Some(c) => c.clone(),
                None => random_candidate(law, cfg, seed, i - seeds.len() as u64),
            };
            run_case(law, t, l, &cand).map(|w| w.map(|w| (i, w)))
        })
        .find_first(|r| !matches!(r, Ok(None)));
    let verdict = match found {
        None => LawVerdict::Pass { cases: total },
        Some(Ok(Some((case, witness)))) => LawVerdict::Fail { case, witness },
        Some(Err(e)) => return Err(e.into()),
        Some(Ok(None)) => unreachable!(),
    };
    Ok(LawReport {
        kind: ReportKind::Check,
        tnorm: t.name.clone(),
        tconorm: l.name.clone(),
        law: Some(law),
        verdict,
        seed,
        budget,
        cfg: *cfg,
    })
}

/// Searches all laws for a violation within `budget` cases in total.
///
/// Structured seeds of every law come first, interleaved; the random phase
/// cycles through the laws while the jump count grows from one to
/// `cfg.max_jumps`. With no failure the verdict is `Pass` only when the
/// classifier (on verified descriptors) says the pair is a triangle
/// function, and `Inconclusive` otherwise.
pub fn mine_counterexample(
    t: &TNormDesc,
    l: &TConormDesc,
    cfg: &RandomDdfConfig,
    budget: u64,
    seed: u64,
) -> Result<LawReport, LawError> {
    const ORDER: [Law; 7] = [
        Law::Closure,
        Law::Identity,
        Law::EmbeddingEps,
        Law::EmbeddingV,
        Law::Commutativity,
        Law::Associativity,
        Law::Monotonicity,
    ];
    let lists: Vec<Vec<Candidate>> = ORDER.iter().map(|&law| structured(law, t, l)).collect();
    let longest = lists.iter().map(Vec::len).max().unwrap_or(0);
    let mut seeds: Vec<(Law, Candidate)> = Vec::new();
    for i in 0..longest {
        for (law, list) in ORDER.iter().zip(&lists) {
            if let Some(c) = list.get(i) {
                seeds.push((*law, c.clone()));
            }
        }
    }
    seeds.truncate(budget as usize);
    let random_budget = budget - seeds.len() as u64;
    let max_jumps = cfg.max_jumps.max(1) as u64;
    let found = (0..budget)
        .into_par_iter()
        .map(|i| {
            let (law, cand) = match seeds.get(i as usize) {
                Some((law, c)) => (*law, c.clone()),
                None => {
                    let r = i - seeds.len() as u64;
                    let law = ORDER[(r % 7) as usize];
                    let jumps = 1 + r * max_jumps / random_budget.max(1);
                    let stage = RandomDdfConfig {
                        max_jumps: jumps.min(max_jumps) as usize,
                        ..*cfg
                    };
                    (law, random_candidate(law, &stage, seed, r))
                }
            };
            run_case(law, t, l, &cand).map(|w| w.map(|w| (i, law, w)))
        })
        .find_first(|r| !matches!(r, Ok(None)));
    let (law, verdict) = match found {
        Some(Ok(Some((case, law, witness)))) => (Some(law), LawVerdict::Fail { case, witness }),
        Some(Err(e)) => return Err(e.into()),
        Some(Ok(None)) => unreachable!(),
        None => {
            let triangle =
                matches!(classify(t, l), Ok(c) if c.verdict == TriangleVerdict::Triangle);
            let verdict = if triangle {
                LawVerdict::Pass { cases: budget }
            } else {
                LawVerdict::Inconclusive { cases: budget }
            };
            (None, verdict)
        }
    };
    Ok(LawReport {
        kind: ReportKind::Mine,
        tnorm: t.name.clone(),
        tconorm: l.name.clone(),
        law,
        verdict,
        seed,
        budget,
        cfg: *cfg,
    })
}

#[derive(Debug, Error)]
pub enum ReplayError {
    #[error(transparent)]
    Record(#[from] RecordError),
    #[error("unknown operation `{0}`")]
    Operation(String),
    #[error("bad witness: {0}")]
    Witness(String),
}

impl LawReport {
    pub fn passed(&self) -> bool {
        matches!(self.verdict, LawVerdict::Pass { .. })
    }

    pub fn witness(&self) -> Option<&LawWitness> {
        match &self.verdict {
            LawVerdict::Fail { witness, .. } => Some(witness),
            _ => None,
        }
    }

    pub fn to_record(&self) -> Record {
        let mut r = Record::new()
            .with(
                "report",
                match self.kind {
                    ReportKind::Check => "check",
                    ReportKind::Mine => "mine",
                },
            )
            .with("tnorm", &self.tnorm)
            .with("tconorm", &self.tconorm)
            .with("law", self.law.map_or("all", Law::name))
            .with("seed", self.seed)
            .with("budget", self.budget)
            .with("max_jumps", self.cfg.max_jumps)
            .with("abscissa_pool", self.cfg.abscissa_pool)
            .with("value_pool", self.cfg.value_pool);
        match &self.verdict {
            LawVerdict::Pass { cases } => {
                r.push("verdict", "pass");
                r.push("cases", cases);
            }
            LawVerdict::Inconclusive { cases } => {
                r.push("verdict", "inconclusive");
                r.push("cases", cases);
            }
            LawVerdict::Fail { case, witness } => {
                r.push("verdict", "fail");
                r.push("case", case);
                match witness {
                    LawWitness::Closure {
                        f,
                        g,
                        x,
                        raw,
                        regularized,
                    } => {
                        r.push("witness", "closure");
                        r.push("x", x);
                        r.push("raw", raw);
                        r.push("regularized", regularized);
                        r.push("f", f.serialize());
                        r.push("g", g.serialize());
                    }
                    LawWitness::RampClosure {
                        ramps,
                        x,
                        raw_lower,
                        regularized_upper,
                    } => {
                        r.push("witness", "ramp_closure");
                        r.push("x", x);
                        r.push("raw_lower", raw_lower);
                        r.push("regularized_upper", regularized_upper);
                        r.push("knee", crate::numeric::format_rational(&ramps.knee));
                        r.push("f_level", &ramps.f_level);
                        r.push("g_level", &ramps.g_level);
                    }
                    LawWitness::Sides {
                        inputs,
                        x,
                        lhs,
                        rhs,
                    } => {
                        r.push("witness", "sides");
                        r.push("x", x);
                        r.push("lhs", lhs);
                        r.push("rhs", rhs);
                        for (i, f) in inputs.iter().enumerate() {
                            r.push(&format!("in{i}"), f.serialize());
                        }
                    }
                }
            }
        }
        r
    }

    pub fn from_record(r: &Record) -> Result<Self, ReplayError> {
        let kind = match r.require("report")? {
            "check" => ReportKind::Check,
            "mine" => ReportKind::Mine,
            other => return Err(ReplayError::Operation(other.into())),
        };
        let law = match r.require("law")? {
            "all" => None,
            _ => Some(r.parse_field::<Law>("law")?),
        };
        let ddf = |key: &str| -> Result<Ddf, ReplayError> {
            parse_ddf(r.require(key)?).map_err(|e| ReplayError::Witness(format!("{key}: {e}")))
        };
        let verdict = match r.require("verdict")? {
            "pass" => LawVerdict::Pass {
                cases: r.parse_field("cases")?,
            },
            "inconclusive" => LawVerdict::Inconclusive {
                cases: r.parse_field("cases")?,
            },
            "fail" => {
                let witness = match r.require("witness")? {
                    "closure" => LawWitness::Closure {
                        f: ddf("f")?,
                        g: ddf("g")?,
                        x: r.parse_field("x")?,
                        raw: r.parse_field("raw")?,
                        regularized: r.parse_field("regularized")?,
                    },
                    "ramp_closure" => {
                        let knee: ExtRat = r.parse_field("knee")?;
                        let knee = knee
                            .as_finite()
                            .cloned()
                            .ok_or_else(|| ReplayError::Witness("infinite knee".into()))?;
                        LawWitness::RampClosure {
                            ramps: RampPair {
                                knee,
                                f_level: r.parse_field("f_level")?,
                                g_level: r.parse_field("g_level")?,
                            },
                            x: r.parse_field("x")?,
                            raw_lower: r.parse_field("raw_lower")?,
                            regularized_upper: r.parse_field("regularized_upper")?,
                        }
                    }
                    "sides" => {
                        let inputs = (0..)
                            .map(|i| format!("in{i}"))
                            .take_while(|k| r.get(k).is_some())
                            .map(|k| ddf(&k))
                            .collect::<Result<Vec<_>, _>>()?;
                        LawWitness::Sides {
                            inputs,
                            x: r.parse_field("x")?,
                            lhs: r.parse_field("lhs")?,
                            rhs: r.parse_field("rhs")?,
                        }
                    }
                    other => return Err(ReplayError::Witness(other.into())),
                };
                LawVerdict::Fail {
                    case: r.parse_field("case")?,
                    witness,
                }
            }
            other => return Err(ReplayError::Operation(other.into())),
        };
        Ok(LawReport {
            kind,
            tnorm: r.require("tnorm")?.to_string(),
            tconorm: r.require("tconorm")?.to_string(),
            law,
            verdict,
            seed: r.parse_field("seed")?,
            budget: r.parse_field("budget")?,
            cfg: RandomDdfConfig {
                max_jumps: r.parse_field("max_jumps")?,
                abscissa_pool: r.parse_field("abscissa_pool")?,
                value_pool: r.parse_field("value_pool")?,
            },
        })
    }

    /// Re-verifies a failure witness against freshly built catalog entries.
    /// `None` for reports without a witness.
    pub fn reverify(&self) -> Option<bool> {
        let witness = self.witness()?;
        let law = self.law?;
        let (Ok(t), Ok(l)) = (catalog_tnorm(&self.tnorm), parse_tconorm(&self.tconorm)) else {
            return Some(false);
        };
        Some(witness.verify(law, &t, &l))
    }
}

impl fmt::Display for LawReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_record())
    }
}
