//! Distance distribution functions as canonical left-continuous step functions.
//!
//! A [`Ddf`] stores the jumps `(x_k, p_k)` with both coordinates strictly
//! increasing. The value at a finite `t` is the largest `p_k` with `x_k < t`,
//! so a jump only takes effect strictly after its abscissa. The value at
//! infinity is always 1 and is not stored.

use std::fmt;
use std::str::FromStr;

use num::{BigRational, One, Zero};
use thiserror::Error;

use crate::numeric::{ExtRat, UnitRat};

pub const HEADER: &str = "DDF v1";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct DdfParseError {
    pub line: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Jump {
    pub at: BigRational,
    pub level: UnitRat,
}

/// Unordered, possibly redundant jump data prior to canonicalization.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct JumpListRaw(pub Vec<(ExtRat, UnitRat)>);

impl JumpListRaw {
    pub fn push(&mut self, at: ExtRat, level: UnitRat) {
        self.0.push((at, level));
    }
}

impl FromIterator<(ExtRat, UnitRat)> for JumpListRaw {
    fn from_iter<I: IntoIterator<Item = (ExtRat, UnitRat)>>(iter: I) -> Self {
        JumpListRaw(iter.into_iter().collect())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Ddf {
    jumps: Vec<Jump>,
}

/// Sorts, merges equal abscissae, and removes dominated or zero jumps.
///
/// Jumps at infinity are dropped: they can only affect the value at
/// infinity, which is 1 regardless.
pub fn canonicalize(raw: JumpListRaw) -> Ddf {
    let mut finite: Vec<(BigRational, UnitRat)> = raw
        .0
        .into_iter()
        .filter_map(|(at, level)| match at {
            ExtRat::Finite(x) => Some((x, level)),
            ExtRat::Infinity => None,
        })
        .collect();
    finite.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| b.1.cmp(&a.1)));

    let mut jumps: Vec<Jump> = Vec::new();
    let mut current = UnitRat::zero();
    for (at, level) in finite {
        if level > current {
            current = level.clone();
            match jumps.last_mut() {
                Some(last) if last.at == at => last.level = level,
                _ => jumps.push(Jump { at, level }),
            }
        }
    }
    Ddf { jumps }
}

impl Ddf {
    /// Validates already-ordered jumps without reordering them.
    pub fn from_jumps(jumps: Vec<Jump>) -> Result<Self, String> {
        for pair in jumps.windows(2) {
            if pair[0].at >= pair[1].at {
                return Err(format!(
                    "abscissae not strictly increasing at {}",
                    pair[1].at
                ));
            }
            if pair[0].level >= pair[1].level {
                return Err(format!("levels not strictly increasing at {}", pair[1].at));
            }
        }
        if let Some(first) = jumps.first() {
            if first.level.is_zero() {
                return Err("zero-level jump".to_string());
            }
        }
        Ok(Ddf { jumps })
    }

    /// `ε_r`: the distribution of the constant distance `r`.
    pub fn epsilon(r: &ExtRat) -> Self {
        match r {
            ExtRat::Finite(x) => Ddf {
                jumps: vec![Jump {
                    at: x.clone(),
                    level: UnitRat::one(),
                }],
            },
            ExtRat::Infinity => Ddf::eps_infinity(),
        }
    }

    /// `V_p`: value `p` on every finite positive distance.
    pub fn v(p: &UnitRat) -> Self {
        if p.is_zero() {
            return Ddf::eps_infinity();
        }
        Ddf {
            jumps: vec![Jump {
                at: BigRational::zero(),
                level: p.clone(),
            }],
        }
    }

    pub fn eps_zero() -> Self {
        Ddf::epsilon(&ExtRat::zero())
    }

    pub fn eps_infinity() -> Self {
        Ddf { jumps: Vec::new() }
    }

    pub fn jumps(&self) -> &[Jump] {
        &self.jumps
    }

    pub fn is_eps_infinity(&self) -> bool {
        self.jumps.is_empty()
    }

    pub fn eval(&self, t: &ExtRat) -> UnitRat {
        match t {
            ExtRat::Infinity => UnitRat::one(),
            ExtRat::Finite(x) => {
                let n = self.jumps.partition_point(|j| &j.at < x);
                self.level_before(n)
            }
        }
    }

    /// The constant value on the band just to the right of finite `x`.
    pub fn value_after(&self, x: &BigRational) -> UnitRat {
        let n = self.jumps.partition_point(|j| &j.at <= x);
        self.level_before(n)
    }

    fn level_before(&self, n: usize) -> UnitRat {
        if n == 0 {
            UnitRat::zero()
        } else {
            self.jumps[n - 1].level.clone()
        }
    }

    /// `sup{t : f(t) < 1}`.
    pub fn last_jump_to_one(&self) -> ExtRat {
        match self.jumps.last() {
            Some(j) if j.level.is_one() => ExtRat::Finite(j.at.clone()),
            _ => ExtRat::Infinity,
        }
    }

    /// Pointwise order, decided on the merged breakpoints.
    pub fn leq(&self, other: &Ddf) -> bool {
        self.jumps
            .iter()
            .chain(other.jumps.iter())
            .all(|j| self.value_after(&j.at) <= other.value_after(&j.at))
    }

    pub fn pointwise_max(&self, other: &Ddf) -> Ddf {
        canonicalize(
            self.jumps
                .iter()
                .chain(other.jumps.iter())
                .map(|j| (ExtRat::Finite(j.at.clone()), j.level.clone()))
                .collect(),
        )
    }

    /// `t ↦ f(max{0, t - s})`; for `s = ∞` this is `ε_∞`.
    pub fn shift(&self, s: &ExtRat) -> Ddf {
        match s {
            ExtRat::Infinity => Ddf::eps_infinity(),
            ExtRat::Finite(s) => Ddf {
                jumps: self
                    .jumps
                    .iter()
                    .map(|j| Jump {
                        at: &j.at + s,
                        level: j.level.clone(),
                    })
                    .collect(),
            },
        }
    }

    pub fn breakpoints(&self) -> impl Iterator<Item = &BigRational> {
        self.jumps.iter().map(|j| &j.at)
    }

    /// `(t, f(t))` samples at 0, each breakpoint, each band midpoint, and one
    /// unit past the last breakpoint.
    pub fn sample_points(&self) -> Vec<(ExtRat, UnitRat)> {
        let mut ts: Vec<BigRational> = vec![BigRational::zero()];
        for (i, j) in self.jumps.iter().enumerate() {
            ts.push(j.at.clone());
            let next = match self.jumps.get(i + 1) {
                Some(n) => (&j.at + &n.at) / BigRational::from_integer(2.into()),
                None => &j.at + BigRational::one(),
            };
            ts.push(next);
        }
        ts.sort();
        ts.dedup();
        ts.into_iter()
            .map(|t| {
                let t = ExtRat::Finite(t);
                let v = self.eval(&t);
                (t, v)
            })
            .collect()
    }

    pub fn serialize(&self) -> String {
        let mut out = String::from(HEADER);
        for j in &self.jumps {
            out.push_str(&format!(
                "\njump {} {}",
                ExtRat::Finite(j.at.clone()),
                j.level
            ));
        }
        out
    }
}

pub fn parse_ddf(text: &str) -> Result<Ddf, DdfParseError> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, first)) if first.trim_end() == HEADER => {}
        _ => {
            return Err(DdfParseError {
                line: 1,
                message: format!("expected `{HEADER}`"),
            })
        }
    }
    let mut jumps: Vec<Jump> = Vec::new();
    for (idx, line) in lines {
        let line_no = idx + 1;
        let err = |message: String| DdfParseError {
            line: line_no,
            message,
        };
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = trimmed.split_whitespace().collect();
        let [kw, x, p] = fields[..] else {
            return Err(err(format!("expected `jump <x> <p>`, got `{trimmed}`")));
        };
        if kw != "jump" {
            return Err(err(format!("unknown directive `{kw}`")));
        }
        let at = match x.parse::<ExtRat>().map_err(|e| err(e.to_string()))? {
            ExtRat::Finite(r) => r,
            ExtRat::Infinity => return Err(err("jump abscissa must be finite".into())),
        };
        let level = p.parse::<UnitRat>().map_err(|e| err(e.to_string()))?;
        if level.is_zero() {
            return Err(err("jump level must be positive".into()));
        }
        if let Some(prev) = jumps.last() {
            if at <= prev.at {
                return Err(err(format!("abscissa {x} does not increase")));
            }
            if level <= prev.level {
                return Err(err(format!("level {p} does not increase")));
            }
        }
        jumps.push(Jump { at, level });
    }
    Ok(Ddf { jumps })
}

impl fmt::Display for Ddf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.serialize())
    }
}

impl FromStr for Ddf {
    type Err = DdfParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_ddf(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(s: &str) -> ExtRat {
        s.parse().unwrap()
    }

    fn u(s: &str) -> UnitRat {
        s.parse().unwrap()
    }

    fn raw(pairs: &[(&str, &str)]) -> JumpListRaw {
        pairs.iter().map(|(x, p)| (e(x), u(p))).collect()
    }

    #[test]
    fn canonicalize_examples() {
        let f = canonicalize(raw(&[("2", "1/2"), ("1", "1/2")]));
        assert_eq!(f.serialize(), "DDF v1\njump 1 1/2");
        assert_eq!(canonicalize(JumpListRaw::default()), Ddf::eps_infinity());
        let f = canonicalize(raw(&[("0", "1/3"), ("5", "1/4")]));
        assert_eq!(f.serialize(), "DDF v1\njump 0 1/3");
    }

    #[test]
    fn canonicalize_merges_same_abscissa_and_drops_zero() {
        let f = canonicalize(raw(&[("1", "1/4"), ("1", "3/4"), ("0", "0"), ("2", "1")]));
        assert_eq!(f.serialize(), "DDF v1\njump 1 3/4\njump 2 1");
        let f = canonicalize(raw(&[("inf", "1/2"), ("3", "1/5")]));
        assert_eq!(f.serialize(), "DDF v1\njump 3 1/5");
    }

    #[test]
    fn eval_examples() {
        let eps2 = Ddf::epsilon(&e("2"));
        assert_eq!(eps2.eval(&e("2")), u("0"));
        assert_eq!(eps2.eval(&e("3")), u("1"));
        assert_eq!(Ddf::v(&u("1/2")).eval(&e("1")), u("1/2"));
        assert_eq!(Ddf::eps_infinity().eval(&e("1000000")), u("0"));
        assert_eq!(Ddf::eps_infinity().eval(&ExtRat::Infinity), u("1"));
        assert_eq!(Ddf::eps_zero().eval(&e("0")), u("0"));
    }

    #[test]
    fn constructors() {
        assert_eq!(Ddf::epsilon(&e("0")), Ddf::eps_zero());
        assert_eq!(Ddf::epsilon(&e("3/2")).serialize(), "DDF v1\njump 3/2 1");
        assert_eq!(Ddf::epsilon(&ExtRat::Infinity), Ddf::eps_infinity());
        assert_eq!(Ddf::v(&u("1")), Ddf::eps_zero());
        assert_eq!(Ddf::v(&u("0")), Ddf::eps_infinity());
        assert_eq!(Ddf::v(&u("1/3")).serialize(), "DDF v1\njump 0 1/3");
    }

    #[test]
    fn order_examples() {
        assert!(Ddf::epsilon(&e("3")).leq(&Ddf::epsilon(&e("2"))));
        assert!(Ddf::v(&u("1/3")).leq(&Ddf::v(&u("1/2"))));
        // At t = 1/2, V_{1/2} is above ε_1; at t = 2 it is below.
        assert!(!Ddf::epsilon(&e("1")).leq(&Ddf::v(&u("1/2"))));
        assert!(!Ddf::v(&u("1/2")).leq(&Ddf::epsilon(&e("1"))));
    }

    #[test]
    fn last_jump_examples() {
        assert_eq!(Ddf::epsilon(&e("2")).last_jump_to_one(), e("2"));
        assert_eq!(Ddf::v(&u("1/2")).last_jump_to_one(), ExtRat::Infinity);
        assert_eq!(Ddf::eps_zero().last_jump_to_one(), e("0"));
    }

    #[test]
    fn parse_examples() {
        assert_eq!(parse_ddf("DDF v1").unwrap(), Ddf::eps_infinity());
        let err = parse_ddf("DDF v1\njump 1 1/2\njump 1 3/4").unwrap_err();
        assert_eq!(err.line, 3);
        let f = parse_ddf("DDF v1\n# comment\n\njump 3/2 1\n").unwrap();
        assert_eq!(f, Ddf::epsilon(&e("3/2")));
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        assert_eq!(parse_ddf("DDF v2").unwrap_err().line, 1);
        assert_eq!(
            parse_ddf("DDF v1\njump 1 1/2\njump 2 1/2")
                .unwrap_err()
                .line,
            3
        );
        assert_eq!(parse_ddf("DDF v1\njump inf 1").unwrap_err().line, 2);
        assert_eq!(parse_ddf("DDF v1\njump 1 3/2").unwrap_err().line, 2);
        assert_eq!(parse_ddf("DDF v1\nstep 1 1").unwrap_err().line, 2);
        assert_eq!(parse_ddf("DDF v1\njump 1 0").unwrap_err().line, 2);
    }

    #[test]
    fn left_continuity_at_jumps() {
        let f = parse_ddf("DDF v1\njump 1 1/4\njump 2 1/2\njump 3 1").unwrap();
        assert_eq!(f.eval(&e("1")), u("0"));
        assert_eq!(f.eval(&e("2")), u("1/4"));
        assert_eq!(f.eval(&e("3")), u("1/2"));
        assert_eq!(f.value_after(&BigRational::from_integer(3.into())), u("1"));
    }

    #[test]
    fn shift_and_max() {
        let f = parse_ddf("DDF v1\njump 0 1/2").unwrap();
        assert_eq!(f.shift(&e("1")).serialize(), "DDF v1\njump 1 1/2");
        assert_eq!(f.shift(&ExtRat::Infinity), Ddf::eps_infinity());
        let g = Ddf::epsilon(&e("2"));
        assert_eq!(
            f.pointwise_max(&g).serialize(),
            "DDF v1\njump 0 1/2\njump 2 1"
        );
    }
}
