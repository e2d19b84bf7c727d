//! Exact `τ_{T,L}` on step functions.
//!
//! [`tau`] returns the left-continuous regularization
//! `x ↦ sup{T(f(u), g(v)) : L(u,v) < x}`. On step inputs `T(f(u), g(v))` is
//! constant on the half-open cells `]x_k, x_{k+1}] × ]y_l, y_{l+1}]`, and for a
//! continuous increasing `L` a cell meets `{L < x}` exactly when its lower
//! corner does (the corner rule). The result jumps only at corner images.
//!
//! [`tau_raw_at`] evaluates the unregularized `sup{… : L(u,v) = x}` by deciding
//! whether `x` lies in the image of each cell. [`grid_oracle_tau_at`] is an
//! independent evaluator that only ever calls `f`, `g`, `T`, `L` at points.

use num::{BigInt, BigRational, One, Zero};
use thiserror::Error;

use crate::ddf::{canonicalize, Ddf, JumpListRaw};
use crate::numeric::{ExtRat, UnitRat};
use crate::tconorms::{TConormDesc, TConormKind};
use crate::tnorms::TNormDesc;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TauError {
    #[error("t-conorm `{0}` is not supported by the step-function engine")]
    UnsupportedPair(String),
    #[error("t-conorm `{0}` is not a cataloged Archimedean t-conorm (plus or nilpotent_rat)")]
    NotArchimedean(String),
    #[error("need 0 < y < x, got y = {y}, x = {x}")]
    BadAbscissae { y: String, x: String },
}

/// A maximal interval on which a step function takes one positive value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Band {
    pub lower: BigRational,
    /// `None` for the unbounded band `]lower, ∞[`.
    pub upper: Option<BigRational>,
    pub value: UnitRat,
}

fn bands(f: &Ddf) -> Vec<Band> {
    let jumps = f.jumps();
    jumps
        .iter()
        .enumerate()
        .map(|(i, j)| Band {
            lower: j.at.clone(),
            upper: jumps.get(i + 1).map(|n| n.at.clone()),
            value: j.level.clone(),
        })
        .collect()
}

/// Cell decomposition of `[0,∞[²` for a pair of step functions.
///
/// The zero-valued bands `]0, x_0]` are omitted; they contribute `T(0, ·) = 0`.
#[derive(Debug, Clone)]
pub struct RectangleGrid {
    pub f_bands: Vec<Band>,
    pub g_bands: Vec<Band>,
    /// `cell_values[k][l] = T(f on band k, g on band l)`.
    pub cell_values: Vec<Vec<UnitRat>>,
}

impl RectangleGrid {
    pub fn new(t: &TNormDesc, f: &Ddf, g: &Ddf) -> Self {
        let f_bands = bands(f);
        let g_bands = bands(g);
        let cell_values = f_bands
            .iter()
            .map(|a| g_bands.iter().map(|b| t.eval(&a.value, &b.value)).collect())
            .collect();
        RectangleGrid {
            f_bands,
            g_bands,
            cell_values,
        }
    }

    pub fn cells(&self) -> impl Iterator<Item = (&Band, &Band, &UnitRat)> {
        self.f_bands.iter().enumerate().flat_map(move |(k, a)| {
            self.g_bands
                .iter()
                .enumerate()
                .map(move |(l, b)| (a, b, &self.cell_values[k][l]))
        })
    }
}

fn catalog_kind(l: &TConormDesc) -> Result<&TConormKind, TauError> {
    l.kind()
        .ok_or_else(|| TauError::UnsupportedPair(l.name.clone()))
}

fn finite(x: &BigRational) -> ExtRat {
    ExtRat::Finite(x.clone())
}

/// The regularized `τ_{T,L}(f, g)`.
pub fn tau(t: &TNormDesc, l: &TConormDesc, f: &Ddf, g: &Ddf) -> Result<Ddf, TauError> {
    let kind = catalog_kind(l)?;
    if *kind == TConormKind::Drastic {
        // Off the axes every pair maps to ∞, and on the axes T(0, ·) = 0.
        return Ok(Ddf::eps_infinity());
    }
    let grid = RectangleGrid::new(t, f, g);
    let raw: JumpListRaw = grid
        .cells()
        .map(|(a, b, value)| {
            (
                kind.apply(&finite(&a.lower), &finite(&b.lower)),
                value.clone(),
            )
        })
        .collect();
    Ok(canonicalize(raw))
}

/// The unregularized `sup{T(f(u), g(v)) : L(u,v) = x}`.
pub fn tau_raw_at(
    t: &TNormDesc,
    l: &TConormDesc,
    f: &Ddf,
    g: &Ddf,
    x: &ExtRat,
) -> Result<UnitRat, TauError> {
    let kind = catalog_kind(l)?;
    Ok(raw_with_grid(kind, &RectangleGrid::new(t, f, g), x))
}

/// [`tau_raw_at`] at several abscissae, sharing one cell decomposition.
pub fn tau_raw_profile(
    t: &TNormDesc,
    l: &TConormDesc,
    f: &Ddf,
    g: &Ddf,
    xs: &[ExtRat],
) -> Result<Vec<UnitRat>, TauError> {
    let kind = catalog_kind(l)?;
    let grid = RectangleGrid::new(t, f, g);
    Ok(xs.iter().map(|x| raw_with_grid(kind, &grid, x)).collect())
}

fn raw_with_grid(kind: &TConormKind, grid: &RectangleGrid, x: &ExtRat) -> UnitRat {
    let x_val = match x {
        ExtRat::Infinity => return UnitRat::one(),
        ExtRat::Finite(v) if v.is_zero() => return UnitRat::zero(),
        ExtRat::Finite(v) => v,
    };
    if *kind == TConormKind::Drastic {
        return UnitRat::zero();
    }
    let mut best = UnitRat::zero();
    for (a, b, value) in grid.cells() {
        if value <= &best {
            continue;
        }
        let (lo_u, lo_v) = (finite(&a.lower), finite(&b.lower));
        let corner = kind.apply(&lo_u, &lo_v);
        let above_floor = match corner.as_finite() {
            None => false,
            Some(c) => c < x_val || (c == x_val && kind.plateau_at(&lo_u, &lo_v)),
        };
        if !above_floor {
            continue;
        }
        let below_ceiling = match (&a.upper, &b.upper) {
            (Some(hu), Some(hv)) => x <= &kind.apply(&finite(hu), &finite(hv)),
            // Continuous t-conorms tend to ∞ along an unbounded band.
            _ => true,
        };
        if below_ceiling {
            best = value.clone();
        }
    }
    best
}

/// `x ↦ max{f(max{0, x - g^∧(1)}), g(max{0, x - f^∧(1)})}`, the known closed
/// form of `τ_{D,+}`.
pub fn tau_d_closed_form(f: &Ddf, g: &Ddf) -> Ddf {
    f.shift(&g.last_jump_to_one())
        .pointwise_max(&g.shift(&f.last_jump_to_one()))
}

fn half(a: &BigRational, b: &BigRational) -> BigRational {
    (a + b) / BigRational::from_integer(2.into())
}

/// For an Archimedean `L` and `0 < y < x`, a pair `(u, v)` with `L(u,v) = x`
/// and `T(f(u), g(v)) >= τ_{T,L}(f,g)(y)`.
///
/// Picks a cell whose lower corner maps below `y` and whose value attains
/// `τ(y)`, then solves `L(u, v) = x` with `u` inside the cell's `u`-band and
/// `v` above its lower `v` edge.
pub fn lemma_a_witness(
    t: &TNormDesc,
    l: &TConormDesc,
    f: &Ddf,
    g: &Ddf,
    y: &ExtRat,
    x: &ExtRat,
) -> Result<(ExtRat, ExtRat), TauError> {
    let kind = match l.kind() {
        Some(k @ (TConormKind::Plus | TConormKind::NilpotentRat)) => k,
        _ => return Err(TauError::NotArchimedean(l.name.clone())),
    };
    if y.is_zero() || y >= x || y.is_infinite() {
        return Err(TauError::BadAbscissae {
            y: y.to_string(),
            x: x.to_string(),
        });
    }
    let grid = RectangleGrid::new(t, f, g);
    let chosen = grid
        .cells()
        .filter(|(a, b, _)| &kind.apply(&finite(&a.lower), &finite(&b.lower)) < y)
        .fold(None::<(&Band, &Band, &UnitRat)>, |best, cell| match best {
            Some(b) if b.2 >= cell.2 => Some(b),
            _ => Some(cell),
        });
    let Some((a, b, _)) = chosen else {
        // τ(y) = 0, so any pair on the level set will do.
        return Ok((ExtRat::zero(), x.clone()));
    };

    let first_try = match &a.upper {
        Some(hi) => half(&a.lower, hi),
        None => &a.lower + BigRational::one(),
    };
    let v_floor = finite(&b.lower);
    let solve = |u: &BigRational| kind.solve_second(&finite(u), x).filter(|v| v > &v_floor);
    if let Some(v) = solve(&first_try) {
        return Ok((finite(&first_try), v));
    }
    // Largest admissible u: L(u_max, y_l) = x. Lies above the band's lower
    // edge because L(lower corner) < y < x.
    let u_max = kind
        .solve_second(&v_floor, x)
        .and_then(|u| u.as_finite().cloned())
        .expect("finite x has a finite solution");
    let u = half(&a.lower, &u_max);
    let v = solve(&u).expect("midpoint below u_max leaves v above the floor");
    Ok((finite(&u), v))
}

/// Number of halvings used to approach each breakpoint from the right.
pub const ORACLE_REFINEMENT: u32 = 48;

/// Point-probe evaluator for the regularized `τ`, independent of the corner
/// rule: it only evaluates `f`, `g`, `T`, `L` at enumerated points.
///
/// Probes are `0`, every breakpoint, band midpoints, one past the last
/// breakpoint and `∞`, all paired with each other, plus pairs of points
/// `2^-j` of a band width to the right of each pair of breakpoints.
#[derive(Debug, Clone)]
pub struct GridOracle {
    /// `(L(u,v), T(f(u), g(v)))`, sorted by the first component, with the
    /// second replaced by its running maximum.
    samples: Vec<(ExtRat, UnitRat)>,
}

fn base_probes(f: &Ddf) -> Vec<ExtRat> {
    let mut out: Vec<ExtRat> = vec![ExtRat::zero(), ExtRat::Infinity];
    let pts: Vec<&BigRational> = f.breakpoints().collect();
    for (i, b) in pts.iter().enumerate() {
        out.push(finite(b));
        match pts.get(i + 1) {
            Some(n) => out.push(ExtRat::Finite(half(b, n))),
            None => out.push(ExtRat::Finite(*b + BigRational::one())),
        }
    }
    out
}

/// For each breakpoint, points `width · 2^-j` to its right, `j = 1..=K`.
fn refined_probes(f: &Ddf) -> Vec<Vec<ExtRat>> {
    let pts: Vec<&BigRational> = f.breakpoints().collect();
    pts.iter()
        .enumerate()
        .map(|(i, b)| {
            let width = match pts.get(i + 1) {
                Some(n) => *n - *b,
                None => BigRational::one(),
            };
            (1..=ORACLE_REFINEMENT)
                .map(|j| {
                    let step = &width / BigRational::from_integer(BigInt::from(2u8).pow(j));
                    ExtRat::Finite(*b + step)
                })
                .collect()
        })
        .collect()
}

impl GridOracle {
    pub fn new(t: &TNormDesc, l: &TConormDesc, f: &Ddf, g: &Ddf) -> Self {
        let mut samples: Vec<(ExtRat, UnitRat)> = Vec::new();
        let mut probe = |u: &ExtRat, v: &ExtRat| {
            let value = t.eval(&f.eval(u), &g.eval(v));
            if !value.is_zero() {
                samples.push((l.eval(u, v), value));
            }
        };
        let (fb, gb) = (base_probes(f), base_probes(g));
        for u in &fb {
            for v in &gb {
                probe(u, v);
            }
        }
        let (fr, gr) = (refined_probes(f), refined_probes(g));
        for us in &fr {
            for vs in &gr {
                for (u, v) in us.iter().zip(vs.iter()) {
                    probe(u, v);
                }
            }
        }
        samples.sort_by(|a, b| a.0.cmp(&b.0));
        let mut running = UnitRat::zero();
        for s in samples.iter_mut() {
            if s.1 > running {
                running = s.1.clone();
            }
            s.1 = running.clone();
        }
        GridOracle { samples }
    }

    /// `max{T(f(u), g(v)) : probed (u,v), L(u,v) < x}`; `1` at `x = ∞`.
    pub fn at(&self, x: &ExtRat) -> UnitRat {
        if x.is_infinite() {
            return UnitRat::one();
        }
        let n = self.samples.partition_point(|(lv, _)| lv < x);
        if n == 0 {
            UnitRat::zero()
        } else {
            self.samples[n - 1].1.clone()
        }
    }
}

pub fn grid_oracle_tau_at(t: &TNormDesc, l: &TConormDesc, f: &Ddf, g: &Ddf, x: &ExtRat) -> UnitRat {
    GridOracle::new(t, l, f, g).at(x)
}

/// Every finite corner image `L(x_k, y_l)` and the midpoints between
/// consecutive ones, plus one past the largest: the abscissae where `τ` can
/// change value and one point inside each constant stretch.
pub fn corner_abscissae(l: &TConormDesc, f: &Ddf, g: &Ddf) -> Vec<ExtRat> {
    let mut corners: Vec<BigRational> = Vec::new();
    for a in f.breakpoints() {
        for b in g.breakpoints() {
            if let ExtRat::Finite(c) = l.eval(&finite(a), &finite(b)) {
                corners.push(c);
            }
        }
    }
    corners.sort();
    corners.dedup();
    let mut out: Vec<ExtRat> = Vec::new();
    for (i, c) in corners.iter().enumerate() {
        out.push(finite(c));
        match corners.get(i + 1) {
            Some(n) => out.push(ExtRat::Finite(half(c, n))),
            None => out.push(ExtRat::Finite(c + BigRational::one())),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ddf::parse_ddf;
    use crate::tconorms::parse_tconorm;
    use crate::tnorms::catalog_tnorm;

    fn e(s: &str) -> ExtRat {
        s.parse().unwrap()
    }

    fn u(s: &str) -> UnitRat {
        s.parse().unwrap()
    }

    fn t(name: &str) -> TNormDesc {
        catalog_tnorm(name).unwrap()
    }

    fn l(name: &str) -> TConormDesc {
        parse_tconorm(name).unwrap()
    }

    fn s() -> Ddf {
        parse_ddf("DDF v1\njump 1 1/2\njump 2 1").unwrap()
    }

    #[test]
    fn epsilon_zero_is_identity() {
        let f = parse_ddf("DDF v1\njump 1/3 1/4\njump 2 3/5\njump 5 1").unwrap();
        for name in ["M", "Pi", "W", "nM", "D", "nM_hat"] {
            for conorm in [
                "max",
                "plus",
                "nilpotent_rat",
                "osum_trunc:2",
                "osum_strict:2",
            ] {
                let out = tau(&t(name), &l(conorm), &f, &Ddf::eps_zero()).unwrap();
                assert_eq!(out, f, "{name} {conorm}");
            }
        }
    }

    #[test]
    fn epsilon_embedding_example() {
        let out = tau(
            &t("M"),
            &l("plus"),
            &Ddf::epsilon(&e("1")),
            &Ddf::epsilon(&e("3/2")),
        )
        .unwrap();
        assert_eq!(out, Ddf::epsilon(&e("5/2")));
    }

    #[test]
    fn two_step_self_convolution() {
        let out = tau(&t("M"), &l("plus"), &s(), &s()).unwrap();
        assert_eq!(out.serialize(), "DDF v1\njump 2 1/2\njump 4 1");
        // Frozen from the grid oracle at the corner images and midpoints.
        let oracle = GridOracle::new(&t("M"), &l("plus"), &s(), &s());
        for (x, want) in [
            ("0", "0"),
            ("1", "0"),
            ("2", "0"),
            ("5/2", "1/2"),
            ("3", "1/2"),
            ("4", "1/2"),
            ("9/2", "1"),
            ("5", "1"),
        ] {
            assert_eq!(oracle.at(&e(x)), u(want), "x = {x}");
            assert_eq!(out.eval(&e(x)), u(want), "x = {x}");
        }
    }

    #[test]
    fn raw_examples() {
        let eps1 = Ddf::epsilon(&e("1"));
        let m = t("M");
        let plus = l("plus");
        assert_eq!(
            tau_raw_at(&m, &plus, &eps1, &eps1, &e("2")).unwrap(),
            u("0")
        );
        assert_eq!(
            tau_raw_at(&m, &plus, &eps1, &eps1, &e("5/2")).unwrap(),
            u("1")
        );
        assert_eq!(grid_oracle_tau_at(&m, &plus, &eps1, &eps1, &e("2")), u("0"));
        let inf = Ddf::eps_infinity();
        assert_eq!(
            tau_raw_at(&t("W"), &plus, &inf, &inf, &e("10")).unwrap(),
            u("0")
        );
        let half = Ddf::v(&u("1/2"));
        for x in ["1/10", "1", "7"] {
            assert_eq!(
                tau_raw_at(&t("nM_hat"), &plus, &half, &half, &e(x)).unwrap(),
                u("1/2")
            );
        }
    }

    #[test]
    fn raw_sees_the_truncation_plateau() {
        let trunc = l("osum_trunc:2");
        let f = Ddf::epsilon(&e("3/2"));
        let g = Ddf::epsilon(&e("9/5"));
        let reg = tau(&t("M"), &trunc, &f, &g).unwrap();
        assert_eq!(reg, Ddf::epsilon(&e("2")));
        assert_eq!(reg.eval(&e("2")), u("0"));
        assert_eq!(
            tau_raw_at(&t("M"), &trunc, &f, &g, &e("2")).unwrap(),
            u("1")
        );
    }

    #[test]
    fn drastic_branch() {
        let f = Ddf::epsilon(&e("1"));
        let d = l("drastic");
        assert_eq!(
            tau(&t("M"), &d, &f, &Ddf::eps_zero()).unwrap(),
            Ddf::eps_infinity()
        );
        assert_eq!(tau_raw_at(&t("M"), &d, &f, &f, &e("3")).unwrap(), u("0"));
        assert_eq!(
            grid_oracle_tau_at(&t("M"), &d, &f, &Ddf::eps_zero(), &e("3")),
            u("0")
        );
    }

    #[test]
    fn custom_conorm_is_unsupported() {
        let flags = l("max").declared;
        let odd = TConormDesc::custom("odd", flags, |a, b| std::cmp::max(a, b).clone());
        let f = Ddf::eps_zero();
        assert!(matches!(
            tau(&t("M"), &odd, &f, &f),
            Err(TauError::UnsupportedPair(_))
        ));
    }

    #[test]
    fn closed_form_examples() {
        let eps1 = Ddf::epsilon(&e("1"));
        let eps2 = Ddf::epsilon(&e("2"));
        assert_eq!(tau_d_closed_form(&eps1, &eps2), Ddf::epsilon(&e("3")));
        assert_eq!(tau_d_closed_form(&s(), &Ddf::eps_zero()), s());
        let half = Ddf::v(&u("1/2"));
        assert_eq!(
            tau_d_closed_form(&half, &eps1).serialize(),
            "DDF v1\njump 1 1/2"
        );
        assert_eq!(
            tau(&t("D"), &l("plus"), &half, &eps1).unwrap(),
            tau_d_closed_form(&half, &eps1)
        );
    }

    #[test]
    fn lemma_a_examples() {
        let m = t("M");
        let plus = l("plus");
        let (uu, vv) = lemma_a_witness(&m, &plus, &s(), &s(), &e("3"), &e("4")).unwrap();
        assert_eq!((uu.clone(), vv.clone()), (e("3/2"), e("5/2")));
        let h = tau(&m, &plus, &s(), &s()).unwrap();
        assert_eq!(h.eval(&e("3")), u("1/2"));
        assert!(m.eval(&s().eval(&uu), &s().eval(&vv)) >= u("1/2"));

        let eps0 = Ddf::eps_zero();
        let (uu, vv) =
            lemma_a_witness(&t("Pi"), &plus, &eps0, &eps0, &e("1/4"), &e("1/2")).unwrap();
        assert_eq!(&uu + &vv, e("1/2"));
        assert!(!uu.is_zero() && !vv.is_zero());

        let half = Ddf::v(&u("1/2"));
        let (uu, vv) = lemma_a_witness(&t("W"), &plus, &half, &half, &e("1"), &e("2")).unwrap();
        assert_eq!((uu, vv), (e("1"), e("1")));
    }

    #[test]
    fn lemma_a_errors() {
        let f = s();
        assert!(matches!(
            lemma_a_witness(&t("M"), &l("max"), &f, &f, &e("1"), &e("2")),
            Err(TauError::NotArchimedean(_))
        ));
        assert!(matches!(
            lemma_a_witness(&t("M"), &l("plus"), &f, &f, &e("2"), &e("2")),
            Err(TauError::BadAbscissae { .. })
        ));
    }

    #[test]
    fn lemma_a_nilpotent_solution_is_exact() {
        let nil = l("nilpotent_rat");
        let f = parse_ddf("DDF v1\njump 1/4 1/3\njump 1/2 1").unwrap();
        let h = tau(&t("M"), &nil, &f, &f).unwrap();
        let y = e("3/2");
        let x = e("7/4");
        let (uu, vv) = lemma_a_witness(&t("M"), &nil, &f, &f, &y, &x).unwrap();
        assert_eq!(nil.eval(&uu, &vv), x);
        assert!(t("M").eval(&f.eval(&uu), &f.eval(&vv)) >= h.eval(&y));
    }
}
