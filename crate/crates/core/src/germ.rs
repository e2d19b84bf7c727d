//! Rationals perturbed by a positive infinitesimal.
//!
//! A [`Germ`] is `c0 + c1·η + c2·η²` with `η > 0` smaller than every positive
//! rational, ordered lexicographically. Evaluating a piecewise-polynomial
//! operation at `x - η` and taking the standard part gives its exact left
//! limit at `x`. Products are truncated after `η²`, which is exact for the
//! degree-one inputs used here.

use std::cmp::Ordering;

use num::{BigRational, One, Zero};

/// Ordered ring operations shared by exact rationals and [`Germ`]s.
pub trait Scalar: Clone + Ord {
    fn constant(value: BigRational) -> Self;
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;

    fn zero() -> Self {
        Self::constant(<BigRational as Zero>::zero())
    }

    fn one() -> Self {
        Self::constant(<BigRational as One>::one())
    }
}

impl Scalar for BigRational {
    fn constant(value: BigRational) -> Self {
        value
    }

    fn plus(&self, other: &Self) -> Self {
        self + other
    }

    fn minus(&self, other: &Self) -> Self {
        self - other
    }

    fn times(&self, other: &Self) -> Self {
        self * other
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Germ([BigRational; 3]);

impl Germ {
    pub fn exact(value: BigRational) -> Self {
        Germ([
            value,
            <BigRational as Zero>::zero(),
            <BigRational as Zero>::zero(),
        ])
    }

    /// `value - η`.
    pub fn just_below(value: BigRational) -> Self {
        Germ([
            value,
            -<BigRational as One>::one(),
            <BigRational as Zero>::zero(),
        ])
    }

    pub fn standard_part(&self) -> &BigRational {
        &self.0[0]
    }
}

impl Ord for Germ {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .iter()
            .zip(other.0.iter())
            .map(|(a, b)| a.cmp(b))
            .find(|o| o.is_ne())
            .unwrap_or(Ordering::Equal)
    }
}

impl PartialOrd for Germ {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Scalar for Germ {
    fn constant(value: BigRational) -> Self {
        Germ::exact(value)
    }

    fn plus(&self, other: &Self) -> Self {
        Germ(std::array::from_fn(|i| &self.0[i] + &other.0[i]))
    }

    fn minus(&self, other: &Self) -> Self {
        Germ(std::array::from_fn(|i| &self.0[i] - &other.0[i]))
    }

    fn times(&self, other: &Self) -> Self {
        let [a0, a1, a2] = &self.0;
        let [b0, b1, b2] = &other.0;
        Germ([a0 * b0, a0 * b1 + a1 * b0, a0 * b2 + a1 * b1 + a2 * b0])
    }
}
