//! Seeded draws of bounded-denominator rationals.

use num::BigRational;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::numeric::{ExtRat, UnitRat};

/// Independent stream `stream` of the generator seeded with `seed`.
pub fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// `n/d` with `1 <= d <= max_den`, `0 <= n <= d`.
pub fn unit<R: Rng>(rng: &mut R, max_den: u64) -> UnitRat {
    let d = rng.gen_range(1..=max_den);
    let n = rng.gen_range(0..=d);
    UnitRat::frac(n, d)
}

/// Like [`unit`] but never zero.
pub fn unit_positive<R: Rng>(rng: &mut R, max_den: u64) -> UnitRat {
    let d = rng.gen_range(1..=max_den);
    let n = rng.gen_range(1..=d);
    UnitRat::frac(n, d)
}

/// A finite `n/d` in `[0, bound]`.
pub fn finite<R: Rng>(rng: &mut R, max_den: u64, bound: u64) -> BigRational {
    let d = rng.gen_range(1..=max_den);
    let n = rng.gen_range(0..=bound * d);
    BigRational::new(n.into(), d.into())
}

/// A draw from `[0,∞]` that hits `0` and `∞` with positive probability.
pub fn extended<R: Rng>(rng: &mut R, max_den: u64, bound: u64) -> ExtRat {
    match rng.gen_range(0..16) {
        0 => ExtRat::zero(),
        1 => ExtRat::Infinity,
        _ => ExtRat::Finite(finite(rng, max_den, bound)),
    }
}
