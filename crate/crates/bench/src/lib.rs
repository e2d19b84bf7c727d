//! Fixtures shared by the criterion benches.

use deltaplus_core::ddf::Ddf;
use deltaplus_core::lawcheck::{random_ddf, RandomDdfConfig};

/// `n` deterministic DDF pairs with exactly `jumps` jumps each (when the
/// pools allow it).
pub fn pairs_with_jumps(n: usize, jumps: usize) -> Vec<(Ddf, Ddf)> {
    let cfg = RandomDdfConfig {
        max_jumps: jumps,
        abscissa_pool: 8,
        value_pool: 16,
    };
    (0u64..)
        .map(|s| random_ddf(&cfg, s))
        .filter(|f| f.jumps().len() == jumps)
        .take(2 * n)
        .collect::<Vec<_>>()
        .chunks(2)
        .map(|c| (c[0].clone(), c[1].clone()))
        .collect()
}
