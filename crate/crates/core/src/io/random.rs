use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::truth_table::TruthTable;

use super::format::{parse, Format};

/// Where a benchmark or CLI run gets its function from.
#[derive(Debug, Clone, PartialEq)]
pub enum FunctionSource {
    File { path: String, format: Format },
    Random { n: u32, density: f64, seed: u64 },
}

impl FunctionSource {
    /// Reads or generates the table. `declared_n` cross-checks file content.
    pub fn load(&self, declared_n: Option<u32>) -> Result<TruthTable> {
        match self {
            FunctionSource::File { path, format } => {
                let text = std::fs::read_to_string(path)?;
                parse(&text, *format, declared_n)
            }
            FunctionSource::Random { n, density, seed } => random_function(*n, *density, *seed),
        }
    }
}

/// Each of the `2^n` points is in the support independently with
/// probability `density`.
///
/// The generator is ChaCha8 seeded from `seed`, consumed in point order, so
/// the same `(n, density, seed)` gives the same table on every platform.
pub fn random_function(n: u32, density: f64, seed: u64) -> Result<TruthTable> {
    if !(0.0..=1.0).contains(&density) {
        return Err(Error::Density(density));
    }
    let mut tt = TruthTable::empty(n)?;
    if density == 0.0 {
        return Ok(tt);
    }
    if density == 1.0 {
        return TruthTable::full(n);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for x in 0..tt.len() {
        if rng.random_bool(density) {
            tt.set(x, true);
        }
    }
    Ok(tt)
}

/// Exactly `round(density * 2^n)` support points, chosen uniformly.
pub fn random_function_exact(n: u32, density: f64, seed: u64) -> Result<TruthTable> {
    if !(0.0..=1.0).contains(&density) {
        return Err(Error::Density(density));
    }
    let mut tt = TruthTable::empty(n)?;
    let total = tt.len() as usize;
    let count = (density * total as f64).round() as usize;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for x in rand::seq::index::sample(&mut rng, total, count) {
        tt.set(x as u64, true);
    }
    Ok(tt)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn extreme_densities() {
        assert_eq!(random_function(6, 0.0, 3).unwrap().count_ones(), 0);
        assert_eq!(random_function(6, 1.0, 3).unwrap().count_ones(), 64);
        assert!(random_function(6, 1.5, 3).is_err());
    }

    #[test]
    fn half_density_within_three_sigma() {
        // Binomial(2^16, 1/2): sigma = sqrt(2^16 / 4) = 128
        let ones = random_function(16, 0.5, 1).unwrap().count_ones() as i64;
        assert!((ones - 32768).abs() <= 384, "popcount {ones}");
    }

    #[test]
    fn deterministic_for_seed() {
        let a = random_function(12, 0.3, 99).unwrap();
        let b = random_function(12, 0.3, 99).unwrap();
        let c = random_function(12, 0.3, 100).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn exact_count() {
        let tt = random_function_exact(10, 0.25, 5).unwrap();
        assert_eq!(tt.count_ones(), 256);
        assert_eq!(tt, random_function_exact(10, 0.25, 5).unwrap());
    }
}
