//! Brute-force reference for prime implicants.
//!
//! Enumerates all `3^n` strings, decides implicant-ness by visiting every
//! covered point, and decides primality by trying each one-symbol widening.
//! Shares nothing with the engines beyond the string type.

use crate::error::{Error, Result};
use crate::prime_set::PrimeSet;
use crate::ternary::{pow3, Rank, TernaryString, Trit};
use crate::truth_table::TruthTable;

/// Size guards for the reference computations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleLimits {
    pub max_implicant_vars: u32,
    pub max_prime_vars: u32,
}

impl Default for OracleLimits {
    fn default() -> Self {
        OracleLimits {
            max_implicant_vars: 14,
            max_prime_vars: 12,
        }
    }
}

/// Every point covered by `s` is in the support of `tt`.
pub fn is_implicant(s: &TernaryString, tt: &TruthTable) -> Result<bool> {
    is_implicant_with(s, tt, &OracleLimits::default())
}

pub fn is_implicant_with(s: &TernaryString, tt: &TruthTable, limits: &OracleLimits) -> Result<bool> {
    let n = tt.vars();
    if n > limits.max_implicant_vars {
        return Err(Error::OracleTooLarge { n, max: limits.max_implicant_vars });
    }
    assert_eq!(s.vars(), n, "string and table disagree on n");
    Ok(covered_points(s).all(|x| tt.get(x)))
}

/// Points covered by `s`, built symbol by symbol.
fn covered_points(s: &TernaryString) -> impl Iterator<Item = u64> {
    let mut points = vec![0u64];
    for k in 0..s.len() {
        match s.get(k) {
            Trit::Zero => {}
            Trit::One => points.iter_mut().for_each(|x| *x |= 1 << k),
            Trit::Star => {
                let with_one: Vec<u64> = points.iter().map(|x| x | (1 << k)).collect();
                points.extend(with_one);
            }
        }
    }
    points.into_iter()
}

/// Implicants of `tt` such that replacing any single `0`/`1` by `*` yields a
/// non-implicant.
pub fn oracle_primes(tt: &TruthTable) -> Result<PrimeSet> {
    oracle_primes_with(tt, &OracleLimits::default())
}

pub fn oracle_primes_with(tt: &TruthTable, limits: &OracleLimits) -> Result<PrimeSet> {
    let n = tt.vars();
    if n > limits.max_prime_vars {
        return Err(Error::OracleTooLarge { n, max: limits.max_prime_vars });
    }
    let total = pow3(n);
    let implicant: Vec<bool> = (0..total)
        .map(|r| is_implicant_with(&TernaryString::unrank(Rank(r), n)?, tt, limits))
        .collect::<Result<_>>()?;
    let mut primes = Vec::new();
    for r in 0..total {
        if !implicant[r as usize] {
            continue;
        }
        let s = TernaryString::unrank(Rank(r), n)?;
        let widenable = (0..s.len()).any(|k| {
            s.get(k) != Trit::Star && implicant[s.with(k, Trit::Star).rank().0 as usize]
        });
        if !widenable {
            primes.push(s);
        }
    }
    Ok(PrimeSet::new(n, primes))
}
