use std::fmt;
use std::str::FromStr;

use crate::dense::{find_primes_dense, DenseOptions};
use crate::error::Result;
use crate::oracle::{oracle_primes_with, OracleLimits};
use crate::prime_set::PrimeSet;
use crate::sparse::find_primes_sparse;
use crate::truth_table::TruthTable;

/// The interchangeable prime-implicant engines.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Engine {
    Dense,
    Sparse,
    Oracle,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct EngineOptions {
    pub dense: DenseOptions,
    pub oracle: OracleLimits,
}

impl Engine {
    pub const ALL: [Engine; 3] = [Engine::Dense, Engine::Sparse, Engine::Oracle];

    pub fn name(self) -> &'static str {
        match self {
            Engine::Dense => "dense",
            Engine::Sparse => "sparse",
            Engine::Oracle => "oracle",
        }
    }

    pub fn find_primes(self, tt: &TruthTable, opts: &EngineOptions) -> Result<PrimeSet> {
        match self {
            Engine::Dense => find_primes_dense(tt, &opts.dense),
            Engine::Sparse => find_primes_sparse(tt),
            Engine::Oracle => oracle_primes_with(tt, &opts.oracle),
        }
    }
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Engine {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "dense" => Ok(Engine::Dense),
            "sparse" => Ok(Engine::Sparse),
            "oracle" => Ok(Engine::Oracle),
            other => Err(format!("unknown engine {other:?} (dense, sparse, oracle)")),
        }
    }
}
