//! All prime implicants of a Boolean function given by its truth table.
//!
//! Two engines compute the same set:
//!
//! * [`dense`]: the full `3^n`-bit indicator of `{0,1,*}^n`, transformed in
//!   place by bit-sliced MergeAll / ReduceAll passes, one dimension at a
//!   time. Cost is independent of the function; best for dense supports.
//! * [`sparse`]: level-by-level merging of implicants kept in linear-probing
//!   hash sets. Cost follows the number of implicants; best for sparse
//!   supports.
//!
//! [`oracle`] is an exhaustive reference for small `n`.
//!
//! ```
//! use qmc_core::{find_primes_dense, find_primes_sparse, DenseOptions, TruthTable};
//!
//! // majority of three: points (x1,x2,x3) with at least two ones
//! let tt = TruthTable::from_support(3, [0b011, 0b101, 0b110, 0b111]).unwrap();
//! let primes = find_primes_dense(&tt, &DenseOptions::default()).unwrap();
//! let text: Vec<String> = primes.iter().map(|s| s.to_string()).collect();
//! assert_eq!(text, ["*11", "1*1", "11*"]);
//! assert_eq!(find_primes_sparse(&tt).unwrap(), primes);
//! ```

pub mod bench;
pub mod dense;
pub mod engine;
pub mod error;
pub mod io;
pub mod oracle;
pub mod prime_set;
pub mod sparse;
pub mod sys;
pub mod ternary;
pub mod truth_table;

pub use dense::{find_primes_dense, Block, DenseOptions, DenseState, MemCap, Op, U256};
pub use engine::{Engine, EngineOptions};
pub use error::{Error, Result};
pub use oracle::{is_implicant, oracle_primes};
pub use prime_set::PrimeSet;
pub use sparse::{find_primes_sparse, LevelSet};
pub use ternary::{PackedImplicant, Rank, TernaryString, Trit};
pub use truth_table::TruthTable;

/// Dense state with one 8-bit block per `{0,1,*}^1` slice (`h = 1`).
pub type DenseState8 = DenseState<u8>;
/// `h = 2`, 9 of 16 bits used.
pub type DenseState16 = DenseState<u16>;
/// `h = 3`, 27 of 32 bits used; the default.
pub type DenseState32 = DenseState<u32>;
/// `h = 4`, 81 of 128 bits used.
pub type DenseState128 = DenseState<u128>;
/// `h = 5`, 243 of 256 bits used.
pub type DenseState256 = DenseState<U256>;
