//! Truth-table files and seeded random functions.

mod format;
mod random;

pub use format::{parse, write, Format};
pub use random::{random_function, random_function_exact, FunctionSource};
