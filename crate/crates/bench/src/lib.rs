//! Shared fixtures for the benchmarks: small seeded corpora, fixed here so
//! numbers stay comparable between runs and machines.

use regulus::corpus::random_languages;
use regulus::{Alphabet, Language};

pub const CORPUS_SEED: u64 = 0xBE7C4;

pub fn alphabet() -> Alphabet {
    "ab".parse().expect("two distinct symbols")
}

/// Fifty expressions of depth at most five — roughly the acceptance-corpus
/// shape, sized for quick iteration.
pub fn languages() -> Vec<Language> {
    random_languages(&alphabet(), 50, 5, CORPUS_SEED)
}

/// A smaller slice for the quadratic-and-up constructions.
pub fn small_languages() -> Vec<Language> {
    random_languages(&alphabet(), 10, 4, CORPUS_SEED)
}
