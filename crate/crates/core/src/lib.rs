//! k-bonacci words over the nonnegative integers, their palindromic
//! factors, and executable checks of the counting and structure results
//! for them.

pub mod counting;
pub mod error;
pub mod palindrome;
pub mod structure;
pub mod verify;
pub mod word;

pub use counting::{alpha, b_count, border_max_length, p_initial, p_total, s_count, CountTable, FormulaMode};
pub use error::{Error, Result};
pub use palindrome::{
    classify_crossing, count_occurrences, distinct_factors, enumerate_maximal, is_palindrome,
    maximal_radii, CrossingCounts, CutSpec, Occurrence, RadiusProfile,
};
pub use structure::{
    allowed_lengths, catalog_elements, classify_palindrome, complexity, length_set,
    maximal_bordering_word, maximal_straddling_words, Catalog, Complexity, Family, LengthSet,
    PalClass, StraddlingPair, Variant, MAX_CATALOG_K,
};
pub use verify::{
    block_cuts, default_n_max, CheckResult, Provenance, Report, Suite, Summary, Value, Verdict,
};
pub use word::{
    apply_morphism, classical_word, kbonacci_number, reduce_mod_k, shift_add, suffix_pair, word,
    Digit, GenMethod, Generator, Params, Word,
};
