//! Exact counting, enumeration, and verification for palindromic
//! subsequences of finite words.
//!
//! A *scattered palindrome* of a word `w` is a non-empty subsequence of
//! `w` that reads the same forwards and backwards; `spal` counts the set
//! of distinct such subsequences exactly, alongside the classical set of
//! palindromic factors (contiguous subwords). On top of the counting
//! kernel sit closed-form bounds, extremal constructions, and exhaustive
//! search over canonical words, so that every bound can be checked against
//! every word of a given length rather than taken on faith.
//!
//! Module map:
//!
//! * [`words`] — word values, parsing, canonical relabeling.
//! * [`palcount`] — counting and enumeration of palindromic subsequences
//!   and factors, plus a brute-force oracle.
//! * [`bounds`] — closed-form bounds and the extremal constructions that
//!   attain them.
//! * [`verify`] — per-word bound audits, exhaustive maxima over canonical
//!   words, and randomized stress checks.

pub mod bounds;
pub mod error;
pub mod palcount;
pub mod verify;
pub mod words;

pub use error::{Error, Result};
pub use palcount::LengthProfile;
pub use words::{CanonicalWord, Letter, Word};

/// Exact cardinality type used throughout.
///
/// Counts never wrap: any path that could leave this range reports
/// [`Error::Overflow`] instead of returning a truncated value.
pub type Count = u64;
