//! Verification machinery: canonical-word enumeration and sampling,
//! exhaustive and randomized extremal search, per-word bound audits, and
//! letter-removal inequality checks.

pub mod audit;
pub mod canonical;
pub mod removal;
pub mod search;

pub use audit::{audit_word, BoundCheck, BoundReport, Verdict};
pub use canonical::{
    bell_number, enumerate_canonical, stirling2, CanonicalSampler, CanonicalWords,
};
pub use removal::{
    check_outer_removal, check_triple_removal, sample_outer_removal_instance,
    sample_outer_removal_instance_bounded, sample_triple_removal_instance, OuterRemovalCase,
    OuterRemovalCheck, TripleRemovalCheck,
};
pub use search::{
    exhaustive_max, records_from_csv, records_to_csv, sample_conjecture,
    sample_conjecture_sweep, sweep_table, verify_conjecture, verify_doubled, verify_high_q_max,
    ConjectureCheck, DoubledCheck, ExtremalRecord, HighQCheck, HighQEntry, SampleReport,
    SearchConfig, DEFAULT_SEARCH_BUDGET, MAX_EXHAUSTIVE_N,
};
