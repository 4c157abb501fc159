//! Exhaustive and randomized search for words with the most scattered
//! palindromes, plus checks of the closed-form predictions against what
//! the search actually finds.
//!
//! All searches range over canonical words only (counts are invariant
//! under relabeling) and report every maximizing word. Work is split
//! into prefix blocks whose boundaries depend only on the problem size,
//! and block results are merged with an associative, commutative rule,
//! so the outcome is byte-for-byte identical no matter how many worker
//! threads run.

use std::collections::BTreeSet;

use crate::bounds::{self, ConjectureValue};
use crate::error::{Error, Result};
use crate::palcount::SpalScratch;
use crate::verify::canonical::{
    for_each_completion, prefix_blocks, rng_for, CanonicalSampler, PrefixBlock,
};
use crate::words::{parse_word, CanonicalWord, Letter, Word, WordFormat};
use crate::Count;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Default ceiling on word length for exhaustive searches. `Bell(14)` is
/// about 1.9e8; beyond that a single sweep stops being an interactive
/// operation, so anything larger must be requested explicitly.
pub const DEFAULT_SEARCH_BUDGET: usize = 14;

/// Hard ceiling on exhaustive word length regardless of budget: keeps
/// every intermediate count far inside `u64` and every canonical witness
/// renderable with the letters a..z.
pub const MAX_EXHAUSTIVE_N: usize = 26;

/// How many prefix blocks to aim for when splitting an enumeration.
const BLOCK_TARGET: usize = 512;

/// Knobs shared by the search entry points.
#[derive(Clone, Debug)]
pub struct SearchConfig {
    /// Largest word length exhaustive searches may attempt.
    pub budget_n: usize,
    /// Worker threads: `None` uses the default pool, `Some(1)` forces the
    /// sequential path, `Some(k)` builds a pool of `k` (`Some(0)` means
    /// pick automatically). Without the `parallel` feature every value
    /// runs sequentially.
    pub jobs: Option<usize>,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            budget_n: DEFAULT_SEARCH_BUDGET,
            jobs: None,
        }
    }
}

#[cfg(feature = "parallel")]
fn with_jobs<T: Send>(jobs: Option<usize>, f: impl FnOnce() -> T + Send) -> T {
    match jobs {
        Some(k) if k > 1 => rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build()
            .expect("building a scoped worker pool")
            .install(f),
        _ => f(),
    }
}

/// Running maximum plus all words attaining it, for one block or for a
/// merge of blocks.
#[derive(Clone)]
struct BlockOutcome {
    max: Count,
    witnesses: Vec<Vec<Letter>>,
}

impl BlockOutcome {
    fn empty() -> Self {
        BlockOutcome {
            max: 0,
            witnesses: Vec::new(),
        }
    }

    fn absorb(&mut self, total: Count, letters: &[Letter]) {
        if total > self.max {
            self.max = total;
            self.witnesses.clear();
            self.witnesses.push(letters.to_vec());
        } else if total == self.max && total > 0 {
            self.witnesses.push(letters.to_vec());
        }
    }

    fn merge(mut self, other: BlockOutcome) -> BlockOutcome {
        use std::cmp::Ordering::*;
        match self.max.cmp(&other.max) {
            Greater => self,
            Less => other,
            Equal => {
                self.witnesses.extend(other.witnesses);
                self
            }
        }
    }

    fn into_record(mut self, n: usize, q: usize) -> ExtremalRecord {
        self.witnesses.sort_unstable();
        ExtremalRecord {
            n,
            q,
            max_sp: self.max,
            witnesses: self
                .witnesses
                .into_iter()
                .map(CanonicalWord::from_canonical_letters)
                .collect(),
        }
    }
}

fn block_outcome(
    block: &PrefixBlock,
    n: usize,
    q: usize,
    scratch: &mut SpalScratch,
) -> Result<BlockOutcome> {
    let mut out = BlockOutcome::empty();
    let mut failure: Option<Error> = None;
    for_each_completion(&block.letters, block.used, n, Some(q), &mut |letters, _| {
        match scratch.total_canonical(letters, q) {
            Ok(total) => {
                out.absorb(total, letters);
                true
            }
            Err(e) => {
                failure = Some(e);
                false
            }
        }
    });
    match failure {
        Some(e) => Err(e),
        None => Ok(out),
    }
}

fn search_fixed_q(n: usize, q: usize, config: &SearchConfig) -> Result<BlockOutcome> {
    let blocks = prefix_blocks(n, Some(q), BLOCK_TARGET);
    #[cfg(feature = "parallel")]
    {
        if config.jobs != Some(1) {
            return with_jobs(config.jobs, move || {
                blocks
                    .par_iter()
                    .map_init(SpalScratch::new, |scratch, block| {
                        block_outcome(block, n, q, scratch)
                    })
                    .try_reduce(BlockOutcome::empty, |a, b| Ok(a.merge(b)))
            });
        }
    }
    let mut scratch = SpalScratch::new();
    let mut acc = BlockOutcome::empty();
    for block in &blocks {
        acc = acc.merge(block_outcome(block, n, q, &mut scratch)?);
    }
    Ok(acc)
}

/// The exact maximum scattered-palindrome count over all length-`n`
/// words with exactly `q` distinct letters, with every canonical word
/// attaining it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtremalRecord {
    pub n: usize,
    pub q: usize,
    pub max_sp: Count,
    /// All maximizing canonical words, lexicographically sorted.
    pub witnesses: Vec<CanonicalWord>,
}

fn validate_search_size(n: usize, q: usize, config: &SearchConfig) -> Result<()> {
    if n == 0 || q == 0 || q > n {
        return Err(Error::domain(
            "exhaustive_max",
            format!("requires 1 <= q <= n, got n = {n}, q = {q}"),
        ));
    }
    if n > config.budget_n {
        return Err(Error::BudgetExceeded {
            requested: n,
            budget: config.budget_n,
        });
    }
    if n > MAX_EXHAUSTIVE_N {
        return Err(Error::domain(
            "exhaustive_max",
            format!("length {n} exceeds the hard exhaustive limit {MAX_EXHAUSTIVE_N}"),
        ));
    }
    Ok(())
}

/// Searches every canonical word of length `n` over exactly `q` letters
/// and reports the maximum count together with all words attaining it.
pub fn exhaustive_max(n: usize, q: usize, config: &SearchConfig) -> Result<ExtremalRecord> {
    validate_search_size(n, q, config)?;
    Ok(search_fixed_q(n, q, config)?.into_record(n, q))
}

/// [`exhaustive_max`] for every cell `(n, q)` with `n <= n_max` and
/// `1 <= q <= n`, ordered by `n` then `q`.
pub fn sweep_table(n_max: usize, config: &SearchConfig) -> Result<Vec<ExtremalRecord>> {
    let mut records = Vec::new();
    for n in 1..=n_max {
        for q in 1..=n {
            records.push(exhaustive_max(n, q, config)?);
        }
    }
    Ok(records)
}

fn csv_word(w: &Word) -> String {
    // Letters a..z when possible; otherwise dot-joined numerals, since
    // the comma is taken as the field separator.
    w.to_ascii().unwrap_or_else(|| {
        let parts: Vec<String> = w.letters().iter().map(|c| c.to_string()).collect();
        parts.join(".")
    })
}

/// Renders extremal records as CSV with a fixed header; witnesses are
/// space-separated in the final field.
pub fn records_to_csv(records: &[ExtremalRecord]) -> String {
    let mut out = String::from("n,q,max_sp,witness_count,witnesses\n");
    for r in records {
        let words: Vec<String> = r.witnesses.iter().map(|w| csv_word(w)).collect();
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            r.n,
            r.q,
            r.max_sp,
            r.witnesses.len(),
            words.join(" ")
        ));
    }
    out
}

fn parse_csv_witness(token: &str) -> Result<CanonicalWord> {
    let word = if token.contains('.') {
        let letters: std::result::Result<Vec<Letter>, _> =
            token.split('.').map(|p| p.parse::<Letter>()).collect();
        Word::new(letters.map_err(|e| {
            Error::domain("records_from_csv", format!("bad witness {token:?}: {e}"))
        })?)
    } else {
        parse_word(token, WordFormat::AsciiLetters)?
    };
    CanonicalWord::try_from_word(word)
}

/// Parses the output of [`records_to_csv`], strictly.
pub fn records_from_csv(text: &str) -> Result<Vec<ExtremalRecord>> {
    let mut lines = text.lines();
    let header = lines.next().unwrap_or("");
    if header != "n,q,max_sp,witness_count,witnesses" {
        return Err(Error::domain(
            "records_from_csv",
            format!("unexpected header {header:?}"),
        ));
    }
    let mut records = Vec::new();
    for (idx, line) in lines.enumerate() {
        if line.is_empty() {
            continue;
        }
        let line_no = idx + 2;
        let bad = |what: String| Error::domain("records_from_csv", format!("line {line_no}: {what}"));
        let fields: Vec<&str> = line.splitn(5, ',').collect();
        if fields.len() != 5 {
            return Err(bad(format!("expected 5 fields, got {}", fields.len())));
        }
        let n: usize = fields[0].parse().map_err(|e| bad(format!("bad n: {e}")))?;
        let q: usize = fields[1].parse().map_err(|e| bad(format!("bad q: {e}")))?;
        let max_sp: Count = fields[2]
            .parse()
            .map_err(|e| bad(format!("bad max_sp: {e}")))?;
        let witness_count: usize = fields[3]
            .parse()
            .map_err(|e| bad(format!("bad witness_count: {e}")))?;
        let witnesses: Vec<CanonicalWord> = fields[4]
            .split_whitespace()
            .map(parse_csv_witness)
            .collect::<Result<_>>()?;
        if witnesses.len() != witness_count {
            return Err(bad(format!(
                "witness_count says {witness_count} but {} witnesses listed",
                witnesses.len()
            )));
        }
        records.push(ExtremalRecord {
            n,
            q,
            max_sp,
            witnesses,
        });
    }
    Ok(records)
}

/// Result of checking the predicted overall maximum at one length
/// against an exhaustive search over every alphabet size.
#[derive(Clone, Debug)]
pub struct ConjectureCheck {
    pub n: usize,
    /// True when both the maximum value and the set of alphabet sizes
    /// attaining it match the prediction exactly.
    pub holds: bool,
    pub observed_max: Count,
    /// Alphabet sizes at which the observed maximum is attained.
    pub observed_q: BTreeSet<usize>,
    pub predicted: ConjectureValue,
    /// All maximizing canonical words across every alphabet size.
    pub witnesses: Vec<CanonicalWord>,
}

/// Exhaustively checks the predicted maximum at length `n` over all
/// alphabet sizes `1..=n`.
pub fn verify_conjecture(n: usize, config: &SearchConfig) -> Result<ConjectureCheck> {
    if n == 0 {
        return Err(Error::domain("verify_conjecture", "requires n >= 1"));
    }
    let predicted = bounds::conjectured_max(n)?;
    let mut observed_max: Count = 0;
    let mut observed_q: BTreeSet<usize> = BTreeSet::new();
    let mut witnesses: Vec<CanonicalWord> = Vec::new();
    for q in 1..=n {
        let record = exhaustive_max(n, q, config)?;
        if record.max_sp > observed_max {
            observed_max = record.max_sp;
            observed_q.clear();
            witnesses.clear();
        }
        if record.max_sp == observed_max {
            observed_q.insert(q);
            witnesses.extend(record.witnesses);
        }
    }
    witnesses.sort_unstable();
    let holds = observed_max == predicted.max_sp && observed_q == predicted.achieving_q;
    Ok(ConjectureCheck {
        n,
        holds,
        observed_max,
        observed_q,
        predicted,
        witnesses,
    })
}

/// One alphabet size in a large-alphabet comparison.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HighQEntry {
    pub q: usize,
    pub observed_max: Count,
    pub predicted: Count,
}

/// Comparison of the closed-form maximum for alphabets covering at least
/// half the length (`2q >= n`) against exhaustive search.
#[derive(Clone, Debug)]
pub struct HighQCheck {
    pub n: usize,
    pub holds: bool,
    pub entries: Vec<HighQEntry>,
}

/// For every `q` with `2q >= n`, compares the exact search maximum with
/// the closed form `2^(n-q) (2q - n + 2) - 2`.
pub fn verify_high_q_max(n: usize, config: &SearchConfig) -> Result<HighQCheck> {
    if n == 0 {
        return Err(Error::domain("verify_high_q_max", "requires n >= 1"));
    }
    let mut entries = Vec::new();
    for q in n.div_ceil(2)..=n {
        let predicted = bounds::high_q_max(n, q)?;
        let observed = exhaustive_max(n, q, config)?;
        entries.push(HighQEntry {
            q,
            observed_max: observed.max_sp,
            predicted,
        });
    }
    let holds = entries.iter().all(|e| e.observed_max == e.predicted);
    Ok(HighQCheck { n, holds, entries })
}

/// Result of maximizing over all words in which each of `q` letters
/// appears exactly twice.
#[derive(Clone, Debug)]
pub struct DoubledCheck {
    pub q: usize,
    /// The closed-form ceiling `2^(q+1) - 2` for such words.
    pub bound: Count,
    pub observed_max: Count,
    /// All maximizing canonical words, lexicographically sorted.
    pub witnesses: Vec<CanonicalWord>,
}

impl DoubledCheck {
    pub fn within_bound(&self) -> bool {
        self.observed_max <= self.bound
    }

    pub fn attained(&self) -> bool {
        self.observed_max == self.bound
    }

    pub fn holds(&self) -> bool {
        self.within_bound() && self.attained()
    }
}

fn doubled_leaves(
    letters: &mut Vec<Letter>,
    open: &mut Vec<Letter>,
    next_class: Letter,
    q: usize,
    scratch: &mut SpalScratch,
    out: &mut BlockOutcome,
) -> Result<()> {
    if letters.len() == 2 * q {
        let total = scratch.total_canonical(letters, q)?;
        out.absorb(total, letters);
        return Ok(());
    }
    // Close an already-open class (ascending keeps the leaves in
    // lexicographic order), or open the next fresh one.
    for idx in 0..open.len() {
        let c = open.remove(idx);
        letters.push(c);
        doubled_leaves(letters, open, next_class, q, scratch, out)?;
        letters.pop();
        open.insert(idx, c);
    }
    if (next_class as usize) < q {
        open.push(next_class);
        letters.push(next_class);
        doubled_leaves(letters, open, next_class + 1, q, scratch, out)?;
        letters.pop();
        open.pop();
    }
    Ok(())
}

/// Maximizes the count over every word of length `2q` in which each of
/// the `q` letters appears exactly twice, and compares against the
/// closed-form ceiling for that family. There are `1 * 3 * ... * (2q-1)`
/// canonical words of this shape, so the walk is sequential.
pub fn verify_doubled(q: usize, config: &SearchConfig) -> Result<DoubledCheck> {
    if q == 0 {
        return Err(Error::domain("verify_doubled", "requires q >= 1"));
    }
    let n = 2 * q;
    if n > config.budget_n {
        return Err(Error::BudgetExceeded {
            requested: n,
            budget: config.budget_n,
        });
    }
    if n > MAX_EXHAUSTIVE_N {
        return Err(Error::domain(
            "verify_doubled",
            format!("length {n} exceeds the hard exhaustive limit {MAX_EXHAUSTIVE_N}"),
        ));
    }
    let bound = bounds::doubled_bound(q)?;
    let mut out = BlockOutcome::empty();
    let mut scratch = SpalScratch::new();
    doubled_leaves(
        &mut Vec::with_capacity(n),
        &mut Vec::with_capacity(q),
        0,
        q,
        &mut scratch,
        &mut out,
    )?;
    let record = out.into_record(n, q);
    Ok(DoubledCheck {
        q,
        bound,
        observed_max: record.max_sp,
        witnesses: record.witnesses,
    })
}

/// Outcome of random sampling at one `(n, q)` cell.
#[derive(Clone, Debug)]
pub struct SampleReport {
    pub n: usize,
    pub q: usize,
    pub samples: u64,
    pub observed_max: Count,
    /// The predicted overall maximum at length `n`.
    pub bound: Count,
    /// Distinct sampled words whose count exceeds `bound` (empty unless
    /// the prediction is wrong).
    pub violations: Vec<CanonicalWord>,
}

impl SampleReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Draws `samples` canonical words uniformly from the `(n, q)` cell and
/// checks each against the predicted overall maximum at length `n`. The
/// stream is a pure function of `(seed, n, q)`, so sweeping many cells
/// in parallel cannot change any cell's verdict.
pub fn sample_conjecture(n: usize, q: usize, samples: u64, seed: u64) -> Result<SampleReport> {
    let sampler = CanonicalSampler::new(n, q)?;
    let bound = bounds::conjectured_max(n)?.max_sp;
    let mut rng = rng_for(seed, n, q);
    let mut scratch = SpalScratch::new();
    let mut observed_max: Count = 0;
    let mut violations: BTreeSet<Vec<Letter>> = BTreeSet::new();
    for _ in 0..samples {
        let w = sampler.sample(&mut rng);
        let total = scratch.total_canonical(w.letters(), q)?;
        observed_max = observed_max.max(total);
        if total > bound {
            violations.insert(w.letters().to_vec());
        }
    }
    Ok(SampleReport {
        n,
        q,
        samples,
        observed_max,
        bound,
        violations: violations
            .into_iter()
            .map(CanonicalWord::from_canonical_letters)
            .collect(),
    })
}

/// [`sample_conjecture`] over every cell with `n <= n_max`, ordered by
/// `n` then `q`. Per-cell seeds are derived independently, so the report
/// list does not depend on the worker count.
pub fn sample_conjecture_sweep(
    n_max: usize,
    samples: u64,
    seed: u64,
    config: &SearchConfig,
) -> Result<Vec<SampleReport>> {
    let cells: Vec<(usize, usize)> = (1..=n_max)
        .flat_map(|n| (1..=n).map(move |q| (n, q)))
        .collect();
    #[cfg(feature = "parallel")]
    {
        if config.jobs != Some(1) {
            return with_jobs(config.jobs, move || {
                cells
                    .into_par_iter()
                    .map(|(n, q)| sample_conjecture(n, q, samples, seed))
                    .collect()
            });
        }
    }
    let _ = config;
    cells
        .into_iter()
        .map(|(n, q)| sample_conjecture(n, q, samples, seed))
        .collect()
}
