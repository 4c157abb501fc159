//! Counting and enumeration of palindromic subsequences and palindromic
//! factors.
//!
//! The central object is the set of distinct non-empty palindromic
//! subsequences of a word `w`. Counting runs interval by interval: for a
//! letter `c` occurring in `w[i..=j]` first at `f` and last at `l`, the
//! distinct palindromic subsequences of `w[i..=j]` that start and end with
//! `c` are `c` itself, `cc` when `f < l`, and `c p c` for every distinct
//! palindromic subsequence `p` of `w[f+1..=l-1]`. Distinctness is what
//! makes this correct: anchoring the outer letter at its extreme
//! occurrences means each subsequence value is produced exactly once, so
//! summing over the letters present in the interval counts the set without
//! inclusion-exclusion. The same recursion yields per-length profiles,
//! total counts, and the enumeration itself.
//!
//! [`brute_force_profile`] is the independent oracle: it walks all
//! `2^n - 1` subsets of positions and deduplicates the palindromic ones.
//! It exists to check the recursion, not to be fast.

mod eertree;

use std::collections::{HashMap, HashSet};

use crate::error::{Error, Result};
use crate::words::{canonicalize, Letter, Word};
use crate::Count;

use eertree::Eertree;

/// Counts of distinct palindromic subsequences of each length, together
/// with the totals every bound is phrased in.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LengthProfile {
    /// `by_length[t - 1]` is the number of distinct palindromic
    /// subsequences of length exactly `t`; the vector has one slot per
    /// length `1..=n`.
    by_length: Vec<Count>,
    total: Count,
    odd_total: Count,
    even_total: Count,
}

impl LengthProfile {
    /// The profile of the empty word: no lengths, all totals zero.
    pub fn empty() -> Self {
        LengthProfile {
            by_length: Vec::new(),
            total: 0,
            odd_total: 0,
            even_total: 0,
        }
    }

    /// Builds a profile from raw per-length counts, computing the totals
    /// with overflow checks.
    pub fn from_by_length(by_length: Vec<Count>) -> Result<Self> {
        let mut odd_total: Count = 0;
        let mut even_total: Count = 0;
        for (ix, &c) in by_length.iter().enumerate() {
            // index 0 holds length 1, so even indices are odd lengths
            let bucket = if ix % 2 == 0 {
                &mut odd_total
            } else {
                &mut even_total
            };
            *bucket = bucket.checked_add(c).ok_or(Error::Overflow)?;
        }
        let total = odd_total.checked_add(even_total).ok_or(Error::Overflow)?;
        Ok(LengthProfile {
            by_length,
            total,
            odd_total,
            even_total,
        })
    }

    /// Length of the underlying word (= number of length slots).
    pub fn word_len(&self) -> usize {
        self.by_length.len()
    }

    /// Count of distinct palindromic subsequences of length exactly `t`.
    /// Lengths outside `1..=n` hold no palindromes and report 0.
    pub fn of_length(&self, t: usize) -> Count {
        if t == 0 || t > self.by_length.len() {
            0
        } else {
            self.by_length[t - 1]
        }
    }

    pub fn by_length(&self) -> &[Count] {
        &self.by_length
    }

    pub fn total(&self) -> Count {
        self.total
    }

    pub fn odd_total(&self) -> Count {
        self.odd_total
    }

    pub fn even_total(&self) -> Count {
        self.even_total
    }
}

/// Alphabet size of a canonical word: one past its largest class id.
pub(crate) fn canonical_class_count(letters: &[Letter]) -> usize {
    letters.iter().max().map_or(0, |&m| m as usize + 1)
}

/// Fills position-indexed occurrence tables for a word over classes
/// `0..q`.
///
/// After the call, `first[i * q + c]` is the smallest position `>= i`
/// holding class `c` (or `n` when there is none), and `last[j * q + c]` is
/// the largest position `< j` holding `c` (or `n` for none). Both tables
/// have `n + 1` rows so the queries `first occurrence >= i` and `last
/// occurrence <= j` (row `j + 1`) need no bounds cases.
fn fill_occurrence_tables(
    letters: &[Letter],
    q: usize,
    first: &mut Vec<u32>,
    last: &mut Vec<u32>,
) {
    let n = letters.len();
    let none = n as u32;
    first.clear();
    first.resize((n + 1) * q, none);
    last.clear();
    last.resize((n + 1) * q, none);
    for i in (0..n).rev() {
        first.copy_within((i + 1) * q..(i + 2) * q, i * q);
        first[i * q + letters[i] as usize] = i as u32;
    }
    for j in 1..=n {
        last.copy_within((j - 1) * q..j * q, j * q);
        last[j * q + letters[j - 1] as usize] = (j - 1) as u32;
    }
}

/// Per-length interval recursion with an arena of memoized profiles.
struct ProfileDp {
    q: usize,
    first: Vec<u32>,
    last: Vec<u32>,
    memo: HashMap<u64, usize>,
    /// `arena[0]` is the empty profile; every interval's profile is pushed
    /// once and then shared by index.
    arena: Vec<Vec<Count>>,
}

impl ProfileDp {
    /// Profile of `w[i..=j]` (inclusive, `i <= j`), as an arena index.
    fn interval(&mut self, i: usize, j: usize) -> Result<usize> {
        debug_assert!(i <= j);
        let key = ((i as u64) << 32) | j as u64;
        if let Some(&ix) = self.memo.get(&key) {
            return Ok(ix);
        }
        let q = self.q;
        let mut out = vec![0 as Count; j - i + 1];
        for c in 0..q {
            let f = self.first[i * q + c] as usize;
            if f > j {
                continue;
            }
            let l = self.last[(j + 1) * q + c] as usize;
            out[0] += 1; // the single letter c; at most q of these
            if f < l {
                out[1] += 1; // cc
                let inner_ix = if f + 1 <= l - 1 {
                    self.interval(f + 1, l - 1)?
                } else {
                    0
                };
                let inner = &self.arena[inner_ix];
                for (t, &cnt) in inner.iter().enumerate() {
                    // an inner palindrome of length t+1 wrapped in c..c
                    out[t + 2] = out[t + 2].checked_add(cnt).ok_or(Error::Overflow)?;
                }
            }
        }
        let ix = self.arena.len();
        self.arena.push(out);
        self.memo.insert(key, ix);
        Ok(ix)
    }
}

/// Exact per-length counts of distinct palindromic subsequences.
pub fn spal_profile(w: &Word) -> Result<LengthProfile> {
    let n = w.len();
    if n == 0 {
        return Ok(LengthProfile::empty());
    }
    // Relabeling letters by first occurrence changes no palindromic count
    // and gives the dense class ids the tables are indexed by.
    let canon = canonicalize(w);
    let letters = canon.word().letters();
    let q = canonical_class_count(letters);
    let mut dp = ProfileDp {
        q,
        first: Vec::new(),
        last: Vec::new(),
        memo: HashMap::new(),
        arena: vec![Vec::new()],
    };
    fill_occurrence_tables(letters, q, &mut dp.first, &mut dp.last);
    let root = dp.interval(0, n - 1)?;
    let by_length = std::mem::take(&mut dp.arena[root]);
    debug_assert_eq!(by_length.len(), n);
    LengthProfile::from_by_length(by_length)
}

/// Reusable buffers for the totals-only interval recursion.
///
/// The memo is generation-stamped so switching to the next word costs
/// nothing; search loops keep one scratch per worker and feed it millions
/// of words. All tables are per-scratch, so independent scratches never
/// share mutable state.
pub(crate) struct SpalScratch {
    first: Vec<u32>,
    last: Vec<u32>,
    memo: Vec<Count>,
    memo_stamp: Vec<u32>,
    stamp: u32,
    /// Row stride of `memo`; grows monotonically with the largest word seen.
    memo_n: usize,
}

impl SpalScratch {
    pub(crate) fn new() -> Self {
        SpalScratch {
            first: Vec::new(),
            last: Vec::new(),
            memo: Vec::new(),
            memo_stamp: Vec::new(),
            stamp: 0,
            memo_n: 0,
        }
    }

    /// Total count of distinct palindromic subsequences of a canonical
    /// word over classes `0..q`.
    pub(crate) fn total_canonical(&mut self, letters: &[Letter], q: usize) -> Result<Count> {
        let n = letters.len();
        debug_assert_eq!(canonical_class_count(letters), q);
        if n == 0 {
            return Ok(0);
        }
        fill_occurrence_tables(letters, q, &mut self.first, &mut self.last);
        if self.memo_n < n {
            self.memo_n = n;
            self.memo.clear();
            self.memo.resize(n * n, 0);
            self.memo_stamp.clear();
            self.memo_stamp.resize(n * n, 0);
            self.stamp = 0;
        }
        if self.stamp == u32::MAX {
            self.memo_stamp.fill(0);
            self.stamp = 0;
        }
        self.stamp += 1;
        self.interval_total(0, n - 1, q)
    }

    fn interval_total(&mut self, i: usize, j: usize, q: usize) -> Result<Count> {
        let key = i * self.memo_n + j;
        if self.memo_stamp[key] == self.stamp {
            return Ok(self.memo[key]);
        }
        let mut sum: Count = 0;
        for c in 0..q {
            let f = self.first[i * q + c] as usize;
            if f > j {
                continue;
            }
            let l = self.last[(j + 1) * q + c] as usize;
            sum = sum.checked_add(1).ok_or(Error::Overflow)?;
            if f < l {
                let inner = if f + 1 <= l - 1 {
                    self.interval_total(f + 1, l - 1, q)?
                } else {
                    0
                };
                sum = sum
                    .checked_add(1)
                    .and_then(|s| s.checked_add(inner))
                    .ok_or(Error::Overflow)?;
            }
        }
        self.memo[key] = sum;
        self.memo_stamp[key] = self.stamp;
        Ok(sum)
    }
}

/// Total number of distinct palindromic subsequences.
///
/// Same recursion as [`spal_profile`] with the per-length bookkeeping
/// dropped; the two always agree on the total.
pub fn count_spal(w: &Word) -> Result<Count> {
    let canon = canonicalize(w);
    let letters = canon.word().letters();
    SpalScratch::new().total_canonical(letters, canonical_class_count(letters))
}

/// Materializes the set of distinct palindromic subsequences, in
/// length-then-lexicographic order.
///
/// The set can be exponential in `|w|`, so a positive `cap` is required;
/// when the set is larger the call fails with [`Error::CapExceeded`]
/// without materializing anything.
pub fn enumerate_spal(w: &Word, cap: Count) -> Result<Vec<Word>> {
    if cap == 0 {
        return Err(Error::domain("enumerate_spal", "cap must be at least 1"));
    }
    let total = count_spal(w)?;
    if total > cap {
        return Err(Error::CapExceeded { cap, size: total });
    }
    let n = w.len();
    let mut out: Vec<Word> = Vec::with_capacity(total as usize);
    if n > 0 {
        let canon = canonicalize(w);
        let letters = canon.word().letters();
        let q = canonical_class_count(letters);
        // class id -> the caller's original letter, for emission
        let mut original = vec![0 as Letter; q];
        for (&cl, &orig) in letters.iter().zip(w.letters()) {
            original[cl as usize] = orig;
        }
        let mut ctx = EnumCtx {
            q,
            first: Vec::new(),
            last: Vec::new(),
            original,
        };
        fill_occurrence_tables(letters, q, &mut ctx.first, &mut ctx.last);
        ctx.walk(0, n - 1, &mut Vec::new(), &mut out);
    }
    debug_assert_eq!(out.len() as Count, total);
    out.sort_unstable_by(|a, b| {
        a.len()
            .cmp(&b.len())
            .then_with(|| a.letters().cmp(b.letters()))
    });
    Ok(out)
}

struct EnumCtx {
    q: usize,
    first: Vec<u32>,
    last: Vec<u32>,
    original: Vec<Letter>,
}

impl EnumCtx {
    /// Emits every distinct palindromic subsequence of `w[i..=j]` wrapped
    /// in the already-chosen outer letters `left ... left^R`. Mirrors the
    /// counting recursion, so each value is emitted exactly once.
    fn walk(&self, i: usize, j: usize, left: &mut Vec<usize>, out: &mut Vec<Word>) {
        for c in 0..self.q {
            let f = self.first[i * self.q + c] as usize;
            if f > j {
                continue;
            }
            let l = self.last[(j + 1) * self.q + c] as usize;
            out.push(self.emit(left, c, false));
            if f < l {
                out.push(self.emit(left, c, true));
                if f + 1 <= l - 1 {
                    left.push(c);
                    self.walk(f + 1, l - 1, left, out);
                    left.pop();
                }
            }
        }
    }

    fn emit(&self, left: &[usize], mid: usize, doubled: bool) -> Word {
        let mut v = Vec::with_capacity(left.len() * 2 + 2);
        v.extend(left.iter().map(|&cl| self.original[cl]));
        v.push(self.original[mid]);
        if doubled {
            v.push(self.original[mid]);
        }
        v.extend(left.iter().rev().map(|&cl| self.original[cl]));
        Word::new(v)
    }
}

/// Default length ceiling for [`brute_force_profile`].
pub const BRUTE_FORCE_DEFAULT_MAX: usize = 20;

/// Position subsets only fit in a `u64` mask up to this length.
const BRUTE_FORCE_HARD_MAX: usize = 63;

fn is_palindrome_slice(s: &[Letter]) -> bool {
    let n = s.len();
    (0..n / 2).all(|i| s[i] == s[n - 1 - i])
}

/// Independent oracle for [`spal_profile`]: enumerates all `2^n - 1`
/// non-empty subsets of positions, deduplicates the palindromic
/// subsequences as strings, and tallies them by length.
///
/// Exponential by construction; refuses words longer than
/// `min(max_n, 63)`.
pub fn brute_force_profile(w: &Word, max_n: usize) -> Result<LengthProfile> {
    let n = w.len();
    let limit = max_n.min(BRUTE_FORCE_HARD_MAX);
    if n > limit {
        return Err(Error::LengthExceeded { len: n, max: limit });
    }
    let letters = w.letters();
    let mut seen: HashSet<Vec<Letter>> = HashSet::new();
    let mut by_length = vec![0 as Count; n];
    let mut buf: Vec<Letter> = Vec::with_capacity(n);
    for mask in 1u64..(1u64 << n) {
        buf.clear();
        let mut m = mask;
        while m != 0 {
            buf.push(letters[m.trailing_zeros() as usize]);
            m &= m - 1;
        }
        if is_palindrome_slice(&buf) && seen.insert(buf.clone()) {
            by_length[buf.len() - 1] += 1;
        }
    }
    LengthProfile::from_by_length(by_length)
}

/// Number of distinct palindromic factors (contiguous subwords).
pub fn count_pal_factors(w: &Word) -> Count {
    Eertree::build(w.letters()).distinct_count() as Count
}

/// The distinct palindromic factors, in length-then-lexicographic order.
/// A word of length `n` has at most `n` of these, so no cap is needed.
pub fn enumerate_pal_factors(w: &Word) -> Vec<Word> {
    let mut out = Eertree::build(w.letters()).factors();
    out.sort_unstable_by(|a, b| {
        a.len()
            .cmp(&b.len())
            .then_with(|| a.letters().cmp(b.letters()))
    });
    out
}

/// A block word is a concatenation of runs of pairwise distinct letters
/// (`a^i b^j c^k ...` with no letter reused). These are exactly the words
/// whose palindromic subsequences all sit inside single runs, which makes
/// them the equality case of several bounds. The empty word is a block
/// word.
pub fn is_block_word(w: &Word) -> bool {
    let mut seen: HashSet<Letter> = HashSet::new();
    let mut prev: Option<Letter> = None;
    for &x in w.letters() {
        if prev == Some(x) {
            continue;
        }
        if !seen.insert(x) {
            return false;
        }
        prev = Some(x);
    }
    true
}

/// How many palindromic subsequences appear when `x` is appended: the
/// count for `w x` minus the count for `w`.
pub fn new_spal_on_append(w: &Word, x: Letter) -> Result<Count> {
    let after = count_spal(&w.appended(x))?;
    let before = count_spal(w)?;
    Ok(after - before)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn w(text: &str) -> Word {
        text.parse().unwrap()
    }

    /// Slow reference for the factor routines: all substrings, filtered
    /// and deduplicated.
    fn naive_pal_factors(word: &Word) -> BTreeSet<Word> {
        let letters = word.letters();
        let mut out = BTreeSet::new();
        for i in 0..letters.len() {
            for j in i..letters.len() {
                let slice = &letters[i..=j];
                if is_palindrome_slice(slice) {
                    out.insert(Word::new(slice.to_vec()));
                }
            }
        }
        out
    }

    #[test]
    fn profile_of_small_words() {
        let p = spal_profile(&w("abbaa")).unwrap();
        assert_eq!(p.by_length(), &[2, 2, 2, 1, 0]);
        assert_eq!(p.total(), 7);
        assert_eq!(p.odd_total(), 4);
        assert_eq!(p.even_total(), 3);

        let p = spal_profile(&w("abcba")).unwrap();
        assert_eq!(p.by_length(), &[3, 2, 3, 1, 1]);
        assert_eq!(p.total(), 10);

        let p = spal_profile(&w("aaaa")).unwrap();
        assert_eq!(p.by_length(), &[1, 1, 1, 1]);
    }

    #[test]
    fn profile_of_empty_word() {
        let p = spal_profile(&Word::empty()).unwrap();
        assert_eq!(p, LengthProfile::empty());
        assert_eq!(p.total(), 0);
        assert_eq!(p.of_length(1), 0);
        assert_eq!(count_spal(&Word::empty()).unwrap(), 0);
    }

    #[test]
    fn totals_match_the_profile() {
        for text in ["aabb", "abcb", "abbaa", "abcba", "aaaa", "abcabc"] {
            let word = w(text);
            assert_eq!(
                count_spal(&word).unwrap(),
                spal_profile(&word).unwrap().total(),
                "totals diverged on {text}"
            );
        }
        assert_eq!(count_spal(&w("aabb")).unwrap(), 4);
    }

    #[test]
    fn brute_force_pins_the_recursion() {
        // Hand-checkable values, recomputed by the subset oracle.
        let p = brute_force_profile(&w("abcba"), 20).unwrap();
        assert_eq!(p.by_length(), &[3, 2, 3, 1, 1]);
        for text in ["", "a", "ab", "aabb", "abbaa", "abcb", "abcabcab"] {
            let word = w(text);
            assert_eq!(
                brute_force_profile(&word, 20).unwrap(),
                spal_profile(&word).unwrap(),
                "oracle disagreed on {text}"
            );
        }
    }

    #[test]
    fn brute_force_refuses_long_words() {
        let long = Word::new(vec![0; 21]);
        assert_eq!(
            brute_force_profile(&long, BRUTE_FORCE_DEFAULT_MAX),
            Err(Error::LengthExceeded { len: 21, max: 20 })
        );
        assert!(brute_force_profile(&long, 21).is_ok());
    }

    #[test]
    fn enumerates_in_length_then_lex_order() {
        let set = enumerate_spal(&w("abbaa"), 100).unwrap();
        let texts: Vec<String> = set.iter().map(|x| x.to_string()).collect();
        assert_eq!(texts, ["a", "b", "aa", "bb", "aaa", "aba", "abba"]);
    }

    #[test]
    fn enumeration_respects_the_cap() {
        assert_eq!(
            enumerate_spal(&w("abcba"), 5),
            Err(Error::CapExceeded { cap: 5, size: 10 })
        );
        assert!(enumerate_spal(&w("abcba"), 10).is_ok());
        assert!(enumerate_spal(&w("abcba"), 0).is_err());
    }

    #[test]
    fn enumeration_keeps_original_letters() {
        let word = w("9,100000,9");
        let set = enumerate_spal(&word, 100).unwrap();
        let letters: Vec<Vec<Letter>> = set.iter().map(|x| x.letters().to_vec()).collect();
        assert_eq!(
            letters,
            [vec![9], vec![100_000], vec![9, 9], vec![9, 100_000, 9]]
        );
    }

    #[test]
    fn enumeration_matches_the_subset_oracle() {
        for text in ["", "a", "aabb", "abbaa", "abcba", "ababab", "aabaa"] {
            let word = w(text);
            let fast: BTreeSet<Word> = enumerate_spal(&word, 10_000).unwrap().into_iter().collect();
            let mut slow: BTreeSet<Word> = BTreeSet::new();
            let letters = word.letters();
            for mask in 1u64..(1u64 << word.len()) {
                let sub: Vec<Letter> = (0..word.len())
                    .filter(|&i| mask >> i & 1 == 1)
                    .map(|i| letters[i])
                    .collect();
                if is_palindrome_slice(&sub) {
                    slow.insert(Word::new(sub));
                }
            }
            assert_eq!(fast, slow, "enumeration diverged on {text:?}");
        }
    }

    #[test]
    fn factor_counts_and_sets() {
        assert_eq!(count_pal_factors(&w("abbaa")), 5);
        let factors: Vec<String> = enumerate_pal_factors(&w("abbaa"))
            .iter()
            .map(|x| x.to_string())
            .collect();
        assert_eq!(factors, ["a", "b", "aa", "bb", "abba"]);
        assert_eq!(count_pal_factors(&Word::empty()), 0);
    }

    #[test]
    fn factors_match_the_naive_scan() {
        for text in ["", "a", "aaaa", "abbaa", "abacaba", "abcabcabc", "aabaab"] {
            let word = w(text);
            let fast: BTreeSet<Word> = enumerate_pal_factors(&word).into_iter().collect();
            assert_eq!(fast, naive_pal_factors(&word), "factors diverged on {text:?}");
            assert_eq!(count_pal_factors(&word), fast.len() as Count);
        }
    }

    #[test]
    fn block_words() {
        assert!(is_block_word(&Word::empty()));
        assert!(is_block_word(&w("aaa")));
        assert!(is_block_word(&w("aabbbc")));
        assert!(is_block_word(&w("abc")));
        assert!(!is_block_word(&w("aba")));
        assert!(!is_block_word(&w("aabba")));
    }

    #[test]
    fn append_delta() {
        // abcb has {a, b, c, bb, bcb}; appending a adds exactly
        // {aa, aba, aca, abba, abcba}.
        assert_eq!(new_spal_on_append(&w("abcb"), 0).unwrap(), 5);
        assert_eq!(new_spal_on_append(&Word::empty(), 3).unwrap(), 1);
        // appending never removes anything
        assert!(new_spal_on_append(&w("abab"), 1).unwrap() >= 1);
    }
}
