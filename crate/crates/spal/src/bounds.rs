//! Closed-form bounds on palindromic subsequence counts and the extremal
//! constructions that attain them.
//!
//! Everything here is exact integer arithmetic on [`Count`]; a bound whose
//! value does not fit reports [`Error::Overflow`] rather than saturating.
//! Conventions: `n` is word length, `q` is alphabet size (distinct letters
//! actually present), `t` is a subsequence length, and Fibonacci numbers
//! are indexed from `F_1 = F_2 = 1`.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::words::{CanonicalWord, Letter};
use crate::Count;

/// Every Fibonacci number that fits in a [`Count`], precomputed.
pub struct FibCache {
    values: Vec<Count>, // values[0] = F_1
}

impl FibCache {
    pub fn new() -> Self {
        let mut values: Vec<Count> = vec![1, 1];
        loop {
            let next = values[values.len() - 1].checked_add(values[values.len() - 2]);
            match next {
                Some(v) => values.push(v),
                None => break,
            }
        }
        FibCache { values }
    }

    /// `F_n`, or `None` when `n` is 0 or past the 64-bit range.
    pub fn get(&self, n: usize) -> Option<Count> {
        if n == 0 {
            None
        } else {
            self.values.get(n - 1).copied()
        }
    }

    /// Largest `n` with `F_n` representable.
    pub fn max_n(&self) -> usize {
        self.values.len()
    }
}

impl Default for FibCache {
    fn default() -> Self {
        FibCache::new()
    }
}

/// `F_n` with `F_1 = F_2 = 1`.
pub fn fibonacci(n: usize) -> Result<Count> {
    if n == 0 {
        return Err(Error::domain("fibonacci", "index starts at 1"));
    }
    let (mut a, mut b): (Count, Count) = (1, 1); // F_1, F_2
    for _ in 2..n {
        let next = a.checked_add(b).ok_or(Error::Overflow)?;
        a = b;
        b = next;
    }
    Ok(if n == 1 { a } else { b })
}

/// The Fibonacci upper bound on the total count for words of length `n`:
/// `F_{n+2} - 1`, which is also `F_1 + ... + F_n`.
pub fn fib_bound(n: usize) -> Result<Count> {
    fibonacci(n + 2)?.checked_sub(1).ok_or(Error::Overflow)
}

/// Number of palindromes of length exactly `t` over a `q`-letter
/// alphabet: `q^ceil(t/2)`, since a palindrome is determined by its first
/// half. This caps the per-length slot of any profile.
pub fn palindromes_of_length(t: usize, q: usize) -> Result<Count> {
    if t == 0 {
        return Err(Error::domain("palindromes_of_length", "length starts at 1"));
    }
    if q == 0 {
        return Err(Error::domain(
            "palindromes_of_length",
            "alphabet must have at least one letter",
        ));
    }
    checked_pow(q as Count, t.div_ceil(2))
}

fn checked_pow(base: Count, exp: usize) -> Result<Count> {
    if base == 1 {
        return Ok(1);
    }
    let exp: u32 = exp.try_into().map_err(|_| Error::Overflow)?;
    base.checked_pow(exp).ok_or(Error::Overflow)
}

/// Maximum count of length-3 palindromic subsequences in a word of length
/// `n >= 3`: `n(n-2)/4` for even `n`, `((n-1)/2)^2` for odd `n`.
pub fn sp3_bound(n: usize) -> Result<Count> {
    if n < 3 {
        return Err(Error::domain(
            "sp3_bound",
            format!("defined for n >= 3, got {n}"),
        ));
    }
    let n = n as Count;
    let prod = if n % 2 == 0 {
        n.checked_mul(n - 2).ok_or(Error::Overflow)? / 4
    } else {
        let h = (n - 1) / 2;
        h.checked_mul(h).ok_or(Error::Overflow)?
    };
    Ok(prod)
}

/// Maxima for the per-length counts at the top of the profile.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TopLengthBounds {
    /// At length `n`: at most 1 (the word itself, when it is a palindrome).
    pub full: Count,
    /// At length `n - 1`: at most 1 for odd `n`, 2 for even `n`.
    /// `None` when `n < 2`.
    pub penultimate: Option<Count>,
    /// At length `n - 2`: exactly computed small values 3, 2, 4 for
    /// `n = 3, 4, 5`, and `ceil(n/2)` from `n >= 6` on. `None` when `n < 3`.
    pub antepenultimate: Option<Count>,
    /// Combined count at lengths `n - 1` and `n`: at most 2.
    /// `None` when `n < 2`.
    pub top_two_sum: Option<Count>,
}

/// Bounds on the top three slots of the length profile for words of
/// length `n >= 1`.
pub fn sp_top_bounds(n: usize) -> Result<TopLengthBounds> {
    if n == 0 {
        return Err(Error::domain(
            "sp_top_bounds",
            "the empty word has no length slots",
        ));
    }
    let penultimate = (n >= 2).then(|| if n % 2 == 0 { 2 } else { 1 });
    let antepenultimate = match n {
        0..=2 => None,
        3 => Some(3),
        4 => Some(2),
        5 => Some(4),
        _ => Some(n.div_ceil(2) as Count),
    };
    Ok(TopLengthBounds {
        full: 1,
        penultimate,
        antepenultimate,
        top_two_sum: (n >= 2).then_some(2),
    })
}

/// Sum of the per-length alphabet caps over `1..=n`:
/// `q + q + q^2 + q^2 + ...`, one term per length. The total count of a
/// length-`n` word over `q` letters can never exceed this.
pub fn alphabet_power_sum(n: usize, q: usize) -> Result<Count> {
    if q == 0 && n > 0 {
        return Err(Error::domain(
            "alphabet_power_sum",
            "alphabet must have at least one letter",
        ));
    }
    let mut sum: Count = 0;
    for t in 1..=n {
        sum = sum
            .checked_add(palindromes_of_length(t, q)?)
            .ok_or(Error::Overflow)?;
    }
    Ok(sum)
}

/// Total-count bound combining the exact top-of-profile maxima with the
/// alphabet caps below them, for `n >= 6`:
/// `sum_{i=1}^{n-3} q^ceil(i/2) + ceil(n/2) + 2`.
pub fn power_sum_bound(n: usize, q: usize) -> Result<Count> {
    if n < 6 {
        return Err(Error::domain(
            "power_sum_bound",
            format!("defined for n >= 6, got {n}"),
        ));
    }
    if q == 0 {
        return Err(Error::domain(
            "power_sum_bound",
            "alphabet must have at least one letter",
        ));
    }
    let tail = alphabet_power_sum(n - 3, q)?;
    tail.checked_add(n.div_ceil(2) as Count)
        .and_then(|s| s.checked_add(2))
        .ok_or(Error::Overflow)
}

/// Total-count bound replacing the first four alphabet caps with the
/// sharper quadratic maxima, for `n >= 7`:
/// `floor((n^2 + 2n + 4) / 2) + sum_{i=5}^{n-3} q^ceil(i/2)`.
pub fn quadratic_power_bound(n: usize, q: usize) -> Result<Count> {
    if n < 7 {
        return Err(Error::domain(
            "quadratic_power_bound",
            format!("defined for n >= 7, got {n}"),
        ));
    }
    if q == 0 {
        return Err(Error::domain(
            "quadratic_power_bound",
            "alphabet must have at least one letter",
        ));
    }
    let n64 = n as Count;
    let head = n64
        .checked_mul(n64)
        .and_then(|s| s.checked_add(2 * n64))
        .and_then(|s| s.checked_add(4))
        .ok_or(Error::Overflow)?
        / 2;
    let mut sum = head;
    for t in 5..=n - 3 {
        sum = sum
            .checked_add(palindromes_of_length(t, q)?)
            .ok_or(Error::Overflow)?;
    }
    Ok(sum)
}

/// Exact maximum of the total count over words of length `n` using
/// exactly `q` distinct letters, valid when `2q >= n`:
/// `2^{n-q} (2q - n + 2) - 2`.
pub fn high_q_max(n: usize, q: usize) -> Result<Count> {
    if n == 0 || q == 0 || q > n || 2 * q < n {
        return Err(Error::domain(
            "high_q_max",
            format!("requires 1 <= q <= n <= 2q, got n = {n}, q = {q}"),
        ));
    }
    let pow = checked_pow(2, n - q)?;
    pow.checked_mul((2 * q - n + 2) as Count)
        .and_then(|s| s.checked_sub(2))
        .ok_or(Error::Overflow)
}

/// Upper bound for doubled words (every letter occurring exactly twice,
/// `n = 2q`): `2^{q+1} - 2`.
pub fn doubled_bound(q: usize) -> Result<Count> {
    if q == 0 {
        return Err(Error::domain(
            "doubled_bound",
            "alphabet must have at least one letter",
        ));
    }
    checked_pow(2, q + 1)?.checked_sub(2).ok_or(Error::Overflow)
}

/// Conjectured maximum of the total count over all words of length `n`
/// (any alphabet), together with the alphabet sizes expected to attain it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjectureValue {
    pub n: usize,
    pub max_sp: Count,
    pub achieving_q: BTreeSet<usize>,
}

/// The conjectured global maximum for length `n >= 1`:
/// `3 * 2^{ceil(n/2) - 1} - 2` at `q = ceil(n/2)` for odd `n`, and
/// `2^{n/2 + 1} - 2` at `q ∈ {n/2, n/2 + 1}` for even `n`.
pub fn conjectured_max(n: usize) -> Result<ConjectureValue> {
    if n == 0 {
        return Err(Error::domain("conjectured_max", "defined for n >= 1"));
    }
    let (max_sp, achieving_q) = if n % 2 == 1 {
        let h = n.div_ceil(2);
        let value = checked_pow(2, h - 1)?
            .checked_mul(3)
            .and_then(|s| s.checked_sub(2))
            .ok_or(Error::Overflow)?;
        (value, BTreeSet::from([h]))
    } else {
        let value = checked_pow(2, n / 2 + 1)?
            .checked_sub(2)
            .ok_or(Error::Overflow)?;
        (value, BTreeSet::from([n / 2, n / 2 + 1]))
    };
    Ok(ConjectureValue {
        n,
        max_sp,
        achieving_q,
    })
}

/// The named extremal constructions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExtremalFamily {
    /// `a_1 .. a_q a_{n-q} .. a_1`, needs `2q >= n`; attains
    /// [`high_q_max`] exactly.
    HighAlphabet,
    /// `(a_1 .. a_{n/2})^2`, even `n` with `q = n/2`; maximizes the count
    /// of length-3 palindromic subsequences.
    TripleEven,
    /// `a_1 .. a_h a_{h+1} a_1 .. a_h`, odd `n = 2h + 1` with `q = h + 1`;
    /// the odd counterpart of [`ExtremalFamily::TripleEven`].
    TripleOdd,
    /// `a_1 .. a_q a_q .. a_1`, `n = 2q`; attains [`doubled_bound`].
    Doubled,
}

/// Builds the requested construction as a canonical word.
pub fn extremal_word(n: usize, q: usize, family: ExtremalFamily) -> Result<CanonicalWord> {
    let fail = |reason: String| Err(Error::Domain {
        op: "extremal_word",
        reason,
    });
    if n == 0 || q == 0 || q > n {
        return fail(format!("requires 1 <= q <= n, got n = {n}, q = {q}"));
    }
    if n > u32::MAX as usize {
        return fail(format!("n = {n} is too long for letter ids"));
    }
    let letters: Vec<Letter> = match family {
        ExtremalFamily::HighAlphabet => {
            if 2 * q < n {
                return fail(format!("high-alphabet family needs 2q >= n, got n = {n}, q = {q}"));
            }
            (0..q as Letter).chain((0..(n - q) as Letter).rev()).collect()
        }
        ExtremalFamily::TripleEven => {
            if n % 2 != 0 || q != n / 2 {
                return fail(format!(
                    "even-length triple family needs even n with q = n/2, got n = {n}, q = {q}"
                ));
            }
            (0..q as Letter).chain(0..q as Letter).collect()
        }
        ExtremalFamily::TripleOdd => {
            if n % 2 != 1 || q != n.div_ceil(2) {
                return fail(format!(
                    "odd-length triple family needs odd n with q = (n+1)/2, got n = {n}, q = {q}"
                ));
            }
            (0..q as Letter).chain(0..q as Letter - 1).collect()
        }
        ExtremalFamily::Doubled => {
            if n != 2 * q {
                return fail(format!("doubled family needs n = 2q, got n = {n}, q = {q}"));
            }
            (0..q as Letter).chain((0..q as Letter).rev()).collect()
        }
    };
    debug_assert_eq!(letters.len(), n);
    Ok(CanonicalWord::from_canonical_letters(letters))
}
