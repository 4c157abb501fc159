//! Letter-removal inequalities: how much the scattered-palindrome count
//! can shrink when occurrences of one letter are deleted.
//!
//! Two removal rules are checked. The *triple* rule applies when a
//! letter occurs exactly three times and every other letter at most
//! twice: deleting the letter's first and third occurrences (keeping the
//! middle one) at most halves the count, `SP(w) <= 2 SP(w') + 1`. An
//! exhaustive scan through length 11 found no violation of this rule.
//!
//! The *outer* rule deletes the first and last occurrences of a letter
//! that occurs at least three times; writing `w = v1 a v2 a v3` with no
//! `a` in `v1` or `v3`, the bound checked is `SP(w) <= 2 SP(w') + 1`
//! when `v3` mirrors `v1` and `SP(w) <= 3 SP(w') + 1 - odd(w')`
//! otherwise, where `odd` counts the odd-length palindromic
//! subsequences (the sibling bound with the even-length count
//! substituted is reported alongside the general case). These bounds
//! carry no scarcity condition on the other letters, and without one
//! they can fail: the shortest violating words have length 7 (`abaabba`
//! with the mirror bound on `b`; `abacbab` with the general bound on
//! `a`), and in every known violation some letter other than the
//! removed one occurs at least three times. Restricted to words where
//! every other letter occurs at most twice — the regime the triple rule
//! already lives in — no violation of either bound appeared in an
//! exhaustive scan through length 11 or in tens of thousands of random
//! probes through length 16. [`check_outer_removal`] therefore reports
//! the verdict instead of asserting it; [`sample_outer_removal_instance`]
//! draws unrestricted instances (which can violate the stated bounds),
//! while [`sample_outer_removal_instance_bounded`] draws from the
//! restricted regime.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::palcount::{count_spal, spal_profile};
use crate::words::{Letter, Word};
use crate::Count;

/// Verdict of the triple-occurrence removal rule on one `(word, letter)`
/// pair.
#[derive(Clone, Debug)]
pub struct TripleRemovalCheck {
    /// True when `letter` occurs exactly three times and every other
    /// letter at most twice.
    pub applicable: bool,
    /// `SP(w)`.
    pub lhs: Count,
    /// `2 SP(w') + 1`, when applicable.
    pub rhs: Option<Count>,
    pub holds: Option<bool>,
    /// `w` with the letter's first and third occurrences deleted.
    pub reduced: Option<Word>,
}

/// Checks `SP(w) <= 2 SP(w') + 1` for the triple-occurrence rule.
pub fn check_triple_removal(w: &Word, letter: Letter) -> Result<TripleRemovalCheck> {
    let lhs = count_spal(w)?;
    let positions = w.occurrence_positions(letter);
    let applicable = positions.len() == 3
        && w.letters()
            .iter()
            .all(|&x| x == letter || w.occurrence_count(x) <= 2);
    if !applicable {
        return Ok(TripleRemovalCheck {
            applicable,
            lhs,
            rhs: None,
            holds: None,
            reduced: None,
        });
    }
    let drop_first = positions[0] - 1;
    let drop_third = positions[2] - 1;
    let reduced = Word::new(
        w.letters()
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != drop_first && i != drop_third)
            .map(|(_, &x)| x)
            .collect(),
    );
    let rhs = count_spal(&reduced)?
        .checked_mul(2)
        .and_then(|d| d.checked_add(1))
        .ok_or(Error::Overflow)?;
    Ok(TripleRemovalCheck {
        applicable,
        lhs,
        rhs: Some(rhs),
        holds: Some(lhs <= rhs),
        reduced: Some(reduced),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OuterRemovalCase {
    /// The suffix after the last occurrence mirrors the prefix before
    /// the first.
    Mirror,
    General,
}

/// Verdict of the first-and-last-occurrence removal rule on one
/// `(word, letter)` pair.
#[derive(Clone, Debug)]
pub struct OuterRemovalCheck {
    /// True when `letter` occurs at least three times.
    pub applicable: bool,
    pub case: Option<OuterRemovalCase>,
    /// `SP(w)`.
    pub lhs: Count,
    /// The case's bound: `2 SP(w') + 1` (mirror) or
    /// `3 SP(w') + 1 - odd(w')` (general).
    pub rhs: Option<Count>,
    pub holds: Option<bool>,
    /// General case only: `3 SP(w') + 1 - even(w')`, a weaker companion
    /// bound obtained by substituting the even-length count.
    pub rhs_even_variant: Option<Count>,
    pub holds_even_variant: Option<bool>,
    /// `w` with the letter's first and last occurrences deleted.
    pub reduced: Option<Word>,
}

/// Checks the first-and-last-occurrence removal rule, choosing the
/// mirror or general bound by comparing the prefix before the first
/// occurrence with the suffix after the last.
pub fn check_outer_removal(w: &Word, letter: Letter) -> Result<OuterRemovalCheck> {
    let lhs = count_spal(w)?;
    let positions = w.occurrence_positions(letter);
    if positions.len() < 3 {
        return Ok(OuterRemovalCheck {
            applicable: false,
            case: None,
            lhs,
            rhs: None,
            holds: None,
            rhs_even_variant: None,
            holds_even_variant: None,
            reduced: None,
        });
    }
    let first = positions[0] - 1;
    let last = positions[positions.len() - 1] - 1;
    let prefix = Word::new(w.letters()[..first].to_vec());
    let suffix = Word::new(w.letters()[last + 1..].to_vec());
    let reduced = Word::new(
        w.letters()
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != first && i != last)
            .map(|(_, &x)| x)
            .collect(),
    );
    let mirrored = suffix == prefix.reversed();
    let profile = spal_profile(&reduced)?;
    let sp = profile.total();
    let (case, rhs, rhs_even_variant) = if mirrored {
        let rhs = sp
            .checked_mul(2)
            .and_then(|d| d.checked_add(1))
            .ok_or(Error::Overflow)?;
        (OuterRemovalCase::Mirror, rhs, None)
    } else {
        let tripled = sp
            .checked_mul(3)
            .and_then(|d| d.checked_add(1))
            .ok_or(Error::Overflow)?;
        // Both subtrahends are at most SP(w'), so neither can underflow.
        (
            OuterRemovalCase::General,
            tripled - profile.odd_total(),
            Some(tripled - profile.even_total()),
        )
    };
    Ok(OuterRemovalCheck {
        applicable: true,
        case: Some(case),
        lhs,
        rhs: Some(rhs),
        holds: Some(lhs <= rhs),
        rhs_even_variant,
        holds_even_variant: rhs_even_variant.map(|r| lhs <= r),
        reduced: Some(reduced),
    })
}

/// Draws a word on which the triple rule is applicable: letter `0`
/// exactly three times, letters `1..` at most twice each, total length
/// at most `max_n` (which must be at least 3).
pub fn sample_triple_removal_instance<R: Rng + ?Sized>(
    rng: &mut R,
    max_n: usize,
) -> Result<Word> {
    if max_n < 3 {
        return Err(Error::domain(
            "sample_triple_removal_instance",
            format!("needs room for three occurrences, got max_n = {max_n}"),
        ));
    }
    let n = rng.gen_range(3..=max_n);
    let mut letters: Vec<Letter> = vec![0, 0, 0];
    for i in 0..n - 3 {
        letters.push(1 + (i / 2) as Letter);
    }
    letters.shuffle(rng);
    Ok(Word::new(letters))
}

/// Draws a word on which the outer rule is applicable in the requested
/// case: letter `0` at least three times, none of them in the prefix
/// `v1` or suffix `v3`, with `v3` mirroring `v1` exactly when `mirror`
/// is set. The other letters repeat freely, so the stated bounds can
/// fail on these draws (see the module notes). Total length is at most
/// `max_n`, which must be at least 3 (mirror) or 4 (general, since `v3`
/// must differ from reversed `v1`).
pub fn sample_outer_removal_instance<R: Rng + ?Sized>(
    rng: &mut R,
    max_n: usize,
    mirror: bool,
) -> Result<Word> {
    let least = if mirror { 3 } else { 4 };
    if max_n < least {
        return Err(Error::domain(
            "sample_outer_removal_instance",
            format!("needs max_n >= {least} for this case, got {max_n}"),
        ));
    }
    let alphabet = 3 as Letter; // letters 1..=3 besides the special letter 0
    // Budget: two outer occurrences + v2 containing at least one more.
    let n = rng.gen_range(least..=max_n);
    let spare = n - 3; // positions left for v1 and v3 once v2 has one
    let v1_len = rng.gen_range(0..=spare / 2);
    let v1: Vec<Letter> = (0..v1_len).map(|_| rng.gen_range(1..=alphabet)).collect();
    let v3: Vec<Letter> = if mirror {
        v1.iter().rev().copied().collect()
    } else {
        // An empty suffix mirrors an empty prefix, so rule that pair out;
        // beyond that, unequal lengths always differ and equal lengths
        // resample (three letters make a repeat collision unlikely).
        let v3_min = usize::from(v1_len == 0);
        let v3_len = rng.gen_range(v3_min..=spare - v1_len);
        loop {
            let cand: Vec<Letter> =
                (0..v3_len).map(|_| rng.gen_range(1..=alphabet)).collect();
            if cand.iter().rev().ne(v1.iter()) {
                break cand;
            }
        }
    };
    let v2_len = n - 2 - v1.len() - v3.len();
    debug_assert!(v2_len >= 1);
    let mut v2: Vec<Letter> = (0..v2_len).map(|_| rng.gen_range(0..=alphabet)).collect();
    if !v2.contains(&0) {
        let at = rng.gen_range(0..v2.len());
        v2[at] = 0;
    }
    let mut letters = v1;
    letters.push(0);
    letters.extend(v2);
    letters.push(0);
    letters.extend(v3);
    Ok(Word::new(letters))
}

/// Draws an outer-rule instance from the scarce regime: letter `0` at
/// least three times, every other letter at most twice. The prefix `v1`
/// uses distinct letters; in the mirror case `v3` reverses `v1`, and
/// otherwise `v1` and `v3` use disjoint letters with at least one of
/// them non-empty, so the suffix can never mirror the prefix. Needs
/// `max_n >= 3` (mirror) or `>= 4` (general).
pub fn sample_outer_removal_instance_bounded<R: Rng + ?Sized>(
    rng: &mut R,
    max_n: usize,
    mirror: bool,
) -> Result<Word> {
    let least = if mirror { 3 } else { 4 };
    if max_n < least {
        return Err(Error::domain(
            "sample_outer_removal_instance_bounded",
            format!("needs max_n >= {least} for this case, got {max_n}"),
        ));
    }
    let n = rng.gen_range(least..=max_n);
    let (v1, v3): (Vec<Letter>, Vec<Letter>) = if mirror {
        let j = rng.gen_range(0..=(n - 3) / 2);
        let v1: Vec<Letter> = (1..=j as Letter).collect();
        let v3 = v1.iter().rev().copied().collect();
        (v1, v3)
    } else {
        let outer = rng.gen_range(1..=n - 3);
        let j = rng.gen_range(0..=outer);
        let v1: Vec<Letter> = (1..=j as Letter).collect();
        let v3: Vec<Letter> = (j as Letter + 1..=outer as Letter).collect();
        (v1, v3)
    };
    // Labels above everything used by `v1` and `v3` are free for `v2`.
    let fresh = (v1.len() + v3.len()) as Letter;
    let middle = n - 2 - v1.len() - v3.len();
    debug_assert!(middle >= 1);
    let zeros = rng.gen_range(1..=middle);
    let mut v2: Vec<Letter> = vec![0; zeros];
    for i in 0..middle - zeros {
        v2.push(fresh + 1 + (i / 2) as Letter);
    }
    v2.shuffle(rng);
    let mut letters = v1;
    letters.push(0);
    letters.extend(v2);
    letters.push(0);
    letters.extend(v3);
    Ok(Word::new(letters))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::canonical::rng_for;

    fn w(text: &str) -> Word {
        text.parse().unwrap()
    }

    #[test]
    fn triple_rule_is_tight_on_simple_words() {
        let check = check_triple_removal(&w("aaa"), 0).unwrap();
        assert!(check.applicable);
        assert_eq!(check.reduced.as_ref().unwrap().to_string(), "a");
        assert_eq!((check.lhs, check.rhs), (3, Some(3)));
        assert_eq!(check.holds, Some(true));

        // Keeping the middle occurrence: positions 1 and 6 of `a` go.
        let check = check_triple_removal(&w("abcaca"), 0).unwrap();
        assert!(check.applicable);
        assert_eq!(check.reduced.as_ref().unwrap().to_string(), "bcac");
        assert_eq!((check.lhs, check.rhs), (11, Some(11)));
        assert_eq!(check.holds, Some(true));
    }

    #[test]
    fn triple_rule_applicability_is_strict() {
        // Four occurrences: not the triple shape.
        let check = check_triple_removal(&w("abaaba"), 0).unwrap();
        assert!(!check.applicable);
        assert_eq!(check.rhs, None);

        // Another letter occurs three times.
        let check = check_triple_removal(&w("aaabbb"), 0).unwrap();
        assert!(!check.applicable);

        let check = check_triple_removal(&w("abc"), 0).unwrap();
        assert!(!check.applicable);
        assert_eq!(check.lhs, 3);
    }

    #[test]
    fn outer_rule_mirror_case() {
        // Empty prefix and suffix mirror each other trivially.
        let check = check_outer_removal(&w("abaaba"), 0).unwrap();
        assert!(check.applicable);
        assert_eq!(check.case, Some(OuterRemovalCase::Mirror));
        assert_eq!(check.reduced.as_ref().unwrap().to_string(), "baab");
        assert_eq!((check.lhs, check.rhs), (12, Some(13)));
        assert_eq!(check.holds, Some(true));
        assert_eq!(check.rhs_even_variant, None);

        let check = check_outer_removal(&w("cbabababc"), 1).unwrap();
        assert_eq!(check.case, Some(OuterRemovalCase::Mirror));
        assert_eq!(check.holds, Some(true));
    }

    #[test]
    fn outer_rule_general_case() {
        let check = check_outer_removal(&w("aabaac"), 0).unwrap();
        assert!(check.applicable);
        assert_eq!(check.case, Some(OuterRemovalCase::General));
        assert_eq!(check.reduced.as_ref().unwrap().to_string(), "abac");
        // SP(abac) = 5 with 4 odd and 1 even.
        assert_eq!((check.lhs, check.rhs), (8, Some(12)));
        assert_eq!(check.holds, Some(true));
        assert_eq!(check.rhs_even_variant, Some(15));
        assert_eq!(check.holds_even_variant, Some(true));
    }

    #[test]
    fn outer_rule_needs_three_occurrences() {
        let check = check_outer_removal(&w("abab"), 0).unwrap();
        assert!(!check.applicable);
        assert_eq!(check.rhs, None);
    }

    #[test]
    fn sampled_triple_instances_always_hold() {
        let mut rng = rng_for(11, 3, 0);
        for _ in 0..300 {
            let word = sample_triple_removal_instance(&mut rng, 12).unwrap();
            let check = check_triple_removal(&word, 0).unwrap();
            assert!(check.applicable, "sampler must hit the rule's shape: {word}");
            assert_eq!(check.holds, Some(true), "violated on {word}");
        }
        assert!(sample_triple_removal_instance(&mut rng, 2).is_err());
    }

    #[test]
    fn bounded_outer_instances_always_hold() {
        let mut rng = rng_for(13, 4, 1);
        for mirror in [true, false] {
            for _ in 0..300 {
                let word = sample_outer_removal_instance_bounded(&mut rng, 12, mirror).unwrap();
                for &x in word.letters() {
                    assert!(
                        x == 0 || word.occurrence_count(x) <= 2,
                        "scarcity broken: {word}"
                    );
                }
                let check = check_outer_removal(&word, 0).unwrap();
                assert!(check.applicable, "sampler must hit the rule's shape: {word}");
                let expected = if mirror {
                    OuterRemovalCase::Mirror
                } else {
                    OuterRemovalCase::General
                };
                assert_eq!(check.case, Some(expected), "wrong case for {word}");
                assert_eq!(check.holds, Some(true), "violated on {word}");
                if !mirror {
                    assert_eq!(check.holds_even_variant, Some(true), "violated on {word}");
                }
            }
        }
        assert!(sample_outer_removal_instance_bounded(&mut rng, 2, true).is_err());
        assert!(sample_outer_removal_instance_bounded(&mut rng, 3, false).is_err());
    }

    #[test]
    fn unrestricted_outer_sampler_hits_the_shape() {
        let mut rng = rng_for(17, 5, 2);
        for mirror in [true, false] {
            for _ in 0..200 {
                let word = sample_outer_removal_instance(&mut rng, 12, mirror).unwrap();
                let check = check_outer_removal(&word, 0).unwrap();
                assert!(check.applicable, "sampler must hit the rule's shape: {word}");
                let expected = if mirror {
                    OuterRemovalCase::Mirror
                } else {
                    OuterRemovalCase::General
                };
                assert_eq!(check.case, Some(expected), "wrong case for {word}");
            }
        }
        assert!(sample_outer_removal_instance(&mut rng, 3, false).is_err());
    }

    #[test]
    fn outer_bounds_fail_without_the_scarcity_hypothesis() {
        // Shortest mirror-case violation: `b` occurs three times, but `a`
        // occurs four, and removing the outer `b`s more than halves the
        // count.
        let check = check_outer_removal(&w("abaabba"), 1).unwrap();
        assert!(check.applicable);
        assert_eq!(check.case, Some(OuterRemovalCase::Mirror));
        assert_eq!(check.reduced.as_ref().unwrap().to_string(), "aaaba");
        assert_eq!((check.lhs, check.rhs), (14, Some(13)));
        assert_eq!(check.holds, Some(false));
        assert_eq!(check.rhs_even_variant, None);

        // Shortest general-case violation; the even-count sibling still
        // holds here.
        let check = check_outer_removal(&w("abacbab"), 0).unwrap();
        assert!(check.applicable);
        assert_eq!(check.case, Some(OuterRemovalCase::General));
        assert_eq!(check.reduced.as_ref().unwrap().to_string(), "bacbb");
        assert_eq!((check.lhs, check.rhs), (17, Some(16)));
        assert_eq!(check.holds, Some(false));
        assert_eq!(check.rhs_even_variant, Some(21));
        assert_eq!(check.holds_even_variant, Some(true));

        // A longer word beats the even-count sibling too.
        let check = check_outer_removal(&w("aaabaabaaba"), 1).unwrap();
        assert!(check.applicable);
        assert_eq!(check.case, Some(OuterRemovalCase::General));
        assert_eq!(check.reduced.as_ref().unwrap().to_string(), "aaaaabaaa");
        assert_eq!((check.lhs, check.rhs), (34, Some(29)));
        assert_eq!(check.holds, Some(false));
        assert_eq!(check.rhs_even_variant, Some(33));
        assert_eq!(check.holds_even_variant, Some(false));

        // Each violation leans on a letter besides the removed one
        // occurring three or more times; none can come from the scarce
        // regime the bounded sampler draws from.
        for (text, letter) in [("abaabba", 1), ("abacbab", 0), ("aaabaabaaba", 1)] {
            let word = w(text);
            assert!(word
                .letters()
                .iter()
                .any(|&x| x != letter && word.occurrence_count(x) >= 3));
        }
    }
}
