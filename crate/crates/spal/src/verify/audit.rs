//! Per-word audit: computes the exact palindromic counts of one word and
//! checks every applicable closed-form bound against them.
//!
//! Every check is a theorem about all words, so on a correct
//! implementation no audit ever reports a violation; the auditor exists
//! to make that falsifiable on demand, word by word.

use std::collections::HashMap;

use crate::bounds;
use crate::error::{Error, Result};
use crate::palcount::{count_pal_factors, is_block_word, spal_profile, LengthProfile};
use crate::words::Word;
use crate::Count;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Violated,
    /// The bound's side conditions (length, alphabet, shape) are not met
    /// by this word.
    NotApplicable,
}

/// One bound comparison. For most checks `observed` must stay within
/// `bound`; the two biconditional checks (`spal_eq_length_iff_block`)
/// instead require the indicator values to agree.
#[derive(Clone, Debug)]
pub struct BoundCheck {
    pub id: String,
    pub observed: Count,
    pub bound: Count,
    pub verdict: Verdict,
}

fn le(id: impl Into<String>, observed: Count, bound: Count) -> BoundCheck {
    BoundCheck {
        id: id.into(),
        observed,
        bound,
        verdict: if observed <= bound {
            Verdict::Holds
        } else {
            Verdict::Violated
        },
    }
}

fn iff(id: impl Into<String>, left: bool, right: bool) -> BoundCheck {
    BoundCheck {
        id: id.into(),
        observed: left as Count,
        bound: right as Count,
        verdict: if left == right {
            Verdict::Holds
        } else {
            Verdict::Violated
        },
    }
}

fn na(id: impl Into<String>) -> BoundCheck {
    BoundCheck {
        id: id.into(),
        observed: 0,
        bound: 0,
        verdict: Verdict::NotApplicable,
    }
}

/// A bound whose value overflows the count type cannot be violated by
/// any representable count, so it saturates instead of failing the
/// audit.
fn sat(r: Result<Count>) -> Result<Count> {
    match r {
        Err(Error::Overflow) => Ok(Count::MAX),
        other => other,
    }
}

/// Exact counts for one word plus the verdict of every bound check.
#[derive(Clone, Debug)]
pub struct BoundReport {
    pub word: Word,
    pub n: usize,
    /// Number of distinct letters.
    pub q: usize,
    /// Distinct palindromic factors (contiguous).
    pub pal_factors: Count,
    /// Distinct palindromic subsequences (scattered).
    pub spal: Count,
    pub profile: LengthProfile,
    pub block_word: bool,
    pub checks: Vec<BoundCheck>,
}

impl BoundReport {
    pub fn violations(&self) -> Vec<&BoundCheck> {
        self.checks
            .iter()
            .filter(|c| c.verdict == Verdict::Violated)
            .collect()
    }

    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.verdict != Verdict::Violated)
    }

    pub fn check(&self, id: &str) -> Option<&BoundCheck> {
        self.checks.iter().find(|c| c.id == id)
    }
}

/// Computes the exact factor and subsequence counts of `w` and evaluates
/// every applicable bound. The check list has a fixed order and a fixed
/// set of ids, with inapplicable checks kept in place and marked.
pub fn audit_word(w: &Word) -> Result<BoundReport> {
    let n = w.len();
    let q = w.alphabet_size();
    let profile = spal_profile(w)?;
    let spal = profile.total();
    let pal_factors = count_pal_factors(w);
    let block_word = is_block_word(w);

    let mut checks = Vec::new();

    checks.push(le("factor_count_le_length", pal_factors, n as Count));
    checks.push(le("length_le_spal_count", n as Count, spal));
    checks.push(iff(
        "spal_eq_length_iff_block",
        spal == n as Count,
        block_word,
    ));
    checks.push(le("fibonacci_bound", spal, sat(bounds::fib_bound(n))?));
    checks.push(if n == 0 {
        na("alphabet_power_sum")
    } else {
        le(
            "alphabet_power_sum",
            spal,
            sat(bounds::alphabet_power_sum(n, q))?,
        )
    });
    for t in 1..=n {
        checks.push(le(
            format!("alphabet_power_bound_t{t}"),
            profile.of_length(t),
            sat(bounds::palindromes_of_length(t, q))?,
        ));
    }

    let zero_prop_breaks = (1..n)
        .filter(|&t| profile.of_length(t) == 0 && profile.of_length(t + 1) > 0)
        .count() as Count;
    checks.push(le("zero_propagation", zero_prop_breaks, 0));

    let odd_breaks = (1..n)
        .filter(|&t| t % 2 == 1 && profile.of_length(t) < profile.of_length(t + 1))
        .count() as Count;
    checks.push(le("odd_step_monotone", odd_breaks, 0));

    checks.push(if n >= 1 {
        le("sp1_le_n", profile.of_length(1), n as Count)
    } else {
        na("sp1_le_n")
    });
    checks.push(if n >= 2 {
        le("sp2_le_half_n", profile.of_length(2), (n / 2) as Count)
    } else {
        na("sp2_le_half_n")
    });
    checks.push(if n >= 1 {
        le("sp_full_le_1", profile.of_length(n), 1)
    } else {
        na("sp_full_le_1")
    });

    let tops = if n >= 1 {
        Some(bounds::sp_top_bounds(n)?)
    } else {
        None
    };
    checks.push(
        match tops.as_ref().and_then(|t| t.penultimate) {
            Some(bound) => le("sp_penultimate", profile.of_length(n - 1), bound),
            None => na("sp_penultimate"),
        },
    );
    checks.push(
        match tops.as_ref().and_then(|t| t.antepenultimate) {
            Some(bound) => le("sp_antepenultimate", profile.of_length(n - 2), bound),
            None => na("sp_antepenultimate"),
        },
    );
    checks.push(match tops.as_ref().and_then(|t| t.top_two_sum) {
        Some(bound) => le(
            "top_two_sum_le_2",
            profile.of_length(n - 1) + profile.of_length(n),
            bound,
        ),
        None => na("top_two_sum_le_2"),
    });

    checks.push(if n >= 3 {
        le("sp3_bound", profile.of_length(3), bounds::sp3_bound(n)?)
    } else {
        na("sp3_bound")
    });
    checks.push(if n >= 4 {
        le("sp4_bound", profile.of_length(4), bounds::sp3_bound(n)?)
    } else {
        na("sp4_bound")
    });

    checks.push(if n >= 7 {
        le(
            "quadratic_power_bound",
            spal,
            sat(bounds::quadratic_power_bound(n, q))?,
        )
    } else {
        na("quadratic_power_bound")
    });
    checks.push(if n >= 6 {
        le(
            "power_sum_bound",
            spal,
            sat(bounds::power_sum_bound(n, q))?,
        )
    } else {
        na("power_sum_bound")
    });

    let mut occurrences: HashMap<u32, usize> = HashMap::new();
    for &x in w.letters() {
        *occurrences.entry(x).or_insert(0) += 1;
    }
    let doubled_shape = n > 0 && n == 2 * q && occurrences.values().all(|&k| k == 2);
    checks.push(if doubled_shape {
        le("doubled_word_bound", spal, sat(bounds::doubled_bound(q))?)
    } else {
        na("doubled_word_bound")
    });

    checks.push(if n >= 1 && 2 * q >= n {
        le("high_q_max_bound", spal, sat(bounds::high_q_max(n, q))?)
    } else {
        na("high_q_max_bound")
    });

    checks.push(if n >= 2 && profile.of_length(n - 1) == 2 {
        le(
            "penultimate_two_not_palindrome",
            w.is_palindrome() as Count,
            0,
        )
    } else {
        na("penultimate_two_not_palindrome")
    });

    Ok(BoundReport {
        word: w.clone(),
        n,
        q,
        pal_factors,
        spal,
        profile,
        block_word,
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::canonical::enumerate_canonical;
    use crate::words::Letter;

    fn audit(text: &str) -> BoundReport {
        audit_word(&text.parse().unwrap()).unwrap()
    }

    #[test]
    fn no_word_up_to_length_seven_violates_anything() {
        assert!(audit_word(&Word::empty()).unwrap().all_hold());
        for n in 1..=7 {
            for w in enumerate_canonical(n, None) {
                let report = audit_word(w.word()).unwrap();
                assert!(
                    report.all_hold(),
                    "violations {:?} on {}",
                    report
                        .violations()
                        .iter()
                        .map(|c| c.id.clone())
                        .collect::<Vec<_>>(),
                    w
                );
            }
        }
    }

    #[test]
    fn report_carries_the_exact_counts() {
        let report = audit("abbaa");
        assert_eq!(report.n, 5);
        assert_eq!(report.q, 2);
        assert_eq!(report.spal, 7);
        assert_eq!(report.pal_factors, 5);
        assert_eq!(report.profile.by_length(), [2, 2, 2, 1, 0]);
        assert!(!report.block_word);
        let fib = report.check("fibonacci_bound").unwrap();
        assert_eq!((fib.observed, fib.bound), (7, 12));
        assert_eq!(fib.verdict, Verdict::Holds);
    }

    #[test]
    fn biconditional_check_sees_both_sides() {
        let block = audit("aabbbc");
        let check = block.check("spal_eq_length_iff_block").unwrap();
        assert_eq!((check.observed, check.bound), (1, 1));
        assert_eq!(check.verdict, Verdict::Holds);

        let non_block = audit("aba");
        let check = non_block.check("spal_eq_length_iff_block").unwrap();
        assert_eq!((check.observed, check.bound), (0, 0));
        assert_eq!(check.verdict, Verdict::Holds);
    }

    #[test]
    fn applicability_follows_word_shape() {
        let tiny = audit("ab");
        assert_eq!(
            tiny.check("sp3_bound").unwrap().verdict,
            Verdict::NotApplicable
        );
        assert_eq!(
            tiny.check("quadratic_power_bound").unwrap().verdict,
            Verdict::NotApplicable
        );
        assert_eq!(
            tiny.check("doubled_word_bound").unwrap().verdict,
            Verdict::NotApplicable
        );
        assert_eq!(
            tiny.check("high_q_max_bound").unwrap().verdict,
            Verdict::Holds
        );

        let doubled = audit("abab");
        assert_eq!(
            doubled.check("doubled_word_bound").unwrap().verdict,
            Verdict::Holds
        );

        // Three letters, one of them twice: not of doubled shape.
        let uneven = audit("abcb");
        assert_eq!(
            uneven.check("doubled_word_bound").unwrap().verdict,
            Verdict::NotApplicable
        );

        let empty = audit_word(&Word::empty()).unwrap();
        assert_eq!(
            empty.check("sp1_le_n").unwrap().verdict,
            Verdict::NotApplicable
        );
        assert_eq!(
            empty.check("alphabet_power_sum").unwrap().verdict,
            Verdict::NotApplicable
        );
        assert_eq!(
            empty.check("spal_eq_length_iff_block").unwrap().verdict,
            Verdict::Holds
        );
    }

    #[test]
    fn penultimate_pair_check_triggers_only_at_two() {
        // "abab" has two palindromic subsequences of length 3 (aba, bab)
        // and must therefore not be a palindrome itself.
        let report = audit("abab");
        let check = report.check("penultimate_two_not_palindrome").unwrap();
        assert_eq!(check.verdict, Verdict::Holds);
        assert_eq!(check.observed, 0);

        // "aba" has one palindromic subsequence of length 2 ("aa"), so the
        // check does not apply even though the word is a palindrome.
        let report = audit("aba");
        assert_eq!(
            report.check("penultimate_two_not_palindrome").unwrap().verdict,
            Verdict::NotApplicable
        );
    }

    #[test]
    fn oversized_bounds_saturate_instead_of_failing() {
        // 100 letters, each twice, mirrored: the doubled-shape ceiling is
        // met exactly, while the Fibonacci and power-sum bounds overflow
        // the count type and saturate.
        let letters: Vec<Letter> = (0..50).chain((0..50).rev()).collect();
        let report = audit_word(&Word::new(letters)).unwrap();
        assert!(report.all_hold());
        let doubled = report.check("doubled_word_bound").unwrap();
        assert_eq!(doubled.observed, (1 << 51) - 2);
        assert_eq!(doubled.bound, (1 << 51) - 2);
        let fib = report.check("fibonacci_bound").unwrap();
        assert_eq!(fib.bound, Count::MAX);

        let single = Word::new(vec![0; 100]);
        let report = audit_word(&single).unwrap();
        assert!(report.all_hold());
        assert_eq!(report.spal, 100);
    }

    #[test]
    fn check_list_order_is_stable() {
        let ids: Vec<String> = audit("abc").checks.into_iter().map(|c| c.id).collect();
        assert_eq!(
            ids,
            [
                "factor_count_le_length",
                "length_le_spal_count",
                "spal_eq_length_iff_block",
                "fibonacci_bound",
                "alphabet_power_sum",
                "alphabet_power_bound_t1",
                "alphabet_power_bound_t2",
                "alphabet_power_bound_t3",
                "zero_propagation",
                "odd_step_monotone",
                "sp1_le_n",
                "sp2_le_half_n",
                "sp_full_le_1",
                "sp_penultimate",
                "sp_antepenultimate",
                "top_two_sum_le_2",
                "sp3_bound",
                "sp4_bound",
                "quadratic_power_bound",
                "power_sum_bound",
                "doubled_word_bound",
                "high_q_max_bound",
                "penultimate_two_not_palindrome"
            ]
        );
    }
}
