//! Canonical-word enumeration, counting, and uniform sampling.
//!
//! Palindromic counts are invariant under renaming letters, so searches
//! range over canonical words only: one representative per relabeling
//! class, in restricted-growth form (each letter at most the number of
//! distinct letters before it). There are `Bell(n)` canonical words of
//! length `n`, and `S(n, q)` (Stirling partition numbers) with exactly `q`
//! distinct letters.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::words::{CanonicalWord, Letter};
use crate::Count;

/// Iterator over canonical words of length `n`, lexicographically, with
/// an optional exact alphabet-size filter.
pub fn enumerate_canonical(n: usize, q: Option<usize>) -> CanonicalWords {
    CanonicalWords {
        n,
        q,
        letters: vec![0; n],
        used_before: vec![0; n + 1],
        state: IterState::Fresh,
    }
}

#[derive(PartialEq)]
enum IterState {
    Fresh,
    Running,
    Done,
}

pub struct CanonicalWords {
    n: usize,
    q: Option<usize>,
    letters: Vec<Letter>,
    /// `used_before[d]`: distinct letters among `letters[..d]`.
    used_before: Vec<usize>,
    state: IterState,
}

impl CanonicalWords {
    /// Can a word that has `used` distinct letters after some position,
    /// with `remaining` positions to go, still end at exactly the target
    /// alphabet size?
    fn reachable(&self, used: usize, remaining: usize) -> bool {
        match self.q {
            None => true,
            Some(q) => used <= q && used + remaining >= q,
        }
    }

    fn child_feasible(&self, d: usize, v: usize) -> bool {
        let nu = self.used_before[d] + (v == self.used_before[d]) as usize;
        self.reachable(nu, self.n - d - 1)
    }

    /// Fills positions `from..` with the smallest feasible letters.
    /// Only the root call can fail; mid-stream the parent's feasibility
    /// guarantees a completion.
    fn fill_min(&mut self, from: usize) -> bool {
        for d in from..self.n {
            let u = self.used_before[d];
            match (0..=u).find(|&v| self.child_feasible(d, v)) {
                Some(v) => {
                    self.letters[d] = v as Letter;
                    self.used_before[d + 1] = u + (v == u) as usize;
                }
                None => return false,
            }
        }
        true
    }

    fn current(&self) -> CanonicalWord {
        CanonicalWord::from_canonical_letters(self.letters.clone())
    }
}

impl Iterator for CanonicalWords {
    type Item = CanonicalWord;

    fn next(&mut self) -> Option<CanonicalWord> {
        match self.state {
            IterState::Done => None,
            IterState::Fresh => {
                self.state = IterState::Running;
                if self.n == 0 {
                    self.state = IterState::Done;
                    let empty_ok = self.q.map_or(true, |q| q == 0);
                    return empty_ok.then(|| CanonicalWord::from_canonical_letters(Vec::new()));
                }
                if self.fill_min(0) {
                    Some(self.current())
                } else {
                    self.state = IterState::Done;
                    None
                }
            }
            IterState::Running => {
                // Backtrack to the rightmost position that can still grow.
                let mut d = self.n;
                loop {
                    if d == 0 {
                        self.state = IterState::Done;
                        return None;
                    }
                    d -= 1;
                    let u = self.used_before[d];
                    let next = (self.letters[d] as usize + 1..=u)
                        .find(|&v| self.child_feasible(d, v));
                    if let Some(v) = next {
                        self.letters[d] = v as Letter;
                        self.used_before[d + 1] = u + (v == u) as usize;
                        let filled = self.fill_min(d + 1);
                        debug_assert!(filled);
                        return Some(self.current());
                    }
                }
            }
        }
    }
}

/// `Bell(n)`: the number of canonical words of length `n`.
pub fn bell_number(n: usize) -> Result<Count> {
    // Bell triangle; row r starts with the last entry of row r-1.
    let mut row: Vec<Count> = vec![1];
    for _ in 0..n {
        let mut next = Vec::with_capacity(row.len() + 1);
        next.push(*row.last().unwrap());
        for &x in &row {
            let prev = *next.last().unwrap();
            next.push(prev.checked_add(x).ok_or(Error::Overflow)?);
        }
        row = next;
    }
    Ok(row[0])
}

/// `S(n, q)`: the number of canonical words of length `n` with exactly
/// `q` distinct letters (Stirling partition number).
pub fn stirling2(n: usize, q: usize) -> Result<Count> {
    if q > n {
        return Ok(0);
    }
    // row i holds S(i, 0..=q)
    let mut row: Vec<Count> = vec![0; q + 1];
    row[0] = 1;
    for _ in 1..=n {
        let mut next: Vec<Count> = vec![0; q + 1];
        for j in 1..=q {
            next[j] = (j as Count)
                .checked_mul(row[j])
                .and_then(|s| s.checked_add(row[j - 1]))
                .ok_or(Error::Overflow)?;
        }
        row = next;
    }
    Ok(row[q])
}

/// A fixed prefix of canonical words, used to split an enumeration into
/// independently walkable chunks.
pub(crate) struct PrefixBlock {
    pub letters: Vec<Letter>,
    pub used: usize,
}

/// Splits the canonical words of length `n` (optionally with exactly `q`
/// letters) into at least `target` blocks of words sharing a prefix, in
/// lexicographic order. The split is a function of `(n, q, target)` only,
/// never of worker count, so downstream results cannot depend on
/// scheduling.
pub(crate) fn prefix_blocks(n: usize, q: Option<usize>, target: usize) -> Vec<PrefixBlock> {
    let mut blocks = vec![PrefixBlock {
        letters: Vec::new(),
        used: 0,
    }];
    let mut depth = 0;
    while blocks.len() < target && depth < n {
        depth += 1;
        let mut grown = Vec::with_capacity(blocks.len() * 2);
        for block in &blocks {
            for v in 0..=block.used {
                let nu = block.used + (v == block.used) as usize;
                let viable = match q {
                    None => true,
                    Some(qq) => nu <= qq && nu + (n - depth) >= qq,
                };
                if viable {
                    let mut letters = Vec::with_capacity(depth);
                    letters.extend_from_slice(&block.letters);
                    letters.push(v as Letter);
                    grown.push(PrefixBlock { letters, used: nu });
                }
            }
        }
        blocks = grown;
    }
    blocks
}

/// Walks every canonical completion of `prefix` (which uses `used`
/// distinct letters) up to length `n`, optionally filtered to exactly `q`
/// letters, in lexicographic order. The callback returns `false` to stop
/// the walk early.
pub(crate) fn for_each_completion(
    prefix: &[Letter],
    used: usize,
    n: usize,
    q: Option<usize>,
    f: &mut impl FnMut(&[Letter], usize) -> bool,
) -> bool {
    let mut buf = Vec::with_capacity(n);
    buf.extend_from_slice(prefix);
    descend(&mut buf, used, n, q, f)
}

fn descend(
    buf: &mut Vec<Letter>,
    used: usize,
    n: usize,
    q: Option<usize>,
    f: &mut impl FnMut(&[Letter], usize) -> bool,
) -> bool {
    let d = buf.len();
    if d == n {
        return f(buf, used);
    }
    for v in 0..=used {
        let nu = used + (v == used) as usize;
        if let Some(qq) = q {
            if nu > qq || nu + (n - d - 1) < qq {
                continue;
            }
        }
        buf.push(v as Letter);
        let keep_going = descend(buf, nu, n, q, f);
        buf.pop();
        if !keep_going {
            return false;
        }
    }
    true
}

/// Draws canonical words of length `n` with exactly `q` distinct letters,
/// uniformly over all `S(n, q)` of them.
///
/// Works by counting completions: a prefix of length `i` using `j`
/// classes extends to `f(i, j) = j f(i+1, j) + f(i+1, j+1)` full words,
/// and choosing each next letter with probability proportional to the
/// completions it leads to makes every leaf equally likely.
pub struct CanonicalSampler {
    n: usize,
    q: usize,
    /// `completions[i * (q + 1) + j] = f(i, j)`.
    completions: Vec<Count>,
}

impl CanonicalSampler {
    pub fn new(n: usize, q: usize) -> Result<Self> {
        if n == 0 || q == 0 || q > n {
            return Err(Error::domain(
                "CanonicalSampler::new",
                format!("requires 1 <= q <= n, got n = {n}, q = {q}"),
            ));
        }
        let width = q + 1;
        let mut completions = vec![0 as Count; (n + 1) * width];
        completions[n * width + q] = 1;
        for i in (0..n).rev() {
            // A length-i prefix can have used at most i classes, so only
            // the triangle j <= min(i, q) is reachable; the cells above it
            // stay zero. (Filling them anyway would overflow: the j = q
            // column alone grows like q^(n-i), while every reachable count
            // is at most S(n, q).)
            for j in 0..=q.min(i) {
                let stay = (j as Count)
                    .checked_mul(completions[(i + 1) * width + j])
                    .ok_or(Error::Overflow)?;
                let open = if j < q {
                    completions[(i + 1) * width + j + 1]
                } else {
                    0
                };
                completions[i * width + j] = stay.checked_add(open).ok_or(Error::Overflow)?;
            }
        }
        Ok(CanonicalSampler { n, q, completions })
    }

    fn f(&self, i: usize, j: usize) -> Count {
        self.completions[i * (self.q + 1) + j]
    }

    /// `S(n, q)`, the number of words this sampler ranges over.
    pub fn universe_size(&self) -> Count {
        self.f(0, 0)
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> CanonicalWord {
        let mut letters = Vec::with_capacity(self.n);
        let mut j = 0usize;
        for i in 0..self.n {
            let reuse = self.f(i + 1, j) * j as Count;
            let r = rng.gen_range(0..self.f(i, j));
            if r < reuse {
                letters.push((r / self.f(i + 1, j)) as Letter);
            } else {
                letters.push(j as Letter);
                j += 1;
            }
        }
        debug_assert_eq!(j, self.q);
        CanonicalWord::from_canonical_letters(letters)
    }
}

/// Stable per-task seed derivation, so each `(n, q)` cell gets its own
/// reproducible stream no matter how cells are scheduled.
pub(crate) fn rng_for(base_seed: u64, n: usize, q: usize) -> ChaCha8Rng {
    let mut x = splitmix64(base_seed ^ splitmix64(n as u64));
    x = splitmix64(x ^ splitmix64((q as u64) << 32 | 0x5EED));
    ChaCha8Rng::seed_from_u64(x)
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = x;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    #[test]
    fn enumerates_length_three_in_order() {
        let all: Vec<String> = enumerate_canonical(3, None).map(|w| w.to_string()).collect();
        assert_eq!(all, ["aaa", "aab", "aba", "abb", "abc"]);
    }

    #[test]
    fn respects_the_alphabet_filter() {
        let two: Vec<String> = enumerate_canonical(4, Some(2)).map(|w| w.to_string()).collect();
        assert_eq!(two.len(), 7); // S(4, 2)
        assert!(two.iter().all(|t| t.contains('b') && !t.contains('c')));
        assert_eq!(enumerate_canonical(3, Some(5)).count(), 0);
        assert_eq!(enumerate_canonical(3, Some(0)).count(), 0);
    }

    #[test]
    fn empty_length_cases() {
        assert_eq!(enumerate_canonical(0, None).count(), 1);
        assert_eq!(enumerate_canonical(0, Some(0)).count(), 1);
        assert_eq!(enumerate_canonical(0, Some(1)).count(), 0);
    }

    #[test]
    fn counts_match_bell_and_stirling() {
        let bells = [1u64, 1, 2, 5, 15, 52, 203, 877, 4140, 21147, 115975];
        for (n, &b) in bells.iter().enumerate() {
            assert_eq!(bell_number(n).unwrap(), b, "Bell({n})");
        }
        for n in 0..=9 {
            assert_eq!(
                enumerate_canonical(n, None).count() as Count,
                bell_number(n).unwrap()
            );
            let by_q: Count = (0..=n)
                .map(|q| enumerate_canonical(n, Some(q)).count() as Count)
                .sum();
            assert_eq!(by_q, bell_number(n).unwrap(), "per-q split at {n}");
        }
        assert_eq!(stirling2(4, 2).unwrap(), 7);
        assert_eq!(stirling2(5, 3).unwrap(), 25);
        assert_eq!(stirling2(10, 5).unwrap(), 42525);
        assert_eq!(stirling2(12, 6).unwrap(), 1323652);
        assert_eq!(stirling2(3, 5).unwrap(), 0);
        for n in 0..=10 {
            for q in 0..=n {
                assert_eq!(
                    enumerate_canonical(n, Some(q)).count() as Count,
                    stirling2(n, q).unwrap(),
                    "S({n}, {q})"
                );
            }
        }
    }

    #[test]
    fn yields_only_canonical_words_of_the_right_shape() {
        for w in enumerate_canonical(6, Some(3)) {
            assert!(CanonicalWord::is_canonical(w.word()));
            assert_eq!(w.len(), 6);
            assert_eq!(w.alphabet_size(), 3);
        }
    }

    #[test]
    fn blocks_partition_the_enumeration_in_order() {
        for (n, q, target) in [(8, Some(3), 16), (7, None, 32), (5, Some(5), 64), (4, Some(2), 1)] {
            let blocks = prefix_blocks(n, q, target);
            let mut from_blocks: Vec<String> = Vec::new();
            for block in &blocks {
                for_each_completion(&block.letters, block.used, n, q, &mut |letters, _| {
                    from_blocks.push(
                        CanonicalWord::from_canonical_letters(letters.to_vec()).to_string(),
                    );
                    true
                });
            }
            let direct: Vec<String> = enumerate_canonical(n, q).map(|w| w.to_string()).collect();
            assert_eq!(from_blocks, direct, "block split diverged at n={n}, q={q:?}");
        }
    }

    #[test]
    fn completion_walk_stops_on_false() {
        let mut seen = 0;
        for_each_completion(&[], 0, 5, None, &mut |_, _| {
            seen += 1;
            seen < 10
        });
        assert_eq!(seen, 10);
    }

    #[test]
    fn sampler_covers_its_universe_uniformly_enough() {
        let sampler = CanonicalSampler::new(5, 2).unwrap();
        assert_eq!(sampler.universe_size(), 15); // S(5, 2)
        let mut rng = rng_for(42, 5, 2);
        let mut seen: BTreeSet<String> = BTreeSet::new();
        for _ in 0..2000 {
            let w = sampler.sample(&mut rng);
            assert_eq!(w.len(), 5);
            assert_eq!(w.alphabet_size(), 2);
            seen.insert(w.to_string());
        }
        // Each of the 15 words has probability 1/15 per draw; missing one
        // after 2000 draws would be a (14/15)^2000 ~ 1e-60 event.
        assert_eq!(seen.len(), 15);
    }

    #[test]
    fn sampling_is_deterministic_per_seed() {
        let sampler = CanonicalSampler::new(9, 4).unwrap();
        let draw = |seed: u64| -> Vec<String> {
            let mut rng = rng_for(seed, 9, 4);
            (0..50).map(|_| sampler.sample(&mut rng).to_string()).collect()
        };
        assert_eq!(draw(7), draw(7));
        assert_ne!(draw(7), draw(8));
    }

    #[test]
    fn sampler_rejects_bad_shapes() {
        assert!(CanonicalSampler::new(0, 0).is_err());
        assert!(CanonicalSampler::new(3, 0).is_err());
        assert!(CanonicalSampler::new(3, 4).is_err());
    }

    #[test]
    fn sampler_handles_wide_alphabets_without_overflow() {
        // Only the triangle j <= i is reachable; the builder must not
        // evaluate the unreachable cells, whose values (q^(n-i) in the
        // j = q column) leave the 64-bit range long before the reachable
        // counts do.
        let sampler = CanonicalSampler::new(20, 12).unwrap();
        assert_eq!(sampler.universe_size(), stirling2(20, 12).unwrap());
        let mut rng = rng_for(3, 20, 12);
        for _ in 0..20 {
            let w = sampler.sample(&mut rng);
            assert_eq!(w.len(), 20);
            assert_eq!(w.alphabet_size(), 12);
        }

        let identity = CanonicalSampler::new(20, 20).unwrap();
        assert_eq!(identity.universe_size(), 1);
        let w = identity.sample(&mut rng_for(4, 20, 20));
        assert_eq!(w.word().letters(), (0..20).collect::<Vec<_>>());
    }
}
