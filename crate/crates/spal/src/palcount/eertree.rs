//! Palindromic tree over integer letters.
//!
//! One node per distinct palindromic factor: each position's longest
//! palindromic suffix is either already known or is a factor never seen
//! before, so a word of length `n` builds at most `n` nodes past the two
//! roots. The naive all-substrings scan in the tests double-checks this
//! structure.

use std::collections::HashMap;

use crate::words::{Letter, Word};

struct Node {
    /// Palindrome length; the imaginary root has -1 so that extending it
    /// by one letter on "both sides" yields length 1.
    len: isize,
    /// Longest proper palindromic suffix.
    link: usize,
    next: HashMap<Letter, usize>,
    /// Index of the final letter of this palindrome's first occurrence.
    end: usize,
}

pub(crate) struct Eertree<'t> {
    text: &'t [Letter],
    nodes: Vec<Node>,
    /// Node of the longest palindromic suffix of the text so far.
    suffix: usize,
}

impl<'t> Eertree<'t> {
    pub(crate) fn build(text: &'t [Letter]) -> Self {
        let mut tree = Eertree {
            text,
            nodes: vec![
                Node {
                    len: -1,
                    link: 0,
                    next: HashMap::new(),
                    end: 0,
                },
                Node {
                    len: 0,
                    link: 0,
                    next: HashMap::new(),
                    end: 0,
                },
            ],
            suffix: 1,
        };
        for pos in 0..text.len() {
            tree.push(pos);
        }
        tree
    }

    /// Longest ancestor of `start` (following suffix links) that can be
    /// extended by `text[pos]` on both sides.
    fn extendable(&self, mut start: usize, pos: usize) -> usize {
        loop {
            let len = self.nodes[start].len;
            let mirror = pos as isize - len - 1;
            if mirror >= 0 && self.text[mirror as usize] == self.text[pos] {
                return start;
            }
            start = self.nodes[start].link;
        }
    }

    fn push(&mut self, pos: usize) {
        let c = self.text[pos];
        let cur = self.extendable(self.suffix, pos);
        if let Some(&existing) = self.nodes[cur].next.get(&c) {
            self.suffix = existing;
            return;
        }
        let new_len = self.nodes[cur].len + 2;
        let link = if new_len == 1 {
            1
        } else {
            let via = self.extendable(self.nodes[cur].link, pos);
            *self.nodes[via]
                .next
                .get(&c)
                .expect("shorter palindromic suffix was inserted earlier")
        };
        let ix = self.nodes.len();
        self.nodes.push(Node {
            len: new_len,
            link,
            next: HashMap::new(),
            end: pos,
        });
        self.nodes[cur].next.insert(c, ix);
        self.suffix = ix;
    }

    /// Number of distinct palindromic factors.
    pub(crate) fn distinct_count(&self) -> usize {
        self.nodes.len() - 2
    }

    /// The distinct palindromic factors, one per non-root node.
    pub(crate) fn factors(&self) -> Vec<Word> {
        self.nodes[2..]
            .iter()
            .map(|node| {
                let len = node.len as usize;
                Word::new(self.text[node.end + 1 - len..=node.end].to_vec())
            })
            .collect()
    }
}
