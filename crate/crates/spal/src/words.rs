//! Words over integer letter ids: parsing, formatting, reversal, and
//! canonical relabeling.
//!
//! Letters are plain integers rather than `char`s so alphabets are not
//! capped at 26 symbols; the ascii spelling (`"abca"`) and the
//! comma-separated integer spelling (`"0,1,2,0"`) are two renderings of
//! the same value. Positions in public signatures are 1-based, matching
//! how occurrences are usually quoted by hand.

use std::collections::HashMap;
use std::fmt;
use std::ops::Deref;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A letter identifier.
pub type Letter = u32;

/// A finite word over integer letter ids.
///
/// The derived ordering is plain lexicographic on the letter sequence;
/// callers that need length-then-lexicographic order sort by
/// `(w.len(), w)`.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        Word { letters }
    }

    /// The empty word.
    pub fn empty() -> Self {
        Word::default()
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    /// Number of distinct letters actually present (the alphabet size `q`).
    pub fn alphabet_size(&self) -> usize {
        let mut seen: Vec<Letter> = self.letters.clone();
        seen.sort_unstable();
        seen.dedup();
        seen.len()
    }

    /// How many times `letter` occurs.
    pub fn occurrence_count(&self, letter: Letter) -> usize {
        self.letters.iter().filter(|&&x| x == letter).count()
    }

    /// 1-based positions at which `letter` occurs, in increasing order.
    pub fn occurrence_positions(&self, letter: Letter) -> Vec<usize> {
        self.letters
            .iter()
            .enumerate()
            .filter(|&(_, &x)| x == letter)
            .map(|(i, _)| i + 1)
            .collect()
    }

    /// Positional reversal.
    pub fn reversed(&self) -> Word {
        let mut letters = self.letters.clone();
        letters.reverse();
        Word { letters }
    }

    pub fn is_palindrome(&self) -> bool {
        let n = self.letters.len();
        (0..n / 2).all(|i| self.letters[i] == self.letters[n - 1 - i])
    }

    /// The word extended by one letter on the right.
    pub fn appended(&self, letter: Letter) -> Word {
        let mut letters = self.letters.clone();
        letters.push(letter);
        Word { letters }
    }

    /// Ascii rendering (`a` = 0, ..., `z` = 25), when every letter fits.
    pub fn to_ascii(&self) -> Option<String> {
        self.letters
            .iter()
            .map(|&x| (x < 26).then(|| (b'a' + x as u8) as char))
            .collect()
    }

    /// Comma-separated integer rendering; total for any word.
    pub fn to_int_csv(&self) -> String {
        let parts: Vec<String> = self.letters.iter().map(|x| x.to_string()).collect();
        parts.join(",")
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.to_ascii() {
            Some(s) => f.write_str(&s),
            None => f.write_str(&self.to_int_csv()),
        }
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word(\"{self}\")")
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Word> {
        parse_word(s, detect_format(s))
    }
}

/// Input spelling accepted by [`parse_word`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WordFormat {
    /// Lowercase ascii letters, `a` = 0 through `z` = 25.
    AsciiLetters,
    /// Comma-separated non-negative decimal letter ids.
    CommaInts,
}

/// Picks the spelling `text` is in: a comma anywhere selects the integer
/// form, everything else is read as ascii letters.
pub fn detect_format(text: &str) -> WordFormat {
    if text.contains(',') {
        WordFormat::CommaInts
    } else {
        WordFormat::AsciiLetters
    }
}

/// Parses `text` in the given spelling. Empty text yields the empty word.
pub fn parse_word(text: &str, format: WordFormat) -> Result<Word> {
    match format {
        WordFormat::AsciiLetters => parse_ascii(text),
        WordFormat::CommaInts => parse_int_csv(text),
    }
}

fn parse_ascii(text: &str) -> Result<Word> {
    let mut letters = Vec::with_capacity(text.len());
    for (i, ch) in text.chars().enumerate() {
        if ch.is_ascii_lowercase() {
            letters.push(ch as Letter - 'a' as Letter);
        } else {
            return Err(Error::Parse {
                position: i + 1,
                reason: format!("expected a lowercase ascii letter, found {ch:?}"),
            });
        }
    }
    Ok(Word { letters })
}

fn parse_int_csv(text: &str) -> Result<Word> {
    if text.is_empty() {
        return Ok(Word::empty());
    }
    let mut letters = Vec::new();
    let mut offset = 0usize; // byte offset of the current token
    for token in text.split(',') {
        if token.is_empty() {
            return Err(Error::Parse {
                position: offset + 1,
                reason: "expected a letter id, found nothing".into(),
            });
        }
        if let Some(bad) = token.chars().position(|c| !c.is_ascii_digit()) {
            return Err(Error::Parse {
                position: offset + bad + 1,
                reason: format!(
                    "expected a digit, found {:?}",
                    token[bad..].chars().next().unwrap()
                ),
            });
        }
        let id: Letter = token.parse().map_err(|_| Error::Parse {
            position: offset + 1,
            reason: format!("letter id {token} does not fit in 32 bits"),
        })?;
        letters.push(id);
        offset += token.len() + 1;
    }
    Ok(Word { letters })
}

/// A word in canonical form: letters are relabeled in order of first
/// occurrence, so the first distinct letter is 0, the second is 1, and so
/// on. Exactly one canonical word represents each relabeling class, which
/// makes canonical words the right search space for questions invariant
/// under renaming letters.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalWord(Word);

impl CanonicalWord {
    /// Checks the canonical ("restricted growth") shape: each letter is at
    /// most the number of distinct letters seen before it.
    pub fn is_canonical(w: &Word) -> bool {
        let mut next: Letter = 0;
        for &x in w.letters() {
            if x > next {
                return false;
            }
            if x == next {
                next += 1;
            }
        }
        true
    }

    /// Wraps a word that is already in canonical form.
    pub fn try_from_word(w: Word) -> Result<CanonicalWord> {
        if CanonicalWord::is_canonical(&w) {
            Ok(CanonicalWord(w))
        } else {
            Err(Error::domain(
                "CanonicalWord::try_from_word",
                format!("\"{w}\" is not in first-occurrence order"),
            ))
        }
    }

    /// Wraps letters the caller guarantees to be in canonical form.
    pub(crate) fn from_canonical_letters(letters: Vec<Letter>) -> CanonicalWord {
        let w = Word::new(letters);
        debug_assert!(CanonicalWord::is_canonical(&w));
        CanonicalWord(w)
    }

    pub fn word(&self) -> &Word {
        &self.0
    }

    pub fn into_word(self) -> Word {
        self.0
    }
}

impl Deref for CanonicalWord {
    type Target = Word;

    fn deref(&self) -> &Word {
        &self.0
    }
}

impl fmt::Display for CanonicalWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl fmt::Debug for CanonicalWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalWord(\"{}\")", self.0)
    }
}

/// Relabels `w` by order of first occurrence.
///
/// Canonicalizing is idempotent and preserves every property that does not
/// depend on the identity of the letters: length, occurrence structure,
/// palindromicity of subsequences, and hence all palindromic counts.
pub fn canonicalize(w: &Word) -> CanonicalWord {
    let mut map: HashMap<Letter, Letter> = HashMap::new();
    let mut letters = Vec::with_capacity(w.len());
    for &x in w.letters() {
        let next = map.len() as Letter;
        letters.push(*map.entry(x).or_insert(next));
    }
    CanonicalWord(Word { letters })
}
