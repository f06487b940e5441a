//! Alphabets, finite words, left-infinite word streams and morphisms.
//!
//! Letters are identified with positive integers; a word stores its letters
//! left to right. Several operations of this crate index a word from the
//! right (the rightmost letter has index 0), matching the recursive
//! definition of the q-binomial which peels letters off the right end.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

/// Errors produced by word parsing, streams and morphisms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WordError {
    /// A character of the input has no letter mapping (byte position given).
    UnknownCharacter { position: usize, character: char },
    /// A periodic stream needs a nonempty period.
    EmptyPeriod,
    /// Morphisms must be non-erasing: every image nonempty.
    ErasingMorphism(Letter),
    /// The morphism has no image for a letter of the argument word.
    MissingImage(Letter),
}

impl fmt::Display for WordError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WordError::UnknownCharacter { position, character } => {
                write!(f, "unknown character '{character}' at position {position}")
            }
            WordError::EmptyPeriod => write!(f, "periodic stream requires a nonempty period"),
            WordError::ErasingMorphism(a) => {
                write!(f, "morphism erases letter '{a}' (empty image)")
            }
            WordError::MissingImage(a) => write!(f, "morphism has no image for letter '{a}'"),
        }
    }
}

impl std::error::Error for WordError {}

/// A letter: a 1-based integer id plus the character it displays as.
///
/// Equality, ordering and hashing use the id only; the display character is
/// presentation. The canonical character map sends '1'..'9' to 1..9,
/// 'a'..'z' to 1..26 and '0' to 27.
#[derive(Debug, Clone, Copy)]
pub struct Letter {
    id: u32,
    display: char,
}

impl Letter {
    /// Letter for a source character ('0'-'9', 'a'-'z').
    pub fn from_char(c: char) -> Option<Letter> {
        let id = match c {
            '1'..='9' => c as u32 - '0' as u32,
            'a'..='z' => c as u32 - 'a' as u32 + 1,
            '0' => 27,
            _ => return None,
        };
        Some(Letter { id, display: c })
    }

    /// Letter for a raw id, displayed as '1'..'9' then 'j'..'z' then '0'.
    pub fn from_id(id: u32) -> Letter {
        assert!(id >= 1, "letter ids are 1-based");
        let display = match id {
            1..=9 => char::from_u32('0' as u32 + id).unwrap(),
            10..=26 => char::from_u32('a' as u32 + id - 1).unwrap(),
            27 => '0',
            _ => '?',
        };
        Letter { id, display }
    }

    pub fn id(&self) -> u32 {
        self.id
    }

    pub fn display(&self) -> char {
        self.display
    }
}

impl PartialEq for Letter {
    fn eq(&self, other: &Self) -> bool {
        self.id == other.id
    }
}

impl Eq for Letter {}

impl PartialOrd for Letter {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Letter {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.id.cmp(&other.id)
    }
}

impl std::hash::Hash for Letter {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.id.hash(state);
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display)
    }
}

/// A finite word, stored left to right.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn new(letters: Vec<Letter>) -> Word {
        Word { letters }
    }

    pub fn empty() -> Word {
        Word { letters: Vec::new() }
    }

    /// Parse a word from text using the canonical character map.
    pub fn parse(text: &str) -> Result<Word, WordError> {
        let mut letters = Vec::with_capacity(text.len());
        for (position, c) in text.chars().enumerate() {
            match Letter::from_char(c) {
                Some(l) => letters.push(l),
                None => return Err(WordError::UnknownCharacter { position, character: c }),
            }
        }
        Ok(Word { letters })
    }

    /// Parse against a declared alphabet; characters outside it are rejected
    /// even when the canonical map knows them.
    pub fn parse_with_alphabet(text: &str, alphabet: &[Letter]) -> Result<Word, WordError> {
        let word = Word::parse(text)?;
        for (position, l) in word.letters.iter().enumerate() {
            if !alphabet.contains(l) {
                return Err(WordError::UnknownCharacter {
                    position,
                    character: l.display(),
                });
            }
        }
        Ok(word)
    }

    /// The word `12..k` over the first `k` ids.
    pub fn range_word(k: u32) -> Word {
        Word { letters: (1..=k).map(Letter::from_id).collect() }
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

    /// Letter at left-to-right index (0-based).
    pub fn letter(&self, index: usize) -> Letter {
        self.letters[index]
    }

    /// Contiguous factor as a new word (0-based left-to-right range).
    pub fn factor(&self, start: usize, end: usize) -> Word {
        Word { letters: self.letters[start..end].to_vec() }
    }

    /// The reversal of the word.
    pub fn reversed(&self) -> Word {
        let mut letters = self.letters.clone();
        letters.reverse();
        Word { letters }
    }

    /// Concatenation of `n` copies.
    pub fn power(&self, n: usize) -> Word {
        let mut letters = Vec::with_capacity(self.letters.len() * n);
        for _ in 0..n {
            letters.extend_from_slice(&self.letters);
        }
        Word { letters }
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Word { letters }
    }

    /// Distinct letters, ascending by id.
    pub fn alphabet(&self) -> Vec<Letter> {
        let mut set: Vec<Letter> = self.letters.clone();
        set.sort();
        set.dedup();
        set
    }

    /// Number of occurrences of a letter.
    pub fn count(&self, a: Letter) -> usize {
        self.letters.iter().filter(|&&l| l == a).count()
    }

    /// True when two adjacent positions carry the same letter; returns the
    /// first offending 1-based position.
    pub fn adjacent_repeat(&self) -> Option<usize> {
        self.letters.windows(2).position(|w| w[0] == w[1]).map(|i| i + 1)
    }

    /// All occurrences of `v` as a subword: strictly increasing 0-based
    /// position tuples `i_1 < .. < i_k` with `self[i_m] = v[m]`.
    ///
    /// Exhaustive enumeration; intended as an oracle on short words. The
    /// empty word occurs exactly once, at the empty tuple.
    pub fn occurrences(&self, v: &Word) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut current = Vec::with_capacity(v.len());
        self.occurrences_from(v, 0, 0, &mut current, &mut out, usize::MAX);
        out
    }

    /// Like [`Word::occurrences`] but aborts with `None` once more than
    /// `limit` tuples have been collected.
    pub fn occurrences_limited(&self, v: &Word, limit: usize) -> Option<Vec<Vec<usize>>> {
        let mut out = Vec::new();
        let mut current = Vec::with_capacity(v.len());
        if self.occurrences_from(v, 0, 0, &mut current, &mut out, limit) {
            Some(out)
        } else {
            None
        }
    }

    fn occurrences_from(
        &self,
        v: &Word,
        v_index: usize,
        start: usize,
        current: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
        limit: usize,
    ) -> bool {
        if v_index == v.len() {
            if out.len() >= limit {
                return false;
            }
            out.push(current.clone());
            return true;
        }
        // Not enough letters left to place the rest of v.
        let remaining = v.len() - v_index;
        if start + remaining > self.len() {
            return true;
        }
        for i in start..=(self.len() - remaining) {
            if self.letters[i] == v.letter(v_index) {
                current.push(i);
                let ok = self.occurrences_from(v, v_index + 1, i + 1, current, out, limit);
                current.pop();
                if !ok {
                    return false;
                }
            }
        }
        true
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "ε");
        }
        for l in &self.letters {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<T: IntoIterator<Item = Letter>>(iter: T) -> Self {
        Word { letters: iter.into_iter().collect() }
    }
}

type LetterFn = dyn Fn(u64) -> Letter + Send + Sync;

/// A left-infinite word `.. x_2 x_1 x_0`: a total function giving the
/// letter at each index counted from the right, starting at 0.
///
/// Its prefix of length `n` is the finite word `x_{n-1} .. x_0`.
#[derive(Clone)]
pub enum LeftInfiniteWord {
    /// `.. uuu`: the length-|u| prefix equals `u`.
    Periodic(Word),
    /// Thue-Morse over {0,1}: `x_i` is the parity of ones in binary `i`.
    ThueMorse,
    /// Arbitrary indexing function.
    Custom(Arc<LetterFn>),
}

impl LeftInfiniteWord {
    pub fn periodic(u: Word) -> Result<LeftInfiniteWord, WordError> {
        if u.is_empty() {
            return Err(WordError::EmptyPeriod);
        }
        Ok(LeftInfiniteWord::Periodic(u))
    }

    pub fn thue_morse() -> LeftInfiniteWord {
        LeftInfiniteWord::ThueMorse
    }

    pub fn custom<F>(f: F) -> LeftInfiniteWord
    where
        F: Fn(u64) -> Letter + Send + Sync + 'static,
    {
        LeftInfiniteWord::Custom(Arc::new(f))
    }

    /// Letter at right-to-left index `i`.
    pub fn letter_at(&self, i: u64) -> Letter {
        match self {
            LeftInfiniteWord::Periodic(u) => {
                let m = u.len() as u64;
                u.letter((m - 1 - (i % m)) as usize)
            }
            LeftInfiniteWord::ThueMorse => {
                if i.count_ones() % 2 == 1 {
                    Letter::from_char('1').unwrap()
                } else {
                    Letter::from_char('0').unwrap()
                }
            }
            LeftInfiniteWord::Custom(f) => f(i),
        }
    }

    /// The prefix `x_{n-1} .. x_0` as a finite word (left to right).
    pub fn prefix(&self, n: usize) -> Word {
        (0..n).rev().map(|i| self.letter_at(i as u64)).collect()
    }
}

impl fmt::Debug for LeftInfiniteWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LeftInfiniteWord::Periodic(u) => write!(f, "Periodic({u})"),
            LeftInfiniteWord::ThueMorse => write!(f, "ThueMorse"),
            LeftInfiniteWord::Custom(_) => write!(f, "Custom(..)"),
        }
    }
}

/// A non-erasing morphism: a map from letters to nonempty words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Morphism {
    images: BTreeMap<Letter, Word>,
}

impl Morphism {
    /// Build from (letter, image) pairs; every image must be nonempty.
    pub fn new(images: impl IntoIterator<Item = (Letter, Word)>) -> Result<Morphism, WordError> {
        let images: BTreeMap<Letter, Word> = images.into_iter().collect();
        for (&a, w) in &images {
            if w.is_empty() {
                return Err(WordError::ErasingMorphism(a));
            }
        }
        Ok(Morphism { images })
    }

    /// Identity morphism on the given letters.
    pub fn identity(alphabet: &[Letter]) -> Morphism {
        Morphism {
            images: alphabet.iter().map(|&a| (a, Word::new(vec![a]))).collect(),
        }
    }

    pub fn image(&self, a: Letter) -> Option<&Word> {
        self.images.get(&a)
    }

    pub fn domain(&self) -> impl Iterator<Item = Letter> + '_ {
        self.images.keys().copied()
    }

    /// `Some(r)` when every image has length `r`.
    pub fn uniform_degree(&self) -> Option<usize> {
        let mut lengths = self.images.values().map(Word::len);
        let first = lengths.next()?;
        lengths.all(|l| l == first).then_some(first)
    }

    pub fn apply(&self, w: &Word) -> Result<Word, WordError> {
        let mut out = Vec::new();
        for &a in w.letters() {
            let img = self.images.get(&a).ok_or(WordError::MissingImage(a))?;
            out.extend_from_slice(img.letters());
        }
        Ok(Word::new(out))
    }

    /// Total image length of `w` without materializing the image.
    pub fn image_len(&self, w: &Word) -> Result<usize, WordError> {
        let mut total = 0;
        for &a in w.letters() {
            total += self.images.get(&a).ok_or(WordError::MissingImage(a))?.len();
        }
        Ok(total)
    }
}

impl fmt::Display for Morphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (a, w) in &self.images {
            if !first {
                write!(f, ", ")?;
            }
            write!(f, "{a} -> {w}")?;
            first = false;
        }
        Ok(())
    }
}
