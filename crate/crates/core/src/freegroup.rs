//! Words in the free group on `a, b, c`, the fundamental group of the
//! four-punctured sphere.
//!
//! The fourth boundary loop `d = c'b'a'` is accepted on input through
//! [`SymWord`] and eliminated by [`expand_d`]; it never appears in a
//! [`Word`] or a [`ConjugacyClass`]. Text syntax: letters `a b c d`, a
//! trailing `'` inverts, whitespace is ignored (`b'abc'b'a'`).

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    A,
    B,
    C,
}

impl Generator {
    pub const ALL: [Generator; 3] = [Generator::A, Generator::B, Generator::C];

    fn symbol(self) -> char {
        match self {
            Generator::A => 'a',
            Generator::B => 'b',
            Generator::C => 'c',
        }
    }
}

/// A generator or its inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Letter {
    pub generator: Generator,
    pub inverse: bool,
}

impl Letter {
    pub const fn new(generator: Generator, inverse: bool) -> Self {
        Letter { generator, inverse }
    }

    pub fn inv(self) -> Self {
        Letter {
            inverse: !self.inverse,
            ..self
        }
    }

    pub fn cancels(self, other: Letter) -> bool {
        self.generator == other.generator && self.inverse != other.inverse
    }

    /// Position in the order `a < a' < b < b' < c < c'`.
    fn rank(self) -> u8 {
        (self.generator as u8) * 2 + self.inverse as u8
    }

    /// All six letters in canonical order.
    pub fn all() -> [Letter; 6] {
        let mut out = [Letter::new(Generator::A, false); 6];
        for (i, g) in Generator::ALL.iter().enumerate() {
            out[2 * i] = Letter::new(*g, false);
            out[2 * i + 1] = Letter::new(*g, true);
        }
        out
    }
}

impl Ord for Letter {
    fn cmp(&self, other: &Self) -> Ordering {
        self.rank().cmp(&other.rank())
    }
}

impl PartialOrd for Letter {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.generator.symbol())?;
        if self.inverse {
            write!(f, "'")?;
        }
        Ok(())
    }
}

/// A word over `a, b, c` and their inverses. Not necessarily reduced.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn from_letters(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inv()).collect())
    }

    /// Concatenation followed by free reduction.
    pub fn mul(&self, rhs: &Word) -> Word {
        let mut letters = self.0.clone();
        letters.extend_from_slice(&rhs.0);
        reduce(&Word(letters))
    }

    pub fn is_reduced(&self) -> bool {
        self.0.windows(2).all(|w| !w[0].cancels(w[1]))
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        self.is_reduced()
            && match (self.0.first(), self.0.last()) {
                (Some(f), Some(l)) if self.0.len() > 1 => !f.cancels(*l),
                _ => true,
            }
    }

    /// Rotation moving the first `k` letters to the end.
    pub fn rotate(&self, k: usize) -> Word {
        let mut letters = self.0.clone();
        if !letters.is_empty() {
            letters.rotate_left(k % self.0.len());
        }
        Word(letters)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.0 {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl FromStr for Word {
    type Err = Error;

    /// Parses the text syntax; any `d` is expanded.
    fn from_str(s: &str) -> Result<Self> {
        Ok(expand_d(&s.parse::<SymWord>()?))
    }
}

/// Letters of the input layer, including the boundary loop `d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Symbol {
    A,
    B,
    C,
    D,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SymLetter {
    pub symbol: Symbol,
    pub inverse: bool,
}

impl SymLetter {
    pub const fn new(symbol: Symbol, inverse: bool) -> Self {
        SymLetter { symbol, inverse }
    }

    pub fn inv(self) -> Self {
        SymLetter {
            inverse: !self.inverse,
            ..self
        }
    }
}

impl fmt::Display for SymLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self.symbol {
            Symbol::A => 'a',
            Symbol::B => 'b',
            Symbol::C => 'c',
            Symbol::D => 'd',
        };
        write!(f, "{c}")?;
        if self.inverse {
            write!(f, "'")?;
        }
        Ok(())
    }
}

/// A word that may still contain `d`, kept exactly as written.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct SymWord(Vec<SymLetter>);

impl SymWord {
    pub fn from_letters(letters: Vec<SymLetter>) -> Self {
        SymWord(letters)
    }

    pub fn letters(&self) -> &[SymLetter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Plain concatenation, no cancellation.
    pub fn concat<'a>(parts: impl IntoIterator<Item = &'a SymWord>) -> SymWord {
        SymWord(parts.into_iter().flat_map(|w| w.0.iter().copied()).collect())
    }
}

impl fmt::Display for SymWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.0 {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl Serialize for SymWord {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl FromStr for SymWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut letters: Vec<SymLetter> = Vec::new();
        if s.trim() == "1" {
            return Ok(SymWord(letters));
        }
        for ch in s.chars() {
            let symbol = match ch {
                'a' => Symbol::A,
                'b' => Symbol::B,
                'c' => Symbol::C,
                'd' => Symbol::D,
                '\'' | '’' => {
                    let last = letters.last_mut().ok_or_else(|| Error::WordParse {
                        input: s.to_string(),
                        reason: "inverse mark without a preceding letter".into(),
                    })?;
                    *last = last.inv();
                    continue;
                }
                c if c.is_whitespace() => continue,
                c => {
                    return Err(Error::WordParse {
                        input: s.to_string(),
                        reason: format!("unexpected character {c:?}"),
                    })
                }
            };
            letters.push(SymLetter::new(symbol, false));
        }
        Ok(SymWord(letters))
    }
}

/// Replaces `d` by `c'b'a'` and `d'` by `abc`, then freely reduces.
pub fn expand_d(word: &SymWord) -> Word {
    use Generator::*;
    let mut letters = Vec::with_capacity(word.len() * 3);
    for l in word.letters() {
        match (l.symbol, l.inverse) {
            (Symbol::A, inv) => letters.push(Letter::new(A, inv)),
            (Symbol::B, inv) => letters.push(Letter::new(B, inv)),
            (Symbol::C, inv) => letters.push(Letter::new(C, inv)),
            (Symbol::D, false) => letters.extend([
                Letter::new(C, true),
                Letter::new(B, true),
                Letter::new(A, true),
            ]),
            (Symbol::D, true) => letters.extend([
                Letter::new(A, false),
                Letter::new(B, false),
                Letter::new(C, false),
            ]),
        }
    }
    reduce(&Word(letters))
}

/// Free reduction.
pub fn reduce(word: &Word) -> Word {
    let mut stack: Vec<Letter> = Vec::with_capacity(word.len());
    for &l in word.letters() {
        match stack.last() {
            Some(&top) if top.cancels(l) => {
                stack.pop();
            }
            _ => stack.push(l),
        }
    }
    Word(stack)
}

/// Reduces and strips matching inverse pairs from the two ends.
pub fn cyclic_reduce(word: &Word) -> Word {
    let w = reduce(word);
    let letters = w.letters();
    let (mut lo, mut hi) = (0, letters.len());
    while hi - lo >= 2 && letters[lo].cancels(letters[hi - 1]) {
        lo += 1;
        hi -= 1;
    }
    Word(letters[lo..hi].to_vec())
}

/// Canonical representative of a conjugacy class taken modulo inversion.
///
/// The representative is the lexicographically least rotation, over the
/// cyclically reduced word and its inverse, with `a < a' < b < b' < c < c'`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct ConjugacyClass {
    canonical: Word,
}

impl ConjugacyClass {
    pub fn canonical(&self) -> &Word {
        &self.canonical
    }

    pub fn is_trivial(&self) -> bool {
        self.canonical.is_empty()
    }
}

impl fmt::Display for ConjugacyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.canonical.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", self.canonical)
        }
    }
}

fn least_rotation(word: &Word) -> Word {
    (0..word.len().max(1))
        .map(|k| word.rotate(k))
        .min()
        .unwrap_or_default()
}

pub fn conjugacy_canonical(word: &Word) -> ConjugacyClass {
    let core = cyclic_reduce(word);
    let forward = least_rotation(&core);
    let backward = least_rotation(&core.inverse());
    ConjugacyClass {
        canonical: forward.min(backward),
    }
}

pub fn equal_classes(u: &Word, v: &Word) -> bool {
    conjugacy_canonical(u) == conjugacy_canonical(v)
}
