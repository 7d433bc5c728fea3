//! Letters, words, and free reduction.
//!
//! A generator alphabet of size `g` induces a label alphabet of size `2g`:
//! each generator contributes a positive letter and an inverse letter. Labels
//! are encoded densely so that the default shortlex letter order is
//! `a < a^-1 < b < b^-1 < …`, matching the encoding order.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

/// Maximum number of generators supported by the dense `u8` label encoding.
pub const MAX_GENERATORS: usize = 64;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AlphabetError {
    #[error("no generators declared")]
    Empty,
    #[error("too many generators: {0} (limit {MAX_GENERATORS})")]
    TooMany(usize),
    #[error("duplicate generator name `{0}`")]
    Duplicate(String),
    #[error("invalid generator name `{0}`")]
    BadName(String),
}

/// Ordered list of generator names.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    names: Vec<String>,
    by_name: HashMap<String, u8>,
}

impl Alphabet {
    pub fn new<S: Into<String>>(names: Vec<S>) -> Result<Self, AlphabetError> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(AlphabetError::Empty);
        }
        if names.len() > MAX_GENERATORS {
            return Err(AlphabetError::TooMany(names.len()));
        }
        let mut by_name = HashMap::new();
        for (i, n) in names.iter().enumerate() {
            if !is_valid_name(n) {
                return Err(AlphabetError::BadName(n.clone()));
            }
            if by_name.insert(n.clone(), i as u8).is_some() {
                return Err(AlphabetError::Duplicate(n.clone()));
            }
        }
        Ok(Alphabet { names, by_name })
    }

    /// `a, b, c, …` for small counts; used by automata not tied to a parsed file.
    pub fn standard(generators: usize) -> Self {
        let letters = "abcdefghijklmnopqrstuvwxyz";
        let names: Vec<String> = (0..generators)
            .map(|i| {
                if i < letters.len() {
                    letters[i..i + 1].to_string()
                } else {
                    format!("g{i}")
                }
            })
            .collect();
        Alphabet::new(names).expect("standard names are valid")
    }

    pub fn generator_count(&self) -> usize {
        self.names.len()
    }

    /// Size of the label alphabet: generators plus inverse letters.
    pub fn label_count(&self) -> usize {
        2 * self.names.len()
    }

    pub fn generator(&self, name: &str) -> Option<u8> {
        self.by_name.get(name).copied()
    }

    pub fn name(&self, generator: u8) -> &str {
        &self.names[generator as usize]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Display name of a label: `b` or `b^-1`.
    pub fn label_name(&self, lit: Lit) -> String {
        if lit.is_inverse() {
            format!("{}^-1", self.name(lit.generator()))
        } else {
            self.name(lit.generator()).to_string()
        }
    }

    /// All label names in encoding order: `a, a^-1, b, b^-1, …`.
    pub fn label_names(&self) -> Vec<String> {
        (0..self.label_count() as u8)
            .map(|c| self.label_name(Lit(c)))
            .collect()
    }
}

fn is_valid_name(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// One letter of a word: a generator or its inverse, encoded as
/// `generator * 2 + (1 if inverse)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Lit(pub u8);

impl Lit {
    pub fn new(generator: u8, inverse: bool) -> Self {
        Lit(generator << 1 | inverse as u8)
    }

    pub fn generator(self) -> u8 {
        self.0 >> 1
    }

    pub fn is_inverse(self) -> bool {
        self.0 & 1 == 1
    }

    pub fn inverse(self) -> Lit {
        Lit(self.0 ^ 1)
    }

    /// Raw label index, usable as an automaton edge label.
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Debug for Lit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Lit({}{})", self.generator(), if self.is_inverse() { "-" } else { "+" })
    }
}

/// A word over the label alphabet. Construction via [`Word::reduced`] keeps it
/// freely reduced; other constructors preserve the given letters verbatim.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<Lit>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    /// Keep the letters exactly as given (may contain cancelling pairs).
    pub fn raw(lits: Vec<Lit>) -> Self {
        Word(lits)
    }

    /// Freely reduce the letters: cancel adjacent inverse pairs until none remain.
    pub fn reduced(lits: Vec<Lit>) -> Self {
        let mut out: Vec<Lit> = Vec::with_capacity(lits.len());
        for l in lits {
            if out.last() == Some(&l.inverse()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Lit] {
        &self.0
    }

    pub fn is_freely_reduced(&self) -> bool {
        self.0.windows(2).all(|w| w[0] != w[1].inverse())
    }

    pub fn free_reduce(&self) -> Word {
        Word::reduced(self.0.clone())
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    /// Freely reduced concatenation.
    pub fn concat(&self, other: &Word) -> Word {
        let mut out = self.0.clone();
        for &l in &other.0 {
            if out.last() == Some(&l.inverse()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    /// Append one letter with free cancellation.
    pub fn push_reduced(&self, l: Lit) -> Word {
        let mut out = self.0.clone();
        if out.last() == Some(&l.inverse()) {
            out.pop();
        } else {
            out.push(l);
        }
        Word(out)
    }

    /// Strip cancelling first/last letters: the word is conjugated until it is
    /// cyclically reduced. Assumes the word is already freely reduced.
    pub fn cyclic_reduce(&self) -> Word {
        let mut lo = 0;
        let mut hi = self.0.len();
        while hi - lo >= 2 && self.0[lo] == self.0[hi - 1].inverse() {
            lo += 1;
            hi -= 1;
        }
        Word(self.0[lo..hi].to_vec())
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        self.is_freely_reduced()
            && (self.0.len() < 2 || self.0[0] != self.0[self.0.len() - 1].inverse())
    }

    /// Rotation starting at position `i`: `w[i..] w[..i]`.
    pub fn cyclic_shift(&self, i: usize) -> Word {
        let n = self.0.len();
        if n == 0 {
            return Word::empty();
        }
        let i = i % n;
        let mut out = Vec::with_capacity(n);
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&self.0[..i]);
        Word(out)
    }

    pub fn slice(&self, range: std::ops::Range<usize>) -> Word {
        Word(self.0[range].to_vec())
    }

    /// Exponent-sum vector over the generators (abelianized image).
    pub fn abelianization(&self, generators: usize) -> Vec<i64> {
        let mut v = vec![0i64; generators];
        for l in &self.0 {
            v[l.generator() as usize] += if l.is_inverse() { -1 } else { 1 };
        }
        v
    }

    pub fn render(&self, alphabet: &Alphabet) -> String {
        if self.0.is_empty() {
            return "1".to_string();
        }
        // Run-length compress consecutive equal letters into powers.
        let mut parts: Vec<String> = Vec::new();
        let mut i = 0;
        while i < self.0.len() {
            let l = self.0[i];
            let mut j = i + 1;
            while j < self.0.len() && self.0[j] == l {
                j += 1;
            }
            let count = (j - i) as i64;
            let exp = if l.is_inverse() { -count } else { count };
            if exp == 1 {
                parts.push(alphabet.name(l.generator()).to_string());
            } else {
                parts.push(format!("{}^{}", alphabet.name(l.generator()), exp));
            }
            i = j;
        }
        parts.join(" ")
    }
}

impl fmt::Debug for Word {
    /// Compact letters-only form for test output: lowercase generator,
    /// uppercase inverse (`"abA"` = a b a^-1).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let letters = "abcdefghijklmnopqrstuvwxyz";
        write!(f, "\"")?;
        for l in &self.0 {
            let g = l.generator() as usize;
            let c = letters.as_bytes().get(g).copied().unwrap_or(b'?') as char;
            if l.is_inverse() {
                write!(f, "{}", c.to_ascii_uppercase())?;
            } else {
                write!(f, "{c}")?;
            }
        }
        write!(f, "\"")
    }
}

/// A total order on labels, inducing shortlex order on words. The default
/// ranks labels in encoding order: `a < a^-1 < b < b^-1 < …`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShortlexOrder {
    /// `rank[label index]` = position in the letter order.
    rank: Vec<u8>,
    /// Labels listed in rank order (inverse permutation of `rank`).
    by_rank: Vec<Lit>,
}

impl ShortlexOrder {
    pub fn standard(label_count: usize) -> Self {
        let rank: Vec<u8> = (0..label_count as u8).collect();
        let by_rank: Vec<Lit> = (0..label_count as u8).map(Lit).collect();
        ShortlexOrder { rank, by_rank }
    }

    /// Build from a permutation of all labels, smallest first.
    pub fn from_permutation(labels: &[Lit], label_count: usize) -> Option<Self> {
        if labels.len() != label_count {
            return None;
        }
        let mut rank = vec![u8::MAX; label_count];
        for (pos, l) in labels.iter().enumerate() {
            let slot = rank.get_mut(l.index())?;
            if *slot != u8::MAX {
                return None; // duplicate
            }
            *slot = pos as u8;
        }
        Some(ShortlexOrder { rank, by_rank: labels.to_vec() })
    }

    pub fn label_count(&self) -> usize {
        self.rank.len()
    }

    pub fn rank_of(&self, l: Lit) -> u8 {
        self.rank[l.index()]
    }

    /// All labels, smallest rank first: the candidate generation order.
    pub fn labels(&self) -> &[Lit] {
        &self.by_rank
    }

    pub fn cmp_words(&self, a: &Word, b: &Word) -> Ordering {
        a.len().cmp(&b.len()).then_with(|| {
            for (x, y) in a.letters().iter().zip(b.letters()) {
                match self.rank_of(*x).cmp(&self.rank_of(*y)) {
                    Ordering::Equal => {}
                    o => return o,
                }
            }
            Ordering::Equal
        })
    }
}
