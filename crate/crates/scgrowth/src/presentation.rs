//! Group presentations, symmetrized relator sets, and metric small
//! cancellation checks.
//!
//! A presentation is parsed from a small text format (see [`Presentation::parse`]),
//! normalized so every relator is cyclically reduced, and symmetrized into
//! the set of all distinct cyclic permutations of the relators and their
//! inverses. Pieces — common prefixes of two distinct symmetrized elements —
//! drive both the C'(λ) verdicts and the three-letter bridge-word check used
//! by the growth-separation machinery.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

use crate::words::{Alphabet, AlphabetError, Lit, Word};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PresentationError {
    #[error("line {line}, column {col}: {message}")]
    Syntax {
        line: usize,
        col: usize,
        message: String,
    },
    #[error("line {line}, column {col}: unknown generator `{name}`")]
    UnknownGenerator {
        line: usize,
        col: usize,
        name: String,
    },
    #[error("relator {index} is empty after free and cyclic reduction")]
    EmptyRelator { index: usize },
    #[error("alphabet: {0}")]
    Alphabet(#[from] AlphabetError),
    #[error("operation requires exactly {expected} generators, presentation has {actual}")]
    WrongAlphabetSize { expected: usize, actual: usize },
}

/// A finite presentation: named generators plus cyclically reduced,
/// nonempty relators.
#[derive(Debug, Clone)]
pub struct Presentation {
    alphabet: Alphabet,
    relators: Vec<Word>,
}

impl Presentation {
    /// Build a presentation from parts, cyclically reducing every relator
    /// and rejecting relators that reduce to the empty word.
    pub fn new(alphabet: Alphabet, relators: Vec<Word>) -> Result<Self, PresentationError> {
        let mut reduced = Vec::with_capacity(relators.len());
        for (index, r) in relators.into_iter().enumerate() {
            let r = r.cyclic_reduce();
            if r.is_empty() {
                return Err(PresentationError::EmptyRelator { index });
            }
            reduced.push(r);
        }
        Ok(Presentation {
            alphabet,
            relators: reduced,
        })
    }

    /// The free group on `n` generators: no relators.
    pub fn free(n: usize) -> Self {
        Presentation {
            alphabet: Alphabet::standard(n),
            relators: Vec::new(),
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn is_free(&self) -> bool {
        self.relators.is_empty()
    }

    /// Parse the presentation source format:
    ///
    /// ```text
    /// generators: a b
    /// relators: (a^2 b^2)^3
    ///           a b a^-1 b^-1
    /// ```
    ///
    /// Each relator sits on its own line; `^` raises an atom (a generator or
    /// a parenthesized word) to an integer power, which may be negative.
    /// Powers and parentheses are expanded to flat words, which are then
    /// cyclically reduced.
    pub fn parse(text: &str) -> Result<Self, PresentationError> {
        Parser::new(text).parse()
    }
}

/// Parses one word over an existing alphabet using the relator expression
/// grammar — names, `^` powers (possibly negative), and parentheses, e.g.
/// `a b^-1 (a b)^3`. No free or cyclic reduction is applied.
pub fn parse_word(alphabet: &Alphabet, text: &str) -> Result<Word, PresentationError> {
    let mut p = Parser::new(text);
    p.skip_newlines();
    let w = p.parse_expr(alphabet)?;
    p.skip_newlines();
    let t = p.peek();
    if !matches!(t.tok, Tok::Eof) {
        return Err(PresentationError::Syntax {
            line: t.line,
            col: t.col,
            message: format!("unexpected trailing input: {}", t.tok),
        });
    }
    Ok(w)
}

// ---------------------------------------------------------------------------
// Parsing

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Name(String),
    Int(i64),
    Caret,
    Colon,
    LParen,
    RParen,
    Newline,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Name(s) => write!(f, "`{s}`"),
            Tok::Int(v) => write!(f, "integer {v}"),
            Tok::Caret => write!(f, "`^`"),
            Tok::Colon => write!(f, "`:`"),
            Tok::LParen => write!(f, "`(`"),
            Tok::RParen => write!(f, "`)`"),
            Tok::Newline => write!(f, "end of line"),
            Tok::Eof => write!(f, "end of input"),
        }
    }
}

struct Lexed {
    tok: Tok,
    line: usize,
    col: usize,
}

struct Cursor {
    chars: Vec<char>,
    i: usize,
    line: usize,
    col: usize,
}

impl Cursor {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.i).copied()
    }

    fn next(&mut self) -> Option<char> {
        let c = self.chars.get(self.i).copied()?;
        self.i += 1;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }
}

struct Parser {
    toks: Vec<Lexed>,
    pos: usize,
}

impl Parser {
    fn new(text: &str) -> Self {
        let mut cur = Cursor {
            chars: text.chars().collect(),
            i: 0,
            line: 1,
            col: 1,
        };
        let mut toks: Vec<Lexed> = Vec::new();
        while let Some(c) = cur.peek() {
            let (tline, tcol) = (cur.line, cur.col);
            if c == '\n' {
                cur.next();
                // Collapse runs of newlines; blank lines carry no meaning.
                if matches!(toks.last().map(|t| &t.tok), Some(Tok::Newline) | None) {
                    continue;
                }
                toks.push(Lexed {
                    tok: Tok::Newline,
                    line: tline,
                    col: tcol,
                });
                continue;
            }
            if c.is_whitespace() {
                cur.next();
                continue;
            }
            let tok = match c {
                '^' => {
                    cur.next();
                    Tok::Caret
                }
                ':' => {
                    cur.next();
                    Tok::Colon
                }
                '(' => {
                    cur.next();
                    Tok::LParen
                }
                ')' => {
                    cur.next();
                    Tok::RParen
                }
                c if c.is_ascii_alphabetic() => {
                    let mut s = String::new();
                    while let Some(c) = cur.peek() {
                        if c.is_ascii_alphanumeric() || c == '_' {
                            s.push(cur.next().unwrap());
                        } else {
                            break;
                        }
                    }
                    Tok::Name(s)
                }
                c if c.is_ascii_digit() || c == '-' => {
                    let mut s = String::new();
                    s.push(cur.next().unwrap());
                    while let Some(c) = cur.peek() {
                        if c.is_ascii_digit() {
                            s.push(cur.next().unwrap());
                        } else {
                            break;
                        }
                    }
                    match s.parse::<i64>() {
                        Ok(v) => Tok::Int(v),
                        Err(_) => Tok::Name(format!("<bad integer {s}>")),
                    }
                }
                other => {
                    cur.next();
                    Tok::Name(format!("<unexpected character `{other}`>"))
                }
            };
            toks.push(Lexed {
                tok,
                line: tline,
                col: tcol,
            });
        }
        let (eline, ecol) = toks
            .last()
            .map(|t| (t.line, t.col + 1))
            .unwrap_or((cur.line, cur.col));
        toks.push(Lexed {
            tok: Tok::Eof,
            line: eline,
            col: ecol,
        });
        Parser { toks, pos: 0 }
    }

    fn peek(&self) -> &Lexed {
        &self.toks[self.pos]
    }

    fn bump(&mut self) -> &Lexed {
        let t = &self.toks[self.pos];
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error<T>(&self, at: &Lexed, message: String) -> Result<T, PresentationError> {
        Err(PresentationError::Syntax {
            line: at.line,
            col: at.col,
            message,
        })
    }

    fn expect_keyword(&mut self, kw: &str) -> Result<(), PresentationError> {
        let t = self.bump();
        match &t.tok {
            Tok::Name(s) if s == kw => {}
            other => {
                let msg = format!("expected `{kw}`, found {other}");
                let at = Lexed {
                    tok: other.clone(),
                    line: t.line,
                    col: t.col,
                };
                return self.error(&at, msg);
            }
        }
        let t = self.bump();
        match &t.tok {
            Tok::Colon => Ok(()),
            other => {
                let msg = format!("expected `:` after `{kw}`, found {other}");
                let at = Lexed {
                    tok: other.clone(),
                    line: t.line,
                    col: t.col,
                };
                self.error(&at, msg)
            }
        }
    }

    fn skip_newlines(&mut self) {
        while matches!(self.peek().tok, Tok::Newline) {
            self.bump();
        }
    }

    fn parse(mut self) -> Result<Presentation, PresentationError> {
        self.skip_newlines();
        self.expect_keyword("generators")?;
        let mut names = Vec::new();
        loop {
            match &self.peek().tok {
                Tok::Name(s) if !s.starts_with('<') => {
                    names.push(s.clone());
                    self.bump();
                }
                Tok::Newline | Tok::Eof => break,
                other => {
                    let t = self.peek();
                    let at = Lexed {
                        tok: other.clone(),
                        line: t.line,
                        col: t.col,
                    };
                    let msg = format!("expected generator name, found {other}");
                    return self.error(&at, msg);
                }
            }
        }
        let alphabet = Alphabet::new(names)?;
        self.skip_newlines();
        self.expect_keyword("relators")?;
        let mut relators = Vec::new();
        loop {
            self.skip_newlines();
            if matches!(self.peek().tok, Tok::Eof) {
                break;
            }
            let w = self.parse_expr(&alphabet)?;
            relators.push(w);
        }
        Presentation::new(alphabet, relators)
    }

    /// term+ up to (but not consuming) NEWLINE / EOF / `)`.
    fn parse_expr(&mut self, alphabet: &Alphabet) -> Result<Word, PresentationError> {
        let mut letters: Vec<Lit> = Vec::new();
        let mut any = false;
        loop {
            match &self.peek().tok {
                Tok::Newline | Tok::Eof | Tok::RParen => break,
                _ => {
                    let term = self.parse_term(alphabet)?;
                    letters.extend_from_slice(term.letters());
                    any = true;
                }
            }
        }
        if !any {
            let t = self.peek();
            let at = Lexed {
                tok: t.tok.clone(),
                line: t.line,
                col: t.col,
            };
            return self.error(&at, "expected at least one term".to_string());
        }
        Ok(Word::raw(letters))
    }

    /// atom ["^" integer]
    fn parse_term(&mut self, alphabet: &Alphabet) -> Result<Word, PresentationError> {
        let t = self.peek();
        let (line, col) = (t.line, t.col);
        let base = match t.tok.clone() {
            Tok::Name(name) => {
                self.bump();
                match alphabet.generator(&name) {
                    Some(g) => Word::raw(vec![Lit::new(g, false)]),
                    None => {
                        return Err(PresentationError::UnknownGenerator { line, col, name })
                    }
                }
            }
            Tok::LParen => {
                self.bump();
                let inner = self.parse_expr(alphabet)?;
                let t = self.bump();
                if !matches!(t.tok, Tok::RParen) {
                    let msg = format!("expected `)`, found {}", t.tok);
                    let at = Lexed {
                        tok: t.tok.clone(),
                        line: t.line,
                        col: t.col,
                    };
                    return self.error(&at, msg);
                }
                inner
            }
            other => {
                let at = Lexed {
                    tok: other.clone(),
                    line,
                    col,
                };
                let msg = format!("expected generator or `(`, found {other}");
                return self.error(&at, msg);
            }
        };
        if matches!(self.peek().tok, Tok::Caret) {
            self.bump();
            let t = self.bump();
            let exp = match t.tok {
                Tok::Int(v) => v,
                ref other => {
                    let msg = format!("expected integer exponent, found {other}");
                    let at = Lexed {
                        tok: other.clone(),
                        line: t.line,
                        col: t.col,
                    };
                    return self.error(&at, msg);
                }
            };
            Ok(word_power(&base, exp))
        } else {
            Ok(base)
        }
    }
}

fn word_power(w: &Word, exp: i64) -> Word {
    let base = if exp < 0 { w.inverse() } else { w.clone() };
    let mut letters = Vec::with_capacity(w.len() * exp.unsigned_abs() as usize);
    for _ in 0..exp.unsigned_abs() {
        letters.extend_from_slice(base.letters());
    }
    Word::raw(letters)
}

// ---------------------------------------------------------------------------
// Symmetrization and pieces

/// Where a symmetrized element came from: cyclic shift `shift` of relator
/// `relator`, inverted first when `inverted` is set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Origin {
    pub relator: usize,
    pub shift: usize,
    pub inverted: bool,
}

/// All distinct cyclic permutations of the relators and their inverses,
/// deduplicated, each tagged with the first origin that produced it.
#[derive(Debug, Clone)]
pub struct SymmetrizedSet {
    elements: Vec<Word>,
    origins: Vec<Origin>,
}

impl SymmetrizedSet {
    pub fn elements(&self) -> &[Word] {
        &self.elements
    }

    pub fn origin(&self, i: usize) -> Origin {
        self.origins[i]
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Indices of the elements originating from relator `r`.
    pub fn elements_of_relator(&self, r: usize) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| self.origins[i].relator == r)
            .collect()
    }
}

/// Symmetrize: collect every cyclic shift of every relator and of every
/// inverted relator, deduplicating by exact word equality (first occurrence
/// wins, so origins are deterministic).
pub fn symmetrize(p: &Presentation) -> SymmetrizedSet {
    let mut elements: Vec<Word> = Vec::new();
    let mut origins: Vec<Origin> = Vec::new();
    let mut seen: HashMap<Word, usize> = HashMap::new();
    for (ri, r) in p.relators().iter().enumerate() {
        for inverted in [false, true] {
            let base = if inverted { r.inverse() } else { r.clone() };
            for shift in 0..base.len() {
                let w = base.cyclic_shift(shift);
                if !seen.contains_key(&w) {
                    seen.insert(w.clone(), elements.len());
                    origins.push(Origin {
                        relator: ri,
                        shift,
                        inverted,
                    });
                    elements.push(w);
                }
            }
        }
    }
    SymmetrizedSet { elements, origins }
}

/// A maximal piece found for one symmetrized element: `piece` is the longest
/// common prefix of `elements[element]` and `elements[partner]`.
#[derive(Debug, Clone)]
pub struct PieceWitness {
    pub piece: Word,
    pub element: usize,
    pub partner: usize,
}

/// Longest-piece data for a symmetrized set.
#[derive(Debug, Clone)]
pub struct PieceReport {
    /// Longest piece occurring in any symmetrized form of each relator.
    pub max_piece_per_relator: Vec<usize>,
    /// Longest piece that is a prefix of each symmetrized element.
    pub max_piece_per_element: Vec<usize>,
    /// One witness per element that has a nonempty piece prefix.
    pub witnesses: Vec<PieceWitness>,
}

fn common_prefix_len(a: &Word, b: &Word) -> usize {
    a.letters()
        .iter()
        .zip(b.letters())
        .take_while(|(x, y)| x == y)
        .count()
}

/// Pairwise longest-common-prefix scan over the symmetrized set. A word is
/// a piece iff it is a nonempty common prefix of two *distinct* elements;
/// because the set is closed under cyclic permutation, prefixes capture all
/// factor occurrences.
pub fn compute_pieces(p: &Presentation, s: &SymmetrizedSet) -> PieceReport {
    let n = s.len();
    let mut max_piece_per_element = vec![0usize; n];
    let mut partner = vec![usize::MAX; n];
    for i in 0..n {
        for j in (i + 1)..n {
            let l = common_prefix_len(&s.elements[i], &s.elements[j]);
            if l > max_piece_per_element[i] {
                max_piece_per_element[i] = l;
                partner[i] = j;
            }
            if l > max_piece_per_element[j] {
                max_piece_per_element[j] = l;
                partner[j] = i;
            }
        }
    }
    let mut max_piece_per_relator = vec![0usize; p.relators().len()];
    for i in 0..n {
        let r = s.origins[i].relator;
        max_piece_per_relator[r] = max_piece_per_relator[r].max(max_piece_per_element[i]);
    }
    let witnesses = (0..n)
        .filter(|&i| max_piece_per_element[i] > 0)
        .map(|i| PieceWitness {
            piece: s.elements[i].slice(0..max_piece_per_element[i]),
            element: i,
            partner: partner[i],
        })
        .collect();
    PieceReport {
        max_piece_per_relator,
        max_piece_per_element,
        witnesses,
    }
}

/// Outcome of a C'(λ) check.
#[derive(Debug, Clone)]
pub enum LambdaVerdict {
    Pass,
    /// Some piece `u` of element `element` has `|u| ≥ λ·|element|`. The
    /// `boundary` flag distinguishes exact equality `|u| = λ·|element|`,
    /// which fails the strict definition but would pass a non-strict one.
    Fail {
        piece: Word,
        element: usize,
        boundary: bool,
    },
}

impl LambdaVerdict {
    pub fn passed(&self) -> bool {
        matches!(self, LambdaVerdict::Pass)
    }
}

#[derive(Debug, Clone)]
pub struct SmallCancellationReport {
    pub lambda: BigRational,
    pub pieces: PieceReport,
    pub verdict: LambdaVerdict,
}

/// Check the metric small cancellation condition C'(λ): every piece `u`
/// occurring in an element `r` of the symmetrized set satisfies `|u| < λ|r|`
/// strictly. Since the piece set is prefix-closed, only each element's
/// longest piece prefix needs testing.
pub fn check_small_cancellation(p: &Presentation, lambda: &BigRational) -> SmallCancellationReport {
    assert!(
        lambda > &BigRational::from_integer(BigInt::from(0)),
        "lambda must be positive"
    );
    let s = symmetrize(p);
    let pieces = compute_pieces(p, &s);
    let mut verdict = LambdaVerdict::Pass;
    for i in 0..s.len() {
        let max_piece = pieces.max_piece_per_element[i];
        if max_piece == 0 {
            continue;
        }
        let piece_len = BigRational::from_integer(BigInt::from(max_piece));
        let threshold = lambda * BigRational::from_integer(BigInt::from(s.elements[i].len()));
        if piece_len >= threshold {
            verdict = LambdaVerdict::Fail {
                piece: s.elements[i].slice(0..max_piece),
                element: i,
                boundary: piece_len == threshold,
            };
            break;
        }
    }
    SmallCancellationReport {
        lambda: lambda.clone(),
        pieces,
        verdict,
    }
}

/// Per-pattern verdict for the three-letter bridge words.
#[derive(Debug, Clone)]
pub struct BridgePattern {
    pub word: Word,
    pub is_piece: bool,
}

#[derive(Debug, Clone)]
pub struct BridgeReport {
    pub patterns: Vec<BridgePattern>,
    pub pass: bool,
}

/// Check that none of the sixteen three-letter words of the shapes
/// `a^ε b^δ a^ζ` and `b^ε a^δ b^ζ` (all sign choices) is a piece. This is
/// the hypothesis the growth-separation argument needs so that geodesics
/// can be rerouted around a forbidden factor without touching relator
/// geometry. All eight sign patterns per shape are tested — the strictest
/// reading.
pub fn check_bridge_pieces(p: &Presentation) -> Result<BridgeReport, PresentationError> {
    let g = p.alphabet().generator_count();
    if g != 2 {
        return Err(PresentationError::WrongAlphabetSize {
            expected: 2,
            actual: g,
        });
    }
    let s = symmetrize(p);
    let mut patterns = Vec::with_capacity(16);
    for (outer, inner) in [(0u8, 1u8), (1u8, 0u8)] {
        for eps in [false, true] {
            for delta in [false, true] {
                for zeta in [false, true] {
                    let w = Word::raw(vec![
                        Lit::new(outer, eps),
                        Lit::new(inner, delta),
                        Lit::new(outer, zeta),
                    ]);
                    let extending = s
                        .elements()
                        .iter()
                        .filter(|e| {
                            e.len() >= 3 && common_prefix_len(e, &w) == 3
                        })
                        .count();
                    patterns.push(BridgePattern {
                        word: w,
                        is_piece: extending >= 2,
                    });
                }
            }
        }
    }
    let pass = patterns.iter().all(|p| !p.is_piece);
    Ok(BridgeReport { patterns, pass })
}
