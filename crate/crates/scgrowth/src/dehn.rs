//! Word-problem oracle for C'(1/6) presentations via Dehn's algorithm.
//!
//! In a C'(1/6) group, every nonempty freely reduced word representing the
//! identity contains a factor that is more than half of some symmetrized
//! relator (Greendlinger's lemma). Replacing such a factor `u` — where
//! `r = uv` with `2|u| > |r|` — by `v⁻¹` strictly shortens the word, so the
//! loop "free-reduce, find a long factor, replace" terminates and decides
//! the word problem.
//!
//! The factor search is the dominant cost of ball enumeration, so all long
//! prefixes (length `⌊|r|/2⌋ + 1`) of the symmetrized elements are compiled
//! once into a dense multi-pattern automaton; each candidate word is then a
//! single linear scan. Equality tests reduce `u·v⁻¹` rather than comparing
//! Dehn-irreducible forms, which are not canonical.

use thiserror::Error;

use crate::acmatch::PatternMatcher;
use crate::presentation::{check_small_cancellation, symmetrize, Presentation, SymmetrizedSet};
use crate::words::{Lit, Word};

use num_bigint::BigInt;
use num_rational::BigRational;

#[derive(Debug, Error)]
pub enum DehnError {
    #[error(
        "presentation fails C'(1/6), so Dehn reduction would be an unsound equality oracle \
         (use the forced constructor to proceed anyway)"
    )]
    NotSmallCancellation,
}

/// One replacement step: the factor of length `matched_len` at `position`
/// equals the long prefix of symmetrized element `element` and was replaced
/// by the inverse of that element's remaining suffix.
#[derive(Debug, Clone)]
pub struct DehnStep {
    pub position: usize,
    pub element: usize,
    pub matched_len: usize,
    pub replacement: Word,
}

#[derive(Debug, Clone)]
pub struct DehnTrace {
    pub steps: Vec<DehnStep>,
    pub final_word: Word,
}

impl DehnTrace {
    pub fn is_identity(&self) -> bool {
        self.final_word.is_empty()
    }
}

/// Reusable buffers for the allocation-free equality path.
#[derive(Default)]
pub struct DehnScratch {
    cur: Vec<Lit>,
    spare: Vec<Lit>,
}

/// Precompiled word-problem oracle for one presentation.
pub struct DehnOracle {
    elements: Vec<Word>,
    /// Pattern id i is the long prefix of `elements[i]`.
    matcher: Option<PatternMatcher>,
    sound: bool,
}

impl DehnOracle {
    /// Build an oracle, verifying C'(1/6) first. A free presentation is
    /// always accepted (free reduction alone is complete there).
    pub fn new(p: &Presentation) -> Result<DehnOracle, DehnError> {
        let sixth = BigRational::new(BigInt::from(1), BigInt::from(6));
        if !p.is_free() && !check_small_cancellation(p, &sixth).verdict.passed() {
            return Err(DehnError::NotSmallCancellation);
        }
        Ok(Self::build(p, true))
    }

    /// Build an oracle without the C'(1/6) check. Reduction still only
    /// applies honest relator identities — words it calls equal ARE equal —
    /// but identity detection may be incomplete, so "not equal" answers are
    /// unreliable. Every consumer surfaces this through [`Self::is_sound`].
    pub fn new_forced(p: &Presentation) -> DehnOracle {
        let sixth = BigRational::new(BigInt::from(1), BigInt::from(6));
        let sound = p.is_free() || check_small_cancellation(p, &sixth).verdict.passed();
        Self::build(p, sound)
    }

    fn build(p: &Presentation, sound: bool) -> DehnOracle {
        let s = symmetrize(p);
        Self::from_symmetrized(&s, p.alphabet().label_count(), sound)
    }

    /// Build directly from a symmetrized set over an alphabet with
    /// `label_count` letter codes.
    pub fn from_symmetrized(s: &SymmetrizedSet, label_count: usize, sound: bool) -> DehnOracle {
        let elements: Vec<Word> = s.elements().to_vec();
        let matcher = if elements.is_empty() {
            None
        } else {
            let patterns: Vec<Vec<Lit>> = elements
                .iter()
                .map(|e| e.letters()[..e.len() / 2 + 1].to_vec())
                .collect();
            Some(PatternMatcher::new(label_count, &patterns))
        };
        DehnOracle {
            elements,
            matcher,
            sound,
        }
    }

    /// False when the presentation failed C'(1/6) and the oracle was forced:
    /// negative equality answers are then unreliable.
    pub fn is_sound(&self) -> bool {
        self.sound
    }

    pub fn symmetrized_elements(&self) -> &[Word] {
        &self.elements
    }

    /// Leftmost-longest replacement site in `cur`: the smallest start
    /// position carrying any long-prefix match, extended to the longest full
    /// prefix of its element (ties broken by smallest element index).
    /// Returns `(start, element, matched_len)`.
    fn leftmost_longest(&self, cur: &[Lit]) -> Option<(usize, usize, usize)> {
        let matcher = self.matcher.as_ref()?;
        let mut best_start = usize::MAX;
        let mut candidates: Vec<u32> = Vec::new();
        let mut state = PatternMatcher::START;
        for (pos, &lit) in cur.iter().enumerate() {
            state = matcher.step(state, lit);
            if matcher.is_terminal(state) {
                for id in matcher.matches_at(state) {
                    let start = pos + 1 - matcher.pattern_len(id);
                    if start < best_start {
                        best_start = start;
                        candidates.clear();
                        candidates.push(id);
                    } else if start == best_start && !candidates.contains(&id) {
                        candidates.push(id);
                    }
                }
            }
        }
        if best_start == usize::MAX {
            return None;
        }
        let mut best: Option<(usize, usize)> = None; // (element, matched_len)
        for &id in &candidates {
            let elem = id as usize;
            let letters = self.elements[elem].letters();
            let mut m = matcher.pattern_len(id);
            while best_start + m < cur.len() && m < letters.len() && cur[best_start + m] == letters[m]
            {
                m += 1;
            }
            let better = match best {
                None => true,
                Some((belem, bm)) => m > bm || (m == bm && elem < belem),
            };
            if better {
                best = Some((elem, m));
            }
        }
        let (elem, m) = best.unwrap();
        Some((best_start, elem, m))
    }

    /// Run the replacement loop on a freely reduced letter buffer, calling
    /// `on_step` before applying each replacement. `cur` stays freely
    /// reduced throughout and strictly shrinks at every step.
    fn reduce_buffer(
        &self,
        cur: &mut Vec<Lit>,
        spare: &mut Vec<Lit>,
        mut on_step: impl FnMut(usize, usize, usize),
    ) {
        while let Some((start, elem, m)) = self.leftmost_longest(cur) {
            on_step(start, elem, m);
            let letters = self.elements[elem].letters();
            spare.clear();
            spare.extend_from_slice(&cur[..start]);
            for i in (m..letters.len()).rev() {
                push_reduced(spare, letters[i].inverse());
            }
            for &l in &cur[start + m..] {
                push_reduced(spare, l);
            }
            std::mem::swap(cur, spare);
        }
    }

    /// Dehn-reduce a word, recording every replacement. The final word of
    /// the trace is freely reduced and contains no factor longer than half
    /// of any symmetrized relator; it is empty iff `w` represents the
    /// identity (complete under C'(1/6)).
    pub fn dehn_reduce(&self, w: &Word) -> DehnTrace {
        let mut cur: Vec<Lit> = w.free_reduce().letters().to_vec();
        let mut spare: Vec<Lit> = Vec::with_capacity(cur.len());
        let mut steps = Vec::new();
        let elements = &self.elements;
        self.reduce_buffer(&mut cur, &mut spare, |start, elem, m| {
            let letters = elements[elem].letters();
            let replacement = Word::raw(
                letters[m..]
                    .iter()
                    .rev()
                    .map(|l| l.inverse())
                    .collect::<Vec<_>>(),
            );
            steps.push(DehnStep {
                position: start,
                element: elem,
                matched_len: m,
                replacement,
            });
        });
        DehnTrace {
            steps,
            final_word: Word::raw(cur),
        }
    }

    /// True iff `w` represents the identity.
    pub fn is_identity(&self, w: &Word) -> bool {
        let mut scratch = DehnScratch::default();
        self.is_identity_with_scratch(w.letters(), &mut scratch)
    }

    /// True iff `u` and `v` represent the same element (decided by reducing
    /// `u·v⁻¹`, never by comparing reduced forms).
    pub fn equal(&self, u: &Word, v: &Word) -> bool {
        let mut scratch = DehnScratch::default();
        self.equal_with_scratch(u.letters(), v.letters(), &mut scratch)
    }

    /// Allocation-free identity test against caller-owned scratch buffers;
    /// the hot path of ball enumeration.
    pub fn is_identity_with_scratch(&self, w: &[Lit], scratch: &mut DehnScratch) -> bool {
        let DehnScratch { cur, spare } = scratch;
        cur.clear();
        for &l in w {
            push_reduced(cur, l);
        }
        self.reduce_buffer(cur, spare, |_, _, _| {});
        cur.is_empty()
    }

    /// Allocation-free equality test (`u·v⁻¹` reduces to the empty word).
    pub fn equal_with_scratch(&self, u: &[Lit], v: &[Lit], scratch: &mut DehnScratch) -> bool {
        let DehnScratch { cur, spare } = scratch;
        cur.clear();
        for &l in u {
            push_reduced(cur, l);
        }
        for &l in v.iter().rev() {
            push_reduced(cur, l.inverse());
        }
        self.reduce_buffer(cur, spare, |_, _, _| {});
        cur.is_empty()
    }
}

#[inline]
fn push_reduced(buf: &mut Vec<Lit>, l: Lit) {
    if buf.last() == Some(&l.inverse()) {
        buf.pop();
    } else {
        buf.push(l);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        let letters = s
            .chars()
            .map(|c| {
                let lower = c.to_ascii_lowercase();
                Lit::new((lower as u8) - b'a', c.is_ascii_uppercase())
            })
            .collect();
        Word::raw(letters)
    }

    fn pres(src: &str) -> Presentation {
        Presentation::parse(src).unwrap()
    }

    #[test]
    fn relator_itself_reduces_to_identity() {
        let p = pres("generators: a b\nrelators: (a^2 b^2)^3");
        let oracle = DehnOracle::new(&p).unwrap();
        let trace = oracle.dehn_reduce(&w("aabbaabbaabb"));
        assert!(trace.is_identity());
        assert!(!trace.steps.is_empty());
        assert!(oracle.is_identity(&w("aabbaabbaabb")));
    }

    #[test]
    fn ab_power_five_reduces_to_inverse_pair() {
        // In <a,b | (ab)^6>, (ab)^5 = (ab)^-1 = b^-1 a^-1.
        let p = pres("generators: a b\nrelators: (a b)^6");
        let oracle = DehnOracle::new(&p).unwrap();
        let trace = oracle.dehn_reduce(&w("ababababab"));
        assert_eq!(trace.final_word, w("BA"));
        // Each step strictly shrinks the word.
        assert!(trace
            .steps
            .iter()
            .all(|s| s.replacement.len() < s.matched_len));
    }

    #[test]
    fn free_group_words_are_untouched() {
        let oracle = DehnOracle::new(&Presentation::free(2)).unwrap();
        let trace = oracle.dehn_reduce(&w("abA"));
        assert_eq!(trace.final_word, w("abA"));
        assert!(trace.steps.is_empty());
        assert!(!oracle.is_identity(&w("abA")));
        assert!(oracle.is_identity(&Word::empty()));
    }

    #[test]
    fn equality_examples() {
        let p = pres("generators: a b\nrelators: (a b)^6");
        let oracle = DehnOracle::new(&p).unwrap();
        // (ab)^4 = (b^-1 a^-1)^2 since (ab)^6 = 1.
        assert!(oracle.equal(&w("abababab"), &w("BABA")));
        assert!(oracle.equal(&w("ab"), &w("ab")));
        assert!(!oracle.equal(&w("ab"), &w("ba")));
        let free = DehnOracle::new(&Presentation::free(2)).unwrap();
        assert!(!free.equal(&w("ab"), &w("ba")));
    }

    #[test]
    fn single_generator_is_not_identity() {
        let p = pres("generators: a b\nrelators: (a^2 b^2)^3");
        let oracle = DehnOracle::new(&p).unwrap();
        assert!(!oracle.is_identity(&w("a")));
        assert!(!oracle.is_identity(&w("B")));
    }

    #[test]
    fn refuses_non_small_cancellation() {
        let p = pres("generators: a b\nrelators: a^3 b\na^3 b^-1");
        assert!(DehnOracle::new(&p).is_err());
        let forced = DehnOracle::new_forced(&p);
        assert!(!forced.is_sound());
        // Honest reductions still work: the relator itself dies.
        assert!(forced.is_identity(&w("aaab")));
    }

    #[test]
    fn scratch_path_agrees_with_word_path() {
        let p = pres("generators: a b\nrelators: (a b)^6");
        let oracle = DehnOracle::new(&p).unwrap();
        let mut scratch = DehnScratch::default();
        let pairs = [
            ("abababab", "BABA"),
            ("ab", "ba"),
            ("ababab", "BABABA"),
            ("aa", "aa"),
        ];
        for (u, v) in pairs {
            let expect = oracle.equal(&w(u), &w(v));
            let got = oracle.equal_with_scratch(w(u).letters(), w(v).letters(), &mut scratch);
            assert_eq!(expect, got, "{u} vs {v}");
        }
    }

    #[test]
    fn length_never_increases_along_trace() {
        let p = pres("generators: a b\nrelators: (a^2 b^2)^3");
        let oracle = DehnOracle::new(&p).unwrap();
        for word in ["aabbaabbaabb", "aabbaabb", "abab", "aabbaabbaab"] {
            let trace = oracle.dehn_reduce(&w(word));
            assert!(trace.final_word.len() <= w(word).len());
        }
    }

    #[test]
    fn whole_relator_match_replaces_with_empty() {
        // Degenerate: relator of length 1.
        let p = Presentation::new(
            crate::words::Alphabet::standard(2),
            vec![w("a")],
        )
        .unwrap();
        let oracle = DehnOracle::new_forced(&p);
        assert!(oracle.is_identity(&w("a")));
        assert!(oracle.is_identity(&w("aaa")));
        assert!(!oracle.is_identity(&w("b")));
    }
}
