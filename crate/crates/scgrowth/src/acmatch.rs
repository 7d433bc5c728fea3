//! Multi-pattern matching over letter sequences: a dense-table automaton in
//! the Aho–Corasick style.
//!
//! Two consumers share this engine. The word-problem reducer feeds it the
//! "long prefix" patterns of the symmetrized relators and scans candidate
//! words for replacement sites. The forbidden-factor module reuses the
//! same structure with the outputs interpreted as *poison*: a state whose
//! fail chain contains a completed pattern is dead, and the live states
//! form the factor-avoiding automaton.
//!
//! The transition table is completed (goto-closure over fail links) at
//! build time, so stepping is a single array read per letter.

use crate::words::Lit;

const NONE: u32 = u32::MAX;

/// Dense multi-pattern matching automaton over an alphabet of `k` letter
/// codes (a `Lit` with index `< k`).
#[derive(Debug, Clone)]
pub struct PatternMatcher {
    k: usize,
    /// Completed transition table, `state * k + letter`.
    next: Vec<u32>,
    /// Pattern ids completed exactly at this state (not via fail links).
    out: Vec<Vec<u32>>,
    /// Nearest proper fail-ancestor with nonempty `out`, or NONE.
    out_link: Vec<u32>,
    /// True iff some pattern ends at this state or on its fail chain.
    terminal: Vec<bool>,
    pattern_lens: Vec<usize>,
}

impl PatternMatcher {
    /// Build from letter-code patterns. Patterns must be nonempty and use
    /// codes `< k`. Duplicate patterns share a state and both ids report.
    pub fn new(k: usize, patterns: &[Vec<Lit>]) -> PatternMatcher {
        assert!(k > 0, "alphabet must be nonempty");
        // Trie construction with per-state child arrays.
        let mut children: Vec<Vec<u32>> = vec![vec![NONE; k]];
        let mut out: Vec<Vec<u32>> = vec![Vec::new()];
        let mut pattern_lens = Vec::with_capacity(patterns.len());
        for (id, pat) in patterns.iter().enumerate() {
            assert!(!pat.is_empty(), "patterns must be nonempty");
            pattern_lens.push(pat.len());
            let mut state = 0usize;
            for &lit in pat {
                let c = lit.index();
                assert!(c < k, "letter code out of range for the alphabet");
                if children[state][c] == NONE {
                    children[state][c] = children.len() as u32;
                    children.push(vec![NONE; k]);
                    out.push(Vec::new());
                }
                state = children[state][c] as usize;
            }
            out[state].push(id as u32);
        }
        let n = children.len();
        let mut fail = vec![0u32; n];
        let mut next = vec![0u32; n * k];
        let mut out_link = vec![NONE; n];
        let mut terminal = vec![false; n];
        terminal[0] = !out[0].is_empty();
        // Breadth-first completion.
        let mut queue = std::collections::VecDeque::new();
        for c in 0..k {
            let child = children[0][c];
            if child == NONE {
                next[c] = 0;
            } else {
                next[c] = child;
                fail[child as usize] = 0;
                queue.push_back(child as usize);
            }
        }
        while let Some(s) = queue.pop_front() {
            let f = fail[s] as usize;
            out_link[s] = if !out[f].is_empty() {
                f as u32
            } else {
                out_link[f]
            };
            terminal[s] = !out[s].is_empty() || terminal[f];
            for c in 0..k {
                let child = children[s][c];
                if child == NONE {
                    next[s * k + c] = next[f * k + c];
                } else {
                    next[s * k + c] = child;
                    fail[child as usize] = next[f * k + c];
                    queue.push_back(child as usize);
                }
            }
        }
        PatternMatcher {
            k,
            next,
            out,
            out_link,
            terminal,
            pattern_lens,
        }
    }

    pub fn alphabet_width(&self) -> usize {
        self.k
    }

    pub fn num_states(&self) -> usize {
        self.terminal.len()
    }

    pub fn num_patterns(&self) -> usize {
        self.pattern_lens.len()
    }

    pub fn pattern_len(&self, id: u32) -> usize {
        self.pattern_lens[id as usize]
    }

    pub const START: u32 = 0;

    #[inline]
    pub fn step(&self, state: u32, lit: Lit) -> u32 {
        self.next[state as usize * self.k + lit.index()]
    }

    /// True iff some pattern is a suffix of the text consumed so far.
    #[inline]
    pub fn is_terminal(&self, state: u32) -> bool {
        self.terminal[state as usize]
    }

    /// All pattern ids that end at the current position (walking the output
    /// chain), invoked as `for id in matcher.matches_at(state)`.
    pub fn matches_at(&self, state: u32) -> MatchesAt<'_> {
        MatchesAt {
            m: self,
            state: if self.out[state as usize].is_empty() {
                self.out_link[state as usize]
            } else {
                state
            },
            idx: 0,
        }
    }

    /// Every `(start, pattern id)` occurrence in `text`, in scan order.
    pub fn find_all(&self, text: &[Lit]) -> Vec<(usize, u32)> {
        let mut hits = Vec::new();
        let mut state = Self::START;
        for (pos, &lit) in text.iter().enumerate() {
            state = self.step(state, lit);
            for id in self.matches_at(state) {
                let len = self.pattern_lens[id as usize];
                hits.push((pos + 1 - len, id));
            }
        }
        hits
    }
}

pub struct MatchesAt<'a> {
    m: &'a PatternMatcher,
    state: u32,
    idx: usize,
}

impl Iterator for MatchesAt<'_> {
    type Item = u32;

    fn next(&mut self) -> Option<u32> {
        while self.state != NONE {
            let outs = &self.m.out[self.state as usize];
            if self.idx < outs.len() {
                self.idx += 1;
                return Some(outs[self.idx - 1]);
            }
            self.state = self.m.out_link[self.state as usize];
            self.idx = 0;
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lits(s: &str) -> Vec<Lit> {
        s.chars()
            .map(|c| {
                let lower = c.to_ascii_lowercase();
                Lit::new((lower as u8) - b'a', c.is_ascii_uppercase())
            })
            .collect()
    }

    #[test]
    fn finds_overlapping_occurrences() {
        let m = PatternMatcher::new(4, &[lits("aba"), lits("ba")]);
        let hits = m.find_all(&lits("ababa"));
        // aba at 0 and 2; ba at 1 and 3.
        assert!(hits.contains(&(0, 0)));
        assert!(hits.contains(&(2, 0)));
        assert!(hits.contains(&(1, 1)));
        assert!(hits.contains(&(3, 1)));
        assert_eq!(hits.len(), 4);
    }

    #[test]
    fn suffix_pattern_reports_via_output_chain() {
        // "abab" contains "bab" ending at position 3, found through the
        // fail chain of the longer pattern "abab".
        let m = PatternMatcher::new(4, &[lits("abab"), lits("bab")]);
        let hits = m.find_all(&lits("abab"));
        assert!(hits.contains(&(0, 0)));
        assert!(hits.contains(&(1, 1)));
    }

    #[test]
    fn terminality_is_sticky_along_fail_chain() {
        let m = PatternMatcher::new(4, &[lits("bb")]);
        let mut state = PatternMatcher::START;
        for &l in &lits("abb") {
            state = m.step(state, l);
        }
        assert!(m.is_terminal(state));
        // One more letter: "abba" — current suffix "a" is clean again.
        state = m.step(state, lits("a")[0]);
        assert!(!m.is_terminal(state));
    }

    #[test]
    fn distinguishes_inverse_letters() {
        // Pattern aB must not match ab.
        let m = PatternMatcher::new(4, &[lits("aB")]);
        assert!(m.find_all(&lits("ab")).is_empty());
        assert_eq!(m.find_all(&lits("aB")), vec![(0, 0)]);
    }

    #[test]
    fn duplicate_patterns_both_report() {
        let m = PatternMatcher::new(4, &[lits("ab"), lits("ab")]);
        let hits = m.find_all(&lits("ab"));
        assert_eq!(hits.len(), 2);
    }
}
