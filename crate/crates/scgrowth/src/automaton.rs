//! Geodesic normal-form automata: finite word acceptors whose length-n path
//! counts reproduce sphere sizes, so the Perron eigenvalue of the adjacency
//! matrix is the growth rate of the group.
//!
//! There is no effective general construction of such an acceptor from a
//! presentation alone, so automata are built from finite ball data with a
//! lookahead `ρ` and accepted only when [`validate_automaton`] confirms the
//! path counts against independently enumerated spheres through the
//! available radius. A failed validation means the lookahead or the radius
//! was too small — the remedy is to increase them, never to trust the
//! automaton.

use std::collections::HashMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::cayley::GroupBall;
use crate::matrix::Matrix;
use crate::words::{Alphabet, AlphabetError, Lit, Word};

#[derive(Debug, Error)]
pub enum AutomatonError {
    #[error("ball of radius {radius} is too small for lookahead {rho}: radius ≥ 2ρ + 2 required")]
    BallTooSmall { radius: usize, rho: usize },
    #[error(
        "ball of radius {radius} cannot close the state set for lookahead {rho}: a state class \
         has no member shallow enough to determine its out-edges; increase the radius"
    )]
    ClosureFailure { radius: usize, rho: usize },
    #[error("automaton file, line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Alphabet(#[from] AlphabetError),
}

/// A finite word acceptor over the label alphabet (generators and their
/// inverses). Every state is accepting; the accepted language is the set of
/// label sequences of paths from the initial state.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeodesicAutomaton {
    num_states: usize,
    initial: usize,
    labels: usize,
    /// Sorted (from, label, to) triples; multiplicity allowed.
    edges: Vec<(usize, usize, usize)>,
    deterministic: bool,
}

impl GeodesicAutomaton {
    /// Builds from an edge list, computing the determinism flag and sorting
    /// edges. States must already be 0-based and dense; unreachable states
    /// are the caller's responsibility.
    pub fn new(
        num_states: usize,
        initial: usize,
        labels: usize,
        mut edges: Vec<(usize, usize, usize)>,
    ) -> Self {
        assert!(initial < num_states.max(1), "initial state out of range");
        edges.sort_unstable();
        let mut deterministic = true;
        for pair in edges.windows(2) {
            if pair[0].0 == pair[1].0 && pair[0].1 == pair[1].1 {
                deterministic = false;
                break;
            }
        }
        for &(f, l, t) in &edges {
            assert!(f < num_states && t < num_states, "edge endpoint out of range");
            assert!(l < labels, "edge label out of range");
        }
        GeodesicAutomaton {
            num_states,
            initial,
            labels,
            edges,
            deterministic,
        }
    }

    pub fn num_states(&self) -> usize {
        self.num_states
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn label_count(&self) -> usize {
        self.labels
    }

    pub fn edges(&self) -> &[(usize, usize, usize)] {
        &self.edges
    }

    pub fn is_deterministic(&self) -> bool {
        self.deterministic
    }

    /// Transition map: (state, label) → targets.
    pub fn transitions(&self) -> HashMap<(usize, usize), Vec<usize>> {
        let mut map: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
        for &(f, l, t) in &self.edges {
            map.entry((f, l)).or_default().push(t);
        }
        map
    }

    /// Number of edges i→j, the growth-carrying matrix of the acceptor.
    pub fn adjacency_matrix(&self) -> Matrix<BigInt> {
        let mut m = Matrix::zero(self.num_states);
        for &(f, _, t) in &self.edges {
            m[(f, t)] += BigInt::one();
        }
        m
    }

    /// Path counts from the initial state for every length 0..=n. The count
    /// at length L equals the sum of the initial row of M^L.
    pub fn path_counts(&self, n: usize) -> Vec<BigInt> {
        let m = self.adjacency_matrix();
        let mut v: Vec<BigInt> = vec![BigInt::zero(); self.num_states];
        v[self.initial] = BigInt::one();
        let mut counts = Vec::with_capacity(n + 1);
        counts.push(BigInt::one());
        for _ in 0..n {
            v = m.vec_mul(&v);
            counts.push(v.iter().sum());
        }
        counts
    }

    /// Textual interchange form: a header `states s initial i labels k`,
    /// then one `from label to` line per edge. States are numbered 1..s in
    /// the file (0-based internally); labels print as generator names with
    /// an optional `^-1`.
    pub fn to_interchange(&self, alphabet: &Alphabet) -> String {
        assert_eq!(
            self.labels,
            alphabet.label_count(),
            "alphabet does not match the automaton's label count"
        );
        let mut out = String::new();
        writeln!(
            out,
            "states {} initial {} labels {}",
            self.num_states,
            self.initial + 1,
            self.labels
        )
        .unwrap();
        for &(f, l, t) in &self.edges {
            writeln!(out, "{} {} {}", f + 1, alphabet.label_name(Lit(l as u8)), t + 1).unwrap();
        }
        out
    }

    /// GraphViz DOT rendering for visual inspection.
    pub fn to_dot(&self, alphabet: &Alphabet) -> String {
        let mut out = String::from("digraph automaton {\n  rankdir=LR;\n");
        for s in 0..self.num_states {
            let shape = if s == self.initial { "doublecircle" } else { "circle" };
            writeln!(out, "  s{} [shape={shape}, label=\"{}\"];", s, s + 1).unwrap();
        }
        for &(f, l, t) in &self.edges {
            writeln!(
                out,
                "  s{f} -> s{t} [label=\"{}\"];",
                alphabet.label_name(Lit(l as u8))
            )
            .unwrap();
        }
        out.push_str("}\n");
        out
    }
}

/// Parses the interchange format. The alphabet is reconstructed from the
/// label names appearing on edges (`x` and `x^-1` map to one generator) and
/// must account for the header's label count.
pub fn from_interchange(text: &str) -> Result<(GeodesicAutomaton, Alphabet), AutomatonError> {
    let mut lines = text.lines().enumerate();
    let (header_no, header) = lines
        .next()
        .ok_or_else(|| AutomatonError::Parse {
            line: 1,
            message: "empty file".into(),
        })?;
    let toks: Vec<&str> = header.split_whitespace().collect();
    let parse_usize = |s: &str, what: &str| -> Result<usize, AutomatonError> {
        s.parse().map_err(|_| AutomatonError::Parse {
            line: header_no + 1,
            message: format!("bad {what}: {s:?}"),
        })
    };
    if toks.len() != 6 || toks[0] != "states" || toks[2] != "initial" || toks[4] != "labels" {
        return Err(AutomatonError::Parse {
            line: header_no + 1,
            message: "expected header \"states s initial i labels k\"".into(),
        });
    }
    let num_states = parse_usize(toks[1], "state count")?;
    let initial1 = parse_usize(toks[3], "initial state")?;
    let labels = parse_usize(toks[5], "label count")?;
    if initial1 == 0 || initial1 > num_states.max(1) {
        return Err(AutomatonError::Parse {
            line: header_no + 1,
            message: format!("initial state {initial1} out of range 1..={num_states}"),
        });
    }

    // First pass: collect generator names in order of first appearance.
    let mut names: Vec<String> = Vec::new();
    let mut raw_edges: Vec<(usize, usize, String, usize)> = Vec::new();
    for (no, line) in lines {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.len() != 3 {
            return Err(AutomatonError::Parse {
                line: no + 1,
                message: "expected edge line \"from label to\"".into(),
            });
        }
        let err = |what: &str, s: &str| AutomatonError::Parse {
            line: no + 1,
            message: format!("bad {what}: {s:?}"),
        };
        let from: usize = toks[0].parse().map_err(|_| err("state", toks[0]))?;
        let to: usize = toks[2].parse().map_err(|_| err("state", toks[2]))?;
        if from == 0 || from > num_states || to == 0 || to > num_states {
            return Err(err("state (out of range)", line));
        }
        let base = toks[1].strip_suffix("^-1").unwrap_or(toks[1]);
        if !names.iter().any(|n| n == base) {
            names.push(base.to_string());
        }
        raw_edges.push((no + 1, from - 1, toks[1].to_string(), to - 1));
    }
    let alphabet = Alphabet::new(names)?;
    if alphabet.label_count() != labels {
        return Err(AutomatonError::Parse {
            line: header_no + 1,
            message: format!(
                "header declares {labels} labels but edges use {} distinct generators \
                 ({} labels)",
                alphabet.generator_count(),
                alphabet.label_count()
            ),
        });
    }
    let mut edges = Vec::with_capacity(raw_edges.len());
    for (line, from, label, to) in raw_edges {
        let inverse = label.ends_with("^-1");
        let base = label.strip_suffix("^-1").unwrap_or(&label);
        let g = alphabet.generator(base).ok_or_else(|| AutomatonError::Parse {
            line,
            message: format!("unknown label {label:?}"),
        })?;
        edges.push((from, Lit::new(g, inverse).index(), to));
    }
    Ok((
        GeodesicAutomaton::new(num_states, initial1 - 1, labels, edges),
        alphabet,
    ))
}

/// The acceptor of freely reduced words: an initial state plus one state
/// per last letter; edges forbid immediate inverses. For g generators this
/// has 2g+1 states and 2g·(2g) − 2g·1 + … — concretely 2g + 2g(2g−1) edges.
pub fn free_group_automaton(generators: usize) -> GeodesicAutomaton {
    assert!(generators >= 1, "at least one generator required");
    let k = 2 * generators;
    let mut edges = Vec::with_capacity(k + k * (k - 1));
    for l in 0..k {
        edges.push((0, l, 1 + l));
    }
    for l in 0..k {
        for m in 0..k {
            if m != l ^ 1 {
                edges.push((1 + l, m, 1 + m));
            }
        }
    }
    GeodesicAutomaton::new(k + 1, 0, k, edges)
}

/// Builds an acceptor for the canonical (shortlex-least geodesic) words of
/// a ball: states are classes of elements with identical ρ-lookahead
/// behaviour — two elements are merged iff exactly the same label sequences
/// of length ≤ ρ extend their canonical words to canonical words. The empty
/// word keeps its own state. Out-edges of a class follow its shortlex-least
/// member. The construction is a finite-data heuristic: only
/// [`validate_automaton`] makes the result trustworthy.
pub fn build_cone_automaton(
    ball: &GroupBall,
    rho: usize,
) -> Result<GeodesicAutomaton, AutomatonError> {
    let radius = ball.radius();
    if radius < 2 * rho + 2 {
        return Err(AutomatonError::BallTooSmall { radius, rho });
    }
    let depth = radius - rho;
    let index = ball.build_index();
    let labels = ball.order().label_count();
    let label_list: Vec<Lit> = ball.order().labels().to_vec();

    // Signature of one element: every canonical extension sequence of
    // length 1..=ρ, found by DFS — canonical words are prefix-closed, so a
    // non-canonical extension never recovers.
    let signature = |w: &Word| -> Vec<Vec<u8>> {
        let mut found: Vec<Vec<u8>> = Vec::new();
        let mut stack: Vec<(Word, Vec<u8>)> = vec![(w.clone(), Vec::new())];
        while let Some((cur, path)) = stack.pop() {
            if path.len() == rho {
                continue;
            }
            for &x in &label_list {
                if cur.letters().last() == Some(&x.inverse()) {
                    continue;
                }
                let mut letters = Vec::with_capacity(cur.len() + 1);
                letters.extend_from_slice(cur.letters());
                letters.push(x);
                let ext = Word::raw(letters);
                if index.contains_key(&ext) {
                    let mut p = path.clone();
                    p.push(x.0);
                    found.push(p.clone());
                    stack.push((ext, p));
                }
            }
        }
        found.sort();
        found
    };

    // Class id per signature; the empty word is forced into its own class
    // via a reserved marker so the initial state never merges. Shortlex
    // level order makes the first member seen the least of its class, and
    // the least member is always among the shortest.
    let mut class_of_sig: HashMap<Vec<Vec<u8>>, usize> = HashMap::new();
    let mut least_member: Vec<(usize, Word)> = Vec::new();
    let mut class_of_elem: HashMap<Word, usize> = HashMap::new();
    for n in 0..=depth {
        for w in ball.level(n) {
            let mut sig = signature(w);
            if w.is_empty() {
                sig.insert(0, vec![u8::MAX]);
            }
            let next = class_of_sig.len();
            let id = *class_of_sig.entry(sig).or_insert(next);
            if id == least_member.len() {
                least_member.push((n, w.clone()));
            }
            class_of_elem.insert(w.clone(), id);
        }
    }

    // Walk classes breadth-first from the class of the empty word, taking
    // each class's out-edges from its least member. Only reachable classes
    // become states; a reachable class whose members all sit at the full
    // depth cannot reveal its successors within this ball.
    let initial = class_of_elem[&Word::empty()];
    let mut state_of_class: HashMap<usize, usize> = HashMap::from([(initial, 0)]);
    let mut queue = std::collections::VecDeque::from([initial]);
    let mut edges: Vec<(usize, usize, usize)> = Vec::new();
    while let Some(class) = queue.pop_front() {
        let (n, w) = &least_member[class];
        if *n >= depth {
            return Err(AutomatonError::ClosureFailure { radius, rho });
        }
        let from = state_of_class[&class];
        for &x in &label_list {
            if w.letters().last() == Some(&x.inverse()) {
                continue;
            }
            let mut letters = Vec::with_capacity(w.len() + 1);
            letters.extend_from_slice(w.letters());
            letters.push(x);
            let ext = Word::raw(letters);
            if let Some(&target) = class_of_elem.get(&ext) {
                let next = state_of_class.len();
                let to = *state_of_class.entry(target).or_insert(next);
                if to == next {
                    queue.push_back(target);
                }
                edges.push((from, x.index(), to));
            }
        }
    }
    Ok(GeodesicAutomaton::new(state_of_class.len(), 0, labels, edges))
}

/// Result of checking an automaton's path counts against a ball.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationVerdict {
    /// First n with path_count(n) ≠ #S(n), with both values.
    pub first_mismatch: Option<(usize, BigInt, BigInt)>,
    /// Largest n checked (the ball radius).
    pub checked_radius: usize,
}

impl ValidationVerdict {
    pub fn passed(&self) -> bool {
        self.first_mismatch.is_none()
    }
}

/// Certifies an automaton against exact sphere counts: passes iff the
/// number of length-n paths from the initial state equals #S(n) for every
/// n up to the ball radius.
pub fn validate_automaton(a: &GeodesicAutomaton, ball: &GroupBall) -> ValidationVerdict {
    let counts = a.path_counts(ball.radius());
    for (n, count) in counts.iter().enumerate() {
        let expected = BigInt::from(ball.sphere_counts()[n]);
        if *count != expected {
            return ValidationVerdict {
                first_mismatch: Some((n, expected, count.clone())),
                checked_radius: ball.radius(),
            };
        }
    }
    ValidationVerdict {
        first_mismatch: None,
        checked_radius: ball.radius(),
    }
}
