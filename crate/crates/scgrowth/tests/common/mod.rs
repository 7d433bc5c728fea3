//! Naive reference implementations used as independent oracles by the
//! integration tests.
//!
//! Nothing here shares code with the library beyond data conversion: words
//! are plain signed integers (`+k` = generator `k−1`, `-k` = its inverse),
//! equality is an exhaustive shortening search justified only by the
//! half-relator replacement property, and counting is direct enumeration.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use scgrowth::automaton::GeodesicAutomaton;
use scgrowth::words::{Lit, Word};

/// Naive letter: +k is generator k−1, −k its inverse (k ≥ 1).
pub type NLetter = i16;
/// Naive word: plain letter sequence, freely reduced unless stated.
pub type NWord = Vec<NLetter>;

pub fn to_naive(w: &Word) -> NWord {
    w.letters()
        .iter()
        .map(|l| {
            let k = (l.generator() as i16) + 1;
            if l.is_inverse() {
                -k
            } else {
                k
            }
        })
        .collect()
}

pub fn from_naive(w: &NWord) -> Word {
    Word::raw(
        w.iter()
            .map(|&x| Lit::new((x.abs() - 1) as u8, x < 0))
            .collect(),
    )
}

pub fn n_inverse(w: &[NLetter]) -> NWord {
    w.iter().rev().map(|&x| -x).collect()
}

pub fn n_free_reduce(w: &[NLetter]) -> NWord {
    let mut out: NWord = Vec::with_capacity(w.len());
    for &x in w {
        if out.last() == Some(&-x) {
            out.pop();
        } else {
            out.push(x);
        }
    }
    out
}

/// All distinct cyclic rotations of `w` and of its inverse.
pub fn n_symmetrize(relators: &[NWord]) -> Vec<NWord> {
    let mut set: BTreeSet<NWord> = BTreeSet::new();
    for r in relators {
        for base in [r.clone(), n_inverse(r)] {
            for i in 0..base.len() {
                let mut rot = base[i..].to_vec();
                rot.extend_from_slice(&base[..i]);
                set.insert(rot);
            }
        }
    }
    set.into_iter().collect()
}

fn lcp_len(a: &[NLetter], b: &[NLetter]) -> usize {
    a.iter().zip(b.iter()).take_while(|(x, y)| x == y).count()
}

/// Longest common prefix over all pairs of distinct symmetrized elements:
/// the brute-force maximum piece length.
pub fn n_max_piece(sym: &[NWord]) -> usize {
    let mut best = 0;
    for i in 0..sym.len() {
        for j in 0..sym.len() {
            if i != j {
                best = best.max(lcp_len(&sym[i], &sym[j]));
            }
        }
    }
    best
}

/// Longest piece that is a prefix of `e` (maximized over other elements).
pub fn n_max_piece_prefix(sym: &[NWord], e: &[NLetter]) -> usize {
    sym.iter()
        .filter(|s| s.as_slice() != e)
        .map(|s| lcp_len(s, e))
        .max()
        .unwrap_or(0)
}

/// Exhaustive word-problem decider for presentations where every freely
/// reduced identity word contains more than half of a symmetrized relator:
/// repeatedly applying every possible strictly-shortening half-relator
/// replacement reaches the empty word exactly on identity inputs.
pub struct NaiveGroup {
    /// (factor, replacement): factor is a strict majority prefix of a
    /// symmetrized element r = f·g, replacement is g⁻¹ (strictly shorter).
    moves: Vec<(NWord, NWord)>,
    /// Every factor has length ≥ this; words without such a window need
    /// no search at all.
    min_factor: usize,
    /// All `min_factor`-length windows of symmetrized elements — a cheap
    /// pre-filter: a word with no such window admits no move.
    windows: HashSet<NWord>,
}

impl NaiveGroup {
    pub fn new(relators: &[NWord]) -> NaiveGroup {
        let sym = n_symmetrize(relators);
        let mut moves = Vec::new();
        let mut min_factor = usize::MAX;
        for r in &sym {
            let l = r.len();
            for flen in (l / 2 + 1)..=l {
                let f = r[..flen].to_vec();
                let g_inv = n_inverse(&r[flen..]);
                min_factor = min_factor.min(flen);
                moves.push((f, g_inv));
            }
        }
        if moves.is_empty() {
            min_factor = usize::MAX; // free group: no moves ever apply
        }
        let mut windows = HashSet::new();
        if min_factor != usize::MAX {
            for r in &sym {
                // Cyclic windows so rotations are covered uniformly; only
                // plain windows of elements are ever needed, but extra
                // entries merely weaken the pre-filter, never soundness.
                for i in 0..=r.len().saturating_sub(min_factor) {
                    windows.insert(r[i..i + min_factor].to_vec());
                }
            }
        }
        NaiveGroup {
            moves,
            min_factor,
            windows,
        }
    }

    fn has_candidate_window(&self, w: &[NLetter]) -> bool {
        if self.min_factor == usize::MAX || w.len() < self.min_factor {
            return false;
        }
        w.windows(self.min_factor).any(|win| self.windows.contains(win))
    }

    /// True iff `w` represents the identity. Breadth-first closure over
    /// all strictly-shortening replacements; sound because every move is a
    /// relator consequence, complete because identity words always admit
    /// one such move.
    pub fn is_identity(&self, w: &[NLetter]) -> bool {
        let start = n_free_reduce(w);
        if start.is_empty() {
            return true;
        }
        let mut seen: HashSet<NWord> = HashSet::from([start.clone()]);
        let mut queue: VecDeque<NWord> = VecDeque::from([start]);
        while let Some(cur) = queue.pop_front() {
            if !self.has_candidate_window(&cur) {
                continue;
            }
            for (f, rep) in &self.moves {
                if f.len() > cur.len() {
                    continue;
                }
                for start in 0..=(cur.len() - f.len()) {
                    if &cur[start..start + f.len()] != f.as_slice() {
                        continue;
                    }
                    let mut next: NWord = Vec::with_capacity(cur.len());
                    next.extend_from_slice(&cur[..start]);
                    next.extend_from_slice(rep);
                    next.extend_from_slice(&cur[start + f.len()..]);
                    let next = n_free_reduce(&next);
                    if next.is_empty() {
                        return true;
                    }
                    assert!(
                        next.len() < cur.len(),
                        "every naive move must strictly shorten"
                    );
                    if seen.insert(next.clone()) {
                        queue.push_back(next);
                    }
                }
            }
        }
        false
    }

    pub fn equal(&self, u: &[NLetter], v: &[NLetter]) -> bool {
        let mut w = u.to_vec();
        w.extend(n_inverse(v));
        self.is_identity(&w)
    }
}

/// Shortlex rank with the order a < a⁻¹ < b < b⁻¹ < … used for canonical
/// representatives.
fn letter_rank(x: NLetter) -> u8 {
    let idx = (x.abs() - 1) as u8;
    2 * idx + u8::from(x < 0)
}

fn shortlex_key(w: &[NLetter]) -> Vec<u8> {
    w.iter().map(|&x| letter_rank(x)).collect()
}

/// Exact ball data produced with no machinery beyond [`NaiveGroup`]:
/// canonical shortlex representatives per sphere.
pub struct NaiveBall {
    pub levels: Vec<Vec<NWord>>,
    pub sphere_counts: Vec<u64>,
    pub ball_counts: Vec<u64>,
}

/// Abelianized image (sum of generator exponents), a cheap sound invariant
/// used only to bucket candidate comparisons.
fn abelianize(w: &[NLetter], gens: usize) -> Vec<i64> {
    let mut v = vec![0i64; gens];
    for &x in w {
        v[(x.abs() - 1) as usize] += if x > 0 { 1 } else { -1 };
    }
    v
}

/// Bucket key: abelianization reduced so that words equal in the group
/// share a key. With every relator abelianizing to (t, t, …, t) the
/// difference of coordinates is invariant and the first coordinate is
/// invariant modulo g = gcd of the t's; with no relators the image itself
/// is the key.
fn bucket_key(w: &[NLetter], gens: usize, diag_gcd: Option<i64>) -> Vec<i64> {
    let ab = abelianize(w, gens);
    match diag_gcd {
        None => ab,
        Some(g) => {
            let mut key: Vec<i64> = (1..gens).map(|i| ab[i] - ab[0]).collect();
            key.push(ab[0].rem_euclid(g));
            key
        }
    }
}

/// Builds the exact ball of `radius` by breadth-first search, deciding
/// every collapse with the exhaustive oracle. Requires even relator
/// lengths (the Cayley graph is then bipartite, so a candidate of free
/// length n+1 lies at distance n+1 or n−1, never n).
pub fn naive_ball(relators: &[NWord], gens: usize, radius: usize) -> NaiveBall {
    for r in relators {
        assert!(r.len() % 2 == 0, "naive ball builder needs even relators");
        assert!(!r.is_empty());
    }
    // Diagonal abelianization: every relator must send all generators to
    // the same exponent sum for the refined bucket key; otherwise fall
    // back to the full-image key only when there are no relators.
    let diag_gcd = if relators.is_empty() {
        None
    } else {
        let mut g: i64 = 0;
        for r in relators {
            let ab = abelianize(r, gens);
            assert!(
                ab.iter().all(|&x| x == ab[0]),
                "bucket key assumes diagonal relator abelianization"
            );
            g = num_integer::gcd(g, ab[0]);
        }
        // All relators abelianizing to zero (commutator-like) leave the
        // full abelianized image invariant, same as having no relators.
        if g == 0 {
            None
        } else {
            Some(g)
        }
    };
    let group = NaiveGroup::new(relators);

    let mut levels: Vec<Vec<NWord>> = vec![vec![Vec::new()]];
    for n in 0..radius {
        // Candidates: extend each representative by each non-cancelling
        // letter, in shortlex order so the first accepted word in each
        // class is the canonical representative.
        let mut candidates: Vec<NWord> = Vec::new();
        for u in &levels[n] {
            for code in 0..(2 * gens) as u8 {
                let idx = (code / 2) as i16 + 1;
                let x: NLetter = if code % 2 == 0 { idx } else { -idx };
                if u.last() == Some(&-x) {
                    continue;
                }
                let mut c = u.clone();
                c.push(x);
                candidates.push(c);
            }
        }
        candidates.sort_by(|a, b| shortlex_key(a).cmp(&shortlex_key(b)));

        let mut prev_buckets: HashMap<Vec<i64>, Vec<usize>> = HashMap::new();
        if n >= 1 {
            for (i, w) in levels[n - 1].iter().enumerate() {
                prev_buckets
                    .entry(bucket_key(w, gens, diag_gcd))
                    .or_default()
                    .push(i);
            }
        }
        let mut new_level: Vec<NWord> = Vec::new();
        let mut new_buckets: HashMap<Vec<i64>, Vec<usize>> = HashMap::new();
        'cand: for c in candidates {
            let key = bucket_key(&c, gens, diag_gcd);
            if n >= 1 {
                if let Some(bucket) = prev_buckets.get(&key) {
                    for &i in bucket {
                        if group.equal(&c, &levels[n - 1][i]) {
                            continue 'cand;
                        }
                    }
                }
            }
            if let Some(bucket) = new_buckets.get(&key) {
                for &i in bucket {
                    if group.equal(&c, &new_level[i]) {
                        continue 'cand;
                    }
                }
            }
            new_buckets.entry(key).or_default().push(new_level.len());
            new_level.push(c);
        }
        levels.push(new_level);
    }

    let sphere_counts: Vec<u64> = levels.iter().map(|l| l.len() as u64).collect();
    let mut ball_counts = Vec::with_capacity(sphere_counts.len());
    let mut total = 0u64;
    for &s in &sphere_counts {
        total += s;
        ball_counts.push(total);
    }
    NaiveBall {
        levels,
        sphere_counts,
        ball_counts,
    }
}

/// Number of length-`n` paths from the initial state whose label sequence
/// avoids every forbidden factor, for n = 0..=max_len, by direct
/// depth-first enumeration (multiplicities included).
pub fn naive_avoiding_path_counts(
    a: &GeodesicAutomaton,
    forbidden: &[Vec<usize>],
    max_len: usize,
) -> Vec<u64> {
    let mut by_state: HashMap<usize, Vec<(usize, usize)>> = HashMap::new();
    for &(from, label, to) in a.edges() {
        by_state.entry(from).or_default().push((label, to));
    }
    let mut counts = vec![0u64; max_len + 1];
    let mut labels: Vec<usize> = Vec::new();

    fn walk(
        state: usize,
        labels: &mut Vec<usize>,
        by_state: &HashMap<usize, Vec<(usize, usize)>>,
        forbidden: &[Vec<usize>],
        max_len: usize,
        counts: &mut Vec<u64>,
    ) {
        // Prefix already checked clean when we arrive here.
        counts[labels.len()] += 1;
        if labels.len() == max_len {
            return;
        }
        if let Some(outs) = by_state.get(&state) {
            for &(label, to) in outs {
                labels.push(label);
                // Only factors ending at the new letter can be new.
                let clean = !forbidden.iter().any(|f| {
                    f.len() <= labels.len() && labels[labels.len() - f.len()..] == f[..]
                });
                if clean {
                    walk(to, labels, by_state, forbidden, max_len, counts);
                }
                labels.pop();
            }
        }
    }

    walk(
        a.initial(),
        &mut labels,
        &by_state,
        forbidden,
        max_len,
        &mut counts,
    );
    counts
}
