//! Exact Cayley-ball enumeration, distances, geodesic tests, and growth
//! estimates.
//!
//! The ball `B(n)` is stored as one canonical representative per group
//! element — the shortlex-least geodesic word — grouped by length. Levels
//! are built breadth-first: candidates at level `n+1` are the stored level-`n`
//! representatives extended by one non-cancelling letter, generated in
//! shortlex order (sorted parents × rank-ordered labels), so the first
//! candidate accepted for an element is automatically its shortlex-least
//! geodesic (least geodesics have least-geodesic prefixes: replacing a
//! proper prefix of a geodesic by the canonical representative of the same
//! element can never cancel — cancellation would shorten the word below
//! geodesic length — so a smaller prefix would produce a smaller word).
//!
//! Deduplication is the dominant cost. Candidates are bucketed by a sound
//! invariant — the class-2 nilpotent residue of [`crate::nilpotent`] — and
//! only words in the same bucket are ever compared through the Dehn oracle.
//! A candidate of length `n+1` can only collide with elements at distance
//! `n−1`, `n`, or `n+1` (triangle inequality from its parent); when every
//! relator has even length the Cayley graph is bipartite and the distance-`n`
//! comparison is skipped entirely. Buckets are processed independently (in
//! parallel when asked) and merged by a global shortlex sort, so results are
//! identical for every worker count.

use std::collections::{HashMap, HashSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use thiserror::Error;

use crate::dehn::{DehnError, DehnOracle, DehnScratch};
use crate::nilpotent::NilpotentKeyer;
use crate::presentation::{symmetrize, Presentation};
use crate::words::{ShortlexOrder, Word};

#[derive(Debug, Error)]
pub enum CayleyError {
    #[error("presentation fails C'(1/6); ball enumeration refused (pass force to proceed)")]
    NotSmallCancellation,
    #[error(
        "element budget of {budget} exceeded at radius {reached}; partial ball retained \
         through radius {reached}"
    )]
    BudgetExceeded {
        budget: usize,
        reached: usize,
        partial: Box<GroupBall>,
    },
    #[error("relators of the first presentation are not a subset of the second")]
    NotAQuotient,
}

impl From<DehnError> for CayleyError {
    fn from(_: DehnError) -> Self {
        CayleyError::NotSmallCancellation
    }
}

/// Enumeration controls. `workers == 0` uses the ambient thread pool;
/// any positive count builds a dedicated pool — results are identical
/// either way. `order: None` means the standard order a < a⁻¹ < b < b⁻¹….
#[derive(Debug, Clone)]
pub struct BallOptions {
    pub budget: usize,
    pub force_unsound: bool,
    pub workers: usize,
    pub order: Option<ShortlexOrder>,
}

impl Default for BallOptions {
    fn default() -> Self {
        BallOptions {
            budget: 5_000_000,
            force_unsound: false,
            workers: 0,
            order: None,
        }
    }
}

/// Exact ball data: canonical representatives per level plus counts.
#[derive(Debug, Clone)]
pub struct GroupBall {
    radius: usize,
    levels: Vec<Vec<Word>>,
    sphere_counts: Vec<u64>,
    ball_counts: Vec<u64>,
    order: ShortlexOrder,
    sound: bool,
    complete: bool,
}

impl GroupBall {
    pub fn radius(&self) -> usize {
        self.radius
    }

    /// Canonical representatives of the sphere S(n), shortlex-sorted.
    pub fn level(&self, n: usize) -> &[Word] {
        &self.levels[n]
    }

    pub fn levels(&self) -> &[Vec<Word>] {
        &self.levels
    }

    pub fn sphere_counts(&self) -> &[u64] {
        &self.sphere_counts
    }

    pub fn ball_counts(&self) -> &[u64] {
        &self.ball_counts
    }

    pub fn order(&self) -> &ShortlexOrder {
        &self.order
    }

    /// False when the equality oracle was forced over a non-C'(1/6)
    /// presentation: counts are then upper bounds (some listed
    /// representatives may coincide in the group).
    pub fn is_sound(&self) -> bool {
        self.sound
    }

    /// False when the budget stopped enumeration before the requested
    /// radius; data through `radius()` is still exact.
    pub fn is_complete(&self) -> bool {
        self.complete
    }

    /// Hash index over all representatives: word → (level, position).
    pub fn build_index(&self) -> HashMap<&Word, (usize, usize)> {
        let mut map = HashMap::new();
        for (n, level) in self.levels.iter().enumerate() {
            for (i, w) in level.iter().enumerate() {
                map.insert(w, (n, i));
            }
        }
        map
    }
}

/// Presentation bundled with its precompiled oracle and bucket keyer.
pub struct GroupContext {
    presentation: Presentation,
    oracle: DehnOracle,
    keyer: NilpotentKeyer,
    bipartite: bool,
}

impl GroupContext {
    pub fn new(presentation: Presentation, force_unsound: bool) -> Result<Self, CayleyError> {
        let oracle = if force_unsound {
            DehnOracle::new_forced(&presentation)
        } else {
            DehnOracle::new(&presentation)?
        };
        let keyer = NilpotentKeyer::new(&presentation);
        let bipartite = presentation.relators().iter().all(|r| r.len() % 2 == 0);
        Ok(GroupContext {
            presentation,
            oracle,
            keyer,
            bipartite,
        })
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn oracle(&self) -> &DehnOracle {
        &self.oracle
    }

    pub fn enumerate_ball(
        &self,
        radius: usize,
        opts: &BallOptions,
    ) -> Result<GroupBall, CayleyError> {
        self.enumerate_core(radius, opts, None).map(|(ball, _)| ball)
    }

    /// Distance from the identity: the level at which an element equal to
    /// `w` appears. Enumerates lazily and stops at the level where the
    /// (Dehn-shortened) word is located.
    pub fn distance(&self, w: &Word, opts: &BallOptions) -> Result<usize, CayleyError> {
        let shortened = self.oracle.dehn_reduce(w).final_word;
        let (_, found) = self.enumerate_core(shortened.len(), opts, Some(&shortened))?;
        Ok(found.expect("a word is always located within a ball of its own length"))
    }

    /// True iff `w` is freely reduced and no shorter word equals it.
    pub fn is_geodesic(&self, w: &Word, opts: &BallOptions) -> Result<bool, CayleyError> {
        if !w.is_freely_reduced() {
            return Ok(false);
        }
        Ok(self.distance(w, opts)? == w.len())
    }

    /// Breadth-first enumeration. When `target` is set (freely reduced),
    /// also reports the level at which an element equal to it appears,
    /// stopping early.
    fn enumerate_core(
        &self,
        radius: usize,
        opts: &BallOptions,
        target: Option<&Word>,
    ) -> Result<(GroupBall, Option<usize>), CayleyError> {
        let order = opts
            .order
            .clone()
            .unwrap_or_else(|| ShortlexOrder::standard(self.presentation.alphabet().label_count()));
        let free = self.presentation.is_free();
        let mut levels: Vec<Vec<Word>> = vec![vec![Word::empty()]];
        // Bucket maps of the two most recent levels (key → level indices);
        // maps[maps.len()-1] always matches levels.last().
        let mut maps: Vec<HashMap<Vec<i64>, Vec<u32>>> = vec![self.level_map(&levels[0])];
        let mut total: usize = 1;
        let mut found: Option<usize> = None;
        if let Some(t) = target {
            if t.is_empty() {
                found = Some(0);
            }
        }

        while levels.len() <= radius && found.is_none() {
            let n = levels.len() - 1;
            // Candidates in shortlex order: sorted parents × ranked labels.
            let mut candidates: Vec<Word> = Vec::with_capacity(levels[n].len() * 3 + 1);
            for parent in &levels[n] {
                for &x in order.labels() {
                    if parent.letters().last() == Some(&x.inverse()) {
                        continue;
                    }
                    let mut letters = Vec::with_capacity(parent.len() + 1);
                    letters.extend_from_slice(parent.letters());
                    letters.push(x);
                    candidates.push(Word::raw(letters));
                }
            }
            if total.saturating_add(candidates.len()) > opts.budget {
                return Err(self.budget_error(levels, order, opts));
            }

            let mut accepted: Vec<(Vec<i64>, Word)> = if free {
                // Free group: every freely reduced word is canonical; keys
                // are never consulted, so skip computing them.
                candidates.into_iter().map(|w| (Vec::new(), w)).collect()
            } else {
                let prev_level = &levels[n];
                let older_level = if n >= 1 { Some(&levels[n - 1][..]) } else { None };
                let prev_map = &maps[maps.len() - 1];
                let older_map = if maps.len() >= 2 {
                    Some(&maps[maps.len() - 2])
                } else {
                    None
                };
                self.dedup_level(candidates, prev_level, prev_map, older_level, older_map, opts)
            };

            total += accepted.len();

            // Deterministic level order regardless of worker count.
            accepted.sort_by(|a, b| order.cmp_words(&a.1, &b.1));
            let mut next_map: HashMap<Vec<i64>, Vec<u32>> = HashMap::new();
            let mut level: Vec<Word> = Vec::with_capacity(accepted.len());
            for (key, w) in accepted {
                next_map.entry(key).or_default().push(level.len() as u32);
                level.push(w);
            }

            if let (Some(t), None) = (target, found) {
                let hit = if free {
                    // Free-group canonical representatives are the freely
                    // reduced words themselves.
                    t.len() == n + 1
                } else {
                    let key = self.keyer.key_of_word(t);
                    let mut scratch = DehnScratch::default();
                    next_map.get(&key).is_some_and(|bucket| {
                        bucket.iter().any(|&i| {
                            self.oracle.equal_with_scratch(
                                level[i as usize].letters(),
                                t.letters(),
                                &mut scratch,
                            )
                        })
                    })
                };
                if hit {
                    found = Some(n + 1);
                }
            }

            levels.push(level);
            maps.push(next_map);
            if maps.len() > 2 {
                maps.remove(0);
            }
        }

        let ball = self.finish_ball(levels, order, true);
        Ok((ball, found))
    }

    fn budget_error(
        &self,
        levels: Vec<Vec<Word>>,
        order: ShortlexOrder,
        opts: &BallOptions,
    ) -> CayleyError {
        let reached = levels.len() - 1;
        let partial = self.finish_ball(levels, order, false);
        CayleyError::BudgetExceeded {
            budget: opts.budget,
            reached,
            partial: Box::new(partial),
        }
    }

    fn finish_ball(&self, levels: Vec<Vec<Word>>, order: ShortlexOrder, complete: bool) -> GroupBall {
        let sphere_counts: Vec<u64> = levels.iter().map(|l| l.len() as u64).collect();
        let mut ball_counts = Vec::with_capacity(sphere_counts.len());
        let mut acc = 0u64;
        for &s in &sphere_counts {
            acc += s;
            ball_counts.push(acc);
        }
        GroupBall {
            radius: levels.len() - 1,
            levels,
            sphere_counts,
            ball_counts,
            order,
            sound: self.oracle.is_sound(),
            complete,
        }
    }

    fn level_map(&self, level: &[Word]) -> HashMap<Vec<i64>, Vec<u32>> {
        let mut map: HashMap<Vec<i64>, Vec<u32>> = HashMap::new();
        for (i, w) in level.iter().enumerate() {
            map.entry(self.keyer.key_of_word(w)).or_default().push(i as u32);
        }
        map
    }

    /// Bucketed deduplication of one candidate level against the previous
    /// two levels and itself. Candidates arrive shortlex-sorted; within
    /// each bucket the first representative of an element wins. Equal
    /// elements always share a bucket key (the key is a group invariant),
    /// so buckets are independent and may run on any number of workers;
    /// returned order is arbitrary (the caller sorts).
    fn dedup_level(
        &self,
        candidates: Vec<Word>,
        prev_level: &[Word],
        prev_map: &HashMap<Vec<i64>, Vec<u32>>,
        older_level: Option<&[Word]>,
        older_map: Option<&HashMap<Vec<i64>, Vec<u32>>>,
        opts: &BallOptions,
    ) -> Vec<(Vec<i64>, Word)> {
        let mut buckets: HashMap<Vec<i64>, Vec<Word>> = HashMap::new();
        for w in candidates {
            let key = self.keyer.key_of_word(&w);
            buckets.entry(key).or_default().push(w);
        }
        let bucket_list: Vec<(Vec<i64>, Vec<Word>)> = buckets.into_iter().collect();

        let process = |(key, cands): (Vec<i64>, Vec<Word>)| -> Vec<(Vec<i64>, Word)> {
            let mut scratch = DehnScratch::default();
            let mut kept: Vec<Word> = Vec::new();
            let older = older_map.and_then(|m| m.get(&key));
            // Bipartite graphs admit no odd-length identities, so a
            // length-(n+1) candidate can never equal a distance-n element.
            let same_dist = if self.bipartite { None } else { prev_map.get(&key) };
            'cand: for w in cands {
                if let (Some(older), Some(older_level)) = (older, older_level) {
                    for &i in older {
                        if self.oracle.equal_with_scratch(
                            w.letters(),
                            older_level[i as usize].letters(),
                            &mut scratch,
                        ) {
                            continue 'cand;
                        }
                    }
                }
                if let Some(same) = same_dist {
                    for &i in same {
                        if self.oracle.equal_with_scratch(
                            w.letters(),
                            prev_level[i as usize].letters(),
                            &mut scratch,
                        ) {
                            continue 'cand;
                        }
                    }
                }
                for k in &kept {
                    if self
                        .oracle
                        .equal_with_scratch(w.letters(), k.letters(), &mut scratch)
                    {
                        continue 'cand;
                    }
                }
                kept.push(w);
            }
            kept.into_iter().map(|w| (key.clone(), w)).collect()
        };

        if opts.workers == 1 {
            bucket_list.into_iter().flat_map(process).collect()
        } else if opts.workers == 0 {
            bucket_list.into_par_iter().flat_map_iter(process).collect()
        } else {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(opts.workers)
                .build()
                .expect("worker pool construction");
            pool.install(|| bucket_list.into_par_iter().flat_map_iter(process).collect())
        }
    }
}

/// Enumerate the exact ball of the given radius. Refuses presentations
/// failing C'(1/6) unless `opts.force_unsound` is set, in which case the
/// result is marked unsound and counts are upper bounds only.
pub fn enumerate_ball(
    p: &Presentation,
    radius: usize,
    opts: &BallOptions,
) -> Result<GroupBall, CayleyError> {
    GroupContext::new(p.clone(), opts.force_unsound)?.enumerate_ball(radius, opts)
}

/// Geodesic distance from the identity to the element of `w`.
pub fn distance(p: &Presentation, w: &Word, opts: &BallOptions) -> Result<usize, CayleyError> {
    GroupContext::new(p.clone(), opts.force_unsound)?.distance(w, opts)
}

/// Whether `w` is a geodesic word: freely reduced and of minimal length
/// among all words representing the same element.
pub fn is_geodesic(p: &Presentation, w: &Word, opts: &BallOptions) -> Result<bool, CayleyError> {
    GroupContext::new(p.clone(), opts.force_unsound)?.is_geodesic(w, opts)
}

/// Per-radius growth diagnostics computed from exact counts. No
/// extrapolation is performed beyond the enumerated radius.
#[derive(Debug, Clone)]
pub struct GrowthEstimate {
    /// `#B(n)^{1/n}` for n = 1..=radius (floating-point display values).
    pub root_sequence: Vec<f64>,
    /// `#S(n+1)/#S(n)` for n = 0..radius−1, exact; a trivial sphere yields
    /// a zero ratio rather than a division error.
    pub ratio_sequence: Vec<BigRational>,
    /// Whether the underlying ball reached its requested radius with a
    /// sound oracle (exact counts) or carries caveats.
    pub exact: bool,
}

pub fn growth_estimates(ball: &GroupBall) -> GrowthEstimate {
    let mut root_sequence = Vec::new();
    for n in 1..=ball.radius() {
        let b = ball.ball_counts()[n] as f64;
        root_sequence.push(b.powf(1.0 / n as f64));
    }
    let mut ratio_sequence = Vec::new();
    for n in 0..ball.radius() {
        let s0 = BigInt::from(ball.sphere_counts()[n]);
        let s1 = BigInt::from(ball.sphere_counts()[n + 1]);
        if ball.sphere_counts()[n] == 0 {
            ratio_sequence.push(BigRational::from_integer(BigInt::from(0)));
        } else {
            ratio_sequence.push(BigRational::new(s1, s0));
        }
    }
    GrowthEstimate {
        root_sequence,
        ratio_sequence,
        exact: ball.is_complete() && ball.is_sound(),
    }
}

/// Ball-count comparison between a group and one of its quotients.
#[derive(Debug, Clone)]
pub struct BallComparison {
    /// `(#B_{p1}(n), #B_{p2}(n))` for n = 0..=radius.
    pub counts: Vec<(u64, u64)>,
    /// Least n with a strict inequality, if any.
    pub first_strict: Option<usize>,
}

impl BallComparison {
    pub fn identical(&self) -> bool {
        self.first_strict.is_none()
    }
}

/// Compare ball counts of `p1` against its quotient `p2` radius by radius.
/// Requires every relator of `p1` to hold in `p2` (checked on symmetrized
/// closures) so the quotient direction is known, and both presentations to
/// pass C'(1/6) (unless forced). The quotient can never out-count the
/// original: that inequality is asserted, not assumed.
pub fn compare_balls(
    p1: &Presentation,
    p2: &Presentation,
    radius: usize,
    opts: &BallOptions,
) -> Result<BallComparison, CayleyError> {
    let s1 = symmetrize(p1);
    let s2 = symmetrize(p2);
    let pool: HashSet<&Word> = s2.elements().iter().collect();
    if !s1.elements().iter().all(|e| pool.contains(e)) {
        return Err(CayleyError::NotAQuotient);
    }
    let b1 = enumerate_ball(p1, radius, opts)?;
    let b2 = enumerate_ball(p2, radius, opts)?;
    let mut counts = Vec::with_capacity(radius + 1);
    let mut first_strict = None;
    for n in 0..=radius {
        let c1 = b1.ball_counts()[n];
        let c2 = b2.ball_counts()[n];
        assert!(
            c2 <= c1,
            "quotient ball outgrew the original at radius {n}: {c2} > {c1}"
        );
        if c2 < c1 && first_strict.is_none() {
            first_strict = Some(n);
        }
        counts.push((c1, c2));
    }
    Ok(BallComparison {
        counts,
        first_strict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::Presentation;
    use crate::words::Lit;

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

    fn pres(text: &str) -> Presentation {
        Presentation::parse(text).unwrap()
    }

    #[test]
    fn free_group_counts_match_closed_form() {
        let p = Presentation::free(2);
        let ball = enumerate_ball(&p, 6, &BallOptions::default()).unwrap();
        assert_eq!(ball.sphere_counts()[0], 1);
        // #S(n) = 4·3^{n−1} in the free group of rank 2.
        for n in 1..=6 {
            assert_eq!(ball.sphere_counts()[n], 4 * 3u64.pow(n as u32 - 1));
        }
        assert_eq!(ball.ball_counts()[..4], [1, 5, 17, 53]);
        assert_eq!(ball.ball_counts()[6], 1457);
        assert!(ball.is_sound());
        assert!(ball.is_complete());
    }

    #[test]
    fn free_levels_are_shortlex_sorted_and_prefix_closed() {
        let p = Presentation::free(2);
        let ball = enumerate_ball(&p, 4, &BallOptions::default()).unwrap();
        let order = ball.order().clone();
        let index = ball.build_index();
        for level in ball.levels() {
            for pair in level.windows(2) {
                assert_eq!(order.cmp_words(&pair[0], &pair[1]), std::cmp::Ordering::Less);
            }
            for w in level {
                if !w.is_empty() {
                    let prefix = Word::raw(w.letters()[..w.len() - 1].to_vec());
                    assert!(index.contains_key(&prefix), "prefix of {w:?} missing");
                }
            }
        }
    }

    #[test]
    fn hexagon_relator_ball_counts() {
        // ⟨a,b | (ab)^6⟩ agrees with the free group through radius 5 and
        // first deviates at radius 6.
        let p = pres("generators: a b\nrelators: (a b)^6\n");
        let ball = enumerate_ball(&p, 6, &BallOptions::default()).unwrap();
        assert_eq!(ball.ball_counts()[3], 53);
        assert_eq!(ball.ball_counts()[5], 485);
        assert_eq!(ball.sphere_counts()[5], 324);
        // The relator identifies each length-6 half with the inverse of
        // its complement: the ball at radius 6 loses exactly 2 elements
        // relative to free growth.
        assert_eq!(1457 - ball.ball_counts()[6], 2);
        assert!(ball.is_sound());
    }

    #[test]
    fn worker_count_does_not_change_the_ball() {
        let p = pres("generators: a b\nrelators: (a b)^6\n");
        let base = enumerate_ball(&p, 6, &BallOptions::default()).unwrap();
        for workers in [1usize, 2, 4] {
            let opts = BallOptions {
                workers,
                ..BallOptions::default()
            };
            let ball = enumerate_ball(&p, 6, &opts).unwrap();
            assert_eq!(ball.levels(), base.levels(), "workers={workers}");
        }
    }

    #[test]
    fn distances_follow_the_relator() {
        let p = pres("generators: a b\nrelators: (a b)^6\n");
        let ctx = GroupContext::new(p, false).unwrap();
        let opts = BallOptions::default();
        // (ab)^3 is half the relator: still geodesic at length 6.
        assert_eq!(ctx.distance(&w("ababab"), &opts).unwrap(), 6);
        // (ab)^4 passes the halfway point: the complement is shorter.
        assert_eq!(ctx.distance(&w("abababab"), &opts).unwrap(), 4);
        assert_eq!(ctx.distance(&w("abababababab"), &opts).unwrap(), 0);
        assert_eq!(ctx.distance(&Word::empty(), &opts).unwrap(), 0);
    }

    #[test]
    fn geodesic_tests_match_distances() {
        let p = pres("generators: a b\nrelators: (a b)^6\n");
        let opts = BallOptions::default();
        let ctx = GroupContext::new(p, false).unwrap();
        assert!(ctx.is_geodesic(&w("ababab"), &opts).unwrap());
        assert!(!ctx.is_geodesic(&w("abababab"), &opts).unwrap());
        // Not freely reduced ⇒ not geodesic, whatever its element.
        assert!(!ctx.is_geodesic(&w("aA"), &opts).unwrap());
    }

    #[test]
    fn square_relator_counts() {
        // ⟨a,b | (a²b²)³⟩ deviates from free growth at radius 6 by 4.
        let p = pres("generators: a b\nrelators: (a a b b)^3\n");
        let ball = enumerate_ball(&p, 6, &BallOptions::default()).unwrap();
        assert_eq!(ball.ball_counts()[5], 485);
        assert_eq!(1457 - ball.ball_counts()[6], 4);
    }

    #[test]
    fn growth_estimates_report_exact_ratios() {
        let p = Presentation::free(2);
        let ball = enumerate_ball(&p, 5, &BallOptions::default()).unwrap();
        let est = growth_estimates(&ball);
        assert!(est.exact);
        assert_eq!(est.root_sequence.len(), 5);
        assert!((est.root_sequence[0] - 5.0).abs() < 1e-12);
        // Sphere ratios in the free group are exactly 3 from n = 1 on.
        let three = BigRational::from_integer(BigInt::from(3));
        assert_eq!(est.ratio_sequence[1], three);
        assert_eq!(est.ratio_sequence[4], three);
        assert_eq!(
            est.ratio_sequence[0],
            BigRational::from_integer(BigInt::from(4))
        );
    }

    #[test]
    fn budget_exhaustion_reports_partial_ball() {
        let p = Presentation::free(2);
        let err = enumerate_ball(
            &p,
            8,
            &BallOptions {
                budget: 100,
                ..BallOptions::default()
            },
        )
        .unwrap_err();
        match err {
            CayleyError::BudgetExceeded {
                budget,
                reached,
                partial,
            } => {
                assert_eq!(budget, 100);
                assert!(!partial.is_complete());
                assert_eq!(partial.radius(), reached);
                // The prefix of the true ball sequence survives.
                assert_eq!(partial.ball_counts()[..4], [1, 5, 17, 53]);
            }
            other => panic!("expected budget error, got {other:?}"),
        }
    }

    #[test]
    fn non_small_cancellation_is_refused_without_force() {
        let p = pres("generators: a b\nrelators: a b a b^-1\n");
        let err = enumerate_ball(&p, 2, &BallOptions::default()).unwrap_err();
        assert!(matches!(err, CayleyError::NotSmallCancellation));
        // Forcing proceeds but marks the ball unsound.
        let ball = enumerate_ball(
            &p,
            2,
            &BallOptions {
                force_unsound: true,
                ..BallOptions::default()
            },
        )
        .unwrap();
        assert!(!ball.is_sound());
    }

    #[test]
    fn quotient_comparison_finds_first_strict_radius() {
        let free = Presentation::free(2);
        let p = pres("generators: a b\nrelators: (a b)^6\n");
        let cmp = compare_balls(&free, &p, 6, &BallOptions::default()).unwrap();
        assert_eq!(cmp.first_strict, Some(6));
        assert_eq!(cmp.counts[6], (1457, 1455));
        assert!(!cmp.identical());

        // Reversed direction is rejected: the free presentation lacks the
        // quotient's relator.
        let err = compare_balls(&p, &free, 3, &BallOptions::default()).unwrap_err();
        assert!(matches!(err, CayleyError::NotAQuotient));
    }

    #[test]
    fn comparison_of_identical_presentations_is_identical() {
        let p = pres("generators: a b\nrelators: (a b)^6\n");
        let cmp = compare_balls(&p, &p, 4, &BallOptions::default()).unwrap();
        assert!(cmp.identical());
        assert!(cmp.counts.iter().all(|(x, y)| x == y));
    }

    #[test]
    fn triangle_inequality_on_sampled_pairs() {
        let p = pres("generators: a b\nrelators: (a b)^6\n");
        let ctx = GroupContext::new(p, false).unwrap();
        let opts = BallOptions::default();
        let ball = ctx.enumerate_ball(3, &opts).unwrap();
        let mut reps: Vec<Word> = Vec::new();
        for level in ball.levels() {
            reps.extend(level.iter().take(3).cloned());
        }
        for u in &reps {
            for v in &reps {
                let mut letters = u.letters().to_vec();
                letters.extend(v.letters().iter().copied());
                let prod = Word::reduced(letters);
                let d = ctx.distance(&prod, &opts).unwrap();
                assert!(d <= u.len() + v.len());
            }
        }
    }
}
