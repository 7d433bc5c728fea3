//! Irreducible-block analysis of geodesic automata.
//!
//! The adjacency matrix of a geodesic automaton decomposes into strongly
//! connected components ("blocks").  The growth rate of the accepted
//! language is the maximum of the per-block spectral radii, so the blocks
//! that attain the maximum — the *important* ones — control growth.  A block
//! is *good* for a word `w` when some path inside the block spells `w`
//! exactly; for a good block the sublanguage avoiding the factor `w` grows
//! strictly slower than the block itself.  [`verify_important_implies_good`]
//! mechanizes that argument block by block and certifies each strict gap.

use std::collections::HashSet;

use num_bigint::BigInt;

use crate::automaton::GeodesicAutomaton;
use crate::forbidden::{build_factor_avoider, product_automaton, ForbiddenSet};
use crate::graph::{component_ids, scc_topological};
use crate::matrix::Matrix;
use crate::spectra::{
    compare_radii, matrix_power, spectral_radius, spectral_radius_with, strict_decrease,
    DecreaseCertificate, Enclosure, Method,
};
use crate::words::Word;

/// One strongly connected component of an automaton's state graph, with the
/// principal submatrix it induces and a certified spectral enclosure.
#[derive(Debug, Clone)]
pub struct Block {
    /// Automaton state ids in this component, ascending.
    states: Vec<usize>,
    /// Principal submatrix of the adjacency matrix on `states` (in the
    /// order listed there).
    matrix: Matrix<BigInt>,
    /// Certified enclosure of the block's spectral radius.
    enclosure: Enclosure,
}

impl Block {
    pub fn states(&self) -> &[usize] {
        &self.states
    }

    pub fn matrix(&self) -> &Matrix<BigInt> {
        &self.matrix
    }

    pub fn enclosure(&self) -> &Enclosure {
        &self.enclosure
    }

    /// Local index of an automaton state inside this block, if present.
    pub fn local_index(&self, state: usize) -> Option<usize> {
        self.states.binary_search(&state).ok()
    }
}

/// Strongly-connected-component partition of an adjacency matrix, ordered so
/// that every edge runs from a block to a block of equal or higher index
/// (sources first).  In the `M(i, j) = edges i → j` convention this makes
/// the permuted matrix upper block-triangular.
#[derive(Debug, Clone)]
pub struct BlockDecomposition {
    blocks: Vec<Block>,
    /// Block index per matrix state.
    component_of: Vec<usize>,
    /// Enclosure of the full matrix's spectral radius, the endpoint-wise
    /// maximum of the per-block enclosures.
    v: Enclosure,
}

impl BlockDecomposition {
    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn block(&self, i: usize) -> &Block {
        &self.blocks[i]
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    /// Block index containing matrix state `s`.
    pub fn component_of(&self, s: usize) -> usize {
        self.component_of[s]
    }

    /// Certified enclosure of the whole matrix's spectral radius.
    pub fn v(&self) -> &Enclosure {
        &self.v
    }
}

/// Per-block classification flags for a target word.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BlockFlags {
    /// The block's spectral radius equals the whole matrix's (decided
    /// exactly; overlapping enclosures are resolved by exact comparison).
    pub important: bool,
    /// Some path inside the block is labeled exactly by the target word.
    pub good: bool,
}

/// Verdict for one important block produced by
/// [`verify_important_implies_good`].
#[derive(Debug, Clone)]
pub struct BlockVerdict {
    /// Index into the decomposition's block list.
    pub block_index: usize,
    /// Whether the target word is readable inside the block.
    pub good: bool,
    /// The block's own certified spectral enclosure.
    pub v_block: Enclosure,
    /// Growth enclosure of the block's sublanguage avoiding the target word
    /// as a factor (good blocks only).
    pub vtilde: Option<Enclosure>,
    /// Exact verdict of `ṽ < v(block)`, decided by exact spectral
    /// comparison of the avoiding product against the block (good blocks
    /// only).
    pub strict: Option<bool>,
    /// Certificate that removing the word's path from the block's
    /// `|w|`-th power matrix strictly drops the spectral radius.  `None`
    /// when the power matrix is reducible (a periodic block), in which case
    /// the `strict` verdict alone carries the comparison.
    pub power_certificate: Option<DecreaseCertificate>,
}

/// Report of the important-implies-good verification.
#[derive(Debug, Clone)]
pub struct GoodnessReport {
    /// One verdict per important block, in block order.
    pub verdicts: Vec<BlockVerdict>,
    /// Every important block is good.
    pub all_good: bool,
    /// Some important block is not good: the growth-separation argument's
    /// hypothesis fails for this automaton and word.
    pub hypothesis_failure: bool,
    /// The target word was empty; every block is trivially good and no
    /// forbidden-growth computation is meaningful.
    pub degenerate_empty_word: bool,
}

/// Decomposes an adjacency matrix into its strongly connected blocks, in an
/// order where edges never run from a higher-indexed block to a
/// lower-indexed one, and attaches a certified spectral enclosure to each.
///
/// The overall enclosure `v()` is the endpoint-wise maximum of the block
/// enclosures, which encloses the full matrix's spectral radius because the
/// radius of a block-triangular matrix is the maximum of its diagonal
/// blocks' radii.
pub fn decompose_blocks(m: &Matrix<BigInt>) -> BlockDecomposition {
    let n = m.dim();
    let mut adj = vec![Vec::new(); n];
    for i in 0..n {
        for j in 0..n {
            if !num_traits::Zero::is_zero(&m[(i, j)]) {
                adj[i].push(j);
            }
        }
    }
    let mut comps = scc_topological(&adj);
    for comp in &mut comps {
        comp.sort_unstable();
    }
    let component_of = component_ids(n, &comps);
    let blocks: Vec<Block> = comps
        .into_iter()
        .map(|states| {
            let sub = m.submatrix(&states);
            let enclosure = spectral_radius(&sub);
            Block {
                states,
                matrix: sub,
                enclosure,
            }
        })
        .collect();
    let v = if blocks.is_empty() {
        spectral_radius(m)
    } else {
        let mut lo = blocks[0].enclosure.lo.clone();
        let mut hi = blocks[0].enclosure.hi.clone();
        let mut iterations = 0;
        for b in &blocks {
            lo = lo.max(b.enclosure.lo.clone());
            hi = hi.max(b.enclosure.hi.clone());
            iterations += b.enclosure.iterations;
        }
        Enclosure {
            lo,
            hi,
            iterations,
            method: Method::BlockMax,
        }
    };
    BlockDecomposition {
        blocks,
        component_of,
        v,
    }
}

/// States of `block` reachable from `from` (a subset of the block) by one
/// edge labeled `label`, staying inside the block.
fn step_inside(
    a: &GeodesicAutomaton,
    inside: &HashSet<usize>,
    from: &HashSet<usize>,
    label: usize,
) -> HashSet<usize> {
    let mut next = HashSet::new();
    for &(f, l, t) in a.edges() {
        if l == label && from.contains(&f) && inside.contains(&t) {
            next.insert(t);
        }
    }
    next
}

/// Whether a path labeled exactly `w` exists inside the block, and if so a
/// witness (start, end) pair of automaton states, chosen deterministically
/// (smallest viable start, then smallest end).
fn readable_inside(
    a: &GeodesicAutomaton,
    block: &Block,
    w: &Word,
) -> Option<(usize, usize)> {
    let inside: HashSet<usize> = block.states.iter().copied().collect();
    if w.is_empty() {
        let s = *block.states.first()?;
        return Some((s, s));
    }
    for &start in &block.states {
        let mut cur: HashSet<usize> = HashSet::from([start]);
        for lit in w.letters() {
            cur = step_inside(a, &inside, &cur, lit.index() as usize);
            if cur.is_empty() {
                break;
            }
        }
        if let Some(&end) = cur.iter().min() {
            return Some((start, end));
        }
    }
    None
}

/// Indices of the blocks whose spectral radius equals the whole matrix's,
/// decided exactly: blocks whose enclosure tops below the overall lower
/// bound are screened out, and the survivors are compared pairwise by exact
/// characteristic-polynomial comparison.
fn important_blocks(d: &BlockDecomposition) -> Vec<usize> {
    let candidates: Vec<usize> = (0..d.blocks.len())
        .filter(|&i| d.blocks[i].enclosure.hi >= d.v.lo)
        .collect();
    if candidates.len() <= 1 {
        return candidates;
    }
    let mut best = candidates[0];
    for &c in &candidates[1..] {
        if compare_radii(&d.blocks[c].matrix, &d.blocks[best].matrix)
            == std::cmp::Ordering::Greater
        {
            best = c;
        }
    }
    candidates
        .into_iter()
        .filter(|&c| {
            c == best
                || compare_radii(&d.blocks[c].matrix, &d.blocks[best].matrix)
                    != std::cmp::Ordering::Less
        })
        .collect()
}

/// Classifies each block of `d` as important and/or good for the word `w`.
///
/// Importance is a property of the matrix alone; goodness asks for a path
/// labeled exactly `w` (no free reduction is applied — pass the word whose
/// letters should label the path) staying inside the block.
pub fn classify_blocks(
    a: &GeodesicAutomaton,
    d: &BlockDecomposition,
    w: &Word,
) -> Vec<BlockFlags> {
    let important = important_blocks(d);
    d.blocks
        .iter()
        .enumerate()
        .map(|(i, block)| BlockFlags {
            important: important.contains(&i),
            good: readable_inside(a, block, w).is_some(),
        })
        .collect()
}

/// The block as a standalone automaton on locally renumbered states.  The
/// initial state is arbitrary (index 0): the block is strongly connected,
/// so every state is reachable and the spectral data are unaffected.
fn block_subautomaton(a: &GeodesicAutomaton, block: &Block) -> GeodesicAutomaton {
    let edges: Vec<(usize, usize, usize)> = a
        .edges()
        .iter()
        .filter_map(|&(f, l, t)| {
            let lf = block.local_index(f)?;
            let lt = block.local_index(t)?;
            Some((lf, l, lt))
        })
        .collect();
    GeodesicAutomaton::new(block.states.len(), 0, a.label_count(), edges)
}

/// Growth enclosure of the block's sublanguage avoiding `w` as a factor,
/// from paths starting anywhere in the block.
fn forbidden_growth_of_block(
    a: &GeodesicAutomaton,
    block: &Block,
    w: &Word,
    tol: &num_rational::BigRational,
) -> (GeodesicAutomaton, Enclosure) {
    let sub = block_subautomaton(a, block);
    let f = ForbiddenSet::new(vec![w.clone()])
        .expect("nonempty word always forms a valid forbidden set");
    let avoider = build_factor_avoider(a.label_count(), &f);
    let seeds: Vec<(usize, usize)> = (0..sub.num_states())
        .map(|s| (s, avoider.initial()))
        .collect();
    let prod = product_automaton(&sub, &avoider, &seeds);
    let enclosure = spectral_radius_with(&prod.adjacency_matrix(), tol);
    (prod, enclosure)
}

/// Verifies that every important block of `d` is good for `w`, and for each
/// good important block certifies the strict growth drop of the
/// `w`-avoiding sublanguage.
///
/// Two independent mechanisms back the strict verdict:
/// * exact spectral comparison of the avoiding product automaton against
///   the block (always performed; fills `strict`), and
/// * a decrement certificate on the block's `|w|`-th power matrix: the
///   single path spelling `w` between the witness states is one
///   `|w|`-length super-edge, and removing it strictly drops the power
///   matrix's radius, which dominates the avoiding language's `|w|`-th
///   power.  This needs the power matrix irreducible, so it is omitted
///   (`None`) for periodic blocks.
///
/// An empty `w` is degenerate: every block reads it trivially, so the
/// report only sets the flag and performs no growth computation.
pub fn verify_important_implies_good(
    a: &GeodesicAutomaton,
    d: &BlockDecomposition,
    w: &Word,
) -> GoodnessReport {
    let important = important_blocks(d);
    if w.is_empty() {
        let verdicts = important
            .into_iter()
            .map(|i| BlockVerdict {
                block_index: i,
                good: true,
                v_block: d.blocks[i].enclosure.clone(),
                vtilde: None,
                strict: None,
                power_certificate: None,
            })
            .collect();
        return GoodnessReport {
            verdicts,
            all_good: true,
            hypothesis_failure: false,
            degenerate_empty_word: true,
        };
    }
    let mut verdicts = Vec::new();
    let mut all_good = true;
    for i in important {
        let block = &d.blocks[i];
        let witness = readable_inside(a, block, w);
        let good = witness.is_some();
        if !good {
            all_good = false;
            verdicts.push(BlockVerdict {
                block_index: i,
                good: false,
                v_block: block.enclosure.clone(),
                vtilde: None,
                strict: None,
                power_certificate: None,
            });
            continue;
        }
        let mut tol = crate::spectra::default_tolerance();
        let (prod, mut vtilde) = forbidden_growth_of_block(a, block, w, &tol);
        let strict =
            compare_radii(&prod.adjacency_matrix(), &block.matrix) == std::cmp::Ordering::Less;
        let mut v_block = block.enclosure.clone();
        if strict {
            // Refine both enclosures until they are visibly disjoint; the
            // exact comparison above guarantees termination.
            let mut rounds = 0;
            while vtilde.hi >= v_block.lo && rounds < 6 {
                tol = &tol * &tol;
                vtilde = spectral_radius_with(&prod.adjacency_matrix(), &tol);
                v_block = spectral_radius_with(&block.matrix, &tol);
                rounds += 1;
            }
        }
        let (start, end) = witness.expect("good block has a witness path");
        let power = matrix_power(&block.matrix, w.len() as u64);
        let row = block.local_index(start).expect("witness start lies in block");
        let col = block.local_index(end).expect("witness end lies in block");
        let power_certificate = strict_decrease(&power, row, col).ok();
        verdicts.push(BlockVerdict {
            block_index: i,
            good: true,
            v_block,
            vtilde: Some(vtilde),
            strict: Some(strict),
            power_certificate,
        });
    }
    GoodnessReport {
        verdicts,
        all_good,
        hypothesis_failure: !all_good,
        degenerate_empty_word: false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::free_group_automaton;
    use crate::words::Lit;
    use num_rational::BigRational;
    use num_traits::{One, ToPrimitive, Zero};

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

    fn int_matrix(rows: &[&[i64]]) -> Matrix<BigInt> {
        let n = rows.len();
        let mut m = Matrix::zero(n);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), n);
            for (j, &v) in row.iter().enumerate() {
                m[(i, j)] = BigInt::from(v);
            }
        }
        m
    }

    #[test]
    fn free_automaton_splits_into_initial_and_letter_blocks() {
        let a = free_group_automaton(2);
        let d = decompose_blocks(&a.adjacency_matrix());
        assert_eq!(d.num_blocks(), 2);
        // Sources first: the initial state's singleton block precedes the
        // strongly connected letter-state block.
        assert_eq!(d.block(0).states(), &[0]);
        assert_eq!(d.block(1).states(), &[1, 2, 3, 4]);
        assert!(d.block(0).enclosure().lo.is_zero());
        assert!(d.block(0).enclosure().hi.is_zero());
        let three = BigRational::from_integer(BigInt::from(3));
        assert_eq!(d.block(1).enclosure().lo, three);
        assert_eq!(d.block(1).enclosure().hi, three);
        assert_eq!(d.v().lo, three);
        assert_eq!(d.v().hi, three);
    }

    #[test]
    fn irreducible_matrix_is_a_single_block() {
        let m = int_matrix(&[&[1, 1], &[1, 0]]);
        let d = decompose_blocks(&m);
        assert_eq!(d.num_blocks(), 1);
        assert_eq!(d.block(0).states(), &[0, 1]);
        // Golden ratio enclosure.
        let v = d.v();
        assert!(v.lo.to_f64().unwrap() > 1.618);
        assert!(v.hi.to_f64().unwrap() < 1.6181);
    }

    #[test]
    fn diagonal_matrix_blocks_and_overall_radius() {
        let m = int_matrix(&[&[2, 0], &[0, 3]]);
        let d = decompose_blocks(&m);
        assert_eq!(d.num_blocks(), 2);
        let three = BigRational::from_integer(BigInt::from(3));
        assert_eq!(d.v().lo, three);
        assert_eq!(d.v().hi, three);
    }

    #[test]
    fn block_order_never_runs_backwards() {
        // 2 → 0 → 1 plus a 2-cycle {3,4} feeding 1: whatever the emitted
        // order, every edge must go to an equal-or-later block.
        let m = int_matrix(&[
            &[0, 1, 0, 0, 0],
            &[0, 0, 0, 0, 0],
            &[1, 0, 0, 0, 0],
            &[0, 1, 0, 0, 1],
            &[0, 0, 0, 1, 0],
        ]);
        let d = decompose_blocks(&m);
        assert_eq!(d.num_blocks(), 4);
        for i in 0..5 {
            for j in 0..5 {
                if !m[(i, j)].is_zero() {
                    assert!(d.component_of(i) <= d.component_of(j));
                }
            }
        }
        // component_of and the block lists agree.
        for (bi, b) in d.blocks().iter().enumerate() {
            for &s in b.states() {
                assert_eq!(d.component_of(s), bi);
            }
        }
    }

    #[test]
    fn endpoint_max_encloses_the_larger_block() {
        // diag blocks [[2]] and golden [[1,1],[1,0]], connected 0 → 1 so the
        // matrix is not block-diagonal but still triangular.
        let m = int_matrix(&[&[2, 1, 0], &[0, 1, 1], &[0, 1, 0]]);
        let d = decompose_blocks(&m);
        assert_eq!(d.num_blocks(), 2);
        let two = BigRational::from_integer(BigInt::from(2));
        assert_eq!(d.v().lo, two);
        assert_eq!(d.v().hi, two);
    }

    #[test]
    fn letter_block_is_good_and_important_for_hexagon_relator() {
        let a = free_group_automaton(2);
        let d = decompose_blocks(&a.adjacency_matrix());
        let flags = classify_blocks(&a, &d, &w("abababababab"));
        assert_eq!(flags.len(), 2);
        assert!(!flags[0].important);
        assert!(!flags[0].good);
        assert!(flags[1].important);
        assert!(flags[1].good);
    }

    #[test]
    fn unreduced_word_is_readable_nowhere() {
        let a = free_group_automaton(2);
        let d = decompose_blocks(&a.adjacency_matrix());
        // a·a⁻¹: the free automaton's edges forbid immediate inverses.
        let flags = classify_blocks(&a, &d, &w("aA"));
        assert!(flags.iter().all(|f| !f.good));
    }

    #[test]
    fn tied_blocks_are_all_important() {
        // Two disjoint cycles with the same radius 1.
        let m = int_matrix(&[&[1, 0, 0], &[0, 0, 1], &[0, 1, 0]]);
        let d = decompose_blocks(&m);
        assert_eq!(d.num_blocks(), 2);
        let a = GeodesicAutomaton::new(
            3,
            0,
            2,
            vec![(0, 0, 0), (1, 0, 2), (2, 0, 1)],
        );
        let flags = classify_blocks(&a, &d, &w("a"));
        assert!(flags.iter().all(|f| f.important));
    }

    #[test]
    fn square_cube_word_verifies_strictly_on_free_automaton() {
        let a = free_group_automaton(2);
        let d = decompose_blocks(&a.adjacency_matrix());
        let report = verify_important_implies_good(&a, &d, &w("aabbaabbaabb"));
        assert!(report.all_good);
        assert!(!report.hypothesis_failure);
        assert!(!report.degenerate_empty_word);
        assert_eq!(report.verdicts.len(), 1);
        let v = &report.verdicts[0];
        assert_eq!(v.block_index, 1);
        assert!(v.good);
        assert_eq!(v.strict, Some(true));
        let vt = v.vtilde.as_ref().unwrap();
        // Strict gap with visibly disjoint enclosures below the exact 3.
        assert!(vt.hi < v.v_block.lo);
        assert_eq!(v.v_block.lo, BigRational::from_integer(BigInt::from(3)));
        // The letter block has self-loops, so its powers stay irreducible
        // and the decrement certificate must materialize.
        let cert = v.power_certificate.as_ref().unwrap();
        assert!(cert.decremented.hi < cert.original.lo);
    }

    #[test]
    fn unreadable_word_in_tied_cycles_flags_hypothesis_failure() {
        // A self-loop labeled a and a 2-cycle labeled a·a: both important
        // (radius 1), and a·a⁻¹ is readable in neither.
        let a = GeodesicAutomaton::new(
            3,
            0,
            2,
            vec![(0, 0, 0), (1, 0, 2), (2, 0, 1)],
        );
        let d = decompose_blocks(&a.adjacency_matrix());
        let report = verify_important_implies_good(&a, &d, &w("aA"));
        assert!(!report.all_good);
        assert!(report.hypothesis_failure);
        assert_eq!(report.verdicts.len(), 2);
        for v in &report.verdicts {
            assert!(!v.good);
            assert!(v.vtilde.is_none());
            assert!(v.strict.is_none());
        }
    }

    #[test]
    fn empty_word_is_degenerate_and_trivially_good() {
        let a = free_group_automaton(2);
        let d = decompose_blocks(&a.adjacency_matrix());
        let report = verify_important_implies_good(&a, &d, &Word::empty());
        assert!(report.degenerate_empty_word);
        assert!(report.all_good);
        assert!(!report.hypothesis_failure);
        for v in &report.verdicts {
            assert!(v.good);
            assert!(v.vtilde.is_none());
        }
    }

    #[test]
    fn empty_matrix_decomposes_to_nothing() {
        let m: Matrix<BigInt> = Matrix::zero(0);
        let d = decompose_blocks(&m);
        assert_eq!(d.num_blocks(), 0);
        assert!(d.v().lo.is_zero() && d.v().hi.is_zero());
    }

    #[test]
    fn goodness_is_monotone_under_taking_factors() {
        let a = free_group_automaton(2);
        let d = decompose_blocks(&a.adjacency_matrix());
        let word = w("aabbaabb");
        let letters = word.letters();
        let block = d.block(1);
        assert!(readable_inside(&a, block, &word).is_some());
        for i in 0..letters.len() {
            for j in i..=letters.len() {
                let factor = Word::raw(letters[i..j].to_vec());
                assert!(
                    readable_inside(&a, block, &factor).is_some(),
                    "factor {}..{} must stay readable",
                    i,
                    j
                );
            }
        }
    }

    #[test]
    fn periodic_block_skips_power_certificate_but_still_decides() {
        // Pure 2-cycle on labels a, a: powers of [[0,1],[1,0]] are
        // reducible, so only the exact comparison route is available.
        let a = GeodesicAutomaton::new(2, 0, 2, vec![(0, 0, 1), (1, 0, 0)]);
        let d = decompose_blocks(&a.adjacency_matrix());
        let report = verify_important_implies_good(&a, &d, &w("aa"));
        assert_eq!(report.verdicts.len(), 1);
        let v = &report.verdicts[0];
        assert!(v.good);
        // Forbidding a·a kills every length-2 path in this block, so the
        // avoiding sublanguage is finite and the drop is strict.
        assert_eq!(v.strict, Some(true));
        assert!(v.power_certificate.is_none());
        assert!(v.vtilde.as_ref().unwrap().hi < BigRational::one());
    }
}
