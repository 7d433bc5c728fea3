//! Cross-validation of the library's fast word-problem and automaton
//! machinery against the naive reference implementations in `common`, on
//! instances the acceptance suite does not already cover: a four-generator
//! surface presentation, lookahead sensitivity of cone automata, and
//! conjugated relator products far longer than any ball representative.

mod common;

use common::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use scgrowth::automaton::{build_cone_automaton, validate_automaton};
use scgrowth::cayley::{enumerate_ball, BallOptions};
use scgrowth::dehn::DehnOracle;
use scgrowth::presentation::Presentation;
use scgrowth::spectra::spectral_radius;
use num_rational::BigRational;
use num_bigint::BigInt;

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// The genus-2 surface presentation mixes four generators with a length-8
/// commutator relator whose abelianization is zero — a shape disjoint from
/// the two-generator power relators used elsewhere.
#[test]
fn surface_ball_matches_naive_enumeration() {
    let p = Presentation::parse(
        "generators: a b c d\nrelators: a b a^-1 b^-1 c d c^-1 d^-1",
    )
    .unwrap();
    let relators: Vec<NWord> = p.relators().iter().map(to_naive).collect();
    let ball = enumerate_ball(&p, 5, &BallOptions::default()).unwrap();
    let nb = naive_ball(&relators, 4, 5);
    for n in 0..=5usize {
        let lib: Vec<NWord> = ball.levels()[n].iter().map(to_naive).collect();
        assert_eq!(lib, nb.levels[n], "representative mismatch at radius {n}");
    }
    // Free 4-generator spheres are 8·7^(n−1); the first identifications
    // come from the two relator halves meeting at distance 4.
    for n in 1..=3usize {
        assert_eq!(ball.sphere_counts()[n], 8 * 7u64.pow(n as u32 - 1));
    }
    assert!(ball.sphere_counts()[4] < 8 * 7u64.pow(3));
    assert!(ball.sphere_counts()[5] < 8 * 7u64.pow(4));
}

/// Lookahead ρ = 3 merges cone types of ⟨a,b | (ab)⁶⟩ that behave
/// differently beyond the horizon: validation must refute the automaton at
/// a specific radius rather than trusting the construction. One more letter
/// of lookahead repairs every merge through radius 10.
#[test]
fn cone_lookahead_refuted_then_validated() {
    let p = Presentation::parse("generators: a b\nrelators: (a b)^6").unwrap();
    let ball = enumerate_ball(&p, 10, &BallOptions::default()).unwrap();

    let coarse = build_cone_automaton(&ball, 3).unwrap();
    let verdict = validate_automaton(&coarse, &ball);
    assert!(!verdict.passed(), "lookahead 3 must be refuted");
    let (n, expected, actual) = verdict.first_mismatch.clone().unwrap();
    assert_eq!(n, 6, "first path-count mismatch must appear at radius 6");
    assert_ne!(expected, actual);

    let fine = build_cone_automaton(&ball, 4).unwrap();
    let verdict = validate_automaton(&fine, &ball);
    assert!(verdict.passed(), "lookahead 4 must validate through radius 10");
    assert_eq!(verdict.checked_radius, 10);
    assert_eq!(fine.num_states(), 13);
    assert!(fine.is_deterministic());

    // The validated automaton's growth enclosure must sit strictly inside
    // (2, 3): the quotient keeps exponential growth but loses rate against
    // the free group.
    let enc = spectral_radius(&fine.adjacency_matrix());
    assert!(enc.lo > rat(2, 1) && enc.hi < rat(3, 1));
    assert!(&enc.hi - &enc.lo < rat(1, 1_000_000));
}

/// Products of conjugated relators are identities by construction and are
/// far longer than anything the ball comparisons exercise; appending one
/// letter breaks the identity (relators are even, so word length is parity
/// invariant). Both deciders must agree on every instance.
#[test]
fn conjugated_relator_products_agree_across_oracles() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x0E);
    for relator in ["(a b)^6", "(a^2 b^2)^3"] {
        let p = Presentation::parse(&format!("generators: a b\nrelators: {relator}")).unwrap();
        let relators: Vec<NWord> = p.relators().iter().map(to_naive).collect();
        let oracle = DehnOracle::new(&p).unwrap();
        let ng = NaiveGroup::new(&relators);
        let sym = n_symmetrize(&relators);
        for _ in 0..50 {
            let mut w: NWord = Vec::new();
            for _ in 0..3 {
                let mut u: NWord = Vec::new();
                for _ in 0..rng.gen_range(0..=4) {
                    let x = [1i16, -1, 2, -2][rng.gen_range(0..4)];
                    if u.last() != Some(&-x) {
                        u.push(x);
                    }
                }
                let r = &sym[rng.gen_range(0..sym.len())];
                w.extend(&u);
                w.extend(r);
                w.extend(n_inverse(&u));
            }
            assert!(ng.is_identity(&w), "naive oracle must accept the product");
            assert!(
                oracle.is_identity(&from_naive(&w)),
                "half-relator reduction must accept the product"
            );
            let mut broken = w.clone();
            broken.push([1i16, -1, 2, -2][rng.gen_range(0..4)]);
            assert!(!ng.is_identity(&broken), "odd length cannot be an identity");
            assert!(!oracle.is_identity(&from_naive(&broken)));
        }
    }
}

/// With no relators both deciders degenerate to free reduction.
#[test]
fn free_group_oracles_are_free_reduction() {
    let p = Presentation::free(2);
    let oracle = DehnOracle::new(&p).unwrap();
    let ng = NaiveGroup::new(&[]);
    let mut rng = ChaCha8Rng::seed_from_u64(0x0F);
    for _ in 0..200 {
        let w: NWord = (0..rng.gen_range(0..10))
            .map(|_| [1i16, -1, 2, -2][rng.gen_range(0..4)])
            .collect();
        let expected = n_free_reduce(&w).is_empty();
        assert_eq!(ng.is_identity(&w), expected);
        assert_eq!(oracle.is_identity(&from_naive(&w)), expected);
    }
}
