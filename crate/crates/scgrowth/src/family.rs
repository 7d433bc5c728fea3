//! The two-generator relator family `(a^N b^N)^c` and the growth-separation
//! experiment.
//!
//! A strictly increasing ladder `E` of exponents defines relators
//! `r_i = (a^{E(i)} b^{E(i)})^c`; a set of ladder indices picks a quotient
//! of the free group on `a, b`.  Distinct index sets should give groups of
//! distinct growth once the ladder grows fast enough; at desk scale the
//! machinery below builds the groups, enumerates their balls, attempts
//! validated geodesic automata, and certifies whichever inequalities of the
//! comparison chain the finite data supports — explicitly marking
//! everything the data cannot prove.
//!
//! The exponent `c` is configurable because the separation argument's
//! favored value (100) makes every relator longer than any enumerable ball;
//! all reports record `c`, so desk-scale output is never mistaken for the
//! full-scale setting.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::automaton::{build_cone_automaton, validate_automaton, GeodesicAutomaton};
use crate::cayley::{growth_estimates, BallOptions, CayleyError, GroupBall, GroupContext};
use crate::forbidden::gamma_threshold;
use crate::presentation::{
    check_bridge_pieces, check_small_cancellation, symmetrize, Presentation,
    PresentationError, SmallCancellationReport,
};
use crate::spectra::{compare_radii, spectral_radius, Enclosure};
use crate::words::{Alphabet, Lit, Word};

#[derive(Debug, Error)]
pub enum FamilyError {
    #[error("ladder must contain at least one entry")]
    EmptyLadder,
    #[error("ladder entries must be positive")]
    ZeroEntry,
    #[error("ladder entries must be strictly increasing (offending entry index {index})")]
    NotIncreasing { index: usize },
    #[error("exponent must be at least 1")]
    ZeroExponent,
    #[error("index {index} outside the ladder range 1..={len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("the two index sets are identical")]
    IdenticalSets,
    #[error("gap analysis needs at least two presentations")]
    TooFewGroups,
    #[error(transparent)]
    Cayley(#[from] CayleyError),
    #[error(transparent)]
    Presentation(#[from] PresentationError),
}

/// Ladder and exponent for the relator family.
#[derive(Debug, Clone)]
pub struct FamilyConfig {
    e: Vec<u64>,
    c: u32,
}

impl FamilyConfig {
    /// Validates that the ladder is nonempty, positive, and strictly
    /// increasing, and that the exponent is at least 1.
    pub fn new(e: Vec<u64>, c: u32) -> Result<Self, FamilyError> {
        if e.is_empty() {
            return Err(FamilyError::EmptyLadder);
        }
        if e[0] == 0 {
            return Err(FamilyError::ZeroEntry);
        }
        for i in 1..e.len() {
            if e[i] <= e[i - 1] {
                return Err(FamilyError::NotIncreasing { index: i });
            }
        }
        if c == 0 {
            return Err(FamilyError::ZeroExponent);
        }
        Ok(FamilyConfig { e, c })
    }

    pub fn ladder(&self) -> &[u64] {
        &self.e
    }

    pub fn exponent(&self) -> u32 {
        self.c
    }

    /// Ladder entry for a 1-based index.
    fn entry(&self, index: usize) -> Result<u64, FamilyError> {
        if index == 0 || index > self.e.len() {
            return Err(FamilyError::IndexOutOfRange {
                index,
                len: self.e.len(),
            });
        }
        Ok(self.e[index - 1])
    }
}

/// The relator `(a^N b^N)^c`, of length `2·N·c`.
pub fn relator_for(n: u64, c: u32) -> Word {
    assert!(n >= 1 && c >= 1, "relator parameters must be positive");
    let mut letters = Vec::with_capacity((2 * n * c as u64) as usize);
    for _ in 0..c {
        for _ in 0..n {
            letters.push(Lit::new(0, false));
        }
        for _ in 0..n {
            letters.push(Lit::new(1, false));
        }
    }
    Word::raw(letters)
}

/// A family group: the presentation for an index set, with its small
/// cancellation and bridge-piece analyses attached.
#[derive(Debug, Clone)]
pub struct FamilyGroup {
    /// Sorted 1-based ladder indices.
    pub indices: Vec<usize>,
    pub presentation: Presentation,
    /// Metric condition at λ = 1/6 — the Dehn-algorithm threshold.
    pub sixth: SmallCancellationReport,
    /// Metric condition at λ = 1/50 — the separation argument's threshold,
    /// typically out of reach at desk-scale exponents.
    pub fiftieth: SmallCancellationReport,
    /// Whether no three-letter alternation `x^ε y^δ x^ζ` is a piece.
    pub bridge_pass: bool,
}

/// Builds the group for an index set: relators `relator_for(E(j), c)` for
/// `j` in the set, or the free group for the empty set.  The returned
/// record carries the hypothesis checks the separation argument cares
/// about; callers decide how to react to failures.
pub fn build_group(indices: &[usize], cfg: &FamilyConfig) -> Result<FamilyGroup, FamilyError> {
    let mut sorted: Vec<usize> = indices.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    let presentation = if sorted.is_empty() {
        Presentation::free(2)
    } else {
        let relators = sorted
            .iter()
            .map(|&j| Ok(relator_for(cfg.entry(j)?, cfg.c)))
            .collect::<Result<Vec<_>, FamilyError>>()?;
        Presentation::new(Alphabet::standard(2), relators)?
    };
    let sixth = check_small_cancellation(&presentation, &lambda(6));
    let fiftieth = check_small_cancellation(&presentation, &lambda(50));
    let bridge_pass = check_bridge_pieces(&presentation)?.pass;
    Ok(FamilyGroup {
        indices: sorted,
        presentation,
        sixth,
        fiftieth,
        bridge_pass,
    })
}

fn lambda(denom: u64) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(denom))
}

/// Family-restricted stand-ins for the separation argument's global
/// functions: `alpha_hat` is a minimal growth gap observed across a finite
/// family (see [`alpha_gap`]), `beta_hat` an observed validated automaton
/// state count.  Neither is ever claimed to bound anything outside the
/// family it was measured on.
#[derive(Debug, Clone)]
pub struct LadderSurrogates {
    pub alpha_hat: BigRational,
    pub beta_hat: u64,
}

/// Largest ladder entry for which desk-scale ball enumeration of the
/// radii the separation argument needs is even conceivable; the γ
/// threshold always exceeds it, which the ladder report flags.
pub const DESK_LADDER_BOUND: u64 = 1_000_000;

/// Verdicts for one rung-to-rung constraint set of the ladder.
#[derive(Debug, Clone)]
pub struct LadderStep {
    /// 1-based index `i`: the constraints relate `E(i)` and `E(i+1)`.
    pub index: usize,
    /// `E(i+1) > 400·E(i)`.
    pub spacing: bool,
    /// `400/√E(i+1) < α̂`, evaluated exactly as `160000 < α̂²·E(i+1)`.
    pub alpha_ok: bool,
    /// `E(i+1) > γ(β̂, 2)` with the γ threshold from the factor-density
    /// bound.
    pub gamma_ok: bool,
    /// The γ threshold exceeds [`DESK_LADDER_BOUND`]: satisfying the third
    /// constraint is infeasible at desk scale regardless of the ladder.
    pub gamma_infeasible: bool,
}

/// Evaluates the three ladder constraints between consecutive entries,
/// using the supplied surrogates uniformly (the full-scale versions depend
/// on the rung; a single measured value is all a finite family offers).
pub fn ladder_check(cfg: &FamilyConfig, surrogates: &LadderSurrogates) -> Vec<LadderStep> {
    let gamma = gamma_threshold(surrogates.beta_hat, 2);
    let gamma_infeasible = gamma > BigInt::from(DESK_LADDER_BOUND);
    let alpha_sq = &surrogates.alpha_hat * &surrogates.alpha_hat;
    let mut steps = Vec::new();
    for i in 1..cfg.e.len() {
        let prev = BigInt::from(cfg.e[i - 1]);
        let next = BigInt::from(cfg.e[i]);
        let spacing = next > BigInt::from(400u32) * &prev;
        let alpha_ok = BigRational::from_integer(BigInt::from(160000u32))
            < &alpha_sq * BigRational::from_integer(next.clone());
        let gamma_ok = next > gamma;
        steps.push(LadderStep {
            index: i,
            spacing,
            alpha_ok,
            gamma_ok,
            gamma_infeasible,
        });
    }
    steps
}

/// A geodesic automaton that validated against the enumerated ball, with
/// the spectral enclosure of its language growth.  The enclosure certifies
/// the automaton's language; sphere counts match only through the
/// validated radius, so as a statement about the group it is observational.
#[derive(Debug, Clone)]
pub struct ValidatedAutomaton {
    pub rho: usize,
    pub states: usize,
    pub validated_radius: usize,
    pub enclosure: Enclosure,
    pub automaton: GeodesicAutomaton,
}

/// Tries lookaheads in increasing order and returns the first cone
/// automaton that validates against every sphere of the ball.
pub fn validated_automaton(ball: &GroupBall) -> Option<ValidatedAutomaton> {
    if ball.radius() < 2 {
        return None;
    }
    for rho in 0..=(ball.radius() - 2) / 2 {
        let Ok(aut) = build_cone_automaton(ball, rho) else {
            continue;
        };
        if validate_automaton(&aut, ball).passed() {
            let enclosure = spectral_radius(&aut.adjacency_matrix());
            return Some(ValidatedAutomaton {
                rho,
                states: aut.num_states(),
                validated_radius: ball.radius(),
                enclosure,
                automaton: aut,
            });
        }
    }
    None
}

/// Growth-gap entry for one pair of presentations.
#[derive(Debug, Clone)]
pub struct PairGap {
    pub first: usize,
    pub second: usize,
    /// The presentations have equal growth (identical symmetrized relator
    /// sets, or exact spectral equality of validated automata).
    pub equal: bool,
    /// Certified lower bound on the growth gap, when the pair resolved.
    pub gap: Option<BigRational>,
    /// Neither equality nor a positive gap could be established.
    pub unresolved: bool,
}

/// Minimal-gap analysis over a finite family.
#[derive(Debug, Clone)]
pub struct AlphaGap {
    pub pairs: Vec<PairGap>,
    /// Minimum certified gap over pairs with unequal growth; `None` when no
    /// such pair resolved.
    pub min_unequal_gap: Option<BigRational>,
    pub any_unresolved: bool,
}

/// Measures the minimal growth gap across a family of presentations via
/// validated automata: pairs with identical symmetrized relator sets count
/// as equal; otherwise both groups need a validating automaton, radii are
/// compared exactly, and enclosures are refined until they separate.
///
/// The result is a gap observed on this family at this radius — a
/// surrogate, never a bound for presentations outside the family.
pub fn alpha_gap(
    family: &[Presentation],
    radius: usize,
    opts: &BallOptions,
) -> Result<AlphaGap, FamilyError> {
    if family.len() < 2 {
        return Err(FamilyError::TooFewGroups);
    }
    let mut automata: Vec<Option<ValidatedAutomaton>> = Vec::new();
    let mut relator_sets: Vec<Vec<Word>> = Vec::new();
    for p in family {
        let mut elems = symmetrize(p).elements().to_vec();
        elems.sort_by(|a, b| a.letters().cmp(b.letters()));
        elems.dedup();
        relator_sets.push(elems);
        let ctx = GroupContext::new(p.clone(), false)?;
        let ball = ctx.enumerate_ball(radius, opts)?;
        automata.push(validated_automaton(&ball));
    }
    let mut pairs = Vec::new();
    let mut min_gap: Option<BigRational> = None;
    let mut any_unresolved = false;
    for i in 0..family.len() {
        for j in (i + 1)..family.len() {
            let pair = resolve_pair(i, j, &relator_sets, &automata);
            if pair.unresolved {
                any_unresolved = true;
            }
            if !pair.equal {
                if let Some(g) = &pair.gap {
                    if min_gap.as_ref().map_or(true, |m| g < m) {
                        min_gap = Some(g.clone());
                    }
                }
            }
            pairs.push(pair);
        }
    }
    Ok(AlphaGap {
        pairs,
        min_unequal_gap: min_gap,
        any_unresolved,
    })
}

fn resolve_pair(
    i: usize,
    j: usize,
    relator_sets: &[Vec<Word>],
    automata: &[Option<ValidatedAutomaton>],
) -> PairGap {
    if relator_sets[i] == relator_sets[j] {
        return PairGap {
            first: i,
            second: j,
            equal: true,
            gap: Some(BigRational::zero()),
            unresolved: false,
        };
    }
    let (Some(a), Some(b)) = (&automata[i], &automata[j]) else {
        return PairGap {
            first: i,
            second: j,
            equal: false,
            gap: None,
            unresolved: true,
        };
    };
    let ma = a.automaton.adjacency_matrix();
    let mb = b.automaton.adjacency_matrix();
    match compare_radii(&ma, &mb) {
        std::cmp::Ordering::Equal => PairGap {
            first: i,
            second: j,
            equal: true,
            gap: Some(BigRational::zero()),
            unresolved: false,
        },
        _ => {
            // Strictly different radii: refine until the enclosures
            // separate and report the inter-interval distance.
            let mut tol = crate::spectra::default_tolerance();
            let mut ea = a.enclosure.clone();
            let mut eb = b.enclosure.clone();
            for _ in 0..8 {
                if ea.hi < eb.lo || eb.hi < ea.lo {
                    break;
                }
                tol = &tol * &tol;
                ea = crate::spectra::spectral_radius_with(&ma, &tol);
                eb = crate::spectra::spectral_radius_with(&mb, &tol);
            }
            if ea.hi < eb.lo || eb.hi < ea.lo {
                let gap = if ea.hi < eb.lo {
                    &eb.lo - &ea.hi
                } else {
                    &ea.lo - &eb.hi
                };
                PairGap {
                    first: i,
                    second: j,
                    equal: false,
                    gap: Some(gap),
                    unresolved: false,
                }
            } else {
                PairGap {
                    first: i,
                    second: j,
                    equal: false,
                    gap: None,
                    unresolved: true,
                }
            }
        }
    }
}

/// Which of the four experiment groups a chain claim talks about.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Role {
    /// `L`: the common prefix of the two index sets.
    CommonPrefix,
    /// `L′`: the common prefix plus the smaller first differing index.
    ExtendedPrefix,
    /// The input set containing that smaller differing index (expected
    /// smaller growth).
    Lower,
    /// The other input set (expected larger growth).
    Upper,
}

/// Machine-checkable evidence for one chain claim.
#[derive(Debug, Clone)]
pub enum Certificate {
    /// Both sides are the same presentation.
    Identical,
    /// The left side's relators include the right side's, so the left
    /// group is a quotient and its balls can only be smaller; ball counts
    /// were cross-checked through the stated radius.
    QuotientSubset { checked_radius: usize },
    /// Validated automata on both sides with disjoint spectral enclosures.
    DisjointEnclosures { lhs_hi: BigRational, rhs_lo: BigRational },
    /// Explicit ball-count pair: `#B_lhs(radius) < #B_rhs(radius)`.
    BallDeficit { radius: usize, smaller: u64, larger: u64 },
    /// The computed data do not separate the two sides.
    None,
}

/// One claim of the comparison chain with its certification status.
#[derive(Debug, Clone)]
pub struct ChainStep {
    pub lhs: Role,
    pub rhs: Role,
    /// Claimed relation: `lhs < rhs` when strict, else `lhs ≤ rhs`.
    pub strict: bool,
    pub certificate: Certificate,
    pub certified: bool,
}

/// Subset-monotonicity cross-check between two of the report's groups.
#[derive(Debug, Clone)]
pub struct MonotonicityCheck {
    /// Role whose index set is the subset (fewer relators).
    pub sub: Role,
    /// Role whose index set is the superset (a quotient group).
    pub sup: Role,
    /// `#B_sup(n) ≤ #B_sub(n)` held for every computed `n`.
    pub holds: bool,
    /// First radius with strict inequality, if any.
    pub first_strict: Option<usize>,
}

/// How strong the report's hypotheses came out.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Grade {
    /// Every group passed C'(1/50) and the bridge-piece condition.
    FullHypotheses,
    /// Some hypothesis failed at the desk-scale parameters; all claims are
    /// observations about the computed data, certified as such.
    Observational,
}

/// Per-group data in a separation report.
#[derive(Debug, Clone)]
pub struct GroupData {
    pub indices: Vec<usize>,
    pub relator_lengths: Vec<usize>,
    /// The enumeration oracle was backed by a verified C'(1/6) check.
    pub sound: bool,
    pub sixth_pass: bool,
    pub fiftieth_pass: bool,
    pub bridge_pass: bool,
    pub sphere_counts: Vec<u64>,
    pub ball_counts: Vec<u64>,
    /// `#B(n)^{1/n}` display sequence.
    pub roots: Vec<f64>,
    pub automaton: Option<ValidatedAutomaton>,
}

/// Outcome of the growth-separation experiment for two index sets.
#[derive(Debug, Clone)]
pub struct SeparationReport {
    pub ladder: Vec<u64>,
    pub exponent: u32,
    pub i_set: Vec<usize>,
    pub j_set: Vec<usize>,
    /// Whether the first input set plays the `Upper` role.
    pub upper_is_i: bool,
    pub common_prefix: Vec<usize>,
    pub extended_prefix: Vec<usize>,
    pub radius: usize,
    /// Distinct groups computed; roles map into this list.
    pub groups: Vec<GroupData>,
    role_of: [usize; 4],
    /// `Lower ≤ ExtendedPrefix` (growth can only shrink under quotients).
    pub lower_le_extended: ChainStep,
    /// `ExtendedPrefix < Upper`, the strict heart of the chain.
    pub extended_lt_upper: ChainStep,
    /// Both chain steps certified.
    pub separated: bool,
    pub monotonicity: Vec<MonotonicityCheck>,
    pub grade: Grade,
    pub notes: Vec<String>,
}

impl SeparationReport {
    /// The group a role refers to.
    pub fn group(&self, role: Role) -> &GroupData {
        &self.groups[self.role_of[role_slot(role)]]
    }
}

fn role_slot(role: Role) -> usize {
    match role {
        Role::CommonPrefix => 0,
        Role::ExtendedPrefix => 1,
        Role::Lower => 2,
        Role::Upper => 3,
    }
}

/// Runs the growth-separation experiment for two distinct index sets.
///
/// The sorted sets are split at their longest common prefix `L`; the set
/// whose first differing index is smaller (a missing index counts as
/// larger than anything) takes the `Lower` role, and `L′` extends `L` by
/// that smaller index.  Four groups are built — `G_L`, `G_{L′}`, and the
/// two inputs — their balls enumerated to `radius`, validating automata
/// attempted, and the chain `Lower ≤ L′ < Upper` certified step by step
/// from whatever the data support: identical presentations, relator-subset
/// quotient relations, disjoint automaton enclosures, or explicit
/// ball-count pairs.  Anything unsupported is reported as unseparated, and
/// hypothesis failures (C'(1/50), bridge pieces, or a forced unsound
/// oracle) downgrade the grade to observational.
pub fn separation_experiment(
    i_set: &[usize],
    j_set: &[usize],
    cfg: &FamilyConfig,
    radius: usize,
    opts: &BallOptions,
) -> Result<SeparationReport, FamilyError> {
    let mut i_sorted: Vec<usize> = i_set.to_vec();
    i_sorted.sort_unstable();
    i_sorted.dedup();
    let mut j_sorted: Vec<usize> = j_set.to_vec();
    j_sorted.sort_unstable();
    j_sorted.dedup();
    for &idx in i_sorted.iter().chain(&j_sorted) {
        cfg.entry(idx)?;
    }
    if i_sorted == j_sorted {
        return Err(FamilyError::IdenticalSets);
    }
    let k = i_sorted
        .iter()
        .zip(&j_sorted)
        .take_while(|(a, b)| a == b)
        .count();
    let common_prefix: Vec<usize> = i_sorted[..k].to_vec();
    // The set with the smaller (k+1)-th index is Lower; a set that is
    // exactly the common prefix has no such index and plays Upper.
    let upper_is_i = match (i_sorted.get(k), j_sorted.get(k)) {
        (Some(a), Some(b)) => a > b,
        (None, Some(_)) => true,
        (Some(_), None) => false,
        (None, None) => unreachable!("distinct sets cannot both equal the prefix"),
    };
    let (upper_set, lower_set) = if upper_is_i {
        (i_sorted.clone(), j_sorted.clone())
    } else {
        (j_sorted.clone(), i_sorted.clone())
    };
    let mut extended_prefix = common_prefix.clone();
    extended_prefix.push(lower_set[k]);

    // Deduplicate the four index sets before doing any heavy work.
    let mut sets: Vec<Vec<usize>> = Vec::new();
    let mut role_of = [0usize; 4];
    for (slot, set) in [
        (Role::CommonPrefix, &common_prefix),
        (Role::ExtendedPrefix, &extended_prefix),
        (Role::Lower, &lower_set),
        (Role::Upper, &upper_set),
    ] {
        let pos = sets.iter().position(|s| s == set).unwrap_or_else(|| {
            sets.push(set.clone());
            sets.len() - 1
        });
        role_of[role_slot(slot)] = pos;
    }

    let mut groups = Vec::with_capacity(sets.len());
    let mut grade = Grade::FullHypotheses;
    let mut notes = vec![
        "extended prefix = common prefix plus the smaller first differing index".to_string(),
        format!(
            "relator exponent c = {}; all claims are about these desk-scale parameters",
            cfg.c
        ),
        "automaton enclosures certify the validated language only through the checked radius"
            .to_string(),
    ];
    for set in &sets {
        let fam = build_group(set, cfg)?;
        let sixth_pass = fam.sixth.verdict.passed();
        let fiftieth_pass = fam.fiftieth.verdict.passed();
        if !fiftieth_pass || !fam.bridge_pass {
            grade = Grade::Observational;
        }
        let mut group_opts = opts.clone();
        if !sixth_pass {
            group_opts.force_unsound = true;
            grade = Grade::Observational;
            notes.push(format!(
                "group {:?} fails C'(1/6); its enumeration runs on an unverified oracle",
                set
            ));
        }
        let ctx = GroupContext::new(fam.presentation.clone(), !sixth_pass)?;
        let ball = ctx.enumerate_ball(radius, &group_opts)?;
        let estimates = growth_estimates(&ball);
        let automaton = validated_automaton(&ball);
        groups.push(GroupData {
            indices: fam.indices.clone(),
            relator_lengths: fam.presentation.relators().iter().map(Word::len).collect(),
            sound: ball.is_sound(),
            sixth_pass,
            fiftieth_pass,
            bridge_pass: fam.bridge_pass,
            sphere_counts: ball.sphere_counts().to_vec(),
            ball_counts: ball.ball_counts().to_vec(),
            roots: estimates.root_sequence,
            automaton,
        });
    }

    let group_at = |role: Role| -> &GroupData { &groups[role_of[role_slot(role)]] };

    // Lower ≤ L′: Lower's relators extend L′'s, so Lower is a quotient.
    let lower_le_extended = {
        let lhs = group_at(Role::Lower);
        let rhs = group_at(Role::ExtendedPrefix);
        if lhs.indices == rhs.indices {
            ChainStep {
                lhs: Role::Lower,
                rhs: Role::ExtendedPrefix,
                strict: false,
                certificate: Certificate::Identical,
                certified: true,
            }
        } else {
            let violation = lhs
                .ball_counts
                .iter()
                .zip(&rhs.ball_counts)
                .any(|(a, b)| a > b);
            ChainStep {
                lhs: Role::Lower,
                rhs: Role::ExtendedPrefix,
                strict: false,
                certificate: Certificate::QuotientSubset {
                    checked_radius: radius,
                },
                certified: !violation,
            }
        }
    };

    // L′ < Upper: the strict step, from enclosures or a ball-count pair.
    let extended_lt_upper = {
        let lhs = group_at(Role::ExtendedPrefix);
        let rhs = group_at(Role::Upper);
        let enclosure_pair = match (&lhs.automaton, &rhs.automaton) {
            (Some(a), Some(b)) if a.enclosure.hi < b.enclosure.lo => Some((
                a.enclosure.hi.clone(),
                b.enclosure.lo.clone(),
            )),
            _ => None,
        };
        let certificate = if let Some((lhs_hi, rhs_lo)) = enclosure_pair {
            Certificate::DisjointEnclosures { lhs_hi, rhs_lo }
        } else if let Some(r) = (0..=radius.min(lhs.ball_counts.len().saturating_sub(1)))
            .find(|&r| lhs.ball_counts[r] < rhs.ball_counts[r])
        {
            Certificate::BallDeficit {
                radius: r,
                smaller: lhs.ball_counts[r],
                larger: rhs.ball_counts[r],
            }
        } else {
            Certificate::None
        };
        let certified = !matches!(certificate, Certificate::None);
        ChainStep {
            lhs: Role::ExtendedPrefix,
            rhs: Role::Upper,
            strict: true,
            certificate,
            certified,
        }
    };

    let separated = lower_le_extended.certified && extended_lt_upper.certified;

    // Subset-monotonicity cross-checks among the roles with a subset
    // relation between their index sets.
    let monotonicity = [
        (Role::CommonPrefix, Role::ExtendedPrefix),
        (Role::CommonPrefix, Role::Lower),
        (Role::CommonPrefix, Role::Upper),
        (Role::ExtendedPrefix, Role::Lower),
    ]
    .into_iter()
    .filter(|(sub, sup)| role_of[role_slot(*sub)] != role_of[role_slot(*sup)])
    .map(|(sub, sup)| {
        let sub_counts = &group_at(sub).ball_counts;
        let sup_counts = &group_at(sup).ball_counts;
        let holds = sup_counts
            .iter()
            .zip(sub_counts)
            .all(|(quot, free)| quot <= free);
        let first_strict = sup_counts
            .iter()
            .zip(sub_counts)
            .position(|(quot, free)| quot < free);
        MonotonicityCheck {
            sub,
            sup,
            holds,
            first_strict,
        }
    })
    .collect();

    if groups.iter().any(|g| !g.sound) {
        grade = Grade::Observational;
    }

    Ok(SeparationReport {
        ladder: cfg.e.clone(),
        exponent: cfg.c,
        i_set: i_sorted,
        j_set: j_sorted,
        upper_is_i,
        common_prefix,
        extended_prefix,
        radius,
        groups,
        role_of,
        lower_le_extended,
        extended_lt_upper,
        separated,
        monotonicity,
        grade,
        notes,
    })
}
