//! Deterministic text rendering for CLI output and report files.
//!
//! Everything here is a pure function of its input: iteration orders are
//! fixed, floats are printed with fixed precision, and rationals appear
//! exactly alongside a truncated decimal approximation, so identical inputs
//! produce byte-identical output regardless of worker count.  Negative
//! verdicts always carry a `witness`-prefixed line with tab-separated
//! `key=value` pairs for machine consumption.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;

use crate::automaton::{GeodesicAutomaton, ValidationVerdict};
use crate::blocks::{BlockDecomposition, GoodnessReport};
use crate::cayley::{GroupBall, GrowthEstimate};
use crate::dehn::DehnTrace;
use crate::family::{Certificate, ChainStep, Grade, Role, SeparationReport};
use crate::forbidden::{BoundReport, FactorReport};
use crate::presentation::{LambdaVerdict, SmallCancellationReport};
use crate::spectra::{Enclosure, Method};
use crate::words::{Alphabet, Word};

/// Exact rational as `p/q` (or plain integer when the denominator is 1).
pub fn rational_str(x: &BigRational) -> String {
    x.to_string()
}

/// Fixed-point decimal approximation, truncated toward zero.
pub fn decimal_str(x: &BigRational, digits: usize) -> String {
    let scale = BigInt::from(10u32).pow(digits as u32);
    let scaled = (x * BigRational::from_integer(scale.clone())).to_integer();
    let negative = scaled.is_negative();
    let abs = scaled.abs();
    let (int_part, frac_part) = (abs.clone() / &scale, abs % &scale);
    let sign = if negative { "-" } else { "" };
    if digits == 0 {
        format!("{sign}{int_part}")
    } else {
        format!("{sign}{int_part}.{frac_part:0>digits$}")
    }
}

fn method_str(m: &Method) -> &'static str {
    match m {
        Method::Empty => "empty",
        Method::EqualRowSums => "equal-row-sums",
        Method::PowerIteration => "power-iteration",
        Method::SturmExact => "sturm-exact",
        Method::BlockMax => "block-max",
    }
}

/// Enclosure as exact endpoints plus decimal approximations and the method
/// that produced it.
pub fn enclosure_str(e: &Enclosure) -> String {
    format!(
        "[{}, {}] ≈ [{}, {}] via {}",
        rational_str(&e.lo),
        rational_str(&e.hi),
        decimal_str(&e.lo, 12),
        decimal_str(&e.hi, 12),
        method_str(&e.method),
    )
}

/// Word as space-separated label names (empty word prints as `ε`).
pub fn word_str(w: &Word, a: &Alphabet) -> String {
    if w.is_empty() {
        return "ε".to_string();
    }
    w.letters()
        .iter()
        .map(|&l| a.label_name(l))
        .collect::<Vec<_>>()
        .join(" ")
}

/// TSV table of ball data: `n, sphere, ball, root, ratio` — the root column
/// is `#B(n)^{1/n}` and the ratio column `#S(n)/#S(n−1)`, both blank at
/// `n = 0`.
pub fn ball_tsv(ball: &GroupBall, estimates: &GrowthEstimate) -> String {
    let mut out = String::from("n\tsphere\tball\troot\tratio\n");
    for n in 0..=ball.radius() {
        let root = if n >= 1 {
            format!("{:.6}", estimates.root_sequence[n - 1])
        } else {
            "-".to_string()
        };
        let ratio = if n >= 1 {
            rational_str(&estimates.ratio_sequence[n - 1])
        } else {
            "-".to_string()
        };
        out.push_str(&format!(
            "{}\t{}\t{}\t{}\t{}\n",
            n,
            ball.sphere_counts()[n],
            ball.ball_counts()[n],
            root,
            ratio
        ));
    }
    out
}

/// Small cancellation verdict with a witness line on failure.
pub fn check_text(r: &SmallCancellationReport, a: &Alphabet) -> String {
    let mut out = String::new();
    out.push_str(&format!("lambda\t{}\n", rational_str(&r.lambda)));
    let max_piece = r
        .pieces
        .max_piece_per_element
        .iter()
        .copied()
        .max()
        .unwrap_or(0);
    out.push_str(&format!("max-piece\t{max_piece}\n"));
    match &r.verdict {
        LambdaVerdict::Pass => out.push_str("verdict\tpass\n"),
        LambdaVerdict::Fail {
            piece,
            element,
            boundary,
        } => {
            out.push_str("verdict\tfail\n");
            out.push_str(&format!(
                "witness\tkind=piece\tpiece={}\telement={}\tboundary={}\n",
                word_str(piece, a),
                element,
                boundary
            ));
        }
    }
    out
}

/// Replacement trace and final word.
pub fn reduce_text(t: &DehnTrace, a: &Alphabet) -> String {
    let mut out = String::new();
    for (i, step) in t.steps.iter().enumerate() {
        out.push_str(&format!(
            "step {}\tposition={}\telement={}\tmatched={}\treplacement={}\n",
            i,
            step.position,
            step.element,
            step.matched_len,
            word_str(&step.replacement, a)
        ));
    }
    out.push_str(&format!("final\t{}\n", word_str(&t.final_word, a)));
    out.push_str(&format!("identity\t{}\n", t.is_identity()));
    out
}

/// Automaton summary plus validation verdict (witness line on mismatch).
pub fn automaton_text(
    aut: &GeodesicAutomaton,
    verdict: &ValidationVerdict,
    growth: &Enclosure,
) -> String {
    let mut out = String::new();
    out.push_str(&format!("states\t{}\n", aut.num_states()));
    out.push_str(&format!("edges\t{}\n", aut.edges().len()));
    out.push_str(&format!("deterministic\t{}\n", aut.is_deterministic()));
    out.push_str(&format!("growth\t{}\n", enclosure_str(growth)));
    match &verdict.first_mismatch {
        None => out.push_str(&format!(
            "validation\tpass through radius {}\n",
            verdict.checked_radius
        )),
        Some((n, paths, spheres)) => {
            out.push_str("validation\tfail\n");
            out.push_str(&format!(
                "witness\tkind=path-count-mismatch\tn={n}\tpaths={paths}\tspheres={spheres}\n"
            ));
        }
    }
    out
}

/// Block decomposition: one line per block, then the overall radius.
pub fn blocks_text(d: &BlockDecomposition) -> String {
    let mut out = String::new();
    for (i, b) in d.blocks().iter().enumerate() {
        let states = b
            .states()
            .iter()
            .map(|s| s.to_string())
            .collect::<Vec<_>>()
            .join(",");
        out.push_str(&format!(
            "block {}\tsize={}\tstates={}\tradius={}\n",
            i,
            b.states().len(),
            states,
            enclosure_str(b.enclosure())
        ));
    }
    out.push_str(&format!("overall\t{}\n", enclosure_str(d.v())));
    out
}

/// Important/good verification with strict-gap certificates.
pub fn goodness_text(r: &GoodnessReport) -> String {
    let mut out = String::new();
    if r.degenerate_empty_word {
        out.push_str("degenerate\tempty word: every block is trivially good\n");
    }
    for v in &r.verdicts {
        out.push_str(&format!(
            "important block {}\tgood={}\tradius={}\n",
            v.block_index,
            v.good,
            enclosure_str(&v.v_block)
        ));
        if let Some(vt) = &v.vtilde {
            out.push_str(&format!(
                "  avoiding-growth\t{}\tstrict-drop={}\n",
                enclosure_str(vt),
                v.strict == Some(true)
            ));
        }
        if let Some(cert) = &v.power_certificate {
            out.push_str(&format!(
                "  power-certificate\toriginal={}\tdecremented={}\texact-fallback={}\n",
                enclosure_str(&cert.original),
                enclosure_str(&cert.decremented),
                cert.exact_fallback
            ));
        }
        if !v.good {
            out.push_str(&format!(
                "witness\tkind=important-not-good\tblock={}\n",
                v.block_index
            ));
        }
    }
    out.push_str(&format!("all-important-blocks-good\t{}\n", r.all_good));
    out
}

/// Forbidden-factor growth-drop bound report.
pub fn bound_text(b: &BoundReport) -> String {
    let mut out = String::new();
    out.push_str(&format!("v\t{}\n", enclosure_str(&b.v)));
    out.push_str(&format!("v-forbidden\t{}\n", enclosure_str(&b.v_new)));
    out.push_str(&format!(
        "parameters\ts={}\tk={}\tN={}\tp={}\n",
        b.s, b.k, b.n, b.p
    ));
    out.push_str(&format!(
        "bound\t{} ≈ {}\n",
        rational_str(&b.bound),
        decimal_str(&b.bound, 12)
    ));
    out.push_str(&format!("passes\t{}\n", b.passes));
    out.push_str(&format!("hypotheses-enforced\t{}\n", b.theorem_instance));
    if !b.passes {
        out.push_str(&format!(
            "witness\tkind=bound-violation\tv_new_lo^N={}\tbound={}\n",
            rational_str(&crate::spectra::rational_pow(&b.v_new.lo, b.n as u32)),
            rational_str(&b.bound)
        ));
    }
    out
}

/// Factor-density report for one long word.
pub fn factor_text(f: &FactorReport) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "word-length\t{}\tN={}\tdistinct-factors={}\n",
        f.word_len, f.n, f.p
    ));
    out.push_str(&format!("v\t{}\n", enclosure_str(&f.v_h)));
    out.push_str(&format!("v-avoiding\t{}\n", enclosure_str(&f.v_fb)));
    out.push_str(&format!("lower-bound\t{}\n", enclosure_str(&f.lower_bound)));
    out.push_str(&format!("threshold\t{}\n", f.threshold));
    out.push_str(&format!("observational\t{}\n", f.observational));
    out
}

fn role_str(role: Role) -> &'static str {
    match role {
        Role::CommonPrefix => "common-prefix",
        Role::ExtendedPrefix => "extended-prefix",
        Role::Lower => "lower",
        Role::Upper => "upper",
    }
}

fn indices_str(indices: &[usize]) -> String {
    if indices.is_empty() {
        "{}".to_string()
    } else {
        format!(
            "{{{}}}",
            indices
                .iter()
                .map(|i| i.to_string())
                .collect::<Vec<_>>()
                .join(",")
        )
    }
}

fn certificate_str(c: &Certificate) -> String {
    match c {
        Certificate::Identical => "identical presentations".to_string(),
        Certificate::QuotientSubset { checked_radius } => format!(
            "relator-subset quotient; ball counts cross-checked through radius {checked_radius}"
        ),
        Certificate::DisjointEnclosures { lhs_hi, rhs_lo } => format!(
            "disjoint enclosures: {} ≈ {} < {} ≈ {}",
            rational_str(lhs_hi),
            decimal_str(lhs_hi, 12),
            rational_str(rhs_lo),
            decimal_str(rhs_lo, 12)
        ),
        Certificate::BallDeficit {
            radius,
            smaller,
            larger,
        } => format!("ball counts at radius {radius}: {smaller} < {larger}"),
        Certificate::None => "none".to_string(),
    }
}

fn chain_step_lines(out: &mut String, step: &ChainStep) {
    let rel = if step.strict { "<" } else { "≤" };
    out.push_str(&format!(
        "claim\t{} {} {}\tcertified={}\n",
        role_str(step.lhs),
        rel,
        role_str(step.rhs),
        step.certified
    ));
    out.push_str(&format!("  certificate\t{}\n", certificate_str(&step.certificate)));
    if !step.certified {
        out.push_str(&format!(
            "witness\tkind=unseparated\tlhs={}\trhs={}\n",
            role_str(step.lhs),
            role_str(step.rhs)
        ));
    }
}

/// Full growth-separation experiment report: one section per group, then
/// the comparison chain, monotonicity cross-checks, and notes.
pub fn separation_text(r: &SeparationReport) -> String {
    let mut out = String::new();
    out.push_str("== configuration ==\n");
    out.push_str(&format!(
        "ladder\t{:?}\nexponent\t{}\nradius\t{}\n",
        r.ladder, r.exponent, r.radius
    ));
    out.push_str(&format!(
        "input-sets\tI={}\tJ={}\n",
        indices_str(&r.i_set),
        indices_str(&r.j_set)
    ));
    out.push_str(&format!(
        "roles\tupper={}\tcommon-prefix={}\textended-prefix={}\n",
        if r.upper_is_i { "I" } else { "J" },
        indices_str(&r.common_prefix),
        indices_str(&r.extended_prefix)
    ));
    for role in [
        Role::CommonPrefix,
        Role::ExtendedPrefix,
        Role::Lower,
        Role::Upper,
    ] {
        let g = r.group(role);
        out.push_str(&format!(
            "\n== group {} {} ==\n",
            role_str(role),
            indices_str(&g.indices)
        ));
        out.push_str(&format!(
            "relator-lengths\t{:?}\nsound\t{}\nsixth\t{}\nfiftieth\t{}\nbridge\t{}\n",
            g.relator_lengths, g.sound, g.sixth_pass, g.fiftieth_pass, g.bridge_pass
        ));
        let spheres = g
            .sphere_counts
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(",");
        let balls = g
            .ball_counts
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(",");
        out.push_str(&format!("spheres\t{spheres}\nballs\t{balls}\n"));
        if let Some(root) = g.roots.last() {
            out.push_str(&format!("last-root\t{root:.6}\n"));
        }
        match &g.automaton {
            Some(v) => out.push_str(&format!(
                "automaton\trho={}\tstates={}\tvalidated-through={}\n  growth\t{}\n",
                v.rho, v.states, v.validated_radius,
                enclosure_str(&v.enclosure)
            )),
            None => out.push_str("automaton\tnone validated at this radius\n"),
        }
    }
    out.push_str("\n== comparison chain ==\n");
    chain_step_lines(&mut out, &r.lower_le_extended);
    chain_step_lines(&mut out, &r.extended_lt_upper);
    out.push_str(&format!("separated\t{}\n", r.separated));
    out.push_str("\n== subset monotonicity ==\n");
    for m in &r.monotonicity {
        out.push_str(&format!(
            "{} ⊆ {}\tball-counts-non-increasing={}\tfirst-strict={}\n",
            role_str(m.sub),
            role_str(m.sup),
            m.holds,
            m.first_strict
                .map(|n| n.to_string())
                .unwrap_or_else(|| "-".to_string())
        ));
        if !m.holds {
            out.push_str(&format!(
                "witness\tkind=monotonicity-violation\tsub={}\tsup={}\n",
                role_str(m.sub),
                role_str(m.sup)
            ));
        }
    }
    out.push_str(&format!(
        "\ngrade\t{}\n",
        match r.grade {
            Grade::FullHypotheses => "full-hypotheses",
            Grade::Observational => "observational",
        }
    ));
    for note in &r.notes {
        out.push_str(&format!("note\t{note}\n"));
    }
    out
}

/// Growth summary for a forbidden-language computation.
pub fn growth_text(label: &str, e: &Enclosure) -> String {
    format!("{label}\t{}\n", enclosure_str(e))
}
