//! Command-line dispatch.
//!
//! Exit codes: 0 — success or positive verdict; 1 — negative verdict
//! (condition fails, word not identity/geodesic, automaton not validated,
//! bound violated, groups not separated); 2 — usage or input error;
//! 3 — element budget exceeded.  Every negative verdict prints a
//! machine-readable line starting with `witness` and tab-separated
//! `key=value` fields.  Output is deterministic: identical inputs and
//! configuration give byte-identical output regardless of worker count.
//!
//! The environment variable `SCGROWTH_BUDGET` overrides the default
//! element budget; an explicit `--budget` flag overrides both.

use std::fmt::Display;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;

use crate::automaton::{
    build_cone_automaton, from_interchange, validate_automaton, GeodesicAutomaton,
};
use crate::blocks::{decompose_blocks, verify_important_implies_good};
use crate::cayley::{distance, enumerate_ball, growth_estimates, is_geodesic, BallOptions, CayleyError};
use crate::dehn::DehnOracle;
use crate::family::{separation_experiment, FamilyConfig, FamilyError};
use crate::forbidden::{corollary1_report, lemma3_check_with, product_growth, ForbiddenSet};
use crate::matrix::Matrix;
use crate::presentation::{check_small_cancellation, parse_word, Presentation};
use crate::report;
use crate::spectra::{spectral_radius, spectral_radius_with};
use crate::words::{Alphabet, Lit, ShortlexOrder, Word};

const EXIT_OK: u8 = 0;
const EXIT_NEGATIVE: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_BUDGET: u8 = 3;

/// Growth data for finitely presented small cancellation groups.
#[derive(Parser)]
#[command(name = "scgrowth", version, about)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check the metric small cancellation condition C'(λ) of a presentation
    Check {
        /// Presentation file
        file: PathBuf,
        /// Threshold λ as an exact rational, e.g. 1/6
        #[arg(long, default_value = "1/6")]
        lambda: String,
    },
    /// Reduce a word by half-relator replacement and decide identity
    Reduce {
        /// Presentation file
        file: PathBuf,
        /// Word over the presentation's generators, e.g. "a b^-1 (a b)^3"
        word: String,
        /// Proceed even when the presentation fails C'(1/6) (unsound)
        #[arg(long)]
        force: bool,
    },
    /// Enumerate exact spheres and balls of the Cayley graph (TSV output)
    Ball {
        /// Presentation file
        file: PathBuf,
        #[arg(long)]
        radius: usize,
        /// Element budget (default from SCGROWTH_BUDGET or 5000000)
        #[arg(long)]
        budget: Option<usize>,
        /// Worker threads; 0 uses the ambient pool (results are identical)
        #[arg(long, default_value_t = 0)]
        workers: usize,
        /// Proceed even when the presentation fails C'(1/6) (unsound)
        #[arg(long)]
        force: bool,
        /// Shortlex label order as a comma-separated permutation, e.g. "a,a^-1,b,b^-1"
        #[arg(long)]
        order: Option<String>,
    },
    /// Geodesic distance from the identity to a word's element
    Distance {
        /// Presentation file
        file: PathBuf,
        /// Word over the presentation's generators
        word: String,
        #[arg(long)]
        budget: Option<usize>,
        #[arg(long, default_value_t = 0)]
        workers: usize,
        #[arg(long)]
        force: bool,
    },
    /// Decide whether a word is geodesic
    Geodesic {
        /// Presentation file
        file: PathBuf,
        /// Word over the presentation's generators
        word: String,
        #[arg(long)]
        budget: Option<usize>,
        #[arg(long, default_value_t = 0)]
        workers: usize,
        #[arg(long)]
        force: bool,
    },
    /// Build and validate a geodesic normal-form automaton from ball data
    Automaton {
        /// Presentation file
        file: PathBuf,
        #[arg(long)]
        radius: usize,
        /// Cone-type lookahead depth
        #[arg(long)]
        rho: usize,
        /// Write the automaton in interchange format to this path
        #[arg(long)]
        export: Option<PathBuf>,
        /// Write a DOT rendering to this path
        #[arg(long)]
        dot: Option<PathBuf>,
        #[arg(long)]
        budget: Option<usize>,
        #[arg(long, default_value_t = 0)]
        workers: usize,
        #[arg(long)]
        force: bool,
    },
    /// Irreducible block decomposition of an automaton's adjacency matrix
    Blocks {
        /// Automaton interchange file
        file: PathBuf,
    },
    /// Verify that every important block of an automaton is good for a word
    #[command(name = "check-p2")]
    CheckP2 {
        /// Automaton interchange file
        file: PathBuf,
        /// Word over the automaton's label alphabet
        #[arg(long)]
        word: String,
    },
    /// Certified spectral radius enclosure of a nonnegative integer matrix
    Spectra {
        /// Matrix file: first line s, then s rows of integers
        file: PathBuf,
        /// Target enclosure width as an exact rational
        #[arg(long)]
        tol: Option<String>,
    },
    /// Growth of the factor-avoiding sublanguage of an automaton
    Forbid {
        /// Automaton interchange file
        file: PathBuf,
        /// File of forbidden words, one per line, over the automaton's labels
        #[arg(long)]
        words: PathBuf,
    },
    /// Check the growth-drop bound for a set of forbidden long factors
    #[command(name = "lemma3")]
    Lemma3 {
        /// Automaton interchange file
        file: PathBuf,
        /// File of forbidden words, one per line, over the automaton's labels
        #[arg(long)]
        words: PathBuf,
        /// Length parameter: forbidden words must have length exactly 4N
        #[arg(long = "N")]
        n: usize,
        /// Allow instances outside the hypotheses (report marked non-theorem)
        #[arg(long)]
        no_enforce: bool,
    },
    /// Factor-density growth estimate for one long word
    #[command(name = "corollary1")]
    Corollary1 {
        /// Automaton interchange file
        file: PathBuf,
        /// Word over the automaton's label alphabet (length ≥ 52)
        #[arg(long)]
        word: String,
    },
    /// Growth-separation experiment over the two-generator relator family
    Family {
        /// Ladder entries E(1),E(2),…, comma-separated, strictly increasing
        #[arg(long = "E")]
        e: String,
        /// Relator exponent c ≥ 1
        #[arg(long)]
        c: u32,
        /// First index set, comma-separated 1-based ladder indices ("" = empty)
        #[arg(long = "I", default_value = "")]
        i: String,
        /// Second index set, comma-separated 1-based ladder indices ("" = empty)
        #[arg(long = "J", default_value = "")]
        j: String,
        #[arg(long)]
        radius: usize,
        /// Also write the report to this path
        #[arg(long)]
        report: Option<PathBuf>,
        #[arg(long)]
        budget: Option<usize>,
        #[arg(long, default_value_t = 0)]
        workers: usize,
    },
}

#[derive(Debug)]
struct Failure {
    code: u8,
    message: String,
}

type CmdResult = Result<u8, Failure>;

fn usage<E: Display>(e: E) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: e.to_string(),
    }
}

fn read_file(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path)
        .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))
}

fn write_file(path: &Path, content: &str) -> Result<(), Failure> {
    std::fs::write(path, content)
        .map_err(|e| usage(format!("cannot write {}: {e}", path.display())))
}

fn load_presentation(path: &Path) -> Result<Presentation, Failure> {
    Presentation::parse(&read_file(path)?).map_err(usage)
}

fn load_automaton(path: &Path) -> Result<(GeodesicAutomaton, Alphabet), Failure> {
    from_interchange(&read_file(path)?).map_err(usage)
}

fn parse_rational(text: &str, what: &str) -> Result<BigRational, Failure> {
    let r: BigRational = text
        .parse()
        .map_err(|e| usage(format!("invalid {what} {text:?}: {e}")))?;
    if !r.is_positive() {
        return Err(usage(format!("{what} must be positive, got {text:?}")));
    }
    Ok(r)
}

/// Default element budget: `SCGROWTH_BUDGET` when set, else the library
/// default. An explicit `--budget` flag wins over both.
fn resolve_budget(flag: Option<usize>) -> Result<usize, Failure> {
    if let Some(b) = flag {
        return Ok(b);
    }
    match std::env::var("SCGROWTH_BUDGET") {
        Ok(s) => s
            .parse::<usize>()
            .map_err(|_| usage(format!("SCGROWTH_BUDGET must be a positive integer, got {s:?}"))),
        Err(_) => Ok(BallOptions::default().budget),
    }
}

fn parse_label(a: &Alphabet, text: &str) -> Result<Lit, Failure> {
    let (name, inverse) = match text.strip_suffix("^-1") {
        Some(base) => (base, true),
        None => (text, false),
    };
    let gen = a
        .generator(name)
        .ok_or_else(|| usage(format!("unknown label {text:?}")))?;
    Ok(Lit::new(gen, inverse))
}

fn parse_order(a: &Alphabet, text: &str) -> Result<ShortlexOrder, Failure> {
    let labels: Vec<Lit> = text
        .split(',')
        .map(|s| parse_label(a, s.trim()))
        .collect::<Result<_, _>>()?;
    ShortlexOrder::from_permutation(&labels, 2 * a.generator_count()).ok_or_else(|| {
        usage(format!(
            "--order must list each of the {} labels exactly once",
            2 * a.generator_count()
        ))
    })
}

fn ball_options(
    budget: Option<usize>,
    workers: usize,
    force: bool,
    order: Option<ShortlexOrder>,
) -> Result<BallOptions, Failure> {
    Ok(BallOptions {
        budget: resolve_budget(budget)?,
        force_unsound: force,
        workers,
        order,
    })
}

fn parse_index_csv(text: &str, what: &str) -> Result<Vec<usize>, Failure> {
    let trimmed = text.trim();
    if trimmed.is_empty() {
        return Ok(Vec::new());
    }
    trimmed
        .split(',')
        .map(|s| {
            s.trim()
                .parse::<usize>()
                .map_err(|_| usage(format!("invalid {what} entry {s:?}: expected an integer")))
        })
        .collect()
}

fn parse_u64_csv(text: &str, what: &str) -> Result<Vec<u64>, Failure> {
    let trimmed = text.trim();
    if trimmed.is_empty() {
        return Ok(Vec::new());
    }
    trimmed
        .split(',')
        .map(|s| {
            s.trim()
                .parse::<u64>()
                .map_err(|_| usage(format!("invalid {what} entry {s:?}: expected an integer")))
        })
        .collect()
}

fn map_cayley_error(e: CayleyError) -> Failure {
    match e {
        CayleyError::BudgetExceeded { .. } => Failure {
            code: EXIT_BUDGET,
            message: e.to_string(),
        },
        other => usage(other),
    }
}

/// First line `s`, then `s` rows of `s` nonnegative integers.
fn parse_matrix(text: &str) -> Result<Matrix<BigInt>, Failure> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let first = lines.next().ok_or_else(|| usage("empty matrix file"))?;
    let s: usize = first
        .trim()
        .parse()
        .map_err(|_| usage(format!("matrix file: first line must be the size, got {first:?}")))?;
    let mut rows = Vec::with_capacity(s);
    for i in 0..s {
        let line = lines
            .next()
            .ok_or_else(|| usage(format!("matrix file: expected {s} rows, found {i}")))?;
        let row: Vec<BigInt> = line
            .split_whitespace()
            .map(|tok| {
                tok.parse::<BigInt>()
                    .map_err(|_| usage(format!("matrix file, row {}: invalid entry {tok:?}", i + 1)))
            })
            .collect::<Result<_, _>>()?;
        if row.len() != s {
            return Err(usage(format!(
                "matrix file, row {}: expected {s} entries, found {}",
                i + 1,
                row.len()
            )));
        }
        if let Some(neg) = row.iter().find(|x| x.is_negative()) {
            return Err(usage(format!(
                "matrix file, row {}: negative entry {neg}; the matrix must be nonnegative",
                i + 1
            )));
        }
        rows.push(row);
    }
    if let Some(extra) = lines.next() {
        return Err(usage(format!(
            "matrix file: trailing content after {s} rows: {extra:?}"
        )));
    }
    Ok(Matrix::from_rows(rows))
}

fn run_check(file: &Path, lambda: &str) -> CmdResult {
    let p = load_presentation(file)?;
    let lambda = parse_rational(lambda, "lambda")?;
    let r = check_small_cancellation(&p, &lambda);
    print!("{}", report::check_text(&r, p.alphabet()));
    Ok(if r.verdict.passed() { EXIT_OK } else { EXIT_NEGATIVE })
}

fn run_reduce(file: &Path, word: &str, force: bool) -> CmdResult {
    let p = load_presentation(file)?;
    let oracle = if force {
        DehnOracle::new_forced(&p)
    } else {
        DehnOracle::new(&p).map_err(usage)?
    };
    let w = parse_word(p.alphabet(), word).map_err(usage)?;
    let trace = oracle.dehn_reduce(&w);
    print!("{}", report::reduce_text(&trace, p.alphabet()));
    if trace.is_identity() {
        Ok(EXIT_OK)
    } else {
        println!(
            "witness\tkind=non-identity\tfinal={}",
            report::word_str(&trace.final_word, p.alphabet())
        );
        Ok(EXIT_NEGATIVE)
    }
}

fn run_ball(
    file: &Path,
    radius: usize,
    budget: Option<usize>,
    workers: usize,
    force: bool,
    order: Option<&str>,
) -> CmdResult {
    let p = load_presentation(file)?;
    let order = order.map(|t| parse_order(p.alphabet(), t)).transpose()?;
    let opts = ball_options(budget, workers, force, order)?;
    match enumerate_ball(&p, radius, &opts) {
        Ok(ball) => {
            let est = growth_estimates(&ball);
            print!("{}", report::ball_tsv(&ball, &est));
            if !ball.is_sound() {
                eprintln!("note: presentation fails C'(1/6); counts are upper bounds only");
            }
            Ok(EXIT_OK)
        }
        Err(CayleyError::BudgetExceeded {
            budget,
            reached,
            partial,
        }) => {
            let est = growth_estimates(&partial);
            print!("{}", report::ball_tsv(&partial, &est));
            eprintln!("element budget of {budget} exceeded; partial data through radius {reached}");
            Ok(EXIT_BUDGET)
        }
        Err(e) => Err(usage(e)),
    }
}

fn run_distance(
    file: &Path,
    word: &str,
    budget: Option<usize>,
    workers: usize,
    force: bool,
) -> CmdResult {
    let p = load_presentation(file)?;
    let w = parse_word(p.alphabet(), word).map_err(usage)?;
    let opts = ball_options(budget, workers, force, None)?;
    let d = distance(&p, &w, &opts).map_err(map_cayley_error)?;
    println!("word\t{}", report::word_str(&w, p.alphabet()));
    println!("distance\t{d}");
    Ok(EXIT_OK)
}

fn run_geodesic(
    file: &Path,
    word: &str,
    budget: Option<usize>,
    workers: usize,
    force: bool,
) -> CmdResult {
    let p = load_presentation(file)?;
    let w = parse_word(p.alphabet(), word).map_err(usage)?;
    let opts = ball_options(budget, workers, force, None)?;
    let geodesic = is_geodesic(&p, &w, &opts).map_err(map_cayley_error)?;
    println!("word\t{}", report::word_str(&w, p.alphabet()));
    println!("length\t{}", w.len());
    println!("geodesic\t{geodesic}");
    if geodesic {
        Ok(EXIT_OK)
    } else {
        let d = distance(&p, &w, &opts).map_err(map_cayley_error)?;
        println!(
            "witness\tkind=shorter-representative\tdistance={d}\tlength={}",
            w.len()
        );
        Ok(EXIT_NEGATIVE)
    }
}

#[allow(clippy::too_many_arguments)]
fn run_automaton(
    file: &Path,
    radius: usize,
    rho: usize,
    export: Option<&Path>,
    dot: Option<&Path>,
    budget: Option<usize>,
    workers: usize,
    force: bool,
) -> CmdResult {
    let p = load_presentation(file)?;
    let opts = ball_options(budget, workers, force, None)?;
    let ball = enumerate_ball(&p, radius, &opts).map_err(map_cayley_error)?;
    let aut = match build_cone_automaton(&ball, rho) {
        Ok(a) => a,
        Err(e) => {
            println!("construction\tfail: {e}");
            println!("witness\tkind=construction-failure\tradius={radius}\trho={rho}");
            return Ok(EXIT_NEGATIVE);
        }
    };
    let verdict = validate_automaton(&aut, &ball);
    let growth = spectral_radius(&aut.adjacency_matrix());
    print!("{}", report::automaton_text(&aut, &verdict, &growth));
    if let Some(path) = export {
        write_file(path, &aut.to_interchange(p.alphabet()))?;
    }
    if let Some(path) = dot {
        write_file(path, &aut.to_dot(p.alphabet()))?;
    }
    Ok(if verdict.passed() { EXIT_OK } else { EXIT_NEGATIVE })
}

fn run_blocks(file: &Path) -> CmdResult {
    let (aut, _alphabet) = load_automaton(file)?;
    let d = decompose_blocks(&aut.adjacency_matrix());
    print!("{}", report::blocks_text(&d));
    Ok(EXIT_OK)
}

fn run_check_p2(file: &Path, word: &str) -> CmdResult {
    let (aut, alphabet) = load_automaton(file)?;
    let w = parse_word(&alphabet, word).map_err(usage)?;
    let d = decompose_blocks(&aut.adjacency_matrix());
    let r = verify_important_implies_good(&aut, &d, &w);
    print!("{}", report::goodness_text(&r));
    Ok(if r.all_good { EXIT_OK } else { EXIT_NEGATIVE })
}

fn run_spectra(file: &Path, tol: Option<&str>) -> CmdResult {
    let m = parse_matrix(&read_file(file)?)?;
    let enclosure = match tol {
        Some(t) => spectral_radius_with(&m, &parse_rational(t, "tolerance")?),
        None => spectral_radius(&m),
    };
    println!("size\t{}", m.dim());
    println!("radius\t{}", report::enclosure_str(&enclosure));
    Ok(EXIT_OK)
}

fn load_word_file(path: &Path, alphabet: &Alphabet) -> Result<Vec<Word>, Failure> {
    read_file(path)?
        .lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| parse_word(alphabet, l).map_err(usage))
        .collect()
}

fn run_forbid(file: &Path, words: &Path) -> CmdResult {
    let (aut, alphabet) = load_automaton(file)?;
    let list = load_word_file(words, &alphabet)?;
    let count = list.len();
    let f = ForbiddenSet::new(list).map_err(usage)?;
    let v = spectral_radius(&aut.adjacency_matrix());
    let v_new = product_growth(&aut, &f);
    println!("forbidden-words\t{count}");
    print!("{}", report::growth_text("growth", &v));
    print!("{}", report::growth_text("avoiding-growth", &v_new));
    Ok(EXIT_OK)
}

fn run_lemma3(file: &Path, words: &Path, n: usize, no_enforce: bool) -> CmdResult {
    let (aut, alphabet) = load_automaton(file)?;
    let list = load_word_file(words, &alphabet)?;
    let f = ForbiddenSet::new(list).map_err(usage)?;
    let r = lemma3_check_with(&aut, &f, n, !no_enforce).map_err(usage)?;
    print!("{}", report::bound_text(&r));
    Ok(if r.passes { EXIT_OK } else { EXIT_NEGATIVE })
}

fn run_corollary1(file: &Path, word: &str) -> CmdResult {
    let (aut, alphabet) = load_automaton(file)?;
    let w = parse_word(&alphabet, word).map_err(usage)?;
    let r = corollary1_report(&aut, &w).map_err(usage)?;
    print!("{}", report::factor_text(&r));
    if !r.observational && r.v_fb.hi < r.lower_bound.lo {
        println!(
            "witness\tkind=estimate-violation\tavoiding-hi={}\tbound-lo={}",
            report::rational_str(&r.v_fb.hi),
            report::rational_str(&r.lower_bound.lo)
        );
        return Ok(EXIT_NEGATIVE);
    }
    Ok(EXIT_OK)
}

#[allow(clippy::too_many_arguments)]
fn run_family(
    e: &str,
    c: u32,
    i: &str,
    j: &str,
    radius: usize,
    report_path: Option<&Path>,
    budget: Option<usize>,
    workers: usize,
) -> CmdResult {
    let ladder = parse_u64_csv(e, "--E")?;
    let i_set = parse_index_csv(i, "--I")?;
    let j_set = parse_index_csv(j, "--J")?;
    let cfg = FamilyConfig::new(ladder, c).map_err(usage)?;
    let opts = ball_options(budget, workers, false, None)?;
    let r = separation_experiment(&i_set, &j_set, &cfg, radius, &opts).map_err(|e| match e {
        FamilyError::Cayley(inner) => map_cayley_error(inner),
        other => usage(other),
    })?;
    let text = report::separation_text(&r);
    print!("{text}");
    if let Some(path) = report_path {
        write_file(path, &text)?;
    }
    Ok(if r.separated { EXIT_OK } else { EXIT_NEGATIVE })
}

fn dispatch(cmd: &Cmd) -> CmdResult {
    match cmd {
        Cmd::Check { file, lambda } => run_check(file, lambda),
        Cmd::Reduce { file, word, force } => run_reduce(file, word, *force),
        Cmd::Ball {
            file,
            radius,
            budget,
            workers,
            force,
            order,
        } => run_ball(file, *radius, *budget, *workers, *force, order.as_deref()),
        Cmd::Distance {
            file,
            word,
            budget,
            workers,
            force,
        } => run_distance(file, word, *budget, *workers, *force),
        Cmd::Geodesic {
            file,
            word,
            budget,
            workers,
            force,
        } => run_geodesic(file, word, *budget, *workers, *force),
        Cmd::Automaton {
            file,
            radius,
            rho,
            export,
            dot,
            budget,
            workers,
            force,
        } => run_automaton(
            file,
            *radius,
            *rho,
            export.as_deref(),
            dot.as_deref(),
            *budget,
            *workers,
            *force,
        ),
        Cmd::Blocks { file } => run_blocks(file),
        Cmd::CheckP2 { file, word } => run_check_p2(file, word),
        Cmd::Spectra { file, tol } => run_spectra(file, tol.as_deref()),
        Cmd::Forbid { file, words } => run_forbid(file, words),
        Cmd::Lemma3 {
            file,
            words,
            n,
            no_enforce,
        } => run_lemma3(file, words, *n, *no_enforce),
        Cmd::Corollary1 { file, word } => run_corollary1(file, word),
        Cmd::Family {
            e,
            c,
            i,
            j,
            radius,
            report,
            budget,
            workers,
        } => run_family(e, *c, i, j, *radius, report.as_deref(), *budget, *workers),
    }
}

/// Parses `std::env::args` and runs one subcommand.
pub fn run() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            // clap renders help to stdout and errors to stderr.
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match dispatch(&cli.cmd) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrix_parser_round_trips_the_documented_format() {
        let m = parse_matrix("2\n1 1\n1 0\n").unwrap();
        assert_eq!(m.dim(), 2);
        assert_eq!(m[(0, 0)], BigInt::from(1));
        assert_eq!(m[(1, 1)], BigInt::from(0));
        assert!(parse_matrix("").is_err());
        assert!(parse_matrix("2\n1 1\n").is_err());
        assert!(parse_matrix("2\n1 1 1\n1 0\n").is_err());
        assert!(parse_matrix("2\n1 -1\n1 0\n").is_err());
        assert!(parse_matrix("2\n1 1\n1 0\n5\n").is_err());
    }

    #[test]
    fn index_csv_accepts_empty_and_lists() {
        assert_eq!(parse_index_csv("", "--I").unwrap(), Vec::<usize>::new());
        assert_eq!(parse_index_csv(" 1, 2 ", "--I").unwrap(), vec![1, 2]);
        assert!(parse_index_csv("1,x", "--I").is_err());
    }

    #[test]
    fn labels_parse_with_inverse_suffix() {
        let a = Alphabet::standard(2);
        assert_eq!(parse_label(&a, "a").unwrap(), Lit::new(0, false));
        assert_eq!(parse_label(&a, "b^-1").unwrap(), Lit::new(1, true));
        assert!(parse_label(&a, "c").is_err());
        let order = parse_order(&a, "b,b^-1,a,a^-1").unwrap();
        let mut labels = [
            Lit::new(0, false),
            Lit::new(0, true),
            Lit::new(1, false),
            Lit::new(1, true),
        ];
        labels.sort_by_key(|&l| order.rank_of(l));
        assert_eq!(labels[0], Lit::new(1, false));
        assert!(parse_order(&a, "a,b").is_err());
        assert!(parse_order(&a, "a,a,b,b^-1").is_err());
    }

    #[test]
    fn budget_resolution_prefers_flag_over_default() {
        assert_eq!(resolve_budget(Some(77)).unwrap(), 77);
        // Without the flag the value is either the environment override or
        // the library default; both are positive.
        assert!(resolve_budget(None).unwrap() >= 1);
    }

    #[test]
    fn command_line_shape_is_accepted() {
        assert!(Cli::try_parse_from(["scgrowth", "check", "p.txt", "--lambda", "1/8"]).is_ok());
        assert!(Cli::try_parse_from(["scgrowth", "ball", "p.txt", "--radius", "3"]).is_ok());
        assert!(Cli::try_parse_from([
            "scgrowth", "family", "--E", "2,5", "--c", "3", "--I", "1", "--J", "2", "--radius",
            "8",
        ])
        .is_ok());
        assert!(Cli::try_parse_from(["scgrowth", "check-p2", "a.txt", "--word", "a b"]).is_ok());
        assert!(Cli::try_parse_from(["scgrowth", "nonsense"]).is_err());
        assert!(Cli::try_parse_from(["scgrowth", "ball", "p.txt", "--radius", "3", "--bogus"])
            .is_err());
    }
}
