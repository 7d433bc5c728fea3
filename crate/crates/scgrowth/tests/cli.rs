//! End-to-end checks of the command-line surface: exit codes, witness
//! lines, golden output bytes, worker-count determinism, and the
//! environment-variable budget contract.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_scgrowth")
}

/// Runs the binary with a scrubbed budget environment unless the test sets
/// one explicitly.
fn run_env(args: &[&str], envs: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(bin());
    cmd.args(args).env_remove("SCGROWTH_BUDGET");
    for (k, v) in envs {
        cmd.env(k, v);
    }
    cmd.output().expect("binary must run")
}

fn run(args: &[&str]) -> Output {
    run_env(args, &[])
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("stdout must be UTF-8")
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).expect("stderr must be UTF-8")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("process must exit normally")
}

struct Fixtures {
    dir: tempfile::TempDir,
}

impl Fixtures {
    fn new() -> Fixtures {
        Fixtures {
            dir: tempfile::tempdir().unwrap(),
        }
    }

    fn write(&self, name: &str, content: &str) -> PathBuf {
        let path = self.dir.path().join(name);
        std::fs::write(&path, content).unwrap();
        path
    }

    fn path(&self, name: &str) -> PathBuf {
        self.dir.path().join(name)
    }
}

fn free_file(f: &Fixtures) -> PathBuf {
    f.write("free.txt", "generators: a b\nrelators:\n")
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn check_pass_and_fail_exit_codes() {
    let f = Fixtures::new();
    let surface = f.write(
        "surface.txt",
        "generators: a b c d\nrelators: a b a^-1 b^-1 c d c^-1 d^-1\n",
    );
    let ok = run(&["check", s(&surface)]);
    assert_eq!(code(&ok), 0, "stderr: {}", stderr(&ok));
    assert!(stdout(&ok).contains("max-piece\t1"), "got: {}", stdout(&ok));

    let shared = f.write("shared.txt", "generators: a b\nrelators: a^3 b\na^3 b^-1\n");
    let fail = run(&["check", s(&shared)]);
    assert_eq!(code(&fail), 1);
    let out = stdout(&fail);
    assert!(out.contains("witness\tkind=piece"), "got: {out}");
    assert!(out.contains("piece=a a a"), "got: {out}");
}

#[test]
fn reduce_identity_and_nonidentity() {
    let f = Fixtures::new();
    let p = f.write("g.txt", "generators: a b\nrelators: (a b)^6\n");
    let id = run(&["reduce", s(&p), "(a b)^6"]);
    assert_eq!(code(&id), 0);
    assert!(stdout(&id).contains("identity\ttrue"), "got: {}", stdout(&id));

    let non = run(&["reduce", s(&p), "a b"]);
    assert_eq!(code(&non), 1);
    assert!(
        stdout(&non).contains("witness\tkind=non-identity\tfinal=a b"),
        "got: {}",
        stdout(&non)
    );
}

const FREE_BALL_3: &str = "n\tsphere\tball\troot\tratio\n\
    0\t1\t1\t-\t-\n\
    1\t4\t5\t5.000000\t4\n\
    2\t12\t17\t4.123106\t3\n\
    3\t36\t53\t3.756286\t3\n";

#[test]
fn ball_golden_tsv_and_budget_sources() {
    let f = Fixtures::new();
    let free = free_file(&f);

    let plain = run(&["ball", s(&free), "--radius", "3"]);
    assert_eq!(code(&plain), 0);
    assert_eq!(stdout(&plain), FREE_BALL_3);

    // A valid environment budget that is large enough changes nothing.
    let env_ok = run_env(
        &["ball", s(&free), "--radius", "3"],
        &[("SCGROWTH_BUDGET", "1000000")],
    );
    assert_eq!(code(&env_ok), 0);
    assert_eq!(stdout(&env_ok), FREE_BALL_3);

    // An invalid environment budget is a usage error when consulted…
    let env_bad = run_env(
        &["ball", s(&free), "--radius", "3"],
        &[("SCGROWTH_BUDGET", "plenty")],
    );
    assert_eq!(code(&env_bad), 2);
    assert!(stderr(&env_bad).contains("SCGROWTH_BUDGET"), "got: {}", stderr(&env_bad));

    // …but the explicit flag wins without reading the variable.
    let flag_wins = run_env(
        &["ball", s(&free), "--radius", "3", "--budget", "100000"],
        &[("SCGROWTH_BUDGET", "plenty")],
    );
    assert_eq!(code(&flag_wins), 0);
    assert_eq!(stdout(&flag_wins), FREE_BALL_3);
}

#[test]
fn ball_worker_count_is_invisible_in_output() {
    let f = Fixtures::new();
    let p = f.write("g.txt", "generators: a b\nrelators: (a b)^6\n");
    let mut outputs = Vec::new();
    for workers in ["1", "2", "4"] {
        let o = run(&["ball", s(&p), "--radius", "6", "--workers", workers]);
        assert_eq!(code(&o), 0);
        outputs.push(stdout(&o));
    }
    assert_eq!(outputs[0], outputs[1]);
    assert_eq!(outputs[0], outputs[2]);
    assert!(
        outputs[0].contains("6\t970\t1455\t3.366230\t485/162"),
        "got: {}",
        outputs[0]
    );
}

#[test]
fn ball_budget_exhaustion_prints_partial_data() {
    let f = Fixtures::new();
    let free = free_file(&f);
    let o = run(&["ball", s(&free), "--radius", "12", "--budget", "100"]);
    assert_eq!(code(&o), 3);
    assert!(stdout(&o).starts_with("n\tsphere\tball"), "got: {}", stdout(&o));
    assert!(stderr(&o).contains("budget"), "got: {}", stderr(&o));
}

#[test]
fn distance_and_geodesic_witness() {
    let f = Fixtures::new();
    let p = f.write("g.txt", "generators: a b\nrelators: (a^2 b^2)^3\n");
    let d = run(&["distance", s(&p), "(a^2 b^2)^2"]);
    assert_eq!(code(&d), 0);
    assert!(stdout(&d).contains("distance\t4"), "got: {}", stdout(&d));

    let g = run(&["geodesic", s(&p), "(a^2 b^2)^2"]);
    assert_eq!(code(&g), 1);
    let out = stdout(&g);
    assert!(
        out.contains("witness\tkind=shorter-representative\tdistance=4\tlength=8"),
        "got: {out}"
    );

    let ok = run(&["geodesic", s(&p), "b^8"]);
    assert_eq!(code(&ok), 0);
    assert!(stdout(&ok).contains("geodesic\ttrue"));
}

#[test]
fn automaton_export_feeds_blocks_checkp2_forbid_lemma3_corollary1() {
    let f = Fixtures::new();
    let free = free_file(&f);
    let aut_path = f.path("free_automaton.txt");
    let dot_path = f.path("free_automaton.dot");

    let built = run(&[
        "automaton",
        s(&free),
        "--radius",
        "6",
        "--rho",
        "1",
        "--export",
        s(&aut_path),
        "--dot",
        s(&dot_path),
    ]);
    assert_eq!(code(&built), 0, "stderr: {}", stderr(&built));
    assert!(stdout(&built).contains("validation\tpass"), "got: {}", stdout(&built));

    // The exported interchange file round-trips through the library.
    let text = std::fs::read_to_string(&aut_path).unwrap();
    let (aut, _alphabet) = scgrowth::automaton::from_interchange(&text).unwrap();
    assert_eq!(aut.num_states(), 5);
    assert!(aut.is_deterministic());
    let counts = aut.path_counts(3);
    let expect: Vec<num_bigint::BigInt> =
        [1, 4, 12, 36].iter().map(|&x| num_bigint::BigInt::from(x)).collect();
    assert_eq!(counts, expect);
    assert!(std::fs::read_to_string(&dot_path).unwrap().starts_with("digraph"));

    let blocks = run(&["blocks", s(&aut_path)]);
    assert_eq!(code(&blocks), 0);
    assert!(stdout(&blocks).contains("block"), "got: {}", stdout(&blocks));

    let p2 = run(&["check-p2", s(&aut_path), "--word", "(a^2 b^2)^3"]);
    assert_eq!(code(&p2), 0, "stderr: {}", stderr(&p2));
    assert!(
        stdout(&p2).contains("all-important-blocks-good\ttrue"),
        "got: {}",
        stdout(&p2)
    );

    let words = f.write("forbidden.txt", "a a\nb b\n");
    let forbid = run(&["forbid", s(&aut_path), "--words", s(&words)]);
    assert_eq!(code(&forbid), 0, "stderr: {}", stderr(&forbid));
    let out = stdout(&forbid);
    assert!(out.contains("forbidden-words\t2"), "got: {out}");
    assert!(out.contains("avoiding-growth"), "got: {out}");

    // Words of length exactly 4N with N at least the state count.
    let long = f.write("long.txt", "(a b)^10\n");
    let l3 = run(&["lemma3", s(&aut_path), "--words", s(&long), "--N", "5"]);
    assert_eq!(code(&l3), 0, "stderr: {}", stderr(&l3));
    assert!(stdout(&l3).contains("passes\ttrue"), "got: {}", stdout(&l3));

    // N = 2 < 5 states: hypothesis enforcement is a usage error.
    let refused = run(&["lemma3", s(&aut_path), "--words", s(&long), "--N", "2"]);
    assert_eq!(code(&refused), 2);
    assert!(stderr(&refused).contains("states"), "got: {}", stderr(&refused));

    let c1 = run(&["corollary1", s(&aut_path), "--word", "(a b)^26"]);
    assert_eq!(code(&c1), 0, "stderr: {}", stderr(&c1));
    assert!(stdout(&c1).contains("lower-bound"), "got: {}", stdout(&c1));

    let short = run(&["corollary1", s(&aut_path), "--word", "a b"]);
    assert_eq!(code(&short), 2);
}

#[test]
fn spectra_golden_enclosure() {
    let f = Fixtures::new();
    let m = f.write("fib.txt", "2\n1 1\n1 0\n");
    let o = run(&["spectra", s(&m)]);
    assert_eq!(code(&o), 0);
    assert_eq!(
        stdout(&o),
        "size\t2\nradius\t[5702887/3524578, 9227465/5702887] \u{2248} \
         [1.618033988749, 1.618033988749] via power-iteration\n"
    );

    let coarse = run(&["spectra", s(&m), "--tol", "1/100"]);
    assert_eq!(code(&coarse), 0);
    assert!(stdout(&coarse).contains("via power-iteration"));

    let bad = f.write("bad.txt", "2\n1 1\n1\n");
    assert_eq!(code(&run(&["spectra", s(&bad)])), 2);

    let negative = f.write("neg.txt", "2\n1 -1\n1 0\n");
    assert_eq!(code(&run(&["spectra", s(&negative)])), 2);
}

#[test]
fn family_report_file_matches_stdout_and_workers_are_invisible() {
    let f = Fixtures::new();
    let report_path = f.path("report.txt");
    let base = [
        "family", "--E", "2,5", "--c", "3", "--I", "1", "--J", "2", "--radius", "6",
    ];

    let mut with_report = base.to_vec();
    with_report.extend_from_slice(&["--report", s(&report_path)]);
    let first = run(&with_report);
    let out = stdout(&first);
    // Exit code mirrors the separation verdict printed in the report.
    let expected_code = if out.contains("separated\ttrue") { 0 } else { 1 };
    assert_eq!(code(&first), expected_code, "stderr: {}", stderr(&first));
    assert_eq!(std::fs::read_to_string(&report_path).unwrap(), out);
    assert!(out.contains("== comparison chain =="), "got: {out}");

    for workers in ["1", "2", "4"] {
        let mut args = base.to_vec();
        args.extend_from_slice(&["--workers", workers]);
        let o = run(&args);
        assert_eq!(stdout(&o), out, "worker count must not change report bytes");
    }
}

#[test]
fn usage_errors_and_help() {
    let f = Fixtures::new();
    let free = free_file(&f);

    assert_eq!(code(&run(&[])), 2);
    assert_eq!(code(&run(&["no-such-command"])), 2);
    assert_eq!(code(&run(&["check", "/nonexistent/file.txt"])), 2);
    assert_eq!(code(&run(&["check", s(&free), "--lambda", "0"])), 2);
    assert_eq!(code(&run(&["check", s(&free), "--lambda", "-1/6"])), 2);
    assert_eq!(code(&run(&["ball", s(&free), "--radius", "2", "--order", "x"])), 2);

    let help = run(&["--help"]);
    assert_eq!(code(&help), 0);
    assert!(stdout(&help).contains("ball"));

    let sub_help = run(&["ball", "--help"]);
    assert_eq!(code(&sub_help), 0);
    assert!(stdout(&sub_help).contains("--radius"));
}
