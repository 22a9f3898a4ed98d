//! End-to-end runs of the `urm` binary: exit codes, output formats, and
//! byte-level determinism.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use urm_core::graph::write_graph;
use urm_core::instances::{fig1, fig1_intervals};
use urm_core::intervals::write_ivg;
use urm_core::matching::write_matching;

fn urm(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_urm"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

struct TempDir(PathBuf);

impl TempDir {
    fn new(tag: &str) -> Self {
        let path = std::env::temp_dir().join(format!("urm-cli-{tag}-{}", std::process::id()));
        std::fs::create_dir_all(&path).unwrap();
        TempDir(path)
    }

    fn path(&self) -> &Path {
        &self.0
    }

    fn write(&self, name: &str, content: &str) -> PathBuf {
        let p = self.0.join(name);
        std::fs::write(&p, content).unwrap();
        p
    }
}

impl Drop for TempDir {
    fn drop(&mut self) {
        let _ = std::fs::remove_dir_all(&self.0);
    }
}

#[test]
fn solve_proper_interval_on_fig1_graph_file() {
    let dir = TempDir::new("fig1");
    let fx = fig1();
    dir.write("fig1.graph", &write_graph(&fx.graph, Some(&fx.ordering)));
    let out = urm(
        &[
            "solve",
            "--class",
            "proper-interval",
            "--input",
            "fig1.graph",
        ],
        dir.path(),
    );
    assert!(out.status.success());
    assert!(
        stdout(&out).starts_with("size 3\n"),
        "got: {}",
        stdout(&out)
    );
}

#[test]
fn solve_interval_on_fig1_ivg() {
    let dir = TempDir::new("fig1ivg");
    dir.write("fig1.ivg", &write_ivg(&fig1_intervals()));
    let out = urm(
        &[
            "solve", "--class", "interval", "--input", "fig1.ivg", "--verify",
        ],
        dir.path(),
    );
    assert!(out.status.success());
    assert!(stdout(&out).starts_with("size 3\n"));
    assert!(stdout(&out).contains("verify uniqueness-oracle: ok"));
}

#[test]
fn solve_requires_order_line() {
    let dir = TempDir::new("noorder");
    let fx = fig1();
    dir.write("plain.graph", &write_graph(&fx.graph, None));
    let out = urm(
        &[
            "solve",
            "--class",
            "proper-interval",
            "--input",
            "plain.graph",
        ],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn parse_errors_exit_one() {
    let dir = TempDir::new("badparse");
    dir.write("bad.graph", "2 1\n0 0\n");
    let out = urm(
        &[
            "solve",
            "--class",
            "proper-interval",
            "--input",
            "bad.graph",
        ],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn class_validation_exits_two_with_witness() {
    let dir = TempDir::new("badord");
    // A path ordered 0 2 1 is not a proper vertex ordering.
    dir.write("bad.graph", "3 2\norder: 0 2 1\n0 1\n1 2\n");
    let out = urm(
        &[
            "solve",
            "--class",
            "proper-interval",
            "--input",
            "bad.graph",
        ],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr).into_owned();
    assert!(
        err.contains("not a proper vertex ordering"),
        "stderr: {err}"
    );
}

#[test]
fn verify_oracle_accepts_fig1_bold_matching() {
    let dir = TempDir::new("verifyok");
    let fx = fig1();
    dir.write("g.graph", &write_graph(&fx.graph, Some(&fx.ordering)));
    dir.write("m.matching", &write_matching(&fx.urm));
    let out = urm(
        &[
            "verify",
            "--graph",
            "g.graph",
            "--matching",
            "m.matching",
            "--method",
            "oracle",
        ],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn verify_rejects_c4_perfect_matching_with_exit_four() {
    let dir = TempDir::new("verifyc4");
    dir.write("c4.graph", "4 4\n0 1\n1 2\n2 3\n0 3\n");
    dir.write("pm.matching", "size 2\n0 1\n2 3\n");
    let out = urm(
        &[
            "verify",
            "--graph",
            "c4.graph",
            "--matching",
            "pm.matching",
            "--method",
            "oracle",
        ],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(4));
    assert!(stdout(&out).contains("NOT uniquely restricted"));
}

#[test]
fn verify_pairwise_prints_witness_pair() {
    let dir = TempDir::new("verifypair");
    let fx = fig1();
    dir.write("g.graph", &write_graph(&fx.graph, Some(&fx.ordering)));
    dir.write("m.matching", "size 2\n0 1\n2 3\n");
    let out = urm(
        &[
            "verify",
            "--graph",
            "g.graph",
            "--matching",
            "m.matching",
            "--method",
            "pairwise",
        ],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(4));
    assert!(
        stdout(&out).contains("0-1"),
        "witness pair expected: {}",
        stdout(&out)
    );
}

#[test]
fn verify_not_a_matching_exits_two() {
    let dir = TempDir::new("verifynm");
    let fx = fig1();
    dir.write("g.graph", &write_graph(&fx.graph, Some(&fx.ordering)));
    dir.write("m.matching", "size 2\n0 1\n1 2\n");
    let out = urm(
        &[
            "verify",
            "--graph",
            "g.graph",
            "--matching",
            "m.matching",
            "--method",
            "oracle",
        ],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_consecutive_methods() {
    let dir = TempDir::new("verifycons");
    let fx = fig1();
    dir.write("g.graph", &write_graph(&fx.graph, Some(&fx.ordering)));
    dir.write("good.matching", &write_matching(&fx.urm));
    dir.write("bad.matching", "size 3\n0 1\n2 3\n4 5\n");
    let ok = urm(
        &[
            "verify",
            "--graph",
            "g.graph",
            "--matching",
            "good.matching",
            "--method",
            "consecutive",
            "--class",
            "proper-interval",
        ],
        dir.path(),
    );
    assert_eq!(ok.status.code(), Some(0));
    let bad = urm(
        &[
            "verify",
            "--graph",
            "g.graph",
            "--matching",
            "bad.matching",
            "--method",
            "consecutive",
            "--class",
            "proper-interval",
        ],
        dir.path(),
    );
    assert_eq!(bad.status.code(), Some(4));
    assert!(
        stdout(&bad).contains("0-1 and 2-3"),
        "got: {}",
        stdout(&bad)
    );
}

#[test]
fn oracle_command_matches_demo_size() {
    let dir = TempDir::new("oraclecmd");
    let fx = fig1();
    dir.write("g.graph", &write_graph(&fx.graph, Some(&fx.ordering)));
    let out = urm(&["oracle", "--input", "g.graph"], dir.path());
    assert!(out.status.success());
    assert!(stdout(&out).starts_with("size 3\n"));
}

#[test]
fn gen_outputs_are_byte_identical_across_runs() {
    let dir = TempDir::new("genbytes");
    for (args, name) in [
        (
            vec![
                "gen",
                "--kind",
                "unit-intervals",
                "--n",
                "40",
                "--span",
                "90",
                "--seed",
                "7",
            ],
            "u",
        ),
        (
            vec![
                "gen",
                "--kind",
                "intervals",
                "--n",
                "40",
                "--span",
                "90",
                "--seed",
                "7",
            ],
            "i",
        ),
        (
            vec![
                "gen", "--kind", "bip-perm", "--p", "6", "--q", "9", "--seed", "7",
            ],
            "b",
        ),
    ] {
        let mut args1 = args.clone();
        let out1 = format!("{name}1.out");
        args1.extend(["--out", &out1]);
        let mut args2 = args.clone();
        let out2 = format!("{name}2.out");
        args2.extend(["--out", &out2]);
        assert!(urm(&args1, dir.path()).status.success());
        assert!(urm(&args2, dir.path()).status.success());
        let b1 = std::fs::read(dir.path().join(&out1)).unwrap();
        let b2 = std::fs::read(dir.path().join(&out2)).unwrap();
        assert_eq!(b1, b2, "{name} output must be deterministic");
        assert_eq!(b1.last(), Some(&b'\n'), "outputs end with a newline");
    }
}

#[test]
fn solve_round_trips_through_oracle_verification() {
    let dir = TempDir::new("roundtrip");
    // (gen kind, gen args, solve class, input name)
    let cases: [(&str, Vec<&str>, &str, &str); 3] = [
        (
            "intervals",
            vec!["--n", "7", "--span", "18"],
            "interval",
            "i.ivg",
        ),
        (
            "unit-intervals",
            vec!["--n", "9", "--span", "25"],
            "proper-interval",
            "u.ivg",
        ),
        (
            "bip-perm",
            vec!["--p", "3", "--q", "5"],
            "bip-perm",
            "b.graph",
        ),
    ];
    for seed in ["3", "4", "5"] {
        for (kind, extra, class, input) in &cases {
            let input = format!("{seed}-{input}");
            let matching = format!("{input}.matching");
            let mut gen_args = vec!["gen", "--kind", kind, "--seed", seed, "--out", &input];
            gen_args.extend(extra.iter().copied());
            assert!(urm(&gen_args, dir.path()).status.success());
            assert!(urm(
                &["solve", "--class", class, "--input", &input, "--out", &matching],
                dir.path()
            )
            .status
            .success());
            let out = urm(
                &[
                    "verify",
                    "--graph",
                    &input,
                    "--matching",
                    &matching,
                    "--method",
                    "oracle",
                ],
                dir.path(),
            );
            assert_eq!(out.status.code(), Some(0), "{class} seed {seed}");
        }
    }
}

#[test]
fn family_gen_round_trips_through_verify() {
    let dir = TempDir::new("famgen");
    assert!(urm(
        &["gen", "--kind", "family", "--k", "8", "--out", "f.graph"],
        dir.path()
    )
    .status
    .success());
    let out = urm(
        &[
            "verify",
            "--graph",
            "f.graph",
            "--matching",
            "f.matching",
            "--method",
            "oracle",
        ],
        dir.path(),
    );
    assert_eq!(
        out.status.code(),
        Some(4),
        "the family matching is never uniquely restricted"
    );
    assert!(stdout(&out).contains("alternating cycle:"));
}

#[test]
fn demo_fig1_reports_both_sizes() {
    let dir = TempDir::new("demo");
    let out = urm(&["demo", "fig1"], dir.path());
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("size 3"), "solver size: {text}");
    assert!(text.contains("size 2"), "baseline size: {text}");
}

#[test]
fn bench_empty_schedule_prints_header_only() {
    let dir = TempDir::new("bench0");
    let out = urm(&["bench", "--class", "proper-interval"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "v1\n");
}

#[test]
fn bench_json_schema_line() {
    let dir = TempDir::new("benchjson");
    let out = urm(
        &[
            "bench", "--class", "nest-sis", "--sizes", "12,24", "--format", "json", "--verify",
        ],
        dir.path(),
    );
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some(r#"{"schema":"v1"}"#));
    for line in lines {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(v["class"], "nest-sis");
        assert_eq!(v["verify"], true);
    }
    assert_eq!(text.lines().count(), 3);
}

#[test]
fn solve_nest_sis_single_vertex() {
    let dir = TempDir::new("nest1");
    dir.write("one.nest", "1\n0 1 2 3 4\n");
    let out = urm(
        &["solve", "--class", "nest-sis", "--input", "one.nest"],
        dir.path(),
    );
    assert!(out.status.success());
    assert_eq!(stdout(&out), "size 1\n0\n");
}

#[test]
fn solve_json_is_stable() {
    let dir = TempDir::new("solvejson");
    dir.write("k2.ivg", "2\n0 1 3\n1 2 4\n");
    let a = urm(
        &[
            "solve", "--class", "interval", "--input", "k2.ivg", "--format", "json",
        ],
        dir.path(),
    );
    let b = urm(
        &[
            "solve", "--class", "interval", "--input", "k2.ivg", "--format", "json",
        ],
        dir.path(),
    );
    assert_eq!(stdout(&a), stdout(&b));
    let v: serde_json::Value = serde_json::from_str(stdout(&a).trim()).unwrap();
    assert_eq!(v["schema"], "v1");
    assert_eq!(v["size"], 1);
}
