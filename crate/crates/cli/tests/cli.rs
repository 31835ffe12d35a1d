use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spectral-paths"))
        .args(args)
        .env_remove("RUST_LOG")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn assert_fails(out: &Output, code: i32, tag: &str) {
    assert_eq!(out.status.code(), Some(code), "stderr: {}", stderr(out));
    let err = stderr(out);
    assert_eq!(err.lines().count(), 1, "{err}");
    assert!(err.starts_with(&format!("error[{tag}]")), "{err}");
}

fn path_arg(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn petersen_diameter_pair() {
    let out = run(&[
        "solve",
        "--builtin",
        "petersen",
        "--from",
        "0",
        "--to",
        "7",
        "--verify",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[1], "length 2");
    assert_eq!(lines[2], "bfs 2");
    assert_eq!(lines[3], "excess 0");
    let vs: Vec<&str> = lines[0].split(' ').collect();
    assert_eq!((vs[0], vs[2]), ("0", "7"));
}

#[test]
fn same_vertex_is_a_trivial_path() {
    let out = run(&["solve", "--builtin", "petersen", "--from", "3", "--to", "3"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "3\nlength 0\n");
}

#[test]
fn labels_from_the_file_are_kept() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("g.txt");
    fs::write(&file, "# sparse labels\n10 20\n20 30\n30 40\n").unwrap();
    let out = run(&[
        "--no-symmetrize",
        "solve",
        "--file",
        path_arg(&file),
        "--from",
        "40",
        "--to",
        "10",
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert_eq!(stdout(&out), "40 30 20 10\nlength 3\n");

    let out = run(&["landscape", "--file", path_arg(&file), "--pin", "10"]);
    let csv = stdout(&out);
    assert_eq!(csv.lines().next(), Some("vertex,phi,component,mu"));
    assert_eq!(csv.lines().nth(1), Some("10,0,,"));
    assert_eq!(csv.lines().count(), 5);
}

#[test]
fn error_paths_print_one_line() {
    let dir = tempfile::tempdir().unwrap();
    let split = dir.path().join("split.txt");
    fs::write(&split, "0 1\n2 3\n").unwrap();
    assert_fails(
        &run(&[
            "solve",
            "--file",
            path_arg(&split),
            "--from",
            "0",
            "--to",
            "3",
        ]),
        2,
        "disconnected",
    );
    assert!(stderr(&run(&[
        "solve",
        "--file",
        path_arg(&split),
        "--from",
        "0",
        "--to",
        "3"
    ]))
    .contains("disconnected"));

    let bad = dir.path().join("bad.txt");
    fs::write(&bad, "0 1\n1 x\n").unwrap();
    assert_fails(
        &run(&[
            "solve",
            "--file",
            path_arg(&bad),
            "--from",
            "0",
            "--to",
            "1",
        ]),
        2,
        "parse",
    );

    let missing = dir.path().join("missing.txt");
    assert_fails(
        &run(&[
            "solve",
            "--file",
            path_arg(&missing),
            "--from",
            "0",
            "--to",
            "1",
        ]),
        2,
        "io",
    );
    assert_fails(
        &run(&[
            "solve",
            "--builtin",
            "petersen",
            "--from",
            "0",
            "--to",
            "10",
        ]),
        2,
        "bad-vertex",
    );
    assert_fails(
        &run(&["solve", "--builtin", "hexagon", "--from", "0", "--to", "1"]),
        1,
        "usage",
    );
    assert_fails(&run(&["solve", "--from", "0", "--to", "1"]), 1, "usage");
    assert_fails(&run(&["--frobnicate", "solve"]), 1, "usage");
    assert_fails(
        &run(&[
            "--laplacian",
            "heat",
            "solve",
            "--builtin",
            "petersen",
            "--from",
            "0",
            "--to",
            "1",
        ]),
        1,
        "usage",
    );
    assert_fails(
        &run(&["--threads", "0", "gen", "tree", "--n", "4"]),
        1,
        "usage",
    );
    assert_fails(&run(&["bench", "--family", "er", "--n", "10"]), 1, "usage");
    assert_fails(
        &run(&["bench", "--family", "tree", "--n", "10", "--pairs", "0"]),
        1,
        "usage",
    );
    assert_fails(
        &run(&[
            "--tol-residual",
            "1e-300",
            "solve",
            "--builtin",
            "path:200",
            "--from",
            "0",
            "--to",
            "199",
        ]),
        3,
        "not-converged",
    );
}

#[test]
fn generated_graphs_feed_back_in() {
    let dir = tempfile::tempdir().unwrap();
    let edges = dir.path().join("geo.txt");
    let coords = dir.path().join("geo.csv");
    let args = [
        "--seed",
        "4",
        "--output",
        path_arg(&edges),
        "gen",
        "geometric",
        "--n",
        "60",
        "--radius",
        "0.6",
        "--coords",
        path_arg(&coords),
    ];
    assert!(run(&args).status.success());
    let first = fs::read_to_string(&edges).unwrap();
    assert!(first.starts_with("n 60\n"));
    assert_eq!(fs::read_to_string(&coords).unwrap().lines().count(), 61);
    assert!(run(&args).status.success());
    assert_eq!(fs::read_to_string(&edges).unwrap(), first);

    let tree = run(&["--seed", "9", "gen", "tree", "--n", "30"]);
    let file = dir.path().join("tree.txt");
    fs::write(&file, tree.stdout).unwrap();
    let out = run(&[
        "bench",
        "--family",
        "file",
        "--file",
        path_arg(&file),
        "--no-symmetrize",
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["fraction_optimal"], 1.0);
    assert_eq!(report["pairs_evaluated"], 30 * 29);
    assert_eq!(report["graph"]["file_sha256"].as_str().unwrap().len(), 64);
}

#[test]
fn bench_reports_are_reproducible_across_thread_counts() {
    let dir = tempfile::tempdir().unwrap();
    let mut outputs = Vec::new();
    for (i, threads) in ["1", "4", "1", "4"].iter().enumerate() {
        let file = dir.path().join(format!("r{i}.json"));
        let out = run(&[
            "--threads",
            threads,
            "--seed",
            "12",
            "--output",
            path_arg(&file),
            "bench",
            "--family",
            "geometric",
            "--n",
            "80",
            "--radius",
            "0.45",
            "--reps",
            "2",
            "--pairs",
            "300",
            "--record-pairs",
        ]);
        assert!(out.status.success(), "{}", stderr(&out));
        assert!(stdout(&out).starts_with("family"));
        outputs.push(fs::read(&file).unwrap());
    }
    assert!(outputs.iter().all(|o| *o == outputs[0]));
    let report: serde_json::Value = serde_json::from_slice(&outputs[0]).unwrap();
    assert_eq!(report["reports"].as_array().unwrap().len(), 2);
}

#[test]
fn compare_lists_every_laplacian() {
    let out = run(&["compare", "--builtin", "petersen"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let kinds: Vec<&str> = v["reports"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["kind"].as_str().unwrap())
        .collect();
    assert_eq!(kinds, ["combinatorial", "random-walk", "sym-normalized"]);
    for r in v["reports"].as_array().unwrap() {
        assert_eq!(r["fraction_optimal"], 1.0);
    }
}

#[test]
fn symmetrize_flags_override_each_other() {
    for args in [
        ["--symmetrize", "--no-symmetrize"],
        ["--no-symmetrize", "--symmetrize"],
    ] {
        let mut full = args.to_vec();
        full.extend(["bench", "--family", "builtin", "--builtin", "cycle:6"]);
        let out = run(&full);
        assert!(out.status.success(), "{}", stderr(&out));
        let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
        assert_eq!(v["symmetrize"], args[1] == "--symmetrize");
        assert_eq!(
            v["pairs_evaluated"],
            if args[1] == "--symmetrize" { 15 } else { 30 }
        );
    }
}
