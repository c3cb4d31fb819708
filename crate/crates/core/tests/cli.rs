use std::path::PathBuf;
use std::process::{Command, Output};

use patmine::fixtures;

fn scratch(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("cli");
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn patmine(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_patmine"))
        .args(args)
        .env_remove("PATMINE_SEED")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn fixture_file() -> String {
    let path = scratch("hexagon.graphs");
    std::fs::write(&path, fixtures::GRAPH_FILE).unwrap();
    path.to_string_lossy().into_owned()
}

/// The fixture split into an examples file and a separate template file.
fn split_fixture() -> (String, String) {
    let text = fixtures::GRAPH_FILE;
    let cut = text.find("t # 2 template").unwrap();
    let examples = scratch("split-examples.graphs");
    let template = scratch("split-template.graphs");
    std::fs::write(&examples, &text[..cut]).unwrap();
    std::fs::write(&template, format!("mode undirected\n{}", &text[cut..])).unwrap();
    (
        examples.to_string_lossy().into_owned(),
        template.to_string_lossy().into_owned(),
    )
}

fn check_all(patterns: &str, data: &[&str]) -> Output {
    let mut args = vec!["check", "--pattern", patterns];
    args.extend_from_slice(data);
    patmine(&args)
}

#[test]
fn mine_then_check_on_the_hexagon_instance() {
    let data = fixture_file();
    let (ex, tp) = split_fixture();
    for (name, source) in [
        ("joined.pat", vec!["--examples", data.as_str()]),
        ("split.pat", vec!["--examples", ex.as_str(), "--template", tp.as_str()]),
    ] {
        let out = scratch(name);
        let out_s = out.to_string_lossy().into_owned();
        let mut args = vec!["mine"];
        args.extend(&source);
        args.extend([
            "--npos", "1", "--nneg", "0", "--min-size", "6", "--max-size", "6", "--jobs", "2", "--out", &out_s,
        ]);
        let o = patmine(&args);
        assert!(o.status.success(), "{}", stderr(&o));
        let report = stdout(&o);
        assert!(report.contains("5 patterns in"), "{report}");
        assert!(report.contains("vertices=0,1,2,3,4,5"), "{report}");

        let written = std::fs::read_to_string(&out).unwrap();
        assert_eq!(written.lines().filter(|l| l.starts_with("p # ")).count(), 5);
        let o = check_all(&out_s, &source);
        assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
        assert_eq!(stdout(&o).matches(": valid").count(), 5);
    }
}

#[test]
fn every_mined_pattern_passes_check() {
    let out = scratch("small.pat");
    let out_s = out.to_string_lossy().into_owned();
    for strategy in ["decomposed", "monolithic"] {
        let source = ["--preset", "yoshida-small", "--npos-frac", "0.2", "--nneg", "0"];
        let mut args = vec!["mine", "--strategy", strategy, "--max-patterns", "6", "--out", &out_s];
        args.extend(source);
        let o = patmine(&args);
        assert!(o.status.success(), "{}", stderr(&o));
        assert!(stdout(&o).contains("6 patterns in"), "{}", stdout(&o));
        let o = check_all(&out_s, &source);
        assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    }
}

#[test]
fn mine_edge_cases() {
    let data = fixture_file();
    let o = patmine(&["mine", "--examples", &data, "--max-patterns", "0"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("0 patterns in"));

    let o = patmine(&["mine", "--min-size", "2"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("Usage"), "{}", stderr(&o));

    let o = patmine(&["mine", "--examples", &data, "--min-size", "0"]);
    assert_eq!(o.status.code(), Some(1));

    let o = patmine(&["mine", "--examples", &data, "--min-size", "5", "--max-size", "4"]);
    assert_eq!(o.status.code(), Some(1));
}

fn pattern_file(name: &str, subset: &[usize], edges: &[(usize, usize)]) -> String {
    let mut text = format!("mode undirected\n\np # 1 size={}\n", subset.len());
    for v in subset {
        text.push_str(&format!("v {v} a\n"));
    }
    for (u, v) in edges {
        text.push_str(&format!("e {u} {v}\n"));
    }
    let path = scratch(name);
    std::fs::write(&path, text).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn check_reports_reasons() {
    let data = fixture_file();
    let src = ["--examples", data.as_str(), "--npos", "1", "--nneg", "0"];

    let hex = pattern_file(
        "hex.pat",
        &[0, 1, 2, 3, 4, 5],
        &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (1, 4)],
    );
    let o = check_all(&hex, &src);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("example 0 (pos): homomorphism"));
    assert!(stdout(&o).contains("example 1 (neg): no homomorphism"));

    let tail = pattern_file("tail.pat", &[4, 3, 6], &[(4, 3), (3, 6)]);
    let o = check_all(&tail, &src);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("negative coverage 1 > 0"), "{}", stdout(&o));

    let extra = pattern_file("extra.pat", &[0, 1, 2], &[(0, 1), (1, 2), (0, 2)]);
    let o = check_all(&extra, &src);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("not induced"), "{}", stdout(&o));

    let apart = pattern_file("apart.pat", &[0, 7], &[]);
    let o = check_all(&apart, &src);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("not connected"), "{}", stdout(&o));

    let missing = scratch("does-not-exist.pat");
    let o = check_all(&missing.to_string_lossy(), &src);
    assert_eq!(o.status.code(), Some(2));

    let empty = scratch("empty.pat");
    std::fs::write(&empty, "").unwrap();
    let o = check_all(&empty.to_string_lossy(), &src);
    assert_eq!(o.status.code(), Some(1));
}

fn csv_rows(path: &PathBuf) -> Vec<Vec<String>> {
    let mut reader = csv::Reader::from_path(path).unwrap();
    reader
        .records()
        .map(|r| r.unwrap().iter().map(str::to_owned).collect())
        .collect()
}

#[test]
fn bench_reports_both_strategies() {
    let csv_path = scratch("bench.csv");
    let csv_s = csv_path.to_string_lossy().into_owned();
    let o = patmine(&[
        "bench", "--preset", "yoshida-small", "--repeats", "3", "--max-patterns", "4", "--csv", &csv_s,
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.contains("pattern classes agree: yes"), "{text}");
    assert!(text.contains("speedup (monolithic median / decomposed median): "), "{text}");
    let rows = csv_rows(&csv_path);
    assert_eq!(rows.len(), 2 * 3 * 4);
    for s in ["decomposed", "monolithic"] {
        assert_eq!(rows.iter().filter(|r| r[0] == s).count(), 12);
    }
    assert!(rows.iter().all(|r| r[3] == "yoshida-small" && r[4] == "7"));

    let o = patmine(&[
        "bench", "--preset", "fig1", "--repeats", "1", "--strategies", "decomposed", "--csv", &csv_s,
    ]);
    assert!(o.status.success());
    assert!(!stdout(&o).contains("speedup"));
    let rows = csv_rows(&csv_path);
    assert!(!rows.is_empty());
    assert!(rows.iter().all(|r| r[0] == "decomposed" && r[4].is_empty()));
}

#[test]
fn encode_targets() {
    let data = fixture_file();
    let o = patmine(&["encode", "--examples", &data, "--target", "asp"]);
    assert!(o.status.success());
    let golden = include_str!("golden/fig1.lp");
    assert_eq!(stdout(&o), golden);

    let o = patmine(&["encode", "--examples", &data, "--target", "idp", "--npos", "1"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("threshold = 1"), "{}", stdout(&o));

    let o = patmine(&["encode", "--examples", &data, "--target", "smt"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn gen_is_seeded() {
    let o = patmine(&["gen", "--preset", "yoshida", "--seed", "1"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(text.lines().filter(|l| l.starts_with("t # ")).count(), 266);
    assert_eq!(text.lines().filter(|l| l.ends_with(" template")).count(), 1);
    assert_eq!(stdout(&patmine(&["gen", "--preset", "yoshida", "--seed", "1"])), text);
    assert_ne!(stdout(&patmine(&["gen", "--preset", "yoshida", "--seed", "2"])), text);

    let from_env = Command::new(env!("CARGO_BIN_EXE_patmine"))
        .args(["gen", "--preset", "yoshida-small", "--seed", "99"])
        .env("PATMINE_SEED", "5")
        .output()
        .unwrap();
    let explicit = patmine(&["gen", "--preset", "yoshida-small", "--seed", "5"]);
    assert_eq!(stdout(&from_env), stdout(&explicit));

    let o = patmine(&["gen", "--vertex-range", "3", "1"]);
    assert_eq!(o.status.code(), Some(1));
    let o = patmine(&["gen", "--preset", "nope"]);
    assert_eq!(o.status.code(), Some(1));

    let o = patmine(&["gen", "--preset", "fig1"]);
    assert_eq!(stdout(&o), fixtures::GRAPH_FILE);
}
