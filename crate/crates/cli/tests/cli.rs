use std::process::{Command, Output};

fn su2w(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_su2w"))
        .args(args)
        .env_remove("SU2W_TOL")
        .output()
        .unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

/// Parses a CSV figure table into header and rows.
fn csv(text: &str) -> (Vec<String>, Vec<Vec<String>>) {
    let mut lines = text.lines();
    let header = lines.next().unwrap().split(',').map(String::from).collect();
    let rows = lines.map(|l| l.split(',').map(String::from).collect()).collect();
    (header, rows)
}

#[test]
fn output_is_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    for (i, args) in [
        vec!["fig4", "--j", "7", "--eta", "0.3"],
        vec!["fig1", "--format", "json"],
        vec!["fig5"],
    ]
    .into_iter()
    .enumerate()
    {
        let a = dir.path().join(format!("a{i}"));
        let b = dir.path().join(format!("b{i}"));
        for path in [&a, &b] {
            let mut full = args.clone();
            full.extend(["--out", path.to_str().unwrap()]);
            assert_eq!(su2w(&full).status.code(), Some(0));
        }
        let (x, y) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
        assert_eq!(x, y);
        assert!(!x.contains(&b'\r'));
        assert!(x.ends_with(b"\n"));
    }
}

#[test]
fn out_file_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fig2.csv");
    assert_eq!(su2w(&["fig2", "--out", path.to_str().unwrap()]).status.code(), Some(0));
    assert_eq!(std::fs::read_to_string(&path).unwrap(), stdout(&su2w(&["fig2"])));
}

#[test]
fn violated_column_matches_emitted_numbers() {
    let tol = 1e-10;
    for args in [
        vec!["fig1"],
        vec!["fig1", "--j", "3/2"],
        vec!["fig3"],
        vec!["fig3", "--j", "6"],
        vec!["fig4"],
        vec!["fig4", "--eta", "0.9", "--j", "4"],
        vec!["fig5"],
    ] {
        let out = su2w(&args);
        assert_eq!(out.status.code(), Some(0), "{args:?}");
        let (header, rows) = csv(&stdout(&out));
        let col = |name: &str| header.iter().position(|h| h == name).unwrap();
        let (p, b, v) = (col("p"), col("bound"), col("violated"));
        for row in rows {
            let prob: f64 = row[p].parse().unwrap();
            let bound: f64 = row[b].parse().unwrap();
            assert_eq!(row[v] == "true", prob > bound + tol, "{args:?}: {row:?}");
        }
    }
}

#[test]
fn half_integer_m_is_decimal() {
    let text = stdout(&su2w(&["fig2", "--j", "1.5"]));
    let ms: Vec<String> = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').next().unwrap().to_string())
        .collect();
    assert_eq!(ms, ["-1.5", "-0.5", "0.5", "1.5"]);
    assert_eq!(stdout(&su2w(&["fig2", "--j", "3/2"])), text);
}

#[test]
fn tolerance_from_environment() {
    let default = stdout(&su2w(&["fig1"]));
    assert!(default.contains(",true\n"));
    let out = Command::new(env!("CARGO_BIN_EXE_su2w"))
        .args(["fig1"])
        .env("SU2W_TOL", "0.1")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(!stdout(&out).contains(",true\n"));
    // an explicit flag wins over the environment
    let out = Command::new(env!("CARGO_BIN_EXE_su2w"))
        .args(["fig1", "--tol", "1e-10"])
        .env("SU2W_TOL", "0.1")
        .output()
        .unwrap();
    assert_eq!(stdout(&out), default);
}

#[test]
fn exit_codes() {
    let cases: [(&[&str], i32); 12] = [
        (&["fig1"], 0),
        (&["--help"], 0),
        (&["--version"], 0),
        (&["fig1", "--j", "abc"], 1),
        (&["fig1", "--j", "-1"], 1),
        (&["fig1", "--j", "0.3"], 1),
        (&["fig4", "--eta", "1.5"], 1),
        (&["fig4", "--j", "2.5", "--eta", "0.5"], 1),
        (&["fig5", "--j", "2.5"], 1),
        (&["fig1", "--tol", "-1"], 1),
        (&["nonsense"], 1),
        (
            &["report", "--state", "{\"family\":\"cat\"}", "--direction", "0,0,0"],
            1,
        ),
    ];
    for (args, code) in cases {
        assert_eq!(su2w(args).status.code(), Some(code), "{args:?}");
    }
}

#[test]
fn check_passes() {
    let out = su2w(&["check"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert_eq!(text.lines().filter(|l| l.starts_with("PASS ")).count(), 6);
    assert!(!text.contains("FAIL"));
}

#[test]
fn report_with_explicit_matrix() {
    // |1/2, 1/2⟩⟨1/2, 1/2| written out by hand
    let state = r#"[[{"re":0,"im":0},{"re":0,"im":0}],[{"re":0,"im":0},{"re":1,"im":0}]]"#;
    let out = su2w(&["report", "--j", "1/2", "--state", state, "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["j"].to_string(), "0.5");
    assert_eq!(v["statistics"][1]["p"].to_string(), "1");
    assert_eq!(v["squeezing"]["status"], "defined");
    assert_eq!(v["squeezing"]["criterion_i"]["satisfied"], false);
}

#[test]
fn report_rejects_wrong_dimension() {
    let state = r#"[[{"re":1}]]"#;
    assert_eq!(su2w(&["report", "--j", "1", "--state", state]).status.code(), Some(1));
}

#[test]
fn report_family_defaults_from_flags() {
    let a = stdout(&su2w(&[
        "report",
        "--state",
        "{\"family\":\"superposition\"}",
        "--alpha-sq",
        "0.3",
    ]));
    let b = stdout(&su2w(&[
        "report",
        "--state",
        "{\"family\":\"superposition\",\"alpha_sq\":0.3}",
    ]));
    assert_eq!(a, b);
    let c = stdout(&su2w(&[
        "report",
        "--state",
        "{\"family\":\"intelligent\"}",
        "--direction",
        "1,0,0",
    ]));
    assert!(c.contains("criterion_iii_satisfied,true"));
}
