use std::io::Write;
use std::process::{Command, Output, Stdio};

fn hamconn(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_hamconn"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child
        .stdin
        .take()
        .unwrap()
        .write_all(stdin.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(args: &[&str], stdin: &str) -> String {
    let out = hamconn(args, stdin);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn k15_edges() -> String {
    let mut s = String::from("# K15\n");
    for u in 0..15 {
        for v in u + 1..15 {
            s.push_str(&format!("{u} {v}\n"));
        }
    }
    s
}

#[test]
fn family_into_oracle() {
    let g6 = stdout(&["family", "--s", "14", "3"], "");
    assert_eq!(g6.lines().count(), 1);
    let verdict = stdout(&["oracle"], &g6);
    assert!(verdict.starts_with("not Hamilton-connected; first failing pair"), "{verdict}");
}

#[test]
fn family_into_spectra() {
    let g6 = stdout(&["family", "--s", "14", "7"], "");
    let out = stdout(&["spectra"], &g6);
    assert!(out.starts_with("rho = 10.6157"), "{out}");
    assert!(out.contains("q = 22.2195"), "{out}");
}

#[test]
fn check_complete_graph_from_edge_list() {
    let out = stdout(&["--format", "edges", "check"], &k15_edges());
    let rows: Vec<&str> = out.lines().skip(1).collect();
    assert_eq!(rows.len(), 15);
    for row in rows {
        assert_eq!(row.split_whitespace().nth(1), Some("Certified"), "{row}");
    }
}

#[test]
fn check_subset_and_exception_column() {
    let g6 = stdout(&["family", "--s", "14", "3"], "");
    let out = stdout(&["--conditions", "main,cor14", "check"], &g6);
    let rows: Vec<Vec<&str>> = out.lines().skip(1).map(|l| l.split_whitespace().collect()).collect();
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[0][..3], ["main", "ExceptionMember", "S_14^3(0)"]);
    assert_eq!(rows[1][0], "cor14");
}

#[test]
fn convert_round_trip() {
    let g6 = stdout(&["family", "--variant", "H3", "12"], "");
    let edges = stdout(&["convert", "--to", "edges"], &g6);
    assert!(edges.starts_with("# order 12\n"));
    let back = stdout(&["--format", "edges", "convert", "--to", "g6"], &edges);
    assert_eq!(back, g6);
}

#[test]
fn family_selectors() {
    assert_eq!(stdout(&["family", "--np1", "8"], "").lines().count(), 5);
    assert_eq!(stdout(&["family", "--deleted", "S", "12", "3", "1"], "").lines().count(), 3);
    assert_eq!(stdout(&["family", "--sporadic", "K7_K2_K16"], "").lines().count(), 1);
    assert_eq!(stdout(&["family", "--sporadic", "Kn1_ee", "9"], "").lines().count(), 1);
    let all = stdout(&["family", "--deleted", "S", "12", "3", "1", "--all"], "");
    assert!(all.lines().count() > 3);
}

#[test]
fn input_errors_exit_two() {
    assert_eq!(hamconn(&["oracle"], "!!\n").status.code(), Some(2));
    assert_eq!(hamconn(&["spectra"], "").status.code(), Some(2));
    assert_eq!(hamconn(&["family", "--s", "14", "9"], "").status.code(), Some(2));
    assert_eq!(hamconn(&["family", "--sporadic", "nope"], "").status.code(), Some(2));
    assert_eq!(hamconn(&["family"], "").status.code(), Some(2));
    assert_eq!(hamconn(&["verify", "/nonexistent/config"], "").status.code(), Some(2));
}

#[test]
fn reproduce_is_all_pass() {
    let out = stdout(&["reproduce"], "");
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("quantity,expected,computed,pass"));
    let rows: Vec<&str> = lines.collect();
    assert!(rows.len() >= 30);
    assert!(rows.iter().all(|r| r.ends_with(",true")));
    assert!(out.contains("f(5) n=11,0,0,true"));
}

#[test]
fn verify_is_deterministic_and_writes_summary() {
    let dir = std::env::temp_dir().join(format!("hamconn-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let cfg = dir.join("random.cfg");
    std::fs::write(
        &cfg,
        "mode=random\nn_range=14..14\nsamples=40\nseed=1\nedge_floor=cor14\nconditions=cor14\n",
    )
    .unwrap();
    let cfg = cfg.to_str().unwrap();
    let a = hamconn(&["--workers", "1", "verify", cfg], "");
    let b = hamconn(&["--workers", "3", "verify", cfg], "");
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(String::from_utf8_lossy(&a.stdout).lines().count(), 40);
    let summary = String::from_utf8(a.stderr).unwrap();
    assert!(summary.starts_with("condition_id,trials,certified,exceptions,inconclusive,anomalies\ncor14,40,"));

    let ingest = dir.join("ingest.cfg");
    std::fs::write(&ingest, "mode=ingest\ninput=-\nconditions=degree_scan,ore\n").unwrap();
    let out = hamconn(&["verify", ingest.to_str().unwrap()], "C~\nCr\nbad\n");
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(String::from_utf8_lossy(&out.stdout).lines().count(), 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("input line 3"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn verify_reports_anomalies_with_exit_one() {
    let dir = std::env::temp_dir().join(format!("hamconn-cli-an-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let cfg = dir.join("families.cfg");
    std::fs::write(&cfg, "mode=families\nn_range=16..16\nconditions=main\n").unwrap();
    let out = hamconn(&["verify", cfg.to_str().unwrap()], "");
    // K7 + (K2 + K1,6) is listed but has Hamilton paths between all pairs
    assert_eq!(out.status.code(), Some(1));
    let report = String::from_utf8(out.stdout).unwrap();
    let flagged: Vec<&str> = report.lines().filter(|l| !l.contains("\"anomalies\":[]")).collect();
    assert_eq!(flagged.len(), 1);
    assert!(flagged[0].contains("\"label\":\"K7_K2_K16\""));
    std::fs::remove_dir_all(&dir).unwrap();
}
