use std::io::Write;
use std::process::{Command, Output, Stdio};

fn goeritz(args: &[&str], stdin: &str, env: &[(&str, &str)]) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_goeritz"))
        .args(args)
        .env_remove("GOERITZ_MAX_NODES")
        .env_remove("GOERITZ_MAX_DEPTH")
        .envs(env.iter().copied())
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn ok(args: &[&str], stdin: &str) -> String {
    let out = goeritz(args, stdin, &[]);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn certify_pipes_into_verify() {
    let cert = ok(&["certify", "--family", "L(a=1,b=1,c=1:*,*,*)", "--guided"], "");
    let out = ok(&["verify-cert"], &cert);
    assert!(out.starts_with("valid certificate"), "{out}");
    let cert = ok(&["certify", "--family", "L(a=2,b=1,c=1:*,*,*)"], "");
    let out = ok(&["--json", "verify-cert", "-"], &cert);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["det"], "841");
}

#[test]
fn verify_against_a_graph_file() {
    let dir = tempfile::tempdir().unwrap();
    let graph = dir.path().join("g.json");
    let cert = dir.path().join("c.json");
    ok(&["generate", "--a", "1", "--b", "2", "--c", "1", "-o", graph.to_str().unwrap()], "");
    ok(&["certify", graph.to_str().unwrap(), "-o", cert.to_str().unwrap()], "");
    ok(&["verify-cert", cert.to_str().unwrap(), "--graph", graph.to_str().unwrap()], "");
    let other = dir.path().join("h.json");
    ok(&["generate", "--pretzel", "3,3,3", "-o", other.to_str().unwrap()], "");
    let out = goeritz(&["verify-cert", cert.to_str().unwrap(), "--graph", other.to_str().unwrap()], "", &[]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn tampered_certificate_exits_two() {
    let cert = ok(&["certify", "--family", "L(a=1,b=1,c=1:0,*,*)", "--guided"], "");
    let bad = cert.replacen("\"det\": \"", "\"det\": \"1", 1);
    let out = goeritz(&["--json", "verify-cert"], &bad, &[]);
    assert_eq!(out.status.code(), Some(2));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["ok"], false);
    assert_eq!(v["detail"]["path"], "");
}

#[test]
fn tables_and_sums_match() {
    let out = ok(&["tables", "--a", "1", "--range", "1..4"], "");
    assert!(out.trim_end().ends_with("160 rows, 0 mismatches"), "{out}");
    assert!(!out.contains(" NO"));
    let out = ok(&["tables", "--a", "2", "--range", "1..3"], "");
    assert!(out.contains("0 mismatches"));
    let out = ok(&["lemma52", "--range", "1..4"], "");
    assert!(out.trim_end().ends_with("64 triples, 0 closed-form mismatches, 0 additivity failures"), "{out}");
    let v: serde_json::Value = serde_json::from_str(&ok(&["--json", "lemma52", "--range", "1..2"], "")).unwrap();
    assert_eq!(v["rows"].as_array().unwrap().len(), 8);
}

#[test]
fn output_is_stable() {
    let args = ["--json", "tables", "--a", "1", "--range", "1..2"];
    assert_eq!(ok(&args, ""), ok(&args, ""));
    assert_eq!(ok(&["det", "--family", "L(a=3,b=2,c=1:inf,inf,*)"], "").trim(), {
        // (3ab+3bc+3ca+3a+2b+2c+1)(3ab+3bc+3ca+3a-1) at (3,2,1)
        ((18 + 6 + 9 + 9 + 4 + 2 + 1) * (18 + 6 + 9 + 9 - 1)).to_string()
    });
}

#[test]
fn budget_from_environment() {
    let args = ["certify", "--family", "L(a=1,b=1,c=1:*,*,*)"];
    let out = goeritz(&args, "", &[("GOERITZ_MAX_NODES", "1")]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("mismatch"));
    let out = goeritz(&args, "", &[("GOERITZ_MAX_NODES", "lots")]);
    assert_eq!(out.status.code(), Some(1));
    let out = goeritz(&["certify", "--family", "L(a=1,b=1,c=1:*,*,*)", "--max-nodes", "100000"], "", &[("GOERITZ_MAX_NODES", "1")]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn pd_to_graph_and_homology() {
    let g = ok(&["pd2graph", "X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)"], "");
    assert_eq!(ok(&["det", "-"], &g).trim(), "3");
    let g = ok(&["pd2graph", "-", "--shade", "b"], "X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)");
    assert_eq!(ok(&["det", "-"], &g).trim(), "3");
    let out = goeritz(&["pd2graph", "X(1,2,3)"], "", &[]);
    assert_eq!(out.status.code(), Some(1));
    let out = ok(&["homology", "--family", "L(a=1,b=1,c=1:*,*,*)"], "");
    assert!(out.contains("group: Z/20 + Z/20"), "{out}");
}

#[test]
fn resolve_and_usage() {
    let g = ok(&["resolve", "L(a=2,b=1,c=1:0,*,*)"], "");
    assert_eq!(ok(&["det", "-"], &g).trim(), (2 * 3 * 29).to_string());
    for bad in [&["det", "--family", "nonsense"][..], &["tables", "--range", "3..1"], &["certify", "--guided"], &[]] {
        assert_eq!(goeritz(bad, "", &[]).status.code(), Some(1), "{bad:?}");
    }
    let out = goeritz(&["--json", "det", "missing.json"], "", &[]);
    assert_eq!(out.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["error"], "usage");
}
