use std::path::Path;
use std::process::{Command, Output};

fn cyclobar(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cyclobar"))
        .args(args)
        .env_remove("CYCLOBAR_CACHE_DIR")
        .env_remove("CYCLOBAR_BUDGET")
        .env_remove("CYCLOBAR_CONFIG")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn witt_examples() {
    let o = cyclobar(&["witt", "--decompose", "-p", "2", "-r", "3"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("decomposition: [(1,2),(3,1)]"));
    let o = cyclobar(&["witt", "--decompose", "-p", "2", "-r", "1", "--format", "csv"]);
    assert_eq!(stdout(&o), "mprime,s\n1,1\n");
    let o = cyclobar(&["witt", "--ghost", "-S", "1,2", "--input", "3,1", "--format", "csv"]);
    assert_eq!(stdout(&o), "w1,w2\n3,11\n");
    let o = cyclobar(&["witt", "--polynomials", "-S", "1,2", "--op", "add", "--format", "csv"]);
    assert_eq!(stdout(&o), "component,polynomial\n1,x1 + y1\n2,-x1*y1 + x2 + y2\n");
    let o = cyclobar(&["witt", "--apply", "-S", "1,2", "--input", "1,0", "--other", "1,0", "--field", "2", "--format", "csv"]);
    assert_eq!(stdout(&o), "a1,a2\n0,1\n");
}

#[test]
fn homology_statuses() {
    let o = cyclobar(&["homology", "-m", "1", "--format", "csv"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "degree,group,expected\n0,0,0\n1,0,0\n2,ℤ,ℤ\n3,ℤ,ℤ\n");
    let o = cyclobar(&["homology", "-m", "1"]);
    assert!(stdout(&o).ends_with("status: PASS\n"));
    let o = cyclobar(&["homology", "-m", "0"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("| 0      | ℤ     |"));
    assert!(stdout(&o).contains("status: unit weight"));
    let o = cyclobar(&["homology", "-m", "99"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(o.stdout.is_empty());
}

#[test]
fn exit_codes() {
    assert_eq!(cyclobar(&["nonsense"]).status.code(), Some(1));
    assert_eq!(cyclobar(&["ktable", "-p", "4"]).status.code(), Some(1));
    assert_eq!(cyclobar(&["witt", "--ghost", "-S", "2", "--input", "1"]).status.code(), Some(1));
    assert_eq!(cyclobar(&["--help"]).status.code(), Some(0));
    assert_eq!(cyclobar(&["--version"]).status.code(), Some(0));
    assert_eq!(cyclobar(&["homology", "-m", "2", "--budget", "5"]).status.code(), Some(2));
}

#[test]
fn ktable_rows() {
    let o = cyclobar(&["ktable", "-p", "2", "--r-max", "3", "--format", "csv"]);
    assert!(o.status.success());
    assert_eq!(
        stdout(&o),
        "degree,entries,group,order\n\
         1,[],0,1\n\
         2,[],0,1\n\
         3,\"[(1,1)]\",ℤ/2,2\n\
         4,[],0,1\n\
         5,\"[(1,2)]\",ℤ/4,4\n\
         6,[],0,1\n\
         7,\"[(1,2),(3,1)]\",ℤ/4 × ℤ/2,8\n"
    );
}

#[test]
fn ktable_json_matches_schema() {
    let schema_path = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../docs/table.schema.json");
    let schema: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(schema_path).unwrap()).unwrap();
    let validator = jsonschema::validator_for(&schema).unwrap();
    for (p, degree7) in [("2", vec![4, 2]), ("3", vec![9, 3]), ("7", vec![7, 7, 7])] {
        let o = cyclobar(&["ktable", "-p", p, "--r-max", "12", "--format", "json"]);
        let doc: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
        assert!(validator.is_valid(&doc), "p = {p}");
        let rows = doc.as_array().unwrap();
        assert_eq!(rows.len(), 25);
        assert_eq!(rows[6]["group"], serde_json::json!(degree7));
    }
    // exact big orders survive the JSON round trip
    let o = cyclobar(&["ktable", "-p", "7", "--r-max", "40", "--format", "json"]);
    let text = stdout(&o);
    assert!(text.contains(&num_traits::pow(cyclobar_core::BigInt::from(7), 40).to_string()));
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["ktable", "-p", "3", "--r-max", "15", "--format", "json"][..],
        &["ss", "-m", "6", "-p", "3", "--format", "csv"],
        &["verify", "tc", "--quick", "-q", "--format", "json"],
        &["witt", "--polynomials", "-S", "1,2,3,4", "--op", "mul", "--format", "json"],
    ] {
        let a = cyclobar(args);
        let b = cyclobar(args);
        assert!(a.status.success(), "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn verify_reports() {
    let o = cyclobar(&["verify", "ss", "-p", "2", "--quick", "--format", "json"]);
    assert!(o.status.success());
    let doc: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(doc["passed"], true);
    assert!(String::from_utf8_lossy(&o.stderr).contains("[ss]"));
    let o = cyclobar(&["verify", "homology", "-m", "1", "-q"]);
    assert!(o.status.success());
    assert!(o.stderr.is_empty());
    assert!(stdout(&o).ends_with("result: PASS\n"));
    assert_eq!(cyclobar(&["verify", "homology", "-m", "9"]).status.code(), Some(2));
}

#[test]
fn spectral_sequence_table() {
    // m = 4 = 2² at p = 2: v = 2 in every odd degree below 2m+1 = 9,
    // hfp gains one class from degree 9 on
    let o = cyclobar(&["ss", "-m", "4", "-p", "2", "--mode", "hfp", "--degree-max", "9", "--format", "json"]);
    let doc: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let degrees = doc["tables"][0]["degrees"].as_array().unwrap();
    assert_eq!(degrees[7]["survivors"], 2);
    assert_eq!(degrees[9]["survivors"], 3);
    assert_eq!(degrees[9]["group"], serde_json::json!([8]));
}

#[test]
fn export_chains_writes_one_file_per_degree() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("b2");
    let o = cyclobar(&["export-chains", "-m", "2", "--out", out.to_str().unwrap(), "--format", "json"]);
    assert!(o.status.success());
    let doc: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let ranks: Vec<usize> = serde_json::from_value(doc["ranks"].clone()).unwrap();
    for n in 1..ranks.len() {
        let text = std::fs::read_to_string(out.join(format!("boundary_{n}.txt"))).unwrap();
        let mut lines = text.lines();
        let header: Vec<usize> = lines.next().unwrap().split(' ').map(|x| x.parse().unwrap()).collect();
        assert_eq!(header, vec![ranks[n - 1], ranks[n]]);
        assert_eq!(lines.count(), ranks[n - 1]);
    }
    assert_eq!(cyclobar(&["export-chains", "-m", "4", "--out", out.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn configuration_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let conf = dir.path().join("cyclobar.conf");
    std::fs::write(&conf, "prime = 3\nr_max = 2\nformat = csv\n").unwrap();
    let run = |extra: &[&str], budget_env: Option<&str>| {
        let mut c = Command::new(env!("CARGO_BIN_EXE_cyclobar"));
        c.args(["ktable", "--config", conf.to_str().unwrap()]).args(extra);
        c.env_remove("CYCLOBAR_BUDGET").env_remove("CYCLOBAR_PRIME");
        if let Some(b) = budget_env {
            c.env("CYCLOBAR_PRIME", b);
        }
        c.output().unwrap()
    };
    let file_only = stdout(&run(&[], None));
    assert!(file_only.starts_with("degree,entries,group,order\n"));
    assert!(file_only.contains("5,\"[(1,1),(2,1)]\",ℤ/3 × ℤ/3,9"));
    let env_wins = stdout(&run(&[], Some("5")));
    assert!(env_wins.contains("5,\"[(1,1),(2,1)]\",ℤ/5 × ℤ/5,25"));
    let flag_wins = stdout(&run(&["-p", "2"], Some("5")));
    assert!(flag_wins.contains("5,\"[(1,2)]\",ℤ/4,4"));
}
