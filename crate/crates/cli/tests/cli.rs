use std::process::{Command, Output};

use hsformal::descriptor::parse;
use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_hsformal"))
}

fn run(args: &[&str], cache: &std::path::Path) -> Output {
    bin().args(args).arg("--cache-dir").arg(cache).env_remove("HSFORMAL_CACHE_DIR").output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

const CORPUS: [&str; 50] = [
    "SU(6)/(SU(3)xSU(3))",
    "SU(7)/(SU(3)xSU(4))",
    "SU(3)/(SU(4))",
    "SU(4)/(SU(2)xSU(2))",
    "SU(5)/(SU(2)xSU(3))",
    "SU(9)/(S(U(1)xU(1)xU(1))xSU(6))",
    "SU(6)/S(U(3)xU(3))",
    "U(3)//T(3)",
    "U(3)//(T(1)xT(2))",
    "Sp(3)/(U(2)xSp(1))",
    "Sp(7)/SU(7)",
    "SO(14)/SU(7)",
    "SO(16)/SU(8)",
    "SO(7)/SO(5)",
    "SO(8)/Ut(4)",
    "SO(10)/Ut(5)",
    "Sp(2)/T(2)",
    "SU(3)/T(2)",
    "SU(3)//T(1)",
    "SU(2)/T(1)",
    "U(4)/(U(2)xU(2))",
    "U(5)/(U(1)xU(4))",
    "SU(8)/(SU(4)xSU(4))",
    "SU(8)/(SU(3)xSU(5))",
    "SU(8)/(SU(2)xSU(6))",
    "SU(9)/(SU(4)xSU(5))",
    "SU(9)/(SU(3)xSU(6))",
    "SU(10)/(S(U(2)xU(2))xSU(4))",
    "SU(7)/(S(U(2)xU(1))xS(U(2)xU(1)))",
    "SU(7)/(S(U(1)xU(1)xU(1))xS(U(1)xU(1)xU(1)))",
    "Sp(4)/(Sp(1)xSp(1)xSp(2))",
    "Sp(5)/Sp(2)",
    "SO(9)/(SO(3)xSO(4))",
    "SO(6)/(SO(2)xSO(2)xSO(2))",
    "(SU(3)xSU(3))/SU(3)",
    "(SU(2)xSU(2))//T(2)",
    "SU(4)/Sp(2)",
    "SU(5)/SO(5)",
    "SU(6)/Sp(3)",
    "U(6)/(U(3)xU(3))",
    "SU(4) / ( SU(2) × SU(2) )",
    "SU(4)/(SU(2)*SU(2))",
    "SU(12)/((SU(3)xSU(3))xSU(3))",
    "SO(12)/Ut(6)",
    "Sp(6)/SU(6)",
    "Sp(6)/U(6)",
    "SO(11)/SO(3)",
    "T(2)/T(1)",
    "SU(5)//(T(1)xSU(2))",
    "SU(16)/(SU(8)xSU(8))",
];

#[test]
fn descriptors_round_trip() {
    for s in CORPUS {
        let d = parse(s).unwrap_or_else(|e| panic!("{s}: {e}"));
        let again = parse(&d.to_string()).unwrap();
        assert_eq!(d, again, "{s}");
        assert_eq!(again.to_string(), d.to_string());
    }
}

#[test]
fn betti_of_stiefel_manifold() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["betti", "SU(4)/(SU(2)xSU(2))", "--json"], dir.path());
    assert!(out.status.success());
    let doc = json(&out);
    assert_eq!(doc["schema"], 1);
    let betti: Vec<u64> = serde_json::from_value(doc["betti"].clone()).unwrap();
    assert_eq!(betti, vec![1, 0, 0, 0, 1, 1, 0, 0, 0, 1]);
    let fd = betti.len() - 1;
    assert!((0..=fd).all(|k| betti[k] == betti[fd - k]));
}

#[test]
fn formality_document() {
    let dir = tempfile::tempdir().unwrap();
    let doc = json(&run(&["formality", "SU(6)/(SU(3)xSU(3))", "--json"], dir.path()));
    assert_eq!(doc["verdict"], "NonFormal");
    assert_eq!(doc["method"], "pure-criterion");
    let doc = json(&run(&["formality", "SU(7)/(SU(3)xSU(4))", "--json"], dir.path()));
    assert_eq!(doc["verdict"], "Formal");
    assert_eq!(doc["witness"]["sphere_degrees"], serde_json::json!([13]));
    let doc = json(&run(&["formality", "SU(6)/(SU(3)xSU(3))", "--json", "--massey-confirm"], dir.path()));
    assert_eq!(doc["method"], "massey-witness");
    assert_eq!(doc["massey"]["degree"], 13);
}

#[test]
fn fractions_are_strings() {
    let dir = tempfile::tempdir().unwrap();
    let doc = json(&run(&["criteria", "Sp(7)/SU(7)", "--json"], dir.path()));
    let c = &doc["criteria"][0];
    assert_eq!(c["verdict"], "non-formal");
    assert!(c["inequality_value"].is_string());
}

#[test]
fn scan_covers_range() {
    let dir = tempfile::tempdir().unwrap();
    let doc = json(&run(&["scan-dimensions", "72", "200", "--json"], dir.path()));
    let entries = doc["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 129);
    assert!(entries.iter().all(|e| e["descriptor"].is_string()));
    assert_eq!(doc["missing"], 0);
}

#[test]
fn cached_output_is_identical() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        &["formality", "SU(7)/(SU(3)xSU(4))", "--json"][..],
        &["betti", "SU(6)/(SU(3)xSU(3))"][..],
        &["model", "Sp(3)/(U(2)xSp(1))", "--json"][..],
    ] {
        let fresh = run(args, dir.path());
        let cached = run(args, dir.path());
        let mut uncached_args = args.to_vec();
        uncached_args.push("--no-cache");
        let uncached = run(&uncached_args, dir.path());
        assert!(fresh.status.success());
        assert_eq!(fresh.stdout, cached.stdout);
        assert_eq!(fresh.stdout, uncached.stdout);
    }
    let entries = std::fs::read_dir(dir.path()).unwrap().count();
    assert_eq!(entries, 3);
}

#[test]
fn errors_are_structured() {
    let dir = tempfile::tempdir().unwrap();
    let cases: [(&[&str], &str); 5] = [
        (&["betti", "SU(3)/(SU(4))"], "BlocksDoNotFit"),
        (&["betti", "SU(6)/(SU(3)xQ(3))"], "ParseError"),
        (&["formality", "SU(6)/SO(5)", "--embedding", "so-in-su"], "EmbeddingMismatch"),
        (&["model", "SU(4)/SU(2)", "--embedding", "/nonexistent/matrix"], "InvalidParameters"),
        (&["no-such-command"], "UsageError"),
    ];
    for (args, kind) in cases {
        let out = run(args, dir.path());
        assert!(!out.status.success(), "{args:?}");
        let doc = json(&out);
        assert_eq!(doc["error"], kind, "{args:?}");
        assert!(doc["message"].is_string());
    }
}

#[test]
fn matrix_file_embedding() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("circle.txt");
    std::fs::write(&path, "# circle with weights 1, -1, 0\n1\n-1\n0\n").unwrap();
    let out = run(&["betti", "SU(3)/T(1)", "--embedding", path.to_str().unwrap(), "--json"], dir.path());
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stdout));
    let betti: Vec<u64> = serde_json::from_value(json(&out)["betti"].clone()).unwrap();
    let fd = betti.len() - 1;
    assert_eq!(fd, 7);
    assert!((0..=fd).all(|k| betti[k] == betti[fd - k]));
}
