use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use seqspace::{Rational, Scalar};
use seqspace_cli::codec::Codec;
use serde_json::{json, Value};
use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_seqspace"))
}

fn run(dir: &Path, args: &[&str]) -> Output {
    bin()
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn write(dir: &Path, name: &str, doc: &Value) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, doc.to_string()).unwrap();
    path
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn report(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", stderr(out));
    serde_json::from_slice(&out.stdout).expect("report is JSON")
}

fn setup() -> TempDir {
    let dir = tempfile::tempdir().unwrap();
    let x: Vec<String> = (0..16)
        .map(|i| format!("{}/{}", i % 5 - 2, i % 3 + 1))
        .collect();
    write(dir.path(), "x.json", &json!(x));
    write(
        dir.path(),
        "A.json",
        &json!({ "rows": [["1"], ["1/2", "1/2"], ["0", "0", "1/3"]], "tail": "zero" }),
    );
    dir
}

/// JSON cell → canonical text, matching the CSV emission.
fn canonical(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::Number(n) => n.to_string(),
        Value::String(s) => s.clone(),
        obj @ Value::Object(_) => Rational::decode(obj, "cell").unwrap().canonical(),
        other => panic!("unexpected cell {other}"),
    }
}

fn csv_rows(text: &str) -> (Vec<(String, String)>, Vec<Vec<String>>) {
    let meta = text
        .lines()
        .filter_map(|l| l.strip_prefix("# "))
        .filter_map(|l| l.split_once(": "))
        .map(|(k, v)| (k.to_string(), v.to_string()))
        .collect();
    let mut reader = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .has_headers(false)
        .from_reader(text.as_bytes());
    let rows = reader
        .records()
        .map(|r| r.unwrap().iter().map(str::to_string).collect())
        .collect();
    (meta, rows)
}

#[test]
fn transform_euler_gives_sixteen_values() {
    let dir = setup();
    let out = run(
        dir.path(),
        &[
            "transform",
            "--preset",
            "euler",
            "--alpha",
            "0.5",
            "--m",
            "2",
            "--n",
            "16",
            "--input",
            "x.json",
            "-o",
            "y.json",
        ],
    );
    assert!(out.status.success(), "{}", stderr(&out));
    let doc: Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("y.json")).unwrap()).unwrap();
    assert_eq!(doc["result"]["y"]["values"].as_array().unwrap().len(), 16);
    assert_eq!(doc["backend"], "rational");
    assert_eq!(doc["job_hash"].as_str().unwrap().len(), 64);
}

#[test]
fn transform_then_inverse_recovers_input() {
    let dir = setup();
    let y = report(&run(
        dir.path(),
        &[
            "transform",
            "--preset",
            "aydin",
            "--alpha",
            "1/3",
            "--m",
            "1",
            "--input",
            "x.json",
        ],
    ));
    write(dir.path(), "y.json", &y["result"]["y"]);
    let x = report(&run(
        dir.path(),
        &[
            "invert", "--preset", "aydin", "--alpha", "1/3", "--m", "1", "--input", "y.json",
        ],
    ));
    let original: Vec<Value> =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("x.json")).unwrap()).unwrap();
    let recovered = x["result"]["x"]["values"].as_array().unwrap();
    for (a, b) in original.iter().zip(recovered) {
        assert_eq!(
            Rational::decode(a, "x").unwrap(),
            Rational::decode(b, "x").unwrap()
        );
    }
}

#[test]
fn chi_reports_bounds_and_status() {
    let dir = setup();
    let doc = report(&run(
        dir.path(),
        &[
            "chi", "--preset", "uv", "--u", "ones", "--v", "ones", "--matrix", "A.json",
            "--target", "c0",
        ],
    ));
    let r = &doc["result"];
    assert_eq!(r["lower"], json!({ "num": "0", "den": "1" }));
    assert_eq!(r["upper"], json!({ "num": "0", "den": "1" }));
    assert_eq!(r["status"], "exact");
    assert_eq!(r["compact"]["outcome"], "satisfied");
}

#[test]
fn supplied_identity_has_chi_one() {
    let dir = setup();
    let rows: Vec<Vec<String>> = (0..16)
        .map(|n| {
            (0..=n)
                .map(|k| if k == n { "1".into() } else { "0".into() })
                .collect()
        })
        .collect();
    write(
        dir.path(),
        "I.json",
        &json!({ "rows": rows, "tail": "structural" }),
    );
    let doc = report(&run(
        dir.path(),
        &[
            "chi",
            "--preset",
            "identity",
            "--matrix",
            "I.json",
            "--associate",
            "--target",
            "c",
        ],
    ));
    assert_eq!(doc["result"]["lower"], json!({ "num": "1", "den": "2" }));
    assert_eq!(doc["result"]["upper"], json!({ "num": "1", "den": "1" }));
}

#[test]
fn selftest_passes() {
    let dir = setup();
    let doc = report(&run(dir.path(), &["selftest", "--cases", "5"]));
    assert_eq!(doc["status"], "ok");
    assert!(doc["table"]["rows"]
        .as_array()
        .unwrap()
        .iter()
        .all(|r| r[2] == json!(0)));
}

#[test]
fn missing_tail_is_a_validation_error() {
    let dir = setup();
    write(dir.path(), "bad.json", &json!({ "rows": [["1"]] }));
    let out = run(
        dir.path(),
        &[
            "chi", "--preset", "identity", "--matrix", "bad.json", "--target", "c0",
        ],
    );
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("\"tail\""), "{}", stderr(&out));
}

#[test]
fn malformed_json_reports_location() {
    let dir = setup();
    std::fs::write(dir.path().join("broken.json"), "{\"rows\": [[\"1\"],\n  ]").unwrap();
    let out = run(
        dir.path(),
        &[
            "chi",
            "--preset",
            "identity",
            "--matrix",
            "broken.json",
            "--target",
            "c0",
        ],
    );
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("line 2"), "{}", stderr(&out));
}

#[test]
fn missing_file_is_an_io_error() {
    let dir = setup();
    let out = run(
        dir.path(),
        &["norm", "--preset", "identity", "--input", "nowhere.json"],
    );
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("nowhere.json"), "{}", stderr(&out));
}

#[test]
fn invalid_parameters_are_rejected() {
    let dir = setup();
    let out = run(
        dir.path(),
        &[
            "norm", "--preset", "euler", "--alpha", "3/2", "--input", "x.json",
        ],
    );
    assert_eq!(out.status.code(), Some(2));
    write(
        dir.path(),
        "p.json",
        &json!({ "r": ["1", "0"], "s": ["1", "1"], "t": ["1", "1"], "n": 2 }),
    );
    let out = run(dir.path(), &["basis", "--params", "p.json"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("r[1] = 0"), "{}", stderr(&out));
}

#[test]
fn strict_turns_indeterminate_into_exit_three() {
    let dir = setup();
    write(
        dir.path(),
        "U.json",
        &json!({ "rows": [["1"], ["0", "1"]], "tail": "unknown" }),
    );
    let args = [
        "matclass", "--preset", "identity", "--n", "4", "--matrix", "U.json", "--source", "c0",
        "--target", "c0",
    ];
    let loose = run(dir.path(), &args);
    assert_eq!(loose.status.code(), Some(0), "{}", stderr(&loose));
    assert_eq!(report(&loose)["status"], "indeterminate");
    let mut strict = args.to_vec();
    strict.push("--strict");
    let out = run(dir.path(), &strict);
    assert_eq!(out.status.code(), Some(3));
    assert!(!out.stdout.is_empty(), "the report is still written");
}

#[test]
fn csv_and_json_carry_identical_numbers() {
    let dir = setup();
    let cases: [&[&str]; 4] = [
        &[
            "transform",
            "--preset",
            "euler",
            "--alpha",
            "1/2",
            "--m",
            "1",
            "--input",
            "x.json",
        ],
        &[
            "basis", "--preset", "uv", "--u", "linear", "--v", "ones", "--m", "2", "--n", "6",
        ],
        &[
            "matclass", "--preset", "identity", "--n", "3", "--matrix", "A.json", "--source", "c",
            "--target", "c",
        ],
        &[
            "chi",
            "--preset",
            "euler",
            "--alpha",
            "1/2",
            "--n",
            "8",
            "--m",
            "1",
            "--builtin",
            "t",
            "--target",
            "c0",
        ],
    ];
    for args in cases {
        let json_doc = report(&run(dir.path(), args));
        let mut csv_args = args.to_vec();
        csv_args.extend(["--format", "csv"]);
        let out = run(dir.path(), &csv_args);
        assert!(out.status.success(), "{}", stderr(&out));
        let (meta, rows) = csv_rows(&String::from_utf8(out.stdout).unwrap());
        let meta: std::collections::BTreeMap<_, _> = meta.into_iter().collect();
        assert_eq!(meta["job_hash"], json_doc["job_hash"].as_str().unwrap());
        assert_eq!(meta["backend"], json_doc["backend"].as_str().unwrap());
        let columns: Vec<String> = json_doc["table"]["columns"]
            .as_array()
            .unwrap()
            .iter()
            .map(canonical)
            .collect();
        assert_eq!(rows[0], columns, "{args:?}");
        let json_rows = json_doc["table"]["rows"].as_array().unwrap();
        assert_eq!(rows.len() - 1, json_rows.len());
        for (csv_row, json_row) in rows[1..].iter().zip(json_rows) {
            let json_row: Vec<String> =
                json_row.as_array().unwrap().iter().map(canonical).collect();
            assert_eq!(csv_row, &json_row, "{args:?}");
        }
    }
}

#[test]
fn float_backend_emits_decimal_strings() {
    let dir = setup();
    let doc = report(&run(
        dir.path(),
        &[
            "transform",
            "--scalar",
            "f64",
            "--preset",
            "identity",
            "--input",
            "x.json",
        ],
    ));
    assert_eq!(doc["backend"], "f64");
    let first = &doc["result"]["y"]["values"][0];
    assert!(first.is_string());
    assert_eq!(f64::decode(first, "y").unwrap(), -2.0);
}

#[test]
fn saved_job_replays_to_the_same_report() {
    let dir = setup();
    let first = report(&run(
        dir.path(),
        &[
            "dual",
            "--preset",
            "lambda",
            "--lambda",
            "linear",
            "--input",
            "x.json",
            "--dual",
            "gamma",
            "--save-job",
            "job.json",
        ],
    ));
    // Replay must not depend on the original input file.
    std::fs::remove_file(dir.path().join("x.json")).unwrap();
    let second = report(&run(dir.path(), &["replay", "--job", "job.json"]));
    assert_eq!(first, second);
}

#[test]
fn structural_euler_matrix_yields_trend_estimates() {
    let dir = setup();
    let doc = report(&run(
        dir.path(),
        &[
            "chi",
            "--preset",
            "euler",
            "--alpha",
            "1/2",
            "--m",
            "1",
            "--n",
            "12",
            "--builtin",
            "t",
            "--target",
            "l_inf",
        ],
    ));
    assert_eq!(doc["result"]["status"], "trend");
    assert_eq!(doc["result"]["provenance"], "computed");
}

#[test]
fn corollary_check_on_finite_rank_matrix() {
    let dir = setup();
    let doc = report(&run(
        dir.path(),
        &[
            "chi",
            "--preset",
            "identity",
            "--n",
            "4",
            "--matrix",
            "A.json",
            "--target",
            "c0",
            "--check-corollary",
        ],
    ));
    assert_eq!(doc["result"]["corollary"]["outcome"], "consistent-compact");
}

#[test]
fn single_conditions_by_slug() {
    let dir = setup();
    let doc = report(&run(
        dir.path(),
        &[
            "matclass",
            "--preset",
            "identity",
            "--n",
            "3",
            "--matrix",
            "A.json",
            "--condition",
            "subset-sums",
            "--condition",
            "row-norms-bounded",
        ],
    ));
    let conditions = doc["result"]["conditions"].as_array().unwrap();
    assert_eq!(conditions.len(), 2);
    assert_eq!(conditions[0]["id"], "subset-sums");
}

#[test]
fn exit_code_for_inconsistent_reports() {
    use seqspace_cli::report::{Report, Status, Table};
    use seqspace_cli::{exit_code, JobSpec};
    let job = JobSpec::new(seqspace_cli::job::Command::Selftest);
    let mut r = Report::new(
        &job,
        Rational::BACKEND,
        Status::Inconsistent,
        json!({}),
        Table::default(),
    );
    assert_eq!(exit_code(&r, false), 4);
    r.status = Status::Indeterminate;
    assert_eq!(exit_code(&r, false), 0);
    assert_eq!(exit_code(&r, true), 3);
}
