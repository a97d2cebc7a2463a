use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn catkit(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_catkit"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    {
        let mut pipe = child.stdin.take().unwrap();
        if let Some(text) = stdin {
            pipe.write_all(text.as_bytes()).unwrap();
        }
    }
    child.wait_with_output().unwrap()
}

fn json_of(out: &Output) -> Value {
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("json output")
}

fn form(n: usize, d: usize, terms: &[(&[u32], &str)]) -> String {
    let terms: Vec<Value> = terms
        .iter()
        .map(|(e, c)| serde_json::json!({ "exp": e, "coeff": c }))
        .collect();
    serde_json::json!({ "n": n, "d": d, "basis": "monomial", "terms": terms }).to_string()
}

#[test]
fn sample_is_deterministic_and_feeds_other_commands() {
    let args = ["sample", "--family", "ps:2", "--n", "3", "--d", "5", "--seed", "9"];
    let a = catkit(&args, None);
    let b = catkit(&args, None);
    assert_eq!(a.stdout, b.stdout);
    let f = String::from_utf8(a.stdout).unwrap();

    let h = json_of(&catkit(&["hilbert"], Some(&f)));
    assert_eq!(h["hilbert"], serde_json::json!([1, 2, 2, 2, 2, 1]));
    let m = json_of(&catkit(&["member", "--family", "ps2"], Some(&f)));
    assert_eq!(m["member"], true);
    let c = json_of(&catkit(&["classify"], Some(&f)));
    assert_eq!(c["tag"], "sum_of_two");
}

#[test]
fn form_file_flag() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("f.json");
    std::fs::write(&path, form(3, 4, &[(&[4, 0, 0], "1"), (&[0, 4, 0], "1"), (&[0, 0, 4], "1")])).unwrap();
    let p = path.to_str().unwrap();
    let rank = json_of(&catkit(&["rank", "--i", "1", "--form", p], None));
    assert_eq!(rank["rank"], 3);
    let m = json_of(&catkit(&["member", "--family", "ps2", "--form", p], None));
    assert_eq!(m["member"], false);
    let m = json_of(&catkit(&["member", "--family", "vr", "--r", "3", "--form", p], None));
    assert_eq!(m["member"], true);
}

#[test]
fn catalecticant_layout() {
    let f = form(2, 3, &[(&[3, 0], "6"), (&[0, 3], "-6")]);
    let cat = json_of(&catkit(&["cat", "--i", "1"], Some(&f)));
    assert_eq!(cat["rows"], serde_json::json!([[1, 0], [0, 1]]));
    assert_eq!(cat["cols"], serde_json::json!([[2, 0], [1, 1], [0, 2]]));
    let m = cat["matrix"].as_array().unwrap();
    assert_eq!(m.len(), 2);
    assert_eq!(m[0][1], "0");
    assert_eq!(m[0][0], m[1][2].as_str().map(|s| s.trim_start_matches('-')).unwrap());
}

#[test]
fn binary_decomposition() {
    let f = form(2, 4, &[(&[4, 0], "1"), (&[0, 4], "1")]);
    let dec = json_of(&catkit(&["decompose"], Some(&f)));
    assert_eq!(dec["kind"], "waring");
    assert_eq!(dec["components"].as_array().unwrap().len(), 2);
    assert!(dec["embedding"].is_null());
}

#[test]
fn tangent_and_singular_report() {
    let f = String::from_utf8(
        catkit(&["sample", "--family", "power", "--n", "3", "--d", "4", "--seed", "2"], None).stdout,
    )
    .unwrap();
    let t = json_of(&catkit(&["tangent", "--family", "ps2", "--singular"], Some(&f)));
    assert_eq!(t["jacobian_rank"], 0);
    assert_eq!(t["tangent_dim"], 15);
    assert_eq!(t["singular"], true);
    let t = json_of(&catkit(&["tangent", "--family", "vr", "--r", "1"], Some(&f)));
    assert_eq!(t["tangent_dim"], 3);
}

#[test]
fn minors_export() {
    let out = catkit(&["minors", "--n", "2", "--d", "2", "--i", "1", "--size", "2"], None);
    assert!(out.status.success());
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        "# catkit generators n=2 d=2 i=1 r=2\nZ[2,0]*Z[0,2] - Z[1,1]^2\n"
    );
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.txt");
    let out = catkit(
        &["minors", "--n", "3", "--d", "4", "--i", "1", "--size", "3", "--out", path.to_str().unwrap()],
        None,
    );
    assert!(out.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().count(), 1 + 120);
}

#[test]
fn dims_and_verify() {
    let d = json_of(&catkit(&["dims", "--family", "vr", "--r", "2", "--n", "3", "--d", "4"], None));
    assert_eq!(d["dimension"], 7);
    assert_eq!(d["ambient_dim"], 15);
    let v = json_of(&catkit(&["verify", "--suite", "transpose-identity", "--trials", "5"], None));
    assert_eq!(v[0]["failures"], serde_json::json!([]));
    assert_eq!(v[0]["trials"], 5);
}

#[test]
fn usage_errors_exit_one() {
    let bad = [
        catkit(&["frobnicate"], None),
        catkit(&["rank", "--i", "1"], Some("{ not json")),
        catkit(&["rank", "--i", "7"], Some(&form(2, 3, &[(&[3, 0], "1")]))),
        catkit(&["member", "--family", "vr"], Some(&form(2, 3, &[(&[3, 0], "1")]))),
        catkit(&["verify", "--suite", "no-such-suite"], None),
        catkit(&["sample", "--family", "ps:0", "--n", "3", "--d", "4"], None),
    ];
    for out in bad {
        assert_eq!(out.status.code(), Some(1), "{}", String::from_utf8_lossy(&out.stderr));
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn help_exits_zero() {
    let out = catkit(&["--help"], None);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("sample"));
}
