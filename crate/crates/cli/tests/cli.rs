use std::fs;
use std::path::PathBuf;
use std::process::Command;

use pseq_cli::{run, subcommands, EXIT_COMPUTE, EXIT_OK, EXIT_USAGE, OPERATIONS};

fn call(args: &[&str]) -> (i32, String, String) {
    let mut argv = vec!["pseq".to_string()];
    argv.extend(args.iter().map(|s| s.to_string()));
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(&argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn ok(args: &[&str]) -> String {
    let (code, out, err) = call(args);
    assert_eq!(code, EXIT_OK, "{args:?}: {err}");
    out
}

fn csv_rows(out: &str) -> Vec<Vec<String>> {
    out.lines().skip(1).map(|l| l.split(',').map(String::from).collect()).collect()
}

#[test]
fn every_operation_is_reachable() {
    let subs = subcommands();
    assert_eq!(subs.len(), 18);
    for (op, args) in OPERATIONS {
        assert!(subs.contains(&args[0].to_string()), "{op}");
        let out = ok(args);
        assert!(out.lines().count() >= 2, "{op} printed no rows");
    }
    for sub in &subs {
        assert!(OPERATIONS.iter().any(|(_, a)| a[0] == sub), "subcommand {sub} has no registered operation");
    }
    // 8 + 4 + 6 + 10 + 6 + 2 + 3 library operations plus the table reproducer
    assert_eq!(OPERATIONS.len(), 40);
}

#[test]
fn gen_exponent_three_matches_printed_column() {
    let out = ok(&["gen", "--family", "X", "--p", "3", "--n", "25", "--format", "csv"]);
    let rows = csv_rows(&out);
    assert_eq!(rows.len(), 26);
    let t = pseq::tables::table("p3").unwrap();
    let col = t.column("S_X").unwrap();
    for (r, want) in rows.iter().zip(col) {
        assert_eq!(&r[1], want);
    }
}

#[test]
fn ratio_reproduces_limits_table() {
    let rows = csv_rows(&ok(&["ratio", "--p", "2..21", "--digits", "5"]));
    let t = pseq::tables::table("plimits").unwrap();
    assert_eq!(rows.len(), 20);
    for (r, want) in rows.iter().zip(&t.rows) {
        assert_eq!(r[0], want[0]);
        assert_eq!(r[1].parse::<f64>().unwrap(), want[1].parse::<f64>().unwrap());
    }
}

#[test]
fn roots_of_fifth_golden_polynomial() {
    let rows = csv_rows(&ok(&["roots", "--golden-p", "5", "--format", "csv"]));
    assert_eq!(rows.len(), 5);
    assert_eq!(rows.iter().filter(|r| r[0] == "1.96595" && r[1] == "0.00000").count(), 1);
}

#[test]
fn json_envelope() {
    let out = ok(&["gen", "--family", "S", "--p", "3", "--n", "4", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["params"]["command"], "gen");
    assert_eq!(v["params"]["p"], "3");
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 5);
    assert_eq!(rows[4]["t"], "13");
}

#[test]
fn integers_are_exact_strings() {
    let rows = csv_rows(&ok(&["gen", "--family", "fib", "--n", "300"]));
    assert_eq!(rows[300][1], "222232244629420445529739893461909967206666939096499764990979600");
    let v: serde_json::Value = serde_json::from_str(&ok(&["binet", "--n", "150", "--format", "json"])).unwrap();
    assert!(v["rows"][0]["binet"].is_string());
}

#[test]
fn output_is_lf_terminated() {
    let out = ok(&["cassini", "--n", "1..5"]);
    assert!(!out.contains('\r'));
    assert!(out.ends_with('\n'));
    assert_eq!(out.lines().next(), Some("n,f_next,f_prev,f_n,value"));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["frobnicate"][..],
        &["gen", "--p", "x"],
        &["gen", "--family", "Q"],
        &["gen", "--family", "K3", "--p", "3"],
        &["sum", "--p", "9"],
        &["cassini", "--n", "0"],
        &["ratio", "--p", "5..2"],
        &["breed", "--beta", "3", "--delta", "2"],
        &["tables", "nope"],
        &["qmat", "--coeffs", "1,0"],
        &["gen", "--family", "G"],
    ] {
        let (code, out, err) = call(args);
        assert_eq!(code, EXIT_USAGE, "{args:?}");
        assert!(out.is_empty() && !err.is_empty(), "{args:?}");
    }
}

#[test]
fn failing_reproduction_is_a_computation_error_under_strict() {
    let (code, out, _) = call(&["tables", "a1b2gna", "--strict"]);
    assert_eq!(code, EXIT_COMPUTE);
    assert!(out.contains("FAIL"));
    assert_eq!(call(&["tables", "a1b2gna"]).0, EXIT_OK);
    // errata alone do not fail a strict run
    assert_eq!(call(&["tables", "p4", "--strict"]).0, EXIT_OK);
}

#[test]
fn help_and_list() {
    assert!(ok(&["--help"]).contains("Usage"));
    let listed = csv_rows(&ok(&["tables", "--list"]));
    assert_eq!(listed.len(), 19);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_pseq");
    let st = |args: &[&str]| Command::new(bin).args(args).output().unwrap();
    let o = st(&["cassini", "--n", "1..3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&o.stdout), "n,f_next,f_prev,f_n,value\n1,1,0,1,-1\n2,2,1,1,1\n3,3,1,2,-1\n");
    assert_eq!(st(&["nope"]).status.code(), Some(2));
    assert_eq!(st(&["tables", "a2b2g3", "--strict"]).status.code(), Some(1));
}

/// Documented invocations whose output is pinned byte-for-byte.
const GOLDEN: &[(&str, &[&str])] = &[
    ("gen_x3", &["gen", "--family", "X", "--p", "3", "--n", "25", "--format", "csv"]),
    ("ratio_limits", &["ratio", "--p", "2..21", "--digits", "5"]),
    ("roots_golden5", &["roots", "--golden-p", "5", "--format", "csv"]),
    ("classic_wilson", &["classic", "--kind", "wilson", "--p", "1..9"]),
    ("sumsq_4", &["sumsq", "--p", "4", "--n", "1..9"]),
    ("cf_phi", &["cf", "--phi-power", "1", "--convergents", "10", "--format", "json"]),
    ("patterns", &["cf", "--patterns", "1..10"]),
    ("breed_a2b3g2", &["breed", "--alpha", "2", "--beta", "3", "--gamma", "2", "--steps", "15"]),
    ("gf_x4", &["gf", "--family", "X", "--p", "4", "--terms", "10", "--format", "json"]),
    ("detid", &["detid", "--p", "2..5", "--n", "1..4"]),
    ("angle_golden", &["angle", "--p", "1..5"]),
    ("compositions", &["compositions", "--n", "4", "--classes"]),
    ("tables_sum4xsq", &["tables", "sum4xsq"]),
    ("qmat_state", &["qmat", "--p", "4", "--state", "3,2,1,0", "--n", "20", "--format", "json"]),
    ("reduce_3", &["reduce", "--p", "3", "--n", "0..8", "--digits", "8"]),
];

#[test]
fn golden_files_are_stable() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    let bless = std::env::var_os("PSEQ_BLESS").is_some();
    for (name, args) in GOLDEN {
        let out = ok(args);
        assert_eq!(out, ok(args), "{name}: output differs between runs");
        let path = dir.join(format!("{name}.out"));
        if bless {
            fs::write(&path, &out).unwrap();
        }
        let want = fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing golden file {}", path.display()));
        assert_eq!(out, want, "{name}");
    }
}
