//! End-to-end tests of the `swcalc` binary: golden text output, JSON
//! round-trips, exit codes, and determinism.

use std::process::Command;

use serde_json::Value;

/// Runs the binary and returns (stdout, stderr, exit code).
fn run(args: &[&str]) -> (String, String, i32) {
    let output = Command::new(env!("CARGO_BIN_EXE_swcalc"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        String::from_utf8(output.stdout).expect("stdout is UTF-8"),
        String::from_utf8(output.stderr).expect("stderr is UTF-8"),
        output.status.code().expect("process exits normally"),
    )
}

fn stdout_of(args: &[&str]) -> String {
    let (out, err, code) = run(args);
    assert_eq!(code, 0, "args {args:?} failed: {err}");
    out
}

fn json_of(args: &[&str]) -> Value {
    let out = stdout_of(args);
    let value: Value = serde_json::from_str(&out).expect("stdout parses as JSON");
    // Round-trip stability: printing and re-parsing reproduces the value.
    let reparsed: Value =
        serde_json::from_str(&value.to_string()).expect("round-trip parses");
    assert_eq!(reparsed, value);
    value
}

// ---------------------------------------------------------------------
// table
// ---------------------------------------------------------------------

const TABLE_GOLDEN: &str = "\
n     | 4  5  6  7  8  9  10 11 12 13 14 15 16 17 18 19 20 21
tau   | 0  2  1  0  0  4  5  4  3  2  1  0  0  8  9  8  8  10
kappa | 1a 2b 1c 0c 1a 4b 5a 4c 3c 2c 1c 0c 1a 8b 9a 8d 9a 10b
";

#[test]
fn table_text_is_golden_and_deterministic() {
    let args = ["table", "--min", "4", "--max", "21", "--sing", "a2"];
    let first = stdout_of(&args);
    assert_eq!(first, TABLE_GOLDEN);
    let second = stdout_of(&args);
    assert_eq!(first, second);
}

#[test]
fn table_csv_rows() {
    let out = stdout_of(&["table", "--min", "4", "--max", "6", "--sing", "a2", "--format", "csv"]);
    assert_eq!(out, "n,tau,kappa,case\n4,0,1,a\n5,2,2,b\n6,1,1,c\n");
}

#[test]
fn table_morin_values_are_fold_values_minus_one() {
    let fold = stdout_of(&["table", "--min", "4", "--max", "21", "--sing", "a2", "--format", "csv"]);
    let morin = stdout_of(&["table", "--min", "4", "--max", "21", "--sing", "sigma2", "--format", "csv"]);
    for (f, m) in fold.lines().skip(1).zip(morin.lines().skip(1)) {
        let fv: Vec<&str> = f.split(',').collect();
        let mv: Vec<&str> = m.split(',').collect();
        assert_eq!(fv[0], mv[0]);
        assert_eq!(fv[3], mv[3]);
        let (ft, mt): (i64, i64) = (fv[1].parse().unwrap(), mv[1].parse().unwrap());
        let (fk, mk): (i64, i64) = (fv[2].parse().unwrap(), mv[2].parse().unwrap());
        assert_eq!(mt, ft - 1);
        assert_eq!(mk, fk - 1);
    }
}

#[test]
fn table_seed_file_preserves_input_order() {
    let path = std::env::temp_dir().join(format!("swcalc-seeds-{}.csv", std::process::id()));
    std::fs::write(&path, "20,21\n# trailing values\n4\n").expect("seed file writes");
    let out = stdout_of(&[
        "table",
        "--seed-file",
        path.to_str().expect("temp path is UTF-8"),
        "--sing",
        "a2",
        "--format",
        "csv",
    ]);
    std::fs::remove_file(&path).ok();
    assert_eq!(out, "n,tau,kappa,case\n20,8,9,a\n21,10,10,b\n4,0,1,a\n");
}

#[test]
fn table_json_rows() {
    let value = json_of(&["table", "--min", "19", "--max", "20", "--sing", "a2", "--json"]);
    assert_eq!(value[0]["n"], 19);
    assert_eq!(value[0]["case"], "d");
    assert_eq!(value[1]["tau"], 8);
    assert_eq!(value[1]["kappa"], 9);
}

// ---------------------------------------------------------------------
// bounds / eval
// ---------------------------------------------------------------------

#[test]
fn bounds_json_flagship() {
    let value = json_of(&["bounds", "--n", "20", "--sing", "sigma2", "--json"]);
    assert_eq!(value["n"], 20);
    assert_eq!(value["family"], "Sigma2");
    assert_eq!(value["tau"], 7);
    assert_eq!(value["kappa"], 8);
    assert_eq!(value["kappa_closed"], 8);
    assert_eq!(value["case"]["label"], "a");
    assert_eq!(value["case"]["valuation"], 2);
}

#[test]
fn bounds_text_lines() {
    let out = stdout_of(&["bounds", "--n", "19", "--sing", "a2"]);
    assert!(out.starts_with("n: 19\nfamily: A2\ntau: 8\nkappa: 8\nkappa (closed form): 8\n"));
    assert!(out.contains("case: d"));
    assert!(out.contains("decomposition: a="));
}

#[test]
fn eval_flagship_schur_class() {
    assert_eq!(stdout_of(&["eval", "--space", "rp:20", "--schur", "[11,9]"]), "x^20\n");
}

#[test]
fn eval_wu_polynomial() {
    assert_eq!(
        stdout_of(&["eval", "--space", "wu", "--poly", "w2*w3+w1*w4"]),
        "u*v\n"
    );
    assert_eq!(stdout_of(&["eval", "--space", "wu", "--schur", "[2,2]"]), "0\n");
}

#[test]
fn eval_product_json() {
    let value = json_of(&[
        "eval", "--space", "rp:4,rp:6", "--schur", "[2,2,2,2]", "--json",
    ]);
    assert_eq!(value["space"], "RP4 x RP6");
    assert_eq!(value["value"][0]["monomial"], "x^4*y^4");
    assert_eq!(value["value"][0]["degree"], 8);
}

// ---------------------------------------------------------------------
// ssw-sigma / euler / chi-series
// ---------------------------------------------------------------------

#[test]
fn ssw_sigma_flagship_series() {
    let out = stdout_of(&[
        "ssw-sigma", "--r", "2", "--l", "7", "--max-degree", "20", "--closed",
    ]);
    assert_eq!(
        out,
        "deg 18: s[9,9]\ndeg 19: s[10,9]\ndeg 20: s[9,9,1,1]+s[9,9,2]+s[10,9,1]+s[11,9]\n"
    );
}

#[test]
fn ssw_sigma_negative_level_uses_the_dual_series() {
    let out = stdout_of(&["ssw-sigma", "--r", "2", "--l", "-1", "--max-degree", "4"]);
    assert!(out.starts_with("deg 2: s[1,1]\n"));
    let (_, _, code) = run(&["ssw-sigma", "--r", "1", "--l", "-1", "--max-degree", "4"]);
    assert_eq!(code, 2, "level -1 is only supported for corank 2");
}

#[test]
fn euler_case_a_text() {
    let out = stdout_of(&["euler", "--n", "20", "--sing", "sigma2"]);
    assert_eq!(
        out,
        "manifold: RP20 (dim 20)\nstratum: closed Sigma2 at level 7\nexpected dimension: 2\n\
         ssw: x^20\nsw: x^20\nparity of Euler characteristic: 1\n"
    );
}

#[test]
fn euler_slices_json() {
    let value = json_of(&[
        "euler", "--n", "10", "--sing", "sigma1", "--l", "1", "--slices", "--json",
    ]);
    assert_eq!(value["chi2"], false);
    assert_eq!(value["ssw_value"][0]["monomial"], "x^4");
    assert_eq!(value["slices"]["4"], true);
    assert_eq!(value["slices"]["5"], false);
    assert_eq!(value["slices"]["6"], true);
}

#[test]
fn chi_series_reduced_text() {
    let out = stdout_of(&["chi-series", "--sing", "a2", "--max-degree", "6", "--reduce"]);
    assert_eq!(
        out,
        "stratum: A2(0)\ndeg 2: tau2\ndeg 4: tau1^2*tau2+tau2^2+tau4\ndeg 6: tau2*tau4\n"
    );
}

#[test]
fn chi_series_closure_text() {
    let out = stdout_of(&[
        "chi-series", "--closure", "A2,A3,A4,A5,I22", "--max-degree", "5",
    ]);
    assert_eq!(
        out,
        "strata: A2, A3, A4, A5, I22\ndeg 1: 0\ndeg 2: tau2\ndeg 3: 0\ndeg 4: tau4\ndeg 5: 0\n"
    );
}

#[test]
fn chi_series_json_reports_reduction() {
    let value = json_of(&[
        "chi-series", "--sing", "sigma2", "--max-degree", "6", "--reduce", "--json",
    ]);
    assert_eq!(value["stratum"], "Sigma2");
    assert_eq!(value["reduced"], true);
    assert_eq!(value["series"]["by_degree"]["4"], "tau2^2");
    assert_eq!(value["series"]["by_degree"]["6"], "tau2*tau4+tau6");
}

// ---------------------------------------------------------------------
// lower / sq / aluffi / restriction-demo
// ---------------------------------------------------------------------

#[test]
fn lower_and_sq_pins() {
    assert_eq!(
        stdout_of(&["lower", "--j", "1", "--schur", "[2,2]", "--to-schur"]),
        "poly: w1*w2+w3\nschur: s[2,1]\n"
    );
    assert_eq!(
        stdout_of(&["sq", "--k", "2", "--schur", "[2,2]"]),
        "s[2,2,1,1]+s[2,2,2]+s[3,2,1]+s[3,3]+s[4,2]\n"
    );
    assert_eq!(stdout_of(&["sq", "--k", "1", "--poly", "w2^2+w1*w3"]), "0\n");
}

#[test]
fn aluffi_matrix_and_inverse() {
    assert_eq!(stdout_of(&["aluffi", "--n", "2"]), "0 0 1\n0 1 1\n1 0 0\n");
    assert_eq!(
        stdout_of(&["aluffi", "--n", "2", "--inverse"]),
        "0 0 1\n1 1 0\n1 0 0\n"
    );
    let value = json_of(&["aluffi", "--n", "2", "--json"]);
    assert_eq!(value["n"], 2);
    assert_eq!(value["matrix"][0], serde_json::json!([0, 0, 1]));
}

#[test]
fn restriction_demo_text_and_json() {
    let out = stdout_of(&["restriction-demo"]);
    assert!(out.contains("27*c1^3 - 9*c1*c2 + 3*c3 = -36"));
    assert!(out.contains("solution: c1^3 = -3, c1*c2 = -6, c3 = -3"));
    assert!(out.contains("class: (c1^2+c2)-(3*c1^3+6*c1*c2+3*c3)"));
    assert!(out.contains("mod 2, degree 3: w1^3+w3"));
    let value = json_of(&["restriction-demo", "--json"]);
    assert_eq!(value["solution"], serde_json::json!(["-3", "-6", "-3"]));
    // Polynomials serialize as exponent maps: w1^2 + w2.
    assert_eq!(
        value["degree2_mod2"],
        serde_json::json!([{"1": 2}, {"2": 1}])
    );
}

// ---------------------------------------------------------------------
// exit codes
// ---------------------------------------------------------------------

#[test]
fn usage_errors_exit_2() {
    let (_, _, code) = run(&["bounds", "--n", "20", "--sing", "sigma2", "--bogus"]);
    assert_eq!(code, 2);
    let (_, _, code) = run(&["bounds", "--n", "20", "--sing", "q9"]);
    assert_eq!(code, 2);
    let (_, _, code) = run(&["no-such-command"]);
    assert_eq!(code, 2);
    let (_, _, code) = run(&["euler", "--n", "10", "--sing", "sigma1"]);
    assert_eq!(code, 2);
    let (_, _, code) = run(&["eval", "--space", "torus:3", "--schur", "[1]"]);
    assert_eq!(code, 2);
    let (_, _, code) = run(&["eval", "--space", "rp:5", "--schur", "[1,2]"]);
    assert_eq!(code, 2, "increasing parts are rejected");
}

#[test]
fn domain_errors_exit_1() {
    let (_, err, code) = run(&["euler", "--n", "5", "--sing", "sigma2"]);
    assert_eq!(code, 1);
    assert!(err.contains("case"));
    let (_, _, code) = run(&["chi-series", "--sing", "a2", "--max-degree", "9"]);
    assert_eq!(code, 1);
}
