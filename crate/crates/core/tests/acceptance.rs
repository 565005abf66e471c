//! End-to-end acceptance run through the `qhcalc` binary.
//!
//! Every check is exact: tolerance zero on every compared rational, series
//! compared coefficientwise down to floor -40.

use std::collections::BTreeSet;
use std::io::Write;
use std::process::Command;

use serde_json::Value;

const TOLERANCE: &str = "exact (zero tolerance; series to floor -40)";

fn verify(extra: &[&str]) -> (i32, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_qhcalc"))
        .args(["verify-paper", "--format", "json"])
        .args(extra)
        .output()
        .expect("binary runs");
    (out.status.code().unwrap_or(-1), out.stdout)
}

fn criteria(report: &Value) -> Vec<(u64, bool, bool, String)> {
    report["criteria"]
        .as_array()
        .expect("criteria array")
        .iter()
        .map(|c| {
            (
                c["id"].as_u64().unwrap(),
                c["passed"].as_bool().unwrap(),
                c["table_dependent"].as_bool().unwrap(),
                c["detail"].as_str().unwrap().to_string(),
            )
        })
        .collect()
}

// Written straight to stdout so the lines survive test output capture.
fn line(id: u64, passed: bool, detail: &str) {
    let text = format!("criterion {id:>2}: {}  [{TOLERANCE}]  {detail}\n", if passed { "PASS" } else { "FAIL" });
    std::io::stdout().lock().write_all(text.as_bytes()).unwrap();
}

#[test]
fn acceptance() {
    let (code_a, run_a) = verify(&[]);
    let (code_b, run_b) = verify(&[]);
    let report: Value = serde_json::from_slice(&run_a).expect("json report");
    let results = criteria(&report);
    assert_eq!(results.len(), 10);
    std::io::stdout().lock().write_all(b"\n").unwrap();
    for (id, passed, _, detail) in &results {
        line(*id, *passed, detail);
    }

    let (code_p, run_p) = verify(&["--perturbed-table"]);
    let perturbed: Value = serde_json::from_slice(&run_p).expect("json report");
    let failed: BTreeSet<u64> = criteria(&perturbed).iter().filter(|c| !c.1).map(|c| c.0).collect();
    let dependent: BTreeSet<u64> = results.iter().filter(|c| c.2).map(|c| c.0).collect();
    let identical = run_a == run_b && code_a == code_b;
    let control = failed.contains(&1) && failed.is_subset(&dependent) && code_p == 1;
    line(
        11,
        identical && control,
        &format!(
            "two runs byte-identical: {identical}; perturbed table fails {failed:?}, all within the table-dependent set {dependent:?}"
        ),
    );

    // Linearity along the loop is reported literally: the residuals of the
    // sphere product and of the blow-up above 1/3 are periodic, not constant.
    let (_, c8, _, d8) = &results[7];
    assert!(!c8, "criterion 8 is expected to fail: {d8}");
    assert!(d8.contains("residual not constant (period 2)") && d8.contains("residual not constant (period 4)"));
    assert!(!d8.contains("slope 0,"));
    for (id, passed, _, detail) in &results {
        if *id != 8 {
            assert!(passed, "criterion {id}: {detail}");
        }
    }
    assert_eq!(code_a, 1, "a failing criterion gives exit code 1");
    assert!(identical, "verify-paper output differs between runs");
    assert!(control, "negative control: failed {failed:?}, dependent {dependent:?}");
}
