use std::process::{Command, Output};

fn lhopf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lhopf"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_of(args: &[&str]) -> String {
    let out = lhopf(args);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout)
        .unwrap()
        .trim_end()
        .to_string()
}

#[test]
fn osp() {
    assert_eq!(stdout_of(&["osp", "S_[2,1]", "S_[2,1]"]), "S_[4,2]");
    assert_eq!(stdout_of(&["osp", "S_[]", "S_[3]"]), "S_[3]");
    assert_eq!(stdout_of(&["osp", "S_[1]", "S_[1]"]), "S_[2]");
}

#[test]
fn adem() {
    assert_eq!(stdout_of(&["adem", "S^[1,2]"]), "Sq^[3]");
    assert_eq!(stdout_of(&["adem", "S^[4,2]"]), "Sq^[4,2]");
    assert_eq!(stdout_of(&["adem", "S^[1,1]"]), "0");
}

#[test]
fn pistar() {
    assert_eq!(
        stdout_of(&["pistar", "--basis", "Sq", "[6]"]),
        "S_[6] + S_[2,4]"
    );
    assert_eq!(stdout_of(&["pistar", "--basis", "xi", "[0,2]"]), "S_[4,2]");
    assert_eq!(stdout_of(&["pistar", "--basis", "Sq", "[4,2]"]), "S_[4,2]");
}

#[test]
fn pistar_rejects_bad_input() {
    assert_eq!(
        lhopf(&["pistar", "--basis", "Sq", "[1,2]"]).status.code(),
        Some(2)
    );
    assert_eq!(
        lhopf(&["--max-degree", "4", "pistar", "--basis", "Sq", "[6]"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn milnor() {
    assert_eq!(stdout_of(&["milnor", "[6]"]), "Sq_[6] + Sq_[4,2]");
    assert_eq!(stdout_of(&["milnor", "[3,1]"]), "Sq_[5,1] + Sq_[4,2]");
    assert_eq!(stdout_of(&["milnor", "[1]"]), "Sq_[1]");
}

#[test]
fn chi() {
    assert_eq!(
        stdout_of(&["chi", "--side", "dual", "S_[1,2,3]"]),
        "S_[6] + S_[5,1] + S_[3,3] + S_[3,2,1]"
    );
    let f = "S^[1,1,2] + S^[2,1,1] + S^[1,1,1,1]";
    let out = stdout_of(&["chi", "--side", "free", f]);
    assert_eq!(out, "S^[2,1,1] + S^[1,1,2] + S^[1,1,1,1]");
    assert_eq!(stdout_of(&["chi", "--side", "dual", "S_[]"]), "S_[]");
    assert_eq!(
        lhopf(&["chi", "--side", "free", "S_[1]"]).status.code(),
        Some(2)
    );
}

#[test]
fn dualize() {
    assert_eq!(stdout_of(&["dualize", "S^[1,3,2]"]), "S_[2,1,2,1]");
    assert_eq!(
        stdout_of(&["dualize", "S^[1,1,2] + S^[2,1,1] + S^[1,1,1,1]"]),
        "S_[4] + S_[3,1] + S_[1,3]"
    );
    assert_eq!(stdout_of(&["dualize", "S^[1]"]), "S_[1]");
}

#[test]
fn table() {
    let text = stdout_of(&["table", "--degree", "6", "--what", "adem"]);
    let row = text.lines().find(|l| l.starts_with("Sq_[5,1]")).unwrap();
    assert_eq!(row.matches("S_[").count(), 10);
    assert_eq!(
        stdout_of(&["table", "--degree", "1", "--what", "adem"]),
        "Sq_[1]  =  S_[1]"
    );
    let milnor = stdout_of(&["table", "--degree", "6", "--what", "milnor"]);
    assert!(milnor
        .lines()
        .any(|l| l.starts_with("xi_[6]") && l.ends_with("=  Sq_[6] + Sq_[4,2]")));
}

#[test]
fn table_json_lines() {
    let text = stdout_of(&["--json", "table", "--degree", "6", "--what", "adem"]);
    let rows: Vec<serde_json::Value> = text
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(rows.len(), 3);
    let six = rows.iter().find(|r| r["row"] == "Sq_[6]").unwrap();
    assert_eq!(six["degree"], 6);
    assert_eq!(six["terms"], serde_json::json!([[6], [2, 4]]));
    assert_eq!(
        lhopf(&[
            "--max-degree",
            "5",
            "table",
            "--degree",
            "6",
            "--what",
            "adem"
        ])
        .status
        .code(),
        Some(2)
    );
}

#[test]
fn verify_exit_codes() {
    assert_eq!(
        lhopf(&["verify", "--suite", "antipode", "--max-degree", "8"])
            .status
            .code(),
        Some(0)
    );
    assert_eq!(
        lhopf(&["verify", "--suite", "duality", "--max-degree", "8"])
            .status
            .code(),
        Some(0)
    );
    assert_eq!(
        lhopf(&["verify", "--suite", "bogus"]).status.code(),
        Some(2)
    );
}

#[test]
fn verify_json_report() {
    let dir = std::env::temp_dir().join(format!("lhopf-report-{}.json", std::process::id()));
    let path = dir.to_str().unwrap();
    let out = lhopf(&[
        "--quiet",
        "verify",
        "--suite",
        "shuffle",
        "--max-degree",
        "6",
        "--output",
        path,
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let reports: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&dir).unwrap()).unwrap();
    std::fs::remove_file(&dir).ok();
    let first = &reports[0];
    assert_eq!(first["status"], "pass");
    assert_eq!(first["degree"], 6);
    assert!(first["witnesses"].as_array().unwrap().is_empty());
}

#[test]
fn parse_errors_carry_columns() {
    let out = lhopf(&["osp", "S_[1,2", "S_[1]"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("column 7"));
    assert_eq!(lhopf(&["osp", "S^[1]", "S_[1]"]).status.code(), Some(2));
}

#[test]
fn json_output_of_sums() {
    let text = stdout_of(&["--json", "pistar", "--basis", "sq", "[6]"]);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(
        v,
        serde_json::json!({"basis": "dual", "terms": [[6], [2, 4]]})
    );
}
