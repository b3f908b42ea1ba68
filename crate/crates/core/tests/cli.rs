use silt::cli::run;

fn silt(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut full = vec!["silt"];
    full.extend_from_slice(args);
    let code = run(full, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

const FIX: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures");

#[test]
fn check_reports_verdicts() {
    let (code, out, _) = silt(&["check", "@nakayama2"]);
    assert_eq!(code, 0);
    assert!(out.contains("silting: yes") && out.contains("tilting: yes"));
    let (code, out, _) = silt(&["check", "@a3_silt"]);
    assert_eq!(code, 0);
    assert!(out.contains("tilting: no") && out.contains("witness: Hom(P, P[-1])"));
}

#[test]
fn theorem_json_schema() {
    let (code, out, _) = silt(&["theorem", "@a2_tilt", "--report", "json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["fixture"], "a2_tilt");
    assert_eq!(v["field"], "32003");
    assert!(v["engine_version"].is_string());
    let checks = v["checks"].as_array().unwrap();
    let names: Vec<&str> = checks.iter().map(|c| c["name"].as_str().unwrap()).collect();
    let mut sorted = names.clone();
    sorted.sort();
    assert_eq!(names, sorted);
    for c in checks {
        assert_eq!(c["status"], if c["name"] == "battery" { "certified" } else { "pass" });
        assert!(c["dims"].is_object());
    }
}

#[test]
fn files_from_disk_and_rational_field() {
    let alg = format!("{FIX}/a2_tilt.alg");
    let cpx = format!("{FIX}/a2_tilt.cpx");
    let (code, out, _) = silt(&["--field", "Q", "theorem", &alg, &cpx, "--report", "json"]);
    assert_eq!(code, 0);
    assert!(out.contains("\"field\": \"Q\""));
    assert!(out.contains("\"fixture\": \"a2_tilt\""));
}

#[test]
fn complete_emits_a_parseable_silting_complex() {
    let alg = format!("{FIX}/a2_tilt.alg");
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().to_str().unwrap();
    let (code, _, _) = silt(&["complete", &alg, &format!("{FIX}/a2_p2_shift.cpx"), "--out", out_dir]);
    assert_eq!(code, 0);
    let written = dir.path().join("a2_p2_shift_completed.cpx");
    let (code, out, _) = silt(&["check", &alg, written.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.contains("silting: yes"));
}

#[test]
fn endo_writes_algebra_and_q() {
    let dir = tempfile::tempdir().unwrap();
    let (code, _, _) = silt(&["endo", "@a3_silt", "--out", dir.path().to_str().unwrap()]);
    assert_eq!(code, 0);
    let b_alg = dir.path().join("a3_silt_endo.alg");
    let q = dir.path().join("a3_silt_q.cpx");
    // Q over B is a silting complex again
    let (code, out, _) = silt(&["check", b_alg.to_str().unwrap(), q.to_str().unwrap()]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("silting: yes"));
    assert!(out.contains("summand classes: 3 of 3"));
}

#[test]
fn battery_listing() {
    let (code, out, _) = silt(&["battery", "@a2_tilt", "--report", "json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["complete"], true);
    assert_eq!(v["modules"].as_array().unwrap().len(), 3);
}

#[test]
fn exit_codes() {
    // usage
    assert_eq!(silt(&["frobnicate"]).0, 1);
    assert_eq!(silt(&["check"]).0, 1);
    // parse error
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.alg");
    std::fs::write(&bad, "vertices 2\narrow x 1 2\nrelation x\n").unwrap();
    let cpx = format!("{FIX}/a2_p1.cpx");
    let (code, _, err) = silt(&["check", bad.to_str().unwrap(), &cpx]);
    assert_eq!(code, 1);
    assert!(err.contains("line 3"), "{err}");
    // not silting: precondition
    let alg = format!("{FIX}/a2_tilt.alg");
    let (code, _, err) = silt(&["theorem", &alg, &cpx]);
    assert_eq!(code, 2);
    assert!(err.contains("presilting"), "{err}");
    // help is not an error
    assert_eq!(silt(&["--help"]).0, 0);
}

#[test]
fn ar_report_text() {
    let (code, out, _) = silt(&["ar", "@a2_tilt"]);
    assert_eq!(code, 0);
    assert!(out.contains("connecting.sequence.P2"));
    assert!(out.contains("separating"));
}
