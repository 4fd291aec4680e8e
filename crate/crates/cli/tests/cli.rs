//! End-to-end checks of the command-line surface: exit codes, pipelines,
//! byte-determinism, JSON mode.

use std::io::Write;
use std::process::{Command, Output, Stdio};

use waring_cli::format;
use waring_core::fixtures;

fn waring_cmd(args: &[&str], stdin: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_waring"));
    cmd.args(args);
    match stdin {
        Some(input) => {
            cmd.stdin(Stdio::piped());
            cmd.stdout(Stdio::piped());
            cmd.stderr(Stdio::piped());
            let mut child = cmd.spawn().expect("spawn waring");
            child
                .stdin
                .as_mut()
                .unwrap()
                .write_all(input.as_bytes())
                .unwrap();
            child.wait_with_output().unwrap()
        }
        None => cmd.output().expect("spawn waring"),
    }
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn exit_code(out: &Output) -> i32 {
    out.status.code().unwrap_or(-1)
}

#[test]
fn deborder_pipeline_from_fixture() {
    let border = stdout_of(&waring_cmd(&["fixtures", "eq1-fd", "--d", "5"], None));
    let out = waring_cmd(&["deborder", "-"], Some(&border));
    assert_eq!(exit_code(&out), 0);
    let text = stdout_of(&out);
    let decomposition = format::parse_waring(&text, 512).unwrap();
    assert!(decomposition.rank() <= 15);
    assert!(format::polys_equal(
        &decomposition.expand(),
        &fixtures::eq1_polynomial(5)
    ));
    assert!(text.contains("# bounds: r=6 d=5"));
}

#[test]
fn gad_on_wild_cubic_exits_three() {
    let border = stdout_of(&waring_cmd(&["fixtures", "eq2-wild"], None));
    let out = waring_cmd(&["gad", "-"], Some(&border));
    assert_eq!(exit_code(&out), 3);
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.contains("degree too low"), "stderr: {stderr}");
}

#[test]
fn verify_commands_and_exit_codes() {
    let dir = std::env::temp_dir().join("waring-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let poly_path = dir.join("tangent.poly");
    let waring_path = dir.join("tangent.waring");
    let border_path = dir.join("tangent.border");

    let d = 6u32;
    std::fs::write(
        &poly_path,
        format::print_poly(&fixtures::tangent_polynomial(d)),
    )
    .unwrap();
    let border_text = stdout_of(&waring_cmd(
        &["fixtures", "intro-tangent", "--d", "6"],
        None,
    ));
    std::fs::write(&border_path, &border_text).unwrap();
    let waring_text = stdout_of(&waring_cmd(&["deborder", "-"], Some(&border_text)));
    std::fs::write(&waring_path, &waring_text).unwrap();

    let ok = waring_cmd(
        &[
            "verify-waring",
            poly_path.to_str().unwrap(),
            waring_path.to_str().unwrap(),
        ],
        None,
    );
    assert_eq!(exit_code(&ok), 0);

    let ok = waring_cmd(
        &[
            "verify-border",
            poly_path.to_str().unwrap(),
            border_path.to_str().unwrap(),
        ],
        None,
    );
    assert_eq!(exit_code(&ok), 0);

    // tamper with one weight
    let tampered = waring_text.replacen("weight=1/36", "weight=1/35", 1);
    assert_ne!(tampered, waring_text, "expected weight to be present");
    let tampered_path = dir.join("tampered.waring");
    std::fs::write(&tampered_path, tampered).unwrap();
    let bad = waring_cmd(
        &[
            "verify-waring",
            poly_path.to_str().unwrap(),
            tampered_path.to_str().unwrap(),
        ],
        None,
    );
    assert_eq!(exit_code(&bad), 1);
}

#[test]
fn parse_errors_exit_two_with_location() {
    let malformed = "poly n=2 d=3 N=1\n1 ; 2 1 7\n";
    let out = waring_cmd(&["hilbert", "-"], Some(malformed));
    assert_eq!(exit_code(&out), 2);
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.contains("line 2"), "stderr: {stderr}");
}

#[test]
fn unknown_flags_are_rejected() {
    let out = waring_cmd(&["rank-bounds", "2", "3", "2", "--frobnicate"], None);
    assert_eq!(exit_code(&out), 2);
}

#[test]
fn byte_determinism() {
    for args in [
        vec!["fixtures", "eq1-fd", "--d", "6"],
        vec![
            "fixtures",
            "normal-form",
            "--tag",
            "SUM3",
            "--d",
            "4",
            "--seed",
            "9",
        ],
        vec!["rank-bounds", "5", "7", "3"],
    ] {
        let a = stdout_of(&waring_cmd(&args, None));
        let b = stdout_of(&waring_cmd(&args, None));
        assert_eq!(a, b, "{args:?}");
        assert!(!a.is_empty());
    }
    let border = stdout_of(&waring_cmd(&["fixtures", "eq1-fd", "--d", "5"], None));
    let a = stdout_of(&waring_cmd(&["deborder", "-"], Some(&border)));
    let b = stdout_of(&waring_cmd(&["deborder", "-"], Some(&border)));
    assert_eq!(a, b);
}

#[test]
fn json_mode_mirrors_text() {
    let border = stdout_of(&waring_cmd(
        &["fixtures", "intro-tangent", "--d", "4"],
        None,
    ));
    let out = waring_cmd(&["--json", "deborder", "-"], Some(&border));
    assert_eq!(exit_code(&out), 0);
    let doc: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(doc["waring"]["n"], 2);
    assert_eq!(doc["waring"]["d"], 4);
    assert_eq!(doc["waring"]["r"], 4);
    assert_eq!(doc["waring"]["summands"].as_array().unwrap().len(), 4);
    assert_eq!(doc["bounds"]["fp_bound"], "64");

    let out = waring_cmd(
        &["--json", "hilbert", "-"],
        Some("poly n=2 d=3 N=1\n1 ; 2 1\n"),
    );
    let doc: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(doc["hilbert"], serde_json::json!([1, 2, 2, 1]));

    let failure = waring_cmd(
        &["--json", "gad", "-"],
        Some(&stdout_of(&waring_cmd(&["fixtures", "eq2-wild"], None))),
    );
    assert_eq!(exit_code(&failure), 3);
    let doc: serde_json::Value = serde_json::from_str(&stdout_of(&failure)).unwrap();
    assert_eq!(doc["error"]["code"], 3);
}

#[test]
fn max_conductor_guard() {
    // x^{d-1}y at d = 40 needs zeta(40); a limit of 16 must reject it.
    let border = stdout_of(&waring_cmd(
        &["fixtures", "intro-tangent", "--d", "40"],
        None,
    ));
    let out = waring_cmd(&["--max-conductor", "16", "deborder", "-"], Some(&border));
    assert_eq!(exit_code(&out), 3);
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.contains("max-conductor"), "stderr: {stderr}");

    let header_too_big = "poly n=1 d=1 N=600\n1 ; 1\n";
    let out = waring_cmd(&["hilbert", "-"], Some(header_too_big));
    assert_eq!(exit_code(&out), 2);
}

#[test]
fn classify_command_reports_certificates() {
    let out = waring_cmd(&["classify", "-"], Some("poly n=2 d=5 N=1\n1 ; 4 1\n"));
    assert_eq!(exit_code(&out), 0);
    let text = stdout_of(&out);
    assert!(text.contains("tag=TANGENT"));
    assert!(text.contains("witness-form= 1 0"));
    assert!(text.contains("witness-form= 0 1"));
    assert!(text.contains("# re-verify"));

    let sample = stdout_of(&waring_cmd(
        &[
            "fixtures",
            "normal-form",
            "--tag",
            "SUM1_TANGENT",
            "--d",
            "5",
            "--seed",
            "2",
        ],
        None,
    ));
    let out = waring_cmd(&["--json", "classify", "-"], Some(&sample));
    let doc: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(doc["certificate"]["tag"], "SUM1_TANGENT");
    assert_eq!(doc["certificate"]["value"], 3);
}

#[test]
fn gad_output_reverifies() {
    let border = stdout_of(&waring_cmd(&["fixtures", "eq1-fd", "--d", "6"], None));
    let gad_text = stdout_of(&waring_cmd(&["gad", "-"], Some(&border)));

    let dir = std::env::temp_dir().join("waring-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let poly_path = dir.join("eq1.poly");
    let gad_path = dir.join("eq1.gad");
    std::fs::write(&poly_path, format::print_poly(&fixtures::eq1_polynomial(6))).unwrap();
    std::fs::write(&gad_path, &gad_text).unwrap();

    let out = waring_cmd(
        &[
            "verify-gad",
            poly_path.to_str().unwrap(),
            gad_path.to_str().unwrap(),
        ],
        None,
    );
    assert_eq!(
        exit_code(&out),
        0,
        "stderr: {}",
        String::from_utf8(out.stderr).unwrap()
    );
}

#[test]
fn deborder_rejects_nonexistent_limits() {
    let pole = "border n=2 d=3 N=1 r=1\nweight=1/e ; 1 0\n";
    let out = waring_cmd(&["deborder", "-"], Some(pole));
    assert_eq!(exit_code(&out), 3);
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.contains("limit does not exist"), "stderr: {stderr}");

    // verify-border against the same input is a verification failure
    let dir = std::env::temp_dir().join("waring-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let poly_path = dir.join("cube.poly");
    std::fs::write(&poly_path, "poly n=2 d=3 N=1\n1 ; 3 0\n").unwrap();
    let border_path = dir.join("pole.border");
    std::fs::write(&border_path, pole).unwrap();
    let out = waring_cmd(
        &[
            "verify-border",
            poly_path.to_str().unwrap(),
            border_path.to_str().unwrap(),
        ],
        None,
    );
    assert_eq!(exit_code(&out), 1);
}
