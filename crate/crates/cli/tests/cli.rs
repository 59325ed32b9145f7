use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Stdio};

use mukai_cli::{exit, Envelope, ErrorEnvelope, ReduceOutput, StrataOutput, WallsOutput, SCHEMA_VERSION};
use mukai_core::ExistenceReport;
use serde::de::DeserializeOwned;
use serde::Serialize;

const Z: &str = "[0,0,0,0,0,0,0,0,0,0]";

fn mukai(args: &[&str], stdin: &str) -> (String, String, i32) {
    let mut child = Command::new(env!("CARGO_BIN_EXE_mukai"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    (
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
        out.status.code().unwrap(),
    )
}

fn golden_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

/// Golden files and the requests that produce them; set
/// `MUKAI_UPDATE_GOLDEN=1` to rewrite them.
fn golden_cases() -> Vec<(&'static str, Vec<String>, i32)> {
    let z = Z.to_string();
    let s = |x: &str| x.to_string();
    vec![
        ("analyze_2_0_m1.json", vec![s("--json"), s("analyze"), format!("(2; {z}; -2)"), s("--L"), z.clone()], 0),
        (
            "analyze_case_c.json",
            vec![
                s("--json"),
                s("analyze"),
                s("(4; [2,2,0,0,0,0,0,0,0,0]; 0)"),
                s("--unnodal"),
                s("false"),
                s("--nodal-witness"),
                s("(2; [1,1,0,0,0,0,0,0,0,0]; 2)"),
            ],
            0,
        ),
        ("analyze_isotropic.json", vec![s("--json"), s("analyze"), s("(2; [0,1,0,0,0,0,0,0,0,0]; 0)")], 0),
        ("reduce_rank_two.json", vec![s("--json"), s("reduce"), s("(6; [1,2,0,0,0,0,0,0,0,0]; 0)")], 0),
        ("reduce_rank_four.json", vec![s("--json"), s("reduce"), s("(8; [4,2,0,0,0,0,0,0,0,0]; 2)")], 0),
        ("strata_2_0_m1.json", vec![s("--json"), s("strata"), format!("(2; {z}; -2)"), s("--types")], 0),
        (
            "walls_2_e2_0.json",
            vec![
                s("--json"),
                s("walls"),
                s("(2; [0,1,0,0,0,0,0,0,0,0]; 0)"),
                s("--region"),
                s("1"),
                s("--chamber"),
                s("--H"),
                s("[1,1,0,0,0,0,0,0,0,0]"),
            ],
            0,
        ),
        ("error_rank_zero.json", vec![s("--json"), s("analyze"), format!("(0; {z}; 2)")], exit::PRECONDITION),
        ("error_parity.json", vec![s("--json"), s("analyze"), format!("(1; {z}; 0)")], exit::PARSE),
    ]
}

#[test]
fn outputs_match_golden_files() {
    let update = std::env::var_os("MUKAI_UPDATE_GOLDEN").is_some();
    for (name, args, code) in golden_cases() {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let (stdout, _, got) = mukai(&args, "");
        assert_eq!(got, code, "{name}");
        let path = golden_path(name);
        if update {
            std::fs::write(&path, &stdout).unwrap();
        }
        let want = std::fs::read_to_string(&path).unwrap();
        assert_eq!(stdout, want, "{name} differs from its golden file");
    }
}

fn round_trip<T: Serialize + DeserializeOwned + PartialEq + std::fmt::Debug>(name: &str) -> T {
    let text = std::fs::read_to_string(golden_path(name)).unwrap();
    let parsed: T = serde_json::from_str(&text).unwrap();
    let again: T = serde_json::from_str(&serde_json::to_string(&parsed).unwrap()).unwrap();
    assert_eq!(parsed, again, "{name}");
    let value: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(serde_json::to_value(&parsed).unwrap(), value, "{name}");
    parsed
}

#[test]
fn golden_files_reparse_into_equal_values() {
    let a: Envelope<ExistenceReport> = round_trip("analyze_2_0_m1.json");
    assert_eq!(a.schema_version, SCHEMA_VERSION);
    assert!(a.result.mu_stable_exists);
    assert_eq!((a.result.square, a.result.threshold), (4, 4));
    assert!(!a.citations.is_empty());
    let c: Envelope<ExistenceReport> = round_trip("analyze_case_c.json");
    assert_eq!(c.result.classification.case, mukai_core::Case::C);
    round_trip::<Envelope<ExistenceReport>>("analyze_isotropic.json");
    let r: Envelope<ReduceOutput> = round_trip("reduce_rank_two.json");
    assert!(r.result.certificate.preserved);
    round_trip::<Envelope<ReduceOutput>>("reduce_rank_four.json");
    let s: Envelope<StrataOutput> = round_trip("strata_2_0_m1.json");
    assert!(s.result.report.exceptional);
    assert_eq!(s.result.report.pss_min, Some(1));
    let w: Envelope<WallsOutput> = round_trip("walls_2_e2_0.json");
    assert_eq!(w.result.count, w.result.walls.len());
    assert!(w.result.polarization.unwrap().general);
    let e: ErrorEnvelope = round_trip("error_rank_zero.json");
    assert_eq!((e.exit_code, e.error.kind.as_str()), (exit::PRECONDITION, "precondition"));
    let e: ErrorEnvelope = round_trip("error_parity.json");
    assert_eq!((e.exit_code, e.error.position), (exit::PARSE, Some(27)));
}

#[test]
fn output_is_deterministic() {
    let args = ["--json", "walls", "(2; [0,0,0,0,0,0,0,0,0,0]; -2)", "--chamber"];
    assert_eq!(mukai(&args, ""), mukai(&args, ""));
}

#[test]
fn exit_codes() {
    assert_eq!(mukai(&["selftest", "medium"], "").2, exit::PARSE);
    assert_eq!(mukai(&["analyze"], "").2, exit::PARSE);
    assert_eq!(mukai(&["frobnicate"], "").2, exit::PARSE);
    assert_eq!(mukai(&["analyze", "(2; [0,0]; 0)"], "").2, exit::PARSE);
    assert_eq!(mukai(&["analyze", &format!("(0; {Z}; 2)")], "").2, exit::PRECONDITION);
    assert_eq!(mukai(&["reduce", &format!("(3; {Z}; 1)")], "").2, exit::PRECONDITION);
    assert_eq!(mukai(&["walls", &format!("(1; {Z}; 1)")], "").2, exit::PRECONDITION);
    assert_eq!(mukai(&["strata", &format!("(2; {Z}; 0)")], "").2, exit::PRECONDITION);
    assert_eq!(mukai(&["--wall-bound-scale", "0", "walls", &format!("(2; {Z}; 0)")], "").2, exit::PRECONDITION);
    assert_eq!(mukai(&["--nodal-witness", "all", "analyze", &format!("(2; {Z}; -2)")], "").2, exit::PRECONDITION);
    assert_eq!(mukai(&["--help"], "").2, exit::OK);
}

#[test]
fn parse_errors_point_at_the_offending_character() {
    let (_, stderr, code) = mukai(&["analyze", "(2; [0,0,0,0,0,0,0,0,0,x]; 0)"], "");
    assert_eq!(code, exit::PARSE);
    assert!(stderr.contains("position 23"), "{stderr}");
    assert!(stderr.lines().any(|l| l.trim_end().ends_with('^')), "{stderr}");
}

#[test]
fn text_report_for_the_rank_two_example() {
    let (stdout, _, code) = mukai(&["analyze", &format!("(2; {Z}; -2)"), "--L", Z], "");
    assert_eq!(code, 0);
    assert!(stdout.contains("case B"), "{stdout}");
    assert!(stdout.contains("threshold = 4"), "{stdout}");
    assert!(stdout.contains("μ-stable exists: yes"), "{stdout}");
    assert!(stdout.contains("dimension: 4"), "{stdout}");
    assert!(stdout.contains("citations: Thm-existence-caseB-threshold"), "{stdout}");
}

#[test]
fn case_c_needs_the_nodal_flags() {
    let v = "(4; [2,2,0,0,0,0,0,0,0,0]; 0)";
    let (plain, _, _) = mukai(&["analyze", v], "");
    assert!(plain.contains("case A"), "{plain}");
    let (nodal, _, _) = mukai(&["analyze", v, "--unnodal=false", "--nodal-witness", "all"], "");
    assert!(nodal.contains("case C"), "{nodal}");
}

#[test]
fn batch_emits_one_json_line_per_request() {
    let input = format!(
        "# comment\nanalyze \"(2; {Z}; -2)\"\n\nreduce \"(6; [1,2,0,0,0,0,0,0,0,0]; 0)\"\nanalyze \"(0; {Z}; 2)\"\nstrata \"(2; {Z}; -2)\"\n"
    );
    let (stdout, stderr, code) = mukai(&["--json", "batch"], &input);
    let lines: Vec<&str> = stdout.lines().collect();
    assert_eq!(lines.len(), 4, "{stdout}");
    let first: Envelope<ExistenceReport> = serde_json::from_str(lines[0]).unwrap();
    assert!(first.result.mu_stable_exists);
    let second: Envelope<ReduceOutput> = serde_json::from_str(lines[1]).unwrap();
    assert_eq!(second.result.reduction.output.r(), 2);
    let third: ErrorEnvelope = serde_json::from_str(lines[2]).unwrap();
    assert_eq!(third.exit_code, exit::PRECONDITION);
    let fourth: Envelope<StrataOutput> = serde_json::from_str(lines[3]).unwrap();
    assert!(fourth.result.report.exceptional);
    assert_eq!(code, exit::PRECONDITION);
    assert!(stderr.contains("line 5"), "{stderr}");
}

#[test]
fn batch_of_good_requests_succeeds() {
    let input = format!("analyze \"(2; {Z}; -2)\"\nwalls \"(2; [0,1,0,0,0,0,0,0,0,0]; 0)\" --region 0\n");
    let (stdout, _, code) = mukai(&["batch"], &input);
    assert_eq!(code, 0);
    assert!(stdout.contains("case B") && stdout.contains("walls: 0"), "{stdout}");
}

#[test]
fn quick_selftest_through_the_library() {
    let out = mukai_cli::run(["mukai", "--json", "selftest", "quick"], &mut std::io::empty());
    assert_eq!(out.code, exit::OK, "{}", out.stdout);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["result"]["passed"], serde_json::Value::Bool(true));
    assert_eq!(v["schema_version"], serde_json::json!(SCHEMA_VERSION));
}
