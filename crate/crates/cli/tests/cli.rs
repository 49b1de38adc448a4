use std::process::{Command, Output};

use bhclass_cli::commands::parse_class;
use bhclass_cli::exit;
use serde_json::Value;

fn bhclass(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bhclass")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> u8 {
    o.status.code().expect("exit code") as u8
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn machine(args: &[&str]) -> Value {
    let mut all = vec!["--format", "machine"];
    all.extend_from_slice(args);
    let o = bhclass(&all);
    assert_eq!(code(&o), exit::OK, "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_str(&stdout(&o)).unwrap()
}

#[test]
fn classify_cp2_text() {
    let o = bhclass(&["classify", "--name", "CP2"]);
    assert_eq!(code(&o), exit::OK);
    let s = stdout(&o);
    assert!(s.contains("2 isotopy classes (exact)"), "{s}");
    assert!(s.contains("Corollary"), "{s}");
}

#[test]
fn classify_s2xs2_text() {
    let s = stdout(&bhclass(&["classify", "--name", "S2xS2", "--bound", "4"]));
    assert!(s.contains("Triviality Theorem not applicable: σ = 0"), "{s}");
    assert!(s.contains("9 classes"), "{s}");
    assert!(s.contains("PossiblyInfinite"), "{s}");
}

#[test]
fn classify_machine_document() {
    let v = machine(&["classify", "--gram", "[[1]]", "--bound", "3"]);
    assert_eq!(v["schema"], "bhclass-report");
    assert_eq!(v["command"], "classify");
    let r = &v["results"][0]["classification"];
    assert_eq!(r["status"], "ok");
    assert_eq!(r["value"]["isotopy_class_count"]["kind"], "exact");
    assert_eq!(r["value"]["isotopy_class_count"]["count"], 2);
}

#[test]
fn reverse_orientation_negates_signature() {
    let v = machine(&["classify", "--name", "CP2", "--reverse-orientation"]);
    assert_eq!(v["results"][0]["signature"], -1);
    assert_eq!(v["results"][0]["orientation"], "reversed");
}

#[test]
fn k3_is_reported_not_enumerated() {
    let v = machine(&["classify", "--name", "K3-form"]);
    let c = &v["results"][0]["classification"]["value"];
    assert_eq!(c["bh_image"]["status"], "not-enumerated");
    assert_eq!(c["isotopy_class_count"]["kind"], "not-determined");
    assert_eq!(c["embeds_r6"]["verdict"], "no");
}

#[test]
fn machine_output_is_deterministic() {
    let a = bhclass(&["--format", "machine", "classify", "--bound", "5"]);
    let b = bhclass(&["--format", "machine", "classify", "--bound", "5"]);
    assert_eq!(code(&a), exit::OK);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn pi3_queries() {
    assert!(stdout(&bhclass(&["pi3", "--class", "(2,0)"])).contains("π_3: Z_2"));
    assert!(stdout(&bhclass(&["pi3", "--class", "(0,0)"])).contains("π_3: Z\n"));
    assert!(stdout(&bhclass(&["pi3", "--class", "(-3,5)"])).contains("π_3: 0"));
}

#[test]
fn tables_queries() {
    let s = stdout(&bhclass(&["tables", "E7", "S4"]));
    assert!(s.starts_with("E^7(S^4) = Z_12"), "{s}");
    assert!(stdout(&bhclass(&["tables", "t35", "9"])).contains(": no:"));
    assert!(stdout(&bhclass(&["tables", "t35", "8"])).contains(": yes:"));
    let o = bhclass(&["tables", "pi_9(S^2)"]);
    assert_eq!(code(&o), exit::UNSUPPORTED);
}

#[test]
fn ahss_window_and_spaces() {
    assert!(stdout(&bhclass(&["ahss", "S2"])).contains("conclusion: Ω₇(S^2×BO⟨5⟩)=0"));
    assert!(stdout(&bhclass(&["ahss", "CPinf"])).contains("E²_{6,1}=Z_2 killed"));
    assert_eq!(code(&bhclass(&["ahss", "S2", "--degree", "9"])), exit::INPUT);
    assert_eq!(code(&bhclass(&["ahss", "RP2"])), exit::UNSUPPORTED);
}

#[test]
fn input_errors() {
    let o = bhclass(&["classify", "--gram", "[[1,2],[3,4]]"]);
    assert_eq!(code(&o), exit::INPUT);
    assert!(String::from_utf8_lossy(&o.stderr).contains("not symmetric"));
    assert_eq!(code(&bhclass(&["classify", "--gram", "[[2]]"])), exit::INPUT);
    assert_eq!(code(&bhclass(&["classify", "--name", "nope"])), exit::INPUT);
    assert_eq!(code(&bhclass(&["pi3", "--class", "(1,x)"])), exit::INPUT);
    assert_eq!(code(&bhclass(&["classify", "--bound", "0"])), exit::INPUT);
}

#[test]
fn non_orientable_sections_are_not_applicable() {
    let v = machine(&["classify", "--name", "RP4"]);
    let r = &v["results"][0];
    assert_eq!(r["classification"]["status"], "not-applicable");
    assert_eq!(r["knots"][0]["answer"]["value"]["group"]["free_rank"], 1);
}

#[test]
fn class_syntax() {
    for s in ["(1,0)", "[1,0]", "1,0", " ( 1 , 0 ) "] {
        assert_eq!(parse_class(s).unwrap().coords().len(), 2, "{s}");
    }
    assert_eq!(parse_class("()").unwrap().rank(), 0);
    assert!(parse_class("(1,,0)").is_err());
}
