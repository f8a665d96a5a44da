use std::process::{Command, Output};

use flexlocus::flex::ContactOrder;
use flexlocus_cli::report::{CertificateReport, Contact, ContactReport, Degrees, Uniqueness};

fn flexlocus(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_flexlocus"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn fermat_rho_over_fp() {
    let out = flexlocus(&["rho", "--field", "fp:101", "x0^3+x1^3+x2^3"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let first = text.lines().next().unwrap();
    let rho = first.strip_prefix("rho = ").unwrap();
    assert!(rho.ends_with("*x0*x1*x2") && !rho.contains('+'), "{rho}");
    assert!(text.contains("degree: 3 (formula: 3)"));
}

#[test]
fn squarefree_violation_exits_2() {
    let out = flexlocus(&["rho", "x0^2*x1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("squarefree"));
}

#[test]
fn low_degree_exits_2() {
    let out = flexlocus(&["rho", "x0^2+x1^2+x2^2-x3^2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("ruled"));
}

#[test]
fn small_prime_rejected() {
    let out = flexlocus(&["rho", "--field", "fp:5", "x0^3+x1^3+x2^3"]);
    assert_eq!(out.status.code(), Some(2));
    let out = flexlocus(&["rho", "--field", "fp:9", "x0^3+x1^3+x2^3"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn line_in_quadric_has_infinite_contact() {
    let args = ["contact", "x0*x3-x1*x2", "--point", "1,0,0,0", "--dir", "0,0,1,0"];
    let out = flexlocus(&args);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "infinity");
    let mut json = args.to_vec();
    json.push("--json");
    let report: ContactReport = serde_json::from_str(&stdout(&flexlocus(&json))).unwrap();
    assert_eq!(report.contact_order, Contact(ContactOrder::Infinite));
}

#[test]
fn singular_point_is_flex() {
    let out = flexlocus(&["isflex", "--field", "fp:13", "x1^2*x2-x0^3-x0^2*x2", "--point", "0,0,1"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "true");
}

#[test]
fn point_off_hypersurface() {
    let out = flexlocus(&["isflex", "x0^3+x1^3+x2^3", "--point", "1,1,1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not on the hypersurface"));
}

#[test]
fn degree_table() {
    let out = flexlocus(&["degrees", "-n", "3", "-d", "3", "--json"]);
    let d: Degrees = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!((d.deg_rho, d.deg_flex_locus, d.deg_line_locus), (9, 27, Some(27)));
}

#[test]
fn flex_line_certificate_round_trips() {
    let out = flexlocus(&["flexline", "x0^3+x1^3+x2^3", "--point", "3,-3,0", "--json"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let cert: CertificateReport = serde_json::from_str(&text).unwrap();
    assert_eq!(cert.point, ["1", "-1", "0"]);
    assert!(cert.on_hypersurface && cert.is_flex);
    assert_eq!(cert.unique_line, Uniqueness::Yes);
    assert_eq!(cert.contact_order, Some(Contact(ContactOrder::Finite(3))));
    assert_eq!(serde_json::to_string_pretty(&cert).unwrap(), text.trim_end());
}

#[test]
fn output_is_reproducible() {
    let args = ["rho", "--field", "fp:10007", "--json", "x0^4+x1^4+x2^4+x0*x1*x2^2"];
    let a = flexlocus(&args);
    let b = flexlocus(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn resultant_of_system() {
    // (x0 - x1, x0 + x1): Sylvester determinant 2
    let out = flexlocus(&["res", "x0-x1", "x0+x1"]);
    assert_eq!(stdout(&out).trim(), "2");
    let out = flexlocus(&["res", "x0*x1", "x0^2-x0*x1"]);
    assert_eq!(stdout(&out).trim(), "0");
}

#[test]
fn input_from_file_and_output_to_file() {
    let dir = std::env::temp_dir().join(format!("flexlocus-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let input = dir.join("curve.txt");
    let output = dir.join("out.txt");
    std::fs::write(&input, "x0^3 + x1^3 + x2^3\n").unwrap();
    let out = flexlocus(&[
        "isflex",
        &format!("@{}", input.display()),
        "--point",
        "0,1,-1",
        "--out",
        output.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert_eq!(std::fs::read_to_string(&output).unwrap().trim(), "true");
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn selftest_single_criterion() {
    let out = flexlocus(&["selftest", "--criterion", "2"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("[PASS] criterion  2"));
}
