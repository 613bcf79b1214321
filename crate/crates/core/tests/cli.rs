use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use polarlorentz::chainfile::{fmt_sig17, format_matrix, parse_chain};
use polarlorentz::filter::Target;
use polarlorentz::iwasawa::shear2;
use polarlorentz::wigner::wigner_angle;

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_polarlorentz"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn design_output_is_a_chain_that_verifies() {
    let dir = tempfile::tempdir().unwrap();
    let out = bin(&["wigner-design", "--omega", "0.3", "--eta", "1.5"]);
    assert_eq!(out.status.code(), Some(0));
    let chain = write(dir.path(), "design.chain", &stdout(&out));
    assert_eq!(parse_chain(&fs::read_to_string(&chain).unwrap()).unwrap().len(), 3);

    let rotation = polarlorentz::Matrix2::rotation(0.3);
    let target = write(dir.path(), "rot.txt", &format_matrix(&Target::Jones(rotation)));
    let v = bin(&["verify", &chain, &target]);
    assert_eq!(v.status.code(), Some(0), "{}", stdout(&v));
    assert!(stdout(&v).contains("passed = true"));
}

#[test]
fn iwasawa_output_verifies_against_shear_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = bin(&["iwasawa", "--u", "-2"]);
    assert_eq!(out.status.code(), Some(0));
    let chain = write(dir.path(), "shear.chain", &stdout(&out));
    assert_eq!(parse_chain(&stdout(&out)).unwrap().len(), 2);

    let target = write(dir.path(), "shear.txt", &format_matrix(&Target::Jones(shear2(-2.0))));
    assert_eq!(bin(&["verify", &chain, &target]).status.code(), Some(0));

    let perturbed = write(dir.path(), "perturbed.txt", "1 0 -2.01 0\n0 0 1 0\n");
    let v = bin(&["verify", &chain, &perturbed]);
    assert_eq!(v.status.code(), Some(1));
    let text = stdout(&v);
    let line = text.lines().find(|l| l.starts_with("residual_maxabs")).unwrap();
    let r: f64 = line.split('=').nth(1).unwrap().trim().parse().unwrap();
    assert!((r - 0.01).abs() < 1e-12, "{text}");
}

#[test]
fn identity_chain_against_identity_4x4() {
    let dir = tempfile::tempdir().unwrap();
    let chain = write(dir.path(), "empty.chain", "# nothing here\n");
    let target = write(dir.path(), "id.txt", "1 0 0 0\n0 1 0 0\n0 0 1 0\n0 0 0 1\n");
    let v = bin(&["--format", "csv", "verify", &chain, &target]);
    assert_eq!(v.status.code(), Some(0));
    assert_eq!(
        stdout(&v),
        "representation,residual_maxabs,tolerance,passed\n4x4,0,1.0000000000000001e-09,true\n"
    );
}

#[test]
fn apply_reports_both_paths() {
    let dir = tempfile::tempdir().unwrap();
    let empty = write(dir.path(), "empty.chain", "");
    let out = bin(&["apply", &empty, "--jones", "1,0,0,0"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("jones_out = 1 0 0 0\n"), "{text}");
    assert!(text.contains("stokes_via_jones = 1 1 0 0\n"));

    let half = write(dir.path(), "half.chain", "ROT phi=3.141592653589793\n");
    let out = bin(&["apply", &half, "--jones", "1,0,0,0"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let line = text.lines().find(|l| l.starts_with("stokes_via_mueller")).unwrap();
    let s: Vec<f64> = line
        .split('=')
        .nth(1)
        .unwrap()
        .split_whitespace()
        .map(|x| x.parse().unwrap())
        .collect();
    assert!((s[0] - 1.0).abs() < 1e-15 && (s[1] + 1.0).abs() < 1e-15 && s[2].abs() < 1e-15);
}

#[test]
fn malformed_inputs_exit_2_with_line_numbers() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.chain", "# ok\nROT phi=1\nATT eta=abc axis=0\n");
    let out = bin(&["apply", &bad, "--jones", "1,0,0,0"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("line 3"), "{err}");

    let good = write(dir.path(), "good.chain", "ROT phi=1\n");
    let bad_target = write(dir.path(), "bad.txt", "1 0 0\n");
    assert_eq!(bin(&["verify", &good, &bad_target]).status.code(), Some(2));
    assert_eq!(bin(&["apply", &good, "--jones", "1,0"]).status.code(), Some(2));
    assert_eq!(
        bin(&["apply", "/nonexistent/x.chain", "--jones", "1,0,0,0"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(bin(&["wigner", "--eta", "abc", "--theta", "1"]).status.code(), Some(2));
    assert_eq!(bin(&["bogus"]).status.code(), Some(2));
}

#[test]
fn sweep_csv_recomputes_bit_exactly() {
    let out = bin(&["sweep", "--eta", "0.1:3:5", "--theta", "0.05:3.0915926535897933:7"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("eta,theta,omega_rad,residual_maxabs"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 35);
    for row in rows {
        let f: Vec<&str> = row.split(',').collect();
        let (eta, theta): (f64, f64) = (f[0].parse().unwrap(), f[1].parse().unwrap());
        assert_eq!(fmt_sig17(wigner_angle(eta, theta)), f[2]);
        assert!(f[3].parse::<f64>().unwrap() < 1e-9);
    }
}

#[test]
fn sweep_row_at_right_angle() {
    let out = bin(&["sweep", "--eta", "1:2:2", "--theta", "1.5707963267948966:3:2"]);
    let text = stdout(&out);
    let first = text.lines().nth(1).unwrap();
    let omega: f64 = first.split(',').nth(2).unwrap().parse().unwrap();
    assert!((omega - 0.4207834).abs() < 1e-6);
}
