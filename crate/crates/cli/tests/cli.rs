#![allow(clippy::excessive_precision)]

use std::process::{Command, Output};

use proptest::prelude::*;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_frechet-laplace"));
    c.env_remove("FRECHET_LAPLACE_PROFILE");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn field(out: &str, key: &str) -> Vec<f64> {
    out.lines()
        .filter_map(|l| l.strip_prefix(key))
        .map(|v| v.trim().parse().unwrap())
        .collect()
}

#[test]
fn laplace_bessel_case() {
    let o = run(&["laplace", "--l", "1", "--k", "1", "--p", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let v = field(&stdout(&o), "value")[0];
    // 2·K1(2)
    assert!((v - 2.0 * 0.139_865_881_816_522_43).abs() < 1e-12, "{v}");
    assert!(stdout(&o).contains("meijer-g"));
    assert_eq!(field(&stdout(&o), "err_estimate").len(), 1);
}

#[test]
fn laplace_rejects_zero_p() {
    let o = run(&["laplace", "--l", "1", "--k", "2", "--p", "0"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("p > 0"), "{}", stderr(&o));
}

#[test]
fn laplace_both_methods_agree() {
    let o = run(&["laplace", "--l", "2", "--k", "3", "--p", "1", "--method", "both"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let v = field(&out, "value");
    assert_eq!(v.len(), 2);
    assert!((v[0] - v[1]).abs() <= 1e-8 * v[1]);
    assert!(field(&out, "rel_diff")[0] <= 1e-8);
    assert!(out.contains("meijer-g") && out.contains("quadrature"));
}

#[test]
fn laplace_auto_and_quadrature() {
    for m in ["auto", "quadrature"] {
        let o = run(&["laplace", "--l", "3", "--k", "2", "--p", "2.5", "--method", m]);
        assert_eq!(o.status.code(), Some(0), "{m}");
    }
    let o = run(&[
        "laplace", "--l", "1", "--k", "1", "--p", "1e-8", "--method", "auto",
    ]);
    assert!(stdout(&o).contains("auto (quadrature)"));
}

#[test]
fn moments() {
    let o = run(&["moment", "frechet", "--gamma", "2", "--mu", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let v: f64 = stdout(&o).trim().parse().unwrap();
    assert!((v - std::f64::consts::PI.sqrt()).abs() < 1e-14);

    let o = run(&["moment", "frechet", "--gamma", "1", "--mu", "1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("−∞ < μ < γ"), "{}", stderr(&o));

    let o = run(&["moment", "levy", "--alpha", "0.5", "--mu", "-1"]);
    let v: f64 = stdout(&o).trim().parse().unwrap();
    assert!((v - 2.0).abs() < 1e-14);
    let o = run(&["moment", "levy", "--alpha", "0.5", "--mu", "0.5"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("−∞ < μ < α"));
}

#[test]
fn transforms() {
    let o = run(&["transform", "levy", "--alpha", "0.5", "--gamma", "1", "--x", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let v: f64 = stdout(&o).trim().parse().unwrap();
    assert!((v - 0.5 * (-1.0f64).exp()).abs() < 1e-15);

    let o = run(&["transform", "kernel", "--gamma", "1", "--x", "1", "--t", "2"]);
    let v: f64 = stdout(&o).trim().parse().unwrap();
    assert!((v - 2.0 * (-2.0f64).exp()).abs() < 1e-15);

    let o = run(&["transform", "frechet-half", "--gamma", "1", "--x", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!((field(&stdout(&o), "value")[0] - 0.150_045_964_505_163_88).abs() < 1e-10);

    let o = run(&["transform", "levy", "--alpha", "1.5", "--gamma", "1", "--x", "1"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn figure_csv_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    for id in ["fig1", "fig2", "fig3", "fig4"] {
        let a = dir.path().join(format!("{id}a.csv"));
        let b = dir.path().join(format!("{id}b.csv"));
        for path in [&a, &b] {
            let o = run(&["figure", id, "--output", path.to_str().unwrap(), "--points", "40"]);
            assert_eq!(o.status.code(), Some(0), "{id}: {}", stderr(&o));
        }
        let (ta, tb) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
        assert_eq!(ta, tb, "{id}");
        let text = String::from_utf8(ta).unwrap();
        assert!(!text.contains('\r'));
        let mut lines = text.lines();
        let header = lines.next().unwrap();
        assert!(header.starts_with("p,") || header.starts_with("x,"));
        let rows: Vec<Vec<f64>> = lines
            .map(|l| l.split(',').map(|f| f.parse().unwrap()).collect())
            .collect();
        assert_eq!(rows.len(), 40);
        for row in &rows {
            assert_eq!(row.len(), header.split(',').count());
            if id == "fig1" || id == "fig2" {
                assert!(row[1..].iter().all(|&v| v > 0.0 && v <= 1.0));
            } else {
                assert!(row[1..].iter().all(|&v| v >= 0.0));
            }
        }
    }
}

#[test]
fn figure_first_row_of_fig1() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("f.csv");
    run(&["figure", "fig1", "-o", path.to_str().unwrap(), "--points", "5"]);
    let text = std::fs::read_to_string(&path).unwrap();
    let first: Vec<f64> = text
        .lines()
        .nth(1)
        .unwrap()
        .split(',')
        .map(|f| f.parse().unwrap())
        .collect();
    assert_eq!(first[0], 0.01);
    assert!(first[1..].windows(2).all(|w| w[0] < w[1]));
    assert!(first[2..].iter().all(|v| (v - 1.0).abs() < 0.2));
}

#[test]
fn figure_errors() {
    let o = run(&["figure", "fig1", "-o", "/nonexistent-dir/x.csv", "--points", "3"]);
    assert_eq!(o.status.code(), Some(3));
    let o = run(&["figure", "fig1", "-o", "x.csv", "--points", "1"]);
    assert_eq!(o.status.code(), Some(1));
    let o = run(&["figure", "fig5", "-o", "x.csv"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn selfcheck_default_and_strict() {
    let o = run(&["selfcheck"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let out = stdout(&o);
    assert!(out.lines().filter(|l| l.starts_with("PASS")).count() >= 15);
    assert!(!out.contains("FAIL"));

    let o = bin()
        .arg("selfcheck")
        .env("FRECHET_LAPLACE_PROFILE", "strict")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("tol 1e-9"));
    assert!(stdout(&o).contains("profile Strict"));

    let o = run(&["selfcheck", "--profile", "lenient"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn selfcheck_list() {
    let o = run(&["selfcheck", "--list"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.lines().any(|l| l == "laplace.cross-path"));
    assert!(!out.contains("PASS"));
}

#[test]
fn help_and_version_exit_zero() {
    for args in [&["--help"][..], &["--version"], &["figure", "--help"]] {
        assert_eq!(run(args).status.code(), Some(0));
    }
    assert!(stdout(&run(&["figure", "--help"])).contains("[0.01, 100]"));
    assert_eq!(run(&[]).status.code(), Some(1));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn malformed_numbers_exit_one(junk in "[a-z!@#]{1,6}|-?[0-9]*\\.[0-9]*\\.[0-9]+") {
        let o = run(&["laplace", "--l", "1", "--k", "1", "--p", &junk]);
        prop_assert_eq!(o.status.code(), Some(1));
    }

    #[test]
    fn nonpositive_p_exits_one(p in -1e3f64..=0.0) {
        let o = run(&["laplace", "--l", "2", "--k", "1", &format!("--p={p}")]);
        prop_assert_eq!(o.status.code(), Some(1));
    }

    #[test]
    fn zero_shape_parts_exit_one(l in 0u32..3, k in 0u32..3) {
        prop_assume!(l == 0 || k == 0);
        let o = run(&["laplace", "--l", &l.to_string(), "--k", &k.to_string(), "--p", "1"]);
        prop_assert_eq!(o.status.code(), Some(1));
    }

    #[test]
    fn valid_queries_exit_zero(l in 1u32..=4, k in 1u32..=4, p in 0.01f64..20.0) {
        let o = run(&["laplace", "--l", &l.to_string(), "--k", &k.to_string(), "--p", &p.to_string()]);
        prop_assert_eq!(o.status.code(), Some(0));
        let v = field(&stdout(&o), "value")[0];
        prop_assert!(v > 0.0 && v <= 1.0);
    }
}
