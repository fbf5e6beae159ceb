use std::fs;
use std::path::Path;
use std::process::Command;

fn gensamp(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_gensamp")).args(args).output().unwrap()
}

fn run_into(dir: &Path, args: &[&str]) {
    let mut all = args.to_vec();
    let out = dir.to_str().unwrap();
    all.extend(["--out", out]);
    let o = gensamp(&all);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
}

fn read_sorted(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut v: Vec<_> = fs::read_dir(dir)
        .unwrap()
        .map(|e| {
            let e = e.unwrap();
            (e.file_name().into_string().unwrap(), fs::read(e.path()).unwrap())
        })
        .collect();
    v.sort();
    v
}

#[test]
fn reruns_are_byte_identical() {
    for args in [
        &["shannon-check", "--n", "31"][..],
        &["fig-stability", "--n", "40"],
        &["ex-pointwise-recon", "--grid", "200"],
        &["fig-psi", "--n", "30"],
    ] {
        let a = tempfile::tempdir().unwrap();
        let b = tempfile::tempdir().unwrap();
        run_into(a.path(), args);
        run_into(b.path(), args);
        let (ra, rb) = (read_sorted(a.path()), read_sorted(b.path()));
        assert!(!ra.is_empty());
        assert_eq!(ra, rb, "{args:?}");
    }
}

#[test]
fn tables_start_with_config_and_header() {
    let d = tempfile::tempdir().unwrap();
    run_into(d.path(), &["fig-stability", "--n", "10"]);
    let text = fs::read_to_string(d.path().join("stability.csv")).unwrap();
    let mut lines = text.lines();
    let config = lines.next().unwrap();
    assert!(config.starts_with("# experiment=fig-stability"));
    assert!(config.contains("epsilon=0.5"));
    assert_eq!(lines.next(), Some("n,scaled_inv_norm"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 5);
    assert!(rows[0].starts_with("2,"));
}

#[test]
fn summary_is_printed() {
    let d = tempfile::tempdir().unwrap();
    let o = gensamp(&["shannon-check", "--out", d.path().to_str().unwrap()]);
    assert!(o.status.success());
    let stdout = String::from_utf8(o.stdout).unwrap();
    assert!(stdout.starts_with("shannon-check: max coefficient error"));
    assert!(d.path().join("shannon_coefficients.csv").exists());
    assert!(d.path().join("shannon_tail.csv").exists());
}

#[test]
fn bad_overrides_are_usage_errors() {
    let d = tempfile::tempdir().unwrap();
    let out = d.path().to_str().unwrap();
    for args in [
        &["fig-psi", "--seed", "3"][..],
        &["fig-legendre", "--epsilon", "0.9"],
        &["ex-fourier-recon", "--m", "1800"],
        &["fig-knmm", "--n", "10"],
        &["fig-stability", "--epsilon", "0"],
    ] {
        let mut all = args.to_vec();
        all.extend(["--out", out]);
        let o = gensamp(&all);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(String::from_utf8_lossy(&o.stderr).contains("usage"));
    }
    assert!(fs::read_dir(d.path()).unwrap().next().is_none(), "nothing written on error");
    assert_eq!(gensamp(&["no-such-experiment"]).status.code(), Some(2));
}
