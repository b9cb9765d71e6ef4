use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn maass(cache: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_maass"))
        .args(args)
        .env("MAASS_CACHE_DIR", cache)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

/// Coefficient lines of a serialized series, as `(exponent, value)` strings.
fn coefficients(text: &str) -> Vec<(String, String)> {
    text.lines()
        .skip(1)
        .filter_map(|l| l.split_once(' '))
        .map(|(a, b)| (a.to_string(), b.to_string()))
        .collect()
}

fn pairs(v: &[(&str, &str)]) -> Vec<(String, String)> {
    v.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect()
}

/// `(mid, rad)` of a table line `n  mid ± rad`.
fn ball(line: &str) -> (f64, f64) {
    let f: Vec<&str> = line.split_whitespace().collect();
    (f[1].parse().unwrap(), f[3].parse().unwrap())
}

#[test]
fn qexp_examples() {
    let dir = tempfile::tempdir().unwrap();
    let g = maass(dir.path(), &["qexp", "g-series", "--terms", "8"]);
    assert!(g.status.success(), "{}", stderr(&g));
    assert_eq!(coefficients(&stdout(&g)), pairs(&[("1", "1"), ("4", "-8"), ("7", "20")]));

    let eta = maass(dir.path(), &["qexp", "eta", "1:24", "--terms", "3"]);
    assert_eq!(coefficients(&stdout(&eta)), pairs(&[("1", "1"), ("2", "-24"), ("3", "252")]));

    let jm = maass(dir.path(), &["qexp", "jm", "0", "--terms", "3"]);
    assert_eq!(coefficients(&stdout(&jm)), pairs(&[("0", "1")]));

    let m = maass(dir.path(), &["qexp", "m-series", "--terms", "13"]);
    assert_eq!(
        coefficients(&stdout(&m)),
        pairs(&[("-1", "1"), ("2", "2"), ("5", "-49"), ("8", "48"), ("11", "771")])
    );
}

#[test]
fn qexp_writes_file_and_rejects_bad_input() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("e4.txt");
    let o = maass(dir.path(), &["qexp", "eisenstein", "4", "--terms", "3", "--out", out.to_str().unwrap()]);
    assert!(o.status.success() && stdout(&o).is_empty());
    assert_eq!(coefficients(&fs::read_to_string(&out).unwrap()), pairs(&[("0", "1"), ("1", "240"), ("2", "2160")]));

    let bad = maass(dir.path(), &["qexp", "eta", "1:x"]);
    assert_eq!(bad.status.code(), Some(2));
    assert!(stderr(&bad).starts_with("error:"));
    assert_eq!(maass(dir.path(), &["qexp", "delta", "--terms", "0"]).status.code(), Some(2));
}

#[test]
fn poincare_table_and_cache() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["poincare", "--m", "1", "--k", "4", "--level", "9", "--n-max", "5"];
    let o = maass(dir.path(), &args);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.starts_with("# m=1 k=4 N=9 c_max=1350 bits=128\n# weak\n"), "{text}");
    let a5 = text.lines().find(|l| l.starts_with("5 ")).unwrap();
    let mid: f64 = a5.split_whitespace().nth(1).unwrap().parse().unwrap();
    assert!((mid + 49.0).abs() < 1e-3, "{a5}");

    let cached = dir.path().join("poincare-weak-m1-k4-N9.txt");
    assert!(cached.exists());
    let list = maass(dir.path(), &["cache", "list"]);
    assert!(stdout(&list).contains("poincare-weak-m1-k4-N9.txt"));
    let show = maass(dir.path(), &["cache", "show", cached.to_str().unwrap()]);
    assert!(show.status.success(), "{}", stderr(&show));

    // a second run reads the cache; parsing the decimal text may only widen the balls
    let again = stdout(&maass(dir.path(), &args));
    assert_eq!(again.lines().count(), text.lines().count());
    for (old, new) in text.lines().zip(again.lines()).skip(2) {
        let (m0, r0) = ball(old);
        let (m1, r1) = ball(new);
        assert!((m0 - m1).abs() <= r1 - r0 + 1e-30 * m0.abs().max(1.0) && r1 >= r0, "{old} / {new}");
    }
}

#[test]
fn rationalized_maass_coefficients() {
    let dir = tempfile::tempdir().unwrap();
    let o = maass(
        dir.path(),
        &["poincare", "--m", "1", "--k", "4", "--level", "9", "--n-max", "11", "--maass", "--rationalize"],
    );
    assert!(o.status.success(), "{}", stderr(&o));
    let text = stdout(&o);
    for tail in ["= -2/8", "= 49/125", "= -48/512", "= -771/1331"] {
        assert!(text.lines().any(|l| l.ends_with(tail)), "missing {tail} in\n{text}");
    }
}

#[test]
fn poincare_rejects_bad_cutoffs_and_flags_weight_two() {
    let dir = tempfile::tempdir().unwrap();
    let low = maass(dir.path(), &["poincare", "--m", "1", "--k", "4", "--level", "9", "--n-max", "3", "--c-max", "3"]);
    assert_eq!(low.status.code(), Some(2));
    assert!(stderr(&low).contains("below the level"));

    let w2 = maass(dir.path(), &["poincare", "--m", "1", "--k", "2", "--level", "1", "--n-max", "2"]);
    assert!(w2.status.success());
    assert!(stdout(&w2).starts_with("uncertified:"));
    assert_eq!(maass(dir.path(), &["--precision-bits", "32", "qexp", "delta"]).status.code(), Some(2));
}

#[test]
fn verify_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let pass = maass(dir.path(), &["verify", "cm", "--D=-3", "--series", "g"]);
    assert_eq!(pass.status.code(), Some(0), "{}", stdout(&pass));
    assert!(stdout(&pass).contains("CHECK cm/inert-vanishing pass"));

    let fail = maass(dir.path(), &["verify", "cm", "--D=-3", "--series", "e4"]);
    assert_eq!(fail.status.code(), Some(1));
    assert!(stdout(&fail).contains("c(2)=2160"));

    let hecke = maass(dir.path(), &["verify", "hecke"]);
    assert_eq!(hecke.status.code(), Some(0), "{}", stdout(&hecke));

    let csv = dir.path().join("density.csv");
    let padic = maass(dir.path(), &["verify", "padic", "--csv", csv.to_str().unwrap()]);
    // densities of m|U(3) vanish identically, so the trend is reported as uncertified
    assert_eq!(padic.status.code(), Some(0));
    assert!(stderr(&padic).contains("uncertified"));
    let rows = fs::read_to_string(&csv).unwrap();
    assert_eq!(rows.lines().next(), Some("X,b,density"));
    assert_eq!(rows.lines().count(), 7);

    assert_eq!(maass(dir.path(), &["verify", "padic", "--terms", "100"]).status.code(), Some(2));
}

#[test]
fn verify_report_file() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("report.txt");
    let o = maass(dir.path(), &["verify", "good-example", "--report", report.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let text = fs::read_to_string(&report).unwrap();
    for id in ["m-exact", "m-vanishing", "poincare-vs-m", "q-plus-rational"] {
        assert!(text.contains(&format!("good-example/{id} pass")), "{id} in\n{text}");
    }
}

#[test]
fn corrupt_cache_file_names_the_line() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("poincare-weak-m1-k4-N9.txt");
    fs::write(&bad, "not a header\n").unwrap();
    let o = maass(dir.path(), &["cache", "show", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 1"), "{}", stderr(&o));

    // computing over a corrupt entry is an error, not a silent overwrite
    let run = maass(dir.path(), &["poincare", "--m", "1", "--k", "4", "--level", "9", "--n-max", "2"]);
    assert_eq!(run.status.code(), Some(2), "{}", stdout(&run));
    assert_eq!(fs::read_to_string(&bad).unwrap(), "not a header\n");
}
