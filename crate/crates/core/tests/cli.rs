use std::path::Path;
use std::process::{Command, Output};

use pcinc::samples::{INCOMPLETE_4, SMALL_3, TRIAD_FREE_7};

fn pcinc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pcinc")).args(args).output().expect("run pcinc")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn value(report: &str, name: &str) -> f64 {
    report
        .lines()
        .find_map(|l| {
            let mut it = l.split_whitespace();
            (it.next() == Some(name)).then(|| it.next().unwrap().parse().unwrap())
        })
        .unwrap_or_else(|| panic!("{name} missing from report"))
}

#[test]
fn analyze_consistently_completable_file() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "m.txt", INCOMPLETE_4);
    let o = pcinc(&["analyze", &f]);
    assert!(o.status.success());
    let text = stdout(&o);
    for id in pcinc::IndexId::ALL {
        assert!(value(&text, id.name()).abs() < 1e-9, "{id}");
    }
    assert!(!text.contains("classical"));
}

#[test]
fn analyze_triad_free_file() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "m.txt", TRIAD_FREE_7);
    let o = pcinc(&["analyze", &f, "--indices", "Ktilde,I1"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(value(&text, "Ktilde") >= 0.904762 - 1e-6);
    assert!(text.lines().filter(|l| l.starts_with("I")).count() == 1);
}

#[test]
fn analyze_complete_file_prints_reference_suite() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "m.txt", SMALL_3);
    let text = stdout(&pcinc(&["analyze", &f]));
    let ci_lines: Vec<&str> = text
        .lines()
        .filter(|l| l.split_whitespace().collect::<Vec<_>>().first() == Some(&"CI") && l.split_whitespace().count() == 2)
        .collect();
    assert_eq!(ci_lines.len(), 2);
    assert_eq!(ci_lines[0], ci_lines[1]);
    assert!(text.contains("reduction deltas"));

    let o = pcinc(&["analyze", &f, "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["n"], 3);
    assert_eq!(v["complete"], true);
    assert_eq!(v["indices"].as_array().unwrap().len(), 14);
    assert_eq!(v["classical"]["k"], 0.5);
}

#[test]
fn rank_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let consistent = write(dir.path(), "c.txt", "3\n1 5/3 5/2\n3/5 1 3/2\n2/5 2/3 1\n");
    for method in ["evm", "gmm", "harker", "ills"] {
        let o = pcinc(&["rank", &consistent, "--method", method]);
        assert!(o.status.success());
        let weights: Vec<(String, f64)> = stdout(&o)
            .lines()
            .map(|l| {
                let mut it = l.split_whitespace();
                (it.next().unwrap().to_string(), it.next().unwrap().parse().unwrap())
            })
            .collect();
        let expected = [("a1", 0.5), ("a2", 0.3), ("a3", 0.2)];
        for ((label, w), (el, ew)) in weights.iter().zip(expected) {
            assert_eq!(label, el);
            assert!((w - ew).abs() < 1e-9);
        }
    }
    let inc = write(dir.path(), "i.txt", INCOMPLETE_4);
    assert_eq!(pcinc(&["rank", &inc, "--method", "evm"]).status.code(), Some(4));
    let o = pcinc(&["rank", &inc, "--method", "ills"]);
    assert!(o.status.success());
    // Consistent completion: weights proportional to (4, 6, 3, 8).
    let first = stdout(&o).lines().next().unwrap().to_string();
    assert!(first.starts_with("a4"));
    assert!((first.split_whitespace().nth(1).unwrap().parse::<f64>().unwrap() - 8.0 / 21.0).abs() < 1e-9);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.txt", "3\n1 2 x\n1/2 1 3\n1/12 1/3 1\n");
    let o = pcinc(&["analyze", &bad]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
    assert_eq!(pcinc(&["analyze", &dir.path().join("absent").to_string_lossy()]).status.code(), Some(2));

    let split = write(dir.path(), "split.txt", "4\n1 2 ? ?\n1/2 1 ? ?\n? ? 1 3\n? ? 1/3 1\n");
    let o = pcinc(&["analyze", &split]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("matrix is not irreducible"));

    let ok = write(dir.path(), "ok.txt", SMALL_3);
    assert_eq!(pcinc(&["analyze", &ok, "--alpha", "1.5"]).status.code(), Some(5));
    assert_eq!(pcinc(&["analyze", &ok, "--indices", "nope"]).status.code(), Some(5));
    let prefix = dir.path().join("x").to_string_lossy().into_owned();
    let o = pcinc(&["experiment", "--n", "7", "--removals", "20", "--out", &prefix]);
    assert_eq!(o.status.code(), Some(5));
}

#[test]
fn experiment_writes_deterministic_csv() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str, threads: &str| {
        let prefix = dir.path().join(name).to_string_lossy().into_owned();
        let args = ["experiment", "--n", "5", "--matrices", "4", "--dmax", "3", "--removals", "6", "--seed", "9"];
        let o = pcinc(&[&args[..], &["--threads", threads, "--out", &prefix]].concat());
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
        (
            std::fs::read_to_string(format!("{prefix}_D.csv")).unwrap(),
            std::fs::read_to_string(format!("{prefix}_total.csv")).unwrap(),
        )
    };
    let (d1, t1) = run("a", "1");
    let (d2, t2) = run("b", "3");
    assert_eq!(d1, d2);
    assert_eq!(t1, t2);
    assert!(d1.starts_with("index,k,D\n"));
    assert_eq!(d1.lines().count(), 1 + 14 * 7);
    assert!(d1.lines().filter(|l| l.split(',').nth(1) == Some("0")).all(|l| l.ends_with(",0")));
    assert!(t1.starts_with("index,total\n"));
}
