use std::path::Path;
use std::process::{Command, Output};

use hyperchrom::fixtures::{i_b, i_d};
use hyperchrom::model::io::{parse_coloring, parse_instance, parse_solution, serialize_instance};
use hyperchrom::model::validate_solution;
use hyperchrom::scalar::int;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hyperchrom")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn write_instance(dir: &Path, name: &str, inst: &hyperchrom::model::Instance) -> String {
    let path = dir.join(name);
    std::fs::write(&path, serialize_instance(inst)).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn gen_is_deterministic_and_valid() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let args = ["gen", "--seed", "5", "--n", "4", "--m1", "1", "--m2", "2", "--out", a.to_str().unwrap()];
    assert!(run(&args).status.success());
    let once = std::fs::read_to_string(&a).unwrap();
    assert!(run(&args).status.success());
    assert_eq!(std::fs::read_to_string(&a).unwrap(), once);
    let inst = parse_instance(&once).unwrap();
    assert_eq!((inst.n(), inst.group1.len(), inst.group2.len()), (4, 1, 2));
}

#[test]
fn solve_prints_the_summary_and_writes_a_valid_solution() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_instance(dir.path(), "ib.json", &i_b());
    let sol_path = dir.path().join("sol.json");
    let lp_path = dir.path().join("relax.lp");
    let out = run(&["solve", &input, "--out", sol_path.to_str().unwrap(), "--dump-lp", lp_path.to_str().unwrap()]);
    assert!(out.status.success(), "{out:?}");
    assert_eq!(stdout(&out).trim(), "chi=2 chi_f=2 r=2 w=0");
    let sol = parse_solution(&std::fs::read_to_string(&sol_path).unwrap()).unwrap();
    assert_eq!(validate_solution(&i_b(), &sol).unwrap(), vec![]);
    let lp = std::fs::read_to_string(&lp_path).unwrap();
    assert!(lp.contains("spill_g2_") && !lp.contains("gap"));
}

#[test]
fn color_writes_a_coloring_of_chi_colors() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_instance(dir.path(), "id.json", &i_d());
    let col_path = dir.path().join("col.json");
    let out = run(&["color", &input, "--out", col_path.to_str().unwrap()]);
    assert!(out.status.success(), "{out:?}");
    let col = parse_coloring(&std::fs::read_to_string(&col_path).unwrap()).unwrap();
    assert_eq!(col.total(), int(2));
    assert!(hyperchrom::chromatic::verify_coloring(&i_d(), &col).is_empty());

    let text = run(&["export-gantt", col_path.to_str().unwrap(), "--instance", &input, "--format", "text"]);
    assert!(text.status.success(), "{text:?}");
    assert_eq!(stdout(&text).lines().filter(|l| l.starts_with('M')).count(), 2);
    let svg = run(&["export-gantt", col_path.to_str().unwrap(), "--instance", &input]);
    assert!(stdout(&svg).starts_with("<svg"));
}

#[test]
fn check_reports_agreement() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_instance(dir.path(), "ib.json", &i_b());
    let out = run(&["check", &input]);
    assert!(out.status.success(), "{out:?}");
    assert_eq!(stdout(&out).trim(), r#"{"ilp":-2,"lp":"-2","pipeline":-2,"agree":true}"#);
    let batch = run(&["check", "--batch", "5", "--seed", "3", "--caps", "3,3,2"]);
    assert!(batch.status.success(), "{batch:?}");
    assert_eq!(stdout(&batch).lines().filter(|l| l.contains("\"agree\":true")).count(), 5);
}

#[test]
fn exit_codes_follow_the_failure_class() {
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("missing.json");
    assert_eq!(run(&["solve", missing.to_str().unwrap()]).status.code(), Some(1));

    let garbage = dir.path().join("garbage.json");
    std::fs::write(&garbage, "{ not json").unwrap();
    assert_eq!(run(&["solve", garbage.to_str().unwrap()]).status.code(), Some(2));

    let mut bad = i_b();
    bad.b[0][0] = -1;
    let bad = write_instance(dir.path(), "bad.json", &bad);
    let out = run(&["solve", &bad]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"));

    let mut big = i_b();
    big.b[0][0] = 5;
    let big = write_instance(dir.path(), "big.json", &big);
    assert_eq!(run(&["check", &big]).status.code(), Some(2));
}
