use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn ykh(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ykh")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.display().to_string()
}

#[test]
fn theta_of_trefoil_word() {
    let o = ykh(&["invariant", "--kind", "theta", "--d", "2", "--D", "0,1", "s1^3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.contains("components=1"), "{out}");
    assert!(out.contains("D={0,1}"));
    assert_eq!(out.lines().count(), 2);
}

#[test]
fn json_record_fields() {
    let o = ykh(&["invariant", "--kind", "theta", "--d", "2", "--D", "0,1", "--out", "json", "s1^3"]);
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    let keys: Vec<_> = v.as_object().unwrap().keys().cloned().collect();
    for k in ["name", "kind", "d", "D", "components", "epsilon", "strands", "value", "parity"] {
        assert!(keys.iter().any(|x| x == k), "missing {k}");
    }
    assert_eq!(v["name"], "s1^3");
    assert_eq!(v["D"], serde_json::json!([0, 1]));
    assert_eq!(v["components"], 1);
    assert_eq!(v["epsilon"], 3);
    assert_eq!(v["strands"], 2);
    assert_eq!(v["parity"], 0);
}

#[test]
fn theta_without_subset_lists_every_subset() {
    let o = ykh(&["invariant", "--kind", "theta", "--d", "3", "--out", "json", "s1^3"]);
    assert_eq!(stdout(&o).lines().count(), 7);
}

#[test]
fn d_one_has_no_x_variables() {
    let o = ykh(&["trace", "--d", "1", "s1^3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(!stdout(&o).contains('x'), "{}", stdout(&o));
    assert!(stdout(&o).contains("D=-"));
    let o = ykh(&["invariant", "--kind", "theta", "--d", "1", "s1^3"]);
    assert!(stdout(&o).contains("D={0}"));
    let o = ykh(&["trace", "--d", "2", "n=2; t1 ; s1^2"]);
    assert!(stdout(&o).contains("x1"), "{}", stdout(&o));
}

#[test]
fn compare_birman_menasco_pair_with_m() {
    let dir = tempfile::tempdir().unwrap();
    let pairs = write(dir.path(), "pairs.txt", "bm/a\tn=3; s1^5 s2^4 s1^6 s2^-1\nbm/b\tn=3; s1^5 s2^-1 s1^6 s2^4\n");
    let o = ykh(&["compare", "--kind", "m", "--d", "2", &pairs]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(stdout(&o).trim(), "bm/a\tbm/b\tm d=2 D=-\tEQUAL");
}

#[test]
fn compare_reports_per_subset() {
    let dir = tempfile::tempdir().unwrap();
    let pairs = write(dir.path(), "pairs.txt", "hopf\ts1^2\nunknot\tn=2; s1\n");
    let o = ykh(&["compare", "--kind", "theta", "--d", "2", &pairs]);
    let out = stdout(&o);
    let lines: Vec<_> = out.lines().collect();
    assert_eq!(lines.len(), 3);
    assert!(lines.iter().all(|l| l.ends_with("DIFFER")), "{out}");
}

#[test]
fn catalog_pairs_feed_compare() {
    let dir = tempfile::tempdir().unwrap();
    let o = ykh(&["catalog", "--pairs"]);
    assert_eq!(o.status.code(), Some(0));
    let pairs = write(dir.path(), "pairs.txt", &stdout(&o));
    for d in ["2", "3"] {
        let o = ykh(&["compare", "--kind", "m", "--d", d, &pairs]);
        assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
        let out = stdout(&o);
        assert!(out.lines().count() >= 6);
        let bm_kn: Vec<_> = out.lines().filter(|l| l.starts_with("bm") || l.starts_with("kn")).collect();
        assert_eq!(bm_kn.len(), 6);
        assert!(bm_kn.iter().all(|l| l.ends_with("EQUAL")), "{out}");
    }
}

#[test]
fn catalog_round_trips_through_list_files() {
    let dir = tempfile::tempdir().unwrap();
    let o = ykh(&["catalog", "--group", "families"]);
    let list = write(dir.path(), "families.txt", &stdout(&o));
    let o = ykh(&["invariant", "--kind", "homflypt", "--list", &list, "--out", "json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).lines().count() > 20);
    let o = ykh(&["catalog", "--check"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().all(|l| l.contains("check=ok")));
}

#[test]
fn verify_skein_passes() {
    let o = ykh(&["verify", "--suite", "skein", "--d", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("0 failed"));
}

#[test]
fn verify_rejects_unknown_suite() {
    let o = ykh(&["verify", "--suite", "nonsense"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn esystem_list() {
    let o = ykh(&["esystem", "list", "d=2"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(out.lines().count(), 3);
    assert!(out.contains("d=2 D={0,1} E=1/2 x1=0"), "{out}");
    let o = ykh(&["esystem", "verify", "--d", "4", "--out", "json"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 15);
}

#[test]
fn input_errors_exit_one() {
    for args in [
        vec!["invariant", "--frobnicate", "s1"],
        vec!["invariant", "--d", "2", "--D", "2", "s1"],
        vec!["invariant", "--d", "0", "s1"],
        vec!["invariant", "--d", "1", "--D", "1", "s1"],
        vec!["invariant", "s1^x"],
        vec!["invariant", "--kind", "m", "--vars", "qlambda", "s1^3"],
        vec!["invariant"],
        vec!["esystem", "list"],
    ] {
        let o = ykh(&args);
        assert_eq!(o.status.code(), Some(1), "{args:?}: {}", stderr(&o));
    }
}

#[test]
fn ingest_errors_carry_line_numbers() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.txt", "# header\ntrefoil\tn=2; s1^3\nbroken\ts1^\n");
    let o = ykh(&["invariant", "--list", &bad]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("line 3"), "{}", stderr(&o));
    let dup = write(dir.path(), "dup.txt", "a\ts1\na\ts1^3\n");
    let o = ykh(&["invariant", "--list", &dup]);
    assert_eq!(o.status.code(), Some(1));
    let odd = write(dir.path(), "odd.txt", "a\ts1\n");
    let o = ykh(&["compare", &odd]);
    assert_eq!(o.status.code(), Some(1));
    let empty = write(dir.path(), "empty.txt", "");
    let o = ykh(&["compare", &empty]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).is_empty());
}

#[test]
fn output_follows_input_order() {
    let words = ["s1^5", "n=3; s1 s2^-1 s1 s2^-1", "s1^3", "n=3; s1^3 s2^-1 s1 s2^-1", "s1", "s1^-3"];
    let mut args = vec!["invariant", "--kind", "theta", "--d", "2", "--D", "1", "--out", "json"];
    args.extend(words);
    let o = ykh(&args);
    let names: Vec<String> = stdout(&o)
        .lines()
        .map(|l| serde_json::from_str::<serde_json::Value>(l).unwrap()["name"].as_str().unwrap().to_string())
        .collect();
    assert_eq!(names, words);
}

#[test]
fn catalog_names_resolve_as_inputs() {
    let o = ykh(&["invariant", "--kind", "m", "--d", "2", "bm(2,2,3)/a", "bm(2,2,3)/b", "--out", "json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let vals: Vec<serde_json::Value> = stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(vals[0]["value"], vals[1]["value"]);
    assert_eq!(vals[0]["D"], serde_json::Value::Null);
}

#[test]
fn kinds_and_vars() {
    let o = ykh(&["invariant", "--kind", "psi", "--d", "2", "--D", "0", "n=2; tau1"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let o = ykh(&["invariant", "--kind", "phi", "--d", "3", "--D", "0,2", "n=2; t1^2 t2 ; s1^3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let o = ykh(&["invariant", "--kind", "homflypt", "--vars", "qlambda", "s1^3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("d=1 D={0}"));
    let o = ykh(&["invariant", "--kind", "theta", "n=2; tau1"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn strategies_print_identical_output() {
    let base = ["invariant", "--kind", "theta", "--d", "2", "n=3; s1^4 s2^-3 s1 s2^2", "--strategy"];
    let outs: Vec<_> = ["naive", "power", "memo"]
        .iter()
        .map(|s| {
            let mut args = base.to_vec();
            args.push(s);
            stdout(&ykh(&args))
        })
        .collect();
    assert_eq!(outs[0], outs[1]);
    assert_eq!(outs[1], outs[2]);
}

fn cached_run(cache: &str) -> Output {
    ykh(&[
        "invariant",
        "--kind",
        "theta",
        "--d",
        "2",
        "--cache",
        cache,
        "--out",
        "json",
        "s1^3",
        "n=3; s1 s2^-1 s1 s2^-1",
        "s1^2",
    ])
}

#[test]
fn warm_cache_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache");
    let cache = cache.to_str().unwrap();
    let uncached =
        ykh(&["invariant", "--kind", "theta", "--d", "2", "--out", "json", "s1^3", "n=3; s1 s2^-1 s1 s2^-1", "s1^2"]);
    let cold = cached_run(cache);
    let files = fs::read_dir(cache).unwrap().count();
    assert_eq!(files, 9);
    let warm = cached_run(cache);
    assert_eq!(cold.stdout, warm.stdout);
    assert_eq!(cold.stdout, uncached.stdout);
    assert!(stderr(&warm).is_empty());
    assert_eq!(fs::read_dir(cache).unwrap().count(), files, "no temporary files left behind");
}

#[test]
fn corrupt_records_are_recomputed_with_a_warning() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache");
    let cache = cache.to_str().unwrap();
    let cold = cached_run(cache);
    let mut paths: Vec<_> = fs::read_dir(cache).unwrap().map(|e| e.unwrap().path()).collect();
    paths.sort();
    fs::write(&paths[0], "garbage").unwrap();
    let text = fs::read_to_string(&paths[1]).unwrap();
    fs::write(&paths[1], text.replace("\"value\":\"", "\"value\":\"1 + ").replace("key: ", "key: x")).unwrap();
    let warm = cached_run(cache);
    assert_eq!(warm.status.code(), Some(0));
    assert_eq!(cold.stdout, warm.stdout);
    let err = stderr(&warm);
    assert_eq!(err.matches("warning: corrupt cache record").count(), 2, "{err}");
    let again = cached_run(cache);
    assert!(stderr(&again).is_empty(), "records were repaired");
}
