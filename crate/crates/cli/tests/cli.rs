use std::fs;
use std::process::Command;

use serde_json::Value;

fn h2knot(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_h2knot")).args(args).output().expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn exit_codes() {
    assert_eq!(h2knot(&["u2", "23", "3"]).0, 0);
    assert_eq!(h2knot(&["u2"]).0, 1);
    assert_eq!(h2knot(&["frobnicate"]).0, 1);
    assert_eq!(h2knot(&["berge", "43", "25", "--format", "csv"]).0, 1);
    let (code, _, err) = h2knot(&["u2", "6", "4"]);
    assert_eq!(code, 2);
    assert!(err.contains("coprime"));
    assert_eq!(h2knot(&["match", "8", "3"]).0, 2);
    assert_eq!(h2knot(&["transfer", "8", "3", "--assume", "amphicheiral"]).0, 2);
    assert_eq!(h2knot(&["composite", "1", "0", "3", "1"]).0, 2);
    assert_eq!(h2knot(&["u2", "0", "1"]).0, 2);
    assert_eq!(h2knot(&["--help"]).0, 0);
}

#[test]
fn negative_q_is_reduced() {
    let (_, a, _) = h2knot(&["u2", "23", "-20", "--format", "json"]);
    let (_, b, _) = h2knot(&["u2", "23", "3", "--format", "json"]);
    assert_eq!(a, b);
}

#[test]
fn composite_text() {
    let (code, out, _) = h2knot(&["composite", "5", "2", "2", "1"]);
    assert_eq!(code, 0);
    assert!(out.trim_end().ends_with("u2 = 1 (Case A)"), "{out}");
    let (_, out, _) = h2knot(&["composite", "3", "1", "3", "1"]);
    assert!(out.trim_end().ends_with("u2 >= 2"), "{out}");
    let (_, out, _) = h2knot(&["composite", "3", "1", "7", "2", "--mirror"]);
    assert!(out.trim_end().ends_with("u2 = 1 (Case B)"), "{out}");
}

#[test]
fn dtable_modes() {
    let (_, out, _) = h2knot(&["dtable", "3", "1", "--format", "json"]);
    assert_eq!(out.trim(), r#"{"p":3,"q":1,"labeled":true,"d":[[1,2],[-1,6],[-1,6]]}"#);
    let (_, out, _) = h2knot(&["dtable", "5", "2", "--raw", "--format", "json"]);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["labeled"], false);
    let (code, out, _) = h2knot(&["dtable", "4", "1", "--format", "json"]);
    assert_eq!(code, 0);
    assert!(out.contains(r#""labeled":false"#));
    let (_, out, _) = h2knot(&["dtable", "23", "3"]);
    assert!(out.contains("85/46"));
}

#[test]
fn json_output_round_trips() {
    let cmds: &[&[&str]] = &[
        &["u2", "43", "25"],
        &["berge", "55", "34"],
        &["dtable", "23", "3"],
        &["match", "9", "2"],
        &["transfer", "23", "3", "--assume", "neg-to-pos"],
        &["composite", "3", "1", "7", "5"],
        &["bound", "43", "25"],
    ];
    for cmd in cmds {
        let mut args = cmd.to_vec();
        args.extend(["--format", "json"]);
        let (code, out, _) = h2knot(&args);
        assert_eq!(code, 0, "{cmd:?}");
        let line = out.trim_end();
        let typed_round_trip = match cmd[0] {
            "u2" => serde_json::to_string(&serde_json::from_str::<h2knot_core::U2Classification>(line).unwrap()).unwrap(),
            "berge" => serde_json::to_string(&serde_json::from_str::<h2knot_core::berge::WitnessReport>(line).unwrap()).unwrap(),
            "dtable" => serde_json::to_string(&serde_json::from_str::<h2knot_core::CorrectionTable>(line).unwrap()).unwrap(),
            "match" => serde_json::to_string(&serde_json::from_str::<h2knot_core::MatchingReport>(line).unwrap()).unwrap(),
            "transfer" => serde_json::to_string(&serde_json::from_str::<h2knot_core::TransferReport>(line).unwrap()).unwrap(),
            "composite" => serde_json::to_string(&serde_json::from_str::<h2knot_core::CompositeVerdict>(line).unwrap()).unwrap(),
            _ => serde_json::to_string(&serde_json::from_str::<Value>(line).unwrap()).unwrap(),
        };
        assert_eq!(typed_round_trip, line, "{cmd:?}");
    }
}

#[test]
fn enumerate_examples() {
    let (code, out, _) = h2knot(&["enumerate", "--max-p", "3", "--knots-only"]);
    assert_eq!(code, 0);
    assert!(out.contains("S(3, 1)  u2 = 1 (exact)"), "{out}");
    let (code, out, _) = h2knot(&["enumerate", "--max-p", "1"]);
    assert_eq!(code, 0);
    assert!(out.is_empty());
    let (_, out, _) = h2knot(&["enumerate", "--max-p", "55", "--knots-only", "--format", "json"]);
    let hit = out
        .lines()
        .map(|l| serde_json::from_str::<Value>(l).unwrap())
        .find(|v| v["p"] == 55 && v["q"] == 34)
        .expect("(55, 34) is a class representative");
    assert_eq!(hit["exact"], 1);
}

#[test]
fn enumerate_order_is_deterministic() {
    let (_, out, _) = h2knot(&["enumerate", "--max-p", "40", "--format", "csv"]);
    let keys: Vec<(u64, u64)> = out
        .lines()
        .skip(1)
        .map(|l| {
            let mut it = l.split(',').map(|x| x.parse::<u64>().unwrap_or(0));
            (it.next().unwrap(), it.next().unwrap())
        })
        .collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
    assert_eq!(h2knot(&["enumerate", "--max-p", "40", "--format", "csv"]).1, out);
}

#[test]
fn enumerate_with_cache_is_identical() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache.jsonl");
    let cache_s = cache.to_str().unwrap();
    let (_, plain, _) = h2knot(&["enumerate", "--max-p", "60", "--format", "json"]);
    let (_, first, _) = h2knot(&["enumerate", "--max-p", "60", "--format", "json", "--cache", cache_s]);
    assert_eq!(plain, first);
    let written = fs::read_to_string(&cache).unwrap();
    assert_eq!(written.lines().count(), plain.lines().count());

    // a partial, partly corrupt cache still yields the same stream
    let mut partial: Vec<&str> = written.lines().take(50).collect();
    partial.insert(10, "{not json");
    partial.insert(20, r#"{"p":6,"q":4,"lower":0,"upper":0,"exact":0,"provenance":[]}"#);
    fs::write(&cache, partial.join("\n") + "\n").unwrap();
    let (code, second, err) = h2knot(&["enumerate", "--max-p", "60", "--format", "json", "--cache", cache_s]);
    assert_eq!(code, 0);
    assert!(err.contains("skipped 2 corrupt"), "{err}");
    assert_eq!(plain, second);
    let (_, third, _) = h2knot(&["enumerate", "--max-p", "60", "--format", "json", "--cache", cache_s]);
    assert_eq!(plain, third);
}

#[test]
fn enumerate_cache_io_error() {
    let dir = tempfile::tempdir().unwrap();
    // a directory cannot be opened as a cache file
    let (code, _, _) = h2knot(&["enumerate", "--max-p", "5", "--cache", dir.path().to_str().unwrap()]);
    assert_eq!(code, 4);
}

#[test]
fn selftest_and_catalog_pass() {
    let (code, out, _) = h2knot(&["selftest"]);
    assert_eq!(code, 0, "{out}");
    assert!(!out.contains("FAIL"));
    assert_eq!(h2knot(&["catalog"]).0, 0);
}

#[test]
fn run_is_callable_in_process() {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = h2knot::run(["h2knot", "bound", "23", "3"], &mut out, &mut err);
    assert_eq!(code, 0);
    assert_eq!(String::from_utf8(out).unwrap(), "S(23, 3) = C[7,1,2]\nu2 <= 2\n");
}

#[test]
fn inverse_presentation_has_same_value() {
    let (_, a, _) = h2knot(&["u2", "43", "31"]);
    let (_, b, _) = h2knot(&["u2", "43", "25"]);
    assert!(a.trim_end().ends_with("u2 = 1 (exact)"), "{a}");
    assert_eq!(a.lines().last(), b.lines().last());
}
