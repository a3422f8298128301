//! Acceptance criteria. Each test prints one `criterion N: PASS|FAIL` line;
//! run with `--nocapture` to see them.

use std::collections::BTreeMap;
use std::process::Command;
use std::time::{Duration, Instant};

use h2knot_core::{
    self as core, berge::BergeFamily, obstruction::matching_feasible, ExactRational, Sign,
};
use serde_json::Value;

fn h2knot(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_h2knot")).args(args).output().expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).expect("utf-8"))
}

fn report(n: u32, what: &str, ok: bool, detail: &str) {
    println!("criterion {n}: {} - {what}{}", if ok { "PASS" } else { "FAIL" }, if detail.is_empty() { String::new() } else { format!(" ({detail})") });
    assert!(ok, "criterion {n} failed: {what} {detail}");
}

const D_23_3: [(i64, i64); 23] = [
    (3, 2), (85, 46), (41, 46), (29, 46), (49, 46), (9, 46), (1, 46), (25, 46), (-11, 46),
    (-15, 46), (13, 46), (-19, 46), (-19, 46), (13, 46), (-15, 46), (-11, 46), (25, 46), (1, 46),
    (9, 46), (49, 46), (29, 46), (41, 46), (85, 46),
];

const F_23: [(i64, i64); 23] = [
    (11, 2), (-11, 46), (209, 46), (-7, 46), (169, 46), (1, 46), (133, 46), (13, 46), (101, 46),
    (29, 46), (73, 46), (49, 46), (49, 46), (73, 46), (29, 46), (101, 46), (13, 46), (133, 46),
    (1, 46), (169, 46), (-7, 46), (209, 46), (-11, 46),
];

const I_23_3: [i64; 23] = [4, 0, 4, -2, 4, 0, 2, 0, 2, 0, 2, 0, 0, 2, 0, 2, 0, 2, 0, 4, -2, 4, 0];

#[test]
fn criterion_1_dtable_regression() {
    let start = Instant::now();
    let (code, csv) = h2knot(&["dtable", "23", "3", "--format", "csv"]);
    let elapsed = start.elapsed();
    let mut expected = String::from("i,numerator,denominator\n");
    for (i, (n, d)) in D_23_3.iter().enumerate() {
        expected.push_str(&format!("{i},{n},{d}\n"));
    }
    let ok = code == 0 && csv == expected && elapsed < Duration::from_secs(1);
    report(1, "dtable 23 3 reproduces the 23 reference correction terms exactly", ok, &format!("{elapsed:?}"));
}

#[test]
fn criterion_2_f_table_regression() {
    let got: Vec<ExactRational> = (0..23).map(|i| core::f_term(23, i).unwrap()).collect();
    let expected: Vec<ExactRational> = F_23.iter().map(|&(n, d)| ExactRational::frac(n, d)).collect();
    report(2, "f(23, i) for i = 0..22 matches the reference sequence", got == expected, "");
}

#[test]
fn criterion_3_obstruction_regression() {
    let (code, json) = h2knot(&["match", "23", "3", "--format", "json"]);
    let v: Value = serde_json::from_str(&json).unwrap();
    let expected_i: Vec<Value> = I_23_3.iter().map(|&n| serde_json::json!([n, 1])).collect();
    let passing: Vec<&Value> = v["diagnostics"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|d| d["first_failure"] == "Negative" || d["first_failure"] == "None")
        .collect();
    let pairs: Vec<(i64, i64)> = passing.iter().map(|d| (d["epsilon"].as_i64().unwrap(), d["u"].as_i64().unwrap())).collect();
    let sequences_ok = passing.iter().all(|d| {
        d["I"].as_array().unwrap() == &expected_i
            && d["first_failure"] == "Negative"
            && d["failure_at"] == serde_json::json!([3, 20])
    });
    let ok = code == 0 && v["feasible"] == false && pairs == vec![(-1, 8), (-1, 15)] && sequences_ok;
    report(3, "match 23 3 is infeasible; parity-passing pairs are exactly (-1,8), (-1,15) failing at -2", ok, &format!("{pairs:?}"));
}

#[test]
fn criterion_4_exact_value() {
    let (code, text) = h2knot(&["u2", "23", "3"]);
    let (_, json) = h2knot(&["u2", "23", "3", "--format", "json"]);
    let v: Value = serde_json::from_str(&json).unwrap();
    let ok = code == 0
        && text.trim_end().ends_with("u2 = 2 (exact)")
        && v["lower"] == 2
        && v["upper"] == 2
        && v["exact"] == 2;
    report(4, "u2 23 3 outputs exact 2 (lower from Berge search, upper from suffix bound)", ok, "");
}

#[test]
fn criterion_5_catalog_fixtures() {
    let (code, json) = h2knot(&["catalog", "--format", "json"]);
    let v: Value = serde_json::from_str(&json).unwrap();
    let expect = [("9_21", "II", 5, 2), ("9_23", "II", 8, 3), ("9_26", "II", 9, 2), ("9_31", "III", 12, 5)];
    let entries = v.as_array().unwrap();
    let mut ok = code == 0 && entries.iter().all(|e| e["ok"] == true);
    for (name, family, k, d) in expect {
        let e = entries.iter().find(|e| e["name"] == name).expect("catalog entry");
        ok &= e["u2"] == 1 && e["witness"]["family"] == family && e["witness"]["k"] == k && e["witness"]["d"] == d;
    }
    // the same facts straight from the library
    for (p, q, family, k, d) in [(43, 25, BergeFamily::II, 5, 2), (45, 64, BergeFamily::II, 8, 3), (47, 81, BergeFamily::II, 9, 2), (55, 144, BergeFamily::III, 12, 5)] {
        let (yes, ws) = core::u2_is_one_2bridge(&core::normalize(p, q).unwrap(), None).unwrap();
        ok &= yes && ws.iter().any(|w| w.family() == family && w.k == k && w.params.d() == Some(d));
    }
    report(5, "catalog: 9_21, 9_23, 9_26, 9_31 have u2 = 1 with the expected Berge witnesses", ok, "");
}

#[test]
fn criterion_6_transfer_regression() {
    let mut ok = true;
    for assume in ["neg-to-pos", "amphicheiral"] {
        let (code, json) = h2knot(&["transfer", "23", "3", "--assume", assume, "--format", "json"]);
        let v: Value = serde_json::from_str(&json).unwrap();
        let (_, text) = h2knot(&["transfer", "23", "3", "--assume", assume]);
        ok &= code == 0
            && v["conclusion"] == "U2AtLeastTwo"
            && v["upper_bound"] == 2
            && v["exact"] == 2
            && text.trim_end().ends_with("u2(K) = 2");
    }
    report(6, "transfer 23 3 concludes u2 >= 2 under both assumptions and reports u2(K) = 2", ok, "");
}

#[test]
fn criterion_7_composite_grid() {
    let mut failures = Vec::new();
    for p in 3..=60i64 {
        for q in 2..p {
            let Ok(a) = core::normalize(p, q) else { continue };
            let b = core::normalize(q, p % q).unwrap();
            let v = core::composite_u2_one(&a, &b, false).unwrap();
            if !v.u2_is_one || !v.witness.unwrap().verify(&a, &b, false) {
                failures.push((p, q));
            }
        }
    }
    report(7, "S(p,q) # S(q, p mod q) has u2 = 1 for all coprime 2 <= q < p <= 60", failures.is_empty(), &format!("{} failures", failures.len()));
}

#[test]
fn criterion_8_soundness_sweep() {
    let start = Instant::now();
    let mut unsound = Vec::new();
    let mut asymmetric = Vec::new();
    let mut reversal = Vec::new();
    let mut multiset = Vec::new();
    let mut realizable = 0usize;
    for p in (3..=151u64).step_by(2) {
        for q in core::units_of(p) {
            let l = core::normalize(p as i64, q as i64).unwrap();
            let t = core::d_lens(&l).unwrap();
            if (0..p).any(|i| t.get(i) != t.get(p - i)) {
                asymmetric.push((p, q));
            }
            let m = core::d_lens(&l.mirror()).unwrap();
            if (0..p).any(|i| m.get(i) != &-t.get(i)) {
                reversal.push((p, q));
            }
            let qi = core::mod_inverse(q as i64, p).unwrap();
            let ti = core::d_lens(&core::normalize(p as i64, qi as i64).unwrap()).unwrap();
            let mut count: BTreeMap<&ExactRational, i64> = BTreeMap::new();
            t.values().iter().for_each(|v| *count.entry(v).or_default() += 1);
            ti.values().iter().for_each(|v| *count.entry(v).or_default() -= 1);
            if count.values().any(|&c| c != 0) {
                multiset.push((p, q));
            }
            if core::u2_is_one_2bridge(&l, None).unwrap().0 {
                realizable += 1;
                if !matching_feasible(&t).unwrap() {
                    unsound.push((p, q));
                }
            }
        }
    }
    let elapsed = start.elapsed();
    let ok = unsound.is_empty() && asymmetric.is_empty() && reversal.is_empty() && multiset.is_empty() && elapsed < Duration::from_secs(120);
    let detail = format!(
        "{realizable} realizable, unsound {}, asymmetric {}, reversal {}, multiset {}, {elapsed:?}",
        unsound.len(), asymmetric.len(), reversal.len(), multiset.len()
    );
    report(8, "odd p <= 151: Berge-realizable => matching feasible; symmetry; reversal; q <-> q^-1", ok, &detail);
}

#[test]
fn i_sequence_for_23_3_from_library() {
    let t = core::d_lens(&core::normalize(23, 3).unwrap()).unwrap();
    let seq = core::i_sequence(&t, Sign::Minus, 8).unwrap();
    assert_eq!(seq, I_23_3.iter().map(|&n| ExactRational::from(n)).collect::<Vec<_>>());
}
