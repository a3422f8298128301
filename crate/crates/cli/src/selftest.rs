//! Regression checks against the published worked examples.

use std::io::Write;

use h2knot_core::{
    self as core, berge::FamilyParams, obstruction::Failure, BergeFamily, ExactRational, Sign,
    TransferAssumption, TransferConclusion,
};

use crate::CliResult;

pub const D_23_3: [(i64, i64); 23] = [
    (3, 2), (85, 46), (41, 46), (29, 46), (49, 46), (9, 46), (1, 46), (25, 46), (-11, 46),
    (-15, 46), (13, 46), (-19, 46), (-19, 46), (13, 46), (-15, 46), (-11, 46), (25, 46), (1, 46),
    (9, 46), (49, 46), (29, 46), (41, 46), (85, 46),
];

pub const F_23: [(i64, i64); 23] = [
    (11, 2), (-11, 46), (209, 46), (-7, 46), (169, 46), (1, 46), (133, 46), (13, 46), (101, 46),
    (29, 46), (73, 46), (49, 46), (49, 46), (73, 46), (29, 46), (101, 46), (13, 46), (133, 46),
    (1, 46), (169, 46), (-7, 46), (209, 46), (-11, 46),
];

pub const I_23_3: [i64; 23] = [4, 0, 4, -2, 4, 0, 2, 0, 2, 0, 2, 0, 0, 2, 0, 2, 0, 2, 0, 4, -2, 4, 0];

fn fracs(v: &[(i64, i64)]) -> Vec<ExactRational> {
    v.iter().map(|&(n, d)| ExactRational::frac(n, d)).collect()
}

fn ints(v: &[i64]) -> Vec<ExactRational> {
    v.iter().map(|&n| ExactRational::from(n)).collect()
}

type Check = (&'static str, fn() -> core::Result<bool>);

fn has_witness(p: i64, q: i64, family: BergeFamily, k: u64, d: u64) -> core::Result<bool> {
    let l = core::normalize(p, q)?;
    let (yes, ws) = core::u2_is_one_2bridge(&l, None)?;
    Ok(yes && ws.iter().any(|w| w.family() == family && w.k == k && w.params.d() == Some(d)))
}

pub const CHECKS: &[Check] = &[
    ("normalize S(45,64) = S(45,19)", || {
        let l = core::normalize(45, 64)?;
        Ok((l.p(), l.q()) == (45, 19))
    }),
    ("determinant of 9_21 is 43", || Ok(core::determinant(&core::normalize(43, 25)?) == 43)),
    ("d(L(23,3), i) table", || Ok(core::d_lens(&core::normalize(23, 3)?)?.values() == fracs(&D_23_3).as_slice())),
    ("f(i) table for p = 23", || {
        let f: core::Result<Vec<_>> = (0..23).map(|i| core::f_term(23, i)).collect();
        Ok(f? == fracs(&F_23))
    }),
    ("I sequence for u = 8 and u = 15", || {
        let t = core::d_lens(&core::normalize(23, 3)?)?;
        Ok(core::i_sequence(&t, Sign::Minus, 8)? == ints(&I_23_3) && core::i_sequence(&t, Sign::Minus, 15)? == ints(&I_23_3))
    }),
    ("I(0) = (3 epsilon + 11)/2", || {
        let t = core::d_lens(&core::normalize(23, 3)?)?;
        for e in Sign::BOTH {
            for u in core::units_of(23) {
                if core::i_sequence(&t, e, u)?[0] != ExactRational::frac(3 * e.value() + 11, 2) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }),
    ("no even nonnegative matching for L(23,3)", || {
        let r = core::matching_exists(&core::d_lens(&core::normalize(23, 3)?)?)?;
        let passing: Vec<_> = r.parity_passing().map(|d| (d.epsilon, d.u, d.first_failure, d.failure_at.clone())).collect();
        Ok(!r.feasible
            && passing
                == vec![
                    (Sign::Minus, 8, Failure::Negative, vec![3, 20]),
                    (Sign::Minus, 15, Failure::Negative, vec![3, 20]),
                ])
    }),
    ("9_21 = S(43,25): family II, k=5, d=2", || has_witness(43, 25, BergeFamily::II, 5, 2)),
    ("9_23 = S(45,64): family II, k=8, d=3", || has_witness(45, 64, BergeFamily::II, 8, 3)),
    ("9_26 = S(47,81): family II, k=9, d=2", || has_witness(47, 81, BergeFamily::II, 9, 2)),
    ("9_31 = S(55,144): family III, k=12, d=5", || has_witness(55, 144, BergeFamily::III, 12, 5)),
    ("S(47,34): epsilon = -1, outer sign -1", || {
        let ws = core::find_berge_witnesses(47, 34, None)?;
        Ok(ws.iter().any(|w| w.k == 9 && w.params == FamilyParams::II { epsilon: Sign::Minus, d: 2, outer_sign: Sign::Minus }))
    }),
    ("u2(S(23,3)) = 2", || {
        let c = core::u2_classify(&core::normalize(23, 3)?);
        Ok((c.lower, c.upper, c.exact) == (2, 2, Some(2)))
    }),
    ("suffix bound u2(S(23,3)) <= 2", || Ok(core::u2_upper_bound(&core::normalize(23, 3)?) == 2)),
    ("u2 = 1 for 9_21", || Ok(core::u2_classify(&core::normalize(43, 25)?).exact == Some(1))),
    ("transfer (23,3) under both assumptions gives u2(K) = 2", || {
        let l = core::normalize(23, 3)?;
        for a in [TransferAssumption::NegToPos, TransferAssumption::Amphicheiral] {
            let r = core::transfer_obstruction(&l, a)?;
            if r.conclusion != TransferConclusion::U2AtLeastTwo || r.exact != Some(2) {
                return Ok(false);
            }
        }
        Ok(true)
    }),
    ("S(5,2) # S(2,1) has u2 = 1 (case A)", || {
        let v = core::composite_u2_one(&core::normalize(5, 2)?, &core::normalize(2, 1)?, false)?;
        Ok(v.case == core::CompositeCase::CaseA)
    }),
    ("S(p,q) # S(q,p) has u2 = 1 for q < p <= 30", || {
        for p in 3..=30i64 {
            for q in 2..p {
                if let (Ok(a), Ok(b)) = (core::normalize(p, q), core::normalize(q, p)) {
                    if !core::composite_u2_one(&a, &b, false)?.u2_is_one {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }),
];

/// Runs every check, printing one line each. Returns the number of failures.
pub fn run(out: &mut dyn Write) -> CliResult<usize> {
    let mut failures = 0;
    for (name, check) in CHECKS {
        let ok = matches!(check(), Ok(true));
        if !ok {
            failures += 1;
        }
        writeln!(out, "{} {name}", if ok { "PASS" } else { "FAIL" })?;
    }
    let catalog = crate::render::check_catalog()?;
    for c in &catalog {
        if !c.ok {
            failures += 1;
        }
        writeln!(out, "{} catalog {}", if c.ok { "PASS" } else { "FAIL" }, c.name)?;
    }
    writeln!(out, "{} checks, {failures} failed", CHECKS.len() + catalog.len())?;
    Ok(failures)
}
