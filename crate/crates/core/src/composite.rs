//! Connected sums of two 2-bridge links, suffix upper bounds and the final
//! `u2` classification of a single 2-bridge link.
//!
//! `S(p, q) # S(r, s)` (both nontrivial) has `u2 = 1` iff, for one ordering of
//! the summands, either
//!
//! * case A: `S(r, s) = S(q, p)`, or
//! * case B: `S(p, q) = S(v, e)` and `S(r, s) = S(v a b + e, v a^2)` for a sign
//!   `e` and coprime `a, b`.

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::berge::u2_is_one_2bridge;
use crate::error::{Error, Result};
use crate::twobridge::{cf_eval, cf_expand, mod_inverse, normalize, ContinuedFraction, Sign, TwoBridgeLink};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CompositeCase {
    CaseA,
    CaseB,
    None,
}

/// How `s` matched: `inverse` means `s = x^{-1}` rather than `s = x`,
/// `mirrored` means `-x` (mirror mode only). `swapped` means the second
/// summand plays the role of `S(p, q)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "case")]
pub enum CompositeWitness {
    CaseA { swapped: bool, inverse: bool, mirrored: bool },
    CaseB { swapped: bool, inverse: bool, mirrored: bool, v: u64, epsilon: Sign, a: u64, b: u64 },
}

impl CompositeWitness {
    pub fn case(&self) -> CompositeCase {
        match self {
            CompositeWitness::CaseA { .. } => CompositeCase::CaseA,
            CompositeWitness::CaseB { .. } => CompositeCase::CaseB,
        }
    }

    /// Re-checks the witness against the summands without reusing the search.
    pub fn verify(&self, l1: &TwoBridgeLink, l2: &TwoBridgeLink, mirror: bool) -> bool {
        let swapped = match *self {
            CompositeWitness::CaseA { swapped, .. } | CompositeWitness::CaseB { swapped, .. } => swapped,
        };
        let (first, second) = if swapped { (l2, l1) } else { (l1, l2) };
        let (p, q, r, s) = (first.p() as i128, first.q() as i128, second.p() as i128, second.q() as i128);
        // s = t^{±1} (or -t^{±1} when mirrored) modulo m
        let matches = |t: i128, m: i128| -> bool {
            let ok = |x: i128| (s - x).rem_euclid(m) == 0 || (s * x - 1).rem_euclid(m) == 0;
            ok(t) || (mirror && ok(-t))
        };
        match *self {
            CompositeWitness::CaseA { .. } => r == q && q >= 2 && matches(p, q),
            CompositeWitness::CaseB { v, epsilon, a, b, .. } => {
                let (v, e, a, b) = (v as i128, epsilon.value() as i128, a as i128, b as i128);
                let q_ok = (q - e).rem_euclid(p) == 0 || (mirror && (q + e).rem_euclid(p) == 0);
                v == p && a >= 1 && b >= 1 && a.gcd(&b) == 1 && r == v * a * b + e && q_ok && matches(v * a * a, r)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompositeVerdict {
    pub u2_is_one: bool,
    pub case: CompositeCase,
    pub witness: Option<CompositeWitness>,
    /// Further witnesses, case A before case B.
    pub alternatives: Vec<CompositeWitness>,
}

impl fmt::Display for CompositeVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.case {
            CompositeCase::CaseA => write!(f, "u2 = 1 (Case A)"),
            CompositeCase::CaseB => write!(f, "u2 = 1 (Case B)"),
            CompositeCase::None => write!(f, "u2 >= 2"),
        }
    }
}

/// Residues `t` with `s = t` or `s = t^{-1}` and which form matched.
fn match_kind(s: u64, target: u64, m: u64, mirror: bool) -> Vec<(bool, bool)> {
    let mut out = Vec::new();
    let inv = mod_inverse(target as i64, m).ok();
    for mirrored in [false, true] {
        if mirrored && !mirror {
            continue;
        }
        let t = if mirrored { (m - target % m) % m } else { target % m };
        if s == t {
            out.push((false, mirrored));
        }
        if let Some(i) = inv {
            let ti = if mirrored { (m - i) % m } else { i };
            if s == ti {
                out.push((true, mirrored));
            }
        }
    }
    out
}

fn case_a(first: &TwoBridgeLink, second: &TwoBridgeLink, swapped: bool, mirror: bool) -> Vec<CompositeWitness> {
    let (p, q, r, s) = (first.p(), first.q(), second.p(), second.q());
    if r != q || q < 2 {
        return Vec::new();
    }
    match_kind(s, p % q, q, mirror)
        .into_iter()
        .map(|(inverse, mirrored)| CompositeWitness::CaseA { swapped, inverse, mirrored })
        .collect()
}

fn case_b(first: &TwoBridgeLink, second: &TwoBridgeLink, swapped: bool, mirror: bool) -> Vec<CompositeWitness> {
    let (p, q, r, s) = (first.p(), first.q(), second.p(), second.q());
    let v = p;
    let mut direct = Vec::new();
    let mut inverted = Vec::new();
    for epsilon in Sign::BOTH {
        let e = epsilon.value() as i128;
        let strict = (q as i128 - e).rem_euclid(p as i128) == 0;
        let flipped = (q as i128 + e).rem_euclid(p as i128) == 0;
        if !(strict || (mirror && flipped)) {
            continue;
        }
        let n = r as i128 - e;
        if n <= 0 || n % v as i128 != 0 {
            continue;
        }
        let quotient = (n / v as i128) as u64;
        // v a b = r - e with b >= 1, so a runs over divisors of (r - e)/v
        for a in (1..=quotient).filter(|a| quotient.is_multiple_of(*a)) {
            let b = quotient / a;
            if a.gcd(&b) != 1 {
                continue;
            }
            let target = ((v as u128 * a as u128 * a as u128) % r as u128) as u64;
            for (inverse, mirrored) in match_kind(s, target, r, mirror) {
                let w = CompositeWitness::CaseB { swapped, inverse, mirrored: mirrored || !strict, v, epsilon, a, b };
                if inverse { inverted.push(w) } else { direct.push(w) }
            }
        }
    }
    direct.extend(inverted);
    direct
}

/// Decides whether `l1 # l2` has H(2)-unknotting number one. With `mirror`,
/// 2-bridge equalities are taken up to mirror image.
pub fn composite_u2_one(l1: &TwoBridgeLink, l2: &TwoBridgeLink, mirror: bool) -> Result<CompositeVerdict> {
    for l in [l1, l2] {
        if l.is_unknot() {
            return Err(Error::TrivialSummand { p: l.p(), q: l.q() });
        }
    }
    let orderings = [(l1, l2, false), (l2, l1, true)];
    let mut found: Vec<CompositeWitness> = Vec::new();
    for &(a, b, swapped) in &orderings {
        found.extend(case_a(a, b, swapped, mirror));
    }
    for &(a, b, swapped) in &orderings {
        found.extend(case_b(a, b, swapped, mirror));
    }
    debug_assert!(found.iter().all(|w| w.verify(l1, l2, mirror)));
    let mut it = found.into_iter();
    let witness = it.next();
    Ok(CompositeVerdict {
        u2_is_one: witness.is_some(),
        case: witness.map_or(CompositeCase::None, |w| w.case()),
        witness,
        alternatives: it.collect(),
    })
}

fn suffix_link(terms: &[i64]) -> TwoBridgeLink {
    let cf = ContinuedFraction::new(terms.to_vec()).expect("nonempty suffix");
    let v = cf_eval(&cf).expect("positive terms never degenerate");
    let (p, q) = v.to_i64_pair().expect("suffix of a u64 fraction fits");
    normalize(p, q).expect("convergents are coprime")
}

/// Upper bound from dropping leading terms of the canonical expansion:
/// `u2(C(a_1..a_n)) <= u2(C(a_i..a_n)) + i - 1`, recursively.
pub fn u2_upper_bound(link: &TwoBridgeLink) -> u64 {
    u2_upper_bound_with(link, None)
}

pub fn u2_upper_bound_with(link: &TwoBridgeLink, k_max: Option<u64>) -> u64 {
    if link.is_unknot() {
        return 0;
    }
    let cf = cf_expand(link).expect("normalized nontrivial link");
    let terms = cf.terms();
    let n = terms.len();
    // a (2, a_n) torus link is undone by a single move
    let mut bound = if terms[n - 1].abs() <= 1 { 0 } else { 1 };
    for i in (0..n - 1).rev() {
        let sub = suffix_link(&terms[i..]);
        let base = if sub.is_unknot() {
            0
        } else if u2_is_one_2bridge(&sub, k_max).expect("p >= 2").0 {
            1
        } else {
            1 + bound
        };
        bound = base.min(bound + 1);
    }
    bound
}

/// Lower and upper bounds on `u2` of a 2-bridge link, with the rules used.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct U2Classification {
    pub p: u64,
    pub q: u64,
    pub lower: u64,
    pub upper: u64,
    pub exact: Option<u64>,
    pub provenance: Vec<String>,
}

impl U2Classification {
    pub fn link(&self) -> TwoBridgeLink {
        normalize(self.p as i64, self.q as i64).expect("stored normalized")
    }
}

impl fmt::Display for U2Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.exact {
            Some(v) => write!(f, "u2 = {v} (exact)"),
            None => write!(f, "{} <= u2 <= {}", self.lower, self.upper),
        }
    }
}

pub fn u2_classify(link: &TwoBridgeLink) -> U2Classification {
    u2_classify_with(link, None)
}

pub fn u2_classify_with(link: &TwoBridgeLink, k_max: Option<u64>) -> U2Classification {
    let (p, q) = (link.p(), link.q());
    let done = |lower, upper, provenance: Vec<String>| U2Classification {
        p,
        q,
        lower,
        upper,
        exact: (lower == upper).then_some(lower),
        provenance,
    };
    if link.is_unknot() {
        return done(0, 0, vec!["unknot".into()]);
    }
    let (realizable, witnesses) = u2_is_one_2bridge(link, k_max).expect("p >= 2");
    if realizable {
        let w = witnesses[0];
        return done(1, 1, vec![format!("berge-witness:{}:k={}", w.family(), w.k)]);
    }
    let k_max = k_max.unwrap_or(p);
    let upper = u2_upper_bound_with(link, Some(k_max));
    debug_assert!(upper >= 2);
    done(2, upper.max(2), vec![format!("no-berge-witness:kmax={k_max}"), "suffix-bound".into()])
}
