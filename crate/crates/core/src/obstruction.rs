//! Even nonnegative matchings of correction terms.
//!
//! If a knot `K` with `|det K| = p` odd has `u2(K) = 1`, there is a unit `u` of
//! `Z/pZ` and a sign `e` such that every
//!
//! ```text
//! I(i) = e * d(Sigma(K), u * i) + f(i),   i in [0, p),
//! ```
//!
//! is an even nonnegative integer. Finding no such pair is an obstruction;
//! finding one proves nothing.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::composite::u2_classify;
use crate::error::{Error, Result};
use crate::lens::{d_lens, f_term, CorrectionTable};
use crate::rational::ExactRational;
use crate::twobridge::{gcd_u64, normalize, units_of, Sign, TwoBridgeLink};

/// Why a candidate `I` sequence is not an even nonnegative matching.
///
/// Parity failures take precedence over `Negative`: a sequence is reported
/// `Negative` only when every entry is an even integer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Failure {
    NonInteger,
    OddInteger,
    Negative,
    None,
}

impl Failure {
    pub fn is_parity(self) -> bool {
        matches!(self, Failure::NonInteger | Failure::OddInteger)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairDiagnostic {
    pub epsilon: Sign,
    pub u: u64,
    #[serde(rename = "I")]
    pub values: Vec<ExactRational>,
    pub first_failure: Failure,
    /// Every index showing `first_failure`.
    pub failure_at: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatchingReport {
    pub p: u64,
    pub q: u64,
    pub feasible: bool,
    pub feasible_pairs: Vec<(Sign, u64)>,
    /// One entry per `(epsilon, u)` in sweep order: `+1` before `-1`, `u` ascending.
    pub diagnostics: Vec<PairDiagnostic>,
}

impl MatchingReport {
    /// Pairs whose sequence consists of even integers, negative or not.
    pub fn parity_passing(&self) -> impl Iterator<Item = &PairDiagnostic> {
        self.diagnostics.iter().filter(|d| !d.first_failure.is_parity())
    }
}

/// Multipliers realising the automorphisms of `Z/pZ`. For `p = 1` the trivial
/// automorphism is multiplication by 1.
pub(crate) fn automorphisms(p: u64) -> Vec<u64> {
    if p == 1 {
        vec![1]
    } else {
        units_of(p)
    }
}

fn require_labeled(table: &CorrectionTable) -> Result<()> {
    if !table.is_labeled() || table.p().is_multiple_of(2) {
        return Err(Error::EvenOrder(table.p()));
    }
    Ok(())
}

/// `I(i) = epsilon * d(u i mod p) + f(i)` for `i in [0, p)`.
pub fn i_sequence(table: &CorrectionTable, epsilon: Sign, u: u64) -> Result<Vec<ExactRational>> {
    require_labeled(table)?;
    let p = table.p();
    if gcd_u64(u % p, p) != 1 {
        return Err(Error::NonUnit { u, p });
    }
    let e = ExactRational::from(epsilon.value());
    (0..p)
        .map(|i| {
            let d = table.get(((u as u128 * i as u128) % p as u128) as u64);
            Ok(&(&e * d) + &f_term(p, i)?)
        })
        .collect()
}

fn classify(values: &[ExactRational]) -> (Failure, Vec<u64>) {
    let at = |pred: &dyn Fn(&ExactRational) -> bool| -> Vec<u64> {
        values.iter().enumerate().filter(|(_, v)| pred(v)).map(|(i, _)| i as u64).collect()
    };
    let non_int = at(&|v| !v.is_integer());
    if !non_int.is_empty() {
        return (Failure::NonInteger, non_int);
    }
    let odd = at(&|v| !v.is_even_integer());
    if !odd.is_empty() {
        return (Failure::OddInteger, odd);
    }
    let neg = at(&|v| v.is_negative());
    if !neg.is_empty() {
        return (Failure::Negative, neg);
    }
    (Failure::None, Vec::new())
}

/// Table and `f` values as integers over one common denominator `scale`.
struct Scaled {
    scale: i128,
    d: Vec<i128>,
    f: Vec<i128>,
}

impl Scaled {
    fn new(table: &CorrectionTable) -> Option<Scaled> {
        let p = table.p();
        let f: Vec<ExactRational> = (0..p).map(|i| f_term(p, i).ok()).collect::<Option<_>>()?;
        let mut scale = BigInt::from(1);
        for v in table.values().iter().chain(&f) {
            scale = scale.lcm(v.denom());
        }
        let to_int = |v: &ExactRational| ((v.numer() * &scale) / v.denom()).to_i128();
        Some(Scaled {
            d: table.values().iter().map(to_int).collect::<Option<_>>()?,
            f: f.iter().map(to_int).collect::<Option<_>>()?,
            scale: scale.to_i128()?,
        })
    }

    /// `scale * I(i)` for the pair `(epsilon, u)`.
    fn numerators(&self, epsilon: Sign, u: u64) -> impl Iterator<Item = i128> + '_ {
        let p = self.d.len();
        let e = epsilon.value() as i128;
        (0..p).map(move |i| e * self.d[(u as usize * i) % p] + self.f[i])
    }
}

fn diagnose(s: &Scaled, epsilon: Sign, u: u64) -> PairDiagnostic {
    let nums: Vec<i128> = s.numerators(epsilon, u).collect();
    let at = |pred: &dyn Fn(i128) -> bool| -> Vec<u64> {
        nums.iter().enumerate().filter(|(_, &n)| pred(n)).map(|(i, _)| i as u64).collect()
    };
    let non_int = at(&|n| n % s.scale != 0);
    let odd = at(&|n| n % (2 * s.scale) != 0);
    let neg = at(&|n| n < 0);
    let (first_failure, failure_at) = if !non_int.is_empty() {
        (Failure::NonInteger, non_int)
    } else if !odd.is_empty() {
        (Failure::OddInteger, odd)
    } else if !neg.is_empty() {
        (Failure::Negative, neg)
    } else {
        (Failure::None, Vec::new())
    };
    let values = nums.iter().map(|&n| ExactRational::new(n, s.scale).expect("scale > 0")).collect();
    PairDiagnostic { epsilon, u, values, first_failure, failure_at }
}

/// Exhaustive search over `epsilon in {+1, -1}` and all units `u`.
pub fn matching_exists(table: &CorrectionTable) -> Result<MatchingReport> {
    require_labeled(table)?;
    let p = table.p();
    let scaled = Scaled::new(table);
    let mut diagnostics = Vec::new();
    for epsilon in Sign::BOTH {
        for u in automorphisms(p) {
            let diag = match &scaled {
                Some(s) => diagnose(s, epsilon, u),
                None => {
                    let values = i_sequence(table, epsilon, u)?;
                    let (first_failure, failure_at) = classify(&values);
                    PairDiagnostic { epsilon, u, values, first_failure, failure_at }
                }
            };
            diagnostics.push(diag);
        }
    }
    let feasible_pairs: Vec<(Sign, u64)> = diagnostics
        .iter()
        .filter(|d| d.first_failure == Failure::None)
        .map(|d| (d.epsilon, d.u))
        .collect();
    Ok(MatchingReport { p, q: table.q(), feasible: !feasible_pairs.is_empty(), feasible_pairs, diagnostics })
}

/// Same decision as `matching_exists(table)?.feasible`, stopping at the first
/// feasible pair.
pub fn matching_feasible(table: &CorrectionTable) -> Result<bool> {
    require_labeled(table)?;
    let Some(s) = Scaled::new(table) else {
        return Ok(matching_exists(table)?.feasible);
    };
    let two_scale = 2 * s.scale;
    let ok = Sign::BOTH.iter().any(|&e| {
        automorphisms(table.p())
            .into_iter()
            .any(|u| s.numerators(e, u).all(|n| n >= 0 && n % two_scale == 0))
    });
    Ok(ok)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum DominanceFailure {
    NonInteger,
    OddDifference,
    Negative,
}

/// Outcome of comparing `upper - lower` entry by entry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Dominance {
    Equal,
    DominatesEven,
    Fails { at: u64, reason: DominanceFailure },
}

/// Checks that `upper(i) - lower(i)` is a nonnegative even integer for all `i`.
pub fn dominance_compare(lower: &CorrectionTable, upper: &CorrectionTable) -> Result<Dominance> {
    if lower.p() != upper.p() {
        return Err(Error::MismatchedOrder(lower.p(), upper.p()));
    }
    require_labeled(lower)?;
    require_labeled(upper)?;
    if lower.values() == upper.values() {
        return Ok(Dominance::Equal);
    }
    for (i, (lo, hi)) in lower.values().iter().zip(upper.values()).enumerate() {
        let diff = hi - lo;
        let reason = if !diff.is_integer() {
            Some(DominanceFailure::NonInteger)
        } else if !diff.is_even_integer() {
            Some(DominanceFailure::OddDifference)
        } else if diff.is_negative() {
            Some(DominanceFailure::Negative)
        } else {
            None
        };
        if let Some(reason) = reason {
            return Ok(Dominance::Fails { at: i as u64, reason });
        }
    }
    Ok(Dominance::DominatesEven)
}

/// What is known about `d(Sigma(K))` relative to `d(L(p, q))` for a knot `K`
/// whose double branched cover is `p/q` surgery on a strongly invertible knot.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TransferAssumption {
    /// The surgery knot unknots by changing a negative crossing to a positive
    /// one: `d(Sigma(K), i) - d(L(p, q), i)` is a nonnegative even integer.
    NegToPos,
    /// The surgery knot is amphicheiral with unknotting number one:
    /// `d(Sigma(K), i) = d(L(p, q), i)`.
    Amphicheiral,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TransferConclusion {
    U2AtLeastTwo,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairCertificate {
    pub epsilon: Sign,
    pub u: u64,
    pub failure: Failure,
    /// Whether the failure survives every perturbation allowed by the assumption.
    pub persists: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransferReport {
    pub p: u64,
    pub q: u64,
    pub assumption: TransferAssumption,
    pub conclusion: TransferConclusion,
    /// Upper bound `u2(S(q, p)) + 1` valid for any `(p, q)`-tangle unknotting
    /// number one knot.
    pub upper_bound: u64,
    /// Set when the obstruction meets the upper bound.
    pub exact: Option<u64>,
    pub certificate: Vec<PairCertificate>,
}

impl fmt::Display for TransferConclusion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TransferConclusion::U2AtLeastTwo => "u2 >= 2",
            TransferConclusion::Inconclusive => "inconclusive",
        })
    }
}

/// Carries the matching obstruction of `L(p, q)` over to knots `K` with
/// `Sigma(K) = S^3_{p/q}(C)` under the given assumption on `C`.
///
/// With `NegToPos`, `I_K = I_L + e(u i)` for `epsilon = +1` and `I_L - e(u i)`
/// for `epsilon = -1`, where `e` is nonnegative and even. Parity failures
/// always persist; a negative entry persists only for `epsilon = -1`.
pub fn transfer_obstruction(link: &TwoBridgeLink, assumption: TransferAssumption) -> Result<TransferReport> {
    if link.p().is_multiple_of(2) {
        return Err(Error::EvenOrder(link.p()));
    }
    let table = d_lens(link)?;
    let report = matching_exists(&table)?;
    let certificate: Vec<PairCertificate> = report
        .diagnostics
        .iter()
        .map(|d| {
            let persists = match assumption {
                TransferAssumption::Amphicheiral => d.first_failure != Failure::None,
                TransferAssumption::NegToPos => match d.epsilon {
                    Sign::Plus => d.first_failure.is_parity(),
                    Sign::Minus => d.first_failure != Failure::None,
                },
            };
            PairCertificate { epsilon: d.epsilon, u: d.u, failure: d.first_failure, persists }
        })
        .collect();
    let conclusion = if certificate.iter().all(|c| c.persists) {
        TransferConclusion::U2AtLeastTwo
    } else {
        TransferConclusion::Inconclusive
    };

    let partner = if link.is_unknot() { TwoBridgeLink::UNKNOT } else { normalize(link.q() as i64, link.p() as i64)? };
    let upper_bound = u2_classify(&partner).upper + 1;
    let exact = (conclusion == TransferConclusion::U2AtLeastTwo && upper_bound == 2).then_some(2);
    Ok(TransferReport { p: link.p(), q: link.q(), assumption, conclusion, upper_bound, exact, certificate })
}
