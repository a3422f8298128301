//! Lens spaces obtained by integral surgery on Berge knots.
//!
//! `L(alpha, beta)` is such a surgery when some `k` has `beta = ±k^2 (mod alpha)`
//! and one of seven congruence families holds:
//!
//! | family | condition |
//! |--------|-----------|
//! | I   | `alpha = i k ± 1 (mod k^2)`, `gcd(i, k)` in {1, 2} |
//! | II  | `alpha = ±(2k + e) d (mod k^2)`, `d | k - e`, `(k - e)/d` odd |
//! | III | `alpha = ±(k + e) d (mod k^2)`, `d | 2k - e` |
//! | IV  | `alpha = ±(k + e) d (mod k^2)`, `d | k + e`, `d` odd |
//! | V   | `k^2 ± k ± 1 = 0 (mod alpha)` |
//! | VI  | `alpha = 22j^2 + 9j + 1`, `k = 11j + 2` |
//! | VII | `alpha = 22j^2 + 13j + 2`, `k = 11j + 3` |
//!
//! with `e = ±1` and `d` a positive divisor. A 2-bridge link `S(p, q)` has
//! H(2)-unknotting number one exactly when `L(p, q)` appears here.

use std::fmt;

use num_integer::{Integer, Roots};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::twobridge::{gcd_u64, mod_inverse, rem, Sign, TwoBridgeLink};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum BergeFamily {
    I,
    II,
    III,
    IV,
    V,
    VI,
    VII,
}

impl fmt::Display for BergeFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Family-specific parameters. Variant order is the family order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(tag = "family")]
pub enum FamilyParams {
    I { i: u64, sign: Sign, gcd: u64 },
    II { epsilon: Sign, d: u64, outer_sign: Sign },
    III { epsilon: Sign, d: u64, outer_sign: Sign },
    IV { epsilon: Sign, d: u64, outer_sign: Sign },
    V { sign1: Sign, sign2: Sign },
    VI { j: i64 },
    VII { j: i64 },
}

impl FamilyParams {
    pub fn family(&self) -> BergeFamily {
        match self {
            FamilyParams::I { .. } => BergeFamily::I,
            FamilyParams::II { .. } => BergeFamily::II,
            FamilyParams::III { .. } => BergeFamily::III,
            FamilyParams::IV { .. } => BergeFamily::IV,
            FamilyParams::V { .. } => BergeFamily::V,
            FamilyParams::VI { .. } => BergeFamily::VI,
            FamilyParams::VII { .. } => BergeFamily::VII,
        }
    }

    /// The divisor `d` of families II-IV.
    pub fn d(&self) -> Option<u64> {
        match *self {
            FamilyParams::II { d, .. } | FamilyParams::III { d, .. } | FamilyParams::IV { d, .. } => Some(d),
            _ => None,
        }
    }
}

/// One satisfied family together with its `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BergeWitness {
    #[serde(flatten)]
    pub params: FamilyParams,
    pub k: u64,
    /// Sign in `beta = ±k^2 (mod alpha)`.
    pub ksq_sign: Sign,
    /// The `beta`, reduced into `[0, alpha)`, that the witness realizes.
    pub beta: u64,
}

impl BergeWitness {
    pub fn family(&self) -> BergeFamily {
        self.params.family()
    }

    /// Re-checks every recorded congruence from scratch.
    pub fn verify(&self, alpha: u64, beta: i64) -> bool {
        let a = alpha as i128;
        let k = self.k as i128;
        let m = k * k;
        let divides = |n: i128, x: i128| n != 0 && x % n == 0;
        if self.k == 0 || rem(beta as i128, alpha) != self.beta || (beta as i128 - self.ksq_sign.value() as i128 * k * k) % a != 0 {
            return false;
        }
        match self.params {
            FamilyParams::I { i, sign, gcd } => {
                let g = (i as i128).gcd(&k);
                g == gcd as i128 && (g == 1 || g == 2) && (a - i as i128 * k - sign.value() as i128) % m == 0
            }
            FamilyParams::II { epsilon, d, outer_sign } => {
                let e = epsilon.value() as i128;
                let d = d as i128;
                divides(d, k - e)
                    && ((k - e) / d) % 2 != 0
                    && (a - outer_sign.value() as i128 * (2 * k + e) * d) % m == 0
            }
            FamilyParams::III { epsilon, d, outer_sign } => {
                let e = epsilon.value() as i128;
                let d = d as i128;
                divides(d, 2 * k - e) && (a - outer_sign.value() as i128 * (k + e) * d) % m == 0
            }
            FamilyParams::IV { epsilon, d, outer_sign } => {
                let e = epsilon.value() as i128;
                let d = d as i128;
                // k + e = 0 only for k = 1, where every odd d divides it
                (k + e == 0 || divides(d, k + e))
                    && d % 2 == 1
                    && (a - outer_sign.value() as i128 * (k + e) * d) % m == 0
            }
            FamilyParams::V { sign1, sign2 } => {
                (k * k + sign1.value() as i128 * k + sign2.value() as i128) % a == 0
            }
            FamilyParams::VI { j } => {
                let j = j as i128;
                22 * j * j + 9 * j + 1 == a && (11 * j + 2).abs() == k
            }
            FamilyParams::VII { j } => {
                let j = j as i128;
                22 * j * j + 13 * j + 2 == a && (11 * j + 3).abs() == k
            }
        }
    }
}

impl fmt::Display for BergeWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.ksq_sign == Sign::Plus { "" } else { "-" };
        write!(f, "family {} k={} (beta = {} = {sign}k^2)", self.family(), self.k, self.beta)?;
        match self.params {
            FamilyParams::I { i, sign, gcd } => write!(f, " i={i} sign={sign} gcd={gcd}"),
            FamilyParams::II { epsilon, d, outer_sign }
            | FamilyParams::III { epsilon, d, outer_sign }
            | FamilyParams::IV { epsilon, d, outer_sign } => {
                write!(f, " epsilon={epsilon} d={d} outer_sign={outer_sign}")
            }
            FamilyParams::V { sign1, sign2 } => write!(f, " signs=({sign1},{sign2})"),
            FamilyParams::VI { j } | FamilyParams::VII { j } => write!(f, " j={j}"),
        }
    }
}

/// JSON envelope `{alpha, beta, k_max, witnesses}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessReport {
    pub alpha: u64,
    pub beta: u64,
    pub k_max: u64,
    pub witnesses: Vec<BergeWitness>,
}

fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Integer roots `j` of `22 j^2 + b j + c = alpha`.
fn quadratic_family_roots(alpha: u64, b: i128, c: i128) -> Vec<i64> {
    let disc = b * b - 88 * (c - alpha as i128);
    if disc < 0 {
        return Vec::new();
    }
    let s = (disc as u128).sqrt() as i128;
    if s * s != disc {
        return Vec::new();
    }
    let mut roots: Vec<i64> = [-b + s, -b - s]
        .into_iter()
        .filter(|num| num % 44 == 0)
        .map(|num| (num / 44) as i64)
        .collect();
    roots.dedup();
    roots
}

fn ksq_sign(alpha: u64, beta: u64, k: u64) -> Option<Sign> {
    let ksq = rem(k as i128 * k as i128, alpha);
    if ksq == beta {
        Some(Sign::Plus)
    } else if rem(-(ksq as i128), alpha) == beta {
        Some(Sign::Minus)
    } else {
        None
    }
}

fn witnesses_for_k(alpha: u64, beta: u64, k: u64, sign: Sign, out: &mut Vec<BergeWitness>) {
    let a = alpha as i128;
    let ki = k as i128;
    let m = ki * ki;
    let hits = |x: i128| (a - x) % m == 0;
    let mut push = |params| out.push(BergeWitness { params, k, ksq_sign: sign, beta });

    // i k mod k^2 only depends on i mod k, as does gcd(i, k)
    for i in 0..k {
        let g = gcd_u64(i, k);
        if g != 1 && g != 2 {
            continue;
        }
        for s in Sign::BOTH {
            if hits(i as i128 * ki + s.value() as i128) {
                push(FamilyParams::I { i, sign: s, gcd: g });
            }
        }
    }

    for epsilon in Sign::BOTH {
        let e = epsilon.value() as i128;

        // k - e = 0 makes (k - e)/d even, so family II has nothing at k = 1, e = 1
        let n2 = ki - e;
        if n2 > 0 {
            for d in divisors(n2 as u64) {
                if (n2 as u64 / d) % 2 == 1 {
                    for outer_sign in Sign::BOTH {
                        if hits(outer_sign.value() as i128 * (2 * ki + e) * d as i128) {
                            push(FamilyParams::II { epsilon, d, outer_sign });
                        }
                    }
                }
            }
        }

        for d in divisors((2 * ki - e) as u64) {
            for outer_sign in Sign::BOTH {
                if hits(outer_sign.value() as i128 * (ki + e) * d as i128) {
                    push(FamilyParams::III { epsilon, d, outer_sign });
                }
            }
        }

        // k + e = 0 (k = 1, e = -1): every odd d qualifies; d = 1 stands for all of them
        let n4 = ki + e;
        let ds4 = if n4 == 0 { vec![1] } else { divisors(n4 as u64) };
        for d in ds4.into_iter().filter(|d| d % 2 == 1) {
            for outer_sign in Sign::BOTH {
                if hits(outer_sign.value() as i128 * (ki + e) * d as i128) {
                    push(FamilyParams::IV { epsilon, d, outer_sign });
                }
            }
        }
    }

    for sign1 in Sign::BOTH {
        for sign2 in Sign::BOTH {
            if (m + sign1.value() as i128 * ki + sign2.value() as i128) % a == 0 {
                push(FamilyParams::V { sign1, sign2 });
            }
        }
    }
}

/// All Berge witnesses for `L(alpha, beta)` with `1 <= k <= k_max`
/// (default `k_max = alpha`), sorted by `(k, family, params)`.
///
/// An empty result means no witness exists within the bound.
pub fn find_berge_witnesses(alpha: u64, beta: i64, k_max: Option<u64>) -> Result<Vec<BergeWitness>> {
    if alpha == 0 {
        return Err(Error::InvalidParameter("alpha must be positive".into()));
    }
    let k_max = k_max.unwrap_or(alpha);
    if k_max == 0 {
        return Err(Error::InvalidParameter("k_max must be positive".into()));
    }
    let b = rem(beta as i128, alpha);
    let g = gcd_u64(alpha, b);
    if g != 1 {
        return Err(Error::NonCoprime { a: alpha as i64, b: beta, gcd: g });
    }

    let mut out = Vec::new();
    for k in 1..=k_max {
        if let Some(sign) = ksq_sign(alpha, b, k) {
            witnesses_for_k(alpha, b, k, sign, &mut out);
        }
    }

    let sporadic = [(9i128, 1i128, 2i64, true), (13, 2, 3, false)];
    for (lin, cst, k_off, is_vi) in sporadic {
        for j in quadratic_family_roots(alpha, lin, cst) {
            let k = (11 * j + k_off).unsigned_abs();
            if k == 0 || k > k_max {
                continue;
            }
            if let Some(sign) = ksq_sign(alpha, b, k) {
                let params = if is_vi { FamilyParams::VI { j } } else { FamilyParams::VII { j } };
                out.push(BergeWitness { params, k, ksq_sign: sign, beta: b });
            }
        }
    }

    out.sort_by_key(|x| (x.k, x.params));
    Ok(out)
}

/// Whether `S(p, q)` has H(2)-unknotting number one. `L(p, q)` and
/// `L(p, q^-1)` are the same manifold, so witnesses for both presentations
/// count; those for `beta = q` come first. Requires `p >= 2`.
pub fn u2_is_one_2bridge(link: &TwoBridgeLink, k_max: Option<u64>) -> Result<(bool, Vec<BergeWitness>)> {
    if link.is_unknot() {
        return Err(Error::InvalidParameter("the unknot has u2 = 0; expected p >= 2".into()));
    }
    let mut w = find_berge_witnesses(link.p(), link.q() as i64, k_max)?;
    let inv = mod_inverse(link.q() as i64, link.p())?;
    if inv != link.q() {
        w.extend(find_berge_witnesses(link.p(), inv as i64, k_max)?);
    }
    Ok((!w.is_empty(), w))
}
