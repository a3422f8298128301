//! 2-bridge normal forms `S(p, q)`, continued fractions and modular helpers.

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::ExactRational;

/// A sign `±1`. Serialized as the integer `1` or `-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(into = "i8", try_from = "i8")]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub const BOTH: [Sign; 2] = [Sign::Plus, Sign::Minus];

    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl From<Sign> for i8 {
    fn from(s: Sign) -> i8 {
        s.value() as i8
    }
}

impl TryFrom<i8> for Sign {
    type Error = String;
    fn try_from(v: i8) -> std::result::Result<Sign, String> {
        match v {
            1 => Ok(Sign::Plus),
            -1 => Ok(Sign::Minus),
            _ => Err(format!("sign must be 1 or -1, got {v}")),
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+1",
            Sign::Minus => "-1",
        })
    }
}

/// The 2-bridge link `S(p, q)` in normal form: `0 < q < p`, `gcd(p, q) = 1`,
/// or `(1, 0)` for the unknot. Its double branched cover is `L(p, q)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct TwoBridgeLink {
    p: u64,
    q: u64,
}

impl TwoBridgeLink {
    pub const UNKNOT: TwoBridgeLink = TwoBridgeLink { p: 1, q: 0 };

    pub fn new(p: i64, q: i64) -> Result<Self> {
        normalize(p, q)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn is_unknot(&self) -> bool {
        self.p == 1
    }

    /// One component iff `p` is odd.
    pub fn is_knot(&self) -> bool {
        self.p % 2 == 1
    }

    /// `S(p, p - q)`, a distinct normalized object.
    pub fn mirror(&self) -> TwoBridgeLink {
        if self.p == 1 {
            *self
        } else {
            TwoBridgeLink { p: self.p, q: self.p - self.q }
        }
    }
}

impl fmt::Display for TwoBridgeLink {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "S({}, {})", self.p, self.q)
    }
}

/// Nonnegative residue of `a` modulo `m`.
pub(crate) fn rem(a: i128, m: u64) -> u64 {
    a.rem_euclid(m as i128) as u64
}

pub(crate) fn gcd_u64(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub fn normalize(p: i64, q: i64) -> Result<TwoBridgeLink> {
    if p <= 0 {
        return Err(Error::InvalidParameter(format!("p must be positive, got {p}")));
    }
    let p = p as u64;
    let q_red = rem(q as i128, p);
    let g = gcd_u64(p, q_red);
    if g != 1 {
        return Err(Error::NonCoprime { a: p as i64, b: q, gcd: g });
    }
    if p == 1 {
        return Ok(TwoBridgeLink::UNKNOT);
    }
    Ok(TwoBridgeLink { p, q: q_red })
}

/// The canonical all-positive expansion `p/q = [a1, ..., an]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ContinuedFraction(Vec<i64>);

impl ContinuedFraction {
    /// Accepts any nonempty term list; evaluation may still fail.
    pub fn new(terms: Vec<i64>) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::InvalidParameter("empty continued fraction".into()));
        }
        Ok(ContinuedFraction(terms))
    }

    pub fn terms(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `[a_i, ..., a_n]` for 0-based `start`.
    pub fn suffix(&self, start: usize) -> Option<ContinuedFraction> {
        (start < self.0.len()).then(|| ContinuedFraction(self.0[start..].to_vec()))
    }
}

impl fmt::Display for ContinuedFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|a| a.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// Euclidean expansion. The unknot expands to `[1]`.
pub fn cf_expand(link: &TwoBridgeLink) -> Result<ContinuedFraction> {
    if link.p == 1 {
        return Ok(ContinuedFraction(vec![1]));
    }
    if link.q == 0 {
        return Err(Error::InvalidParameter(format!("q = 0 with p = {}", link.p)));
    }
    let (mut a, mut b) = (link.p, link.q);
    let mut terms = Vec::new();
    while b != 0 {
        terms.push((a / b) as i64);
        (a, b) = (b, a % b);
    }
    Ok(ContinuedFraction(terms))
}

pub fn cf_eval(cf: &ContinuedFraction) -> Result<ExactRational> {
    let mut terms = cf.0.iter().rev();
    let mut acc = ExactRational::from(*terms.next().expect("nonempty"));
    for &a in terms {
        if acc.is_zero() {
            return Err(Error::DegenerateFraction(cf.0.clone()));
        }
        acc = ExactRational::from(a) + acc.recip()?;
    }
    Ok(acc)
}

/// Strict mode: `q2 = q1^{±1} mod p`. Mirror mode also allows `-q1^{±1}`.
pub fn equivalent(a: &TwoBridgeLink, b: &TwoBridgeLink, up_to_mirror: bool) -> bool {
    if a.p != b.p {
        return false;
    }
    if a.p == 1 {
        return true;
    }
    let p = a.p;
    let inv = mod_inverse(a.q as i64, p).expect("normalized links are coprime");
    let mut candidates = vec![a.q, inv];
    if up_to_mirror {
        candidates.extend([p - a.q, p - inv]);
    }
    candidates.contains(&b.q)
}

pub fn determinant(link: &TwoBridgeLink) -> u64 {
    link.p
}

/// Inverse of `q` modulo `p`, in `(0, p)`; modulo 1 the answer is 0.
pub fn mod_inverse(q: i64, p: u64) -> Result<u64> {
    if p == 0 {
        return Err(Error::InvalidParameter("modulus must be positive".into()));
    }
    let a = rem(q as i128, p) as i128;
    let m = p as i128;
    let ext = a.extended_gcd(&m);
    if ext.gcd != 1 {
        return Err(Error::NonCoprime { a: q, b: p as i64, gcd: ext.gcd as u64 });
    }
    Ok(rem(ext.x, p))
}

/// Units of `Z/pZ` in ascending order. Empty for `p = 1`, whose only
/// automorphism is the trivial one.
pub fn units_of(p: u64) -> Vec<u64> {
    (1..p).filter(|&u| gcd_u64(u, p) == 1).collect()
}
