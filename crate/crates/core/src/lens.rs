//! Correction terms `d(L(p, q), i)` of lens spaces and the grading term `f(i)`.
//!
//! Raw tables come from the recursion
//!
//! ```text
//! d(L(p, q), j) = ((2j + 1 - p - q)^2 - pq) / (4pq) - d(L(q, p mod q), j mod q),
//! d(L(1, 0), 0) = 0,
//! ```
//!
//! indexed by the recursion index `j`. For odd `p` the conjugation symmetry of
//! the recursion is `j -> p + q - 1 - j (mod p)`; its unique fixed point `j0`
//! is the spin structure, and the labeled table uses `i = j - j0 (mod p)` so
//! that label 0 is the group identity.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::ExactRational;
use crate::twobridge::{gcd_u64, rem, TwoBridgeLink};

/// Correction terms of `L(p, q)`. When `labeled` is set the index is the
/// first Chern class in `Z/pZ`; otherwise it is the raw recursion index.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorrectionTable {
    p: u64,
    q: u64,
    labeled: bool,
    #[serde(rename = "d")]
    values: Vec<ExactRational>,
}

impl CorrectionTable {
    /// Builds a table from explicit values, checking only the length.
    pub fn from_values(p: u64, q: u64, labeled: bool, values: Vec<ExactRational>) -> Result<Self> {
        if p == 0 || values.len() as u64 != p {
            return Err(Error::InvalidParameter(format!(
                "table for p = {p} needs {p} entries, got {}",
                values.len()
            )));
        }
        if labeled && p.is_multiple_of(2) {
            return Err(Error::EvenOrder(p));
        }
        Ok(CorrectionTable { p, q, labeled, values })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn is_labeled(&self) -> bool {
        self.labeled
    }

    pub fn values(&self) -> &[ExactRational] {
        &self.values
    }

    /// Entry at label `i mod p`.
    pub fn get(&self, i: u64) -> &ExactRational {
        &self.values[(i % self.p) as usize]
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `i,numerator,denominator` rows with a header line.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("i,numerator,denominator\n");
        for (i, v) in self.values.iter().enumerate() {
            out.push_str(&format!("{},{},{}\n", i, v.numer(), v.denom()));
        }
        out
    }

    /// Pointwise map, keeping the labeling.
    pub fn map(&self, f: impl Fn(&ExactRational) -> ExactRational) -> CorrectionTable {
        CorrectionTable {
            p: self.p,
            q: self.q,
            labeled: self.labeled,
            values: self.values.iter().map(f).collect(),
        }
    }
}

fn check_lens_params(p: u64, q: u64) -> Result<()> {
    if p == 0 {
        return Err(Error::InvalidParameter("p must be positive".into()));
    }
    if p == 1 {
        return Ok(());
    }
    if q == 0 || q >= p {
        return Err(Error::InvalidParameter(format!("q = {q} is not in (0, {p})")));
    }
    let g = gcd_u64(p, q);
    if g != 1 {
        return Err(Error::NonCoprime { a: p as i64, b: q as i64, gcd: g });
    }
    Ok(())
}

/// Correction terms indexed by the recursion index `j in [0, p)`.
pub fn d_lens_raw(p: u64, q: u64) -> Result<Vec<ExactRational>> {
    check_lens_params(p, q)?;
    Ok(raw_unchecked(p, q))
}

fn raw_unchecked(p: u64, q: u64) -> Vec<ExactRational> {
    if p == 1 {
        return vec![ExactRational::zero()];
    }
    let sub = raw_unchecked(q, p % q);
    let (pi, qi) = (p as i128, q as i128);
    let denom = 4 * pi * qi;
    (0..p)
        .map(|j| {
            let t = 2 * j as i128 + 1 - pi - qi;
            let head = ExactRational::new(t * t - pi * qi, denom).expect("positive denominator");
            head - sub[(j % q) as usize].clone()
        })
        .collect()
}

/// The spin structure's recursion index: the solution of `2j = p + q - 1 (mod p)`.
pub(crate) fn spin_index(p: u64, q: u64) -> u64 {
    let half = p.div_ceil(2);
    rem((p + q - 1) as i128 * half as i128, p)
}

/// Relabels a raw table by `i = j - j0 (mod p)`.
pub fn to_c1_labeling(raw: &[ExactRational], p: u64, q: u64) -> Result<CorrectionTable> {
    if p.is_multiple_of(2) {
        return Err(Error::EvenOrder(p));
    }
    if raw.len() as u64 != p {
        return Err(Error::InvalidParameter(format!(
            "raw table has {} entries, expected {p}",
            raw.len()
        )));
    }
    let j0 = spin_index(p, q);
    let values: Vec<ExactRational> = (0..p).map(|i| raw[((i + j0) % p) as usize].clone()).collect();
    if let Some(i) = (0..p).find(|&i| values[i as usize] != values[((p - i) % p) as usize]) {
        return Err(Error::SymmetryFailure { p, q, i });
    }
    Ok(CorrectionTable { p, q, labeled: true, values })
}

/// Labeled table for odd `p`; raw, unlabeled table for even `p`.
pub fn d_lens(link: &TwoBridgeLink) -> Result<CorrectionTable> {
    let (p, q) = (link.p(), link.q());
    let raw = d_lens_raw(p, q)?;
    if p % 2 == 0 {
        return Ok(CorrectionTable { p, q, labeled: false, values: raw });
    }
    to_c1_labeling(&raw, p, q)
}

/// `f(i) = ((p - i)^2 / p - 1) / 4` for even `i`, `(i^2 / p - 1) / 4` for odd
/// `i`, with `i` the representative in `[0, p)`.
pub fn f_term(p: u64, i: u64) -> Result<ExactRational> {
    if p.is_multiple_of(2) {
        return Err(Error::EvenOrder(p));
    }
    if i >= p {
        return Err(Error::OutOfRange { index: i, bound: p });
    }
    let (pi, ii) = (p as i128, i as i128);
    let base = if i.is_multiple_of(2) { pi - ii } else { ii };
    ExactRational::new(base * base - pi, 4 * pi)
}
