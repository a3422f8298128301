//! Embedded regression fixtures.

use crate::berge::BergeFamily;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExpectedWitness {
    pub family: BergeFamily,
    pub k: u64,
    pub d: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CatalogEntry {
    /// Rolfsen label, or the link itself when it has none.
    pub name: &'static str,
    /// Parameters as usually quoted; normalize before use.
    pub p: i64,
    pub q: i64,
    pub expected_u2: u64,
    pub expected_witness: Option<ExpectedWitness>,
}

const fn witness(family: BergeFamily, k: u64, d: u64) -> Option<ExpectedWitness> {
    Some(ExpectedWitness { family, k, d })
}

pub const CATALOG: &[CatalogEntry] = &[
    CatalogEntry { name: "9_21", p: 43, q: 25, expected_u2: 1, expected_witness: witness(BergeFamily::II, 5, 2) },
    CatalogEntry { name: "9_23", p: 45, q: 64, expected_u2: 1, expected_witness: witness(BergeFamily::II, 8, 3) },
    CatalogEntry { name: "9_26", p: 47, q: 81, expected_u2: 1, expected_witness: witness(BergeFamily::II, 9, 2) },
    CatalogEntry { name: "9_31", p: 55, q: 144, expected_u2: 1, expected_witness: witness(BergeFamily::III, 12, 5) },
    CatalogEntry { name: "S(23,3)", p: 23, q: 3, expected_u2: 2, expected_witness: None },
];
