//! Exact tools for the H(2)-unknotting number of 2-bridge links.
//!
//! The crate is organised bottom-up:
//!
//! * [`rational`] and [`twobridge`]: exact rationals, normal forms `S(p, q)`,
//!   continued fractions and the modular helpers everything else uses.
//! * [`lens`]: Heegaard Floer correction terms `d(L(p, q), i)` of lens spaces
//!   in the first-Chern-class labeling, plus the grading term `f(i)`.
//! * [`berge`]: the congruence families describing lens spaces obtained by
//!   integral surgery on Berge knots, and the resulting `u2 = 1` decision.
//! * [`obstruction`]: the even nonnegative matching search over sign and
//!   group automorphism, dominance comparison of tables, and obstruction
//!   transfer for tangle unknotting number one knots.
//! * [`composite`]: connected sums of two 2-bridge links, suffix upper
//!   bounds and the final classification.
//! * [`catalog`]: embedded regression fixtures.
//!
//! No floating point is used anywhere.

pub mod berge;
pub mod catalog;
pub mod composite;
pub mod error;
pub mod lens;
pub mod obstruction;
pub mod rational;
pub mod twobridge;

pub use berge::{find_berge_witnesses, u2_is_one_2bridge, BergeFamily, BergeWitness, FamilyParams};
pub use catalog::{CatalogEntry, CATALOG};
pub use composite::{
    composite_u2_one, u2_classify, u2_upper_bound, CompositeCase, CompositeVerdict,
    CompositeWitness, U2Classification,
};
pub use error::{Error, Result};
pub use lens::{d_lens, d_lens_raw, f_term, to_c1_labeling, CorrectionTable};
pub use obstruction::{
    dominance_compare, i_sequence, matching_exists, transfer_obstruction, Dominance, Failure,
    MatchingReport, TransferAssumption, TransferConclusion, TransferReport,
};
pub use rational::ExactRational;
pub use twobridge::{
    cf_eval, cf_expand, determinant, equivalent, mod_inverse, normalize, units_of,
    ContinuedFraction, Sign, TwoBridgeLink,
};
