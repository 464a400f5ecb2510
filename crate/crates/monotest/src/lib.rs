//! Monotonicity testing on the line and hypergrid.
//!
//! The crate bundles four things that usually live in separate scripts:
//!
//! * **Testers** ([`testers`]): a non-adaptive 1-sided tester with
//!   `O(eps^-1 log(eps n))` queries, the classic binary-search spot checker,
//!   and the trivial exhaustive tester, all with per-run query accounting
//!   and violation witnesses.
//! * **Exact oracles** ([`distance`]): distance to monotonicity on the line
//!   (`n - LNDS`) and on small posets (minimum vertex cover of the violation
//!   graph), plus violating-pair enumeration.
//! * **Hard instances** ([`instances`], [`probability`]): the adversarial
//!   distributions that make testers work for their queries — a monotone
//!   family driven by per-prefix digits, single-bit flips of it that are
//!   1/2-far from monotone, block-scaled variants for small `eps`, and a
//!   bit-regrouping embedding onto hypergrids. Agreement probabilities are
//!   computed as exact rationals, with exhaustive support enumeration as a
//!   cross-check.
//! * **Verification** ([`verify`]): machine checks for the structural facts
//!   the hard instances rest on (cut counting, agreement-probability
//!   equalities, good/bad value statistics), exhaustive at small parameters
//!   and statistical at larger ones.
//!
//! Everything randomized takes explicit seeds and derives per-trial streams
//! ([`stream`]), so experiments reproduce bit-for-bit. The `monotest` binary
//! and the `examples/` directory drive the same public API.

pub mod cli;
pub mod distance;
pub mod error;
pub mod function;
pub mod instances;
pub mod probability;
pub mod report;
pub mod stream;
pub mod testers;
pub mod value;
pub mod verify;

pub use error::{Error, Result};
pub use function::{agrees, LineFunction, PartialAssignment, PosetOrder, ViolationPair};
pub use instances::{
    grid_order, grid_point, mu_from_seed, mu_from_seed_recursive, mu_tilde_from_seeds,
    nu_j_from_seed, nu_tilde_from_seeds, sample, DigitSeed, DistributionId, MuParams,
    ScaledParams,
};
pub use probability::{agreement_probability, enumerate_distribution};
pub use testers::{
    find_disjoint_violating_pairs, max_disjoint_violating_pairs, split_level, test_ergun,
    test_exhaustive, test_improved, Eps, QueryOracle, TesterConfig, TesterId, TesterReport,
    Verdict,
};
pub use value::RankValue;
