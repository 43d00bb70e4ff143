//! Exact valuations: Hodge heights of the canonical-subgroup tower over a
//! supersingular CM curve, p-adic periods, overconvergence radii, and the
//! numeric inequalities those radii depend on.
//!
//! Everything is a `Ratio<i128>`; no floating point.

mod inequality;
mod ledger;
mod profile;
mod radius;

use thiserror::Error;

pub use inequality::{
    descent_bounds, log_exp_bounds, radius_growth, single_term_increment, sweep, tail_increment,
    InequalityReport,
};
pub use ledger::DenominatorLedger;
pub use profile::{canonical_valuations, csv_header, csv_row, LocalCase, ValProfile};
pub use radius::{is_prime, radius_params, RadiusParams};

pub type Q = num_rational::Ratio<i128>;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ValuationError {
    #[error("p = {0} is not an odd prime")]
    BadPrime(u64),
    #[error("level n must be at least 1")]
    BadLevel,
    #[error("unknown case '{0}' (expected inert or ramified)")]
    BadCase(String),
}
