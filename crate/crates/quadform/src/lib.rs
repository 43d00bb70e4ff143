//! Imaginary quadratic orders through binary quadratic forms: class groups,
//! splitting of primes, Heegner ideals and the groups H(c, N).

mod abelian;
mod classgroup;
mod form;
mod heegner;
mod hgroup;
mod order;

use thiserror::Error;

pub use abelian::{characters, presentation, FiniteAbelian, Presentation, CHARACTER_BOX_LIMIT};
pub use classgroup::{class_group, ClassGroup, ClassGroupFile, DEFAULT_DISC_BOUND};
pub use form::{reduced_forms, Form};
pub use heegner::{heegner_ideal, HeegnerFailure, HeegnerIdeal};
pub use hgroup::{hgroup, HGroup, HGroupFile};
pub use order::{is_fundamental, kronecker, splitting_type, QuadInt, QuadOrder, SplittingType};

#[derive(Debug, Error)]
pub enum QuadError {
    #[error("{0} is not a negative fundamental discriminant")]
    NotFundamental(i64),
    #[error("conductor must be positive")]
    Conductor,
    #[error("{value} exceeds the configured bound {bound}")]
    BoundExceeded { value: u64, bound: u64 },
    #[error("conductor {conductor} and level {level} are not coprime")]
    NotCoprime { conductor: u64, level: u64 },
    #[error("no Heegner ideal: {0:?}")]
    NoHeegner(HeegnerFailure),
    #[error("form of discriminant {0} does not belong here")]
    WrongDiscriminant(i64),
    #[error("conductor {to} does not divide {from}")]
    NotSuborder { from: u64, to: u64 },
    #[error("p = 2 is not supported")]
    EvenPrime,
    #[error("not an algebraic integer")]
    NotIntegral,
}
