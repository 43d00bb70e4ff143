//! p-adic L-values as finite character sums over H(c, N), with the
//! geometric evaluation hidden behind a [`CmOracle`].
//!
//! An oracle returns, for each element of H(c, N) and each level tag, the
//! value of the interpolated operator at the corresponding CM point.  The
//! assembler multiplies by the inverse of the character and averages over
//! (O_K / N)^*.  Values are in Q_p(zeta_L) with L the order of the finite
//! part; powers of the period are carried symbolically.

mod assemble;
mod interpolation;
mod lvalue;
mod oracle;
mod special;

use cmlp_hecke::HeckeError;
use cmlp_padic::PadicError;
use cmlp_qexp::QExpError;
use cmlp_quadform::QuadError;
use cmlp_weights::WeightError;
use thiserror::Error;

pub use assemble::{
    forward_differences, lp_two_var, lp_two_var_coeffs, lp_value, lp_value_twisted,
    monomial_differences,
};
pub use interpolation::{
    character_sum, interpolation_check, orthogonality_vanish, DepletedOracle, InterpolationData,
    InterpolationReport, OrthogonalityReport,
};
pub use lvalue::{LValue, LValueFile};
pub use oracle::{
    CmOracle, ConstantOracle, EquivariantOracle, FileOracle, LevelTag, MockOracle,
    OracleContext, OracleEntry, OracleFile, PolynomialFamily,
};
pub use special::{
    gross_zagier_assemble, kronecker_assemble, primitive_depletion_check, ClassData,
};

#[derive(Debug, Error)]
pub enum LfunError {
    #[error("context mismatch: {0}")]
    Context(String),
    #[error("conductor p-part {conductor} is below the gate {threshold}")]
    Gate { conductor: u32, threshold: u32 },
    #[error("oracle has no value for element {element} at level {level}")]
    MissingLevel { element: usize, level: String },
    #[error("j = {j} outside 0..={r}")]
    GradeOutOfRange { j: i64, r: i64 },
    #[error("infinity type {0:?} not allowed here")]
    InfinityType((i64, i64)),
    #[error("p = {0} splits in K")]
    Split(u64),
    #[error("bad oracle file: {0}")]
    Format(String),
    #[error(transparent)]
    Hecke(#[from] HeckeError),
    #[error(transparent)]
    Quad(#[from] QuadError),
    #[error(transparent)]
    Padic(#[from] PadicError),
    #[error(transparent)]
    Weight(#[from] WeightError),
    #[error(transparent)]
    QExp(#[from] QExpError),
}
