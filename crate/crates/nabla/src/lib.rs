//! The Gauss-Manin connection on q-expansions of nearly overconvergent
//! sections, its p-adic powers, Coleman primitives and Coleman logs.

mod coleman;
mod commutation;
mod family;
mod log;
mod nu;
mod section;

use cmlp_padic::PadicError;
use cmlp_qexp::QExpError;
use cmlp_weights::WeightError;
use thiserror::Error;

pub use coleman::{check_coleman, coleman_primitive, sym_nabla, theta_inverse, ColemanCheck};
pub use commutation::{check_commutation, CommutationReport};
pub use family::{nabla_nu_family, FamilySection, TruncPoly};
pub use log::{coleman_log, ColemanLog, LaurentSeries, Region};
pub use nu::{
    coefficient_bound, nabla_nu, nabla_nu_auto, smallest_certified_degree, theta_nu_split,
    ConvergenceReport,
};
pub use section::{graded_u, graded_v, nabla_step, nabla_steps, WSection, WSectionFile};

#[derive(Debug, Error)]
pub enum NablaError {
    #[error("section has no components")]
    EmptySection,
    #[error("inconsistent section: {0}")]
    Shape(String),
    #[error("weight assumption {0}")]
    Assumption(String),
    #[error("input is not p-depleted")]
    NotDepleted,
    #[error("tail not certified below degree {smallest}")]
    TailNotCertified { smallest: usize },
    #[error("log undefined: {0}")]
    NotUnitSeries(String),
    #[error(transparent)]
    QExp(#[from] QExpError),
    #[error(transparent)]
    Weight(#[from] WeightError),
    #[error(transparent)]
    Padic(#[from] PadicError),
}
