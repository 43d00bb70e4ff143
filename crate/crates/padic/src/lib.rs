//! Capped relative precision p-adic numbers, the usual elementary functions
//! on them, and coefficient rings Q(zeta_M) over Q and over Q_p.

mod cyclo;
mod error;
mod functions;
mod number;
mod root;

pub use cyclo::{cyclotomic_poly, euler_phi, Cyclo, CycloCoeff, CycloPadic, CycloRational, PadicCtx};
pub use error::PadicError;
pub use functions::{
    binomial, exp, factorial, log, one_unit_part, pochhammer_shift, primitive_root, teichmuller,
};
pub use number::{max_precision, EXACT_ZERO, powmod, vp_factorial, vp_int, Padic};
pub use root::{RootEmbedding, RootOfUnity};
