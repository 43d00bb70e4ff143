//! Algebraic Hecke characters on H(c, N): enumeration, values, p-adic
//! avatars, conductors at p, weight coordinates and p-adic deformations.

mod character;
mod conductor;
mod family;
mod local;

use cmlp_padic::PadicError;
use cmlp_quadform::QuadError;
use thiserror::Error;

pub use character::{
    avatar_local, char_eval, char_eval_cyclo, enumerate_chars, principal_value, twist_norm,
    unit_consistent, HeckeChar,
};
pub use conductor::{conductor_ppart, passes_gate};
pub use family::{
    deform_char, deform_to, residue_field_size, weight_map, DeformedChar, WeightImage,
};
pub use local::QuadPadic;

#[derive(Debug, Error)]
pub enum HeckeError {
    #[error("character does not belong to this group")]
    Context,
    #[error("representative not prime to c N p")]
    NotCoprime,
    #[error("element not in the order")]
    NotInOrder,
    #[error("p = {0} splits; weight coordinates need p inert or ramified")]
    Split(u64),
    #[error("deformation not congruent modulo (q - 1) p^(M-1)")]
    Congruence,
    #[error("binomial power needs a one-unit")]
    NotOneUnit,
    #[error("bad character file: {0}")]
    Format(String),
    #[error(transparent)]
    Quad(#[from] QuadError),
    #[error(transparent)]
    Padic(#[from] PadicError),
}
