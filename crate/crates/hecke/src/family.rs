use cmlp_padic::Padic;
use cmlp_quadform::{splitting_type, SplittingType};
use cmlp_weights::Weight;
use serde::{Deserialize, Serialize};

use crate::character::{avatar_local, HeckeChar};
use crate::local::QuadPadic;
use crate::HeckeError;

/// Size of the residue field of K at p: p^2 inert, p ramified.
pub fn residue_field_size(field_disc: i64, p: u64) -> Result<u64, HeckeError> {
    match splitting_type(field_disc, p)? {
        SplittingType::Inert => Ok(p * p),
        SplittingType::Ramified => Ok(p),
        SplittingType::Split => Err(HeckeError::Split(p)),
    }
}

/// ((k mod q-1, k), (j mod q-1, j)) and the images in weight space.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightImage {
    pub q: u64,
    pub k_residue: u64,
    pub j_residue: u64,
    pub k: Weight,
    pub j: Weight,
}

pub fn weight_map(chi: &HeckeChar, p: u64) -> Result<WeightImage, HeckeError> {
    let q = residue_field_size(chi.field_disc, p)?;
    let k = chi.weight();
    let j = chi.twist_index();
    Ok(WeightImage {
        q,
        k_residue: k.rem_euclid(q as i64 - 1) as u64,
        j_residue: j.rem_euclid(q as i64 - 1) as u64,
        k: Weight::classical(p, k),
        j: Weight::classical(p, j),
    })
}

/// chi' = chi t^(dk + dj) conj(t)^(-dj) at p, for (dk, dj) in
/// (q - 1) p^(M-1) Z_p; the finite part away from p is that of chi.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeformedChar {
    pub base: HeckeChar,
    pub prime: u64,
    pub q: u64,
    pub delta_k: Padic,
    pub delta_j: Padic,
    pub neighbourhood: u32,
}

pub fn deform_char(
    chi: &HeckeChar,
    p: u64,
    delta_k: Padic,
    delta_j: Padic,
    neighbourhood: u32,
) -> Result<DeformedChar, HeckeError> {
    let q = residue_field_size(chi.field_disc, p)?;
    let need = neighbourhood as i64 - 1;
    for d in [&delta_k, &delta_j] {
        if d.valuation_bound() < need {
            return Err(HeckeError::Congruence);
        }
    }
    Ok(DeformedChar {
        base: chi.clone(),
        prime: p,
        q,
        delta_k,
        delta_j,
        neighbourhood,
    })
}

/// Integer targets (k', j'); requires k' = k and j' = j mod (q-1) p^(M-1).
pub fn deform_to(
    chi: &HeckeChar,
    p: u64,
    k_new: i64,
    j_new: i64,
    neighbourhood: u32,
) -> Result<DeformedChar, HeckeError> {
    let q = residue_field_size(chi.field_disc, p)?;
    let modulus = (q as i64 - 1) * (p as i64).pow(neighbourhood.saturating_sub(1));
    let (dk, dj) = (k_new - chi.weight(), j_new - chi.twist_index());
    if dk % modulus != 0 || dj % modulus != 0 {
        return Err(HeckeError::Congruence);
    }
    deform_char(
        chi,
        p,
        Padic::exact(p, dk),
        Padic::exact(p, dj),
        neighbourhood,
    )
}

impl DeformedChar {
    /// Deform further; deltas add.
    pub fn deform_again(&self, delta_k: Padic, delta_j: Padic) -> Result<Self, HeckeError> {
        deform_char(
            &self.base,
            self.prime,
            &self.delta_k + &delta_k,
            &self.delta_j + &delta_j,
            self.neighbourhood,
        )
    }

    pub fn weight_map(&self) -> Result<WeightImage, HeckeError> {
        let mut image = weight_map(&self.base, self.prime)?;
        let p = self.prime;
        image.k = Weight::deformed(p, self.base.weight(), self.delta_k.clone());
        image.j = Weight::deformed(p, self.base.twist_index(), self.delta_j.clone());
        Ok(image)
    }

    /// Local factor at a unit x of O_K tensor Z_p in the kernel of the
    /// finite part: chi's factor times y^(dn/(q-1)) conj(y)^(dm/(q-1))
    /// with y = x^(q-1) a one-unit.
    pub fn avatar_local(&self, x: &QuadPadic, precision: i64) -> Result<QuadPadic, HeckeError> {
        let base = avatar_local(&self.base, x)?;
        let p = self.prime;
        let y = x.pow(self.q as i64 - 1)?;
        let unit = Padic::exact(p, self.q as i64 - 1).inverse()?;
        let dn = &(&self.delta_k + &self.delta_j) * &unit;
        let dm = &self.delta_j.negate() * &unit;
        let extra = y
            .pow_padic(&dn, precision)?
            .mul(&y.conjugate().pow_padic(&dm, precision)?);
        Ok(base.mul(&extra))
    }
}
