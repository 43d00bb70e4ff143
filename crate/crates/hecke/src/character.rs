use cmlp_dirichlet::DirichletChar;
use cmlp_padic::{CycloPadic, Padic, PadicCtx, RootOfUnity};
use cmlp_quadform::{HGroup, QuadInt};
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::local::QuadPadic;
use crate::HeckeError;

/// A Hecke character of H(c, N): chi((alpha)) = eps(alpha) alpha^-n conj(alpha)^-m
/// on principal ideals, and psi on Pic(O_c) classes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HeckeChar {
    pub field_disc: i64,
    pub conductor: u64,
    pub level: u64,
    /// (n, m)
    pub infinity: (i64, i64),
    /// values on Pic(O_c), in the class group's ordering
    pub class_values: Vec<RootOfUnity>,
    pub nebentype: DirichletChar,
}

impl HeckeChar {
    pub fn weight(&self) -> i64 {
        self.infinity.0 + self.infinity.1
    }

    /// j in the type (k + j, -j).
    pub fn twist_index(&self) -> i64 {
        -self.infinity.1
    }

    /// Order of the finite part.
    pub fn finite_order(&self) -> u64 {
        self.class_values
            .iter()
            .fold(self.nebentype.order(), |acc, r| acc.lcm(&r.den))
    }

    pub fn is_finite_trivial(&self) -> bool {
        self.class_values.iter().all(RootOfUnity::is_one) && self.nebentype.is_trivial()
    }

    pub fn check_context(&self, hg: &HGroup) -> Result<(), HeckeError> {
        let o = hg.order();
        if o.field_disc != self.field_disc
            || o.conductor != self.conductor
            || hg.level() != self.level
            || hg.classes().class_number() != self.class_values.len()
        {
            return Err(HeckeError::Context);
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<Self, HeckeError> {
        serde_json::from_str(text).map_err(|e| HeckeError::Format(e.to_string()))
    }
}

/// Roots of unity of O_c as (element, exponent t with u = zeta_w^t, w).
fn order_units(field_disc: i64, conductor: u64) -> (Vec<(QuadInt, i64)>, u64) {
    let generator = match (field_disc, conductor) {
        (-4, 1) => (QuadInt::new(-4, 0, 1).expect("i"), 4u64),
        (-3, 1) => (QuadInt::new(-3, 1, 1).expect("zeta_6"), 6),
        _ => (QuadInt::rational(field_disc, -1), 2),
    };
    let (g, w) = generator;
    let mut out = Vec::new();
    let mut x = QuadInt::rational(field_disc, 1);
    for t in 0..w as i64 {
        out.push((x, t));
        x = x.mul(&g);
    }
    (out, w)
}

/// eps(u) u^(m - n) = 1 for every root of unity u of O_c, u^(m-n) read in
/// the complex embedding where zeta_w = exp(2 pi i / w).
pub fn unit_consistent(hg: &HGroup, infinity: (i64, i64), eps: &DirichletChar) -> bool {
    let o = hg.order();
    let (units, w) = order_units(o.field_disc, o.conductor);
    units.iter().all(|(u, t)| {
        let (x, y) = u.omega_coords();
        let residue = hg.heegner().reduce(x, y);
        let e = eps.value(residue as i64).unwrap_or_else(RootOfUnity::one);
        let archimedean = RootOfUnity::new(t * (infinity.1 - infinity.0), w);
        e.mul(&archimedean).is_one()
    })
}

/// Characters of infinity type (k + j, -j) with nebentype eps.  The
/// restriction to (O_K/N)^* is forced to be eps, so the list has h(O_c)
/// members when the unit condition holds and is empty otherwise.
pub fn enumerate_chars(
    hg: &HGroup,
    k: i64,
    j: i64,
    eps: &DirichletChar,
) -> Result<Vec<HeckeChar>, HeckeError> {
    if eps.modulus() != hg.level() {
        return Err(HeckeError::Context);
    }
    let infinity = (k + j, -j);
    if !unit_consistent(hg, infinity, eps) {
        return Ok(Vec::new());
    }
    let o = hg.order();
    Ok(hg
        .classes()
        .characters()?
        .into_iter()
        .map(|class_values| HeckeChar {
            field_disc: o.field_disc,
            conductor: o.conductor,
            level: hg.level(),
            infinity,
            class_values,
            nebentype: eps.clone(),
        })
        .collect())
}

/// Finite part at an element of H(c, N).
pub fn char_eval(chi: &HeckeChar, hg: &HGroup, element: usize) -> Result<RootOfUnity, HeckeError> {
    chi.check_context(hg)?;
    let (class, residue) = hg.element(element);
    let e = chi
        .nebentype
        .value(residue as i64)
        .ok_or(HeckeError::NotCoprime)?;
    Ok(chi.class_values[class].mul(&e))
}

/// The same value in Q_p(zeta_L), L the order of the finite part.
pub fn char_eval_cyclo(
    chi: &HeckeChar,
    hg: &HGroup,
    element: usize,
    prime: u64,
    precision: u32,
) -> Result<CycloPadic, HeckeError> {
    let r = char_eval(chi, hg, element)?;
    Ok(r.to_cyclo::<Padic>(chi.finite_order(), PadicCtx { prime, precision }))
}

/// chi((alpha)) = eps(alpha) alpha^-n conj(alpha)^-m for alpha in O_c prime
/// to N c p; the root of unity eps(alpha) is returned separately.
pub fn principal_value(
    chi: &HeckeChar,
    hg: &HGroup,
    alpha: &QuadInt,
    prime: u64,
    precision: u32,
) -> Result<(RootOfUnity, QuadPadic), HeckeError> {
    chi.check_context(hg)?;
    if !alpha.in_order(chi.conductor) {
        return Err(HeckeError::NotInOrder);
    }
    let norm = alpha.norm();
    if norm.gcd(&((chi.level * chi.conductor * prime) as i64)) != 1 {
        return Err(HeckeError::NotCoprime);
    }
    let (x, y) = alpha.omega_coords();
    let residue = hg.heegner().reduce(x, y);
    let e = chi
        .nebentype
        .value(residue as i64)
        .ok_or(HeckeError::NotCoprime)?;
    let a = QuadPadic::from_int(alpha, prime, precision);
    let value = a
        .pow(-chi.infinity.0)?
        .mul(&a.conjugate().pow(-chi.infinity.1)?);
    Ok((e, value))
}

/// The local factor x^n conj(x)^m of the p-adic avatar at a unit x of
/// O_K tensor Z_p lying in the kernel of the finite part.
pub fn avatar_local(chi: &HeckeChar, x: &QuadPadic) -> Result<QuadPadic, HeckeError> {
    if !x.is_unit() {
        return Err(HeckeError::NotCoprime);
    }
    Ok(x.pow(chi.infinity.0)?.mul(&x.conjugate().pow(chi.infinity.1)?))
}

/// chi N^j: the type moves by (j, j); the norm has trivial finite part.
pub fn twist_norm(chi: &HeckeChar, j: i64) -> HeckeChar {
    HeckeChar {
        infinity: (chi.infinity.0 + j, chi.infinity.1 + j),
        ..chi.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use cmlp_quadform::hgroup;

    #[test]
    fn gaussian_level_five() {
        let hg = hgroup(-4, 1, 5).unwrap();
        // i reduces to 2 mod 5, so eps(2) = i^(n - m) = -1 for type (2, 0)
        let quad = DirichletChar::quadratic(5);
        let chars = enumerate_chars(&hg, 2, 0, &quad).unwrap();
        assert_eq!(chars.len(), 1);
        assert_eq!(chars[0].infinity, (2, 0));
        assert!(enumerate_chars(&hg, 2, 0, &DirichletChar::trivial(5)).unwrap().is_empty());
        // type (1, 0) needs eps(2) = i
        let quartic = DirichletChar::teichmuller_power(5, 1);
        let ok = [quartic.clone(), quartic.conjugate()]
            .iter()
            .filter(|e| !enumerate_chars(&hg, 1, 0, e).unwrap().is_empty())
            .count();
        assert_eq!(ok, 1);
    }

    #[test]
    fn json_round_trip() {
        let hg = hgroup(-23, 1, 3).unwrap();
        let chars = enumerate_chars(&hg, 2, 0, &DirichletChar::trivial(3)).unwrap();
        assert_eq!(chars.len(), 3);
        for c in &chars {
            assert_eq!(&HeckeChar::from_json(&c.to_json()).unwrap(), c);
        }
        assert!(HeckeChar::from_json("{}").is_err());
    }

    #[test]
    fn context_mismatch() {
        let hg = hgroup(-23, 1, 3).unwrap();
        let other = hgroup(-23, 1, 6).unwrap();
        let chi = enumerate_chars(&hg, 2, 0, &DirichletChar::trivial(3)).unwrap()[0].clone();
        assert!(matches!(char_eval(&chi, &other, 0), Err(HeckeError::Context)));
        assert!(enumerate_chars(&hg, 2, 0, &DirichletChar::trivial(6)).is_err());
    }
}
