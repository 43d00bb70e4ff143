//! Dirichlet characters mod N with exact cyclotomic values, generalized
//! Bernoulli numbers, L(1-k, chi) and Gauss sums.

mod bernoulli;
mod units;

use std::sync::Arc;

use cmlp_padic::{CycloPadic, CycloRational, Padic, PadicError, RootEmbedding, RootOfUnity};
use num_integer::Integer;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use bernoulli::{bernoulli_number, bernoulli_poly};
pub use units::{factorize, residue_units, UnitGroup};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DirichletError {
    #[error("character mod {modulus} has conductor {conductor}; a primitive character is required")]
    Imprimitive { modulus: u64, conductor: u64 },
    #[error("expected {expected} generator images, got {got}")]
    BadImages { expected: usize, got: usize },
    #[error("image {0:?} is not compatible with the generator order")]
    BadImage(RootOfUnity),
    #[error(transparent)]
    Padic(#[from] PadicError),
}

/// A character of (Z/N)^*, given by the images of the generators of
/// `UnitGroup::cached(N)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DirichletChar {
    modulus: u64,
    images: Vec<RootOfUnity>,
}

impl DirichletChar {
    pub fn new(modulus: u64, images: Vec<RootOfUnity>) -> Result<Self, DirichletError> {
        let group = UnitGroup::cached(modulus);
        if images.len() != group.generators().len() {
            return Err(DirichletError::BadImages {
                expected: group.generators().len(),
                got: images.len(),
            });
        }
        for (img, &ord) in images.iter().zip(group.orders()) {
            if ord % img.den != 0 {
                return Err(DirichletError::BadImage(*img));
            }
        }
        Ok(DirichletChar { modulus, images })
    }

    pub fn trivial(modulus: u64) -> Self {
        let n = UnitGroup::cached(modulus).generators().len();
        DirichletChar {
            modulus,
            images: vec![RootOfUnity::one(); n],
        }
    }

    /// Legendre symbol mod an odd prime.
    pub fn quadratic(p: u64) -> Self {
        DirichletChar {
            modulus: p,
            images: vec![RootOfUnity::new(1, 2)],
        }
    }

    /// omega^e as a character mod p (the Teichmuller character to the e).
    pub fn teichmuller_power(p: u64, e: i64) -> Self {
        DirichletChar {
            modulus: p,
            images: vec![RootOfUnity::new(e, p - 1)],
        }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn images(&self) -> &[RootOfUnity] {
        &self.images
    }

    pub fn group(&self) -> Arc<UnitGroup> {
        UnitGroup::cached(self.modulus)
    }

    pub fn value(&self, a: i64) -> Option<RootOfUnity> {
        let group = self.group();
        let exps = group.dlog(a)?;
        Some(
            self.images
                .iter()
                .zip(exps)
                .fold(RootOfUnity::one(), |acc, (img, &k)| acc.mul(&img.pow(k as i64))),
        )
    }

    /// Order of the character.
    pub fn order(&self) -> u64 {
        self.images.iter().fold(1, |acc, r| acc.lcm(&r.den))
    }

    pub fn is_trivial(&self) -> bool {
        self.images.iter().all(|r| r.is_one())
    }

    /// 0 for even characters, 1 for odd ones.
    pub fn parity(&self) -> u8 {
        match self.value(-1) {
            Some(r) if !r.is_one() => 1,
            _ => 0,
        }
    }

    pub fn is_even(&self) -> bool {
        self.parity() == 0
    }

    pub fn conjugate(&self) -> Self {
        DirichletChar {
            modulus: self.modulus,
            images: self.images.iter().map(|r| r.inverse()).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.modulus, other.modulus);
        DirichletChar {
            modulus: self.modulus,
            images: self
                .images
                .iter()
                .zip(&other.images)
                .map(|(a, b)| a.mul(b))
                .collect(),
        }
    }

    /// Smallest f | N such that the character factors through (Z/f)^*.
    pub fn conductor(&self) -> u64 {
        let n = self.modulus;
        let group = self.group();
        (1..=n)
            .filter(|f| n.is_multiple_of(*f))
            .find(|&f| {
                group
                    .elements()
                    .iter()
                    .filter(|&&a| a % f == 1 % f)
                    .all(|&a| self.value(a as i64).is_some_and(|r| r.is_one()))
            })
            .unwrap_or(n)
    }

    pub fn is_primitive(&self) -> bool {
        self.conductor() == self.modulus
    }

    /// The primitive character inducing this one.
    pub fn primitive(&self) -> DirichletChar {
        let f = self.conductor();
        let small = UnitGroup::cached(f);
        let images = small
            .generators()
            .iter()
            .map(|&g| {
                let lift = (0..self.modulus)
                    .map(|t| g + t * f)
                    .find(|x| x.gcd(&self.modulus) == 1)
                    .expect("a lift prime to N exists");
                self.value(lift as i64).expect("unit")
            })
            .collect();
        DirichletChar { modulus: f, images }
    }

    /// The same character viewed modulo a multiple of N.
    pub fn induce(&self, modulus: u64) -> DirichletChar {
        assert_eq!(modulus % self.modulus, 0);
        let big = UnitGroup::cached(modulus);
        let images = big
            .generators()
            .iter()
            .map(|&g| self.value(g as i64).expect("unit mod N"))
            .collect();
        DirichletChar { modulus, images }
    }

    /// chi(a) in Q(zeta_order).
    pub fn value_cyclo(&self, a: i64, order: u64) -> CycloRational {
        match self.value(a) {
            Some(r) => r.to_rational_cyclo(order),
            None => CycloRational::integer(order, 0),
        }
    }

    /// chi(a) in Z_p, using the fixed embedding of roots of unity.
    pub fn value_padic(&self, a: i64, embedding: &RootEmbedding) -> Result<Padic, PadicError> {
        match self.value(a) {
            Some(r) => embedding.root(&r),
            None => Ok(Padic::zero(
                embedding.prime(),
                cmlp_padic::max_precision(embedding.prime()) as i64,
            )),
        }
    }
}

/// All characters mod N, trivial one first.
pub fn char_table(modulus: u64) -> Vec<DirichletChar> {
    let group = UnitGroup::cached(modulus);
    let orders = group.orders().to_vec();
    let mut out = Vec::new();
    let mut exps = vec![0u64; orders.len()];
    loop {
        out.push(DirichletChar {
            modulus,
            images: exps
                .iter()
                .zip(&orders)
                .map(|(&e, &o)| RootOfUnity::new(e as i64, o))
                .collect(),
        });
        let mut i = 0;
        while i < exps.len() {
            exps[i] += 1;
            if exps[i] < orders[i] {
                break;
            }
            exps[i] = 0;
            i += 1;
        }
        if i == exps.len() {
            break;
        }
    }
    out
}

/// B_{k,chi} = N^(k-1) sum_{a=1}^{N} chi(a) B_k(a/N), computed in
/// Q(zeta_order(chi)).  Characters of the wrong parity give 0, apart from
/// the trivial character at k = 1.
pub fn gen_bernoulli(chi: &DirichletChar, k: u32) -> CycloRational {
    let n = chi.modulus;
    let order = chi.order();
    let scale = BigRational::from_integer(num_bigint::BigInt::from(n).pow(k - 1));
    let poly = bernoulli_poly(k);
    let terms = (1..=n).filter_map(|a| {
        let r = chi.value(a as i64)?;
        let x = BigRational::new(a.into(), n.into());
        Some((r.exponent_in(order), &scale * bernoulli::eval_poly(&poly, &x)))
    });
    CycloRational::from_exponent_sums(order, (), terms)
}

/// L(1-k, chi) = -B_{k,chi}/k.
pub fn l_value(chi: &DirichletChar, k: u32) -> CycloRational {
    let b = gen_bernoulli(chi, k);
    let factor = BigRational::new((-1).into(), k.into());
    b.scale(&factor)
}

/// (B_{k,chi}, L(1-k, chi)).
pub fn gen_bernoulli_l(chi: &DirichletChar, k: u32) -> (CycloRational, CycloRational) {
    (gen_bernoulli(chi, k), l_value(chi, k))
}

/// s(chi) = sum_a chi(a) zeta_N^(-a), in Q(zeta_lcm(order, N)).
pub fn gauss_sum(chi: &DirichletChar) -> Result<CycloRational, DirichletError> {
    let conductor = chi.conductor();
    if conductor != chi.modulus {
        return Err(DirichletError::Imprimitive {
            modulus: chi.modulus,
            conductor,
        });
    }
    let n = chi.modulus;
    let field = chi.order().lcm(&n);
    let one = BigRational::from_integer(1.into());
    let group = chi.group();
    let terms = group.elements().iter().map(|&a| {
        let r = chi.value(a as i64).expect("unit");
        let e = r.exponent_in(field) - (a * (field / n)) as i64;
        (e, one.clone())
    });
    Ok(CycloRational::from_exponent_sums(field, (), terms))
}

pub fn gauss_sum_padic(
    chi: &DirichletChar,
    prime: u64,
    precision: u32,
) -> Result<CycloPadic, DirichletError> {
    Ok(gauss_sum(chi)?.to_padic(prime, precision))
}
