use cmlp_padic::{binomial, Padic};
use cmlp_quadform::QuadInt;
use serde::{Deserialize, Serialize};

use crate::HeckeError;

/// re + im sqrt(D) in K tensor Q_p, p not split.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadPadic {
    pub disc: i64,
    pub re: Padic,
    pub im: Padic,
}

impl QuadPadic {
    pub fn new(disc: i64, re: Padic, im: Padic) -> Self {
        QuadPadic { disc, re, im }
    }

    pub fn prime(&self) -> u64 {
        self.re.prime()
    }

    pub fn from_int(x: &QuadInt, p: u64, precision: u32) -> Self {
        let two = Padic::exact(p, 2);
        QuadPadic {
            disc: x.disc,
            re: &Padic::from_int(p, x.x, precision) / &two,
            im: &Padic::from_int(p, x.y, precision) / &two,
        }
    }

    pub fn rational(disc: i64, a: Padic) -> Self {
        let p = a.prime();
        QuadPadic {
            disc,
            re: a,
            im: Padic::exact_zero(p),
        }
    }

    pub fn one(disc: i64, p: u64) -> Self {
        Self::rational(disc, Padic::exact(p, 1))
    }

    pub fn conjugate(&self) -> Self {
        QuadPadic {
            disc: self.disc,
            re: self.re.clone(),
            im: self.im.negate(),
        }
    }

    pub fn norm(&self) -> Padic {
        let d = Padic::exact(self.prime(), self.disc);
        &(&self.re * &self.re) - &(&(&self.im * &self.im) * &d)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let d = Padic::exact(self.prime(), self.disc);
        QuadPadic {
            disc: self.disc,
            re: &(&self.re * &other.re) + &(&(&self.im * &other.im) * &d),
            im: &(&self.re * &other.im) + &(&self.im * &other.re),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        QuadPadic {
            disc: self.disc,
            re: &self.re - &other.re,
            im: &self.im - &other.im,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        QuadPadic {
            disc: self.disc,
            re: &self.re + &other.re,
            im: &self.im + &other.im,
        }
    }

    pub fn scale(&self, c: &Padic) -> Self {
        QuadPadic {
            disc: self.disc,
            re: &self.re * c,
            im: &self.im * c,
        }
    }

    pub fn inverse(&self) -> Result<Self, HeckeError> {
        let n = self.norm();
        let inv = n.inverse()?;
        Ok(self.conjugate().scale(&inv))
    }

    pub fn pow(&self, e: i64) -> Result<Self, HeckeError> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut acc = Self::one(self.disc, self.prime());
        let mut b = base;
        let mut k = e.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&b);
            }
            b = b.mul(&b);
            k >>= 1;
        }
        Ok(acc)
    }

    /// Twice the valuation, so that ramified uniformizers have 1.
    pub fn valuation_halves(&self) -> i64 {
        self.norm().valuation_bound()
    }

    pub fn is_unit(&self) -> bool {
        self.norm().is_unit()
    }

    /// Lower bound for 2 v(self - other).
    pub fn agreement_halves(&self, other: &Self) -> i64 {
        let diff = self.sub(other);
        let p = self.prime() as i64;
        // v(re), v(im sqrt D) bound v(diff) from below
        let v_re = 2 * diff.re.valuation_bound();
        let v_d = if self.disc % p == 0 { 1 } else { 0 };
        let v_im = 2 * diff.im.valuation_bound() + v_d;
        v_re.min(v_im)
    }

    pub fn approx_eq(&self, other: &Self) -> bool {
        self.re.approx_eq(&other.re) && self.im.approx_eq(&other.im)
    }

    /// self^s for a p-adic exponent s; needs self = 1 mod (sqrt of) p, and
    /// sums the binomial series sum binom(s, i) (self - 1)^i.
    pub fn pow_padic(&self, s: &Padic, precision: i64) -> Result<Self, HeckeError> {
        let one = Self::one(self.disc, self.prime());
        let h = self.sub(&one);
        let vh = h.valuation_halves();
        if vh <= 0 {
            return Err(HeckeError::NotOneUnit);
        }
        let mut acc = one.clone();
        let mut power = one;
        let mut i = 1u64;
        while (i as i64) * vh < 2 * precision + 2 {
            power = power.mul(&h);
            acc = acc.add(&power.scale(&binomial(s, i)));
            i += 1;
        }
        Ok(acc)
    }
}
