use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::cyclo::{Cyclo, CycloCoeff, CycloPadic, CycloRational};
use crate::error::PadicError;
use crate::functions::{primitive_root, teichmuller};
use crate::number::Padic;

/// exp(2 pi i num/den), stored reduced with 0 <= num < den.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RootOfUnity {
    pub num: u64,
    pub den: u64,
}

impl RootOfUnity {
    pub fn new(num: i64, den: u64) -> Self {
        assert!(den > 0);
        let num = num.rem_euclid(den as i64) as u64;
        let g = num.gcd(&den);
        RootOfUnity {
            num: num / g,
            den: den / g,
        }
    }

    pub fn one() -> Self {
        RootOfUnity { num: 0, den: 1 }
    }

    pub fn is_one(&self) -> bool {
        self.num == 0
    }

    pub fn order(&self) -> u64 {
        self.den
    }

    pub fn mul(&self, other: &Self) -> Self {
        let l = self.den.lcm(&other.den);
        let n = self.num * (l / self.den) + other.num * (l / other.den);
        Self::new(n as i64, l)
    }

    pub fn inverse(&self) -> Self {
        Self::new(-(self.num as i64), self.den)
    }

    pub fn pow(&self, e: i64) -> Self {
        let n = (self.num as i128 * e as i128).rem_euclid(self.den as i128);
        Self::new(n as i64, self.den)
    }

    /// The root as a power of zeta_order; `order` must be a multiple of den.
    pub fn exponent_in(&self, order: u64) -> i64 {
        assert_eq!(order % self.den, 0, "root does not live in this field");
        (self.num * (order / self.den)) as i64
    }

    pub fn to_cyclo<C: CycloCoeff>(&self, order: u64, ctx: C::Ctx) -> Cyclo<C> {
        Cyclo::zeta_power(order, self.exponent_in(order), ctx)
    }

    pub fn to_rational_cyclo(&self, order: u64) -> CycloRational {
        self.to_cyclo(order, ())
    }
}

/// A fixed choice of p-adic roots of unity: zeta_L with L | p-1 goes to
/// omega(g)^((p-1)/L) where g is the least primitive root mod p.
#[derive(Clone, Debug)]
pub struct RootEmbedding {
    prime: u64,
    precision: u32,
    generator: Padic,
}

impl RootEmbedding {
    pub fn new(prime: u64, precision: u32) -> Self {
        let g = primitive_root(prime);
        let generator =
            teichmuller(&Padic::from_int(prime, g as i64, precision)).expect("unit");
        RootEmbedding {
            prime,
            precision,
            generator,
        }
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn embeds(&self, order: u64) -> bool {
        (self.prime - 1).is_multiple_of(order)
    }

    /// Image of zeta_order, for order dividing p-1.
    pub fn zeta(&self, order: u64) -> Result<Padic, PadicError> {
        if !self.embeds(order) {
            return Err(PadicError::Domain(format!(
                "no root of unity of order {order} in Q_{}",
                self.prime
            )));
        }
        self.generator.pow(((self.prime - 1) / order) as i64)
    }

    pub fn root(&self, r: &RootOfUnity) -> Result<Padic, PadicError> {
        self.zeta(r.den)?.pow(r.num as i64)
    }

    pub fn cyclo(&self, x: &CycloPadic) -> Result<Padic, PadicError> {
        Ok(x.evaluate_at(&self.zeta(x.order())?))
    }

    pub fn rational_cyclo(&self, x: &CycloRational) -> Result<Padic, PadicError> {
        self.cyclo(&x.to_padic(self.prime, self.precision))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn root_arithmetic() {
        let a = RootOfUnity::new(1, 4);
        let b = RootOfUnity::new(1, 6);
        assert_eq!(a.mul(&b), RootOfUnity::new(5, 12));
        assert_eq!(a.pow(4), RootOfUnity::one());
        assert_eq!(RootOfUnity::new(3, 6), RootOfUnity::new(1, 2));
        assert!(a.mul(&a.inverse()).is_one());
    }

    #[test]
    fn embedding_is_multiplicative() {
        let e = RootEmbedding::new(13, 8);
        let a = RootOfUnity::new(1, 4);
        let b = RootOfUnity::new(1, 6);
        let lhs = e.root(&a.mul(&b)).unwrap();
        let rhs = e.root(&a).unwrap() * e.root(&b).unwrap();
        assert!(lhs.approx_eq(&rhs));
        assert!(e.zeta(5).is_err());
    }

    #[test]
    fn embedding_of_cyclotomic_values() {
        let e = RootEmbedding::new(7, 10);
        let z = RootOfUnity::new(1, 3).to_rational_cyclo(6);
        let x = e.rational_cyclo(&z.mul(&z).add(&z)).unwrap();
        // zeta_3^2 + zeta_3 = -1
        assert!(x.approx_eq(&Padic::from_int(7, -1, 10)));
    }
}
