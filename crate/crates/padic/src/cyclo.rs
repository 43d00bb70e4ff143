use std::collections::HashMap;
use std::fmt::Debug;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::PadicError;
use crate::number::{max_precision, Padic};

/// Coefficients usable in `Cyclo`.  `Ctx` carries whatever is needed to
/// build constants (nothing for rationals, the prime and precision for
/// p-adics).
pub trait CycloCoeff: Clone + Debug {
    type Ctx: Clone + Debug + PartialEq;
    fn ctx(&self) -> Self::Ctx;
    fn from_i64(ctx: &Self::Ctx, n: i64) -> Self;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn is_zero(&self) -> bool;
}

impl CycloCoeff for BigRational {
    type Ctx = ();
    fn ctx(&self) {}
    fn from_i64(_: &(), n: i64) -> Self {
        BigRational::from_integer(n.into())
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
}

/// Context for p-adic coefficients: the prime and the relative precision
/// used for freshly created constants.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PadicCtx {
    pub prime: u64,
    pub precision: u32,
}

impl CycloCoeff for Padic {
    type Ctx = PadicCtx;
    fn ctx(&self) -> PadicCtx {
        PadicCtx {
            prime: self.prime(),
            precision: max_precision(self.prime()),
        }
    }
    fn from_i64(ctx: &PadicCtx, n: i64) -> Self {
        Padic::from_int(ctx.prime, n, ctx.precision)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn is_zero(&self) -> bool {
        Padic::is_zero(self)
    }
}

pub fn euler_phi(n: u64) -> u64 {
    let mut result = n;
    let mut m = n;
    let mut d = 2;
    while d * d <= m {
        if m.is_multiple_of(d) {
            while m.is_multiple_of(d) {
                m /= d;
            }
            result -= result / d;
        }
        d += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

fn poly_div_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    // both monic-ish with leading coefficient 1
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let mut quot = vec![0i64; rem.len() - dd];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dd];
        quot[i] = c;
        for (k, &d) in den.iter().enumerate() {
            rem[i + k] -= c * d;
        }
    }
    quot
}

fn compute_cyclotomic(n: u64) -> Vec<i64> {
    let mut poly = vec![0i64; n as usize + 1];
    poly[0] = -1;
    poly[n as usize] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            poly = poly_div_exact(&poly, &cyclotomic_poly(d));
        }
    }
    poly
}

/// Coefficients of the n-th cyclotomic polynomial, constant term first.
pub fn cyclotomic_poly(n: u64) -> Vec<i64> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Vec<i64>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().expect("cache").get(&n) {
        return p.clone();
    }
    let p = compute_cyclotomic(n);
    cache.lock().expect("cache").insert(n, p.clone());
    p
}

/// An element of R[x]/Phi_order(x), i.e. R(zeta_order), in the power basis.
#[derive(Clone, Debug)]
pub struct Cyclo<C: CycloCoeff> {
    order: u64,
    coeffs: Vec<C>,
    ctx: C::Ctx,
}

pub type CycloRational = Cyclo<BigRational>;
pub type CycloPadic = Cyclo<Padic>;

impl<C: CycloCoeff> Cyclo<C> {
    fn reduce_vec(order: u64, ctx: &C::Ctx, mut v: Vec<C>) -> Vec<C> {
        let phi = cyclotomic_poly(order);
        let deg = phi.len() - 1;
        while v.len() > deg {
            let top = v.pop().expect("nonempty");
            if top.is_zero() {
                continue;
            }
            let shift = v.len() - deg;
            for (k, &c) in phi.iter().enumerate().take(deg) {
                if c != 0 {
                    let t = top.mul(&C::from_i64(ctx, c));
                    v[shift + k] = v[shift + k].sub(&t);
                }
            }
        }
        while v.len() < deg {
            v.push(C::from_i64(ctx, 0));
        }
        v
    }

    pub fn from_coeffs(order: u64, ctx: C::Ctx, coeffs: Vec<C>) -> Self {
        let coeffs = Self::reduce_vec(order, &ctx, coeffs);
        Cyclo { order, coeffs, ctx }
    }

    pub fn constant(order: u64, value: C) -> Self {
        let ctx = value.ctx();
        Self::from_coeffs(order, ctx, vec![value])
    }

    pub fn zero(order: u64, ctx: C::Ctx) -> Self {
        Self::from_coeffs(order, ctx, Vec::new())
    }

    pub fn one(order: u64, ctx: C::Ctx) -> Self {
        let one = C::from_i64(&ctx, 1);
        Self::from_coeffs(order, ctx, vec![one])
    }

    /// zeta_order^e.
    pub fn zeta_power(order: u64, e: i64, ctx: C::Ctx) -> Self {
        let e = e.rem_euclid(order as i64) as usize;
        let mut v = vec![C::from_i64(&ctx, 0); e + 1];
        v[e] = C::from_i64(&ctx, 1);
        Self::from_coeffs(order, ctx, v)
    }

    /// Sum of `coefficient * zeta^exponent`, accumulated in the group ring
    /// and reduced once.
    pub fn from_exponent_sums<I>(order: u64, ctx: C::Ctx, terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
    {
        let mut v = vec![C::from_i64(&ctx, 0); order as usize];
        for (e, c) in terms {
            let i = e.rem_euclid(order as i64) as usize;
            v[i] = v[i].add(&c);
        }
        Self::from_coeffs(order, ctx, v)
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn context(&self) -> &C::Ctx {
        &self.ctx
    }

    fn check(&self, other: &Self) -> Result<(), PadicError> {
        if self.order != other.order {
            Err(PadicError::OrderMismatch(self.order, other.order))
        } else {
            Ok(())
        }
    }

    /// Bring two elements to a common cyclotomic order.
    pub fn align(&self, other: &Self) -> (Self, Self) {
        let l = self.order.lcm(&other.order);
        (self.lift_order(l), other.lift_order(l))
    }

    pub fn add(&self, other: &Self) -> Self {
        let (a, b) = self.align(other);
        let coeffs = a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x.add(y)).collect();
        Cyclo {
            order: a.order,
            coeffs,
            ctx: a.ctx,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let (a, b) = self.align(other);
        let coeffs = a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x.sub(y)).collect();
        Cyclo {
            order: a.order,
            coeffs,
            ctx: a.ctx,
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (a, b) = self.align(other);
        let n = a.coeffs.len();
        let mut v = vec![C::from_i64(&a.ctx, 0); (2 * n).saturating_sub(1).max(1)];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    v[i + j] = v[i + j].add(&x.mul(y));
                }
            }
        }
        Self::from_coeffs(a.order, a.ctx, v)
    }

    pub fn scale(&self, c: &C) -> Self {
        Cyclo {
            order: self.order,
            coeffs: self.coeffs.iter().map(|x| x.mul(c)).collect(),
            ctx: self.ctx.clone(),
        }
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, PadicError> {
        self.check(other)?;
        Ok(self.mul(other))
    }

    pub fn pow(&self, e: u64) -> Self {
        let mut result = Self::one(self.order, self.ctx.clone());
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Re-express in Q(zeta_new) for `order | new_order`.
    pub fn lift_order(&self, new_order: u64) -> Self {
        if new_order == self.order {
            return self.clone();
        }
        assert_eq!(new_order % self.order, 0, "order must divide target");
        let step = (new_order / self.order) as i64;
        Self::from_exponent_sums(
            new_order,
            self.ctx.clone(),
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| (i as i64 * step, c.clone())),
        )
    }

    /// Galois action zeta -> zeta^a (a prime to the order).
    pub fn galois(&self, a: i64) -> Self {
        Self::from_exponent_sums(
            self.order,
            self.ctx.clone(),
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| (i as i64 * a, c.clone())),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// The value as a base-ring element, if it lies there.
    pub fn as_constant(&self) -> Option<C> {
        if self.coeffs.iter().skip(1).all(|c| c.is_zero()) {
            Some(
                self.coeffs
                    .first()
                    .cloned()
                    .unwrap_or_else(|| C::from_i64(&self.ctx, 0)),
            )
        } else {
            None
        }
    }

    pub fn map<D: CycloCoeff>(&self, ctx: D::Ctx, f: impl Fn(&C) -> D) -> Cyclo<D> {
        Cyclo {
            order: self.order,
            coeffs: self.coeffs.iter().map(f).collect(),
            ctx,
        }
    }
}

impl PartialEq for CycloRational {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = self.align(other);
        a.coeffs == b.coeffs
    }
}

impl CycloRational {
    pub fn rational(order: u64, q: BigRational) -> Self {
        Self::constant(order, q)
    }

    pub fn integer(order: u64, n: i64) -> Self {
        Self::constant(order, BigRational::from_integer(BigInt::from(n)))
    }

    /// Reduce every coefficient into Q_p.
    pub fn to_padic(&self, p: u64, precision: u32) -> CycloPadic {
        self.map(PadicCtx { prime: p, precision }, |c| {
            Padic::from_ratio(p, c, precision)
        })
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }
}

impl CycloPadic {
    /// Coefficient-wise equality to precision.
    pub fn approx_eq(&self, other: &Self) -> bool {
        let (a, b) = self.align(other);
        a.coeffs.iter().zip(&b.coeffs).all(|(x, y)| x.approx_eq(y))
    }

    /// Substitute a p-adic root of Phi_order for zeta.
    pub fn evaluate_at(&self, root: &Padic) -> Padic {
        let mut acc = Padic::zero(root.prime(), max_precision(root.prime()) as i64);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * root) + c;
        }
        acc
    }

    /// Smallest absolute precision among coefficients.
    pub fn absolute_precision(&self) -> i64 {
        self.coeffs
            .iter()
            .map(Padic::absolute_precision)
            .min()
            .unwrap_or(i64::MAX)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic_poly(1), vec![-1, 1]);
        assert_eq!(cyclotomic_poly(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_poly(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_poly(12), vec![1, 0, -1, 0, 1]);
        for n in 1..60 {
            assert_eq!(cyclotomic_poly(n).len() as u64 - 1, euler_phi(n));
        }
    }

    #[test]
    fn roots_of_unity_multiply() {
        let z = CycloRational::zeta_power(12, 5, ());
        let w = CycloRational::zeta_power(12, 9, ());
        assert_eq!(z.mul(&w), CycloRational::zeta_power(12, 2, ()));
        assert!(z.pow(12).is_one());
    }

    #[test]
    fn sum_of_all_roots_vanishes() {
        for n in 2..20 {
            let s = CycloRational::from_exponent_sums(n, (), (0..n as i64).map(|e| (e, r(1))));
            assert!(s.is_zero(), "n={n}");
        }
    }

    #[test]
    fn lifting_preserves_value() {
        let z3 = CycloRational::zeta_power(3, 1, ());
        let lifted = z3.lift_order(12);
        assert_eq!(lifted, CycloRational::zeta_power(12, 4, ()));
        let i = CycloRational::zeta_power(4, 1, ());
        assert_eq!(i.mul(&z3), CycloRational::zeta_power(12, 7, ()));
    }

    #[test]
    fn sqrt_minus_three() {
        // zeta_3 - zeta_3^2 squares to -3
        let z = CycloRational::zeta_power(3, 1, ());
        let d = z.sub(&z.pow(2));
        assert_eq!(d.mul(&d).as_constant(), Some(r(-3)));
    }

    #[test]
    fn galois_conjugation() {
        let z = CycloRational::zeta_power(5, 2, ());
        assert_eq!(z.galois(-1), CycloRational::zeta_power(5, 3, ()));
        assert!(z.mul(&z.galois(-1)).is_one());
    }

    #[test]
    fn evaluation_at_teichmuller_root() {
        let p = 5;
        let omega = crate::functions::teichmuller(&Padic::from_int(p, 2, 10)).unwrap();
        let z = CycloRational::zeta_power(4, 1, ()).to_padic(p, 10);
        let x = z.mul(&z).evaluate_at(&omega);
        assert!(x.approx_eq(&Padic::from_int(p, -1, 10)));
    }
}
