use std::cmp::min;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::PadicError;

/// Absolute precision used for zeros known exactly.
pub const EXACT_ZERO: i64 = 1 << 40;

/// Largest relative precision `k` with `p^k` representable in a `u64`.
pub fn max_precision(p: u64) -> u32 {
    let mut k = 0;
    let mut m: u64 = 1;
    while let Some(next) = m.checked_mul(p) {
        m = next;
        k += 1;
    }
    k
}

pub(crate) fn ppow(p: u64, k: u32) -> u64 {
    p.checked_pow(k).expect("p-adic modulus exceeds u64")
}

pub(crate) fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn invmod(a: u64, m: u64) -> u64 {
    let e = (a as i128).extended_gcd(&(m as i128));
    debug_assert_eq!(e.gcd, 1);
    e.x.rem_euclid(m as i128) as u64
}

pub fn powmod(base: u64, mut e: u64, m: u64) -> u64 {
    let mut result = 1 % m;
    let mut b = base % m;
    while e > 0 {
        if e & 1 == 1 {
            result = mulmod(result, b, m);
        }
        b = mulmod(b, b, m);
        e >>= 1;
    }
    result
}

/// Exponent of `p` in `n` (n != 0).
pub fn vp_int(p: u64, n: u128) -> u32 {
    let mut n = n;
    let mut v = 0;
    while n != 0 && n.is_multiple_of(p as u128) {
        n /= p as u128;
        v += 1;
    }
    v
}

/// Exponent of `p` in `n!`.
pub fn vp_factorial(p: u64, n: u64) -> u64 {
    let mut total = 0;
    let mut q = n;
    while q > 0 {
        q /= p;
        total += q;
    }
    total
}

/// An element of Q_p known up to a finite number of digits.
///
/// A nonzero value is `p^valuation * unit` with `unit` a residue mod
/// `p^precision` prime to `p`.  When `precision` is 0 the element is the
/// zero of absolute precision `valuation`, written O(p^valuation).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Padic {
    prime: u64,
    valuation: i64,
    unit: u64,
    precision: u32,
}

fn normalize(p: u64, mut valuation: i64, mut value: u64, mut k: u32) -> Padic {
    if k == 0 || value == 0 {
        return Padic::zero(p, valuation + k as i64);
    }
    while value.is_multiple_of(p) {
        value /= p;
        valuation += 1;
        k -= 1;
    }
    Padic {
        prime: p,
        valuation,
        unit: value,
        precision: k,
    }
}

impl Padic {
    /// O(p^absolute).
    pub fn zero(p: u64, absolute: i64) -> Self {
        Padic {
            prime: p,
            valuation: absolute,
            unit: 0,
            precision: 0,
        }
    }

    /// A zero that never limits the precision of sums it enters.
    pub fn exact_zero(p: u64) -> Self {
        Self::zero(p, EXACT_ZERO)
    }

    /// True for zeros created by `exact_zero` (or products of them).
    pub fn is_exact_zero(&self) -> bool {
        self.is_zero() && self.valuation >= EXACT_ZERO
    }

    pub fn one(p: u64, precision: u32) -> Self {
        Self::from_int(p, 1, precision)
    }

    /// An integer carried at the largest precision the representation allows.
    pub fn exact(p: u64, n: i64) -> Self {
        Self::from_int(p, n, max_precision(p))
    }

    pub fn from_int(p: u64, n: i64, precision: u32) -> Self {
        Self::from_i128(p, n as i128, precision)
    }

    pub fn from_i128(p: u64, n: i128, precision: u32) -> Self {
        let precision = min(precision, max_precision(p));
        if n == 0 {
            return Self::zero(p, precision as i64);
        }
        let mut magnitude = n.unsigned_abs();
        let mut valuation = 0i64;
        while magnitude.is_multiple_of(p as u128) {
            magnitude /= p as u128;
            valuation += 1;
        }
        if precision == 0 {
            return Self::zero(p, valuation);
        }
        let m = ppow(p, precision);
        let mut unit = (magnitude % m as u128) as u64;
        if n < 0 {
            unit = m - unit;
        }
        Padic {
            prime: p,
            valuation,
            unit,
            precision,
        }
    }

    pub fn from_bigint(p: u64, n: &BigInt, precision: u32) -> Self {
        if let Some(small) = n.to_i128() {
            return Self::from_i128(p, small, precision);
        }
        let precision = min(precision, max_precision(p));
        let bp = BigInt::from(p);
        let mut m = n.clone();
        let mut valuation = 0i64;
        loop {
            let (q, r) = m.div_rem(&bp);
            if !r.is_zero() {
                break;
            }
            m = q;
            valuation += 1;
        }
        if precision == 0 {
            return Self::zero(p, valuation);
        }
        let modulus = BigInt::from(ppow(p, precision));
        let unit = m.mod_floor(&modulus).to_u64().expect("residue fits");
        Padic {
            prime: p,
            valuation,
            unit,
            precision,
        }
    }

    /// Image of a rational number, with `precision` relative digits.
    pub fn from_ratio(p: u64, q: &BigRational, precision: u32) -> Self {
        if q.is_zero() {
            return Self::zero(p, min(precision, max_precision(p)) as i64);
        }
        let num = Self::from_bigint(p, q.numer(), precision);
        let den = Self::from_bigint(p, q.denom(), precision);
        num.checked_div(&den).expect("nonzero denominator")
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    /// `None` for an element indistinguishable from zero.
    pub fn valuation(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.valuation)
        }
    }

    /// Lower bound for the valuation: the valuation itself, or the absolute
    /// precision for zero.
    pub fn valuation_bound(&self) -> i64 {
        self.valuation
    }

    pub fn absolute_precision(&self) -> i64 {
        self.valuation + self.precision as i64
    }

    pub fn relative_precision(&self) -> u32 {
        self.precision
    }

    pub fn unit_part(&self) -> u64 {
        self.unit
    }

    pub fn is_zero(&self) -> bool {
        self.precision == 0
    }

    pub fn is_unit(&self) -> bool {
        !self.is_zero() && self.valuation == 0
    }

    pub fn is_integral(&self) -> bool {
        self.valuation >= 0
    }

    fn same_prime(&self, other: &Padic) -> Result<(), PadicError> {
        if self.prime == other.prime {
            Ok(())
        } else {
            Err(PadicError::PrimeMismatch(self.prime, other.prime))
        }
    }

    /// Drop digits so that at most `precision` relative digits remain.
    pub fn with_relative_precision(&self, precision: u32) -> Padic {
        if self.is_zero() || precision >= self.precision {
            return self.clone();
        }
        if precision == 0 {
            return Self::zero(self.prime, self.valuation);
        }
        Padic {
            unit: self.unit % ppow(self.prime, precision),
            precision,
            ..self.clone()
        }
    }

    /// Drop digits beyond p^absolute.
    pub fn with_absolute_precision(&self, absolute: i64) -> Padic {
        if absolute >= self.absolute_precision() {
            return self.clone();
        }
        if self.is_zero() || absolute <= self.valuation {
            return Self::zero(self.prime, absolute);
        }
        self.with_relative_precision((absolute - self.valuation) as u32)
    }

    fn shifted_residue(&self, base: i64, k: u32, m: u64) -> u64 {
        if self.is_zero() {
            return 0;
        }
        let shift = self.valuation - base;
        if shift >= k as i64 {
            return 0;
        }
        mulmod(self.unit % m, ppow(self.prime, shift as u32), m)
    }

    pub fn checked_add(&self, other: &Padic) -> Result<Padic, PadicError> {
        self.same_prime(other)?;
        let p = self.prime;
        let absolute = min(self.absolute_precision(), other.absolute_precision());
        let base = min(self.valuation, other.valuation);
        if absolute <= base {
            return Ok(Self::zero(p, absolute));
        }
        let k = (absolute - base) as u32;
        let m = ppow(p, k);
        let a = self.shifted_residue(base, k, m) as u128;
        let b = other.shifted_residue(base, k, m) as u128;
        Ok(normalize(p, base, ((a + b) % m as u128) as u64, k))
    }

    pub fn checked_sub(&self, other: &Padic) -> Result<Padic, PadicError> {
        self.checked_add(&other.negate())
    }

    pub fn negate(&self) -> Padic {
        if self.is_zero() {
            return self.clone();
        }
        Padic {
            unit: ppow(self.prime, self.precision) - self.unit,
            ..self.clone()
        }
    }

    pub fn checked_mul(&self, other: &Padic) -> Result<Padic, PadicError> {
        self.same_prime(other)?;
        let p = self.prime;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(p, self.valuation + other.valuation));
        }
        let k = min(self.precision, other.precision);
        let m = ppow(p, k);
        Ok(Padic {
            prime: p,
            valuation: self.valuation + other.valuation,
            unit: mulmod(self.unit % m, other.unit % m, m),
            precision: k,
        })
    }

    pub fn checked_div(&self, other: &Padic) -> Result<Padic, PadicError> {
        self.same_prime(other)?;
        if other.is_zero() {
            return Err(PadicError::DivisionByZero);
        }
        let p = self.prime;
        if self.is_zero() {
            return Ok(Self::zero(p, self.valuation - other.valuation));
        }
        let k = min(self.precision, other.precision);
        let m = ppow(p, k);
        Ok(Padic {
            prime: p,
            valuation: self.valuation - other.valuation,
            unit: mulmod(self.unit % m, invmod(other.unit % m, m), m),
            precision: k,
        })
    }

    pub fn inverse(&self) -> Result<Padic, PadicError> {
        Padic::exact(self.prime, 1).checked_div(self)
    }

    pub fn pow(&self, e: i64) -> Result<Padic, PadicError> {
        if e < 0 {
            return self.inverse()?.pow(-e);
        }
        let mut result = Padic::exact(self.prime, 1);
        let mut base = self.clone();
        let mut e = e as u64;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        Ok(result)
    }

    /// Multiply by `p^k`.
    pub fn shift(&self, k: i64) -> Padic {
        Padic {
            valuation: self.valuation + k,
            ..self.clone()
        }
    }

    /// Equality up to the precision of both operands.
    pub fn approx_eq(&self, other: &Padic) -> bool {
        match self.checked_sub(other) {
            Ok(d) => d.is_zero(),
            Err(_) => false,
        }
    }

    /// The integer in `[0, p^k)` congruent to this value.
    pub fn residue(&self, k: u32) -> Result<u64, PadicError> {
        if self.absolute_precision() < k as i64 {
            return Err(PadicError::InsufficientPrecision {
                available: self.absolute_precision(),
                requested: k as i64,
            });
        }
        if self.is_zero() || self.valuation >= k as i64 {
            return Ok(0);
        }
        if self.valuation < 0 {
            return Err(PadicError::NotIntegral);
        }
        let v = self.valuation as u32;
        let rest = ppow(self.prime, k - v);
        Ok((self.unit % rest) * ppow(self.prime, v))
    }

    /// The rational number `p^valuation * unit` (0 for zero elements).
    pub fn lift(&self) -> BigRational {
        if self.is_zero() {
            return BigRational::zero();
        }
        let unit = BigRational::from_integer(BigInt::from(self.unit));
        let p = BigRational::from_integer(BigInt::from(self.prime));
        let scale = if self.valuation >= 0 {
            num_traits::pow(p, self.valuation as usize)
        } else {
            BigRational::one() / num_traits::pow(p, (-self.valuation) as usize)
        };
        unit * scale
    }

    /// Symmetric-range integer lift of an integral value, used for display.
    pub fn signed_residue(&self, k: u32) -> Result<i128, PadicError> {
        let r = self.residue(k)? as i128;
        let m = ppow(self.prime, k) as i128;
        Ok(if r > m / 2 { r - m } else { r })
    }
}

impl fmt::Display for Padic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.prime;
        write!(
            f,
            "{p}^{} * {} mod {p}^{}",
            self.valuation, self.unit, self.precision
        )
    }
}

impl FromStr for Padic {
    type Err = PadicError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || PadicError::Parse(s.to_string());
        let (head, modulus) = s.split_once(" mod ").ok_or_else(bad)?;
        let (power, unit) = head.split_once(" * ").ok_or_else(bad)?;
        let (p1, valuation) = power.trim().split_once('^').ok_or_else(bad)?;
        let (p2, precision) = modulus.trim().split_once('^').ok_or_else(bad)?;
        let p: u64 = p1.parse().map_err(|_| bad())?;
        if p2.parse::<u64>().map_err(|_| bad())? != p || p < 3 {
            return Err(bad());
        }
        let valuation: i64 = valuation.parse().map_err(|_| bad())?;
        let unit: u64 = unit.trim().parse().map_err(|_| bad())?;
        let precision: u32 = precision.parse().map_err(|_| bad())?;
        if precision > max_precision(p) {
            return Err(bad());
        }
        if precision == 0 {
            if unit != 0 {
                return Err(bad());
            }
            return Ok(Padic::zero(p, valuation));
        }
        if unit.is_multiple_of(p) || unit >= ppow(p, precision) {
            return Err(bad());
        }
        Ok(Padic {
            prime: p,
            valuation,
            unit,
            precision,
        })
    }
}

impl Serialize for Padic {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Padic {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(D::Error::custom)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&Padic> for &Padic {
            type Output = Padic;
            fn $method(self, rhs: &Padic) -> Padic {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $trait<Padic> for Padic {
            type Output = Padic;
            fn $method(self, rhs: Padic) -> Padic {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Padic> for Padic {
            type Output = Padic;
            fn $method(self, rhs: &Padic) -> Padic {
                (&self).$method(rhs)
            }
        }
        impl $trait<Padic> for &Padic {
            type Output = Padic;
            fn $method(self, rhs: Padic) -> Padic {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);
forward_binop!(Div, div, checked_div);

impl Neg for &Padic {
    type Output = Padic;
    fn neg(self) -> Padic {
        self.negate()
    }
}

impl Neg for Padic {
    type Output = Padic;
    fn neg(self) -> Padic {
        self.negate()
    }
}
