//! Continuous characters of Z_p^* of the shape
//! t -> omega(t)^a <t>^(m + u), stored as the torsion exponent a mod p-1,
//! an integer m and an optional p-adic deformation u.

use std::fmt;
use std::str::FromStr;

use cmlp_padic::{exp, log, teichmuller, Padic, PadicError};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WeightError {
    #[error("prime mismatch: {0} vs {1}")]
    PrimeMismatch(u64, u64),
    #[error("weights are evaluated on units only")]
    NotUnit,
    #[error(transparent)]
    Padic(#[from] PadicError),
    #[error("cannot parse weight: {0}")]
    Parse(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Weight {
    prime: u64,
    torsion: u64,
    integer: i64,
    deformation: Option<Padic>,
}

impl Weight {
    /// t -> t^m.
    pub fn classical(prime: u64, m: i64) -> Self {
        Weight {
            prime,
            torsion: m.rem_euclid(prime as i64 - 1) as u64,
            integer: m,
            deformation: None,
        }
    }

    pub fn trivial(prime: u64) -> Self {
        Self::classical(prime, 0)
    }

    /// t -> omega(t)^torsion <t>^(integer + deformation).
    pub fn new(prime: u64, torsion: i64, integer: i64, deformation: Option<Padic>) -> Self {
        if let Some(d) = &deformation {
            assert_eq!(d.prime(), prime, "deformation over the wrong prime");
        }
        Weight {
            prime,
            torsion: torsion.rem_euclid(prime as i64 - 1) as u64,
            integer,
            deformation,
        }
    }

    /// A classical weight moved by a p-adic amount in the analytic direction.
    pub fn deformed(prime: u64, m: i64, deformation: Padic) -> Self {
        Self::new(prime, m, m, Some(deformation))
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn torsion(&self) -> u64 {
        self.torsion
    }

    pub fn integer_part(&self) -> i64 {
        self.integer
    }

    pub fn deformation(&self) -> Option<&Padic> {
        self.deformation.as_ref()
    }

    /// `Some(m)` when the weight is t -> t^m.
    pub fn as_classical(&self) -> Option<i64> {
        let torsion_ok =
            self.integer.rem_euclid(self.prime as i64 - 1) as u64 == self.torsion;
        match &self.deformation {
            None if torsion_ok => Some(self.integer),
            _ => None,
        }
    }

    pub fn is_classical(&self) -> bool {
        self.as_classical().is_some()
    }

    /// m + u as a p-adic number.
    pub fn analytic(&self) -> Padic {
        let m = Padic::exact(self.prime, self.integer);
        match &self.deformation {
            Some(d) => &m + d,
            None => m,
        }
    }

    fn same_prime(&self, other: &Weight) -> Result<(), WeightError> {
        if self.prime == other.prime {
            Ok(())
        } else {
            Err(WeightError::PrimeMismatch(self.prime, other.prime))
        }
    }

    /// Pointwise product of characters.
    pub fn checked_add(&self, other: &Weight) -> Result<Weight, WeightError> {
        self.same_prime(other)?;
        let deformation = match (&self.deformation, &other.deformation) {
            (None, None) => None,
            (Some(a), None) | (None, Some(a)) => Some(a.clone()),
            (Some(a), Some(b)) => Some(a + b),
        };
        Ok(Weight::new(
            self.prime,
            (self.torsion + other.torsion) as i64,
            self.integer + other.integer,
            deformation,
        ))
    }

    /// The n-th power of the character.
    pub fn scale(&self, n: i64) -> Weight {
        Weight::new(
            self.prime,
            self.torsion as i64 * n,
            self.integer * n,
            self.deformation
                .as_ref()
                .map(|d| d * &Padic::exact(self.prime, n)),
        )
    }

    /// Shift the integer part (and torsion with it) by m, i.e. multiply by t^m.
    pub fn shift(&self, m: i64) -> Weight {
        Weight::new(
            self.prime,
            self.torsion as i64 + m,
            self.integer + m,
            self.deformation.clone(),
        )
    }

    pub fn negate(&self) -> Weight {
        self.scale(-1)
    }
}

pub fn classical_embed(prime: u64, m: i64) -> Weight {
    Weight::classical(prime, m)
}

/// k + 2 nu.
pub fn weight_combine(k: &Weight, nu: &Weight) -> Result<Weight, WeightError> {
    k.checked_add(&nu.scale(2))
}

/// w(t) for a unit t.
pub fn weight_eval(w: &Weight, t: &Padic) -> Result<Padic, WeightError> {
    if t.prime() != w.prime {
        return Err(WeightError::PrimeMismatch(w.prime, t.prime()));
    }
    if !t.is_unit() {
        return Err(WeightError::NotUnit);
    }
    if let Some(m) = w.as_classical() {
        return Ok(t.pow(m)?);
    }
    let omega = teichmuller(t)?;
    let torsion = omega.pow(w.torsion as i64)?;
    let exponent = &w.analytic() * &log(t)?;
    Ok(&torsion * &exp(&exponent)?)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AssumptionFailure {
    PrimeMismatch,
    /// the torsion part of k is not a square character
    TorsionNotEven,
    /// the deformation of k is not divisible by p
    DeformationNotInP,
    /// the deformation of nu is not divisible by p^2
    ShiftNotInPSquared,
}

impl fmt::Display for AssumptionFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text = match self {
            AssumptionFailure::PrimeMismatch => "weights over different primes",
            AssumptionFailure::TorsionNotEven => "χ' even",
            AssumptionFailure::DeformationNotInP => "u ∉ pR",
            AssumptionFailure::ShiftNotInPSquared => "s ∉ p^2R",
        };
        f.write_str(text)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AssumptionReport {
    pub failures: Vec<AssumptionFailure>,
}

impl AssumptionReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for AssumptionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            return f.write_str("ok");
        }
        let reasons: Vec<String> = self.failures.iter().map(|x| x.to_string()).collect();
        write!(f, "failed: {}", reasons.join(", "))
    }
}

fn divisible(x: Option<&Padic>, e: i64) -> bool {
    x.is_none_or(|d| d.valuation_bound() >= e)
}

/// Conditions under which the interpolated connection is defined: k has
/// even torsion and deformation in pZ_p, nu has deformation in p^2 Z_p.
pub fn check_assumption(k: &Weight, nu: &Weight) -> AssumptionReport {
    let mut failures = Vec::new();
    if k.prime != nu.prime {
        failures.push(AssumptionFailure::PrimeMismatch);
    }
    if !k.torsion.is_multiple_of(2) {
        failures.push(AssumptionFailure::TorsionNotEven);
    }
    if !divisible(k.deformation(), 1) {
        failures.push(AssumptionFailure::DeformationNotInP);
    }
    if !divisible(nu.deformation(), 2) {
        failures.push(AssumptionFailure::ShiftNotInPSquared);
    }
    AssumptionReport { failures }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} mod {}; {}", self.torsion, self.prime - 1, self.integer)?;
        if let Some(d) = &self.deformation {
            write!(f, " + {d}")?;
        }
        f.write_str(")")
    }
}

impl FromStr for Weight {
    type Err = WeightError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || WeightError::Parse(s.to_string());
        let inner = s
            .trim()
            .strip_prefix('(')
            .and_then(|x| x.strip_suffix(')'))
            .ok_or_else(bad)?;
        let (torsion_part, analytic_part) = inner.split_once(';').ok_or_else(bad)?;
        let (torsion, modulus) = torsion_part.split_once(" mod ").ok_or_else(bad)?;
        let torsion: i64 = torsion.trim().parse().map_err(|_| bad())?;
        let modulus: u64 = modulus.trim().parse().map_err(|_| bad())?;
        let prime = modulus + 1;
        let analytic_part = analytic_part.trim();
        let (integer, deformation) = match analytic_part.split_once(" + ") {
            Some((m, d)) => {
                let d: Padic = d.parse().map_err(|_| bad())?;
                if d.prime() != prime {
                    return Err(bad());
                }
                (m, Some(d))
            }
            None => (analytic_part, None),
        };
        let integer: i64 = integer.trim().parse().map_err(|_| bad())?;
        Ok(Weight::new(prime, torsion, integer, deformation))
    }
}

impl Serialize for Weight {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Weight {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        String::deserialize(deserializer)?
            .parse()
            .map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const M: u32 = 10;

    #[test]
    fn classical_cube() {
        let w = classical_embed(5, 3);
        let v = weight_eval(&w, &Padic::from_int(5, 2, 3)).unwrap();
        assert_eq!(v.residue(3).unwrap(), 8);
    }

    #[test]
    fn trivial_weight_is_constant() {
        let w = Weight::new(5, 0, 0, Some(Padic::zero(5, 8)));
        let v = weight_eval(&w, &Padic::from_int(5, 7, M)).unwrap();
        assert!(v.approx_eq(&Padic::one(5, M)));
    }

    #[test]
    fn four_at_three() {
        let v = weight_eval(&classical_embed(7, 4), &Padic::from_int(7, 3, M)).unwrap();
        assert!(v.approx_eq(&Padic::from_int(7, 81, M)));
    }

    #[test]
    fn negative_classical() {
        let w = classical_embed(5, -1);
        assert_eq!(w.torsion(), 3);
        let v = weight_eval(&w, &Padic::from_int(5, 2, M)).unwrap();
        assert!((&v * &Padic::exact(5, 2)).approx_eq(&Padic::one(5, M)));
    }

    #[test]
    fn combine_classical() {
        let k = classical_embed(5, 2);
        let nu = classical_embed(5, 1);
        assert_eq!(weight_combine(&k, &nu).unwrap(), classical_embed(5, 4));
        assert_eq!(weight_combine(&k, &Weight::trivial(5)).unwrap(), k);
    }

    #[test]
    fn deformed_weight_evaluates_through_log() {
        // u = 100 is divisible by p-1, so 3 + u is again classical
        let w = Weight::deformed(5, 3, Padic::exact(5, 100));
        let t = Padic::from_int(5, 2, M);
        let lhs = weight_eval(&w, &t).unwrap();
        let rhs = t.pow(103).unwrap();
        assert!(lhs.approx_eq(&rhs), "{lhs} vs {rhs}");
    }

    #[test]
    fn assumption_passes_for_classical_data() {
        let k = classical_embed(5, 4);
        let nu = Weight::deformed(5, 2, Padic::exact(5, 50));
        assert!(check_assumption(&k, &nu).passed());
    }

    #[test]
    fn assumption_failures() {
        let k = classical_embed(5, 4);
        let nu = Weight::new(5, 0, 0, Some(Padic::exact(5, 5)));
        let report = check_assumption(&k, &nu);
        assert_eq!(report.failures, vec![AssumptionFailure::ShiftNotInPSquared]);
        assert_eq!(report.to_string(), "failed: s ∉ p^2R");
        let odd = classical_embed(5, 3);
        let report = check_assumption(&odd, &Weight::trivial(5));
        assert_eq!(report.failures, vec![AssumptionFailure::TorsionNotEven]);
        assert_eq!(report.failures[0].to_string(), "χ' even");
        let k = Weight::new(7, 2, 2, Some(Padic::exact(7, 3)));
        assert_eq!(
            check_assumption(&k, &Weight::trivial(7)).failures,
            vec![AssumptionFailure::DeformationNotInP]
        );
    }

    #[test]
    fn text_round_trip() {
        for w in [
            classical_embed(7, -3),
            Weight::deformed(5, 2, Padic::from_int(5, 75, 8)),
            Weight::new(11, 3, 0, Some(Padic::from_int(11, 11, 4))),
        ] {
            let s = w.to_string();
            assert_eq!(s.parse::<Weight>().unwrap(), w, "{s}");
        }
        assert_eq!(classical_embed(5, 6).to_string(), "(2 mod 4; 6)");
    }
}
