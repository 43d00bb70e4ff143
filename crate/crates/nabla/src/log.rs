use std::collections::BTreeMap;

use cmlp_padic::{log, Padic};
use serde::{Deserialize, Serialize};

use crate::NablaError;

/// sum_{i} coeffs[i] t^(lowest + i).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LaurentSeries {
    pub prime: u64,
    pub lowest: i64,
    pub coeffs: Vec<Padic>,
}

impl LaurentSeries {
    pub fn new(prime: u64, lowest: i64, coeffs: Vec<Padic>) -> Self {
        LaurentSeries {
            prime,
            lowest,
            coeffs,
        }
    }

    pub fn zero(prime: u64) -> Self {
        LaurentSeries::new(prime, 0, Vec::new())
    }

    pub fn highest(&self) -> i64 {
        self.lowest + self.coeffs.len() as i64 - 1
    }

    pub fn coeff(&self, e: i64) -> Padic {
        let i = e - self.lowest;
        if i < 0 || i >= self.coeffs.len() as i64 {
            Padic::exact_zero(self.prime)
        } else {
            self.coeffs[i as usize].clone()
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Padic::is_zero)
    }

    fn from_map(prime: u64, map: BTreeMap<i64, Padic>) -> Self {
        let (Some(&lo), Some(&hi)) = (map.keys().next(), map.keys().next_back()) else {
            return Self::zero(prime);
        };
        let coeffs = (lo..=hi)
            .map(|e| {
                map.get(&e)
                    .cloned()
                    .unwrap_or_else(|| Padic::exact_zero(prime))
            })
            .collect();
        LaurentSeries::new(prime, lo, coeffs)
    }

    fn terms(&self) -> impl Iterator<Item = (i64, &Padic)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_exact_zero())
            .map(move |(i, c)| (self.lowest + i as i64, c))
    }

    /// Product, keeping exponents <= `cap` when given.
    pub fn mul(&self, other: &Self, cap: Option<i64>) -> Self {
        let mut map: BTreeMap<i64, Padic> = BTreeMap::new();
        for (e1, a) in self.terms() {
            for (e2, b) in other.terms() {
                let e = e1 + e2;
                if cap.is_some_and(|c| e > c) {
                    continue;
                }
                let prod = a * b;
                map.entry(e)
                    .and_modify(|x| *x = &*x + &prod)
                    .or_insert(prod);
            }
        }
        Self::from_map(self.prime, map)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut map: BTreeMap<i64, Padic> = BTreeMap::new();
        for (e, a) in self.terms().chain(other.terms()) {
            map.entry(e)
                .and_modify(|x| *x = &*x + a)
                .or_insert_with(|| a.clone());
        }
        Self::from_map(self.prime, map)
    }

    pub fn scale(&self, c: &Padic) -> Self {
        LaurentSeries::new(
            self.prime,
            self.lowest,
            self.coeffs.iter().map(|a| a * c).collect(),
        )
    }

    pub fn approx_eq(&self, other: &Self) -> bool {
        let lo = self.lowest.min(other.lowest);
        let hi = self.highest().max(other.highest());
        (lo..=hi).all(|e| self.coeff(e).approx_eq(&other.coeff(e)))
    }

    pub fn valuation_bound(&self) -> i64 {
        self.coeffs
            .iter()
            .map(Padic::valuation_bound)
            .min()
            .unwrap_or(i64::MAX)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Region {
    /// |t| <= 1: only nonnegative powers, dominant term constant
    Disk,
    /// |t| = 1: any single dominant monomial
    Annulus,
}

/// g = a t^n (1 + h) with |h| < 1, split into (log a, n, log(1 + h)).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColemanLog {
    pub constant: Padic,
    pub residue: i64,
    pub tail: LaurentSeries,
}

pub fn coleman_log(g: &LaurentSeries, region: Region) -> Result<ColemanLog, NablaError> {
    let p = g.prime;
    let units: Vec<(i64, &Padic)> = g
        .terms()
        .filter(|(_, c)| c.valuation_bound() <= 0)
        .collect();
    let (n, a) = match units.as_slice() {
        [(n, a)] if a.is_unit() => (*n, (*a).clone()),
        _ => {
            return Err(NablaError::NotUnitSeries(
                "no single dominant unit term".into(),
            ))
        }
    };
    if region == Region::Disk && n != 0 {
        return Err(NablaError::NotUnitSeries(format!(
            "dominant term t^{n} is not a unit on the disk"
        )));
    }
    if region == Region::Disk && g.lowest < 0 {
        return Err(NablaError::NotUnitSeries(
            "negative powers on a disk".into(),
        ));
    }
    let inv = a.inverse()?;
    let mut h_map: BTreeMap<i64, Padic> = BTreeMap::new();
    for (e, c) in g.terms() {
        if e != n {
            h_map.insert(e - n, c * &inv);
        }
    }
    let h = LaurentSeries::from_map(p, h_map);
    let target = g
        .coeffs
        .iter()
        .map(|c| c.absolute_precision())
        .min()
        .unwrap_or(0);
    let constant = log(&a)?;
    if h.is_zero() {
        return Ok(ColemanLog {
            constant,
            residue: n,
            tail: LaurentSeries::zero(p),
        });
    }
    let vh = h.valuation_bound();
    let mut tail = LaurentSeries::zero(p);
    let mut power = h.clone();
    let mut k: i64 = 1;
    // term k has valuation >= k vh - log_p k
    while k * vh - (k as f64).log(p as f64).floor() as i64 <= target {
        let term = power.scale(&Padic::exact(p, k).inverse()?);
        let term = if k % 2 == 1 {
            term
        } else {
            term.scale(&Padic::exact(p, -1))
        };
        tail = tail.add(&term);
        power = power.mul(&h, None);
        k += 1;
    }
    // dropped terms sit beyond the target, so nothing past it is known
    let tail = LaurentSeries::new(
        p,
        tail.lowest,
        tail.coeffs
            .iter()
            .map(|c| c.with_absolute_precision(target))
            .collect(),
    );
    Ok(ColemanLog {
        constant,
        residue: n,
        tail,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(p: u64, a: i64) -> Padic {
        Padic::from_int(p, a, 10)
    }

    #[test]
    fn log_of_constant() {
        let g = LaurentSeries::new(5, 0, vec![z(5, 6)]);
        let l = coleman_log(&g, Region::Disk).unwrap();
        assert!(l.constant.approx_eq(&log(&z(5, 6)).unwrap()));
        assert_eq!(l.residue, 0);
        assert!(l.tail.is_zero());
    }

    #[test]
    fn disk_series_matches_exp() {
        // g = exp(p t) truncated; log g = p t up to the truncation
        let p = 5;
        let top = 6;
        let coeffs: Vec<Padic> = (0..=top)
            .map(|i| {
                let num = Padic::exact(p, p as i64).pow(i).unwrap();
                &num / &cmlp_padic::factorial(p, i as u64)
            })
            .map(|c| c.with_absolute_precision(10))
            .collect();
        let g = LaurentSeries::new(p, 0, coeffs);
        let l = coleman_log(&g, Region::Disk).unwrap();
        assert!(l.constant.is_zero());
        assert!(l.tail.coeff(1).approx_eq(&z(p, p as i64)));
        // higher coefficients vanish up to the precision lost in 1/i!
        for e in 2..=top {
            assert!(l.tail.coeff(e).valuation_bound() >= 5, "e={e}");
        }
    }

    #[test]
    fn annulus_residue_and_additivity() {
        let p = 7;
        // g = 3 t^2 (1 + 7 t^{-1}) = 3 t^2 + 21 t
        let g = LaurentSeries::new(p, 1, vec![z(p, 21), z(p, 3)]);
        let l = coleman_log(&g, Region::Annulus).unwrap();
        assert_eq!(l.residue, 2);
        // log(g^2) = 2 log g
        let g2 = g.mul(&g, None);
        let l2 = coleman_log(&g2, Region::Annulus).unwrap();
        assert_eq!(l2.residue, 4);
        assert!(l2.constant.approx_eq(&(&l.constant * &Padic::exact(p, 2))));
        let twice = l.tail.scale(&Padic::exact(p, 2));
        assert!(l2.tail.approx_eq(&twice));
    }

    #[test]
    fn disk_rejects_shifted_unit() {
        let g = LaurentSeries::new(5, 0, vec![z(5, 5), z(5, 1)]);
        assert!(matches!(
            coleman_log(&g, Region::Disk),
            Err(NablaError::NotUnitSeries(_))
        ));
        assert!(coleman_log(&g, Region::Annulus).is_ok());
    }

    #[test]
    fn two_units_rejected() {
        let g = LaurentSeries::new(5, 0, vec![z(5, 1), z(5, 1)]);
        assert!(coleman_log(&g, Region::Annulus).is_err());
    }
}
