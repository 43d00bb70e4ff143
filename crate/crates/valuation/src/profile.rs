use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::radius::{is_prime, RadiusParams};
use crate::{ValuationError, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LocalCase {
    Inert,
    Ramified,
}

impl fmt::Display for LocalCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LocalCase::Inert => "inert",
            LocalCase::Ramified => "ramified",
        })
    }
}

impl FromStr for LocalCase {
    type Err = ValuationError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "inert" => Ok(LocalCase::Inert),
            "ramified" => Ok(LocalCase::Ramified),
            other => Err(ValuationError::BadCase(other.to_string())),
        }
    }
}

/// Valuations attached to the n-th curve of the canonical tower.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValProfile {
    pub prime: u64,
    pub case: LocalCase,
    pub level: u32,
    /// v_p(Hdg(E^(n)))
    pub hdg: Q,
    /// v_p(delta) with delta^(p-1) = Hdg
    pub delta: Q,
    /// v_p(Omega_{p,n})
    pub period: Q,
}

pub fn canonical_valuations(p: u64, case: LocalCase, n: u32) -> Result<ValProfile, ValuationError> {
    if p == 2 || !is_prime(p) {
        return Err(ValuationError::BadPrime(p));
    }
    if n == 0 {
        return Err(ValuationError::BadLevel);
    }
    let pi = p as i128;
    let hdg = match case {
        LocalCase::Inert => Q::new(1, pi.pow(n - 1) * (pi + 1)),
        LocalCase::Ramified => Q::new(1, 2 * pi.pow(n)),
    };
    let delta = hdg / (pi - 1);
    Ok(ValProfile {
        prime: p,
        case,
        level: n,
        hdg,
        delta,
        period: delta,
    })
}

pub fn csv_header() -> &'static str {
    "p,case,n,hdg,period,r,b,n_k"
}

pub fn csv_row(profile: &ValProfile, radius: &RadiusParams) -> String {
    let n_k = match profile.case {
        LocalCase::Inert => radius.n_inert,
        LocalCase::Ramified => radius.n_ramified,
    };
    format!(
        "{},{},{},{},{},{},{},{}",
        profile.prime, profile.case, profile.level, profile.hdg, profile.period, radius.r,
        radius.b, n_k
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let a = canonical_valuations(5, LocalCase::Inert, 2).unwrap();
        assert_eq!((a.hdg, a.period), (Q::new(1, 30), Q::new(1, 120)));
        let b = canonical_valuations(5, LocalCase::Ramified, 2).unwrap();
        assert_eq!((b.hdg, b.period), (Q::new(1, 50), Q::new(1, 200)));
        // n = 1 inert: 1/(p+1); the base curve itself sits at p/(p+1)
        assert_eq!(canonical_valuations(3, LocalCase::Inert, 1).unwrap().hdg, Q::new(1, 4));
    }

    #[test]
    fn rejects() {
        assert_eq!(
            canonical_valuations(2, LocalCase::Inert, 1),
            Err(ValuationError::BadPrime(2))
        );
        assert_eq!(
            canonical_valuations(9, LocalCase::Inert, 1),
            Err(ValuationError::BadPrime(9))
        );
        assert_eq!(
            canonical_valuations(5, LocalCase::Inert, 0),
            Err(ValuationError::BadLevel)
        );
        assert!("split".parse::<LocalCase>().is_err());
    }

    #[test]
    fn strictly_decreasing_and_bounded() {
        for p in [3, 5, 7, 11, 13] {
            for case in [LocalCase::Inert, LocalCase::Ramified] {
                let mut last = Q::new(1, 2);
                for n in 1..8 {
                    let v = canonical_valuations(p, case, n).unwrap();
                    assert!(v.hdg <= Q::new(1, 2) && v.hdg > Q::from(0));
                    assert!(v.hdg < last || (n == 1 && v.hdg == last));
                    assert_eq!(v.period * (p as i128 - 1), v.hdg);
                    last = v.hdg;
                }
            }
        }
    }
}
