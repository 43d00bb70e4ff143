use serde::{Deserialize, Serialize};

use crate::ValuationError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RadiusParams {
    pub prime: u64,
    pub classical: bool,
    pub r: u64,
    pub b: u64,
    /// b(p, r) = p(r - 1) is only established for p >= 5
    pub b_verified: bool,
    pub n_inert: u32,
    pub n_ramified: u32,
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

/// r_k(p), b_k(p) and the least n_k(p) with p^(n-1)(p+1) >= b (inert) and
/// 2 p^n >= b (ramified).
pub fn radius_params(classical: bool, p: u64) -> Result<RadiusParams, ValuationError> {
    if p == 2 || !is_prime(p) {
        return Err(ValuationError::BadPrime(p));
    }
    let r = match (classical, p) {
        (true, _) => p + 2,
        (false, 3) => 4 * p,
        (false, _) => 2 * p,
    };
    let b = p * (r - 1);
    let least = |reach: &dyn Fn(u32) -> u64| (1..).find(|&n| reach(n) >= b).expect("unbounded");
    Ok(RadiusParams {
        prime: p,
        classical,
        r,
        b,
        b_verified: p >= 5,
        n_inert: least(&|n| p.pow(n - 1) * (p + 1)),
        n_ramified: least(&|n| 2 * p.pow(n)),
    })
}
