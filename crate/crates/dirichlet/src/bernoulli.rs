use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

fn binomial(n: u32, k: u32) -> BigInt {
    let mut b = BigInt::one();
    for i in 0..k {
        b = b * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    b
}

/// Bernoulli numbers with B_1 = -1/2.
pub fn bernoulli_number(k: u32) -> BigRational {
    static CACHE: OnceLock<Mutex<HashMap<u32, BigRational>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(b) = cache.lock().expect("cache").get(&k) {
        return b.clone();
    }
    let b = if k == 0 {
        BigRational::one()
    } else {
        // sum_{i<=k} C(k+1, i) B_i = 0
        let mut acc = BigRational::zero();
        for i in 0..k {
            acc += BigRational::from_integer(binomial(k + 1, i)) * bernoulli_number(i);
        }
        -acc / BigRational::from_integer(BigInt::from(k + 1))
    };
    cache.lock().expect("cache").insert(k, b.clone());
    b
}

/// Coefficients of B_k(x), constant term first.
pub fn bernoulli_poly(k: u32) -> Vec<BigRational> {
    (0..=k)
        .map(|i| BigRational::from_integer(binomial(k, i)) * bernoulli_number(k - i))
        .collect()
}

pub(crate) fn eval_poly(poly: &[BigRational], x: &BigRational) -> BigRational {
    poly.iter()
        .rev()
        .fold(BigRational::zero(), |acc, c| acc * x + c)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn first_numbers() {
        assert_eq!(bernoulli_number(1), q(-1, 2));
        assert_eq!(bernoulli_number(2), q(1, 6));
        assert_eq!(bernoulli_number(3), q(0, 1));
        assert_eq!(bernoulli_number(4), q(-1, 30));
        assert_eq!(bernoulli_number(12), q(-691, 2730));
    }

    #[test]
    fn polynomial_identity() {
        // B_k(x+1) - B_k(x) = k x^(k-1)
        for k in 1..8u32 {
            let p = bernoulli_poly(k);
            for x in [q(0, 1), q(1, 3), q(-2, 5)] {
                let d = eval_poly(&p, &(&x + q(1, 1))) - eval_poly(&p, &x);
                let mut rhs = q(k as i64, 1);
                for _ in 0..k - 1 {
                    rhs *= &x;
                }
                assert_eq!(d, rhs);
            }
        }
    }
}
