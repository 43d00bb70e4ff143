use num_bigint::BigInt;

use crate::error::PadicError;
use crate::number::{max_precision, Padic};

fn ilog(p: u64, n: u64) -> i64 {
    let mut k = 0;
    let mut m = n;
    while m >= p {
        m /= p;
        k += 1;
    }
    k
}

/// Iwasawa logarithm (log p = 0).  Units congruent to 1 use the power
/// series; other units go through u^(p-1); a general nonzero value drops
/// its power of p first.
pub fn log(x: &Padic) -> Result<Padic, PadicError> {
    if x.is_zero() {
        return Err(PadicError::PrecisionZero);
    }
    let p = x.prime();
    let unit = x.shift(-x.valuation_bound());
    if unit.residue(1)? == 1 {
        return log_one_unit(&unit);
    }
    let lifted = unit.pow(p as i64 - 1)?;
    let l = log_one_unit(&lifted)?;
    l.checked_div(&Padic::exact(p, p as i64 - 1))
}

fn log_one_unit(x: &Padic) -> Result<Padic, PadicError> {
    let p = x.prime();
    let target = x.absolute_precision();
    let y = x - Padic::exact(p, 1);
    if y.is_zero() {
        return Ok(Padic::zero(p, target));
    }
    let vy = y.valuation_bound();
    let mut sum = Padic::zero(p, target);
    let mut power = y.clone();
    let mut n: u64 = 1;
    while (n as i64) * vy - ilog(p, n) < target {
        let term = power.checked_div(&Padic::exact(p, n as i64))?;
        sum = if n % 2 == 1 { &sum + &term } else { &sum - &term };
        power = &power * &y;
        n += 1;
    }
    Ok(sum)
}

/// Exponential series; needs valuation at least 1.
pub fn exp(x: &Padic) -> Result<Padic, PadicError> {
    let p = x.prime();
    let v = x.valuation_bound();
    if v < 1 {
        return Err(PadicError::Domain(format!(
            "exp needs valuation >= 1, got {v}"
        )));
    }
    let target = x.absolute_precision().min(max_precision(p) as i64);
    let one = Padic::one(p, target as u32);
    if x.is_zero() {
        return Ok(one);
    }
    let mut sum = one.clone();
    let mut term = one;
    let mut n: i64 = 1;
    // term n has valuation >= n v - (n-1)/(p-1)
    while n * v * (p as i64 - 1) - (n - 1) < target * (p as i64 - 1) {
        term = (&term * x).checked_div(&Padic::exact(p, n))?;
        sum = &sum + &term;
        n += 1;
    }
    Ok(sum.with_absolute_precision(target))
}

/// Teichmuller representative: the (p-1)-st root of unity congruent to x.
pub fn teichmuller(x: &Padic) -> Result<Padic, PadicError> {
    if !x.is_unit() {
        return Err(PadicError::NotUnit);
    }
    let p = x.prime();
    let mut y = x.clone();
    for _ in 0..x.relative_precision() {
        y = y.pow(p as i64)?;
    }
    Ok(y)
}

/// `<x> = x / omega(x)`, the projection to 1 + pZ_p.
pub fn one_unit_part(x: &Padic) -> Result<Padic, PadicError> {
    x.checked_div(&teichmuller(x)?)
}

/// s (s-1) ... (s-j+1) / j!
pub fn binomial(s: &Padic, j: u64) -> Padic {
    let p = s.prime();
    let mut result = Padic::exact(p, 1);
    for i in 0..j {
        let factor = s - Padic::exact(p, i as i64);
        result = &result * &factor;
        result = result
            .checked_div(&Padic::exact(p, i as i64 + 1))
            .expect("nonzero integer");
    }
    result
}

/// (a-1)(a-2) ... (a-j)
pub fn pochhammer_shift(a: &Padic, j: u64) -> Padic {
    let p = a.prime();
    let mut result = Padic::exact(p, 1);
    for i in 0..j {
        result = &result * &(a - Padic::exact(p, 1 + i as i64));
    }
    result
}

/// n! as an exact p-adic integer.
pub fn factorial(p: u64, n: u64) -> Padic {
    let f: BigInt = (1..=n).map(BigInt::from).product();
    Padic::from_bigint(p, &f, max_precision(p))
}

/// Smallest primitive root modulo an odd prime.
pub fn primitive_root(p: u64) -> u64 {
    let phi = p - 1;
    let mut factors = Vec::new();
    let mut m = phi;
    let mut d = 2;
    while d * d <= m {
        if m.is_multiple_of(d) {
            factors.push(d);
            while m.is_multiple_of(d) {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        factors.push(m);
    }
    (2..p)
        .find(|&g| {
            factors
                .iter()
                .all(|&q| crate::number::powmod(g, phi / q, p) != 1)
        })
        .unwrap_or(1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    #[test]
    fn log_of_six_mod_125() {
        let l = log(&Padic::from_int(5, 6, 3)).unwrap();
        assert_eq!(l.residue(3).unwrap(), 55);
    }

    #[test]
    fn log_one_is_zero() {
        for p in [3, 5, 7, 11] {
            assert!(log(&Padic::one(p, 6)).unwrap().is_zero());
        }
    }

    #[test]
    fn exp_inverts_log() {
        let x = Padic::from_int(5, 6, 12);
        let back = exp(&log(&x).unwrap()).unwrap();
        assert!(back.approx_eq(&x));
        assert!(back.absolute_precision() >= 11);
    }

    #[test]
    fn exp_of_five_mod_125() {
        let e = exp(&Padic::from_int(5, 5, 3)).unwrap();
        assert_eq!(e.residue(3).unwrap(), 81);
    }

    #[test]
    fn exp_zero_and_domain() {
        assert!(exp(&Padic::zero(5, 6))
            .unwrap()
            .approx_eq(&Padic::one(5, 6)));
        assert!(matches!(
            exp(&Padic::from_int(5, 2, 6)),
            Err(PadicError::Domain(_))
        ));
    }

    #[test]
    fn exp_valuation_one_is_one_mod_p() {
        let e = exp(&Padic::from_int(3, 6, 8)).unwrap();
        assert_eq!(e.residue(1).unwrap(), 1);
    }

    #[test]
    fn log_is_additive() {
        let a = Padic::from_int(7, 8, 10);
        let b = Padic::from_int(7, 1 + 49 * 3, 10);
        let lhs = log(&(&a * &b)).unwrap();
        let rhs = &log(&a).unwrap() + &log(&b).unwrap();
        assert!(lhs.approx_eq(&rhs));
    }

    #[test]
    fn log_ignores_powers_of_p_and_roots_of_unity() {
        let two = Padic::from_int(5, 2, 8);
        let w = teichmuller(&two).unwrap();
        assert!(log(&w).unwrap().is_zero());
        let l = log(&Padic::from_int(5, 50, 8)).unwrap();
        assert!(l.approx_eq(&log(&two).unwrap()));
    }

    #[test]
    fn teichmuller_of_two() {
        let w = teichmuller(&Padic::from_int(5, 2, 2)).unwrap();
        assert_eq!(w.residue(2).unwrap(), 7);
        let w = teichmuller(&Padic::from_int(5, 2, 10)).unwrap();
        assert!(w.pow(4).unwrap().approx_eq(&Padic::one(5, 10)));
        assert_eq!(w.residue(1).unwrap(), 2);
        assert!(teichmuller(&Padic::from_int(5, 10, 4)).is_err());
    }

    #[test]
    fn unit_decomposes() {
        let x = Padic::from_int(11, 3, 8);
        let w = teichmuller(&x).unwrap();
        let rebuilt = &w * &exp(&log(&one_unit_part(&x).unwrap()).unwrap()).unwrap();
        assert!(rebuilt.approx_eq(&x));
    }

    #[test]
    fn binomial_values() {
        let s = Padic::exact(5, -1);
        assert!(binomial(&s, 2).approx_eq(&Padic::exact(5, 1)));
        assert!(binomial(&s, 0).approx_eq(&Padic::exact(5, 1)));
        let s = Padic::exact(5, 25);
        assert!(binomial(&s, 1).approx_eq(&s));
        let q = Padic::from_ratio(7, &BigRational::new(1.into(), 3.into()), 10);
        // (1/3)(-2/3)/2 = -1/9
        let expected = Padic::from_ratio(7, &BigRational::new((-1).into(), 9.into()), 10);
        assert!(binomial(&q, 2).approx_eq(&expected));
    }

    #[test]
    fn pochhammer_values() {
        let a = Padic::exact(5, 3);
        assert!(pochhammer_shift(&a, 0).approx_eq(&Padic::exact(5, 1)));
        assert!(pochhammer_shift(&a, 2).approx_eq(&Padic::exact(5, 2)));
        let k = Padic::exact(5, 4);
        assert!(pochhammer_shift(&(&k + Padic::exact(5, 1)), 1).approx_eq(&k));
    }

    #[test]
    fn primitive_roots() {
        assert_eq!(primitive_root(5), 2);
        assert_eq!(primitive_root(7), 3);
        assert_eq!(primitive_root(13), 2);
    }
}
