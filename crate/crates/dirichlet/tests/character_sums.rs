use cmlp_dirichlet::{
    bernoulli_poly, char_table, gauss_sum, gen_bernoulli, l_value, DirichletChar,
};
use cmlp_padic::CycloRational;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

fn poly_at(poly: &[BigRational], x: &BigRational) -> BigRational {
    poly.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
}

#[test]
fn nontrivial_characters_sum_to_zero() {
    for n in 1..=30u64 {
        for chi in char_table(n) {
            let order = chi.order();
            let sum = (0..n as i64)
                .map(|a| chi.value_cyclo(a, order))
                .fold(CycloRational::integer(order, 0), |acc, x| acc.add(&x));
            if chi.is_trivial() {
                let phi = chi.group().order() as i64;
                assert_eq!(sum.as_constant(), Some(rat(phi)));
            } else {
                assert!(sum.is_zero(), "n={n} {chi:?}");
            }
        }
    }
}

#[test]
fn table_has_phi_distinct_homomorphisms() {
    for n in 1..=40u64 {
        let table = char_table(n);
        let group = table[0].group();
        assert_eq!(table.len() as u64, group.order());
        for chi in &table {
            for &a in group.elements() {
                for &b in group.elements() {
                    let ab = chi.value((a * b) as i64).unwrap();
                    let prod = chi.value(a as i64).unwrap().mul(&chi.value(b as i64).unwrap());
                    assert_eq!(ab, prod);
                }
            }
        }
        for (i, x) in table.iter().enumerate() {
            for y in &table[i + 1..] {
                assert_ne!(x, y);
            }
        }
    }
}

/// Primitive characters: compare with f^(k-1) sum_{a=1}^{f} chi(a) B_k(a/f)
/// evaluated term by term; imprimitive ones pick up Euler factors
/// prod_{l | N, l not | f} (1 - chi_f(l) l^(k-1)).
#[test]
fn bernoulli_matches_finite_sum_and_euler_factors() {
    for n in 1..=24u64 {
        for chi in char_table(n) {
            let prim = chi.primitive();
            let f = prim.modulus();
            let order = chi.order().max(1);
            for k in 1..=5u32 {
                let poly = bernoulli_poly(k);
                let scale = rat(f as i64).pow(k as i32 - 1);
                let mut oracle = CycloRational::integer(order, 0);
                for a in 1..=f {
                    let x = BigRational::new(BigInt::from(a), BigInt::from(f));
                    let term = prim.value_cyclo(a as i64, order).scale(&(&scale * poly_at(&poly, &x)));
                    oracle = oracle.add(&term);
                }
                assert_eq!(gen_bernoulli(&prim, k), oracle, "f={f} k={k}");
                let mut expected = oracle;
                for l in 2..=n {
                    let is_prime = (2..l).all(|d| l % d != 0);
                    if is_prime && n % l == 0 && f % l != 0 {
                        let chil = prim.value_cyclo(l as i64, order).scale(&rat(l as i64).pow(k as i32 - 1));
                        expected = expected.mul(&CycloRational::integer(order, 1).sub(&chil));
                    }
                }
                assert_eq!(gen_bernoulli(&chi, k), expected, "n={n} k={k}");
            }
        }
    }
}

#[test]
fn classical_special_values() {
    let triv = DirichletChar::trivial(1);
    let expected = [
        (2u32, BigRational::new((-1).into(), 12.into())),
        (4, BigRational::new(1.into(), 120.into())),
        (6, BigRational::new((-1).into(), 252.into())),
    ];
    for (k, v) in expected {
        assert_eq!(l_value(&triv, k).as_constant(), Some(v));
    }
    // L(0, chi_{-3}) = 1/3
    let chi3 = DirichletChar::quadratic(3);
    assert_eq!(l_value(&chi3, 1).as_constant(), Some(BigRational::new(1.into(), 3.into())));
}

#[test]
fn gauss_sum_norms() {
    for n in 1..=12u64 {
        for chi in char_table(n).into_iter().filter(|c| c.is_primitive()) {
            let s = gauss_sum(&chi).unwrap();
            let sbar = gauss_sum(&chi.conjugate()).unwrap();
            let sign = if chi.is_even() { 1 } else { -1 };
            assert_eq!(s.mul(&sbar).as_constant(), Some(rat(sign * n as i64)), "n={n}");
        }
    }
}

#[test]
fn conductor_matches_brute_force() {
    for n in 1..=36u64 {
        for chi in char_table(n) {
            let brute = (1..=n)
                .filter(|f| n % f == 0)
                .find(|&f| {
                    (1..n).all(|a| {
                        let b = (1..n).find(|&b| b % f == a % f && num_integer::gcd(b, n) == 1);
                        match (chi.value(a as i64), b) {
                            (Some(va), Some(b)) => chi.value(b as i64) == Some(va),
                            _ => true,
                        }
                    })
                })
                .unwrap();
            assert_eq!(chi.conductor(), brute, "n={n}");
        }
    }
}
