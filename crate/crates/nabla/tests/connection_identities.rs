use cmlp_nabla::{
    check_coleman, check_commutation, nabla_nu, nabla_nu_auto, nabla_steps, WSection,
};
use cmlp_padic::Padic;
use cmlp_qexp::{deplete, QExpansion};
use cmlp_weights::Weight;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_series(p: u64, m: u32, n: usize, rng: &mut ChaCha8Rng) -> QExpansion {
    let ints: Vec<i64> = (0..=n).map(|_| rng.random_range(-1000..1000)).collect();
    QExpansion::from_integers(p, m, &ints)
}

fn leading_agree(a: &WSection, b: &WSection, upto: usize) -> bool {
    a.base() == b.base()
        && (0..=upto).all(|j| match (a.component(j), b.component(j)) {
            (Some(x), Some(y)) => x.approx_eq(y),
            (Some(x), None) | (None, Some(x)) => x.is_zero(),
            (None, None) => true,
        })
}

#[test]
fn steps_after_power_shift_the_exponent() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for p in [5u64, 7] {
        let f = deplete(&random_series(p, 6, 30, &mut rng));
        let k = Weight::classical(p, 2);
        let p2 = (p * p) as i64;
        for nu in [
            Weight::classical(p, -2),
            Weight::deformed(p, -1, Padic::from_int(p, 3 * p2, 6)),
            Weight::deformed(p, 0, Padic::from_int(p, -p2, 6)),
        ] {
            let (base, rep) = nabla_nu_auto(&f, &k, &nu).unwrap();
            for m in 1..=3usize {
                let stepped = nabla_steps(&base, m);
                let (direct, _) = nabla_nu(&f, &k, &nu.shift(m as i64), rep.degree).unwrap();
                assert!(
                    leading_agree(&stepped, &direct, rep.degree),
                    "p={p} nu={nu} m={m}"
                );
            }
        }
    }
}

#[test]
fn inverse_power_undone_by_steps() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let f = deplete(&random_series(5, 6, 40, &mut rng));
    let k = Weight::classical(5, 4);
    let (s, rep) = nabla_nu_auto(&f, &k, &Weight::classical(5, -2)).unwrap();
    let back = nabla_steps(&s, 2);
    assert!(leading_agree(
        &back,
        &WSection::concentrated(k.clone(), f.clone(), 0),
        rep.degree
    ));
}

#[test]
fn commutation_on_random_series() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for p in [5u64, 7, 11] {
        for _ in 0..4 {
            let f = random_series(p, 8, 3 * p as usize * 2, &mut rng);
            let r = check_commutation(&f, &Weight::classical(p, 6));
            assert!(r.passed(), "p={p}: {r:?}");
        }
    }
}

#[test]
fn coleman_primitives_on_random_series() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for p in [5u64, 7] {
        let h = deplete(&random_series(p, 10, 30, &mut rng));
        for r in 0..=4 {
            let c = check_coleman(&h, r).unwrap();
            assert!(c.passed(), "p={p} r={r}");
        }
    }
}

#[test]
fn primitive_top_component_is_scaled_inverse_theta() {
    use cmlp_qexp::theta_weight;
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let h = deplete(&random_series(7, 8, 30, &mut rng));
    let g = cmlp_nabla::coleman_primitive(&h, 2).unwrap();
    let expected = theta_weight(&h, &Weight::classical(7, -3), 0)
        .unwrap()
        .scale(&Padic::exact(7, 2));
    assert!(g.component(2).unwrap().approx_eq(&expected));
    let g0 = cmlp_nabla::coleman_primitive(&h, 0).unwrap();
    for n in 1..=30usize {
        if n % 7 != 0 {
            let a = h.coeff(n) / &Padic::exact(7, n as i64);
            assert!(g0.component(0).unwrap().coeff(n).approx_eq(&a));
        }
    }
}

#[test]
fn logs_of_simple_functions() {
    use cmlp_nabla::{coleman_log, LaurentSeries, Region};
    let p = 5;
    let z = |a: i64| Padic::from_int(p, a, 8);
    let t = LaurentSeries::new(p, 1, vec![z(1)]);
    let l = coleman_log(&t, Region::Annulus).unwrap();
    assert!(l.constant.is_zero() && l.residue == 1 && l.tail.is_zero());

    let g = LaurentSeries::new(p, 0, vec![z(1), z(5)]);
    let l = coleman_log(&g, Region::Disk).unwrap();
    assert_eq!(l.residue, 0);
    assert!(l.constant.is_zero());
    assert!(l.tail.coeff(1).approx_eq(&z(5)));
    let half = &Padic::exact(p, 2).inverse().unwrap() * &z(-25);
    assert!(l.tail.coeff(2).approx_eq(&half));
    assert!(l.tail.coeff(3).approx_eq(&(&z(125) / &Padic::exact(p, 3))));

    let u = z(7);
    let gu = g.scale(&u);
    let lu = coleman_log(&gu, Region::Disk).unwrap();
    assert!(lu.constant.approx_eq(&cmlp_padic::log(&u).unwrap()));
    assert!(lu.tail.approx_eq(&l.tail));
}
