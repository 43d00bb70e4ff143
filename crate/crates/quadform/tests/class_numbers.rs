use cmlp_quadform::{
    heegner_ideal, hgroup, is_fundamental, kronecker, splitting_type, ClassGroup, ClassGroupFile,
    QuadOrder, SplittingType,
};

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// h(O_c) from h(O_K) by the conductor formula.
fn order_class_number(d: i64, c: u64, h_field: u64) -> u64 {
    let mut num = h_field * c;
    let mut den = 1u64;
    for l in prime_factors(c) {
        num *= (l as i64 - kronecker(d, l) as i64) as u64;
        den *= l;
    }
    let units = if c == 1 {
        1
    } else {
        match d {
            -3 => 3,
            -4 => 2,
            _ => 1,
        }
    };
    num / den / units
}

#[test]
fn conductor_formula_matches_enumeration() {
    let fields: Vec<i64> = (-200..0).filter(|&d| is_fundamental(d)).collect();
    for &d in &fields {
        let h = ClassGroup::new(QuadOrder::maximal(d).unwrap()).unwrap().class_number() as u64;
        for c in [2u64, 3, 4, 5, 6, 9, 10, 12] {
            let order = QuadOrder::new(d, c).unwrap();
            let g = ClassGroup::new(order).unwrap();
            assert_eq!(
                g.class_number() as u64,
                order_class_number(d, c, h),
                "D={d} c={c}"
            );
        }
    }
}

/// O_K = Z[omega], omega = (D + sqrt D)/2; omega^2 = D omega - (D^2 - D)/4.
fn cyclic_ideal_of_norm_exists(d: i64, n: i64) -> bool {
    let t = (d * d - d) / 4;
    for a in 1..=n {
        if n % a != 0 {
            continue;
        }
        let dd = n / a;
        for b in 0..a {
            // lattice with basis (a, 0), (b, dd) in coordinates x + y omega
            let contains = |x: i64, y: i64| {
                y.rem_euclid(dd) == 0 && (x - (y / dd) * b).rem_euclid(a) == 0
            };
            let times_omega = |x: i64, y: i64| (-y * t, x + y * d);
            let (x1, y1) = times_omega(a, 0);
            let (x2, y2) = times_omega(b, dd);
            let ideal = contains(x1, y1) && contains(x2, y2);
            let g = num_gcd(num_gcd(a, b), dd);
            if ideal && g == 1 {
                return true;
            }
        }
    }
    false
}

fn num_gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        num_gcd(b, a % b)
    }
}

#[test]
fn heegner_criterion_matches_ideal_search() {
    for d in [-3i64, -4, -7, -8, -15, -20, -23, -24, -39, -84] {
        for n in 1..=50u64 {
            assert_eq!(
                heegner_ideal(d, n).is_ok(),
                cyclic_ideal_of_norm_exists(d, n as i64),
                "D={d} N={n}"
            );
        }
    }
}

#[test]
fn splitting_matches_root_count() {
    for p in [3u64, 5, 7, 11, 13] {
        for d in (-120..0).filter(|&d| is_fundamental(d)) {
            let roots = (0..p as i64)
                .filter(|x| (x * x - d).rem_euclid(p as i64) == 0)
                .count();
            let expected = match roots {
                2 => SplittingType::Split,
                1 => SplittingType::Ramified,
                _ => SplittingType::Inert,
            };
            assert_eq!(splitting_type(d, p).unwrap(), expected);
        }
    }
}

#[test]
fn hgroup_size_is_product() {
    let mut checked = 0;
    for d in [-3i64, -4, -7, -8, -23, -39] {
        for c in [1u64, 2, 3, 5, 7] {
            for n in [1u64, 2, 5, 6, 7, 11] {
                if let Ok(h) = hgroup(d, c, n) {
                    let pic = h.classes().class_number();
                    assert_eq!(h.len(), pic * h.unit_count());
                    checked += 1;
                }
            }
        }
    }
    assert!(checked >= 20);
}

#[test]
fn class_group_file_round_trip() {
    let g = ClassGroup::new(QuadOrder::new(-23, 1).unwrap()).unwrap();
    let text = serde_json::to_string(&g.to_file()).unwrap();
    let back: ClassGroupFile = serde_json::from_str(&text).unwrap();
    assert_eq!(back.class_number, 3);
    assert_eq!(back.table, g.table());
}
