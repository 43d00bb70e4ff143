use cmlp_dirichlet::{char_table, DirichletChar};
use cmlp_hecke::{
    avatar_local, char_eval, deform_to, enumerate_chars, principal_value, twist_norm, HeckeChar,
    QuadPadic,
};
use cmlp_padic::Padic;
use cmlp_quadform::{hgroup, QuadInt};

fn all_chars(d: i64, c: u64, n: u64, k: i64, j: i64) -> Vec<HeckeChar> {
    let hg = hgroup(d, c, n).unwrap();
    char_table(n)
        .iter()
        .flat_map(|e| enumerate_chars(&hg, k, j, e).unwrap())
        .collect()
}

#[test]
fn finite_part_is_multiplicative() {
    for (d, c, n) in [(-23, 1, 6), (-3, 5, 7), (-4, 3, 5), (-15, 1, 2)] {
        let hg = hgroup(d, c, n).unwrap();
        let chars = all_chars(d, c, n, 2, 0);
        assert!(!chars.is_empty());
        for chi in &chars {
            for x in 0..hg.len() {
                for y in 0..hg.len() {
                    let lhs = char_eval(chi, &hg, hg.mul(x, y)).unwrap();
                    let rhs = char_eval(chi, &hg, x).unwrap().mul(&char_eval(chi, &hg, y).unwrap());
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }
}

#[test]
fn odd_weight_needs_odd_nebentype() {
    // only -1 is a nontrivial unit of O_5 in Q(sqrt -3): eps(-1) = (-1)^(n-m)
    for k in 1..5 {
        for chi in all_chars(-3, 5, 7, k, 0) {
            assert_eq!(chi.nebentype.is_even(), k % 2 == 0);
        }
    }
    assert!(enumerate_chars(&hgroup(-3, 5, 7).unwrap(), 3, 0, &DirichletChar::trivial(7))
        .unwrap()
        .is_empty());
}

#[test]
fn count_over_all_nebentypes() {
    // each admissible eps gives h(O_c) characters; half the eps are admissible
    let hg = hgroup(-23, 2, 3).unwrap();
    let h = hg.classes().class_number();
    let total = all_chars(-23, 2, 3, 2, 0).len();
    assert_eq!(total, h);
    assert_eq!(all_chars(-23, 2, 3, 3, 0).len(), h);
}

#[test]
fn norm_character_on_principal_ideals() {
    let hg = hgroup(-7, 1, 2).unwrap();
    let base = &enumerate_chars(&hg, 0, 0, &DirichletChar::trivial(2)).unwrap()[0];
    assert!(base.is_finite_trivial());
    let norm = twist_norm(base, 1);
    assert_eq!(norm.infinity, (1, 1));
    for (x, y) in [(0, 2), (4, 2), (2, 4), (6, 4)] {
        let alpha = QuadInt::new(-7, x, y).unwrap();
        let (root, value) = principal_value(&norm, &hg, &alpha, 5, 20).unwrap();
        assert!(root.is_one());
        let expected = Padic::from_int(5, alpha.norm(), 20).inverse().unwrap();
        assert!(value.re.approx_eq(&expected), "{x} {y}");
        assert!(value.im.is_zero());
    }
}

#[test]
fn principal_value_rejects_bad_input() {
    let hg = hgroup(-7, 1, 2).unwrap();
    let chi = &enumerate_chars(&hg, 2, 0, &DirichletChar::trivial(2)).unwrap()[0];
    let even_norm = QuadInt::new(-7, 1, 1).unwrap();
    assert!(principal_value(chi, &hg, &even_norm, 5, 10).is_err());
    let with_p = QuadInt::new(-7, 10, 0).unwrap();
    assert!(principal_value(chi, &hg, &with_p, 5, 10).is_err());
}

fn units(d: i64, p: u64, prec: u32) -> Vec<QuadPadic> {
    let mut out = Vec::new();
    for a in 0..4i64 {
        for b in 0..4i64 {
            let x = QuadPadic::new(d, Padic::from_int(p, a, prec), Padic::from_int(p, b, prec));
            if x.is_unit() {
                out.push(x);
            }
        }
    }
    out
}

fn with_type(chi: &HeckeChar, k: i64, j: i64) -> HeckeChar {
    HeckeChar {
        infinity: (k + j, -j),
        ..chi.clone()
    }
}

#[test]
fn integer_deformation_reaches_the_target_type() {
    for (d, c, n) in [(-3, 25, 7), (-15, 25, 2)] {
        let p = 5;
        let chi = &all_chars(d, c, n, 2, 0)[0];
        let q = if d == -3 { 25 } else { 5 };
        let (k2, j2) = (2 + (q - 1) * 5, -(q - 1) * 5);
        let deformed = deform_to(chi, p, k2, j2, 2).unwrap();
        let target = with_type(chi, k2, j2);
        for x in units(d, p, 30) {
            let lhs = deformed.avatar_local(&x, 25).unwrap();
            let rhs = avatar_local(&target, &x).unwrap();
            assert!(lhs.agreement_halves(&rhs) >= 40, "{d} {x:?}");
        }
    }
}

#[test]
fn deformation_is_close_to_base() {
    let p = 5;
    for (d, c, n, q, halves) in [(-3, 25, 7, 25, 0), (-15, 25, 2, 5, 1)] {
        let chi = &all_chars(d, c, n, 2, 0)[0];
        for m in 1..4u32 {
            let step = (q - 1) * 5i64.pow(m - 1);
            let deformed = deform_to(chi, p, 2 + 7 * step, 3 * step, m).unwrap();
            for x in units(d, p, 30) {
                let lhs = deformed.avatar_local(&x, 25).unwrap();
                let rhs = avatar_local(chi, &x).unwrap();
                assert!(lhs.agreement_halves(&rhs) >= 2 * m as i64 - halves);
            }
        }
    }
}

#[test]
fn deformations_compose() {
    let p = 5;
    let chi = &all_chars(-3, 25, 7, 2, 0)[0];
    let d1 = deform_to(chi, p, 2 + 24 * 5, 24 * 10, 2).unwrap();
    let s = Padic::from_int(p, 24 * 5 * 13, 30);
    let t = Padic::from_int(p, -24 * 5 * 2, 30);
    let d12 = d1.deform_again(s, t).unwrap();
    let direct = deform_to(chi, p, 2 + 24 * 5 * 14, 24 * 10 - 24 * 10, 2).unwrap();
    for x in units(-3, p, 30) {
        let a = d12.avatar_local(&x, 25).unwrap();
        let b = direct.avatar_local(&x, 25).unwrap();
        assert!(a.agreement_halves(&b) >= 40);
    }
    // finite part untouched
    assert_eq!(d12.base.class_values, chi.class_values);
}
