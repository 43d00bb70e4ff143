use std::collections::HashMap;

use cmlp_padic::RootOfUnity;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::abelian::{characters, FiniteAbelian};
use crate::form::{reduced_forms, Form};
use crate::order::QuadOrder;
use crate::QuadError;

/// Default cap on c^2 |D_K|.
pub const DEFAULT_DISC_BOUND: u64 = 1_000_000;

/// Pic(O_c) realized on reduced forms; index 0 is the principal class.
#[derive(Clone, Debug)]
pub struct ClassGroup {
    order: QuadOrder,
    forms: Vec<Form>,
    index: HashMap<Form, usize>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ClassGroupFile {
    pub field_disc: i64,
    pub conductor: u64,
    pub discriminant: i64,
    pub class_number: usize,
    pub forms: Vec<Form>,
    pub table: Vec<Vec<usize>>,
}

impl ClassGroup {
    pub fn new(order: QuadOrder) -> Result<Self, QuadError> {
        Self::with_bound(order, DEFAULT_DISC_BOUND)
    }

    pub fn with_bound(order: QuadOrder, bound: u64) -> Result<Self, QuadError> {
        let disc = order.discriminant();
        if disc.unsigned_abs() > bound {
            return Err(QuadError::BoundExceeded {
                value: disc.unsigned_abs(),
                bound,
            });
        }
        let mut forms = reduced_forms(disc);
        let principal = Form::principal(disc);
        forms.sort_by_key(|f| (f != &principal, *f));
        let index = forms.iter().enumerate().map(|(i, f)| (*f, i)).collect();
        Ok(ClassGroup {
            order,
            forms,
            index,
        })
    }

    pub fn order(&self) -> &QuadOrder {
        &self.order
    }

    pub fn class_number(&self) -> usize {
        self.forms.len()
    }

    pub fn forms(&self) -> &[Form] {
        &self.forms
    }

    pub fn form(&self, i: usize) -> Form {
        self.forms[i]
    }

    /// Index of the class of any primitive form of the right discriminant.
    pub fn class_of(&self, f: &Form) -> Result<usize, QuadError> {
        if f.discriminant() != self.order.discriminant() || !f.is_primitive() {
            return Err(QuadError::WrongDiscriminant(f.discriminant()));
        }
        Ok(self.index[&f.reduce()])
    }

    pub fn compose(&self, i: usize, j: usize) -> usize {
        self.index[&self.forms[i].compose(&self.forms[j])]
    }

    pub fn inverse(&self, i: usize) -> usize {
        self.index[&self.forms[i].inverse()]
    }

    pub fn table(&self) -> Vec<Vec<usize>> {
        (0..self.class_number())
            .map(|i| (0..self.class_number()).map(|j| self.compose(i, j)).collect())
            .collect()
    }

    pub fn characters(&self) -> Result<Vec<Vec<RootOfUnity>>, QuadError> {
        characters(self)
    }

    /// The map Pic(O_c) -> Pic(O_c') for c' | c, extending ideals prime to
    /// c / c'.  Entry i is the image of class i.
    pub fn projection_to(&self, target: &ClassGroup) -> Result<Vec<usize>, QuadError> {
        let (c_from, c_to) = (self.order.conductor, target.order.conductor);
        if self.order.field_disc != target.order.field_disc || c_from % c_to != 0 {
            return Err(QuadError::NotSuborder {
                from: c_from,
                to: c_to,
            });
        }
        let ratio = (c_from / c_to) as i64;
        let disc = target.order.discriminant();
        self.forms
            .iter()
            .map(|f| {
                let g = f.with_leading_prime_to(ratio);
                let a = g.a;
                // the ideal [a, (-b + ratio sqrt(disc)) / 2] extends to
                // [a, (-b' + sqrt(disc)) / 2] with ratio b' = b mod 2a
                let two_a = 2 * a;
                let b = if ratio.gcd(&two_a) == 1 {
                    (g.b as i128 * modinv(ratio, two_a) as i128).rem_euclid(two_a as i128) as i64
                } else {
                    // a odd: solve mod a, then fix the parity
                    let b = (g.b as i128 * modinv(ratio, a) as i128).rem_euclid(a as i128) as i64;
                    if (b - disc).rem_euclid(2) != 0 {
                        b + a
                    } else {
                        b
                    }
                };
                let c = (b as i128 * b as i128 - disc as i128) / (4 * a as i128);
                target.class_of(&Form::new(a, b, c as i64))
            })
            .collect()
    }

    pub fn to_file(&self) -> ClassGroupFile {
        ClassGroupFile {
            field_disc: self.order.field_disc,
            conductor: self.order.conductor,
            discriminant: self.order.discriminant(),
            class_number: self.class_number(),
            forms: self.forms.clone(),
            table: self.table(),
        }
    }
}

fn modinv(a: i64, m: i64) -> i64 {
    if m == 1 {
        return 0;
    }
    let (g, x, _) = crate::form::ext_gcd(a as i128, m as i128);
    debug_assert_eq!(g, 1);
    x.rem_euclid(m as i128) as i64
}

impl FiniteAbelian for ClassGroup {
    fn size(&self) -> usize {
        self.class_number()
    }

    fn op(&self, x: usize, y: usize) -> usize {
        self.compose(x, y)
    }
}

/// Convenience wrapper around ClassGroup::new.
pub fn class_group(order: QuadOrder) -> Result<ClassGroup, QuadError> {
    ClassGroup::new(order)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn group(d: i64, c: u64) -> ClassGroup {
        ClassGroup::new(QuadOrder::new(d, c).unwrap()).unwrap()
    }

    #[test]
    fn known_class_numbers() {
        assert_eq!(group(-4, 1).class_number(), 1);
        assert_eq!(group(-23, 1).class_number(), 3);
        assert_eq!(group(-4, 5).class_number(), 2);
        assert_eq!(group(-4, 3).class_number(), 2);
        assert_eq!(group(-3, 7).class_number(), 2);
    }

    #[test]
    fn table_is_a_group() {
        for (d, c) in [(-23i64, 1u64), (-56, 1), (-84, 1), (-4, 15), (-7, 9)] {
            let g = group(d, c);
            let t = g.table();
            let h = g.class_number();
            for i in 0..h {
                assert_eq!(t[0][i], i);
                assert_eq!(t[i][g.inverse(i)], 0);
                for j in 0..h {
                    assert_eq!(t[i][j], t[j][i]);
                    for k in 0..h {
                        assert_eq!(t[t[i][j]][k], t[i][t[j][k]]);
                    }
                }
            }
        }
    }

    #[test]
    fn bound_enforced() {
        let order = QuadOrder::new(-4, 1000).unwrap();
        assert!(matches!(
            ClassGroup::with_bound(order, 10_000),
            Err(QuadError::BoundExceeded { .. })
        ));
    }

    #[test]
    fn projection_is_homomorphism_onto() {
        for (d, big, small) in [(-4i64, 25u64, 5u64), (-7, 9, 3), (-23, 10, 1), (-3, 28, 7), (-8, 12, 4)] {
            let from = group(d, big);
            let to = group(d, small);
            let map = from.projection_to(&to).unwrap();
            let h = from.class_number();
            for i in 0..h {
                for j in 0..h {
                    assert_eq!(map[from.compose(i, j)], to.compose(map[i], map[j]));
                }
            }
            let mut hit = vec![false; to.class_number()];
            for &m in &map {
                hit[m] = true;
            }
            assert!(hit.iter().all(|&b| b), "d={d} {big}->{small}");
            assert_eq!(map[0], 0);
        }
    }

    #[test]
    fn character_count_equals_class_number() {
        for (d, c) in [(-23i64, 1u64), (-84, 1), (-4, 13), (-399, 1)] {
            let g = group(d, c);
            assert_eq!(g.characters().unwrap().len(), g.class_number());
        }
    }
}
