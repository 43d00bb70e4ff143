use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

/// a x^2 + b xy + c y^2, positive definite.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Form {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

/// (g, x, y) with a x + b y = g >= 0.
pub(crate) fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut r0, mut r1) = (a, b);
    let (mut s0, mut s1) = (1i128, 0i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 < 0 {
        (-r0, -s0, -t0)
    } else {
        (r0, s0, t0)
    }
}

impl Form {
    pub fn new(a: i64, b: i64, c: i64) -> Self {
        Form { a, b, c }
    }

    pub fn discriminant(&self) -> i64 {
        self.b * self.b - 4 * self.a * self.c
    }

    /// x^2 + b xy + ... with b in {0, 1}.
    pub fn principal(disc: i64) -> Self {
        let b = disc.rem_euclid(2);
        Form::new(1, b, (b * b - disc) / 4)
    }

    pub fn is_primitive(&self) -> bool {
        self.a.gcd(&self.b).gcd(&self.c) == 1
    }

    pub fn is_reduced(&self) -> bool {
        self.b.abs() <= self.a
            && self.a <= self.c
            && !((self.b.abs() == self.a || self.a == self.c) && self.b < 0)
    }

    pub fn eval(&self, x: i64, y: i64) -> i128 {
        let (x, y) = (x as i128, y as i128);
        self.a as i128 * x * x + self.b as i128 * x * y + self.c as i128 * y * y
    }

    pub fn inverse(&self) -> Self {
        Form::new(self.a, -self.b, self.c).reduce()
    }

    /// Unique reduced representative of the SL_2(Z) class.
    pub fn reduce(&self) -> Self {
        let disc = self.discriminant() as i128;
        let (mut a, mut b) = (self.a as i128, self.b as i128);
        let c = loop {
            let two_a = 2 * a;
            let mut r = b.rem_euclid(two_a);
            if r > a {
                r -= two_a;
            }
            b = r;
            let c = (b * b - disc) / (4 * a);
            if a > c {
                (a, b) = (c, -b);
            } else {
                break c;
            }
        };
        if (a == c || b == -a) && b < 0 {
            b = -b;
        }
        Form::new(a as i64, b as i64, c as i64)
    }

    /// Composition of primitive forms of equal discriminant, reduced.
    pub fn compose(&self, other: &Form) -> Form {
        let disc = self.discriminant() as i128;
        debug_assert_eq!(disc, other.discriminant() as i128);
        let (f1, f2) = if self.a > other.a {
            (other, self)
        } else {
            (self, other)
        };
        let (a1, b1) = (f1.a as i128, f1.b as i128);
        let (a2, b2, c2) = (f2.a as i128, f2.b as i128, f2.c as i128);
        let s = (b1 + b2) / 2;
        let n = b2 - s;
        let (y1, d) = if a2 % a1 == 0 {
            (0, a1)
        } else {
            let (g, u, _) = ext_gcd(a2, a1);
            (u, g)
        };
        let (x2, y2, d1) = if s % d == 0 {
            (0, -1, d)
        } else {
            let (g, u, v) = ext_gcd(s, d);
            (u, -v, g)
        };
        let v1 = a1 / d1;
        let v2 = a2 / d1;
        let r = (y1 * y2 * n - x2 * c2).rem_euclid(v1);
        let b3 = b2 + 2 * v2 * r;
        let a3 = v1 * v2;
        let c3 = (b3 * b3 - disc) / (4 * a3);
        debug_assert_eq!((b3 * b3 - disc) % (4 * a3), 0);
        Form {
            a: a3 as i64,
            b: b3 as i64,
            c: c3 as i64,
        }
        .reduce()
    }

    pub fn pow(&self, e: u64) -> Form {
        let mut acc = Form::principal(self.discriminant());
        for _ in 0..e {
            acc = acc.compose(self);
        }
        acc
    }

    /// The form after (x, y) -> (p x + q y, r x + s y).
    pub fn transform(&self, p: i64, q: i64, r: i64, s: i64) -> Form {
        let (a, b, c) = (self.a as i128, self.b as i128, self.c as i128);
        let (p, q, r, s) = (p as i128, q as i128, r as i128, s as i128);
        let na = a * p * p + b * p * r + c * r * r;
        let nb = 2 * a * p * q + b * (p * s + q * r) + 2 * c * r * s;
        let nc = a * q * q + b * q * s + c * s * s;
        Form::new(na as i64, nb as i64, nc as i64)
    }

    /// An equivalent form whose first coefficient is prime to m.
    pub fn with_leading_prime_to(&self, m: i64) -> Form {
        if self.a.gcd(&m) == 1 {
            return *self;
        }
        for bound in 1i64.. {
            for x in -bound..=bound {
                for y in [-bound, bound] {
                    for (x, y) in [(x, y), (y, x)] {
                        if x.gcd(&y) != 1 {
                            continue;
                        }
                        let value = self.eval(x, y);
                        if (value as i64).gcd(&m) == 1 {
                            let (g, u, v) = ext_gcd(x as i128, y as i128);
                            debug_assert_eq!(g, 1);
                            // [[x, -v], [y, u]] has determinant x u + y v = 1
                            return self.transform(x, -(v as i64), y, u as i64);
                        }
                    }
                }
            }
        }
        unreachable!()
    }
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.a, self.b, self.c)
    }
}

/// All reduced primitive forms of a negative discriminant.
pub fn reduced_forms(disc: i64) -> Vec<Form> {
    assert!(disc < 0 && disc.rem_euclid(4) <= 1);
    let mut out = Vec::new();
    let mut a = 1i64;
    while 3 * a * a <= -disc {
        for b in (-a + 1)..=a {
            if (b - disc).rem_euclid(2) != 0 {
                continue;
            }
            let num = b * b - disc;
            if num % (4 * a) != 0 {
                continue;
            }
            let form = Form::new(a, b, num / (4 * a));
            if form.is_reduced() && form.is_primitive() {
                out.push(form);
            }
        }
        a += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_tables() {
        assert_eq!(reduced_forms(-4), vec![Form::new(1, 0, 1)]);
        assert_eq!(
            reduced_forms(-23),
            vec![Form::new(1, 1, 6), Form::new(2, -1, 3), Form::new(2, 1, 3)]
        );
        assert_eq!(reduced_forms(-100), vec![Form::new(1, 0, 25), Form::new(2, 2, 13)]);
    }

    #[test]
    fn reduction_is_idempotent_and_invariant() {
        let f = Form::new(2, 1, 3).transform(3, 5, 1, 2);
        assert_eq!(f.discriminant(), -23);
        assert_eq!(f.reduce(), Form::new(2, 1, 3));
        assert_eq!(f.reduce().reduce(), f.reduce());
    }

    #[test]
    fn order_three_class() {
        let g = Form::new(2, 1, 3);
        assert_eq!(g.compose(&g), Form::new(2, -1, 3));
        assert_eq!(g.pow(3), Form::principal(-23));
        assert_eq!(g.compose(&g.inverse()), Form::principal(-23));
    }

    #[test]
    fn leading_coefficient_moved() {
        let f = Form::new(2, 2, 13);
        let g = f.with_leading_prime_to(2);
        assert_eq!(g.a % 2, 1);
        assert_eq!(g.reduce(), f);
    }
}
