use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use cmlp_padic::{powmod, primitive_root};
use num_integer::Integer;

pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Generator of the cyclic group (Z/q^e)^* for an odd prime q.
fn prime_power_generator(q: u64, e: u32) -> u64 {
    let g = primitive_root(q);
    if e == 1 {
        return g;
    }
    let q2 = q * q;
    if powmod(g, q - 1, q2) != 1 {
        g
    } else {
        g + q
    }
}

fn crt_lift(residue: u64, modulus: u64, total: u64) -> u64 {
    // x = residue mod modulus, x = 1 mod total/modulus
    let other = total / modulus;
    if other == 1 {
        return residue % total;
    }
    let e = (modulus as i128).extended_gcd(&(other as i128));
    // x = residue * other * inv(other mod modulus) + 1 * modulus * inv(modulus mod other)
    let a = (residue as i128 * other as i128 % total as i128) * e.y % total as i128;
    let b = (modulus as i128 * e.x) % total as i128;
    (a + b).rem_euclid(total as i128) as u64
}

/// (Z/N)^* as a product of cyclic groups, with a discrete-log table.
#[derive(Debug)]
pub struct UnitGroup {
    modulus: u64,
    generators: Vec<u64>,
    orders: Vec<u64>,
    dlog: Vec<Option<Vec<u64>>>,
    elements: Vec<u64>,
}

impl UnitGroup {
    pub fn new(modulus: u64) -> Self {
        assert!(modulus >= 1);
        let mut generators = Vec::new();
        let mut orders = Vec::new();
        for (q, e) in factorize(modulus) {
            let qe = q.pow(e);
            if q == 2 {
                if e >= 2 {
                    generators.push(crt_lift(qe - 1, qe, modulus));
                    orders.push(2);
                }
                if e >= 3 {
                    generators.push(crt_lift(5, qe, modulus));
                    orders.push(qe / 4);
                }
            } else {
                generators.push(crt_lift(prime_power_generator(q, e), qe, modulus));
                orders.push(qe / q * (q - 1));
            }
        }
        let mut dlog = vec![None; modulus as usize];
        let mut exps = vec![0u64; generators.len()];
        loop {
            let mut x = 1 % modulus;
            for (g, &k) in generators.iter().zip(&exps) {
                x = x * powmod(*g, k, modulus) % modulus;
            }
            dlog[x as usize] = Some(exps.clone());
            let mut i = 0;
            loop {
                if i == exps.len() {
                    break;
                }
                exps[i] += 1;
                if exps[i] < orders[i] {
                    break;
                }
                exps[i] = 0;
                i += 1;
            }
            if i == exps.len() {
                break;
            }
        }
        let elements = (0..modulus)
            .filter(|&a| dlog[a as usize].is_some())
            .collect();
        UnitGroup {
            modulus,
            generators,
            orders,
            dlog,
            elements,
        }
    }

    /// Shared instance for a modulus.
    pub fn cached(modulus: u64) -> Arc<UnitGroup> {
        static CACHE: OnceLock<Mutex<HashMap<u64, Arc<UnitGroup>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        let mut guard = cache.lock().expect("unit group cache");
        guard
            .entry(modulus)
            .or_insert_with(|| Arc::new(UnitGroup::new(modulus)))
            .clone()
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn generators(&self) -> &[u64] {
        &self.generators
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn order(&self) -> u64 {
        self.orders.iter().product()
    }

    /// Exponent of the group.
    pub fn exponent(&self) -> u64 {
        self.orders.iter().fold(1, |acc, &o| acc.lcm(&o))
    }

    /// Residues prime to N in increasing order.
    pub fn elements(&self) -> &[u64] {
        &self.elements
    }

    pub fn index_of(&self, a: i64) -> Option<usize> {
        let r = a.rem_euclid(self.modulus as i64) as u64;
        self.elements.binary_search(&r).ok()
    }

    /// Exponents of a with respect to the generators, None if not a unit.
    pub fn dlog(&self, a: i64) -> Option<&[u64]> {
        let r = a.rem_euclid(self.modulus as i64) as usize;
        self.dlog[r].as_deref()
    }
}

pub fn residue_units(modulus: u64) -> Arc<UnitGroup> {
    UnitGroup::cached(modulus)
}
