use std::collections::{HashMap, VecDeque};

use cmlp_padic::RootOfUnity;
use num_integer::Integer;

use crate::QuadError;

/// Largest exponent box scanned when enumerating characters.
pub const CHARACTER_BOX_LIMIT: u64 = 5_000_000;

/// A finite abelian group on 0..size with identity 0 and a product rule.
pub trait FiniteAbelian {
    fn size(&self) -> usize;
    fn op(&self, x: usize, y: usize) -> usize;

    fn element_order(&self, x: usize) -> u64 {
        let mut y = x;
        let mut n = 1;
        while y != 0 {
            y = self.op(y, x);
            n += 1;
        }
        n
    }
}

/// Generators g_i and, for every element, an exponent vector e with
/// prod g_i^e_i equal to it.
#[derive(Clone, Debug)]
pub struct Presentation {
    pub generators: Vec<usize>,
    pub orders: Vec<u64>,
    pub exponents: Vec<Vec<u64>>,
    relations: Vec<Vec<i64>>,
}

fn span(group: &impl FiniteAbelian, gens: &[usize]) -> Vec<bool> {
    let mut seen = vec![false; group.size()];
    seen[0] = true;
    let mut queue = VecDeque::from([0usize]);
    while let Some(x) = queue.pop_front() {
        for &g in gens {
            let y = group.op(x, g);
            if !seen[y] {
                seen[y] = true;
                queue.push_back(y);
            }
        }
    }
    seen
}

pub fn presentation(group: &impl FiniteAbelian) -> Presentation {
    let n = group.size();
    let mut by_order: Vec<(u64, usize)> = (1..n).map(|x| (group.element_order(x), x)).collect();
    by_order.sort_by(|a, b| b.cmp(a));
    let mut generators = Vec::new();
    let mut covered = span(group, &generators);
    for &(_, x) in &by_order {
        if covered.iter().all(|&b| b) {
            break;
        }
        if !covered[x] {
            generators.push(x);
            covered = span(group, &generators);
        }
    }
    let orders: Vec<u64> = generators.iter().map(|&g| group.element_order(g)).collect();
    let r = generators.len();
    let mut exponents: Vec<Option<Vec<u64>>> = vec![None; n];
    exponents[0] = Some(vec![0; r]);
    let mut relations: HashMap<Vec<i64>, ()> = HashMap::new();
    let mut queue = VecDeque::from([0usize]);
    while let Some(x) = queue.pop_front() {
        let ex = exponents[x].clone().expect("visited");
        for (i, &g) in generators.iter().enumerate() {
            let y = group.op(x, g);
            let mut ey = ex.clone();
            ey[i] += 1;
            match &exponents[y] {
                None => {
                    exponents[y] = Some(ey);
                    queue.push_back(y);
                }
                Some(old) => {
                    let rel: Vec<i64> = ey.iter().zip(old).map(|(a, b)| *a as i64 - *b as i64).collect();
                    if rel.iter().any(|&v| v != 0) {
                        relations.insert(rel, ());
                    }
                }
            }
        }
    }
    Presentation {
        generators,
        orders,
        exponents: exponents.into_iter().map(|e| e.expect("generated")).collect(),
        relations: relations.into_keys().collect(),
    }
}

/// Every character of the group, as its table of values.
pub fn characters(group: &impl FiniteAbelian) -> Result<Vec<Vec<RootOfUnity>>, QuadError> {
    let pres = presentation(group);
    let total: u64 = pres.orders.iter().product();
    if total > CHARACTER_BOX_LIMIT {
        return Err(QuadError::BoundExceeded {
            value: total,
            bound: CHARACTER_BOX_LIMIT,
        });
    }
    let lcm = pres.orders.iter().fold(1u64, |a, b| a.lcm(b));
    let r = pres.orders.len();
    let mut out = Vec::new();
    let mut choice = vec![0u64; r];
    loop {
        // generator i maps to exp(2 pi i choice_i / order_i)
        let scaled: Vec<i64> = (0..r)
            .map(|i| (choice[i] * (lcm / pres.orders[i])) as i64)
            .collect();
        let consistent = pres.relations.iter().all(|rel| {
            let s: i64 = rel.iter().zip(&scaled).map(|(a, b)| a * b).sum();
            s.rem_euclid(lcm as i64) == 0
        });
        if consistent {
            out.push(
                pres.exponents
                    .iter()
                    .map(|e| {
                        let s: i64 = e.iter().zip(&scaled).map(|(a, b)| *a as i64 * b).sum();
                        RootOfUnity::new(s, lcm)
                    })
                    .collect(),
            );
        }
        let mut i = 0;
        while i < r {
            choice[i] += 1;
            if choice[i] < pres.orders[i] {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
        if i == r {
            break;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    struct Cyclic(usize);
    impl FiniteAbelian for Cyclic {
        fn size(&self) -> usize {
            self.0
        }
        fn op(&self, x: usize, y: usize) -> usize {
            (x + y) % self.0
        }
    }

    /// Z/2 x Z/4 encoded as 4a + b.
    struct Klein4;
    impl FiniteAbelian for Klein4 {
        fn size(&self) -> usize {
            8
        }
        fn op(&self, x: usize, y: usize) -> usize {
            let (a, b) = (x / 4 + y / 4, x % 4 + y % 4);
            (a % 2) * 4 + b % 4
        }
    }

    #[test]
    fn counts_and_orthogonality() {
        for g in [Cyclic(1), Cyclic(6), Cyclic(7)] {
            let chars = characters(&g).unwrap();
            assert_eq!(chars.len(), g.size());
        }
        let chars = characters(&Klein4).unwrap();
        assert_eq!(chars.len(), 8);
        for chi in &chars {
            for x in 0..8 {
                for y in 0..8 {
                    assert_eq!(chi[Klein4.op(x, y)], chi[x].mul(&chi[y]));
                }
            }
            let trivial = chi.iter().all(RootOfUnity::is_one);
            let ones = chi.iter().filter(|v| v.is_one()).count();
            // sum of values vanishes unless trivial: the kernel has index = order
            assert!(trivial || 8 % ones == 0 && ones < 8);
        }
    }
}
