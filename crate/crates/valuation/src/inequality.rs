use serde::{Deserialize, Serialize};

use crate::profile::{canonical_valuations, LocalCase};
use crate::Q;

/// Outcome of instantiating one inequality over a range.  `worst_margin`
/// is min(lhs - rhs); for strict inequalities a zero margin is a failure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InequalityReport {
    pub name: String,
    pub prime: u64,
    pub instances: u64,
    pub worst_margin: Q,
    pub worst_at: String,
    pub counterexamples: u64,
    pub first_counterexample: Option<String>,
}

impl InequalityReport {
    fn new(name: &str, prime: u64) -> Self {
        InequalityReport {
            name: name.to_string(),
            prime,
            instances: 0,
            worst_margin: Q::from(i128::MAX),
            worst_at: String::new(),
            counterexamples: 0,
            first_counterexample: None,
        }
    }

    fn observe(&mut self, margin: Q, strict: bool, at: impl Fn() -> String) {
        self.instances += 1;
        if margin < self.worst_margin {
            self.worst_margin = margin;
            self.worst_at = at();
        }
        let zero = Q::from(0);
        if margin < zero || (strict && margin == zero) {
            self.counterexamples += 1;
            if self.first_counterexample.is_none() {
                self.first_counterexample = Some(at());
            }
        }
    }

    pub fn holds(&self) -> bool {
        self.counterexamples == 0
    }
}

fn vp(p: i128, mut n: i128) -> i128 {
    let mut v = 0;
    while n % p == 0 {
        n /= p;
        v += 1;
    }
    v
}

fn vp_factorial(p: i128, n: i128) -> i128 {
    let mut v = 0;
    let mut q = n / p;
    while q > 0 {
        v += q;
        q /= p;
    }
    v
}

/// f(j) = 1 + j/(2p^2) - v_p(j) - 1/(p-1).  With N = sum j_i and
/// z = 1 - 1/(2p),
///   2 + h + N/p - sum v_p(j_i) - h/(p-1) - zN/p = 2 + sum f(j_i).
fn increment_term(p: i128, j: i128) -> Q {
    Q::from(1) + Q::new(j, 2 * p * p) - Q::from(vp(p, j)) - Q::new(1, p - 1)
}

/// 2 + h + N/p - sum v_p(j_i) - h/(p-1) > zN/p over all h-tuples with
/// 1 <= j_i <= j_max and h <= h_max.  The minimum over h-tuples of
/// sum f(j_i) is h * min f, attained on a constant tuple, so this is exact.
pub fn tail_increment(p: u64, j_max: u64, h_max: u64) -> InequalityReport {
    let pi = p as i128;
    let mut report = InequalityReport::new("tail increment", p);
    let (mut f_min, mut arg) = (increment_term(pi, 1), 1);
    for j in 2..=j_max as i128 {
        let f = increment_term(pi, j);
        if f < f_min {
            f_min = f;
            arg = j;
        }
    }
    for h in 1..=h_max as i128 {
        let margin = Q::from(2) + f_min * h;
        report.observe(margin, true, || {
            format!("h={h} j=({})", vec![arg.to_string(); h as usize].join(","))
        });
    }
    report
}

/// 2 + j/(2p^2) > v_p(j) + 1/(p-1), the one-term form.
pub fn single_term_increment(p: u64, j_max: u64) -> InequalityReport {
    let pi = p as i128;
    let mut report = InequalityReport::new("single-term increment", p);
    for j in 1..=j_max as i128 {
        let margin = Q::from(2) + Q::new(j, 2 * pi * pi) - Q::from(vp(pi, j)) - Q::new(1, pi - 1);
        report.observe(margin, true, || format!("j={j}"));
    }
    report
}

/// With v(h) = 1/r: v(p h^(-p/(p-1))) >= 5/(4(p-1)) for r >= 4, and
/// >= 3/(2(p-1)) for r >= 2 when p >= 5; then for v(y) = 5/(4(p-1)),
/// > v_p(n!) < n/(p-1) and v(y^n/n!) >= 1/(p-1) for 1 <= n <= n_max.
pub fn log_exp_bounds(p: u64, r_max: u64, n_max: u64) -> InequalityReport {
    let pi = p as i128;
    let mut report = InequalityReport::new("log-exp convergence", p);
    for r in 2..=r_max as i128 {
        let v = Q::from(1) - Q::new(pi, r * (pi - 1));
        if r >= 4 {
            report.observe(v - Q::new(5, 4 * (pi - 1)), false, || format!("r={r} (5/4)"));
        }
        if p >= 5 {
            report.observe(v - Q::new(3, 2 * (pi - 1)), false, || format!("r={r} (3/2)"));
        }
    }
    let vy = Q::new(5, 4 * (pi - 1));
    for n in 1..=n_max as i128 {
        let vf = Q::from(vp_factorial(pi, n));
        report.observe(Q::new(n, pi - 1) - vf, true, || format!("n={n} factorial"));
        report.observe(vy * n - vf - Q::new(1, pi - 1), false, || format!("n={n} term"));
    }
    report
}

/// z p (r - 1) >= (p - 1) p + r for r = p + 2 + h.
pub fn radius_growth(p: u64, h_max: u64) -> InequalityReport {
    let pi = p as i128;
    let z = Q::from(1) - Q::new(1, 2 * pi);
    let mut report = InequalityReport::new("radius growth", p);
    for h in 0..=h_max as i128 {
        let r = pi + 2 + h;
        let margin = z * (pi * (r - 1)) - Q::from((pi - 1) * pi + r);
        report.observe(margin, false, || format!("h={h}"));
    }
    report
}

/// ((2p-1)p-1) v(delta) <= 1 at the second inert level and <= 1/2 at the
/// second ramified level, with their integer forms 2p^2-1 <= p^3 and
/// 3p^2-p-1 <= p^3.
pub fn descent_bounds(p: u64) -> InequalityReport {
    let pi = p as i128;
    let mut report = InequalityReport::new("level descent", p);
    let factor = (2 * pi - 1) * pi - 1;
    if let Ok(inert) = canonical_valuations(p, LocalCase::Inert, 2) {
        report.observe(Q::from(1) - inert.delta * factor, false, || "inert delta".into());
    }
    if let Ok(ram) = canonical_valuations(p, LocalCase::Ramified, 2) {
        report.observe(Q::new(1, 2) - ram.delta * factor, false, || "ramified delta".into());
    }
    report.observe(Q::from(pi.pow(3) - (2 * pi * pi - 1)), false, || "2p^2-1 <= p^3".into());
    report.observe(Q::from(pi.pow(3) - (3 * pi * pi - pi - 1)), false, || {
        "3p^2-p-1 <= p^3".into()
    });
    report
}

/// All checks for each prime.
pub fn sweep(primes: &[u64], j_max: u64, h_max: u64) -> Vec<InequalityReport> {
    let mut out = Vec::new();
    for &p in primes {
        out.push(tail_increment(p, j_max, h_max));
        out.push(single_term_increment(p, j_max));
        out.push(log_exp_bounds(p, p + 2 + h_max, 1000));
        out.push(radius_growth(p, h_max));
        out.push(descent_bounds(p));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_instances() {
        assert!(radius_growth(5, 100).holds());
        assert!(descent_bounds(3).holds());
        assert!(single_term_increment(5, 10_000).holds());
        assert!(log_exp_bounds(3, 40, 200).holds());
        assert!(log_exp_bounds(5, 40, 200).holds());
    }

    #[test]
    fn tail_increment_witness() {
        // h = 3, j_i = 25: lhs 53/4, rhs 27/2
        let r = tail_increment(5, 1000, 3);
        assert!(!r.holds());
        assert_eq!(r.first_counterexample.as_deref(), Some("h=3 j=(25,25,25)"));
        assert_eq!(r.worst_margin, Q::new(-1, 4));
        assert!(tail_increment(5, 1000, 2).holds());
    }

    #[test]
    fn radius_growth_identity() {
        // z p (r-1) = p^2 + p + hp - (p+1+h)/2
        for p in [5i128, 7, 11] {
            for h in 0..20 {
                let r = p + 2 + h;
                let z = Q::from(1) - Q::new(1, 2 * p);
                assert_eq!(z * (p * (r - 1)), Q::from(p * p + p + h * p) - Q::new(p + 1 + h, 2));
            }
        }
    }
}
