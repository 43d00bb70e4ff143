use cmlp_padic::Padic;
use cmlp_qexp::{deplete, op_u, op_v, theta, QExpansion};
use cmlp_weights::Weight;
use serde::{Deserialize, Serialize};

use crate::section::{graded_u, graded_v, nabla_step, WSection};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CommutationReport {
    /// theta(F|V) = p (theta F)|V
    pub theta_v: bool,
    /// theta(F|U) = (1/p) (theta F)|U
    pub theta_u: bool,
    /// nabla(V S) = p V(nabla S) with the graded V
    pub graded_v: bool,
    /// nabla(U S) = (1/p) U(nabla S) with the graded U
    pub graded_u: bool,
    /// theta(G) = f implies theta(G^[p]) = f^[p]
    pub depletion: bool,
    /// smallest absolute precision among the compared coefficients
    pub precision: i64,
}

impl CommutationReport {
    pub fn passed(&self) -> bool {
        self.theta_v && self.theta_u && self.graded_v && self.graded_u && self.depletion
    }
}

fn agree(a: &QExpansion, b: &QExpansion, precision: &mut i64) -> bool {
    *precision = (*precision)
        .min(a.absolute_precision())
        .min(b.absolute_precision());
    a.approx_eq(b)
}

fn sections_agree(a: &WSection, b: &WSection, precision: &mut i64) -> bool {
    a.base() == b.base()
        && a.components()
            .iter()
            .zip(b.components())
            .all(|(x, y)| agree(x, y, precision))
}

/// Checks the U/V commutation rules on F itself and on the section
/// (F, theta F, F) of weight k.
pub fn check_commutation(f: &QExpansion, k: &Weight) -> CommutationReport {
    let p = f.prime();
    let pp = Padic::exact(p, p as i64);
    let mut precision = i64::MAX;

    let theta_v = agree(
        &theta(&op_v(f)),
        &op_v(&theta(f)).scale(&pp),
        &mut precision,
    );
    let theta_u = agree(
        &theta(&op_u(f)),
        &op_u(&theta(f)).with_coeffs(
            op_u(&theta(f))
                .coeffs()
                .iter()
                .map(|a| a.shift(-1))
                .collect(),
        ),
        &mut precision,
    );

    let section = WSection::new(k.clone(), vec![f.clone(), theta(f), f.clone()])
        .expect("consistent components");
    let lhs = nabla_step(&graded_v(&section));
    let rhs = graded_v(&nabla_step(&section)).map(|_, c| c.scale(&pp));
    let graded_v_ok = sections_agree(&lhs, &rhs, &mut precision);
    let lhs = nabla_step(&graded_u(&section));
    let rhs = graded_u(&nabla_step(&section))
        .map(|_, c| c.with_coeffs(c.coeffs().iter().map(|a| a.shift(-1)).collect()));
    let graded_u_ok = sections_agree(&lhs, &rhs, &mut precision);

    // G = f, nabla G = theta f: depletion commutes with theta
    let depletion = agree(&theta(&deplete(f)), &deplete(&theta(f)), &mut precision);

    CommutationReport {
        theta_v,
        theta_u,
        graded_v: graded_v_ok,
        graded_u: graded_u_ok,
        depletion,
        precision,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identities_hold_on_sample() {
        for p in [5u64, 7] {
            let f =
                QExpansion::from_fn(p, 8, 60, |n| Padic::from_int(p, (3 * n as i64 + 1) % 13, 8));
            let r = check_commutation(&f, &Weight::classical(p, 4));
            assert!(r.passed(), "{r:?}");
        }
    }
}
