use cmlp_padic::{binomial, pochhammer_shift, vp_factorial, vp_int, Padic};
use cmlp_qexp::{theta_weight, QExpansion};
use cmlp_weights::{check_assumption, weight_combine, Weight};
use serde::{Deserialize, Serialize};

use crate::section::WSection;
use crate::NablaError;

/// Which degrees were kept and why the rest may be dropped.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConvergenceReport {
    /// absolute precision the dropped tail must reach
    pub target: i64,
    /// highest degree kept
    pub degree: usize,
    /// smallest degree for which the tail is certified
    pub smallest_degree: usize,
    /// the series terminates (nu classical and nonnegative)
    pub finite: bool,
    /// per kept degree: certified lower bound for the valuation
    pub bounds: Vec<i64>,
    /// per kept degree: valuation actually observed
    pub observed: Vec<i64>,
}

/// Lower bound for v(binom(S, j) poch(U + S, j)): the Pochhammer product is
/// j! binom(U+S-1, j) and binom(S, j) = (S/j) binom(S-1, j-1), both binomials
/// being p-integral.
pub fn coefficient_bound(p: u64, s_valuation: Option<i64>, j: usize) -> i64 {
    if j == 0 {
        return 0;
    }
    let fact = vp_factorial(p, j as u64) as i64;
    let from_s = match s_valuation {
        Some(v) => (v - vp_int(p, j as u128) as i64).max(0),
        None => i64::MAX / 4,
    };
    fact + from_s
}

/// Least J such that every degree j > J has bound >= target - vmin.
pub fn smallest_certified_degree(p: u64, vmin: i64, target: i64) -> usize {
    let mut j: u64 = 0;
    while vp_factorial(p, j + 1) as i64 + vmin < target {
        j += 1;
    }
    j as usize
}

fn coefficient(u_total: &Padic, s_total: &Padic, j: usize) -> Padic {
    let b = binomial(s_total, j as u64);
    let a = u_total + s_total;
    &b * &pochhammer_shift(&a, j as u64)
}

/// (nabla_k)^nu applied to a depleted series.  Component j is
/// binom(S, j) prod_{i<j}(U + S - 1 - i) theta^{nu - j}(F) where U and S are
/// the full analytic parameters of k and nu.
pub fn nabla_nu(
    f: &QExpansion,
    k: &Weight,
    nu: &Weight,
    degree: usize,
) -> Result<(WSection, ConvergenceReport), NablaError> {
    let report = check_assumption(k, nu);
    if !report.passed() {
        return Err(NablaError::Assumption(report.to_string()));
    }
    if !f.is_depleted() {
        return Err(NablaError::NotDepleted);
    }
    let p = f.prime();
    let u_total = k.analytic();
    let s_total = nu.analytic();
    let target = f.precision() as i64;
    let vmin = f.valuation_bound().min(target);
    let finite = nu.as_classical().filter(|&m| m >= 0).map(|m| m as usize);
    let tail = smallest_certified_degree(p, vmin, target);
    let smallest = match finite {
        Some(m) => m.min(tail),
        None => tail,
    };
    if degree < smallest {
        return Err(NablaError::TailNotCertified { smallest });
    }
    let top = match finite {
        Some(m) => degree.min(m),
        None => degree,
    };
    let s_val = if s_total.is_zero() {
        None
    } else {
        s_total.valuation()
    };
    let mut comps = Vec::with_capacity(top + 1);
    let mut bounds = Vec::with_capacity(top + 1);
    let mut observed = Vec::with_capacity(top + 1);
    for j in 0..=top {
        let c = coefficient(&u_total, &s_total, j);
        let comp = theta_weight(f, nu, j as i64)?.scale(&c);
        bounds.push(coefficient_bound(p, s_val, j).saturating_add(vmin));
        observed.push(comp.valuation_bound());
        comps.push(comp);
    }
    let section = WSection::new(weight_combine(k, nu)?, comps)?;
    Ok((
        section,
        ConvergenceReport {
            target,
            degree: top,
            smallest_degree: smallest,
            finite: finite.is_some(),
            bounds,
            observed,
        },
    ))
}

/// nabla_nu at the smallest certified degree.
pub fn nabla_nu_auto(
    f: &QExpansion,
    k: &Weight,
    nu: &Weight,
) -> Result<(WSection, ConvergenceReport), NablaError> {
    match nabla_nu(f, k, nu, 0) {
        Err(NablaError::TailNotCertified { smallest }) => nabla_nu(f, k, nu, smallest),
        other => other,
    }
}

/// Degree-0 part of nabla_nu under the unit root splitting: a_n -> nu(n) a_n.
pub fn theta_nu_split(g: &QExpansion, k: &Weight, nu: &Weight) -> Result<QExpansion, NablaError> {
    let report = check_assumption(k, nu);
    if !report.passed() {
        return Err(NablaError::Assumption(report.to_string()));
    }
    Ok(theta_weight(g, nu, 0)?)
}
