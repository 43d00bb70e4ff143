use cmlp_hecke::{char_eval, conductor_ppart, HeckeChar};
use cmlp_padic::{CycloPadic, Padic, PadicCtx};
use cmlp_quadform::HGroup;
use cmlp_weights::{weight_combine, weight_eval, Weight};

use crate::lvalue::{character_id, LValue};
use crate::oracle::{CmOracle, EquivariantOracle, LevelTag, OracleContext, PolynomialFamily};
use crate::LfunError;

pub(crate) fn check_gate(chi: &HeckeChar, p: u64, gate: Option<u32>) -> Result<(), LfunError> {
    if let Some(threshold) = gate {
        let conductor = conductor_ppart(chi, p)?;
        if conductor < threshold {
            return Err(LfunError::Gate { conductor, threshold });
        }
    }
    Ok(())
}

pub(crate) fn padic_ctx(ctx: &OracleContext) -> PadicCtx {
    PadicCtx { prime: ctx.prime, precision: ctx.precision }
}

/// chi^{-1} at every element of H, in Q_p(zeta_L).
pub(crate) fn inverse_values(
    chi: &HeckeChar,
    hg: &HGroup,
    ctx: &OracleContext,
) -> Result<Vec<CycloPadic>, LfunError> {
    ctx.check_group(hg)?;
    let order = chi.finite_order();
    (0..hg.len())
        .map(|i| {
            let v = char_eval(chi, hg, i)?;
            Ok(v.inverse().to_cyclo::<Padic>(order, padic_ctx(ctx)))
        })
        .collect()
}

fn average(
    chi: &HeckeChar,
    hg: &HGroup,
    ctx: &OracleContext,
    inv: &[CycloPadic],
    values: &[Padic],
    oracle: String,
) -> LValue {
    let p = ctx.prime;
    let mut acc = CycloPadic::zero(chi.finite_order(), padic_ctx(ctx));
    for (c, v) in inv.iter().zip(values) {
        acc = acc.add(&c.scale(v));
    }
    let units = Padic::exact(p, hg.unit_count() as i64).inverse().expect("phi(N) prime to p");
    LValue {
        value: acc.scale(&units),
        period_exponent: 0,
        character: character_id(chi),
        oracle,
    }
}

/// (1/phi(N)) sum_{a in H} chi^{-1}(a) eval(a).
pub fn lp_value(
    chi: &HeckeChar,
    hg: &HGroup,
    oracle: &dyn CmOracle,
    nu: &Weight,
    gate: Option<u32>,
) -> Result<LValue, LfunError> {
    let ctx = oracle.context();
    check_gate(chi, ctx.prime, gate)?;
    let inv = inverse_values(chi, hg, ctx)?;
    let values: Vec<Padic> = (0..hg.len())
        .map(|i| oracle.eval(i, LevelTag::Top, nu))
        .collect::<Result<_, _>>()?;
    Ok(average(chi, hg, ctx, &inv, &values, oracle.name()))
}

/// The same sum with each a replaced by r_a a, r_a = 1 mod p^n;
/// chi_nu(r a) = chi(a) (k + 2 nu)(r).
pub fn lp_value_twisted(
    chi: &HeckeChar,
    hg: &HGroup,
    oracle: &dyn EquivariantOracle,
    nu: &Weight,
    twists: &[Padic],
    gate: Option<u32>,
) -> Result<LValue, LfunError> {
    let ctx = oracle.context();
    check_gate(chi, ctx.prime, gate)?;
    if twists.len() != hg.len() {
        return Err(LfunError::Context(format!(
            "{} twists for {} elements",
            twists.len(),
            hg.len()
        )));
    }
    let one = Padic::exact(ctx.prime, 1);
    if let Some(bad) = twists
        .iter()
        .position(|r| (r - &one).valuation_bound() < ctx.n as i64)
    {
        return Err(LfunError::Context(format!("twist {bad} is not 1 mod p^{}", ctx.n)));
    }
    let weight = weight_combine(&Weight::classical(ctx.prime, ctx.k), nu)?;
    let inv = inverse_values(chi, hg, ctx)?;
    let values: Vec<Padic> = twists
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let chi_r = weight_eval(&weight, r)?;
            Ok(&oracle.eval_twisted(i, nu, r)? * &chi_r.inverse()?)
        })
        .collect::<Result<_, LfunError>>()?;
    Ok(average(chi, hg, ctx, &inv, &values, format!("{}+twist", oracle.name())))
}

/// Coefficient of u^d of the two-variable value, for each d.
pub fn lp_two_var_coeffs(
    chi: &HeckeChar,
    hg: &HGroup,
    family: &PolynomialFamily,
    gate: Option<u32>,
) -> Result<Vec<LValue>, LfunError> {
    let ctx = &family.context;
    check_gate(chi, ctx.prime, gate)?;
    let inv = inverse_values(chi, hg, ctx)?;
    let zero = Padic::exact_zero(ctx.prime);
    (0..=family.degree())
        .map(|d| {
            let values: Vec<Padic> = family
                .coeffs
                .iter()
                .map(|c| c.get(d).cloned().unwrap_or_else(|| zero.clone()))
                .collect();
            Ok(average(chi, hg, ctx, &inv, &values, format!("family[u^{d}]")))
        })
        .collect()
}

/// The two-variable value at weight u of the form.
pub fn lp_two_var(
    chi: &HeckeChar,
    hg: &HGroup,
    family: &PolynomialFamily,
    u: &Padic,
    gate: Option<u32>,
) -> Result<LValue, LfunError> {
    let coeffs = lp_two_var_coeffs(chi, hg, family, gate)?;
    let mut acc = coeffs.last().expect("degree >= 0").clone();
    for c in coeffs.iter().rev().skip(1) {
        acc.value = acc.value.scale(u).add(&c.value);
    }
    acc.oracle = "family".into();
    Ok(acc)
}

/// Delta^d f(0) from f(0), ..., f(D).
pub fn forward_differences(values: &[CycloPadic]) -> Vec<CycloPadic> {
    let mut row = values.to_vec();
    let mut out = Vec::with_capacity(values.len());
    while let Some(first) = row.first() {
        out.push(first.clone());
        row = row.windows(2).map(|w| w[1].sub(&w[0])).collect();
    }
    out
}

/// Delta^d f(0) for f(u) = sum c_e u^e, via
/// Delta^d u^e (0) = sum_i (-1)^(d-i) C(d, i) i^e.
pub fn monomial_differences(coeffs: &[CycloPadic]) -> Vec<CycloPadic> {
    let n = coeffs.len();
    (0..n)
        .map(|d| {
            let mut acc = coeffs[0].scale(&Padic::exact_zero(prime_of(&coeffs[0])));
            for (e, c) in coeffs.iter().enumerate() {
                let mut s: i64 = 0;
                let mut binom: i64 = 1;
                for i in 0..=d as i64 {
                    let sign = if (d as i64 - i) % 2 == 0 { 1 } else { -1 };
                    s += sign * binom * i.pow(e as u32);
                    binom = binom * (d as i64 - i) / (i + 1);
                }
                acc = acc.add(&c.scale(&Padic::exact(prime_of(c), s)));
            }
            acc
        })
        .collect()
}

fn prime_of(c: &CycloPadic) -> u64 {
    c.context().prime
}
