use cmlp_dirichlet::DirichletChar;
use cmlp_hecke::HeckeChar;
use cmlp_padic::{factorial, CycloPadic, Padic, RootEmbedding};
use cmlp_qexp::{deplete, op_v, QExpansion};
use cmlp_quadform::HGroup;

use crate::assemble::{check_gate, padic_ctx};
use crate::lvalue::{character_id, LValue};
use crate::oracle::OracleContext;
use crate::LfunError;

/// One value per class of Pic(O_c), in the class group's ordering.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassData {
    pub values: Vec<Padic>,
}

fn pic_sum(
    chi: &HeckeChar,
    ctx: &OracleContext,
    weights: impl Fn(usize) -> Result<Padic, LfunError>,
) -> Result<CycloPadic, LfunError> {
    let order = chi.finite_order();
    let mut acc = CycloPadic::zero(order, padic_ctx(ctx));
    for (i, psi) in chi.class_values.iter().enumerate() {
        let term = psi.inverse().to_cyclo::<Padic>(order, padic_ctx(ctx));
        acc = acc.add(&term.scale(&weights(i)?));
    }
    Ok(acc)
}

fn check_data(hg: &HGroup, ctx: &OracleContext, data: &ClassData) -> Result<(), LfunError> {
    ctx.check_group(hg)?;
    if data.values.len() != hg.classes().class_number() {
        return Err(LfunError::Context(format!(
            "{} class values for h = {}",
            data.values.len(),
            hg.classes().class_number()
        )));
    }
    Ok(())
}

/// Omega sum_{a in Pic(O_c)} N(a)/chi(a) log(a) for chi of type (1, 1);
/// N is the norm character, and both are evaluated on the ideal of norm A
/// attached to the reduced form (A, B, C).
pub fn kronecker_assemble(
    chi: &HeckeChar,
    hg: &HGroup,
    ctx: &OracleContext,
    logs: &ClassData,
    gate: Option<u32>,
) -> Result<LValue, LfunError> {
    if chi.infinity != (1, 1) {
        return Err(LfunError::InfinityType(chi.infinity));
    }
    check_data(hg, ctx, logs)?;
    check_gate(chi, ctx.prime, gate)?;
    let p = ctx.prime;
    let value = pic_sum(chi, ctx, |i| {
        let norm = Padic::from_int(p, hg.classes().form(i).a, ctx.precision);
        let norm_char = norm.inverse()?;
        let chi_infinity = norm.pow(-(chi.infinity.0 + chi.infinity.1) / 2)?;
        Ok(&(&norm_char * &chi_infinity.inverse()?) * &logs.values[i])
    })?;
    Ok(LValue {
        value,
        period_exponent: 1,
        character: character_id(chi),
        oracle: "log".into(),
    })
}

/// (Omega^(r-2j)/j!) sum_{a in Pic(O_c)} chi_{-1-j}^{-1}(a) G_j(a) for chi
/// of type (k-1-j, 1+j), r = k - 2.
pub fn gross_zagier_assemble(
    chi: &HeckeChar,
    hg: &HGroup,
    ctx: &OracleContext,
    graded: &ClassData,
    gate: Option<u32>,
) -> Result<LValue, LfunError> {
    let (n, m) = chi.infinity;
    let k = n + m;
    let r = k - 2;
    let j = m - 1;
    if !(0..=r).contains(&j) {
        return Err(LfunError::GradeOutOfRange { j, r });
    }
    check_data(hg, ctx, graded)?;
    check_gate(chi, ctx.prime, gate)?;
    let sum = pic_sum(chi, ctx, |i| Ok(graded.values[i].clone()))?;
    let scale = factorial(ctx.prime, j as u64).inverse()?;
    Ok(LValue {
        value: sum.scale(&scale),
        period_exponent: r - 2 * j,
        character: character_id(chi),
        oracle: format!("graded:{j}"),
    })
}

/// For an eigenform f with T_p f = a_p f and G = sum_{n>=1} (a_n/n) q^n:
/// G^[p] = G|(1 - (a_p/p) V + eps(p) p^(k-3) V^2).
pub fn primitive_depletion_check(
    f: &QExpansion,
    a_p: &Padic,
    k: u32,
    chi: Option<&DirichletChar>,
) -> Result<bool, LfunError> {
    cmlp_qexp::deplete_eigen(f, a_p, k, chi)?;
    let p = f.prime();
    let mut coeffs = vec![Padic::exact_zero(p)];
    for n in 1..=f.truncation() {
        coeffs.push(f.coeff(n) / &Padic::exact(p, n as i64));
    }
    let g = f.with_coeffs(coeffs);
    let eps_p = match chi {
        None => Padic::exact(p, 1),
        Some(c) => c.value_padic(p as i64, &RootEmbedding::new(p, f.precision()))?,
    };
    let pp = Padic::exact(p, p as i64);
    let v1 = op_v(&g).scale(&(a_p / &pp));
    let v2 = op_v(&op_v(&g)).scale(&(&eps_p * &pp.pow(k as i64 - 3)?));
    let rhs = g.checked_sub(&v1)?.checked_add(&v2)?.truncate(g.truncation());
    Ok(deplete(&g).approx_eq(&rhs))
}
