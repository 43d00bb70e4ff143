use cmlp_hecke::{conductor_ppart, HeckeChar};
use cmlp_padic::{CycloPadic, CycloRational, Padic, RootOfUnity};
use cmlp_quadform::{ClassGroup, HGroup, QuadOrder};
use cmlp_weights::Weight;
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::assemble::{check_gate, lp_value, padic_ctx};
use crate::lvalue::{character_id, LValue};
use crate::oracle::{CmOracle, LevelTag, OracleContext};
use crate::LfunError;

/// Exact sum of roots of unity.
pub fn character_sum(values: &[RootOfUnity]) -> CycloRational {
    let order = values.iter().fold(1u64, |acc, r| num_lcm(acc, r.den));
    let one = BigRational::from_integer(BigInt::from(1));
    CycloRational::from_exponent_sums(
        order,
        (),
        values.iter().map(|r| (r.exponent_in(order), one.clone())),
    )
}

fn num_lcm(a: u64, b: u64) -> u64 {
    let (mut x, mut y) = (a, b);
    while y != 0 {
        (x, y) = (y, x % y);
    }
    a / x * b
}

fn split_p(c: u64, p: u64) -> (u32, u64) {
    let (mut e, mut d) = (0, c);
    while d % p == 0 {
        d /= p;
        e += 1;
    }
    (e, d)
}

#[derive(Clone, Debug)]
pub struct OrthogonalityReport {
    pub kernel_size: usize,
    pub sum: CycloRational,
    pub vanishes: bool,
    /// conductor p-part of chi equals the p-part of c
    pub conductor_matches: bool,
}

/// sum of psi^{-1} over ker(Pic(O_c) -> Pic(O_{p^m d})), c = p^n d, m < n.
pub fn orthogonality_vanish(chi: &HeckeChar, p: u64, m: u32) -> Result<OrthogonalityReport, LfunError> {
    let order = QuadOrder::new(chi.field_disc, chi.conductor)?;
    let (n, d) = split_p(chi.conductor, p);
    if m >= n {
        return Err(LfunError::Context(format!("level {m} is not below {n}")));
    }
    let top = ClassGroup::new(order)?;
    let lower = ClassGroup::new(order.with_conductor(p.pow(m) * d)?)?;
    let map = top.projection_to(&lower)?;
    let kernel: Vec<RootOfUnity> = map
        .iter()
        .zip(&chi.class_values)
        .filter(|(img, _)| **img == 0)
        .map(|(_, v)| v.inverse())
        .collect();
    let sum = character_sum(&kernel);
    Ok(OrthogonalityReport {
        kernel_size: kernel.len(),
        vanishes: sum.is_zero(),
        sum,
        conductor_matches: conductor_ppart(chi, p)? == n,
    })
}

/// Synthetic classical data: per-class values at level n, and arbitrary
/// values at levels n-1, n-2 that only see the image of a class in
/// Pic(O_{c/p}), Pic(O_{c/p^2}).  Nebentype must be trivial.
#[derive(Clone, Debug)]
pub struct InterpolationData {
    pub context: OracleContext,
    pub classical: Vec<Padic>,
    /// lower[t - 1] lives on Pic(O_{c / p^t})
    pub lower: Vec<Vec<Padic>>,
    pub projections: Vec<Vec<usize>>,
    element_class: Vec<usize>,
    pub seed: u64,
}

impl InterpolationData {
    pub fn random(hg: &HGroup, context: OracleContext, seed: u64) -> Result<Self, LfunError> {
        context.check_group(hg)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (p, prec) = (context.prime, context.precision);
        let mut draw = |len: usize| -> Vec<Padic> {
            (0..len)
                .map(|_| Padic::from_int(p, rng.random_range(-100_000..=100_000), prec))
                .collect()
        };
        let top = hg.classes();
        let classical = draw(top.class_number());
        let (n, d) = split_p(context.conductor, p);
        let mut lower = Vec::new();
        let mut projections = Vec::new();
        for t in 1..=n.min(2) {
            let g = ClassGroup::new(top.order().with_conductor(p.pow(n - t) * d)?)?;
            projections.push(top.projection_to(&g)?);
            lower.push(draw(g.class_number()));
        }
        let element_class = (0..hg.len()).map(|i| hg.element(i).0).collect();
        Ok(InterpolationData { context, classical, lower, projections, element_class, seed })
    }

    pub fn scaled(&self, lambda: &Padic) -> Self {
        let mut out = self.clone();
        out.classical = self.classical.iter().map(|v| v * lambda).collect();
        out.lower = self
            .lower
            .iter()
            .map(|l| l.iter().map(|v| v * lambda).collect())
            .collect();
        out
    }
}

impl CmOracle for InterpolationData {
    fn context(&self) -> &OracleContext {
        &self.context
    }

    fn eval(&self, element: usize, level: LevelTag, _: &Weight) -> Result<Padic, LfunError> {
        let missing = || LfunError::MissingLevel { element, level: format!("{level:?}") };
        let class = *self.element_class.get(element).ok_or_else(missing)?;
        match level.offset() {
            0 => Ok(self.classical[class].clone()),
            t => {
                let t = t as usize - 1;
                let proj = self.projections.get(t).ok_or_else(missing)?;
                Ok(self.lower[t][proj[class]].clone())
            }
        }
    }

    fn name(&self) -> String {
        format!("synthetic:{}", self.seed)
    }
}

/// e_n - a_p e_{n-1} + eps(p) p^(k-1) e_{n-2}; levels with an exactly
/// zero coefficient are not evaluated.
pub struct DepletedOracle<'a> {
    pub inner: &'a dyn CmOracle,
    pub a_p: Padic,
    pub eps_p: Padic,
}

impl DepletedOracle<'_> {
    fn coefficients(&self) -> Result<[Padic; 3], LfunError> {
        let ctx = self.inner.context();
        let p = ctx.prime;
        let second = &self.eps_p * &Padic::exact(p, p as i64).pow(ctx.k - 1)?;
        Ok([Padic::exact(p, 1), self.a_p.negate(), second])
    }
}

impl CmOracle for DepletedOracle<'_> {
    fn context(&self) -> &OracleContext {
        self.inner.context()
    }

    fn eval(&self, element: usize, level: LevelTag, nu: &Weight) -> Result<Padic, LfunError> {
        if level != LevelTag::Top {
            return self.inner.eval(element, level, nu);
        }
        let mut acc = Padic::exact_zero(self.context().prime);
        for (tag, coeff) in LevelTag::ALL.iter().zip(self.coefficients()?) {
            if coeff.is_exact_zero() {
                continue;
            }
            acc = &acc + &(&coeff * &self.inner.eval(element, *tag, nu)?);
        }
        Ok(acc)
    }

    fn name(&self) -> String {
        format!("depleted({})", self.inner.name())
    }
}

#[derive(Clone, Debug)]
pub struct InterpolationReport {
    /// assembled from the depleted oracle
    pub lhs: LValue,
    /// Pic(O_c) sum of the classical values, over Omega^(k + 2m)
    pub rhs: LValue,
    /// contributions of levels n-1 and n-2 to the left side
    pub lower_terms: Vec<LValue>,
    pub agree: bool,
}

pub fn interpolation_check(
    chi: &HeckeChar,
    hg: &HGroup,
    data: &InterpolationData,
    a_p: &Padic,
    eps_p: &Padic,
    m: i64,
    gate: Option<u32>,
) -> Result<InterpolationReport, LfunError> {
    let ctx = &data.context;
    if !chi.nebentype.is_trivial() {
        return Err(LfunError::Context("synthetic data needs trivial nebentype".into()));
    }
    check_gate(chi, ctx.prime, gate)?;
    let nu = Weight::classical(ctx.prime, m);
    let exponent = -(ctx.k + 2 * m);
    let depleted = DepletedOracle { inner: data, a_p: a_p.clone(), eps_p: eps_p.clone() };
    let lhs = lp_value(chi, hg, &depleted, &nu, None)?.with_period(exponent);

    let order = chi.finite_order();
    let mut acc = CycloPadic::zero(order, padic_ctx(ctx));
    for (psi, v) in chi.class_values.iter().zip(&data.classical) {
        acc = acc.add(&psi.inverse().to_cyclo::<Padic>(order, padic_ctx(ctx)).scale(v));
    }
    let rhs = LValue {
        value: acc,
        period_exponent: exponent,
        character: character_id(chi),
        oracle: format!("classical:{}", data.seed),
    };

    let mut lower_terms = Vec::new();
    for tag in [LevelTag::Minus1, LevelTag::Minus2] {
        let t = tag.offset() as usize;
        if t > data.lower.len() {
            continue;
        }
        let only = LevelOnly { inner: data, tag };
        lower_terms.push(lp_value(chi, hg, &only, &nu, None)?.with_period(exponent));
    }
    let agree = lhs.agrees(&rhs);
    Ok(InterpolationReport { lhs, rhs, lower_terms, agree })
}

struct LevelOnly<'a> {
    inner: &'a InterpolationData,
    tag: LevelTag,
}

impl CmOracle for LevelOnly<'_> {
    fn context(&self) -> &OracleContext {
        &self.inner.context
    }
    fn eval(&self, element: usize, _: LevelTag, nu: &Weight) -> Result<Padic, LfunError> {
        self.inner.eval(element, self.tag, nu)
    }
    fn name(&self) -> String {
        format!("{:?}", self.tag)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn root_sums() {
        let p = 5;
        let nontrivial: Vec<RootOfUnity> = (0..p).map(|i| RootOfUnity::new(i, p as u64)).collect();
        assert!(character_sum(&nontrivial).is_zero());
        let trivial = vec![RootOfUnity::one(); 5];
        assert_eq!(character_sum(&trivial), CycloRational::integer(1, 5));
    }
}
