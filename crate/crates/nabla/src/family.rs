use cmlp_padic::{factorial, log, Padic};
use cmlp_qexp::{theta_weight, QExpansion};
use cmlp_weights::{check_assumption, Weight};
use serde::{Deserialize, Serialize};

use crate::nu::smallest_certified_degree;
use crate::section::WSection;
use crate::NablaError;

/// Polynomial in one formal variable X over Z_p, truncated above `cap`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TruncPoly {
    pub cap: usize,
    pub coeffs: Vec<Padic>,
}

impl TruncPoly {
    pub fn constant(c: Padic, cap: usize) -> Self {
        TruncPoly {
            cap,
            coeffs: vec![c],
        }
    }

    /// c + X
    pub fn linear(c: Padic, cap: usize) -> Self {
        let one = Padic::exact(c.prime(), 1);
        TruncPoly {
            cap,
            coeffs: if cap == 0 { vec![c] } else { vec![c, one] },
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let p = self.coeffs[0].prime();
        let len = (self.coeffs.len() + other.coeffs.len() - 1).min(self.cap + 1);
        let mut out = vec![Padic::exact_zero(p); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                if i + j < len {
                    out[i + j] = &out[i + j] + &(a * b);
                }
            }
        }
        TruncPoly {
            cap: self.cap,
            coeffs: out,
        }
    }

    pub fn scale(&self, c: &Padic) -> Self {
        TruncPoly {
            cap: self.cap,
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn eval(&self, x: &Padic) -> Padic {
        self.coeffs
            .iter()
            .rev()
            .fold(Padic::exact_zero(x.prime()), |acc, c| &(&acc * x) + c)
    }
}

/// nabla_nu with nu = nu0 + X for a formal deformation X, meant to be
/// specialised at X in p^2 Z_p.
#[derive(Clone, Debug)]
pub struct FamilySection {
    k: Weight,
    nu0: Weight,
    /// comps[j][n] is the coefficient of q^n in component j
    comps: Vec<Vec<TruncPoly>>,
    precision: u32,
}

fn exp_series(a: &Padic, cap: usize) -> TruncPoly {
    let p = a.prime();
    let mut coeffs = vec![Padic::exact(p, 1)];
    let mut power = Padic::exact(p, 1);
    for i in 1..=cap {
        power = &power * a;
        coeffs.push(&power / &factorial(p, i as u64));
    }
    TruncPoly { cap, coeffs }
}

pub fn nabla_nu_family(
    f: &QExpansion,
    k: &Weight,
    nu0: &Weight,
    degree: usize,
    cap: usize,
) -> Result<FamilySection, NablaError> {
    let report = check_assumption(k, nu0);
    if !report.passed() {
        return Err(NablaError::Assumption(report.to_string()));
    }
    if !f.is_depleted() {
        return Err(NablaError::NotDepleted);
    }
    let p = f.prime();
    let target = f.precision() as i64;
    let smallest = smallest_certified_degree(p, f.valuation_bound().min(target), target);
    if degree < smallest {
        return Err(NablaError::TailNotCertified { smallest });
    }
    let s = TruncPoly::linear(nu0.analytic(), cap);
    let us = TruncPoly::linear(&k.analytic() + &nu0.analytic(), cap);
    let logs: Vec<Option<TruncPoly>> = (0..=f.truncation())
        .map(|n| {
            if (n as u64).is_multiple_of(p) {
                Ok(None)
            } else {
                log(&Padic::from_int(p, n as i64, f.precision())).map(|l| Some(exp_series(&l, cap)))
            }
        })
        .collect::<Result<_, _>>()?;
    let mut binom = TruncPoly::constant(Padic::exact(p, 1), cap);
    let mut poch = TruncPoly::constant(Padic::exact(p, 1), cap);
    let mut comps = Vec::with_capacity(degree + 1);
    for j in 0..=degree {
        if j > 0 {
            let shift = Padic::exact(p, j as i64 - 1);
            let top = TruncPoly::linear(&s.coeffs[0] - &shift, cap);
            binom = binom.mul(&top).scale(&Padic::exact(p, j as i64).inverse()?);
            let factor = TruncPoly::linear(&us.coeffs[0] - &Padic::exact(p, j as i64), cap);
            poch = poch.mul(&factor);
        }
        let lead = binom.mul(&poch);
        let base = theta_weight(f, nu0, j as i64)?;
        let row = base
            .coeffs()
            .iter()
            .zip(&logs)
            .map(|(a, l)| match l {
                Some(e) if !a.is_exact_zero() => lead.mul(e).scale(a),
                _ => TruncPoly::constant(Padic::exact_zero(p), cap),
            })
            .collect();
        comps.push(row);
    }
    Ok(FamilySection {
        k: k.clone(),
        nu0: nu0.clone(),
        comps,
        precision: f.precision(),
    })
}

impl FamilySection {
    pub fn degree(&self) -> usize {
        self.comps.len() - 1
    }

    /// Specialise X to `x`, which must lie in p^2 Z_p.
    pub fn evaluate(&self, x: &Padic) -> Result<WSection, NablaError> {
        let p = self.k.prime();
        if x.valuation_bound() < 2 {
            return Err(NablaError::Assumption("s ∉ p^2R".into()));
        }
        let deformation = match self.nu0.deformation() {
            Some(d) => d + x,
            None => x.clone(),
        };
        let nu = Weight::new(
            p,
            self.nu0.torsion() as i64,
            self.nu0.integer_part(),
            Some(deformation),
        );
        let comps = self
            .comps
            .iter()
            .map(|row| QExpansion::new(p, self.precision, row.iter().map(|c| c.eval(x)).collect()))
            .collect::<Result<Vec<_>, _>>()?;
        let base = cmlp_weights::weight_combine(&self.k, &nu)?;
        WSection::new(base, comps)
    }
}
