//! Truncated q-expansions over Z_p and the operators acting on them.

mod io;

use cmlp_dirichlet::{l_value, DirichletChar};
use cmlp_padic::{max_precision, Padic, PadicError, RootEmbedding};
use cmlp_weights::{weight_eval, Weight, WeightError};
use thiserror::Error;

pub use io::QExpansionFile;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QExpError {
    #[error("coefficient {0} is divisible by p but nonzero; a p-depleted series is required")]
    NotDepleted(usize),
    #[error("p = {0} divides the level {1}")]
    PrimeDividesLevel(u64, u64),
    #[error("character parity does not match weight {0}")]
    Parity(u32),
    #[error("weight 2 needs a nontrivial character")]
    TrivialWeightTwo,
    #[error("T_p F differs from a_p F at index {0}")]
    NotEigen(usize),
    #[error("prime mismatch: {0} vs {1}")]
    PrimeMismatch(u64, u64),
    #[error("series has no coefficients")]
    Empty,
    #[error(transparent)]
    Padic(#[from] PadicError),
    #[error(transparent)]
    Weight(#[from] WeightError),
    #[error("bad q-expansion file: {0}")]
    Format(String),
}

/// sum_{n <= N_q} a_n q^n with p-adic coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QExpansion {
    prime: u64,
    precision: u32,
    coeffs: Vec<Padic>,
    weight: Option<Weight>,
    nebentype: Option<DirichletChar>,
}

impl QExpansion {
    pub fn new(prime: u64, precision: u32, coeffs: Vec<Padic>) -> Result<Self, QExpError> {
        if coeffs.is_empty() {
            return Err(QExpError::Empty);
        }
        if let Some(c) = coeffs.iter().find(|c| c.prime() != prime) {
            return Err(QExpError::PrimeMismatch(prime, c.prime()));
        }
        Ok(QExpansion {
            prime,
            precision: precision.min(max_precision(prime)),
            coeffs,
            weight: None,
            nebentype: None,
        })
    }

    pub fn zero(prime: u64, precision: u32, truncation: usize) -> Self {
        QExpansion {
            prime,
            precision: precision.min(max_precision(prime)),
            coeffs: vec![Padic::exact_zero(prime); truncation + 1],
            weight: None,
            nebentype: None,
        }
    }

    pub fn from_integers(prime: u64, precision: u32, coeffs: &[i64]) -> Self {
        let c = coeffs
            .iter()
            .map(|&a| integer(prime, precision, a))
            .collect();
        Self::new(prime, precision, c).expect("nonempty")
    }

    pub fn from_fn(
        prime: u64,
        precision: u32,
        truncation: usize,
        f: impl Fn(usize) -> Padic,
    ) -> Self {
        Self::new(prime, precision, (0..=truncation).map(f).collect()).expect("nonempty")
    }

    pub fn with_weight(mut self, weight: Weight) -> Self {
        self.weight = Some(weight);
        self
    }

    pub fn with_nebentype(mut self, chi: DirichletChar) -> Self {
        self.nebentype = Some(chi);
        self
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    /// Largest stored index N_q.
    pub fn truncation(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Padic] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> &Padic {
        &self.coeffs[n]
    }

    pub fn weight(&self) -> Option<&Weight> {
        self.weight.as_ref()
    }

    pub fn nebentype(&self) -> Option<&DirichletChar> {
        self.nebentype.as_ref()
    }

    fn derived(&self, coeffs: Vec<Padic>) -> Self {
        QExpansion {
            prime: self.prime,
            precision: self.precision,
            coeffs,
            weight: self.weight.clone(),
            nebentype: self.nebentype.clone(),
        }
    }

    pub fn with_coeffs(&self, coeffs: Vec<Padic>) -> Self {
        assert!(!coeffs.is_empty());
        self.derived(coeffs)
    }

    pub fn truncate(&self, truncation: usize) -> Self {
        let n = truncation.min(self.truncation());
        self.derived(self.coeffs[..=n].to_vec())
    }

    fn check(&self, other: &Self) -> Result<(), QExpError> {
        if self.prime != other.prime {
            Err(QExpError::PrimeMismatch(self.prime, other.prime))
        } else {
            Ok(())
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, QExpError> {
        self.check(other)?;
        let n = self.truncation().min(other.truncation());
        Ok(self.derived(
            (0..=n).map(|i| &self.coeffs[i] + &other.coeffs[i]).collect(),
        ))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, QExpError> {
        self.check(other)?;
        let n = self.truncation().min(other.truncation());
        Ok(self.derived(
            (0..=n).map(|i| &self.coeffs[i] - &other.coeffs[i]).collect(),
        ))
    }

    pub fn scale(&self, c: &Padic) -> Self {
        self.derived(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Cauchy product truncated at the smaller N_q.
    pub fn checked_mul(&self, other: &Self) -> Result<Self, QExpError> {
        self.check(other)?;
        let n = self.truncation().min(other.truncation());
        let mut out = vec![Padic::exact_zero(self.prime); n + 1];
        for i in 0..=n {
            if self.coeffs[i].is_exact_zero() {
                continue;
            }
            for j in 0..=n - i {
                out[i + j] = &out[i + j] + &(&self.coeffs[i] * &other.coeffs[j]);
            }
        }
        Ok(self.derived(out))
    }

    /// Equality of coefficients up to the common truncation and precision.
    pub fn approx_eq(&self, other: &Self) -> bool {
        self.prime == other.prime
            && self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .all(|(a, b)| a.approx_eq(b))
    }

    /// min over n of v(a_n - b_n), i.e. the number of digits to which the
    /// two series agree (capped by the precision actually available).
    pub fn agreement(&self, other: &Self) -> i64 {
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| (a - b).valuation_bound())
            .min()
            .unwrap_or(i64::MAX)
    }

    /// min over n of the absolute precision of a_n.
    pub fn absolute_precision(&self) -> i64 {
        self.coeffs
            .iter()
            .map(Padic::absolute_precision)
            .min()
            .unwrap_or(i64::MAX)
    }

    /// min over n of the valuation lower bound of a_n.
    pub fn valuation_bound(&self) -> i64 {
        self.coeffs
            .iter()
            .map(Padic::valuation_bound)
            .min()
            .unwrap_or(i64::MAX)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Padic::is_zero)
    }

    /// a_n = 0 (to precision) whenever p | n, index 0 included.
    pub fn is_depleted(&self) -> bool {
        self.first_undepleted().is_none()
    }

    fn first_undepleted(&self) -> Option<usize> {
        (0..self.coeffs.len())
            .step_by(self.prime as usize)
            .find(|&n| !self.coeffs[n].is_zero())
    }

    fn require_depleted(&self) -> Result<(), QExpError> {
        match self.first_undepleted() {
            Some(n) => Err(QExpError::NotDepleted(n)),
            None => Ok(()),
        }
    }
}

fn integer(p: u64, precision: u32, a: i64) -> Padic {
    if a == 0 {
        Padic::exact_zero(p)
    } else {
        Padic::from_int(p, a, precision)
    }
}

/// sum a_{np} q^n, truncated at floor(N_q / p).
pub fn op_u(f: &QExpansion) -> QExpansion {
    let p = f.prime as usize;
    let n = f.truncation() / p;
    f.derived((0..=n).map(|i| f.coeffs[i * p].clone()).collect())
}

/// sum a_n q^{pn}, reaching p N_q.
pub fn op_v(f: &QExpansion) -> QExpansion {
    let p = f.prime as usize;
    let n = f.truncation() * p;
    f.derived(
        (0..=n)
            .map(|i| {
                if i % p == 0 {
                    f.coeffs[i / p].clone()
                } else {
                    Padic::exact_zero(f.prime)
                }
            })
            .collect(),
    )
}

fn nebentype_at_p(
    f: &QExpansion,
    chi: Option<&DirichletChar>,
) -> Result<Padic, QExpError> {
    let p = f.prime;
    match chi {
        None => Ok(Padic::exact(p, 1)),
        Some(chi) => {
            if chi.modulus() % p == 0 {
                return Err(QExpError::PrimeDividesLevel(p, chi.modulus()));
            }
            let emb = RootEmbedding::new(p, f.precision);
            Ok(chi.value_padic(p as i64, &emb)?)
        }
    }
}

/// F|T_p = F|U + chi(p) p^(k-1) F|V, truncated at floor(N_q / p).
pub fn op_tp(f: &QExpansion, k: u32, chi: Option<&DirichletChar>) -> Result<QExpansion, QExpError> {
    let p = f.prime;
    let eps_p = nebentype_at_p(f, chi)?;
    let factor = &eps_p * &Padic::exact(p, p as i64).pow(k as i64 - 1)?;
    let u = op_u(f);
    let v = op_v(f).scale(&factor);
    u.checked_add(&v)
}

/// F - VU(F): coefficients with p | n (n = 0 included) are set to zero.
pub fn deplete(f: &QExpansion) -> QExpansion {
    let p = f.prime as usize;
    f.derived(
        f.coeffs
            .iter()
            .enumerate()
            .map(|(n, a)| {
                if n % p == 0 {
                    Padic::exact_zero(f.prime)
                } else {
                    a.clone()
                }
            })
            .collect(),
    )
}

/// F|(1 - a_p V + chi(p) p^(k-1) V^2) after checking T_p F = a_p F.
pub fn deplete_eigen(
    f: &QExpansion,
    a_p: &Padic,
    k: u32,
    chi: Option<&DirichletChar>,
) -> Result<QExpansion, QExpError> {
    let p = f.prime;
    let tp = op_tp(f, k, chi)?;
    let expected = f.scale(a_p);
    if let Some(n) = (0..=tp.truncation()).find(|&n| !tp.coeffs[n].approx_eq(&expected.coeffs[n])) {
        return Err(QExpError::NotEigen(n));
    }
    let eps_p = nebentype_at_p(f, chi)?;
    let factor = &eps_p * &Padic::exact(p, p as i64).pow(k as i64 - 1)?;
    let v1 = op_v(f).scale(a_p);
    let v2 = op_v(&op_v(f)).scale(&factor);
    let out = f.checked_sub(&v1)?.checked_add(&v2)?;
    Ok(out.truncate(f.truncation()))
}

/// q d/dq.
pub fn theta(f: &QExpansion) -> QExpansion {
    f.derived(
        f.coeffs
            .iter()
            .enumerate()
            .map(|(n, a)| a * &Padic::exact(f.prime, n as i64))
            .collect(),
    )
}

/// sum_{p not | n} nu(n) n^(-j) a_n q^n on a depleted series.
pub fn theta_weight(f: &QExpansion, nu: &Weight, j: i64) -> Result<QExpansion, QExpError> {
    f.require_depleted()?;
    let p = f.prime;
    if nu.prime() != p {
        return Err(QExpError::PrimeMismatch(p, nu.prime()));
    }
    let twist = nu.shift(-j);
    let mut out = Vec::with_capacity(f.coeffs.len());
    for (n, a) in f.coeffs.iter().enumerate() {
        if (n as u64).is_multiple_of(p) || a.is_exact_zero() {
            out.push(Padic::exact_zero(p));
            continue;
        }
        let t = Padic::from_int(p, n as i64, f.precision);
        let factor = match twist.as_classical() {
            Some(m) => Padic::exact(p, n as i64).pow(m)?,
            None => weight_eval(&twist, &t)?,
        };
        out.push(a * &factor);
    }
    Ok(f.derived(out))
}

/// a_n -> chi(n mod p) a_n for a character of (Z/p)^*.
pub fn twist_finite(f: &QExpansion, chi: &DirichletChar) -> Result<QExpansion, QExpError> {
    f.require_depleted()?;
    let p = f.prime;
    let emb = RootEmbedding::new(p, f.precision);
    let mut out = Vec::with_capacity(f.coeffs.len());
    for (n, a) in f.coeffs.iter().enumerate() {
        if (n as u64).is_multiple_of(p) {
            out.push(Padic::exact_zero(p));
        } else {
            out.push(a * &chi.value_padic(n as i64, &emb)?);
        }
    }
    Ok(f.derived(out))
}

/// E_{k,chi} = L(1-k, chi) + 2 sum_n sigma_{k-1,chi}(n) q^n.
pub fn eisenstein(
    k: u32,
    chi: &DirichletChar,
    truncation: usize,
    prime: u64,
    precision: u32,
) -> Result<QExpansion, QExpError> {
    if k == 0 || (k % 2) as u8 != chi.parity() {
        return Err(QExpError::Parity(k));
    }
    if k == 2 && chi.is_trivial() {
        return Err(QExpError::TrivialWeightTwo);
    }
    let emb = RootEmbedding::new(prime, precision);
    let constant = emb.rational_cyclo(&l_value(chi, k))?;
    let mut coeffs = vec![Padic::exact_zero(prime); truncation + 1];
    coeffs[0] = constant;
    let chi_values: Vec<Padic> = (0..=truncation)
        .map(|d| chi.value_padic(d as i64, &emb))
        .collect::<Result<_, _>>()?;
    let two = Padic::exact(prime, 2);
    for d in 1..=truncation {
        if chi_values[d].is_zero() {
            continue;
        }
        let term = &chi_values[d] * &Padic::from_int(prime, d as i64, precision).pow(k as i64 - 1)?;
        let term = &term * &two;
        for n in (d..=truncation).step_by(d) {
            coeffs[n] = &coeffs[n] + &term;
        }
    }
    let mut e = QExpansion::new(prime, precision, coeffs)?
        .with_weight(Weight::classical(prime, k as i64));
    if !chi.is_trivial() || chi.modulus() > 1 {
        e = e.with_nebentype(chi.clone());
    }
    Ok(e)
}

/// Hecke eigenvalue of E_{k,chi} at p: 1 + chi(p) p^(k-1).
pub fn eisenstein_eigenvalue(
    k: u32,
    chi: &DirichletChar,
    prime: u64,
    precision: u32,
) -> Result<Padic, QExpError> {
    let emb = RootEmbedding::new(prime, precision);
    let chi_p = chi.value_padic(prime as i64, &emb)?;
    Ok(&Padic::exact(prime, 1) + &(&chi_p * &Padic::exact(prime, prime as i64).pow(k as i64 - 1)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    const M: u32 = 20;

    fn ones(p: u64, n: usize) -> QExpansion {
        QExpansion::from_integers(p, M, &vec![1; n + 1])
    }

    #[test]
    fn u_after_v_is_identity() {
        let f = QExpansion::from_integers(5, M, &[3, 1, 4, 1, 5, 9, 2, 6]);
        assert_eq!(op_u(&op_v(&f)), f);
    }

    #[test]
    fn v_of_q() {
        let q = QExpansion::from_integers(7, M, &[0, 1]);
        let v = op_v(&q);
        assert_eq!(v.truncation(), 7);
        for n in 0..=7 {
            let expected = if n == 7 { 1 } else { 0 };
            assert!(v.coeff(n).approx_eq(&Padic::from_int(7, expected, M)));
        }
    }

    #[test]
    fn depletion_of_all_ones() {
        let d = deplete(&ones(3, 10));
        let kept: Vec<usize> = (0..=10).filter(|&n| !d.coeff(n).is_zero()).collect();
        assert_eq!(kept, vec![1, 2, 4, 5, 7, 8, 10]);
        assert_eq!(deplete(&d), d);
        assert!(op_u(&d).is_zero());
    }

    #[test]
    fn theta_basics() {
        let one = QExpansion::from_integers(5, M, &[1]);
        assert!(theta(&one).is_zero());
        let q6 = QExpansion::from_integers(5, M, &[0, 0, 0, 0, 0, 0, 1]);
        assert!(theta(&q6).coeff(6).approx_eq(&Padic::from_int(5, 6, M)));
    }

    #[test]
    fn theta_weight_classical() {
        let f = deplete(&ones(5, 12));
        let g = theta_weight(&f, &Weight::classical(5, 3), 0).unwrap();
        assert!(g.coeff(7).approx_eq(&Padic::from_int(5, 343, M)));
        let h = theta_weight(&f, &Weight::trivial(5), 3).unwrap();
        let expected = Padic::from_ratio(5, &BigRational::new(1.into(), 343.into()), M);
        assert!(h.coeff(7).approx_eq(&expected));
        assert!(matches!(
            theta_weight(&ones(5, 12), &Weight::trivial(5), 0),
            Err(QExpError::NotDepleted(0))
        ));
    }

    #[test]
    fn eisenstein_weight_four() {
        let e = eisenstein(4, &DirichletChar::trivial(1), 10, 5, M).unwrap();
        let c = Padic::from_ratio(5, &BigRational::new(1.into(), 120.into()), M);
        assert!(e.coeff(0).approx_eq(&c));
        assert!(e.coeff(1).approx_eq(&Padic::from_int(5, 2, M)));
        assert!(e.coeff(2).approx_eq(&Padic::from_int(5, 18, M)));
    }

    #[test]
    fn eisenstein_preconditions() {
        let even = DirichletChar::quadratic(5);
        assert_eq!(eisenstein(1, &even, 10, 7, M), Err(QExpError::Parity(1)));
        assert_eq!(
            eisenstein(2, &DirichletChar::trivial(1), 10, 7, M),
            Err(QExpError::TrivialWeightTwo)
        );
        let odd = DirichletChar::quadratic(3);
        let e = eisenstein(1, &odd, 10, 7, M).unwrap();
        assert!(e.coeff(1).approx_eq(&Padic::from_int(7, 2, M)));
    }

    #[test]
    fn hecke_eigenvalue_on_e4() {
        let e = eisenstein(4, &DirichletChar::trivial(1), 250, 5, M).unwrap();
        let t = op_tp(&e, 4, None).unwrap();
        for n in 1..=t.truncation() {
            let expected = e.coeff(n) * &Padic::exact(5, 126);
            assert!(t.coeff(n).approx_eq(&expected), "n={n}");
        }
    }

    #[test]
    fn tp_rejects_level_divisible_by_p() {
        let f = ones(5, 10);
        let chi = DirichletChar::quadratic(5);
        assert_eq!(op_tp(&f, 2, Some(&chi)), Err(QExpError::PrimeDividesLevel(5, 5)));
    }

    #[test]
    fn quadratic_twist_signs() {
        let f = deplete(&ones(5, 10));
        let g = twist_finite(&f, &DirichletChar::quadratic(5)).unwrap();
        for n in [2usize, 3, 7, 8] {
            assert!(g.coeff(n).approx_eq(&Padic::from_int(5, -1, M)), "n={n}");
        }
        for n in [1usize, 4, 6, 9] {
            assert!(g.coeff(n).approx_eq(&Padic::from_int(5, 1, M)), "n={n}");
        }
    }
}
