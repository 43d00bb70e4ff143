use cmlp_padic::Padic;
use cmlp_qexp::{op_u, op_v, theta, QExpansion, QExpansionFile};
use cmlp_weights::Weight;
use serde::{Deserialize, Serialize};

use crate::NablaError;

/// sum_j c_j V_{w,j}: a graded vector of q-expansions at the cusp.  All
/// components share p, precision and truncation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WSection {
    base: Weight,
    comps: Vec<QExpansion>,
}

impl WSection {
    pub fn new(base: Weight, comps: Vec<QExpansion>) -> Result<Self, NablaError> {
        let first = comps.first().ok_or(NablaError::EmptySection)?;
        let (p, n) = (first.prime(), first.truncation());
        if base.prime() != p {
            return Err(NablaError::Shape(format!(
                "weight over {} but series over {p}",
                base.prime()
            )));
        }
        if let Some(c) = comps.iter().find(|c| c.prime() != p || c.truncation() != n) {
            return Err(NablaError::Shape(format!(
                "component over p = {} with N_q = {}, expected p = {p}, N_q = {n}",
                c.prime(),
                c.truncation()
            )));
        }
        Ok(WSection { base, comps })
    }

    /// (F, 0, ..., 0) with `degree` + 1 slots.
    pub fn concentrated(base: Weight, f: QExpansion, degree: usize) -> Self {
        let zero = QExpansion::zero(f.prime(), f.precision(), f.truncation());
        let mut comps = vec![f];
        comps.extend(std::iter::repeat_n(zero, degree));
        WSection { base, comps }
    }

    pub fn base(&self) -> &Weight {
        &self.base
    }

    pub fn components(&self) -> &[QExpansion] {
        &self.comps
    }

    pub fn component(&self, j: usize) -> Option<&QExpansion> {
        self.comps.get(j)
    }

    /// Highest stored degree J.
    pub fn degree(&self) -> usize {
        self.comps.len() - 1
    }

    pub fn prime(&self) -> u64 {
        self.comps[0].prime()
    }

    pub fn truncation(&self) -> usize {
        self.comps[0].truncation()
    }

    /// Lower bound for the valuation of every coefficient of component j.
    pub fn component_valuation(&self, j: usize) -> i64 {
        self.comps[j].valuation_bound()
    }

    fn zero_like(&self) -> QExpansion {
        QExpansion::zero(self.prime(), self.comps[0].precision(), self.truncation())
    }

    /// Pad with zero components up to degree J.
    pub fn padded(&self, degree: usize) -> Self {
        let mut comps = self.comps.clone();
        while comps.len() <= degree {
            comps.push(self.zero_like());
        }
        WSection {
            base: self.base.clone(),
            comps,
        }
    }

    /// Agreement of two sections in the same weight, componentwise up to
    /// precision (missing components count as zero).
    pub fn approx_eq(&self, other: &Self) -> bool {
        let j = self.degree().max(other.degree());
        let a = self.padded(j);
        let b = other.padded(j);
        self.base == other.base && a.comps.iter().zip(&b.comps).all(|(x, y)| x.approx_eq(y))
    }

    pub fn map(&self, f: impl Fn(usize, &QExpansion) -> QExpansion) -> Self {
        WSection {
            base: self.base.clone(),
            comps: self
                .comps
                .iter()
                .enumerate()
                .map(|(j, c)| f(j, c))
                .collect(),
        }
    }
}

/// One step of the connection: weight w -> w + 2 and
/// c'_j = theta(c_j) + (w - (j - 1)) c_{j-1}.
pub fn nabla_step(section: &WSection) -> WSection {
    let p = section.prime();
    let w = section.base.analytic();
    let padded = section.padded(section.degree() + 1);
    let mut comps = Vec::with_capacity(padded.comps.len());
    for j in 0..padded.comps.len() {
        let mut c = theta(&padded.comps[j]);
        if j > 0 {
            let lambda = &w - &Padic::exact(p, j as i64 - 1);
            c = c
                .checked_add(&padded.comps[j - 1].scale(&lambda))
                .expect("components share p");
        }
        comps.push(c);
    }
    WSection {
        base: section.base.shift(2),
        comps,
    }
}

pub fn nabla_steps(section: &WSection, m: usize) -> WSection {
    (0..m).fold(section.clone(), |s, _| nabla_step(&s))
}

/// c_j -> p^(-j) V(c_j); intertwines nabla with p V.
pub fn graded_v(section: &WSection) -> WSection {
    section.map(|j, c| op_v(c).scale_shift(-(j as i64)))
}

/// c_j -> p^j U(c_j); intertwines nabla with (1/p) U.
pub fn graded_u(section: &WSection) -> WSection {
    section.map(|j, c| op_u(c).scale_shift(j as i64))
}

pub(crate) trait ShiftExt {
    fn scale_shift(&self, k: i64) -> QExpansion;
}

impl ShiftExt for QExpansion {
    fn scale_shift(&self, k: i64) -> QExpansion {
        self.with_coeffs(self.coeffs().iter().map(|a| a.shift(k)).collect())
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct WSectionFile {
    pub weight: Weight,
    #[serde(rename = "J")]
    pub degree: usize,
    #[serde(rename = "N_q")]
    pub truncation: usize,
    pub p: u64,
    #[serde(rename = "M")]
    pub precision: u32,
    pub components: Vec<QExpansionFile>,
}

impl WSection {
    pub fn to_file(&self) -> WSectionFile {
        WSectionFile {
            weight: self.base.clone(),
            degree: self.degree(),
            truncation: self.truncation(),
            p: self.prime(),
            precision: self.comps[0].precision(),
            components: self.comps.iter().map(QExpansionFile::from).collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<Self, NablaError> {
        let file: WSectionFile =
            serde_json::from_str(text).map_err(|e| NablaError::Shape(e.to_string()))?;
        let comps = file
            .components
            .into_iter()
            .map(QExpansion::try_from)
            .collect::<Result<Vec<_>, _>>()?;
        WSection::new(file.weight, comps)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn series(p: u64) -> QExpansion {
        QExpansion::from_integers(p, 8, &[0, 1, 3, 0, -2, 7, 0, 1, 4, 0, 2])
    }

    #[test]
    fn one_step_from_degree_zero() {
        let f = series(5);
        let k = Weight::classical(5, 4);
        let s = nabla_step(&WSection::concentrated(k.clone(), f.clone(), 0));
        assert_eq!(s.base(), &k.shift(2));
        assert!(s.component(0).unwrap().approx_eq(&theta(&f)));
        assert!(s
            .component(1)
            .unwrap()
            .approx_eq(&f.scale(&Padic::exact(5, 4))));
    }

    #[test]
    fn rejects_mismatched_components() {
        let a = series(5);
        let b = series(7);
        assert!(matches!(
            WSection::new(Weight::classical(5, 2), vec![a, b]),
            Err(NablaError::Shape(_))
        ));
        assert!(matches!(
            WSection::new(Weight::classical(5, 2), vec![]),
            Err(NablaError::EmptySection)
        ));
    }

    #[test]
    fn file_round_trip() {
        let s = WSection::new(Weight::classical(7, 2), vec![series(7), theta(&series(7))]).unwrap();
        let back = WSection::from_json(&s.to_json()).unwrap();
        assert!(back.approx_eq(&s));
    }
}
