use cmlp_dirichlet::DirichletChar;
use cmlp_padic::Padic;
use cmlp_weights::Weight;
use serde::{Deserialize, Serialize};

use crate::{QExpError, QExpansion};

/// On-disk form: a header and a list of (n, a_n) pairs.  Indices that are
/// missing from the list are exact zeros.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QExpansionFile {
    pub p: u64,
    #[serde(rename = "M")]
    pub precision: u32,
    #[serde(rename = "N_q")]
    pub truncation: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weight: Option<Weight>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nebentype: Option<DirichletChar>,
    pub coefficients: Vec<(usize, Padic)>,
}

impl From<&QExpansion> for QExpansionFile {
    fn from(f: &QExpansion) -> Self {
        QExpansionFile {
            p: f.prime(),
            precision: f.precision(),
            truncation: f.truncation(),
            weight: f.weight().cloned(),
            nebentype: f.nebentype().cloned(),
            coefficients: f
                .coeffs()
                .iter()
                .enumerate()
                .filter(|(_, a)| !a.is_exact_zero())
                .map(|(n, a)| (n, a.clone()))
                .collect(),
        }
    }
}

impl TryFrom<QExpansionFile> for QExpansion {
    type Error = QExpError;

    fn try_from(file: QExpansionFile) -> Result<Self, Self::Error> {
        let mut coeffs = vec![Padic::exact_zero(file.p); file.truncation + 1];
        for (n, a) in file.coefficients {
            if n > file.truncation {
                return Err(QExpError::Format(format!(
                    "index {n} beyond N_q = {}",
                    file.truncation
                )));
            }
            coeffs[n] = a;
        }
        let mut f = QExpansion::new(file.p, file.precision, coeffs)?;
        if let Some(w) = file.weight {
            f = f.with_weight(w);
        }
        if let Some(chi) = file.nebentype {
            f = f.with_nebentype(chi);
        }
        Ok(f)
    }
}

impl QExpansion {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&QExpansionFile::from(self)).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<Self, QExpError> {
        let file: QExpansionFile =
            serde_json::from_str(text).map_err(|e| QExpError::Format(e.to_string()))?;
        file.try_into()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip() {
        let f = QExpansion::from_integers(5, 12, &[0, 1, -2, 0, 7, 25])
            .with_weight(Weight::classical(5, 2));
        let text = f.to_json();
        assert_eq!(QExpansion::from_json(&text).unwrap(), f);
    }

    #[test]
    fn rejects_out_of_range_index() {
        let text = r#"{"p":5,"M":4,"N_q":2,"coefficients":[[3,"5^0 * 1 mod 5^4"]]}"#;
        assert!(QExpansion::from_json(text).is_err());
    }
}
