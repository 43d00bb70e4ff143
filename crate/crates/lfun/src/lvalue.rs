use cmlp_hecke::HeckeChar;
use cmlp_padic::{CycloPadic, Padic, PadicCtx};
use cmlp_valuation::{ValProfile, Q};
use serde::{Deserialize, Serialize};

use crate::LfunError;

/// value * Omega_{p,n}^period_exponent, value in Q_p(zeta_order).
#[derive(Clone, Debug)]
pub struct LValue {
    pub value: CycloPadic,
    pub period_exponent: i64,
    pub character: String,
    pub oracle: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LValueFile {
    pub order: u64,
    pub coeffs: Vec<Padic>,
    pub period_exponent: i64,
    /// smallest absolute precision among the coefficients
    pub precision: i64,
    pub character: String,
    pub oracle: String,
}

pub(crate) fn character_id(chi: &HeckeChar) -> String {
    let classes: Vec<String> = chi
        .class_values
        .iter()
        .map(|r| format!("{}/{}", r.num, r.den))
        .collect();
    let eps: Vec<String> = chi
        .nebentype
        .images()
        .iter()
        .map(|r| format!("{}/{}", r.num, r.den))
        .collect();
    format!(
        "({},{})[{}]eps[{}]",
        chi.infinity.0,
        chi.infinity.1,
        classes.join(","),
        eps.join(",")
    )
}

impl LValue {
    pub fn with_period(mut self, exponent: i64) -> Self {
        self.period_exponent = exponent;
        self
    }

    pub fn precision(&self) -> i64 {
        self.value.absolute_precision()
    }

    /// Valuation contributed by the period power.
    pub fn period_valuation(&self, profile: &ValProfile) -> Q {
        profile.period * self.period_exponent as i128
    }

    pub fn agrees(&self, other: &LValue) -> bool {
        self.period_exponent == other.period_exponent && self.value.approx_eq(&other.value)
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    pub fn to_file(&self) -> LValueFile {
        LValueFile {
            order: self.value.order(),
            coeffs: self.value.coeffs().to_vec(),
            period_exponent: self.period_exponent,
            precision: self.precision(),
            character: self.character.clone(),
            oracle: self.oracle.clone(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<Self, LfunError> {
        let f: LValueFile =
            serde_json::from_str(text).map_err(|e| LfunError::Format(e.to_string()))?;
        let prime = f
            .coeffs
            .first()
            .map(Padic::prime)
            .ok_or_else(|| LfunError::Format("no coefficients".into()))?;
        let ctx = PadicCtx { prime, precision: cmlp_padic::max_precision(prime) };
        Ok(LValue {
            value: CycloPadic::from_coeffs(f.order, ctx, f.coeffs),
            period_exponent: f.period_exponent,
            character: f.character,
            oracle: f.oracle,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use cmlp_valuation::{canonical_valuations, LocalCase};

    #[test]
    fn json_and_period() {
        let ctx = PadicCtx { prime: 5, precision: 12 };
        let v = LValue {
            value: CycloPadic::zeta_power(4, 1, ctx).scale(&Padic::from_int(5, 7, 12)),
            period_exponent: -3,
            character: "x".into(),
            oracle: "y".into(),
        };
        let back = LValue::from_json(&v.to_json()).unwrap();
        assert!(back.agrees(&v));
        let prof = canonical_valuations(5, LocalCase::Inert, 2).unwrap();
        assert_eq!(v.period_valuation(&prof), Q::new(-3, 120));
        assert!(LValue::from_json("{}").is_err());
    }
}
