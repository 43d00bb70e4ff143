use std::collections::BTreeMap;

use cmlp_padic::{exp, log, Padic};
use cmlp_quadform::{splitting_type, HGroup, SplittingType};
use cmlp_valuation::LocalCase;
use cmlp_weights::{weight_combine, Weight};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::LfunError;

/// n, n-1, n-2: the level of the canonical-tower curve the CM point uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum LevelTag {
    #[serde(rename = "n")]
    Top,
    #[serde(rename = "n-1")]
    Minus1,
    #[serde(rename = "n-2")]
    Minus2,
}

impl LevelTag {
    pub fn offset(self) -> u32 {
        match self {
            LevelTag::Top => 0,
            LevelTag::Minus1 => 1,
            LevelTag::Minus2 => 2,
        }
    }

    pub const ALL: [LevelTag; 3] = [LevelTag::Top, LevelTag::Minus1, LevelTag::Minus2];
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleContext {
    pub prime: u64,
    pub case: LocalCase,
    /// p-adic valuation of c
    pub n: u32,
    /// weight of the form
    pub k: i64,
    pub field_disc: i64,
    pub conductor: u64,
    pub level: u64,
    pub precision: u32,
}

impl OracleContext {
    pub fn for_group(hg: &HGroup, prime: u64, k: i64, precision: u32) -> Result<Self, LfunError> {
        let o = hg.order();
        let case = match splitting_type(o.field_disc, prime)? {
            SplittingType::Inert => LocalCase::Inert,
            SplittingType::Ramified => LocalCase::Ramified,
            SplittingType::Split => return Err(LfunError::Split(prime)),
        };
        let mut n = 0;
        let mut c = o.conductor;
        while c.is_multiple_of(prime) {
            c /= prime;
            n += 1;
        }
        Ok(OracleContext {
            prime,
            case,
            n,
            k,
            field_disc: o.field_disc,
            conductor: o.conductor,
            level: hg.level(),
            precision,
        })
    }

    pub fn check_group(&self, hg: &HGroup) -> Result<(), LfunError> {
        let o = hg.order();
        if o.field_disc != self.field_disc || o.conductor != self.conductor || hg.level() != self.level {
            return Err(LfunError::Context(format!(
                "oracle built for (D, c, N) = ({}, {}, {}), group is ({}, {}, {})",
                self.field_disc, self.conductor, self.level, o.field_disc, o.conductor, hg.level()
            )));
        }
        Ok(())
    }
}

/// Evaluation of the interpolated operator at the CM point attached to an
/// element of H(c, N).  Implementations are pure.
pub trait CmOracle: Sync {
    fn context(&self) -> &OracleContext;
    fn eval(&self, element: usize, level: LevelTag, nu: &Weight) -> Result<Padic, LfunError>;
    fn name(&self) -> String;
}

/// Oracles that also evaluate at r a for units r = 1 mod p^n, where the
/// value is expected to pick up (k + 2 nu)(r).
pub trait EquivariantOracle: CmOracle {
    fn eval_twisted(&self, element: usize, nu: &Weight, r: &Padic) -> Result<Padic, LfunError>;
}

#[derive(Clone, Debug)]
pub struct ConstantOracle {
    pub context: OracleContext,
    pub value: Padic,
}

impl CmOracle for ConstantOracle {
    fn context(&self) -> &OracleContext {
        &self.context
    }
    fn eval(&self, _: usize, _: LevelTag, _: &Weight) -> Result<Padic, LfunError> {
        Ok(self.value.clone())
    }
    fn name(&self) -> String {
        "constant".into()
    }
}

/// Seeded pseudo-random base values; twisting by r multiplies by
/// exp(a log r) with a the analytic parameter of k + 2 nu.
#[derive(Clone, Debug)]
pub struct MockOracle {
    context: OracleContext,
    seed: u64,
    values: BTreeMap<LevelTag, Vec<Padic>>,
}

impl MockOracle {
    pub fn new(context: OracleContext, elements: usize, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = context.prime;
        let prec = context.precision;
        let mut values = BTreeMap::new();
        for tag in LevelTag::ALL {
            let v = (0..elements)
                .map(|_| Padic::from_int(p, rng.random_range(-1_000_000..=1_000_000), prec))
                .collect();
            values.insert(tag, v);
        }
        MockOracle { context, seed, values }
    }

    fn base(&self, element: usize, level: LevelTag) -> Result<Padic, LfunError> {
        self.values[&level]
            .get(element)
            .cloned()
            .ok_or_else(|| LfunError::MissingLevel { element, level: format!("{level:?}") })
    }
}

impl CmOracle for MockOracle {
    fn context(&self) -> &OracleContext {
        &self.context
    }
    fn eval(&self, element: usize, level: LevelTag, _: &Weight) -> Result<Padic, LfunError> {
        self.base(element, level)
    }
    fn name(&self) -> String {
        format!("mock:{}", self.seed)
    }
}

impl EquivariantOracle for MockOracle {
    fn eval_twisted(&self, element: usize, nu: &Weight, r: &Padic) -> Result<Padic, LfunError> {
        let p = self.context.prime;
        let w = weight_combine(&Weight::classical(p, self.context.k), nu)?;
        let factor = exp(&(&w.analytic() * &log(r)?))?;
        Ok(&self.base(element, LevelTag::Top)? * &factor)
    }
}

/// Coefficients c_{a,d} of a family sum_d c_{a,d} u^d in the weight
/// variable u of the form.
#[derive(Clone, Debug)]
pub struct PolynomialFamily {
    pub context: OracleContext,
    pub coeffs: Vec<Vec<Padic>>,
}

impl PolynomialFamily {
    pub fn random(context: OracleContext, elements: usize, degree: usize, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (p, prec) = (context.prime, context.precision);
        let coeffs = (0..elements)
            .map(|_| {
                (0..=degree)
                    .map(|_| Padic::from_int(p, rng.random_range(-10_000..=10_000), prec))
                    .collect()
            })
            .collect();
        PolynomialFamily { context, coeffs }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.iter().map(|c| c.len().saturating_sub(1)).max().unwrap_or(0)
    }

    pub fn at(&self, element: usize, u: &Padic) -> Padic {
        let mut acc = Padic::exact_zero(self.context.prime);
        for c in self.coeffs[element].iter().rev() {
            acc = &(&acc * u) + c;
        }
        acc
    }

    /// The one-variable oracle at weight u.
    pub fn specialize(&self, u: &Padic) -> FileOracle {
        let entries = (0..self.coeffs.len())
            .map(|i| OracleEntry { element: i, level: LevelTag::Top, value: self.at(i, u) })
            .collect();
        FileOracle::from_file(OracleFile { context: self.context.clone(), entries })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleEntry {
    pub element: usize,
    pub level: LevelTag,
    pub value: Padic,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleFile {
    pub context: OracleContext,
    pub entries: Vec<OracleEntry>,
}

/// Table-backed oracle; values do not depend on nu.
#[derive(Clone, Debug)]
pub struct FileOracle {
    file: OracleFile,
    table: BTreeMap<(usize, LevelTag), Padic>,
}

impl FileOracle {
    pub fn from_file(file: OracleFile) -> Self {
        let table = file
            .entries
            .iter()
            .map(|e| ((e.element, e.level), e.value.clone()))
            .collect();
        FileOracle { file, table }
    }

    pub fn from_json(text: &str) -> Result<Self, LfunError> {
        let file: OracleFile =
            serde_json::from_str(text).map_err(|e| LfunError::Format(e.to_string()))?;
        Ok(Self::from_file(file))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.file).expect("serializable")
    }

    pub fn file(&self) -> &OracleFile {
        &self.file
    }
}

impl CmOracle for FileOracle {
    fn context(&self) -> &OracleContext {
        &self.file.context
    }
    fn eval(&self, element: usize, level: LevelTag, _: &Weight) -> Result<Padic, LfunError> {
        self.table
            .get(&(element, level))
            .cloned()
            .ok_or_else(|| LfunError::MissingLevel { element, level: format!("{level:?}") })
    }
    fn name(&self) -> String {
        "file".into()
    }
}
