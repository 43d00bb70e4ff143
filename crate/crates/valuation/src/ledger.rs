use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

/// Worst observed denominator exponent (most negative valuation) per label,
/// standing in for the precision-loss constant that is only known to exist.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DenominatorLedger {
    worst: BTreeMap<String, i64>,
    samples: u64,
}

impl DenominatorLedger {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn record(&mut self, label: &str, valuation: i64) {
        self.samples += 1;
        let loss = (-valuation).max(0);
        let slot = self.worst.entry(label.to_string()).or_insert(0);
        *slot = (*slot).max(loss);
    }

    pub fn worst(&self, label: &str) -> Option<i64> {
        self.worst.get(label).copied()
    }

    pub fn overall(&self) -> i64 {
        self.worst.values().copied().max().unwrap_or(0)
    }

    pub fn samples(&self) -> u64 {
        self.samples
    }

    pub fn merge(&mut self, other: &DenominatorLedger) {
        self.samples += other.samples;
        for (k, v) in &other.worst {
            let slot = self.worst.entry(k.clone()).or_insert(0);
            *slot = (*slot).max(*v);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn keeps_worst() {
        let mut l = DenominatorLedger::new();
        l.record("nabla", 3);
        l.record("nabla", -2);
        l.record("nabla", -1);
        l.record("log", 0);
        assert_eq!(l.worst("nabla"), Some(2));
        assert_eq!(l.worst("log"), Some(0));
        assert_eq!(l.worst("other"), None);
        let mut m = DenominatorLedger::new();
        m.record("log", -5);
        l.merge(&m);
        assert_eq!((l.overall(), l.samples()), (5, 5));
    }
}
