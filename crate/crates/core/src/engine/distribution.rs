use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::graph::index_to_bitstring;

/// Measurement counts keyed by bitstring (qubit 1 leftmost).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Distribution {
    #[serde(skip)]
    num_qubits: usize,
    shots: u64,
    counts: BTreeMap<String, u64>,
}

impl Distribution {
    pub fn from_outcomes(num_qubits: usize, outcomes: &[u64]) -> Self {
        let mut by_index: BTreeMap<u64, u64> = BTreeMap::new();
        for &o in outcomes {
            *by_index.entry(o).or_default() += 1;
        }
        Distribution {
            num_qubits,
            shots: outcomes.len() as u64,
            counts: by_index
                .into_iter()
                .map(|(i, c)| (index_to_bitstring(i, num_qubits), c))
                .collect(),
        }
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn shots(&self) -> u64 {
        self.shots
    }

    pub fn counts(&self) -> &BTreeMap<String, u64> {
        &self.counts
    }

    pub fn count(&self, bitstring: &str) -> u64 {
        self.counts.get(bitstring).copied().unwrap_or(0)
    }

    pub fn probability(&self, bitstring: &str) -> f64 {
        if self.shots == 0 {
            return 0.0;
        }
        self.count(bitstring) as f64 / self.shots as f64
    }

    /// Combined empirical probability of a set of bitstrings.
    pub fn mass<S: AsRef<str>>(&self, states: &[S]) -> f64 {
        states.iter().map(|s| self.probability(s.as_ref())).sum()
    }

    /// The `k` most frequent outcomes; ties broken by bitstring order.
    pub fn most_probable(&self, k: usize) -> Vec<(&str, u64)> {
        let mut all: Vec<(&str, u64)> = self.counts.iter().map(|(s, &c)| (s.as_str(), c)).collect();
        all.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(b.0)));
        all.truncate(k);
        all
    }

    /// Sample mean of a per-bitstring value.
    pub fn mean_by(&self, mut f: impl FnMut(&str) -> f64) -> f64 {
        if self.shots == 0 {
            return 0.0;
        }
        let total: f64 = self.counts.iter().map(|(s, &c)| c as f64 * f(s)).sum();
        total / self.shots as f64
    }

    /// Total-variation distance to another distribution.
    pub fn total_variation(&self, other: &Distribution) -> f64 {
        let keys: std::collections::BTreeSet<&String> =
            self.counts.keys().chain(other.counts.keys()).collect();
        0.5 * keys
            .into_iter()
            .map(|k| (self.probability(k) - other.probability(k)).abs())
            .sum::<f64>()
    }

    /// `(bitstring, count, probability)` rows in bitstring order.
    pub fn rows(&self) -> impl Iterator<Item = (&str, u64, f64)> + '_ {
        self.counts
            .iter()
            .map(move |(s, &c)| (s.as_str(), c, c as f64 / self.shots.max(1) as f64))
    }
}
