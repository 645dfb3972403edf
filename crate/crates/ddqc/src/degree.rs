//! Degree distribution of a graph: exact counts plus the empirical pmf/cdf.

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Empirical degree distribution, stored as exact integer counts per degree.
///
/// The pmf and cdf are derived views over the counts, so they sum to 1 by
/// construction (up to a final rounding) and the cdf is non-decreasing.
#[derive(Debug, Clone, PartialEq)]
pub struct DegreeDistribution {
    /// Distinct degrees in ascending order with their node counts.
    support: Vec<(u32, u64)>,
    /// Total number of nodes.
    total: u64,
    mean: f64,
    std: f64,
}

impl DegreeDistribution {
    pub fn from_graph(graph: &Graph) -> Result<DegreeDistribution> {
        Self::from_degrees(graph.degree_sequence())
    }

    /// Builds the distribution from a raw degree sequence.
    pub fn from_degrees<I>(degrees: I) -> Result<DegreeDistribution>
    where
        I: IntoIterator<Item = usize>,
    {
        let mut sorted: Vec<usize> = degrees.into_iter().collect();
        if sorted.is_empty() {
            return Err(Error::Domain(
                "degree distribution is undefined for an empty graph".into(),
            ));
        }
        sorted.sort_unstable();

        let mut support: Vec<(u32, u64)> = Vec::new();
        for d in &sorted {
            let d = u32::try_from(*d).expect("degree exceeds u32");
            match support.last_mut() {
                Some((last, count)) if *last == d => *count += 1,
                _ => support.push((d, 1)),
            }
        }
        let total = sorted.len() as u64;

        // Two-pass moments over the counts keep the std numerically stable.
        let n = total as f64;
        let mean = support
            .iter()
            .map(|&(d, c)| d as f64 * c as f64)
            .sum::<f64>()
            / n;
        let var = support
            .iter()
            .map(|&(d, c)| {
                let diff = d as f64 - mean;
                diff * diff * c as f64
            })
            .sum::<f64>()
            / n;
        let std = var.max(0.0).sqrt();

        Ok(DegreeDistribution {
            support,
            total,
            mean,
            std,
        })
    }

    /// Distinct degrees with counts, ascending by degree.
    pub fn support(&self) -> &[(u32, u64)] {
        &self.support
    }

    /// Number of nodes the distribution was built from.
    pub fn node_count(&self) -> u64 {
        self.total
    }

    pub fn min_degree(&self) -> u32 {
        self.support[0].0
    }

    pub fn max_degree(&self) -> u32 {
        self.support[self.support.len() - 1].0
    }

    /// Mean of the degree sequence.
    pub fn mean(&self) -> f64 {
        self.mean
    }

    /// Population standard deviation of the degree sequence.
    pub fn std(&self) -> f64 {
        self.std
    }

    /// Empirical probability of exactly degree `d`.
    pub fn pmf(&self, d: u32) -> f64 {
        match self.support.binary_search_by_key(&d, |&(deg, _)| deg) {
            Ok(i) => self.support[i].1 as f64 / self.total as f64,
            Err(_) => 0.0,
        }
    }

    /// Empirical cumulative probability `P(D <= x)` for a real threshold.
    pub fn cdf_at(&self, x: f64) -> f64 {
        let mut acc = 0u64;
        for &(d, c) in &self.support {
            if d as f64 <= x {
                acc += c;
            } else {
                break;
            }
        }
        acc as f64 / self.total as f64
    }

    /// Probability mass on degrees in `[left, right)`, or `[left, right]`
    /// when `closed_right` is set. Returns 0 for an empty interval.
    pub fn mass_in(&self, left: f64, right: f64, closed_right: bool) -> f64 {
        if right < left || (!closed_right && right <= left) {
            return 0.0;
        }
        let mut acc = 0u64;
        for &(d, c) in &self.support {
            let d = d as f64;
            if d < left {
                continue;
            }
            let inside = if closed_right { d <= right } else { d < right };
            if inside {
                acc += c;
            } else {
                break;
            }
        }
        acc as f64 / self.total as f64
    }

    /// Count of nodes whose degree is at least `d`.
    pub fn tail_count(&self, d: u32) -> u64 {
        self.support
            .iter()
            .filter(|&&(deg, _)| deg >= d)
            .map(|&(_, c)| c)
            .sum()
    }
}
