//! Mean/std-anchored quantification of a degree distribution.
//!
//! The degree range is split into four regions anchored at the distribution's
//! mean and standard deviation, each region is bisected into two intervals,
//! and the feature vector collects the probability mass per interval. Because
//! the regions adapt to the distribution's own scale, vectors from graphs of
//! very different sizes stay comparable.

use serde::{Deserialize, Serialize};

use crate::degree::DegreeDistribution;
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Real interval; `right < left` encodes a degenerate (empty) interval.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub left: f64,
    pub right: f64,
}

impl Interval {
    pub fn new(left: f64, right: f64) -> Interval {
        Interval { left, right }
    }

    /// Length clamped at zero, so degenerate intervals measure 0.
    pub fn length(&self) -> f64 {
        (self.right - self.left).max(0.0)
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.left + self.right)
    }
}

/// The four regions and eight intervals carved out of a degree range.
///
/// Boundaries are `min, μ−σ, μ, μ+σ, max` in that order, kept exactly as
/// computed: a boundary may fall outside `[min, max]`, in which case the
/// affected outer intervals simply carry no probability mass.
#[derive(Debug, Clone, PartialEq)]
pub struct RegionPartition {
    pub regions: [Interval; 4],
    pub region_lengths: [f64; 4],
    pub intervals: [Interval; 8],
}

impl RegionPartition {
    /// Builds the partition directly from summary statistics.
    pub fn from_stats(min: f64, max: f64, mean: f64, std: f64) -> RegionPartition {
        let bounds = [min, mean - std, mean, mean + std, max];
        let regions = [
            Interval::new(bounds[0], bounds[1]),
            Interval::new(bounds[1], bounds[2]),
            Interval::new(bounds[2], bounds[3]),
            Interval::new(bounds[3], bounds[4]),
        ];
        let region_lengths = [
            regions[0].length(),
            regions[1].length(),
            regions[2].length(),
            regions[3].length(),
        ];
        let mut intervals = [Interval::new(0.0, 0.0); 8];
        for (r, region) in regions.iter().enumerate() {
            let mid = region.midpoint();
            intervals[2 * r] = Interval::new(region.left, mid);
            intervals[2 * r + 1] = Interval::new(mid, region.right);
        }
        RegionPartition {
            regions,
            region_lengths,
            intervals,
        }
    }
}

/// Splits the distribution's degree range into 4 regions and 8 intervals.
pub fn build_regions(dist: &DegreeDistribution) -> RegionPartition {
    RegionPartition::from_stats(
        dist.min_degree() as f64,
        dist.max_degree() as f64,
        dist.mean(),
        dist.std(),
    )
}

/// Probability that a node's degree lies in `interval`.
///
/// Intervals are half-open on the right; the last interval of the partition
/// (`is_last`) additionally includes its right endpoint so the maximum degree
/// is counted exactly once.
pub fn interval_degree_probability(
    dist: &DegreeDistribution,
    interval: Interval,
    is_last: bool,
) -> f64 {
    dist.mass_in(interval.left, interval.right, is_last)
}

/// The 8-element quantification vector of a degree distribution.
///
/// Serializes as a plain JSON array of 8 probabilities.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DdqcFeatures {
    q: [f64; 8],
}

impl DdqcFeatures {
    pub fn from_values(q: [f64; 8]) -> DdqcFeatures {
        DdqcFeatures { q }
    }

    pub fn values(&self) -> &[f64; 8] {
        &self.q
    }
}

/// Computes the quantification vector from a distribution already in hand.
pub fn features_from_distribution(dist: &DegreeDistribution) -> DdqcFeatures {
    let partition = build_regions(dist);
    let mut q = [0.0; 8];
    for (i, interval) in partition.intervals.iter().enumerate() {
        q[i] = interval_degree_probability(dist, *interval, i == 7);
    }
    DdqcFeatures { q }
}

/// Computes the quantification vector of a graph's degree distribution.
pub fn extract_features(g: &Graph) -> Result<DdqcFeatures> {
    let dist = DegreeDistribution::from_graph(g)?;
    Ok(features_from_distribution(&dist))
}

/// L1 distance between two equal-length feature vectors.
pub fn l1_distance(a: &[f64], b: &[f64]) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::Domain(format!(
            "feature length mismatch: {} vs {}",
            a.len(),
            b.len()
        )));
    }
    Ok(a.iter().zip(b).map(|(x, y)| (x - y).abs()).sum())
}

/// L1 distance between two quantification vectors; lies in [0, 2].
pub fn ddqc_distance(a: &DdqcFeatures, b: &DdqcFeatures) -> f64 {
    l1_distance(&a.q, &b.q).expect("fixed-size vectors")
}
