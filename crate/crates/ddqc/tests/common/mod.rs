//! Brute-force reference implementations shared by the property and
//! acceptance suites. These recount raw degree sequences with plain linear
//! scans and never touch the library's aggregated-support counting paths.
#![allow(dead_code)]

use ddqc::baselines::PercentileBinning;
use ddqc::degree::DegreeDistribution;

pub const TOL: f64 = 1e-12;

pub fn dist(degrees: &[usize]) -> DegreeDistribution {
    DegreeDistribution::from_degrees(degrees.iter().copied()).expect("non-empty by construction")
}

/// min, max, mean, std with the same canonical arithmetic the library uses:
/// moments taken over the sorted aggregated support. The boundaries must be
/// the same floats bit for bit, otherwise a degree sitting exactly on one
/// could legitimately land in a different interval. What the references
/// below recompute independently is the assignment of mass to intervals.
pub fn summary_stats(degrees: &[usize]) -> (f64, f64, f64, f64) {
    let mut sorted = degrees.to_vec();
    sorted.sort_unstable();
    let mut support: Vec<(f64, f64)> = Vec::new();
    for &d in &sorted {
        let d = d as f64;
        match support.last_mut() {
            Some((last, count)) if *last == d => *count += 1.0,
            _ => support.push((d, 1.0)),
        }
    }
    let n = degrees.len() as f64;
    let mean = support.iter().map(|&(d, c)| d * c).sum::<f64>() / n;
    let var = support
        .iter()
        .map(|&(d, c)| (d - mean) * (d - mean) * c)
        .sum::<f64>()
        / n;
    (
        sorted[0] as f64,
        *sorted.last().unwrap() as f64,
        mean,
        var.max(0.0).sqrt(),
    )
}

fn count_between(degrees: &[usize], a: f64, b: f64, closed: bool) -> f64 {
    degrees
        .iter()
        .filter(|&&d| {
            let d = d as f64;
            d >= a && if closed { d <= b } else { d < b }
        })
        .count() as f64
}

/// Brute-force quantification: build the eight interval bounds from the
/// summary stats, then count raw degrees with a linear scan per interval.
pub fn reference_ddqc(degrees: &[usize]) -> [f64; 8] {
    let (min, max, mean, std) = summary_stats(degrees);
    let bounds = [min, mean - std, mean, mean + std, max];
    let n = degrees.len() as f64;
    let mut q = [0.0f64; 8];
    for r in 0..4 {
        let (left, right) = (bounds[r], bounds[r + 1]);
        let mid = 0.5 * (left + right);
        for (half, &(a, b)) in [(left, mid), (mid, right)].iter().enumerate() {
            let idx = 2 * r + half;
            q[idx] = count_between(degrees, a, b, idx == 7) / n;
        }
    }
    q
}

/// Brute-force percentile bins: same nine edges, counting by linear scan.
pub fn reference_percentiles(degrees: &[usize], binning: PercentileBinning) -> [f64; 8] {
    let (min, max, _, _) = summary_stats(degrees);
    let mut edges = [0.0f64; 9];
    for (i, e) in edges.iter_mut().enumerate() {
        let t = i as f64 / 8.0;
        *e = match binning {
            PercentileBinning::Linear => min + (max - min) * t,
            PercentileBinning::Log => {
                let (lo, hi) = ((min + 1.0).ln(), (max + 1.0).ln());
                (lo + (hi - lo) * t).exp() - 1.0
            }
        };
    }
    edges[0] = min;
    edges[8] = max;
    let n = degrees.len() as f64;
    let mut p = [0.0f64; 8];
    for i in 0..8 {
        p[i] = count_between(degrees, edges[i], edges[i + 1], i == 7) / n;
    }
    p
}

/// KS distance evaluated the slow way: both empirical CDFs compared at every
/// integer up to the larger maximum.
pub fn reference_ks(a: &[usize], b: &[usize]) -> f64 {
    let max = a.iter().chain(b).copied().max().unwrap();
    let cdf = |s: &[usize], x: usize| s.iter().filter(|&&d| d <= x).count() as f64 / s.len() as f64;
    (0..=max)
        .map(|x| (cdf(a, x) - cdf(b, x)).abs())
        .fold(0.0, f64::max)
}

pub fn assert_componentwise_close(actual: &[f64], expected: &[f64]) {
    assert_eq!(actual.len(), expected.len());
    for (i, (&a, &e)) in actual.iter().zip(expected).enumerate() {
        assert!(
            (a - e).abs() <= TOL,
            "component {i}: {a} vs {e} differs by {}",
            (a - e).abs()
        );
    }
}
