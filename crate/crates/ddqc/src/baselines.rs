//! Comparison baselines: two-sample Kolmogorov-Smirnov distance, discrete
//! power-law fits with automatic cutoff selection, and fixed-bin percentile
//! features over the degree range.

use serde::{Deserialize, Serialize};

use crate::degree::DegreeDistribution;
use crate::error::{Error, Result};
use crate::quantify::l1_distance;

/// Two-sample Kolmogorov-Smirnov distance between degree distributions:
/// the maximum absolute difference of the empirical CDFs, evaluated over the
/// union of both supports. Exact for step CDFs; result in [0, 1].
pub fn ks_distance(a: &DegreeDistribution, b: &DegreeDistribution) -> f64 {
    let (sa, sb) = (a.support(), b.support());
    let (na, nb) = (a.node_count() as f64, b.node_count() as f64);
    let (mut i, mut j) = (0usize, 0usize);
    let (mut ca, mut cb) = (0u64, 0u64);
    let mut best = 0.0f64;
    while i < sa.len() || j < sb.len() {
        let da = sa.get(i).map(|&(d, _)| d);
        let db = sb.get(j).map(|&(d, _)| d);
        let d = match (da, db) {
            (Some(x), Some(y)) => x.min(y),
            (Some(x), None) => x,
            (None, Some(y)) => y,
            (None, None) => unreachable!(),
        };
        if da == Some(d) {
            ca += sa[i].1;
            i += 1;
        }
        if db == Some(d) {
            cb += sb[j].1;
            j += 1;
        }
        let diff = (ca as f64 / na - cb as f64 / nb).abs();
        if diff > best {
            best = diff;
        }
    }
    best
}

/// Discrete power-law fit over the degree tail `d >= xmin`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PowerLawFit {
    /// Maximum-likelihood exponent.
    pub gamma: f64,
    /// Tail cutoff the fit applies from.
    pub xmin: u32,
    /// KS statistic between the empirical tail and the fitted model.
    pub ks_gof: f64,
}

/// Fits a discrete power law `p(d) ∝ d^{-γ}` by maximum likelihood.
///
/// Every distinct degree is tried as the tail cutoff; the cutoff whose fitted
/// model has the smallest KS statistic against the empirical tail wins, with
/// ties resolved toward the smaller cutoff. The likelihood is concave in γ,
/// so a golden-section search finds the optimum deterministically.
pub fn fit_power_law(dist: &DegreeDistribution) -> Result<PowerLawFit> {
    let tail: Vec<(u32, u64)> = dist
        .support()
        .iter()
        .copied()
        .filter(|&(d, _)| d >= 1)
        .collect();
    if tail.len() < 2 {
        return Err(Error::Fit(
            "degenerate support: need at least two distinct degrees >= 1".into(),
        ));
    }

    let mut best: Option<PowerLawFit> = None;
    // The last distinct degree cannot start a tail: a single-valued tail has
    // no finite likelihood maximum.
    for c in 0..tail.len() - 1 {
        let xmin = tail[c].0;
        let slice = &tail[c..];
        let n: u64 = slice.iter().map(|&(_, cnt)| cnt).sum();
        let sum_log: f64 = slice
            .iter()
            .map(|&(d, cnt)| (d as f64).ln() * cnt as f64)
            .sum();
        let gamma = max_likelihood_gamma(n as f64, sum_log, xmin as f64);
        let ks_gof = tail_ks(slice, n as f64, gamma, xmin);
        if best.map_or(true, |b| ks_gof < b.ks_gof) {
            best = Some(PowerLawFit {
                gamma,
                xmin,
                ks_gof,
            });
        }
    }
    Ok(best.expect("at least one cutoff candidate"))
}

/// Distance between fits: absolute difference of exponents.
pub fn powerlaw_distance(a: &PowerLawFit, b: &PowerLawFit) -> f64 {
    (a.gamma - b.gamma).abs()
}

fn max_likelihood_gamma(n: f64, sum_log: f64, xmin: f64) -> f64 {
    // ℓ(γ) = -n·ln ζ(γ, xmin) - γ·Σ ln d  over the tail sample.
    let ll = |gamma: f64| -n * hurwitz_zeta(gamma, xmin).ln() - gamma * sum_log;
    golden_max(ll, 1.0 + 1e-6, 30.0)
}

/// Golden-section maximizer for a unimodal function on [a, b].
fn golden_max(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
    const INV_PHI: f64 = 0.618_033_988_749_894_8;
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    for _ in 0..200 {
        if b - a < 1e-10 {
            break;
        }
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    0.5 * (a + b)
}

/// KS statistic between the empirical tail and the fitted model, evaluated
/// exactly at every integer degree in [xmin, dmax].
fn tail_ks(tail: &[(u32, u64)], n: f64, gamma: f64, xmin: u32) -> f64 {
    let dmax = tail[tail.len() - 1].0;
    // Model survival P(D > d) = ζ(γ, d+1) / ζ(γ, xmin), produced by walking
    // the recurrence ζ(γ, d) = d^{-γ} + ζ(γ, d+1) down from dmax.
    let mut z_xmin = hurwitz_zeta(gamma, dmax as f64 + 1.0);
    for d in (xmin..=dmax).rev() {
        z_xmin += (d as f64).powf(-gamma);
    }
    let mut z_above = hurwitz_zeta(gamma, dmax as f64 + 1.0);
    let mut idx = tail.len();
    let mut gt = 0u64;
    let mut best = 0.0f64;
    for d in (xmin..=dmax).rev() {
        while idx > 0 && tail[idx - 1].0 > d {
            gt += tail[idx - 1].1;
            idx -= 1;
        }
        let diff = (z_above / z_xmin - gt as f64 / n).abs();
        if diff > best {
            best = diff;
        }
        z_above += (d as f64).powf(-gamma);
    }
    best
}

/// Hurwitz zeta ζ(s, a) = Σ_{k≥0} (k+a)^{-s} for s > 1, a > 0, via
/// Euler-Maclaurin summation with Bernoulli corrections through B12.
pub(crate) fn hurwitz_zeta(s: f64, a: f64) -> f64 {
    debug_assert!(s > 1.0 && a > 0.0);
    let n = (18.0 - a).ceil().max(0.0) as u64;
    let mut sum = 0.0;
    for k in 0..n {
        sum += (a + k as f64).powf(-s);
    }
    let x = a + n as f64;
    let mut acc = sum + x.powf(1.0 - s) / (s - 1.0) + 0.5 * x.powf(-s);
    const COEF: [f64; 6] = [
        1.0 / 12.0,
        -1.0 / 720.0,
        1.0 / 30240.0,
        -1.0 / 1209600.0,
        1.0 / 47900160.0,
        -691.0 / 1307674368000.0,
    ];
    let mut poch = s;
    let mut xp = x.powf(-s - 1.0);
    for (j, c) in COEF.iter().enumerate() {
        acc += c * poch * xp;
        let shift = s + 2.0 * j as f64;
        poch *= (shift + 1.0) * (shift + 2.0);
        xp /= x * x;
    }
    acc
}

/// Which axis the percentile bins are laid out on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PercentileBinning {
    /// Equal-width bins over the raw degree range.
    Linear,
    /// Equal-width bins over log(degree + 1).
    Log,
}

/// The 8-bin percentile feature vector.
///
/// Serializes as a plain JSON array of 8 probabilities.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PercentileFeatures {
    p: [f64; 8],
}

impl PercentileFeatures {
    pub fn from_values(p: [f64; 8]) -> PercentileFeatures {
        PercentileFeatures { p }
    }

    pub fn values(&self) -> &[f64; 8] {
        &self.p
    }
}

/// Splits `[min_degree, max_degree]` into 8 equal-width bins and sums the
/// pmf mass per bin. Bins are half-open; the last is right-closed so the
/// maximum degree is always counted.
pub fn percentile_features(dist: &DegreeDistribution) -> PercentileFeatures {
    percentile_features_with(dist, PercentileBinning::Linear)
}

/// Percentile features with an explicit binning axis.
pub fn percentile_features_with(
    dist: &DegreeDistribution,
    binning: PercentileBinning,
) -> PercentileFeatures {
    let (min, max) = (dist.min_degree() as f64, dist.max_degree() as f64);
    // Edges are computed once and shared between neighboring bins, so the
    // bins partition the range regardless of rounding in the axis transform.
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
    let mut p = [0.0f64; 8];
    for i in 0..8 {
        p[i] = dist.mass_in(edges[i], edges[i + 1], i == 7);
    }
    PercentileFeatures { p }
}

/// L1 distance between percentile vectors; lies in [0, 2].
pub fn percentile_distance(a: &PercentileFeatures, b: &PercentileFeatures) -> f64 {
    l1_distance(&a.p, &b.p).expect("fixed-size vectors")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::rng_from_seed;
    use rand::Rng;

    const EPS: f64 = 1e-9;

    fn dist_of(degrees: Vec<usize>) -> DegreeDistribution {
        DegreeDistribution::from_degrees(degrees).unwrap()
    }

    #[test]
    fn ks_hand_values() {
        let p3 = dist_of(vec![1, 2, 1]);
        assert_eq!(ks_distance(&p3, &p3), 0.0);

        let ones = dist_of(vec![1, 1, 1, 1]);
        let twos = dist_of(vec![2, 2]);
        assert!((ks_distance(&ones, &twos) - 1.0).abs() < EPS);
        assert!((ks_distance(&p3, &ones) - 1.0 / 3.0).abs() < EPS);
        assert!((ks_distance(&ones, &p3) - 1.0 / 3.0).abs() < EPS);
    }

    #[test]
    fn zeta_reference_values() {
        let pi2_6 = std::f64::consts::PI * std::f64::consts::PI / 6.0;
        assert!((hurwitz_zeta(2.0, 1.0) - pi2_6).abs() < 1e-12);
        assert!((hurwitz_zeta(3.0, 1.0) - 1.2020569031595943).abs() < 1e-12);
        assert!((hurwitz_zeta(1.5, 1.0) - 2.612375348685488).abs() < 1e-12);
        assert!((hurwitz_zeta(2.0, 2.0) - (pi2_6 - 1.0)).abs() < 1e-12);
        // Recurrence consistency at an offset the series expansion must match.
        let direct = hurwitz_zeta(2.5, 7.0);
        let stepped = hurwitz_zeta(2.5, 8.0) + 7.0f64.powf(-2.5);
        assert!((direct - stepped).abs() < 1e-14);
    }

    /// Draws `n` samples from a discrete power law with the given exponent
    /// (cutoff 1) by inverting a cumulative table.
    fn sample_power_law(gamma: f64, n: usize, seed: u64) -> Vec<usize> {
        let z = hurwitz_zeta(gamma, 1.0);
        let cap = 1_000_000usize;
        let mut cdf = Vec::with_capacity(cap);
        let mut acc = 0.0;
        for d in 1..=cap {
            acc += (d as f64).powf(-gamma) / z;
            cdf.push(acc);
            if acc >= 1.0 - 1e-9 {
                break;
            }
        }
        let mut rng = rng_from_seed(seed);
        (0..n)
            .map(|_| {
                let u: f64 = rng.random();
                match cdf.binary_search_by(|p| p.partial_cmp(&u).unwrap()) {
                    Ok(i) | Err(i) => (i + 1).min(cdf.len()),
                }
            })
            .collect()
    }

    #[test]
    fn recovers_known_exponent() {
        let sample = sample_power_law(2.5, 10_000, 11);
        let fit = fit_power_law(&dist_of(sample)).unwrap();
        assert!(
            fit.gamma > 2.4 && fit.gamma < 2.6,
            "gamma = {}",
            fit.gamma
        );
        assert!(fit.xmin >= 1);
        assert!(fit.ks_gof >= 0.0 && fit.ks_gof <= 1.0);
    }

    #[test]
    fn repeated_fits_are_close_and_deterministic() {
        let a = fit_power_law(&dist_of(sample_power_law(2.5, 10_000, 101))).unwrap();
        let b = fit_power_law(&dist_of(sample_power_law(2.5, 10_000, 202))).unwrap();
        assert!((a.gamma - b.gamma).abs() < 0.2);

        let again = fit_power_law(&dist_of(sample_power_law(2.5, 10_000, 101))).unwrap();
        assert_eq!(a, again);
    }

    #[test]
    fn degenerate_support_is_a_fit_error() {
        let err = fit_power_law(&dist_of(vec![3, 3, 3])).unwrap_err();
        assert!(matches!(err, Error::Fit(_)));
        // Degree 0 does not rescue a single-valued positive support.
        let err = fit_power_law(&dist_of(vec![0, 0, 5, 5])).unwrap_err();
        assert!(matches!(err, Error::Fit(_)));
    }

    #[test]
    fn powerlaw_distance_is_exponent_gap() {
        let a = PowerLawFit {
            gamma: 2.1,
            xmin: 1,
            ks_gof: 0.0,
        };
        let b = PowerLawFit {
            gamma: 2.9,
            xmin: 4,
            ks_gof: 0.1,
        };
        assert!((powerlaw_distance(&a, &b) - 0.8).abs() < EPS);
        assert_eq!(powerlaw_distance(&a, &b), powerlaw_distance(&b, &a));
        assert_eq!(powerlaw_distance(&a, &a), 0.0);
    }

    #[test]
    fn percentile_hand_values() {
        let uniform = dist_of((1..=8).collect());
        let p = percentile_features(&uniform);
        for &v in p.values() {
            assert!((v - 0.125).abs() < EPS);
        }

        let regular = dist_of(vec![4, 4, 4]);
        let p = percentile_features(&regular);
        assert_eq!(&p.values()[..7], &[0.0; 7]);
        assert!((p.values()[7] - 1.0).abs() < EPS);

        let p3 = dist_of(vec![1, 2, 1]);
        let p = percentile_features(&p3);
        let expected = [2.0 / 3.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0 / 3.0];
        for i in 0..8 {
            assert!((p.values()[i] - expected[i]).abs() < EPS);
        }
    }

    #[test]
    fn percentile_distance_hand_value() {
        let p3 = percentile_features(&dist_of(vec![1, 2, 1]));
        let uniform = percentile_features(&dist_of((1..=8).collect()));
        // |2/3-1/8| + 6·(1/8) + |1/3-1/8| = 3/2, by direct summation.
        assert!((percentile_distance(&p3, &uniform) - 1.5).abs() < EPS);
        assert_eq!(percentile_distance(&p3, &p3), 0.0);
    }

    #[test]
    fn log_binning_partitions_mass() {
        let mut rng = rng_from_seed(7);
        let degrees: Vec<usize> = (0..500).map(|_| rng.random_range(0..200)).collect();
        let dist = dist_of(degrees);
        let linear = percentile_features_with(&dist, PercentileBinning::Linear);
        let log = percentile_features_with(&dist, PercentileBinning::Log);
        for p in [&linear, &log] {
            let sum: f64 = p.values().iter().sum();
            assert!((sum - 1.0).abs() < EPS);
        }
        assert_ne!(linear.values(), log.values());
    }
}
