//! Seeded synthetic dataset generators.
//!
//! These make every test and benchmark in the crate self-contained: the
//! cylinder-bell-funnel family for labeled shape clustering and random walks
//! for unlabeled stress data. Generators are pure functions of their
//! arguments.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::series::{LabeledDataset, TimeSeries};

pub const CBF_CLASSES: [&str; 3] = ["cylinder", "bell", "funnel"];

/// Generates `n` cylinder-bell-funnel series of the given length with labels
/// assigned round-robin. The plateau window and noise are drawn from one
/// ChaCha stream, so output is bit-identical for equal arguments.
pub fn generate_cbf(n: usize, length: usize, seed: u64) -> Result<LabeledDataset> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!(
            "cbf generator needs n >= 3, got {n}"
        )));
    }
    if length < 32 {
        return Err(Error::InvalidParameter(format!(
            "cbf generator needs length >= 32, got {length}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut series = Vec::with_capacity(n);
    let mut labels = Vec::with_capacity(n);
    for i in 0..n {
        let class = i % 3;
        // Plateau start in [L/8, L/4], width in [L/4, 3L/4], clipped to the
        // series end. These are the classic CBF proportions for length 128.
        let a = rng.random_range(length / 8..=length / 4);
        let width = rng.random_range(length / 4..=3 * length / 4);
        let b = (a + width).min(length);
        let eta: f64 = rng.sample(StandardNormal);
        let amp = 6.0 + eta;
        let span = (b - a) as f64;
        let values = (0..length)
            .map(|t| {
                let noise: f64 = rng.sample(StandardNormal);
                let shape = if t >= a && t < b {
                    match class {
                        0 => 1.0,
                        1 => (t - a) as f64 / span,
                        _ => (b - t) as f64 / span,
                    }
                } else {
                    0.0
                };
                amp * shape + noise
            })
            .collect();
        series.push(TimeSeries::univariate(values)?);
        labels.push(CBF_CLASSES[class].to_string());
    }
    LabeledDataset::new(series, Some(labels))
}

/// Generates `n` unlabeled random walks: cumulative sums of standard normal
/// increments, deterministic under the seed.
pub fn generate_random_walks(n: usize, length: usize, seed: u64) -> Result<LabeledDataset> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!(
            "random walk generator needs n >= 2, got {n}"
        )));
    }
    if length < 2 {
        return Err(Error::InvalidParameter(format!(
            "random walk generator needs length >= 2, got {length}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let series = (0..n)
        .map(|_| {
            let mut level = 0.0;
            let values = (0..length)
                .map(|_| {
                    let step: f64 = rng.sample(StandardNormal);
                    level += step;
                    level
                })
                .collect();
            TimeSeries::univariate(values)
        })
        .collect::<Result<_>>()?;
    LabeledDataset::new(series, None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measures::euclidean;

    #[test]
    fn cbf_is_deterministic_and_round_robin() {
        let a = generate_cbf(30, 128, 7).unwrap();
        let b = generate_cbf(30, 128, 7).unwrap();
        assert_eq!(a, b);
        for class in CBF_CLASSES {
            let count = a.labels().unwrap().iter().filter(|l| *l == class).count();
            assert_eq!(count, 10);
        }
        assert_ne!(a, generate_cbf(30, 128, 8).unwrap());
    }

    #[test]
    fn cbf_rejects_small_inputs() {
        assert!(generate_cbf(2, 128, 0).is_err());
        assert!(generate_cbf(10, 16, 0).is_err());
    }

    #[test]
    fn cbf_classes_are_separable_by_one_nn() {
        // Leave-one-out 1-NN under Euclidean distance should classify the
        // three shapes well above chance.
        let ds = generate_cbf(150, 128, 42).unwrap();
        let labels = ds.labels().unwrap();
        let mut hits = 0;
        for i in 0..ds.len() {
            let mut best = (f64::INFINITY, 0);
            for j in 0..ds.len() {
                if i == j {
                    continue;
                }
                let d = euclidean(ds.get(i), ds.get(j)).unwrap();
                if d < best.0 {
                    best = (d, j);
                }
            }
            if labels[best.1] == labels[i] {
                hits += 1;
            }
        }
        let accuracy = hits as f64 / ds.len() as f64;
        assert!(accuracy > 0.80, "1-NN accuracy {accuracy}");
    }

    #[test]
    fn walks_are_deterministic_with_unit_variance_steps() {
        let a = generate_random_walks(5, 1024, 3).unwrap();
        assert_eq!(a, generate_random_walks(5, 1024, 3).unwrap());
        assert!(a.labels().is_none());
        for s in a.series() {
            assert_eq!(s.len(), 1024);
            let steps: Vec<f64> = s
                .channel(0)
                .windows(2)
                .map(|w| w[1] - w[0])
                .collect();
            let n = steps.len() as f64;
            let mean = steps.iter().sum::<f64>() / n;
            let var = steps.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / n;
            assert!((0.7..=1.3).contains(&var), "step variance {var}");
        }
    }

    #[test]
    fn walks_reject_degenerate_sizes() {
        assert!(generate_random_walks(1, 100, 0).is_err());
        assert!(generate_random_walks(5, 1, 0).is_err());
    }
}
