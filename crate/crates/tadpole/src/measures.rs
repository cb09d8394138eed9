//! Elastic distance measures and their admissible bounds.
//!
//! The clustering engine never compares raw series itself; it consumes the
//! exact measure together with a lower/upper bound pair per object pair:
//!
//! * exact: band-constrained DTW (summed over channels for multichannel data),
//! * upper bound: Euclidean distance (the diagonal warping path),
//! * lower bound: the symmetrized envelope bound (LB_Keogh in both
//!   directions).
//!
//! Per-cell DTW cost is the squared difference with one final square root, so
//! a zero-width band degenerates to the Euclidean distance exactly and the
//! sandwich `lb <= dtw <= ub` holds without slack.

use std::collections::VecDeque;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::matrix::{pair_indices, SquareMatrix};
use crate::series::{LabeledDataset, TimeSeries};

/// Sliding min/max hull of a series over the band radius.
#[derive(Debug, Clone)]
pub struct Envelope {
    pub upper: Vec<f64>,
    pub lower: Vec<f64>,
    pub window_radius: usize,
}

fn check_window(window_frac: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&window_frac) || window_frac.is_nan() {
        return Err(Error::InvalidParameter(format!(
            "window fraction must lie in [0, 1], got {window_frac}"
        )));
    }
    Ok(())
}

/// Band radius in samples: `floor(window_frac * length)`. The diagonal is
/// always inside the band.
pub fn band_radius(length: usize, window_frac: f64) -> usize {
    (window_frac * length as f64).floor() as usize
}

fn check_same_shape(a: &TimeSeries, b: &TimeSeries) -> Result<()> {
    if a.len() != b.len() || a.dims() != b.dims() {
        return Err(Error::ShapeMismatch(format!(
            "({} x {}) vs ({} x {})",
            a.len(),
            a.dims(),
            b.len(),
            b.dims()
        )));
    }
    Ok(())
}

fn squared_euclidean(x: &[f64], y: &[f64]) -> f64 {
    let mut acc = 0.0;
    for (a, b) in x.iter().zip(y) {
        let d = a - b;
        acc += d * d;
    }
    acc
}

/// Euclidean distance over all channels and positions jointly.
pub fn euclidean(a: &TimeSeries, b: &TimeSeries) -> Result<f64> {
    check_same_shape(a, b)?;
    let mut acc = 0.0;
    for d in 0..a.dims() {
        acc += squared_euclidean(a.channel(d), b.channel(d));
    }
    Ok(acc.sqrt())
}

/// Sum of per-channel Euclidean distances. This is the upper bound paired
/// with [`multidim_distance`]: each channel's Euclidean distance bounds that
/// channel's DTW, so the sums nest as well. Identical to [`euclidean`] for
/// single-channel series.
pub fn channel_euclidean_sum(a: &TimeSeries, b: &TimeSeries) -> Result<f64> {
    check_same_shape(a, b)?;
    let mut acc = 0.0;
    for d in 0..a.dims() {
        acc += squared_euclidean(a.channel(d), b.channel(d)).sqrt();
    }
    Ok(acc)
}

/// Squared-cost DTW inside a Sakoe-Chiba band of radius `r`, returning the
/// accumulated squared cost (no square root).
fn banded_dtw_sq(x: &[f64], y: &[f64], r: usize) -> f64 {
    let n = x.len();
    let mut prev = vec![f64::INFINITY; n];
    let mut curr = vec![f64::INFINITY; n];

    // First row: only horizontal moves inside the band.
    let mut acc = 0.0;
    for j in 0..=r.min(n - 1) {
        let d = x[0] - y[j];
        acc += d * d;
        prev[j] = acc;
    }

    for i in 1..n {
        let lo = i.saturating_sub(r);
        let hi = (i + r).min(n - 1);
        // The cell left of the band start is stale from two rows back.
        if lo > 0 {
            curr[lo - 1] = f64::INFINITY;
        }
        for j in lo..=hi {
            let d = x[i] - y[j];
            let diag = if j > 0 { prev[j - 1] } else { f64::INFINITY };
            let left = if j > 0 { curr[j - 1] } else { f64::INFINITY };
            curr[j] = d * d + diag.min(prev[j]).min(left);
        }
        std::mem::swap(&mut prev, &mut curr);
    }
    prev[n - 1]
}

/// Band-constrained DTW distance between two single-channel series of equal
/// length. Cost is the squared per-cell difference; the result is the square
/// root of the minimal cumulative cost.
pub fn dtw(a: &TimeSeries, b: &TimeSeries, window_frac: f64) -> Result<f64> {
    check_window(window_frac)?;
    check_same_shape(a, b)?;
    if a.dims() != 1 {
        return Err(Error::InvalidParameter(
            "dtw takes single-channel series; use multidim_distance".into(),
        ));
    }
    let r = band_radius(a.len(), window_frac);
    Ok(banded_dtw_sq(a.channel(0), b.channel(0), r).sqrt())
}

/// Sum over channels of independently computed single-channel DTW distances.
/// Equals [`dtw`] for single-channel input.
pub fn multidim_distance(a: &TimeSeries, b: &TimeSeries, window_frac: f64) -> Result<f64> {
    check_window(window_frac)?;
    check_same_shape(a, b)?;
    let r = band_radius(a.len(), window_frac);
    let mut acc = 0.0;
    for d in 0..a.dims() {
        acc += banded_dtw_sq(a.channel(d), b.channel(d), r).sqrt();
    }
    Ok(acc)
}

/// Sliding extrema over `[i - r, i + r]` clipped to the series, via the
/// monotonic-deque algorithm (amortized O(n)).
fn sliding_envelope(x: &[f64], r: usize) -> (Vec<f64>, Vec<f64>) {
    let n = x.len();
    let mut upper = vec![0.0; n];
    let mut lower = vec![0.0; n];
    let mut max_q: VecDeque<usize> = VecDeque::new();
    let mut min_q: VecDeque<usize> = VecDeque::new();
    let mut next = 0usize;
    for i in 0..n {
        let hi = (i + r).min(n - 1);
        while next <= hi {
            while max_q.back().is_some_and(|&k| x[k] <= x[next]) {
                max_q.pop_back();
            }
            max_q.push_back(next);
            while min_q.back().is_some_and(|&k| x[k] >= x[next]) {
                min_q.pop_back();
            }
            min_q.push_back(next);
            next += 1;
        }
        let lo = i.saturating_sub(r);
        while *max_q.front().unwrap() < lo {
            max_q.pop_front();
        }
        while *min_q.front().unwrap() < lo {
            min_q.pop_front();
        }
        upper[i] = x[*max_q.front().unwrap()];
        lower[i] = x[*min_q.front().unwrap()];
    }
    (lower, upper)
}

/// Envelope of a single-channel series at the band radius implied by
/// `window_frac`.
pub fn envelope(series: &TimeSeries, window_frac: f64) -> Result<Envelope> {
    check_window(window_frac)?;
    if series.dims() != 1 {
        return Err(Error::InvalidParameter(
            "envelopes are per-channel; pass one channel at a time".into(),
        ));
    }
    Ok(channel_envelope(series.channel(0), band_radius(series.len(), window_frac)))
}

fn channel_envelope(x: &[f64], r: usize) -> Envelope {
    let (lower, upper) = sliding_envelope(x, r);
    Envelope {
        upper,
        lower,
        window_radius: r,
    }
}

/// One-directional envelope bound: excursions of `x` outside `env`.
fn lb_one_sided(x: &[f64], env: &Envelope) -> f64 {
    let mut acc = 0.0;
    for ((&v, &u), &l) in x.iter().zip(&env.upper).zip(&env.lower) {
        let exc = if v > u {
            v - u
        } else if v < l {
            l - v
        } else {
            0.0
        };
        acc += exc * exc;
    }
    acc.sqrt()
}

/// Symmetrized envelope lower bound on the band-constrained DTW distance:
/// the larger of the two directional bounds, which stays admissible and is
/// tighter than either direction alone.
pub fn lb_symmetric(a: &TimeSeries, b: &TimeSeries, window_frac: f64) -> Result<f64> {
    check_window(window_frac)?;
    check_same_shape(a, b)?;
    if a.dims() != 1 {
        return Err(Error::InvalidParameter(
            "lb_symmetric takes single-channel series".into(),
        ));
    }
    let r = band_radius(a.len(), window_frac);
    let (xa, xb) = (a.channel(0), b.channel(0));
    let forward = lb_one_sided(xa, &channel_envelope(xb, r));
    let backward = lb_one_sided(xb, &channel_envelope(xa, r));
    Ok(forward.max(backward))
}

/// Full symmetric lower- and upper-bound matrices for a dataset. Each entry
/// sandwiches the exact summed-DTW distance of its pair.
#[derive(Debug, Clone)]
pub struct BoundMatrices {
    lb: SquareMatrix,
    ub: SquareMatrix,
}

impl BoundMatrices {
    pub fn new(lb: SquareMatrix, ub: SquareMatrix) -> Self {
        debug_assert_eq!(lb.n(), ub.n());
        Self { lb, ub }
    }

    pub fn n(&self) -> usize {
        self.lb.n()
    }

    #[inline]
    pub fn lb(&self, i: usize, j: usize) -> f64 {
        self.lb.get(i, j)
    }

    #[inline]
    pub fn ub(&self, i: usize, j: usize) -> f64 {
        self.ub.get(i, j)
    }

    pub fn lb_matrix(&self) -> &SquareMatrix {
        &self.lb
    }

    pub fn ub_matrix(&self) -> &SquareMatrix {
        &self.ub
    }
}

/// Computes the bound matrices for a dataset: per pair, the lower bound sums
/// [`lb_symmetric`] over channels and the upper bound sums the per-channel
/// Euclidean distances. Pairs are evaluated in parallel; the result is
/// bit-identical for any thread count.
pub fn bound_matrices(dataset: &LabeledDataset, window_frac: f64) -> Result<BoundMatrices> {
    check_window(window_frac)?;
    let n = dataset.len();
    if n < 2 {
        return Err(Error::InvalidParameter(
            "bound matrices need at least two series".into(),
        ));
    }
    let r = band_radius(dataset.series_len(), window_frac);
    let dims = dataset.dims();
    let envelopes: Vec<Vec<Envelope>> = dataset
        .series()
        .par_iter()
        .map(|s| (0..dims).map(|d| channel_envelope(s.channel(d), r)).collect())
        .collect();

    let pairs = pair_indices(n);
    let entries: Vec<(f64, f64)> = pairs
        .par_iter()
        .map(|&(i, j)| {
            let (si, sj) = (dataset.get(i), dataset.get(j));
            let mut lb = 0.0;
            let mut ub = 0.0;
            for d in 0..dims {
                let (xi, xj) = (si.channel(d), sj.channel(d));
                let forward = lb_one_sided(xi, &envelopes[j][d]);
                let backward = lb_one_sided(xj, &envelopes[i][d]);
                lb += forward.max(backward);
                ub += squared_euclidean(xi, xj).sqrt();
            }
            (lb, ub)
        })
        .collect();

    let mut lb = SquareMatrix::zeros(n);
    let mut ub = SquareMatrix::zeros(n);
    for (&(i, j), &(l, u)) in pairs.iter().zip(entries.iter()) {
        lb.set_sym(i, j, l);
        ub.set_sym(i, j, u);
    }
    Ok(BoundMatrices::new(lb, ub))
}
