//! Brute-force density-peaks clustering over a full distance matrix.
//!
//! This is both a standalone clusterer for any precomputed distance matrix
//! and the exactness oracle for the pruned engine: the pruned pipeline must
//! reproduce these densities, nearest-higher-density links, and labels
//! exactly.
//!
//! Ties are broken deterministically everywhere: density order ranks equal
//! densities by smaller index, nearest-neighbor and center selection ties go
//! to the smaller index, and the auto-k knee picks the earliest maximal
//! gamma ratio.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::matrix::{pair_indices, SquareMatrix};
use crate::measures::{channel_euclidean_sum, multidim_distance};
use crate::series::LabeledDataset;

/// Local densities plus the strict density total order.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityProfile {
    /// Neighbor count within the cutoff, per object.
    pub rho: Vec<usize>,
    /// Object indices sorted by (density descending, index ascending).
    pub order: Vec<usize>,
    /// Inverse of `order`: rank of each object in the total order.
    rank: Vec<usize>,
}

impl DensityProfile {
    /// Builds the strict total order for a density vector.
    pub fn from_rho(rho: Vec<usize>) -> Self {
        let mut order: Vec<usize> = (0..rho.len()).collect();
        order.sort_by(|&a, &b| rho[b].cmp(&rho[a]).then(a.cmp(&b)));
        let mut rank = vec![0; rho.len()];
        for (r, &i) in order.iter().enumerate() {
            rank[i] = r;
        }
        Self { rho, order, rank }
    }

    pub fn n(&self) -> usize {
        self.rho.len()
    }

    /// Rank of object `i` in the density order (0 = densest).
    pub fn rank(&self, i: usize) -> usize {
        self.rank[i]
    }

    /// The densest object.
    pub fn densest(&self) -> usize {
        self.order[0]
    }

    /// Objects strictly denser than `i` (its "higher density list"), in
    /// descending density order.
    pub fn higher_density_list(&self, i: usize) -> &[usize] {
        &self.order[..self.rank[i]]
    }
}

/// Distances to the nearest object of strictly higher density.
#[derive(Debug, Clone, PartialEq)]
pub struct DeltaProfile {
    /// Distance to the nearest higher-density object; for the densest object,
    /// the maximum of all other deltas.
    pub delta: Vec<f64>,
    /// The nearest higher-density object; `None` only for the densest.
    pub nn: Vec<Option<usize>>,
}

/// A complete clustering: centers, one label per object, and the per-object
/// quantities they were derived from.
#[derive(Debug, Clone, PartialEq)]
pub struct ClusterModel {
    /// Object indices of the cluster centers, in selection order.
    pub centers: Vec<usize>,
    /// Cluster identifiers in `1..=k`, one per object.
    pub labels: Vec<usize>,
    pub rho: Vec<usize>,
    pub delta: Vec<f64>,
    /// `gamma[i] = rho[i] * delta[i]`, the center-likelihood score.
    pub gamma: Vec<f64>,
}

/// Which exact measure a real-valued clustering run uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Measure {
    /// Band-constrained DTW, summed over channels.
    Dtw,
    /// Euclidean distance, summed over channels.
    Euclidean,
}

/// Counts, per object, how many other objects lie strictly within `dc`.
pub fn local_density(d: &SquareMatrix, dc: f64) -> Result<DensityProfile> {
    d.validate_distance_matrix()?;
    if !(dc > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "cutoff distance must be positive, got {dc}"
        )));
    }
    let n = d.n();
    let rho = (0..n)
        .map(|i| (0..n).filter(|&j| j != i && d.get(i, j) < dc).count())
        .collect();
    Ok(DensityProfile::from_rho(rho))
}

/// Nearest-higher-density distances. For each non-densest object the minimum
/// distance to anything strictly earlier in the density order (argmin ties to
/// the smaller index); the densest object takes the maximum of the others.
pub fn delta_distances(d: &SquareMatrix, profile: &DensityProfile) -> Result<DeltaProfile> {
    let n = profile.n();
    if n < 2 {
        return Err(Error::InvalidParameter(
            "delta distances need at least two objects".into(),
        ));
    }
    if d.n() != n {
        return Err(Error::ShapeMismatch(format!(
            "matrix is {} x {}, profile has {n} objects",
            d.n(),
            d.n()
        )));
    }
    let mut delta = vec![0.0; n];
    let mut nn = vec![None; n];
    for pos in 1..n {
        let i = profile.order[pos];
        let mut best = f64::INFINITY;
        let mut best_j = usize::MAX;
        for &j in &profile.order[..pos] {
            let dij = d.get(i, j);
            if dij < best || (dij == best && j < best_j) {
                best = dij;
                best_j = j;
            }
        }
        delta[i] = best;
        nn[i] = Some(best_j);
    }
    let densest = profile.densest();
    delta[densest] = profile.order[1..]
        .iter()
        .map(|&i| delta[i])
        .fold(f64::NEG_INFINITY, f64::max);
    Ok(DeltaProfile { delta, nn })
}

/// Gamma scores and the index order used for center selection.
fn gamma_order(profile: &DensityProfile, deltas: &DeltaProfile) -> (Vec<f64>, Vec<usize>) {
    let gamma: Vec<f64> = profile
        .rho
        .iter()
        .zip(&deltas.delta)
        .map(|(&r, &d)| r as f64 * d)
        .collect();
    let mut idx: Vec<usize> = (0..gamma.len()).collect();
    idx.sort_by(|&a, &b| {
        gamma[b]
            .partial_cmp(&gamma[a])
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(a.cmp(&b))
    });
    (gamma, idx)
}

/// Picks the `k` objects with the largest `rho * delta`. With `k` absent, `k`
/// comes from the knee rule: the position of the largest successive ratio of
/// the descending gamma sequence (ties to the earlier position; a 0/0 ratio
/// counts as 1).
pub fn select_centers(
    profile: &DensityProfile,
    deltas: &DeltaProfile,
    k: Option<usize>,
) -> Result<Vec<usize>> {
    let n = profile.n();
    let (gamma, idx) = gamma_order(profile, deltas);
    let k = match k {
        Some(k) => {
            if k == 0 || k > n {
                return Err(Error::InvalidParameter(format!(
                    "k must lie in 1..={n}, got {k}"
                )));
            }
            k
        }
        None => knee(&idx.iter().map(|&i| gamma[i]).collect::<Vec<_>>()),
    };
    Ok(idx[..k].to_vec())
}

/// Knee position over a descending sequence: `argmax g[i-1] / g[i]`, 1-based.
fn knee(sorted_gamma: &[f64]) -> usize {
    if sorted_gamma.len() < 2 {
        return 1;
    }
    let mut best = f64::NEG_INFINITY;
    let mut best_k = 1;
    for i in 1..sorted_gamma.len() {
        let (hi, lo) = (sorted_gamma[i - 1], sorted_gamma[i]);
        let ratio = if lo > 0.0 {
            hi / lo
        } else if hi > 0.0 {
            f64::INFINITY
        } else {
            1.0
        };
        if ratio > best {
            best = ratio;
            best_k = i;
        }
    }
    best_k
}

/// Labels centers `1..=k` in selection order, then propagates down the
/// density order: every other object takes its nearest higher-density
/// neighbor's label.
pub fn assign_clusters(
    centers: &[usize],
    deltas: &DeltaProfile,
    profile: &DensityProfile,
) -> Vec<usize> {
    let n = profile.n();
    let mut labels = vec![0usize; n];
    for (c, &i) in centers.iter().enumerate() {
        labels[i] = c + 1;
    }
    for &i in &profile.order {
        if labels[i] == 0 {
            match deltas.nn[i] {
                Some(j) => labels[i] = labels[j],
                // Only the densest object has no upward link. It is always a
                // center except when every gamma ties at zero; fall back to
                // the first center so the labeling stays total.
                None => labels[i] = labels[centers[0]],
            }
        }
    }
    labels
}

/// Full exact distance matrix of a dataset under the chosen measure,
/// evaluated pair-parallel with bit-identical output for any thread count.
pub fn exact_distance_matrix(
    dataset: &LabeledDataset,
    measure: Measure,
    window_frac: f64,
) -> Result<SquareMatrix> {
    let n = dataset.len();
    let pairs = pair_indices(n);
    let values = pairs
        .par_iter()
        .map(|&(i, j)| match measure {
            Measure::Dtw => multidim_distance(dataset.get(i), dataset.get(j), window_frac),
            Measure::Euclidean => channel_euclidean_sum(dataset.get(i), dataset.get(j)),
        })
        .collect::<Result<Vec<f64>>>()?;
    let mut m = SquareMatrix::zeros(n);
    for (&(i, j), &v) in pairs.iter().zip(values.iter()) {
        m.set_sym(i, j, v);
    }
    Ok(m)
}

/// Density-peaks clustering over a precomputed distance matrix.
pub fn dp_cluster_matrix(d: &SquareMatrix, dc: f64, k: Option<usize>) -> Result<ClusterModel> {
    if d.n() < 2 {
        return Err(Error::InvalidParameter(
            "clustering needs at least two objects".into(),
        ));
    }
    let profile = local_density(d, dc)?;
    let deltas = delta_distances(d, &profile)?;
    let centers = select_centers(&profile, &deltas, k)?;
    let labels = assign_clusters(&centers, &deltas, &profile);
    let (gamma, _) = gamma_order(&profile, &deltas);
    Ok(ClusterModel {
        centers,
        labels,
        rho: profile.rho,
        delta: deltas.delta,
        gamma,
    })
}

/// Brute-force density-peaks clustering: computes every pairwise distance,
/// then chains density, delta, center selection, and assignment.
pub fn dp_cluster(
    dataset: &LabeledDataset,
    measure: Measure,
    window_frac: f64,
    dc: f64,
    k: Option<usize>,
) -> Result<ClusterModel> {
    if dataset.len() < 2 {
        return Err(Error::InvalidParameter(
            "clustering needs at least two objects".into(),
        ));
    }
    let d = exact_distance_matrix(dataset, measure, window_frac)?;
    dp_cluster_matrix(&d, dc, k)
}
