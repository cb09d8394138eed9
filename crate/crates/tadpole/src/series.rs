//! Time-series and dataset types plus normalization and smoothing.

use crate::error::{Error, Result};

/// One clusterable object: one or more equal-length channels of finite values.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeSeries {
    channels: Vec<Vec<f64>>,
}

impl TimeSeries {
    /// A single-channel series. Length must be >= 2 and all values finite.
    pub fn univariate(values: Vec<f64>) -> Result<Self> {
        Self::multivariate(vec![values])
    }

    /// A multi-channel series. Channels must be non-empty, of one shared
    /// length >= 2, and contain only finite values.
    pub fn multivariate(channels: Vec<Vec<f64>>) -> Result<Self> {
        if channels.is_empty() {
            return Err(Error::InvalidSeries("no channels".into()));
        }
        let len = channels[0].len();
        if len < 2 {
            return Err(Error::InvalidSeries(format!(
                "channel length {len} is below the minimum of 2"
            )));
        }
        for (d, ch) in channels.iter().enumerate() {
            if ch.len() != len {
                return Err(Error::InvalidSeries(format!(
                    "channel {d} has length {}, expected {len}",
                    ch.len()
                )));
            }
            if let Some(pos) = ch.iter().position(|v| !v.is_finite()) {
                return Err(Error::InvalidSeries(format!(
                    "channel {d}, position {pos}: non-finite value"
                )));
            }
        }
        Ok(Self { channels })
    }

    /// Number of samples per channel.
    pub fn len(&self) -> usize {
        self.channels[0].len()
    }

    pub fn is_empty(&self) -> bool {
        false // length >= 2 by construction
    }

    /// Number of channels.
    pub fn dims(&self) -> usize {
        self.channels.len()
    }

    pub fn channel(&self, d: usize) -> &[f64] {
        &self.channels[d]
    }

    pub fn channels(&self) -> &[Vec<f64>] {
        &self.channels
    }

    /// Z-normalizes each channel to zero mean and unit population standard
    /// deviation. A constant channel maps to all zeros.
    pub fn znormalize(&self) -> TimeSeries {
        let channels = self
            .channels
            .iter()
            .map(|ch| {
                let n = ch.len() as f64;
                let mean = ch.iter().sum::<f64>() / n;
                let var = ch.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / n;
                let std = var.sqrt();
                if std == 0.0 {
                    vec![0.0; ch.len()]
                } else {
                    ch.iter().map(|v| (v - mean) / std).collect()
                }
            })
            .collect();
        TimeSeries { channels }
    }

    /// Centered moving average with an odd window. At the boundaries the
    /// window truncates to the available samples, so length is preserved.
    pub fn smooth(&self, window: usize) -> Result<TimeSeries> {
        if window == 0 || window % 2 == 0 {
            return Err(Error::InvalidParameter(format!(
                "smoothing window must be odd and positive, got {window}"
            )));
        }
        let half = window / 2;
        let len = self.len();
        let channels = self
            .channels
            .iter()
            .map(|ch| {
                (0..len)
                    .map(|i| {
                        let lo = i.saturating_sub(half);
                        let hi = (i + half).min(len - 1);
                        let slice = &ch[lo..=hi];
                        slice.iter().sum::<f64>() / slice.len() as f64
                    })
                    .collect()
            })
            .collect();
        Ok(TimeSeries { channels })
    }
}

/// A collection of series of identical length and dimensionality, with
/// optional class labels.
#[derive(Debug, Clone, PartialEq)]
pub struct LabeledDataset {
    series: Vec<TimeSeries>,
    labels: Option<Vec<String>>,
}

impl LabeledDataset {
    /// Builds a dataset, checking that all series share length and dims and
    /// that labels (when present) match the series count.
    pub fn new(series: Vec<TimeSeries>, labels: Option<Vec<String>>) -> Result<Self> {
        if series.is_empty() {
            return Err(Error::EmptyDataset);
        }
        let len = series[0].len();
        let dims = series[0].dims();
        for (i, s) in series.iter().enumerate() {
            if s.len() != len || s.dims() != dims {
                return Err(Error::ShapeMismatch(format!(
                    "series {i} has shape ({} x {}), expected ({len} x {dims})",
                    s.len(),
                    s.dims()
                )));
            }
        }
        if let Some(ref l) = labels {
            if l.len() != series.len() {
                return Err(Error::ShapeMismatch(format!(
                    "{} labels for {} series",
                    l.len(),
                    series.len()
                )));
            }
        }
        Ok(Self { series, labels })
    }

    pub fn len(&self) -> usize {
        self.series.len()
    }

    pub fn is_empty(&self) -> bool {
        self.series.is_empty()
    }

    /// Shared per-series length.
    pub fn series_len(&self) -> usize {
        self.series[0].len()
    }

    /// Shared channel count.
    pub fn dims(&self) -> usize {
        self.series[0].dims()
    }

    pub fn series(&self) -> &[TimeSeries] {
        &self.series
    }

    pub fn get(&self, i: usize) -> &TimeSeries {
        &self.series[i]
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Z-normalizes every series.
    pub fn znormalize(&self) -> LabeledDataset {
        LabeledDataset {
            series: self.series.iter().map(|s| s.znormalize()).collect(),
            labels: self.labels.clone(),
        }
    }

    /// Smooths every series with a centered moving average.
    pub fn smooth(&self, window: usize) -> Result<LabeledDataset> {
        Ok(LabeledDataset {
            series: self
                .series
                .iter()
                .map(|s| s.smooth(window))
                .collect::<Result<_>>()?,
            labels: self.labels.clone(),
        })
    }

    /// The first `n` rows, preserving labels. Used by size sweeps.
    pub fn truncate(&self, n: usize) -> Result<LabeledDataset> {
        if n == 0 || n > self.series.len() {
            return Err(Error::InvalidParameter(format!(
                "cannot take {n} of {} series",
                self.series.len()
            )));
        }
        Ok(LabeledDataset {
            series: self.series[..n].to_vec(),
            labels: self.labels.as_ref().map(|l| l[..n].to_vec()),
        })
    }

    /// Zips per-channel datasets into one multichannel dataset. All inputs
    /// must have identical row counts and series lengths; labels are taken
    /// from the first.
    pub fn merge_channels(parts: &[LabeledDataset]) -> Result<LabeledDataset> {
        if parts.is_empty() {
            return Err(Error::EmptyDataset);
        }
        let n = parts[0].len();
        let len = parts[0].series_len();
        for p in parts {
            if p.len() != n {
                return Err(Error::ShapeMismatch(format!(
                    "channel datasets have {} and {n} rows",
                    p.len()
                )));
            }
            if p.series_len() != len {
                return Err(Error::ShapeMismatch(format!(
                    "channel datasets have series lengths {} and {len}",
                    p.series_len()
                )));
            }
        }
        let series = (0..n)
            .map(|i| {
                let channels = parts
                    .iter()
                    .flat_map(|p| p.get(i).channels().iter().cloned())
                    .collect();
                TimeSeries::multivariate(channels)
            })
            .collect::<Result<_>>()?;
        LabeledDataset::new(series, parts[0].labels.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ts(v: &[f64]) -> TimeSeries {
        TimeSeries::univariate(v.to_vec()).unwrap()
    }

    #[test]
    fn construction_rejects_bad_shapes() {
        assert!(TimeSeries::univariate(vec![1.0]).is_err());
        assert!(TimeSeries::univariate(vec![1.0, f64::NAN]).is_err());
        assert!(TimeSeries::multivariate(vec![]).is_err());
        assert!(TimeSeries::multivariate(vec![vec![1.0, 2.0], vec![1.0]]).is_err());
    }

    #[test]
    fn znormalize_simple() {
        let z = ts(&[1.0, 2.0, 3.0]).znormalize();
        let want = [-1.2247, 0.0, 1.2247];
        for (got, want) in z.channel(0).iter().zip(want.iter()) {
            assert!((got - want).abs() < 1e-4, "{got} vs {want}");
        }
    }

    #[test]
    fn znormalize_constant_maps_to_zeros() {
        let z = ts(&[5.0, 5.0, 5.0]).znormalize();
        assert_eq!(z.channel(0), &[0.0, 0.0, 0.0]);
    }

    #[test]
    fn znormalize_is_idempotent_and_standardizes() {
        let s = ts(&[3.0, -1.0, 4.0, 1.0, -5.0, 9.0]);
        let once = s.znormalize();
        let twice = once.znormalize();
        for (a, b) in once.channel(0).iter().zip(twice.channel(0)) {
            assert!((a - b).abs() < 1e-9);
        }
        let n = once.len() as f64;
        let mean: f64 = once.channel(0).iter().sum::<f64>() / n;
        let var: f64 = once.channel(0).iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / n;
        assert!(mean.abs() < 1e-9);
        assert!((var.sqrt() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn smooth_window_one_is_identity() {
        let s = ts(&[3.0, 1.0, 4.0]);
        assert_eq!(s.smooth(1).unwrap(), s);
    }

    #[test]
    fn smooth_truncates_at_boundaries() {
        let s = ts(&[0.0, 3.0, 0.0]).smooth(3).unwrap();
        assert_eq!(s.channel(0), &[1.5, 1.0, 1.5]);
    }

    #[test]
    fn smooth_preserves_length_and_rejects_even_windows() {
        let s = ts(&[1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0]);
        for w in [1, 3, 5, 7, 9] {
            assert_eq!(s.smooth(w).unwrap().len(), s.len());
        }
        assert!(s.smooth(0).is_err());
        assert!(s.smooth(4).is_err());
    }

    #[test]
    fn dataset_requires_consistent_shapes() {
        let a = ts(&[1.0, 2.0, 3.0]);
        let b = ts(&[1.0, 2.0]);
        assert!(LabeledDataset::new(vec![a.clone(), b], None).is_err());
        assert!(LabeledDataset::new(vec![a.clone()], Some(vec!["1".into(), "2".into()])).is_err());
        assert!(LabeledDataset::new(vec![], None).is_err());
        assert!(LabeledDataset::new(vec![a], Some(vec!["1".into()])).is_ok());
    }

    #[test]
    fn merge_channels_zips_rows() {
        let d1 = LabeledDataset::new(
            vec![ts(&[1.0, 2.0]), ts(&[3.0, 4.0])],
            Some(vec!["a".into(), "b".into()]),
        )
        .unwrap();
        let d2 = LabeledDataset::new(vec![ts(&[5.0, 6.0]), ts(&[7.0, 8.0])], None).unwrap();
        let merged = LabeledDataset::merge_channels(&[d1, d2]).unwrap();
        assert_eq!(merged.dims(), 2);
        assert_eq!(merged.get(0).channel(1), &[5.0, 6.0]);
        assert_eq!(merged.labels().unwrap()[1], "b");
    }
}
