//! File ingestion and export.
//!
//! Dataset files hold one object per line: a class token followed by the
//! numeric samples, tab or comma delimited, no header. Multichannel data uses
//! one such file per channel with identical row counts and labels.
//!
//! Sequence files hold one sequence per line with an optional `label<TAB>`
//! prefix.

use std::fmt::Write as _;
use std::path::Path;

use crate::edit::{Alphabet, DiscreteSequence};
use crate::error::{Error, Result};
use crate::sequences::SequenceDataset;
use crate::series::{LabeledDataset, TimeSeries};

/// Field delimiter for dataset files.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Tsv,
    Csv,
}

impl Format {
    fn delimiter(self) -> char {
        match self {
            Format::Tsv => '\t',
            Format::Csv => ',',
        }
    }
}

/// Parses dataset rows from text. Every row must have the same width: one
/// class token plus at least two numeric fields. Rows in error messages are
/// 1-based.
pub fn parse_ucr_str(text: &str, format: Format) -> Result<LabeledDataset> {
    let delim = format.delimiter();
    let mut labels = Vec::new();
    let mut series = Vec::new();
    let mut width = None;

    for (idx, line) in text.lines().enumerate() {
        let row = idx + 1;
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(delim).collect();
        match width {
            None => {
                if fields.len() < 3 {
                    return Err(Error::RaggedRow {
                        row,
                        expected: 3,
                        found: fields.len(),
                    });
                }
                width = Some(fields.len());
            }
            Some(w) if fields.len() != w => {
                return Err(Error::RaggedRow {
                    row,
                    expected: w,
                    found: fields.len(),
                });
            }
            _ => {}
        }
        let mut values = Vec::with_capacity(fields.len() - 1);
        for (f, token) in fields[1..].iter().enumerate() {
            let v: f64 = token.trim().parse().map_err(|_| Error::InvalidNumber {
                row,
                field: f + 2,
                token: (*token).to_string(),
            })?;
            if !v.is_finite() {
                return Err(Error::InvalidNumber {
                    row,
                    field: f + 2,
                    token: (*token).to_string(),
                });
            }
            values.push(v);
        }
        labels.push(fields[0].trim().to_string());
        series.push(TimeSeries::univariate(values)?);
    }

    if series.is_empty() {
        return Err(Error::EmptyDataset);
    }
    LabeledDataset::new(series, Some(labels))
}

/// Loads a single-channel dataset file.
pub fn load_ucr(path: &Path, format: Format) -> Result<LabeledDataset> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_ucr_str(&text, format)
}

/// Loads a multichannel dataset from an ordered list of per-channel files.
/// Labels must agree with the first file row by row.
pub fn load_ucr_channels(paths: &[impl AsRef<Path>], format: Format) -> Result<LabeledDataset> {
    if paths.is_empty() {
        return Err(Error::EmptyDataset);
    }
    let first = load_ucr(paths[0].as_ref(), format)?;
    let mut parts = vec![first];
    for p in &paths[1..] {
        let part = load_ucr(p.as_ref(), format)?;
        if part.len() != parts[0].len() {
            return Err(Error::ChannelRowCount {
                path: p.as_ref().to_path_buf(),
                expected: parts[0].len(),
                found: part.len(),
            });
        }
        let expected = parts[0].labels().unwrap();
        let found = part.labels().unwrap();
        if let Some(row) = (0..part.len()).find(|&i| expected[i] != found[i]) {
            return Err(Error::ChannelLabelMismatch {
                row: row + 1,
                expected: expected[row].clone(),
                found: found[row].clone(),
            });
        }
        parts.push(part);
    }
    LabeledDataset::merge_channels(&parts)
}

/// Formats a single-channel dataset back to rows. Values use the shortest
/// representation that round-trips exactly, so save/load is lossless.
pub fn format_ucr(dataset: &LabeledDataset, channel: usize, format: Format) -> String {
    let delim = format.delimiter();
    let mut out = String::new();
    for (i, s) in dataset.series().iter().enumerate() {
        let label = dataset
            .labels()
            .map(|l| l[i].as_str())
            .unwrap_or("0");
        out.push_str(label);
        for v in s.channel(channel) {
            let _ = write!(out, "{delim}{v}");
        }
        out.push('\n');
    }
    out
}

/// Writes one channel of a dataset to a file.
pub fn save_ucr(dataset: &LabeledDataset, channel: usize, path: &Path, format: Format) -> Result<()> {
    std::fs::write(path, format_ucr(dataset, channel, format)).map_err(|source| Error::IoWrite {
        path: path.to_path_buf(),
        source,
    })
}

/// Parses sequences from text: one sequence per line, optional `label<TAB>`
/// prefix. The alphabet is the set of symbols observed across the file.
/// Symbols must be ASCII; the first non-ASCII byte is reported with its row.
pub fn parse_sequences_str(text: &str) -> Result<SequenceDataset> {
    let mut raw: Vec<(Option<String>, &str)> = Vec::new();
    for line in text.lines() {
        if line.is_empty() {
            continue;
        }
        match line.split_once('\t') {
            Some((label, body)) => raw.push((Some(label.to_string()), body)),
            None => raw.push((None, line)),
        }
    }
    if raw.is_empty() {
        return Err(Error::EmptyDataset);
    }

    let mut symbols: Vec<u8> = Vec::new();
    for (idx, (_, body)) in raw.iter().enumerate() {
        for &b in body.as_bytes() {
            if !b.is_ascii() || b.is_ascii_control() {
                return Err(Error::SymbolOutsideAlphabet {
                    row: idx + 1,
                    symbol: b as char,
                });
            }
            if !symbols.contains(&b) {
                symbols.push(b);
            }
        }
    }
    let alphabet = Alphabet::new(symbols)?;

    let labeled = raw.iter().any(|(l, _)| l.is_some());
    let labels = if labeled {
        Some(
            raw.iter()
                .map(|(l, _)| l.clone().unwrap_or_default())
                .collect(),
        )
    } else {
        None
    };
    let sequences = raw
        .iter()
        .map(|(_, body)| DiscreteSequence::new(body.as_bytes().to_vec(), &alphabet))
        .collect::<Result<Vec<_>>>()?;
    SequenceDataset::new(sequences, labels, alphabet)
}

/// Loads a sequence dataset file.
pub fn load_sequences(path: &Path) -> Result<SequenceDataset> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_sequences_str(&text)
}

/// Formats a sequence dataset back to lines.
pub fn format_sequences(ds: &SequenceDataset) -> String {
    let mut out = String::new();
    for (i, s) in ds.sequences().iter().enumerate() {
        if let Some(labels) = ds.labels() {
            out.push_str(&labels[i]);
            out.push('\t');
        }
        out.push_str(&String::from_utf8_lossy(s.symbols()));
        out.push('\n');
    }
    out
}

/// Writes a sequence dataset to a file.
pub fn save_sequences(ds: &SequenceDataset, path: &Path) -> Result<()> {
    std::fs::write(path, format_sequences(ds)).map_err(|source| Error::IoWrite {
        path: path.to_path_buf(),
        source,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_tab_rows() {
        let ds = parse_ucr_str("2\t1.0\t0.5\t-0.3\n1\t0.0\t0.1\t0.2\n", Format::Tsv).unwrap();
        assert_eq!(ds.len(), 2);
        assert_eq!(ds.labels().unwrap(), &["2", "1"]);
        assert_eq!(ds.get(0).channel(0), &[1.0, 0.5, -0.3]);
    }

    #[test]
    fn empty_file_is_an_error() {
        let err = parse_ucr_str("", Format::Tsv).unwrap_err();
        assert!(matches!(err, Error::EmptyDataset), "{err}");
        assert_eq!(err.to_string(), "empty dataset");
    }

    #[test]
    fn ragged_rows_name_the_row() {
        let err = parse_ucr_str("1\t1\t2\t3\n2\t1\t2\t3\t4\n", Format::Tsv).unwrap_err();
        match err {
            Error::RaggedRow { row, expected, found } => {
                assert_eq!((row, expected, found), (2, 4, 5));
            }
            other => panic!("unexpected error {other}"),
        }
    }

    #[test]
    fn bad_numbers_name_row_and_field() {
        let err = parse_ucr_str("1,0.5,oops\n", Format::Csv).unwrap_err();
        match err {
            Error::InvalidNumber { row, field, token } => {
                assert_eq!((row, field), (1, 3));
                assert_eq!(token, "oops");
            }
            other => panic!("unexpected error {other}"),
        }
    }

    #[test]
    fn round_trip_is_lossless() {
        let text = "a\t0.123456789123456789\t-7.25e-3\t3\nb\t1\t2\t0.1\n";
        let ds = parse_ucr_str(text, Format::Tsv).unwrap();
        let again = parse_ucr_str(&format_ucr(&ds, 0, Format::Tsv), Format::Tsv).unwrap();
        assert_eq!(ds, again);
    }

    #[test]
    fn parser_survives_junk_without_panicking() {
        for junk in ["\t\t\t", "x", "1\t2", "\n\n\n", "a,b,c", "1\tinf\t2\t3", ",,,,"] {
            let _ = parse_ucr_str(junk, Format::Tsv);
            let _ = parse_ucr_str(junk, Format::Csv);
        }
    }

    #[test]
    fn sequence_files_with_and_without_labels() {
        let ds = parse_sequences_str("fam1\tABCA\nfam2\tBBC\n").unwrap();
        assert_eq!(ds.len(), 2);
        assert_eq!(ds.labels().unwrap(), &["fam1", "fam2"]);
        assert_eq!(ds.sequences()[1].symbols(), b"BBC");

        let ds = parse_sequences_str("ABC\nBCA\n").unwrap();
        assert!(ds.labels().is_none());
        let again = parse_sequences_str(&format_sequences(&ds)).unwrap();
        assert_eq!(ds.sequences(), again.sequences());
    }

    #[test]
    fn missing_file_reports_path() {
        let err = load_ucr(Path::new("/no/such/file.tsv"), Format::Tsv).unwrap_err();
        assert!(err.to_string().contains("/no/such/file.tsv"));
    }
}
