//! Text and binary file formats.
//!
//! Numbers are written in scientific notation with 17 significant digits,
//! enough to round-trip any `f64`. Lines starting with `#` and blank lines
//! are ignored by every reader.

use std::fmt::Write as _;

use thiserror::Error;
use wavesing::TimeSeries;

/// Relative tolerance on sample spacing in two-column signal files.
pub const SPACING_JITTER: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FormatError {
    #[error("no samples")]
    Empty,
    #[error("line {line}: {message}")]
    Line { line: usize, message: String },
    #[error("{0}")]
    Invalid(String),
}

fn line_err(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Line {
        line,
        message: message.into(),
    }
}

/// Data rows with their 1-based line numbers, split on `sep`.
fn rows(text: &str, sep: char) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(move |(k, raw)| {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            None
        } else {
            Some((k + 1, line.split(sep).map(str::trim).collect()))
        }
    })
}

fn number(field: &str, line: usize) -> Result<f64, FormatError> {
    let v: f64 = field
        .parse()
        .map_err(|_| line_err(line, format!("cannot parse '{field}' as a number")))?;
    if !v.is_finite() {
        return Err(line_err(line, format!("non-finite value '{field}'")));
    }
    Ok(v)
}

fn table<const N: usize>(text: &str, sep: char) -> Result<Vec<(usize, [f64; N])>, FormatError> {
    rows(text, sep)
        .map(|(line, fields)| {
            if fields.len() != N {
                return Err(line_err(
                    line,
                    format!("expected {N} columns, found {}", fields.len()),
                ));
            }
            let mut out = [0.0; N];
            for (slot, field) in out.iter_mut().zip(&fields) {
                *slot = number(field, line)?;
            }
            Ok((line, out))
        })
        .collect()
}

fn num(v: f64) -> String {
    format!("{v:.16e}")
}

/// Reads a signal: one value per line, or `t,value` pairs on a uniform grid.
pub fn read_signal(text: &str) -> Result<TimeSeries, FormatError> {
    let parsed: Vec<(usize, Vec<&str>)> = rows(text, ',').collect();
    let Some((_, first)) = parsed.first() else {
        return Err(FormatError::Empty);
    };
    let columns = first.len();
    if columns != 1 && columns != 2 {
        return Err(line_err(
            parsed[0].0,
            format!("expected 1 or 2 columns, found {columns}"),
        ));
    }
    let mut times = Vec::with_capacity(parsed.len());
    let mut values = Vec::with_capacity(parsed.len());
    for (line, fields) in &parsed {
        if fields.len() != columns {
            return Err(line_err(
                *line,
                format!("expected {columns} columns, found {}", fields.len()),
            ));
        }
        if columns == 2 {
            times.push(number(fields[0], *line)?);
        }
        values.push(number(fields[columns - 1], *line)?);
    }
    if values.len() < 2 {
        return Err(FormatError::Invalid(
            "a signal needs at least 2 samples".into(),
        ));
    }
    let (dt, t0) = if columns == 1 {
        (1.0, 0.0)
    } else {
        let n = times.len();
        let dt = (times[n - 1] - times[0]) / (n - 1) as f64;
        if dt <= 0.0 || dt.is_nan() {
            return Err(FormatError::Invalid(
                "time column must be increasing".into(),
            ));
        }
        for (k, w) in times.windows(2).enumerate() {
            if ((w[1] - w[0]) - dt).abs() > SPACING_JITTER * dt {
                return Err(line_err(
                    parsed[k + 1].0,
                    "time column is not uniformly spaced",
                ));
            }
        }
        (dt, times[0])
    };
    TimeSeries::new(values, dt, t0).map_err(|e| FormatError::Invalid(e.to_string()))
}

/// `t,value` per sample.
pub fn write_signal(series: &TimeSeries) -> String {
    let mut out = String::with_capacity(series.len() * 48);
    for (i, v) in series.samples().iter().enumerate() {
        let _ = writeln!(out, "{},{}", num(series.time(i)), num(*v));
    }
    out
}

pub fn read_points(text: &str) -> Result<Vec<[f64; 2]>, FormatError> {
    let points: Vec<[f64; 2]> = table::<2>(text, ',')?.into_iter().map(|(_, p)| p).collect();
    if points.is_empty() {
        return Err(FormatError::Empty);
    }
    Ok(points)
}

/// `x1,x2` per point.
pub fn write_points(points: &[[f64; 2]]) -> String {
    let mut out = String::with_capacity(points.len() * 48);
    for p in points {
        let _ = writeln!(out, "{},{}", num(p[0]), num(p[1]));
    }
    out
}

/// Tab-separated rows under a `#` header naming the columns.
pub fn write_tsv<const N: usize>(header: [&str; N], rows: &[[f64; N]]) -> String {
    let mut out = format!("# {}\n", header.join("\t"));
    for row in rows {
        let fields: Vec<String> = row.iter().map(|v| num(*v)).collect();
        out.push_str(&fields.join("\t"));
        out.push('\n');
    }
    out
}

pub fn read_tsv<const N: usize>(text: &str) -> Result<Vec<[f64; N]>, FormatError> {
    Ok(table::<N>(text, '\t')?
        .into_iter()
        .map(|(_, r)| r)
        .collect())
}

/// Binary PGM (P5) of a 2-D histogram of `points` over their bounding box,
/// log-scaled so the fullest pixel is 255. Row 0 is the top (largest x2).
pub fn rasterize(points: &[[f64; 2]], width: usize, height: usize) -> Vec<u8> {
    let (mut lo, mut hi) = ([f64::INFINITY; 2], [f64::NEG_INFINITY; 2]);
    for p in points {
        for k in 0..2 {
            lo[k] = lo[k].min(p[k]);
            hi[k] = hi[k].max(p[k]);
        }
    }
    for k in 0..2 {
        if hi[k].partial_cmp(&lo[k]) != Some(std::cmp::Ordering::Greater) {
            lo[k] -= 0.5;
            hi[k] += 0.5;
        }
    }
    let mut counts = vec![0u64; width * height];
    for p in points {
        let col = (((p[0] - lo[0]) / (hi[0] - lo[0]) * width as f64) as usize).min(width - 1);
        let up = (((p[1] - lo[1]) / (hi[1] - lo[1]) * height as f64) as usize).min(height - 1);
        counts[(height - 1 - up) * width + col] += 1;
    }
    let peak = counts.iter().copied().max().unwrap_or(0);
    let scale = if peak > 0 {
        255.0 / (1.0 + peak as f64).ln()
    } else {
        0.0
    };
    let mut out = format!("P5\n{width} {height}\n255\n").into_bytes();
    out.extend(
        counts
            .iter()
            .map(|&c| ((1.0 + c as f64).ln() * scale).round().clamp(0.0, 255.0) as u8),
    );
    out
}
