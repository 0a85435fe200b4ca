//! Feature matrices and label files on disk.
//!
//! CSV: one item per line, comma-separated decimals; lines starting with `#`
//! are comments (typically a header). FBIN: the 4 bytes `FNOV`, then `N` and
//! `M` as little-endian `u32`, then `N * M` little-endian `f32` row-major.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use novelty_core::FeatureMatrix;

use crate::error::{CliError, Result};

pub const FBIN_MAGIC: &[u8; 4] = b"FNOV";
const FBIN_HEADER: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Fbin,
}

impl Format {
    /// `.fbin` files are FBIN, everything else CSV.
    pub fn infer(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some(ext) if ext.eq_ignore_ascii_case("fbin") => Format::Fbin,
            _ => Format::Csv,
        }
    }
}

pub fn load_features(path: &Path, format: Format) -> Result<FeatureMatrix> {
    let bytes = fs::read(path).map_err(|e| CliError::io(path, e))?;
    let parsed = match format {
        Format::Csv => {
            let text = std::str::from_utf8(&bytes)
                .map_err(|e| CliError::Data(format!("{}: not UTF-8 ({e})", path.display())))?;
            parse_csv(text)
        }
        Format::Fbin => parse_fbin(&bytes),
    };
    parsed.map_err(|msg| CliError::Data(format!("{}: {msg}", path.display())))
}

pub fn parse_csv(text: &str) -> std::result::Result<FeatureMatrix, String> {
    let mut data = Vec::new();
    let mut n_dims = None;
    let mut n_items = 0usize;
    for (lineno, line) in text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())) {
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let start = data.len();
        for (col, field) in line.split(',').enumerate() {
            let v: f64 = field
                .trim()
                .parse()
                .map_err(|_| format!("line {lineno}, column {}: cannot parse {field:?}", col + 1))?;
            if !v.is_finite() {
                return Err(format!("line {lineno}, column {}: non-finite value", col + 1));
            }
            data.push(v);
        }
        let width = data.len() - start;
        match n_dims {
            None => n_dims = Some(width),
            Some(m) if m != width => {
                return Err(format!("line {lineno}: ragged row with {width} values, expected {m}"));
            }
            Some(_) => {}
        }
        n_items += 1;
    }
    FeatureMatrix::new(n_items, n_dims.unwrap_or(0), data).map_err(|e| e.to_string())
}

pub fn parse_fbin(bytes: &[u8]) -> std::result::Result<FeatureMatrix, String> {
    if bytes.len() < FBIN_HEADER {
        return Err(format!("truncated header: {} bytes", bytes.len()));
    }
    if &bytes[..4] != FBIN_MAGIC {
        return Err("byte 0: bad magic, expected FNOV".into());
    }
    let n = u32::from_le_bytes(bytes[4..8].try_into().unwrap()) as usize;
    let m = u32::from_le_bytes(bytes[8..12].try_into().unwrap()) as usize;
    let expected = n
        .checked_mul(m)
        .and_then(|c| c.checked_mul(4))
        .and_then(|c| c.checked_add(FBIN_HEADER))
        .ok_or_else(|| format!("byte 4: dimensions {n} x {m} overflow"))?;
    if bytes.len() != expected {
        return Err(format!(
            "byte {}: payload for {n} x {m} needs {expected} bytes, file has {}",
            bytes.len().min(expected),
            bytes.len()
        ));
    }
    let mut data = Vec::with_capacity(n * m);
    for (idx, chunk) in bytes[FBIN_HEADER..].chunks_exact(4).enumerate() {
        let v = f32::from_le_bytes(chunk.try_into().unwrap());
        if !v.is_finite() {
            return Err(format!("byte {}: non-finite value", FBIN_HEADER + 4 * idx));
        }
        data.push(v as f64);
    }
    FeatureMatrix::new(n, m, data).map_err(|e| e.to_string())
}

/// CSV with shortest round-trip decimal formatting.
pub fn features_to_csv(f: &FeatureMatrix) -> String {
    let mut out = String::with_capacity(f.as_slice().len() * 12);
    for i in 0..f.n_items() {
        for (c, v) in f.row(i).iter().enumerate() {
            if c > 0 {
                out.push(',');
            }
            write!(out, "{v:?}").unwrap();
        }
        out.push('\n');
    }
    out
}

/// FBIN bytes. Values are narrowed to `f32`.
pub fn features_to_fbin(f: &FeatureMatrix) -> Result<Vec<u8>> {
    let n = u32::try_from(f.n_items()).map_err(|_| CliError::Usage("too many items for FBIN".into()))?;
    let m = u32::try_from(f.n_dims()).map_err(|_| CliError::Usage("too many dimensions for FBIN".into()))?;
    let mut out = Vec::with_capacity(FBIN_HEADER + 4 * f.as_slice().len());
    out.extend_from_slice(FBIN_MAGIC);
    out.extend_from_slice(&n.to_le_bytes());
    out.extend_from_slice(&m.to_le_bytes());
    for &v in f.as_slice() {
        out.extend_from_slice(&(v as f32).to_le_bytes());
    }
    Ok(out)
}

pub fn save_features(f: &FeatureMatrix, path: &Path, format: Format) -> Result<()> {
    let bytes = match format {
        Format::Csv => features_to_csv(f).into_bytes(),
        Format::Fbin => features_to_fbin(f)?,
    };
    write_atomic(path, &bytes)
}

/// Label sidecar: one `0` (normal) or `1` (anomaly) per line. Returns the
/// anomaly indices.
pub fn load_labels(path: &Path, n: usize) -> Result<Vec<usize>> {
    let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    let mut anomalies = Vec::new();
    let mut count = 0;
    for (lineno, line) in text.lines().enumerate() {
        match line.trim() {
            "" => continue,
            "0" => {}
            "1" => anomalies.push(count),
            other => {
                return Err(CliError::Data(format!(
                    "{}: line {}: expected 0 or 1, got {other:?}",
                    path.display(),
                    lineno + 1
                )))
            }
        }
        count += 1;
    }
    if count != n {
        return Err(CliError::Data(format!("{}: {count} labels for {n} items", path.display())));
    }
    Ok(anomalies)
}

pub fn labels_to_text(anomaly: &[bool]) -> String {
    anomaly.iter().map(|&a| if a { "1\n" } else { "0\n" }).collect()
}

/// Writes to a sibling temporary file and renames it over `path`.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let file_name = path
        .file_name()
        .ok_or_else(|| CliError::Usage(format!("{} is not a file path", path.display())))?;
    let mut tmp_name = std::ffi::OsString::from(".");
    tmp_name.push(file_name);
    tmp_name.push(format!(".{}.tmp", std::process::id()));
    let tmp = path.with_file_name(tmp_name);
    fs::write(&tmp, bytes).map_err(|e| CliError::io(&tmp, e))?;
    fs::rename(&tmp, path).map_err(|e| {
        let _ = fs::remove_file(&tmp);
        CliError::io(path, e)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_basic() {
        let f = parse_csv("0,0\n3,4").unwrap();
        assert_eq!((f.n_items(), f.n_dims()), (2, 2));
        assert_eq!(f.pairwise_distance(0, 1).unwrap(), 5.0);
        let f = parse_csv("# x,y\n1.5, -2\n\n0,1e3\n").unwrap();
        assert_eq!(f.as_slice(), &[1.5, -2.0, 0.0, 1000.0]);
    }

    #[test]
    fn csv_errors_name_the_line() {
        let err = parse_csv("0,0\n1,2\n3\n").unwrap_err();
        assert!(err.contains("line 3") && err.contains("ragged"), "{err}");
        let err = parse_csv("0,0\n1,abc\n").unwrap_err();
        assert!(err.contains("line 2, column 2"), "{err}");
        assert!(parse_csv("0,NaN\n1,1\n").unwrap_err().contains("non-finite"));
        assert!(parse_csv("0,inf\n1,1\n").is_err());
        assert!(parse_csv("1,2\n").is_err());
    }

    #[test]
    fn fbin_round_trip_is_bit_exact() {
        let data: Vec<f64> = [0.1f32, -3.25, 1e-30, 7.0, 2.5, f32::MAX].iter().map(|&v| v as f64).collect();
        let f = FeatureMatrix::new(3, 2, data).unwrap();
        let bytes = features_to_fbin(&f).unwrap();
        assert_eq!(&bytes[..4], b"FNOV");
        assert_eq!(&bytes[4..12], &[3, 0, 0, 0, 2, 0, 0, 0]);
        assert_eq!(bytes.len(), 12 + 24);
        let back = parse_fbin(&bytes).unwrap();
        for (a, b) in back.as_slice().iter().zip(f.as_slice()) {
            assert_eq!(a.to_bits(), b.to_bits());
        }
    }

    #[test]
    fn fbin_errors() {
        assert!(parse_fbin(b"FNO").unwrap_err().contains("truncated"));
        assert!(parse_fbin(b"XNOV\x02\0\0\0\x01\0\0\0\0\0\0\0\0\0\0\0").unwrap_err().contains("magic"));
        let mut bytes = b"FNOV\x02\0\0\0\x01\0\0\0".to_vec();
        bytes.extend_from_slice(&1f32.to_le_bytes());
        assert!(parse_fbin(&bytes).unwrap_err().contains("needs 20 bytes"));
        bytes.extend_from_slice(&f32::NAN.to_le_bytes());
        assert!(parse_fbin(&bytes).unwrap_err().contains("byte 16"));
    }

    #[test]
    fn csv_round_trip_is_exact() {
        let f = FeatureMatrix::new(2, 3, vec![0.1, 1.0 / 3.0, -2e-300, 12345.678901234567, 0.0, -0.5]).unwrap();
        let back = parse_csv(&features_to_csv(&f)).unwrap();
        assert_eq!(back, f);
    }

    #[test]
    fn format_inference() {
        assert_eq!(Format::infer(Path::new("a/b.fbin")), Format::Fbin);
        assert_eq!(Format::infer(Path::new("a/b.csv")), Format::Csv);
        assert_eq!(Format::infer(Path::new("noext")), Format::Csv);
    }
}
