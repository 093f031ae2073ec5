//! Binary field snapshots.
//!
//! Layout (little-endian throughout):
//!
//! | offset | size | content                                  |
//! |--------|------|------------------------------------------|
//! | 0      | 4    | magic `"NL4S"`                           |
//! | 4      | 4    | format version (u32, currently 1)        |
//! | 8      | 4    | d_sim (u32)                              |
//! | 12     | 4    | n, points per axis (u32)                 |
//! | 16     | 8    | box half-width L (f64)                   |
//! | 24     | 8    | simulation time (f64)                    |
//! | 32     | 8    | gamma (f64, NaN when unset)              |
//! | 40     | 8    | smoothing cutoff N (f64, NaN when unset) |
//! | 48     | 16·n^d | complex samples, interleaved (re, im), row-major |
//!
//! Round trips are bit-exact; loads reject bad magic or version (naming the
//! byte offset), truncated payloads (expected vs actual byte counts), and
//! non-finite samples.

use std::fs;
use std::io::Write;
use std::path::Path;

use num_complex::Complex64;
use thiserror::Error;

use nl4s_core::{GridSpec, PhysicalField};

pub const MAGIC: &[u8; 4] = b"NL4S";
pub const VERSION: u32 = 1;
pub const HEADER_BYTES: usize = 48;

#[derive(Debug, Error)]
pub enum SnapshotError {
    #[error("io error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("bad magic at byte offset 0: expected {expected:?}, found {found:?}")]
    BadMagic { expected: [u8; 4], found: [u8; 4] },
    #[error("unsupported format version at byte offset 4: expected {expected}, found {found}")]
    BadVersion { expected: u32, found: u32 },
    #[error("truncated file: header promises {expected} bytes, file has {actual}")]
    Truncated { expected: usize, actual: usize },
    #[error("non-finite sample at index {index}")]
    NonFinite { index: usize },
    #[error("invalid header: {0}")]
    InvalidHeader(String),
}

/// Run metadata carried alongside the samples.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SnapshotMeta {
    pub time: f64,
    /// NaN when unset.
    pub gamma: f64,
    /// NaN when unset.
    pub n_cut: f64,
}

impl Default for SnapshotMeta {
    fn default() -> Self {
        SnapshotMeta {
            time: 0.0,
            gamma: f64::NAN,
            n_cut: f64::NAN,
        }
    }
}

pub fn save(path: &Path, field: &PhysicalField, meta: SnapshotMeta) -> Result<(), SnapshotError> {
    let grid = field.grid();
    let mut buf = Vec::with_capacity(HEADER_BYTES + 16 * field.values().len());
    buf.extend_from_slice(MAGIC);
    buf.extend_from_slice(&VERSION.to_le_bytes());
    buf.extend_from_slice(&(grid.d_sim() as u32).to_le_bytes());
    buf.extend_from_slice(&(grid.n() as u32).to_le_bytes());
    buf.extend_from_slice(&grid.box_half_width().to_le_bytes());
    buf.extend_from_slice(&meta.time.to_le_bytes());
    buf.extend_from_slice(&meta.gamma.to_le_bytes());
    buf.extend_from_slice(&meta.n_cut.to_le_bytes());
    for (i, v) in field.values().iter().enumerate() {
        if !v.re.is_finite() || !v.im.is_finite() {
            return Err(SnapshotError::NonFinite { index: i });
        }
        buf.extend_from_slice(&v.re.to_le_bytes());
        buf.extend_from_slice(&v.im.to_le_bytes());
    }
    let mut file = fs::File::create(path).map_err(|source| SnapshotError::Io {
        path: path.display().to_string(),
        source,
    })?;
    file.write_all(&buf).map_err(|source| SnapshotError::Io {
        path: path.display().to_string(),
        source,
    })?;
    Ok(())
}

pub fn load(path: &Path) -> Result<(PhysicalField, SnapshotMeta), SnapshotError> {
    let bytes = fs::read(path).map_err(|source| SnapshotError::Io {
        path: path.display().to_string(),
        source,
    })?;
    if bytes.len() < HEADER_BYTES {
        return Err(SnapshotError::Truncated {
            expected: HEADER_BYTES,
            actual: bytes.len(),
        });
    }
    let magic: [u8; 4] = bytes[0..4].try_into().unwrap();
    if &magic != MAGIC {
        return Err(SnapshotError::BadMagic {
            expected: *MAGIC,
            found: magic,
        });
    }
    let u32_at = |o: usize| u32::from_le_bytes(bytes[o..o + 4].try_into().unwrap());
    let f64_at = |o: usize| f64::from_le_bytes(bytes[o..o + 8].try_into().unwrap());
    let version = u32_at(4);
    if version != VERSION {
        return Err(SnapshotError::BadVersion {
            expected: VERSION,
            found: version,
        });
    }
    let d_sim = u32_at(8) as usize;
    let n = u32_at(12) as usize;
    let l = f64_at(16);
    let meta = SnapshotMeta {
        time: f64_at(24),
        gamma: f64_at(32),
        n_cut: f64_at(40),
    };
    let grid = GridSpec::new(d_sim, n, l)
        .map_err(|e| SnapshotError::InvalidHeader(e.to_string()))?;
    let expected = HEADER_BYTES + 16 * grid.len();
    if bytes.len() != expected {
        return Err(SnapshotError::Truncated {
            expected,
            actual: bytes.len(),
        });
    }
    let mut values = Vec::with_capacity(grid.len());
    for i in 0..grid.len() {
        let o = HEADER_BYTES + 16 * i;
        let re = f64_at(o);
        let im = f64_at(o + 8);
        if !re.is_finite() || !im.is_finite() {
            return Err(SnapshotError::NonFinite { index: i });
        }
        values.push(Complex64::new(re, im));
    }
    let field = PhysicalField::new(grid, values)
        .map_err(|e| SnapshotError::InvalidHeader(e.to_string()))?;
    Ok((field, meta))
}

#[cfg(test)]
mod tests {
    use super::*;
    use nl4s_core::FieldSampler;

    #[test]
    fn roundtrip_is_bit_identical() {
        let dir = tempfile::tempdir().unwrap();
        let grid = GridSpec::new(2, 16, 3.5).unwrap();
        let f = FieldSampler::new(5).localized(grid);
        let meta = SnapshotMeta {
            time: 1.25,
            gamma: 1.5,
            n_cut: f64::NAN,
        };
        let p1 = dir.path().join("a.nl4s");
        let p2 = dir.path().join("b.nl4s");
        save(&p1, &f, meta).unwrap();
        let (g, m2) = load(&p1).unwrap();
        save(&p2, &g, m2).unwrap();
        assert_eq!(fs::read(&p1).unwrap(), fs::read(&p2).unwrap());
        assert_eq!(f.values(), g.values());
        assert!(m2.n_cut.is_nan());
    }

    #[test]
    fn corrupted_magic_is_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let grid = GridSpec::new(1, 16, 1.0).unwrap();
        let f = PhysicalField::zeros(grid);
        let p = dir.path().join("c.nl4s");
        save(&p, &f, SnapshotMeta::default()).unwrap();
        let mut bytes = fs::read(&p).unwrap();
        bytes[1] = b'X';
        fs::write(&p, &bytes).unwrap();
        match load(&p) {
            Err(SnapshotError::BadMagic { .. }) => {}
            other => panic!("expected BadMagic, got {other:?}"),
        }
    }

    #[test]
    fn truncation_reports_byte_counts() {
        let dir = tempfile::tempdir().unwrap();
        let grid = GridSpec::new(1, 16, 1.0).unwrap();
        let f = PhysicalField::zeros(grid);
        let p = dir.path().join("t.nl4s");
        save(&p, &f, SnapshotMeta::default()).unwrap();
        let bytes = fs::read(&p).unwrap();
        fs::write(&p, &bytes[..bytes.len() - 7]).unwrap();
        match load(&p) {
            Err(SnapshotError::Truncated { expected, actual }) => {
                assert_eq!(expected, HEADER_BYTES + 16 * 16);
                assert_eq!(actual, HEADER_BYTES + 16 * 16 - 7);
            }
            other => panic!("expected Truncated, got {other:?}"),
        }
    }

    #[test]
    fn non_finite_payload_is_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let grid = GridSpec::new(1, 16, 1.0).unwrap();
        let f = PhysicalField::zeros(grid);
        let p = dir.path().join("n.nl4s");
        save(&p, &f, SnapshotMeta::default()).unwrap();
        let mut bytes = fs::read(&p).unwrap();
        let nan = f64::NAN.to_le_bytes();
        bytes[HEADER_BYTES..HEADER_BYTES + 8].copy_from_slice(&nan);
        fs::write(&p, &bytes).unwrap();
        match load(&p) {
            Err(SnapshotError::NonFinite { index: 0 }) => {}
            other => panic!("expected NonFinite, got {other:?}"),
        }
    }
}
