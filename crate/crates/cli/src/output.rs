//! On-disk formats: record CSV/JSON, raw snapshots.

use std::path::{Path, PathBuf};

use logeuler_core::diagnostics::{Row, RunRecord, CSV_COLUMNS};
use logeuler_core::{Field, Grid, RegKind, Regularization};
use serde::Serialize;

use crate::error::CliError;

/// Magic bytes opening every snapshot file.
pub const SNAPSHOT_MAGIC: &[u8; 8] = b"LGEULSN1";

pub fn create_dir(dir: &Path) -> Result<(), CliError> {
    std::fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))
}

pub fn write_text(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| CliError::io(path, e))
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    write_text(path, &text)
}

/// JSON mirror of a record with extra report metadata.
#[derive(Serialize)]
struct RecordJson<'a, M: Serialize> {
    #[serde(flatten)]
    record: &'a RunRecord,
    columns: Vec<String>,
    meta: M,
}

/// Writes `record.csv` and `record.json` into `dir`.
pub fn write_record<M: Serialize>(dir: &Path, record: &RunRecord, meta: M) -> Result<(), CliError> {
    create_dir(dir)?;
    write_text(&dir.join("record.csv"), &record.to_csv())?;
    let mut columns: Vec<String> = CSV_COLUMNS.iter().map(|s| s.to_string()).collect();
    columns.extend((0..record.seeds.len()).map(|i| format!("dphi_norm_seed_{i}")));
    write_json(
        &dir.join("record.json"),
        &RecordJson {
            record,
            columns,
            meta,
        },
    )
}

/// Parses the CSV written by [`RunRecord::to_csv`].
pub fn read_record_csv(path: &Path) -> Result<RunRecord, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    let bad = |msg: String| CliError::Format {
        path: path.to_path_buf(),
        msg,
    };
    let mut lines = text.lines();
    let header: Vec<&str> = lines.next().ok_or_else(|| bad("empty file".into()))?.split(',').collect();
    if header.len() < CSV_COLUMNS.len() || header[..CSV_COLUMNS.len()] != CSV_COLUMNS {
        return Err(bad("unexpected header".into()));
    }
    let n_seeds = header.len() - CSV_COLUMNS.len();
    for (i, h) in header[CSV_COLUMNS.len()..].iter().enumerate() {
        if *h != format!("dphi_norm_seed_{i}") {
            return Err(bad(format!("unexpected column {h}")));
        }
    }
    let mut record = RunRecord::new(
        path.parent()
            .and_then(|p| p.file_name())
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_default(),
        vec![[f64::NAN, f64::NAN]; n_seeds],
    );
    for (ln, line) in lines.enumerate() {
        let vals = line
            .split(',')
            .map(|c| c.parse::<f64>())
            .collect::<Result<Vec<f64>, _>>()
            .map_err(|e| bad(format!("line {}: {e}", ln + 2)))?;
        if vals.len() != header.len() {
            return Err(bad(format!("line {}: {} cells", ln + 2, vals.len())));
        }
        record.rows.push(Row {
            t: vals[0],
            l1: vals[1],
            l2: vals[2],
            linf: vals[3],
            h1: vals[4],
            hneg1: vals[5],
            w14: vals[6],
            uinf: vals[7],
            duinf: vals[8],
            lambda0: vals[9],
            supp_r: vals[10],
            dphi: vals[11..].to_vec(),
        });
    }
    record.complete = true;
    Ok(record)
}

/// Snapshot header followed by `n²` little-endian `f64` values:
/// magic, `n: u64`, `ℓ`, `t`, `γ` (as `f64`), `kind: u8`, 7 bytes padding.
pub fn encode_snapshot(field: &Field, t: f64, reg: Regularization) -> Vec<u8> {
    let g = field.grid();
    let mut out = Vec::with_capacity(48 + 8 * g.len());
    out.extend_from_slice(SNAPSHOT_MAGIC);
    out.extend_from_slice(&(g.n() as u64).to_le_bytes());
    out.extend_from_slice(&g.box_half().to_le_bytes());
    out.extend_from_slice(&t.to_le_bytes());
    out.extend_from_slice(&reg.gamma.value().to_le_bytes());
    out.push(reg.kind.code());
    out.extend_from_slice(&[0u8; 7]);
    for v in field.values() {
        out.extend_from_slice(&v.to_le_bytes());
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
pub struct Snapshot {
    pub t: f64,
    pub gamma: f64,
    pub kind: RegKind,
    pub field: Field,
}

pub fn decode_snapshot(bytes: &[u8], path: &Path) -> Result<Snapshot, CliError> {
    let bad = |msg: &str| CliError::Format {
        path: path.to_path_buf(),
        msg: msg.to_string(),
    };
    if bytes.len() < 48 || &bytes[..8] != SNAPSHOT_MAGIC {
        return Err(bad("not a snapshot"));
    }
    let word = |i: usize| -> [u8; 8] { bytes[8 * i..8 * i + 8].try_into().unwrap() };
    let n = u64::from_le_bytes(word(1)) as usize;
    let box_half = f64::from_le_bytes(word(2));
    let t = f64::from_le_bytes(word(3));
    let gamma = f64::from_le_bytes(word(4));
    let kind = RegKind::from_code(bytes[40]).ok_or_else(|| bad("unknown multiplier kind"))?;
    let grid = Grid::new(n, box_half).map_err(|e| bad(&e.to_string()))?;
    if bytes.len() != 48 + 8 * grid.len() {
        return Err(bad("truncated snapshot"));
    }
    let values = bytes[48..]
        .chunks_exact(8)
        .map(|c| f64::from_le_bytes(c.try_into().unwrap()))
        .collect();
    Ok(Snapshot {
        t,
        gamma,
        kind,
        field: Field::from_values(grid, values),
    })
}

pub fn snapshot_path(dir: &Path, step: u64) -> PathBuf {
    dir.join("snapshots").join(format!("step_{step:07}.bin"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use logeuler_core::Gamma;

    #[test]
    fn snapshot_round_trip() {
        let g = Grid::new(16, 2.0).unwrap();
        let f = Field::from_fn(g, |x, y| x * y - 0.25 * x);
        let reg = Regularization::new(RegKind::LogGradient, Gamma::new(0.3).unwrap());
        let bytes = encode_snapshot(&f, 0.75, reg);
        assert_eq!(bytes.len(), 48 + 8 * 256);
        let s = decode_snapshot(&bytes, Path::new("s")).unwrap();
        assert_eq!(s.field.values(), f.values());
        assert_eq!((s.t, s.gamma, s.kind), (0.75, 0.3, RegKind::LogGradient));
        assert!(decode_snapshot(&bytes[..100], Path::new("s")).is_err());
    }

    #[test]
    fn csv_round_trip() {
        let mut rec = RunRecord::new("r", vec![[0.0, 0.0]]);
        rec.rows.push(Row {
            t: 0.1,
            l1: 1.0 / 3.0,
            l2: 2.0,
            linf: 3.0,
            h1: 4.0,
            hneg1: f64::NAN,
            w14: 5.0,
            uinf: 6.0,
            duinf: 7.0,
            lambda0: -1e-300,
            supp_r: 0.5,
            dphi: vec![1.0000000000000002],
        });
        let dir = tempfile::tempdir().unwrap();
        write_record(dir.path(), &rec, ()).unwrap();
        let back = read_record_csv(&dir.path().join("record.csv")).unwrap();
        assert_eq!(back.to_csv(), rec.to_csv());
        assert!(back.rows[0].hneg1.is_nan());
        assert_eq!(back.rows[0].dphi, rec.rows[0].dphi);
    }
}
