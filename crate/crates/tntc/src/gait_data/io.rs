//! On-disk dataset formats.
//!
//! Two canonical formats are supported:
//!
//! * CSV with header `id,label,t,joint,x,y,z`, one row per joint per frame.
//!   Rows of one sequence must be contiguous and sorted by `(t, joint)`,
//!   both 0-based and dense.
//! * A compact binary stream: magic `TNTC`, version `u16`, then per record
//!   `{id_len: u16, id: utf8, label: u8, t_raw: u32, n_joints: u16,
//!   t_raw * n_joints * 3 little-endian f32 in (t, joint, xyz) order}`.
//!   All integers are little-endian.

use super::{Dataset, EmotionLabel, GaitSequence};
use crate::error::{Result, TntcError};
use byteorder::{LittleEndian, ReadBytesExt, WriteBytesExt};
use ndarray::Array3;
use std::collections::HashSet;
use std::fs::File;
use std::io::{BufReader, BufWriter, ErrorKind, Read, Write};
use std::path::Path;

/// Dataset serialization format.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DataFormat {
    Csv,
    Binary,
}

impl DataFormat {
    /// Guesses the format from a file extension (`.csv` vs anything else).
    pub fn from_path(path: &Path) -> DataFormat {
        match path.extension().and_then(|e| e.to_str()) {
            Some("csv") => DataFormat::Csv,
            _ => DataFormat::Binary,
        }
    }
}

impl std::str::FromStr for DataFormat {
    type Err = TntcError;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(DataFormat::Csv),
            "binary" | "bin" => Ok(DataFormat::Binary),
            other => Err(TntcError::Config(format!(
                "unknown data format `{other}` (expected csv or binary)"
            ))),
        }
    }
}

const MAGIC: &[u8; 4] = b"TNTC";
const BINARY_VERSION: u16 = 1;

/// Loads and validates a dataset file.
pub fn load_dataset(path: &Path, format: DataFormat) -> Result<Dataset> {
    match format {
        DataFormat::Csv => load_csv(path),
        DataFormat::Binary => load_binary(path),
    }
}

#[derive(serde::Deserialize)]
struct CsvRow {
    id: String,
    label: String,
    t: u32,
    joint: u16,
    x: f64,
    y: f64,
    z: f64,
}

struct PendingSeq {
    id: String,
    label: EmotionLabel,
    coords: Vec<[f64; 3]>,
    n_joints: Option<usize>,
    next_t: u32,
    next_joint: u16,
}

impl PendingSeq {
    fn finish(mut self) -> Result<GaitSequence> {
        if self.next_joint != 0 {
            return Err(TntcError::Parse {
                id: self.id,
                reason: format!(
                    "last frame is incomplete ({} of {} joints)",
                    self.next_joint,
                    self.n_joints.unwrap_or(0)
                ),
            });
        }
        let n = match self.n_joints {
            Some(n) => n,
            // single-frame sequence finishing on the frame boundary
            None => {
                self.n_joints = Some(self.coords.len());
                self.coords.len()
            }
        };
        let t = self.coords.len() / n;
        let flat: Vec<f64> = self.coords.drain(..).flatten().collect();
        let frames = Array3::from_shape_vec((t, n, 3), flat)
            .map_err(|e| TntcError::Schema(format!("shape error for `{}`: {e}", self.id)))?;
        GaitSequence::new(frames, self.label, self.id)
    }

    fn push(&mut self, row: &CsvRow) -> Result<()> {
        let reject = |reason: String| -> TntcError {
            TntcError::Parse {
                id: row.id.clone(),
                reason,
            }
        };
        // Joint count is fixed by the first frame; later frames must match.
        if let Some(n) = self.n_joints {
            if row.t != self.next_t || usize::from(row.joint) != usize::from(self.next_joint) {
                return Err(reject(format!(
                    "rows must be dense and sorted by (t, joint); expected (t={}, joint={}), got (t={}, joint={})",
                    self.next_t, self.next_joint, row.t, row.joint
                )));
            }
            self.coords.push([row.x, row.y, row.z]);
            self.next_joint += 1;
            if usize::from(self.next_joint) == n {
                self.next_joint = 0;
                self.next_t += 1;
            }
        } else {
            // still discovering the joint count within frame 0
            if row.t == 0 {
                if usize::from(row.joint) != self.coords.len() {
                    return Err(reject(format!(
                        "joint indices of frame 0 must be dense, got {}",
                        row.joint
                    )));
                }
                self.coords.push([row.x, row.y, row.z]);
            } else if row.t == 1 && row.joint == 0 {
                self.n_joints = Some(self.coords.len());
                self.next_t = 1;
                self.next_joint = 1;
                self.coords.push([row.x, row.y, row.z]);
                if self.coords.len() % self.n_joints.unwrap() == 0 {
                    self.next_joint = 0;
                    self.next_t = 2;
                }
            } else {
                return Err(reject(format!(
                    "unexpected row (t={}, joint={}) while reading frame 0",
                    row.t, row.joint
                )));
            }
        }
        Ok(())
    }
}

fn load_csv(path: &Path) -> Result<Dataset> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .from_path(path)?;
    let mut samples: Vec<GaitSequence> = Vec::new();
    let mut seen_ids: HashSet<String> = HashSet::new();
    let mut current: Option<PendingSeq> = None;

    for record in reader.deserialize::<CsvRow>() {
        let row = record?;
        let switch = current.as_ref().map(|c| c.id != row.id).unwrap_or(true);
        if switch {
            if let Some(done) = current.take() {
                samples.push(done.finish()?);
            }
            if !seen_ids.insert(row.id.clone()) {
                return Err(TntcError::Parse {
                    id: row.id,
                    reason: "rows for one id must be contiguous".into(),
                });
            }
            let label = EmotionLabel::from_name(&row.label).ok_or_else(|| TntcError::Parse {
                id: row.id.clone(),
                reason: format!("unknown label `{}`", row.label),
            })?;
            if row.t != 0 || row.joint != 0 {
                return Err(TntcError::Parse {
                    id: row.id,
                    reason: format!(
                        "first row of a sequence must have t=0, joint=0, got (t={}, joint={})",
                        row.t, row.joint
                    ),
                });
            }
            current = Some(PendingSeq {
                id: row.id.clone(),
                label,
                coords: Vec::new(),
                n_joints: None,
                next_t: 0,
                next_joint: 0,
            });
        } else if let Some(c) = current.as_ref() {
            if EmotionLabel::from_name(&row.label) != Some(c.label) {
                return Err(TntcError::Parse {
                    id: row.id,
                    reason: format!("label changed mid-sequence to `{}`", row.label),
                });
            }
        }
        current.as_mut().unwrap().push(&row)?;
    }
    if let Some(done) = current.take() {
        samples.push(done.finish()?);
    }
    Dataset::new(samples)
}

/// Writes a dataset in the canonical CSV format.
pub fn save_csv(dataset: &Dataset, path: &Path) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(["id", "label", "t", "joint", "x", "y", "z"])?;
    for s in &dataset.samples {
        let (t_len, n, _) = s.frames.dim();
        for t in 0..t_len {
            for j in 0..n {
                w.write_record([
                    s.id.as_str(),
                    s.label.name(),
                    &t.to_string(),
                    &j.to_string(),
                    &format!("{:?}", s.frames[[t, j, 0]]),
                    &format!("{:?}", s.frames[[t, j, 1]]),
                    &format!("{:?}", s.frames[[t, j, 2]]),
                ])?;
            }
        }
    }
    w.flush()?;
    Ok(())
}

fn load_binary(path: &Path) -> Result<Dataset> {
    let mut r = BufReader::new(File::open(path)?);
    let mut magic = [0u8; 4];
    match r.read_exact(&mut magic) {
        Ok(()) => {}
        // zero-byte file decodes as an empty dataset
        Err(e) if e.kind() == ErrorKind::UnexpectedEof => return Dataset::new(Vec::new()),
        Err(e) => return Err(e.into()),
    }
    if &magic != MAGIC {
        return Err(TntcError::Schema(format!(
            "bad magic bytes {magic:?}, expected {MAGIC:?}"
        )));
    }
    let version = r.read_u16::<LittleEndian>()?;
    if version != BINARY_VERSION {
        return Err(TntcError::Schema(format!(
            "unsupported binary version {version}"
        )));
    }
    let mut samples = Vec::new();
    loop {
        let id_len = match r.read_u16::<LittleEndian>() {
            Ok(v) => v,
            Err(e) if e.kind() == ErrorKind::UnexpectedEof => break,
            Err(e) => return Err(e.into()),
        };
        let mut id_bytes = vec![0u8; usize::from(id_len)];
        r.read_exact(&mut id_bytes)?;
        let id = String::from_utf8(id_bytes)
            .map_err(|e| TntcError::Schema(format!("record id is not UTF-8: {e}")))?;
        let label_byte = r.read_u8()?;
        let label = EmotionLabel::from_ordinal(usize::from(label_byte)).map_err(|_| {
            TntcError::Parse {
                id: id.clone(),
                reason: format!("label byte {label_byte} out of range 0..4"),
            }
        })?;
        let t_raw = r.read_u32::<LittleEndian>()?;
        let n_joints = r.read_u16::<LittleEndian>()?;
        let count = t_raw as usize * usize::from(n_joints) * 3;
        let mut flat = vec![0f64; count];
        for v in flat.iter_mut() {
            *v = f64::from(r.read_f32::<LittleEndian>()?);
        }
        let frames = Array3::from_shape_vec((t_raw as usize, usize::from(n_joints), 3), flat)
            .map_err(|e| TntcError::Schema(format!("shape error for `{id}`: {e}")))?;
        samples.push(GaitSequence::new(frames, label, id)?);
    }
    Dataset::new(samples)
}

/// Writes a dataset in the compact binary format. Coordinates are stored as
/// f32, so values round-trip only to f32 precision.
pub fn save_binary(dataset: &Dataset, path: &Path) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    w.write_all(MAGIC)?;
    w.write_u16::<LittleEndian>(BINARY_VERSION)?;
    for s in &dataset.samples {
        let (t, n, _) = s.frames.dim();
        let id_bytes = s.id.as_bytes();
        if id_bytes.len() > usize::from(u16::MAX) {
            return Err(TntcError::Schema(format!("id `{}` too long", s.id)));
        }
        w.write_u16::<LittleEndian>(id_bytes.len() as u16)?;
        w.write_all(id_bytes)?;
        w.write_u8(s.label.ordinal() as u8)?;
        w.write_u32::<LittleEndian>(t as u32)?;
        w.write_u16::<LittleEndian>(n as u16)?;
        for v in s.frames.iter() {
            w.write_f32::<LittleEndian>(*v as f32)?;
        }
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gait_data::synthetic::make_synthetic_dataset;
    use std::io::Write as _;

    fn tmpfile(name: &str) -> (tempfile::TempDir, std::path::PathBuf) {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join(name);
        (dir, path)
    }

    #[test]
    fn csv_roundtrip_preserves_count_and_values() {
        let ds = make_synthetic_dataset(1, 5, 99).unwrap();
        assert_eq!(ds.len(), 4);
        let (_dir, path) = tmpfile("ds.csv");
        save_csv(&ds, &path).unwrap();
        let back = load_dataset(&path, DataFormat::Csv).unwrap();
        assert_eq!(back.len(), 4);
        for (a, b) in ds.samples.iter().zip(back.samples.iter()) {
            assert_eq!(a.id, b.id);
            assert_eq!(a.label, b.label);
            assert_eq!(a.frames, b.frames);
        }
    }

    #[test]
    fn binary_roundtrip_is_f32_exact() {
        let ds = make_synthetic_dataset(2, 7, 123).unwrap();
        let (_dir, path) = tmpfile("ds.bin");
        save_binary(&ds, &path).unwrap();
        let back = load_dataset(&path, DataFormat::Binary).unwrap();
        assert_eq!(back.len(), ds.len());
        for (a, b) in ds.samples.iter().zip(back.samples.iter()) {
            assert_eq!(a.id, b.id);
            assert_eq!(a.label, b.label);
            for (x, y) in a.frames.iter().zip(b.frames.iter()) {
                assert_eq!(*x as f32, *y as f32);
            }
        }
    }

    #[test]
    fn csv_with_three_records_loads_three_samples() {
        let (_dir, path) = tmpfile("three.csv");
        let mut f = File::create(&path).unwrap();
        writeln!(f, "id,label,t,joint,x,y,z").unwrap();
        for id in ["a", "b", "c"] {
            for t in 0..2 {
                for j in 0..3 {
                    writeln!(f, "{id},happy,{t},{j},0.1,0.2,0.3").unwrap();
                }
            }
        }
        let ds = load_dataset(&path, DataFormat::Csv).unwrap();
        assert_eq!(ds.len(), 3);
        assert_eq!(ds.samples[0].n_joints(), 3);
        assert_eq!(ds.samples[0].len(), 2);
    }

    #[test]
    fn csv_nan_coordinate_names_offending_sample() {
        let (_dir, path) = tmpfile("nan.csv");
        let mut f = File::create(&path).unwrap();
        writeln!(f, "id,label,t,joint,x,y,z").unwrap();
        writeln!(f, "ok,sad,0,0,1,2,3").unwrap();
        writeln!(f, "broken,sad,0,0,1,NaN,3").unwrap();
        let err = load_dataset(&path, DataFormat::Csv).unwrap_err();
        assert!(err.to_string().contains("broken"), "{err}");
    }

    #[test]
    fn empty_csv_is_valid_empty_dataset() {
        let (_dir, path) = tmpfile("empty.csv");
        let mut f = File::create(&path).unwrap();
        writeln!(f, "id,label,t,joint,x,y,z").unwrap();
        let ds = load_dataset(&path, DataFormat::Csv).unwrap();
        assert_eq!(ds.len(), 0);
    }

    #[test]
    fn csv_non_contiguous_id_rejected() {
        let (_dir, path) = tmpfile("split.csv");
        let mut f = File::create(&path).unwrap();
        writeln!(f, "id,label,t,joint,x,y,z").unwrap();
        writeln!(f, "a,happy,0,0,1,2,3").unwrap();
        writeln!(f, "b,happy,0,0,1,2,3").unwrap();
        writeln!(f, "a,happy,1,0,1,2,3").unwrap();
        let err = load_dataset(&path, DataFormat::Csv).unwrap_err();
        assert!(err.to_string().contains("contiguous"), "{err}");
    }

    #[test]
    fn csv_out_of_order_rows_rejected() {
        let (_dir, path) = tmpfile("order.csv");
        let mut f = File::create(&path).unwrap();
        writeln!(f, "id,label,t,joint,x,y,z").unwrap();
        writeln!(f, "a,happy,0,0,1,2,3").unwrap();
        writeln!(f, "a,happy,0,1,1,2,3").unwrap();
        writeln!(f, "a,happy,1,1,1,2,3").unwrap();
        assert!(load_dataset(&path, DataFormat::Csv).is_err());
    }

    #[test]
    fn binary_bad_magic_rejected() {
        let (_dir, path) = tmpfile("bad.bin");
        std::fs::write(&path, b"NOPE\x01\x00").unwrap();
        let err = load_dataset(&path, DataFormat::Binary).unwrap_err();
        assert!(err.to_string().contains("magic"), "{err}");
    }

    #[test]
    fn binary_bad_label_byte_rejected() {
        let (_dir, path) = tmpfile("badlabel.bin");
        let mut bytes = Vec::new();
        bytes.extend_from_slice(MAGIC);
        bytes.extend_from_slice(&1u16.to_le_bytes());
        bytes.extend_from_slice(&1u16.to_le_bytes()); // id len
        bytes.push(b'x');
        bytes.push(9); // label out of range
        bytes.extend_from_slice(&1u32.to_le_bytes());
        bytes.extend_from_slice(&1u16.to_le_bytes());
        bytes.extend_from_slice(&[0u8; 12]);
        std::fs::write(&path, bytes).unwrap();
        let err = load_dataset(&path, DataFormat::Binary).unwrap_err();
        assert!(err.to_string().contains("label"), "{err}");
    }
}
