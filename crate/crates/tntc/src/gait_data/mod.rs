//! Gait skeleton sequences: loading, validation, padding, stratified splitting
//! and deterministic synthesis.
//!
//! A [`GaitSequence`] is a `[T, N_JOINTS, 3]` stack of 3D joint positions with
//! an [`EmotionLabel`]. Sequences are padded by cyclic duplication to
//! [`PADDED_LEN`] frames before encoding.

mod io;
mod split;
mod synthetic;

pub use io::{load_dataset, save_binary, save_csv, DataFormat};
pub use split::{stratified_kfold_split, FoldIndices};
pub use synthetic::{make_synthetic_dataset, synthesize_gait, MAX_ABS_COORD};

use crate::error::{Result, TntcError};
use ndarray::Array3;

/// Frame count every sequence is padded to (dataset maximum).
pub const PADDED_LEN: usize = 240;

/// Joint count of the 16-point pose model.
pub const N_JOINTS: usize = 16;

/// Number of emotion categories.
pub const N_CLASSES: usize = 4;

/// Emotion category with a fixed ordinal encoding.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EmotionLabel {
    Happy = 0,
    Sad = 1,
    Angry = 2,
    Neutral = 3,
}

impl EmotionLabel {
    pub const ALL: [EmotionLabel; N_CLASSES] = [
        EmotionLabel::Happy,
        EmotionLabel::Sad,
        EmotionLabel::Angry,
        EmotionLabel::Neutral,
    ];

    /// Stable ordinal in `0..4`.
    pub fn ordinal(self) -> usize {
        self as usize
    }

    pub fn from_ordinal(ord: usize) -> Result<Self> {
        Self::ALL
            .get(ord)
            .copied()
            .ok_or_else(|| TntcError::Schema(format!("label ordinal {ord} out of range 0..4")))
    }

    /// Lowercase category name used in the CSV format.
    pub fn name(self) -> &'static str {
        match self {
            EmotionLabel::Happy => "happy",
            EmotionLabel::Sad => "sad",
            EmotionLabel::Angry => "angry",
            EmotionLabel::Neutral => "neutral",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.iter().copied().find(|l| l.name() == name)
    }
}

impl std::fmt::Display for EmotionLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// A gait sequence: `frames[[t, joint, coord]]` positions plus a label.
#[derive(Debug, Clone, PartialEq)]
pub struct GaitSequence {
    /// Shape `[T, n_joints, 3]`.
    pub frames: Array3<f64>,
    pub label: EmotionLabel,
    pub id: String,
}

impl GaitSequence {
    /// Validates finiteness and the expected coordinate dimension.
    pub fn new(frames: Array3<f64>, label: EmotionLabel, id: impl Into<String>) -> Result<Self> {
        let id = id.into();
        let (t, _n, d) = frames.dim();
        if t == 0 {
            return Err(TntcError::Parse {
                id,
                reason: "sequence has zero frames".into(),
            });
        }
        if d != 3 {
            return Err(TntcError::Parse {
                id,
                reason: format!("coordinate dimension {d}, expected 3"),
            });
        }
        if let Some(bad) = frames.iter().position(|v| !v.is_finite()) {
            let n = frames.dim().1;
            let (t_bad, rest) = (bad / (n * 3), bad % (n * 3));
            return Err(TntcError::Parse {
                id,
                reason: format!(
                    "non-finite coordinate at frame {t_bad}, joint {}, axis {}",
                    rest / 3,
                    rest % 3
                ),
            });
        }
        Ok(Self { frames, label, id })
    }

    /// Raw frame count before padding.
    pub fn len(&self) -> usize {
        self.frames.dim().0
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn n_joints(&self) -> usize {
        self.frames.dim().1
    }

    /// True once the sequence has exactly [`PADDED_LEN`] frames.
    pub fn is_padded(&self) -> bool {
        self.len() == PADDED_LEN
    }
}

/// Pads (or truncates) a sequence to exactly `target_len` frames.
///
/// Output frame `t` equals input frame `t % T_raw`. Sequences longer than
/// `target_len` are truncated to the first `target_len` frames with a warning.
pub fn pad_by_duplication(seq: &GaitSequence, target_len: usize) -> Result<GaitSequence> {
    if target_len == 0 {
        return Err(TntcError::Contract("target_len must be positive".into()));
    }
    let t_raw = seq.len();
    if t_raw == 0 {
        return Err(TntcError::Contract(format!(
            "cannot pad empty sequence `{}`",
            seq.id
        )));
    }
    if t_raw == target_len {
        return Ok(seq.clone());
    }
    if t_raw > target_len {
        log::warn!(
            "sequence `{}` has {t_raw} frames, truncating to {target_len}",
            seq.id
        );
        let frames = seq
            .frames
            .slice(ndarray::s![..target_len, .., ..])
            .to_owned();
        return Ok(GaitSequence {
            frames,
            label: seq.label,
            id: seq.id.clone(),
        });
    }
    let n = seq.n_joints();
    let mut frames = Array3::zeros((target_len, n, 3));
    for t in 0..target_len {
        frames
            .slice_mut(ndarray::s![t, .., ..])
            .assign(&seq.frames.slice(ndarray::s![t % t_raw, .., ..]));
    }
    Ok(GaitSequence {
        frames,
        label: seq.label,
        id: seq.id.clone(),
    })
}

/// An in-memory dataset of gait sequences.
#[derive(Debug, Clone, Default)]
pub struct Dataset {
    pub samples: Vec<GaitSequence>,
}

impl Dataset {
    /// Builds a dataset, checking that all samples share one joint count.
    pub fn new(samples: Vec<GaitSequence>) -> Result<Self> {
        if let Some(first) = samples.first() {
            let n = first.n_joints();
            for s in &samples {
                if s.n_joints() != n {
                    return Err(TntcError::Schema(format!(
                        "sample `{}` has {} joints, expected {n}",
                        s.id,
                        s.n_joints()
                    )));
                }
            }
        }
        Ok(Self { samples })
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    /// Per-class sample counts indexed by label ordinal.
    pub fn class_counts(&self) -> [usize; N_CLASSES] {
        let mut counts = [0usize; N_CLASSES];
        for s in &self.samples {
            counts[s.label.ordinal()] += 1;
        }
        counts
    }

    pub fn labels(&self) -> Vec<EmotionLabel> {
        self.samples.iter().map(|s| s.label).collect()
    }

    /// Pads every sample to `target_len` frames.
    pub fn padded(&self, target_len: usize) -> Result<Dataset> {
        let samples = self
            .samples
            .iter()
            .map(|s| pad_by_duplication(s, target_len))
            .collect::<Result<Vec<_>>>()?;
        Ok(Dataset { samples })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use ndarray::Array3;

    fn seq_with_frames(t: usize) -> GaitSequence {
        let frames = Array3::from_shape_fn((t, N_JOINTS, 3), |(ti, n, d)| {
            (ti * 100 + n * 3 + d) as f64
        });
        GaitSequence::new(frames, EmotionLabel::Happy, format!("t{t}")).unwrap()
    }

    #[test]
    fn pad_identity_when_already_target_length() {
        let seq = seq_with_frames(240);
        let padded = pad_by_duplication(&seq, 240).unwrap();
        assert_eq!(padded.frames, seq.frames);
        assert_eq!(padded.id, seq.id);
    }

    #[test]
    fn pad_cycles_frames() {
        let seq = seq_with_frames(3);
        let padded = pad_by_duplication(&seq, 7).unwrap();
        assert_eq!(padded.len(), 7);
        let expect = [0usize, 1, 2, 0, 1, 2, 0];
        for (t, &src) in expect.iter().enumerate() {
            assert_eq!(
                padded.frames.slice(ndarray::s![t, .., ..]),
                seq.frames.slice(ndarray::s![src, .., ..]),
                "frame {t} should copy raw frame {src}"
            );
        }
    }

    #[test]
    fn pad_single_frame_repeats_everywhere() {
        let seq = seq_with_frames(1);
        let padded = pad_by_duplication(&seq, PADDED_LEN).unwrap();
        assert_eq!(padded.len(), PADDED_LEN);
        for t in 0..PADDED_LEN {
            assert_eq!(
                padded.frames.slice(ndarray::s![t, .., ..]),
                seq.frames.slice(ndarray::s![0, .., ..])
            );
        }
    }

    #[test]
    fn pad_is_idempotent() {
        let seq = seq_with_frames(17);
        let once = pad_by_duplication(&seq, PADDED_LEN).unwrap();
        let twice = pad_by_duplication(&once, PADDED_LEN).unwrap();
        assert_eq!(once.frames, twice.frames);
    }

    #[test]
    fn pad_matches_cyclic_index_oracle() {
        for t_raw in [1usize, 2, 7, 60, 239] {
            let seq = seq_with_frames(t_raw);
            let padded = pad_by_duplication(&seq, PADDED_LEN).unwrap();
            for t in 0..PADDED_LEN {
                for n in 0..N_JOINTS {
                    for d in 0..3 {
                        assert_eq!(padded.frames[[t, n, d]], seq.frames[[t % t_raw, n, d]]);
                    }
                }
            }
        }
    }

    #[test]
    fn pad_truncates_overlong_input() {
        let seq = seq_with_frames(250);
        let padded = pad_by_duplication(&seq, 240).unwrap();
        assert_eq!(padded.len(), 240);
        assert_eq!(
            padded.frames.slice(ndarray::s![..240, .., ..]),
            seq.frames.slice(ndarray::s![..240, .., ..])
        );
    }

    #[test]
    fn empty_sequence_rejected() {
        let frames = Array3::zeros((0, N_JOINTS, 3));
        assert!(GaitSequence::new(frames, EmotionLabel::Sad, "empty").is_err());
    }

    #[test]
    fn non_finite_coordinate_rejected_with_id() {
        let mut frames = Array3::zeros((2, N_JOINTS, 3));
        frames[[1, 4, 2]] = f64::NAN;
        let err = GaitSequence::new(frames, EmotionLabel::Angry, "bad-sample").unwrap_err();
        assert!(err.to_string().contains("bad-sample"), "{err}");
    }

    #[test]
    fn class_counts_track_samples() {
        let mut samples = Vec::new();
        for (i, label) in [EmotionLabel::Happy, EmotionLabel::Happy, EmotionLabel::Sad]
            .into_iter()
            .enumerate()
        {
            let frames = Array3::zeros((5, N_JOINTS, 3));
            samples.push(GaitSequence::new(frames, label, format!("s{i}")).unwrap());
        }
        let ds = Dataset::new(samples).unwrap();
        assert_eq!(ds.class_counts(), [2, 1, 0, 0]);
    }

    #[test]
    fn mixed_joint_counts_rejected() {
        let a = GaitSequence::new(Array3::zeros((4, 16, 3)), EmotionLabel::Happy, "a").unwrap();
        let b = GaitSequence::new(Array3::zeros((4, 15, 3)), EmotionLabel::Happy, "b").unwrap();
        assert!(Dataset::new(vec![a, b]).is_err());
    }

    #[test]
    fn label_ordinals_are_stable() {
        assert_eq!(EmotionLabel::Happy.ordinal(), 0);
        assert_eq!(EmotionLabel::Sad.ordinal(), 1);
        assert_eq!(EmotionLabel::Angry.ordinal(), 2);
        assert_eq!(EmotionLabel::Neutral.ordinal(), 3);
        for l in EmotionLabel::ALL {
            assert_eq!(EmotionLabel::from_ordinal(l.ordinal()).unwrap(), l);
            assert_eq!(EmotionLabel::from_name(l.name()).unwrap(), l);
        }
    }
}
