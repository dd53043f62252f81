//! Skeleton-sequence image encoders.
//!
//! A padded sequence becomes two 3-channel images:
//!
//! * SJI (skeleton joint image): raw x/y/z joint coordinates over time,
//!   min-max normalized per channel to `[0, 1]`.
//! * AFI (affective feature image): per-joint projection angles onto the
//!   three coordinate planes, mapped affinely from `(-pi/2, pi/2)` to `[0, 1]`.
//!
//! Both raw maps have shape `[T, n_joints, 3]` (time down, joints across)
//! and are resized for the network with half-pixel-center bilinear
//! interpolation.

use crate::error::{Result, TntcError};
use crate::gait_data::{GaitSequence, PADDED_LEN};
use ndarray::{s, Array3};

/// Which encoding produced an image.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ImageKind {
    Sji,
    Afi,
}

impl ImageKind {
    pub fn name(self) -> &'static str {
        match self {
            ImageKind::Sji => "sji",
            ImageKind::Afi => "afi",
        }
    }
}

/// A 3-channel real-valued image with values in `[0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct EncodedImage {
    /// Shape `[H, W, 3]`.
    pub pixels: Array3<f64>,
    pub kind: ImageKind,
    pub source_id: String,
}

impl EncodedImage {
    pub fn height(&self) -> usize {
        self.pixels.dim().0
    }
    pub fn width(&self) -> usize {
        self.pixels.dim().1
    }
}

/// Three 3x2 projection operators with orthonormal columns, plus the
/// epsilon used to keep the arctan denominator finite.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectionBasis {
    /// `operators[i]` projects onto plane i; row-major `[3][2]`.
    pub operators: [[[f64; 2]; 3]; 3],
    pub epsilon: f64,
}

impl ProjectionBasis {
    /// Builds the three plane operators from unit vectors `e1, e2, e3`:
    /// `[e1 e2]`, `[e1 e3]`, `[e2 e3]`.
    pub fn from_unit_vectors(e1: [f64; 3], e2: [f64; 3], e3: [f64; 3], epsilon: f64) -> Result<Self> {
        let pack = |a: [f64; 3], b: [f64; 3]| -> [[f64; 2]; 3] {
            [[a[0], b[0]], [a[1], b[1]], [a[2], b[2]]]
        };
        let basis = Self {
            operators: [pack(e1, e2), pack(e1, e3), pack(e2, e3)],
            epsilon,
        };
        basis.validate()?;
        Ok(basis)
    }

    fn validate(&self) -> Result<()> {
        if !(self.epsilon > 0.0) {
            return Err(TntcError::Config(format!(
                "epsilon must be positive, got {}",
                self.epsilon
            )));
        }
        for (i, op) in self.operators.iter().enumerate() {
            let col = |c: usize| [op[0][c], op[1][c], op[2][c]];
            let dot = |a: [f64; 3], b: [f64; 3]| a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
            let (c0, c1) = (col(0), col(1));
            if (dot(c0, c0) - 1.0).abs() > 1e-12
                || (dot(c1, c1) - 1.0).abs() > 1e-12
                || dot(c0, c1).abs() > 1e-12
            {
                return Err(TntcError::Config(format!(
                    "operator {i} columns are not orthonormal"
                )));
            }
        }
        Ok(())
    }
}

impl Default for ProjectionBasis {
    /// Standard basis: the operators are literal coordinate-plane projections.
    fn default() -> Self {
        Self::from_unit_vectors(
            [1.0, 0.0, 0.0],
            [0.0, 1.0, 0.0],
            [0.0, 0.0, 1.0],
            DEFAULT_EPSILON,
        )
        .expect("standard basis is orthonormal")
    }
}

/// Default denominator guard for the projection angle.
pub const DEFAULT_EPSILON: f64 = 1e-6;

/// Projection angle of a point onto plane `plane` (0-based index into the
/// basis operators): `arctan(y' / (x' + eps))` with `(x', y') = p^T o_i`.
/// The result lies strictly inside `(-pi/2, pi/2)`.
pub fn projection_angle(p: [f64; 3], basis: &ProjectionBasis, plane: usize) -> f64 {
    let op = &basis.operators[plane];
    let x = p[0] * op[0][0] + p[1] * op[1][0] + p[2] * op[2][0];
    let y = p[0] * op[0][1] + p[1] * op[1][1] + p[2] * op[2][1];
    (y / (x + basis.epsilon)).atan()
}

fn require_padded(seq: &GaitSequence) -> Result<()> {
    if !seq.is_padded() {
        return Err(TntcError::Contract(format!(
            "sequence `{}` has {} frames, expected padded length {PADDED_LEN}",
            seq.id,
            seq.len()
        )));
    }
    Ok(())
}

/// Encodes the skeleton joint image: channel d of pixel (t, n) is coordinate
/// d of joint n at frame t, min-max normalized per channel. A degenerate
/// channel (max == min) maps to all zeros.
pub fn encode_sji(seq: &GaitSequence) -> Result<EncodedImage> {
    require_padded(seq)?;
    let mut pixels = seq.frames.clone();
    for d in 0..3 {
        let mut channel = pixels.slice_mut(s![.., .., d]);
        let min = channel.fold(f64::INFINITY, |a, &v| a.min(v));
        let max = channel.fold(f64::NEG_INFINITY, |a, &v| a.max(v));
        let range = max - min;
        if range > 0.0 {
            channel.mapv_inplace(|v| (v - min) / range);
        } else {
            channel.fill(0.0);
        }
    }
    Ok(EncodedImage {
        pixels,
        kind: ImageKind::Sji,
        source_id: seq.id.clone(),
    })
}

/// Encodes the affective feature image: channel i of pixel (t, n) is the
/// projection angle of joint n at frame t onto plane i, mapped from
/// `(-pi/2, pi/2)` to `[0, 1]` via `(phi + pi/2) / pi`.
pub fn encode_afi(seq: &GaitSequence, basis: &ProjectionBasis) -> Result<EncodedImage> {
    require_padded(seq)?;
    let (t_len, n, _) = seq.frames.dim();
    let mut pixels = Array3::zeros((t_len, n, 3));
    for plane in 0..3 {
        let op = &basis.operators[plane];
        let mut channel = pixels.slice_mut(s![.., .., plane]);
        let px = seq.frames.slice(s![.., .., 0]);
        let py = seq.frames.slice(s![.., .., 1]);
        let pz = seq.frames.slice(s![.., .., 2]);
        ndarray::Zip::from(&mut channel)
            .and(&px)
            .and(&py)
            .and(&pz)
            .for_each(|out, &a, &b, &c| {
                let x = a * op[0][0] + b * op[1][0] + c * op[2][0];
                let y = a * op[0][1] + b * op[1][1] + c * op[2][1];
                let phi = (y / (x + basis.epsilon)).atan();
                *out = (phi + std::f64::consts::FRAC_PI_2) / std::f64::consts::PI;
            });
    }
    Ok(EncodedImage {
        pixels,
        kind: ImageKind::Afi,
        source_id: seq.id.clone(),
    })
}

/// Bilinear resize with half-pixel sample centers and edge clamping.
/// Values never leave the input's `[min, max]`.
pub fn resize_bilinear(img: &EncodedImage, out_h: usize, out_w: usize) -> Result<EncodedImage> {
    let (h, w, c) = img.pixels.dim();
    if out_h == 0 || out_w == 0 {
        return Err(TntcError::Contract(format!(
            "target size {out_h}x{out_w} must be positive"
        )));
    }
    if (out_h, out_w) == (h, w) {
        return Ok(img.clone());
    }
    let mut out = Array3::zeros((out_h, out_w, c));
    let scale_h = h as f64 / out_h as f64;
    let scale_w = w as f64 / out_w as f64;
    for oy in 0..out_h {
        let sy = (oy as f64 + 0.5) * scale_h - 0.5;
        let y0 = sy.floor();
        let wy = sy - y0;
        let y0i = (y0 as isize).clamp(0, h as isize - 1) as usize;
        let y1i = (y0 as isize + 1).clamp(0, h as isize - 1) as usize;
        for ox in 0..out_w {
            let sx = (ox as f64 + 0.5) * scale_w - 0.5;
            let x0 = sx.floor();
            let wx = sx - x0;
            let x0i = (x0 as isize).clamp(0, w as isize - 1) as usize;
            let x1i = (x0 as isize + 1).clamp(0, w as isize - 1) as usize;
            for ch in 0..c {
                let top = img.pixels[[y0i, x0i, ch]] * (1.0 - wx) + img.pixels[[y0i, x1i, ch]] * wx;
                let bot = img.pixels[[y1i, x0i, ch]] * (1.0 - wx) + img.pixels[[y1i, x1i, ch]] * wx;
                out[[oy, ox, ch]] = top * (1.0 - wy) + bot * wy;
            }
        }
    }
    Ok(EncodedImage {
        pixels: out,
        kind: img.kind,
        source_id: img.source_id.clone(),
    })
}
