//! Two-stream gait-based emotion recognition.
//!
//! The pipeline encodes 3D skeleton gait sequences into two images — a
//! skeleton joint image (raw coordinates) and an affective feature image
//! (plane-projection angles) — feeds them through two residual-network
//! streams whose features are exchanged at every level by transformer
//! complementarity modules, and classifies the fused feature into one of
//! four emotions. A training harness provides momentum SGD, a step
//! learning-rate schedule, stratified 5-fold cross-validation and the
//! ablation suite over stream/module configurations.
//!
//! Entry points:
//!
//! * [`gait_data`] — sequences, padding, dataset IO, stratified splits,
//!   synthetic data.
//! * [`encoders`] — SJI/AFI encoding and bilinear resizing.
//! * [`backbone`], [`tcm`], [`head`], [`model`] — the network.
//! * [`training`] — optimization loop, cross-validation, ablations.
//! * [`cli`] — the command-line pipeline used by the `tntc` binary.
//!
//! See the crate `examples/` directory for one runnable example per
//! capability.

pub mod encoders;
pub mod error;
pub mod gait_data;

pub use error::{Result, TntcError};
