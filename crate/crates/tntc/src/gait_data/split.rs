//! Stratified k-fold splitting.
//!
//! Each class's sample indices are shuffled with a seeded PRNG and dealt
//! round-robin to the k folds, so per-class test counts across folds differ
//! by at most one.

use super::{Dataset, EmotionLabel, N_CLASSES};
use crate::error::{Result, TntcError};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Train/test index pair for one fold.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FoldIndices {
    pub train: Vec<usize>,
    pub test: Vec<usize>,
}

/// Splits `labels` (one per sample) into `k` stratified folds.
///
/// Deterministic given `seed`. Fails if any class has fewer than `k` samples.
pub fn stratified_kfold_split(data: &Dataset, k: usize, seed: u64) -> Result<Vec<FoldIndices>> {
    stratified_kfold_from_labels(&data.labels(), k, seed)
}

/// Label-only variant used when full sequences are not needed.
pub fn stratified_kfold_from_labels(
    labels: &[EmotionLabel],
    k: usize,
    seed: u64,
) -> Result<Vec<FoldIndices>> {
    if k == 0 {
        return Err(TntcError::Contract("k must be positive".into()));
    }
    let mut per_class: [Vec<usize>; N_CLASSES] = Default::default();
    for (i, label) in labels.iter().enumerate() {
        per_class[label.ordinal()].push(i);
    }
    for (c, idxs) in per_class.iter().enumerate() {
        if !idxs.is_empty() && idxs.len() < k {
            return Err(TntcError::Stratification(format!(
                "class `{}` has {} samples, fewer than k={k}",
                EmotionLabel::from_ordinal(c).unwrap(),
                idxs.len()
            )));
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut test_sets: Vec<Vec<usize>> = vec![Vec::new(); k];
    for idxs in per_class.iter_mut() {
        idxs.shuffle(&mut rng);
        for (pos, &idx) in idxs.iter().enumerate() {
            test_sets[pos % k].push(idx);
        }
    }

    let mut folds = Vec::with_capacity(k);
    for test in test_sets.iter_mut() {
        test.sort_unstable();
        let train = (0..labels.len()).filter(|i| !test.contains(i)).collect();
        folds.push(FoldIndices {
            train,
            test: test.clone(),
        });
    }
    Ok(folds)
}
