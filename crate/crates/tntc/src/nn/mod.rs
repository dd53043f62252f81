//! Minimal f64 neural-network toolkit with explicit forward caches and
//! hand-written backward passes.
//!
//! Layers own their parameters and the activations needed for the backward
//! pass; `backward` accumulates parameter gradients in place and returns the
//! gradient with respect to the layer input. Parameters are reachable by
//! hierarchical name through [`visit`] callbacks, which is what the
//! optimizer, checkpointing and the finite-difference tests build on.

pub mod act;
pub mod attention;
pub mod conv;
pub mod linear;
pub mod loss;
pub mod norm;
pub mod pool;
pub mod resize;
pub mod transformer;

use ndarray::{ArrayD, IxDyn};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

/// Forward-pass mode; batch normalization is the only consumer.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Train,
    Eval,
}

/// A trainable tensor and its gradient accumulator.
#[derive(Debug, Clone)]
pub struct Param {
    pub value: ArrayD<f64>,
    pub grad: ArrayD<f64>,
}

impl Param {
    pub fn new(value: ArrayD<f64>) -> Self {
        let grad = ArrayD::zeros(value.raw_dim());
        Self { value, grad }
    }

    pub fn zeros(shape: &[usize]) -> Self {
        Self::new(ArrayD::zeros(IxDyn(shape)))
    }

    pub fn ones(shape: &[usize]) -> Self {
        Self::new(ArrayD::from_elem(IxDyn(shape), 1.0))
    }

    /// Gaussian init with the given standard deviation.
    pub fn randn(shape: &[usize], std: f64, rng: &mut ChaCha8Rng) -> Self {
        let dist = Normal::new(0.0, std).expect("std must be finite");
        let mut value = ArrayD::zeros(IxDyn(shape));
        for v in value.iter_mut() {
            *v = dist.sample(rng);
        }
        Self::new(value)
    }

    /// Fan-in scaled init for layers followed by a rectifier.
    pub fn he_normal(shape: &[usize], fan_in: usize, rng: &mut ChaCha8Rng) -> Self {
        Self::randn(shape, (2.0 / fan_in as f64).sqrt(), rng)
    }

    pub fn zero_grad(&mut self) {
        self.grad.fill(0.0);
    }

    pub fn len(&self) -> usize {
        self.value.len()
    }

    pub fn is_empty(&self) -> bool {
        self.value.is_empty()
    }
}

/// Callback type used to walk a module's parameters in a stable order.
pub type ParamVisitor<'a> = dyn FnMut(&str, &mut Param) + 'a;

/// Joins a name onto a hierarchical prefix.
pub fn scoped(prefix: &str, name: &str) -> String {
    if prefix.is_empty() {
        name.to_string()
    } else {
        format!("{prefix}.{name}")
    }
}

/// Derives an independent child RNG; used to give each submodule its own
/// deterministic initialization stream.
pub fn child_rng(rng: &mut ChaCha8Rng) -> ChaCha8Rng {
    use rand::RngCore;
    ChaCha8Rng::seed_from_u64(rng.next_u64())
}
