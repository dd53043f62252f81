//! Fully connected layer.

use super::{scoped, Param, ParamVisitor};
use ndarray::{Array2, Array3, ArrayView2, Ix2};
use rand_chacha::ChaCha8Rng;

/// `y = x W^T + b` with `W: [out, in]`.
#[derive(Debug, Clone)]
pub struct Linear {
    pub weight: Param,
    pub bias: Param,
    in_features: usize,
    out_features: usize,
    cache_x: Option<Array2<f64>>,
}

impl Linear {
    pub fn new(in_features: usize, out_features: usize, rng: &mut ChaCha8Rng) -> Self {
        Self {
            weight: Param::he_normal(&[out_features, in_features], in_features, rng),
            bias: Param::zeros(&[out_features]),
            in_features,
            out_features,
            cache_x: None,
        }
    }

    pub fn in_features(&self) -> usize {
        self.in_features
    }

    pub fn out_features(&self) -> usize {
        self.out_features
    }

    fn weight2(&self) -> ArrayView2<'_, f64> {
        self.weight.value.view().into_dimensionality::<Ix2>().unwrap()
    }

    pub fn forward(&mut self, x: &Array2<f64>) -> Array2<f64> {
        debug_assert_eq!(x.ncols(), self.in_features);
        let mut y = x.dot(&self.weight2().t());
        let bias = &self.bias.value;
        for mut row in y.rows_mut() {
            for (v, b) in row.iter_mut().zip(bias.iter()) {
                *v += *b;
            }
        }
        self.cache_x = Some(x.clone());
        y
    }

    pub fn backward(&mut self, dy: &Array2<f64>) -> Array2<f64> {
        let x = self.cache_x.as_ref().expect("forward before backward");
        let dw = dy.t().dot(x);
        self.weight
            .grad
            .view_mut()
            .into_dimensionality::<Ix2>()
            .unwrap()
            .scaled_add(1.0, &dw);
        let db = dy.sum_axis(ndarray::Axis(0));
        self.bias
            .grad
            .view_mut()
            .into_dimensionality::<ndarray::Ix1>()
            .unwrap()
            .scaled_add(1.0, &db);
        dy.dot(&self.weight2())
    }

    /// Token-sequence convenience wrapper: flattens `[N, S, D]` rows.
    pub fn forward3(&mut self, x: &Array3<f64>) -> Array3<f64> {
        let (n, s, d) = x.dim();
        let flat = x
            .to_shape((n * s, d))
            .expect("contiguous token tensor")
            .to_owned();
        let y = self.forward(&flat);
        let out = self.out_features;
        y.into_shape_with_order((n, s, out)).unwrap()
    }

    pub fn backward3(&mut self, dy: &Array3<f64>) -> Array3<f64> {
        let (n, s, d) = dy.dim();
        let flat = dy.to_shape((n * s, d)).unwrap().to_owned();
        let dx = self.backward(&flat);
        let din = self.in_features;
        dx.into_shape_with_order((n, s, din)).unwrap()
    }

    pub fn visit(&mut self, prefix: &str, f: &mut ParamVisitor) {
        f(&scoped(prefix, "weight"), &mut self.weight);
        f(&scoped(prefix, "bias"), &mut self.bias);
    }

    pub fn zero_grad(&mut self) {
        self.weight.zero_grad();
        self.bias.zero_grad();
    }
}
