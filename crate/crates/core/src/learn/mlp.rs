use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::Dataset;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum Activation {
    #[default]
    Sigmoid,
    Tanh,
}

impl Activation {
    fn apply(self, z: f64) -> f64 {
        match self {
            Activation::Sigmoid => 1.0 / (1.0 + (-z).exp()),
            Activation::Tanh => z.tanh(),
        }
    }

    /// Derivative expressed through the activation output `a`.
    fn slope(self, a: f64) -> f64 {
        match self {
            Activation::Sigmoid => a * (1.0 - a),
            Activation::Tanh => 1.0 - a * a,
        }
    }
}

impl FromStr for Activation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sigmoid" => Ok(Activation::Sigmoid),
            "tanh" => Ok(Activation::Tanh),
            _ => Err(Error::Config(format!("unknown activation {s:?}"))),
        }
    }
}

/// Fully connected network; every layer, the output included, applies the
/// activation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Mlp {
    pub layers: Vec<usize>,
    /// `weights[l][j][i]` connects unit `i` of layer `l` to unit `j` of layer `l + 1`.
    pub weights: Vec<Vec<Vec<f64>>>,
    pub biases: Vec<Vec<f64>>,
    pub activation: Activation,
}

/// Per-parameter gradient, laid out like [`Mlp::weights`] and [`Mlp::biases`].
type Gradient = (Vec<Vec<Vec<f64>>>, Vec<Vec<f64>>);

impl Mlp {
    pub fn zeros(layers: &[usize], activation: Activation) -> Result<Self> {
        if layers.len() < 2 || layers.contains(&0) {
            return Err(Error::Config(format!(
                "layers need at least two positive sizes, got {layers:?}"
            )));
        }
        Ok(Mlp {
            layers: layers.to_vec(),
            weights: layers
                .windows(2)
                .map(|w| vec![vec![0.0; w[0]]; w[1]])
                .collect(),
            biases: layers[1..].iter().map(|&n| vec![0.0; n]).collect(),
            activation,
        })
    }

    /// Weights and biases drawn uniformly from `[-1, 1]`.
    pub fn random(layers: &[usize], activation: Activation, seed: u64) -> Result<Self> {
        let mut m = Self::zeros(layers, activation)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut p = m.params();
        for v in &mut p {
            *v = rng.random_range(-1.0..=1.0);
        }
        m.set_params(&p)?;
        Ok(m)
    }

    pub fn n_inputs(&self) -> usize {
        self.layers[0]
    }

    pub fn n_outputs(&self) -> usize {
        *self.layers.last().expect("at least two layers")
    }

    fn check_input(&self, x: &[f64]) -> Result<()> {
        if x.len() != self.n_inputs() {
            return Err(Error::Dimension {
                expected: self.n_inputs(),
                got: x.len(),
            });
        }
        Ok(())
    }

    fn activations(&self, x: &[f64]) -> Vec<Vec<f64>> {
        let mut acts = vec![x.to_vec()];
        for (w, b) in self.weights.iter().zip(&self.biases) {
            let prev = acts.last().expect("input layer present");
            let next = w
                .iter()
                .zip(b)
                .map(|(row, bias)| {
                    let z: f64 = row.iter().zip(prev).map(|(wi, xi)| wi * xi).sum::<f64>() + bias;
                    self.activation.apply(z)
                })
                .collect();
            acts.push(next);
        }
        acts
    }

    pub fn forward(&self, x: &[f64]) -> Result<Vec<f64>> {
        self.check_input(x)?;
        Ok(self.activations(x).pop().expect("output layer present"))
    }

    /// Squared-error cost `½ Σ (o − t)²`.
    pub fn loss(&self, x: &[f64], target: &[f64]) -> Result<f64> {
        let out = self.forward(x)?;
        self.check_target(target)?;
        Ok(0.5
            * out
                .iter()
                .zip(target)
                .map(|(o, t)| (o - t).powi(2))
                .sum::<f64>())
    }

    fn check_target(&self, t: &[f64]) -> Result<()> {
        if t.len() != self.n_outputs() {
            return Err(Error::Dimension {
                expected: self.n_outputs(),
                got: t.len(),
            });
        }
        Ok(())
    }

    /// Backpropagated gradient of [`loss`](Self::loss).
    pub fn gradient(&self, x: &[f64], target: &[f64]) -> Result<Gradient> {
        self.check_input(x)?;
        self.check_target(target)?;
        let acts = self.activations(x);
        let n = self.weights.len();
        let out = &acts[n];
        let mut delta: Vec<f64> = out
            .iter()
            .zip(target)
            .map(|(o, t)| (o - t) * self.activation.slope(*o))
            .collect();
        let mut gw = vec![Vec::new(); n];
        let mut gb = vec![Vec::new(); n];
        for l in (0..n).rev() {
            gw[l] = delta
                .iter()
                .map(|d| acts[l].iter().map(|a| d * a).collect())
                .collect();
            gb[l] = delta.clone();
            if l > 0 {
                delta = (0..self.layers[l])
                    .map(|i| {
                        let back: f64 = self.weights[l]
                            .iter()
                            .zip(&delta)
                            .map(|(row, d)| row[i] * d)
                            .sum();
                        back * self.activation.slope(acts[l][i])
                    })
                    .collect();
            }
        }
        Ok((gw, gb))
    }

    /// One descent update `θ ← θ − η ∂C/∂θ` on a single sample.
    pub fn sgd_step(&mut self, x: &[f64], target: &[f64], eta: f64) -> Result<()> {
        let (gw, gb) = self.gradient(x, target)?;
        for (w, g) in self
            .weights
            .iter_mut()
            .flatten()
            .flatten()
            .zip(gw.iter().flatten().flatten())
        {
            *w -= eta * g;
        }
        for (b, g) in self.biases.iter_mut().flatten().zip(gb.iter().flatten()) {
            *b -= eta * g;
        }
        Ok(())
    }

    /// All weights then all biases, layer by layer.
    pub fn params(&self) -> Vec<f64> {
        self.weights
            .iter()
            .flatten()
            .flatten()
            .chain(self.biases.iter().flatten())
            .copied()
            .collect()
    }

    pub fn set_params(&mut self, p: &[f64]) -> Result<()> {
        let n = self.n_params();
        if p.len() != n {
            return Err(Error::Dimension {
                expected: n,
                got: p.len(),
            });
        }
        let mut it = p.iter().copied();
        for v in self.weights.iter_mut().flatten().flatten() {
            *v = it.next().expect("length checked");
        }
        for v in self.biases.iter_mut().flatten() {
            *v = it.next().expect("length checked");
        }
        Ok(())
    }

    pub fn n_params(&self) -> usize {
        self.layers.windows(2).map(|w| w[0] * w[1] + w[1]).sum()
    }

    /// Gradient flattened in [`params`](Self::params) order.
    pub fn gradient_flat(&self, x: &[f64], target: &[f64]) -> Result<Vec<f64>> {
        let (gw, gb) = self.gradient(x, target)?;
        Ok(gw
            .iter()
            .flatten()
            .flatten()
            .chain(gb.iter().flatten())
            .copied()
            .collect())
    }

    /// One-hot target for `label`, or the scalar label for a single output.
    pub fn target_for(&self, label: usize) -> Result<Vec<f64>> {
        let k = self.n_outputs();
        if k == 1 {
            if label > 1 {
                return Err(Error::Label { label, classes: 2 });
            }
            return Ok(vec![label as f64]);
        }
        if label >= k {
            return Err(Error::Label { label, classes: k });
        }
        let mut t = vec![0.0; k];
        t[label] = 1.0;
        Ok(t)
    }

    /// Argmax of the outputs, or a 0.5 threshold for a single output.
    pub fn classify(&self, x: &[f64]) -> Result<usize> {
        let out = self.forward(x)?;
        if out.len() == 1 {
            return Ok(usize::from(out[0] >= 0.5));
        }
        Ok(out
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.total_cmp(b.1).then(b.0.cmp(&a.0)))
            .map(|(i, _)| i)
            .expect("non-empty output"))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MlpConfig {
    pub layers: Vec<usize>,
    pub eta: f64,
    pub epochs: usize,
    pub seed: u64,
    pub activation: Activation,
}

impl MlpConfig {
    pub fn new(layers: Vec<usize>, eta: f64, epochs: usize, seed: u64) -> Self {
        MlpConfig {
            layers,
            eta,
            epochs,
            seed,
            activation: Activation::Sigmoid,
        }
    }
}

/// Per-sample gradient descent, visiting the samples in a fresh seeded
/// order each epoch.
pub fn mlp_train(data: &Dataset, cfg: &MlpConfig) -> Result<Mlp> {
    if !(cfg.eta.is_finite() && cfg.eta > 0.0) {
        return Err(Error::Config(format!(
            "eta must be positive, got {}",
            cfg.eta
        )));
    }
    if cfg.epochs == 0 {
        return Err(Error::Config("epochs must be at least 1".into()));
    }
    if data.is_empty() {
        return Err(Error::Size { needed: 1, got: 0 });
    }
    let mut model = Mlp::random(&cfg.layers, cfg.activation, cfg.seed)?;
    if data.dim() != model.n_inputs() {
        return Err(Error::Dimension {
            expected: model.n_inputs(),
            got: data.dim(),
        });
    }
    let targets = data
        .labels
        .iter()
        .map(|&l| model.target_for(l))
        .collect::<Result<Vec<_>>>()?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(1));
    let mut order: Vec<usize> = (0..data.len()).collect();
    for _ in 0..cfg.epochs {
        order.shuffle(&mut rng);
        for &i in &order {
            model.sgd_step(&data.features[i], &targets[i], cfg.eta)?;
        }
    }
    Ok(model)
}

pub fn mlp_predict(model: &Mlp, x: &[f64]) -> Result<Vec<f64>> {
    model.forward(x)
}
