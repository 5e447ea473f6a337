//! A small trainable scorer: one embedding table, a linear sentence-score
//! head over the mean token embedding, and a logistic per-token head. It is
//! deliberately shallow — enough capacity to carry the ranking and labeling
//! losses at desk scale, with exact analytic gradients that a finite
//! difference check can verify.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{
    dynamic_margin, pairwise_ce_loss, sigmoid, ScorerModel, ScoringError, TrainableScorer,
    CE_EPSILON,
};
use crate::prompting::{tokenize, RenderedSentence, TemplateSet};
use crate::taxonomy::{Taxonomy, TaxonomyPath};

pub const UNK_TOKEN: &str = "<unk>";

#[derive(Debug, Error)]
pub enum TrainError {
    #[error("no training examples")]
    EmptyExamples,
    #[error("bad training config: {0}")]
    BadConfig(String),
    #[error("non-finite loss at epoch {epoch}, example {example}")]
    NonFiniteLoss { epoch: usize, example: usize },
    #[error(transparent)]
    Scoring(#[from] ScoringError),
    #[error("checkpoint rejected: {0}")]
    Checkpoint(String),
}

/// Training knobs. `k` scales the dynamic margin and must stay within
/// `[0.1, 1]`; the learning rate default is the usual fine-tuning rate
/// rescaled to this scorer's magnitude.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrainConfig {
    pub k: f64,
    pub learning_rate: f64,
    pub dropout: f64,
    pub epochs: usize,
    pub seed: u64,
    pub negatives_per_positive: usize,
    pub weight_decay: f64,
}

impl Default for TrainConfig {
    fn default() -> Self {
        Self {
            k: 0.5,
            learning_rate: 0.05,
            dropout: 0.1,
            epochs: 30,
            seed: 1,
            negatives_per_positive: 4,
            weight_decay: 0.0,
        }
    }
}

impl TrainConfig {
    pub fn validate(&self) -> Result<(), TrainError> {
        if !(0.1..=1.0).contains(&self.k) {
            return Err(TrainError::BadConfig(format!(
                "margin scale k={} outside [0.1, 1]",
                self.k
            )));
        }
        if !(self.learning_rate > 0.0 && self.learning_rate.is_finite()) {
            return Err(TrainError::BadConfig("learning rate must be positive".into()));
        }
        if !(0.0..1.0).contains(&self.dropout) {
            return Err(TrainError::BadConfig("dropout must be in [0, 1)".into()));
        }
        if self.negatives_per_positive == 0 {
            return Err(TrainError::BadConfig("need at least one negative".into()));
        }
        if self.weight_decay < 0.0 {
            return Err(TrainError::BadConfig("weight decay must be >= 0".into()));
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Training examples
// ---------------------------------------------------------------------------

/// One ranking step: the gold-parent sentence against sampled negatives,
/// each with the candidate's taxonomy path for the margin.
#[derive(Debug, Clone)]
pub struct RankingExample {
    pub positive: (RenderedSentence, TaxonomyPath),
    pub negatives: Vec<(RenderedSentence, TaxonomyPath)>,
}

/// Per-token target for the joint labeling head.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TokenLabel {
    /// Token of a candidate that is a true child of the query.
    Child,
    /// Token of a candidate that stays a sibling.
    Sibling,
    /// Everything else: query, parent, grandchildren, template filler.
    Ignore,
}

/// One labeling step over a joint stage-two sentence.
#[derive(Debug, Clone)]
pub struct TokenLabelingExample {
    pub sentence: RenderedSentence,
    pub labels: Vec<TokenLabel>,
}

impl TokenLabelingExample {
    pub fn new(sentence: RenderedSentence, labels: Vec<TokenLabel>) -> Self {
        assert_eq!(
            labels.len(),
            sentence.tokens.len(),
            "one label per sentence token"
        );
        Self { sentence, labels }
    }
}

/// One binary step for the pair-wise classifier.
#[derive(Debug, Clone)]
pub struct PairExample {
    pub sentence: RenderedSentence,
    pub label: bool,
}

#[derive(Debug, Clone)]
pub enum TrainExample {
    Ranking(RankingExample),
    TokenLabeling(TokenLabelingExample),
    Pair(PairExample),
}

impl TrainExample {
    fn sentences(&self) -> Vec<&RenderedSentence> {
        match self {
            TrainExample::Ranking(r) => std::iter::once(&r.positive.0)
                .chain(r.negatives.iter().map(|(s, _)| s))
                .collect(),
            TrainExample::TokenLabeling(t) => vec![&t.sentence],
            TrainExample::Pair(p) => vec![&p.sentence],
        }
    }
}

// ---------------------------------------------------------------------------
// The scorer
// ---------------------------------------------------------------------------

/// Trainable reference scorer. Parameters live in one flat vector:
/// `[embeddings (v*d) | score_w (d) | score_b | token_w (d) | token_b]`,
/// which keeps checkpointing and finite-difference probing trivial.
#[derive(Debug, Clone, PartialEq)]
pub struct EmbeddingScorer {
    vocab: BTreeMap<String, usize>,
    vocab_list: Vec<String>,
    dim: usize,
    params: Vec<f64>,
}

impl EmbeddingScorer {
    /// Builds a scorer over the given tokens (an `<unk>` slot is prepended)
    /// with embeddings initialized uniformly in `±0.1` under `seed`.
    pub fn new(tokens: impl IntoIterator<Item = String>, dim: usize, seed: u64) -> Self {
        assert!(dim > 0, "embedding width must be positive");
        let mut vocab_list = vec![UNK_TOKEN.to_string()];
        let mut vocab = BTreeMap::from([(UNK_TOKEN.to_string(), 0usize)]);
        for tok in tokens {
            if !vocab.contains_key(&tok) {
                vocab.insert(tok.clone(), vocab_list.len());
                vocab_list.push(tok);
            }
        }
        let n = Self::param_count_for(vocab_list.len(), dim);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let params = (0..n).map(|_| rng.gen_range(-0.1..0.1)).collect();
        Self {
            vocab,
            vocab_list,
            dim,
            params,
        }
    }

    /// Default vocabulary for a taxonomy: the separator and template tokens,
    /// then every surface token in preorder.
    pub fn suggested_vocab(t: &Taxonomy, templates: &TemplateSet) -> Vec<String> {
        let mut out = tokenize(crate::prompting::SEPARATOR);
        out.push("it".to_string());
        for tpl in templates.iter() {
            out.extend(tokenize(&tpl.pattern));
        }
        for id in t.preorder() {
            out.extend(tokenize(t.surface(id)));
        }
        out
    }

    fn param_count_for(vocab: usize, dim: usize) -> usize {
        vocab * dim + 2 * (dim + 1)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vocab(&self) -> &[String] {
        &self.vocab_list
    }

    fn token_index(&self, token: &str) -> usize {
        self.vocab.get(token).copied().unwrap_or(0)
    }

    fn embedding(&self, index: usize) -> &[f64] {
        &self.params[index * self.dim..(index + 1) * self.dim]
    }

    fn score_w_at(&self) -> usize {
        self.vocab_list.len() * self.dim
    }
    fn score_b_at(&self) -> usize {
        self.score_w_at() + self.dim
    }
    fn token_w_at(&self) -> usize {
        self.score_b_at() + 1
    }
    fn token_b_at(&self) -> usize {
        self.token_w_at() + self.dim
    }

    // Mean of (possibly dropout-masked) token embeddings; zero vector for an
    // empty sentence. `mask[i] = false` zeroes token i; kept tokens scale by
    // `scale` so inference needs no correction.
    fn mean_embedding(&self, s: &RenderedSentence, mask: Option<(&[bool], f64)>) -> Vec<f64> {
        let mut mean = vec![0.0; self.dim];
        if s.tokens.is_empty() {
            return mean;
        }
        for (i, tok) in s.tokens.iter().enumerate() {
            let keep_scale = match mask {
                Some((m, scale)) => {
                    if m[i] {
                        scale
                    } else {
                        continue;
                    }
                }
                None => 1.0,
            };
            let e = self.embedding(self.token_index(tok));
            for (m, &v) in mean.iter_mut().zip(e) {
                *m += keep_scale * v;
            }
        }
        let w = s.tokens.len() as f64;
        for m in &mut mean {
            *m /= w;
        }
        mean
    }

    fn sentence_score_masked(&self, s: &RenderedSentence, mask: Option<(&[bool], f64)>) -> f64 {
        let mean = self.mean_embedding(s, mask);
        let w = &self.params[self.score_w_at()..self.score_w_at() + self.dim];
        let b = self.params[self.score_b_at()];
        dot(w, &mean) + b
    }

    fn token_logit_masked(&self, token: &str, kept: bool, scale: f64) -> f64 {
        let w = &self.params[self.token_w_at()..self.token_w_at() + self.dim];
        let b = self.params[self.token_b_at()];
        if !kept {
            return b;
        }
        let e = self.embedding(self.token_index(token));
        scale * dot(w, e) + b
    }

    // Accumulates d(sentence_score)/d(params) * coeff into grad.
    fn backprop_sentence(
        &self,
        s: &RenderedSentence,
        mask: Option<(&[bool], f64)>,
        coeff: f64,
        grad: &mut [f64],
    ) {
        let mean = self.mean_embedding(s, mask);
        for (j, &m) in mean.iter().enumerate() {
            grad[self.score_w_at() + j] += coeff * m;
        }
        grad[self.score_b_at()] += coeff;
        if s.tokens.is_empty() {
            return;
        }
        let w = s.tokens.len() as f64;
        let score_w_at = self.score_w_at();
        for (i, tok) in s.tokens.iter().enumerate() {
            let keep_scale = match mask {
                Some((m, scale)) => {
                    if m[i] {
                        scale
                    } else {
                        continue;
                    }
                }
                None => 1.0,
            };
            let row = self.token_index(tok) * self.dim;
            for j in 0..self.dim {
                grad[row + j] += coeff * self.params[score_w_at + j] * keep_scale / w;
            }
        }
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

impl ScorerModel for EmbeddingScorer {
    fn sentence_score(&self, s: &RenderedSentence) -> f64 {
        self.sentence_score_masked(s, None)
    }

    fn token_scores(&self, s: &RenderedSentence) -> Vec<f64> {
        s.tokens
            .iter()
            .map(|tok| sigmoid(self.token_logit_masked(tok, true, 1.0)))
            .collect()
    }
}

impl TrainableScorer for EmbeddingScorer {
    fn param_count(&self) -> usize {
        self.params.len()
    }
    fn params(&self) -> Vec<f64> {
        self.params.clone()
    }
    fn set_params(&mut self, params: &[f64]) {
        assert_eq!(params.len(), self.params.len(), "parameter count mismatch");
        self.params.copy_from_slice(params);
    }
}

// ---------------------------------------------------------------------------
// Loss and gradients
// ---------------------------------------------------------------------------

// Per-sentence dropout masks for one example; None in eval mode.
type Masks = Option<Vec<Vec<bool>>>;

fn draw_masks(ex: &TrainExample, dropout: f64, rng: &mut ChaCha8Rng) -> Masks {
    if dropout == 0.0 {
        return None;
    }
    Some(
        ex.sentences()
            .iter()
            .map(|s| (0..s.tokens.len()).map(|_| rng.gen::<f64>() >= dropout).collect())
            .collect(),
    )
}

/// Loss of one example; accumulates gradients into `grad` when given.
fn example_loss(
    model: &EmbeddingScorer,
    ex: &TrainExample,
    k: f64,
    dropout: f64,
    masks: &Masks,
    mut grad: Option<&mut [f64]>,
) -> Result<f64, ScoringError> {
    let scale = if dropout > 0.0 { 1.0 / (1.0 - dropout) } else { 1.0 };
    let mask_for = |i: usize| -> Option<(&[bool], f64)> {
        masks.as_ref().map(|ms| (ms[i].as_slice(), scale))
    };
    match ex {
        TrainExample::Ranking(r) => {
            let f_pos = model.sentence_score_masked(&r.positive.0, mask_for(0));
            let mut loss = 0.0;
            let mut pos_coeff = 0.0;
            let mut neg_coeffs = vec![0.0; r.negatives.len()];
            for (j, (s_neg, p_neg)) in r.negatives.iter().enumerate() {
                let f_neg = model.sentence_score_masked(s_neg, mask_for(j + 1));
                let margin = dynamic_margin(&r.positive.1, p_neg, k)?;
                let hinge = f_neg - f_pos + margin;
                if hinge > 0.0 {
                    loss += hinge;
                    pos_coeff -= 1.0;
                    neg_coeffs[j] += 1.0;
                }
            }
            if let Some(g) = grad.as_deref_mut() {
                if pos_coeff != 0.0 {
                    model.backprop_sentence(&r.positive.0, mask_for(0), pos_coeff, g);
                }
                for (j, (s_neg, _)) in r.negatives.iter().enumerate() {
                    if neg_coeffs[j] != 0.0 {
                        model.backprop_sentence(s_neg, mask_for(j + 1), neg_coeffs[j], g);
                    }
                }
            }
            Ok(loss)
        }
        TrainExample::TokenLabeling(t) => {
            let active = t
                .labels
                .iter()
                .filter(|l| !matches!(l, TokenLabel::Ignore))
                .count();
            if active == 0 {
                return Ok(0.0);
            }
            let mask = mask_for(0);
            let mut loss = 0.0;
            for (i, (tok, label)) in t.sentence.tokens.iter().zip(&t.labels).enumerate() {
                let y = match label {
                    TokenLabel::Child => 1.0,
                    TokenLabel::Sibling => 0.0,
                    TokenLabel::Ignore => continue,
                };
                let (kept, sc) = match mask {
                    Some((m, sc)) => (m[i], sc),
                    None => (true, 1.0),
                };
                let z = model.token_logit_masked(tok, kept, sc);
                let p = sigmoid(z);
                loss += pairwise_ce_loss(p, y == 1.0) / active as f64;
                if let Some(g) = grad.as_deref_mut() {
                    let dz = (p - y) / active as f64;
                    g[model.token_b_at()] += dz;
                    if kept {
                        let row = model.token_index(tok) * model.dim;
                        let tw = model.token_w_at();
                        for j in 0..model.dim {
                            let e = model.params[row + j];
                            g[tw + j] += dz * sc * e;
                            g[row + j] += dz * sc * model.params[tw + j];
                        }
                    }
                }
            }
            Ok(loss)
        }
        TrainExample::Pair(pair) => {
            let f = model.sentence_score_masked(&pair.sentence, mask_for(0));
            let p = sigmoid(f);
            let loss = pairwise_ce_loss(p, pair.label);
            if let Some(g) = grad.as_deref_mut() {
                let y = if pair.label { 1.0 } else { 0.0 };
                // gradient of the unclamped CE; the clamp only guards logs
                let clamped = !(CE_EPSILON..=1.0 - CE_EPSILON).contains(&p);
                if !clamped {
                    model.backprop_sentence(&pair.sentence, mask_for(0), p - y, g);
                }
            }
            Ok(loss)
        }
    }
}

fn mean_eval_loss(
    model: &EmbeddingScorer,
    examples: &[TrainExample],
    k: f64,
) -> Result<f64, ScoringError> {
    let mut sum = 0.0;
    for ex in examples {
        sum += example_loss(model, ex, k, 0.0, &None, None)?;
    }
    Ok(sum / examples.len() as f64)
}

/// Per-epoch loss trace of one training run.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LossReport {
    /// Mean loss over the training set before any update, dropout off.
    pub initial_loss: f64,
    /// Mean loss after the last epoch, dropout off.
    pub final_loss: f64,
    /// Mean per-step training loss of each epoch.
    pub epoch_losses: Vec<f64>,
}

impl LossReport {
    pub fn improved(&self) -> bool {
        self.final_loss <= self.initial_loss
    }
}

/// Plain SGD over the example losses. Examples are visited in a seeded
/// shuffled order each epoch; dropout masks are drawn from the same seed
/// stream, so a run is fully reproducible. Zero epochs leaves the parameters
/// untouched.
pub fn train_scorer(
    model: &mut EmbeddingScorer,
    examples: &[TrainExample],
    cfg: &TrainConfig,
) -> Result<LossReport, TrainError> {
    cfg.validate()?;
    if examples.is_empty() {
        return Err(TrainError::EmptyExamples);
    }
    let initial_loss = mean_eval_loss(model, examples, cfg.k)?;
    let mut epoch_losses = Vec::with_capacity(cfg.epochs);
    let mut order_rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(0x9e3779b97f4a7c15));
    let mut dropout_rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(0x6a09e667f3bcc909));
    let mut grad = vec![0.0; model.param_count()];
    let mut order: Vec<usize> = (0..examples.len()).collect();

    for epoch in 0..cfg.epochs {
        use rand::seq::SliceRandom;
        order.shuffle(&mut order_rng);
        let mut epoch_sum = 0.0;
        for &idx in &order {
            let ex = &examples[idx];
            let masks = draw_masks(ex, cfg.dropout, &mut dropout_rng);
            grad.fill(0.0);
            let loss = example_loss(model, ex, cfg.k, cfg.dropout, &masks, Some(&mut grad))?;
            if !loss.is_finite() {
                return Err(TrainError::NonFiniteLoss {
                    epoch,
                    example: idx,
                });
            }
            epoch_sum += loss;
            for (p, g) in model.params.iter_mut().zip(&grad) {
                *p -= cfg.learning_rate * (g + cfg.weight_decay * *p);
            }
        }
        epoch_losses.push(epoch_sum / examples.len() as f64);
    }

    let final_loss = mean_eval_loss(model, examples, cfg.k)?;
    if !final_loss.is_finite() {
        return Err(TrainError::NonFiniteLoss {
            epoch: cfg.epochs,
            example: 0,
        });
    }
    Ok(LossReport {
        initial_loss,
        final_loss,
        epoch_losses,
    })
}

// ---------------------------------------------------------------------------
// Gradient verification
// ---------------------------------------------------------------------------

/// Worst-case analytic-vs-numeric agreement over a sampled parameter subset.
#[derive(Debug, Clone, Copy)]
pub struct GradReport {
    pub max_rel_err: f64,
    pub params_checked: usize,
}

/// Central-difference check (`h = 1e-5`) of the analytic gradient of one
/// example's loss, over at most 100 randomly selected parameters. The
/// relative error uses a `1e-4` floor so flat regions compare cleanly.
pub fn grad_check(model: &EmbeddingScorer, example: &TrainExample, k: f64, seed: u64) -> GradReport {
    const H: f64 = 1e-5;
    let mut grad = vec![0.0; model.param_count()];
    example_loss(model, example, k, 0.0, &None, Some(&mut grad))
        .expect("loss is evaluable on the unperturbed model");

    let n = model.param_count();
    let mut indices: Vec<usize> = (0..n).collect();
    if n > 100 {
        use rand::seq::SliceRandom;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        indices.shuffle(&mut rng);
        indices.truncate(100);
    }

    let mut probe = model.clone();
    let mut max_rel_err: f64 = 0.0;
    for &i in &indices {
        let orig = model.params[i];
        probe.params[i] = orig + H;
        let plus = example_loss(&probe, example, k, 0.0, &None, None).unwrap();
        probe.params[i] = orig - H;
        let minus = example_loss(&probe, example, k, 0.0, &None, None).unwrap();
        probe.params[i] = orig;
        let numeric = (plus - minus) / (2.0 * H);
        let analytic = grad[i];
        let rel = (analytic - numeric).abs() / analytic.abs().max(numeric.abs()).max(1e-4);
        max_rel_err = max_rel_err.max(rel);
    }
    GradReport {
        max_rel_err,
        params_checked: indices.len(),
    }
}

// ---------------------------------------------------------------------------
// Checkpoints
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize)]
struct Tensor {
    shape: Vec<usize>,
    data: Vec<f64>,
}

/// Versioned plain-text (JSON) snapshot of an [`EmbeddingScorer`]: named
/// parameter tensors with shapes plus the vocabulary. The loader rejects any
/// shape that disagrees with the stored vocabulary and width.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Checkpoint {
    pub format: String,
    pub version: u32,
    pub dim: usize,
    pub vocab: Vec<String>,
    tensors: BTreeMap<String, Tensor>,
}

pub const CHECKPOINT_FORMAT: &str = "taxograft-checkpoint";
pub const CHECKPOINT_VERSION: u32 = 1;

impl Checkpoint {
    pub fn capture(model: &EmbeddingScorer) -> Self {
        let v = model.vocab_list.len();
        let d = model.dim;
        let slice = |from: usize, len: usize| model.params[from..from + len].to_vec();
        let tensors = BTreeMap::from([
            (
                "embeddings".to_string(),
                Tensor {
                    shape: vec![v, d],
                    data: slice(0, v * d),
                },
            ),
            (
                "score_w".to_string(),
                Tensor {
                    shape: vec![d],
                    data: slice(model.score_w_at(), d),
                },
            ),
            (
                "score_b".to_string(),
                Tensor {
                    shape: vec![1],
                    data: slice(model.score_b_at(), 1),
                },
            ),
            (
                "token_w".to_string(),
                Tensor {
                    shape: vec![d],
                    data: slice(model.token_w_at(), d),
                },
            ),
            (
                "token_b".to_string(),
                Tensor {
                    shape: vec![1],
                    data: slice(model.token_b_at(), 1),
                },
            ),
        ]);
        Self {
            format: CHECKPOINT_FORMAT.to_string(),
            version: CHECKPOINT_VERSION,
            dim: d,
            vocab: model.vocab_list.clone(),
            tensors,
        }
    }

    pub fn restore(&self) -> Result<EmbeddingScorer, TrainError> {
        let reject = |msg: String| Err(TrainError::Checkpoint(msg));
        if self.format != CHECKPOINT_FORMAT {
            return reject(format!("unknown format {:?}", self.format));
        }
        if self.version != CHECKPOINT_VERSION {
            return reject(format!("unsupported version {}", self.version));
        }
        if self.vocab.first().map(String::as_str) != Some(UNK_TOKEN) {
            return reject("vocabulary must start with the <unk> slot".to_string());
        }
        let v = self.vocab.len();
        let d = self.dim;
        let expect: BTreeMap<&str, Vec<usize>> = BTreeMap::from([
            ("embeddings", vec![v, d]),
            ("score_w", vec![d]),
            ("score_b", vec![1]),
            ("token_w", vec![d]),
            ("token_b", vec![1]),
        ]);
        let mut params = Vec::with_capacity(EmbeddingScorer::param_count_for(v, d));
        for (name, shape) in &expect {
            let Some(tensor) = self.tensors.get(*name) else {
                return reject(format!("missing tensor {name:?}"));
            };
            if &tensor.shape != shape {
                return reject(format!(
                    "tensor {name:?} has shape {:?}, expected {:?}",
                    tensor.shape, shape
                ));
            }
            let numel: usize = shape.iter().product();
            if tensor.data.len() != numel {
                return reject(format!(
                    "tensor {name:?} holds {} values, expected {numel}",
                    tensor.data.len()
                ));
            }
        }
        // flat layout order: embeddings, score_w, score_b, token_w, token_b
        for name in ["embeddings", "score_w", "score_b", "token_w", "token_b"] {
            params.extend_from_slice(&self.tensors[name].data);
        }
        let mut vocab = BTreeMap::new();
        for (i, tok) in self.vocab.iter().enumerate() {
            if vocab.insert(tok.clone(), i).is_some() {
                return reject(format!("duplicate vocabulary token {tok:?}"));
            }
        }
        Ok(EmbeddingScorer {
            vocab,
            vocab_list: self.vocab.clone(),
            dim: d,
            params,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("checkpoint serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, TrainError> {
        serde_json::from_str(text).map_err(|e| TrainError::Checkpoint(e.to_string()))
    }
}
