//! The scorer contract and the ranking mathematics: margin ranking loss with
//! a dynamic, path-similarity-driven margin, binary cross-entropy for the
//! pair-wise baseline, and seeded negative sampling.
//!
//! A [`ScorerModel`] stands in for whatever encoder scores sentences: it maps
//! a rendered sentence to a scalar (used to rank candidate parents) and to a
//! per-token child probability in `[0, 1]` (used by the joint labeling
//! decoder). Two concrete scorers ship: a trainable [`EmbeddingScorer`] and a
//! parameter-free [`LexicalScorer`].

mod embedding;
mod lexical;

pub use embedding::{
    grad_check, train_scorer, Checkpoint, EmbeddingScorer, GradReport, LossReport,
    PairExample, RankingExample, TokenLabel, TokenLabelingExample, TrainError, TrainExample,
};
pub use lexical::LexicalScorer;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::prompting::RenderedSentence;
use crate::taxonomy::{NodeId, Taxonomy, TaxonomyPath};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ScoringError {
    #[error("paths share no nodes; margins need a common root")]
    DisjointPaths,
    #[error("cannot sample {requested} negatives from {available} candidates")]
    NotEnoughNegatives { requested: usize, available: usize },
}

/// Scores rendered sentences. Implementations must be deterministic given
/// their parameters and the input, and `token_scores` must return one value
/// per sentence token.
pub trait ScorerModel {
    /// Scalar sentence score; higher ranks a candidate parent better.
    fn sentence_score(&self, s: &RenderedSentence) -> f64;

    /// Per-token child probability in `[0, 1]`, one entry per token.
    fn token_scores(&self, s: &RenderedSentence) -> Vec<f64>;
}

impl<T: ScorerModel + ?Sized> ScorerModel for &T {
    fn sentence_score(&self, s: &RenderedSentence) -> f64 {
        (**self).sentence_score(s)
    }
    fn token_scores(&self, s: &RenderedSentence) -> Vec<f64> {
        (**self).token_scores(s)
    }
}

/// Flat get/set access to trainable parameters.
pub trait TrainableScorer: ScorerModel {
    fn param_count(&self) -> usize;
    fn params(&self) -> Vec<f64>;
    fn set_params(&mut self, params: &[f64]);
}

/// Margin between a positive and a negative taxonomy path, scaled by `k`:
/// the node-set union over intersection, minus one. Identical paths get a
/// zero margin; the further apart the paths, the larger the required gap.
pub fn dynamic_margin(
    p: &TaxonomyPath,
    p_neg: &TaxonomyPath,
    k: f64,
) -> Result<f64, ScoringError> {
    let a = p.node_set();
    let b = p_neg.node_set();
    let inter = a.intersection(&b).count();
    if inter == 0 {
        return Err(ScoringError::DisjointPaths);
    }
    let union = a.union(&b).count();
    Ok((union as f64 / inter as f64 - 1.0) * k)
}

/// Margin ranking loss: sums `max(0, f(neg) - f(pos) + margin)` over the full
/// positive-by-negative grid, with the margin per pair from
/// [`dynamic_margin`]. Zero exactly when every positive clears every negative
/// by its pairwise margin.
pub fn mrl_loss(
    pos_scores: &[(&TaxonomyPath, f64)],
    neg_scores: &[(&TaxonomyPath, f64)],
    k: f64,
) -> Result<f64, ScoringError> {
    let mut total = 0.0;
    for &(p, f_pos) in pos_scores {
        for &(p_neg, f_neg) in neg_scores {
            let margin = dynamic_margin(p, p_neg, k)?;
            total += (f_neg - f_pos + margin).max(0.0);
        }
    }
    Ok(total)
}

/// Probability floor keeping the cross-entropy logs finite.
pub const CE_EPSILON: f64 = 1e-7;

/// Binary cross-entropy on a predicted probability, clamped away from the
/// endpoints at [`CE_EPSILON`].
pub fn pairwise_ce_loss(predicted: f64, label: bool) -> f64 {
    let p = predicted.clamp(CE_EPSILON, 1.0 - CE_EPSILON);
    if label {
        -p.ln()
    } else {
        -(1.0 - p).ln()
    }
}

pub fn sigmoid(x: f64) -> f64 {
    if x >= 0.0 {
        1.0 / (1.0 + (-x).exp())
    } else {
        let e = x.exp();
        e / (1.0 + e)
    }
}

/// Draws `n` distinct negative candidates, uniformly without replacement,
/// from the taxonomy's nodes excluding the gold parent. Deterministic per
/// seed.
pub fn sample_negatives(
    t: &Taxonomy,
    gold_parent: NodeId,
    n: usize,
    seed: u64,
) -> Result<Vec<NodeId>, ScoringError> {
    sample_negatives_excluding(t, gold_parent, &[], n, seed)
}

/// [`sample_negatives`] with extra excluded ids (e.g. the query itself when
/// it is still present in the tree).
pub fn sample_negatives_excluding(
    t: &Taxonomy,
    gold_parent: NodeId,
    exclude: &[NodeId],
    n: usize,
    seed: u64,
) -> Result<Vec<NodeId>, ScoringError> {
    let mut pool: Vec<NodeId> = t
        .node_ids()
        .filter(|&id| id != gold_parent && !exclude.contains(&id))
        .collect();
    if pool.len() < n {
        return Err(ScoringError::NotEnoughNegatives {
            requested: n,
            available: pool.len(),
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    pool.shuffle(&mut rng);
    pool.truncate(n);
    Ok(pool)
}

/// Hard-negative variant: picks the `n` highest-scoring non-gold candidates
/// under `score`. Offered as an alternative sampling strategy; uniform
/// sampling is the default.
pub fn sample_hard_negatives(
    t: &Taxonomy,
    gold_parent: NodeId,
    exclude: &[NodeId],
    n: usize,
    score: impl Fn(NodeId) -> f64,
) -> Result<Vec<NodeId>, ScoringError> {
    let mut pool: Vec<(NodeId, f64)> = t
        .node_ids()
        .filter(|&id| id != gold_parent && !exclude.contains(&id))
        .map(|id| (id, score(id)))
        .collect();
    if pool.len() < n {
        return Err(ScoringError::NotEnoughNegatives {
            requested: n,
            available: pool.len(),
        });
    }
    pool.sort_by(|a, b| b.1.partial_cmp(&a.1).unwrap().then(a.0.cmp(&b.0)));
    Ok(pool.into_iter().take(n).map(|(id, _)| id).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::taxonomy::Taxonomy;
    use approx::assert_relative_eq;
    use statrs::distribution::{ChiSquared, ContinuousCDF};

    fn chain(t: &Taxonomy, surface: &str) -> TaxonomyPath {
        t.path_of(t.find_surface(surface).unwrap()).unwrap()
    }

    fn tree(pairs: &[(&str, &str)]) -> Taxonomy {
        let edges: Vec<(String, String)> = pairs
            .iter()
            .map(|(c, p)| (c.to_string(), p.to_string()))
            .collect();
        Taxonomy::build(&edges).unwrap()
    }

    #[test]
    fn dynamic_margin_worked_cases() {
        // identical paths -> 0
        let t = tree(&[("a", "r"), ("b", "a")]);
        let p = chain(&t, "b");
        assert_eq!(dynamic_margin(&p, &p, 0.7).unwrap(), 0.0);

        // {R,A,B} vs {R,A,C}: (4/2 - 1) * 0.5 = 0.5
        let t = tree(&[("a", "r"), ("b", "a"), ("c", "a")]);
        let m = dynamic_margin(&chain(&t, "b"), &chain(&t, "c"), 0.5).unwrap();
        assert_relative_eq!(m, 0.5, max_relative = 1e-12);

        // {R,A} vs {R,B}: (3/1 - 1) * 0.1 = 0.2
        let t = tree(&[("a", "r"), ("b", "r")]);
        let m = dynamic_margin(&chain(&t, "a"), &chain(&t, "b"), 0.1).unwrap();
        assert_relative_eq!(m, 0.2, max_relative = 1e-12);
    }

    #[test]
    fn mrl_loss_hinge_cases() {
        let t = tree(&[("a", "r"), ("b", "a"), ("c", "a")]);
        let p = chain(&t, "b");
        let n = chain(&t, "c"); // margin at k=0.5 is 0.5

        // hinge inactive: 0.2 - 1.0 + 0.5 < 0
        let loss = mrl_loss(&[(&p, 1.0)], &[(&n, 0.2)], 0.5).unwrap();
        assert_eq!(loss, 0.0);

        // hinge active: 0.4 - 0.3 + 0.5 = 0.6
        let loss = mrl_loss(&[(&p, 0.3)], &[(&n, 0.4)], 0.5).unwrap();
        assert_relative_eq!(loss, 0.6, max_relative = 1e-12);

        // one positive, two negatives with hinge terms 0.6 and 0
        let loss = mrl_loss(&[(&p, 0.3)], &[(&n, 0.4), (&n, -0.5)], 0.5).unwrap();
        assert_relative_eq!(loss, 0.6, max_relative = 1e-12);
    }

    #[test]
    fn ce_loss_closed_forms() {
        assert_relative_eq!(
            pairwise_ce_loss(0.5, true),
            std::f64::consts::LN_2,
            max_relative = 1e-12
        );
        // limit toward a confident correct prediction
        assert!(pairwise_ce_loss(1.0 - 1e-9, true) < 1e-6);
        // batch mean over {(0.9,1),(0.2,0)}
        let mean = (pairwise_ce_loss(0.9, true) + pairwise_ce_loss(0.2, false)) / 2.0;
        assert_relative_eq!(mean, 0.16425203348529032, max_relative = 1e-10);
    }

    #[test]
    fn negatives_forced_and_deterministic() {
        // R -> {gold, other}; excluding the query leaves one forced pick
        let t = tree(&[("gold", "r"), ("other", "r")]);
        let gold = t.find_surface("gold").unwrap();
        let r = t.find_surface("r").unwrap();
        let picked =
            sample_negatives_excluding(&t, gold, &[t.find_surface("other").unwrap()], 1, 3)
                .unwrap();
        assert_eq!(picked, vec![r]);

        let t = tree(&[
            ("a", "r"),
            ("b", "r"),
            ("c", "a"),
            ("d", "a"),
            ("e", "b"),
        ]);
        let gold = t.find_surface("a").unwrap();
        let s1 = sample_negatives(&t, gold, 3, 42).unwrap();
        let s2 = sample_negatives(&t, gold, 3, 42).unwrap();
        assert_eq!(s1, s2);
        assert_eq!(s1.len(), 3);
        assert!(!s1.contains(&gold));
        assert!(sample_negatives(&t, gold, 6, 0).is_err());
    }

    #[test]
    fn negatives_are_uniform_chi_square() {
        // 10 candidates, 10k single draws; chi-square with df = 9 at p > 0.01
        let pairs: Vec<(String, String)> =
            (1..=10).map(|i| (format!("n{i}"), "r".to_string())).collect();
        let t = Taxonomy::build(&pairs).unwrap();
        let gold = t.find_surface("r").unwrap();
        let mut counts = std::collections::BTreeMap::new();
        let draws = 10_000usize;
        for seed in 0..draws {
            let pick = sample_negatives(&t, gold, 1, seed as u64).unwrap()[0];
            *counts.entry(pick).or_insert(0usize) += 1;
        }
        assert_eq!(counts.len(), 10);
        let expected = draws as f64 / 10.0;
        let stat: f64 = counts
            .values()
            .map(|&c| {
                let d = c as f64 - expected;
                d * d / expected
            })
            .sum();
        let critical = ChiSquared::new(9.0).unwrap().inverse_cdf(0.99);
        assert!(
            stat < critical,
            "chi-square {stat:.2} exceeds the p=0.01 critical value {critical:.2}"
        );
    }

    #[test]
    fn hard_negatives_pick_top_scoring() {
        let t = tree(&[("a", "r"), ("b", "r"), ("c", "r")]);
        let gold = t.find_surface("a").unwrap();
        let picked = sample_hard_negatives(&t, gold, &[], 2, |id| id.0 as f64).unwrap();
        let mut expect: Vec<NodeId> = t.node_ids().filter(|&i| i != gold).collect();
        expect.sort_by_key(|id| std::cmp::Reverse(id.0));
        assert_eq!(picked, expect[..2].to_vec());
    }
}
