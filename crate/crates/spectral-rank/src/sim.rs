//! Monte-Carlo random-surfer simulation: an independent statistical oracle
//! for PageRank's stationary-distribution semantics. The walk follows
//! out-edges proportionally to weight with probability alpha, teleports by
//! the personalization vector otherwise, and escapes dangling nodes by the
//! dangling vector.
//!
//! The generator is ChaCha8 (rand_chacha), seeded from the configured
//! 64-bit seed; identical seeds give identical outputs. The first 1000
//! steps are discarded as burn-in (start-state bias) whenever the run is
//! long enough to afford it.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{Normalization, ScoreVector, SparseGraph};
use crate::{Error, Result};

const BURN_IN: u64 = 1000;

#[derive(Debug, Clone)]
pub struct SimConfig {
    pub steps: u64,
    pub alpha: f64,
    pub seed: u64,
    /// Teleportation distribution; uniform when absent.
    pub personalization: Option<ScoreVector>,
    /// Escape distribution at dangling nodes; defaults to personalization.
    pub dangling: Option<ScoreVector>,
}

impl Default for SimConfig {
    fn default() -> Self {
        Self {
            steps: 1_000_000,
            alpha: 0.85,
            seed: 0,
            personalization: None,
            dangling: None,
        }
    }
}

/// Cumulative distribution for O(log n) sampling.
struct Cdf {
    cum: Vec<f64>,
}

impl Cdf {
    fn new(weights: &[f64]) -> Self {
        let mut cum = Vec::with_capacity(weights.len());
        let mut acc = 0.0;
        for &w in weights {
            acc += w;
            cum.push(acc);
        }
        Cdf { cum }
    }

    fn sample(&self, rng: &mut ChaCha8Rng) -> usize {
        let total = *self.cum.last().unwrap();
        let u = rng.gen::<f64>() * total;
        match self.cum.binary_search_by(|c| c.total_cmp(&u)) {
            Ok(i) | Err(i) => i.min(self.cum.len() - 1),
        }
    }
}

/// Runs the random surfer for `cfg.steps` transitions and returns the
/// visit-frequency vector, which sums to one exactly (integer counts over
/// the counted steps). Deterministic for a fixed seed.
pub fn simulate(g: &SparseGraph, cfg: &SimConfig) -> Result<ScoreVector> {
    let n = g.n();
    if n == 0 {
        return Err(Error::InvalidInput("empty graph".into()));
    }
    if cfg.steps < 1 {
        return Err(Error::InvalidInput("steps must be >= 1".into()));
    }
    if !(0.0..1.0).contains(&cfg.alpha) {
        return Err(Error::InvalidInput(format!(
            "alpha must be in [0, 1), got {}",
            cfg.alpha
        )));
    }
    let v = match &cfg.personalization {
        Some(v) => {
            if v.len() != n {
                return Err(Error::InvalidInput(
                    "personalization length does not match graph".into(),
                ));
            }
            v.validate_probability("personalization vector")?;
            v.clone()
        }
        None => ScoreVector::uniform(n),
    };
    let w = match &cfg.dangling {
        Some(w) => {
            if w.len() != n {
                return Err(Error::InvalidInput(
                    "dangling vector length does not match graph".into(),
                ));
            }
            w.validate_probability("dangling vector")?;
            w.clone()
        }
        None => v.clone(),
    };
    if g.edges().any(|(_, _, wt)| wt < 0.0) {
        return Err(Error::Numerical(
            "random surfer requires nonnegative weights".into(),
        ));
    }

    let teleport = Cdf::new(&v.values);
    let dangling_jump = Cdf::new(&w.values);
    let rows: Vec<Option<(Vec<usize>, Cdf)>> = (0..n)
        .map(|i| {
            let (dests, weights): (Vec<usize>, Vec<f64>) = g.row(i).unzip();
            if weights.iter().sum::<f64>() > 0.0 {
                Some((dests, Cdf::new(&weights)))
            } else {
                None
            }
        })
        .collect();

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let burn = if cfg.steps > 2 * BURN_IN { BURN_IN } else { 0 };
    let mut counts = vec![0u64; n];
    let mut state = teleport.sample(&mut rng);
    for step in 0..cfg.steps {
        state = if rng.gen::<f64>() < cfg.alpha {
            match &rows[state] {
                Some((dests, cdf)) => dests[cdf.sample(&mut rng)],
                None => dangling_jump.sample(&mut rng),
            }
        } else {
            teleport.sample(&mut rng)
        };
        if step >= burn {
            counts[state] += 1;
        }
    }
    let counted = (cfg.steps - burn) as f64;
    let values = counts.iter().map(|&c| c as f64 / counted).collect();
    Ok(ScoreVector::new(values, Normalization::SumToOne))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_graph, GraphBuilder};

    #[test]
    fn single_node_all_mass() {
        let mut b = GraphBuilder::new();
        b.add_node("only");
        let g = b.build().unwrap();
        for steps in [1, 10, 5000] {
            let cfg = SimConfig {
                steps,
                ..Default::default()
            };
            assert_eq!(simulate(&g, &cfg).unwrap().values, vec![1.0]);
        }
    }

    #[test]
    fn two_cycle_frequencies_concentrate_near_half() {
        let g = build_graph(&[("A", "B", None), ("B", "A", None)]).unwrap();
        let cfg = SimConfig {
            steps: 1_000_000,
            seed: 42,
            ..Default::default()
        };
        let pi = simulate(&g, &cfg).unwrap();
        assert!(pi.values[0] > 0.49 && pi.values[0] < 0.51, "{:?}", pi.values);
    }

    #[test]
    fn identical_seed_identical_output() {
        let g = build_graph(&[("A", "B", None), ("B", "C", None), ("C", "A", None)]).unwrap();
        let cfg = SimConfig {
            steps: 100_000,
            seed: 7,
            ..Default::default()
        };
        let a = simulate(&g, &cfg).unwrap();
        let b = simulate(&g, &cfg).unwrap();
        assert_eq!(a.values, b.values);
    }

    #[test]
    fn frequencies_sum_to_one_exactly() {
        let g = build_graph(&[("A", "B", None), ("B", "C", None)]).unwrap();
        let cfg = SimConfig {
            steps: 12_345,
            seed: 3,
            ..Default::default()
        };
        let pi = simulate(&g, &cfg).unwrap();
        // Integer counts over a common denominator; error only from the
        // final divisions.
        assert!((pi.sum() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn chain_matches_pagerank_statistically() {
        let g = build_graph(&[("A", "B", None), ("B", "C", None)]).unwrap();
        let cfg = SimConfig {
            steps: 10_000_000,
            seed: 11,
            ..Default::default()
        };
        let pi = simulate(&g, &cfg).unwrap();
        let expect = [0.1844, 0.3412, 0.4744];
        for (p, e) in pi.values.iter().zip(expect) {
            assert!((p - e).abs() < 5e-3, "{p} vs {e}");
        }
    }
}
