//! PageRank: damping, teleportation, personalization, and the dangling
//! patch, solved by power iteration on the sparse row-normalized matrix.
//! The Google matrix is never materialized; the dangling correction is a
//! rank-one update `(pi . d) w` applied per iteration and the teleportation
//! term is added analytically, keeping memory linear in the edge count.

use crate::graph::{Normalization, ScoreVector, SparseGraph};
use crate::solver::{power_method, IterNorm, SolveReport, SolverConfig};
use crate::{Error, Result};

#[derive(Debug, Clone, Default)]
pub struct PageRankConfig {
    /// Damping factor in [0, 1); probability of following links rather than
    /// teleporting. `None` means the customary 0.85.
    pub alpha: Option<f64>,
    /// Teleportation distribution; uniform when absent.
    pub personalization: Option<ScoreVector>,
    /// Replacement row for dangling nodes; defaults to the personalization
    /// vector, keeping one knob.
    pub dangling: Option<ScoreVector>,
    pub solver: SolverConfig,
}

impl PageRankConfig {
    pub fn alpha(&self) -> f64 {
        self.alpha.unwrap_or(0.85)
    }

    fn resolved(&self, n: usize) -> Result<(f64, ScoreVector, ScoreVector)> {
        let alpha = self.alpha();
        if !(0.0..1.0).contains(&alpha) {
            return Err(Error::InvalidInput(format!(
                "alpha must be in [0, 1), got {alpha}"
            )));
        }
        let v = match &self.personalization {
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
        let w = match &self.dangling {
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
        Ok((alpha, v, w))
    }
}

struct GoogleOperator {
    h: SparseGraph,
    dangling_nodes: Vec<usize>,
    alpha: f64,
    v: Vec<f64>,
    w: Vec<f64>,
}

impl GoogleOperator {
    fn new(g: &SparseGraph, cfg: &PageRankConfig) -> Result<Self> {
        let n = g.n();
        if n == 0 {
            return Err(Error::InvalidInput("empty graph".into()));
        }
        let (alpha, v, w) = cfg.resolved(n)?;
        let h = g.row_stochastic()?;
        let dangling_nodes = (0..n).filter(|&i| h.is_dangling(i)).collect();
        Ok(Self {
            h,
            dangling_nodes,
            alpha,
            v: v.values,
            w: w.values,
        })
    }

    /// out = x G = alpha (x H + (x . d) w) + (1 - alpha) (sum x) v,
    /// exactly linear in x.
    fn apply(&self, x: &[f64], out: &mut [f64]) {
        self.h.mul_left(x, out);
        let dangling_mass: f64 = self.dangling_nodes.iter().map(|&i| x[i]).sum();
        let total: f64 = x.iter().sum();
        for i in 0..out.len() {
            out[i] = self.alpha * (out[i] + dangling_mass * self.w[i])
                + (1.0 - self.alpha) * total * self.v[i];
        }
    }

    /// x S = x H + (x . d) w, the stochastic matrix applied implicitly.
    fn apply_s(&self, x: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; x.len()];
        self.h.mul_left(x, &mut out);
        let dangling_mass: f64 = self.dangling_nodes.iter().map(|&i| x[i]).sum();
        for (o, w) in out.iter_mut().zip(&self.w) {
            *o += dangling_mass * w;
        }
        out
    }
}

/// PageRank vector of `g`: the stationary distribution of the damped,
/// dangling-patched random walk. Strictly positive and sum-to-one whenever
/// the personalization vector is positive.
pub fn pagerank(g: &SparseGraph, cfg: &PageRankConfig) -> Result<(ScoreVector, SolveReport)> {
    let op = GoogleOperator::new(g, cfg)?;
    let start = ScoreVector::new(op.v.clone(), Normalization::SumToOne);
    pagerank_with_operator(&op, &start, &cfg.solver)
}

/// Same solve from a caller-supplied start vector; used for uniqueness
/// checks (the fixed point must not depend on the start).
pub fn pagerank_from_start(
    g: &SparseGraph,
    cfg: &PageRankConfig,
    start: &ScoreVector,
) -> Result<(ScoreVector, SolveReport)> {
    let op = GoogleOperator::new(g, cfg)?;
    pagerank_with_operator(&op, start, &cfg.solver)
}

fn pagerank_with_operator(
    op: &GoogleOperator,
    start: &ScoreVector,
    solver: &SolverConfig,
) -> Result<(ScoreVector, SolveReport)> {
    power_method(
        |x, out| op.apply(x, out),
        start,
        solver,
        IterNorm::SumToOne,
    )
}

/// Splits a converged PageRank vector into its endogenous link-driven part
/// `alpha pi S` and exogenous teleportation part `(1 - alpha) v`; the two
/// sum back to `pi` within solver tolerance.
pub fn endogenous_exogenous_split(
    g: &SparseGraph,
    cfg: &PageRankConfig,
    pi: &ScoreVector,
) -> Result<(ScoreVector, ScoreVector)> {
    let op = GoogleOperator::new(g, cfg)?;
    if pi.len() != g.n() {
        return Err(Error::InvalidInput("pi length does not match graph".into()));
    }
    let mut endo = op.apply_s(&pi.values);
    endo.iter_mut().for_each(|x| *x *= op.alpha);
    let total: f64 = pi.values.iter().sum();
    let exo: Vec<f64> = op
        .v
        .iter()
        .map(|&vi| (1.0 - op.alpha) * total * vi)
        .collect();
    Ok((
        ScoreVector::new(endo, Normalization::None),
        ScoreVector::new(exo, Normalization::None),
    ))
}

/// Fixed-point residual ||pi - pi G||_1 with G applied implicitly.
pub fn fixpoint_residual(g: &SparseGraph, cfg: &PageRankConfig, pi: &ScoreVector) -> Result<f64> {
    let op = GoogleOperator::new(g, cfg)?;
    let mut out = vec![0.0; pi.len()];
    op.apply(&pi.values, &mut out);
    Ok(out
        .iter()
        .zip(&pi.values)
        .map(|(a, b)| (a - b).abs())
        .sum())
}
