//! Pinski-Narin journal influence and Leontief input-output pricing. Both
//! solve `pi = pi A` where A is the destination-out-strength normalization
//! of the input graph, a matrix of spectral radius 1; they differ only in
//! interpretation (influence per reference vs equilibrium unit price) and
//! in the derived columns reported.

use crate::graph::{Normalization, ScoreVector, SparseGraph};
use crate::solver::{
    power_method, spectral_radius, IterNorm, SolveReport, SolverConfig, DENSE_LIMIT,
};
use crate::{Error, Result};

#[derive(Debug, Clone)]
pub struct InfluenceResult {
    /// Influence per reference: the dominant left eigenvector of the
    /// normalized citation matrix, sum-to-one.
    pub per_reference: ScoreVector,
    /// Total influence: per_reference[j] * out_strength[j], unnormalized.
    pub total: ScoreVector,
    pub report: SolveReport,
    /// Advisory diagnostics (reducibility, missing self-loop); never fatal.
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone)]
pub struct LeontiefResult {
    /// Closed model: equilibrium unit prices, sum-to-one (the eigenvector
    /// is scale-free). Open model: absolute prices, unnormalized.
    pub prices: ScoreVector,
    /// costs[j]: closed model sum_i pi_i q_{i,j}; open model per-unit input
    /// cost sum_i pi_i a_{i,j}.
    pub costs: Vec<f64>,
    /// revenues[j]: closed model pi_j q_j; open model per-unit price pi_j.
    pub revenues: Vec<f64>,
    pub report: SolveReport,
    pub warnings: Vec<String>,
}

/// Solves `pi = pi M` for a nonnegative matrix with Perron root 1, by power
/// iteration on the half-shifted operator (M + I) / 2. The shift leaves
/// eigenvectors untouched, maps the Perron root to 1, and breaks the
/// periodic oscillation that stalls the plain iteration on cycle-structured
/// graphs. The reported eigenvalue estimate is mapped back to M's scale.
fn dominant_left_fixpoint(
    m: &SparseGraph,
    cfg: &SolverConfig,
) -> Result<(ScoreVector, SolveReport)> {
    let n = m.n();
    let start = ScoreVector::uniform(n);
    let (pi, mut report) = power_method(
        |x, out| {
            m.mul_left(x, out);
            for (o, xi) in out.iter_mut().zip(x) {
                *o = 0.5 * (*o + xi);
            }
        },
        &start,
        cfg,
        IterNorm::SumToOne,
    )?;
    report.eigenvalue_estimate = 2.0 * report.eigenvalue_estimate - 1.0;
    Ok((pi, report))
}

fn connectivity_warnings(g: &SparseGraph, subject: &str) -> Vec<String> {
    let mut w = Vec::new();
    if !g.is_strongly_connected() {
        w.push(format!(
            "{subject} graph is not strongly connected; the solution may not be unique"
        ));
    }
    if !g.has_self_loop() {
        w.push(format!(
            "{subject} graph has no self-loop; plain power iteration would not be \
             guaranteed to converge (solved with a shifted iteration)"
        ));
    }
    w
}

/// Pinski-Narin influence-per-reference and total-influence scores of a
/// weighted citation graph. Every cited journal must give out at least one
/// reference (positive out-strength), or the normalization is undefined.
pub fn influence_scores(citations: &SparseGraph, cfg: &SolverConfig) -> Result<InfluenceResult> {
    cfg.validate()?;
    if citations.n() == 0 {
        return Err(Error::InvalidInput("empty graph".into()));
    }
    let h = citations.dest_outstrength_normalize()?;
    let (per_reference, report) = dominant_left_fixpoint(&h, cfg)?;
    let strength = citations.out_strength();
    let total: Vec<f64> = per_reference
        .values
        .iter()
        .zip(&strength.values)
        .map(|(p, c)| p * c)
        .collect();
    Ok(InfluenceResult {
        per_reference,
        total: ScoreVector::new(total, Normalization::None),
        report,
        warnings: connectivity_warnings(citations, "citation"),
    })
}

/// Closed Leontief model: equilibrium unit prices of an economy given as a
/// quantity-flow graph (`weight(i, j)` = quantity produced by sector i and
/// consumed by sector j). Prices are fixed to sum-to-one; absolute price
/// levels are recovered up to one global factor. Costs and revenues are
/// reported in the same scale and balance exactly at the fixed point.
pub fn leontief_closed(economy: &SparseGraph, cfg: &SolverConfig) -> Result<LeontiefResult> {
    cfg.validate()?;
    if economy.n() == 0 {
        return Err(Error::InvalidInput("empty graph".into()));
    }
    let a = economy.dest_outstrength_normalize()?;
    let (prices, report) = dominant_left_fixpoint(&a, cfg)?;
    let q = economy.out_strength();
    let mut costs = vec![0.0; economy.n()];
    economy.mul_left(&prices.values, &mut costs);
    let revenues: Vec<f64> = prices
        .values
        .iter()
        .zip(&q.values)
        .map(|(p, qj)| p * qj)
        .collect();
    let mut warnings = Vec::new();
    if !economy.is_strongly_connected() {
        warnings.push(
            "economy is reducible; the equilibrium price vector may not be unique".into(),
        );
    }
    Ok(LeontiefResult {
        prices,
        costs,
        revenues,
        report,
        warnings,
    })
}

/// Open Leontief model: `pi = pi A + v` with profit vector `v`. The input
/// graph's weights are taken directly as the technical-coefficient matrix A
/// (already normalized per unit of output), which must be strictly
/// substochastic in spectrum: rho(A) < 1. Solved densely for n <= 2000,
/// by Neumann series beyond that. Prices are absolute, not normalized;
/// costs and revenues are per unit, so revenue - cost = v exactly.
pub fn leontief_open(
    economy: &SparseGraph,
    profit: &ScoreVector,
    cfg: &SolverConfig,
) -> Result<LeontiefResult> {
    cfg.validate()?;
    let n = economy.n();
    if profit.len() != n {
        return Err(Error::InvalidInput(
            "profit vector length does not match graph".into(),
        ));
    }
    let mut warnings = Vec::new();
    let rho = spectral_radius(economy, cfg);
    let (prices, report) = if n <= DENSE_LIMIT {
        if rho >= 1.0 {
            warnings.push(format!(
                "estimated spectral radius {rho:.6} >= 1; the economy is not productive \
                 and the series interpretation fails (solving the linear system anyway)"
            ));
        }
        let pi = crate::solver::dense_fixpoint_oracle(&economy.to_dense(), Some(profit))?;
        let mut back = vec![0.0; n];
        economy.mul_left(&pi.values, &mut back);
        let residual: f64 = pi
            .values
            .iter()
            .zip(back.iter().zip(&profit.values))
            .map(|(p, (b, v))| (p - b - v).abs())
            .sum();
        (
            pi,
            SolveReport {
                iterations: 0,
                residual,
                eigenvalue_estimate: rho,
                converged: true,
            },
        )
    } else {
        crate::solver::neumann_series(economy, 1.0, profit, true, cfg)?
    };
    let mut costs = vec![0.0; n];
    economy.mul_left(&prices.values, &mut costs);
    let revenues = prices.values.clone();
    Ok(LeontiefResult {
        prices: ScoreVector::new(prices.values, Normalization::None),
        costs,
        revenues,
        report,
        warnings,
    })
}
