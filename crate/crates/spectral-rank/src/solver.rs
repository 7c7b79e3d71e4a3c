//! Shared numerical engines: power iteration, truncated Neumann series,
//! a dense direct-solve oracle, and spectral-radius estimation.

use crate::graph::{Normalization, ScoreVector, SparseGraph};
use crate::{Error, Result};

/// Vector norm used for residuals.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Norm {
    L1,
    LInf,
}

impl Norm {
    pub fn of(&self, v: &[f64]) -> f64 {
        match self {
            Norm::L1 => v.iter().map(|x| x.abs()).sum(),
            Norm::LInf => v.iter().fold(0.0, |m, x| m.max(x.abs())),
        }
    }

    pub fn distance(&self, a: &[f64], b: &[f64]) -> f64 {
        match self {
            Norm::L1 => a.iter().zip(b).map(|(x, y)| (x - y).abs()).sum(),
            Norm::LInf => a
                .iter()
                .zip(b)
                .fold(0.0, |m, (x, y)| m.max((x - y).abs())),
        }
    }
}

#[derive(Debug, Clone)]
pub struct SolverConfig {
    pub tolerance: f64,
    pub max_iterations: usize,
    pub norm: Norm,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            tolerance: 1e-9,
            max_iterations: 100_000,
            norm: Norm::L1,
        }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.tolerance > 0.0) {
            return Err(Error::InvalidInput("tolerance must be positive".into()));
        }
        if self.max_iterations < 1 {
            return Err(Error::InvalidInput("max_iterations must be >= 1".into()));
        }
        Ok(())
    }
}

/// Outcome of an iterative solve. `residual` is the distance between the
/// last two iterates (in the configured norm) unless an operation states
/// otherwise.
#[derive(Debug, Clone)]
pub struct SolveReport {
    pub iterations: usize,
    pub residual: f64,
    pub eigenvalue_estimate: f64,
    pub converged: bool,
}

/// Per-iteration normalization inside the power method.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IterNorm {
    /// Divide by the component sum; eigenvalue estimate is the
    /// pre-normalization sum. Natural for stochastic operators.
    SumToOne,
    /// Divide by the signed component of maximal magnitude; that component
    /// is the eigenvalue estimate. Natural for general nonnegative spectra.
    SignedMax,
}

fn signed_max(v: &[f64]) -> f64 {
    let mut m = 0.0f64;
    for &x in v {
        if x.abs() > m.abs() {
            m = x;
        }
    }
    m
}

/// Power iteration `x <- normalize(apply(x))` until successive iterates are
/// within tolerance. `apply` must be a linear, dimension-preserving
/// operator writing its result into the output slice.
///
/// A zero start vector is rejected; an iterate collapsing to zero produces
/// a non-converged report rather than an error.
pub fn power_method<F>(
    apply: F,
    start: &ScoreVector,
    cfg: &SolverConfig,
    norm: IterNorm,
) -> Result<(ScoreVector, SolveReport)>
where
    F: Fn(&[f64], &mut [f64]),
{
    cfg.validate()?;
    if start.values.iter().all(|&v| v == 0.0) {
        return Err(Error::Numerical("power method start vector is zero".into()));
    }
    let n = start.len();
    let mut x = start.values.clone();
    // Normalize the start so residuals compare like with like.
    let m0 = match norm {
        IterNorm::SumToOne => x.iter().sum::<f64>(),
        IterNorm::SignedMax => signed_max(&x),
    };
    if m0 != 0.0 {
        x.iter_mut().for_each(|v| *v /= m0);
    }
    let mut y = vec![0.0; n];
    let mut eigenvalue = 0.0;
    let mut residual = f64::INFINITY;
    let mut iterations = 0;
    let mut converged = false;
    while iterations < cfg.max_iterations {
        apply(&x, &mut y);
        iterations += 1;
        let m = match norm {
            IterNorm::SumToOne => y.iter().sum::<f64>(),
            IterNorm::SignedMax => signed_max(&y),
        };
        eigenvalue = m;
        if m == 0.0 || !m.is_finite() {
            // Iterate died (nilpotent operator) or blew up.
            x.copy_from_slice(&y);
            residual = f64::INFINITY;
            break;
        }
        y.iter_mut().for_each(|v| *v /= m);
        residual = cfg.norm.distance(&x, &y);
        x.copy_from_slice(&y);
        if residual <= cfg.tolerance {
            converged = true;
            break;
        }
    }
    let out_norm = match norm {
        IterNorm::SumToOne => Normalization::SumToOne,
        IterNorm::SignedMax => Normalization::MaxComponent,
    };
    Ok((
        ScoreVector::new(x, out_norm),
        SolveReport {
            iterations,
            residual,
            eigenvalue_estimate: eigenvalue,
            converged,
        },
    ))
}

/// Evaluates `v * sum_{k>=k0} (scale * L)^k` with `k0 = 0` when
/// `include_identity_term` is set, else `k0 = 1`. Truncates once the added
/// term's L1 norm drops to the tolerance; fifty consecutive growing terms
/// (or a non-finite term) signal a divergent series.
pub fn neumann_series(
    g: &SparseGraph,
    scale: f64,
    v: &ScoreVector,
    include_identity_term: bool,
    cfg: &SolverConfig,
) -> Result<(ScoreVector, SolveReport)> {
    cfg.validate()?;
    let n = g.n();
    if v.len() != n {
        return Err(Error::InvalidInput(format!(
            "vector length {} does not match graph size {n}",
            v.len()
        )));
    }
    let mut acc = if include_identity_term {
        v.values.clone()
    } else {
        vec![0.0; n]
    };
    let mut term = v.values.clone();
    let mut next = vec![0.0; n];
    let mut prev_norm = Norm::L1.of(&term);
    let mut growing = 0usize;
    let mut iterations = 0usize;
    let mut residual = prev_norm;
    let mut converged = false;
    let mut ratio = 0.0;
    while iterations < cfg.max_iterations {
        g.mul_left(&term, &mut next);
        next.iter_mut().for_each(|x| *x *= scale);
        std::mem::swap(&mut term, &mut next);
        iterations += 1;
        for (a, t) in acc.iter_mut().zip(&term) {
            *a += t;
        }
        let norm = Norm::L1.of(&term);
        if !norm.is_finite() {
            return Err(Error::Numerical(
                "Neumann series diverged (term norm overflowed); spectral radius of the \
                 scaled matrix is >= 1"
                    .into(),
            ));
        }
        if norm > prev_norm {
            growing += 1;
            if growing >= 50 {
                return Err(Error::Numerical(format!(
                    "Neumann series diverging: term norm grew for {growing} consecutive \
                     terms (now {norm:.3e}); spectral radius of the scaled matrix is >= 1"
                )));
            }
        } else {
            growing = 0;
        }
        ratio = if prev_norm > 0.0 { norm / prev_norm } else { 0.0 };
        prev_norm = norm;
        residual = norm;
        if norm <= cfg.tolerance {
            converged = true;
            break;
        }
    }
    Ok((
        ScoreVector::new(acc, Normalization::None),
        SolveReport {
            iterations,
            residual,
            eigenvalue_estimate: ratio,
            converged,
        },
    ))
}

pub(crate) const DENSE_LIMIT: usize = 2000;

/// In-place Gaussian elimination with partial pivoting on the augmented
/// system `a x = b`. Errors on (numerically) singular systems.
pub(crate) fn solve_dense(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Result<Vec<f64>> {
    let n = b.len();
    let scale = a
        .iter()
        .flat_map(|r| r.iter())
        .fold(0.0f64, |m, x| m.max(x.abs()))
        .max(1.0);
    for col in 0..n {
        let pivot_row = (col..n)
            .max_by(|&r, &s| a[r][col].abs().total_cmp(&a[s][col].abs()))
            .unwrap();
        if a[pivot_row][col].abs() < 1e-13 * scale {
            return Err(Error::Numerical("singular linear system".into()));
        }
        a.swap(col, pivot_row);
        b.swap(col, pivot_row);
        for r in col + 1..n {
            let f = a[r][col] / a[col][col];
            if f != 0.0 {
                for c in col..n {
                    a[r][c] -= f * a[col][c];
                }
                b[r] -= f * b[col];
            }
        }
    }
    let mut x = vec![0.0; n];
    for row in (0..n).rev() {
        let mut s = b[row];
        for c in row + 1..n {
            s -= a[row][c] * x[c];
        }
        x[row] = s / a[row][row];
    }
    Ok(x)
}

/// Direct dense solve of the fixed-point systems the iterative methods
/// approximate. Without an exogenous term, solves `pi = pi M` (the matrix
/// must have eigenvalue 1) normalized sum-to-one by replacing one balance
/// equation with the normalization constraint. With exogenous `v`, solves
/// `pi = pi M + v` exactly. Limited to n <= 2000.
pub fn dense_fixpoint_oracle(
    matrix: &[Vec<f64>],
    exogenous: Option<&ScoreVector>,
) -> Result<ScoreVector> {
    let n = matrix.len();
    if n > DENSE_LIMIT {
        return Err(Error::InvalidInput(format!(
            "dense oracle limited to n <= {DENSE_LIMIT}, got {n}"
        )));
    }
    if matrix.iter().any(|r| r.len() != n) {
        return Err(Error::InvalidInput("matrix is not square".into()));
    }
    match exogenous {
        Some(v) => {
            if v.len() != n {
                return Err(Error::InvalidInput(
                    "exogenous vector length mismatch".into(),
                ));
            }
            // pi (I - M) = v  <=>  (I - M)^T pi^T = v^T
            let mut a = vec![vec![0.0; n]; n];
            for i in 0..n {
                for j in 0..n {
                    a[j][i] = -matrix[i][j];
                }
                a[i][i] += 1.0;
            }
            let x = solve_dense(a, v.values.clone())?;
            Ok(ScoreVector::new(x, Normalization::None))
        }
        None => {
            // (M^T - I) pi^T = 0 with the last balance row replaced by the
            // sum-to-one constraint.
            let mut a = vec![vec![0.0; n]; n];
            for i in 0..n {
                for j in 0..n {
                    a[j][i] = matrix[i][j];
                }
            }
            for i in 0..n {
                a[i][i] -= 1.0;
            }
            a[n - 1] = vec![1.0; n];
            let mut b = vec![0.0; n];
            b[n - 1] = 1.0;
            let x = solve_dense(a, b)?;
            Ok(ScoreVector::new(x, Normalization::SumToOne))
        }
    }
}

/// Dominant-eigenvalue estimate of the absolute-value matrix, by shifted
/// power iteration on `|L| + I` (the shift breaks periodic oscillation and
/// leaves the Perron root shifted by exactly 1). For reducible graphs the
/// estimate is a lower bound on the true spectral radius. An exact
/// nilpotency pre-pass returns 0 for nilpotent matrices.
pub fn spectral_radius(g: &SparseGraph, cfg: &SolverConfig) -> f64 {
    let n = g.n();
    if n == 0 || g.edge_count() == 0 {
        return 0.0;
    }
    let abs_edges: Vec<(usize, usize, f64)> =
        g.edges().map(|(i, j, w)| (i, j, w.abs())).collect();
    let b = SparseGraph::from_indexed_edges(g.labels().to_vec(), abs_edges);

    // Nilpotency check: e |L|^k is the column-sum vector of |L|^k, which is
    // zero exactly when |L|^k = 0; the nilpotency index is at most n.
    let mut x = vec![1.0; n];
    let mut y = vec![0.0; n];
    for _ in 0..=n {
        b.mul_left(&x, &mut y);
        if y.iter().all(|&v| v == 0.0) {
            return 0.0;
        }
        let m = y.iter().fold(0.0f64, |a, &v| a.max(v));
        y.iter_mut().for_each(|v| *v /= m);
        std::mem::swap(&mut x, &mut y);
    }

    // Shifted iteration; converge on the eigenvalue estimate itself.
    let mut x = vec![1.0; n];
    let mut est = 0.0f64;
    let mut stable = 0;
    for k in 0..cfg.max_iterations {
        b.mul_left(&x, &mut y);
        for (yi, xi) in y.iter_mut().zip(&x) {
            *yi += xi;
        }
        let m = y.iter().fold(0.0f64, |a, &v| a.max(v));
        if m == 0.0 || !m.is_finite() {
            break;
        }
        y.iter_mut().for_each(|v| *v /= m);
        std::mem::swap(&mut x, &mut y);
        let new_est = m - 1.0;
        if k >= 10 && (new_est - est).abs() <= cfg.tolerance {
            stable += 1;
            if stable >= 3 {
                est = new_est;
                break;
            }
        } else {
            stable = 0;
        }
        est = new_est;
    }
    est.max(0.0)
}
