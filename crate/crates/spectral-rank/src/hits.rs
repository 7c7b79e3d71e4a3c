//! HITS authority and hub scoring: power iteration on the authority matrix
//! A = L^T L applied implicitly as two sparse products, with signed-max
//! normalization and dominant-eigenvalue reporting. Weights are binarized;
//! HITS is defined on 0/1 adjacency.

use crate::graph::{Normalization, ScoreVector, SparseGraph};
use crate::solver::{power_method, IterNorm, SolveReport, SolverConfig};
use crate::{Error, Result};

#[derive(Debug, Clone)]
pub struct HitsResult {
    /// Dominant eigenvector of L^T L, max-component normalized.
    pub authority: ScoreVector,
    /// L * authority, max-component normalized.
    pub hub: ScoreVector,
    /// Converged signed-max eigenvalue estimate (the spectral radius of the
    /// authority matrix; not necessarily 1).
    pub eigenvalue: f64,
    pub report: SolveReport,
    /// False when the authority-matrix graph is disconnected, in which case
    /// the dominant eigenvector need not be unique; the computed solution
    /// is still deterministic because the start is fixed to all-ones.
    pub uniqueness_verified: bool,
}

/// HITS from the all-ones start, no perturbation.
pub fn hits(g: &SparseGraph, cfg: &SolverConfig) -> Result<HitsResult> {
    hits_with_perturbation(g, cfg, 0.0)
}

/// HITS with an optional uniform rank-one perturbation: the iterated
/// operator becomes (1 - xi) A + xi (e e^T)/n, restoring irreducibility
/// for xi > 0. The literature gives no canonical xi; default is off.
pub fn hits_with_perturbation(g: &SparseGraph, cfg: &SolverConfig, xi: f64) -> Result<HitsResult> {
    cfg.validate()?;
    if !(0.0..=1.0).contains(&xi) {
        return Err(Error::InvalidInput(format!("xi must be in [0, 1], got {xi}")));
    }
    let l = g.binarized();
    let n = l.n();
    if l.edge_count() == 0 {
        return Err(Error::Numerical(
            "HITS requires at least one edge (the iterate would be all zeros)".into(),
        ));
    }
    let lt = l.transpose();
    let mid = std::cell::RefCell::new(vec![0.0; n]);
    let apply = |x: &[f64], out: &mut [f64]| {
        // out = L^T (L x), optionally mixed with the uniform rank-one term.
        let mut mid = mid.borrow_mut();
        l.mul_right(x, &mut mid);
        lt.mul_right(&mid, out);
        if xi > 0.0 {
            let mean = x.iter().sum::<f64>() / n as f64;
            for o in out.iter_mut() {
                *o = (1.0 - xi) * *o + xi * mean;
            }
        }
    };
    let start = ScoreVector::ones(n);
    let (authority, report) = power_method(apply, &start, cfg, IterNorm::SignedMax)?;

    let mut hub_vals = vec![0.0; n];
    l.mul_right(&authority.values, &mut hub_vals);
    let hmax = hub_vals.iter().fold(0.0f64, |m, &v| m.max(v.abs()));
    if hmax > 0.0 {
        hub_vals.iter_mut().for_each(|v| *v /= hmax);
    }
    let eigenvalue = report.eigenvalue_estimate;
    Ok(HitsResult {
        authority,
        hub: ScoreVector::new(hub_vals, Normalization::MaxComponent),
        eigenvalue,
        report,
        uniqueness_verified: authority_graph_connected(&l),
    })
}

/// Connectivity of the graph whose adjacency matrix is A = L^T L, checked
/// without forming A: nodes sharing an in-neighbor are adjacent in A, and a
/// node is isolated in A exactly when its indegree is zero. Union-find over
/// each source's out-neighborhood; connected when the non-isolated nodes
/// form a single component.
fn authority_graph_connected(l: &SparseGraph) -> bool {
    let n = l.n();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    let mut indegree = vec![0usize; n];
    for i in 0..n {
        let mut first: Option<usize> = None;
        for (j, _) in l.row(i) {
            indegree[j] += 1;
            match first {
                None => first = Some(j),
                Some(f) => {
                    let a = find(&mut parent, f);
                    let b = find(&mut parent, j);
                    parent[a] = b;
                }
            }
        }
    }
    let mut root: Option<usize> = None;
    for j in 0..n {
        if indegree[j] > 0 {
            let r = find(&mut parent, j);
            match root {
                None => root = Some(r),
                Some(r0) if r0 != r => return false,
                _ => {}
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_graph;

    #[test]
    fn single_edge() {
        let g = build_graph(&[("A", "B", None)]).unwrap();
        let r = hits(&g, &SolverConfig::default()).unwrap();
        assert_eq!(r.authority.values, vec![0.0, 1.0]);
        assert_eq!(r.hub.values, vec![1.0, 0.0]);
        assert!((r.eigenvalue - 1.0).abs() < 1e-9);
    }

    #[test]
    fn two_source_fan_in() {
        // 1 -> 3, 2 -> 3, 2 -> 4. Authority sub-block [[2, 1], [1, 1]] on
        // nodes {3, 4} has dominant eigenvalue (3 + sqrt(5)) / 2 with
        // eigenvector proportional to (1, (sqrt(5) - 1) / 2).
        let g = build_graph(&[("1", "3", None), ("2", "3", None), ("2", "4", None)]).unwrap();
        let cfg = SolverConfig {
            tolerance: 1e-12,
            ..Default::default()
        };
        let r = hits(&g, &cfg).unwrap();
        let phi = (5f64.sqrt() - 1.0) / 2.0;
        let idx = |l: &str| g.index_of(l).unwrap();
        let auth_expect = [("1", 0.0), ("2", 0.0), ("3", 1.0), ("4", phi)];
        for (l, e) in auth_expect {
            let a = r.authority.values[idx(l)];
            assert!((a - e).abs() < 1e-4, "auth({l}) = {a} vs {e}");
        }
        let hub_expect = [("1", phi), ("2", 1.0), ("3", 0.0), ("4", 0.0)];
        for (l, e) in hub_expect {
            let h = r.hub.values[idx(l)];
            assert!((h - e).abs() < 1e-4, "hub({l}) = {h} vs {e}");
        }
        assert!((r.eigenvalue - (3.0 + 5f64.sqrt()) / 2.0).abs() < 1e-3);
        assert!(r.uniqueness_verified);
    }

    #[test]
    fn hub_of_zero_authority_neighbor_is_zero() {
        // B's only out-neighbor C sits in a subdominant authority component;
        // with a tight tolerance B's hub score underflows to exact zero.
        let g = build_graph(&[
            ("B", "C", None),
            ("F", "G", None),
            ("H", "G", None),
            ("F", "I", None),
            ("H", "I", None),
        ])
        .unwrap();
        let cfg = SolverConfig {
            tolerance: f64::from_bits(1), // smallest subnormal: iterate to exact fixpoint
            max_iterations: 5000,
            ..Default::default()
        };
        let r = hits(&g, &cfg).unwrap();
        let b = g.index_of("B").unwrap();
        let c = g.index_of("C").unwrap();
        assert_eq!(r.authority.values[c], 0.0);
        assert_eq!(r.hub.values[b], 0.0);
        assert!(!r.uniqueness_verified);
    }

    #[test]
    fn indegree_and_authority_can_disagree() {
        // D has the largest indegree (3) but its endorsers point nowhere
        // else, so its authority block has eigenvalue 3. E and F are
        // co-cited by the same two sources, giving a block of eigenvalue 4
        // that captures all the authority mass.
        let g = build_graph(&[
            ("s1", "D", None),
            ("s2", "D", None),
            ("s3", "D", None),
            ("t1", "E", None),
            ("t1", "F", None),
            ("t2", "E", None),
            ("t2", "F", None),
        ])
        .unwrap();
        let r = hits(&g, &SolverConfig::default()).unwrap();
        let d = g.index_of("D").unwrap();
        let e = g.index_of("E").unwrap();
        let indeg = g.in_strength();
        assert!(indeg[d] > indeg[e]);
        assert!(r.authority.values[e] > r.authority.values[d]);
    }

    #[test]
    fn edgeless_graph_rejected() {
        let mut b = crate::graph::GraphBuilder::new();
        b.add_node("A");
        b.add_node("B");
        let g = b.build().unwrap();
        assert!(hits(&g, &SolverConfig::default()).is_err());
    }

    #[test]
    fn zero_authority_iff_isolated_in_a_graph() {
        // Connected co-citation structure: every positive-indegree node gets
        // positive authority; indegree-zero nodes get exactly zero.
        let g = build_graph(&[
            ("a", "x", None),
            ("a", "y", None),
            ("b", "y", None),
            ("b", "z", None),
        ])
        .unwrap();
        let r = hits(&g, &SolverConfig::default()).unwrap();
        for i in 0..g.n() {
            let indeg = g.transpose().row(i).count();
            if indeg == 0 {
                assert_eq!(r.authority.values[i], 0.0);
            } else {
                assert!(r.authority.values[i] > 1e-8);
            }
        }
        assert!(r.uniqueness_verified);
    }

    #[test]
    fn perturbation_keeps_scores_finite_and_positive() {
        let g = build_graph(&[("A", "B", None), ("C", "D", None)]).unwrap();
        let r = hits_with_perturbation(&g, &SolverConfig::default(), 0.1).unwrap();
        assert!(r.authority.values.iter().all(|&v| v > 0.0));
    }
}
