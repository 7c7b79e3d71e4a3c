//! Sociometric ranking: Seeley popularity, Katz attenuated-path status,
//! Hubbell prestige with signed endorsements and an exogenous input, and
//! Wei-Kendall sport ranking from pairwise match outcomes.

use crate::graph::{GraphBuilder, ScoreVector, SparseGraph};
use crate::solver::{
    dense_fixpoint_oracle, neumann_series, power_method, spectral_radius, IterNorm,
    SolveReport, SolverConfig, DENSE_LIMIT,
};
use crate::{Error, Result};

#[derive(Debug, Clone)]
pub struct KatzConfig {
    /// Per-hop path devaluation factor `a`; the path series converges only
    /// for `a < 1 / rho(L)`.
    pub attenuation: f64,
    pub solver: SolverConfig,
}

/// Seeley popularity: the fixed point of the row-stochastic choice matrix,
/// `pi = pi R`, normalized sum-to-one.
///
/// The original formulation predates the matrix formalism; reading the
/// choice system as proportional endorsement (each chooser splits one unit
/// of popularity among its choices) is an interpretation, the standard one.
/// Solved by dense elimination up to n = 2000, shifted power iteration
/// beyond that.
pub fn seeley(choices: &SparseGraph, cfg: &SolverConfig) -> Result<ScoreVector> {
    cfg.validate()?;
    let n = choices.n();
    if n == 0 {
        return Err(Error::InvalidInput("empty graph".into()));
    }
    let strength = choices.out_strength();
    if let Some(i) = strength.values.iter().position(|&s| s <= 0.0) {
        return Err(Error::Numerical(format!(
            "'{}' makes no choices; its endorsement normalization is undefined",
            choices.label(i)
        )));
    }
    let r = choices.row_stochastic()?;
    if n <= DENSE_LIMIT {
        match dense_fixpoint_oracle(&r.to_dense(), None) {
            Ok(pi) => return Ok(pi),
            Err(Error::Numerical(_)) => {} // non-unique fixed point; iterate instead
            Err(e) => return Err(e),
        }
    }
    let (pi, _) = power_method(
        |x, out| {
            r.mul_left(x, out);
            for (o, xi) in out.iter_mut().zip(x) {
                *o = 0.5 * (*o + xi);
            }
        },
        &ScoreVector::uniform(n),
        cfg,
        IterNorm::SumToOne,
    )?;
    Ok(pi)
}

/// Katz status: raw attenuated path counts `pi_j = sum_k a^k (e L^k)_j`
/// over the binarized adjacency. Unnormalized by design (the score is a
/// count); callers wanting a distribution can rescale for display.
pub fn katz(g: &SparseGraph, cfg: &KatzConfig) -> Result<ScoreVector> {
    cfg.solver.validate()?;
    if !(cfg.attenuation > 0.0) {
        return Err(Error::InvalidInput("attenuation must be positive".into()));
    }
    let l = g.binarized();
    let rho = spectral_radius(&l, &cfg.solver);
    if cfg.attenuation * rho >= 1.0 {
        return Err(Error::Numerical(format!(
            "attenuation {} is not below 1/rho(L) = {}; the path series diverges",
            cfg.attenuation,
            1.0 / rho
        )));
    }
    let ones = ScoreVector::ones(l.n());
    let (pi, _) = neumann_series(&l, cfg.attenuation, &ones, false, &cfg.solver)?;
    Ok(pi)
}

/// Hubbell prestige: solves `pi = pi W + v` where W may carry negative
/// endorsement strengths and `v` injects status from outside the system.
/// Dense exact solve up to n = 2000 (no spectral-radius condition needed);
/// Neumann series beyond that, requiring rho(|W|) < 1.
pub fn hubbell(g: &SparseGraph, v: &ScoreVector, cfg: &SolverConfig) -> Result<ScoreVector> {
    cfg.validate()?;
    let n = g.n();
    if v.len() != n {
        return Err(Error::InvalidInput(
            "exogenous vector length does not match graph".into(),
        ));
    }
    if n <= DENSE_LIMIT {
        return dense_fixpoint_oracle(&g.to_dense(), Some(v));
    }
    let rho = spectral_radius(g, cfg);
    if rho >= 1.0 {
        return Err(Error::Numerical(format!(
            "rho(|W|) = {rho} >= 1; the prestige series diverges"
        )));
    }
    let (pi, _) = neumann_series(g, 1.0, v, true, cfg)?;
    Ok(pi)
}

/// Pairwise game outcomes. Each entry credits `outcome` (1 win, 0.5 tie,
/// 0 loss) to `winner_side` against `loser_side`; a tie is usually recorded
/// once in each direction.
#[derive(Debug, Clone, Default)]
pub struct MatchList {
    entries: Vec<(String, String, f64)>,
}

impl MatchList {
    pub fn new() -> Self {
        Self::default()
    }

    /// Records a result: `outcome` is the score credited to `team_j`
    /// against `team_i`, one of {0, 0.5, 1}.
    pub fn add(&mut self, team_i: &str, team_j: &str, outcome: f64) -> Result<()> {
        if ![0.0, 0.5, 1.0].contains(&outcome) {
            return Err(Error::InvalidInput(format!(
                "outcome must be 0, 0.5 or 1, got {outcome}"
            )));
        }
        self.entries
            .push((team_i.to_string(), team_j.to_string(), outcome));
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Accumulated result matrix as a graph: weight(i, j) = total score of
    /// j against i. Teams are indexed in first appearance order.
    pub fn to_graph(&self) -> Result<SparseGraph> {
        let mut b = GraphBuilder::new();
        for (i, j, outcome) in &self.entries {
            b.add_node(i);
            b.add_node(j);
            if *outcome > 0.0 {
                b.add_edge(i, j, *outcome)?;
            }
        }
        b.build()
    }

    /// Parses TSV `team_i team_j outcome` lines; `#` starts a comment.
    pub fn parse_tsv(text: &str) -> Result<MatchList> {
        let mut m = MatchList::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.strip_suffix('\r').unwrap_or(raw);
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |msg: String| Error::Parse {
                line: lineno + 1,
                msg,
            };
            let fields: Vec<&str> = line.split('\t').collect();
            let [i, j, outcome] = fields.as_slice() else {
                return Err(err(format!(
                    "expected 3 TAB-separated fields: '{line}'"
                )));
            };
            let outcome: f64 = outcome
                .parse()
                .map_err(|_| err(format!("bad outcome '{outcome}'")))?;
            m.add(i, j, outcome).map_err(|e| err(e.to_string()))?;
        }
        Ok(m)
    }

    pub fn parse_tsv_path(path: &std::path::Path) -> Result<MatchList> {
        let text = std::fs::read_to_string(path).map_err(|e| {
            Error::InvalidInput(format!("cannot read {}: {e}", path.display()))
        })?;
        Self::parse_tsv(&text)
    }
}

/// Sport ranking with the default reducibility perturbation xi = 0.01.
pub fn sport_rank(matches: &MatchList, cfg: &SolverConfig) -> Result<(ScoreVector, SolveReport)> {
    sport_rank_with_perturbation(matches, cfg, 0.01)
}

/// Dominant left eigenvector of the accumulated result matrix, sum-to-one.
/// A team is strong if it won against strong teams. The uniform rank-one
/// perturbation `(1 - xi) A + xi (e e^T)/n` keeps the Perron vector
/// well-defined when the result matrix is reducible; xi = 0 iterates on the
/// raw matrix.
pub fn sport_rank_with_perturbation(
    matches: &MatchList,
    cfg: &SolverConfig,
    xi: f64,
) -> Result<(ScoreVector, SolveReport)> {
    cfg.validate()?;
    if !(0.0..=1.0).contains(&xi) {
        return Err(Error::InvalidInput(format!("xi must be in [0, 1], got {xi}")));
    }
    let a = matches.to_graph()?;
    let n = a.n();
    if n == 0 || a.total_weight() <= 0.0 {
        return Err(Error::Numerical(
            "no decisive or drawn matches; the result matrix is all zeros".into(),
        ));
    }
    power_method(
        |x, out| {
            a.mul_left(x, out);
            if xi > 0.0 {
                let mean = x.iter().sum::<f64>() / n as f64;
                for o in out.iter_mut() {
                    *o = (1.0 - xi) * *o + xi * mean;
                }
            }
        },
        &ScoreVector::uniform(n),
        cfg,
        IterNorm::SumToOne,
    )
}

/// Labels of the teams in a match list, in first appearance order.
pub fn sport_labels(matches: &MatchList) -> Result<Vec<String>> {
    Ok(matches.to_graph()?.labels().to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Normalization;
    use crate::graph::build_graph;

    #[test]
    fn seeley_mutual_choice_is_symmetric() {
        let g = build_graph(&[("A", "B", None), ("B", "A", None)]).unwrap();
        let pi = seeley(&g, &SolverConfig::default()).unwrap();
        assert!((pi.values[0] - 0.5).abs() < 1e-10);
    }

    #[test]
    fn seeley_choice_cycle_is_uniform() {
        let g =
            build_graph(&[("A", "B", None), ("B", "C", None), ("C", "A", None)]).unwrap();
        let pi = seeley(&g, &SolverConfig::default()).unwrap();
        for p in &pi.values {
            assert!((p - 1.0 / 3.0).abs() < 1e-10);
        }
    }

    #[test]
    fn seeley_is_a_fixed_point_of_the_choice_matrix() {
        let g = build_graph(&[
            ("A", "B", Some(2.0)),
            ("A", "C", Some(1.0)),
            ("B", "C", None),
            ("C", "A", None),
        ])
        .unwrap();
        let pi = seeley(&g, &SolverConfig::default()).unwrap();
        let r = g.row_stochastic().unwrap();
        let mut back = vec![0.0; 3];
        r.mul_left(&pi.values, &mut back);
        let res: f64 = back
            .iter()
            .zip(&pi.values)
            .map(|(a, b)| (a - b).abs())
            .sum();
        assert!(res <= 1e-10, "residual {res}");
    }

    #[test]
    fn seeley_rejects_non_chooser() {
        let g = build_graph(&[("A", "B", None)]).unwrap();
        assert!(seeley(&g, &SolverConfig::default()).is_err());
    }

    #[test]
    fn katz_single_edge() {
        let g = build_graph(&[("A", "B", None)]).unwrap();
        let cfg = KatzConfig {
            attenuation: 0.5,
            solver: SolverConfig::default(),
        };
        let pi = katz(&g, &cfg).unwrap();
        assert_eq!(pi.values, vec![0.0, 0.5]);
    }

    #[test]
    fn katz_empty_graph_is_all_zero() {
        let mut b = GraphBuilder::new();
        b.add_node("A");
        b.add_node("B");
        let g = b.build().unwrap();
        let cfg = KatzConfig {
            attenuation: 0.5,
            solver: SolverConfig::default(),
        };
        let pi = katz(&g, &cfg).unwrap();
        assert_eq!(pi.values, vec![0.0, 0.0]);
    }

    #[test]
    fn katz_small_attenuation_approaches_indegree() {
        let g = build_graph(&[
            ("A", "C", None),
            ("B", "C", None),
            ("C", "D", None),
            ("D", "A", None),
            ("B", "D", None),
        ])
        .unwrap();
        let cfg = KatzConfig {
            attenuation: 0.001,
            solver: SolverConfig::default(),
        };
        let pi = katz(&g, &cfg).unwrap();
        let indeg = g.in_strength();
        for j in 0..g.n() {
            if indeg[j] == 0.0 {
                assert_eq!(pi.values[j], 0.0);
            } else {
                let rel = (pi.values[j] / cfg.attenuation - indeg[j]).abs() / indeg[j];
                assert!(rel < 0.01, "node {j}: rel err {rel}");
            }
        }
    }

    #[test]
    fn katz_matches_resolvent_closed_form() {
        // 6-node digraph, a = 0.3: compare with ones ((I - aL)^{-1} - I)
        // computed by the dense exogenous solve.
        let g = build_graph(&[
            ("1", "2", None),
            ("2", "3", None),
            ("3", "1", None),
            ("3", "4", None),
            ("4", "5", None),
            ("5", "6", None),
            ("6", "4", None),
            ("1", "6", None),
        ])
        .unwrap();
        let a = 0.3;
        let cfg = KatzConfig {
            attenuation: a,
            solver: SolverConfig {
                tolerance: 1e-12,
                ..Default::default()
            },
        };
        let pi = katz(&g, &cfg).unwrap();
        let scaled: Vec<Vec<f64>> = g
            .binarized()
            .to_dense()
            .into_iter()
            .map(|row| row.into_iter().map(|w| a * w).collect())
            .collect();
        let ones = ScoreVector::ones(6);
        let resolvent = dense_fixpoint_oracle(&scaled, Some(&ones)).unwrap();
        for j in 0..6 {
            let expect = resolvent.values[j] - 1.0;
            assert!((pi.values[j] - expect).abs() < 1e-8);
        }
    }

    #[test]
    fn katz_rejects_attenuation_beyond_radius() {
        let g = build_graph(&[("A", "B", None), ("B", "A", None)]).unwrap();
        let cfg = KatzConfig {
            attenuation: 2.0,
            solver: SolverConfig::default(),
        };
        let err = katz(&g, &cfg).unwrap_err();
        assert!(matches!(err, Error::Numerical(_)));
        assert!(err.to_string().contains("1/rho"));
    }

    #[test]
    fn hubbell_zero_matrix_returns_exogenous() {
        let mut b = GraphBuilder::new();
        b.add_node("A");
        b.add_node("B");
        let g = b.build().unwrap();
        let v = ScoreVector::new(vec![0.2, -0.4], Normalization::None);
        let pi = hubbell(&g, &v, &SolverConfig::default()).unwrap();
        assert_eq!(pi.values, vec![0.2, -0.4]);
    }

    #[test]
    fn hubbell_unendorsed_member_keeps_minimal_status() {
        let g = build_graph(&[
            ("Charles", "Ann", Some(0.5)),
            ("Ann", "Bob", Some(0.3)),
            ("Bob", "Ann", Some(0.2)),
        ])
        .unwrap();
        let v = ScoreVector::new(vec![0.2; 3], Normalization::None);
        let pi = hubbell(&g, &v, &SolverConfig::default()).unwrap();
        let charles = g.index_of("Charles").unwrap();
        assert!((pi.values[charles] - 0.2).abs() < 1e-12);
    }

    #[test]
    fn hubbell_is_katz_plus_identity_term() {
        let g = build_graph(&[
            ("A", "B", None),
            ("B", "C", None),
            ("C", "A", None),
            ("A", "C", None),
        ])
        .unwrap();
        let a = 0.4;
        let scaled_edges: Vec<(&str, &str, Option<f64>)> = vec![
            ("A", "B", Some(a)),
            ("B", "C", Some(a)),
            ("C", "A", Some(a)),
            ("A", "C", Some(a)),
        ];
        let w = build_graph(&scaled_edges).unwrap();
        let ones = ScoreVector::ones(3);
        let hub = hubbell(&w, &ones, &SolverConfig::default()).unwrap();
        let k = katz(
            &g,
            &KatzConfig {
                attenuation: a,
                solver: SolverConfig::default(),
            },
        )
        .unwrap();
        for j in 0..3 {
            assert!((hub.values[j] - 1.0 - k.values[j]).abs() < 1e-9);
        }
    }

    #[test]
    fn positive_self_opinion_hurts_a_negative_status_member() {
        // David receives only negative judgments. A positive self-weight
        // reinforces his own (negative) status and lowers it further than a
        // negative self-weight would.
        let base = |self_weight: f64| {
            build_graph(&[
                ("Ann", "David", Some(-0.5)),
                ("Bob", "David", Some(-0.5)),
                ("Ann", "Bob", Some(0.3)),
                ("Bob", "Ann", Some(0.3)),
                ("David", "David", Some(self_weight)),
            ])
            .unwrap()
        };
        let v = ScoreVector::new(vec![0.2; 3], Normalization::None);
        let cfg = SolverConfig::default();
        let with_positive = hubbell(&base(0.4), &v, &cfg).unwrap();
        let with_negative = hubbell(&base(-0.4), &v, &cfg).unwrap();
        let david = 1; // second label to appear
        assert!(with_positive.values[david] < 0.0);
        assert!(with_positive.values[david] < with_negative.values[david]);
    }

    #[test]
    fn sport_cycle_is_uniform() {
        let mut m = MatchList::new();
        // A beats B, B beats C, C beats A; credit goes to the winner.
        m.add("B", "A", 1.0).unwrap();
        m.add("C", "B", 1.0).unwrap();
        m.add("A", "C", 1.0).unwrap();
        let (pi, rep) = sport_rank(&m, &SolverConfig::default()).unwrap();
        assert!(rep.converged);
        for p in &pi.values {
            assert!((p - 1.0 / 3.0).abs() < 1e-9);
        }
    }

    #[test]
    fn sport_split_series_is_even() {
        let mut m = MatchList::new();
        m.add("A", "B", 1.0).unwrap();
        m.add("B", "A", 1.0).unwrap();
        let (pi, _) = sport_rank(&m, &SolverConfig::default()).unwrap();
        assert!((pi.values[0] - 0.5).abs() < 1e-9);
    }

    #[test]
    fn sport_rejects_scoreless_input() {
        let mut m = MatchList::new();
        m.add("A", "B", 0.0).unwrap();
        assert!(sport_rank(&m, &SolverConfig::default()).is_err());
    }

    #[test]
    fn match_outcome_validation() {
        let mut m = MatchList::new();
        assert!(m.add("A", "B", 0.7).is_err());
    }
}
