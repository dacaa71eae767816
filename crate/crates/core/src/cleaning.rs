//! The cleaning pipeline: from a k-free hypergraph, remove the edges of
//! greedily built maximal edge-disjoint collections so that the result is
//! ell-minus-free for every ell in [2, k] dividing k-1 or k, has no sparse
//! triple containing a 2-configuration, and keeps every a-minus- and
//! b-configuration (a + b = k) edge-disjoint. Each stage logs its removed
//! collection and the counting bound the stage argument guarantees, so the
//! whole run is auditable: total removals stay within an explicit multiple
//! of `C(n, t-1)`.
//!
//! Stage order is fixed for determinism: the top-level (k-1)-minus stage,
//! divisor stages in increasing ell, the pair-in-sparse-triple stage (only
//! when k = 2 mod 3), then the cross stages for a = 1..k-1. Whole
//! configurations are removed even when one edge offends; that keeps the
//! per-stage bounds valid verbatim.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hypergraph::{binom_u128, Hypergraph};
use crate::params::Params;
use crate::search::{
    enumerate_configurations, find_configuration, for_each_configuration, k_config_witness,
    maximal_disjoint_collection, ConfigQuery, Configuration, SearchBudget,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum StageKind {
    /// Maximal disjoint (k-1)-minus-configurations.
    SparseTopLevel { ell: usize },
    /// Maximal disjoint ell-minus-configurations, ell | k-1 or ell | k
    /// with quotient j.
    SparseDivisor { ell: usize, j: usize },
    /// Maximal disjoint sparse triples containing a 2-configuration
    /// (k = 2 mod 3 only).
    PairInSparseTriple,
    /// Maximal disjoint b-configurations meeting an edge of some
    /// a-minus-configuration.
    CrossDisjoint { a: usize, b: usize },
}

impl std::fmt::Display for StageKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            StageKind::SparseTopLevel { ell } => write!(f, "sparse-{ell}"),
            StageKind::SparseDivisor { ell, j } => write!(f, "sparse-{ell}-divisor-j{j}"),
            StageKind::PairInSparseTriple => write!(f, "pair-in-sparse-triple"),
            StageKind::CrossDisjoint { a, b } => write!(f, "cross-{a}-{b}"),
        }
    }
}

/// One executed stage: the removed configurations (as edge vertex lists),
/// the edge count, and the proof bound on that count.
#[derive(Clone, Debug, Serialize)]
pub struct CleaningStage {
    pub kind: StageKind,
    pub removed_configurations: Vec<Vec<Vec<usize>>>,
    pub edges_removed: usize,
    /// Bound on the number of configurations in the collection.
    pub collection_bound: u128,
    /// Bound on the number of edges this stage may remove.
    pub edges_bound: u128,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct CleaningLedger {
    pub stages: Vec<CleaningStage>,
    pub total_removed: usize,
}

impl CleaningLedger {
    /// Explicit total bound: the sum of per-stage edge bounds, a fixed
    /// multiple of `C(n, t-1)`.
    pub fn total_bound(&self) -> u128 {
        self.stages.iter().map(|s| s.edges_bound).sum()
    }

    pub fn all_zero(&self) -> bool {
        self.total_removed == 0
    }
}

fn pair_spans(f: &Hypergraph, c: &Configuration, s2: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for (a, &i) in c.edge_indices.iter().enumerate() {
        for &j in &c.edge_indices[a + 1..] {
            if f.bits()[i].union_len(&f.bits()[j]) <= s2 {
                out.push((i, j));
            }
        }
    }
    out
}

/// Does the configuration contain a 2-configuration among its edges?
pub fn contains_pair(f: &Hypergraph, c: &Configuration, params: &Params) -> bool {
    !pair_spans(f, c, params.config_bound(2, false)).is_empty()
}

struct StageRun {
    graph: Hypergraph,
    stage: CleaningStage,
}

fn run_stage(
    current: &Hypergraph,
    params: &Params,
    kind: StageKind,
    q: Option<ConfigQuery>,
    collection_bound: u128,
    config_size: usize,
    filter: impl FnMut(&Configuration, &Hypergraph) -> bool,
) -> Result<StageRun> {
    let collection = match q {
        Some(q) => maximal_disjoint_collection(current, &q, &SearchBudget::default(), filter)?,
        None => Vec::new(),
    };
    assert!(
        (collection.len() as u128) <= collection_bound,
        "stage {kind:?} exceeded its proof bound: {} > {collection_bound}",
        collection.len()
    );
    let mut all_indices = Vec::new();
    let mut removed_configurations = Vec::new();
    for c in &collection {
        removed_configurations.push(
            c.edge_indices
                .iter()
                .map(|&i| current.edge(i).expect("index from search").to_vec())
                .collect(),
        );
        all_indices.extend_from_slice(&c.edge_indices);
    }
    let edges_removed = all_indices.len();
    let graph = current.remove_edges(&all_indices);
    let _ = params;
    Ok(StageRun {
        graph,
        stage: CleaningStage {
            kind,
            removed_configurations,
            edges_removed,
            collection_bound,
            edges_bound: collection_bound * config_size as u128,
        },
    })
}

/// Edges of `f` contained in some a-minus-configuration.
fn edges_in_sparse_configs(f: &Hypergraph, params: &Params, a: usize) -> Result<Vec<usize>> {
    if a < 2 {
        return Ok(Vec::new()); // a single edge spans r > r - 1
    }
    let s_a = params.config_bound(a, true);
    if s_a < f.r() || f.len() < a {
        return Ok(Vec::new());
    }
    let mut member = vec![false; f.len()];
    for_each_configuration(
        f,
        &ConfigQuery::new(a, s_a),
        &SearchBudget::default(),
        |c| {
            for &i in &c.edge_indices {
                member[i] = true;
            }
            true
        },
    )?;
    Ok((0..f.len()).filter(|&i| member[i]).collect())
}

/// Run the full cleaning pipeline on a k-free hypergraph. Errors with
/// `NotKFree` (and a witness) otherwise.
pub fn clean(f: &Hypergraph, params: &Params) -> Result<(Hypergraph, CleaningLedger)> {
    if params.t() < 2 {
        return Err(Error::BadArgs("cleaning needs t >= 2".into()));
    }
    if let Some(w) = k_config_witness(f, params) {
        return Err(Error::NotKFree {
            witness: w.edge_indices,
        });
    }
    let k = params.k();
    let n = f.n();
    let t = params.t();
    let base = binom_u128(n, t - 1);
    let mut ledger = CleaningLedger::default();
    let mut current = f.clone();

    // top-level stage: (k-1)-minus removal
    if k >= 3 {
        let ell = k - 1;
        let s_max = params.config_bound(ell, true);
        let q = if s_max >= f.r() && current.len() >= ell {
            Some(ConfigQuery::new(ell, s_max))
        } else {
            None
        };
        let run = run_stage(
            &current,
            params,
            StageKind::SparseTopLevel { ell },
            q,
            base,
            ell,
            |_, _| true,
        )?;
        current = run.graph;
        ledger.total_removed += run.stage.edges_removed;
        ledger.stages.push(run.stage);
    }

    // divisor stages, increasing ell
    for ell in 2..k.saturating_sub(1) {
        let j = if (k - 1) % ell == 0 {
            (k - 1) / ell
        } else if k % ell == 0 {
            k / ell
        } else {
            continue;
        };
        let s_max = params.config_bound(ell, true);
        let q = if s_max >= f.r() && current.len() >= ell {
            Some(ConfigQuery::new(ell, s_max))
        } else {
            None
        };
        let run = run_stage(
            &current,
            params,
            StageKind::SparseDivisor { ell, j },
            q,
            (j as u128 - 1) * base,
            ell,
            |_, _| true,
        )?;
        current = run.graph;
        ledger.total_removed += run.stage.edges_removed;
        ledger.stages.push(run.stage);
    }

    // sparse triples containing a pair, only when k = 2 mod 3
    if k % 3 == 2 {
        let s_max = params.config_bound(3, true);
        let q = if s_max >= f.r() && current.len() >= 3 {
            Some(ConfigQuery::new(3, s_max))
        } else {
            None
        };
        let run = run_stage(
            &current,
            params,
            StageKind::PairInSparseTriple,
            q,
            ((k as u128) - 2) / 3 * base,
            3,
            |c, g| contains_pair(g, c, params),
        )?;
        current = run.graph;
        ledger.total_removed += run.stage.edges_removed;
        ledger.stages.push(run.stage);
    }

    // cross stages: b-configurations meeting an a-minus-configuration edge
    for a in 1..k {
        let b = k - a;
        let h_a = edges_in_sparse_configs(&current, params, a)?;
        let q = if !h_a.is_empty() && current.len() >= b {
            Some(ConfigQuery::new(b, params.config_bound(b, false)))
        } else {
            None
        };
        let h_set: Vec<bool> = {
            let mut v = vec![false; current.len()];
            for &i in &h_a {
                v[i] = true;
            }
            v
        };
        let run = run_stage(
            &current,
            params,
            StageKind::CrossDisjoint { a, b },
            q,
            a as u128 * base,
            b,
            |c, _| c.edge_indices.iter().any(|&i| h_set[i]),
        )?;
        current = run.graph;
        ledger.total_removed += run.stage.edges_removed;
        ledger.stages.push(run.stage);
    }

    debug_assert!((ledger.total_removed as u128) <= ledger.total_bound());
    Ok((current, ledger))
}

/// A violation found by the independent re-check of the cleaning contract.
#[derive(Clone, Debug, Serialize)]
pub enum CleanViolation {
    /// An ell-minus-configuration for a divisor ell of k-1 or k.
    SparseConfig { ell: usize, witness: Vec<usize> },
    /// A sparse triple containing a 2-configuration.
    PairInSparseTriple {
        triple: Vec<usize>,
        pair: (usize, usize),
    },
    /// An a-minus-configuration sharing an edge with a b-configuration.
    SharedEdge {
        a: usize,
        b: usize,
        sparse: Vec<usize>,
        config: Vec<usize>,
        edge: usize,
    },
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct CleanReport {
    pub violations: Vec<CleanViolation>,
}

impl CleanReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Exhaustively re-check the cleaning contract on `f`. Violations are
/// reported as data, not errors.
pub fn verify_cleaned(f: &Hypergraph, params: &Params) -> Result<CleanReport> {
    let k = params.k();
    let mut report = CleanReport::default();

    // divisor freeness, including ell = k-1 and ell = k
    for ell in 2..=k {
        if (k - 1) % ell != 0 && k % ell != 0 {
            continue;
        }
        let s_max = params.config_bound(ell, true);
        if s_max < f.r() || f.len() < ell {
            continue;
        }
        if let Some(c) =
            find_configuration(f, &ConfigQuery::new(ell, s_max), &SearchBudget::default())?
        {
            report.violations.push(CleanViolation::SparseConfig {
                ell,
                witness: c.edge_indices,
            });
        }
    }

    // no sparse triple contains a 2-configuration
    let s3 = params.config_bound(3, true);
    if s3 >= f.r() && f.len() >= 3 {
        let s2 = params.config_bound(2, false);
        for_each_configuration(
            f,
            &ConfigQuery::new(3, s3),
            &SearchBudget::default(),
            |c| {
                if let Some(&pair) = pair_spans(f, &c, s2).first() {
                    report.violations.push(CleanViolation::PairInSparseTriple {
                        triple: c.edge_indices.clone(),
                        pair,
                    });
                }
                true
            },
        )?;
    }

    // cross disjointness for every split a + b = k
    for a in 1..k {
        let b = k - a;
        if a < 2 {
            continue; // no 1-minus-configurations exist
        }
        let s_a = params.config_bound(a, true);
        if s_a < f.r() || f.len() < a {
            continue;
        }
        let sparse = enumerate_configurations(f, &ConfigQuery::new(a, s_a), &SearchBudget::default())?;
        for sp in &sparse {
            for &edge in &sp.edge_indices {
                let q = ConfigQuery::new(b, params.config_bound(b, false))
                    .must_contain(vec![edge]);
                if let Some(cfg) = find_configuration(f, &q, &SearchBudget::default())? {
                    report.violations.push(CleanViolation::SharedEdge {
                        a,
                        b,
                        sparse: sp.edge_indices.clone(),
                        config: cfg.edge_indices,
                        edge,
                    });
                }
            }
        }
    }

    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::search::is_free;

    #[test]
    fn sparse_pair_removed_entirely() {
        // two 4-edges overlapping in 3 vertices form a 2-minus-configuration
        let p = Params::new(4, 2, 3).unwrap();
        let f = Hypergraph::build(4, 5, &[vec![0, 1, 2, 3], vec![0, 1, 2, 4]]).unwrap();
        assert_eq!(f.span(&[0, 1]).unwrap(), 5); // = 2(r-t)+t-1
        let (cleaned, ledger) = clean(&f, &p).unwrap();
        assert!(cleaned.is_empty());
        assert_eq!(ledger.total_removed, 2);
        let stage = ledger
            .stages
            .iter()
            .find(|s| s.kind == StageKind::SparseTopLevel { ell: 2 })
            .unwrap();
        assert_eq!(stage.edges_removed, 2);
    }

    #[test]
    fn nothing_to_remove_is_identity() {
        let p = Params::new(3, 2, 3).unwrap();
        let f = Hypergraph::build(3, 4, &[vec![0, 1, 2], vec![1, 2, 3]]).unwrap();
        let (cleaned, ledger) = clean(&f, &p).unwrap();
        assert_eq!(cleaned, f);
        assert!(ledger.all_zero());
        assert!(verify_cleaned(&cleaned, &p).unwrap().is_clean());
    }

    #[test]
    fn rejects_non_k_free_input() {
        let p = Params::new(3, 2, 2).unwrap();
        let f = Hypergraph::build(3, 4, &[vec![0, 1, 2], vec![1, 2, 3]]).unwrap();
        assert!(matches!(clean(&f, &p), Err(Error::NotKFree { .. })));
    }

    #[test]
    fn verify_flags_sparse_pair() {
        let p = Params::new(4, 2, 3).unwrap();
        let f = Hypergraph::build(4, 5, &[vec![0, 1, 2, 3], vec![0, 1, 2, 4]]).unwrap();
        let report = verify_cleaned(&f, &p).unwrap();
        assert!(!report.is_clean());
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, CleanViolation::SparseConfig { ell: 2, .. })));
    }

    #[test]
    fn verify_empty_graph_is_clean() {
        let p = Params::new(4, 2, 5).unwrap();
        let f = Hypergraph::empty(4, 6).unwrap();
        assert!(verify_cleaned(&f, &p).unwrap().is_clean());
    }

    #[test]
    fn clean_is_idempotent() {
        let p = Params::new(3, 2, 5).unwrap();
        let f = crate::solver::greedy_pack(&p, 12, 3, &Default::default()).unwrap();
        let (once, _) = clean(&f, &p).unwrap();
        let (twice, ledger) = clean(&once, &p).unwrap();
        assert_eq!(once, twice);
        assert!(ledger.all_zero());
    }

    #[test]
    fn cleaned_pack_passes_verification() {
        for (r, k, seed) in [(3, 3, 1u64), (3, 5, 7), (4, 5, 11), (4, 7, 2)] {
            let p = Params::new(r, 2, k).unwrap();
            let f = crate::solver::greedy_pack(&p, 13, seed, &Default::default()).unwrap();
            let (cleaned, ledger) = clean(&f, &p).unwrap();
            assert!(cleaned.is_subgraph_of(&f));
            assert!(is_free(&cleaned, &p, k, false));
            assert!((ledger.total_removed as u128) <= ledger.total_bound());
            let report = verify_cleaned(&cleaned, &p).unwrap();
            assert!(report.is_clean(), "violations: {:?}", report.violations);
        }
    }
}
