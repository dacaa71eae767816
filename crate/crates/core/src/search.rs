//! Pruned exhaustive search for ell- and ell-minus-configurations.
//!
//! The DFS walks edge indices in increasing order (combination enumeration),
//! so discovery order is canonical and duplicate-free. A partial selection
//! keeps only candidates that individually fit the span ceiling; since the
//! final span dominates the span of the current union with any single chosen
//! edge, this filter is admissible, and a node dies when fewer candidates
//! remain than edges still needed. No connectivity pruning is used: a
//! configuration may contain an edge disjoint from the rest.

use crate::bitset::VertexSet;
use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::params::Params;

/// Node and result caps for a search. Defaults are effectively unlimited.
#[derive(Clone, Copy, Debug)]
pub struct SearchBudget {
    pub max_nodes: u64,
    pub max_results: usize,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_nodes: u64::MAX,
            max_results: usize::MAX,
        }
    }
}

impl SearchBudget {
    pub fn nodes(max_nodes: u64) -> Self {
        SearchBudget {
            max_nodes,
            ..Default::default()
        }
    }
}

/// A configuration query: `ell` edges spanning at most `s_max` vertices,
/// optionally forced to contain given edges, to cover given vertices, or to
/// avoid given edge indices.
#[derive(Clone, Debug, Default)]
pub struct ConfigQuery {
    pub ell: usize,
    pub s_max: usize,
    pub must_contain: Vec<usize>,
    pub must_cover: Vec<usize>,
    pub disjoint_from: Vec<usize>,
}

impl ConfigQuery {
    pub fn new(ell: usize, s_max: usize) -> ConfigQuery {
        ConfigQuery {
            ell,
            s_max,
            ..Default::default()
        }
    }

    pub fn must_contain(mut self, idxs: Vec<usize>) -> ConfigQuery {
        self.must_contain = idxs;
        self
    }

    pub fn must_cover(mut self, verts: Vec<usize>) -> ConfigQuery {
        self.must_cover = verts;
        self
    }

    pub fn disjoint_from(mut self, idxs: Vec<usize>) -> ConfigQuery {
        self.disjoint_from = idxs;
        self
    }

    fn validate(&self, f: &Hypergraph) -> Result<()> {
        if self.ell < 1 {
            return Err(Error::InvalidQuery("ell must be >= 1".into()));
        }
        if self.s_max < f.r() {
            return Err(Error::InvalidQuery(format!(
                "s_max = {} below uniformity r = {}",
                self.s_max,
                f.r()
            )));
        }
        let mut mc = self.must_contain.clone();
        mc.sort_unstable();
        mc.dedup();
        if mc.len() != self.must_contain.len() {
            return Err(Error::InvalidQuery("must_contain has duplicates".into()));
        }
        if mc.len() > self.ell {
            return Err(Error::InvalidQuery(
                "must_contain larger than ell".into(),
            ));
        }
        for &i in &mc {
            f.edge(i)?;
        }
        for &i in &self.disjoint_from {
            f.edge(i)?;
        }
        Ok(())
    }
}

/// A set of edge indices together with its cached span.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct Configuration {
    pub edge_indices: Vec<usize>,
    pub span: usize,
}

impl Configuration {
    /// Recompute the span and re-check basic shape against the host graph.
    pub fn verify(&self, f: &Hypergraph) -> Result<()> {
        let mut sorted = self.edge_indices.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != self.edge_indices.len() {
            return Err(Error::InvalidQuery("repeated edge index".into()));
        }
        let span = f.span(&sorted)?;
        if span != self.span {
            return Err(Error::InvalidQuery(format!(
                "cached span {} != recomputed {span}",
                self.span
            )));
        }
        Ok(())
    }

    /// Does this configuration satisfy every constraint of `q` in `f`?
    pub fn matches(&self, f: &Hypergraph, q: &ConfigQuery) -> bool {
        if self.edge_indices.len() != q.ell || self.span > q.s_max {
            return false;
        }
        if !q
            .must_contain
            .iter()
            .all(|i| self.edge_indices.contains(i))
        {
            return false;
        }
        if self
            .edge_indices
            .iter()
            .any(|i| q.disjoint_from.contains(i))
        {
            return false;
        }
        let u = f.union_of(&self.edge_indices);
        q.must_cover.iter().all(|&v| u.contains(v))
    }
}

enum Walk {
    Continue,
    Stop,
}

struct Dfs<'a> {
    f: &'a Hypergraph,
    ell: usize,
    s_max: usize,
    must_cover: Option<VertexSet>,
    nodes: u64,
    max_nodes: u64,
}

impl<'a> Dfs<'a> {
    fn run(
        &mut self,
        chosen: &mut Vec<usize>,
        union: VertexSet,
        cands: &[usize],
        emit: &mut dyn FnMut(&[usize], usize) -> Walk,
    ) -> Result<Walk> {
        self.nodes += 1;
        if self.nodes > self.max_nodes {
            return Err(Error::BudgetExhausted { nodes: self.nodes });
        }
        if chosen.len() == self.ell {
            if let Some(mc) = &self.must_cover {
                if !mc.is_subset_of(&union) {
                    return Ok(Walk::Continue);
                }
            }
            let mut sorted = chosen.clone();
            sorted.sort_unstable();
            return Ok(emit(&sorted, union.len()));
        }
        let needed = self.ell - chosen.len();
        let bits = self.f.bits();
        let filtered: Vec<usize> = cands
            .iter()
            .copied()
            .filter(|&i| union.union_len(&bits[i]) <= self.s_max)
            .collect();
        if filtered.len() < needed {
            return Ok(Walk::Continue);
        }
        if let Some(mc) = &self.must_cover {
            let mut reach = union;
            for &i in &filtered {
                reach = reach.union(&bits[i]);
            }
            if !mc.is_subset_of(&reach) {
                return Ok(Walk::Continue);
            }
        }
        for pos in 0..filtered.len() {
            if filtered.len() - pos < needed {
                break;
            }
            let i = filtered[pos];
            chosen.push(i);
            let walked = self.run(chosen, union.union(&bits[i]), &filtered[pos + 1..], emit)?;
            chosen.pop();
            if matches!(walked, Walk::Stop) {
                return Ok(Walk::Stop);
            }
        }
        Ok(Walk::Continue)
    }
}

/// Stream configurations matching `q` in canonical order. The callback
/// returns `false` to stop. `Ok(true)` means the space was exhausted.
pub fn for_each_configuration(
    f: &Hypergraph,
    q: &ConfigQuery,
    budget: &SearchBudget,
    mut cb: impl FnMut(Configuration) -> bool,
) -> Result<bool> {
    q.validate(f)?;
    let mut chosen = q.must_contain.clone();
    chosen.sort_unstable();
    if chosen.iter().any(|i| q.disjoint_from.contains(i)) {
        return Ok(true); // contradictory constraints: nothing can match
    }
    let union = f.union_of(&chosen);
    if union.len() > q.s_max {
        return Ok(true);
    }
    let cands: Vec<usize> = (0..f.len())
        .filter(|i| !chosen.contains(i) && !q.disjoint_from.contains(i))
        .collect();
    let mut dfs = Dfs {
        f,
        ell: q.ell,
        s_max: q.s_max,
        must_cover: if q.must_cover.is_empty() {
            None
        } else {
            Some(VertexSet::from_slice(&q.must_cover))
        },
        nodes: 0,
        max_nodes: budget.max_nodes,
    };
    let walked = dfs.run(&mut chosen, union, &cands, &mut |idxs, span| {
        if cb(Configuration {
            edge_indices: idxs.to_vec(),
            span,
        }) {
            Walk::Continue
        } else {
            Walk::Stop
        }
    })?;
    Ok(matches!(walked, Walk::Continue))
}

/// First configuration matching `q`, or `None` when the space was exhausted
/// without a hit. `BudgetExhausted` is distinct from "none exists".
pub fn find_configuration(
    f: &Hypergraph,
    q: &ConfigQuery,
    budget: &SearchBudget,
) -> Result<Option<Configuration>> {
    let mut hit = None;
    for_each_configuration(f, q, budget, |c| {
        hit = Some(c);
        false
    })?;
    Ok(hit)
}

/// All configurations matching `q`, up to `budget.max_results`.
pub fn enumerate_configurations(
    f: &Hypergraph,
    q: &ConfigQuery,
    budget: &SearchBudget,
) -> Result<Vec<Configuration>> {
    let mut out = Vec::new();
    for_each_configuration(f, q, budget, |c| {
        out.push(c);
        out.len() < budget.max_results
    })?;
    Ok(out)
}

/// Is `f` free of ell-configurations (the minus variant when `minus`)?
/// Always runs to exhaustion, so only valid at desk scale.
pub fn is_free(f: &Hypergraph, params: &Params, ell: usize, minus: bool) -> bool {
    if f.len() < ell {
        return true;
    }
    let s_max = params.config_bound(ell, minus);
    if s_max < f.r() {
        return true; // even a single edge spans r vertices
    }
    let q = ConfigQuery::new(ell, s_max);
    find_configuration(f, &q, &SearchBudget::default())
        .expect("unbudgeted search cannot exhaust")
        .is_none()
}

/// Witness for k-freeness violation, if any.
pub fn k_config_witness(f: &Hypergraph, params: &Params) -> Option<Configuration> {
    let k = params.k();
    if f.len() < k {
        return None;
    }
    let q = ConfigQuery::new(k, params.config_bound(k, false));
    find_configuration(f, &q, &SearchBudget::default()).expect("unbudgeted")
}

/// All 2-configurations containing the edge `e`. In a k-free graph there
/// are at most `k - 2` of them. With `verify_k_free`, k-freeness is checked
/// first and `NotKFree` returned on failure.
pub fn two_configs_through_edge(
    f: &Hypergraph,
    params: &Params,
    e: usize,
    verify_k_free: bool,
) -> Result<Vec<Configuration>> {
    f.edge(e)?;
    if verify_k_free {
        if let Some(w) = k_config_witness(f, params) {
            return Err(Error::NotKFree {
                witness: w.edge_indices,
            });
        }
    }
    let s_max = params.config_bound(2, false);
    let eb = *f.edge_bits(e)?;
    let mut out = Vec::new();
    for i in 0..f.len() {
        if i == e {
            continue;
        }
        let span = eb.union_len(&f.bits()[i]);
        if span <= s_max {
            let mut idxs = vec![e, i];
            idxs.sort_unstable();
            out.push(Configuration {
                edge_indices: idxs,
                span,
            });
        }
    }
    out.sort_by(|a, b| a.edge_indices.cmp(&b.edge_indices));
    Ok(out)
}

/// All 2-configurations whose vertex set contains the t-set `tset`.
/// For k-free graphs with even k there are at most `(k - 2)^2` of them.
pub fn two_configs_through_tset(
    f: &Hypergraph,
    params: &Params,
    tset: &[usize],
) -> Result<Vec<Configuration>> {
    if tset.len() != params.t() {
        return Err(Error::BadT {
            t: tset.len(),
            r: f.r(),
        });
    }
    let target = VertexSet::from_slice(tset);
    let s_max = params.config_bound(2, false);
    let mut out = Vec::new();
    for i in 0..f.len() {
        for j in i + 1..f.len() {
            let u = f.bits()[i].union(&f.bits()[j]);
            if u.len() <= s_max && target.is_subset_of(&u) {
                out.push(Configuration {
                    edge_indices: vec![i, j],
                    span: u.len(),
                });
            }
        }
    }
    Ok(out)
}

/// Greedily build an inclusion-maximal list of pairwise edge-disjoint
/// configurations matching `q` and the extra predicate, consuming
/// candidates in canonical discovery order. The returned list is maximal:
/// no matching configuration is edge-disjoint from all chosen ones.
pub fn maximal_disjoint_collection(
    f: &Hypergraph,
    q: &ConfigQuery,
    budget: &SearchBudget,
    mut extra_filter: impl FnMut(&Configuration, &Hypergraph) -> bool,
) -> Result<Vec<Configuration>> {
    let mut collection: Vec<Configuration> = Vec::new();
    let mut consumed = q.disjoint_from.clone();
    let mut nodes_left = budget.max_nodes;
    loop {
        let sub_q = q.clone().disjoint_from(consumed.clone());
        let sub_budget = SearchBudget {
            max_nodes: nodes_left,
            max_results: usize::MAX,
        };
        let mut hit = None;
        let mut used = 0u64;
        let exhausted = {
            let hit_ref = &mut hit;
            for_each_configuration_counted(f, &sub_q, &sub_budget, &mut used, |c| {
                if extra_filter(&c, f) {
                    *hit_ref = Some(c);
                    false
                } else {
                    true
                }
            })?
        };
        nodes_left = nodes_left.saturating_sub(used);
        match hit {
            Some(c) => {
                consumed.extend_from_slice(&c.edge_indices);
                collection.push(c);
            }
            None => {
                debug_assert!(exhausted);
                return Ok(collection);
            }
        }
    }
}

fn for_each_configuration_counted(
    f: &Hypergraph,
    q: &ConfigQuery,
    budget: &SearchBudget,
    used: &mut u64,
    mut cb: impl FnMut(Configuration) -> bool,
) -> Result<bool> {
    q.validate(f)?;
    let mut chosen = q.must_contain.clone();
    chosen.sort_unstable();
    if chosen.iter().any(|i| q.disjoint_from.contains(i)) {
        return Ok(true);
    }
    let union = f.union_of(&chosen);
    if union.len() > q.s_max {
        return Ok(true);
    }
    let cands: Vec<usize> = (0..f.len())
        .filter(|i| !chosen.contains(i) && !q.disjoint_from.contains(i))
        .collect();
    let mut dfs = Dfs {
        f,
        ell: q.ell,
        s_max: q.s_max,
        must_cover: if q.must_cover.is_empty() {
            None
        } else {
            Some(VertexSet::from_slice(&q.must_cover))
        },
        nodes: 0,
        max_nodes: budget.max_nodes,
    };
    let res = dfs.run(&mut chosen, union, &cands, &mut |idxs, span| {
        if cb(Configuration {
            edge_indices: idxs.to_vec(),
            span,
        }) {
            Walk::Continue
        } else {
            Walk::Stop
        }
    });
    *used = dfs.nodes;
    Ok(matches!(res?, Walk::Continue))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(n: usize, edges: &[&[usize]]) -> Hypergraph {
        let raw: Vec<Vec<usize>> = edges.iter().map(|e| e.to_vec()).collect();
        Hypergraph::build(raw[0].len().max(2), n, &raw).unwrap()
    }

    /// Independent oracle: direct loop over all C(m, ell) index subsets.
    fn naive_enumerate(f: &Hypergraph, q: &ConfigQuery) -> Vec<Configuration> {
        let mut out = Vec::new();
        crate::combi::for_each_combination(f.len(), q.ell, |idxs| {
            let c = Configuration {
                edge_indices: idxs.to_vec(),
                span: f.span(idxs).unwrap(),
            };
            if c.matches(f, q) {
                out.push(c);
            }
            true
        });
        out
    }

    #[test]
    fn find_examples() {
        let f = graph(4, &[&[0, 1, 2], &[1, 2, 3]]);
        let c = find_configuration(&f, &ConfigQuery::new(2, 4), &SearchBudget::default())
            .unwrap()
            .unwrap();
        assert_eq!(c.edge_indices, vec![0, 1]);
        assert_eq!(c.span, 4);

        let g = graph(6, &[&[0, 1, 2], &[3, 4, 5]]);
        assert!(
            find_configuration(&g, &ConfigQuery::new(2, 4), &SearchBudget::default())
                .unwrap()
                .is_none()
        );

        let h = graph(5, &[&[0, 1, 2], &[1, 2, 3], &[2, 3, 4]]);
        let c = find_configuration(&h, &ConfigQuery::new(3, 5), &SearchBudget::default())
            .unwrap()
            .unwrap();
        assert_eq!(c.edge_indices, vec![0, 1, 2]);
        assert_eq!(c.span, 5);
        // cross-check with the naive oracle
        assert_eq!(naive_enumerate(&h, &ConfigQuery::new(3, 5)).len(), 1);
    }

    #[test]
    fn budget_exhaustion_is_an_error() {
        let f = graph(6, &[&[0, 1, 2], &[1, 2, 3], &[2, 3, 4], &[3, 4, 5]]);
        let q = ConfigQuery::new(4, 12);
        let err = find_configuration(&f, &q, &SearchBudget::nodes(2)).unwrap_err();
        assert!(matches!(err, Error::BudgetExhausted { .. }));
    }

    #[test]
    fn is_free_examples() {
        let p = Params::new(3, 2, 3).unwrap();
        let single = graph(3, &[&[0, 1, 2]]);
        assert!(is_free(&single, &p, 2, false));
        assert!(is_free(&single, &p, 5, false));

        let f = graph(4, &[&[0, 1, 2], &[1, 2, 3]]);
        assert!(!is_free(&f, &p, 2, false));
        assert!(is_free(&f, &p, 2, true)); // two distinct triples span >= 4 > 3
    }

    #[test]
    fn two_through_edge_examples() {
        let p3 = Params::new(3, 2, 3).unwrap();
        let f = graph(4, &[&[0, 1, 2], &[1, 2, 3]]);
        let cs = two_configs_through_edge(&f, &p3, 0, true).unwrap();
        assert_eq!(cs.len(), 1);
        assert_eq!(cs[0].edge_indices, vec![0, 1]);

        let g = graph(6, &[&[0, 1, 2], &[3, 4, 5]]);
        assert!(two_configs_through_edge(&g, &p3, 0, true)
            .unwrap()
            .is_empty());

        // all four triples of {0,1,2,3}: 3 pairs through edge 0, and 7-free
        let p7 = Params::new(3, 2, 7).unwrap();
        let k4 = graph(4, &[&[0, 1, 2], &[0, 1, 3], &[0, 2, 3], &[1, 2, 3]]);
        assert!(is_free(&k4, &p7, 7, false));
        let cs = two_configs_through_edge(&k4, &p7, 0, true).unwrap();
        assert_eq!(cs.len(), 3);
        assert!(cs.len() <= p7.k() - 2);
    }

    #[test]
    fn two_through_edge_not_k_free() {
        let p = Params::new(3, 2, 2).unwrap();
        let f = graph(4, &[&[0, 1, 2], &[1, 2, 3]]);
        assert!(matches!(
            two_configs_through_edge(&f, &p, 0, true),
            Err(Error::NotKFree { .. })
        ));
        assert_eq!(two_configs_through_edge(&f, &p, 0, false).unwrap().len(), 1);
    }

    #[test]
    fn two_through_tset_examples() {
        let p = Params::new(3, 2, 4).unwrap();
        let f = graph(4, &[&[0, 1, 2], &[1, 2, 3]]);
        let cs = two_configs_through_tset(&f, &p, &[1, 2]).unwrap();
        assert_eq!(cs.len(), 1);
        // containment in the span, not in an edge
        let cs = two_configs_through_tset(&f, &p, &[0, 3]).unwrap();
        assert_eq!(cs.len(), 1);
        assert_eq!(cs[0].edge_indices, vec![0, 1]);
        assert!(matches!(
            two_configs_through_tset(&f, &p, &[0, 1, 2]),
            Err(Error::BadT { .. })
        ));
    }

    #[test]
    fn enumerate_examples() {
        let f = graph(4, &[&[0, 1, 2], &[1, 2, 3]]);
        let q = ConfigQuery::new(2, 4);
        assert_eq!(
            enumerate_configurations(&f, &q, &SearchBudget::default())
                .unwrap()
                .len(),
            1
        );

        let k4 = graph(4, &[&[0, 1, 2], &[0, 1, 3], &[0, 2, 3], &[1, 2, 3]]);
        let all = enumerate_configurations(&k4, &q, &SearchBudget::default()).unwrap();
        assert_eq!(all.len(), 6); // every pair of triples on 4 points spans 4
        assert_eq!(all, naive_enumerate(&k4, &q));

        let q = ConfigQuery::new(2, 4).must_cover(vec![0, 4]);
        assert!(enumerate_configurations(&f, &q, &SearchBudget::default())
            .unwrap()
            .is_empty());
    }

    #[test]
    fn enumerate_respects_max_results() {
        let k4 = graph(4, &[&[0, 1, 2], &[0, 1, 3], &[0, 2, 3], &[1, 2, 3]]);
        let b = SearchBudget {
            max_nodes: u64::MAX,
            max_results: 2,
        };
        assert_eq!(
            enumerate_configurations(&k4, &ConfigQuery::new(2, 4), &b)
                .unwrap()
                .len(),
            2
        );
    }

    #[test]
    fn must_contain_and_disjoint() {
        let f = graph(5, &[&[0, 1, 2], &[1, 2, 3], &[2, 3, 4]]);
        let q = ConfigQuery::new(2, 4).must_contain(vec![1]);
        let got = enumerate_configurations(&f, &q, &SearchBudget::default()).unwrap();
        assert_eq!(got.len(), 2);
        let q = ConfigQuery::new(2, 4).must_contain(vec![1]).disjoint_from(vec![0]);
        let got = enumerate_configurations(&f, &q, &SearchBudget::default()).unwrap();
        assert_eq!(got.len(), 1);
        assert_eq!(got[0].edge_indices, vec![1, 2]);
        // contradictory query
        let q = ConfigQuery::new(2, 4).must_contain(vec![1]).disjoint_from(vec![1]);
        assert!(enumerate_configurations(&f, &q, &SearchBudget::default())
            .unwrap()
            .is_empty());
    }

    #[test]
    fn maximal_disjoint_examples() {
        let f = graph(8, &[&[0, 1, 2], &[1, 2, 3], &[4, 5, 6], &[5, 6, 7]]);
        let got =
            maximal_disjoint_collection(&f, &ConfigQuery::new(2, 4), &SearchBudget::default(), |_, _| true)
                .unwrap();
        assert_eq!(got.len(), 2);
        assert_eq!(got[0].edge_indices, vec![0, 1]);
        assert_eq!(got[1].edge_indices, vec![2, 3]);

        let g = graph(5, &[&[0, 1, 2], &[1, 2, 3], &[2, 3, 4]]);
        let got =
            maximal_disjoint_collection(&g, &ConfigQuery::new(2, 4), &SearchBudget::default(), |_, _| true)
                .unwrap();
        assert_eq!(got.len(), 1);
        assert_eq!(got[0].edge_indices, vec![0, 1]);

        let empty = maximal_disjoint_collection(
            &g,
            &ConfigQuery::new(2, 3),
            &SearchBudget::default(),
            |_, _| true,
        )
        .unwrap();
        assert!(empty.is_empty());
    }

    #[test]
    fn returned_configs_reverify() {
        let f = graph(6, &[&[0, 1, 2], &[0, 1, 3], &[1, 2, 3], &[3, 4, 5]]);
        let q = ConfigQuery::new(2, 4);
        for c in enumerate_configurations(&f, &q, &SearchBudget::default()).unwrap() {
            c.verify(&f).unwrap();
            assert!(c.matches(&f, &q));
        }
    }

    #[test]
    fn agrees_with_naive_on_random_inputs() {
        use rand::rngs::StdRng;
        use rand::{Rng, SeedableRng};
        let mut rng = StdRng::seed_from_u64(7);
        for trial in 0..40 {
            let n = rng.gen_range(4..9);
            let mut raw: Vec<Vec<usize>> = Vec::new();
            let mut seen = std::collections::BTreeSet::new();
            for _ in 0..rng.gen_range(0..9) {
                let mut e: Vec<usize> = (0..n).collect();
                for i in (1..e.len()).rev() {
                    let j = rng.gen_range(0..=i);
                    e.swap(i, j);
                }
                let mut e: Vec<usize> = e[..3].to_vec();
                e.sort_unstable();
                if seen.insert(e.clone()) {
                    raw.push(e);
                }
            }
            let f = Hypergraph::build(3, n, &raw).unwrap();
            let ell = 1 + trial % 4;
            let s_max = 3 + trial % 6;
            if s_max < 3 {
                continue;
            }
            let q = ConfigQuery::new(ell, s_max);
            let got = enumerate_configurations(&f, &q, &SearchBudget::default()).unwrap();
            assert_eq!(got, naive_enumerate(&f, &q));
        }
    }
}
