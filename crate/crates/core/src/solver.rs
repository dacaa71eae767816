//! Exact computation of the extremal edge count
//! `f^(r)(n; k(r-t)+t, k)` at desk scale, by branch and bound over the
//! canonical candidate edge sequence, plus a seeded greedy packer for
//! lower-bound witnesses and a deliberately simple reference oracle.

use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::bitset::VertexSet;
use crate::combi::{for_each_combination, subsets};
use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::params::Params;
use crate::search::is_free;

/// Soft cap on the candidate edge universe `C(n, r)`.
pub const CANDIDATE_LIMIT: u128 = 1_000_000;

#[derive(Clone, Debug)]
pub struct SolverOptions {
    pub node_limit: u64,
    pub time_limit: Option<Duration>,
    /// Explore only edge sets lexicographically minimal under transpositions
    /// of the first `min(n, 8)` vertices. Off by default for verifiability.
    pub symmetry_pruning: bool,
    pub incumbent_seed: Option<Hypergraph>,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions {
            node_limit: u64::MAX,
            time_limit: None,
            symmetry_pruning: false,
            incumbent_seed: None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SolverResult {
    /// Maximum edge count found; exact when `complete`.
    pub optimum: usize,
    pub witness: Hypergraph,
    pub nodes_explored: u64,
    /// True iff the search exhausted the space (or closed it with the
    /// capacity bound); false when a node or time limit was hit.
    pub complete: bool,
}

struct Candidate {
    verts: Vec<usize>,
    bits: VertexSet,
    tset_ranks: Vec<u32>,
}

/// Colex rank of a strictly increasing subset: `sum_j C(v_j, j+1)`.
fn colex_rank(subset: &[usize], binoms: &[Vec<u64>]) -> u64 {
    subset
        .iter()
        .enumerate()
        .map(|(j, &v)| binoms[v][j + 1])
        .sum()
}

fn binom_table(n_max: usize, k_max: usize) -> Vec<Vec<u64>> {
    let mut tbl = vec![vec![0u64; k_max + 1]; n_max + 1];
    for n in 0..=n_max {
        tbl[n][0] = 1;
        for k in 1..=k_max.min(n) {
            tbl[n][k] = tbl[n - 1][k - 1] + if n - 1 >= k { tbl[n - 1][k] } else { 0 };
        }
    }
    tbl
}

enum Stop {
    Exhausted,
    Optimal,
    Limit,
}

struct BranchAndBound {
    k: usize,
    s: usize,
    n: usize,
    cands: Vec<Candidate>,
    cover: Vec<u16>,
    chosen: Vec<usize>,
    chosen_bits: Vec<VertexSet>,
    best: usize,
    best_edges: Vec<Vec<usize>>,
    nodes: u64,
    node_limit: u64,
    deadline: Option<Instant>,
    global_ub: usize,
    /// dead_prefix[pos]: t-sets no candidate at index >= pos can cover.
    dead_prefix: Vec<u32>,
    n_tsets: usize,
    crt: usize,
    symmetry: bool,
}

impl BranchAndBound {
    fn future_capacity(&self, pos: usize) -> usize {
        // every t-set still coverable by the suffix takes at most k-1 covers
        let alive = self.n_tsets - self.dead_prefix[pos] as usize;
        (self.k - 1) * alive / self.crt
    }

    fn quick_reject(&self, i: usize) -> bool {
        // a t-set already covered k-1 times pins down a k-configuration
        self.cands[i]
            .tset_ranks
            .iter()
            .any(|&rk| self.cover[rk as usize] as usize >= self.k - 1)
    }

    fn creates_k_config(&self, i: usize) -> bool {
        has_config_through(
            self.cands[i].bits,
            &self.chosen_bits,
            self.k - 1,
            self.s,
        )
    }

    fn lex_minimal(&self, newest: usize) -> bool {
        let mut edges: Vec<Vec<usize>> = self
            .chosen
            .iter()
            .chain(std::iter::once(&newest))
            .map(|&i| self.cands[i].verts.clone())
            .collect();
        edges.sort_unstable();
        let limit = self.n.min(8);
        for a in 0..limit {
            for b in a + 1..limit {
                let mut relabeled: Vec<Vec<usize>> = edges
                    .iter()
                    .map(|e| {
                        let mut e: Vec<usize> = e
                            .iter()
                            .map(|&v| {
                                if v == a {
                                    b
                                } else if v == b {
                                    a
                                } else {
                                    v
                                }
                            })
                            .collect();
                        e.sort_unstable();
                        e
                    })
                    .collect();
                relabeled.sort_unstable();
                if relabeled < edges {
                    return false;
                }
            }
        }
        true
    }

    fn apply(&mut self, i: usize) {
        self.chosen.push(i);
        self.chosen_bits.push(self.cands[i].bits);
        for &rk in &self.cands[i].tset_ranks {
            self.cover[rk as usize] += 1;
        }
    }

    fn unapply(&mut self, i: usize) {
        self.chosen.pop();
        self.chosen_bits.pop();
        for &rk in &self.cands[i].tset_ranks {
            self.cover[rk as usize] -= 1;
        }
    }

    fn run(&mut self, pos: usize) -> Stop {
        self.nodes += 1;
        if self.nodes > self.node_limit {
            return Stop::Limit;
        }
        if self.nodes % 1024 == 0 {
            if let Some(d) = self.deadline {
                if Instant::now() >= d {
                    return Stop::Limit;
                }
            }
        }
        if self.chosen.len() > self.best {
            self.best = self.chosen.len();
            self.best_edges = self
                .chosen
                .iter()
                .map(|&i| self.cands[i].verts.clone())
                .collect();
        }
        if self.best >= self.global_ub {
            return Stop::Optimal;
        }
        let count = self.chosen.len();
        for i in pos..self.cands.len() {
            let remaining = self.cands.len() - i;
            if count + remaining.min(self.future_capacity(i)) <= self.best {
                break; // both bounds only shrink as i grows
            }
            if self.quick_reject(i) || self.creates_k_config(i) {
                continue;
            }
            if self.symmetry && !self.lex_minimal(i) {
                continue;
            }
            self.apply(i);
            let stop = self.run(i + 1);
            self.unapply(i);
            match stop {
                Stop::Exhausted => {}
                other => return other,
            }
        }
        Stop::Exhausted
    }
}

/// Specialized search for k = 2, where freeness is exactly "every t-set
/// covered at most once": branch on the least open t-set, covering it with
/// each viable candidate or declaring it permanently uncovered. The dead
/// accounting makes the capacity bound shrink inside the tree, which the
/// lex-edge walk cannot do.
struct PairBranch {
    cands: Vec<Candidate>,
    by_tset: Vec<Vec<u32>>,
    /// 0 = open, 1 = covered, 2 = dead
    state: Vec<u8>,
    open_count: usize,
    chosen: Vec<usize>,
    best: usize,
    best_edges: Vec<Vec<usize>>,
    nodes: u64,
    node_limit: u64,
    deadline: Option<Instant>,
    global_ub: usize,
    crt: usize,
}

impl PairBranch {
    fn viable(&self, ci: usize) -> bool {
        self.cands[ci]
            .tset_ranks
            .iter()
            .all(|&rk| self.state[rk as usize] == 0)
    }

    fn include(&mut self, ci: usize) {
        self.chosen.push(ci);
        for &rk in &self.cands[ci].tset_ranks {
            self.state[rk as usize] = 1;
        }
        self.open_count -= self.crt;
    }

    fn exclude(&mut self, ci: usize) {
        self.chosen.pop();
        for &rk in &self.cands[ci].tset_ranks {
            self.state[rk as usize] = 0;
        }
        self.open_count += self.crt;
    }

    fn run(&mut self) -> Stop {
        self.nodes += 1;
        if self.nodes > self.node_limit {
            return Stop::Limit;
        }
        if self.nodes % 1024 == 0 {
            if let Some(d) = self.deadline {
                if Instant::now() >= d {
                    return Stop::Limit;
                }
            }
        }
        if self.chosen.len() > self.best {
            self.best = self.chosen.len();
            self.best_edges = self
                .chosen
                .iter()
                .map(|&i| self.cands[i].verts.clone())
                .collect();
        }
        if self.best >= self.global_ub {
            return Stop::Optimal;
        }
        if self.chosen.len() + self.open_count / self.crt <= self.best {
            return Stop::Exhausted;
        }
        // first open t-set; ones nothing can cover any more are forced dead
        let mut forced: Vec<usize> = Vec::new();
        let mut branch: Option<usize> = None;
        for rk in 0..self.state.len() {
            if self.state[rk] != 0 {
                continue;
            }
            if self.by_tset[rk].iter().any(|&ci| self.viable(ci as usize)) {
                branch = Some(rk);
                break;
            }
            self.state[rk] = 2;
            self.open_count -= 1;
            forced.push(rk);
        }
        let result = (|| {
            if self.chosen.len() + self.open_count / self.crt <= self.best {
                return Stop::Exhausted;
            }
            let Some(rk) = branch else {
                return Stop::Exhausted; // leaf: nothing coverable remains
            };
            for idx in 0..self.by_tset[rk].len() {
                let ci = self.by_tset[rk][idx] as usize;
                if !self.viable(ci) {
                    continue;
                }
                self.include(ci);
                let stop = self.run();
                self.exclude(ci);
                if !matches!(stop, Stop::Exhausted) {
                    return stop;
                }
            }
            // leave rk uncovered forever
            self.state[rk] = 2;
            self.open_count -= 1;
            let stop = self.run();
            self.state[rk] = 0;
            self.open_count += 1;
            stop
        })();
        for rk in forced {
            self.state[rk] = 0;
            self.open_count += 1;
        }
        result
    }
}

/// Is there a set of `need` members of `pool` whose union with `base` stays
/// within `s_max` vertices?
pub(crate) fn has_config_through(
    base: VertexSet,
    pool: &[VertexSet],
    need: usize,
    s_max: usize,
) -> bool {
    if base.len() > s_max {
        return false;
    }
    if need == 0 {
        return true;
    }
    let filtered: Vec<VertexSet> = pool
        .iter()
        .copied()
        .filter(|b| base.union_len(b) <= s_max)
        .collect();
    if filtered.len() < need {
        return false;
    }
    for pos in 0..filtered.len() {
        if filtered.len() - pos < need {
            break;
        }
        if has_config_through(
            base.union(&filtered[pos]),
            &filtered[pos + 1..],
            need - 1,
            s_max,
        ) {
            return true;
        }
    }
    false
}

fn candidate_universe(params: &Params, n: usize) -> Result<Vec<Candidate>> {
    let r = params.r();
    let t = params.t();
    let count = crate::hypergraph::binom_u128(n, r);
    if count > CANDIDATE_LIMIT {
        return Err(Error::BadArgs(format!(
            "C({n}, {r}) = {count} candidate edges exceed the desk-scale cap {CANDIDATE_LIMIT}"
        )));
    }
    let binoms = binom_table(n, r);
    let all: Vec<usize> = (0..n).collect();
    let cands = subsets(&all, r)
        .into_iter()
        .map(|verts| {
            let bits = VertexSet::from_slice(&verts);
            let tset_ranks = subsets(&verts, t)
                .iter()
                .map(|s| colex_rank(s, &binoms) as u32)
                .collect();
            Candidate {
                verts,
                bits,
                tset_ranks,
            }
        })
        .collect();
    Ok(cands)
}

/// Exact maximum edge count of a k-free n-vertex r-graph (at the ambient
/// `(r, t, k)`), by pruned branch and bound. When a limit interrupts the
/// search the best incumbent is returned with `complete = false`.
pub fn exact_f(params: &Params, n: usize, opts: &SolverOptions) -> Result<SolverResult> {
    let (r, t, k) = (params.r(), params.t(), params.k());
    if n < r {
        return Err(Error::BadArgs(format!("need n >= r, got n={n}, r={r}")));
    }
    let cands = candidate_universe(params, n)?;
    let n_tsets = crate::hypergraph::binom_u128(n, t) as usize;
    let crt = crate::hypergraph::binom_u128(r, t) as usize;

    // static capacity caps: per t-set and per vertex degree
    let tset_cap = (k - 1) * n_tsets / crt;
    let deg_cap = (k - 1) * crate::hypergraph::binom_u128(n - 1, t - 1) as usize
        / crate::hypergraph::binom_u128(r - 1, t - 1) as usize;
    let global_ub = cands.len().min(tset_cap).min(n * deg_cap / r);

    // last candidate index covering each t-set, turned into a prefix count
    let binoms = binom_table(n, r);
    let mut last = vec![0u32; n_tsets];
    for (i, c) in cands.iter().enumerate() {
        for &rk in &c.tset_ranks {
            last[rk as usize] = i as u32;
        }
    }
    let mut dead_prefix = vec![0u32; cands.len() + 1];
    for &l in &last {
        dead_prefix[l as usize + 1] += 1;
    }
    for i in 1..dead_prefix.len() {
        dead_prefix[i] += dead_prefix[i - 1];
    }
    let _ = binoms;

    let mut incumbent: (usize, Vec<Vec<usize>>) = (0, Vec::new());
    if let Some(seed) = &opts.incumbent_seed {
        if seed.r() != r || seed.n() != n {
            return Err(Error::BadArgs(
                "incumbent seed has mismatched r or n".into(),
            ));
        }
        if !is_free(seed, params, k, false) {
            return Err(Error::BadArgs("incumbent seed is not k-free".into()));
        }
        incumbent = (seed.len(), seed.edges().to_vec());
    }
    let deadline = opts.time_limit.map(|d| Instant::now() + d);

    // k = 2 admits the specialized cover-branching search; the symmetry
    // flag forces the generic walk, which doubles as a cross-check.
    let (best, best_edges, nodes, stop) = if k == 2 && !opts.symmetry_pruning {
        let mut by_tset: Vec<Vec<u32>> = vec![Vec::new(); n_tsets];
        for (i, c) in cands.iter().enumerate() {
            for &rk in &c.tset_ranks {
                by_tset[rk as usize].push(i as u32);
            }
        }
        let mut pb = PairBranch {
            cands,
            by_tset,
            state: vec![0; n_tsets],
            open_count: n_tsets,
            chosen: Vec::new(),
            best: incumbent.0,
            best_edges: incumbent.1,
            nodes: 0,
            node_limit: opts.node_limit,
            deadline,
            global_ub,
            crt,
        };
        let stop = pb.run();
        (pb.best, pb.best_edges, pb.nodes, stop)
    } else {
        let mut bb = BranchAndBound {
            k,
            s: params.config_bound(k, false),
            n,
            cands,
            cover: vec![0; n_tsets],
            chosen: Vec::new(),
            chosen_bits: Vec::new(),
            best: incumbent.0,
            best_edges: incumbent.1,
            nodes: 0,
            node_limit: opts.node_limit,
            deadline,
            global_ub,
            dead_prefix,
            n_tsets,
            crt,
            symmetry: opts.symmetry_pruning,
        };
        let stop = bb.run(0);
        (bb.best, bb.best_edges, bb.nodes, stop)
    };

    let complete = !matches!(stop, Stop::Limit);
    let witness = Hypergraph::build(r, n, &best_edges)?;
    debug_assert!(is_free(&witness, params, k, false));
    Ok(SolverResult {
        optimum: best,
        witness,
        nodes_explored: nodes,
        complete,
    })
}

/// Exhaustive k-freeness re-check of a solver witness.
pub fn verify_witness(f: &Hypergraph, params: &Params) -> bool {
    is_free(f, params, params.k(), false)
}

/// Slow reference implementation of `exact_f`: plain lexicographic
/// recursion, k-freeness re-tested by brute force over (k-1)-subsets of the
/// chosen edges, and only the trivial remaining-count bound. Kept
/// independent of the branch-and-bound path so the two can check each other.
pub fn naive_max_edges(params: &Params, n: usize) -> usize {
    let (r, k) = (params.r(), params.k());
    let s = params.config_bound(k, false);
    let all: Vec<usize> = (0..n).collect();
    let cands: Vec<VertexSet> = subsets(&all, r)
        .iter()
        .map(|e| VertexSet::from_slice(e))
        .collect();

    fn extendable(e: &VertexSet, chosen: &[VertexSet], k: usize, s: usize) -> bool {
        if chosen.len() < k - 1 {
            return true;
        }
        let mut ok = true;
        for_each_combination(chosen.len(), k - 1, |idx| {
            let mut u = *e;
            for &i in idx {
                u = u.union(&chosen[i]);
            }
            if u.len() <= s {
                ok = false;
                return false;
            }
            true
        });
        ok
    }

    fn rec(
        pos: usize,
        cands: &[VertexSet],
        chosen: &mut Vec<VertexSet>,
        best: &mut usize,
        k: usize,
        s: usize,
    ) {
        *best = (*best).max(chosen.len());
        for i in pos..cands.len() {
            if chosen.len() + (cands.len() - i) <= *best {
                return;
            }
            if extendable(&cands[i], chosen, k, s) {
                chosen.push(cands[i]);
                rec(i + 1, cands, chosen, best, k, s);
                chosen.pop();
            }
        }
    }

    let mut best = 0;
    rec(0, &cands, &mut Vec::new(), &mut best, k, s);
    best
}

/// Structural side conditions a greedy packing may be asked to maintain on
/// top of k-freeness.
#[derive(Clone, Debug, Default)]
pub struct PackConstraints {
    /// Stay ell-minus-free for each listed ell (each >= 2).
    pub ell_minus_free: Vec<usize>,
    /// Forbid sparse triples (3-minus-configurations) containing a
    /// 2-configuration.
    pub no_pair_in_sparse_triple: bool,
    /// For each `(a, b)`: keep every a-minus-configuration edge-disjoint
    /// from every b-configuration.
    pub disjoint_pairs: Vec<(usize, usize)>,
}

/// Walk sets of `need` pool indices whose union with `base` stays within
/// `s_max`; callback returns false to stop. Returns true when exhausted.
fn for_each_through(
    base: VertexSet,
    pool: &[VertexSet],
    start: usize,
    picked: &mut Vec<usize>,
    need: usize,
    s_max: usize,
    cb: &mut dyn FnMut(&[usize]) -> bool,
) -> bool {
    if base.len() > s_max {
        return true;
    }
    if need == 0 {
        return cb(picked);
    }
    for i in start..pool.len() {
        if pool.len() - i < need {
            break;
        }
        if base.union_len(&pool[i]) > s_max {
            continue;
        }
        picked.push(i);
        let go = for_each_through(
            base.union(&pool[i]),
            pool,
            i + 1,
            picked,
            need - 1,
            s_max,
            cb,
        );
        picked.pop();
        if !go {
            return false;
        }
    }
    true
}

fn violates_pack_constraints(
    params: &Params,
    e: VertexSet,
    chosen: &[VertexSet],
    c: &PackConstraints,
) -> bool {
    let k = params.k();
    if has_config_through(e, chosen, k - 1, params.config_bound(k, false)) {
        return true;
    }
    for &ell in &c.ell_minus_free {
        debug_assert!(ell >= 2);
        let s_max = params.config_bound(ell, true);
        if s_max >= params.r() && has_config_through(e, chosen, ell - 1, s_max) {
            return true;
        }
    }
    if c.no_pair_in_sparse_triple {
        let s3 = params.config_bound(3, true);
        let s2 = params.config_bound(2, false);
        if s3 >= params.r() {
            for i in 0..chosen.len() {
                let ei = e.union_len(&chosen[i]);
                for j in i + 1..chosen.len() {
                    let span3 = e.union(&chosen[i]).union_len(&chosen[j]);
                    if span3 > s3 {
                        continue;
                    }
                    let pair_inside = ei <= s2
                        || e.union_len(&chosen[j]) <= s2
                        || chosen[i].union_len(&chosen[j]) <= s2;
                    if pair_inside {
                        return true;
                    }
                }
            }
        }
    }
    for &(a, b) in &c.disjoint_pairs {
        if violates_disjointness(params, e, chosen, a, b) {
            return true;
        }
    }
    false
}

/// Would adding `e` create an a-minus-configuration sharing an edge with a
/// b-configuration? Any new violating pair must involve `e` in one side.
fn violates_disjointness(
    params: &Params,
    e: VertexSet,
    chosen: &[VertexSet],
    a: usize,
    b: usize,
) -> bool {
    let sa = params.config_bound(a, true);
    let sb = params.config_bound(b, false);
    let mut tentative: Vec<VertexSet> = chosen.to_vec();
    tentative.push(e);
    let e_idx = tentative.len() - 1;

    // configurations through e on one side, any config through a shared
    // edge on the other
    let mut found = false;
    if a >= 1 && sa >= params.r() {
        let mut picked = Vec::new();
        for_each_through(e, chosen, 0, &mut picked, a - 1, sa, &mut |rest| {
            // A = {e} as tentative index e_idx, plus `rest`
            let mut members: Vec<usize> = rest.to_vec();
            members.push(e_idx);
            for &f in &members {
                if config_exists_through(&tentative, f, b, sb, &members_excluding(&members, f)) {
                    found = true;
                    return false;
                }
            }
            true
        });
        if found {
            return true;
        }
    }
    if b >= 1 {
        let mut picked = Vec::new();
        for_each_through(e, chosen, 0, &mut picked, b - 1, sb, &mut |rest| {
            let mut members: Vec<usize> = rest.to_vec();
            members.push(e_idx);
            for &f in &members {
                if a >= 1
                    && sa >= params.r()
                    && config_exists_through(&tentative, f, a, sa, &members_excluding(&members, f))
                {
                    found = true;
                    return false;
                }
            }
            true
        });
    }
    found
}

fn members_excluding(members: &[usize], f: usize) -> Vec<usize> {
    members.iter().copied().filter(|&i| i != f).collect()
}

/// Is there an ell-edge configuration within `pool` containing `pool[f]`,
/// spanning at most `s_max`, using at least one edge outside `sharing`?
/// (`sharing` holds the indices of the other side, so the two sides are not
/// forced identical; any shared edge is precisely what we look for.)
fn config_exists_through(
    pool: &[VertexSet],
    f: usize,
    ell: usize,
    s_max: usize,
    _sharing: &[usize],
) -> bool {
    let others: Vec<VertexSet> = pool
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != f)
        .map(|(_, b)| *b)
        .collect();
    has_config_through(pool[f], &others, ell - 1, s_max)
}

/// Seeded greedy maximal packing: shuffle the candidate universe with
/// ChaCha8 keyed by `seed` (the generator identity is part of the
/// contract), then add edges greedily while all constraints hold. The
/// constraints are monotone, so a single pass is inclusion-maximal.
/// Deterministic given the seed.
pub fn greedy_pack(
    params: &Params,
    n: usize,
    seed: u64,
    constraints: &PackConstraints,
) -> Result<Hypergraph> {
    let r = params.r();
    if n < r {
        return Err(Error::BadArgs(format!("need n >= r, got n={n}, r={r}")));
    }
    if constraints.ell_minus_free.iter().any(|&ell| ell < 2) {
        return Err(Error::BadArgs("ell_minus_free entries must be >= 2".into()));
    }
    let all: Vec<usize> = (0..n).collect();
    let count = crate::hypergraph::binom_u128(n, r);
    if count > CANDIDATE_LIMIT {
        return Err(Error::BadArgs(format!(
            "C({n}, {r}) = {count} candidate edges exceed the desk-scale cap {CANDIDATE_LIMIT}"
        )));
    }
    let mut cands = subsets(&all, r);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    cands.shuffle(&mut rng);

    let mut chosen_bits: Vec<VertexSet> = Vec::new();
    let mut chosen: Vec<Vec<usize>> = Vec::new();
    for verts in cands {
        let bits = VertexSet::from_slice(&verts);
        if !violates_pack_constraints(params, bits, &chosen_bits, constraints) {
            chosen_bits.push(bits);
            chosen.push(verts);
        }
    }
    Hypergraph::build(r, n, &chosen)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::search::{enumerate_configurations, ConfigQuery, SearchBudget};

    #[test]
    fn tiny_oracle_agreement() {
        // (3,2,2): known packing numbers 1, 1, 2, 4 for n = 3..6
        let p = Params::new(3, 2, 2).unwrap();
        let expect = [1usize, 1, 2, 4];
        for (i, n) in (3..=6).enumerate() {
            let naive = naive_max_edges(&p, n);
            assert_eq!(naive, expect[i], "naive at n={n}");
            let res = exact_f(&p, n, &SolverOptions::default()).unwrap();
            assert!(res.complete);
            assert_eq!(res.optimum, naive, "solver at n={n}");
            assert_eq!(res.witness.len(), res.optimum);
            assert!(verify_witness(&res.witness, &p));
        }
    }

    #[test]
    fn trivial_one_edge() {
        let p = Params::new(3, 2, 2).unwrap();
        let res = exact_f(&p, 3, &SolverOptions::default()).unwrap();
        assert_eq!(res.optimum, 1);
        assert!(res.complete);
    }

    #[test]
    fn node_limit_reports_incomplete() {
        let p = Params::new(3, 2, 2).unwrap();
        let opts = SolverOptions {
            node_limit: 3,
            ..Default::default()
        };
        let res = exact_f(&p, 7, &opts).unwrap();
        assert!(!res.complete);
        assert!(res.optimum <= 7);
        assert!(verify_witness(&res.witness, &p));
    }

    #[test]
    fn incumbent_seed_must_be_free() {
        let p = Params::new(3, 2, 2).unwrap();
        let bad = Hypergraph::build(3, 6, &[vec![0, 1, 2], vec![0, 1, 3]]).unwrap();
        let opts = SolverOptions {
            incumbent_seed: Some(bad),
            ..Default::default()
        };
        assert!(exact_f(&p, 6, &opts).is_err());

        let good = Hypergraph::build(3, 6, &[vec![0, 1, 2], vec![3, 4, 5]]).unwrap();
        let opts = SolverOptions {
            incumbent_seed: Some(good),
            ..Default::default()
        };
        let res = exact_f(&p, 6, &opts).unwrap();
        assert_eq!(res.optimum, 4);
    }

    #[test]
    fn symmetry_pruning_preserves_optimum() {
        let p = Params::new(3, 2, 2).unwrap();
        for n in 5..=7 {
            let plain = exact_f(&p, n, &SolverOptions::default()).unwrap();
            let opts = SolverOptions {
                symmetry_pruning: true,
                ..Default::default()
            };
            let sym = exact_f(&p, n, &opts).unwrap();
            assert!(sym.complete);
            assert_eq!(plain.optimum, sym.optimum, "n={n}");
        }
    }

    #[test]
    fn pack_is_deterministic_and_free() {
        let p = Params::new(3, 2, 2).unwrap();
        let a = greedy_pack(&p, 9, 42, &PackConstraints::default()).unwrap();
        let b = greedy_pack(&p, 9, 42, &PackConstraints::default()).unwrap();
        assert_eq!(a, b);
        assert!(verify_witness(&a, &p));
        assert!(!a.is_empty());
    }

    #[test]
    fn pack_is_maximal() {
        let p = Params::new(3, 2, 2).unwrap();
        let f = greedy_pack(&p, 8, 7, &PackConstraints::default()).unwrap();
        // no candidate triple can be added without breaking 2-freeness
        let all: Vec<usize> = (0..8).collect();
        for e in subsets(&all, 3) {
            if f.edges().contains(&e) {
                continue;
            }
            let bits = VertexSet::from_slice(&e);
            let chosen: Vec<VertexSet> = f.bits().to_vec();
            assert!(
                has_config_through(bits, &chosen, 1, p.config_bound(2, false)),
                "addable edge {e:?} contradicts maximality"
            );
        }
    }

    #[test]
    fn pack_with_ell_minus_constraint() {
        let p = Params::new(4, 2, 3).unwrap();
        let c = PackConstraints {
            ell_minus_free: vec![2],
            ..Default::default()
        };
        let f = greedy_pack(&p, 10, 5, &c).unwrap();
        assert!(crate::search::is_free(&f, &p, 2, true));
        assert!(crate::search::is_free(&f, &p, 3, false));
    }

    #[test]
    fn pack_no_pair_in_sparse_triple() {
        let p = Params::new(4, 2, 4).unwrap();
        let c = PackConstraints {
            ell_minus_free: vec![2],
            no_pair_in_sparse_triple: true,
            ..Default::default()
        };
        let f = greedy_pack(&p, 11, 9, &c).unwrap();
        // re-check exhaustively: no sparse triple contains a pair
        let q = ConfigQuery::new(3, p.config_bound(3, true));
        for c3 in enumerate_configurations(&f, &q, &SearchBudget::default()).unwrap() {
            let pair = ConfigQuery::new(2, p.config_bound(2, false));
            for c2 in enumerate_configurations(&f, &pair, &SearchBudget::default()).unwrap() {
                let inside = c2
                    .edge_indices
                    .iter()
                    .all(|i| c3.edge_indices.contains(i));
                assert!(!inside, "pair {c2:?} inside sparse triple {c3:?}");
            }
        }
    }
}
