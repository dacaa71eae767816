//! Canonical r-uniform hypergraphs over dense vertex ids `0..n`, plus the
//! elementary set computations everything else builds on: spans, t-shadows,
//! cover profiles and t-tight components.
//!
//! Edges are kept twice: as strictly increasing vertex lists (the canonical
//! form, sorted lexicographically) and as bitsets, so that span queries are
//! popcounts of ORs.

use std::collections::BTreeMap;
use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::bitset::{VertexSet, MAX_VERTICES};
use crate::combi::for_each_subset;
use crate::error::{Error, Result};

/// Default cap on the vertex count, matching the bitset width.
pub const DEFAULT_VERTEX_CAP: usize = MAX_VERTICES;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hypergraph {
    r: usize,
    n: usize,
    edges: Vec<Vec<usize>>,
    bits: Vec<VertexSet>,
}

impl Hypergraph {
    /// Canonicalize and validate a raw edge list. Each raw edge must be a
    /// set of exactly `r` distinct vertices below `n`; duplicates (as sets)
    /// are rejected.
    pub fn build(r: usize, n: usize, raw_edges: &[Vec<usize>]) -> Result<Hypergraph> {
        if r < 2 {
            return Err(Error::BadArgs(format!("uniformity r must be >= 2, got {r}")));
        }
        if n < r {
            return Err(Error::BadArgs(format!("need n >= r, got n={n}, r={r}")));
        }
        if n > DEFAULT_VERTEX_CAP {
            return Err(Error::TooManyVertices {
                n,
                cap: DEFAULT_VERTEX_CAP,
            });
        }
        let mut edges = Vec::with_capacity(raw_edges.len());
        for raw in raw_edges {
            let mut e = raw.clone();
            e.sort_unstable();
            e.dedup();
            if e.len() != r || raw.len() != r {
                return Err(Error::NonUniformEdge {
                    edge: raw.clone(),
                    expected: r,
                    got: e.len(),
                });
            }
            if let Some(&v) = e.last() {
                if v >= n {
                    return Err(Error::VertexOutOfRange { vertex: v, n });
                }
            }
            edges.push(e);
        }
        edges.sort_unstable();
        for w in edges.windows(2) {
            if w[0] == w[1] {
                return Err(Error::DuplicateEdge { edge: w[0].clone() });
            }
        }
        let bits = edges.iter().map(|e| VertexSet::from_slice(e)).collect();
        Ok(Hypergraph { r, n, edges, bits })
    }

    pub fn empty(r: usize, n: usize) -> Result<Hypergraph> {
        Hypergraph::build(r, n, &[])
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of edges.
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    pub fn edge(&self, i: usize) -> Result<&[usize]> {
        self.edges
            .get(i)
            .map(|e| e.as_slice())
            .ok_or(Error::IndexOutOfRange {
                index: i,
                len: self.edges.len(),
            })
    }

    pub fn edge_bits(&self, i: usize) -> Result<&VertexSet> {
        self.bits.get(i).ok_or(Error::IndexOutOfRange {
            index: i,
            len: self.edges.len(),
        })
    }

    pub(crate) fn bits(&self) -> &[VertexSet] {
        &self.bits
    }

    /// Size of the union of the indexed edges.
    pub fn span(&self, idxs: &[usize]) -> Result<usize> {
        let mut u = VertexSet::EMPTY;
        for &i in idxs {
            u = u.union(self.edge_bits(i)?);
        }
        Ok(u.len())
    }

    pub(crate) fn union_of(&self, idxs: &[usize]) -> VertexSet {
        let mut u = VertexSet::EMPTY;
        for &i in idxs {
            u = u.union(&self.bits[i]);
        }
        u
    }

    /// The subhypergraph obtained by deleting the given edge indices.
    pub fn remove_edges(&self, idxs: &[usize]) -> Hypergraph {
        let drop: BTreeSet<usize> = idxs.iter().copied().collect();
        let edges: Vec<Vec<usize>> = self
            .edges
            .iter()
            .enumerate()
            .filter(|(i, _)| !drop.contains(i))
            .map(|(_, e)| e.clone())
            .collect();
        // edges stay sorted, distinct and in range
        let bits = edges.iter().map(|e| VertexSet::from_slice(e)).collect();
        Hypergraph {
            r: self.r,
            n: self.n,
            edges,
            bits,
        }
    }

    /// Edge multiset inclusion (both canonical, so a merge walk suffices).
    pub fn is_subgraph_of(&self, other: &Hypergraph) -> bool {
        if self.r != other.r {
            return false;
        }
        let mut it = other.edges.iter();
        'outer: for e in &self.edges {
            for f in it.by_ref() {
                if f == e {
                    continue 'outer;
                }
            }
            return false;
        }
        true
    }

    /// All t-subsets of edges.
    pub fn t_shadow(&self, t: usize) -> Result<TGraph> {
        if t < 1 || t > self.r {
            return Err(Error::BadT { t, r: self.r });
        }
        let mut members = BTreeSet::new();
        for e in &self.edges {
            for_each_subset(e, t, |s| {
                members.insert(s.to_vec());
                true
            });
        }
        Ok(TGraph { t, members })
    }

    /// Cover multiplicities of t-sets: `counts[T]` is the number of edges
    /// containing `T`. With `include_zero`, `|J_0|` over all of `0..n` is
    /// reported as well (enumerated only at desk scale, otherwise computed
    /// as `C(n,t) - |J_{>=1}|`).
    pub fn cover_profile(&self, t: usize, include_zero: bool) -> Result<CoverProfile> {
        if t < 1 || t > self.r {
            return Err(Error::BadT { t, r: self.r });
        }
        let mut counts: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
        for e in &self.edges {
            for_each_subset(e, t, |s| {
                *counts.entry(s.to_vec()).or_insert(0) += 1;
                true
            });
        }
        let mut histogram: BTreeMap<usize, u128> = BTreeMap::new();
        for &c in counts.values() {
            *histogram.entry(c).or_insert(0) += 1;
        }
        if include_zero {
            let covered = counts.len() as u128;
            let total = binom_u128(self.n, t);
            let zero = total - covered;
            if t <= 4 && self.n <= 64 {
                // enumerate to cross-check the subtraction at desk scale
                let all: Vec<usize> = (0..self.n).collect();
                let mut enumerated = 0u128;
                for_each_subset(&all, t, |s| {
                    if !counts.contains_key(s) {
                        enumerated += 1;
                    }
                    true
                });
                debug_assert_eq!(enumerated, zero);
            }
            histogram.insert(0, zero);
        }
        Ok(CoverProfile {
            t,
            n: self.n,
            counts,
            histogram,
            includes_zero: include_zero,
        })
    }

    /// Partition of the edge indices into t-tight components: the connected
    /// components of the edge intersection graph with threshold `t`.
    /// Edges in different blocks share at most `t-1` vertices.
    pub fn t_tight_components(&self, t: usize) -> Result<Vec<Vec<usize>>> {
        if t < 1 || t > self.r {
            return Err(Error::BadT { t, r: self.r });
        }
        let m = self.edges.len();
        let mut seen = vec![false; m];
        let mut blocks = Vec::new();
        for start in 0..m {
            if seen[start] {
                continue;
            }
            let mut block = vec![start];
            seen[start] = true;
            let mut frontier = vec![start];
            while let Some(i) = frontier.pop() {
                for j in 0..m {
                    if !seen[j] && self.bits[i].intersection_len(&self.bits[j]) >= t {
                        seen[j] = true;
                        block.push(j);
                        frontier.push(j);
                    }
                }
            }
            block.sort_unstable();
            blocks.push(block);
        }
        Ok(blocks)
    }

    /// Shared text format: `r n m` header, one strictly increasing edge per
    /// line, `#` comments allowed. Serialization is canonical with LF
    /// endings.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{} {} {}", self.r, self.n, self.edges.len());
        for e in &self.edges {
            let line: Vec<String> = e.iter().map(|v| v.to_string()).collect();
            let _ = writeln!(s, "{}", line.join(" "));
        }
        s
    }

    pub fn parse(text: &str) -> Result<Hypergraph> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (line_no, header) = lines.next().ok_or(Error::Parse {
            line: 0,
            msg: "empty input".into(),
        })?;
        let head: Vec<usize> = header
            .split_whitespace()
            .map(|w| {
                w.parse::<usize>().map_err(|_| Error::Parse {
                    line: line_no,
                    msg: format!("bad integer {w:?}"),
                })
            })
            .collect::<Result<_>>()?;
        if head.len() != 3 {
            return Err(Error::Parse {
                line: line_no,
                msg: "header must be `r n m`".into(),
            });
        }
        let (r, n, m) = (head[0], head[1], head[2]);
        let mut raw = Vec::with_capacity(m);
        for _ in 0..m {
            let (line_no, line) = lines.next().ok_or(Error::Parse {
                line: 0,
                msg: format!("expected {m} edge lines"),
            })?;
            let edge: Vec<usize> = line
                .split_whitespace()
                .map(|w| {
                    w.parse::<usize>().map_err(|_| Error::Parse {
                        line: line_no,
                        msg: format!("bad integer {w:?}"),
                    })
                })
                .collect::<Result<_>>()?;
            if edge.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::Parse {
                    line: line_no,
                    msg: "edge vertices must be strictly increasing".into(),
                });
            }
            raw.push(edge);
        }
        if let Some((line_no, _)) = lines.next() {
            return Err(Error::Parse {
                line: line_no,
                msg: "trailing content after edge list".into(),
            });
        }
        Hypergraph::build(r, n, &raw)
    }
}

/// A set of t-element vertex subsets (shadows and supporting graphs).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TGraph {
    t: usize,
    members: BTreeSet<Vec<usize>>,
}

impl TGraph {
    pub fn new(t: usize) -> TGraph {
        TGraph {
            t,
            members: BTreeSet::new(),
        }
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Insert a t-set; must be strictly increasing with exactly t vertices.
    pub fn insert(&mut self, member: Vec<usize>) -> Result<()> {
        if member.len() != self.t || member.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::BadArgs(format!(
                "{member:?} is not a strictly increasing {}-set",
                self.t
            )));
        }
        self.members.insert(member);
        Ok(())
    }

    pub fn contains(&self, member: &[usize]) -> bool {
        self.members.contains(member)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Vec<usize>> {
        self.members.iter()
    }

    pub fn is_superset_of(&self, other: &TGraph) -> bool {
        self.t == other.t && other.members.iter().all(|m| self.members.contains(m))
    }

    pub fn union_with(&mut self, other: &TGraph) {
        debug_assert_eq!(self.t, other.t);
        for m in &other.members {
            self.members.insert(m.clone());
        }
    }
}

/// Cover multiplicities and the `|J_i|` histogram of a hypergraph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverProfile {
    t: usize,
    n: usize,
    counts: BTreeMap<Vec<usize>, usize>,
    histogram: BTreeMap<usize, u128>,
    includes_zero: bool,
}

impl CoverProfile {
    pub fn t(&self) -> usize {
        self.t
    }

    /// Multiplicity of a t-set (0 when absent).
    pub fn count_of(&self, tset: &[usize]) -> usize {
        self.counts.get(tset).copied().unwrap_or(0)
    }

    pub fn counts(&self) -> &BTreeMap<Vec<usize>, usize> {
        &self.counts
    }

    /// `|J_i|`: the number of t-sets covered exactly `i` times. `i = 0`
    /// is populated only when the profile was built with `include_zero`.
    pub fn class_size(&self, i: usize) -> u128 {
        self.histogram.get(&i).copied().unwrap_or(0)
    }

    pub fn histogram(&self) -> &BTreeMap<usize, u128> {
        &self.histogram
    }

    /// `|J_{>=i}|` for `i >= 1`.
    pub fn at_least(&self, i: usize) -> u128 {
        assert!(i >= 1, "at_least is only meaningful for i >= 1");
        self.histogram
            .iter()
            .filter(|(&j, _)| j >= i)
            .map(|(_, &c)| c)
            .sum()
    }

    /// The weighted sum `sum_i i * |J_i|`, which always equals
    /// `|F| * C(r, t)`.
    pub fn weighted_total(&self) -> u128 {
        self.histogram
            .iter()
            .map(|(&i, &c)| i as u128 * c)
            .sum()
    }
}

/// Exact binomial coefficient, saturating panics avoided by u128 width;
/// desk-scale arguments only (n <= 512, small t).
pub(crate) fn binom_u128(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn build_canonicalizes() {
        let h = Hypergraph::build(3, 4, &[vec![1, 2, 3], vec![2, 3, 0]]).unwrap();
        assert_eq!(h.edges(), &[vec![0, 2, 3], vec![1, 2, 3]]);
    }

    #[test]
    fn build_rejects_duplicates() {
        let err = Hypergraph::build(3, 4, &[vec![1, 2, 3], vec![3, 2, 1]]).unwrap_err();
        assert_eq!(
            err,
            Error::DuplicateEdge {
                edge: vec![1, 2, 3]
            }
        );
    }

    #[test]
    fn build_rejects_out_of_range() {
        let err = Hypergraph::build(3, 3, &[vec![0, 1, 3]]).unwrap_err();
        assert_eq!(err, Error::VertexOutOfRange { vertex: 3, n: 3 });
    }

    #[test]
    fn build_rejects_non_uniform() {
        assert!(matches!(
            Hypergraph::build(3, 5, &[vec![0, 1, 1]]),
            Err(Error::NonUniformEdge { .. })
        ));
        assert!(matches!(
            Hypergraph::build(3, 5, &[vec![0, 1]]),
            Err(Error::NonUniformEdge { .. })
        ));
    }

    #[test]
    fn span_examples() {
        let h = Hypergraph::build(3, 4, &[vec![0, 1, 2], vec![1, 2, 3]]).unwrap();
        assert_eq!(h.span(&[0, 1]).unwrap(), 4);
        assert_eq!(h.span(&[0]).unwrap(), 3);
        let g = Hypergraph::build(3, 6, &[vec![0, 1, 2], vec![3, 4, 5]]).unwrap();
        assert_eq!(g.span(&[0, 1]).unwrap(), 6);
        assert!(matches!(
            g.span(&[2]),
            Err(Error::IndexOutOfRange { index: 2, len: 2 })
        ));
    }

    #[test]
    fn shadow_examples() {
        let h = Hypergraph::build(3, 3, &[vec![0, 1, 2]]).unwrap();
        let s2 = h.t_shadow(2).unwrap();
        assert_eq!(s2.len(), 3);
        assert!(s2.contains(&[0, 1]) && s2.contains(&[0, 2]) && s2.contains(&[1, 2]));
        let s3 = h.t_shadow(3).unwrap();
        assert_eq!(s3.len(), 1);

        let g = Hypergraph::build(3, 4, &[vec![0, 1, 2], vec![1, 2, 3]]).unwrap();
        let sh = g.t_shadow(2).unwrap();
        assert_eq!(sh.len(), 5);
        assert!(!sh.contains(&[0, 3]));

        assert!(matches!(h.t_shadow(4), Err(Error::BadT { .. })));
    }

    #[test]
    fn cover_profile_examples() {
        let h = Hypergraph::build(3, 4, &[vec![0, 1, 2], vec![0, 1, 3]]).unwrap();
        let p = h.cover_profile(2, true).unwrap();
        assert_eq!(p.count_of(&[0, 1]), 2);
        assert_eq!(p.count_of(&[0, 2]), 1);
        assert_eq!(p.class_size(0), 1); // C(4,2) - 5
        assert_eq!(p.class_size(1), 4);
        assert_eq!(p.class_size(2), 1);

        let e = Hypergraph::build(3, 5, &[]).unwrap();
        assert_eq!(e.cover_profile(2, true).unwrap().class_size(0), 10);

        let one = Hypergraph::build(3, 3, &[vec![0, 1, 2]]).unwrap();
        let q = one.cover_profile(2, false).unwrap();
        assert_eq!(q.weighted_total(), 3); // |F| * C(3,2)
    }

    #[test]
    fn components_examples() {
        let h =
            Hypergraph::build(3, 7, &[vec![0, 1, 2], vec![1, 2, 3], vec![4, 5, 6]]).unwrap();
        assert_eq!(h.t_tight_components(2).unwrap(), vec![vec![0, 1], vec![2]]);

        let g = Hypergraph::build(3, 5, &[vec![0, 1, 2], vec![2, 3, 4]]).unwrap();
        assert_eq!(g.t_tight_components(2).unwrap(), vec![vec![0], vec![1]]);

        let c =
            Hypergraph::build(3, 5, &[vec![0, 1, 2], vec![1, 2, 3], vec![2, 3, 4]]).unwrap();
        assert_eq!(c.t_tight_components(2).unwrap(), vec![vec![0, 1, 2]]);
    }

    #[test]
    fn text_round_trip() {
        let h = Hypergraph::build(3, 5, &[vec![0, 1, 4], vec![1, 2, 3]]).unwrap();
        let text = h.to_text();
        assert_eq!(text, "3 5 2\n0 1 4\n1 2 3\n");
        assert_eq!(Hypergraph::parse(&text).unwrap(), h);
        let commented = "# a comment\n3 5 2\n0 1 4\n# inline\n1 2 3\n";
        assert_eq!(Hypergraph::parse(commented).unwrap(), h);
    }

    #[test]
    fn parse_rejects_malformed() {
        assert!(Hypergraph::parse("").is_err());
        assert!(Hypergraph::parse("3 5\n").is_err());
        assert!(Hypergraph::parse("3 5 1\n2 1 0\n").is_err());
        assert!(Hypergraph::parse("3 5 1\n0 1 2\n0 1 3\n").is_err());
    }

    #[test]
    fn binom_small() {
        assert_eq!(binom_u128(6, 2), 15);
        assert_eq!(binom_u128(10, 2), 45);
        assert_eq!(binom_u128(26, 2), 325);
        assert_eq!(binom_u128(5, 0), 1);
        assert_eq!(binom_u128(4, 5), 0);
    }
}
