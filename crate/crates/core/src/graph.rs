//! Simple undirected graphs.
//!
//! A [`Graph`] keeps two views of the same adjacency: a row-major bit-matrix
//! (for codegrees and visited-set arithmetic) and sorted neighbor lists (for
//! iteration). Graphs are immutable once built; every "mutation" returns a new
//! graph.

use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::degseq::DegSeq;
use crate::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    words: usize,
    bits: Vec<u64>,
    adj: Vec<Vec<usize>>,
    edges: usize,
}

impl core::fmt::Debug for Graph {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

#[inline]
pub(crate) fn words_for(n: usize) -> usize {
    n.div_ceil(64).max(1)
}

impl Graph {
    /// Builds a graph from an edge list. Duplicate pairs (in either
    /// orientation) collapse to one edge.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let words = words_for(n);
        let mut bits = vec![0u64; n * words];
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            bits[u * words + v / 64] |= 1 << (v % 64);
            bits[v * words + u / 64] |= 1 << (u % 64);
        }
        Ok(Self::from_bits(n, bits))
    }

    /// `bits` must already be symmetric with an empty diagonal.
    pub(crate) fn from_bits(n: usize, bits: Vec<u64>) -> Self {
        let words = words_for(n);
        debug_assert_eq!(bits.len(), n * words);
        let mut adj = Vec::with_capacity(n);
        let mut degree_sum = 0;
        for v in 0..n {
            let row = &bits[v * words..(v + 1) * words];
            let nbrs: Vec<usize> = BitIter::new(row).collect();
            degree_sum += nbrs.len();
            adj.push(nbrs);
        }
        Graph {
            n,
            words,
            bits,
            adj,
            edges: degree_sum / 2,
        }
    }

    pub fn empty(n: usize) -> Self {
        Self::from_bits(n, vec![0; n * words_for(n)])
    }

    pub fn complete(n: usize) -> Self {
        Self::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).unwrap()
    }

    /// The cycle `0-1-…-(n-1)-0`; requires `n ≥ 3`.
    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidParameter(alloc::format!("cycle needs n >= 3, got {n}")));
        }
        Self::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))
    }

    /// The path `0-1-…-(n-1)`.
    pub fn path(n: usize) -> Self {
        Self::from_edges(n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    /// `K_{1,leaves}` with centre 0.
    pub fn star(leaves: usize) -> Self {
        Self::from_edges(leaves + 1, (1..=leaves).map(|i| (0, i))).unwrap()
    }

    /// `K_{a,b}` with parts `0..a` and `a..a+b`.
    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        Self::from_edges(a + b, (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v)))).unwrap()
    }

    /// Erdős–Rényi `G(n, p)`, deterministic per seed.
    pub fn gnp(n: usize, p: f64, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if rng.random_bool(p) {
                    edges.push((u, v));
                }
            }
        }
        Self::from_edges(n, edges).unwrap()
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edges
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    /// Number of `u64` words per bit-matrix row.
    #[inline]
    pub fn row_words(&self) -> usize {
        self.words
    }

    /// Bit-matrix row of `v`: bit `w` is set iff `vw` is an edge.
    #[inline]
    pub fn row(&self, v: usize) -> &[u64] {
        &self.bits[v * self.words..(v + 1) * self.words]
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.bits[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(Vec::len).collect()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, nbrs)| nbrs.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// `|N(u) ∩ N(v)|`, by word-wise intersection of the bit rows.
    pub fn codegree(&self, u: usize, v: usize) -> Result<usize> {
        for w in [u, v] {
            if w >= self.n {
                return Err(Error::VertexOutOfRange { vertex: w, n: self.n });
            }
        }
        if u == v {
            return Err(Error::SameVertex(u));
        }
        Ok(self.codegree_unchecked(u, v))
    }

    #[inline]
    pub(crate) fn codegree_unchecked(&self, u: usize, v: usize) -> usize {
        self.row(u)
            .iter()
            .zip(self.row(v))
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    /// Degrees sorted non-increasingly.
    pub fn degree_sequence(&self) -> DegSeq {
        let mut d: Vec<u32> = self.adj.iter().map(|a| a.len() as u32).collect();
        d.sort_unstable_by(|a, b| b.cmp(a));
        DegSeq::new(d).expect("sorted by construction")
    }

    /// Renames vertex `v` to `perm[v]`. `perm` must be a permutation of `0..n`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n, "permutation length mismatch");
        let words = self.words;
        let mut bits = vec![0u64; self.n * words];
        for (u, v) in self.edges() {
            let (a, b) = (perm[u], perm[v]);
            bits[a * words + b / 64] |= 1 << (b % 64);
            bits[b * words + a / 64] |= 1 << (a % 64);
        }
        Self::from_bits(self.n, bits)
    }

    /// A copy with the edge `uv` added (a no-op if it is already present).
    pub fn with_edge(&self, u: usize, v: usize) -> Result<Graph> {
        Self::from_edges(self.n, self.edges().chain(core::iter::once((u, v))))
    }

    /// A copy with the edge `uv` removed.
    pub fn without_edge(&self, u: usize, v: usize) -> Result<Graph> {
        if !self.has_edge(u, v) {
            return Err(Error::MissingEdge(u, v));
        }
        let (a, b) = (u.min(v), u.max(v));
        Self::from_edges(self.n, self.edges().filter(|&e| e != (a, b)))
    }
}

/// Iterates the set bits of a word slice in increasing order.
pub(crate) struct BitIter<'a> {
    words: &'a [u64],
    idx: usize,
    cur: u64,
}

impl<'a> BitIter<'a> {
    pub(crate) fn new(words: &'a [u64]) -> Self {
        BitIter {
            words,
            idx: 0,
            cur: words.first().copied().unwrap_or(0),
        }
    }
}

impl Iterator for BitIter<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.cur != 0 {
                let b = self.cur.trailing_zeros() as usize;
                self.cur &= self.cur - 1;
                return Some(self.idx * 64 + b);
            }
            self.idx += 1;
            if self.idx >= self.words.len() {
                return None;
            }
            self.cur = self.words[self.idx];
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle() {
        let g = Graph::from_edges(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(g.edge_count(), 3);
        assert_eq!(g.degrees(), [2, 2, 2]);
    }

    #[test]
    fn empty_graph_has_zero_degrees() {
        let g = Graph::from_edges(4, []).unwrap();
        assert_eq!(g.edge_count(), 0);
        assert!(g.degrees().iter().all(|&d| d == 0));
    }

    #[test]
    fn duplicate_edges_collapse() {
        let g = Graph::from_edges(4, [(0, 1), (0, 1), (1, 0)]).unwrap();
        assert_eq!(g.edge_count(), 1);
        assert_eq!(g.edges().collect::<Vec<_>>(), [(0, 1)]);
    }

    #[test]
    fn rejects_bad_edges() {
        assert_eq!(
            Graph::from_edges(3, [(0, 3)]),
            Err(Error::VertexOutOfRange { vertex: 3, n: 3 })
        );
        assert_eq!(Graph::from_edges(3, [(1, 1)]), Err(Error::SelfLoop(1)));
    }

    #[test]
    fn codegree_examples() {
        let k4 = Graph::complete(4);
        for u in 0..4 {
            for v in 0..4 {
                if u != v {
                    assert_eq!(k4.codegree(u, v), Ok(2));
                }
            }
        }
        let c4 = Graph::cycle(4).unwrap();
        assert_eq!(c4.codegree(0, 2), Ok(2));
        assert_eq!(c4.codegree(0, 1), Ok(0));
        assert_eq!(c4.codegree(1, 1), Err(Error::SameVertex(1)));
    }

    #[test]
    fn codegree_across_word_boundary() {
        // vertex 0 and 1 share neighbors 63, 64 and 100
        let g = Graph::from_edges(128, [(0, 63), (1, 63), (0, 64), (1, 64), (0, 100), (1, 100), (0, 5)]).unwrap();
        assert_eq!(g.codegree(0, 1), Ok(3));
        assert_eq!(g.neighbors(0), [5, 63, 64, 100]);
    }

    #[test]
    fn degree_sequences() {
        assert_eq!(Graph::complete(4).degree_sequence().as_slice(), [3, 3, 3, 3]);
        assert_eq!(Graph::star(3).degree_sequence().as_slice(), [3, 1, 1, 1]);
    }

    #[test]
    fn relabel_preserves_edge_count_and_degrees() {
        let g = Graph::gnp(12, 0.4, 7);
        let perm: Vec<usize> = (0..12).rev().collect();
        let h = g.relabel(&perm);
        assert_eq!(g.edge_count(), h.edge_count());
        assert_eq!(g.degree_sequence(), h.degree_sequence());
        for (u, v) in g.edges() {
            assert!(h.has_edge(11 - u, 11 - v));
        }
    }

    #[test]
    fn edge_count_is_half_degree_sum() {
        for seed in 0..20 {
            let g = Graph::gnp(15, 0.3, seed);
            assert_eq!(2 * g.edge_count(), g.degrees().iter().sum::<usize>());
        }
    }
}
