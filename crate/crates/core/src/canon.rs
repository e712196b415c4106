//! Canonical labelling of small graphs.
//!
//! Equitable colour refinement followed by individualisation/backtracking.
//! Every leaf of the search tree is a vertex ordering; its certificate is the
//! upper triangle of the reordered adjacency matrix packed into a `u128`, and
//! the canonical form is the largest certificate reached. Two leaves with the
//! same certificate yield an automorphism, which is used to skip branches in
//! the same orbit.

use alloc::vec;
use alloc::vec::Vec;

use crate::graph::{words_for, Graph};
use crate::{Error, Result};

/// Largest vertex count accepted by [`canonical_form`] (`16·15/2 = 120` bits).
pub const CANON_LIMIT: usize = 16;

/// Isomorphism-invariant key. Ordered first by `n`, then by the adjacency
/// bitstring taken column by column (`(0,1), (0,2), (1,2), (0,3), …`) with the
/// first pair in the most significant position, which is also the graph6 bit
/// order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm {
    n: u8,
    bits: u128,
}

impl CanonicalForm {
    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn bits(&self) -> u128 {
        self.bits
    }

    /// Big-endian byte key: the vertex count followed by the 16 certificate bytes.
    pub fn to_bytes(&self) -> [u8; 17] {
        let mut out = [0u8; 17];
        out[0] = self.n;
        out[1..].copy_from_slice(&self.bits.to_be_bytes());
        out
    }

    /// The canonically labelled representative.
    pub fn to_graph(&self) -> Graph {
        let n = self.n();
        let total = n * n.saturating_sub(1) / 2;
        let mut edges = Vec::new();
        let mut idx = 0;
        for j in 1..n {
            for i in 0..j {
                if self.bits >> (total - 1 - idx) & 1 == 1 {
                    edges.push((i, j));
                }
                idx += 1;
            }
        }
        Graph::from_edges(n, edges).expect("certificate encodes a simple graph")
    }
}

/// Canonical form of `g`; fails above [`CANON_LIMIT`] vertices.
pub fn canonical_form(g: &Graph) -> Result<CanonicalForm> {
    canonical_labeling(g).map(|(form, _)| form)
}

/// Canonical form plus a labelling `perm` with `g.relabel(&perm)` equal to
/// `form.to_graph()`.
pub fn canonical_labeling(g: &Graph) -> Result<(CanonicalForm, Vec<usize>)> {
    let n = g.n();
    if n > CANON_LIMIT {
        return Err(Error::TooLarge {
            what: "canonical form",
            n,
            limit: CANON_LIMIT,
        });
    }
    debug_assert_eq!(words_for(n), 1);
    let rows: Vec<u32> = (0..n).map(|v| g.row(v)[0] as u32).collect();
    let mut search = Search {
        n,
        rows,
        first: None,
        best: None,
        generators: Vec::new(),
    };
    let cells = vec![(0..n).collect::<Vec<_>>()];
    if n > 0 {
        search.descend(cells, &mut Vec::new());
    } else {
        search.best = Some((0, Vec::new()));
    }
    let (bits, order) = search.best.expect("search visits at least one leaf");
    let mut perm = vec![0; n];
    for (pos, &v) in order.iter().enumerate() {
        perm[v] = pos;
    }
    Ok((CanonicalForm { n: n as u8, bits }, perm))
}

struct Search {
    n: usize,
    rows: Vec<u32>,
    first: Option<(u128, Vec<usize>)>,
    best: Option<(u128, Vec<usize>)>,
    generators: Vec<Vec<usize>>,
}

impl Search {
    fn descend(&mut self, mut cells: Vec<Vec<usize>>, fixed: &mut Vec<usize>) {
        refine(&self.rows, &mut cells);
        let Some(target) = cells.iter().position(|c| c.len() > 1) else {
            let order: Vec<usize> = cells.into_iter().map(|c| c[0]).collect();
            self.leaf(order);
            return;
        };
        let cell = cells[target].clone();
        let mut explored: Vec<usize> = Vec::new();
        for &v in &cell {
            if !explored.is_empty() && self.in_explored_orbit(v, &explored, fixed) {
                continue;
            }
            explored.push(v);
            let mut child = Vec::with_capacity(cells.len() + 1);
            child.extend_from_slice(&cells[..target]);
            child.push(vec![v]);
            child.push(cell.iter().copied().filter(|&w| w != v).collect());
            child.extend_from_slice(&cells[target + 1..]);
            fixed.push(v);
            self.descend(child, fixed);
            fixed.pop();
        }
    }

    fn leaf(&mut self, order: Vec<usize>) {
        let cert = certificate(&self.rows, &order);
        let Some((first_cert, first_order)) = &self.first else {
            self.first = Some((cert, order.clone()));
            self.best = Some((cert, order));
            return;
        };
        let (best_cert, best_order) = self.best.as_ref().unwrap();
        let target = if cert == *first_cert {
            Some(first_order)
        } else if cert == *best_cert {
            Some(best_order)
        } else {
            None
        };
        if let Some(target) = target {
            let mut gamma = vec![0; self.n];
            for (pos, &v) in order.iter().enumerate() {
                gamma[v] = target[pos];
            }
            if gamma.iter().enumerate().any(|(i, &j)| i != j) {
                self.generators.push(gamma);
            }
        } else if cert > *best_cert {
            self.best = Some((cert, order));
        }
    }

    /// Whether `v` shares an orbit with an explored sibling under the known
    /// automorphisms that fix every individualised vertex.
    fn in_explored_orbit(&self, v: usize, explored: &[usize], fixed: &[usize]) -> bool {
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut any = false;
        for gamma in &self.generators {
            if fixed.iter().any(|&f| gamma[f] != f) {
                continue;
            }
            any = true;
            for (x, &y) in gamma.iter().enumerate() {
                let (a, b) = (find(&mut parent, x), find(&mut parent, y));
                if a != b {
                    parent[a] = b;
                }
            }
        }
        if !any {
            return false;
        }
        let root = find(&mut parent, v);
        explored.iter().any(|&u| find(&mut parent, u) == root)
    }
}

fn certificate(rows: &[u32], order: &[usize]) -> u128 {
    let mut cert = 0u128;
    for j in 1..order.len() {
        let row = rows[order[j]];
        for &vi in &order[..j] {
            cert = cert << 1 | (row >> vi & 1) as u128;
        }
    }
    cert
}

/// Splits cells until every vertex in a cell has the same number of
/// neighbours in every cell. Sub-cells are ordered by that count, so the
/// result depends only on the graph and the incoming ordered partition.
fn refine(rows: &[u32], cells: &mut Vec<Vec<usize>>) {
    loop {
        let mut changed = false;
        let mut s = 0;
        while s < cells.len() {
            let mask = cells[s].iter().fold(0u32, |m, &v| m | 1 << v);
            let mut next = Vec::with_capacity(cells.len());
            for cell in cells.iter() {
                if cell.len() == 1 {
                    next.push(cell.clone());
                    continue;
                }
                let mut keyed: Vec<(u32, usize)> =
                    cell.iter().map(|&v| ((rows[v] & mask).count_ones(), v)).collect();
                keyed.sort_unstable();
                if keyed[0].0 != keyed[keyed.len() - 1].0 {
                    changed = true;
                }
                let mut start = 0;
                for i in 1..=keyed.len() {
                    if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                        next.push(keyed[start..i].iter().map(|&(_, v)| v).collect());
                        start = i;
                    }
                }
            }
            *cells = next;
            s += 1;
        }
        if !changed {
            break;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn c4_relabelings_agree() {
        let c4 = Graph::cycle(4).unwrap();
        let base = canonical_form(&c4).unwrap();
        for perm in [[1, 2, 3, 0], [0, 2, 1, 3], [3, 1, 0, 2]] {
            assert_eq!(canonical_form(&c4.relabel(&perm)).unwrap(), base);
        }
    }

    #[test]
    fn path_and_star_differ() {
        let p = Graph::path(4);
        let s = Graph::star(3);
        assert_ne!(canonical_form(&p).unwrap(), canonical_form(&s).unwrap());
    }

    #[test]
    fn labeling_reproduces_canonical_graph() {
        for seed in 0..30 {
            let g = Graph::gnp(10, 0.45, seed);
            let (form, perm) = canonical_labeling(&g).unwrap();
            assert_eq!(g.relabel(&perm), form.to_graph());
            assert_eq!(canonical_form(&form.to_graph()).unwrap(), form);
        }
    }

    #[test]
    fn symmetric_graphs_finish() {
        for n in [0, 1, 2, 16] {
            let e = canonical_form(&Graph::empty(n)).unwrap();
            let k = canonical_form(&Graph::complete(n)).unwrap();
            assert_eq!(e.bits(), 0);
            assert_eq!(k.bits().count_ones() as usize, n * n.saturating_sub(1) / 2);
        }
        let k88 = Graph::complete_bipartite(8, 8);
        assert_eq!(canonical_form(&k88).unwrap().to_graph().edge_count(), 64);
    }

    #[test]
    fn rejects_large_graphs() {
        assert!(matches!(
            canonical_form(&Graph::empty(17)),
            Err(Error::TooLarge { n: 17, .. })
        ));
    }
}
