//! Exact path counting and the P₄ bound chain
//! `P₄(G) ≤ ½ Σ_{u≠v} d(u)d(v)d(u,v) ≤ ½ Σ_{u≠v} d(u)d(v)min(d(u),d(v))`.

use alloc::vec;

use crate::graph::Graph;

/// Number of paths with `k` edges (`k + 1` distinct vertices) in `g`, each
/// counted once regardless of direction.
///
/// Ordered paths are enumerated by depth-first extension from every start
/// vertex and the total is halved. With `k = 0` this is `n`.
pub fn count_paths(g: &Graph, k: usize) -> u64 {
    let n = g.n();
    if k == 0 {
        return n as u64;
    }
    if k >= n {
        return 0;
    }
    sum_over_starts(n, |s| ordered_from(g, s, k)) / 2
}

#[cfg(feature = "parallel")]
fn sum_over_starts(n: usize, f: impl Fn(usize) -> u64 + Sync + Send) -> u64 {
    use rayon::prelude::*;
    (0..n).into_par_iter().map(f).sum()
}

#[cfg(not(feature = "parallel"))]
fn sum_over_starts(n: usize, f: impl Fn(usize) -> u64) -> u64 {
    (0..n).map(f).sum()
}

/// Ordered paths with `k ≥ 1` edges starting at `start`.
pub fn ordered_from(g: &Graph, start: usize, k: usize) -> u64 {
    let mut visited = vec![0u64; g.row_words()];
    visited[start / 64] |= 1 << (start % 64);
    extend(g, start, k, &mut visited)
}

fn extend(g: &Graph, v: usize, remaining: usize, visited: &mut [u64]) -> u64 {
    let row = g.row(v);
    if remaining == 1 {
        let blocked: u32 = row.iter().zip(visited.iter()).map(|(a, b)| (a & b).count_ones()).sum();
        return (g.degree(v) - blocked as usize) as u64;
    }
    let mut total = 0;
    for &w in g.neighbors(v) {
        let (word, bit) = (w / 64, 1u64 << (w % 64));
        if visited[word] & bit != 0 {
            continue;
        }
        visited[word] |= bit;
        total += extend(g, w, remaining - 1, visited);
        visited[word] &= !bit;
    }
    total
}

/// `½ Σ_{u≠v} d(u)·d(v)·d(u,v)`, with `d(u,v)` the codegree.
pub fn p4_codegree_bound(g: &Graph) -> u128 {
    let deg = g.degrees();
    let mut total = 0u128;
    for u in 0..g.n() {
        for v in u + 1..g.n() {
            let c = g.codegree_unchecked(u, v);
            total += (deg[u] * deg[v]) as u128 * c as u128;
        }
    }
    total
}

/// `½ Σ_{u≠v} d(u)·d(v)·min(d(u), d(v))`. Over the sorted degree sequence this
/// is exactly `S_n` of that sequence.
pub fn p4_min_bound(g: &Graph) -> u128 {
    let deg = g.degrees();
    let mut total = 0u128;
    for u in 0..deg.len() {
        for v in u + 1..deg.len() {
            total += (deg[u] * deg[v]) as u128 * deg[u].min(deg[v]) as u128;
        }
    }
    total
}
