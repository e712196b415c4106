//! Brute-force planarity for tiny graphs: a graph is planar iff it contains
//! no subdivision of `K_5` or `K_{3,3}`. Branch vertices are tried
//! exhaustively and the pattern edges are routed one at a time along
//! internally disjoint paths. Exponential; used only to validate enumeration.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::canon::{canonical_form, CanonicalForm};
use crate::graph::Graph;
use crate::{Error, Result};

/// Largest `n` accepted by [`is_planar_oracle`].
pub const PLANARITY_ORACLE_LIMIT: usize = 8;
/// Largest `n` accepted by [`labeled_enumeration_oracle`].
pub const LABELED_ORACLE_LIMIT: usize = 7;

pub fn is_planar_oracle(g: &Graph) -> Result<bool> {
    let n = g.n();
    if n > PLANARITY_ORACLE_LIMIT {
        return Err(Error::TooLarge {
            what: "planarity oracle",
            n,
            limit: PLANARITY_ORACLE_LIMIT,
        });
    }
    Ok(!has_k5_subdivision(g) && !has_k33_subdivision(g))
}

fn subsets(n: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    (0u32..1 << n)
        .filter(move |m| m.count_ones() as usize == k)
        .map(move |m| (0..n).filter(|&i| m >> i & 1 == 1).collect())
}

fn has_k5_subdivision(g: &Graph) -> bool {
    subsets(g.n(), 5).any(|b| {
        if b.iter().any(|&v| g.degree(v) < 4) {
            return false;
        }
        let pairs: Vec<(usize, usize)> =
            (0..5).flat_map(|i| (i + 1..5).map(move |j| (i, j))).map(|(i, j)| (b[i], b[j])).collect();
        route(g, &b, &pairs)
    })
}

fn has_k33_subdivision(g: &Graph) -> bool {
    subsets(g.n(), 6).any(|six| {
        if six.iter().any(|&v| g.degree(v) < 3) {
            return false;
        }
        // the side holding six[0] is fixed, so each split is tried once
        (1..6).flat_map(|i| (i + 1..6).map(move |j| (i, j))).any(|(i, j)| {
            let left = [six[0], six[i], six[j]];
            let right: Vec<usize> = six.iter().copied().filter(|v| !left.contains(v)).collect();
            let pairs: Vec<(usize, usize)> =
                left.iter().flat_map(|&a| right.iter().map(move |&b| (a, b))).collect();
            route(g, &six, &pairs)
        })
    })
}

/// Whether every pair can be joined by a path whose interior avoids the
/// branch vertices and the interiors of the other paths.
fn route(g: &Graph, branch: &[usize], pairs: &[(usize, usize)]) -> bool {
    let mut blocked = alloc::vec![false; g.n()];
    for &b in branch {
        blocked[b] = true;
    }
    route_from(g, pairs, &mut blocked)
}

fn route_from(g: &Graph, pairs: &[(usize, usize)], blocked: &mut [bool]) -> bool {
    let Some((&(s, t), rest)) = pairs.split_first() else {
        return true;
    };
    if g.has_edge(s, t) && route_from(g, rest, blocked) {
        return true;
    }
    let mut interior = Vec::new();
    extend_path(g, s, t, rest, blocked, &mut interior)
}

fn extend_path(
    g: &Graph,
    at: usize,
    target: usize,
    rest: &[(usize, usize)],
    blocked: &mut [bool],
    interior: &mut Vec<usize>,
) -> bool {
    for &w in g.neighbors(at) {
        if blocked[w] {
            continue;
        }
        blocked[w] = true;
        interior.push(w);
        // a direct edge from the first interior vertex to the target closes
        // a path of length >= 2; routes through w continue otherwise
        let found = (g.has_edge(w, target) && route_from(g, rest, blocked))
            || extend_path(g, w, target, rest, blocked, interior);
        interior.pop();
        blocked[w] = false;
        if found {
            return true;
        }
    }
    false
}

/// Canonical forms of all planar graphs on `n` vertices with `3n − 6` edges,
/// found by listing every labelled edge set of that size.
pub fn labeled_planar_classes(n: usize) -> Result<BTreeSet<CanonicalForm>> {
    if n > LABELED_ORACLE_LIMIT {
        return Err(Error::TooLarge {
            what: "labelled enumeration oracle",
            n,
            limit: LABELED_ORACLE_LIMIT,
        });
    }
    if n < 3 {
        return Err(Error::InvalidParameter(alloc::format!("need n >= 3, got {n}")));
    }
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let m = pairs.len();
    let e = 3 * n - 6;
    let mut classes = BTreeSet::new();
    if e > m {
        return Ok(classes);
    }
    // Gosper's hack over all m-bit masks with e bits set
    let mut mask: u64 = (1u64 << e) - 1;
    let end = 1u64 << m;
    while mask < end {
        let g = Graph::from_edges(n, (0..m).filter(|&i| mask >> i & 1 == 1).map(|i| pairs[i]))?;
        if is_planar_oracle(&g)? {
            classes.insert(canonical_form(&g)?);
        }
        let c = mask & mask.wrapping_neg();
        let r = mask + c;
        mask = (((r ^ mask) >> 2) / c) | r;
    }
    Ok(classes)
}

/// Number of non-isomorphic triangulations on `n ≤ 7` vertices, independent
/// of the flip enumeration.
pub fn labeled_enumeration_oracle(n: usize) -> Result<usize> {
    labeled_planar_classes(n).map(|c| c.len())
}
