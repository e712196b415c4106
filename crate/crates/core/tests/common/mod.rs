//! Independent reference implementations used only by the tests.
#![allow(dead_code)]

use pplab_core::{Graph, PrefixMode, RelaxationSet};

pub fn adjacency(g: &Graph) -> Vec<Vec<bool>> {
    let n = g.n();
    let mut a = vec![vec![false; n]; n];
    for (u, v) in g.edges() {
        a[u][v] = true;
        a[v][u] = true;
    }
    a
}

/// Paths with `k` edges, enumerated as vertex sequences over an adjacency
/// matrix and kept once by requiring first endpoint < last endpoint.
pub fn paths_by_sequences(g: &Graph, k: usize) -> u64 {
    let a = adjacency(g);
    let n = g.n();
    if k == 0 {
        return n as u64;
    }
    fn go(a: &[Vec<bool>], seq: &mut Vec<usize>, used: &mut [bool], left: usize) -> u64 {
        let last = *seq.last().unwrap();
        if left == 0 {
            return u64::from(seq[0] < last);
        }
        let mut total = 0;
        for w in 0..a.len() {
            if a[last][w] && !used[w] {
                used[w] = true;
                seq.push(w);
                total += go(a, seq, used, left - 1);
                seq.pop();
                used[w] = false;
            }
        }
        total
    }
    let mut total = 0;
    for s in 0..n {
        let mut used = vec![false; n];
        used[s] = true;
        total += go(&a, &mut vec![s], &mut used, k);
    }
    total
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    loop {
        out.push(p.clone());
        let Some(i) = (1..n).rev().find(|&i| p[i - 1] < p[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| p[j] > p[i - 1]).unwrap();
        p.swap(i - 1, j);
        p[i..].reverse();
    }
}

/// Edge mask of `g` over the pair order (0,1), (0,2), …, (n−2, n−1).
pub fn edge_mask(n: usize, edges: impl Iterator<Item = (usize, usize)>) -> u64 {
    let index = |u: usize, v: usize| u * (2 * n - u - 1) / 2 + (v - u - 1);
    edges.fold(0, |m, (u, v)| {
        let (u, v) = (u.min(v), u.max(v));
        m | 1 << index(u, v)
    })
}

/// Smallest edge mask over every relabelling: a brute-force canonical key.
pub fn brute_key(g: &Graph, perms: &[Vec<usize>]) -> u64 {
    perms
        .iter()
        .map(|p| edge_mask(g.n(), g.edges().map(|(u, v)| (p[u], p[v]))))
        .min()
        .unwrap()
}

pub fn brute_isomorphic(a: &Graph, b: &Graph) -> bool {
    if a.n() != b.n() || a.edge_count() != b.edge_count() {
        return false;
    }
    let target = edge_mask(b.n(), b.edges());
    permutations(a.n())
        .iter()
        .any(|p| edge_mask(a.n(), a.edges().map(|(u, v)| (p[u], p[v]))) == target)
}

/// `Σ_{i<j} x_i x_j²` by the double sum.
pub fn s_direct(x: &[u32]) -> i128 {
    let mut s = 0i128;
    for i in 0..x.len() {
        for j in i + 1..x.len() {
            s += x[i] as i128 * (x[j] as i128).pow(2);
        }
    }
    s
}

/// Exact maximum of `S` over the relaxation set by dynamic programming over
/// (position, previous value, prefix sum). Ties go to the lexicographically
/// largest sequence, read off by taking the largest optimal value at each step.
pub fn dp_maximize(set: &RelaxationSet) -> (i128, Vec<u32>) {
    let n = set.n;
    let total = 6 * n as i64 - 12;
    let pmk = match set.mode {
        PrefixMode::Literal => 1,
        PrefixMode::K3 => 3,
    };
    let cap = |k: usize| 2 * n as i64 + 6 * k as i64 - 16;
    let width = total.max(0) as usize + 1;
    const UNSEEN: i128 = i128::MIN;
    const DEAD: i128 = i128::MIN + 1;
    let mut memo = vec![UNSEEN; (n + 2) * (n + 1) * width];
    let slot = |i: usize, prev: usize, p: usize| (i * (n + 1) + prev) * width + p;

    #[allow(clippy::too_many_arguments)]
    fn value(
        i: usize,
        prev: usize,
        p: i64,
        n: usize,
        total: i64,
        pmk: usize,
        cap: &dyn Fn(usize) -> i64,
        memo: &mut [i128],
        slot: &dyn Fn(usize, usize, usize) -> usize,
    ) -> i128 {
        if i > n {
            return 0;
        }
        let key = slot(i, prev, p as usize);
        if memo[key] != UNSEEN {
            return memo[key];
        }
        let mut best = DEAD;
        for v in 0..=prev {
            let q = p + v as i64;
            if q > total || (i >= pmk && q > cap(i)) {
                break;
            }
            let rest = value(i + 1, v, q, n, total, pmk, cap, memo, slot);
            if rest == DEAD {
                continue;
            }
            best = best.max(rest + p as i128 * (v as i128).pow(2));
        }
        memo[key] = best;
        best
    }

    let best = value(1, n, 0, n, total, pmk, &cap, &mut memo, &slot);
    let mut x = Vec::with_capacity(n);
    let (mut prev, mut p, mut remaining) = (n, 0i64, best);
    for i in 1..=n {
        let v = (0..=prev)
            .rev()
            .find(|&v| {
                let q = p + v as i64;
                if q > total || (i >= pmk && q > cap(i)) {
                    return false;
                }
                let rest = value(i + 1, v, q, n, total, pmk, &cap, &mut memo, &slot);
                rest != DEAD && rest + p as i128 * (v as i128).pow(2) == remaining
            })
            .unwrap();
        remaining -= p as i128 * (v as i128).pow(2);
        x.push(v as u32);
        p += v as i64;
        prev = v;
    }
    (best, x)
}
