//! Exact maximisation of `S_n` over the relaxation set.
//!
//! Depth-first branch-and-bound assigning `x_1, x_2, …` in order, largest
//! candidate first. Writing `P` for the prefix sum and `y` for the unassigned
//! suffix, `S(x) = S(prefix) + P·Σ y_j² + S(y)`. The node bound replaces
//! `Σ y_j²` by the sum of squares of the entry-wise largest completion `z`
//! (every feasible suffix is weakly majorised by it) and `S(y)` by
//! `min(T³/8, L·T²/2)`, where `T = Σ z` and `L` is the last assigned value.

use alloc::format;
use alloc::vec::Vec;

use crate::degseq::{is_member, sample_member, trichotomy, DegSeq, PrefixMode, RelaxationSet, Trichotomy};
use crate::{Error, Result};

/// Default ceiling on `n` for [`maximize`].
pub const MAXIMIZE_LIMIT: usize = 48;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaximizeResult {
    pub n: usize,
    pub mode: PrefixMode,
    pub best_value: i128,
    pub argmax: DegSeq,
    pub nodes_explored: u64,
    pub bound_calls: u64,
    pub trichotomy_case: Trichotomy,
}

impl MaximizeResult {
    /// `(best_value − n³)/n²`.
    pub fn normalized_excess(&self) -> f64 {
        let n = self.n as f64;
        (self.best_value as f64 - n * n * n) / (n * n)
    }
}

pub fn maximize(set: &RelaxationSet) -> Result<MaximizeResult> {
    maximize_with_limit(set, MAXIMIZE_LIMIT)
}

pub fn maximize_with_limit(set: &RelaxationSet, limit: usize) -> Result<MaximizeResult> {
    let n = set.n;
    if n < 8 {
        return Err(Error::InvalidParameter(format!("maximize needs n >= 8, got {n}")));
    }
    if n > limit {
        return Err(Error::TooLarge { what: "maximize", n, limit });
    }

    let mut search = Search {
        set: *set,
        x: Vec::with_capacity(n),
        best_value: -1,
        best: Vec::new(),
        best_from_warm: true,
        nodes: 0,
        bound_calls: 0,
    };
    for warm in warm_starts(set) {
        let v = warm.s_value();
        if v > search.best_value || (v == search.best_value && warm.as_slice() > search.best.as_slice()) {
            search.best_value = v;
            search.best = warm.into_vec();
        }
    }
    search.run(1, 0, 0);

    let argmax = DegSeq::new(search.best).expect("search only builds sorted sequences");
    debug_assert!(is_member(argmax.as_slice(), set));
    debug_assert_eq!(argmax.s_value(), search.best_value);
    Ok(MaximizeResult {
        n,
        mode: set.mode,
        best_value: search.best_value,
        trichotomy_case: trichotomy(argmax.as_slice(), n),
        argmax,
        nodes_explored: search.nodes,
        bound_calls: search.bound_calls,
    })
}

/// `(n, n−4, 3, 3, …)` trimmed to the total cap, if it is a member, and one
/// sampled member.
fn warm_starts(set: &RelaxationSet) -> Vec<DegSeq> {
    let n = set.n;
    let mut out = Vec::new();
    let mut x = Vec::with_capacity(n);
    x.push(n as u32);
    x.push(n as u32 - 4);
    let mut total = 2 * n as i64 - 4;
    while x.len() < n && total + 3 <= set.total_cap() {
        x.push(3);
        total += 3;
    }
    x.resize(n, 0);
    if is_member(&x, set) {
        out.push(DegSeq::new(x).unwrap());
    }
    out.push(sample_member(set, 0));
    out
}

struct Search {
    set: RelaxationSet,
    x: Vec<u32>,
    best_value: i128,
    best: Vec<u32>,
    // an incumbent found by the search itself is lexicographically larger than
    // anything visited later, so equal bounds can be pruned; a warm start is not
    best_from_warm: bool,
    nodes: u64,
    bound_calls: u64,
}

impl Search {
    /// Assign position `i` (1-based) given the prefix sum and its `S` value.
    fn run(&mut self, i: usize, prefix: i64, s_prefix: i128) {
        let n = self.set.n;
        if i > n {
            self.offer(s_prefix);
            return;
        }
        let upper = self.set.max_next(i, prefix, self.x.last().copied());
        let mut v = upper;
        while v >= 0 {
            self.nodes += 1;
            let s_next = s_prefix + prefix as i128 * (v as i128) * (v as i128);
            if v == 0 {
                // remaining entries are all zero
                self.offer(s_next);
                break;
            }
            self.x.push(v as u32);
            let bound = self.bound(i + 1, prefix + v, s_next, v as u32);
            let keep = bound > self.best_value || (bound == self.best_value && self.best_from_warm);
            if keep {
                self.run(i + 1, prefix + v, s_next);
            }
            self.x.pop();
            v -= 1;
        }
    }

    fn offer(&mut self, value: i128) {
        if value < self.best_value || (value == self.best_value && !self.best_from_warm) {
            return;
        }
        let mut candidate = self.x.clone();
        candidate.resize(self.set.n, 0);
        if value > self.best_value || candidate >= self.best {
            self.best_value = value;
            self.best = candidate;
            self.best_from_warm = false;
        }
    }

    /// Upper bound on `S` over all completions of the current prefix, whose
    /// next free position is `i`.
    fn bound(&mut self, i: usize, prefix: i64, s_prefix: i128, last: u32) -> i128 {
        self.bound_calls += 1;
        let n = self.set.n;
        let pmk = self.set.mode.prefix_min_k();
        let last = last as i64;
        let mut z_sum = 0i64;
        let mut z_sq = 0i128;
        for j in i..=n {
            let mut room = self.set.total_cap() - prefix - z_sum;
            let k = j.max(pmk);
            if k <= n {
                room = room.min(self.set.prefix_cap(k) - prefix - z_sum);
            }
            let z = last.min(room);
            if z <= 0 {
                // later caps are larger by 6 per step; keep scanning only if
                // a prefix cap, not the total cap, was binding
                if self.set.total_cap() - prefix - z_sum <= 0 {
                    break;
                }
                continue;
            }
            z_sum += z;
            z_sq += (z as i128) * (z as i128);
        }
        let t = z_sum as i128;
        let suffix = (t * t * t / 8).min(last as i128 * t * t / 2);
        s_prefix + prefix as i128 * z_sq + suffix
    }
}

/// Exact maximum by listing every non-increasing sequence with entries at
/// most `n` and sum at most `6n − 12`, filtering by membership and scoring
/// with a direct double sum. Ties go to the lexicographically largest
/// sequence. Only meant for small `n` (≤ 12).
pub fn maximize_exhaustive(set: &RelaxationSet) -> Result<(i128, DegSeq, u64)> {
    let n = set.n;
    if n > 12 {
        return Err(Error::TooLarge { what: "exhaustive maximize", n, limit: 12 });
    }
    let budget = (6 * n as i64 - 12).max(0) as u32;
    let mut best: Option<(i128, Vec<u32>)> = None;
    let mut members = 0u64;
    let mut x = Vec::with_capacity(n);
    fn walk(
        x: &mut Vec<u32>,
        n: usize,
        cap: u32,
        budget: u32,
        set: &RelaxationSet,
        best: &mut Option<(i128, Vec<u32>)>,
        members: &mut u64,
    ) {
        let mut full = x.clone();
        full.resize(n, 0);
        if is_member(&full, set) {
            *members += 1;
            let mut s = 0i128;
            for i in 0..n {
                for j in i + 1..n {
                    s += full[i] as i128 * full[j] as i128 * full[j] as i128;
                }
            }
            let replace = match best {
                None => true,
                Some((bv, bx)) => s > *bv || (s == *bv && full > *bx),
            };
            if replace {
                *best = Some((s, full));
            }
        }
        if x.len() == n {
            return;
        }
        for v in 1..=cap.min(budget) {
            x.push(v);
            walk(x, n, v, budget - v, set, best, members);
            x.pop();
        }
    }
    walk(&mut x, n, n as u32, budget, set, &mut best, &mut members);
    let (value, argmax) = best.ok_or_else(|| Error::Precondition(format!("relaxation set for n = {n} is empty")))?;
    Ok((value, DegSeq::new(argmax).unwrap(), members))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_out_of_range() {
        assert!(maximize(&RelaxationSet::literal(4)).is_err());
        assert!(maximize(&RelaxationSet::literal(49)).is_err());
    }

    #[test]
    fn small_n_matches_exhaustive() {
        for n in 8..=11 {
            for mode in [PrefixMode::Literal, PrefixMode::K3] {
                let set = RelaxationSet::new(n, mode);
                let r = maximize(&set).unwrap();
                let (v, x, _) = maximize_exhaustive(&set).unwrap();
                assert_eq!(r.best_value, v, "n={n} {mode}");
                assert_eq!(r.argmax, x, "n={n} {mode}");
            }
        }
    }

    #[test]
    fn result_is_consistent() {
        let set = RelaxationSet::literal(16);
        let r = maximize(&set).unwrap();
        assert!(is_member(r.argmax.as_slice(), &set));
        assert_eq!(r.argmax.s_value(), r.best_value);
        assert!(r.argmax.get(1) - r.argmax.get(2) <= 1);
        assert_ne!(r.trichotomy_case, Trichotomy::None);
    }
}
