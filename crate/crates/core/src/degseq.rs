//! The degree-sequence relaxation.
//!
//! For a non-increasing sequence `x = (x_1, …, x_n)`,
//! `S_n(x) = Σ_{i<j} x_i·x_j²`. The relaxation set `A_n` keeps
//! `x_1 ≤ n`, the prefix caps `Σ_{i≤k} x_i ≤ 2n + 6k − 16` and the total cap
//! `Σ x_i ≤ 6n − 12`. Indices in this module are 1-based wherever they name a
//! position of the sequence.

use alloc::format;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::Graph;
use crate::{Error, Result};

/// A non-increasing sequence of non-negative integers.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DegSeq(Vec<u32>);

impl DegSeq {
    pub fn new(x: Vec<u32>) -> Result<Self> {
        check_sorted(&x)?;
        Ok(DegSeq(x))
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<u32> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `x_i` for 1-based `i`; zero past the end.
    pub fn get(&self, i: usize) -> u32 {
        i.checked_sub(1).and_then(|j| self.0.get(j)).copied().unwrap_or(0)
    }

    pub fn sum(&self) -> u64 {
        self.0.iter().map(|&v| v as u64).sum()
    }

    /// Zero-padded (or zero-trimmed) to length `n`. Fails if a nonzero entry
    /// would be dropped.
    pub fn padded(&self, n: usize) -> Result<DegSeq> {
        if self.0.iter().skip(n).any(|&v| v != 0) {
            return Err(Error::Precondition(format!(
                "sequence has nonzero entries beyond length {n}"
            )));
        }
        let mut x = self.0.clone();
        x.resize(n, 0);
        Ok(DegSeq(x))
    }

    pub fn s_value(&self) -> i128 {
        s_unchecked(&self.0)
    }
}

impl core::fmt::Display for DegSeq {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

fn check_sorted(x: &[u32]) -> Result<()> {
    match x.windows(2).position(|w| w[0] < w[1]) {
        Some(i) => Err(Error::NotSorted(i + 1)),
        None => Ok(()),
    }
}

/// `S(x) = Σ_{i<j} x_i x_j²`. Unsorted input is rejected rather than sorted.
pub fn s_value(x: &[u32]) -> Result<i128> {
    check_sorted(x)?;
    Ok(s_unchecked(x))
}

fn s_unchecked(x: &[u32]) -> i128 {
    let mut prefix = 0i128;
    let mut total = 0i128;
    for &v in x {
        let v = v as i128;
        total += prefix * v * v;
        prefix += v;
    }
    total
}

/// Which prefix caps are enforced.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PrefixMode {
    /// Every `k ≥ 1`, verbatim.
    Literal,
    /// Only `k ≥ 3`. The caps for `k ∈ {1, 2}` do not hold for real planar
    /// degree sequences (two apexes of degree `n − 1` already break `k = 2`).
    K3,
}

impl PrefixMode {
    pub fn prefix_min_k(self) -> usize {
        match self {
            PrefixMode::Literal => 1,
            PrefixMode::K3 => 3,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            PrefixMode::Literal => "literal",
            PrefixMode::K3 => "k3",
        }
    }
}

impl core::str::FromStr for PrefixMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "literal" => Ok(PrefixMode::Literal),
            "k3" => Ok(PrefixMode::K3),
            other => Err(Error::InvalidParameter(format!("unknown mode {other:?}"))),
        }
    }
}

impl core::fmt::Display for PrefixMode {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// The constraint set `A_n` in one of its two prefix modes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RelaxationSet {
    pub n: usize,
    pub mode: PrefixMode,
}

impl RelaxationSet {
    pub fn new(n: usize, mode: PrefixMode) -> Self {
        RelaxationSet { n, mode }
    }

    pub fn literal(n: usize) -> Self {
        Self::new(n, PrefixMode::Literal)
    }

    pub fn k3(n: usize) -> Self {
        Self::new(n, PrefixMode::K3)
    }

    /// `2n + 6k − 16`.
    pub fn prefix_cap(&self, k: usize) -> i64 {
        lemma1_bound(self.n, k)
    }

    /// `6n − 12`.
    pub fn total_cap(&self) -> i64 {
        6 * self.n as i64 - 12
    }

    /// Largest value allowed at 1-based position `i` after a prefix summing to
    /// `prefix_sum` whose last entry is `prev` (`None` at `i = 1`), such that
    /// the prefix can still be completed by zeros. Negative means no value fits.
    pub fn max_next(&self, i: usize, prefix_sum: i64, prev: Option<u32>) -> i64 {
        let mut upper = self.n as i64;
        if let Some(p) = prev {
            upper = upper.min(p as i64);
        }
        upper = upper.min(self.total_cap() - prefix_sum);
        // caps grow with k, so the first enforced cap at or after i dominates
        let k = i.max(self.mode.prefix_min_k());
        if k <= self.n {
            upper = upper.min(self.prefix_cap(k) - prefix_sum);
        }
        upper
    }
}

/// Membership in `set`. Shorter sequences are zero-padded; longer ones must
/// be zero past position `n`.
pub fn is_member(x: &[u32], set: &RelaxationSet) -> bool {
    let n = set.n;
    if check_sorted(x).is_err() || x.iter().skip(n).any(|&v| v != 0) {
        return false;
    }
    if x.first().is_some_and(|&v| v as usize > n) {
        return false;
    }
    let mut prefix = 0i64;
    for k in 1..=n {
        prefix += x.get(k - 1).copied().unwrap_or(0) as i64;
        if k >= set.mode.prefix_min_k() && prefix > set.prefix_cap(k) {
            return false;
        }
    }
    prefix <= set.total_cap()
}

/// `2n + 6k − 16`, the bound on the degree sum of any `k` vertices of a planar
/// graph on `n` vertices (valid for `k ≥ 3`).
pub fn lemma1_bound(n: usize, k: usize) -> i64 {
    2 * n as i64 + 6 * k as i64 - 16
}

/// Whether the degrees of the vertex set `subset` sum to at most
/// `2n + 6k − 16` with `k = |subset| ≥ 3`.
pub fn lemma1_check(g: &Graph, subset: &[usize]) -> Result<bool> {
    let k = subset.len();
    if k < 3 {
        return Err(Error::Precondition(format!("subset size {k} < 3")));
    }
    let mut seen = Vec::with_capacity(k);
    let mut sum = 0i64;
    for &v in subset {
        if v >= g.n() {
            return Err(Error::VertexOutOfRange { vertex: v, n: g.n() });
        }
        if seen.contains(&v) {
            return Err(Error::Precondition(format!("vertex {v} repeated in subset")));
        }
        seen.push(v);
        sum += g.degree(v) as i64;
    }
    Ok(sum <= lemma1_bound(g.n(), k))
}

/// Moves one unit from `x_1` to `x_2`. Requires `x_1 − x_2 ≥ 2`. Returns the
/// new sequence and `S(y) − S(x)`, computed by re-evaluation.
pub fn exchange_12(x: &DegSeq) -> Result<(DegSeq, i128)> {
    let (x1, x2) = (x.get(1), x.get(2));
    if x.len() < 2 || x1 < x2 + 2 {
        return Err(Error::Precondition(format!(
            "exchange_12 needs x_1 - x_2 >= 2, got x_1 = {x1}, x_2 = {x2}"
        )));
    }
    let mut y = x.0.clone();
    y[0] -= 1;
    y[1] += 1;
    let y = DegSeq(y);
    let delta = y.s_value() - x.s_value();
    Ok((y, delta))
}

/// Closed form of the [`exchange_12`] delta: `x_1(2x_2 + 1) − (x_2 + 1)²`.
/// The tail `x_3, …` drops out because `y_1 + y_2 = x_1 + x_2`.
pub fn exchange_12_closed_form(x: &DegSeq) -> i128 {
    let (x1, x2) = (x.get(1) as i128, x.get(2) as i128);
    x1 * (2 * x2 + 1) - (x2 + 1) * (x2 + 1)
}

/// The delta as printed in the source derivation, `(x_1 − 1)(2x_2 + 1)`.
/// It disagrees with exact expansion (e.g. `(5,2)` gives 20, the true delta is
/// 16) and is kept only to document the discrepancy.
pub fn exchange_12_printed_delta(x: &DegSeq) -> i128 {
    let (x1, x2) = (x.get(1) as i128, x.get(2) as i128);
    (x1 - 1) * (2 * x2 + 1)
}

/// Moves one unit from `x_k` to `x_1` (1-based `k ≥ 2`). Requires
/// `x_k > x_{k+1}`, or `x_k ≥ 1` when `k` is the last position.
pub fn exchange_1k(x: &DegSeq, k: usize) -> Result<(DegSeq, i128)> {
    if k < 2 || k > x.len() {
        return Err(Error::Precondition(format!(
            "exchange_1k index {k} outside 2..={}",
            x.len()
        )));
    }
    let xk = x.get(k);
    if xk == 0 || xk <= x.get(k + 1) {
        return Err(Error::Precondition(format!(
            "exchange_1k needs x_k > x_(k+1) at k = {k}"
        )));
    }
    let mut y = x.0.clone();
    y[0] += 1;
    y[k - 1] -= 1;
    let y = DegSeq(y);
    let delta = y.s_value() - x.s_value();
    Ok((y, delta))
}

/// Closed form of the [`exchange_1k`] delta:
/// `(x_2² + … + x_k²) − (2x_k − 1)(1 + x_1 + … + x_{k−1})`.
pub fn exchange_1k_closed_form(x: &DegSeq, k: usize) -> i128 {
    let squares: i128 = (2..=k).map(|i| (x.get(i) as i128).pow(2)).sum();
    let head: i128 = (1..k).map(|i| x.get(i) as i128).sum();
    squares - (2 * x.get(k) as i128 - 1) * (1 + head)
}

/// The delta as printed in the source derivation, with `x_k` inside the
/// second factor: `(x_2² + … + x_k²) − (2x_k − 1)(1 + x_1 + … + x_k)`.
pub fn exchange_1k_printed_delta(x: &DegSeq, k: usize) -> i128 {
    let squares: i128 = (2..=k).map(|i| (x.get(i) as i128).pow(2)).sum();
    let head: i128 = (1..=k).map(|i| x.get(i) as i128).sum();
    squares - (2 * x.get(k) as i128 - 1) * (1 + head)
}

/// Smallest 1-based `k ≤ n` with `Σ_{i≤k} x_i = 2n + 6k − 16`.
pub fn smallest_tight_k(x: &[u32], n: usize) -> Option<usize> {
    let mut prefix = 0i64;
    for k in 1..=n {
        prefix += x.get(k - 1).copied().unwrap_or(0) as i64;
        if prefix == lemma1_bound(n, k) {
            return Some(k);
        }
    }
    None
}

/// `t³/8`, the maximum of `S_m` over non-increasing non-negative reals
/// summing to `t`, attained at `(t/2, t/2, 0, …)`.
pub fn cube_bound(t: f64) -> f64 {
    t * t * t / 8.0
}

/// Integer form of the cube bound: whether `8·s ≤ t³`.
pub fn within_cube_bound(s: i128, t: u64) -> bool {
    let t = t as i128;
    8 * s <= t * t * t
}

/// The three cases one of which holds at any maximiser of `S_n` over `A_n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Trichotomy {
    /// `x_1 = n`.
    X1EqualsN,
    /// `x_2 ≤ n/18`.
    X2Small,
    /// `x_i ≤ 6` for all `i > k`, with `k ≤ 11664` the number of entries above 6.
    BoundedSupport { k: usize },
    None,
}

/// Largest support index allowed in the bounded-support case, `(18·6)²`.
pub const SUPPORT_LIMIT: usize = 11_664;

impl Trichotomy {
    pub fn as_str(&self) -> &'static str {
        match self {
            Trichotomy::X1EqualsN => "x1_equals_n",
            Trichotomy::X2Small => "x2_small",
            Trichotomy::BoundedSupport { .. } => "bounded_support",
            Trichotomy::None => "none",
        }
    }
}

/// First case that holds for `x`, checked in order.
pub fn trichotomy(x: &[u32], n: usize) -> Trichotomy {
    let at = |i: usize| x.get(i).copied().unwrap_or(0) as usize;
    if at(0) == n {
        return Trichotomy::X1EqualsN;
    }
    if 18 * at(1) <= n {
        return Trichotomy::X2Small;
    }
    // smallest k with x_i <= 6 beyond k; x is non-increasing so that is the
    // count of entries above 6, provided the tail really is sorted
    let k = x.iter().take_while(|&&v| v > 6).count();
    if k <= SUPPORT_LIMIT && x[k..].iter().all(|&v| v <= 6) {
        return Trichotomy::BoundedSupport { k };
    }
    Trichotomy::None
}

/// A pseudo-random member of `set`, built left to right under the running
/// caps. Each entry is the largest admissible value with probability 1/3
/// (which makes tight prefixes common) and uniform below it otherwise.
pub fn sample_member(set: &RelaxationSet, seed: u64) -> DegSeq {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut x = Vec::with_capacity(set.n);
    let mut prefix = 0i64;
    let mut prev = None;
    for i in 1..=set.n {
        let upper = set.max_next(i, prefix, prev);
        if upper <= 0 {
            break;
        }
        let v = if rng.random_ratio(1, 3) {
            upper
        } else {
            rng.random_range(0..=upper)
        };
        if v == 0 {
            break;
        }
        x.push(v as u32);
        prefix += v;
        prev = Some(v as u32);
    }
    x.resize(set.n, 0);
    DegSeq(x)
}

/// Parses a comma-separated non-increasing sequence.
pub fn parse_degseq(line: &str) -> Result<DegSeq> {
    let x = line
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<u32>()
                .map_err(|_| Error::InvalidParameter(format!("bad entry {t:?}")))
        })
        .collect::<Result<Vec<_>>>()?;
    DegSeq::new(x)
}

impl core::str::FromStr for DegSeq {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_degseq(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::double_apex;
    use alloc::vec;

    fn ds(x: &[u32]) -> DegSeq {
        DegSeq::new(x.to_vec()).unwrap()
    }

    #[test]
    fn s_value_examples() {
        assert_eq!(s_value(&[2, 1]), Ok(2));
        assert_eq!(s_value(&[4, 2, 2]), Ok(40));
        assert_eq!(s_value(&[3, 3, 3]), Ok(81));
        assert_eq!(s_value(&[1, 2]), Err(Error::NotSorted(1)));
    }

    #[test]
    fn s_value_matches_double_loop_on_double_apex() {
        let x = double_apex(8).unwrap().degree_sequence();
        assert_eq!(x.as_slice(), [7, 7, 4, 4, 4, 4, 3, 3]);
        let v = x.as_slice();
        let mut brute = 0i128;
        for i in 0..v.len() {
            for j in i + 1..v.len() {
                brute += v[i] as i128 * (v[j] as i128).pow(2);
            }
        }
        assert_eq!(x.s_value(), brute);
    }

    #[test]
    fn membership_examples() {
        for n in 8..20 {
            assert!(is_member(&vec![0; n], &RelaxationSet::literal(n)));
        }
        let n = 11;
        let apex = double_apex(n).unwrap().degree_sequence();
        assert_eq!(apex.as_slice(), [10, 10, 4, 4, 4, 4, 4, 4, 4, 3, 3]);
        assert!(!is_member(apex.as_slice(), &RelaxationSet::literal(n)));
        assert!(is_member(apex.as_slice(), &RelaxationSet::k3(n)));
        // the sequence listed alongside it passes the scan in both modes
        let listed = [9, 9, 4, 4, 4, 4, 4, 3, 3, 3, 3];
        assert!(is_member(&listed, &RelaxationSet::literal(n)));
        assert!(is_member(&listed, &RelaxationSet::k3(n)));
        // all entries n: total cap fails
        assert!(!is_member(&[12; 12], &RelaxationSet::k3(12)));
        assert!(!is_member(&[3, 4], &RelaxationSet::k3(12)));
        assert!(!is_member(&[13], &RelaxationSet::k3(12)));
    }

    #[test]
    fn lemma1_examples() {
        let g = double_apex(10).unwrap();
        assert_eq!(lemma1_check(&g, &[0, 1, 3]), Ok(true));
        assert_eq!(g.degree(0) + g.degree(1) + g.degree(3), 22);
        assert_eq!(lemma1_bound(10, 3), 22);
        let all: Vec<usize> = (0..10).collect();
        assert_eq!(lemma1_check(&g, &all), Ok(true));
        assert!(lemma1_check(&g, &[0, 1]).is_err());
        assert!(lemma1_check(&g, &[0, 1, 1]).is_err());
    }

    #[test]
    fn exchange_12_examples() {
        let (y, d) = exchange_12(&ds(&[5, 2])).unwrap();
        assert_eq!((y.as_slice(), d), (&[4, 3][..], 16));
        assert_eq!(exchange_12_closed_form(&ds(&[5, 2])), 16);
        assert_eq!(exchange_12_printed_delta(&ds(&[5, 2])), 20);

        let (y, d) = exchange_12(&ds(&[4, 0])).unwrap();
        assert_eq!((y.as_slice(), d), (&[3, 1][..], 3));

        let x = ds(&[6, 2, 2]);
        let (y, d) = exchange_12(&x).unwrap();
        assert_eq!(y.as_slice(), [5, 3, 2]);
        assert_eq!(d, 77 - 56);
        assert_eq!(exchange_12_closed_form(&x), d);

        assert!(exchange_12(&ds(&[5, 4])).is_err());
        assert!(exchange_12(&ds(&[5])).is_err());
    }

    #[test]
    fn exchange_1k_examples() {
        let (y, d) = exchange_1k(&ds(&[3, 2]), 2).unwrap();
        assert_eq!((y.as_slice(), d), (&[4, 1][..], -8));
        assert_eq!(exchange_1k_closed_form(&ds(&[3, 2]), 2), -8);

        let x = ds(&[2, 2, 2]);
        let (y, d) = exchange_1k(&x, 3).unwrap();
        assert_eq!((y.as_slice(), d), (&[3, 2, 1][..], -7));
        assert_eq!(exchange_1k_closed_form(&x, 3), -7);
        assert_ne!(exchange_1k_printed_delta(&x, 3), -7);

        assert!(exchange_1k(&ds(&[3, 2, 2]), 2).is_err());
        assert!(exchange_1k(&ds(&[3, 2, 2]), 1).is_err());
        assert!(exchange_1k(&ds(&[3, 2, 2]), 4).is_err());
        assert!(exchange_1k(&ds(&[3, 2, 0]), 3).is_err());
    }

    #[test]
    fn tight_prefix_examples() {
        assert_eq!(smallest_tight_k(&[0; 12], 12), None);
        assert_eq!(smallest_tight_k(&[6, 6, 6, 6, 4, 0, 0, 0, 0, 0], 10), None);
        // n = 20: caps 30, 36, 42
        let x = [20, 12, 10, 1];
        assert!(is_member(&x, &RelaxationSet::literal(20)));
        assert_eq!(smallest_tight_k(&x, 20), Some(3));
    }

    #[test]
    fn cube_bound_examples() {
        assert_eq!(cube_bound(0.0), 0.0);
        assert_eq!(s_value(&[1, 1]).unwrap() as f64, cube_bound(2.0));
        assert!(within_cube_bound(1, 2));
        assert!(!within_cube_bound(2, 2));
    }

    #[test]
    fn trichotomy_examples() {
        let n = 20;
        let mut x = vec![n as u32, n as u32 - 1];
        x.extend([3; 10]);
        assert_eq!(trichotomy(&x, n), Trichotomy::X1EqualsN);
        assert_eq!(trichotomy(&[18, 1, 0], 19), Trichotomy::X2Small);
        assert_eq!(trichotomy(&[10, 9, 6, 6, 6, 2], 40), Trichotomy::BoundedSupport { k: 2 });
    }

    #[test]
    fn sampler_is_deterministic_and_feasible() {
        let set = RelaxationSet::literal(20);
        assert!(is_member(sample_member(&set, 0).as_slice(), &set));
        assert_eq!(sample_member(&set, 1), sample_member(&set, 1));
        for mode in [PrefixMode::Literal, PrefixMode::K3] {
            let set = RelaxationSet::new(30, mode);
            for seed in 0..10_000 {
                let x = sample_member(&set, seed);
                assert!(is_member(x.as_slice(), &set), "{mode} seed {seed}: {x}");
            }
        }
    }

    #[test]
    fn display_and_parse() {
        let x = ds(&[4, 2, 2, 0]);
        assert_eq!(alloc::string::ToString::to_string(&x), "4,2,2,0");
        assert_eq!(parse_degseq("4, 2,2,0").unwrap(), x);
        assert!(parse_degseq("1,2").is_err());
        assert!(parse_degseq("1,x").is_err());
    }
}
