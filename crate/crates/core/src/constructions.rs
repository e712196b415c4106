//! Extremal constructions and the conjectured growth of `f(n, P_k)`.

use alloc::format;
use alloc::vec::Vec;

use crate::graph::Graph;
use crate::paths::count_paths;
use crate::{Error, Result};

/// Two adjacent apexes joined to every vertex of a path on the remaining
/// `n − 2` vertices. Vertices `0` and `1` are the apexes and `2, …, n−1` the
/// path in order. A triangulation with degrees `(n−1, n−1, 4, …, 4, 3, 3)`.
pub fn double_apex(n: usize) -> Result<Graph> {
    if n < 4 {
        return Err(Error::InvalidParameter(format!("double_apex needs n >= 4, got {n}")));
    }
    let mut edges = Vec::with_capacity(3 * n - 6);
    edges.push((0, 1));
    for p in 2..n {
        edges.push((0, p));
        edges.push((1, p));
        if p + 1 < n {
            edges.push((p, p + 1));
        }
    }
    Graph::from_edges(n, edges)
}

/// How the blown-up cycle is made denser.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Join {
    /// The bare blow-up.
    None,
    /// A path through the hubs `h_1 – h_2 – … – h_ℓ`.
    Hubs,
    /// A path through the members of every class, in order. For `ℓ = 2` with
    /// one class this is the double-apex graph without the apex edge.
    Classes,
}

impl core::str::FromStr for Join {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "none" => Ok(Join::None),
            "hubs" => Ok(Join::Hubs),
            "classes" => Ok(Join::Classes),
            other => Err(Error::InvalidParameter(format!("unknown join {other:?}"))),
        }
    }
}

/// Balanced class sizes for `n − ℓ` vertices in `ℓ` classes, larger first.
pub fn class_sizes(n: usize, ell: usize) -> Vec<usize> {
    let rest = n - ell;
    (0..ell).map(|i| rest / ell + usize::from(i < rest % ell)).collect()
}

/// The even cycle `C_{2ℓ}` with every second vertex blown up into a class of
/// independent copies. Hubs are `0..ℓ`; class `i` sits between hubs `i` and
/// `i + 1 (mod ℓ)` and its members follow the hubs, class by class.
pub fn blown_cycle(n: usize, ell: usize, join: Join) -> Result<Graph> {
    if ell < 2 || n < 2 * ell {
        return Err(Error::InvalidParameter(format!(
            "blown_cycle needs ell >= 2 and n >= 2*ell, got n = {n}, ell = {ell}"
        )));
    }
    let mut edges = Vec::new();
    let mut next = ell;
    for (i, size) in class_sizes(n, ell).into_iter().enumerate() {
        let (a, b) = (i, (i + 1) % ell);
        for j in 0..size {
            let c = next + j;
            edges.push((a, c));
            edges.push((b, c));
            if join == Join::Classes && j > 0 {
                edges.push((c - 1, c));
            }
        }
        next += size;
    }
    if join == Join::Hubs {
        edges.extend((1..ell).map(|i| (i - 1, i)));
    }
    Graph::from_edges(n, edges)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ConstructionKind {
    DoubleApex,
    BlownCycle,
}

/// A construction request as it arrives from the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ConstructionSpec {
    pub kind: ConstructionKind,
    pub n: usize,
    pub ell: usize,
    pub join: Join,
}

impl ConstructionSpec {
    pub fn build(&self) -> Result<Graph> {
        match self.kind {
            ConstructionKind::DoubleApex => double_apex(self.n),
            ConstructionKind::BlownCycle => blown_cycle(self.n, self.ell, self.join),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    /// `2ℓ` or `2ℓ + 1`.
    pub fn path_length(self, ell: usize) -> usize {
        match self {
            Parity::Even => 2 * ell,
            Parity::Odd => 2 * ell + 1,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        }
    }
}

impl core::str::FromStr for Parity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "even" => Ok(Parity::Even),
            "odd" => Ok(Parity::Odd),
            other => Err(Error::InvalidParameter(format!("unknown parity {other:?}"))),
        }
    }
}

/// Leading coefficient `c` of the conjectured `f(n, P_k) ≈ c·(n/ℓ)^{ℓ+1}`:
/// `4ℓ` for `k = 2ℓ`, `8ℓ(ℓ+1)` for `k = 2ℓ + 1`.
pub fn conjectured_coefficient(k: usize) -> Result<f64> {
    if k < 4 {
        return Err(Error::InvalidParameter(format!("conjectured value needs k >= 4, got {k}")));
    }
    let ell = (k / 2) as f64;
    Ok(if k.is_multiple_of(2) { 4.0 * ell } else { 8.0 * ell * (ell + 1.0) })
}

/// Leading term of the conjectured `f(n, P_k)`. For `k = 4` this is `n³`.
pub fn conjectured_value(k: usize, n: usize) -> Result<f64> {
    let c = conjectured_coefficient(k)?;
    let ell = (k / 2) as f64;
    Ok(c * libm::pow(n as f64 / ell, ell + 1.0))
}

#[derive(Clone, Debug, PartialEq)]
pub struct FitPoint {
    pub n: usize,
    pub count: u64,
    pub conjectured: f64,
    pub ratio: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LeadingFit {
    pub ell: usize,
    pub parity: Parity,
    pub k: usize,
    /// Least-squares slope of `log count` against `log n`.
    pub slope: f64,
    /// `exp(mean(log count − (ℓ+1)·log n))·ℓ^{ℓ+1}`, the coefficient of
    /// `(n/ℓ)^{ℓ+1}` with the exponent pinned at `ℓ + 1`.
    pub coefficient: f64,
    pub points: Vec<FitPoint>,
}

/// Counts `P_{2ℓ}` or `P_{2ℓ+1}` in the matching construction for every `n`
/// in `ns` and fits the growth. `ℓ = 2` uses [`double_apex`]; larger `ℓ` use
/// [`blown_cycle`] with the given `join`.
pub fn leading_fit(ell: usize, parity: Parity, ns: &[usize], join: Join) -> Result<LeadingFit> {
    if ns.len() < 3 {
        return Err(Error::InvalidParameter(format!("fit needs at least 3 sizes, got {}", ns.len())));
    }
    if ell < 2 {
        return Err(Error::InvalidParameter(format!("fit needs ell >= 2, got {ell}")));
    }
    for (i, &n) in ns.iter().enumerate() {
        if n % ell != 0 || n < 4 * ell || (i > 0 && n <= ns[i - 1]) {
            return Err(Error::InvalidParameter(format!(
                "sizes must be increasing multiples of ell = {ell}, each >= {}, got {n}",
                4 * ell
            )));
        }
    }
    let k = parity.path_length(ell);
    let mut points = Vec::with_capacity(ns.len());
    for &n in ns {
        let g = if ell == 2 { double_apex(n)? } else { blown_cycle(n, ell, join)? };
        let count = count_paths(&g, k);
        let conjectured = conjectured_value(k, n)?;
        points.push(FitPoint {
            n,
            count,
            conjectured,
            ratio: count as f64 / conjectured,
        });
    }
    if let Some(p) = points.iter().find(|p| p.count == 0) {
        return Err(Error::InvalidParameter(format!("no P_{k} in the construction at n = {}", p.n)));
    }
    let xs: Vec<f64> = points.iter().map(|p| libm::log(p.n as f64)).collect();
    let ys: Vec<f64> = points.iter().map(|p| libm::log(p.count as f64)).collect();
    let m = xs.len() as f64;
    let (mx, my) = (xs.iter().sum::<f64>() / m, ys.iter().sum::<f64>() / m);
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let slope = sxy / sxx;
    let e = (ell + 1) as f64;
    let log_c = xs.iter().zip(&ys).map(|(x, y)| y - e * x).sum::<f64>() / m;
    let coefficient = libm::exp(log_c) * libm::pow(ell as f64, e);
    Ok(LeadingFit {
        ell,
        parity,
        k,
        slope,
        coefficient,
        points,
    })
}
