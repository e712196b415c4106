//! The `verify` suite: one check per acceptance criterion plus a catalog
//! integrity check. `quick` shrinks the expensive parameters; `full` runs
//! them as stated.

use std::path::Path;

use pplab_core::degseq::{
    exchange_12, exchange_12_closed_form, exchange_1k, exchange_1k_closed_form, lemma1_check,
    s_value, sample_member, smallest_tight_k, within_cube_bound,
};
use pplab_core::enumerate::all_triangulations;
use pplab_core::maximize::maximize_exhaustive;
use pplab_core::planarity::labeled_enumeration_oracle;
use pplab_core::{
    count_paths, double_apex, leading_fit, maximize, p4_codegree_bound, p4_min_bound, Catalog, Graph, Join,
    Parity, PrefixMode, RelaxationSet, Trichotomy,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::catalog;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Profile {
    Quick,
    Full,
}

impl Profile {
    pub fn as_str(self) -> &'static str {
        match self {
            Profile::Quick => "quick",
            Profile::Full => "full",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub id: String,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

struct Plan {
    apex_ns: &'static [usize],
    maximize_ns: &'static [usize],
    trials: usize,
    chain_catalog_max: usize,
    chain_random: usize,
    oracle_max: usize,
    fit_ns: &'static [usize],
    catalog_max: usize,
}

impl Plan {
    fn of(profile: Profile) -> Plan {
        match profile {
            Profile::Quick => Plan {
                apex_ns: &[20, 40, 80],
                maximize_ns: &[16, 24],
                trials: 1_000,
                chain_catalog_max: 8,
                chain_random: 100,
                oracle_max: 6,
                fit_ns: &[24, 36, 48],
                catalog_max: 9,
            },
            Profile::Full => Plan {
                apex_ns: &[20, 40, 80, 160],
                maximize_ns: &[16, 24, 32, 40],
                trials: 10_000,
                chain_catalog_max: 9,
                chain_random: 1_000,
                oracle_max: 7,
                fit_ns: &[24, 36, 48, 60, 72],
                catalog_max: 11,
            },
        }
    }
}

/// `observed` summarises what was measured; on failure it follows the list
/// of violations.
fn check(id: &str, name: &'static str, failures: Vec<String>, observed: String) -> Check {
    let passed = failures.is_empty();
    let detail = match (passed, observed.is_empty()) {
        (true, _) => observed,
        (false, true) => failures.join("; "),
        (false, false) => format!("{} | {observed}", failures.join("; ")),
    };
    Check {
        id: id.into(),
        name,
        passed,
        detail,
    }
}

/// Runs every check. Catalogs are read from (and written to) `cache_dir`;
/// all randomness derives from `seed`.
pub fn run(profile: Profile, seed: u64, cache_dir: &Path) -> Vec<Check> {
    let plan = Plan::of(profile);
    let (integrity, catalogs) = catalog_integrity(cache_dir, plan.catalog_max);
    let catalog = |n: usize| -> Catalog {
        catalogs
            .iter()
            .find(|c| c.n() == n)
            .cloned()
            .unwrap_or_else(|| all_triangulations(n).expect("n within the enumeration cap"))
    };
    vec![
        exact_p3(&catalog),
        exact_p2(&catalog),
        double_apex_growth(plan.apex_ns),
        relaxation(plan.maximize_ns),
        exchange_deltas(plan.trials, seed),
        cube_grid(),
        tight_prefix_claim(plan.trials, seed),
        bound_chain(&catalog, plan.chain_catalog_max, plan.chain_random, seed),
        lemma1(&catalog),
        enumeration_soundness(&catalog, plan.oracle_max),
        conjecture_growth(plan.fit_ns),
        integrity,
    ]
}

fn catalog_integrity(dir: &Path, max_n: usize) -> (Check, Vec<Catalog>) {
    let mut failures = Vec::new();
    let mut catalogs = Vec::new();
    let mut sources = Vec::new();
    for n in 4..=max_n {
        match catalog::load(dir, n) {
            Ok(Some(c)) => {
                let fresh = all_triangulations(n).expect("n within the enumeration cap");
                if fresh.members() != c.members() {
                    failures.push(format!("n={n}: cached catalog differs from a fresh enumeration"));
                }
                sources.push(format!("n={n}:cache"));
                catalogs.push(c);
            }
            Ok(None) => match catalog::load_or_generate(dir, n, true) {
                Ok((c, _)) => {
                    sources.push(format!("n={n}:generated"));
                    catalogs.push(c);
                }
                Err(e) => failures.push(format!("n={n}: {e}")),
            },
            Err(e) => failures.push(format!("n={n}: {e}")),
        }
    }
    let c = check("catalog", "catalog integrity", failures, sources.join(" "));
    (c, catalogs)
}

fn exact_p3(catalog: &dyn Fn(usize) -> Catalog) -> Check {
    let expected = [(4, 12), (5, 42), (6, 87), (7, 147), (8, 222)];
    let mut failures = Vec::new();
    let mut seen = Vec::new();
    for (n, want) in expected {
        let got = catalog(n).max_paths(3).map(|(v, _)| v).unwrap_or(0);
        seen.push(format!("{n}:{got}"));
        if got != want {
            failures.push(format!("n={n}: f={got}, expected {want}"));
        }
    }
    check("1", "exact f(n,P_3)", failures, seen.join(" "))
}

fn exact_p2(catalog: &dyn Fn(usize) -> Catalog) -> Check {
    let mut failures = Vec::new();
    let mut seen = Vec::new();
    for n in 4..=8u64 {
        let got = catalog(n as usize).max_paths(2).map(|(v, _)| v).unwrap_or(0);
        let want = n * n + 3 * n - 16;
        seen.push(format!("{n}:{got}"));
        if got != want {
            failures.push(format!("n={n}: f={got}, expected {want}"));
        }
    }
    check("2", "exact f(n,P_2) = n^2+3n-16", failures, seen.join(" "))
}

fn double_apex_growth(ns: &[usize]) -> Check {
    let mut failures = Vec::new();
    let mut ratios = Vec::new();
    for &n in ns {
        let count = count_paths(&double_apex(n).expect("n >= 4"), 4) as i128;
        let n3 = (n * n * n) as i128;
        let lo = n3 - 12 * (n * n) as i128;
        let ratio = count as f64 / n3 as f64;
        if count < lo || count > n3 {
            failures.push(format!("n={n}: count {count} outside [{lo}, {n3}]"));
        }
        if ratios.last().is_some_and(|&(_, prev)| ratio < prev) {
            failures.push(format!("n={n}: ratio {ratio:.4} decreased"));
        }
        ratios.push((n, ratio));
    }
    if let Some(&(n, r)) = ratios.last() {
        if r < 0.90 {
            failures.push(format!("n={n}: ratio {r:.4} < 0.90"));
        }
    }
    let seen: Vec<String> = ratios.iter().map(|(n, r)| format!("{n}:{r:.4}")).collect();
    check("3", "double apex P_4 asymptotics", failures, seen.join(" "))
}

fn relaxation(ns: &[usize]) -> Check {
    let mut failures = Vec::new();
    let mut excess = Vec::new();
    for &n in ns {
        let r = match maximize(&RelaxationSet::literal(n)) {
            Ok(r) => r,
            Err(e) => {
                failures.push(format!("n={n}: {e}"));
                continue;
            }
        };
        let n3 = (n * n * n) as i128;
        let n2 = (n * n) as i128;
        if r.best_value < n3 - 8 * n2 || r.best_value > n3 + 40 * n2 {
            failures.push(format!("n={n}: best {} outside [n^3-8n^2, n^3+40n^2]", r.best_value));
        }
        if r.argmax.get(1) > r.argmax.get(2) + 1 {
            failures.push(format!("n={n}: x1-x2 > 1 in {}", r.argmax));
        }
        if r.trichotomy_case == Trichotomy::None {
            failures.push(format!("n={n}: trichotomy none"));
        }
        excess.push(r.normalized_excess());
    }
    if let (Some(lo), Some(hi)) = (
        excess.iter().copied().reduce(f64::min),
        excess.iter().copied().reduce(f64::max),
    ) {
        if hi - lo > 10.0 {
            failures.push(format!("excess spread {:.2} exceeds +-5", hi - lo));
        }
    }
    let set = RelaxationSet::literal(10);
    match (maximize(&set), maximize_exhaustive(&set)) {
        (Ok(r), Ok((v, x, _))) if r.best_value == v && r.argmax == x => {}
        _ => failures.push("n=10: branch-and-bound differs from exhaustive enumeration".into()),
    }
    let seen: Vec<String> = ns.iter().zip(&excess).map(|(n, e)| format!("{n}:{e:.2}")).collect();
    check("4", "relaxation maximum", failures, format!("excess {}", seen.join(" ")))
}

fn random_mode(rng: &mut ChaCha8Rng) -> PrefixMode {
    if rng.random_bool(0.5) {
        PrefixMode::Literal
    } else {
        PrefixMode::K3
    }
}

fn exchange_deltas(trials: usize, seed: u64) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    let (mut twelve, mut onek, mut draws) = (0, 0, 0u64);
    while twelve < trials || onek < trials {
        let n = rng.random_range(10..=40);
        let set = RelaxationSet::new(n, random_mode(&mut rng));
        let x = sample_member(&set, seed.wrapping_add(draws));
        draws += 1;
        if twelve < trials && x.get(1) >= x.get(2) + 2 {
            let (y, delta) = exchange_12(&x).expect("precondition checked");
            if delta != y.s_value() - x.s_value() || delta != exchange_12_closed_form(&x) || delta <= 0 {
                failures.push(format!("exchange_12 at {x}"));
            }
            twelve += 1;
        }
        let ks: Vec<usize> = (2..=x.len()).filter(|&k| x.get(k) > 0 && x.get(k) > x.get(k + 1)).collect();
        if onek < trials && !ks.is_empty() {
            let k = ks[rng.random_range(0..ks.len())];
            let (y, delta) = exchange_1k(&x, k).expect("precondition checked");
            if delta != y.s_value() - x.s_value() || delta != exchange_1k_closed_form(&x, k) {
                failures.push(format!("exchange_1k at {x}, k={k}"));
            }
            onek += 1;
        }
        if failures.len() > 5 {
            break;
        }
    }
    check("5", "exchange deltas", failures, format!("{trials} trials per move"))
}

fn cube_grid() -> Check {
    fn walk(m: usize, t: u32, left: u32, cap: u32, x: &mut Vec<u32>, points: &mut u64, failures: &mut Vec<String>) {
        if x.len() == m {
            if left == 0 {
                *points += 1;
                if !within_cube_bound(s_value(x).expect("sorted"), t as u64) {
                    failures.push(format!("{x:?}"));
                }
            }
            return;
        }
        for v in (0..=cap.min(left)).rev() {
            x.push(v);
            walk(m, t, left - v, v, x, points, failures);
            x.pop();
        }
    }
    let mut failures = Vec::new();
    let mut points = 0;
    for m in 1..=6 {
        for t in 0..=24u32 {
            walk(m, t, t, t, &mut Vec::new(), &mut points, &mut failures);
        }
    }
    for t in (0..=24u32).step_by(2) {
        if 8 * s_value(&[t / 2, t / 2]).expect("sorted") != (t as i128).pow(3) {
            failures.push(format!("balanced split misses t^3/8 at t={t}"));
        }
    }
    check("6", "cube bound", failures, format!("{points} grid points"))
}

fn tight_prefix_claim(trials: usize, seed: u64) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x7);
    let mut failures = Vec::new();
    let (mut checked, mut draws) = (0, 0u64);
    while checked < trials {
        let n = rng.random_range(12..=40);
        let x = sample_member(&RelaxationSet::literal(n), seed.wrapping_add(draws));
        draws += 1;
        if let Some(k) = smallest_tight_k(x.as_slice(), n) {
            if x.get(k) < 7 || x.get(k + 1) > 6 {
                failures.push(format!("n={n} k={k} x={x}"));
            }
            checked += 1;
        }
    }
    check("7", "tight prefix claim", failures, format!("{trials} tight members"))
}

fn bound_chain(catalog: &dyn Fn(usize) -> Catalog, max_n: usize, random: usize, seed: u64) -> Check {
    let mut failures = Vec::new();
    let mut test = |g: &Graph, label: String| {
        let count = count_paths(g, 4) as u128;
        let codegree = p4_codegree_bound(g);
        let min = p4_min_bound(g);
        if !(count <= codegree && codegree <= min && min as i128 == g.degree_sequence().s_value()) {
            failures.push(label);
        }
    };
    let mut graphs = 0;
    for n in 4..=max_n {
        for (i, g) in catalog(n).members().iter().enumerate() {
            test(g, format!("triangulation n={n} #{i}"));
            graphs += 1;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x8);
    for i in 0..random {
        let n = rng.random_range(5..=20);
        let p = rng.random_range(0.1..0.9);
        test(&Graph::gnp(n, p, rng.random()), format!("random graph #{i}"));
    }
    check("8", "P_4 bound chain", failures, format!("{graphs} triangulations, {random} random graphs"))
}

fn lemma1(catalog: &dyn Fn(usize) -> Catalog) -> Check {
    let mut failures = Vec::new();
    let mut subsets = 0u64;
    for n in 4..=8 {
        for g in catalog(n).members() {
            for mask in 0u32..1 << n {
                if mask.count_ones() < 3 {
                    continue;
                }
                let s: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
                subsets += 1;
                if lemma1_check(g, &s) != Ok(true) {
                    failures.push(format!("n={n} subset {s:?}"));
                }
            }
        }
    }
    check("9", "degree sums of vertex subsets", failures, format!("{subsets} subsets"))
}

fn enumeration_soundness(catalog: &dyn Fn(usize) -> Catalog, max_n: usize) -> Check {
    let mut failures = Vec::new();
    let mut seen = Vec::new();
    for n in 4..=max_n {
        let flips = catalog(n).len();
        match labeled_enumeration_oracle(n) {
            Ok(oracle) if oracle == flips => seen.push(format!("{n}:{flips}")),
            Ok(oracle) => failures.push(format!("n={n}: flips {flips}, oracle {oracle}")),
            Err(e) => failures.push(format!("n={n}: {e}")),
        }
    }
    check("10", "enumeration vs labelled oracle", failures, seen.join(" "))
}

fn conjecture_growth(ns: &[usize]) -> Check {
    let mut failures = Vec::new();
    let mut seen = Vec::new();
    for parity in [Parity::Even, Parity::Odd] {
        let fit = match leading_fit(3, parity, ns, Join::Classes) {
            Ok(f) => f,
            Err(e) => {
                failures.push(format!("{}: {e}", parity.as_str()));
                continue;
            }
        };
        let target = pplab_core::constructions::conjectured_coefficient(fit.k).expect("k >= 4");
        seen.push(format!(
            "{}: slope {:.3} coefficient {:.2} (conjectured {target})",
            parity.as_str(),
            fit.slope,
            fit.coefficient
        ));
        if (fit.slope - 4.0).abs() > 0.15 {
            failures.push(format!("{}: slope {:.3} outside 4 +- 0.15", parity.as_str(), fit.slope));
        }
        if !(target / 2.0..=target * 2.0).contains(&fit.coefficient) {
            failures.push(format!(
                "{}: coefficient {:.2} not within 2x of {target}",
                parity.as_str(),
                fit.coefficient
            ));
        }
    }
    check("11", "conjecture growth", failures, seen.join("; "))
}
