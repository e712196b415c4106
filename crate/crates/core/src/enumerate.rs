//! Triangulations (maximal planar graphs) by diagonal flips.
//!
//! Adding an edge never lowers a path count, and every planar graph is a
//! spanning subgraph of a triangulation on the same vertices, so `f(n, P_k)`
//! is attained by a triangulation. Starting from one stacked triangulation,
//! the breadth-first closure under edge flips reaches every triangulation on
//! `n` vertices; isomorphic copies are merged through their canonical form.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec::Vec;

use crate::canon::{canonical_form, canonical_labeling, CanonicalForm};
use crate::graph::Graph;
use crate::paths::count_paths;
use crate::{Error, Result};

/// Default ceiling on `n` for [`all_triangulations`].
pub const TRIANGULATION_LIMIT: usize = 11;

/// A triangulation with its face set. Faces are sorted triples, kept sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Triangulation {
    graph: Graph,
    faces: Vec<[usize; 3]>,
}

fn face(a: usize, b: usize, c: usize) -> [usize; 3] {
    let mut f = [a, b, c];
    f.sort_unstable();
    f
}

impl Triangulation {
    /// Validates the embedding data: `e = 3n − 6`, `2n − 4` distinct faces,
    /// every face edge present, every edge on exactly two faces.
    pub fn new(graph: Graph, mut faces: Vec<[usize; 3]>) -> Result<Self> {
        for f in &mut faces {
            f.sort_unstable();
        }
        faces.sort_unstable();
        let t = Triangulation { graph, faces };
        t.check()?;
        Ok(t)
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn faces(&self) -> &[[usize; 3]] {
        &self.faces
    }

    pub fn into_graph(self) -> Graph {
        self.graph
    }

    pub fn check(&self) -> Result<()> {
        let n = self.graph.n();
        let bad = |msg: alloc::string::String| Err(Error::Precondition(msg));
        if n < 4 {
            return bad(format!("triangulation needs n >= 4, got {n}"));
        }
        if self.graph.edge_count() != 3 * n - 6 {
            return bad(format!("expected {} edges, found {}", 3 * n - 6, self.graph.edge_count()));
        }
        if self.faces.len() != 2 * n - 4 {
            return bad(format!("expected {} faces, found {}", 2 * n - 4, self.faces.len()));
        }
        if self.faces.windows(2).any(|w| w[0] == w[1]) {
            return bad("repeated face".into());
        }
        let mut incidence = alloc::collections::BTreeMap::new();
        for &[a, b, c] in &self.faces {
            if a == b || b == c || c >= n {
                return bad(format!("malformed face {a},{b},{c}"));
            }
            for e in [(a, b), (a, c), (b, c)] {
                if !self.graph.has_edge(e.0, e.1) {
                    return bad(format!("face edge {}-{} missing", e.0, e.1));
                }
                *incidence.entry(e).or_insert(0usize) += 1;
            }
        }
        for e in self.graph.edges() {
            if incidence.get(&e) != Some(&2) {
                return bad(format!("edge {}-{} is not on exactly two faces", e.0, e.1));
            }
        }
        Ok(())
    }

    /// Flips the edge `uv`: with faces `uvw` and `uvx`, replaces `uv` by `wx`.
    /// `None` when `wx` is already an edge.
    pub fn flip(&self, u: usize, v: usize) -> Result<Option<Triangulation>> {
        if u == v || !self.graph.has_edge(u, v) {
            return Err(Error::MissingEdge(u, v));
        }
        let mut opposite = Vec::with_capacity(2);
        let mut kept = Vec::with_capacity(self.faces.len());
        for f in &self.faces {
            if f.contains(&u) && f.contains(&v) {
                opposite.push(f.iter().copied().find(|&c| c != u && c != v).unwrap());
            } else {
                kept.push(*f);
            }
        }
        let [w, x] = opposite[..] else {
            return Err(Error::Precondition(format!("edge {u}-{v} is not on exactly two faces")));
        };
        if w == x || self.graph.has_edge(w, x) {
            return Ok(None);
        }
        let (a, b) = (u.min(v), u.max(v));
        let graph = Graph::from_edges(
            self.graph.n(),
            self.graph.edges().filter(|&e| e != (a, b)).chain(core::iter::once((w, x))),
        )?;
        kept.push(face(u, w, x));
        kept.push(face(v, w, x));
        kept.sort_unstable();
        Ok(Some(Triangulation { graph, faces: kept }))
    }

    /// Renames vertex `v` to `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Triangulation {
        let mut faces: Vec<[usize; 3]> = self
            .faces
            .iter()
            .map(|&[a, b, c]| face(perm[a], perm[b], perm[c]))
            .collect();
        faces.sort_unstable();
        Triangulation {
            graph: self.graph.relabel(perm),
            faces,
        }
    }
}

/// The stacked triangulation: `K_4`, then each new vertex goes into the
/// lexicographically first face and is joined to its three corners.
pub fn base_triangulation(n: usize) -> Result<Triangulation> {
    if n < 4 {
        return Err(Error::InvalidParameter(format!("triangulation needs n >= 4, got {n}")));
    }
    let mut edges: Vec<(usize, usize)> = Graph::complete(4).edges().collect();
    let mut faces = alloc::vec![face(0, 1, 2), face(0, 1, 3), face(0, 2, 3), face(1, 2, 3)];
    for v in 4..n {
        let [a, b, c] = faces.remove(0);
        edges.extend([(a, v), (b, v), (c, v)]);
        faces.extend([face(a, b, v), face(a, c, v), face(b, c, v)]);
        faces.sort_unstable();
    }
    Triangulation::new(Graph::from_edges(n, edges)?, faces)
}

/// Pairwise non-isomorphic triangulations on `n` vertices, canonically
/// labelled and sorted by canonical form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Catalog {
    n: usize,
    members: Vec<Graph>,
    forms: Vec<CanonicalForm>,
    /// Number of breadth-first layers (0 when loaded from storage).
    pub depth: usize,
    /// Flips attempted while generating (0 when loaded from storage).
    pub flips: u64,
}

impl Catalog {
    /// Rebuilds a catalog from stored members, checking that each is a
    /// canonically labelled graph with `3n − 6` edges and that the list is
    /// strictly increasing in canonical form.
    pub fn from_members(n: usize, members: Vec<Graph>) -> Result<Catalog> {
        let mut forms = Vec::with_capacity(members.len());
        for (i, g) in members.iter().enumerate() {
            if g.n() != n || n < 4 || g.edge_count() != 3 * n - 6 {
                return Err(Error::Precondition(format!(
                    "member {i} is not a triangulation on {n} vertices"
                )));
            }
            let form = canonical_form(g)?;
            if form.to_graph() != *g {
                return Err(Error::Precondition(format!("member {i} is not canonically labelled")));
            }
            if forms.last().is_some_and(|&last| last >= form) {
                return Err(Error::Precondition(format!(
                    "member {i} is out of order or duplicated"
                )));
            }
            forms.push(form);
        }
        Ok(Catalog {
            n,
            members,
            forms,
            depth: 0,
            flips: 0,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[Graph] {
        &self.members
    }

    pub fn forms(&self) -> &[CanonicalForm] {
        &self.forms
    }

    /// Largest number of `P_k` over the members and the first member (in
    /// catalog order) attaining it.
    pub fn max_paths(&self, k: usize) -> Option<(u64, &Graph)> {
        let counts = map_members(&self.members, |g| count_paths(g, k));
        let mut best: Option<(u64, usize)> = None;
        for (i, c) in counts.into_iter().enumerate() {
            if best.is_none_or(|(b, _)| c > b) {
                best = Some((c, i));
            }
        }
        best.map(|(c, i)| (c, &self.members[i]))
    }
}

#[cfg(feature = "parallel")]
fn map_members<T: Send, U: Sync, F: Fn(&U) -> T + Sync + Send>(items: &[U], f: F) -> Vec<T> {
    use rayon::prelude::*;
    items.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
fn map_members<T, U, F: Fn(&U) -> T>(items: &[U], f: F) -> Vec<T> {
    items.iter().map(f).collect()
}

pub fn all_triangulations(n: usize) -> Result<Catalog> {
    all_triangulations_with_limit(n, TRIANGULATION_LIMIT)
}

pub fn all_triangulations_with_limit(n: usize, limit: usize) -> Result<Catalog> {
    if n > limit || n > crate::canon::CANON_LIMIT {
        return Err(Error::TooLarge {
            what: "triangulation enumeration",
            n,
            limit: limit.min(crate::canon::CANON_LIMIT),
        });
    }
    let seed = base_triangulation(n)?;
    let (form, perm) = canonical_labeling(seed.graph())?;
    let mut seen: BTreeSet<CanonicalForm> = BTreeSet::new();
    seen.insert(form);
    let mut members = alloc::vec![(form, seed.relabel(&perm).into_graph())];
    let mut frontier = alloc::vec![(form, seed.relabel(&perm))];
    let mut depth = 0;
    let mut flips = 0u64;

    while !frontier.is_empty() {
        let expansions = map_members(&frontier, |(_, t)| expand(t));
        let mut next = Vec::new();
        for found in expansions {
            let found = found?;
            flips += found.len() as u64;
            for (form, t, perm) in found {
                if seen.insert(form) {
                    let t = t.relabel(&perm);
                    members.push((form, t.graph().clone()));
                    next.push((form, t));
                }
            }
        }
        next.sort_unstable_by_key(|(f, _)| *f);
        frontier = next;
        if !frontier.is_empty() {
            depth += 1;
        }
    }

    members.sort_unstable_by_key(|(f, _)| *f);
    let (forms, members) = members.into_iter().unzip();
    Ok(Catalog {
        n,
        members,
        forms,
        depth,
        flips,
    })
}

type Flipped = (CanonicalForm, Triangulation, Vec<usize>);

fn expand(t: &Triangulation) -> Result<Vec<Flipped>> {
    let mut out = Vec::new();
    for (u, v) in t.graph().edges() {
        if let Some(f) = t.flip(u, v)? {
            let (form, perm) = canonical_labeling(f.graph())?;
            out.push((form, f, perm));
        }
    }
    Ok(out)
}

/// `f(n, P_k)` by enumeration, with a witness.
pub fn f_exact(n: usize, k: usize) -> Result<(u64, Graph)> {
    let catalog = all_triangulations(n)?;
    let (v, g) = catalog.max_paths(k).expect("catalog is never empty for n >= 4");
    Ok((v, g.clone()))
}
