//! Extremal families `S_n^k`, `T_n^k`, their edge-deleted classes, and the
//! small exception graphs that the Hamilton-connectedness conditions exclude.
//!
//! Labeling is fixed: the join clique comes first, then the large clique,
//! then the independent (or pendant) block. With this convention
//!
//! - `S_n^k = K_k ∨ (K_{n−2k+1} + (k−1)K_1)` has join block `0..k`, clique
//!   `k..n−k+1`, independent block `n−k+1..n`;
//! - `T_n^k = K_2 ∨ (K_{n−k−1} + K_{k−1})` has join block `{0, 1}`, clique
//!   `2..n−k+1`, small clique `n−k+1..n`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{bit, bits, choose2, DegreeSequence, Graph};
use crate::iso::are_isomorphic;
use crate::spectra::Partition;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    S,
    T,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::S => "S",
            Family::T => "T",
        })
    }
}

fn check_params(n: usize, k: usize) -> Result<()> {
    if n < 5 || k < 1 || 2 * k > n {
        return Err(Error::input(format!(
            "family parameters need n >= 5 and 1 <= k <= n/2, got n={n}, k={k}"
        )));
    }
    Ok(())
}

/// `K_k ∨ (K_{n−2k+1} + (k−1)K_1)`.
pub fn s_graph(n: usize, k: usize) -> Result<Graph> {
    check_params(n, k)?;
    let rest = Graph::complete(n - 2 * k + 1).disjoint_union(&Graph::empty(k - 1))?;
    Graph::complete(k).join(&rest)
}

/// `K_2 ∨ (K_{n−k−1} + K_{k−1})`.
pub fn t_graph(n: usize, k: usize) -> Result<Graph> {
    check_params(n, k)?;
    let rest = Graph::complete(n - k - 1).disjoint_union(&Graph::complete(k - 1))?;
    Graph::complete(2).join(&rest)
}

/// Edge count of `S_n^k`.
pub fn s_edge_count(n: usize, k: usize) -> usize {
    choose2(k) + k * (n - k) + choose2(n - 2 * k + 1)
}

/// Edge count of `T_n^k`.
pub fn t_edge_count(n: usize, k: usize) -> usize {
    1 + 2 * (n - 2) + choose2(n - k - 1) + choose2(k - 1)
}

/// A class of graphs obtained from `S_n^k` or `T_n^k` by deleting exactly
/// `t` edges while keeping minimum degree at least 3.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FamilySpec {
    pub family: Family,
    pub n: usize,
    pub k: usize,
    pub t: usize,
}

impl FamilySpec {
    pub fn new(family: Family, n: usize, k: usize, t: usize) -> Result<FamilySpec> {
        check_params(n, k)?;
        let spec = FamilySpec { family, n, k, t };
        if t > spec.base_edge_count() {
            return Err(Error::input(format!(
                "cannot delete {t} edges from a graph with {}",
                spec.base_edge_count()
            )));
        }
        Ok(spec)
    }

    pub fn base(&self) -> Graph {
        match self.family {
            Family::S => s_graph(self.n, self.k),
            Family::T => t_graph(self.n, self.k),
        }
        .expect("parameters validated on construction")
    }

    pub fn base_edge_count(&self) -> usize {
        match self.family {
            Family::S => s_edge_count(self.n, self.k),
            Family::T => t_edge_count(self.n, self.k),
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}_{}^{}({})", self.family, self.n, self.k, self.t)
    }
}

/// Streams the graphs of a deleted class in lexicographic order of the
/// deleted edge subsets. Deletions that would drop a degree below 3 are
/// pruned as soon as they are chosen.
pub struct DeletedEdges {
    base: Graph,
    edges: Vec<(usize, usize)>,
    t: usize,
    chosen: Vec<usize>,
    cursor: usize,
    degrees: Vec<usize>,
    emitted_last: bool,
    done: bool,
}

impl DeletedEdges {
    fn new(spec: &FamilySpec) -> Self {
        let base = spec.base();
        let degrees = base.degrees();
        let done = base.min_degree() < 3;
        DeletedEdges {
            edges: base.edges().collect(),
            base,
            t: spec.t,
            chosen: Vec::with_capacity(spec.t),
            cursor: 0,
            degrees,
            emitted_last: false,
            done,
        }
    }

    fn pop(&mut self) -> bool {
        match self.chosen.pop() {
            Some(i) => {
                let (u, v) = self.edges[i];
                self.degrees[u] += 1;
                self.degrees[v] += 1;
                self.cursor = i + 1;
                true
            }
            None => false,
        }
    }
}

impl Iterator for DeletedEdges {
    type Item = Graph;

    fn next(&mut self) -> Option<Graph> {
        if self.done {
            return None;
        }
        if self.t == 0 {
            self.done = true;
            return Some(self.base.clone());
        }
        if self.emitted_last {
            self.emitted_last = false;
            self.pop();
        }
        loop {
            if self.chosen.len() == self.t {
                self.emitted_last = true;
                let del: Vec<(usize, usize)> = self.chosen.iter().map(|&i| self.edges[i]).collect();
                return Some(self.base.without_edges(&del).expect("edges of the base graph"));
            }
            let remaining = self.t - self.chosen.len();
            if self.cursor + remaining > self.edges.len() {
                if !self.pop() {
                    self.done = true;
                    return None;
                }
                continue;
            }
            let i = self.cursor;
            let (u, v) = self.edges[i];
            self.cursor += 1;
            if self.degrees[u] > 3 && self.degrees[v] > 3 {
                self.degrees[u] -= 1;
                self.degrees[v] -= 1;
                self.chosen.push(i);
            }
        }
    }
}

/// All members of the class; with `dedup`, one per isomorphism class
/// (first in lexicographic order).
pub fn enumerate_deleted(spec: &FamilySpec, dedup: bool) -> Box<dyn Iterator<Item = Graph>> {
    let stream = DeletedEdges::new(spec);
    if !dedup {
        return Box::new(stream);
    }
    let mut buckets: HashMap<DegreeSequence, Vec<Graph>> = HashMap::new();
    Box::new(stream.filter(move |g| {
        let bucket = buckets.entry(g.degree_sequence()).or_default();
        if bucket.iter().any(|h| are_isomorphic(g, h)) {
            return false;
        }
        bucket.push(g.clone());
        true
    }))
}

/// `count` uniformly random members (with repetition), for classes too large
/// to enumerate. Fails if no member turns up within a bounded number of
/// draws.
pub fn sample_deleted(spec: &FamilySpec, count: usize, seed: u64) -> Result<Vec<Graph>> {
    let base = spec.base();
    let degrees = base.degrees();
    let edges: Vec<(usize, usize)> = base
        .edges()
        .filter(|&(u, v)| degrees[u] > 3 && degrees[v] > 3)
        .collect();
    if spec.t > edges.len() {
        return Err(Error::input(format!("{spec} is empty")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    let mut misses = 0usize;
    while out.len() < count {
        let del: Vec<(usize, usize)> =
            sample(&mut rng, edges.len(), spec.t).iter().map(|i| edges[i]).collect();
        let g = base.without_edges(&del)?;
        if g.min_degree() >= 3 {
            out.push(g);
        } else {
            misses += 1;
            if misses > 1_000_000 {
                return Err(Error::Numeric(format!("no member of {spec} found by sampling")));
            }
        }
    }
    Ok(out)
}

/// An independent set `I` of `k − 1` vertices with `|N(I)| ≤ k`. Such a set
/// exists iff `G` is a spanning subgraph of some relabeling of `S_n^k`
/// (`I` plays the independent block and `N(I)` fits in the join block).
pub fn s_certificate(g: &Graph, k: usize) -> Option<Vec<usize>> {
    let n = g.n();
    if k == 0 || 2 * k > n {
        return None;
    }
    let cands: Vec<usize> = (0..n).filter(|&v| g.degree(v) <= k).collect();
    let mut chosen = Vec::with_capacity(k - 1);
    fn go(g: &Graph, k: usize, cands: &[usize], from: usize, chosen: &mut Vec<usize>, nb: u64) -> bool {
        if chosen.len() == k - 1 {
            return true;
        }
        for i in from..cands.len() {
            let v = cands[i];
            if chosen.iter().any(|&u| g.has_edge(u, v)) {
                continue;
            }
            let nb2 = nb | g.neighbors(v);
            if nb2.count_ones() as usize > k {
                continue;
            }
            chosen.push(v);
            if go(g, k, cands, i + 1, chosen, nb2) {
                return true;
            }
            chosen.pop();
        }
        false
    }
    go(g, k, &cands, 0, &mut chosen, 0).then_some(chosen)
}

/// A set `P` of `k − 1` vertices with at most two neighbours outside `P`.
/// Such a set exists iff `G` is a spanning subgraph of some relabeling of
/// `T_n^k` (`P` plays the small clique, its outside neighbours the join
/// edge).
pub fn t_certificate(g: &Graph, k: usize) -> Option<Vec<usize>> {
    let n = g.n();
    if k == 0 || 2 * k > n {
        return None;
    }
    let cands: Vec<usize> = (0..n).filter(|&v| g.degree(v) <= k).collect();
    let mut chosen = Vec::with_capacity(k - 1);
    fn go(g: &Graph, k: usize, cands: &[usize], from: usize, chosen: &mut Vec<usize>) -> bool {
        if chosen.len() == k - 1 {
            let set = chosen.iter().fold(0u64, |m, &v| m | bit(v));
            let outside = chosen.iter().fold(0u64, |m, &v| m | g.neighbors(v)) & !set;
            return outside.count_ones() <= 2;
        }
        (from..cands.len()).any(|i| {
            chosen.push(cands[i]);
            let ok = go(g, k, cands, i + 1, chosen);
            if !ok {
                chosen.pop();
            }
            ok
        })
    }
    go(g, k, &cands, 0, &mut chosen).then_some(chosen)
}

/// Spanning subgraph of a relabeled `S_n^3`: two nonadjacent vertices
/// sharing the same three neighbours (given `δ ≥ 3`).
pub fn membership_certificate_s3(g: &Graph) -> bool {
    s_certificate(g, 3).is_some()
}

/// Spanning subgraph of a relabeled `T_n^3`: two adjacent vertices of
/// degree 3 with the same closed neighbourhood (given `δ ≥ 3`).
pub fn membership_certificate_t3(g: &Graph) -> bool {
    t_certificate(g, 3).is_some()
}

/// Membership in the union of the deleted classes of `(family, n, k)` with
/// `t ≤ max_t` (any `t` when `None`). Requires `δ ≥ 3` and the order of `g`
/// to equal `n`.
pub fn in_deleted_family(g: &Graph, family: Family, k: usize, max_t: Option<usize>) -> bool {
    let n = g.n();
    if check_params(n, k).is_err() || g.min_degree() < 3 {
        return false;
    }
    let base = match family {
        Family::S => s_edge_count(n, k),
        Family::T => t_edge_count(n, k),
    };
    let m = g.edge_count();
    if m > base || max_t.is_some_and(|t| base - m > t) {
        return false;
    }
    match family {
        Family::S => s_certificate(g, k).is_some(),
        Family::T => t_certificate(g, k).is_some(),
    }
}

/// One-edge-deleted graphs of `S_n^3` (`H*`) and `T_n^3` (`T*`), one per
/// possible degree sequence.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Variant {
    /// `S_n^3` minus an edge inside the join block.
    H1,
    /// `S_n^3` minus an edge between the join block and the large clique.
    H2,
    /// `S_n^3` minus an edge inside the large clique.
    H3,
    /// `T_n^3` minus the join edge.
    T1,
    /// `T_n^3` minus an edge between the join block and the large clique.
    T2,
    /// `T_n^3` minus an edge inside the large clique.
    T3,
}

impl Variant {
    pub const ALL: [Variant; 6] = [
        Variant::H1,
        Variant::H2,
        Variant::H3,
        Variant::T1,
        Variant::T2,
        Variant::T3,
    ];

    pub fn family(self) -> Family {
        match self {
            Variant::H1 | Variant::H2 | Variant::H3 => Family::S,
            _ => Family::T,
        }
    }

    fn deleted_edge(self) -> (usize, usize) {
        match self {
            Variant::H1 => (0, 1),
            Variant::H2 => (0, 3),
            Variant::H3 => (3, 4),
            Variant::T1 => (0, 1),
            Variant::T2 => (0, 2),
            Variant::T3 => (2, 3),
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Variant> {
        Variant::ALL
            .into_iter()
            .find(|v| v.to_string().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::input(format!("unknown variant '{s}' (expected H1-H3 or T1-T3)")))
    }
}

pub fn named_variant(v: Variant, n: usize) -> Result<Graph> {
    if n < 11 {
        return Err(Error::input(format!("variant {v} needs n >= 11, got {n}")));
    }
    let base = match v.family() {
        Family::S => s_graph(n, 3)?,
        Family::T => t_graph(n, 3)?,
    };
    let (a, b) = v.deleted_edge();
    base.without_edge(a, b)
}

/// Equitable partition used for the quotient of `H3` / `T3`: rest of the
/// large clique, the two ends of the deleted edge, the join block, the
/// outer block.
pub fn variant_partition(v: Variant, n: usize) -> Result<Partition> {
    if n < 11 {
        return Err(Error::input(format!("variant {v} needs n >= 11, got {n}")));
    }
    match v {
        Variant::H3 => Partition::new(vec![
            (5..n - 2).collect(),
            vec![3, 4],
            vec![0, 1, 2],
            vec![n - 2, n - 1],
        ]),
        Variant::T3 => Partition::new(vec![
            (4..n - 2).collect(),
            vec![2, 3],
            vec![0, 1],
            vec![n - 2, n - 1],
        ]),
        _ => Err(Error::input(format!("no quotient partition defined for {v}"))),
    }
}

/// Join block, large clique, independent block of `S_n^k`.
pub fn s_partition(n: usize, k: usize) -> Result<Partition> {
    check_params(n, k)?;
    let mut blocks = vec![(0..k).collect::<Vec<_>>(), (k..n - k + 1).collect()];
    if k > 1 {
        blocks.push((n - k + 1..n).collect());
    }
    Partition::new(blocks)
}

/// Join block, large clique, small clique of `T_n^k`.
pub fn t_partition(n: usize, k: usize) -> Result<Partition> {
    check_params(n, k)?;
    let mut blocks = vec![vec![0, 1]];
    if n - k + 1 > 2 {
        blocks.push((2..n - k + 1).collect());
    }
    if k > 1 {
        blocks.push((n - k + 1..n).collect());
    }
    Partition::new(blocks)
}

/// A named small graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedGraph {
    pub name: String,
    pub graph: Graph,
}

fn named(name: impl Into<String>, graph: Result<Graph>) -> NamedGraph {
    NamedGraph {
        name: name.into(),
        graph: graph.expect("fixed construction"),
    }
}

fn e(n: usize) -> Graph {
    Graph::empty(n)
}

fn k(n: usize) -> Graph {
    Graph::complete(n)
}

fn plus(a: Graph, b: Graph) -> Result<Graph> {
    a.disjoint_union(&b)
}

/// The members of the non-Hamilton-connected exception set for the
/// `C(n−2,2) + 6` edge condition that have order `n`.
pub fn np1_graphs(n: usize) -> Vec<NamedGraph> {
    let mut out = Vec::new();
    if n >= 6 {
        out.push(named(
            format!("K3+(K{}+2K1)", n - 5),
            plus(k(n - 5), e(2)).and_then(|r| k(3).join(&r)),
        ));
    }
    let fixed: Vec<(usize, &str, Result<Graph>)> = vec![
        (12, "K6+6K1", k(6).join(&e(6))),
        (9, "K4+(K2+3K1)", plus(k(2), e(3)).and_then(|r| k(4).join(&r))),
        (10, "5K1+K5", e(5).join(&k(5))),
        (10, "K4+(K1,4+K1)", plus(Graph::star(4), e(1)).and_then(|r| k(4).join(&r))),
        (10, "K4+(K1,3+K2)", plus(Graph::star(3), k(2)).and_then(|r| k(4).join(&r))),
        (10, "K3+K2,5", k(3).join(&Graph::complete_bipartite(2, 5))),
        (8, "K4+4K1", k(4).join(&e(4))),
        (8, "K3+(K1+K1,3)", plus(e(1), Graph::star(3)).and_then(|r| k(3).join(&r))),
        (8, "K3+(K1,2+K2)", plus(Graph::star(2), k(2)).and_then(|r| k(3).join(&r))),
        (8, "K2+K2,4", k(2).join(&Graph::complete_bipartite(2, 4))),
    ];
    for (order, name, g) in fixed {
        if order == n {
            out.push(named(name, g));
        }
    }
    out
}

/// Whether `g` is isomorphic to a member of [`np1_graphs`] of its order.
pub fn is_np1_member(g: &Graph) -> bool {
    np1_graphs(g.n()).iter().any(|m| are_isomorphic(&m.graph, g))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sporadic {
    /// `S_11^5 = K_5 ∨ (K_2 + 4K_1)`.
    S11_5,
    /// `S_13^6 = K_6 ∨ (K_2 + 5K_1)`.
    S13_6,
    /// `K_7 ∨ (K_2 + K_{1,6})`, order 16.
    K7K2K16,
    /// `K_{n−1}` plus one vertex adjacent to exactly two clique vertices.
    CliquePlusCherry,
}

impl Sporadic {
    pub const ALL: [Sporadic; 4] = [
        Sporadic::S11_5,
        Sporadic::S13_6,
        Sporadic::K7K2K16,
        Sporadic::CliquePlusCherry,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Sporadic::S11_5 => "S11_5",
            Sporadic::S13_6 => "S13_6",
            Sporadic::K7K2K16 => "K7_K2_K16",
            Sporadic::CliquePlusCherry => "Kn1_ee",
        }
    }
}

impl fmt::Display for Sporadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Sporadic {
    type Err = Error;

    fn from_str(s: &str) -> Result<Sporadic> {
        Sporadic::ALL
            .into_iter()
            .find(|x| x.id().eq_ignore_ascii_case(s))
            .ok_or_else(|| {
                Error::input(format!(
                    "unknown sporadic graph '{s}' (expected S11_5, S13_6, K7_K2_K16 or Kn1_ee)"
                ))
            })
    }
}

/// `n` is read only for [`Sporadic::CliquePlusCherry`], which needs `n >= 4`.
pub fn sporadic_exception(which: Sporadic, n: Option<usize>) -> Result<Graph> {
    match which {
        Sporadic::S11_5 => s_graph(11, 5),
        Sporadic::S13_6 => s_graph(13, 6),
        Sporadic::K7K2K16 => plus(k(2), Graph::star(6)).and_then(|r| k(7).join(&r)),
        Sporadic::CliquePlusCherry => {
            let n = n.ok_or_else(|| Error::input("Kn1_ee needs an order n"))?;
            if n < 4 {
                return Err(Error::input(format!("Kn1_ee needs n >= 4, got {n}")));
            }
            k(n - 1).disjoint_union(&e(1))?.with_edge(0, n - 1)?.with_edge(1, n - 1)
        }
    }
}

/// `K_{n−1}` plus a vertex of degree exactly 2, up to isomorphism.
pub fn is_clique_plus_cherry(g: &Graph) -> bool {
    let n = g.n();
    if n < 4 || g.edge_count() != choose2(n - 1) + 2 {
        return false;
    }
    let Some(v) = (0..n).find(|&v| g.degree(v) == 2) else {
        return false;
    };
    let rest = crate::graph::full_mask(n) & !bit(v);
    bits(rest).all(|u| g.neighbors(u) & rest == rest & !bit(u))
}
