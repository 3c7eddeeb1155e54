//! Simple undirected graphs on at most 64 labeled vertices.
//!
//! A [`Graph`] stores one `u64` neighbour bitrow per vertex. Values are
//! immutable: every edit returns a new graph, so graphs can be shared freely
//! between harness workers.

use std::fmt;

use crate::error::{Error, Result};

/// Largest supported order (width of a bitrow).
pub const MAX_ORDER: usize = 64;

#[inline]
pub(crate) fn bit(v: usize) -> u64 {
    1u64 << v
}

#[inline]
pub(crate) fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Iterates the set bits of a mask in increasing order.
pub(crate) fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let v = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(v)
        }
    })
}

fn check_order(n: usize) -> Result<()> {
    if n > MAX_ORDER {
        Err(Error::TooLarge { n, max: MAX_ORDER })
    } else {
        Ok(())
    }
}

/// Undirected simple graph with vertices `0..n`.
///
/// Invariants: rows are symmetric, no vertex is its own neighbour, and no row
/// has bits at or above `n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    rows: Vec<u64>,
}

impl Graph {
    /// Builds a graph from an edge list. Duplicate pairs (in either
    /// orientation) collapse to one edge.
    pub fn build(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        check_order(n)?;
        let mut rows = vec![0u64; n];
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::Loop(u));
            }
            rows[u] |= bit(v);
            rows[v] |= bit(u);
        }
        Ok(Graph { n, rows })
    }

    /// Builds a graph from raw bitrows, validating every invariant.
    pub fn from_rows(rows: Vec<u64>) -> Result<Graph> {
        let n = rows.len();
        check_order(n)?;
        let mask = full_mask(n);
        for (v, &row) in rows.iter().enumerate() {
            if row & !mask != 0 {
                return Err(Error::input(format!("row {v} has bits beyond order {n}")));
            }
            if row & bit(v) != 0 {
                return Err(Error::Loop(v));
            }
            for u in bits(row) {
                if rows[u] & bit(v) == 0 {
                    return Err(Error::input(format!("adjacency not symmetric at ({v},{u})")));
                }
            }
        }
        Ok(Graph { n, rows })
    }

    /// `n` isolated vertices (`nK1`). Panics if `n > 64`.
    pub fn empty(n: usize) -> Graph {
        assert!(n <= MAX_ORDER, "order {n} exceeds {MAX_ORDER}");
        Graph { n, rows: vec![0; n] }
    }

    /// `K_n`. Panics if `n > 64`.
    pub fn complete(n: usize) -> Graph {
        assert!(n <= MAX_ORDER, "order {n} exceeds {MAX_ORDER}");
        let mask = full_mask(n);
        Graph {
            n,
            rows: (0..n).map(|v| mask & !bit(v)).collect(),
        }
    }

    /// `C_n` on `0-1-…-(n-1)-0`; requires `3 <= n <= 64`.
    pub fn cycle(n: usize) -> Graph {
        assert!((3..=MAX_ORDER).contains(&n), "cycle order {n} out of range");
        let edges: Vec<_> = (0..n).map(|v| (v, (v + 1) % n)).collect();
        Graph::build(n, &edges).expect("valid cycle")
    }

    /// `P_n` on `0-1-…-(n-1)`.
    pub fn path(n: usize) -> Graph {
        assert!(n <= MAX_ORDER, "order {n} exceeds {MAX_ORDER}");
        let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        Graph::build(n, &edges).expect("valid path")
    }

    /// `K_{a,b}` with the `a`-side labeled first.
    pub fn complete_bipartite(a: usize, b: usize) -> Graph {
        Graph::empty(a).join(&Graph::empty(b)).expect("order within bounds")
    }

    /// `K_{1,leaves}` with the centre labeled 0.
    pub fn star(leaves: usize) -> Graph {
        Graph::complete_bipartite(1, leaves)
    }

    /// The Petersen graph: outer 5-cycle `0..5`, inner pentagram `5..10`.
    pub fn petersen() -> Graph {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((5 + i, 5 + (i + 2) % 5));
        }
        Graph::build(10, &edges).expect("valid Petersen graph")
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn rows(&self) -> &[u64] {
        &self.rows
    }

    /// Neighbour bitrow of `v`.
    #[inline]
    pub fn neighbors(&self, v: usize) -> u64 {
        self.rows[v]
    }

    pub fn neighbor_list(&self, v: usize) -> Vec<usize> {
        bits(self.rows[v]).collect()
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u] & bit(v) != 0
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.rows[v].count_ones() as usize
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn edge_count(&self) -> usize {
        let twice: usize = self.rows.iter().map(|r| r.count_ones() as usize).sum();
        twice / 2
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| bits(self.rows[u] & !full_mask(u + 1)).map(move |v| (u, v)))
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.n {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n })
        } else {
            Ok(())
        }
    }

    /// Copy of the graph with edge `uv` added.
    pub fn with_edge(&self, u: usize, v: usize) -> Result<Graph> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::Loop(u));
        }
        let mut g = self.clone();
        g.rows[u] |= bit(v);
        g.rows[v] |= bit(u);
        Ok(g)
    }

    /// Copy of the graph with edge `uv` removed (no-op if absent).
    pub fn without_edge(&self, u: usize, v: usize) -> Result<Graph> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        let mut g = self.clone();
        g.rows[u] &= !bit(v);
        g.rows[v] &= !bit(u);
        Ok(g)
    }

    /// Copy of the graph with every listed edge removed.
    pub fn without_edges(&self, edges: &[(usize, usize)]) -> Result<Graph> {
        let mut g = self.clone();
        for &(u, v) in edges {
            self.check_vertex(u)?;
            self.check_vertex(v)?;
            g.rows[u] &= !bit(v);
            g.rows[v] &= !bit(u);
        }
        Ok(g)
    }

    /// Disjoint union `G + H`; `H`'s vertices are shifted by `n_G`.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph> {
        let n = self.n + other.n;
        check_order(n)?;
        let shift = self.n;
        let rows = self
            .rows
            .iter()
            .copied()
            .chain(other.rows.iter().map(|&r| r << shift))
            .collect();
        Ok(Graph { n, rows })
    }

    /// Join `G ∨ H`: disjoint union plus every edge between the two sides.
    pub fn join(&self, other: &Graph) -> Result<Graph> {
        let mut g = self.disjoint_union(other)?;
        let left = full_mask(self.n);
        let right = full_mask(g.n) & !left;
        for v in 0..g.n {
            g.rows[v] |= if v < self.n { right } else { left };
        }
        Ok(g)
    }

    /// `k` disjoint copies of `self`.
    pub fn copies(&self, k: usize) -> Result<Graph> {
        let mut g = Graph::empty(0);
        for _ in 0..k {
            g = g.disjoint_union(self)?;
        }
        Ok(g)
    }

    pub fn complement(&self) -> Graph {
        let mask = full_mask(self.n);
        Graph {
            n: self.n,
            rows: (0..self.n).map(|v| !self.rows[v] & mask & !bit(v)).collect(),
        }
    }

    pub fn degree_sequence(&self) -> DegreeSequence {
        let mut d = self.degrees();
        d.sort_unstable();
        DegreeSequence(d)
    }

    /// Kelmans transformation: every edge `vx` with `x ∈ N(v) \ N[u]` is
    /// replaced by `ux`.
    pub fn kelmans(&self, u: usize, v: usize) -> Result<Graph> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::input("kelmans requires distinct vertices"));
        }
        let moved = self.rows[v] & !(self.rows[u] | bit(u));
        let mut g = self.clone();
        g.rows[v] &= !moved;
        g.rows[u] |= moved;
        for x in bits(moved) {
            g.rows[x] = (g.rows[x] & !bit(v)) | bit(u);
        }
        Ok(g)
    }

    /// Connected components as vertex masks, ordered by smallest vertex.
    pub fn components(&self) -> Vec<u64> {
        let mut seen = 0u64;
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen & bit(s) != 0 {
                continue;
            }
            let comp = self.reach_from(s);
            seen |= comp;
            out.push(comp);
        }
        out
    }

    fn reach_from(&self, s: usize) -> u64 {
        let mut comp = bit(s);
        let mut frontier = bit(s);
        while frontier != 0 {
            let mut next = 0u64;
            for v in bits(frontier) {
                next |= self.rows[v];
            }
            frontier = next & !comp;
            comp |= next;
        }
        comp
    }

    /// True iff the graph has at most one component (`K_0` and `K_1` count
    /// as connected).
    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.reach_from(0) == full_mask(self.n)
    }

    /// Graph whose vertex `perm[v]` plays the role of `v` in `self`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Graph> {
        if perm.len() != self.n {
            return Err(Error::input("permutation length differs from order"));
        }
        let mut seen = 0u64;
        for &p in perm {
            self.check_vertex(p)?;
            if seen & bit(p) != 0 {
                return Err(Error::input("relabeling is not a permutation"));
            }
            seen |= bit(p);
        }
        let mut rows = vec![0u64; self.n];
        for (u, v) in self.edges() {
            rows[perm[u]] |= bit(perm[v]);
            rows[perm[v]] |= bit(perm[u]);
        }
        Ok(Graph { n: self.n, rows })
    }

    /// Same vertex set and every edge of `self` is an edge of `other`.
    pub fn is_spanning_subgraph_of(&self, other: &Graph) -> bool {
        self.n == other.n && self.rows.iter().zip(&other.rows).all(|(a, b)| a & !b == 0)
    }

    /// Subgraph induced by the vertices in `mask`, relabeled in increasing order.
    pub fn induced(&self, mask: u64) -> Graph {
        let keep: Vec<usize> = bits(mask & full_mask(self.n)).collect();
        let mut rows = vec![0u64; keep.len()];
        for (i, &u) in keep.iter().enumerate() {
            for (j, &v) in keep.iter().enumerate() {
                if self.has_edge(u, v) {
                    rows[i] |= bit(j);
                }
            }
        }
        Graph {
            n: keep.len(),
            rows,
        }
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let edges: Vec<_> = self.edges().collect();
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &edges)
            .finish()
    }
}

/// Degree sequence sorted nondecreasingly, read with 1-based indices
/// (`d(1) <= d(2) <= … <= d(n)`).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DegreeSequence(Vec<usize>);

impl DegreeSequence {
    /// Validates order, range (`d_n <= n-1`) and parity.
    pub fn new(d: Vec<usize>) -> Result<Self> {
        if d.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::input("degree sequence is not nondecreasing"));
        }
        if let Some(&top) = d.last() {
            if top >= d.len() {
                return Err(Error::input(format!(
                    "degree {top} impossible on {} vertices",
                    d.len()
                )));
            }
        }
        if d.iter().sum::<usize>() % 2 != 0 {
            return Err(Error::input("degree sum is odd"));
        }
        Ok(DegreeSequence(d))
    }

    /// Expands `(degree, multiplicity)` pairs, e.g. `[(3, 2), (11, 9)]`.
    pub fn from_powers(powers: &[(usize, usize)]) -> Result<Self> {
        let mut d = Vec::new();
        for &(deg, count) in powers {
            d.extend(std::iter::repeat_n(deg, count));
        }
        Self::new(d)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `d_i` with `1 <= i <= n`.
    pub fn get(&self, i: usize) -> usize {
        assert!(i >= 1 && i <= self.0.len(), "degree index {i} outside 1..={}", self.0.len());
        self.0[i - 1]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn sum(&self) -> usize {
        self.0.iter().sum()
    }
}

impl fmt::Display for DegreeSequence {
    /// Exponent notation, e.g. `(3^2,11^9,13^3)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        let mut first = true;
        let mut i = 0;
        while i < self.0.len() {
            let d = self.0[i];
            let mut j = i;
            while j < self.0.len() && self.0[j] == d {
                j += 1;
            }
            if !first {
                write!(f, ",")?;
            }
            first = false;
            if j - i == 1 {
                write!(f, "{d}")?;
            } else {
                write!(f, "{d}^{}", j - i)?;
            }
            i = j;
        }
        write!(f, ")")
    }
}

/// `C(n, 2)`.
pub const fn choose2(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c4() -> Graph {
        Graph::build(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap()
    }

    #[test]
    fn build_examples() {
        let g = c4();
        assert_eq!(g.edge_count(), 4);
        assert_eq!(g.degrees(), vec![2, 2, 2, 2]);

        let k1 = Graph::build(1, &[]).unwrap();
        assert_eq!(k1.edge_count(), 0);

        let all: Vec<_> = (0..5).flat_map(|u| (u + 1..5).map(move |v| (u, v))).collect();
        let k5 = Graph::build(5, &all).unwrap();
        assert_eq!(k5, Graph::complete(5));
        assert!(k5.degrees().iter().all(|&d| d == 4));
    }

    #[test]
    fn build_dedups_and_rejects_bad_edges() {
        let g = Graph::build(3, &[(0, 1), (1, 0), (0, 1)]).unwrap();
        assert_eq!(g.edge_count(), 1);
        assert_eq!(Graph::build(3, &[(0, 3)]), Err(Error::VertexOutOfRange { vertex: 3, n: 3 }));
        assert_eq!(Graph::build(3, &[(2, 2)]), Err(Error::Loop(2)));
        assert!(matches!(Graph::build(65, &[]), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn from_rows_validates() {
        assert!(Graph::from_rows(vec![0b10, 0b01]).is_ok());
        assert!(Graph::from_rows(vec![0b10, 0b00]).is_err());
        assert!(Graph::from_rows(vec![0b01]).is_err());
        assert!(Graph::from_rows(vec![0b100, 0]).is_err());
    }

    #[test]
    fn join_examples() {
        let g = Graph::complete(3).join(&Graph::empty(2)).unwrap();
        assert_eq!(g.edge_count(), 9);

        let g = Graph::complete(2).join(&Graph::empty(3)).unwrap();
        assert_eq!(g.degree_sequence().as_slice(), &[2, 2, 2, 4, 4]);

        // K5 ∨ (K2 + 4K1) has degree sequence (5^4, 6^2, 10^5)
        let inner = Graph::complete(2).disjoint_union(&Graph::empty(4)).unwrap();
        let g = Graph::complete(5).join(&inner).unwrap();
        assert_eq!(
            g.degree_sequence(),
            DegreeSequence::from_powers(&[(5, 4), (6, 2), (10, 5)]).unwrap()
        );
        assert_eq!(g.edge_count(), 41);
    }

    #[test]
    fn union_examples() {
        let g = Graph::complete(2).disjoint_union(&Graph::complete(2)).unwrap();
        assert_eq!((g.n(), g.edge_count()), (4, 2));

        let mut g = Graph::empty(0);
        for _ in 0..6 {
            g = g.disjoint_union(&Graph::empty(1)).unwrap();
        }
        assert_eq!((g.n(), g.edge_count()), (6, 0));
        assert_eq!(Graph::empty(1).copies(6).unwrap(), g);

        let g = Graph::complete(9).disjoint_union(&Graph::empty(2)).unwrap();
        assert_eq!((g.n(), g.edge_count()), (11, 36));
    }

    #[test]
    fn complement_examples() {
        assert_eq!(Graph::complete(5).complement(), Graph::empty(5));
        let two_k2 = Graph::build(4, &[(0, 2), (1, 3)]).unwrap();
        assert_eq!(c4().complement(), two_k2);
    }

    #[test]
    fn complement_of_s14_3_by_hand() {
        // K3 ∨ (K9 + 2K1), labels: join 0..3, clique 3..12, isolated 12..14
        let inner = Graph::complete(9).disjoint_union(&Graph::empty(2)).unwrap();
        let s = Graph::complete(3).join(&inner).unwrap();
        let c = s.complement();
        // direct edge-by-edge complementation
        for u in 0..14 {
            for v in 0..14 {
                if u != v {
                    assert_eq!(c.has_edge(u, v), !s.has_edge(u, v));
                }
            }
        }
        // 3K1: join vertices isolated
        for v in 0..3 {
            assert_eq!(c.degree(v), 0);
        }
        // K2 ∨ 9K1: the two isolated-block vertices are adjacent and share
        // the 9 clique vertices
        assert!(c.has_edge(12, 13));
        assert_eq!(c.neighbors(12) & !bit(13), c.neighbors(13) & !bit(12));
        assert_eq!(c.degree(12), 10);
        for v in 3..12 {
            assert_eq!(c.neighbor_list(v), vec![12, 13]);
        }
        assert_eq!(c.edge_count() + s.edge_count(), choose2(14));
    }

    #[test]
    fn degree_sequence_examples() {
        assert_eq!(c4().degree_sequence().as_slice(), &[2, 2, 2, 2]);
        let s = DegreeSequence::from_powers(&[(3, 2), (11, 9), (13, 3)]).unwrap();
        assert_eq!(s.get(1), 3);
        assert_eq!(s.get(11), 11);
        assert_eq!(s.get(14), 13);
        assert_eq!(s.to_string(), "(3^2,11^9,13^3)");
        assert!(DegreeSequence::new(vec![2, 1]).is_err());
        assert!(DegreeSequence::new(vec![1, 1, 1]).is_err());
        assert!(DegreeSequence::new(vec![3, 3]).is_err());
    }

    #[test]
    fn kelmans_examples() {
        let two_k2 = Graph::build(4, &[(0, 1), (2, 3)]).unwrap();
        let g = two_k2.kelmans(0, 2).unwrap();
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1), (0, 3)]);

        let k5 = Graph::complete(5);
        assert_eq!(k5.kelmans(1, 3).unwrap(), k5);
        assert!(k5.kelmans(2, 2).is_err());
    }

    #[test]
    fn connectivity() {
        assert!(c4().is_connected());
        assert!(!Graph::build(4, &[(0, 1), (2, 3)]).unwrap().is_connected());
        assert!(Graph::empty(0).is_connected());
        assert!(Graph::empty(1).is_connected());
        assert!(!Graph::empty(2).is_connected());
        assert_eq!(Graph::build(4, &[(0, 1), (2, 3)]).unwrap().components(), vec![0b0011, 0b1100]);
    }

    #[test]
    fn relabel_and_subgraph() {
        let p = Graph::path(4);
        let q = p.relabel(&[3, 2, 1, 0]).unwrap();
        assert_eq!(q, p);
        assert!(p.is_spanning_subgraph_of(&c4()));
        assert!(!c4().is_spanning_subgraph_of(&p));
        assert!(p.relabel(&[0, 0, 1, 2]).is_err());
        assert_eq!(Graph::complete(5).induced(0b10110), Graph::complete(3));
    }

    #[test]
    fn petersen_shape() {
        let p = Graph::petersen();
        assert_eq!(p.edge_count(), 15);
        assert!(p.degrees().iter().all(|&d| d == 3));
    }
}
