//! Isomorphism testing for small graphs.
//!
//! Both graphs are colour-refined jointly (1-dimensional Weisfeiler–Leman,
//! seeded by degree), so colour ids are comparable across the pair. A
//! backtracking search then individualizes one vertex of `g` against each
//! same-coloured vertex of `h`, re-refines, and recurses until every class
//! is a singleton; the induced bijection is verified edge by edge.

use std::collections::BTreeMap;

use crate::codec::emit_graph6;
use crate::graph::Graph;

type Coloring = Vec<u32>;

/// Refines the colourings of several graphs simultaneously until the number
/// of colours stops growing.
fn refine(graphs: &[&Graph], mut colors: Vec<Coloring>) -> Vec<Coloring> {
    let mut classes = count_classes(&colors);
    loop {
        let mut signatures: Vec<Vec<(u32, Vec<u32>)>> = Vec::with_capacity(graphs.len());
        for (g, col) in graphs.iter().zip(&colors) {
            let sig = (0..g.n())
                .map(|v| {
                    let mut nb: Vec<u32> = g.neighbor_list(v).into_iter().map(|u| col[u]).collect();
                    nb.sort_unstable();
                    (col[v], nb)
                })
                .collect();
            signatures.push(sig);
        }
        let mut table: BTreeMap<&(u32, Vec<u32>), u32> = BTreeMap::new();
        for sig in signatures.iter().flatten() {
            table.entry(sig).or_insert(0);
        }
        for (i, id) in table.values_mut().enumerate() {
            *id = i as u32;
        }
        let next: Vec<Coloring> = signatures
            .iter()
            .map(|sig| sig.iter().map(|s| table[s]).collect())
            .collect();
        let next_classes = count_classes(&next);
        colors = next;
        if next_classes == classes {
            return colors;
        }
        classes = next_classes;
    }
}

fn count_classes(colors: &[Coloring]) -> usize {
    let mut all: Vec<u32> = colors.iter().flatten().copied().collect();
    all.sort_unstable();
    all.dedup();
    all.len()
}

fn histogram(col: &[u32]) -> BTreeMap<u32, usize> {
    let mut h = BTreeMap::new();
    for &c in col {
        *h.entry(c).or_insert(0) += 1;
    }
    h
}

/// Stable refined colours of a single graph, seeded by degree.
pub fn refined_colors(g: &Graph) -> Vec<u32> {
    let seed = g.degrees().into_iter().map(|d| d as u32).collect();
    refine(&[g], vec![seed]).pop().unwrap_or_default()
}

/// Returns `perm` with `perm[v]` the image in `h` of vertex `v` of `g`, or
/// `None` when the graphs are not isomorphic.
pub fn find_isomorphism(g: &Graph, h: &Graph) -> Option<Vec<usize>> {
    if g.n() != h.n() || g.edge_count() != h.edge_count() {
        return None;
    }
    if g.degree_sequence() != h.degree_sequence() {
        return None;
    }
    let seed = |x: &Graph| -> Coloring { x.degrees().into_iter().map(|d| d as u32).collect() };
    let colors = refine(&[g, h], vec![seed(g), seed(h)]);
    search(g, h, colors[0].clone(), colors[1].clone())
}

fn search(g: &Graph, h: &Graph, cg: Coloring, ch: Coloring) -> Option<Vec<usize>> {
    let hist_g = histogram(&cg);
    if hist_g != histogram(&ch) {
        return None;
    }
    // Smallest non-singleton class drives the branching.
    let Some((&target, _)) = hist_g.iter().filter(|(_, &c)| c > 1).min_by_key(|(_, &c)| c) else {
        let mut perm = vec![0usize; g.n()];
        for v in 0..g.n() {
            perm[v] = ch.iter().position(|&c| c == cg[v])?;
        }
        return verify(g, h, &perm).then_some(perm);
    };
    let v = cg.iter().position(|&c| c == target)?;
    let fresh = cg.iter().chain(&ch).copied().max().unwrap_or(0) + 1;
    for w in (0..h.n()).filter(|&w| ch[w] == target) {
        let mut cg2 = cg.clone();
        let mut ch2 = ch.clone();
        cg2[v] = fresh;
        ch2[w] = fresh;
        let refined = refine(&[g, h], vec![cg2, ch2]);
        let mut it = refined.into_iter();
        let (a, b) = (it.next()?, it.next()?);
        if let Some(p) = search(g, h, a, b) {
            return Some(p);
        }
    }
    None
}

fn verify(g: &Graph, h: &Graph, perm: &[usize]) -> bool {
    let mut seen = vec![false; perm.len()];
    for &p in perm {
        if seen[p] {
            return false;
        }
        seen[p] = true;
    }
    (0..g.n()).all(|u| (0..g.n()).all(|v| g.has_edge(u, v) == h.has_edge(perm[u], perm[v])))
}

pub fn are_isomorphic(g: &Graph, h: &Graph) -> bool {
    find_isomorphism(g, h).is_some()
}

/// Cheap fingerprint: graph6 of the relabeling that sorts vertices by refined
/// colour (ties by original index). Non-isomorphic graphs never collide since
/// the string decodes to a relabeling of the graph; isomorphic graphs usually
/// but not always share one.
pub fn fingerprint(g: &Graph) -> String {
    let colors = refined_colors(g);
    let mut order: Vec<usize> = (0..g.n()).collect();
    order.sort_by_key(|&v| (colors[v], v));
    let mut perm = vec![0usize; g.n()];
    for (new, &old) in order.iter().enumerate() {
        perm[old] = new;
    }
    let relabeled = g.relabel(&perm).expect("sorting yields a permutation");
    emit_graph6(&relabeled).unwrap_or_else(|_| format!("n{}m{}", g.n(), g.edge_count()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_perm(n: usize, rng: &mut ChaCha8Rng) -> Vec<usize> {
        let mut p: Vec<usize> = (0..n).collect();
        p.shuffle(rng);
        p
    }

    #[test]
    fn relabelings_are_isomorphic() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let n = rng.gen_range(1..=14);
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(0.5) {
                        edges.push((u, v));
                    }
                }
            }
            let g = Graph::build(n, &edges).unwrap();
            let h = g.relabel(&random_perm(n, &mut rng)).unwrap();
            let perm = find_isomorphism(&g, &h).expect("relabeling is isomorphic");
            assert!(verify(&g, &h, &perm));
        }
    }

    #[test]
    fn regular_graphs_that_refinement_cannot_split() {
        // C6 vs 2C3: both 2-regular on 6 vertices, not isomorphic.
        let c6 = Graph::cycle(6);
        let two_c3 = Graph::cycle(3).disjoint_union(&Graph::cycle(3)).unwrap();
        assert!(!are_isomorphic(&c6, &two_c3));
        // Petersen vs a relabeled Petersen.
        let p = Graph::petersen();
        let q = p.relabel(&[3, 7, 1, 9, 0, 2, 8, 4, 6, 5]).unwrap();
        assert!(are_isomorphic(&p, &q));
        // Petersen vs the 5-prism (both cubic, 10 vertices).
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((5 + i, 5 + (i + 1) % 5));
            edges.push((i, i + 5));
        }
        let prism = Graph::build(10, &edges).unwrap();
        assert!(!are_isomorphic(&p, &prism));
    }

    #[test]
    fn invariants_short_circuit() {
        assert!(!are_isomorphic(&Graph::path(4), &Graph::star(3)));
        assert!(!are_isomorphic(&Graph::complete(3), &Graph::complete(4)));
        assert!(are_isomorphic(&Graph::empty(0), &Graph::empty(0)));
    }

    #[test]
    fn fingerprint_is_deterministic_and_faithful() {
        let g = Graph::petersen();
        assert_eq!(fingerprint(&g), fingerprint(&g.clone()));
        let decoded = crate::codec::parse_graph6(&fingerprint(&g)).unwrap();
        assert!(are_isomorphic(&decoded, &g));
    }
}
