//! Structural membership certificates against direct role assignment.

use hamconn_core::families::{s_certificate, s_graph, t_certificate, t_graph, Family};
use hamconn_core::Graph;
use proptest::prelude::*;

fn subsets(items: &[usize], size: usize) -> Vec<Vec<usize>> {
    if size == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for (i, &x) in items.iter().enumerate() {
        for mut rest in subsets(&items[i + 1..], size - 1) {
            rest.insert(0, x);
            out.push(rest);
        }
    }
    out
}

/// Complete graph on every block, plus `hub` joined to everything.
fn with_roles(n: usize, hub: &[usize], cliques: &[Vec<usize>]) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            let joined = hub.contains(&u) || hub.contains(&v);
            let same = cliques.iter().any(|c| c.contains(&u) && c.contains(&v));
            if joined || same {
                edges.push((u, v));
            }
        }
    }
    Graph::build(n, &edges).unwrap()
}

fn brute_s(g: &Graph, k: usize) -> bool {
    let n = g.n();
    let all: Vec<usize> = (0..n).collect();
    subsets(&all, k).into_iter().any(|hub| {
        let rest: Vec<usize> = all.iter().copied().filter(|v| !hub.contains(v)).collect();
        subsets(&rest, k - 1).into_iter().any(|outer| {
            let big: Vec<usize> = rest.iter().copied().filter(|v| !outer.contains(v)).collect();
            g.is_spanning_subgraph_of(&with_roles(n, &hub, &[big]))
        })
    })
}

fn brute_t(g: &Graph, k: usize) -> bool {
    let n = g.n();
    let all: Vec<usize> = (0..n).collect();
    subsets(&all, 2).into_iter().any(|hub| {
        let rest: Vec<usize> = all.iter().copied().filter(|v| !hub.contains(v)).collect();
        subsets(&rest, k - 1).into_iter().any(|small| {
            let big: Vec<usize> = rest.iter().copied().filter(|v| !small.contains(v)).collect();
            g.is_spanning_subgraph_of(&with_roles(n, &hub, &[big, small]))
        })
    })
}

/// A relabeled family member with some edges removed, or a dense random
/// graph.
fn candidate() -> impl Strategy<Value = (Graph, usize)> {
    (6usize..=10, any::<bool>(), any::<bool>(), 0.0f64..0.25).prop_flat_map(|(n, planted, s_side, drop)| {
        let k = 2..=n / 2;
        (
            Just(n),
            k,
            Just((0..n).collect::<Vec<_>>()).prop_shuffle(),
            prop::collection::vec(prop::bool::weighted(if planted { drop } else { 0.3 }), n * (n - 1) / 2),
            Just((planted, s_side)),
        )
            .prop_map(|(n, k, perm, removed, (planted, s_side))| {
                let base = match (planted, s_side) {
                    (false, _) => Graph::complete(n),
                    (true, true) => s_graph(n, k).unwrap().relabel(&perm).unwrap(),
                    (true, false) => t_graph(n, k).unwrap().relabel(&perm).unwrap(),
                };
                let pairs = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
                let gone: Vec<_> = pairs.zip(removed).filter(|(e, r)| *r && base.has_edge(e.0, e.1)).map(|(e, _)| e).collect();
                (base.without_edges(&gone).unwrap(), k)
            })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn s_certificate_matches_role_search((g, k) in candidate()) {
        let cert = s_certificate(&g, k);
        prop_assert_eq!(cert.is_some(), brute_s(&g, k));
        if let Some(outer) = cert {
            prop_assert_eq!(outer.len(), k - 1);
            let nb = outer.iter().fold(0u64, |m, &v| m | g.neighbors(v));
            prop_assert!(nb.count_ones() as usize <= k);
        }
    }

    #[test]
    fn t_certificate_matches_role_search((g, k) in candidate()) {
        prop_assert_eq!(t_certificate(&g, k).is_some(), brute_t(&g, k));
    }
}

#[test]
fn family_members_carry_their_own_certificate() {
    for n in 6..=12 {
        for k in 2..=n / 2 {
            for family in [Family::S, Family::T] {
                let g = match family {
                    Family::S => s_graph(n, k).unwrap(),
                    Family::T => t_graph(n, k).unwrap(),
                };
                let (cert, brute) = match family {
                    Family::S => (s_certificate(&g, k).is_some(), brute_s(&g, k)),
                    Family::T => (t_certificate(&g, k).is_some(), brute_t(&g, k)),
                };
                assert!(cert && brute, "{family} n={n} k={k}");
            }
        }
    }
    assert!(!brute_s(&Graph::complete(10), 3));
    assert!(s_certificate(&Graph::complete(10), 3).is_none());
}
