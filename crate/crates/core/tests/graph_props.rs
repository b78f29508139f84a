use merg_core::{Graph, NodeSet};
use proptest::prelude::*;

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec((0..n, 0..n), 0..=n * n)
            .prop_map(move |pairs| Graph::new(n, pairs.into_iter().filter(|(u, v)| u != v)).unwrap())
    })
}

fn brute_clique(g: &Graph) -> usize {
    let n = g.n();
    (1u64..1 << n)
        .filter(|&s| {
            let set = NodeSet::from_mask(s);
            set.iter().all(|u| set.iter().all(|v| u == v || g.has_edge(u, v)))
        })
        .map(|s| s.count_ones() as usize)
        .max()
        .unwrap_or(1)
}

proptest! {
    #[test]
    fn complement_is_an_involution(g in graph(70)) {
        let c = g.complement();
        prop_assert_eq!(c.edge_count() + g.edge_count(), g.n() * (g.n() - 1) / 2);
        prop_assert_eq!(c.complement(), g);
    }

    #[test]
    fn degree_sum(g in graph(70)) {
        prop_assert_eq!(g.degrees().iter().sum::<usize>(), 2 * g.edge_count());
        prop_assert_eq!(g.edges().count(), g.edge_count());
        for (u, v) in g.edges() {
            prop_assert!(u < v && g.has_edge(v, u));
        }
    }

    #[test]
    fn max_clique_matches_brute_force(g in graph(10)) {
        let c = g.max_clique();
        prop_assert_eq!(c.len(), brute_clique(&g));
        prop_assert_eq!(g.induced_edge_count(&c).unwrap(), c.len() * (c.len() - 1) / 2);
    }

    #[test]
    fn spanning_subgraph_is_antisymmetric(a in graph(12), b in graph(12)) {
        if a.n() == b.n() {
            let ab = a.is_spanning_subgraph(&b).unwrap();
            let ba = b.is_spanning_subgraph(&a).unwrap();
            prop_assert_eq!(ab && ba, a == b);
        } else {
            prop_assert!(a.is_spanning_subgraph(&b).is_err());
        }
    }

    #[test]
    fn relabel_preserves_structure(g in graph(20), seed in any::<u64>()) {
        let mut perm: Vec<usize> = (0..g.n()).collect();
        merg_core::rng::SeededRng::new(seed).shuffle(&mut perm);
        let h = g.relabel(&perm).unwrap();
        prop_assert_eq!(h.edge_count(), g.edge_count());
        for (u, v) in g.edges() {
            prop_assert!(h.has_edge(perm[u], perm[v]));
        }
        prop_assert_eq!(h.max_clique_size(), g.max_clique_size());
    }
}
