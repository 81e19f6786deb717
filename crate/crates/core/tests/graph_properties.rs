use estrada_core::classify::bipartition;
use estrada_core::families::{complete_bipartite, cycle, erdos_renyi, path, regular_circulant};
use estrada_core::graph::pair_from_index;
use estrada_core::{classify, enumerate_graphs, general_randic, Diameter, Graph, LabeledGraphs};
use proptest::prelude::*;

/// Union-find over the raw mask bits, independent of `Graph`.
fn mask_is_connected(n: usize, mask: u64) -> bool {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    for k in 0..64 {
        if mask >> k & 1 == 1 {
            let (i, j) = pair_from_index(k);
            let (a, b) = (find(&mut parent, i), find(&mut parent, j));
            parent[a] = b;
        }
    }
    let root = find(&mut parent, 0);
    (0..n).all(|v| find(&mut parent, v) == root)
}

#[test]
fn connected_counts_match_union_find() {
    for n in 1..=5 {
        let expected = (0..1u64 << (n * (n - 1) / 2))
            .filter(|&m| mask_is_connected(n, m))
            .count();
        let got = enumerate_graphs(n, Graph::is_connected).unwrap().count();
        assert_eq!(got, expected, "n = {n}");
    }
    assert_eq!(
        enumerate_graphs(4, Graph::is_connected).unwrap().count(),
        38
    );
}

#[test]
fn enumeration_is_in_mask_order() {
    let masks: Vec<u64> = LabeledGraphs::new(4)
        .unwrap()
        .map(|(mask, g)| {
            assert_eq!(g.to_mask(), Some(mask));
            mask
        })
        .collect();
    assert!(masks.windows(2).all(|w| w[0] + 1 == w[1]));
    assert_eq!(masks.len(), 64);
}

#[test]
fn path_and_cycle_diameters() {
    for n in 2..=10 {
        assert_eq!(path(n).diameter(), Ok(Diameter::Finite(n - 1)));
        if n >= 3 {
            assert_eq!(cycle(n).unwrap().diameter(), Ok(Diameter::Finite(n / 2)));
        }
    }
}

#[test]
fn complete_bipartite_classified_up_to_swap() {
    for p in 1..=6 {
        for q in 1..=6 {
            let c = classify(&complete_bipartite(p, q));
            assert_eq!(c.complete_bipartite, Some((p.min(q), p.max(q))));
            assert_eq!(c.star, p == 1 || q == 1);
            if p >= 2 && q >= 2 {
                assert_eq!(complete_bipartite(p, q).diameter(), Ok(Diameter::Finite(2)));
            }
        }
    }
}

#[test]
fn bipartite_flag_matches_partition_on_all_small_graphs() {
    for n in 1..=6 {
        for g in enumerate_graphs(n, |_| true).unwrap() {
            let c = classify(&g);
            if let Some(parts) = &c.bipartition {
                assert!(parts.separates(&g));
            }
            assert_eq!(c.unicyclic, c.connected && g.m() == g.n());
            assert_eq!(
                c.bipartite(),
                g.triangle_count() == 0 && no_odd_closed_walk(&g)
            );
        }
    }
}

/// Bipartite iff no odd closed walk; odd closed walks of length <= 2n-1 suffice.
fn no_odd_closed_walk(g: &Graph) -> bool {
    let n = g.n();
    // reach[v] = parity-indexed reachability from each start
    for s in 0..n {
        let mut even = vec![false; n];
        let mut odd = vec![false; n];
        even[s] = true;
        for _ in 0..2 * n {
            let (mut ne, mut no) = (even.clone(), odd.clone());
            for v in 0..n {
                for w in g.neighbors(v) {
                    if even[v] {
                        no[w] = true;
                    }
                    if odd[v] {
                        ne[w] = true;
                    }
                }
            }
            even = ne;
            odd = no;
        }
        if odd[s] {
            return false;
        }
    }
    true
}

#[test]
fn circulant_unions_are_regular_plus_isolated() {
    let g = regular_circulant(5, 2)
        .unwrap()
        .disjoint_union(&Graph::empty(1));
    let c = classify(&g);
    assert_eq!(c.isolated, 1);
    assert_eq!(c.regular, None);
}

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n, 0.0..=1.0f64, any::<u64>())
        .prop_map(|(n, p, seed)| erdos_renyi(n, p, seed).unwrap())
}

proptest! {
    #[test]
    fn handshake(g in arb_graph(40)) {
        prop_assert_eq!(g.degree_sequence().iter().sum::<usize>(), 2 * g.m());
    }

    #[test]
    fn randic_is_relabeling_invariant(g in arb_graph(16), key in any::<u64>()) {
        let n = g.n();
        let mut perm: Vec<usize> = (0..n).collect();
        // deterministic shuffle from the key
        let mut state = key | 1;
        for i in (1..n).rev() {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            perm.swap(i, (state % (i as u64 + 1)) as usize);
        }
        let h = g.relabeled(&perm).unwrap();
        for alpha in [-0.5, 0.0, 0.5] {
            let (a, b) = (general_randic(&g, alpha), general_randic(&h, alpha));
            prop_assert!((a - b).abs() < 1e-9);
        }
        prop_assert_eq!(g.triangle_count(), h.triangle_count());
        prop_assert_eq!(g.diameter(), h.diameter());
    }

    #[test]
    fn randic_at_zero_is_edge_count(g in arb_graph(30)) {
        prop_assert!((general_randic(&g, 0.0) - g.m() as f64).abs() < 1e-9);
    }

    #[test]
    fn bipartition_is_consistent(g in arb_graph(20)) {
        if let Some(parts) = bipartition(&g) {
            prop_assert!(parts.separates(&g));
            prop_assert_eq!(g.triangle_count(), 0);
        }
    }
}

#[test]
fn randic_half_order_bound_without_isolated_vertices() {
    for n in 2..=7 {
        for g in enumerate_graphs(n, |g| g.isolated_count() == 0).unwrap() {
            let r = general_randic(&g, -0.5);
            assert!(r <= n as f64 / 2.0 + 1e-12, "{g:?}");
        }
    }
    // with isolated vertices only the non-isolated part counts
    for g in enumerate_graphs(5, |g| g.isolated_count() > 0).unwrap() {
        let r = general_randic(&g, -0.5);
        assert!(r <= (g.n() - g.isolated_count()) as f64 / 2.0 + 1e-12);
        assert_eq!(r == 0.0, g.m() == 0);
    }
}
