use bruijn_core::dimers::*;
use bruijn_core::BigInt;
use proptest::prelude::*;

fn planar(max_nodes: usize) -> impl Strategy<Value = PlanarBuilder> {
    prop::collection::vec((0u8..3, any::<usize>()), 0..40).prop_map(move |ops| {
        let mut b = PlanarBuilder::triangle();
        for (op, choice) in ops {
            match op {
                0 if b.node_count() < max_nodes => {
                    b.stack(choice);
                }
                1 if b.node_count() < max_nodes => b.subdivide(choice),
                _ => {
                    b.delete(choice);
                }
            }
        }
        b
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn fkt_matches_bruteforce(b in planar(14)) {
        let (g, emb) = b.build().unwrap();
        let o = kasteleyn_orient(&g, &emb).unwrap();
        prop_assert!(check_clockwise_odd(&g, &emb, &o).unwrap());
        prop_assert_eq!(count_matchings_fkt(&g, &o).unwrap(), count_matchings_bruteforce(&g).unwrap());
    }

    #[test]
    fn kasteleyn_is_pfaffian(b in planar(12)) {
        let (g, emb) = b.build().unwrap();
        let o = kasteleyn_orient(&g, &emb).unwrap();
        prop_assert!(is_pfaffian_orientation(&g, &o).unwrap());
    }

    #[test]
    fn weighted_pfaffian_is_matching_weight_sum(b in planar(10), ws in prop::collection::vec(1i64..5, 40)) {
        let (g0, _) = b.build().unwrap();
        let weighted: Vec<(usize, usize, BigInt)> =
            g0.edges().zip(ws.iter().cycle()).map(|((u, v, _), &w)| (u, v, BigInt::from(w))).collect();
        let g = UndirectedGraph::with_weights(g0.node_count(), weighted).unwrap();
        let (_, emb) = b.build().unwrap();
        let o = kasteleyn_orient(&g, &emb).unwrap();
        prop_assert_eq!(count_matchings_fkt(&g, &o).unwrap(), matching_weight_sum_bruteforce(&g).unwrap());
    }

    #[test]
    fn even_circuit_sign_ignores_listing(b in planar(8), flips in prop::collection::vec(any::<bool>(), 30)) {
        let (g, _) = b.build().unwrap();
        let mut o = Orientation::low_to_high(&g);
        for ((u, v, _), f) in g.edges().zip(flips) {
            if f {
                o.flip(u, v).unwrap();
            }
        }
        for cover in even_circuit_covers(&g).unwrap() {
            for c in cover.circuits.iter().filter(|c| c.len() >= 4) {
                let s = circuit_sign(&o, c).unwrap();
                for r in 0..c.len() {
                    let mut rot = c.clone();
                    rot.rotate_left(r);
                    prop_assert_eq!(circuit_sign(&o, &rot).unwrap(), s);
                    rot.reverse();
                    prop_assert_eq!(circuit_sign(&o, &rot).unwrap(), s);
                }
            }
        }
    }

    #[test]
    fn little_parity_on_random_graphs(
        n in 2usize..=10,
        raw in prop::collection::vec((0usize..10, 0usize..10), 0..30),
    ) {
        // a path keeps the graph connected
        let mut edges: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
        edges.extend(raw.into_iter().map(|(a, b)| (a % n, b % n)).filter(|(a, b)| a != b));
        edges.iter_mut().for_each(|e| *e = (e.0.min(e.1), e.0.max(e.1)));
        edges.sort_unstable();
        edges.dedup();
        let g = UndirectedGraph::new(n, &edges).unwrap();
        for v in 0..n {
            let out = little_orientation(&g, v).unwrap().out_degrees(n);
            prop_assert!((0..n).all(|x| x == v || out[x] % 2 == 1));
        }
    }
}

#[test]
fn little_parity_exhaustive_small() {
    for n in 2..=5usize {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
        for mask in 0u32..1 << pairs.len() {
            let edges: Vec<_> = pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e).collect();
            let g = UndirectedGraph::new(n, &edges).unwrap();
            if !g.is_connected() {
                assert!(little_orientation(&g, 0).is_err());
                continue;
            }
            for v in 0..n {
                let out = little_orientation(&g, v).unwrap().out_degrees(n);
                assert!((0..n).all(|x| x == v || out[x] % 2 == 1), "n = {n}, mask = {mask}, v = {v}");
            }
        }
    }
}

#[test]
fn grids() {
    for ((r, c), expected) in [((2, 2), 2), ((2, 3), 3), ((2, 4), 5), ((4, 4), 36)] {
        let (g, emb) = grid_embedding(r, c).unwrap();
        let o = kasteleyn_orient(&g, &emb).unwrap();
        let brute = count_matchings_bruteforce(&g).unwrap();
        assert_eq!(brute, BigInt::from(expected));
        assert_eq!(count_matchings_fkt(&g, &o).unwrap(), brute);
        if g.node_count() <= 12 {
            assert!(is_pfaffian_orientation(&g, &o).unwrap());
        }
        assert_eq!(count_matchings_bipartite(&g).unwrap(), Some(brute));
    }
}
