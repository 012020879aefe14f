use std::collections::BTreeSet;

use bruijn_core::planetrees::*;
use bruijn_core::BigInt;

#[test]
fn codes_round_trip() {
    for n in 1..=10 {
        let trees = enumerate_plane_trees(n).unwrap();
        assert_eq!(BigInt::from(trees.len()), count_plane_trees(n));
        for t in &trees {
            let code = ud_encode(t);
            assert_eq!(code.len(), 2 * (n - 1));
            assert_eq!(&ud_decode(&code).unwrap(), t);
        }
    }
    for nodes in (1..=19).step_by(2) {
        for b in enumerate_binary_trees(nodes).unwrap() {
            assert_eq!(ke_decode(&ke_encode(&b)).unwrap(), b);
        }
    }
}

#[test]
fn grammar_bijection_onto_binary_trees() {
    for n in 1..=8 {
        let binary: BTreeSet<BinaryPlaneTree> = enumerate_binary_trees(2 * n - 1).unwrap().into_iter().collect();
        assert_eq!(BigInt::from(binary.len()), count_plane_trees(n));
        let images: BTreeSet<BinaryPlaneTree> =
            enumerate_plane_trees(n).unwrap().iter().map(plane_to_binary).collect();
        assert_eq!(images.len(), binary.len());
        assert_eq!(images, binary);
    }
}

#[test]
fn series_identities() {
    for n in [0, 1, 8, 32, 64] {
        assert!(gf_identity_check(n).unwrap(), "degree {n}");
    }
    let g = binary_tree_counts(31);
    for k in 0..=15 {
        assert_eq!(g[2 * k + 1], count_plane_trees(k + 1));
        if k > 0 {
            assert_eq!(g[2 * k], BigInt::from(0));
        }
    }
}

#[test]
fn height_approaches_asymptotic() {
    let deviation = |n: usize| {
        let h: f64 = bruijn_core::exactalg::rational_to_decimal(&average_height(n).unwrap(), 12).parse().unwrap();
        (h - ((std::f64::consts::PI * n as f64).sqrt() - 0.5)).abs()
    };
    let d: Vec<f64> = [10, 20, 40, 60].into_iter().map(deviation).collect();
    assert!(d.windows(2).all(|w| w[1] < w[0]), "{d:?}");
}
