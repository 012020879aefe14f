//! Seeded random instances for cross-checking the fast counters against
//! their oracles. The same seed always yields the same corpus.

use bruijn_core::classics::RepInstance;
use bruijn_core::dimers::{PlanarBuilder, PlanarEmbedding, UndirectedGraph};
use bruijn_core::eulertours::{is_eulerian, DirectedMultigraph};
use bruijn_core::exactalg::IntMatrix;
use bruijn_core::BigInt;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Connected Eulerian multigraphs (loops allowed) with between 1 and
/// `max_arcs` arcs: closed walks glued at nodes already in use.
pub fn eulerian_digraphs(rng: &mut impl Rng, count: usize, max_nodes: usize, max_arcs: usize) -> Vec<DirectedMultigraph> {
    assert!(max_nodes >= 1 && max_arcs >= 1);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(1..=max_nodes);
            let budget = rng.gen_range(1..=max_arcs);
            let mut arcs: Vec<(usize, usize)> = Vec::new();
            let mut used = vec![0usize];
            while arcs.len() < budget {
                let start = *used.choose(rng).unwrap();
                let len = rng.gen_range(1..=budget - arcs.len());
                let mut cur = start;
                for step in 0..len {
                    let next = if step + 1 == len { start } else { rng.gen_range(0..n) };
                    arcs.push((cur, next));
                    used.push(next);
                    cur = next;
                }
            }
            let g = DirectedMultigraph::new(n, arcs).expect("nodes in range");
            debug_assert!(is_eulerian(&g));
            g
        })
        .collect()
}

/// Connected embedded planar graphs with 3 to `max_nodes` nodes: stacked
/// triangulations, some edges subdivided, then non-bridge edges deleted.
pub fn planar_graphs(rng: &mut impl Rng, count: usize, max_nodes: usize) -> Vec<(UndirectedGraph, PlanarEmbedding)> {
    assert!(max_nodes >= 3);
    (0..count)
        .map(|_| {
            let target = rng.gen_range(3..=max_nodes);
            let mut b = PlanarBuilder::triangle();
            while b.node_count() < target {
                if rng.gen_bool(0.7) {
                    b.stack(rng.gen());
                } else {
                    b.subdivide(rng.gen());
                }
            }
            let deletions = rng.gen_range(0..=b.edges().len() / 3);
            for _ in 0..deletions {
                b.delete(rng.gen());
            }
            b.build().expect("builder keeps a valid embedding")
        })
        .collect()
}

/// Two partitions of `0..mu*n` into blocks of `n`, `mu * n <= max_size`.
pub fn uniform_rep_instances(rng: &mut impl Rng, count: usize, max_size: usize) -> Vec<RepInstance> {
    (0..count)
        .map(|_| {
            let n = rng.gen_range(1..=max_size.min(6));
            let mu = rng.gen_range(1..=max_size / n);
            let size = mu * n;
            let mut blocks = || {
                let mut p: Vec<usize> = (0..size).collect();
                p.shuffle(rng);
                p.chunks(n).map(<[usize]>::to_vec).collect::<Vec<_>>()
            };
            let u = blocks();
            let b = blocks();
            RepInstance::new(size, u, b).expect("chunks of a permutation")
        })
        .collect()
}

/// Two arbitrary partitions of `0..size`, `size <= max_size`.
pub fn rep_instances(rng: &mut impl Rng, count: usize, max_size: usize) -> Vec<RepInstance> {
    (0..count)
        .map(|_| {
            let size = rng.gen_range(1..=max_size);
            let mut blocks = || {
                let k = rng.gen_range(1..=size);
                let mut by: Vec<Vec<usize>> = vec![Vec::new(); k];
                for x in 0..size {
                    by[rng.gen_range(0..k)].push(x);
                }
                by.retain(|b| !b.is_empty());
                by
            };
            let u = blocks();
            let b = blocks();
            RepInstance::new(size, u, b).expect("labels give a partition")
        })
        .collect()
}

/// Square matrices of dimension `1..=max_dim` with entries in `lo..=hi`.
pub fn int_matrices(rng: &mut impl Rng, count: usize, max_dim: usize, lo: i64, hi: i64) -> Vec<IntMatrix> {
    (0..count)
        .map(|_| {
            let n = rng.gen_range(1..=max_dim);
            IntMatrix::from_fn(n, |_, _| BigInt::from(rng.gen_range(lo..=hi)))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpora_are_deterministic_and_valid() {
        let a = eulerian_digraphs(&mut rng(7), 50, 6, 10);
        let b = eulerian_digraphs(&mut rng(7), 50, 6, 10);
        assert_eq!(a, b);
        assert!(a.iter().all(|g| is_eulerian(g) && (1..=10).contains(&g.arc_count())));
        let p = planar_graphs(&mut rng(7), 20, 14);
        assert!(p.iter().all(|(g, _)| g.is_connected() && g.node_count() <= 14));
        for inst in uniform_rep_instances(&mut rng(1), 20, 40) {
            assert!(inst.size() <= 40);
        }
    }
}
