use std::collections::BTreeMap;

use bruijn_core::exactalg::MultiPoly;
use bruijn_core::polya::*;
use bruijn_core::{BigInt, BigRational};
use proptest::prelude::*;

fn builtins() -> Vec<BuiltinGroup> {
    let mut v = vec![BuiltinGroup::CubeFaces, BuiltinGroup::CubeVertices, BuiltinGroup::CubeEdges];
    for n in 1..=8 {
        v.push(BuiltinGroup::Cyclic(n));
        v.push(BuiltinGroup::Dihedral(n));
    }
    v
}

#[test]
fn inventory_matches_orbit_oracle() {
    for b in builtins() {
        let g = b.group().unwrap();
        let ci = cycle_index(&g);
        for k in [2, 3] {
            let w = ColorWeighting::unit(k).unwrap();
            assert_eq!(pattern_inventory(&ci, &w), orbit_inventory_oracle(&g, &w).unwrap(), "{b}, {k} colors");
        }
    }
}

#[test]
fn unit_weights_count_patterns() {
    for b in builtins() {
        let ci = cycle_index(&b.group().unwrap());
        for k in 1..=4u64 {
            let w = ColorWeighting::unit(k as usize).unwrap();
            let inv = pattern_inventory(&ci, &w);
            let ones: BTreeMap<_, _> = inv.vars().iter().map(|v| (v.clone(), BigRational::from_integer(1.into()))).collect();
            assert_eq!(inv.evaluate(&ones).unwrap(), BigRational::from_integer(count_patterns(&ci, k)));
        }
    }
}

#[test]
fn scaled_coefficients_sum_to_order() {
    for b in builtins() {
        let ci = cycle_index(&b.group().unwrap());
        assert_eq!(ci.scaled_coefficient_sum(), BigInt::from(ci.order()));
    }
}

#[test]
fn weighted_fixed_points() {
    let w = ColorWeighting::new(vec![
        ("a".into(), MultiPoly::var("y")),
        ("b".into(), MultiPoly::var("z")),
        ("c".into(), MultiPoly::integer(2)),
    ])
    .unwrap();
    for b in [BuiltinGroup::CubeFaces, BuiltinGroup::Dihedral(5), BuiltinGroup::Cyclic(6)] {
        let g = b.group().unwrap();
        let mut total = MultiPoly::zero();
        for p in g.elements() {
            let fast = fixed_coloring_weight(p, &w);
            assert_eq!(fast, fixed_coloring_weight_bruteforce(p, &w).unwrap());
            total = &total + &fast;
        }
        let order = BigRational::from_integer(BigInt::from(g.order()));
        let averaged = total.scale(&(BigRational::from_integer(1.into()) / order));
        assert_eq!(averaged, orbit_inventory_oracle(&g, &w).unwrap(), "{b}");
    }
}

proptest! {
    #[test]
    fn action_is_a_homomorphism(
        which in 0usize..6,
        picks in (any::<prop::sample::Index>(), any::<prop::sample::Index>()),
        colors in prop::collection::vec(0u8..4, 12),
    ) {
        let b = [
            BuiltinGroup::CubeFaces,
            BuiltinGroup::CubeVertices,
            BuiltinGroup::CubeEdges,
            BuiltinGroup::Dihedral(7),
            BuiltinGroup::Cyclic(8),
            BuiltinGroup::Dihedral(12),
        ][which];
        let g = b.group().unwrap();
        prop_assert!(g.order() <= 24);
        let g1 = &g.elements()[picks.0.index(g.order())];
        let g2 = &g.elements()[picks.1.index(g.order())];
        let f = &colors[..g.degree()];
        prop_assert_eq!(g1.compose(g2).act_on_coloring(f), g1.act_on_coloring(&g2.act_on_coloring(f)));
    }
}
