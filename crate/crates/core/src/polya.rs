//! Permutation groups, cycle indices and Pólya counting.
//!
//! Permutations compose right to left: `p.compose(q)` maps `i` to
//! `p[q[i]]`. A group acts on colorings `f: D -> R` by
//! `g.f = f o g^{-1}`, which makes the action a homomorphism.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::exactalg::{Monomial, MultiPoly, Var};
use crate::{Error, Result};

/// Largest coloring count `|R|^|D|` the orbit oracles enumerate.
pub const ORACLE_COLORING_LIMIT: u128 = 1_000_000;

/// Largest group [`close_group`] builds before giving up.
pub const GROUP_ORDER_LIMIT: usize = 1 << 16;

/// A bijection of `0..n`, stored as its image array.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(Error::InvalidPermutation(format!("{images:?} is not a bijection of 0..{n}")));
            }
            seen[i] = true;
        }
        Ok(Self(images))
    }

    pub fn identity(n: usize) -> Self {
        Self((0..n).collect())
    }

    /// Builds a permutation of `0..n` from disjoint cycles.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<usize> = (0..n).collect();
        let mut touched = vec![false; n];
        for c in cycles {
            for (k, &x) in c.iter().enumerate() {
                if x >= n || touched[x] {
                    return Err(Error::InvalidPermutation(format!("cycles {cycles:?} are not disjoint in 0..{n}")));
                }
                touched[x] = true;
                images[x] = c[(k + 1) % c.len()];
            }
        }
        Ok(Self(images))
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    /// `self o other`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation(other.0.iter().map(|&i| self.0[i]).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j] = i;
        }
        Permutation(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i == j)
    }

    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.0.len()];
        let mut out = Vec::new();
        for s in 0..self.0.len() {
            if seen[s] {
                continue;
            }
            let mut c = Vec::new();
            let mut x = s;
            while !seen[x] {
                seen[x] = true;
                c.push(x);
                x = self.0[x];
            }
            out.push(c);
        }
        out
    }

    pub fn fixed_points(&self) -> usize {
        self.0.iter().enumerate().filter(|&(i, &j)| i == j).count()
    }

    /// The coloring `f o self^{-1}`.
    pub fn act_on_coloring<T: Clone>(&self, f: &[T]) -> Vec<T> {
        let mut out = f.to_vec();
        for (d, &img) in self.0.iter().enumerate() {
            out[img] = f[d].clone();
        }
        out
    }
}

/// Cycle census `(b_1, b_2, ...)` where `b_i` counts cycles of length `i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CycleType(Vec<usize>);

impl CycleType {
    pub fn counts(&self) -> &[usize] {
        &self.0
    }

    /// `b_i`, zero past the end.
    pub fn count(&self, len: usize) -> usize {
        if len == 0 {
            0
        } else {
            self.0.get(len - 1).copied().unwrap_or(0)
        }
    }

    pub fn degree(&self) -> usize {
        self.0.iter().enumerate().map(|(i, &b)| (i + 1) * b).sum()
    }

    /// `x_1^{b_1} x_2^{b_2} ...`
    pub fn monomial(&self) -> Monomial {
        let names: Vec<String> = (1..=self.0.len()).map(|i| format!("x{i}")).collect();
        Monomial::from_pairs(names.iter().zip(&self.0).map(|(n, &b)| (n.as_str(), b as u32)))
    }
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, b) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{b}")?;
        }
        f.write_str(")")
    }
}

/// Cycle type of `p`, padded to the degree of `p`.
pub fn cycle_type(p: &Permutation) -> CycleType {
    let mut counts = vec![0; p.degree()];
    for c in p.cycles() {
        counts[c.len() - 1] += 1;
    }
    CycleType(counts)
}

/// A permutation group given by its full, sorted element list.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PermGroup {
    degree: usize,
    elements: Vec<Permutation>,
}

impl PermGroup {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// Elements in lexicographic order of image arrays; the identity first.
    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.elements.binary_search(p).is_ok()
    }

    /// Checks identity, closure under products and inverses.
    pub fn is_group(&self) -> bool {
        self.contains(&Permutation::identity(self.degree))
            && self.elements.iter().all(|a| {
                self.contains(&a.inverse()) && self.elements.iter().all(|b| self.contains(&a.compose(b)))
            })
    }
}

/// Closure of `generators` under composition, acting on `0..degree`.
pub fn close_group(degree: usize, generators: &[Permutation]) -> Result<PermGroup> {
    if let Some(g) = generators.iter().find(|g| g.degree() != degree) {
        return Err(Error::DegreeMismatch { expected: degree, found: g.degree() });
    }
    let mut set = BTreeSet::new();
    let id = Permutation::identity(degree);
    set.insert(id.clone());
    let mut frontier = vec![id];
    while let Some(p) = frontier.pop() {
        for g in generators {
            let q = g.compose(&p);
            if set.insert(q.clone()) {
                if set.len() > GROUP_ORDER_LIMIT {
                    return Err(Error::TooLarge { size: set.len() as u128, limit: GROUP_ORDER_LIMIT as u128 });
                }
                frontier.push(q);
            }
        }
    }
    Ok(PermGroup { degree, elements: set.into_iter().collect() })
}

/// `(1/|G|) * sum_g x_1^{b_1(g)} x_2^{b_2(g)} ...`, kept with the
/// per-type element counts it was built from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleIndex {
    order: usize,
    degree: usize,
    type_counts: BTreeMap<CycleType, usize>,
    poly: MultiPoly,
}

impl CycleIndex {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn poly(&self) -> &MultiPoly {
        &self.poly
    }

    /// Number of group elements of each cycle type.
    pub fn type_counts(&self) -> &BTreeMap<CycleType, usize> {
        &self.type_counts
    }

    /// The indeterminates `x_1 .. x_n`.
    pub fn variables(&self) -> Vec<Var> {
        (1..=self.degree).map(|i| Var::indexed("x", i)).collect()
    }

    /// Sum of the coefficients before division by `|G|`; always `|G|`.
    pub fn scaled_coefficient_sum(&self) -> BigInt {
        let s = self.poly.coefficient_sum() * BigRational::from_integer(BigInt::from(self.order));
        debug_assert!(s.is_integer());
        s.to_integer()
    }

    /// Substitutes `x_i -> f(i)` for every `i`.
    pub fn substitute_with(&self, mut f: impl FnMut(usize) -> MultiPoly) -> Result<MultiPoly> {
        let bindings: BTreeMap<Var, MultiPoly> = (1..=self.degree).map(|i| (Var::indexed("x", i), f(i))).collect();
        self.poly.substitute(&bindings)
    }
}

impl fmt::Display for CycleIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let scaled = self.poly.scale(&BigRational::from_integer(BigInt::from(self.order)));
        write!(f, "1/{} ({scaled})", self.order)
    }
}

pub fn cycle_index(g: &PermGroup) -> CycleIndex {
    let mut type_counts = BTreeMap::new();
    for p in &g.elements {
        *type_counts.entry(cycle_type(p)).or_insert(0) += 1;
    }
    let inv_order = BigRational::new(BigInt::one(), BigInt::from(g.order()));
    let vars = (1..=g.degree).map(|i| Var::indexed("x", i));
    let mut poly = MultiPoly::zero().with_vars(vars);
    for (t, &c) in &type_counts {
        poly = &poly + &MultiPoly::term(&inv_order * BigInt::from(c), t.monomial());
    }
    CycleIndex { order: g.order(), degree: g.degree, type_counts, poly }
}

/// Number of orbits of `g` on `0..domain_size`: the average number of fixed
/// points.
pub fn count_orbits(g: &PermGroup, domain_size: usize) -> Result<BigInt> {
    if g.degree != domain_size {
        return Err(Error::DegreeMismatch { expected: domain_size, found: g.degree });
    }
    let fixed: usize = g.elements.iter().map(Permutation::fixed_points).sum();
    debug_assert_eq!(fixed % g.order(), 0);
    Ok(BigInt::from(fixed / g.order()))
}

/// Number of colorings with `colors` colors up to the group action.
pub fn count_patterns(ci: &CycleIndex, colors: u64) -> BigInt {
    let c = MultiPoly::integer(colors);
    let value = ci
        .substitute_with(|_| c.clone())
        .expect("all cycle-index variables are bound")
        .as_constant()
        .expect("constant substitution gives a constant");
    debug_assert!(value.is_integer());
    value.to_integer()
}

/// Named colors with polynomial weights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColorWeighting {
    colors: Vec<(String, MultiPoly)>,
}

impl ColorWeighting {
    pub fn new(colors: Vec<(String, MultiPoly)>) -> Result<Self> {
        if colors.is_empty() {
            return Err(Error::InvalidParameter(String::from("color set is empty")));
        }
        Ok(Self { colors })
    }

    /// Each color weighs the indeterminate of the same name.
    pub fn from_names<S: AsRef<str>>(names: &[S]) -> Result<Self> {
        Self::new(names.iter().map(|n| (n.as_ref().to_string(), MultiPoly::var(n.as_ref()))).collect())
    }

    /// `k` colors of weight 1.
    pub fn unit(k: usize) -> Result<Self> {
        Self::new((0..k).map(|i| (format!("c{i}"), MultiPoly::one())).collect())
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn colors(&self) -> &[(String, MultiPoly)] {
        &self.colors
    }

    /// `sum_r w(r)^i`.
    pub fn power_sum(&self, i: u32) -> MultiPoly {
        self.colors.iter().fold(MultiPoly::zero(), |acc, (_, w)| &acc + &w.pow(i))
    }

    /// `prod_d w(f(d))` for a coloring given by color indices.
    pub fn coloring_weight(&self, f: &[usize]) -> MultiPoly {
        f.iter().fold(MultiPoly::one(), |acc, &c| &acc * &self.colors[c].1)
    }
}

/// Sum of the weights of all patterns: the cycle index with
/// `x_i -> sum_r w(r)^i`.
pub fn pattern_inventory(ci: &CycleIndex, w: &ColorWeighting) -> MultiPoly {
    ci.substitute_with(|i| w.power_sum(i as u32)).expect("all cycle-index variables are bound")
}

/// Total weight of the colorings fixed by `g`, by the cycle product
/// `prod_cycles sum_r w(r)^{len}`.
pub fn fixed_coloring_weight(g: &Permutation, w: &ColorWeighting) -> MultiPoly {
    g.cycles().iter().fold(MultiPoly::one(), |acc, c| &acc * &w.power_sum(c.len() as u32))
}

fn coloring_count(degree: usize, colors: usize) -> Result<usize> {
    let mut total: u128 = 1;
    for _ in 0..degree {
        total = total.saturating_mul(colors as u128);
        if total > ORACLE_COLORING_LIMIT {
            let size = (colors as u128).checked_pow(degree as u32).unwrap_or(u128::MAX);
            return Err(Error::TooLarge { size, limit: ORACLE_COLORING_LIMIT });
        }
    }
    Ok(total as usize)
}

fn decode(mut index: usize, colors: usize, degree: usize) -> Vec<usize> {
    let mut f = vec![0; degree];
    for slot in f.iter_mut() {
        *slot = index % colors;
        index /= colors;
    }
    f
}

fn encode(f: &[usize], colors: usize) -> usize {
    f.iter().rev().fold(0, |acc, &c| acc * colors + c)
}

/// Total weight of the colorings fixed by `g`, by listing every coloring.
pub fn fixed_coloring_weight_bruteforce(g: &Permutation, w: &ColorWeighting) -> Result<MultiPoly> {
    let total = coloring_count(g.degree(), w.len())?;
    let mut sum = MultiPoly::zero();
    for idx in 0..total {
        let f = decode(idx, w.len(), g.degree());
        if g.act_on_coloring(&f) == f {
            sum = &sum + &w.coloring_weight(&f);
        }
    }
    Ok(sum)
}

/// Sum of one weight per orbit, found by walking every coloring's orbit.
pub fn orbit_inventory_oracle(g: &PermGroup, w: &ColorWeighting) -> Result<MultiPoly> {
    let total = coloring_count(g.degree, w.len())?;
    let mut seen = vec![false; total];
    let mut sum = MultiPoly::zero();
    for idx in 0..total {
        if seen[idx] {
            continue;
        }
        let f = decode(idx, w.len(), g.degree);
        for p in &g.elements {
            seen[encode(&p.act_on_coloring(&f), w.len())] = true;
        }
        sum = &sum + &w.coloring_weight(&f);
    }
    Ok(sum)
}

/// Orbits of colorings under `g` on cells and `h` on colors together:
/// `(g, h).f = h o f o g^{-1}`.
pub fn count_orbits_with_color_group(g: &PermGroup, h: &PermGroup) -> Result<BigInt> {
    let colors = h.degree;
    if colors == 0 {
        return Err(Error::InvalidParameter(String::from("color set is empty")));
    }
    let total = coloring_count(g.degree, colors)?;
    let mut seen = vec![false; total];
    let mut orbits = 0u64;
    for idx in 0..total {
        if seen[idx] {
            continue;
        }
        orbits += 1;
        let f = decode(idx, colors, g.degree);
        for p in &g.elements {
            let moved = p.act_on_coloring(&f);
            for q in &h.elements {
                let recolored: Vec<usize> = moved.iter().map(|&c| q.apply(c)).collect();
                seen[encode(&recolored, colors)] = true;
            }
        }
    }
    Ok(BigInt::from(orbits))
}

/// Built-in group actions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BuiltinGroup {
    /// Rotations of the cube acting on its 6 faces.
    CubeFaces,
    /// Rotations of the cube acting on its 8 vertices.
    CubeVertices,
    /// Rotations of the cube acting on its 12 edges.
    CubeEdges,
    /// Rotations of an `n`-bead necklace.
    Cyclic(usize),
    /// Rotations and reflections of an `n`-bead necklace.
    Dihedral(usize),
}

impl BuiltinGroup {
    pub fn group(&self) -> Result<PermGroup> {
        match *self {
            BuiltinGroup::CubeFaces => cube_action(&cube_faces()),
            BuiltinGroup::CubeVertices => cube_action(&cube_vertices()),
            BuiltinGroup::CubeEdges => cube_action(&cube_edges()),
            BuiltinGroup::Cyclic(n) => {
                check_beads(n)?;
                close_group(n, &[rotation(n)])
            }
            BuiltinGroup::Dihedral(n) => {
                check_beads(n)?;
                let reflection = Permutation((0..n).map(|i| (n - i) % n).collect());
                close_group(n, &[rotation(n), reflection])
            }
        }
    }
}

fn check_beads(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidParameter(String::from("a necklace needs at least one bead")));
    }
    Ok(())
}

fn rotation(n: usize) -> Permutation {
    Permutation((0..n).map(|i| (i + 1) % n).collect())
}

impl fmt::Display for BuiltinGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BuiltinGroup::CubeFaces => f.write_str("cube-faces"),
            BuiltinGroup::CubeVertices => f.write_str("cube-vertices"),
            BuiltinGroup::CubeEdges => f.write_str("cube-edges"),
            BuiltinGroup::Cyclic(n) => write!(f, "cyclic:{n}"),
            BuiltinGroup::Dihedral(n) => write!(f, "dihedral:{n}"),
        }
    }
}

impl FromStr for BuiltinGroup {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidParameter(format!("unknown group {s:?}"));
        match s {
            "cube-faces" => Ok(BuiltinGroup::CubeFaces),
            "cube-vertices" => Ok(BuiltinGroup::CubeVertices),
            "cube-edges" => Ok(BuiltinGroup::CubeEdges),
            _ => {
                let (kind, n) = s.split_once(':').ok_or_else(bad)?;
                let n: usize = n.trim().parse().map_err(|_| bad())?;
                check_beads(n)?;
                match kind {
                    "cyclic" => Ok(BuiltinGroup::Cyclic(n)),
                    "dihedral" => Ok(BuiltinGroup::Dihedral(n)),
                    _ => Err(bad()),
                }
            }
        }
    }
}

type Vec3 = [i32; 3];

// 90 degree turns about the z and x axes
const TURN_Z: [Vec3; 3] = [[0, -1, 0], [1, 0, 0], [0, 0, 1]];
const TURN_X: [Vec3; 3] = [[1, 0, 0], [0, 0, -1], [0, 1, 0]];

fn rotate(m: &[Vec3; 3], p: &Vec3) -> Vec3 {
    let mut out = [0; 3];
    for (i, row) in m.iter().enumerate() {
        out[i] = row.iter().zip(p).map(|(a, b)| a * b).sum();
    }
    out
}

/// Face centers in the order +x, -x, +y, -y, +z, -z.
pub fn cube_faces() -> Vec<Vec3> {
    vec![[1, 0, 0], [-1, 0, 0], [0, 1, 0], [0, -1, 0], [0, 0, 1], [0, 0, -1]]
}

/// Vertices `(+-1, +-1, +-1)` in lexicographic order.
pub fn cube_vertices() -> Vec<Vec3> {
    let mut v = Vec::new();
    for x in [-1, 1] {
        for y in [-1, 1] {
            for z in [-1, 1] {
                v.push([x, y, z]);
            }
        }
    }
    v
}

/// Edge midpoints: one coordinate zero, the others `+-1`.
pub fn cube_edges() -> Vec<Vec3> {
    let mut v = Vec::new();
    for zero in 0..3 {
        for a in [-1, 1] {
            for b in [-1, 1] {
                let mut p = [0; 3];
                let others: Vec<usize> = (0..3).filter(|&i| i != zero).collect();
                p[others[0]] = a;
                p[others[1]] = b;
                v.push(p);
            }
        }
    }
    v
}

fn cube_action(points: &[Vec3]) -> Result<PermGroup> {
    let perm = |m: &[Vec3; 3]| -> Permutation {
        Permutation(
            points
                .iter()
                .map(|p| {
                    let q = rotate(m, p);
                    points.iter().position(|x| *x == q).expect("rotations permute the point set")
                })
                .collect(),
        )
    };
    close_group(points.len(), &[perm(&TURN_Z), perm(&TURN_X)])
}

/// Coefficient of the monomial with the given color exponents.
pub fn inventory_coefficient(inventory: &MultiPoly, exponents: &[(&str, u32)]) -> BigRational {
    inventory.coefficient(&Monomial::from_pairs(exponents.iter().copied()))
}

/// `true` when every coefficient is an integer.
pub fn has_integer_coefficients(p: &MultiPoly) -> bool {
    p.terms().all(|(_, c)| c.is_integer())
}

/// Group elements as a cycle-notation string, for display.
pub fn cycle_notation(p: &Permutation) -> String {
    let cycles: Vec<String> = p
        .cycles()
        .into_iter()
        .filter(|c| c.len() > 1)
        .map(|c| {
            let parts: Vec<String> = c.iter().map(ToString::to_string).collect();
            format!("({})", parts.join(" "))
        })
        .collect();
    if cycles.is_empty() {
        String::from("()")
    } else {
        cycles.concat()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn cycle_types() {
        assert_eq!(cycle_type(&Permutation::identity(6)).counts(), [6, 0, 0, 0, 0, 0]);
        let g = BuiltinGroup::CubeFaces.group().unwrap();
        let turn = g.elements().iter().find(|p| cycle_type(p).count(4) == 1).unwrap();
        assert_eq!(cycle_type(turn).counts()[..4], [2, 0, 0, 1]);
        assert_eq!(cycle_type(&Permutation::new(vec![1, 0]).unwrap()).counts(), [0, 1]);
        assert_eq!(cycle_type(&Permutation::identity(3)).to_string(), "(3,0,0)");
    }

    #[test]
    fn permutation_validation() {
        assert!(Permutation::new(vec![0, 0]).is_err());
        assert!(Permutation::new(vec![2, 0]).is_err());
        let p = Permutation::from_cycles(4, &[&[0, 1, 2]]).unwrap();
        assert_eq!(p.images(), [1, 2, 0, 3]);
        assert_eq!(cycle_notation(&p), "(0 1 2)");
        assert!(p.compose(&p.inverse()).is_identity());
    }

    #[test]
    fn closure() {
        assert_eq!(close_group(3, &[]).unwrap().order(), 1);
        let four = Permutation::from_cycles(4, &[&[0, 1, 2, 3]]).unwrap();
        assert_eq!(close_group(4, &[four.clone()]).unwrap().order(), 4);
        assert_eq!(close_group(5, &[four]), Err(Error::DegreeMismatch { expected: 5, found: 4 }));
        for b in [BuiltinGroup::CubeFaces, BuiltinGroup::CubeVertices, BuiltinGroup::CubeEdges] {
            let g = b.group().unwrap();
            assert_eq!(g.order(), 24);
            assert!(g.is_group());
        }
        assert_eq!(BuiltinGroup::Dihedral(6).group().unwrap().order(), 12);
        assert_eq!(BuiltinGroup::Cyclic(7).group().unwrap().order(), 7);
    }

    #[test]
    fn cube_cycle_indices() {
        let faces = cycle_index(&BuiltinGroup::CubeFaces.group().unwrap());
        assert_eq!(faces.to_string(), "1/24 (x1^6 + 3 x1^2 x2^2 + 6 x1^2 x4 + 6 x2^3 + 8 x3^2)");
        let vertices = cycle_index(&BuiltinGroup::CubeVertices.group().unwrap());
        assert_eq!(vertices.to_string(), "1/24 (x1^8 + 8 x1^2 x3^2 + 9 x2^4 + 6 x4^2)");
        let edges = cycle_index(&BuiltinGroup::CubeEdges.group().unwrap());
        assert_eq!(edges.to_string(), "1/24 (x1^12 + 6 x1^2 x2^5 + 3 x2^6 + 8 x3^4 + 6 x4^3)");
        for ci in [&faces, &vertices, &edges] {
            assert_eq!(ci.scaled_coefficient_sum(), BigInt::from(24));
            assert_eq!(ci.poly().coefficient_sum(), q(1));
        }
    }

    #[test]
    fn orbit_counts() {
        assert_eq!(count_orbits(&close_group(5, &[]).unwrap(), 5).unwrap(), BigInt::from(5));
        assert_eq!(count_orbits(&BuiltinGroup::Cyclic(4).group().unwrap(), 4).unwrap(), BigInt::one());
        let faces = BuiltinGroup::CubeFaces.group().unwrap();
        assert_eq!(count_orbits(&faces, 6).unwrap(), BigInt::one());
        assert!(count_orbits(&faces, 5).is_err());
    }

    #[test]
    fn pattern_counts() {
        let faces = cycle_index(&BuiltinGroup::CubeFaces.group().unwrap());
        assert_eq!(count_patterns(&faces, 2), BigInt::from(10));
        assert_eq!(count_patterns(&faces, 1), BigInt::one());
        let g = BuiltinGroup::CubeVertices.group().unwrap();
        let oracle = orbit_inventory_oracle(&g, &ColorWeighting::unit(2).unwrap()).unwrap();
        assert_eq!(oracle.as_constant(), Some(q(23)));
        assert_eq!(count_patterns(&cycle_index(&g), 2), BigInt::from(23));
    }

    #[test]
    fn face_inventory() {
        let faces = cycle_index(&BuiltinGroup::CubeFaces.group().unwrap());
        let inv = pattern_inventory(&faces, &ColorWeighting::from_names(&["z", "w"]).unwrap());
        assert_eq!(inventory_coefficient(&inv, &[("z", 4), ("w", 2)]), q(2));
        assert_eq!(inv.coefficient_sum(), q(10));
        assert_eq!(
            inv.to_string(),
            "w^6 + w^5 z + 2 w^4 z^2 + 2 w^3 z^3 + 2 w^2 z^4 + w z^5 + z^6"
        );
        assert!(has_integer_coefficients(&inv));
    }

    #[test]
    fn oracle_examples() {
        let trivial = close_group(1, &[]).unwrap();
        let zw = ColorWeighting::from_names(&["z", "w"]).unwrap();
        assert_eq!(orbit_inventory_oracle(&trivial, &zw).unwrap(), &MultiPoly::var("z") + &MultiPoly::var("w"));
        let c3 = BuiltinGroup::Cyclic(3).group().unwrap();
        let inv = orbit_inventory_oracle(&c3, &zw).unwrap();
        assert_eq!(inv.coefficient_sum(), q(4));
        assert_eq!(inv, pattern_inventory(&cycle_index(&c3), &zw));
        let big = BuiltinGroup::Cyclic(21).group().unwrap();
        assert!(matches!(orbit_inventory_oracle(&big, &zw), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn weighted_fixed_points() {
        let zw = ColorWeighting::from_names(&["z", "w", "v"]).unwrap();
        for g in BuiltinGroup::CubeFaces.group().unwrap().elements() {
            assert_eq!(fixed_coloring_weight(g, &zw), fixed_coloring_weight_bruteforce(g, &zw).unwrap());
        }
    }

    #[test]
    fn action_is_homomorphism() {
        let g = BuiltinGroup::CubeEdges.group().unwrap();
        let f: Vec<usize> = (0..12).map(|i| (i * 7 + 3) % 4).collect();
        for a in g.elements() {
            for b in g.elements() {
                let lhs = a.compose(b).act_on_coloring(&f);
                let rhs = a.act_on_coloring(&b.act_on_coloring(&f));
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn color_interchange() {
        // two-colored necklaces of 4 beads up to rotation and swapping colors
        let c4 = BuiltinGroup::Cyclic(4).group().unwrap();
        let swap = BuiltinGroup::Cyclic(2).group().unwrap();
        assert_eq!(count_orbits_with_color_group(&c4, &swap).unwrap(), BigInt::from(4));
        let none = close_group(2, &[]).unwrap();
        assert_eq!(count_orbits_with_color_group(&c4, &none).unwrap(), BigInt::from(6));
    }

    #[test]
    fn group_names() {
        for s in ["cube-faces", "cube-vertices", "cube-edges", "cyclic:5", "dihedral:8"] {
            assert_eq!(s.parse::<BuiltinGroup>().unwrap().to_string(), s);
        }
        assert!("cyclic:0".parse::<BuiltinGroup>().is_err());
        assert!("sphere".parse::<BuiltinGroup>().is_err());
        assert!("cyclic:x".parse::<BuiltinGroup>().is_err());
    }
}
