//! Perfect matchings (dimer covers) and Pfaffian orientations.
//!
//! A circuit is a closed walk through distinct nodes listed as
//! `[i_1, ..., i_k]`; its sign under an orientation `eps` is
//! `-eps(i_1,i_2) * eps(i_2,i_3) * ... * eps(i_k,i_1)`. An orientation is
//! Pfaffian when every circuit of every cover by even circuits has sign +1,
//! and then the skew matrix `a_ij = eps_ij * b_ij` has `det = S^2` where `S`
//! sums the edge-weight products of all perfect matchings.

mod embedding;

pub use embedding::{
    check_clockwise_odd, grid_embedding, kasteleyn_orient, PlanarBuilder, PlanarEmbedding,
};

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::exactalg::{integer_sqrt_exact, IntMatrix};
use crate::{Error, Result};

/// Node limit of the brute-force matching oracle.
pub const BRUTEFORCE_NODE_LIMIT: usize = 20;

/// Node limit of the exhaustive Pfaffian check.
pub const PFAFFIAN_CHECK_NODE_LIMIT: usize = 14;

/// Dimension limit of [`polya_matrix_check`] and [`find_polya_signing`].
pub const POLYA_DIMENSION_LIMIT: usize = 20;

/// Largest number of ones [`find_polya_signing`] will sign exhaustively.
pub const POLYA_SIGNING_ONES_LIMIT: usize = 20;

/// Simple undirected graph with integer edge weights (default 1).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UndirectedGraph {
    nodes: usize,
    edges: BTreeMap<(usize, usize), BigInt>,
}

fn key(u: usize, v: usize) -> (usize, usize) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

impl UndirectedGraph {
    pub fn new(nodes: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let weighted: Vec<_> = edges.iter().map(|&(u, v)| (u, v, BigInt::one())).collect();
        Self::with_weights(nodes, weighted)
    }

    pub fn with_weights(nodes: usize, edges: Vec<(usize, usize, BigInt)>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (u, v, w) in edges {
            if u >= nodes || v >= nodes {
                return Err(Error::InvalidGraph(format!(
                    "edge {{{u}, {v}}} has an endpoint outside 0..{nodes}"
                )));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("loop at node {u}")));
            }
            if map.insert(key(u, v), w).is_some() {
                return Err(Error::InvalidGraph(format!("edge {{{u}, {v}}} is repeated")));
            }
        }
        Ok(Self { nodes, edges: map })
    }

    pub fn node_count(&self) -> usize {
        self.nodes
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `(u, v, weight)` with `u < v`, sorted.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, &BigInt)> {
        self.edges.iter().map(|(&(u, v), w)| (u, v, w))
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.contains_key(&key(u, v))
    }

    pub fn weight(&self, u: usize, v: usize) -> Option<&BigInt> {
        self.edges.get(&key(u, v))
    }

    pub fn is_unweighted(&self) -> bool {
        self.edges.values().all(One::is_one)
    }

    /// Sorted neighbor lists.
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.nodes];
        for &(u, v) in self.edges.keys() {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        adj
    }

    pub fn is_connected(&self) -> bool {
        if self.nodes == 0 {
            return true;
        }
        let adj = self.adjacency();
        let mut seen = vec![false; self.nodes];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(u) = stack.pop() {
            for &v in &adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    fn masks(&self) -> Vec<u64> {
        let mut m = vec![0u64; self.nodes];
        for &(u, v) in self.edges.keys() {
            m[u] |= 1 << v;
            m[v] |= 1 << u;
        }
        m
    }
}

fn check_oracle_size(n: usize, limit: usize) -> Result<()> {
    if n > limit {
        return Err(Error::TooLarge { size: n as u128, limit: limit as u128 });
    }
    Ok(())
}

/// Number of perfect matchings, by branching on the lowest unmatched node.
pub fn count_matchings_bruteforce(g: &UndirectedGraph) -> Result<BigInt> {
    check_oracle_size(g.nodes, BRUTEFORCE_NODE_LIMIT)?;
    if g.nodes % 2 == 1 {
        return Ok(BigInt::zero());
    }
    let adj = g.masks();
    let full = (1u64 << g.nodes) - 1;
    let mut memo = BTreeMap::new();
    Ok(BigInt::from(matchings_from(&adj, full, &mut memo)))
}

fn matchings_from(adj: &[u64], free: u64, memo: &mut BTreeMap<u64, u64>) -> u64 {
    if free == 0 {
        return 1;
    }
    if let Some(&c) = memo.get(&free) {
        return c;
    }
    let u = free.trailing_zeros() as usize;
    let rest = free & !(1 << u);
    let mut options = adj[u] & rest;
    let mut total = 0;
    while options != 0 {
        let v = options.trailing_zeros();
        options &= options - 1;
        total += matchings_from(adj, rest & !(1 << v), memo);
    }
    memo.insert(free, total);
    total
}

/// Sum over perfect matchings of the product of their edge weights.
pub fn matching_weight_sum_bruteforce(g: &UndirectedGraph) -> Result<BigInt> {
    check_oracle_size(g.nodes, BRUTEFORCE_NODE_LIMIT)?;
    let mut total = BigInt::zero();
    for m in list_matchings(g)? {
        total += m.iter().map(|&(u, v)| g.weight(u, v).unwrap()).product::<BigInt>();
    }
    Ok(total)
}

/// Every perfect matching as a sorted edge list.
pub fn list_matchings(g: &UndirectedGraph) -> Result<Vec<Vec<(usize, usize)>>> {
    check_oracle_size(g.nodes, BRUTEFORCE_NODE_LIMIT)?;
    let mut out = Vec::new();
    if g.nodes.is_multiple_of(2) {
        let adj = g.masks();
        let mut current = Vec::new();
        collect_matchings(&adj, (1u64 << g.nodes) - 1, &mut current, &mut out);
    }
    Ok(out)
}

fn collect_matchings(adj: &[u64], free: u64, current: &mut Vec<(usize, usize)>, out: &mut Vec<Vec<(usize, usize)>>) {
    if free == 0 {
        out.push(current.clone());
        return;
    }
    let u = free.trailing_zeros() as usize;
    let rest = free & !(1 << u);
    let mut options = adj[u] & rest;
    while options != 0 {
        let v = options.trailing_zeros() as usize;
        options &= options - 1;
        current.push((u, v));
        collect_matchings(adj, rest & !(1 << v), current, out);
        current.pop();
    }
}

/// Signs `eps(i, j) = -eps(j, i)` on the edges of a graph.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Orientation {
    // keyed by (low, high); +1 means low -> high
    signs: BTreeMap<(usize, usize), i8>,
}

impl Orientation {
    /// Every edge directed from its lower to its higher endpoint.
    pub fn low_to_high(g: &UndirectedGraph) -> Self {
        Self { signs: g.edges.keys().map(|&k| (k, 1)).collect() }
    }

    /// Builds an orientation from directed pairs `(tail, head)`, one per edge.
    pub fn from_arcs(g: &UndirectedGraph, arcs: &[(usize, usize)]) -> Result<Self> {
        let mut signs = BTreeMap::new();
        for &(t, h) in arcs {
            if !g.has_edge(t, h) {
                return Err(Error::NotAnEdge(t, h));
            }
            let s = if t < h { 1 } else { -1 };
            if signs.insert(key(t, h), s).is_some() {
                return Err(Error::InvalidOrientation(format!("edge {{{t}, {h}}} is oriented twice")));
            }
        }
        if signs.len() != g.edge_count() {
            let (u, v) = g.edges.keys().find(|k| !signs.contains_key(k)).copied().unwrap();
            return Err(Error::InvalidOrientation(format!("edge {{{u}, {v}}} has no orientation")));
        }
        Ok(Self { signs })
    }

    /// `eps(u, v)`: +1 when the edge points from `u` to `v`.
    pub fn sign(&self, u: usize, v: usize) -> Result<i8> {
        let s = *self.signs.get(&key(u, v)).ok_or(Error::NotAnEdge(u, v))?;
        Ok(if u < v { s } else { -s })
    }

    /// Points the edge `{u, v}` from `u` to `v`.
    pub fn set(&mut self, u: usize, v: usize) -> Result<()> {
        let slot = self.signs.get_mut(&key(u, v)).ok_or(Error::NotAnEdge(u, v))?;
        *slot = if u < v { 1 } else { -1 };
        Ok(())
    }

    pub fn flip(&mut self, u: usize, v: usize) -> Result<()> {
        let slot = self.signs.get_mut(&key(u, v)).ok_or(Error::NotAnEdge(u, v))?;
        *slot = -*slot;
        Ok(())
    }

    /// Edges as `(tail, head)` pairs, sorted by their unordered key.
    pub fn arcs(&self) -> Vec<(usize, usize)> {
        self.signs.iter().map(|(&(u, v), &s)| if s > 0 { (u, v) } else { (v, u) }).collect()
    }

    pub fn out_degrees(&self, nodes: usize) -> Vec<usize> {
        let mut d = vec![0; nodes];
        for (t, _) in self.arcs() {
            d[t] += 1;
        }
        d
    }

    fn covers(&self, g: &UndirectedGraph) -> bool {
        self.signs.len() == g.edge_count() && g.edges.keys().all(|k| self.signs.contains_key(k))
    }
}

/// Sign of an even circuit given by its node sequence.
pub fn circuit_sign(o: &Orientation, circuit: &[usize]) -> Result<i8> {
    let k = circuit.len();
    if k % 2 == 1 || k == 0 {
        return Err(Error::OddCircuit(k));
    }
    if k == 2 {
        o.sign(circuit[0], circuit[1])?;
        return Ok(1);
    }
    let mut prod = -1i8;
    for i in 0..k {
        prod *= o.sign(circuit[i], circuit[(i + 1) % k])?;
    }
    Ok(prod)
}

/// A set of node-disjoint circuits covering every node.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CircuitCover {
    pub circuits: Vec<Vec<usize>>,
}

impl CircuitCover {
    /// Number of circuits longer than two.
    pub fn long_circuits(&self) -> usize {
        self.circuits.iter().filter(|c| c.len() > 2).count()
    }

    /// Product of the weights of its circuits; a 2-circuit `{i, j}` weighs
    /// `b_ij^2`.
    pub fn weight(&self, g: &UndirectedGraph) -> BigInt {
        let mut w = BigInt::one();
        for c in &self.circuits {
            for i in 0..c.len() {
                w *= g.weight(c[i], c[(i + 1) % c.len()]).expect("circuit edges exist");
            }
        }
        w
    }
}

/// All covers by even circuits, each circuit listed once (lowest node
/// first, second node smaller than the last).
pub fn even_circuit_covers(g: &UndirectedGraph) -> Result<Vec<CircuitCover>> {
    check_oracle_size(g.nodes, PFAFFIAN_CHECK_NODE_LIMIT)?;
    let adj = g.masks();
    let mut out = Vec::new();
    if g.nodes.is_multiple_of(2) {
        let mut current = Vec::new();
        cover_from(&adj, (1u64 << g.nodes) - 1, &mut current, &mut out);
    }
    Ok(out)
}

fn cover_from(adj: &[u64], free: u64, current: &mut Vec<Vec<usize>>, out: &mut Vec<CircuitCover>) {
    if free == 0 {
        out.push(CircuitCover { circuits: current.clone() });
        return;
    }
    let s = free.trailing_zeros() as usize;
    let mut path = vec![s];
    let mut cycles = Vec::new();
    cycles_through(adj, free & !(1 << s), &mut path, &mut cycles);
    for c in cycles {
        let rest = c.iter().fold(free, |m, &v| m & !(1 << v));
        current.push(c);
        cover_from(adj, rest, current, out);
        current.pop();
    }
}

/// Even circuits starting at `path[0]` through nodes of `free`, each listed
/// once; 2-circuits included.
fn cycles_through(adj: &[u64], free: u64, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    let s = path[0];
    let last = *path.last().unwrap();
    if path.len() >= 2 && path.len().is_multiple_of(2) && adj[last] & (1 << s) != 0 && (path.len() == 2 || path[1] < last) {
        out.push(path.clone());
    }
    let mut options = adj[last] & free;
    while options != 0 {
        let v = options.trailing_zeros() as usize;
        options &= options - 1;
        path.push(v);
        cycles_through(adj, free & !(1 << v), path, out);
        path.pop();
    }
}

/// True iff every circuit in every even circuit cover has sign +1.
///
/// An even circuit `C` of length at least 4 lies in some even cover exactly
/// when `G - V(C)` has a perfect matching, so the search runs over simple
/// even circuits and consults a memoized matching test instead of listing
/// covers; [`even_circuit_covers`] is the literal enumeration.
pub fn is_pfaffian_orientation(g: &UndirectedGraph, o: &Orientation) -> Result<bool> {
    check_oracle_size(g.nodes, PFAFFIAN_CHECK_NODE_LIMIT)?;
    if !o.covers(g) {
        return Err(Error::InvalidOrientation(String::from("orientation does not match the edge set")));
    }
    if g.nodes % 2 == 1 {
        return Ok(true);
    }
    let adj = g.masks();
    let full = (1u64 << g.nodes) - 1;
    let mut memo = BTreeMap::new();
    for s in 0..g.nodes {
        let mut path = vec![s];
        let allowed = full & !((2u64 << s) - 1);
        let mut bad = false;
        long_cycles_from(&adj, allowed, &mut path, &mut |c: &[usize]| {
            if circuit_sign(o, c) == Ok(-1) {
                let rest = c.iter().fold(full, |m, &v| m & !(1 << v));
                if matchings_from(&adj, rest, &mut memo) > 0 {
                    bad = true;
                }
            }
            bad
        });
        if bad {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Visits simple even cycles of length >= 4 whose lowest node is `path[0]`;
/// stops early once `visit` returns true.
fn long_cycles_from(adj: &[u64], free: u64, path: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
    let s = path[0];
    let last = *path.last().unwrap();
    if path.len() >= 4 && path.len().is_multiple_of(2) && adj[last] & (1 << s) != 0 && path[1] < last && visit(path) {
        return true;
    }
    let mut options = adj[last] & free;
    while options != 0 {
        let v = options.trailing_zeros() as usize;
        options &= options - 1;
        path.push(v);
        let stop = long_cycles_from(adj, free & !(1 << v), path, visit);
        path.pop();
        if stop {
            return true;
        }
    }
    false
}

/// The skew matrix `a_ij = eps_ij * b_ij`.
pub fn skew_matrix(g: &UndirectedGraph, o: &Orientation) -> Result<IntMatrix> {
    if !o.covers(g) {
        return Err(Error::InvalidOrientation(String::from("orientation does not match the edge set")));
    }
    let mut m = IntMatrix::zero(g.nodes);
    for (u, v, w) in g.edges() {
        let s = BigInt::from(o.sign(u, v)?);
        m.set(u, v, &s * w);
        m.set(v, u, -(s * w));
    }
    Ok(m)
}

/// Square root of `det(A)`.
///
/// For a Pfaffian orientation this is the number of perfect matchings (unit
/// weights) or the absolute value of the weighted matching sum. Any other
/// orientation still yields the absolute Pfaffian, which then undercounts.
pub fn count_matchings_fkt(g: &UndirectedGraph, o: &Orientation) -> Result<BigInt> {
    integer_sqrt_exact(&skew_matrix(g, o)?.det())
}

/// An orientation in which every node other than `v` has odd out-degree.
///
/// Starts from the low-to-high orientation and, while some node `u != v`
/// has even out-degree, reverses every edge on a shortest `u`-`v` path.
pub fn little_orientation(g: &UndirectedGraph, v: usize) -> Result<Orientation> {
    if v >= g.nodes {
        return Err(Error::IndexOutOfRange { index: v, size: g.nodes });
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let adj = g.adjacency();
    // BFS tree toward v gives one fixed path from every node
    let mut toward = vec![usize::MAX; g.nodes];
    let mut queue = alloc::collections::VecDeque::from([v]);
    toward[v] = v;
    while let Some(x) = queue.pop_front() {
        for &y in &adj[x] {
            if toward[y] == usize::MAX {
                toward[y] = x;
                queue.push_back(y);
            }
        }
    }
    let mut o = Orientation::low_to_high(g);
    let mut out = o.out_degrees(g.nodes);
    for u in 0..g.nodes {
        if u == v || out[u] % 2 == 1 {
            continue;
        }
        let mut x = u;
        while x != v {
            let y = toward[x];
            if o.sign(x, y)? > 0 {
                out[x] -= 1;
                out[y] += 1;
            } else {
                out[x] += 1;
                out[y] -= 1;
            }
            o.flip(x, y)?;
            x = y;
        }
    }
    debug_assert!((0..g.nodes).all(|x| x == v || out[x] % 2 == 1));
    Ok(o)
}

fn check_signing(a01: &IntMatrix, b: &IntMatrix) -> Result<()> {
    if a01.dim() != b.dim() {
        return Err(Error::ShapeMismatch(format!("dimensions {} and {} differ", a01.dim(), b.dim())));
    }
    if a01.dim() > POLYA_DIMENSION_LIMIT {
        return Err(Error::DimensionTooLarge { dim: a01.dim(), cap: POLYA_DIMENSION_LIMIT });
    }
    for i in 0..a01.dim() {
        for j in 0..a01.dim() {
            let (a, s) = (a01.get(i, j), b.get(i, j));
            if !a.is_zero() && !a.is_one() {
                return Err(Error::ShapeMismatch(format!("entry ({i}, {j}) of the 0/1 matrix is {a}")));
            }
            if &s.abs() != a {
                return Err(Error::ShapeMismatch(format!("entry ({i}, {j}) is {s}, not a signing of {a}")));
            }
        }
    }
    Ok(())
}

/// True iff `b`, a signing of the 0/1 matrix `a01`, has `det(b) = perm(a01)`.
pub fn polya_matrix_check(a01: &IntMatrix, b: &IntMatrix) -> Result<bool> {
    check_signing(a01, b)?;
    Ok(a01.permanent_ryser_capped(POLYA_DIMENSION_LIMIT)? == b.det())
}

/// Searches all signings of `a01` for one whose determinant equals the
/// permanent.
pub fn find_polya_signing(a01: &IntMatrix) -> Result<Option<IntMatrix>> {
    check_signing(a01, a01)?;
    let ones: Vec<(usize, usize)> = (0..a01.dim())
        .flat_map(|i| (0..a01.dim()).map(move |j| (i, j)))
        .filter(|&(i, j)| a01.get(i, j).is_one())
        .collect();
    check_oracle_size(ones.len(), POLYA_SIGNING_ONES_LIMIT)?;
    let perm = a01.permanent_ryser_capped(POLYA_DIMENSION_LIMIT)?;
    for mask in 0u64..(1 << ones.len()) {
        let mut b = a01.clone();
        for (bit, &(i, j)) in ones.iter().enumerate() {
            if mask >> bit & 1 == 1 {
                b.set(i, j, -BigInt::one());
            }
        }
        if b.det() == perm {
            return Ok(Some(b));
        }
    }
    Ok(None)
}

/// Splits a bipartite graph with equal sides into its biadjacency matrix
/// (rows: side containing the lowest node of each component).
pub fn biadjacency(g: &UndirectedGraph) -> Option<(Vec<usize>, Vec<usize>, IntMatrix)> {
    let adj = g.adjacency();
    let mut side = vec![u8::MAX; g.nodes];
    for s in 0..g.nodes {
        if side[s] != u8::MAX {
            continue;
        }
        side[s] = 0;
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for &v in &adj[u] {
                if side[v] == u8::MAX {
                    side[v] = 1 - side[u];
                    stack.push(v);
                } else if side[v] == side[u] {
                    return None;
                }
            }
        }
    }
    let left: Vec<usize> = (0..g.nodes).filter(|&v| side[v] == 0).collect();
    let right: Vec<usize> = (0..g.nodes).filter(|&v| side[v] == 1).collect();
    if left.len() != right.len() {
        return None;
    }
    let m = IntMatrix::from_fn(left.len(), |i, j| {
        g.weight(left[i], right[j]).cloned().unwrap_or_else(BigInt::zero)
    });
    Some((left, right, m))
}

/// Weighted matching sum of a bipartite graph via the Ryser permanent of
/// its biadjacency matrix; `None` when the graph is not bipartite with
/// equal sides.
pub fn count_matchings_bipartite(g: &UndirectedGraph) -> Result<Option<BigInt>> {
    match biadjacency(g) {
        Some((_, _, m)) => Ok(Some(m.permanent_ryser()?)),
        None => Ok(None),
    }
}

/// Grid graph with node `r * cols + c`.
pub fn grid_graph(rows: usize, cols: usize) -> UndirectedGraph {
    let mut edges = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            let v = r * cols + c;
            if c + 1 < cols {
                edges.push((v, v + 1));
            }
            if r + 1 < rows {
                edges.push((v, v + cols));
            }
        }
    }
    UndirectedGraph::new(rows * cols, &edges).expect("grid edges are valid")
}
