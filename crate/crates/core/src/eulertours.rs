//! Directed multigraphs, arborescence counting and Euler tours.
//!
//! Tours are counted with a fixed first arc: two tours are the same when they
//! list the same arcs in the same order starting from arc 0. The fast count
//! ([`count_euler_tours`]) and the backtracking oracle
//! ([`enumerate_euler_tours`]) use that same anchor.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::exactalg::{factorial, IntMatrix};
use crate::{Error, Result};

/// Largest arc count accepted by the backtracking tour oracle.
pub const ORACLE_ARC_LIMIT: usize = 16;

/// Largest number of arc-choice functions [`enumerate_arborescences`] tries.
pub const ARBORESCENCE_SEARCH_LIMIT: u128 = 1 << 22;

/// Directed graph with parallel arcs and loops. Arcs are identified by their
/// position in the arc list.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DirectedMultigraph {
    nodes: usize,
    arcs: Vec<(usize, usize)>,
}

impl DirectedMultigraph {
    pub fn new(nodes: usize, arcs: Vec<(usize, usize)>) -> Result<Self> {
        if let Some(&(t, h)) = arcs.iter().find(|&&(t, h)| t >= nodes || h >= nodes) {
            return Err(Error::InvalidGraph(format!(
                "arc ({t}, {h}) has an endpoint outside 0..{nodes}"
            )));
        }
        Ok(Self { nodes, arcs })
    }

    pub fn node_count(&self) -> usize {
        self.nodes
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    pub fn tail(&self, arc: usize) -> usize {
        self.arcs[arc].0
    }

    pub fn head(&self, arc: usize) -> usize {
        self.arcs[arc].1
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.arcs.iter().filter(|a| a.0 == v).count()
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.arcs.iter().filter(|a| a.1 == v).count()
    }

    /// Outgoing arcs of every node, each list in arc order.
    pub fn out_arcs(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.nodes];
        for (i, &(t, _)) in self.arcs.iter().enumerate() {
            out[t].push(i);
        }
        out
    }

    /// Nodes touched by at least one arc.
    pub fn active_nodes(&self) -> Vec<bool> {
        let mut active = vec![false; self.nodes];
        for &(t, h) in &self.arcs {
            active[t] = true;
            active[h] = true;
        }
        active
    }

    /// Drops nodes without arcs, renumbering the rest in order. Arc order is
    /// kept. Returns the new graph and the old index of each new node.
    pub fn without_isolated(&self) -> (DirectedMultigraph, Vec<usize>) {
        let active = self.active_nodes();
        let mut new_index = vec![usize::MAX; self.nodes];
        let mut old = Vec::new();
        for v in 0..self.nodes {
            if active[v] {
                new_index[v] = old.len();
                old.push(v);
            }
        }
        let arcs = self.arcs.iter().map(|&(t, h)| (new_index[t], new_index[h])).collect();
        (DirectedMultigraph { nodes: old.len(), arcs }, old)
    }

    fn weakly_connected_ignoring_isolated(&self) -> bool {
        let mut parent: Vec<usize> = (0..self.nodes).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for &(t, h) in &self.arcs {
            let (a, b) = (find(&mut parent, t), find(&mut parent, h));
            parent[a] = b;
        }
        let mut roots = self.arcs.iter().map(|&(t, _)| find(&mut parent, t));
        match roots.next() {
            None => true,
            Some(r) => roots.all(|x| x == r),
        }
    }
}

/// True iff every node is balanced and all arcs lie in one weak component.
/// Isolated nodes are ignored.
pub fn is_eulerian(g: &DirectedMultigraph) -> bool {
    let mut balance = vec![0i64; g.nodes];
    for &(t, h) in &g.arcs {
        balance[t] += 1;
        balance[h] -= 1;
    }
    balance.iter().all(|&b| b == 0) && g.weakly_connected_ignoring_isolated()
}

fn eulerian_reason(g: &DirectedMultigraph) -> String {
    for v in 0..g.nodes {
        let (i, o) = (g.in_degree(v), g.out_degree(v));
        if i != o {
            return format!("node {v} has in-degree {i} and out-degree {o}");
        }
    }
    String::from("arcs span more than one component")
}

/// Out-degree diagonal minus the arc-count matrix, loops left out.
pub fn laplacian(g: &DirectedMultigraph) -> IntMatrix {
    let n = g.nodes;
    let mut counts = vec![0i64; n * n];
    for &(t, h) in &g.arcs {
        if t != h {
            counts[t * n + t] += 1;
            counts[t * n + h] -= 1;
        }
    }
    IntMatrix::from_fn(n, |i, j| BigInt::from(counts[i * n + j]))
}

/// Number of spanning arborescences oriented toward `root`.
pub fn count_arborescences(g: &DirectedMultigraph, root: usize) -> Result<BigInt> {
    Ok(laplacian(g).minor(root)?.det())
}

/// Number of Euler tours starting with arc 0, by the BEST product formula.
pub fn count_euler_tours(g: &DirectedMultigraph) -> Result<BigInt> {
    if g.arcs.is_empty() {
        return Err(Error::EmptyGraph);
    }
    if !is_eulerian(g) {
        return Err(Error::NotEulerian(eulerian_reason(g)));
    }
    let (core, _) = g.without_isolated();
    let trees = count_arborescences(&core, core.tail(0))?;
    let mut total = trees;
    for v in 0..core.nodes {
        total *= factorial(core.out_degree(v) as u64 - 1);
    }
    Ok(total)
}

/// A closed walk through every arc exactly once.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EulerTour {
    pub arcs: Vec<usize>,
}

impl EulerTour {
    pub fn is_valid(&self, g: &DirectedMultigraph) -> bool {
        let m = g.arc_count();
        if self.arcs.len() != m || m == 0 {
            return false;
        }
        let mut seen = vec![false; m];
        for &a in &self.arcs {
            if a >= m || seen[a] {
                return false;
            }
            seen[a] = true;
        }
        (0..m).all(|i| g.head(self.arcs[i]) == g.tail(self.arcs[(i + 1) % m]))
    }
}

/// One Euler tour starting with arc 0 (Hierholzer's splicing).
pub fn euler_circuit(g: &DirectedMultigraph) -> Result<EulerTour> {
    if g.arcs.is_empty() {
        return Err(Error::EmptyGraph);
    }
    if !is_eulerian(g) {
        return Err(Error::NotEulerian(eulerian_reason(g)));
    }
    let out = g.out_arcs();
    let mut next = vec![0usize; g.nodes];
    let mut stack: Vec<(usize, Option<usize>)> = vec![(g.tail(0), None)];
    let mut circuit = Vec::with_capacity(g.arc_count());
    while let Some(&(v, via)) = stack.last() {
        if next[v] < out[v].len() {
            let a = out[v][next[v]];
            next[v] += 1;
            stack.push((g.head(a), Some(a)));
        } else {
            stack.pop();
            circuit.extend(via);
        }
    }
    circuit.reverse();
    Ok(EulerTour { arcs: circuit })
}

fn check_oracle_input(g: &DirectedMultigraph) -> Result<()> {
    if g.arcs.len() > ORACLE_ARC_LIMIT {
        return Err(Error::TooLarge { size: g.arcs.len() as u128, limit: ORACLE_ARC_LIMIT as u128 });
    }
    if g.arcs.is_empty() {
        return Err(Error::EmptyGraph);
    }
    if !is_eulerian(g) {
        return Err(Error::NotEulerian(eulerian_reason(g)));
    }
    Ok(())
}

fn backtrack_tours(g: &DirectedMultigraph, mut visit: impl FnMut(&[usize])) {
    let out = g.out_arcs();
    let m = g.arc_count();
    let mut used = vec![false; m];
    let mut path = vec![0usize];
    used[0] = true;
    // choice[k] is the index in out[..] tried for position k + 1
    let mut choice: Vec<usize> = vec![0];
    loop {
        if path.len() == m {
            if g.head(path[m - 1]) == g.tail(0) {
                visit(&path);
            }
            choice.pop();
            let a = path.pop().unwrap();
            used[a] = false;
            if path.is_empty() {
                return;
            }
            continue;
        }
        let v = g.head(*path.last().unwrap());
        let k = choice.len() - 1;
        let mut advanced = false;
        while choice[k] < out[v].len() {
            let a = out[v][choice[k]];
            choice[k] += 1;
            if !used[a] {
                used[a] = true;
                path.push(a);
                choice.push(0);
                advanced = true;
                break;
            }
        }
        if !advanced {
            choice.pop();
            let a = path.pop().unwrap();
            used[a] = false;
            if path.is_empty() {
                return;
            }
        }
    }
}

/// Counts Euler tours starting with arc 0 by exhaustive backtracking.
pub fn enumerate_euler_tours(g: &DirectedMultigraph) -> Result<BigInt> {
    check_oracle_input(g)?;
    let mut count = 0u64;
    backtrack_tours(g, |_| count += 1);
    Ok(BigInt::from(count))
}

/// Lists every Euler tour starting with arc 0, in lexicographic order.
pub fn list_euler_tours(g: &DirectedMultigraph) -> Result<Vec<EulerTour>> {
    check_oracle_input(g)?;
    let mut tours = Vec::new();
    backtrack_tours(g, |p| tours.push(EulerTour { arcs: p.to_vec() }));
    Ok(tours)
}

/// A spanning tree oriented toward `root`: every other node picks one
/// outgoing arc.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Arborescence {
    pub root: usize,
    pub parent_arc: Vec<Option<usize>>,
}

impl Arborescence {
    pub fn validate(&self, g: &DirectedMultigraph) -> Result<()> {
        let n = g.node_count();
        let bad = |msg: String| Err(Error::InvalidArborescence(msg));
        if self.root >= n || self.parent_arc.len() != n {
            return bad(format!("root {} or parent table does not fit {n} nodes", self.root));
        }
        for v in 0..n {
            match (v == self.root, self.parent_arc[v]) {
                (true, Some(_)) => return bad(format!("root {v} has an outgoing tree arc")),
                (false, None) => return bad(format!("node {v} has no tree arc")),
                (false, Some(a)) if a >= g.arc_count() || g.tail(a) != v => {
                    return bad(format!("arc {a} does not leave node {v}"));
                }
                _ => {}
            }
        }
        for start in 0..n {
            let mut v = start;
            let mut steps = 0;
            while let Some(a) = self.parent_arc[v] {
                v = g.head(a);
                steps += 1;
                if steps > n {
                    return bad(format!("tree arcs from node {start} run into a cycle"));
                }
            }
        }
        Ok(())
    }
}

/// All arborescences toward `root`, by trying every arc choice.
pub fn enumerate_arborescences(g: &DirectedMultigraph, root: usize) -> Result<Vec<Arborescence>> {
    let n = g.node_count();
    if root >= n {
        return Err(Error::IndexOutOfRange { index: root, size: n });
    }
    let out = g.out_arcs();
    let options: Vec<Vec<Option<usize>>> = (0..n)
        .map(|v| {
            if v == root {
                vec![None]
            } else {
                out[v].iter().filter(|&&a| g.head(a) != v).map(|&a| Some(a)).collect()
            }
        })
        .collect();
    let mut space: u128 = 1;
    for o in &options {
        space = space.saturating_mul(o.len() as u128);
    }
    if space > ARBORESCENCE_SEARCH_LIMIT {
        return Err(Error::TooLarge { size: space, limit: ARBORESCENCE_SEARCH_LIMIT });
    }
    let mut found = Vec::new();
    if space == 0 {
        return Ok(found);
    }
    let mut idx = vec![0usize; n];
    loop {
        let t = Arborescence {
            root,
            parent_arc: (0..n).map(|v| options[v][idx[v]]).collect(),
        };
        if t.validate(g).is_ok() {
            found.push(t);
        }
        let mut v = 0;
        loop {
            if v == n {
                return Ok(found);
            }
            idx[v] += 1;
            if idx[v] < options[v].len() {
                break;
            }
            idx[v] = 0;
            v += 1;
        }
    }
}

fn require_no_isolated(g: &DirectedMultigraph) -> Result<()> {
    match g.active_nodes().iter().position(|&a| !a) {
        Some(v) => Err(Error::InvalidGraph(format!("node {v} has no arcs"))),
        None => Ok(()),
    }
}

/// Builds the Euler tour that leaves every node through its exits in the
/// given order, starting at the root.
///
/// `exit_orders[v]` must list the outgoing arcs of `v` exactly once, and at
/// every non-root node its last entry must be the tree arc.
pub fn tour_from_arborescence(
    g: &DirectedMultigraph,
    t: &Arborescence,
    exit_orders: &[Vec<usize>],
) -> Result<EulerTour> {
    require_no_isolated(g)?;
    if !is_eulerian(g) {
        return Err(Error::NotEulerian(eulerian_reason(g)));
    }
    t.validate(g)?;
    let n = g.node_count();
    if exit_orders.len() != n {
        return Err(Error::InvalidExitOrder(format!(
            "{} exit orders given for {n} nodes",
            exit_orders.len()
        )));
    }
    let out = g.out_arcs();
    for v in 0..n {
        let mut given = exit_orders[v].clone();
        given.sort_unstable();
        if given != out[v] {
            return Err(Error::InvalidExitOrder(format!(
                "order at node {v} is not a permutation of its outgoing arcs"
            )));
        }
        if let Some(a) = t.parent_arc[v] {
            if exit_orders[v].last() != Some(&a) {
                return Err(Error::InvalidExitOrder(format!(
                    "tree arc {a} is not the last exit of node {v}"
                )));
            }
        }
    }
    let mut next = vec![0usize; n];
    let mut v = t.root;
    let mut arcs = Vec::with_capacity(g.arc_count());
    while next[v] < exit_orders[v].len() {
        let a = exit_orders[v][next[v]];
        next[v] += 1;
        arcs.push(a);
        v = g.head(a);
    }
    let tour = EulerTour { arcs };
    debug_assert!(tour.is_valid(g));
    Ok(tour)
}

/// Inverse of [`tour_from_arborescence`]: the last-exit tree of a tour and
/// the order in which it leaves every node.
pub fn last_exit_tree(
    g: &DirectedMultigraph,
    tour: &EulerTour,
) -> Result<(Arborescence, Vec<Vec<usize>>)> {
    require_no_isolated(g)?;
    if !tour.is_valid(g) {
        return Err(Error::InvalidGraph(String::from("sequence is not an Euler tour of the graph")));
    }
    let n = g.node_count();
    let root = g.tail(tour.arcs[0]);
    let mut orders = vec![Vec::new(); n];
    for &a in &tour.arcs {
        orders[g.tail(a)].push(a);
    }
    let parent_arc = (0..n)
        .map(|v| if v == root { None } else { orders[v].last().copied() })
        .collect();
    Ok((Arborescence { root, parent_arc }, orders))
}

/// `count_arborescences` for every root; equal entries on Eulerian graphs.
pub fn arborescence_counts_all_roots(g: &DirectedMultigraph) -> Vec<BigInt> {
    let l = laplacian(g);
    (0..g.node_count()).map(|r| l.minor(r).map(|m| m.det()).unwrap_or_else(|_| BigInt::zero())).collect()
}

/// Product of `(out-degree - 1)!` over nodes that carry arcs.
pub fn exit_order_multiplicity(g: &DirectedMultigraph) -> BigInt {
    (0..g.node_count())
        .map(|v| g.out_degree(v))
        .filter(|&d| d > 0)
        .fold(BigInt::one(), |acc, d| acc * factorial(d as u64 - 1))
}
