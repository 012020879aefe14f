//! Rotation-system embeddings and Kasteleyn orientations.
//!
//! `rotation[v]` lists the neighbors of `v` counterclockwise. The face to
//! the left of the dart `u -> v` continues with `v -> w`, where `w` is the
//! neighbor just before `u` in the rotation at `v`. Tracing this way walks
//! bounded faces counterclockwise and the outer face clockwise; an edge is
//! clockwise on a bounded face when its orientation opposes the dart that
//! traces it.

use alloc::collections::VecDeque;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::{Orientation, UndirectedGraph};
use crate::{Error, Result};

/// A planar rotation system with its traced faces and a designated outer
/// face.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlanarEmbedding {
    rotation: Vec<Vec<usize>>,
    outer_dart: (usize, usize),
    faces: Vec<Vec<(usize, usize)>>,
    outer: usize,
}

impl PlanarEmbedding {
    /// Validates the rotation system against `g` and traces its faces.
    ///
    /// `outer_dart` is any dart `u -> v` whose left face is the outer face.
    /// Graphs without edges take `None`.
    pub fn new(g: &UndirectedGraph, rotation: Vec<Vec<usize>>, outer_dart: Option<(usize, usize)>) -> Result<Self> {
        let bad = |msg: String| Err(Error::InvalidEmbedding(msg));
        if rotation.len() != g.node_count() {
            return bad(format!("{} rotation lists for {} nodes", rotation.len(), g.node_count()));
        }
        let adj = g.adjacency();
        for (v, list) in rotation.iter().enumerate() {
            let mut sorted = list.clone();
            sorted.sort_unstable();
            if sorted != adj[v] {
                return bad(format!("rotation at node {v} is not a cyclic order of its neighbors"));
            }
        }
        let outer_dart = match (outer_dart, g.edge_count()) {
            (None, 0) => (usize::MAX, usize::MAX),
            (None, _) => return bad(String::from("no outer face given")),
            (Some((u, v)), _) if !g.has_edge(u, v) => {
                return bad(format!("outer dart {u} -> {v} is not an edge"));
            }
            (Some(d), _) => d,
        };
        let offsets: Vec<usize> = rotation
            .iter()
            .scan(0, |acc, l| {
                let o = *acc;
                *acc += l.len();
                Some(o)
            })
            .collect();
        let dart_id = |u: usize, v: usize| offsets[u] + rotation[u].iter().position(|&x| x == v).unwrap();
        let total = 2 * g.edge_count();
        let mut face_of = vec![usize::MAX; total];
        let mut faces = Vec::new();
        for u in 0..rotation.len() {
            for &v in &rotation[u] {
                if face_of[dart_id(u, v)] != usize::MAX {
                    continue;
                }
                let f = faces.len();
                let mut face = Vec::new();
                let (mut a, mut b) = (u, v);
                while face_of[dart_id(a, b)] == usize::MAX {
                    face_of[dart_id(a, b)] = f;
                    face.push((a, b));
                    let at_b = &rotation[b];
                    let i = at_b.iter().position(|&x| x == a).unwrap();
                    let w = at_b[(i + at_b.len() - 1) % at_b.len()];
                    (a, b) = (b, w);
                }
                if (a, b) != (u, v) {
                    return bad(format!("face tracing from {u} -> {v} does not close"));
                }
                faces.push(face);
            }
        }
        let outer = if g.edge_count() == 0 { usize::MAX } else { face_of[dart_id(outer_dart.0, outer_dart.1)] };
        let components_with_edges = components(g).iter().filter(|c| c.len() > 1).count() as i64;
        let isolated = adj.iter().filter(|l| l.is_empty()).count() as i64;
        let euler = g.node_count() as i64 - g.edge_count() as i64 + faces.len() as i64;
        if euler != 2 * components_with_edges + isolated {
            return bad(format!(
                "rotation system has Euler characteristic {euler}, planar needs {}",
                2 * components_with_edges + isolated
            ));
        }
        Ok(Self { rotation, outer_dart, faces, outer })
    }

    pub fn rotation(&self) -> &[Vec<usize>] {
        &self.rotation
    }

    /// The dart naming the outer face, if the graph has edges.
    pub fn outer_dart(&self) -> Option<(usize, usize)> {
        (self.outer != usize::MAX).then_some(self.outer_dart)
    }

    /// Every face as its cyclic dart sequence.
    pub fn faces(&self) -> &[Vec<(usize, usize)>] {
        &self.faces
    }

    pub fn outer_face(&self) -> Option<usize> {
        (self.outer != usize::MAX).then_some(self.outer)
    }

    /// Faces other than the outer face, traced counterclockwise.
    pub fn bounded_faces(&self) -> impl Iterator<Item = &Vec<(usize, usize)>> {
        self.faces.iter().enumerate().filter(move |&(i, _)| i != self.outer).map(|(_, f)| f)
    }
}

fn components(g: &UndirectedGraph) -> Vec<Vec<usize>> {
    let adj = g.adjacency();
    let mut seen = vec![false; g.node_count()];
    let mut out = Vec::new();
    for s in 0..g.node_count() {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut comp = vec![s];
        let mut i = 0;
        while i < comp.len() {
            for &v in &adj[comp[i]] {
                if !seen[v] {
                    seen[v] = true;
                    comp.push(v);
                }
            }
            i += 1;
        }
        out.push(comp);
    }
    out
}

fn clockwise_count(o: &Orientation, face: &[(usize, usize)]) -> Result<usize> {
    let mut c = 0;
    for &(a, b) in face {
        if o.sign(a, b)? < 0 {
            c += 1;
        }
    }
    Ok(c)
}

fn check_pair(g: &UndirectedGraph, emb: &PlanarEmbedding) -> Result<()> {
    if emb.rotation.len() != g.node_count() || emb.faces.iter().map(Vec::len).sum::<usize>() != 2 * g.edge_count() {
        return Err(Error::InvalidEmbedding(String::from("embedding belongs to a different graph")));
    }
    for (v, list) in emb.rotation.iter().enumerate() {
        if list.iter().any(|&w| !g.has_edge(v, w)) {
            return Err(Error::InvalidEmbedding(format!("rotation at node {v} names a non-edge")));
        }
    }
    Ok(())
}

/// True iff every bounded face has an odd number of clockwise edges.
pub fn check_clockwise_odd(g: &UndirectedGraph, emb: &PlanarEmbedding, o: &Orientation) -> Result<bool> {
    check_pair(g, emb)?;
    for face in emb.bounded_faces() {
        if clockwise_count(o, face)? % 2 == 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Orientation with every bounded face odd-clockwise.
///
/// Edges of a breadth-first spanning tree point from lower to higher node.
/// The remaining edges form a spanning tree of the faces, rooted at the
/// outer face; faces are settled leaves first, each fixing the edge to its
/// parent face.
pub fn kasteleyn_orient(g: &UndirectedGraph, emb: &PlanarEmbedding) -> Result<Orientation> {
    check_pair(g, emb)?;
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let mut o = Orientation::low_to_high(g);
    if g.edge_count() == 0 {
        return Ok(o);
    }
    let n = g.node_count();
    let adj = g.adjacency();
    let mut in_tree = alloc::collections::BTreeSet::new();
    let mut seen = vec![false; n];
    let mut queue = VecDeque::from([0usize]);
    seen[0] = true;
    while let Some(u) = queue.pop_front() {
        for &v in &adj[u] {
            if !seen[v] {
                seen[v] = true;
                in_tree.insert((u.min(v), u.max(v)));
                queue.push_back(v);
            }
        }
    }
    // dual adjacency through non-tree edges
    let f = emb.faces.len();
    let mut face_of = alloc::collections::BTreeMap::new();
    for (i, face) in emb.faces.iter().enumerate() {
        for &d in face {
            face_of.insert(d, i);
        }
    }
    let mut dual: Vec<Vec<(usize, (usize, usize))>> = vec![Vec::new(); f];
    for (u, v, _) in g.edges() {
        if in_tree.contains(&(u, v)) {
            continue;
        }
        let (a, b) = (face_of[&(u, v)], face_of[&(v, u)]);
        if a == b {
            return Err(Error::InvalidEmbedding(format!("non-tree edge {{{u}, {v}}} borders one face twice")));
        }
        dual[a].push((b, (u, v)));
        dual[b].push((a, (u, v)));
    }
    let mut parent_edge = vec![None; f];
    let mut visited = vec![false; f];
    let mut order = vec![emb.outer];
    visited[emb.outer] = true;
    let mut i = 0;
    while i < order.len() {
        let x = order[i];
        for &(y, e) in &dual[x] {
            if !visited[y] {
                visited[y] = true;
                parent_edge[y] = Some(e);
                order.push(y);
            }
        }
        i += 1;
    }
    if order.len() != f {
        return Err(Error::InvalidEmbedding(String::from("faces are not connected through non-tree edges")));
    }
    for &face in order.iter().rev() {
        let Some((u, v)) = parent_edge[face] else { continue };
        if clockwise_count(&o, &emb.faces[face])? % 2 == 0 {
            o.flip(u, v)?;
        }
    }
    debug_assert_eq!(check_clockwise_odd(g, emb, &o), Ok(true));
    Ok(o)
}

/// Counterclockwise embedding of [`super::grid_graph`], with column index
/// as x and row index as y.
pub fn grid_embedding(rows: usize, cols: usize) -> Result<(UndirectedGraph, PlanarEmbedding)> {
    let g = super::grid_graph(rows, cols);
    let mut rotation = vec![Vec::new(); rows * cols];
    for r in 0..rows {
        for c in 0..cols {
            let v = r * cols + c;
            let list = &mut rotation[v];
            if c + 1 < cols {
                list.push(v + 1);
            }
            if r + 1 < rows {
                list.push(v + cols);
            }
            if c > 0 {
                list.push(v - 1);
            }
            if r > 0 {
                list.push(v - cols);
            }
        }
    }
    let outer = if g.edge_count() == 0 {
        None
    } else if cols > 1 {
        Some((1, 0))
    } else {
        Some((0, cols))
    };
    let emb = PlanarEmbedding::new(&g, rotation, outer)?;
    Ok((g, emb))
}

/// Incremental construction of embedded planar graphs: stacked
/// triangulations, edge subdivision and connectivity-preserving deletion.
#[derive(Clone, Debug)]
pub struct PlanarBuilder {
    rotation: Vec<Vec<usize>>,
    outer: (usize, usize),
}

impl Default for PlanarBuilder {
    fn default() -> Self {
        Self::triangle()
    }
}

impl PlanarBuilder {
    /// Triangle 0, 1, 2 placed counterclockwise.
    pub fn triangle() -> Self {
        Self { rotation: vec![vec![1, 2], vec![2, 0], vec![0, 1]], outer: (1, 0) }
    }

    pub fn node_count(&self) -> usize {
        self.rotation.len()
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut e = Vec::new();
        for (u, list) in self.rotation.iter().enumerate() {
            e.extend(list.iter().filter(|&&v| u < v).map(|&v| (u, v)));
        }
        e
    }

    fn next_dart(&self, (a, b): (usize, usize)) -> (usize, usize) {
        let at_b = &self.rotation[b];
        let i = at_b.iter().position(|&x| x == a).unwrap();
        (b, at_b[(i + at_b.len() - 1) % at_b.len()])
    }

    fn face_from(&self, start: (usize, usize)) -> Vec<(usize, usize)> {
        let mut face = vec![start];
        let mut d = self.next_dart(start);
        while d != start {
            face.push(d);
            d = self.next_dart(d);
        }
        face
    }

    /// Bounded triangular faces, each as its dart triple starting at its
    /// least dart, sorted.
    pub fn bounded_triangles(&self) -> Vec<[(usize, usize); 3]> {
        let outer = self.face_from(self.outer);
        let mut out = Vec::new();
        for (u, list) in self.rotation.iter().enumerate() {
            for &v in list {
                let face = self.face_from((u, v));
                if face.len() == 3 && face[0] == *face.iter().min().unwrap() && !outer.contains(&(u, v)) {
                    out.push([face[0], face[1], face[2]]);
                }
            }
        }
        out.sort_unstable();
        out
    }

    fn insert_after(&mut self, at: usize, after: usize, x: usize) {
        let list = &mut self.rotation[at];
        let i = list.iter().position(|&y| y == after).unwrap();
        list.insert(i + 1, x);
    }

    /// Places a new node inside the bounded triangle picked by `choice`
    /// (modulo the triangle count) and joins it to the three corners.
    /// Returns false when there is no bounded triangle.
    pub fn stack(&mut self, choice: usize) -> bool {
        let tris = self.bounded_triangles();
        if tris.is_empty() {
            return false;
        }
        let [(a, b), (_, c), _] = tris[choice % tris.len()];
        let x = self.rotation.len();
        self.rotation.push(vec![a, b, c]);
        self.insert_after(a, b, x);
        self.insert_after(b, c, x);
        self.insert_after(c, a, x);
        true
    }

    /// Replaces edge number `choice` (modulo the edge count) by a path of
    /// length two through a new node.
    pub fn subdivide(&mut self, choice: usize) {
        let edges = self.edges();
        let (u, v) = edges[choice % edges.len()];
        let x = self.rotation.len();
        for (a, b) in [(u, v), (v, u)] {
            let slot = self.rotation[a].iter().position(|&y| y == b).unwrap();
            self.rotation[a][slot] = x;
        }
        self.rotation.push(vec![u, v]);
        if self.outer == (u, v) {
            self.outer = (u, x);
        } else if self.outer == (v, u) {
            self.outer = (v, x);
        }
    }

    fn is_bridge(&self, u: usize, v: usize) -> bool {
        let mut seen = vec![false; self.rotation.len()];
        let mut stack = vec![u];
        seen[u] = true;
        while let Some(x) = stack.pop() {
            for &y in &self.rotation[x] {
                if (x, y) == (u, v) || (x, y) == (v, u) || seen[y] {
                    continue;
                }
                if y == v {
                    return false;
                }
                seen[y] = true;
                stack.push(y);
            }
        }
        true
    }

    /// Deletes edge number `choice` (modulo the edge count) unless it is a
    /// bridge. Returns whether an edge was removed.
    pub fn delete(&mut self, choice: usize) -> bool {
        let edges = self.edges();
        if edges.is_empty() {
            return false;
        }
        let (u, v) = edges[choice % edges.len()];
        if self.is_bridge(u, v) {
            return false;
        }
        if self.outer == (u, v) || self.outer == (v, u) {
            self.outer = self.next_dart(self.outer);
        }
        self.rotation[u].retain(|&y| y != v);
        self.rotation[v].retain(|&y| y != u);
        true
    }

    /// The graph and its validated embedding.
    pub fn build(&self) -> Result<(UndirectedGraph, PlanarEmbedding)> {
        let g = UndirectedGraph::new(self.rotation.len(), &self.edges())?;
        let outer = (g.edge_count() > 0).then_some(self.outer);
        let emb = PlanarEmbedding::new(&g, self.rotation.clone(), outer)?;
        Ok((g, emb))
    }
}
