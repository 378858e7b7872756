//! Planar graphs given by rotation systems.
//!
//! An [`EmbeddedGraph`] stores, for every vertex, the cyclic order of its
//! neighbors. Faces are traced with the rule `next(u -> v) = v -> w` where `w`
//! immediately precedes `u` in the rotation of `v`; a face `(x, y, z)` of a
//! triangulation therefore has `z` immediately after `y` in the rotation of `x`.
//!
//! Vertex ids are stable: deleting a vertex tombstones its id instead of
//! renumbering, so occurrences and colorings always refer to input ids.

use std::collections::{HashSet, VecDeque};
use std::ops::Deref;

use crate::error::{Error, Result};

/// A simple planar graph together with a planar rotation system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbeddedGraph {
    rot: Vec<Vec<usize>>,
    alive: Vec<bool>,
    live: usize,
    edges: usize,
}

/// One face boundary, as the cyclic list of its directed edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceWalk {
    darts: Vec<(usize, usize)>,
}

impl FaceWalk {
    pub fn len(&self) -> usize {
        self.darts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.darts.is_empty()
    }

    pub fn darts(&self) -> &[(usize, usize)] {
        &self.darts
    }

    /// Vertices in walk order; a vertex may repeat on non-2-connected faces.
    pub fn vertices(&self) -> Vec<usize> {
        self.darts.iter().map(|&(u, _)| u).collect()
    }
}

/// Reversible edit applied to a working graph, recorded so the coloring
/// driver can restore every earlier level exactly.
#[derive(Clone, Debug)]
pub(crate) enum Edit {
    Diagonal { a: usize, b: usize },
    Kill { v: usize, rot: Vec<usize>, removed_at: Vec<(usize, usize)> },
}

impl EmbeddedGraph {
    /// Builds and validates an embedding from per-vertex counterclockwise
    /// neighbor cycles. Vertex ids are `0..rotations.len()`.
    pub fn build(rotations: Vec<Vec<usize>>) -> Result<Self> {
        let n = rotations.len();
        for (v, rot) in rotations.iter().enumerate() {
            for &u in rot {
                if u >= n {
                    return Err(Error::VertexOutOfRange { vertex: v, neighbor: u, bound: n });
                }
            }
        }
        let degree_sum: usize = rotations.iter().map(Vec::len).sum();
        let g = EmbeddedGraph { alive: vec![true; n], live: n, edges: degree_sum / 2, rot: rotations };
        g.validate()?;
        Ok(g)
    }

    /// Number of ids ever allocated (live and tombstoned).
    pub fn id_bound(&self) -> usize {
        self.rot.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.live
    }

    pub fn edge_count(&self) -> usize {
        self.edges
    }

    pub fn is_alive(&self, v: usize) -> bool {
        self.alive.get(v).copied().unwrap_or(false)
    }

    pub fn vertices(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.rot.len()).filter(move |&v| self.alive[v])
    }

    pub fn rotation(&self, v: usize) -> &[usize] {
        &self.rot[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rot[v].len()
    }

    /// Position of `u` in the rotation of `v`.
    pub fn position(&self, v: usize, u: usize) -> Option<usize> {
        self.rot[v].iter().position(|&w| w == u)
    }

    /// Neighbor of `v` at rotation index `i`, taken cyclically.
    pub fn neighbor_at(&self, v: usize, i: isize) -> usize {
        let d = self.rot[v].len() as isize;
        self.rot[v][i.rem_euclid(d) as usize]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        let (a, b) = if self.rot[u].len() <= self.rot[v].len() { (u, v) } else { (v, u) };
        self.rot[a].contains(&b)
    }

    pub fn min_degree(&self) -> Option<usize> {
        self.vertices().map(|v| self.degree(v)).min()
    }

    /// Undirected edges `(u, v)` with `u < v`, in ascending order of `u`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edges);
        for u in self.vertices() {
            for &v in &self.rot[u] {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Checks simplicity, symmetry, and the component-wise Euler identity.
    pub fn validate(&self) -> Result<()> {
        let n = self.rot.len();
        let mut seen = vec![usize::MAX; n];
        for v in self.vertices() {
            for &u in &self.rot[v] {
                if u == v {
                    return Err(Error::LoopEdge { vertex: v });
                }
                if !self.is_alive(u) {
                    return Err(Error::AsymmetricAdjacency { vertex: v, neighbor: u });
                }
                if seen[u] == v {
                    return Err(Error::DuplicateNeighbor { vertex: v, neighbor: u });
                }
                seen[u] = v;
            }
        }
        for v in self.vertices() {
            for &u in &self.rot[v] {
                if !self.rot[u].contains(&v) {
                    return Err(Error::AsymmetricAdjacency { vertex: v, neighbor: u });
                }
            }
        }
        self.check_euler()
    }

    fn check_euler(&self) -> Result<()> {
        let faces = self.trace_faces();
        let comp = self.component_labels();
        let k = comp.iter().filter_map(|c| *c).max().map_or(0, |c| c + 1);
        let mut nv = vec![0usize; k];
        let mut deg = vec![0usize; k];
        let mut nf = vec![0usize; k];
        let mut root = vec![usize::MAX; k];
        for v in self.vertices() {
            let c = comp[v].expect("live vertex labelled");
            nv[c] += 1;
            deg[c] += self.degree(v);
            root[c] = root[c].min(v);
        }
        for f in &faces {
            let c = comp[f.darts[0].0].expect("face vertex labelled");
            nf[c] += 1;
        }
        for c in 0..k {
            // An isolated vertex bounds a single face with no darts.
            let faces = if deg[c] == 0 { 1 } else { nf[c] };
            let m = deg[c] / 2;
            if nv[c] + faces != m + 2 {
                return Err(Error::NotPlanarEmbedding { root: root[c], vertices: nv[c], edges: m, faces });
            }
        }
        Ok(())
    }

    /// Component index per id (`None` for tombstones), numbered by lowest id.
    pub fn component_labels(&self) -> Vec<Option<usize>> {
        let mut label = vec![None; self.rot.len()];
        let mut next = 0;
        let mut queue = VecDeque::new();
        for s in self.vertices() {
            if label[s].is_some() {
                continue;
            }
            label[s] = Some(next);
            queue.push_back(s);
            while let Some(v) = queue.pop_front() {
                for &u in &self.rot[v] {
                    if label[u].is_none() {
                        label[u] = Some(next);
                        queue.push_back(u);
                    }
                }
            }
            next += 1;
        }
        label
    }

    /// The directed edge following `(u, v)` on the face to its left.
    pub fn next_dart(&self, u: usize, v: usize) -> (usize, usize) {
        let i = self.position(v, u).expect("dart of the graph") as isize;
        (v, self.neighbor_at(v, i - 1))
    }

    /// Traces the face containing the directed edge `(u, v)`.
    pub fn face_from(&self, u: usize, v: usize) -> FaceWalk {
        let mut darts = vec![(u, v)];
        let mut cur = self.next_dart(u, v);
        while cur != (u, v) {
            darts.push(cur);
            cur = self.next_dart(cur.0, cur.1);
        }
        FaceWalk { darts }
    }

    /// All faces, each directed edge covered exactly once. Faces are listed in
    /// order of their first dart `(v, rotation(v)[i])` with ascending `v`, `i`.
    pub fn trace_faces(&self) -> Vec<FaceWalk> {
        let mut used: Vec<Vec<bool>> = self.rot.iter().map(|r| vec![false; r.len()]).collect();
        let mut faces = Vec::new();
        for v in self.vertices() {
            for i in 0..self.rot[v].len() {
                if used[v][i] {
                    continue;
                }
                let start = (v, self.rot[v][i]);
                let mut darts = Vec::new();
                let (mut a, mut ai) = (v, i);
                loop {
                    used[a][ai] = true;
                    let b = self.rot[a][ai];
                    darts.push((a, b));
                    let j = self.position(b, a).expect("symmetric rotation");
                    let d = self.rot[b].len();
                    let bi = (j + d - 1) % d;
                    if (b, self.rot[b][bi]) == start {
                        break;
                    }
                    a = b;
                    ai = bi;
                }
                faces.push(FaceWalk { darts });
            }
        }
        faces
    }

    pub fn face_count(&self) -> usize {
        self.trace_faces().len()
    }

    /// True when every face is a triangle and no component is smaller than a
    /// triangle.
    pub fn is_triangulated(&self) -> bool {
        self.vertices().all(|v| self.degree(v) >= 2) && self.trace_faces().iter().all(|f| f.len() == 3)
    }

    /// Copy of the graph with `removed` deleted; surviving rotations keep their
    /// relative order and ids are not renumbered.
    pub fn remove_vertices(&self, removed: &[usize]) -> EmbeddedGraph {
        let mut g = self.clone();
        let mut log = Vec::new();
        for &v in removed {
            if g.is_alive(v) {
                g.kill_vertex(v, &mut log);
            }
        }
        g
    }

    /// Fills every face of length at least four with diagonals.
    pub fn triangulate(&self) -> Result<Triangulation> {
        let mut g = self.clone();
        let mut log = Vec::new();
        let added = g.triangulate_all(&mut log)?;
        Triangulation::with_fill(g, added)
    }

    /// Triangulates a single face of this graph, returning the inserted
    /// diagonals.
    pub fn triangulate_face(&mut self, face: &FaceWalk) -> Result<Vec<(usize, usize)>> {
        let mut log = Vec::new();
        let mut added = Vec::new();
        self.fill_face(face.vertices(), &mut log, &mut added)?;
        Ok(added)
    }

    pub(crate) fn triangulate_all(&mut self, log: &mut Vec<Edit>) -> Result<Vec<(usize, usize)>> {
        let faces = self.trace_faces();
        let mut added = Vec::new();
        for f in faces {
            if f.len() >= 4 {
                self.fill_face(f.vertices(), log, &mut added)?;
            }
        }
        Ok(added)
    }

    /// Re-triangulates the faces touching `around` (the surviving neighbors of
    /// just-deleted vertices).
    pub(crate) fn triangulate_near(&mut self, around: &[usize], log: &mut Vec<Edit>) -> Result<Vec<(usize, usize)>> {
        let mut seen: HashSet<(usize, usize)> = HashSet::new();
        let mut long_faces = Vec::new();
        for &v in around {
            if !self.is_alive(v) {
                continue;
            }
            for &u in &self.rot[v] {
                if seen.contains(&(v, u)) {
                    continue;
                }
                let f = self.face_from(v, u);
                seen.extend(f.darts.iter().copied());
                if f.len() >= 4 {
                    long_faces.push(f);
                }
            }
        }
        let mut added = Vec::new();
        for f in long_faces {
            self.fill_face(f.vertices(), log, &mut added)?;
        }
        Ok(added)
    }

    /// Splits a face walk into triangles. First-fit on walk positions at
    /// distance two with distinct, non-adjacent ends; if that stalls on a
    /// degenerate walk, any such pair of non-consecutive positions is used.
    fn fill_face(&mut self, walk: Vec<usize>, log: &mut Vec<Edit>, added: &mut Vec<(usize, usize)>) -> Result<()> {
        let mut stack = vec![walk];
        while let Some(w) = stack.pop() {
            let k = w.len();
            if k <= 3 {
                continue;
            }
            let chord = (0..k)
                .map(|i| (i, (i + 2) % k))
                .find(|&(i, j)| w[i] != w[j] && !self.has_edge(w[i], w[j]))
                .or_else(|| {
                    (0..k)
                        .flat_map(|i| (i + 2..k).map(move |j| (i, j)))
                        .find(|&(i, j)| (j + 1) % k != i && w[i] != w[j] && !self.has_edge(w[i], w[j]))
                });
            let Some((i, j)) = chord else {
                return Err(Error::UntriangulatableFace { vertex: w[0], length: k });
            };
            let (a, b) = (w[i], w[j]);
            self.insert_chord(a, w[(i + 1) % k], b, w[(j + 1) % k]);
            log.push(Edit::Diagonal { a, b });
            added.push((a.min(b), a.max(b)));
            // Walk from a to b and walk from b back to a, each closed by the chord.
            let first: Vec<usize> = (0..).map(|s| w[(i + s) % k]).take((j + k - i) % k + 1).collect();
            let second: Vec<usize> = (0..).map(|s| w[(j + s) % k]).take((i + k - j) % k + 1).collect();
            stack.push(second);
            stack.push(first);
        }
        Ok(())
    }

    /// Inserts edge `a-b` inside the face corner at `a` just after `a_next`
    /// and the corner at `b` just after `b_next`.
    fn insert_chord(&mut self, a: usize, a_next: usize, b: usize, b_next: usize) {
        let ia = self.position(a, a_next).expect("corner at a");
        self.rot[a].insert(ia + 1, b);
        let ib = self.position(b, b_next).expect("corner at b");
        self.rot[b].insert(ib + 1, a);
        self.edges += 1;
    }

    pub(crate) fn kill_vertex(&mut self, v: usize, log: &mut Vec<Edit>) {
        let rot = std::mem::take(&mut self.rot[v]);
        let mut removed_at = Vec::with_capacity(rot.len());
        for &w in &rot {
            let i = self.position(w, v).expect("symmetric rotation");
            self.rot[w].remove(i);
            removed_at.push((w, i));
        }
        self.edges -= rot.len();
        self.alive[v] = false;
        self.live -= 1;
        log.push(Edit::Kill { v, rot, removed_at });
    }

    /// Reverts the edits of `log` newer than `mark`, newest first.
    pub(crate) fn undo_to(&mut self, log: &mut Vec<Edit>, mark: usize) {
        while log.len() > mark {
            match log.pop().expect("non-empty log") {
                Edit::Diagonal { a, b } => {
                    let ia = self.position(a, b).expect("diagonal present");
                    self.rot[a].remove(ia);
                    let ib = self.position(b, a).expect("diagonal present");
                    self.rot[b].remove(ib);
                    self.edges -= 1;
                }
                Edit::Kill { v, rot, removed_at } => {
                    for &(w, i) in removed_at.iter().rev() {
                        self.rot[w].insert(i, v);
                    }
                    self.edges += rot.len();
                    self.rot[v] = rot;
                    self.alive[v] = true;
                    self.live += 1;
                }
            }
        }
    }

    /// Rebuilds the rotation system without tombstoned ids kept out of the
    /// structure; used by the instance generator while growing graphs.
    pub(crate) fn from_parts(rot: Vec<Vec<usize>>) -> Self {
        let n = rot.len();
        let edges = rot.iter().map(Vec::len).sum::<usize>() / 2;
        EmbeddedGraph { rot, alive: vec![true; n], live: n, edges }
    }

    pub(crate) fn rotation_mut(&mut self, v: usize) -> &mut Vec<usize> {
        &mut self.rot[v]
    }

    /// Builds a rotation system from consistently oriented triangles: for a
    /// face `(x, y, z)`, `z` follows `y` in the rotation of `x`.
    pub fn from_triangles(n: usize, faces: &[[usize; 3]]) -> Result<Self> {
        let mut succ: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
        for f in faces {
            for k in 0..3 {
                let (x, y, z) = (f[k], f[(k + 1) % 3], f[(k + 2) % 3]);
                succ[x].push((y, z));
            }
        }
        let mut rot = Vec::with_capacity(n);
        for (x, pairs) in succ.iter().enumerate() {
            let mut r = Vec::with_capacity(pairs.len());
            if let Some(&(first, _)) = pairs.first() {
                let mut cur = first;
                loop {
                    r.push(cur);
                    let next = pairs.iter().find(|p| p.0 == cur).map(|p| p.1);
                    match next {
                        Some(nx) if nx == first => break,
                        Some(nx) if r.len() < pairs.len() => cur = nx,
                        _ => {
                            return Err(Error::NotTriangulation {
                                reason: format!("faces around vertex {x} do not close up"),
                            })
                        }
                    }
                }
            }
            rot.push(r);
        }
        Self::build(rot)
    }
}

/// An embedded graph all of whose faces are triangles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Triangulation {
    graph: EmbeddedGraph,
    faces: Vec<[usize; 3]>,
    fill: Vec<(usize, usize)>,
}

impl Triangulation {
    pub fn new(graph: EmbeddedGraph) -> Result<Self> {
        Self::with_fill(graph, Vec::new())
    }

    fn with_fill(graph: EmbeddedGraph, fill: Vec<(usize, usize)>) -> Result<Self> {
        if let Some(v) = graph.vertices().find(|&v| graph.degree(v) < 2) {
            return Err(Error::NotTriangulation { reason: format!("vertex {v} has degree {}", graph.degree(v)) });
        }
        let mut faces = Vec::new();
        for f in graph.trace_faces() {
            if f.len() != 3 {
                return Err(Error::NotTriangulation {
                    reason: format!("face through {} has length {}", f.darts[0].0, f.len()),
                });
            }
            faces.push([f.darts[0].0, f.darts[1].0, f.darts[2].0]);
        }
        Ok(Triangulation { graph, faces, fill })
    }

    pub fn graph(&self) -> &EmbeddedGraph {
        &self.graph
    }

    pub fn into_graph(self) -> EmbeddedGraph {
        self.graph
    }

    pub fn faces(&self) -> &[[usize; 3]] {
        &self.faces
    }

    /// Edges inserted by [`EmbeddedGraph::triangulate`], as `(min, max)` pairs.
    pub fn fill_edges(&self) -> &[(usize, usize)] {
        &self.fill
    }

    /// The neighbors of `v` in counterclockwise order; consecutive entries are
    /// adjacent.
    pub fn link_cycle(&self, v: usize) -> &[usize] {
        self.graph.rotation(v)
    }
}

impl Deref for Triangulation {
    type Target = EmbeddedGraph;

    fn deref(&self) -> &EmbeddedGraph {
        &self.graph
    }
}
