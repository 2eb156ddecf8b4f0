//! Maximal outerplanar graphs as triangulated convex polygons.
//!
//! Vertices are labelled `0..n` in cyclic hull order, so the standard
//! embedding is implicit: hull edges are `(i, i+1 mod n)` and every other
//! edge is a diagonal. Faces, the dual tree and all sub-structures are
//! derived from the diagonal set.

use std::collections::{HashMap, VecDeque};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::GraphError;

pub type Vertex = u32;
pub type FaceId = u32;

/// Unordered vertex pair, stored with the smaller id first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Edge(pub Vertex, pub Vertex);

impl Edge {
    pub fn new(a: Vertex, b: Vertex) -> Self {
        if a <= b {
            Edge(a, b)
        } else {
            Edge(b, a)
        }
    }

    pub fn has(&self, x: Vertex) -> bool {
        self.0 == x || self.1 == x
    }

    pub fn other(&self, x: Vertex) -> Vertex {
        if self.0 == x {
            self.1
        } else {
            self.0
        }
    }
}

impl From<(Vertex, Vertex)> for Edge {
    fn from((a, b): (Vertex, Vertex)) -> Self {
        Edge::new(a, b)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeClass {
    Hull,
    Diagonal,
}

/// An edge of a graph together with its classification.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EdgeRef {
    pub edge: Edge,
    pub class: EdgeClass,
}

/// Canonical on-disk form: `{"n": <int>, "diagonals": [[a,b],...]}`.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct GraphFile {
    pub n: u32,
    pub diagonals: Vec<[u32; 2]>,
}

/// A triangulated convex polygon.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OuterplanarGraph {
    n: u32,
    diagonals: Vec<Edge>,
    /// Sorted neighbour lists.
    adj: Vec<Vec<Vertex>>,
    /// Faces as ascending vertex triples, sorted lexicographically.
    faces: Vec<[Vertex; 3]>,
    /// `face_adj[f][i]` is the face across the edge opposite `faces[f][i]`.
    face_adj: Vec<[Option<FaceId>; 3]>,
    edge_faces: HashMap<Edge, [Option<FaceId>; 2]>,
}

fn crosses(p: Edge, q: Edge) -> bool {
    let (a, b) = (p.0, p.1);
    let (c, d) = (q.0, q.1);
    (a < c && c < b && b < d) || (c < a && a < d && d < b)
}

impl OuterplanarGraph {
    /// Validates a diagonal set and builds the face structure.
    pub fn new(n: u32, diagonals: &[(Vertex, Vertex)]) -> Result<Self, GraphError> {
        if n < 3 {
            return Err(GraphError::TooFewVertices(n));
        }
        let mut diags: Vec<Edge> = Vec::with_capacity(diagonals.len());
        for &(a, b) in diagonals {
            if a >= n || b >= n {
                return Err(GraphError::OutOfRange { a, b, n });
            }
            let e = Edge::new(a, b);
            if e.0 == e.1 || e.1 - e.0 == 1 || (e.0 == 0 && e.1 == n - 1) {
                return Err(GraphError::HullDiagonal { a, b });
            }
            diags.push(e);
        }
        if diags.len() != (n - 3) as usize {
            return Err(GraphError::DiagonalCount { expected: n - 3, found: diags.len() });
        }
        diags.sort_unstable();
        for w in diags.windows(2) {
            if w[0] == w[1] {
                return Err(GraphError::Duplicate { a: w[0].0, b: w[0].1 });
            }
        }
        // Diagonals sorted by left endpoint form a laminar family iff no two
        // cross; a stack of open intervals detects the first crossing pair.
        let mut by_span = diags.clone();
        by_span.sort_unstable_by(|p, q| p.0.cmp(&q.0).then(q.1.cmp(&p.1)));
        let mut open: Vec<Edge> = Vec::new();
        for &e in &by_span {
            while let Some(&top) = open.last() {
                if top.1 <= e.0 {
                    open.pop();
                } else {
                    break;
                }
            }
            if let Some(&top) = open.last() {
                if crosses(top, e) {
                    return Err(GraphError::Crossing { first: (top.0, top.1), second: (e.0, e.1) });
                }
            }
            open.push(e);
        }

        let nu = n as usize;
        let mut adj: Vec<Vec<Vertex>> = vec![Vec::new(); nu];
        for i in 0..n {
            let j = (i + 1) % n;
            adj[i as usize].push(j);
            adj[j as usize].push(i);
        }
        for e in &diags {
            adj[e.0 as usize].push(e.1);
            adj[e.1 as usize].push(e.0);
        }
        for list in adj.iter_mut() {
            list.sort_unstable();
        }

        // Peel faces from the root hull edge (0, n-1): the face below an arc
        // edge (a, b) has apex = largest neighbour of a strictly below b.
        let mut raw_faces: Vec<[Vertex; 3]> = Vec::with_capacity(nu - 2);
        let mut stack: Vec<(Vertex, Vertex)> = vec![(0, n - 1)];
        while let Some((a, b)) = stack.pop() {
            if b - a < 2 {
                continue;
            }
            let list = &adj[a as usize];
            let idx = list.partition_point(|&x| x < b);
            let c = list[idx - 1];
            if c <= a || !adj[b as usize].binary_search(&c).is_ok() {
                // Only reachable if the diagonal set is not a triangulation,
                // which the count and crossing checks already exclude.
                return Err(GraphError::NotTriangulated);
            }
            raw_faces.push([a, c, b]);
            stack.push((a, c));
            stack.push((c, b));
        }
        if raw_faces.len() != nu - 2 {
            return Err(GraphError::NotTriangulated);
        }

        let mut order: Vec<usize> = (0..raw_faces.len()).collect();
        order.sort_unstable_by_key(|&i| raw_faces[i]);
        let faces: Vec<[Vertex; 3]> = order.iter().map(|&i| raw_faces[i]).collect();

        let mut edge_faces: HashMap<Edge, [Option<FaceId>; 2]> = HashMap::with_capacity(2 * nu);
        for (f, tri) in faces.iter().enumerate() {
            for (x, y) in [(tri[0], tri[1]), (tri[1], tri[2]), (tri[0], tri[2])] {
                let slot = edge_faces.entry(Edge::new(x, y)).or_insert([None, None]);
                if slot[0].is_none() {
                    slot[0] = Some(f as FaceId);
                } else {
                    slot[1] = Some(f as FaceId);
                }
            }
        }
        let mut face_adj = vec![[None; 3]; faces.len()];
        for (f, tri) in faces.iter().enumerate() {
            for i in 0..3 {
                let e = Edge::new(tri[(i + 1) % 3], tri[(i + 2) % 3]);
                let slot = edge_faces[&e];
                face_adj[f][i] = match slot {
                    [Some(x), Some(y)] => Some(if x as usize == f { y } else { x }),
                    _ => None,
                };
            }
        }

        Ok(OuterplanarGraph { n, diagonals: diags, adj, faces, face_adj, edge_faces })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Total edge count, always `2n - 3`.
    pub fn m(&self) -> usize {
        2 * self.n as usize - 3
    }

    pub fn diagonals(&self) -> &[Edge] {
        &self.diagonals
    }

    pub fn faces(&self) -> &[[Vertex; 3]] {
        &self.faces
    }

    pub fn face(&self, f: FaceId) -> [Vertex; 3] {
        self.faces[f as usize]
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v as usize]
    }

    pub fn has_edge(&self, a: Vertex, b: Vertex) -> bool {
        a < self.n && self.adj[a as usize].binary_search(&b).is_ok()
    }

    pub fn is_hull_edge(&self, a: Vertex, b: Vertex) -> bool {
        let e = Edge::new(a, b);
        e.0 != e.1 && (e.1 - e.0 == 1 || (e.0 == 0 && e.1 == self.n - 1)) && e.1 < self.n
    }

    pub fn classify(&self, a: Vertex, b: Vertex) -> Option<EdgeRef> {
        if !self.has_edge(a, b) {
            return None;
        }
        let class = if self.is_hull_edge(a, b) { EdgeClass::Hull } else { EdgeClass::Diagonal };
        Some(EdgeRef { edge: Edge::new(a, b), class })
    }

    /// All `2n - 3` edges, hull edges first.
    pub fn edges(&self) -> Vec<Edge> {
        let mut out: Vec<Edge> = (0..self.n).map(|i| Edge::new(i, (i + 1) % self.n)).collect();
        out.extend_from_slice(&self.diagonals);
        out
    }

    pub fn hull_edges(&self) -> Vec<Edge> {
        let mut out: Vec<Edge> = (0..self.n).map(|i| Edge::new(i, (i + 1) % self.n)).collect();
        out.sort_unstable();
        out
    }

    /// Faces incident to an edge (one for hull edges, two for diagonals).
    pub fn edge_faces(&self, a: Vertex, b: Vertex) -> Vec<FaceId> {
        match self.edge_faces.get(&Edge::new(a, b)) {
            Some(slot) => slot.iter().flatten().copied().collect(),
            None => Vec::new(),
        }
    }

    /// Faces adjacent to `f` in the dual tree.
    pub fn face_neighbors(&self, f: FaceId) -> impl Iterator<Item = FaceId> + '_ {
        self.face_adj[f as usize].iter().flatten().copied()
    }

    /// The face across edge `(a, b)` of face `f`, if any.
    pub fn face_across(&self, f: FaceId, a: Vertex, b: Vertex) -> Option<FaceId> {
        let tri = self.faces[f as usize];
        let i = (0..3).find(|&i| tri[i] != a && tri[i] != b)?;
        self.face_adj[f as usize][i]
    }

    /// The third vertex of face `f` opposite edge `(a, b)`.
    pub fn apex(&self, f: FaceId, a: Vertex, b: Vertex) -> Vertex {
        let tri = self.faces[f as usize];
        *tri.iter().find(|&&x| x != a && x != b).expect("face has three vertices")
    }

    pub fn face_edges(&self, f: FaceId) -> [Edge; 3] {
        let t = self.faces[f as usize];
        [Edge::new(t[0], t[1]), Edge::new(t[1], t[2]), Edge::new(t[0], t[2])]
    }

    pub fn find_face(&self, tri: [Vertex; 3]) -> Option<FaceId> {
        let mut key = tri;
        key.sort_unstable();
        self.faces.binary_search(&key).ok().map(|i| i as FaceId)
    }

    pub fn to_file(&self) -> GraphFile {
        GraphFile { n: self.n, diagonals: self.diagonals.iter().map(|e| [e.0, e.1]).collect() }
    }

    pub fn from_file(file: &GraphFile) -> Result<Self, GraphError> {
        for w in file.diagonals.windows(2) {
            if w[0] >= w[1] {
                return Err(GraphError::NonCanonical(format!(
                    "diagonals not strictly sorted at {:?}, {:?}",
                    w[0], w[1]
                )));
            }
        }
        for d in &file.diagonals {
            if d[0] >= d[1] {
                return Err(GraphError::NonCanonical(format!("pair {:?} not ordered a<b", d)));
            }
        }
        let pairs: Vec<(u32, u32)> = file.diagonals.iter().map(|d| (d[0], d[1])).collect();
        OuterplanarGraph::new(file.n, &pairs)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_file()).expect("graph serializes")
    }

    pub fn from_json(s: &str) -> Result<Self, GraphError> {
        let file: GraphFile = serde_json::from_str(s).map_err(|e| GraphError::Parse(e.to_string()))?;
        Self::from_file(&file)
    }

    /// Whole graph as a sub-polygon.
    pub fn whole(&self) -> SubPolygon {
        SubPolygon::from_sorted(self, (0..self.n).collect())
    }

    /// Shortest dual path between two faces (inclusive).
    pub fn dual_path(&self, from: FaceId, to: FaceId) -> Vec<FaceId> {
        let k = self.faces.len();
        let mut prev = vec![u32::MAX; k];
        prev[from as usize] = from;
        let mut queue = VecDeque::from([from]);
        while let Some(f) = queue.pop_front() {
            if f == to {
                break;
            }
            for g in self.face_neighbors(f) {
                if prev[g as usize] == u32::MAX {
                    prev[g as usize] = f;
                    queue.push_back(g);
                }
            }
        }
        let mut path = vec![to];
        let mut cur = to;
        while cur != from {
            cur = prev[cur as usize];
            path.push(cur);
        }
        path.reverse();
        path
    }

    pub fn dual_tree(&self) -> DualTree {
        let mut edges = Vec::with_capacity(self.diagonals.len());
        for d in &self.diagonals {
            let fs = self.edge_faces(d.0, d.1);
            edges.push((fs[0].min(fs[1]), fs[0].max(fs[1]), *d));
        }
        edges.sort_unstable();
        let mut adj = vec![Vec::new(); self.faces.len()];
        for &(a, b, _) in &edges {
            adj[a as usize].push(b);
            adj[b as usize].push(a);
        }
        DualTree { adj, edges, root: None }
    }

    /// The two cut-components of a diagonal.
    pub fn cut_components(&self, a: Vertex, b: Vertex) -> Result<(SubgraphRef, SubgraphRef), GraphError> {
        self.whole().cut_components(self, a, b)
    }

    /// Faces on the dual path between faces incident to `e1` and `e2`.
    ///
    /// Among incident face pairs the shortest path wins, ties going to the
    /// smaller face ids. For `e1 == e2` the lower-id incident face is returned.
    pub fn outerplanar_path(&self, e1: Edge, e2: Edge) -> Result<OuterplanarPathRef, GraphError> {
        let f1s = self.edge_faces(e1.0, e1.1);
        let f2s = self.edge_faces(e2.0, e2.1);
        if f1s.is_empty() {
            return Err(GraphError::NotAnEdge { a: e1.0, b: e1.1 });
        }
        if f2s.is_empty() {
            return Err(GraphError::NotAnEdge { a: e2.0, b: e2.1 });
        }
        if e1 == e2 {
            let f = *f1s.iter().min().expect("non-empty");
            return Ok(OuterplanarPathRef { faces: vec![f], start: e1, end: e2 });
        }
        let mut best: Option<Vec<FaceId>> = None;
        let mut f1_sorted = f1s.clone();
        f1_sorted.sort_unstable();
        let mut f2_sorted = f2s.clone();
        f2_sorted.sort_unstable();
        for &x in &f1_sorted {
            for &y in &f2_sorted {
                let p = self.dual_path(x, y);
                if best.as_ref().map_or(true, |b| p.len() < b.len()) {
                    best = Some(p);
                }
            }
        }
        Ok(OuterplanarPathRef { faces: best.expect("at least one pair"), start: e1, end: e2 })
    }

    /// Cut-component of `anchor` not containing `root`.
    pub fn hanging_subgraph(&self, root: Edge, anchor: Edge) -> Result<SubgraphRef, GraphError> {
        self.whole().hanging(self, root, anchor)
    }

    /// Uniformly random triangulation of the `n`-gon, deterministic per seed.
    ///
    /// A random Łukasiewicz word with `n - 2` internal nodes is rotated into
    /// a valid preorder code (cycle lemma), giving a uniform binary tree;
    /// its internal nodes become faces.
    pub fn random(n: u32, seed: u64) -> Result<Self, GraphError> {
        if n < 3 {
            return Err(GraphError::TooFewVertices(n));
        }
        let k = (n - 2) as usize;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut word: Vec<i8> = Vec::with_capacity(2 * k + 1);
        word.extend(std::iter::repeat(1).take(k));
        word.extend(std::iter::repeat(-1).take(k + 1));
        word.shuffle(&mut rng);
        // Rotate to start just after the first position of the minimum prefix sum.
        let mut sum = 0i64;
        let mut min = i64::MAX;
        let mut min_at = 0usize;
        for (i, &s) in word.iter().enumerate() {
            sum += s as i64;
            if sum < min {
                min = sum;
                min_at = i;
            }
        }
        let len = word.len();
        word.rotate_left((min_at + 1) % len);
        // Leaf count of each preorder subtree, via a reverse scan.
        let mut leaves = vec![0u32; word.len()];
        let mut stack: Vec<u32> = Vec::new();
        for i in (0..word.len()).rev() {
            if word[i] == -1 {
                leaves[i] = 1;
            } else {
                let left = stack.pop().expect("well-formed code");
                let right = stack.pop().expect("well-formed code");
                leaves[i] = left + right;
            }
            stack.push(leaves[i]);
        }
        // Map: internal node over arc (a, b) with left subtree of L leaves
        // yields face (a, a + L, b).
        let mut diagonals = Vec::with_capacity(k.saturating_sub(1));
        let mut pos = 0usize;
        let mut work: Vec<(u32, u32)> = vec![(0, n - 1)];
        while let Some((a, b)) = work.pop() {
            let here = pos;
            pos += 1;
            if word[here] == -1 {
                continue;
            }
            let left = here + 1;
            let c = a + leaves[left];
            if !(a == 0 && b == n - 1) {
                diagonals.push((a, b));
            }
            // Preorder: left subtree next, so push right first.
            work.push((c, b));
            work.push((a, c));
        }
        diagonals.retain(|&(a, b)| b - a >= 2);
        Self::new(n, &diagonals)
    }
}

/// Every triangulation of the `n`-gon, each exactly once.
pub const ENUMERATION_GUARD: u32 = 12;

pub fn enumerate_triangulations(n: u32) -> Result<impl Iterator<Item = OuterplanarGraph>, GraphError> {
    enumerate_triangulations_guarded(n, ENUMERATION_GUARD)
}

pub fn enumerate_triangulations_guarded(
    n: u32,
    guard: u32,
) -> Result<impl Iterator<Item = OuterplanarGraph>, GraphError> {
    if n < 3 || n > guard {
        return Err(GraphError::Guard { n, max: guard });
    }
    fn arc(a: u32, b: u32, memo: &mut HashMap<(u32, u32), Vec<Vec<(u32, u32)>>>) -> Vec<Vec<(u32, u32)>> {
        if b - a < 2 {
            return vec![Vec::new()];
        }
        if let Some(v) = memo.get(&(b - a, 0)) {
            return v.iter().map(|d| d.iter().map(|&(x, y)| (x + a, y + a)).collect()).collect();
        }
        let mut out = Vec::new();
        for c in a + 1..b {
            let left = arc(a, c, memo);
            let right = arc(c, b, memo);
            for l in &left {
                for r in &right {
                    let mut d = Vec::with_capacity(l.len() + r.len() + 2);
                    if c - a >= 2 {
                        d.push((a, c));
                    }
                    if b - c >= 2 {
                        d.push((c, b));
                    }
                    d.extend_from_slice(l);
                    d.extend_from_slice(r);
                    out.push(d);
                }
            }
        }
        memo.insert((b - a, 0), out.iter().map(|d| d.iter().map(|&(x, y)| (x - a, y - a)).collect()).collect());
        out
    }
    let mut memo = HashMap::new();
    let all = arc(0, n - 1, &mut memo);
    Ok(all.into_iter().map(move |d| OuterplanarGraph::new(n, &d).expect("enumerated triangulation is valid")))
}

pub fn catalan(k: u32) -> u64 {
    let mut c: u64 = 1;
    for i in 0..k as u64 {
        c = c * 2 * (2 * i + 1) / (i + 2);
    }
    c
}

/// Dual tree: one node per face, one edge per diagonal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualTree {
    adj: Vec<Vec<FaceId>>,
    /// `(f, g, diagonal)` with `f < g`, sorted.
    edges: Vec<(FaceId, FaceId, Edge)>,
    pub root: Option<FaceId>,
}

impl DualTree {
    /// Unlabelled tree from an adjacency list (used for pathwidth tests).
    pub fn from_adjacency(adj: Vec<Vec<FaceId>>) -> Self {
        let mut edges = Vec::new();
        for (a, list) in adj.iter().enumerate() {
            for &b in list {
                if (a as FaceId) < b {
                    edges.push((a as FaceId, b, Edge::new(a as u32, b)));
                }
            }
        }
        DualTree { adj, edges, root: None }
    }

    pub fn node_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn neighbors(&self, f: FaceId) -> &[FaceId] {
        &self.adj[f as usize]
    }

    pub fn adjacency(&self) -> &[Vec<FaceId>] {
        &self.adj
    }

    pub fn edges(&self) -> &[(FaceId, FaceId, Edge)] {
        &self.edges
    }

    pub fn degree(&self, f: FaceId) -> usize {
        self.adj[f as usize].len()
    }

    pub fn leaves(&self) -> Vec<FaceId> {
        (0..self.adj.len() as FaceId).filter(|&f| self.adj[f as usize].len() <= 1).collect()
    }
}

/// A subgraph induced by a set of hull vertices whose boundary, in global
/// cyclic order, is a simple cycle of graph edges. Cut-components,
/// hanging subgraphs and the whole graph are all of this form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SubPolygon {
    verts: Vec<Vertex>,
}

impl SubPolygon {
    pub fn from_sorted(g: &OuterplanarGraph, verts: Vec<Vertex>) -> Self {
        debug_assert!(verts.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(verts.iter().all(|&v| v < g.n()));
        SubPolygon { verts }
    }

    pub fn single_edge(e: Edge) -> Self {
        SubPolygon { verts: vec![e.0, e.1] }
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.verts
    }

    pub fn len(&self) -> usize {
        self.verts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.verts.is_empty()
    }

    pub fn is_single_edge(&self) -> bool {
        self.verts.len() == 2
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.verts.binary_search(&v).is_ok()
    }

    fn rank(&self, v: Vertex) -> Option<usize> {
        self.verts.binary_search(&v).ok()
    }

    /// Boundary edge of this polygon (consecutive in cyclic order).
    pub fn is_boundary(&self, a: Vertex, b: Vertex) -> bool {
        let (Some(i), Some(j)) = (self.rank(a), self.rank(b)) else { return false };
        let k = self.verts.len();
        if k == 2 {
            return i != j;
        }
        (i + 1) % k == j || (j + 1) % k == i
    }

    /// Graph edge with both ends inside that is not on the boundary.
    pub fn is_diagonal(&self, g: &OuterplanarGraph, a: Vertex, b: Vertex) -> bool {
        self.contains(a) && self.contains(b) && g.has_edge(a, b) && !self.is_boundary(a, b)
    }

    pub fn boundary_edges(&self) -> Vec<Edge> {
        let k = self.verts.len();
        if k == 2 {
            return vec![Edge::new(self.verts[0], self.verts[1])];
        }
        (0..k).map(|i| Edge::new(self.verts[i], self.verts[(i + 1) % k])).collect()
    }

    pub fn edges(&self, g: &OuterplanarGraph) -> Vec<Edge> {
        let mut out = Vec::new();
        for &a in &self.verts {
            for &b in g.neighbors(a) {
                if a < b && self.contains(b) {
                    out.push(Edge::new(a, b));
                }
            }
        }
        out
    }

    pub fn faces(&self, g: &OuterplanarGraph) -> Vec<FaceId> {
        if self.verts.len() < 3 {
            return Vec::new();
        }
        let mut out = Vec::new();
        let mut seen = std::collections::HashSet::new();
        for e in self.boundary_edges() {
            for f in g.edge_faces(e.0, e.1) {
                if self.contains_face(g, f) && seen.insert(f) {
                    out.push(f);
                }
            }
        }
        // Flood through interior diagonals.
        let mut i = 0;
        while i < out.len() {
            let f = out[i];
            for h in g.face_neighbors(f) {
                if !seen.contains(&h) && self.contains_face(g, h) {
                    seen.insert(h);
                    out.push(h);
                }
            }
            i += 1;
        }
        out.sort_unstable();
        out
    }

    pub fn contains_face(&self, g: &OuterplanarGraph, f: FaceId) -> bool {
        g.face(f).iter().all(|&v| self.contains(v))
    }

    /// The unique face of this polygon on a boundary edge.
    pub fn face_on(&self, g: &OuterplanarGraph, a: Vertex, b: Vertex) -> Option<FaceId> {
        g.edge_faces(a, b).into_iter().find(|&f| self.contains_face(g, f))
    }

    pub fn cut_components(
        &self,
        g: &OuterplanarGraph,
        a: Vertex,
        b: Vertex,
    ) -> Result<(SubgraphRef, SubgraphRef), GraphError> {
        if !self.is_diagonal(g, a, b) {
            if self.contains(a) && self.contains(b) && g.has_edge(a, b) {
                return Err(GraphError::HullEdgeCut { a, b });
            }
            return Err(GraphError::NotAnEdge { a, b });
        }
        let e = Edge::new(a, b);
        let i = self.rank(e.0).expect("contained");
        let j = self.rank(e.1).expect("contained");
        let inner: Vec<Vertex> = self.verts[i..=j].to_vec();
        let mut outer: Vec<Vertex> = self.verts[..=i].to_vec();
        outer.extend_from_slice(&self.verts[j..]);
        let first = SubPolygon { verts: inner };
        let second = SubPolygon { verts: outer };
        Ok((SubgraphRef::new(g, e, first), SubgraphRef::new(g, e, second)))
    }

    /// Cut-component of `anchor` not containing `root`; a single edge when
    /// `anchor` is on the boundary.
    pub fn hanging(&self, g: &OuterplanarGraph, root: Edge, anchor: Edge) -> Result<SubgraphRef, GraphError> {
        if root == anchor {
            return Err(GraphError::AnchorIsRoot { a: anchor.0, b: anchor.1 });
        }
        if !(self.contains(anchor.0) && self.contains(anchor.1) && g.has_edge(anchor.0, anchor.1)) {
            return Err(GraphError::NotAnEdge { a: anchor.0, b: anchor.1 });
        }
        if self.is_boundary(anchor.0, anchor.1) {
            return Ok(SubgraphRef::new(g, anchor, SubPolygon::single_edge(anchor)));
        }
        let (x, y) = self.cut_components(g, anchor.0, anchor.1)?;
        let holds_root = |s: &SubgraphRef| s.polygon.contains(root.0) && s.polygon.contains(root.1);
        Ok(if holds_root(&x) { y } else { x })
    }
}

/// A subgraph with its distinguished root edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubgraphRef {
    pub root_edge: Edge,
    pub polygon: SubPolygon,
    pub faces: Vec<FaceId>,
}

impl SubgraphRef {
    pub fn new(g: &OuterplanarGraph, root_edge: Edge, polygon: SubPolygon) -> Self {
        let faces = polygon.faces(g);
        SubgraphRef { root_edge, polygon, faces }
    }

    pub fn vertices(&self) -> &[Vertex] {
        self.polygon.vertices()
    }

    pub fn is_single_edge(&self) -> bool {
        self.faces.is_empty()
    }
}

/// An outerplanar path given by its dual face sequence and end edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OuterplanarPathRef {
    pub faces: Vec<FaceId>,
    pub start: Edge,
    pub end: Edge,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fan6() -> OuterplanarGraph {
        OuterplanarGraph::new(6, &[(0, 2), (0, 3), (0, 4)]).unwrap()
    }

    #[test]
    fn triangle_has_one_face() {
        let g = OuterplanarGraph::new(3, &[]).unwrap();
        assert_eq!(g.faces(), &[[0, 1, 2]]);
        assert_eq!(g.m(), 3);
    }

    #[test]
    fn fan_faces_in_order() {
        let g = fan6();
        assert_eq!(g.faces(), &[[0, 1, 2], [0, 2, 3], [0, 3, 4], [0, 4, 5]]);
    }

    #[test]
    fn rejects_crossing_pair() {
        let err = OuterplanarGraph::new(5, &[(0, 2), (1, 3)]).unwrap_err();
        assert_eq!(err, GraphError::Crossing { first: (0, 2), second: (1, 3) });
    }

    #[test]
    fn rejects_bad_diagonal_sets() {
        assert!(matches!(OuterplanarGraph::new(5, &[(0, 2)]), Err(GraphError::DiagonalCount { .. })));
        assert!(matches!(
            OuterplanarGraph::new(5, &[(0, 2), (2, 0)]),
            Err(GraphError::Duplicate { a: 0, b: 2 })
        ));
        assert!(matches!(
            OuterplanarGraph::new(5, &[(0, 4), (1, 3)]),
            Err(GraphError::HullDiagonal { a: 0, b: 4 })
        ));
        assert!(matches!(OuterplanarGraph::new(2, &[]), Err(GraphError::TooFewVertices(2))));
    }

    #[test]
    fn dual_tree_counts() {
        let t = OuterplanarGraph::new(3, &[]).unwrap().dual_tree();
        assert_eq!((t.node_count(), t.edge_count()), (1, 0));
        let t = fan6().dual_tree();
        assert_eq!((t.node_count(), t.edge_count()), (4, 3));
        assert!((0..4).all(|f| t.degree(f) <= 2));
    }

    #[test]
    fn fan_cut_components() {
        let g = fan6();
        let (x, y) = g.cut_components(0, 3).unwrap();
        assert_eq!(x.vertices(), &[0, 1, 2, 3]);
        assert_eq!(y.vertices(), &[0, 3, 4, 5]);
        let (x, y) = g.cut_components(0, 2).unwrap();
        assert_eq!(x.vertices(), &[0, 1, 2]);
        assert_eq!(y.vertices(), &[0, 2, 3, 4, 5]);
        let tri = OuterplanarGraph::new(3, &[]).unwrap();
        assert_eq!(tri.cut_components(0, 1).unwrap_err(), GraphError::HullEdgeCut { a: 0, b: 1 });
    }

    #[test]
    fn outerplanar_paths() {
        let tri = OuterplanarGraph::new(3, &[]).unwrap();
        assert_eq!(tri.outerplanar_path(Edge(0, 1), Edge(1, 2)).unwrap().faces, vec![0]);
        let g = fan6();
        assert_eq!(g.outerplanar_path(Edge(0, 1), Edge(4, 5)).unwrap().faces, vec![0, 1, 2, 3]);
        assert_eq!(g.outerplanar_path(Edge(0, 3), Edge(0, 3)).unwrap().faces, vec![1]);
    }

    #[test]
    fn fan_hanging_subgraphs() {
        let g = fan6();
        let s = g.hanging_subgraph(Edge(0, 1), Edge(0, 4)).unwrap();
        assert_eq!(s.vertices(), &[0, 4, 5]);
        let s = g.hanging_subgraph(Edge(0, 1), Edge(4, 5)).unwrap();
        assert!(s.is_single_edge());
        assert_eq!(s.vertices(), &[4, 5]);
        assert!(g.hanging_subgraph(Edge(0, 1), Edge(0, 1)).is_err());
    }

    #[test]
    fn enumeration_counts_are_catalan() {
        assert_eq!(enumerate_triangulations(4).unwrap().count(), 2);
        assert_eq!(enumerate_triangulations(6).unwrap().count(), 14);
        assert_eq!(enumerate_triangulations(9).unwrap().count(), 429);
        assert_eq!(catalan(7), 429);
        assert!(enumerate_triangulations(13).is_err());
        assert!(enumerate_triangulations(2).is_err());
    }

    #[test]
    fn enumeration_is_duplicate_free() {
        let all: Vec<_> = enumerate_triangulations(8).unwrap().map(|g| g.to_json()).collect();
        let set: std::collections::HashSet<_> = all.iter().cloned().collect();
        assert_eq!(set.len(), all.len());
        assert_eq!(all.len() as u64, catalan(6));
    }

    #[test]
    fn random_is_deterministic() {
        let a = OuterplanarGraph::random(40, 7).unwrap();
        let b = OuterplanarGraph::random(40, 7).unwrap();
        assert_eq!(a, b);
        assert_eq!(OuterplanarGraph::random(3, 99).unwrap().faces(), &[[0, 1, 2]]);
        assert!(OuterplanarGraph::random(2, 0).is_err());
    }

    #[test]
    fn json_is_canonical() {
        let g = fan6();
        assert_eq!(g.to_json(), r#"{"n":6,"diagonals":[[0,2],[0,3],[0,4]]}"#);
        assert_eq!(OuterplanarGraph::from_json(&g.to_json()).unwrap(), g);
        assert!(matches!(
            OuterplanarGraph::from_json(r#"{"n":6,"diagonals":[[0,3],[0,2],[0,4]]}"#),
            Err(GraphError::NonCanonical(_))
        ));
        assert!(matches!(
            OuterplanarGraph::from_json(r#"{"n":6,"diagonals":[[2,0],[0,3],[0,4]]}"#),
            Err(GraphError::NonCanonical(_))
        ));
        assert!(matches!(OuterplanarGraph::from_json("{"), Err(GraphError::Parse(_))));
    }
}
