//! Bottom-up depth DP over the dual tree, with witness reconstruction.

use std::collections::HashSet;

use serde::Serialize;

use crate::error::DepthError;
use crate::graph::{Edge, FaceId, OuterplanarGraph, Vertex};
use crate::system::{ChildSystem, DepthSystem, Flavor};

/// The six depth variants stored for one oriented edge `(a, b)`.
///
/// `d`: plain depth of the hanging side. `h`: a ribbon enters through
/// `(a, b)` and ends at a non-cutting edge. `fa` / `fb`: the side is
/// covered by a fan at `a` / `b`. `pa` / `pb`: a ribbon enters, and the
/// neighbours of `a` / `b` are covered by it plus one fan.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct EdgeDepths {
    pub d: u32,
    pub h: u32,
    pub fa: u32,
    pub fb: u32,
    pub pa: u32,
    pub pb: u32,
}

impl EdgeDepths {
    /// How a single-edge side reads inside the recurrences: nothing hangs
    /// from it, yet any shape ending on it still occupies one level.
    const SINGLE: EdgeDepths = EdgeDepths { d: 0, h: 1, fa: 1, fb: 1, pa: 1, pb: 1 };

    pub fn as_array(&self) -> [u32; 6] {
        [self.d, self.h, self.fa, self.fb, self.pa, self.pb]
    }
}

fn combine(flavor: Flavor, l: EdgeDepths, r: EdgeDepths) -> EdgeDepths {
    use std::cmp::{max, min};
    let d = match flavor {
        Flavor::Bonnet => max(l.pa, r.pb),
        Flavor::Umbrella => min(max(l.pa, r.fb), max(l.fa, r.pb)),
    };
    EdgeDepths {
        d,
        h: min(max(l.h, 1 + r.d), max(1 + l.d, r.h)),
        fa: max(l.fa, 1 + r.d),
        fb: max(1 + l.d, r.fb),
        pa: min(max(l.pa, 1 + r.d), max(l.fa, r.h)),
        pb: min(max(1 + l.d, r.pb), max(l.h, r.fb)),
    }
}

/// Depth values for every edge, oriented so that the hanging side is the
/// hull arc running counterclockwise from `a` to `b`.
#[derive(Debug, Clone)]
pub struct DepthTable {
    flavor: Flavor,
    root: (Vertex, Vertex),
    root_face: FaceId,
    /// Oriented edge above each face (towards the root edge).
    above: Vec<(Vertex, Vertex)>,
    vals: Vec<EdgeDepths>,
    /// Faces in depth-first preorder from the root face.
    order: Vec<FaceId>,
}

impl DepthTable {
    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    /// Root edge in table orientation.
    pub fn root(&self) -> (Vertex, Vertex) {
        self.root
    }

    pub fn root_value(&self) -> u32 {
        self.vals[self.root_face as usize].d
    }

    pub fn root_values(&self) -> EdgeDepths {
        self.vals[self.root_face as usize]
    }

    /// Values of edge `{a, b}` with its orientation; hull edges other than
    /// the root read as all zeros.
    pub fn get(&self, g: &OuterplanarGraph, a: Vertex, b: Vertex) -> Option<((Vertex, Vertex), EdgeDepths)> {
        if !g.has_edge(a, b) {
            return None;
        }
        for f in g.edge_faces(a, b) {
            let (x, y) = self.above[f as usize];
            if Edge::new(x, y) == Edge::new(a, b) {
                return Some(((x, y), self.vals[f as usize]));
            }
        }
        let n = g.n();
        let (x, y) = if (a + 1) % n == b { (a, b) } else { (b, a) };
        Some(((x, y), EdgeDepths::default()))
    }

    /// Root edge and every diagonal, root first, parents before children.
    pub fn entries(&self) -> impl Iterator<Item = ((Vertex, Vertex), EdgeDepths)> + '_ {
        self.order.iter().map(move |&f| (self.above[f as usize], self.vals[f as usize]))
    }

    fn below(&self, g: &OuterplanarGraph, from: FaceId, a: Vertex, b: Vertex) -> Option<FaceId> {
        g.face_across(from, a, b)
    }

    fn eff(&self, g: &OuterplanarGraph, from: FaceId, a: Vertex, b: Vertex) -> EdgeDepths {
        match self.below(g, from, a, b) {
            Some(h) => self.vals[h as usize],
            None => EdgeDepths::SINGLE,
        }
    }

    /// Rebuilds an optimal system for the side below `face`.
    fn witness(&self, g: &OuterplanarGraph, face: FaceId) -> DepthSystem {
        let (a, b) = self.above[face as usize];
        let c = g.apex(face, a, b);
        let l = self.eff(g, face, a, c);
        let r = self.eff(g, face, c, b);

        #[derive(Clone, Copy)]
        enum Part {
            Handle,
            FanA,
            FanB,
            PartA,
            PartB,
            Anchor,
        }
        let mut work: Vec<(Part, Vertex, Vertex, FaceId)> = Vec::new();
        match self.flavor {
            Flavor::Bonnet => {
                work.push((Part::PartA, a, c, face));
                work.push((Part::PartB, c, b, face));
            }
            Flavor::Umbrella => {
                if l.pa.max(r.fb) <= l.fa.max(r.pb) {
                    work.push((Part::PartA, a, c, face));
                    work.push((Part::FanB, c, b, face));
                } else {
                    work.push((Part::FanA, a, c, face));
                    work.push((Part::PartB, c, b, face));
                }
            }
        }

        let mut ribbon: HashSet<FaceId> = HashSet::from([face]);
        let mut fan_a = Vec::new();
        let mut fan_b = Vec::new();
        let mut anchors: Vec<(Vertex, Vertex, FaceId)> = Vec::new();
        while let Some((part, x, y, from)) = work.pop() {
            let Some(h) = self.below(g, from, x, y) else { continue };
            let z = g.apex(h, x, y);
            let l = self.eff(g, h, x, z);
            let r = self.eff(g, h, z, y);
            match part {
                Part::Anchor => anchors.push((x, y, from)),
                Part::Handle => {
                    ribbon.insert(h);
                    if l.h.max(1 + r.d) <= (1 + l.d).max(r.h) {
                        work.push((Part::Handle, x, z, h));
                        work.push((Part::Anchor, z, y, h));
                    } else {
                        work.push((Part::Anchor, x, z, h));
                        work.push((Part::Handle, z, y, h));
                    }
                }
                Part::PartA => {
                    ribbon.insert(h);
                    if l.pa.max(1 + r.d) <= l.fa.max(r.h) {
                        work.push((Part::PartA, x, z, h));
                        work.push((Part::Anchor, z, y, h));
                    } else {
                        work.push((Part::FanA, x, z, h));
                        work.push((Part::Handle, z, y, h));
                    }
                }
                Part::PartB => {
                    ribbon.insert(h);
                    if (1 + l.d).max(r.pb) <= l.h.max(r.fb) {
                        work.push((Part::Anchor, x, z, h));
                        work.push((Part::PartB, z, y, h));
                    } else {
                        work.push((Part::Handle, x, z, h));
                        work.push((Part::FanB, z, y, h));
                    }
                }
                Part::FanA => {
                    fan_a = vec![y];
                    let (mut cur, mut at) = (y, from);
                    while let Some(k) = self.below(g, at, x, cur) {
                        let w = g.apex(k, x, cur);
                        fan_a.push(w);
                        work.push((Part::Anchor, w, cur, k));
                        cur = w;
                        at = k;
                    }
                }
                Part::FanB => {
                    fan_b = vec![x];
                    let (mut cur, mut at) = (x, from);
                    while let Some(k) = self.below(g, at, cur, y) {
                        let w = g.apex(k, cur, y);
                        fan_b.push(w);
                        work.push((Part::Anchor, cur, w, k));
                        cur = w;
                        at = k;
                    }
                }
            }
        }

        // Order the ribbon as a dual path: the (a,c) side reversed, the root
        // face, then the (c,b) side.
        let walk = |start: Option<FaceId>| -> Vec<FaceId> {
            let mut out = Vec::new();
            let (mut prev, mut cur) = (face, start);
            while let Some(f) = cur.filter(|f| ribbon.contains(f)) {
                out.push(f);
                let next = g.face_neighbors(f).find(|&h| h != prev && ribbon.contains(&h));
                prev = f;
                cur = next;
            }
            out
        };
        let mut ordered = walk(g.face_across(face, a, c));
        ordered.reverse();
        ordered.push(face);
        ordered.extend(walk(g.face_across(face, c, b)));
        debug_assert_eq!(ordered.len(), ribbon.len());
        if self.flavor == Flavor::Umbrella && ordered[0] != face {
            ordered.reverse();
        }

        anchors.sort_unstable();
        let children = anchors
            .into_iter()
            .map(|(x, y, from)| {
                let h = g.face_across(from, x, y).expect("anchor has a hanging face");
                ChildSystem { anchor: [x, y], system: self.witness(g, h) }
            })
            .collect();
        if fan_a.len() < 2 {
            fan_a.clear();
        }
        if fan_b.len() < 2 {
            fan_b.clear();
        }
        DepthSystem {
            flavor: self.flavor,
            root_edge: [a, b],
            ribbon_faces: ordered,
            fan_u: fan_a,
            fan_v: fan_b,
            children,
        }
    }
}

/// Orients a hull edge as `(x + 1, x)`, so the hanging side is everything.
fn orient_root(g: &OuterplanarGraph, u: Vertex, v: Vertex) -> Result<(Vertex, Vertex), DepthError> {
    if u >= g.n() || v >= g.n() || !g.has_edge(u, v) {
        return Err(DepthError::NotAnEdge { a: u, b: v });
    }
    if !g.is_hull_edge(u, v) {
        return Err(DepthError::RootNotHull { a: u, b: v });
    }
    let n = g.n();
    let x = if (u + 1) % n == v { u } else { v };
    Ok(((x + 1) % n, x))
}

pub fn depth_table(g: &OuterplanarGraph, root: (Vertex, Vertex), flavor: Flavor) -> Result<DepthTable, DepthError> {
    let (a0, b0) = orient_root(g, root.0, root.1)?;
    let fc = g.face_count();
    let root_face = g.edge_faces(a0, b0)[0];
    let mut above = vec![(0, 0); fc];
    let mut order = Vec::with_capacity(fc);
    above[root_face as usize] = (a0, b0);
    // Depth-first, so consecutive faces tend to be neighbours in the face array.
    let mut stack = vec![root_face];
    while let Some(f) = stack.pop() {
        order.push(f);
        let (a, b) = above[f as usize];
        let c = g.apex(f, a, b);
        for (x, y) in [(c, b), (a, c)] {
            if let Some(h) = g.face_across(f, x, y) {
                above[h as usize] = (x, y);
                stack.push(h);
            }
        }
    }
    let mut table = DepthTable { flavor, root: (a0, b0), root_face, above, vals: vec![EdgeDepths::default(); fc], order };
    for idx in (0..table.order.len()).rev() {
        let f = table.order[idx];
        let (a, b) = table.above[f as usize];
        let c = g.apex(f, a, b);
        let l = table.eff(g, f, a, c);
        let r = table.eff(g, f, c, b);
        table.vals[f as usize] = combine(flavor, l, r);
    }
    Ok(table)
}

/// Optimal depth for a fixed root edge and a system attaining it. The
/// witness keeps the caller's orientation of the root edge.
pub fn rooted_depth(g: &OuterplanarGraph, root: (Vertex, Vertex), flavor: Flavor) -> Result<(u32, DepthSystem), DepthError> {
    let table = depth_table(g, root, flavor)?;
    let mut sys = table.witness(g, table.root_face);
    if sys.root_edge != [root.0, root.1] {
        sys.root_edge = [root.0, root.1];
        std::mem::swap(&mut sys.fan_u, &mut sys.fan_v);
    }
    Ok((table.root_value(), sys))
}

/// Minimum over all hull root edges; ties go to the lexicographically
/// smallest edge.
pub fn free_depth(g: &OuterplanarGraph, flavor: Flavor) -> (u32, Edge, DepthSystem) {
    let (e, d) = depth_by_root(g, flavor)
        .into_iter()
        .min_by_key(|&(e, d)| (d, e))
        .expect("graph has hull edges");
    let (_, sys) = rooted_depth(g, (e.0, e.1), flavor).expect("hull edge");
    (d, e, sys)
}

/// Root values for every hull edge, in hull-edge order, in linear time.
///
/// The dual tree is rooted once; a second pass computes for every diagonal
/// the value of the side containing the tree root, so each hull edge's
/// value is a single `combine` of its face's two other sides.
pub fn depth_by_root(g: &OuterplanarGraph, flavor: Flavor) -> Vec<(Edge, u32)> {
    let fc = g.face_count();
    let mut parent = vec![FaceId::MAX; fc];
    let mut order = Vec::with_capacity(fc);
    parent[0] = 0;
    order.push(0 as FaceId);
    let mut i = 0;
    while i < order.len() {
        let f = order[i];
        for h in g.face_neighbors(f) {
            if parent[h as usize] == FaceId::MAX {
                parent[h as usize] = f;
                order.push(h);
            }
        }
        i += 1;
    }
    let mut down = vec![EdgeDepths::default(); fc];
    let mut up = vec![EdgeDepths::default(); fc];
    let side = |down: &[EdgeDepths], up: &[EdgeDepths], f: FaceId, x: Vertex, y: Vertex| match g.face_across(f, x, y) {
        None => EdgeDepths::SINGLE,
        Some(h) if parent[h as usize] == f && h != f => down[h as usize],
        Some(_) => up[f as usize],
    };
    let value = |down: &[EdgeDepths], up: &[EdgeDepths], f: FaceId, x: Vertex, y: Vertex| {
        let (a, b, c) = orient_in(g.face(f), x, y);
        combine(flavor, side(down, up, f, a, c), side(down, up, f, c, b))
    };
    let shared = |f: FaceId, h: FaceId| {
        g.face_edges(f).into_iter().find(|e| g.face_across(f, e.0, e.1) == Some(h)).expect("adjacent faces")
    };
    for &f in order.iter().skip(1).rev() {
        let e = shared(f, parent[f as usize]);
        down[f as usize] = value(&down, &up, f, e.0, e.1);
    }
    for &f in order.iter().skip(1) {
        let p = parent[f as usize];
        let e = shared(f, p);
        up[f as usize] = value(&down, &up, p, e.0, e.1);
    }
    g.hull_edges()
        .into_iter()
        .map(|e| {
            let f = g.edge_faces(e.0, e.1)[0];
            (e, value(&down, &up, f, e.0, e.1).d)
        })
        .collect()
}

/// Orients edge `{x, y}` of a face so the face lies on its hanging side;
/// returns `(a, b, apex)`.
fn orient_in(face: [Vertex; 3], x: Vertex, y: Vertex) -> (Vertex, Vertex, Vertex) {
    let mut t = face;
    t.sort_unstable();
    let [p, q, r] = t;
    let e = Edge::new(x, y);
    if e == Edge::new(p, r) {
        (p, r, q)
    } else if e == Edge::new(p, q) {
        (q, p, r)
    } else {
        (r, q, p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::system::validate_system;

    #[test]
    fn triangle() {
        let g = OuterplanarGraph::new(3, &[]).unwrap();
        for fl in [Flavor::Bonnet, Flavor::Umbrella] {
            let (d, s) = rooted_depth(&g, (0, 1), fl).unwrap();
            assert_eq!(d, 1);
            assert_eq!(s.ribbon_faces, vec![0]);
            validate_system(&g, &s).unwrap();
        }
    }

    #[test]
    fn fan_is_one_umbrella() {
        let g = OuterplanarGraph::new(6, &[(0, 2), (0, 3), (0, 4)]).unwrap();
        let (d, s) = rooted_depth(&g, (0, 1), Flavor::Umbrella).unwrap();
        assert_eq!(d, 1);
        assert_eq!(s.depth(), 1);
        validate_system(&g, &s).unwrap();
        let t = depth_table(&g, (0, 1), Flavor::Umbrella).unwrap();
        let (_, hull) = t.get(&g, 2, 3).unwrap();
        assert_eq!(hull, EdgeDepths::default());
    }

    #[test]
    fn diagonal_root_is_rejected() {
        let g = OuterplanarGraph::new(6, &[(0, 2), (0, 3), (0, 4)]).unwrap();
        assert_eq!(depth_table(&g, (0, 3), Flavor::Bonnet).unwrap_err(), DepthError::RootNotHull { a: 0, b: 3 });
        assert!(matches!(depth_table(&g, (1, 3), Flavor::Bonnet), Err(DepthError::NotAnEdge { .. })));
    }

    #[test]
    fn witness_is_deterministic() {
        let g = OuterplanarGraph::random(40, 7).unwrap();
        let a = rooted_depth(&g, (3, 4), Flavor::Bonnet).unwrap();
        let b = rooted_depth(&g, (3, 4), Flavor::Bonnet).unwrap();
        assert_eq!(a, b);
    }
}
