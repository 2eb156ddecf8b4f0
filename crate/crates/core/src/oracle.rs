//! Brute-force references for the depth DP and for tree pathwidth.

use std::collections::{HashMap, HashSet};

use crate::error::DepthError;
use crate::graph::{DualTree, Edge, FaceId, OuterplanarGraph, SubPolygon, Vertex};
use crate::system::Flavor;

pub const BRUTE_DEPTH_GUARD: u32 = 14;
pub const BRUTE_PATHWIDTH_GUARD: usize = 20;

/// Minimum system depth by enumerating every admissible root shape.
pub fn brute_depth(g: &OuterplanarGraph, root: (Vertex, Vertex), flavor: Flavor) -> Result<u32, DepthError> {
    if g.n() > BRUTE_DEPTH_GUARD {
        return Err(DepthError::Guard { what: "brute_depth", size: g.n() as usize, guard: BRUTE_DEPTH_GUARD as usize });
    }
    let (u, v) = root;
    if u >= g.n() || v >= g.n() || !g.has_edge(u, v) {
        return Err(DepthError::NotAnEdge { a: u, b: v });
    }
    if !g.is_hull_edge(u, v) {
        return Err(DepthError::RootNotHull { a: u, b: v });
    }
    let mut b = Brute { g, flavor, memo: HashMap::new() };
    Ok(b.depth(&g.whole(), Edge::new(u, v)))
}

struct Brute<'a> {
    g: &'a OuterplanarGraph,
    flavor: Flavor,
    memo: HashMap<(Vec<Vertex>, Edge), u32>,
}

impl Brute<'_> {
    fn depth(&mut self, ctx: &SubPolygon, cap: Edge) -> u32 {
        let key = (ctx.vertices().to_vec(), cap);
        if let Some(&d) = self.memo.get(&key) {
            return d;
        }
        let g = self.g;
        let faces = ctx.faces(g);
        let f0 = ctx.face_on(g, cap.0, cap.1).expect("cap has a face");
        let mut ribbons: Vec<Vec<FaceId>> = Vec::new();
        match self.flavor {
            Flavor::Umbrella => {
                for &t in &faces {
                    let p = g.dual_path(f0, t);
                    let far = free_edges(g, ctx, &p, p.len() - 1);
                    if far.iter().any(|&e| e != cap) {
                        ribbons.push(p);
                    }
                }
            }
            Flavor::Bonnet => {
                for (i, &s) in faces.iter().enumerate() {
                    for &t in &faces[i..] {
                        let p = g.dual_path(s, t);
                        if !p.contains(&f0) {
                            continue;
                        }
                        let first = free_edges(g, ctx, &p, 0);
                        let last = free_edges(g, ctx, &p, p.len() - 1);
                        if first.iter().any(|a| last.iter().any(|b| a != b)) {
                            ribbons.push(p);
                        }
                    }
                }
            }
        }
        let mut best = u32::MAX;
        for ribbon in ribbons {
            let mut shape: HashSet<FaceId> = ribbon.iter().copied().collect();
            for &f in &faces {
                let tri = g.face(f);
                if tri.contains(&cap.0) || tri.contains(&cap.1) {
                    shape.insert(f);
                }
            }
            let mut worst = 0;
            for anchor in anchors(g, ctx, &shape) {
                if anchor.has(cap.0) || anchor.has(cap.1) {
                    worst = u32::MAX;
                    break;
                }
                let sub = ctx.hanging(g, cap, anchor).expect("anchor lies in the context");
                worst = worst.max(self.depth(&sub.polygon, anchor));
                if 1 + worst >= best {
                    break;
                }
            }
            best = best.min(worst.saturating_add(1));
        }
        self.memo.insert(key, best);
        best
    }
}

/// Boundary edges of `path[i]` not shared with its path neighbours.
fn free_edges(g: &OuterplanarGraph, ctx: &SubPolygon, path: &[FaceId], i: usize) -> Vec<Edge> {
    let mut shared: Vec<Edge> = Vec::new();
    if i > 0 {
        shared.extend(g.face_edges(path[i - 1]));
    }
    if i + 1 < path.len() {
        shared.extend(g.face_edges(path[i + 1]));
    }
    g.face_edges(path[i])
        .into_iter()
        .filter(|e| ctx.is_boundary(e.0, e.1) && !shared.contains(e))
        .collect()
}

fn anchors(g: &OuterplanarGraph, ctx: &SubPolygon, shape: &HashSet<FaceId>) -> Vec<Edge> {
    let mut out = Vec::new();
    for &f in shape {
        for e in g.face_edges(f) {
            if !ctx.is_diagonal(g, e.0, e.1) {
                continue;
            }
            if let Some(h) = g.face_across(f, e.0, e.1) {
                if !shape.contains(&h) {
                    out.push(e);
                }
            }
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

/// Pathwidth as vertex separation number, by dynamic programming over
/// vertex subsets.
pub fn brute_tree_pathwidth(t: &DualTree) -> Result<u32, DepthError> {
    let k = t.node_count();
    if k == 0 {
        return Err(DepthError::EmptyTree);
    }
    if k > BRUTE_PATHWIDTH_GUARD {
        return Err(DepthError::Guard { what: "brute_tree_pathwidth", size: k, guard: BRUTE_PATHWIDTH_GUARD });
    }
    let nbr: Vec<u32> = (0..k).map(|i| t.neighbors(i as FaceId).iter().fold(0u32, |m, &j| m | 1 << j)).collect();
    let full = (1u32 << k) - 1;
    let mut best = vec![u32::MAX; 1 << k];
    best[0] = 0;
    for s in 1..=full {
        let boundary = (0..k).filter(|&i| s >> i & 1 == 1 && nbr[i] & !s != 0).count() as u32;
        let mut m = u32::MAX;
        let mut rest = s;
        while rest != 0 {
            let i = rest.trailing_zeros();
            m = m.min(best[(s & !(1 << i)) as usize]);
            rest &= rest - 1;
        }
        best[s as usize] = m.max(boundary);
    }
    Ok(best[full as usize])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_and_fan() {
        let t = OuterplanarGraph::new(3, &[]).unwrap();
        let f = OuterplanarGraph::new(6, &[(0, 2), (0, 3), (0, 4)]).unwrap();
        for fl in [Flavor::Bonnet, Flavor::Umbrella] {
            assert_eq!(brute_depth(&t, (0, 1), fl).unwrap(), 1);
            assert_eq!(brute_depth(&t, (2, 0), fl).unwrap(), 1);
        }
        assert_eq!(brute_depth(&f, (0, 1), Flavor::Umbrella).unwrap(), 1);
    }

    #[test]
    fn guard() {
        let g = OuterplanarGraph::random(15, 1).unwrap();
        assert!(matches!(brute_depth(&g, (0, 1), Flavor::Bonnet), Err(DepthError::Guard { .. })));
    }

    #[test]
    fn pathwidth_small() {
        assert_eq!(brute_tree_pathwidth(&DualTree::from_adjacency(vec![vec![]])).unwrap(), 0);
        let path = DualTree::from_adjacency(vec![vec![1], vec![0, 2], vec![1]]);
        assert_eq!(brute_tree_pathwidth(&path).unwrap(), 1);
    }
}
