//! Lower-bound side: turning any valid drawing into an umbrella system
//! whose depth is below the drawing's height.

use std::collections::HashSet;

use crate::error::CertifyError;
use crate::fvr::{
    find_escape_path, find_escape_path_within, is_free, leftmost_vertical_edge, path_is_clear, validate, Axis,
    Drawing, EscapePath, Side,
};
use crate::graph::{Edge, FaceId, OuterplanarGraph, SubPolygon, Vertex};
use crate::system::{ChildSystem, DepthSystem, Flavor};

/// Things `normalize` must keep intact on the side opposite the one it frees.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Preserve {
    pub free_edge: Option<Edge>,
    pub escaping: Option<Vertex>,
}

/// Rearranges `d` so that some non-cutting edge is free on `side`, without
/// moving any vertex to another layer. Returns the drawing and that edge.
pub fn normalize(
    g: &OuterplanarGraph,
    d: &Drawing,
    side: Side,
    preserve: Preserve,
) -> Result<(Drawing, Edge), CertifyError> {
    validate(g, d).map_err(|v| CertifyError::InvalidDrawing(v.to_string()))?;
    let keep_side = side.flip();
    check_preserved(d, preserve, keep_side, "input")?;
    let mut keep = Vec::new();
    keep.extend(preserve.free_edge.iter().flat_map(|e| [e.0, e.1]));
    keep.extend(preserve.escaping);
    let (out, e) = free_non_cutting(g, d.clone(), side, &keep)?;
    check_preserved(&out, preserve, keep_side, "output")?;
    Ok((out, e))
}

fn check_preserved(d: &Drawing, p: Preserve, side: Side, stage: &str) -> Result<(), CertifyError> {
    if let Some(e) = p.free_edge {
        if !is_free(d, e, side) {
            return Err(CertifyError::Preserve(format!("{stage}: ({},{}) is not {side:?}-free", e.0, e.1)));
        }
    }
    if let Some(w) = p.escaping {
        if find_escape_path(d, w, side)?.is_none() {
            return Err(CertifyError::Preserve(format!("{stage}: vertex {w} has no {side:?} escape path")));
        }
    }
    Ok(())
}

fn free_non_cutting(
    g: &OuterplanarGraph,
    d: Drawing,
    side: Side,
    keep: &[Vertex],
) -> Result<(Drawing, Edge), CertifyError> {
    match side {
        Side::Left => free_left(g, d, keep),
        Side::Right => {
            let (out, e) = free_left(g, d.reflect(Axis::Horizontal), keep)?;
            Ok((out.reflect(Axis::Horizontal), e))
        }
    }
}

/// Flips cut-components at the leftmost vertical edge until that edge is a
/// boundary edge of the drawn polygon. Vertices in `keep` stay where they are.
fn free_left(g: &OuterplanarGraph, d: Drawing, keep: &[Vertex]) -> Result<(Drawing, Edge), CertifyError> {
    let ctx = SubPolygon::from_sorted(g, d.vertex_ids());
    let e = leftmost_vertical_edge(&d)?;
    if !ctx.is_diagonal(g, e.0, e.1) {
        return Ok((d, e));
    }
    let (x, y) = ctx.cut_components(g, e.0, e.1).map_err(|err| CertifyError::InvalidDrawing(err.to_string()))?;
    let sides: HashSet<bool> =
        keep.iter().filter(|&&w| !e.has(w)).map(|&w| x.polygon.contains(w)).collect();
    if sides.len() > 1 {
        return Err(CertifyError::Preserve(format!(
            "kept vertices {keep:?} lie on both sides of cutting edge ({},{})",
            e.0, e.1
        )));
    }
    let (a, b) = if sides.contains(&false) { (y, x) } else { (x, y) };
    let da = d.induced(a.vertices());
    let db = d.induced(b.vertices()).reflect(Axis::Horizontal);
    let (mut db, inner) = free_left(g, db, &[e.0, e.1])?;
    if inner == e {
        return Err(CertifyError::Extraction {
            vertices: b.vertices().to_vec(),
            vertex: e.0,
            reason: "reflected component has nothing left of the shared edge".into(),
        });
    }
    db.translate(da.min_x() - 1 - db.max_x(), 0);
    let mut out = da;
    for vb in &db.vertices {
        match out.vertex_mut(vb.id) {
            Some(ob) if e.has(vb.id) => {
                ob.x0 = ob.x0.min(vb.x0);
                ob.x1 = ob.x1.max(vb.x1);
            }
            _ => out.put_vertex(*vb),
        }
    }
    out.edges.extend(db.edges.iter().filter(|s| s.edge() != e).copied());
    Ok((out, inner))
}

/// Umbrella system rooted at the non-cutting edge `root` whose depth is at
/// most the drawing's height minus one, given an escape path from one of
/// the root's endpoints.
pub fn extract_umbrella_system(
    g: &OuterplanarGraph,
    d: &Drawing,
    root: Edge,
    escape: &EscapePath,
) -> Result<DepthSystem, CertifyError> {
    validate(g, d).map_err(|v| CertifyError::InvalidDrawing(v.to_string()))?;
    if !g.is_hull_edge(root.0, root.1) {
        return Err(CertifyError::Preserve(format!("root ({},{}) is a cutting edge", root.0, root.1)));
    }
    if !root.has(escape.vertex) || !path_is_clear(d, escape) {
        return Err(CertifyError::NoEscape { a: root.0, b: root.1 });
    }
    let window = layer_span(d);
    let s = extract_in(g, d.clone(), root, window, escape.side)?;
    check_bound(&s, window, d)?;
    Ok(s)
}

/// Output of [`certify_drawing`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub system: DepthSystem,
    pub height: u32,
    pub extracted_depth: u32,
}

/// Extracts an umbrella system of depth at most `height - 1` from a valid
/// drawing of `g`, rooted at a non-cutting edge made right-free first.
pub fn certify_drawing(g: &OuterplanarGraph, d: &Drawing) -> Result<Certificate, CertifyError> {
    validate(g, d).map_err(|v| CertifyError::InvalidDrawing(v.to_string()))?;
    let d = d.clone().normalized();
    let (d, root) = free_non_cutting(g, d, Side::Right, &[])?;
    let mut side = None;
    for w in [root.1, root.0] {
        if find_escape_path(&d, w, Side::Right)?.is_some() {
            side = Some(Side::Right);
            break;
        }
    }
    let side = side.ok_or(CertifyError::NoEscape { a: root.0, b: root.1 })?;
    let window = layer_span(&d);
    let system = extract_in(g, d.clone(), root, window, side)?;
    check_bound(&system, window, &d)?;
    Ok(Certificate { extracted_depth: system.depth(), height: d.height(), system })
}

fn check_bound(s: &DepthSystem, window: (u32, u32), d: &Drawing) -> Result<(), CertifyError> {
    let h = window.1 - window.0 + 1;
    if s.depth() + 1 > h {
        return Err(CertifyError::Extraction {
            vertices: d.vertex_ids(),
            vertex: s.root_edge[0],
            reason: format!("extracted depth {} exceeds height {h} minus one", s.depth()),
        });
    }
    Ok(())
}

fn layer_span(d: &Drawing) -> (u32, u32) {
    let lo = d.vertices.iter().map(|b| b.layer).chain(d.edges.iter().map(|e| e.layer_span().0)).min();
    let hi = d.vertices.iter().map(|b| b.layer).chain(d.edges.iter().map(|e| e.layer_span().1)).max();
    (lo.unwrap_or(1), hi.unwrap_or(1))
}

/// `d` draws one polygon with `root` on its boundary, confined to layers
/// `window`; an endpoint of `root` escapes to `side`.
fn extract_in(
    g: &OuterplanarGraph,
    d: Drawing,
    root: Edge,
    window: (u32, u32),
    side: Side,
) -> Result<DepthSystem, CertifyError> {
    let d = if side == Side::Left { d.reflect(Axis::Horizontal) } else { d };
    let (mut d, mut l) = free_left(g, d, &[root.0, root.1])?;
    if l == root {
        // Both root endpoints escape left, so the mirror image has the root
        // right-free and its leftmost vertical edge elsewhere.
        (d, l) = free_left(g, d.reflect(Axis::Horizontal), &[root.0, root.1])?;
    }
    let ctx = SubPolygon::from_sorted(g, d.vertex_ids());
    let fail = |vertex: Vertex, reason: String| CertifyError::Extraction { vertices: ctx.vertices().to_vec(), vertex, reason };

    let root_face = ctx.face_on(g, root.0, root.1).ok_or_else(|| fail(root.0, "root edge has no face".into()))?;
    let l_face = ctx.face_on(g, l.0, l.1).ok_or_else(|| fail(l.0, "left-free edge has no face".into()))?;
    let ribbon = g.dual_path(root_face, l_face);
    let ribbon_set: HashSet<FaceId> = ribbon.iter().copied().collect();

    let fan_u = fan(g, &ctx, root.0, root.1, &ribbon_set).map_err(|r| fail(root.0, r))?;
    let fan_v = fan(g, &ctx, root.1, root.0, &ribbon_set).map_err(|r| fail(root.1, r))?;
    let mut shape = ribbon_set.clone();
    for (apex, f) in [(root.0, &fan_u), (root.1, &fan_v)] {
        for w in f.windows(2) {
            shape.extend(g.find_face([apex, w[0], w[1]]));
        }
    }

    let mut anchors: Vec<Edge> = Vec::new();
    for &f in &shape {
        for e in g.face_edges(f) {
            if !ctx.is_diagonal(g, e.0, e.1) {
                continue;
            }
            if let Some(h) = g.face_across(f, e.0, e.1) {
                if !shape.contains(&h) && ctx.contains_face(g, h) {
                    anchors.push(e);
                }
            }
        }
    }
    anchors.sort_unstable();
    anchors.dedup();

    let mut children = Vec::with_capacity(anchors.len());
    for anchor in anchors {
        let sub = ctx.hanging(g, root, anchor).map_err(|err| fail(anchor.0, err.to_string()))?;
        let child = d.induced(sub.vertices());
        let (clo, chi) = layer_span(&child);
        let windows = [(window.0, window.1.saturating_sub(1)), (window.0 + 1, window.1)];
        let mut chosen = None;
        'search: for w in windows {
            if w.0 > w.1 || clo < w.0 || chi > w.1 {
                continue;
            }
            for s in [Side::Left, Side::Right] {
                for x in [anchor.0, anchor.1] {
                    if find_escape_path_within(&child, x, s, w.0, w.1)?.is_some() {
                        chosen = Some((w, s));
                        break 'search;
                    }
                }
            }
        }
        let Some((w, s)) = chosen else {
            return Err(CertifyError::Extraction {
                vertices: sub.vertices().to_vec(),
                vertex: anchor.0,
                reason: format!("no escape path from ({},{}) inside a window one layer smaller than {window:?}", anchor.0, anchor.1),
            });
        };
        let system = extract_in(g, child, anchor, w, s)?;
        children.push(ChildSystem { anchor: [anchor.0, anchor.1], system });
    }

    Ok(DepthSystem {
        flavor: Flavor::Umbrella,
        root_edge: [root.0, root.1],
        ribbon_faces: ribbon,
        fan_u,
        fan_v,
        children,
    })
}

/// Fan at `apex` over every face around it not already in the ribbon,
/// listed outward from the vertex it shares with the ribbon.
fn fan(
    g: &OuterplanarGraph,
    ctx: &SubPolygon,
    apex: Vertex,
    other: Vertex,
    ribbon: &HashSet<FaceId>,
) -> Result<Vec<Vertex>, String> {
    let verts = ctx.vertices();
    let k = verts.len();
    let rank = |v: Vertex| verts.binary_search(&v).expect("vertex in polygon");
    let ra = rank(apex);
    let mut nbrs: Vec<Vertex> = g.neighbors(apex).iter().copied().filter(|&w| ctx.contains(w)).collect();
    nbrs.sort_by_key(|&w| (rank(w) + k - ra) % k);
    if nbrs.first() != Some(&other) {
        nbrs.reverse();
    }
    let faces: Vec<FaceId> = nbrs
        .windows(2)
        .map(|w| g.find_face([apex, w[0], w[1]]).ok_or_else(|| format!("({apex},{},{}) is not a face", w[0], w[1])))
        .collect::<Result<_, _>>()?;
    let start = faces.iter().position(|f| !ribbon.contains(f)).unwrap_or(faces.len());
    if faces[start..].iter().any(|f| ribbon.contains(f)) {
        return Err(format!("ribbon faces around {apex} are not contiguous"));
    }
    Ok(if start < faces.len() { nbrs[start..].to_vec() } else { Vec::new() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fvr::{is_left_free, DrawnEdge, VertexBox};
    use crate::layout::draw_auto;
    use crate::system::validate_system;

    fn vb(id: Vertex, layer: u32, x0: i64, x1: i64) -> VertexBox {
        VertexBox { id, layer, x0, x1 }
    }

    fn triangle() -> (OuterplanarGraph, Drawing) {
        let g = OuterplanarGraph::new(3, &[]).unwrap();
        let mut d = Drawing::new(2);
        d.put_vertex(vb(0, 1, 0, 2));
        d.put_vertex(vb(1, 1, 3, 5));
        d.put_vertex(vb(2, 2, 0, 5));
        d.edges = vec![
            DrawnEdge::Horizontal { u: 0, v: 1, layer: 1, x0: 2, x1: 3 },
            DrawnEdge::Vertical { u: 0, v: 2, x: 1, y0: 1, y1: 2 },
            DrawnEdge::Vertical { u: 1, v: 2, x: 4, y0: 1, y1: 2 },
        ];
        (g, d)
    }

    /// Square 0,1,2,3 whose diagonal (0,2) is the leftmost vertical edge.
    fn square_with_left_diagonal() -> (OuterplanarGraph, Drawing) {
        let g = OuterplanarGraph::new(4, &[(0, 2)]).unwrap();
        let mut d = Drawing::new(3);
        d.put_vertex(vb(0, 1, 0, 6));
        d.put_vertex(vb(1, 2, 2, 2));
        d.put_vertex(vb(3, 2, 4, 4));
        d.put_vertex(vb(2, 3, 0, 6));
        d.edges = vec![
            DrawnEdge::Vertical { u: 0, v: 2, x: 0, y0: 1, y1: 3 },
            DrawnEdge::Vertical { u: 0, v: 1, x: 2, y0: 1, y1: 2 },
            DrawnEdge::Vertical { u: 1, v: 2, x: 2, y0: 2, y1: 3 },
            DrawnEdge::Vertical { u: 0, v: 3, x: 4, y0: 1, y1: 2 },
            DrawnEdge::Vertical { u: 3, v: 2, x: 4, y0: 2, y1: 3 },
        ];
        (g, d)
    }

    #[test]
    fn triangle_unchanged_and_depth_one() {
        let (g, d) = triangle();
        let (out, e) = normalize(&g, &d, Side::Left, Preserve::default()).unwrap();
        assert_eq!(out, d);
        assert_eq!(e, Edge::new(0, 2));
        let c = certify_drawing(&g, &d).unwrap();
        assert_eq!((c.height, c.extracted_depth), (2, 1));
        validate_system(&g, &c.system).unwrap();
    }

    #[test]
    fn flips_cutting_leftmost_edge() {
        let (g, d) = square_with_left_diagonal();
        validate(&g, &d).unwrap();
        assert_eq!(leftmost_vertical_edge(&d).unwrap(), Edge::new(0, 2));
        let (out, e) = normalize(&g, &d, Side::Left, Preserve::default()).unwrap();
        validate(&g, &out).unwrap();
        assert!(g.is_hull_edge(e.0, e.1));
        assert!(is_left_free(&out, e));
        assert_eq!(out.height(), d.height());
        for b in &d.vertices {
            assert_eq!(out.vertex(b.id).unwrap().layer, b.layer);
        }
    }

    #[test]
    fn conflicting_preserve_is_reported() {
        let (g, d) = square_with_left_diagonal();
        let p = Preserve { free_edge: None, escaping: Some(9) };
        assert!(normalize(&g, &d, Side::Left, p).is_err());
    }

    #[test]
    fn fan_pipeline() {
        let g = OuterplanarGraph::new(6, &[(0, 2), (0, 3), (0, 4)]).unwrap();
        let (d, _) = draw_auto(&g);
        assert_eq!(d.height(), 3);
        let c = certify_drawing(&g, &d).unwrap();
        validate_system(&g, &c.system).unwrap();
        assert!(c.extracted_depth <= 2);
    }
}
