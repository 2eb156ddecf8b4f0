//! Drawings from bonnet systems: a three-layer drawing of the root shape,
//! with the drawings of hanging subgraphs merged into the gaps of their
//! anchor edges. Height is `2 * depth + 1`.

use std::collections::{HashMap, HashSet};

use crate::depth::free_depth;
use crate::error::LayoutError;
use crate::fvr::{validate_geometry, Axis, Drawing, DrawnEdge, VertexBox};
use crate::graph::{Edge, FaceId, OuterplanarGraph, SubPolygon, Vertex};
use crate::system::{validate_system, DepthSystem, Flavor};

fn fail<T>(msg: impl Into<String>) -> Result<T, LayoutError> {
    Err(LayoutError::Construction(msg.into()))
}

fn common(a: Edge, b: Edge) -> Option<Vertex> {
    [a.0, a.1].into_iter().find(|&x| b.has(x))
}

/// Picks an end rung of `face`, avoiding the cap, anchors and the edges in
/// `taken`. Non-cutting edges of the context are preferred.
fn end_rung(
    g: &OuterplanarGraph,
    ctx: &SubPolygon,
    face: FaceId,
    cap: Edge,
    anchors: &HashSet<Edge>,
    taken: &[Edge],
) -> Result<Edge, LayoutError> {
    let mut options: Vec<Edge> = g
        .face_edges(face)
        .into_iter()
        .filter(|e| *e != cap && !anchors.contains(e) && !taken.contains(e))
        .collect();
    options.sort_by_key(|e| (!ctx.is_boundary(e.0, e.1), *e));
    match options.first() {
        Some(&e) => Ok(e),
        None => fail(format!("face {face} has no admissible end rung")),
    }
}

/// Two-layer drawing of the ribbon: one vertical rung per face boundary,
/// the cap and every anchor on it horizontal, `root_edge[0]` left of
/// `root_edge[1]` on the top layer.
pub fn draw_ribbon(g: &OuterplanarGraph, ctx: &SubPolygon, s: &DepthSystem) -> Result<Drawing, LayoutError> {
    let faces = &s.ribbon_faces;
    let k = faces.len();
    if k == 0 {
        return fail("empty ribbon");
    }
    let [u, v] = s.root_edge;
    let cap = Edge::new(u, v);
    let anchors: HashSet<Edge> = s.children.iter().map(|c| Edge::new(c.anchor[0], c.anchor[1])).collect();

    let mut rungs: Vec<Edge> = Vec::with_capacity(k + 1);
    let mut inner = Vec::with_capacity(k.saturating_sub(1));
    for w in faces.windows(2) {
        let shared = g.face_edges(w[0]).into_iter().find(|e| g.face_edges(w[1]).contains(e));
        match shared {
            Some(e) => inner.push(e),
            None => return fail(format!("faces {} and {} are not adjacent", w[0], w[1])),
        }
    }
    let first_taken: Vec<Edge> = inner.first().copied().into_iter().collect();
    let r0 = end_rung(g, ctx, faces[0], cap, &anchors, &first_taken)?;
    let mut last_taken: Vec<Edge> = inner.last().copied().into_iter().collect();
    if k == 1 {
        last_taken.push(r0);
    }
    let rk = end_rung(g, ctx, faces[k - 1], cap, &anchors, &last_taken)?;
    rungs.push(r0);
    rungs.extend(inner);
    rungs.push(rk);

    let Some(j) = faces.iter().position(|&f| {
        let t = g.face(f);
        t.contains(&u) && t.contains(&v)
    }) else {
        return fail("ribbon misses the cap face");
    };
    // Face j lies between rungs j and j+1; their common vertex is the apex.
    let mut layer: HashMap<Vertex, u32> = HashMap::new();
    let Some(apex) = common(rungs[j], rungs[j + 1]) else { return fail("rungs of the cap face are disjoint") };
    if apex == u || apex == v {
        return fail("cap edge became a rung");
    }
    layer.insert(apex, 2);
    layer.insert(u, 1);
    layer.insert(v, 1);
    for i in j + 1..k {
        let Some(sv) = common(rungs[i], rungs[i + 1]) else { return fail("consecutive rungs are disjoint") };
        layer.insert(rungs[i + 1].other(sv), 3 - layer[&sv]);
    }
    for i in (1..=j).rev() {
        let Some(sv) = common(rungs[i], rungs[i - 1]) else { return fail("consecutive rungs are disjoint") };
        layer.insert(rungs[i - 1].other(sv), 3 - layer[&sv]);
    }

    let mut span: HashMap<Vertex, (usize, usize, usize)> = HashMap::new();
    for (i, r) in rungs.iter().enumerate() {
        for w in [r.0, r.1] {
            let e = span.entry(w).or_insert((i, i, 0));
            e.1 = i;
            e.2 += 1;
        }
    }
    let mut d = Drawing::new(2);
    for (&w, &(lo, hi, count)) in &span {
        if count != hi - lo + 1 {
            return fail(format!("vertex {w} meets the rungs non-contiguously"));
        }
        d.put_vertex(VertexBox { id: w, layer: layer[&w], x0: 2 * lo as i64, x1: 2 * hi as i64 });
    }
    for (i, r) in rungs.iter().enumerate() {
        let (top, bot) = if layer[&r.0] == 1 { (r.0, r.1) } else { (r.1, r.0) };
        if layer[&top] == layer[&bot] {
            return fail(format!("rung ({},{}) has both ends on one layer", r.0, r.1));
        }
        d.edges.push(DrawnEdge::Vertical { u: top, v: bot, x: 2 * i as i64, y0: 1, y1: 2 });
    }
    for i in 0..k {
        let sv = common(rungs[i], rungs[i + 1]).expect("checked above");
        let (p, q) = (rungs[i].other(sv), rungs[i + 1].other(sv));
        d.edges.push(DrawnEdge::Horizontal { u: p, v: q, layer: layer[&p], x0: 2 * i as i64, x1: 2 * i as i64 + 2 });
    }
    if d.vertex(u).expect("u drawn").x0 > d.vertex(v).expect("v drawn").x0 {
        d = d.reflect(Axis::Horizontal);
    }
    Ok(d)
}

/// Moves top-layer horizontal edge `(u, v)` into a new top layer that it
/// spans corner to corner.
pub fn release_edge(d: &Drawing, u: Vertex, v: Vertex) -> Result<Drawing, LayoutError> {
    let Some(idx) = d.find_edge(u, v) else { return fail(format!("({u},{v}) is not drawn")) };
    let DrawnEdge::Horizontal { layer: 1, .. } = d.edges[idx] else {
        return fail(format!("({u},{v}) is not horizontal in the top layer"));
    };
    let (bu, bv) = (*d.vertex(u).expect("drawn"), *d.vertex(v).expect("drawn"));
    let (l, r) = if bu.x0 < bv.x0 { (bu, bv) } else { (bv, bu) };
    let (minx, maxx) = (d.min_x(), d.max_x());
    let mut out = d.clone();
    out.translate(0, 1);
    let edges = std::mem::take(&mut out.edges);
    let old = |w: Vertex| *out.vertex(w).expect("drawn");
    let mut next = Vec::with_capacity(edges.len());
    for e in edges {
        let (a, b) = e.ends();
        if Edge::new(a, b) == Edge::new(u, v) {
            next.push(DrawnEdge::Horizontal { u: l.id, v: r.id, layer: 1, x0: l.x1, x1: r.x0 });
            continue;
        }
        let apex = if a == l.id || a == r.id {
            a
        } else if b == l.id || b == r.id {
            b
        } else {
            next.push(e);
            continue;
        };
        let other = if apex == a { b } else { a };
        match e {
            DrawnEdge::Vertical { x, y1, .. } => {
                next.push(DrawnEdge::Vertical { u: apex, v: other, x, y0: 1, y1 });
            }
            DrawnEdge::Horizontal { .. } => {
                let t = old(other);
                let x = if t.x1 < old(apex).x0 { t.x1 } else { t.x0 };
                next.push(DrawnEdge::Vertical { u: apex, v: other, x, y0: 1, y1: t.layer });
            }
        }
    }
    out.edges = next;
    out.put_vertex(VertexBox { id: l.id, layer: 1, x0: minx, x1: l.x1 });
    out.put_vertex(VertexBox { id: r.id, layer: 1, x0: r.x0, x1: maxx });
    Ok(out)
}

fn add_fan(d: &mut Drawing, apex: Vertex, fan: &[Vertex], left: bool) -> Result<(), LayoutError> {
    if fan.len() < 2 {
        return Ok(());
    }
    let w0 = fan[0];
    let m = (fan.len() - 1) as i64;
    let Some(idx) = d.find_edge(apex, w0) else { return fail(format!("fan edge ({apex},{w0}) not drawn")) };
    let DrawnEdge::Vertical { x, .. } = d.edges[idx] else {
        return fail(format!("fan edge ({apex},{w0}) is not vertical after release"));
    };
    let b0 = *d.vertex(w0).expect("drawn");
    let bottom = d.layers;
    let (minx, maxx) = (d.min_x(), d.max_x());
    // Outer case: the shared edge is the extreme vertical edge and the fan
    // grows outward on the bottom layer. Inner case: the shared edge came
    // from a released horizontal edge and the fan fills new columns next to
    // it on the middle layer.
    let outer = b0.layer == bottom && if left { x == minx && b0.x0 == minx } else { x == maxx && b0.x1 == maxx };
    let inner = b0.layer == 2 && if left { x == b0.x1 } else { x == b0.x0 };
    let row = if outer {
        bottom
    } else if inner {
        2
    } else {
        return fail(format!(
            "fan at {apex}: shared edge ({apex},{w0}) is neither the outer vertical edge nor a released edge"
        ));
    };
    let columns: Vec<i64> = match (outer, left) {
        (true, true) => (1..=m).map(|i| b0.x0 - 2 * i).collect(),
        (true, false) => (1..=m).map(|i| b0.x1 + 2 * i).collect(),
        (false, true) => {
            let cut = b0.x1;
            d.remap(|z| if z > cut { z + 2 * m } else { z }, |y| y);
            (1..=m).map(|i| cut + 2 * i).collect()
        }
        (false, false) => {
            let cut = b0.x0;
            d.remap(|z| if z >= cut { z + 2 * m } else { z }, |y| y);
            (1..=m).map(|i| cut + 2 * m - 2 * i).collect()
        }
    };
    let mut prev = *d.vertex(w0).expect("drawn");
    for (&w, &col) in fan[1..].iter().zip(&columns) {
        if d.vertex(w).is_some() {
            return fail(format!("fan vertex {w} already drawn"));
        }
        let bx = VertexBox { id: w, layer: row, x0: col, x1: col };
        d.put_vertex(bx);
        let (l, r) = if prev.x1 < bx.x0 { (prev, bx) } else { (bx, prev) };
        d.edges.push(DrawnEdge::Horizontal { u: l.id, v: r.id, layer: row, x0: l.x1, x1: r.x0 });
        d.edges.push(DrawnEdge::Vertical { u: apex, v: w, x: col, y0: 1, y1: row });
        prev = bx;
    }
    let a = d.vertex_mut(apex).expect("drawn");
    if left {
        a.x0 = a.x0.min(prev.x0);
    } else {
        a.x1 = a.x1.max(prev.x1);
    }
    Ok(())
}

/// Three-layer drawing of the root shape: ribbon, release of the cap, then
/// the fans. Anchors end up horizontal on layer 2 or 3.
pub fn draw_root_bonnet(g: &OuterplanarGraph, ctx: &SubPolygon, s: &DepthSystem) -> Result<Drawing, LayoutError> {
    let [u, v] = s.root_edge;
    let ribbon = draw_ribbon(g, ctx, s)?;
    let mut d = release_edge(&ribbon, u, v)?;
    add_fan(&mut d, u, &s.fan_u, true)?;
    add_fan(&mut d, v, &s.fan_v, false)?;
    d.normalize();
    validate_geometry(&d).map_err(|e| LayoutError::Construction(format!("root shape at ({u},{v}): {e}")))?;
    for c in &s.children {
        let [a, b] = c.anchor;
        match d.find_edge(a, b).map(|i| d.edges[i]) {
            Some(DrawnEdge::Horizontal { layer: 2 | 3, .. }) => {}
            _ => return fail(format!("anchor ({a},{b}) is not horizontal below the top layer")),
        }
    }
    Ok(d)
}

/// Drawing of the (sub)graph `ctx` from system `s`; the root edge spans the
/// top layer with `root_edge[0]` in the top-left corner.
fn draw_in(g: &OuterplanarGraph, ctx: &SubPolygon, s: &DepthSystem) -> Result<Drawing, LayoutError> {
    let mut d = draw_root_bonnet(g, ctx, s)?;
    if s.children.is_empty() {
        return Ok(d);
    }
    let h = s.depth();
    let bottom = 2 * h + 1;
    let root = s.root();

    struct Slot {
        a: Vertex,
        b: Vertex,
        mid: bool,
        at: i64,
        child: Drawing,
    }
    let mut slots = Vec::with_capacity(s.children.len());
    for c in &s.children {
        let anchor = Edge::new(c.anchor[0], c.anchor[1]);
        let sub = ctx.hanging(g, root, anchor).map_err(|e| LayoutError::Construction(e.to_string()))?;
        let child = draw_in(g, &sub.polygon, &c.system)?;
        let idx = d.find_edge(anchor.0, anchor.1).expect("anchor drawn");
        let DrawnEdge::Horizontal { u: a, v: b, layer, x0, .. } = d.edges[idx] else {
            return fail("anchor not horizontal");
        };
        let mid = layer == 2;
        // Root edge of the child must face the parent's anchor layer, with
        // `a` on the left as in the parent.
        let mut child = if mid { child } else { child.rotate180() };
        let row = if mid { 1 } else { child.layers };
        let left = child.vertices.iter().filter(|x| x.layer == row).min_by_key(|x| x.x0).map(|x| x.id);
        if left != Some(a) {
            child = child.reflect(Axis::Horizontal);
        }
        slots.push(Slot { a, b, mid, at: x0, child });
    }
    slots.sort_by_key(|s| s.at);
    for w in slots.windows(2) {
        if w[0].at == w[1].at {
            return fail(format!("anchors ({},{}) and ({},{}) share a gap", w[0].a, w[0].b, w[1].a, w[1].b));
        }
    }
    let cuts: Vec<(i64, i64)> = slots.iter().map(|s| (s.at, s.child.max_x() + 2)).collect();
    let shift = |x: i64| -> i64 { x + cuts.iter().take_while(|c| c.0 < x).map(|c| c.1).sum::<i64>() };
    d.remap(&shift, |y| if y >= 3 { y + 2 * h - 2 } else { y });
    d.layers = bottom;

    for slot in slots {
        let Slot { a, b, mid, at, mut child } = slot;
        let dy = if mid { 1 } else { bottom as i64 - child.layers as i64 };
        child.translate(shift(at) + 1, dy);
        let idx = d.find_edge(a, b).expect("anchor drawn");
        d.edges.swap_remove(idx);
        for bx in child.vertices {
            if bx.id == a || bx.id == b {
                let p = d.vertex_mut(bx.id).expect("anchor end drawn");
                if p.layer != bx.layer {
                    return fail(format!("anchor end {} lands on layers {} and {}", bx.id, p.layer, bx.layer));
                }
                p.x0 = p.x0.min(bx.x0);
                p.x1 = p.x1.max(bx.x1);
            } else if d.vertex(bx.id).is_some() {
                return fail(format!("vertex {} drawn by two subsystems", bx.id));
            } else {
                d.put_vertex(bx);
            }
        }
        d.edges.extend(child.edges);
    }
    d.normalize();
    Ok(d)
}

/// Draws `g` from a valid system; height is `2 * depth + 1`.
pub fn draw(g: &OuterplanarGraph, s: &DepthSystem) -> Result<Drawing, LayoutError> {
    validate_system(g, s).map_err(|v| LayoutError::InvalidSystem(v.to_string()))?;
    draw_in(g, &g.whole(), s)
}

/// Draws `g` from an optimal free bonnet system.
pub fn draw_auto(g: &OuterplanarGraph) -> (Drawing, DepthSystem) {
    let (_, _, s) = free_depth(g, Flavor::Bonnet);
    let d = draw(g, &s).expect("optimal systems always draw");
    (d, s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::depth::rooted_depth;
    use crate::fvr::validate;

    #[test]
    fn triangle_ribbon_and_release() {
        let g = OuterplanarGraph::new(3, &[]).unwrap();
        let (_, s) = rooted_depth(&g, (0, 1), Flavor::Bonnet).unwrap();
        let r = draw_ribbon(&g, &g.whole(), &s).unwrap();
        assert_eq!(r.height(), 2);
        assert_eq!(r.edges.iter().filter(|e| e.is_vertical()).count(), 2);
        let rel = release_edge(&r, 0, 1).unwrap();
        validate(&g, &rel).unwrap();
        assert_eq!(rel.height(), 3);
        let d = draw(&g, &s).unwrap();
        validate(&g, &d).unwrap();
        assert_eq!(d.height(), 3);
    }

    #[test]
    fn fan_draws_on_three_layers() {
        let g = OuterplanarGraph::new(6, &[(0, 2), (0, 3), (0, 4)]).unwrap();
        let (d, s) = draw_auto(&g);
        assert_eq!(s.depth(), 1);
        validate(&g, &d).unwrap();
        assert_eq!(d.height(), 3);
    }

    #[test]
    fn release_rejects_non_top_edge() {
        let g = OuterplanarGraph::new(3, &[]).unwrap();
        let (_, s) = rooted_depth(&g, (0, 1), Flavor::Bonnet).unwrap();
        let r = draw_ribbon(&g, &g.whole(), &s).unwrap();
        assert!(release_edge(&r, 0, 2).is_err());
    }
}
