//! Drawings that were not produced by the layout construction: small
//! hand-written ones plus validity-preserving distortions of them and of
//! construction outputs with poor roots.

#![allow(dead_code)]

use opdraw::depth::{depth_by_root, rooted_depth};
use opdraw::fvr::{validate, Axis, Drawing, DrawnEdge, VertexBox};
use opdraw::layout::draw;
use opdraw::{Flavor, OuterplanarGraph};

pub struct Case {
    pub name: String,
    pub graph: OuterplanarGraph,
    pub drawing: Drawing,
}

fn h(u: u32, v: u32, layer: u32, x0: i64, x1: i64) -> DrawnEdge {
    DrawnEdge::Horizontal { u, v, layer, x0, x1 }
}

fn v(u: u32, w: u32, x: i64, y0: u32, y1: u32) -> DrawnEdge {
    DrawnEdge::Vertical { u, v: w, x, y0, y1 }
}

fn build(n: u32, diagonals: &[(u32, u32)], layers: u32, boxes: &[(u32, u32, i64, i64)], edges: Vec<DrawnEdge>) -> (OuterplanarGraph, Drawing) {
    let g = OuterplanarGraph::new(n, diagonals).unwrap();
    let mut d = Drawing::new(layers);
    for &(id, layer, x0, x1) in boxes {
        d.put_vertex(VertexBox { id, layer, x0, x1 });
    }
    d.edges = edges;
    (g, d)
}

/// Drawings written out by hand, several with a diagonal as the leftmost
/// vertical edge or with wasted layers.
pub fn hand_written() -> Vec<Case> {
    let mut out = Vec::new();
    let mut add = |name: &str, (graph, drawing): (OuterplanarGraph, Drawing)| {
        out.push(Case { name: name.into(), graph, drawing });
    };
    add(
        "triangle-flat",
        build(3, &[], 2, &[(0, 1, 0, 2), (1, 1, 3, 5), (2, 2, 0, 5)], vec![h(0, 1, 1, 2, 3), v(0, 2, 1, 1, 2), v(1, 2, 4, 1, 2)]),
    );
    add(
        "triangle-stacked",
        build(3, &[], 3, &[(0, 1, 0, 2), (1, 2, 2, 2), (2, 3, 0, 2)], vec![v(0, 1, 2, 1, 2), v(1, 2, 2, 2, 3), v(0, 2, 0, 1, 3)]),
    );
    add(
        "triangle-tall",
        build(3, &[], 4, &[(0, 1, 0, 2), (1, 4, 0, 2), (2, 2, 2, 2)], vec![v(0, 1, 0, 1, 4), v(1, 2, 2, 2, 4), v(0, 2, 2, 1, 2)]),
    );
    add(
        "square-diagonal-left",
        build(
            4,
            &[(0, 2)],
            3,
            &[(0, 1, 0, 6), (1, 2, 2, 2), (3, 2, 4, 4), (2, 3, 0, 6)],
            vec![v(0, 2, 0, 1, 3), v(0, 1, 2, 1, 2), v(1, 2, 2, 2, 3), v(0, 3, 4, 1, 2), v(3, 2, 4, 2, 3)],
        ),
    );
    add(
        "square-flat",
        build(
            4,
            &[(0, 2)],
            2,
            &[(0, 1, 0, 4), (1, 2, 0, 0), (2, 2, 2, 2), (3, 2, 4, 4)],
            vec![v(0, 1, 0, 1, 2), h(1, 2, 2, 0, 2), v(0, 2, 2, 1, 2), h(2, 3, 2, 2, 4), v(0, 3, 4, 1, 2)],
        ),
    );
    add(
        "fan5-staircase",
        build(
            5,
            &[(0, 2), (0, 3)],
            2,
            &[(0, 1, 0, 9), (1, 2, 0, 1), (2, 2, 3, 4), (3, 2, 6, 7), (4, 2, 9, 9)],
            vec![
                v(0, 1, 0, 1, 2),
                h(1, 2, 2, 1, 3),
                v(0, 2, 3, 1, 2),
                h(2, 3, 2, 4, 6),
                v(0, 3, 6, 1, 2),
                h(3, 4, 2, 7, 9),
                v(0, 4, 9, 1, 2),
            ],
        ),
    );
    add(
        "zigzag5-flat",
        build(
            5,
            &[(0, 2), (2, 4)],
            2,
            &[(2, 1, 0, 6), (1, 2, 0, 0), (0, 2, 2, 2), (4, 2, 4, 4), (3, 2, 6, 6)],
            vec![
                v(1, 2, 0, 1, 2),
                h(1, 0, 2, 0, 2),
                v(0, 2, 2, 1, 2),
                h(0, 4, 2, 2, 4),
                v(2, 4, 4, 1, 2),
                h(4, 3, 2, 4, 6),
                v(2, 3, 6, 1, 2),
            ],
        ),
    );
    add(
        "zigzag5-diagonal-left",
        build(
            5,
            &[(0, 2), (2, 4)],
            3,
            &[(0, 1, 0, 4), (2, 3, 0, 6), (1, 2, 2, 2), (4, 2, 4, 4), (3, 2, 6, 6)],
            vec![
                v(0, 2, 0, 1, 3),
                v(0, 1, 2, 1, 2),
                v(1, 2, 2, 2, 3),
                v(0, 4, 4, 1, 2),
                v(2, 4, 4, 2, 3),
                h(4, 3, 2, 4, 6),
                v(2, 3, 6, 2, 3),
            ],
        ),
    );
    add(
        "fan6-diagonal-left",
        build(
            6,
            &[(0, 2), (0, 3), (0, 4)],
            3,
            &[(0, 1, 0, 8), (3, 3, 0, 8), (2, 2, 2, 2), (1, 2, 4, 4), (4, 2, 6, 6), (5, 2, 8, 8)],
            vec![
                v(0, 3, 0, 1, 3),
                v(0, 2, 2, 1, 2),
                v(2, 3, 2, 2, 3),
                h(2, 1, 2, 2, 4),
                v(0, 1, 4, 1, 2),
                v(0, 4, 6, 1, 2),
                v(4, 3, 6, 2, 3),
                h(4, 5, 2, 6, 8),
                v(0, 5, 8, 1, 2),
            ],
        ),
    );
    out
}

/// Shrinks every box to the span of its edge attachments.
pub fn tight_boxes(d: &Drawing) -> Drawing {
    let mut out = d.clone();
    for b in &mut out.vertices {
        let mut lo = i64::MAX;
        let mut hi = i64::MIN;
        for e in &d.edges {
            let (u, w) = e.ends();
            if u != b.id && w != b.id {
                continue;
            }
            let xs: Vec<i64> = match *e {
                DrawnEdge::Vertical { x, .. } => vec![x],
                DrawnEdge::Horizontal { x0, x1, .. } => [x0, x1].into_iter().filter(|&x| x == b.x0 || x == b.x1).collect(),
            };
            for x in xs {
                lo = lo.min(x);
                hi = hi.max(x);
            }
        }
        if lo <= hi {
            b.x0 = lo;
            b.x1 = hi;
        }
    }
    out
}

/// Validity-preserving distortions, tagged by name.
pub fn distortions(d: &Drawing) -> Vec<(&'static str, Drawing)> {
    let mut stretched = d.clone();
    stretched.remap(|x| 3 * x + 1, |y| y);
    let mid = (d.layers / 2).max(1);
    let mut padded = d.clone();
    padded.remap(|x| x, |y| if y > mid { y + 1 } else { y });
    vec![
        ("as-is", d.clone()),
        ("mirror", d.reflect(Axis::Horizontal)),
        ("upside-down", d.reflect(Axis::Vertical)),
        ("rotated", d.rotate180()),
        ("stretched", stretched),
        ("padded", padded),
        ("tight", tight_boxes(&d.rotate180())),
    ]
}

/// Construction outputs for the worst umbrella root of some mid-size
/// graphs, so the drawings are taller than needed.
pub fn poorly_rooted() -> Vec<Case> {
    let mut out = Vec::new();
    for (i, n) in [8u32, 11, 14, 19, 26, 33].into_iter().enumerate() {
        let g = OuterplanarGraph::random(n, 900 + i as u64).unwrap();
        let (e, _) = depth_by_root(&g, Flavor::Umbrella).into_iter().max_by_key(|&(e, d)| (d, std::cmp::Reverse(e))).unwrap();
        let (_, s) = rooted_depth(&g, (e.1, e.0), Flavor::Umbrella).unwrap();
        let drawing = draw(&g, &s).unwrap();
        out.push(Case { name: format!("worst-root-n{n}"), graph: g, drawing });
    }
    out
}

/// Hand-written and poorly rooted drawings under every distortion; each
/// one is checked to be a valid drawing before use.
pub fn adversarial_corpus() -> Vec<Case> {
    let mut out = Vec::new();
    for base in hand_written().into_iter().chain(poorly_rooted()) {
        for (tag, drawing) in distortions(&base.drawing) {
            validate(&base.graph, &drawing).unwrap_or_else(|v| panic!("corpus drawing {}/{tag} is invalid: {v}", base.name));
            out.push(Case { name: format!("{}/{tag}", base.name), graph: base.graph.clone(), drawing });
        }
    }
    out
}
