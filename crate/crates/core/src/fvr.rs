//! Flat visibility representations: vertices are horizontal boxes on
//! integer layers, edges are horizontal or vertical segments.
//!
//! Layer 1 is the top. Coordinates are integers; escape paths use half
//! units so they can run between occupied columns.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::DrawingError;
use crate::graph::{Edge, OuterplanarGraph, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct VertexBox {
    pub id: Vertex,
    pub layer: u32,
    pub x0: i64,
    pub x1: i64,
}

impl VertexBox {
    pub fn contains_x(&self, x: i64) -> bool {
        self.x0 <= x && x <= self.x1
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum DrawnEdge {
    #[serde(rename = "h")]
    Horizontal { u: Vertex, v: Vertex, layer: u32, x0: i64, x1: i64 },
    #[serde(rename = "v")]
    Vertical { u: Vertex, v: Vertex, x: i64, y0: u32, y1: u32 },
}

impl DrawnEdge {
    pub fn ends(&self) -> (Vertex, Vertex) {
        match *self {
            DrawnEdge::Horizontal { u, v, .. } | DrawnEdge::Vertical { u, v, .. } => (u, v),
        }
    }

    pub fn edge(&self) -> Edge {
        let (u, v) = self.ends();
        Edge::new(u, v)
    }

    pub fn is_vertical(&self) -> bool {
        matches!(self, DrawnEdge::Vertical { .. })
    }

    /// Layer range touched by the segment.
    pub fn layer_span(&self) -> (u32, u32) {
        match *self {
            DrawnEdge::Horizontal { layer, .. } => (layer, layer),
            DrawnEdge::Vertical { y0, y1, .. } => (y0, y1),
        }
    }

    pub fn x_span(&self) -> (i64, i64) {
        match *self {
            DrawnEdge::Horizontal { x0, x1, .. } => (x0, x1),
            DrawnEdge::Vertical { x, .. } => (x, x),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    /// Mirror left-right.
    Horizontal,
    /// Mirror top-bottom.
    Vertical,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn flip(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

/// A drawing. `vertices` is kept sorted by id; a drawing may hold only some
/// of a graph's vertices (sub-drawings).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Drawing {
    pub layers: u32,
    pub vertices: Vec<VertexBox>,
    pub edges: Vec<DrawnEdge>,
}

/// Offending element in a violation report.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Element {
    Vertex(Vertex),
    Edge(Vertex, Vertex),
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Vertex(v) => write!(f, "vertex {v}"),
            Element::Edge(a, b) => write!(f, "edge ({a},{b})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DrawingViolation {
    pub message: String,
    pub elements: Vec<Element>,
}

impl fmt::Display for DrawingViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.message)?;
        if !self.elements.is_empty() {
            let list: Vec<String> = self.elements.iter().map(|e| e.to_string()).collect();
            write!(f, " [{}]", list.join(", "))?;
        }
        Ok(())
    }
}

impl std::error::Error for DrawingViolation {}

fn violation<T>(message: impl Into<String>, elements: Vec<Element>) -> Result<T, DrawingViolation> {
    Err(DrawingViolation { message: message.into(), elements })
}

fn edge_el(e: &DrawnEdge) -> Element {
    let (u, v) = e.ends();
    Element::Edge(u, v)
}

impl Drawing {
    pub fn new(layers: u32) -> Self {
        Drawing { layers, vertices: Vec::new(), edges: Vec::new() }
    }

    pub fn vertex(&self, id: Vertex) -> Option<&VertexBox> {
        self.vertices.binary_search_by_key(&id, |b| b.id).ok().map(|i| &self.vertices[i])
    }

    pub fn vertex_mut(&mut self, id: Vertex) -> Option<&mut VertexBox> {
        match self.vertices.binary_search_by_key(&id, |b| b.id) {
            Ok(i) => Some(&mut self.vertices[i]),
            Err(_) => None,
        }
    }

    /// Inserts or replaces a vertex box, keeping the id order.
    pub fn put_vertex(&mut self, b: VertexBox) {
        match self.vertices.binary_search_by_key(&b.id, |x| x.id) {
            Ok(i) => self.vertices[i] = b,
            Err(i) => self.vertices.insert(i, b),
        }
    }

    pub fn find_edge(&self, a: Vertex, b: Vertex) -> Option<usize> {
        let e = Edge::new(a, b);
        self.edges.iter().position(|d| d.edge() == e)
    }

    pub fn vertex_ids(&self) -> Vec<Vertex> {
        self.vertices.iter().map(|b| b.id).collect()
    }

    pub fn min_x(&self) -> i64 {
        self.vertices.iter().map(|b| b.x0).min().unwrap_or(0)
    }

    pub fn max_x(&self) -> i64 {
        self.vertices.iter().map(|b| b.x1).max().unwrap_or(0)
    }

    /// Number of layers intersected by some vertex or edge.
    pub fn height(&self) -> u32 {
        self.occupied_layers().iter().filter(|&&o| o).count() as u32
    }

    /// Number of integer columns in the bounding box.
    pub fn width(&self) -> i64 {
        if self.vertices.is_empty() {
            0
        } else {
            self.max_x() - self.min_x() + 1
        }
    }

    /// `occupied[y]` for `y` in `0..=layers` (index 0 unused).
    fn occupied_layers(&self) -> Vec<bool> {
        let top = self
            .vertices
            .iter()
            .map(|b| b.layer)
            .chain(self.edges.iter().map(|e| e.layer_span().1))
            .max()
            .unwrap_or(0)
            .max(self.layers) as usize;
        let mut diff = vec![0i64; top + 2];
        for b in &self.vertices {
            diff[b.layer as usize] += 1;
            diff[b.layer as usize + 1] -= 1;
        }
        for e in &self.edges {
            let (a, b) = e.layer_span();
            diff[a as usize] += 1;
            diff[b as usize + 1] -= 1;
        }
        let mut out = vec![false; top + 1];
        let mut run = 0;
        for (y, slot) in out.iter_mut().enumerate() {
            run += diff[y];
            *slot = y > 0 && run > 0;
        }
        out
    }

    /// Removes unoccupied layers and shifts so that the minimum x is 0.
    pub fn normalize(&mut self) {
        let occ = self.occupied_layers();
        let mut map = vec![0u32; occ.len()];
        let mut next = 0;
        for y in 1..occ.len() {
            if occ[y] {
                next += 1;
            }
            map[y] = next;
        }
        let dx = self.min_x();
        for b in &mut self.vertices {
            b.layer = map[b.layer as usize];
            b.x0 -= dx;
            b.x1 -= dx;
        }
        for e in &mut self.edges {
            match e {
                DrawnEdge::Horizontal { layer, x0, x1, .. } => {
                    *layer = map[*layer as usize];
                    *x0 -= dx;
                    *x1 -= dx;
                }
                DrawnEdge::Vertical { x, y0, y1, .. } => {
                    *x -= dx;
                    *y0 = map[*y0 as usize];
                    *y1 = map[*y1 as usize];
                }
            }
        }
        self.layers = next;
    }

    pub fn normalized(mut self) -> Self {
        self.normalize();
        self
    }

    /// Mirror image; x is re-normalized to start at 0.
    pub fn reflect(&self, axis: Axis) -> Drawing {
        let mut d = self.clone();
        match axis {
            Axis::Horizontal => {
                let (lo, hi) = (self.min_x(), self.max_x());
                let f = |x: i64| lo + hi - x;
                for b in &mut d.vertices {
                    (b.x0, b.x1) = (f(b.x1), f(b.x0));
                }
                for e in &mut d.edges {
                    match e {
                        DrawnEdge::Horizontal { u, v, x0, x1, .. } => {
                            (*x0, *x1) = (f(*x1), f(*x0));
                            std::mem::swap(u, v);
                        }
                        DrawnEdge::Vertical { x, .. } => *x = f(*x),
                    }
                }
            }
            Axis::Vertical => {
                let h = self.layers + 1;
                for b in &mut d.vertices {
                    b.layer = h - b.layer;
                }
                for e in &mut d.edges {
                    match e {
                        DrawnEdge::Horizontal { layer, .. } => *layer = h - *layer,
                        DrawnEdge::Vertical { u, v, y0, y1, .. } => {
                            (*y0, *y1) = (h - *y1, h - *y0);
                            std::mem::swap(u, v);
                        }
                    }
                }
            }
        }
        let dx = d.min_x();
        d.translate(-dx, 0);
        d
    }

    pub fn rotate180(&self) -> Drawing {
        self.reflect(Axis::Vertical).reflect(Axis::Horizontal)
    }

    /// Shifts every coordinate; `dy` may be negative as long as layers stay >= 1.
    pub fn translate(&mut self, dx: i64, dy: i64) {
        let ly = |y: u32| (y as i64 + dy) as u32;
        for b in &mut self.vertices {
            b.x0 += dx;
            b.x1 += dx;
            b.layer = ly(b.layer);
        }
        for e in &mut self.edges {
            match e {
                DrawnEdge::Horizontal { layer, x0, x1, .. } => {
                    *layer = ly(*layer);
                    *x0 += dx;
                    *x1 += dx;
                }
                DrawnEdge::Vertical { x, y0, y1, .. } => {
                    *x += dx;
                    *y0 = ly(*y0);
                    *y1 = ly(*y1);
                }
            }
        }
        self.layers = (self.layers as i64 + dy).max(0) as u32;
    }

    /// Applies monotone maps to every x coordinate and layer.
    pub fn remap(&mut self, fx: impl Fn(i64) -> i64, fy: impl Fn(u32) -> u32) {
        for b in &mut self.vertices {
            b.x0 = fx(b.x0);
            b.x1 = fx(b.x1);
            b.layer = fy(b.layer);
        }
        for e in &mut self.edges {
            match e {
                DrawnEdge::Horizontal { layer, x0, x1, .. } => {
                    *layer = fy(*layer);
                    *x0 = fx(*x0);
                    *x1 = fx(*x1);
                }
                DrawnEdge::Vertical { x, y0, y1, .. } => {
                    *x = fx(*x);
                    *y0 = fy(*y0);
                    *y1 = fy(*y1);
                }
            }
        }
        self.layers = fy(self.layers);
    }

    /// Sub-drawing on the given vertices, keeping layer indices.
    pub fn induced(&self, keep: &[Vertex]) -> Drawing {
        let set: HashSet<Vertex> = keep.iter().copied().collect();
        Drawing {
            layers: self.layers,
            vertices: self.vertices.iter().filter(|b| set.contains(&b.id)).copied().collect(),
            edges: self
                .edges
                .iter()
                .filter(|e| {
                    let (u, v) = e.ends();
                    set.contains(&u) && set.contains(&v)
                })
                .copied()
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("drawing serializes")
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("drawing serializes")
    }

    pub fn from_json(s: &str) -> Result<Self, DrawingError> {
        let mut d: Drawing = serde_json::from_str(s).map_err(|e| DrawingError::Parse(e.to_string()))?;
        d.vertices.sort_by_key(|b| b.id);
        Ok(d)
    }
}

/// What occupies a stretch of one layer.
#[derive(Debug, Clone, Copy)]
struct Item {
    x0: i64,
    x1: i64,
    ends: (Vertex, Vertex),
    el: Element,
}

/// Per-layer index of boxes and horizontal edges.
struct LayerIndex {
    rows: HashMap<u32, Vec<Item>>,
}

impl LayerIndex {
    fn build(d: &Drawing) -> Self {
        let mut rows: HashMap<u32, Vec<Item>> = HashMap::new();
        for b in &d.vertices {
            rows.entry(b.layer).or_default().push(Item { x0: b.x0, x1: b.x1, ends: (b.id, b.id), el: Element::Vertex(b.id) });
        }
        for e in &d.edges {
            if let DrawnEdge::Horizontal { u, v, layer, x0, x1 } = *e {
                rows.entry(layer).or_default().push(Item { x0, x1, ends: (u, v), el: edge_el(e) });
            }
        }
        for row in rows.values_mut() {
            row.sort_by_key(|it| (it.x0, it.x1));
        }
        LayerIndex { rows }
    }

    /// Items on `layer` containing column `x`; relies on the row being
    /// free of overlaps other than point contacts.
    fn at(&self, layer: u32, x: i64) -> Vec<Item> {
        let Some(row) = self.rows.get(&layer) else { return Vec::new() };
        let end = row.partition_point(|it| it.x0 <= x);
        let mut out = Vec::new();
        for it in row[..end].iter().rev() {
            if it.x1 >= x {
                out.push(*it);
            } else {
                break;
            }
        }
        out
    }
}

fn shares_box_at(d: &Drawing, a: (Vertex, Vertex), b: (Vertex, Vertex), layer: u32, x: i64) -> bool {
    [a.0, a.1].into_iter().any(|w| {
        (w == b.0 || w == b.1) && d.vertex(w).map_or(false, |bx| bx.layer == layer && bx.contains_x(x))
    })
}

/// Checks the drawing's geometry: well-formed boxes and segments, every
/// edge attached to its endpoint boxes, and no intersections other than
/// an edge meeting its own endpoints.
pub fn validate_geometry(d: &Drawing) -> Result<(), DrawingViolation> {
    if d.layers == 0 && !d.vertices.is_empty() {
        return violation("drawing declares zero layers", vec![]);
    }
    for w in d.vertices.windows(2) {
        if w[0].id >= w[1].id {
            return violation("vertex ids repeat or are unsorted", vec![Element::Vertex(w[1].id)]);
        }
    }
    for b in &d.vertices {
        if b.x0 > b.x1 {
            return violation(format!("box [{}, {}] is reversed", b.x0, b.x1), vec![Element::Vertex(b.id)]);
        }
        if b.layer == 0 || b.layer > d.layers {
            return violation(format!("layer {} outside 1..={}", b.layer, d.layers), vec![Element::Vertex(b.id)]);
        }
    }
    let mut seen: HashSet<Edge> = HashSet::new();
    for e in &d.edges {
        let (u, v) = e.ends();
        let el = vec![edge_el(e)];
        if u == v {
            return violation("loop edge", el);
        }
        if !seen.insert(Edge::new(u, v)) {
            return violation("edge drawn twice", el);
        }
        let (Some(bu), Some(bv)) = (d.vertex(u), d.vertex(v)) else {
            return violation("edge endpoint missing from drawing", el);
        };
        match *e {
            DrawnEdge::Horizontal { layer, x0, x1, .. } => {
                if bu.layer != layer || bv.layer != layer {
                    return violation(format!("horizontal edge on layer {layer} but endpoints on {} and {}", bu.layer, bv.layer), el);
                }
                if x0 >= x1 {
                    return violation(format!("horizontal edge [{x0}, {x1}] has no length"), el);
                }
                let fits = |l: &VertexBox, r: &VertexBox| l.x1 == x0 && r.x0 == x1;
                if !(fits(bu, bv) || fits(bv, bu)) {
                    return violation(format!("horizontal edge [{x0}, {x1}] does not join its endpoint boxes"), el);
                }
            }
            DrawnEdge::Vertical { x, y0, y1, .. } => {
                if y0 >= y1 {
                    return violation(format!("vertical edge spans layers {y0}..{y1}"), el);
                }
                if y1 > d.layers {
                    return violation(format!("vertical edge reaches layer {y1} beyond {}", d.layers), el);
                }
                let layers_ok = (bu.layer == y0 && bv.layer == y1) || (bu.layer == y1 && bv.layer == y0);
                if !layers_ok {
                    return violation(format!("vertical edge spans {y0}..{y1} but endpoints sit on {} and {}", bu.layer, bv.layer), el);
                }
                for b in [bu, bv] {
                    if !b.contains_x(x) {
                        return violation(format!("vertical edge at x={x} misses the box of {}", b.id), vec![edge_el(e), Element::Vertex(b.id)]);
                    }
                }
            }
        }
    }

    // Same-layer overlaps between boxes and horizontal edges.
    let index = LayerIndex::build(d);
    let mut layers: Vec<&u32> = index.rows.keys().collect();
    layers.sort();
    for &y in layers {
        let row = &index.rows[&y];
        let mut active: Vec<Item> = Vec::new();
        for it in row {
            active.retain(|a| a.x1 >= it.x0);
            for a in &active {
                let lo = a.x0.max(it.x0);
                let hi = a.x1.min(it.x1);
                if lo > hi {
                    continue;
                }
                if lo < hi || !shares_box_at(d, a.ends, it.ends, y, lo) || matches!((a.el, it.el), (Element::Vertex(_), Element::Vertex(_))) {
                    return violation(format!("overlap on layer {y} at x={lo}"), vec![a.el, it.el]);
                }
            }
            active.push(*it);
        }
    }

    // Vertical edges against layer contents and against each other.
    let mut columns: HashMap<i64, Vec<&DrawnEdge>> = HashMap::new();
    for e in &d.edges {
        if let DrawnEdge::Vertical { u, v, x, y0, y1 } = *e {
            columns.entry(x).or_default().push(e);
            for y in y0..=y1 {
                for it in index.at(y, x) {
                    let own_box = matches!(it.el, Element::Vertex(w) if w == u || w == v);
                    if own_box || (matches!(it.el, Element::Edge(..)) && shares_box_at(d, (u, v), it.ends, y, x)) {
                        continue;
                    }
                    return violation(format!("vertical edge crosses layer {y} at x={x}"), vec![edge_el(e), it.el]);
                }
            }
        }
    }
    let mut cols: Vec<(i64, Vec<&DrawnEdge>)> = columns.into_iter().collect();
    cols.sort_by_key(|c| c.0);
    for (x, col) in &mut cols {
        col.sort_by_key(|e| e.layer_span());
        // Sorted by start layer, each edge can only clash with the one
        // reaching lowest so far.
        let mut reach: Option<&DrawnEdge> = None;
        for &e in col.iter() {
            if let Some(r) = reach {
                let r1 = r.layer_span().1;
                let e0 = e.layer_span().0;
                if e0 < r1 || (e0 == r1 && !shares_box_at(d, r.ends(), e.ends(), e0, *x)) {
                    return violation(format!("vertical edges overlap at x={x}"), vec![edge_el(r), edge_el(e)]);
                }
            }
            if reach.map_or(true, |r| e.layer_span().1 > r.layer_span().1) {
                reach = Some(e);
            }
        }
    }
    Ok(())
}

/// Full check against a graph: geometry plus exactly the graph's vertices
/// and edges, each drawn once.
pub fn validate(g: &OuterplanarGraph, d: &Drawing) -> Result<(), DrawingViolation> {
    validate_geometry(d)?;
    if d.vertices.len() != g.n() as usize || d.vertices.iter().enumerate().any(|(i, b)| b.id != i as u32) {
        let missing = (0..g.n()).find(|&v| d.vertex(v).is_none());
        return match missing {
            Some(v) => violation("vertex not drawn", vec![Element::Vertex(v)]),
            None => violation("drawing has vertices outside the graph", vec![]),
        };
    }
    for e in &d.edges {
        let (u, v) = e.ends();
        if !g.has_edge(u, v) {
            return violation("drawn edge is not in the graph", vec![edge_el(e)]);
        }
    }
    if d.edges.len() != g.m() {
        let drawn: HashSet<Edge> = d.edges.iter().map(|e| e.edge()).collect();
        let missing = g.edges().into_iter().find(|e| !drawn.contains(e));
        return match missing {
            Some(e) => violation("edge not drawn", vec![Element::Edge(e.0, e.1)]),
            None => violation("edge count mismatch", vec![]),
        };
    }
    Ok(())
}

/// The vertical edge with minimum x; ties go to the lowest one, then to the
/// smaller vertex pair.
pub fn leftmost_vertical_edge(d: &Drawing) -> Result<Edge, DrawingError> {
    d.edges
        .iter()
        .filter_map(|e| match *e {
            DrawnEdge::Vertical { x, y1, .. } => Some((x, std::cmp::Reverse(y1), e.edge())),
            _ => None,
        })
        .min()
        .map(|t| t.2)
        .ok_or(DrawingError::NoVerticalEdge)
}

pub fn rightmost_vertical_edge(d: &Drawing) -> Result<Edge, DrawingError> {
    d.edges
        .iter()
        .filter_map(|e| match *e {
            DrawnEdge::Vertical { x, y1, .. } => Some((std::cmp::Reverse(x), std::cmp::Reverse(y1), e.edge())),
            _ => None,
        })
        .min()
        .map(|t| t.2)
        .ok_or(DrawingError::NoVerticalEdge)
}

/// True if the layers spanned by vertical edge `e` hold nothing strictly on
/// `side` of it, apart from parts of its own endpoint boxes.
pub fn is_free(d: &Drawing, e: Edge, side: Side) -> bool {
    let Some(seg) = d.edges.iter().find(|s| s.edge() == e) else { return false };
    let DrawnEdge::Vertical { x, y0, y1, .. } = *seg else { return false };
    let beyond = |a: i64| match side {
        Side::Left => a < x,
        Side::Right => a > x,
    };
    let in_end_box = |layer: u32, px: i64| {
        [e.0, e.1].into_iter().any(|w| d.vertex(w).map_or(false, |b| b.layer == layer && b.contains_x(px)))
    };
    for b in &d.vertices {
        if b.id == e.0 || b.id == e.1 || b.layer < y0 || b.layer > y1 {
            continue;
        }
        if beyond(b.x0) || beyond(b.x1) {
            return false;
        }
    }
    for s in &d.edges {
        if s.edge() == e {
            continue;
        }
        match *s {
            DrawnEdge::Horizontal { layer, x0, x1, .. } => {
                if layer >= y0 && layer <= y1 && (beyond(x0) || beyond(x1)) {
                    return false;
                }
            }
            DrawnEdge::Vertical { x: sx, y0: a, y1: b, .. } => {
                if !beyond(sx) {
                    continue;
                }
                let lo = a.max(y0);
                let hi = b.min(y1);
                if lo > hi {
                    continue;
                }
                if lo < hi || !in_end_box(lo, sx) {
                    return false;
                }
            }
        }
    }
    true
}

pub fn is_left_free(d: &Drawing, e: Edge) -> bool {
    is_free(d, e, Side::Left)
}

pub fn is_right_free(d: &Drawing, e: Edge) -> bool {
    is_free(d, e, Side::Right)
}

/// Rectilinear path from a vertex box to the left or right side of the
/// bounding box. Points are `(x2, layer)` with `x2` in half units; the
/// first point lies on the vertex box.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EscapePath {
    pub vertex: Vertex,
    pub side: Side,
    pub points: Vec<(i64, u32)>,
}

pub fn find_escape_path(d: &Drawing, vertex: Vertex, side: Side) -> Result<Option<EscapePath>, DrawingError> {
    find_escape_path_within(d, vertex, side, 1, d.layers)
}

/// Escape path confined to layers `lo..=hi`; the target is the side of the
/// whole drawing's bounding box.
pub fn find_escape_path_within(
    d: &Drawing,
    vertex: Vertex,
    side: Side,
    lo: u32,
    hi: u32,
) -> Result<Option<EscapePath>, DrawingError> {
    let b = *d.vertex(vertex).ok_or(DrawingError::NoSuchVertex(vertex))?;
    if b.layer < lo || b.layer > hi {
        return Ok(None);
    }
    let (minx, maxx) = (d.min_x(), d.max_x());
    let target = match side {
        Side::Left => 2 * minx,
        Side::Right => 2 * maxx,
    };
    let touches = match side {
        Side::Left => b.x0 == minx,
        Side::Right => b.x1 == maxx,
    };
    if touches {
        return Ok(Some(EscapePath { vertex, side, points: vec![(target, b.layer)] }));
    }

    let x_lo = 2 * minx;
    let cols = (2 * (maxx - minx) + 1) as usize;
    let rows = (hi - lo + 1) as usize;
    let idx = |x2: i64, y: u32| (y - lo) as usize * cols + (x2 - x_lo) as usize;
    let mut blocked = vec![false; rows * cols];
    let mut fill = |y: u32, a: i64, c: i64| {
        if y < lo || y > hi {
            return;
        }
        for x2 in 2 * a..=2 * c {
            blocked[idx(x2, y)] = true;
        }
    };
    for v in &d.vertices {
        fill(v.layer, v.x0, v.x1);
    }
    for e in &d.edges {
        match *e {
            DrawnEdge::Horizontal { layer, x0, x1, .. } => fill(layer, x0, x1),
            DrawnEdge::Vertical { x, y0, y1, .. } => {
                for y in y0..=y1 {
                    fill(y, x, x);
                }
            }
        }
    }

    let in_grid = |x2: i64, y: u32| x2 >= x_lo && x2 <= 2 * maxx && y >= lo && y <= hi;
    let mut prev: Vec<usize> = vec![usize::MAX; rows * cols];
    let mut queue = VecDeque::new();
    let mut starts: Vec<((i64, u32), (i64, u32))> = vec![((2 * b.x0 - 1, b.layer), (2 * b.x0, b.layer)), ((2 * b.x1 + 1, b.layer), (2 * b.x1, b.layer))];
    for x2 in 2 * b.x0..=2 * b.x1 {
        if b.layer > lo {
            starts.push(((x2, b.layer - 1), (x2, b.layer)));
        }
        if b.layer < hi {
            starts.push(((x2, b.layer + 1), (x2, b.layer)));
        }
    }
    let mut origin: HashMap<usize, (i64, u32)> = HashMap::new();
    for (p, contact) in starts {
        if in_grid(p.0, p.1) && !blocked[idx(p.0, p.1)] && prev[idx(p.0, p.1)] == usize::MAX {
            let i = idx(p.0, p.1);
            prev[i] = i;
            origin.insert(i, contact);
            queue.push_back(p);
        }
    }
    let mut found = None;
    while let Some((x2, y)) = queue.pop_front() {
        if x2 == target {
            found = Some((x2, y));
            break;
        }
        let here = idx(x2, y);
        let mut next = vec![(x2 - 1, y), (x2 + 1, y)];
        if y > lo {
            next.push((x2, y - 1));
        }
        if y < hi {
            next.push((x2, y + 1));
        }
        for (nx, ny) in next {
            if in_grid(nx, ny) {
                let j = idx(nx, ny);
                if !blocked[j] && prev[j] == usize::MAX {
                    prev[j] = here;
                    queue.push_back((nx, ny));
                }
            }
        }
    }
    let Some(end) = found else { return Ok(None) };
    let mut cells = vec![end];
    let mut i = idx(end.0, end.1);
    while prev[i] != i {
        i = prev[i];
        cells.push(((i % cols) as i64 + x_lo, (i / cols) as u32 + lo));
    }
    cells.push(origin[&i]);
    cells.reverse();
    let points = simplify(&cells);
    let path = EscapePath { vertex, side, points };
    debug_assert!(path_is_clear(d, &path), "router produced a blocked path");
    if !path_is_clear(d, &path) {
        return Ok(None);
    }
    Ok(Some(path))
}

fn simplify(cells: &[(i64, u32)]) -> Vec<(i64, u32)> {
    let mut out: Vec<(i64, u32)> = Vec::new();
    for &p in cells {
        if out.len() >= 2 {
            let a = out[out.len() - 2];
            let b = out[out.len() - 1];
            if (a.0 == b.0 && b.0 == p.0) || (a.1 == b.1 && b.1 == p.1) {
                out.pop();
            }
        }
        out.push(p);
    }
    out
}

/// Independent check that a path touches nothing except its start box at
/// its first point, and ends on the bounding-box side.
pub fn path_is_clear(d: &Drawing, p: &EscapePath) -> bool {
    let Some(&last) = p.points.last() else { return false };
    let goal = match p.side {
        Side::Left => 2 * d.min_x(),
        Side::Right => 2 * d.max_x(),
    };
    if last.0 != goal {
        return false;
    }
    let Some(b) = d.vertex(p.vertex) else { return false };
    let first = p.points[0];
    if first.1 != b.layer || first.0 < 2 * b.x0 || first.0 > 2 * b.x1 {
        return false;
    }
    let covered = |x2: i64, y: u32| -> bool {
        let on_layer = |layer: u32, x0: i64, x1: i64| layer == y && 2 * x0 <= x2 && x2 <= 2 * x1;
        d.vertices.iter().any(|v| on_layer(v.layer, v.x0, v.x1))
            || d.edges.iter().any(|e| match *e {
                DrawnEdge::Horizontal { layer, x0, x1, .. } => on_layer(layer, x0, x1),
                DrawnEdge::Vertical { x, y0, y1, .. } => 2 * x == x2 && y0 <= y && y <= y1,
            })
    };
    for (k, w) in p.points.windows(2).enumerate() {
        let (a, c) = (w[0], w[1]);
        if a.0 != c.0 && a.1 != c.1 {
            return false;
        }
        let steps: Vec<(i64, u32)> = if a.1 == c.1 {
            let (s, t) = (a.0.min(c.0), a.0.max(c.0));
            (s..=t).map(|x| (x, a.1)).collect()
        } else {
            let (s, t) = (a.1.min(c.1), a.1.max(c.1));
            (s..=t).map(|y| (a.0, y)).collect()
        };
        for pt in steps {
            if k == 0 && pt == first {
                continue;
            }
            if covered(pt.0, pt.1) {
                return false;
            }
        }
    }
    true
}

/// SVG rendering: boxes are 0.3 layer units tall, edges 1px lines, layers
/// faint gridlines.
pub fn to_svg(d: &Drawing) -> String {
    const SX: f64 = 24.0;
    const SY: f64 = 48.0;
    const PAD: f64 = 24.0;
    let (minx, maxx) = (d.min_x(), d.max_x());
    let w = (maxx - minx) as f64 * SX + 2.0 * PAD;
    let h = d.layers.saturating_sub(1) as f64 * SY + 2.0 * PAD;
    let px = |x: i64| PAD + (x - minx) as f64 * SX;
    let py = |y: u32| PAD + (y as f64 - 1.0) * SY;
    let mut s = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w:.0}\" height=\"{h:.0}\" viewBox=\"0 0 {w:.0} {h:.0}\">\n"
    );
    s.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");
    for y in 1..=d.layers {
        s.push_str(&format!(
            "<line x1=\"0\" y1=\"{0:.1}\" x2=\"{w:.1}\" y2=\"{0:.1}\" stroke=\"#ddd\" stroke-width=\"0.5\"/>\n",
            py(y)
        ));
    }
    for e in &d.edges {
        let (x1, y1, x2, y2) = match *e {
            DrawnEdge::Horizontal { layer, x0, x1, .. } => (px(x0), py(layer), px(x1), py(layer)),
            DrawnEdge::Vertical { x, y0, y1, .. } => (px(x), py(y0), px(x), py(y1)),
        };
        let (u, v) = e.ends();
        s.push_str(&format!(
            "<line x1=\"{x1:.1}\" y1=\"{y1:.1}\" x2=\"{x2:.1}\" y2=\"{y2:.1}\" stroke=\"#333\" stroke-width=\"1\"><title>({u},{v})</title></line>\n"
        ));
    }
    let bh = 0.3 * SY;
    for b in &d.vertices {
        let x = px(b.x0) - 3.0;
        let bw = (b.x1 - b.x0) as f64 * SX + 6.0;
        let y = py(b.layer) - bh / 2.0;
        s.push_str(&format!(
            "<rect x=\"{x:.1}\" y=\"{y:.1}\" width=\"{bw:.1}\" height=\"{bh:.1}\" fill=\"#9cc3e6\" stroke=\"#1f4e79\" stroke-width=\"1\"><title>{}</title></rect>\n",
            b.id
        ));
        s.push_str(&format!(
            "<text x=\"{:.1}\" y=\"{:.1}\" font-size=\"10\" text-anchor=\"middle\" font-family=\"monospace\">{}</text>\n",
            x + bw / 2.0,
            py(b.layer) + 3.5,
            b.id
        ));
    }
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn triangle() -> Drawing {
        Drawing {
            layers: 2,
            vertices: vec![
                VertexBox { id: 0, layer: 1, x0: 0, x1: 2 },
                VertexBox { id: 1, layer: 1, x0: 3, x1: 5 },
                VertexBox { id: 2, layer: 2, x0: 0, x1: 5 },
            ],
            edges: vec![
                DrawnEdge::Horizontal { u: 0, v: 1, layer: 1, x0: 2, x1: 3 },
                DrawnEdge::Vertical { u: 0, v: 2, x: 1, y0: 1, y1: 2 },
                DrawnEdge::Vertical { u: 1, v: 2, x: 4, y0: 1, y1: 2 },
            ],
        }
    }

    #[test]
    fn triangle_validates() {
        let g = OuterplanarGraph::new(3, &[]).unwrap();
        let d = triangle();
        validate(&g, &d).unwrap();
        assert_eq!(d.height(), 2);
        assert_eq!(d.width(), 6);
    }

    #[test]
    fn shrunk_box_is_caught() {
        let g = OuterplanarGraph::new(3, &[]).unwrap();
        let mut d = triangle();
        d.vertices[2].x1 = 0;
        let err = validate(&g, &d).unwrap_err();
        assert!(err.message.contains("misses the box of 2"), "{err}");
        assert!(err.elements.contains(&Element::Vertex(2)));
        // Only the right edge misses when the box keeps column 1.
        d.vertices[2].x1 = 1;
        let err = validate(&g, &d).unwrap_err();
        assert!(err.message.contains("x=4"), "{err}");
        assert!(err.elements.contains(&Element::Edge(1, 2)));
    }

    #[test]
    fn reflections() {
        let d = triangle();
        for ax in [Axis::Horizontal, Axis::Vertical] {
            let r = d.reflect(ax);
            validate_geometry(&r).unwrap();
            assert_eq!(r.reflect(ax), d);
        }
        assert_eq!(d.rotate180(), d.reflect(Axis::Horizontal).reflect(Axis::Vertical));
    }

    #[test]
    fn leftmost_and_free() {
        let d = triangle();
        let e = leftmost_vertical_edge(&d).unwrap();
        assert_eq!(e, Edge::new(0, 2));
        assert!(is_left_free(&d, e));
        assert!(!is_right_free(&d, e));
        assert!(is_right_free(&d, Edge::new(1, 2)));
        let bare = Drawing { layers: 1, vertices: vec![VertexBox { id: 0, layer: 1, x0: 0, x1: 0 }], edges: vec![] };
        assert_eq!(leftmost_vertical_edge(&bare), Err(DrawingError::NoVerticalEdge));
    }

    #[test]
    fn escape_from_corner() {
        let d = triangle();
        let p = find_escape_path(&d, 0, Side::Left).unwrap().unwrap();
        assert_eq!(p.points, vec![(0, 1)]);
        let q = find_escape_path(&d, 1, Side::Left).unwrap();
        assert!(q.is_none());
        assert!(find_escape_path(&d, 9, Side::Left).is_err());
    }

    #[test]
    fn json_round_trip() {
        let d = triangle();
        let j = d.to_json();
        assert!(j.contains(r#"{"kind":"h","u":0,"v":1,"layer":1,"x0":2,"x1":3}"#), "{j}");
        assert_eq!(Drawing::from_json(&j).unwrap(), d);
        assert!(matches!(Drawing::from_json("{\"layers\":2}"), Err(DrawingError::Parse(_))));
    }

    #[test]
    fn normalize_drops_empty_layers() {
        let mut d = triangle();
        d.translate(3, 2);
        d.layers = 6;
        d.normalize();
        assert_eq!(d, triangle());
    }
}
