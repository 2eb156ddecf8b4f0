//! Umbrella and bonnet systems: the recursive certificates behind both the
//! drawing construction and the height lower bound.

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::DepthError;
use crate::graph::{Edge, FaceId, OuterplanarGraph, SubPolygon, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Flavor {
    /// Two-ended ribbon through the cap's face.
    Bonnet,
    /// Single handle starting at the cap.
    Umbrella,
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Flavor::Bonnet => write!(f, "bonnet"),
            Flavor::Umbrella => write!(f, "umbrella"),
        }
    }
}

impl std::str::FromStr for Flavor {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "bonnet" => Ok(Flavor::Bonnet),
            "umbrella" => Ok(Flavor::Umbrella),
            other => Err(format!("unknown flavor {other:?}")),
        }
    }
}

/// Root shape plus one hanging system per anchor edge.
///
/// `fan_u` / `fan_v` list the fan vertices (excluding the apex
/// `root_edge[0]` / `root_edge[1]`) walking outward from the vertex the
/// fan shares with the ribbon; consecutive entries span a fan face.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DepthSystem {
    pub flavor: Flavor,
    pub root_edge: [Vertex; 2],
    pub ribbon_faces: Vec<FaceId>,
    pub fan_u: Vec<Vertex>,
    pub fan_v: Vec<Vertex>,
    pub children: Vec<ChildSystem>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChildSystem {
    pub anchor: [Vertex; 2],
    pub system: DepthSystem,
}

impl DepthSystem {
    /// `1 + max` child depth; a leaf system has depth 1.
    pub fn depth(&self) -> u32 {
        1 + self.children.iter().map(|c| c.system.depth()).max().unwrap_or(0)
    }

    pub fn root(&self) -> Edge {
        Edge::new(self.root_edge[0], self.root_edge[1])
    }

    /// Faces of the root shape: ribbon then fan faces.
    pub fn shape_faces(&self, g: &OuterplanarGraph) -> Vec<FaceId> {
        let mut out = self.ribbon_faces.clone();
        for (apex, fan) in [(self.root_edge[0], &self.fan_u), (self.root_edge[1], &self.fan_v)] {
            for w in fan.windows(2) {
                if let Some(f) = g.find_face([apex, w[0], w[1]]) {
                    out.push(f);
                }
            }
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("system serializes")
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("system serializes")
    }

    pub fn from_json(s: &str) -> Result<Self, DepthError> {
        serde_json::from_str(s).map_err(|e| DepthError::Parse(e.to_string()))
    }

    /// Number of systems in the tree, root included.
    pub fn size(&self) -> usize {
        1 + self.children.iter().map(|c| c.system.size()).sum::<usize>()
    }
}

pub fn system_depth(s: &DepthSystem) -> u32 {
    s.depth()
}

/// First violated condition, located by the anchor chain leading to it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub path: Vec<[Vertex; 2]>,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.path.is_empty() {
            write!(f, "at root: {}", self.message)
        } else {
            let chain: Vec<String> = self.path.iter().map(|a| format!("({},{})", a[0], a[1])).collect();
            write!(f, "at anchor chain {}: {}", chain.join(" -> "), self.message)
        }
    }
}

impl std::error::Error for Violation {}

/// Checks a system against the umbrella / bonnet definitions, recursively.
pub fn validate_system(g: &OuterplanarGraph, s: &DepthSystem) -> Result<(), Violation> {
    let [u, v] = s.root_edge;
    let fail = |m: String| Err(Violation { path: Vec::new(), message: m });
    if !g.has_edge(u, v) || !g.is_hull_edge(u, v) {
        return fail(format!("root edge ({u},{v}) is not a non-cutting edge of the graph"));
    }
    let mut path = Vec::new();
    validate_in(g, &g.whole(), s, s.flavor, &mut path)
}

/// Validates `s` as a system of the sub-polygon `ctx` rooted at a boundary edge.
pub fn validate_system_in(g: &OuterplanarGraph, ctx: &SubPolygon, s: &DepthSystem) -> Result<(), Violation> {
    let mut path = Vec::new();
    validate_in(g, ctx, s, s.flavor, &mut path)
}

fn validate_in(
    g: &OuterplanarGraph,
    ctx: &SubPolygon,
    s: &DepthSystem,
    flavor: Flavor,
    path: &mut Vec<[Vertex; 2]>,
) -> Result<(), Violation> {
    let fail = |path: &Vec<[Vertex; 2]>, m: String| Err(Violation { path: path.clone(), message: m });
    if s.flavor != flavor {
        return fail(path, format!("flavor {} differs from enclosing {}", s.flavor, flavor));
    }
    let [u, v] = s.root_edge;
    if !ctx.is_boundary(u, v) || !g.has_edge(u, v) {
        return fail(path, format!("root edge ({u},{v}) is not a non-cutting edge of the subgraph"));
    }
    let Some(root_face) = ctx.face_on(g, u, v) else {
        return fail(path, format!("subgraph at ({u},{v}) has no face"));
    };

    // Ribbon / handle: a dual path inside the subgraph.
    let ribbon = &s.ribbon_faces;
    if ribbon.is_empty() {
        return fail(path, "item 1: ribbon has no face".into());
    }
    let mut ribbon_set = HashSet::new();
    for &f in ribbon {
        if f as usize >= g.face_count() || !ctx.contains_face(g, f) {
            return fail(path, format!("item 1: face {f} is not in the subgraph"));
        }
        if !ribbon_set.insert(f) {
            return fail(path, format!("item 1: face {f} repeats in the ribbon"));
        }
    }
    for w in ribbon.windows(2) {
        if !g.face_neighbors(w[0]).any(|h| h == w[1]) {
            return fail(path, format!("item 1: faces {} and {} are not adjacent", w[0], w[1]));
        }
    }
    let end_edges = |i: usize| -> Vec<Edge> {
        let f = ribbon[i];
        g.face_edges(f)
            .into_iter()
            .filter(|e| ctx.is_boundary(e.0, e.1))
            .filter(|e| {
                let prev = if i > 0 { Some(ribbon[i - 1]) } else { None };
                let next = ribbon.get(i + 1).copied();
                let shared = |h: Option<FaceId>| h.map_or(false, |h| g.face_edges(h).contains(e));
                !shared(prev) && !shared(next)
            })
            .collect()
    };
    let k = ribbon.len();
    let cap = Edge::new(u, v);
    match flavor {
        Flavor::Umbrella => {
            let far = if ribbon[0] == root_face {
                k - 1
            } else if ribbon[k - 1] == root_face {
                0
            } else {
                return fail(path, format!("item 1: handle does not start at the cap face {root_face}"));
            };
            if !end_edges(far).into_iter().any(|e| e != cap) {
                return fail(path, "item 1: handle does not reach another non-cutting edge".into());
            }
        }
        Flavor::Bonnet => {
            if !ribbon_set.contains(&root_face) {
                return fail(path, format!("item 1': ribbon misses the cap face {root_face}"));
            }
            let first = end_edges(0);
            let last = end_edges(k - 1);
            let ok = first.iter().any(|a| last.iter().any(|b| a != b));
            if !ok {
                return fail(path, "item 1': ribbon does not connect two non-cutting edges".into());
            }
        }
    }
    let mut ribbon_edges: HashSet<Edge> = HashSet::new();
    for &f in ribbon {
        ribbon_edges.extend(g.face_edges(f));
    }

    // Fans.
    let mut shape_faces: HashSet<FaceId> = ribbon_set.clone();
    let mut fan_edge_sets: Vec<HashSet<Edge>> = Vec::new();
    for (apex, fan) in [(u, &s.fan_u), (v, &s.fan_v)] {
        let mut edges = HashSet::new();
        if fan.is_empty() {
            fan_edge_sets.push(edges);
            continue;
        }
        if fan.len() == 1 {
            return fail(path, format!("item 2: fan at {apex} has a single vertex and no face"));
        }
        for &w in fan.iter() {
            if !ctx.contains(w) || !g.has_edge(apex, w) {
                return fail(path, format!("item 2: fan at {apex} contains {w}, not a neighbour"));
            }
            edges.insert(Edge::new(apex, w));
        }
        for w in fan.windows(2) {
            let Some(f) = g.find_face([apex, w[0], w[1]]) else {
                return fail(path, format!("item 2: ({apex},{},{}) is not a face", w[0], w[1]));
            };
            if ribbon_set.contains(&f) {
                return fail(path, format!("item 3: fan face {f} at {apex} lies in the ribbon"));
            }
            if !shape_faces.insert(f) {
                return fail(path, format!("item 3: fan face {f} at {apex} used twice"));
            }
            edges.insert(Edge::new(w[0], w[1]));
        }
        let shared: Vec<&Edge> = edges.iter().filter(|e| ribbon_edges.contains(e)).collect();
        if shared.len() != 1 || !shared[0].has(apex) {
            return fail(
                path,
                format!("item 3: fan at {apex} shares {} edges with the ribbon, need exactly one at {apex}", shared.len()),
            );
        }
        fan_edge_sets.push(edges);
    }
    if fan_edge_sets[0].intersection(&fan_edge_sets[1]).next().is_some() {
        return fail(path, "item 3: fans are not edge-disjoint".into());
    }

    // Coverage.
    let mut covered: HashSet<Vertex> = HashSet::new();
    for &f in &shape_faces {
        covered.extend(g.face(f));
    }
    for apex in [u, v] {
        for &w in g.neighbors(apex) {
            if ctx.contains(w) && !covered.contains(&w) {
                return fail(path, format!("item 4: neighbour {w} of {apex} not covered"));
            }
        }
    }

    // Anchors.
    for c in &s.children {
        let [a, b] = c.anchor;
        if a == u || a == v || b == u || b == v {
            return fail(
                path,
                format!("Observation 1: anchor ({a},{b}) is incident to a root-edge endpoint"),
            );
        }
    }
    let mut anchors: Vec<Edge> = Vec::new();
    for &f in &shape_faces {
        for e in g.face_edges(f) {
            if !ctx.is_diagonal(g, e.0, e.1) {
                continue;
            }
            let other = g.face_across(f, e.0, e.1);
            if let Some(h) = other {
                if !shape_faces.contains(&h) && ctx.contains_face(g, h) {
                    anchors.push(e);
                }
            }
        }
    }
    anchors.sort_unstable();
    anchors.dedup();
    let mut given: Vec<Edge> = s.children.iter().map(|c| Edge::new(c.anchor[0], c.anchor[1])).collect();
    given.sort_unstable();
    for w in given.windows(2) {
        if w[0] == w[1] {
            return fail(path, format!("anchor ({},{}) has two systems", w[0].0, w[0].1));
        }
    }
    for e in &anchors {
        if given.binary_search(e).is_err() {
            return fail(path, format!("anchor ({},{}) has no hanging system", e.0, e.1));
        }
    }
    for e in &given {
        if anchors.binary_search(e).is_err() {
            return fail(path, format!("({},{}) is not an anchor edge of the root shape", e.0, e.1));
        }
    }

    for c in &s.children {
        let anchor = Edge::new(c.anchor[0], c.anchor[1]);
        if c.system.root() != anchor {
            return fail(path, format!("child at ({},{}) is rooted elsewhere", anchor.0, anchor.1));
        }
        let sub = ctx
            .hanging(g, cap, anchor)
            .map_err(|e| Violation { path: path.clone(), message: e.to_string() })?;
        path.push(c.anchor);
        validate_in(g, &sub.polygon, &c.system, flavor, path)?;
        path.pop();
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fan6() -> OuterplanarGraph {
        OuterplanarGraph::new(6, &[(0, 2), (0, 3), (0, 4)]).unwrap()
    }

    fn leaf(flavor: Flavor, root: [u32; 2], ribbon: Vec<u32>, fan_u: Vec<u32>, fan_v: Vec<u32>) -> DepthSystem {
        DepthSystem { flavor, root_edge: root, ribbon_faces: ribbon, fan_u, fan_v, children: vec![] }
    }

    #[test]
    fn depth_of_leaf_and_chain() {
        let l = leaf(Flavor::Bonnet, [0, 1], vec![0], vec![], vec![]);
        assert_eq!(system_depth(&l), 1);
        let mut p = l.clone();
        p.children.push(ChildSystem { anchor: [2, 3], system: l });
        assert_eq!(system_depth(&p), 2);
    }

    #[test]
    fn fan_single_umbrella_validates() {
        let g = fan6();
        // Handle = face {0,1,2}; fan at 0 covers the rest.
        let f = g.find_face([0, 1, 2]).unwrap();
        let s = leaf(Flavor::Umbrella, [0, 1], vec![f], vec![2, 3, 4, 5], vec![]);
        validate_system(&g, &s).unwrap();
        assert_eq!(s.depth(), 1);
    }

    #[test]
    fn missing_neighbour_is_reported() {
        let g = fan6();
        let f = g.find_face([0, 1, 2]).unwrap();
        let s = leaf(Flavor::Umbrella, [0, 1], vec![f], vec![2, 3, 4], vec![]);
        let err = validate_system(&g, &s).unwrap_err();
        assert!(err.message.contains("item 4: neighbour 5 of 0 not covered"), "{err}");
    }

    #[test]
    fn anchor_at_root_vertex_cites_observation() {
        let g = fan6();
        let f = g.find_face([0, 1, 2]).unwrap();
        let mut s = leaf(Flavor::Umbrella, [0, 1], vec![f], vec![2, 3, 4, 5], vec![]);
        s.children.push(ChildSystem {
            anchor: [0, 4],
            system: leaf(Flavor::Umbrella, [0, 4], vec![3], vec![], vec![]),
        });
        let err = validate_system(&g, &s).unwrap_err();
        assert!(err.message.starts_with("Observation 1"), "{err}");
    }

    #[test]
    fn json_shape() {
        let s = leaf(Flavor::Bonnet, [0, 1], vec![0], vec![], vec![]);
        let j = s.to_json();
        assert_eq!(
            j,
            r#"{"flavor":"bonnet","root_edge":[0,1],"ribbon_faces":[0],"fan_u":[],"fan_v":[],"children":[]}"#
        );
        assert_eq!(DepthSystem::from_json(&j).unwrap(), s);
        assert!(DepthSystem::from_json("[]").is_err());
    }
}
